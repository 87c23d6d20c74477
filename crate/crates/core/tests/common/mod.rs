//! Independent reference implementations used as test oracles. None of these
//! call into the library's transforms or encoders.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Dense Sylvester Hadamard matrix from `H_1 = [1]`,
/// `H_2k = [[H_k, H_k], [H_k, −H_k]]`.
pub fn dense_hadamard(d: usize) -> Vec<Vec<f64>> {
    assert!(d.is_power_of_two());
    let mut h = vec![vec![1.0]];
    while h.len() < d {
        let k = h.len();
        let mut next = vec![vec![0.0; 2 * k]; 2 * k];
        for i in 0..k {
            for j in 0..k {
                next[i][j] = h[i][j];
                next[i][j + k] = h[i][j];
                next[i + k][j] = h[i][j];
                next[i + k][j + k] = -h[i][j];
            }
        }
        h = next;
    }
    h
}

pub fn mat_vec(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

/// `z_k = Σ_j x_j · y_{(k − j) mod d}`.
pub fn naive_circular_convolution(x: &[f64], y: &[f64]) -> Vec<f64> {
    let d = x.len();
    (0..d)
        .map(|k| (0..d).map(|j| x[j] * y[(k + d - j) % d]).sum())
        .collect()
}

/// Components `N(±μ, 1/d)` with a fair sign.
pub fn mind<R: Rng>(d: usize, mu: f64, rng: &mut R) -> Vec<f64> {
    let noise = Normal::new(0.0, (1.0 / d as f64).sqrt()).unwrap();
    (0..d)
        .map(|_| {
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            sign * mu + noise.sample(rng)
        })
        .collect()
}

pub fn gaussian<R: Rng>(d: usize, rng: &mut R) -> Vec<f64> {
    let n = Normal::new(0.0, 1.0).unwrap();
    (0..d).map(|_| n.sample(rng)).collect()
}

pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn max_abs(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Multi-label target built label by label: each class is bound to the
/// present role or the missing role and everything is summed.
pub fn brute_force_xml<F>(
    classes: &[Vec<f64>],
    present: &[usize],
    p: &[f64],
    m: &[f64],
    bind: F,
) -> Vec<f64>
where
    F: Fn(&[f64], &[f64]) -> Vec<f64>,
{
    let d = p.len();
    let mut s = vec![0.0; d];
    for (i, c) in classes.iter().enumerate() {
        let role = if present.contains(&i) { p } else { m };
        for (acc, v) in s.iter_mut().zip(bind(c, role)) {
            *acc += v;
        }
    }
    s
}
