use crate::error::{Result, VsaError};
use crate::vector::HyperVector;

pub fn is_power_of_two(d: usize) -> bool {
    d >= 1 && d.is_power_of_two()
}

/// In-place unnormalized Walsh-Hadamard transform (Sylvester ordering).
///
/// Applies the ±1 matrix `H_d` built by the block recursion
/// `H_2d = [[H_d, H_d], [H_d, -H_d]]`, in `d log d` additions.
pub fn fwht_in_place(data: &mut [f64]) -> Result<()> {
    let d = data.len();
    if !is_power_of_two(d) {
        return Err(VsaError::NotPowerOfTwo(d));
    }
    let mut half = 1;
    while half < d {
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half *= 2;
    }
    Ok(())
}

/// `H·x`. Applying it twice scales by `d`.
pub fn fwht(x: &HyperVector) -> Result<HyperVector> {
    let mut data = x.as_slice().to_vec();
    fwht_in_place(&mut data)?;
    Ok(HyperVector::from_raw(data))
}
