// Binding in the Hadamard domain and its elementwise shortcut.

use hlb::theory::{
    hadamard_bind, hadamard_identity, hadamard_inverse_vector, noise_circ, noise_proj,
    pipeline_equivalence_check,
};
use hlb::transforms::fwht;
use hlb::{BindingModel, HyperVector, SeedSpec};

fn main() {
    let x = HyperVector::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
    println!("H x       = {:?}", fwht(&x).unwrap().as_slice());
    println!(
        "H H x / 4 = {:?}",
        fwht(&fwht(&x).unwrap()).unwrap().scale(0.25).as_slice()
    );

    let d = 256;
    let model = BindingModel::hlb(d, 1.0).unwrap();
    let mut rng = SeedSpec::new(3, "hadamard-example").stream();
    let y = model.sample(&mut rng);
    let y_inv = hadamard_inverse_vector(&y).unwrap();
    let identity = hadamard_identity(d).unwrap();
    let gap = hadamard_bind(&y, &y_inv)
        .unwrap()
        .max_abs_diff(&identity)
        .unwrap();
    println!("y bound to its inverse is the identity within {gap:.2e}");

    let pairs: Vec<_> = (0..5)
        .map(|_| (model.sample(&mut rng), model.sample(&mut rng)))
        .collect();
    let forms = pipeline_equivalence_check(&pairs, 0).unwrap();
    println!(
        "projected pipeline vs elementwise form: relative gap {:.2e}",
        forms.relative_gap().unwrap()
    );

    let circ = noise_circ(&pairs, 0).unwrap().mean_abs();
    let proj = noise_proj(&pairs, 0).unwrap().mean_abs();
    println!("mean |noise| without projection {circ:.3}, with projection {proj:.3}");
}
