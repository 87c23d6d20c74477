// Estimating how many pairs a composite holds from its norm, then undoing
// the 1/√ρ shrinkage of the retrieval cosine.

use hlb::theory::{estimate_rho, norm_curve, theoretical_phi};
use hlb::{corrected_cosine, cosine, BindingModel, Composite, SeedSpec};

fn main() {
    let (d, mu) = (1024, 1.0);
    let model = BindingModel::hlb(d, mu).unwrap();
    let mut rng = SeedSpec::new(5, "corrected-example").stream();
    println!(
        "{:>4} {:>9} {:>9} {:>8} {:>8} {:>8}",
        "rho", "‖χ‖", "theory", "est ρ", "cos", "cos·√ρ"
    );
    for rho in [1, 2, 5, 10, 20, 40] {
        let pairs: Vec<_> = (0..rho)
            .map(|_| (model.sample(&mut rng), model.sample(&mut rng)))
            .collect();
        let chi = model.bundle(&pairs).unwrap().vector;
        let anonymous = Composite::new(chi.clone(), None).unwrap();
        let est = estimate_rho(&anonymous, mu, d).unwrap();
        let retrieved = model.unbind(&chi, &pairs[0].1).unwrap();
        let raw = cosine(&retrieved, &pairs[0].0).unwrap();
        let fixed = corrected_cosine(&retrieved, &pairs[0].0, est).unwrap();
        println!(
            "{rho:>4} {:>9.2} {:>9.2} {est:>8} {raw:>8.3} {fixed:>8.3}   (1/√ρ = {:.3})",
            chi.norm(),
            norm_curve(rho, mu, d),
            theoretical_phi(rho)
        );
    }
}
