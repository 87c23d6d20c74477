// Masking a vector with a secret and recovering it.

use hlb::experiments::{csps_mask, csps_unmask};
use hlb::{cosine, BindingModel, ModelKind, SeedSpec};

fn main() {
    let mut rng = SeedSpec::new(9, "csps-example").stream();
    for kind in ModelKind::ALL {
        let model = BindingModel::new(kind, 1024).unwrap();
        let x = model.sample(&mut rng);
        let secret = model.sample(&mut rng);
        let masked = csps_mask(&model, &x, &secret).unwrap();
        let back = csps_unmask(&model, &masked, &secret).unwrap();
        println!(
            "{:<6} cos(mask, x) {:>7.4}  round-trip error {:.2e}",
            kind.name(),
            cosine(&masked, &x).unwrap(),
            back.relative_error(&x).unwrap()
        );
    }
}
