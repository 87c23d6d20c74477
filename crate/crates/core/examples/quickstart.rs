// Bind, bundle and unbind with each of the five models.

use hlb::{cosine, BindingModel, ModelKind, SeedSpec};

fn main() {
    let d = 1024;
    let mut rng = SeedSpec::new(7, "quickstart").stream();
    println!("{:<6} {:>12} {:>14}", "model", "cos(ρ=1)", "cos(ρ=4)");
    for kind in ModelKind::ALL {
        let model = BindingModel::new(kind, d).unwrap();
        let pairs: Vec<_> = (0..4)
            .map(|_| (model.sample(&mut rng), model.sample(&mut rng)))
            .collect();
        let (x, key) = &pairs[0];

        let single = model.bind(x, key).unwrap();
        let alone = cosine(&model.unbind(&single, key).unwrap(), x).unwrap();

        let composite = model.bundle(&pairs).unwrap();
        let crowded = cosine(&model.unbind(&composite.vector, key).unwrap(), x).unwrap();
        println!("{:<6} {alone:>12.6} {crowded:>14.6}", kind.name());
    }
}
