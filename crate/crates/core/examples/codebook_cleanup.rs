// A role-filler record stored in one vector, queried by role and cleaned up
// against an item memory that survives a JSON round trip.

use hlb::{BindingModel, Codebook, HyperVector, Metric, SeedSpec};

fn main() {
    let model = BindingModel::hlb(2048, 1.0).unwrap();
    let mut rng = SeedSpec::new(11, "codebook-example").stream();
    let symbols = [
        "name", "color", "shape", "alice", "red", "circle", "bob", "blue", "square",
    ];
    let book = Codebook::random(model, symbols, &mut rng).unwrap();

    let fields = [("name", "alice"), ("color", "red"), ("shape", "circle")];
    let bound: Vec<HyperVector> = fields
        .iter()
        .map(|(role, filler)| {
            model
                .bind(book.require(filler).unwrap(), book.require(role).unwrap())
                .unwrap()
        })
        .collect();
    let record = HyperVector::sum(&bound).unwrap();

    let path = std::env::temp_dir().join("hlb-example-codebook.json");
    book.save(&path).unwrap();
    let reloaded = Codebook::load(&path).unwrap();
    assert_eq!(reloaded, book);

    for (role, expected) in fields {
        let noisy = model
            .unbind(&record, reloaded.require(role).unwrap())
            .unwrap();
        let (found, score) = reloaded.nearest(&noisy, Metric::Cosine).unwrap();
        println!("{role:>6} -> {found:<7} cosine {score:.3} (expected {expected})");
    }
}
