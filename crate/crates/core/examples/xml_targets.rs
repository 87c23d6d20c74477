// Encoding a label set as one target vector and scoring predictions.

use hlb::experiments::XmlCodec;
use hlb::{cosine, BindingModel, SeedSpec};

fn main() {
    let model = BindingModel::hlb(1024, 1.0).unwrap();
    let mut rng = SeedSpec::new(4, "xml-example").stream();
    let codec = XmlCodec::random(model, 100, &mut rng).unwrap();
    let present = [3, 41, 77];

    let target = codec.encode(&present).unwrap();
    let direct = codec.encode_direct(&present).unwrap();
    println!(
        "complement identity gap {:.2e}",
        target.max_abs_diff(&direct).unwrap()
    );
    println!(
        "loss of the exact target {:.4}",
        codec.loss(&target, &present).unwrap()
    );
    let wrong = codec.encode(&[5, 6, 7]).unwrap();
    println!(
        "loss of a wrong target   {:.4}",
        codec.loss(&wrong, &present).unwrap()
    );

    // Rank labels by similarity to the "present" slot of the target.
    let slot = model.unbind(&target, &codec.p).unwrap();
    let mut ranked: Vec<(usize, f64)> = codec
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| (i, cosine(&slot, c).unwrap()))
        .collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1));
    println!(
        "top labels {:?}",
        ranked[..3].iter().map(|r| r.0).collect::<Vec<_>>()
    );
}
