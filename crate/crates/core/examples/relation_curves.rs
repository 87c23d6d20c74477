// Empirical composite norm and retrieval cosine against their closed forms,
// with the cosine curve drawn as an SVG band plot.

use hlb::experiments::{curve_series, run_relation_curves, RelationConfig};
use hlb::report::render_curves;

fn main() {
    let cfg = RelationConfig {
        trials: 20,
        norm_rho_max: 40,
        cos_rho_max: 20,
        seed: 1,
        ..RelationConfig::default()
    };
    let curves = run_relation_curves(&cfg).unwrap();
    for p in curves.norm.iter().step_by(10) {
        println!(
            "norm   ρ={:<3} mean {:>8.3} ± {:<6.3} theory {:.3}",
            p.rho, p.mean, p.std, p.theory
        );
    }
    for p in curves.cosine.iter().step_by(5) {
        println!(
            "cosine ρ={:<3} mean {:>8.4} ± {:<6.4} theory {:.4}",
            p.rho, p.mean, p.std, p.theory
        );
    }
    let path = std::env::temp_dir().join("hlb-example-relation-cosine.svg");
    std::fs::write(
        &path,
        render_curves(&curve_series("Retrieval cosine", "cosine", &curves.cosine)),
    )
    .unwrap();
    println!("plot -> {}", path.display());
}
