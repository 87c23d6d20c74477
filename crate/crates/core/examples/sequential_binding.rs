// Chains of repeated binding: how well one step can be undone and what
// happens to the magnitude.

use hlb::experiments::{run_sequential, SequentialConfig, SequentialMode};
use hlb::ModelKind;

fn main() {
    let cfg = SequentialConfig {
        depth: 20,
        d: 256,
        trials: 3,
        seed: 2,
        ..SequentialConfig::default()
    };
    let out = run_sequential(&cfg).unwrap();
    let root_d = (cfg.d as f64).sqrt();
    for kind in ModelKind::ALL {
        for mode in [SequentialMode::Random, SequentialMode::Auto] {
            let mags = out.mean_magnitude(kind, mode);
            let last_sim = out
                .series(kind, mode)
                .filter(|r| r.t == cfg.depth)
                .map(|r| r.similarity)
                .sum::<f64>()
                / cfg.trials as f64;
            println!(
                "{:<6} {:<6} ‖·‖/√d at t=1 {:>10.3e}, t={} {:>10.3e}; similarity at t={} {:.4}",
                kind.name(),
                mode.name(),
                mags[0] / root_d,
                cfg.depth,
                mags[cfg.depth - 1] / root_d,
                cfg.depth,
                last_sim
            );
        }
    }
}
