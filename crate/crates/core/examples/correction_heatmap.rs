// Corrected-similarity grids rendered as SVG heatmaps.

use hlb::experiments::{run_correction_heatmap, HeatmapConfig};
use hlb::report::render_heatmap;

fn main() {
    let cfg = HeatmapConfig {
        ns: (1..=8).collect(),
        rhos: (1..=16).collect(),
        trials: 20,
        seed: 7,
        ..HeatmapConfig::correction_default()
    };
    let (pos, neg) = run_correction_heatmap(&cfg).unwrap();
    let dir = std::env::temp_dir();
    for grid in [&pos, &neg] {
        let path = dir.join(format!("hlb-example-{}.svg", grid.metric));
        std::fs::write(&path, render_heatmap(grid)).unwrap();
        println!("{} -> {}", grid.metric, path.display());
    }
    println!(
        "d=256: φ′+ at ρ=16 {:.3}, φ′− at ρ=16 {:.3}",
        pos.get(8, 16).unwrap(),
        neg.get(8, 16).unwrap()
    );
}
