// Retrieval noise with and without projection, in log scale.

use hlb::experiments::{run_noise_heatmap, HeatmapConfig};

fn main() {
    let cfg = HeatmapConfig {
        ns: vec![2, 4, 6, 8],
        rhos: vec![2, 5, 10, 25],
        trials: 20,
        seed: 7,
        ..HeatmapConfig::noise_default()
    };
    let out = run_noise_heatmap(&cfg).unwrap();
    println!("{:>3} {:>4} {:>12} {:>12}", "n", "rho", "ln|η°|", "ln|η^π|");
    for r in &out.reports {
        println!(
            "{:>3} {:>4} {:>12.3} {:>12.3}",
            r.n,
            r.rho,
            r.mean_abs_eta_circ.ln(),
            r.mean_abs_eta_proj.ln()
        );
    }
    println!("overflowed cells: {:?}", out.overflow_cells());
}
