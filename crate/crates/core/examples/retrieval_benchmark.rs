// A reduced cleanup-retrieval benchmark with CSV output on stdout.

use hlb::experiments::{run_retrieval, RetrievalConfig};
use hlb::{Metric, ModelKind};

fn main() {
    let cfg = RetrievalConfig {
        pool_size: 200,
        dims: vec![64, 256],
        rhos: (1..=12).collect(),
        trials: 5,
        models: ModelKind::ALL.to_vec(),
        metric: Metric::Dot,
        mu: 1.0,
        seed: 7,
    };
    let outcome = run_retrieval(&cfg).unwrap();
    for a in &outcome.auc {
        println!("{:<6} d={:<4} AUC {:.3}", a.model.name(), a.d, a.auc);
    }
    let result = outcome.to_result();
    print!("{}", result.table("retrieval_auc").unwrap().to_csv());
}
