//! One row of the success-rate experiment: random z, solve, aggregate.

use ecdlp::cli::{rows_to_csv, run_experiment, ExperimentConfig};
use ecdlp::curve::BMode;

fn main() -> ecdlp::Result<()> {
    let mut cfg = ExperimentConfig::new(13, 4, 4, BMode::One);
    cfg.trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    cfg.seed = 11;
    let (row, records) = run_experiment(&cfg)?;
    for r in records.iter().take(5) {
        println!("{}", r.log_line(false));
    }
    print!("{}", rows_to_csv(&[row.clone()], false)?);
    println!(
        "observed {:.2} vs model {:.4} (sigma {:.3})",
        row.exp_prob,
        row.p_model,
        row.sigma()
    );
    Ok(())
}
