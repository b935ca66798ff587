//! Pollard rho step counts against sqrt(pi r / 4).

use ecdlp::curve::{make_instance, BMode, InstanceSpec};
use ecdlp::pollard::rho_solve;

fn main() -> ecdlp::Result<()> {
    let inst = make_instance(InstanceSpec::new(16, BMode::Random, 5))?;
    let runs = 40;
    let mut total = 0u64;
    for i in 0..runs {
        let (z, stats) = rho_solve(&inst, &mut ecdlp::rng_for_task(1, i));
        assert_eq!(Some(z), inst.z_true);
        total += stats.steps;
    }
    let expect = (std::f64::consts::PI * inst.r as f64 / 4.0).sqrt();
    println!(
        "r = {}: mean {:.0} steps over {runs} runs, sqrt(pi r/4) = {expect:.0}",
        inst.r,
        total as f64 / runs as f64
    );
    Ok(())
}
