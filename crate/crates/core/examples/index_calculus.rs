//! End-to-end discrete log: relations, kernel modulo the group order, log
//! extraction, then an independent check with Pollard rho.

use ecdlp::cli::{solve_instance, SolveConfig};
use ecdlp::curve::{make_instance, BMode, InstanceSpec};
use ecdlp::pollard::rho_solve;

fn main() -> ecdlp::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(13);
    let seed = 2024;
    let inst = make_instance(InstanceSpec::new(n, BMode::Random, seed))?;
    println!("n = {n}, N = {}, r = {}", inst.group_order, inst.r);

    let rep = solve_instance(&inst, &SolveConfig::new(n, seed))?;
    println!(
        "index calculus: z = {} ({} relations, {} trials, direct hit: {})",
        rep.z,
        rep.collect.relations.len(),
        rep.collect.trials,
        rep.collect.direct.is_some()
    );

    let (z_rho, stats) = rho_solve(&inst, &mut ecdlp::rng_from_seed(seed));
    println!("pollard rho:    z = {z_rho} ({} steps)", stats.steps);
    println!("planted:        z = {}", inst.z_true.unwrap());
    assert_eq!(rep.z, z_rho);
    Ok(())
}
