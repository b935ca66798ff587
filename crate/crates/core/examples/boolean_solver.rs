//! Solve a descended system by XL with degree telemetry, and compare with
//! exhaustive search.

use ecdlp::descent::{descend, SubspaceV};
use ecdlp::field::BinaryField;
use ecdlp::gbsolver::{brute_force_solutions, xl_solve, SolverConfig};

fn main() -> ecdlp::Result<()> {
    let f = BinaryField::with_default(11)?;
    let v = SubspaceV::low_degree(&f, 4)?;
    let mut rng = ecdlp::rng_from_seed(3);
    let mut sat = 0;
    for trial in 0..20 {
        let z = f.random(&mut rng);
        let sys = descend(z, f.elem(0x3f), 3, &v)?;
        let out = xl_solve(&sys, &SolverConfig::default())?;
        let brute = brute_force_solutions(&sys)?;
        assert_eq!(out.solutions(), brute.as_slice());
        if !brute.is_empty() {
            sat += 1;
            println!("trial {trial}: z = {z}, {} solution(s)", brute.len());
            for a in &brute {
                println!("  x = {:?}", sys.x_values(&v, *a));
            }
        }
        if trial == 0 {
            for line in out.telemetry.lines() {
                println!("  {line}");
            }
            println!("  d_max = {}", out.telemetry.d_max);
        }
    }
    println!("{sat}/20 systems satisfiable");
    Ok(())
}
