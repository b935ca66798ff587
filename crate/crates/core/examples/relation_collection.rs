//! Collect verified relations over a factor base and print the relation log.

use ecdlp::curve::{make_instance, BMode, InstanceSpec};
use ecdlp::decompose::{collect, CollectConfig, FactorBase};
use ecdlp::descent::SubspaceV;
use ecdlp::linalg::MARGIN;

fn main() -> ecdlp::Result<()> {
    let inst = make_instance(InstanceSpec::new(13, BMode::Random, 2024))?;
    let v = SubspaceV::low_degree(inst.curve.field(), 5)?;
    let fb = FactorBase::new(&inst.curve, &v);
    println!("factor base: {} points (plus H)", fb.len());

    let cfg = CollectConfig::new(3, fb.width() + MARGIN, 99);
    let rep = collect(&inst, &fb, &cfg)?;
    println!(
        "{} relations from {} trials, successes by t: {:?}",
        rep.relations.len(),
        rep.trials,
        rep.successes_by_t
    );
    if let Some(z) = rep.direct {
        println!("a trial hit uP + vQ = O, giving z = {z} directly");
    }
    println!("# u v t x-list h2 coeffs");
    for r in &rep.relations {
        assert!(r.verify(&inst, &fb));
        println!("{}", r.to_line());
    }
    Ok(())
}
