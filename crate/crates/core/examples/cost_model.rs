//! Success probabilities and the asymptotic cost table.

use ecdlp::analysis::{self, CostModel, MChoice, Variant};

fn main() -> ecdlp::Result<()> {
    for (n, m, t) in [(13, 4, 4), (15, 5, 3), (21, 3, 3)] {
        let k = (n as u32).div_ceil(m);
        println!("P({n}, {m}, {t}, {k}) = {:.4}", analysis::trunc4(analysis::p_nmtk(n, t, k)));
    }

    let model = CostModel::default();
    println!("n, 2^(n/2), m, stage1, stage2");
    for row in analysis::table3(&model, &analysis::TABLE3_NS) {
        println!("{row}");
    }
    println!("crossover: n = {:?}", model.crossover(100..=700));

    let f4 = CostModel::new(3.0, Variant::DefaultF4)?;
    println!(
        "plain F4 cost, same m: crossover n = {:?}",
        f4.crossover_with(100..=700, MChoice::BlockOptimal)
    );
    println!(
        "c = {:.4}, m(571) ~ {:.2}",
        analysis::asymptotic_constant(),
        analysis::asymptotic_m(571.0)
    );
    Ok(())
}
