//! The decomposition chain for t = 3 and its Boolean system.

use ecdlp::descent::{build_system, weil_descend, SubspaceV};
use ecdlp::field::BinaryField;

fn main() -> ecdlp::Result<()> {
    let f = BinaryField::with_default(7)?;
    let v = SubspaceV::low_degree(&f, 3)?;
    let z = f.elem(0x5b);
    let eqs = build_system(z, 3)?;
    for e in &eqs {
        println!("{e}");
    }
    let sys = weil_descend(&eqs, f.one(), &v)?;
    println!(
        "{} polynomials in {} variables, degrees {:?}",
        sys.polys.len(),
        sys.nvars,
        sys.polys.iter().map(|p| p.degree().unwrap_or(0)).collect::<Vec<_>>()
    );
    print!("{}", sys.dump());
    Ok(())
}
