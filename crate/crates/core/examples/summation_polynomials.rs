//! Build S_3, S_4, S_5 for a binary curve and check that they vanish on
//! x-coordinates of points summing to infinity.

use ecdlp::curve::BinaryCurve;
use ecdlp::field::BinaryField;
use ecdlp::sumpoly::SumPolyCache;

fn main() -> ecdlp::Result<()> {
    let f = BinaryField::with_default(7)?;
    let curve = BinaryCurve::new(f.clone(), f.zero(), f.elem(0x11))?;
    let w = curve.weierstrass();
    let cache = SumPolyCache::new(w.clone());

    for m in 3..=5 {
        let s = cache.get(m)?;
        println!(
            "S_{m}: {} terms, degree {} in x1, symmetric: {}",
            s.len(),
            s.degree_in(0).unwrap(),
            s.is_symmetric()
        );
    }
    println!("S_3 = {}", cache.get(3)?.to_text(|c| c.to_string()));

    // P1 + P2 + P3 + P4 = O  ⇒  S_4(x1, x2, x3, x4) = 0.
    let pts = curve.points();
    let (p1, p2, p3) = (pts[3], pts[10], pts[20]);
    let p4 = w.neg(&w.add(&w.add(&p1, &p2), &p3));
    let xs: Vec<_> = [p1, p2, p3, p4].iter().map(|p| p.x().unwrap()).collect();
    println!("S_4 at a zero-sum quadruple: {}", cache.get(4)?.eval(&xs));
    Ok(())
}
