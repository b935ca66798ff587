//! Points on Y^2 + XY = X^3 + AX^2 + B, lifts of x-coordinates and a
//! generated discrete-log instance.

use ecdlp::curve::{make_instance, BMode, BinaryCurve, InstanceSpec};
use ecdlp::field::BinaryField;

fn main() -> ecdlp::Result<()> {
    let f = BinaryField::with_default(11)?;
    let curve = BinaryCurve::new(f.clone(), f.elem(1), f.elem(0x2d))?;
    let w = curve.weierstrass();
    println!("#E = {}", curve.group_order()?);
    println!("order-2 point H = {:?}", curve.order2_point());

    let mut rational = 0;
    let mut conjugate = 0;
    for x in (1..24).map(|b| f.elem(b)) {
        if curve.is_liftable(x) {
            rational += 1;
        } else {
            conjugate += 1;
        }
    }
    println!("of 23 small x: {rational} lift over F_q, {conjugate} only over F_q^2");

    let x = (1..).map(|b| f.elem(b)).find(|&x| curve.is_liftable(x)).unwrap();
    let p = curve.lift_x(x)?[0];
    println!("P = {p:?}, 2P = {:?}, P - P = {:?}", w.double(&p), w.add(&p, &w.neg(&p)));

    let inst = make_instance(InstanceSpec::new(13, BMode::Random, 7))?;
    println!(
        "instance: N = {}, r = {}, cofactor = {}, z = {:?}",
        inst.group_order,
        inst.r,
        inst.cofactor(),
        inst.z_true
    );
    inst.validate()
}
