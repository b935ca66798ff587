//! Arithmetic in F_{2^13} and its quadratic extension.

use ecdlp::field::{BinaryField, Field};

fn main() -> ecdlp::Result<()> {
    let f = BinaryField::with_default(13)?;
    println!("F_2^13 with modulus {:#x}", f.modulus());

    let a = f.elem(0x1abc);
    let b = f.elem(0x0123);
    println!("a = {a}, b = {b}");
    println!("a + b = {}", a + b);
    println!("a * b = {}", a * b);
    let ainv = a.checked_inv()?;
    println!("a^-1 = {ainv}, check a*a^-1 = {}", a * ainv);
    println!("sqrt(a) = {}, squared back = {}", a.sqrt(), a.sqrt().square());

    // w^2 + w = c is solvable in F_q exactly when Tr(c) = 0.
    for c in [a, b] {
        match f.solve_artin_schreier(c) {
            Ok(w) => println!("Tr({c}) = 0, root w = {w}"),
            Err(_) => {
                let w = f.solve_artin_schreier_ext(c);
                println!("Tr({c}) = 1, root lives in F_q^2: {w:?}");
            }
        }
    }
    Ok(())
}
