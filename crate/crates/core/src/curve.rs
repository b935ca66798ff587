//! Weierstrass curves, the chord-tangent group law, and the binary curves
//! `Y^2 + XY = X^3 + AX^2 + B` used by the rest of the crate.
//!
//! The coefficient `A` only changes which group we land in; the summation
//! polynomials of the binary family depend on `B` alone.

use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{BinaryField, Field, FieldElement, ModulusChoice, QuadExtElement};

/// Affine point or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Point<F> {
    Infinity,
    Affine { x: F, y: F },
}

impl<F: Copy> Point<F> {
    pub fn affine(x: F, y: F) -> Self {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<F> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, .. } => Some(*x),
        }
    }

    pub fn y(&self) -> Option<F> {
        match self {
            Point::Infinity => None,
            Point::Affine { y, .. } => Some(*y),
        }
    }
}

/// General Weierstrass curve `Y^2 + a1XY + a3Y = X^3 + a2X^2 + a4X + a6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Weierstrass<F> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

impl<F: Field> Weierstrass<F> {
    /// Short form `Y^2 = X^3 + AX + B` (characteristic >= 5).
    pub fn short(a: F, b: F) -> Self {
        let z = a.zero();
        Weierstrass {
            a1: z,
            a2: z,
            a3: z,
            a4: a,
            a6: b,
        }
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        match *p {
            Point::Infinity => true,
            Point::Affine { x, y } => {
                y * y + self.a1 * x * y + self.a3 * y
                    == x * x * x + self.a2 * x * x + self.a4 * x + self.a6
            }
        }
    }

    pub fn neg(&self, p: &Point<F>) -> Point<F> {
        match *p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine {
                x,
                y: -y - self.a1 * x - self.a3,
            },
        }
    }

    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        let (x1, y1, x2, y2) = match (*p, *q) {
            (Point::Infinity, _) => return *q,
            (_, Point::Infinity) => return *p,
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let (lambda, nu) = if x1 == x2 {
            let denom = y1 + y1 + self.a1 * x1 + self.a3;
            if y1 + y2 + self.a1 * x2 + self.a3 == x1.zero() || denom.is_zero() {
                return Point::Infinity;
            }
            let inv = denom.inv().expect("nonzero");
            let three = x1.from_int(3);
            let two = x1.from_int(2);
            let lambda = (three * x1 * x1 + two * self.a2 * x1 + self.a4 - self.a1 * y1) * inv;
            let nu = (-(x1 * x1 * x1) + self.a4 * x1 + two * self.a6 - self.a3 * y1) * inv;
            (lambda, nu)
        } else {
            let inv = (x2 - x1).inv().expect("distinct x");
            ((y2 - y1) * inv, (y1 * x2 - y2 * x1) * inv)
        };
        let x3 = lambda * lambda + self.a1 * lambda - self.a2 - x1 - x2;
        let y3 = -(lambda + self.a1) * x3 - nu - self.a3;
        Point::Affine { x: x3, y: y3 }
    }

    pub fn sub(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        self.add(p, &self.neg(q))
    }

    pub fn double(&self, p: &Point<F>) -> Point<F> {
        self.add(p, p)
    }

    /// `k·P` by double-and-add.
    pub fn mul(&self, k: u64, p: &Point<F>) -> Point<F> {
        let mut acc = Point::Infinity;
        let mut base = *p;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.double(&base);
            k >>= 1;
        }
        acc
    }

    pub fn mul_signed(&self, k: i64, p: &Point<F>) -> Point<F> {
        let q = self.mul(k.unsigned_abs(), p);
        if k < 0 {
            self.neg(&q)
        } else {
            q
        }
    }

    /// `Σ k_i·P_i`.
    pub fn linear_combination<'a, I>(&self, terms: I) -> Point<F>
    where
        I: IntoIterator<Item = (i64, &'a Point<F>)>,
        F: 'a,
    {
        terms.into_iter().fold(Point::Infinity, |acc, (k, p)| {
            self.add(&acc, &self.mul_signed(k, p))
        })
    }
}

/// How `B` is chosen for generated instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BMode {
    One,
    Random,
}

impl std::str::FromStr for BMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one" | "1" => Ok(BMode::One),
            "random" => Ok(BMode::Random),
            _ => Err(Error::Config(format!("unknown B mode `{s}`"))),
        }
    }
}

/// `Y^2 + XY = X^3 + AX^2 + B` over `F_{2^n}`, `B != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCurve {
    field: BinaryField,
    a: FieldElement,
    b: FieldElement,
}

impl BinaryCurve {
    pub fn new(field: BinaryField, a: FieldElement, b: FieldElement) -> Result<Self> {
        if b.is_zero() {
            return Err(Error::Config("B = 0 gives a singular curve".into()));
        }
        Ok(BinaryCurve { field, a, b })
    }

    pub fn field(&self) -> &BinaryField {
        &self.field
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }

    pub fn weierstrass(&self) -> Weierstrass<FieldElement> {
        let z = self.field.zero();
        Weierstrass {
            a1: self.field.one(),
            a2: self.a,
            a3: z,
            a4: z,
            a6: self.b,
        }
    }

    /// The same curve viewed over `F_{2^{2n}}`.
    pub fn weierstrass_ext(&self) -> Weierstrass<QuadExtElement> {
        let w = self.weierstrass();
        let e = |x| self.field.ext(x);
        Weierstrass {
            a1: e(w.a1),
            a2: e(w.a2),
            a3: e(w.a3),
            a4: e(w.a4),
            a6: e(w.a6),
        }
    }

    pub fn embed(&self, p: &Point<FieldElement>) -> Point<QuadExtElement> {
        match *p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::affine(self.field.ext(x), self.field.ext(y)),
        }
    }

    /// Restrict a point with coordinates in the base field.
    pub fn restrict(&self, p: &Point<QuadExtElement>) -> Option<Point<FieldElement>> {
        match *p {
            Point::Infinity => Some(Point::Infinity),
            Point::Affine { x, y } => Some(Point::affine(x.to_base()?, y.to_base()?)),
        }
    }

    /// `c` such that `y = x·w` lifts `x` iff `w^2 + w = c`.
    fn lift_constant(&self, x: FieldElement) -> FieldElement {
        let x_inv2 = x.inv().expect("x != 0").square();
        x + self.a + self.b * x_inv2
    }

    /// Rational points with the given x-coordinate (one for `x = 0`, two
    /// otherwise), `NoRationalPoint` if there are none.
    pub fn lift_x(&self, x: FieldElement) -> Result<Vec<Point<FieldElement>>> {
        if x.is_zero() {
            return Ok(vec![Point::affine(x, self.b.sqrt())]);
        }
        let w = self
            .field
            .solve_artin_schreier(self.lift_constant(x))
            .map_err(|_| Error::NoRationalPoint)?;
        let y = x * w;
        Ok(vec![Point::affine(x, y), Point::affine(x, y + x)])
    }

    /// Points over `F_{2^{2n}}` with the given base-field x-coordinate.
    pub fn lift_x_ext(&self, x: FieldElement) -> Vec<Point<QuadExtElement>> {
        let xe = self.field.ext(x);
        if x.is_zero() {
            return vec![Point::affine(xe, self.field.ext(self.b.sqrt()))];
        }
        let w = self.field.solve_artin_schreier_ext(self.lift_constant(x));
        let y = xe * w;
        vec![Point::affine(xe, y), Point::affine(xe, y + xe)]
    }

    /// Whether `x` is the x-coordinate of a rational point.
    pub fn is_liftable(&self, x: FieldElement) -> bool {
        x.is_zero() || self.field.trace(self.lift_constant(x)) == 0
    }

    /// Points of order 2: in this family exactly `(0, √B)`.
    pub fn order2_points(&self) -> Vec<Point<FieldElement>> {
        let w = self.weierstrass();
        self.lift_x(self.field.zero())
            .unwrap()
            .into_iter()
            .filter(|p| w.neg(p) == *p)
            .collect()
    }

    pub fn order2_point(&self) -> Point<FieldElement> {
        Point::affine(self.field.zero(), self.b.sqrt())
    }

    /// All rational points including infinity.
    pub fn points(&self) -> Vec<Point<FieldElement>> {
        let mut pts = vec![Point::Infinity];
        for x in self.field.elements() {
            if let Ok(ps) = self.lift_x(x) {
                pts.extend(ps);
            }
        }
        pts
    }

    /// `#E(F_{2^n})`; enumeration for `n <= 24`, baby-step giant-step above.
    pub fn group_order(&self) -> Result<u64> {
        if self.field.degree() <= 24 {
            Ok(self.group_order_by_count())
        } else {
            self.group_order_bsgs()
        }
    }

    fn group_order_by_count(&self) -> u64 {
        // x = 0 contributes one point; x != 0 contributes 2 when
        // Tr(x + A + B/x^2) = Tr(x) + Tr(A) + Tr(√B / x) vanishes.
        let f = &self.field;
        let sqrt_b = self.b.sqrt();
        let tr_a = f.trace(self.a);
        let mut liftable = 0u64;
        for x in f.elements().skip(1) {
            let t = f.trace(x) ^ tr_a ^ f.trace(sqrt_b * x.inv().unwrap());
            if t == 0 {
                liftable += 1;
            }
        }
        2 + 2 * liftable
    }

    fn group_order_bsgs(&self) -> Result<u64> {
        let q = self.field.order();
        let two_sqrt_q = 2 * ((q as f64).sqrt().ceil() as u64);
        let lo = q + 1 - two_sqrt_q;
        let hi = q + 1 + two_sqrt_q;
        let w = self.weierstrass();
        let mut rng = crate::rng_from_seed(self.b.bits() ^ (self.a.bits() << 32));
        let mut candidates: Option<Vec<u64>> = None;
        for _ in 0..40 {
            let g = self.random_point(&mut rng);
            // Find every m in [lo, hi] with m·G = ∞.
            let width = hi - lo + 1;
            let s = (width as f64).sqrt().ceil() as u64 + 1;
            let mut baby: HashMap<Point<FieldElement>, Vec<u64>> = HashMap::new();
            let mut cur = Point::Infinity;
            for j in 0..s {
                baby.entry(cur).or_default().push(j);
                cur = w.add(&cur, &g);
            }
            let giant = w.neg(&w.mul(s, &g));
            // lo·G + i·s·G + j·G = ∞  <=>  -(lo·G) - i·sG = j·G
            let mut target = w.neg(&w.mul(lo, &g));
            let mut found = Vec::new();
            let mut i = 0;
            while i * s <= width {
                if let Some(js) = baby.get(&target) {
                    for &j in js {
                        let m = lo + i * s + j;
                        if m <= hi {
                            found.push(m);
                        }
                    }
                }
                target = w.add(&target, &giant);
                i += 1;
            }
            let c = match candidates.take() {
                None => found,
                Some(prev) => prev.into_iter().filter(|m| found.contains(m)).collect(),
            };
            if c.len() == 1 {
                return Ok(c[0]);
            }
            candidates = Some(c);
        }
        Err(Error::ResourceLimit(
            "group order ambiguous after 40 random points".into(),
        ))
    }

    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point<FieldElement> {
        loop {
            let x = self.field.random(rng);
            if let Ok(pts) = self.lift_x(x) {
                let i = rng.gen_range(0..pts.len());
                return pts[i];
            }
        }
    }
}

/// Prime factorisation by trial division (desk-scale integers).
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// A discrete-logarithm instance: `Q = z·P` in a prime-order subgroup.
#[derive(Debug, Clone)]
pub struct Instance {
    pub curve: BinaryCurve,
    pub p: Point<FieldElement>,
    /// Prime order of `P`.
    pub r: u64,
    /// `#E(F_{2^n})`.
    pub group_order: u64,
    pub q: Point<FieldElement>,
    pub z_true: Option<u64>,
}

impl Instance {
    pub fn cofactor(&self) -> u64 {
        self.group_order / self.r
    }

    /// Check the structural invariants: `rP = ∞`, `r` prime, `r | N`, Hasse.
    pub fn validate(&self) -> Result<()> {
        let w = self.curve.weierstrass();
        let q = self.curve.field().order();
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if !w.contains(&self.p) || !w.contains(&self.q) || self.p.is_infinity() {
            return bad("P or Q not on the curve");
        }
        if !is_prime(self.r) || self.group_order % self.r != 0 {
            return bad("r must be a prime divisor of N");
        }
        if !w.mul(self.r, &self.p).is_infinity() || !w.mul(self.r, &self.q).is_infinity() {
            return bad("P and Q must have order dividing r");
        }
        let diff = (self.group_order as i128 - q as i128 - 1).unsigned_abs();
        if (diff as f64) > 2.0 * (q as f64).sqrt() {
            return bad("group order violates the Hasse bound");
        }
        if let Some(z) = self.z_true {
            if w.mul(z, &self.p) != self.q {
                return bad("z_true·P != Q");
            }
        }
        Ok(())
    }
}

/// Parameters for [`make_instance`].
#[derive(Debug, Clone, Copy)]
pub struct InstanceSpec {
    pub n: u32,
    pub b_mode: BMode,
    pub modulus: ModulusChoice,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn new(n: u32, b_mode: BMode, seed: u64) -> Self {
        InstanceSpec {
            n,
            b_mode,
            modulus: ModulusChoice::Default,
            seed,
        }
    }
}

/// Deterministically generate an instance from a seed: random `A` (and `B`
/// in random mode), `r` the largest prime factor of `N`, `P` of order `r`
/// by cofactor multiplication and `Q = zP` for a random `z`.
pub fn make_instance(spec: InstanceSpec) -> Result<Instance> {
    let field = BinaryField::with_choice(spec.n, spec.modulus)?;
    let mut rng = crate::rng_from_seed(spec.seed);
    let mut last_order = 0;
    for _ in 0..32 {
        let a = field.random(&mut rng);
        let b = match spec.b_mode {
            BMode::One => field.one(),
            BMode::Random => loop {
                let b = field.random(&mut rng);
                if !b.is_zero() {
                    break b;
                }
            },
        };
        let curve = BinaryCurve::new(field.clone(), a, b)?;
        let order = curve.group_order()?;
        last_order = order;
        let r = factorize(order).last().map(|&(p, _)| p).unwrap_or(1);
        if r <= 4 {
            continue;
        }
        let w = curve.weierstrass();
        let h = order / r;
        let p = loop {
            let g = curve.random_point(&mut rng);
            let p = w.mul(h, &g);
            if !p.is_infinity() {
                break p;
            }
        };
        let z = rng.gen_range(1..r);
        let q = w.mul(z, &p);
        let inst = Instance {
            curve,
            p,
            r,
            group_order: order,
            q,
            z_true: Some(z),
        };
        debug_assert!(inst.validate().is_ok());
        return Ok(inst);
    }
    Err(Error::DegenerateGroup(last_order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeFieldElement;

    fn curve(n: u32, a: u64, b: u64) -> BinaryCurve {
        let f = BinaryField::with_default(n).unwrap();
        BinaryCurve::new(f.clone(), f.elem(a), f.elem(b)).unwrap()
    }

    #[test]
    fn identity_and_inverse() {
        let c = curve(7, 3, 5);
        let w = c.weierstrass();
        for p in c.points() {
            assert!(w.contains(&p));
            assert_eq!(w.add(&p, &Point::Infinity), p);
            assert!(w.add(&p, &w.neg(&p)).is_infinity());
            if let Point::Affine { x, y } = p {
                assert_eq!(w.neg(&p), Point::affine(x, x + y));
            }
        }
    }

    #[test]
    fn group_law_is_associative_exhaustively() {
        for (n, a, b) in [(4, 0, 1), (4, 1, 9), (5, 3, 1)] {
            let c = curve(n, a, b);
            let w = c.weierstrass();
            let pts = c.points();
            for p in &pts {
                for q in &pts {
                    let pq = w.add(p, q);
                    assert!(w.contains(&pq));
                    assert_eq!(pq, w.add(q, p));
                    for r in &pts {
                        assert_eq!(w.add(&pq, r), w.add(p, &w.add(q, r)));
                    }
                }
            }
        }
    }

    #[test]
    fn order_matches_enumeration_and_hasse() {
        for (n, a, b) in [(4, 0, 1), (4, 1, 1), (6, 5, 7), (9, 100, 3), (11, 7, 1)] {
            let c = curve(n, a, b);
            let order = c.group_order().unwrap();
            assert_eq!(order, c.points().len() as u64);
            let q = (1u64 << n) as f64;
            assert!(((order as f64) - q - 1.0).abs() <= 2.0 * q.sqrt());
            let w = c.weierstrass();
            let mut rng = crate::rng_from_seed(n as u64);
            for _ in 0..20 {
                let g = c.random_point(&mut rng);
                assert!(w.mul(order, &g).is_infinity());
            }
        }
    }

    #[test]
    fn bsgs_order_agrees_with_count() {
        let c = curve(18, 0x1234, 0x77);
        assert_eq!(c.group_order_bsgs().unwrap(), c.group_order_by_count());
        let c = curve(26, 0x51, 1);
        let order = c.group_order().unwrap();
        let w = c.weierstrass();
        let mut rng = crate::rng_from_seed(5);
        for _ in 0..5 {
            assert!(w.mul(order, &c.random_point(&mut rng)).is_infinity());
        }
    }

    #[test]
    fn lifting() {
        let c = curve(9, 0x33, 0x1f);
        let w = c.weierstrass();
        let h = c.lift_x(c.field().zero()).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(w.neg(&h[0]), h[0]);
        assert_eq!(c.order2_points(), vec![c.order2_point()]);
        assert!(w.double(&h[0]).is_infinity());
        let we = c.weierstrass_ext();
        let mut saw_nonrational = false;
        for x in c.field().elements().skip(1) {
            match c.lift_x(x) {
                Ok(pts) => {
                    assert_eq!(pts.len(), 2);
                    assert!(pts.iter().all(|p| w.contains(p)));
                }
                Err(e) => {
                    assert_eq!(e, Error::NoRationalPoint);
                    // No y in the base field works.
                    assert!(c
                        .field()
                        .elements()
                        .all(|y| !w.contains(&Point::affine(x, y))));
                    let ext = c.lift_x_ext(x);
                    assert_eq!(ext.len(), 2);
                    for p in &ext {
                        assert!(we.contains(p));
                    }
                    let conj = match ext[0] {
                        Point::Affine { x, y } => Point::affine(x.conj(), y.conj()),
                        Point::Infinity => unreachable!(),
                    };
                    assert_eq!(conj, ext[1]);
                    saw_nonrational = true;
                }
            }
        }
        assert!(saw_nonrational);
    }

    #[test]
    fn order2_point_with_b_one() {
        let c = curve(8, 0x12, 1);
        assert_eq!(c.order2_point(), Point::affine(c.field().zero(), c.field().one()));
    }

    #[test]
    fn scalar_multiplication_is_linear() {
        let c = curve(13, 0x99, 0x4);
        let w = c.weierstrass();
        let mut rng = crate::rng_from_seed(2);
        for _ in 0..50 {
            let p = c.random_point(&mut rng);
            let a: u64 = rng.gen_range(0..10_000);
            let b: u64 = rng.gen_range(0..10_000);
            assert_eq!(w.mul(a + b, &p), w.add(&w.mul(a, &p), &w.mul(b, &p)));
            assert_eq!(w.mul_signed(-(a as i64), &p), w.neg(&w.mul(a, &p)));
        }
    }

    #[test]
    fn instances() {
        for (mode, seed) in [(BMode::One, 1u64), (BMode::Random, 2), (BMode::One, 3)] {
            let inst = make_instance(InstanceSpec::new(13, mode, seed)).unwrap();
            inst.validate().unwrap();
            if mode == BMode::One {
                assert!(inst.curve.b().is_one());
            } else {
                assert!(!inst.curve.b().is_zero());
            }
            let w = inst.curve.weierstrass();
            assert_eq!(w.mul(inst.z_true.unwrap(), &inst.p), inst.q);
        }
        let a = make_instance(InstanceSpec::new(11, BMode::Random, 7)).unwrap();
        let b = make_instance(InstanceSpec::new(11, BMode::Random, 7)).unwrap();
        assert_eq!(a.q, b.q);
    }

    #[test]
    fn short_weierstrass_over_prime_field() {
        let p = 7;
        let f = |v| PrimeFieldElement::new(v, p);
        let w = Weierstrass::short(f(1), f(1));
        let mut pts = vec![Point::Infinity];
        for x in PrimeFieldElement::all(p) {
            for y in PrimeFieldElement::all(p) {
                let pt = Point::affine(x, y);
                if w.contains(&pt) {
                    pts.push(pt);
                }
            }
        }
        let order = pts.len() as u64;
        for a in &pts {
            assert!(w.mul(order, a).is_infinity());
            for b in &pts {
                assert!(w.contains(&w.add(a, b)));
            }
        }
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(8191), vec![(8191, 1)]);
        assert!(is_prime(8191));
        assert!(!is_prime(1));
    }
}
