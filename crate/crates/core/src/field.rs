//! Finite-field arithmetic: `F_2[X]/(f)` in polynomial basis, its quadratic
//! extension, and small prime fields.
//!
//! Elements are small `Copy` values that carry their own modulus, so they can
//! be used as coefficients of generic polynomials and curves without a
//! context handle. [`BinaryField`] holds the derived per-field data (trace
//! mask, the Artin–Schreier solver and the extension constant δ).

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rand::Rng;

use crate::error::{Error, Result};

/// Minimal field interface used by the generic polynomial and curve code.
pub trait Field:
    Copy
    + Eq
    + Hash
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Send
    + Sync
{
    /// The zero of the field `self` lives in.
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn characteristic(&self) -> u64;
    /// Image of an integer under the canonical map `Z -> F`.
    fn from_int(&self, v: i64) -> Self;

    fn square(&self) -> Self {
        *self * *self
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    fn is_one(&self) -> bool {
        *self == self.one()
    }
}

// ---------------------------------------------------------------------------
// F_2[X] helpers on single-word masks (degree <= 63).

pub mod gf2x {
    /// Degree of a nonzero polynomial mask.
    #[inline]
    pub fn degree(p: u64) -> i32 {
        63 - p.leading_zeros() as i32
    }

    /// Carry-less product of two polynomials whose product has degree < 64.
    #[inline]
    pub fn clmul(a: u64, b: u64) -> u64 {
        let mut table = [0u64; 16];
        for i in 1..16 {
            table[i] = if i & 1 == 1 {
                table[i - 1] ^ a
            } else {
                table[i >> 1] << 1
            };
        }
        let mut r = 0u64;
        let mut shift = 0;
        let mut b = b;
        while b != 0 {
            r ^= table[(b & 15) as usize] << shift;
            b >>= 4;
            shift += 4;
        }
        r
    }

    /// `a mod m`.
    pub fn rem(mut a: u64, m: u64) -> u64 {
        let dm = degree(m);
        while a != 0 && degree(a) >= dm {
            a ^= m << (degree(a) - dm);
        }
        a
    }

    pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
        rem(clmul(a, b), m)
    }

    pub fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let r = rem(a, b);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or irreducibility test: `gcd(x^(2^i) - x, f) = 1` for `i <= deg/2`.
    pub fn is_irreducible(f: u64) -> bool {
        let n = degree(f);
        if n < 1 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let mut power = 2u64; // x
        for _ in 1..=n / 2 {
            power = mulmod(power, power, f);
            if gcd(f, power ^ 2) != 1 {
                return false;
            }
        }
        true
    }

    /// Smallest-mask irreducible polynomial of exact degree `n`.
    pub fn least_irreducible(n: u32) -> u64 {
        let lead = 1u64 << n;
        (0..lead)
            .map(|low| lead | low)
            .find(|&f| is_irreducible(f))
            .expect("irreducible polynomials exist in every degree")
    }
}

// ---------------------------------------------------------------------------
// Binary field context.

/// Which defining polynomial to use when constructing a field by degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusChoice {
    /// Lexicographically least irreducible polynomial of the degree.
    Default,
    /// A uniformly random irreducible polynomial, derived from the seed.
    Random(u64),
    Explicit(u64),
}

/// `F_{2^n} = F_2[X]/(f)` with cached derived data.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryField {
    n: u32,
    modulus: u64,
    trace_mask: u64,
    delta: u64,
}

impl fmt::Debug for BinaryField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.n, self.modulus)
    }
}

impl BinaryField {
    pub const MAX_DEGREE: u32 = 32;

    /// Build the field from an `(n+1)`-bit defining polynomial mask.
    pub fn new(n: u32, modulus: u64) -> Result<Self> {
        if !(2..=Self::MAX_DEGREE).contains(&n) {
            return Err(Error::UnsupportedDegree(n));
        }
        if modulus >> n != 1 {
            return Err(Error::BadModulusDegree { n, poly: modulus });
        }
        if !gf2x::is_irreducible(modulus) {
            return Err(Error::ReducibleModulus(modulus));
        }
        let mut field = BinaryField {
            n,
            modulus,
            trace_mask: 0,
            delta: 0,
        };
        let mut mask = 0;
        for i in 0..n {
            let t = field.trace_slow(field.elem(1 << i));
            mask |= (t as u64) << i;
        }
        field.trace_mask = mask;
        field.delta = (1..1u64 << n)
            .find(|&d| field.trace(field.elem(d)) == 1)
            .expect("trace is surjective");
        Ok(field)
    }

    pub fn with_choice(n: u32, choice: ModulusChoice) -> Result<Self> {
        match choice {
            ModulusChoice::Default => {
                if !(2..=Self::MAX_DEGREE).contains(&n) {
                    return Err(Error::UnsupportedDegree(n));
                }
                Self::new(n, gf2x::least_irreducible(n))
            }
            ModulusChoice::Explicit(f) => Self::new(n, f),
            ModulusChoice::Random(seed) => {
                if !(2..=Self::MAX_DEGREE).contains(&n) {
                    return Err(Error::UnsupportedDegree(n));
                }
                let mut rng = crate::rng_from_seed(seed ^ 0x6d6f_6475_6c75_7321);
                loop {
                    let low: u64 = rng.gen::<u64>() & ((1u64 << n) - 1);
                    let f = (1u64 << n) | low | 1;
                    if gf2x::is_irreducible(f) {
                        return Self::new(n, f);
                    }
                }
            }
        }
    }

    /// Field with the default (least) defining polynomial.
    pub fn with_default(n: u32) -> Result<Self> {
        Self::with_choice(n, ModulusChoice::Default)
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        1u64 << self.n
    }

    /// Element with the given coefficient mask (reduced if necessary).
    pub fn elem(&self, bits: u64) -> FieldElement {
        FieldElement {
            bits: gf2x::rem(bits, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// The root α of the defining polynomial.
    pub fn alpha(&self) -> FieldElement {
        self.elem(2)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        self.elem(rng.gen::<u64>() & (self.order() - 1))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |b| self.elem(b))
    }

    fn trace_slow(&self, x: FieldElement) -> u8 {
        let mut acc = x;
        let mut y = x;
        for _ in 1..self.n {
            y = y.square();
            acc += y;
        }
        debug_assert!(acc.bits <= 1);
        acc.bits as u8
    }

    /// Absolute trace `Σ x^(2^i)`, an F_2-linear form.
    #[inline]
    pub fn trace(&self, x: FieldElement) -> u8 {
        ((x.bits & self.trace_mask).count_ones() & 1) as u8
    }

    pub fn trace_mask(&self) -> u64 {
        self.trace_mask
    }

    /// Root of `w^2 + w = c` via the half-trace (odd `n`) or a linear solve
    /// of the F_2-linear map `w ↦ w^2 + w` (any `n`). The returned root has
    /// a zero constant coefficient; the other root is `w + 1`.
    pub fn solve_artin_schreier(&self, c: FieldElement) -> Result<FieldElement> {
        if self.trace(c) == 1 {
            return Err(Error::NoSolution);
        }
        let w = if self.n % 2 == 1 {
            self.half_trace(c)?
        } else {
            self.artin_schreier_linear(c)?
        };
        debug_assert_eq!(w.square() + w, c);
        Ok(if w.bits & 1 == 1 { w + self.one() } else { w })
    }

    /// `Σ_{i=0}^{(n-1)/2} c^(4^i)` for odd `n`.
    pub fn half_trace(&self, c: FieldElement) -> Result<FieldElement> {
        if self.n % 2 == 0 {
            return self.artin_schreier_linear(c);
        }
        if self.trace(c) == 1 {
            return Err(Error::NoSolution);
        }
        let mut acc = c;
        let mut y = c;
        for _ in 0..(self.n - 1) / 2 {
            y = y.square().square();
            acc += y;
        }
        Ok(acc)
    }

    fn artin_schreier_linear(&self, c: FieldElement) -> Result<FieldElement> {
        // Columns L(α^i) of the map L(w) = w^2 + w; solve L(w) = c.
        let n = self.n as usize;
        let cols: Vec<u64> = (0..n)
            .map(|i| {
                let e = self.elem(1 << i);
                (e.square() + e).bits
            })
            .collect();
        // Row j of the augmented system: bits of coefficient j over the
        // unknowns, plus the rhs in bit n.
        let mut rows: Vec<u64> = (0..n)
            .map(|j| {
                let mut r = 0u64;
                for (i, col) in cols.iter().enumerate() {
                    r |= ((col >> j) & 1) << i;
                }
                r | (((c.bits >> j) & 1) << n)
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..n).find(|&r| rows[r] >> col & 1 == 1) else {
                continue;
            };
            rows.swap(row, p);
            for r in 0..n {
                if r != row && rows[r] >> col & 1 == 1 {
                    rows[r] ^= rows[row];
                }
            }
            pivots.push(col);
            row += 1;
        }
        if rows[row..].iter().any(|r| r >> n & 1 == 1) {
            return Err(Error::NoSolution);
        }
        let mut w = 0u64;
        for (r, &col) in pivots.iter().enumerate() {
            w |= ((rows[r] >> n) & 1) << col;
        }
        Ok(self.elem(w))
    }

    /// δ: least element (by mask) of trace 1; defines `β^2 + β = δ`.
    pub fn ext_delta(&self) -> FieldElement {
        self.elem(self.delta)
    }

    /// Embed into the quadratic extension.
    pub fn ext(&self, a: FieldElement) -> QuadExtElement {
        QuadExtElement::new(a, self.zero(), self.ext_delta())
    }

    /// The generator β of `F_{2^{2n}}` over `F_{2^n}`.
    pub fn ext_beta(&self) -> QuadExtElement {
        QuadExtElement::new(self.zero(), self.one(), self.ext_delta())
    }

    /// Root of `w^2 + w = c` in the quadratic extension; always exists.
    pub fn solve_artin_schreier_ext(&self, c: FieldElement) -> QuadExtElement {
        match self.solve_artin_schreier(c) {
            Ok(w) => self.ext(w),
            Err(_) => {
                // c + δ has trace 0; w0^2 + w0 = c + δ, so (w0 + β) solves it.
                let w0 = self
                    .solve_artin_schreier(c + self.ext_delta())
                    .expect("trace(c + δ) = 0");
                QuadExtElement::new(w0, self.one(), self.ext_delta())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// F_{2^n} elements.

/// Element of `F_2[X]/(f)`; `bits` holds the coefficients of `1, α, …, α^{n-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    bits: u64,
    modulus: u64,
}

impl FieldElement {
    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        gf2x::degree(self.modulus) as u32
    }

    /// Element of the same field with a different mask.
    #[inline]
    pub fn with_bits(&self, bits: u64) -> FieldElement {
        debug_assert!(bits >> self.degree() == 0);
        FieldElement {
            bits,
            modulus: self.modulus,
        }
    }

    #[inline]
    pub fn sqr(&self) -> Self {
        self.square()
    }

    /// Frobenius inverse `x^(2^(n-1))`.
    pub fn sqrt(&self) -> Self {
        let mut y = *self;
        for _ in 1..self.degree() {
            y = y.square();
        }
        y
    }

    /// Coordinate `i` in the polynomial basis.
    #[inline]
    pub fn coord(&self, i: u32) -> u8 {
        ((self.bits >> i) & 1) as u8
    }

    pub fn checked_inv(&self) -> Result<Self> {
        self.inv().ok_or(Error::DivisionByZero)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

impl Add for FieldElement {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FieldElement {
            bits: self.bits ^ rhs.bits,
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + rhs
    }
}

impl Neg for FieldElement {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self
    }
}

impl Mul for FieldElement {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FieldElement {
            bits: gf2x::mulmod(self.bits, rhs.bits, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl AddAssign for FieldElement {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl MulAssign for FieldElement {
    #[inline]
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl Field for FieldElement {
    #[inline]
    fn zero(&self) -> Self {
        self.with_bits(0)
    }
    #[inline]
    fn one(&self) -> Self {
        self.with_bits(1)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Extended Euclid over F_2[X].
    fn inv(&self) -> Option<Self> {
        if self.bits == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus, self.bits);
        let (mut s0, mut s1) = (0u64, 1u64);
        while r1 != 1 {
            let mut q_shift_r = r0;
            let mut s = s0;
            let d1 = gf2x::degree(r1);
            while q_shift_r != 0 && gf2x::degree(q_shift_r) >= d1 {
                let sh = gf2x::degree(q_shift_r) - d1;
                q_shift_r ^= r1 << sh;
                s ^= s1 << sh;
            }
            r0 = r1;
            r1 = q_shift_r;
            s0 = s1;
            s1 = s;
        }
        Some(self.with_bits(gf2x::rem(s1, self.modulus)))
    }

    fn characteristic(&self) -> u64 {
        2
    }

    fn from_int(&self, v: i64) -> Self {
        self.with_bits((v & 1) as u64)
    }

    #[inline]
    fn square(&self) -> Self {
        // Spread bits: squaring is F_2-linear in polynomial basis.
        let mut x = self.bits & 0xffff_ffff;
        x = (x | (x << 16)) & 0x0000_ffff_0000_ffff;
        x = (x | (x << 8)) & 0x00ff_00ff_00ff_00ff;
        x = (x | (x << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
        x = (x | (x << 2)) & 0x3333_3333_3333_3333;
        x = (x | (x << 1)) & 0x5555_5555_5555_5555;
        self.with_bits(gf2x::rem(x, self.modulus))
    }
}

// ---------------------------------------------------------------------------
// Quadratic extension F_{2^n}(β), β^2 + β = δ.

/// `a + βb` with `β^2 + β = δ`, `trace(δ) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadExtElement {
    pub a: FieldElement,
    pub b: FieldElement,
    delta: FieldElement,
}

impl QuadExtElement {
    pub fn new(a: FieldElement, b: FieldElement, delta: FieldElement) -> Self {
        QuadExtElement { a, b, delta }
    }

    /// The non-trivial automorphism over `F_{2^n}`: `β ↦ β + 1`.
    pub fn conj(&self) -> Self {
        QuadExtElement {
            a: self.a + self.b,
            b: self.b,
            delta: self.delta,
        }
    }

    /// Norm `x·φ(x) = a^2 + ab + δb^2` in the base field.
    pub fn norm(&self) -> FieldElement {
        self.a.square() + self.a * self.b + self.delta * self.b.square()
    }

    pub fn is_base(&self) -> bool {
        self.b.is_zero()
    }

    /// Project to the base field if the element lies there.
    pub fn to_base(&self) -> Option<FieldElement> {
        self.is_base().then_some(self.a)
    }

    fn lift(&self, a: FieldElement) -> Self {
        QuadExtElement {
            a,
            b: a.zero(),
            delta: self.delta,
        }
    }
}

impl fmt::Debug for QuadExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + β·{:?})", self.a, self.b)
    }
}

impl Add for QuadExtElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        QuadExtElement {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            delta: self.delta,
        }
    }
}

impl Sub for QuadExtElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + rhs
    }
}

impl Neg for QuadExtElement {
    type Output = Self;
    fn neg(self) -> Self {
        self
    }
}

impl Mul for QuadExtElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // (a + βb)(c + βd) = ac + δbd + β(ad + bc + bd)
        let bd = self.b * rhs.b;
        QuadExtElement {
            a: self.a * rhs.a + self.delta * bd,
            b: self.a * rhs.b + self.b * rhs.a + bd,
            delta: self.delta,
        }
    }
}

impl AddAssign for QuadExtElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for QuadExtElement {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl MulAssign for QuadExtElement {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl Field for QuadExtElement {
    fn zero(&self) -> Self {
        self.lift(self.a.zero())
    }
    fn one(&self) -> Self {
        self.lift(self.a.one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        let n_inv = self.norm().inv()?;
        let c = self.conj();
        Some(QuadExtElement {
            a: c.a * n_inv,
            b: c.b * n_inv,
            delta: self.delta,
        })
    }
    fn characteristic(&self) -> u64 {
        2
    }
    fn from_int(&self, v: i64) -> Self {
        self.lift(self.a.from_int(v))
    }
}

// ---------------------------------------------------------------------------
// Small prime fields.

/// Residue modulo a small prime `p` (`5 <= p < 2^16` for curve use; any
/// prime below `2^32` for arithmetic).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    value: u64,
    p: u64,
}

impl PrimeFieldElement {
    pub fn new(value: i64, p: u64) -> Self {
        PrimeFieldElement {
            value: value.rem_euclid(p as i64) as u64,
            p,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// All residues `0..p`.
    pub fn all(p: u64) -> impl Iterator<Item = PrimeFieldElement> {
        (0..p).map(move |v| PrimeFieldElement { value: v, p })
    }
}

impl fmt::Debug for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl Add for PrimeFieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let mut v = self.value + rhs.value;
        if v >= self.p {
            v -= self.p;
        }
        PrimeFieldElement { value: v, p: self.p }
    }
}

impl Sub for PrimeFieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for PrimeFieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        PrimeFieldElement {
            value: if self.value == 0 { 0 } else { self.p - self.value },
            p: self.p,
        }
    }
}

impl Mul for PrimeFieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        PrimeFieldElement {
            value: (self.value * rhs.value) % self.p,
            p: self.p,
        }
    }
}

impl AddAssign for PrimeFieldElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for PrimeFieldElement {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for PrimeFieldElement {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl Field for PrimeFieldElement {
    fn zero(&self) -> Self {
        PrimeFieldElement { value: 0, p: self.p }
    }
    fn one(&self) -> Self {
        PrimeFieldElement { value: 1, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        Some(self.pow(self.p - 2))
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn from_int(&self, v: i64) -> Self {
        PrimeFieldElement::new(v, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn f16() -> BinaryField {
        BinaryField::new(4, 0b10011).unwrap()
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(BinaryField::new(4, 0b10011).is_ok());
        assert_eq!(
            BinaryField::new(4, 0b10101),
            Err(Error::ReducibleModulus(0b10101))
        );
        assert!(matches!(
            BinaryField::new(4, 0b1011),
            Err(Error::BadModulusDegree { .. })
        ));
    }

    #[test]
    fn default_moduli_are_irreducible() {
        for n in 2..=32 {
            let f = BinaryField::with_default(n).unwrap();
            assert_eq!(gf2x::degree(f.modulus()), n as i32);
        }
        assert_eq!(BinaryField::with_default(4).unwrap().modulus(), 0b10011);
        let f17 = BinaryField::with_default(17).unwrap();
        assert!(gf2x::is_irreducible(f17.modulus()));
    }

    #[test]
    fn small_field_identities() {
        let f = f16();
        let a = f.alpha();
        assert_eq!(a.pow(3) * a, f.elem(0b11));
        assert_eq!(a * a.pow(14), f.one());
        assert_eq!(a.sqrt(), a.pow(8));
        assert_eq!(f.zero().inv(), None);
        assert_eq!(f.zero().checked_inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_matches_exponentiation() {
        let f = BinaryField::with_default(13).unwrap();
        for x in f.elements().skip(1).step_by(37) {
            assert_eq!(x.inv().unwrap(), x.pow(f.order() - 2));
            assert_eq!(x * x.inv().unwrap(), f.one());
        }
    }

    #[test]
    fn field_axioms_random() {
        let f = BinaryField::with_default(17).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let (x, y, z) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
            assert_eq!((x * y) * z, x * (y * z));
            assert_eq!(x * (y + z), x * y + x * z);
            assert_eq!(x * y, y * x);
            assert_eq!((x + y).square(), x.square() + y.square());
            assert_eq!(x.sqrt().square(), x);
            assert_eq!(x.square(), x * x);
        }
    }

    #[test]
    fn trace_is_balanced_and_linear() {
        for n in [4u32, 5, 8, 9] {
            let f = BinaryField::with_default(n).unwrap();
            assert_eq!(f.trace(f.zero()), 0);
            let zeros = f.elements().filter(|&x| f.trace(x) == 0).count();
            assert_eq!(zeros as u64, f.order() / 2);
            for x in f.elements().step_by(3) {
                assert_eq!(f.trace(x), f.trace_slow(x));
                let y = f.elem(0b101);
                assert_eq!(f.trace(x + y), f.trace(x) ^ f.trace(y));
            }
        }
    }

    #[test]
    fn artin_schreier_roots() {
        for n in [5u32, 6, 8, 13, 16] {
            let f = BinaryField::with_default(n).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..200 {
                let c = f.random(&mut rng);
                match f.solve_artin_schreier(c) {
                    Ok(w) => {
                        assert_eq!(f.trace(c), 0);
                        assert_eq!(w.square() + w, c);
                        let w1 = w + f.one();
                        assert_eq!(w1.square() + w1, c);
                    }
                    Err(e) => {
                        assert_eq!(e, Error::NoSolution);
                        assert_eq!(f.trace(c), 1);
                    }
                }
            }
        }
        let f = BinaryField::with_default(7).unwrap();
        assert_eq!(f.half_trace(f.zero()).unwrap(), f.zero());
    }

    #[test]
    fn quadratic_extension() {
        let f = BinaryField::with_default(6).unwrap();
        let beta = f.ext_beta();
        let delta = f.ext(f.ext_delta());
        assert_eq!(beta * beta + beta, delta);
        assert_eq!(beta.conj(), beta + beta.one());
        let a = f.ext(f.elem(0b1011));
        assert_eq!(a.conj(), a);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let x = QuadExtElement::new(f.random(&mut rng), f.random(&mut rng), f.ext_delta());
            let y = QuadExtElement::new(f.random(&mut rng), f.random(&mut rng), f.ext_delta());
            assert_eq!(x.conj().conj(), x);
            assert_eq!((x * y).conj(), x.conj() * y.conj());
            assert_eq!((x + y).conj(), x.conj() + y.conj());
            assert_eq!(x.conj() == x, x.is_base());
            if !x.is_zero() {
                assert_eq!(x * x.inv().unwrap(), x.one());
            }
            let c = f.random(&mut rng);
            let w = f.solve_artin_schreier_ext(c);
            assert_eq!(w * w + w, f.ext(c));
            assert_eq!(w.is_base(), f.trace(c) == 0);
        }
    }

    #[test]
    fn prime_field_arithmetic() {
        let p = 7;
        for x in PrimeFieldElement::all(p).skip(1) {
            assert!((x * x.inv().unwrap()).is_one());
        }
        let a = PrimeFieldElement::new(-3, p);
        assert_eq!(a.value(), 4);
        assert_eq!((a - a).value(), 0);
        assert_eq!(a.from_int(10).value(), 3);
    }
}
