//! The decomposition chain over `F_{2^n}` and its Weil descent to Boolean
//! polynomials in algebraic normal form.
//!
//! Variables are numbered x-block first (`t·k` bits, named `b<i>`), then the
//! u-block (`(t−2)·n` bits, named `c<i>`). Monomials are `u64` masks, so a
//! system has at most 64 variables.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::field::{BinaryField, Field, FieldElement};

// ---------------------------------------------------------------------------
// The subspace V.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VMode {
    /// Polynomials in α of degree < k.
    LowDegree,
    /// A random k-dimensional F_2-subspace.
    Random,
}

impl std::str::FromStr for VMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "low" | "low-degree" => Ok(VMode::LowDegree),
            "random" => Ok(VMode::Random),
            _ => Err(Error::Parse(format!("unknown V mode `{s}`"))),
        }
    }
}

/// A k-dimensional F_2-subspace of `F_{2^n}` with a fixed basis.
#[derive(Debug, Clone)]
pub struct SubspaceV {
    field: BinaryField,
    k: u32,
    basis: Vec<FieldElement>,
    mode: VMode,
    // Row-echelon copy of the basis: (pivot bit, vector, combination of
    // original basis vectors).
    echelon: Vec<(u32, u64, u64)>,
}

impl SubspaceV {
    pub fn low_degree(field: &BinaryField, k: u32) -> Result<Self> {
        Self::check_k(field, k)?;
        let basis = (0..k).map(|j| field.elem(1 << j)).collect();
        Ok(Self::from_basis(field, basis, VMode::LowDegree))
    }

    pub fn random<R: Rng + ?Sized>(field: &BinaryField, k: u32, rng: &mut R) -> Result<Self> {
        Self::check_k(field, k)?;
        let mut basis: Vec<FieldElement> = Vec::new();
        let mut span = Self::from_basis(field, Vec::new(), VMode::Random);
        while basis.len() < k as usize {
            let cand = field.random(rng);
            if !cand.is_zero() && span.coords(cand).is_none() {
                basis.push(cand);
                span = Self::from_basis(field, basis.clone(), VMode::Random);
            }
        }
        Ok(span)
    }

    pub fn new(field: &BinaryField, k: u32, mode: VMode, rng: &mut impl Rng) -> Result<Self> {
        match mode {
            VMode::LowDegree => Self::low_degree(field, k),
            VMode::Random => Self::random(field, k, rng),
        }
    }

    fn check_k(field: &BinaryField, k: u32) -> Result<()> {
        if k == 0 || k > field.degree() {
            return Err(Error::BadArity(format!(
                "subspace dimension {k} outside 1..={}",
                field.degree()
            )));
        }
        Ok(())
    }

    fn from_basis(field: &BinaryField, basis: Vec<FieldElement>, mode: VMode) -> Self {
        let mut echelon: Vec<(u32, u64, u64)> = Vec::new();
        for (j, b) in basis.iter().enumerate() {
            let (mut v, mut c) = (b.bits(), 1u64 << j);
            for &(p, ev, ec) in &echelon {
                if v >> p & 1 == 1 {
                    v ^= ev;
                    c ^= ec;
                }
            }
            assert!(v != 0, "basis vectors must be independent");
            let p = 63 - v.leading_zeros();
            for e in echelon.iter_mut() {
                if e.1 >> p & 1 == 1 {
                    e.1 ^= v;
                    e.2 ^= c;
                }
            }
            echelon.push((p, v, c));
        }
        SubspaceV {
            field: field.clone(),
            k: basis.len() as u32,
            basis,
            mode,
            echelon,
        }
    }

    pub fn field(&self) -> &BinaryField {
        &self.field
    }

    pub fn dim(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u64 {
        1 << self.k
    }

    pub fn mode(&self) -> VMode {
        self.mode
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    /// `Σ_j bit_j(coords)·basis_j`.
    pub fn element(&self, coords: u64) -> FieldElement {
        let mut acc = 0u64;
        for (j, b) in self.basis.iter().enumerate() {
            if coords >> j & 1 == 1 {
                acc ^= b.bits();
            }
        }
        self.field.elem(acc)
    }

    /// Coordinates of `x` in the basis, or `None` if `x ∉ V`.
    pub fn coords(&self, x: FieldElement) -> Option<u64> {
        let (mut v, mut c) = (x.bits(), 0u64);
        for &(p, ev, ec) in &self.echelon {
            if v >> p & 1 == 1 {
                v ^= ev;
                c ^= ec;
            }
        }
        (v == 0).then_some(c)
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        self.coords(x).is_some()
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size()).map(move |c| self.element(c))
    }
}

// ---------------------------------------------------------------------------
// Boolean polynomials.

/// Graded order on squarefree monomials: degree first, then the mask as an
/// integer.
#[inline]
pub fn graded_cmp(a: u64, b: u64) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then(a.cmp(&b))
}

/// Sort descending in the graded order and cancel pairs.
pub fn normalize_monomials(mut ms: Vec<u64>) -> Vec<u64> {
    ms.sort_unstable_by(|a, b| graded_cmp(*b, *a));
    let mut out = Vec::with_capacity(ms.len());
    let mut i = 0;
    while i < ms.len() {
        let mut j = i + 1;
        while j < ms.len() && ms[j] == ms[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(ms[i]);
        }
        i = j;
    }
    out
}

/// A Boolean polynomial in ANF: a set of squarefree monomials stored in
/// descending graded order. The empty mask is the constant 1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BoolPoly {
    monomials: Vec<u64>,
}

impl BoolPoly {
    pub fn zero() -> Self {
        BoolPoly::default()
    }

    pub fn one() -> Self {
        BoolPoly { monomials: vec![0] }
    }

    pub fn var(i: u32) -> Self {
        BoolPoly {
            monomials: vec![1u64 << i],
        }
    }

    pub fn from_monomials(ms: Vec<u64>) -> Self {
        BoolPoly {
            monomials: normalize_monomials(ms),
        }
    }

    /// Take monomials already sorted and free of duplicates.
    pub fn from_sorted(ms: Vec<u64>) -> Self {
        debug_assert!(ms.windows(2).all(|w| graded_cmp(w[0], w[1]) == Ordering::Greater));
        BoolPoly { monomials: ms }
    }

    pub fn monomials(&self) -> &[u64] {
        &self.monomials
    }

    pub fn into_monomials(self) -> Vec<u64> {
        self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.monomials == [0]
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.monomials.first().map(|m| m.count_ones())
    }

    pub fn leading(&self) -> Option<u64> {
        self.monomials.first().copied()
    }

    pub fn variables(&self) -> u64 {
        self.monomials.iter().fold(0, |a, m| a | m)
    }

    pub fn add(&self, other: &BoolPoly) -> BoolPoly {
        let (a, b) = (&self.monomials, &other.monomials);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match graded_cmp(a[i], b[j]) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        BoolPoly { monomials: out }
    }

    pub fn mul(&self, other: &BoolPoly) -> BoolPoly {
        let mut ms = Vec::with_capacity(self.len() * other.len());
        for &a in &self.monomials {
            for &b in &other.monomials {
                ms.push(a | b);
            }
        }
        BoolPoly::from_monomials(ms)
    }

    pub fn mul_monomial(&self, m: u64) -> BoolPoly {
        BoolPoly::from_monomials(self.monomials.iter().map(|&a| a | m).collect())
    }

    /// Value at an assignment given as a bit mask.
    #[inline]
    pub fn eval(&self, assignment: u64) -> bool {
        self.monomials
            .iter()
            .fold(false, |acc, &m| acc ^ (m & !assignment == 0))
    }

    /// Substitute `var := expr` where `expr` is an affine form
    /// (`mask` of variables plus a constant bit).
    pub fn substitute(&self, var: u32, mask: u64, constant: bool) -> BoolPoly {
        let bit = 1u64 << var;
        if self.variables() & bit == 0 {
            return self.clone();
        }
        let mut ms = Vec::with_capacity(self.len() * 2);
        let expr_vars: Vec<u64> = (0..64)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| 1u64 << i)
            .collect();
        for &m in &self.monomials {
            if m & bit == 0 {
                ms.push(m);
            } else {
                let rest = m & !bit;
                for &v in &expr_vars {
                    ms.push(rest | v);
                }
                if constant {
                    ms.push(rest);
                }
            }
        }
        BoolPoly::from_monomials(ms)
    }

    /// Display with variable names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayPoly { poly: self, names }
    }
}

impl fmt::Debug for BoolPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..64).map(|i| format!("v{i}")).collect();
        let text = self.display(&names).to_string();
        write!(f, "{text}")
    }
}

struct DisplayPoly<'a> {
    poly: &'a BoolPoly,
    names: &'a [String],
}

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, &m) in self.poly.monomials.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m == 0 {
                write!(f, "1")?;
                continue;
            }
            let mut first = true;
            for i in 0..64 {
                if m >> i & 1 == 1 {
                    if !first {
                        write!(f, "*")?;
                    }
                    write!(f, "{}", self.names[i])?;
                    first = false;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Field-valued polynomials in Boolean variables.

/// `Σ c_m·m` with `c_m ∈ F_{2^n}`, `m` squarefree Boolean monomials.
#[derive(Clone, Debug)]
struct FieldBool {
    field: BinaryField,
    terms: FxHashMap<u64, u64>,
}

impl FieldBool {
    fn constant(field: &BinaryField, c: FieldElement) -> Self {
        let mut terms = FxHashMap::default();
        if !c.is_zero() {
            terms.insert(0, c.bits());
        }
        FieldBool {
            field: field.clone(),
            terms,
        }
    }

    /// `Σ_j b_{first+j}·basis_j`.
    fn linear(field: &BinaryField, first: u32, basis: &[FieldElement]) -> Self {
        let mut terms = FxHashMap::default();
        for (j, b) in basis.iter().enumerate() {
            terms.insert(1u64 << (first + j as u32), b.bits());
        }
        FieldBool {
            field: field.clone(),
            terms,
        }
    }

    fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&m, &c) in &o.terms {
            let e = terms.entry(m).or_insert(0);
            *e ^= c;
            if *e == 0 {
                terms.remove(&m);
            }
        }
        FieldBool {
            field: self.field.clone(),
            terms,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        let mut terms: FxHashMap<u64, u64> = FxHashMap::default();
        for (&ma, &ca) in &self.terms {
            let fa = self.field.elem(ca);
            for (&mb, &cb) in &o.terms {
                let c = fa * self.field.elem(cb);
                *terms.entry(ma | mb).or_insert(0) ^= c.bits();
            }
        }
        terms.retain(|_, c| *c != 0);
        FieldBool {
            field: self.field.clone(),
            terms,
        }
    }

    /// In characteristic 2 with `b^2 = b`: `(Σ c_m m)^2 = Σ c_m^2 m`.
    fn square(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&m, &c)| (m, self.field.elem(c).square().bits()))
            .collect();
        FieldBool {
            field: self.field.clone(),
            terms,
        }
    }

    fn coordinates(&self) -> Vec<BoolPoly> {
        let n = self.field.degree();
        let mut per: Vec<Vec<u64>> = vec![Vec::new(); n as usize];
        for (&m, &c) in &self.terms {
            for (i, slot) in per.iter_mut().enumerate() {
                if c >> i & 1 == 1 {
                    slot.push(m);
                }
            }
        }
        per.into_iter().map(BoolPoly::from_monomials).collect()
    }
}

// ---------------------------------------------------------------------------
// Field-level system.

/// Argument of an `S_3` equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operand {
    /// `x_i ∈ V`, 0-based.
    X(usize),
    /// `u_i ∈ F_{2^n}`, 0-based.
    U(usize),
    Const(FieldElement),
}

/// `S_3(a, b, c) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Equation {
    pub args: [Operand; 3],
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .args
            .iter()
            .map(|a| match a {
                Operand::X(i) => format!("x{}", i + 1),
                Operand::U(i) => format!("u{}", i + 1),
                Operand::Const(c) => format!("{c}"),
            })
            .collect();
        write!(f, "S3({}, {}, {})", s[0], s[1], s[2])
    }
}

/// The field-level decomposition chain for `R_X` with `t` points:
/// `S_3(u_1, x_1, x_2)`, `S_3(u_i, u_{i+1}, x_{i+2})`, `S_3(u_{t−2}, x_t, R_X)`;
/// for `t = 2` the single equation `S_3(x_1, x_2, R_X)`.
pub fn build_system(r_x: FieldElement, t: usize) -> Result<Vec<Equation>> {
    use Operand::*;
    if t < 2 {
        return Err(Error::BadArity(format!("need t >= 2, got {t}")));
    }
    if t == 2 {
        return Ok(vec![Equation {
            args: [X(0), X(1), Const(r_x)],
        }]);
    }
    let mut eqs = vec![Equation {
        args: [U(0), X(0), X(1)],
    }];
    for i in 0..t - 3 {
        eqs.push(Equation {
            args: [U(i), U(i + 1), X(i + 2)],
        });
    }
    eqs.push(Equation {
        args: [U(t - 3), X(t - 1), Const(r_x)],
    });
    Ok(eqs)
}

/// Evaluate a field-level equation under concrete values.
pub fn eval_equation(eq: &Equation, b: FieldElement, xs: &[FieldElement], us: &[FieldElement]) -> FieldElement {
    let val = |o: &Operand| match *o {
        Operand::X(i) => xs[i],
        Operand::U(i) => us[i],
        Operand::Const(c) => c,
    };
    let [a, c, d] = eq.args.map(|o| val(&o));
    s3_value(b, a, c, d)
}

/// `(x1x2 + x1x3 + x2x3)^2 + x1x2x3 + B`.
pub fn s3_value(b: FieldElement, x1: FieldElement, x2: FieldElement, x3: FieldElement) -> FieldElement {
    let e2 = x1 * x2 + x1 * x3 + x2 * x3;
    e2.square() + x1 * x2 * x3 + b
}

/// Where a Boolean polynomial came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Provenance {
    pub equation: usize,
    pub coordinate: u32,
}

/// Weil-descended system.
#[derive(Debug, Clone)]
pub struct BoolSystem {
    pub n: u32,
    pub k: u32,
    pub t: usize,
    pub nvars: u32,
    pub names: Vec<String>,
    pub polys: Vec<BoolPoly>,
    pub provenance: Vec<Provenance>,
    pub equations: Vec<Equation>,
    pub b: FieldElement,
}

impl BoolSystem {
    /// Bit index of `x_i`'s j-th coordinate.
    pub fn x_var(&self, i: usize, j: u32) -> u32 {
        i as u32 * self.k + j
    }

    /// Bit index of `u_i`'s j-th coordinate.
    pub fn u_var(&self, i: usize, j: u32) -> u32 {
        self.t as u32 * self.k + i as u32 * self.n + j
    }

    /// Reassemble `x_1..x_t` (coordinates in V) from an assignment.
    pub fn x_coords(&self, assignment: u64) -> Vec<u64> {
        (0..self.t)
            .map(|i| (assignment >> self.x_var(i, 0)) & ((1u64 << self.k) - 1))
            .collect()
    }

    pub fn x_values(&self, v: &SubspaceV, assignment: u64) -> Vec<FieldElement> {
        self.x_coords(assignment).into_iter().map(|c| v.element(c)).collect()
    }

    pub fn u_values(&self, field: &BinaryField, assignment: u64) -> Vec<FieldElement> {
        (0..self.t.saturating_sub(2))
            .map(|i| field.elem((assignment >> self.u_var(i, 0)) & ((1u64 << self.n) - 1)))
            .collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.polys.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    /// One ANF polynomial per line.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for p in &self.polys {
            s.push_str(&p.display(&self.names).to_string());
            s.push('\n');
        }
        s
    }
}

/// Substitute `x_i = Σ b·basis_j` and `u_i = Σ c·α^j`, expand each `S_3`
/// and emit its `n` coordinate polynomials.
pub fn weil_descend(equations: &[Equation], b: FieldElement, v: &SubspaceV) -> Result<BoolSystem> {
    let field = v.field();
    let n = field.degree();
    let k = v.dim();
    let mut t = 0;
    let mut nu = 0;
    for eq in equations {
        for a in eq.args {
            match a {
                Operand::X(i) => t = t.max(i + 1),
                Operand::U(i) => nu = nu.max(i + 1),
                Operand::Const(_) => {}
            }
        }
    }
    let nvars = t as u32 * k + nu as u32 * n;
    if nvars > 64 {
        return Err(Error::TooLarge(format!("{nvars} Boolean variables (limit 64)")));
    }
    let mut names: Vec<String> = (0..t as u32 * k).map(|i| format!("b{i}")).collect();
    names.extend((0..nu as u32 * n).map(|i| format!("c{i}")));
    let alpha_basis: Vec<FieldElement> = (0..n).map(|j| field.elem(1 << j)).collect();

    let operand = |o: Operand| match o {
        Operand::X(i) => FieldBool::linear(field, i as u32 * k, v.basis()),
        Operand::U(i) => FieldBool::linear(field, t as u32 * k + i as u32 * n, &alpha_basis),
        Operand::Const(c) => FieldBool::constant(field, c),
    };

    let mut polys = Vec::new();
    let mut provenance = Vec::new();
    for (e, eq) in equations.iter().enumerate() {
        let [x1, x2, x3] = eq.args.map(operand);
        let s = s3_expand(&x1, &x2, &x3, b);
        for (i, p) in s.coordinates().into_iter().enumerate() {
            polys.push(p);
            provenance.push(Provenance {
                equation: e,
                coordinate: i as u32,
            });
        }
    }
    Ok(BoolSystem {
        n,
        k,
        t,
        nvars,
        names,
        polys,
        provenance,
        equations: equations.to_vec(),
        b,
    })
}

fn s3_expand(x1: &FieldBool, x2: &FieldBool, x3: &FieldBool, b: FieldElement) -> FieldBool {
    let e2 = x1.mul(x2).add(&x1.mul(x3)).add(&x2.mul(x3));
    e2.square()
        .add(&x1.mul(x2).mul(x3))
        .add(&FieldBool::constant(&x1.field, b))
}

/// Coordinates of `mult·S_3(a_1, a_2, a_3)` (or of `S_3` alone), with `X`
/// operands ranging over `v`, `U` operands over all of `F_{2^n}`, both laid
/// out as in [`weil_descend`].
pub fn s3_coordinates(
    args: [Operand; 3],
    mult: Option<Operand>,
    b: FieldElement,
    v: &SubspaceV,
) -> Result<Vec<BoolPoly>> {
    let field = v.field();
    let (n, k) = (field.degree(), v.dim());
    let all: Vec<Operand> = args.iter().copied().chain(mult).collect();
    let t = all.iter().filter_map(|a| if let Operand::X(i) = a { Some(i + 1) } else { None }).max().unwrap_or(0);
    let nu = all.iter().filter_map(|a| if let Operand::U(i) = a { Some(i + 1) } else { None }).max().unwrap_or(0);
    if t as u32 * k + nu as u32 * n > 64 {
        return Err(Error::TooLarge("more than 64 Boolean variables".into()));
    }
    let alpha_basis: Vec<FieldElement> = (0..n).map(|j| field.elem(1 << j)).collect();
    let operand = |o: Operand| match o {
        Operand::X(i) => FieldBool::linear(field, i as u32 * k, v.basis()),
        Operand::U(i) => FieldBool::linear(field, t as u32 * k + i as u32 * n, &alpha_basis),
        Operand::Const(c) => FieldBool::constant(field, c),
    };
    let [x1, x2, x3] = args.map(operand);
    let mut s = s3_expand(&x1, &x2, &x3, b);
    if let Some(m) = mult {
        s = operand(m).mul(&s);
    }
    Ok(s.coordinates())
}

/// `build_system` followed by `weil_descend`.
pub fn descend(r_x: FieldElement, b: FieldElement, t: usize, v: &SubspaceV) -> Result<BoolSystem> {
    let eqs = build_system(r_x, t)?;
    weil_descend(&eqs, b, v)
}
