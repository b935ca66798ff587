//! Random combinations `R = uP + vQ`, their decomposition over the factor
//! base, and relation bookkeeping.
//!
//! A factor-base column is one canonical point per liftable `x ∈ V`; its
//! negative shares the column with coefficient −1. `x = 0` lifts to the
//! order-2 point `H`, which gets its own column.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::Rng;
use rayon::prelude::*;

use crate::curve::{BinaryCurve, Instance, Point};
use crate::descent::{descend, SubspaceV};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, QuadExtElement};
use crate::gbsolver::{xl_solve, SolveOutcome, SolveStatus, SolverConfig, SolverTelemetry};
use crate::linalg::{inv_mod, mul_mod};
use crate::sumpoly::SumPolyCache;

/// Canonical points over `V`.
#[derive(Debug, Clone)]
pub struct FactorBase {
    curve: BinaryCurve,
    v: SubspaceV,
    points: Vec<Point<FieldElement>>,
    index: HashMap<u64, usize>,
    h2: Point<FieldElement>,
}

/// The representative of `{(x, y), (x, y + x)}` with the smaller `y` mask.
pub fn canonical(p: &Point<FieldElement>) -> Point<FieldElement> {
    match *p {
        Point::Affine { x, y } => {
            let other = y + x;
            if other.bits() < y.bits() {
                Point::affine(x, other)
            } else {
                *p
            }
        }
        Point::Infinity => Point::Infinity,
    }
}

impl FactorBase {
    pub fn new(curve: &BinaryCurve, v: &SubspaceV) -> Self {
        let mut points = Vec::new();
        let mut index = HashMap::new();
        for x in v.elements() {
            if x.is_zero() {
                continue;
            }
            if let Ok(lifts) = curve.lift_x(x) {
                index.insert(x.bits(), points.len());
                points.push(canonical(&lifts[0]));
            }
        }
        FactorBase {
            curve: curve.clone(),
            v: v.clone(),
            points,
            index,
            h2: curve.order2_point(),
        }
    }

    pub fn curve(&self) -> &BinaryCurve {
        &self.curve
    }

    pub fn subspace(&self) -> &SubspaceV {
        &self.v
    }

    pub fn points(&self) -> &[Point<FieldElement>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Columns of the relation matrix: factor-base points plus `H`.
    pub fn width(&self) -> usize {
        self.points.len() + 1
    }

    pub fn h2(&self) -> Point<FieldElement> {
        self.h2
    }

    pub fn index_of(&self, x: FieldElement) -> Option<usize> {
        self.index.get(&x.bits()).copied()
    }

    /// Column and sign of a rational point with `x ∈ V \ {0}`.
    pub fn signed_index(&self, p: &Point<FieldElement>) -> Option<(usize, i64)> {
        let x = p.x()?;
        let i = self.index_of(x)?;
        Some((i, if self.points[i] == *p { 1 } else { -1 }))
    }
}

/// `Σ coeffs·F_i + h2·H + uP + vQ = ∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub coeffs: Vec<(usize, i64)>,
    pub h2: u8,
    pub u: u64,
    pub v: u64,
    pub t: usize,
    pub xs: Vec<FieldElement>,
}

impl Relation {
    /// Exact check of the point identity.
    pub fn verify(&self, inst: &Instance, fb: &FactorBase) -> bool {
        let w = inst.curve.weierstrass();
        let mut acc = w.add(&w.mul(self.u, &inst.p), &w.mul(self.v, &inst.q));
        for &(i, c) in &self.coeffs {
            acc = w.add(&acc, &w.mul_signed(c, &fb.points[i]));
        }
        if self.h2 == 1 {
            acc = w.add(&acc, &fb.h2);
        }
        acc.is_infinity()
    }

    /// `u v t x-list h2 coeffs`, all hex: `0x1f 0x2 3 0x3,0x5,0x0 1 0x2:+1,0x7:-1`.
    pub fn to_line(&self) -> String {
        let xs: Vec<String> = self.xs.iter().map(|x| format!("{:#x}", x.bits())).collect();
        let cs: Vec<String> = self.coeffs.iter().map(|(i, c)| format!("{i:#x}:{c:+}")).collect();
        format!(
            "{:#x} {:#x} {} {} {} {}",
            self.u,
            self.v,
            self.t,
            if xs.is_empty() { "-".into() } else { xs.join(",") },
            self.h2,
            if cs.is_empty() { "-".into() } else { cs.join(",") }
        )
    }

    pub fn from_line(line: &str, fb: &FactorBase) -> Result<Relation> {
        let bad = |m: &str| Error::Parse(format!("relation line `{line}`: {m}"));
        let hex = |s: &str| {
            u64::from_str_radix(s.trim_start_matches("0x"), 16).map_err(|_| bad("bad hex"))
        };
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 6 {
            return Err(bad("expected 6 fields"));
        }
        let field = fb.curve.field();
        let xs = if parts[3] == "-" {
            Vec::new()
        } else {
            parts[3]
                .split(',')
                .map(|s| hex(s).map(|b| field.elem(b)))
                .collect::<Result<Vec<_>>>()?
        };
        let coeffs = if parts[5] == "-" {
            Vec::new()
        } else {
            parts[5]
                .split(',')
                .map(|s| {
                    let (i, c) = s.split_once(':').ok_or_else(|| bad("bad coefficient"))?;
                    let c: i64 = c.parse().map_err(|_| bad("bad coefficient"))?;
                    Ok((hex(i)? as usize, c))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Relation {
            u: hex(parts[0])?,
            v: hex(parts[1])?,
            t: parts[2].parse().map_err(|_| bad("bad t"))?,
            xs,
            h2: parts[4].parse().map_err(|_| bad("bad h2"))?,
            coeffs,
        })
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_line())
    }
}

/// A random combination of `P` and `Q`.
#[derive(Debug, Clone, Copy)]
pub struct RandomCombination {
    pub u: u64,
    pub v: u64,
    pub r: Point<FieldElement>,
}

pub fn random_r<R: Rng + ?Sized>(inst: &Instance, rng: &mut R) -> RandomCombination {
    let u = rng.gen_range(0..inst.r);
    let v = rng.gen_range(0..inst.r);
    let w = inst.curve.weierstrass();
    let r = w.add(&w.mul(u, &inst.p), &w.mul(v, &inst.q));
    RandomCombination { u, v, r }
}

/// `uP + vQ = ∞` gives `z ≡ −u·v⁻¹ (mod r)` when `v` is invertible.
pub fn direct_solve(inst: &Instance, c: &RandomCombination) -> Option<u64> {
    if !c.r.is_infinity() || c.v % inst.r == 0 {
        return None;
    }
    let vinv = inv_mod(c.v, inst.r)?;
    Some((inst.r - mul_mod(c.u % inst.r, vinv, inst.r)) % inst.r)
}

/// The relation for `R_X ∈ V`: `R = ±F` (or `H`), so `F ∓ ... + uP + vQ = ∞`.
pub fn t1_relation(inst: &Instance, fb: &FactorBase, c: &RandomCombination) -> Option<Relation> {
    let x = c.r.x()?;
    let w = inst.curve.weierstrass();
    let neg = w.neg(&c.r);
    let (coeffs, h2) = if x.is_zero() {
        (Vec::new(), 1)
    } else {
        let (i, s) = fb.signed_index(&neg)?;
        (vec![(i, s)], 0)
    };
    let rel = Relation {
        coeffs,
        h2,
        u: c.u,
        v: c.v,
        t: 1,
        xs: vec![x],
    };
    rel.verify(inst, fb).then_some(rel)
}

/// Result of solving the decomposition system for one `R`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub relations: Vec<Relation>,
    pub solutions: usize,
    pub telemetry: SolverTelemetry,
    /// How many lifted decompositions had non-rational lifts (`s >= 2`).
    pub conjugate_cases: usize,
}

/// Lifts with `Σ (x_i, y_i) + R = ∞` over `F_{q^2}`, searched over all
/// `2^t` sign patterns.
pub fn find_lifts(
    curve: &BinaryCurve,
    xs: &[FieldElement],
    r: &Point<FieldElement>,
) -> Option<Vec<Point<QuadExtElement>>> {
    let we = curve.weierstrass_ext();
    let lifts: Vec<Vec<Point<QuadExtElement>>> = xs.iter().map(|&x| curve.lift_x_ext(x)).collect();
    let target = we.neg(&curve.embed(r));
    let mut chosen = Vec::with_capacity(xs.len());
    fn dfs(
        we: &crate::curve::Weierstrass<QuadExtElement>,
        lifts: &[Vec<Point<QuadExtElement>>],
        i: usize,
        acc: Point<QuadExtElement>,
        target: &Point<QuadExtElement>,
        chosen: &mut Vec<Point<QuadExtElement>>,
    ) -> bool {
        if i == lifts.len() {
            return acc == *target;
        }
        for p in &lifts[i] {
            chosen.push(*p);
            if dfs(we, lifts, i + 1, we.add(&acc, p), target, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    dfs(&we, &lifts, 0, Point::Infinity, &target, &mut chosen).then_some(chosen)
}

/// Lifted points split into rational ones and the sum of the rest.
#[derive(Debug, Clone)]
pub struct LiftSplit {
    pub rational: Vec<Point<FieldElement>>,
    pub nonrational: usize,
    /// Sum of the non-rational lifts, restricted to `E(F_q)`.
    pub nonrational_sum: Option<Point<FieldElement>>,
}

pub fn classify_lifts(curve: &BinaryCurve, lifts: &[Point<QuadExtElement>]) -> LiftSplit {
    let we = curve.weierstrass_ext();
    let mut rational = Vec::new();
    let mut acc = Point::Infinity;
    let mut s = 0;
    for p in lifts {
        match curve.restrict(p) {
            Some(rp) => rational.push(rp),
            None => {
                s += 1;
                acc = we.add(&acc, p);
            }
        }
    }
    LiftSplit {
        rational,
        nonrational: s,
        nonrational_sum: curve.restrict(&acc),
    }
}

/// Turn lifted points into a verified relation.
///
/// The non-rational part is fixed by Frobenius, which negates each of its
/// points, so it is a rational point of order dividing 2: `H`, or `O` when
/// the conjugate points cancel in pairs.
fn relation_from_lifts(
    inst: &Instance,
    fb: &FactorBase,
    c: &RandomCombination,
    xs: &[FieldElement],
    lifts: &[Point<QuadExtElement>],
) -> Result<(Relation, usize)> {
    let split = classify_lifts(&inst.curve, lifts);
    let mut coeffs: BTreeMap<usize, i64> = BTreeMap::new();
    let mut h2 = 0u8;
    for rp in &split.rational {
        if rp.x().is_some_and(|x| x.is_zero()) {
            h2 ^= 1;
        } else {
            let (i, sign) = fb.signed_index(rp).ok_or(Error::LiftMismatch)?;
            *coeffs.entry(i).or_insert(0) += sign;
        }
    }
    if split.nonrational > 0 {
        assert_ne!(split.nonrational, 1, "a single non-rational lift cannot complete a rational sum");
        match split.nonrational_sum {
            Some(Point::Infinity) => {}
            Some(p) if p == fb.h2 => h2 ^= 1,
            other => panic!("non-rational subsum {other:?} is not 2-torsion"),
        }
    }
    let rel = Relation {
        coeffs: coeffs.into_iter().filter(|&(_, c)| c != 0).collect(),
        h2,
        u: c.u,
        v: c.v,
        t: xs.len(),
        xs: xs.to_vec(),
    };
    if !rel.verify(inst, fb) {
        return Err(Error::LiftMismatch);
    }
    Ok((rel, split.nonrational))
}

/// Solve the chain for `R` with `t` points and convert every Boolean
/// solution to a verified relation.
pub fn try_decompose(
    inst: &Instance,
    fb: &FactorBase,
    c: &RandomCombination,
    t: usize,
    cfg: &SolverConfig,
) -> Result<Decomposition> {
    let r_x = c.r.x().ok_or(Error::NoDecomposition)?;
    let v = fb.subspace();
    if v.contains(r_x) {
        return Err(Error::BadArity("R_X lies in V; use the t = 1 relation".into()));
    }
    let sys = descend(r_x, inst.curve.b(), t, v)?;
    let out: SolveOutcome = xl_solve(&sys, cfg)?;
    match out.status {
        SolveStatus::Inconsistent => return Err(Error::NoDecomposition),
        SolveStatus::DegreeCapExceeded => {
            return Err(Error::ResourceLimit("solver undecided within budget".into()))
        }
        SolveStatus::Solutions(_) => {}
    }
    let mut relations: Vec<Relation> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut conjugate_cases = 0;
    for &a in out.solutions() {
        let xs = sys.x_values(v, a);
        let mut key: Vec<u64> = xs.iter().map(|x| x.bits()).collect();
        key.sort_unstable();
        if !seen.insert(key) {
            continue;
        }
        let lifts = find_lifts(&inst.curve, &xs, &c.r).ok_or(Error::LiftMismatch)?;
        let (rel, s) = relation_from_lifts(inst, fb, c, &xs, &lifts)?;
        if s > 0 {
            conjugate_cases += 1;
        }
        if !relations.iter().any(|r| r.coeffs == rel.coeffs && r.h2 == rel.h2) {
            relations.push(rel);
        }
    }
    Ok(Decomposition {
        relations,
        solutions: out.solutions().len(),
        telemetry: out.telemetry,
        conjugate_cases,
    })
}

/// Number of multisets of size `t` from a set of size `s`.
pub fn multiset_count(s: u64, t: u64) -> u64 {
    let mut acc: u128 = 1;
    for i in 0..t {
        acc = acc * (s + i) as u128 / (i + 1) as u128;
    }
    acc.min(u64::MAX as u128) as u64
}

pub const ORACLE_MAX_TUPLES: u64 = 1 << 20;

/// All multisets `{x_1..x_t} ⊆ V` (as sorted coordinate vectors) with
/// `S_{t+1}(x_1, …, x_t, R_X) = 0`, by exhaustive evaluation.
pub fn oracle_decompose(
    cache: &SumPolyCache<FieldElement>,
    r_x: FieldElement,
    t: usize,
    v: &SubspaceV,
) -> Result<Vec<Vec<u64>>> {
    let count = multiset_count(v.size(), t as u64);
    if count > ORACLE_MAX_TUPLES {
        return Err(Error::TooLarge(format!("{count} multisets")));
    }
    let s = cache.get(t + 1)?;
    let reduced = s.substitute(t, r_x);
    let elems: Vec<FieldElement> = v.elements().collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; t];
    let mut point = vec![r_x; t + 1];
    loop {
        for (j, &i) in idx.iter().enumerate() {
            point[j] = elems[i];
        }
        if reduced.eval(&point).is_zero() {
            out.push(idx.iter().map(|&i| i as u64).collect());
        }
        // Next nondecreasing index tuple.
        let mut j = t;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            if idx[j] + 1 < elems.len() {
                let nv = idx[j] + 1;
                for slot in idx.iter_mut().skip(j) {
                    *slot = nv;
                }
                break;
            }
        }
    }
}

/// Sorted coordinate multisets of the x-parts of solver solutions.
pub fn solver_multisets(sys: &crate::descent::BoolSystem, solutions: &[u64]) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = solutions
        .iter()
        .map(|&a| {
            let mut c = sys.x_coords(a);
            c.sort_unstable();
            c
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    /// Solve only `t = m`.
    TmOnly,
    /// Try `t = 2, 3, …, m` and stop at the first satisfiable system.
    Escalate,
}

impl std::str::FromStr for Schedule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tm" | "t=m" | "m" => Ok(Schedule::TmOnly),
            "escalate" => Ok(Schedule::Escalate),
            _ => Err(Error::Parse(format!("unknown schedule `{s}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CollectConfig {
    pub m: usize,
    pub target: usize,
    pub schedule: Schedule,
    pub solver: SolverConfig,
    pub seed: u64,
    pub max_trials: u64,
    /// Trials evaluated per parallel batch.
    pub batch: usize,
}

impl CollectConfig {
    pub fn new(m: usize, target: usize, seed: u64) -> Self {
        CollectConfig {
            m,
            target,
            schedule: Schedule::TmOnly,
            solver: SolverConfig::default(),
            seed,
            max_trials: 100_000,
            batch: 16,
        }
    }
}

/// What one trial produced.
#[derive(Debug, Clone)]
pub enum TrialResult {
    /// `R = ∞` with invertible `v`.
    Direct(u64),
    /// `R = ∞` and `v ≡ 0`: nothing learned.
    Degenerate,
    Relations { t: usize, relations: Vec<Relation>, d_max: u32 },
    Failed { d_max: u32 },
}

fn run_trial(inst: &Instance, fb: &FactorBase, cfg: &CollectConfig, index: u64) -> Result<TrialResult> {
    let mut rng = crate::rng_for_task(cfg.seed, index);
    let c = random_r(inst, &mut rng);
    if c.r.is_infinity() {
        return Ok(match direct_solve(inst, &c) {
            Some(z) => TrialResult::Direct(z),
            None => TrialResult::Degenerate,
        });
    }
    if fb.subspace().contains(c.r.x().unwrap()) {
        return Ok(match t1_relation(inst, fb, &c) {
            Some(rel) => TrialResult::Relations {
                t: 1,
                relations: vec![rel],
                d_max: 0,
            },
            None => TrialResult::Failed { d_max: 0 },
        });
    }
    let ts: Vec<usize> = match cfg.schedule {
        Schedule::TmOnly => vec![cfg.m],
        Schedule::Escalate => (2..=cfg.m).collect(),
    };
    let mut d_max = 0;
    for t in ts {
        match try_decompose(inst, fb, &c, t, &cfg.solver) {
            Ok(d) => {
                d_max = d_max.max(d.telemetry.d_max);
                if !d.relations.is_empty() {
                    return Ok(TrialResult::Relations {
                        t,
                        relations: d.relations,
                        d_max,
                    });
                }
            }
            Err(Error::NoDecomposition) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(TrialResult::Failed { d_max })
}

#[derive(Debug, Clone, Default)]
pub struct CollectReport {
    pub relations: Vec<Relation>,
    pub trials: u64,
    pub successes: u64,
    /// `(t, successful trials)` for each `t` that produced relations.
    pub successes_by_t: BTreeMap<usize, u64>,
    pub direct: Option<u64>,
    pub d_max: u32,
}

/// Run trials until `target` verified relations are gathered (or a trial
/// hits `R = ∞` with invertible `v`, which solves the instance outright).
/// Trials use per-index seeds, so the result does not depend on the number
/// of worker threads.
pub fn collect(inst: &Instance, fb: &FactorBase, cfg: &CollectConfig) -> Result<CollectReport> {
    let mut rep = CollectReport::default();
    let mut next = 0u64;
    while rep.relations.len() < cfg.target {
        if next >= cfg.max_trials {
            return Err(Error::BudgetExhausted {
                trials: next,
                found: rep.relations.len(),
            });
        }
        let end = (next + cfg.batch as u64).min(cfg.max_trials);
        let results: Vec<Result<TrialResult>> = (next..end)
            .into_par_iter()
            .map(|i| run_trial(inst, fb, cfg, i))
            .collect();
        for (off, res) in results.into_iter().enumerate() {
            rep.trials = next + off as u64 + 1;
            match res? {
                TrialResult::Direct(z) => {
                    rep.direct = Some(z);
                    return Ok(rep);
                }
                TrialResult::Degenerate => {}
                TrialResult::Relations { t, relations, d_max } => {
                    rep.successes += 1;
                    *rep.successes_by_t.entry(t).or_insert(0) += 1;
                    rep.d_max = rep.d_max.max(d_max);
                    for r in relations {
                        assert!(r.verify(inst, fb), "unverified relation");
                        rep.relations.push(r);
                    }
                }
                TrialResult::Failed { d_max } => rep.d_max = rep.d_max.max(d_max),
            }
            if rep.relations.len() >= cfg.target {
                return Ok(rep);
            }
        }
        next = end;
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{make_instance, BMode, InstanceSpec};
    use crate::rng_from_seed;

    fn setup(n: u32, k: u32, seed: u64) -> (Instance, FactorBase) {
        let inst = make_instance(InstanceSpec::new(n, BMode::Random, seed)).unwrap();
        let v = SubspaceV::low_degree(inst.curve.field(), k).unwrap();
        let fb = FactorBase::new(&inst.curve, &v);
        (inst, fb)
    }

    #[test]
    fn factor_base_is_canonical() {
        let (inst, fb) = setup(11, 4, 1);
        let w = inst.curve.weierstrass();
        for p in fb.points() {
            assert!(w.contains(p));
            assert_eq!(canonical(&w.neg(p)), *p);
            assert_eq!(fb.signed_index(&w.neg(p)).unwrap().1, -1);
        }
        assert!(fb.len() <= 15);
        assert_eq!(w.double(&fb.h2()), Point::Infinity);
    }

    #[test]
    fn planted_decomposition_is_recovered() {
        let (inst, fb) = setup(11, 4, 2);
        let w = inst.curve.weierstrass();
        let mut rng = rng_from_seed(8);
        let mut recovered = 0;
        for _ in 0..20 {
            // R = −(F_a + F_b + F_c) written as uP + vQ needs a log; instead
            // plant through the curve directly and use u = v = 0 bookkeeping
            // only for the solver comparison.
            let pick: Vec<_> = (0..3).map(|_| fb.points()[rng.gen_range(0..fb.len())]).collect();
            let sum = pick.iter().fold(Point::Infinity, |a, p| w.add(&a, p));
            let r = w.neg(&sum);
            let Some(rx) = r.x() else { continue };
            if fb.subspace().contains(rx) {
                continue;
            }
            let sys = descend(rx, inst.curve.b(), 3, fb.subspace()).unwrap();
            let out = xl_solve(&sys, &SolverConfig::default()).unwrap();
            let ms = solver_multisets(&sys, out.solutions());
            let mut want: Vec<u64> = pick
                .iter()
                .map(|p| fb.subspace().coords(p.x().unwrap()).unwrap())
                .collect();
            want.sort_unstable();
            // Eq. 4 loses decompositions whose partial sums hit infinity.
            let w01 = w.add(&pick[0], &pick[1]);
            let w02 = w.add(&pick[0], &pick[2]);
            let w12 = w.add(&pick[1], &pick[2]);
            if w01.is_infinity() || w02.is_infinity() || w12.is_infinity() {
                continue;
            }
            assert!(ms.contains(&want), "planted {want:?} not among {ms:?}");
            recovered += 1;
        }
        assert!(recovered >= 10);
    }

    #[test]
    fn relations_verify_and_round_trip() {
        let (inst, fb) = setup(11, 4, 3);
        let mut cfg = CollectConfig::new(3, 8, 17);
        cfg.max_trials = 500;
        let rep = collect(&inst, &fb, &cfg).unwrap();
        assert!(rep.direct.is_some() || rep.relations.len() >= 8);
        for r in &rep.relations {
            assert!(r.verify(&inst, &fb));
            let parsed = Relation::from_line(&r.to_line(), &fb).unwrap();
            assert_eq!(&parsed, r);
        }
    }

    #[test]
    fn solver_solutions_satisfy_summation_polynomial() {
        let (inst, fb) = setup(11, 4, 4);
        let cache = SumPolyCache::new(inst.curve.weierstrass());
        let s4 = cache.get(4).unwrap();
        let mut rng = rng_from_seed(9);
        let mut seen = 0;
        while seen < 5 {
            let c = random_r(&inst, &mut rng);
            let Some(rx) = c.r.x() else { continue };
            if fb.subspace().contains(rx) {
                continue;
            }
            if let Ok(d) = try_decompose(&inst, &fb, &c, 3, &SolverConfig::default()) {
                for r in &d.relations {
                    let mut pt = r.xs.clone();
                    pt.push(rx);
                    assert!(s4.eval(&pt).is_zero());
                }
                seen += 1;
            }
        }
    }

    #[test]
    fn planted_direct_solve() {
        let (inst, _) = setup(11, 4, 5);
        let z = inst.z_true.unwrap();
        let v = 7 % inst.r;
        let u = (inst.r - (z * v) % inst.r) % inst.r;
        let w = inst.curve.weierstrass();
        let r = w.add(&w.mul(u, &inst.p), &w.mul(v, &inst.q));
        let c = RandomCombination { u, v, r };
        assert!(r.is_infinity());
        assert_eq!(direct_solve(&inst, &c), Some(z));
        let zero = RandomCombination {
            u: 0,
            v: 0,
            r: Point::Infinity,
        };
        assert_eq!(direct_solve(&inst, &zero), None);
    }

    #[test]
    fn multiset_counts() {
        assert_eq!(multiset_count(16, 4), 3876);
        assert_eq!(multiset_count(8, 5), 792);
        assert_eq!(multiset_count(4, 1), 4);
    }
}
