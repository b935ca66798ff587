//! Degree-bounded linearisation over GF(2).
//!
//! The solver alternates three moves on a set of ANF polynomials:
//!
//! * linear polynomials are eliminated by substitution;
//! * an XL step at degree `D` builds every product `m·f` with
//!   `deg m + deg f <= D`, row-reduces the Macaulay matrix and harvests the
//!   rows whose degree fell below `D`;
//! * when no step up to `d_cap` yields anything new, or the next matrix would
//!   exceed the cell budget, a variable is fixed both ways and each branch is
//!   solved the same way.
//!
//! Step degrees are recorded so the largest degree that produced new
//! polynomials (`d_max`) can be compared with the degree bound under test.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::descent::{graded_cmp, BoolPoly, BoolSystem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub d_cap: u32,
    /// Upper bound on `rows × columns` of one Macaulay matrix, in bits.
    pub max_cells: u64,
    /// Maximum number of branch nodes; `0` disables branching.
    pub split_budget: u64,
    /// Solutions are enumerated over at most this many unconstrained
    /// variables.
    pub max_free_vars: u32,
    /// Keep at most this many per-step records in the telemetry.
    pub max_step_records: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            d_cap: 4,
            max_cells: 1 << 20,
            split_budget: 1 << 20,
            max_free_vars: 20,
            max_step_records: 4096,
        }
    }
}

impl SolverConfig {
    /// Pure XL without guessing: resolves at degree `<= d_cap` or reports
    /// `DegreeCapExceeded`.
    pub fn unbranched(d_cap: u32) -> Self {
        SolverConfig {
            d_cap,
            split_budget: 0,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepRecord {
    pub step: usize,
    pub degree: u32,
    pub rows: usize,
    pub cols: usize,
    pub new: usize,
    pub depth: u32,
}

impl fmt::Display for StepRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step={} degree={} rows={} cols={} new={}",
            self.step, self.degree, self.rows, self.cols, self.new
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolverTelemetry {
    /// First `max_step_records` steps.
    pub steps: Vec<StepRecord>,
    pub total_steps: usize,
    /// Degrees of the steps that produced new polynomials, in order
    /// (truncated like `steps`).
    pub step_degrees: Vec<u32>,
    /// Largest degree of a step that produced new polynomials.
    pub d_max: u32,
    /// Largest degree of any step attempted, productive or not.
    pub d_attempted: u32,
    pub matrix_dims: Vec<(usize, usize)>,
    pub new_poly_counts: Vec<usize>,
    pub branch_nodes: u64,
    pub linear_substitutions: u64,
    /// Largest matrix built, `rows × cols` bits.
    pub peak_cells: u64,
}

impl SolverTelemetry {
    fn record(&mut self, rec: StepRecord, cap: usize) {
        self.total_steps += 1;
        self.d_attempted = self.d_attempted.max(rec.degree);
        self.peak_cells = self.peak_cells.max(rec.rows as u64 * rec.cols as u64);
        if rec.new > 0 {
            self.d_max = self.d_max.max(rec.degree);
        }
        if self.steps.len() < cap {
            self.steps.push(rec);
            self.matrix_dims.push((rec.rows, rec.cols));
            self.new_poly_counts.push(rec.new);
            if rec.new > 0 {
                self.step_degrees.push(rec.degree);
            }
        }
    }

    /// `step=i degree=d rows=r cols=c new=k`, one line per recorded step.
    pub fn lines(&self) -> Vec<String> {
        self.steps.iter().map(|s| s.to_string()).collect()
    }

    /// Rough memory estimate for the largest matrix, in MB.
    pub fn peak_mb(&self) -> f64 {
        self.peak_cells as f64 / 8.0 / (1 << 20) as f64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveStatus {
    /// Satisfying assignments as bit masks, ascending.
    Solutions(Vec<u64>),
    Inconsistent,
    DegreeCapExceeded,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub telemetry: SolverTelemetry,
}

impl SolveOutcome {
    pub fn solutions(&self) -> &[u64] {
        match &self.status {
            SolveStatus::Solutions(s) => s,
            _ => &[],
        }
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self.status, SolveStatus::DegreeCapExceeded)
    }
}

/// Affine substitution `var := parity(mask & a) ^ constant`.
#[derive(Debug, Clone, Copy)]
struct Subst {
    var: u32,
    mask: u64,
    constant: bool,
}

struct Solver<'a> {
    cfg: &'a SolverConfig,
    nvars: u32,
    tel: SolverTelemetry,
    nodes: u64,
    exhausted: bool,
}

enum NodeResult {
    Solutions(Vec<u64>),
    Stuck,
}

pub fn xl_solve(system: &BoolSystem, cfg: &SolverConfig) -> Result<SolveOutcome> {
    solve_polys(&system.polys, system.nvars, cfg)
}

/// Solve an arbitrary list of polynomials in `nvars` variables.
pub fn solve_polys(polys: &[BoolPoly], nvars: u32, cfg: &SolverConfig) -> Result<SolveOutcome> {
    if nvars > 64 {
        return Err(Error::TooLarge(format!("{nvars} variables")));
    }
    let mut s = Solver {
        cfg,
        nvars,
        tel: SolverTelemetry::default(),
        nodes: 0,
        exhausted: false,
    };
    let res = s.node(polys.to_vec(), Vec::new(), 0)?;
    let status = match res {
        NodeResult::Solutions(mut sols) if !s.exhausted => {
            sols.sort_unstable();
            sols.dedup();
            for &a in &sols {
                assert!(
                    polys.iter().all(|p| !p.eval(a)),
                    "solver returned a non-solution {a:#x}"
                );
            }
            if sols.is_empty() {
                SolveStatus::Inconsistent
            } else {
                SolveStatus::Solutions(sols)
            }
        }
        _ => SolveStatus::DegreeCapExceeded,
    };
    s.tel.branch_nodes = s.nodes;
    Ok(SolveOutcome {
        status,
        telemetry: s.tel,
    })
}

impl Solver<'_> {
    fn node(&mut self, mut polys: Vec<BoolPoly>, mut subs: Vec<Subst>, depth: u32) -> Result<NodeResult> {
        'outer: loop {
            if !self.eliminate_linear(&mut polys, &mut subs) {
                return Ok(NodeResult::Solutions(Vec::new()));
            }
            if polys.is_empty() {
                return self.enumerate(&subs).map(NodeResult::Solutions);
            }
            let before = polys.iter().filter_map(|p| p.degree()).max().unwrap();
            polys = interreduce(&polys);
            if polys.iter().any(|p| p.degree().unwrap_or(0) <= 1) {
                continue 'outer;
            }
            let d0 = polys.iter().filter_map(|p| p.degree()).max().unwrap();
            debug_assert!(d0 <= before);
            let active = polys.iter().fold(0u64, |a, p| a | p.variables());
            let top = d0.max(self.cfg.d_cap);
            for d in d0..=top {
                let plan = plan_step(&polys, d, active);
                if plan.cells() > self.cfg.max_cells {
                    if d == d0 && self.cfg.split_budget == 0 {
                        return Err(Error::ResourceLimit(format!(
                            "degree-{d} matrix needs ~{} cells (limit {})",
                            plan.cells(),
                            self.cfg.max_cells
                        )));
                    }
                    break;
                }
                let out = xl_step(&polys, d, active);
                let rec = StepRecord {
                    step: self.tel.total_steps,
                    degree: d,
                    rows: out.rows,
                    cols: out.cols,
                    new: out.falls.len(),
                    depth,
                };
                self.tel.record(rec, self.cfg.max_step_records);
                if !out.falls.is_empty() {
                    polys.extend(out.falls);
                    continue 'outer;
                }
            }
            return self.branch(polys, subs, depth);
        }
    }

    fn branch(&mut self, polys: Vec<BoolPoly>, subs: Vec<Subst>, depth: u32) -> Result<NodeResult> {
        if self.nodes >= self.cfg.split_budget {
            self.exhausted = true;
            return Ok(NodeResult::Stuck);
        }
        self.nodes += 1;
        let var = branch_variable(&polys);
        let mut all = Vec::new();
        for value in [false, true] {
            let child: Vec<BoolPoly> = polys
                .iter()
                .map(|p| p.substitute(var, 0, value))
                .filter(|p| !p.is_zero())
                .collect();
            let mut s = subs.clone();
            s.push(Subst {
                var,
                mask: 0,
                constant: value,
            });
            match self.node(child, s, depth + 1)? {
                NodeResult::Solutions(v) => all.extend(v),
                NodeResult::Stuck => return Ok(NodeResult::Stuck),
            }
        }
        Ok(NodeResult::Solutions(all))
    }

    /// Substitute away all linear polynomials until none remain. Returns
    /// `false` if the constant 1 is derived.
    fn eliminate_linear(&mut self, polys: &mut Vec<BoolPoly>, subs: &mut Vec<Subst>) -> bool {
        loop {
            polys.retain(|p| !p.is_zero());
            if polys.iter().any(|p| p.is_one()) {
                return false;
            }
            let mut lin: Vec<(u64, bool)> = Vec::new();
            polys.retain(|p| {
                if p.degree() == Some(1) {
                    let mut mask = 0;
                    let mut c = false;
                    for &m in p.monomials() {
                        if m == 0 {
                            c = true;
                        } else {
                            mask |= m;
                        }
                    }
                    lin.push((mask, c));
                    false
                } else {
                    true
                }
            });
            if lin.is_empty() {
                return true;
            }
            // Reduced echelon form, pivot = highest variable.
            let mut rows: Vec<(u64, bool)> = Vec::new();
            for (mut m, mut c) in lin {
                for &(rm, rc) in &rows {
                    let piv = 63 - rm.leading_zeros();
                    if m >> piv & 1 == 1 {
                        m ^= rm;
                        c ^= rc;
                    }
                }
                if m == 0 {
                    if c {
                        return false;
                    }
                    continue;
                }
                let piv = 63 - m.leading_zeros();
                for r in rows.iter_mut() {
                    if r.0 >> piv & 1 == 1 {
                        r.0 ^= m;
                        r.1 ^= c;
                    }
                }
                rows.push((m, c));
            }
            for &(m, c) in &rows {
                let var = 63 - m.leading_zeros();
                let mask = m & !(1u64 << var);
                for p in polys.iter_mut() {
                    if p.variables() >> var & 1 == 1 {
                        *p = p.substitute(var, mask, c);
                    }
                }
                subs.push(Subst {
                    var,
                    mask,
                    constant: c,
                });
                self.tel.linear_substitutions += 1;
            }
        }
    }

    fn enumerate(&self, subs: &[Subst]) -> Result<Vec<u64>> {
        let all = if self.nvars == 64 {
            u64::MAX
        } else {
            (1u64 << self.nvars) - 1
        };
        let bound = subs.iter().fold(0u64, |a, s| a | 1u64 << s.var);
        let free = all & !bound;
        let nfree = free.count_ones();
        if nfree > self.cfg.max_free_vars {
            return Err(Error::ResourceLimit(format!(
                "{nfree} unconstrained variables (limit {})",
                self.cfg.max_free_vars
            )));
        }
        let free_bits: Vec<u32> = (0..64).filter(|i| free >> i & 1 == 1).collect();
        let mut out = Vec::with_capacity(1 << nfree);
        for combo in 0u64..(1u64 << nfree) {
            let mut a = 0u64;
            for (j, &b) in free_bits.iter().enumerate() {
                if combo >> j & 1 == 1 {
                    a |= 1u64 << b;
                }
            }
            for s in subs.iter().rev() {
                let v = ((s.mask & a).count_ones() & 1 == 1) ^ s.constant;
                if v {
                    a |= 1u64 << s.var;
                }
            }
            out.push(a);
        }
        Ok(out)
    }
}

/// Branching variable, chosen among the polynomials of minimal degree: the
/// variable occurring in every top-degree monomial of the most polynomials
/// (fixing it lowers their degree), ties broken by the number of top-degree
/// monomials it occurs in, then by index.
fn branch_variable(polys: &[BoolPoly]) -> u32 {
    let dmin = polys.iter().filter_map(|p| p.degree()).min().unwrap_or(0);
    let mut lowers = [0u64; 64];
    let mut counts = [0u64; 64];
    for p in polys.iter().filter(|p| p.degree() == Some(dmin)) {
        let mut common = u64::MAX;
        for &m in p.monomials().iter().take_while(|m| m.count_ones() == dmin) {
            common &= m;
            let mut mm = m;
            while mm != 0 {
                counts[mm.trailing_zeros() as usize] += 1;
                mm &= mm - 1;
            }
        }
        while common != 0 {
            lowers[common.trailing_zeros() as usize] += 1;
            common &= common - 1;
        }
    }
    if counts.iter().all(|&c| c == 0) {
        let vars = polys.iter().fold(0u64, |a, p| a | p.variables());
        return vars.trailing_zeros();
    }
    let mut best = 0;
    for i in 0..64 {
        if (lowers[i], counts[i]) > (lowers[best], counts[best]) {
            best = i;
        }
    }
    best as u32
}

struct StepPlan {
    rows: u64,
    cols: u64,
}

impl StepPlan {
    fn cells(&self) -> u64 {
        self.rows.saturating_mul(self.cols)
    }
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn monomials_up_to(nvars: u64, d: u32) -> u64 {
    (0..=d as u64).map(|j| binom(nvars, j)).fold(0u64, |a, b| a.saturating_add(b))
}

fn plan_step(polys: &[BoolPoly], d: u32, active: u64) -> StepPlan {
    let nact = active.count_ones() as u64;
    let mut rows = 0u64;
    let mut nonzeros = 0u64;
    for p in polys {
        let df = p.degree().unwrap_or(0);
        if df > d {
            continue;
        }
        let mult = monomials_up_to(nact, d - df);
        rows = rows.saturating_add(mult);
        nonzeros = nonzeros.saturating_add(mult.saturating_mul(p.len() as u64));
    }
    let cols = monomials_up_to(nact, d).min(nonzeros.max(1));
    StepPlan { rows, cols }
}

/// Squarefree monomials over the bits of `vars` of degree `<= d`.
fn multipliers(vars: u64, d: u32) -> Vec<u64> {
    let bits: Vec<u64> = (0..64).filter(|i| vars >> i & 1 == 1).map(|i| 1u64 << i).collect();
    let mut out = vec![0u64];
    let mut frontier: Vec<(u64, usize)> = vec![(0, 0)];
    for _ in 0..d {
        let mut next = Vec::new();
        for &(m, start) in &frontier {
            for (j, &b) in bits.iter().enumerate().skip(start) {
                next.push((m | b, j + 1));
            }
        }
        out.extend(next.iter().map(|x| x.0));
        frontier = next;
    }
    out
}

pub struct StepOutput {
    pub falls: Vec<BoolPoly>,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

/// One XL step at degree `d`: products of actual degree `< d` are inserted
/// first, so a reduced product of degree `d` that lands on a new pivot below
/// degree `d` is a genuine fall.
pub fn xl_step(polys: &[BoolPoly], d: u32, active: u64) -> StepOutput {
    let mut low: Vec<BoolPoly> = Vec::new();
    let mut high: Vec<BoolPoly> = Vec::new();
    let mut mult_cache: FxHashMap<u32, Vec<u64>> = FxHashMap::default();
    for p in polys {
        let df = match p.degree() {
            Some(x) if x <= d => x,
            _ => continue,
        };
        let ms = mult_cache
            .entry(d - df)
            .or_insert_with(|| multipliers(active, d - df));
        for &m in ms.iter() {
            let prod = if m == 0 { p.clone() } else { p.mul_monomial(m) };
            match prod.degree() {
                None => {}
                Some(x) if x < d => low.push(prod),
                Some(_) => high.push(prod),
            }
        }
    }
    let rows = low.len() + high.len();
    // Column dictionary, descending graded order.
    let mut cols: Vec<u64> = low
        .iter()
        .chain(high.iter())
        .flat_map(|p| p.monomials().iter().copied())
        .collect();
    cols.sort_unstable_by(|a, b| graded_cmp(*b, *a));
    cols.dedup();
    let index: FxHashMap<u64, u32> = cols.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
    let ncols = cols.len();
    let words = ncols.div_ceil(64);

    let mut elim = OnlineEliminator::new(ncols, words);
    for p in &low {
        elim.insert(p, &index);
    }
    let mut falls = Vec::new();
    for p in &high {
        if let Some(lead) = elim.insert(p, &index) {
            let lm = cols[lead];
            if lm.count_ones() < d {
                let row = elim.row(elim.rank() - 1);
                falls.push(bits_to_poly(row, &cols));
            }
        }
    }
    for f in &falls {
        assert!(f.degree().unwrap() < d, "harvested polynomial must have fallen");
    }
    StepOutput {
        falls,
        rows,
        cols: ncols,
        rank: elim.rank(),
    }
}

fn bits_to_poly(row: &[u64], cols: &[u64]) -> BoolPoly {
    let mut ms = Vec::new();
    for (w, &word) in row.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            let b = x.trailing_zeros() as usize;
            ms.push(cols[w * 64 + b]);
            x &= x - 1;
        }
    }
    BoolPoly::from_sorted(ms)
}

/// Incremental semi-echelon basis over GF(2) with dense packed rows.
struct OnlineEliminator {
    words: usize,
    pivot_of_col: Vec<u32>,
    store: Vec<u64>,
    nrows: usize,
    scratch: Vec<u64>,
}

impl OnlineEliminator {
    fn new(ncols: usize, words: usize) -> Self {
        OnlineEliminator {
            words,
            pivot_of_col: vec![u32::MAX; ncols],
            store: Vec::new(),
            nrows: 0,
            scratch: vec![0; words],
        }
    }

    fn rank(&self) -> usize {
        self.nrows
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.store[i * self.words..(i + 1) * self.words]
    }

    /// Reduce and insert; returns the new pivot column if independent.
    fn insert(&mut self, p: &BoolPoly, index: &FxHashMap<u64, u32>) -> Option<usize> {
        self.scratch.iter_mut().for_each(|w| *w = 0);
        for m in p.monomials() {
            let c = index[m] as usize;
            self.scratch[c / 64] |= 1u64 << (c % 64);
        }
        let mut w = 0;
        loop {
            while w < self.words && self.scratch[w] == 0 {
                w += 1;
            }
            if w == self.words {
                return None;
            }
            let c = w * 64 + self.scratch[w].trailing_zeros() as usize;
            let piv = self.pivot_of_col[c];
            if piv == u32::MAX {
                self.pivot_of_col[c] = self.nrows as u32;
                self.store.extend_from_slice(&self.scratch);
                self.nrows += 1;
                return Some(c);
            }
            let base = piv as usize * self.words;
            let src = &self.store[base + w..base + self.words];
            for (d, s) in self.scratch[w..].iter_mut().zip(src) {
                *d ^= *s;
            }
        }
    }
}

/// Fully reduced row-echelon basis of the span of `polys`.
pub fn interreduce(polys: &[BoolPoly]) -> Vec<BoolPoly> {
    let mut cols: Vec<u64> = polys.iter().flat_map(|p| p.monomials().iter().copied()).collect();
    cols.sort_unstable_by(|a, b| graded_cmp(*b, *a));
    cols.dedup();
    let index: FxHashMap<u64, u32> = cols.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
    let words = cols.len().div_ceil(64);
    let mut elim = OnlineEliminator::new(cols.len(), words);
    let mut leads = Vec::new();
    for p in polys {
        if let Some(c) = elim.insert(p, &index) {
            leads.push(c);
        }
    }
    // Back-substitute so every pivot column is clear in the other rows.
    let rank = elim.rank();
    let mut order: Vec<usize> = (0..rank).collect();
    order.sort_unstable_by_key(|&i| std::cmp::Reverse(leads[i]));
    for &i in &order {
        let c = leads[i];
        let (w, b) = (c / 64, c % 64);
        for j in 0..rank {
            if j != i && elim.store[j * words + w] >> b & 1 == 1 {
                for x in w..words {
                    let v = elim.store[i * words + x];
                    elim.store[j * words + x] ^= v;
                }
            }
        }
    }
    let mut out: Vec<BoolPoly> = (0..rank).map(|i| bits_to_poly(elim.row(i), &cols)).collect();
    out.sort_unstable_by(|a, b| graded_cmp(b.leading().unwrap(), a.leading().unwrap()));
    out
}

/// Smallest degree `D <= max_d` at which an XL step produces a fall, if any.
pub fn first_fall_degree(polys: &[BoolPoly], max_d: u32) -> Option<u32> {
    let active = polys.iter().fold(0u64, |a, p| a | p.variables());
    let d0 = polys.iter().filter_map(|p| p.degree()).max()?;
    (d0..=max_d).find(|&d| !xl_step(polys, d, active).falls.is_empty())
}

/// Exhaustive solution set via the Möbius transform of each polynomial.
pub fn brute_force_solutions(system: &BoolSystem) -> Result<Vec<u64>> {
    brute_force_polys(&system.polys, system.nvars)
}

pub const BRUTE_FORCE_MAX_VARS: u32 = 24;

pub fn brute_force_polys(polys: &[BoolPoly], nvars: u32) -> Result<Vec<u64>> {
    if nvars > BRUTE_FORCE_MAX_VARS {
        return Err(Error::TooLarge(format!(
            "{nvars} variables (limit {BRUTE_FORCE_MAX_VARS})"
        )));
    }
    let size = 1usize << nvars;
    let words = size.div_ceil(64);
    let valid = if size >= 64 { u64::MAX } else { (1u64 << size) - 1 };
    let mut alive = vec![u64::MAX; words];
    alive[words - 1] = if size % 64 == 0 { u64::MAX } else { valid };
    let mut table = vec![0u64; words];
    for p in polys {
        table.iter_mut().for_each(|w| *w = 0);
        for &m in p.monomials() {
            table[(m as usize) / 64] ^= 1u64 << (m % 64);
        }
        mobius(&mut table, nvars);
        for (a, t) in alive.iter_mut().zip(&table) {
            *a &= !t;
        }
    }
    let mut out = Vec::new();
    for (w, &word) in alive.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            let b = x.trailing_zeros() as u64;
            out.push(w as u64 * 64 + b);
            x &= x - 1;
        }
    }
    Ok(out)
}

/// In-place zeta transform over subsets: ANF coefficients to truth table.
fn mobius(t: &mut [u64], nvars: u32) {
    const MASKS: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    for i in 0..nvars.min(6) {
        let s = 1u32 << i;
        for w in t.iter_mut() {
            *w ^= (*w & MASKS[i as usize]) << s;
        }
    }
    for i in 6..nvars {
        let stride = 1usize << (i - 6);
        for j in 0..t.len() {
            if j & stride == 0 {
                let v = t[j];
                t[j | stride] ^= v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng_from_seed;
    use rand::Rng;

    fn p(ms: &[u64]) -> BoolPoly {
        BoolPoly::from_monomials(ms.to_vec())
    }

    #[test]
    fn tiny_examples() {
        let cfg = SolverConfig::default();
        // b1 + b2, b1 b2 + b1
        let out = solve_polys(&[p(&[1, 2]), p(&[3, 1])], 2, &cfg).unwrap();
        assert_eq!(out.status, SolveStatus::Solutions(vec![0b00, 0b11]));
        let out = solve_polys(&[p(&[1]), p(&[1, 0])], 1, &cfg).unwrap();
        assert_eq!(out.status, SolveStatus::Inconsistent);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_polys(&[], 3).unwrap(), (0..8).collect::<Vec<_>>());
        assert_eq!(brute_force_polys(&[p(&[0b111, 0])], 3).unwrap(), vec![0b111]);
        assert!(brute_force_polys(&[], 25).is_err());
    }

    fn random_system(rng: &mut crate::DetRng, nvars: u32, npolys: usize, plant: bool) -> Vec<BoolPoly> {
        let target: u64 = rng.gen::<u64>() & ((1u64 << nvars) - 1);
        (0..npolys)
            .map(|_| {
                let terms = rng.gen_range(2..12);
                let mut ms: Vec<u64> = (0..terms)
                    .map(|_| {
                        let deg = rng.gen_range(1..=3);
                        let mut m = 0u64;
                        while m.count_ones() < deg {
                            m |= 1u64 << rng.gen_range(0..nvars);
                        }
                        m
                    })
                    .collect();
                if rng.gen_bool(0.5) {
                    ms.push(0);
                }
                let mut q = BoolPoly::from_monomials(ms);
                if plant && q.eval(target) {
                    q = q.add(&BoolPoly::one());
                }
                q
            })
            .collect()
    }

    #[test]
    fn matches_brute_force_on_random_systems() {
        let mut rng = rng_from_seed(99);
        let cfg = SolverConfig::default();
        for i in 0..60 {
            let nvars = rng.gen_range(4..=12);
            let np = rng.gen_range(nvars as usize / 2..=nvars as usize + 2);
            let sys = random_system(&mut rng, nvars, np, i % 2 == 0);
            let bf = brute_force_polys(&sys, nvars).unwrap();
            let out = solve_polys(&sys, nvars, &cfg).unwrap();
            assert_eq!(out.solutions(), &bf[..], "system {i}");
            if bf.is_empty() {
                assert_eq!(out.status, SolveStatus::Inconsistent);
            }
        }
    }

    #[test]
    fn unbranched_mode_reports_cap() {
        // A single cubic in many variables has many solutions; with no
        // branching and d_cap = 3 nothing can fall.
        let sys = vec![p(&[0b111, 0b1000, 0b1_0000])];
        let out = solve_polys(&sys, 5, &SolverConfig::unbranched(3)).unwrap();
        assert_eq!(out.status, SolveStatus::DegreeCapExceeded);
        let out = solve_polys(&sys, 5, &SolverConfig::default()).unwrap();
        assert_eq!(out.solutions(), &brute_force_polys(&sys, 5).unwrap()[..]);
    }

    #[test]
    fn telemetry_lines() {
        let mut rng = rng_from_seed(3);
        let sys = random_system(&mut rng, 10, 12, true);
        let out = solve_polys(&sys, 10, &SolverConfig::default()).unwrap();
        let t = &out.telemetry;
        assert_eq!(t.d_max, t.step_degrees.iter().copied().max().unwrap_or(0));
        for l in t.lines() {
            assert!(l.starts_with("step=") && l.contains(" degree=") && l.contains(" new="));
        }
    }

    #[test]
    fn mobius_matches_direct_evaluation() {
        let mut rng = rng_from_seed(4);
        let sys = random_system(&mut rng, 9, 1, false);
        let zeros = brute_force_polys(&sys, 9).unwrap();
        let direct: Vec<u64> = (0..512).filter(|&a| !sys[0].eval(a)).collect();
        assert_eq!(zeros, direct);
    }
}
