//! Success-probability and cost models.
//!
//! All cost figures are `f64`; the largest Table-3 style values are around
//! `10^{86}`, far inside the exponent range, and three significant figures
//! need about 10 bits of the 53 available.

use std::fmt;

/// Expected decomposable fraction `1 − exp(−|V|^t/(q·t!))`.
pub fn success_probability(q: f64, t: u32, size_v: f64) -> f64 {
    -(-expected_classes(t, size_v) / q).exp_m1()
}

/// The same model through `1 − (1 − 1/q)^K`.
pub fn success_probability_binomial(q: f64, t: u32, size_v: f64) -> f64 {
    let k = expected_classes(t, size_v);
    -(k * (-1.0 / q).ln_1p()).exp_m1()
}

/// `|V|^t/(q·t!)`, the small-value approximation.
pub fn success_probability_approx(q: f64, t: u32, size_v: f64) -> f64 {
    expected_classes(t, size_v) / q
}

/// `K ≈ |V|^t / t!` unordered tuples.
pub fn expected_classes(t: u32, size_v: f64) -> f64 {
    size_v.powi(t as i32) / factorial(t)
}

/// `P(n, m, t, k)` with `q = 2^n`, `|V| = 2^k`.
pub fn p_nmtk(n: u32, t: u32, k: u32) -> f64 {
    success_probability(2f64.powi(n as i32), t, 2f64.powi(k as i32))
}

/// Truncated (not rounded) to four decimals, the way the probability
/// columns are printed.
pub fn trunc4(p: f64) -> f64 {
    (p * 1e4 + 1e-9).floor() / 1e4
}

pub fn factorial(m: u32) -> f64 {
    (1..=m).map(f64::from).product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Block-structured solving, cost `n^{4ω}` per system.
    Block,
    /// Plain F4 on all `n(m−1)` variables, cost `[n(m−1)]^{4ω}`.
    DefaultF4,
}

impl std::str::FromStr for Variant {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "block" => Ok(Variant::Block),
            "default-f4" => Ok(Variant::DefaultF4),
            _ => Err(crate::Error::Parse(format!("unknown variant `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MChoice {
    Reoptimize,
    BlockOptimal,
}

#[derive(Debug, Clone, Copy)]
pub struct CostModel {
    pub omega: f64,
    pub omega_sparse: f64,
    pub variant: Variant,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel {
            omega: 3.0,
            omega_sparse: 2.0,
            variant: Variant::Block,
        }
    }
}

impl CostModel {
    pub fn new(omega: f64, variant: Variant) -> crate::Result<Self> {
        if !(2.376..=3.0).contains(&omega) {
            return Err(crate::Error::Config(format!("omega {omega} outside [2.376, 3]")));
        }
        Ok(CostModel {
            omega,
            omega_sparse: 2.0,
            variant,
        })
    }

    fn solve_cost(&self, n: u32, m: u32) -> f64 {
        let base = match self.variant {
            Variant::Block => n as f64,
            Variant::DefaultF4 => (n * (m - 1)) as f64,
        };
        base.powf(4.0 * self.omega)
    }

    /// `(m!·2^{n/m}·cost, 2^{ω'n/m})`: relation collection and the sparse solve.
    pub fn stage_costs(&self, n: u32, m: u32) -> (f64, f64) {
        let e = n as f64 / m as f64;
        let stage1 = factorial(m) * e.exp2() * self.solve_cost(n, m);
        let stage2 = (self.omega_sparse * e).exp2();
        (stage1, stage2)
    }

    /// The general first-stage form `m!/2^{mk−n}·2^k·cost` for any `k`.
    pub fn stage1_general(&self, n: u32, m: u32, k: u32) -> f64 {
        let excess = (m * k) as f64 - n as f64;
        factorial(m) / excess.exp2() * (k as f64).exp2() * self.solve_cost(n, m)
    }

    /// Integer `m` minimising the first stage.
    pub fn optimal_m(&self, n: u32) -> u32 {
        (2..n)
            .min_by(|&a, &b| self.stage_costs(n, a).0.total_cmp(&self.stage_costs(n, b).0))
            .expect("n >= 3")
    }

    /// The `m` used for a row: the model's own minimiser, or the
    /// block-model minimiser (Table 3's `m`) under `MChoice::BlockOptimal`.
    pub fn choose_m(&self, n: u32, choice: MChoice) -> u32 {
        match choice {
            MChoice::Reoptimize => self.optimal_m(n),
            MChoice::BlockOptimal => CostModel {
                variant: Variant::Block,
                ..*self
            }
            .optimal_m(n),
        }
    }

    pub fn row(&self, n: u32) -> Table3Row {
        self.row_with(n, MChoice::Reoptimize)
    }

    pub fn row_with(&self, n: u32, choice: MChoice) -> Table3Row {
        let m = self.choose_m(n, choice);
        let (stage1, stage2) = self.stage_costs(n, m);
        Table3Row {
            n,
            pollard: (n as f64 / 2.0).exp2(),
            m,
            stage1,
            stage2,
        }
    }

    /// Smallest `n` in `range` where the first stage beats `2^{n/2}`.
    pub fn crossover(&self, range: std::ops::RangeInclusive<u32>) -> Option<u32> {
        self.crossover_with(range, MChoice::Reoptimize)
    }

    pub fn crossover_with(&self, range: std::ops::RangeInclusive<u32>, choice: MChoice) -> Option<u32> {
        range.into_iter().find(|&n| {
            let row = self.row_with(n, choice);
            row.stage1 < row.pollard
        })
    }
}

/// `m ≈ √((2 ln 2)·n/ln n)`.
pub fn asymptotic_m(n: f64) -> f64 {
    (2.0 * std::f64::consts::LN_2 * n / n.ln()).sqrt()
}

/// `c = 2/√(2 ln 2)` in the total cost `2^{c√(n ln n)}`.
pub fn asymptotic_constant() -> f64 {
    2.0 / (2.0 * std::f64::consts::LN_2).sqrt()
}

pub fn asymptotic_cost_log2(n: f64) -> f64 {
    asymptotic_constant() * (n * n.ln()).sqrt()
}

pub const TABLE3_NS: [u32; 12] = [100, 150, 200, 250, 300, 310, 350, 400, 409, 450, 500, 571];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table3Row {
    pub n: u32,
    pub pollard: f64,
    pub m: u32,
    pub stage1: f64,
    pub stage2: f64,
}

/// `1.23e45` style with three significant figures.
pub fn sci3(x: f64) -> String {
    format!("{x:.2e}")
}

impl fmt::Display for Table3Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{}",
            self.n,
            sci3(self.pollard),
            self.m,
            sci3(self.stage1),
            sci3(self.stage2)
        )
    }
}

pub fn table3(model: &CostModel, ns: &[u32]) -> Vec<Table3Row> {
    ns.iter().map(|&n| model.row(n)).collect()
}

/// Mantissa and exponent truncated to three significant figures:
/// `1.2677e30 → (126, 30)`, read as `1.26×10^30`.
pub fn trunc_sig3(x: f64) -> (u32, i32) {
    let e = x.log10().floor() as i32;
    let mant = x / 10f64.powi(e);
    // Guard against 9.999… landing just under a power of ten.
    let (mant, e) = if mant >= 10.0 { (mant / 10.0, e + 1) } else { (mant, e) };
    ((mant * 100.0 + 1e-9).floor() as u32, e)
}
