//! Experiment harness, end-to-end solver and the command-line front end.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use rayon::prelude::*;

use crate::analysis::{self, CostModel, MChoice, Variant};
use crate::curve::{make_instance, BMode, BinaryCurve, Instance, InstanceSpec};
use crate::decompose::{collect, CollectConfig, CollectReport, FactorBase, Schedule};
use crate::descent::{build_system, weil_descend, SubspaceV, VMode};
use crate::error::{Error, Result};
use crate::field::{BinaryField, Field, FieldElement, ModulusChoice};
use crate::gbsolver::{xl_solve, SolveStatus, SolverConfig};
use crate::linalg::{solve_log, RelationMatrix, MARGIN};
use crate::pollard::rho_solve;
use crate::sumpoly::SumPolyCache;

/// How the defining polynomial of `F_{2^n}` is picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FMode {
    Default,
    Random,
}

impl std::str::FromStr for FMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(FMode::Default),
            "random" => Ok(FMode::Random),
            _ => Err(Error::Config(format!("unknown f mode `{s}`"))),
        }
    }
}

pub fn ceil_div(a: u32, b: u32) -> u32 {
    a.div_ceil(b)
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub n: u32,
    pub m: u32,
    pub t: u32,
    pub k: u32,
    pub b_mode: BMode,
    pub trials: u64,
    pub seed: u64,
    pub d_cap: u32,
    pub schedule: Schedule,
    pub v_mode: VMode,
    pub f_mode: FMode,
    pub max_cells: u64,
}

impl ExperimentConfig {
    pub fn new(n: u32, m: u32, t: u32, b_mode: BMode) -> Self {
        ExperimentConfig {
            n,
            m,
            t,
            k: ceil_div(n, m),
            b_mode,
            trials: 100,
            seed: 1,
            d_cap: 4,
            schedule: Schedule::TmOnly,
            v_mode: VMode::LowDegree,
            f_mode: FMode::Default,
            max_cells: SolverConfig::default().max_cells,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 2 || self.m >= self.n {
            return Err(Error::Config(format!("need 2 <= m < n, got m = {}", self.m)));
        }
        if self.t < 2 || self.t > self.m {
            return Err(Error::Config(format!("need 2 <= t <= m, got t = {}", self.t)));
        }
        if self.k == 0 || self.k > self.n {
            return Err(Error::Config(format!("bad k = {}", self.k)));
        }
        let vars = self.n * (self.t - 2) + self.k * self.t;
        if vars > 64 {
            return Err(Error::Config(format!("{vars} Boolean variables exceed 64")));
        }
        Ok(())
    }

    pub fn solver(&self) -> SolverConfig {
        SolverConfig {
            d_cap: self.d_cap,
            max_cells: self.max_cells,
            ..SolverConfig::default()
        }
    }

    /// Field, `B` and `V` for this experiment, all derived from the seed.
    pub fn setup(&self) -> Result<(BinaryField, FieldElement, SubspaceV)> {
        let mut rng = crate::rng_for_task(self.seed, u64::MAX);
        let modulus = match self.f_mode {
            FMode::Default => ModulusChoice::Default,
            FMode::Random => ModulusChoice::Random(rng.gen()),
        };
        let field = BinaryField::with_choice(self.n, modulus)?;
        let b = match self.b_mode {
            BMode::One => field.one(),
            BMode::Random => loop {
                let b = field.random(&mut rng);
                if !b.is_zero() {
                    break b;
                }
            },
        };
        let v = SubspaceV::new(&field, self.k, self.v_mode, &mut rng)?;
        Ok((field, b, v))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub index: u64,
    pub z: FieldElement,
    pub status: &'static str,
    pub solutions: usize,
    pub d_max: u32,
    pub branch_nodes: u64,
    pub peak_mb: f64,
    pub seconds: f64,
}

impl TrialRecord {
    pub fn log_line(&self, timing: bool) -> String {
        let mut s = format!(
            "trial={} z={} status={} solutions={} d_max={} nodes={} peak_mb={:.3}",
            self.index, self.z, self.status, self.solutions, self.d_max, self.branch_nodes, self.peak_mb
        );
        if timing {
            s.push_str(&format!(" seconds={:.4}", self.seconds));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub n: u32,
    pub m: u32,
    pub t: u32,
    pub k: u32,
    pub b_mode: BMode,
    pub trials: u64,
    pub successes: u64,
    pub unresolved: u64,
    pub exp_prob: f64,
    pub p_model: f64,
    pub d_max: u32,
    pub avg_seconds: f64,
    pub peak_mb: f64,
}

impl ExperimentRow {
    /// Binomial standard deviation of the success fraction under the model.
    pub fn sigma(&self) -> f64 {
        (self.p_model * (1.0 - self.p_model) / self.trials as f64).sqrt()
    }

    pub fn within_sigmas(&self, s: f64) -> bool {
        (self.exp_prob - self.p_model).abs() <= s * self.sigma() + 1e-12
    }

    pub fn csv_header(timing: bool) -> Vec<&'static str> {
        let mut h = vec![
            "n", "m", "t", "k", "B", "trials", "successes", "unresolved", "exp_prob", "P", "d_max",
            "peak_mb",
        ];
        if timing {
            h.push("avg_seconds");
        }
        h
    }

    pub fn csv_record(&self, timing: bool) -> Vec<String> {
        let mut r = vec![
            self.n.to_string(),
            self.m.to_string(),
            self.t.to_string(),
            self.k.to_string(),
            match self.b_mode {
                BMode::One => "one".into(),
                BMode::Random => "random".into(),
            },
            self.trials.to_string(),
            self.successes.to_string(),
            self.unresolved.to_string(),
            format!("{:.2}", self.exp_prob),
            format!("{:.4}", analysis::trunc4(self.p_model)),
            self.d_max.to_string(),
            format!("{:.1}", self.peak_mb),
        ];
        if timing {
            r.push(format!("{:.4}", self.avg_seconds));
        }
        r
    }
}

fn run_one_trial(
    cfg: &ExperimentConfig,
    b: FieldElement,
    v: &SubspaceV,
    field: &BinaryField,
    index: u64,
) -> Result<TrialRecord> {
    let mut rng = crate::rng_for_task(cfg.seed, index);
    let z = field.random(&mut rng);
    let start = Instant::now();
    let ts: Vec<u32> = match cfg.schedule {
        Schedule::TmOnly => vec![cfg.t],
        Schedule::Escalate => (2..=cfg.t).collect(),
    };
    let (mut status, mut solutions, mut d_max, mut nodes, mut peak) = ("unsat", 0, 0, 0, 0f64);
    for t in ts {
        let sys = weil_descend(&build_system(z, t as usize)?, b, v)?;
        let out = xl_solve(&sys, &cfg.solver())?;
        d_max = d_max.max(out.telemetry.d_max);
        nodes += out.telemetry.branch_nodes;
        peak = peak.max(out.telemetry.peak_mb());
        match &out.status {
            SolveStatus::Solutions(s) if !s.is_empty() => {
                status = "sat";
                solutions = s.len();
                break;
            }
            SolveStatus::DegreeCapExceeded => status = "undecided",
            _ => {}
        }
    }
    Ok(TrialRecord {
        index,
        z,
        status,
        solutions,
        d_max,
        branch_nodes: nodes,
        peak_mb: peak,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Solve `trials` descended systems for random `z` and aggregate.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<(ExperimentRow, Vec<TrialRecord>)> {
    cfg.validate()?;
    let (field, b, v) = cfg.setup()?;
    let records: Vec<TrialRecord> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_one_trial(cfg, b, &v, &field, i))
        .collect::<Result<_>>()?;
    let successes = records.iter().filter(|r| r.status == "sat").count() as u64;
    let unresolved = records.iter().filter(|r| r.status == "undecided").count() as u64;
    let row = ExperimentRow {
        n: cfg.n,
        m: cfg.m,
        t: cfg.t,
        k: cfg.k,
        b_mode: cfg.b_mode,
        trials: cfg.trials,
        successes,
        unresolved,
        exp_prob: successes as f64 / cfg.trials.max(1) as f64,
        p_model: analysis::p_nmtk(cfg.n, cfg.t, cfg.k),
        d_max: records.iter().map(|r| r.d_max).max().unwrap_or(0),
        avg_seconds: records.iter().map(|r| r.seconds).sum::<f64>() / cfg.trials.max(1) as f64,
        peak_mb: records.iter().map(|r| r.peak_mb).fold(0.0, f64::max),
    };
    Ok((row, records))
}

pub fn rows_to_csv(rows: &[ExperimentRow], timing: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Config(e.to_string());
    w.write_record(ExperimentRow::csv_header(timing)).map_err(io)?;
    for r in rows {
        w.write_record(r.csv_record(timing)).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub n: u32,
    pub m: u32,
    pub k: Option<u32>,
    pub b_mode: BMode,
    pub seed: u64,
    pub schedule: Schedule,
    pub solver: SolverConfig,
    pub max_trials: u64,
}

impl SolveConfig {
    pub fn new(n: u32, seed: u64) -> Self {
        SolveConfig {
            n,
            m: 3,
            k: None,
            b_mode: BMode::Random,
            seed,
            schedule: Schedule::TmOnly,
            solver: SolverConfig::default(),
            max_trials: 100_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub instance: Instance,
    pub z: u64,
    pub factor_base: usize,
    pub collect: CollectReport,
    pub rounds: u32,
}

/// Full index calculus on one instance. Ends by asserting `zP = Q`.
pub fn solve_instance(inst: &Instance, cfg: &SolveConfig) -> Result<SolveReport> {
    let k = cfg.k.unwrap_or_else(|| ceil_div(cfg.n, cfg.m));
    let v = SubspaceV::low_degree(inst.curve.field(), k)?;
    let fb = FactorBase::new(&inst.curve, &v);
    let mut target = fb.width() + MARGIN;
    let mut rounds = 0;
    loop {
        rounds += 1;
        let ccfg = CollectConfig {
            m: cfg.m as usize,
            target,
            schedule: cfg.schedule,
            solver: cfg.solver.clone(),
            seed: cfg.seed,
            max_trials: cfg.max_trials,
            batch: 16,
        };
        let rep = collect(inst, &fb, &ccfg)?;
        let z = match rep.direct {
            Some(z) => Some(z),
            None => {
                let mat = RelationMatrix::new(&rep.relations, &fb, inst.group_order);
                match solve_log(&mat, inst, &fb) {
                    Ok(z) => Some(z),
                    Err(Error::NoKernel | Error::DegenerateB) => None,
                    Err(e) => return Err(e),
                }
            }
        };
        if let Some(z) = z {
            assert_eq!(inst.curve.weierstrass().mul(z, &inst.p), inst.q, "zP != Q");
            return Ok(SolveReport {
                instance: inst.clone(),
                z,
                factor_base: fb.len(),
                collect: rep,
                rounds,
            });
        }
        target += MARGIN;
    }
}

/// Flat `key = value` configuration; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<HashMap<String, String>> {
    let mut out = HashMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected `key = value`", no + 1)))?;
        out.insert(k.trim().replace('_', "-"), v.trim().to_string());
    }
    Ok(out)
}

fn parse_val<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Config(format!("bad value `{v}` for `{key}`")))
}

#[derive(Parser, Debug)]
#[command(name = "ecdlp", about = "Summation-polynomial index calculus over binary fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Success rate and solver degrees over random decomposition systems.
    Experiment(ExperimentArgs),
    /// Discrete log of a generated instance by index calculus.
    Solve(SolveArgs),
    /// Asymptotic cost table and Pollard crossover.
    Table3(Table3Args),
    /// Print a summation polynomial.
    Sumpoly(SumpolyArgs),
    /// Time solver runs and print per-step telemetry.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Default)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long = "B")]
    pub b: Option<String>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub d_cap: Option<u32>,
    #[arg(long)]
    pub schedule: Option<String>,
    #[arg(long)]
    pub v_mode: Option<String>,
    #[arg(long)]
    pub f_mode: Option<String>,
    #[arg(long)]
    pub max_cells: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-trial log file.
    #[arg(long)]
    pub log: Option<PathBuf>,
    /// Add the wall-clock column (not reproducible).
    #[arg(long)]
    pub timing: bool,
}

impl ExperimentArgs {
    pub fn to_config(&self) -> Result<ExperimentConfig> {
        let file = match &self.config {
            Some(p) => parse_config(&read(p)?)?,
            None => HashMap::new(),
        };
        let pick = |key: &str, flag: Option<String>| flag.or_else(|| file.get(key).cloned());
        let num = |key: &str, flag: Option<u64>| -> Result<Option<u64>> {
            match flag {
                Some(v) => Ok(Some(v)),
                None => file.get(key).map(|v| parse_val(key, v)).transpose(),
            }
        };
        let n = num("n", self.n.map(u64::from))?.ok_or_else(|| Error::Config("missing n".into()))? as u32;
        let m = num("m", self.m.map(u64::from))?.ok_or_else(|| Error::Config("missing m".into()))? as u32;
        let t = num("t", self.t.map(u64::from))?.unwrap_or(m as u64) as u32;
        let b_mode = match pick("B", self.b.clone()).or_else(|| file.get("b").cloned()) {
            Some(s) => s.parse()?,
            None => BMode::One,
        };
        let mut cfg = ExperimentConfig::new(n, m, t, b_mode);
        if let Some(k) = num("k", self.k.map(u64::from))? {
            cfg.k = k as u32;
        }
        if let Some(v) = num("trials", self.trials)? {
            cfg.trials = v;
        }
        if let Some(v) = num("seed", self.seed)? {
            cfg.seed = v;
        }
        if let Some(v) = num("d-cap", self.d_cap.map(u64::from))? {
            cfg.d_cap = v as u32;
        }
        if let Some(v) = num("max-cells", self.max_cells)? {
            cfg.max_cells = v;
        }
        if let Some(s) = pick("schedule", self.schedule.clone()) {
            cfg.schedule = s.parse()?;
        }
        if let Some(s) = pick("v-mode", self.v_mode.clone()) {
            cfg.v_mode = s.parse()?;
        }
        if let Some(s) = pick("f-mode", self.f_mode.clone()) {
            cfg.f_mode = s.parse()?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub m: u32,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long = "B", default_value = "random")]
    pub b: String,
    #[arg(long, default_value = "tm")]
    pub schedule: String,
    #[arg(long)]
    pub check_pollard: bool,
    /// Write the relation log here.
    #[arg(long)]
    pub relations: Option<PathBuf>,
    /// Write the relation matrix in coordinate form here.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Table3Args {
    #[arg(long, default_value_t = 3.0)]
    pub omega: f64,
    #[arg(long, default_value = "block")]
    pub variant: String,
    /// Minimise the chosen variant's own cost instead of reusing the
    /// block-model `m`.
    #[arg(long)]
    pub reoptimize_m: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SumpolyArgs {
    #[arg(long)]
    pub m: usize,
    /// `one`, `random` or a hex constant.
    #[arg(long = "B", default_value = "one")]
    pub b: String,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, default_value_t = 5)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long = "B", default_value = "one")]
    pub b: String,
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))
}

fn write(p: &Path, s: &str) -> Result<()> {
    fs::write(p, s).map_err(|e| Error::Config(format!("{}: {e}", p.display())))
}

fn emit(out: &Option<PathBuf>, s: &str) -> Result<()> {
    match out {
        Some(p) => write(p, s),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}

fn cmd_experiment(a: &ExperimentArgs) -> Result<()> {
    let cfg = a.to_config()?;
    let (row, records) = run_experiment(&cfg)?;
    if let Some(p) = &a.log {
        let log: String = records.iter().map(|r| r.log_line(a.timing) + "\n").collect();
        write(p, &log)?;
    }
    emit(&a.out, &rows_to_csv(&[row], a.timing)?)
}

fn cmd_solve(a: &SolveArgs) -> Result<()> {
    let b_mode: BMode = a.b.parse()?;
    let inst = make_instance(InstanceSpec::new(a.n, b_mode, a.seed))?;
    let mut cfg = SolveConfig::new(a.n, a.seed);
    cfg.m = a.m;
    cfg.k = a.k;
    cfg.b_mode = b_mode;
    cfg.schedule = a.schedule.parse()?;
    let rep = solve_instance(&inst, &cfg)?;
    println!("curve: A={} B={} f={:#x}", inst.curve.a(), inst.curve.b(), inst.curve.field().modulus());
    println!("group order N={} r={} cofactor={}", inst.group_order, inst.r, inst.cofactor());
    println!("P={:?}", inst.p);
    println!("Q={:?}", inst.q);
    println!(
        "factor base {} points, {} relations from {} trials ({} successful), d_max={}",
        rep.factor_base,
        rep.collect.relations.len(),
        rep.collect.trials,
        rep.collect.successes,
        rep.collect.d_max
    );
    if rep.collect.direct.is_some() {
        println!("a trial hit uP + vQ = O directly");
    }
    println!("z={}", rep.z);
    if let Some(zt) = inst.z_true {
        assert_eq!(zt % inst.r, rep.z, "recovered log differs from the planted one");
    }
    if a.check_pollard {
        let mut rng = crate::rng_for_task(a.seed, u64::MAX - 1);
        let (zr, stats) = rho_solve(&inst, &mut rng);
        println!("pollard z={} steps={} restarts={}", zr, stats.steps, stats.restarts);
        assert_eq!(zr, rep.z, "pollard rho disagrees");
    }
    let k = a.k.unwrap_or_else(|| ceil_div(a.n, a.m));
    let fb = FactorBase::new(&inst.curve, &SubspaceV::low_degree(inst.curve.field(), k)?);
    if let Some(p) = &a.relations {
        let log: String = rep.collect.relations.iter().map(|r| r.to_line() + "\n").collect();
        write(p, &log)?;
    }
    if let Some(p) = &a.matrix {
        write(p, &RelationMatrix::new(&rep.collect.relations, &fb, inst.group_order).dump())?;
    }
    println!("check: zP = Q holds");
    Ok(())
}

pub fn table3_csv(model: &CostModel, choice: MChoice) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Config(e.to_string());
    w.write_record(["n", "2^(n/2)", "m", "stage1", "stage2"]).map_err(io)?;
    for &n in &analysis::TABLE3_NS {
        let r = model.row_with(n, choice);
        w.write_record([
            n.to_string(),
            analysis::sci3(r.pollard),
            r.m.to_string(),
            analysis::sci3(r.stage1),
            analysis::sci3(r.stage2),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

fn cmd_table3(a: &Table3Args) -> Result<()> {
    let variant: Variant = a.variant.parse()?;
    let model = CostModel::new(a.omega, variant)?;
    let choice = if a.reoptimize_m { MChoice::Reoptimize } else { MChoice::BlockOptimal };
    emit(&a.out, &table3_csv(&model, choice)?)?;
    match model.crossover_with(100..=700, choice) {
        Some(n) => eprintln!("crossover: first n in [100, 700] beating 2^(n/2) is {n}"),
        None => eprintln!("crossover: none in [100, 700]"),
    }
    eprintln!("asymptotic constant c = {:.5}", analysis::asymptotic_constant());
    Ok(())
}

pub fn parse_b(spec: &str, field: &BinaryField, seed: u64) -> Result<FieldElement> {
    match spec {
        "one" | "1" => Ok(field.one()),
        "random" => {
            let mut rng = crate::rng_from_seed(seed);
            loop {
                let b = field.random(&mut rng);
                if !b.is_zero() {
                    return Ok(b);
                }
            }
        }
        hex => {
            let bits = u64::from_str_radix(hex.trim_start_matches("0x"), 16)
                .map_err(|_| Error::Config(format!("bad B `{hex}`")))?;
            let b = field.elem(bits);
            if b.is_zero() {
                return Err(Error::Config("B must be nonzero".into()));
            }
            Ok(b)
        }
    }
}

fn cmd_sumpoly(a: &SumpolyArgs) -> Result<()> {
    let field = BinaryField::with_default(a.n)?;
    let b = parse_b(&a.b, &field, a.seed)?;
    let curve = BinaryCurve::new(field.clone(), field.zero(), b)?;
    let cache = SumPolyCache::new(curve.weierstrass());
    let s = cache.get(a.m)?;
    println!(
        "# S_{} over F_2^{} (f = {:#x}), B = {}, {} terms, total degree {}",
        a.m,
        a.n,
        field.modulus(),
        b,
        s.len(),
        s.total_degree().unwrap_or(0)
    );
    println!("{}", s.to_text(|c| format!("{c}")));
    Ok(())
}

fn cmd_bench(a: &BenchArgs) -> Result<()> {
    let t = a.t.unwrap_or(a.m);
    let b_mode: BMode = a.b.parse()?;
    let mut cfg = ExperimentConfig::new(a.n, a.m, t, b_mode);
    if let Some(k) = a.k {
        cfg.k = k;
    }
    cfg.seed = a.seed;
    cfg.validate()?;
    let (field, b, v) = cfg.setup()?;
    let mut total = 0.0;
    for i in 0..a.trials {
        let mut rng = crate::rng_for_task(cfg.seed, i);
        let z = field.random(&mut rng);
        let sys = weil_descend(&build_system(z, t as usize)?, b, &v)?;
        let start = Instant::now();
        let out = xl_solve(&sys, &cfg.solver())?;
        let secs = start.elapsed().as_secs_f64();
        total += secs;
        println!(
            "# trial {i}: {} polys in {} vars, status {:?}, {:.3}s, d_max {}, nodes {}, peak {:.2} MB",
            sys.polys.len(),
            sys.nvars,
            match out.status {
                SolveStatus::Solutions(ref s) => format!("{} solutions", s.len()),
                SolveStatus::Inconsistent => "inconsistent".into(),
                SolveStatus::DegreeCapExceeded => "undecided".into(),
            },
            secs,
            out.telemetry.d_max,
            out.telemetry.branch_nodes,
            out.telemetry.peak_mb()
        );
        for line in out.telemetry.lines().iter().take(12) {
            println!("  {line}");
        }
    }
    println!("average {:.4}s per solve", total / a.trials.max(1) as f64);
    Ok(())
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Experiment(a) => cmd_experiment(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Table3(a) => cmd_table3(a),
        Command::Sumpoly(a) => cmd_sumpoly(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

/// Parse `std::env::args`, run, and return a process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => {
            let _ = std::io::stdout().flush();
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
