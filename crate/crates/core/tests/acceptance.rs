//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`). Criterion 5 replays the full
//! success-rate grid and takes several minutes in the optimised test profile.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use ecdlp::analysis::{self, CostModel, MChoice};
use ecdlp::cli::{run_experiment, solve_instance, ExperimentConfig, SolveConfig};
use ecdlp::curve::{make_instance, BMode, BinaryCurve, InstanceSpec, Point};
use ecdlp::decompose::{find_lifts, oracle_decompose, solver_multisets};
use ecdlp::descent::{descend, s3_coordinates, BoolPoly, Operand, SubspaceV};
use ecdlp::field::{BinaryField, Field, FieldElement};
use ecdlp::gbsolver::{brute_force_polys, solve_polys, xl_solve, SolveStatus, SolverConfig};
use ecdlp::pollard::rho_solve;
use ecdlp::sumpoly::{Monomial, MultiPoly, SumPolyCache};
use rand::Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn curve_for(n: u32, seed: u64) -> BinaryCurve {
    let f = BinaryField::with_default(n).unwrap();
    let mut rng = ecdlp::rng_from_seed(seed);
    let a = f.random(&mut rng);
    let b = loop {
        let b = f.random(&mut rng);
        if !b.is_zero() {
            break b;
        }
    };
    BinaryCurve::new(f, a, b).unwrap()
}

/// Advance a nondecreasing index tuple; false after the last one.
fn next_multiset(idx: &mut [usize], q: usize) -> bool {
    for j in (0..idx.len()).rev() {
        if idx[j] + 1 < q {
            let v = idx[j] + 1;
            idx[j..].iter_mut().for_each(|s| *s = v);
            return true;
        }
    }
    false
}

/// Criterion 1: S_m(x) = 0 exactly when lifts of the x_i can sum to O.
fn c1_vanishing() -> Outcome {
    let mut checked = 0u64;
    let mut zeros = 0u64;
    for n in 4..=8u32 {
        let curve = curve_for(n, n as u64);
        let cache = SumPolyCache::new(curve.weierstrass());
        let elems: Vec<FieldElement> = curve.field().elements().collect();
        for m in [3usize, 4] {
            let s = cache.get(m).map_err(|e| e.to_string())?;
            let mut test = |xs: &[FieldElement]| -> Result<(), String> {
                let vanishes = s.eval(xs).is_zero();
                let sums = find_lifts(&curve, xs, &Point::Infinity).is_some();
                checked += 1;
                zeros += vanishes as u64;
                check(vanishes == sums, || format!("n={n} m={m} x={xs:?}: S_m zero {vanishes}, lifts sum {sums}"))
            };
            if n <= 6 {
                // All multisets; S_m is symmetric.
                let mut idx = vec![0usize; m];
                loop {
                    let xs: Vec<FieldElement> = idx.iter().map(|&i| elems[i]).collect();
                    test(&xs)?;
                    if !next_multiset(&mut idx, elems.len()) {
                        break;
                    }
                }
            } else {
                let mut rng = ecdlp::rng_from_seed(100 + n as u64 * 10 + m as u64);
                let w = curve.weierstrass();
                let pts = curve.points();
                for i in 0..400 {
                    let xs: Vec<FieldElement> = if i % 2 == 0 {
                        (0..m).map(|_| curve.field().random(&mut rng)).collect()
                    } else {
                        // Planted zero sums of rational points.
                        let ps: Vec<_> = (0..m - 1).map(|_| pts[rng.gen_range(0..pts.len())]).collect();
                        let sum = ps.iter().fold(Point::Infinity, |a, p| w.add(&a, p));
                        let last = w.neg(&sum);
                        if ps.iter().any(|p| p.is_infinity()) || last.is_infinity() {
                            continue;
                        }
                        ps.iter().chain([&last]).map(|p| p.x().unwrap()).collect()
                    };
                    test(&xs)?;
                }
            }
        }
    }
    Ok(format!("{checked} tuples over n=4..8, m=3,4 ({zeros} zeros)"))
}

/// Criterion 2: deg_{x_i} S_m = 2^{m-2} and symmetry, m = 3..6.
fn c2_degree_law() -> Outcome {
    let curve = curve_for(13, 2);
    let cache = SumPolyCache::new(curve.weierstrass());
    let mut sizes = Vec::new();
    for m in 3..=6usize {
        let s = cache.get(m).map_err(|e| e.to_string())?;
        for i in 0..m {
            let d = s.degree_in(i).unwrap_or(0);
            check(d == 1 << (m - 2), || format!("S_{m}: deg in x{} is {d}", i + 1))?;
        }
        check(s.is_symmetric(), || format!("S_{m} not symmetric"))?;
        sizes.push(format!("S_{m}:{}", s.len()));
    }
    Ok(format!("degrees 1,2,4,8,16 as 2^(m-2); terms {}", sizes.join(" ")))
}

struct GridRow {
    n: u32,
    m: u32,
    t: u32,
    b: BMode,
    p: f64,
}

fn grid() -> Vec<GridRow> {
    let one = [(12, 6, 6, 0.0013), (13, 4, 4, 0.2834), (13, 5, 5, 0.0327), (14, 4, 4, 0.1535), (14, 5, 5, 0.0165), (15, 4, 4, 0.0799), (15, 5, 5, 0.0082)];
    let random = [
        (12, 6, 6, 0.0013),
        (13, 4, 4, 0.2834),
        (13, 5, 5, 0.0327),
        (14, 4, 4, 0.1535),
        (14, 5, 5, 0.0165),
        (15, 4, 4, 0.0799),
        (15, 4, 3, 0.0206),
        (15, 4, 2, 0.0038),
        (15, 5, 5, 0.0082),
        (15, 5, 4, 0.0051),
        (15, 5, 3, 0.0026),
        (15, 5, 2, 0.0009),
    ];
    let mk = |b| move |&(n, m, t, p): &(u32, u32, u32, f64)| GridRow { n, m, t, b, p };
    one.iter().map(mk(BMode::One)).chain(random.iter().map(mk(BMode::Random))).collect()
}

/// Criterion 3: coordinates of all-variable S_3 equations have degree 3,
/// of the R_X equation degree 2. Checked per coordinate; the per-equation
/// maximum is reported alongside.
fn c3_boolean_degrees() -> Outcome {
    let mut count = 0;
    let mut violations = Vec::new();
    let mut max_law = true;
    for row in grid() {
        let f = BinaryField::with_default(row.n).unwrap();
        let k = row.n.div_ceil(row.m);
        let v = SubspaceV::low_degree(&f, k).unwrap();
        let mut rng = ecdlp::rng_from_seed(row.n as u64 * 100 + row.t as u64);
        for _ in 0..3 {
            let z = f.random(&mut rng);
            let b = if row.b == BMode::One { f.one() } else { f.random(&mut rng) };
            let sys = descend(z, b, row.t as usize, &v).map_err(|e| e.to_string())?;
            let mut eq_max = vec![0u32; sys.equations.len()];
            for (p, prov) in sys.polys.iter().zip(&sys.provenance) {
                let eq = &sys.equations[prov.equation];
                let constant = eq.args.iter().any(|a| matches!(a, Operand::Const(_)));
                let want = if constant { 2 } else { 3 };
                let got = p.degree().unwrap_or(0);
                eq_max[prov.equation] = eq_max[prov.equation].max(got);
                if got != want {
                    violations.push(format!(
                        "n={} t={} z={z} eq {} coord {}: degree {got}, want {want}",
                        row.n, row.t, prov.equation, prov.coordinate
                    ));
                }
                count += 1;
            }
            for (e, eq) in sys.equations.iter().enumerate() {
                let constant = eq.args.iter().any(|a| matches!(a, Operand::Const(_)));
                max_law &= eq_max[e] == if constant { 2 } else { 3 };
            }
        }
    }
    if violations.is_empty() {
        Ok(format!("{count} coordinate polynomials over the n<=15 grid"))
    } else {
        Err(format!(
            "{} of {count} coordinates below the stated degree (first: {}); per-equation maximum law {}",
            violations.len(),
            violations[0],
            if max_law { "holds" } else { "also fails" }
        ))
    }
}

/// Criterion 4: x1·S_3 equals the five-term expansion; Boolean degrees.
fn c4_first_fall_identity() -> Outcome {
    for n in [12u32, 13, 14, 15] {
        let curve = curve_for(n, 40 + n as u64);
        let f = curve.field().clone();
        let b = curve.b();
        let s3 = SumPolyCache::new(curve.weierstrass()).get(3).map_err(|e| e.to_string())?;
        let x1 = MultiPoly::var(f.one(), 3, 0);
        let lhs = x1.mul(&s3);
        let term = |e: [u32; 3], c: FieldElement| (Monomial::from_exponents(&e), c);
        let rhs = MultiPoly::from_terms(
            f.one(),
            3,
            [
                term([3, 2, 0], f.one()),
                term([3, 0, 2], f.one()),
                term([1, 2, 2], f.one()),
                term([2, 1, 1], f.one()),
                term([1, 0, 0], b),
            ],
        );
        check(lhs == rhs, || format!("n={n}: x1*S3 = {}", lhs.to_text(|c| c.to_string())))?;

        // Degrees with all three arguments free in F_{2^n}.
        let v = SubspaceV::low_degree(&f, 1).unwrap();
        let args = [Operand::U(0), Operand::U(1), Operand::U(2)];
        let deg = |ps: &[BoolPoly]| ps.iter().filter_map(BoolPoly::degree).max().unwrap_or(0);
        let s = s3_coordinates(args, None, b, &v).map_err(|e| e.to_string())?;
        let xs = s3_coordinates(args, Some(Operand::U(0)), b, &v).map_err(|e| e.to_string())?;
        check(deg(&s) == 3 && deg(&xs) <= 3, || format!("n={n}: deg S3 {} deg x1*S3 {}", deg(&s), deg(&xs)))?;
        // With the third argument a constant z: degrees 2 and 3.
        let z = f.elem(0x1357 & ((1 << n) - 1));
        let cargs = [Operand::U(0), Operand::U(1), Operand::Const(z)];
        let s = s3_coordinates(cargs, None, b, &v).map_err(|e| e.to_string())?;
        let xs = s3_coordinates(cargs, Some(Operand::U(0)), b, &v).map_err(|e| e.to_string())?;
        check(deg(&s) == 2 && deg(&xs) == 3, || format!("n={n}: deg S3(x1,x2,z) {} deg x1*S3(x1,x2,z) {}", deg(&s), deg(&xs)))?;
    }
    Ok("identity exact for n=12..15; coordinate degrees 3/<=3 and 2/3".into())
}

/// Criterion 5: the success-rate grid, d_max <= 4, 3-sigma windows.
fn c5_assumption_audit() -> Outcome {
    let seed = 1;
    let mut failures = Vec::new();
    let mut counterexamples = Vec::new();
    let mut lines = Vec::new();
    let mut dmax_all = 0;
    for row in grid() {
        let mut cfg = ExperimentConfig::new(row.n, row.m, row.t, row.b);
        cfg.seed = seed;
        let start = Instant::now();
        let (er, records) = run_experiment(&cfg).map_err(|e| e.to_string())?;
        dmax_all = dmax_all.max(er.d_max);
        for r in &records {
            if r.d_max > 4 || r.status == "undecided" {
                counterexamples.push(format!(
                    "n={} m={} t={} k={} B={:?} seed={seed} {}",
                    row.n, row.m, row.t, cfg.k, row.b, r.log_line(false)
                ));
            }
        }
        let sigma = (row.p * (1.0 - row.p) / er.trials as f64).sqrt();
        let lo = (row.p - 3.0 * sigma).max(0.0);
        let hi = row.p + 3.0 * sigma;
        let in_window = er.exp_prob >= lo - 1e-12 && er.exp_prob <= hi + 1e-12;
        let resolved = er.unresolved == 0 && er.d_max <= 4;
        let line = format!(
            "    n={:2} m={} t={} k={} B={:<6} exp={:.2} P={:.4} window=[{lo:.4},{hi:.4}] d_max={} unresolved={} {:.0}s {}",
            row.n,
            row.m,
            row.t,
            cfg.k,
            format!("{:?}", row.b).to_lowercase(),
            er.exp_prob,
            row.p,
            er.d_max,
            er.unresolved,
            start.elapsed().as_secs_f64(),
            if in_window && resolved { "ok" } else { "OUT" }
        );
        println!("{line}");
        lines.push(line);
        if !(in_window && resolved) {
            failures.push(format!("n={} m={} t={} B={:?}", row.n, row.m, row.t, row.b));
        }
    }
    if !counterexamples.is_empty() {
        let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("assumption1_counterexamples.txt");
        std::fs::write(&path, counterexamples.join("\n") + "\n").ok();
        failures.push(format!("{} counterexamples written to {}", counterexamples.len(), path.display()));
    }
    if failures.is_empty() {
        Ok(format!("{} rows x 100 trials, all resolved, max d_max {dmax_all}", lines.len()))
    } else {
        Err(format!("outside tolerance: {}", failures.join("; ")))
    }
}

fn random_system(rng: &mut impl Rng, nvars: u32) -> Vec<BoolPoly> {
    let npolys = rng.gen_range(nvars as usize / 2..=nvars as usize + 4);
    (0..npolys)
        .map(|_| {
            let deg = rng.gen_range(1..=3u32);
            let terms = rng.gen_range(1..=2 * nvars as usize);
            let ms: Vec<u64> = (0..terms)
                .map(|_| {
                    let d = rng.gen_range(0..=deg);
                    (0..d).fold(0u64, |m, _| m | 1 << rng.gen_range(0..nvars))
                })
                .collect();
            BoolPoly::from_monomials(ms)
        })
        .collect()
}

/// Planted systems have at least one solution.
fn planted_system(rng: &mut impl Rng, nvars: u32) -> Vec<BoolPoly> {
    let sol: u64 = rng.gen::<u64>() & ((1u64 << nvars) - 1);
    random_system(rng, nvars)
        .into_iter()
        .map(|p| if p.eval(sol) { p.add(&BoolPoly::one()) } else { p })
        .collect()
}

/// Criterion 6: solver = brute force on synthetic systems; solver = S_{t+1}
/// sweep on real descended systems.
fn c6_solver_oracle() -> Outcome {
    let mut rng = ecdlp::rng_from_seed(6);
    let cfg = SolverConfig::default();
    let mut nonempty = 0;
    for i in 0..200 {
        let nvars = rng.gen_range(4..=24u32);
        let polys = if i % 2 == 0 { planted_system(&mut rng, nvars) } else { random_system(&mut rng, nvars) };
        let got = solve_polys(&polys, nvars, &cfg).map_err(|e| e.to_string())?;
        let want = brute_force_polys(&polys, nvars).map_err(|e| e.to_string())?;
        nonempty += !want.is_empty() as u32;
        let SolveStatus::Solutions(ref s) = got.status else {
            if want.is_empty() && matches!(got.status, SolveStatus::Inconsistent) {
                continue;
            }
            return Err(format!("synthetic system {i}: solver {:?}, brute force {} solutions", got.status, want.len()));
        };
        check(*s == want, || format!("synthetic system {i} ({nvars} vars): solution sets differ"))?;
    }

    let mut real = 0;
    let mut sat = 0;
    for (n, k, t, seeds) in [(11u32, 4u32, 3usize, 20u64), (12, 3, 4, 10), (10, 4, 3, 10)] {
        let curve = curve_for(n, 60 + n as u64);
        let v = SubspaceV::low_degree(curve.field(), k).unwrap();
        let cache = SumPolyCache::new(curve.weierstrass());
        let mut rng = ecdlp::rng_from_seed(600 + n as u64);
        let mut done = 0;
        while done < seeds {
            let z = curve.field().random(&mut rng);
            if v.contains(z) {
                continue;
            }
            let sys = descend(z, curve.b(), t, &v).map_err(|e| e.to_string())?;
            let out = xl_solve(&sys, &cfg).map_err(|e| e.to_string())?;
            let solver: BTreeSet<Vec<u64>> = solver_multisets(&sys, out.solutions()).into_iter().collect();
            let oracle: BTreeSet<Vec<u64>> = oracle_decompose(&cache, z, t, &v)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|idx| {
                    let elems: Vec<FieldElement> = v.elements().collect();
                    let mut c: Vec<u64> = idx.iter().map(|&i| v.coords(elems[i as usize]).unwrap()).collect();
                    c.sort_unstable();
                    c
                })
                .collect();
            check(solver == oracle, || {
                format!("n={n} k={k} t={t} z={z}: solver {solver:?} vs S_(t+1) sweep {oracle:?}")
            })?;
            real += 1;
            sat += !oracle.is_empty() as u32;
            done += 1;
        }
    }
    Ok(format!("200 synthetic ({nonempty} satisfiable) and {real} descended systems ({sat} satisfiable) agree"))
}

/// Criterion 7: index calculus = Pollard rho = planted log, n = 11..14.
fn c7_end_to_end() -> Outcome {
    let mut direct = 0;
    for n in 11..=14u32 {
        for seed in 1..=10u64 {
            let inst = make_instance(InstanceSpec::new(n, BMode::Random, seed)).map_err(|e| e.to_string())?;
            let rep = solve_instance(&inst, &SolveConfig::new(n, seed)).map_err(|e| format!("n={n} seed={seed}: {e}"))?;
            let (z_rho, _) = rho_solve(&inst, &mut ecdlp::rng_for_task(seed, 7));
            let z_true = inst.z_true.unwrap() % inst.r;
            let w = inst.curve.weierstrass();
            check(rep.z == z_rho && rep.z == z_true && w.mul(rep.z, &inst.p) == inst.q, || {
                format!("n={n} seed={seed}: index calculus {} rho {z_rho} planted {z_true}", rep.z)
            })?;
            direct += rep.collect.direct.is_some() as u32;
        }
    }
    Ok(format!("40 instances agree ({direct} by a direct uP+vQ=O hit, the rest via linear algebra)"))
}

/// Criterion 8: the probability column, truncated to four decimals.
fn c8_probability() -> Outcome {
    let rows: [(u32, u32, u32, f64); 20] = [
        (12, 6, 2, 0.0013),
        (13, 4, 4, 0.2834),
        (13, 5, 3, 0.0327),
        (14, 4, 4, 0.1535),
        (14, 5, 3, 0.0165),
        (15, 4, 4, 0.0799),
        (15, 5, 3, 0.0082),
        (16, 4, 4, 0.0408),
        (17, 3, 6, 0.2834),
        (15, 3, 4, 0.0206),
        (15, 2, 4, 0.0038),
        (15, 4, 3, 0.0051),
        (15, 3, 3, 0.0026),
        (15, 2, 3, 0.0009),
        (16, 3, 4, 0.0103),
        (16, 2, 4, 0.0019),
        (19, 3, 7, 0.4865),
        (19, 2, 7, 0.0155),
        (21, 3, 7, 0.1535),
        (21, 2, 7, 0.0038),
    ];
    for (n, t, k, p) in rows {
        let got = analysis::p_nmtk(n, t, k);
        check(analysis::trunc4(got) == p, || format!("P({n},{t},{k}) = {got:.6}, table {p}"))?;
        let q = 2f64.powi(n as i32);
        let v = 2f64.powi(k as i32);
        let alt = analysis::success_probability_binomial(q, t, v);
        check((alt - got).abs() < 5e-5, || format!("({n},{t},{k}): forms differ {got} vs {alt}"))?;
    }
    Ok(format!("{} table entries reproduced", rows.len()))
}

/// Criterion 9: Table 3, crossover and the asymptotic constant.
fn c9_table3() -> Outcome {
    let table: [(u32, (u32, i32), u32, (u32, i32), (u32, i32)); 12] = [
        (100, (112, 15), 6, (749, 31), (108, 10)),
        (150, (377, 22), 7, (184, 36), (796, 12)),
        (200, (126, 30), 8, (554, 39), (112, 15)),
        (250, (425, 37), 9, (497, 42), (529, 16)),
        (300, (142, 45), 10, (207, 45), (115, 18)),
        (310, (456, 46), 10, (613, 45), (461, 18)),
        (350, (478, 52), 10, (421, 47), (118, 21)),
        (400, (160, 60), 11, (592, 49), (781, 21)),
        (409, (363, 61), 11, (136, 50), (243, 22)),
        (450, (539, 67), 11, (568, 51), (426, 24)),
        (500, (180, 75), 12, (408, 53), (121, 25)),
        (571, (879, 85), 12, (121, 56), (444, 28)),
    ];
    let model = CostModel::default();
    for (n, pol, m, s1, s2) in table {
        let r = model.row(n);
        check(r.m == m, || format!("n={n}: m={} want {m}", r.m))?;
        for (name, got, want) in [("2^(n/2)", r.pollard, pol), ("stage1", r.stage1, s1), ("stage2", r.stage2, s2)] {
            let g = analysis::trunc_sig3(got);
            check(g == want, || format!("n={n} {name}: {got:.4e} vs {}e{}", want.0, want.1))?;
        }
    }
    let cross = model.crossover(100..=700).ok_or("no crossover")?;
    check(cross > 300 && cross <= 310, || format!("crossover at {cross}"))?;
    check((cross..=700).all(|n| { let r = model.row(n); r.stage1 < r.pollard }), || "Pollard regains the lead above the crossover".into())?;
    let f4 = CostModel::new(3.0, analysis::Variant::DefaultF4).map_err(|e| e.to_string())?;
    let f4_cross = f4.crossover_with(100..=700, MChoice::BlockOptimal).ok_or("no plain-F4 crossover")?;
    check(f4_cross > 409 && f4_cross <= 571, || format!("plain-F4 crossover at {f4_cross}"))?;
    let c = analysis::asymptotic_constant();
    check((c * 1e4).round() / 1e4 == 1.6986, || format!("c = {c}"))?;
    Ok(format!("12 rows to 3 figures, crossover n={cross}, plain-F4 crossover n={f4_cross}, c={c:.4}"))
}

/// Criterion 10: what is deliberately not asserted.
fn c10_exclusions() -> Outcome {
    Ok("timings, memory figures, n=21 speed-up and n>21 solving are not asserted; timing columns need --timing".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 vanishing <=> decomposition", c1_vanishing),
        ("2 degree law and symmetry of S_m", c2_degree_law),
        ("3 Boolean degrees of the descent", c3_boolean_degrees),
        ("4 first-fall identity", c4_first_fall_identity),
        ("5 degree-4 audit and success rates", c5_assumption_audit),
        ("6 solver/oracle equivalence", c6_solver_oracle),
        ("7 end-to-end logarithms", c7_end_to_end),
        ("8 probability formula", c8_probability),
        ("9 cost table and crossover", c9_table3),
        ("10 documented exclusions", c10_exclusions),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, f) in criteria {
        let id = name.split(' ').next().unwrap();
        if !filter.is_empty() && !filter.iter().any(|x| x == id) {
            continue;
        }
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("PASS criterion {name}: {msg} [{secs:.1}s]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
