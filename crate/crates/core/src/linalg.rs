//! Relation matrices modulo the group order and discrete-log extraction.
//!
//! Kernels are computed modulo the full curve order `N`: relations hold in
//! `E(F_q)`, not in `<P>`, so only after `Σλ_j(row_j) ≡ 0 (mod N)` is the
//! scalar identity `Σλ_j(u_j P + v_j Q) = ∞` guaranteed. The order-2 column
//! stores `h·N/2`, which makes its condition `Σλ_j h_j ≡ 0 (mod 2)` part of
//! the same modular system.

use std::fmt::Write as _;

use crate::curve::{factorize, Instance, Point};
use crate::decompose::{FactorBase, Relation};
use crate::error::{Error, Result};

/// Rows collected beyond the matrix width.
pub const MARGIN: usize = 10;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    add_mod(a, m - b % m, m)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// Signed integer reduced into `[0, m)`.
pub fn reduce_signed(c: i64, m: u64) -> u64 {
    (c as i128).rem_euclid(m as i128) as u64
}

/// Sparse rows over `Z/N`, one per relation.
#[derive(Debug, Clone)]
pub struct RelationMatrix {
    pub modulus: u64,
    pub width: usize,
    pub rows: Vec<Vec<(usize, u64)>>,
    pub uv: Vec<(u64, u64)>,
    pub relations: Vec<Relation>,
}

impl RelationMatrix {
    /// Column `fb.len()` is the order-2 point.
    pub fn new(relations: &[Relation], fb: &FactorBase, modulus: u64) -> Self {
        assert!(modulus % 2 == 0, "binary curves have even order");
        let h2col = fb.len();
        let rows = relations
            .iter()
            .map(|rel| {
                let mut row: Vec<(usize, u64)> = rel
                    .coeffs
                    .iter()
                    .map(|&(i, c)| (i, reduce_signed(c, modulus)))
                    .filter(|&(_, c)| c != 0)
                    .collect();
                if rel.h2 == 1 {
                    row.push((h2col, modulus / 2));
                }
                row.sort_unstable();
                row
            })
            .collect();
        RelationMatrix {
            modulus,
            width: fb.width(),
            rows,
            uv: relations.iter().map(|r| (r.u, r.v)).collect(),
            relations: relations.to_vec(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// `row col value` triples after a `# modulus N rows R cols C` header.
    pub fn dump(&self) -> String {
        let mut s = format!(
            "# modulus {} rows {} cols {}\n",
            self.modulus,
            self.rows.len(),
            self.width
        );
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, c) in row {
                let _ = writeln!(s, "{i} {j} {c}");
            }
        }
        s
    }

    pub fn parse_dump(text: &str) -> Result<(u64, usize, Vec<Vec<(usize, u64)>>)> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty dump".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 7 || h[0] != "#" {
            return Err(Error::Parse(format!("bad header `{header}`")));
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| Error::Parse(format!("bad number `{s}`")));
        let modulus = num(h[2])?;
        let nrows = num(h[4])? as usize;
        let width = num(h[6])? as usize;
        let mut rows = vec![Vec::new(); nrows];
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 {
                return Err(Error::Parse(format!("bad entry `{line}`")));
            }
            let (i, j, c) = (num(f[0])? as usize, num(f[1])? as usize, num(f[2])?);
            if i >= nrows || j >= width {
                return Err(Error::Parse(format!("entry out of range `{line}`")));
            }
            rows[i].push((j, c));
        }
        Ok((modulus, width, rows))
    }

    /// Does `λᵀ M ≡ 0 (mod N)`?
    pub fn is_kernel(&self, lambda: &[u64]) -> bool {
        let mut acc = vec![0u64; self.width];
        for (row, &l) in self.rows.iter().zip(lambda) {
            for &(j, c) in row {
                acc[j] = add_mod(acc[j], mul_mod(l, c, self.modulus), self.modulus);
            }
        }
        acc.iter().all(|&a| a == 0)
    }

    /// Exact point check: `Σλ_j(Σc F + hH)` and `aP + bQ` cancel.
    pub fn verify_combination(&self, lambda: &[u64], inst: &Instance, fb: &FactorBase) -> bool {
        let w = inst.curve.weierstrass();
        let n = self.modulus;
        let mut col = vec![0u64; fb.len()];
        let mut h = 0u64;
        let (mut a, mut b) = (0u64, 0u64);
        for (rel, &l) in self.relations.iter().zip(lambda) {
            for &(i, c) in &rel.coeffs {
                col[i] = add_mod(col[i], mul_mod(l, reduce_signed(c, n), n), n);
            }
            h = (h + (l % 2) * rel.h2 as u64) % 2;
            a = add_mod(a, mul_mod(l % inst.r, rel.u, inst.r), inst.r);
            b = add_mod(b, mul_mod(l % inst.r, rel.v, inst.r), inst.r);
        }
        let mut acc = w.add(&w.mul(a, &inst.p), &w.mul(b, &inst.q));
        for (i, &c) in col.iter().enumerate() {
            acc = w.add(&acc, &w.mul(c, &fb.points()[i]));
        }
        if h == 1 {
            acc = w.add(&acc, &fb.h2());
        }
        acc == Point::Infinity
    }
}

/// Drop rows holding the only entry of a column when that entry is a unit:
/// no kernel vector can use them. Repeats until stable. Returns kept rows.
pub fn prune_singletons(rows: &[Vec<(usize, u64)>], width: usize, modulus: u64) -> Vec<usize> {
    let mut alive = vec![true; rows.len()];
    loop {
        let mut weight = vec![0usize; width];
        let mut owner = vec![0usize; width];
        for (i, row) in rows.iter().enumerate().filter(|(i, _)| alive[*i]) {
            for &(j, c) in row {
                if c % modulus != 0 {
                    weight[j] += 1;
                    owner[j] = i;
                }
            }
        }
        let mut changed = false;
        for j in 0..width {
            if weight[j] == 1 {
                let i = owner[j];
                let c = rows[i].iter().find(|e| e.0 == j).unwrap().1;
                if alive[i] && gcd(c, modulus) == 1 {
                    alive[i] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return (0..rows.len()).filter(|&i| alive[i]).collect();
        }
    }
}

fn valuation(mut a: u64, p: u64) -> u32 {
    if a == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while a % p == 0 {
        a /= p;
        v += 1;
    }
    v
}

/// Left-kernel basis rows of a dense matrix over `Z/p^e`, by elimination
/// with minimum-valuation pivots and a tracked transform. The returned
/// vectors are rows of an invertible transform, so none vanishes mod `p`.
pub fn left_kernel_prime_power(dense: &[Vec<u64>], p: u64, e: u32) -> Vec<Vec<u64>> {
    let m = p.pow(e);
    let nrows = dense.len();
    let ncols = dense.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<u64>> = dense.iter().map(|r| r.iter().map(|&x| x % m).collect()).collect();
    let mut t: Vec<Vec<u64>> = (0..nrows)
        .map(|i| {
            let mut r = vec![0u64; nrows];
            r[i] = 1 % m;
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows)
            .filter(|&i| a[i][col] != 0)
            .min_by_key(|&i| valuation(a[i][col], p))
        else {
            continue;
        };
        a.swap(rank, piv);
        t.swap(rank, piv);
        let pv = a[rank][col];
        let v = valuation(pv, p);
        let pk = p.pow(v);
        let unit_inv = inv_mod(pv / pk, m).expect("unit part");
        for i in rank + 1..nrows {
            let x = a[i][col];
            if x == 0 {
                continue;
            }
            // x = p^v·x', pivot = p^v·u  ⇒  factor = x'·u⁻¹.
            let f = mul_mod(x / pk, unit_inv, m);
            for j in col..ncols {
                a[i][j] = sub_mod(a[i][j], mul_mod(f, a[rank][j], m), m);
            }
            for j in 0..nrows {
                t[i][j] = sub_mod(t[i][j], mul_mod(f, t[rank][j], m), m);
            }
        }
        rank += 1;
    }
    (rank..nrows)
        .filter(|&i| a[i].iter().all(|&x| x == 0))
        .map(|i| t[i].clone())
        .collect()
}

/// Chinese remaindering of residues modulo pairwise coprime moduli.
pub fn crt(residues: &[(u64, u64)]) -> u64 {
    let mut x = 0u64;
    let mut m = 1u64;
    for &(r, mi) in residues {
        // x ≡ x (mod m), x ≡ r (mod mi)
        let inv = inv_mod(m % mi, mi).expect("coprime moduli");
        let k = mul_mod(sub_mod(r % mi, x % mi, mi), inv, mi);
        x += m * k;
        m *= mi;
    }
    x
}

/// Candidate kernel vectors modulo `N`.
///
/// Each is the CRT combination of one `r`-part kernel vector with the first
/// kernel vector of every other prime-power part. The log depends only on
/// the `r`-part, so varying it is enough for retries.
pub fn kernel_vectors(m: &RelationMatrix, r: u64) -> Result<Vec<Vec<u64>>> {
    let keep = prune_singletons(&m.rows, m.width, m.modulus);
    // Keep only columns that still carry entries.
    let mut used = vec![false; m.width];
    for &i in &keep {
        for &(j, c) in &m.rows[i] {
            if c != 0 {
                used[j] = true;
            }
        }
    }
    let cols: Vec<usize> = (0..m.width).filter(|&j| used[j]).collect();
    let mut pos = vec![usize::MAX; m.width];
    for (k, &j) in cols.iter().enumerate() {
        pos[j] = k;
    }
    let dense: Vec<Vec<u64>> = keep
        .iter()
        .map(|&i| {
            let mut row = vec![0u64; cols.len()];
            for &(j, c) in &m.rows[i] {
                if pos[j] != usize::MAX {
                    row[pos[j]] = (row[pos[j]] + c) % m.modulus;
                }
            }
            row
        })
        .collect();
    if dense.is_empty() {
        return Err(Error::NoKernel);
    }
    let mut parts: Vec<(u64, Vec<Vec<u64>>)> = Vec::new();
    for (p, e) in factorize(m.modulus) {
        let ker = left_kernel_prime_power(&dense, p, e);
        if ker.is_empty() {
            return Err(Error::NoKernel);
        }
        parts.push((p.pow(e), ker));
    }
    let r_part = parts
        .iter()
        .position(|(pe, _)| pe % r == 0)
        .ok_or_else(|| Error::Config(format!("{r} does not divide the group order")))?;
    let mut out = Vec::new();
    for choice in 0..parts[r_part].1.len() {
        let mut lam = vec![0u64; m.rows.len()];
        for (slot, &row) in keep.iter().enumerate() {
            let res: Vec<(u64, u64)> = parts
                .iter()
                .enumerate()
                .map(|(pi, (pe, ker))| {
                    let k = if pi == r_part { &ker[choice] } else { &ker[0] };
                    (k[slot], *pe)
                })
                .collect();
            lam[row] = crt(&res);
        }
        debug_assert!(m.is_kernel(&lam));
        out.push(lam);
    }
    Ok(out)
}

pub fn kernel_vector(m: &RelationMatrix, r: u64) -> Result<Vec<u64>> {
    Ok(kernel_vectors(m, r)?.swap_remove(0))
}

/// `z ≡ −a·b⁻¹ (mod r)` with `a = Σλ_j u_j`, `b = Σλ_j v_j`.
pub fn extract_log(lambda: &[u64], m: &RelationMatrix, r: u64) -> Result<u64> {
    let (mut a, mut b) = (0u64, 0u64);
    for (&l, &(u, v)) in lambda.iter().zip(&m.uv) {
        a = add_mod(a, mul_mod(l % r, u % r, r), r);
        b = add_mod(b, mul_mod(l % r, v % r, r), r);
    }
    let binv = inv_mod(b, r).ok_or(Error::DegenerateB)?;
    Ok(sub_mod(0, mul_mod(a, binv, r), r))
}

/// Try every candidate kernel vector until one gives an invertible `b`;
/// each is checked with exact curve arithmetic first.
pub fn solve_log(m: &RelationMatrix, inst: &Instance, fb: &FactorBase) -> Result<u64> {
    let mut last = Error::NoKernel;
    for lam in kernel_vectors(m, inst.r)? {
        assert!(m.verify_combination(&lam, inst, fb), "kernel vector fails the point identity");
        match extract_log(&lam, m, inst.r) {
            Ok(z) => return Ok(z),
            Err(e) => last = e,
        }
    }
    Err(last)
}
