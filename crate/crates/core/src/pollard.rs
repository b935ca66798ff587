//! Pollard rho with a 16-way additive walk and Brent cycle detection.

use rand::Rng;

use crate::curve::{Instance, Point, Weierstrass};
use crate::field::FieldElement;
use crate::linalg::{add_mod, inv_mod, mul_mod, sub_mod};

const PARTITIONS: usize = 16;
const CHECK_EVERY: u64 = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkState {
    pub point: Point<FieldElement>,
    pub a: u64,
    pub b: u64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RhoStats {
    /// Walk steps over all attempts.
    pub steps: u64,
    pub restarts: u64,
}

struct Walk<'a> {
    w: Weierstrass<FieldElement>,
    inst: &'a Instance,
    table: Vec<WalkState>,
}

fn partition(p: &Point<FieldElement>) -> usize {
    match p.x() {
        None => 0,
        Some(x) => (x.bits().wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 60) as usize,
    }
}

impl<'a> Walk<'a> {
    fn new<R: Rng + ?Sized>(inst: &'a Instance, rng: &mut R) -> Self {
        let w = inst.curve.weierstrass();
        let table = (0..PARTITIONS)
            .map(|_| {
                let a = rng.gen_range(0..inst.r);
                let b = rng.gen_range(0..inst.r);
                WalkState {
                    point: w.add(&w.mul(a, &inst.p), &w.mul(b, &inst.q)),
                    a,
                    b,
                }
            })
            .collect();
        Walk { w, inst, table }
    }

    fn start<R: Rng + ?Sized>(&self, rng: &mut R) -> WalkState {
        let a = rng.gen_range(0..self.inst.r);
        let b = rng.gen_range(0..self.inst.r);
        WalkState {
            point: self.w.add(&self.w.mul(a, &self.inst.p), &self.w.mul(b, &self.inst.q)),
            a,
            b,
        }
    }

    fn step(&self, s: &WalkState) -> WalkState {
        let m = &self.table[partition(&s.point)];
        let r = self.inst.r;
        WalkState {
            point: self.w.add(&s.point, &m.point),
            a: add_mod(s.a, m.a, r),
            b: add_mod(s.b, m.b, r),
        }
    }

    fn check(&self, s: &WalkState) {
        let expect = self
            .w
            .add(&self.w.mul(s.a, &self.inst.p), &self.w.mul(s.b, &self.inst.q));
        assert_eq!(expect, s.point, "walk invariant broken");
    }
}

/// Discrete log of `Q` to base `P` modulo the prime `r`.
pub fn rho_solve<R: Rng + ?Sized>(inst: &Instance, rng: &mut R) -> (u64, RhoStats) {
    let r = inst.r;
    let mut stats = RhoStats::default();
    if inst.q.is_infinity() {
        return (0, stats);
    }
    loop {
        // A fresh table per attempt: in tiny groups every cycle of one table
        // can have b-sum 0 mod r.
        let walk = Walk::new(inst, rng);
        let mut tortoise = walk.start(rng);
        let mut hare = walk.step(&tortoise);
        stats.steps += 1;
        let (mut power, mut lam) = (1u64, 1u64);
        while tortoise.point != hare.point {
            if power == lam {
                tortoise = hare;
                power *= 2;
                lam = 0;
            }
            hare = walk.step(&hare);
            lam += 1;
            stats.steps += 1;
            if stats.steps % CHECK_EVERY == 0 {
                walk.check(&hare);
            }
        }
        // aP + bQ = a'P + b'Q  ⇒  z = (a − a')/(b' − b).
        let db = sub_mod(hare.b, tortoise.b, r);
        if let Some(inv) = inv_mod(db, r) {
            let z = mul_mod(sub_mod(tortoise.a, hare.a, r), inv, r);
            debug_assert_eq!(walk.w.mul(z, &inst.p), inst.q);
            return (z, stats);
        }
        stats.restarts += 1;
    }
}
