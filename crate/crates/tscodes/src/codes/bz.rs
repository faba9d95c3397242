//! Minimum distance of larger cyclic codes by information-window enumeration.
//!
//! The systematic generator puts the identity on the last k positions. Any
//! codeword's n cyclic shifts carry, in total, d * k ones inside that window,
//! so some shift has at most floor(d k / n) of them. After every message of
//! weight <= w has been tried, an unseen codeword therefore has
//! d >= ceil(n (w + 1) / k). This is the Brouwer-Zimmermann count specialised
//! to cyclic codes (Chen's form). Random information sets (Lee-Brickell)
//! supply the upper end early so the enumeration can stop as soon as the
//! bounds meet.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::bounds::{even_weight_lift, hartmann_tzeng_bound, HtCaps};
use super::words::{bit, pack, weight, with_words, xor, Row};
use super::{CodeRecord, Distance};
use crate::error::{Error, Result};
use crate::polyring::BinaryPoly;

#[derive(Clone, Debug)]
pub struct BzOptions {
    /// Upper limit on enumerated codewords across all levels.
    pub budget: u64,
    /// Lee-Brickell iterations for the upper bound.
    pub isd_iterations: u64,
    pub seed: u64,
    /// Fold the Hartmann-Tzeng bound into the lower end.
    pub ht_caps: Option<HtCaps>,
}

impl Default for BzOptions {
    fn default() -> Self {
        Self { budget: 2_000_000_000, isd_iterations: 2_000, seed: 0x5eed, ht_caps: Some(HtCaps::default()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BzOutcome {
    pub distance: Distance,
    /// Message weights fully enumerated: 1..=levels.
    pub levels: u32,
    pub codewords: u64,
    /// ceil(n (levels + 1) / k).
    pub window_bound: u32,
    pub ht_bound: u32,
    /// Lightest codeword seen, from any source.
    pub best_weight: u32,
}

fn binom(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// x^(n-k+i) mod g for i < k: the parity part of the i-th systematic row.
fn parity_rows(code: &CodeRecord) -> Result<Vec<BinaryPoly>> {
    let r = code.n - code.k;
    let mut rows = Vec::with_capacity(code.k);
    let mut cur = BinaryPoly::monomial(r).rem(&code.generator)?;
    for _ in 0..code.k {
        rows.push(cur.clone());
        cur = cur.mul(&BinaryPoly::x()).rem(&code.generator)?;
    }
    Ok(rows)
}

pub fn min_distance_bz(code: &CodeRecord, opts: &BzOptions) -> Result<BzOutcome> {
    if code.k == 0 {
        return Err(Error::Domain("the zero code has no minimum distance".into()));
    }
    let parity = parity_rows(code)?;
    let (n, k) = (code.n as u64, code.k as u64);

    let mut best = code.generator.weight();
    let full: Vec<BinaryPoly> = parity.iter().enumerate().map(|(i, p)| p.add(&BinaryPoly::monomial(code.n - code.k + i))).collect();
    best = best.min(with_words!(code.n, isd_upper(&full, code.n, opts.isd_iterations, opts.seed))?);

    let ht = match opts.ht_caps {
        Some(caps) => hartmann_tzeng_bound(&code.defining_mask(), caps).0,
        None => 1,
    };
    let lift = |x: u32| if code.is_even_weight() { even_weight_lift(code, x).unwrap_or(x) } else { x };
    let ht = lift(ht);

    let window = |w: u64| (n * (w + 1)).div_ceil(k) as u32;
    let lower = |best: u32, w: u64| lift(ht.max(best.min(window(w)))).min(best);
    let mut levels = 0u64;
    let mut spent = 0u64;
    while lower(best, levels) < best && levels < k {
        let w = levels + 1;
        let cost = binom(k, w);
        if spent.saturating_add(cost) > opts.budget {
            break;
        }
        let found = if code.n == code.k {
            w as u32
        } else {
            with_words!(code.n - code.k, level_min(&parity, code.n - code.k, w as usize))?
        };
        best = best.min(found);
        spent += cost;
        levels = w;
    }
    let lo = lower(best, levels);
    Ok(BzOutcome {
        distance: Distance::between(lo, best),
        levels: levels as u32,
        codewords: spent,
        window_bound: window(levels),
        ht_bound: ht,
        best_weight: best,
    })
}

/// Lightest codeword whose message has weight exactly w.
fn level_min<const W: usize>(parity: &[BinaryPoly], r: usize, w: usize) -> Result<u32> {
    let rows: Vec<Row<W>> = parity.iter().map(|p| pack(p, r)).collect();
    let k = rows.len();
    let best = (0..k + 1 - w)
        .into_par_iter()
        .map(|i| {
            let mut best = u32::MAX;
            dfs(&rows, i + 1, w - 1, rows[i], w as u32, &mut best);
            best
        })
        .min()
        .unwrap_or(u32::MAX);
    Ok(best)
}

fn dfs<const W: usize>(rows: &[Row<W>], start: usize, left: usize, acc: Row<W>, info: u32, best: &mut u32) {
    if left == 0 {
        *best = (*best).min(info + weight(&acc));
        return;
    }
    let k = rows.len();
    if left == 1 {
        for r in &rows[start..] {
            let wt = info + weight(&xor(&acc, r));
            if wt < *best {
                *best = wt;
            }
        }
        return;
    }
    for j in start..=k - left {
        dfs(rows, j + 1, left - 1, xor(&acc, &rows[j]), info, best);
    }
}

/// Lee-Brickell with p <= 2 over random information sets.
fn isd_upper<const W: usize>(full: &[BinaryPoly], n: usize, iterations: u64, seed: u64) -> Result<u32> {
    let k = full.len();
    let base: Vec<Row<W>> = full.iter().map(|p| pack(p, n)).collect();
    let mut best = base.iter().map(weight).min().unwrap_or(u32::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..iterations {
        order.shuffle(&mut rng);
        let mut g = base.clone();
        let mut rank = 0;
        for &col in &order {
            if rank == k {
                break;
            }
            let Some(p) = (rank..k).find(|&r| bit(&g[r], col)) else { continue };
            g.swap(rank, p);
            let pivot = g[rank];
            for (r, row) in g.iter_mut().enumerate() {
                if r != rank && bit(row, col) {
                    *row = xor(row, &pivot);
                }
            }
            rank += 1;
        }
        for i in 0..k {
            best = best.min(weight(&g[i]));
            for j in i + 1..k {
                best = best.min(weight(&xor(&g[i], &g[j])));
            }
        }
    }
    Ok(best)
}
