//! 2-cyclotomic cosets mod v = 2^m - 1 and the Gamma/B/epsilon/kappa
//! bookkeeping that the closed-form leader sets are written in.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{usage, Result};
use crate::gf2m::{MAX_M, MIN_M};

/// Partition of Z_v into cyclotomic cosets, stored as a flat leader map.
#[derive(Clone, Debug)]
pub struct CosetTable {
    m: u32,
    v: u32,
    leader_of: Vec<u32>,
    size_of: Vec<u8>,
    leaders: Vec<u32>,
}

impl CosetTable {
    pub fn new(m: u32) -> Result<Self> {
        if !(MIN_M..=MAX_M).contains(&m) {
            return usage(format!("m = {m} outside [{MIN_M}, {MAX_M}]"));
        }
        let v = (1u32 << m) - 1;
        let mut leader_of = vec![u32::MAX; v as usize];
        let mut size_of = vec![0u8; v as usize];
        let mut leaders = Vec::new();
        for i in 0..v {
            if leader_of[i as usize] != u32::MAX {
                continue;
            }
            // i is the smallest unvisited element, hence the leader of its orbit.
            leaders.push(i);
            let mut orbit = vec![i];
            let mut j = (2 * i as u64 % v as u64) as u32;
            while j != i {
                orbit.push(j);
                j = (2 * j as u64 % v as u64) as u32;
            }
            for &k in &orbit {
                leader_of[k as usize] = i;
                size_of[k as usize] = orbit.len() as u8;
            }
        }
        Ok(Self { m, v, leader_of, size_of, leaders })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    /// Sorted coset leaders (the set Gamma).
    pub fn leaders(&self) -> &[u32] {
        &self.leaders
    }

    /// Reduces any integer into Z_v.
    pub fn reduce(&self, i: i64) -> u32 {
        i.rem_euclid(self.v as i64) as u32
    }

    pub fn leader(&self, i: u32) -> u32 {
        self.leader_of[(i % self.v) as usize]
    }

    /// Leader of the coset containing i mod v, for signed i.
    pub fn leader_of_signed(&self, i: i64) -> u32 {
        self.leader(self.reduce(i))
    }

    pub fn size(&self, i: u32) -> u32 {
        self.size_of[(i % self.v) as usize] as u32
    }

    /// C_i as the doubling orbit starting from i.
    pub fn members(&self, i: u32) -> Vec<u32> {
        let i = i % self.v;
        let mut out = vec![i];
        let mut j = self.double(i);
        while j != i {
            out.push(j);
            j = self.double(j);
        }
        out
    }

    #[inline]
    pub fn double(&self, i: u32) -> u32 {
        (2 * i as u64 % self.v as u64) as u32
    }

    pub fn same_coset(&self, i: u32, j: u32) -> bool {
        self.leader(i) == self.leader(j)
    }

    /// Smallest lambda in [0, size) with i * 2^lambda = j mod v.
    pub fn rotation_exponent(&self, i: u32, j: u32) -> Option<u32> {
        let (i, j) = (i % self.v, j % self.v);
        let mut x = i;
        for lambda in 0..self.size(i) {
            if x == j {
                return Some(lambda);
            }
            x = self.double(x);
        }
        None
    }

    /// Union of the cosets of `leaders`, as a membership bitmap over Z_v.
    pub fn expand(&self, leaders: impl IntoIterator<Item = u32>) -> Vec<bool> {
        let mut out = vec![false; self.v as usize];
        for l in leaders {
            for k in self.members(l) {
                out[k as usize] = true;
            }
        }
        out
    }

    /// Leaders of the cosets touched by `set` (elements reduced mod v).
    pub fn leaders_of(&self, set: impl IntoIterator<Item = u32>) -> BTreeSet<u32> {
        set.into_iter().map(|i| self.leader(i)).collect()
    }
}

/// Binary weight w_2(i).
pub fn weight2(i: u64) -> u32 {
    i.count_ones()
}

/// Gamma_(t): odd integers in [1, 2^t - 1].
pub fn gamma(t: u32) -> Vec<u64> {
    if t == 0 {
        return Vec::new();
    }
    (1..(1u64 << t)).step_by(2).collect()
}

/// Gamma_(t) minus Gamma_(u), u <= t.
pub fn gamma_minus(t: u32, u: u32) -> Vec<u64> {
    let lo = if u == 0 { 0 } else { (1u64 << u) - 1 };
    gamma(t).into_iter().filter(|&j| j > lo).collect()
}

/// Gamma_(t) together with epsilon, kappa and the B_j sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaMachinery {
    pub t: u32,
    pub gamma_t: Vec<u64>,
    pub eps: BTreeMap<u64, u32>,
    pub kappa: BTreeMap<u64, u8>,
    pub b_sets: BTreeMap<u64, Vec<u64>>,
}

impl GammaMachinery {
    pub fn new(t: u32) -> Result<Self> {
        if !(1..=40).contains(&t) {
            return usage(format!("t = {t} outside [1, 40]"));
        }
        let gamma_t = gamma(t);
        let mut eps = BTreeMap::new();
        let mut kappa = BTreeMap::new();
        let mut b_sets = BTreeMap::new();
        for &j in &gamma_t {
            let e = epsilon_closed_form(t, j);
            eps.insert(j, e);
            kappa.insert(j, (e % 2) as u8);
            // B_j = {2^i j} capped below 2^t.
            let b: Vec<u64> = (0..t).map(|i| j << i).take_while(|&x| x < (1u64 << t)).collect();
            b_sets.insert(j, b);
        }
        Ok(Self { t, gamma_t, eps, kappa, b_sets })
    }

    /// True when `next` (built for t+1) follows from `self` by the four
    /// recurrences: old B-sets gain one element, new odd j start as {j},
    /// epsilons step by one or start at one.
    pub fn recurrence_holds(&self, next: &GammaMachinery) -> bool {
        if next.t != self.t + 1 {
            return false;
        }
        let half = 1u64 << self.t;
        next.gamma_t.iter().all(|&j| {
            if j < half {
                let mut grown = self.b_sets[&j].clone();
                grown.push(j << self.eps[&j]);
                next.b_sets[&j] == grown && next.eps[&j] == self.eps[&j] + 1
            } else {
                next.b_sets[&j] == vec![j] && next.eps[&j] == 1
            }
        })
    }
}

/// epsilon_j^(t): t for j = 1, t - k for 2^k + 1 <= j <= 2^(k+1) - 1.
pub fn epsilon_closed_form(t: u32, j: u64) -> u32 {
    if j == 1 {
        return t;
    }
    let k = 63 - (j - 1).leading_zeros();
    t - k
}

/// Which published coset-intersection pattern a query is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntersectionRule {
    /// m odd, h = (m-1)/2; i != j in A = [1, 2^(h-1) - 1]: C_{i+2^h}, C_{j+2^h} disjoint.
    ShiftedPairsDisjoint,
    /// m odd; i, j in A with j odd: C_{i+2^h} meets C_j iff (i, j) = (2^s i1, i1 + 2^(h-s)),
    /// i1 odd below 2^(h-1-s), s in 2..=h-2.
    ShiftedMeetsOddNarrow,
    /// m odd; i in A, j in Gamma_(h): same pattern with i1 in Gamma_(h-1-s), s in 1..=h-2.
    ShiftedMeetsOddWide,
    /// m odd; i in A, j in Gamma_(h): C_{i+2^h} meets C_{j+2^(h+1)} only for (1, 1).
    ShiftedMeetsDoubleShifted,
    /// m odd; j in Gamma_(h): C_j and C_{j+2^(h+1)} are disjoint.
    OddMissesDoubleShifted,
    /// m even, h = m/2; i in [1, 2^(h-1) - 1], j in Gamma_(h):
    /// C_{i+2^h} meets C_{j+2^h} only when i = j in Gamma_(h-1).
    EvenShiftedPairs,
    /// m even; i in [1, 2^h - 1], j in Gamma_(h): C_{i+2^(h+1)} meets C_j iff
    /// (i, j) = (2^s i1, i1 + 2^(h+1-s)), i1 in Gamma_(h-s), s in 2..=h-1.
    EvenDoubleShiftedMeetsOdd,
}

/// Outcome of one intersection query: the published pattern against brute force.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionVerdict {
    pub rule: IntersectionRule,
    pub i: u64,
    pub j: u64,
    pub predicted_meets: bool,
    pub observed_meets: bool,
}

impl IntersectionVerdict {
    pub fn agrees(&self) -> bool {
        self.predicted_meets == self.observed_meets
    }
}

fn odd_part(i: u64) -> (u32, u64) {
    let s = i.trailing_zeros();
    (s, i >> s)
}

fn in_gamma(t: u32, j: u64) -> bool {
    t > 0 && j % 2 == 1 && j < (1u64 << t)
}

/// Checks one published intersection pattern against the coset table.
///
/// This is a test harness: production code compares cosets directly and
/// never relies on the predicted verdict.
pub fn coset_intersection_expected(rule: IntersectionRule, i: u64, j: u64, cosets: &CosetTable) -> Result<IntersectionVerdict> {
    use IntersectionRule::*;
    let m = cosets.m();
    let odd = m % 2 == 1;
    let needs_odd = !matches!(rule, EvenShiftedPairs | EvenDoubleShiftedMeetsOdd);
    if needs_odd != odd {
        return usage(format!("{rule:?} needs {} m, got m = {m}", if needs_odd { "odd" } else { "even" }));
    }
    let h = if odd { (m - 1) / 2 } else { m / 2 };
    if h < 2 {
        return usage(format!("m = {m} too small for {rule:?}"));
    }
    let a_max = (1u64 << (h - 1)) - 1;
    let in_a = |x: u64| (1..=a_max).contains(&x);
    let meets = |x: u64, y: u64| cosets.same_coset((x % cosets.v() as u64) as u32, (y % cosets.v() as u64) as u32);

    let (predicted, observed) = match rule {
        ShiftedPairsDisjoint => {
            if !(in_a(i) && in_a(j) && i != j) {
                return usage("need distinct i, j in A");
            }
            (false, meets(i + (1 << h), j + (1 << h)))
        }
        ShiftedMeetsOddNarrow | ShiftedMeetsOddWide => {
            let j_ok = if rule == ShiftedMeetsOddNarrow { in_a(j) && j % 2 == 1 } else { in_gamma(h, j) };
            if !(in_a(i) && j_ok) {
                return usage("i or j outside the stated range");
            }
            let (s, i1) = odd_part(i);
            let (s_lo, i1_ok) = if rule == ShiftedMeetsOddNarrow {
                (2, s < h && s + 1 < h && i1 < (1u64 << (h - 1 - s)))
            } else {
                (1, s + 1 < h && in_gamma(h - 1 - s, i1))
            };
            let pattern = s >= s_lo && s + 2 <= h && i1_ok && j == i1 + (1u64 << (h - s));
            (pattern, meets(i + (1 << h), j))
        }
        ShiftedMeetsDoubleShifted => {
            if !(in_a(i) && in_gamma(h, j)) {
                return usage("i or j outside the stated range");
            }
            (i == 1 && j == 1, meets(i + (1 << h), j + (1 << (h + 1))))
        }
        OddMissesDoubleShifted => {
            if !in_gamma(h, j) {
                return usage("j outside Gamma_(h)");
            }
            (false, meets(j, j + (1 << (h + 1))))
        }
        EvenShiftedPairs => {
            if !(in_a(i) && in_gamma(h, j)) {
                return usage("i or j outside the stated range");
            }
            (i == j && in_gamma(h - 1, j), meets(i + (1 << h), j + (1 << h)))
        }
        EvenDoubleShiftedMeetsOdd => {
            if !((1..(1u64 << h)).contains(&i) && in_gamma(h, j)) {
                return usage("i or j outside the stated range");
            }
            let (s, i1) = odd_part(i);
            let pattern = (2..h).contains(&s) && in_gamma(h - s, i1) && j == i1 + (1u64 << (h + 1 - s));
            (pattern, meets(i + (1 << (h + 1)), j))
        }
    };
    Ok(IntersectionVerdict { rule, i, j, predicted_meets: predicted, observed_meets: observed })
}
