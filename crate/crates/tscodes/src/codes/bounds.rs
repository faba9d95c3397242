//! BCH and Hartmann-Tzeng lower bounds from the defining set, and the
//! Hamming-bound optimality test.
//!
//! Runs are searched under every unit stride, so the bounds are the same for
//! Z and -Z: S + T inside -Z is (-S) + (-T) inside Z, and -S is again a run.
//! Callers never need to track which of g and its reciprocal they hold.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::{CodeRecord, Distance};
use crate::error::{usage, Result};

/// S = {start + i * stride : i < delta - 1}, T = {j * step : j <= s}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HtWitness {
    pub start: u32,
    pub stride: u32,
    pub delta: u32,
    pub step: u32,
    pub s: u32,
}

impl HtWitness {
    pub fn bound(&self) -> u32 {
        self.delta + self.s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HtCaps {
    pub max_delta: u32,
    pub max_s: u32,
}

impl Default for HtCaps {
    fn default() -> Self {
        Self { max_delta: 64, max_s: 64 }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// One unit from each class of Z_n^* modulo multiplication by 2 and -1.
fn unit_representatives(n: u32) -> Vec<u32> {
    let n64 = n as u64;
    let mut seen = vec![false; n as usize];
    let mut reps = Vec::new();
    for u in 1..n {
        if seen[u as usize] || gcd(u as u64, n64) != 1 {
            continue;
        }
        reps.push(u);
        let mut x = u as u64;
        loop {
            seen[x as usize] = true;
            seen[((n64 - x) % n64) as usize] = true;
            x = 2 * x % n64;
            if x == u as u64 {
                break;
            }
        }
    }
    if n == 1 {
        reps.push(0);
    }
    reps
}

/// run[i] = length of the stride-1 run of `mask` starting at i, capped.
fn runs(mask: &[bool], cap: u32) -> Vec<u32> {
    let n = mask.len();
    let mut run = vec![0u32; n];
    if mask.iter().all(|&b| b) {
        run.fill(cap);
        return run;
    }
    let mut cur = 0u32;
    for idx in (0..2 * n).rev() {
        let i = idx % n;
        cur = if mask[i] { (cur + 1).min(cap) } else { 0 };
        run[i] = cur;
    }
    run
}

fn scaled(mask: &[bool], u: u32) -> Vec<bool> {
    let n = mask.len() as u64;
    (0..n).map(|j| mask[(u as u64 * j % n) as usize]).collect()
}

/// 1 + the longest run of any unit stride inside Z.
pub fn bch_bound(mask: &[bool]) -> (u32, Option<HtWitness>) {
    let n = mask.len() as u32;
    let mut best = (1, None);
    for u in unit_representatives(n) {
        let r = runs(&scaled(mask, u), n);
        if let Some((a, &len)) = r.iter().enumerate().max_by_key(|&(i, &l)| (l, std::cmp::Reverse(i))) {
            if len + 1 > best.0 {
                let w = HtWitness { start: (u as u64 * a as u64 % n as u64) as u32, stride: u, delta: len + 1, step: 1, s: 0 };
                best = ((len + 1).min(n), Some(w));
            }
        }
    }
    best
}

/// Largest delta + s over all witnesses inside the caps, never below BCH.
pub fn hartmann_tzeng_bound(mask: &[bool], caps: HtCaps) -> (u32, Option<HtWitness>) {
    let n = mask.len();
    let (mut best, mut witness) = bch_bound(mask);
    if n < 3 {
        return (best, witness);
    }
    let cap = caps.max_delta.saturating_sub(1).max(1);
    for u in unit_representatives(n as u32) {
        let run = runs(&scaled(mask, u), cap);
        let members: Vec<usize> = (0..n).filter(|&a| run[a] > 0).collect();
        for b2 in 1..n {
            let g = gcd(b2 as u64, n as u64) as u32;
            if g >= caps.max_delta {
                continue;
            }
            for &a in &members {
                let mut mn = run[a];
                for s in 1..=caps.max_s {
                    if mn + 1 + caps.max_s <= best {
                        break;
                    }
                    mn = mn.min(run[(a + s as usize * b2) % n]);
                    if mn == 0 {
                        break;
                    }
                    if g < mn + 1 && mn + 1 + s > best {
                        best = mn + 1 + s;
                        let un = u as u64;
                        witness = Some(HtWitness {
                            start: (un * a as u64 % n as u64) as u32,
                            stride: u,
                            delta: mn + 1,
                            step: (un * b2 as u64 % n as u64) as u32,
                            s,
                        });
                    }
                }
            }
        }
    }
    (best, witness)
}

/// Checks a witness directly: unit stride, gcd(step, n) < delta, S + T inside the set.
pub fn ht_witness_holds(mask: &[bool], w: &HtWitness) -> bool {
    let n = mask.len() as u64;
    if n == 0 || w.delta < 2 || gcd(w.stride as u64, n) != 1 {
        return false;
    }
    if w.s > 0 && gcd(w.step as u64, n) >= w.delta as u64 {
        return false;
    }
    (0..w.delta as u64 - 1).all(|i| {
        (0..=w.s as u64).all(|j| mask[((w.start as u64 + i * w.stride as u64 + j * w.step as u64) % n) as usize])
    })
}

fn ball(n: u64, r: u64) -> BigUint {
    let mut term = BigUint::one();
    let mut sum = BigUint::one();
    for i in 1..=r.min(n) {
        term = term * (n - i + 1) / i;
        sum += &term;
    }
    sum
}

/// True when the Hamming bound rules out every [n, k, d] code; for even d the
/// punctured [n-1, k, d-1] code is tested as well.
pub fn hamming_excludes(n: u64, k: u64, d: u64) -> bool {
    if k > n || d > n + 1 {
        return true;
    }
    if d == 0 || k == 0 {
        return false;
    }
    let fails = |n: u64, d: u64| ball(n, (d - 1) / 2) > (BigUint::one() << (n - k));
    fails(n, d) || (d % 2 == 0 && n > k && fails(n - 1, d - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SphereVerdict {
    /// No [n, k, d + 1] code passes the Hamming bound.
    Optimal,
    /// The Hamming bound leaves room for a larger distance; optimality is not decided here.
    NotCertified,
    /// The interval straddles the threshold.
    Undecided,
}

impl std::fmt::Display for SphereVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Optimal => "optimal",
            Self::NotCertified => "not_certified",
            Self::Undecided => "undecided",
        })
    }
}

pub fn sphere_packing_check(n: u64, k: u64, d: Distance) -> SphereVerdict {
    let certified = |d: u32| hamming_excludes(n, k, d as u64 + 1);
    match (certified(d.lo()), certified(d.hi())) {
        (true, _) => SphereVerdict::Optimal,
        (false, false) => SphereVerdict::NotCertified,
        (false, true) => SphereVerdict::Undecided,
    }
}

/// Rounds a lower bound up to even; only valid for even-weight codes.
pub fn even_weight_lift(code: &CodeRecord, lower: u32) -> Result<u32> {
    if !code.is_even_weight() {
        return usage("x + 1 does not divide the generator");
    }
    Ok(lower + lower % 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub bch: u32,
    #[serde(rename = "ht")]
    pub hartmann_tzeng: u32,
    pub ht_witness: Option<HtWitness>,
    pub singleton_upper: u32,
    pub sphere_packing: SphereVerdict,
}

/// Bounds for `code`; the sphere-packing verdict uses `distance` when given,
/// else the interval [HT (lifted), Singleton].
pub fn bound_report(code: &CodeRecord, distance: Option<Distance>, caps: HtCaps) -> BoundReport {
    let mask = code.defining_mask();
    let (bch, _) = bch_bound(&mask);
    let (ht, w) = hartmann_tzeng_bound(&mask, caps);
    let singleton = (code.n - code.k + 1) as u32;
    let lo = even_weight_lift(code, ht).unwrap_or(ht);
    let d = distance.unwrap_or(Distance::between(lo.min(singleton), singleton));
    BoundReport {
        bch,
        hartmann_tzeng: ht,
        ht_witness: w,
        singleton_upper: singleton,
        sphere_packing: sphere_packing_check(code.n as u64, code.k as u64, d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::build_code;
    use crate::gf2m::FieldSpec;

    fn mask(n: usize, set: &[usize]) -> Vec<bool> {
        (0..n).map(|i| set.contains(&i)).collect()
    }

    #[test]
    fn bch_on_simple_sets() {
        assert_eq!(bch_bound(&[false; 15]).0, 1);
        // {1, 2, 4, 8} under stride 1: run {1, 2}.
        assert_eq!(bch_bound(&mask(15, &[1, 2, 4, 8])).0, 3);
        // {0, 1, 2, 4, 8, ...} has 0, 1, 2.
        let f = FieldSpec::default_for(5).unwrap();
        let c = build_code(&"x^6+x^2+x+1".parse().unwrap(), &f).unwrap();
        let (b, w) = bch_bound(&c.defining_mask());
        assert!(b >= 4);
        assert!(ht_witness_holds(&c.defining_mask(), &w.unwrap()));
    }

    #[test]
    fn bch_sees_unit_strides() {
        // C_1 u C_3 mod 31 holds 1..=4; scaling by the unit 3 hides that run
        // from stride 1 but not from stride 3^-1.
        let z = [1, 2, 4, 8, 16, 3, 6, 12, 24, 17];
        let m = mask(31, &z);
        let scaled: Vec<usize> = z.iter().map(|&i| i * 3 % 31).collect();
        let m3 = mask(31, &scaled);
        assert!(bch_bound(&m).0 >= 5);
        assert_eq!(bch_bound(&m3).0, bch_bound(&m).0);
        let (_, w) = bch_bound(&m3);
        assert!(ht_witness_holds(&m3, &w.unwrap()));
    }

    #[test]
    fn ht_reduces_to_bch_on_a_single_run() {
        let m = mask(31, &[1, 2, 3, 4]);
        let (h, _) = hartmann_tzeng_bound(&m, HtCaps::default());
        assert!(h >= bch_bound(&m).0);
    }

    #[test]
    fn ht_finds_a_stride_two_chain() {
        // S = {1}, T = {0, 2, 4, 6}: d >= 2 + 3 = 5, while no run is longer than one.
        let m = mask(31, &[1, 3, 5, 7]);
        assert_eq!(bch_bound(&m).0, 2);
        let (h, w) = hartmann_tzeng_bound(&m, HtCaps::default());
        assert!(h >= 5);
        assert!(ht_witness_holds(&m, &w.unwrap()));
        let stated = HtWitness { start: 1, stride: 1, delta: 2, step: 2, s: 3 };
        assert!(ht_witness_holds(&m, &stated));
        assert!(!ht_witness_holds(&m, &HtWitness { s: 4, ..stated }));
    }

    #[test]
    fn witness_gcd_rule() {
        // step 3 shares a factor 3 with 15, and delta = 2 is not above it.
        let m = mask(15, &[1, 4, 7, 10, 13]);
        let w = HtWitness { start: 1, stride: 1, delta: 2, step: 3, s: 4 };
        assert!(!ht_witness_holds(&m, &w));
    }

    #[test]
    fn hamming_bound_cases() {
        assert!(hamming_excludes(31, 25, 5));
        assert_eq!(sphere_packing_check(31, 25, Distance::exact(4)), SphereVerdict::Optimal);
        // Perfect Hamming code: the punctured test rules out [7,4,4].
        assert_eq!(sphere_packing_check(7, 4, Distance::exact(3)), SphereVerdict::Optimal);
        assert!(!hamming_excludes(7, 4, 3));
        for m in [5u64, 7, 9] {
            let n = (1 << m) - 1;
            assert!(hamming_excludes(n, n - 1 - m, 5), "m={m}");
        }
        assert_eq!(sphere_packing_check(127, 105, Distance::exact(6)), SphereVerdict::NotCertified);
        assert_eq!(sphere_packing_check(31, 25, Distance::between(3, 4)), SphereVerdict::Undecided);
    }

    #[test]
    fn lift() {
        let f = FieldSpec::default_for(5).unwrap();
        let c = build_code(&"x^6+x^2+x+1".parse().unwrap(), &f).unwrap();
        assert_eq!(even_weight_lift(&c, 7).unwrap(), 8);
        assert_eq!(even_weight_lift(&c, 4).unwrap(), 4);
        let odd = build_code(&"x^5+x^2+1".parse().unwrap(), &f).unwrap();
        assert!(even_weight_lift(&odd, 3).is_err());
    }

    #[test]
    fn unit_classes_cover_the_group() {
        let reps = unit_representatives(63);
        // phi(63) = 36, orbits of <2, -1> have 12 elements.
        assert_eq!(reps.len(), 3);
    }
}
