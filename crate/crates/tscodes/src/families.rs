//! The catalog of polynomials F(x) fed into the trace-sequence construction.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::gf2m::{FieldSpec, MAX_M, MIN_M};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    /// The zero polynomial; a negative control.
    F0,
    /// x + x^(2^(h+1)-1) + x^(2^m-2^h+1), m even, h = m/2.
    F1Intro,
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
}

pub const ALL: [FamilyId; 10] = [
    FamilyId::F0,
    FamilyId::F1Intro,
    FamilyId::F1,
    FamilyId::F2,
    FamilyId::F3,
    FamilyId::F4,
    FamilyId::F5,
    FamilyId::F6,
    FamilyId::F7,
    FamilyId::F8,
];

impl FamilyId {
    pub fn name(self) -> &'static str {
        match self {
            FamilyId::F0 => "F0",
            FamilyId::F1Intro => "F1_intro",
            FamilyId::F1 => "f1",
            FamilyId::F2 => "f2",
            FamilyId::F3 => "f3",
            FamilyId::F4 => "f4",
            FamilyId::F5 => "f5",
            FamilyId::F6 => "f6",
            FamilyId::F7 => "f7",
            FamilyId::F8 => "f8",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            FamilyId::F0 => "0",
            FamilyId::F1Intro => "x + x^(2^((m+2)/2)-1) + x^(2^m-2^(m/2)+1)",
            FamilyId::F1 => "x + x^(2^((m+1)/2)-1) + x^(2^m-2^((m+1)/2)+1)",
            FamilyId::F2 => "x^(3*2^((m+1)/2)+4) + x^(2^((m+1)/2)+2) + x^(2^((m+1)/2))",
            FamilyId::F3 => "x + x^3 + x^(2^((m+1)/2)+1)",
            FamilyId::F4 => "x + x^3 + x^(2^m-2^((m+3)/2)+2)",
            FamilyId::F5 => "x^(2^(2h)-2^h+1), h = (m-1)/2",
            FamilyId::F6 => "x + x^(2^(m/2)) + x^(2^m-2^(m/2)+1)",
            FamilyId::F7 => "x + x^(2^(m/2+1)-1) + x^(2^m-2^(m/2+1)+2)",
            FamilyId::F8 => "x + x^(2^(m/2)) + x^(2^(m-1)-2^(m/2-1)+1)",
        }
    }

    /// Lowest m the closed forms are stated for, plus the parity.
    fn range(self) -> (bool, u32) {
        match self {
            FamilyId::F0 => (false, MIN_M),
            FamilyId::F1Intro => (false, 2),
            FamilyId::F1 => (true, 3),
            FamilyId::F2 => (true, 7),
            FamilyId::F3 => (true, 5),
            FamilyId::F4 => (true, 5),
            FamilyId::F5 => (true, 7),
            FamilyId::F6 => (false, 4),
            FamilyId::F7 => (false, 6),
            FamilyId::F8 => (false, 6),
        }
    }

    /// Below-range m that still has a worked example; allowed with a flag.
    fn extrapolated_m(self) -> Option<u32> {
        match self {
            FamilyId::F2 => Some(5),
            FamilyId::F5 => Some(5),
            FamilyId::F7 => Some(4),
            _ => None,
        }
    }

    pub fn validity(self, m: u32) -> Validity {
        if !(MIN_M..=MAX_M).contains(&m) {
            return Validity::Invalid(format!("m = {m} outside [{MIN_M}, {MAX_M}]"));
        }
        if self == FamilyId::F0 {
            return Validity::Valid;
        }
        let (odd, lo) = self.range();
        if (m % 2 == 1) != odd {
            return Validity::Invalid(format!("{} needs {} m", self.name(), if odd { "odd" } else { "even" }));
        }
        if m >= lo {
            return Validity::Valid;
        }
        if self.extrapolated_m() == Some(m) {
            return Validity::Extrapolated(format!("{} is stated for m >= {lo}; m = {m} has only a worked example", self.name()));
        }
        Validity::Invalid(format!("{} needs m >= {lo}", self.name()))
    }

    /// h as the closed forms use it: (m-1)/2 for odd families, m/2 for even.
    pub fn h(self, m: u32) -> u32 {
        if m % 2 == 1 {
            (m - 1) / 2
        } else {
            m / 2
        }
    }

    /// Exponents of F as exact integers (before any reduction mod 2^m - 1).
    pub fn exponents(self, m: u32) -> Vec<u64> {
        let h = self.h(m);
        let p = |k: u32| 1u64 << k;
        match self {
            FamilyId::F0 => vec![],
            FamilyId::F1Intro => vec![1, p(h + 1) - 1, p(m) - p(h) + 1],
            FamilyId::F1 => vec![1, p(h + 1) - 1, p(m) - p(h + 1) + 1],
            FamilyId::F2 => vec![3 * p(h + 1) + 4, p(h + 1) + 2, p(h + 1)],
            FamilyId::F3 => vec![1, 3, p(h + 1) + 1],
            FamilyId::F4 => vec![1, 3, p(m) - p(h + 2) + 2],
            FamilyId::F5 => vec![p(2 * h) - p(h) + 1],
            FamilyId::F6 => vec![1, p(h), p(m) - p(h) + 1],
            FamilyId::F7 => vec![1, p(h + 1) - 1, p(m) - p(h + 1) + 2],
            FamilyId::F8 => vec![1, p(h), p(m - 1) - p(h - 1) + 1],
        }
    }

    /// What is claimed about bijectivity at this m, if anything.
    pub fn permutation_claim(self, m: u32) -> PermutationClaim {
        use PermutationClaim::*;
        match self {
            FamilyId::F0 => Unknown,
            FamilyId::F1Intro | FamilyId::F1 | FamilyId::F2 | FamilyId::F3 | FamilyId::F4 | FamilyId::F5 => Always,
            FamilyId::F6 | FamilyId::F7 => {
                if m % 4 == 2 {
                    Conditional { holds: false, description: "not a permutation when m = 2 mod 4" }
                } else {
                    Unknown
                }
            }
            FamilyId::F8 => Conditional {
                holds: m % 6 != 0,
                description: "a permutation iff m != 0 mod 6",
            },
        }
    }
}

impl Serialize for FamilyId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        ALL.iter()
            .copied()
            .find(|f| f.name().to_ascii_lowercase() == key)
            .or(match key.as_str() {
                "f1intro" | "f1-intro" => Some(FamilyId::F1Intro),
                _ => None,
            })
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "note", rename_all = "snake_case")]
pub enum Validity {
    Valid,
    /// Outside the stated range but covered by a worked example.
    Extrapolated(String),
    Invalid(String),
}

impl Validity {
    pub fn usable(&self) -> bool {
        !matches!(self, Validity::Invalid(_))
    }

    pub fn check(self) -> Result<bool> {
        match self {
            Validity::Valid => Ok(false),
            Validity::Extrapolated(_) => Ok(true),
            Validity::Invalid(why) => usage(why),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PermutationClaim {
    Always,
    Conditional { holds: bool, description: &'static str },
    Unknown,
}

impl PermutationClaim {
    /// The claimed verdict, when one is made.
    pub fn expected(&self) -> Option<bool> {
        match self {
            PermutationClaim::Always => Some(true),
            PermutationClaim::Conditional { holds, .. } => Some(*holds),
            PermutationClaim::Unknown => None,
        }
    }
}

/// A family bound to a field: exponents precomputed and reduced.
#[derive(Clone, Debug)]
pub struct Family<'a> {
    pub id: FamilyId,
    pub field: &'a FieldSpec,
    /// Exponents reduced into [1, v]; none is ever 0 since all are positive.
    reduced: Vec<i64>,
}

impl<'a> Family<'a> {
    pub fn new(id: FamilyId, field: &'a FieldSpec) -> Result<Self> {
        let m = field.m();
        if id.exponents(m).contains(&0) {
            return usage(format!("{id} at m = {m} has a zero exponent"));
        }
        // x^e with e = k*v + r behaves as x^r on nonzero x, and as 0 at x = 0
        // since e >= 1. Reducing into [1, v] keeps both facts true.
        let v = field.v() as u64;
        let reduced = id.exponents(m).into_iter().map(|e| ((e - 1) % v + 1) as i64).collect();
        Ok(Self { id, field, reduced })
    }

    pub fn reduced_exponents(&self) -> &[i64] {
        &self.reduced
    }

    pub fn evaluate(&self, x: u32) -> u32 {
        if x == 0 {
            return 0;
        }
        self.reduced.iter().fold(0, |acc, &e| acc ^ self.field.pow(x, e).expect("x != 0"))
    }

    /// Direct term-by-term evaluation with unreduced exponents (slow oracle).
    pub fn evaluate_unreduced(&self, x: u32) -> u32 {
        self.id
            .exponents(self.field.m())
            .into_iter()
            .fold(0, |acc, e| acc ^ self.field.pow_slow(x, e))
    }

    /// Exhaustive image count.
    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.field.size() as usize];
        for x in 0..self.field.size() {
            let y = self.evaluate(x) as usize;
            if seen[y] {
                return false;
            }
            seen[y] = true;
        }
        true
    }
}

/// Largest e with 3^e | i.
pub fn exp3(i: u64) -> Result<u32> {
    if i == 0 {
        return Err(Error::Domain("exp3 of 0".into()));
    }
    let mut i = i;
    let mut e = 0;
    while i % 3 == 0 {
        i /= 3;
        e += 1;
    }
    Ok(e)
}

/// Every (family, m) pair usable for construction with m in `range`.
pub fn catalog_pairs(range: std::ops::RangeInclusive<u32>, include_f0: bool) -> Vec<(FamilyId, u32)> {
    let mut out = Vec::new();
    for id in ALL {
        if id == FamilyId::F0 && !include_f0 {
            continue;
        }
        for m in range.clone() {
            if id.validity(m).usable() {
                out.push((id, m));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in ALL {
            assert_eq!(id.name().parse::<FamilyId>().unwrap(), id);
        }
        assert!("f9".parse::<FamilyId>().is_err());
    }

    #[test]
    fn validity_table() {
        use FamilyId::*;
        assert_eq!(F1.validity(3), Validity::Valid);
        assert!(!F1.validity(4).usable());
        assert!(matches!(F2.validity(5), Validity::Extrapolated(_)));
        assert!(!F2.validity(3).usable());
        assert!(matches!(F7.validity(4), Validity::Extrapolated(_)));
        assert!(matches!(F5.validity(5), Validity::Extrapolated(_)));
        assert_eq!(F8.validity(6), Validity::Valid);
        assert!(!F8.validity(4).usable());
        assert!(!F6.validity(21).usable());
    }

    #[test]
    fn evaluation_examples() {
        let f5 = FieldSpec::default_for(5).unwrap();
        let fam = Family::new(FamilyId::F3, &f5).unwrap();
        assert_eq!(fam.evaluate(0), 0);
        assert_eq!(fam.evaluate(1), 1);
        let f4 = FieldSpec::default_for(4).unwrap();
        let f6 = Family::new(FamilyId::F6, &f4).unwrap();
        let a = f4.alpha();
        let expect = a ^ f4.alpha_pow(4) ^ f4.alpha_pow(13);
        assert_eq!(f6.evaluate(a), expect);
        assert_eq!(FamilyId::F6.exponents(4), vec![1, 4, 13]);
    }

    #[test]
    fn reduction_matches_unreduced_evaluation() {
        for (id, m) in catalog_pairs(2..=9, true) {
            let f = FieldSpec::default_for(m).unwrap();
            let fam = Family::new(id, &f).unwrap();
            for x in 0..f.size() {
                assert_eq!(fam.evaluate(x), fam.evaluate_unreduced(x), "{id} m={m} x={x}");
            }
        }
    }

    #[test]
    fn permutation_examples() {
        let check = |id, m| Family::new(id, &FieldSpec::default_for(m).unwrap()).unwrap().is_permutation();
        assert!(check(FamilyId::F3, 5));
        assert!(!check(FamilyId::F6, 6));
        assert!(!check(FamilyId::F8, 6));
        assert!(!check(FamilyId::F0, 4));
    }

    #[test]
    fn exp3_examples() {
        assert_eq!(exp3(1).unwrap(), 0);
        assert_eq!(exp3(9).unwrap(), 2);
        assert!(exp3(0).is_err());
        for m in (2..=30u32).step_by(4) {
            assert!(exp3((1u64 << (m / 2)) + 1).unwrap() >= 1, "m={m}");
        }
    }

    #[test]
    fn kasami_exponent_identity() {
        for m in (5..=31u32).step_by(2) {
            let h = (m - 1) / 2;
            let d = (1u128 << (2 * h)) - (1u128 << h) + 1;
            assert_eq!(d * ((1u128 << h) + 1), (1u128 << (3 * h)) + 1);
            let v = (1u128 << m) - 1;
            assert_eq!(d * ((1u128 << h) + 1) % v, ((1u128 << (3 * h)) + 1) % v);
        }
    }
}
