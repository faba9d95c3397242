//! Closed-form predictions of g_s and L_s, written as coset-leader sets, and
//! the cross-check against what the sequence analysis actually finds.
//!
//! Each family's generator is a product of m_{alpha^-i}(x) over an explicit
//! list of indices i built from Gamma_(t) sets. We keep that list verbatim
//! (`display`), then reduce it over GF(2): a coset named an even number of
//! times cancels out of the trace sum, so it is dropped from `leader_set`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::codes::HtWitness;
use crate::cosets::{gamma, gamma_minus, CosetTable};
use crate::error::{Error, Result};
use crate::families::FamilyId;
use crate::gf2m::FieldSpec;
use crate::polyring::{minimal_polynomial, BinaryPoly};
use crate::sequence::{assemble_generator, SequenceAnalysis};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub family: FamilyId,
    pub m: u32,
    /// Indices i of the factors m_{alpha^-i}, as listed, repeats kept; 0 is x - 1.
    pub display: Vec<u64>,
    /// Leaders that survive GF(2) reduction of `display`.
    pub leader_set: Vec<u32>,
    /// Leaders named more than once by `display`.
    pub collisions: Vec<u32>,
    /// Sum of coset sizes over `leader_set`; this is the predicted span.
    pub predicted_span: u64,
    /// Sum of coset sizes over `display`, repeats counted.
    pub display_span: u64,
    /// The closed-form span formula, when one is stated for this m.
    pub formula_span: Option<u64>,
    pub predicted_dim: u64,
    /// [d_lo, d_hi] as stated for the family.
    pub distance: (u64, u64),
    pub extrapolated: bool,
    pub source: String,
}

impl Prediction {
    /// Product of m_{alpha^-l} over `leader_set`.
    pub fn generator(&self, field: &FieldSpec, cosets: &CosetTable) -> Result<BinaryPoly> {
        assemble_generator(&self.leader_set, field, cosets)
    }

    /// Literal product over `display`, repeated factors and all.
    pub fn display_generator(&self, field: &FieldSpec, cosets: &CosetTable) -> Result<BinaryPoly> {
        let mut g = BinaryPoly::one();
        for &i in &self.display {
            let neg = cosets.reduce(-(i as i64));
            g = g.mul(&minimal_polynomial(neg, field, cosets)?);
        }
        Ok(g)
    }

    /// The span the closed form asserts: the formula when stated, else the set count.
    pub fn claimed_span(&self) -> u64 {
        self.formula_span.unwrap_or(self.predicted_span)
    }
}

fn shifted(set: Vec<u64>, by: u64) -> impl Iterator<Item = u64> {
    set.into_iter().map(move |i| i + by)
}

fn without_one(set: Vec<u64>) -> Vec<u64> {
    set.into_iter().filter(|&i| i != 1).collect()
}

/// The factor list for one family, and a label for where it comes from.
fn display_indices(id: FamilyId, m: u32) -> Result<(Vec<u64>, &'static str)> {
    let h = id.h(m);
    let p = |k: u32| 1u64 << k;
    let mut d: Vec<u64> = Vec::new();
    let label = match id {
        FamilyId::F0 => return Err(Error::Unsupported("the zero polynomial has no code to predict".into())),
        FamilyId::F1Intro => {
            d.push(1);
            "single coset C_1 (Hamming-equivalent)"
        }
        FamilyId::F1 => {
            d.extend([0, 1]);
            "(x-1) m_{a^-1}"
        }
        FamilyId::F2 => {
            d.extend([0, 3, 1 + p(h - 1), 1 + p(h - 1) + p(h)]);
            "(x-1) m_{a^-3} m_{a^-(1+2^(h-1))} m_{a^-(1+2^(h-1)+2^h)}"
        }
        FamilyId::F3 => {
            d.extend([0, 1, 3, p(h) + 1]);
            "(x-1) m_{a^-1} m_{a^-3} m_{a^-(2^h+1)}"
        }
        FamilyId::F4 => {
            d.extend(shifted(gamma(h - 1), p(h)));
            for j in (1..=h.saturating_sub(2)).filter(|j| j % 2 == 0) {
                d.extend(shifted(gamma(h - j), p(h + 1 - j)));
                d.extend(shifted(gamma_minus(h - j, h - 1 - j), p(h - j)));
            }
            if m % 4 == 1 {
                d.extend([3, 1, 0]);
                "Gamma products, m = 1 mod 4 (ends m_{a^-3} m_{a^-1} (x-1))"
            } else {
                d.extend([5, 0]);
                "Gamma products, m = 3 mod 4 (ends m_{a^-5} (x-1))"
            }
        }
        FamilyId::F5 => {
            d.extend(shifted(without_one(gamma(h)), p(h + 1)));
            d.extend(shifted(without_one(gamma(h - 1)), p(h)));
            for j in (1..=h.saturating_sub(3)).filter(|j| j % 2 == 1) {
                d.extend(shifted(gamma_minus(h - j, h - 1 - j), p(h - j)));
                d.extend(shifted(gamma(h - 2 - j), p(h - 1 - j)));
            }
            if m % 4 == 1 {
                d.extend([3, 1, 0]);
                "Kasami Gamma products, m = 1 mod 4 (ends m_{a^-3} m_{a^-1} (x-1))"
            } else {
                d.extend([7, 0]);
                "Kasami Gamma products, m = 3 mod 4 (ends m_{a^-7} (x-1))"
            }
        }
        FamilyId::F6 => {
            d.extend(shifted(without_one(gamma(h)), p(h)));
            let parity = if h % 2 == 0 { 0 } else { 1 };
            for j in (1..=h.saturating_sub(2)).filter(|j| j % 2 == parity) {
                d.extend(shifted(gamma(j), p(j)));
            }
            if h % 2 == 0 {
                d.push(1);
                "Gamma products, m = 0 mod 4 (ends m_{a^-1})"
            } else {
                "Gamma products, m = 2 mod 4"
            }
        }
        FamilyId::F7 => {
            d.extend(shifted(gamma_minus(h, h - 1), p(h)));
            for j in 1..=h.saturating_sub(2) {
                d.extend(shifted(gamma(j), p(j + 1)));
            }
            "Gamma products over j = 1..h-2"
        }
        FamilyId::F8 => {
            d.extend(shifted(gamma(h), p(h + 1)));
            d.extend(shifted(gamma(h - 1), p(h)));
            for j in (1..=h.saturating_sub(3)).filter(|j| j % 2 == 1) {
                d.extend(shifted(gamma_minus(h - j, h - 1 - j), p(h - j)));
                d.extend(shifted(gamma(h - 2 - j), p(h - 1 - j)));
            }
            if m % 4 == 0 {
                d.extend([3, 1]);
                "Gamma products, m = 0 mod 4 (ends m_{a^-3} m_{a^-1})"
            } else {
                d.push(7);
                "Gamma products, m = 2 mod 4 (ends m_{a^-7})"
            }
        }
    };
    Ok((d, label))
}

/// The stated span formula, if this m is inside its hypothesis.
pub fn formula_span(id: FamilyId, m: u32) -> Option<u64> {
    let mm = m as u64;
    let h = id.h(m);
    let p = |k: u32| 1u64 << k;
    if !matches!(id.validity(m), crate::families::Validity::Valid) {
        return None;
    }
    Some(match id {
        FamilyId::F0 => return None,
        FamilyId::F1Intro => mm,
        FamilyId::F1 => mm + 1,
        FamilyId::F2 | FamilyId::F3 => 3 * mm + 1,
        FamilyId::F4 if m % 4 == 1 => 1 + mm * (p(h - 1) + 1),
        FamilyId::F4 => 1 + mm * (p(h - 1) - 1),
        FamilyId::F5 if m % 4 == 1 => 1 + mm * (p(h) - 1),
        FamilyId::F5 => 1 + mm * (p(h) - 3),
        FamilyId::F6 if m % 4 == 0 => mm * (p(h + 1) - 2) / 3,
        FamilyId::F6 => mm * (p(h + 1) - 4) / 3,
        FamilyId::F7 => mm * (p(h - 1) - 1),
        FamilyId::F8 if m == 6 => 6 * mm - 1,
        FamilyId::F8 if m % 4 == 0 => mm * (p(h) + 1) - h as u64,
        FamilyId::F8 => mm * (p(h) - 1) - h as u64,
    })
}

/// Stated [lower, upper] for d(C_s), given the span L.
fn distance_interval(id: FamilyId, m: u32, span: u64) -> (u64, u64) {
    let h = id.h(m);
    let p = |k: u32| 1u64 << k;
    let (lo, hi) = match id {
        FamilyId::F0 => (1, 1),
        FamilyId::F1Intro => (3, 3),
        FamilyId::F1 => (4, 4),
        FamilyId::F2 => (4, 8),
        FamilyId::F3 => (8, 8),
        FamilyId::F4 => {
            // 2^((m-5)/2) + 2, floored at 8 when m = 1 mod 4.
            let base = p(h - 2) + 2;
            (if m % 4 == 1 { base.max(8) } else { base }, span)
        }
        FamilyId::F5 => (p(h - 1), span),
        FamilyId::F6 => (p(h - 1), span + 1),
        FamilyId::F7 => (p(h - 2) + 1, span + 1),
        FamilyId::F8 => {
            let base = p(h - 1) + 1;
            (if m % 4 == 0 { base.max(7) } else { base }, span + 1)
        }
    };
    (lo.max(2), hi.max(lo.max(2)))
}

/// The Hartmann-Tzeng witness behind the stated lower bound, translated onto Z.
///
/// Each is written for the reciprocal of g_s: S = {a}, T = {0, 2, .., 2s}, so
/// on Z itself it reads S = {-a}, step -2. Only f4 (odd m), f5, f6 and f8 come
/// with an explicit one.
pub fn stated_ht_witness(id: FamilyId, m: u32) -> Option<HtWitness> {
    if !id.validity(m).usable() {
        return None;
    }
    let n = (1u64 << m) - 1;
    let h = id.h(m);
    let p = |k: u32| 1u64 << k;
    let (a, s) = match id {
        FamilyId::F4 if m % 2 == 1 && h >= 3 => (1 + p(h), p(h - 2) - 1),
        FamilyId::F5 if h >= 2 => (3 + p(h + 1), p(h - 1) - 2),
        FamilyId::F6 if h >= 2 => (3 + p(h), p(h - 1) - 2),
        FamilyId::F8 if h >= 2 => (1 + p(h + 1), p(h - 1) - 1),
        _ => return None,
    };
    Some(HtWitness { start: ((n - a % n) % n) as u32, stride: 1, delta: 2, step: (n - 2) as u32, s: s as u32 })
}

pub fn predict(id: FamilyId, field: &FieldSpec, cosets: &CosetTable) -> Result<Prediction> {
    let m = field.m();
    let extrapolated = id.validity(m).check().map_err(|e| Error::Unsupported(e.to_string()))?;
    let (display, label) = display_indices(id, m)?;
    let v = cosets.v() as u64;

    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    let mut display_span = 0u64;
    for &i in &display {
        let l = cosets.leader((i % v) as u32);
        *counts.entry(l).or_default() += 1;
        display_span += cosets.size(l) as u64;
    }
    let leader_set: Vec<u32> = counts.iter().filter(|(_, &c)| c % 2 == 1).map(|(&l, _)| l).collect();
    let collisions: Vec<u32> = counts.iter().filter(|(_, &c)| c > 1).map(|(&l, _)| l).collect();
    let predicted_span: u64 = leader_set.iter().map(|&l| cosets.size(l) as u64).sum();
    let formula = formula_span(id, m);
    let claimed = formula.unwrap_or(predicted_span);
    Ok(Prediction {
        family: id,
        m,
        display,
        leader_set,
        collisions,
        predicted_span,
        display_span,
        formula_span: formula,
        predicted_dim: v - predicted_span,
        distance: distance_interval(id, m, claimed),
        extrapolated,
        source: format!("{id}: {label}"),
    })
}

/// Outcome of comparing a prediction with a computed analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub family: FamilyId,
    pub m: u32,
    pub computed_span: u64,
    pub predicted_span: u64,
    pub formula_span: Option<u64>,
    /// Leaders the prediction has but the sequence lacks.
    pub extra_leaders: Vec<u32>,
    /// Leaders the sequence has but the prediction lacks.
    pub missing_leaders: Vec<u32>,
    pub generator_match: bool,
    /// Leaders the closed form names more than once.
    pub collisions: Vec<u32>,
}

impl CrossCheck {
    pub fn span_match(&self) -> bool {
        self.computed_span == self.predicted_span
    }

    /// Formula agrees with the leader-set count (vacuous without a formula).
    pub fn formula_consistent(&self) -> bool {
        self.formula_span.is_none_or(|f| f == self.predicted_span)
    }

    pub fn leaders_match(&self) -> bool {
        self.extra_leaders.is_empty() && self.missing_leaders.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.span_match() && self.formula_consistent() && self.leaders_match() && self.generator_match && self.collisions.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            return format!("{}/m={}: match, L_s = {}", self.family, self.m, self.computed_span);
        }
        let mut parts = vec![format!("{}/m={}: MISMATCH computed L_s = {}, set count = {}", self.family, self.m, self.computed_span, self.predicted_span)];
        if let Some(f) = self.formula_span {
            parts.push(format!("formula = {f}"));
        }
        if !self.extra_leaders.is_empty() {
            parts.push(format!("extra leaders {:?}", self.extra_leaders));
        }
        if !self.missing_leaders.is_empty() {
            parts.push(format!("missing leaders {:?}", self.missing_leaders));
        }
        if !self.collisions.is_empty() {
            parts.push(format!("repeated cosets {:?}", self.collisions));
        }
        if !self.generator_match {
            parts.push("generator differs".into());
        }
        parts.join("; ")
    }
}

pub fn crosscheck(pred: &Prediction, computed: &SequenceAnalysis, field: &FieldSpec, cosets: &CosetTable) -> Result<CrossCheck> {
    if field.m() != pred.m {
        return Err(Error::Usage("prediction and field disagree on m".into()));
    }
    let got = computed.leaders(cosets);
    let extra = pred.leader_set.iter().copied().filter(|l| got.binary_search(l).is_err()).collect();
    let missing = got.iter().copied().filter(|l| pred.leader_set.binary_search(l).is_err()).collect();
    let generator_match = pred.generator(field, cosets)? == computed.minimal_poly;
    Ok(CrossCheck {
        family: pred.family,
        m: pred.m,
        computed_span: computed.linear_span as u64,
        predicted_span: pred.predicted_span,
        formula_span: pred.formula_span,
        extra_leaders: extra,
        missing_leaders: missing,
        generator_match,
        collisions: pred.collisions.clone(),
    })
}
