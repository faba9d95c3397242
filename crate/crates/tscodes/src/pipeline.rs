//! End-to-end runs for one (family, m): sequence, both span routes,
//! prediction, code, distance and bounds, compared with the bundled data.

use serde::Serialize;

use crate::codes::{
    bound_report, build_code, compute_distance, dual, even_weight_lift, hartmann_tzeng_bound, BoundReport, CodeRecord,
    Distance, DistanceMethod, DistanceOptions, HtCaps,
};
use crate::cosets::CosetTable;
use crate::error::{Error, Result};
use crate::expected::{self, ExpectedRow};
use crate::families::{Family, FamilyId};
use crate::gf2m::FieldSpec;
use crate::predict::{crosscheck, predict, CrossCheck, Prediction};
use crate::sequence::{analyze_bm, analyze_dft, SequenceAnalysis, TraceSequence};

/// Sequence, both analyses and the resulting code.
pub struct Construction {
    pub family: FamilyId,
    pub field: FieldSpec,
    pub cosets: CosetTable,
    pub sequence: TraceSequence,
    pub dft: SequenceAnalysis,
    pub bm: SequenceAnalysis,
    pub code: CodeRecord,
}

pub fn construct(id: FamilyId, field: &FieldSpec) -> Result<Construction> {
    let cosets = CosetTable::new(field.m())?;
    let sequence = TraceSequence::generate(id, field)?;
    let dft = analyze_dft(&sequence, field, &cosets)?;
    let bm = analyze_bm(&sequence);
    if dft.minimal_poly != bm.minimal_poly {
        return Err(Error::Consistency(format!(
            "{id}/m={}: Fourier and Berlekamp-Massey minimal polynomials differ",
            field.m()
        )));
    }
    let code = build_code(&dft.minimal_poly, field)?;
    Ok(Construction { family: id, field: field.clone(), cosets, sequence, dft, bm, code })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMode {
    /// Run the method router (may be an interval when the budget binds).
    Exact,
    /// Bounds only: [lifted HT, Singleton].
    Bounds,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub mode: DistanceMode,
    pub distance: DistanceOptions,
    pub ht_caps: HtCaps,
    pub with_dual: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { mode: DistanceMode::Exact, distance: DistanceOptions::default(), ht_caps: HtCaps::default(), with_dual: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeSummary {
    pub n: usize,
    pub k: usize,
    pub generator_hex: String,
    pub generator_pretty: String,
    pub defining_set_leaders: Vec<u32>,
    pub distance: Distance,
    pub method: Option<DistanceMethod>,
    pub bounds: BoundReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub family: FamilyId,
    pub m: u32,
    pub primitive_poly: String,
    pub extrapolated: bool,
    pub is_permutation: bool,
    pub span_dft: usize,
    pub span_bm: usize,
    pub prediction: Prediction,
    pub crosscheck: CrossCheck,
    pub code: CodeSummary,
    pub dual: Option<CodeSummary>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Distance by the requested mode, plus the bound report.
pub fn summarize(code: &CodeRecord, cosets: &CosetTable, opts: &VerifyOptions) -> Result<CodeSummary> {
    let (distance, method) = match opts.mode {
        DistanceMode::Exact => {
            let (d, m) = compute_distance(code, &opts.distance)?;
            (d, Some(m))
        }
        DistanceMode::Bounds => {
            let (ht, _) = hartmann_tzeng_bound(&code.defining_mask(), opts.ht_caps);
            let lo = even_weight_lift(code, ht).unwrap_or(ht);
            let hi = (code.n - code.k + 1) as u32;
            (Distance::between(lo.min(hi), hi), None)
        }
    };
    let bounds = bound_report(code, Some(distance), opts.ht_caps);
    Ok(CodeSummary {
        n: code.n,
        k: code.k,
        generator_hex: code.generator.to_hex(),
        generator_pretty: code.generator.to_string(),
        defining_set_leaders: cosets.leaders_of(code.defining_set.iter().copied()).into_iter().collect(),
        distance,
        method,
        bounds,
    })
}

fn overlaps(d: Distance, lo: u32, hi: u32) -> bool {
    d.lo() <= hi && lo <= d.hi()
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check { name, passed, detail: detail.into() }
}

pub fn verify(id: FamilyId, field: &FieldSpec, opts: &VerifyOptions) -> Result<VerifyReport> {
    let m = field.m();
    let extrapolated = id.validity(m).check()?;
    let c = construct(id, field)?;
    let mut checks = vec![check(
        "bm_equals_dft",
        c.dft.minimal_poly == c.bm.minimal_poly,
        format!("L_s = {} (Fourier) / {} (BM)", c.dft.linear_span, c.bm.linear_span),
    )];

    let is_permutation = Family::new(id, field)?.is_permutation();
    if let Some(claimed) = id.permutation_claim(m).expected() {
        checks.push(check("permutation_claim", claimed == is_permutation, format!("claimed {claimed}, observed {is_permutation}")));
    }

    // The zero polynomial has no closed form; it stops here as unsupported.
    let prediction = predict(id, field, &c.cosets)?;
    let xc = crosscheck(&prediction, &c.dft, field, &c.cosets)?;
    checks.push(check("prediction_matches", xc.passed(), xc.summary()));

    let code = summarize(&c.code, &c.cosets, opts)?;
    let (plo, phi) = prediction.distance;
    checks.push(check(
        "distance_in_predicted_interval",
        overlaps(code.distance, plo as u32, phi as u32),
        format!("computed {}, stated [{plo}, {phi}]", code.distance),
    ));
    let dual_summary = if opts.with_dual && c.code.k < c.code.n {
        let d = dual(&c.code);
        Some(summarize(&d, &c.cosets, opts)?)
    } else {
        None
    };

    let default_field = FieldSpec::default_for(m).map(|f| &f == field).unwrap_or(false);
    if let Some(printed) = expected::printed_generator(id, m) {
        if default_field {
            checks.push(check(
                "printed_generator",
                printed == c.code.generator,
                format!("printed degree {}, computed degree {}", printed.degree().unwrap_or(0), c.code.generator.degree().unwrap_or(0)),
            ));
        }
    }
    if let Some(row) = expected::lookup(id, m) {
        checks.extend(compare_expected(&row, &code, dual_summary.as_ref()));
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        family: id,
        m,
        primitive_poly: field.primitive_poly().to_string(),
        extrapolated,
        is_permutation,
        span_dft: c.dft.linear_span,
        span_bm: c.bm.linear_span,
        prediction,
        crosscheck: xc,
        code,
        dual: dual_summary,
        checks,
        passed,
    })
}

/// Published n, k and distance ranges against the computed ones.
pub fn compare_expected(row: &ExpectedRow, code: &CodeSummary, dual: Option<&CodeSummary>) -> Vec<Check> {
    let mut out = vec![check(
        "expected_parameters",
        row.n == code.n && row.k == code.k && overlaps(code.distance, row.d.0, row.d.1),
        format!("published [{},{},{}], computed [{},{},{}]", row.n, row.k, show(row.d), code.n, code.k, code.distance),
    )];
    if let (Some(dk), Some(dd), Some(d)) = (row.dual_k, row.dual_d, dual) {
        out.push(check(
            "expected_dual_parameters",
            dk == d.k && overlaps(d.distance, dd.0, dd.1),
            format!("published [{},{},{}], computed [{},{},{}]", row.n, dk, show(dd), d.n, d.k, d.distance),
        ));
    }
    out
}

fn show(d: (u32, u32)) -> String {
    if d.0 == d.1 {
        d.0.to_string()
    } else {
        format!("{}..{}", d.0, d.1)
    }
}

/// One line of the optimality table, recomputed.
#[derive(Clone, Debug, Serialize)]
pub struct Table2Line {
    pub row: u32,
    pub family: FamilyId,
    pub m: u32,
    pub published: String,
    pub computed: String,
    pub published_dual: String,
    pub computed_dual: String,
    pub code_opt: String,
    pub dual_opt: String,
    pub sphere_packing: String,
    pub agrees: bool,
}

pub fn table2_line(row: &ExpectedRow, opts: &VerifyOptions) -> Result<Table2Line> {
    let field = FieldSpec::default_for(row.m)?;
    let c = construct(row.family, &field)?;
    let code = summarize(&c.code, &c.cosets, opts)?;
    let d = dual(&c.code);
    let dual_summary = summarize(&d, &c.cosets, opts)?;
    let agrees = compare_expected(row, &code, Some(&dual_summary)).iter().all(|c| c.passed);
    Ok(Table2Line {
        row: row.row,
        family: row.family,
        m: row.m,
        published: format!("[{},{},{}]", row.n, row.k, show(row.d)),
        computed: format!("[{},{},{}]", code.n, code.k, code.distance),
        published_dual: row.dual_k.zip(row.dual_d).map(|(k, d)| format!("[{},{},{}]", row.n, k, show(d))).unwrap_or_default(),
        computed_dual: format!("[{},{},{}]", dual_summary.n, dual_summary.k, dual_summary.distance),
        code_opt: row.code_opt.clone(),
        dual_opt: row.dual_opt.clone().unwrap_or_default(),
        sphere_packing: code.bounds.sphere_packing.to_string(),
        agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f7_m4_end_to_end() {
        let f = FieldSpec::default_for(4).unwrap();
        let r = verify(FamilyId::F7, &f, &VerifyOptions::default()).unwrap();
        assert!(r.passed, "{:#?}", r.checks);
        assert_eq!((r.code.n, r.code.k, r.code.distance), (15, 11, Distance::exact(3)));
        assert_eq!(r.dual.as_ref().unwrap().distance, Distance::exact(8));
        assert!(r.extrapolated);
    }

    #[test]
    fn f3_m5_is_optimal() {
        let f = FieldSpec::default_for(5).unwrap();
        let r = verify(FamilyId::F3, &f, &VerifyOptions::default()).unwrap();
        assert!(r.passed, "{:#?}", r.checks);
        assert_eq!(r.code.distance, Distance::exact(8));
    }

    #[test]
    fn zero_polynomial_has_no_code() {
        let f = FieldSpec::default_for(4).unwrap();
        assert!(matches!(verify(FamilyId::F0, &f, &VerifyOptions::default()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn bounds_mode_interval() {
        let f = FieldSpec::default_for(6).unwrap();
        let opts = VerifyOptions { mode: DistanceMode::Bounds, ..Default::default() };
        let r = verify(FamilyId::F6, &f, &opts).unwrap();
        assert!(r.code.distance.contains(7));
    }
}
