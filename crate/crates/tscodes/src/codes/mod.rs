//! Binary cyclic codes of length v = 2^m - 1 given by a generator polynomial,
//! with exact and certified minimum-distance computation.

pub mod bounds;
pub mod bz;
pub mod enumerate;
pub(crate) mod words;

use std::fmt;

use serde::Serialize;

use crate::error::{usage, Error, Result};
use crate::gf2m::FieldSpec;
use crate::polyring::BinaryPoly;

pub use bounds::{
    bch_bound, bound_report, even_weight_lift, hartmann_tzeng_bound, hamming_excludes, ht_witness_holds,
    sphere_packing_check, BoundReport, HtCaps, HtWitness, SphereVerdict,
};
pub use bz::{min_distance_bz, BzOptions, BzOutcome};
pub use enumerate::{macwilliams, min_distance_enum, weight_enumerator, DEFAULT_THRESHOLD_K};

/// Minimum distance, exact or certified to lie in [lo, hi].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact { d: u32 },
    Interval { lo: u32, hi: u32 },
}

impl Distance {
    pub fn exact(d: u32) -> Self {
        Self::Exact { d }
    }

    /// Collapses to `Exact` when the ends meet.
    pub fn between(lo: u32, hi: u32) -> Self {
        if lo >= hi {
            Self::Exact { d: hi }
        } else {
            Self::Interval { lo, hi }
        }
    }

    pub fn lo(&self) -> u32 {
        match *self {
            Self::Exact { d } => d,
            Self::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> u32 {
        match *self {
            Self::Exact { d } => d,
            Self::Interval { hi, .. } => hi,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Self::Exact { .. })
    }

    pub fn contains(&self, d: u32) -> bool {
        (self.lo()..=self.hi()).contains(&d)
    }
}

/// Serialized as {kind, lo, hi} whether exact or not.
impl Serialize for Distance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Distance", 3)?;
        st.serialize_field("kind", if self.is_exact() { "exact" } else { "interval" })?;
        st.serialize_field("lo", &self.lo())?;
        st.serialize_field("hi", &self.hi())?;
        st.end()
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Exact { d } => write!(f, "{d}"),
            Self::Interval { lo, hi } => write!(f, "{lo}..{hi}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    /// All 2^k codewords.
    Enumeration,
    /// All 2^(n-k) dual codewords, then the MacWilliams transform.
    DualMacwilliams,
    /// Information-window enumeration with the cyclic lower bound, ISD for the upper end.
    ChenBz,
}

impl fmt::Display for DistanceMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Enumeration => "enumeration",
            Self::DualMacwilliams => "dual_macwilliams",
            Self::ChenBz => "chen_bz",
        })
    }
}

#[derive(Clone)]
pub struct CodeRecord {
    pub n: usize,
    pub k: usize,
    pub generator: BinaryPoly,
    /// h(x) = (x^n + 1) / g(x).
    pub check_poly: BinaryPoly,
    /// Z = {i : g(alpha^i) = 0}, sorted.
    pub defining_set: Vec<u32>,
    pub distance: Option<Distance>,
    pub method: Option<DistanceMethod>,
    field: FieldSpec,
}

impl fmt::Debug for CodeRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] g = {}", self.n, self.k, self.generator)?;
        if let Some(d) = self.distance {
            write!(f, ", d = {d}")?;
        }
        Ok(())
    }
}

impl PartialEq for CodeRecord {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.generator == other.generator && self.field == other.field
    }
}

pub fn build_code(g: &BinaryPoly, field: &FieldSpec) -> Result<CodeRecord> {
    let n = field.v() as usize;
    let xn1 = BinaryPoly::xn_plus_1(n);
    if g.is_zero() {
        return usage("the zero polynomial generates nothing");
    }
    let (h, r) = xn1.divmod(g)?;
    if !r.is_zero() {
        return usage(format!("{g} does not divide x^{n}+1"));
    }
    let deg = g.degree().unwrap_or(0);
    let defining_set: Vec<u32> = (0..n as u32).filter(|&i| g.eval(field, field.alpha_pow(i as i64)) == 0).collect();
    if defining_set.len() != deg {
        return Err(Error::Consistency(format!("{} roots of unity for a degree-{deg} divisor", defining_set.len())));
    }
    Ok(CodeRecord {
        n,
        k: n - deg,
        generator: g.clone(),
        check_poly: h,
        defining_set,
        distance: None,
        method: None,
        field: field.clone(),
    })
}

/// The dual code, generated by the reciprocal of h(x).
pub fn dual(code: &CodeRecord) -> CodeRecord {
    let g = code.check_poly.reciprocal().expect("h(0) = 1 for a divisor of x^n + 1");
    build_code(&g, &code.field).expect("reciprocal of a divisor of x^n + 1 divides it")
}

impl CodeRecord {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Membership mask of Z over Z_n.
    pub fn defining_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        for &i in &self.defining_set {
            mask[i as usize] = true;
        }
        mask
    }

    /// (x + 1) | g, so every codeword has even weight.
    pub fn is_even_weight(&self) -> bool {
        self.defining_set.first() == Some(&0)
    }

    pub fn with_distance(mut self, d: Distance, method: DistanceMethod) -> Self {
        self.distance = Some(d);
        self.method = Some(method);
        self
    }

    pub fn params(&self) -> String {
        match self.distance {
            Some(d) => format!("[{},{},{}]", self.n, self.k, d),
            None => format!("[{},{}]", self.n, self.k),
        }
    }
}

/// Knobs for the method router.
#[derive(Clone, Debug)]
pub struct DistanceOptions {
    pub threshold_k: usize,
    pub bz: BzOptions,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        Self { threshold_k: DEFAULT_THRESHOLD_K, bz: BzOptions::default() }
    }
}

/// Chooses the cheapest exact method: direct enumeration for small k, dual
/// enumeration plus MacWilliams for small n - k, otherwise the
/// information-window search under its budget.
pub fn compute_distance(code: &CodeRecord, opts: &DistanceOptions) -> Result<(Distance, DistanceMethod)> {
    if code.k == 0 {
        return Err(Error::Domain("the zero code has no minimum distance".into()));
    }
    if code.k <= opts.threshold_k {
        return Ok((Distance::exact(min_distance_enum(code, opts.threshold_k)?), DistanceMethod::Enumeration));
    }
    if code.n - code.k <= opts.threshold_k {
        return Ok((Distance::exact(distance_via_dual(code, opts.threshold_k)?), DistanceMethod::DualMacwilliams));
    }
    Ok((min_distance_bz(code, &opts.bz)?.distance, DistanceMethod::ChenBz))
}

/// Enumerates the dual and transforms its weight distribution.
pub fn distance_via_dual(code: &CodeRecord, threshold_k: usize) -> Result<u32> {
    let d = dual(code);
    let a = weight_enumerator(&d, threshold_k)?;
    let b = macwilliams(&enumerate::to_big(&a), code.n, d.k)?;
    b.iter()
        .enumerate()
        .skip(1)
        .find(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(i, _)| i as u32)
        .ok_or_else(|| Error::Consistency("MacWilliams transform has no nonzero weight".into()))
}
