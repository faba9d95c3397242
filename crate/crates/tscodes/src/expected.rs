//! Published reference values, bundled as CSV so they stay auditable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilyId;
use crate::polyring::BinaryPoly;

const EXPECTED_CSV: &str = include_str!("../data/expected.csv");
const GENERATORS_CSV: &str = include_str!("../data/generators.csv");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedRow {
    pub row: u32,
    /// A printed table entry rather than an instance of a family claim.
    pub tabulated: bool,
    pub family: FamilyId,
    pub m: u32,
    pub n: usize,
    pub k: usize,
    pub d: (u32, u32),
    pub dual_k: Option<usize>,
    pub dual_d: Option<(u32, u32)>,
    pub code_opt: String,
    pub dual_opt: Option<String>,
}

#[derive(Deserialize)]
struct RawRow {
    row: u32,
    kind: String,
    family: String,
    m: u32,
    n: usize,
    k: usize,
    d_lo: u32,
    d_hi: u32,
    dual_k: Option<usize>,
    dual_d_lo: Option<u32>,
    dual_d_hi: Option<u32>,
    code_opt: String,
    dual_opt: Option<String>,
}

#[derive(Deserialize)]
struct RawGenerator {
    family: String,
    m: u32,
    generator: String,
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes())
}

fn parse_err(e: csv::Error) -> Error {
    Error::Parse(format!("bundled data: {e}"))
}

pub fn parse_expected(text: &str) -> Result<Vec<ExpectedRow>> {
    let mut out = Vec::new();
    for rec in reader(text).deserialize::<RawRow>() {
        let r = rec.map_err(parse_err)?;
        let dual_d = match (r.dual_d_lo, r.dual_d_hi) {
            (Some(lo), Some(hi)) => Some((lo, hi)),
            (None, None) => None,
            _ => return Err(Error::Parse(format!("{} m={}: half a dual interval", r.family, r.m))),
        };
        out.push(ExpectedRow {
            row: r.row,
            tabulated: r.kind == "table",
            family: r.family.parse()?,
            m: r.m,
            n: r.n,
            k: r.k,
            d: (r.d_lo, r.d_hi),
            dual_k: r.dual_k,
            dual_d,
            code_opt: r.code_opt,
            dual_opt: r.dual_opt.filter(|s| !s.is_empty()),
        });
    }
    Ok(out)
}

/// Every bundled row, in file order.
pub fn table() -> Vec<ExpectedRow> {
    parse_expected(EXPECTED_CSV).expect("bundled expected.csv parses")
}

pub fn lookup(family: FamilyId, m: u32) -> Option<ExpectedRow> {
    table().into_iter().find(|r| r.family == family && r.m == m)
}

pub fn printed_generators() -> Vec<(FamilyId, u32, BinaryPoly)> {
    reader(GENERATORS_CSV)
        .deserialize::<RawGenerator>()
        .map(|rec| {
            let r = rec.expect("bundled generators.csv parses");
            (r.family.parse().expect("known family"), r.m, r.generator.parse().expect("polynomial text"))
        })
        .collect()
}

pub fn printed_generator(family: FamilyId, m: u32) -> Option<BinaryPoly> {
    printed_generators().into_iter().find(|(f, mm, _)| *f == family && *mm == m).map(|(_, _, g)| g)
}
