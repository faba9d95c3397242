//! Trace sequences s_t = Tr(F(alpha^t + 1)) and their minimal polynomials,
//! found two independent ways: a GF(2^m) Fourier expansion and
//! Berlekamp-Massey over GF(2).

use crate::cosets::CosetTable;
use crate::error::{Error, Result};
use crate::families::{Family, FamilyId};
use crate::gf2m::FieldSpec;
use crate::polyring::{expand_one_minus, BinaryPoly};

/// One period (length v) of a binary sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSequence {
    pub family: Option<FamilyId>,
    pub m: u32,
    pub bits: Vec<u8>,
}

impl TraceSequence {
    pub fn generate(id: FamilyId, field: &FieldSpec) -> Result<Self> {
        id.validity(field.m()).check()?;
        let fam = Family::new(id, field)?;
        let v = field.v();
        let bits = (0..v).map(|t| field.trace(fam.evaluate(field.alpha_pow(t as i64) ^ 1))).collect();
        Ok(Self { family: Some(id), m: field.m(), bits })
    }

    /// Wraps an arbitrary period-v sequence.
    pub fn from_bits(field: &FieldSpec, bits: Vec<u8>) -> Result<Self> {
        if bits.len() != field.v() as usize || bits.iter().any(|&b| b > 1) {
            return Err(Error::Usage(format!("need {} bits of 0/1", field.v())));
        }
        Ok(Self { family: None, m: field.m(), bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Smallest p dividing the length with s_{t+p} = s_t throughout.
    pub fn least_period(&self) -> usize {
        let n = self.bits.len();
        (1..=n)
            .filter(|p| n % p == 0)
            .find(|&p| (0..n).all(|t| self.bits[t] == self.bits[(t + p) % n]))
            .unwrap_or(n)
    }

    pub fn to_bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
    }
}

/// Minimal polynomial, span and (for the Fourier route) the index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceAnalysis {
    /// g_s(x) = 1 + c_1 x + ... + c_L x^L.
    pub minimal_poly: BinaryPoly,
    pub linear_span: usize,
    /// Sorted I_s = {i : a_i != 0}; empty for the BM route.
    pub index_set: Vec<u32>,
    /// a_i for every i in Z_v; empty for the BM route.
    pub dft_coeffs: Vec<u32>,
}

impl SequenceAnalysis {
    /// Leaders of the cosets in I_s (0 included when present).
    pub fn leaders(&self, cosets: &CosetTable) -> Vec<u32> {
        cosets.leaders_of(self.index_set.iter().copied()).into_iter().collect()
    }
}

/// a_i = sum_t s_t alpha^(-i t), then g_s = prod_{i in I_s} (1 - alpha^i x).
///
/// Only coset leaders are summed directly; a_{2i} = a_i^2 fills the rest, since
/// s_t is binary.
pub fn analyze_dft(seq: &TraceSequence, field: &FieldSpec, cosets: &CosetTable) -> Result<SequenceAnalysis> {
    let v = field.v() as usize;
    if seq.len() != v || cosets.v() as usize != v {
        return Err(Error::Usage("sequence, field and coset table disagree on v".into()));
    }
    let ones: Vec<i64> = (0..v).filter(|&t| seq.bits[t] == 1).map(|t| t as i64).collect();
    let mut coeffs = vec![0u32; v];
    for &l in cosets.leaders() {
        let mut a = 0u32;
        for &t in &ones {
            a ^= field.alpha_pow(-(l as i64) * t);
        }
        let mut i = l;
        let mut ai = a;
        for _ in 0..cosets.size(l) {
            coeffs[i as usize] = ai;
            i = cosets.double(i);
            ai = field.mul(ai, ai);
        }
    }
    let index_set: Vec<u32> = (0..v as u32).filter(|&i| coeffs[i as usize] != 0).collect();
    let minimal_poly = expand_one_minus(field, &index_set)?;
    let linear_span = index_set.len();
    if minimal_poly.degree().unwrap_or(0) != linear_span {
        return Err(Error::Consistency("deg g_s differs from |I_s|".into()));
    }
    Ok(SequenceAnalysis { minimal_poly, linear_span, index_set, dft_coeffs: coeffs })
}

/// s_t = sum_i a_i alpha^(i t), the inverse of the expansion above.
pub fn inverse_dft(coeffs: &[u32], field: &FieldSpec) -> Result<Vec<u8>> {
    let v = field.v() as usize;
    let mut out = Vec::with_capacity(v);
    for t in 0..v as i64 {
        let mut s = 0u32;
        for (i, &a) in coeffs.iter().enumerate() {
            if a != 0 {
                s ^= field.mul(a, field.alpha_pow(i as i64 * t));
            }
        }
        if s > 1 {
            return Err(Error::Consistency(format!("s_{t} = {s:#x} is not binary")));
        }
        out.push(s as u8);
    }
    Ok(out)
}

/// Berlekamp-Massey over GF(2) on two periods of the sequence.
pub fn analyze_bm(seq: &TraceSequence) -> SequenceAnalysis {
    let (c, l) = berlekamp_massey(&seq.bits.repeat(2));
    let minimal_poly = BinaryPoly::from_coeffs(&c[..=l]);
    SequenceAnalysis { minimal_poly, linear_span: l, index_set: Vec::new(), dft_coeffs: Vec::new() }
}

/// Returns (connection coefficients c_0 = 1, ..., length L).
pub fn berlekamp_massey(s: &[u8]) -> (Vec<u8>, usize) {
    let n = s.len();
    let mut c = vec![0u8; n + 1];
    let mut b = vec![0u8; n + 1];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut shift = 1usize;
    for i in 0..n {
        let mut d = s[i];
        for k in 1..=l {
            d ^= c[k] & s[i - k];
        }
        if d == 0 {
            shift += 1;
            continue;
        }
        let prev = c.clone();
        for k in 0..=(n - shift) {
            c[k + shift] ^= b[k];
        }
        if 2 * l <= i {
            l = i + 1 - l;
            b = prev;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    (c, l)
}

/// sum_k g_k s_{t-k} = 0 for every t of the period (indices cyclic).
pub fn annihilates(g: &BinaryPoly, bits: &[u8]) -> bool {
    let n = bits.len();
    let exps = g.exponents();
    (0..n).all(|t| exps.iter().fold(0u8, |acc, &k| acc ^ bits[(t + n * (k / n + 1) - k) % n]) == 0)
}

/// g_s rebuilt from coset leaders: prod over nonzero leaders l of
/// m_{alpha^-l}, times (x + 1) when 0 is among them.
pub fn assemble_generator(leaders: &[u32], field: &FieldSpec, cosets: &CosetTable) -> Result<BinaryPoly> {
    let mut g = BinaryPoly::one();
    for &l in leaders {
        let neg = cosets.reduce(-(l as i64));
        g = g.mul(&crate::polyring::minimal_polynomial(neg, field, cosets)?);
    }
    Ok(g)
}
