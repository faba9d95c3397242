//! Arithmetic in GF(2^m), 2 <= m <= 20, in polynomial basis.
//!
//! Elements are plain `u32` bit patterns (bit i = coefficient of x^i) and all
//! operations hang off a [`FieldSpec`], which owns the exp/log tables. The
//! [`FieldElement`] wrapper pairs a value with its field when a checked API is
//! wanted.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{domain, usage, Error, Result};
use crate::polyring::BinaryPoly;

pub const MIN_M: u32 = 2;
pub const MAX_M: u32 = 20;

/// Default primitive polynomial per m, as coefficient bit patterns.
///
/// m = 4..8 are the ones whose root reproduces the published example
/// generators bit-for-bit; see README for the m = 6, 7, 8 story.
const BUNDLED: [(u32, u64); 19] = [
    (2, 0x7),
    (3, 0xb),
    (4, 0x13),
    (5, 0x25),
    (6, 0x5b),
    (7, 0x83),
    (8, 0x11d),
    (9, 0x211),
    (10, 0x409),
    (11, 0x805),
    (12, 0x1053),
    (13, 0x201b),
    (14, 0x4443),
    (15, 0x8003),
    (16, 0x1100b),
    (17, 0x20009),
    (18, 0x40081),
    (19, 0x80027),
    (20, 0x100009),
];

/// Alternative polynomials that are primitive and worth naming.
pub const ALT_M7: u64 = 0x89; // x^7 + x^3 + 1

pub fn bundled_poly(m: u32) -> Result<BinaryPoly> {
    BUNDLED
        .iter()
        .find(|(mm, _)| *mm == m)
        .map(|&(_, b)| BinaryPoly::from_u64(b))
        .ok_or_else(|| Error::Usage(format!("m = {m} outside [{MIN_M}, {MAX_M}]")))
}

/// Per-m primitive polynomial choices: the bundled table plus overrides.
#[derive(Clone, Debug, Default)]
pub struct PolyTable {
    overrides: BTreeMap<u32, BinaryPoly>,
}

impl PolyTable {
    pub fn bundled() -> Self {
        Self::default()
    }

    /// Parses lines like `m=7 poly=x^7+x^3+1`. `#` starts a comment.
    pub fn parse_config(text: &str) -> Result<Self> {
        let mut overrides = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut m = None;
            let mut poly = None;
            for tok in line.split_whitespace() {
                if let Some(rest) = tok.strip_prefix("m=") {
                    m = Some(rest.parse::<u32>().map_err(|e| {
                        Error::Parse(format!("line {}: bad m: {e}", lineno + 1))
                    })?);
                } else if let Some(rest) = tok.strip_prefix("poly=") {
                    poly = Some(rest.parse::<BinaryPoly>()?);
                } else {
                    return Err(Error::Parse(format!("line {}: unexpected `{tok}`", lineno + 1)));
                }
            }
            match (m, poly) {
                (Some(m), Some(p)) => {
                    FieldSpec::new(m, &p)?;
                    overrides.insert(m, p);
                }
                _ => return Err(Error::Parse(format!("line {}: need both m= and poly=", lineno + 1))),
            }
        }
        Ok(Self { overrides })
    }

    pub fn set(&mut self, m: u32, poly: BinaryPoly) {
        self.overrides.insert(m, poly);
    }

    pub fn get(&self, m: u32) -> Result<BinaryPoly> {
        match self.overrides.get(&m) {
            Some(p) => Ok(p.clone()),
            None => bundled_poly(m),
        }
    }

    pub fn field(&self, m: u32) -> Result<FieldSpec> {
        FieldSpec::new(m, &self.get(m)?)
    }
}

/// GF(2^m) defined by a primitive polynomial, with its exp/log tables.
#[derive(Clone)]
pub struct FieldSpec {
    m: u32,
    poly: u64,
    v: u32,
    /// exp[i] = alpha^i for 0 <= i < 2v, doubled so log sums need no reduction.
    exp: Vec<u32>,
    /// log[a] for a != 0; log[0] is a sentinel.
    log: Vec<u32>,
    trace_mask: u32,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.poly == other.poly
    }
}
impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {}", self.m, self.primitive_poly())
    }
}

impl FieldSpec {
    pub fn new(m: u32, poly: &BinaryPoly) -> Result<Self> {
        if !(MIN_M..=MAX_M).contains(&m) {
            return usage(format!("m = {m} outside [{MIN_M}, {MAX_M}]"));
        }
        if poly.degree() != Some(m as usize) {
            return usage(format!("{poly} does not have degree {m}"));
        }
        if !poly.is_primitive() {
            return usage(format!("{poly} is not primitive over GF(2)"));
        }
        let bits = poly.to_u64().expect("degree <= 20 fits");
        let v = (1u32 << m) - 1;
        let mut exp = vec![0u32; 2 * v as usize];
        let mut log = vec![u32::MAX; 1usize << m];
        let mut a = 1u32;
        for i in 0..v {
            if log[a as usize] != u32::MAX {
                // Cannot happen once is_primitive passed; keep the table honest anyway.
                return Err(Error::Consistency(format!("{poly}: alpha has order {i}")));
            }
            exp[i as usize] = a;
            exp[(i + v) as usize] = a;
            log[a as usize] = i;
            a <<= 1;
            if a >> m & 1 == 1 {
                a ^= bits as u32;
            }
        }
        let mut spec = Self { m, poly: bits, v, exp, log, trace_mask: 0 };
        let mut mask = 0u32;
        for i in 0..m {
            if spec.trace_by_definition(1 << i) == 1 {
                mask |= 1 << i;
            }
        }
        spec.trace_mask = mask;
        Ok(spec)
    }

    pub fn from_bits(m: u32, bits: u64) -> Result<Self> {
        Self::new(m, &BinaryPoly::from_u64(bits))
    }

    /// The bundled default for this m.
    pub fn default_for(m: u32) -> Result<Self> {
        Self::new(m, &bundled_poly(m)?)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Multiplicative order of alpha, 2^m - 1.
    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn size(&self) -> u32 {
        1 << self.m
    }

    pub fn poly_bits(&self) -> u64 {
        self.poly
    }

    pub fn primitive_poly(&self) -> BinaryPoly {
        BinaryPoly::from_u64(self.poly)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Shift-and-xor product, independent of the tables.
    pub fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let mut acc = 0u64;
        let mut x = a as u64;
        let mut y = b;
        while y != 0 {
            if y & 1 == 1 {
                acc ^= x;
            }
            y >>= 1;
            x <<= 1;
            if x >> self.m & 1 == 1 {
                x ^= self.poly;
            }
        }
        acc as u32
    }

    #[inline]
    pub fn alpha_pow(&self, e: i64) -> u32 {
        self.exp[e.rem_euclid(self.v as i64) as usize]
    }

    pub fn alpha(&self) -> u32 {
        self.exp[1]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return domain("zero has no inverse");
        }
        Ok(self.exp[((self.v - self.log[a as usize]) % self.v) as usize])
    }

    /// a^e; negative e means a power of the inverse.
    pub fn pow(&self, a: u32, e: i64) -> Result<u32> {
        if a == 0 {
            return match e {
                0 => Ok(1),
                e if e > 0 => Ok(0),
                _ => domain("0 raised to a negative power"),
            };
        }
        let l = self.log[a as usize] as i128 * e as i128;
        Ok(self.exp[l.rem_euclid(self.v as i128) as usize])
    }

    /// Square-and-multiply with `mul_slow`; the oracle for `pow`.
    pub fn pow_slow(&self, a: u32, e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn trace(&self, a: u32) -> u8 {
        ((a & self.trace_mask).count_ones() & 1) as u8
    }

    /// a + a^2 + ... + a^(2^(m-1)), computed literally.
    pub fn trace_by_definition(&self, a: u32) -> u8 {
        let mut acc = 0u32;
        let mut x = a;
        for _ in 0..self.m {
            acc ^= x;
            x = self.mul_slow(x, x);
        }
        debug_assert!(acc <= 1, "trace escaped GF(2)");
        acc as u8
    }

    pub fn dlog(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return domain("dlog of zero");
        }
        if a >= self.size() {
            return usage(format!("{a:#x} is not an element of GF(2^{})", self.m));
        }
        Ok(self.log[a as usize])
    }

    /// Multiplicative order of a nonzero element, by brute force.
    pub fn order(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return domain("zero has no multiplicative order");
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul_slow(x, a);
            k += 1;
        }
        Ok(k)
    }

    pub fn element(&self, bits: u32) -> Result<FieldElement<'_>> {
        if bits >= self.size() {
            return usage(format!("{bits:#x} is not an element of GF(2^{})", self.m));
        }
        Ok(FieldElement { spec: self, bits })
    }
}

/// A field value tied to its field, for callers that want mismatches caught.
#[derive(Clone, Copy)]
pub struct FieldElement<'a> {
    spec: &'a FieldSpec,
    bits: u32,
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.bits == other.bits
    }
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

impl<'a> FieldElement<'a> {
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn spec(&self) -> &'a FieldSpec {
        self.spec
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return usage(format!("mixing {:?} and {:?}", self.spec, other.spec));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self { spec: self.spec, bits: self.bits ^ other.bits })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self { spec: self.spec, bits: self.spec.mul(self.bits, other.bits) })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        Ok(Self { spec: self.spec, bits: self.spec.pow(self.bits, e)? })
    }

    pub fn trace(&self) -> u8 {
        self.spec.trace(self.bits)
    }

    pub fn dlog(&self) -> Result<u32> {
        self.spec.dlog(self.bits)
    }
}
