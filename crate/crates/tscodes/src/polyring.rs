//! Dense polynomials over GF(2), plus the few GF(2^m)[x] expansions needed to
//! build minimal polynomials and factor x^v + 1.

use std::fmt;
use std::str::FromStr;

use crate::cosets::CosetTable;
use crate::error::{domain, Error, Result};
use crate::gf2m::FieldSpec;

/// Polynomial over GF(2); bit i of the packed words is the coefficient of x^i.
///
/// Always canonical: no zero words above the leading one, so derived equality
/// is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct BinaryPoly {
    words: Vec<u64>,
}

impl BinaryPoly {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self { words: vec![1] }
    }

    pub fn x() -> Self {
        Self { words: vec![2] }
    }

    pub fn monomial(d: usize) -> Self {
        let mut p = Self { words: vec![0; d / 64 + 1] };
        p.words[d / 64] = 1 << (d % 64);
        p
    }

    /// x^n + 1.
    pub fn xn_plus_1(n: usize) -> Self {
        let mut p = Self::monomial(n);
        p.flip(0);
        p
    }

    pub fn from_u64(bits: u64) -> Self {
        Self::from_words(vec![bits])
    }

    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = Self { words };
        p.trim();
        p
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p.flip(e);
        }
        p
    }

    /// Ascending coefficients, each 0 or 1.
    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        Self::from_exponents(coeffs.iter().enumerate().filter(|(_, &c)| c & 1 == 1).map(|(i, _)| i))
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn flip(&mut self, i: usize) {
        if self.words.len() <= i / 64 {
            self.words.resize(i / 64 + 1, 0);
        }
        self.words[i / 64] ^= 1 << (i % 64);
        self.trim();
    }

    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Exponents with a nonzero coefficient, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight() as usize);
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() { (self, other) } else { (other, self) };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        Self::from_words(words)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0u64; self.words.len() + other.words.len()];
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                xor_shifted(&mut out, &other.words, wi * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        Self::from_words(out)
    }

    pub fn divmod(&self, b: &Self) -> Result<(Self, Self)> {
        let db = match b.degree() {
            Some(d) => d,
            None => return domain("division by the zero polynomial"),
        };
        let mut r = self.words.clone();
        r.push(0);
        let mut q = vec![0u64; self.words.len() + 1];
        let mut dr = self.degree();
        while let Some(d) = dr {
            if d < db {
                break;
            }
            let shift = d - db;
            xor_shifted(&mut r, &b.words, shift);
            q[shift / 64] ^= 1 << (shift % 64);
            dr = top_bit_at_or_below(&r, d);
        }
        Ok((Self::from_words(q), Self::from_words(r)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divmod(b)?.1)
    }

    pub fn divides(&self, a: &Self) -> Result<bool> {
        Ok(a.rem(self)?.is_zero())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a
    }

    /// x^deg * p(1/x). Needs a nonzero constant term to stay an involution.
    pub fn reciprocal(&self) -> Result<Self> {
        if !self.coeff(0) {
            return domain(format!("{self} has zero constant term"));
        }
        let d = self.degree().expect("constant term set");
        Ok(Self::from_exponents(self.exponents().into_iter().map(|e| d - e)))
    }

    /// (self * other) mod modulus.
    pub fn mulmod(&self, other: &Self, modulus: &Self) -> Result<Self> {
        self.mul(other).rem(modulus)
    }

    /// x^e mod modulus.
    pub fn x_pow_mod(e: u64, modulus: &Self) -> Result<Self> {
        let mut acc = Self::one().rem(modulus)?;
        let mut base = Self::x().rem(modulus)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, modulus)?;
            }
            base = base.mulmod(&base, modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Order test: x^v = 1 and x^(v/q) != 1 mod self for every prime q | v,
    /// with v = 2^deg - 1. Implies irreducibility.
    pub fn is_primitive(&self) -> bool {
        let d = match self.degree() {
            Some(d) if (1..=62).contains(&d) => d,
            _ => return false,
        };
        if !self.coeff(0) {
            return false;
        }
        let v = (1u64 << d) - 1;
        let one = Self::one();
        if Self::x_pow_mod(v, self).ok() != Some(one.clone()) {
            return false;
        }
        prime_factors(v).into_iter().all(|q| Self::x_pow_mod(v / q, self).ok() != Some(one.clone()))
    }

    /// Trial division by every polynomial of degree 1..=deg/2.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        assert!(d <= 40, "trial division is for small degrees");
        for cand in 2u64..(1u64 << (d / 2 + 1)) {
            let c = Self::from_u64(cand);
            if c.degree().unwrap() >= 1 && self.rem(&c).unwrap().is_zero() {
                return false;
            }
        }
        true
    }

    /// Evaluates at a field element (coefficients embed as 0/1).
    pub fn eval(&self, f: &FieldSpec, a: u32) -> u32 {
        let Some(d) = self.degree() else { return 0 };
        let mut acc = 0u32;
        for i in (0..=d).rev() {
            acc = f.mul(acc, a);
            if self.coeff(i) {
                acc ^= 1;
            }
        }
        acc
    }

    /// Hex with LSB = constant term, e.g. `0x47` for x^6+x^2+x+1.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0x0".into();
        }
        let mut s = String::from("0x");
        let top = self.words.len() - 1;
        s.push_str(&format!("{:x}", self.words[top]));
        for w in self.words[..top].iter().rev() {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let h = s.trim();
        let h = h.strip_prefix("0x").or_else(|| h.strip_prefix("0X")).unwrap_or(h);
        if h.is_empty() || !h.bytes().all(|c| c.is_ascii_hexdigit()) {
            return Err(Error::Parse(format!("bad hex polynomial `{s}`")));
        }
        let digits: Vec<u8> = h.bytes().rev().map(|c| (c as char).to_digit(16).unwrap() as u8).collect();
        let mut words = vec![0u64; digits.len().div_ceil(16)];
        for (i, d) in digits.iter().enumerate() {
            words[i / 16] |= (*d as u64) << (4 * (i % 16));
        }
        Ok(Self::from_words(words))
    }
}

fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / 64;
    let bs = shift % 64;
    for (j, &s) in src.iter().enumerate() {
        dst[ws + j] ^= s << bs;
        if bs != 0 && ws + j + 1 < dst.len() {
            dst[ws + j + 1] ^= s >> (64 - bs);
        }
    }
}

fn top_bit_at_or_below(words: &[u64], d: usize) -> Option<usize> {
    let mut wi = d / 64;
    let mut w = words[wi] & (u64::MAX >> (63 - d % 64));
    loop {
        if w != 0 {
            return Some(wi * 64 + 63 - w.leading_zeros() as usize);
        }
        if wi == 0 {
            return None;
        }
        wi -= 1;
        w = words[wi];
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl fmt::Display for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for e in self.exponents().into_iter().rev() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BinaryPoly {
    type Err = Error;

    /// Accepts `x^6+x^2+x+1` (spaces and TeX braces tolerated) or `0x47`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '{' && *c != '}').collect();
        if t.starts_with("0x") || t.starts_with("0X") {
            return Self::from_hex(&t);
        }
        if t.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if t == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for term in t.split('+') {
            let e = match term {
                "1" => 0,
                "x" => 1,
                _ => term
                    .strip_prefix("x^")
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k <= 1 << 22)
                    .ok_or_else(|| Error::Parse(format!("bad term `{term}` in `{s}`")))?,
            };
            if p.coeff(e) {
                return Err(Error::Parse(format!("repeated term `{term}` in `{s}`")));
            }
            p.flip(e);
        }
        Ok(p)
    }
}

/// Dense polynomial over GF(2^m), ascending coefficients.
type FieldPoly = Vec<u32>;

fn to_binary(coeffs: &FieldPoly, what: &str) -> Result<BinaryPoly> {
    if let Some((i, c)) = coeffs.iter().enumerate().find(|(_, &c)| c > 1) {
        return Err(Error::Consistency(format!("{what}: coefficient of x^{i} is {c:#x}, not in GF(2)")));
    }
    Ok(BinaryPoly::from_coeffs(&coeffs.iter().map(|&c| c as u8).collect::<Vec<_>>()))
}

/// prod (x - alpha^e), asserted to land in GF(2)[x].
pub fn expand_roots(f: &FieldSpec, exps: &[u32]) -> Result<BinaryPoly> {
    let mut c: FieldPoly = vec![1];
    for &e in exps {
        let r = f.alpha_pow(e as i64);
        c.push(0);
        for k in (1..c.len()).rev() {
            c[k] = c[k - 1] ^ f.mul(r, c[k]);
        }
        c[0] = f.mul(r, c[0]);
    }
    to_binary(&c, "prod (x - alpha^e)")
}

/// prod (1 - alpha^e x), asserted to land in GF(2)[x].
pub fn expand_one_minus(f: &FieldSpec, exps: &[u32]) -> Result<BinaryPoly> {
    let mut c: FieldPoly = vec![1];
    for &e in exps {
        let r = f.alpha_pow(e as i64);
        c.push(0);
        for k in (1..c.len()).rev() {
            c[k] ^= f.mul(r, c[k - 1]);
        }
    }
    to_binary(&c, "prod (1 - alpha^e x)")
}

/// m_{alpha^i}(x), the product over the coset of i.
pub fn minimal_polynomial(i: u32, f: &FieldSpec, cosets: &CosetTable) -> Result<BinaryPoly> {
    let members = cosets.members(i % cosets.v());
    expand_roots(f, &members)
}

/// x^v + 1 as (leader, m_{alpha^leader}) pairs in leader order.
pub fn factor_xv_minus_1(f: &FieldSpec, cosets: &CosetTable) -> Result<Vec<(u32, BinaryPoly)>> {
    cosets.leaders().iter().map(|&l| Ok((l, minimal_polynomial(l, f, cosets)?))).collect()
}
