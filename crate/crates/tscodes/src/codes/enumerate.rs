//! Full codeword enumeration and the MacWilliams transform.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::words::{pack, weight, with_words, xor_into, Row};
use super::CodeRecord;
use crate::error::{Error, Result};
use crate::polyring::BinaryPoly;

pub const DEFAULT_THRESHOLD_K: usize = 26;

/// Top message bits fixed per parallel chunk.
const SPLIT_BITS: usize = 6;

/// A_0..A_n by walking all 2^k messages in Gray-code order.
pub fn weight_enumerator(code: &CodeRecord, threshold_k: usize) -> Result<Vec<u64>> {
    if code.k > threshold_k {
        return Err(Error::Usage(format!(
            "k = {} is above the enumeration threshold {threshold_k}; use the dual with MacWilliams or the information-window search",
            code.k
        )));
    }
    with_words!(code.n, enumerate_words(code))
}

pub fn min_distance_enum(code: &CodeRecord, threshold_k: usize) -> Result<u32> {
    let a = weight_enumerator(code, threshold_k)?;
    a.iter()
        .enumerate()
        .skip(1)
        .find(|(_, &c)| c > 0)
        .map(|(i, _)| i as u32)
        .ok_or_else(|| Error::Domain("the zero code has no minimum distance".into()))
}

fn enumerate_words<const W: usize>(code: &CodeRecord) -> Result<Vec<u64>> {
    let (n, k) = (code.n, code.k);
    // Basis x^i g(x), i < k.
    let rows: Vec<Row<W>> = (0..k).map(|i| pack(&code.generator.mul(&BinaryPoly::monomial(i)), n)).collect();
    let split = k.min(SPLIT_BITS);
    let low = k - split;
    let hist = (0..1usize << split)
        .into_par_iter()
        .map(|hi| {
            let mut c = [0u64; W];
            for b in 0..split {
                if hi >> b & 1 == 1 {
                    xor_into(&mut c, &rows[low + b]);
                }
            }
            let mut h = vec![0u64; n + 1];
            h[weight(&c) as usize] += 1;
            for i in 1..1u64 << low {
                xor_into(&mut c, &rows[i.trailing_zeros() as usize]);
                h[weight(&c) as usize] += 1;
            }
            h
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(hist)
}

pub fn to_big(a: &[u64]) -> Vec<BigUint> {
    a.iter().map(|&x| BigUint::from(x)).collect()
}

/// Weight distribution of the dual of a code with distribution `dual_enum`
/// and dimension `k_dual`: B_j = 2^-k_dual sum_i A_i K_j(i).
pub fn macwilliams(dual_enum: &[BigUint], n: usize, k_dual: usize) -> Result<Vec<BigUint>> {
    if dual_enum.len() != n + 1 {
        return Err(Error::Usage(format!("need n + 1 = {} coefficients, got {}", n + 1, dual_enum.len())));
    }
    let total: BigUint = dual_enum.iter().sum();
    if total != BigUint::one() << k_dual {
        return Err(Error::Consistency(format!("distribution sums to {total}, not 2^{k_dual}")));
    }
    let mut acc = vec![BigInt::zero(); n + 1];
    for (i, a) in dual_enum.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let a = BigInt::from_biguint(Sign::Plus, a.clone());
        for (j, kj) in krawtchouk_column(n, i).into_iter().enumerate() {
            acc[j] += &a * kj;
        }
    }
    let scale = BigInt::one() << k_dual;
    acc.into_iter()
        .enumerate()
        .map(|(j, b)| {
            if b.is_negative() || !(&b % &scale).is_zero() {
                return Err(Error::Consistency(format!("B_{j} = {b} / 2^{k_dual} is not a nonnegative integer")));
            }
            Ok((b / &scale).to_biguint().expect("checked nonnegative"))
        })
        .collect()
}

/// K_0(i), ..., K_n(i) by the three-term recurrence
/// (j+1) K_{j+1} = (n - 2i) K_j - (n - j + 1) K_{j-1}.
fn krawtchouk_column(n: usize, i: usize) -> Vec<BigInt> {
    let mut k = Vec::with_capacity(n + 1);
    k.push(BigInt::one());
    if n == 0 {
        return k;
    }
    k.push(BigInt::from(n as i64 - 2 * i as i64));
    for j in 1..n {
        let next = (BigInt::from(n as i64 - 2 * i as i64) * &k[j] - BigInt::from((n - j + 1) as i64) * &k[j - 1]) / BigInt::from((j + 1) as i64);
        k.push(next);
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_code, dual};
    use crate::gf2m::FieldSpec;

    fn code(m: u32, g: &str) -> CodeRecord {
        build_code(&g.parse().unwrap(), &FieldSpec::default_for(m).unwrap()).unwrap()
    }

    fn binom(n: u64, r: u64) -> u64 {
        (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn krawtchouk_matches_the_sum_definition() {
        let n = 9usize;
        for i in 0..=n {
            let col = krawtchouk_column(n, i);
            for (j, kj) in col.iter().enumerate() {
                let mut s = 0i64;
                for l in 0..=j.min(i) {
                    if j - l <= n - i {
                        let t = (binom(i as u64, l as u64) * binom((n - i) as u64, (j - l) as u64)) as i64;
                        s += if l % 2 == 0 { t } else { -t };
                    }
                }
                assert_eq!(*kj, BigInt::from(s), "K_{j}({i})");
            }
        }
    }

    #[test]
    fn full_space_transforms_to_zero_code() {
        let n = 7;
        let a: Vec<BigUint> = (0..=n).map(|i| BigUint::from(binom(n as u64, i as u64))).collect();
        let b = macwilliams(&a, n, n).unwrap();
        assert_eq!(b[0], BigUint::one());
        assert!(b[1..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn transform_twice_is_identity() {
        let c = code(4, "x^4+x+1");
        let a = to_big(&weight_enumerator(&c, 26).unwrap());
        let b = macwilliams(&a, 15, c.k).unwrap();
        assert_eq!(macwilliams(&b, 15, 15 - c.k).unwrap(), a);
    }

    #[test]
    fn hamming_and_simplex() {
        // [15,11,3] Hamming code and its [15,4,8] simplex dual.
        let c = code(4, "x^4+x+1");
        let a = weight_enumerator(&c, 26).unwrap();
        assert_eq!(a.iter().sum::<u64>(), 1 << 11);
        assert_eq!(min_distance_enum(&c, 26).unwrap(), 3);
        let s = weight_enumerator(&dual(&c), 26).unwrap();
        assert_eq!(s[8], 15);
        assert_eq!(s.iter().sum::<u64>(), 16);
        let via = macwilliams(&to_big(&s), 15, 4).unwrap();
        assert_eq!(via, to_big(&a));
    }

    #[test]
    fn repetition_and_parity() {
        let f = FieldSpec::default_for(3).unwrap();
        let xn = BinaryPoly::xn_plus_1(7);
        let rep = build_code(&xn.divmod(&"x+1".parse().unwrap()).unwrap().0, &f).unwrap();
        assert_eq!(min_distance_enum(&rep, 26).unwrap(), 7);
        let par = build_code(&"x+1".parse().unwrap(), &f).unwrap();
        let a = weight_enumerator(&par, 26).unwrap();
        assert!(a.iter().skip(1).step_by(2).all(|&x| x == 0));
    }

    #[test]
    fn rejects_large_k_and_bad_input() {
        let c = code(5, "x^6+x^2+x+1");
        assert!(matches!(weight_enumerator(&c, 20), Err(Error::Usage(_))));
        let short = vec![BigUint::one(), BigUint::one()];
        assert!(matches!(macwilliams(&short, 3, 1), Err(Error::Usage(_))));
        // sums to 4 but no length-2 code has three words of weight 2
        let bogus: Vec<BigUint> = [1u32, 0, 3].iter().map(|&x| BigUint::from(x)).collect();
        assert!(matches!(macwilliams(&bogus, 2, 2), Err(Error::Consistency(_))));
    }

    #[test]
    fn f2_m5_both_sides() {
        let c = code(5, "x^6+x^2+x+1");
        let d = dual(&c);
        assert_eq!(min_distance_enum(&d, 26).unwrap(), 15);
        let b = macwilliams(&to_big(&weight_enumerator(&d, 26).unwrap()), 31, 6).unwrap();
        let first = b.iter().enumerate().skip(1).find(|(_, x)| !x.is_zero()).unwrap().0;
        assert_eq!(first, 4);
    }
}
