//! Fixed-width packed binary vectors for the hot enumeration loops.

use crate::polyring::BinaryPoly;

pub(crate) type Row<const W: usize> = [u64; W];

#[inline(always)]
pub(crate) fn xor_into<const W: usize>(a: &mut Row<W>, b: &Row<W>) {
    for i in 0..W {
        a[i] ^= b[i];
    }
}

#[inline(always)]
pub(crate) fn xor<const W: usize>(a: &Row<W>, b: &Row<W>) -> Row<W> {
    let mut c = *a;
    xor_into(&mut c, b);
    c
}

#[inline(always)]
pub(crate) fn weight<const W: usize>(a: &Row<W>) -> u32 {
    a.iter().map(|w| w.count_ones()).sum()
}

#[inline(always)]
pub(crate) fn bit<const W: usize>(a: &Row<W>, i: usize) -> bool {
    a[i / 64] >> (i % 64) & 1 == 1
}

/// Bits [0, len) of `p` as a row; higher bits are dropped.
pub(crate) fn pack<const W: usize>(p: &BinaryPoly, len: usize) -> Row<W> {
    let mut r = [0u64; W];
    for (i, &w) in p.words().iter().enumerate().take(W) {
        r[i] = w;
    }
    if len < 64 * W {
        let (q, s) = (len / 64, len % 64);
        if s > 0 {
            r[q] &= (1u64 << s) - 1;
        }
        for w in r.iter_mut().skip(if s > 0 { q + 1 } else { q }) {
            *w = 0;
        }
    }
    r
}

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64).max(1)
}

/// Calls `$f::<W>(args)` with W in {1, 2, 3, 4, 8, 16} chosen from a bit length.
macro_rules! with_words {
    ($bits:expr, $f:ident ( $($arg:expr),* $(,)? )) => {
        match $crate::codes::words::words_for($bits) {
            1 => $f::<1>($($arg),*),
            2 => $f::<2>($($arg),*),
            3 => $f::<3>($($arg),*),
            4 => $f::<4>($($arg),*),
            5..=8 => $f::<8>($($arg),*),
            9..=16 => $f::<16>($($arg),*),
            _ => Err($crate::error::Error::Unsupported(format!(
                "vectors of {} bits exceed the 1024-bit search kernels",
                $bits
            ))),
        }
    };
}
pub(crate) use with_words;
