//! Radix-two number-theoretic transforms over a prime field.
//!
//! Spectra are kept in natural (evaluation) order at the API boundary:
//! position i of a length-n spectrum holds P(omega_n^i). The iterative
//! butterflies use an internal bit-reversal permutation which is not
//! observable from outside.
//!
//! Cost calibration: a length-n transform performs exactly (n/2)*log2(n)
//! field multiplications (one per butterfly); the inverse adds n more for
//! the final scaling. The counter records one forward or inverse event per
//! invocation, keyed by length.

use alloc::vec;
use alloc::vec::Vec;

use crate::counter::CostCounter;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::poly::Poly;

/// A DFT of length n = 2^k in natural order: values[i] = P(omega_n^i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumVec {
    pub values: Vec<u64>,
}

impl SpectrumVec {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Precomputed root-of-unity tables for all lengths 2^0 .. 2^max_log2.
///
/// Tables are built once at construction and never mutated, so a plan can be
/// shared read-only across threads and reused by every level of a half-gcd
/// recursion. Counters are supplied per call, never stored here.
#[derive(Debug, Clone)]
pub struct TransformPlan {
    field: PrimeField,
    max_log2: u32,
    // fwd[k][j] = omega_{2^k}^j for j < 2^(k-1); fwd[0] is empty
    fwd: Vec<Vec<u64>>,
    inv: Vec<Vec<u64>>,
    // len_inv[k] = (2^k)^{-1} mod p
    len_inv: Vec<u64>,
}

impl TransformPlan {
    /// Build a plan supporting transforms up to length 2^max_log2.
    pub fn new(field: &PrimeField, max_log2: u32) -> Result<Self> {
        if max_log2 > field.two_adicity() {
            return Err(Error::UnsupportedLength);
        }
        let mut fwd = Vec::with_capacity(max_log2 as usize + 1);
        let mut inv = Vec::with_capacity(max_log2 as usize + 1);
        let mut len_inv = Vec::with_capacity(max_log2 as usize + 1);
        for k in 0..=max_log2 {
            let n = 1usize << k;
            let w = field.root_of_unity(k)?;
            let winv = field.inv(&w)?;
            let mut twf = Vec::with_capacity(n / 2);
            let mut twi = Vec::with_capacity(n / 2);
            let (mut af, mut ai) = (1u64, 1u64);
            for _ in 0..n / 2 {
                twf.push(af);
                twi.push(ai);
                af = field.mul(&af, &w);
                ai = field.mul(&ai, &winv);
            }
            fwd.push(twf);
            inv.push(twi);
            len_inv.push(field.inv(&(n as u64 % field.modulus()))?);
        }
        Ok(Self {
            field: field.clone(),
            max_log2,
            fwd,
            inv,
            len_inv,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn max_len(&self) -> usize {
        1 << self.max_log2
    }

    pub fn supports(&self, n: usize) -> bool {
        n.is_power_of_two() && n <= self.max_len()
    }

    /// Forward twiddle omega_n^j for j < n (second half by negation).
    #[inline]
    fn omega_pow(&self, log2n: u32, j: usize) -> (u64, bool) {
        let half = 1usize << (log2n - 1);
        if j < half {
            (self.fwd[log2n as usize][j], false)
        } else {
            (self.fwd[log2n as usize][j - half], true)
        }
    }

    fn butterfly_pass(&self, buf: &mut [u64], table: &[u64], counter: &mut CostCounter) {
        let n = buf.len();
        let f = &self.field;
        bit_reverse_permute(buf);
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let step = n / len;
            let mut start = 0;
            while start < n {
                for j in 0..half {
                    let w = table[j * step];
                    let a = buf[start + j];
                    let b = f.mul(&buf[start + j + half], &w);
                    buf[start + j] = f.add(&a, &b);
                    buf[start + j + half] = f.sub(&a, &b);
                }
                start += len;
            }
            len <<= 1;
        }
        let log2n = n.trailing_zeros() as u64;
        counter.mults((n as u64 / 2) * log2n);
        counter.adds(n as u64 * log2n);
    }

    /// In-place forward transform of a full-length buffer. Records one
    /// forward event.
    pub(crate) fn forward_raw(&self, buf: &mut [u64], counter: &mut CostCounter) -> Result<()> {
        let n = buf.len();
        if !self.supports(n) {
            return Err(Error::UnsupportedLength);
        }
        let k = n.trailing_zeros() as usize;
        let table = self.fwd[k].clone();
        self.butterfly_pass(buf, &table, counter);
        counter.record_forward(n);
        Ok(())
    }

    /// In-place inverse transform. Records one inverse event.
    pub(crate) fn inverse_raw(&self, buf: &mut [u64], counter: &mut CostCounter) -> Result<()> {
        let n = buf.len();
        if !self.supports(n) {
            return Err(Error::UnsupportedLength);
        }
        let k = n.trailing_zeros() as usize;
        let table = self.inv[k].clone();
        self.butterfly_pass(buf, &table, counter);
        let ninv = self.len_inv[k];
        for v in buf.iter_mut() {
            *v = self.field.mul(v, &ninv);
        }
        counter.mults(n as u64);
        counter.record_inverse(n);
        Ok(())
    }

    /// Test hook: corrupt one twiddle entry in every table so the
    /// self-test fault-injection path has something to detect at any
    /// transform length.
    #[doc(hidden)]
    pub fn corrupt_twiddle_for_tests(&mut self) {
        for t in &mut self.fwd {
            if t.len() > 1 {
                t[1] = self.field.add(&t[1], &1);
            }
        }
    }
}

fn bit_reverse_permute(buf: &mut [u64]) {
    let n = buf.len();
    if n <= 2 {
        return;
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = (i.reverse_bits() >> (usize::BITS - bits)) as usize;
        if j > i {
            buf.swap(i, j);
        }
    }
}

/// DFT_n(P) = (P(omega_n^0), ..., P(omega_n^(n-1))) for deg P < n.
pub fn dft(
    plan: &TransformPlan,
    p: &Poly<PrimeField>,
    n: usize,
    counter: &mut CostCounter,
) -> Result<SpectrumVec> {
    if !plan.supports(n) {
        return Err(Error::UnsupportedLength);
    }
    if p.len() > n {
        return Err(Error::LengthOverflow);
    }
    let mut buf = vec![0u64; n];
    buf[..p.len()].copy_from_slice(p.coeffs());
    plan.forward_raw(&mut buf, counter)?;
    Ok(SpectrumVec { values: buf })
}

/// Evaluation transform for polynomials of degree >= n: reduces modulo
/// x^n - 1 first (free wrap of high coefficients), then transforms. The
/// result is the evaluation vector of P at the n-th roots of unity.
pub(crate) fn dft_wrapped(
    plan: &TransformPlan,
    p: &Poly<PrimeField>,
    n: usize,
    counter: &mut CostCounter,
) -> Result<SpectrumVec> {
    if !plan.supports(n) {
        return Err(Error::UnsupportedLength);
    }
    let f = plan.field();
    let mut buf = vec![0u64; n];
    for (i, c) in p.coeffs().iter().enumerate() {
        let slot = i & (n - 1);
        if i < n {
            buf[slot] = *c;
        } else {
            buf[slot] = f.add(&buf[slot], c);
            counter.adds(1);
        }
    }
    plan.forward_raw(&mut buf, counter)?;
    Ok(SpectrumVec { values: buf })
}

/// Inverse transform; dft(inverse_dft(V), n) = V.
pub fn inverse_dft(
    plan: &TransformPlan,
    v: &SpectrumVec,
    counter: &mut CostCounter,
) -> Result<Poly<PrimeField>> {
    let mut buf = v.values.clone();
    plan.inverse_raw(&mut buf, counter)?;
    Ok(Poly::new(buf))
}

/// Extend a known half-length spectrum of P to full length n.
///
/// Even positions are copied from `half`; odd positions are the DFT of
/// P(omega_n x) rem (x^(n/2) - 1), which costs one transform of length n/2
/// plus a linear twist. Requires half[i] = P(omega_(n/2)^i) and deg P < n.
pub fn fft_double(
    plan: &TransformPlan,
    p: &Poly<PrimeField>,
    half: &SpectrumVec,
    counter: &mut CostCounter,
) -> Result<SpectrumVec> {
    let hn = half.len();
    if hn == 0 || !hn.is_power_of_two() {
        return Err(Error::LengthMismatch);
    }
    let n = 2 * hn;
    if !plan.supports(n) {
        return Err(Error::UnsupportedLength);
    }
    if p.len() > n {
        return Err(Error::LengthOverflow);
    }
    let f = plan.field();
    let log2n = n.trailing_zeros();
    // fold P(omega_n x) modulo x^(n/2) - 1
    let mut fd = vec![0u64; hn];
    for (i, c) in p.coeffs().iter().enumerate() {
        let (w, negate) = plan.omega_pow(log2n, i);
        let mut v = f.mul(c, &w);
        counter.mults(1);
        if negate {
            v = f.neg(&v);
            counter.adds(1);
        }
        let slot = i & (hn - 1);
        if i < hn {
            fd[slot] = v;
        } else {
            fd[slot] = f.add(&fd[slot], &v);
            counter.adds(1);
        }
    }
    plan.forward_raw(&mut fd, counter)?;
    let mut out = vec![0u64; n];
    for i in 0..hn {
        out[2 * i] = half.values[i];
        out[2 * i + 1] = fd[i];
    }
    Ok(SpectrumVec { values: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn plan(p: u64, max: u32) -> TransformPlan {
        TransformPlan::new(&PrimeField::new(p).unwrap(), max).unwrap()
    }

    fn direct_eval(f: &PrimeField, p: &Poly<PrimeField>, n: usize) -> Vec<u64> {
        let k = n.trailing_zeros();
        let w = f.root_of_unity(k).unwrap();
        (0..n)
            .map(|i| {
                let x = f.pow(w, i as u64);
                let mut acc = 0u64;
                let mut xp = 1u64;
                for c in p.coeffs() {
                    acc = f.add(&acc, &f.mul(c, &xp));
                    xp = f.mul(&xp, &x);
                }
                acc
            })
            .collect()
    }

    #[test]
    fn dft_f5_examples() {
        let pl = plan(5, 2);
        let mut c = CostCounter::new();
        // P = 1 + 2x at n = 2 with omega = 4
        let p = Poly::new(vec![1u64, 2]);
        let s = dft(&pl, &p, 2, &mut c).unwrap();
        assert_eq!(s.values, vec![3, 4]);
        assert_eq!(c.transforms_at(2), (1, 0));
        // inverse round trip of the same example
        let back = inverse_dft(&pl, &s, &mut c).unwrap();
        assert_eq!(back, p);
        assert_eq!(c.transforms_at(2), (1, 1));
    }

    #[test]
    fn dft_constant_is_flat() {
        let pl = plan(17, 4);
        let mut c = CostCounter::new();
        let p = Poly::new(vec![7u64]);
        let s = dft(&pl, &p, 4, &mut c).unwrap();
        assert_eq!(s.values, vec![7, 7, 7, 7]);
        let v = SpectrumVec { values: vec![9, 9, 9, 9, 9, 9, 9, 9] };
        let back = inverse_dft(&pl, &v, &mut c).unwrap();
        assert_eq!(back, Poly::new(vec![9u64]));
    }

    #[test]
    fn dft_f17_x_at_4() {
        let pl = plan(17, 4);
        let f = pl.field().clone();
        let mut c = CostCounter::new();
        let p = Poly::new(vec![0u64, 1]);
        let s = dft(&pl, &p, 4, &mut c).unwrap();
        // natural order: powers of omega_4
        let w = f.root_of_unity(2).unwrap();
        assert_eq!(s.values, vec![1, w, f.pow(w, 2), f.pow(w, 3)]);
        if w == 4 {
            assert_eq!(s.values, vec![1, 4, 16, 13]);
        }
    }

    #[test]
    fn natural_order_matches_direct_evaluation() {
        let fp = PrimeField::new(DEFAULT_PRIME).unwrap();
        let pl = plan(DEFAULT_PRIME, 10);
        let mut rng = StdRng::seed_from_u64(7);
        for k in 0..=4u32 {
            let n = 1usize << k;
            let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..DEFAULT_PRIME)).collect();
            let p = Poly::new(coeffs);
            let mut c = CostCounter::new();
            let s = dft(&pl, &p, n, &mut c).unwrap();
            assert_eq!(s.values, direct_eval(&fp, &p, n), "n = {n}");
        }
    }

    #[test]
    fn roundtrip_and_counter_events() {
        let pl = plan(DEFAULT_PRIME, 9);
        let mut rng = StdRng::seed_from_u64(1);
        for k in [1u32, 3, 5, 8] {
            let n = 1usize << k;
            let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..DEFAULT_PRIME)).collect();
            let p = Poly::new(coeffs);
            let mut c = CostCounter::new();
            let s = dft(&pl, &p, n, &mut c).unwrap();
            let back = inverse_dft(&pl, &s, &mut c).unwrap();
            assert_eq!(back, p);
            assert_eq!(c.transforms_at(n), (1, 1));
            // butterfly calibration: (n/2) log2 n forward + same + n inverse
            let expect = (n as u64 / 2) * k as u64 * 2 + n as u64;
            assert_eq!(c.field_mults, expect);
        }
    }

    #[test]
    fn doubling_matches_direct_transform() {
        let pl = plan(DEFAULT_PRIME, 10);
        let mut rng = StdRng::seed_from_u64(3);
        for k in 2..=8u32 {
            let n = 1usize << k;
            let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..DEFAULT_PRIME)).collect();
            let p = Poly::new(coeffs);
            let mut c = CostCounter::new();
            let half = dft(&pl, &p.rem_pow2_cyclic(n / 2, pl.field()), n / 2, &mut c).unwrap();
            let mut c2 = CostCounter::new();
            let full = fft_double(&pl, &p, &half, &mut c2).unwrap();
            assert_eq!(full, dft(&pl, &p, n, &mut CostCounter::new()).unwrap());
            // doubling records exactly one forward event at half length
            assert_eq!(c2.transforms_at(n / 2), (1, 0));
            assert_eq!(c2.transforms_at(n), (0, 0));
        }
    }

    #[test]
    fn doubling_f5_example() {
        let pl = plan(5, 2);
        let p = Poly::new(vec![1u64, 2]);
        let mut c = CostCounter::new();
        // half = evaluation of P at the single first root: P(1) = 3
        let half = SpectrumVec { values: vec![3] };
        let full = fft_double(&pl, &p, &half, &mut c).unwrap();
        assert_eq!(full.values, vec![3, 4]);
    }

    #[test]
    fn doubling_constant() {
        let pl = plan(17, 4);
        let p = Poly::new(vec![5u64]);
        let mut c = CostCounter::new();
        let half = SpectrumVec { values: vec![5, 5] };
        let full = fft_double(&pl, &p, &half, &mut c).unwrap();
        assert_eq!(full.values, vec![5, 5, 5, 5]);
    }

    #[test]
    fn length_errors() {
        let pl = plan(17, 2);
        let mut c = CostCounter::new();
        let p = Poly::new(vec![1u64, 1, 1, 1, 1]);
        assert_eq!(dft(&pl, &p, 4, &mut c), Err(Error::LengthOverflow));
        assert_eq!(dft(&pl, &p, 8, &mut c), Err(Error::UnsupportedLength));
        assert_eq!(dft(&pl, &p, 3, &mut c), Err(Error::UnsupportedLength));
        let bad = SpectrumVec { values: vec![] };
        assert_eq!(fft_double(&pl, &p, &bad, &mut c), Err(Error::LengthMismatch));
    }

    #[test]
    fn linearity_on_samples() {
        let pl = plan(DEFAULT_PRIME, 6);
        let f = pl.field().clone();
        let mut rng = StdRng::seed_from_u64(11);
        let n = 32;
        for _ in 0..20 {
            let pa = Poly::new((0..n).map(|_| rng.gen_range(0..DEFAULT_PRIME)).collect::<Vec<_>>());
            let pb = Poly::new((0..n).map(|_| rng.gen_range(0..DEFAULT_PRIME)).collect::<Vec<_>>());
            let (a, b) = (rng.gen_range(0..DEFAULT_PRIME), rng.gen_range(0..DEFAULT_PRIME));
            let mut c = CostCounter::new();
            let mut comb = crate::poly::scale(&f, &pa, &a, &mut c);
            comb = crate::poly::add(&f, &comb, &crate::poly::scale(&f, &pb, &b, &mut c), &mut c);
            let sc = dft(&pl, &comb, n, &mut c).unwrap();
            let sa = dft(&pl, &pa, n, &mut c).unwrap();
            let sb = dft(&pl, &pb, n, &mut c).unwrap();
            for i in 0..n {
                let want = f.add(&f.mul(&sa.values[i], &a), &f.mul(&sb.values[i], &b));
                assert_eq!(sc.values[i], want);
            }
        }
    }
}
