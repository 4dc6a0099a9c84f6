//! Dense univariate polynomial arithmetic.
//!
//! Coefficients are stored low-to-high with no trailing zeros (the zero
//! polynomial is the empty sequence). The slice primitive implements the
//! windowed coefficient notation U_{i;j} with zero extension on both sides,
//! so negative indices read as zero coefficients; the half-gcd recursion
//! relies on this to avoid materializing padded copies.
//!
//! Multiplication backends (schoolbook, Karatsuba, NTT) all produce
//! identical products and tally their work into a caller-supplied
//! [`CostCounter`].

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::counter::CostCounter;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::ntt::{self, TransformPlan};

/// Degree with a dedicated sentinel for the zero polynomial, ordered below
/// every finite degree. Addition propagates the sentinel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// Degree as i64 where the caller has already excluded the zero case.
    pub fn expect_finite(self) -> i64 {
        self.finite().expect("zero polynomial has no finite degree")
    }
}

impl core::ops::Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }
}

impl From<usize> for Degree {
    fn from(v: usize) -> Self {
        Degree::Finite(v as i64)
    }
}

/// Dense polynomial over a field, canonical (no trailing zeros).
#[derive(Debug, Clone)]
pub struct Poly<F: Field> {
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Poly<F> {
    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: F::Elem) -> Self {
        Self::new(vec![c])
    }

    pub fn one(f: &F) -> Self {
        Self::constant(f.one())
    }

    pub fn x(f: &F) -> Self {
        Self::new(vec![f.zero(), f.one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInf
        } else {
            Degree::Finite(self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// Coefficient at any index, zero outside the stored range.
    pub fn coeff(&self, i: i64) -> F::Elem {
        if i < 0 || i as usize >= self.coeffs.len() {
            F::Elem::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Leading coefficient of a nonzero polynomial.
    pub fn lc(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    /// The window U_{i;j} = U_i + U_{i+1} x + ... + U_{j-1} x^(j-1-i),
    /// with U_m = 0 outside the coefficient range and U_{i;j} = 0 for j <= i.
    pub fn slice(&self, i: i64, j: i64) -> Poly<F> {
        if j <= i {
            return Poly::zero();
        }
        let out = (i..j).map(|m| self.coeff(m)).collect();
        Poly::new(out)
    }

    /// Open-ended form U_{i;} = U_{i; deg U + 1}.
    pub fn slice_from(&self, i: i64) -> Poly<F> {
        self.slice(i, self.coeffs.len() as i64)
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Poly<F> {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::Elem::zero(); k];
        out.extend_from_slice(&self.coeffs);
        Poly { coeffs: out }
    }

    /// Coefficients reversed within a fixed window [0, w): x^(w-1) P(1/x).
    pub fn reverse_window(&self, w: usize) -> Poly<F> {
        let out = (0..w).map(|m| self.coeff(w as i64 - 1 - m as i64)).collect();
        Poly::new(out)
    }

    /// P mod x^n (truncation).
    pub fn truncate(&self, n: usize) -> Poly<F> {
        Poly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// P mod (x^n - 1): wrap high coefficients down. Test and fixture helper.
    pub fn rem_pow2_cyclic(&self, n: usize, f: &F) -> Poly<F> {
        let mut out = vec![F::Elem::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            let slot = i % n;
            out[slot] = f.add(&out[slot], c);
        }
        Poly::new(out)
    }

    /// Horner evaluation; test and oracle helper.
    pub fn eval(&self, f: &F, x: &F::Elem) -> F::Elem {
        let mut acc = F::Elem::zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }
}

pub fn add<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>, c: &mut CostCounter) -> Poly<F> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.coeffs.clone();
    for (i, s) in short.coeffs.iter().enumerate() {
        out[i] = f.add(&out[i], s);
    }
    c.adds(short.len() as u64);
    Poly::new(out)
}

pub fn sub<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>, c: &mut CostCounter) -> Poly<F> {
    let n = a.len().max(b.len());
    let out = (0..n as i64)
        .map(|i| f.sub(&a.coeff(i), &b.coeff(i)))
        .collect();
    c.adds(n as u64);
    Poly::new(out)
}

pub fn neg<F: Field>(f: &F, a: &Poly<F>, c: &mut CostCounter) -> Poly<F> {
    c.adds(a.len() as u64);
    Poly::new(a.coeffs.iter().map(|x| f.neg(x)).collect())
}

pub fn scale<F: Field>(f: &F, a: &Poly<F>, k: &F::Elem, c: &mut CostCounter) -> Poly<F> {
    c.mults(a.len() as u64);
    Poly::new(a.coeffs.iter().map(|x| f.mul(x, k)).collect())
}

/// A polynomial multiplication strategy; all implementations agree exactly.
pub trait PolyMul<F: Field> {
    fn mul(&self, f: &F, a: &Poly<F>, b: &Poly<F>, c: &mut CostCounter) -> Result<Poly<F>>;

    /// Middle product P |x|_d R: coefficient i of the result is
    /// sum_{k=0..d} P_k R_{d+i-k}, for i < n - d (the coefficients of the
    /// full product P*R in the window [d, n)). The kernel degree bound d may
    /// exceed deg P; public wrappers enforce the exact-degree contract.
    fn middle_product(
        &self,
        f: &F,
        p: &Poly<F>,
        d: usize,
        r: &Poly<F>,
        n: usize,
        c: &mut CostCounter,
    ) -> Result<Poly<F>>;
}

/// Quadratic convolution; also the direct Eq-style double sum for middle
/// products, which serves as the oracle for the transform paths.
#[derive(Debug, Clone, Copy, Default)]
pub struct Schoolbook;

/// Karatsuba with a schoolbook cutoff. Untrimmed internal slices keep the
/// multiplication count deterministic: for balanced power-of-two lengths
/// above the threshold, mults(2d) = 3 * mults(d) exactly.
#[derive(Debug, Clone, Copy)]
pub struct Karatsuba {
    pub threshold: usize,
}

impl Default for Karatsuba {
    fn default() -> Self {
        Karatsuba { threshold: 32 }
    }
}

/// FFT multiplication via a transform plan (prime fields only).
#[derive(Debug, Clone, Copy)]
pub struct NttMul<'a> {
    pub plan: &'a TransformPlan,
}

impl<F: Field> PolyMul<F> for Schoolbook {
    fn mul(&self, f: &F, a: &Poly<F>, b: &Poly<F>, c: &mut CostCounter) -> Result<Poly<F>> {
        Ok(mul_schoolbook(f, a, b, c))
    }

    fn middle_product(
        &self,
        f: &F,
        p: &Poly<F>,
        d: usize,
        r: &Poly<F>,
        n: usize,
        c: &mut CostCounter,
    ) -> Result<Poly<F>> {
        middle_product_direct(f, p, d, r, n, c)
    }
}

impl<F: Field> PolyMul<F> for Karatsuba {
    fn mul(&self, f: &F, a: &Poly<F>, b: &Poly<F>, c: &mut CostCounter) -> Result<Poly<F>> {
        Ok(mul_karatsuba(f, a, b, self.threshold, c))
    }

    fn middle_product(
        &self,
        f: &F,
        p: &Poly<F>,
        d: usize,
        r: &Poly<F>,
        n: usize,
        c: &mut CostCounter,
    ) -> Result<Poly<F>> {
        if r.deg() >= Degree::Finite(n as i64) {
            return Err(Error::LengthOverflow);
        }
        // full product, then the [d, n) window
        let full = mul_karatsuba(f, p, r, self.threshold, c);
        Ok(full.slice(d as i64, n as i64))
    }
}

impl PolyMul<PrimeField> for NttMul<'_> {
    fn mul(
        &self,
        _f: &PrimeField,
        a: &Poly<PrimeField>,
        b: &Poly<PrimeField>,
        c: &mut CostCounter,
    ) -> Result<Poly<PrimeField>> {
        mul_ntt(self.plan, a, b, c)
    }

    fn middle_product(
        &self,
        _f: &PrimeField,
        p: &Poly<PrimeField>,
        d: usize,
        r: &Poly<PrimeField>,
        n: usize,
        c: &mut CostCounter,
    ) -> Result<Poly<PrimeField>> {
        middle_product_ntt(self.plan, p, d, r, n, c)
    }
}

/// Runtime-selected backend for prime-field pipelines.
#[derive(Debug, Clone, Copy)]
pub enum MulBackend<'a> {
    Schoolbook,
    Karatsuba { threshold: usize },
    Ntt { plan: &'a TransformPlan },
}

impl PolyMul<PrimeField> for MulBackend<'_> {
    fn mul(
        &self,
        f: &PrimeField,
        a: &Poly<PrimeField>,
        b: &Poly<PrimeField>,
        c: &mut CostCounter,
    ) -> Result<Poly<PrimeField>> {
        match self {
            MulBackend::Schoolbook => Schoolbook.mul(f, a, b, c),
            MulBackend::Karatsuba { threshold } => {
                Karatsuba { threshold: *threshold }.mul(f, a, b, c)
            }
            MulBackend::Ntt { plan } => NttMul { plan }.mul(f, a, b, c),
        }
    }

    fn middle_product(
        &self,
        f: &PrimeField,
        p: &Poly<PrimeField>,
        d: usize,
        r: &Poly<PrimeField>,
        n: usize,
        c: &mut CostCounter,
    ) -> Result<Poly<PrimeField>> {
        match self {
            MulBackend::Schoolbook => Schoolbook.middle_product(f, p, d, r, n, c),
            MulBackend::Karatsuba { threshold } => {
                Karatsuba { threshold: *threshold }.middle_product(f, p, d, r, n, c)
            }
            MulBackend::Ntt { plan } => NttMul { plan }.middle_product(f, p, d, r, n, c),
        }
    }
}

pub fn mul_schoolbook<F: Field>(f: &F, a: &Poly<F>, b: &Poly<F>, c: &mut CostCounter) -> Poly<F> {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let out = schoolbook_slices(f, &a.coeffs, &b.coeffs, c);
    Poly::new(out)
}

fn schoolbook_slices<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
    c: &mut CostCounter,
) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::Elem::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    c.mults((a.len() * b.len()) as u64);
    c.adds((a.len() * b.len()) as u64);
    out
}

pub fn mul_karatsuba<F: Field>(
    f: &F,
    a: &Poly<F>,
    b: &Poly<F>,
    threshold: usize,
    c: &mut CostCounter,
) -> Poly<F> {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    Poly::new(kara_slices(f, &a.coeffs, &b.coeffs, threshold.max(1), c))
}

fn kara_slices<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
    threshold: usize,
    c: &mut CostCounter,
) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) <= threshold {
        return schoolbook_slices(f, a, b, c);
    }
    let m = (a.len().max(b.len()) + 1) / 2;
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));
    let z0 = kara_slices(f, a0, b0, threshold, c);
    let z2 = kara_slices(f, a1, b1, threshold, c);
    let sa = add_slices(f, a0, a1, c);
    let sb = add_slices(f, b0, b1, c);
    let mut z1 = kara_slices(f, &sa, &sb, threshold, c);
    for (i, v) in z0.iter().enumerate() {
        z1[i] = f.sub(&z1[i], v);
    }
    for (i, v) in z2.iter().enumerate() {
        z1[i] = f.sub(&z1[i], v);
    }
    c.adds((z0.len() + z2.len()) as u64);
    // z1 is untrimmed, so its nominal extent can overhang the true product
    // length by a zero coefficient when the split is unbalanced
    let out_len = (a.len() + b.len() - 1)
        .max(m + z1.len())
        .max(2 * m + z2.len());
    let mut out = vec![F::Elem::zero(); out_len];
    for (i, v) in z0.iter().enumerate() {
        out[i] = v.clone();
    }
    for (i, v) in z1.iter().enumerate() {
        out[m + i] = f.add(&out[m + i], v);
    }
    for (i, v) in z2.iter().enumerate() {
        out[2 * m + i] = f.add(&out[2 * m + i], v);
    }
    c.adds((z1.len() + z2.len()) as u64);
    out
}

fn add_slices<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], c: &mut CostCounter) -> Vec<F::Elem> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (i, s) in short.iter().enumerate() {
        out[i] = f.add(&out[i], s);
    }
    c.adds(short.len() as u64);
    out
}

/// FFT multiplication at the smallest power of two above deg P + deg Q:
/// two forward and one inverse transform of that length.
pub fn mul_ntt(
    plan: &TransformPlan,
    a: &Poly<PrimeField>,
    b: &Poly<PrimeField>,
    c: &mut CostCounter,
) -> Result<Poly<PrimeField>> {
    if a.is_zero() || b.is_zero() {
        return Ok(Poly::zero());
    }
    let prod_len = a.len() + b.len() - 1;
    let n = prod_len.next_power_of_two();
    if !plan.supports(n) {
        return Err(Error::UnsupportedLength);
    }
    let f = plan.field();
    let sa = ntt::dft(plan, a, n, c)?;
    let sb = ntt::dft(plan, b, n, c)?;
    let prod: Vec<u64> = sa
        .values
        .iter()
        .zip(&sb.values)
        .map(|(x, y)| f.mul(x, y))
        .collect();
    c.mults(n as u64);
    ntt::inverse_dft(plan, &ntt::SpectrumVec { values: prod }, c)
}

/// Direct evaluation of the middle-product double sum; the oracle path.
pub fn middle_product_direct<F: Field>(
    f: &F,
    p: &Poly<F>,
    d: usize,
    r: &Poly<F>,
    n: usize,
    c: &mut CostCounter,
) -> Result<Poly<F>> {
    if r.deg() >= Degree::Finite(n as i64) {
        return Err(Error::LengthOverflow);
    }
    if n < d {
        return Ok(Poly::zero());
    }
    let out_len = n - d;
    let mut out = Vec::with_capacity(out_len);
    for i in 0..out_len {
        let mut acc = F::Elem::zero();
        for k in 0..=d {
            let pk = p.coeff(k as i64);
            let rk = r.coeff((d + i) as i64 - k as i64);
            acc = f.add(&acc, &f.mul(&pk, &rk));
        }
        c.mults(d as u64 + 1);
        c.adds(d as u64 + 1);
        out.push(acc);
    }
    Ok(Poly::new(out))
}

/// Transform-based middle product: idft(dft(P) . dft(R)) quo x^d, taken at
/// the next power of two >= n. Wrap-around only pollutes coefficients below
/// d, so the [d, n) window is exact.
pub fn middle_product_ntt(
    plan: &TransformPlan,
    p: &Poly<PrimeField>,
    d: usize,
    r: &Poly<PrimeField>,
    n: usize,
    c: &mut CostCounter,
) -> Result<Poly<PrimeField>> {
    if r.deg() >= Degree::Finite(n as i64) {
        return Err(Error::LengthOverflow);
    }
    if p.len() > d + 1 {
        return Err(Error::DegreeMismatch);
    }
    if n < d {
        return Ok(Poly::zero());
    }
    let nn = n.next_power_of_two();
    if !plan.supports(nn) {
        return Err(Error::UnsupportedLength);
    }
    let f = plan.field();
    let sp = ntt::dft(plan, p, nn, c)?;
    let sr = ntt::dft(plan, r, nn, c)?;
    let prod: Vec<u64> = sp
        .values
        .iter()
        .zip(&sr.values)
        .map(|(x, y)| f.mul(x, y))
        .collect();
    c.mults(nn as u64);
    let w = ntt::inverse_dft(plan, &ntt::SpectrumVec { values: prod }, c)?;
    Ok(w.slice(d as i64, n as i64))
}

/// Public middle product with the exact-degree contract: deg P must equal d.
pub fn middle_product<F: Field, B: PolyMul<F>>(
    f: &F,
    backend: &B,
    p: &Poly<F>,
    d: usize,
    r: &Poly<F>,
    n: usize,
    c: &mut CostCounter,
) -> Result<Poly<F>> {
    if p.deg() != Degree::Finite(d as i64) {
        return Err(Error::DegreeMismatch);
    }
    if d >= n {
        return Err(Error::DegreeMismatch);
    }
    backend.middle_product(f, p, d, r, n, c)
}

/// Quotient degree at which Euclidean division switches to the Newton path.
pub const NEWTON_QUO_THRESHOLD: usize = 32;

/// Euclidean division: P = quo * Q + rem with deg rem < deg Q.
pub fn quo_rem<F: Field>(
    f: &F,
    p: &Poly<F>,
    q: &Poly<F>,
    c: &mut CostCounter,
) -> Result<(Poly<F>, Poly<F>)> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if p.deg() < q.deg() {
        return Ok((Poly::zero(), p.clone()));
    }
    let dp = p.deg().expect_finite() as usize;
    let dq = q.deg().expect_finite() as usize;
    let delta = dp - dq;
    if q.len() == 1 {
        // unit divisor
        let inv = f.inv(q.lc().unwrap())?;
        c.divs(1);
        return Ok((scale(f, p, &inv, c), Poly::zero()));
    }
    if delta >= NEWTON_QUO_THRESHOLD {
        return quo_rem_newton(f, p, q, c);
    }
    quo_rem_schoolbook(f, p, q, c)
}

fn quo_rem_schoolbook<F: Field>(
    f: &F,
    p: &Poly<F>,
    q: &Poly<F>,
    c: &mut CostCounter,
) -> Result<(Poly<F>, Poly<F>)> {
    let dq = q.deg().expect_finite() as usize;
    let lc_inv = f.inv(q.lc().unwrap())?;
    c.divs(1);
    let mut work = p.coeffs.clone();
    let dp = work.len() - 1;
    let mut quo = vec![F::Elem::zero(); dp - dq + 1];
    for k in (0..=dp - dq).rev() {
        let lead = work[dq + k].clone();
        if lead.is_zero() {
            continue;
        }
        let qc = f.mul(&lead, &lc_inv);
        c.mults(1);
        for (j, qj) in q.coeffs.iter().enumerate() {
            work[k + j] = f.sub(&work[k + j], &f.mul(&qc, qj));
        }
        c.mults(q.len() as u64);
        c.adds(q.len() as u64);
        quo[k] = qc;
    }
    work.truncate(dq);
    Ok((Poly::new(quo), Poly::new(work)))
}

fn quo_rem_newton<F: Field>(
    f: &F,
    p: &Poly<F>,
    q: &Poly<F>,
    c: &mut CostCounter,
) -> Result<(Poly<F>, Poly<F>)> {
    let dp = p.deg().expect_finite() as usize;
    let dq = q.deg().expect_finite() as usize;
    let delta = dp - dq;
    let rp = p.reverse_window(dp + 1);
    let rq = q.reverse_window(dq + 1);
    let iq = series_inv(f, &rq, delta + 1, c)?;
    let kara = Karatsuba::default();
    let qhat = kara.mul(f, &rp.truncate(delta + 1), &iq, c)?.truncate(delta + 1);
    let quo = qhat.reverse_window(delta + 1);
    let prod = kara.mul(f, &quo, q, c)?;
    let rem = sub(f, p, &prod, c);
    debug_assert!(rem.deg() < q.deg());
    Ok((quo, rem))
}

/// Newton iteration for power series inversion: Q * result = 1 mod x^m.
pub fn series_inv<F: Field>(
    f: &F,
    q: &Poly<F>,
    m: usize,
    c: &mut CostCounter,
) -> Result<Poly<F>> {
    if m == 0 {
        return Ok(Poly::zero());
    }
    let q0 = q.coeff(0);
    if q0.is_zero() {
        return Err(Error::NotInvertible);
    }
    let x0 = f.inv(&q0)?;
    c.divs(1);
    let kara = Karatsuba::default();
    let mut cur = Poly::constant(x0);
    let mut prec = 1usize;
    while prec < m {
        prec = (2 * prec).min(m);
        // cur <- cur * (2 - Q*cur) mod x^prec
        let e = kara.mul(f, &q.truncate(prec), &cur, c)?.truncate(prec);
        let two = f.add(&f.one(), &f.one());
        let mut corr: Vec<F::Elem> = e.coeffs().iter().map(|v| f.neg(v)).collect();
        c.adds(e.len() as u64);
        if corr.is_empty() {
            corr.push(two);
        } else {
            corr[0] = f.add(&corr[0], &two);
            c.adds(1);
        }
        let corr = Poly::new(corr);
        cur = kara.mul(f, &cur, &corr, c)?.truncate(prec);
    }
    Ok(cur.truncate(m))
}
