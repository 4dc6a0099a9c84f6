//! Half-gcd: divide-and-conquer computation of Bezout matrix products.
//!
//! Five variants live here, all returning the starred product B*_(1;k+1)
//! (which equals the plain B_(1;k+1) on normal inputs):
//!
//! - [`hgcd_normal_basic`]: generic backends, normal sequences only,
//!   optional middle-product update;
//! - [`hgcd_normal_fft`]: power-of-two block sizes with FFT doubling, FFT
//!   caching (spectra returned to the parent), and the transform-based
//!   middle product; per internal node of size k it issues exactly 12
//!   length-k and 8 length-(k/2) transforms;
//! - [`hgcd_normal_any`]: arbitrary k decomposed into decreasing powers of
//!   two, each block handled by the FFT variant;
//! - [`hgcd_general`]: arbitrary (possibly abnormal) sequences with the
//!   degeneracy quotient step, generic backends;
//! - [`hgcd_general_fft`]: the general case with a uniform transform length
//!   l at every node (shrinking only across recursion levels).
//!
//! Degeneracy bookkeeping: after a recursive call for h steps, delta =
//! h - deg M measures how far the sequence fell short; abnormal inputs make
//! delta positive and trigger an explicit quotient update.

use alloc::vec::Vec;

use crate::counter::CostCounter;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::mat2::{
    mat_dft_wrapped, mat_middle_product_cached, mat_mul, mat_unwrap_product,
    mat_vec_middle_product, Mat2Poly, Mat2Spectrum,
};
use crate::ntt::{self, TransformPlan};
use crate::poly::{self, Degree, Poly, PolyMul, Schoolbook};

/// Recursion cutoff below which a schoolbook quotient loop takes over.
/// Counter-based accounting tests force this to 1 so the per-node transform
/// counts apply at every level.
pub const DEFAULT_THRESHOLD: usize = 32;

/// A Bezout product together with its cached spectrum (FFT caching): the
/// spectrum holds the evaluations of the matrix at the roots of unity of
/// its length, i.e. the transform of the matrix reduced mod x^len - 1.
#[derive(Debug, Clone)]
pub struct HalfGcdResult {
    pub matrix: Mat2Poly<PrimeField>,
    pub spectrum: Mat2Spectrum,
}

/// What a recursion node did; used by the instrumentation tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// schoolbook loop at or below the threshold
    Base,
    /// k <= l/2 pass-through that only doubles the child spectrum
    Shortcut,
    /// returned early because the requested steps were already exhausted
    EarlyExit,
    /// full divide-and-conquer node
    Internal,
}

/// Per-node cost snapshot, children excluded.
#[derive(Debug, Clone)]
pub struct NodeStats {
    pub k: usize,
    pub transform_len: usize,
    pub kind: NodeKind,
    pub own: CostCounter,
}

type Trace<'a> = Option<&'a mut Vec<NodeStats>>;

fn push_trace(trace: &mut Trace<'_>, stats: NodeStats) {
    if let Some(t) = trace.as_deref_mut() {
        t.push(stats);
    }
}

// ---------------------------------------------------------------------------
// schoolbook quotient loops (recursion base cases)
// ---------------------------------------------------------------------------

/// B_(1;k+1)(P, Q) for a normal prefix: exactly k quotient steps, each of
/// degree one. Any other shape is AbnormalSequence.
fn euclid_steps_normal<F: Field, B: PolyMul<F>>(
    f: &F,
    backend: &B,
    p: &Poly<F>,
    q: &Poly<F>,
    k: usize,
    c: &mut CostCounter,
) -> Result<Mat2Poly<F>> {
    let mut b = Mat2Poly::identity(f);
    let mut a0 = p.clone();
    let mut a1 = q.clone();
    for _ in 0..k {
        if a1.is_zero() {
            return Err(Error::AbnormalSequence);
        }
        let (quo, rem) = poly::quo_rem(f, &a0, &a1, c)?;
        if quo.deg() != Degree::Finite(1) {
            return Err(Error::AbnormalSequence);
        }
        b = apply_elementary(f, backend, &quo, &b, c)?;
        a0 = a1;
        a1 = rem;
    }
    Ok(b)
}

/// B*_(1;k+1)(P, Q) by the literal definition: quotient steps until the
/// re-indexed position passes k, identity factors implicit.
fn euclid_steps_general<F: Field, B: PolyMul<F>>(
    f: &F,
    backend: &B,
    p: &Poly<F>,
    q: &Poly<F>,
    k: usize,
    c: &mut CostCounter,
) -> Result<Mat2Poly<F>> {
    let d = p.deg().finite().ok_or(Error::PreconditionViolated)?;
    let mut b = Mat2Poly::identity(f);
    let mut a0 = p.clone();
    let mut a1 = q.clone();
    loop {
        // remaining starred factors up to k are all Id iff deg a1 < d - k
        if a1.is_zero() || a1.deg() < Degree::Finite(d - k as i64) {
            return Ok(b);
        }
        let (quo, rem) = poly::quo_rem(f, &a0, &a1, c)?;
        b = apply_elementary(f, backend, &quo, &b, c)?;
        a0 = a1;
        a1 = rem;
    }
}

/// Left-multiply by the elementary factor [[0,1],[1,-quo]] using two
/// polynomial products: rows swap and the new bottom row is (old top) -
/// quo * (old bottom).
fn apply_elementary<F: Field, B: PolyMul<F>>(
    f: &F,
    backend: &B,
    quo: &Poly<F>,
    b: &Mat2Poly<F>,
    c: &mut CostCounter,
) -> Result<Mat2Poly<F>> {
    let t21 = backend.mul(f, quo, &b.m21, c)?;
    let t22 = backend.mul(f, quo, &b.m22, c)?;
    Ok(Mat2Poly {
        m11: b.m21.clone(),
        m12: b.m22.clone(),
        m21: poly::sub(f, &b.m11, &t21, c),
        m22: poly::sub(f, &b.m12, &t22, c),
    })
}

// ---------------------------------------------------------------------------
// shared update step (middle product + top-coefficient recovery)
// ---------------------------------------------------------------------------

/// The single coefficient of the first entry of M (P, Q)^T at `position`,
/// in O(deg M) operations: sum_i (M11)_i P_(pos-i) + (M12)_i Q_(pos-i).
pub fn recover_top_term<F: Field>(
    f: &F,
    m: &Mat2Poly<F>,
    p: &Poly<F>,
    q: &Poly<F>,
    position: i64,
    c: &mut CostCounter,
) -> F::Elem {
    let mut acc = f.zero();
    for (i, mc) in m.m11.coeffs().iter().enumerate() {
        acc = f.add(&acc, &f.mul(mc, &p.coeff(position - i as i64)));
    }
    for (i, mc) in m.m12.coeffs().iter().enumerate() {
        acc = f.add(&acc, &f.mul(mc, &q.coeff(position - i as i64)));
    }
    c.mults((m.m11.len() + m.m12.len()) as u64);
    c.adds((m.m11.len() + m.m12.len()) as u64);
    acc
}

/// Compute the windows of (Ptilde, Qtilde) = M (P, Q)^T needed by the
/// second recursive call, via the matrix-vector middle product plus the
/// top-coefficient recovery.
///
/// With d = deg P and delta the degeneracy of M (deg M = h - delta), the
/// returned slices are based at a0 = d - h - 2*ht - delta and include the
/// top coefficient of Ptilde at d - h + delta. Negative window starts read
/// zeros, which implements the x^k padding implicitly.
fn update_step<F: Field, B: PolyMul<F>>(
    f: &F,
    backend: &B,
    p: &Poly<F>,
    q: &Poly<F>,
    h: usize,
    ht: usize,
    delta: usize,
    m: &Mat2Poly<F>,
    c: &mut CostCounter,
) -> Result<(Poly<F>, Poly<F>)> {
    let d = p.deg().expect_finite();
    let dm = h - delta;
    debug_assert_eq!(m.deg(), Degree::Finite(dm as i64));
    let out = 2 * ht + 2 * delta;
    let n = dm + out;
    let base = d - 2 * (h + ht) as i64;
    let (wp, wq) = if out == 0 {
        (Poly::zero(), Poly::zero())
    } else {
        let rp = p.slice(base, base + n as i64);
        let rq = q.slice(base, base + n as i64);
        mat_vec_middle_product(f, backend, m, dm, &rp, &rq, n, c)?
    };
    let ptop = recover_top_term(f, m, p, q, d - h as i64 + delta as i64, c);
    let mut pt = Vec::with_capacity(out + 1);
    for i in 0..out as i64 {
        pt.push(wp.coeff(i));
    }
    pt.push(ptop);
    Ok((Poly::new(pt), wq))
}

// ---------------------------------------------------------------------------
// Normal case, generic backends
// ---------------------------------------------------------------------------

/// B_(1;k+1)(P, Q) for a normal remainder sequence; deg P >= 2k must be
/// arranged by the caller (pad with x^k if needed). With the middle-product
/// flag the update step runs through [`mat_vec_middle_product`] and the
/// linear-time top recovery instead of full products.
pub fn hgcd_normal_basic<F: Field, B: PolyMul<F>>(
    f: &F,
    backend: &B,
    p: &Poly<F>,
    q: &Poly<F>,
    k: usize,
    use_middle_product: bool,
    threshold: usize,
    c: &mut CostCounter,
) -> Result<Mat2Poly<F>> {
    let d = p.deg().finite().ok_or(Error::PreconditionViolated)?;
    if q.deg() >= p.deg() || d < 2 * k as i64 {
        return Err(Error::PreconditionViolated);
    }
    rec_normal_basic(f, backend, p, q, k, use_middle_product, threshold.max(1), c)
}

fn rec_normal_basic<F: Field, B: PolyMul<F>>(
    f: &F,
    backend: &B,
    p: &Poly<F>,
    q: &Poly<F>,
    k: usize,
    use_mp: bool,
    threshold: usize,
    c: &mut CostCounter,
) -> Result<Mat2Poly<F>> {
    if k == 0 {
        return Ok(Mat2Poly::identity(f));
    }
    let d = p.deg().expect_finite();
    if k <= threshold {
        let ps = p.slice_from(d - 2 * k as i64);
        let qs = q.slice_from(d - 2 * k as i64);
        return euclid_steps_normal(f, backend, &ps, &qs, k, c);
    }
    let h = (k + 1) / 2;
    let ht = k - h;
    let m = rec_normal_basic(
        f,
        backend,
        &p.slice_from(d - 2 * h as i64),
        &q.slice_from(d - 2 * h as i64),
        h,
        use_mp,
        threshold,
        c,
    )?;
    if m.deg() != Degree::Finite(h as i64) {
        return Err(Error::AbnormalSequence);
    }
    let (pt, qt) = if use_mp {
        update_step(f, backend, p, q, h, ht, 0, &m, c)?
    } else {
        // full products on the top 2k coefficients, then re-slice
        let u = p.slice_from(d - 2 * k as i64);
        let v = q.slice_from(d - 2 * k as i64);
        let (fp, fq) = m.apply(f, backend, &u, &v, c)?;
        (fp.slice_from(h as i64), fq.slice_from(h as i64))
    };
    if pt.deg() != Degree::Finite(2 * ht as i64) {
        return Err(Error::AbnormalSequence);
    }
    let mt = rec_normal_basic(f, backend, &pt, &qt, ht, use_mp, threshold, c)?;
    mat_mul(f, backend, &mt, &m, c)
}

// ---------------------------------------------------------------------------
// Normal case, binary FFT (power-of-two k)
// ---------------------------------------------------------------------------

/// B_(1;k+1)(P, Q) and its length-k spectrum for power-of-two k, using FFT
/// doubling, the cached-spectrum middle product, and the wrapped final
/// product. Requires deg P >= 2k and normality of the first k quotients.
pub fn hgcd_normal_fft(
    plan: &TransformPlan,
    p: &Poly<PrimeField>,
    q: &Poly<PrimeField>,
    k: usize,
    threshold: usize,
    c: &mut CostCounter,
) -> Result<HalfGcdResult> {
    hgcd_normal_fft_traced(plan, p, q, k, threshold, c, None)
}

/// As [`hgcd_normal_fft`], recording one [`NodeStats`] per recursion node
/// with the node's own (children-excluded) costs.
pub fn hgcd_normal_fft_traced(
    plan: &TransformPlan,
    p: &Poly<PrimeField>,
    q: &Poly<PrimeField>,
    k: usize,
    threshold: usize,
    c: &mut CostCounter,
    mut trace: Trace<'_>,
) -> Result<HalfGcdResult> {
    if !k.is_power_of_two() || !plan.supports(k) {
        return Err(Error::UnsupportedLength);
    }
    let d = p.deg().finite().ok_or(Error::PreconditionViolated)?;
    if q.deg() >= p.deg() || d < 2 * k as i64 {
        return Err(Error::PreconditionViolated);
    }
    rec_normal_fft(plan, p, q, k, threshold.max(1), c, &mut trace)
}

fn rec_normal_fft(
    plan: &TransformPlan,
    p: &Poly<PrimeField>,
    q: &Poly<PrimeField>,
    k: usize,
    threshold: usize,
    c: &mut CostCounter,
    trace: &mut Trace<'_>,
) -> Result<HalfGcdResult> {
    let f = plan.field().clone();
    let d = p.deg().expect_finite();
    if k <= threshold {
        let mut own = CostCounter::new();
        let ps = p.slice_from(d - 2 * k as i64);
        let qs = q.slice_from(d - 2 * k as i64);
        let b = euclid_steps_normal(&f, &Schoolbook, &ps, &qs, k, &mut own)?;
        let spectrum = mat_dft_wrapped(plan, &b, k, &mut own)?;
        push_trace(
            trace,
            NodeStats { k, transform_len: k, kind: NodeKind::Base, own: own.clone() },
        );
        c.absorb(&own);
        return Ok(HalfGcdResult { matrix: b, spectrum });
    }
    let h = k / 2;
    let mut own = CostCounter::new();

    // step 3: first half on the top 2h coefficients, then double its DFT
    let child = rec_normal_fft(
        plan,
        &p.slice_from(d - 2 * h as i64),
        &q.slice_from(d - 2 * h as i64),
        h,
        threshold,
        c,
        trace,
    )?;
    let m = child.matrix;
    if m.deg() != Degree::Finite(h as i64) {
        return Err(Error::AbnormalSequence);
    }
    let mhat = double_spectrum(plan, &m, &child.spectrum, &mut own)?;

    // step 4: middle product against the two h-blocks of (P, Q), plus the
    // top coefficient of Ptilde recovered in linear time
    let rhs = Mat2Poly {
        m11: p.slice(d - 4 * h as i64, d - 2 * h as i64),
        m12: p.slice(d - 3 * h as i64, d - h as i64),
        m21: q.slice(d - 4 * h as i64, d - 2 * h as i64),
        m22: q.slice(d - 3 * h as i64, d - h as i64),
    };
    let w = mat_middle_product_cached(plan, &mhat, h, &rhs, &mut own)?;
    let ptop = recover_top_term(&f, &m, p, q, d - h as i64, &mut own);
    let pt = assemble_blocks(&[&w.m11, &w.m12], h, Some(ptop));
    let qt = assemble_blocks(&[&w.m21, &w.m22], h, None);
    if pt.deg() != Degree::Finite(2 * h as i64) {
        return Err(Error::AbnormalSequence);
    }

    // step 5: second half on the fresh pair
    let child2 = rec_normal_fft(plan, &pt, &qt, h, threshold, c, trace)?;
    let mt = child2.matrix;
    if mt.deg() != Degree::Finite(h as i64) {
        return Err(Error::AbnormalSequence);
    }
    let mthat = double_spectrum(plan, &mt, &child2.spectrum, &mut own)?;

    // step 6: pointwise product, unwrap with the leading-coefficient fix
    let spectrum = mthat.pointwise_mul(&f, &mhat, &mut own)?;
    let matrix = mat_unwrap_product(
        plan,
        &spectrum,
        &mt.coeff_matrix(h as i64),
        &m.coeff_matrix(h as i64),
        k,
        &mut own,
    )?;
    push_trace(
        trace,
        NodeStats { k, transform_len: k, kind: NodeKind::Internal, own: own.clone() },
    );
    c.absorb(&own);
    Ok(HalfGcdResult { matrix, spectrum })
}

/// FFT doubling of all four entries: four forward transforms of half length.
fn double_spectrum(
    plan: &TransformPlan,
    m: &Mat2Poly<PrimeField>,
    half: &Mat2Spectrum,
    c: &mut CostCounter,
) -> Result<Mat2Spectrum> {
    let wrap = |v: &[u64]| ntt::SpectrumVec { values: v.to_vec() };
    Ok(Mat2Spectrum {
        e11: ntt::fft_double(plan, &m.m11, &wrap(&half.e11), c)?.values,
        e12: ntt::fft_double(plan, &m.m12, &wrap(&half.e12), c)?.values,
        e21: ntt::fft_double(plan, &m.m21, &wrap(&half.e21), c)?.values,
        e22: ntt::fft_double(plan, &m.m22, &wrap(&half.e22), c)?.values,
    })
}

/// Concatenate fixed-width blocks (each padded to `width`) and optionally a
/// single top coefficient.
fn assemble_blocks<F: Field>(blocks: &[&Poly<F>], width: usize, top: Option<F::Elem>) -> Poly<F> {
    let mut v = Vec::with_capacity(blocks.len() * width + 1);
    for b in blocks {
        for i in 0..width as i64 {
            v.push(b.coeff(i));
        }
    }
    if let Some(t) = top {
        v.push(t);
    }
    Poly::new(v)
}

// ---------------------------------------------------------------------------
// Normal case, arbitrary k
// ---------------------------------------------------------------------------

/// B_(1;k+1)(P, Q) for arbitrary k: k is decomposed into decreasing powers
/// of two; each block runs through the FFT variant and the residual pair is
/// advanced with a middle-product update.
pub fn hgcd_normal_any(
    plan: &TransformPlan,
    p: &Poly<PrimeField>,
    q: &Poly<PrimeField>,
    k: usize,
    threshold: usize,
    c: &mut CostCounter,
) -> Result<Mat2Poly<PrimeField>> {
    let d = p.deg().finite().ok_or(Error::PreconditionViolated)?;
    if q.deg() >= p.deg() || d < 2 * k as i64 {
        return Err(Error::PreconditionViolated);
    }
    if k == 0 {
        return Ok(Mat2Poly::identity(plan.field()));
    }
    let f = plan.field().clone();
    let h = prev_power_of_two(k);
    let ht = k - h;
    let m = hgcd_normal_fft(plan, p, q, h, threshold, c)?.matrix;
    if ht == 0 {
        return Ok(m);
    }
    if m.deg() != Degree::Finite(h as i64) {
        return Err(Error::AbnormalSequence);
    }
    let ntt_backend = poly::NttMul { plan };
    let (pt, qt) = update_step(&f, &ntt_backend, p, q, h, ht, 0, &m, c)?;
    if pt.deg() != Degree::Finite(2 * ht as i64) {
        return Err(Error::AbnormalSequence);
    }
    let mt = hgcd_normal_any(plan, &pt, &qt, ht, threshold, c)?;
    mat_mul(&f, &ntt_backend, &mt, &m, c)
}

fn prev_power_of_two(k: usize) -> usize {
    debug_assert!(k >= 1);
    1 << (usize::BITS - 1 - k.leading_zeros())
}

// ---------------------------------------------------------------------------
// General case, generic backends
// ---------------------------------------------------------------------------

/// B*_(1;k+1)(P, Q) for arbitrary inputs with deg Q < deg P and k <= deg P.
/// Abnormal sequences are handled by the degeneracy quotient step, not an
/// error. Any split h works; this implementation uses h = ceil(k/2).
pub fn hgcd_general<F: Field, B: PolyMul<F>>(
    f: &F,
    backend: &B,
    p: &Poly<F>,
    q: &Poly<F>,
    k: usize,
    threshold: usize,
    c: &mut CostCounter,
) -> Result<Mat2Poly<F>> {
    let d = p.deg().finite().ok_or(Error::PreconditionViolated)?;
    if q.deg() >= p.deg() || k as i64 > d {
        return Err(Error::PreconditionViolated);
    }
    rec_general(f, backend, p, q, k, threshold.max(1), c)
}

fn rec_general<F: Field, B: PolyMul<F>>(
    f: &F,
    backend: &B,
    p: &Poly<F>,
    q: &Poly<F>,
    k: usize,
    threshold: usize,
    c: &mut CostCounter,
) -> Result<Mat2Poly<F>> {
    let d = p.deg().expect_finite();
    // step 1: nothing to do if Q vanishes on the top k coefficients
    if q.slice(d - k as i64, d).is_zero() {
        return Ok(Mat2Poly::identity(f));
    }
    if k <= threshold {
        let ps = p.slice_from(d - 2 * k as i64);
        let qs = q.slice_from(d - 2 * k as i64);
        return euclid_steps_general(f, backend, &ps, &qs, k, c);
    }
    let h = (k + 1) / 2;
    let ht = k - h;
    let m = rec_general(
        f,
        backend,
        &p.slice_from(d - 2 * h as i64),
        &q.slice_from(d - 2 * h as i64),
        h,
        threshold,
        c,
    )?;
    let delta = h - m.deg().expect_finite() as usize;

    // step 5: windows of (Ptilde, Qtilde) from a0 = d - h - 2ht - delta
    let a0 = d - (h + 2 * ht + delta) as i64;
    let (pt, qt) = update_step(f, backend, p, q, h, ht, delta, &m, c)?;

    // step 6: done if Qtilde vanishes from d - k on
    if qt.deg() < Degree::Finite((d - k as i64) - a0) {
        return Ok(m);
    }

    let (m, pt, qt, hp) = if delta > 0 {
        // step 7: degeneracy update with the full quotient; the quotient of
        // the windows equals the true quotient, and the window remainder is
        // exact from position deg D on, which is precisely where the new
        // base d - k - h' starts
        let (quo, rem) = poly::quo_rem(f, &pt, &qt, c)?;
        let m = apply_elementary(f, backend, &quo, &m, c)?;
        let hp = k - m.deg().expect_finite() as usize;
        let shift = (d - (k + hp) as i64) - a0;
        debug_assert!(shift >= quo.deg().expect_finite());
        (m, qt.slice_from(shift), rem.slice_from(shift), hp)
    } else {
        let hp = ht;
        let shift = (d - (k + hp) as i64) - a0;
        (m, pt.slice_from(shift), qt.slice_from(shift), hp)
    };

    // step 8: finish the remaining hp steps on the updated pair
    let mt = if hp == 0 {
        Mat2Poly::identity(f)
    } else {
        rec_general(f, backend, &pt, &qt, hp, threshold, c)?
    };
    mat_mul(f, backend, &mt, &m, c)
}

// ---------------------------------------------------------------------------
// General case, binary FFT
// ---------------------------------------------------------------------------

/// B*_(1;k+1)(P, Q) and its length-l spectrum. l is a power of two >= k;
/// every transform issued by one invocation level has length l or, for the
/// FFT-doubling halves, l/2. Choosing l as the smallest power of two >= k
/// keeps the cost bound of the general binary-FFT analysis.
pub fn hgcd_general_fft(
    plan: &TransformPlan,
    p: &Poly<PrimeField>,
    q: &Poly<PrimeField>,
    k: usize,
    ell: usize,
    threshold: usize,
    c: &mut CostCounter,
) -> Result<HalfGcdResult> {
    hgcd_general_fft_traced(plan, p, q, k, ell, threshold, c, None)
}

/// As [`hgcd_general_fft`], recording per-node costs.
#[allow(clippy::too_many_arguments)]
pub fn hgcd_general_fft_traced(
    plan: &TransformPlan,
    p: &Poly<PrimeField>,
    q: &Poly<PrimeField>,
    k: usize,
    ell: usize,
    threshold: usize,
    c: &mut CostCounter,
    mut trace: Trace<'_>,
) -> Result<HalfGcdResult> {
    if !ell.is_power_of_two() || !plan.supports(ell) || k > ell {
        return Err(Error::UnsupportedLength);
    }
    let d = p.deg().finite().ok_or(Error::PreconditionViolated)?;
    if q.deg() >= p.deg() || k as i64 > d {
        return Err(Error::PreconditionViolated);
    }
    rec_general_fft(plan, p, q, k, ell, threshold.max(1), c, &mut trace)
}

#[allow(clippy::too_many_arguments)]
fn rec_general_fft(
    plan: &TransformPlan,
    p: &Poly<PrimeField>,
    q: &Poly<PrimeField>,
    k: usize,
    ell: usize,
    threshold: usize,
    c: &mut CostCounter,
    trace: &mut Trace<'_>,
) -> Result<HalfGcdResult> {
    let f = plan.field().clone();
    let d = p.deg().expect_finite();

    // step 1
    if q.slice(d - k as i64, d).is_zero() {
        push_trace(
            trace,
            NodeStats { k, transform_len: ell, kind: NodeKind::EarlyExit, own: CostCounter::new() },
        );
        return Ok(HalfGcdResult {
            matrix: Mat2Poly::identity(&f),
            spectrum: Mat2Spectrum::identity(ell),
        });
    }

    // step 2 / threshold base
    if ell <= threshold {
        let mut own = CostCounter::new();
        let ps = p.slice_from(d - 2 * k as i64);
        let qs = q.slice_from(d - 2 * k as i64);
        let b = euclid_steps_general(&f, &Schoolbook, &ps, &qs, k, &mut own)?;
        let spectrum = mat_dft_wrapped(plan, &b, ell, &mut own)?;
        push_trace(
            trace,
            NodeStats { k, transform_len: ell, kind: NodeKind::Base, own: own.clone() },
        );
        c.absorb(&own);
        return Ok(HalfGcdResult { matrix: b, spectrum });
    }

    // step 3: halve the transform length while k allows it
    if k <= ell / 2 {
        let child = rec_general_fft(plan, p, q, k, ell / 2, threshold, c, trace)?;
        let mut own = CostCounter::new();
        let spectrum = double_spectrum(plan, &child.matrix, &child.spectrum, &mut own)?;
        push_trace(
            trace,
            NodeStats { k, transform_len: ell, kind: NodeKind::Shortcut, own: own.clone() },
        );
        c.absorb(&own);
        return Ok(HalfGcdResult { matrix: child.matrix, spectrum });
    }

    let h = ell / 2;
    let mut own = CostCounter::new();

    // step 5
    let child = rec_general_fft(
        plan,
        &p.slice_from(d - 2 * h as i64),
        &q.slice_from(d - 2 * h as i64),
        h,
        ell / 2,
        threshold,
        c,
        trace,
    )?;
    let m = child.matrix;
    let mut mhat = double_spectrum(plan, &m, &child.spectrum, &mut own)?;
    let mut deg_m = m.deg().expect_finite() as usize;
    let delta = h - deg_m;

    // step 6: two blocks of width h + delta starting at a0 = d - 3h - delta
    let a0 = d - (3 * h + delta) as i64;
    let dm = h - delta;
    let step = (h + delta) as i64;
    let rhs = Mat2Poly {
        m11: p.slice(d - 4 * h as i64, d - 2 * h as i64),
        m12: p.slice(d - 4 * h as i64 + step, d - 2 * h as i64 + step),
        m21: q.slice(d - 4 * h as i64, d - 2 * h as i64),
        m22: q.slice(d - 4 * h as i64 + step, d - 2 * h as i64 + step),
    };
    let w = mat_middle_product_cached(plan, &mhat, dm, &rhs, &mut own)?;
    let ptop = recover_top_term(&f, &m, p, q, d - h as i64 + delta as i64, &mut own);
    let mut pt = assemble_blocks(&[&w.m11, &w.m12], h + delta, Some(ptop));
    let mut qt = assemble_blocks(&[&w.m21, &w.m22], h + delta, None);
    debug_assert_eq!(pt.deg(), Degree::Finite((2 * h + 2 * delta) as i64));

    // step 7: all requested steps already exhausted
    if qt.deg() < Degree::Finite((d - k as i64) - a0) {
        push_trace(
            trace,
            NodeStats { k, transform_len: ell, kind: NodeKind::EarlyExit, own: own.clone() },
        );
        c.absorb(&own);
        return Ok(HalfGcdResult { matrix: m, spectrum: mhat });
    }

    // step 8: degeneracy update, performed on the spectrum and one tracked
    // leading-coefficient matrix; the updated M is never materialized
    let mut lead = m.coeff_matrix(deg_m as i64);
    let hp;
    if delta > 0 {
        let (quo, rem) = poly::quo_rem(&f, &pt, &qt, &mut own)?;
        let dd = quo.deg().expect_finite() as usize;
        let dhat = ntt::dft_wrapped(plan, &quo, ell, &mut own)?;
        // pointwise J update: rows swap, new bottom row subtracts D * old top
        for i in 0..ell {
            let d_i = dhat.values[i];
            let (m11, m12) = (mhat.e11[i], mhat.e12[i]);
            let (m21, m22) = (mhat.e21[i], mhat.e22[i]);
            mhat.e11[i] = m21;
            mhat.e12[i] = m22;
            mhat.e21[i] = f.sub(&m11, &f.mul(&d_i, &m21));
            mhat.e22[i] = f.sub(&m12, &f.mul(&d_i, &m22));
        }
        own.mults(2 * ell as u64);
        own.adds(2 * ell as u64);
        // lead update: J_(deg J) M_(deg M) = [[0,0],[0,-D_top]] * lead, which
        // scales the bottom row of the old leading matrix
        let dtop = f.neg(quo.lc().unwrap());
        lead = [[0, 0], [f.mul(&dtop, &lead[1][0]), f.mul(&dtop, &lead[1][1])]];
        own.mults(2);
        deg_m += dd;
        hp = k - deg_m;
        let shift = (d - (k + hp) as i64) - a0;
        debug_assert!(shift >= dd as i64);
        let new_pt = qt.slice_from(shift);
        qt = rem.slice_from(shift);
        pt = new_pt;
    } else {
        hp = k - h;
        let shift = (d - (k + hp) as i64) - a0;
        pt = pt.slice_from(shift);
        qt = qt.slice_from(shift);
    }

    // step 9
    let child2 = rec_general_fft(plan, &pt, &qt, hp, ell / 2, threshold, c, trace)?;
    let mt = child2.matrix;
    let mthat = double_spectrum(plan, &mt, &child2.spectrum, &mut own)?;

    // step 10: wrapped product; the x^ell coefficient exists only when the
    // full k = ell steps were requested
    let spectrum = mthat.pointwise_mul(&f, &mhat, &mut own)?;
    let lead_left = if k == ell {
        mt.coeff_matrix(hp as i64)
    } else {
        [[0, 0], [0, 0]]
    };
    let matrix = mat_unwrap_product(plan, &spectrum, &lead_left, &lead, ell, &mut own)?;
    push_trace(
        trace,
        NodeStats { k, transform_len: ell, kind: NodeKind::Internal, own: own.clone() },
    );
    c.absorb(&own);
    Ok(HalfGcdResult { matrix, spectrum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid;
    use crate::field::{PrimeField, DEFAULT_PRIME};
    use crate::gen;
    use crate::poly::Karatsuba;

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    fn x3_x2p1() -> (Poly<PrimeField>, Poly<PrimeField>) {
        (Poly::new(vec![0, 0, 0, 1]), Poly::new(vec![1, 0, 1]))
    }

    fn oracle_starred(
        f: &PrimeField,
        p: &Poly<PrimeField>,
        q: &Poly<PrimeField>,
        k: usize,
    ) -> Mat2Poly<PrimeField> {
        let mut c = CostCounter::new();
        euclid::starred_bezout(f, p, q, k, &mut c).unwrap()
    }

    #[test]
    fn base_case_matches_oracle_b1() {
        let f = fp();
        let (p, q) = x3_x2p1();
        let mut c = CostCounter::new();
        let got = hgcd_normal_basic(&f, &Schoolbook, &p, &q, 1, false, 1, &mut c).unwrap();
        let seq = euclid::remainder_sequence(&f, &p, &q, &mut c).unwrap();
        assert_eq!(got, seq.bezout[0]);
    }

    #[test]
    fn normal_basic_full_run_matches_oracle() {
        let f = fp();
        let (p, q) = x3_x2p1();
        let mut c = CostCounter::new();
        // lift to degree >= 2k = 6 via x^3 (Bezout products are invariant)
        let (ps, qs) = (p.shift_up(3), q.shift_up(3));
        for &mp in &[false, true] {
            let got = hgcd_normal_basic(&f, &Schoolbook, &ps, &qs, 3, mp, 1, &mut c).unwrap();
            let seq = euclid::remainder_sequence(&f, &p, &q, &mut c).unwrap();
            let want = euclid::bezout_product(&f, &seq, 1, 4, &mut c).unwrap();
            assert_eq!(got, want, "mp = {mp}");
        }
    }

    #[test]
    fn normal_paths_match_oracle_random() {
        let f = fp();
        let plan = TransformPlan::new(&f, 12).unwrap();
        let mut rng = gen::rng_for(1234);
        let mut c = CostCounter::new();
        for &d in &[8usize, 30, 64, 127] {
            let (p, q) = gen::normal_pair(&f, &mut rng, d);
            let seq = euclid::remainder_sequence(&f, &p, &q, &mut c).unwrap();
            for k in [1usize, 2, 3, d / 4, d / 2] {
                let k = k.max(1).min(d / 2);
                let want = euclid::bezout_product(&f, &seq, 1, k + 1, &mut c).unwrap();
                for &mp in &[false, true] {
                    for thr in [1usize, 4] {
                        let got =
                            hgcd_normal_basic(&f, &Schoolbook, &p, &q, k, mp, thr, &mut c).unwrap();
                        assert_eq!(got, want, "basic d={d} k={k} mp={mp} thr={thr}");
                    }
                }
                if k.is_power_of_two() {
                    let got = hgcd_normal_fft(&plan, &p, &q, k, 1, &mut c).unwrap();
                    assert_eq!(got.matrix, want, "fft d={d} k={k}");
                    let expect_spec =
                        mat_dft_wrapped(&plan, &got.matrix, k, &mut CostCounter::new()).unwrap();
                    assert_eq!(got.spectrum, expect_spec);
                }
                let got = hgcd_normal_any(&plan, &p, &q, k, 1, &mut c).unwrap();
                assert_eq!(got, want, "any d={d} k={k}");
            }
        }
    }

    #[test]
    fn normal_fft_per_node_accounting() {
        let f = fp();
        let plan = TransformPlan::new(&f, 10).unwrap();
        let mut rng = gen::rng_for(55);
        let (p, q) = gen::normal_pair(&f, &mut rng, 128);
        let mut c = CostCounter::new();
        let mut trace = Vec::new();
        hgcd_normal_fft_traced(&plan, &p, &q, 64, 1, &mut c, Some(&mut trace)).unwrap();
        let mut internals = 0;
        for node in &trace {
            if node.kind == NodeKind::Internal {
                internals += 1;
                let (fk, ik) = node.own.transforms_at(node.k);
                assert_eq!((fk, ik), (4, 8), "12 transforms at k={}", node.k);
                assert_eq!(node.own.transforms_at(node.k / 2), (8, 0));
                assert_eq!(node.own.transforms_total(), 20);
            }
        }
        // k = 64 with threshold 1: one internal node per size 2^j, j=1..6,
        // with 2^(6-j) nodes of size 2^j
        assert_eq!(internals, 63);
    }

    #[test]
    fn abnormal_input_raises_on_normal_paths() {
        let f = fp();
        let plan = TransformPlan::new(&f, 8).unwrap();
        // x^5, x^3 + 1: first quotient has degree 2
        let p: Poly<PrimeField> = Poly::new(vec![0, 0, 0, 0, 0, 1]);
        let q: Poly<PrimeField> = Poly::new(vec![1, 0, 0, 1]);
        let mut c = CostCounter::new();
        assert_eq!(
            hgcd_normal_basic(&f, &Schoolbook, &p, &q, 2, false, 1, &mut c),
            Err(Error::AbnormalSequence)
        );
        assert_eq!(
            hgcd_normal_fft(&plan, &p, &q, 2, 1, &mut c).err(),
            Some(Error::AbnormalSequence)
        );
    }

    #[test]
    fn general_early_exit_and_examples() {
        let f = fp();
        let mut c = CostCounter::new();
        // (x^3, 1), k = 2: Q_(d-k;d) = 0 -> Id
        let p: Poly<PrimeField> = Poly::new(vec![0, 0, 0, 1]);
        let one: Poly<PrimeField> = Poly::new(vec![1]);
        let got = hgcd_general(&f, &Schoolbook, &p, &one, 2, 1, &mut c).unwrap();
        assert!(got.is_identity(&f));
        // (x^3, x), k = 3 -> [[0,1],[1,-x^2]]
        let x: Poly<PrimeField> = Poly::new(vec![0, 1]);
        let got = hgcd_general(&f, &Schoolbook, &p, &x, 3, 1, &mut c).unwrap();
        let want = oracle_starred(&f, &p, &x, 3);
        assert_eq!(got, want);
        assert_eq!(got.m22, Poly::new(vec![0, 0, DEFAULT_PRIME - 1]));
    }

    #[test]
    fn general_matches_starred_oracle_random() {
        let f = fp();
        let plan = TransformPlan::new(&f, 12).unwrap();
        let mut rng = gen::rng_for(999);
        let mut c = CostCounter::new();
        for &d in &[6usize, 16, 40, 90, 200] {
            for _ in 0..6 {
                let (p, q) = gen::planted_abnormal_pair(&f, &mut rng, d);
                for k in [1usize, 2, d / 3, d / 2, d - 1, d] {
                    let k = k.clamp(1, d);
                    let want = oracle_starred(&f, &p, &q, k);
                    for thr in [1usize, 4] {
                        let got =
                            hgcd_general(&f, &Karatsuba::default(), &p, &q, k, thr, &mut c).unwrap();
                        assert_eq!(got, want, "general d={d} k={k} thr={thr}");
                    }
                    let ell = k.next_power_of_two();
                    let got = hgcd_general_fft(&plan, &p, &q, k, ell, 1, &mut c).unwrap();
                    assert_eq!(got.matrix, want, "general_fft d={d} k={k}");
                    let expect_spec =
                        mat_dft_wrapped(&plan, &got.matrix, ell, &mut CostCounter::new()).unwrap();
                    assert_eq!(got.spectrum, expect_spec, "spectrum d={d} k={k}");
                }
            }
        }
    }

    #[test]
    fn general_on_normal_inputs_matches_normal_paths() {
        let f = fp();
        let plan = TransformPlan::new(&f, 10).unwrap();
        let mut rng = gen::rng_for(77);
        let mut c = CostCounter::new();
        let (p, q) = gen::normal_pair(&f, &mut rng, 64);
        for k in [5usize, 16, 31] {
            let a = hgcd_general(&f, &Karatsuba::default(), &p, &q, k, 1, &mut c).unwrap();
            let b = hgcd_normal_any(&plan, &p, &q, k, 1, &mut c).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn general_fft_transform_length_discipline() {
        let f = fp();
        let plan = TransformPlan::new(&f, 10).unwrap();
        let mut rng = gen::rng_for(31);
        let (p, q) = gen::planted_abnormal_pair(&f, &mut rng, 160);
        let mut c = CostCounter::new();
        let mut trace = Vec::new();
        let k = 130usize;
        let ell = k.next_power_of_two();
        hgcd_general_fft_traced(&plan, &p, &q, k, ell, 1, &mut c, Some(&mut trace)).unwrap();
        assert!(trace.iter().any(|n| n.kind == NodeKind::Internal));
        for node in &trace {
            if node.kind == NodeKind::Base {
                continue;
            }
            let l = node.transform_len;
            for (&len, &(_fw, iv)) in &node.own.transforms {
                assert!(
                    len == l || len == l / 2,
                    "node at l={l} issued a length-{len} transform"
                );
                if len == l / 2 {
                    assert_eq!(iv, 0, "half-length transforms are doubling-only");
                }
            }
        }
    }

    #[test]
    fn recover_top_term_examples() {
        let f = fp();
        let mut rng = gen::rng_for(3);
        let mut c = CostCounter::new();
        let p = gen::random_poly(&f, &mut rng, 9);
        let q = gen::random_poly(&f, &mut rng, 8);
        let id = Mat2Poly::identity(&f);
        assert_eq!(recover_top_term(&f, &id, &p, &q, 5, &mut c), p.coeff(5));
        let m = Mat2Poly {
            m11: gen::random_poly(&f, &mut rng, 3),
            m12: gen::random_poly(&f, &mut rng, 3),
            m21: gen::random_poly(&f, &mut rng, 3),
            m22: gen::random_poly(&f, &mut rng, 3),
        };
        let (top, _) = m.apply(&f, &Schoolbook, &p, &q, &mut c).unwrap();
        for pos in 0..10i64 {
            assert_eq!(recover_top_term(&f, &m, &p, &q, pos, &mut c), top.coeff(pos));
        }
    }
}
