//! User-facing gcd and extended gcd, built on one half-gcd call with k = d.

use crate::counter::CostCounter;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::hgcd;
use crate::mat2::Mat2Poly;
use crate::ntt::TransformPlan;
use crate::poly::{self, Karatsuba, NttMul, Poly, PolyMul, Schoolbook};

/// Algorithm selection for the prime-field entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    /// hgcd_general_fft when transform lengths allow, else hgcd_general
    Auto,
    /// the quadratic reference loop
    EuclidRef,
    NormalBasic,
    NormalBasicMiddleProduct,
    NormalFft,
    NormalAny,
    General,
    GeneralFft,
}

#[derive(Debug, Clone, Copy)]
pub struct GcdConfig {
    pub algorithm: Algorithm,
    pub threshold: usize,
}

impl Default for GcdConfig {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::Auto,
            threshold: hgcd::DEFAULT_THRESHOLD,
        }
    }
}

/// Extended gcd output: monic g and cofactors with u P + v Q = g.
#[derive(Debug, Clone, PartialEq)]
pub struct XgcdResult<F: Field> {
    pub g: Poly<F>,
    pub u: Poly<F>,
    pub v: Poly<F>,
    /// The full starred Bezout product, when the caller wants it.
    pub matrix: Option<Mat2Poly<F>>,
}

/// Monic gcd over the prime field.
pub fn gcd(
    plan: &TransformPlan,
    p: &Poly<PrimeField>,
    q: &Poly<PrimeField>,
    config: &GcdConfig,
    c: &mut CostCounter,
) -> Result<Poly<PrimeField>> {
    Ok(xgcd(plan, p, q, config, c)?.g)
}

/// Extended gcd over the prime field: u P + v Q = g with g monic.
pub fn xgcd(
    plan: &TransformPlan,
    p: &Poly<PrimeField>,
    q: &Poly<PrimeField>,
    config: &GcdConfig,
    c: &mut CostCounter,
) -> Result<XgcdResult<PrimeField>> {
    let f = plan.field().clone();
    xgcd_with(
        &f,
        p,
        q,
        c,
        |f, p, q, k, c| run_halfgcd(plan, f, p, q, k, config, c),
        |f, a, b, c| NttMul { plan }.mul(f, a, b, c),
    )
}

/// Monic gcd over any field (rational oracle included): always the general
/// generic algorithm.
pub fn gcd_generic<F: Field>(
    f: &F,
    p: &Poly<F>,
    q: &Poly<F>,
    c: &mut CostCounter,
) -> Result<Poly<F>> {
    Ok(xgcd_generic(f, p, q, c)?.g)
}

/// Extended gcd over any field via the generic general-case half-gcd.
pub fn xgcd_generic<F: Field>(
    f: &F,
    p: &Poly<F>,
    q: &Poly<F>,
    c: &mut CostCounter,
) -> Result<XgcdResult<F>> {
    let kara = Karatsuba::default();
    xgcd_with(
        f,
        p,
        q,
        c,
        |f, p, q, k, c| hgcd::hgcd_general(f, &kara, p, q, k, hgcd::DEFAULT_THRESHOLD, c),
        |f, a, b, c| kara.mul(f, a, b, c),
    )
}

fn run_halfgcd(
    plan: &TransformPlan,
    f: &PrimeField,
    p: &Poly<PrimeField>,
    q: &Poly<PrimeField>,
    k: usize,
    config: &GcdConfig,
    c: &mut CostCounter,
) -> Result<Mat2Poly<PrimeField>> {
    let thr = config.threshold.max(1);
    let d = p.deg().expect_finite();
    // the normal-only paths require deg P >= 2k; pad via x^k
    let pad = |x: &Poly<PrimeField>| {
        if d < 2 * k as i64 {
            x.shift_up(k)
        } else {
            x.clone()
        }
    };
    match config.algorithm {
        Algorithm::Auto | Algorithm::GeneralFft => {
            let ell = k.next_power_of_two().max(1);
            if config.algorithm == Algorithm::Auto && !plan.supports(ell) {
                return hgcd::hgcd_general(f, &Karatsuba::default(), p, q, k, thr, c);
            }
            Ok(hgcd::hgcd_general_fft(plan, p, q, k, ell, thr, c)?.matrix)
        }
        Algorithm::General => hgcd::hgcd_general(f, &Karatsuba::default(), p, q, k, thr, c),
        Algorithm::EuclidRef => {
            let mut scratch = CostCounter::new();
            let seq = crate::euclid::remainder_sequence(f, p, q, c)?;
            let starred = crate::euclid::reindex(f, &seq);
            let b = starred.bezout_product(f, 1, k + 1, &mut scratch)?;
            c.absorb(&scratch);
            Ok(b)
        }
        Algorithm::NormalBasic => {
            hgcd::hgcd_normal_basic(f, &Schoolbook, &pad(p), &pad(q), k, false, thr, c)
        }
        Algorithm::NormalBasicMiddleProduct => {
            hgcd::hgcd_normal_basic(f, &Karatsuba::default(), &pad(p), &pad(q), k, true, thr, c)
        }
        Algorithm::NormalFft => {
            let kk = k.next_power_of_two();
            let pp = if d < 2 * kk as i64 { p.shift_up(kk) } else { p.clone() };
            let qq = if d < 2 * kk as i64 { q.shift_up(kk) } else { q.clone() };
            // B_(1;k+1) for k' >= k annihilates at least as far; running the
            // power-of-two variant needs k itself to be a power of two
            if kk != k {
                return Err(Error::UnsupportedLength);
            }
            Ok(hgcd::hgcd_normal_fft(plan, &pp, &qq, kk, thr, c)?.matrix)
        }
        Algorithm::NormalAny => hgcd::hgcd_normal_any(plan, &pad(p), &pad(q), k, thr, c),
    }
}

/// Shared xgcd skeleton: normalize the input ordering, run one half-gcd
/// with k = deg P, and rescale the first matrix row into the Bezout
/// identity u P + v Q = monic g.
fn xgcd_with<F, H, M>(
    f: &F,
    p: &Poly<F>,
    q: &Poly<F>,
    c: &mut CostCounter,
    mut halfgcd: H,
    mut mul: M,
) -> Result<XgcdResult<F>>
where
    F: Field,
    H: FnMut(&F, &Poly<F>, &Poly<F>, usize, &mut CostCounter) -> Result<Mat2Poly<F>>,
    M: FnMut(&F, &Poly<F>, &Poly<F>, &mut CostCounter) -> Result<Poly<F>>,
{
    if p.is_zero() && q.is_zero() {
        return Err(Error::Undefined);
    }
    // reduce to deg P > deg Q: swap if needed, then one division step if the
    // degrees are equal
    if q.deg() > p.deg() {
        let mut r = xgcd_with(f, q, p, c, halfgcd, mul)?;
        core::mem::swap(&mut r.u, &mut r.v);
        r.matrix = None;
        return Ok(r);
    }
    let (mut prefix, mut pp, mut qq) = (None, p.clone(), q.clone());
    if p.deg() == q.deg() {
        let (quo, rem) = poly::quo_rem(f, p, q, c)?;
        prefix = Some(quo.clone());
        pp = q.clone();
        qq = rem;
    }
    let d = pp.deg().expect_finite() as usize;
    let b = if qq.is_zero() {
        Mat2Poly::identity(f)
    } else {
        let b = halfgcd(f, &pp, &qq, d, c)?;
        if let Some(quo) = &prefix {
            // prepend the elementary factor of the degree-equalizing step:
            // columns combine as B * [[0,1],[1,-quo]]
            let t12 = mul(f, &b.m12, quo, c)?;
            let t22 = mul(f, &b.m22, quo, c)?;
            Mat2Poly {
                m11: b.m12.clone(),
                m12: poly::sub(f, &b.m11, &t12, c),
                m21: b.m22.clone(),
                m22: poly::sub(f, &b.m21, &t22, c),
            }
        } else {
            b
        }
    };
    // first row applied to the original (P, Q) gives the raw gcd
    let graw = poly::add(
        f,
        &mul(f, &b.m11, p, c)?,
        &mul(f, &b.m12, q, c)?,
        c,
    );
    debug_assert!(!graw.is_zero());
    let lc = graw.lc().unwrap().clone();
    let lc_inv = f.inv(&lc)?;
    c.divs(1);
    let g = poly::scale(f, &graw, &lc_inv, c);
    let u = poly::scale(f, &b.m11, &lc_inv, c);
    let v = poly::scale(f, &b.m12, &lc_inv, c);
    Ok(XgcdResult {
        g,
        u,
        v,
        matrix: Some(b),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rationals, DEFAULT_PRIME};
    use crate::gen;
    use crate::poly::mul_schoolbook;

    fn setup() -> (PrimeField, TransformPlan) {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let plan = TransformPlan::new(&f, 14).unwrap();
        (f, plan)
    }

    fn check_xgcd(
        f: &PrimeField,
        plan: &TransformPlan,
        p: &Poly<PrimeField>,
        q: &Poly<PrimeField>,
        alg: Algorithm,
    ) {
        let mut c = CostCounter::new();
        let cfg = GcdConfig { algorithm: alg, ..GcdConfig::default() };
        let r = xgcd(plan, p, q, &cfg, &mut c).unwrap();
        // monic
        if !r.g.is_zero() {
            assert_eq!(r.g.lc().unwrap(), &1);
        }
        // Bezout identity
        let lhs = poly::add(
            f,
            &mul_schoolbook(f, &r.u, p, &mut c),
            &mul_schoolbook(f, &r.v, q, &mut c),
            &mut c,
        );
        assert_eq!(lhs, r.g);
        // divides both
        for x in [p, q] {
            if !x.is_zero() {
                let (_, rem) = poly::quo_rem(f, x, &r.g, &mut c).unwrap();
                assert!(rem.is_zero(), "g must divide inputs");
            }
        }
        // matches the oracle gcd
        let want = gcd_oracle(f, p, q);
        assert_eq!(r.g, want);
    }

    fn gcd_oracle(f: &PrimeField, p: &Poly<PrimeField>, q: &Poly<PrimeField>) -> Poly<PrimeField> {
        let mut c = CostCounter::new();
        let (mut a, mut b) = (p.clone(), q.clone());
        if a.deg() < b.deg() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = poly::quo_rem(f, &a, &b, &mut c).unwrap();
            a = b;
            b = r;
        }
        let inv = f.inv(a.lc().unwrap()).unwrap();
        poly::scale(f, &a, &inv, &mut c)
    }

    #[test]
    fn gcd_with_zero_and_equal_degrees() {
        let (f, plan) = setup();
        let _ = &f;
        let mut c = CostCounter::new();
        let p: Poly<PrimeField> = Poly::new(vec![2, 0, 4]);
        let cfg = GcdConfig::default();
        let g = gcd(&plan, &p, &Poly::zero(), &cfg, &mut c).unwrap();
        let lc_inv = f.inv(&4).unwrap();
        assert_eq!(g, poly::scale(&f, &p, &lc_inv, &mut c));
        // xgcd(P, 0) = (monic P, lc^-1, 0)
        let r = xgcd(&plan, &p, &Poly::zero(), &cfg, &mut c).unwrap();
        assert_eq!(r.u, Poly::new(vec![lc_inv]));
        assert!(r.v.is_zero());
        // equal degrees and swapped orderings
        let q: Poly<PrimeField> = Poly::new(vec![1, 5, 7]);
        check_xgcd(&f, &plan, &p, &q, Algorithm::Auto);
        let low: Poly<PrimeField> = Poly::new(vec![3, 1]);
        check_xgcd(&f, &plan, &low, &p, Algorithm::Auto);
        assert_eq!(
            xgcd(&plan, &Poly::zero(), &Poly::zero(), &cfg, &mut c).err(),
            Some(Error::Undefined)
        );
    }

    #[test]
    fn x3_example_row_identity() {
        let (f, plan) = setup();
        let mut c = CostCounter::new();
        let p: Poly<PrimeField> = Poly::new(vec![0, 0, 0, 1]);
        let q: Poly<PrimeField> = Poly::new(vec![1, 0, 1]);
        let r = xgcd(&plan, &p, &q, &GcdConfig::default(), &mut c).unwrap();
        assert_eq!(r.g, Poly::new(vec![1]));
        // row of B_(1;4): u = x, v = 1 - x^2 (up to the monic rescale, which
        // is trivial here because the raw gcd is already 1)
        assert_eq!(r.u, Poly::new(vec![0, 1]));
        assert_eq!(r.v, Poly::new(vec![1, 0, DEFAULT_PRIME - 1]));
    }

    #[test]
    fn common_factor_is_found() {
        let (f, plan) = setup();
        let mut c = CostCounter::new();
        let mut rng = gen::rng_for(42);
        for _ in 0..8 {
            let a = gen::random_poly_of_degree(&f, &mut rng, 7);
            let b = gen::random_poly_of_degree(&f, &mut rng, 6);
            let gfac = gen::random_poly_of_degree(&f, &mut rng, 5);
            let ag = mul_schoolbook(&f, &a, &gfac, &mut c);
            let bg = mul_schoolbook(&f, &b, &gfac, &mut c);
            let g = gcd(&plan, &ag, &bg, &GcdConfig::default(), &mut c).unwrap();
            let (_, rem) = poly::quo_rem(&f, &g, &gfac, &mut c).unwrap();
            assert!(rem.is_zero(), "planted factor divides the gcd");
        }
    }

    #[test]
    fn all_algorithms_agree() {
        let (f, plan) = setup();
        let mut rng = gen::rng_for(7);
        // normal instance exercises every variant
        let (p, q) = gen::normal_pair(&f, &mut rng, 48);
        for alg in [
            Algorithm::Auto,
            Algorithm::EuclidRef,
            Algorithm::NormalBasic,
            Algorithm::NormalBasicMiddleProduct,
            Algorithm::NormalAny,
            Algorithm::General,
            Algorithm::GeneralFft,
        ] {
            check_xgcd(&f, &plan, &p, &q, alg);
        }
        // abnormal instance through the general paths
        let (p, q) = gen::planted_abnormal_pair(&f, &mut rng, 60);
        for alg in [Algorithm::Auto, Algorithm::EuclidRef, Algorithm::General, Algorithm::GeneralFft]
        {
            check_xgcd(&f, &plan, &p, &q, alg);
        }
    }

    #[test]
    fn rational_gcd_example() {
        // gcd((x+1)(x^2+1), (x+1)(x+2)) = x + 1 over the rationals
        let q = Rationals;
        let mut c = CostCounter::new();
        let a = Poly::new(vec![q.from_i64(1), q.from_i64(1)]);
        let sq = Poly::new(vec![q.from_i64(1), q.from_i64(0), q.from_i64(1)]);
        let lin = Poly::new(vec![q.from_i64(2), q.from_i64(1)]);
        let p1 = mul_schoolbook(&q, &a, &sq, &mut c);
        let p2 = mul_schoolbook(&q, &a, &lin, &mut c);
        let g = gcd_generic(&q, &p1, &p2, &mut c).unwrap();
        assert_eq!(g, a);
        let r = xgcd_generic(&q, &p1, &p2, &mut c).unwrap();
        let lhs = poly::add(
            &q,
            &mul_schoolbook(&q, &r.u, &p1, &mut c),
            &mul_schoolbook(&q, &r.v, &p2, &mut c),
            &mut c,
        );
        assert_eq!(lhs, g);
    }

    #[test]
    fn gcd_is_symmetric() {
        let (f, plan) = setup();
        let mut rng = gen::rng_for(11);
        let mut c = CostCounter::new();
        let cfg = GcdConfig::default();
        for _ in 0..5 {
            let (p, q) = gen::planted_abnormal_pair(&f, &mut rng, 30);
            let g1 = gcd(&plan, &p, &q, &cfg, &mut c).unwrap();
            let g2 = gcd(&plan, &q, &p, &cfg, &mut c).unwrap();
            assert_eq!(g1, g2);
        }
    }
}
