//! 2x2 polynomial matrix kernels.
//!
//! Bezout matrices and their products live here: plain products, pointwise
//! spectral products with wrap-around correction, and the matrix middle
//! product used by the half-gcd update step. Pointwise 2x2 products use the
//! plain 8-multiplication formula.

use alloc::vec;
use alloc::vec::Vec;

use crate::counter::CostCounter;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::ntt::{self, SpectrumVec, TransformPlan};
use crate::poly::{self, Degree, Poly, PolyMul};

/// 2x2 matrix with polynomial entries; deg(M) is the maximum entry degree.
#[derive(Debug, Clone)]
pub struct Mat2Poly<F: Field> {
    pub m11: Poly<F>,
    pub m12: Poly<F>,
    pub m21: Poly<F>,
    pub m22: Poly<F>,
}

impl<F: Field> PartialEq for Mat2Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.m11 == other.m11
            && self.m12 == other.m12
            && self.m21 == other.m21
            && self.m22 == other.m22
    }
}

impl<F: Field> Eq for Mat2Poly<F> {}

impl<F: Field> Mat2Poly<F> {
    pub fn identity(f: &F) -> Self {
        Self {
            m11: Poly::one(f),
            m12: Poly::zero(),
            m21: Poly::zero(),
            m22: Poly::one(f),
        }
    }

    /// The elementary Bezout factor [[0, 1], [1, -q]].
    pub fn elementary(f: &F, q: &Poly<F>) -> Self {
        let mut c = CostCounter::new();
        Self {
            m11: Poly::zero(),
            m12: Poly::one(f),
            m21: Poly::one(f),
            m22: poly::neg(f, q, &mut c),
        }
    }

    pub fn is_identity(&self, f: &F) -> bool {
        self.m11 == Poly::one(f)
            && self.m12.is_zero()
            && self.m21.is_zero()
            && self.m22 == Poly::one(f)
    }

    pub fn deg(&self) -> Degree {
        self.m11
            .deg()
            .max(self.m12.deg())
            .max(self.m21.deg())
            .max(self.m22.deg())
    }

    pub fn entries(&self) -> [&Poly<F>; 4] {
        [&self.m11, &self.m12, &self.m21, &self.m22]
    }

    /// Coefficient matrix at one degree (zero-extended).
    pub fn coeff_matrix(&self, i: i64) -> [[F::Elem; 2]; 2] {
        [
            [self.m11.coeff(i), self.m12.coeff(i)],
            [self.m21.coeff(i), self.m22.coeff(i)],
        ]
    }

    /// Apply to a column vector: returns M * (p, q)^T.
    pub fn apply<B: PolyMul<F>>(
        &self,
        f: &F,
        backend: &B,
        p: &Poly<F>,
        q: &Poly<F>,
        c: &mut CostCounter,
    ) -> Result<(Poly<F>, Poly<F>)> {
        let top = poly::add(
            f,
            &backend.mul(f, &self.m11, p, c)?,
            &backend.mul(f, &self.m12, q, c)?,
            c,
        );
        let bot = poly::add(
            f,
            &backend.mul(f, &self.m21, p, c)?,
            &backend.mul(f, &self.m22, q, c)?,
            c,
        );
        Ok((top, bot))
    }

    pub fn det<B: PolyMul<F>>(&self, f: &F, backend: &B, c: &mut CostCounter) -> Result<Poly<F>> {
        let a = backend.mul(f, &self.m11, &self.m22, c)?;
        let b = backend.mul(f, &self.m12, &self.m21, c)?;
        Ok(poly::sub(f, &a, &b, c))
    }

    /// Entrywise evaluation; test helper.
    pub fn eval(&self, f: &F, x: &F::Elem) -> [[F::Elem; 2]; 2] {
        [
            [self.m11.eval(f, x), self.m12.eval(f, x)],
            [self.m21.eval(f, x), self.m22.eval(f, x)],
        ]
    }
}

/// Exact matrix product via eight polynomial products.
pub fn mat_mul<F: Field, B: PolyMul<F>>(
    f: &F,
    backend: &B,
    a: &Mat2Poly<F>,
    b: &Mat2Poly<F>,
    c: &mut CostCounter,
) -> Result<Mat2Poly<F>> {
    let mul = |x: &Poly<F>, y: &Poly<F>, c: &mut CostCounter| backend.mul(f, x, y, c);
    Ok(Mat2Poly {
        m11: poly::add(f, &mul(&a.m11, &b.m11, c)?, &mul(&a.m12, &b.m21, c)?, c),
        m12: poly::add(f, &mul(&a.m11, &b.m12, c)?, &mul(&a.m12, &b.m22, c)?, c),
        m21: poly::add(f, &mul(&a.m21, &b.m11, c)?, &mul(&a.m22, &b.m21, c)?, c),
        m22: poly::add(f, &mul(&a.m21, &b.m12, c)?, &mul(&a.m22, &b.m22, c)?, c),
    })
}

/// Per-point 2x2 matrices over the evaluation grid, entrywise in natural
/// (spectrum) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2Spectrum {
    pub e11: Vec<u64>,
    pub e12: Vec<u64>,
    pub e21: Vec<u64>,
    pub e22: Vec<u64>,
}

impl Mat2Spectrum {
    pub fn len(&self) -> usize {
        self.e11.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e11.is_empty()
    }

    /// Spectrum of the identity matrix at length n; no transforms needed.
    pub fn identity(n: usize) -> Self {
        Self {
            e11: vec![1; n],
            e12: vec![0; n],
            e21: vec![0; n],
            e22: vec![1; n],
        }
    }

    /// Per-point matrix at position i.
    pub fn point(&self, i: usize) -> [[u64; 2]; 2] {
        [
            [self.e11[i], self.e12[i]],
            [self.e21[i], self.e22[i]],
        ]
    }

    /// Pointwise matrix product self * rhs: 8 multiplications and 4
    /// additions per point.
    pub fn pointwise_mul(
        &self,
        f: &PrimeField,
        rhs: &Mat2Spectrum,
        c: &mut CostCounter,
    ) -> Result<Mat2Spectrum> {
        let n = self.len();
        if rhs.len() != n {
            return Err(Error::LengthMismatch);
        }
        let mut out = Mat2Spectrum {
            e11: vec![0; n],
            e12: vec![0; n],
            e21: vec![0; n],
            e22: vec![0; n],
        };
        for i in 0..n {
            out.e11[i] = f.add(&f.mul(&self.e11[i], &rhs.e11[i]), &f.mul(&self.e12[i], &rhs.e21[i]));
            out.e12[i] = f.add(&f.mul(&self.e11[i], &rhs.e12[i]), &f.mul(&self.e12[i], &rhs.e22[i]));
            out.e21[i] = f.add(&f.mul(&self.e21[i], &rhs.e11[i]), &f.mul(&self.e22[i], &rhs.e21[i]));
            out.e22[i] = f.add(&f.mul(&self.e21[i], &rhs.e12[i]), &f.mul(&self.e22[i], &rhs.e22[i]));
        }
        c.mults(8 * n as u64);
        c.adds(4 * n as u64);
        Ok(out)
    }
}

/// Entrywise forward transform: four length-n transform invocations.
pub fn mat_dft(
    plan: &TransformPlan,
    m: &Mat2Poly<PrimeField>,
    n: usize,
    c: &mut CostCounter,
) -> Result<Mat2Spectrum> {
    Ok(Mat2Spectrum {
        e11: ntt::dft(plan, &m.m11, n, c)?.values,
        e12: ntt::dft(plan, &m.m12, n, c)?.values,
        e21: ntt::dft(plan, &m.m21, n, c)?.values,
        e22: ntt::dft(plan, &m.m22, n, c)?.values,
    })
}

/// Entrywise evaluation transform that wraps entries of degree >= n modulo
/// x^n - 1 first; used where a spectrum of a full-degree Bezout product is
/// needed.
pub fn mat_dft_wrapped(
    plan: &TransformPlan,
    m: &Mat2Poly<PrimeField>,
    n: usize,
    c: &mut CostCounter,
) -> Result<Mat2Spectrum> {
    Ok(Mat2Spectrum {
        e11: ntt::dft_wrapped(plan, &m.m11, n, c)?.values,
        e12: ntt::dft_wrapped(plan, &m.m12, n, c)?.values,
        e21: ntt::dft_wrapped(plan, &m.m21, n, c)?.values,
        e22: ntt::dft_wrapped(plan, &m.m22, n, c)?.values,
    })
}

/// Entrywise inverse transform: four inverse invocations.
pub fn mat_idft(
    plan: &TransformPlan,
    s: &Mat2Spectrum,
    c: &mut CostCounter,
) -> Result<Mat2Poly<PrimeField>> {
    Ok(Mat2Poly {
        m11: ntt::inverse_dft(plan, &SpectrumVec { values: s.e11.clone() }, c)?,
        m12: ntt::inverse_dft(plan, &SpectrumVec { values: s.e12.clone() }, c)?,
        m21: ntt::inverse_dft(plan, &SpectrumVec { values: s.e21.clone() }, c)?,
        m22: ntt::inverse_dft(plan, &SpectrumVec { values: s.e22.clone() }, c)?,
    })
}

/// Exact product from length-k spectra of the factors when the true product
/// degree is at most k: inverse transform of the pointwise product plus the
/// correction (lead_left * lead_right)(x^k - 1).
pub fn mat_mul_wrapped(
    plan: &TransformPlan,
    sa: &Mat2Spectrum,
    sb: &Mat2Spectrum,
    lead_left: &[[u64; 2]; 2],
    lead_right: &[[u64; 2]; 2],
    k: usize,
    c: &mut CostCounter,
) -> Result<Mat2Poly<PrimeField>> {
    if sa.len() != k || sb.len() != k {
        return Err(Error::LengthMismatch);
    }
    let prod = sa.pointwise_mul(plan.field(), sb, c)?;
    mat_unwrap_product(plan, &prod, lead_left, lead_right, k, c)
}

/// Recover the exact product from its length-k spectrum given the top
/// coefficient matrix factors; the caller already holds the pointwise
/// product (FFT caching).
pub fn mat_unwrap_product(
    plan: &TransformPlan,
    prod: &Mat2Spectrum,
    lead_left: &[[u64; 2]; 2],
    lead_right: &[[u64; 2]; 2],
    k: usize,
    c: &mut CostCounter,
) -> Result<Mat2Poly<PrimeField>> {
    if prod.len() != k {
        return Err(Error::LengthMismatch);
    }
    let f = plan.field();
    let wrapped = mat_idft(plan, prod, c)?;
    // top coefficient of the true product
    let mut lead = [[0u64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            lead[i][j] = f.add(
                &f.mul(&lead_left[i][0], &lead_right[0][j]),
                &f.mul(&lead_left[i][1], &lead_right[1][j]),
            );
        }
    }
    c.mults(8);
    c.adds(4);
    let fix = |w: &Poly<PrimeField>, lc: u64, c: &mut CostCounter| -> Poly<PrimeField> {
        if lc == 0 {
            return w.clone();
        }
        let mut v = vec![0u64; k + 1];
        for (i, x) in w.coeffs().iter().enumerate() {
            v[i] = *x;
        }
        v[0] = f.sub(&v[0], &lc);
        v[k] = f.add(&v[k], &lc);
        c.adds(2);
        Poly::new(v)
    };
    Ok(Mat2Poly {
        m11: fix(&wrapped.m11, lead[0][0], c),
        m12: fix(&wrapped.m12, lead[0][1], c),
        m21: fix(&wrapped.m21, lead[1][0], c),
        m22: fix(&wrapped.m22, lead[1][1], c),
    })
}

/// Matrix middle product: the matrix analogue of the scalar middle product,
/// with scalar multiplication replaced by the kernel-degree-d middle
/// product. Entry (i, j) of the result is sum_l M_il |x|_d RHS_lj.
pub fn mat_middle_product<F: Field, B: PolyMul<F>>(
    f: &F,
    backend: &B,
    m: &Mat2Poly<F>,
    d: usize,
    rhs: &Mat2Poly<F>,
    n: usize,
    c: &mut CostCounter,
) -> Result<Mat2Poly<F>> {
    if m.deg() != Degree::Finite(d as i64) || d >= n {
        return Err(Error::DegreeMismatch);
    }
    for e in rhs.entries() {
        if e.deg() >= Degree::Finite(n as i64) {
            return Err(Error::LengthOverflow);
        }
    }
    let mp = |p: &Poly<F>, r: &Poly<F>, c: &mut CostCounter| backend.middle_product(f, p, d, r, n, c);
    Ok(Mat2Poly {
        m11: poly::add(f, &mp(&m.m11, &rhs.m11, c)?, &mp(&m.m12, &rhs.m21, c)?, c),
        m12: poly::add(f, &mp(&m.m11, &rhs.m12, c)?, &mp(&m.m12, &rhs.m22, c)?, c),
        m21: poly::add(f, &mp(&m.m21, &rhs.m11, c)?, &mp(&m.m22, &rhs.m21, c)?, c),
        m22: poly::add(f, &mp(&m.m21, &rhs.m12, c)?, &mp(&m.m22, &rhs.m22, c)?, c),
    })
}

/// Middle product of a 2x2 kernel against a column vector of windows:
/// returns (M11 |x| rp + M12 |x| rq, M21 |x| rp + M22 |x| rq), each taken
/// with kernel degree bound d at window length n.
pub fn mat_vec_middle_product<F: Field, B: PolyMul<F>>(
    f: &F,
    backend: &B,
    m: &Mat2Poly<F>,
    d: usize,
    rp: &Poly<F>,
    rq: &Poly<F>,
    n: usize,
    c: &mut CostCounter,
) -> Result<(Poly<F>, Poly<F>)> {
    let mp = |p: &Poly<F>, r: &Poly<F>, c: &mut CostCounter| backend.middle_product(f, p, d, r, n, c);
    let top = poly::add(f, &mp(&m.m11, rp, c)?, &mp(&m.m12, rq, c)?, c);
    let bot = poly::add(f, &mp(&m.m21, rp, c)?, &mp(&m.m22, rq, c)?, c);
    Ok((top, bot))
}

/// Matrix middle product with a precomputed spectrum of the left factor:
/// only the four RHS forward transforms and the four inverse transforms are
/// performed, all of length mhat.len().
pub fn mat_middle_product_cached(
    plan: &TransformPlan,
    mhat: &Mat2Spectrum,
    d: usize,
    rhs: &Mat2Poly<PrimeField>,
    c: &mut CostCounter,
) -> Result<Mat2Poly<PrimeField>> {
    let n = mhat.len();
    let rhat = mat_dft(plan, rhs, n, c)?;
    let prod = mhat.pointwise_mul(plan.field(), &rhat, c)?;
    let full = mat_idft(plan, &prod, c)?;
    Ok(Mat2Poly {
        m11: full.m11.slice(d as i64, n as i64),
        m12: full.m12.slice(d as i64, n as i64),
        m21: full.m21.slice(d as i64, n as i64),
        m22: full.m22.slice(d as i64, n as i64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rationals, DEFAULT_PRIME};
    use crate::poly::{Karatsuba, Schoolbook};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    fn rand_poly(rng: &mut StdRng, len: usize) -> Poly<PrimeField> {
        Poly::new((0..len).map(|_| rng.gen_range(0..DEFAULT_PRIME)).collect::<Vec<_>>())
    }

    fn rand_mat(rng: &mut StdRng, len: usize) -> Mat2Poly<PrimeField> {
        Mat2Poly {
            m11: rand_poly(rng, len),
            m12: rand_poly(rng, len),
            m21: rand_poly(rng, len),
            m22: rand_poly(rng, len),
        }
    }

    #[test]
    fn identity_is_neutral() {
        let f = fp();
        let mut rng = StdRng::seed_from_u64(2);
        let m = rand_mat(&mut rng, 5);
        let mut c = CostCounter::new();
        let id = Mat2Poly::identity(&f);
        assert_eq!(mat_mul(&f, &Schoolbook, &m, &id, &mut c).unwrap(), m);
        assert_eq!(mat_mul(&f, &Schoolbook, &id, &m, &mut c).unwrap(), m);
    }

    #[test]
    fn rational_bezout_product_example() {
        // B2 * B1 for P = x^3, Q = x^2 + 1 over the rationals
        let q = Rationals;
        let x = Poly::x(&q);
        let mut c = CostCounter::new();
        let b1 = Mat2Poly::elementary(&q, &x);
        let minus_x = poly::neg(&q, &x, &mut c);
        let b2 = Mat2Poly::elementary(&q, &minus_x);
        let prod = mat_mul(&q, &Schoolbook, &b2, &b1, &mut c).unwrap();
        let minus_x2 = Poly::new(vec![q.zero(), q.zero(), q.from_i64(-1)]);
        assert_eq!(prod.m11, Poly::one(&q));
        assert_eq!(prod.m12, minus_x);
        assert_eq!(prod.m21, x);
        assert_eq!(prod.m22, poly::add(&q, &Poly::one(&q), &minus_x2, &mut c));
    }

    #[test]
    fn det_multiplicative_on_elementary_factors() {
        let f = fp();
        let mut rng = StdRng::seed_from_u64(3);
        let mut c = CostCounter::new();
        for _ in 0..20 {
            let (la, lb) = (rng.gen_range(1..5), rng.gen_range(1..5));
            let qa = rand_poly(&mut rng, la);
            let qb = rand_poly(&mut rng, lb);
            let a = Mat2Poly::elementary(&f, &qa);
            let b = Mat2Poly::elementary(&f, &qb);
            let ab = mat_mul(&f, &Schoolbook, &a, &b, &mut c).unwrap();
            let da = a.det(&f, &Schoolbook, &mut c).unwrap();
            let db = b.det(&f, &Schoolbook, &mut c).unwrap();
            let dab = ab.det(&f, &Schoolbook, &mut c).unwrap();
            assert_eq!(dab, poly::mul_schoolbook(&f, &da, &db, &mut c));
            // each elementary factor has determinant -1
            assert_eq!(da, Poly::constant(f.neg(&1)));
        }
    }

    #[test]
    fn spectrum_roundtrip_and_pointwise() {
        let f = fp();
        let plan = TransformPlan::new(&f, 8).unwrap();
        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..10 {
            let m = rand_mat(&mut rng, 8);
            let n = 16;
            let mut c = CostCounter::new();
            let s = mat_dft(&plan, &m, n, &mut c).unwrap();
            assert_eq!(c.transforms_total(), 4);
            let back = mat_idft(&plan, &s, &mut c).unwrap();
            assert_eq!(back, m);
            // pointwise product of spectra = spectrum of product (deg < n)
            let m2 = rand_mat(&mut rng, 8);
            let s2 = mat_dft(&plan, &m2, n, &mut c).unwrap();
            let sp = s.pointwise_mul(&f, &s2, &mut c).unwrap();
            let prod = mat_mul(&f, &Schoolbook, &m, &m2, &mut c).unwrap();
            let sprod = mat_dft(&plan, &prod, n, &mut c).unwrap();
            assert_eq!(sp, sprod);
        }
    }

    #[test]
    fn mat_dft_identity_is_pointwise_identity() {
        let f = fp();
        let plan = TransformPlan::new(&f, 4).unwrap();
        let mut c = CostCounter::new();
        let s = mat_dft(&plan, &Mat2Poly::identity(&f), 8, &mut c).unwrap();
        assert_eq!(s, Mat2Spectrum::identity(8));
    }

    #[test]
    fn wrapped_product_example() {
        // k = 2, both factors [[0,1],[1,x]]; true square is [[1,x],[x,1+x^2]]
        let f = fp();
        let plan = TransformPlan::new(&f, 4).unwrap();
        let mut c = CostCounter::new();
        let x = Poly::x(&f);
        let m = Mat2Poly {
            m11: Poly::zero(),
            m12: Poly::one(&f),
            m21: Poly::one(&f),
            m22: x.clone(),
        };
        let s = mat_dft(&plan, &m, 2, &mut c).unwrap();
        let lead = m.coeff_matrix(1);
        let got = mat_mul_wrapped(&plan, &s, &s, &lead, &lead, 2, &mut c).unwrap();
        let want = mat_mul(&f, &Schoolbook, &m, &m, &mut c).unwrap();
        assert_eq!(got, want);
        assert_eq!(got.m22, Poly::new(vec![1u64, 0, 1]));
    }

    #[test]
    fn wrapped_equals_plain_on_random_bezout_shapes() {
        let f = fp();
        let plan = TransformPlan::new(&f, 8).unwrap();
        let mut rng = StdRng::seed_from_u64(6);
        for _ in 0..20 {
            let k = 1usize << rng.gen_range(1..=6);
            let h = k / 2;
            // factors of degree exactly h with h + h = k
            let mut a = rand_mat(&mut rng, h + 1);
            let mut b = rand_mat(&mut rng, h + 1);
            a.m22 = {
                let mut v = a.m22.coeffs().to_vec();
                v.resize(h + 1, 0);
                if v[h] == 0 {
                    v[h] = 1;
                }
                Poly::new(v)
            };
            b.m22 = {
                let mut v = b.m22.coeffs().to_vec();
                v.resize(h + 1, 0);
                if v[h] == 0 {
                    v[h] = 1;
                }
                Poly::new(v)
            };
            let mut c = CostCounter::new();
            let sa = mat_dft_wrapped(&plan, &a, k, &mut c).unwrap();
            let sb = mat_dft_wrapped(&plan, &b, k, &mut c).unwrap();
            let got = mat_mul_wrapped(&plan, &sa, &sb, &a.coeff_matrix(h as i64), &b.coeff_matrix(h as i64), k, &mut c).unwrap();
            let want = mat_mul(&f, &Schoolbook, &a, &b, &mut c).unwrap();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn middle_product_identity_kernel() {
        let f = fp();
        let mut rng = StdRng::seed_from_u64(8);
        let rhs = rand_mat(&mut rng, 6);
        let mut c = CostCounter::new();
        let got = mat_middle_product(&f, &Schoolbook, &Mat2Poly::identity(&f), 0, &rhs, 8, &mut c).unwrap();
        assert_eq!(got, rhs);
    }

    #[test]
    fn middle_product_scalar_consistency() {
        // diagonal kernel: each output entry is a scalar middle product
        let f = fp();
        let mut rng = StdRng::seed_from_u64(10);
        let p = rand_poly(&mut rng, 4);
        let d = 3;
        if p.deg() != Degree::Finite(d as i64) {
            return;
        }
        let m = Mat2Poly {
            m11: p.clone(),
            m12: Poly::zero(),
            m21: Poly::zero(),
            m22: p.clone(),
        };
        let rhs = rand_mat(&mut rng, 8);
        let n = 8;
        let mut c = CostCounter::new();
        let got = mat_middle_product(&f, &Schoolbook, &m, d, &rhs, n, &mut c).unwrap();
        let s11 = poly::middle_product_direct(&f, &p, d, &rhs.m11, n, &mut c).unwrap();
        let s22 = poly::middle_product_direct(&f, &p, d, &rhs.m22, n, &mut c).unwrap();
        assert_eq!(got.m11, s11);
        assert_eq!(got.m22, s22);
    }

    #[test]
    fn cached_middle_product_matches_direct_and_counts() {
        let f = fp();
        let plan = TransformPlan::new(&f, 8).unwrap();
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..15 {
            let k = 1usize << rng.gen_range(2..=7);
            let d = rng.gen_range(1..k);
            let mut m = rand_mat(&mut rng, d + 1);
            // force deg M = d
            m.m22 = {
                let mut v = m.m22.coeffs().to_vec();
                v.resize(d + 1, 0);
                if v[d] == 0 {
                    v[d] = 1;
                }
                Poly::new(v)
            };
            let rhs = rand_mat(&mut rng, k);
            let mut c1 = CostCounter::new();
            let direct = mat_middle_product(&f, &Schoolbook, &m, d, &rhs, k, &mut c1).unwrap();
            let mut c2 = CostCounter::new();
            let mhat = mat_dft(&plan, &m, k, &mut CostCounter::new()).unwrap();
            let cached = mat_middle_product_cached(&plan, &mhat, d, &rhs, &mut c2).unwrap();
            assert_eq!(direct, cached);
            // exactly 8 length-k transforms: 4 forward + 4 inverse
            assert_eq!(c2.transforms_at(k), (4, 4));
            assert_eq!(c2.transforms_total(), 8);
            // karatsuba route agrees too
            let mut c3 = CostCounter::new();
            let viak = mat_middle_product(&f, &Karatsuba::default(), &m, d, &rhs, k, &mut c3).unwrap();
            assert_eq!(direct, viak);
        }
    }
}
