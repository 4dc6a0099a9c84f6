//! Reference Euclidean remainder sequences and Bezout matrices.
//!
//! Everything here is intentionally simple and quadratic; it is the ground
//! truth that the half-gcd algorithms are tested against. The starred
//! re-indexation relabels an arbitrary (possibly abnormal) sequence so that
//! deg R*_k <= d - k, padding the factor list with identity matrices.

use alloc::vec;
use alloc::vec::Vec;

use crate::counter::CostCounter;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::mat2::{mat_mul, Mat2Poly};
use crate::poly::{self, Karatsuba, Poly};

/// Degree cap for the quadratic oracle; keeps test runs desk-scale.
pub const ORACLE_DEGREE_CAP: usize = 1 << 16;

/// The full remainder sequence R_0 .. R_ell (with R_ell = 0), the quotients,
/// and the elementary Bezout matrices B_1 .. B_(ell-1).
#[derive(Debug, Clone)]
pub struct RemainderSequence<F: Field> {
    pub remainders: Vec<Poly<F>>,
    pub quotients: Vec<Poly<F>>,
    pub bezout: Vec<Mat2Poly<F>>,
    pub d: usize,
}

impl<F: Field> RemainderSequence<F> {
    /// The length ell: smallest index with R_ell = 0.
    pub fn ell(&self) -> usize {
        self.remainders.len() - 1
    }

    /// gcd(P, Q) up to a scalar: the last nonzero remainder.
    pub fn gcd_raw(&self) -> &Poly<F> {
        &self.remainders[self.ell() - 1]
    }

    /// Normal iff ell = d + 1, equivalently every quotient has degree one.
    pub fn is_normal(&self) -> bool {
        self.ell() == self.d + 1
    }
}

/// Compute the remainder sequence of (P, Q) with deg P > deg Q.
pub fn remainder_sequence<F: Field>(
    f: &F,
    p: &Poly<F>,
    q: &Poly<F>,
    c: &mut CostCounter,
) -> Result<RemainderSequence<F>> {
    if p.deg() <= q.deg() {
        return Err(Error::PreconditionViolated);
    }
    let d = p.deg().finite().ok_or(Error::PreconditionViolated)? as usize;
    if d > ORACLE_DEGREE_CAP {
        return Err(Error::OracleTooLarge);
    }
    let mut remainders = vec![p.clone(), q.clone()];
    let mut quotients = Vec::new();
    let mut bezout = Vec::new();
    while !remainders.last().unwrap().is_zero() {
        let rk = &remainders[remainders.len() - 1];
        let rk1 = &remainders[remainders.len() - 2];
        let (quo, rem) = poly::quo_rem(f, rk1, rk, c)?;
        bezout.push(Mat2Poly::elementary(f, &quo));
        quotients.push(quo);
        remainders.push(rem);
    }
    Ok(RemainderSequence {
        remainders,
        quotients,
        bezout,
        d,
    })
}

/// B_(i;j) = B_(j-1) ... B_(i+1) B_i via binary splitting; Id for i = j.
pub fn bezout_product<F: Field>(
    f: &F,
    seq: &RemainderSequence<F>,
    i: usize,
    j: usize,
    c: &mut CostCounter,
) -> Result<Mat2Poly<F>> {
    if i < 1 || i > j || j > seq.ell().max(1) {
        return Err(Error::PreconditionViolated);
    }
    split_product(f, &seq.bezout, i, j, c)
}

fn split_product<F: Field>(
    f: &F,
    factors: &[Mat2Poly<F>],
    i: usize,
    j: usize,
    c: &mut CostCounter,
) -> Result<Mat2Poly<F>> {
    if i == j {
        return Ok(Mat2Poly::identity(f));
    }
    if j == i + 1 {
        return Ok(factors[i - 1].clone());
    }
    let h = (i + j) / 2;
    let lo = split_product(f, factors, i, h, c)?;
    let hi = split_product(f, factors, h, j, c)?;
    mat_mul(f, &Karatsuba::default(), &hi, &lo, c)
}

/// A remainder sequence after the kappa re-indexation: starred remainders
/// R*_1 .. R*_(d+1) and starred factors B*_1 .. B*_d, each an elementary
/// Bezout matrix or the identity.
#[derive(Debug, Clone)]
pub struct StarredSequence<F: Field> {
    /// kappa(0..=ell): kappa(0) = 0, kappa(i) = d - deg R_i, kappa(ell) = d+1.
    pub kappa: Vec<usize>,
    /// remainders[k-1] = R*_k for k in 1..=d+1
    pub remainders: Vec<Poly<F>>,
    /// factors[k-1] = B*_k for k in 1..=d
    pub factors: Vec<Mat2Poly<F>>,
    pub d: usize,
}

impl<F: Field> StarredSequence<F> {
    pub fn starred_remainder(&self, k: usize) -> &Poly<F> {
        &self.remainders[k - 1]
    }

    pub fn starred_factor(&self, k: usize) -> &Mat2Poly<F> {
        &self.factors[k - 1]
    }

    /// B*_(i;j) = B*_(j-1) ... B*_i for 1 <= i <= j <= d + 1.
    pub fn bezout_product(
        &self,
        f: &F,
        i: usize,
        j: usize,
        c: &mut CostCounter,
    ) -> Result<Mat2Poly<F>> {
        if i < 1 || i > j || j > self.d + 1 {
            return Err(Error::PreconditionViolated);
        }
        split_product(f, &self.factors, i, j, c)
    }
}

/// Re-index a remainder sequence: kappa(i) = d - deg R_i, gaps filled with
/// identity factors so that deg R*_k <= d - k and deg B*_(1;k+1) <= k.
pub fn reindex<F: Field>(f: &F, seq: &RemainderSequence<F>) -> StarredSequence<F> {
    let d = seq.d;
    let ell = seq.ell();
    let mut kappa = Vec::with_capacity(ell + 1);
    kappa.push(0usize);
    for i in 1..ell {
        let deg = seq.remainders[i].deg().expect_finite() as usize;
        kappa.push(d - deg);
    }
    kappa.push(d + 1);

    let mut remainders = Vec::with_capacity(d + 1);
    let mut factors = Vec::with_capacity(d);
    // walk k = 1..=d+1 with i the largest index such that kappa(i) <= k
    let mut i = 0usize;
    for k in 1..=d + 1 {
        while i + 1 < kappa.len() && kappa[i + 1] <= k {
            i += 1;
        }
        if kappa[i] == k && i >= 1 {
            remainders.push(seq.remainders[i].clone());
            if k <= d {
                factors.push(seq.bezout[i - 1].clone());
            }
        } else {
            // kappa(i) < k < kappa(i+1)
            remainders.push(seq.remainders[i + 1].clone());
            if k <= d {
                factors.push(Mat2Poly::identity(f));
            }
        }
    }
    StarredSequence {
        kappa,
        remainders,
        factors,
        d,
    }
}

/// The starred Bezout product B*_(1;k+1)(P, Q): the quantity the half-gcd
/// algorithms compute. Convenience wrapper for tests and the self-test
/// suite.
pub fn starred_bezout<F: Field>(
    f: &F,
    p: &Poly<F>,
    q: &Poly<F>,
    k: usize,
    c: &mut CostCounter,
) -> Result<Mat2Poly<F>> {
    let seq = remainder_sequence(f, p, q, c)?;
    let starred = reindex(f, &seq);
    if k > starred.d {
        return Err(Error::PreconditionViolated);
    }
    starred.bezout_product(f, 1, k + 1, c)
}
