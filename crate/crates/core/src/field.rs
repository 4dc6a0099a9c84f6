//! Coefficient fields: NTT-friendly prime fields and exact rationals.
//!
//! The prime field is the workhorse; its modulus has the shape
//! p = s*2^t + 1 so that radix-two transforms of length up to 2^t exist.
//! The rational field exists for small hand-checkable fixtures and as the
//! exact ground truth for the reference remainder sequences.

use crate::error::{Error, Result};
use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An abstract effective field. All operations are exact and pure; element
/// values are kept in a canonical form that is unique per field value.
///
/// The `Zero` bound gives polynomials a context-free canonical form: the
/// additive identity of both supported fields is the representation-level
/// zero.
pub trait Field: Clone {
    type Elem: Clone + PartialEq + Debug + Zero;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; fails on zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let binv = self.inv(b)?;
        Ok(self.mul(a, &binv))
    }

    /// Small-integer embedding, convenient for fixtures.
    fn from_i64(&self, v: i64) -> Self::Elem;
}

/// The default benchmark prime 3 * 2^30 + 1.
pub const DEFAULT_PRIME: u64 = 3 * (1 << 30) + 1;

/// Context for the prime field F_p with p = s * 2^t + 1.
///
/// Construction verifies primality (deterministic Miller-Rabin) and derives
/// the two-adicity and a root of unity of order exactly 2^t, so a context
/// value is always internally consistent. Immutable and freely shareable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    modulus: u64,
    two_adicity: u32,
    odd_cofactor: u64,
    omega_max: u64,
}

impl PrimeField {
    /// Build a context for an odd prime p. Fails with `BadModulus` if p is
    /// not an odd prime below 2^63 or if no 2^t-th root of unity exists
    /// (which cannot happen for an odd prime, but is re-verified anyway).
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 || p >= 1 << 63 || !is_prime_u64(p) {
            return Err(Error::BadModulus);
        }
        let t = (p - 1).trailing_zeros();
        let s = (p - 1) >> t;
        // Any c with c^s of order exactly 2^t works; half of all c do, so a
        // scan over small candidates terminates almost immediately.
        let mut omega_max = 0;
        for c in 2..p {
            let u = pow_mod(c, s, p);
            if t == 0 {
                omega_max = 1;
                break;
            }
            if pow_mod(u, 1 << (t - 1), p) == p - 1 {
                omega_max = u;
                break;
            }
        }
        if omega_max == 0 {
            return Err(Error::BadModulus);
        }
        Ok(Self {
            modulus: p,
            two_adicity: t,
            odd_cofactor: s,
            omega_max,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Largest t with 2^t dividing p - 1; transforms up to length 2^t exist.
    pub fn two_adicity(&self) -> u32 {
        self.two_adicity
    }

    /// The odd-ish cofactor s in p = s * 2^t + 1.
    pub fn odd_cofactor(&self) -> u64 {
        self.odd_cofactor
    }

    /// A fixed element of multiplicative order exactly 2^t.
    pub fn omega_max(&self) -> u64 {
        self.omega_max
    }

    /// omega_{2^k} = omega_max^(2^(t-k)), so that the compatibility law
    /// omega_m = omega_n^(n/m) holds across all supported lengths.
    pub fn root_of_unity(&self, k: u32) -> Result<u64> {
        if k > self.two_adicity {
            return Err(Error::UnsupportedLength);
        }
        Ok(pow_mod(
            self.omega_max,
            1u64 << (self.two_adicity - k),
            self.modulus,
        ))
    }

    pub fn pow(&self, base: u64, exp: u64) -> u64 {
        pow_mod(base, exp, self.modulus)
    }

    /// Canonical residue of a signed integer.
    pub fn from_i128(&self, v: i128) -> u64 {
        let p = self.modulus as i128;
        (v.rem_euclid(p)) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }

    #[inline]
    fn one(&self) -> u64 {
        1
    }

    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus { s - self.modulus } else { s }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b { a - b } else { a + self.modulus - b }
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 { 0 } else { self.modulus - a }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(pow_mod(*a, self.modulus - 2, self.modulus))
    }

    fn from_i64(&self, v: i64) -> u64 {
        self.from_i128(v as i128)
    }
}

/// The field of rational numbers with arbitrary-precision reduced fractions.
/// Canonical form (positive denominator, gcd(num, den) = 1) is maintained by
/// the underlying representation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Rationals {
    pub fn ratio(&self, num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Canonical-form check used by tests: numerator and denominator coprime,
/// denominator positive.
pub fn rational_is_canonical(a: &BigRational) -> bool {
    if a.denom().is_negative() || a.denom().is_zero() {
        return false;
    }
    let g = num_bigint::BigInt::from(num_integer_gcd(a.numer().clone(), a.denom().clone()));
    g.is_one() || (a.numer().is_zero() && a.denom().is_one())
}

fn num_integer_gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
    a = a.abs();
    b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

#[inline]
pub(crate) fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b: u128 = (base % p) as u128;
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for u64; the base set below is known to be
/// exact for all 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let r = d.trailing_zeros();
    let d = d >> r;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
