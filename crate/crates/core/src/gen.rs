//! Seeded input generators for benchmarks and randomized tests.
//!
//! Two regimes: verified-normal random pairs, and pairs with planted
//! abnormal quotient-degree patterns built by multiplying out a random
//! quotient sequence from the bottom.

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::counter::CostCounter;
use crate::field::{Field, PrimeField};
use crate::poly::{self, Poly};

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_poly(f: &PrimeField, rng: &mut ChaCha8Rng, len: usize) -> Poly<PrimeField> {
    let p = f.modulus();
    Poly::new((0..len).map(|_| rng.gen_range(0..p)).collect::<Vec<_>>())
}

/// Random polynomial of exact degree d.
pub fn random_poly_of_degree(f: &PrimeField, rng: &mut ChaCha8Rng, d: usize) -> Poly<PrimeField> {
    let p = f.modulus();
    let mut v: Vec<u64> = (0..=d).map(|_| rng.gen_range(0..p)).collect();
    if v[d] == 0 {
        v[d] = 1 + rng.gen_range(0..p - 1);
    }
    Poly::new(v)
}

/// Quotient-degree scan: true iff the first `steps` quotients of the
/// remainder sequence of (P, Q) all have degree one. Quadratic but cheap
/// enough at bench scale; bails out at the first violation.
pub fn is_normal_prefix(
    f: &PrimeField,
    p: &Poly<PrimeField>,
    q: &Poly<PrimeField>,
    steps: usize,
    c: &mut CostCounter,
) -> bool {
    let mut a = p.clone();
    let mut b = q.clone();
    for _ in 0..steps {
        if b.is_zero() || a.deg() <= b.deg() {
            return false;
        }
        let Ok((quo, rem)) = poly::quo_rem(f, &a, &b, c) else {
            return false;
        };
        if quo.len() != 2 {
            return false;
        }
        a = b;
        b = rem;
    }
    true
}

/// Random (P, Q) with deg P = d, deg Q = d - 1 and a verified-normal
/// remainder sequence; abnormal draws (probability O(d/p)) are redrawn.
pub fn normal_pair(
    f: &PrimeField,
    rng: &mut ChaCha8Rng,
    d: usize,
) -> (Poly<PrimeField>, Poly<PrimeField>) {
    assert!(d >= 1);
    let mut scratch = CostCounter::new();
    loop {
        let p = random_poly_of_degree(f, rng, d);
        let q = random_poly_of_degree(f, rng, d - 1);
        if is_normal_prefix(f, &p, &q, d, &mut scratch) {
            return (p, q);
        }
    }
}

/// Random (P, Q) of degree d with planted quotient degrees: mostly ones,
/// some small jumps, occasional large quotients. Built bottom-up from the
/// quotient sequence, so the abnormal pattern is exact by construction.
pub fn planted_abnormal_pair(
    f: &PrimeField,
    rng: &mut ChaCha8Rng,
    d: usize,
) -> (Poly<PrimeField>, Poly<PrimeField>) {
    assert!(d >= 2);
    let mut scratch = CostCounter::new();
    let mut degs: Vec<usize> = Vec::new();
    let mut total = 0usize;
    while total < d {
        let room = d - total;
        let roll = rng.gen_range(0..100u32);
        let dq = if roll < 70 {
            1
        } else if roll < 90 {
            2.min(room)
        } else if roll < 97 {
            3.min(room)
        } else {
            rng.gen_range(4..=12usize).min(room)
        };
        degs.push(dq);
        total += dq;
    }
    // bottom-up: R_m = nonzero constant, R_(i-1) = q_i R_i + R_(i+1)
    let mut r_next: Poly<PrimeField> = Poly::zero();
    let mut r_cur: Poly<PrimeField> = Poly::constant(rng.gen_range(1..f.modulus()));
    for dq in degs.iter().rev() {
        let quo = random_poly_of_degree(f, rng, *dq);
        let prod = poly::mul_karatsuba(f, &quo, &r_cur, 32, &mut scratch);
        let r_prev = poly::add(f, &prod, &r_next, &mut scratch);
        r_next = r_cur;
        r_cur = r_prev;
    }
    debug_assert_eq!(r_cur.deg().expect_finite() as usize, d);
    (r_cur, r_next)
}

/// Random rational polynomial with small integer coefficients; oracle-side
/// fixtures only.
pub fn random_rational_poly(
    rng: &mut ChaCha8Rng,
    len: usize,
) -> Poly<crate::field::Rationals> {
    let q = crate::field::Rationals;
    Poly::new(
        (0..len)
            .map(|_| q.from_i64(rng.gen_range(-9i64..=9)))
            .collect::<Vec<_>>(),
    )
}
