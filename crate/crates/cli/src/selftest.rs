//! Built-in fixture suite: hand-derived examples, oracle equivalences at
//! small sizes, and the transform-count assertions. Runs in-process and
//! reports one line per fixture.

use halfgcd::counter::CostCounter;
use halfgcd::euclid;
use halfgcd::field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
use halfgcd::gcd::{self, GcdConfig};
use halfgcd::gen;
use halfgcd::hgcd::{self, NodeKind};
use halfgcd::mat2::{mat_dft, mat_mul, mat_mul_wrapped, Mat2Poly};
use halfgcd::ntt::{dft, fft_double, inverse_dft, SpectrumVec, TransformPlan};
use halfgcd::poly::{self, middle_product_direct, middle_product_ntt, Poly, Schoolbook};

type FixtureResult = Result<(), String>;

struct Fixture {
    tag: &'static str,
    name: &'static str,
    run: fn(&Ctx) -> FixtureResult,
}

pub struct Ctx {
    f: PrimeField,
    plan: TransformPlan,
}

fn expect<T: PartialEq + std::fmt::Debug>(got: T, want: T, what: &str) -> FixtureResult {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn check(cond: bool, what: &str) -> FixtureResult {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

const FIXTURES: &[Fixture] = &[
    Fixture { tag: "field", name: "f5 arithmetic and inverse", run: fx_field_f5 },
    Fixture { tag: "field", name: "f17 root of order four", run: fx_field_f17 },
    Fixture { tag: "field", name: "bench prime two-adicity", run: fx_field_bench_prime },
    Fixture { tag: "ntt", name: "dft examples over small fields", run: fx_ntt_examples },
    Fixture { tag: "ntt", name: "roundtrip and convolution", run: fx_ntt_roundtrip },
    Fixture { tag: "ntt", name: "fft doubling vs direct transform", run: fx_ntt_doubling },
    Fixture { tag: "poly", name: "slice windows", run: fx_poly_slice },
    Fixture { tag: "poly", name: "middle product example and pairing", run: fx_poly_middle },
    Fixture { tag: "poly", name: "division and series inversion", run: fx_poly_divide },
    Fixture { tag: "mat2", name: "rational bezout product", run: fx_mat2_rational },
    Fixture { tag: "mat2", name: "wrapped product correction", run: fx_mat2_wrapped },
    Fixture { tag: "euclid", name: "x^3 / x^2+1 remainder chain", run: fx_euclid_chain },
    Fixture { tag: "euclid", name: "abnormal reindexation", run: fx_euclid_starred },
    Fixture { tag: "hgcd", name: "normal variants vs oracle", run: fx_hgcd_normal },
    Fixture { tag: "hgcd", name: "general variants vs starred oracle", run: fx_hgcd_general },
    Fixture { tag: "hgcd", name: "per-node transform counts", run: fx_hgcd_counts },
    Fixture { tag: "gcd", name: "extended gcd identity", run: fx_gcd_identity },
];

/// Run fixtures whose tag or name contains `filter`; returns the number of
/// failures.
pub fn run(filter: Option<&str>, inject_twiddle_fault: bool) -> usize {
    let f = PrimeField::new(DEFAULT_PRIME).expect("default prime");
    let mut plan = TransformPlan::new(&f, 14).expect("plan");
    if inject_twiddle_fault {
        plan.corrupt_twiddle_for_tests();
        eprintln!("note: twiddle fault injected; transform fixtures should fail");
    }
    let ctx = Ctx { f, plan };
    let mut failures = 0;
    let mut ran = 0;
    for fx in FIXTURES {
        if let Some(pat) = filter {
            if !fx.tag.contains(pat) && !fx.name.contains(pat) {
                continue;
            }
        }
        ran += 1;
        match (fx.run)(&ctx) {
            Ok(()) => println!("[PASS] {}: {}", fx.tag, fx.name),
            Err(msg) => {
                failures += 1;
                println!("[FAIL] {}: {}: {}", fx.tag, fx.name, msg);
            }
        }
    }
    println!("selftest: {} run, {} failed", ran, failures);
    failures
}

fn fx_field_f5(_: &Ctx) -> FixtureResult {
    let f = PrimeField::new(5).map_err(|e| e.to_string())?;
    expect(f.add(&2, &4), 1, "2 + 4 in F_5")?;
    expect(f.inv(&3).map_err(|e| e.to_string())?, 2, "inv(3) in F_5")?;
    check(f.inv(&0).is_err(), "inv(0) must fail")?;
    expect(f.root_of_unity(1).map_err(|e| e.to_string())?, 4, "order-2 root")
}

fn fx_field_f17(_: &Ctx) -> FixtureResult {
    let f = PrimeField::new(17).map_err(|e| e.to_string())?;
    let w = f.root_of_unity(2).map_err(|e| e.to_string())?;
    expect(f.mul(&w, &w), 16, "w^2 = -1")?;
    expect(f.pow(w, 4), 1, "w^4 = 1")
}

fn fx_field_bench_prime(ctx: &Ctx) -> FixtureResult {
    expect(ctx.f.two_adicity(), 30, "two-adicity of 3*2^30+1")?;
    let w = ctx.f.root_of_unity(30).map_err(|e| e.to_string())?;
    expect(ctx.f.pow(w, 1 << 29), DEFAULT_PRIME - 1, "half-order power is -1")
}

fn fx_ntt_examples(_: &Ctx) -> FixtureResult {
    let f5 = PrimeField::new(5).map_err(|e| e.to_string())?;
    let plan5 = TransformPlan::new(&f5, 2).map_err(|e| e.to_string())?;
    let mut c = CostCounter::new();
    let p = Poly::new(vec![1u64, 2]);
    let s = dft(&plan5, &p, 2, &mut c).map_err(|e| e.to_string())?;
    expect(s.values.clone(), vec![3, 4], "dft(1+2x) over F_5")?;
    let back = inverse_dft(&plan5, &s, &mut c).map_err(|e| e.to_string())?;
    expect(back, p, "inverse of (3,4)")?;
    let f17 = PrimeField::new(17).map_err(|e| e.to_string())?;
    let plan17 = TransformPlan::new(&f17, 4).map_err(|e| e.to_string())?;
    let s = dft(&plan17, &Poly::new(vec![0u64, 1]), 4, &mut c).map_err(|e| e.to_string())?;
    let w = f17.root_of_unity(2).map_err(|e| e.to_string())?;
    expect(s.values, vec![1, w, f17.pow(w, 2), f17.pow(w, 3)], "dft(x) = powers of omega")
}

fn fx_ntt_roundtrip(ctx: &Ctx) -> FixtureResult {
    let mut rng = gen::rng_for(101);
    let mut c = CostCounter::new();
    for k in [1u32, 4, 7] {
        let n = 1usize << k;
        let p = gen::random_poly(&ctx.f, &mut rng, n);
        let s = dft(&ctx.plan, &p, n, &mut c).map_err(|e| e.to_string())?;
        let back = inverse_dft(&ctx.plan, &s, &mut c).map_err(|e| e.to_string())?;
        expect(back, p, "dft roundtrip")?;
    }
    // convolution theorem vs schoolbook
    let a = gen::random_poly(&ctx.f, &mut rng, 40);
    let b = gen::random_poly(&ctx.f, &mut rng, 25);
    let viantt = poly::mul_ntt(&ctx.plan, &a, &b, &mut c).map_err(|e| e.to_string())?;
    let school = poly::mul_schoolbook(&ctx.f, &a, &b, &mut c);
    expect(viantt, school, "convolution theorem")
}

fn fx_ntt_doubling(ctx: &Ctx) -> FixtureResult {
    let mut rng = gen::rng_for(103);
    let mut c = CostCounter::new();
    for n in [4usize, 16, 64] {
        let p = gen::random_poly(&ctx.f, &mut rng, n);
        let half = dft(
            &ctx.plan,
            &p.rem_pow2_cyclic(n / 2, &ctx.f),
            n / 2,
            &mut c,
        )
        .map_err(|e| e.to_string())?;
        let full = fft_double(&ctx.plan, &p, &half, &mut c).map_err(|e| e.to_string())?;
        let direct = dft(&ctx.plan, &p, n, &mut c).map_err(|e| e.to_string())?;
        expect(full, direct, "doubling equals direct transform")?;
    }
    // F_5 miniature: doubling (3) to (3,4)
    let f5 = PrimeField::new(5).map_err(|e| e.to_string())?;
    let plan5 = TransformPlan::new(&f5, 2).map_err(|e| e.to_string())?;
    let full = fft_double(
        &plan5,
        &Poly::new(vec![1u64, 2]),
        &SpectrumVec { values: vec![3] },
        &mut c,
    )
    .map_err(|e| e.to_string())?;
    expect(full.values, vec![3, 4], "tiny doubling")
}

fn fx_poly_slice(ctx: &Ctx) -> FixtureResult {
    let u: Poly<PrimeField> = Poly::new(vec![1, 2, 3, 4]);
    expect(u.slice(1, 3), Poly::new(vec![2, 3]), "U_(1;3)")?;
    check(u.slice(3, 2).is_zero(), "U_(3;2) = 0")?;
    expect(u.slice_from(2), Poly::new(vec![3, 4]), "U_(2;)")?;
    let _ = ctx;
    Ok(())
}

fn fx_poly_middle(ctx: &Ctx) -> FixtureResult {
    let mut c = CostCounter::new();
    let p = Poly::new(vec![1u64, 2]);
    let r = Poly::new(vec![3u64, 4, 5]);
    let direct =
        middle_product_direct(&ctx.f, &p, 1, &r, 3, &mut c).map_err(|e| e.to_string())?;
    expect(direct.clone(), Poly::new(vec![10u64, 13]), "middle product 10+13x")?;
    let viantt =
        middle_product_ntt(&ctx.plan, &p, 1, &r, 3, &mut c).map_err(|e| e.to_string())?;
    expect(viantt, direct, "transform path agrees")?;
    // transpose pairing against the reversed kernel
    let mut rng = gen::rng_for(107);
    let pk = gen::random_poly_of_degree(&ctx.f, &mut rng, 3);
    let rr = gen::random_poly(&ctx.f, &mut rng, 12);
    let qq = gen::random_poly(&ctx.f, &mut rng, 9);
    let mp = middle_product_direct(&ctx.f, &pk, 3, &rr, 12, &mut c).map_err(|e| e.to_string())?;
    let lhs = (0..9i64).fold(0u64, |acc, i| {
        ctx.f.add(&acc, &ctx.f.mul(&mp.coeff(i), &qq.coeff(i)))
    });
    let rev = pk.reverse_window(4);
    let prod = poly::mul_schoolbook(&ctx.f, &rev, &qq, &mut c);
    let rhs = (0..12i64).fold(0u64, |acc, j| {
        ctx.f.add(&acc, &ctx.f.mul(&prod.coeff(j), &rr.coeff(j)))
    });
    expect(lhs, rhs, "transpose pairing")
}

fn fx_poly_divide(ctx: &Ctx) -> FixtureResult {
    let mut c = CostCounter::new();
    let p: Poly<PrimeField> = Poly::new(vec![0, 0, 0, 1]);
    let q: Poly<PrimeField> = Poly::new(vec![1, 0, 1]);
    let (quo, rem) = poly::quo_rem(&ctx.f, &p, &q, &mut c).map_err(|e| e.to_string())?;
    expect(quo, Poly::new(vec![0, 1]), "x^3 quo x^2+1")?;
    expect(rem, Poly::new(vec![0, DEFAULT_PRIME - 1]), "x^3 rem x^2+1")?;
    let inv = poly::series_inv(&ctx.f, &Poly::new(vec![1, DEFAULT_PRIME - 1]), 4, &mut c)
        .map_err(|e| e.to_string())?;
    expect(inv, Poly::new(vec![1, 1, 1, 1]), "1/(1-x) mod x^4")
}

fn fx_mat2_rational(_: &Ctx) -> FixtureResult {
    let q = Rationals;
    let mut c = CostCounter::new();
    let x = Poly::x(&q);
    let b1 = Mat2Poly::elementary(&q, &x);
    let minus_x = poly::neg(&q, &x, &mut c);
    let b2 = Mat2Poly::elementary(&q, &minus_x);
    let prod = mat_mul(&q, &Schoolbook, &b2, &b1, &mut c).map_err(|e| e.to_string())?;
    expect(prod.m12, minus_x, "(1,2) entry is -x")?;
    expect(
        prod.m22,
        Poly::new(vec![q.from_i64(1), q.from_i64(0), q.from_i64(-1)]),
        "(2,2) entry is 1-x^2",
    )
}

fn fx_mat2_wrapped(ctx: &Ctx) -> FixtureResult {
    let mut c = CostCounter::new();
    let m = Mat2Poly {
        m11: Poly::zero(),
        m12: Poly::one(&ctx.f),
        m21: Poly::one(&ctx.f),
        m22: Poly::x(&ctx.f),
    };
    let s = mat_dft(&ctx.plan, &m, 2, &mut c).map_err(|e| e.to_string())?;
    let lead = m.coeff_matrix(1);
    let got = mat_mul_wrapped(&ctx.plan, &s, &s, &lead, &lead, 2, &mut c)
        .map_err(|e| e.to_string())?;
    let want = mat_mul(&ctx.f, &Schoolbook, &m, &m, &mut c).map_err(|e| e.to_string())?;
    expect(got, want, "wrapped square of [[0,1],[1,x]]")
}

fn fx_euclid_chain(ctx: &Ctx) -> FixtureResult {
    let mut c = CostCounter::new();
    let p: Poly<PrimeField> = Poly::new(vec![0, 0, 0, 1]);
    let q: Poly<PrimeField> = Poly::new(vec![1, 0, 1]);
    let seq = euclid::remainder_sequence(&ctx.f, &p, &q, &mut c).map_err(|e| e.to_string())?;
    expect(seq.ell(), 4, "length")?;
    check(seq.is_normal(), "normal sequence")?;
    expect(
        seq.remainders[2].clone(),
        Poly::new(vec![0, DEFAULT_PRIME - 1]),
        "R_2 = -x",
    )?;
    let b13 = euclid::bezout_product(&ctx.f, &seq, 1, 3, &mut c).map_err(|e| e.to_string())?;
    expect(
        b13.m22,
        Poly::new(vec![1, 0, DEFAULT_PRIME - 1]),
        "B_(1;3) bottom-right is 1-x^2",
    )
}

fn fx_euclid_starred(ctx: &Ctx) -> FixtureResult {
    let mut c = CostCounter::new();
    let p: Poly<PrimeField> = Poly::new(vec![0, 0, 0, 1]);
    let x: Poly<PrimeField> = Poly::new(vec![0, 1]);
    let seq = euclid::remainder_sequence(&ctx.f, &p, &x, &mut c).map_err(|e| e.to_string())?;
    let st = euclid::reindex(&ctx.f, &seq);
    expect(st.kappa.clone(), vec![0, 2, 4], "kappa of (x^3, x)")?;
    check(st.starred_factor(1).is_identity(&ctx.f), "B*_1 = Id")?;
    let b14 = st.bezout_product(&ctx.f, 1, 4, &mut c).map_err(|e| e.to_string())?;
    expect(
        b14.m22,
        Poly::new(vec![0, 0, DEFAULT_PRIME - 1]),
        "B*_(1;4) ends with -x^2",
    )
}

fn fx_hgcd_normal(ctx: &Ctx) -> FixtureResult {
    let mut rng = gen::rng_for(109);
    let mut c = CostCounter::new();
    let (p, q) = gen::normal_pair(&ctx.f, &mut rng, 48);
    let seq = euclid::remainder_sequence(&ctx.f, &p, &q, &mut c).map_err(|e| e.to_string())?;
    for k in [1usize, 7, 16, 24] {
        let want = euclid::bezout_product(&ctx.f, &seq, 1, k + 1, &mut c)
            .map_err(|e| e.to_string())?;
        for mp in [false, true] {
            let got = hgcd::hgcd_normal_basic(&ctx.f, &Schoolbook, &p, &q, k, mp, 1, &mut c)
                .map_err(|e| e.to_string())?;
            expect(got, want.clone(), "normal basic vs oracle")?;
        }
        if k.is_power_of_two() {
            let got = hgcd::hgcd_normal_fft(&ctx.plan, &p, &q, k, 1, &mut c)
                .map_err(|e| e.to_string())?;
            expect(got.matrix, want.clone(), "normal fft vs oracle")?;
        }
        let got = hgcd::hgcd_normal_any(&ctx.plan, &p, &q, k, 1, &mut c)
            .map_err(|e| e.to_string())?;
        expect(got, want, "normal any vs oracle")?;
    }
    Ok(())
}

fn fx_hgcd_general(ctx: &Ctx) -> FixtureResult {
    let mut rng = gen::rng_for(113);
    let mut c = CostCounter::new();
    for d in [20usize, 50] {
        let (p, q) = gen::planted_abnormal_pair(&ctx.f, &mut rng, d);
        for k in [2usize, d / 2, d] {
            let want =
                euclid::starred_bezout(&ctx.f, &p, &q, k, &mut c).map_err(|e| e.to_string())?;
            let got = hgcd::hgcd_general(&ctx.f, &Schoolbook, &p, &q, k, 1, &mut c)
                .map_err(|e| e.to_string())?;
            expect(got, want.clone(), "general vs starred oracle")?;
            let ell = k.next_power_of_two();
            let got = hgcd::hgcd_general_fft(&ctx.plan, &p, &q, k, ell, 1, &mut c)
                .map_err(|e| e.to_string())?;
            expect(got.matrix, want, "general fft vs starred oracle")?;
        }
    }
    Ok(())
}

fn fx_hgcd_counts(ctx: &Ctx) -> FixtureResult {
    let mut rng = gen::rng_for(127);
    let (p, q) = gen::normal_pair(&ctx.f, &mut rng, 128);
    let mut c = CostCounter::new();
    let mut trace = Vec::new();
    hgcd::hgcd_normal_fft_traced(&ctx.plan, &p, &q, 64, 1, &mut c, Some(&mut trace))
        .map_err(|e| e.to_string())?;
    for node in &trace {
        if node.kind == NodeKind::Internal {
            let (fw, iv) = node.own.transforms_at(node.k);
            check(
                fw + iv == 12 && node.own.transforms_at(node.k / 2) == (8, 0),
                &format!("node k={} must issue 12 + 8 transforms", node.k),
            )?;
        }
    }
    Ok(())
}

fn fx_gcd_identity(ctx: &Ctx) -> FixtureResult {
    let mut rng = gen::rng_for(131);
    let mut c = CostCounter::new();
    let cfg = GcdConfig::default();
    for _ in 0..4 {
        let (p, q) = gen::planted_abnormal_pair(&ctx.f, &mut rng, 40);
        let r = gcd::xgcd(&ctx.plan, &p, &q, &cfg, &mut c).map_err(|e| e.to_string())?;
        let lhs = poly::add(
            &ctx.f,
            &poly::mul_schoolbook(&ctx.f, &r.u, &p, &mut c),
            &poly::mul_schoolbook(&ctx.f, &r.v, &q, &mut c),
            &mut c,
        );
        expect(lhs, r.g.clone(), "u P + v Q = g")?;
        check(r.g.lc() == Some(&1), "g monic")?;
    }
    Ok(())
}
