//! Operation-counting benchmark harness.
//!
//! One CSV row per (algorithm, size, seed), deterministic given the seed.
//! The normalized_constant column reports field_mults / (k * log2(k)^2);
//! the tool never interprets it. The transforms_weighted column applies the
//! butterfly calibration: each length-n transform weighs (n/2) * log2 n.

use std::fmt::Write as _;
use std::time::Instant;

use halfgcd::counter::CostCounter;
use halfgcd::euclid;
use halfgcd::field::PrimeField;
use halfgcd::gen;
use halfgcd::hgcd;
use halfgcd::ntt::TransformPlan;
use halfgcd::poly::{Karatsuba, Schoolbook};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BenchAlg {
    EuclidRef,
    NormalBasic,
    NormalBasicMp,
    NormalFft,
    NormalAny,
    General,
    GeneralFft,
}

impl BenchAlg {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "euclid-ref" => Self::EuclidRef,
            "hgcd-normal-basic" => Self::NormalBasic,
            "hgcd-normal-basic-mp" => Self::NormalBasicMp,
            "hgcd-normal-fft" => Self::NormalFft,
            "hgcd-normal-any" => Self::NormalAny,
            "hgcd-general" => Self::General,
            "hgcd-general-fft" => Self::GeneralFft,
            _ => return None,
        })
    }

    pub fn tag(self) -> &'static str {
        match self {
            Self::EuclidRef => "euclid-ref",
            Self::NormalBasic => "hgcd-normal-basic",
            Self::NormalBasicMp => "hgcd-normal-basic-mp",
            Self::NormalFft => "hgcd-normal-fft",
            Self::NormalAny => "hgcd-normal-any",
            Self::General => "hgcd-general",
            Self::GeneralFft => "hgcd-general-fft",
        }
    }

    pub fn all_tags() -> &'static str {
        "euclid-ref, hgcd-normal-basic, hgcd-normal-basic-mp, hgcd-normal-fft, \
         hgcd-normal-any, hgcd-general, hgcd-general-fft"
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Normal,
    General,
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub algorithm: &'static str,
    pub k: usize,
    pub d: usize,
    pub seed: u64,
    pub counter: CostCounter,
    pub wall_time_ns: u128,
}

pub struct BenchConfig {
    pub algs: Vec<BenchAlg>,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub input: InputKind,
    pub threshold: usize,
    pub timing: bool,
}

/// Run the matrix of (algorithm, size, seed) cells and return all rows in
/// deterministic sorted order.
pub fn run(f: &PrimeField, plan: &TransformPlan, cfg: &BenchConfig) -> Result<Vec<BenchRow>, String> {
    let mut rows = Vec::new();
    let mut algs = cfg.algs.clone();
    algs.sort();
    algs.dedup();
    let mut sizes = cfg.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();
    for &alg in &algs {
        for &k in &sizes {
            for &seed in &cfg.seeds {
                rows.push(run_cell(f, plan, alg, k, seed, cfg)?);
            }
        }
    }
    Ok(rows)
}

fn run_cell(
    f: &PrimeField,
    plan: &TransformPlan,
    alg: BenchAlg,
    k: usize,
    seed: u64,
    cfg: &BenchConfig,
) -> Result<BenchRow, String> {
    // decorrelate sizes within one seed stream, deterministically
    let mut rng = gen::rng_for(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(k as u64));
    let (p, q, d) = match (alg, cfg.input) {
        // the reference oracle runs the full sequence at degree k
        (BenchAlg::EuclidRef, InputKind::Normal) => {
            let (p, q) = gen::normal_pair(f, &mut rng, k);
            (p, q, k)
        }
        (BenchAlg::EuclidRef, InputKind::General) => {
            let (p, q) = gen::planted_abnormal_pair(f, &mut rng, k);
            (p, q, k)
        }
        // half-gcd algorithms run k steps on degree-2k inputs
        (_, InputKind::Normal) => {
            let (p, q) = gen::normal_pair(f, &mut rng, 2 * k);
            (p, q, 2 * k)
        }
        (_, InputKind::General) => {
            let (p, q) = gen::planted_abnormal_pair(f, &mut rng, 2 * k);
            (p, q, 2 * k)
        }
    };
    let mut counter = CostCounter::new();
    let thr = cfg.threshold;
    let start = Instant::now();
    let result: halfgcd::Result<()> = (|| {
        match alg {
            BenchAlg::EuclidRef => {
                euclid::remainder_sequence(f, &p, &q, &mut counter)?;
            }
            BenchAlg::NormalBasic => {
                hgcd::hgcd_normal_basic(f, &Schoolbook, &p, &q, k, false, thr, &mut counter)?;
            }
            BenchAlg::NormalBasicMp => {
                hgcd::hgcd_normal_basic(
                    f,
                    &Karatsuba::default(),
                    &p,
                    &q,
                    k,
                    true,
                    thr,
                    &mut counter,
                )?;
            }
            BenchAlg::NormalFft => {
                hgcd::hgcd_normal_fft(plan, &p, &q, k, thr, &mut counter)?;
            }
            BenchAlg::NormalAny => {
                hgcd::hgcd_normal_any(plan, &p, &q, k, thr, &mut counter)?;
            }
            BenchAlg::General => {
                hgcd::hgcd_general(f, &Karatsuba::default(), &p, &q, k, thr, &mut counter)?;
            }
            BenchAlg::GeneralFft => {
                let ell = k.next_power_of_two();
                hgcd::hgcd_general_fft(plan, &p, &q, k, ell, thr, &mut counter)?;
            }
        }
        Ok(())
    })();
    let wall = start.elapsed().as_nanos();
    result.map_err(|e| format!("{} at k={k} seed={seed}: {e}", alg.tag()))?;
    let _ = &p;
    let _ = &q;
    Ok(BenchRow {
        algorithm: alg.tag(),
        k,
        d,
        seed,
        counter,
        wall_time_ns: wall,
    })
}

pub fn to_csv(rows: &[BenchRow], timing: bool) -> String {
    let mut out = String::new();
    if timing {
        out.push_str("algorithm,k,d,seed,field_mults,field_adds,field_divs,transforms_total,transforms_weighted,wall_time_ns,normalized_constant\n");
    } else {
        out.push_str("algorithm,k,d,seed,field_mults,field_adds,field_divs,transforms_total,transforms_weighted,normalized_constant\n");
    }
    for r in rows {
        let k = r.k as f64;
        let log2k = k.log2();
        let norm = if log2k > 0.0 {
            r.counter.field_mults as f64 / (k * log2k * log2k)
        } else {
            0.0
        };
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.algorithm,
            r.k,
            r.d,
            r.seed,
            r.counter.field_mults,
            r.counter.field_adds,
            r.counter.field_divs,
            r.counter.transforms_total(),
            r.counter.weighted_transforms(),
        );
        if timing {
            let _ = write!(out, ",{}", r.wall_time_ns);
        }
        let _ = writeln!(out, ",{norm:.6}");
    }
    out
}

/// Parse a sizes list: comma-separated entries, each either a number or an
/// inclusive power-of-two range `a..b` stepping by doubling.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        if let Some((a, b)) = item.split_once("..") {
            let a: usize = a.trim().parse().map_err(|_| format!("bad size {item:?}"))?;
            let b: usize = b.trim().parse().map_err(|_| format!("bad size {item:?}"))?;
            if !a.is_power_of_two() || !b.is_power_of_two() || a > b {
                return Err(format!("range {item:?} must be increasing powers of two"));
            }
            let mut v = a;
            while v <= b {
                out.push(v);
                v <<= 1;
            }
        } else {
            out.push(item.parse().map_err(|_| format!("bad size {item:?}"))?);
        }
    }
    Ok(out)
}
