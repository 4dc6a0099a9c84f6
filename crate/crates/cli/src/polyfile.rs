//! The polynomial text format.
//!
//! Line 1 declares the field: `p=<decimal prime>` or `Q` for rationals.
//! Every following non-blank line holds one coefficient, low to high:
//! decimal residues for prime fields, `a/b` fractions (or plain integers)
//! for rationals. A blank line separates polynomials. parse then emit is
//! the identity on canonical polynomials.

use std::fmt::Write as _;

use halfgcd::field::{PrimeField, Rationals};
use halfgcd::poly::Poly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

#[derive(Debug, Clone, PartialEq)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

/// A parsed file: the field line plus one coefficient-string list per
/// polynomial section. Field validation (primality) happens later so that
/// syntax errors and unsupported fields get distinct exit codes.
#[derive(Debug, Clone)]
pub struct PolyFile {
    pub field: FieldSpec,
    pub sections: Vec<Vec<String>>,
}

#[derive(Debug)]
pub enum FileError {
    Parse(String),
    UnsupportedField(String),
}

impl std::fmt::Display for FileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FileError::Parse(m) => write!(f, "parse error: {m}"),
            FileError::UnsupportedField(m) => write!(f, "unsupported field: {m}"),
        }
    }
}

impl std::error::Error for FileError {}

pub fn parse(text: &str) -> Result<PolyFile, FileError> {
    let mut lines = text.lines();
    let field_line = loop {
        match lines.next() {
            Some(l) if l.trim().is_empty() => continue,
            Some(l) => break l.trim().to_string(),
            None => return Err(FileError::Parse("empty file".into())),
        }
    };
    let field = if field_line == "Q" {
        FieldSpec::Rational
    } else if let Some(rest) = field_line.strip_prefix("p=") {
        let p: u64 = rest
            .trim()
            .parse()
            .map_err(|_| FileError::Parse(format!("bad modulus {rest:?}")))?;
        FieldSpec::Prime(p)
    } else {
        return Err(FileError::Parse(format!(
            "first line must be `p=<prime>` or `Q`, got {field_line:?}"
        )));
    };
    let mut sections: Vec<Vec<String>> = Vec::new();
    let mut cur: Vec<String> = Vec::new();
    for line in lines {
        let t = line.trim();
        if t.is_empty() {
            if !cur.is_empty() {
                sections.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(t.to_string());
        }
    }
    if !cur.is_empty() {
        sections.push(cur);
    }
    Ok(PolyFile { field, sections })
}

/// Build the prime-field context, distinguishing a bad modulus from a
/// syntax error.
pub fn prime_field(p: u64) -> Result<PrimeField, FileError> {
    PrimeField::new(p)
        .map_err(|_| FileError::UnsupportedField(format!("{p} is not an odd prime below 2^63")))
}

pub fn parse_prime_poly(f: &PrimeField, lines: &[String]) -> Result<Poly<PrimeField>, FileError> {
    let mut coeffs = Vec::with_capacity(lines.len());
    for l in lines {
        let v: i128 = l
            .parse()
            .map_err(|_| FileError::Parse(format!("bad coefficient {l:?}")))?;
        coeffs.push(f.from_i128(v));
    }
    Ok(Poly::new(coeffs))
}

pub fn parse_rational_poly(lines: &[String]) -> Result<Poly<Rationals>, FileError> {
    let mut coeffs = Vec::with_capacity(lines.len());
    for l in lines {
        let r = parse_fraction(l).ok_or_else(|| FileError::Parse(format!("bad coefficient {l:?}")))?;
        coeffs.push(r);
    }
    Ok(Poly::new(coeffs))
}

fn parse_fraction(s: &str) -> Option<BigRational> {
    let mut it = s.splitn(2, '/');
    let num: BigInt = it.next()?.trim().parse().ok()?;
    match it.next() {
        None => Some(BigRational::from_integer(num)),
        Some(d) => {
            let den: BigInt = d.trim().parse().ok()?;
            if den == BigInt::from(0) {
                None
            } else {
                Some(BigRational::new(num, den))
            }
        }
    }
}

pub fn emit_prime(p: u64, polys: &[&Poly<PrimeField>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p={p}");
    for (i, poly) in polys.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        if poly.is_zero() {
            out.push_str("0\n");
            continue;
        }
        for c in poly.coeffs() {
            let _ = writeln!(out, "{c}");
        }
    }
    out
}

pub fn emit_rational(polys: &[&Poly<Rationals>]) -> String {
    let mut out = String::new();
    out.push_str("Q\n");
    for (i, poly) in polys.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        if poly.is_zero() {
            out.push_str("0\n");
            continue;
        }
        for c in poly.coeffs() {
            if c.denom().is_one() {
                let _ = writeln!(out, "{}", c.numer());
            } else {
                let _ = writeln!(out, "{}/{}", c.numer(), c.denom());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_prime() {
        let f = PrimeField::new(17).unwrap();
        let text = "p=17\n3\n0\n5\n\n0\n";
        let pf = parse(text).unwrap();
        assert_eq!(pf.field, FieldSpec::Prime(17));
        assert_eq!(pf.sections.len(), 2);
        let p0 = parse_prime_poly(&f, &pf.sections[0]).unwrap();
        let p1 = parse_prime_poly(&f, &pf.sections[1]).unwrap();
        assert!(p1.is_zero());
        let emitted = emit_prime(17, &[&p0, &p1]);
        assert_eq!(emitted, text);
    }

    #[test]
    fn roundtrip_rational() {
        let text = "Q\n-3/2\n1\n\n5\n";
        let pf = parse(text).unwrap();
        assert_eq!(pf.field, FieldSpec::Rational);
        let p0 = parse_rational_poly(&pf.sections[0]).unwrap();
        let p1 = parse_rational_poly(&pf.sections[1]).unwrap();
        assert_eq!(emit_rational(&[&p0, &p1]), text);
    }

    #[test]
    fn negative_and_oversized_residues_reduce() {
        let f = PrimeField::new(17).unwrap();
        let p = parse_prime_poly(&f, &["-1".into(), "20".into()]).unwrap();
        assert_eq!(p.coeffs(), &[16, 3]);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse(""), Err(FileError::Parse(_))));
        assert!(matches!(parse("F_5\n1\n"), Err(FileError::Parse(_))));
        let f = PrimeField::new(17).unwrap();
        assert!(matches!(
            parse_prime_poly(&f, &["abc".into()]),
            Err(FileError::Parse(_))
        ));
        assert!(matches!(prime_field(91), Err(FileError::UnsupportedField(_))));
    }
}
