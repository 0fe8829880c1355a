//! Text grammar for forms.
//!
//! Terms are joined by `+`/`-`; each term is `[coef][*]mono` with `coef` an
//! integer or `p/q`, and `mono` a `*`-joined product of `x<i>` or `x<i>^<e>`.
//! Variables are `x0..x9`, with `x`, `y`, `z` as aliases for `x0`, `x1`,
//! `x2`. Whitespace is ignored. The canonical printer in `SymmetricForm`
//! round-trips through this parser.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::form::SymmetricForm;
use crate::multiindex::MultiIndex;
use crate::rational::Rational;

const MAX_VARS: usize = 10;

pub fn parse_form(text: &str) -> Result<SymmetricForm> {
    let src: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(Error::Syntax("empty input".into()));
    }
    let mut terms: Vec<(Vec<u32>, Rational)> = Vec::new();
    let mut pos = 0usize;
    let mut sign = 1i64;
    // leading sign
    if src[pos] == '+' || src[pos] == '-' {
        if src[pos] == '-' {
            sign = -1;
        }
        pos += 1;
    }
    loop {
        let (exps, coeff, next) = parse_term(&src, pos)?;
        terms.push((exps, coeff * Rational::from_integer(BigInt::from(sign))));
        pos = next;
        if pos == src.len() {
            break;
        }
        sign = match src[pos] {
            '+' => 1,
            '-' => -1,
            c => return Err(Error::Syntax(format!("expected `+` or `-`, found `{c}`"))),
        };
        pos += 1;
        if pos == src.len() {
            return Err(Error::Syntax("dangling sign at end of input".into()));
        }
    }

    let nvars = terms
        .iter()
        .flat_map(|(e, _)| {
            e.iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, _)| i + 1)
        })
        .max()
        .unwrap_or(0);
    if nvars == 0 {
        return Err(Error::NonHomogeneous(
            "constant input has no well-defined degree".into(),
        ));
    }
    let degree: u32 = terms[0].0.iter().sum();
    for (e, _) in &terms {
        let d: u32 = e.iter().sum();
        if d != degree {
            return Err(Error::NonHomogeneous(format!(
                "terms of degree {degree} and {d} mixed"
            )));
        }
    }
    if degree == 0 {
        return Err(Error::NonHomogeneous(
            "constant input has no well-defined degree".into(),
        ));
    }
    SymmetricForm::new(
        nvars,
        degree,
        terms
            .into_iter()
            .map(|(e, c)| (MultiIndex::new(e[..nvars].to_vec()), c)),
    )
}

/// Parses one product of factors starting at `pos`; returns the exponent
/// vector (NVARS wide), the coefficient, and the position after the term.
fn parse_term(src: &[char], mut pos: usize) -> Result<(Vec<u32>, Rational, usize)> {
    let mut exps = vec![0u32; MAX_VARS];
    let mut coeff = Rational::one();
    let mut want_factor = true;
    while pos < src.len() {
        let c = src[pos];
        match c {
            '+' | '-' => break,
            '*' => {
                if want_factor {
                    return Err(Error::Syntax("unexpected `*`".into()));
                }
                want_factor = true;
                pos += 1;
            }
            '0'..='9' => {
                let (r, next) = parse_number(src, pos)?;
                coeff *= r;
                pos = next;
                want_factor = false;
            }
            'x' | 'y' | 'z' => {
                let (var, exp, next) = parse_var_power(src, pos)?;
                exps[var] += exp;
                pos = next;
                want_factor = false;
            }
            other => {
                if other.is_ascii_alphabetic() {
                    return Err(Error::UnknownVariable(other.to_string()));
                }
                return Err(Error::Syntax(format!("unexpected character `{other}`")));
            }
        }
    }
    if want_factor {
        return Err(Error::Syntax("empty term".into()));
    }
    Ok((exps, coeff, pos))
}

fn parse_number(src: &[char], pos: usize) -> Result<(Rational, usize)> {
    let (num, mut pos) = parse_integer(src, pos)?;
    let mut den = BigInt::one();
    if pos < src.len() && src[pos] == '/' {
        let (d, next) = parse_integer(src, pos + 1)?;
        if d == BigInt::from(0) {
            return Err(Error::Syntax("zero denominator".into()));
        }
        den = d;
        pos = next;
    }
    Ok((Rational::new(num, den), pos))
}

fn parse_integer(src: &[char], mut pos: usize) -> Result<(BigInt, usize)> {
    let start = pos;
    while pos < src.len() && src[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == start {
        return Err(Error::Syntax("expected a number".into()));
    }
    let s: String = src[start..pos].iter().collect();
    Ok((s.parse().expect("digits parse as BigInt"), pos))
}

fn parse_var_power(src: &[char], mut pos: usize) -> Result<(usize, u32, usize)> {
    let var = match src[pos] {
        'x' => {
            pos += 1;
            let start = pos;
            while pos < src.len() && src[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == start {
                0 // bare `x` is x0
            } else {
                let s: String = src[start..pos].iter().collect();
                let idx: usize = s
                    .parse()
                    .map_err(|_| Error::UnknownVariable(format!("x{s}")))?;
                if idx >= MAX_VARS {
                    return Err(Error::UnknownVariable(format!("x{s}")));
                }
                idx
            }
        }
        'y' => {
            pos += 1;
            1
        }
        'z' => {
            pos += 1;
            2
        }
        c => return Err(Error::UnknownVariable(c.to_string())),
    };
    let mut exp = 1u32;
    if pos < src.len() && src[pos] == '^' {
        let (e, next) = parse_integer(src, pos + 1)?;
        exp = u32::try_from(e).map_err(|_| Error::Syntax("exponent out of range".into()))?;
        pos = next;
    }
    Ok((var, exp, pos))
}
