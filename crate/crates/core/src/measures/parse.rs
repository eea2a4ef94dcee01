//! Measure literals.
//!
//! ```text
//! expr  := term ('*' term)*
//! term  := atom ('+' real)?
//! atom  := 'leb' | 'dirac:' real | 'cantor:' int ':' digits
//! digits:= int (',' int)* | int '..' int
//! ```

use super::expr::MeasureExpr;
use super::fractal::FractalMeasure;
use crate::error::{Error, Result};
use std::str::FromStr;

impl FromStr for MeasureExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_measure(s)
    }
}

pub fn parse_measure(literal: &str) -> Result<MeasureExpr> {
    let literal = literal.trim();
    if literal.is_empty() {
        return Err(Error::parse("expr", "empty measure literal"));
    }
    let mut terms = literal.split('*').map(parse_term);
    let first = terms.next().expect("split yields at least one item")?;
    terms.try_fold(first, |acc, t| Ok(acc.convolve(t?)))
}

fn parse_term(term: &str) -> Result<MeasureExpr> {
    let term = term.trim();
    if term.is_empty() {
        return Err(Error::parse("term", "empty operand around '*'"));
    }
    match shift_split(term) {
        Some((atom, shift)) => {
            let x0: f64 = shift
                .trim()
                .parse()
                .map_err(|_| Error::parse("term", format!("bad shift '{shift}'")))?;
            if !x0.is_finite() {
                return Err(Error::parse("term", "shift must be finite"));
            }
            Ok(parse_atom(atom)?.shifted(x0))
        }
        None => parse_atom(term),
    }
}

/// Position of the shift '+', skipping exponent signs such as `1e+3`.
fn shift_split(term: &str) -> Option<(&str, &str)> {
    let bytes = term.as_bytes();
    (1..bytes.len())
        .find(|&i| bytes[i] == b'+' && !matches!(bytes[i - 1], b'e' | b'E'))
        .map(|i| (&term[..i], &term[i + 1..]))
}

fn parse_atom(atom: &str) -> Result<MeasureExpr> {
    let atom = atom.trim();
    if atom == "leb" {
        return Ok(MeasureExpr::Lebesgue);
    }
    if let Some(rest) = atom.strip_prefix("dirac:") {
        let x: f64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::parse("dirac", format!("bad point '{rest}'")))?;
        if !x.is_finite() {
            return Err(Error::parse("dirac", "point must be finite"));
        }
        return Ok(MeasureExpr::Dirac(x));
    }
    if let Some(rest) = atom.strip_prefix("cantor:") {
        let (base, digits) = rest
            .split_once(':')
            .ok_or_else(|| Error::parse("cantor", "expected cantor:<b>:<digits>"))?;
        let base: u32 = base
            .trim()
            .parse()
            .map_err(|_| Error::parse("cantor", format!("bad base '{base}'")))?;
        let digits = parse_digits(digits)?;
        let mu = FractalMeasure::uniform(base, digits)
            .map_err(|e| Error::parse("cantor", e.to_string()))?;
        return Ok(mu.into());
    }
    Err(Error::parse(
        "atom",
        format!("unknown measure '{atom}' (expected leb, dirac:<x> or cantor:<b>:<digits>)"),
    ))
}

fn parse_digits(s: &str) -> Result<Vec<u32>> {
    let digit = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| Error::parse("digits", format!("bad digit '{t}'")))
    };
    if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi) = (digit(lo)?, digit(hi)?);
        if lo > hi {
            return Err(Error::parse("digits", format!("empty range {lo}..{hi}")));
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',').map(digit).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_production() {
        assert_eq!(parse_measure("leb").unwrap(), MeasureExpr::Lebesgue);
        assert_eq!(parse_measure("dirac:-0.3").unwrap(), MeasureExpr::Dirac(-0.3));
        let m = parse_measure("cantor:450:0..446").unwrap();
        match &m {
            MeasureExpr::Fractal(mu) => {
                assert_eq!(mu.base(), 450);
                assert_eq!(mu.len(), 447);
            }
            other => panic!("unexpected {other:?}"),
        }
        let c = parse_measure("cantor:3:0,2+0.25").unwrap();
        match c {
            MeasureExpr::Fractal(mu) => assert_eq!(mu.shift(), 0.25),
            other => panic!("unexpected {other:?}"),
        }
        let conv = parse_measure("cantor:3:0,2 * leb").unwrap();
        assert!(matches!(conv, MeasureExpr::Convolution(_, _)));
        assert_eq!(parse_measure("dirac:1e+0+1").unwrap(), MeasureExpr::Dirac(2.0));
    }

    #[test]
    fn errors_name_the_production() {
        let cases = [
            ("", "expr"),
            ("foo", "atom"),
            ("dirac:x", "dirac"),
            ("cantor:3", "cantor"),
            ("cantor:3:0,a", "digits"),
            ("cantor:3:0,5", "cantor"),
            ("leb*", "term"),
            ("leb+z", "term"),
        ];
        for (lit, production) in cases {
            match parse_measure(lit) {
                Err(Error::Parse { production: p, .. }) => assert_eq!(p, production, "{lit}"),
                other => panic!("{lit}: {other:?}"),
            }
        }
    }

    #[test]
    fn display_round_trips() {
        for lit in ["leb", "dirac:0.5", "cantor:3:0,2", "cantor:5:1,3+0.5*leb"] {
            let m = parse_measure(lit).unwrap();
            assert_eq!(parse_measure(&m.to_string()).unwrap(), m);
        }
    }
}
