//! Plain-text point files.
//!
//! ```text
//! # provenance: faure b=5 m=2 s=2
//! 5 2 2 2 25
//! 00 00
//! 10 10
//! ...
//! ```
//!
//! The header is `base m s precision count`, with `m` the smallest exponent
//! such that `base^m >= count`. Each following line holds one point: `s`
//! whitespace-separated coordinates. A b-adic coordinate is written as its
//! `precision` digits, most significant first, one character per digit for
//! `base <= 10` and comma-separated integers otherwise. Coordinates that are
//! not b-adic are written as a reduced fraction `num/den`.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::net::{digits_for_count, Coord, DigitVector, PointSet, Provenance};

const PROVENANCE_PREFIX: &str = "# provenance:";

fn format_coord(c: &Coord, base: u32, out: &mut String) {
    match c {
        Coord::Digits(d) => {
            if base <= 10 {
                for &x in d.digits() {
                    out.push(char::from(b'0' + x));
                }
            } else {
                let parts: Vec<String> = d.digits().iter().map(u8::to_string).collect();
                out.push_str(&parts.join(","));
            }
        }
        Coord::Rational { num, den } => {
            let _ = write!(out, "{num}/{den}");
        }
    }
}

pub fn to_string(points: &PointSet) -> String {
    let mut out = String::new();
    if let Some(p) = points.provenance() {
        let _ = writeln!(out, "{PROVENANCE_PREFIX} {p}");
    }
    let m = digits_for_count(points.len() as u64, points.base());
    let _ = writeln!(
        out,
        "{} {} {} {} {}",
        points.base(),
        m,
        points.dim(),
        points.precision(),
        points.len()
    );
    for x in points.points() {
        for (j, c) in x.iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            format_coord(c, points.base(), &mut out);
        }
        out.push('\n');
    }
    out
}

pub fn write_points(points: &PointSet, mut w: impl Write) -> Result<()> {
    w.write_all(to_string(points).as_bytes())?;
    Ok(())
}

pub fn save(points: &PointSet, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_string(points))?;
    Ok(())
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_provenance(text: &str, line: usize) -> Result<Provenance> {
    let mut parts = text.split_whitespace();
    let family = parts.next().ok_or_else(|| parse_err(line, "empty provenance"))?;
    let mut prov = Provenance::new(family);
    for kv in parts {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| parse_err(line, format!("provenance entry '{kv}' is not key=value")))?;
        prov = prov.with(k, v);
    }
    Ok(prov)
}

fn parse_coord(tok: &str, base: u32, precision: usize, line: usize) -> Result<Coord> {
    if let Some((n, d)) = tok.split_once('/') {
        let num = n.parse::<u128>().map_err(|e| parse_err(line, format!("bad numerator '{n}': {e}")))?;
        let den = d.parse::<u128>().map_err(|e| parse_err(line, format!("bad denominator '{d}': {e}")))?;
        return Coord::rational(num, den).map_err(|e| parse_err(line, e.to_string()));
    }
    let digits: Vec<u8> = if base <= 10 {
        tok.chars()
            .map(|ch| {
                ch.to_digit(10)
                    .filter(|&v| v < base)
                    .map(|v| v as u8)
                    .ok_or_else(|| parse_err(line, format!("'{ch}' is not a base-{base} digit")))
            })
            .collect::<Result<_>>()?
    } else {
        tok.split(',')
            .map(|p| {
                p.parse::<u32>()
                    .ok()
                    .filter(|&v| v < base)
                    .map(|v| v as u8)
                    .ok_or_else(|| parse_err(line, format!("'{p}' is not a base-{base} digit")))
            })
            .collect::<Result<_>>()?
    };
    if digits.len() != precision {
        return Err(parse_err(line, format!("expected {precision} digits, found {}", digits.len())));
    }
    Ok(Coord::Digits(DigitVector::new(base, digits).map_err(|e| parse_err(line, e.to_string()))?))
}

pub fn read_points(r: impl BufRead) -> Result<PointSet> {
    let mut provenance = None;
    let mut header: Option<(u32, usize, usize, usize, usize)> = None;
    let mut points = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let text = line.trim();
        if let Some(rest) = text.strip_prefix(PROVENANCE_PREFIX) {
            provenance = Some(parse_provenance(rest, lineno)?);
            continue;
        }
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let Some((base, _, s, precision, _)) = header else {
            let fields: Vec<usize> = text
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|e| parse_err(lineno, format!("bad header field '{t}': {e}"))))
                .collect::<Result<_>>()?;
            let [base, m, s, precision, count] = fields[..] else {
                return Err(parse_err(lineno, "header must be 'base m s precision count'"));
            };
            let base = u32::try_from(base).map_err(|_| parse_err(lineno, "base too large"))?;
            crate::field::PrimeField::new(base).map_err(|e| parse_err(lineno, e.to_string()))?;
            if digits_for_count(count as u64, base) != m {
                return Err(parse_err(lineno, format!("m={m} inconsistent with count {count} in base {base}")));
            }
            header = Some((base, m, s, precision, count));
            continue;
        };
        let coords: Vec<Coord> = text
            .split_whitespace()
            .map(|tok| parse_coord(tok, base, precision, lineno))
            .collect::<Result<_>>()?;
        if coords.len() != s {
            return Err(parse_err(lineno, format!("expected {s} coordinates, found {}", coords.len())));
        }
        points.push(coords);
    }
    let (base, _, s, precision, count) = header.ok_or_else(|| parse_err(0, "missing header"))?;
    if points.len() != count {
        return Err(parse_err(0, format!("header declares {count} points, file has {}", points.len())));
    }
    let mut set = PointSet::new(base, s, points)?;
    if set.precision() != precision && set.is_digital() && !set.is_empty() {
        return Err(parse_err(0, "precision mismatch"));
    }
    if let Some(p) = provenance {
        set = set.with_provenance(p);
    }
    Ok(set)
}

pub fn from_str(text: &str) -> Result<PointSet> {
    read_points(text.as_bytes())
}

pub fn load(path: impl AsRef<Path>) -> Result<PointSet> {
    let file = std::fs::File::open(path)?;
    read_points(std::io::BufReader::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vdc4() -> PointSet {
        let d = |v: Vec<u8>| DigitVector::new(2, v).unwrap();
        PointSet::from_digit_points(2, 1, vec![vec![d(vec![0, 0])], vec![d(vec![1, 0])], vec![d(vec![0, 1])], vec![d(vec![1, 1])]])
            .unwrap()
            .with_provenance(Provenance::new("van-der-corput").with("m", 2))
    }

    #[test]
    fn exact_text_layout() {
        let text = to_string(&vdc4());
        assert_eq!(text, "# provenance: van-der-corput m=2\n2 2 1 2 4\n00\n10\n01\n11\n");
        assert_eq!(from_str(&text).unwrap(), vdc4());
    }

    #[test]
    fn large_base_and_rationals() {
        let p = PointSet::new(
            11,
            2,
            vec![vec![Coord::Digits(DigitVector::new(11, vec![10, 3]).unwrap()), Coord::rational(2, 3).unwrap()]],
        )
        .unwrap();
        let text = to_string(&p);
        assert!(text.ends_with("10,3 2/3\n"), "{text}");
        assert_eq!(from_str(&text).unwrap(), p);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = from_str("2 2 1 2 4\n00\n1x\n01\n11\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(from_str("2 2 1 2 4\n00\n").is_err());
        assert!(from_str("4 2 1 2 4\n").is_err());
        assert!(from_str("2 2 1 2 3\n00 00\n").is_err());
    }
}
