//! Value parsers for the flag grammar.

use std::fmt;
use std::str::FromStr;

/// `INT`, inclusive `A..B`, or a comma-separated list of either.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntList(pub Vec<i64>);

impl FromStr for IntList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if let Some((a, b)) = part.split_once("..") {
                let a: i64 = a.trim().parse().map_err(|_| format!("bad range start in {part:?}"))?;
                let b: i64 = b.trim().parse().map_err(|_| format!("bad range end in {part:?}"))?;
                if b < a {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(a..=b);
            } else {
                out.push(part.parse().map_err(|_| format!("{part:?} is not an integer"))?);
            }
        }
        Ok(IntList(out))
    }
}

impl IntList {
    pub fn positive(&self, flag: &str) -> Result<Vec<usize>, String> {
        self.0
            .iter()
            .map(|&v| usize::try_from(v).ok().filter(|&v| v > 0).ok_or(format!("{flag} values must be positive, got {v}")))
            .collect()
    }

    pub fn non_negative(&self, flag: &str) -> Result<Vec<usize>, String> {
        self.0
            .iter()
            .map(|&v| usize::try_from(v).map_err(|_| format!("{flag} values must be non-negative, got {v}")))
            .collect()
    }
}

/// Comma-separated reals.
#[derive(Clone, Debug, PartialEq)]
pub struct RealList(pub Vec<f64>);

impl FromStr for RealList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| format!("{p:?} is not a number")))
            .collect::<Result<_, _>>()
            .map(RealList)
    }
}

/// `WxH`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxSize {
    pub width: usize,
    pub height: usize,
}

impl FromStr for BoxSize {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (w, h) = s.split_once('x').ok_or(format!("{s:?} is not of the form WxH"))?;
        let parse = |t: &str| t.parse::<usize>().ok().filter(|&v| v > 0).ok_or(format!("bad box dimension {t:?}"));
        Ok(BoxSize {
            width: parse(w)?,
            height: parse(h)?,
        })
    }
}

impl fmt::Display for BoxSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.width, self.height)
    }
}
