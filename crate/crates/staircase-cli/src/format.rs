//! The staircase file format and the sparse-system dump.
//!
//! Staircase files are UTF-8 text, written byte for byte as:
//!
//! ```text
//! staircase v1
//! r=<int> n=<int>
//! <e1> <e2> ... <er>
//! ```
//!
//! with one member per line, space-separated decimal exponents, sorted
//! lexicographically, and a trailing newline. The parser rejects unsorted,
//! duplicated, or non-division-closed input with a line-numbered error.
//!
//! The deformation system dumps as sparse triplets:
//!
//! ```text
//! homsystem v1
//! unknowns=<int> rows=<int>
//! <row> <col> <value>
//! ```
//!
//! with zero-based row-major triplets and values in {-1, +1}.

use std::fmt;

use staircase_core::monomial::ExponentVector;
use staircase_core::oracle::HomSystem;
use staircase_core::staircase::{BasisSet, StaircaseError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

pub fn write_staircase(beta: &BasisSet) -> String {
    let mut out = String::from("staircase v1\n");
    out.push_str(&format!("r={} n={}\n", beta.arity(), beta.len()));
    for m in beta.members() {
        out.push_str(&format!("{m}\n"));
    }
    out
}

pub fn parse_staircase(text: &str) -> Result<BasisSet, ParseError> {
    let lines: Vec<&str> = text.lines().collect();
    if lines.first() != Some(&"staircase v1") {
        return Err(ParseError::new(1, "expected header `staircase v1`"));
    }
    let Some(sizes) = lines.get(1) else {
        return Err(ParseError::new(2, "expected `r=<int> n=<int>`"));
    };
    let (r, n) =
        parse_sizes(sizes).ok_or_else(|| ParseError::new(2, "expected `r=<int> n=<int>`"))?;
    if r == 0 || n == 0 {
        return Err(ParseError::new(2, "r and n must be positive"));
    }
    if lines.len() != 2 + n {
        return Err(ParseError::new(
            lines.len().min(2 + n) + 1,
            format!("expected exactly {n} member lines"),
        ));
    }
    let mut members = Vec::with_capacity(n);
    for (i, line) in lines[2..].iter().enumerate() {
        let line_no = i + 3;
        let mut exps = Vec::with_capacity(r);
        for part in line.split(' ') {
            let e: u32 = part
                .parse()
                .map_err(|_| ParseError::new(line_no, format!("bad exponent `{part}`")))?;
            exps.push(e);
        }
        if exps.len() != r {
            return Err(ParseError::new(
                line_no,
                format!("expected {r} exponents, found {}", exps.len()),
            ));
        }
        let m = ExponentVector::new(exps);
        if let Some(prev) = members.last() {
            if *prev >= m {
                return Err(ParseError::new(
                    line_no,
                    "members must be strictly increasing in lexicographic order",
                ));
            }
        }
        members.push(m);
    }
    BasisSet::from_monomials(members.clone(), r).map_err(|e| match e {
        StaircaseError::NotDivisionClosed { member, missing } => {
            let line_no = members.iter().position(|m| *m == member).unwrap() + 3;
            ParseError::new(
                line_no,
                format!("set is not division-closed: missing divisor {missing} of {member}"),
            )
        }
        other => ParseError::new(2, other.to_string()),
    })
}

fn parse_sizes(line: &str) -> Option<(usize, usize)> {
    let (r_part, n_part) = line.split_once(' ')?;
    let r = r_part.strip_prefix("r=")?.parse().ok()?;
    let n = n_part.strip_prefix("n=")?.parse().ok()?;
    Some((r, n))
}

pub fn write_system(system: &HomSystem) -> String {
    let mut out = String::from("homsystem v1\n");
    out.push_str(&format!(
        "unknowns={} rows={}\n",
        system.unknown_count(),
        system.row_count()
    ));
    for (row, col, value) in system.triplets() {
        out.push_str(&format!("{row} {col} {value}\n"));
    }
    out
}
