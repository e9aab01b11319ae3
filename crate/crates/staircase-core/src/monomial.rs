//! Exponent-vector arithmetic.
//!
//! Monomials are identified with their exponent tuples, so a monomial in `r`
//! variables is a vector of `r` non-negative integers. Divisibility is the
//! componentwise order and the least common multiple is the componentwise
//! maximum. The canonical ordering used everywhere a deterministic choice is
//! needed is the lexicographic order on the tuple.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// The exponent tuple of a monomial in `r` variables.
///
/// Components are machine integers; every instance at desk scale has tiny
/// exponents, so overflow checks are assertions rather than arithmetic modes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector {
    exps: Vec<u32>,
}

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn from_slice(exps: &[u32]) -> Self {
        Self {
            exps: exps.to_vec(),
        }
    }

    /// The monomial 1 in `r` variables.
    pub fn zero(r: usize) -> Self {
        Self {
            exps: alloc::vec![0; r],
        }
    }

    /// `e * x_var^e`-style unit multiple: `e` in position `var`, zero elsewhere.
    pub fn axis(r: usize, var: usize, e: u32) -> Self {
        assert!(var < r, "variable index {var} out of range for arity {r}");
        let mut exps = alloc::vec![0; r];
        exps[var] = e;
        Self { exps }
    }

    /// Number of variables.
    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn is_zero(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Componentwise `<=`: whether `self` divides `other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.assert_same_arity(other);
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Self) -> Self {
        self.assert_same_arity(other);
        Self {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// One discrete step in variable direction `var`.
    ///
    /// `delta` must be `+1` or `-1`. Returns `None` when the step would leave
    /// the first orthant; that is an expected outcome, not a failure.
    pub fn step(&self, var: usize, delta: i32) -> Option<Self> {
        assert!(var < self.arity(), "variable index {var} out of range");
        assert!(delta == 1 || delta == -1, "step must be one unit");
        let mut exps = self.exps.clone();
        if delta == 1 {
            exps[var] = exps[var].checked_add(1).expect("exponent overflow");
        } else if exps[var] == 0 {
            return None;
        } else {
            exps[var] -= 1;
        }
        Some(Self { exps })
    }

    /// Componentwise sum.
    pub fn plus(&self, other: &Self) -> Self {
        self.assert_same_arity(other);
        Self {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        }
    }

    /// Componentwise difference, `None` when any component would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.assert_same_arity(other);
        let mut exps = Vec::with_capacity(self.arity());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Self { exps })
    }

    /// Signed difference `self - other`, used for arrow vectors.
    pub fn minus(&self, other: &Self) -> Vec<i64> {
        self.assert_same_arity(other);
        self.exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| i64::from(*a) - i64::from(*b))
            .collect()
    }

    /// Copy of `self` with component `var` replaced by `e`.
    pub fn with_exponent(&self, var: usize, e: u32) -> Self {
        let mut exps = self.exps.clone();
        exps[var] = e;
        Self { exps }
    }

    /// The tuple with component `var` deleted.
    pub fn without(&self, var: usize) -> Vec<u32> {
        let mut exps = self.exps.clone();
        exps.remove(var);
        exps
    }

    fn assert_same_arity(&self, other: &Self) {
        assert_eq!(
            self.arity(),
            other.arity(),
            "exponent vectors have different arities"
        );
    }
}

impl fmt::Display for ExponentVector {
    /// Space-separated decimal components, as used by the staircase file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.exps {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", {
            let parts: Vec<String> = self.exps.iter().map(|e| alloc::format!("{e}")).collect();
            parts.join(",")
        })
    }
}
