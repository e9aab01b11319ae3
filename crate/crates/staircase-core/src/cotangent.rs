//! Cotangent-space dimension and the smoothness verdict.
//!
//! The cotangent space at the Hilbert-scheme point of a staircase is spanned
//! by the arrows whose tails are minimal generators; distinct non-null
//! translation classes are linearly independent and null classes vanish, so
//! the dimension is the number of distinct non-null classes met by minimal
//! arrows. The point is smooth exactly when that dimension equals `r * n`.
//!
//! The computation here is purely combinatorial; the independent linear-
//! algebra route lives in [`crate::oracle`] so the two can cross-check each
//! other.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::arrow::{Arrow, ArrowClass, ClassEngine};
use crate::monomial::ExponentVector;
use crate::staircase::BasisSet;

/// All `g * n` arrows with a minimal-generator tail and a basis-monomial
/// head, ordered by (tail, head).
pub fn minimal_arrows(beta: &BasisSet) -> Vec<Arrow> {
    let mut out = Vec::with_capacity(beta.minimal_generators().len() * beta.len());
    for gen in beta.minimal_generators() {
        for head in beta.members() {
            out.push(
                Arrow::new(beta, gen.clone(), head.clone())
                    .expect("minimal generators lie outside the staircase"),
            );
        }
    }
    out
}

fn nonzero_classes(beta: &BasisSet) -> BTreeMap<(Vec<i64>, ExponentVector), ArrowClass> {
    let mut engine = ClassEngine::new(beta);
    let mut classes = BTreeMap::new();
    for arrow in minimal_arrows(beta) {
        let class = engine.class(&arrow);
        if !class.is_zero() {
            classes
                .entry(class.key())
                .or_insert_with(|| (*class).clone());
        }
    }
    classes
}

/// Dimension of the cotangent space: the number of distinct non-null
/// translation classes among minimal arrows.
pub fn cotangent_dimension(beta: &BasisSet) -> usize {
    nonzero_classes(beta).len()
}

/// Whether the Hilbert-scheme point of the staircase is nonsingular, i.e.
/// the cotangent dimension attains its lower bound `r * n`.
pub fn is_smooth(beta: &BasisSet) -> bool {
    cotangent_dimension(beta) == beta.arity() * beta.len()
}

/// Aggregated cotangent data for one staircase.
#[derive(Clone, Debug)]
pub struct CotangentReport {
    pub r: usize,
    pub n: usize,
    /// Dimension of the cotangent space.
    pub dim: usize,
    /// The lower bound `r * n`; equality means smooth.
    pub rn: usize,
    pub smooth: bool,
    /// The distinct non-null classes met by minimal arrows, sorted by
    /// (vector, canonical head).
    pub classes: Vec<ArrowClass>,
    /// Minimal arrows whose class is null.
    pub zero_count: usize,
}

pub fn class_report(beta: &BasisSet) -> CotangentReport {
    let mut engine = ClassEngine::new(beta);
    let mut classes = BTreeMap::new();
    let mut zero_count = 0;
    for arrow in minimal_arrows(beta) {
        let class = engine.class(&arrow);
        if class.is_zero() {
            zero_count += 1;
        } else {
            classes
                .entry(class.key())
                .or_insert_with(|| (*class).clone());
        }
    }
    let dim = classes.len();
    let rn = beta.arity() * beta.len();
    debug_assert!(dim >= rn, "dimension sits above the rn lower bound");
    CotangentReport {
        r: beta.arity(),
        n: beta.len(),
        dim,
        rn,
        smooth: dim == rn,
        classes: classes.into_values().collect(),
        zero_count,
    }
}
