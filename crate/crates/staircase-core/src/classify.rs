//! Structural smoothness certificates.
//!
//! Two recognizers complement the dimension count: rigid non-standard arrows
//! (a minimal-generator tail and a maximal-monomial head pin an arrow in
//! place, so a non-standard one certifies a singular point), and compound
//! boxes (staircases built from a box by repeatedly translating and filling
//! with a box), which are always smooth. In two variables every staircase is
//! a compound box; in three, compound boxes are exactly the smooth
//! staircases. In four or more variables smooth non-compound staircases
//! exist, so there the recognizer reports structure only, never a smoothness
//! proxy.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::arrow::{Arrow, ClassEngine, Standardness};
use crate::cotangent;
use crate::monomial::ExponentVector;
use crate::staircase::{BasisSet, BoxSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassifyError {
    /// The two-variable generator table is defined for three variables only.
    WrongArity { expected: usize, found: usize },
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WrongArity { expected, found } => {
                write!(
                    f,
                    "operation needs {expected} variables, staircase has {found}"
                )
            }
        }
    }
}

impl core::error::Error for ClassifyError {}

/// One box-addition step of a compound-box decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxAddition {
    pub var: usize,
    pub height: u32,
    /// Full-arity widths of the added box; entry `var` equals `height`.
    pub widths: Vec<u32>,
}

/// A replayable construction of a staircase from a base box by box
/// additions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub base: BoxSpec,
    pub steps: Vec<BoxAddition>,
}

impl Decomposition {
    /// Rebuilds the staircase the decomposition describes.
    pub fn replay(&self) -> BasisSet {
        let mut set = BasisSet::from_box(&self.base);
        for step in &self.steps {
            set = set
                .add_box(step.var, step.height, &step.widths)
                .expect("decomposition steps replay");
        }
        set
    }
}

/// All non-standard arrows with a minimal-generator tail and a maximal
/// basis-monomial head. Such arrows cannot be translated at all, so each one
/// certifies that the staircase is singular.
pub fn rigid_nonstandard_witnesses(beta: &BasisSet) -> Vec<Arrow> {
    let mut out = Vec::new();
    for tail in beta.minimal_generators() {
        for head in beta.maximal_monomials() {
            let arrow = Arrow::new_unchecked(tail.clone(), head.clone());
            if arrow.standardness() == Standardness::NonStandard {
                debug_assert_eq!(
                    crate::arrow::translation_class(beta, &arrow).heads().len(),
                    1
                );
                out.push(arrow);
            }
        }
    }
    out
}

/// For a staircase in three variables, the minimal generators involving only
/// the two indicated variables, for each of the pairs (0,1), (0,2), (1,2).
/// Every table entry contains both corner powers.
pub fn two_variable_generators(
    beta: &BasisSet,
) -> Result<BTreeMap<(usize, usize), Vec<ExponentVector>>, ClassifyError> {
    if beta.arity() != 3 {
        return Err(ClassifyError::WrongArity {
            expected: 3,
            found: beta.arity(),
        });
    }
    let mut out = BTreeMap::new();
    for pair in [(0usize, 1usize), (0, 2), (1, 2)] {
        let gens: Vec<ExponentVector> = beta
            .minimal_generators()
            .iter()
            .filter(|g| (0..3).all(|k| k == pair.0 || k == pair.1 || g.exponent(k) == 0))
            .cloned()
            .collect();
        debug_assert!(gens.len() >= 2);
        out.insert(pair, gens);
    }
    Ok(out)
}

/// Decides whether the staircase is a compound box, returning a replayable
/// decomposition when it is.
///
/// A staircase peels at (`var`, `h`) when its sub-height slab is a box whose
/// widths dominate the truncation's widths; candidate heights are the
/// positive `var`-degrees of the minimal generators, searched descending.
/// The search backtracks over all peelings and memoizes failures.
pub fn compound_box_decomposition(beta: &BasisSet) -> Option<Decomposition> {
    let mut dead_ends: BTreeSet<Vec<ExponentVector>> = BTreeSet::new();
    search(beta, &mut dead_ends)
}

fn search(beta: &BasisSet, dead_ends: &mut BTreeSet<Vec<ExponentVector>>) -> Option<Decomposition> {
    if beta.is_box() {
        return Some(Decomposition {
            base: BoxSpec::new(beta.widths().to_vec()).expect("widths are positive"),
            steps: Vec::new(),
        });
    }
    let key: Vec<ExponentVector> = beta.members().cloned().collect();
    if dead_ends.contains(&key) {
        return None;
    }
    for var in 0..beta.arity() {
        let mut heights: Vec<u32> = beta
            .minimal_generators()
            .iter()
            .map(|g| g.exponent(var))
            .filter(|&h| h > 0 && h < beta.widths()[var])
            .collect();
        heights.sort_unstable();
        heights.dedup();
        heights.reverse();
        for h in heights {
            let Some(slab_widths) = slab_box_widths(beta, var, h) else {
                continue;
            };
            let truncation = beta.truncate(var, h).expect("members exist above the cut");
            if (0..beta.arity()).any(|k| k != var && slab_widths[k] < truncation.widths()[k]) {
                continue;
            }
            debug_assert_eq!(truncation.add_box(var, h, &slab_widths).as_ref(), Ok(beta));
            if let Some(mut inner) = search(&truncation, dead_ends) {
                inner.steps.push(BoxAddition {
                    var,
                    height: h,
                    widths: slab_widths,
                });
                return Some(inner);
            }
        }
    }
    dead_ends.insert(key);
    None
}

/// Widths of the sub-height slab `{m : m_var < h}` when that slab is a box,
/// with `h` in position `var`.
fn slab_box_widths(beta: &BasisSet, var: usize, h: u32) -> Option<Vec<u32>> {
    let mut widths = alloc::vec![0u32; beta.arity()];
    let mut count: u128 = 0;
    for m in beta.members() {
        if m.exponent(var) >= h {
            continue;
        }
        count += 1;
        for (w, &e) in widths.iter_mut().zip(m.exponents()) {
            *w = (*w).max(e + 1);
        }
    }
    debug_assert_eq!(widths[var], h);
    let volume: u128 = widths.iter().map(|&w| u128::from(w)).product();
    (volume == count).then_some(widths)
}

/// Structural facts about one staircase.
#[derive(Clone, Debug)]
pub struct StructureReport {
    pub smooth: bool,
    pub dim: usize,
    pub rigid_nonstandard_witnesses: Vec<Arrow>,
    pub is_box: bool,
    pub is_compound_box: bool,
    pub decomposition: Option<Decomposition>,
    /// Present only in three variables.
    pub two_variable_generators: Option<BTreeMap<(usize, usize), Vec<ExponentVector>>>,
}

/// Runs every recognizer and cross-checks the three-variable
/// characterizations: there, smooth, compound box, and "all non-standard
/// minimal arrows null" must agree.
pub fn classify(beta: &BasisSet) -> StructureReport {
    let dim = cotangent::cotangent_dimension(beta);
    let smooth = dim == beta.arity() * beta.len();
    let witnesses = rigid_nonstandard_witnesses(beta);
    if !witnesses.is_empty() {
        assert!(
            !smooth,
            "a rigid non-standard arrow forces a singular point"
        );
    }
    let decomposition = compound_box_decomposition(beta);
    let is_compound_box = decomposition.is_some();
    let two_variable_generators = if beta.arity() == 3 {
        Some(two_variable_generators(beta).unwrap())
    } else {
        None
    };
    if beta.arity() == 3 {
        assert_eq!(smooth, is_compound_box);
        let mut engine = ClassEngine::new(beta);
        let all_nonstandard_null = cotangent::minimal_arrows(beta)
            .iter()
            .filter(|a| a.standardness() == Standardness::NonStandard)
            .all(|a| engine.is_zero(a));
        assert_eq!(smooth, all_nonstandard_null);
    }
    StructureReport {
        smooth,
        dim,
        rigid_nonstandard_witnesses: witnesses,
        is_box: beta.is_box(),
        is_compound_box,
        decomposition,
        two_variable_generators,
    }
}
