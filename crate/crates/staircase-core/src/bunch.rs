//! Standard bunches: `r * n` independent minimal standard arrows.
//!
//! For each variable the `n` arrows out of the corner monomial fan out by
//! offset; iterated shadow promotion replaces every advanceable shadow with
//! an equal-size shadow of minimal standard arrows at strictly smaller
//! height until nothing advances. The union over offsets is a standard
//! sub-bunch of `n` arrows, and the union over variables a standard bunch of
//! `r * n` arrows: pairwise inequivalent, none null, none advanceable. The
//! bunch spans the cotangent space exactly when the staircase is smooth.
//!
//! Promotion images are not unique; this construction is made deterministic
//! by taking the breadth-first-closest drop position (ties broken by
//! lexicographically least head) and the lexicographically least minimal
//! generator below it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arrow::{shadow, Arrow, ClassEngine};
use crate::monomial::ExponentVector;
use crate::staircase::BasisSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BunchError {
    /// No position of the shadow's height admits a degree-decreasing step of
    /// the tail, so the shadow cannot be promoted.
    NotAdvanceable,
}

impl fmt::Display for BunchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotAdvanceable => write!(f, "shadow cannot be advanced"),
        }
    }
}

impl core::error::Error for BunchError {}

/// A standard bunch: one sub-bunch of `n` minimal standard arrows per
/// variable.
#[derive(Clone, Debug)]
pub struct StandardBunch {
    per_variable: Vec<Vec<Arrow>>,
}

impl StandardBunch {
    /// The sub-bunch of arrows standard for `var`, sorted by (tail, head).
    pub fn sub_bunch(&self, var: usize) -> &[Arrow] {
        &self.per_variable[var]
    }

    pub fn variables(&self) -> usize {
        self.per_variable.len()
    }

    pub fn arrows(&self) -> impl Iterator<Item = &Arrow> {
        self.per_variable.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.per_variable.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The arrows out of the corner monomial of `var`, partitioned by offset.
///
/// Every arrow with tail the corner monomial is minimal and standard for
/// `var`; each offset group is the `var`-shadow of its member with maximal
/// head degree, and the group sizes sum to `n`.
pub fn corner_fan(beta: &BasisSet, var: usize) -> BTreeMap<Vec<u32>, Vec<Arrow>> {
    let corner = ExponentVector::axis(beta.arity(), var, beta.widths()[var]);
    let mut fan: BTreeMap<Vec<u32>, Vec<Arrow>> = BTreeMap::new();
    for head in beta.members() {
        let arrow = Arrow::new_unchecked(corner.clone(), head.clone());
        debug_assert!(arrow.is_standard_for(var));
        fan.entry(head.without(var)).or_default().push(arrow);
    }
    for group in fan.values_mut() {
        group.sort_by_key(|a| core::cmp::Reverse(a.head().exponent(var)));
    }
    fan
}

/// Position search for promotion: the breadth-first-closest translate of the
/// arrow at its own height whose tail admits a degree-decreasing step in
/// `var`, with ties broken by lexicographically least head.
fn drop_position(beta: &BasisSet, arrow: &Arrow, var: usize) -> Option<ExponentVector> {
    let vector = arrow.vector();
    let height = arrow.height(var);
    let mut seen = BTreeSet::new();
    let mut frontier = alloc::vec![arrow.head().clone()];
    seen.insert(arrow.head().clone());
    while !frontier.is_empty() {
        frontier.sort();
        let mut hits = Vec::new();
        let mut next = Vec::new();
        for head in &frontier {
            let tail = tail_of(head, &vector);
            if tail.exponent(var) == height
                && tail.exponent(var) >= 1
                && !beta.contains(&tail.step(var, -1).unwrap())
            {
                hits.push(tail.clone());
            }
            for k in 0..beta.arity() {
                for delta in [-1, 1] {
                    let Some(next_head) = head.step(k, delta) else {
                        continue;
                    };
                    if !beta.contains(&next_head) || seen.contains(&next_head) {
                        continue;
                    }
                    let Some(next_tail) = tail.step(k, delta) else {
                        continue;
                    };
                    if beta.contains(&next_tail) {
                        continue;
                    }
                    seen.insert(next_head.clone());
                    next.push(next_head);
                }
            }
            if !hits.is_empty() {
                break;
            }
        }
        if let Some(first) = hits.into_iter().next() {
            return Some(first);
        }
        frontier = next;
    }
    None
}

fn tail_of(head: &ExponentVector, vector: &[i64]) -> ExponentVector {
    let exps: Vec<u32> = head
        .exponents()
        .iter()
        .zip(vector)
        .map(|(h, v)| (i64::from(*h) - v) as u32)
        .collect();
    ExponentVector::new(exps)
}

fn head_of(tail: &ExponentVector, vector: &[i64]) -> ExponentVector {
    let exps: Vec<u32> = tail
        .exponents()
        .iter()
        .zip(vector)
        .map(|(t, v)| (i64::from(*t) + v) as u32)
        .collect();
    ExponentVector::new(exps)
}

/// Replaces an advanceable shadow by an equal-size shadow of minimal arrows
/// standard for `var` with the same offset, the same head degrees, and
/// strictly smaller height.
///
/// The input must be the full `var`-shadow of its top arrow. Head degrees are
/// matched one for one, so the image never shrinks.
pub fn promote_shadow(
    beta: &BasisSet,
    shadow_arrows: &[Arrow],
    var: usize,
) -> Result<Vec<Arrow>, BunchError> {
    assert!(!shadow_arrows.is_empty(), "shadow must be nonempty");
    let top = shadow_arrows
        .iter()
        .max_by_key(|a| a.head().exponent(var))
        .unwrap();
    assert!(top.is_standard_for(var), "shadow arrows must be standard");
    let expected: BTreeSet<Arrow> = shadow(beta, top, var).into_iter().collect();
    let given: BTreeSet<Arrow> = shadow_arrows.iter().cloned().collect();
    assert_eq!(
        expected, given,
        "input must be the full shadow of its top arrow"
    );

    let drop_tail = drop_position(beta, top, var).ok_or(BunchError::NotAdvanceable)?;
    let below = drop_tail.step(var, -1).unwrap();
    let generator = beta
        .minimal_generators()
        .iter()
        .find(|g| g.divides(&below))
        .expect("a monomial in the ideal is divisible by a minimal generator")
        .clone();
    debug_assert!(generator.exponent(var) > 0);

    // Slide the tail down to the generator in the other variables, then
    // retail onto the generator itself; the head follows the vector.
    let landed_tail = generator.with_exponent(var, drop_tail.exponent(var));
    let landed_head = head_of(&landed_tail, &top.vector());
    debug_assert!(beta.contains(&landed_head));
    debug_assert!(generator.exponent(var) > landed_head.exponent(var));

    let image = shadow(beta, &Arrow::new_unchecked(generator, landed_head), var);
    assert_eq!(image.len(), shadow_arrows.len(), "promotion preserves size");
    debug_assert!(image
        .iter()
        .all(|a| a.height(var) < top.height(var) && a.is_standard_for(var)));
    Ok(image)
}

/// The standard sub-bunch for `var`: iterated shadow promotion over every
/// offset of the corner fan until no arrow advances.
///
/// Termination: each promotion strictly decreases the height of the promoted
/// arrows, and the height stays positive.
pub fn build_sub_bunch(beta: &BasisSet, var: usize) -> Vec<Arrow> {
    let mut engine = ClassEngine::new(beta);
    let mut out = Vec::with_capacity(beta.len());
    for (_, mut group) in corner_fan(beta, var) {
        loop {
            let advanceable: Vec<Arrow> = group
                .iter()
                .filter(|a| engine.can_advance(a, var).unwrap())
                .cloned()
                .collect();
            if advanceable.is_empty() {
                break;
            }
            let top = advanceable
                .iter()
                .max_by_key(|a| a.head().exponent(var))
                .unwrap()
                .clone();
            // The advanceable arrows are exactly the shadow of the top one.
            debug_assert!(advanceable.iter().all(|a| a.tail() == top.tail()));
            debug_assert_eq!(advanceable.len(), top.head().exponent(var) as usize + 1);
            let image =
                promote_shadow(beta, &advanceable, var).expect("advanceable shadows promote");
            let replaced: BTreeSet<Arrow> = advanceable.into_iter().collect();
            group.retain(|a| !replaced.contains(a));
            group.extend(image);
            group.sort_by_key(|a| core::cmp::Reverse(a.head().exponent(var)));
        }
        out.extend(group);
    }
    assert_eq!(out.len(), beta.len(), "sub-bunch must have n arrows");
    out.sort();
    out
}

/// Builds the full standard bunch, one sub-bunch per variable.
pub fn build_bunch(beta: &BasisSet) -> StandardBunch {
    StandardBunch {
        per_variable: (0..beta.arity())
            .map(|var| build_sub_bunch(beta, var))
            .collect(),
    }
}

/// Re-checks every defining property of a standard bunch from scratch and
/// returns the violations; an empty result certifies the bunch.
pub fn verify_bunch(beta: &BasisSet, bunch: &StandardBunch) -> Vec<String> {
    let mut violations = Vec::new();
    let n = beta.len();
    let r = beta.arity();
    if bunch.variables() != r {
        violations.push(format!(
            "bunch covers {} variables, staircase has {r}",
            bunch.variables()
        ));
        return violations;
    }
    let mut engine = ClassEngine::new(beta);
    let generators: BTreeSet<&ExponentVector> = beta.minimal_generators().iter().collect();
    let mut global_keys = BTreeSet::new();
    for var in 0..r {
        let sub = bunch.sub_bunch(var);
        if sub.len() != n {
            violations.push(format!(
                "sub-bunch {var} has {} arrows, want {n}",
                sub.len()
            ));
        }
        let mut keys = BTreeSet::new();
        let mut degree_offsets = BTreeSet::new();
        for arrow in sub {
            if !generators.contains(arrow.tail()) {
                violations.push(format!("{arrow} is not a minimal arrow"));
            }
            if !arrow.is_standard_for(var) {
                violations.push(format!("{arrow} is not standard for x{}", var + 1));
                continue;
            }
            let class = engine.class(arrow);
            if class.is_zero() {
                violations.push(format!("{arrow} has a null class"));
            }
            if engine.can_advance(arrow, var).unwrap() {
                violations.push(format!("{arrow} can be advanced"));
            }
            if !keys.insert(class.key()) {
                violations.push(format!("{arrow} repeats a translation class"));
            }
            global_keys.insert(class.key());
            let signature = (arrow.head().exponent(var), arrow.offset(var).unwrap());
            if !degree_offsets.insert(signature) {
                violations.push(format!(
                    "{arrow} repeats a (head degree, offset) pair in sub-bunch {var}"
                ));
            }
        }
        // Every unadvanceable arrow out of the corner monomial must appear.
        let corner = ExponentVector::axis(r, var, beta.widths()[var]);
        let present: BTreeSet<&Arrow> = sub.iter().collect();
        for head in beta.members() {
            let arrow = Arrow::new_unchecked(corner.clone(), head.clone());
            if !engine.can_advance(&arrow, var).unwrap() && !present.contains(&arrow) {
                violations.push(format!(
                    "unadvanceable corner arrow {arrow} missing from sub-bunch {var}"
                ));
            }
        }
    }
    if bunch.len() != r * n {
        violations.push(format!("bunch has {} arrows, want {}", bunch.len(), r * n));
    }
    if global_keys.len() != bunch.len() {
        violations.push(format!(
            "bunch arrows occupy {} classes, want {}",
            global_keys.len(),
            bunch.len()
        ));
    }
    violations
}
