//! Division-closed monomial sets (staircases) and their constructors.
//!
//! A [`BasisSet`] is a finite set of monomials closed under divisibility: the
//! complement of a monomial ideal of finite colength. The type caches the
//! derived data every analysis needs (widths, minimal generators, maximal
//! monomials) and provides the structural constructors: boxes, thickening,
//! truncation, box addition, two-box unions, plus exhaustive enumeration of
//! all staircases of a given size.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::monomial::ExponentVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StaircaseError {
    /// No monomials given, or the requested set would be empty.
    EmptyInput,
    ArityMismatch {
        expected: usize,
        found: usize,
    },
    /// A member is missing one of its divisors.
    NotDivisionClosed {
        member: ExponentVector,
        missing: ExponentVector,
    },
    /// Two supposed minimal generators are comparable under divisibility.
    NotAntichain {
        smaller: ExponentVector,
        larger: ExponentVector,
    },
    /// No pure power of the variable among the generators, so the complement
    /// is infinite.
    InfiniteColength {
        var: usize,
    },
    /// Truncation height exceeds every member of the staircase.
    NothingAtHeight {
        var: usize,
        height: u32,
    },
    /// Box-addition width is smaller than the width of the base staircase.
    WidthTooSmall {
        var: usize,
        required: u32,
        found: u32,
    },
    /// Box-addition width in the translation direction must equal the height.
    HeightMismatch {
        var: usize,
        height: u32,
        found: u32,
    },
    ZeroWidth {
        var: usize,
    },
}

impl fmt::Display for StaircaseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::EmptyInput => write!(f, "a basis set must contain at least one monomial"),
            Self::ArityMismatch { expected, found } => {
                write!(f, "expected {expected} exponents, found {found}")
            }
            Self::NotDivisionClosed { member, missing } => {
                write!(
                    f,
                    "not division-closed: {member} is present but its divisor {missing} is not"
                )
            }
            Self::NotAntichain { smaller, larger } => {
                write!(
                    f,
                    "generators are not an antichain: {smaller} divides {larger}"
                )
            }
            Self::InfiniteColength { var } => {
                write!(
                    f,
                    "no pure power of x{} among the generators; the complement is infinite",
                    var + 1
                )
            }
            Self::NothingAtHeight { var, height } => {
                write!(f, "no member has x{}-degree >= {height}", var + 1)
            }
            Self::WidthTooSmall {
                var,
                required,
                found,
            } => {
                write!(
                    f,
                    "box width {found} in x{} is below the staircase width {required}",
                    var + 1
                )
            }
            Self::HeightMismatch { var, height, found } => {
                write!(
                    f,
                    "box width {found} in x{} must equal the translation height {height}",
                    var + 1
                )
            }
            Self::ZeroWidth { var } => write!(f, "box width in x{} must be positive", var + 1),
        }
    }
}

impl core::error::Error for StaircaseError {}

/// Widths of an axis-aligned box of monomials.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoxSpec {
    widths: Vec<u32>,
}

impl BoxSpec {
    pub fn new(widths: Vec<u32>) -> Result<Self, StaircaseError> {
        if widths.is_empty() {
            return Err(StaircaseError::EmptyInput);
        }
        for (var, &w) in widths.iter().enumerate() {
            if w == 0 {
                return Err(StaircaseError::ZeroWidth { var });
            }
        }
        Ok(Self { widths })
    }

    pub fn arity(&self) -> usize {
        self.widths.len()
    }

    pub fn widths(&self) -> &[u32] {
        &self.widths
    }

    /// Number of monomials in the box.
    pub fn volume(&self) -> u128 {
        self.widths.iter().map(|&w| u128::from(w)).product()
    }
}

impl fmt::Display for BoxSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for w in &self.widths {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
            first = false;
        }
        Ok(())
    }
}

/// A division-closed set of monomials: the staircase of a monomial ideal of
/// finite colength.
///
/// Immutable after construction. Membership is a set lookup; widths, minimal
/// generators and maximal monomials are computed eagerly and cached, since
/// every analysis queries them repeatedly. Iteration order is lexicographic
/// everywhere.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisSet {
    r: usize,
    members: BTreeSet<ExponentVector>,
    widths: Vec<u32>,
    minimal_generators: Vec<ExponentVector>,
    maximal_monomials: Vec<ExponentVector>,
}

impl BasisSet {
    /// Builds a staircase from an explicit list of members, validating
    /// division-closure.
    pub fn from_monomials(members: Vec<ExponentVector>, r: usize) -> Result<Self, StaircaseError> {
        if members.is_empty() {
            return Err(StaircaseError::EmptyInput);
        }
        for m in &members {
            if m.arity() != r {
                return Err(StaircaseError::ArityMismatch {
                    expected: r,
                    found: m.arity(),
                });
            }
        }
        let set: BTreeSet<ExponentVector> = members.into_iter().collect();
        for m in &set {
            for var in 0..r {
                if let Some(div) = m.step(var, -1) {
                    if !set.contains(&div) {
                        return Err(StaircaseError::NotDivisionClosed {
                            member: m.clone(),
                            missing: div,
                        });
                    }
                }
            }
        }
        Ok(Self::finish(r, set))
    }

    /// Builds the staircase complementary to the ideal generated by `gens`.
    ///
    /// The generators must be a nonempty antichain and must include a pure
    /// power of every variable (otherwise the complement is infinite).
    pub fn from_minimal_generators(
        gens: Vec<ExponentVector>,
        r: usize,
    ) -> Result<Self, StaircaseError> {
        if gens.is_empty() {
            return Err(StaircaseError::EmptyInput);
        }
        for g in &gens {
            if g.arity() != r {
                return Err(StaircaseError::ArityMismatch {
                    expected: r,
                    found: g.arity(),
                });
            }
            if g.is_zero() {
                // The unit ideal: its staircase is empty.
                return Err(StaircaseError::EmptyInput);
            }
        }
        for a in &gens {
            for b in &gens {
                if a != b && a.divides(b) {
                    return Err(StaircaseError::NotAntichain {
                        smaller: a.clone(),
                        larger: b.clone(),
                    });
                }
            }
        }
        // A pure power of each variable bounds the complement.
        let mut bound = Vec::with_capacity(r);
        for var in 0..r {
            let w = gens
                .iter()
                .find(|g| g.exponent(var) > 0 && (0..r).all(|k| k == var || g.exponent(k) == 0))
                .map(|g| g.exponent(var));
            match w {
                Some(w) => bound.push(w),
                None => return Err(StaircaseError::InfiniteColength { var }),
            }
        }
        let mut members = BTreeSet::new();
        let mut cursor = alloc::vec![0u32; r];
        loop {
            let m = ExponentVector::from_slice(&cursor);
            if !gens.iter().any(|g| g.divides(&m)) {
                members.insert(m);
            }
            // Odometer over the bounding grid.
            let mut var = r;
            loop {
                if var == 0 {
                    break;
                }
                var -= 1;
                cursor[var] += 1;
                if cursor[var] < bound[var] {
                    break;
                }
                cursor[var] = 0;
            }
            if cursor.iter().all(|&c| c == 0) {
                break;
            }
        }
        debug_assert!(members.contains(&ExponentVector::zero(r)));
        Ok(Self::finish(r, members))
    }

    /// The box of all monomials componentwise below the given widths.
    pub fn from_box(spec: &BoxSpec) -> Self {
        let r = spec.arity();
        let mut members = BTreeSet::new();
        let mut cursor = alloc::vec![0u32; r];
        loop {
            members.insert(ExponentVector::from_slice(&cursor));
            let mut var = r;
            loop {
                if var == 0 {
                    break;
                }
                var -= 1;
                cursor[var] += 1;
                if cursor[var] < spec.widths()[var] {
                    break;
                }
                cursor[var] = 0;
            }
            if cursor.iter().all(|&c| c == 0) {
                break;
            }
        }
        Self::finish(r, members)
    }

    /// Union of two boxes with the same arity.
    pub fn two_box_union(a: &BoxSpec, b: &BoxSpec) -> Self {
        assert_eq!(a.arity(), b.arity(), "boxes must have the same arity");
        let mut members: BTreeSet<ExponentVector> = Self::from_box(a).members.into_iter().collect();
        members.extend(Self::from_box(b).members);
        Self::finish(a.arity(), members)
    }

    /// Extends the staircase by a new last variable of the given width, so
    /// each member is replicated at depths `0..width`.
    pub fn thicken(&self, width: u32) -> Self {
        assert!(width >= 1, "thickening width must be positive");
        let mut members = BTreeSet::new();
        for m in &self.members {
            let mut exps = m.exponents().to_vec();
            exps.push(0);
            for s in 0..width {
                exps[self.r] = s;
                members.insert(ExponentVector::from_slice(&exps));
            }
        }
        Self::finish(self.r + 1, members)
    }

    /// Keeps the members with `var`-degree at least `height` and divides them
    /// by the corresponding pure power.
    pub fn truncate(&self, var: usize, height: u32) -> Result<Self, StaircaseError> {
        assert!(var < self.r, "variable index out of range");
        assert!(height >= 1, "truncation height must be positive");
        let shift = ExponentVector::axis(self.r, var, height);
        let members: BTreeSet<ExponentVector> = self
            .members
            .iter()
            .filter_map(|m| m.checked_sub(&shift))
            .collect();
        if members.is_empty() {
            return Err(StaircaseError::NothingAtHeight { var, height });
        }
        Ok(Self::finish(self.r, members))
    }

    /// Translates the staircase `height` steps in direction `var` and fills
    /// the gap with the box of the given widths.
    ///
    /// `widths` must have the staircase arity, carry `height` in position
    /// `var`, and meet or exceed this staircase's width in every other
    /// variable. Truncating the result at (`var`, `height`) recovers `self`.
    pub fn add_box(&self, var: usize, height: u32, widths: &[u32]) -> Result<Self, StaircaseError> {
        assert!(var < self.r, "variable index out of range");
        if widths.len() != self.r {
            return Err(StaircaseError::ArityMismatch {
                expected: self.r,
                found: widths.len(),
            });
        }
        if widths[var] != height {
            return Err(StaircaseError::HeightMismatch {
                var,
                height,
                found: widths[var],
            });
        }
        for (k, &w) in widths.iter().enumerate() {
            if w == 0 {
                return Err(StaircaseError::ZeroWidth { var: k });
            }
            if k != var && w < self.widths[k] {
                return Err(StaircaseError::WidthTooSmall {
                    var: k,
                    required: self.widths[k],
                    found: w,
                });
            }
        }
        let spec = BoxSpec::new(widths.to_vec())?;
        let shift = ExponentVector::axis(self.r, var, height);
        let mut members: BTreeSet<ExponentVector> =
            self.members.iter().map(|m| m.plus(&shift)).collect();
        members.extend(Self::from_box(&spec).members);
        let out = Self::finish(self.r, members);
        debug_assert_eq!(out.truncate(var, height).as_ref(), Ok(self));
        Ok(out)
    }

    fn finish(r: usize, members: BTreeSet<ExponentVector>) -> Self {
        debug_assert!(!members.is_empty());
        let widths = compute_widths(r, &members);
        let minimal_generators = compute_minimal_generators(r, &members);
        let maximal_monomials = members
            .iter()
            .filter(|m| (0..r).all(|var| !members.contains(&m.step(var, 1).unwrap())))
            .cloned()
            .collect();
        Self {
            r,
            members,
            widths,
            minimal_generators,
            maximal_monomials,
        }
    }

    /// Number of variables.
    pub fn arity(&self) -> usize {
        self.r
    }

    /// Number of members (the colength of the ideal).
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, m: &ExponentVector) -> bool {
        m.arity() == self.r && self.members.contains(m)
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> impl Iterator<Item = &ExponentVector> {
        self.members.iter()
    }

    /// For each variable, the least power of it lying in the ideal.
    pub fn widths(&self) -> &[u32] {
        &self.widths
    }

    /// Minimal generators of the complementary ideal, in lexicographic order.
    pub fn minimal_generators(&self) -> &[ExponentVector] {
        &self.minimal_generators
    }

    /// Members maximal under divisibility, in lexicographic order.
    pub fn maximal_monomials(&self) -> &[ExponentVector] {
        &self.maximal_monomials
    }

    /// Whether the staircase is exactly the box of its widths.
    pub fn is_box(&self) -> bool {
        let volume: u128 = self.widths.iter().map(|&w| u128::from(w)).product();
        volume == self.members.len() as u128
    }

    /// The condition under which truncation at (`var`, `height`) preserves
    /// smoothness: every minimal generator below the cut that involves
    /// another variable must clear the truncation's width in that variable.
    pub fn truncation_smoothness_hypothesis(
        &self,
        var: usize,
        height: u32,
    ) -> Result<bool, StaircaseError> {
        let truncation = self.truncate(var, height)?;
        let tw = truncation.widths();
        for m in &self.minimal_generators {
            if m.exponent(var) >= height {
                continue;
            }
            for (k, &w) in tw.iter().enumerate() {
                if k != var && m.exponent(k) > 0 && m.exponent(k) < w {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for BasisSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasisSet(r={}, n={}, {{", self.r, self.len())?;
        let mut first = true;
        for m in &self.members {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{m:?}")?;
            first = false;
        }
        write!(f, "}})")
    }
}

fn compute_widths(r: usize, members: &BTreeSet<ExponentVector>) -> Vec<u32> {
    (0..r)
        .map(|var| {
            let mut w = 1u32;
            while members.contains(&ExponentVector::axis(r, var, w)) {
                w += 1;
            }
            w
        })
        .collect()
}

fn compute_minimal_generators(r: usize, members: &BTreeSet<ExponentVector>) -> Vec<ExponentVector> {
    // Every minimal generator is one step above a member.
    let mut gens = BTreeSet::new();
    for m in members {
        for var in 0..r {
            let candidate = m.step(var, 1).unwrap();
            if members.contains(&candidate) || gens.contains(&candidate) {
                continue;
            }
            let minimal = (0..r).all(|k| match candidate.step(k, -1) {
                Some(div) => members.contains(&div),
                None => true,
            });
            if minimal {
                gens.insert(candidate);
            }
        }
    }
    gens.into_iter().collect()
}

/// All staircases of `n` monomials in `r` variables, each exactly once, in a
/// deterministic order.
///
/// A staircase in `r` variables is a weakly shrinking chain of staircases in
/// `r - 1` variables (its layers in the last variable) with sizes summing to
/// `n`; the recursion enumerates partitions of `n` and then nested chains.
pub fn enumerate(r: usize, n: usize) -> impl Iterator<Item = BasisSet> {
    assert!(r >= 1 && n >= 1);
    enumerate_members(r, n).into_iter().map(move |members| {
        let set: BTreeSet<ExponentVector> = members.into_iter().collect();
        BasisSet::finish(r, set)
    })
}

fn enumerate_members(r: usize, n: usize) -> Vec<Vec<ExponentVector>> {
    if r == 1 {
        return alloc::vec![(0..n as u32)
            .map(|d| ExponentVector::new(alloc::vec![d]))
            .collect()];
    }
    let mut out = Vec::new();
    for sizes in partitions(n) {
        for top in enumerate_members(r - 1, sizes[0]) {
            let mut chains = alloc::vec![alloc::vec![top]];
            for &size in &sizes[1..] {
                let mut next = Vec::new();
                for chain in chains {
                    let last = chain.last().unwrap();
                    for sub in down_closed_subsets(last, size) {
                        let mut extended = chain.clone();
                        extended.push(sub);
                        next.push(extended);
                    }
                }
                chains = next;
            }
            for chain in chains {
                let mut members = Vec::with_capacity(n);
                for (depth, layer) in chain.iter().enumerate() {
                    for m in layer {
                        let mut exps = m.exponents().to_vec();
                        exps.push(depth as u32);
                        members.push(ExponentVector::new(exps));
                    }
                }
                out.push(members);
            }
        }
    }
    out
}

/// Weakly decreasing positive integer sequences summing to `n`, largest first.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, out: &mut Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        let mut first = n.min(max);
        while first >= 1 {
            prefix.push(first);
            rec(n - first, first, out, prefix);
            prefix.pop();
            first -= 1;
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut out, &mut Vec::new());
    out
}

/// Division-closed subsets of the given staircase layer with exactly `want`
/// members. The superset must itself be division-closed.
fn down_closed_subsets(sup: &[ExponentVector], want: usize) -> Vec<Vec<ExponentVector>> {
    let index: BTreeMap<&ExponentVector, usize> =
        sup.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut out = Vec::new();
    let mut chosen = alloc::vec![false; sup.len()];

    fn rec(
        sup: &[ExponentVector],
        index: &BTreeMap<&ExponentVector, usize>,
        chosen: &mut Vec<bool>,
        pos: usize,
        count: usize,
        want: usize,
        out: &mut Vec<Vec<ExponentVector>>,
    ) {
        if count == want {
            out.push(
                sup.iter()
                    .zip(chosen.iter())
                    .filter(|(_, &c)| c)
                    .map(|(m, _)| m.clone())
                    .collect(),
            );
            return;
        }
        if pos == sup.len() || count + (sup.len() - pos) < want {
            return;
        }
        let m = &sup[pos];
        let allowed = (0..m.arity()).all(|var| match m.step(var, -1) {
            Some(div) => chosen[index[&div]],
            None => true,
        });
        if allowed {
            chosen[pos] = true;
            rec(sup, index, chosen, pos + 1, count + 1, want, out);
            chosen[pos] = false;
        }
        rec(sup, index, chosen, pos + 1, count, want, out);
    }

    rec(sup, &index, &mut chosen, 0, 0, want, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(exps: &[u32]) -> ExponentVector {
        ExponentVector::from_slice(exps)
    }

    fn evs(list: &[&[u32]]) -> Vec<ExponentVector> {
        list.iter().map(|e| ev(e)).collect()
    }

    /// The four-member staircase {1, x1, x2, x2^2} in two variables.
    pub(crate) fn corner_staircase() -> BasisSet {
        BasisSet::from_monomials(evs(&[&[0, 0], &[1, 0], &[0, 1], &[0, 2]]), 2).unwrap()
    }

    #[test]
    fn from_monomials_accepts_closed_sets() {
        let b = corner_staircase();
        assert_eq!(b.len(), 4);
        assert_eq!(b.arity(), 2);

        let singleton = BasisSet::from_monomials(evs(&[&[0, 0, 0]]), 3).unwrap();
        assert_eq!(singleton.len(), 1);
    }

    #[test]
    fn from_monomials_rejects_open_sets() {
        let err = BasisSet::from_monomials(evs(&[&[1, 0]]), 2).unwrap_err();
        assert_eq!(
            err,
            StaircaseError::NotDivisionClosed {
                member: ev(&[1, 0]),
                missing: ev(&[0, 0]),
            }
        );
        assert_eq!(
            BasisSet::from_monomials(Vec::new(), 2).unwrap_err(),
            StaircaseError::EmptyInput
        );
    }

    #[test]
    fn generators_round_trip() {
        // Independent oracle: brute-force complement over the bounding grid.
        let gens = evs(&[&[2, 0], &[1, 1], &[0, 3]]);
        let mut expected = Vec::new();
        for d1 in 0..2u32 {
            for d2 in 0..3u32 {
                let m = ev(&[d1, d2]);
                if !gens.iter().any(|g| g.divides(&m)) {
                    expected.push(m);
                }
            }
        }
        expected.sort();
        let b = BasisSet::from_minimal_generators(gens, 2).unwrap();
        let got: Vec<ExponentVector> = b.members().cloned().collect();
        assert_eq!(got, expected);
        assert_eq!(b, corner_staircase());

        let point = BasisSet::from_minimal_generators(evs(&[&[1, 0], &[0, 1]]), 2).unwrap();
        assert_eq!(point.len(), 1);

        assert_eq!(
            BasisSet::from_minimal_generators(evs(&[&[2, 0]]), 2).unwrap_err(),
            StaircaseError::InfiniteColength { var: 1 }
        );
        assert_eq!(
            BasisSet::from_minimal_generators(evs(&[&[1, 0], &[1, 1]]), 2).unwrap_err(),
            StaircaseError::NotAntichain {
                smaller: ev(&[1, 0]),
                larger: ev(&[1, 1]),
            }
        );
    }

    #[test]
    fn minimal_generators_of_named_sets() {
        let four_points =
            BasisSet::from_monomials(evs(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 3)
                .unwrap();
        assert_eq!(
            four_points.minimal_generators(),
            evs(&[
                &[0, 0, 2],
                &[0, 1, 1],
                &[0, 2, 0],
                &[1, 0, 1],
                &[1, 1, 0],
                &[2, 0, 0],
            ])
            .as_slice()
        );

        let boxed = BasisSet::from_box(&BoxSpec::new(alloc::vec![2, 3, 2]).unwrap());
        assert_eq!(
            boxed.minimal_generators(),
            evs(&[&[0, 0, 2], &[0, 3, 0], &[2, 0, 0]]).as_slice()
        );

        let compound = BasisSet::from_monomials(
            evs(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]),
            3,
        )
        .unwrap();
        assert_eq!(
            compound.minimal_generators(),
            evs(&[&[0, 0, 2], &[0, 1, 1], &[0, 2, 0], &[1, 0, 1], &[2, 0, 0]]).as_slice()
        );
    }

    #[test]
    fn maximal_monomials_of_named_sets() {
        let four_points =
            BasisSet::from_monomials(evs(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 3)
                .unwrap();
        assert_eq!(
            four_points.maximal_monomials(),
            evs(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]).as_slice()
        );

        let point = BasisSet::from_monomials(evs(&[&[0, 0]]), 2).unwrap();
        assert_eq!(point.maximal_monomials(), evs(&[&[0, 0]]).as_slice());

        assert_eq!(
            corner_staircase().maximal_monomials(),
            evs(&[&[0, 2], &[1, 0]]).as_slice()
        );
    }

    #[test]
    fn widths_of_named_sets() {
        assert_eq!(corner_staircase().widths(), &[2, 3]);
        let boxed = BasisSet::from_box(&BoxSpec::new(alloc::vec![2, 2, 1, 1]).unwrap());
        assert_eq!(boxed.widths(), &[2, 2, 1, 1]);
        let four_points =
            BasisSet::from_monomials(evs(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 3)
                .unwrap();
        assert_eq!(four_points.widths(), &[2, 2, 2]);
    }

    #[test]
    fn boxes_have_full_volume() {
        let b = BasisSet::from_box(&BoxSpec::new(alloc::vec![2, 2]).unwrap());
        assert_eq!(b.len(), 4);
        assert!(b.contains(&ev(&[1, 1])));

        let line = BasisSet::from_box(&BoxSpec::new(alloc::vec![3]).unwrap());
        assert_eq!(
            line.members().cloned().collect::<Vec<_>>(),
            evs(&[&[0], &[1], &[2]])
        );

        let four = BasisSet::from_box(&BoxSpec::new(alloc::vec![2, 2, 1, 1]).unwrap());
        assert_eq!(four.len(), 4);
        assert!(four.is_box());
    }

    #[test]
    fn thicken_replicates_layers() {
        let base = BasisSet::from_monomials(evs(&[&[0]]), 1).unwrap();
        let t = base.thicken(3);
        assert_eq!(
            t.members().cloned().collect::<Vec<_>>(),
            evs(&[&[0, 0], &[0, 1], &[0, 2]])
        );

        let square = BasisSet::from_box(&BoxSpec::new(alloc::vec![2, 2]).unwrap());
        assert_eq!(
            square.thicken(2),
            BasisSet::from_box(&BoxSpec::new(alloc::vec![2, 2, 2]).unwrap())
        );

        let flat = corner_staircase().thicken(1);
        assert_eq!(flat.len(), 4);
        assert_eq!(flat.arity(), 3);
        assert!(flat.contains(&ev(&[0, 2, 0])));
    }

    #[test]
    fn truncate_divides_past_the_cut() {
        // Column heights 7,6,5,5,3,1 from the x2 axis outward; cutting at
        // x1-height 3 keeps the columns of heights 5,3,1.
        let tall = BasisSet::from_monomials(
            {
                let mut ms = Vec::new();
                let heights = [7u32, 6, 5, 5, 3, 1];
                for (d1, &h) in heights.iter().enumerate() {
                    for d2 in 0..h {
                        ms.push(ev(&[d1 as u32, d2]));
                    }
                }
                ms
            },
            2,
        )
        .unwrap();
        assert_eq!(tall.len(), 27);
        let cut = tall.truncate(0, 3).unwrap();
        let expected = BasisSet::from_monomials(
            evs(&[
                &[0, 0],
                &[0, 1],
                &[0, 2],
                &[0, 3],
                &[0, 4],
                &[1, 0],
                &[1, 1],
                &[1, 2],
                &[2, 0],
            ]),
            2,
        )
        .unwrap();
        assert_eq!(cut, expected);

        assert_eq!(
            corner_staircase().truncate(1, 2).unwrap(),
            BasisSet::from_monomials(evs(&[&[0, 0]]), 2).unwrap()
        );

        let rect = BasisSet::from_box(&BoxSpec::new(alloc::vec![2, 3]).unwrap());
        assert_eq!(
            rect.truncate(1, 1).unwrap(),
            BasisSet::from_box(&BoxSpec::new(alloc::vec![2, 2]).unwrap())
        );

        assert_eq!(
            corner_staircase().truncate(0, 2).unwrap_err(),
            StaircaseError::NothingAtHeight { var: 0, height: 2 }
        );
    }

    #[test]
    fn add_box_translates_and_fills() {
        let point = BasisSet::from_monomials(evs(&[&[0, 0, 0]]), 3).unwrap();
        let compound = point.add_box(2, 1, &[2, 2, 1]).unwrap();
        assert_eq!(
            compound.members().cloned().collect::<Vec<_>>(),
            evs(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0], &[1, 0, 0], &[1, 1, 0]])
        );

        let square = BasisSet::from_box(&BoxSpec::new(alloc::vec![2, 2]).unwrap());
        assert_eq!(
            square.add_box(0, 1, &[1, 2]).unwrap(),
            BasisSet::from_box(&BoxSpec::new(alloc::vec![3, 2]).unwrap())
        );

        assert_eq!(
            corner_staircase().add_box(0, 1, &[1, 2]).unwrap_err(),
            StaircaseError::WidthTooSmall {
                var: 1,
                required: 3,
                found: 2,
            }
        );
    }

    #[test]
    fn enumerate_small_counts() {
        assert_eq!(enumerate(1, 5).count(), 1);
        assert_eq!(enumerate(2, 4).count(), 5);
        assert_eq!(enumerate(3, 4).count(), 13);
    }

    #[test]
    fn enumerate_yields_distinct_valid_sets() {
        let all: Vec<BasisSet> = enumerate(3, 5).collect();
        for b in &all {
            assert_eq!(b.len(), 5);
            let revalidated = BasisSet::from_monomials(b.members().cloned().collect(), 3).unwrap();
            assert_eq!(&revalidated, b);
        }
        let distinct: BTreeSet<Vec<ExponentVector>> =
            all.iter().map(|b| b.members().cloned().collect()).collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn truncation_hypothesis_detects_narrow_generators() {
        // Box(2,2,2) with one extra monomial on the x3 axis: the generator
        // x2*x3^2 sits below the cut at (x1, 1) but is narrower than the
        // truncation in x2.
        let mut ms: Vec<ExponentVector> =
            BasisSet::from_box(&BoxSpec::new(alloc::vec![2, 2, 2]).unwrap())
                .members()
                .cloned()
                .collect();
        ms.push(ev(&[0, 0, 2]));
        let b = BasisSet::from_monomials(ms, 3).unwrap();
        assert!(!b.truncation_smoothness_hypothesis(0, 1).unwrap());

        // Boxes only have corner generators, so the condition is vacuous.
        let rect = BasisSet::from_box(&BoxSpec::new(alloc::vec![3, 2]).unwrap());
        assert!(rect.truncation_smoothness_hypothesis(0, 1).unwrap());
        assert!(rect.truncation_smoothness_hypothesis(0, 2).unwrap());

        // Box-addition outputs satisfy the condition at their own cut.
        let base = corner_staircase();
        let grown = base.add_box(1, 2, &[2, 2]).unwrap();
        assert!(grown.truncation_smoothness_hypothesis(1, 2).unwrap());
    }

    #[test]
    fn add_box_truncate_round_trip() {
        for b in enumerate(2, 5) {
            let grown = b.add_box(0, 2, &[2, 5]).unwrap();
            assert_eq!(grown.truncate(0, 2).unwrap(), b);
        }
    }
}
