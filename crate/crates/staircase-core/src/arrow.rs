//! Arrows between lattice points and their translation-equivalence classes.
//!
//! An arrow points from a monomial outside the staircase (its tail) to a
//! member (its head); it stands for one coordinate function of the local ring
//! at the corresponding Hilbert-scheme point. Two arrows are equivalent when
//! one can be moved to the other by unit steps that keep the head inside the
//! staircase and the tail outside, and an arrow is null when it can be moved
//! to a position where one more degree-decreasing step pushes the head out of
//! the first orthant while the tail stays a monomial outside the staircase.
//!
//! Translation preserves the vector head − tail, so a class is a connected
//! component of the finite graph whose nodes are the legal head positions for
//! a fixed vector: breadth-first search over at most `n` nodes decides
//! everything and never touches the infinite tail space.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::fmt;

use crate::monomial::ExponentVector;
use crate::staircase::BasisSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrowError {
    /// The tail must lie outside the staircase.
    TailInBeta(ExponentVector),
    /// The head must be a member of the staircase.
    HeadNotInBeta(ExponentVector),
    ArityMismatch {
        expected: usize,
        found: usize,
    },
    /// The arrow is not standard for the requested variable.
    NotStandardFor {
        var: usize,
    },
}

impl fmt::Display for ArrowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TailInBeta(t) => write!(f, "tail {t} lies inside the basis set"),
            Self::HeadNotInBeta(h) => write!(f, "head {h} is not a basis monomial"),
            Self::ArityMismatch { expected, found } => {
                write!(f, "expected {expected} exponents, found {found}")
            }
            Self::NotStandardFor { var } => {
                write!(f, "arrow is not standard for x{}", var + 1)
            }
        }
    }
}

impl core::error::Error for ArrowError {}

/// Whether an arrow's vector has exactly one negative component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Standardness {
    /// Exactly one negative component, at this variable index.
    Standard(usize),
    NonStandard,
}

/// An arrow from a monomial in the ideal (tail) to a basis monomial (head).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    tail: ExponentVector,
    head: ExponentVector,
}

impl Arrow {
    /// Validates head and tail against the staircase.
    pub fn new(
        beta: &BasisSet,
        tail: ExponentVector,
        head: ExponentVector,
    ) -> Result<Self, ArrowError> {
        for v in [&tail, &head] {
            if v.arity() != beta.arity() {
                return Err(ArrowError::ArityMismatch {
                    expected: beta.arity(),
                    found: v.arity(),
                });
            }
        }
        if beta.contains(&tail) {
            return Err(ArrowError::TailInBeta(tail));
        }
        if !beta.contains(&head) {
            return Err(ArrowError::HeadNotInBeta(head));
        }
        Ok(Self { tail, head })
    }

    pub(crate) fn new_unchecked(tail: ExponentVector, head: ExponentVector) -> Self {
        Self { tail, head }
    }

    pub fn tail(&self) -> &ExponentVector {
        &self.tail
    }

    pub fn head(&self) -> &ExponentVector {
        &self.head
    }

    /// The translation-invariant vector head − tail. It always has at least
    /// one negative component, else the tail would divide the head.
    pub fn vector(&self) -> Vec<i64> {
        self.head.minus(&self.tail)
    }

    pub fn standardness(&self) -> Standardness {
        let mut negative = None;
        for (var, c) in self.vector().iter().enumerate() {
            if *c < 0 {
                if negative.is_some() {
                    return Standardness::NonStandard;
                }
                negative = Some(var);
            }
        }
        match negative {
            Some(var) => Standardness::Standard(var),
            None => unreachable!("arrow vector must have a negative component"),
        }
    }

    pub fn is_standard_for(&self, var: usize) -> bool {
        self.standardness() == Standardness::Standard(var)
    }

    /// The tail's degree in `var`.
    pub fn height(&self, var: usize) -> u32 {
        self.tail.exponent(var)
    }

    /// The vector with its `var` component deleted; defined for arrows
    /// standard for `var`, where all remaining entries are non-negative.
    pub fn offset(&self, var: usize) -> Result<Vec<u32>, ArrowError> {
        if !self.is_standard_for(var) {
            return Err(ArrowError::NotStandardFor { var });
        }
        let mut out = Vec::with_capacity(self.tail.arity() - 1);
        for (k, c) in self.vector().iter().enumerate() {
            if k != var {
                out.push(*c as u32);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.tail, self.head)
    }
}

impl fmt::Debug for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c[{:?} -> {:?}]", self.tail, self.head)
    }
}

/// Arrows with the same tail whose heads form the `var`-column of the given
/// arrow's head, ordered by decreasing head degree in `var`.
pub fn shadow(beta: &BasisSet, arrow: &Arrow, var: usize) -> Vec<Arrow> {
    debug_assert!(beta.contains(arrow.head()));
    let mut out = Vec::new();
    let mut head = arrow.head().clone();
    loop {
        out.push(Arrow::new_unchecked(arrow.tail().clone(), head.clone()));
        match head.step(var, -1) {
            Some(next) => head = next,
            None => break,
        }
    }
    out
}

/// The translation-equivalence class of an arrow.
///
/// `heads` is the set of legal head positions reachable from the arrow, all
/// sharing the same `vector`; `zero` records whether some position admits a
/// degree-decreasing exit of the head across a coordinate hyperplane while
/// the tail stays outside the staircase; `canonical` is the arrow at the
/// lexicographically least head, giving a deterministic class identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowClass {
    vector: Vec<i64>,
    heads: BTreeSet<ExponentVector>,
    zero: bool,
    canonical: Arrow,
}

impl ArrowClass {
    pub fn vector(&self) -> &[i64] {
        &self.vector
    }

    pub fn heads(&self) -> &BTreeSet<ExponentVector> {
        &self.heads
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn canonical(&self) -> &Arrow {
        &self.canonical
    }

    pub fn contains(&self, arrow: &Arrow) -> bool {
        arrow.vector() == self.vector && self.heads.contains(arrow.head())
    }

    /// Deterministic identity of the class: vector plus canonical head.
    pub fn key(&self) -> (Vec<i64>, ExponentVector) {
        (self.vector.clone(), self.canonical.head().clone())
    }

    /// Least tail degree in `var` over the class.
    pub fn min_height(&self, var: usize) -> u32 {
        self.heads
            .iter()
            .map(|h| (i64::from(h.exponent(var)) - self.vector[var]) as u32)
            .min()
            .expect("class has at least one head")
    }
}

fn tail_for_head(head: &ExponentVector, vector: &[i64]) -> Option<ExponentVector> {
    let mut exps = Vec::with_capacity(head.arity());
    for (h, v) in head.exponents().iter().zip(vector) {
        let t = i64::from(*h) - v;
        if t < 0 {
            return None;
        }
        exps.push(t as u32);
    }
    Some(ExponentVector::new(exps))
}

/// Whether one more degree-decreasing step from this position would push the
/// head out of the first orthant while the tail stays a monomial outside the
/// staircase.
fn zero_exit(beta: &BasisSet, head: &ExponentVector, tail: &ExponentVector) -> bool {
    (0..beta.arity()).any(|var| {
        head.exponent(var) == 0
            && tail.exponent(var) >= 1
            && !beta.contains(&tail.step(var, -1).unwrap())
    })
}

/// Breadth-first closure over legal unit steps applied simultaneously to head
/// and tail. Visits every reachable head position; the zero flag is evaluated
/// at each visited node.
pub fn translation_class(beta: &BasisSet, arrow: &Arrow) -> ArrowClass {
    let vector = arrow.vector();
    let r = beta.arity();
    let mut heads = BTreeSet::new();
    let mut zero = false;
    let mut queue: Vec<ExponentVector> = alloc::vec![arrow.head().clone()];
    heads.insert(arrow.head().clone());
    while let Some(head) = queue.pop() {
        let tail = tail_for_head(&head, &vector).expect("tail stays in the orthant");
        debug_assert!(beta.contains(&head) && !beta.contains(&tail));
        if !zero && zero_exit(beta, &head, &tail) {
            zero = true;
        }
        for var in 0..r {
            for delta in [-1, 1] {
                let Some(next_head) = head.step(var, delta) else {
                    continue;
                };
                if !beta.contains(&next_head) || heads.contains(&next_head) {
                    continue;
                }
                let Some(next_tail) = tail.step(var, delta) else {
                    continue;
                };
                if beta.contains(&next_tail) {
                    continue;
                }
                heads.insert(next_head.clone());
                queue.push(next_head);
            }
        }
    }
    let least = heads.iter().next().expect("nonempty class").clone();
    let canonical_tail = tail_for_head(&least, &vector).unwrap();
    ArrowClass {
        vector,
        heads,
        zero,
        canonical: Arrow::new_unchecked(canonical_tail, least),
    }
}

/// Whether the two arrows can be translated one to the other.
pub fn equivalent(beta: &BasisSet, a: &Arrow, b: &Arrow) -> bool {
    a.vector() == b.vector() && translation_class(beta, a).heads().contains(b.head())
}

/// Whether the arrow, standard for `var`, has a null class or is equivalent
/// to an arrow of strictly smaller height in `var`.
pub fn can_advance(beta: &BasisSet, arrow: &Arrow, var: usize) -> Result<bool, ArrowError> {
    if !arrow.is_standard_for(var) {
        return Err(ArrowError::NotStandardFor { var });
    }
    let class = translation_class(beta, arrow);
    Ok(class.is_zero() || class.min_height(var) < arrow.height(var))
}

/// Memoizing wrapper around [`translation_class`].
///
/// Classes are keyed by (vector, any head in the component), so repeated
/// queries during bunch construction and census runs reuse the search.
/// Caches are cheap to build and thread-local; spawn one per analysis.
pub struct ClassEngine<'a> {
    beta: &'a BasisSet,
    index: BTreeMap<(Vec<i64>, ExponentVector), Rc<ArrowClass>>,
}

impl<'a> ClassEngine<'a> {
    pub fn new(beta: &'a BasisSet) -> Self {
        Self {
            beta,
            index: BTreeMap::new(),
        }
    }

    pub fn basis_set(&self) -> &'a BasisSet {
        self.beta
    }

    pub fn class(&mut self, arrow: &Arrow) -> Rc<ArrowClass> {
        let key = (arrow.vector(), arrow.head().clone());
        if let Some(hit) = self.index.get(&key) {
            return Rc::clone(hit);
        }
        let class = Rc::new(translation_class(self.beta, arrow));
        for head in class.heads() {
            self.index
                .insert((class.vector().to_vec(), head.clone()), Rc::clone(&class));
        }
        class
    }

    pub fn is_zero(&mut self, arrow: &Arrow) -> bool {
        self.class(arrow).is_zero()
    }

    pub fn equivalent(&mut self, a: &Arrow, b: &Arrow) -> bool {
        a.vector() == b.vector() && self.class(a).heads().contains(b.head())
    }

    pub fn can_advance(&mut self, arrow: &Arrow, var: usize) -> Result<bool, ArrowError> {
        if !arrow.is_standard_for(var) {
            return Err(ArrowError::NotStandardFor { var });
        }
        let class = self.class(arrow);
        Ok(class.is_zero() || class.min_height(var) < arrow.height(var))
    }
}
