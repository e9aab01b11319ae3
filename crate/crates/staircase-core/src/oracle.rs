//! Independent verification of the cotangent dimension by exact linear
//! algebra, plus the one-parameter degeneration to distinct points.
//!
//! A tangent vector at the Hilbert-scheme point of a staircase assigns to
//! each minimal generator a linear combination of basis monomials, subject to
//! one linear condition per (generator pair, basis monomial): the pairwise
//! syzygies of the minimal generators generate the whole syzygy module of a
//! monomial ideal, so these conditions are complete. The resulting sparse
//! system has entries in {-1, 0, +1} and at most two per row; its corank is
//! the tangent dimension, computed by fraction-free Gaussian elimination in
//! exact integer arithmetic (no floating point anywhere). Intermediate
//! values are minors of the system, which stay tiny here; 128-bit integers
//! with checked arithmetic hold them with room to spare, and overflow is an
//! assertion.
//!
//! The degeneration side: substituting pairwise distinct scalars for the
//! exponents places the staircase at `n` pairwise distinct rational points,
//! realizing the ideal as a limit of reduced subschemes. That is what makes
//! `r * n` a lower bound for the (co)tangent dimension.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::cotangent;
use crate::monomial::ExponentVector;
use crate::staircase::BasisSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// The scalar sequence must be pairwise distinct.
    NonInjectiveSequence,
    /// The scaling parameter must be nonzero.
    ZeroParameter,
    /// The scalar sequence must cover every exponent in the staircase.
    SequenceTooShort { needed: usize, found: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NonInjectiveSequence => write!(f, "scalar sequence has repeated entries"),
            Self::ZeroParameter => write!(f, "scaling parameter must be nonzero"),
            Self::SequenceTooShort { needed, found } => {
                write!(f, "scalar sequence has {found} entries, need {needed}")
            }
        }
    }
}

impl core::error::Error for OracleError {}

/// An exact rational number with reduced 128-bit numerator and denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let sign = if den < 0 { -1 } else { 1 };
        Self {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn integer(n: i128) -> Self {
        Self { num: n, den: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            self.num.checked_mul(other.num).expect("rational overflow"),
            self.den.checked_mul(other.den).expect("rational overflow"),
        )
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// The linear system cutting out first-order deformations.
///
/// One unknown per (minimal generator, basis monomial) pair; one row per
/// (generator pair, basis monomial) with at most two entries, both in
/// {-1, +1}.
#[derive(Clone, Debug)]
pub struct HomSystem {
    /// Column labels: (generator, basis monomial), in (tail, head) order.
    unknowns: Vec<(ExponentVector, ExponentVector)>,
    /// Sparse rows: sorted (column, coefficient) pairs.
    rows: Vec<Vec<(usize, i8)>>,
}

impl HomSystem {
    /// Assembles the system for a staircase: for generators `a`, `b` with
    /// least common multiple `L` and each basis monomial `j`, the monomial
    /// `L - a + j` contributes `+1` in the column of `(a, j)` to the row of
    /// the basis monomial it lands on (nothing if it leaves the staircase),
    /// and symmetrically `-1` for `b`.
    pub fn assemble(beta: &BasisSet) -> Self {
        let gens = beta.minimal_generators();
        let n = beta.len();
        let mut column: BTreeMap<(&ExponentVector, &ExponentVector), usize> = BTreeMap::new();
        let mut unknowns = Vec::with_capacity(gens.len() * n);
        for g in gens {
            for m in beta.members() {
                column.insert((g, m), unknowns.len());
                unknowns.push((g.clone(), m.clone()));
            }
        }
        let mut rows = Vec::new();
        for (ia, a) in gens.iter().enumerate() {
            for b in gens.iter().skip(ia + 1) {
                let l = a.lcm(b);
                let mut by_target: BTreeMap<ExponentVector, Vec<(usize, i8)>> = BTreeMap::new();
                for (gen, sign) in [(a, 1i8), (b, -1i8)] {
                    let shift = l.checked_sub(gen).expect("generators divide their lcm");
                    for j in beta.members() {
                        let target = shift.plus(j);
                        if beta.contains(&target) {
                            by_target
                                .entry(target)
                                .or_default()
                                .push((column[&(gen, j)], sign));
                        }
                    }
                }
                for (_, mut entries) in by_target {
                    entries.sort_unstable();
                    rows.push(entries);
                }
            }
        }
        rows.sort_unstable();
        rows.dedup();
        Self { unknowns, rows }
    }

    pub fn unknown_count(&self) -> usize {
        self.unknowns.len()
    }

    pub fn unknowns(&self) -> &[(ExponentVector, ExponentVector)] {
        &self.unknowns
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Sparse triplets `(row, column, coefficient)` in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i8)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    /// Rank of the constraint matrix by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut dense: Vec<Vec<i128>> = self
            .rows
            .iter()
            .map(|row| {
                let mut out = alloc::vec![0i128; self.unknowns.len()];
                for &(c, v) in row {
                    out[c] += i128::from(v);
                }
                out
            })
            .collect();
        fraction_free_rank(&mut dense)
    }
}

/// Rank by single-step fraction-free (division-exact) Gaussian elimination.
/// Every intermediate entry is a minor of the input matrix.
pub fn fraction_free_rank(matrix: &mut [Vec<i128>]) -> usize {
    let rows = matrix.len();
    if rows == 0 {
        return 0;
    }
    let cols = matrix[0].len();
    let mut rank = 0;
    let mut prev_pivot: i128 = 1;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&i| matrix[i][col] != 0) else {
            continue;
        };
        matrix.swap(rank, pivot_row);
        let pivot = matrix[rank][col];
        let pivot_tail = matrix[rank][col..].to_vec();
        for row in matrix.iter_mut().skip(rank + 1) {
            let lead = row[col];
            for (entry, &above) in row[col..].iter_mut().zip(&pivot_tail) {
                let a = pivot.checked_mul(*entry).expect("minor overflow");
                let b = lead.checked_mul(above).expect("minor overflow");
                let num = a.checked_sub(b).expect("minor overflow");
                debug_assert_eq!(num % prev_pivot, 0, "fraction-free step divides exactly");
                *entry = num / prev_pivot;
            }
        }
        prev_pivot = pivot;
        rank += 1;
    }
    rank
}

/// Dimension of the tangent space: number of unknowns minus the rank of the
/// deformation system. Independent of the translation-class route.
pub fn tangent_dimension(beta: &BasisSet) -> usize {
    let system = HomSystem::assemble(beta);
    system.unknown_count() - system.rank()
}

/// Both dimension computations side by side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub tangent: usize,
    pub cotangent: usize,
}

impl CrossCheck {
    pub fn consistent(&self) -> bool {
        self.tangent == self.cotangent
    }
}

pub fn cross_check(beta: &BasisSet) -> CrossCheck {
    CrossCheck {
        tangent: tangent_dimension(beta),
        cotangent: cotangent::cotangent_dimension(beta),
    }
}

/// `n` pairwise distinct points of affine space, one per staircase member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Vec<Rational>>,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }
}

/// Sends the member with exponents `(e_1, ..., e_r)` to the point
/// `(scale * seq[e_1], ..., scale * seq[e_r])`.
///
/// `seq` must be pairwise distinct and cover every exponent occurring in the
/// staircase, and `scale` must be nonzero; the resulting points are then
/// pairwise distinct.
pub fn distraction_points(
    beta: &BasisSet,
    seq: &[Rational],
    scale: Rational,
) -> Result<PointSet, OracleError> {
    if scale.is_zero() {
        return Err(OracleError::ZeroParameter);
    }
    for (i, a) in seq.iter().enumerate() {
        if seq[i + 1..].contains(a) {
            return Err(OracleError::NonInjectiveSequence);
        }
    }
    let max_exp = beta
        .members()
        .flat_map(|m| m.exponents().iter().copied())
        .max()
        .unwrap_or(0) as usize;
    if seq.len() < max_exp + 1 {
        return Err(OracleError::SequenceTooShort {
            needed: max_exp + 1,
            found: seq.len(),
        });
    }
    let points: Vec<Vec<Rational>> = beta
        .members()
        .map(|m| {
            m.exponents()
                .iter()
                .map(|&e| scale.mul(&seq[e as usize]))
                .collect()
        })
        .collect();
    for (i, p) in points.iter().enumerate() {
        debug_assert!(
            !points[i + 1..].contains(p),
            "distinct members map to distinct points"
        );
    }
    Ok(PointSet { points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::staircase::BoxSpec;
    use alloc::vec;

    fn ev(exps: &[u32]) -> ExponentVector {
        ExponentVector::from_slice(exps)
    }

    fn four_points() -> BasisSet {
        BasisSet::from_monomials(
            vec![
                ev(&[0, 0, 0]),
                ev(&[1, 0, 0]),
                ev(&[0, 1, 0]),
                ev(&[0, 0, 1]),
            ],
            3,
        )
        .unwrap()
    }

    fn compound_box() -> BasisSet {
        BasisSet::from_monomials(
            vec![
                ev(&[0, 0, 0]),
                ev(&[1, 0, 0]),
                ev(&[0, 1, 0]),
                ev(&[1, 1, 0]),
                ev(&[0, 0, 1]),
            ],
            3,
        )
        .unwrap()
    }

    fn corner_staircase() -> BasisSet {
        BasisSet::from_monomials(vec![ev(&[0, 0]), ev(&[1, 0]), ev(&[0, 1]), ev(&[0, 2])], 2)
            .unwrap()
    }

    fn integers(k: usize) -> Vec<Rational> {
        (0..k as i128).map(Rational::integer).collect()
    }

    #[test]
    fn tangent_dimensions_of_named_sets() {
        assert_eq!(tangent_dimension(&four_points()), 18);
        assert_eq!(tangent_dimension(&compound_box()), 15);
        let rect = BasisSet::from_box(&BoxSpec::new(vec![2, 3]).unwrap());
        assert_eq!(tangent_dimension(&rect), 12);
    }

    #[test]
    fn system_shape_invariants() {
        for beta in [four_points(), compound_box(), corner_staircase()] {
            let system = HomSystem::assemble(&beta);
            assert_eq!(
                system.unknown_count(),
                beta.minimal_generators().len() * beta.len()
            );
            for row in &system.rows {
                assert!(!row.is_empty() && row.len() <= 2);
                for &(_, v) in row {
                    assert!(v == 1 || v == -1);
                }
            }
        }
    }

    #[test]
    fn cross_checks_agree() {
        let union = BasisSet::two_box_union(
            &BoxSpec::new(vec![2, 2, 1, 1]).unwrap(),
            &BoxSpec::new(vec![1, 1, 2, 2]).unwrap(),
        );
        let check = cross_check(&union);
        assert!(check.consistent());
        assert_eq!(check.tangent, 28);

        let point = BasisSet::from_monomials(vec![ev(&[0, 0, 0, 0])], 4).unwrap();
        let check = cross_check(&point);
        assert!(check.consistent());
        assert_eq!(check.tangent, 4);
    }

    #[test]
    fn box_tangent_dimension_is_rn() {
        for widths in [vec![2u32], vec![3, 2], vec![2, 2, 2], vec![2, 1, 3, 2]] {
            let spec = BoxSpec::new(widths).unwrap();
            let b = BasisSet::from_box(&spec);
            assert_eq!(tangent_dimension(&b), b.arity() * b.len());
        }
    }

    #[test]
    fn elimination_handles_plain_matrices() {
        let mut m = vec![vec![1i128, 2, 3], vec![2, 4, 6], vec![1, 0, 1]];
        assert_eq!(fraction_free_rank(&mut m), 2);
        let mut empty: Vec<Vec<i128>> = Vec::new();
        assert_eq!(fraction_free_rank(&mut empty), 0);
        let mut zero = vec![vec![0i128; 3]; 2];
        assert_eq!(fraction_free_rank(&mut zero), 0);
    }

    #[test]
    fn distraction_places_distinct_points() {
        let b = corner_staircase();
        let points = distraction_points(&b, &integers(4), Rational::integer(1)).unwrap();
        let expected: Vec<Vec<Rational>> = [[0i128, 0], [0, 1], [0, 2], [1, 0]]
            .iter()
            .map(|p| p.iter().map(|&x| Rational::integer(x)).collect())
            .collect();
        assert_eq!(points.points(), expected.as_slice());

        let doubled = distraction_points(&b, &integers(4), Rational::integer(2)).unwrap();
        for (p, q) in points.points().iter().zip(doubled.points()) {
            for (a, b) in p.iter().zip(q) {
                assert_eq!(a.mul(&Rational::integer(2)), *b);
            }
        }

        let fp = four_points();
        let points = distraction_points(&fp, &integers(2), Rational::integer(1)).unwrap();
        assert_eq!(points.len(), 4);
    }

    #[test]
    fn distraction_rejects_bad_parameters() {
        let b = corner_staircase();
        assert_eq!(
            distraction_points(&b, &integers(4), Rational::integer(0)).unwrap_err(),
            OracleError::ZeroParameter
        );
        let repeated = vec![
            Rational::integer(0),
            Rational::integer(1),
            Rational::integer(1),
            Rational::integer(3),
        ];
        assert_eq!(
            distraction_points(&b, &repeated, Rational::integer(1)).unwrap_err(),
            OracleError::NonInjectiveSequence
        );
        assert_eq!(
            distraction_points(&b, &integers(2), Rational::integer(1)).unwrap_err(),
            OracleError::SequenceTooShort {
                needed: 3,
                found: 2
            }
        );
    }

    #[test]
    fn rationals_reduce() {
        assert_eq!(Rational::new(2, 4), Rational::new(1, 2));
        assert_eq!(Rational::new(1, -2), Rational::new(-1, 2));
        assert_eq!(
            Rational::new(1, 2).mul(&Rational::new(2, 3)),
            Rational::new(1, 3)
        );
        assert_eq!(alloc::format!("{}", Rational::new(-3, 6)), "-1/2");
        assert_eq!(alloc::format!("{}", Rational::integer(7)), "7");
    }
}
