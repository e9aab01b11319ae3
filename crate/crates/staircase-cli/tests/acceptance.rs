//! Acceptance suite: one test per criterion, each printing a verdict line.
//!
//! Every expected value here is an exact integer; there are no tolerances.

use std::collections::BTreeSet;

use staircase_cli::gen::{self, Rng};
use staircase_cli::verify;
use staircase_core::arrow::{self, Arrow, ClassEngine, Standardness};
use staircase_core::bunch;
use staircase_core::classify;
use staircase_core::cotangent;
use staircase_core::monomial::ExponentVector;
use staircase_core::oracle::{self, Rational};
use staircase_core::staircase::{self, BasisSet, BoxSpec};

fn ev(exps: &[u32]) -> ExponentVector {
    ExponentVector::from_slice(exps)
}

fn set(members: &[&[u32]], r: usize) -> BasisSet {
    BasisSet::from_monomials(members.iter().map(|m| ev(m)).collect(), r).unwrap()
}

fn arrow(beta: &BasisSet, tail: &[u32], head: &[u32]) -> Arrow {
    Arrow::new(beta, ev(tail), ev(head)).unwrap()
}

/// {1, x1, x2, x3}: the smallest singular staircase in three variables.
fn four_points() -> BasisSet {
    set(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3)
}

/// {1, x1, x2, x1 x2, x3}: a five-point compound box.
fn five_point_compound_box() -> BasisSet {
    set(
        &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]],
        3,
    )
}

/// {1, x1, x2, x2^2}: the running two-variable example.
fn corner_staircase() -> BasisSet {
    set(&[&[0, 0], &[1, 0], &[0, 1], &[0, 2]], 2)
}

fn pool_two_var() -> Vec<BasisSet> {
    (1..=8).flat_map(|n| staircase::enumerate(2, n)).collect()
}

fn pool_three_var() -> Vec<BasisSet> {
    (1..=6).flat_map(|n| staircase::enumerate(3, n)).collect()
}

#[test]
fn criterion_1_singular_four_point_staircase() {
    let beta = four_points();
    assert_eq!(cotangent::cotangent_dimension(&beta), 18);
    assert_eq!(oracle::tangent_dimension(&beta), 18);
    assert!(!cotangent::is_smooth(&beta));
    assert_eq!(classify::rigid_nonstandard_witnesses(&beta).len(), 3);
    let arrows = cotangent::minimal_arrows(&beta);
    assert_eq!(arrows.len(), 24);
    let mut engine = ClassEngine::new(&beta);
    let zero = arrows.iter().filter(|a| engine.is_zero(a)).count();
    assert_eq!(zero, 6);
    println!(
        "criterion 1: PASS  dim 18 both routes, singular, 3 witnesses, 6/24 null minimal arrows"
    );
}

#[test]
fn criterion_2_smooth_five_point_compound_box() {
    let beta = five_point_compound_box();
    assert_eq!(cotangent::cotangent_dimension(&beta), 15);
    assert_eq!(oracle::tangent_dimension(&beta), 15);
    assert!(cotangent::is_smooth(&beta));
    let mut engine = ClassEngine::new(&beta);
    let mut nonstandard = 0;
    let mut standard_zero = 0;
    for a in cotangent::minimal_arrows(&beta) {
        match a.standardness() {
            Standardness::NonStandard => {
                nonstandard += 1;
                assert!(engine.is_zero(&a), "{a} must be null");
            }
            Standardness::Standard(_) => {
                if engine.is_zero(&a) {
                    standard_zero += 1;
                }
            }
        }
    }
    assert_eq!(nonstandard, 4);
    assert_eq!(standard_zero, 5);
    assert!(arrow::equivalent(
        &beta,
        &arrow(&beta, &[1, 0, 1], &[1, 0, 0]),
        &arrow(&beta, &[0, 1, 1], &[0, 1, 0]),
    ));
    println!(
        "criterion 2: PASS  dim 15 both routes, smooth, 4 null non-standard + 5 null standard, equivalent pair verified"
    );
}

#[test]
fn criterion_3_corner_staircase_translations() {
    let beta = corner_staircase();
    assert_eq!(beta.widths(), &[2, 3]);
    assert!(arrow::equivalent(
        &beta,
        &arrow(&beta, &[1, 1], &[0, 1]),
        &arrow(&beta, &[1, 2], &[0, 2]),
    ));
    assert!(arrow::translation_class(&beta, &arrow(&beta, &[1, 2], &[0, 0])).is_zero());
    let image = bunch::promote_shadow(&beta, &[arrow(&beta, &[2, 0], &[0, 1])], 0).unwrap();
    assert_eq!(image, vec![arrow(&beta, &[1, 1], &[0, 2])]);
    println!("criterion 3: PASS  widths (2,3), translations and shadow promotion as expected");
}

#[test]
fn criterion_4_two_variable_census() {
    for n in 1..=8 {
        let instances: Vec<BasisSet> = staircase::enumerate(2, n).collect();
        assert_eq!(
            instances.len() as u64,
            verify::partition_count(n),
            "count at n={n}"
        );
        for beta in &instances {
            assert_eq!(
                cotangent::cotangent_dimension(beta),
                2 * n,
                "dimension of {beta:?}"
            );
        }
    }
    println!("criterion 4: PASS  r=2, n<=8 all smooth of dimension 2n; counts match the partition recurrence");
}

#[test]
fn criterion_5_three_variable_census() {
    assert_eq!(verify::division_closed_census(3, 3), 6);
    assert_eq!(verify::division_closed_census(3, 4), 13);
    assert_eq!(staircase::enumerate(3, 3).count(), 6);
    assert_eq!(staircase::enumerate(3, 4).count(), 13);
    for beta in pool_three_var() {
        let smooth = cotangent::is_smooth(&beta);
        assert_eq!(
            smooth,
            classify::compound_box_decomposition(&beta).is_some(),
            "compound-box equivalence on {beta:?}"
        );
        let mut engine = ClassEngine::new(&beta);
        let all_null = cotangent::minimal_arrows(&beta)
            .iter()
            .filter(|a| a.standardness() == Standardness::NonStandard)
            .all(|a| engine.is_zero(a));
        assert_eq!(
            smooth, all_null,
            "null non-standard equivalence on {beta:?}"
        );
    }
    println!("criterion 5: PASS  r=3, n<=6 smooth <=> compound box <=> null non-standard arrows; counts 6 and 13 match brute force");
}

#[test]
fn criterion_6_oracle_equivalence() {
    let mut instances: Vec<BasisSet> = pool_two_var();
    instances.extend(pool_three_var());
    let enumerated = instances.len();
    let mut rng = Rng::new(0);
    for i in 0..200 {
        let (beta, _) = gen::sample_staircase(&mut rng, i, 4, 20);
        instances.push(beta);
    }
    for beta in &instances {
        let check = oracle::cross_check(beta);
        assert!(
            check.consistent(),
            "tangent {} != cotangent {} on {beta:?}",
            check.tangent,
            check.cotangent
        );
    }
    println!(
        "criterion 6: PASS  tangent = cotangent on {enumerated} enumerated + 200 sampled instances"
    );
}

#[test]
fn criterion_7_standard_bunches() {
    let mut instances = pool_two_var();
    instances.extend(pool_three_var());
    for beta in &instances {
        let standard_bunch = bunch::build_bunch(beta);
        assert_eq!(standard_bunch.len(), beta.arity() * beta.len());
        let violations = bunch::verify_bunch(beta, &standard_bunch);
        assert!(violations.is_empty(), "{beta:?}: {violations:?}");
    }
    println!(
        "criterion 7: PASS  standard bunches of rn arrows verified on {} instances",
        instances.len()
    );
}

#[test]
fn criterion_8_constructor_theorems() {
    let mut rng = Rng::new(1);
    let mut samples: Vec<BasisSet> = (1..=6).flat_map(|n| staircase::enumerate(2, n)).collect();
    samples.extend((1..=5).flat_map(|n| staircase::enumerate(3, n)));

    for beta in &samples {
        let smooth = cotangent::is_smooth(beta);

        // Thickening preserves smoothness, in both directions.
        let width = rng.range_u32(1, 3);
        assert_eq!(cotangent::is_smooth(&beta.thicken(width)), smooth);

        // Box addition preserves smoothness, in both directions.
        let var = rng.below(beta.arity() as u64) as usize;
        let height = rng.range_u32(1, 2);
        let mut widths: Vec<u32> = beta.widths().to_vec();
        widths[var] = height;
        let grown = beta.add_box(var, height, &widths).unwrap();
        assert_eq!(cotangent::is_smooth(&grown), smooth);

        // Truncations of smooth staircases: non-standard arrows are null,
        // and the width condition forces smoothness.
        if smooth {
            for var in 0..beta.arity() {
                for h in 1..beta.widths()[var] {
                    let t = beta.truncate(var, h).unwrap();
                    let mut engine = ClassEngine::new(&t);
                    assert!(cotangent::minimal_arrows(&t)
                        .iter()
                        .filter(|a| a.standardness() == Standardness::NonStandard)
                        .all(|a| engine.is_zero(a)));
                    if beta.truncation_smoothness_hypothesis(var, h).unwrap() {
                        assert!(cotangent::is_smooth(&t));
                    }
                }
            }
        }
    }

    // Two-box unions are smooth of dimension rn.
    for i in 0..30 {
        let _ = i;
        let first = gen::sample_box_spec(&mut rng, 4, 20);
        let widths: Vec<u32> = (0..first.arity()).map(|_| rng.range_u32(1, 3)).collect();
        let second = BoxSpec::new(widths).unwrap();
        let union = BasisSet::two_box_union(&first, &second);
        if union.len() > 20 {
            continue;
        }
        assert_eq!(
            cotangent::cotangent_dimension(&union),
            union.arity() * union.len()
        );
    }

    // The seven-point union of cross boxes: dimension 28, not a compound box.
    let union = BasisSet::two_box_union(
        &BoxSpec::new(vec![2, 2, 1, 1]).unwrap(),
        &BoxSpec::new(vec![1, 1, 2, 2]).unwrap(),
    );
    assert_eq!(cotangent::cotangent_dimension(&union), 28);
    assert_eq!(oracle::tangent_dimension(&union), 28);
    assert!(cotangent::is_smooth(&union));
    assert!(classify::compound_box_decomposition(&union).is_none());

    println!("criterion 8: PASS  thicken/addbox preserve smoothness both ways, truncation theorems hold, unions smooth, 7-point union has dim 28 and is not compound");
}

#[test]
fn criterion_9_degeneration_to_distinct_points() {
    let mut instances = pool_two_var();
    instances.extend(pool_three_var());
    for beta in &instances {
        let max = beta
            .members()
            .flat_map(|m| m.exponents().iter().copied())
            .max()
            .unwrap();
        let seq: Vec<Rational> = (0..=i128::from(max)).map(Rational::integer).collect();
        let points = oracle::distraction_points(beta, &seq, Rational::integer(1)).unwrap();
        assert_eq!(points.len(), beta.len());
        let distinct: BTreeSet<_> = points.points().iter().collect();
        assert_eq!(distinct.len(), beta.len(), "collision on {beta:?}");
    }
    println!(
        "criterion 9: PASS  degeneration yields n pairwise distinct points on {} instances",
        instances.len()
    );
}
