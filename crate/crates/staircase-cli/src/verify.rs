//! Theorem suites for the census, with independent counting oracles.
//!
//! Every check returns the number of assertions made, or a violation
//! carrying a counterexample staircase for verbatim reporting.

// Violations carry whole staircases; they only travel on the cold path.
#![allow(clippy::result_large_err)]

use std::collections::BTreeSet;

use staircase_core::arrow::{ClassEngine, Standardness};
use staircase_core::classify;
use staircase_core::cotangent;
use staircase_core::monomial::ExponentVector;
use staircase_core::oracle::{self, Rational};
use staircase_core::staircase::{BasisSet, BoxSpec};

use crate::gen::{self, Rng};

#[derive(Clone, Debug)]
pub struct Violation {
    pub description: String,
    pub counterexample: BasisSet,
}

impl Violation {
    fn new(description: impl Into<String>, counterexample: &BasisSet) -> Self {
        Self {
            description: description.into(),
            counterexample: counterexample.clone(),
        }
    }
}

/// Number of integer partitions of `n`, by the pentagonal-number recurrence.
pub fn partition_count(n: usize) -> u64 {
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for i in 1..=n {
        let mut total: i128 = 0;
        let mut k: i128 = 1;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g1 > i {
                break;
            }
            let sign = if k % 2 == 0 { -1i128 } else { 1 };
            total += sign * table[i - g1] as i128;
            if g2 <= i {
                total += sign * table[i - g2] as i128;
            }
            k += 1;
        }
        table[i] = u64::try_from(total).expect("partition counts are positive");
    }
    table[n]
}

/// Number of plane partitions of `n`, by the divisor-power recurrence
/// `n * PL(n) = sum_k sigma_2(k) * PL(n - k)`.
pub fn plane_partition_count(n: usize) -> u64 {
    let sigma2 = |k: usize| -> u128 {
        (1..=k)
            .filter(|d| k.is_multiple_of(*d))
            .map(|d| (d as u128) * (d as u128))
            .sum()
    };
    let mut table = vec![0u128; n + 1];
    table[0] = 1;
    for i in 1..=n {
        let total: u128 = (1..=i).map(|k| sigma2(k) * table[i - k]).sum();
        table[i] = total / i as u128;
    }
    table[n] as u64
}

/// Independent census of division-closed sets: grow one monomial at a time,
/// deduplicating whole sets. Exponential, for small cross-checks only.
pub fn division_closed_census(r: usize, n: usize) -> usize {
    let mut level: BTreeSet<Vec<ExponentVector>> = BTreeSet::new();
    level.insert(vec![ExponentVector::zero(r)]);
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for set in &level {
            let members: BTreeSet<&ExponentVector> = set.iter().collect();
            for m in set {
                for var in 0..r {
                    let candidate = m.step(var, 1).unwrap();
                    if members.contains(&candidate) {
                        continue;
                    }
                    let addable = (0..r).all(|k| match candidate.step(k, -1) {
                        Some(div) => members.contains(&div),
                        None => true,
                    });
                    if addable {
                        let mut grown = set.clone();
                        grown.push(candidate.clone());
                        grown.sort();
                        next.insert(grown);
                    }
                }
            }
        }
        level = next;
    }
    level.len()
}

/// In two variables everything is smooth of dimension `2n` and peels as a
/// compound box.
pub fn check_two_var(beta: &BasisSet) -> Result<usize, Violation> {
    if cotangent::cotangent_dimension(beta) != 2 * beta.len() {
        return Err(Violation::new(
            "two-variable staircase not of dimension 2n",
            beta,
        ));
    }
    let Some(d) = classify::compound_box_decomposition(beta) else {
        return Err(Violation::new(
            "two-variable staircase is not a compound box",
            beta,
        ));
    };
    if d.replay() != *beta {
        return Err(Violation::new("decomposition does not replay", beta));
    }
    Ok(3)
}

/// In three variables smoothness, the compound-box property, and nullity of
/// every non-standard minimal arrow all coincide.
pub fn check_three_var(beta: &BasisSet) -> Result<usize, Violation> {
    let smooth = cotangent::is_smooth(beta);
    let decomposition = classify::compound_box_decomposition(beta);
    if smooth != decomposition.is_some() {
        return Err(Violation::new(
            "smoothness and the compound-box property disagree",
            beta,
        ));
    }
    if let Some(d) = decomposition {
        if d.replay() != *beta {
            return Err(Violation::new("decomposition does not replay", beta));
        }
    }
    let mut engine = ClassEngine::new(beta);
    let all_null = cotangent::minimal_arrows(beta)
        .iter()
        .filter(|a| a.standardness() == Standardness::NonStandard)
        .all(|a| engine.is_zero(a));
    if smooth != all_null {
        return Err(Violation::new(
            "smoothness and nullity of non-standard arrows disagree",
            beta,
        ));
    }
    let table = classify::two_variable_generators(beta).expect("three variables");
    if table.values().all(|g| g.len() > 2) && all_null {
        return Err(Violation::new(
            "crowded generator tables must leave a live non-standard arrow",
            beta,
        ));
    }
    Ok(4)
}

/// Thickening preserves smoothness in both directions.
pub fn check_thicken(beta: &BasisSet, rng: &mut Rng) -> Result<usize, Violation> {
    let smooth = cotangent::is_smooth(beta);
    let width = rng.range_u32(1, 3);
    let thick = beta.thicken(width);
    if thick.len() != beta.len() * width as usize {
        return Err(Violation::new("thickening has the wrong cardinality", beta));
    }
    if cotangent::is_smooth(&thick) != smooth {
        return Err(Violation::new(
            format!("thickening by {width} changes smoothness"),
            beta,
        ));
    }
    Ok(2)
}

/// Truncations of smooth staircases null their non-standard arrows, and stay
/// smooth whenever the width condition holds.
pub fn check_truncate(beta: &BasisSet) -> Result<usize, Violation> {
    let mut checks = 0;
    if !cotangent::is_smooth(beta) {
        return Ok(0);
    }
    for var in 0..beta.arity() {
        for h in 1..beta.widths()[var] {
            let t = beta.truncate(var, h).expect("below the width");
            let mut engine = ClassEngine::new(&t);
            let all_null = cotangent::minimal_arrows(&t)
                .iter()
                .filter(|a| a.standardness() == Standardness::NonStandard)
                .all(|a| engine.is_zero(a));
            if !all_null {
                return Err(Violation::new(
                    format!(
                        "truncation at (x{}, {h}) keeps a live non-standard arrow",
                        var + 1
                    ),
                    beta,
                ));
            }
            checks += 1;
            if beta
                .truncation_smoothness_hypothesis(var, h)
                .expect("below the width")
            {
                if !cotangent::is_smooth(&t) {
                    return Err(Violation::new(
                        format!(
                            "truncation at (x{}, {h}) is singular despite the width condition",
                            var + 1
                        ),
                        beta,
                    ));
                }
                checks += 1;
            }
        }
    }
    Ok(checks)
}

/// Box addition preserves smoothness in both directions, undoes by
/// truncation, and satisfies the width condition at its own cut.
pub fn check_addbox(beta: &BasisSet, rng: &mut Rng) -> Result<usize, Violation> {
    let smooth = cotangent::is_smooth(beta);
    let var = rng.below(beta.arity() as u64) as usize;
    let height = rng.range_u32(1, 2);
    let mut widths: Vec<u32> = beta
        .widths()
        .iter()
        .map(|&w| w + rng.below(2) as u32)
        .collect();
    widths[var] = height;
    let grown = beta.add_box(var, height, &widths).expect("widths dominate");
    if grown.truncate(var, height).expect("cut exists") != *beta {
        return Err(Violation::new("box addition does not truncate back", beta));
    }
    if cotangent::is_smooth(&grown) != smooth {
        return Err(Violation::new(
            format!(
                "box addition at (x{}, {height}) changes smoothness",
                var + 1
            ),
            beta,
        ));
    }
    if !grown
        .truncation_smoothness_hypothesis(var, height)
        .expect("cut exists")
    {
        return Err(Violation::new(
            "box addition violates the width condition at its own cut",
            beta,
        ));
    }
    Ok(3)
}

/// Boxes are smooth with corner-power generators.
pub fn check_box_sample(rng: &mut Rng, max_r: usize, max_n: usize) -> Result<usize, Violation> {
    let spec = gen::sample_box_spec(rng, max_r, max_n);
    let beta = BasisSet::from_box(&spec);
    let rn = beta.arity() * beta.len();
    if cotangent::cotangent_dimension(&beta) != rn || oracle::tangent_dimension(&beta) != rn {
        return Err(Violation::new("box is not smooth of dimension rn", &beta));
    }
    let corners: Vec<ExponentVector> = (0..beta.arity())
        .map(|var| ExponentVector::axis(beta.arity(), var, beta.widths()[var]))
        .collect();
    let mut expected = corners;
    expected.sort();
    if beta.minimal_generators() != expected.as_slice() {
        return Err(Violation::new(
            "box generators are not the corner powers",
            &beta,
        ));
    }
    Ok(3)
}

/// Two-box unions are smooth, and their generators are corner powers or
/// cross-corner two-variable monomials.
pub fn check_union_sample(rng: &mut Rng, max_r: usize, max_n: usize) -> Result<usize, Violation> {
    let first = gen::sample_box_spec(rng, max_r, max_n);
    let second = loop {
        let widths: Vec<u32> = (0..first.arity()).map(|_| rng.range_u32(1, 3)).collect();
        let spec = BoxSpec::new(widths).unwrap();
        let union = BasisSet::two_box_union(&first, &spec);
        if union.len() <= max_n {
            break spec;
        }
    };
    let beta = BasisSet::two_box_union(&first, &second);
    let expected_widths: Vec<u32> = first
        .widths()
        .iter()
        .zip(second.widths())
        .map(|(a, b)| *a.max(b))
        .collect();
    if beta.widths() != expected_widths.as_slice() {
        return Err(Violation::new(
            "union widths are not the componentwise max",
            &beta,
        ));
    }
    if cotangent::cotangent_dimension(&beta) != beta.arity() * beta.len() {
        return Err(Violation::new("two-box union is not smooth", &beta));
    }
    for g in beta.minimal_generators() {
        let support: Vec<usize> = (0..beta.arity()).filter(|&k| g.exponent(k) > 0).collect();
        let ok = match support.len() {
            1 => g.exponent(support[0]) == beta.widths()[support[0]],
            2 => {
                let (j, k) = (support[0], support[1]);
                let (w1, w2) = (first.widths(), second.widths());
                let fits = |p: usize, q: usize| {
                    w1[p] > w2[p]
                        && w2[q] > w1[q]
                        && g.exponent(p) == w2[p]
                        && g.exponent(q) == w1[q]
                };
                fits(j, k) || fits(k, j)
            }
            _ => false,
        };
        if !ok {
            return Err(Violation::new(
                format!("union generator {g} has an impossible shape"),
                &beta,
            ));
        }
    }
    Ok(2 + beta.minimal_generators().len())
}

/// Oracle agreement plus the degeneration to distinct points.
pub fn check_oracle(beta: &BasisSet) -> Result<usize, Violation> {
    let check = oracle::cross_check(beta);
    if !check.consistent() {
        return Err(Violation::new(
            format!(
                "tangent dimension {} disagrees with cotangent dimension {}",
                check.tangent, check.cotangent
            ),
            beta,
        ));
    }
    if check.cotangent < beta.arity() * beta.len() {
        return Err(Violation::new("dimension below the rn lower bound", beta));
    }
    let max = beta
        .members()
        .flat_map(|m| m.exponents().iter().copied())
        .max()
        .unwrap();
    let seq: Vec<Rational> = (0..=i128::from(max)).map(Rational::integer).collect();
    let points =
        oracle::distraction_points(beta, &seq, Rational::integer(1)).expect("valid parameters");
    let distinct: BTreeSet<_> = points.points().iter().collect();
    if distinct.len() != beta.len() {
        return Err(Violation::new("degeneration points collide", beta));
    }
    Ok(3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let expected = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &p) in expected.iter().enumerate() {
            assert_eq!(partition_count(n), p);
        }
    }

    #[test]
    fn plane_partition_counts() {
        let expected = [1u64, 1, 3, 6, 13, 24, 48, 86, 160, 282, 500];
        for (n, &p) in expected.iter().enumerate() {
            assert_eq!(plane_partition_count(n), p);
        }
    }

    #[test]
    fn census_oracles_agree_with_each_other() {
        for n in 1..=6 {
            assert_eq!(division_closed_census(2, n) as u64, partition_count(n));
        }
        for n in 1..=5 {
            assert_eq!(
                division_closed_census(3, n) as u64,
                plane_partition_count(n)
            );
        }
    }

    #[test]
    fn enumeration_counts_match_the_recurrences() {
        for n in 1..=10 {
            assert_eq!(
                staircase_core::staircase::enumerate(2, n).count() as u64,
                partition_count(n)
            );
        }
        for n in 1..=6 {
            assert_eq!(
                staircase_core::staircase::enumerate(3, n).count() as u64,
                plane_partition_count(n)
            );
        }
    }

    #[test]
    fn suites_accept_known_good_instances() {
        let mut rng = Rng::new(3);
        for b in staircase_core::staircase::enumerate(2, 4) {
            check_two_var(&b).unwrap();
            check_oracle(&b).unwrap();
            check_thicken(&b, &mut rng).unwrap();
            check_truncate(&b).unwrap();
            check_addbox(&b, &mut rng).unwrap();
        }
        for b in staircase_core::staircase::enumerate(3, 4) {
            check_three_var(&b).unwrap();
        }
        check_box_sample(&mut rng, 4, 20).unwrap();
        check_union_sample(&mut rng, 4, 20).unwrap();
    }
}
