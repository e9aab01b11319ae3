//! Deterministic sampling of constructor outputs for the randomized suites.
//!
//! A tiny splitmix generator keeps seeded runs reproducible across releases;
//! the samplers cycle through boxes, thickenings, box-addition chains, and
//! two-box unions while respecting caps on the variable count and size.

use staircase_core::staircase::{enumerate, BasisSet, BoxSpec};

/// SplitMix64: one multiply-shift round per draw.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `0..bound`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        self.next_u64() % bound
    }

    pub fn range_u32(&mut self, lo: u32, hi: u32) -> u32 {
        lo + self.below(u64::from(hi - lo + 1)) as u32
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleKind {
    Box,
    Thickening,
    BoxAdditionChain,
    TwoBoxUnion,
}

/// One constructor output with at most `max_r` variables and at most `max_n`
/// monomials, cycling kinds by `index`.
pub fn sample_staircase(
    rng: &mut Rng,
    index: usize,
    max_r: usize,
    max_n: usize,
) -> (BasisSet, SampleKind) {
    match index % 4 {
        0 => (sample_box(rng, max_r, max_n), SampleKind::Box),
        1 => (sample_thickening(rng, max_r, max_n), SampleKind::Thickening),
        2 => (
            sample_addition_chain(rng, max_r, max_n),
            SampleKind::BoxAdditionChain,
        ),
        _ => (sample_union(rng, max_r, max_n), SampleKind::TwoBoxUnion),
    }
}

pub fn sample_box_spec(rng: &mut Rng, max_r: usize, max_n: usize) -> BoxSpec {
    let r = 1 + rng.below(max_r as u64) as usize;
    loop {
        let widths: Vec<u32> = (0..r).map(|_| rng.range_u32(1, 3)).collect();
        let spec = BoxSpec::new(widths).unwrap();
        if spec.volume() <= max_n as u128 {
            return spec;
        }
    }
}

fn sample_box(rng: &mut Rng, max_r: usize, max_n: usize) -> BasisSet {
    BasisSet::from_box(&sample_box_spec(rng, max_r, max_n))
}

fn sample_thickening(rng: &mut Rng, max_r: usize, max_n: usize) -> BasisSet {
    if max_r == 1 {
        return sample_box(rng, max_r, max_n);
    }
    let base_r = 1 + rng.below((max_r - 1) as u64) as usize;
    let base_n = 1 + rng.below(5) as usize;
    let pool: Vec<BasisSet> = enumerate(base_r, base_n).collect();
    let base = pool[rng.below(pool.len() as u64) as usize].clone();
    let max_width = (max_n / base.len()).max(1) as u32;
    base.thicken(rng.range_u32(1, max_width.min(3)))
}

fn sample_addition_chain(rng: &mut Rng, max_r: usize, max_n: usize) -> BasisSet {
    let mut set = sample_box(rng, max_r, max_n);
    for _ in 0..=rng.below(3) {
        let var = rng.below(set.arity() as u64) as usize;
        let height = rng.range_u32(1, 2);
        let mut widths: Vec<u32> = set
            .widths()
            .iter()
            .map(|&w| w + rng.below(2) as u32)
            .collect();
        widths[var] = height;
        let volume: u128 = widths.iter().map(|&w| u128::from(w)).product();
        if set.len() as u128 + volume > max_n as u128 {
            break;
        }
        set = set.add_box(var, height, &widths).unwrap();
    }
    set
}

fn sample_union(rng: &mut Rng, max_r: usize, max_n: usize) -> BasisSet {
    loop {
        let first = sample_box_spec(rng, max_r, max_n);
        let second = loop {
            let widths: Vec<u32> = (0..first.arity()).map(|_| rng.range_u32(1, 3)).collect();
            if let Ok(spec) = BoxSpec::new(widths) {
                break spec;
            }
        };
        let union = BasisSet::two_box_union(&first, &second);
        if union.len() <= max_n {
            return union;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let mut a = Rng::new(7);
        let mut b = Rng::new(7);
        for i in 0..24 {
            let (x, kx) = sample_staircase(&mut a, i, 4, 20);
            let (y, ky) = sample_staircase(&mut b, i, 4, 20);
            assert_eq!(x, y);
            assert_eq!(kx, ky);
        }
    }

    #[test]
    fn samples_respect_caps() {
        let mut rng = Rng::new(0);
        for i in 0..80 {
            let (b, _) = sample_staircase(&mut rng, i, 4, 20);
            assert!(b.arity() <= 4);
            assert!(b.len() <= 20);
        }
    }

    #[test]
    fn seeds_change_the_stream() {
        let mut a = Rng::new(1);
        let mut b = Rng::new(2);
        let differs = (0..8)
            .any(|i| sample_staircase(&mut a, i, 4, 20).0 != sample_staircase(&mut b, i, 4, 20).0);
        assert!(differs);
    }
}
