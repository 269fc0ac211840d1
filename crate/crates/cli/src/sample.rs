//! Seeded random elements for the sampled checks.

use qsg_core::partitions::{partitions_of, Partition};
use qsg_core::structure_group::{AElement, ClassVector, DehnElement};
use qsg_core::{Permutation, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn permutation(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_images(&images).expect("shuffled images form a permutation")
}

/// A valid element of `A(Sₙ)` with class coordinates in `-spread..=spread`
/// (the transposition coordinate may exceed it by one to fix parity).
pub fn a_element(n: usize, spread: i64, rng: &mut impl Rng) -> Result<AElement> {
    let perm = permutation(n, rng);
    let classes = partitions_of(n)?;
    let mut coords: Vec<(Partition, i64)> = classes
        .into_iter()
        .map(|lambda| (lambda, rng.gen_range(-spread..=spread)))
        .collect();
    let parity: i64 = coords
        .iter()
        .filter(|(l, _)| l.is_odd_class())
        .map(|(_, x)| x)
        .sum::<i64>()
        .rem_euclid(2);
    if parity != i64::from(perm.sign()) {
        let t = Partition::transposition_class(n).expect("odd permutations need n >= 2");
        let slot = coords
            .iter_mut()
            .find(|(l, _)| *l == t)
            .expect("class present");
        slot.1 += if slot.1 >= 0 { -1 } else { 1 };
    }
    AElement::new(perm, ClassVector::from_coords(n, coords)?)
}

pub fn dehn_element(n: usize, spread: i64, rng: &mut impl Rng) -> Result<DehnElement> {
    let perm = permutation(n, rng);
    let mut k = rng.gen_range(-spread..=spread);
    if k.rem_euclid(2) != i64::from(perm.sign()) {
        k += 1;
    }
    DehnElement::new(perm, k)
}

/// `s` distinct half-values in `1..=max`.
pub fn half_values(s: usize, max: u64, rng: &mut impl Rng) -> Vec<u64> {
    rand::seq::index::sample(rng, max as usize, s)
        .into_iter()
        .map(|i| i as u64 + 1)
        .collect()
}
