//! The cluster structure on the Grassmannian of planes via triangulations.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{ModelError, Triangulation};
use crate::seeds::{exchange_graph, Seed, DEFAULT_SEED_BUDGET};
use crate::Rational;

/// The minor of columns `i, j` of a `2 x N` matrix.
pub fn plucker_minor(sample: &[Vec<BigInt>], i: usize, j: usize) -> BigInt {
    &sample[0][i] * &sample[1][j] - &sample[0][j] * &sample[1][i]
}

/// Random `2 x (n + 3)` integer matrix with entries in `-9..=9` and all minors nonzero.
pub fn random_plucker_sample(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<BigInt>> {
    let cols = n + 3;
    loop {
        let sample: Vec<Vec<BigInt>> =
            (0..2).map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect()).collect();
        let ok = (0..cols).all(|i| (i + 1..cols).all(|j| !plucker_minor(&sample, i, j).is_zero()));
        if ok {
            return sample;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PluckerReport {
    pub n: usize,
    /// Seeds reached, one per triangulation.
    pub seeds: usize,
    /// Seeds in the exchange graph of the fan quiver.
    pub expected_seeds: usize,
    /// Distinct diagonals whose variables were produced.
    pub diagonals_reached: usize,
    pub mismatches: Vec<String>,
    pub complete: bool,
}

impl PluckerReport {
    pub fn ok(&self) -> bool {
        self.complete
            && self.mismatches.is_empty()
            && self.seeds == self.expected_seeds
            && self.diagonals_reached == self.n * (self.n + 3) / 2
    }
}

/// Explores the exchange graph of the fan triangulation of the `(n + 3)`-gon,
/// substituting the minors of `sample` for the initial variables, and checks
/// that each mutation produces the minor of the flipped diagonal and the
/// quiver of the flipped triangulation.
pub fn plucker_check(n: usize, sample: &[Vec<BigInt>], budget: usize) -> Result<PluckerReport, ModelError> {
    let size = n + 3;
    if sample.len() != 2 || sample.iter().any(|r| r.len() != size) {
        return Err(ModelError::Sample(format!("expected a 2 x {size} matrix")));
    }
    let minor = |e: (usize, usize)| Rational::from_integer(plucker_minor(sample, e.0, e.1));
    if (0..size).any(|i| (i + 1..size).any(|j| minor((i, j)).is_zero())) {
        return Err(ModelError::Sample("a 2 x 2 minor vanishes".into()));
    }
    let fan = Triangulation::fan(size);
    let (quiver, labels) = fan.to_icequiver();
    let point: Vec<Rational> = labels.iter().map(|&e| minor(e)).collect();
    let start = Seed::initial(quiver.clone());

    let mut mismatches = Vec::new();
    let mut reached: BTreeSet<(usize, usize)> = fan.diagonals().clone();
    let mut seen: HashSet<Triangulation> = HashSet::from([fan.clone()]);
    let mut queue = VecDeque::from([(start, labels, fan)]);
    let mut complete = true;
    while let Some((seed, labels, tri)) = queue.pop_front() {
        for k in 0..n {
            let d = labels[k];
            let next_tri = tri.flip(d)?;
            let new_diag = tri.flipped_diagonal(d)?;
            let next = seed.mutate(k)?;
            let value = next.vars()[k].eval(&point).map_err(crate::seeds::SeedError::from)?;
            if value != minor(new_diag) {
                mismatches.push(format!(
                    "flip of {}{} in {tri}: got {value}, expected x{}{}",
                    d.0, d.1, new_diag.0, new_diag.1
                ));
            }
            let mut next_labels = labels.clone();
            next_labels[k] = new_diag;
            let (fq, fedges) = next_tri.to_icequiver();
            let pos: Vec<usize> =
                next_labels.iter().map(|e| fedges.iter().position(|f| f == e).expect("edge")).collect();
            let m = next_labels.len();
            if !(0..m).all(|i| (0..m).all(|j| next.quiver().b(i, j) == fq.b(pos[i], pos[j]))) {
                mismatches.push(format!(
                    "quiver after flipping {}{} in {tri} differs from the triangulation quiver",
                    d.0, d.1
                ));
            }
            reached.insert(new_diag);
            if !seen.contains(&next_tri) {
                if seen.len() == budget {
                    complete = false;
                    continue;
                }
                seen.insert(next_tri.clone());
                queue.push_back((next, next_labels, next_tri));
            }
        }
    }
    let expected = exchange_graph(&quiver.principal_part(), DEFAULT_SEED_BUDGET)?;
    Ok(PluckerReport {
        n,
        seeds: seen.len(),
        expected_seeds: expected.seeds.len(),
        diagonals_reached: reached.len(),
        mismatches,
        complete: complete && expected.complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cc::seeded_rng;

    #[test]
    fn hexagon() {
        let sample = random_plucker_sample(3, &mut seeded_rng(7));
        let r = plucker_check(3, &sample, 1000).unwrap();
        assert_eq!((r.seeds, r.diagonals_reached, r.expected_seeds), (14, 9, 14));
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn square_and_relation() {
        let sample = random_plucker_sample(1, &mut seeded_rng(3));
        let r = plucker_check(1, &sample, 10).unwrap();
        assert_eq!((r.seeds, r.diagonals_reached), (2, 2));
        assert!(r.ok());
        let x = |i, j| plucker_minor(&sample, i, j);
        assert_eq!(x(0, 2) * x(1, 3), x(0, 1) * x(2, 3) + x(1, 2) * x(0, 3));
    }

    #[test]
    fn rejects_degenerate_samples() {
        let zero = vec![vec![BigInt::from(1); 4], vec![BigInt::from(1); 4]];
        assert!(plucker_check(1, &zero, 10).is_err());
    }
}
