//! Quiver representations, quiver Grassmannians and the Caldero–Chapoton map.

mod grassmannian;
mod map;

pub use grassmannian::{count_subreps, counting_polynomial, euler_char, PRIME_POOL, SUBSPACE_GUARD};
pub use map::{cc, cc_bijection_check, CcReport, CcRow};

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::quiver::IceQuiver;
use crate::seeds::SeedError;
use crate::{Field, Matrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CcError {
    #[error("quiver must be acyclic with no frozen vertices")]
    NotAcyclic,
    #[error("quiver is not of Dynkin type")]
    NotDynkin,
    #[error("representation shape: {0}")]
    Shape(String),
    #[error("no rigid representation of dimension {dim:?} found in {trials} trials")]
    SearchExhausted { dim: Vec<usize>, trials: usize },
    #[error("subspace enumeration needs {count} candidates, above the limit {guard}")]
    TooManySubspaces { count: u128, guard: u128 },
    #[error("need {needed} primes of good reduction, found {found}")]
    NotEnoughPrimes { needed: usize, found: usize },
    #[error("point counts do not interpolate to an integer polynomial")]
    NonIntegralInterpolation,
    #[error("representation is not rigid over the rationals")]
    NotRigid,
    #[error(transparent)]
    Seed(#[from] SeedError),
}

/// A representation of an acyclic quiver: one matrix of shape `d_j x d_i`
/// per arrow `i -> j`, arrows listed as in [`arrow_list`] (parallel arrows repeated).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverRep<F> {
    quiver: IceQuiver,
    dims: Vec<usize>,
    arrows: Vec<(usize, usize)>,
    maps: Vec<Matrix<F>>,
}

/// Arrows of `q` as `(source, target)` pairs, one per unit of multiplicity.
pub fn arrow_list(q: &IceQuiver) -> Vec<(usize, usize)> {
    q.arrows().into_iter().flat_map(|(i, j, k)| std::iter::repeat_n((i, j), k as usize)).collect()
}

fn check_acyclic(q: &IceQuiver) -> Result<(), CcError> {
    if q.is_good() && q.is_acyclic() {
        Ok(())
    } else {
        Err(CcError::NotAcyclic)
    }
}

impl<F: Field> QuiverRep<F> {
    pub fn new(quiver: IceQuiver, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self, CcError> {
        check_acyclic(&quiver)?;
        if dims.len() != quiver.m() {
            return Err(CcError::Shape(format!("{} dimensions for {} vertices", dims.len(), quiver.m())));
        }
        let arrows = arrow_list(&quiver);
        if maps.len() != arrows.len() {
            return Err(CcError::Shape(format!("{} maps for {} arrows", maps.len(), arrows.len())));
        }
        for (&(i, j), a) in arrows.iter().zip(&maps) {
            if a.rows() != dims[j] || a.cols() != dims[i] {
                return Err(CcError::Shape(format!(
                    "map {}->{} is {}x{}, expected {}x{}",
                    i + 1,
                    j + 1,
                    a.rows(),
                    a.cols(),
                    dims[j],
                    dims[i]
                )));
            }
        }
        Ok(QuiverRep { quiver, dims, arrows, maps })
    }

    /// The simple representation at `k`.
    pub fn simple(quiver: IceQuiver, k: usize) -> Result<Self, CcError> {
        let mut dims = vec![0; quiver.m()];
        dims[k] = 1;
        Self::zero_maps(quiver, dims)
    }

    /// All maps zero.
    pub fn zero_maps(quiver: IceQuiver, dims: Vec<usize>) -> Result<Self, CcError> {
        check_acyclic(&quiver)?;
        let maps = arrow_list(&quiver).iter().map(|&(i, j)| Matrix::zeros(dims[j], dims[i])).collect();
        Self::new(quiver, dims, maps)
    }

    pub fn quiver(&self) -> &IceQuiver {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> G) -> QuiverRep<G> {
        QuiverRep {
            quiver: self.quiver.clone(),
            dims: self.dims.clone(),
            arrows: self.arrows.clone(),
            maps: self.maps.iter().map(|a| a.map(&f)).collect(),
        }
    }

    /// Dimension of the endomorphism space: tuples `(phi_i)` with
    /// `phi_j V_a = V_a phi_i` for every arrow `a: i -> j`.
    pub fn end_dimension(&self) -> usize {
        let offsets: Vec<usize> = self
            .dims
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d * d;
                Some(o)
            })
            .collect();
        let unknowns: usize = self.dims.iter().map(|d| d * d).sum();
        let mut rows: Vec<Vec<F>> = Vec::new();
        for (&(i, j), a) in self.arrows.iter().zip(&self.maps) {
            let (di, dj) = (self.dims[i], self.dims[j]);
            // entry (r, c) of phi_j A - A phi_i
            for r in 0..dj {
                for c in 0..di {
                    let mut eq = vec![F::zero(); unknowns];
                    for s in 0..dj {
                        let idx = offsets[j] + r * dj + s;
                        eq[idx] = eq[idx].clone() + a[(s, c)].clone();
                    }
                    for s in 0..di {
                        let idx = offsets[i] + s * di + c;
                        eq[idx] = eq[idx].clone() - a[(r, s)].clone();
                    }
                    rows.push(eq);
                }
            }
        }
        if rows.is_empty() {
            return unknowns;
        }
        Matrix::from_rows(rows).nullity()
    }
}

impl QuiverRep<Rational> {
    /// Reduction modulo a prime; entries must be integers.
    pub fn reduce<G: Field>(&self) -> QuiverRep<G> {
        self.map_scalars(|q| {
            assert!(q.is_integer(), "reduction needs integer entries");
            G::from_bigint(q.numer())
        })
    }
}

/// The Euler form `sum_i d_i e_i - sum_{a: i -> j} d_i e_j`.
pub fn euler_form(q: &IceQuiver, d: &[i64], e: &[i64]) -> i64 {
    let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
    let off: i64 = arrow_list(q).iter().map(|&(i, j)| d[i] * e[j]).sum();
    diag - off
}

/// Random 0/1 representation of dimension `d` with one-dimensional endomorphism
/// space over the rationals, which for a root `d` makes it rigid and indecomposable.
pub fn generic_rigid_rep(
    q: &IceQuiver,
    d: &[usize],
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> Result<QuiverRep<Rational>, CcError> {
    check_acyclic(q)?;
    let arrows = arrow_list(q);
    for _ in 0..trials {
        let maps = arrows
            .iter()
            .map(|&(i, j)| {
                let entries: Vec<Vec<Rational>> = (0..d[j])
                    .map(|_| (0..d[i]).map(|_| Rational::from_integer(BigInt::from(rng.gen_range(0..2)))).collect())
                    .collect();
                if d[j] == 0 || d[i] == 0 {
                    Matrix::zeros(d[j], d[i])
                } else {
                    Matrix::from_rows(entries)
                }
            })
            .collect::<Vec<_>>();
        let rep = QuiverRep::new(q.clone(), d.to_vec(), maps)?;
        if rep.end_dimension() == 1 {
            return Ok(rep);
        }
    }
    Err(CcError::SearchExhausted { dim: d.to_vec(), trials })
}

/// Deterministic generator for randomized searches.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Fp;

    fn a2() -> IceQuiver {
        IceQuiver::parse_arrows(2, 2, "1>2").unwrap()
    }

    #[test]
    fn euler_form_values() {
        assert_eq!(euler_form(&a2(), &[1, 1], &[1, 1]), 1);
        assert_eq!(euler_form(&a2(), &[1, 1], &[0, 0]), 0);
        let a3 = IceQuiver::parse_arrows(3, 3, "1>2,2>3").unwrap();
        assert_eq!(euler_form(&a3, &[1, 1, 1], &[1, 1, 1]), 1);
    }

    #[test]
    fn end_dimensions() {
        let one = Matrix::from_rows(vec![vec![Rational::from_integer(1.into())]]);
        let p1 = QuiverRep::new(a2(), vec![1, 1], vec![one]).unwrap();
        assert_eq!(p1.end_dimension(), 1);
        let split = QuiverRep::<Rational>::zero_maps(a2(), vec![1, 1]).unwrap();
        assert_eq!(split.end_dimension(), 2);
        assert_eq!(QuiverRep::<Rational>::simple(a2(), 0).unwrap().end_dimension(), 1);
        assert_eq!(p1.reduce::<Fp<2>>().end_dimension(), 1);
    }

    #[test]
    fn rigid_search_d4_highest_root() {
        let d4 = IceQuiver::parse_arrows(4, 4, "1>2,3>2,4>2").unwrap();
        let mut rng = seeded_rng(42);
        let rep = generic_rigid_rep(&d4, &[1, 2, 1, 1], 1000, &mut rng).unwrap();
        assert_eq!(rep.end_dimension(), 1);
        let mut rng = seeded_rng(1);
        assert!(matches!(generic_rigid_rep(&d4, &[1, 1, 1, 2], 50, &mut rng), Err(CcError::SearchExhausted { .. })));
    }

    #[test]
    fn rejects_cycles_and_bad_shapes() {
        let tri = IceQuiver::parse_arrows(3, 3, "1>2,2>3,3>1").unwrap();
        assert_eq!(QuiverRep::<Rational>::zero_maps(tri, vec![1, 1, 1]), Err(CcError::NotAcyclic));
        assert!(matches!(QuiverRep::<Rational>::new(a2(), vec![1, 1], vec![]), Err(CcError::Shape(_))));
    }
}
