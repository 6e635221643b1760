//! Minors on the group of unitriangular matrices and total positivity.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use super::ModelError;
use crate::quiver::IceQuiver;
use crate::seeds::{mutate_values, Seed, SeedError};
use crate::{LaurentPoly, Matrix, Rational};

/// Index of the entry `g_{kl}` (0-based, `k < l`) among the strictly upper
/// entries of an `(n + 1) x (n + 1)` matrix, listed row by row.
fn entry_index(size: usize, k: usize, l: usize) -> usize {
    (0..k).map(|r| size - 1 - r).sum::<usize>() + (l - k - 1)
}

/// The generic unitriangular matrix with indeterminate entries `g_{kl}`.
fn generic_unitriangular(n: usize) -> Matrix<LaurentPoly> {
    let size = n + 1;
    let nvars = size * (size - 1) / 2;
    Matrix::from_fn(size, size, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => LaurentPoly::one(nvars),
        std::cmp::Ordering::Less => LaurentPoly::var(nvars, entry_index(size, i, j)),
        std::cmp::Ordering::Greater => LaurentPoly::zero(nvars),
    })
}

fn symbolic_minor(g: &Matrix<LaurentPoly>, rows: &[usize], cols: &[usize]) -> LaurentPoly {
    let nvars = g[(0, 0)].nvars();
    g.select(rows, cols).determinant_with(&LaurentPoly::zero(nvars), &LaurentPoly::one(nvars))
}

/// The initial seed of the unipotent group of `SL(n + 1)`, together with
/// the minors `f_{ij}` as polynomials in the matrix entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnipotentSeed {
    n: usize,
    quiver: IceQuiver,
    /// `(i, j)`, 1-based, of the initial function at each vertex.
    labels: Vec<(usize, usize)>,
    /// Current values as polynomials in the entries `g_{kl}`.
    values: Vec<LaurentPoly>,
}

/// `f_{ij}` is the minor on rows `i-k+1..=i` and columns `j..=j+k-1`,
/// `k = min(i, n + 2 - j)`: the largest square with `g_{ij}` in its lower left corner.
pub fn unipotent_initial_seed(n: usize) -> Result<UnipotentSeed, ModelError> {
    if !(1..=4).contains(&n) {
        return Err(ModelError::OutOfRange { value: n, range: "1..=4" });
    }
    let g = generic_unitriangular(n);
    let all: Vec<(usize, usize)> = (1..=n).flat_map(|i| (2..=n + 2 - i).map(move |j| (i, j))).collect();
    let frozen = |&(i, j): &(usize, usize)| i + j == n + 2;
    let labels: Vec<(usize, usize)> =
        all.iter().filter(|l| !frozen(l)).chain(all.iter().filter(|l| frozen(l))).copied().collect();
    let mutable = labels.iter().filter(|l| !frozen(l)).count();
    let pos = |i: usize, j: usize| labels.iter().position(|&l| l == (i, j));
    let mut arrows = Vec::new();
    for &(i, j) in &labels {
        let here = pos(i, j).expect("label");
        if let Some(r) = pos(i, j + 1) {
            arrows.push((here, r));
        }
        if let Some(up) = i.checked_sub(1).and_then(|u| pos(u, j)) {
            arrows.push((here, up));
        }
        if let Some(dl) = j.checked_sub(1).and_then(|l| pos(i + 1, l)) {
            arrows.push((here, dl));
        }
    }
    arrows.retain(|&(s, t)| s < mutable || t < mutable);
    let quiver = IceQuiver::from_arrows(mutable, labels.len(), &arrows).expect("valid quiver");
    let values = labels
        .iter()
        .map(|&(i, j)| {
            let k = i.min(n + 2 - j);
            let rows: Vec<usize> = (i - k..i).collect();
            let cols: Vec<usize> = (j - 1..j - 1 + k).collect();
            symbolic_minor(&g, &rows, &cols)
        })
        .collect();
    Ok(UnipotentSeed { n, quiver, labels, values })
}

impl UnipotentSeed {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn quiver(&self) -> &IceQuiver {
        &self.quiver
    }

    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    /// Values as polynomials in the entries `g_{kl}`, listed row by row.
    pub fn values(&self) -> &[LaurentPoly] {
        &self.values
    }

    /// The same seed with abstract initial variables `x1..xm`.
    pub fn abstract_seed(&self) -> Seed {
        Seed::initial(self.quiver.clone())
    }

    pub fn mutate(&self, k: usize) -> Result<Self, SeedError> {
        let values = mutate_values(&self.quiver, &self.values, k)?;
        Ok(UnipotentSeed { quiver: self.quiver.mutate(k)?, values, ..self.clone() })
    }

    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Self, SeedError> {
        seq.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Values at a concrete unitriangular matrix.
    pub fn evaluate(&self, g: &Matrix<Rational>) -> Result<Vec<Rational>, ModelError> {
        let point = upper_entries(self.n, g)?;
        self.values.iter().map(|v| v.eval(&point).map_err(|e| SeedError::from(e).into())).collect()
    }
}

fn upper_entries(n: usize, g: &Matrix<Rational>) -> Result<Vec<Rational>, ModelError> {
    let size = n + 1;
    if g.rows() != size || g.cols() != size {
        return Err(ModelError::Sample(format!("expected a {size} x {size} matrix")));
    }
    for i in 0..size {
        for j in 0..=i {
            let expect = if i == j { Rational::one() } else { Rational::zero() };
            if g[(i, j)] != expect {
                return Err(ModelError::Sample("matrix is not unitriangular".into()));
            }
        }
    }
    Ok((0..size).flat_map(|k| (k + 1..size).map(move |l| (k, l))).map(|(k, l)| g[(k, l)].clone()).collect())
}

/// Cluster criterion: every variable of the seed reached by `seq`, frozen
/// ones included, is positive at `g`.
pub fn total_positivity_test(n: usize, g: &Matrix<Rational>, seq: &[usize]) -> Result<bool, ModelError> {
    if !(1..=3).contains(&n) {
        return Err(ModelError::OutOfRange { value: n, range: "1..=3" });
    }
    let seed = unipotent_initial_seed(n)?.mutate_sequence(seq)?;
    Ok(seed.evaluate(g)?.iter().all(|v| *v > Rational::zero()))
}

/// Row and column index sets of a square minor, 0-based.
pub type MinorIndex = (Vec<usize>, Vec<usize>);

/// Row and column sets of the square minors that are not identically zero on
/// the unitriangular group of size `n + 1`.
pub fn nontrivial_minors(n: usize) -> Vec<MinorIndex> {
    static CACHE: OnceLock<Vec<Vec<MinorIndex>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| (0..=4).map(compute_nontrivial_minors).collect());
    cache.get(n).cloned().unwrap_or_else(|| compute_nontrivial_minors(n))
}

fn compute_nontrivial_minors(n: usize) -> Vec<MinorIndex> {
    let size = n + 1;
    let g = generic_unitriangular(n);
    let subsets: Vec<Vec<usize>> =
        (1u32..1 << size).map(|mask| (0..size).filter(|&i| mask >> i & 1 == 1).collect()).collect();
    let mut out = Vec::new();
    for rows in &subsets {
        for cols in subsets.iter().filter(|c| c.len() == rows.len()) {
            if !symbolic_minor(&g, rows, cols).is_zero() {
                out.push((rows.clone(), cols.clone()));
            }
        }
    }
    out
}

/// Total positivity by brute force: every minor not identically zero is positive.
pub fn total_positivity_oracle(g: &Matrix<Rational>) -> bool {
    let n = g.rows() - 1;
    nontrivial_minors(n).iter().all(|(rows, cols)| g.select(rows, cols).determinant() > Rational::zero())
}

/// `x_{i1}(t1) x_{i2}(t2) ...` along the reduced word `s1 s2 s1 s3 s2 s1 ...`
/// of the longest permutation, with `x_i(t) = I + t E_{i,i+1}`.
pub fn jacobi_product(n: usize, params: &[Rational]) -> Matrix<Rational> {
    let word: Vec<usize> = (1..=n).flat_map(|k| (1..=k).rev()).collect();
    assert_eq!(params.len(), word.len(), "one parameter per letter of the reduced word");
    let size = n + 1;
    word.iter().zip(params).fold(Matrix::identity(size), |acc, (&i, t)| {
        let mut x = Matrix::identity(size);
        x[(i - 1, i)] = t.clone();
        acc.mul_with(&x, &Rational::zero())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::render::parse_laurent;
    use num_bigint::BigInt;

    fn g(s: &str, n: usize) -> LaurentPoly {
        // entries named x1.. in row-major order of the strict upper triangle
        parse_laurent(s, n * (n + 1) / 2, "x").unwrap()
    }

    fn q(v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }

    #[test]
    fn small_seeds() {
        let s1 = unipotent_initial_seed(1).unwrap();
        assert_eq!((s1.quiver().n(), s1.quiver().m()), (0, 1));
        assert_eq!(s1.values(), &[g("x1", 1)]);
        let s2 = unipotent_initial_seed(2).unwrap();
        assert_eq!(s2.labels(), &[(1, 2), (1, 3), (2, 2)]);
        assert_eq!(s2.quiver().n(), 1);
        // g12 = x1, g13 = x2, g23 = x3
        assert_eq!(s2.values(), &[g("x1", 2), g("x2", 2), g("x1*x3 - x2", 2)]);
        assert_eq!(s2.mutate(0).unwrap().values()[0], g("x3", 2));
        assert!(unipotent_initial_seed(5).is_err());
    }

    #[test]
    fn n3_quiver_and_frozen_minors() {
        let s = unipotent_initial_seed(3).unwrap();
        assert_eq!(s.labels(), &[(1, 2), (1, 3), (2, 2), (1, 4), (2, 3), (3, 2)]);
        let expected = IceQuiver::parse_arrows(3, 6, "1>2,2>4,3>1,3>5,5>2,2>3,6>3").unwrap();
        assert_eq!(s.quiver(), &expected);
        // frozen values are the top-right-justified minors
        let gen = generic_unitriangular(3);
        for (k, &(i, j)) in s.labels().iter().enumerate().skip(3) {
            let rows: Vec<usize> = (0..i).collect();
            let cols: Vec<usize> = (j - 1..4).collect();
            assert_eq!(s.values()[k], symbolic_minor(&gen, &rows, &cols));
        }
    }

    #[test]
    fn size_one_positivity() {
        let m = |v| Matrix::from_rows(vec![vec![q(1), q(v)], vec![q(0), q(1)]]);
        assert!(total_positivity_test(1, &m(2), &[]).unwrap());
        assert!(!total_positivity_test(1, &m(0), &[]).unwrap());
        assert!(!total_positivity_test(1, &m(-1), &[]).unwrap());
        assert!(total_positivity_oracle(&m(2)));
        assert!(!total_positivity_oracle(&m(-1)));
    }

    #[test]
    fn jacobi_products_are_totally_positive() {
        for n in 1..=3 {
            let params: Vec<Rational> = (0..n * (n + 1) / 2).map(|k| q(k as i64 + 1)).collect();
            let m = jacobi_product(n, &params);
            assert!(total_positivity_oracle(&m));
            assert!(total_positivity_test(n, &m, &[]).unwrap());
        }
    }

    #[test]
    fn minor_counts() {
        // 2 x 2 unitriangular: only the lower-left entry vanishes identically
        assert_eq!(nontrivial_minors(1).len(), 4);
    }
}
