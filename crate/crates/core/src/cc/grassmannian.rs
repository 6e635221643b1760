//! Point counts of quiver Grassmannians over prime fields.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{CcError, QuiverRep};
use crate::{Field, Fp, Matrix, Rational};

/// The first twelve primes; counts are taken at primes from this pool.
pub const PRIME_POOL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Largest number of subspace tuples enumerated for one `(V, e)`.
pub const SUBSPACE_GUARD: u128 = 1_000_000;

/// A subspace of `F^d` as a matrix in reduced row echelon form.
struct Subspace<F> {
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    fn contains(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = w[p].clone();
            if !f.is_zero() {
                for (x, r) in w.iter_mut().zip(row) {
                    *x = x.clone() - f.clone() * r.clone();
                }
            }
        }
        w.iter().all(|x| x.is_zero())
    }
}

fn subspace_count(q: u128, d: usize, e: usize) -> u128 {
    // Gaussian binomial [d choose e]_q
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..e {
        num = num.saturating_mul(q.pow((d - i) as u32) - 1);
        den = den.saturating_mul(q.pow((i + 1) as u32) - 1);
    }
    num / den
}

fn combinations(d: usize, e: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, e: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == e {
            out.push(cur.clone());
            return;
        }
        for c in start..d {
            cur.push(c);
            rec(c + 1, d, e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, e, &mut Vec::new(), &mut out);
    out
}

/// All `e`-dimensional subspaces of `F_p^d`.
fn subspaces<const P: u64>(d: usize, e: usize) -> Vec<Subspace<Fp<P>>> {
    let field: Vec<Fp<P>> = Fp::<P>::elements().collect();
    let mut out = Vec::new();
    for pivots in combinations(d, e) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (p + 1..d).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut rows = vec![vec![Fp::<P>::zero(); d]; e];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = Fp::one();
            }
            for (&(r, c), &x) in free.iter().zip(&digits) {
                rows[r][c] = field[x];
            }
            out.push(Subspace { rows, pivots: pivots.clone() });
            // odometer
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if digits[k] < field.len() {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
    }
    out
}

/// Number of subrepresentations `U` of `V` with `dim U_i = e_i`.
pub fn count_subreps<const P: u64>(rep: &QuiverRep<Fp<P>>, e: &[usize]) -> Result<u64, CcError> {
    let dims = rep.dims();
    if e.len() != dims.len() || e.iter().zip(dims).any(|(a, b)| a > b) {
        return Err(CcError::Shape(format!("subdimension {e:?} does not fit {dims:?}")));
    }
    let total = dims.iter().zip(e).fold(1u128, |acc, (&d, &k)| acc.saturating_mul(subspace_count(P as u128, d, k)));
    if total > SUBSPACE_GUARD {
        return Err(CcError::TooManySubspaces { count: total, guard: SUBSPACE_GUARD });
    }
    let choices: Vec<Vec<Subspace<Fp<P>>>> = dims.iter().zip(e).map(|(&d, &k)| subspaces::<P>(d, k)).collect();
    // vertices in topological order so each arrow is checked as soon as both ends are chosen
    let order = topological_order(rep);
    let mut chosen: Vec<usize> = vec![usize::MAX; dims.len()];
    Ok(extend(rep, &choices, &order, 0, &mut chosen))
}

fn extend<const P: u64>(
    rep: &QuiverRep<Fp<P>>,
    choices: &[Vec<Subspace<Fp<P>>>],
    order: &[usize],
    depth: usize,
    chosen: &mut Vec<usize>,
) -> u64 {
    if depth == order.len() {
        return 1;
    }
    let v = order[depth];
    let mut count = 0;
    for (idx, u) in choices[v].iter().enumerate() {
        chosen[v] = idx;
        let ok = rep.arrows().iter().zip(rep.maps()).all(|(&(i, j), a)| {
            if j != v || chosen[i] == usize::MAX {
                return true;
            }
            choices[i][chosen[i]].rows.iter().all(|w| u.contains(&a.apply(w)))
        });
        if ok {
            count += extend(rep, choices, order, depth + 1, chosen);
        }
    }
    chosen[v] = usize::MAX;
    count
}

fn topological_order<F: Field>(rep: &QuiverRep<F>) -> Vec<usize> {
    let m = rep.dims().len();
    let mut indeg = vec![0; m];
    for &(_, j) in rep.arrows() {
        indeg[j] += 1;
    }
    let mut ready: Vec<usize> = (0..m).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(m);
    while let Some(v) = ready.pop() {
        order.push(v);
        for &(i, j) in rep.arrows() {
            if i == v {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.push(j);
                }
            }
        }
    }
    order
}

/// Point count at `p`, or `None` when the reduction mod `p` is not rigid.
fn count_at_prime(rep: &QuiverRep<Rational>, e: &[usize], p: u64) -> Result<Option<u64>, CcError> {
    macro_rules! dispatch {
        ($($prime:literal),*) => {
            match p {
                $($prime => {
                    let r = rep.reduce::<Fp<$prime>>();
                    if r.end_dimension() != 1 {
                        return Ok(None);
                    }
                    count_subreps(&r, e).map(Some)
                })*
                _ => unreachable!("prime outside the pool"),
            }
        };
    }
    dispatch!(2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
}

/// Coefficients (constant term first) of the polynomial counting the points
/// of `Gr_e(V)` over `F_p`, interpolated from counts at good primes.
pub fn counting_polynomial(rep: &QuiverRep<Rational>, e: &[usize]) -> Result<Vec<BigInt>, CcError> {
    if rep.end_dimension() != 1 {
        return Err(CcError::NotRigid);
    }
    let degree: usize = rep.dims().iter().zip(e).map(|(&d, &k)| k * d.saturating_sub(k)).sum();
    let needed = degree + 1;
    let mut points: Vec<(u64, u64)> = Vec::new();
    for &p in PRIME_POOL.iter() {
        if let Some(c) = count_at_prime(rep, e, p)? {
            points.push((p, c));
        }
    }
    if points.len() < needed {
        return Err(CcError::NotEnoughPrimes { needed, found: points.len() });
    }
    // one retry with the next batch of primes
    for batch in points.chunks_exact(needed).take(2) {
        if let Some(coeffs) = interpolate(batch) {
            return Ok(coeffs);
        }
    }
    Err(CcError::NonIntegralInterpolation)
}

/// Euler characteristic of `Gr_e(V)`: the counting polynomial at 1.
pub fn euler_char(rep: &QuiverRep<Rational>, e: &[usize]) -> Result<BigInt, CcError> {
    if e.iter().all(|&k| k == 0) || e == rep.dims() {
        return Ok(BigInt::one());
    }
    Ok(counting_polynomial(rep, e)?.into_iter().sum())
}

/// Integer coefficients of the interpolating polynomial, if they are integers.
fn interpolate(points: &[(u64, u64)]) -> Option<Vec<BigInt>> {
    let n = points.len();
    let rows = points
        .iter()
        .map(|&(x, y)| {
            let x = Rational::from_integer(BigInt::from(x));
            let mut row: Vec<Rational> = Vec::with_capacity(n + 1);
            let mut pow = Rational::one();
            for _ in 0..n {
                row.push(pow.clone());
                pow *= &x;
            }
            row.push(Rational::from_integer(BigInt::from(y)));
            row
        })
        .collect();
    let (reduced, _) = Matrix::from_rows(rows).rref();
    (0..n)
        .map(|i| {
            let c = reduced[(i, n)].clone();
            c.is_integer().then(|| c.to_integer())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cc::{generic_rigid_rep, seeded_rng};
    use crate::quiver::IceQuiver;

    fn p1() -> QuiverRep<Rational> {
        let q = IceQuiver::parse_arrows(2, 2, "1>2").unwrap();
        let one = Matrix::from_rows(vec![vec![Rational::one()]]);
        QuiverRep::new(q, vec![1, 1], vec![one]).unwrap()
    }

    #[test]
    fn a2_counts() {
        let r = p1().reduce::<Fp<2>>();
        assert_eq!(count_subreps(&r, &[1, 0]).unwrap(), 0);
        assert_eq!(count_subreps(&r, &[0, 1]).unwrap(), 1);
        assert_eq!(count_subreps(&r, &[0, 0]).unwrap(), 1);
        assert_eq!(count_subreps(&r, &[1, 1]).unwrap(), 1);
        assert_eq!(euler_char(&p1(), &[0, 1]).unwrap(), BigInt::one());
        assert_eq!(euler_char(&p1(), &[1, 0]).unwrap(), BigInt::zero());
    }

    #[test]
    fn subspace_enumeration_matches_gaussian_binomials() {
        for (d, e) in [(3, 1), (3, 2), (4, 2), (2, 0), (2, 2)] {
            assert_eq!(subspaces::<3>(d, e).len() as u128, subspace_count(3, d, e));
        }
        assert_eq!(subspace_count(2, 4, 2), 35);
    }

    #[test]
    fn projective_line_counts() {
        // the central vertex has no outgoing arrows, so Gr_(0,1,0,0) is a projective line
        let d4 = IceQuiver::parse_arrows(4, 4, "1>2,3>2,4>2").unwrap();
        let rep = generic_rigid_rep(&d4, &[1, 2, 1, 1], 1000, &mut seeded_rng(7)).unwrap();
        for e in [[0, 1, 0, 0], [1, 2, 0, 0], [0, 2, 1, 1], [0, 1, 1, 0]] {
            let poly = counting_polynomial(&rep, &e).unwrap();
            assert!(poly.iter().all(|c| *c >= BigInt::zero()), "{e:?} {poly:?}");
        }
        let poly = counting_polynomial(&rep, &[0, 1, 0, 0]).unwrap();
        assert_eq!(poly, vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn guard_refuses_large_enumerations() {
        let q = IceQuiver::empty(1);
        let big = QuiverRep::<Fp<37>>::zero_maps(q, vec![6]).unwrap();
        assert!(matches!(count_subreps(&big, &[3]), Err(CcError::TooManySubspaces { .. })));
    }
}
