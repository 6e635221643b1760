//! The Caldero–Chapoton map and its comparison with cluster variables.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::{arrow_list, euler_char, generic_rigid_rep, seeded_rng, CcError, QuiverRep};
use crate::quiver::{is_dynkin, IceQuiver};
use crate::roots::RootSystem;
use crate::seeds::{cluster_variables, denominator_vector, DEFAULT_SEED_BUDGET};
use crate::{LaurentPoly, Rational};

/// `CC(V) = sum_e chi(Gr_e V) prod_i x_i^(sum_{j->i} e_j + sum_{i->j} (d_j - e_j) - d_i)`.
pub fn cc(rep: &QuiverRep<Rational>) -> Result<LaurentPoly, CcError> {
    let q = rep.quiver();
    let m = q.m();
    let d = rep.dims();
    let arrows = arrow_list(q);
    let mut total = LaurentPoly::zero(m);
    let mut e = vec![0usize; m];
    loop {
        let chi = euler_char(rep, &e)?;
        if !chi.is_zero() {
            let mut exp: Vec<i32> = d.iter().map(|&x| -(x as i32)).collect();
            for &(i, j) in &arrows {
                exp[j] += e[i] as i32;
                exp[i] += (d[j] - e[j]) as i32;
            }
            total = &total + &LaurentPoly::monomial(m, exp, chi);
        }
        // next e <= d
        let mut k = 0;
        while k < m {
            e[k] += 1;
            if e[k] <= d[k] {
                break;
            }
            e[k] = 0;
            k += 1;
        }
        if k == m {
            break;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CcRow {
    pub root: Vec<i32>,
    pub denominator: Vec<i32>,
    pub value: LaurentPoly,
    /// Whether the value is a non-initial cluster variable.
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CcReport {
    pub rows: Vec<CcRow>,
    /// Non-initial cluster variables not produced by any root.
    pub missing: Vec<LaurentPoly>,
    pub rng_seed: u64,
}

impl CcReport {
    pub fn ok(&self) -> bool {
        self.missing.is_empty() && self.rows.iter().all(|r| r.matched && r.denominator == r.root)
    }
}

/// Applies `cc` to one rigid indecomposable per positive root and compares
/// with the non-initial cluster variables found by mutation.
pub fn cc_bijection_check(q: &IceQuiver, rng_seed: u64) -> Result<CcReport, CcError> {
    if is_dynkin(q).is_none() {
        return Err(CcError::NotDynkin);
    }
    let n = q.n();
    let incidence: Vec<Vec<i32>> = (0..n).map(|i| (0..n).map(|j| q.b(i, j).abs()).collect()).collect();
    let roots = RootSystem::from_incidence(incidence);
    let (vars, _) = cluster_variables(q, DEFAULT_SEED_BUDGET)?;
    let initial: BTreeSet<LaurentPoly> = (0..n).map(|i| LaurentPoly::var(n, i)).collect();
    let mut remaining: BTreeSet<LaurentPoly> = vars.difference(&initial).cloned().collect();
    let mut rng = seeded_rng(rng_seed);
    let mut rows = Vec::new();
    for root in roots.positive_roots() {
        let d: Vec<usize> = root.iter().map(|&c| c as usize).collect();
        let rep = generic_rigid_rep(q, &d, 1000, &mut rng)?;
        let value = cc(&rep)?;
        let matched = remaining.remove(&value) || vars.contains(&value) && !initial.contains(&value);
        rows.push(CcRow { root: root.clone(), denominator: denominator_vector(&value, n), value, matched });
    }
    Ok(CcReport { rows, missing: remaining.into_iter().collect(), rng_seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::render::parse_laurent;
    use crate::Matrix;
    use num_traits::One;

    fn lp(s: &str) -> LaurentPoly {
        parse_laurent(s, 2, "x").unwrap()
    }

    #[test]
    fn a2_values() {
        let q = IceQuiver::parse_arrows(2, 2, "1>2").unwrap();
        let s1 = QuiverRep::simple(q.clone(), 0).unwrap();
        let s2 = QuiverRep::simple(q.clone(), 1).unwrap();
        let p1 = QuiverRep::new(q.clone(), vec![1, 1], vec![Matrix::from_rows(vec![vec![Rational::one()]])]).unwrap();
        assert_eq!(cc(&s1).unwrap(), lp("(1 + x2)/x1"));
        assert_eq!(cc(&p1).unwrap(), lp("(x1 + 1 + x2)/(x1*x2)"));
        assert_eq!(cc(&s2).unwrap(), lp("(1 + x1)/x2"));
        let zero = QuiverRep::<Rational>::zero_maps(q, vec![0, 0]).unwrap();
        assert_eq!(cc(&zero).unwrap(), LaurentPoly::one(2));
    }

    #[test]
    fn a1_single_value() {
        let q = IceQuiver::empty(1);
        let s = QuiverRep::<Rational>::simple(q.clone(), 0).unwrap();
        assert_eq!(cc(&s).unwrap(), parse_laurent("2/x1", 1, "x").unwrap());
        assert!(cc_bijection_check(&q, 0).unwrap().ok());
    }

    #[test]
    fn bijection_a3() {
        let q = IceQuiver::parse_arrows(3, 3, "1>2,2>3").unwrap();
        let report = cc_bijection_check(&q, 42).unwrap();
        assert_eq!(report.rows.len(), 6);
        assert!(report.ok(), "{report:?}");
    }

    #[test]
    fn needs_dynkin() {
        let q = IceQuiver::parse_arrows(2, 2, "2*1>2").unwrap();
        assert_eq!(cc_bijection_check(&q, 0).unwrap_err(), CcError::NotDynkin);
    }
}
