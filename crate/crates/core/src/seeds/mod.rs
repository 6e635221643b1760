//! Seeds, Y-seeds and exchange-graph exploration.

mod explore;
mod rank2;
mod yseed;

pub use explore::{cluster_variables, exchange_graph, ExchangeGraph, DEFAULT_SEED_BUDGET};
pub use rank2::{rank2_sequence, rank2_variable};
pub use yseed::YSeed;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::render::parse_laurent;
use crate::quiver::{canonical_form_colored, IceQuiver, QuiverError};
use crate::{ArithError, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("expected {expected} variables, got {got}")]
    VariableCount { expected: usize, got: usize },
    #[error("frozen position {} must hold x{}", k + 1, k + 1)]
    FrozenVariable { k: usize },
    #[error("bad mutation sequence: {0}")]
    Sequence(String),
}

/// A cluster seed: an ice quiver with one Laurent polynomial per vertex,
/// all expressed in the initial variables `x1..xm`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SeedJson", into = "SeedJson")]
pub struct Seed {
    quiver: IceQuiver,
    vars: Vec<LaurentPoly>,
}

/// Wire form: `{"v": 1, "quiver": {..}, "vars": ["x1", "(1 + x2)/x1", ..]}`.
#[derive(Serialize, Deserialize)]
pub struct SeedJson {
    #[serde(default = "one")]
    pub v: u32,
    pub quiver: IceQuiver,
    pub vars: Vec<String>,
}

fn one() -> u32 {
    1
}

impl TryFrom<SeedJson> for Seed {
    type Error = SeedError;
    fn try_from(j: SeedJson) -> Result<Self, SeedError> {
        let m = j.quiver.m();
        let vars = j.vars.iter().map(|s| parse_laurent(s, m, "x")).collect::<Result<Vec<_>, _>>()?;
        Seed::new(j.quiver, vars)
    }
}

impl From<Seed> for SeedJson {
    fn from(s: Seed) -> Self {
        SeedJson { v: 1, vars: s.vars.iter().map(|p| p.to_string()).collect(), quiver: s.quiver }
    }
}

impl Seed {
    /// The initial seed `(q, (x1, .., xm))`.
    pub fn initial(quiver: IceQuiver) -> Self {
        let m = quiver.m();
        let vars = (0..m).map(|i| LaurentPoly::var(m, i)).collect();
        Seed { quiver, vars }
    }

    pub fn new(quiver: IceQuiver, vars: Vec<LaurentPoly>) -> Result<Self, SeedError> {
        let m = quiver.m();
        if vars.len() != m {
            return Err(SeedError::VariableCount { expected: m, got: vars.len() });
        }
        if let Some(p) = vars.iter().find(|p| p.nvars() != m) {
            return Err(ArithError::VariableCountMismatch { left: m, right: p.nvars() }.into());
        }
        for k in quiver.n()..m {
            if vars[k] != LaurentPoly::var(m, k) {
                return Err(SeedError::FrozenVariable { k });
            }
        }
        Ok(Seed { quiver, vars })
    }

    pub fn quiver(&self) -> &IceQuiver {
        &self.quiver
    }

    pub fn vars(&self) -> &[LaurentPoly] {
        &self.vars
    }

    /// The cluster: variables at mutable vertices.
    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.vars[..self.quiver.n()]
    }

    /// The two monomials of the exchange relation at `k`: the product over
    /// arrows out of `k` and the product over arrows into `k`.
    pub fn exchange_products(&self, k: usize) -> Result<(LaurentPoly, LaurentPoly), SeedError> {
        exchange_products(&self.quiver, &self.vars, k)
    }

    /// Seed mutation at the mutable vertex `k`.
    pub fn mutate(&self, k: usize) -> Result<Self, SeedError> {
        Ok(Seed { quiver: self.quiver.mutate(k)?, vars: mutate_values(&self.quiver, &self.vars, k)? })
    }

    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Self, SeedError> {
        seq.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    /// Canonical representative up to relabeling of mutable vertices.
    ///
    /// Cluster variables within a seed are distinct, so ordering vertices by
    /// their variables pins the relabeling down; frozen vertices stay fixed.
    pub fn canonical(&self) -> Seed {
        let mut order: Vec<&LaurentPoly> = self.cluster().iter().collect();
        order.sort();
        order.dedup();
        let n = self.quiver.n();
        let colors: Vec<u64> = (0..self.quiver.m())
            .map(|i| if i < n { order.binary_search(&&self.vars[i]).expect("present") as u64 } else { i as u64 })
            .collect();
        let (quiver, perm) = canonical_form_colored(&self.quiver, &colors);
        let vars = perm.iter().map(|&old| self.vars[old].clone()).collect();
        Seed { quiver, vars }
    }

    /// Product of `cluster[i]^exponents[i]`.
    pub fn cluster_monomial(&self, exponents: &[u32]) -> Result<LaurentPoly, SeedError> {
        let n = self.quiver.n();
        if exponents.len() != n {
            return Err(SeedError::VariableCount { expected: n, got: exponents.len() });
        }
        Ok(exponents
            .iter()
            .zip(self.cluster())
            .fold(LaurentPoly::one(self.quiver.m()), |acc, (&e, v)| &acc * &v.pow(e)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("seed serializes")
    }
}

impl fmt::Debug for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seed({:?}, {})", self.quiver, self)
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vars.iter().map(|v| v.to_string()).collect();
        write!(f, "( {} )", parts.join(" , "))
    }
}

/// Exchange monomials at `k` for an arbitrary assignment of values to the vertices.
pub fn exchange_products(
    q: &IceQuiver,
    values: &[LaurentPoly],
    k: usize,
) -> Result<(LaurentPoly, LaurentPoly), SeedError> {
    if k >= q.m() {
        return Err(QuiverError::VertexOutOfRange { k, m: q.m() }.into());
    }
    if values.len() != q.m() {
        return Err(SeedError::VariableCount { expected: q.m(), got: values.len() });
    }
    let nvars = values[k].nvars();
    let mut out = LaurentPoly::one(nvars);
    let mut inc = LaurentPoly::one(nvars);
    for (j, v) in values.iter().enumerate() {
        let b = q.b(k, j);
        if b > 0 {
            out = out.checked_mul(&v.pow(b as u32))?;
        } else if b < 0 {
            inc = inc.checked_mul(&v.pow((-b) as u32))?;
        }
    }
    Ok((out, inc))
}

/// The exchange relation at `k` applied to arbitrary values, e.g. functions
/// in some other set of variables. Fails if the division is not exact.
pub fn mutate_values(q: &IceQuiver, values: &[LaurentPoly], k: usize) -> Result<Vec<LaurentPoly>, SeedError> {
    let (out, inc) = exchange_products(q, values, k)?;
    if q.is_frozen(k) {
        return Err(QuiverError::FrozenVertex { k }.into());
    }
    let mut next = values.to_vec();
    next[k] = out.checked_add(&inc)?.div_exact(&values[k])?;
    Ok(next)
}

/// Denominator vector of a cluster variable over the first `n` variables.
///
/// Initial variables `x_i` get `-e_i`; otherwise `d_i` is the largest power
/// of `x_i` in the denominator.
pub fn denominator_vector(p: &LaurentPoly, n: usize) -> Vec<i32> {
    if let Some(i) = (0..n).find(|&i| *p == LaurentPoly::var(p.nvars(), i)) {
        let mut d = vec![0; n];
        d[i] = -1;
        return d;
    }
    let min = p.min_exponents();
    (0..n).map(|i| (-min[i]).max(0)).collect()
}

/// Parses a 1-based mutation sequence such as `"1,2,1"` into 0-based vertices.
pub fn parse_mutation_sequence(s: &str) -> Result<Vec<usize>, SeedError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(SeedError::Sequence(format!("{t:?} is not a vertex number"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::render::parse_laurent;

    fn lp(s: &str, m: usize) -> LaurentPoly {
        parse_laurent(s, m, "x").unwrap()
    }

    fn a3() -> IceQuiver {
        IceQuiver::parse_arrows(3, 3, "1>2,2>3").unwrap()
    }

    #[test]
    fn a3_first_mutations() {
        let s = Seed::initial(a3());
        let s1 = s.mutate(0).unwrap();
        assert_eq!(s1.quiver(), &IceQuiver::parse_arrows(3, 3, "2>1,2>3").unwrap());
        assert_eq!(s1.vars(), &[lp("(1 + x2)/x1", 3), lp("x2", 3), lp("x3", 3)]);
        let s2 = s.mutate(1).unwrap();
        assert_eq!(s2.quiver(), &IceQuiver::parse_arrows(3, 3, "2>1,3>2,1>3").unwrap());
        assert_eq!(s2.vars()[1], lp("(x1 + x3)/x2", 3));
        assert_eq!(s1.mutate(0).unwrap(), s);
    }

    #[test]
    fn frozen_variables_enter_exchange() {
        let q = IceQuiver::parse_arrows(1, 2, "2>1").unwrap();
        let s = Seed::initial(q).mutate(0).unwrap();
        assert_eq!(s.vars()[0], lp("(1 + x2)/x1", 2));
        assert!(Seed::initial(s.quiver().clone()).mutate(1).is_err());
    }

    #[test]
    fn canonical_forgets_labels() {
        let s = Seed::initial(a3()).mutate_sequence(&[0, 1]).unwrap();
        let p = [2, 0, 1];
        let relabeled =
            Seed { quiver: s.quiver().permuted(&p), vars: p.iter().map(|&i| s.vars()[i].clone()).collect() };
        assert_eq!(relabeled.canonical(), s.canonical());
        assert_ne!(Seed::initial(a3()).canonical(), s.canonical());
    }

    #[test]
    fn monomials_and_denominators() {
        let q = IceQuiver::parse_arrows(2, 2, "1>2").unwrap();
        let s = Seed::initial(q);
        assert_eq!(s.cluster_monomial(&[0, 0]).unwrap(), LaurentPoly::one(2));
        assert_eq!(s.cluster_monomial(&[2, 1]).unwrap(), lp("x1^2*x2", 2));
        let s1 = s.mutate(0).unwrap();
        assert_eq!(s1.cluster_monomial(&[1, 1]).unwrap(), lp("(x2 + x2^2)/x1", 2));
        assert_eq!(denominator_vector(&lp("(x1 + 1 + x2)/(x1*x2)", 2), 2), vec![1, 1]);
        assert_eq!(denominator_vector(&lp("(1 + x2)/x1", 2), 2), vec![1, 0]);
        assert_eq!(denominator_vector(&lp("x2", 2), 2), vec![0, -1]);
    }

    #[test]
    fn json_round_trip() {
        let s = Seed::initial(a3()).mutate_sequence(&[0, 2, 1]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("\"v\":1"));
        let back: Seed = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn sequences() {
        assert_eq!(parse_mutation_sequence("1,2, 1").unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_mutation_sequence("").unwrap(), Vec::<usize>::new());
        assert!(parse_mutation_sequence("0").is_err());
        assert!(parse_mutation_sequence("1,,2").is_err());
    }
}
