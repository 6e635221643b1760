//! Ice quivers stored as integer skew-symmetric exchange matrices.
//!
//! Vertices are 0-based in the Rust API (`0..m`, frozen vertices are
//! `n..m`); the JSON form and the textual arrow syntax are 1-based.

mod canon;
mod class;
mod dynkin;

pub use canon::{canonical_form, canonical_form_colored};
pub use class::{detect_finite_type, mutation_class, FiniteTypeVerdict, MutationClass, DEFAULT_CLASS_BUDGET};
pub use dynkin::{is_dynkin, DynkinFamily, DynkinType};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("matrix shape: {0}")]
    Shape(String),
    #[error("b[{}][{}] = {} but b[{}][{}] = {}: matrix is not skew-symmetric", i + 1, j + 1, bij, j + 1, i + 1, bji)]
    NotSkewSymmetric { i: usize, j: usize, bij: i32, bji: i32 },
    #[error("b[{}][{}] = {} joins two frozen vertices", i + 1, j + 1, bij)]
    FrozenArrow { i: usize, j: usize, bij: i32 },
    #[error("vertex {} out of range 1..={}", k + 1, m)]
    VertexOutOfRange { k: usize, m: usize },
    #[error("vertex {} is frozen", k + 1)]
    FrozenVertex { k: usize },
    #[error("quiver already has frozen vertices")]
    HasFrozenVertices,
    #[error("quiver is not connected")]
    Disconnected,
    #[error("cannot parse arrows: {0}")]
    ArrowSyntax(String),
}

/// Ice quiver of type `(n, m)`: `n` mutable vertices followed by `m - n`
/// frozen ones, with `b[i][j]` = #arrows `i -> j` minus #arrows `j -> i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "QuiverJson", into = "QuiverJson")]
pub struct IceQuiver {
    n: usize,
    m: usize,
    b: Vec<i32>,
}

/// Wire form: `{"v": 1, "n": .., "m": .., "b": [[..], ..]}`.
#[derive(Serialize, Deserialize)]
pub struct QuiverJson {
    #[serde(default = "schema_version")]
    pub v: u32,
    pub n: usize,
    pub m: usize,
    pub b: Vec<Vec<i32>>,
}

fn schema_version() -> u32 {
    1
}

impl TryFrom<QuiverJson> for IceQuiver {
    type Error = QuiverError;
    fn try_from(j: QuiverJson) -> Result<Self, QuiverError> {
        IceQuiver::new(j.n, j.m, j.b)
    }
}

impl From<IceQuiver> for QuiverJson {
    fn from(q: IceQuiver) -> Self {
        QuiverJson { v: 1, n: q.n, m: q.m, b: q.rows() }
    }
}

impl IceQuiver {
    /// Builds and validates a quiver from its row-major matrix.
    pub fn new(n: usize, m: usize, rows: Vec<Vec<i32>>) -> Result<Self, QuiverError> {
        if n > m {
            return Err(QuiverError::Shape(format!("n = {n} exceeds m = {m}")));
        }
        if rows.len() != m {
            return Err(QuiverError::Shape(format!("expected {m} rows, found {}", rows.len())));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != m) {
            return Err(QuiverError::Shape(format!("row {} has {} entries, expected {m}", i + 1, r.len())));
        }
        let q = IceQuiver { n, m, b: rows.into_iter().flatten().collect() };
        q.validate()?;
        Ok(q)
    }

    /// A quiver without frozen vertices.
    pub fn good(rows: Vec<Vec<i32>>) -> Result<Self, QuiverError> {
        let n = rows.len();
        Self::new(n, n, rows)
    }

    /// Builds a quiver from 0-based arrows `(source, target)`, repeated for multiplicity.
    pub fn from_arrows(n: usize, m: usize, arrows: &[(usize, usize)]) -> Result<Self, QuiverError> {
        let mut b = vec![0; m * m];
        for &(s, t) in arrows {
            for k in [s, t] {
                if k >= m {
                    return Err(QuiverError::VertexOutOfRange { k, m });
                }
            }
            if s == t {
                return Err(QuiverError::ArrowSyntax(format!("loop at vertex {}", s + 1)));
            }
            b[s * m + t] += 1;
            b[t * m + s] -= 1;
        }
        let q = IceQuiver { n, m, b };
        q.validate()?;
        Ok(q)
    }

    /// Parses 1-based arrows such as `"1>2,2>3"` (`"2*1>2"` for a double arrow).
    pub fn parse_arrows(n: usize, m: usize, spec: &str) -> Result<Self, QuiverError> {
        let mut arrows = Vec::new();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (mult, body) = match part.split_once('*') {
                Some((k, rest)) => {
                    (k.trim().parse::<usize>().map_err(|_| QuiverError::ArrowSyntax(part.to_string()))?, rest)
                }
                None => (1, part),
            };
            let (s, t) = body.split_once('>').ok_or_else(|| QuiverError::ArrowSyntax(part.to_string()))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&v| v >= 1)
                    .ok_or_else(|| QuiverError::ArrowSyntax(part.to_string()))
            };
            let (s, t) = (parse(s)? - 1, parse(t)? - 1);
            arrows.extend(std::iter::repeat_n((s, t), mult));
        }
        Self::from_arrows(n, m, &arrows)
    }

    /// The quiver with `n` vertices and no arrows.
    pub fn empty(n: usize) -> Self {
        IceQuiver { n, m: n, b: vec![0; n * n] }
    }

    fn validate(&self) -> Result<(), QuiverError> {
        for i in 0..self.m {
            for j in 0..self.m {
                let (bij, bji) = (self.b[i * self.m + j], self.b[j * self.m + i]);
                if bij != -bji {
                    return Err(QuiverError::NotSkewSymmetric { i, j, bij, bji });
                }
                if i >= self.n && j >= self.n && bij != 0 {
                    return Err(QuiverError::FrozenArrow { i, j, bij });
                }
            }
        }
        Ok(())
    }

    /// Number of mutable vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of vertices.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn b(&self, i: usize, j: usize) -> i32 {
        self.b[i * self.m + j]
    }

    pub fn row(&self, i: usize) -> &[i32] {
        &self.b[i * self.m..(i + 1) * self.m]
    }

    pub fn rows(&self) -> Vec<Vec<i32>> {
        (0..self.m).map(|i| self.row(i).to_vec()).collect()
    }

    /// The flat row-major matrix.
    pub fn matrix(&self) -> &[i32] {
        &self.b
    }

    pub fn is_frozen(&self, k: usize) -> bool {
        k >= self.n
    }

    pub fn is_good(&self) -> bool {
        self.n == self.m
    }

    /// Arrows as `(source, target, multiplicity)`, 0-based, in row-major order.
    pub fn arrows(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.m {
            for j in 0..self.m {
                let v = self.b(i, j);
                if v > 0 {
                    out.push((i, j, v as u32));
                }
            }
        }
        out
    }

    /// Matrix mutation at the mutable vertex `k`.
    pub fn mutate(&self, k: usize) -> Result<Self, QuiverError> {
        if k >= self.m {
            return Err(QuiverError::VertexOutOfRange { k, m: self.m });
        }
        if self.is_frozen(k) {
            return Err(QuiverError::FrozenVertex { k });
        }
        let m = self.m;
        let mut b = self.b.clone();
        for i in 0..m {
            for j in 0..m {
                let idx = i * m + j;
                if i == k || j == k {
                    b[idx] = -self.b[idx];
                } else if i >= self.n && j >= self.n {
                    b[idx] = 0;
                } else {
                    let (bik, bkj) = (self.b(i, k), self.b(k, j));
                    b[idx] = self.b[idx] + bik.signum() * (bik * bkj).max(0);
                }
            }
        }
        Ok(IceQuiver { n: self.n, m, b })
    }

    /// Applies mutations in order.
    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Self, QuiverError> {
        seq.iter().try_fold(self.clone(), |q, &k| q.mutate(k))
    }

    /// Adds a frozen vertex `n + i` with one arrow `n + i -> i` for every mutable `i`.
    pub fn principal_extension(&self) -> Result<Self, QuiverError> {
        if !self.is_good() {
            return Err(QuiverError::HasFrozenVertices);
        }
        let n = self.n;
        let m = 2 * n;
        let mut b = vec![0; m * m];
        for i in 0..n {
            for j in 0..n {
                b[i * m + j] = self.b(i, j);
            }
            b[(n + i) * m + i] = 1;
            b[i * m + n + i] = -1;
        }
        Ok(IceQuiver { n, m, b })
    }

    /// The full subquiver on the mutable vertices.
    pub fn principal_part(&self) -> Self {
        let n = self.n;
        let b = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| self.b(i, j)).collect();
        IceQuiver { n, m: n, b }
    }

    /// Relabels so that new vertex `r` is old vertex `perm[r]`.
    ///
    /// Panics if the permutation moves a vertex across the mutable/frozen split.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.m);
        assert!(
            perm.iter().enumerate().all(|(r, &old)| (r < self.n) == (old < self.n)),
            "permutation must preserve the frozen set"
        );
        let m = self.m;
        let b = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| self.b(perm[i], perm[j])).collect();
        IceQuiver { n: self.n, m, b }
    }

    /// Connectivity of the underlying undirected graph; the empty quiver is not connected.
    pub fn is_connected(&self) -> bool {
        if self.m == 0 {
            return false;
        }
        let mut seen = vec![false; self.m];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..self.m {
                if !seen[w] && self.b(v, w) != 0 {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Whether the quiver has an oriented cycle.
    pub fn is_acyclic(&self) -> bool {
        let m = self.m;
        let mut indeg: Vec<usize> = (0..m).map(|j| (0..m).filter(|&i| self.b(i, j) > 0).count()).collect();
        let mut ready: Vec<usize> = (0..m).filter(|&v| indeg[v] == 0).collect();
        let mut visited = 0;
        while let Some(v) = ready.pop() {
            visited += 1;
            for w in 0..m {
                if self.b(v, w) > 0 {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        ready.push(w);
                    }
                }
            }
        }
        visited == m
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("quiver serializes")
    }
}

impl fmt::Debug for IceQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IceQuiver(n={}, m={}, arrows=[{}])", self.n, self.m, self)
    }
}

/// Arrow list in the 1-based `"2*1>2,2>3"` syntax accepted by [`IceQuiver::parse_arrows`].
impl fmt::Display for IceQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .arrows()
            .into_iter()
            .map(|(s, t, k)| if k == 1 { format!("{}>{}", s + 1, t + 1) } else { format!("{k}*{}>{}", s + 1, t + 1) })
            .collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrows(n: usize, spec: &str) -> IceQuiver {
        IceQuiver::parse_arrows(n, n, spec).unwrap()
    }

    #[test]
    fn triangle_mutates_to_acyclic_partner() {
        let triangle = arrows(3, "2>1,1>3,3>2");
        assert_eq!(triangle.mutate(0).unwrap(), arrows(3, "1>2,3>1"));
    }

    #[test]
    fn path_mutation_at_middle() {
        let q = arrows(3, "1>2,2>3");
        assert_eq!(q.mutate(1).unwrap(), arrows(3, "2>1,3>2,1>3"));
        assert_eq!(q.mutate(1).unwrap().mutate(1).unwrap(), q);
    }

    #[test]
    fn principal_extension_of_a2() {
        let q = arrows(2, "1>2");
        let ext = q.principal_extension().unwrap();
        assert_eq!(ext, IceQuiver::parse_arrows(2, 4, "1>2,3>1,4>2").unwrap());
        assert_eq!(ext.principal_part(), q);
        let single = IceQuiver::empty(1).principal_extension().unwrap();
        assert_eq!(single, IceQuiver::parse_arrows(1, 2, "2>1").unwrap());
        assert_eq!(ext.principal_extension(), Err(QuiverError::HasFrozenVertices));
    }

    #[test]
    fn mutation_errors_and_frozen_rule() {
        let ext = arrows(2, "1>2").principal_extension().unwrap();
        assert_eq!(ext.mutate(2), Err(QuiverError::FrozenVertex { k: 2 }));
        assert_eq!(ext.mutate(7), Err(QuiverError::VertexOutOfRange { k: 7, m: 4 }));
        // 2 -> 1 -> 3 with 2 and 3 frozen: the composite arrow 2 -> 3 is dropped
        let q = IceQuiver::parse_arrows(1, 3, "2>1,1>3").unwrap();
        let mu = q.mutate(0).unwrap();
        assert_eq!(mu.b(1, 2), 0, "no arrow between frozen vertices is introduced");
    }

    #[test]
    fn json_validation_names_failing_entry() {
        let err = serde_json::from_str::<IceQuiver>(r#"{"n":2,"m":2,"b":[[0,1],[0,0]]}"#).unwrap_err();
        assert!(err.to_string().contains("b[1][2] = 1 but b[2][1] = 0"), "{err}");
        let err = serde_json::from_str::<IceQuiver>(r#"{"n":1,"m":3,"b":[[0,1,0],[-1,0,1],[0,-1,0]]}"#).unwrap_err();
        assert!(err.to_string().contains("frozen"), "{err}");
        let q: IceQuiver = serde_json::from_str(r#"{"n":2,"m":2,"b":[[0,1],[-1,0]]}"#).unwrap();
        assert_eq!(serde_json::from_value::<IceQuiver>(q.to_json()).unwrap(), q);
    }

    #[test]
    fn empty_quiver_is_legal() {
        let q = IceQuiver::empty(0);
        assert_eq!(q.m(), 0);
        assert_eq!(q.mutate_sequence(&[]).unwrap(), q);
        assert_eq!(canonical_form(&q).0, q);
    }
}
