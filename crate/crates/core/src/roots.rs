//! Simply-laced root systems.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::quiver::{DynkinFamily, DynkinType};

/// Root data for a simply-laced Dynkin diagram.
///
/// Vertex numbering (0-based here, 1-based in the usual tables): `A_n` is the
/// path; `D_n` is the path `1..n-2` with `n-1` and `n` attached to `n-2`;
/// `E_n` follows Bourbaki, `1-3-4-5-...` with `2` attached to `4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    dynkin: Option<DynkinType>,
    incidence: Vec<Vec<i32>>,
    positive_roots: Vec<Vec<i32>>,
}

impl RootSystem {
    pub fn new(t: DynkinType) -> Self {
        let mut rs = Self::from_incidence(diagram_edges(t));
        rs.dynkin = Some(t);
        rs
    }

    /// Cached shared instance for `t`.
    pub fn shared(t: DynkinType) -> Arc<RootSystem> {
        static CACHE: OnceLock<Mutex<HashMap<DynkinType, Arc<RootSystem>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard.entry(t).or_insert_with(|| Arc::new(RootSystem::new(t))).clone()
    }

    /// Root system of an arbitrary simple graph given by its 0/1 adjacency matrix.
    ///
    /// Only finite (Dynkin) graphs make sense here; the reflection closure
    /// does not terminate otherwise, so the caller must check first.
    pub fn from_incidence(incidence: Vec<Vec<i32>>) -> Self {
        let n = incidence.len();
        let cartan: Vec<Vec<i32>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { -incidence[i][j] }).collect()).collect();
        let mut roots: BTreeSet<Vec<i32>> = BTreeSet::new();
        let mut stack: Vec<Vec<i32>> = (0..n).map(|i| unit(n, i)).collect();
        while let Some(r) = stack.pop() {
            if !roots.insert(r.clone()) {
                continue;
            }
            for i in 0..n {
                let pairing: i32 = (0..n).map(|j| cartan[i][j] * r[j]).sum();
                let mut s = r.clone();
                s[i] -= pairing;
                if s.iter().all(|&c| c >= 0) && s.iter().any(|&c| c > 0) && !roots.contains(&s) {
                    stack.push(s);
                }
            }
        }
        let mut positive_roots: Vec<Vec<i32>> = roots.into_iter().collect();
        positive_roots.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
        RootSystem { dynkin: None, incidence, positive_roots }
    }

    pub fn dynkin_type(&self) -> Option<DynkinType> {
        self.dynkin
    }

    pub fn rank(&self) -> usize {
        self.incidence.len()
    }

    pub fn incidence(&self) -> &[Vec<i32>] {
        &self.incidence
    }

    pub fn cartan(&self) -> Vec<Vec<i32>> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { -self.incidence[i][j] }).collect()).collect()
    }

    /// Positive roots in the simple-root basis, by height then reverse lex.
    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.positive_roots
    }

    pub fn coxeter_number(&self) -> usize {
        2 * self.positive_roots.len() / self.rank()
    }

    pub fn highest_root(&self) -> &[i32] {
        self.positive_roots.last().expect("nonempty root system")
    }

    /// Two-colouring of the diagram (a forest) with vertex 0 in class 0.
    /// For `A_n` this is the parity of the vertex index.
    pub fn bipartition(&self) -> Vec<usize> {
        let n = self.rank();
        let mut color = vec![usize::MAX; n];
        for root in 0..n {
            if color[root] != usize::MAX {
                continue;
            }
            color[root] = 0;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for w in 0..n {
                    if self.incidence[v][w] != 0 && color[w] == usize::MAX {
                        color[w] = 1 - color[v];
                        stack.push(w);
                    }
                }
            }
        }
        color
    }

    pub fn is_positive_root(&self, v: &[i32]) -> bool {
        self.positive_roots.binary_search_by(|r| height(r).cmp(&height(v)).then_with(|| v.cmp(r.as_slice()))).is_ok()
    }
}

pub fn positive_roots(t: DynkinType) -> Vec<Vec<i32>> {
    RootSystem::shared(t).positive_roots().to_vec()
}

pub fn coxeter_number(t: DynkinType) -> usize {
    RootSystem::shared(t).coxeter_number()
}

pub fn incidence_matrix(t: DynkinType) -> Vec<Vec<i32>> {
    RootSystem::shared(t).incidence().to_vec()
}

fn unit(n: usize, i: usize) -> Vec<i32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn height(r: &[i32]) -> i32 {
    r.iter().sum()
}

fn diagram_edges(t: DynkinType) -> Vec<Vec<i32>> {
    let n = t.rank();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match t.family() {
        DynkinFamily::A => edges.extend((1..n).map(|i| (i - 1, i))),
        DynkinFamily::D => {
            edges.extend((1..n - 2).map(|i| (i - 1, i)));
            edges.push((n - 3, n - 2));
            edges.push((n - 3, n - 1));
        }
        DynkinFamily::E => {
            edges.push((0, 2));
            edges.push((1, 3));
            edges.extend((3..n).map(|i| (i - 1, i)));
        }
    }
    let mut a = vec![vec![0; n]; n];
    for (i, j) in edges {
        a[i][j] = 1;
        a[j][i] = 1;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(positive_roots(DynkinType::a(1)), vec![vec![1]]);
        let a2: BTreeSet<_> = positive_roots(DynkinType::a(2)).into_iter().collect();
        assert_eq!(a2, [vec![1, 0], vec![0, 1], vec![1, 1]].into_iter().collect());
        assert_eq!(incidence_matrix(DynkinType::a(2)), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(incidence_matrix(DynkinType::a(1)), vec![vec![0]]);
        let d4 = incidence_matrix(DynkinType::d(4));
        let sums: Vec<i32> = d4.iter().map(|r| r.iter().sum()).collect();
        assert_eq!(sums, vec![1, 3, 1, 1]);
        assert_eq!(RootSystem::new(DynkinType::d(4)).bipartition(), vec![0, 1, 0, 0]);
        assert_eq!(RootSystem::new(DynkinType::a(4)).bipartition(), vec![0, 1, 0, 1]);
    }

    #[test]
    fn coxeter_numbers_match_table() {
        let table = [
            (DynkinType::a(1), 2),
            (DynkinType::a(2), 3),
            (DynkinType::a(5), 6),
            (DynkinType::a(8), 9),
            (DynkinType::d(4), 6),
            (DynkinType::d(5), 8),
            (DynkinType::d(8), 14),
            (DynkinType::e(6), 12),
            (DynkinType::e(7), 18),
            (DynkinType::e(8), 30),
        ];
        for (t, h) in table {
            let rs = RootSystem::shared(t);
            assert_eq!(rs.coxeter_number(), h, "{t}");
            assert_eq!(2 * rs.positive_roots().len(), h * t.rank(), "{t}");
        }
    }

    #[test]
    fn highest_root_is_maximal() {
        for t in [DynkinType::a(4), DynkinType::d(4), DynkinType::d(6), DynkinType::e(6), DynkinType::e(8)] {
            let rs = RootSystem::new(t);
            let cartan = rs.cartan();
            let maximal: Vec<&Vec<i32>> = rs
                .positive_roots()
                .iter()
                .filter(|r| {
                    (0..t.rank()).all(|i| {
                        let mut up = (*r).clone();
                        up[i] += 1;
                        !rs.is_positive_root(&up)
                    })
                })
                .collect();
            assert_eq!(maximal.len(), 1, "{t}");
            assert_eq!(maximal[0].as_slice(), rs.highest_root());
            // the highest root is dominant
            for row in &cartan {
                let p: i32 = row.iter().zip(rs.highest_root()).map(|(a, b)| a * b).sum();
                assert!(p >= 0, "{t}");
            }
        }
        assert_eq!(RootSystem::new(DynkinType::d(4)).highest_root(), &[1, 2, 1, 1]);
        assert_eq!(RootSystem::new(DynkinType::e(8)).highest_root(), &[2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn cartan_is_two_minus_incidence() {
        let rs = RootSystem::new(DynkinType::e(7));
        let c = rs.cartan();
        for i in 0..7 {
            for j in 0..7 {
                let expect = if i == j { 2 } else { -rs.incidence()[i][j] };
                assert_eq!(c[i][j], expect);
            }
        }
    }
}
