use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use super::ModelError;
use crate::quiver::IceQuiver;

/// A triangulation of the convex polygon with vertices `0..size`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    size: usize,
    diagonals: BTreeSet<(usize, usize)>,
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn crosses(d: (usize, usize), e: (usize, usize)) -> bool {
    let (a, b) = d;
    let (c, x) = e;
    let inside = |v: usize| a < v && v < b;
    let shares = a == c || a == x || b == c || b == x;
    !shares && inside(c) != inside(x)
}

impl Triangulation {
    pub fn new(size: usize, diagonals: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, ModelError> {
        if size < 3 {
            return Err(ModelError::OutOfRange { value: size, range: "polygon size >= 3" });
        }
        let diagonals: BTreeSet<(usize, usize)> = diagonals.into_iter().map(|(a, b)| ordered(a, b)).collect();
        for &(a, b) in &diagonals {
            if b >= size || b - a < 2 || (a == 0 && b == size - 1) {
                return Err(ModelError::InvalidTriangulation(format!("{a}{b} is not a diagonal")));
            }
        }
        if diagonals.len() != size - 3 {
            return Err(ModelError::InvalidTriangulation(format!(
                "{} diagonals, a {size}-gon needs {}",
                diagonals.len(),
                size - 3
            )));
        }
        for &d in &diagonals {
            if let Some(&e) = diagonals.iter().find(|&&e| crosses(d, e)) {
                return Err(ModelError::InvalidTriangulation(format!("{}{} crosses {}{}", d.0, d.1, e.0, e.1)));
            }
        }
        Ok(Triangulation { size, diagonals })
    }

    /// The fan at vertex 0: diagonals `0k` for `2 <= k <= size - 2`.
    pub fn fan(size: usize) -> Self {
        Self::new(size, (2..size - 1).map(|k| (0, k))).expect("fan is a triangulation")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn diagonals(&self) -> &BTreeSet<(usize, usize)> {
        &self.diagonals
    }

    pub fn sides(&self) -> Vec<(usize, usize)> {
        let mut s: Vec<(usize, usize)> = (0..self.size).map(|i| ordered(i, (i + 1) % self.size)).collect();
        s.sort();
        s
    }

    /// Quiver vertex order: diagonals (sorted), then sides (sorted).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.diagonals.iter().copied().chain(self.sides()).collect()
    }

    fn is_edge(&self, a: usize, b: usize) -> bool {
        let (a, b) = ordered(a, b);
        b - a == 1 || (a == 0 && b == self.size - 1) || self.diagonals.contains(&(a, b))
    }

    /// Triangles `(a, b, c)` with `a < b < c`.
    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let n = self.size;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if !self.is_edge(a, b) {
                    continue;
                }
                for c in b + 1..n {
                    if self.is_edge(a, c) && self.is_edge(b, c) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    /// Ice quiver with the diagonals mutable and the sides frozen. Each
    /// triangle `a < b < c` contributes `ab -> ac -> bc -> ab`, except arrows
    /// joining two sides.
    pub fn to_icequiver(&self) -> (IceQuiver, Vec<(usize, usize)>) {
        let edges = self.edges();
        let idx = |e: (usize, usize)| edges.iter().position(|&x| x == e).expect("edge of the triangulation");
        let mut arrows = Vec::new();
        for (a, b, c) in self.triangles() {
            let (ab, ac, bc) = (idx((a, b)), idx((a, c)), idx((b, c)));
            arrows.extend([(ab, ac), (ac, bc), (bc, ab)]);
        }
        let n = self.diagonals.len();
        arrows.retain(|&(s, t)| s < n || t < n);
        let q = IceQuiver::from_arrows(n, edges.len(), &arrows).expect("triangulation quiver is valid");
        (q, edges)
    }

    /// The diagonal replacing `d` in its quadrilateral.
    pub fn flipped_diagonal(&self, d: (usize, usize)) -> Result<(usize, usize), ModelError> {
        let d = ordered(d.0, d.1);
        if !self.diagonals.contains(&d) {
            return Err(ModelError::NotADiagonal(d));
        }
        let apexes: Vec<usize> =
            (0..self.size).filter(|&v| v != d.0 && v != d.1 && self.is_edge(v, d.0) && self.is_edge(v, d.1)).collect();
        match apexes.as_slice() {
            [p, q] => Ok(ordered(*p, *q)),
            _ => unreachable!("a diagonal borders exactly two triangles"),
        }
    }

    pub fn flip(&self, d: (usize, usize)) -> Result<Self, ModelError> {
        let new = self.flipped_diagonal(d)?;
        let mut diagonals = self.diagonals.clone();
        diagonals.remove(&ordered(d.0, d.1));
        diagonals.insert(new);
        Ok(Triangulation { size: self.size, diagonals })
    }

    /// Whether flipping `d` and mutating the quiver at `d` give the same
    /// ice quiver, with the new diagonal taking the place of `d`.
    pub fn flip_commutes_with_mutation(&self, d: (usize, usize)) -> Result<bool, ModelError> {
        let (q, edges) = self.to_icequiver();
        let k = edges.iter().position(|&e| e == ordered(d.0, d.1)).ok_or(ModelError::NotADiagonal(d))?;
        let mutated = q.mutate(k).map_err(crate::seeds::SeedError::from)?;
        let flipped = self.flip(d)?;
        let (fq, fedges) = flipped.to_icequiver();
        let new = self.flipped_diagonal(d)?;
        let labels: Vec<(usize, usize)> = edges.iter().map(|&e| if e == ordered(d.0, d.1) { new } else { e }).collect();
        let pos: Vec<usize> = labels.iter().map(|e| fedges.iter().position(|f| f == e).expect("same edges")).collect();
        Ok((0..labels.len()).all(|i| (0..labels.len()).all(|j| mutated.b(i, j) == fq.b(pos[i], pos[j]))))
    }
}

impl fmt::Debug for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Triangulation({}-gon; {self})", self.size)
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagonals.iter().map(|(a, b)| format!("{a}{b}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Every triangulation of the `size`-gon, by flips from the fan.
pub fn all_triangulations(size: usize) -> Vec<Triangulation> {
    let start = Triangulation::fan(size);
    let mut seen: HashSet<Triangulation> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(t) = queue.pop_front() {
        for &d in t.diagonals() {
            let next = t.flip(d).expect("diagonal of t");
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        out.push(t);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(edges: &[(usize, usize)], q: &IceQuiver) -> BTreeSet<String> {
        q.arrows()
            .into_iter()
            .map(|(s, t, _)| format!("{}{}>{}{}", edges[s].0, edges[s].1, edges[t].0, edges[t].1))
            .collect()
    }

    #[test]
    fn hexagon_fan_quiver() {
        let (q, edges) = Triangulation::fan(6).to_icequiver();
        let expected: BTreeSet<String> =
            ["04>05", "03>04", "45>04", "04>34", "02>03", "34>03", "03>23", "01>02", "23>02", "02>12"]
                .iter()
                .map(|s| s.to_string())
                .collect();
        assert_eq!(named(&edges, &q), expected);
        assert_eq!((q.n(), q.m()), (3, 9));
    }

    #[test]
    fn square() {
        let (q, edges) = Triangulation::fan(4).to_icequiver();
        assert_eq!(edges[0], (0, 2));
        assert_eq!(q.n(), 1);
        assert!(q.arrows().iter().all(|&(s, t, _)| s == 0 || t == 0));
        assert_eq!(q.arrows().len(), 4);
    }

    #[test]
    fn flips() {
        let t = Triangulation::fan(6);
        let f = t.flip((0, 3)).unwrap();
        assert_eq!(f.diagonals().iter().copied().collect::<Vec<_>>(), vec![(0, 2), (0, 4), (2, 4)]);
        assert_eq!(f.flip((2, 4)).unwrap(), t);
        assert!(t.flip((1, 3)).is_err());
    }

    #[test]
    fn validation() {
        assert!(Triangulation::new(6, [(0, 3), (1, 4), (0, 2)]).is_err());
        assert!(Triangulation::new(6, [(0, 2), (0, 3)]).is_err());
        assert!(Triangulation::new(6, [(0, 1), (0, 3), (0, 4)]).is_err());
        assert!(Triangulation::new(6, [(1, 3), (1, 4), (1, 5)]).is_ok());
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (3..=9).map(|s| all_triangulations(s).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn rotation_gives_isomorphic_quiver() {
        use crate::quiver::canonical_form;
        let t = Triangulation::new(7, [(0, 2), (2, 4), (0, 4), (4, 6)]).unwrap();
        let rotated = Triangulation::new(7, t.diagonals().iter().map(|&(a, b)| ((a + 1) % 7, (b + 1) % 7))).unwrap();
        assert_eq!(canonical_form(&t.to_icequiver().0).0, canonical_form(&rotated.to_icequiver().0).0);
    }

    #[test]
    fn commuting_squares_up_to_octagon() {
        for size in 4..=8 {
            for t in all_triangulations(size) {
                for &d in t.diagonals() {
                    assert!(t.flip_commutes_with_mutation(d).unwrap(), "{t:?} at {d:?}");
                }
            }
        }
    }
}
