//! Paths, potentials and cyclic derivatives.
//!
//! Paths are written right to left, as compositions: the word `c.b.a`
//! means `a` first, then `b`, then `c`. For a cycle `p = u a v` the cyclic
//! derivative contributes the path `v u`, which starts at the target of
//! `a`, runs along `u` and then `v`, and ends at the source of `a`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::quiver::IceQuiver;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PotentialError {
    #[error("cannot parse {0:?}")]
    Syntax(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("duplicate arrow name {0:?}")]
    DuplicateArrow(String),
    #[error("vertex {vertex} out of range 1..={count}")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("arrows {0} and {1} do not compose")]
    NotComposable(String, String),
    #[error("path is not a cycle")]
    NotACycle,
    #[error("arrows do not match the quiver")]
    QuiverMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedArrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A quiver whose arrows carry names, so that parallel arrows are distinguished.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedQuiver {
    vertices: usize,
    arrows: Vec<NamedArrow>,
}

impl NamedQuiver {
    pub fn new(vertices: usize, arrows: Vec<NamedArrow>) -> Result<Self, PotentialError> {
        for (k, a) in arrows.iter().enumerate() {
            if arrows[..k].iter().any(|b| b.name == a.name) {
                return Err(PotentialError::DuplicateArrow(a.name.clone()));
            }
            let valid = !a.name.is_empty() && a.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || a.name.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(PotentialError::Syntax(a.name.clone()));
            }
            for v in [a.source, a.target] {
                if v >= vertices {
                    return Err(PotentialError::VertexOutOfRange { vertex: v + 1, count: vertices });
                }
            }
        }
        Ok(NamedQuiver { vertices, arrows })
    }

    /// Parses `"a:1>2,b:2>3"` with 1-based vertices.
    pub fn parse(vertices: usize, spec: &str) -> Result<Self, PotentialError> {
        let mut arrows = Vec::new();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let err = || PotentialError::Syntax(item.to_string());
            let (name, ends) = item.split_once(':').ok_or_else(err)?;
            let (s, t) = ends.split_once('>').ok_or_else(err)?;
            let s: usize = s.trim().parse().map_err(|_| err())?;
            let t: usize = t.trim().parse().map_err(|_| err())?;
            if s == 0 || t == 0 {
                return Err(err());
            }
            arrows.push(NamedArrow { name: name.trim().to_string(), source: s - 1, target: t - 1 });
        }
        Self::new(vertices, arrows)
    }

    /// One named arrow per unit of multiplicity: `a, b, .., z, a1, b1, ..`.
    pub fn from_icequiver(q: &IceQuiver) -> Self {
        let mut arrows = Vec::new();
        for (s, t, mult) in q.arrows() {
            for _ in 0..mult {
                let k = arrows.len();
                let letter = (b'a' + (k % 26) as u8) as char;
                let name = if k < 26 { letter.to_string() } else { format!("{letter}{}", k / 26) };
                arrows.push(NamedArrow { name, source: s, target: t });
            }
        }
        NamedQuiver { vertices: q.m(), arrows }
    }

    /// Whether the arrow counts agree with the exchange matrix of `q`.
    pub fn matches(&self, q: &IceQuiver) -> bool {
        if q.m() != self.vertices {
            return false;
        }
        let mut b = vec![vec![0i32; self.vertices]; self.vertices];
        for a in &self.arrows {
            b[a.source][a.target] += 1;
            b[a.target][a.source] -= 1;
        }
        (0..self.vertices).all(|i| (0..self.vertices).all(|j| b[i][j] == q.b(i, j)))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[NamedArrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize, PotentialError> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| PotentialError::UnknownArrow(name.to_string()))
    }

    /// Parses `"c.b.a"` into a path.
    pub fn parse_path(&self, s: &str) -> Result<Path, PotentialError> {
        let word = s.split('.').map(|t| self.arrow_index(t.trim())).collect::<Result<Vec<_>, _>>()?;
        Path::new(self, word)
    }

    /// Parses `"c.b.a + 2*b.a.c.b.a.c - e.d"`.
    pub fn parse_potential(&self, s: &str) -> Result<Potential, PotentialError> {
        let mut w = Potential::zero();
        let normalized = s.replace('-', "+-");
        for term in normalized.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let (coeff, body) = match term.split_once('*') {
                Some((c, body)) => {
                    let c: BigInt = c.trim().parse().map_err(|_| PotentialError::Syntax(term.to_string()))?;
                    (c, body)
                }
                None => match term.strip_prefix('-') {
                    Some(body) => (-BigInt::one(), body),
                    None => (BigInt::one(), term),
                },
            };
            w.add_cycle(self, &self.parse_path(body.trim())?, coeff)?;
        }
        Ok(w)
    }
}

/// A path, stored as its word of arrow indices in written order
/// (rightmost arrow applied first). The lazy path at `v` has an empty word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: usize,
    target: usize,
    word: Vec<usize>,
}

impl Path {
    pub fn new(q: &NamedQuiver, word: Vec<usize>) -> Result<Self, PotentialError> {
        let Some(&first) = word.last() else {
            return Err(PotentialError::Syntax("empty path".into()));
        };
        for pair in word.windows(2) {
            let (later, earlier) = (&q.arrows[pair[0]], &q.arrows[pair[1]]);
            if earlier.target != later.source {
                return Err(PotentialError::NotComposable(later.name.clone(), earlier.name.clone()));
            }
        }
        Ok(Path { source: q.arrows[first].source, target: q.arrows[word[0]].target, word })
    }

    pub fn lazy(v: usize) -> Self {
        Path { source: v, target: v, word: Vec::new() }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.source == self.target
    }

    pub fn render(&self, q: &NamedQuiver) -> String {
        if self.word.is_empty() {
            return format!("e{}", self.source + 1);
        }
        let names: Vec<&str> = self.word.iter().map(|&k| q.arrows[k].name.as_str()).collect();
        names.join(".")
    }
}

/// The lexicographically least rotation of a cycle, arrows ordered by index.
pub fn cycle_normal_form(q: &NamedQuiver, p: &Path) -> Result<Path, PotentialError> {
    if !p.is_cycle() {
        return Err(PotentialError::NotACycle);
    }
    if p.word.is_empty() {
        return Ok(p.clone());
    }
    let n = p.word.len();
    let best =
        (0..n).map(|r| p.word[r..].iter().chain(&p.word[..r]).copied().collect::<Vec<_>>()).min().expect("nonempty");
    Path::new(q, best)
}

/// A formal integer combination of paths.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathSum {
    terms: BTreeMap<Path, BigInt>,
}

impl PathSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Path, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, p: &Path) -> BigInt {
        self.terms.get(p).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, p: Path, c: BigInt) {
        let entry = self.terms.entry(p.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn merge(&mut self, other: &PathSum) {
        for (p, c) in &other.terms {
            self.add(p.clone(), c.clone());
        }
    }

    pub fn render(&self, q: &NamedQuiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (p, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&p.render(q));
        }
        out
    }
}

/// A finite potential: cycles in normal form with nonzero integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Potential {
    cycles: PathSum,
}

impl Potential {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.cycles.is_zero()
    }

    pub fn add_cycle(&mut self, q: &NamedQuiver, p: &Path, c: BigInt) -> Result<(), PotentialError> {
        if p.is_empty() {
            return Err(PotentialError::Syntax("a potential term needs at least one arrow".into()));
        }
        self.cycles.add(cycle_normal_form(q, p)?, c);
        Ok(())
    }

    pub fn cycles(&self) -> &BTreeMap<Path, BigInt> {
        self.cycles.terms()
    }

    pub fn scaled(&self, c: &BigInt) -> Potential {
        let mut out = Potential::zero();
        for (p, k) in self.cycles.terms() {
            out.cycles.add(p.clone(), k * c);
        }
        out
    }

    pub fn sum(&self, other: &Potential) -> Potential {
        let mut out = self.clone();
        out.cycles.merge(&other.cycles);
        out
    }

    pub fn render(&self, q: &NamedQuiver) -> String {
        self.cycles.render(q)
    }
}

/// `∂_a p` for a single cycle `p`, taken as written (no normalization).
pub fn cyclic_derivative_cycle(q: &NamedQuiver, p: &Path, a: usize) -> PathSum {
    let mut out = PathSum::zero();
    let w = &p.word;
    for k in (0..w.len()).filter(|&k| w[k] == a) {
        let (u, v) = (&w[..k], &w[k + 1..]);
        let word: Vec<usize> = v.iter().chain(u).copied().collect();
        let arrow = &q.arrows[a];
        let path = if word.is_empty() {
            Path::lazy(arrow.target)
        } else {
            Path::new(q, word).expect("subwords of a cycle compose")
        };
        out.add(path, BigInt::one());
    }
    out
}

/// The cyclic derivative `∂_a W`.
pub fn cyclic_derivative(q: &NamedQuiver, w: &Potential, a: usize) -> PathSum {
    let mut out = PathSum::zero();
    for (p, c) in w.cycles() {
        for (path, k) in cyclic_derivative_cycle(q, p, a).terms {
            out.add(path, k * c);
        }
    }
    out
}

/// `(a, ∂_a W)` for every arrow `a`, generating the Jacobian ideal.
pub fn jacobian_generators(q: &NamedQuiver, w: &Potential) -> Vec<(usize, PathSum)> {
    (0..q.arrows.len()).map(|a| (a, cyclic_derivative(q, w, a))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> NamedQuiver {
        NamedQuiver::parse(3, "a:1>2,b:2>3,c:3>1").unwrap()
    }

    #[test]
    fn three_cycle() {
        let q = triangle();
        let w = q.parse_potential("c.b.a").unwrap();
        let gens = jacobian_generators(&q, &w);
        let rendered: Vec<String> = gens.iter().map(|(_, s)| s.render(&q)).collect();
        assert_eq!(rendered, vec!["c.b", "a.c", "b.a"]);
        let da = &gens[0].1;
        let (p, _) = da.terms().iter().next().unwrap();
        assert_eq!((p.source(), p.target()), (1, 0));
        let doubled = jacobian_generators(&q, &q.parse_potential("2*c.b.a").unwrap());
        assert_eq!(doubled[1].1.render(&q), "2*a.c");
        assert!(jacobian_generators(&q, &Potential::zero()).iter().all(|(_, s)| s.is_zero()));
    }

    #[test]
    fn two_cycle_squared() {
        let q = NamedQuiver::parse(2, "a:1>2,b:2>1").unwrap();
        let w = q.parse_potential("b.a.b.a").unwrap();
        assert_eq!(cyclic_derivative(&q, &w, 0).render(&q), "2*b.a.b");
        let w2 = q.parse_potential("a.b.a.b").unwrap();
        assert_eq!(w, w2);
    }

    #[test]
    fn normal_forms() {
        let q = triangle();
        let forms: Vec<Path> = ["c.b.a", "b.a.c", "a.c.b"]
            .iter()
            .map(|s| cycle_normal_form(&q, &q.parse_path(s).unwrap()).unwrap())
            .collect();
        assert!(forms.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(cycle_normal_form(&q, &Path::lazy(2)).unwrap(), Path::lazy(2));
        assert_eq!(cycle_normal_form(&q, &q.parse_path("b.a").unwrap()), Err(PotentialError::NotACycle));
    }

    #[test]
    fn absent_arrow_gives_zero() {
        let q = NamedQuiver::parse(3, "a:1>2,b:2>3,c:3>1,d:1>2").unwrap();
        let w = q.parse_potential("c.b.a").unwrap();
        assert!(cyclic_derivative(&q, &w, 3).is_zero());
    }

    #[test]
    fn parse_errors() {
        let q = triangle();
        assert!(matches!(q.parse_path("a.b"), Err(PotentialError::NotComposable(..))));
        assert!(matches!(q.parse_path("z"), Err(PotentialError::UnknownArrow(_))));
        assert!(NamedQuiver::parse(2, "a:1>3").is_err());
        assert!(NamedQuiver::parse(2, "a:1>2,a:2>1").is_err());
        assert!(q.parse_potential("x*c.b.a").is_err());
    }

    #[test]
    fn from_icequiver_matches() {
        let iq = IceQuiver::parse_arrows(3, 3, "1>2,2*2>3,3>1").unwrap();
        let nq = NamedQuiver::from_icequiver(&iq);
        assert_eq!(nq.arrows().len(), 4);
        assert!(nq.matches(&iq));
        assert!(!triangle().matches(&iq));
    }
}
