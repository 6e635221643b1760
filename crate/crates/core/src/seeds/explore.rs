use std::collections::{BTreeSet, HashMap};

use super::{Seed, SeedError};
use crate::quiver::IceQuiver;
use crate::LaurentPoly;

pub const DEFAULT_SEED_BUDGET: usize = 20_000;

/// Exchange graph up to seed isomorphism.
#[derive(Debug, Clone)]
pub struct ExchangeGraph {
    /// Canonical seeds in discovery order; index 0 is the initial seed.
    pub seeds: Vec<Seed>,
    /// Unordered pairs `(a, b)` with `a < b`, or `(a, a)` for a self-loop.
    pub edges: BTreeSet<(usize, usize)>,
    pub complete: bool,
}

impl ExchangeGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum()
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.seeds.len()).all(|v| self.degree(v) == d)
    }
}

/// Breadth-first exploration from `(q, (x1, .., xm))`, stopping after `budget` seeds.
pub fn exchange_graph(q: &IceQuiver, budget: usize) -> Result<ExchangeGraph, SeedError> {
    assert!(budget >= 1, "budget must be positive");
    let start = Seed::initial(q.clone()).canonical();
    let mut index: HashMap<Seed, usize> = HashMap::new();
    index.insert(start.clone(), 0);
    let mut seeds = vec![start];
    let mut edges = BTreeSet::new();
    let mut complete = true;
    let mut head = 0;
    'bfs: while head < seeds.len() {
        for k in 0..q.n() {
            let next = seeds[head].mutate(k)?.canonical();
            let target = match index.get(&next) {
                Some(&t) => t,
                None => {
                    if seeds.len() == budget {
                        complete = false;
                        break 'bfs;
                    }
                    index.insert(next.clone(), seeds.len());
                    seeds.push(next);
                    seeds.len() - 1
                }
            };
            edges.insert((head.min(target), head.max(target)));
        }
        head += 1;
    }
    Ok(ExchangeGraph { seeds, edges, complete })
}

/// All cluster variables met while exploring the exchange graph.
pub fn cluster_variables(q: &IceQuiver, budget: usize) -> Result<(BTreeSet<LaurentPoly>, bool), SeedError> {
    let g = exchange_graph(q, budget)?;
    let vars = g.seeds.iter().flat_map(|s| s.cluster().iter().cloned()).collect();
    Ok((vars, g.complete))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::render::parse_laurent;

    #[test]
    fn small_graphs() {
        let a1 = exchange_graph(&IceQuiver::empty(1), 100).unwrap();
        assert_eq!((a1.seeds.len(), a1.edges.len(), a1.complete), (2, 1, true));
        let a2 = exchange_graph(&IceQuiver::parse_arrows(2, 2, "1>2").unwrap(), 100).unwrap();
        assert_eq!((a2.seeds.len(), a2.edges.len()), (5, 5));
        assert!(a2.is_regular(2));
        let (vars, complete) = cluster_variables(&IceQuiver::parse_arrows(2, 2, "1>2").unwrap(), 100).unwrap();
        assert!(complete);
        let expected: BTreeSet<LaurentPoly> = ["x1", "x2", "(1 + x2)/x1", "(x1 + 1 + x2)/(x1*x2)", "(1 + x1)/x2"]
            .iter()
            .map(|s| parse_laurent(s, 2, "x").unwrap())
            .collect();
        assert_eq!(vars, expected);
    }

    #[test]
    fn budget_is_respected() {
        let g = exchange_graph(&IceQuiver::parse_arrows(2, 2, "2*1>2").unwrap(), 7).unwrap();
        assert_eq!(g.seeds.len(), 7);
        assert!(!g.complete);
    }
}
