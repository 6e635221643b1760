//! Canonical labeling of ice quivers.
//!
//! Individualization-refinement: vertices are split into an ordered
//! partition by color, then refined to an equitable partition using the
//! multiset of weights each vertex sends into every cell. Non-singleton
//! cells are individualized one vertex at a time, and among all resulting
//! discrete orderings the lexicographically least relabeled matrix wins.
//! Branches through interchangeable twins are skipped.

use super::IceQuiver;

type Cells = Vec<Vec<usize>>;

/// Canonical form up to relabelings preserving the frozen set.
///
/// Returns the relabeled quiver and `perm`, where canonical vertex `r` is
/// original vertex `perm[r]`.
pub fn canonical_form(q: &IceQuiver) -> (IceQuiver, Vec<usize>) {
    canonical_form_colored(q, &vec![0; q.m()])
}

/// Canonical form up to relabelings preserving the frozen set and `colors`.
pub fn canonical_form_colored(q: &IceQuiver, colors: &[u64]) -> (IceQuiver, Vec<usize>) {
    assert_eq!(colors.len(), q.m());
    let m = q.m();
    if m == 0 {
        return (q.clone(), Vec::new());
    }
    let mut keyed: Vec<((bool, u64), usize)> = (0..m).map(|v| ((q.is_frozen(v), colors[v]), v)).collect();
    keyed.sort();
    let mut cells: Cells = Vec::new();
    let mut last = None;
    for (key, v) in keyed {
        if last != Some(key) {
            cells.push(Vec::new());
            last = Some(key);
        }
        cells.last_mut().expect("cell").push(v);
    }
    let mut best: Option<(Vec<i32>, Vec<usize>)> = None;
    search(q, cells, &mut best);
    let (_, perm) = best.expect("at least one leaf");
    (q.permuted(&perm), perm)
}

fn search(q: &IceQuiver, cells: Cells, best: &mut Option<(Vec<i32>, Vec<usize>)>) {
    let cells = refine(q, cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let perm: Vec<usize> = cells.into_iter().flatten().collect();
        let key = relabeled(q, &perm);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            *best = Some((key, perm));
        }
        return;
    };
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cells[target] {
        if tried.iter().any(|&u| are_twins(q, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..target]);
        next.push(vec![v]);
        next.push(cells[target].iter().copied().filter(|&w| w != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        search(q, next, best);
    }
}

/// Swapping `u` and `v` is an automorphism fixing every other vertex.
fn are_twins(q: &IceQuiver, u: usize, v: usize) -> bool {
    q.b(u, v) == 0 && (0..q.m()).all(|w| w == u || w == v || q.b(u, w) == q.b(v, w))
}

fn relabeled(q: &IceQuiver, perm: &[usize]) -> Vec<i32> {
    perm.iter().flat_map(|&i| perm.iter().map(move |&j| q.b(i, j))).collect()
}

/// Splits cells until every vertex of a cell sees the same weight multiset in every cell.
fn refine(q: &IceQuiver, mut cells: Cells) -> Cells {
    loop {
        let mut next: Cells = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut sigs: Vec<(Vec<Vec<i32>>, usize)> = cell
                .iter()
                .map(|&v| {
                    let sig = cells
                        .iter()
                        .map(|c| {
                            let mut ws: Vec<i32> = c.iter().map(|&w| q.b(v, w)).filter(|&x| x != 0).collect();
                            ws.sort_unstable();
                            ws
                        })
                        .collect();
                    (sig, v)
                })
                .collect();
            sigs.sort();
            let mut start = 0;
            for i in 1..=sigs.len() {
                if i == sigs.len() || sigs[i].0 != sigs[start].0 {
                    next.push(sigs[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrows(n: usize, spec: &str) -> IceQuiver {
        IceQuiver::parse_arrows(n, n, spec).unwrap()
    }

    /// Brute-force isomorphism test over all permutations.
    fn isomorphic_brute_force(a: &IceQuiver, b: &IceQuiver) -> bool {
        fn perms(k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(k - 1) {
                for pos in 0..=p.len() {
                    let mut p2 = p.clone();
                    p2.insert(pos, k - 1);
                    out.push(p2);
                }
            }
            out
        }
        perms(a.m()).into_iter().any(|p| &a.permuted(&p) == b)
    }

    #[test]
    fn single_arrow_orientations_agree() {
        assert_eq!(canonical_form(&arrows(2, "1>2")).0, canonical_form(&arrows(2, "2>1")).0);
    }

    #[test]
    fn sink_and_source_differ() {
        let sink = arrows(3, "1>2,3>2");
        let source = arrows(3, "2>1,2>3");
        assert!(!isomorphic_brute_force(&sink, &source));
        assert_ne!(canonical_form(&sink).0, canonical_form(&source).0);
    }

    #[test]
    fn relabeling_invariance_and_idempotence() {
        let q = arrows(5, "1>2,2>3,3>1,3>4,2*4>5");
        let (c, perm) = canonical_form(&q);
        assert_eq!(q.permuted(&perm), c);
        assert_eq!(canonical_form(&c).0, c);
        for p in [[4, 3, 2, 1, 0], [1, 0, 3, 2, 4], [2, 4, 0, 1, 3]] {
            assert_eq!(canonical_form(&q.permuted(&p)).0, c);
        }
    }

    #[test]
    fn frozen_vertices_stay_frozen() {
        let q = IceQuiver::parse_arrows(2, 4, "1>2,3>1,4>2").unwrap();
        let (c, perm) = canonical_form(&q);
        assert!(perm[..2].iter().all(|&v| v < 2));
        assert_eq!(c.n(), 2);
    }

    #[test]
    fn symmetric_quivers_finish_quickly() {
        let c = canonical_form(&IceQuiver::empty(12)).0;
        assert_eq!(c, IceQuiver::empty(12));
        let star = arrows(9, "1>2,1>3,1>4,1>5,1>6,1>7,1>8,1>9");
        let c = canonical_form(&star).0;
        assert_eq!(canonical_form(&star.permuted(&[3, 1, 2, 0, 4, 5, 6, 7, 8])).0, c);
    }
}
