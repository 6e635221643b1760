//! Mutation classes by breadth-first search over canonical forms.

use std::collections::{BTreeSet, HashSet};

use super::{canonical_form, is_dynkin, DynkinType, IceQuiver, QuiverError};

/// Default budget for finite-type detection.
pub const DEFAULT_CLASS_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationClass {
    /// Canonical representatives, sorted.
    pub quivers: BTreeSet<IceQuiver>,
    /// False when the budget stopped the search.
    pub complete: bool,
}

impl MutationClass {
    pub fn len(&self) -> usize {
        self.quivers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quivers.is_empty()
    }

    /// Whether `q` is isomorphic to a member.
    pub fn contains(&self, q: &IceQuiver) -> bool {
        self.quivers.contains(&canonical_form(q).0)
    }
}

/// Walks the class level by level; `visit` may stop the walk by returning `true`.
fn walk(q: &IceQuiver, budget: usize, mut visit: impl FnMut(&IceQuiver) -> bool) -> (BTreeSet<IceQuiver>, bool, bool) {
    assert!(budget >= 1, "budget must be positive");
    let start = canonical_form(q).0;
    let mut seen: HashSet<IceQuiver> = HashSet::new();
    let mut members = BTreeSet::new();
    seen.insert(start.clone());
    members.insert(start.clone());
    if visit(&start) {
        return (members, false, true);
    }
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        frontier.sort();
        let mut next = Vec::new();
        for cur in &frontier {
            for k in 0..cur.n() {
                let mutated = cur.mutate(k).expect("mutable vertex");
                let canon = canonical_form(&mutated).0;
                if seen.contains(&canon) {
                    continue;
                }
                if seen.len() == budget {
                    return (members, false, false);
                }
                seen.insert(canon.clone());
                members.insert(canon.clone());
                if visit(&canon) {
                    return (members, false, true);
                }
                next.push(canon);
            }
        }
        frontier = next;
    }
    (members, true, false)
}

/// The mutation class of `q` up to isomorphism, capped at `budget` members.
pub fn mutation_class(q: &IceQuiver, budget: usize) -> MutationClass {
    let (quivers, complete, _) = walk(q, budget, |_| false);
    MutationClass { quivers, complete }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiniteTypeVerdict {
    /// Some member of the class is a Dynkin quiver of this type.
    FiniteType(DynkinType),
    /// The whole class was explored and has no Dynkin member.
    InfinitelyManyVariables,
    /// The budget ran out first.
    Unknown,
}

/// Decides finite cluster type by searching the mutation class for a Dynkin quiver.
///
/// Requires a connected quiver; frozen vertices are ignored (the principal part is used).
pub fn detect_finite_type(q: &IceQuiver, budget: usize) -> Result<FiniteTypeVerdict, QuiverError> {
    let principal = q.principal_part();
    if !principal.is_connected() {
        return Err(QuiverError::Disconnected);
    }
    let mut found = None;
    let (_, complete, stopped) = walk(&principal, budget, |c| {
        found = is_dynkin(c);
        found.is_some()
    });
    Ok(match (found, stopped, complete) {
        (Some(t), true, _) => FiniteTypeVerdict::FiniteType(t),
        (_, _, true) => FiniteTypeVerdict::InfinitelyManyVariables,
        _ => FiniteTypeVerdict::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrows(n: usize, spec: &str) -> IceQuiver {
        IceQuiver::parse_arrows(n, n, spec).unwrap()
    }

    #[test]
    fn single_arrow_class() {
        let c = mutation_class(&arrows(2, "1>2"), 10);
        assert_eq!(c.len(), 1);
        assert!(c.complete);
    }

    #[test]
    fn triangle_class_contains_acyclic_partner() {
        let c = mutation_class(&arrows(3, "2>1,1>3,3>2"), 100);
        assert!(c.complete);
        assert!(c.contains(&arrows(3, "1>2,3>1")));
        // A3: linear orientation (x2 up to iso), sink/source centers, oriented triangle
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let c = mutation_class(&arrows(3, "1>2,2>3,3>1"), 2);
        assert!(!c.complete);
        assert_eq!(c.len(), 2);
        // Markov quiver: class of size one, complete
        let markov = mutation_class(&arrows(3, "2*1>2,2*2>3,2*3>1"), 5);
        assert_eq!((markov.len(), markov.complete), (1, true));
    }

    #[test]
    fn finite_type_detection() {
        assert_eq!(
            detect_finite_type(&arrows(3, "1>2,2>3"), 100).unwrap(),
            FiniteTypeVerdict::FiniteType(DynkinType::a(3))
        );
        assert_eq!(
            detect_finite_type(&arrows(3, "1>2,2>3,3>1"), 100).unwrap(),
            FiniteTypeVerdict::FiniteType(DynkinType::a(3))
        );
        assert_eq!(detect_finite_type(&arrows(2, "2*1>2"), 100).unwrap(), FiniteTypeVerdict::InfinitelyManyVariables);
        assert_eq!(detect_finite_type(&arrows(3, "1>2,2>3,3*1>3"), 50).unwrap(), FiniteTypeVerdict::Unknown);
        assert_eq!(detect_finite_type(&IceQuiver::empty(2), 10), Err(QuiverError::Disconnected));
    }
}
