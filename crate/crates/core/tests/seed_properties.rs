use std::collections::BTreeSet;

use amas::roots::positive_roots;
use amas::seeds::{cluster_variables, denominator_vector, exchange_graph};
use amas::{DynkinType, IceQuiver, Seed, YSeed};
use proptest::prelude::*;

fn small_quiver() -> impl Strategy<Value = IceQuiver> {
    (2usize..=4).prop_flat_map(|n| {
        proptest::collection::vec(-1i32..=1, n * n).prop_map(move |raw| {
            let mut rows = vec![vec![0; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    rows[i][j] = raw[i * n + j];
                    rows[j][i] = -raw[i * n + j];
                }
            }
            IceQuiver::new(n, n, rows).unwrap()
        })
    })
}

fn walk() -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0usize..4, 0..=5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn seed_mutation_is_an_involution(q in small_quiver(), seq in walk(), k in 0usize..4) {
        let n = q.n();
        let seq: Vec<usize> = seq.into_iter().map(|v| v % n).collect();
        let s = Seed::initial(q).mutate_sequence(&seq).unwrap();
        let k = k % n;
        prop_assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
    }

    #[test]
    fn y_seed_mutation_is_an_involution(q in small_quiver(), seq in walk(), k in 0usize..4) {
        let n = q.n();
        let seq: Vec<usize> = seq.into_iter().map(|v| v % n).collect();
        let s = YSeed::initial(q).unwrap().mutate_sequence(&seq).unwrap();
        let k = k % n;
        prop_assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
    }

    #[test]
    fn cluster_variables_are_laurent_with_positive_coefficients(q in small_quiver(), seq in walk()) {
        let n = q.n();
        let seq: Vec<usize> = seq.into_iter().map(|v| v % n).collect();
        let s = Seed::initial(q).mutate_sequence(&seq).unwrap();
        prop_assert!(s.vars().iter().all(|v| v.has_positive_coefficients()));
    }
}

fn dynkin_cases() -> Vec<(IceQuiver, DynkinType, usize, usize)> {
    // quiver, type, seeds, cluster variables
    vec![
        (IceQuiver::parse_arrows(2, 2, "1>2").unwrap(), DynkinType::a(2), 5, 5),
        (IceQuiver::parse_arrows(3, 3, "1>2,2>3").unwrap(), DynkinType::a(3), 14, 9),
        (IceQuiver::parse_arrows(4, 4, "1>2,3>2,4>2").unwrap(), DynkinType::d(4), 50, 16),
    ]
}

#[test]
fn exchange_graphs_are_regular() {
    for (q, t, seeds, _) in dynkin_cases() {
        let g = exchange_graph(&q, 1000).unwrap();
        assert!(g.complete, "{t}");
        assert_eq!(g.seeds.len(), seeds, "{t}");
        assert!(g.is_regular(q.n()), "{t}");
        assert_eq!(g.edges.len(), seeds * q.n() / 2, "{t}");
    }
}

#[test]
fn denominator_vectors_biject_with_positive_roots() {
    for (q, t, _, count) in dynkin_cases() {
        let (vars, complete) = cluster_variables(&q, 1000).unwrap();
        assert!(complete);
        assert_eq!(vars.len(), count, "{t}");
        let dens: Vec<Vec<i32>> =
            vars.iter().map(|v| denominator_vector(v, q.n())).filter(|d| d.iter().any(|&c| c > 0)).collect();
        let unique: BTreeSet<Vec<i32>> = dens.iter().cloned().collect();
        let roots: BTreeSet<Vec<i32>> = positive_roots(t).into_iter().collect();
        assert_eq!(dens.len(), unique.len(), "{t}: repeated denominator vector");
        assert_eq!(unique, roots, "{t}");
    }
}
