mod common;

use common::*;
use oddpack::covers::{min_odd_cycle_cover, OddCycleCover};
use oddpack::partitions::{
    induced_partitions, is_tau_critical, konig_matching, maximal_matching_cover_bound,
    min_vertex_cover, nice_partition, tau, validate_nice_partition, within_graph, CoverCheck,
    Partition,
};
use oddpack::{Budget, Error, Graph, VertexSet};
use proptest::prelude::*;

fn b() -> Budget {
    Budget::default()
}

fn canonical(g: &Graph) -> oddpack::partitions::NicePartition {
    let x = min_odd_cycle_cover(g, &b()).unwrap();
    nice_partition(g, &x, CoverCheck::Verify, &b()).unwrap()
}

fn parts(a: &[usize], bb: &[usize]) -> Partition {
    let n = a.len() + bb.len();
    Partition::new(n, a.iter().copied().collect(), bb.iter().copied().collect()).unwrap()
}

#[test]
fn nice_partition_examples() {
    let np = canonical(&Graph::cycle(6));
    assert!(np.inducing_cover.members.is_empty());
    assert_eq!(np.partition.a.as_slice(), &[0, 2, 4]);

    // K5, cover {0,1,2}: edge 3-4 splits 3 | 4, every cover vertex ties
    let np = canonical(&Graph::complete(5));
    assert_eq!(np.inducing_cover.members.as_slice(), &[0, 1, 2]);
    assert_eq!(np.partition.a.as_slice(), &[0, 1, 2, 3]);
    assert_eq!(np.partition.b.as_slice(), &[4]);

    // C5, cover {0}: the path 1-2-3-4 splits {1,3} | {2,4}; 0 ties
    let g = Graph::cycle(5);
    let x = OddCycleCover {
        members: [0].into(),
        minimal: true,
    };
    let np = nice_partition(&g, &x, CoverCheck::Verify, &b()).unwrap();
    assert_eq!(np.partition.a.as_slice(), &[0, 1, 3]);
    assert_eq!(np.partition.b.as_slice(), &[2, 4]);
    validate_nice_partition(&g, &np, CoverCheck::Verify, &b()).unwrap();
}

#[test]
fn nice_partition_rejects_bad_covers() {
    let g = Graph::complete(5);
    let short = OddCycleCover {
        members: [0, 1].into(),
        minimal: false,
    };
    assert!(matches!(
        nice_partition(&g, &short, CoverCheck::Verify, &b()),
        Err(Error::Precondition(_))
    ));
    let long = OddCycleCover {
        members: [0, 1, 2, 3].into(),
        minimal: false,
    };
    assert!(nice_partition(&g, &long, CoverCheck::Verify, &b()).is_err());
    assert!(nice_partition(&g, &long, CoverCheck::Trusted, &b()).is_ok());
}

#[test]
fn within_graph_examples() {
    let g = Graph::complete_bipartite(3, 3);
    assert_eq!(within_graph(&g, &parts(&[0, 1, 2], &[3, 4, 5])).graph.m(), 0);
    let w = within_graph(&Graph::complete(4), &parts(&[0, 1], &[2, 3])).graph;
    assert_eq!(w.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
    let w = within_graph(&Graph::cycle(5), &parts(&[0, 1, 2], &[3, 4])).graph;
    assert_eq!(w.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (3, 4)]);
}

#[test]
fn tau_examples() {
    assert_eq!(tau(&Graph::empty(6), &b()).unwrap(), 0);
    assert_eq!(tau(&Graph::complete(5), &b()).unwrap(), 4);
    assert_eq!(tau(&Graph::path(4), &b()).unwrap(), 2);
    assert_eq!(brute_tau(&Graph::path(4)), 2);
    let y = min_vertex_cover(&Graph::path(4), &b()).unwrap();
    assert_eq!(y.as_slice(), &[0, 2]);
}

#[test]
fn konig_examples() {
    assert_eq!(konig_matching(&Graph::cycle(6)).unwrap().len(), 3);
    let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
    assert_eq!(konig_matching(&star).unwrap().len(), 1);
    assert_eq!(konig_matching(&Graph::complete_bipartite(3, 3)).unwrap().len(), 3);
    assert!(konig_matching(&Graph::cycle(5)).is_err());
}

#[test]
fn maximal_matching_examples() {
    let (m, c) = maximal_matching_cover_bound(&Graph::empty(3));
    assert!(m.is_empty() && c.is_empty());
    let (m, c) = maximal_matching_cover_bound(&Graph::path(2));
    assert_eq!((m.len(), c.as_slice()), (1, &[0, 1][..]));
    let (m, c) = maximal_matching_cover_bound(&Graph::cycle(5));
    assert_eq!((m.len(), c.len()), (2, 4));
    assert_eq!(tau(&Graph::cycle(5), &b()).unwrap(), 3);
}

#[test]
fn tau_critical_examples() {
    assert!(is_tau_critical(&Graph::cycle(5), &b()).unwrap());
    assert!(!is_tau_critical(&Graph::path(4), &b()).unwrap());
    assert!(is_tau_critical(&Graph::path(2), &b()).unwrap());
    assert!(is_tau_critical(&Graph::complete(6), &b()).unwrap());
}

#[test]
fn induced_partitions_include_flips_and_ties() {
    // two disjoint edges and no cover: four 2-colorings, two up to swapping
    let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    assert_eq!(induced_partitions(&g, &VertexSet::default(), 100).unwrap().len(), 2);
    // C5 with cover {0}: a single component and one tie
    let ps = induced_partitions(&Graph::cycle(5), &[0].into(), 100).unwrap();
    assert_eq!(ps.len(), 2);
}

/// τ-critical graphs by brute force, independent of `is_tau_critical`.
fn brute_tau_critical(g: &Graph) -> bool {
    let t = brute_tau(g);
    (0..g.n()).all(|v| brute_tau(&g.without_vertices(&[v])) < t)
        && g.edges().all(|(u, v)| brute_tau(&g.without_edge(u, v)) < t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn oct_equals_within_tau(g in graphs(0, 12)) {
        let np = canonical(&g);
        validate_nice_partition(&g, &np, CoverCheck::Trusted, &b()).unwrap();
        let w = within_graph(&g, &np.partition).graph;
        prop_assert_eq!(tau(&w, &b()).unwrap(), np.inducing_cover.len());
    }

    #[test]
    fn within_tau_for_every_induced_partition(g in graphs(0, 8)) {
        let x = min_odd_cycle_cover(&g, &b()).unwrap();
        for p in induced_partitions(&g, &x.members, 256).unwrap() {
            let w = within_graph(&g, &p).graph;
            prop_assert_eq!(tau(&w, &b()).unwrap(), x.len());
        }
    }

    #[test]
    fn greedy_matching_bounds_tau(g in graphs(0, 12)) {
        let (m, cover) = maximal_matching_cover_bound(&g);
        prop_assert!(m.is_matching_in(&g));
        prop_assert_eq!(cover.len(), 2 * m.len());
        prop_assert!(g.edges().all(|(u, v)| cover.contains(u) || cover.contains(v)));
        let t = tau(&g, &b()).unwrap();
        prop_assert!(m.len() <= t && t <= 2 * m.len());
    }

    #[test]
    fn tau_matches_brute_force(g in graphs(0, 11)) {
        let y = min_vertex_cover(&g, &b()).unwrap();
        prop_assert!(g.edges().all(|(u, v)| y.contains(u) || y.contains(v)));
        prop_assert_eq!(y.len(), brute_tau(&g));
    }

    #[test]
    fn konig_on_bipartite_graphs(g in bipartite_graphs(0, 14)) {
        let m = konig_matching(&g).unwrap();
        prop_assert!(m.is_matching_in(&g));
        prop_assert_eq!(m.len(), tau(&g, &b()).unwrap());
        prop_assert_eq!(m.len(), brute_matching(&g));
    }

    #[test]
    fn tau_critical_matches_brute_force(g in graphs(1, 7)) {
        prop_assert_eq!(is_tau_critical(&g, &b()).unwrap(), brute_tau_critical(&g));
    }

    #[test]
    fn erdos_gallai_bound(g in graphs(1, 10)) {
        if is_tau_critical(&g, &b()).unwrap() {
            prop_assert!(2 * tau(&g, &b()).unwrap() >= g.n());
        }
    }
}

#[test]
fn erdos_gallai_on_known_critical_families() {
    for n in [3, 5, 7, 9] {
        let g = Graph::cycle(n);
        assert!(is_tau_critical(&g, &b()).unwrap());
        assert!(2 * tau(&g, &b()).unwrap() >= n);
    }
    for n in 2..=10 {
        assert!(is_tau_critical(&Graph::complete(n), &b()).unwrap());
    }
    // two disjoint triangles are critical; a triangle plus an edge is too
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
    assert!(is_tau_critical(&g, &b()).unwrap());
}
