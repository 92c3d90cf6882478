mod common;

use common::*;
use fomember_core::ea::{brute_force_ea, is_in_ea, rees_representation, Sandwich};
use fomember_core::gen::{
    dfa_transition_semigroup, graham_semigroup, random_transformation_semigroup,
    transformation_semigroup, Dfa, GenError, UndirectedGraph, DEFAULT_SIZE_CAP,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn graph_validation() {
    assert!(matches!(UndirectedGraph::new(2, [], 0, 0), Err(GenError::InvalidGraph(_))));
    assert!(matches!(UndirectedGraph::new(2, [(0, 1)], 0, 1), Err(GenError::InvalidGraph(_))));
    assert!(matches!(UndirectedGraph::new(2, [(1, 0)], 0, 1), Err(GenError::InvalidGraph(_))));
    assert!(matches!(UndirectedGraph::new(3, [(0, 3)], 0, 1), Err(GenError::InvalidGraph(_))));
    assert!(matches!(UndirectedGraph::new(3, [(1, 1)], 0, 2), Err(GenError::InvalidGraph(_))));
    let g = UndirectedGraph::new(3, [(2, 1), (1, 2)], 0, 2).unwrap();
    assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2)]);
    assert!(g.has_edge(2, 1));
    assert!(!g.s_reaches_t());
}

#[test]
fn two_isolated_vertices() {
    let graph = UndirectedGraph::new(2, [], 0, 1).unwrap();
    let g = graham_semigroup(&graph);
    assert_eq!(g.groupoid.order(), 9);
    assert!(g.groupoid.is_total());
    let s = sg(g.groupoid.clone());
    assert!(is_in_ea(&s).member);
    assert!(brute_force_ea(&s).member);
    // (v, 1, v) for each v, (s, a, t), (t, a, s) and the zero
    let mut expected = vec![g.element(0, 0, 0), g.element(1, 0, 1), g.element(0, 1, 1), g.element(1, 1, 0), g.zero()];
    expected.sort_unstable();
    assert_eq!(idempotents(&g.groupoid), expected);

    let r = rees_representation(&s, g.element(0, 0, 0)).unwrap();
    assert_eq!(r.group().order(), 2);
    assert_eq!(r.a_indices().len(), 2);
    let a = r.group().index_of(g.element(0, 1, 0)).unwrap();
    let one = r.group().identity();
    // B and A are indexed by vertex here: the least element of each H-class
    assert_eq!(r.sandwich(0, 0), Sandwich::Group(one));
    assert_eq!(r.sandwich(1, 1), Sandwich::Group(one));
    assert_eq!(r.sandwich(0, 1), Sandwich::Group(a));
    assert_eq!(r.sandwich(1, 0), Sandwich::Group(a));
}

#[test]
fn path_instance() {
    let graph = UndirectedGraph::new(3, [(0, 1), (1, 2)], 0, 2).unwrap();
    assert!(graph.s_reaches_t());
    let g = graham_semigroup(&graph);
    assert_eq!(g.groupoid.order(), 19);
    assert!(g.groupoid.is_associative());
    assert!(!is_in_ea(&sg(g.groupoid)).member);
}

#[test]
fn graham_idempotent_census() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..40 {
        let graph = UndirectedGraph::random(4, 0.4, &mut rng).unwrap();
        assert!(!graph.has_edge(graph.s(), graph.t()));
        assert_ne!(graph.s(), graph.t());
        let g = graham_semigroup(&graph);
        assert!(g.groupoid.is_associative());
        let mut expected = vec![g.zero()];
        for v in 0..4 {
            expected.push(g.element(v, 0, v));
            for w in 0..4 {
                if graph.has_edge(v, w) {
                    expected.push(g.element(v, 0, w));
                }
            }
        }
        expected.push(g.element(graph.s(), 1, graph.t()));
        expected.push(g.element(graph.t(), 1, graph.s()));
        expected.sort_unstable();
        assert_eq!(idempotents(&g.groupoid), expected);
    }
}

#[test]
fn random_graph_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    assert!(matches!(UndirectedGraph::random(1, 0.5, &mut rng), Err(GenError::InvalidParameters(_))));
    assert!(matches!(UndirectedGraph::random(3, 1.5, &mut rng), Err(GenError::InvalidParameters(_))));
    // p = 1 leaves no pair for s and t
    assert!(matches!(UndirectedGraph::random(3, 1.0, &mut rng), Err(GenError::InvalidParameters(_))));
    let dense = UndirectedGraph::random(3, 0.99, &mut rng).unwrap();
    assert!(dense.edges().count() <= 2);
    let a = UndirectedGraph::random(6, 0.3, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
    let b = UndirectedGraph::random(6, 0.3, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn transformation_examples() {
    for seed in 0..10 {
        let t = random_transformation_semigroup(1, 3, seed, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(t.groupoid, trivial());
    }
    // constant maps: f then g reads g(f(x)), so products keep the right factor
    let t = transformation_semigroup(&[vec![0, 0], vec![1, 1]], DEFAULT_SIZE_CAP).unwrap();
    assert_eq!(t.groupoid, rz2());
    let a = random_transformation_semigroup(4, 2, 17, DEFAULT_SIZE_CAP).unwrap();
    let b = random_transformation_semigroup(4, 2, 17, DEFAULT_SIZE_CAP).unwrap();
    assert_eq!(a.groupoid, b.groupoid);
    assert_eq!(a.maps, b.maps);
    assert!(matches!(random_transformation_semigroup(0, 1, 0, 10), Err(GenError::InvalidParameters(_))));
    assert!(matches!(transformation_semigroup(&[], 10), Err(GenError::InvalidParameters(_))));
    assert!(matches!(transformation_semigroup(&[vec![0, 2]], 10), Err(GenError::InvalidParameters(_))));
    let cyc = transformation_semigroup(&[vec![1, 2, 3, 4, 0]], 3);
    assert_eq!(cyc.unwrap_err(), GenError::SizeCap { cap: 3 });
}

#[test]
fn transformation_tables_compose_left_to_right() {
    for seed in 0..30 {
        let t = random_transformation_semigroup(4, 3, seed, DEFAULT_SIZE_CAP).unwrap();
        let g = &t.groupoid;
        assert!(g.is_associative());
        for x in g.elements() {
            for y in g.elements() {
                let (f, h) = (&t.maps[x - 1], &t.maps[y - 1]);
                let composed: Vec<usize> = f.iter().map(|&p| h[p]).collect();
                assert_eq!(t.maps[mul(g, x, y) - 1], composed);
            }
        }
        let mut distinct = t.maps.clone();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), t.maps.len());
        // closing the element set again adds nothing
        let again = transformation_semigroup(&t.maps, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(again.groupoid.order(), g.order());
    }
}

#[test]
fn dfa_examples() {
    let one = Dfa::new(1, vec!['a', 'b'], vec![vec![0], vec![0]]).unwrap();
    let s = dfa_transition_semigroup(&one, DEFAULT_SIZE_CAP).unwrap();
    assert_eq!(s.semigroup.groupoid, trivial());
    assert_eq!(s.letters, vec![('a', 1), ('b', 1)]);

    let swap = Dfa::new(2, vec!['b'], vec![vec![1, 0]]).unwrap();
    let s = dfa_transition_semigroup(&swap, DEFAULT_SIZE_CAP).unwrap();
    assert!(def_group(&s.semigroup.groupoid));
    assert_eq!(s.semigroup.groupoid.order(), 2);

    let reset = Dfa::new(3, vec!['a', 'b'], vec![vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
    let s = dfa_transition_semigroup(&reset, DEFAULT_SIZE_CAP).unwrap();
    assert_eq!(s.semigroup.groupoid, trivial());
    let two = Dfa::new(2, vec!['a', 'b'], vec![vec![0, 0], vec![1, 1]]).unwrap();
    let s = dfa_transition_semigroup(&two, DEFAULT_SIZE_CAP).unwrap();
    assert_eq!(s.semigroup.groupoid, rz2());

    assert!(Dfa::new(2, vec!['a'], vec![vec![0, 2]]).is_err());
    assert!(Dfa::new(2, vec!['a', 'a'], vec![vec![0, 1], vec![0, 1]]).is_err());
    assert!(Dfa::new(0, vec!['a'], vec![vec![]]).is_err());
}
