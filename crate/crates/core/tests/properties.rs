//! Law sheet: randomized invariants tying the engines together.

mod common;

use common::*;

use proptest::prelude::*;

use mobius::evidence::{dempster_fast, dempster_naive};
use mobius::graph::{FiniteSet, Graph, Pipeline, WeightedGraph};
use mobius::poset::{hasse_graph, mobius_function, mobius_function_entries, MobiusMethod};
use mobius::powerset::{hasse_pipeline, relation_graph, Relation};
use mobius::setfun::{Kind, SetFunction};
use mobius::transform::{fast_transform, naive_transform, TransformKind};

fn arb_weighted(source: usize, target: usize) -> impl Strategy<Value = WeightedGraph> {
    prop::collection::vec(((0..source, 0..target), -2.0..2.0f64), 0..=source * target).prop_map(
        move |entries| {
            WeightedGraph::new(
                FiniteSet::of_size(source),
                FiniteSet::of_size(target),
                entries.into_iter().map(|((s, t), w)| (s, t, w)),
            )
            .unwrap()
        },
    )
}

fn arb_graph(source: usize, target: usize) -> impl Strategy<Value = Graph> {
    prop::collection::btree_set((0..source, 0..target), 0..=source * target).prop_map(
        move |arrows| {
            Graph::new(
                FiniteSet::of_size(source),
                FiniteSet::of_size(target),
                arrows,
            )
            .unwrap()
        },
    )
}

fn arb_vector(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, len)
}

fn arb_mass(n: usize) -> impl Strategy<Value = SetFunction> {
    let cells = 1usize << n;
    prop::collection::vec(0.0..1.0f64, cells).prop_map(move |mut values| {
        values[0] = 0.0;
        let total: f64 = values.iter().sum();
        if total == 0.0 {
            values[cells - 1] = 1.0;
        } else {
            for v in &mut values {
                *v /= total;
            }
        }
        SetFunction::new(frame(n), Kind::Mass, values).unwrap()
    })
}

fn arb_poset(max_size: usize) -> impl Strategy<Value = Graph> {
    (1..=max_size)
        .prop_flat_map(|size| {
            let pairs: Vec<(usize, usize)> = (0..size)
                .flat_map(|i| ((i + 1)..size).map(move |j| (i, j)))
                .collect();
            let count = pairs.len();
            (
                Just(size),
                Just(pairs),
                prop::collection::vec(any::<bool>(), count),
            )
        })
        .prop_map(|(size, pairs, keep)| {
            let edges: Vec<(usize, usize)> = pairs
                .into_iter()
                .zip(keep)
                .filter_map(|(pair, k)| k.then_some(pair))
                .collect();
            poset_from_edges(size, &edges)
        })
}

proptest! {
    // pushing through a product equals pushing through both factors in turn
    #[test]
    fn weighted_transforms_compose(
        a in arb_weighted(4, 3),
        b in arb_weighted(3, 5),
        f in arb_vector(4),
    ) {
        let through_product = a.product(&b).unwrap().transform(&f).unwrap();
        let staged = b.transform(&a.transform(&f).unwrap()).unwrap();
        prop_assert!(max_abs_diff(&through_product, &staged) <= 1e-12);
    }

    // distinct graphs are distinguished by some indicator vector
    #[test]
    fn distinct_graphs_act_differently(
        g in arb_graph(4, 4),
        h in arb_graph(4, 4),
    ) {
        prop_assume!(g != h);
        let mut separated = false;
        for s in 0..4 {
            let mut basis = vec![0.0; 4];
            basis[s] = 1.0;
            if g.transform(&basis).unwrap() != h.transform(&basis).unwrap() {
                separated = true;
                break;
            }
        }
        prop_assert!(separated);
    }

    // forward path counting agrees with the iterated zeta product
    #[test]
    fn path_counts_match_zeta_product(
        g1 in arb_graph(5, 4),
        g2 in arb_graph(4, 6),
        g3 in arb_graph(6, 3),
    ) {
        let zeta = g1.zeta().product(&g2.zeta()).unwrap().product(&g3.zeta()).unwrap();
        let p = Pipeline::from_graphs(vec![g1, g2, g3]).unwrap();
        for s in 0..5 {
            for t in 0..3 {
                prop_assert_eq!(
                    p.count_paths(s, t).unwrap(),
                    zeta.weight(s, t) as u64
                );
            }
        }
    }

    // both Möbius constructions agree, and each inverts zeta exactly
    #[test]
    fn mobius_methods_agree_and_invert(poset in arb_poset(6)) {
        let recursive = mobius_function_entries(&poset, MobiusMethod::Recursive).unwrap();
        let chains = mobius_function_entries(&poset, MobiusMethod::Chains).unwrap();
        prop_assert_eq!(&recursive, &chains);

        let size = poset.source().size();
        let zeta = integer_matrix(&poset.zeta());
        let mu = integer_matrix(&mobius_function(&poset, MobiusMethod::Recursive).unwrap());
        prop_assert_eq!(integer_product(&zeta, &mu), identity_matrix(size));
        prop_assert_eq!(integer_product(&mu, &zeta), identity_matrix(size));
    }

    // the inverse transform undoes the forward transform on real vectors
    #[test]
    fn mobius_transform_inverts_zeta_transform(
        poset in arb_poset(5),
        raw in arb_vector(5),
    ) {
        let f = &raw[..poset.source().size()];
        let forward = poset.zeta().transform(f).unwrap();
        let mu = mobius_function(&poset, MobiusMethod::Chains).unwrap();
        let back = mu.transform(&forward).unwrap();
        prop_assert!(max_abs_diff(&back, f) <= 1e-9);
    }

    // every fast kernel matches its defining sum
    #[test]
    fn fast_transforms_match_naive(
        n in 1usize..=6,
        raw in arb_vector(64),
    ) {
        let f = SetFunction::new(frame(n), Kind::Raw, raw[..1 << n].to_vec()).unwrap();
        for kind in [
            TransformKind::MassToBelief,
            TransformKind::MassToBeliefFull,
            TransformKind::BeliefToMass,
            TransformKind::MassToCommonality,
            TransformKind::CommonalityToMass,
        ] {
            let fast = fast_transform(kind, &f).unwrap();
            let naive = naive_transform(kind, &f).unwrap();
            prop_assert!(max_abs_diff(fast.values(), naive.values()) <= 1e-12);
        }
    }

    // round trips are the identity
    #[test]
    fn transform_round_trips(
        n in 1usize..=6,
        raw in arb_vector(64),
    ) {
        let f = SetFunction::new(frame(n), Kind::Raw, raw[..1 << n].to_vec()).unwrap();
        let bel = fast_transform(TransformKind::MassToBeliefFull, &f).unwrap();
        let back = fast_transform(TransformKind::BeliefToMass, &bel).unwrap();
        prop_assert!(max_abs_diff(back.values(), f.values()) <= 1e-12);
        let q = fast_transform(TransformKind::MassToCommonality, &f).unwrap();
        let back = fast_transform(TransformKind::CommonalityToMass, &q).unwrap();
        prop_assert!(max_abs_diff(back.values(), f.values()) <= 1e-12);
    }

    // combination is commutative and agrees across the two roads
    #[test]
    fn combination_commutes(
        m1 in arb_mass(4),
        m2 in arb_mass(4),
    ) {
        let ab = dempster_naive(&m1, &m2, true).unwrap();
        let ba = dempster_naive(&m2, &m1, true).unwrap();
        prop_assert!(max_abs_diff(ab.combined.values(), ba.combined.values()) <= 1e-10);
        let fast = dempster_fast(&m1, &m2).unwrap();
        prop_assert!(max_abs_diff(ab.combined.values(), fast.combined.values()) <= 1e-10);
    }

    // and associative, however the parentheses fall
    #[test]
    fn combination_associates(
        m1 in arb_mass(3),
        m2 in arb_mass(3),
        m3 in arb_mass(3),
    ) {
        let left = dempster_naive(&dempster_naive(&m1, &m2, false).unwrap().combined, &m3, false)
            .unwrap();
        let right = dempster_naive(&m1, &dempster_naive(&m2, &m3, false).unwrap().combined, false)
            .unwrap();
        prop_assert!(max_abs_diff(left.combined.values(), right.combined.values()) <= 1e-10);
    }
}

// Every subgraph of a poset that regenerates it under closure contains the
// covering relation, checked exhaustively on posets with at most 5 elements.
#[test]
fn hasse_graph_is_minimal_generator() {
    use mobius::poset::reflexive_transitive_closure;

    let posets = vec![
        poset_from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]), // chain
        poset_from_edges(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]), // diamond
        poset_from_edges(5, &[(0, 2), (1, 2), (2, 3), (2, 4)]), // bowtie
        poset_from_edges(3, &[]),                               // antichain
        relation_graph(&frame(2), Relation::Subset, false),     // 4-element boolean lattice
    ];
    for poset in posets {
        let covers = hasse_graph(&poset, false).unwrap();
        let arrows: Vec<(usize, usize)> = poset.arrows().collect();
        assert!(arrows.len() <= 16, "exhaustive sweep stays tractable");
        for pick in 0u32..(1 << arrows.len()) {
            let chosen: Vec<(usize, usize)> = arrows
                .iter()
                .enumerate()
                .filter(|&(i, _)| pick & (1 << i) != 0)
                .map(|(_, &a)| a)
                .collect();
            let sub = Graph::new(poset.source().clone(), poset.source().clone(), chosen).unwrap();
            if reflexive_transitive_closure(&sub).unwrap() == poset {
                for (s, t) in covers.arrows() {
                    assert!(sub.contains(s, t), "generator missing cover ({s}, {t})");
                }
            }
        }
    }
}

/// Literal oracle: walk the full cartesian product of stage arrow sets and
/// count the tuples that chain from `s` to `t`.
fn enumerate_path_tuples(stages: &[Vec<(usize, usize)>], s: usize, t: usize) -> u64 {
    if stages.iter().any(Vec::is_empty) {
        return 0;
    }
    let mut count = 0u64;
    let mut idx = vec![0usize; stages.len()];
    'odometer: loop {
        let chained = idx.iter().zip(stages).try_fold(s, |at, (&i, stage)| {
            let (a, b) = stage[i];
            (a == at).then_some(b)
        });
        if chained == Some(t) {
            count += 1;
        }
        for pos in (0..idx.len()).rev() {
            idx[pos] += 1;
            if idx[pos] < stages[pos].len() {
                continue 'odometer;
            }
            idx[pos] = 0;
        }
        return count;
    }
}

// Path counting by staged accumulation agrees with literal tuple
// enumeration on small pipelines.
#[test]
fn path_counts_match_tuple_enumeration() {
    let f = frame(2);
    let pipelines = vec![
        hasse_pipeline(&f, Relation::Subset, false),
        hasse_pipeline(&f, Relation::Subset, true),
        Pipeline::from_graphs(vec![
            relation_graph(&frame(1), Relation::Subset, false),
            relation_graph(&frame(1), Relation::Subset, false),
        ])
        .unwrap(),
    ];
    for p in pipelines {
        let stages: Vec<Vec<(usize, usize)>> = p
            .stages()
            .iter()
            .map(|s| s.as_plain().unwrap().arrows().collect())
            .collect();
        for s in 0..p.source_size() {
            for t in 0..p.target_size() {
                assert_eq!(
                    p.count_paths(s, t).unwrap(),
                    enumerate_path_tuples(&stages, s, t),
                    "pair ({s}, {t})"
                );
            }
        }
    }
    // the two-stage duplicated relation on one element: two tuples chain
    // from the bottom to the top
    let le = vec![(0, 0), (0, 1), (1, 1)];
    assert_eq!(enumerate_path_tuples(&[le.clone(), le], 0, 1), 2);
}

// For a valid decomposition, folding the stages equals transforming by the
// composed relation in one step.
#[test]
fn valid_decompositions_match_their_composite() {
    for n in 1..=4usize {
        let f = frame(n);
        for (relation, exclude) in [
            (Relation::Subset, false),
            (Relation::Subset, true),
            (Relation::Superset, false),
        ] {
            let p = hasse_pipeline(&f, relation, exclude);
            assert!(p.verify_decomposition().unwrap().valid);
            // integer input keeps both routes exact
            let input: Vec<f64> = (0..1 << n).map(|i| ((i * 7 + 3) % 13) as f64).collect();
            let staged = p.apply(&input).unwrap();
            let collapsed = p.composite().unwrap().transform(&input).unwrap();
            assert_eq!(staged, collapsed);
        }
    }
}

// The six pass orders on a three-element frame give six distinct stage
// sequences that all compute the same transform.
#[test]
fn all_pass_orders_compute_the_same_transform() {
    use mobius::powerset::hasse_pipeline_with_order;

    let f = frame(3);
    let orders = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let pipelines: Vec<Pipeline> = orders
        .iter()
        .map(|order| hasse_pipeline_with_order(&f, order, Relation::Subset, true).unwrap())
        .collect();
    // pairwise distinct as stage sequences
    for (i, a) in pipelines.iter().enumerate() {
        for b in &pipelines[i + 1..] {
            assert_ne!(a, b);
        }
    }
    // identical as transforms; integer input keeps the check exact
    let input: Vec<f64> = (0..8).map(|i| ((i * 5 + 2) % 11) as f64).collect();
    let reference = pipelines[0].apply(&input).unwrap();
    for p in &pipelines[1..] {
        assert_eq!(p.apply(&input).unwrap(), reference);
    }
    assert!(pipelines[0].verify_decomposition().unwrap().valid);
}
