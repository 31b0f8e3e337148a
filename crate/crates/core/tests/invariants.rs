//! Property tests over random structures and fixtures.

mod common;

use ageprofile::algebra::{
    e_element, is_hereditary, isomorphy_classes, multiply, shuffle, tournament_identity, AgeBasis,
    AlgebraElement, ShuffleCombination,
};
use ageprofile::decomposition::{
    canonical_decomposition, is_monomorphic_part, is_monomorphic_part_by_definition,
};
use ageprofile::presentation::fixtures::{
    builtin, presentation_fixtures, tournament_lexsum, TOURNAMENT_NAMES,
};
use ageprofile::profile::{
    check_basic_inequality, check_linalg_inequality, profile_finite_upto, profile_sequence,
};
use ageprofile::series::{classify_growth, GrowthClass};
use ageprofile::subsets::mask_to_vec;
use ageprofile::tournament::{acyclic_components, classify, is_acyclic, TournamentRegime};
use ageprofile::{is_autonomous, ProfileSequence, RelStruct, Source, TruncatedSeries};
use num_rational::BigRational;
use proptest::prelude::*;

fn digraph_strategy(max: usize) -> impl Strategy<Value = RelStruct> {
    (0..=max).prop_flat_map(|m| {
        proptest::collection::vec(any::<bool>(), m * m).prop_map(move |bits| {
            let arcs: Vec<(usize, usize)> = (0..m * m)
                .filter(|&i| bits[i])
                .map(|i| (i / m, i % m))
                .collect();
            RelStruct::digraph(m, &arcs)
        })
    })
}

fn graph_strategy(max: usize) -> impl Strategy<Value = RelStruct> {
    (1..=max).prop_flat_map(|m| {
        proptest::collection::vec(any::<bool>(), m * (m - 1) / 2).prop_map(move |bits| {
            let pairs: Vec<(usize, usize)> = (0..m)
                .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
                .collect();
            let edges: Vec<(usize, usize)> = pairs
                .into_iter()
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(p, _)| p)
                .collect();
            RelStruct::graph(m, &edges)
        })
    })
}

fn tournament_strategy(max: usize) -> impl Strategy<Value = RelStruct> {
    (1..=max).prop_flat_map(|m| {
        proptest::collection::vec(any::<bool>(), m * (m - 1) / 2).prop_map(move |bits| {
            let pairs: Vec<(usize, usize)> = (0..m)
                .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
                .collect();
            let arcs: Vec<(usize, usize)> = pairs
                .into_iter()
                .zip(bits)
                .map(|((a, b), fwd)| if fwd { (a, b) } else { (b, a) })
                .collect();
            RelStruct::digraph(m, &arcs)
        })
    })
}

fn permutation_strategy(m: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..m).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_code_is_relabeling_invariant((r, perm) in digraph_strategy(7).prop_flat_map(|r| {
        let m = r.domain_size();
        (Just(r), permutation_strategy(m))
    })) {
        prop_assert_eq!(r.canonical_code(), r.permute(&perm).canonical_code());
    }

    #[test]
    fn restriction_is_functorial(r in digraph_strategy(6), a in any::<u64>(), b in any::<u64>()) {
        let m = r.domain_size();
        let full = if m == 0 { 0 } else { (1u64 << m) - 1 };
        let outer = a & full;
        let inner = b & outer;
        // inner set, renumbered inside the outer restriction
        let outer_items = mask_to_vec(outer);
        let inner_local: Vec<usize> = outer_items
            .iter()
            .enumerate()
            .filter(|(_, &x)| inner >> x & 1 == 1)
            .map(|(i, _)| i)
            .collect();
        let twice = r.restrict(&outer_items).unwrap().restrict(&inner_local).unwrap();
        prop_assert_eq!(twice, r.restrict_mask(inner));
    }

    #[test]
    fn profile_inequalities_hold(r in graph_strategy(7)) {
        let m = r.domain_size();
        let seq = ProfileSequence::new(profile_finite_upto(&r, m).unwrap(), "random", false);
        prop_assert!(check_basic_inequality(&seq).is_empty());
        for n in 0..=m / 2 {
            for k in 0..=m - 2 * n {
                prop_assert!(check_linalg_inequality(&r, n, k).unwrap());
            }
        }
    }

    #[test]
    fn monomorphic_part_test_matches_definition(r in graph_strategy(6), mask in any::<u64>()) {
        let m = r.domain_size();
        let part = mask_to_vec(mask & ((1u64 << m) - 1));
        prop_assert_eq!(
            is_monomorphic_part(&r, &part).unwrap(),
            is_monomorphic_part_by_definition(&r, &part).unwrap()
        );
    }

    #[test]
    fn canonical_blocks_are_monomorphic_parts(r in graph_strategy(7)) {
        let d = canonical_decomposition(&r).unwrap();
        let mut covered = 0;
        for b in &d.blocks {
            covered += b.members.len();
            prop_assert!(is_monomorphic_part_by_definition(&r, &b.members).unwrap());
        }
        prop_assert_eq!(covered, r.domain_size());
    }

    #[test]
    fn isomorphy_partition_is_hereditary(r in digraph_strategy(5)) {
        let classes = isomorphy_classes(&r).unwrap();
        prop_assert!(is_hereditary(r.domain_size(), &classes).unwrap());
    }

    #[test]
    fn acyclic_components_are_maximal(t in tournament_strategy(7)) {
        let components = acyclic_components(&t).unwrap();
        let m = t.domain_size();
        // every acyclic autonomous set lies inside one component
        for mask in 1u64..1 << m {
            let set = mask_to_vec(mask);
            if is_acyclic(&t, &set) && is_autonomous(&t, &set).unwrap() {
                prop_assert!(components.iter().any(|c| set.iter().all(|x| c.contains(x))), "{:?}", set);
            }
        }
        for (i, a) in components.iter().enumerate() {
            for b in &components[i + 1..] {
                let mut union = a.clone();
                union.extend(b);
                union.sort_unstable();
                prop_assert!(!(is_acyclic(&t, &union) && is_autonomous(&t, &union).unwrap()));
            }
        }
    }

    #[test]
    fn shuffle_is_commutative_and_associative(
        a in proptest::collection::vec(1u32..8, 0..3),
        b in proptest::collection::vec(1u32..8, 0..3),
        c in proptest::collection::vec(1u32..8, 0..2),
    ) {
        let w = |l: &Vec<u32>| ShuffleCombination::word(3, l.clone()).unwrap();
        let (a, b, c) = (w(&a), w(&b), w(&c));
        prop_assert_eq!(shuffle(&a, &b).unwrap(), shuffle(&b, &a).unwrap());
        prop_assert_eq!(
            shuffle(&shuffle(&a, &b).unwrap(), &c).unwrap(),
            shuffle(&a, &shuffle(&b, &c).unwrap()).unwrap()
        );
    }
}

fn random_element(basis: &AgeBasis, degree: usize, seed: u64) -> AlgebraElement {
    let mut s = seed;
    let mut next = move || {
        s = s
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (s >> 33) as i64
    };
    AlgebraElement::from_terms((0..basis.dimension(degree)).map(|i| {
        (
            (degree, i),
            BigRational::from_integer((next() % 7 - 3).into()),
        )
    }))
}

#[test]
fn multiplication_is_commutative_associative_and_graded() {
    for name in ["two-cliques", "T2", "colored-chain:2", "half-bipartite"] {
        let f = builtin(name).unwrap();
        let basis = AgeBasis::from_source(&f.source, name, 4).unwrap();
        for (i, (a, b, c)) in [(1, 1, 1), (1, 2, 1), (2, 1, 1), (1, 1, 2)]
            .into_iter()
            .enumerate()
        {
            let seed = 17 * i as u64 + name.len() as u64;
            let u = random_element(&basis, a, seed);
            let v = random_element(&basis, b, seed + 1);
            let w = random_element(&basis, c, seed + 2);
            let uv = multiply(&basis, &u, &v).unwrap();
            assert_eq!(uv, multiply(&basis, &v, &u).unwrap(), "{name}");
            assert!(uv.terms().keys().all(|&(d, _)| d == a + b));
            let left = multiply(&basis, &uv, &w).unwrap();
            let right = multiply(&basis, &u, &multiply(&basis, &v, &w).unwrap()).unwrap();
            assert_eq!(left, right, "{name}");
        }
    }
}

#[test]
fn structure_constants_do_not_depend_on_representatives() {
    for f in presentation_fixtures() {
        let basis = AgeBasis::from_source(&f.source, &f.name, 5).unwrap();
        // same types, every representative relabeled by a rotation
        let levels: Vec<Vec<_>> = (0..=5)
            .map(|n| {
                basis
                    .types(n)
                    .iter()
                    .map(|(code, rep)| {
                        let perm: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
                        (code.clone(), rep.permute(&perm))
                    })
                    .collect()
            })
            .collect();
        let rotated = AgeBasis::from_levels(&f.name, levels).unwrap();
        for m in 1..=2 {
            for n in m..=5 - m {
                for s in 0..basis.dimension(m) {
                    for t in 0..basis.dimension(n) {
                        assert_eq!(
                            basis.structure_constants((m, s), (n, t)).unwrap(),
                            rotated.structure_constants((m, s), (n, t)).unwrap(),
                            "{} ({m},{s}) ({n},{t})",
                            f.name
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn tournament_identity_on_tournament_fixtures() {
    for name in TOURNAMENT_NAMES {
        let f = builtin(name).unwrap();
        let basis = AgeBasis::from_source(&f.source, name, 5).unwrap();
        for n in 0..=5 {
            assert!(
                tournament_identity(&basis, n).unwrap().holds,
                "{name} n={n}"
            );
        }
        assert!(!e_element(&basis).unwrap().is_zero());
    }
}

#[test]
fn shuffle_dimension_matches_colored_chain() {
    // singleton-letter words of length n over k letters
    for k in 1..=3usize {
        let mut words: Vec<Vec<u32>> = vec![Vec::new()];
        for n in 0..=5 {
            let f = builtin(&format!("colored-chain:{k}")).unwrap();
            let phi = profile_sequence(&f.source, "", n).unwrap().values[n];
            assert_eq!(words.len() as u64, phi);
            words = words
                .iter()
                .flat_map(|w| (0..k).map(move |a| [w.clone(), vec![1u32 << a]].concat()))
                .collect();
        }
    }
}

#[test]
fn polynomial_tournaments_classify_with_the_predicted_degree() {
    for name in ["omega", "T1", "T2", "T3"] {
        let source = Source::from(tournament_lexsum(name).unwrap());
        let report = classify(&source, 11).unwrap();
        let TournamentRegime::Polynomial { degree } = report.regime else {
            panic!("{name}: {:?}", report.regime);
        };
        let series = TruncatedSeries::from_profile(&report.profile).unwrap();
        match classify_growth(&series) {
            GrowthClass::Constant => assert_eq!(degree, 0, "{name}"),
            GrowthClass::Polynomial { degree: d, .. } => assert_eq!(d, degree, "{name}"),
            other => panic!("{name}: {other}"),
        }
    }
}

#[test]
fn c3_omega_dominates_exponential() {
    let report = classify(&builtin("C3omega").unwrap().source, 9).unwrap();
    assert_eq!(report.regime, TournamentRegime::AtLeastExponential);
    for n in 6..=9 {
        assert!(report.profile[n] as f64 > 1.3f64.powi(n as i32), "n={n}");
    }
}
