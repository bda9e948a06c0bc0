mod common;

use cayrep::autsearch::{automorphism_group, is_automorphism};
use cayrep::coherent::wl_closure;
use cayrep::graph::Digraph;
use cayrep::grouplib::{canonical_connection_set, cayley_graph, cayley_scheme, translation, ConnectionSet, GElem};
use cayrep::mainsub::main_subroutine;
use cayrep::oracle::{brute_regular_e4cp, brute_semiregular_p, verify_certificate, DEFAULT_BUDGET};
use cayrep::perm::is_semiregular_cp;
use cayrep::solver::{all_representations, find_representation, iso_test, r_of_p, represent};
use cayrep::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

/// The dodecahedron as the generalized Petersen graph GP(10, 2): vertex
/// transitive but not a Cayley graph.
fn dodecahedron() -> Digraph {
    let edges: Vec<(usize, usize)> = (0..10)
        .flat_map(|i| [(i, (i + 1) % 10), (i, 10 + i), (10 + i, 10 + (i + 2) % 10)])
        .collect();
    undirected(20, &edges)
}

fn desargues() -> Digraph {
    let edges: Vec<(usize, usize)> = (0..10)
        .flat_map(|i| [(i, (i + 1) % 10), (i, 10 + i), (10 + i, 10 + (i + 3) % 10)])
        .collect();
    undirected(20, &edges)
}

#[test]
fn solver_agrees_with_regular_subgroup_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut graphs = vec![
        ("20-cycle", cycle_graph(20)),
        ("dodecahedron", dodecahedron()),
        ("Desargues", desargues()),
        ("4 x C5", disjoint_cycles(4, 5)),
    ];
    for i in 0..6 {
        let s = random_connection_set(5, &mut rng);
        graphs.push(("planted", shuffled(&cayley_graph(5, &s).unwrap(), &mut rng)));
        graphs.push(("random", erdos_renyi(20, 0.3 + 0.05 * i as f64, &mut rng)));
    }
    let mut compared = 0;
    for (name, g) in graphs {
        let budget = if name == "4 x C5" { 1_000_000 } else { DEFAULT_BUDGET };
        let truth = match brute_regular_e4cp(&g, budget) {
            Ok(found) => !found.is_empty(),
            Err(Error::BudgetExceeded { .. }) => continue,
            Err(e) => panic!("{name}: {e}"),
        };
        let answer = find_representation(&g).unwrap();
        assert_eq!(answer.is_some(), truth, "{name}");
        if let Some(cert) = answer {
            assert!(verify_certificate(&g, &cert), "{name}");
        }
        compared += 1;
    }
    assert!(compared >= 12);
}

#[test]
fn dodecahedron_is_not_cayley() {
    assert!(find_representation(&dodecahedron()).unwrap().is_none());
}

#[test]
fn planted_subgroup_lies_in_r_of_p() {
    let p = 5;
    let s = ConnectionSet::parse(p, "01.0,10.0,00.1,00.4").unwrap();
    let cc = cayley_scheme(p, &s).unwrap();
    let gen = translation(p, &GElem::new(0, 1));
    let planted: Vec<_> = {
        let mut h: Vec<_> = (0..4 * p as usize)
            .map(|i| translation(p, &GElem::from_index(i, p)))
            .collect();
        h.sort();
        h
    };
    let found = r_of_p(&cc, &gen, p).unwrap();
    assert!(found.contains(&planted));
    for h in &found {
        assert_eq!(h.len(), 20);
        assert!(h.iter().all(|g| is_automorphism(&cc, g)));
    }
}

#[test]
fn r_of_p_is_empty_without_commuting_involutions() {
    // Marking one orbit of the Cp-translation makes the four orbits
    // pairwise distinguishable, so no centralizing involution survives.
    let p = 5;
    let mut seeds = vec![cayley_graph(p, &ConnectionSet::parse(p, "00.1").unwrap())
        .unwrap()
        .arcs()];
    seeds.push((0..p as usize).map(|k| (k, k)).collect());
    seeds.push((p as usize..2 * p as usize).map(|k| (k, k)).collect());
    let cc = wl_closure(20, &seeds).unwrap();
    let gen = translation(p, &GElem::new(0, 1));
    assert!(is_automorphism(&cc, &gen));
    assert!(r_of_p(&cc, &gen, p).unwrap().is_empty());
    assert!(r_of_p(&cc, &translation(p, &GElem::new(1, 0)), p).is_err());
}

#[test]
fn planted_cp_has_four_semiregular_elements_when_aut_is_regular() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut seen = 0;
    for _ in 0..40 {
        let s = random_connection_set(5, &mut rng);
        let g = cayley_graph(5, &s).unwrap();
        let cc = wl_closure(20, &[g.arcs()]).unwrap();
        if automorphism_group(&cc).group.order_u64() != Some(20) {
            continue;
        }
        let found = brute_semiregular_p(&g, 5, DEFAULT_BUDGET).unwrap();
        let planted: Vec<_> = (1..5).map(|k| translation(5, &GElem::new(0, k))).collect();
        assert_eq!(found.len(), 4);
        assert!(planted.iter().all(|t| found.contains(t)));
        assert_eq!(brute_regular_e4cp(&g, DEFAULT_BUDGET).unwrap().len(), 1);
        seen += 1;
    }
    assert!(seen > 0, "no instance with a regular automorphism group");
}

#[test]
fn main_subroutine_output_is_semiregular_and_automorphic() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for p in [5, 7] {
        for _ in 0..10 {
            let s = random_connection_set(p, &mut rng);
            let cc = cayley_scheme(p, &s).unwrap();
            let bp = main_subroutine(&cc, p).unwrap();
            assert!(!bp.is_empty(), "{s}");
            for g in bp.generators() {
                assert!(is_semiregular_cp(g, p));
                assert!(is_automorphism(&cc, g));
            }
        }
    }
}

#[test]
fn all_representations_are_pairwise_inequivalent() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..5 {
        let s = random_connection_set(5, &mut rng);
        let g = shuffled(&cayley_graph(5, &s).unwrap(), &mut rng);
        let certs = all_representations(&g).unwrap();
        // G is a CI-group: every representation is equivalent to the planted one.
        assert_eq!(certs.len(), 1);
        assert!(verify_certificate(&g, &certs[0]));
        assert_eq!(
            canonical_connection_set(&certs[0].connection_set),
            canonical_connection_set(&s)
        );
    }
}

#[test]
fn iso_test_rejects_mismatched_inputs() {
    let s = ConnectionSet::parse(5, "00.1,00.4,01.0,10.0").unwrap();
    assert!(iso_test(&s, &cycle_graph(20)).unwrap().is_none());
    assert!(iso_test(&s, &cycle_graph(28)).unwrap().is_none());
}

#[test]
fn representation_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let s = random_connection_set(7, &mut rng);
    let g = shuffled(&cayley_graph(7, &s).unwrap(), &mut rng);
    let a = represent(&g).unwrap().unwrap().to_json();
    let b = represent(&g).unwrap().unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn wrong_degrees_are_input_errors() {
    assert!(matches!(represent(&Digraph::new(18)), Err(Error::Input(_))));
    assert!(matches!(find_representation(&Digraph::new(12)), Err(Error::Input(_))));
}
