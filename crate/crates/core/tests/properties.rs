mod common;

use cayrep::autsearch::{automorphism_group, is_automorphism};
use cayrep::cli::parse_graph;
use cayrep::coherent::{intersection_numbers_check, wl_closure, PairSet};
use cayrep::grouplib::{aut_of_g, canonical_connection_set, cayley_graph, ConnectionSet, GElem};
use cayrep::oracle::verify_certificate;
use cayrep::perm::Perm;
use cayrep::solver::find_representation;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Perm::from_images(images).unwrap())
}

fn elem_strategy(p: u64) -> impl Strategy<Value = GElem> {
    (0u8..4, 0..p).prop_map(|(u, z)| GElem::new(u, z))
}

fn set_strategy(p: u64) -> impl Strategy<Value = ConnectionSet> {
    proptest::collection::btree_set(1..4 * p as usize, 0..(4 * p as usize - 1))
        .prop_map(move |idx| ConnectionSet::new(p, idx.into_iter().map(|i| GElem::from_index(i, p))).unwrap())
}

proptest! {
    #[test]
    fn perm_composition_laws(a in perm_strategy(9), b in perm_strategy(9), c in perm_strategy(9)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.pow(a.order()), Perm::identity(9));
        prop_assert_eq!(a.cycle_type().iter().sum::<usize>(), 9);
    }

    #[test]
    fn group_laws(x in elem_strategy(7), y in elem_strategy(7), z in elem_strategy(7)) {
        prop_assert_eq!(x.add(&y, 7).add(&z, 7), x.add(&y.add(&z, 7), 7));
        prop_assert_eq!(x.add(&y, 7), y.add(&x, 7));
        prop_assert!(x.add(&x.neg(7), 7).is_identity());
        prop_assert_eq!(x.to_string().parse::<GElem>().unwrap(), x);
    }

    #[test]
    fn group_automorphisms_are_homomorphisms(x in elem_strategy(5), y in elem_strategy(5), k in 0usize..24) {
        let sigma = aut_of_g(5).unwrap()[k];
        prop_assert_eq!(sigma.apply(&x.add(&y, 5), 5), sigma.apply(&x, 5).add(&sigma.apply(&y, 5), 5));
    }

    #[test]
    fn canonical_form_is_an_aut_invariant(s in set_strategy(5), k in 0usize..24) {
        let sigma = aut_of_g(5).unwrap()[k];
        prop_assert_eq!(canonical_connection_set(&s.image(&sigma)), canonical_connection_set(&s));
        prop_assert_eq!(ConnectionSet::parse(5, &s.to_string()).unwrap(), s);
    }

    #[test]
    fn gen_output_parses_back(s in set_strategy(3)) {
        let g = cayley_graph(3, &s).unwrap();
        prop_assert_eq!(parse_graph(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn closures_are_coherent(n in 1usize..12, arcs in proptest::collection::vec((0usize..12, 0usize..12), 0..40)) {
        let seed: PairSet = arcs.into_iter().filter(|&(a, b)| a < n && b < n).collect();
        let cc = wl_closure(n, &[seed]).unwrap();
        prop_assert!(intersection_numbers_check(&cc));
        for g in automorphism_group(&cc).generators {
            prop_assert!(is_automorphism(&cc, &g));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn planted_graphs_are_recovered(s in set_strategy(5), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::shuffled(&cayley_graph(5, &s).unwrap(), &mut rng);
        let cert = find_representation(&g).unwrap().expect("planted graph is Cayley");
        prop_assert!(verify_certificate(&g, &cert));
        prop_assert_eq!(canonical_connection_set(&cert.connection_set), canonical_connection_set(&s));
    }
}
