mod common;

use common::*;
use ortho_core::orthograph::DEFAULT_FAMILY_CAP;
use ortho_core::{OrthoGraph, OrthoLattice, PointSet};
use proptest::prelude::*;

fn arb_graph_and_sets(max_n: usize) -> impl Strategy<Value = ((OrthoGraph, Adj), u64, u64)> {
    (arb_graph(max_n), any::<u64>(), any::<u64>())
}

fn mask(g: &OrthoGraph, bits: u64) -> PointSet {
    PointSet::from_bits(bits).intersection(g.points())
}

proptest! {
    #[test]
    fn perp_and_closure_match_oracle(((g, adj), a, _) in arb_graph_and_sets(8)) {
        let a = mask(&g, a);
        let av = from_set(g.n(), a);
        prop_assert_eq!(g.perp(a).unwrap(), to_set(&perp(&adj, &av)));
        prop_assert_eq!(g.closure(a).unwrap(), to_set(&closure(&adj, &av)));
    }

    #[test]
    fn closure_is_a_closure_operator(((g, _), a, b) in arb_graph_and_sets(8)) {
        let (a, b) = (mask(&g, a), mask(&g, b));
        let ca = g.closure(a).unwrap();
        prop_assert!(a.is_subset(ca));
        prop_assert_eq!(g.closure(ca).unwrap(), ca);
        let ab = a.intersection(b);
        prop_assert!(g.closure(ab).unwrap().is_subset(ca));
    }

    #[test]
    fn perp_reverses_order(((g, _), a, b) in arb_graph_and_sets(8)) {
        let a = mask(&g, a);
        let b = mask(&g, b).union(a);
        prop_assert!(g.perp(b).unwrap().is_subset(g.perp(a).unwrap()));
    }

    #[test]
    fn rank_matches_brute_force((g, adj) in arb_graph(8)) {
        prop_assert_eq!(g.rank(), rank(&adj));
        prop_assert!(g.is_orthogonal_set(g.maximum_orthogonal_set()));
    }

    #[test]
    fn lattice_elements_match_oracle((g, adj) in arb_graph(7)) {
        let lat = OrthoLattice::build(&g).unwrap();
        let mut mine: Vec<Vec<bool>> = lat.elements().iter().map(|&s| from_set(g.n(), s)).collect();
        mine.sort();
        prop_assert_eq!(mine, closed_family(&adj));
    }

    #[test]
    fn dacey_equals_orthomodularity((g, adj) in arb_graph(6)) {
        let dacey = g.dacey(DEFAULT_FAMILY_CAP).unwrap().passed();
        let lat = OrthoLattice::build(&g).unwrap().properties();
        prop_assert_eq!(dacey, orthomodular_oracle(&adj));
        prop_assert_eq!(dacey, lat.is_orthomodular());
    }

    #[test]
    fn orthocomplement_is_an_orthocomplementation((g, _) in arb_graph(8)) {
        let lat = OrthoLattice::build(&g).unwrap();
        prop_assert_eq!(lat.properties().ortholattice, None);
        for a in 0..lat.len() {
            prop_assert_eq!(lat.ortho(lat.ortho(a)), a);
            prop_assert_eq!(lat.meet(a, lat.ortho(a)), lat.bottom());
            prop_assert_eq!(lat.join(a, lat.ortho(a)), lat.top());
        }
    }

    #[test]
    fn point_closed_atoms_are_singletons((g, _) in arb_graph(8)) {
        prop_assume!(g.linearity().point_closed.is_none());
        let lat = OrthoLattice::build(&g).unwrap();
        let atoms: Vec<PointSet> = lat.atoms().iter().map(|&a| lat.element(a)).collect();
        let singletons: Vec<PointSet> = (0..g.n()).map(PointSet::singleton).collect();
        prop_assert_eq!(&atoms, &singletons);
        for e in 0..g.n() {
            for f in 0..g.n() {
                let (ae, af) = (lat.index_of(PointSet::singleton(e)).unwrap(), lat.index_of(PointSet::singleton(f)).unwrap());
                prop_assert_eq!(lat.leq(ae, lat.ortho(af)), g.orthogonal(e, f));
            }
        }
    }

    #[test]
    fn irredundant_quotient_is_irredundant((g, _) in arb_graph(8)) {
        let (q, theta) = g.irredundant_quotient();
        prop_assert!(q.irredundance().is_irredundant());
        prop_assert!(g.congruence(&theta).unwrap().is_congruence());
        for a in 0..g.n() {
            for b in 0..g.n() {
                prop_assert_eq!(g.orthogonal(a, b), q.orthogonal(theta.block_of(a), theta.block_of(b)));
            }
        }
    }

    #[test]
    fn automorphisms_lift_to_lattice_automorphisms((g, _) in arb_graph(5), seed in any::<u64>()) {
        let lat = OrthoLattice::build(&g).unwrap();
        let mut r = rng(seed);
        let mut pi: Vec<usize> = (0..g.n()).collect();
        for _ in 0..20 {
            use rand::seq::SliceRandom;
            pi.shuffle(&mut r);
            if g.is_automorphism(&pi).unwrap() {
                let m = lat.lift_automorphism(&pi).unwrap();
                prop_assert_eq!(m.automorphism_violation(&lat), None);
            } else {
                prop_assert!(lat.lift_automorphism(&pi).is_err());
            }
        }
    }

    #[test]
    fn l1_implies_point_closed((g, _) in arb_l1_graph()) {
        prop_assert_eq!(g.linearity().point_closed, None);
    }

    #[test]
    fn l1_orthogonal_replacement((g, adj) in arb_l1_graph()) {
        for d in subsets(g.n()).filter(|d| is_orthogonal_set(&adj, d)) {
            let ds = to_set(&d);
            let cd = g.closure(ds).unwrap();
            for e in (0..g.n()).filter(|&e| !cd.contains(e)) {
                let f = g.orthogonal_replacement(ds, e);
                prop_assert!(f.is_some(), "D = {}, e = {}", ds, e);
                let f = f.unwrap();
                prop_assert!(g.perp(ds).unwrap().contains(f));
                prop_assert_eq!(g.closure(ds.with(e)).unwrap(), g.closure(ds.with(f)).unwrap());
            }
        }
    }

    #[test]
    fn l1_irreducibility_conditions_agree((g, _) in arb_l1_graph()) {
        let l2 = g.linearity().l2.is_none();
        let third = g.third_point_on_lines().is_none();
        let graph_irr = g.is_irreducible();
        let lat_irr = OrthoLattice::build(&g).unwrap().properties().is_irreducible();
        prop_assert_eq!(l2, third);
        prop_assert_eq!(third, graph_irr);
        prop_assert_eq!(graph_irr, lat_irr);
    }

    #[test]
    fn l1_covering_chain_gives_modularity((g, _) in arb_l1_graph()) {
        let p = OrthoLattice::build(&g).unwrap().properties();
        if p.is_orthomodular() && p.is_atomistic() && p.has_covering() {
            prop_assert!(p.is_modular());
        }
    }
}
