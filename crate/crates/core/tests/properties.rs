//! Property tests for the spec invariants that have natural random
//! generators: distributive lattices from random posets, diagram round
//! trips over random permutations, and lattice construction robustness.

use std::collections::BTreeSet;

use canonical_complex::{
    congruence_from_uncontracted, distributive_from_poset, join_diagram, meet_diagram,
    permutation_of_join_diagram, permutation_of_meet_diagram, quotient, weak_order_lattice,
    FiniteLattice, Permutation, Poset, Scab, Woip,
};
use proptest::prelude::*;

/// The two characterizations of join (and meet) semidistributivity —
/// unique minimal joinand at every cover, and the triple implication —
/// agree on every lattice family the suite uses.
#[test]
fn semidistributivity_conditions_agree_on_suite_lattices() {
    let mut lattices: Vec<(String, FiniteLattice)> = Vec::new();
    for k in 1..=5 {
        let covers: Vec<(usize, usize)> = (0..k - 1).map(|i| (i, i + 1)).collect();
        lattices.push((format!("chain {k}"), FiniteLattice::build(k, &covers).unwrap()));
    }
    lattices.push((
        "M3".into(),
        FiniteLattice::build(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap(),
    ));
    lattices.push((
        "N5".into(),
        FiniteLattice::build(5, &[(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)]).unwrap(),
    ));
    for k in 1..=4 {
        let d = distributive_from_poset(&Poset::antichain(k)).unwrap();
        lattices.push((format!("boolean {k}"), d.lattice));
    }
    let v = Poset::from_relations(4, &[(0, 1), (0, 2), (2, 3)]).unwrap();
    lattices.push(("distributive".into(), distributive_from_poset(&v).unwrap().lattice));
    for n in 2..=4 {
        let w = weak_order_lattice(n).unwrap();
        let ideal = canonical_complex::ArcIdeal::sylvester(n).unwrap();
        let cong = ideal.congruence(&w).unwrap();
        lattices.push((format!("Tamari {n}"), quotient(&w.lattice, &cong).unwrap().lattice));
        lattices.push((format!("S{n}"), w.lattice));
    }
    for (name, l) in &lattices {
        assert_eq!(
            l.is_join_semidistributive(),
            l.join_semidistributivity_witness().is_none(),
            "join conditions disagree on {name}"
        );
        assert_eq!(
            l.is_meet_semidistributive(),
            l.meet_semidistributivity_witness().is_none(),
            "meet conditions disagree on {name}"
        );
    }
}

/// Random labeled poset on `k` points from random pair orientations
/// (0 = incomparable); cyclic draws are discarded.
fn poset_strategy(max_points: usize) -> impl Strategy<Value = Poset> {
    (1..=max_points)
        .prop_flat_map(|k| {
            let pairs = k * (k - 1) / 2;
            (Just(k), proptest::collection::vec(0u8..3, pairs))
        })
        .prop_filter_map("orientation has a cycle", |(k, choices)| {
            let mut relations = Vec::new();
            let mut idx = 0;
            for i in 0..k {
                for j in (i + 1)..k {
                    match choices[idx] {
                        1 => relations.push((i, j)),
                        2 => relations.push((j, i)),
                        _ => {}
                    }
                    idx += 1;
                }
            }
            Poset::from_relations(k, &relations).ok()
        })
}

fn permutation_strategy(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| {
        Just((1..=n as u8).collect::<Vec<u8>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    })
}

proptest! {
    #[test]
    fn distributive_lattices_are_semidistributive_with_inverse_kappa(
        p in poset_strategy(6)
    ) {
        let d = distributive_from_poset(&p).unwrap();
        prop_assert!(d.lattice.is_semidistributive());
        prop_assert!(d.lattice.join_semidistributivity_witness().is_none());
        prop_assert!(d.lattice.meet_semidistributivity_witness().is_none());
        for y in 0..p.size() {
            let m = d.complement_id(y);
            let j = d.principal_id(y);
            prop_assert_eq!(d.lattice.kappa_join(m).unwrap(), j);
            prop_assert_eq!(d.lattice.kappa_meet(j).unwrap(), m);
        }
    }

    #[test]
    fn distributive_cjr_is_the_generating_antichain(p in poset_strategy(6)) {
        let d = distributive_from_poset(&p).unwrap();
        for a in p.antichains() {
            let x = d.generated_id(&a);
            let want: BTreeSet<usize> = a.iter().map(|&y| d.principal_id(y)).collect();
            let rep = d.lattice.cjr(x).unwrap();
            prop_assert_eq!(rep.members(), &want);
            prop_assert_eq!(rep, d.lattice.cjr_brute_force(x).unwrap());
        }
    }

    #[test]
    fn distributive_congruences_accept_every_irreducible_subset(
        p in poset_strategy(5),
        mask in any::<u32>()
    ) {
        // No forcing in a distributive lattice: every subset of join
        // irreducibles is an uncontracted set.
        let d = distributive_from_poset(&p).unwrap();
        let ji = d.lattice.irreducibles().join_irreducibles.clone();
        let kept: BTreeSet<usize> = ji
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> (i % 32) & 1 == 1)
            .map(|(_, &j)| j)
            .collect();
        let c = congruence_from_uncontracted(&d.lattice, &kept).unwrap();
        let back: BTreeSet<usize> = c.uncontracted_ji(&d.lattice).into_iter().collect();
        prop_assert_eq!(back, kept);
        let q = quotient(&d.lattice, &c).unwrap();
        prop_assert!(q.lattice.is_semidistributive());
    }

    #[test]
    fn diagram_round_trips(p in permutation_strategy(7)) {
        let d = join_diagram(&p);
        prop_assert_eq!(d.len(), p.descents().len());
        prop_assert_eq!(&permutation_of_join_diagram(&d), &p);
        let m = meet_diagram(&p);
        prop_assert_eq!(m.len(), p.ascents().len());
        prop_assert_eq!(&permutation_of_meet_diagram(&m), &p);
    }

    #[test]
    fn interval_encodings_agree(seed in any::<u64>(), n in 2usize..=4) {
        let w = weak_order_lattice(n).unwrap();
        let a = (seed % w.lattice.size() as u64) as usize;
        let b = ((seed / 64) % w.lattice.size() as u64) as usize;
        let x = w.lattice.meet(a, b);
        let y = w.lattice.join(a, b);
        let (px, py) = (w.permutation(x), w.permutation(y));
        let scab = Scab::of_interval(px, py).unwrap();
        let woip = Woip::from_scab(&scab);
        prop_assert_eq!(&woip, &Woip::of_interval(px, py).unwrap());
        prop_assert_eq!(woip.to_scab(), scab);
        let exts: BTreeSet<Permutation> =
            woip.linear_extensions().unwrap().into_iter().collect();
        let want: BTreeSet<Permutation> = (0..w.lattice.size())
            .filter(|&z| w.lattice.leq(x, z) && w.lattice.leq(z, y))
            .map(|z| w.permutation(z).clone())
            .collect();
        prop_assert_eq!(exts, want);
    }

    #[test]
    fn build_lattice_rejects_or_satisfies_axioms(
        size in 1usize..=7,
        raw in proptest::collection::vec((0usize..7, 0usize..7), 0..12)
    ) {
        let covers: Vec<(usize, usize)> = raw
            .into_iter()
            .filter(|&(a, b)| a < size && b < size)
            .collect();
        if let Ok(l) = FiniteLattice::build(size, &covers) {
            for x in l.elements() {
                for y in l.elements() {
                    let j = l.join(x, y);
                    let m = l.meet(x, y);
                    // Absorption and commutativity.
                    prop_assert_eq!(l.meet(x, j), x);
                    prop_assert_eq!(l.join(x, m), x);
                    prop_assert_eq!(l.join(y, x), j);
                    for z in l.elements() {
                        // Associativity on the sampled triple.
                        prop_assert_eq!(l.join(j, z), l.join(x, l.join(y, z)));
                    }
                }
            }
        }
    }
}
