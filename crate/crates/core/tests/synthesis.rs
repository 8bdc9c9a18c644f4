mod common;

use std::collections::BTreeSet;

use common::*;
use hazardkit_core::detect::{brute_force_hazard, list_all_hazards};
use hazardkit_core::implicants::enumerate_minterms;
use hazardkit_core::synthesis::{
    acm_formula_hazard_free, acm_formula_with_hazards, acm_oracle, cm_minterms_direct, cm_oracle,
    huffman_dnf, inject_hazards, AcmSpec, CmSpec,
};
use hazardkit_core::{BooleanFunction, HazardKind, PartialAssignment, Term, TruthTable};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn computes<B: BooleanFunction, C: BooleanFunction>(a: &B, b: &C) -> bool {
    let n = a.num_vars();
    (0..1u64 << n).all(|row| {
        let bits = PartialAssignment::from_row(n, row).to_bools().unwrap();
        a.eval(&bits) == b.eval(&bits)
    })
}

/// Checks that the hazards of `c` are all 1-hazards refining a member of
/// `expected`, and that the members themselves are hazards.
fn hazards_exactly_at(c: &hazardkit_core::Circuit, expected: &BTreeSet<PartialAssignment>) {
    let hazards = naive_all_hazards(c);
    assert!(hazards.iter().all(|(_, one)| *one), "0-hazard present");
    let witnesses: BTreeSet<PartialAssignment> =
        hazards.iter().map(|(a, _)| to_assignment(a)).collect();
    for w in &witnesses {
        assert!(
            expected.iter().any(|s| s.is_refined_by(w)),
            "stray hazard {w}"
        );
    }
    for s in expected {
        assert!(witnesses.contains(s), "missing hazard {s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn huffman_is_hazard_free_and_correct(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=6);
        let f = TruthTable::new(n, random_rows(&mut r, n)).unwrap();
        let h = huffman_dnf(&f, 14).unwrap();
        prop_assert!(computes(&f, &h));
        prop_assert!(naive_all_hazards(&h.to_circuit()).is_empty());
    }

    #[test]
    fn injection_creates_hazards_exactly_at_selection(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5);
        let f = TruthTable::new(n, random_rows(&mut r, n)).unwrap();
        let mins = enumerate_minterms(&f, 14).unwrap();
        let mut eligible: Vec<Term> = mins.items().iter().filter(|t| t.len() < n).cloned().collect();
        eligible.shuffle(&mut r);
        let k = r.gen_range(0..=eligible.len());
        let chosen = &eligible[..k];
        let g = inject_hazards(&f, chosen, 14).unwrap();
        prop_assert!(computes(&f, &g));
        let expected: BTreeSet<PartialAssignment> =
            chosen.iter().map(|t| t.to_assignment(n).unwrap()).collect();
        hazards_exactly_at(&g.to_circuit(), &expected);
        // minterm-form witnesses are exactly the selection
        let at_minterms: BTreeSet<PartialAssignment> = list_all_hazards(&g.to_circuit(), 13)
            .unwrap()
            .iter()
            .map(|h| h.witness().unwrap().clone())
            .filter(|w| mins.contains(&w.to_term(hazardkit_core::Connective::Conjunction)))
            .collect();
        prop_assert_eq!(at_minterms, expected);
    }
}

#[test]
fn huffman_for_cm_is_hazard_free() {
    for s in [3, 6] {
        let spec = CmSpec::new(s).unwrap();
        let h = huffman_dnf(&cm_oracle(spec), 14).unwrap();
        assert_eq!(h.terms(), cm_minterms_direct(spec).items());
        assert!(computes(&cm_oracle(spec), &h));
        assert!(!brute_force_hazard(&h.to_circuit(), 13).unwrap().found());
    }
}

#[test]
fn acm_with_one_selected_minterm() {
    let spec = AcmSpec::new(2, 3).unwrap();
    let cm = cm_minterms_direct(spec.cm());
    let free = PartialAssignment::all_unstable(3);
    for group in 0..2 {
        for chosen in cm.items() {
            let c = acm_formula_with_hazards(spec, group, std::slice::from_ref(chosen)).unwrap();
            assert_eq!(c.depth(), 3);
            assert!(computes(&acm_oracle(spec), &c));
            let local = chosen.to_assignment(3).unwrap();
            let block = if group == 0 {
                local.concat(&free)
            } else {
                free.concat(&local)
            };
            // hazards: the chosen block combined with anything forcing the other block to 1
            let other = |w: &PartialAssignment| {
                if group == 0 {
                    w.slice(3, 3)
                } else {
                    w.slice(0, 3)
                }
            };
            let hazards = naive_all_hazards(&c);
            assert!(hazards.iter().all(|(_, one)| *one));
            for (w, _) in &hazards {
                let w = to_assignment(w);
                assert!(block.is_refined_by(&w));
                let o = other(&w);
                assert!(o
                    .resolutions()
                    .all(|b| cm_oracle(spec.cm()).eval(&b.to_bools().unwrap())));
            }
            let products: BTreeSet<PartialAssignment> = cm
                .assignments()
                .iter()
                .map(|m| {
                    if group == 0 {
                        local.concat(m)
                    } else {
                        m.concat(&local)
                    }
                })
                .collect();
            let at_minterms: BTreeSet<PartialAssignment> = hazards
                .iter()
                .map(|(w, _)| to_assignment(w))
                .filter(|w| w.stable_count() == 4)
                .collect();
            assert_eq!(at_minterms, products);
        }
    }
}

#[test]
fn acm_with_every_minterm_selected() {
    let spec = AcmSpec::new(2, 3).unwrap();
    let all = cm_minterms_direct(spec.cm()).into_items();
    let c = acm_formula_with_hazards(spec, 1, &all).unwrap();
    let acm_minterms = enumerate_minterms(&acm_oracle(spec), 14)
        .unwrap()
        .assignments();
    let hazards: BTreeSet<PartialAssignment> = list_all_hazards(&c, 13)
        .unwrap()
        .iter()
        .inspect(|h| assert_eq!(h.kind(), Some(HazardKind::One)))
        .map(|h| h.witness().unwrap().clone())
        .collect();
    assert_eq!(acm_minterms.len(), 36);
    for m in &acm_minterms {
        assert!(hazards.contains(m));
    }
}

#[test]
fn hazard_free_acm_three_groups() {
    let spec = AcmSpec::new(3, 3).unwrap();
    let c = acm_formula_hazard_free(spec).unwrap();
    assert!(computes(&acm_oracle(spec), &c));
    assert!(!brute_force_hazard(&c, 13).unwrap().found());
}
