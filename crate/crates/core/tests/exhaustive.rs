mod common;

use std::collections::BTreeSet;

use common::*;
use itertools::Itertools;
use starfact::{translate, PreimagePolicy, Word, DEFAULT_BUDGET};

#[test]
fn search_matches_naive_enumeration() {
    for n in 1..=4 {
        for inst in all_instances(n) {
            let got: Vec<Vec<usize>> = inst
                .enumerate_brute(DEFAULT_BUDGET)
                .unwrap()
                .iter()
                .map(|f| f.others().to_vec())
                .collect();
            let mut want = naive_enumerate(inst.perm().image(), inst.pivot());
            want.sort();
            assert_eq!(got, want, "{} k={}", inst.perm(), inst.pivot());
        }
    }
}

#[test]
fn formula_matches_naive_formula() {
    for n in 1..=5 {
        for inst in all_instances(n) {
            assert_eq!(
                inst.count_formula().unwrap(),
                naive_count(inst.perm().image())
            );
        }
    }
}

#[test]
fn valid_words_match_naive_scan() {
    for n in 1..=4 {
        for inst in all_instances(n) {
            let lens: Vec<usize> = (1..=inst.m()).map(|i| inst.cycle_len(i)).collect();
            let len = inst.factor_len();
            let naive: Vec<Word> = std::iter::repeat_n(1..=inst.m(), len)
                .multi_cartesian_product()
                .filter(|w| naive_valid_word(w, &lens, inst.p()))
                .map(Word)
                .collect();
            let got = inst.enumerate_valid_words();
            assert_eq!(got, naive, "{} k={}", inst.perm(), inst.pivot());
        }
    }
}

#[test]
fn rho_enumeration_matches_search() {
    for n in 1..=5 {
        for inst in all_instances(n) {
            let a = serialize(&inst.enumerate_brute(DEFAULT_BUDGET).unwrap());
            let b = serialize(&inst.enumerate_via_rho().unwrap());
            assert_eq!(a, b, "{} k={}", inst.perm(), inst.pivot());
        }
    }
}

#[test]
fn hook_trees_round_trip_and_stay_in_class() {
    for n in 1..=4 {
        for inst in all_instances(n) {
            let class: BTreeSet<_> = inst
                .enumerate_trees(DEFAULT_BUDGET)
                .unwrap()
                .into_iter()
                .collect();
            for h in inst.hook_assignments() {
                let tree = inst.tree_forward(&h).unwrap();
                assert!(class.contains(&tree), "{tree}");
                assert!(inst.is_valid_word(&tree.preorder_word().unwrap()));
                assert_eq!(inst.tree_inverse(&tree).unwrap(), h);
            }
        }
    }
}

#[test]
fn phi_decomposes_through_rho() {
    for n in 1..=4 {
        for inst in all_instances(n) {
            for x in inst.phi_domain() {
                let fac = inst.phi(&x).unwrap();
                assert_eq!(fac.evaluate(), *inst.perm());
                assert!(fac.is_transitive());
                assert_eq!(fac.len(), inst.factor_len());

                let h = starfact::HookAssignment::new(x.f.clone(), x.c[inst.p() - 1]);
                let word = inst.tree_forward(&h).unwrap().preorder_word().unwrap();
                assert_eq!(inst.word_of(&fac).unwrap(), word);
                let choice: Vec<usize> =
                    x.c.iter()
                        .enumerate()
                        .filter(|&(i, _)| i + 1 != inst.p())
                        .map(|(_, &c)| c)
                        .collect();
                let (letters, _) = inst.enclosures_of(&fac).unwrap();
                assert_eq!(
                    letters,
                    inst.cycle_map(&starfact::EnclosureChoice(choice)).unwrap()
                );
            }
        }
    }
}

#[test]
fn domain_size_matches_formula() {
    for n in 1..=5 {
        for inst in all_instances(n) {
            assert_eq!(
                inst.phi_domain().len() as u128,
                inst.count_formula().unwrap()
            );
        }
    }
}

#[test]
fn translation_lands_in_target_set() {
    for n in 1..=4 {
        for pi in all_perms(n) {
            let insts: Vec<_> = (1..=n)
                .map(|k| starfact::Instance::new(pi.clone(), k).unwrap())
                .collect();
            for from in &insts {
                for fac in from.enumerate_brute(DEFAULT_BUDGET).unwrap() {
                    for to in &insts {
                        match translate(from, to, &fac, PreimagePolicy::Lexicographic) {
                            Ok(t) => to.check_member(&t.factorization).unwrap(),
                            Err(e) => assert!(e.is_preimage_failure(), "{e}"),
                        }
                    }
                }
            }
        }
    }
}
