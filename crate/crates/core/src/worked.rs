//! Hand-checkable reference values for two small permutations, used by the
//! audit and the acceptance suite.

use std::collections::BTreeSet;

use crate::bijection::{translate, PhiInput, PreimagePolicy};
use crate::hooks::HookAssignment;
use crate::instance::Instance;
use crate::perm::Permutation;
use crate::star::DEFAULT_BUDGET;
use crate::tree::OrderedTree;
use crate::word::{CycleEnclosures, EnclosureChoice, Word};
use crate::Result;

/// All 42 minimal transitive star factorizations of `(1 4 2)(3 5)(6)` with
/// pivot 3, one per line, in their original listing order.
pub const SMALL_TABLE: &str = include_str!("data/running_pivot3.txt");

pub const SMALL_PERM: &str = "(1 4 2)(3 5)(6)";
pub const SMALL_N: usize = 6;
pub const LARGE_PERM: &str = "(1 8)(2 9 7)(3)(4 6)(5)";
pub const LARGE_N: usize = 9;

pub const SMALL_FAC: &str = "(3 5)(3 4)(3 1)(3 2)(3 6)(3 6)(3 4)";
pub const SMALL_FAC_AT_ONE: &str = "(1 2)(1 5)(1 3)(1 5)(1 6)(1 6)(1 4)";
pub const LARGE_FAC: &str = "(9 1)(9 5)(9 5)(9 6)(9 4)(9 6)(9 8)(9 3)(9 3)(9 1)(9 2)(9 7)";

pub const SMALL_TREE: &str = "*(2 1(1 1 3(3) 1))";
pub const LARGE_TREE: &str = "*(1(5(5 4(4 4)) 1 3(3) 1) 2 2)";

type Check = fn(&Instance) -> Result<bool>;

/// A reference value tied to one `(permutation, pivot)` pair.
pub struct WorkedExample {
    pub name: &'static str,
    pub perm: &'static str,
    pub n: usize,
    pub pivot: usize,
    check: Check,
}

impl WorkedExample {
    pub fn applies_to(&self, inst: &Instance) -> bool {
        inst.pivot() == self.pivot
            && Permutation::parse_cycles(self.perm, self.n).is_ok_and(|p| &p == inst.perm())
    }

    /// Runs the check; an error counts as a failure.
    pub fn verify(&self, inst: &Instance) -> bool {
        (self.check)(inst).unwrap_or(false)
    }

    pub fn instance(&self) -> Result<Instance> {
        Instance::new(Permutation::parse_cycles(self.perm, self.n)?, self.pivot)
    }
}

pub fn small_table() -> impl Iterator<Item = &'static str> {
    SMALL_TABLE.lines().map(str::trim).filter(|l| !l.is_empty())
}

fn enumeration_matches_table(i: &Instance) -> Result<bool> {
    let expected: BTreeSet<String> = small_table().map(String::from).collect();
    let got: BTreeSet<String> = i
        .enumerate_brute(DEFAULT_BUDGET)?
        .iter()
        .map(ToString::to_string)
        .collect();
    Ok(expected.len() == 42 && got == expected)
}

fn small_enclosures(i: &Instance) -> Result<bool> {
    let fac = i.parse_factorization(SMALL_FAC)?;
    let (letters, choice) = i.enclosures_of(&fac)?;
    Ok(letters == CycleEnclosures(vec![4, 6]) && choice == EnclosureChoice(vec![2, 1]))
}

fn small_rho(i: &Instance) -> Result<bool> {
    let fac = i.rho(&Word::parse("2111331")?, &EnclosureChoice(vec![2, 1]))?;
    Ok(fac.to_string() == SMALL_FAC)
}

fn tree_words(i: &Instance, pairs: &[(&str, &str)]) -> Result<bool> {
    let class = i.enumerate_trees(DEFAULT_BUDGET)?;
    for &(text, word) in pairs {
        let tree = OrderedTree::parse(text)?;
        if tree.preorder_word()?.to_string() != word || !class.contains(&tree) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn trees_at_one(i: &Instance) -> Result<bool> {
    tree_words(
        i,
        &[
            ("*(1 3(3) 1 2(2 2))", "1331222"),
            ("*(1 2(2 3(3) 2) 1)", "1223321"),
        ],
    )
}

fn trees_at_three(i: &Instance) -> Result<bool> {
    tree_words(
        i,
        &[
            ("*(3(3) 2 1(1 1 1))", "3321111"),
            ("*(3(1(1 1 1) 3) 2)", "3111132"),
        ],
    )
}

fn small_cycle_map(i: &Instance) -> Result<bool> {
    Ok(i.cycle_map(&EnclosureChoice(vec![2, 1]))? == CycleEnclosures(vec![4, 6]))
}

fn large_cycle_map(i: &Instance) -> Result<bool> {
    Ok(i.cycle_map(&EnclosureChoice(vec![1, 1, 2, 1]))? == CycleEnclosures(vec![1, 3, 6, 5]))
}

fn small_tree(i: &Instance) -> Result<bool> {
    let h = HookAssignment::new(vec![3], 2);
    let tree = i.tree_forward(&h)?;
    Ok(tree.to_string() == SMALL_TREE
        && tree.preorder_word()?.to_string() == "2111331"
        && i.tree_inverse(&tree)? == h)
}

fn large_tree(i: &Instance) -> Result<bool> {
    let h = HookAssignment::new(vec![3, 1, 12], 1);
    let tree = i.tree_forward(&h)?;
    let word = tree.preorder_word()?;
    let via_fac = i.word_of(&i.parse_factorization(LARGE_FAC)?)?;
    Ok(tree.to_string() == LARGE_TREE
        && word.to_string() == "155444133122"
        && word == via_fac
        && i.tree_inverse(&tree)? == h)
}

fn small_phi(i: &Instance) -> Result<bool> {
    let x = PhiInput::new(vec![3], vec![2, 2, 1]);
    let fac = i.phi(&x)?;
    Ok(fac.to_string() == SMALL_FAC && i.phi_inv(&fac)? == x)
}

fn large_phi(i: &Instance) -> Result<bool> {
    let fac = i.phi(&PhiInput::new(vec![3, 1, 12], vec![1, 1, 1, 2, 1]))?;
    Ok(fac.to_string() == LARGE_FAC)
}

fn small_translation(i: &Instance) -> Result<bool> {
    let to = Instance::new(i.perm().clone(), 1)?;
    let fac = i.parse_factorization(SMALL_FAC)?;
    let t = translate(i, &to, &fac, PreimagePolicy::Strict)?;
    Ok(!t.forced && t.factorization.to_string() == SMALL_FAC_AT_ONE)
}

pub fn worked_examples() -> Vec<WorkedExample> {
    let small = |name, pivot, check: Check| WorkedExample {
        name,
        perm: SMALL_PERM,
        n: SMALL_N,
        pivot,
        check,
    };
    let large = |name, check: Check| WorkedExample {
        name,
        perm: LARGE_PERM,
        n: LARGE_N,
        pivot: 9,
        check,
    };
    vec![
        small(
            "small: 42-entry enumeration table",
            3,
            enumeration_matches_table,
        ),
        small("small: enclosures {4,6}", 3, small_enclosures),
        small("small: rho(2111331, (2,1))", 3, small_rho),
        small("small: tree words 1331222 and 1223321", 1, trees_at_one),
        small("small: tree words 3321111 and 3111132", 3, trees_at_three),
        small("small: cycle map (2,1) -> {4,6}", 3, small_cycle_map),
        large("large: cycle map (1,1,2,1) -> {1,3,6,5}", large_cycle_map),
        small("small: hook tree for f=(3) c=2", 3, small_tree),
        large("large: hook tree for f=(3,1,12) c=1", large_tree),
        small("small: phi(f=(3), c=(2,2,1))", 3, small_phi),
        large("large: phi(f=(3,1,12), c=(1,1,1,2,1))", large_phi),
        small(
            "small: translation from pivot 3 to pivot 1",
            3,
            small_translation,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_has_42_distinct_lines() {
        let lines: BTreeSet<&str> = small_table().collect();
        assert_eq!(lines.len(), 42);
        assert_eq!(small_table().count(), 42);
    }

    #[test]
    fn every_example_verifies() {
        for ex in worked_examples() {
            let inst = ex.instance().unwrap();
            assert!(ex.applies_to(&inst));
            assert!(ex.verify(&inst), "{}", ex.name);
        }
    }
}
