//! Exhaustive cross-check of every construction against the brute-force
//! oracle for one `(π, k)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::hooks::HookAssignment;
use crate::instance::Instance;
use crate::perm::falling_factorial;
use crate::word::Word;
use crate::worked::worked_examples;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub formula_count: u128,
    pub oracle_count: usize,
    pub valid_word_count: usize,
    pub tree_count: usize,
    pub phi_image_count: usize,
    /// Words reached by more than one hook assignment.
    pub collisions: Vec<(Word, Vec<HookAssignment>)>,
    /// Valid words reached by no hook assignment.
    pub uncovered_words: Vec<Word>,
    pub examples_verified: Vec<(String, bool)>,
    /// Every `φ(x)` is in the oracle set.
    pub phi_sound: bool,
    /// Every hook-construction tree lies in the enumerated tree class.
    pub forward_in_class: bool,
    pub domain_size: usize,
    pub word_formula: u128,
    pub choice_count: usize,
}

impl Instance {
    pub fn audit(&self, budget: u64) -> Result<AuditReport> {
        let oracle = self.enumerate_brute(budget)?;
        let oracle_set: BTreeSet<_> = oracle.iter().collect();
        let words = self.enumerate_valid_words();
        let trees = self.enumerate_trees(budget)?;
        let class: BTreeSet<_> = trees.iter().collect();
        let mut forward_in_class = true;
        for h in self.hook_assignments() {
            forward_in_class &= class.contains(&self.tree_forward(&h)?);
        }

        let domain = self.phi_domain();
        let mut image = BTreeSet::new();
        let mut phi_sound = true;
        for x in &domain {
            let fac = self.phi(x)?;
            phi_sound &= oracle_set.contains(&fac);
            image.insert(fac);
        }

        let collisions = self
            .word_table()
            .iter()
            .filter(|(_, hs)| hs.len() > 1)
            .map(|(w, hs)| (w.clone(), hs.to_vec()))
            .collect();
        let uncovered_words = self.uncovered_words();

        let examples_verified = worked_examples()
            .iter()
            .filter(|ex| ex.applies_to(self))
            .map(|ex| (ex.name.to_string(), ex.verify(self)))
            .collect();

        let word_formula = if self.m() == 1 {
            1
        } else {
            falling_factorial(self.factor_len() as u128, self.m() as u128 - 2)?
                * self.cycle_len(self.p()) as u128
        };

        Ok(AuditReport {
            formula_count: self.count_formula()?,
            oracle_count: oracle.len(),
            valid_word_count: words.len(),
            tree_count: trees.len(),
            phi_image_count: image.len(),
            collisions,
            uncovered_words,
            examples_verified,
            phi_sound,
            forward_in_class,
            domain_size: domain.len(),
            word_formula,
            choice_count: self.all_choices().len(),
        })
    }
}

impl AuditReport {
    /// Disagreements between fields that must hold whether or not `φ` is a
    /// bijection. Collisions and uncovered words are data, not errors.
    pub fn consistency_errors(&self) -> Vec<String> {
        let mut errs = Vec::new();
        if self.oracle_count as u128 != self.formula_count {
            errs.push(format!(
                "oracle found {} factorizations, formula gives {}",
                self.oracle_count, self.formula_count
            ));
        }
        if self.valid_word_count as u128 != self.word_formula {
            errs.push(format!(
                "{} valid words, expected {}",
                self.valid_word_count, self.word_formula
            ));
        }
        if self.valid_word_count * self.choice_count != self.oracle_count {
            errs.push("words times enclosure choices differs from the oracle count".into());
        }
        if self.domain_size as u128 != self.formula_count {
            errs.push(format!(
                "phi domain has {} points, formula gives {}",
                self.domain_size, self.formula_count
            ));
        }
        if !self.phi_sound {
            errs.push("phi produced a factorization outside the oracle set".into());
        }
        if !self.forward_in_class {
            errs.push("a hook-construction tree lies outside the tree class".into());
        }
        let covered = self.valid_word_count - self.uncovered_words.len();
        if self.phi_image_count != covered * self.choice_count {
            errs.push(format!(
                "phi image has {} elements, covered words give {}",
                self.phi_image_count,
                covered * self.choice_count
            ));
        }
        for (name, ok) in &self.examples_verified {
            if !ok {
                errs.push(format!("example failed: {name}"));
            }
        }
        errs
    }

    /// `φ` hits every factorization exactly once.
    pub fn is_bijective(&self) -> bool {
        self.collisions.is_empty()
            && self.uncovered_words.is_empty()
            && self.phi_image_count == self.oracle_count
            && self.domain_size == self.oracle_count
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "formula_count: {}", self.formula_count)?;
        writeln!(f, "oracle_count: {}", self.oracle_count)?;
        writeln!(f, "valid_word_count: {}", self.valid_word_count)?;
        writeln!(f, "tree_count: {}", self.tree_count)?;
        writeln!(f, "phi_image_count: {}", self.phi_image_count)?;
        writeln!(f, "collisions: {}", self.collisions.len())?;
        for (w, hs) in &self.collisions {
            write!(f, "  {w}:")?;
            for (i, h) in hs.iter().enumerate() {
                f.write_str(if i == 0 { " " } else { " | " })?;
                write!(f, "{h}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "uncovered_words: {}", self.uncovered_words.len())?;
        for w in &self.uncovered_words {
            writeln!(f, "  {w}")?;
        }
        writeln!(f, "examples_verified: {}", self.examples_verified.len())?;
        for (name, ok) in &self.examples_verified {
            writeln!(f, "  {}: {name}", if *ok { "pass" } else { "FAIL" })?;
        }
        writeln!(f, "phi_sound: {}", self.phi_sound)?;
        writeln!(f, "forward_in_class: {}", self.forward_in_class)?;
        writeln!(f, "phi_domain_size: {}", self.domain_size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use crate::star::DEFAULT_BUDGET;

    fn audit(text: &str, n: usize, k: usize) -> AuditReport {
        Instance::new(Permutation::parse_cycles(text, n).unwrap(), k)
            .unwrap()
            .audit(DEFAULT_BUDGET)
            .unwrap()
    }

    #[test]
    fn smallest_nontrivial_audit() {
        let r = audit("(1 2)(3)", 3, 3);
        assert_eq!(r.formula_count, 2);
        assert_eq!(r.oracle_count, 2);
        assert_eq!(r.valid_word_count, 1);
        assert_eq!(r.phi_image_count, 2);
        assert!(r.collisions.is_empty());
        assert!(r.consistency_errors().is_empty());
        assert!(r.is_bijective());
    }

    #[test]
    fn small_example_at_pivot_three() {
        let r = audit("(1 4 2)(3 5)(6)", 6, 3);
        assert_eq!(r.formula_count, 42);
        assert_eq!(r.oracle_count, 42);
        assert_eq!(r.valid_word_count, 14);
        assert!(
            r.consistency_errors().is_empty(),
            "{:?}",
            r.consistency_errors()
        );
        assert!(!r.examples_verified.is_empty());
    }

    #[test]
    fn small_example_at_pivot_one_has_collisions() {
        let r = audit("(1 4 2)(3 5)(6)", 6, 1);
        assert!(
            r.consistency_errors().is_empty(),
            "{:?}",
            r.consistency_errors()
        );
        let w = Word::parse("1222331").unwrap();
        let hit = r.collisions.iter().find(|(x, _)| *x == w).unwrap();
        assert!(hit.1.contains(&HookAssignment::new(vec![3], 2)));
        assert!(hit.1.contains(&HookAssignment::new(vec![6], 2)));
        assert!(!r.is_bijective());
    }

    #[test]
    fn deterministic() {
        let a = audit("(1 4 2)(3 5)(6)", 6, 1).to_string();
        let b = audit("(1 4 2)(3 5)(6)", 6, 1).to_string();
        assert_eq!(a, b);
    }
}
