//! The pivot-indexed parametrisation `φ` of minimal transitive star
//! factorizations by `{[m-2] ↪ [n+m-2]} × [ℓ_1] × ⋯ × [ℓ_m]`, its inverse
//! through the word table, and translation between pivots.

use std::fmt;

use crate::error::{Error, Result};
use crate::hooks::HookAssignment;
use crate::instance::Instance;
use crate::star::StarFactorization;
use crate::word::{product, write_comma_list, CycleEnclosures, EnclosureChoice, Word};

/// A point of the domain of `φ`: the injection `f` and one coordinate per cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhiInput {
    pub f: Vec<usize>,
    /// `c[i - 1] ∈ [ℓ_i]`, in standard-form cycle order.
    pub c: Vec<usize>,
}

impl PhiInput {
    pub fn new(f: Vec<usize>, c: Vec<usize>) -> Self {
        PhiInput { f, c }
    }
}

impl fmt::Display for PhiInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("f=(")?;
        write_comma_list(f, &self.f)?;
        f.write_str(") c=(")?;
        write_comma_list(f, &self.c)?;
        f.write_str(")")
    }
}

/// How [`translate`] handles a word reached by several hook assignments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PreimagePolicy {
    /// Refuse with [`Error::AmbiguousPreimage`].
    #[default]
    Strict,
    /// Take the lexicographically least preimage.
    Lexicographic,
}

/// Result of [`translate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translation {
    pub factorization: StarFactorization,
    /// Set when an ambiguous preimage was resolved lexicographically.
    pub forced: bool,
}

impl Instance {
    /// `{ b_{i, c_i} }` over the non-pivot cycles.
    pub fn cycle_map(&self, choice: &EnclosureChoice) -> Result<CycleEnclosures> {
        self.check_choice(choice)?;
        Ok(CycleEnclosures(
            self.non_pivot_cycles()
                .zip(&choice.0)
                .map(|(i, &c)| self.cycles().cycle(i)[c - 1])
                .collect(),
        ))
    }

    pub fn cycle_map_inv(&self, letters: &CycleEnclosures) -> Result<EnclosureChoice> {
        let expected = self.m() - 1;
        if letters.0.len() != expected {
            return Err(Error::OutOfRange(format!(
                "expected {expected} enclosing letters, got {}",
                letters.0.len()
            )));
        }
        self.non_pivot_cycles()
            .zip(&letters.0)
            .map(|(i, &b)| {
                let cycle = self.cycles().cycle(i);
                cycle
                    .iter()
                    .position(|&x| x == b)
                    .map(|pos| pos + 1)
                    .ok_or_else(|| Error::OutOfRange(format!("letter {b} is not in cycle {i}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(EnclosureChoice)
    }

    fn check_phi_input(&self, x: &PhiInput) -> Result<()> {
        let m = self.m();
        if x.c.len() != m {
            return Err(Error::OutOfRange(format!(
                "expected {m} coordinates, got {}",
                x.c.len()
            )));
        }
        if m == 1 {
            // the domain collapses to a single point
            if !x.f.is_empty() || x.c[0] != 1 {
                return Err(Error::OutOfRange(
                    "a single-cycle permutation only admits f=() c=(1)".into(),
                ));
            }
            return Ok(());
        }
        for (i, &c) in x.c.iter().enumerate() {
            let l = self.cycle_len(i + 1);
            if c == 0 || c > l {
                return Err(Error::OutOfRange(format!(
                    "coordinate {c} for cycle {} outside [1, {l}]",
                    i + 1
                )));
            }
        }
        self.check_hook_assignment(&HookAssignment::new(x.f.clone(), x.c[self.p() - 1]))
    }

    fn split_phi_input(&self, x: &PhiInput) -> (HookAssignment, EnclosureChoice) {
        let p = self.p();
        let choice =
            x.c.iter()
                .enumerate()
                .filter(|&(i, _)| i + 1 != p)
                .map(|(_, &c)| c)
                .collect();
        (
            HookAssignment::new(x.f.clone(), x.c[p - 1]),
            EnclosureChoice(choice),
        )
    }

    fn join_phi_input(&self, h: &HookAssignment, choice: &EnclosureChoice) -> PhiInput {
        let mut c = choice.0.clone();
        c.insert(self.p() - 1, h.c);
        PhiInput::new(h.f.clone(), c)
    }

    /// The factorization with word read off the tree of `(f, c_p)` and
    /// enclosures given by the remaining coordinates.
    pub fn phi(&self, x: &PhiInput) -> Result<StarFactorization> {
        self.check_phi_input(x)?;
        let (h, choice) = self.split_phi_input(x);
        let word = self.tree_forward(&h)?.preorder_word()?;
        let letters = self.cycle_map(&choice)?;
        self.rho(&word, &self.cycle_map_inv(&letters)?)
    }

    pub fn phi_inv(&self, fac: &StarFactorization) -> Result<PhiInput> {
        self.phi_inv_with(fac, PreimagePolicy::Strict)
            .map(|(x, _)| x)
    }

    /// Like [`Instance::phi_inv`]; the flag reports a lexicographic tie-break.
    pub fn phi_inv_with(
        &self,
        fac: &StarFactorization,
        policy: PreimagePolicy,
    ) -> Result<(PhiInput, bool)> {
        let (word, choice) = self.rho_inv(fac)?;
        let preimages = self.word_preimages(&word);
        match (preimages, policy) {
            ([], _) => Err(Error::MissingPreimage { word }),
            ([h], _) => Ok((self.join_phi_input(h, &choice), false)),
            ([h, ..], PreimagePolicy::Lexicographic) => Ok((self.join_phi_input(h, &choice), true)),
            (hs, PreimagePolicy::Strict) => Err(Error::AmbiguousPreimage {
                word,
                witnesses: hs.to_vec(),
            }),
        }
    }

    /// The full domain of `φ`, lexicographic in `(f, c)`.
    pub fn phi_domain(&self) -> Vec<PhiInput> {
        if self.m() == 1 {
            return vec![PhiInput::new(Vec::new(), vec![1])];
        }
        let bounds: Vec<usize> = (1..=self.m()).map(|i| self.cycle_len(i)).collect();
        let coords = product(&bounds);
        let mut fs: Vec<Vec<usize>> = self.hook_assignments().into_iter().map(|h| h.f).collect();
        fs.dedup();
        fs.into_iter()
            .flat_map(|f| {
                coords
                    .iter()
                    .map(move |c| PhiInput::new(f.clone(), c.clone()))
            })
            .collect()
    }

    /// Words in the valid-word set that no hook assignment reaches.
    pub fn uncovered_words(&self) -> Vec<Word> {
        self.enumerate_valid_words()
            .into_iter()
            .filter(|w| self.word_preimages(w).is_empty())
            .collect()
    }
}

/// `φ_{to} ∘ φ_{from}⁻¹`: carries a factorization with one pivot to one with another.
pub fn translate(
    from: &Instance,
    to: &Instance,
    fac: &StarFactorization,
    policy: PreimagePolicy,
) -> Result<Translation> {
    if from.perm() != to.perm() {
        return Err(Error::InvalidFactorization(
            "translation needs the same permutation on both sides".into(),
        ));
    }
    let (x, forced) = from.phi_inv_with(fac, policy)?;
    Ok(Translation {
        factorization: to.phi(&x)?,
        forced,
    })
}
