use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::hooks::WordTable;
use crate::perm::{CycleDecomposition, Permutation, PivotLocation};
use crate::star::{self, StarFactorization};

/// A permutation together with a chosen pivot.
///
/// Most encodings depend on both, and on derived data (standard form, which
/// cycle holds the pivot, the cycle index of each element), so they hang off
/// this type. The word table used to invert the tree encoding is built lazily
/// and then shared read-only.
#[derive(Debug)]
pub struct Instance {
    perm: Permutation,
    pivot: usize,
    location: PivotLocation,
    // cycle_of[x - 1] = 1-based standard-form cycle index of x
    cycle_of: Vec<usize>,
    pub(crate) table: OnceLock<WordTable>,
}

impl Instance {
    pub fn new(perm: Permutation, pivot: usize) -> Result<Self> {
        let location = perm.standard_form().pivot_location(pivot)?;
        let mut cycle_of = vec![0; perm.n()];
        for (ci, cycle) in perm.standard_form().cycles().iter().enumerate() {
            for &x in cycle {
                cycle_of[x - 1] = ci + 1;
            }
        }
        Ok(Instance {
            perm,
            pivot,
            location,
            cycle_of,
            table: OnceLock::new(),
        })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn cycles(&self) -> &CycleDecomposition {
        self.perm.standard_form()
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    /// Number of cycles.
    pub fn m(&self) -> usize {
        self.cycles().len()
    }

    /// 1-based index of the cycle holding the pivot.
    pub fn p(&self) -> usize {
        self.location.cycle
    }

    pub fn location(&self) -> PivotLocation {
        self.location
    }

    /// Length of cycle `i`.
    pub fn cycle_len(&self, i: usize) -> usize {
        self.cycles().cycle(i).len()
    }

    /// `n + m - 2`.
    pub fn factor_len(&self) -> usize {
        star::minimal_length(&self.perm)
    }

    /// Cycle index of element `x`.
    pub fn cycle_of(&self, x: usize) -> usize {
        self.cycle_of[x - 1]
    }

    /// Indices of the cycles not holding the pivot, in standard-form order.
    pub fn non_pivot_cycles(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.m()).filter(move |&i| i != self.p())
    }

    pub fn count_formula(&self) -> Result<u128> {
        star::count_formula(&self.perm, self.pivot)
    }

    pub fn enumerate_brute(&self, budget: u64) -> Result<Vec<StarFactorization>> {
        star::enumerate_brute(&self.perm, self.pivot, budget)
    }

    pub fn parse_factorization(&self, text: &str) -> Result<StarFactorization> {
        StarFactorization::parse(text, self.n(), self.pivot)
    }

    /// Checks that `fac` is a minimal transitive star factorization of the
    /// permutation with this pivot.
    pub fn check_member(&self, fac: &StarFactorization) -> Result<()> {
        if fac.n() != self.n() || fac.pivot() != self.pivot {
            return Err(Error::InvalidFactorization(format!(
                "expected pivot {} on [{}], got pivot {} on [{}]",
                self.pivot,
                self.n(),
                fac.pivot(),
                fac.n()
            )));
        }
        if fac.len() != self.factor_len() {
            return Err(Error::InvalidFactorization(format!(
                "length {} is not the minimal length {}",
                fac.len(),
                self.factor_len()
            )));
        }
        if !fac.is_transitive() {
            return Err(Error::InvalidFactorization("not transitive".into()));
        }
        let product = fac.evaluate();
        if product != self.perm {
            return Err(Error::InvalidFactorization(format!(
                "product is {product}, not {}",
                self.perm
            )));
        }
        Ok(())
    }
}
