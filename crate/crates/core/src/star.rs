//! Star transpositions `(k i)`, products of them, and an exhaustive
//! enumerator of minimal transitive star factorizations.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{falling_factorial, parse_cycle_groups, Permutation};

/// Default node-expansion limit for [`search`].
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// The transposition `(pivot other)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarTransposition {
    pub pivot: usize,
    pub other: usize,
}

impl fmt::Display for StarTransposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.pivot, self.other)
    }
}

/// The product `(k δ_1)(k δ_2)⋯(k δ_r)`, applied right to left.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarFactorization {
    n: usize,
    pivot: usize,
    others: Vec<usize>,
}

impl StarFactorization {
    pub fn new(n: usize, pivot: usize, others: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if pivot == 0 || pivot > n {
            return Err(Error::ElementOutOfRange { element: pivot, n });
        }
        for &d in &others {
            if d == 0 || d > n {
                return Err(Error::ElementOutOfRange { element: d, n });
            }
            if d == pivot {
                return Err(Error::InvalidFactorization(format!(
                    "({pivot} {d}) is not a transposition"
                )));
            }
        }
        Ok(StarFactorization { n, pivot, others })
    }

    /// Parses `"(3 5)(3 4)(3 1)"`. Each pair must contain `pivot`; the order
    /// inside a pair is free. Compact pairs such as `"(35)"` are accepted when
    /// `n <= 9`.
    pub fn parse(text: &str, n: usize, pivot: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let groups = parse_cycle_groups(text, n <= 9)?;
        let mut others = Vec::with_capacity(groups.len());
        for g in groups {
            let &[a, b] = g.as_slice() else {
                return Err(Error::parse(text, "each factor must be a pair"));
            };
            let other = if a == pivot {
                b
            } else if b == pivot {
                a
            } else {
                return Err(Error::parse(
                    text,
                    format!("factor ({a} {b}) does not contain pivot {pivot}"),
                ));
            };
            others.push(other);
        }
        Self::new(n, pivot, others)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn others(&self) -> &[usize] {
        &self.others
    }

    pub fn len(&self) -> usize {
        self.others.len()
    }

    pub fn is_empty(&self) -> bool {
        self.others.is_empty()
    }

    pub fn transpositions(&self) -> impl Iterator<Item = StarTransposition> + '_ {
        self.others.iter().map(|&other| StarTransposition {
            pivot: self.pivot,
            other,
        })
    }

    pub fn evaluate(&self) -> Permutation {
        // P ∘ (k d) swaps the images of k and d.
        let mut image: Vec<usize> = (1..=self.n).collect();
        for &d in &self.others {
            image.swap(self.pivot - 1, d - 1);
        }
        Permutation::from_image_unchecked(image)
    }

    /// True when every non-pivot element occurs among the factors.
    pub fn is_transitive(&self) -> bool {
        let used: BTreeSet<usize> = self.others.iter().copied().collect();
        used.len() == self.n - 1
    }
}

impl fmt::Display for StarFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.transpositions() {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// `n + m - 2`, the length of every minimal transitive star factorization.
pub fn minimal_length(pi: &Permutation) -> usize {
    pi.n() + pi.cycle_count() - 2
}

/// Number of minimal transitive star factorizations of `pi` with pivot `k`:
/// `(n+m-2)_(m-2) · ℓ_1⋯ℓ_m`, and 1 when `pi` is a single cycle.
pub fn count_formula(pi: &Permutation, k: usize) -> Result<u128> {
    let d = pi.standard_form();
    d.pivot_location(k)?;
    let m = d.len();
    if m == 1 {
        return Ok(1);
    }
    let n = pi.n() as u128;
    let mut acc = falling_factorial(n + m as u128 - 2, m as u128 - 2)?;
    for l in d.lengths() {
        acc = acc
            .checked_mul(l as u128)
            .ok_or(Error::Overflow("count formula"))?;
    }
    Ok(acc)
}

/// Minimal `k`-star factorization of a single cycle.
///
/// If `k` lies in the cycle, `index` must be its 1-based position and the
/// unique factorization is returned. Otherwise the factorization enclosed by
/// the element at position `index` is returned.
pub fn factor_single_cycle(
    cycle: &[usize],
    k: usize,
    index: usize,
) -> Result<Vec<StarTransposition>> {
    let others = single_cycle_others(cycle, k, index)?;
    Ok(others
        .into_iter()
        .map(|other| StarTransposition { pivot: k, other })
        .collect())
}

pub(crate) fn single_cycle_others(cycle: &[usize], k: usize, index: usize) -> Result<Vec<usize>> {
    let len = cycle.len();
    if len == 0 {
        return Err(Error::OutOfRange("empty cycle".into()));
    }
    if index == 0 || index > len {
        return Err(Error::OutOfRange(format!(
            "index {index} outside [1, {len}]"
        )));
    }
    match cycle.iter().position(|&x| x == k) {
        Some(pos) => {
            if pos + 1 != index {
                return Err(Error::OutOfRange(format!(
                    "pivot {k} sits at position {}, not {index}",
                    pos + 1
                )));
            }
            // Rotated to (k a_2 ... a_ℓ); emit a_ℓ, ..., a_2.
            Ok((1..len).rev().map(|t| cycle[(pos + t) % len]).collect())
        }
        None => {
            // b_i, b_{i-1}, ..., b_{i+1}, b_i with cyclic subscripts.
            let i = index - 1;
            let mut out: Vec<usize> = (0..len).map(|t| cycle[(i + len - t) % len]).collect();
            out.push(cycle[i]);
            Ok(out)
        }
    }
}

/// Minimal number of star transpositions with pivot `k` whose product is `sigma`.
pub(crate) fn star_length(image: &[usize], k: usize, seen: &mut Vec<bool>) -> usize {
    let n = image.len();
    seen.clear();
    seen.resize(n, false);
    let mut total = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut has_pivot = false;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            has_pivot |= x + 1 == k;
            x = image[x] - 1;
        }
        if has_pivot {
            total += len - 1;
        } else if len > 1 {
            total += len + 1;
        }
    }
    total
}

/// All transitive star factorizations of `pi` with pivot `k` and exactly
/// `length` factors, in lexicographic order of their factor sequences.
///
/// Depth-first over factor sequences. A branch is cut when the remaining
/// factors cannot cover the unused non-pivot symbols, or cannot reach the
/// residual permutation (too short, or wrong parity).
pub fn search(
    pi: &Permutation,
    k: usize,
    length: usize,
    budget: u64,
) -> Result<Vec<StarFactorization>> {
    let n = pi.n();
    if k == 0 || k > n {
        return Err(Error::ElementOutOfRange { element: k, n });
    }
    let residual: Vec<usize> = pi.image().to_vec();
    let mut residual_inv = vec![0; n];
    for (i, &y) in residual.iter().enumerate() {
        residual_inv[y - 1] = i + 1;
    }
    let mut state = Search {
        k,
        length,
        budget,
        expanded: 0,
        symbols: (1..=n).filter(|&x| x != k).collect(),
        residual,
        residual_inv,
        uses: vec![0; n + 1],
        unused: n - 1,
        prefix: Vec::with_capacity(length),
        scratch: Vec::with_capacity(n),
        out: Vec::new(),
    };
    state.dfs()?;
    Ok(state
        .out
        .into_iter()
        .map(|others| StarFactorization {
            n,
            pivot: k,
            others,
        })
        .collect())
}

/// `⋆_k(π)` by exhaustive search at the minimal length.
pub fn enumerate_brute(pi: &Permutation, k: usize, budget: u64) -> Result<Vec<StarFactorization>> {
    search(pi, k, minimal_length(pi), budget)
}

struct Search {
    k: usize,
    length: usize,
    budget: u64,
    expanded: u64,
    symbols: Vec<usize>,
    // residual = P⁻¹ ∘ π where P is the product of the current prefix
    residual: Vec<usize>,
    residual_inv: Vec<usize>,
    uses: Vec<usize>,
    unused: usize,
    prefix: Vec<usize>,
    scratch: Vec<bool>,
    out: Vec<Vec<usize>>,
}

impl Search {
    fn dfs(&mut self) -> Result<()> {
        self.expanded += 1;
        if self.expanded > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        let remaining = self.length - self.prefix.len();
        let needed = star_length(&self.residual, self.k, &mut self.scratch);
        if remaining < needed || (remaining - needed) % 2 == 1 || remaining < self.unused {
            return Ok(());
        }
        if remaining == 0 {
            // needed == 0 means the residual is the identity.
            self.out.push(self.prefix.clone());
            return Ok(());
        }
        for si in 0..self.symbols.len() {
            let d = self.symbols[si];
            self.apply(d);
            self.prefix.push(d);
            self.uses[d] += 1;
            if self.uses[d] == 1 {
                self.unused -= 1;
            }
            let r = self.dfs();
            if self.uses[d] == 1 {
                self.unused += 1;
            }
            self.uses[d] -= 1;
            self.prefix.pop();
            self.apply(d);
            r?;
        }
        Ok(())
    }

    /// residual ← (k d) ∘ residual; an involution.
    fn apply(&mut self, d: usize) {
        let k = self.k;
        let a = self.residual_inv[k - 1];
        let b = self.residual_inv[d - 1];
        self.residual[a - 1] = d;
        self.residual[b - 1] = k;
        self.residual_inv.swap(k - 1, d - 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    fn fac(text: &str, n: usize, k: usize) -> StarFactorization {
        StarFactorization::parse(text, n, k).unwrap()
    }

    #[test]
    fn evaluates_worked_products() {
        let target = p("(1 4 2)(3 5)(6)", 6);
        assert_eq!(
            fac("(3 1)(3 6)(3 6)(3 2)(3 4)(3 1)(3 5)", 6, 3).evaluate(),
            target
        );
        assert_eq!(
            fac("(3 5)(3 4)(3 1)(3 2)(3 6)(3 6)(3 4)", 6, 3).evaluate(),
            target
        );
        assert!(fac("", 4, 2).evaluate().is_identity());
    }

    #[test]
    fn transitivity() {
        assert!(fac("(3 1)(3 6)(3 6)(3 2)(3 4)(3 1)(3 5)", 6, 3).is_transitive());
        assert!(!fac("(3 1)(3 1)", 3, 3).is_transitive());
        assert!(fac("", 1, 1).is_transitive());
    }

    #[test]
    fn parse_and_display() {
        let f = fac("(35)(34)(31)", 6, 3);
        assert_eq!(f.others(), &[5, 4, 1]);
        assert_eq!(f.to_string(), "(3 5)(3 4)(3 1)");
        assert_eq!(fac("(5 3)", 6, 3).others(), &[5]);
        assert!(StarFactorization::parse("(1 2)", 6, 3).is_err());
        assert!(StarFactorization::parse("(3 1 2)", 6, 3).is_err());
        assert!(StarFactorization::parse("(3 3)", 6, 3).is_err());
        assert!(StarFactorization::parse("(3 7)", 6, 3).is_err());
        assert_eq!(fac("", 6, 3).to_string(), "");
    }

    #[test]
    fn minimal_lengths() {
        assert_eq!(minimal_length(&p("(1 4 2)(3 5)(6)", 6)), 7);
        assert_eq!(minimal_length(&p("(1 2 3 4 5)", 5)), 4);
        assert_eq!(minimal_length(&p("(1 8)(2 9 7)(3)(4 6)(5)", 9)), 12);
        assert_eq!(minimal_length(&p("", 1)), 0);
    }

    #[test]
    fn count_formula_values() {
        assert_eq!(count_formula(&p("(1 4 2)(3 5)(6)", 6), 3).unwrap(), 42);
        assert_eq!(count_formula(&p("(1 4 2)(3 5)(6)", 6), 1).unwrap(), 42);
        assert_eq!(count_formula(&p("(1 3 2 4)", 4), 2).unwrap(), 1);
        assert_eq!(count_formula(&p("(1 2)", 3), 3).unwrap(), 2);
        assert_eq!(count_formula(&p("", 1), 1).unwrap(), 1);
        assert!(count_formula(&p("", 3), 4).is_err());
    }

    #[test]
    fn single_cycle_factors() {
        let others = |c: &[usize], k, i| single_cycle_others(c, k, i).unwrap();
        assert_eq!(others(&[3, 5], 3, 1), vec![5]);
        assert_eq!(others(&[1, 4, 2], 3, 2), vec![4, 1, 2, 4]);
        assert_eq!(others(&[6], 3, 1), vec![6, 6]);
        assert_eq!(others(&[2, 9, 7], 9, 2), vec![2, 7]);
        assert!(single_cycle_others(&[3, 5], 3, 2).is_err());
        assert!(single_cycle_others(&[1, 4, 2], 3, 4).is_err());
        assert!(single_cycle_others(&[1, 4, 2], 3, 0).is_err());
        let ts = factor_single_cycle(&[1, 4, 2], 3, 2).unwrap();
        let s: String = ts.iter().map(|t| t.to_string()).collect();
        assert_eq!(s, "(3 4)(3 1)(3 2)(3 4)");
    }

    #[test]
    fn single_cycle_factorizations_evaluate_to_the_cycle() {
        // every cycle shape on [6] of length <= 5, pivot inside or outside
        for len in 1..=5usize {
            for cycle in itertools::Itertools::permutations(1..=6usize, len) {
                let target = Permutation::from_cycles(6, std::slice::from_ref(&cycle)).unwrap();
                for k in 1..=6 {
                    let indices: Vec<usize> = match cycle.iter().position(|&x| x == k) {
                        Some(pos) => vec![pos + 1],
                        None => (1..=len).collect(),
                    };
                    for i in indices {
                        let others = single_cycle_others(&cycle, k, i).unwrap();
                        let f = StarFactorization::new(6, k, others).unwrap();
                        assert_eq!(f.evaluate(), target, "{cycle:?} k={k} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn star_generators_give_adjacent_transpositions() {
        for n in 2..=6 {
            for k in 1..=n {
                for i in 1..n {
                    let expected = Permutation::from_cycles(n, &[[i, i + 1]]).unwrap();
                    let got = if k == i || k == i + 1 {
                        let other = if k == i { i + 1 } else { i };
                        StarFactorization::new(n, k, vec![other])
                            .unwrap()
                            .evaluate()
                    } else {
                        StarFactorization::new(n, k, vec![i, i + 1, i])
                            .unwrap()
                            .evaluate()
                    };
                    assert_eq!(got, expected, "n={n} k={k} i={i}");
                }
            }
        }
    }

    #[test]
    fn brute_force_small_cases() {
        let got = enumerate_brute(&p("(1 2)", 3), 3, DEFAULT_BUDGET).unwrap();
        let s: Vec<String> = got.iter().map(|f| f.to_string()).collect();
        assert_eq!(s, vec!["(3 1)(3 2)(3 1)", "(3 2)(3 1)(3 2)"]);

        let got = enumerate_brute(&p("", 1), 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(got.len(), 1);
        assert!(got[0].is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_brute(&p("(1 4 2)(3 5)(6)", 6), 3, 10).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 10 });
    }

    #[test]
    fn star_length_matches_factor_counts() {
        let mut scratch = Vec::new();
        let pi = p("(1 4 2)(3 5)(6)", 6);
        assert_eq!(star_length(pi.image(), 3, &mut scratch), 1 + 4);
        assert_eq!(star_length(pi.image(), 6, &mut scratch), 4 + 3);
        assert_eq!(star_length(p("", 4).image(), 2, &mut scratch), 0);
    }
}
