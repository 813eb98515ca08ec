//! Permutations of `[n] = {1, ..., n}` and their cycle structure.
//!
//! A [`Permutation`] stores its one-line image. The standard-form cycle
//! decomposition (each cycle led by its minimum, cycles ordered by minima,
//! fixed points kept) is computed on first use and cached.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A bijection of `[n]` onto itself, `n >= 1`.
pub struct Permutation {
    // image[x - 1] = π(x)
    image: Vec<usize>,
    cycles: OnceLock<CycleDecomposition>,
}

/// Cycle decomposition in standard form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleDecomposition {
    cycles: Vec<Vec<usize>>,
}

/// Where the pivot sits in a standard-form decomposition. Both fields are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PivotLocation {
    pub cycle: usize,
    pub pos: usize,
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        Ok(Self::from_image_unchecked((1..=n).collect()))
    }

    /// Builds a permutation from its one-line notation `[π(1), ..., π(n)]`.
    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let mut seen = vec![false; n];
        for &y in &image {
            if y == 0 || y > n {
                return Err(Error::ElementOutOfRange { element: y, n });
            }
            if std::mem::replace(&mut seen[y - 1], true) {
                return Err(Error::RepeatedElement(y));
            }
        }
        Ok(Self::from_image_unchecked(image))
    }

    pub(crate) fn from_image_unchecked(image: Vec<usize>) -> Self {
        Permutation {
            image,
            cycles: OnceLock::new(),
        }
    }

    /// Builds the permutation whose cycles are the given sequences. Elements
    /// not mentioned are fixed.
    pub fn from_cycles<C: AsRef<[usize]>>(n: usize, cycles: &[C]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let mut image: Vec<usize> = (1..=n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(Error::ElementOutOfRange { element: x, n });
                }
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(Error::RepeatedElement(x));
                }
                image[x - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Self::from_image_unchecked(image))
    }

    /// Parses cycle notation such as `"(4 2 1)(6)(3 5)"`.
    ///
    /// Whitespace between elements and cycles is free. When `n <= 9` a cycle
    /// may also be written without separators, e.g. `"(421)"`.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        let cycles = parse_cycle_groups(text, n <= 9)?;
        Self::from_cycles(n, &cycles)
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `π(x)` for `x` in `[n]`.
    ///
    /// Panics when `x` is outside `[n]`.
    pub fn apply(&self, x: usize) -> usize {
        self.image[x - 1]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &y)| y == i + 1)
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let image = other.image.iter().map(|&y| self.image[y - 1]).collect();
        Ok(Self::from_image_unchecked(image))
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.n()];
        for (i, &y) in self.image.iter().enumerate() {
            image[y - 1] = i + 1;
        }
        Self::from_image_unchecked(image)
    }

    /// `σ π σ⁻¹`.
    pub fn conjugate_by(&self, sigma: &Permutation) -> Result<Permutation> {
        sigma.compose(self)?.compose(&sigma.inverse())
    }

    pub fn standard_form(&self) -> &CycleDecomposition {
        self.cycles
            .get_or_init(|| CycleDecomposition::of_image(&self.image))
    }

    pub fn cycle_count(&self) -> usize {
        self.standard_form().len()
    }
}

impl Clone for Permutation {
    fn clone(&self) -> Self {
        Permutation {
            image: self.image.clone(),
            cycles: self.cycles.clone(),
        }
    }
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image
    }
}

impl Eq for Permutation {}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.image.hash(state);
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.image.cmp(&other.image)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.standard_form().fmt(f)
    }
}

impl CycleDecomposition {
    fn of_image(image: &[usize]) -> Self {
        let n = image.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        // Scanning starts in increasing order, so every cycle is found from its
        // minimum and cycles come out sorted by minima.
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut x = image[start - 1];
            while x != start {
                seen[x - 1] = true;
                cycle.push(x);
                x = image[x - 1];
            }
            cycles.push(cycle);
        }
        CycleDecomposition { cycles }
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Cycle `i`, 1-based.
    pub fn cycle(&self, i: usize) -> &[usize] {
        &self.cycles[i - 1]
    }

    /// Number of cycles `m`.
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    pub fn n(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    pub fn pivot_location(&self, k: usize) -> Result<PivotLocation> {
        let n = self.n();
        if k == 0 || k > n {
            return Err(Error::ElementOutOfRange { element: k, n });
        }
        for (ci, cycle) in self.cycles.iter().enumerate() {
            if let Some(pos) = cycle.iter().position(|&x| x == k) {
                return Ok(PivotLocation {
                    cycle: ci + 1,
                    pos: pos + 1,
                });
            }
        }
        unreachable!("every element of [n] lies in some cycle")
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            write_group(f, cycle)?;
        }
        Ok(())
    }
}

pub(crate) fn write_group(f: &mut fmt::Formatter<'_>, elements: &[usize]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in elements.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// Splits `"(a b c)(d e)"` into its parenthesised groups of integers.
///
/// `compact_digits` lets a single unseparated token such as `421` stand for
/// the digits `4 2 1`.
pub(crate) fn parse_cycle_groups(text: &str, compact_digits: bool) -> Result<Vec<Vec<usize>>> {
    let mut groups = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        let Some(body_start) = rest.strip_prefix('(') else {
            return Err(Error::parse(text, "expected '('"));
        };
        let Some(close) = body_start.find(')') else {
            return Err(Error::parse(text, "unclosed '('"));
        };
        let body = &body_start[..close];
        if body.contains('(') {
            return Err(Error::parse(text, "nested '('"));
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(Error::parse(text, "empty cycle"));
        }
        let mut group = Vec::new();
        if compact_digits && tokens.len() == 1 && tokens[0].len() > 1 {
            for ch in tokens[0].chars() {
                let d = ch
                    .to_digit(10)
                    .ok_or_else(|| Error::parse(text, format!("unexpected character {ch:?}")))?;
                group.push(d as usize);
            }
        } else {
            for tok in tokens {
                group.push(parse_element(text, tok)?);
            }
        }
        groups.push(group);
        rest = body_start[close + 1..].trim_start();
    }
    Ok(groups)
}

pub(crate) fn parse_element(text: &str, tok: &str) -> Result<usize> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(text, format!("bad element {tok:?}")));
    }
    tok.parse()
        .map_err(|_| Error::parse(text, format!("bad element {tok:?}")))
}

/// `x (x-1) ... (x-r+1)`; equals 1 when `r = 0`.
pub fn falling_factorial(x: u128, r: u128) -> Result<u128> {
    if r > x {
        return Err(Error::FallingFactorialRange { x, r });
    }
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc
            .checked_mul(x - i)
            .ok_or(Error::Overflow("falling factorial"))?;
    }
    Ok(acc)
}
