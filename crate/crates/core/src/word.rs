//! Words over the cycle indices `[m]`, cycle enclosures, and the
//! correspondence between (valid word, enclosure choice) pairs and minimal
//! transitive star factorizations.

use std::fmt;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::perm::parse_element;
use crate::star::{single_cycle_others, StarFactorization};

/// A sequence of 1-based cycle indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `"2111331"` or, for larger alphabets, `"2,11,3"`. A single
    /// letter in comma form carries a trailing comma: `"10,"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word(Vec::new()));
        }
        let letters = if text.contains(',') {
            let body = if text.len() > 1 {
                text.strip_suffix(',').unwrap_or(text)
            } else {
                text
            };
            body.split(',')
                .map(|tok| parse_element(text, tok.trim()))
                .collect::<Result<Vec<_>>>()?
        } else {
            text.chars()
                .map(|ch| {
                    ch.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::parse(text, format!("unexpected character {ch:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        if letters.contains(&0) {
            return Err(Error::parse(text, "letters are 1-based"));
        }
        Ok(Word(letters))
    }

    /// Text form for an alphabet of size `m`: bare digits when `m <= 9`,
    /// comma-separated otherwise.
    pub fn render(&self, m: usize) -> String {
        if m <= 9 {
            self.0.iter().map(|l| l.to_string()).collect()
        } else if self.0.len() == 1 {
            format!("{},", self.0[0])
        } else {
            self.0
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.0.iter().copied().max().unwrap_or(0);
        f.write_str(&self.render(m))
    }
}

/// One index per non-pivot cycle, in standard-form order with the pivot
/// cycle removed. Each entry is a 1-based position inside its cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EnclosureChoice(pub Vec<usize>);

impl fmt::Display for EnclosureChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma_list(f, &self.0)
    }
}

/// The enclosing letter of every non-pivot cycle, in standard-form order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CycleEnclosures(pub Vec<usize>);

impl CycleEnclosures {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for CycleEnclosures {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        write_comma_list(f, &self.0)?;
        f.write_str("}")
    }
}

pub(crate) fn write_comma_list(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Incremental detector for the forbidden scattered patterns `a b a b`
/// (`a ≠ b`) and `j p j` (`j ≠ p`).
///
/// Greedy leftmost matching decides whether a fixed pattern occurs as a
/// subsequence, so one automaton state per pattern suffices.
#[derive(Debug, Clone)]
pub(crate) struct PatternGuard {
    m: usize,
    p: usize,
    // abab[(a-1)*m + (b-1)]: matched prefix length of a b a b
    abab: Vec<u8>,
    // jpj[j-1]: matched prefix length of j p j
    jpj: Vec<u8>,
}

impl PatternGuard {
    pub(crate) fn new(m: usize, p: usize) -> Self {
        PatternGuard {
            m,
            p,
            abab: vec![0; m * m],
            jpj: vec![0; m],
        }
    }

    /// Feeds one letter; returns false once a forbidden pattern has appeared.
    pub(crate) fn push(&mut self, x: usize) -> bool {
        let m = self.m;
        for other in 1..=m {
            if other == x {
                continue;
            }
            // x plays a in (x, other) and b in (other, x)
            let s = &mut self.abab[(x - 1) * m + (other - 1)];
            if s.is_multiple_of(2) {
                *s += 1;
                if *s == 4 {
                    return false;
                }
            }
            let s = &mut self.abab[(other - 1) * m + (x - 1)];
            if *s % 2 == 1 {
                *s += 1;
                if *s == 4 {
                    return false;
                }
            }
        }
        if x == self.p {
            for j in 1..=m {
                if j != self.p && self.jpj[j - 1] == 1 {
                    self.jpj[j - 1] = 2;
                }
            }
        } else {
            let s = &mut self.jpj[x - 1];
            if *s == 0 || *s == 2 {
                *s += 1;
                if *s == 3 {
                    return false;
                }
            }
        }
        true
    }
}

impl Instance {
    /// Required number of occurrences of letter `j` in a valid word.
    pub fn letter_count(&self, j: usize) -> usize {
        if j == self.p() {
            self.cycle_len(j) - 1
        } else {
            self.cycle_len(j) + 1
        }
    }

    /// Cycle sizes with the pivot cycle removed.
    pub fn choice_bounds(&self) -> Vec<usize> {
        self.non_pivot_cycles().map(|i| self.cycle_len(i)).collect()
    }

    pub fn word_of(&self, fac: &StarFactorization) -> Result<Word> {
        self.check_member(fac)?;
        Ok(Word(
            fac.others().iter().map(|&d| self.cycle_of(d)).collect(),
        ))
    }

    pub fn is_valid_word(&self, word: &Word) -> bool {
        self.validate_word(word).is_ok()
    }

    pub fn validate_word(&self, word: &Word) -> Result<()> {
        let m = self.m();
        let bad = |reason: String| Error::InvalidWord {
            word: word.clone(),
            reason,
        };
        if word.len() != self.factor_len() {
            return Err(bad(format!("length must be {}", self.factor_len())));
        }
        let mut counts = vec![0; m + 1];
        for &l in word.letters() {
            if l == 0 || l > m {
                return Err(bad(format!("letter {l} outside [1, {m}]")));
            }
            counts[l] += 1;
        }
        for j in 1..=m {
            if counts[j] != self.letter_count(j) {
                return Err(bad(format!(
                    "letter {j} occurs {} times, expected {}",
                    counts[j],
                    self.letter_count(j)
                )));
            }
        }
        let mut guard = PatternGuard::new(m, self.p());
        if !word.letters().iter().all(|&l| guard.push(l)) {
            return Err(bad("contains a forbidden pattern".into()));
        }
        Ok(())
    }

    /// All valid words, in lexicographic order.
    pub fn enumerate_valid_words(&self) -> Vec<Word> {
        let m = self.m();
        let mut remaining: Vec<usize> = (0..=m)
            .map(|j| if j == 0 { 0 } else { self.letter_count(j) })
            .collect();
        let mut prefix = Vec::with_capacity(self.factor_len());
        let mut out = Vec::new();
        extend_words(
            &mut remaining,
            &PatternGuard::new(m, self.p()),
            &mut prefix,
            self.factor_len(),
            &mut out,
        );
        out
    }

    /// Enclosing letters and their positions for every non-pivot cycle.
    pub fn enclosures_of(
        &self,
        fac: &StarFactorization,
    ) -> Result<(CycleEnclosures, EnclosureChoice)> {
        self.check_member(fac)?;
        let mut letters = Vec::with_capacity(self.m().saturating_sub(1));
        let mut choice = Vec::with_capacity(self.m().saturating_sub(1));
        for i in self.non_pivot_cycles() {
            let cycle = self.cycles().cycle(i);
            let sub: Vec<usize> = fac
                .others()
                .iter()
                .copied()
                .filter(|&d| self.cycle_of(d) == i)
                .collect();
            let first = sub[0];
            let c = cycle.iter().position(|&x| x == first).unwrap() + 1;
            if single_cycle_others(cycle, self.pivot(), c)? != sub {
                return Err(Error::InvalidFactorization(format!(
                    "factors on cycle {i} do not form an enclosed subword"
                )));
            }
            letters.push(first);
            choice.push(c);
        }
        Ok((CycleEnclosures(letters), EnclosureChoice(choice)))
    }

    pub fn check_choice(&self, choice: &EnclosureChoice) -> Result<()> {
        let bounds = self.choice_bounds();
        if choice.0.len() != bounds.len() {
            return Err(Error::OutOfRange(format!(
                "expected {} enclosure indices, got {}",
                bounds.len(),
                choice.0.len()
            )));
        }
        for (i, (&c, &b)) in choice.0.iter().zip(&bounds).enumerate() {
            if c == 0 || c > b {
                return Err(Error::OutOfRange(format!(
                    "enclosure index {c} at slot {} outside [1, {b}]",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Every enclosure choice, in lexicographic order.
    pub fn all_choices(&self) -> Vec<EnclosureChoice> {
        product(&self.choice_bounds())
            .into_iter()
            .map(EnclosureChoice)
            .collect()
    }

    /// Builds the factorization with letter pattern `word` and enclosures `choice`.
    pub fn rho(&self, word: &Word, choice: &EnclosureChoice) -> Result<StarFactorization> {
        self.validate_word(word)?;
        self.check_choice(choice)?;
        let k = self.pivot();
        let mut pieces: Vec<std::vec::IntoIter<usize>> = Vec::with_capacity(self.m());
        let mut slot = 0;
        for i in 1..=self.m() {
            let cycle = self.cycles().cycle(i);
            let index = if i == self.p() {
                self.location().pos
            } else {
                slot += 1;
                choice.0[slot - 1]
            };
            pieces.push(single_cycle_others(cycle, k, index)?.into_iter());
        }
        let others = word
            .letters()
            .iter()
            .map(|&l| pieces[l - 1].next().expect("letter counts were checked"))
            .collect();
        StarFactorization::new(self.n(), k, others)
    }

    pub fn rho_inv(&self, fac: &StarFactorization) -> Result<(Word, EnclosureChoice)> {
        let word = self.word_of(fac)?;
        let (_, choice) = self.enclosures_of(fac)?;
        Ok((word, choice))
    }

    /// `⋆_k(π)` assembled from valid words and enclosure choices, sorted.
    pub fn enumerate_via_rho(&self) -> Result<Vec<StarFactorization>> {
        let choices = self.all_choices();
        let mut out = Vec::new();
        for w in self.enumerate_valid_words() {
            for c in &choices {
                out.push(self.rho(&w, c)?);
            }
        }
        out.sort();
        Ok(out)
    }
}

fn extend_words(
    remaining: &mut [usize],
    guard: &PatternGuard,
    prefix: &mut Vec<usize>,
    target: usize,
    out: &mut Vec<Word>,
) {
    if prefix.len() == target {
        out.push(Word(prefix.clone()));
        return;
    }
    for x in 1..remaining.len() {
        if remaining[x] == 0 {
            continue;
        }
        let mut next = guard.clone();
        if !next.push(x) {
            continue;
        }
        remaining[x] -= 1;
        prefix.push(x);
        extend_words(remaining, &next, prefix, target, out);
        prefix.pop();
        remaining[x] += 1;
    }
}

/// Cartesian product of `[1, b_1] × ... × [1, b_r]` in lexicographic order.
/// The empty product has one element.
pub(crate) fn product(bounds: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(bounds.len())];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=b).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn inst(text: &str, n: usize, k: usize) -> Instance {
        Instance::new(Permutation::parse_cycles(text, n).unwrap(), k).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    /// Quartic scan for a b a b and j p j, independent of the automaton.
    fn has_forbidden_pattern(word: &[usize], p: usize) -> bool {
        let n = word.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if word[a] == word[c] && word[a] != word[b] {
                        if word[b] == p {
                            return true;
                        }
                        if word[c + 1..].contains(&word[b]) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn word_parse_and_render() {
        assert_eq!(w("2111331").letters(), &[2, 1, 1, 1, 3, 3, 1]);
        assert_eq!(w("2,11,3").letters(), &[2, 11, 3]);
        assert_eq!(w("2,11,3").to_string(), "2,11,3");
        assert_eq!(w("2111331").to_string(), "2111331");
        assert_eq!(w("2111331").render(12), "2,1,1,1,3,3,1");
        assert!(Word::parse("21a").is_err());
        assert!(Word::parse("201").is_err());
        assert!(Word::parse("").unwrap().is_empty());
        assert_eq!(Word(vec![10]).to_string(), "10,");
        assert_eq!(Word::parse("10,").unwrap(), Word(vec![10]));
        assert_eq!(Word::parse("2,11,3").unwrap(), Word(vec![2, 11, 3]));
        assert!(Word::parse(",").is_err());
    }

    #[test]
    fn word_of_examples() {
        let i = inst("(1 4 2)(3 5)(6)", 6, 3);
        let f = i
            .parse_factorization("(3 5)(3 6)(3 6)(3 1)(3 2)(3 4)(3 1)")
            .unwrap();
        assert_eq!(i.word_of(&f).unwrap(), w("2331111"));
        let f = i
            .parse_factorization("(3 5)(3 4)(3 1)(3 2)(3 6)(3 6)(3 4)")
            .unwrap();
        assert_eq!(i.word_of(&f).unwrap(), w("2111331"));

        let c = inst("(1 2 3 4 5)", 5, 1);
        let only = c.enumerate_brute(1000).unwrap();
        assert_eq!(only.len(), 1);
        assert_eq!(c.word_of(&only[0]).unwrap(), w("1111"));
    }

    #[test]
    fn word_of_rejects_non_members() {
        let i = inst("(1 4 2)(3 5)(6)", 6, 3);
        let short = i.parse_factorization("(3 5)(3 4)").unwrap();
        assert!(matches!(
            i.word_of(&short),
            Err(Error::InvalidFactorization(_))
        ));
        let wrong = i
            .parse_factorization("(3 5)(3 4)(3 1)(3 2)(3 6)(3 6)(3 1)")
            .unwrap();
        assert!(matches!(
            i.word_of(&wrong),
            Err(Error::InvalidFactorization(_))
        ));
        let other_pivot = StarFactorization::parse("(1 5)", 6, 1).unwrap();
        assert!(i.word_of(&other_pivot).is_err());
    }

    #[test]
    fn validity_examples() {
        let i = inst("(1 4 2)(3 5)(6)", 6, 3);
        assert!(i.is_valid_word(&w("2111331")));
        assert!(i.is_valid_word(&w("2331111")));
        assert!(!i.is_valid_word(&w("1211331")));
        assert!(!i.is_valid_word(&w("211133")));
        assert!(!i.is_valid_word(&w("2111341")));
        assert!(!i.is_valid_word(&w("2211331")));
        // 1 3 1 3
        assert!(!i.is_valid_word(&w("2113131")));
    }

    #[test]
    fn automaton_agrees_with_quartic_scan() {
        for m in 1..=3usize {
            for p in 1..=m {
                for len in 0..=6usize {
                    for letters in
                        itertools::Itertools::multi_cartesian_product((0..len).map(|_| 1..=m))
                    {
                        let mut g = PatternGuard::new(m, p);
                        let auto_ok = letters.iter().all(|&l| g.push(l));
                        assert_eq!(
                            auto_ok,
                            !has_forbidden_pattern(&letters, p),
                            "{letters:?} p={p}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn valid_words_of_running_example() {
        let i = inst("(1 4 2)(3 5)(6)", 6, 3);
        let words: Vec<String> = i
            .enumerate_valid_words()
            .iter()
            .map(|w| w.to_string())
            .collect();
        let mut expected = vec![
            "2331111", "3321111", "3311112", "2311113", "3111132", "2133111", "1331112", "2113311",
            "1133112", "2111331", "1113312", "2111133", "1111233", "1111332",
        ];
        expected.sort();
        assert_eq!(words, expected);
    }

    #[test]
    fn valid_words_small_cases() {
        let i = inst("(1 2)", 3, 3);
        assert_eq!(i.enumerate_valid_words(), vec![w("111")]);
        let c = inst("(1 3 2 4)", 4, 2);
        assert_eq!(c.enumerate_valid_words(), vec![w("111")]);
        let one = inst("", 1, 1);
        assert_eq!(one.enumerate_valid_words(), vec![Word::default()]);
    }

    #[test]
    fn enclosure_examples() {
        let i = inst("(1 4 2)(3 5)(6)", 6, 3);
        let f = i
            .parse_factorization("(3 5)(3 4)(3 1)(3 2)(3 6)(3 6)(3 4)")
            .unwrap();
        let (letters, choice) = i.enclosures_of(&f).unwrap();
        assert_eq!(letters.to_string(), "{4,6}");
        assert_eq!(choice, EnclosureChoice(vec![2, 1]));

        let j = inst("(1 8)(2 9 7)(3)(4 6)(5)", 9, 9);
        let f = j
            .parse_factorization("(9 1)(9 5)(9 5)(9 6)(9 4)(9 6)(9 8)(9 3)(9 3)(9 1)(9 2)(9 7)")
            .unwrap();
        let (letters, choice) = j.enclosures_of(&f).unwrap();
        assert_eq!(letters, CycleEnclosures(vec![1, 3, 6, 5]));
        assert_eq!(choice, EnclosureChoice(vec![1, 1, 2, 1]));

        let c = inst("(1 2 3)", 3, 2);
        let only = c.enumerate_brute(1000).unwrap();
        let (letters, choice) = c.enclosures_of(&only[0]).unwrap();
        assert!(letters.letters().is_empty());
        assert!(choice.0.is_empty());
    }

    #[test]
    fn rho_examples() {
        let i = inst("(1 4 2)(3 5)(6)", 6, 3);
        let f = i.rho(&w("2111331"), &EnclosureChoice(vec![2, 1])).unwrap();
        assert_eq!(f.to_string(), "(3 5)(3 4)(3 1)(3 2)(3 6)(3 6)(3 4)");
        assert_eq!(
            i.rho_inv(&f).unwrap(),
            (w("2111331"), EnclosureChoice(vec![2, 1]))
        );

        let s = inst("(1 2)", 3, 3);
        let f = s.rho(&w("111"), &EnclosureChoice(vec![1])).unwrap();
        assert_eq!(f.to_string(), "(3 1)(3 2)(3 1)");

        let c = inst("(1 3 2 4)", 4, 3);
        let f = c.rho(&w("111"), &EnclosureChoice::default()).unwrap();
        // (3 2 4 1): a_2..a_4 = 2 4 1, emitted reversed
        assert_eq!(f.to_string(), "(3 1)(3 4)(3 2)");
        assert_eq!(f.evaluate(), *c.perm());
    }

    #[test]
    fn rho_rejects_bad_inputs() {
        let i = inst("(1 4 2)(3 5)(6)", 6, 3);
        assert!(matches!(
            i.rho(&w("1211331"), &EnclosureChoice(vec![2, 1])),
            Err(Error::InvalidWord { .. })
        ));
        assert!(matches!(
            i.rho(&w("2111331"), &EnclosureChoice(vec![4, 1])),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            i.rho(&w("2111331"), &EnclosureChoice(vec![1, 1, 1])),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn rho_round_trips_on_running_example() {
        let i = inst("(1 4 2)(3 5)(6)", 6, 3);
        let words = i.enumerate_valid_words();
        let choices = i.all_choices();
        assert_eq!(words.len() * choices.len(), 42);
        for word in &words {
            for c in &choices {
                let f = i.rho(word, c).unwrap();
                assert_eq!(i.rho_inv(&f).unwrap(), (word.clone(), c.clone()));
            }
        }
    }

    #[test]
    fn products() {
        assert_eq!(product(&[]), vec![Vec::<usize>::new()]);
        assert_eq!(product(&[2, 1]), vec![vec![1, 1], vec![2, 1]]);
        assert_eq!(product(&[3, 2]).len(), 6);
    }
}
