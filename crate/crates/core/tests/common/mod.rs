//! Independent reference implementations shared by the integration tests and
//! the acceptance runner. Nothing here calls into the search or the encoders.

#![allow(dead_code)]

use itertools::Itertools;
use starfact::{Instance, Permutation, StarFactorization};

/// Every permutation of `[n]`, by image vector.
pub fn all_perms(n: usize) -> Vec<Permutation> {
    (1..=n)
        .permutations(n)
        .map(|image| Permutation::from_image(image).unwrap())
        .collect()
}

/// Every `(π, k)` with `π ∈ S_n`.
pub fn all_instances(n: usize) -> impl Iterator<Item = Instance> {
    all_perms(n)
        .into_iter()
        .flat_map(move |pi| (1..=n).map(move |k| Instance::new(pi.clone(), k).unwrap()))
}

/// Cycle lengths of an image vector, by walking it.
pub fn cycle_lengths(image: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; image.len()];
    let mut out = Vec::new();
    for s in 0..image.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = image[x] - 1;
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

pub fn cycle_length_of(image: &[usize], k: usize) -> usize {
    let mut len = 1;
    let mut x = image[k - 1];
    while x != k {
        x = image[x - 1];
        len += 1;
    }
    len
}

/// `(L)_{m-2} · ∏ ℓ_i`, or 1 for a single cycle.
pub fn naive_count(image: &[usize]) -> u128 {
    let ls = cycle_lengths(image);
    let (n, m) = (image.len(), ls.len());
    if m == 1 {
        return 1;
    }
    let l = (n + m - 2) as u128;
    let falling: u128 = (0..(m - 2) as u128).map(|i| l - i).product();
    falling * ls.iter().map(|&x| x as u128).product::<u128>()
}

/// Image of `(k d_1)(k d_2)⋯(k d_r)`, rightmost applied first.
pub fn naive_product(n: usize, k: usize, others: &[usize]) -> Vec<usize> {
    (1..=n)
        .map(|x| {
            others.iter().rev().fold(x, |y, &d| {
                if y == k {
                    d
                } else if y == d {
                    k
                } else {
                    y
                }
            })
        })
        .collect()
}

/// All minimal transitive star factorizations by trying every sequence.
/// Exponential; keep `n ≤ 4`.
pub fn naive_enumerate(image: &[usize], k: usize) -> Vec<Vec<usize>> {
    let n = image.len();
    let m = cycle_lengths(image).len();
    let len = n + m - 2;
    let letters: Vec<usize> = (1..=n).filter(|&d| d != k).collect();
    if len == 0 {
        return if image.iter().enumerate().all(|(i, &x)| x == i + 1) {
            vec![vec![]]
        } else {
            vec![]
        };
    }
    std::iter::repeat_n(letters.clone(), len)
        .multi_cartesian_product()
        .filter(|seq| letters.iter().all(|d| seq.contains(d)))
        .filter(|seq| naive_product(n, k, seq) == image)
        .collect()
}

/// Validity of a word by direct scans for the forbidden subsequences.
pub fn naive_valid_word(word: &[usize], lens: &[usize], p: usize) -> bool {
    let m = lens.len();
    for (j, &l) in lens.iter().enumerate() {
        let want = if j + 1 == p { l - 1 } else { l + 1 };
        if word.iter().filter(|&&x| x == j + 1).count() != want {
            return false;
        }
    }
    if word.iter().any(|&x| x == 0 || x > m) {
        return false;
    }
    let has = |pat: &[usize]| {
        let mut i = 0;
        for &x in word {
            if i < pat.len() && x == pat[i] {
                i += 1;
            }
        }
        i == pat.len()
    };
    for a in 1..=m {
        for b in 1..=m {
            if a != b && has(&[a, b, a, b]) {
                return false;
            }
        }
        if a != p && has(&[a, p, a]) {
            return false;
        }
    }
    true
}

pub fn serialize(facs: &[StarFactorization]) -> Vec<String> {
    facs.iter().map(ToString::to_string).sorted().collect()
}
