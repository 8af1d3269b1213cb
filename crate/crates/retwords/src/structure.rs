//! Structural predicates on prefixes: balance, special and singular factors,
//! Christoffel recognition, letter blocks.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::factors::AbelianClassKey;
use crate::words::{mechanical_word, FiniteWord, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialKind {
    RightSpecial,
    LeftSpecial,
    Bispecial,
}

/// Maximal-run lengths of one letter, boundary-truncated runs excluded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockProfile {
    pub letter: Symbol,
    pub block_lengths: BTreeSet<usize>,
}

impl BlockProfile {
    /// A letter is isolated when it only appears in blocks of length 1.
    pub fn is_isolated(&self) -> bool {
        self.block_lengths.iter().all(|&l| l == 1)
    }
}

/// Result of a balance check, with a witness pair on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceCheck {
    pub balanced: bool,
    /// Two equal-length factors whose counts of some letter differ by more
    /// than `k`.
    pub witness: Option<(FiniteWord, FiniteWord)>,
}

/// Checks `||u|_a - |v|_a| <= k` over all pairs of equal-length windows up to
/// `max_len`, via per-length min/max sliding counts.
pub fn is_k_balanced(w: &FiniteWord, k: u32, max_len: usize) -> BalanceCheck {
    let s = w.symbols();
    let alphabet = w.alphabet_size() as usize;
    for n in 1..=max_len.min(s.len()) {
        let mut counts = vec![0u32; alphabet];
        for &c in &s[..n] {
            counts[c as usize] += 1;
        }
        let mut min: Vec<(u32, usize)> = counts.iter().map(|&c| (c, 0)).collect();
        let mut max = min.clone();
        for i in 1..=s.len() - n {
            counts[s[i - 1] as usize] -= 1;
            counts[s[i + n - 1] as usize] += 1;
            for (l, &c) in counts.iter().enumerate() {
                if c < min[l].0 {
                    min[l] = (c, i);
                }
                if c > max[l].0 {
                    max[l] = (c, i);
                }
            }
        }
        for l in 0..alphabet {
            if max[l].0 - min[l].0 > k {
                let rich = w.factor(max[l].1, max[l].1 + n);
                let poor = w.factor(min[l].1, min[l].1 + n);
                return BalanceCheck { balanced: false, witness: Some((rich, poor)) };
            }
        }
    }
    BalanceCheck { balanced: true, witness: None }
}

/// Length-`n` factors with at least two distinct one-letter extensions on the
/// requested side(s). The last (resp. first) window is skipped since its
/// extension is cut off by the prefix boundary.
pub fn special_factors(w: &FiniteWord, n: usize, kind: SpecialKind) -> Result<BTreeSet<FiniteWord>> {
    if n >= w.len() {
        return Err(Error::LengthExceedsPrefix { n, len: w.len() });
    }
    let s = w.symbols();
    let mut right_ext: BTreeMap<FiniteWord, BTreeSet<Symbol>> = BTreeMap::new();
    let mut left_ext: BTreeMap<FiniteWord, BTreeSet<Symbol>> = BTreeMap::new();
    for i in 0..=s.len() - n {
        let u = w.factor(i, i + n);
        if i + n < s.len() {
            right_ext.entry(u.clone()).or_default().insert(s[i + n]);
        }
        if i > 0 {
            left_ext.entry(u).or_default().insert(s[i - 1]);
        }
    }
    let right: BTreeSet<FiniteWord> =
        right_ext.iter().filter(|(_, e)| e.len() >= 2).map(|(u, _)| u.clone()).collect();
    let left: BTreeSet<FiniteWord> =
        left_ext.iter().filter(|(_, e)| e.len() >= 2).map(|(u, _)| u.clone()).collect();
    Ok(match kind {
        SpecialKind::RightSpecial => right,
        SpecialKind::LeftSpecial => left,
        SpecialKind::Bispecial => right.intersection(&left).cloned().collect(),
    })
}

/// Abelian classes of length `n` realized by exactly one distinct factor.
pub fn singular_classes(w: &FiniteWord, n: usize) -> Result<BTreeSet<AbelianClassKey>> {
    let factors = crate::factors::distinct_factors(w, n)?;
    let mut by_class: BTreeMap<AbelianClassKey, usize> = BTreeMap::new();
    for u in &factors {
        *by_class.entry(AbelianClassKey::of(u)).or_default() += 1;
    }
    Ok(by_class.into_iter().filter(|(_, c)| *c == 1).map(|(k, _)| k).collect())
}

/// Decides whether `u` is a Christoffel word: a letter, or the lower or upper
/// Christoffel word of its own (coprime) slope, built by the digital-line
/// labeling.
pub fn is_christoffel(u: &FiniteWord) -> bool {
    if u.is_empty() || u.symbols().iter().any(|&s| s > 1) {
        return false;
    }
    if u.len() == 1 {
        return true;
    }
    let ones = u.count_letter(1);
    let len = u.len();
    if ones.gcd(&len) != 1 {
        return false;
    }
    // lower Christoffel word of the slope, via the rotation coding; the upper
    // word is its reversal
    let lower = mechanical_word(ones as u64, len as u64, 0, 1, len).expect("valid slope");
    *u == lower || *u == lower.reversed()
}

/// Maximal-run lengths of `letter` in `w`, excluding runs cut by either end
/// of the prefix.
pub fn block_profile(w: &FiniteWord, letter: Symbol) -> Result<BlockProfile> {
    let s = w.symbols();
    if !s.contains(&letter) {
        return Err(Error::LetterAbsent(letter));
    }
    let mut block_lengths = BTreeSet::new();
    let mut run_start: Option<usize> = None;
    for (i, &c) in s.iter().enumerate() {
        if c == letter {
            run_start.get_or_insert(i);
        } else if let Some(start) = run_start.take() {
            if start > 0 {
                block_lengths.insert(i - start);
            }
        }
    }
    // a run still open at the end of the prefix is truncated: drop it
    Ok(BlockProfile { letter, block_lengths })
}
