//! Occurrence scanning, Parikh vectors and factor/abelian complexity.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::words::{FiniteWord, Symbol};

/// Letter-count vector of a finite word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParikhVector {
    counts: Vec<u32>,
}

impl ParikhVector {
    pub fn of(u: &FiniteWord) -> Self {
        let mut counts = vec![0u32; u.alphabet_size() as usize];
        for &s in u.symbols() {
            counts[s as usize] += 1;
        }
        Self { counts }
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, letter: Symbol) -> u32 {
        self.counts.get(letter as usize).copied().unwrap_or(0)
    }

    /// Total length of any word in the class.
    pub fn len(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn alphabet_size(&self) -> usize {
        self.counts.len()
    }

    pub fn add(&self, other: &ParikhVector) -> ParikhVector {
        let n = self.counts.len().max(other.counts.len());
        let counts = (0..n)
            .map(|i| self.counts.get(i).unwrap_or(&0) + other.counts.get(i).unwrap_or(&0))
            .collect();
        ParikhVector { counts }
    }
}

// Ordered by length first, then by the lexicographic order of the canonical
// class representative `0^c0 1^c1 ...` (equivalently, descending counts), so
// enumeration by class is deterministic.
impl Ord for ParikhVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| other.counts.cmp(&self.counts))
    }
}

impl PartialOrd for ParikhVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ParikhVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Parikh{:?}", self.counts)
    }
}

/// Canonical key of an abelian equivalence class: two finite words map to the
/// same key iff they have equal Parikh vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianClassKey {
    parikh: ParikhVector,
}

impl AbelianClassKey {
    pub fn of(u: &FiniteWord) -> Self {
        Self { parikh: ParikhVector::of(u) }
    }

    pub fn from_parikh(parikh: ParikhVector) -> Self {
        Self { parikh }
    }

    pub fn parikh(&self) -> &ParikhVector {
        &self.parikh
    }

    pub fn len(&self) -> usize {
        self.parikh.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parikh.is_empty()
    }

    /// The lexicographically least member of the class, `0^c0 1^c1 ...`.
    pub fn canonical_word(&self) -> FiniteWord {
        let mut symbols = Vec::with_capacity(self.len());
        for (letter, &c) in self.parikh.counts().iter().enumerate() {
            symbols.extend(std::iter::repeat_n(letter as Symbol, c as usize));
        }
        FiniteWord::new(symbols, self.parikh.alphabet_size().max(1) as u8).unwrap()
    }
}

impl fmt::Display for AbelianClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_word())
    }
}

impl fmt::Debug for AbelianClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.canonical_word())
    }
}

/// Sorted occurrence positions of a pattern (exact or abelian) in a prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrenceList {
    pub positions: Vec<usize>,
    pub pattern_length: usize,
}

/// A value together with a truncation-reliability flag.
///
/// Factor statistics at window length `n` are flagged reliable only when
/// `n <= reliable_bound(prefix length)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reliable<T> {
    pub value: T,
    pub reliable: bool,
}

/// Default guard against truncation artifacts: length `n` statistics are
/// trusted on prefixes of length at least `4n`.
pub fn reliable_bound(prefix_len: usize) -> usize {
    prefix_len / 4
}

/// Parikh vector of a finite word.
pub fn parikh(u: &FiniteWord) -> ParikhVector {
    ParikhVector::of(u)
}

/// All exact occurrences of `u` fully inside `w`, overlaps included.
pub fn occurrences(w: &FiniteWord, u: &FiniteWord) -> Result<OccurrenceList> {
    if u.is_empty() {
        return Err(Error::EmptyFactor);
    }
    let (s, pat) = (w.symbols(), u.symbols());
    let mut positions = Vec::new();
    if pat.len() <= s.len() {
        for i in 0..=s.len() - pat.len() {
            if &s[i..i + pat.len()] == pat {
                positions.push(i);
            }
        }
    }
    Ok(OccurrenceList { positions, pattern_length: u.len() })
}

/// All positions whose window is abelian equivalent to `key`, found by a
/// sliding-window count update.
pub fn abelian_occurrences(w: &FiniteWord, key: &AbelianClassKey) -> Result<OccurrenceList> {
    let len = key.len();
    if len == 0 {
        return Err(Error::EmptyFactor);
    }
    let alphabet = w.alphabet_size() as usize;
    let mut positions = Vec::new();
    // a key mentioning letters outside the alphabet never occurs
    let out_of_range = key
        .parikh()
        .counts()
        .iter()
        .enumerate()
        .any(|(l, &c)| c > 0 && l >= alphabet);
    if len > w.len() || out_of_range {
        return Ok(OccurrenceList { positions, pattern_length: len });
    }

    let target: Vec<u32> = (0..alphabet).map(|l| key.parikh().count(l as Symbol)).collect();
    let s = w.symbols();
    let mut counts = vec![0u32; alphabet];
    for &c in &s[..len] {
        counts[c as usize] += 1;
    }
    // number of letters whose running count differs from the target
    let mut mismatches = counts.iter().zip(&target).filter(|(a, b)| a != b).count();
    if mismatches == 0 {
        positions.push(0);
    }
    for i in 1..=s.len() - len {
        let out = s[i - 1] as usize;
        let inn = s[i + len - 1] as usize;
        if out != inn {
            for idx in [out, inn] {
                let was = counts[idx] == target[idx];
                if idx == out {
                    counts[idx] -= 1;
                } else {
                    counts[idx] += 1;
                }
                let now = counts[idx] == target[idx];
                match (was, now) {
                    (true, false) => mismatches += 1,
                    (false, true) => mismatches -= 1,
                    _ => {}
                }
            }
        }
        if mismatches == 0 {
            positions.push(i);
        }
    }
    Ok(OccurrenceList { positions, pattern_length: len })
}

/// The set of distinct length-`n` factors of `w`.
pub fn distinct_factors(w: &FiniteWord, n: usize) -> Result<BTreeSet<FiniteWord>> {
    if n > w.len() {
        return Err(Error::LengthExceedsPrefix { n, len: w.len() });
    }
    let mut set = BTreeSet::new();
    if n == 0 {
        set.insert(FiniteWord::empty(w.alphabet_size()));
        return Ok(set);
    }
    for i in 0..=w.len() - n {
        set.insert(w.factor(i, i + n));
    }
    Ok(set)
}

/// The set of distinct abelian class keys of length-`n` factors of `w`.
pub fn distinct_classes(w: &FiniteWord, n: usize) -> Result<BTreeSet<AbelianClassKey>> {
    if n > w.len() {
        return Err(Error::LengthExceedsPrefix { n, len: w.len() });
    }
    let alphabet = w.alphabet_size() as usize;
    let mut set = BTreeSet::new();
    if n == 0 {
        set.insert(AbelianClassKey::from_parikh(ParikhVector::from_counts(vec![0; alphabet])));
        return Ok(set);
    }
    let s = w.symbols();
    let mut counts = vec![0u32; alphabet];
    for &c in &s[..n] {
        counts[c as usize] += 1;
    }
    set.insert(AbelianClassKey::from_parikh(ParikhVector::from_counts(counts.clone())));
    for i in 1..=s.len() - n {
        counts[s[i - 1] as usize] -= 1;
        counts[s[i + n - 1] as usize] += 1;
        set.insert(AbelianClassKey::from_parikh(ParikhVector::from_counts(counts.clone())));
    }
    Ok(set)
}

/// Number of distinct length-`n` factors, with a reliability flag.
pub fn factor_complexity(w: &FiniteWord, n: usize) -> Result<Reliable<usize>> {
    let value = distinct_factors(w, n)?.len();
    Ok(Reliable { value, reliable: n <= reliable_bound(w.len()) })
}

/// Number of distinct abelian classes of length `n`, with a reliability flag.
pub fn abelian_complexity(w: &FiniteWord, n: usize) -> Result<Reliable<usize>> {
    let value = distinct_classes(w, n)?.len();
    Ok(Reliable { value, reliable: n <= reliable_bound(w.len()) })
}
