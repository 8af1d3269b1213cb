//! Finite words and deterministic generators for prefixes of infinite words.
//!
//! Every infinite word studied by the rest of the crate is described by a
//! [`WordSpec`]: a morphic fixed point, an exact-rational mechanical word, a
//! standard (continued-fraction directive) word, a purely periodic word, or a
//! concatenation of blocks driven by a selector word. [`generate_prefix`]
//! turns a spec and a length into a [`FiniteWord`], deterministically.

use std::fmt;

use crate::error::{Error, Result};

/// Letter index into a small alphabet.
pub type Symbol = u8;

/// An immutable finite word over a small integer alphabet.
///
/// The alphabet size is carried explicitly rather than inferred from the
/// content, so that analyses over a k-letter alphabet stay meaningful on
/// prefixes where some letters happen to be absent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWord {
    symbols: Vec<Symbol>,
    alphabet_size: u8,
}

impl FiniteWord {
    pub fn new(symbols: Vec<Symbol>, alphabet_size: u8) -> Result<Self> {
        if alphabet_size == 0 && !symbols.is_empty() {
            return Err(Error::InvalidSpec("alphabet size must be positive".into()));
        }
        if let Some(&v) = symbols.iter().find(|&&v| v >= alphabet_size) {
            return Err(Error::SymbolOutOfRange { value: v, alphabet: alphabet_size });
        }
        Ok(Self { symbols, alphabet_size })
    }

    /// The empty word over the given alphabet.
    pub fn empty(alphabet_size: u8) -> Self {
        Self { symbols: Vec::new(), alphabet_size }
    }

    /// Parses a binary word from a string of `0`s and `1`s.
    pub fn binary(digits: &str) -> Result<Self> {
        Self::parse(digits, 2)
    }

    /// Parses a word from hex-digit characters over the given alphabet.
    pub fn parse(digits: &str, alphabet_size: u8) -> Result<Self> {
        let mut symbols = Vec::with_capacity(digits.len());
        for c in digits.chars() {
            let v = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid symbol character {c:?}")))?;
            symbols.push(v as Symbol);
        }
        Self::new(symbols, alphabet_size)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet_size
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// The factor `self[start..end)` as a word over the same alphabet.
    pub fn factor(&self, start: usize, end: usize) -> FiniteWord {
        FiniteWord { symbols: self.symbols[start..end].to_vec(), alphabet_size: self.alphabet_size }
    }

    pub fn count_letter(&self, letter: Symbol) -> usize {
        self.symbols.iter().filter(|&&s| s == letter).count()
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        FiniteWord { symbols, alphabet_size: self.alphabet_size.max(other.alphabet_size) }
    }

    pub fn reversed(&self) -> FiniteWord {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        FiniteWord { symbols, alphabet_size: self.alphabet_size }
    }

    /// Repeats the word cyclically out to length `n`.
    pub fn repeat_to(&self, n: usize) -> Result<FiniteWord> {
        if self.is_empty() && n > 0 {
            return Err(Error::InvalidSpec("cannot repeat the empty word".into()));
        }
        let symbols = (0..n).map(|i| self.symbols[i % self.symbols.len()]).collect();
        Ok(FiniteWord { symbols, alphabet_size: self.alphabet_size })
    }

    pub fn is_prefix_of(&self, other: &FiniteWord) -> bool {
        other.symbols.len() >= self.symbols.len()
            && other.symbols[..self.symbols.len()] == self.symbols[..]
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        for &s in &self.symbols {
            write!(f, "{}", char::from_digit(s as u32, 16).unwrap_or('?'))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// A morphism over a small alphabet: one image word per letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    images: Vec<FiniteWord>,
}

impl Morphism {
    pub fn new(images: Vec<FiniteWord>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > 16 {
            return Err(Error::InvalidSpec("morphism alphabet must have 1..=16 letters".into()));
        }
        for img in &images {
            if let Some(&v) = img.symbols().iter().find(|&&v| v as usize >= n) {
                return Err(Error::SymbolOutOfRange { value: v, alphabet: n as u8 });
            }
        }
        Ok(Self { images })
    }

    /// Convenience constructor for binary morphisms given as digit strings.
    pub fn binary(image0: &str, image1: &str) -> Result<Self> {
        Self::new(vec![FiniteWord::binary(image0)?, FiniteWord::binary(image1)?])
    }

    pub fn alphabet_size(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn image(&self, letter: Symbol) -> &FiniteWord {
        &self.images[letter as usize]
    }

    pub fn apply(&self, w: &FiniteWord) -> FiniteWord {
        let mut symbols = Vec::with_capacity(w.len() * 2);
        for &s in w.symbols() {
            symbols.extend_from_slice(self.images[s as usize].symbols());
        }
        FiniteWord { symbols, alphabet_size: self.alphabet_size() }
    }

    /// A morphism has a fixed point starting with `seed` when the image of
    /// `seed` begins with `seed` and has length at least 2.
    pub fn is_prolongable_at(&self, seed: Symbol) -> bool {
        (seed as usize) < self.images.len() && {
            let img = &self.images[seed as usize];
            img.len() >= 2 && img.symbols()[0] == seed
        }
    }
}

/// Declarative description of an infinite word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordSpec {
    /// Fixed point of a morphism prolongable at `seed`.
    Morphic { morphism: Morphism, seed: Symbol },
    /// Rotation coding of rational slope `p/q` with intercept `rho_num/rho_den`.
    Mechanical { p: u64, q: u64, rho_num: u64, rho_den: u64 },
    /// Characteristic Sturmian word of the continued fraction `[0; a1, a2, ...]`.
    Directive { coefficients: Vec<u32> },
    /// `pattern` repeated forever.
    Periodic { pattern: FiniteWord },
    /// Concatenation of `blocks` chosen by the successive letters of `selector`.
    BlockChoice { blocks: Vec<FiniteWord>, selector: Box<WordSpec> },
}

impl WordSpec {
    /// The Fibonacci word, fixed by `0 -> 01`, `1 -> 0`.
    pub fn fibonacci() -> Self {
        WordSpec::Morphic { morphism: Morphism::binary("01", "0").unwrap(), seed: 0 }
    }

    /// The Thue-Morse word, fixed by `0 -> 01`, `1 -> 10`.
    pub fn thue_morse() -> Self {
        WordSpec::Morphic { morphism: Morphism::binary("01", "10").unwrap(), seed: 0 }
    }

    pub fn periodic(pattern: &str) -> Result<Self> {
        let alphabet = pattern
            .chars()
            .filter_map(|c| c.to_digit(16))
            .max()
            .map(|m| m as u8 + 1)
            .unwrap_or(1);
        Ok(WordSpec::Periodic { pattern: FiniteWord::parse(pattern, alphabet.max(2))? })
    }

    pub fn alphabet_size(&self) -> u8 {
        match self {
            WordSpec::Morphic { morphism, .. } => morphism.alphabet_size(),
            WordSpec::Mechanical { .. } | WordSpec::Directive { .. } => 2,
            WordSpec::Periodic { pattern } => pattern.alphabet_size(),
            WordSpec::BlockChoice { blocks, .. } => {
                blocks.iter().map(|b| b.alphabet_size()).max().unwrap_or(0)
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            WordSpec::Morphic { morphism, seed } => {
                if !morphism.is_prolongable_at(*seed) {
                    return Err(Error::NotProlongable(*seed));
                }
            }
            WordSpec::Mechanical { p, q, rho_num, rho_den } => {
                if *q == 0 || p > q || *rho_den == 0 || rho_num >= rho_den {
                    return Err(Error::InvalidSlope { p: *p, q: *q });
                }
            }
            WordSpec::Directive { coefficients } => {
                if coefficients.is_empty() || coefficients.contains(&0) {
                    return Err(Error::InvalidSpec(
                        "directive coefficients must be positive".into(),
                    ));
                }
            }
            WordSpec::Periodic { pattern } => {
                if pattern.is_empty() {
                    return Err(Error::InvalidSpec("periodic pattern must be nonempty".into()));
                }
            }
            WordSpec::BlockChoice { blocks, selector } => {
                if blocks.is_empty() || blocks.iter().any(|b| b.is_empty()) {
                    return Err(Error::InvalidSpec("blocks must be nonempty".into()));
                }
                if selector.alphabet_size() as usize != blocks.len() {
                    return Err(Error::InvalidSpec(format!(
                        "selector alphabet size {} does not match block count {}",
                        selector.alphabet_size(),
                        blocks.len()
                    )));
                }
                selector.validate()?;
            }
        }
        Ok(())
    }
}

/// A generated finite window onto the infinite word denoted by a spec.
///
/// Regenerating the same spec at the same length yields an identical word.
#[derive(Clone, Debug)]
pub struct Prefix {
    spec: WordSpec,
    word: FiniteWord,
}

impl Prefix {
    pub fn generate(spec: &WordSpec, n: usize) -> Result<Self> {
        Ok(Self { spec: spec.clone(), word: generate_prefix(spec, n)? })
    }

    pub fn spec(&self) -> &WordSpec {
        &self.spec
    }

    pub fn word(&self) -> &FiniteWord {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// Generates the length-`n` prefix of the infinite word described by `spec`.
pub fn generate_prefix(spec: &WordSpec, n: usize) -> Result<FiniteWord> {
    spec.validate()?;
    match spec {
        WordSpec::Morphic { morphism, seed } => morphic_fixed_point(morphism, *seed, n),
        WordSpec::Mechanical { p, q, rho_num, rho_den } => {
            mechanical_word(*p, *q, *rho_num, *rho_den, n)
        }
        WordSpec::Directive { coefficients } => standard_word_from_directive(coefficients, n),
        WordSpec::Periodic { pattern } => pattern.repeat_to(n),
        WordSpec::BlockChoice { blocks, selector } => block_choice_word(blocks, selector, n),
    }
}

/// Length-`n` prefix of the fixed point of `m` at `seed`.
pub fn morphic_fixed_point(m: &Morphism, seed: Symbol, n: usize) -> Result<FiniteWord> {
    if !m.is_prolongable_at(seed) {
        return Err(Error::NotProlongable(seed));
    }
    let mut w = FiniteWord::new(vec![seed], m.alphabet_size())?;
    while w.len() < n {
        let next = m.apply(&w);
        if next.len() <= w.len() {
            // erasing images elsewhere can stall the iteration
            return Err(Error::NotProlongable(seed));
        }
        w = next;
    }
    Ok(w.factor(0, n))
}

/// Rotation coding with exact integer arithmetic: symbol `k` is
/// `floor((k+1)p/q + rho) - floor(kp/q + rho)` for `rho = rho_num/rho_den`.
pub fn mechanical_word(p: u64, q: u64, rho_num: u64, rho_den: u64, n: usize) -> Result<FiniteWord> {
    if q == 0 || p > q || rho_den == 0 || rho_num >= rho_den {
        return Err(Error::InvalidSlope { p, q });
    }
    let floor_term = |k: u128| -> u128 { (k * p as u128 * rho_den as u128 + rho_num as u128 * q as u128) / (q as u128 * rho_den as u128) };
    let symbols = (0..n as u128)
        .map(|k| (floor_term(k + 1) - floor_term(k)) as Symbol)
        .collect();
    FiniteWord::new(symbols, 2)
}

/// Length-`n` prefix of the characteristic Sturmian word built by the
/// standard construction `s_k = s_{k-1}^{a_k} s_{k-2}` with `s_{-1} = 1`,
/// `s_0 = 0`.
pub fn standard_word_from_directive(coefficients: &[u32], n: usize) -> Result<FiniteWord> {
    if coefficients.is_empty() || coefficients.contains(&0) {
        return Err(Error::InvalidSpec("directive coefficients must be positive".into()));
    }
    let mut prev: Vec<Symbol> = vec![1];
    let mut cur: Vec<Symbol> = vec![0];
    let mut idx = 0;
    while cur.len() < n {
        if idx >= coefficients.len() {
            return Err(Error::DirectiveTooShort(n));
        }
        let mut next = Vec::with_capacity(cur.len() * coefficients[idx] as usize + prev.len());
        for _ in 0..coefficients[idx] {
            next.extend_from_slice(&cur);
        }
        next.extend_from_slice(&prev);
        prev = cur;
        cur = next;
        idx += 1;
    }
    cur.truncate(n);
    FiniteWord::new(cur, 2)
}

/// Concatenation of `blocks` chosen by successive symbols of `selector`,
/// truncated to length `n`.
pub fn block_choice_word(blocks: &[FiniteWord], selector: &WordSpec, n: usize) -> Result<FiniteWord> {
    if blocks.is_empty() || blocks.iter().any(|b| b.is_empty()) {
        return Err(Error::InvalidSpec("blocks must be nonempty".into()));
    }
    if selector.alphabet_size() as usize != blocks.len() {
        return Err(Error::InvalidSpec(format!(
            "selector alphabet size {} does not match block count {}",
            selector.alphabet_size(),
            blocks.len()
        )));
    }
    let alphabet = blocks.iter().map(|b| b.alphabet_size()).max().unwrap();
    // each selector symbol contributes at least one output symbol
    let selector_prefix = generate_prefix(selector, n)?;
    let mut symbols = Vec::with_capacity(n);
    for &s in selector_prefix.symbols() {
        if symbols.len() >= n {
            break;
        }
        symbols.extend_from_slice(blocks[s as usize].symbols());
    }
    symbols.truncate(n);
    FiniteWord::new(symbols, alphabet)
}
