//! The lexicographic array of a primitive binary cyclic word, the balance
//! criterion on it, and reading abelian returns off the array.
//!
//! For a binary word of length `q` with `p` ones and `gcd(p, q) = 1`, the
//! array is the `q x q` matrix whose rows are the cyclic shifts sorted
//! lexicographically. It doubles as an independent oracle for the returns
//! engine on the periodic word generated by any of its rows.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::factors::AbelianClassKey;
use crate::words::{FiniteWord, Symbol};

/// A primitive cyclic word together with its distinct shifts.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub representative: FiniteWord,
    pub shifts: Vec<FiniteWord>,
}

impl Orbit {
    pub fn of(w: &FiniteWord) -> Result<Self> {
        if w.is_empty() || w.symbols().iter().any(|&s| s > 1) {
            return Err(Error::InvalidSpec("orbit requires a nonempty binary word".into()));
        }
        let q = w.len();
        let p = w.count_letter(1);
        if p.gcd(&q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        let doubled = w.concat(w);
        let shifts: Vec<FiniteWord> = (0..q).map(|i| doubled.factor(i, i + q)).collect();
        let distinct: BTreeSet<&FiniteWord> = shifts.iter().collect();
        if distinct.len() != q {
            return Err(Error::NotPrimitive);
        }
        Ok(Self { representative: w.clone(), shifts })
    }
}

/// The sorted-shift matrix of an orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexArray {
    p: usize,
    q: usize,
    rows: Vec<FiniteWord>,
}

impl LexArray {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn rows(&self) -> &[FiniteWord] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> Symbol {
        self.rows[i].symbols()[j]
    }
}

impl fmt::Display for LexArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// Builds the lexicographic array of the orbit of `w`.
pub fn build_lex_array(w: &FiniteWord) -> Result<LexArray> {
    let orbit = Orbit::of(w)?;
    let mut rows = orbit.shifts;
    rows.sort();
    Ok(LexArray { p: w.count_letter(1), q: w.len(), rows })
}

/// Builds the array of the unique balanced orbit in `W_{p,q}` column by
/// column, without sorting: column `j` is the shift by `j*p` of
/// `u = 0^(q-p) 1^p`.
pub fn balanced_array_by_columns(p: usize, q: usize) -> Result<LexArray> {
    if p == 0 || p >= q {
        return Err(Error::InvalidSlope { p: p as u64, q: q as u64 });
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    let u: Vec<Symbol> = (0..q).map(|i| if i < q - p { 0 } else { 1 }).collect();
    let rows: Vec<FiniteWord> = (0..q)
        .map(|i| {
            let symbols = (0..q).map(|j| u[(i + j * p) % q]).collect();
            FiniteWord::new(symbols, 2).unwrap()
        })
        .collect();
    Ok(LexArray { p, q, rows })
}

/// The balance criterion on the array: true iff the ones counts of the
/// length-`(j+1)` row prefixes are nondecreasing down every column.
pub fn is_balanced_orbit(a: &LexArray) -> bool {
    let q = a.q;
    // prefix ones counts per row
    let prefix_ones: Vec<Vec<usize>> = a
        .rows
        .iter()
        .map(|row| {
            row.symbols()
                .iter()
                .scan(0usize, |acc, &s| {
                    *acc += s as usize;
                    Some(*acc)
                })
                .collect()
        })
        .collect();
    (0..q - 1).all(|i| (0..q).all(|j| prefix_ones[i][j] <= prefix_ones[i + 1][j]))
}

/// Semi-abelian returns of `key` read off the array: for each row whose
/// length-`key.len()` prefix lies in the class, the row prefix up to the
/// first cyclic re-occurrence of the class is a semi-abelian return.
pub fn semi_abelian_returns_via_array(
    a: &LexArray,
    key: &AbelianClassKey,
) -> Result<BTreeSet<FiniteWord>> {
    let len = key.len();
    if len == 0 || len >= a.q {
        return Err(Error::LengthExceedsPrefix { n: len, len: a.q });
    }
    let mut returns = BTreeSet::new();
    let mut realized = false;
    for row in &a.rows {
        if AbelianClassKey::of(&row.factor(0, len)) != *key {
            continue;
        }
        realized = true;
        let doubled = row.concat(row);
        // k = q always matches again, so this terminates
        let k = (1..=a.q)
            .find(|&k| AbelianClassKey::of(&doubled.factor(k, k + len)) == *key)
            .expect("cyclic re-occurrence");
        returns.insert(row.factor(0, k));
    }
    if !realized {
        return Err(Error::ClassAbsent);
    }
    Ok(returns)
}

/// Abelian returns of `key` read off the array: the abelian classes of the
/// semi-abelian returns above.
pub fn abelian_returns_via_array(
    a: &LexArray,
    key: &AbelianClassKey,
) -> Result<BTreeSet<AbelianClassKey>> {
    Ok(semi_abelian_returns_via_array(a, key)?
        .iter()
        .map(AbelianClassKey::of)
        .collect())
}
