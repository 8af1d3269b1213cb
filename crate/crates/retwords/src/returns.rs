//! Classic, semi-abelian and abelian return words, with stabilization over
//! growing prefixes.
//!
//! A classic return of a factor `u` is the word from one exact occurrence of
//! `u` to just before the next. A semi-abelian return of an abelian class is
//! the exact gap word between consecutive occurrences of the class; an
//! abelian return is the abelian class of such a gap word. The right-side
//! variants take the gap starting after the subject instead of at it.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::factors::{abelian_occurrences, occurrences, AbelianClassKey};
use crate::words::{generate_prefix, FiniteWord, WordSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReturnMode {
    Classic,
    SemiAbelian,
    Abelian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// What returns are computed for: an exact factor or an abelian class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subject {
    Factor(FiniteWord),
    Class(AbelianClassKey),
}

impl Subject {
    pub fn len(&self) -> usize {
        match self {
            Subject::Factor(u) => u.len(),
            Subject::Class(k) => k.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Factor(u) => write!(f, "{u}"),
            Subject::Class(k) => write!(f, "[{k}]"),
        }
    }
}

/// Return set: exact words for Classic/SemiAbelian, class keys for Abelian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReturnSet {
    Words(BTreeSet<FiniteWord>),
    Classes(BTreeSet<AbelianClassKey>),
}

impl ReturnSet {
    pub fn len(&self) -> usize {
        match self {
            ReturnSet::Words(s) => s.len(),
            ReturnSet::Classes(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn words(&self) -> Option<&BTreeSet<FiniteWord>> {
        match self {
            ReturnSet::Words(s) => Some(s),
            ReturnSet::Classes(_) => None,
        }
    }

    pub fn classes(&self) -> Option<&BTreeSet<AbelianClassKey>> {
        match self {
            ReturnSet::Classes(s) => Some(s),
            ReturnSet::Words(_) => None,
        }
    }

    /// The abelian classes of the members (identity on class sets).
    pub fn to_classes(&self) -> BTreeSet<AbelianClassKey> {
        match self {
            ReturnSet::Words(s) => s.iter().map(AbelianClassKey::of).collect(),
            ReturnSet::Classes(s) => s.clone(),
        }
    }
}

/// The returns of a subject on one prefix, with occurrence statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnReport {
    pub mode: ReturnMode,
    pub side: Side,
    pub subject: Subject,
    pub returns: ReturnSet,
    pub occurrence_count: usize,
    pub stabilized: bool,
    pub prefix_length_used: usize,
}

/// Controls the doubling loop of [`returns_stabilized`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilizationPolicy {
    pub initial_prefix: usize,
    pub growth_factor: usize,
    pub max_prefix: usize,
    pub min_tail_occurrences: usize,
}

impl Default for StabilizationPolicy {
    fn default() -> Self {
        Self {
            initial_prefix: 4096,
            growth_factor: 2,
            max_prefix: 1 << 22,
            min_tail_occurrences: 3,
        }
    }
}

impl StabilizationPolicy {
    pub fn validate(&self) -> Result<()> {
        if self.initial_prefix == 0
            || self.growth_factor < 2
            || self.initial_prefix > self.max_prefix
        {
            return Err(Error::InvalidSpec("invalid stabilization policy".into()));
        }
        Ok(())
    }
}

struct Scan {
    words: BTreeSet<FiniteWord>,
    occurrence_count: usize,
    /// occurrences strictly after the start of the last newly discovered gap
    tail_after_last_new: usize,
}

fn scan_gaps(w: &FiniteWord, positions: &[usize], subject_len: usize, side: Side) -> Result<Scan> {
    if positions.is_empty() {
        return Err(Error::TooFewOccurrences(0));
    }
    if positions.len() < 2 {
        return Err(Error::TooFewOccurrences(1));
    }
    let mut words = BTreeSet::new();
    let mut last_new_idx = 0;
    for (i, pair) in positions.windows(2).enumerate() {
        let (start, end) = match side {
            Side::Left => (pair[0], pair[1]),
            Side::Right => (pair[0] + subject_len, pair[1] + subject_len),
        };
        if words.insert(w.factor(start, end)) {
            last_new_idx = i;
        }
    }
    Ok(Scan {
        words,
        occurrence_count: positions.len(),
        tail_after_last_new: positions.len() - (last_new_idx + 1),
    })
}

/// Classic return words of the exact factor `u` in the prefix `w`.
pub fn classic_returns(w: &FiniteWord, u: &FiniteWord, side: Side) -> Result<ReturnReport> {
    let occ = occurrences(w, u)?;
    let scan = scan_gaps(w, &occ.positions, u.len(), side)?;
    Ok(ReturnReport {
        mode: ReturnMode::Classic,
        side,
        subject: Subject::Factor(u.clone()),
        returns: ReturnSet::Words(scan.words),
        occurrence_count: scan.occurrence_count,
        stabilized: false,
        prefix_length_used: w.len(),
    })
}

/// Semi-abelian returns: exact gap words between consecutive occurrences of
/// the abelian class `key` in `w`.
pub fn semi_abelian_returns(w: &FiniteWord, key: &AbelianClassKey, side: Side) -> Result<ReturnReport> {
    let occ = abelian_occurrences(w, key)?;
    let scan = scan_gaps(w, &occ.positions, key.len(), side)?;
    Ok(ReturnReport {
        mode: ReturnMode::SemiAbelian,
        side,
        subject: Subject::Class(key.clone()),
        returns: ReturnSet::Words(scan.words),
        occurrence_count: scan.occurrence_count,
        stabilized: false,
        prefix_length_used: w.len(),
    })
}

/// Abelian returns: the abelian classes of the semi-abelian gap words.
pub fn abelian_returns(w: &FiniteWord, key: &AbelianClassKey, side: Side) -> Result<ReturnReport> {
    let semi = semi_abelian_returns(w, key, side)?;
    Ok(ReturnReport {
        mode: ReturnMode::Abelian,
        returns: ReturnSet::Classes(semi.returns.to_classes()),
        ..semi
    })
}

fn compute_on_prefix(
    w: &FiniteWord,
    subject: &Subject,
    mode: ReturnMode,
    side: Side,
) -> Result<(ReturnReport, usize)> {
    let (positions, subject_len, norm_subject) = match (mode, subject) {
        (ReturnMode::Classic, Subject::Factor(u)) => {
            (occurrences(w, u)?.positions, u.len(), Subject::Factor(u.clone()))
        }
        (ReturnMode::Classic, Subject::Class(_)) => {
            return Err(Error::InvalidSpec("classic returns need an exact factor subject".into()))
        }
        (_, subject) => {
            // abelian modes depend only on the abelian class of the subject
            let key = match subject {
                Subject::Factor(u) => AbelianClassKey::of(u),
                Subject::Class(k) => k.clone(),
            };
            (abelian_occurrences(w, &key)?.positions, key.len(), Subject::Class(key))
        }
    };
    if positions.is_empty() {
        return Err(Error::TooFewOccurrences(0));
    }
    let scan = scan_gaps(w, &positions, subject_len, side)?;
    let returns = match mode {
        ReturnMode::Abelian => ReturnSet::Classes(scan.words.iter().map(AbelianClassKey::of).collect()),
        _ => ReturnSet::Words(scan.words),
    };
    Ok((
        ReturnReport {
            mode,
            side,
            subject: norm_subject,
            returns,
            occurrence_count: scan.occurrence_count,
            stabilized: false,
            prefix_length_used: w.len(),
        },
        scan.tail_after_last_new,
    ))
}

/// Recomputes the return set on prefixes of growing length until two
/// consecutive computations agree and enough occurrences of the subject
/// follow the last newly discovered return.
pub fn returns_stabilized(
    spec: &WordSpec,
    subject: &Subject,
    mode: ReturnMode,
    side: Side,
    policy: &StabilizationPolicy,
) -> Result<ReturnReport> {
    policy.validate()?;
    spec.validate()?;
    let mut n = policy.initial_prefix;
    let mut previous: Option<ReturnSet> = None;
    let mut last: Option<ReturnReport> = None;
    let mut seen_at_all = false;
    loop {
        let w = generate_prefix(spec, n)?;
        match compute_on_prefix(&w, subject, mode, side) {
            Ok((report, tail)) => {
                seen_at_all = true;
                let settled = previous.as_ref() == Some(&report.returns)
                    && tail >= policy.min_tail_occurrences;
                previous = Some(report.returns.clone());
                last = Some(report);
                if settled {
                    let mut report = last.unwrap();
                    report.stabilized = true;
                    return Ok(report);
                }
            }
            Err(Error::TooFewOccurrences(k)) => {
                if k > 0 {
                    seen_at_all = true;
                }
                previous = None;
            }
            Err(e) => return Err(e),
        }
        let next = n.saturating_mul(policy.growth_factor);
        if next > policy.max_prefix {
            break;
        }
        n = next;
    }
    match last {
        Some(report) => Ok(report),
        None if seen_at_all => Err(Error::TooFewOccurrences(1)),
        None => Err(Error::SubjectAbsent(policy.max_prefix)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Morphism;

    fn gen(spec: &WordSpec, n: usize) -> FiniteWord {
        generate_prefix(spec, n).unwrap()
    }

    fn key(s: &str) -> AbelianClassKey {
        AbelianClassKey::of(&FiniteWord::binary(s).unwrap())
    }

    fn word_set(report: &ReturnReport) -> Vec<String> {
        report.returns.words().unwrap().iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn classic_returns_of_fibonacci_letter() {
        let w = gen(&WordSpec::fibonacci(), 4096);
        let report = classic_returns(&w, &FiniteWord::binary("0").unwrap(), Side::Left).unwrap();
        assert_eq!(word_set(&report), vec!["0", "01"]);
    }

    #[test]
    fn classic_returns_of_fibonacci_01() {
        let w = gen(&WordSpec::fibonacci(), 4096);
        let report = classic_returns(&w, &FiniteWord::binary("01").unwrap(), Side::Left).unwrap();
        assert_eq!(report.returns.len(), 2);
    }

    #[test]
    fn classic_returns_periodic() {
        let w = gen(&WordSpec::periodic("01").unwrap(), 64);
        let report = classic_returns(&w, &FiniteWord::binary("01").unwrap(), Side::Left).unwrap();
        assert_eq!(word_set(&report), vec!["01"]);
    }

    #[test]
    fn too_few_occurrences() {
        let w = FiniteWord::binary("0001000").unwrap();
        let err = classic_returns(&w, &FiniteWord::binary("1").unwrap(), Side::Left);
        assert_eq!(err, Err(Error::TooFewOccurrences(1)));
    }

    #[test]
    fn thue_morse_semi_abelian_returns_of_01() {
        let w = gen(&WordSpec::thue_morse(), 4096);
        let report = semi_abelian_returns(&w, &key("01"), Side::Left).unwrap();
        assert_eq!(word_set(&report), vec!["0", "01", "1", "10"]);
    }

    #[test]
    fn thue_morse_abelian_returns_of_01() {
        let w = gen(&WordSpec::thue_morse(), 4096);
        let report = abelian_returns(&w, &key("01"), Side::Left).unwrap();
        let classes: Vec<String> =
            report.returns.classes().unwrap().iter().map(|c| c.to_string()).collect();
        assert_eq!(classes, vec!["0", "1", "01"]);
    }

    #[test]
    fn fibonacci_singular_class_00_has_two_semi_abelian_returns() {
        let w = gen(&WordSpec::fibonacci(), 4096);
        let report = semi_abelian_returns(&w, &key("00"), Side::Left).unwrap();
        assert_eq!(report.returns.len(), 2);
    }

    #[test]
    fn single_letter_periodic_word() {
        let pattern = FiniteWord::new(vec![0], 1).unwrap();
        let w = WordSpec::Periodic { pattern }.clone();
        let p = gen(&w, 32);
        let k = AbelianClassKey::of(&FiniteWord::new(vec![0], 1).unwrap());
        let report = semi_abelian_returns(&p, &k, Side::Left).unwrap();
        assert_eq!(word_set(&report), vec!["0"]);
    }

    #[test]
    fn abelian_count_leq_semi_abelian_count() {
        let w = gen(&WordSpec::thue_morse(), 2048);
        for len in 1..=8 {
            for k in crate::factors::distinct_classes(&w, len).unwrap() {
                let semi = semi_abelian_returns(&w, &k, Side::Left).unwrap();
                let ab = abelian_returns(&w, &k, Side::Left).unwrap();
                assert!(ab.returns.len() <= semi.returns.len());
                assert_eq!(ab.returns.to_classes(), semi.returns.to_classes());
            }
        }
    }

    #[test]
    fn gap_reconstruction() {
        let w = gen(&WordSpec::thue_morse(), 512);
        let occ = abelian_occurrences(&w, &key("011")).unwrap();
        let positions = &occ.positions;
        let mut rebuilt = FiniteWord::empty(2);
        for pair in positions.windows(2) {
            rebuilt = rebuilt.concat(&w.factor(pair[0], pair[1]));
        }
        assert_eq!(rebuilt, w.factor(positions[0], *positions.last().unwrap()));
    }

    #[test]
    fn stabilized_fibonacci_abelian_01() {
        let report = returns_stabilized(
            &WordSpec::fibonacci(),
            &Subject::Class(key("01")),
            ReturnMode::Abelian,
            Side::Left,
            &StabilizationPolicy::default(),
        )
        .unwrap();
        assert!(report.stabilized);
        let classes: Vec<String> =
            report.returns.classes().unwrap().iter().map(|c| c.to_string()).collect();
        assert_eq!(classes, vec!["0", "1", "01"]);
    }

    #[test]
    fn stabilized_periodic_single_letter() {
        let spec = WordSpec::Periodic { pattern: FiniteWord::new(vec![0], 1).unwrap() };
        let subject = Subject::Class(AbelianClassKey::of(&FiniteWord::new(vec![0], 1).unwrap()));
        let policy = StabilizationPolicy { initial_prefix: 8, ..Default::default() };
        let report =
            returns_stabilized(&spec, &subject, ReturnMode::SemiAbelian, Side::Left, &policy).unwrap();
        assert!(report.stabilized);
        assert_eq!(report.returns.len(), 1);
    }

    #[test]
    fn stabilized_thue_morse_matches_single_prefix_sets() {
        let report = returns_stabilized(
            &WordSpec::thue_morse(),
            &Subject::Class(key("01")),
            ReturnMode::SemiAbelian,
            Side::Left,
            &StabilizationPolicy::default(),
        )
        .unwrap();
        assert!(report.stabilized);
        assert_eq!(word_set(&report), vec!["0", "01", "1", "10"]);
    }

    #[test]
    fn subject_absent_is_reported() {
        let spec = WordSpec::periodic("0").unwrap();
        let subject = Subject::Factor(FiniteWord::binary("1").unwrap());
        let policy = StabilizationPolicy { initial_prefix: 8, max_prefix: 64, ..Default::default() };
        let err = returns_stabilized(&spec, &subject, ReturnMode::Classic, Side::Left, &policy);
        assert_eq!(err, Err(Error::SubjectAbsent(64)));
    }

    #[test]
    fn side_invariance_of_abelian_classes_on_thue_morse() {
        for len in 1..=6 {
            let w = gen(&WordSpec::thue_morse(), 4096);
            for k in crate::factors::distinct_classes(&w, len).unwrap() {
                let left = returns_stabilized(
                    &WordSpec::thue_morse(),
                    &Subject::Class(k.clone()),
                    ReturnMode::Abelian,
                    Side::Left,
                    &StabilizationPolicy::default(),
                )
                .unwrap();
                let right = returns_stabilized(
                    &WordSpec::thue_morse(),
                    &Subject::Class(k),
                    ReturnMode::Abelian,
                    Side::Right,
                    &StabilizationPolicy::default(),
                )
                .unwrap();
                assert_eq!(left.returns, right.returns);
            }
        }
    }

    #[test]
    fn block_choice_counterexample_class_11() {
        let blocks =
            vec![FiniteWord::binary("110010").unwrap(), FiniteWord::binary("110100").unwrap()];
        let spec = WordSpec::BlockChoice { blocks, selector: Box::new(WordSpec::fibonacci()) };
        let ab = returns_stabilized(
            &spec,
            &Subject::Class(key("11")),
            ReturnMode::Abelian,
            Side::Left,
            &StabilizationPolicy::default(),
        )
        .unwrap();
        assert_eq!(ab.returns.len(), 1);
        let semi = returns_stabilized(
            &spec,
            &Subject::Class(key("11")),
            ReturnMode::SemiAbelian,
            Side::Left,
            &StabilizationPolicy::default(),
        )
        .unwrap();
        assert_eq!(word_set(&semi), vec!["110010", "110100"]);
    }

    #[test]
    fn classic_rejects_class_subject() {
        let err = returns_stabilized(
            &WordSpec::fibonacci(),
            &Subject::Class(key("01")),
            ReturnMode::Classic,
            Side::Left,
            &StabilizationPolicy::default(),
        );
        assert!(matches!(err, Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn factor_subject_converted_to_class_in_abelian_modes() {
        let report = returns_stabilized(
            &WordSpec::thue_morse(),
            &Subject::Factor(FiniteWord::binary("10").unwrap()),
            ReturnMode::Abelian,
            Side::Left,
            &StabilizationPolicy::default(),
        )
        .unwrap();
        assert_eq!(report.subject, Subject::Class(key("01")));
        assert_eq!(report.returns.len(), 3);
    }

    #[test]
    fn morphism_prolongability_is_checked() {
        let m = Morphism::binary("10", "01").unwrap();
        let spec = WordSpec::Morphic { morphism: m, seed: 0 };
        assert_eq!(spec.validate(), Err(Error::NotProlongable(0)));
    }
}
