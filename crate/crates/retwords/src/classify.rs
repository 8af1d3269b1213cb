//! Theorem-level verdicts: Sturmian tests via complexity and via the
//! return-based characterizations, and periodicity detection via return
//! counts.
//!
//! Every verdict is explicitly finite-evidence: `Consistent*` means no
//! refutation was found within the tested ranges, never a proof about the
//! infinite word. Refutations always carry a concrete witness.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::factors::{
    distinct_classes, distinct_factors, factor_complexity, reliable_bound, AbelianClassKey,
};
use crate::returns::{
    returns_stabilized, ReturnMode, ReturnReport, Side, StabilizationPolicy, Subject,
};
use crate::structure::singular_classes;
use crate::words::{generate_prefix, FiniteWord, WordSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conclusion {
    /// No refutation of Sturmianness found within the tested range.
    ConsistentSturmian,
    /// A concrete witness contradicts Sturmianness.
    RefutedSturmian,
    /// A period was exhibited and verified on the available prefix.
    ConsistentPeriodic,
    /// Evidence was insufficient (unstabilized reports or bounds exceeded).
    Inconclusive,
}

/// Concrete evidence attached to a verdict.
#[derive(Clone, Debug)]
pub enum Witness {
    /// Factor complexity at `length` was `observed`, not `expected`.
    Complexity { length: usize, observed: usize, expected: usize },
    /// A return report whose cardinality drove the conclusion.
    Report(ReturnReport),
    /// A verified period of the prefix.
    Period { period: usize },
    /// A class whose abelian-return count disagrees with its singularity.
    SingularMismatch { class: AbelianClassKey, return_count: usize, singular: bool },
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub conclusion: Conclusion,
    pub witnesses: Vec<Witness>,
    /// Longest prefix consulted while forming the verdict.
    pub prefix_length: usize,
    /// Largest subject length tested.
    pub max_len: usize,
}

impl Verdict {
    fn new(conclusion: Conclusion, prefix_length: usize, max_len: usize) -> Self {
        Self { conclusion, witnesses: Vec::new(), prefix_length, max_len }
    }

    fn with(mut self, w: Witness) -> Self {
        self.witnesses.push(w);
        self
    }
}

/// Tests `p(n) = n + 1` for all `1 <= n <= n_max` on a prefix of length
/// `prefix_len`.
pub fn sturmian_by_complexity(spec: &WordSpec, n_max: usize, prefix_len: usize) -> Result<Verdict> {
    if n_max > reliable_bound(prefix_len) {
        return Err(Error::InvalidSpec(format!(
            "n_max {n_max} exceeds the reliable bound for a prefix of length {prefix_len}"
        )));
    }
    let w = generate_prefix(spec, prefix_len)?;
    for n in 1..=n_max {
        let c = factor_complexity(&w, n)?;
        if c.value != n + 1 {
            return Ok(Verdict::new(Conclusion::RefutedSturmian, prefix_len, n_max).with(
                Witness::Complexity { length: n, observed: c.value, expected: n + 1 },
            ));
        }
    }
    Ok(Verdict::new(Conclusion::ConsistentSturmian, prefix_len, n_max))
}

/// Enumerates the subjects of one length realized in a prefix, in
/// deterministic order (factors lexicographically, classes by Parikh order).
fn subjects_of_length(w: &FiniteWord, mode: ReturnMode, n: usize) -> Result<Vec<Subject>> {
    Ok(match mode {
        ReturnMode::Classic => {
            distinct_factors(w, n)?.into_iter().map(Subject::Factor).collect()
        }
        _ => distinct_classes(w, n)?.into_iter().map(Subject::Class).collect(),
    })
}

fn enumeration_prefix(spec: &WordSpec, max_len: usize, policy: &StabilizationPolicy) -> Result<FiniteWord> {
    generate_prefix(spec, policy.initial_prefix.max(4 * max_len))
}

/// Tests the return-count characterization of Sturmian words: every subject
/// of length up to `max_factor_len` must have exactly 2 returns (Classic) or
/// 2-3 returns (SemiAbelian/Abelian). The first stabilized violation, in
/// length-then-enumeration order, refutes.
pub fn sturmian_by_returns(
    spec: &WordSpec,
    mode: ReturnMode,
    max_factor_len: usize,
    policy: &StabilizationPolicy,
) -> Result<Verdict> {
    let allowed: &[usize] = match mode {
        ReturnMode::Classic => &[2],
        ReturnMode::SemiAbelian | ReturnMode::Abelian => &[2, 3],
    };
    let w = enumeration_prefix(spec, max_factor_len, policy)?;
    let mut unstabilized: Option<ReturnReport> = None;
    let mut prefix_length = w.len();
    for n in 1..=max_factor_len.min(w.len()) {
        for subject in subjects_of_length(&w, mode, n)? {
            let report = match returns_stabilized(spec, &subject, mode, Side::Left, policy) {
                Ok(r) => r,
                // a subject seen too rarely for any verdict: inconclusive
                Err(Error::TooFewOccurrences(_)) | Err(Error::SubjectAbsent(_)) => {
                    unstabilized.get_or_insert(ReturnReport {
                        mode,
                        side: Side::Left,
                        subject,
                        returns: crate::returns::ReturnSet::Words(BTreeSet::new()),
                        occurrence_count: 0,
                        stabilized: false,
                        prefix_length_used: policy.max_prefix,
                    });
                    continue;
                }
                Err(e) => return Err(e),
            };
            prefix_length = prefix_length.max(report.prefix_length_used);
            if !report.stabilized {
                unstabilized.get_or_insert(report);
                continue;
            }
            if !allowed.contains(&report.returns.len()) {
                return Ok(Verdict::new(Conclusion::RefutedSturmian, prefix_length, max_factor_len)
                    .with(Witness::Report(report)));
            }
        }
    }
    match unstabilized {
        Some(report) => Ok(Verdict::new(Conclusion::Inconclusive, prefix_length, max_factor_len)
            .with(Witness::Report(report))),
        None => Ok(Verdict::new(Conclusion::ConsistentSturmian, prefix_length, max_factor_len)),
    }
}

fn has_period(w: &FiniteWord, t: usize) -> bool {
    let s = w.symbols();
    t >= 1 && t <= s.len() && (0..s.len() - t).all(|i| s[i] == s[i + t])
}

/// If every abelian class of length up to `max_factor_len` has at most `k`
/// abelian returns (where `k` is the alphabet size), attempts to exhibit a
/// period: two exact occurrences of a factor containing all `k` letters give
/// the candidate period, verified on the prefix. A class exceeding the bound
/// makes the test inconclusive (no periodicity conclusion), with that class
/// as witness.
pub fn periodicity_by_abelian_bound(
    spec: &WordSpec,
    k: usize,
    max_factor_len: usize,
    policy: &StabilizationPolicy,
) -> Result<Verdict> {
    if spec.alphabet_size() as usize != k {
        return Err(Error::InvalidSpec(format!(
            "bound {k} must equal the alphabet size {}",
            spec.alphabet_size()
        )));
    }
    let w = enumeration_prefix(spec, max_factor_len, policy)?;
    let mut prefix_length = w.len();
    for n in 1..=max_factor_len.min(w.len()) {
        for subject in subjects_of_length(&w, ReturnMode::Abelian, n)? {
            let report = returns_stabilized(spec, &subject, ReturnMode::Abelian, Side::Left, policy)?;
            prefix_length = prefix_length.max(report.prefix_length_used);
            if !report.stabilized || report.returns.len() > k {
                return Ok(Verdict::new(Conclusion::Inconclusive, prefix_length, max_factor_len)
                    .with(Witness::Report(report)));
            }
        }
    }
    // every tested class is within the bound: look for the period
    let s = w.symbols();
    let full_window = (1..=s.len()).find(|&len| {
        (0..=s.len() - len).any(|i| {
            let window = &s[i..i + len];
            (0..k).all(|l| window.contains(&(l as u8)))
        })
    });
    if let Some(len) = full_window {
        let i = (0..=s.len() - len)
            .find(|&i| (0..k).all(|l| s[i..i + len].contains(&(l as u8))))
            .unwrap();
        let u = w.factor(i, i + len);
        let occ = crate::factors::occurrences(&w, &u)?.positions;
        if occ.len() >= 2 {
            let period = occ[1] - occ[0];
            if has_period(&w, period) {
                return Ok(Verdict::new(Conclusion::ConsistentPeriodic, prefix_length, max_factor_len)
                    .with(Witness::Period { period }));
            }
        }
    }
    Ok(Verdict::new(Conclusion::Inconclusive, prefix_length, max_factor_len))
}

/// Looks for a stabilized subject with exactly one return (classic or
/// semi-abelian); its length is a candidate period, verified on the prefix.
pub fn one_return_periodicity(
    spec: &WordSpec,
    mode: ReturnMode,
    max_factor_len: usize,
    policy: &StabilizationPolicy,
) -> Result<Verdict> {
    if mode == ReturnMode::Abelian {
        return Err(Error::InvalidSpec(
            "one-return periodicity needs exact return words (classic or semi-abelian)".into(),
        ));
    }
    let w = enumeration_prefix(spec, max_factor_len, policy)?;
    let mut prefix_length = w.len();
    for n in 1..=max_factor_len.min(w.len()) {
        for subject in subjects_of_length(&w, mode, n)? {
            let report = match returns_stabilized(spec, &subject, mode, Side::Left, policy) {
                Ok(r) => r,
                Err(Error::TooFewOccurrences(_)) | Err(Error::SubjectAbsent(_)) => continue,
                Err(e) => return Err(e),
            };
            prefix_length = prefix_length.max(report.prefix_length_used);
            if report.stabilized && report.returns.len() == 1 {
                let ret = report.returns.words().unwrap().iter().next().unwrap().clone();
                let check = generate_prefix(spec, report.prefix_length_used)?;
                if has_period(&check, ret.len()) {
                    return Ok(Verdict::new(
                        Conclusion::ConsistentPeriodic,
                        prefix_length,
                        max_factor_len,
                    )
                    .with(Witness::Period { period: ret.len() })
                    .with(Witness::Report(report)));
                }
            }
        }
    }
    Ok(Verdict::new(Conclusion::Inconclusive, prefix_length, max_factor_len))
}

/// Checks that the classes with exactly two stabilized abelian returns are
/// precisely the singular classes, for every length up to `max_len`. Guarded
/// by the complexity test: non-Sturmian specs are refuted outright.
pub fn singularity_correspondence(
    spec: &WordSpec,
    max_len: usize,
    policy: &StabilizationPolicy,
) -> Result<Verdict> {
    let prefix_len = policy.initial_prefix.max(8 * max_len.max(1));
    let guard = sturmian_by_complexity(spec, max_len.min(reliable_bound(prefix_len)), prefix_len)?;
    if guard.conclusion != Conclusion::ConsistentSturmian {
        return Ok(guard);
    }
    let w = generate_prefix(spec, prefix_len)?;
    let mut prefix_length = w.len();
    let mut unstabilized: Option<ReturnReport> = None;
    for n in 1..=max_len {
        let singular = singular_classes(&w, n)?;
        for class in distinct_classes(&w, n)? {
            let subject = Subject::Class(class.clone());
            let report = returns_stabilized(spec, &subject, ReturnMode::Abelian, Side::Left, policy)?;
            prefix_length = prefix_length.max(report.prefix_length_used);
            if !report.stabilized {
                unstabilized.get_or_insert(report);
                continue;
            }
            let count = report.returns.len();
            let is_singular = singular.contains(&class);
            if (count == 2) != is_singular {
                return Ok(Verdict::new(Conclusion::RefutedSturmian, prefix_length, max_len).with(
                    Witness::SingularMismatch { class, return_count: count, singular: is_singular },
                ));
            }
        }
    }
    match unstabilized {
        Some(report) => Ok(Verdict::new(Conclusion::Inconclusive, prefix_length, max_len)
            .with(Witness::Report(report))),
        None => Ok(Verdict::new(Conclusion::ConsistentSturmian, prefix_length, max_len)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy() -> StabilizationPolicy {
        StabilizationPolicy::default()
    }

    #[test]
    fn fibonacci_consistent_by_complexity() {
        let v = sturmian_by_complexity(&WordSpec::fibonacci(), 64, 1 << 16).unwrap();
        assert_eq!(v.conclusion, Conclusion::ConsistentSturmian);
    }

    #[test]
    fn thue_morse_refuted_by_complexity_at_2() {
        let v = sturmian_by_complexity(&WordSpec::thue_morse(), 4, 1 << 12).unwrap();
        assert_eq!(v.conclusion, Conclusion::RefutedSturmian);
        match &v.witnesses[0] {
            Witness::Complexity { length, observed, expected } => {
                assert_eq!((*length, *observed, *expected), (2, 4, 3));
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn periodic_01_refuted_by_complexity() {
        let v = sturmian_by_complexity(&WordSpec::periodic("01").unwrap(), 2, 64).unwrap();
        assert_eq!(v.conclusion, Conclusion::RefutedSturmian);
        match &v.witnesses[0] {
            Witness::Complexity { length, observed, .. } => {
                assert_eq!((*length, *observed), (2, 2));
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn reliable_bound_guard() {
        let err = sturmian_by_complexity(&WordSpec::fibonacci(), 64, 64);
        assert!(matches!(err, Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn fibonacci_consistent_by_classic_returns() {
        let v =
            sturmian_by_returns(&WordSpec::fibonacci(), ReturnMode::Classic, 8, &policy()).unwrap();
        assert_eq!(v.conclusion, Conclusion::ConsistentSturmian);
    }

    #[test]
    fn fibonacci_consistent_by_abelian_returns() {
        let v =
            sturmian_by_returns(&WordSpec::fibonacci(), ReturnMode::Abelian, 8, &policy()).unwrap();
        assert_eq!(v.conclusion, Conclusion::ConsistentSturmian);
    }

    #[test]
    fn periodic_01_refuted_by_classic_returns() {
        let v = sturmian_by_returns(
            &WordSpec::periodic("01").unwrap(),
            ReturnMode::Classic,
            8,
            &policy(),
        )
        .unwrap();
        assert_eq!(v.conclusion, Conclusion::RefutedSturmian);
        match &v.witnesses[0] {
            Witness::Report(r) => {
                // the letter 0 recurs with the single return 01
                assert_eq!(r.subject.to_string(), "0");
                assert_eq!(r.returns.len(), 1);
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn thue_morse_refuted_by_abelian_returns_deterministically() {
        let v1 = sturmian_by_returns(&WordSpec::thue_morse(), ReturnMode::Abelian, 8, &policy())
            .unwrap();
        let v2 = sturmian_by_returns(&WordSpec::thue_morse(), ReturnMode::Abelian, 8, &policy())
            .unwrap();
        assert_eq!(v1.conclusion, Conclusion::RefutedSturmian);
        let (s1, s2) = match (&v1.witnesses[0], &v2.witnesses[0]) {
            (Witness::Report(a), Witness::Report(b)) => {
                assert!(!(2..=3).contains(&a.returns.len()));
                (a.subject.clone(), b.subject.clone())
            }
            other => panic!("unexpected witnesses {other:?}"),
        };
        assert_eq!(s1, s2);
    }

    #[test]
    fn periodic_01_is_periodic_by_abelian_bound() {
        let v = periodicity_by_abelian_bound(&WordSpec::periodic("01").unwrap(), 2, 4, &policy())
            .unwrap();
        assert_eq!(v.conclusion, Conclusion::ConsistentPeriodic);
        assert!(matches!(v.witnesses[0], Witness::Period { period: 2 }));
    }

    #[test]
    fn fibonacci_exceeds_the_abelian_bound() {
        let v = periodicity_by_abelian_bound(&WordSpec::fibonacci(), 2, 8, &policy()).unwrap();
        assert_eq!(v.conclusion, Conclusion::Inconclusive);
        match &v.witnesses[0] {
            Witness::Report(r) => assert_eq!(r.returns.len(), 3),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn abelian_bound_must_match_alphabet() {
        let err = periodicity_by_abelian_bound(&WordSpec::fibonacci(), 3, 4, &policy());
        assert!(matches!(err, Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn periodic_001_found_periodic_by_one_return() {
        let v = one_return_periodicity(
            &WordSpec::periodic("001").unwrap(),
            ReturnMode::Classic,
            6,
            &policy(),
        )
        .unwrap();
        assert_eq!(v.conclusion, Conclusion::ConsistentPeriodic);
        assert!(matches!(v.witnesses[0], Witness::Period { period: 3 }));
    }

    #[test]
    fn fibonacci_has_no_one_return_subject() {
        let v =
            one_return_periodicity(&WordSpec::fibonacci(), ReturnMode::Classic, 8, &policy())
                .unwrap();
        assert_eq!(v.conclusion, Conclusion::Inconclusive);
        assert!(v.witnesses.is_empty());
    }

    #[test]
    fn one_return_rejects_abelian_mode() {
        let err =
            one_return_periodicity(&WordSpec::fibonacci(), ReturnMode::Abelian, 4, &policy());
        assert!(matches!(err, Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn fibonacci_singularity_correspondence() {
        let v = singularity_correspondence(&WordSpec::fibonacci(), 6, &policy()).unwrap();
        assert_eq!(v.conclusion, Conclusion::ConsistentSturmian);
    }

    #[test]
    fn singularity_guard_refutes_thue_morse() {
        let v = singularity_correspondence(&WordSpec::thue_morse(), 6, &policy()).unwrap();
        assert_eq!(v.conclusion, Conclusion::RefutedSturmian);
        assert!(matches!(v.witnesses[0], Witness::Complexity { .. }));
    }
}
