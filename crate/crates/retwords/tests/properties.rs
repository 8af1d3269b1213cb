//! Randomized and exhaustive cross-checks of the scanning and array code
//! against brute-force oracles.

use proptest::prelude::*;

use retwords::factors::{abelian_occurrences, parikh, AbelianClassKey};
use retwords::lexarray::{build_lex_array, is_balanced_orbit};
use retwords::structure::is_k_balanced;
use retwords::words::{generate_prefix, FiniteWord, WordSpec};

fn binary_word(max_len: usize) -> impl Strategy<Value = FiniteWord> {
    prop::collection::vec(0u8..2, 0..=max_len)
        .prop_map(|symbols| FiniteWord::new(symbols, 2).unwrap())
}

fn nonempty_binary_word(max_len: usize) -> impl Strategy<Value = FiniteWord> {
    prop::collection::vec(0u8..2, 1..=max_len)
        .prop_map(|symbols| FiniteWord::new(symbols, 2).unwrap())
}

fn any_spec() -> impl Strategy<Value = WordSpec> {
    prop_oneof![
        Just(WordSpec::fibonacci()),
        Just(WordSpec::thue_morse()),
        (1u64..=12, 1u64..=12).prop_filter_map("slope in (0,1)", |(a, b)| {
            let (p, q) = (a.min(b), a.max(b));
            (p < q).then_some(WordSpec::Mechanical { p, q, rho_num: 0, rho_den: 1 })
        }),
        prop::collection::vec(1u32..=3, 12..=16)
            .prop_map(|coefficients| WordSpec::Directive { coefficients }),
        nonempty_binary_word(8).prop_map(|pattern| WordSpec::Periodic { pattern }),
    ]
}

proptest! {
    /// The sliding-window abelian scan agrees with a per-window recount.
    #[test]
    fn abelian_scan_matches_recount(w in binary_word(10_000), u in nonempty_binary_word(12)) {
        let key = AbelianClassKey::of(&u);
        let fast = abelian_occurrences(&w, &key).unwrap().positions;
        let n = key.len();
        let brute: Vec<usize> = if n > w.len() {
            Vec::new()
        } else {
            (0..=w.len() - n)
                .filter(|&i| AbelianClassKey::of(&w.factor(i, i + n)) == key)
                .collect()
        };
        prop_assert_eq!(fast, brute);
    }

    /// Shorter prefixes of any spec are prefixes of longer ones.
    #[test]
    fn prefix_monotonicity(spec in any_spec(), m in 0usize..200, n in 0usize..200) {
        let (m, n) = (m.min(n), m.max(n));
        let short = generate_prefix(&spec, m).unwrap();
        let long = generate_prefix(&spec, n).unwrap();
        prop_assert!(short.is_prefix_of(&long));
    }

    /// Parikh vectors are additive under concatenation.
    #[test]
    fn parikh_additivity(u in binary_word(64), v in binary_word(64)) {
        prop_assert_eq!(parikh(&u.concat(&v)), parikh(&u).add(&parikh(&v)));
    }

    /// Array balance criterion vs. direct balance of the doubled cycle,
    /// sampled over primitive coprime words of length 17..=20 (smaller
    /// lengths are covered exhaustively below).
    #[test]
    fn balance_criteria_agree_sampled(
        w in prop::collection::vec(0u8..2, 17..=20)
            .prop_map(|symbols| FiniteWord::new(symbols, 2).unwrap())
    ) {
        // non-coprime or non-primitive words are outside the array's domain
        if let Ok(a) = build_lex_array(&w) {
            let doubled = w.concat(&w);
            let direct = is_k_balanced(&doubled, 1, w.len()).balanced;
            prop_assert_eq!(is_balanced_orbit(&a), direct);
        }
    }
}

/// Exhaustive version of the balance equivalence for every binary word of
/// length up to 16.
#[test]
fn balance_criteria_agree_exhaustive() {
    for len in 1usize..=16 {
        for bits in 0u32..1u32 << len {
            let symbols: Vec<u8> = (0..len).map(|i| ((bits >> (len - 1 - i)) & 1) as u8).collect();
            let w = FiniteWord::new(symbols, 2).unwrap();
            if let Ok(a) = build_lex_array(&w) {
                let doubled = w.concat(&w);
                let direct = is_k_balanced(&doubled, 1, len).balanced;
                assert_eq!(is_balanced_orbit(&a), direct, "word {w}");
            }
        }
    }
}
