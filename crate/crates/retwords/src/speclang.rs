//! The one-line word-spec mini-language used by the CLI.
//!
//! Grammar:
//!
//! ```text
//! spec      := "fib" | "tm"
//!            | "periodic:" digits
//!            | "mech:" p "/" q [ ":" r "/" s ]
//!            | "cf:[" a1 "," a2 "," ... "]"
//!            | "blocks:" digits ("," digits)* ":" spec
//!            | "morphic:" digits ("," digits)* ":" seed
//! ```
//!
//! [`print_spec`] is a total inverse: `parse_spec(&print_spec(s)) == s` for
//! every spec the printer emits.

use crate::error::{Error, Result};
use crate::words::{FiniteWord, Morphism, Symbol, WordSpec};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_fraction(s: &str) -> Result<(u64, u64)> {
    let (num, den) = s
        .split_once('/')
        .ok_or_else(|| parse_err(format!("expected <num>/<den>, got {s:?}")))?;
    let num = num.trim().parse().map_err(|_| parse_err(format!("bad numerator {num:?}")))?;
    let den = den.trim().parse().map_err(|_| parse_err(format!("bad denominator {den:?}")))?;
    Ok((num, den))
}

/// Alphabet inferred from digit strings: one more than the largest digit,
/// but at least binary.
fn inferred_alphabet<'a>(words: impl Iterator<Item = &'a str>) -> u8 {
    words
        .flat_map(|w| w.chars())
        .filter_map(|c| c.to_digit(16))
        .max()
        .map(|m| m as u8 + 1)
        .unwrap_or(0)
        .max(2)
}

/// Parses a spec string; see the module docs for the grammar.
pub fn parse_spec(input: &str) -> Result<WordSpec> {
    let s = input.trim();
    match s {
        "fib" => return Ok(WordSpec::fibonacci()),
        "tm" => return Ok(WordSpec::thue_morse()),
        _ => {}
    }
    let (head, rest) =
        s.split_once(':').ok_or_else(|| parse_err(format!("unknown spec {s:?}")))?;
    let spec = match head {
        "periodic" => WordSpec::periodic(rest)?,
        "mech" => {
            let (slope, rho) = match rest.split_once(':') {
                Some((slope, rho)) => (slope, Some(rho)),
                None => (rest, None),
            };
            let (p, q) = parse_fraction(slope)?;
            let (rho_num, rho_den) = match rho {
                Some(r) => parse_fraction(r)?,
                None => (0, 1),
            };
            WordSpec::Mechanical { p, q, rho_num, rho_den }
        }
        "cf" => {
            let inner = rest
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| parse_err("cf expects a bracketed list, cf:[a1,a2,...]"))?;
            let coefficients = inner
                .split(',')
                .map(|a| a.trim().parse().map_err(|_| parse_err(format!("bad coefficient {a:?}"))))
                .collect::<Result<Vec<u32>>>()?;
            WordSpec::Directive { coefficients }
        }
        "blocks" => {
            let (block_part, selector_part) = rest
                .split_once(':')
                .ok_or_else(|| parse_err("blocks expects blocks:<b1>,<b2>,...:<selector>"))?;
            let alphabet = inferred_alphabet(block_part.split(','));
            let blocks = block_part
                .split(',')
                .map(|b| FiniteWord::parse(b, alphabet))
                .collect::<Result<Vec<_>>>()?;
            WordSpec::BlockChoice { blocks, selector: Box::new(parse_spec(selector_part)?) }
        }
        "morphic" => {
            let (image_part, seed_part) = rest
                .rsplit_once(':')
                .ok_or_else(|| parse_err("morphic expects morphic:<img0>,<img1>,...:<seed>"))?;
            let images: Vec<&str> = image_part.split(',').collect();
            let alphabet = images.len() as u8;
            let images = images
                .iter()
                .map(|img| FiniteWord::parse(img, alphabet))
                .collect::<Result<Vec<_>>>()?;
            let seed: Symbol = seed_part
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad seed letter {seed_part:?}")))?;
            WordSpec::Morphic { morphism: Morphism::new(images)?, seed }
        }
        other => return Err(parse_err(format!("unknown spec kind {other:?}"))),
    };
    spec.validate()?;
    Ok(spec)
}

/// Prints a spec in the mini-language; `parse_spec` inverts this exactly.
pub fn print_spec(spec: &WordSpec) -> String {
    if *spec == WordSpec::fibonacci() {
        return "fib".into();
    }
    if *spec == WordSpec::thue_morse() {
        return "tm".into();
    }
    match spec {
        WordSpec::Morphic { morphism, seed } => {
            let images: Vec<String> = (0..morphism.alphabet_size())
                .map(|l| morphism.image(l).to_string())
                .collect();
            format!("morphic:{}:{}", images.join(","), seed)
        }
        WordSpec::Mechanical { p, q, rho_num: 0, rho_den: 1 } => format!("mech:{p}/{q}"),
        WordSpec::Mechanical { p, q, rho_num, rho_den } => {
            format!("mech:{p}/{q}:{rho_num}/{rho_den}")
        }
        WordSpec::Directive { coefficients } => {
            let parts: Vec<String> = coefficients.iter().map(|a| a.to_string()).collect();
            format!("cf:[{}]", parts.join(","))
        }
        WordSpec::Periodic { pattern } => format!("periodic:{pattern}"),
        WordSpec::BlockChoice { blocks, selector } => {
            let parts: Vec<String> = blocks.iter().map(|b| b.to_string()).collect();
            format!("blocks:{}:{}", parts.join(","), print_spec(selector))
        }
    }
}
