//! Command-line front end: prefix generation, return words, lexicographic
//! arrays and theorem verification, with optional JSON output.
//!
//! Exit codes: 0 success/consistent, 1 refuted, 2 parse or precondition
//! error, 3 subject absent, 4 unstabilized under `--strict`, 5 inconclusive.

use std::process::exit;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use retwords::classify::{
    one_return_periodicity, periodicity_by_abelian_bound, singularity_correspondence,
    sturmian_by_returns, Conclusion, Verdict, Witness,
};
use retwords::error::Error;
use retwords::factors::AbelianClassKey;
use retwords::lexarray::{
    abelian_returns_via_array, build_lex_array, semi_abelian_returns_via_array, LexArray,
};
use retwords::returns::{
    returns_stabilized, ReturnMode, ReturnSet, Side, StabilizationPolicy, Subject,
};
use retwords::speclang::{parse_spec, print_spec};
use retwords::words::{generate_prefix, FiniteWord, WordSpec};

const FORMAT_VERSION: u32 = 1;

const EXIT_REFUTED: i32 = 1;
const EXIT_PARSE: i32 = 2;
const EXIT_ABSENT: i32 = 3;
const EXIT_UNSTABILIZED: i32 = 4;
const EXIT_INCONCLUSIVE: i32 = 5;

#[derive(Parser)]
#[command(name = "retwords", version, about = "Return words of infinite words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of the word described by a spec string.
    Generate {
        /// Word spec: fib | tm | periodic:<digits> | mech:<p>/<q>[:<r>/<s>]
        /// | cf:[a1,a2,...] | blocks:<b1>,<b2>:<spec> | morphic:<imgs>:<seed>
        spec: String,
        #[arg(long)]
        length: usize,
    },
    /// Compute the returns of a factor or abelian class, with stabilization.
    Returns {
        spec: String,
        /// Exact factor subject (digits).
        #[arg(long, conflicts_with = "class")]
        factor: Option<String>,
        /// Abelian class subject, given by any member word (digits).
        #[arg(long)]
        class: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Abelian)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        #[command(flatten)]
        policy: PolicyArgs,
        /// Fail (exit 4) if the return set does not stabilize.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the lexicographic array of a cyclic word, optionally with the
    /// abelian returns of a class read off the array.
    Lexarray {
        /// The cyclic word itself (binary digits).
        #[arg(long, conflicts_with = "slope")]
        word: Option<String>,
        /// Build the balanced orbit of slope p/q instead.
        #[arg(long)]
        slope: Option<String>,
        /// Also read the returns of this abelian class off the array.
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Check a return-word characterization against a spec.
    Verify {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        spec: String,
        /// Largest subject length tested.
        #[arg(long, default_value_t = 16)]
        max_len: usize,
        #[command(flatten)]
        policy: PolicyArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Classic,
    Semi,
    Abelian,
}

impl ModeArg {
    fn to_mode(self) -> ReturnMode {
        match self {
            ModeArg::Classic => ReturnMode::Classic,
            ModeArg::Semi => ReturnMode::SemiAbelian,
            ModeArg::Abelian => ReturnMode::Abelian,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl SideArg {
    fn to_side(self) -> Side {
        match self {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    /// Every factor has exactly two classic returns.
    Vuillon,
    /// Every abelian class has two or three abelian returns.
    Main,
    /// Every abelian class has two or three semi-abelian returns.
    Semi,
    /// Exactly two abelian returns iff the class is singular.
    Singular,
    /// At most k abelian returns per class forces periodicity.
    PeriodicBound,
}

#[derive(Args)]
struct PolicyArgs {
    #[arg(long, default_value_t = StabilizationPolicy::default().initial_prefix)]
    initial_prefix: usize,
    #[arg(long, default_value_t = StabilizationPolicy::default().max_prefix)]
    max_prefix: usize,
    #[arg(long, default_value_t = StabilizationPolicy::default().min_tail_occurrences)]
    min_tail: usize,
}

impl PolicyArgs {
    fn to_policy(&self) -> StabilizationPolicy {
        StabilizationPolicy {
            // a low --max-prefix implicitly lowers the starting prefix too
            initial_prefix: self.initial_prefix.min(self.max_prefix),
            growth_factor: 2,
            max_prefix: self.max_prefix,
            min_tail_occurrences: self.min_tail,
        }
    }
}

fn fail(code: i32, msg: impl std::fmt::Display) -> ! {
    eprintln!("error: {msg}");
    exit(code);
}

fn parse_spec_or_exit(s: &str) -> WordSpec {
    parse_spec(s).unwrap_or_else(|e| fail(EXIT_PARSE, e))
}

fn parse_word_or_exit(digits: &str, alphabet: u8) -> FiniteWord {
    FiniteWord::parse(digits, alphabet).unwrap_or_else(|e| fail(EXIT_PARSE, e))
}

/// Digits-only rendering for word I/O (the empty word prints as nothing).
fn digits(w: &FiniteWord) -> String {
    w.symbols()
        .iter()
        .map(|&s| char::from_digit(s as u32, 16).unwrap_or('?'))
        .collect()
}

fn main() {
    let cli = Cli::parse();
    match cli.command {
        Command::Generate { spec, length } => cmd_generate(&spec, length),
        Command::Returns { spec, factor, class, mode, side, policy, strict, json } => {
            cmd_returns(&spec, factor.as_deref(), class.as_deref(), mode, side, &policy, strict, json)
        }
        Command::Lexarray { word, slope, class, json } => {
            cmd_lexarray(word.as_deref(), slope.as_deref(), class.as_deref(), json)
        }
        Command::Verify { theorem, spec, max_len, policy, json } => {
            cmd_verify(theorem, &spec, max_len, &policy, json)
        }
    }
}

fn cmd_generate(spec_str: &str, length: usize) {
    let spec = parse_spec_or_exit(spec_str);
    match generate_prefix(&spec, length) {
        Ok(w) => println!("{}", digits(&w)),
        Err(e) => fail(EXIT_PARSE, e),
    }
}

fn return_set_strings(returns: &ReturnSet) -> Vec<String> {
    match returns {
        ReturnSet::Words(s) => s.iter().map(digits).collect(),
        ReturnSet::Classes(s) => s.iter().map(|k| digits(&k.canonical_word())).collect(),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_returns(
    spec_str: &str,
    factor: Option<&str>,
    class: Option<&str>,
    mode: ModeArg,
    side: SideArg,
    policy: &PolicyArgs,
    strict: bool,
    json: bool,
) {
    let spec = parse_spec_or_exit(spec_str);
    let alphabet = spec.alphabet_size();
    let subject = match (factor, class) {
        (Some(f), None) => Subject::Factor(parse_word_or_exit(f, alphabet)),
        (None, Some(c)) => Subject::Class(AbelianClassKey::of(&parse_word_or_exit(c, alphabet))),
        _ => fail(EXIT_PARSE, "exactly one of --factor or --class is required"),
    };
    let report = match returns_stabilized(
        &spec,
        &subject,
        mode.to_mode(),
        side.to_side(),
        &policy.to_policy(),
    ) {
        Ok(r) => r,
        Err(e @ (Error::SubjectAbsent(_) | Error::TooFewOccurrences(_))) => fail(EXIT_ABSENT, e),
        Err(e) => fail(EXIT_PARSE, e),
    };
    let set = return_set_strings(&report.returns);
    if json {
        let record = json!({
            "format_version": FORMAT_VERSION,
            "command": "returns",
            "spec": print_spec(&spec),
            "subject": report.subject.to_string(),
            "mode": format!("{:?}", report.mode),
            "side": format!("{:?}", report.side),
            "returns": set,
            "return_count": set.len(),
            "occurrences": report.occurrence_count,
            "stabilized": report.stabilized,
            "prefix_length": report.prefix_length_used,
        });
        println!("{record}");
    } else {
        println!("subject: {}", report.subject);
        println!("returns ({}): {{{}}}", set.len(), set.join(", "));
        println!("occurrences: {}", report.occurrence_count);
        println!("stabilized: {} (prefix {})", report.stabilized, report.prefix_length_used);
    }
    if strict && !report.stabilized {
        fail(EXIT_UNSTABILIZED, "return set did not stabilize within --max-prefix");
    }
}

fn cmd_lexarray(word: Option<&str>, slope: Option<&str>, class: Option<&str>, json: bool) {
    let array: LexArray = match (word, slope) {
        (Some(w), None) => {
            build_lex_array(&parse_word_or_exit(w, 2)).unwrap_or_else(|e| fail(EXIT_PARSE, e))
        }
        (None, Some(s)) => {
            let (p, q) = s
                .split_once('/')
                .and_then(|(p, q)| Some((p.parse().ok()?, q.parse().ok()?)))
                .unwrap_or_else(|| fail(EXIT_PARSE, format!("bad slope {s:?}, expected p/q")));
            retwords::lexarray::balanced_array_by_columns(p, q)
                .unwrap_or_else(|e| fail(EXIT_PARSE, e))
        }
        _ => fail(EXIT_PARSE, "exactly one of --word or --slope is required"),
    };
    let class_results = class.map(|c| {
        let key = AbelianClassKey::of(&parse_word_or_exit(c, 2));
        let semi = semi_abelian_returns_via_array(&array, &key).unwrap_or_else(|e| match e {
            Error::ClassAbsent => fail(EXIT_ABSENT, e),
            e => fail(EXIT_PARSE, e),
        });
        let abelian = abelian_returns_via_array(&array, &key).unwrap();
        (key, semi, abelian)
    });
    if json {
        let mut record = json!({
            "format_version": FORMAT_VERSION,
            "command": "lexarray",
            "p": array.p(),
            "q": array.q(),
            "rows": array.rows().iter().map(digits).collect::<Vec<_>>(),
        });
        if let Some((key, semi, abelian)) = class_results {
            record["class"] = json!(digits(&key.canonical_word()));
            record["semi_abelian_returns"] = json!(semi.iter().map(digits).collect::<Vec<_>>());
            record["abelian_returns"] =
                json!(abelian.iter().map(|k| digits(&k.canonical_word())).collect::<Vec<_>>());
        }
        println!("{record}");
    } else {
        for row in array.rows() {
            println!("{}", digits(row));
        }
        if let Some((key, semi, abelian)) = class_results {
            let semi: Vec<String> = semi.iter().map(digits).collect();
            let ab: Vec<String> = abelian.iter().map(|k| digits(&k.canonical_word())).collect();
            println!("class: {}", digits(&key.canonical_word()));
            println!("semi-abelian returns ({}): {{{}}}", semi.len(), semi.join(", "));
            println!("abelian returns ({}): {{{}}}", ab.len(), ab.join(", "));
        }
    }
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::Complexity { length, observed, expected } => {
            format!("factor complexity at length {length} is {observed}, expected {expected}")
        }
        Witness::Report(r) => format!(
            "subject {} has {} {} return(s){}",
            r.subject,
            r.returns.len(),
            match r.mode {
                ReturnMode::Classic => "classic",
                ReturnMode::SemiAbelian => "semi-abelian",
                ReturnMode::Abelian => "abelian",
            },
            if r.stabilized { "" } else { " (not stabilized)" },
        ),
        Witness::Period { period } => format!("verified period {period}"),
        Witness::SingularMismatch { class, return_count, singular } => format!(
            "class {class} has {return_count} abelian return(s) but is {}singular",
            if *singular { "" } else { "not " },
        ),
    }
}

fn cmd_verify(theorem: TheoremArg, spec_str: &str, max_len: usize, policy: &PolicyArgs, json: bool) {
    let spec = parse_spec_or_exit(spec_str);
    let policy = policy.to_policy();
    let result: Result<Verdict, Error> = match theorem {
        TheoremArg::Vuillon => sturmian_by_returns(&spec, ReturnMode::Classic, max_len, &policy),
        TheoremArg::Main => sturmian_by_returns(&spec, ReturnMode::Abelian, max_len, &policy),
        TheoremArg::Semi => sturmian_by_returns(&spec, ReturnMode::SemiAbelian, max_len, &policy),
        TheoremArg::Singular => singularity_correspondence(&spec, max_len, &policy),
        TheoremArg::PeriodicBound => {
            let k = spec.alphabet_size() as usize;
            match periodicity_by_abelian_bound(&spec, k, max_len, &policy) {
                // fall back to the one-return route before giving up
                Ok(v) if v.conclusion == Conclusion::Inconclusive => {
                    one_return_periodicity(&spec, ReturnMode::SemiAbelian, max_len, &policy)
                        .map(|alt| {
                            if alt.conclusion == Conclusion::ConsistentPeriodic {
                                alt
                            } else {
                                v
                            }
                        })
                }
                other => other,
            }
        }
    };
    let verdict = result.unwrap_or_else(|e| fail(EXIT_PARSE, e));
    let (label, code) = match verdict.conclusion {
        Conclusion::ConsistentSturmian => ("consistent-sturmian", 0),
        Conclusion::ConsistentPeriodic => ("consistent-periodic", 0),
        Conclusion::RefutedSturmian => ("refuted", EXIT_REFUTED),
        Conclusion::Inconclusive => ("inconclusive", EXIT_INCONCLUSIVE),
    };
    let witnesses: Vec<String> = verdict.witnesses.iter().map(describe_witness).collect();
    if json {
        let record = json!({
            "format_version": FORMAT_VERSION,
            "command": "verify",
            "spec": print_spec(&spec),
            "conclusion": label,
            "witnesses": witnesses,
            "max_len": verdict.max_len,
            "prefix_length": verdict.prefix_length,
        });
        println!("{record}");
    } else {
        println!("conclusion: {label}");
        for w in &witnesses {
            println!("witness: {w}");
        }
        println!("tested lengths 1..={} (prefix {})", verdict.max_len, verdict.prefix_length);
    }
    exit(code);
}
