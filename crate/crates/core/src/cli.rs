//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when `decide` finds a non-identity, `equal`
//! finds different maps or `verify-relations` has a failing instance, 2 on
//! usage and parse errors, 3 when a cross-check fails.

use std::io::Write;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::action::{evaluate, Kind, SWord};
use crate::decide::{decide_identity_traced, equal, phi_crosscheck, verify_relations};
use crate::diagrams::{render, word_to_diagram, RenderFormat};
use crate::error::Error;
use crate::projective::{compose_word, phi_interval, phi_of_seq, Builtin};
use crate::rewrite::{expand_to_finite_generators, to_standard_form_traced, Alphabet};
use crate::sequences::{Seq, Word};

#[derive(Parser, Debug)]
#[command(name = "projgroup", version, about = "Words, normal forms and the word problem for the group generated by a, b, c")]
struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rewrite a word into standard form
    Normalize {
        #[arg(allow_hyphen_values = true)]
        word: String,
        /// Minimum length of every y-subscript
        #[arg(long, default_value_t = 0)]
        depth: usize,
        /// Print one line per rewriting step
        #[arg(long)]
        trace: bool,
    },
    /// Decide whether a word is the identity
    Decide {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        trace: bool,
    },
    /// Decide whether two words are equal
    Equal {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// Apply a word to an eventually periodic sequence such as 10(01)
    Eval {
        #[arg(allow_hyphen_values = true)]
        word: String,
        seq: String,
    },
    /// Draw the labeled tree diagram of a word
    Render {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value = "ascii")]
        format: String,
    },
    /// Check the relation families and the finite presentations
    VerifyRelations {
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rewrite a word over x, x[1], y[0], y[1], y[10] or over a, b, c
    ExpandFinite {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value = "five")]
        alphabet: String,
    },
    /// The point of the projective line named by a sequence, or the arc of a finite prefix
    Phi { input: String },
    /// Check the coordinate map against the generators on random sequences
    Crosscheck {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The exact piece table of a word
    Piecewise {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

fn ok(text: String, json: Value) -> Output {
    Output { text, json, code: 0 }
}

fn parse_word(s: &str) -> Result<SWord, Error> {
    Ok(s.parse::<SWord>()?)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CrossCheck(_) => 3,
        _ => 2,
    }
}

/// Maps a word in `x`, `x[1]`, `y[10]` to builtin letters, expanding it
/// over `a, b, c` first when it uses other generators.
fn builtin_letters(w: &SWord) -> Result<Vec<(Builtin, i64)>, Error> {
    let abc = expand_to_finite_generators(w, Alphabet::Three)?;
    abc.letters
        .iter()
        .map(|l| {
            let b = match (l.gen.kind, l.gen.sub.to_string().as_str()) {
                (Kind::X, "e") => Builtin::A,
                (Kind::X, "1") => Builtin::B,
                (Kind::Y, "10") => Builtin::C,
                _ => return Err(Error::InvalidArgument(format!("{} is not one of a, b, c", l.gen))),
            };
            Ok((b, l.exp))
        })
        .collect()
}

fn run(command: Command) -> Result<Output, Error> {
    Ok(match command {
        Command::Normalize { word, depth, trace } => {
            let w = parse_word(&word)?;
            let (form, lines) = to_standard_form_traced(&w, depth)?;
            let mut text = String::new();
            if trace {
                lines.iter().for_each(|l| text.push_str(&format!("{l}\n")));
            }
            text.push_str(&format!("{form}\n"));
            ok(
                text,
                json!({
                    "form": form.to_string(),
                    "x_part": form.x_part().to_string(),
                    "y_part": form.y_part().iter().map(|(s, e)| json!([s.to_string(), e])).collect::<Vec<_>>(),
                    "depth": form.depth(),
                    "trace": trace.then_some(lines),
                }),
            )
        }
        Command::Decide { word, trace } => {
            let w = parse_word(&word)?;
            let v = decide_identity_traced(&w, trace)?;
            let mut text = String::new();
            if let Some(lines) = &v.trace {
                lines.iter().for_each(|l| text.push_str(&format!("{l}\n")));
            }
            text.push_str(if v.is_identity { "identity\n" } else { "not identity\n" });
            text.push_str(&format!("reduced form: {}\n", v.reduced_form));
            if let Some(wit) = &v.witness {
                text.push_str(&format!("witness: u={} v={} n={}\n", wit.u, wit.v, wit.n));
            }
            if let Some(xi) = &v.moved {
                text.push_str(&format!("moves {xi} to {}\n", evaluate(&w, xi)));
            }
            Output { text, json: v.to_json(), code: if v.is_identity { 0 } else { 1 } }
        }
        Command::Equal { first, second } => {
            let same = equal(&parse_word(&first)?, &parse_word(&second)?)?;
            Output {
                text: if same { "equal\n".into() } else { "not equal\n".into() },
                json: json!({ "equal": same }),
                code: if same { 0 } else { 1 },
            }
        }
        Command::Eval { word, seq } => {
            let w = parse_word(&word)?;
            let xi: Seq = seq.parse()?;
            let out = evaluate(&w, &xi);
            ok(format!("{out}\n"), json!({ "input": xi.to_string(), "output": out.to_string() }))
        }
        Command::Render { word, format } => {
            let format: RenderFormat = format.parse()?;
            let (form, _) = to_standard_form_traced(&parse_word(&word)?, 0)?;
            let d = word_to_diagram(&form);
            let text = render(&d, format);
            let json = json!({ "format": if format == RenderFormat::Dot { "dot" } else { "ascii" }, "output": text });
            ok(text, json)
        }
        Command::VerifyRelations { bound, samples, seed } => {
            let report = verify_relations(bound, samples, seed)?;
            Output { text: report.to_text(), json: report.to_json(), code: if report.all_passed() { 0 } else { 1 } }
        }
        Command::ExpandFinite { word, alphabet } => {
            let alphabet: Alphabet = alphabet.parse()?;
            let e = expand_to_finite_generators(&parse_word(&word)?, alphabet)?;
            let shown = match alphabet {
                Alphabet::Three => e.to_abc_string(),
                Alphabet::Five => e.to_string(),
            };
            ok(format!("{shown}\n"), json!({ "alphabet": alphabet.to_string(), "word": shown }))
        }
        Command::Phi { input } => {
            if input.contains('(') {
                let xi: Seq = input.parse()?;
                let v = phi_of_seq(&xi)
                    .ok_or_else(|| Error::InvalidArgument(format!("{xi} is not eventually constant")))?;
                ok(format!("{v}\n"), json!({ "sequence": xi.to_string(), "value": v.to_json() }))
            } else {
                let s: Word = input.parse()?;
                let (lo, hi) = phi_interval(&s)?;
                ok(
                    format!("[{lo}, {hi}]\n"),
                    json!({ "prefix": s.to_string(), "start": lo.to_json(), "end": hi.to_json() }),
                )
            }
        }
        Command::Crosscheck { count, seed } => {
            let r = phi_crosscheck(count, seed);
            Output {
                text: r.to_text(),
                json: serde_json::to_value(&r).expect("plain data"),
                code: if r.passed() { 0 } else { 3 },
            }
        }
        Command::Piecewise { word } => {
            let map = compose_word(&builtin_letters(&parse_word(&word)?)?);
            ok(map.table(), json!({ "pieces": map.to_json() }))
        }
    })
}

/// Runs the command line `args` (program name first), writing to `out` and
/// `err`, and returns the exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let as_json = cli.json;
    match run(cli.command) {
        Ok(o) => {
            let _ = if as_json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("serializable"))
            } else {
                write!(out, "{}", o.text)
            };
            o.code
        }
        Err(e) => {
            let _ = if as_json {
                writeln!(out, "{}", json!({ "error": e.to_string() }))
            } else {
                writeln!(err, "error: {e}")
            };
            exit_code(&e)
        }
    }
}

pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_cli(args, &mut std::io::stdout(), &mut std::io::stderr())
}
