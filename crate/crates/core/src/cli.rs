//! Command-line front end. [`execute`] does all the work and returns the exit
//! code with both output streams, so tests can drive it without a process.
//!
//! Exit codes: 0 on success, 1 on malformed input or domain errors, 2 when a
//! word has no unique hook-assignment preimage.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bijection::{translate, PhiInput, PreimagePolicy};
use crate::error::{Error, Result};
use crate::hooks::HookAssignment;
use crate::instance::Instance;
use crate::perm::{parse_cycle_groups, Permutation};
use crate::star::DEFAULT_BUDGET;
use crate::tree::OrderedTree;
use crate::word::{EnclosureChoice, Word};

#[derive(Debug, Parser)]
#[command(
    name = "starfact",
    version,
    about = "Minimal transitive star factorizations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct PermArgs {
    /// Permutation in cycle notation, e.g. "(1 4 2)(3 5)(6)".
    #[arg(long, allow_hyphen_values = true)]
    perm: String,
    /// Ground-set size; inferred from the largest element when omitted.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Args)]
struct Target {
    #[command(flatten)]
    perm: PermArgs,
    #[arg(long)]
    pivot: usize,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of minimal transitive star factorizations.
    Count {
        #[command(flatten)]
        target: Target,
        /// Count by exhaustive search instead of the product formula.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// List all factorizations, one per line.
    Enumerate {
        #[command(flatten)]
        target: Target,
        /// Use exhaustive search instead of words and enclosure choices.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Word of a factorization, or every valid word when --fac is omitted.
    Word {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        fac: Option<String>,
    },
    /// Enclosing letters and their indices.
    Enclosures {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        fac: String,
    },
    /// Factorization from a word and an enclosure choice.
    Rho {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        word: String,
        /// One index per non-pivot cycle, comma separated.
        #[arg(long, default_value = "")]
        c: String,
    },
    /// Word and enclosure choice of a factorization.
    RhoInv {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        fac: String,
    },
    /// Tree built from a hook assignment.
    Tree {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "")]
        f: String,
        #[arg(long)]
        c: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Hook assignment that builds a tree.
    TreeInv {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        tree: String,
    },
    Phi {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "")]
        f: String,
        /// One coordinate per cycle, comma separated.
        #[arg(long)]
        c: String,
    },
    PhiInv {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        fac: String,
    },
    /// Carry a factorization with pivot --from to one with pivot --to.
    Translate {
        #[command(flatten)]
        perm: PermArgs,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long)]
        fac: String,
        /// Break ties by the least preimage; the result is then not a bijection.
        #[arg(long)]
        force_lexicographic: bool,
    },
    /// Cross-check every construction against exhaustive search.
    Audit {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Print a tree as text or DOT.
    Render {
        #[arg(long)]
        tree: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

/// What one invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn execute<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => {
                    let line = text.lines().next().unwrap_or("invalid arguments");
                    Outcome::fail(line.trim_start_matches("error: "))
                }
            };
        }
    };
    match run(cli.command) {
        Ok(stdout) => Outcome::ok(stdout),
        Err(e @ (Error::AmbiguousPreimage { .. } | Error::MissingPreimage { .. })) => Outcome {
            code: 2,
            stdout: witness_dump(&e),
            stderr: format!("error: {e}\n"),
        },
        Err(e) => Outcome::fail(e),
    }
}

fn witness_dump(e: &Error) -> String {
    match e {
        Error::AmbiguousPreimage { word, witnesses } => {
            let mut out = format!("ambiguous {word}\n");
            for h in witnesses {
                let _ = writeln!(out, "{h}");
            }
            out
        }
        Error::MissingPreimage { word } => format!("missing {word}\n"),
        _ => String::new(),
    }
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let sorted: BTreeSet<String> = items.into_iter().map(|x| x.to_string()).collect();
    sorted.into_iter().map(|s| s + "\n").collect()
}

impl PermArgs {
    fn resolve(&self) -> Result<Permutation> {
        let n = match self.n {
            Some(n) => n,
            None => infer_n(&self.perm)?,
        };
        Permutation::parse_cycles(&self.perm, n)
    }
}

fn infer_n(text: &str) -> Result<usize> {
    // "(142)(35)" is read digit by digit when the spaced reading leaves gaps
    let spaced = gapless_max(text, false);
    match spaced {
        Ok(n) => Ok(n),
        Err(e) => gapless_max(text, true).ok().filter(|&n| n <= 9).ok_or(e),
    }
}

fn gapless_max(text: &str, compact: bool) -> Result<usize> {
    let mentioned: BTreeSet<usize> = parse_cycle_groups(text, compact)?
        .into_iter()
        .flatten()
        .collect();
    let n = mentioned.last().copied().ok_or(Error::EmptyGroundSet)?;
    if let Some(gap) = (1..=n).find(|x| !mentioned.contains(x)) {
        return Err(Error::parse(
            text,
            format!("element {gap} is not mentioned; pass --n"),
        ));
    }
    Ok(n)
}

impl Target {
    fn instance(&self) -> Result<Instance> {
        Instance::new(self.perm.resolve()?, self.pivot)
    }
}

fn parse_list(text: &str) -> Result<Vec<usize>> {
    let text = text.trim().trim_start_matches('(').trim_end_matches(')');
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| Error::parse(text, format!("{tok:?} is not a number")))
        })
        .collect()
}

fn render(tree: &OrderedTree, format: Format) -> String {
    match format {
        Format::Text => format!("{tree}\n"),
        Format::Dot => tree.to_dot(),
    }
}

fn run(command: Command) -> Result<String> {
    Ok(match command {
        Command::Count {
            target,
            oracle,
            budget,
        } => {
            let inst = target.instance()?;
            if oracle {
                format!("{}\n", inst.enumerate_brute(budget)?.len())
            } else {
                format!("{}\n", inst.count_formula()?)
            }
        }
        Command::Enumerate {
            target,
            oracle,
            budget,
        } => {
            let inst = target.instance()?;
            if oracle {
                lines(inst.enumerate_brute(budget)?)
            } else {
                lines(inst.enumerate_via_rho()?)
            }
        }
        Command::Word { target, fac } => {
            let inst = target.instance()?;
            match fac {
                Some(fac) => format!("{}\n", inst.word_of(&inst.parse_factorization(&fac)?)?),
                None => lines(inst.enumerate_valid_words()),
            }
        }
        Command::Enclosures { target, fac } => {
            let inst = target.instance()?;
            let (letters, choice) = inst.enclosures_of(&inst.parse_factorization(&fac)?)?;
            format!("{letters}\n{choice}\n")
        }
        Command::Rho { target, word, c } => {
            let inst = target.instance()?;
            let fac = inst.rho(&Word::parse(&word)?, &EnclosureChoice(parse_list(&c)?))?;
            format!("{fac}\n")
        }
        Command::RhoInv { target, fac } => {
            let inst = target.instance()?;
            let (word, choice) = inst.rho_inv(&inst.parse_factorization(&fac)?)?;
            format!("{}\n{choice}\n", word.render(inst.m()))
        }
        Command::Tree {
            target,
            f,
            c,
            format,
        } => {
            let inst = target.instance()?;
            render(
                &inst.tree_forward(&HookAssignment::new(parse_list(&f)?, c))?,
                format,
            )
        }
        Command::TreeInv { target, tree } => {
            let inst = target.instance()?;
            format!("{}\n", inst.tree_inverse(&OrderedTree::parse(&tree)?)?)
        }
        Command::Phi { target, f, c } => {
            let inst = target.instance()?;
            let fac = inst.phi(&PhiInput::new(parse_list(&f)?, parse_list(&c)?))?;
            format!("{fac}\n")
        }
        Command::PhiInv { target, fac } => {
            let inst = target.instance()?;
            format!("{}\n", inst.phi_inv(&inst.parse_factorization(&fac)?)?)
        }
        Command::Translate {
            perm,
            from,
            to,
            fac,
            force_lexicographic,
        } => {
            let pi = perm.resolve()?;
            let source = Instance::new(pi.clone(), from)?;
            let dest = Instance::new(pi, to)?;
            let policy = if force_lexicographic {
                PreimagePolicy::Lexicographic
            } else {
                PreimagePolicy::Strict
            };
            let t = translate(&source, &dest, &source.parse_factorization(&fac)?, policy)?;
            let mut out = format!("{}\n", t.factorization);
            if t.forced {
                out.push_str("# forced: least of several preimages taken; not a bijection\n");
            }
            out
        }
        Command::Audit { target, budget } => target.instance()?.audit(budget)?.to_string(),
        Command::Render { tree, format } => render(&OrderedTree::parse(&tree)?, format),
    })
}
