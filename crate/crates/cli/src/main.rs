//! `peq`: decide equality and almost-equivalence of regular languages.
//!
//! Exit status is 0 when the answer is true, 1 when it is false and 2 on
//! any error. Results go to stdout (JSON unless `--format` says otherwise),
//! a one-line human summary goes to stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use peq_core::analysis::reachable_states;
use peq_core::automata::Automaton;
use peq_core::density::{profile, residue_probe};
use peq_core::equivalence::{e_equiv, equal, f_equiv, p_equiv, unary_p_equiv, zero_one};
use peq_core::oracle::{accepts, brute_density};
use peq_core::reductions::{
    bfs_reachable, brute_sat, gap_to_dfa, gap_to_dfa_zero_one, sat3_to_unary_regex, simulate_tm,
    tm_to_regex, Cnf3, Digraph, TmSpec, MAX_BRUTE_VARIABLES,
};
use peq_core::{Alphabet, DecisionReport, Language, Limits, Regex};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "peq",
    version,
    about = "Equivalence and almost-equivalence of regular languages"
)]
struct Cli {
    /// Comma separated alphabet, required for regex inputs.
    #[arg(long, global = true)]
    alphabet: Option<String>,

    /// Output format; `csv` is only available for `density`.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Cap on the number of DFA states built by the subset construction.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    cap_states: usize,

    /// Cap on the density horizon.
    #[arg(long, global = true, default_value_t = 2000)]
    max_horizon: usize,

    /// Cap on the number of words enumerated by the brute-force oracle.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    max_enumeration: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a regular expression and print its canonical form.
    Parse {
        #[arg(long, visible_alias = "re")]
        re1: String,
    },
    /// Convert a language to an ε-free NFA or a total DFA (JSON).
    Convert {
        #[command(flatten)]
        input: First,
        #[arg(long, value_enum, default_value = "dfa")]
        to: Target,
    },
    /// Decide a relation between two languages, or the zero-one law for one.
    Decide {
        #[arg(value_enum)]
        relation: RelationArg,
        #[command(flatten)]
        first: First,
        #[command(flatten)]
        second: Second,
        /// Exceptional language for `e-equiv`, as a regular expression.
        #[arg(long)]
        e: Option<String>,
    },
    /// Exact densities μₙ, μ*ₙ and δₙ for n = 0..=horizon.
    Density {
        #[command(flatten)]
        input: First,
        #[arg(long, default_value_t = 32)]
        horizon: usize,
        /// Also estimate the limits along residue classes (JSON and text).
        #[arg(long)]
        probe: bool,
    },
    /// Generate a reduction instance together with its oracle verdict.
    Reduce {
        #[command(subcommand)]
        kind: Reduction,
    },
    /// Brute-force reference answers.
    Oracle {
        #[command(subcommand)]
        kind: OracleQuery,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Nfa,
    Dfa,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RelationArg {
    Equal,
    PEquiv,
    FEquiv,
    EEquiv,
    ZeroOne,
    UnaryPEquiv,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct First {
    /// Regular expression (`@path` reads it from a file).
    #[arg(long, visible_alias = "re")]
    re1: Option<String>,
    /// NFA in the JSON automaton format.
    #[arg(long, visible_alias = "nfa")]
    nfa1: Option<PathBuf>,
    /// DFA in the JSON automaton format.
    #[arg(long, visible_alias = "dfa")]
    dfa1: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct Second {
    #[arg(long)]
    re2: Option<String>,
    #[arg(long)]
    nfa2: Option<PathBuf>,
    #[arg(long)]
    dfa2: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Reduction {
    /// Graph reachability to a DFA whose density is zero iff n is
    /// unreachable from 1.
    Gap {
        #[arg(long)]
        graph: PathBuf,
        /// Use the variant with an escape symbol `e` for the zero-one problem.
        #[arg(long)]
        zero_one: bool,
        /// Write the instance here and the oracle verdict next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Linear-bounded machine and input to a regular expression that is
    /// universal iff the machine rejects.
    Tm {
        #[arg(long)]
        machine: PathBuf,
        /// Input tape symbols, whitespace or comma separated.
        #[arg(long)]
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// 3-CNF (DIMACS) to a unary regular expression that is universal iff
    /// the formula is unsatisfiable.
    Sat {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleQuery {
    /// Membership of one word, by direct simulation.
    Member {
        #[command(flatten)]
        input: First,
        /// Symbols separated by whitespace or commas; empty for ε.
        #[arg(long, default_value = "")]
        word: String,
    },
    /// μₙ by enumerating all words of length n.
    Density {
        #[command(flatten)]
        input: First,
        #[arg(long)]
        n: usize,
    },
    /// Breadth-first search from node 1 to node n.
    Bfs {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Exhaustive simulation of a machine on an input.
    Simulate {
        #[arg(long)]
        machine: PathBuf,
        #[arg(long)]
        input: String,
    },
    /// Exhaustive satisfiability check.
    Sat {
        #[arg(long)]
        cnf: PathBuf,
    },
}

/// What a command produced: a payload for stdout, a summary for stderr and
/// the exit status.
struct Output {
    json: Value,
    text: String,
    csv: Option<String>,
    status: u8,
}

impl Output {
    fn new(json: Value, text: String, truth: bool) -> Output {
        Output {
            json,
            text,
            csv: None,
            status: if truth { 0 } else { 1 },
        }
    }

    fn done(json: Value, text: String) -> Output {
        Output::new(json, text, true)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            eprintln!("{}", out.text);
            let format = cli.format.unwrap_or(match cli.command {
                Command::Density { .. } => Format::Csv,
                _ => Format::Json,
            });
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&out.json).expect("json"))
                }
                Format::Text => println!("{}", out.text),
                Format::Csv => match &out.csv {
                    Some(csv) => print!("{csv}"),
                    None => {
                        eprintln!("error: csv output is only available for `density`");
                        return ExitCode::from(2);
                    }
                },
            }
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let limits = Limits {
        max_dfa_states: cli.cap_states,
        max_horizon: cli.max_horizon,
        max_enumeration: cli.max_enumeration,
    };
    let alphabet = cli
        .alphabet
        .as_deref()
        .map(Alphabet::parse_list)
        .transpose()
        .context("--alphabet")?;
    let alphabet = alphabet.as_ref();
    match &cli.command {
        Command::Parse { re1 } => {
            let Language::Regex { alphabet, ast } = load_regex(re1, alphabet)? else {
                unreachable!("load_regex returns a regex")
            };
            let canonical = ast.display(&alphabet).to_string();
            let json = json!({
                "canonical": canonical,
                "nodes": ast.node_count(),
                "alphabet": alphabet,
            });
            Ok(Output::done(json, canonical))
        }
        Command::Convert { input, to } => {
            let lang = input.load(alphabet)?;
            let (text, kind, states) = match to {
                Target::Nfa => {
                    let n = lang.to_nfa();
                    (n.to_json(), "nfa", n.state_count())
                }
                Target::Dfa => {
                    let d = lang.to_dfa(&limits)?;
                    (d.to_json(), "dfa", d.state_count())
                }
            };
            Ok(Output::done(
                serde_json::from_str(&text)?,
                format!("{kind} with {states} states"),
            ))
        }
        Command::Decide {
            relation,
            first,
            second,
            e,
        } => decide(*relation, first, second, e.as_deref(), alphabet, &limits),
        Command::Density {
            input,
            horizon,
            probe,
        } => density(input, *horizon, *probe, alphabet, &limits),
        Command::Reduce { kind } => reduce(kind),
        Command::Oracle { kind } => oracle(kind, alphabet, &limits),
    }
}

impl First {
    fn load(&self, alphabet: Option<&Alphabet>) -> Result<Language> {
        load_input(
            self.re1.as_deref(),
            self.nfa1.as_deref(),
            self.dfa1.as_deref(),
            alphabet,
        )
        .context("first input")
    }
}

impl Second {
    fn load(&self, alphabet: Option<&Alphabet>) -> Result<Option<Language>> {
        if self.re2.is_none() && self.nfa2.is_none() && self.dfa2.is_none() {
            return Ok(None);
        }
        load_input(
            self.re2.as_deref(),
            self.nfa2.as_deref(),
            self.dfa2.as_deref(),
            alphabet,
        )
        .map(Some)
        .context("second input")
    }
}

fn load_input(
    re: Option<&str>,
    nfa: Option<&Path>,
    dfa: Option<&Path>,
    alphabet: Option<&Alphabet>,
) -> Result<Language> {
    let lang = match (re, nfa, dfa) {
        (Some(re), _, _) => return load_regex(re, alphabet),
        (_, Some(path), _) => Language::Nfa(read_automaton(path)?.to_nfa()),
        (_, _, Some(path)) => match read_automaton(path)? {
            Automaton::Dfa(d) => Language::Dfa(d),
            Automaton::Nfa(_) => bail!("{} is not a total deterministic automaton", path.display()),
        },
        _ => bail!("no input given"),
    };
    if let Some(a) = alphabet {
        if a != lang.alphabet() {
            bail!(
                "--alphabet {:?} differs from the automaton's alphabet {:?}",
                a.symbols(),
                lang.alphabet().symbols()
            );
        }
    }
    Ok(lang)
}

fn read_automaton(path: &Path) -> Result<Automaton> {
    let text = read(path)?;
    Automaton::from_json(&text).with_context(|| format!("reading {}", path.display()))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// A regex given inline, or as `@path`. The file holds either plain regex
/// text or a JSON object `{"alphabet": [...], "regex": "..."}` as written by
/// `reduce`.
fn load_regex(re: &str, alphabet: Option<&Alphabet>) -> Result<Language> {
    let (text, own) = match re.strip_prefix('@') {
        Some(path) => {
            let content = read(Path::new(path))?;
            match serde_json::from_str::<Value>(&content) {
                Ok(Value::Object(obj)) => {
                    let regex = obj
                        .get("regex")
                        .and_then(Value::as_str)
                        .ok_or_else(|| anyhow!("{path}: missing string field `regex`"))?
                        .to_string();
                    let own: Option<Alphabet> = obj
                        .get("alphabet")
                        .map(|a| serde_json::from_value(a.clone()))
                        .transpose()
                        .with_context(|| format!("{path}: bad `alphabet`"))?;
                    (regex, own)
                }
                _ => (content.trim().to_string(), None),
            }
        }
        None => (re.to_string(), None),
    };
    let alphabet = match (own, alphabet) {
        (Some(own), Some(given)) if &own != given => {
            bail!("--alphabet differs from the alphabet stored with the regex")
        }
        (Some(own), _) => own,
        (None, Some(given)) => given.clone(),
        (None, None) => bail!("regex inputs need --alphabet"),
    };
    Ok(Language::regex(&text, &alphabet)?)
}

fn decide(
    relation: RelationArg,
    first: &First,
    second: &Second,
    e: Option<&str>,
    alphabet: Option<&Alphabet>,
    limits: &Limits,
) -> Result<Output> {
    let x1 = first.load(alphabet)?;
    // a regex second input may take its alphabet from an automaton file
    let x2 = second.load(alphabet.or(Some(x1.alphabet())))?;
    let need_second = || {
        x2.as_ref()
            .ok_or_else(|| anyhow!("this relation needs a second input"))
    };
    let report: DecisionReport = match relation {
        RelationArg::ZeroOne => {
            if x2.is_some() {
                bail!("zero-one takes a single input");
            }
            zero_one(&x1, limits)?
        }
        RelationArg::Equal => equal(&x1, need_second()?, limits)?,
        RelationArg::PEquiv => p_equiv(&x1, need_second()?, limits)?,
        RelationArg::FEquiv => f_equiv(&x1, need_second()?, limits)?,
        RelationArg::EEquiv => {
            let e = e.ok_or_else(|| anyhow!("e-equiv needs --e"))?;
            let e = load_regex(e, Some(x1.alphabet())).context("--e")?;
            e_equiv(&x1, need_second()?, &e, limits)?
        }
        RelationArg::UnaryPEquiv => unary_p_equiv(&x1.to_nfa(), &need_second()?.to_nfa())?,
    };
    Ok(Output::new(
        serde_json::to_value(&report)?,
        report.summary(),
        report.verdict,
    ))
}

fn fraction(r: &num_rational::BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn density(
    input: &First,
    horizon: usize,
    probe: bool,
    alphabet: Option<&Alphabet>,
    limits: &Limits,
) -> Result<Output> {
    let d = input.load(alphabet)?.to_dfa(limits)?;
    let p = profile(&d, horizon, limits.max_horizon)?;
    let rows: Vec<Value> = (0..=horizon)
        .map(|n| {
            json!({
                "n": n,
                "count": p.counts[n].to_string(),
                "mu": fraction(&p.mu[n]),
                "mu_star": fraction(&p.mu_star[n]),
                "delta": fraction(&p.delta[n]),
                "mu_float": p.mu[n].to_f64(),
            })
        })
        .collect();
    let mut text = format!(
        "density up to n = {horizon}: mu = {}, mu* = {}, delta = {} ({} of {} states reachable)",
        fraction(&p.mu[horizon]),
        fraction(&p.mu_star[horizon]),
        fraction(&p.delta[horizon]),
        reachable_states(&d).len(),
        d.state_count()
    );
    let mut json = json!({
        "alphabet_size": p.alphabet_size,
        "horizon": horizon,
        "rows": rows,
    });
    if probe {
        let r = residue_probe(&d, horizon, limits.max_horizon)?;
        text += &format!(
            "; residue period {}{}",
            r.period,
            if r.fallback { " (empirical)" } else { "" }
        );
        json["probe"] = json!({
            "period": r.period,
            "fallback": r.fallback,
            "estimates": r.estimates.iter().map(fraction).collect::<Vec<_>>(),
            "oscillation": r.oscillation.iter().map(fraction).collect::<Vec<_>>(),
        });
    }
    Ok(Output {
        json,
        text,
        csv: Some(p.to_csv()),
        status: 0,
    })
}

fn tape_input(m: &TmSpec, text: &str) -> Result<Vec<usize>> {
    let tokens: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    Ok(m.input(&tokens)?)
}

fn regex_instance(alphabet: &Alphabet, regex: &Regex) -> Value {
    json!({
        "alphabet": alphabet,
        "regex": regex.display(alphabet).to_string(),
    })
}

fn reduce(kind: &Reduction) -> Result<Output> {
    let (instance, oracle, out, summary) = match kind {
        Reduction::Gap {
            graph,
            zero_one,
            out,
        } => {
            let g = Digraph::from_json(&read(graph)?)?;
            let reachable = bfs_reachable(&g);
            let (d, expect) = if *zero_one {
                (
                    gap_to_dfa_zero_one(&g),
                    json!({"relation": "zero_one", "verdict": !reachable}),
                )
            } else {
                (
                    gap_to_dfa(&g),
                    json!({"relation": "p_equiv", "against": "empty", "verdict": !reachable}),
                )
            };
            let oracle = json!({"oracle": "bfs", "reachable": reachable, "expect": expect});
            let summary = format!(
                "dfa with {} states; node {} {}reachable",
                d.state_count(),
                g.n,
                if reachable { "" } else { "not " }
            );
            (serde_json::from_str(&d.to_json())?, oracle, out, summary)
        }
        Reduction::Tm {
            machine,
            input,
            out,
        } => {
            let m = TmSpec::from_json(&read(machine)?)?;
            let input = tape_input(&m, input)?;
            let inst = tm_to_regex(&m, &input)?;
            let accepts = simulate_tm(&m, &input);
            let oracle = json!({
                "oracle": "simulator",
                "accepts": accepts,
                "expect": {"relation": "equal", "against": "universal", "verdict": !accepts},
            });
            let summary = format!(
                "regex with {} nodes over {} symbols; machine {}",
                inst.regex.node_count(),
                inst.alphabet.len(),
                if accepts { "accepts" } else { "rejects" }
            );
            (
                regex_instance(&inst.alphabet, &inst.regex),
                oracle,
                out,
                summary,
            )
        }
        Reduction::Sat { cnf, out } => {
            let f = Cnf3::parse_dimacs(&read(cnf)?)?;
            let regex = sat3_to_unary_regex(&f)?;
            let satisfiable = (f.vars <= MAX_BRUTE_VARIABLES).then(|| brute_sat(&f));
            let oracle = json!({
                "oracle": "brute_force",
                "satisfiable": satisfiable,
                "expect": {
                    "relation": "equal",
                    "against": "universal",
                    "verdict": satisfiable.map(|s| !s),
                },
            });
            let summary = format!(
                "unary regex with {} nodes; formula {}",
                regex.node_count(),
                match satisfiable {
                    Some(true) => "satisfiable",
                    Some(false) => "unsatisfiable",
                    None => "too large to check",
                }
            );
            (
                regex_instance(&Alphabet::unary(), &regex),
                oracle,
                out,
                summary,
            )
        }
    };
    let json = match out {
        None => json!({"instance": instance, "oracle": oracle}),
        Some(path) => {
            let sidecar = sidecar_path(path);
            fs::write(path, serde_json::to_string_pretty(&instance)? + "\n")
                .with_context(|| format!("cannot write {}", path.display()))?;
            fs::write(&sidecar, serde_json::to_string_pretty(&oracle)? + "\n")
                .with_context(|| format!("cannot write {}", sidecar.display()))?;
            json!({"instance": path, "sidecar": sidecar, "oracle": oracle})
        }
    };
    Ok(Output::done(json, summary))
}

/// `dir/name.json` → `dir/name.oracle.json`.
fn sidecar_path(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    path.with_file_name(format!("{stem}.oracle.json"))
}

/// Splits a word into symbols at whitespace or commas. When every symbol
/// is a single character, unseparated runs are split into characters.
fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Vec<usize>> {
    let tokens: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    if let Ok(w) = alphabet.word(&tokens) {
        return Ok(w);
    }
    if alphabet.symbols().iter().all(|s| s.chars().count() == 1) {
        let chars: Vec<String> = tokens
            .iter()
            .flat_map(|t| t.chars().map(String::from))
            .collect();
        return Ok(alphabet.word(&chars)?);
    }
    Ok(alphabet.word(&tokens)?)
}

fn oracle(kind: &OracleQuery, alphabet: Option<&Alphabet>, limits: &Limits) -> Result<Output> {
    Ok(match kind {
        OracleQuery::Member { input, word } => {
            let lang = input.load(alphabet)?;
            let w = parse_word(lang.alphabet(), word)?;
            let member = accepts(&lang, &w);
            let rendered = lang.alphabet().render(&w);
            Output::new(
                json!({"oracle": "simulation", "word": rendered, "member": member}),
                format!(
                    "{:?} {} in the language",
                    rendered,
                    if member { "is" } else { "is not" }
                ),
                member,
            )
        }
        OracleQuery::Density { input, n } => {
            let lang = input.load(alphabet)?;
            let mu = brute_density(&lang, *n, limits.max_enumeration)?;
            Output::done(
                json!({"oracle": "enumeration", "n": n, "mu": fraction(&mu), "mu_float": mu.to_f64()}),
                format!("mu_{n} = {}", fraction(&mu)),
            )
        }
        OracleQuery::Bfs { graph } => {
            let g = Digraph::from_json(&read(graph)?)?;
            let reachable = bfs_reachable(&g);
            Output::new(
                json!({"oracle": "bfs", "reachable": reachable}),
                format!(
                    "node {} {}reachable from 1",
                    g.n,
                    if reachable { "" } else { "not " }
                ),
                reachable,
            )
        }
        OracleQuery::Simulate { machine, input } => {
            let m = TmSpec::from_json(&read(machine)?)?;
            let accepts = simulate_tm(&m, &tape_input(&m, input)?);
            Output::new(
                json!({"oracle": "simulator", "accepts": accepts}),
                format!("machine {}", if accepts { "accepts" } else { "rejects" }),
                accepts,
            )
        }
        OracleQuery::Sat { cnf } => {
            let f = Cnf3::parse_dimacs(&read(cnf)?)?;
            if f.vars > MAX_BRUTE_VARIABLES {
                bail!(
                    "{} variables exceed the brute-force cap of {MAX_BRUTE_VARIABLES}",
                    f.vars
                );
            }
            let sat = brute_sat(&f);
            Output::new(
                json!({"oracle": "brute_force", "satisfiable": sat}),
                format!(
                    "formula is {}",
                    if sat { "satisfiable" } else { "unsatisfiable" }
                ),
                sat,
            )
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_split_at_separators_or_characters() {
        let ab = Alphabet::parse_list("a,b").unwrap();
        assert_eq!(parse_word(&ab, "a b,b").unwrap(), vec![0, 1, 1]);
        assert_eq!(parse_word(&ab, "abb").unwrap(), vec![0, 1, 1]);
        assert_eq!(parse_word(&ab, "").unwrap(), Vec::<usize>::new());
        let long = Alphabet::parse_list("a1,a2").unwrap();
        assert_eq!(parse_word(&long, "a2 a1").unwrap(), vec![1, 0]);
        assert!(parse_word(&long, "a1a2").is_err());
    }

    #[test]
    fn sidecar_sits_next_to_the_instance() {
        assert_eq!(
            sidecar_path(Path::new("out/graph.json")),
            PathBuf::from("out/graph.oracle.json")
        );
    }
}
