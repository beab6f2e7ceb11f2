//! `hurwitz`: realize presentations, enumerate Hurwitz orbits and run the
//! orbit-size checks from the command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a property failed,
//! 3 a cap left the answer inconclusive (only under `--strict`, except for
//! `realize`, which has no partial answer).

use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hurwitz_orbits::equalities::{check_double_reverse, conjecture_scan, Verdict, WordTuple};
use hurwitz_orbits::groups::{Backend, Group};
use hurwitz_orbits::hurwitz::{orbit, ExportOptions, Factorization, OrbitSize, DEFAULT_NODE_CAP};
use hurwitz_orbits::presentations::{check_reversible, Presentation, ReversibilityStatus};
use hurwitz_orbits::suites::{
    realize_named, run_suite, NamedGroup, SuiteConfig, SuiteError, TheoremSuite,
};
use hurwitz_orbits::toddcoxeter::{enumerate, Enumeration, DEFAULT_COSET_CAP};

const EXIT_USAGE: u8 = 1;
const EXIT_PROPERTY: u8 = 2;
const EXIT_CAPPED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hurwitz",
    version,
    about = "Hurwitz orbits of factorizations in finite groups"
)]
struct Cli {
    /// Largest orbit to enumerate before reporting a lower bound.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_CAP, value_parser = positive)]
    node_cap: usize,
    /// Most cosets alive at once during enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_COSET_CAP, value_parser = positive)]
    coset_cap: usize,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Treat cap-inconclusive results as failures (exit code 3).
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Args)]
struct Source {
    /// A named group: g4, g6, q8-ab, q8-ijk, dihedral-rs:N, dihedral-inv:N,
    /// shephard:P,..:Q,.., coxeter:M,.. or sN for a symmetric group.
    #[arg(long, conflicts_with = "presentation")]
    builtin: Option<String>,
    /// A presentation such as "<a, b | a^3, b^2>", or a file holding one.
    #[arg(long)]
    presentation: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Realize a group and print its order, generator orders and
    /// reversibility.
    Realize {
        /// Presentation text or file (alternative to --presentation).
        text: Option<String>,
        #[command(flatten)]
        source: Source,
        /// Print the full action table as JSON instead of a summary.
        #[arg(long)]
        table: bool,
    },
    /// Enumerate the Hurwitz orbit of a factorization.
    Orbit {
        /// Factors: words separated by commas, or one letter per factor;
        /// for sN, cycle literals such as "(1 2) (2 3)".
        factors: String,
        #[command(flatten)]
        source: Source,
        /// Emit the orbit graph instead of its size.
        #[arg(long, value_enum)]
        graph: Option<GraphFormat>,
        /// Keep edges for moves that fix a member.
        #[arg(long)]
        self_loops: bool,
    },
    /// Run a property suite on sampled inputs.
    Check {
        /// pair-swap, pair-inverse, cycle, flip-inverse, conjugate,
        /// involution-reverse, double-reverse, closed-form or mirror-moves.
        theorem: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Exponent range for closed-form.
        #[arg(long, default_value_t = 20)]
        range: i64,
        /// Groups to sample from (repeatable); defaults depend on the suite.
        #[arg(long)]
        builtin: Vec<String>,
    },
    /// Compare orbit sizes of all arrangements of small multisets over
    /// {a, b, a^-1} in G6.
    ScanG6 {
        #[arg(long, default_value_t = 4, value_parser = positive)]
        max_len: usize,
    },
    /// Decide whether a presentation has reversible relations.
    Reversible {
        text: Option<String>,
        #[command(flatten)]
        source: Source,
        /// Show the verdict for every relator.
        #[arg(long)]
        explain: bool,
    },
    /// Compare the orbit of a word tuple with that of its double reverse.
    DoubleReverse {
        words: String,
        #[command(flatten)]
        source: Source,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Realize {
            text,
            source,
            table,
        } => realize(cli, text.as_deref(), source, *table),
        Command::Orbit {
            factors,
            source,
            graph,
            self_loops,
        } => orbit_cmd(cli, factors, source, *graph, *self_loops),
        Command::Check {
            theorem,
            samples,
            range,
            builtin,
        } => check(cli, theorem, *samples, *range, builtin),
        Command::ScanG6 { max_len } => scan(cli, *max_len),
        Command::Reversible {
            text,
            source,
            explain,
        } => reversible(cli, text.as_deref(), source, *explain),
        Command::DoubleReverse { words, source } => double_reverse(cli, words, source),
    }
}

fn format(cli: &Cli, allowed: &[Format]) -> Result<Format> {
    let f = cli.format.unwrap_or(allowed[0]);
    if !allowed.contains(&f) {
        bail!("this command does not support that --format");
    }
    Ok(f)
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    );
}

/// Resolves a group from a name or presentation text.
fn resolve(cli: &Cli, text: Option<&str>, source: &Source) -> Result<NamedGroup> {
    match (
        text,
        source.builtin.as_deref(),
        source.presentation.as_deref(),
    ) {
        (None, Some(name), None) => {
            realize_named(name, cli.coset_cap).with_context(|| format!("cannot realize {name}"))
        }
        (Some(t), None, None) | (None, None, Some(t)) => {
            // Presentation text always opens with '<'; anything else is a path.
            let owned;
            let t = if t.trim_start().starts_with('<') {
                t
            } else {
                owned = std::fs::read_to_string(t).with_context(|| format!("cannot read {t}"))?;
                owned.as_str()
            };
            let p: Presentation = t.parse().context("cannot parse presentation")?;
            match enumerate(&p, cli.coset_cap)? {
                Enumeration::Complete(r) => Ok(NamedGroup {
                    name: p.to_string(),
                    group: Arc::new(Group::from_realization(r)),
                }),
                Enumeration::Capped { live, defined } => Err(CapExceeded(format!(
                    "coset enumeration exceeded --coset-cap {} ({live} live, {defined} defined)",
                    cli.coset_cap
                ))
                .into()),
            }
        }
        (None, None, None) => bail!("give a presentation or --builtin NAME"),
        _ => bail!("give exactly one of a presentation or --builtin NAME"),
    }
}

#[derive(Debug)]
struct CapExceeded(String);

impl std::fmt::Display for CapExceeded {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CapExceeded {}

fn resolve_or_cap(
    cli: &Cli,
    text: Option<&str>,
    source: &Source,
) -> Result<std::result::Result<NamedGroup, u8>> {
    match resolve(cli, text, source) {
        Ok(g) => Ok(Ok(g)),
        Err(e) => match e.downcast_ref::<CapExceeded>() {
            Some(c) => {
                eprintln!("error: {c}");
                Ok(Err(EXIT_CAPPED))
            }
            None => Err(e),
        },
    }
}

fn realize(cli: &Cli, text: Option<&str>, source: &Source, table: bool) -> Result<u8> {
    let named = match resolve_or_cap(cli, text, source)? {
        Ok(g) => g,
        Err(code) => return Ok(code),
    };
    let group = &named.group;
    if table {
        let r = group
            .realization()
            .ok_or_else(|| anyhow!("--table needs a group given by a presentation"))?;
        println!("{}", r.to_json());
        return Ok(0);
    }
    let generators: Vec<(String, usize)> = group
        .generators()
        .iter()
        .map(|(n, g)| (n.clone(), group.element_order(*g)))
        .collect();
    let report = match group.realization() {
        Some(r) => Some(check_reversible(r.origin(), Some(r), false)?),
        None => None,
    };
    match format(cli, &[Format::Text, Format::Json])? {
        Format::Json => print_json(&json!({
            "group": named.name,
            "order": group.order(),
            "generators": generators.iter().map(|(n, o)| json!({"name": n, "order": o})).collect::<Vec<_>>(),
            "reversibility": report,
            "witness_value": report.as_ref().and_then(|r| r.witness.as_ref()).map(|w| group.label(w.value)),
        })),
        _ => {
            println!("order: {}", group.order());
            let gens: Vec<String> = generators
                .iter()
                .map(|(n, o)| format!("{n} (order {o})"))
                .collect();
            println!("generators: {}", gens.join(", "));
            match &report {
                None => println!("reversible: n/a (not given by a presentation)"),
                Some(r) => match (&r.status, &r.witness) {
                    (ReversibilityStatus::Reversible, _) => println!("reversible: yes"),
                    (ReversibilityStatus::NotReversible, Some(w)) => println!(
                        "reversible: no (witness: relator {}, reverse {} = {})",
                        w.relator,
                        w.reverse,
                        group.label(w.value)
                    ),
                    _ => println!("reversible: unknown"),
                },
            }
        }
    }
    Ok(0)
}

/// Splits `text` at commas outside parentheses.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// Factor literals for permutation groups: comma-separated products of
/// cycles, or one cycle per factor when there are no top-level commas.
fn permutation_factors(
    group: &Group,
    text: &str,
) -> Result<Vec<hurwitz_orbits::toddcoxeter::ElementId>> {
    let pieces: Vec<String> = if split_top_level(text).len() > 1 {
        split_top_level(text)
            .into_iter()
            .map(|s| s.trim().to_string())
            .collect()
    } else {
        let mut out = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let end = rest
                .find(')')
                .ok_or_else(|| anyhow!("unbalanced cycle literal in {text:?}"))?;
            out.push(rest[..=end].trim().to_string());
            rest = rest[end + 1..].trim_start();
        }
        out
    };
    pieces
        .iter()
        .map(|p| group.permutation_element(p).map_err(Into::into))
        .collect()
}

fn parse_factorization(named: &NamedGroup, text: &str) -> Result<Factorization> {
    let group = &named.group;
    let factors = match group.backend() {
        Backend::Permutation(_) => permutation_factors(group, text)?,
        _ => {
            let r = group
                .realization()
                .ok_or_else(|| anyhow!("{} has no word syntax", named.name))?;
            let words = r
                .origin()
                .parse_word_tuple(text)
                .context("cannot parse factors")?;
            words
                .iter()
                .map(|w| group.evaluate(w))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    Ok(Factorization::new(Arc::clone(group), factors)?)
}

fn orbit_cmd(
    cli: &Cli,
    factors: &str,
    source: &Source,
    graph: Option<GraphFormat>,
    self_loops: bool,
) -> Result<u8> {
    let named = match resolve_or_cap(cli, None, source)? {
        Ok(g) => g,
        Err(code) => return Ok(code),
    };
    let f = parse_factorization(&named, factors)?;
    let out_format = format(cli, &[Format::Text, Format::Json, Format::Dot])?;
    let graph = match (graph, out_format) {
        (Some(g), _) => Some(g),
        (None, Format::Dot) => Some(GraphFormat::Dot),
        _ => None,
    };
    let o = orbit(&f, cli.node_cap)?;
    if let Some(g) = graph {
        let options = ExportOptions { self_loops };
        let text = match g {
            GraphFormat::Dot => o.to_dot(options)?,
            GraphFormat::Json => o.to_json(options)?,
        };
        print!("{text}");
        return Ok(0);
    }
    let size = if o.is_capped() {
        OrbitSize::AtLeast(o.size())
    } else {
        OrbitSize::Finite(o.size())
    };
    if out_format == Format::Json {
        print_json(&json!({
            "factors": f.labels(),
            "size": o.size(),
            "capped": o.is_capped(),
        }));
    } else {
        match size {
            OrbitSize::Finite(n) => println!("{n}"),
            OrbitSize::AtLeast(n) => println!(">={n} (capped; raise --node-cap)"),
        }
    }
    Ok(if o.is_capped() && cli.strict {
        EXIT_CAPPED
    } else {
        0
    })
}

fn check(cli: &Cli, theorem: &str, samples: usize, range: i64, builtin: &[String]) -> Result<u8> {
    let suite: TheoremSuite = theorem.parse()?;
    let names: Vec<String> = if builtin.is_empty() {
        suite
            .default_groups()
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        builtin.to_vec()
    };
    let groups = names
        .iter()
        .map(|n| realize_named(n, cli.coset_cap).with_context(|| format!("cannot realize {n}")))
        .collect::<Result<Vec<_>>>()?;
    let config = SuiteConfig {
        samples,
        seed: cli.seed,
        node_cap: cli.node_cap,
        range,
        ..SuiteConfig::default()
    };
    let report = match run_suite(suite, &groups, &config) {
        Ok(r) => r,
        Err(e @ (SuiteError::NotReversible { .. } | SuiteError::NeedsPresentation(_))) => {
            eprintln!("refused: {e}");
            return Ok(EXIT_USAGE);
        }
        Err(e) => return Err(e.into()),
    };
    let failed = report.failed() > 0;
    let inconclusive = report.inconclusive() > 0;
    let pass = !failed && !(cli.strict && inconclusive);
    match format(cli, &[Format::Text, Format::Json])? {
        Format::Json => print_json(&json!({ "report": report, "pass": pass })),
        _ => {
            for g in &report.groups {
                println!(
                    "{}: {} passed, {} failed, {} inconclusive",
                    g.group, g.passed, g.failed, g.inconclusive
                );
            }
            for msg in &report.failures {
                println!("failure: {msg}");
            }
            println!("{suite}: {}", if pass { "pass" } else { "fail" });
        }
    }
    Ok(if failed {
        EXIT_PROPERTY
    } else if cli.strict && inconclusive {
        EXIT_CAPPED
    } else {
        0
    })
}

fn scan(cli: &Cli, max_len: usize) -> Result<u8> {
    let g6 = realize_named("g6", cli.coset_cap)?;
    let report = conjecture_scan(&g6.group, max_len, cli.node_cap)?;
    match format(cli, &[Format::Csv, Format::Json, Format::Text])? {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Text => {
            for m in &report.multisets {
                let sizes: Vec<String> = m.sizes.iter().map(ToString::to_string).collect();
                println!(
                    "{:<24} sizes {{{}}}{}{}",
                    m.multiset,
                    sizes.join(", "),
                    if m.candidate { "  CANDIDATE" } else { "" },
                    if m.inconclusive > 0 { "  (capped)" } else { "" },
                );
            }
        }
        _ => {
            let csv = report.to_csv()?;
            std::io::stdout().write_all(csv.as_bytes())?;
        }
    }
    eprintln!("{}", report.summary());
    Ok(if cli.strict && report.inconclusive() > 0 {
        EXIT_CAPPED
    } else {
        0
    })
}

fn reversible(cli: &Cli, text: Option<&str>, source: &Source, explain: bool) -> Result<u8> {
    let named = match resolve_or_cap(cli, text, source)? {
        Ok(g) => g,
        Err(code) => return Ok(code),
    };
    let r = named
        .group
        .realization()
        .ok_or_else(|| anyhow!("{} is not given by a presentation", named.name))?;
    let report = check_reversible(r.origin(), Some(r), explain)?;
    match format(cli, &[Format::Text, Format::Json])? {
        Format::Json => print_json(&json!({
            "report": report,
            "witness_value": report.witness.as_ref().map(|w| named.group.label(w.value)),
        })),
        _ => {
            let status = match report.status {
                ReversibilityStatus::Reversible => "reversible",
                ReversibilityStatus::NotReversible => "not reversible",
                ReversibilityStatus::Unknown => "unknown",
            };
            println!("{status}");
            if let Some(w) = &report.witness {
                println!(
                    "witness: relator {} has reverse {} = {}",
                    w.relator,
                    w.reverse,
                    named.group.label(w.value)
                );
            }
            for d in &report.details {
                let shortcut = d
                    .shortcut
                    .map(|s| {
                        format!(
                            " [{}]",
                            serde_json::to_value(s)
                                .expect("enum")
                                .as_str()
                                .unwrap_or("")
                        )
                    })
                    .unwrap_or_default();
                println!(
                    "  {}  reverse {}  {}{}",
                    d.relator,
                    d.reverse,
                    if d.reverse_is_identity { "= 1" } else { "!= 1" },
                    shortcut
                );
            }
        }
    }
    Ok(0)
}

fn double_reverse(cli: &Cli, words: &str, source: &Source) -> Result<u8> {
    let named = match resolve_or_cap(cli, None, source)? {
        Ok(g) => g,
        Err(code) => return Ok(code),
    };
    let r = named
        .group
        .realization()
        .ok_or_else(|| anyhow!("{} is not given by a presentation", named.name))?;
    let tuple = WordTuple::new(r.origin().parse_word_tuple(words)?)?;
    let reversible =
        check_reversible(r.origin(), Some(r), false)?.status == ReversibilityStatus::Reversible;
    let report = check_double_reverse(&named.group, &tuple, reversible, cli.node_cap)?;
    match format(cli, &[Format::Text, Format::Json])? {
        Format::Json => println!("{}", report.to_json()),
        _ => {
            println!("tuple:          {tuple}");
            println!("double reverse: {}", tuple.double_reverse());
            println!(
                "sizes:          {} vs {}",
                report.size_left, report.size_right
            );
            let verdict = match report.verdict {
                Verdict::Equal => "equal",
                Verdict::Unequal => "unequal",
                Verdict::Inconclusive => "inconclusive",
            };
            let note = if report.guaranteed {
                ""
            } else {
                " (no guarantee: presentation is not reversible)"
            };
            println!("verdict:        {verdict}{note}");
        }
    }
    Ok(match report.verdict {
        Verdict::Unequal if report.guaranteed => EXIT_PROPERTY,
        Verdict::Inconclusive if cli.strict => EXIT_CAPPED,
        _ => 0,
    })
}
