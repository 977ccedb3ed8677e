//! `nwh`: command-line front end for exact Whittaker module computations.
//!
//! Exit status: 0 on pass, 1 on fail, 2 on usage errors.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use nw_whittaker::algebra::{bracket, WhittakerType};
use nw_whittaker::envelope::{reduce_word, ModuleVector, Strategy};
use nw_whittaker::modules::{basis, submodule_closure, ModuleContext, Truncation};
use nw_whittaker::partitions::{count_even_partitions, count_odd_partitions};
use nw_whittaker::scalar::{format_rational, parse_rational, Rational};
use nw_whittaker::solver::{
    default_mode_bound, singular_vectors, verify, whittaker_space, whittaker_space_universal_with_bound, ContextKind, VerifyParams,
    WhittakerProblem,
};
use nw_whittaker::text::{parse_element, parse_generator, parse_vector};
use nw_whittaker::Error;

#[derive(Parser)]
#[command(name = "nwh", version, about = "Exact computations in Whittaker and Verma modules of the twisted affine Nappi-Witten algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bracket of two generators, e.g. `bracket "A(2)" "B(-1)"`.
    Bracket { x: String, y: String },
    /// Normal form of an element in a module.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        element: String,
        /// Reduce with leftmost swaps instead of the memoized rewriter.
        #[arg(long)]
        leftmost: bool,
        #[command(flatten)]
        opts: Opts,
    },
    /// Action of a generator on an element.
    Act {
        generator: String,
        #[arg(allow_hyphen_values = true)]
        element: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Whittaker vectors inside a truncation window.
    Whittaker {
        #[command(flatten)]
        opts: Opts,
    },
    /// Singular vectors of a Verma module, degree by degree.
    Singular {
        /// Lowest degree searched.
        #[arg(long, default_value_t = 1)]
        min_degree: u32,
        #[command(flatten)]
        opts: Opts,
    },
    /// Reproduce one statement inside a window (2.2, 3.7, 3.8, 4.3, 5.2-5.7).
    Verify {
        id: String,
        #[command(flatten)]
        opts: Opts,
    },
    /// Counting oracles.
    Count {
        #[arg(value_enum)]
        kind: CountKind,
        /// Size (for partitions); ignored for `basis`.
        #[arg(default_value_t = 0)]
        n: u32,
        #[command(flatten)]
        opts: Opts,
    },
    /// Truncated submodule generated by seed elements (put seeds starting
    /// with `-` after `--`).
    Closure {
        #[arg(required = true)]
        seeds: Vec<String>,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    OddPartitions,
    EvenPartitions,
    Basis,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Module {
    Universal,
    Quotient,
    Verma,
}

#[derive(Args, Clone)]
struct Opts {
    #[arg(long, value_enum)]
    module: Option<Module>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    c1: Option<Rational>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    sigma1: Option<Rational>,
    /// `ψ(d(m))` as `m=Q`; repeatable.
    #[arg(long = "d", value_parser = d_arg, allow_hyphen_values = true)]
    d: Vec<(u32, Rational)>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    xi: Option<Rational>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    l: Option<Rational>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long)]
    a0_cap: Option<usize>,
    #[arg(long)]
    kexp_cap: Option<u32>,
    #[arg(long)]
    mode_bound: Option<i64>,
    /// Also write a JSON report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s:?}"))
}

fn d_arg(s: &str) -> Result<(u32, Rational), String> {
    let (m, q) = s.split_once('=').ok_or_else(|| format!("expected m=Q, got {s:?}"))?;
    let m: u32 = m.trim().parse().map_err(|_| format!("bad mode in {s:?}"))?;
    Ok((m, rational_arg(q)?))
}

/// Machine-readable report; field order is part of the format.
#[derive(Serialize)]
struct Report {
    command: String,
    #[serde(serialize_with = "ordered_map")]
    parameters: Vec<(String, String)>,
    basis: Vec<String>,
    dimension: Option<usize>,
    expected_dimension: Option<usize>,
    status: &'static str,
    witnesses: Vec<String>,
    elapsed_ms: u128,
}

fn ordered_map<S: Serializer>(pairs: &[(String, String)], s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(pairs.len()))?;
    for (k, v) in pairs {
        map.serialize_entry(k, v)?;
    }
    map.end()
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            parameters: Vec::new(),
            basis: Vec::new(),
            dimension: None,
            expected_dimension: None,
            status: "pass",
            witnesses: Vec::new(),
            elapsed_ms: 0,
        }
    }

    fn param(&mut self, name: &str, value: impl Into<String>) {
        self.parameters.push((name.to_string(), value.into()));
    }

    fn results(mut self, items: Vec<String>) -> Self {
        self.dimension = Some(items.len());
        self.basis = items;
        self
    }
}

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl Opts {
    fn psi(&self) -> Result<WhittakerType, Error> {
        let zero = Rational::from_integer(0.into());
        WhittakerType::new(
            self.c1.clone().unwrap_or_else(|| zero.clone()),
            self.sigma1.clone().unwrap_or(zero),
            self.d.iter().cloned().collect::<BTreeMap<_, _>>(),
        )
    }

    fn need_rational(value: &Option<Rational>, flag: &str) -> Result<Rational, Failure> {
        value.clone().ok_or_else(|| Failure(format!("--{flag} is required here")))
    }

    fn context(&self, report: &mut Report) -> Result<ModuleContext, Failure> {
        let module = self.module.unwrap_or(Module::Quotient);
        let ctx = match module {
            Module::Universal => ModuleContext::Universal { psi: self.psi()? },
            Module::Quotient => ModuleContext::Quotient { psi: self.psi()?, xi: Self::need_rational(&self.xi, "xi")? },
            Module::Verma => {
                ModuleContext::Verma { xi: Self::need_rational(&self.xi, "xi")?, l: Self::need_rational(&self.l, "l")? }
            }
        };
        report.param("module", ctx.kind_name());
        match &ctx {
            ModuleContext::Universal { psi } => record_psi(report, psi),
            ModuleContext::Quotient { psi, xi } => {
                record_psi(report, psi);
                report.param("xi", format_rational(xi));
            }
            ModuleContext::Verma { xi, l } => {
                report.param("xi", format_rational(xi));
                report.param("l", format_rational(l));
            }
        }
        Ok(ctx)
    }

    fn truncation(&self, report: &mut Report) -> Result<Truncation, Failure> {
        let n = self.max_degree.ok_or_else(|| Failure("--max-degree is required here".into()))?;
        let t = self.a0_cap.unwrap_or(0);
        let k = self.kexp_cap.unwrap_or(0);
        report.param("max_degree", n.to_string());
        report.param("a0_cap", t.to_string());
        report.param("kexp_cap", k.to_string());
        Ok(Truncation::new(n, t).with_kexp_cap(k))
    }

    fn verify_params(&self) -> VerifyParams {
        VerifyParams {
            module: self.module.map(|m| match m {
                Module::Universal => ContextKind::Universal,
                Module::Quotient => ContextKind::Quotient,
                Module::Verma => ContextKind::Verma,
            }),
            c1: self.c1.clone(),
            sigma1: self.sigma1.clone(),
            dvals: self.d.iter().cloned().collect(),
            xi: self.xi.clone(),
            l: self.l.clone(),
            max_degree: self.max_degree,
            a0_cap: self.a0_cap,
            kexp_cap: self.kexp_cap,
            mode_bound: self.mode_bound,
        }
    }
}

fn record_psi(report: &mut Report, psi: &WhittakerType) {
    report.param("c1", format_rational(psi.c1()));
    report.param("sigma1", format_rational(psi.sigma1()));
    let d: Vec<String> = psi.dvals().iter().map(|(m, q)| format!("{m}={}", format_rational(q))).collect();
    report.param("d", d.join(","));
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

/// Runs a command, returning the report, optional JSON path and the text to print.
fn run(cmd: Command) -> Result<(Report, Option<PathBuf>, String), Failure> {
    let started = Instant::now();
    let (mut report, json, text) = match cmd {
        Command::Bracket { x, y } => {
            let mut report = Report::new("bracket");
            report.param("x", x.clone());
            report.param("y", y.clone());
            let value = bracket(parse_generator(&x)?, parse_generator(&y)?)?.to_string();
            (report.results(vec![value.clone()]), None, value)
        }
        Command::Reduce { element, leftmost, opts } => {
            let mut report = Report::new("reduce");
            let ctx = opts.context(&mut report)?;
            report.param("element", element.clone());
            let strategy = if leftmost { Strategy::LeftmostSwap } else { Strategy::RightmostFirst };
            let mut v = ModuleVector::zero();
            for w in parse_element(&element)? {
                v = v.add(&reduce_word(&w, &ctx, strategy));
            }
            let value = v.to_string();
            (report.results(vec![value.clone()]), opts.json, value)
        }
        Command::Act { generator, element, opts } => {
            let mut report = Report::new("act");
            let ctx = opts.context(&mut report)?;
            report.param("generator", generator.clone());
            report.param("element", element.clone());
            let g = parse_generator(&generator)?;
            let v = parse_vector(&element, &ctx)?;
            let value = nw_whittaker::envelope::act(g, &v, &ctx).to_string();
            (report.results(vec![value.clone()]), opts.json, value)
        }
        Command::Whittaker { opts } => {
            let mut report = Report::new("whittaker");
            let ctx = opts.context(&mut report)?;
            let tr = opts.truncation(&mut report)?;
            let bound = opts.mode_bound.unwrap_or(default_mode_bound(tr.max_degree));
            report.param("mode_bound", bound.to_string());
            let items = match &ctx {
                ModuleContext::Universal { psi } => strings(&whittaker_space_universal_with_bound(psi, &tr, bound)),
                _ => strings(&whittaker_space(&WhittakerProblem::new(ctx.clone(), tr).with_mode_bound(bound))?),
            };
            let text = listing(&items);
            (report.results(items), opts.json, text)
        }
        Command::Singular { min_degree, opts } => {
            let mut report = Report::new("singular");
            if opts.module.is_some_and(|m| m != Module::Verma) {
                return Err(Failure("singular vectors live in --module verma".into()));
            }
            let opts = Opts { module: Some(Module::Verma), ..opts };
            let ctx = opts.context(&mut report)?;
            let max = opts.max_degree.ok_or_else(|| Failure("--max-degree is required here".into()))?;
            report.param("min_degree", min_degree.to_string());
            report.param("max_degree", max.to_string());
            let mut items = Vec::new();
            let mut lines = Vec::new();
            for d in min_degree.max(1)..=max {
                let found = singular_vectors(&ctx, d)?;
                lines.push(format!("degree {d}: {}", found.len()));
                lines.extend(found.iter().map(|v| format!("  {v}")));
                items.extend(strings(&found));
            }
            (report.results(items), opts.json, lines.join("\n"))
        }
        Command::Verify { id, opts } => {
            let r = verify(&id, &opts.verify_params())?;
            let mut report = Report::new("verify");
            report.param("theorem", r.theorem.clone());
            report.parameters.extend(r.parameters.iter().cloned());
            report.basis = r.basis.clone();
            report.dimension = Some(r.dimension);
            report.expected_dimension = r.expected_dimension;
            report.status = if r.pass { "pass" } else { "fail" };
            report.witnesses = r.witnesses.clone();
            let mut lines = vec![r.to_string()];
            if !r.expected.is_empty() {
                lines.push("expected span:".into());
                lines.extend(r.expected.iter().map(|v| format!("  {v}")));
            }
            if !r.witnesses.is_empty() {
                lines.push("witnesses:".into());
                lines.extend(r.witnesses.iter().map(|v| format!("  {v}")));
            }
            (report, opts.json, lines.join("\n"))
        }
        Command::Count { kind, n, opts } => {
            let mut report = Report::new("count");
            let value = match kind {
                CountKind::OddPartitions => {
                    report.param("kind", "odd-partitions");
                    report.param("n", n.to_string());
                    count_odd_partitions(n)
                }
                CountKind::EvenPartitions => {
                    report.param("kind", "even-partitions");
                    report.param("n", n.to_string());
                    count_even_partitions(n)
                }
                CountKind::Basis => {
                    report.param("kind", "basis");
                    let ctx = opts.context(&mut report)?;
                    let tr = opts.truncation(&mut report)?;
                    basis(&ctx, &tr).len() as u64
                }
            };
            let value = value.to_string();
            (report.results(vec![value.clone()]), opts.json, value)
        }
        Command::Closure { seeds, opts } => {
            let mut report = Report::new("closure");
            let ctx = opts.context(&mut report)?;
            let tr = opts.truncation(&mut report)?;
            let bound = opts.mode_bound.unwrap_or(default_mode_bound(tr.max_degree));
            report.param("mode_bound", bound.to_string());
            report.param("seeds", seeds.join("; "));
            let vs = seeds.iter().map(|s| parse_vector(s, &ctx)).collect::<Result<Vec<_>, _>>()?;
            let closure = submodule_closure(&vs, &ctx, &tr, bound);
            let has_cyclic = closure.contains(&ModuleVector::cyclic());
            report.param("ambient_dimension", closure.ambient_dim().to_string());
            report.param("contains_cyclic", has_cyclic.to_string());
            let items = strings(&closure.vectors());
            let text = format!("dimension {} of {}; contains w: {has_cyclic}", closure.dim(), closure.ambient_dim());
            (report.results(items), opts.json, text)
        }
    };
    report.elapsed_ms = started.elapsed().as_millis();
    Ok((report, json, text))
}

fn listing(items: &[String]) -> String {
    let mut lines = vec![format!("dimension {}", items.len())];
    lines.extend(items.iter().map(|v| format!("  {v}")));
    lines.join("\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((report, json, text)) => {
            println!("{text}");
            if let Some(path) = json {
                let body = serde_json::to_string_pretty(&report).expect("report serializes");
                if let Err(e) = std::fs::write(&path, body + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if report.status == "pass" {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
