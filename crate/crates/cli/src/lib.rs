//! Command implementations behind the `repax` binary. Each command returns a
//! [`CommandOutcome`] instead of printing so it can be driven from tests.
//!
//! Exit codes: 0 for success, a passing check, or SAT; 1 for a failing check
//! or UNSAT; 2 for usage and input errors.

use std::fmt;
use std::io::Read;
use std::path::PathBuf;

use clap::ValueEnum;
use reputation_axioms::axioms::{axioms_for, check, parse_axioms, Axiom, AxiomReport};
use reputation_axioms::engine::{rank, RefinementTrace};
use reputation_axioms::oracle::{Certificate, Certifier};
use reputation_axioms::{parse_graph, parse_ranking, Error, Ranking, ReputationGraph};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub rendered: String,
}

impl CommandOutcome {
    fn ok(rendered: String) -> Self {
        CommandOutcome { exit_code: EXIT_OK, rendered }
    }

    fn verdict(passed: bool, rendered: String) -> Self {
        CommandOutcome {
            exit_code: if passed { EXIT_OK } else { EXIT_FAIL },
            rendered,
        }
    }

    fn error(message: impl fmt::Display) -> Self {
        CommandOutcome {
            exit_code: EXIT_ERROR,
            rendered: format!("error: {message}\n"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Where an input file comes from. `-` on the command line means stdin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Stdin,
    File(PathBuf),
    Inline(String),
}

impl From<&str> for Source {
    fn from(arg: &str) -> Self {
        if arg == "-" {
            Source::Stdin
        } else {
            Source::File(arg.into())
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Stdin => f.write_str("<stdin>"),
            Source::File(p) => write!(f, "{}", p.display()),
            Source::Inline(_) => f.write_str("<inline>"),
        }
    }
}

impl Source {
    fn read(&self) -> Result<String, String> {
        match self {
            Source::Stdin => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| format!("<stdin>: {e}"))?;
                Ok(buf)
            }
            Source::File(p) => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
            Source::Inline(text) => Ok(text.clone()),
        }
    }
}

fn load_graph(source: &Source) -> Result<ReputationGraph, String> {
    parse_graph(&source.read()?).map_err(|e| format!("{source}: {e}"))
}

fn load_ranking(source: &Source) -> Result<Ranking, String> {
    parse_ranking(&source.read()?).map_err(|e| format!("{source}: {e}"))
}

fn resolve_axioms(g: &ReputationGraph, list: Option<&str>) -> Result<Vec<Axiom>, Error> {
    let axioms = match list {
        Some(list) => parse_axioms(list)?,
        None => axioms_for(g.mode()).to_vec(),
    };
    for axiom in &axioms {
        if axiom.mode() != g.mode() {
            return Err(Error::AxiomModeMismatch { axiom: *axiom, mode: g.mode() });
        }
    }
    Ok(axioms)
}

fn ranking_json(r: &Ranking) -> Value {
    Value::Array(
        r.iter()
            .map(|(node, rank)| json!({ "node": node.as_str(), "rank": rank }))
            .collect(),
    )
}

fn trace_comments(trace: &RefinementTrace) -> String {
    let mut out = format!("# initial: {}\n", trace.initial);
    for step in &trace.steps {
        let names = |v: &[reputation_axioms::NodeId]| v.iter().map(|n| n.as_str()).collect::<Vec<_>>().join(" ");
        out.push_str(&format!(
            "# step {}: {} dominates {}; [{}] over [{}]: {}\n",
            step.iteration,
            step.chosen,
            step.witness,
            names(&step.above),
            names(&step.below),
            step.ranking
        ));
    }
    out
}

fn trace_json(trace: &RefinementTrace) -> Value {
    json!({
        "initial": ranking_json(&trace.initial),
        "steps": trace.steps.iter().map(|step| json!({
            "iteration": step.iteration,
            "chosen": step.chosen.as_str(),
            "witness": step.witness.as_str(),
            "above": step.above.iter().map(|n| n.as_str()).collect::<Vec<_>>(),
            "below": step.below.iter().map(|n| n.as_str()).collect::<Vec<_>>(),
            "ranking": ranking_json(&step.ranking),
        })).collect::<Vec<_>>(),
    })
}

fn pretty(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
    s.push('\n');
    s
}

/// Ranks a graph with the engine matching its mode.
pub fn cmd_rank(graph: &Source, trace: bool, format: Format) -> CommandOutcome {
    let g = match load_graph(graph) {
        Ok(g) => g,
        Err(e) => return CommandOutcome::error(e),
    };
    let (ranking, steps) = rank(&g);
    let rendered = match format {
        Format::Text if trace => trace_comments(&steps) + &ranking.to_ranking_file(),
        Format::Text => ranking.to_ranking_file(),
        Format::Json => {
            let mut out = json!({ "ranking": ranking_json(&ranking) });
            if trace {
                out["trace"] = trace_json(&steps);
            }
            pretty(out)
        }
    };
    CommandOutcome::ok(rendered)
}

fn report_json(report: &AxiomReport) -> Value {
    json!({
        "axiom": report.axiom.name(),
        "passed": report.passed,
        "witness": report.witness.as_ref().map(|w| json!({
            "first": w.first.as_str(),
            "second": w.second.as_str(),
            "reason": w.reason,
        })),
    })
}

/// Checks a ranking against `axioms`, or against every axiom of the graph's
/// mode when none are given.
pub fn cmd_check(graph: &Source, ranking: &Source, axioms: Option<&str>, format: Format) -> CommandOutcome {
    if *graph == Source::Stdin && *ranking == Source::Stdin {
        return CommandOutcome::error("only one input can be read from stdin");
    }
    let g = match load_graph(graph) {
        Ok(g) => g,
        Err(e) => return CommandOutcome::error(e),
    };
    let r = match load_ranking(ranking) {
        Ok(r) => r,
        Err(e) => return CommandOutcome::error(e),
    };
    let axioms = match resolve_axioms(&g, axioms) {
        Ok(a) => a,
        Err(e) => return CommandOutcome::error(e),
    };
    let reports: Vec<AxiomReport> = match axioms.iter().map(|&a| check(&g, &r, a)).collect() {
        Ok(reports) => reports,
        Err(e) => return CommandOutcome::error(e),
    };
    let passed = reports.iter().all(|r| r.passed);
    let rendered = match format {
        Format::Text => reports.iter().map(|r| format!("{r}\n")).collect(),
        Format::Json => pretty(json!({ "reports": reports.iter().map(report_json).collect::<Vec<_>>() })),
    };
    CommandOutcome::verdict(passed, rendered)
}

fn certificate_json(cert: &Certificate) -> Value {
    json!({
        "status": if cert.is_sat() { "SAT" } else { "UNSAT" },
        "examined": cert.examined,
        "witness": cert.witness.as_ref().map(ranking_json),
    })
}

/// Searches every preorder of the graph's nodes for one satisfying `axioms`.
pub fn cmd_certify(graph: &Source, axioms: Option<&str>, cap: usize, format: Format) -> CommandOutcome {
    let g = match load_graph(graph) {
        Ok(g) => g,
        Err(e) => return CommandOutcome::error(e),
    };
    let axioms = match resolve_axioms(&g, axioms) {
        Ok(a) => a,
        Err(e) => return CommandOutcome::error(e),
    };
    let cert = match Certifier::new().cap(cap).certify(&g, &axioms) {
        Ok(cert) => cert,
        Err(e) => return CommandOutcome::error(e),
    };
    let rendered = match format {
        Format::Text => cert.to_string(),
        Format::Json => pretty(certificate_json(&cert)),
    };
    CommandOutcome::verdict(cert.is_sat(), rendered)
}

/// Prints the negative-feedback complement of a positive graph.
pub fn cmd_complement(graph: &Source) -> CommandOutcome {
    let g = match load_graph(graph) {
        Ok(g) => g,
        Err(e) => return CommandOutcome::error(e),
    };
    match g.complement() {
        Ok(c) => CommandOutcome::ok(c.to_edge_list()),
        Err(e) => CommandOutcome::error(e),
    }
}
