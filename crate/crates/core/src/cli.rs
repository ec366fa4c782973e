//! Command-line front end. Multi-leaf flags take `;`-separated blocks
//! aligned with the expression slots.
//!
//! Exit status: 0 on success, 1 when a check fails or a result breaks an
//! invariant, 2 on usage, parse and bound errors.

use std::fs;
use std::io::{self, Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::algebra::{infer_signature, parse_expr, pushforward_expr, sample_expr};
use crate::error::{Error, Result};
use crate::hypergraph::{parse_records, Hypergraph, HypergraphClass, VertexSet};
use crate::prob::{parse_map_spec, ModelDescriptor, ModelFamily, ProbabilityMap};
use crate::sampler::{batch_header, sample_batch, SampleStream};
use crate::verify::{all_passed, enumerate_hypergraphs, exact_table, run_check, CheckParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "hypermap", version, about = "Random hypergraphs, complexes and independence hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Draw samples from a model or from an expression over P̄ leaves.
    Sample {
        #[arg(long, conflicts_with = "model", required_unless_present = "model")]
        expr: Option<String>,
        /// pbar, p or q.
        #[arg(long)]
        model: Option<String>,
        /// Vertex sets, one per leaf, separated by `;`.
        #[arg(long)]
        vertices: String,
        /// Probability specs, one per leaf or one for all leaves.
        #[arg(long, default_value = "const:0.5")]
        p: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
    },
    /// Run a named check and print one line per comparison.
    Verify {
        #[arg(long)]
        check: String,
        #[arg(long)]
        vertices: Option<String>,
        #[arg(long)]
        p: Option<String>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200_000)]
        trials: u64,
        /// Replaces every floating-point threshold.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Apply an expression to hypergraphs read from files (`-` for stdin).
    Eval {
        #[arg(long)]
        expr: String,
        /// Repeatable; records are taken in order across all files.
        #[arg(long, required = true)]
        input: Vec<String>,
    },
    /// List every hypergraph on a vertex set, optionally of one class.
    Enumerate {
        #[arg(long)]
        vertices: String,
        /// complex, indep, both or neither.
        #[arg(long)]
        class: Option<String>,
    },
    /// Print an exact distribution table.
    Dist {
        #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
        model: Option<String>,
        /// Pushforward of independent P̄ leaves.
        #[arg(long)]
        expr: Option<String>,
        #[arg(long)]
        vertices: String,
        #[arg(long, default_value = "const:0.5")]
        p: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// `index<TAB>mass` per line.
    Text,
    /// Each hypergraph with a `# index= mass=` comment.
    Full,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Sample { expr, model, vertices, p, seed, trials } => {
            cmd_sample(expr.as_deref(), model.as_deref(), &vertices, &p, seed, trials, out)
        }
        Command::Verify { check, vertices, p, seed, trials, tol } => {
            let params = CheckParams {
                vertex_sets: vertices.as_deref().map(parse_vertex_sets).transpose()?,
                maps: p.map(|p| split_blocks(&p)),
                seed,
                trials,
                tol,
            };
            cmd_verify(&check, &params, out)
        }
        Command::Eval { expr, input } => cmd_eval(&expr, &input, out),
        Command::Enumerate { vertices, class } => cmd_enumerate(&vertices, class.as_deref(), out),
        Command::Dist { model, expr, vertices, p, format } => {
            cmd_dist(model.as_deref(), expr.as_deref(), &vertices, &p, format, out)
        }
    }
}

fn split_blocks(text: &str) -> Vec<String> {
    text.split(';').map(|s| s.trim().to_string()).collect()
}

/// `a,b;c,d` → two vertex sets.
pub fn parse_vertex_sets(text: &str) -> Result<Vec<VertexSet>> {
    split_blocks(text).iter().map(|b| VertexSet::parse_list(b)).collect()
}

/// One map per vertex set; a single spec is used for every set.
fn parse_maps(specs: &str, sets: &[VertexSet]) -> Result<Vec<ProbabilityMap>> {
    let specs = split_blocks(specs);
    if specs.len() != 1 && specs.len() != sets.len() {
        return Err(Error::InvalidMapSpec {
            spec: specs.join(";"),
            reason: format!("expected 1 or {} specs, one per vertex set", sets.len()),
        });
    }
    sets.iter()
        .enumerate()
        .map(|(i, v)| parse_map_spec(&specs[if specs.len() == 1 { 0 } else { i }], v))
        .collect()
}

fn parse_family(word: &str) -> Result<ModelFamily> {
    ModelFamily::from_keyword(word).ok_or_else(|| Error::InvalidMapSpec {
        spec: word.to_string(),
        reason: "model must be pbar, p or q".into(),
    })
}

fn single_model(model: &str, vertices: &str, p: &str) -> Result<ModelDescriptor> {
    let sets = parse_vertex_sets(vertices)?;
    if sets.len() != 1 {
        return Err(Error::InvalidVertexSet("a model takes exactly one vertex set".into()));
    }
    let map = parse_maps(p, &sets)?.remove(0);
    Ok(ModelDescriptor::new(parse_family(model)?, map))
}

fn cmd_sample(
    expr: Option<&str>,
    model: Option<&str>,
    vertices: &str,
    p: &str,
    seed: u64,
    trials: u64,
    out: &mut dyn Write,
) -> Result<i32> {
    writeln!(out, "{}", batch_header())?;
    if let Some(model) = model {
        let model = single_model(model, vertices, p)?;
        for s in sample_batch(&model, seed, trials) {
            write!(out, "{}", s.to_record())?;
        }
        return Ok(EXIT_OK);
    }
    let e = parse_expr(expr.expect("clap requires --expr or --model"))?;
    let sets = parse_vertex_sets(vertices)?;
    let maps = parse_maps(p, &sets)?;
    let bound = infer_signature(&e, &sets)?.result_class_bound;
    let samples = (0..trials)
        .into_par_iter()
        .map(|trial| sample_expr(&e, &maps, &mut SampleStream::for_trial(seed, trial)))
        .collect::<Result<Vec<_>>>()?;
    let mut code = EXIT_OK;
    for s in samples {
        write!(out, "{}", s.to_record())?;
        if !bound.admits(s.hypergraph.classify()) {
            code = EXIT_FAIL;
        }
    }
    Ok(code)
}

fn cmd_verify(check: &str, params: &CheckParams, out: &mut dyn Write) -> Result<i32> {
    let reports = run_check(check, params)?;
    for r in &reports {
        writeln!(out, "{r}")?;
    }
    Ok(if all_passed(&reports) { EXIT_OK } else { EXIT_FAIL })
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn cmd_eval(expr: &str, inputs: &[String], out: &mut dyn Write) -> Result<i32> {
    let e = parse_expr(expr)?;
    let mut hypergraphs: Vec<Hypergraph> = Vec::new();
    for path in inputs {
        hypergraphs.extend(parse_records(&read_input(path)?)?.into_iter().map(|r| r.hypergraph));
    }
    write!(out, "{}", crate::algebra::eval_expr(&e, &hypergraphs)?)?;
    Ok(EXIT_OK)
}

fn parse_class(word: &str) -> Result<Option<HypergraphClass>> {
    match word {
        "any" | "all" => Ok(None),
        "complex" => Ok(Some(HypergraphClass::Complex)),
        "indep" | "independence" => Ok(Some(HypergraphClass::Independence)),
        "both" => Ok(Some(HypergraphClass::Both)),
        "neither" => Ok(Some(HypergraphClass::Neither)),
        _ => Err(Error::InvalidVertexSet(format!("unknown class `{word}`; use complex, indep, both, neither or any"))),
    }
}

fn cmd_enumerate(vertices: &str, class: Option<&str>, out: &mut dyn Write) -> Result<i32> {
    let sets = parse_vertex_sets(vertices)?;
    let filter = class.map(parse_class).transpose()?.flatten();
    for v in &sets {
        for h in enumerate_hypergraphs(v, filter)? {
            write!(out, "{h}")?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_dist(
    model: Option<&str>,
    expr: Option<&str>,
    vertices: &str,
    p: &str,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let table = match (model, expr) {
        (Some(model), _) => exact_table(&single_model(model, vertices, p)?)?,
        (None, Some(expr)) => {
            let sets = parse_vertex_sets(vertices)?;
            let leaves = parse_maps(p, &sets)?
                .into_iter()
                .map(|m| exact_table(&ModelDescriptor::new(ModelFamily::PBar, m)))
                .collect::<Result<Vec<_>>>()?;
            pushforward_expr(&parse_expr(expr)?, &leaves)?
        }
        (None, None) => unreachable!("clap requires --model or --expr"),
    };
    match format {
        Format::Text => write!(out, "{}", table.render_masses())?,
        Format::Full => write!(out, "{}", table.render_full())?,
    }
    Ok(EXIT_OK)
}

/// Entry point for the binary.
pub fn main_exit() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = run(std::env::args_os(), &mut out, &mut stderr.lock());
    if out.flush().is_err() {
        return EXIT_FAIL;
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("hypermap").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn vertex_blocks() {
        let sets = parse_vertex_sets("a,b; c,(d,e)").unwrap();
        assert_eq!(sets[1].labels(), ["c", "(d,e)"]);
    }

    #[test]
    fn broadcast_and_aligned_maps() {
        let sets = parse_vertex_sets("a;b").unwrap();
        assert_eq!(parse_maps("const:0.5", &sets).unwrap().len(), 2);
        assert_eq!(parse_maps("const:0.5;const:1", &sets).unwrap()[1].to_string(), "const:1");
        assert!(parse_maps("const:0.5;const:1;const:0", &sets).is_err());
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["sample", "--vertices", "a"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--check", "nope"]).0, EXIT_USAGE);
        assert_eq!(call(&["enumerate", "--vertices", "a", "--class", "odd"]).0, EXIT_USAGE);
        let (code, _, err) = call(&["dist", "--model", "pbar", "--vertices", "a,b,c,d,e"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("enumeration bound"), "{err}");
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("enumerate"));
    }
}
