//! The `chipfire` command line.
//!
//! Exit codes: 0 on success, 1 for bad input or inadmissible parameters
//! (usage errors included), 2 when a computed result breaks an invariant.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{self, BenchConfig, Task};
use crate::burning::{self, TraceOptions};
use crate::divisor::canonical;
use crate::families::Family;
use crate::gonality::{self, SearchOptions};
use crate::{BurnTrace, Divisor, Error, Multigraph, Result};

#[derive(Debug, Parser)]
#[command(name = "chipfire", version, about = "Divisors, rank and gonality on multigraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a family member in the graph text format.
    Family {
        /// path, cycle, complete, bipartite, banana, genbanana, descbanana, chain or random.
        #[arg(long)]
        name: String,
        /// Comma separated `key=value` list, e.g. `n=5` or `mults=3:2:2`.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the rank of a divisor.
    Rank {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        divisor: DivisorArg,
    },
    /// Print the q-reduced divisor equivalent to the input.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        chips: String,
        #[arg(long, default_value_t = 0)]
        q: usize,
        /// Append pass count, firings and beta log as CSV rows.
        #[arg(long)]
        trace: bool,
    },
    /// Print an effective equivalent divisor, or `NONE`.
    Eff {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        chips: String,
        #[arg(long)]
        trace: bool,
    },
    /// Compute gon_r with a witness divisor.
    Gon {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        reduced_only: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print gon_1 ..= gon_upto, one per line.
    Sequence {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        upto: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print the tabulated sequence for a genus and first gonality.
    Expected {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        gon1: usize,
        #[arg(long)]
        gon2: Option<usize>,
        #[arg(long)]
        upto: usize,
    },
    /// Check the general identities on one graph.
    Verify {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Time the three winnability pipelines on random graphs.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct DivisorArg {
    /// File holding one line of chip counts.
    #[arg(long)]
    divisor: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    chips: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TaskArg {
    DecideRank,
    Gonality,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 5)]
    n_min: usize,
    #[arg(long, default_value_t = 12)]
    n_max: usize,
    #[arg(long, default_value_t = 19)]
    graphs_per_n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, value_enum, default_value_t = TaskArg::DecideRank)]
    task: TaskArg,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Tab-separated plot data; defaults to the summary path with a `.dat` extension.
    #[arg(long)]
    gnuplot: Option<PathBuf>,
}

fn read_graph(path: &Path) -> Result<Multigraph> {
    Multigraph::parse(&fs::read_to_string(path)?)
}

fn parse_chips(g: &Multigraph, text: &str) -> Result<Divisor> {
    let d: Divisor = text.parse()?;
    if d.len() != g.num_vertices() {
        return Err(Error::DimensionMismatch { expected: g.num_vertices(), actual: d.len() });
    }
    Ok(d)
}

fn write_trace(out: &mut dyn Write, trace: &BurnTrace) -> Result<()> {
    let join = |xs: &[i64]| xs.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    writeln!(out, "passes,{}", trace.passes)?;
    writeln!(out, "firings,{}", trace.firings.counts().iter().map(i64::to_string).collect::<Vec<_>>().join(","))?;
    for rec in &trace.beta_log {
        writeln!(out, "beta,{},{},{},{}", rec.pass, rec.vertex, join(&rec.before), join(&rec.after))?;
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Family { name, params, out: path } => {
            let g = Family::from_params(&name, &params)?.build()?;
            match path {
                Some(p) => fs::write(p, g.to_text())?,
                None => out.write_all(g.to_text().as_bytes())?,
            }
        }
        Command::Rank { graph, divisor } => {
            let g = read_graph(&graph)?;
            let text = match (divisor.divisor, divisor.chips) {
                (Some(path), _) => fs::read_to_string(path)?,
                (None, Some(chips)) => chips,
                (None, None) => unreachable!("clap requires one divisor source"),
            };
            let d = parse_chips(&g, &text)?;
            writeln!(out, "{}", gonality::rank(&g, &d)?)?;
        }
        Command::Reduce { graph, chips, q, trace } => {
            let g = read_graph(&graph)?;
            let d = parse_chips(&g, &chips)?;
            let opts = TraceOptions { log_beta: trace, record_states: false };
            let run = burning::reduce_traced(&g, q, &d, opts)?;
            writeln!(out, "{}", run.divisor)?;
            if trace {
                write_trace(out, &run.trace)?;
            }
        }
        Command::Eff { graph, chips, trace } => {
            let g = read_graph(&graph)?;
            let d = parse_chips(&g, &chips)?;
            let opts = TraceOptions { log_beta: trace, record_states: false };
            let run = burning::modified_dhar_traced(&g, &d, opts)?;
            match run.divisor() {
                Some(e) => writeln!(out, "{e}")?,
                None => writeln!(out, "NONE")?,
            }
            if trace {
                write_trace(out, &run.trace)?;
            }
        }
        Command::Gon { graph, r, reduced_only, jobs } => {
            let g = read_graph(&graph)?;
            let w = gonality::gonality(&g, r, &SearchOptions { reduced_only, jobs })?;
            writeln!(out, "gon_{r} = {}", w.value)?;
            writeln!(out, "witness = {}", w.witness)?;
        }
        Command::Sequence { graph, upto, jobs } => {
            let g = read_graph(&graph)?;
            let seq = gonality::gonality_sequence_with(&g, upto, &SearchOptions { reduced_only: false, jobs })?;
            for t in &seq.terms {
                writeln!(out, "{t}")?;
            }
        }
        Command::Expected { genus, gon1, gon2, upto } => {
            let seq = gonality::expected_sequence(genus, gon1, gon2, upto)?;
            writeln!(out, "{seq}")?;
        }
        Command::Verify { graph } => {
            let g = read_graph(&graph)?;
            verify(&g, out)?;
        }
        Command::Bench(a) => {
            let cfg = BenchConfig {
                n_min: a.n_min,
                n_max: a.n_max,
                graphs_per_n: a.graphs_per_n,
                p: a.p,
                seed: a.seed,
                r: a.r,
                task: match a.task {
                    TaskArg::DecideRank => Task::DecideRank,
                    TaskArg::Gonality => Task::Gonality,
                },
                reps: a.reps,
                ..BenchConfig::default()
            };
            let rows = bench::run_bench(&cfg)?;
            bench::write_rows(fs::File::create(&a.out)?, &rows)?;
            let summary = bench::summarize(&rows)?;
            if let Some(path) = &a.summary {
                bench::write_summary(fs::File::create(path)?, &summary)?;
            }
            let plot = a.gnuplot.or_else(|| a.summary.as_ref().map(|p| p.with_extension("dat")));
            if let Some(path) = plot {
                bench::write_gnuplot(fs::File::create(path)?, &summary)?;
            }
            let (wins, total) = bench::modified_wins(&summary);
            writeln!(out, "rows = {}", rows.len())?;
            writeln!(out, "modified mean <= full_reduce mean for {wins} of {total} vertex counts")?;
        }
    }
    Ok(())
}

/// Largest genus for which `verify` computes the whole sequence.
const VERIFY_SEQUENCE_GENUS: usize = 6;

fn verify(g: &Multigraph, out: &mut dyn Write) -> Result<()> {
    g.require_connected()?;
    let n = g.num_vertices();
    let genus = g.genus() as usize;
    let mut violations = Vec::new();
    writeln!(out, "vertices = {n}")?;
    writeln!(out, "genus = {genus}")?;
    let eta = if n >= 2 { g.edge_connectivity()? as usize } else { 0 };
    writeln!(out, "edge_connectivity = {eta}")?;
    writeln!(out, "brill_noether_bound = {}", gonality::brill_noether_bound(genus))?;

    let mut spots = vec![Divisor::zero(n), canonical(g)];
    spots.extend((0..n).map(|v| Divisor::point(n, v, 1)));
    spots.extend((0..n).map(|v| &canonical(g) - &Divisor::point(n, v, 1)));
    let mut bad_rr = 0;
    for d in &spots {
        if gonality::rr_residual(g, d)? != 0 {
            bad_rr += 1;
            violations.push(format!("Riemann-Roch fails on {d:?}"));
        }
    }
    writeln!(out, "riemann_roch_checks = {} ({} failed)", spots.len(), bad_rr)?;

    let upto = if genus <= VERIFY_SEQUENCE_GENUS { genus + 2 } else { 1 };
    let seq = gonality::gonality_sequence(g, upto)?;
    writeln!(out, "sequence = {seq}")?;
    if seq.gon1 < eta.min(n) {
        violations.push(format!("gon_1 = {} is below min(edge connectivity, |V|) = {}", seq.gon1, eta.min(n)));
    }
    if seq.gon1 > genus + 1 {
        violations.push(format!("gon_1 = {} exceeds genus + 1", seq.gon1));
    }
    if seq.terms.windows(2).any(|w| w[0] >= w[1]) {
        violations.push("sequence is not strictly increasing".into());
    }
    if upto > 1 {
        let recovered = gonality::genus_from_sequence(&seq.terms)?;
        if recovered != genus {
            violations.push(format!("sequence gives genus {recovered}"));
        }
        if genus <= 5 {
            match gonality::expected_sequence(genus, seq.gon1, None, upto) {
                Ok(expected) if expected.terms == seq.terms => writeln!(out, "table = match")?,
                Ok(expected) => {
                    writeln!(out, "table = mismatch (expected {expected})")?;
                    violations.push(format!("sequence differs from the table row {expected}"));
                }
                Err(e) => {
                    writeln!(out, "table = no row ({e})")?;
                    violations.push(format!("no table row: {e}"));
                }
            }
        }
    }
    if violations.is_empty() {
        writeln!(out, "status = ok")?;
        Ok(())
    } else {
        for v in &violations {
            writeln!(out, "violation = {v}")?;
        }
        Err(Error::Invariant(format!("{} violated invariant(s)", violations.len())))
    }
}
