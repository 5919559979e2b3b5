//! A small run of the three winnability pipelines, written as CSV to stdout.

use chipfire::bench::{modified_wins, run_bench, summarize, write_summary, BenchConfig};

fn main() -> chipfire::Result<()> {
    let cfg = BenchConfig { n_min: 5, n_max: 8, graphs_per_n: 6, reps: 3, ..BenchConfig::default() };
    let rows = run_bench(&cfg)?;
    let summary = summarize(&rows)?;
    write_summary(std::io::stdout().lock(), &summary)?;
    let (wins, total) = modified_wins(&summary);
    eprintln!("{} rows; modified no slower on average for {wins} of {total} vertex counts", rows.len());
    Ok(())
}
