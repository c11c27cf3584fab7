//! A small benchmark run with a deterministic JSON report.

use clusterkit::bench::{run_suite, BenchOptions, Suite};

fn main() -> clusterkit::Result<()> {
    let options = BenchOptions {
        seeds: 20,
        deterministic: true,
        ..BenchOptions::default()
    };
    let report = run_suite(Suite::RandomMedium, &options)?;
    print!("{}", report.text_summary());

    let json = report.to_json();
    println!("report: {} bytes, {} records, {} failures", json.len(), report.records.len(), report.failures);
    Ok(())
}
