//! Print the size tables for the shipped parameter sets.
//!
//! `cargo run --example size_tables -- machine` prints JSON instead.

use hecomp::bench::run_benchmark;
use hecomp::params::Registry;
use rand::rngs::OsRng;

fn main() -> hecomp::Result<()> {
    let entries = Registry::shipped().select("table1,table2")?;
    let report = run_benchmark(&entries, 3072, None, &mut OsRng)?;
    match std::env::args().nth(1).as_deref() {
        Some("machine") => println!("{}", report.to_json()),
        _ => print!("{}", report.to_text()),
    }
    Ok(())
}
