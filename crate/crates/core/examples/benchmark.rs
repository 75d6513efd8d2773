//! A small benchmark sweep over random cycle-with-chords instances.

use dicut::bench::{run_bench, BenchSpec, Family};
use dicut::{CutKind, Epsilon};

fn main() -> dicut::Result<()> {
    let spec = BenchSpec {
        family: Family::Chords,
        problem: CutKind::EdgeRooted,
        sizes: vec![6, 9, 12],
        epsilons: vec![Epsilon::new(1, 2)?, Epsilon::new(1, 8)?],
        trials: 5,
        seed: 2024,
        max_weight: 16,
        repeats: Some(32),
        timing: true,
    };
    let report = run_bench(&spec)?;
    for line in report.summary() {
        println!("{line}");
    }
    print!("{}", report.rows.len());
    println!(" rows; first lines of the CSV:");
    for line in report.to_csv()?.lines().take(4) {
        println!("{line}");
    }
    Ok(())
}
