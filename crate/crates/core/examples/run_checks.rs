//! Runs a few registered checks and prints their reports.

use hypermap::verify::{all_passed, run_check, CheckParams};

fn main() -> hypermap::Result<()> {
    let params = CheckParams { trials: 50_000, ..CheckParams::default() };
    for name in ["thm1.1-all", "cor1.3-capcup-1", "cor1.2-join-1", "lemma3.1-all", "sampler-stat-p"] {
        let reports = run_check(name, &params)?;
        println!("{name}: {}", if all_passed(&reports) { "all pass" } else { "has failures" });
        for r in reports {
            println!("  {r}");
        }
    }
    Ok(())
}
