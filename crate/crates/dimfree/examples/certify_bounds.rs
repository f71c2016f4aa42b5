//! Certify the pointwise decay estimates for one dimension.
//!
//! Sweeps the default radius grid and reports, for each inequality, the worst
//! observed ratio of the left-hand side to the claimed envelope, where it
//! occurred, and whether the explicit threshold was ever exceeded.
//!
//! Run with: `cargo run --example certify_bounds -- [d]` (default d = 50).

use dimfree::bounds::{check_difference_estimates, check_mu_estimates, default_grid};
use dimfree::multipliers::SymbolPair;
use dimfree::numerics::QuadratureSpec;

fn main() -> dimfree::Result<()> {
    let d: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50);
    let spec = QuadratureSpec::default();
    let grid = default_grid(d);
    println!(
        "d = {d}, grid: {} points on (0, {:.1}]",
        grid.len(),
        grid.last().copied().unwrap_or(0.0)
    );
    println!("{:>12} {:>14} {:>14} {:>12} {:>10} {:>8}", "subject", "inequality", "worst_ratio", "argmax_r", "violated", "skipped");

    for rep in check_mu_estimates(d, &grid, &spec)? {
        println!(
            "{:>12} {:>14} {:>14.6e} {:>12.4} {:>10} {:>8}",
            "mu", rep.inequality_id.as_str(), rep.worst_ratio, rep.argmax_r,
            rep.violated_at_threshold, rep.skipped_points
        );
    }
    for pair in SymbolPair::ALL {
        for rep in check_difference_estimates(pair, d, &grid, &spec)? {
            println!(
                "{:>12} {:>14} {:>14.6e} {:>12.4} {:>10} {:>8}",
                pair.as_str(), rep.inequality_id.as_str(), rep.worst_ratio, rep.argmax_r,
                rep.violated_at_threshold, rep.skipped_points
            );
        }
    }
    Ok(())
}
