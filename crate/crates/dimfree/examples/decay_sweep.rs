//! Measure how fast each symbol difference shrinks with the dimension.
//!
//! For every pair (mu - m, mu - g, g - m) this computes the sup-norm of the
//! difference over the default radius grid at several dimensions, then fits
//! log(sup) against log(d) to estimate the decay exponent.
//!
//! Run with: `cargo run --release --example decay_sweep`

use dimfree::bounds::{fit_decay_exponent, sup_norm_difference};
use dimfree::multipliers::SymbolPair;
use dimfree::numerics::QuadratureSpec;

fn main() -> dimfree::Result<()> {
    let dims = [10u32, 30, 100, 300];
    let spec = QuadratureSpec::default();
    for pair in SymbolPair::ALL {
        println!("{}:", pair.as_str());
        for &d in &dims {
            let sup = sup_norm_difference(pair, d, &spec)?;
            println!("  d = {d:>4}: sup = {sup:.6e}");
        }
        let fit = fit_decay_exponent(&dims, pair, &spec)?;
        println!("  fitted slope {:.4} (intercept {:.4}, residual {:.2e})\n", fit.slope, fit.intercept, fit.residual);
    }
    Ok(())
}
