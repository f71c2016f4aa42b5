//! Evaluate the three radial multiplier symbols at a handful of points.
//!
//! The sphere symbol `mu` and the ball symbol `m` come from adaptive
//! oscillatory quadrature; the Gaussian symbol `g` is a closed form. In
//! dimension 3 `mu` collapses to sin(2 pi r) / (2 pi r), which makes a handy
//! sanity check to print alongside.
//!
//! Run with: `cargo run --example symbols`

use std::f64::consts::PI;

use dimfree::multipliers::{ball_multiplier, gaussian_multiplier, mu};
use dimfree::numerics::QuadratureSpec;

fn main() -> dimfree::Result<()> {
    let spec = QuadratureSpec::default();
    println!("{:>6} {:>8} {:>22} {:>22} {:>22}", "d", "r", "mu", "m", "g");
    for &d in &[3u32, 10, 100] {
        for &r in &[0.25f64, 1.0, 4.0] {
            let mu_v = mu(r, d, &spec)?;
            let m_v = ball_multiplier(r, d, &spec)?;
            let g_v = gaussian_multiplier(r, d)?;
            println!(
                "{d:>6} {r:>8.2} {:>22.15e} {:>22.15e} {:>22.15e}",
                mu_v.value, m_v.value, g_v.value
            );
        }
    }

    // Closed-form check in dimension 3.
    let r = 1.37;
    let sinc = (2.0 * PI * r).sin() / (2.0 * PI * r);
    let q = mu(r, 3, &QuadratureSpec::default())?.value;
    println!("\nd = 3, r = {r}: quadrature {q:.15e} vs sinc {sinc:.15e} (diff {:.2e})", (q - sinc).abs());
    Ok(())
}
