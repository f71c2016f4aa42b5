//! Monte Carlo cross-checks of the symbol quadratures.
//!
//! The sphere symbol equals E cos(2 pi r X_1 / |X|) and the Gaussian symbol
//! equals E cos(2 pi r X_1 / sqrt(d)) for a standard Gaussian vector X. Both
//! expectations are estimated with a deterministic counter-based sampler and
//! compared against the quadrature / closed-form values; agreement within a
//! few standard errors is expected. A chi-square concentration frequency is
//! checked against the exact window probability at the end.
//!
//! Run with: `cargo run --release --example monte_carlo`

use dimfree::montecarlo::{
    chi_square_concentration, chi_square_window_probability, concentration_window,
    mc_gaussian_symbol, mc_sphere_symbol,
};
use dimfree::multipliers::{gaussian_multiplier, mu};
use dimfree::numerics::QuadratureSpec;

fn main() -> dimfree::Result<()> {
    let spec = QuadratureSpec::default();
    let (n, seed) = (400_000u64, 2718u64);
    println!("{:>6} {:>6} {:>14} {:>14} {:>10}", "d", "r", "mc", "quadrature", "z-score");
    for &(r, d) in &[(0.25f64, 3u32), (1.0, 50), (3.0, 500)] {
        let est = mc_sphere_symbol(r, d, n, seed)?;
        let exact = mu(r, d, &spec)?.value;
        println!(
            "{d:>6} {r:>6.2} {:>14.6e} {:>14.6e} {:>10.2}",
            est.mean, exact, (est.mean - exact) / est.stderr
        );
        let est_g = mc_gaussian_symbol(r, d, n, seed)?;
        let exact_g = gaussian_multiplier(r, d)?.value;
        println!(
            "{d:>6} {r:>6.2} {:>14.6e} {:>14.6e} {:>10.2}  (gaussian)",
            est_g.mean, exact_g, (est_g.mean - exact_g) / est_g.stderr
        );
    }

    let (d, alpha) = (50u32, 0.2f64);
    let est = chi_square_concentration(d, alpha, n, seed)?;
    let (lo, hi) = concentration_window(d, alpha);
    let exact = chi_square_window_probability(d, lo, hi)?;
    println!(
        "\nchi-square window at d = {d}, alpha = {alpha}: frequency {:.6} vs exact {:.6}",
        est.mean, exact
    );
    Ok(())
}
