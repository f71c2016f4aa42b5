//! Maximal-function ratios on the explicit radial test inputs.
//!
//! Walks through each closed-form computation: the 1D and d-dimensional
//! heat-maximal Gaussian ratios, the spherical maximal ratio of a ball
//! indicator, the eigenvalue supremum of the radial averaging kernel, the
//! homogeneous-input lower bound, and the explicit optimization constants.
//!
//! Run with: `cargo run --release --example radial_inputs`

use dimfree::radial::{
    compute_constants, default_eigenvalue_grid, default_t_grid, gauss_max_gaussian_ratio_1d,
    gauss_max_gaussian_ratio_d, homogeneous_lower_bound_1d, spd_eigenvalue,
    spherical_indicator_ratio, threshold_dimension,
};

fn main() -> dimfree::Result<()> {
    println!("1D heat-maximal Gaussian ratio (lower-bounded by c#(p)):");
    for &p in &[1.2f64, 1.5, 2.0, 4.0] {
        let rep = gauss_max_gaussian_ratio_1d(p)?;
        println!("  p = {p}: ratio = {:.8}, bound = {:.8}", rep.ratio, rep.analytic_bound);
    }

    println!("\nd-dimensional heat-maximal Gaussian ratio (upper bound 1 + v):");
    for &d in &[3u32, 10, 100] {
        let (rep, v) = gauss_max_gaussian_ratio_d(2.0, d)?;
        println!("  d = {d:>3}: ratio^p = {:.10}, correction v = {:.3e}", rep.ratio, v);
    }

    println!("\nspherical maximal ratio of the ball indicator (p = 2):");
    for &d in &[3u32, 10, 50] {
        let rep = spherical_indicator_ratio(2.0, d)?;
        println!(
            "  d = {d:>2}: ratio^p = 1 + {:.6e} (explicit bound on ratio^p: {:.6})",
            rep.ratio_excess,
            rep.analytic_bound.powi(2)
        );
    }

    let (p, grid) = (3.0, default_eigenvalue_grid());
    println!("\neigenvalue supremum of the radial kernel at p = {p}:");
    println!("  threshold dimension: {}", threshold_dimension(p)?);
    for &d in &[4u32, 6, 8] {
        println!("  d = {d}: s = {:.10}", spd_eigenvalue(p, d, &grid)?);
    }

    let sup = homogeneous_lower_bound_1d(2.0, &default_t_grid())?;
    println!("\nhomogeneous input, p = 2: best lower-bound value {sup:.8}");

    let c = compute_constants()?;
    println!(
        "\nconstants: inf c# = {:.8} at p = {:.4}; x1 = {:.8}; inf h = {:.8}",
        c.c_infimum, c.c_argmin_p, c.x1_root, c.h_infimum
    );
    Ok(())
}
