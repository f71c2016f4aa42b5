//! The three radial multiplier symbols and their radial derivatives.
//!
//! `mu` is the spherical-average symbol, `m` the ball (Hardy-Littlewood)
//! symbol, and `g` the Gaussian (heat) symbol. All three depend on the
//! frequency only through its norm `r`, so everything here is a function of
//! `(r, d)`.
//!
//! `mu` is evaluated from the normalized Gegenbauer-type integral, which stays
//! O(1) in every regime; the textbook Bessel form has an enormous prefactor
//! multiplying a tiny Bessel value and is useless for large `d`. The ball
//! symbol is the spherical symbol two dimensions up, `m(r, d) = mu(r, d+2)`,
//! which follows from the Bessel closed forms of the two symbols; the direct
//! ray-average quadrature is kept as an independent oracle.

use crate::error::{Error, Result};
use crate::numerics::{weighted_oscillatory_integral, QuadratureSpec};

const PI: f64 = std::f64::consts::PI;

/// How a multiplier value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Quadrature,
    ClosedForm,
    MonteCarlo,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::ClosedForm => "closed_form",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

/// One evaluation of a radial multiplier symbol.
#[derive(Debug, Clone, Copy)]
pub struct MultiplierPoint {
    pub r: f64,
    pub d: u32,
    pub value: f64,
    pub method: Method,
    pub error_estimate: f64,
}

/// The pairwise difference symbols whose smallness drives the comparison of
/// the three maximal operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolPair {
    MuMinusG,
    MuMinusM,
    GMinusM,
}

impl SymbolPair {
    pub const ALL: [SymbolPair; 3] = [SymbolPair::MuMinusG, SymbolPair::MuMinusM, SymbolPair::GMinusM];

    pub fn as_str(&self) -> &'static str {
        match self {
            SymbolPair::MuMinusG => "mu_minus_g",
            SymbolPair::MuMinusM => "mu_minus_m",
            SymbolPair::GMinusM => "g_minus_m",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "mu_minus_g" => Ok(SymbolPair::MuMinusG),
            "mu_minus_m" => Ok(SymbolPair::MuMinusM),
            "g_minus_m" => Ok(SymbolPair::GMinusM),
            other => Err(Error::Parameter(format!("unknown symbol pair '{other}'"))),
        }
    }
}

fn require_dim(d: u32, min: u32) -> Result<()> {
    if d < min {
        return Err(Error::Domain(format!("requires d >= {min}, got {d}")));
    }
    Ok(())
}

/// Spherical-average symbol `mu(r, d)`.
pub fn mu(r: f64, d: u32, spec: &QuadratureSpec) -> Result<MultiplierPoint> {
    require_dim(d, 3)?;
    let q = weighted_oscillatory_integral(r, d, 0, spec)?;
    Ok(MultiplierPoint {
        r,
        d,
        value: q.value,
        method: Method::Quadrature,
        error_estimate: q.error_estimate,
    })
}

/// Ball-average symbol `m(r, d)`, evaluated through the order-shift identity
/// `m(r, d) = mu(r, d + 2)`.
pub fn ball_multiplier(r: f64, d: u32, spec: &QuadratureSpec) -> Result<MultiplierPoint> {
    require_dim(d, 3)?;
    let q = weighted_oscillatory_integral(r, d + 2, 0, spec)?;
    Ok(MultiplierPoint {
        r,
        d,
        value: q.value,
        method: Method::Quadrature,
        error_estimate: q.error_estimate,
    })
}

/// Ball-average symbol computed directly as the ray average
/// `d * integral_0^1 mu(s r) s^(d-1) ds`, on a mesh graded toward `s = 1`
/// where `s^(d-1)` concentrates. Used as an independent route in tests.
pub fn ball_multiplier_ray(r: f64, d: u32, spec: &QuadratureSpec) -> Result<MultiplierPoint> {
    require_dim(d, 3)?;
    let df = d as f64;
    // s^(d-1) carries e^{-45} of its mass below s_lo.
    let s_lo = if df > 46.0 { 1.0 - 45.0 / df } else { 0.0 };
    let span = 1.0 - s_lo;
    let width = (1.0 / (4.0 * r.max(1.0))).min(0.5 / df).min(span / 16.0);
    let base_panels = (span / width).ceil() as usize;

    let eval = |panels: usize| -> Result<f64> {
        let (xs, ws) = crate::numerics::gauss_legendre(spec.nodes_per_panel.max(8));
        let h = span / panels as f64;
        let mut sum = 0.0;
        for p in 0..panels {
            let mid = s_lo + (p as f64 + 0.5) * h;
            let half = 0.5 * h;
            for (x, w) in xs.iter().zip(ws.iter()) {
                let s = mid + half * x;
                let log_w = df.ln() + (df - 1.0) * s.ln();
                let mu_val = weighted_oscillatory_integral(s * r, d, 0, spec)?.value;
                sum += w * half * mu_val * log_w.exp();
            }
        }
        Ok(sum)
    };

    let coarse = eval(base_panels)?;
    let fine = eval(base_panels * 2)?;
    Ok(MultiplierPoint {
        r,
        d,
        value: fine,
        method: Method::Quadrature,
        error_estimate: (coarse - fine).abs(),
    })
}

/// Gaussian (heat) symbol `g(r, d) = exp(-2 pi^2 r^2 / d)`.
pub fn gaussian_multiplier(r: f64, d: u32) -> Result<MultiplierPoint> {
    require_dim(d, 1)?;
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::Domain(format!("requires finite r >= 0, got {r}")));
    }
    Ok(MultiplierPoint {
        r,
        d,
        value: (-2.0 * PI * PI * r * r / d as f64).exp(),
        method: Method::ClosedForm,
        error_estimate: 0.0,
    })
}

/// `r * mu'(r)`, via the moment-1 oscillatory integral:
/// `r mu'(r) = -2 pi r * N_d * integral sin(2 pi r s) s (1-s^2)^((d-3)/2) ds`.
/// The sign is pinned by the finite-difference test below.
pub fn mu_radial_derivative(r: f64, d: u32, spec: &QuadratureSpec) -> Result<f64> {
    require_dim(d, 3)?;
    let q = weighted_oscillatory_integral(r, d, 1, spec)?;
    Ok(-2.0 * PI * r * q.value)
}

/// `r * m'(r)` through the same order-shift identity as `ball_multiplier`.
pub fn ball_radial_derivative(r: f64, d: u32, spec: &QuadratureSpec) -> Result<f64> {
    require_dim(d, 3)?;
    mu_radial_derivative(r, d + 2, spec)
}

/// `r * g'(r) = -(4 pi^2 r^2 / d) g(r)`, analytic.
pub fn gaussian_radial_derivative(r: f64, d: u32) -> Result<f64> {
    let g = gaussian_multiplier(r, d)?;
    Ok(-4.0 * PI * PI * r * r / d as f64 * g.value)
}

/// Value of the selected difference symbol at `(r, d)`.
pub fn difference(pair: SymbolPair, r: f64, d: u32, spec: &QuadratureSpec) -> Result<f64> {
    require_dim(d, 3)?;
    Ok(match pair {
        SymbolPair::MuMinusG => mu(r, d, spec)?.value - gaussian_multiplier(r, d)?.value,
        SymbolPair::MuMinusM => mu(r, d, spec)?.value - ball_multiplier(r, d, spec)?.value,
        SymbolPair::GMinusM => {
            gaussian_multiplier(r, d)?.value - ball_multiplier(r, d, spec)?.value
        }
    })
}

/// `r * a'(r)` for the selected difference symbol `a`.
pub fn difference_radial_derivative(
    pair: SymbolPair,
    r: f64,
    d: u32,
    spec: &QuadratureSpec,
) -> Result<f64> {
    require_dim(d, 3)?;
    Ok(match pair {
        SymbolPair::MuMinusG => {
            mu_radial_derivative(r, d, spec)? - gaussian_radial_derivative(r, d)?
        }
        SymbolPair::MuMinusM => {
            mu_radial_derivative(r, d, spec)? - ball_radial_derivative(r, d, spec)?
        }
        SymbolPair::GMinusM => {
            gaussian_radial_derivative(r, d)? - ball_radial_derivative(r, d, spec)?
        }
    })
}
