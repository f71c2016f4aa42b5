//! Monte Carlo verification of the Gaussian-expectation identities behind the
//! symbols and of the chi-square concentration window.
//!
//! Sampling is counter-based: variate k of a run is a pure function of
//! (seed, k), so results are reproducible and independent of how the counter
//! space is partitioned across workers. Reduction happens over fixed-size
//! chunks in index order, which keeps the floating-point sum identical no
//! matter how many threads ran.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const CHUNK: u64 = 4096;
const TWO_PI: f64 = std::f64::consts::TAU;

/// A Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: f64,
    /// Sample standard deviation divided by sqrt(n).
    pub stderr: f64,
    pub n_samples: u64,
    pub seed: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform draw in the open interval (0, 1) for counter `k` of stream `seed`.
pub fn uniform_variate(seed: u64, k: u64) -> f64 {
    let z = splitmix64(splitmix64(seed) ^ splitmix64(k.wrapping_mul(0xA076_1D64_78BD_642F)));
    ((z >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
}

/// Inverse of the standard normal CDF (Wichura's AS241 rational
/// approximation, accurate to full double precision).
pub fn inverse_normal_cdf(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p < 1.0);
    const A: [f64; 8] = [
        3.387_132_872_796_366_5,
        1.331_416_678_917_843_8e2,
        1.971_590_950_306_551_3e3,
        1.373_169_376_550_946e4,
        4.592_195_393_154_987e4,
        6.726_577_092_700_87e4,
        3.343_057_558_358_813e4,
        2.509_080_928_730_122_7e3,
    ];
    const B: [f64; 8] = [
        1.0,
        4.231_333_070_160_091e1,
        6.871_870_074_920_579e2,
        5.394_196_021_424_751e3,
        2.121_379_430_158_659_7e4,
        3.930_789_580_009_271e4,
        2.872_908_573_572_194_3e4,
        5.226_495_278_852_854e3,
    ];
    const C: [f64; 8] = [
        1.423_437_110_749_683_5,
        4.630_337_846_156_546,
        5.769_497_221_460_691,
        3.647_848_324_763_204_5,
        1.270_458_252_452_368_4,
        2.417_807_251_774_506e-1,
        2.272_384_498_926_918_4e-2,
        7.745_450_142_783_414e-4,
    ];
    const D: [f64; 8] = [
        1.0,
        2.053_191_626_637_759,
        1.676_384_830_183_803_8,
        6.897_673_349_851e-1,
        1.481_039_764_274_800_8e-1,
        1.519_866_656_361_645_7e-2,
        5.475_938_084_995_345e-4,
        1.050_750_071_644_416_9e-9,
    ];
    const E: [f64; 8] = [
        6.657_904_643_501_103,
        5.463_784_911_164_114,
        1.784_826_539_917_291_3,
        2.965_605_718_285_048_7e-1,
        2.653_218_952_657_612_4e-2,
        1.242_660_947_388_078_4e-3,
        2.711_555_568_743_487_6e-5,
        2.010_334_399_292_288_1e-7,
    ];
    const F: [f64; 8] = [
        1.0,
        5.998_322_065_558_88e-1,
        1.369_298_809_227_358e-1,
        1.487_536_129_085_061_5e-2,
        7.868_691_311_456_133e-4,
        1.846_318_317_510_054_8e-5,
        1.421_511_758_316_446e-7,
        2.044_263_103_389_939_7e-15,
    ];
    fn poly(c: &[f64; 8], x: f64) -> f64 {
        c.iter().rev().fold(0.0, |acc, &v| acc * x + v)
    }
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        return q * poly(&A, r) / poly(&B, r);
    }
    let r = if q < 0.0 { p } else { 1.0 - p };
    let mut r = (-r.ln()).sqrt();
    let x = if r <= 5.0 {
        r -= 1.6;
        poly(&C, r) / poly(&D, r)
    } else {
        r -= 5.0;
        poly(&E, r) / poly(&F, r)
    };
    if q < 0.0 {
        -x
    } else {
        x
    }
}

/// Standard normal draw for counter `k` of stream `seed`.
pub fn normal_variate(seed: u64, k: u64) -> f64 {
    inverse_normal_cdf(uniform_variate(seed, k))
}

/// Materialize `n` i.i.d. standard Gaussian vectors in dimension `d`.
/// Sample `i` uses counters `i*d .. i*d + d`, so any sample can be regenerated
/// in isolation.
pub fn gaussian_sampler(d: u32, n: u64, seed: u64) -> impl Iterator<Item = Vec<f64>> {
    let d64 = d as u64;
    (0..n).map(move |i| {
        (0..d64)
            .map(|j| normal_variate(seed, i * d64 + j))
            .collect()
    })
}

/// Chunked deterministic mean/stderr reduction of `f(sample index)`.
fn estimate<F>(n: u64, seed: u64, f: F) -> MCEstimate
where
    F: Fn(u64) -> f64 + Sync,
{
    let n_chunks = n.div_ceil(CHUNK);
    let partials: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(n);
            let mut s = 0.0;
            let mut s2 = 0.0;
            for i in lo..hi {
                let v = f(i);
                s += v;
                s2 += v * v;
            }
            (s, s2)
        })
        .collect();
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    for (s, s2) in partials {
        sum += s;
        sumsq += s2;
    }
    let nf = n as f64;
    let mean = sum / nf;
    let var = if n > 1 {
        ((sumsq - sum * sum / nf) / (nf - 1.0)).max(0.0)
    } else {
        0.0
    };
    MCEstimate {
        mean,
        stderr: (var / nf).sqrt(),
        n_samples: n,
        seed,
    }
}

fn check_n(n: u64, min: u64) -> Result<()> {
    if n < min {
        return Err(Error::Parameter(format!("sample count {n} below minimum {min}")));
    }
    Ok(())
}

/// Estimate the spherical symbol as `E cos(2 pi r X_1 / |X|)`, X standard
/// Gaussian in dimension d. Rotational invariance puts the frequency on the
/// first axis.
pub fn mc_sphere_symbol(r: f64, d: u32, n: u64, seed: u64) -> Result<MCEstimate> {
    check_n(n, 100)?;
    if d < 3 {
        return Err(Error::Parameter(format!("dimension {d} < 3")));
    }
    let d64 = d as u64;
    Ok(estimate(n, seed, |i| {
        let mut x1 = 0.0;
        let mut norm_sq = 0.0;
        for j in 0..d64 {
            let v = normal_variate(seed, i * d64 + j);
            if j == 0 {
                x1 = v;
            }
            norm_sq += v * v;
        }
        (TWO_PI * r * x1 / norm_sq.sqrt()).cos()
    }))
}

/// Odd-part counterpart of `mc_sphere_symbol`: `E sin(2 pi r X_1 / |X|)`,
/// zero in expectation by symmetry. Kept as a sanity probe.
pub fn mc_sphere_symbol_odd_part(r: f64, d: u32, n: u64, seed: u64) -> Result<MCEstimate> {
    check_n(n, 100)?;
    if d < 3 {
        return Err(Error::Parameter(format!("dimension {d} < 3")));
    }
    let d64 = d as u64;
    Ok(estimate(n, seed, |i| {
        let mut x1 = 0.0;
        let mut norm_sq = 0.0;
        for j in 0..d64 {
            let v = normal_variate(seed, i * d64 + j);
            if j == 0 {
                x1 = v;
            }
            norm_sq += v * v;
        }
        (TWO_PI * r * x1 / norm_sq.sqrt()).sin()
    }))
}

/// Estimate the Gaussian symbol as `E cos(2 pi r X_1 / sqrt(d))`. Only the
/// first coordinate enters, but the counter layout matches the sampler's.
pub fn mc_gaussian_symbol(r: f64, d: u32, n: u64, seed: u64) -> Result<MCEstimate> {
    check_n(n, 100)?;
    if d < 3 {
        return Err(Error::Parameter(format!("dimension {d} < 3")));
    }
    let sqrt_d = (d as f64).sqrt();
    let d64 = d as u64;
    Ok(estimate(n, seed, |i| {
        let x1 = normal_variate(seed, i * d64);
        (TWO_PI * r * x1 / sqrt_d).cos()
    }))
}

/// The concentration window for |X|^2: [d - 2 d^(1/2+alpha), d + 2 d^(1/2+alpha) + 2 d^alpha].
pub fn concentration_window(d: u32, alpha: f64) -> (f64, f64) {
    let df = d as f64;
    let spread = 2.0 * df.powf(0.5 + alpha);
    (df - spread, df + spread + 2.0 * df.powf(alpha))
}

/// Empirical frequency of |X|^2 falling in [lo, hi] for X standard Gaussian
/// in dimension d.
pub fn empirical_window_frequency(
    d: u32,
    lo: f64,
    hi: f64,
    n: u64,
    seed: u64,
) -> Result<MCEstimate> {
    check_n(n, 10_000)?;
    if d < 3 {
        return Err(Error::Parameter(format!("dimension {d} < 3")));
    }
    let d64 = d as u64;
    Ok(estimate(n, seed, |i| {
        let mut norm_sq = 0.0;
        for j in 0..d64 {
            let v = normal_variate(seed, i * d64 + j);
            norm_sq += v * v;
        }
        if norm_sq >= lo && norm_sq <= hi {
            1.0
        } else {
            0.0
        }
    }))
}

/// Empirical probability of the concentration window, asserted against the
/// guaranteed floor 1 - exp(-d^alpha) up to 3 standard errors.
pub fn chi_square_concentration(d: u32, alpha: f64, n: u64, seed: u64) -> Result<MCEstimate> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(Error::Parameter(format!("alpha {alpha} outside (0, 1/2)")));
    }
    let (lo, hi) = concentration_window(d, alpha);
    let est = empirical_window_frequency(d, lo, hi, n, seed)?;
    let floor = 1.0 - (-(d as f64).powf(alpha)).exp();
    if est.mean < floor - 3.0 * est.stderr {
        return Err(Error::Data(format!(
            "empirical frequency {} below guaranteed floor {floor}",
            est.mean
        )));
    }
    Ok(est)
}

/// Exact probability of |X|^2 in [lo, hi] from the chi-square CDF with d
/// degrees of freedom. Oracle for the empirical frequencies.
pub fn chi_square_window_probability(d: u32, lo: f64, hi: f64) -> Result<f64> {
    let a = d as f64 / 2.0;
    let p_hi = crate::numerics::reg_lower_gamma(a, (hi / 2.0).max(0.0))?;
    let p_lo = if lo > 0.0 {
        crate::numerics::reg_lower_gamma(a, lo / 2.0)?
    } else {
        0.0
    };
    Ok(p_hi - p_lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sampler_is_deterministic() {
        let a: Vec<Vec<f64>> = gaussian_sampler(5, 3, 42).collect();
        let b: Vec<Vec<f64>> = gaussian_sampler(5, 3, 42).collect();
        assert_eq!(a, b);
        let c: Vec<Vec<f64>> = gaussian_sampler(5, 3, 43).collect();
        assert_ne!(a[0], c[0]);
    }

    #[test]
    fn sampler_moments() {
        let n = 1_000_000u64;
        let mean = estimate(n, 7, |i| normal_variate(7, i));
        assert!(mean.mean.abs() < 3.0 * mean.stderr + 1e-12, "mean {}", mean.mean);
        let second = estimate(n, 7, |i| {
            let v = normal_variate(7, i);
            v * v
        });
        assert!((second.mean - 1.0).abs() < 5e-3, "variance {}", second.mean);
    }

    #[test]
    fn inverse_cdf_matches_erf_roundtrip() {
        for &p in &[1e-6, 0.01, 0.3, 0.5, 0.7, 0.99, 1.0 - 1e-6] {
            let x = inverse_normal_cdf(p);
            let back = 0.5 * (1.0 + crate::numerics::erf(x / std::f64::consts::SQRT_2));
            assert!((back - p).abs() < 1e-11, "p {p} -> x {x} -> {back}");
        }
        assert_eq!(inverse_normal_cdf(0.5), 0.0);
    }

    #[test]
    fn sphere_symbol_constant_at_zero_frequency() {
        let est = mc_sphere_symbol(0.0, 7, 1000, 1).unwrap();
        assert_eq!(est.mean, 1.0);
        assert_eq!(est.stderr, 0.0);
    }

    #[test]
    fn sphere_symbol_closed_form_d3() {
        // mu(0.25, 3) = sin(pi/2) / (pi/2) = 2/pi.
        let est = mc_sphere_symbol(0.25, 3, 1_000_000, 11).unwrap();
        let target = 2.0 / std::f64::consts::PI;
        assert!(
            (est.mean - target).abs() < 3.0 * est.stderr,
            "mean {} target {target} stderr {}",
            est.mean,
            est.stderr
        );
    }

    #[test]
    fn sphere_symbol_vs_quadrature_d50() {
        let est = mc_sphere_symbol(2.0, 50, 400_000, 12).unwrap();
        let q = crate::multipliers::mu(2.0, 50, &crate::numerics::QuadratureSpec::default())
            .unwrap()
            .value;
        assert!((est.mean - q).abs() < 3.0 * est.stderr);
    }

    #[test]
    fn sphere_symbol_odd_part_vanishes() {
        let est = mc_sphere_symbol_odd_part(1.5, 10, 200_000, 13).unwrap();
        assert!(est.mean.abs() < 3.0 * est.stderr);
    }

    #[test]
    fn gaussian_symbol_algebraic_values() {
        let est = mc_gaussian_symbol(1.0, 4, 1_000_000, 21).unwrap();
        let target = (-2.0 * std::f64::consts::PI.powi(2) / 4.0).exp();
        assert!((est.mean - target).abs() < 3.0 * est.stderr);

        let d = 9u32;
        let est = mc_gaussian_symbol((d as f64).sqrt(), d, 1_000_000, 22).unwrap();
        let target = (-2.0 * std::f64::consts::PI.powi(2)).exp();
        assert!((est.mean - target).abs() < 3.0 * est.stderr);
    }

    #[test]
    fn concentration_floor_holds() {
        let est = chi_square_concentration(20, 0.2, 100_000, 31).unwrap();
        let floor = 1.0 - (-(20f64).powf(0.2)).exp();
        assert!(est.mean >= floor - 3.0 * est.stderr);
    }

    #[test]
    fn concentration_matches_exact_cdf() {
        let (lo, hi) = concentration_window(20, 0.2);
        let est = empirical_window_frequency(20, lo, hi, 200_000, 32).unwrap();
        let exact = chi_square_window_probability(20, lo, hi).unwrap();
        assert!(
            (est.mean - exact).abs() < 3.0 * est.stderr + 1e-6,
            "mc {} exact {exact}",
            est.mean
        );
    }

    #[test]
    fn full_window_has_frequency_one() {
        let est = empirical_window_frequency(5, 0.0, f64::INFINITY, 10_000, 33).unwrap();
        assert_eq!(est.mean, 1.0);
    }

    #[test]
    fn small_n_rejected() {
        assert!(mc_sphere_symbol(1.0, 3, 10, 0).is_err());
        assert!(empirical_window_frequency(5, 0.0, 1.0, 100, 0).is_err());
        assert!(chi_square_concentration(5, 0.7, 100_000, 0).is_err());
    }

    proptest! {
        #[test]
        fn uniform_in_open_unit_interval(seed in any::<u64>(), k in any::<u64>()) {
            let u = uniform_variate(seed, k);
            prop_assert!(u > 0.0 && u < 1.0);
        }

        #[test]
        fn normal_variate_finite(seed in any::<u64>(), k in any::<u64>()) {
            let v = normal_variate(seed, k);
            prop_assert!(v.is_finite());
            prop_assert!(v.abs() < 10.0);
        }
    }
}
