//! Multiplier application, probe-certificate lower bounds, discrete weighted
//! L2 operator norms, and kernel-based upper bounds.

use crate::error::{Error, Result};
use crate::grid::{convolve, forward_transform, inverse_transform, Grid, SampledFunction, Spectrum};
use crate::mollify::bump_cdf;
use crate::norms::{ball_indicator_norm_ln, weighted_lp_norm, SpaceSpec};
use crate::quad;
use crate::symbol::{KernelSpec, MultiplierSymbol};
use crate::weights::WeightSpec;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// F^-1 (a . F f), evaluated bin by bin; no padding (callers pick L so their
/// test functions decay inside the window).
pub fn apply_multiplier(a: &MultiplierSymbol, f: &SampledFunction) -> Result<SampledFunction> {
    let mut spectrum = forward_transform(f);
    for i in 0..spectrum.values.len() {
        let xi = spectrum.freq(i);
        spectrum.values[i] *= a.eval(xi)?;
    }
    Ok(inverse_transform(&spectrum))
}

/// Evaluate the multiplier symbol on every grid frequency.
pub fn symbol_on_grid(a: &MultiplierSymbol, grid: Grid) -> Result<Spectrum> {
    let values: Result<Vec<Complex64>> = grid.freqs().map(|xi| a.eval(xi)).collect();
    Ok(Spectrum {
        grid,
        values: values?,
    })
}

/// Even plateau profile: 1 on |x| <= 1, 0 on |x| >= rho, built as the
/// indicator of [-(1+rho)/2, (1+rho)/2] convolved with the mollifier of
/// support radius (rho-1)/2 (closed-form via the bump CDF).
pub fn plateau_value(rho: f64, x: f64) -> f64 {
    let r = (rho - 1.0) / 2.0;
    let s = (1.0 + rho) / 2.0;
    bump_cdf((x + s) / r) - bump_cdf((x - s) / r)
}

pub fn smooth_plateau_bump(rho: f64, grid: Grid) -> Result<SampledFunction> {
    if !(rho > 1.0) {
        return Err(Error::OutOfRange(format!("rho={rho}, need rho > 1")));
    }
    if (rho - 1.0) / grid.spacing() < 16.0 {
        return Err(Error::Resolution(format!(
            "only {:.1} samples across the transition band of width {}",
            (rho - 1.0) / grid.spacing(),
            rho - 1.0
        )));
    }
    Ok(SampledFunction::from_real_fn(grid, |x| plateau_value(rho, x)))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeCertificate {
    pub eta: f64,
    pub delta: f64,
    pub y: f64,
    pub rho: f64,
    /// ||W_a f||_X / ||f||_X, a Rayleigh-quotient lower bound on the
    /// multiplier norm up to discretization.
    pub lower_bound: f64,
    /// ||chi_B(y, rho/delta)||_X / ||chi_B(y, 1/delta)||_X.
    pub doubling_correction: f64,
}

/// Modulated plateau probe e^{-i eta x} phi(delta (x - y)).
pub fn probe_function(
    grid: Grid,
    eta: f64,
    delta: f64,
    y: f64,
    rho: f64,
) -> Result<SampledFunction> {
    if !(delta > 0.0 && rho > 1.0) {
        return Err(Error::OutOfRange(format!("delta={delta}, rho={rho}")));
    }
    if y.abs() + rho / delta > grid.half_width() / 2.0 + 1e-12 {
        return Err(Error::ProbeSupport);
    }
    if eta.abs() > grid.nyquist() {
        return Err(Error::OutOfRange(format!(
            "eta={eta} beyond the Nyquist frequency {}",
            grid.nyquist()
        )));
    }
    Ok(SampledFunction::from_fn(grid, |x| {
        Complex64::from_polar(1.0, -eta * x) * plateau_value(rho, delta * (x - y))
    }))
}

/// Apply W_a to a probe. Symbols carrying a one-sided singular kernel are
/// applied by zero-padded convolution with the sampled kernel: the periodic
/// FFT route would wrap the slowly decaying kernel tail into the region
/// where an exponential weight is largest and destroy the certificate.
fn apply_for_probe(a: &MultiplierSymbol, f: &SampledFunction) -> Result<SampledFunction> {
    match a.kernel() {
        Some(kernel) => Ok(convolve(&kernel.sample(f.grid), f)?.result),
        None => apply_multiplier(a, f),
    }
}

pub fn probe_lower_bound(
    a: &MultiplierSymbol,
    space: &SpaceSpec,
    grid: Grid,
    eta: f64,
    delta: f64,
    y: f64,
    rho: f64,
) -> Result<ProbeCertificate> {
    let f = probe_function(grid, eta, delta, y, rho)?;
    let image = apply_for_probe(a, &f)?;
    let denom = weighted_lp_norm(&f, space)?;
    assert!(denom > 0.0, "plateau probes have positive norm");
    let lower_bound = weighted_lp_norm(&image, space)? / denom;
    let doubling_correction = (ball_indicator_norm_ln(space, y, rho / delta)?
        - ball_indicator_norm_ln(space, y, 1.0 / delta)?)
        .exp();
    Ok(ProbeCertificate {
        eta,
        delta,
        y,
        rho,
        lower_bound,
        doubling_correction,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepEntry {
    pub eta: f64,
    pub best: ProbeCertificate,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    pub entries: Vec<SweepEntry>,
    pub best_overall: f64,
}

/// Candidate probe centers.
#[derive(Debug, Clone)]
pub enum CenterRule {
    Fixed(f64),
    List(Vec<f64>),
}

impl CenterRule {
    fn centers(&self) -> Vec<f64> {
        match self {
            CenterRule::Fixed(y) => vec![*y],
            CenterRule::List(v) => v.clone(),
        }
    }
}

/// For each eta: max of probe lower bounds over the delta-schedule and the
/// center candidates; probes whose support leaves [-L/2, L/2] are skipped.
pub fn certificate_sweep(
    a: &MultiplierSymbol,
    space: &SpaceSpec,
    grid: Grid,
    eta_list: &[f64],
    delta_schedule: &[f64],
    y_rule: &CenterRule,
    rho: f64,
) -> Result<SweepReport> {
    if eta_list.is_empty() || delta_schedule.is_empty() {
        return Err(Error::OutOfRange("empty sweep schedule".into()));
    }
    let centers = y_rule.centers();
    let mut entries = Vec::new();
    let mut best_overall = 0.0f64;
    for &eta in eta_list {
        let mut best: Option<ProbeCertificate> = None;
        for &delta in delta_schedule {
            for &y in &centers {
                let cert = match probe_lower_bound(a, space, grid, eta, delta, y, rho) {
                    Ok(c) => c,
                    Err(Error::ProbeSupport) => continue,
                    Err(e) => return Err(e),
                };
                if best
                    .as_ref()
                    .is_none_or(|b| cert.lower_bound > b.lower_bound)
                {
                    best = Some(cert);
                }
            }
        }
        let best = best.ok_or(Error::ProbeSupport)?;
        best_overall = best_overall.max(best.lower_bound);
        entries.push(SweepEntry { eta, best });
    }
    Ok(SweepReport {
        entries,
        best_overall,
    })
}

/// Largest singular value of M_w F^-1 diag(a) F M_w^-1 on the n_small-node
/// subgrid sharing the half-width of `grid`.
///
/// The Krylov (Lanczos) recursion on the normal operator T*T is run to full
/// dimension with reorthogonalization, so clustered top singular values do
/// not stall below the 1e-10 target the way plain power iteration would.
pub fn discrete_l2_operator_norm(
    a: &MultiplierSymbol,
    weight: &WeightSpec,
    grid: Grid,
    n_small: usize,
) -> Result<f64> {
    if n_small > 512 {
        return Err(Error::OutOfRange(format!(
            "n_small={n_small} exceeds the dense cap 512"
        )));
    }
    let sub = Grid::new(grid.half_width(), n_small)?;
    let w: Vec<f64> = sub.nodes().map(|x| weight.eval(x)).collect();
    if w.iter().any(|&v| !(v > 0.0) || v > 1e300) {
        return Err(Error::WeightOverflow);
    }
    let symbol = symbol_on_grid(a, sub)?;
    let n = n_small;

    let apply = |v: &[Complex64], conjugate: bool| -> Vec<Complex64> {
        let scaled: Vec<Complex64> = (0..n)
            .map(|i| {
                if conjugate {
                    v[i] * w[i]
                } else {
                    v[i] / w[i]
                }
            })
            .collect();
        let mut s = forward_transform(&SampledFunction {
            grid: sub,
            values: scaled,
        });
        for i in 0..n {
            s.values[i] *= if conjugate {
                symbol.values[i].conj()
            } else {
                symbol.values[i]
            };
        }
        let out = inverse_transform(&s);
        (0..n)
            .map(|i| {
                if conjugate {
                    out.values[i] / w[i]
                } else {
                    out.values[i] * w[i]
                }
            })
            .collect()
    };
    let normal_apply = |v: &[Complex64]| apply(&apply(v, false), true);

    let mut rng = ChaCha8Rng::seed_from_u64(0x6d75_6c74_6c61_6221);
    let mut q: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nq = norm(&q);
    for z in &mut q {
        *z /= nq;
    }
    let mut basis: Vec<Vec<Complex64>> = vec![q];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let scale0 = symbol.max_abs().powi(2) * {
        let wmax = w.iter().cloned().fold(0.0f64, f64::max);
        let wmin = w.iter().cloned().fold(f64::INFINITY, f64::min);
        (wmax / wmin).powi(2)
    };
    if symbol.max_abs() == 0.0 {
        return Ok(0.0);
    }
    let mut prev_lambda = f64::NEG_INFINITY;
    let mut stalls = 0u32;
    for m in 0..n {
        let mut z = normal_apply(&basis[m]);
        let alpha = basis[m]
            .iter()
            .zip(&z)
            .map(|(qi, zi)| (qi.conj() * zi).re)
            .sum::<f64>();
        alphas.push(alpha);
        // the top Ritz value increases monotonically; stop once it has been
        // stationary to near machine precision for a while
        if m % 4 == 3 {
            let lambda = tridiag_max_eigenvalue(&alphas, &betas);
            if lambda - prev_lambda <= lambda.abs().max(1e-300) * 1e-13 {
                stalls += 1;
                if stalls >= 3 {
                    break;
                }
            } else {
                stalls = 0;
            }
            prev_lambda = lambda;
        }
        // full reorthogonalization, twice for stability
        for _ in 0..2 {
            for qv in &basis {
                let proj: Complex64 = qv.iter().zip(&z).map(|(qi, zi)| qi.conj() * zi).sum();
                for i in 0..n {
                    z[i] -= proj * qv[i];
                }
            }
        }
        let beta = norm(&z);
        if beta <= scale0 * 1e-15 || m + 1 == n {
            break;
        }
        betas.push(beta);
        for zi in &mut z {
            *zi /= beta;
        }
        basis.push(z);
    }
    let lambda = tridiag_max_eigenvalue(&alphas, &betas);
    Ok(lambda.max(0.0).sqrt())
}

/// Largest eigenvalue of the symmetric tridiagonal matrix via Sturm bisection.
fn tridiag_max_eigenvalue(alpha: &[f64], beta: &[f64]) -> f64 {
    let n = alpha.len();
    if n == 0 {
        return 0.0;
    }
    let mut hi = f64::NEG_INFINITY;
    let mut lo = f64::INFINITY;
    for i in 0..n {
        let b_prev = if i > 0 { beta[i - 1].abs() } else { 0.0 };
        let b_next = if i < beta.len() { beta[i].abs() } else { 0.0 };
        hi = hi.max(alpha[i] + b_prev + b_next);
        lo = lo.min(alpha[i] - b_prev - b_next);
    }
    let count_below = |x: f64| -> usize {
        let mut d = alpha[0] - x;
        let mut count = usize::from(d < 0.0);
        for i in 1..n {
            let b2 = beta[i - 1] * beta[i - 1];
            let denom = if d.abs() < 1e-300 {
                1e-300f64.copysign(if d == 0.0 { -1.0 } else { d })
            } else {
                d
            };
            d = alpha[i] - x - b2 / denom;
            if d < 0.0 {
                count += 1;
            }
        }
        count
    };
    let scale = hi.abs().max(lo.abs()).max(1e-300);
    let mut a = lo;
    let mut b = hi + scale * 1e-12;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if count_below(mid) == n {
            b = mid;
        } else {
            a = mid;
        }
        if b - a <= scale * 1e-16 {
            break;
        }
    }
    0.5 * (a + b)
}

/// ||F^-1 a||_{L^1(w)} by quadrature; +inf when the weighted tail diverges.
/// The singular |x|^(alpha-1) head is integrated in closed form.
pub fn kernel_l1_upper_bound(
    kernel: &KernelSpec,
    weight: &WeightSpec,
    allow_any_weight: bool,
) -> Result<f64> {
    if !allow_any_weight
        && !matches!(weight, WeightSpec::Exp { .. } | WeightSpec::PhiExp { .. })
    {
        return Err(Error::UnsupportedWeight(format!(
            "kernel bound hypotheses cover exp/phiexp weights; pass the caveat flag to force {weight}"
        )));
    }
    match kernel {
        KernelSpec::Sampled(f) => {
            let h = f.grid.spacing();
            let mut sum = 0.0;
            for (x, v) in f.grid.nodes().zip(&f.values) {
                let a = v.norm();
                if a == 0.0 {
                    continue;
                }
                let w = weight.eval(x);
                if w > 1e300 {
                    return Ok(f64::INFINITY);
                }
                sum += a * w;
            }
            Ok(h * sum)
        }
        KernelSpec::SingularPower { alpha, k_alpha } => {
            // |k| integral_0^inf t^{alpha-1} w(-t) dt
            let alpha = *alpha;
            let w_at = |t: f64| weight.eval(-t);
            let delta = 1e-3f64;
            // head: w approximately w(0) + w'(0) t over [0, delta]
            let w0 = w_at(0.0);
            let w1 = (w_at(delta) - w0) / delta;
            let head = w0 * delta.powf(alpha) / alpha + w1 * delta.powf(alpha + 1.0) / (alpha + 1.0);
            let mut total = head;
            let mut t0 = delta;
            let mut span = 1.0f64;
            let mut growing_rounds = 0u32;
            loop {
                let t1 = t0 + span;
                let piece = quad::integrate(|t| t.powf(alpha - 1.0) * w_at(t), t0, t1, 1e-9)?;
                total += piece;
                if !total.is_finite() || total > 1e250 {
                    return Ok(f64::INFINITY);
                }
                let prev = span;
                let _ = prev;
                if piece > 0.0 && piece >= total * 0.5 {
                    growing_rounds += 1;
                    if growing_rounds >= 8 {
                        return Ok(f64::INFINITY);
                    }
                } else if piece.abs() < total.abs() * 1e-12 {
                    break;
                }
                t0 = t1;
                span *= 2.0;
                if t0 > 1e9 {
                    return Ok(f64::INFINITY);
                }
            }
            Ok(k_alpha.norm() * total)
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Calibration {
    pub k_alpha: Complex64,
    pub residual: f64,
}

/// Determine k_alpha so that k_alpha (F f^-_{alpha-1})(xi) matches the
/// boundary symbol at xi in {+-1, +-2}; the transform is computed by
/// damped quadrature with Richardson extrapolation in the damping parameter.
pub fn calibrate_k_alpha(alpha: f64) -> Result<Calibration> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::OutOfRange(format!(
            "alpha={alpha}, need alpha in (0, 1)"
        )));
    }
    let transform = |xi: f64| -> Result<Complex64> {
        // I(eps) = integral_0^inf t^{alpha-1} e^{(i xi - eps) t} dt,
        // extrapolated eps -> 0 from three geometric levels.
        let levels = [0.08f64, 0.04, 0.02];
        let mut vals = Vec::new();
        for &eps in &levels {
            vals.push(damped_oscillatory_integral(alpha, xi, eps)?);
        }
        let b1 = 2.0 * vals[1] - vals[0];
        let b2 = 2.0 * vals[2] - vals[1];
        Ok((4.0 * b2 - b1) / 3.0)
    };
    let boundary = |xi: f64| -> Complex64 {
        if xi > 0.0 {
            Complex64::new(xi.powf(-alpha), 0.0)
        } else {
            Complex64::from_polar((-xi).powf(-alpha), -alpha * std::f64::consts::PI)
        }
    };
    let mut estimates = Vec::new();
    for &xi in &[1.0f64, 2.0] {
        let fwd = transform(xi)?;
        estimates.push(boundary(xi) / fwd);
        estimates.push(boundary(-xi) / fwd.conj());
    }
    let mean = estimates.iter().sum::<Complex64>() / estimates.len() as f64;
    let residual = estimates
        .iter()
        .map(|e| (e - mean).norm())
        .fold(0.0, f64::max)
        / mean.norm();
    if residual > 1e-4 {
        return Err(Error::Calibration(residual));
    }
    Ok(Calibration {
        k_alpha: mean,
        residual,
    })
}

fn damped_oscillatory_integral(alpha: f64, xi: f64, eps: f64) -> Result<Complex64> {
    let z = Complex64::new(-eps, xi);
    // head [0, head_len] by the convergent series of e^{z t}
    let head_len = 0.1f64;
    let mut head = Complex64::new(0.0, 0.0);
    let mut zpow = Complex64::new(1.0, 0.0);
    let mut factorial = 1.0f64;
    for k in 0..60 {
        let term = zpow * head_len.powf(alpha + k as f64) / (factorial * (alpha + k as f64));
        head += term;
        if term.norm() < 1e-17 * head.norm().max(1.0) {
            break;
        }
        zpow *= z;
        factorial *= k as f64 + 1.0;
    }
    let t_max = 40.0 / eps;
    let re = quad::integrate(
        |t| t.powf(alpha - 1.0) * (-eps * t).exp() * (xi * t).cos(),
        head_len,
        t_max,
        1e-10,
    )?;
    let im = quad::integrate(
        |t| t.powf(alpha - 1.0) * (-eps * t).exp() * (xi * t).sin(),
        head_len,
        t_max,
        1e-10,
    )?;
    Ok(head + Complex64::new(re, im))
}
