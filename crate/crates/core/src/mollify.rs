//! Mollifier machinery, the Lebesgue-point approximation integral, the
//! bounded L2-approximation construction, and the weighted Young inequality
//! check for convolution operators.

use crate::error::{Error, Result};
use crate::grid::{convolve, SampledFunction};
use crate::norms::{weighted_lp_norm, SpaceSpec};
use crate::quad;
use crate::symbol::MultiplierSymbol;
use crate::weights::WeightSpec;
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

/// Base bump exp(1/(x^2 - 1)) on |x| < 1, before normalization.
pub fn bump_raw(x: f64) -> f64 {
    if x.abs() < 1.0 {
        (1.0 / (x * x - 1.0)).exp()
    } else {
        0.0
    }
}

/// integral_{-1}^{1} exp(1/(x^2-1)) dx, about 0.443994.
pub static BUMP_INTEGRAL: Lazy<f64> =
    Lazy::new(|| quad::integrate(bump_raw, -1.0, 1.0, 1e-12).expect("smooth integrand"));

/// Unit-integral bump on [-1, 1].
pub fn bump(x: f64) -> f64 {
    bump_raw(x) / *BUMP_INTEGRAL
}

/// integral_{-1}^{min(z,1)} of the unit bump; exactly 0 below -1, 1 above 1.
pub fn bump_cdf(z: f64) -> f64 {
    if z <= -1.0 {
        0.0
    } else if z >= 1.0 {
        1.0
    } else {
        quad::integrate(bump, -1.0, z, 1e-10).expect("smooth integrand")
    }
}

const BUMP_TABLE_STEP: f64 = 1.0 / 64.0;
const BUMP_TABLE_MAX: f64 = 64.0;

/// Fourier transform of the unit bump at tabulated u >= 0 (real and even).
static BUMP_TRANSFORM_TABLE: Lazy<Vec<f64>> = Lazy::new(|| {
    let n = (BUMP_TABLE_MAX / BUMP_TABLE_STEP) as usize + 1;
    (0..n)
        .map(|i| {
            let u = i as f64 * BUMP_TABLE_STEP;
            bump_transform_direct(u)
        })
        .collect()
});

fn bump_transform_direct(u: f64) -> f64 {
    2.0 * quad::integrate(|x| bump(x) * (x * u).cos(), 0.0, 1.0, 1e-11).expect("smooth integrand")
}

/// F of the unit bump: integral bump(x) exp(-i x u) dx, real by symmetry.
/// Catmull-Rom interpolation of the table inside |u| <= 64, direct
/// quadrature beyond.
pub fn bump_transform(u: f64) -> f64 {
    let u = u.abs();
    if u >= BUMP_TABLE_MAX {
        return bump_transform_direct(u);
    }
    let table = &*BUMP_TRANSFORM_TABLE;
    let t = u / BUMP_TABLE_STEP;
    let i = (t as usize).min(table.len() - 2);
    let frac = t - i as f64;
    let at = |j: i64| {
        let idx = i as i64 + j;
        if idx < 0 {
            table[(-idx) as usize] // even extension through u = 0
        } else {
            table[(idx as usize).min(table.len() - 1)]
        }
    };
    let (p0, p1, p2, p3) = (at(-1), at(0), at(1), at(2));
    let f2 = frac * frac;
    let f3 = f2 * frac;
    0.5 * ((2.0 * p1)
        + (p2 - p0) * frac
        + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * f2
        + (3.0 * p1 - 3.0 * p2 + p3 - p0) * f3)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MollifierSpec {
    pub j: u32,
}

impl MollifierSpec {
    pub fn new(j: u32) -> Result<Self> {
        if j == 0 {
            return Err(Error::OutOfRange("mollifier index j must be positive".into()));
        }
        Ok(MollifierSpec { j })
    }

    /// rho_j(x) = j * bump(x j); support [-1/j, 1/j], unit integral.
    pub fn value(&self, x: f64) -> f64 {
        self.j as f64 * bump(x * self.j as f64)
    }

    /// F rho_j (xi) = F bump (xi / j).
    pub fn transform(&self, xi: f64) -> f64 {
        bump_transform(xi / self.j as f64)
    }
}

/// Sampled rho_j, renormalized on the grid so h * sum = 1 to round-off.
pub fn mollifier(j: u32, grid: crate::grid::Grid) -> Result<SampledFunction> {
    let spec = MollifierSpec::new(j)?;
    if grid.spacing() > 1.0 / (8.0 * j as f64) {
        return Err(Error::Resolution(format!(
            "h = {} does not resolve the 1/{} mollifier support (need h <= 1/{})",
            grid.spacing(),
            j,
            8 * j
        )));
    }
    let mut f = SampledFunction::from_real_fn(grid, |x| spec.value(x));
    let mass: f64 = grid.spacing() * f.values.iter().map(|v| v.re).sum::<f64>();
    for v in &mut f.values {
        *v /= mass;
    }
    Ok(f)
}

/// Approximation integral at a frequency point: with psi sampled at nodes t
/// (spacing h), I(delta) = h * sum_t |a(eta - delta t) - a(eta)| |psi(t)| —
/// the integral of |a(xi) - a(eta)| delta^{-1} psi((eta - xi)/delta) in the
/// rescaled variable, so resolution does not degrade as delta shrinks.
pub fn lebesgue_point_integral(
    a: &MultiplierSymbol,
    eta: f64,
    psi: &SampledFunction,
    delta: f64,
) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::OutOfRange(format!("delta={delta}, need > 0")));
    }
    let h = psi.grid.spacing();
    let a_eta = a.eval(eta)?;
    let mut sum = 0.0;
    for (t, v) in psi.grid.nodes().zip(&psi.values) {
        let amp = v.norm();
        if amp == 0.0 {
            continue;
        }
        sum += (a.eval(eta - delta * t)? - a_eta).norm() * amp;
    }
    Ok(h * sum)
}

#[derive(Debug, Clone)]
pub struct ApproxStage {
    pub j: u32,
    pub r_j: f64,
    pub v: SampledFunction,
    /// Plain L2 distance ||u - v_j||_2 on the grid.
    pub l2_error: f64,
    /// Weighted norm ||v_j||_{L^p(w)}.
    pub lp_w_norm: f64,
}

/// v_j = rho_j * (chi_{B(0,R_j)} u) with R_j chosen by bisection so the
/// truncation tail ||u chi_{|x|>R}||_2 <= 2^{-j} (with two extra decades of
/// margin when the grid allows it).
pub fn bounded_l2_approx_sequence(
    u: &SampledFunction,
    space: &SpaceSpec,
    stages: u32,
) -> Result<Vec<ApproxStage>> {
    if !space.weight.is_continuous() {
        return Err(Error::UnsupportedWeight(
            "bounded L2-approximation requires a continuous weight; the Cantor-type weights are the standing counterexample".into(),
        ));
    }
    let grid = u.grid;
    let h = grid.spacing();
    let tail = |r: f64| -> f64 {
        let s: f64 = grid
            .nodes()
            .zip(&u.values)
            .filter(|(x, _)| x.abs() > r)
            .map(|(_, v)| v.norm_sqr())
            .sum();
        (h * s).sqrt()
    };
    let mut out = Vec::new();
    for j in 1..=stages {
        let target = 2.0f64.powi(-(j as i32)) * 1e-2;
        let r_j = if tail(0.0) <= target {
            h // degenerate: u already tiny
        } else {
            let mut lo = 0.0f64;
            let mut hi = grid.half_width();
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if tail(mid) <= target {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            hi
        };
        let truncated = SampledFunction::new(
            grid,
            grid.nodes()
                .zip(&u.values)
                .map(|(x, v)| if x.abs() <= r_j { *v } else { 0.0.into() })
                .collect(),
        )?;
        let moll = mollifier(j, grid)?;
        let v = convolve(&moll, &truncated)?.result;
        let l2_error = {
            let s: f64 = u
                .values
                .iter()
                .zip(&v.values)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum();
            (h * s).sqrt()
        };
        let lp_w_norm = weighted_lp_norm(&v, space)?;
        out.push(ApproxStage {
            j,
            r_j,
            v,
            l2_error,
            lp_w_norm,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SupportConstraint {
    AllReals,
    NonPositive,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct YoungReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

fn hypothesis_is_preset(w_star: &WeightSpec, w: &WeightSpec, omega: SupportConstraint) -> bool {
    match (w_star, w, omega) {
        // e^{cy} e^{c(x-y)} / e^{cx} = 1 identically
        (WeightSpec::Exp { c: c1 }, WeightSpec::Exp { c: c2 }, SupportConstraint::AllReals) => {
            c1 == c2
        }
        // phi(y) + phi(x-y) - phi(x) >= 0 for y <= 0: phi is the identity on
        // the negative axis and superadditive across it
        (WeightSpec::PhiExp { c: c1 }, WeightSpec::PhiExp { c: c2 }, SupportConstraint::NonPositive) => {
            c1 == c2
        }
        _ => false,
    }
}

/// Check ||kappa * f||_{L^p(w)} <= ||kappa||_{L^1(w_star)} ||f||_{L^p(w)}
/// under the convolution hypothesis w_star(y) w(x-y) / w(x) >= 1 for y in
/// the support constraint; the hypothesis is verified on a 128 x 128 sample
/// lattice unless the (w_star, w, Omega) triple is one of the closed-form
/// presets.
pub fn weighted_young_check(
    kappa: &SampledFunction,
    f: &SampledFunction,
    w_star: &WeightSpec,
    w: &WeightSpec,
    p: f64,
    omega: SupportConstraint,
) -> Result<YoungReport> {
    if kappa.grid != f.grid {
        return Err(Error::GridMismatch);
    }
    let grid = kappa.grid;
    if omega == SupportConstraint::NonPositive {
        let floor = kappa.max_abs() * 1e-12;
        for (x, v) in grid.nodes().zip(&kappa.values) {
            if x > 0.0 && v.norm() > floor {
                return Err(Error::OutOfRange(format!(
                    "kernel support leaves the half-line at x = {x}"
                )));
            }
        }
    }
    if !hypothesis_is_preset(w_star, w, omega) {
        let l = grid.half_width();
        let n = 128;
        for i in 0..n {
            let x = -l + 2.0 * l * (i as f64 + 0.5) / n as f64;
            for k in 0..n {
                let mut y = -l + 2.0 * l * (k as f64 + 0.5) / n as f64;
                if omega == SupportConstraint::NonPositive {
                    y = -l * (k as f64 + 0.5) / n as f64;
                }
                let value = (w_star.ln_eval(y) + w.ln_eval(x - y) - w.ln_eval(x)).exp();
                if value < 1.0 - 1e-9 {
                    return Err(Error::HypothesisViolated { x, y, value });
                }
            }
        }
    }
    let conv = convolve(kappa, f)?.result;
    let space = SpaceSpec::new(p, w.clone())?;
    let l1_star = SpaceSpec::new(1.0, w_star.clone())?;
    let lhs = weighted_lp_norm(&conv, &space)?;
    let rhs = weighted_lp_norm(kappa, &l1_star)? * weighted_lp_norm(f, &space)?;
    Ok(YoungReport {
        lhs,
        rhs,
        holds: lhs <= rhs * (1.0 + 1e-6) + 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{forward_transform, Grid};
    use crate::operator::smooth_plateau_bump;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bump_normalization_constant() {
        assert!((*BUMP_INTEGRAL - 0.443994).abs() < 1e-5);
        let mass = crate::quad::integrate(bump, -1.0, 1.0, 1e-12).unwrap();
        assert!((mass - 1.0).abs() < 1e-10);
    }

    #[test]
    fn mollifier_grid_normalization_and_support() {
        let grid = Grid::new(4.0, 512).unwrap();
        for j in [1u32, 4, 8] {
            let m = mollifier(j, grid).unwrap();
            let mass: f64 = grid.spacing() * m.values.iter().map(|v| v.re).sum::<f64>();
            assert!((mass - 1.0).abs() < 1e-14, "j={j}");
            for (x, v) in grid.nodes().zip(&m.values) {
                assert!(v.im == 0.0);
                if x.abs() >= 1.0 / j as f64 {
                    assert_eq!(v.re, 0.0, "j={j} x={x}");
                }
            }
        }
        // peak value for j=1 near bump(0) = e^-1 / integral
        let m1 = mollifier(1, grid).unwrap();
        let peak = m1.values.iter().map(|v| v.re).fold(0.0, f64::max);
        assert!((peak / bump(0.0) - 1.0).abs() < 1e-3);
        // resolution gate: h = 1/64 resolves j <= 8 only
        assert!(mollifier(9, grid).is_err());
        assert!(mollifier(0, grid).is_err());
    }

    #[test]
    fn bump_transform_table_matches_direct() {
        assert!((bump_transform(0.0) - 1.0).abs() < 1e-10);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let u = rng.gen::<f64>() * 63.0;
            let direct = bump_transform_direct(u);
            assert!(
                (bump_transform(u) - direct).abs() < 1e-8,
                "u={u}: {} vs {direct}",
                bump_transform(u)
            );
        }
        // symmetry and the beyond-table path
        assert_eq!(bump_transform(-3.0), bump_transform(3.0));
        assert!((bump_transform(70.0) - bump_transform_direct(70.0)).abs() < 1e-12);
    }

    #[test]
    fn mollifier_transform_matches_grid_transform() {
        // F rho_j on the grid vs the tabulated transform of the base bump
        let grid = Grid::new(16.0, 1024).unwrap();
        let j = 2u32;
        let m = mollifier(j, grid).unwrap();
        let s = forward_transform(&m);
        let spec = MollifierSpec::new(j).unwrap();
        for (i, xi) in grid.freqs().enumerate() {
            if xi.abs() <= 30.0 {
                assert!(
                    (s.values[i].re - spec.transform(xi)).abs() < 1e-4,
                    "xi={xi}: {} vs {}",
                    s.values[i].re,
                    spec.transform(xi)
                );
                assert!(s.values[i].im.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn approximate_identity_in_l2() {
        let grid = Grid::new(8.0, 4096).unwrap();
        let f = SampledFunction::from_real_fn(grid, |x| (1.0 + (2.0 * x).cos()) * (-x * x).exp());
        let mut last = f64::INFINITY;
        for j in [1u32, 2, 4, 8, 16, 32] {
            let m = mollifier(j, grid).unwrap();
            let conv = convolve(&m, &f).unwrap().result;
            let err: f64 = (grid.spacing()
                * f.values
                    .iter()
                    .zip(&conv.values)
                    .map(|(a, b)| (a - b).norm_sqr())
                    .sum::<f64>())
            .sqrt();
            assert!(err <= last * 1.05, "j={j}: {err} vs {last}");
            last = err;
        }
        assert!(last < 1e-3);
    }

    #[test]
    fn lebesgue_integral_is_zero_for_constant_symbols() {
        let grid = Grid::new(8.0, 256).unwrap();
        let psi = SampledFunction::from_real_fn(grid, |t| (-t * t).exp());
        let a = crate::symbol::MultiplierSymbol::ConstantSymbol(Complex64::new(3.0, 1.0));
        for delta in [1.0, 0.25] {
            assert_eq!(lebesgue_point_integral(&a, 0.3, &psi, delta).unwrap(), 0.0);
        }
    }

    #[test]
    fn lebesgue_integral_shrinks_quadratically_at_smooth_points() {
        // psi = transform of the plateau bump, sampled on the frequency grid
        let grid = Grid::new(8.0, 1024).unwrap();
        let plateau = smooth_plateau_bump(2.0, grid).unwrap();
        let psi = forward_transform(&plateau).into_sampled();
        let a = crate::symbol::MultiplierSymbol::Lorentzian {
            center: 0.0,
            width: 1.0,
        };
        let mut values = Vec::new();
        for k in 0..4 {
            let delta = 2.0f64.powi(-k);
            values.push(lebesgue_point_integral(&a, 0.0, &psi, delta).unwrap());
        }
        assert!(values.windows(2).all(|w| w[1] < w[0]), "{values:?}");
        assert!(values[3] < values[0] / 4.0, "{values:?}");
    }

    #[test]
    fn lebesgue_integral_ignores_constant_shifts() {
        let grid = Grid::new(8.0, 512).unwrap();
        let psi = SampledFunction::from_real_fn(grid, |t| (-t * t / 2.0).exp());
        let a = crate::symbol::MultiplierSymbol::Lorentzian {
            center: 0.4,
            width: 0.7,
        };
        let shifted = crate::symbol::MultiplierSymbol::Sum(
            Box::new(a.clone()),
            Box::new(crate::symbol::MultiplierSymbol::ConstantSymbol(
                Complex64::new(2.5, -1.0),
            )),
        );
        let i1 = lebesgue_point_integral(&a, 0.1, &psi, 0.5).unwrap();
        let i2 = lebesgue_point_integral(&shifted, 0.1, &psi, 0.5).unwrap();
        assert!((i1 - i2).abs() < 1e-13 * i1.max(1.0));
    }

    #[test]
    fn approximation_sequence_for_gaussian() {
        let grid = Grid::new(64.0, 8192).unwrap();
        let u = SampledFunction::from_real_fn(grid, |x| (-x * x / 8.0).exp());
        let space = SpaceSpec::new(2.0, WeightSpec::Constant { c: 1.0 }).unwrap();
        let stages = bounded_l2_approx_sequence(&u, &space, 8).unwrap();
        assert_eq!(stages.len(), 8);
        let u_norm = u.l2_norm();
        // L2 error decreasing below 1e-3 by stage 8
        assert!(stages.windows(2).all(|w| w[1].l2_error <= w[0].l2_error * 1.05));
        assert!(stages[7].l2_error < 1e-3, "{}", stages[7].l2_error);
        // norms stay bounded: smoothing does not inflate the L2 norm
        for s in &stages {
            assert!(s.lp_w_norm <= u_norm * 1.05, "j={}", s.j);
            // compact support within B(0, R_j + 1/j)
            let reach = s.r_j + 1.0 / s.j as f64 + grid.spacing();
            for (x, v) in grid.nodes().zip(&s.v.values) {
                if x.abs() > reach {
                    assert!(v.norm() < 1e-12, "j={} x={x}", s.j);
                }
            }
        }
    }

    #[test]
    fn approximation_sequence_rejects_discontinuous_weights() {
        let grid = Grid::new(8.0, 256).unwrap();
        let u = SampledFunction::from_real_fn(grid, |x| (-x * x).exp());
        let space = SpaceSpec::new(2.0, WeightSpec::CantorFlat { depth: 4 }).unwrap();
        assert!(matches!(
            bounded_l2_approx_sequence(&u, &space, 3),
            Err(Error::UnsupportedWeight(_))
        ));
    }

    #[test]
    fn approximation_sequence_of_zero_is_zero() {
        let grid = Grid::new(8.0, 512).unwrap();
        let u = SampledFunction::zero(grid);
        let space = SpaceSpec::new(2.0, WeightSpec::Constant { c: 1.0 }).unwrap();
        for s in bounded_l2_approx_sequence(&u, &space, 3).unwrap() {
            assert_eq!(s.l2_error, 0.0);
            assert_eq!(s.lp_w_norm, 0.0);
        }
    }

    #[test]
    fn approximation_sequence_under_subexponential_weight() {
        let grid = Grid::new(64.0, 16384).unwrap();
        let u = SampledFunction::from_real_fn(grid, |x| (-x * x / 8.0).exp());
        let space = SpaceSpec::new(2.0, WeightSpec::SubExp { c: 0.5, beta: 0.5 }).unwrap();
        let stages = bounded_l2_approx_sequence(&u, &space, 12).unwrap();
        let u_norm = weighted_lp_norm(&u, &space).unwrap();
        let limsup_proxy = stages[7..]
            .iter()
            .map(|s| s.lp_w_norm)
            .fold(0.0, f64::max);
        assert!(limsup_proxy <= u_norm * 1.1, "{limsup_proxy} vs {u_norm}");
    }

    #[test]
    fn young_inequality_for_exponential_preset() {
        let grid = Grid::new(16.0, 512).unwrap();
        let kappa = mollifier(2, grid).unwrap();
        let f = SampledFunction::from_real_fn(grid, |x| (-x * x / 2.0).exp());
        let w = WeightSpec::Exp { c: 1.0 };
        let report =
            weighted_young_check(&kappa, &f, &w, &w, 2.0, SupportConstraint::AllReals).unwrap();
        assert!(report.holds, "{} vs {}", report.lhs, report.rhs);
    }

    #[test]
    fn young_inequality_for_half_line_preset() {
        // modest window: the weight e^(x + x^2) reaches e^20 at the edge, so
        // the spectral convolution noise floor stays far below the norms
        let grid = Grid::new(4.0, 512).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let coeffs: Vec<f64> = (0..4).map(|_| rng.gen::<f64>() - 0.5).collect();
        let kappa = SampledFunction::from_real_fn(grid, |x| {
            if (-2.0..=-1.0).contains(&x) {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * ((i as f64 + 1.0) * x).cos())
                    .sum::<f64>()
                    * (-(x + 1.5) * (x + 1.5) * 8.0).exp()
            } else {
                0.0
            }
        });
        let f = SampledFunction::from_real_fn(grid, |x| (-x * x).exp() * (3.0 * x).sin());
        let w = WeightSpec::PhiExp { c: 1.0 };
        let report =
            weighted_young_check(&kappa, &f, &w, &w, 2.0, SupportConstraint::NonPositive).unwrap();
        assert!(report.holds, "{} vs {}", report.lhs, report.rhs);
    }

    #[test]
    fn young_zero_kernel_holds_trivially() {
        let grid = Grid::new(8.0, 256).unwrap();
        let kappa = SampledFunction::zero(grid);
        let f = SampledFunction::from_real_fn(grid, |x| (-x * x).exp());
        let w = WeightSpec::Exp { c: 1.0 };
        let report =
            weighted_young_check(&kappa, &f, &w, &w, 2.0, SupportConstraint::AllReals).unwrap();
        assert_eq!(report.lhs, 0.0);
        assert_eq!(report.rhs, 0.0);
        assert!(report.holds);
    }

    #[test]
    fn young_hypothesis_violation_is_reported() {
        let grid = Grid::new(8.0, 256).unwrap();
        let kappa = SampledFunction::from_real_fn(grid, |x| (-x * x).exp());
        let f = kappa.clone();
        // w_star(y) w(x-y) / w(x) = 0.5 < 1 everywhere
        let w_star = WeightSpec::Constant { c: 0.5 };
        let w = WeightSpec::Constant { c: 1.0 };
        assert!(matches!(
            weighted_young_check(&kappa, &f, &w_star, &w, 2.0, SupportConstraint::AllReals),
            Err(Error::HypothesisViolated { .. })
        ));
    }

    #[test]
    fn young_kernel_support_gate() {
        let grid = Grid::new(8.0, 256).unwrap();
        let kappa = SampledFunction::from_real_fn(grid, |x| (-x * x).exp()); // two-sided
        let f = kappa.clone();
        let w = WeightSpec::PhiExp { c: 1.0 };
        assert!(weighted_young_check(&kappa, &f, &w, &w, 2.0, SupportConstraint::NonPositive).is_err());
    }
}
