//! End-to-end demonstrations: each scenario demonstrates one headline
//! phenomenon as a table of (measured, predicted) rows with pass flags.

use crate::error::{Error, Result};
use crate::grid::{convolve, Grid, SampledFunction};
use crate::mollify::mollifier;
use crate::norms::{
    doubling_constant_estimate, translation_ratio, weak_doubling_witness, weighted_lp_norm, SpaceSpec,
};
use crate::operator::{
    certificate_sweep, kernel_l1_upper_bound, probe_lower_bound, symbol_on_grid, CenterRule,
};
use crate::symbol::MultiplierSymbol;
use crate::weights::{svc_contains, BSequence, WeightSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioRow {
    pub label: String,
    pub measured: f64,
    pub predicted: f64,
    pub pass: bool,
    /// Where the predicted bound comes from (closed form or threshold).
    pub formula: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub params: Vec<(String, String)>,
    pub rows: Vec<ScenarioRow>,
    pub overall_pass: bool,
}

impl ScenarioReport {
    fn assemble(scenario: &str, params: Vec<(String, String)>, rows: Vec<ScenarioRow>) -> Self {
        let overall_pass = rows.iter().all(|r| r.pass);
        ScenarioReport {
            scenario: scenario.into(),
            params,
            rows,
            overall_pass,
        }
    }
}

fn row(label: impl Into<String>, measured: f64, predicted: f64, pass: bool, formula: &str) -> ScenarioRow {
    ScenarioRow {
        label: label.into(),
        measured,
        predicted,
        pass,
        formula: formula.into(),
    }
}

/// Width of one surviving interval of the depth-d fat Cantor construction.
fn svc_interval_width(depth: u32) -> f64 {
    (0.5 + 2.0f64.powi(-(depth as i32) - 1)) / 2.0f64.powi(depth as i32)
}

/// Mollification by rho_j is a norm-1 operator on L^inf(w_{G,b}) over the
/// continuous functions, yet on the indicators of the translated Cantor
/// copies G_m its image is larger than (m+1)/4 in the plain sup norm: the
/// two candidate multiplier classes (continuous test functions vs all of
/// L^inf(w)) genuinely differ for this weight.
pub fn two_classes_demo(depth: u32, b: BSequence, j: u32, m_max: u32) -> Result<ScenarioReport> {
    if depth < 6 {
        return Err(Error::OutOfRange(format!("depth={depth}, need depth >= 6")));
    }
    if !(1..=8).contains(&m_max) {
        return Err(Error::OutOfRange(format!("m_max={m_max}, need 1..=8")));
    }
    if 2.0 / j as f64 > svc_interval_width(depth) {
        return Err(Error::Resolution(format!(
            "mollifier support 2/{j} exceeds the depth-{depth} interval width {:.3e}",
            svc_interval_width(depth)
        )));
    }
    let half_width = 2.0 * (m_max as f64 + 1.0);
    let min_count = (16.0 * half_width * j as f64).ceil() as usize;
    let grid = Grid::new(half_width, min_count.next_power_of_two())?;
    let weight = WeightSpec::CantorSeq { depth, b };
    let sup_space = SpaceSpec::new(f64::INFINITY, weight)?;
    let moll = mollifier(j, grid)?;

    let mut rows = Vec::new();

    // (i) bounded side: a smooth u with ||u||_{L^inf(w)} <= 1 stays <= 1.
    let u = SampledFunction::from_real_fn(grid, |x| (-x * x / 2.0).exp());
    let smoothed = convolve(&moll, &u)?.result;
    let bounded = weighted_lp_norm(&smoothed, &sup_space)?;
    rows.push(row(
        "smooth-side",
        bounded,
        1.05,
        bounded <= 1.05,
        "sup_x w(x)|rho_j*u(x)| <= sup|u| for continuous u, since w <= 1; slack 5%",
    ));

    for m in 1..=m_max {
        let bm = b.value(m);
        let u_m = SampledFunction::from_real_fn(grid, |x| {
            if svc_contains(x - 2.0 * m as f64, depth) {
                1.0 / bm
            } else {
                0.0
            }
        });
        if m == 1 {
            let unit = weighted_lp_norm(&u_m, &sup_space)?;
            rows.push(row(
                "unit-input-norm",
                unit,
                1.0,
                (unit - 1.0).abs() <= 1e-12,
                "b_m^-1 * b_m = 1 exactly on the translated Cantor copy",
            ));
        }
        let image = convolve(&moll, &u_m)?.result;
        // scan the window around the m-th copy for the largest plain value;
        // a density point of the copy pushes it toward b_m^-1
        let peak = grid
            .nodes()
            .zip(&image.values)
            .filter(|(x, _)| (2.0 * m as f64 - 0.25..=2.0 * m as f64 + 1.25).contains(x))
            .map(|(_, v)| v.norm())
            .fold(0.0f64, f64::max);
        let threshold = (m as f64 + 1.0) / 4.0;
        rows.push(row(
            format!("growth-m={m}"),
            peak,
            threshold,
            peak >= threshold,
            "rho_j * (b_m^-1 chi) >= b_m^-1/2 at a density point; factor-2 slack for finite depth and grid",
        ));
    }

    Ok(ScenarioReport::assemble(
        "two-classes",
        vec![
            ("depth".into(), depth.to_string()),
            ("j".into(), j.to_string()),
            ("m_max".into(), m_max.to_string()),
            ("L".into(), grid.half_width().to_string()),
            ("N".into(), grid.count().to_string()),
        ],
        rows,
    ))
}

/// The boundary symbol (xi + i0)^-alpha is unbounded as a function (its grid
/// sup grows like 2^alpha per refinement of the frequency spacing), yet on
/// the exponentially weighted space its operator action is controlled by the
/// finite weighted L1 norm of its one-sided convolution kernel: all probe
/// lower bounds sit below that kernel bound.
pub fn exp_weight_unbounded_demo(
    c: f64,
    alpha: f64,
    p: f64,
    grid: Grid,
    seed: u64,
) -> Result<ScenarioReport> {
    if !(c > 0.0) {
        return Err(Error::OutOfRange(format!("c={c}, need c > 0")));
    }
    let weight = WeightSpec::Exp { c };
    let space = SpaceSpec::new(p, weight.clone())?;
    let a = MultiplierSymbol::a_minus_alpha(alpha, grid)?;
    let kernel = a.kernel().expect("boundary symbol carries its kernel");

    let mut rows = Vec::new();

    // (i) finite kernel bound with closed form c^-alpha.
    let bound = kernel_l1_upper_bound(&kernel, &weight, false)?;
    let closed = c.powf(-alpha);
    rows.push(row(
        "kernel-bound",
        bound,
        closed,
        bound.is_finite() && (bound / closed - 1.0).abs() <= 1e-4,
        "|k_alpha| int_0^inf t^(alpha-1) e^(-ct) dt = c^-alpha",
    ));

    // (ii) 50 seeded random probes all below the bound.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho = 2.0;
    let l = grid.half_width();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let delta = (8.0 / l) * (l / 8.0f64).powf(rng.gen::<f64>());
        let reach = l / 2.0 - rho / delta;
        let y = (rng.gen::<f64>() - 0.5) * 2.0 * reach.max(0.0);
        let eta = (rng.gen::<f64>() - 0.5) * grid.nyquist();
        let cert = probe_lower_bound(&a, &space, grid, eta, delta, y, rho)?;
        worst = worst.max(cert.lower_bound / bound);
    }
    rows.push(row(
        "probes-below-bound",
        worst,
        1.0,
        worst <= 1.0 + 1e-6,
        "||k*f|| <= ||k||_L1(w) ||f|| for the multiplicative weight e^(cx)",
    ));

    // (iii) refinement growth of the regularized grid sup.
    let coarse = symbol_on_grid(&a, grid)?.max_abs();
    let fine_grid = Grid::new(2.0 * grid.half_width(), 2 * grid.count())?;
    let fine = symbol_on_grid(&MultiplierSymbol::a_minus_alpha(alpha, fine_grid)?, fine_grid)?
        .max_abs();
    let ratio = fine / coarse;
    let target = 2.0f64.powf(alpha);
    rows.push(row(
        "refinement-growth",
        ratio,
        target,
        (ratio / target - 1.0).abs() <= 0.1,
        "regularized sup (dxi/2)^-alpha doubles^alpha when dxi halves",
    ));

    Ok(ScenarioReport::assemble(
        "exp-unbounded",
        vec![
            ("c".into(), c.to_string()),
            ("alpha".into(), alpha.to_string()),
            ("p".into(), p.to_string()),
            ("L".into(), grid.half_width().to_string()),
            ("N".into(), grid.count().to_string()),
            ("seed".into(), seed.to_string()),
        ],
        rows,
    ))
}

/// For w = e^(cx) the ball-norm doubling ratios grow exponentially in the
/// radius — no doubling constant exists — while along the engineered witness
/// sequence of a subexponential weight the same ratios stay bounded.
pub fn nondoubling_growth_demo(
    c: f64,
    tau: f64,
    p: f64,
    r_schedule: &[f64],
) -> Result<ScenarioReport> {
    if r_schedule.len() < 2 {
        return Err(Error::OutOfRange("need at least two radii".into()));
    }
    let space = SpaceSpec::new(p, WeightSpec::Exp { c })?;
    let mut rows = Vec::new();

    if tau - 1.0 < 1e-6 {
        // degenerate regime: ratios collapse to 1, reported, not failed
        for &r in r_schedule {
            let report = doubling_constant_estimate(&space, tau, &[r], &[0.0])?;
            let measured = report.entries[0].inf_over_y;
            rows.push(row(
                format!("no-growth-detectable-R={r}"),
                measured,
                1.0,
                (measured - 1.0).abs() <= 1e-3,
                "tau -> 1 limit: ratio of nested equal balls tends to 1",
            ));
        }
    } else {
        let report = doubling_constant_estimate(&space, tau, r_schedule, &[0.0])?;
        let trend = |r: f64| (c * (tau - 1.0) * r / 2.0).exp() / r;
        let first = &report.entries[0];
        let k_fit = first.inf_over_y / trend(first.r);
        rows.push(row(
            format!("fit-R={}", first.r),
            first.inf_over_y,
            k_fit * trend(first.r),
            true,
            "K fitted on the first schedule point",
        ));
        for e in &report.entries[1..] {
            let predicted = k_fit * trend(e.r);
            rows.push(row(
                format!("growth-R={}", e.r),
                e.inf_over_y,
                predicted,
                e.inf_over_y >= predicted,
                "inf-over-y ratio exceeds the K e^(c(tau-1)R/2)/R trend",
            ));
        }
    }

    // comparison: the subexponential witness sequence stays bounded
    let sub = SpaceSpec::new(p, WeightSpec::SubExp { c: 1.0, beta: 0.5 })?;
    let witness = weak_doubling_witness(&sub, 2.0, 40)?;
    let max_ratio = witness.ratios.iter().cloned().fold(0.0, f64::max);
    let e3 = 3.0f64.exp();
    rows.push(row(
        "subexp-witness-bounded",
        max_ratio,
        e3,
        max_ratio <= e3,
        "centers y_j = j + m flatten exp(c x^beta); ratios bounded by e^3 at tau=2",
    ));

    Ok(ScenarioReport::assemble(
        "nondoubling",
        vec![
            ("c".into(), c.to_string()),
            ("tau".into(), tau.to_string()),
            ("p".into(), p.to_string()),
            (
                "R".into(),
                r_schedule
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
        ],
        rows,
    ))
}

/// Ingredients of the power-trick argument at desk scale: grid sups are
/// exactly multiplicative under pointwise powers, operator norms are
/// submultiplicative, and the m-th roots of the power norms are squeezed
/// between sup|a| and norm(a).
pub fn power_trick_check(
    a: &MultiplierSymbol,
    weight: &WeightSpec,
    grid: Grid,
    n_small: usize,
    m_max: u32,
) -> Result<ScenarioReport> {
    if !(1..=8).contains(&m_max) {
        return Err(Error::OutOfRange(format!("m_max={m_max}, need 1..=8")));
    }
    let sub = Grid::new(grid.half_width(), n_small)?;
    let sup1 = symbol_on_grid(a, sub)?.max_abs();
    let norm1 = crate::operator::discrete_l2_operator_norm(a, weight, grid, n_small)?;
    let mut rows = Vec::new();
    for m in 1..=m_max {
        if sup1.powi(m as i32) > 1e12 {
            break; // overflow guard for |a| > 1
        }
        let am = a.clone().power(m);
        let sup_m = symbol_on_grid(&am, sub)?.max_abs();
        let sup_pred = sup1.powi(m as i32);
        rows.push(row(
            format!("sup-power-m={m}"),
            sup_m,
            sup_pred,
            (sup_m - sup_pred).abs() <= sup_pred * 1e-9 + 1e-300,
            "(max|a|)^m = max|a^m| bin by bin",
        ));
        let norm_m = crate::operator::discrete_l2_operator_norm(&am, weight, grid, n_small)?;
        let norm_pred = norm1.powi(m as i32);
        rows.push(row(
            format!("norm-submult-m={m}"),
            norm_m,
            norm_pred,
            norm_m <= norm_pred * (1.0 + 1e-6) + 1e-8,
            "operator composition: norm(a^m) <= norm(a)^m",
        ));
        // the squeeze: sup|a| <= norm(a^m)^(1/m) <= norm(a)
        let root = norm_m.powf(1.0 / m as f64);
        rows.push(row(
            format!("root-squeeze-m={m}"),
            root,
            sup1,
            root >= sup1 * (1.0 - 1e-6) - 1e-8,
            "similarity to diag(a): spectral radius max|a| bounds every norm(a^m)^(1/m) from below",
        ));
    }
    Ok(ScenarioReport::assemble(
        "power-trick",
        vec![
            ("weight".into(), weight.to_string()),
            ("L".into(), grid.half_width().to_string()),
            ("n_small".into(), n_small.to_string()),
            ("m_max".into(), m_max.to_string()),
        ],
        rows,
    ))
}

/// For the superexponential weight the translation-triviality ratio blows up
/// along x_k = (k+1)x0 — the space admits no nontrivial translation-invariant
/// operators — while for a plain exponential weight the same ratio is
/// constant in k.
pub fn superexp_triviality_demo(
    alpha1: f64,
    alpha2: f64,
    x0_list: &[f64],
    eps: f64,
) -> Result<ScenarioReport> {
    if !(alpha1 > 1.0 && alpha2 > 1.0) {
        return Err(Error::OutOfRange(format!(
            "alpha1={alpha1} alpha2={alpha2}, need both > 1"
        )));
    }
    if x0_list.is_empty() {
        return Err(Error::OutOfRange("empty x0 list".into()));
    }
    let min_x0 = x0_list.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    if !(eps > 0.0 && eps < min_x0 / 3.0) {
        return Err(Error::OutOfRange(format!(
            "eps={eps}, need 0 < eps < min|x0|/3 = {}",
            min_x0 / 3.0
        )));
    }
    let weight = WeightSpec::SuperExp { alpha1, alpha2 };
    let k_max = 20u32;
    let mut rows = Vec::new();
    for &x0 in x0_list {
        let ratios: Vec<f64> = (0..=k_max)
            .map(|k| translation_ratio(&weight, x0, eps, k))
            .collect::<Result<_>>()?;
        let min_step = ratios
            .windows(2)
            .map(|w| w[1] / w[0])
            .fold(f64::INFINITY, f64::min);
        rows.push(row(
            format!("strictly-increasing-x0={x0}"),
            min_step,
            1.0,
            min_step > 1.0,
            "ratio exponent grows with |x_k| = (k+1)|x0|",
        ));
        let peak = ratios.iter().cloned().fold(0.0, f64::max);
        rows.push(row(
            format!("exceeds-1e6-x0={x0}"),
            peak,
            1e6,
            peak > 1e6,
            "triviality threshold 1e6 within k <= 20",
        ));
        if alpha1 == 2.0 && alpha2 == 2.0 && x0 > 0.0 {
            let k = 5u32;
            let xk = (k as f64 + 1.0) * x0;
            let closed = ((x0 - 2.0 * eps) * (2.0 * xk - x0)).exp();
            let measured = translation_ratio(&weight, x0, eps, k)?;
            rows.push(row(
                format!("closed-form-k=5-x0={x0}"),
                measured,
                closed,
                (measured / closed - 1.0).abs() <= 1e-9,
                "exp((x_k-eps)^2 - (x_k-x0+eps)^2) = exp((x0-2eps)(2x_k-x0))",
            ));
        }
    }
    // contrast: for e^(cx) the ratio does not move with k at all
    let exp_weight = WeightSpec::Exp { c: 1.0 };
    let x0 = x0_list[0].abs().max(1.0);
    let r0 = translation_ratio(&exp_weight, x0, eps, 0)?;
    let rk = translation_ratio(&exp_weight, x0, eps, k_max)?;
    rows.push(row(
        "exp-weight-flat",
        rk / r0,
        1.0,
        (rk / r0 - 1.0).abs() <= 1e-9,
        "for e^(cx) the ratio is exp(c(x0-2eps)), independent of k",
    ));
    Ok(ScenarioReport::assemble(
        "superexp-trivial",
        vec![
            ("alpha1".into(), alpha1.to_string()),
            ("alpha2".into(), alpha2.to_string()),
            (
                "x0".into(),
                x0_list
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            ("eps".into(), eps.to_string()),
        ],
        rows,
    ))
}

/// Shared default sweep for the probe certificate demos: geometric deltas
/// from 1 down to 8/L.
pub fn default_delta_schedule(grid: Grid) -> Vec<f64> {
    let floor = 8.0 / grid.half_width();
    let mut out = Vec::new();
    let mut d = 1.0f64;
    while d >= floor {
        out.push(d);
        d /= 2.0;
    }
    if out.is_empty() {
        out.push(1.0);
    }
    out
}

/// Convenience wrapper: best certificate for a symbol at eta = 0 using the
/// default schedules (used by examples and the CLI demo paths).
pub fn best_certificate_at_zero(
    a: &MultiplierSymbol,
    space: &SpaceSpec,
    grid: Grid,
) -> Result<f64> {
    let sweep = certificate_sweep(
        a,
        space,
        grid,
        &[0.0],
        &default_delta_schedule(grid),
        &CenterRule::Fixed(0.0),
        2.0,
    )?;
    Ok(sweep.best_overall)
}

/// Default mollifier index for a given Cantor depth: the smallest power of
/// two whose support 2/j fits inside one surviving interval.
pub fn default_two_classes_j(depth: u32) -> u32 {
    let width = svc_interval_width(depth);
    let mut j = 2u32;
    while 2.0 / j as f64 > width && j < 1 << 24 {
        j *= 2;
    }
    j
}
