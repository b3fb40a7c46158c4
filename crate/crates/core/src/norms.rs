//! Weighted L^p norms, ball-indicator norms, doubling constants, Muckenhoupt
//! constants, and the translation triviality ratio.

use crate::error::{Error, Result};
use crate::grid::SampledFunction;
use crate::quad;
use crate::weights::{svc_measure_within, BSequence, WeightSpec};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceSpec {
    /// Lebesgue exponent; `f64::INFINITY` selects the sup norm.
    pub p: f64,
    pub weight: WeightSpec,
}

impl SpaceSpec {
    pub fn new(p: f64, weight: WeightSpec) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(Error::OutOfRange(format!("p={p}, need p >= 1")));
        }
        weight.validate()?;
        Ok(SpaceSpec { p, weight })
    }

    /// Conjugate exponent, 1/p + 1/p' = 1.
    pub fn conjugate(&self) -> f64 {
        if self.p.is_infinite() {
            1.0
        } else if self.p == 1.0 {
            f64::INFINITY
        } else {
            self.p / (self.p - 1.0)
        }
    }
}

/// Discrete weighted norm: (h sum |f w|^p)^(1/p), or the grid sup for p = inf.
pub fn weighted_lp_norm(f: &SampledFunction, space: &SpaceSpec) -> Result<f64> {
    let h = f.grid.spacing();
    let mut sum = 0.0f64;
    let mut sup = 0.0f64;
    for (x, v) in f.grid.nodes().zip(&f.values) {
        let a = v.norm();
        if a == 0.0 {
            continue;
        }
        let w = space.weight.eval(x);
        if w > 1e300 {
            return Err(Error::WeightOverflow);
        }
        if space.p.is_infinite() {
            sup = sup.max(a * w);
        } else {
            sum += (a * w).powf(space.p);
        }
    }
    Ok(if space.p.is_infinite() {
        sup
    } else {
        (h * sum).powf(1.0 / space.p)
    })
}

/// ln of integral_a^b w(x)^s dx; +inf for divergent power integrals.
/// Closed forms for constant, exponential and power families; exact interval
/// measures for the Cantor weights; adaptive quadrature (rel. 1e-8) shifted
/// into log scale otherwise.
pub fn ln_interval_integral_pow(w: &WeightSpec, s: f64, a: f64, b: f64) -> Result<f64> {
    debug_assert!(b > a);
    let len = b - a;
    match *w {
        WeightSpec::Constant { c } => Ok(s * c.ln() + len.ln()),
        WeightSpec::Exp { c } => Ok(ln_exp_integral(s * c, a, b)),
        WeightSpec::ExpAbs { c } => {
            let t = s * c;
            // exp(t|x|) splits at 0.
            if a >= 0.0 {
                Ok(ln_exp_integral(t, a, b))
            } else if b <= 0.0 {
                Ok(ln_exp_integral(-t, a, b))
            } else {
                Ok(ln_add(ln_exp_integral(-t, a, 0.0), ln_exp_integral(t, 0.0, b)))
            }
        }
        WeightSpec::PowerAbs { gamma } => ln_abs_power_integral(s * gamma, a, b),
        WeightSpec::PowerOnePlus { alpha } => Ok(ln_one_plus_power_integral(s * alpha, a, b)),
        WeightSpec::CantorFlat { depth } => {
            let inside = fixed_measure(a, b, depth);
            let outside = len - inside;
            // w^s = 1 on G, 2^s off G.
            Ok(ln_add(
                pos_ln(inside),
                s * 2.0f64.ln() + pos_ln(outside),
            ))
        }
        WeightSpec::CantorSeq { depth, b: rule } => Ok(ln_cantor_seq_integral(depth, rule, s, a, b)),
        _ => ln_quadrature_integral(w, s, a, b),
    }
}

fn pos_ln(v: f64) -> f64 {
    if v > 0.0 {
        v.ln()
    } else {
        f64::NEG_INFINITY
    }
}

/// log(e^x + e^y) with -inf allowed.
fn ln_add(x: f64, y: f64) -> f64 {
    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
    if hi == f64::NEG_INFINITY {
        f64::NEG_INFINITY
    } else {
        hi + (lo - hi).exp().ln_1p()
    }
}

/// ln of integral_a^b e^{t x} dx, stable for large |t (b - a)|.
fn ln_exp_integral(t: f64, a: f64, b: f64) -> f64 {
    if t == 0.0 {
        return (b - a).ln();
    }
    let span = t.abs() * (b - a);
    let anchor = if t > 0.0 { t * b } else { t * a };
    anchor + (-(-span).exp()).ln_1p() - t.abs().ln()
}

/// ln of integral_a^b |x|^e dx; +inf when e <= -1 and 0 in [a, b].
fn ln_abs_power_integral(e: f64, a: f64, b: f64) -> Result<f64> {
    let touches_zero = a <= 0.0 && b >= 0.0;
    if touches_zero && e <= -1.0 {
        return Ok(f64::INFINITY);
    }
    let q = e + 1.0;
    if touches_zero {
        // split at 0; each side is u^q / q from the origin
        let from_zero = |u: f64| -> f64 {
            if u <= 0.0 {
                f64::NEG_INFINITY
            } else {
                q * u.ln() - q.ln()
            }
        };
        return Ok(ln_add(from_zero(b), from_zero(-a)));
    }
    let (lo, hi) = if a > 0.0 { (a, b) } else { (-b, -a) };
    if e == -1.0 {
        return Ok((hi / lo).ln().ln());
    }
    // integral = (hi^q - lo^q)/q, in log scale with the dominant term first
    let (big, small) = if q > 0.0 {
        (q * hi.ln(), q * lo.ln())
    } else {
        (q * lo.ln(), q * hi.ln())
    };
    Ok(big + (-(small - big).exp()).ln_1p() - q.abs().ln())
}

/// ln of integral_a^b (1 + |x|)^e dx (always finite).
fn ln_one_plus_power_integral(e: f64, a: f64, b: f64) -> f64 {
    // integral_0^u (1+x)^e dx from 0, u >= 0, in log scale
    let from_zero = |u: f64| -> f64 {
        if u <= 0.0 {
            return f64::NEG_INFINITY;
        }
        if (e + 1.0).abs() < 1e-14 {
            return (1.0 + u).ln().ln();
        }
        let q = e + 1.0;
        // ((1+u)^q - 1)/q
        let t = q * (1.0 + u).ln(); // ln (1+u)^q
        if q > 0.0 {
            t + (-(-t).exp()).ln_1p() - q.ln()
        } else {
            // (1 - (1+u)^q)/(-q), t < 0
            (-(t).exp()).ln_1p() - (-q).ln()
        }
    };
    let seg = |u0: f64, u1: f64| -> f64 {
        // 0 <= u0 < u1, ln of integral over (u0, u1) of (1+x)^e
        let hi = from_zero(u1);
        let lo = from_zero(u0);
        if lo == f64::NEG_INFINITY {
            hi
        } else {
            hi + (-(lo - hi).exp()).ln_1p()
        }
    };
    if a >= 0.0 {
        seg(a, b)
    } else if b <= 0.0 {
        seg(-b, -a)
    } else {
        ln_add(seg(0.0, -a), seg(0.0, b))
    }
}

fn fixed_measure(a: f64, b: f64, depth: u32) -> f64 {
    svc_measure_within(a, b, depth) as f64 / (1u128 << 96) as f64
}

fn ln_cantor_seq_integral(depth: u32, rule: BSequence, s: f64, a: f64, b: f64) -> f64 {
    // w^s = b_m^s on G_m = 2m + G and its mirror, 1 elsewhere.
    let mut correction = 0.0f64; // sum over cells of overlap * (b_m^s - 1)
    let mut side = |lo: f64, hi: f64| {
        // positive half-line coordinates
        if hi <= lo {
            return;
        }
        let m_lo = (lo / 2.0).floor().max(1.0) as i64;
        let m_hi = (hi / 2.0).floor() as i64;
        for m in m_lo..=m_hi {
            let inside = fixed_measure(lo - 2.0 * m as f64, hi - 2.0 * m as f64, depth);
            if inside > 0.0 {
                let bm = rule.value(m as u32);
                correction += inside * (bm.powf(s) - 1.0);
            }
        }
    };
    side(a.max(0.0), b.max(0.0));
    side((-b).max(0.0), (-a).max(0.0));
    ((b - a) + correction).ln()
}

fn ln_quadrature_integral(w: &WeightSpec, s: f64, a: f64, b: f64) -> Result<f64> {
    // Shift by the largest exponent among the candidates a, b, 0 so the
    // integrand stays in range; the catalog weights are monotone away from 0.
    let mut shift = f64::NEG_INFINITY;
    for x in [a, b, 0.0] {
        if x >= a && x <= b {
            shift = shift.max(s * w.ln_eval(x));
        }
    }
    let value = quad::integrate(|x| (s * w.ln_eval(x) - shift).exp(), a, b, 1e-8)?;
    Ok(shift + value.ln())
}

/// ln of the ball-indicator norm ||chi_(y-R, y+R)||_{L^p(w)}.
pub fn ball_indicator_norm_ln(space: &SpaceSpec, y: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::OutOfRange(format!("ball radius {r}")));
    }
    let (a, b) = (y - r, y + r);
    if space.p.is_infinite() {
        return ln_interval_sup(&space.weight, a, b);
    }
    Ok(ln_interval_integral_pow(&space.weight, space.p, a, b)? / space.p)
}

pub fn ball_indicator_norm(space: &SpaceSpec, y: f64, r: f64) -> Result<f64> {
    Ok(ball_indicator_norm_ln(space, y, r)?.exp())
}

/// ln of the essential sup of w over [a, b].
fn ln_interval_sup(w: &WeightSpec, a: f64, b: f64) -> Result<f64> {
    match *w {
        WeightSpec::Constant { c } => Ok(c.ln()),
        WeightSpec::Exp { c } => Ok(c * b),
        WeightSpec::PhiExp { .. } => Ok(w.ln_eval(b)),
        WeightSpec::PowerAbs { gamma } => {
            if gamma < 0.0 && a <= 0.0 && b >= 0.0 {
                Ok(f64::INFINITY)
            } else if gamma >= 0.0 {
                Ok(w.ln_eval(a).max(w.ln_eval(b)))
            } else {
                // decreasing in |x|; sup at the endpoint closest to 0
                Ok(w.ln_eval(if a > 0.0 { a } else { b }))
            }
        }
        WeightSpec::PowerOnePlus { alpha } => {
            if alpha >= 0.0 {
                Ok(w.ln_eval(a).max(w.ln_eval(b)))
            } else if a <= 0.0 && b >= 0.0 {
                Ok(0.0)
            } else {
                Ok(w.ln_eval(if a > 0.0 { a } else { b }))
            }
        }
        WeightSpec::ExpAbs { .. } | WeightSpec::SubExp { .. } | WeightSpec::SuperExp { .. } => {
            Ok(w.ln_eval(a).max(w.ln_eval(b)))
        }
        WeightSpec::CantorFlat { depth } => {
            if a >= 0.0 && b <= 1.0 && interval_inside_svc(a, b, depth) {
                Ok(0.0)
            } else {
                Ok(2.0f64.ln())
            }
        }
        WeightSpec::CantorSeq { depth, b: rule } => {
            // values <= 1; sup is b_m only when [a, b] sits entirely inside
            // one translated copy 2m + G or its mirror image.
            let m_pos = (a / 2.0).floor();
            let m_neg = (-b / 2.0).floor();
            if m_pos >= 1.0 && b <= 2.0 * m_pos + 1.0 && interval_inside_svc(a - 2.0 * m_pos, b - 2.0 * m_pos, depth)
            {
                Ok(rule.value(m_pos as u32).ln())
            } else if m_neg >= 1.0
                && -a <= 2.0 * m_neg + 1.0
                && interval_inside_svc(-b - 2.0 * m_neg, -a - 2.0 * m_neg, depth)
            {
                Ok(rule.value(m_neg as u32).ln())
            } else {
                Ok(0.0)
            }
        }
    }
}

/// True when [a, b] within [0, 1] lies entirely inside the depth-d SVC set:
/// full measure of a closed set with open complement forces containment.
fn interval_inside_svc(a: f64, b: f64, depth: u32) -> bool {
    if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) || b <= a {
        return false;
    }
    let inside = svc_measure_within(a, b, depth) as f64 / (1u128 << 96) as f64;
    (inside - (b - a)).abs() < (b - a) * 1e-12
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DoublingEntry {
    pub r: f64,
    /// (y, ratio) pairs in schedule order.
    pub ratios: Vec<(f64, f64)>,
    pub inf_over_y: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DoublingReport {
    pub tau: f64,
    pub entries: Vec<DoublingEntry>,
    /// min over the tail half of the R-schedule of the per-R infima; an
    /// upper-bound estimate of the true doubling constant restricted to the
    /// searched centers.
    pub liminf_estimate: f64,
}

pub fn doubling_ratio(space: &SpaceSpec, tau: f64, y: f64, r: f64) -> Result<f64> {
    if !(tau > 1.0) {
        return Err(Error::OutOfRange(format!("tau={tau}, need tau > 1")));
    }
    let big = ball_indicator_norm_ln(space, y, tau * r)?;
    let small = ball_indicator_norm_ln(space, y, r)?;
    Ok((big - small).exp())
}

pub fn doubling_constant_estimate(
    space: &SpaceSpec,
    tau: f64,
    r_schedule: &[f64],
    y_search: &[f64],
) -> Result<DoublingReport> {
    if r_schedule.is_empty() || y_search.is_empty() {
        return Err(Error::OutOfRange("empty schedule".into()));
    }
    let mut entries = Vec::with_capacity(r_schedule.len());
    for &r in r_schedule {
        let mut ratios = Vec::with_capacity(y_search.len());
        let mut inf = f64::INFINITY;
        for &y in y_search {
            let ratio = doubling_ratio(space, tau, y, r)?;
            inf = inf.min(ratio);
            ratios.push((y, ratio));
        }
        entries.push(DoublingEntry {
            r,
            ratios,
            inf_over_y: inf,
        });
    }
    let tail_start = entries.len() / 2;
    let liminf_estimate = entries[tail_start..]
        .iter()
        .map(|e| e.inf_over_y)
        .fold(f64::INFINITY, f64::min);
    Ok(DoublingReport {
        tau,
        entries,
        liminf_estimate,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessReport {
    pub tau: f64,
    /// (y_j, R_j) with R_j = phi(j)^{-1/2}, y_j = j + m.
    pub pairs: Vec<(f64, f64)>,
    pub ratios: Vec<f64>,
}

/// Centers marching into the region where exp(c x^beta) flattens; along them
/// the doubling ratios stay bounded although the y = 0 ratios diverge.
pub fn weak_doubling_witness(space: &SpaceSpec, tau: f64, j_max: u32) -> Result<WitnessReport> {
    let (c, beta) = match space.weight {
        WeightSpec::SubExp { c, beta } => (c, beta),
        ref other => {
            return Err(Error::UnsupportedWeight(format!(
                "witness construction needs a subexp weight, got {other}"
            )))
        }
    };
    if !(tau > 1.0) {
        return Err(Error::OutOfRange(format!("tau={tau}, need tau > 1")));
    }
    let phi = |r: f64| c * r.powf(beta - 1.0);
    let radius = |j: f64| phi(j).powf(-0.5);
    let mut m = 0f64;
    for j in 1..=j_max {
        let need = tau * radius(j as f64) - j as f64;
        if need >= m {
            m = need.floor() + 1.0;
        }
    }
    let mut pairs = Vec::new();
    let mut ratios = Vec::new();
    for j in 1..=j_max {
        let rj = radius(j as f64);
        let yj = j as f64 + m;
        ratios.push(doubling_ratio(space, tau, yj, rj)?);
        pairs.push((yj, rj));
    }
    Ok(WitnessReport { tau, pairs, ratios })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MuckenhouptReport {
    pub value: f64,
    /// Interval (a, b) attaining the supremum; meaningless when divergent.
    pub argmax: (f64, f64),
    pub divergent: bool,
}

/// Dyadic intervals with lengths 2^-k .. 2^k and centers at multiples of the
/// length inside [-2^k, 2^k], longest lengths first.
pub fn dyadic_intervals(k: u32) -> impl Iterator<Item = (f64, f64)> {
    let levels = -(k as i32)..=(k as i32);
    levels.rev().flat_map(move |j| {
        let len = 2.0f64.powi(j);
        let reach = 2.0f64.powi(k as i32);
        let steps = (reach / len) as i64;
        (-steps..=steps).map(move |i| {
            let center = i as f64 * len;
            (center - 0.5 * len, center + 0.5 * len)
        })
    })
}

/// sup over Q of (|Q|^-1 int_Q w^p)^{1/p} (|Q|^-1 int_Q w^{-p'})^{1/p'}.
pub fn ap_constant(
    space: &SpaceSpec,
    intervals: impl IntoIterator<Item = (f64, f64)>,
) -> Result<MuckenhouptReport> {
    let (p, q) = finite_pair(space)?;
    let mut best = f64::NEG_INFINITY;
    let mut argmax = (0.0, 0.0);
    for (a, b) in intervals {
        let ln_len = (b - a).ln();
        let t1 = ln_interval_integral_pow(&space.weight, p, a, b)?;
        let t2 = ln_interval_integral_pow(&space.weight, -q, a, b)?;
        if t1 == f64::INFINITY || t2 == f64::INFINITY {
            return Ok(MuckenhouptReport {
                value: f64::INFINITY,
                argmax: (a, b),
                divergent: true,
            });
        }
        let term = (t1 - ln_len) / p + (t2 - ln_len) / q;
        if term > best {
            best = term;
            argmax = (a, b);
        }
    }
    Ok(MuckenhouptReport {
        value: best.exp(),
        argmax,
        divergent: false,
    })
}

/// sup over Q of |Q|^-1 ||chi_Q||_{L^p(w)} ||chi_Q||_{L^p'(w^-1)}, routed
/// through the ball-norm machinery; algebraically equal to `ap_constant`.
pub fn ax_constant(
    space: &SpaceSpec,
    intervals: impl IntoIterator<Item = (f64, f64)>,
) -> Result<MuckenhouptReport> {
    let (_, q) = finite_pair(space)?;
    let mut best = f64::NEG_INFINITY;
    let mut argmax = (0.0, 0.0);
    for (a, b) in intervals {
        let center = 0.5 * (a + b);
        let radius = 0.5 * (b - a);
        let n1 = ball_indicator_norm_ln(space, center, radius)?;
        let n2 = ln_interval_integral_pow(&space.weight, -q, a, b)? / q;
        if n1 == f64::INFINITY || n2 == f64::INFINITY {
            return Ok(MuckenhouptReport {
                value: f64::INFINITY,
                argmax: (a, b),
                divergent: true,
            });
        }
        let term = n1 + n2 - (b - a).ln();
        if term > best {
            best = term;
            argmax = (a, b);
        }
    }
    Ok(MuckenhouptReport {
        value: best.exp(),
        argmax,
        divergent: false,
    })
}

fn finite_pair(space: &SpaceSpec) -> Result<(f64, f64)> {
    if !(space.p > 1.0) || space.p.is_infinite() {
        return Err(Error::OutOfRange(format!(
            "p={}, Muckenhoupt constants need 1 < p < inf",
            space.p
        )));
    }
    Ok((space.p, space.conjugate()))
}

/// inf over sampled |x| <= eps, |y| <= eps of w(x_k + x) / w(x_k - x0 + y)
/// with x_k = (k+1) x0, sampling step eps/64.
pub fn translation_ratio(weight: &WeightSpec, x0: f64, eps: f64, k: u32) -> Result<f64> {
    if x0 == 0.0 {
        return Err(Error::OutOfRange("x0 must be nonzero".into()));
    }
    if !(eps > 0.0 && eps < x0.abs() / 2.0) {
        return Err(Error::OutOfRange(format!(
            "eps={eps}, need 0 < eps < |x0|/2"
        )));
    }
    let xk = (k as f64 + 1.0) * x0;
    let step = eps / 64.0;
    let mut num_min = f64::INFINITY;
    let mut den_max = f64::NEG_INFINITY;
    for i in -64..=64i32 {
        let t = i as f64 * step;
        num_min = num_min.min(weight.ln_eval(xk + t));
        den_max = den_max.max(weight.ln_eval(xk - x0 + t));
    }
    Ok((num_min - den_max).exp())
}
