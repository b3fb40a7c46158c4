//! Adaptive quadrature helpers used by the norm and kernel integrals.

use crate::error::{Error, Result};

struct Adaptive<'a> {
    f: &'a dyn Fn(f64) -> f64,
    tol: f64,
    evals: usize,
    budget: usize,
}

impl Adaptive<'_> {
    fn simpson(&self, a: f64, fa: f64, _m: f64, fm: f64, b: f64, fb: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }

    #[allow(clippy::too_many_arguments)] // threaded Simpson panel state
    fn recurse(
        &mut self,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> (f64, f64) {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        self.evals += 2;
        let left = self.simpson(a, fa, lm, flm, m, fm);
        let right = self.simpson(m, fm, rm, frm, b, fb);
        let err = (left + right - whole) / 15.0;
        if depth == 0 || self.evals > self.budget || err.abs() <= tol {
            return (left + right + err, err.abs());
        }
        let (lv, le) = self.recurse(a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1);
        let (rv, re) = self.recurse(m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
        (lv + rv, le + re)
    }
}

/// Adaptive Simpson integral of `f` over [a, b] with the given relative
/// tolerance. Errors with the achieved tolerance when the refinement budget
/// runs out before the target is met.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    // Seed with a coarse composite pass so narrow features are not missed.
    let seed = 64usize;
    let hseed = (b - a) / seed as f64;
    let mut rough = 0.0f64;
    for i in 0..seed {
        rough += f(a + (i as f64 + 0.5) * hseed).abs() * hseed.abs();
    }
    let mut state = Adaptive {
        f: &f,
        tol: rel_tol,
        evals: 0,
        budget: 2_000_000,
    };
    // First pass: one Simpson estimate per seed panel, to set the absolute
    // tolerance scale before recursing (the midpoint scan alone can miss
    // features the panel endpoints see, and vice versa).
    let mut panels = Vec::with_capacity(seed);
    let mut coarse_mass = 0.0f64;
    for i in 0..seed {
        let x0 = a + i as f64 * hseed;
        let x1 = x0 + hseed;
        let m = 0.5 * (x0 + x1);
        let (f0, f1, fm) = (f(x0), f(x1), f(m));
        state.evals += 3;
        let whole = state.simpson(x0, f0, m, fm, x1, f1);
        coarse_mass += whole.abs();
        panels.push((x0, f0, x1, f1, m, fm, whole));
    }
    let scale = rough.max(coarse_mass).max(f64::MIN_POSITIVE);
    let mut total = 0.0;
    let mut err_total = 0.0;
    for (x0, f0, x1, f1, m, fm, whole) in panels {
        let (v, e) = state.recurse(
            x0,
            f0,
            x1,
            f1,
            m,
            fm,
            whole,
            state.tol * scale / seed as f64,
            40,
        );
        total += v;
        err_total += e;
    }
    let achieved = err_total / scale.max(total.abs()).max(f64::MIN_POSITIVE);
    if achieved > rel_tol * 50.0 {
        return Err(Error::Quadrature(achieved));
    }
    Ok(total)
}

/// 16-point Gauss-Legendre rule on [a, b]; used where a fixed-cost pass over
/// many smooth subintervals is preferable to adaptivity.
pub fn gauss16(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    #[allow(clippy::excessive_precision)]
    const X: [f64; 8] = [
        0.0950125098376374,
        0.2816035507792589,
        0.4580167776572274,
        0.6178762444026438,
        0.7554044083550030,
        0.8656312023878318,
        0.9445750230732326,
        0.9894009349916499,
    ];
    const W: [f64; 8] = [
        0.1894506104550685,
        0.1826034150449236,
        0.1691565193950025,
        0.1495959888165767,
        0.1246289712555339,
        0.0951585116824928,
        0.0622535239386479,
        0.0271524594117541,
    ];
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut sum = 0.0;
    for i in 0..8 {
        sum += W[i] * (f(c - r * X[i]) + f(c + r * X[i]));
    }
    sum * r
}
