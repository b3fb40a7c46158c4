//! Frequency-domain multiplier symbols and kernel representations.

use crate::error::{Error, Result};
use crate::grid::{Grid, SampledFunction};
use crate::mollify::bump_transform;
use crate::special::gamma;
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub enum MultiplierSymbol {
    /// a(xi) = c.
    ConstantSymbol(Complex64),
    /// a = F rho_j, the transform of the index-j mollifier.
    MollifierTransform { j: u32 },
    /// a(xi) = lim_{eps -> 0+} (xi + i eps)^(-alpha); the xi = 0 bin is
    /// regularized at i*epsilon with epsilon fixed at construction.
    AMinusAlpha { alpha: f64, epsilon: f64 },
    /// a = chi_[lo, hi].
    BandIndicator { lo: f64, hi: f64 },
    /// a(xi) = exp(-i xi y); the operator is translation by y.
    Modulation { y: f64 },
    /// a(xi) = 1 / (1 + ((xi - center)/width)^2).
    Lorentzian { center: f64, width: f64 },
    /// Per-bin values on a frequency grid, nearest-bin evaluation.
    Samples {
        grid: Grid,
        values: Vec<Complex64>,
    },
    PointwiseProduct(Box<MultiplierSymbol>, Box<MultiplierSymbol>),
    Sum(Box<MultiplierSymbol>, Box<MultiplierSymbol>),
    /// a(xi) = inner(xi + offset).
    Shifted {
        inner: Box<MultiplierSymbol>,
        offset: f64,
    },
}

impl MultiplierSymbol {
    /// Boundary-value symbol with the half-bin regularization of the grid.
    pub fn a_minus_alpha(alpha: f64, grid: Grid) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::OutOfRange(format!(
                "alpha={alpha}, need alpha in (0, 1)"
            )));
        }
        Ok(MultiplierSymbol::AMinusAlpha {
            alpha,
            epsilon: grid.freq_spacing() / 2.0,
        })
    }

    pub fn product(a: MultiplierSymbol, b: MultiplierSymbol) -> Self {
        MultiplierSymbol::PointwiseProduct(Box::new(a), Box::new(b))
    }

    pub fn power(self, m: u32) -> Self {
        let mut out = MultiplierSymbol::ConstantSymbol(Complex64::new(1.0, 0.0));
        for _ in 0..m {
            out = MultiplierSymbol::product(out, self.clone());
        }
        out
    }

    pub fn shifted(self, offset: f64) -> Self {
        MultiplierSymbol::Shifted {
            inner: Box::new(self),
            offset,
        }
    }

    pub fn eval(&self, xi: f64) -> Result<Complex64> {
        let v = self.eval_raw(xi);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::SymbolNotFinite(xi))
        }
    }

    fn eval_raw(&self, xi: f64) -> Complex64 {
        match self {
            MultiplierSymbol::ConstantSymbol(c) => *c,
            MultiplierSymbol::MollifierTransform { j } => {
                Complex64::new(bump_transform(xi / *j as f64), 0.0)
            }
            MultiplierSymbol::AMinusAlpha { alpha, epsilon } => {
                if xi == 0.0 {
                    // (i eps)^(-alpha)
                    Complex64::from_polar(
                        epsilon.powf(-alpha),
                        -alpha * std::f64::consts::FRAC_PI_2,
                    )
                } else if xi > 0.0 {
                    Complex64::new(xi.powf(-alpha), 0.0)
                } else {
                    // arg(xi + i0) -> pi from above
                    Complex64::from_polar((-xi).powf(-alpha), -alpha * std::f64::consts::PI)
                }
            }
            MultiplierSymbol::BandIndicator { lo, hi } => {
                if xi >= *lo && xi <= *hi {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            MultiplierSymbol::Modulation { y } => Complex64::from_polar(1.0, -xi * y),
            MultiplierSymbol::Lorentzian { center, width } => {
                let t = (xi - center) / width;
                Complex64::new(1.0 / (1.0 + t * t), 0.0)
            }
            MultiplierSymbol::Samples { grid, values } => {
                let i = ((xi - grid.freq(0)) / grid.freq_spacing()).round();
                let i = i.clamp(0.0, (values.len() - 1) as f64) as usize;
                values[i]
            }
            MultiplierSymbol::PointwiseProduct(a, b) => a.eval_raw(xi) * b.eval_raw(xi),
            MultiplierSymbol::Sum(a, b) => a.eval_raw(xi) + b.eval_raw(xi),
            MultiplierSymbol::Shifted { inner, offset } => inner.eval_raw(xi + offset),
        }
    }

    /// Kernel representation F^-1 a when one is singled out analytically.
    pub fn kernel(&self) -> Option<KernelSpec> {
        match self {
            MultiplierSymbol::AMinusAlpha { alpha, .. } => Some(KernelSpec::SingularPower {
                alpha: *alpha,
                k_alpha: k_alpha_closed_form(*alpha),
            }),
            _ => None,
        }
    }
}

/// k_alpha = exp(-i pi alpha / 2) / Gamma(alpha): the constant relating the
/// boundary symbol to the transform of the one-sided power kernel.
pub fn k_alpha_closed_form(alpha: f64) -> Complex64 {
    Complex64::from_polar(1.0 / gamma(alpha), -std::f64::consts::FRAC_PI_2 * alpha)
}

#[derive(Debug, Clone, PartialEq)]
pub enum KernelSpec {
    Sampled(SampledFunction),
    /// k_alpha |x|^(alpha-1) on x < 0, zero on x > 0.
    SingularPower { alpha: f64, k_alpha: Complex64 },
}

impl KernelSpec {
    /// Cell-averaged samples on the grid; the |x|^(alpha-1) singularity is
    /// integrated in closed form over each cell so the discrete L1 mass
    /// telescopes to the exact integral.
    pub fn sample(&self, grid: Grid) -> SampledFunction {
        match self {
            KernelSpec::Sampled(f) => f.clone(),
            KernelSpec::SingularPower { alpha, k_alpha } => {
                let h = grid.spacing();
                SampledFunction::from_fn(grid, |x| {
                    if x >= 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        // cell [x, x+h) sits in the negative axis except the
                        // last one, which absorbs the closed-form head
                        let hi = (x + h).min(0.0);
                        let mass = ((-x).powf(*alpha) - (-hi).powf(*alpha)) / alpha;
                        k_alpha * (mass / h)
                    }
                })
            }
        }
    }
}
