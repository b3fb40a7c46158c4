//! Numerical laboratory for Fourier multipliers on weighted Lebesgue spaces:
//! doubling and Muckenhoupt constants of weight families, multiplier
//! application on uniform grids, probe certificates bounding operator norms
//! from below, kernel integrals bounding them from above, and end-to-end
//! counterexample demonstrations.

// Guards written as `!(x > 0.0)` are deliberate: they catch NaN as well as
// the out-of-range sign, which `x <= 0.0` would not.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod grid;
pub mod mollify;
pub mod norms;
pub mod operator;
pub mod quad;
pub mod report;
pub mod scenarios;
pub mod special;
pub mod symbol;
pub mod weights;

pub use error::{Error, Result};
pub use grid::{
    convolve, forward_transform, inverse_transform, Convolution, Grid, SampledFunction, Spectrum,
};
pub use mollify::{
    bounded_l2_approx_sequence, bump, bump_cdf, bump_transform, lebesgue_point_integral, mollifier,
    weighted_young_check, ApproxStage, MollifierSpec, SupportConstraint, YoungReport,
};
pub use norms::{
    ap_constant, ax_constant, ball_indicator_norm, ball_indicator_norm_ln,
    doubling_constant_estimate, doubling_ratio, dyadic_intervals, translation_ratio,
    weak_doubling_witness, weighted_lp_norm, DoublingEntry, DoublingReport, MuckenhouptReport,
    SpaceSpec, WitnessReport,
};
pub use operator::{
    apply_multiplier, calibrate_k_alpha, certificate_sweep, discrete_l2_operator_norm,
    kernel_l1_upper_bound, plateau_value, probe_function, probe_lower_bound, smooth_plateau_bump,
    symbol_on_grid, Calibration, CenterRule, ProbeCertificate, SweepEntry, SweepReport,
};
pub use report::{Cell, Table};
pub use scenarios::{
    default_delta_schedule, default_two_classes_j, exp_weight_unbounded_demo,
    nondoubling_growth_demo, power_trick_check, superexp_triviality_demo, two_classes_demo,
    ScenarioReport, ScenarioRow,
};
pub use symbol::{k_alpha_closed_form, KernelSpec, MultiplierSymbol};
pub use weights::{
    build_fat_cantor, eval_weight, parse_weight_spec, svc_contains, svc_measure_within,
    weight_regularity_ratio, BSequence, FatCantorSet, WeightSpec, MAX_CANTOR_DEPTH,
};
