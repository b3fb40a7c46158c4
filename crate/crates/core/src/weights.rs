//! Weight families with exact pointwise evaluation, the Smith-Volterra-Cantor
//! fat Cantor set, and a small textual weight-spec parser.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Fixed-point scale for exact Cantor-set arithmetic: numerators over 2^96.
/// All endpoints produced by `depth <= 30` removal rounds are exact multiples
/// of 2^(96 - 3k), so every halving below stays integral.
const FRAC_BITS: u32 = 96;
const ONE_FIXED: u128 = 1u128 << FRAC_BITS;

fn to_fixed(x: f64) -> u128 {
    debug_assert!((0.0..=1.0).contains(&x));
    if x <= 0.0 {
        return 0;
    }
    if x >= 1.0 {
        return ONE_FIXED;
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    if biased == 0 {
        return 0; // subnormal, far below the 2^-96 resolution
    }
    let exp = biased - 1023;
    let mant = (bits & ((1u64 << 52) - 1)) | (1u64 << 52);
    let shift = FRAC_BITS as i64 + exp - 52;
    if shift >= 0 {
        (mant as u128) << shift
    } else {
        (mant as u128) >> (-shift)
    }
}

fn fixed_to_f64(v: u128) -> f64 {
    v as f64 / ONE_FIXED as f64
}

/// Smith-Volterra-Cantor set after `depth` rounds: round k removes the
/// centered open interval of length 4^(-k) from each surviving interval.
#[derive(Debug, Clone, PartialEq)]
pub struct FatCantorSet {
    depth: u32,
    intervals: Vec<(u128, u128)>,
}

pub const MAX_CANTOR_DEPTH: u32 = 30;

/// Materializing the interval list costs 2^depth entries, so the explicit
/// construction stops well before the membership/measure routines do.
pub const MAX_BUILD_DEPTH: u32 = 20;

pub fn build_fat_cantor(depth: u32) -> Result<FatCantorSet> {
    if depth > MAX_BUILD_DEPTH {
        return Err(Error::DepthOverflow(depth));
    }
    let mut intervals = vec![(0u128, ONE_FIXED)];
    for k in 1..=depth {
        let gap = 1u128 << (FRAC_BITS - 2 * k);
        let mut next = Vec::with_capacity(intervals.len() * 2);
        for (lo, hi) in intervals {
            let lo2 = (lo + hi - gap) / 2;
            let hi2 = (lo + hi + gap) / 2;
            next.push((lo, lo2));
            next.push((hi2, hi));
        }
        intervals = next;
    }
    Ok(FatCantorSet { depth, intervals })
}

impl FatCantorSet {
    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Sorted disjoint closed intervals as floating-point pairs.
    pub fn intervals(&self) -> Vec<(f64, f64)> {
        self.intervals
            .iter()
            .map(|&(a, b)| (fixed_to_f64(a), fixed_to_f64(b)))
            .collect()
    }

    /// Exact measure numerator over 2^96; equals 1/2 + 2^(-depth-1).
    pub fn measure_fixed(&self) -> u128 {
        self.intervals.iter().map(|&(a, b)| b - a).sum()
    }

    pub fn measure(&self) -> f64 {
        fixed_to_f64(self.measure_fixed())
    }

    pub fn contains(&self, x: f64) -> bool {
        svc_contains(x, self.depth)
    }
}

/// Membership in the depth-d SVC set without materializing intervals;
/// exact for every f64 input.
pub fn svc_contains(x: f64, depth: u32) -> bool {
    if !(0.0..=1.0).contains(&x) {
        return false;
    }
    let xf = to_fixed(x);
    let (mut lo, mut hi) = (0u128, ONE_FIXED);
    for k in 1..=depth.min(MAX_CANTOR_DEPTH) {
        let gap = 1u128 << (FRAC_BITS - 2 * k);
        let glo = (lo + hi - gap) / 2;
        let ghi = (lo + hi + gap) / 2;
        if xf > glo && xf < ghi {
            return false;
        }
        if xf <= glo {
            hi = glo;
        } else {
            lo = ghi;
        }
    }
    true
}

/// Exact Lebesgue measure of [a, b] (intersected with [0, 1]) within the
/// depth-d SVC set, as a fixed-point numerator over 2^96.
pub fn svc_measure_within(a: f64, b: f64, depth: u32) -> u128 {
    if b <= 0.0 || a >= 1.0 || b <= a {
        return 0;
    }
    let af = to_fixed(a.max(0.0));
    let bf = to_fixed(b.min(1.0));
    measure_rec(af, bf, 0, ONE_FIXED, 1, depth)
}

fn measure_rec(a: u128, b: u128, lo: u128, hi: u128, round: u32, depth: u32) -> u128 {
    let a = a.max(lo);
    let b = b.min(hi);
    if b <= a {
        return 0;
    }
    if round > depth {
        return b - a;
    }
    let gap = 1u128 << (FRAC_BITS - 2 * round);
    let glo = (lo + hi - gap) / 2;
    let ghi = (lo + hi + gap) / 2;
    measure_rec(a, b, lo, glo, round + 1, depth) + measure_rec(a, b, ghi, hi, round + 1, depth)
}

/// Rule producing the decreasing sequence b_m in (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub enum BSequence {
    /// b_m = 1/(m+1).
    #[default]
    Harmonic,
}

impl BSequence {
    pub fn value(&self, m: u32) -> f64 {
        match self {
            BSequence::Harmonic => 1.0 / (m as f64 + 1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum WeightSpec {
    /// w(x) = c.
    Constant { c: f64 },
    /// w(x) = (1 + |x|)^alpha.
    PowerOnePlus { alpha: f64 },
    /// w(x) = |x|^gamma.
    PowerAbs { gamma: f64 },
    /// w(x) = exp(c x).
    Exp { c: f64 },
    /// w(x) = exp(c |x|).
    ExpAbs { c: f64 },
    /// w(x) = exp(c |x|^beta), beta in (0, 1].
    SubExp { c: f64, beta: f64 },
    /// w(x) = exp(|x|^alpha1) for x < 0, exp(x^alpha2) for x >= 0.
    SuperExp { alpha1: f64, alpha2: f64 },
    /// w(x) = exp(c phi(x)) with phi(x) = x for x <= 0, x + x^2 for x >= 0.
    PhiExp { c: f64 },
    /// w_G: 1 on the depth-d fat Cantor set G, 2 elsewhere.
    CantorFlat { depth: u32 },
    /// w_{G,b}: b_m on G_m = 2m + G (m >= 1), 1 elsewhere, even in x.
    CantorSeq { depth: u32, b: BSequence },
}

pub fn phi_default(x: f64) -> f64 {
    if x <= 0.0 {
        x
    } else {
        x + x * x
    }
}

impl WeightSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::OutOfRange(msg));
        match *self {
            WeightSpec::Constant { c } if !(c > 0.0 && c.is_finite()) => bad(format!("const c={c}, need c>0")),
            WeightSpec::PowerOnePlus { alpha } if !alpha.is_finite() => bad(format!("power alpha={alpha}")),
            WeightSpec::PowerAbs { gamma } if !gamma.is_finite() => bad(format!("powerabs gamma={gamma}")),
            WeightSpec::Exp { c } if !(c > 0.0 && c.is_finite()) => bad(format!("exp c={c}, need c>0")),
            WeightSpec::ExpAbs { c } if !(c > 0.0 && c.is_finite()) => bad(format!("expabs c={c}, need c>0")),
            WeightSpec::SubExp { c, beta } if !(c > 0.0 && c.is_finite() && beta > 0.0 && beta <= 1.0) => {
                bad(format!("subexp c={c} beta={beta}, need c>0, beta in (0,1]"))
            }
            WeightSpec::SuperExp { alpha1, alpha2 } if !(alpha1 > 1.0 && alpha2 > 1.0) => {
                bad(format!("superexp alpha1={alpha1} alpha2={alpha2}, need both > 1"))
            }
            WeightSpec::PhiExp { c } if !(c > 0.0 && c.is_finite()) => bad(format!("phiexp c={c}, need c>0")),
            WeightSpec::CantorFlat { depth } if depth > MAX_CANTOR_DEPTH => {
                Err(Error::DepthOverflow(depth))
            }
            WeightSpec::CantorSeq { depth, .. } if depth > MAX_CANTOR_DEPTH => {
                Err(Error::DepthOverflow(depth))
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            WeightSpec::Constant { c } => c,
            WeightSpec::PowerOnePlus { alpha } => (1.0 + x.abs()).powf(alpha),
            WeightSpec::PowerAbs { gamma } => x.abs().powf(gamma),
            WeightSpec::Exp { c } => (c * x).exp(),
            WeightSpec::ExpAbs { c } => (c * x.abs()).exp(),
            WeightSpec::SubExp { c, beta } => (c * x.abs().powf(beta)).exp(),
            WeightSpec::SuperExp { alpha1, alpha2 } => {
                if x < 0.0 {
                    x.abs().powf(alpha1).exp()
                } else {
                    x.powf(alpha2).exp()
                }
            }
            WeightSpec::PhiExp { c } => (c * phi_default(x)).exp(),
            WeightSpec::CantorFlat { depth } => {
                if svc_contains(x, depth) {
                    1.0
                } else {
                    2.0
                }
            }
            WeightSpec::CantorSeq { depth, b } => {
                let y = x.abs();
                let m = (y / 2.0).floor();
                if m >= 1.0 && m <= u32::MAX as f64 && svc_contains(y - 2.0 * m, depth) {
                    b.value(m as u32)
                } else {
                    1.0
                }
            }
        }
    }

    /// Natural log of the weight; stable where eval itself would overflow.
    pub fn ln_eval(&self, x: f64) -> f64 {
        match *self {
            WeightSpec::Constant { c } => c.ln(),
            WeightSpec::PowerOnePlus { alpha } => alpha * (1.0 + x.abs()).ln(),
            WeightSpec::PowerAbs { gamma } => gamma * x.abs().ln(),
            WeightSpec::Exp { c } => c * x,
            WeightSpec::ExpAbs { c } => c * x.abs(),
            WeightSpec::SubExp { c, beta } => c * x.abs().powf(beta),
            WeightSpec::SuperExp { alpha1, alpha2 } => {
                if x < 0.0 {
                    x.abs().powf(alpha1)
                } else {
                    x.powf(alpha2)
                }
            }
            WeightSpec::PhiExp { c } => c * phi_default(x),
            _ => self.eval(x).ln(),
        }
    }

    /// True for the weights that are continuous on all of R.
    pub fn is_continuous(&self) -> bool {
        !matches!(
            self,
            WeightSpec::CantorFlat { .. } | WeightSpec::CantorSeq { .. }
        )
    }
}

pub fn eval_weight(spec: &WeightSpec, x: f64) -> f64 {
    spec.eval(x)
}

/// max over sampled |x| >= R, |y| <= eps of w(x+y)/w(x).
pub fn weight_regularity_ratio(
    spec: &WeightSpec,
    r: f64,
    eps: f64,
    x_samples: &[f64],
    y_samples: &[f64],
) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for &x in x_samples.iter().filter(|x| x.abs() >= r) {
        for &y in y_samples.iter().filter(|y| y.abs() <= eps) {
            let ratio = (spec.ln_eval(x + y) - spec.ln_eval(x)).exp();
            best = best.max(ratio);
        }
    }
    best
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            WeightSpec::Constant { c } => write!(f, "const:c={c}"),
            WeightSpec::PowerOnePlus { alpha } => write!(f, "power:alpha={alpha}"),
            WeightSpec::PowerAbs { gamma } => write!(f, "powerabs:gamma={gamma}"),
            WeightSpec::Exp { c } => write!(f, "exp:c={c}"),
            WeightSpec::ExpAbs { c } => write!(f, "expabs:c={c}"),
            WeightSpec::SubExp { c, beta } => write!(f, "subexp:c={c},beta={beta}"),
            WeightSpec::SuperExp { alpha1, alpha2 } => {
                write!(f, "superexp:alpha1={alpha1},alpha2={alpha2}")
            }
            WeightSpec::PhiExp { c } => write!(f, "phiexp:c={c}"),
            WeightSpec::CantorFlat { depth } => write!(f, "cantor:depth={depth}"),
            WeightSpec::CantorSeq { depth, .. } => write!(f, "cantorseq:depth={depth}"),
        }
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.rest().starts_with(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> &'a str {
        let end = self
            .rest()
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(self.rest().len());
        let out = &self.rest()[..end];
        self.pos += end;
        out
    }

    fn number(&mut self) -> Result<f64> {
        let end = self
            .rest()
            .find(|c: char| !matches!(c, '0'..='9' | '.' | '-' | '+' | 'e' | 'E'))
            .unwrap_or(self.rest().len());
        let raw = &self.rest()[..end];
        let value: f64 = raw.parse().map_err(|_| Error::Parse {
            offset: self.pos,
            expected: "decimal number".into(),
        })?;
        self.pos += end;
        Ok(value)
    }
}

/// Parse the weight DSL `name(":" key "=" number ("," key "=" number)*)?`.
/// Names: const, power, powerabs, exp, expabs, subexp, superexp, phiexp,
/// cantor, cantorseq. Unspecified keys take the documented defaults.
pub fn parse_weight_spec(text: &str) -> Result<WeightSpec> {
    let mut cur = Cursor { text, pos: 0 };
    let name_at = cur.pos;
    let name = cur.ident();
    let mut pairs: Vec<(usize, String, f64)> = Vec::new();
    if cur.eat(':') {
        loop {
            let key_at = cur.pos;
            let key = cur.ident();
            if key.is_empty() {
                return Err(Error::Parse {
                    offset: key_at,
                    expected: "parameter key".into(),
                });
            }
            if !cur.eat('=') {
                return Err(Error::Parse {
                    offset: cur.pos,
                    expected: "'='".into(),
                });
            }
            let value = cur.number()?;
            pairs.push((key_at, key.to_string(), value));
            if !cur.eat(',') {
                break;
            }
        }
    }
    if !cur.rest().is_empty() {
        return Err(Error::Parse {
            offset: cur.pos,
            expected: "',' or end of input".into(),
        });
    }

    let keys: &[(&str, f64)] = match name {
        "const" => &[("c", 1.0)],
        "power" => &[("alpha", 0.0)],
        "powerabs" => &[("gamma", 0.0)],
        "exp" => &[("c", 1.0)],
        "expabs" => &[("c", 1.0)],
        "subexp" => &[("c", 1.0), ("beta", 0.5)],
        "superexp" => &[("alpha1", 2.0), ("alpha2", 2.0)],
        "phiexp" => &[("c", 1.0)],
        "cantor" => &[("depth", 8.0)],
        "cantorseq" => &[("depth", 8.0)],
        _ => {
            return Err(Error::Parse {
                offset: name_at,
                expected: "one of const, power, powerabs, exp, expabs, subexp, superexp, phiexp, cantor, cantorseq".into(),
            })
        }
    };
    let mut resolved: Vec<f64> = keys.iter().map(|&(_, d)| d).collect();
    for (at, key, value) in pairs {
        match keys.iter().position(|&(k, _)| k == key) {
            Some(i) => resolved[i] = value,
            None => {
                return Err(Error::Parse {
                    offset: at,
                    expected: format!(
                        "one of: {}",
                        keys.iter().map(|&(k, _)| k).collect::<Vec<_>>().join(", ")
                    ),
                })
            }
        }
    }
    let depth_of = |v: f64| -> Result<u32> {
        if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
            Ok(v as u32)
        } else {
            Err(Error::OutOfRange(format!("depth={v}, need a nonnegative integer")))
        }
    };
    let spec = match name {
        "const" => WeightSpec::Constant { c: resolved[0] },
        "power" => WeightSpec::PowerOnePlus { alpha: resolved[0] },
        "powerabs" => WeightSpec::PowerAbs { gamma: resolved[0] },
        "exp" => WeightSpec::Exp { c: resolved[0] },
        "expabs" => WeightSpec::ExpAbs { c: resolved[0] },
        "subexp" => WeightSpec::SubExp {
            c: resolved[0],
            beta: resolved[1],
        },
        "superexp" => WeightSpec::SuperExp {
            alpha1: resolved[0],
            alpha2: resolved[1],
        },
        "phiexp" => WeightSpec::PhiExp { c: resolved[0] },
        "cantor" => WeightSpec::CantorFlat {
            depth: depth_of(resolved[0])?,
        },
        "cantorseq" => WeightSpec::CantorSeq {
            depth: depth_of(resolved[0])?,
            b: BSequence::Harmonic,
        },
        _ => unreachable!(),
    };
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fat_cantor_measure_closed_form() {
        for depth in [0u32, 1, 2, 6, 10, 16, 20] {
            let set = build_fat_cantor(depth).unwrap();
            let expected = 0.5 + 2.0f64.powi(-(depth as i32) - 1);
            assert_eq!(set.measure(), expected, "depth {depth}");
            assert_eq!(set.intervals().len(), 1 << depth);
        }
        assert!(build_fat_cantor(MAX_BUILD_DEPTH + 1).is_err());
        // beyond the materialization cap the exact measure is still available
        let deep = svc_measure_within(0.0, 1.0, 30) as f64 / (1u128 << 96) as f64;
        assert_eq!(deep, 0.5 + 2.0f64.powi(-31));
    }

    #[test]
    fn membership_matches_interval_list() {
        let depth = 6;
        let set = build_fat_cantor(depth).unwrap();
        let intervals = set.intervals();
        for i in 0..=2000 {
            let x = i as f64 / 2000.0;
            let in_list = intervals.iter().any(|&(a, b)| x >= a && x <= b);
            assert_eq!(svc_contains(x, depth), in_list, "x={x}");
        }
        assert!(svc_contains(0.0, depth));
        assert!(svc_contains(1.0, depth));
        assert!(!svc_contains(0.5, depth)); // center of the first gap
        assert!(!svc_contains(-0.1, depth));
        assert!(!svc_contains(1.1, depth));
    }

    #[test]
    fn interval_measure_is_exact() {
        for depth in [1u32, 4, 8] {
            let set = build_fat_cantor(depth).unwrap();
            assert_eq!(svc_measure_within(0.0, 1.0, depth), set.measure_fixed());
            assert_eq!(svc_measure_within(-3.0, 5.0, depth), set.measure_fixed());
            // additivity across an interior split point
            let left = svc_measure_within(0.0, 0.3, depth);
            let right = svc_measure_within(0.3, 1.0, depth);
            assert_eq!(left + right, set.measure_fixed());
        }
        // inside the first removed gap (0.375, 0.625) nothing survives
        assert_eq!(svc_measure_within(0.4, 0.6, 3), 0);
    }

    #[test]
    fn interval_measure_matches_interval_list() {
        let depth = 5;
        let set = build_fat_cantor(depth).unwrap();
        for &(a, b) in &[(0.1, 0.9), (0.0, 0.2), (0.37, 0.63), (0.62, 0.64)] {
            let from_list: f64 = set
                .intervals()
                .iter()
                .map(|&(lo, hi)| (hi.min(b) - lo.max(a)).max(0.0))
                .sum();
            let direct = svc_measure_within(a, b, depth) as f64 / (1u128 << 96) as f64;
            assert!((from_list - direct).abs() < 1e-12, "[{a}, {b}]");
        }
    }

    #[test]
    fn cantor_seq_weight_is_even_and_translated() {
        let w = WeightSpec::CantorSeq {
            depth: 4,
            b: BSequence::Harmonic,
        };
        for i in 0..500 {
            let x = i as f64 * 0.017;
            assert_eq!(w.eval(x), w.eval(-x), "x={x}");
        }
        // on 2m + G the value is 1/(m+1)
        assert_eq!(w.eval(2.0), 0.5); // x=2: G-point 0 translated by m=1
        assert_eq!(w.eval(6.05), 0.25); // 0.05 is in G at depth 4
        assert_eq!(w.eval(2.5), 1.0); // first gap, translated
        assert_eq!(w.eval(1.5), 1.0); // between copies
        assert_eq!(w.eval(0.1), 1.0); // m = 0 excluded
    }

    #[test]
    fn weight_eval_matches_ln_eval() {
        let specs = [
            WeightSpec::Constant { c: 3.0 },
            WeightSpec::PowerOnePlus { alpha: -1.3 },
            WeightSpec::PowerAbs { gamma: 0.7 },
            WeightSpec::Exp { c: 0.8 },
            WeightSpec::ExpAbs { c: 1.2 },
            WeightSpec::SubExp { c: 1.0, beta: 0.5 },
            WeightSpec::SuperExp {
                alpha1: 2.0,
                alpha2: 3.0,
            },
            WeightSpec::PhiExp { c: 0.5 },
        ];
        for w in &specs {
            for i in -20..=20 {
                let x = i as f64 * 0.3;
                let direct = w.eval(x);
                let via_ln = w.ln_eval(x).exp();
                assert!(
                    (direct - via_ln).abs() <= direct.abs() * 1e-12,
                    "{w} at {x}: {direct} vs {via_ln}"
                );
            }
        }
    }

    #[test]
    fn super_exponential_is_asymmetric() {
        let w = WeightSpec::SuperExp {
            alpha1: 2.0,
            alpha2: 3.0,
        };
        assert_eq!(w.ln_eval(-2.0), 4.0);
        assert_eq!(w.ln_eval(2.0), 8.0);
    }

    #[test]
    fn regularity_ratio_for_exponential_weight() {
        let w = WeightSpec::Exp { c: 1.0 };
        let xs: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let ys: Vec<f64> = (-8..=8).map(|i| i as f64 * 0.025).collect();
        let ratio = weight_regularity_ratio(&w, 5.0, 0.2, &xs, &ys);
        assert!((ratio - 0.2f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn parser_round_trips_display_form() {
        let cases = [
            "const:c=2.5",
            "power:alpha=0.2",
            "powerabs:gamma=-0.3",
            "exp:c=1",
            "expabs:c=0.5",
            "subexp:c=1,beta=0.5",
            "superexp:alpha1=2,alpha2=3",
            "phiexp:c=1",
            "cantor:depth=8",
            "cantorseq:depth=8",
        ];
        for text in cases {
            let spec = parse_weight_spec(text).unwrap();
            let again = parse_weight_spec(&spec.to_string()).unwrap();
            assert_eq!(spec, again, "{text}");
        }
    }

    #[test]
    fn parser_applies_defaults() {
        assert_eq!(parse_weight_spec("exp").unwrap(), WeightSpec::Exp { c: 1.0 });
        assert_eq!(
            parse_weight_spec("subexp:c=2").unwrap(),
            WeightSpec::SubExp { c: 2.0, beta: 0.5 }
        );
        assert_eq!(
            parse_weight_spec("cantor").unwrap(),
            WeightSpec::CantorFlat { depth: 8 }
        );
    }

    #[test]
    fn parser_reports_byte_offsets() {
        match parse_weight_spec("nosuch:c=1") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("{other:?}"),
        }
        match parse_weight_spec("exp:bogus=1") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        match parse_weight_spec("exp:c") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("{other:?}"),
        }
        match parse_weight_spec("exp:c=xyz") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("{other:?}"),
        }
        match parse_weight_spec("exp:c=1 trailing") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 7),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn validation_gates() {
        assert!(parse_weight_spec("exp:c=-1").is_err());
        assert!(parse_weight_spec("subexp:beta=1.5").is_err());
        assert!(parse_weight_spec("superexp:alpha1=1").is_err());
        assert!(parse_weight_spec("cantor:depth=31").is_err());
        assert!(parse_weight_spec("cantor:depth=2.5").is_err());
    }
}
