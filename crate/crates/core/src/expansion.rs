//! Deterministic expansion parameters of a start–destination pair and the
//! running-time criteria built on them.
//!
//! Landmark steps are computed from the integer step costs of a
//! [`LayerCostProfile`]:
//!
//! * `cheap_s(α)`: latest step with `c_s([1, j]) <= m^α`,
//! * `cheap_t(α)`: earliest step with `c_t([j, d]) <= m^α`,
//! * `expan_s(b)`: latest step such that `[1, j]` is b-expanding from `s`,
//! * `expan_t(b)`: earliest step such that `[j, d]` is b-expanding from `t`.
//!
//! Segment lengths `S1 = expan_s`, `S2 = cheap_t - expan_s - 1`,
//! `T1 = d - expan_t + 1`, `T2 = expan_t - cheap_s - 1` feed
//! `ρ = max{S2, T2} / min{S1, T1}`, which is compared against
//! `ρ_max = (1-α) / (1-α + α log_b(b⁺))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{log_base, within_budget, Base, Scalar};
use crate::search::LayerCostProfile;

fn check_alpha<F: Scalar>(alpha: F) -> Result<()> {
    if alpha >= F::zero() && alpha < F::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("alpha must lie in [0, 1), got {alpha}")))
    }
}

/// `(cheap_s, cheap_t)`; `None` when the first step on that side already
/// exceeds the budget `m^α`.
pub fn compute_cheap<F: Scalar>(profile: &LayerCostProfile, alpha: F) -> Result<(Option<usize>, Option<usize>)> {
    check_alpha(alpha)?;
    let d = profile.d;
    let m = profile.m;

    let mut cheap_s = None;
    let mut sum = 0u64;
    for j in 1..=d {
        sum += profile.cs(j);
        if !within_budget(sum, m, alpha) {
            break;
        }
        cheap_s = Some(j);
    }

    let mut cheap_t = None;
    let mut sum = 0u64;
    for j in (1..=d).rev() {
        sum += profile.ct(j);
        if !within_budget(sum, m, alpha) {
            break;
        }
        cheap_t = Some(j);
    }
    Ok((cheap_s, cheap_t))
}

/// `(expan_s, expan_t)`. A single step is vacuously expanding, so
/// `expan_s >= 1` and `expan_t <= d`. Accepts `b >= 1` (with `b = 1`
/// meaning non-decreasing costs).
pub fn compute_expan(profile: &LayerCostProfile, b: Base) -> Result<(usize, usize)> {
    if b < Base::integer(1) {
        return Err(Error::InvalidParameter(format!("expansion base must be at least 1, got {b}")));
    }
    let d = profile.d;
    let mut expan_s = 1;
    while expan_s < d && b.grows(profile.cs(expan_s), profile.cs(expan_s + 1)) {
        expan_s += 1;
    }
    let mut expan_t = d;
    while expan_t > 1 && b.grows(profile.ct(expan_t), profile.ct(expan_t - 1)) {
        expan_t -= 1;
    }
    Ok((expan_s, expan_t))
}

/// Largest growth ratio between adjacent steps in either direction, clamped
/// below by `b`. Exact.
pub fn highest_expansion(profile: &LayerCostProfile, b: Base) -> Base {
    let mut best = b;
    let d = profile.d;
    for k in 1..d {
        let fwd = Base::new(profile.cs(k + 1), profile.cs(k)).expect("positive step cost");
        let bwd = Base::new(profile.ct(k), profile.ct(k + 1)).expect("positive step cost");
        best = best.max(fwd).max(bwd);
    }
    best
}

/// Step-valued landmarks and segment lengths for one `(α, b)`. Signed
/// quantities can go negative when the cheap regions or the expanding
/// regions overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Landmarks {
    pub d: usize,
    pub cheap_s: usize,
    pub cheap_t: usize,
    pub expan_s: usize,
    pub expan_t: usize,
    pub overlap: i64,
    pub d_alpha: i64,
    #[serde(rename = "S1")]
    pub s1: i64,
    #[serde(rename = "S2")]
    pub s2: i64,
    #[serde(rename = "T1")]
    pub t1: i64,
    #[serde(rename = "T2")]
    pub t2: i64,
}

impl Landmarks {
    /// `d_alpha <= 0`: the cheap prefix and suffix already meet.
    pub fn covered(&self) -> bool {
        self.d_alpha <= 0
    }

    /// `overlap / d_alpha`, defined only when `d_alpha > 0`.
    pub fn c_rel<F: Scalar>(&self) -> Option<F> {
        (self.d_alpha > 0).then(|| F::of(self.overlap as f64) / F::of(self.d_alpha as f64))
    }

    /// `max{S2, T2} / min{S1, T1}`, with negative lengths read as empty
    /// segments.
    pub fn rho<F: Scalar>(&self) -> F {
        let num = self.s2.max(self.t2).max(0);
        let den = self.s1.min(self.t1);
        F::of(num as f64) / F::of(den as f64)
    }
}

pub fn landmarks<F: Scalar>(profile: &LayerCostProfile, alpha: F, b: Base) -> Result<Landmarks> {
    let (cheap_s, cheap_t) = compute_cheap(profile, alpha)?;
    let (Some(cheap_s), Some(cheap_t)) = (cheap_s, cheap_t) else {
        return Err(Error::AlphaTooSmall { alpha: alpha.to_f64().unwrap_or(f64::NAN) });
    };
    let (expan_s, expan_t) = compute_expan(profile, b)?;
    let d = profile.d as i64;
    let (cs, ct, es, et) = (cheap_s as i64, cheap_t as i64, expan_s as i64, expan_t as i64);
    Ok(Landmarks {
        d: profile.d,
        cheap_s,
        cheap_t,
        expan_s,
        expan_t,
        overlap: es - et + 1,
        d_alpha: ct - cs - 1,
        s1: es,
        s2: ct - es - 1,
        t1: d - et + 1,
        t2: et - cs - 1,
    })
}

/// Everything computed for one pair at one `(α, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionParams<F: Scalar> {
    pub alpha: F,
    pub b: F,
    pub b_plus: F,
    pub d: usize,
    pub cheap_s: usize,
    pub cheap_t: usize,
    pub expan_s: usize,
    pub expan_t: usize,
    pub overlap: i64,
    pub d_alpha: i64,
    #[serde(rename = "S1")]
    pub s1: i64,
    #[serde(rename = "S2")]
    pub s2: i64,
    #[serde(rename = "T1")]
    pub t1: i64,
    #[serde(rename = "T2")]
    pub t2: i64,
    pub rho: F,
    pub rho_max: F,
    pub delta_rho: F,
    /// `overlap / d_alpha`; `None` when the pair is covered.
    pub c_rel: Option<F>,
    pub covered: bool,
    pub eps: Option<F>,
    pub predicted_exponent_thm: Option<F>,
    pub predicted_exponent_exp: Option<F>,
}

impl<F: Scalar> ExpansionParams<F> {
    pub fn landmarks(&self) -> Landmarks {
        Landmarks {
            d: self.d,
            cheap_s: self.cheap_s,
            cheap_t: self.cheap_t,
            expan_s: self.expan_s,
            expan_t: self.expan_t,
            overlap: self.overlap,
            d_alpha: self.d_alpha,
            s1: self.s1,
            s2: self.s2,
            t1: self.t1,
            t2: self.t2,
        }
    }

    pub fn log_b_bplus(&self) -> F {
        log_base(self.b_plus, self.b)
    }
}

pub fn compute_params<F: Scalar>(profile: &LayerCostProfile, alpha: F, b: Base) -> Result<ExpansionParams<F>> {
    if !b.is_above_one() {
        return Err(Error::InvalidParameter(format!("expansion base must exceed 1, got {b}")));
    }
    let lm = landmarks(profile, alpha, b)?;
    let bf: F = b.to_scalar();
    let b_plus: F = highest_expansion(profile, b).to_scalar();
    let rho = lm.rho::<F>();
    let rho_max = rho_max(alpha, bf, b_plus);
    let c_rel = lm.c_rel::<F>();
    let log_bp = log_base(b_plus, bf);
    let exps = c_rel.map(|c| exponent_forms(c.max(F::zero()), alpha, log_bp));
    Ok(ExpansionParams {
        alpha,
        b: bf,
        b_plus,
        d: lm.d,
        cheap_s: lm.cheap_s,
        cheap_t: lm.cheap_t,
        expan_s: lm.expan_s,
        expan_t: lm.expan_t,
        overlap: lm.overlap,
        d_alpha: lm.d_alpha,
        s1: lm.s1,
        s2: lm.s2,
        t1: lm.t1,
        t2: lm.t2,
        rho,
        rho_max,
        delta_rho: delta_rho(rho, rho_max),
        c_rel,
        covered: lm.covered(),
        eps: exps.map(|e| e.eps),
        predicted_exponent_thm: exps.map(|e| e.theorem),
        predicted_exponent_exp: exps.map(|e| e.experimental),
    })
}

/// `(1-α) / (1-α + α log_b(b⁺))`.
pub fn rho_max<F: Scalar>(alpha: F, b: F, b_plus: F) -> F {
    let one_minus = F::one() - alpha;
    one_minus / (one_minus + alpha * log_base(b_plus, b))
}

/// `1/(1+ρ) - 1/(1+ρ_max)`: positive exactly when `ρ < ρ_max`.
pub fn delta_rho<F: Scalar>(rho: F, rho_max: F) -> F {
    F::one() / (F::one() + rho) - F::one() / (F::one() + rho_max)
}

/// Upper bound on balanced bidirectional cost for a pair with a b-expansion
/// overlap of size at least `c log_b(m)`:
/// `8 log_b(2m) · b²/(b-1) · m^(1 - c/2)`.
pub fn overlap_cost_bound<F: Scalar>(b: F, c: F, m: F) -> F {
    let two = F::of(2.0);
    F::of(8.0) * log_base(two * m, b) * b * b / (b - F::one()) * m.powf(F::one() - c / two)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PredictedExponent<F: Scalar> {
    /// `ε = c(1-α) / (log_b(b⁺) + c)`.
    pub eps: F,
    /// `1 - ε`, the exponent as stated by the sublinear-overlap theorem.
    pub theorem: F,
    /// `1 - c(1-α) / (2(log_b(b⁺) + c))`, the form used in the experiments.
    pub experimental: F,
}

fn exponent_forms<F: Scalar>(c: F, alpha: F, log_b_bplus: F) -> PredictedExponent<F> {
    let eps = c * (F::one() - alpha) / (log_b_bplus + c);
    PredictedExponent { eps, theorem: F::one() - eps, experimental: F::one() - eps / F::of(2.0) }
}

/// Both exponent forms for a pair; `c` is `max(c_rel, 0)`.
pub fn predicted_exponent<F: Scalar>(params: &ExpansionParams<F>) -> Result<PredictedExponent<F>> {
    let c = params
        .c_rel
        .ok_or_else(|| Error::InvalidParameter("relative overlap undefined: cheap regions cover the distance".into()))?;
    Ok(exponent_forms(c.max(F::zero()), params.alpha, params.log_b_bplus()))
}

/// Exponent for a pair whose degrees bound the cheap regions:
/// `δ = log_m(deg_s)`, result `1 - c(1-δ) / (log_b(b⁺) + c)`.
pub fn degree_bounded_exponent<F: Scalar>(deg_s: u64, deg_t: u64, m: u64, c: F, b: F, b_plus: F) -> Result<F> {
    if deg_s > m {
        return Err(Error::InvalidParameter(format!("deg(s) = {deg_s} exceeds m = {m}")));
    }
    if deg_t > deg_s {
        return Err(Error::InvalidParameter(format!("requires deg(t) <= deg(s), got {deg_t} > {deg_s}")));
    }
    if !(c > F::zero() && c <= F::one()) {
        return Err(Error::InvalidParameter(format!("c must lie in (0, 1], got {c}")));
    }
    let delta = if deg_s <= 1 { F::zero() } else { F::of_u64(deg_s).ln() / F::of_u64(m).ln() };
    Ok(F::one() - c * (F::one() - delta) / (log_base(b_plus, b) + c))
}

/// Every α in `[0, 1)` at which a cheap landmark changes: `log_m` of each
/// prefix sum from `s` and each suffix sum from `t`, sorted and distinct.
pub fn alpha_breakpoints<F: Scalar>(profile: &LayerCostProfile) -> Vec<F> {
    let m = profile.m;
    let mut sums: Vec<u64> = Vec::with_capacity(2 * profile.d);
    let mut acc = 0;
    for j in 1..=profile.d {
        acc += profile.cs(j);
        sums.push(acc);
    }
    acc = 0;
    for j in (1..=profile.d).rev() {
        acc += profile.ct(j);
        sums.push(acc);
    }
    sums.retain(|&c| c < m);
    sums.sort_unstable();
    sums.dedup();
    let ln_m = F::of_u64(m).ln();
    sums.into_iter().map(|c| F::of_u64(c).ln() / ln_m).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// Smallest predicted exponent.
    MinExponent,
    /// Smallest `ρ - ρ_max`, i.e. the pair as far inside the sublinear
    /// criterion as possible.
    MinRhoGap,
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min_exponent" | "min-exponent" => Ok(Objective::MinExponent),
            "min_rho_gap" | "min-rho-gap" => Ok(Objective::MinRhoGap),
            _ => Err(Error::InvalidParameter(format!("unknown objective '{s}'"))),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::MinExponent => "min_exponent",
            Objective::MinRhoGap => "min_rho_gap",
        })
    }
}

fn objective_value<F: Scalar>(params: &ExpansionParams<F>, objective: Objective) -> Option<F> {
    match objective {
        Objective::MinExponent => params.predicted_exponent_exp,
        Objective::MinRhoGap => Some(params.rho - params.rho_max),
    }
}

/// Best α among the breakpoints (at most `cap` when given). Covered
/// candidates (`d_alpha <= 0`) are skipped: any fixed-size pair becomes
/// covered for α close enough to 1. Ties go to the smallest α.
pub fn optimize_alpha<F: Scalar>(
    profile: &LayerCostProfile,
    b: Base,
    objective: Objective,
    cap: Option<F>,
) -> Result<(F, ExpansionParams<F>)> {
    let mut best: Option<(F, F, ExpansionParams<F>)> = None;
    for alpha in alpha_breakpoints::<F>(profile) {
        if cap.is_some_and(|c| alpha > c) {
            break;
        }
        let params = match compute_params(profile, alpha, b) {
            Ok(p) => p,
            Err(Error::AlphaTooSmall { .. }) => continue,
            Err(e) => return Err(e),
        };
        if params.covered {
            continue;
        }
        let Some(value) = objective_value(&params, objective) else { continue };
        if best.as_ref().is_none_or(|(v, _, _)| value < *v) {
            best = Some((value, alpha, params));
        }
    }
    best.map(|(_, a, p)| (a, p)).ok_or(Error::NoFeasibleAlpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    SublinearGuaranteed,
    NoGuarantee,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::SublinearGuaranteed => "SUBLINEAR_GUARANTEED",
            Classification::NoGuarantee => "NO_GUARANTEE",
        })
    }
}

pub fn classify<F: Scalar>(rho: F, rho_max: F) -> Classification {
    if rho < rho_max {
        Classification::SublinearGuaranteed
    } else {
        Classification::NoGuarantee
    }
}

pub fn dichotomy_classify<F: Scalar>(params: &ExpansionParams<F>) -> Classification {
    classify(params.rho, params.rho_max)
}
