//! One- and two-weight constants with time lag, in both time orientations.
//!
//! The forward two-weight constant is the supremum over the rectangle family
//! of [mean of u^q over the past part]^{1/q} · [mean of v^{−r'} over the
//! future part]^{1/r'}, with the usual modifications at r = 1 (essential sup
//! of v^{−1} over the future part) and q = ∞ (essential sup of u over the
//! past part). The backward constant swaps the roles of the parts. On a
//! finite grid essential sup/inf are max/min over cells.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{admissible_half_widths, enumerate_rectangles, RectConstraint, TimeLag};
use crate::lattice::{box_max, box_min, GridFunction, GridSpec, PrefixSumTable};
use crate::math;
use crate::operators::{fractional_maximal, Direction, Engine, FractionalOrder, MaximalParams};

/// An integrability exponent in [1, ∞].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Exponent {
    Finite(f64),
    #[serde(rename = "inf")]
    Infinity,
}

impl Exponent {
    pub fn finite(v: f64) -> Result<Self> {
        if !(v >= 1.0 && v.is_finite()) {
            return Err(Error::InvalidParam(format!(
                "exponent {v} must lie in [1, ∞]"
            )));
        }
        Ok(Exponent::Finite(v))
    }

    pub fn parse(v: f64) -> Result<Self> {
        if v.is_infinite() {
            Ok(Exponent::Infinity)
        } else {
            Self::finite(v)
        }
    }

    #[inline]
    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    #[inline]
    pub fn as_f64(&self) -> f64 {
        match self {
            Exponent::Finite(v) => *v,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    #[inline]
    pub fn recip(&self) -> f64 {
        match self {
            Exponent::Finite(v) => 1.0 / v,
            Exponent::Infinity => 0.0,
        }
    }

    /// Hölder conjugate: 1/e + 1/e' = 1, with 1' = ∞ and ∞' = 1.
    pub fn conjugate(&self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(v) if *v == 1.0 => Exponent::Infinity,
            Exponent::Finite(v) => Exponent::Finite(v / (v - 1.0)),
        }
    }

    pub fn display(&self) -> String {
        match self {
            Exponent::Finite(v) => format!("{v}"),
            Exponent::Infinity => String::from("inf"),
        }
    }
}

/// A pair (r, q) with 1 ≤ r ≤ q ≤ ∞ and its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentPair {
    pub r: Exponent,
    pub q: Exponent,
}

impl ExponentPair {
    pub fn new(r: Exponent, q: Exponent) -> Result<Self> {
        if r.as_f64() > q.as_f64() {
            return Err(Error::InvalidParam(format!(
                "need r ≤ q, got r={} q={}",
                r.display(),
                q.display()
            )));
        }
        Ok(ExponentPair { r, q })
    }

    pub fn diagonal(v: f64) -> Result<Self> {
        let e = Exponent::finite(v)?;
        ExponentPair::new(e, e)
    }

    pub fn finite(r: f64, q: f64) -> Result<Self> {
        ExponentPair::new(Exponent::finite(r)?, Exponent::finite(q)?)
    }

    /// The off-diagonal gap α = 1/r − 1/q ∈ [0, 1].
    pub fn alpha(&self) -> f64 {
        self.r.recip() - self.q.recip()
    }

    /// The interpolation exponent s with 1/s' = 1/r − 1/q; s = 1 on the
    /// diagonal (where s' = ∞).
    pub fn s(&self) -> f64 {
        let a = self.alpha();
        if a == 0.0 {
            1.0
        } else {
            1.0 / (1.0 - a)
        }
    }

    /// Whether `other` preserves the off-diagonal relation
    /// 1/r − 1/q = 1/r₀ − 1/q₀.
    pub fn same_gap(&self, other: &ExponentPair) -> bool {
        math::abs(self.alpha() - other.alpha()) <= 1e-12
    }

    /// Exponent of the one-weight class that ω^q inherits: 1 + q/r'.
    pub fn q_class(&self) -> f64 {
        1.0 + self.q.as_f64() * self.r.conjugate().recip()
    }

    /// Exponent of the backward class that ω^{−r'} inherits: 1 + r'/q.
    pub fn dual_class(&self) -> f64 {
        1.0 + self.r.conjugate().as_f64() * self.q.recip()
    }

    pub fn display(&self) -> String {
        format!("({},{})", self.r.display(), self.q.display())
    }
}

/// A strictly positive grid function.
#[derive(Debug, Clone)]
pub struct Weight {
    grid: GridFunction,
}

impl Weight {
    pub fn new(grid: GridFunction) -> Result<Self> {
        for (i, &v) in grid.values().iter().enumerate() {
            if v.is_nan() || v <= 0.0 {
                return Err(Error::NonPositiveWeight { index: i });
            }
        }
        Ok(Weight { grid })
    }

    pub fn one(spec: GridSpec) -> Self {
        Weight {
            grid: GridFunction::constant(spec, 1.0).unwrap(),
        }
    }

    #[inline]
    pub fn grid(&self) -> &GridFunction {
        &self.grid
    }

    #[inline]
    pub fn spec(&self) -> &GridSpec {
        &self.grid.spec
    }

    /// Pointwise power ω^e (any real e; positivity is preserved).
    pub fn pow(&self, e: f64) -> Result<Weight> {
        Weight::new(self.grid.map(|v| math::pow(v, e))?)
    }

    pub fn mul(&self, other: &Weight) -> Result<Weight> {
        Weight::new(self.grid.mul(&other.grid)?)
    }

    pub fn reflect_time(&self) -> Weight {
        Weight {
            grid: self.grid.reflect_time(),
        }
    }
}

/// Which factor goes over which part, after orientation.
fn part_roles(dir: Direction) -> (bool, bool) {
    // (first factor over lower part?, second factor over lower part?)
    match dir {
        Direction::Forward => (true, false),
        Direction::Backward => (false, true),
    }
}

/// The two-weight constant over the admissible rectangle family.
pub fn two_weight_constant(
    u: &Weight,
    v: &Weight,
    e: &ExponentPair,
    gamma: TimeLag,
    dir: Direction,
) -> Result<f64> {
    let spec = *u.spec();
    let rects = enumerate_rectangles(&spec, gamma, &RectConstraint::All);
    if rects.is_empty() {
        return Err(Error::DegenerateGrid);
    }
    // First factor: mean(u^q)^{1/q}, or max(u) when q = ∞.
    // Second factor: mean(v^{−r'})^{1/r'}, or max(v^{−1}) = 1/min(v) when r = 1.
    let r_conj = e.r.conjugate();
    let u_pow = match e.q {
        Exponent::Finite(q) => Some(PrefixSumTable::build(u.pow(q)?.grid())?),
        Exponent::Infinity => None,
    };
    let v_pow = match r_conj {
        Exponent::Finite(rc) => Some(PrefixSumTable::build(v.pow(-rc)?.grid())?),
        Exponent::Infinity => None,
    };
    let (first_lower, _) = part_roles(dir);
    let mut sup = 0.0_f64;
    for rect in &rects {
        let lower = rect.lower_part(&spec, gamma)?;
        let upper = rect.upper_part(&spec, gamma)?;
        let (first_box, second_box) = if first_lower {
            (&lower, &upper)
        } else {
            (&upper, &lower)
        };
        let f1 = match (&u_pow, e.q) {
            (Some(t), Exponent::Finite(q)) => math::pow(t.average(first_box)?, 1.0 / q),
            _ => box_max(u.grid(), first_box)?,
        };
        let f2 = match (&v_pow, r_conj) {
            (Some(t), Exponent::Finite(rc)) => math::pow(t.average(second_box)?, 1.0 / rc),
            _ => 1.0 / box_min(v.grid(), second_box)?,
        };
        sup = sup.max(f1 * f2);
    }
    Ok(sup)
}

/// One-weight constant: the two-weight constant with u = v = ω.
pub fn one_weight_constant(
    omega: &Weight,
    e: &ExponentPair,
    gamma: TimeLag,
    dir: Direction,
) -> Result<f64> {
    two_weight_constant(omega, omega, e, gamma, dir)
}

/// Both evaluations of the A_q-type constant for q ∈ (1, ∞):
/// `from_pair` = one_weight_constant(ω^{1/q}, (q,q))^q and `classical` =
/// sup over rectangles of mean(ω over past)·[mean(ω^{1/(1−q)} over future)]^{q−1}
/// (parts swapped for the backward class).
#[derive(Debug, Clone, Copy)]
pub struct AqForms {
    pub from_pair: f64,
    pub classical: f64,
}

pub fn aq_constant_forms(
    omega: &Weight,
    q: f64,
    gamma: TimeLag,
    dir: Direction,
) -> Result<AqForms> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::InvalidParam("A_q constant needs q in (1, ∞)".into()));
    }
    let pair = ExponentPair::diagonal(q)?;
    let root = omega.pow(1.0 / q)?;
    let from_pair = math::pow(one_weight_constant(&root, &pair, gamma, dir)?, q);

    let spec = *omega.spec();
    let rects = enumerate_rectangles(&spec, gamma, &RectConstraint::All);
    if rects.is_empty() {
        return Err(Error::DegenerateGrid);
    }
    let w = PrefixSumTable::build(omega.grid())?;
    let w_dual = PrefixSumTable::build(omega.pow(1.0 / (1.0 - q))?.grid())?;
    let (first_lower, _) = part_roles(dir);
    let mut sup = 0.0_f64;
    for rect in &rects {
        let lower = rect.lower_part(&spec, gamma)?;
        let upper = rect.upper_part(&spec, gamma)?;
        let (first_box, second_box) = if first_lower {
            (&lower, &upper)
        } else {
            (&upper, &lower)
        };
        let v = w.average(first_box)? * math::pow(w_dual.average(second_box)?, q - 1.0);
        sup = sup.max(v);
    }
    Ok(AqForms {
        from_pair,
        classical: sup,
    })
}

/// The A_q-type constant (the exponent-pair form is primary).
pub fn aq_constant(omega: &Weight, q: f64, gamma: TimeLag, dir: Direction) -> Result<f64> {
    Ok(aq_constant_forms(omega, q, gamma, dir)?.from_pair)
}

/// The two candidate evaluations of the A₁-type constant.
///
/// `maximal`: max over valid cells of M(ω)/ω, with M the maximal operator of
/// the opposite orientation (forward maximal for the backward class and vice
/// versa). `rectangle`: the degenerate r = q = 1 rectangle form
/// sup mean(ω over one part) / min(ω over the other part). No identity
/// between the two is asserted; both are reported.
#[derive(Debug, Clone, Copy)]
pub struct A1Forms {
    pub maximal: f64,
    pub rectangle: f64,
}

pub fn a1_constant(omega: &Weight, gamma: TimeLag, dir: Direction) -> Result<A1Forms> {
    let spec = *omega.spec();
    let m_dir = dir.flip();
    let params = MaximalParams {
        gamma,
        alpha: FractionalOrder::new(0.0)?,
        dir: m_dir,
        engine: Engine::Fast,
    };
    let m = fractional_maximal(omega.grid(), &params)?;
    let mut maximal = 0.0_f64;
    for i in 0..spec.cell_count() {
        if m.valid[i] {
            maximal = maximal.max(m.grid.value_flat(i) / omega.grid().value_flat(i));
        }
    }

    let rects = enumerate_rectangles(&spec, gamma, &RectConstraint::All);
    if rects.is_empty() {
        return Err(Error::DegenerateGrid);
    }
    let table = PrefixSumTable::build(omega.grid())?;
    let (first_lower, _) = part_roles(dir);
    let mut rectangle = 0.0_f64;
    for rect in &rects {
        let lower = rect.lower_part(&spec, gamma)?;
        let upper = rect.upper_part(&spec, gamma)?;
        let (avg_box, inf_box) = if first_lower {
            (&lower, &upper)
        } else {
            (&upper, &lower)
        };
        let v = table.average(avg_box)? / box_min(omega.grid(), inf_box)?;
        rectangle = rectangle.max(v);
    }
    Ok(A1Forms { maximal, rectangle })
}

/// The A_q profile along a list of exponents; the tail is the finite-grid
/// stand-in for the q → ∞ limit.
pub fn ainfty_profile(
    omega: &Weight,
    gamma: TimeLag,
    dir: Direction,
    q_list: &[f64],
) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(q_list.len());
    for &q in q_list {
        out.push((q, aq_constant(omega, q, gamma, dir)?));
    }
    Ok(out)
}

/// For each admissible half-width, the mean over the past part of a centered
/// rectangle R of |b − M_R(b)|, where M_R is the forward maximal operator
/// restricted to R, the quantity a bracket-norm bound controls from below.
pub fn restricted_symbol_gap(
    spec: &GridSpec,
    b: &GridFunction,
    gamma: TimeLag,
) -> Result<Vec<f64>> {
    use crate::geometry::ParabolicRectangle;
    use crate::lattice::{for_each_cell, Cell};
    use crate::operators::restricted_maximal;

    let mut out = Vec::new();
    for m in admissible_half_widths(spec, gamma) {
        let center = Cell {
            x: [
                spec.ex() as i64 / 2,
                if spec.n == 2 { spec.ey() as i64 / 2 } else { 0 },
            ],
            t: spec.et() as i64 / 2,
        };
        let r0 = ParabolicRectangle::new(center, m)?;
        let mr = match restricted_maximal(b, gamma, Direction::Forward, &r0, Engine::Fast) {
            Ok(v) => v,
            Err(Error::DegenerateGrid) => continue,
            Err(e) => return Err(e),
        };
        let lower = r0.lower_part(spec, gamma)?;
        let mut acc = 0.0;
        let mut cnt = 0.0;
        let bv = b.values();
        for_each_cell(spec, &lower, |i| {
            if mr.valid[i] {
                acc += math::abs(bv[i] - mr.grid.value_flat(i));
                cnt += 1.0;
            }
        })?;
        if cnt > 0.0 {
            out.push(acc / cnt);
        }
    }
    Ok(out)
}

/// m-range actually used by the rectangle enumeration, for truncation
/// reporting.
pub fn half_width_range(spec: &GridSpec, gamma: TimeLag) -> Option<(i64, i64)> {
    let ms = admissible_half_widths(spec, gamma);
    match (ms.first(), ms.last()) {
        (Some(a), Some(b)) => Some((*a, *b)),
        _ => None,
    }
}
