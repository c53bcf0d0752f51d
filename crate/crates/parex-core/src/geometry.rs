//! Parabolic rectangles with a dyadic time lag, their past/future parts, the
//! parabolic distance, and enumeration of the discrete rectangle family.
//!
//! A rectangle of half-width m (a power of two) centered at cell (x, t)
//! occupies the cells `[xᵢ−m, xᵢ+m)` per spatial axis and `[t−m^p, t+m^p)` in
//! time. With lag γ = a/2^d and γ·m^p an integer, the future part keeps the
//! time cells `[t+γm^p, t+m^p)` and the past part `[t−m^p, t−γm^p)`; both hold
//! exactly (1−γ)·m^p time slices, so all part geometry is cell-exact.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Boundary, Cell, GridSpec};
use crate::math;

/// Dyadic time lag γ = num / 2^log2_den ∈ [0, 1), kept reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct TimeLag {
    num: u64,
    log2_den: u32,
}

impl TimeLag {
    pub fn new(num: u64, log2_den: u32) -> Result<Self> {
        if log2_den > 30 {
            return Err(Error::InvalidParam(
                "time lag denominator exponent too large".into(),
            ));
        }
        if num >= (1u64 << log2_den) {
            return Err(Error::InvalidParam("time lag must lie in [0, 1)".into()));
        }
        let mut lag = TimeLag { num, log2_den };
        while lag.num != 0 && lag.num.is_multiple_of(2) && lag.log2_den > 0 {
            lag.num /= 2;
            lag.log2_den -= 1;
        }
        if lag.num == 0 {
            lag.log2_den = 0;
        }
        Ok(lag)
    }

    pub const ZERO: TimeLag = TimeLag {
        num: 0,
        log2_den: 0,
    };

    /// Parses "a/b" with b a power of two, or a decimal string that is exactly
    /// dyadic ("0.25").
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let num: u64 = a
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParam(format!("bad time lag numerator in '{s}'")))?;
            let den: u64 = b
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParam(format!("bad time lag denominator in '{s}'")))?;
            if den == 0 || den & (den - 1) != 0 {
                return Err(Error::InvalidParam(format!(
                    "time lag denominator in '{s}' must be a power of two"
                )));
            }
            return TimeLag::new(num, den.trailing_zeros());
        }
        let v: f64 = s
            .parse()
            .map_err(|_| Error::InvalidParam(format!("cannot parse time lag '{s}'")))?;
        if !(0.0..1.0).contains(&v) {
            return Err(Error::InvalidParam("time lag must lie in [0, 1)".into()));
        }
        // Exact dyadic check: v·2^30 must be an integer.
        let scaled = v * (1u64 << 30) as f64;
        if scaled != libm::floor(scaled) {
            return Err(Error::InvalidParam(format!("time lag '{s}' is not dyadic")));
        }
        TimeLag::new(scaled as u64, 30)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    #[inline]
    pub fn as_f64(&self) -> f64 {
        self.num as f64 / (1u64 << self.log2_den) as f64
    }

    #[inline]
    pub fn numerator(&self) -> u64 {
        self.num
    }

    #[inline]
    pub fn log2_denominator(&self) -> u32 {
        self.log2_den
    }

    /// γ·v when it is an integer, else None.
    pub fn scaled_int(&self, v: i64) -> Option<i64> {
        if v < 0 {
            return None;
        }
        let prod = (self.num as i128) * (v as i128);
        let den = 1i128 << self.log2_den;
        if prod % den == 0 {
            Some((prod / den) as i64)
        } else {
            None
        }
    }

    /// Smallest power-of-two half-width m with γ·m^p an integer (m^p ≥ 2^d).
    pub fn min_half_width(&self, p: u32) -> i64 {
        let mut m: i64 = 1;
        while self.scaled_int(checked_pow(m, p)).is_none() {
            m *= 2;
        }
        m
    }

    /// The dilated lag (γ+1)/2^p used when a maximal average is dominated by a
    /// fractional integral over a widened cone.
    pub fn dilate(&self, p: u32) -> Result<TimeLag> {
        TimeLag::new(self.num + (1u64 << self.log2_den), self.log2_den + p)
    }

    pub fn display(&self) -> String {
        if self.num == 0 {
            String::from("0")
        } else {
            format!("{}/{}", self.num, 1u64 << self.log2_den)
        }
    }
}

impl TryFrom<String> for TimeLag {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        TimeLag::parse(&s)
    }
}

impl From<TimeLag> for String {
    fn from(l: TimeLag) -> String {
        l.display()
    }
}

fn checked_pow(m: i64, p: u32) -> i64 {
    m.checked_pow(p).expect("half-width power overflow")
}

/// Half-open per-axis index ranges. Raw coordinates; wrapping (if any) happens
/// at query time. For n = 1 the second spatial axis is the unit range [0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CellBox {
    pub x_lo: [i64; 2],
    pub x_hi: [i64; 2],
    pub t_lo: i64,
    pub t_hi: i64,
}

impl CellBox {
    pub fn cell_count(&self) -> usize {
        let dx = (self.x_hi[0] - self.x_lo[0]).max(0) as usize;
        let dy = (self.x_hi[1] - self.x_lo[1]).max(0) as usize;
        let dt = (self.t_hi - self.t_lo).max(0) as usize;
        dx * dy * dt
    }

    pub fn is_empty(&self) -> bool {
        self.cell_count() == 0
    }

    pub fn contains(&self, c: &Cell) -> bool {
        (0..2).all(|i| self.x_lo[i] <= c.x[i] && c.x[i] < self.x_hi[i])
            && self.t_lo <= c.t
            && c.t < self.t_hi
    }

    /// Containment of raw boxes.
    pub fn contains_box(&self, inner: &CellBox) -> bool {
        (0..2).all(|i| self.x_lo[i] <= inner.x_lo[i] && inner.x_hi[i] <= self.x_hi[i])
            && self.t_lo <= inner.t_lo
            && inner.t_hi <= self.t_hi
    }

    /// Disjointness of raw boxes.
    pub fn disjoint(&self, other: &CellBox) -> bool {
        (0..2).any(|i| self.x_hi[i] <= other.x_lo[i] || other.x_hi[i] <= self.x_lo[i])
            || self.t_hi <= other.t_lo
            || other.t_hi <= self.t_lo
    }
}

/// Grid-aligned parabolic rectangle: center cell plus power-of-two half-width.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParabolicRectangle {
    pub center: Cell,
    pub m: i64,
}

impl ParabolicRectangle {
    pub fn new(center: Cell, m: i64) -> Result<Self> {
        if m < 1 || m & (m - 1) != 0 {
            return Err(Error::InvalidParam(
                "half-width must be a positive power of two".into(),
            ));
        }
        Ok(ParabolicRectangle { center, m })
    }

    #[inline]
    pub fn m_pow_p(&self, p: u32) -> i64 {
        checked_pow(self.m, p)
    }

    fn spatial(&self, spec: &GridSpec) -> ([i64; 2], [i64; 2]) {
        let mut lo = [0i64; 2];
        let mut hi = [0i64; 2];
        for i in 0..2 {
            if i < spec.n {
                lo[i] = self.center.x[i] - self.m;
                hi[i] = self.center.x[i] + self.m;
            } else {
                lo[i] = 0;
                hi[i] = 1;
            }
        }
        (lo, hi)
    }

    /// The full rectangle footprint.
    pub fn footprint(&self, spec: &GridSpec) -> CellBox {
        let (x_lo, x_hi) = self.spatial(spec);
        let mp = self.m_pow_p(spec.p);
        CellBox {
            x_lo,
            x_hi,
            t_lo: self.center.t - mp,
            t_hi: self.center.t + mp,
        }
    }

    /// Future part: spatial footprint × time cells [t + γm^p, t + m^p).
    pub fn upper_part(&self, spec: &GridSpec, gamma: TimeLag) -> Result<CellBox> {
        let (x_lo, x_hi) = self.spatial(spec);
        let mp = self.m_pow_p(spec.p);
        let g = gamma.scaled_int(mp).ok_or(Error::LagAlignment {
            gamma: gamma.display(),
            m: self.m,
        })?;
        Ok(CellBox {
            x_lo,
            x_hi,
            t_lo: self.center.t + g,
            t_hi: self.center.t + mp,
        })
    }

    /// Past part: spatial footprint × time cells [t − m^p, t − γm^p).
    pub fn lower_part(&self, spec: &GridSpec, gamma: TimeLag) -> Result<CellBox> {
        let (x_lo, x_hi) = self.spatial(spec);
        let mp = self.m_pow_p(spec.p);
        let g = gamma.scaled_int(mp).ok_or(Error::LagAlignment {
            gamma: gamma.display(),
            m: self.m,
        })?;
        Ok(CellBox {
            x_lo,
            x_hi,
            t_lo: self.center.t - mp,
            t_hi: self.center.t - g,
        })
    }

    /// Volume of either part in cells: (2m)^n · (1−γ)·m^p.
    pub fn part_volume(&self, spec: &GridSpec, gamma: TimeLag) -> Result<i64> {
        let mp = self.m_pow_p(spec.p);
        let g = gamma.scaled_int(mp).ok_or(Error::LagAlignment {
            gamma: gamma.display(),
            m: self.m,
        })?;
        let mut v = mp - g;
        for _ in 0..spec.n {
            v *= 2 * self.m;
        }
        Ok(v)
    }

    pub fn display(&self, spec: &GridSpec) -> String {
        if spec.n == 1 {
            format!("({},{}; {})", self.center.x[0], self.center.t, self.m)
        } else {
            format!(
                "({},{},{}; {})",
                self.center.x[0], self.center.x[1], self.center.t, self.m
            )
        }
    }

    /// Whether the rectangle is admissible on the grid: the footprint does
    /// not exceed the extents and, under a clipped boundary, lies fully
    /// interior.
    pub fn fits(&self, spec: &GridSpec) -> bool {
        let mp = self.m_pow_p(spec.p);
        let sizes_ok = (0..spec.n).all(|i| 2 * self.m <= spec.extent_axis(i) as i64)
            && 2 * mp <= spec.et() as i64;
        match spec.boundary {
            Boundary::Periodic => sizes_ok,
            Boundary::Clipped => sizes_ok && spec.full_box().contains_box(&self.footprint(spec)),
        }
    }
}

/// Parabolic distance max(‖x−y‖_∞, |t−s|^{1/p}) between real points.
pub fn parabolic_distance(ax: &[f64], at: f64, bx: &[f64], bt: f64, p: u32) -> f64 {
    debug_assert_eq!(ax.len(), bx.len());
    let mut dx = 0.0_f64;
    for i in 0..ax.len() {
        dx = dx.max(math::abs(ax[i] - bx[i]));
    }
    dx.max(math::pow(math::abs(at - bt), 1.0 / p as f64))
}

/// Parabolic distance between cells (evaluated at cell centers; unit spacing
/// makes the differences integers). `n` limits which spatial axes count.
pub fn parabolic_distance_cells(a: &Cell, b: &Cell, n: usize, p: u32) -> f64 {
    let mut dx: i64 = 0;
    for i in 0..n {
        dx = dx.max((a.x[i] - b.x[i]).abs());
    }
    let dt = (a.t - b.t).abs();
    // Compare dx^p with dt exactly to avoid a rounded p-th root when the
    // spatial term dominates.
    if checked_pow(dx, p) >= dt {
        dx as f64
    } else {
        math::pow(dt as f64, 1.0 / p as f64)
    }
}

/// Membership of a real point in the forward integration region
/// ∪_L (future part of the rectangle at `origin` with edge L).
///
/// Closed form (L eliminated from γL^p < s−t < L^p, ‖x−y‖_∞ < L):
/// s > t and γ·‖x−y‖_∞^p < s−t; for γ = 0 just s > t.
pub fn forward_region_contains(
    origin_x: &[f64],
    origin_t: f64,
    probe_x: &[f64],
    probe_t: f64,
    gamma: TimeLag,
    p: u32,
) -> bool {
    let dt = probe_t - origin_t;
    if dt <= 0.0 {
        return false;
    }
    if gamma.is_zero() {
        return true;
    }
    let mut dx = 0.0_f64;
    for i in 0..origin_x.len() {
        dx = dx.max(math::abs(origin_x[i] - probe_x[i]));
    }
    gamma.as_f64() * math::pow(dx, p as f64) < dt
}

/// Backward region: the time reflection of the forward region.
pub fn backward_region_contains(
    origin_x: &[f64],
    origin_t: f64,
    probe_x: &[f64],
    probe_t: f64,
    gamma: TimeLag,
    p: u32,
) -> bool {
    forward_region_contains(origin_x, -origin_t, probe_x, -probe_t, gamma, p)
}

/// Exact integer version for lattice cells: s > t and γ·dx^p < s−t, compared
/// as num·dx^p < (s−t)·2^d in wide integers.
pub fn forward_region_contains_cells(
    origin: &Cell,
    probe: &Cell,
    n: usize,
    gamma: TimeLag,
    p: u32,
) -> bool {
    let dt = probe.t - origin.t;
    if dt <= 0 {
        return false;
    }
    if gamma.is_zero() {
        return true;
    }
    let mut dx: i64 = 0;
    for i in 0..n {
        dx = dx.max((origin.x[i] - probe.x[i]).abs());
    }
    let lhs = (gamma.num as i128) * (checked_pow(dx, p) as i128);
    let rhs = (dt as i128) << gamma.log2_den;
    lhs < rhs
}

pub fn backward_region_contains_cells(
    origin: &Cell,
    probe: &Cell,
    n: usize,
    gamma: TimeLag,
    p: u32,
) -> bool {
    let o = Cell {
        x: origin.x,
        t: -origin.t,
    };
    let q = Cell {
        x: probe.x,
        t: -probe.t,
    };
    forward_region_contains_cells(&o, &q, n, gamma, p)
}

/// Constraint selecting which rectangles an enumeration yields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RectConstraint {
    All,
    LowerPartContains(Cell),
    UpperPartContains(Cell),
    Inside(CellBox),
}

/// Admissible half-widths: powers of two, γ-aligned, with footprint fitting
/// the grid (2m ≤ extent_space, 2m^p ≤ extent_time).
pub fn admissible_half_widths(spec: &GridSpec, gamma: TimeLag) -> Vec<i64> {
    let mut out = Vec::new();
    let mut m = gamma.min_half_width(spec.p);
    loop {
        let mp = checked_pow(m, spec.p);
        if 2 * m > spec.extent_space as i64 || 2 * mp > spec.extent_time as i64 {
            break;
        }
        out.push(m);
        m *= 2;
    }
    out
}

fn clamp_range(lo: i64, hi: i64, bound_lo: i64, bound_hi: i64) -> (i64, i64) {
    (lo.max(bound_lo), hi.min(bound_hi))
}

/// Inclusive center ranges per axis for a given half-width and constraint;
/// returns None when empty. Ranges are in raw coordinates.
/// Inclusive center windows: one per spatial axis plus time.
pub(crate) type CenterWindow = ([(i64, i64); 2], (i64, i64));

fn center_ranges(
    spec: &GridSpec,
    gamma: TimeLag,
    m: i64,
    constraint: &RectConstraint,
) -> Option<CenterWindow> {
    let mp = checked_pow(m, spec.p);
    let g = gamma.scaled_int(mp)?;
    // Base windows. Under a periodic boundary a constrained window lives in
    // raw coordinates (it may wrap); only the unconstrained family starts
    // from the canonical cells. Constraint windows are never longer than an
    // extent, so canonicalization below cannot alias.
    let unconstrained = matches!(constraint, RectConstraint::All);
    let mut xr;
    let mut tr;
    match spec.boundary {
        Boundary::Clipped => {
            xr = [(0i64, spec.ex() as i64 - 1), (0i64, spec.ey() as i64 - 1)];
            tr = (0i64, spec.et() as i64 - 1);
            for (i, r) in xr.iter_mut().enumerate().take(spec.n) {
                *r = clamp_range(r.0, r.1, m, spec.extent_axis(i) as i64 - m);
            }
            tr = clamp_range(tr.0, tr.1, mp, spec.et() as i64 - mp);
        }
        Boundary::Periodic => {
            if unconstrained {
                xr = [(0i64, spec.ex() as i64 - 1), (0i64, spec.ey() as i64 - 1)];
                tr = (0i64, spec.et() as i64 - 1);
            } else {
                let wide = i64::MAX / 4;
                xr = [(-wide, wide), (-wide, wide)];
                tr = (-wide, wide);
            }
        }
    }
    match constraint {
        RectConstraint::All => {}
        RectConstraint::LowerPartContains(c) => {
            // c ∈ [cx−m, cx+m) per axis and c.t ∈ [ct−m^p, ct−γm^p).
            for (i, r) in xr.iter_mut().enumerate().take(spec.n) {
                *r = clamp_range(r.0, r.1, c.x[i] - m + 1, c.x[i] + m);
            }
            tr = clamp_range(tr.0, tr.1, c.t + g + 1, c.t + mp);
        }
        RectConstraint::UpperPartContains(c) => {
            for (i, r) in xr.iter_mut().enumerate().take(spec.n) {
                *r = clamp_range(r.0, r.1, c.x[i] - m + 1, c.x[i] + m);
            }
            tr = clamp_range(tr.0, tr.1, c.t - mp + 1, c.t - g);
        }
        RectConstraint::Inside(outer) => {
            for (i, r) in xr.iter_mut().enumerate().take(spec.n) {
                *r = clamp_range(r.0, r.1, outer.x_lo[i] + m, outer.x_hi[i] - m);
            }
            tr = clamp_range(tr.0, tr.1, outer.t_lo + mp, outer.t_hi - mp);
        }
    }
    for r in xr.iter().take(spec.n) {
        if r.0 > r.1 {
            return None;
        }
    }
    if tr.0 > tr.1 {
        return None;
    }
    if spec.n == 1 {
        xr[1] = (0, 0);
    }
    Some((xr, tr))
}

/// Enumerate the admissible rectangle family under a constraint, in
/// lexicographic (m, center) order with centers ordered like the flat index
/// (t, then y, then x). Under periodic boundary the constrained center windows
/// live in raw coordinates; emitted centers are canonical. An empty result
/// with no admissible half-width is the "no admissible m" case; callers emit
/// the warning (the enumeration itself stays total).
pub fn enumerate_rectangles(
    spec: &GridSpec,
    gamma: TimeLag,
    constraint: &RectConstraint,
) -> Vec<ParabolicRectangle> {
    let mut out = Vec::new();
    for m in admissible_half_widths(spec, gamma) {
        if let Some((xr, tr)) = center_ranges(spec, gamma, m, constraint) {
            let mut centers: Vec<Cell> = Vec::new();
            for t in tr.0..=tr.1 {
                for y in xr[1].0..=xr[1].1 {
                    for x in xr[0].0..=xr[0].1 {
                        let raw = Cell { x: [x, y], t };
                        let c = if spec.boundary == Boundary::Periodic {
                            spec.wrap(&raw)
                        } else {
                            raw
                        };
                        centers.push(c);
                    }
                }
            }
            centers.sort_by_key(|c| (c.t, c.x[1], c.x[0]));
            centers.dedup();
            out.extend(
                centers
                    .into_iter()
                    .map(|c| ParabolicRectangle { center: c, m }),
            );
        }
    }
    out
}

/// Reflection of a box under the grid's time flip t ↦ E_t − 1 − t.
pub fn reflect_box(spec: &GridSpec, b: &CellBox) -> CellBox {
    let e = spec.et() as i64;
    CellBox {
        x_lo: b.x_lo,
        x_hi: b.x_hi,
        t_lo: e - b.t_hi,
        t_hi: e - b.t_lo,
    }
}

/// Center of the rectangle that the time flip maps `r` onto: t ↦ E_t − t.
pub fn reflect_rect(spec: &GridSpec, r: &ParabolicRectangle) -> ParabolicRectangle {
    let e = spec.et() as i64;
    let c = Cell {
        x: r.center.x,
        t: e - r.center.t,
    };
    let c = if spec.boundary == Boundary::Periodic {
        spec.wrap(&c)
    } else {
        c
    };
    ParabolicRectangle { center: c, m: r.m }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lag_parsing_and_reduction() {
        assert_eq!(TimeLag::parse("1/2").unwrap(), TimeLag::new(1, 1).unwrap());
        assert_eq!(TimeLag::parse("0.25").unwrap(), TimeLag::new(1, 2).unwrap());
        assert_eq!(TimeLag::parse("2/4").unwrap(), TimeLag::new(1, 1).unwrap());
        assert_eq!(TimeLag::parse("0").unwrap(), TimeLag::ZERO);
        assert!(TimeLag::parse("1").is_err());
        assert!(TimeLag::parse("0.3").is_err());
    }

    #[test]
    fn parts_match_hand_arithmetic() {
        // center (32,32), m=2, γ=1/2, p=2: future x∈[30,34)×t∈[34,36),
        // past x∈[30,34)×t∈[28,30).
        let spec = GridSpec::new(1, 2, 64, 64, Boundary::Periodic).unwrap();
        let r = ParabolicRectangle::new(Cell::new1(32, 32), 2).unwrap();
        let g = TimeLag::new(1, 1).unwrap();
        let up = r.upper_part(&spec, g).unwrap();
        let lo = r.lower_part(&spec, g).unwrap();
        assert_eq!((up.x_lo[0], up.x_hi[0], up.t_lo, up.t_hi), (30, 34, 34, 36));
        assert_eq!((lo.x_lo[0], lo.x_hi[0], lo.t_lo, lo.t_hi), (30, 34, 28, 30));
        assert_eq!(up.cell_count(), lo.cell_count());
    }

    #[test]
    fn zero_lag_parts_are_halves() {
        let spec = GridSpec::new(1, 2, 64, 64, Boundary::Periodic).unwrap();
        let r = ParabolicRectangle::new(Cell::new1(10, 20), 2).unwrap();
        let up = r.upper_part(&spec, TimeLag::ZERO).unwrap();
        let lo = r.lower_part(&spec, TimeLag::ZERO).unwrap();
        assert_eq!((up.t_lo, up.t_hi), (20, 24));
        assert_eq!((lo.t_lo, lo.t_hi), (16, 20));
    }

    #[test]
    fn misaligned_lag_is_an_error() {
        let spec = GridSpec::new(1, 2, 64, 64, Boundary::Periodic).unwrap();
        let r = ParabolicRectangle::new(Cell::new1(10, 20), 1).unwrap();
        let g = TimeLag::new(1, 1).unwrap(); // γ·1 = 1/2 not integral
        assert!(matches!(
            r.upper_part(&spec, g),
            Err(Error::LagAlignment { .. })
        ));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(parabolic_distance(&[0.0], 0.0, &[1.0], 1.0, 2), 1.0);
        assert_eq!(parabolic_distance(&[0.0], 0.0, &[2.0], 9.0, 2), 3.0);
    }

    #[test]
    fn forward_region_closed_form_examples() {
        let g = TimeLag::new(1, 2).unwrap(); // 1/4
        assert!(forward_region_contains(&[0.0], 0.0, &[1.0], 0.5, g, 2));
        assert!(!forward_region_contains(&[0.0], 0.0, &[1.0], 0.0, g, 2));
        assert!(!forward_region_contains(&[0.0], 0.0, &[1.0], -1.0, g, 2));
        // γ=0: forward half-space.
        assert!(forward_region_contains(
            &[5.0],
            1.0,
            &[100.0],
            1.5,
            TimeLag::ZERO,
            2
        ));
    }

    #[test]
    fn eight_by_eight_enumeration_hand_count() {
        // Clipped 8×8, n=1, p=2, γ=0: m=1 gives 7·7 = 49 interior rectangles,
        // m=2 needs all 8 time cells so only ct=4 works: 5 centers. Total 54.
        let spec = GridSpec::new(1, 2, 8, 8, Boundary::Clipped).unwrap();
        let rects = enumerate_rectangles(&spec, TimeLag::ZERO, &RectConstraint::All);
        let m1 = rects.iter().filter(|r| r.m == 1).count();
        let m2 = rects.iter().filter(|r| r.m == 2).count();
        assert_eq!(m1, 49);
        assert_eq!(m2, 5);
        assert_eq!(rects.len(), 54);
    }

    #[test]
    fn periodic_family_dominates_clipped() {
        let cl = GridSpec::new(1, 2, 8, 8, Boundary::Clipped).unwrap();
        let pe = GridSpec::new(1, 2, 8, 8, Boundary::Periodic).unwrap();
        let g = TimeLag::ZERO;
        let ncl = enumerate_rectangles(&cl, g, &RectConstraint::All).len();
        let npe = enumerate_rectangles(&pe, g, &RectConstraint::All).len();
        assert!(npe >= ncl);
        assert_eq!(npe, 2 * 64); // every center, m ∈ {1,2}
    }

    #[test]
    fn lower_part_constraint_postcondition() {
        let spec = GridSpec::new(1, 2, 16, 16, Boundary::Periodic).unwrap();
        let g = TimeLag::new(1, 2).unwrap();
        let cell = Cell::new1(5, 9);
        for r in enumerate_rectangles(&spec, g, &RectConstraint::LowerPartContains(cell)) {
            let lo = r.lower_part(&spec, g).unwrap();
            // Membership in raw coordinates modulo the extents.
            let within =
                |lo_b: i64, hi_b: i64, v: i64, e: i64| (lo_b..hi_b).any(|u| u.rem_euclid(e) == v);
            assert!(within(lo.x_lo[0], lo.x_hi[0], cell.x[0], 16));
            assert!(within(lo.t_lo, lo.t_hi, cell.t, 16));
        }
    }

    #[test]
    fn reflection_swaps_parts_exactly() {
        let spec = GridSpec::new(1, 2, 16, 16, Boundary::Periodic).unwrap();
        let g = TimeLag::new(1, 2).unwrap();
        let r = ParabolicRectangle::new(Cell::new1(3, 7), 2).unwrap();
        let rr = reflect_rect(&spec, &r);
        let up = r.upper_part(&spec, g).unwrap();
        let lo_reflected = reflect_box(&spec, &rr.lower_part(&spec, g).unwrap());
        // Compare canonical sets: same footprint modulo period.
        let e = spec.et() as i64;
        let norm = |b: &CellBox| {
            (
                b.x_lo,
                b.x_hi,
                b.t_lo.rem_euclid(e),
                (b.t_lo.rem_euclid(e) + (b.t_hi - b.t_lo)),
            )
        };
        assert_eq!(norm(&up), norm(&lo_reflected));
    }
}
