//! Weighted Lebesgue, weak Lebesgue and Lorentz norms (via the weighted
//! decreasing rearrangement), plus the oscillation norms over parabolic
//! rectangles and the pointwise Lipschitz norm in the parabolic distance.
//!
//! Power norms are computed max-normalized (factor out max|f|, sum the scaled
//! powers, multiply back). Besides overflow robustness this makes every norm
//! commute bitwise with scaling by powers of two, which the homogeneity
//! checks assert with zero tolerance.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::geometry::{enumerate_rectangles, parabolic_distance_cells, RectConstraint, TimeLag};
use crate::lattice::{GridFunction, PrefixSumTable};
use crate::math;
use crate::weights::Weight;

fn check_measure(f: &GridFunction, omega: &Weight) -> Result<()> {
    if f.spec != *omega.spec() {
        return Err(Error::InvalidSpec(
            "function and weight live on different grids".into(),
        ));
    }
    Ok(())
}

/// ‖f‖ in L^q(ω): (Σ |f|^q ω)^{1/q} over valid cells; q = ∞ gives max |f|.
/// `mask` (when given) excludes flagged cells.
pub fn weighted_norm(
    f: &GridFunction,
    q: f64,
    omega: &Weight,
    mask: Option<&[bool]>,
) -> Result<f64> {
    check_measure(f, omega)?;
    if q.is_nan() || q <= 0.0 {
        return Err(Error::InvalidParam("norm exponent must be positive".into()));
    }
    let fv = f.values();
    let wv = omega.grid().values();
    let live = |i: usize| mask.is_none_or(|m| m[i]);
    if q.is_infinite() {
        let mut m = 0.0_f64;
        for (i, v) in fv.iter().enumerate() {
            if live(i) {
                m = m.max(math::abs(*v));
            }
        }
        return Ok(m);
    }
    let mut peak = 0.0_f64;
    for (i, v) in fv.iter().enumerate() {
        if live(i) {
            peak = peak.max(math::abs(*v));
        }
    }
    if peak == 0.0 {
        return Ok(0.0);
    }
    let mut acc = 0.0_f64;
    for (i, v) in fv.iter().enumerate() {
        if live(i) {
            let s = math::abs(*v) / peak;
            if s > 0.0 {
                acc += math::pow(s, q) * wv[i];
            }
        }
    }
    Ok(peak * math::pow(acc, 1.0 / q))
}

/// Distinct positive levels of |f| (descending) with cumulative ω-mass:
/// the step data of the weighted decreasing rearrangement. Entry i is
/// (vᵢ, ω({|f| ≥ vᵢ})); the rearrangement equals vᵢ on [Wᵢ₋₁, Wᵢ) and 0 from
/// W_last on.
pub fn rearrangement(
    f: &GridFunction,
    omega: &Weight,
    mask: Option<&[bool]>,
) -> Result<Vec<(f64, f64)>> {
    check_measure(f, omega)?;
    let fv = f.values();
    let wv = omega.grid().values();
    let live = |i: usize| mask.is_none_or(|m| m[i]);
    let mut pairs: Vec<(f64, f64)> = (0..fv.len())
        .filter(|&i| live(i) && fv[i] != 0.0)
        .map(|i| (math::abs(fv[i]), wv[i]))
        .collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut steps: Vec<(f64, f64)> = Vec::new();
    let mut cum = 0.0_f64;
    let mut idx = 0;
    while idx < pairs.len() {
        let v = pairs[idx].0;
        while idx < pairs.len() && pairs[idx].0 == v {
            cum += pairs[idx].1;
            idx += 1;
        }
        steps.push((v, cum));
    }
    Ok(steps)
}

/// Weak norm sup_λ λ·ω({|f| ≥ λ})^{1/q}, evaluated at the data levels (which
/// realize the sup of the left-continuous distribution definition on step
/// data).
pub fn weak_norm(f: &GridFunction, q: f64, omega: &Weight, mask: Option<&[bool]>) -> Result<f64> {
    if q.is_nan() || q <= 0.0 {
        return Err(Error::InvalidParam("norm exponent must be positive".into()));
    }
    let steps = rearrangement(f, omega, mask)?;
    let mut best = 0.0_f64;
    for (v, w) in steps {
        let cand = if q.is_infinite() {
            v
        } else {
            v * math::pow(w, 1.0 / q)
        };
        best = best.max(cand);
    }
    Ok(best)
}

/// Lorentz norm ‖f‖_{L^{r,q}(ω)} from the step rearrangement. For finite q
/// the per-step integral is closed-form:
/// Σ vᵢ^q (r/q)(Wᵢ^{q/r} − Wᵢ₋₁^{q/r}), all to the power 1/q; for q = ∞ it is
/// max vᵢ·Wᵢ^{1/r} (step right endpoints attain the sup).
pub fn lorentz_norm(
    f: &GridFunction,
    r: f64,
    q: f64,
    omega: &Weight,
    mask: Option<&[bool]>,
) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParam(
            "Lorentz first exponent must be finite positive".into(),
        ));
    }
    if q.is_nan() || q <= 0.0 {
        return Err(Error::InvalidParam(
            "Lorentz second exponent must be positive".into(),
        ));
    }
    let steps = rearrangement(f, omega, mask)?;
    if q.is_infinite() {
        let mut best = 0.0_f64;
        for (v, w) in steps {
            best = best.max(v * math::pow(w, 1.0 / r));
        }
        return Ok(best);
    }
    let mut acc = 0.0_f64;
    let mut prev = 0.0_f64;
    let ratio = q / r;
    for (v, w) in steps {
        let seg = math::pow(w, ratio) - math::pow(prev, ratio);
        acc += math::pow(v, q) * seg / ratio;
        prev = w;
    }
    Ok(math::pow(acc, 1.0 / q))
}

/// Oscillation norm sup over full rectangles of |R|^{−β}·mean(|b − b_R|).
/// β = 0 is the bounded-mean-oscillation norm; β ∈ (0, 1/(n+p)) the
/// Campanato-type scale.
pub fn oscillation_norm(b: &GridFunction, beta: f64) -> Result<f64> {
    let spec = b.spec;
    let rects = enumerate_rectangles(&spec, TimeLag::ZERO, &RectConstraint::All);
    if rects.is_empty() {
        return Err(Error::DegenerateGrid);
    }
    let table = PrefixSumTable::build(b)?;
    let bv = b.values();
    let mut sup = 0.0_f64;
    for rect in &rects {
        let fp = rect.footprint(&spec);
        let vol = fp.cell_count() as f64;
        let mean = table.box_sum(&fp)? / vol;
        // Second pass over the rectangle for the centered absolute mean.
        let mut acc = 0.0;
        crate::lattice::for_each_cell(&spec, &fp, |i| acc += math::abs(bv[i] - mean))?;
        let dev = acc / vol;
        let scale = if beta == 0.0 {
            1.0
        } else {
            math::pow(vol, -beta)
        };
        sup = sup.max(scale * dev);
    }
    Ok(sup)
}

/// Pairs budget above which the Lipschitz norm subsamples.
pub const PLIP_EXACT_CELL_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy)]
pub struct PlipEstimate {
    pub value: f64,
    /// False when the pair set was subsampled (grids above
    /// `PLIP_EXACT_CELL_LIMIT` cells).
    pub exact: bool,
}

/// max |b(a)−b(c)| / d_p(a,c)^β over cell pairs, in raw coordinates. Above
/// the size threshold: all nearest-neighbor pairs (which attain the sup for
/// smooth data) plus a seeded subsample of far pairs; the `exact` flag
/// records which route ran.
pub fn plip_norm(b: &GridFunction, beta: f64) -> Result<PlipEstimate> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::InvalidParam(
            "Lipschitz exponent must lie in (0, 1]".into(),
        ));
    }
    let spec = b.spec;
    let cells: Vec<_> = spec.cells().collect();
    let n = cells.len();
    let ratio = |i: usize, j: usize| -> f64 {
        let d = parabolic_distance_cells(&cells[i], &cells[j], spec.n, spec.p);
        math::abs(b.value_flat(spec.index(&cells[i])) - b.value_flat(spec.index(&cells[j])))
            / math::pow(d, beta)
    };
    let mut best = 0.0_f64;
    if n <= PLIP_EXACT_CELL_LIMIT {
        for i in 0..n {
            for j in (i + 1)..n {
                best = best.max(ratio(i, j));
            }
        }
        return Ok(PlipEstimate {
            value: best,
            exact: true,
        });
    }
    // Nearest neighbors along each axis.
    for (i, c) in cells.iter().enumerate() {
        for axis in 0..spec.n {
            if (c.x[axis] as usize) + 1 < spec.extent_axis(axis) {
                let mut d = *c;
                d.x[axis] += 1;
                best = best.max(ratio(i, spec.index(&d)));
            }
        }
        if (c.t as usize) + 1 < spec.et() {
            let mut d = *c;
            d.t += 1;
            best = best.max(ratio(i, spec.index(&d)));
        }
    }
    // Seeded far-pair subsample, ~8 pairs per cell.
    let mut rng = ChaCha8Rng::seed_from_u64(0x70_61_69_72);
    for _ in 0..(8 * n) {
        let i = (rng.next_u64() as usize) % n;
        let j = (rng.next_u64() as usize) % n;
        if i != j {
            best = best.max(ratio(i, j));
        }
    }
    Ok(PlipEstimate {
        value: best,
        exact: false,
    })
}

/// The explicit one-sided comparison constant 2^{(p−1)β} between the
/// oscillation norm at scale β and the Lipschitz norm at exponent (n+p)β:
/// within a rectangle of half-width m every cell pair is at parabolic
/// distance < 2m while |R| = 2^{1−p}(2m)^{n+p}, so
/// osc(b, β) ≤ 2^{(p−1)β}·plip(b, (n+p)β) holds cell-exactly on clipped
/// grids.
pub fn campanato_lipschitz_constant(p: u32, beta: f64) -> f64 {
    math::pow(2.0, (p as f64 - 1.0) * beta)
}
