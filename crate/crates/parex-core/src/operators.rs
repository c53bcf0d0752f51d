//! Uncentered fractional maximal operators with time lag, fractional integral
//! operators over the forward/backward parabolic cone, restricted maximal
//! operators, and the commutator constructions.
//!
//! Both maximal engines range over exactly the same rectangle family; `Fast`
//! answers each part average from a prefix table in O(1), `Naive` loops the
//! cells. Suprema are order-independent maxima; sums use a fixed traversal
//! order, so outputs are deterministic and independent of parallel scheduling
//! by callers.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CellBox, ParabolicRectangle, TimeLag};
use crate::lattice::{for_each_cell, Boundary, Cell, GridFunction, GridSpec, PrefixSumTable};
use crate::math;

/// Time orientation of an operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// Evaluation engine for operators defined by suprema of box averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Naive,
    Fast,
}

/// Fractional order α ∈ [0,1); fractional integrals additionally need α > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::InvalidParam(
                "fractional order must lie in [0, 1)".into(),
            ));
        }
        Ok(FractionalOrder(alpha))
    }

    pub fn new_positive(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParam(
                "fractional order must lie in (0, 1) for integral operators".into(),
            ));
        }
        Ok(FractionalOrder(alpha))
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Operator output plus a validity flag per cell. Cells with no admissible
/// rectangle (clipped edges) carry value 0 and flag false; they are excluded
/// from norms and suprema downstream.
#[derive(Debug, Clone)]
pub struct MaskedGrid {
    pub grid: GridFunction,
    pub valid: Vec<bool>,
}

impl MaskedGrid {
    pub fn all_valid(grid: GridFunction) -> Self {
        let n = grid.spec.cell_count();
        MaskedGrid {
            grid,
            valid: vec![true; n],
        }
    }

    pub fn is_all_valid(&self) -> bool {
        self.valid.iter().all(|&v| v)
    }

    pub fn valid_count(&self) -> usize {
        self.valid.iter().filter(|&&v| v).count()
    }
}

/// Per-half-width kernel of the supremum engine. For a fixed half-width the
/// averaged part is a function of the rectangle center alone, so the fast
/// engines tabulate all center averages once per half-width (one prefix
/// query each) and answer every later query with an array read; the naive
/// engines recompute each average by looping cells, as the reference path.
trait PartAverager {
    /// Called once per half-width with the current part geometry.
    fn set_scale(&mut self, m: i64, mp: i64, g: i64, dir: Direction) -> Result<()>;
    /// Called once per output cell inside the half-width loop.
    fn prepare(&mut self, out: &Cell);
    /// Averaged value for the rectangle at this canonical center.
    fn center_value(&self, center: &Cell) -> Result<f64>;
}

fn fill_center_averages(
    table: &PrefixSumTable,
    out: &mut [f64],
    m: i64,
    mp: i64,
    g: i64,
    dir: Direction,
) -> Result<()> {
    let spec = table.spec;
    for c in spec.cells() {
        let part = averaged_part(&spec, c.x, c.t, m, mp, g, dir);
        // Clipped edge centers have escaping parts; the engine never queries
        // them, so their slots stay at 0.
        out[spec.index(&c)] = match table.average(&part) {
            Ok(v) => v,
            Err(Error::BoxOutOfRange { .. }) => 0.0,
            Err(e) => return Err(e),
        };
    }
    Ok(())
}

/// Plain |f| averages (fast path).
struct FastPlain {
    table: PrefixSumTable,
    cache: Vec<f64>,
}

impl FastPlain {
    fn build(abs_f: &GridFunction) -> Result<Self> {
        let table = PrefixSumTable::build(abs_f)?;
        let n = abs_f.spec.cell_count();
        Ok(FastPlain {
            table,
            cache: vec![0.0; n],
        })
    }
}

impl PartAverager for FastPlain {
    fn set_scale(&mut self, m: i64, mp: i64, g: i64, dir: Direction) -> Result<()> {
        fill_center_averages(&self.table, &mut self.cache, m, mp, g, dir)
    }
    fn prepare(&mut self, _out: &Cell) {}
    fn center_value(&self, center: &Cell) -> Result<f64> {
        Ok(self.cache[self.table.spec.index(center)])
    }
}

/// Plain |f| averages by direct looping (reference path).
struct NaivePlain {
    abs_f: GridFunction,
    geo: (i64, i64, i64, Direction),
}

impl PartAverager for NaivePlain {
    fn set_scale(&mut self, m: i64, mp: i64, g: i64, dir: Direction) -> Result<()> {
        self.geo = (m, mp, g, dir);
        Ok(())
    }
    fn prepare(&mut self, _out: &Cell) {}
    fn center_value(&self, center: &Cell) -> Result<f64> {
        let (m, mp, g, dir) = self.geo;
        let part = averaged_part(&self.abs_f.spec, center.x, center.t, m, mp, g, dir);
        crate::lattice::naive_average(&self.abs_f, &part)
    }
}

/// |b(out) − b(·)|^k |f(·)| averages via the binomial expansion, an identity
/// only for even k, where the absolute value is the polynomial
/// (b(out) − b(·))^k. Tabulates k+1 center-average tables of b^j·|f| per
/// half-width; each query combines them with the output cell's coefficients.
struct FastBinomial<'a> {
    b: &'a GridFunction,
    tables: Vec<PrefixSumTable>,
    caches: Vec<Vec<f64>>,
    signs: Vec<f64>, // C(k,j)·(−1)^j
    k: u32,
    coeffs: Vec<f64>,
}

impl<'a> FastBinomial<'a> {
    fn build(b: &'a GridFunction, abs_f: &GridFunction, k: u32) -> Result<Self> {
        let n = abs_f.spec.cell_count();
        let mut tables = Vec::with_capacity(k as usize + 1);
        let mut g = abs_f.clone();
        for j in 0..=k {
            tables.push(PrefixSumTable::build(&g)?);
            if j < k {
                g = g.mul(b)?;
            }
        }
        let signs = (0..=k)
            .map(|j| math::binomial(k, j) * if j % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        Ok(FastBinomial {
            b,
            tables,
            caches: vec![vec![0.0; n]; k as usize + 1],
            signs,
            k,
            coeffs: vec![0.0; k as usize + 1],
        })
    }
}

impl PartAverager for FastBinomial<'_> {
    fn set_scale(&mut self, m: i64, mp: i64, g: i64, dir: Direction) -> Result<()> {
        for (table, cache) in self.tables.iter().zip(self.caches.iter_mut()) {
            fill_center_averages(table, cache, m, mp, g, dir)?;
        }
        Ok(())
    }
    fn prepare(&mut self, out: &Cell) {
        let b_out = self.b.value(out);
        for j in 0..=self.k {
            self.coeffs[j as usize] = self.signs[j as usize] * math::powi(b_out, self.k - j);
        }
    }
    fn center_value(&self, center: &Cell) -> Result<f64> {
        let idx = self.b.spec.index(center);
        let mut acc = 0.0;
        for j in 0..self.caches.len() {
            acc += self.coeffs[j] * self.caches[j][idx];
        }
        Ok(acc)
    }
}

/// |b(out) − b(·)|^k |f(·)| averages by direct looping (any k).
struct NaiveCommutator<'a> {
    b: &'a GridFunction,
    abs_f: GridFunction,
    k: u32,
    b_out: f64,
    geo: (i64, i64, i64, Direction),
}

impl PartAverager for NaiveCommutator<'_> {
    fn set_scale(&mut self, m: i64, mp: i64, g: i64, dir: Direction) -> Result<()> {
        self.geo = (m, mp, g, dir);
        Ok(())
    }
    fn prepare(&mut self, out: &Cell) {
        self.b_out = self.b.value(out);
    }
    fn center_value(&self, center: &Cell) -> Result<f64> {
        let (m, mp, g, dir) = self.geo;
        let spec = &self.abs_f.spec;
        let part = averaged_part(spec, center.x, center.t, m, mp, g, dir);
        let n = part.cell_count();
        if n == 0 {
            return Err(Error::EmptyRegion);
        }
        let mut acc = 0.0;
        let bv = self.b.values();
        let fv = self.abs_f.values();
        let (k, b_out) = (self.k, self.b_out);
        for_each_cell(spec, &part, |i| {
            acc += math::powi(math::abs(b_out - bv[i]), k) * fv[i];
        })?;
        Ok(acc / n as f64)
    }
}

/// Inclusive raw center windows for rectangles of half-width m whose relevant
/// part contains `out` under the given direction, clamped to the interior
/// when clipped.
#[allow(clippy::too_many_arguments)]
fn candidate_center_window(
    spec: &GridSpec,
    out: &Cell,
    m: i64,
    mp: i64,
    g: i64,
    dir: Direction,
    restrict: Option<&CellBox>,
) -> Option<crate::geometry::CenterWindow> {
    let mut xr = [(0i64, 0i64); 2];
    for (i, r) in xr.iter_mut().enumerate() {
        if i < spec.n {
            *r = (out.x[i] - m + 1, out.x[i] + m);
        } else {
            *r = (0, 0);
        }
    }
    let mut tr = match dir {
        // out ∈ past part: out.t ∈ [ct−m^p, ct−γm^p) ⟺ ct ∈ [t+γm^p+1, t+m^p].
        Direction::Forward => (out.t + g + 1, out.t + mp),
        // out ∈ future part: out.t ∈ [ct+γm^p, ct+m^p) ⟺ ct ∈ [t−m^p+1, t−γm^p].
        Direction::Backward => (out.t - mp + 1, out.t - g),
    };
    if spec.boundary == Boundary::Clipped {
        for (i, r) in xr.iter_mut().enumerate().take(spec.n) {
            r.0 = r.0.max(m);
            r.1 = r.1.min(spec.extent_axis(i) as i64 - m);
        }
        tr.0 = tr.0.max(mp);
        tr.1 = tr.1.min(spec.et() as i64 - mp);
    }
    if let Some(outer) = restrict {
        // Full rectangle inside `outer`.
        for (i, r) in xr.iter_mut().enumerate().take(spec.n) {
            r.0 = r.0.max(outer.x_lo[i] + m);
            r.1 = r.1.min(outer.x_hi[i] - m);
        }
        tr.0 = tr.0.max(outer.t_lo + mp);
        tr.1 = tr.1.min(outer.t_hi - mp);
    }
    for r in xr.iter().take(spec.n) {
        if r.0 > r.1 {
            return None;
        }
    }
    if tr.0 > tr.1 {
        return None;
    }
    Some((xr, tr))
}

/// The part averaged for a rectangle centered at raw (cx, cy, ct).
fn averaged_part(
    spec: &GridSpec,
    cx: [i64; 2],
    ct: i64,
    m: i64,
    mp: i64,
    g: i64,
    dir: Direction,
) -> CellBox {
    let mut x_lo = [0i64; 2];
    let mut x_hi = [0i64; 2];
    for i in 0..2 {
        if i < spec.n {
            x_lo[i] = cx[i] - m;
            x_hi[i] = cx[i] + m;
        } else {
            x_lo[i] = 0;
            x_hi[i] = 1;
        }
    }
    let (t_lo, t_hi) = match dir {
        Direction::Forward => (ct + g, ct + mp),
        Direction::Backward => (ct - mp, ct - g),
    };
    CellBox {
        x_lo,
        x_hi,
        t_lo,
        t_hi,
    }
}

struct SupParams {
    gamma: TimeLag,
    alpha: f64,
    dir: Direction,
    restrict: Option<CellBox>,
    out_domain: Option<CellBox>,
}

/// The supremum engine shared by all maximal-type operators: half-width
/// outer (so the averager can tabulate per scale), output cells inner,
/// candidate centers innermost.
fn sup_engine(
    spec: &GridSpec,
    params: &SupParams,
    averager: &mut dyn PartAverager,
) -> Result<MaskedGrid> {
    let ms = crate::geometry::admissible_half_widths(spec, params.gamma);
    let ms: Vec<i64> = match &params.restrict {
        None => ms,
        Some(outer) => {
            // Only half-widths whose footprint can fit inside the outer box.
            ms.into_iter()
                .filter(|&m| {
                    let mp = m.checked_pow(spec.p).unwrap();
                    (0..spec.n).all(|i| 2 * m <= outer.x_hi[i] - outer.x_lo[i])
                        && 2 * mp <= outer.t_hi - outer.t_lo
                })
                .collect()
        }
    };
    if ms.is_empty() {
        return Err(Error::DegenerateGrid);
    }

    let mut values = vec![0.0_f64; spec.cell_count()];
    let mut valid = vec![false; spec.cell_count()];

    // Output cells: the whole grid, or the raw cells of `out_domain`.
    let out_cells: Vec<Cell> = match &params.out_domain {
        None => spec.cells().collect(),
        Some(dom) => {
            let mut v = Vec::new();
            for t in dom.t_lo..dom.t_hi {
                for y in dom.x_lo[1]..dom.x_hi[1] {
                    for x in dom.x_lo[0]..dom.x_hi[0] {
                        v.push(Cell { x: [x, y], t });
                    }
                }
            }
            v
        }
    };

    for &m in &ms {
        let mp = m.checked_pow(spec.p).unwrap();
        let g = params.gamma.scaled_int(mp).ok_or(Error::LagAlignment {
            gamma: params.gamma.display(),
            m,
        })?;
        let mut vol = (mp - g) as f64;
        for _ in 0..spec.n {
            vol *= (2 * m) as f64;
        }
        let factor = if params.alpha == 0.0 {
            1.0
        } else {
            math::pow(vol, params.alpha)
        };
        averager.set_scale(m, mp, g, params.dir)?;

        for raw in &out_cells {
            let canon = match spec.boundary {
                Boundary::Periodic => spec.wrap(raw),
                Boundary::Clipped => {
                    if spec.in_range(raw) {
                        *raw
                    } else {
                        return Err(Error::BoxOutOfRange {
                            axis: "output domain",
                        });
                    }
                }
            };
            let Some((xr, tr)) =
                candidate_center_window(spec, raw, m, mp, g, params.dir, params.restrict.as_ref())
            else {
                continue;
            };
            averager.prepare(&canon);
            let idx = spec.index(&canon);
            let mut best = if valid[idx] {
                values[idx]
            } else {
                f64::NEG_INFINITY
            };
            for ct in tr.0..=tr.1 {
                for cy in xr[1].0..=xr[1].1 {
                    for cx in xr[0].0..=xr[0].1 {
                        let center = match spec.boundary {
                            Boundary::Periodic => spec.wrap(&Cell { x: [cx, cy], t: ct }),
                            Boundary::Clipped => Cell { x: [cx, cy], t: ct },
                        };
                        let v = factor * averager.center_value(&center)?;
                        if v > best {
                            best = v;
                        }
                    }
                }
            }
            values[idx] = best;
            valid[idx] = true;
        }
    }
    Ok(MaskedGrid {
        grid: GridFunction::from_values(*spec, values)?,
        valid,
    })
}

/// Parameters of the uncentered fractional maximal operator.
#[derive(Debug, Clone, Copy)]
pub struct MaximalParams {
    pub gamma: TimeLag,
    pub alpha: FractionalOrder,
    pub dir: Direction,
    pub engine: Engine,
}

/// M^{γ±}_α: at each cell, the supremum over rectangles whose past part
/// contains the cell (forward; future part for backward) of
/// |part|^α · (mean of |f| over the opposite part).
pub fn fractional_maximal(f: &GridFunction, params: &MaximalParams) -> Result<MaskedGrid> {
    let abs_f = f.abs_grid();
    let mut averager: Box<dyn PartAverager> = match params.engine {
        Engine::Fast => Box::new(FastPlain::build(&abs_f)?),
        Engine::Naive => Box::new(NaivePlain {
            abs_f,
            geo: (0, 0, 0, params.dir),
        }),
    };
    let sp = SupParams {
        gamma: params.gamma,
        alpha: params.alpha.value(),
        dir: params.dir,
        restrict: None,
        out_domain: None,
    };
    sup_engine(&f.spec, &sp, averager.as_mut())
}

/// M^{γ±}_{R₀}: the α = 0 maximal operator with the supremum restricted to
/// rectangles contained in `r0`; defined on the cells of `r0`.
pub fn restricted_maximal(
    f: &GridFunction,
    gamma: TimeLag,
    dir: Direction,
    r0: &ParabolicRectangle,
    engine: Engine,
) -> Result<MaskedGrid> {
    let spec = f.spec;
    let outer = r0.footprint(&spec);
    if spec.boundary == Boundary::Clipped && !spec.full_box().contains_box(&outer) {
        return Err(Error::BoxOutOfRange {
            axis: "restricting rectangle",
        });
    }
    let abs_f = f.abs_grid();
    let mut averager: Box<dyn PartAverager> = match engine {
        Engine::Fast => Box::new(FastPlain::build(&abs_f)?),
        Engine::Naive => Box::new(NaivePlain {
            abs_f,
            geo: (0, 0, 0, dir),
        }),
    };
    let sp = SupParams {
        gamma,
        alpha: 0.0,
        dir,
        restrict: Some(outer),
        out_domain: Some(outer),
    };
    sup_engine(&spec, &sp, averager.as_mut())
}

/// Parameters of the fractional integral operator over the parabolic cone.
#[derive(Debug, Clone, Copy)]
pub struct IntegralParams {
    pub gamma: TimeLag,
    pub alpha: FractionalOrder,
    pub dir: Direction,
}

impl IntegralParams {
    pub fn new(gamma: TimeLag, alpha: f64, dir: Direction) -> Result<Self> {
        if gamma.is_zero() {
            return Err(Error::InvalidParam(
                "integral operators need a positive time lag".into(),
            ));
        }
        Ok(IntegralParams {
            gamma,
            alpha: FractionalOrder::new_positive(alpha)?,
            dir,
        })
    }
}

/// Kernel values d_p^{−(n+p)(1−α)} indexed by (‖x−y‖_∞, |t−s|). The branch on
/// dx^p ≥ dt keeps the dominating term free of a rounded p-th root.
struct KernelTable {
    values: Vec<f64>,
    dt_extent: usize,
}

impl KernelTable {
    fn build(spec: &GridSpec, alpha: f64) -> Self {
        let e = (spec.n as f64 + spec.p as f64) * (1.0 - alpha);
        let dx_extent = spec.ex().max(spec.ey());
        let dt_extent = spec.et();
        let mut values = vec![0.0; dx_extent * dt_extent];
        for dx in 0..dx_extent {
            for dt in 1..dt_extent {
                let dxp = (dx as i64).checked_pow(spec.p).unwrap();
                let v = if dxp >= dt as i64 {
                    math::pow(dx as f64, -e)
                } else {
                    math::pow(dt as f64, -e / spec.p as f64)
                };
                values[dx * dt_extent + dt] = v;
            }
        }
        KernelTable { values, dt_extent }
    }

    #[inline]
    fn get(&self, dx: usize, dt: usize) -> f64 {
        self.values[dx * self.dt_extent + dt]
    }
}

/// Shared driver for the fractional integral and its positive commutators:
/// sums `weight(src, out) · kernel` over the cone. Coordinates are raw (the
/// cone never wraps; periodic wrap applies only to box averages).
fn integral_driver(
    f: &GridFunction,
    params: &IntegralParams,
    mut weight: impl FnMut(usize, usize, f64) -> f64,
) -> Result<GridFunction> {
    let spec = f.spec;
    let kern = KernelTable::build(&spec, params.alpha.value());
    let gamma = params.gamma;
    let (num, log2_den) = (gamma.numerator() as i128, gamma.log2_denominator());
    let (ex, ey, et) = (spec.ex() as i64, spec.ey() as i64, spec.et() as i64);
    let fv = f.values();
    let mut out = vec![0.0_f64; spec.cell_count()];
    for t in 0..et {
        for y in 0..ey {
            for x in 0..ex {
                let oi = ((t * ey + y) * ex + x) as usize;
                let mut acc = 0.0;
                for s in 0..et {
                    let dt = match params.dir {
                        Direction::Forward => s - t,
                        Direction::Backward => t - s,
                    };
                    if dt <= 0 {
                        continue;
                    }
                    let rhs = (dt as i128) << log2_den;
                    for sy in 0..ey {
                        for sx in 0..ex {
                            let dx =
                                (x - sx)
                                    .abs()
                                    .max(if spec.n == 2 { (y - sy).abs() } else { 0 });
                            let lhs = num * (dx.checked_pow(spec.p).unwrap() as i128);
                            if lhs >= rhs {
                                continue;
                            }
                            let si = ((s * ey + sy) * ex + sx) as usize;
                            let k = kern.get(dx as usize, dt as usize);
                            acc += weight(si, oi, fv[si]) * k;
                        }
                    }
                }
                out[oi] = acc;
            }
        }
    }
    GridFunction::from_values(spec, out)
}

/// I^{γ±}_α: sum of f(y,s)·d_p^{−(n+p)(1−α)} over the forward (resp.
/// backward) cone; the strict time inequality excludes the diagonal cell.
pub fn fractional_integral(f: &GridFunction, params: &IntegralParams) -> Result<GridFunction> {
    integral_driver(f, params, |_, _, v| v)
}

/// I^{γ±,k}_{α,b}: same cone and kernel with the integrand
/// |b(out) − b(·)|^k |f(·)|.
pub fn integral_commutator(
    f: &GridFunction,
    b: &GridFunction,
    params: &IntegralParams,
    k: u32,
) -> Result<GridFunction> {
    if k == 0 {
        return Err(Error::InvalidParam("commutator order k must be ≥ 1".into()));
    }
    let bv: Vec<f64> = b.values().to_vec();
    integral_driver(f, params, move |si, oi, v| {
        math::powi(math::abs(bv[oi] - bv[si]), k) * math::abs(v)
    })
}

/// M^{γ±,k}_{α,b}: supremum over the same rectangle family of
/// |part|^α · mean over the opposite part of |b(out)−b(·)|^k |f(·)|.
///
/// The fast engine expands |b(out)−b(·)|^k binomially into k+1 prefix tables
/// of b^j|f|, an identity only for even k, where the absolute value is a
/// polynomial; odd orders run the naive averager.
pub fn maximal_commutator(
    f: &GridFunction,
    b: &GridFunction,
    params: &MaximalParams,
    k: u32,
) -> Result<MaskedGrid> {
    if k == 0 {
        return Err(Error::InvalidParam("commutator order k must be ≥ 1".into()));
    }
    let abs_f = f.abs_grid();
    let spec = f.spec;
    let sp = SupParams {
        gamma: params.gamma,
        alpha: params.alpha.value(),
        dir: params.dir,
        restrict: None,
        out_domain: None,
    };
    if params.engine == Engine::Fast && k.is_multiple_of(2) {
        let mut averager = FastBinomial::build(b, &abs_f, k)?;
        sup_engine(&spec, &sp, &mut averager)
    } else {
        let mut averager = NaiveCommutator {
            b,
            abs_f,
            k,
            b_out: 0.0,
            geo: (0, 0, 0, params.dir),
        };
        sup_engine(&spec, &sp, &mut averager)
    }
}

/// An operator on grid functions. Flagged-invalid output cells carry 0.
pub trait GridOp {
    fn apply(&self, f: &GridFunction) -> Result<GridFunction>;

    /// Override when the operator flags cells; default: everything valid.
    fn apply_masked(&self, f: &GridFunction) -> Result<MaskedGrid> {
        Ok(MaskedGrid::all_valid(self.apply(f)?))
    }
}

/// Marker for operators that are linear on grid functions (spot-checked by
/// the harness rather than by the type system).
pub trait LinearOp: GridOp {}

pub struct IdentityOp;

impl GridOp for IdentityOp {
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        Ok(f.clone())
    }
}
impl LinearOp for IdentityOp {}

pub struct ScaleOp(pub f64);

impl GridOp for ScaleOp {
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        f.scale(self.0)
    }
}
impl LinearOp for ScaleOp {}

/// The fractional integral as a linear operator handle.
pub struct FracIntegralOp {
    pub params: IntegralParams,
}

impl GridOp for FracIntegralOp {
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        fractional_integral(f, &self.params)
    }
}
impl LinearOp for FracIntegralOp {}

/// The fractional maximal operator as a (nonlinear) operator handle.
pub struct MaximalOp {
    pub params: MaximalParams,
}

impl GridOp for MaximalOp {
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        Ok(fractional_maximal(f, &self.params)?.grid)
    }
    fn apply_masked(&self, f: &GridFunction) -> Result<MaskedGrid> {
        fractional_maximal(f, &self.params)
    }
}

/// Evaluation method of the iterated bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BracketMethod {
    /// T((b(out)−b(·))^k f) by binomial expansion: k+1 applications of T.
    Kernel,
    /// The first-order bracket applied k times: 2^k applications of T.
    Recursive,
}

/// [b,T]_k for a linear operator T.
pub fn commutator_bracket(
    t_op: &dyn LinearOp,
    b: &GridFunction,
    f: &GridFunction,
    k: u32,
    method: BracketMethod,
) -> Result<GridFunction> {
    if k == 0 {
        return Err(Error::InvalidParam(
            "bracket order k must be ≥ 1 (the identity is not a commutator)".into(),
        ));
    }
    match method {
        BracketMethod::Kernel => {
            let mut applied = Vec::with_capacity(k as usize + 1);
            let mut g = f.clone();
            for j in 0..=k {
                applied.push(t_op.apply(&g)?);
                if j < k {
                    g = g.mul(b)?;
                }
            }
            let spec = f.spec;
            let mut out = vec![0.0_f64; spec.cell_count()];
            let bv = b.values();
            for (i, o) in out.iter_mut().enumerate() {
                let mut acc = 0.0;
                for j in 0..=k {
                    let coeff = math::binomial(k, j) * if j % 2 == 0 { 1.0 } else { -1.0 };
                    acc += coeff * math::powi(bv[i], k - j) * applied[j as usize].value_flat(i);
                }
                *o = acc;
            }
            GridFunction::from_values(spec, out)
        }
        BracketMethod::Recursive => bracket_recursive(t_op, b, f, k),
    }
}

fn bracket_recursive(
    t_op: &dyn LinearOp,
    b: &GridFunction,
    f: &GridFunction,
    k: u32,
) -> Result<GridFunction> {
    if k == 1 {
        let tf = t_op.apply(f)?;
        let tbf = t_op.apply(&b.mul(f)?)?;
        return b.mul(&tf)?.sub(&tbf);
    }
    let u_f = bracket_recursive(t_op, b, f, k - 1)?;
    let u_bf = bracket_recursive(t_op, b, &b.mul(f)?, k - 1)?;
    b.mul(&u_f)?.sub(&u_bf)
}

/// The iterated bracket with a fixed symbol, as an operator handle
/// (linear in f: f ↦ T((b(out)−b(·))^k f)).
pub struct BracketOp<'a> {
    pub t_op: &'a dyn LinearOp,
    pub b: &'a GridFunction,
    pub k: u32,
}

impl GridOp for BracketOp<'_> {
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        commutator_bracket(self.t_op, self.b, f, self.k, BracketMethod::Kernel)
    }
}
impl LinearOp for BracketOp<'_> {}

/// b·T(f) − T(bf) for a positive quasilinear operator (the maximal
/// operators). Invalid cells carry 0 and stay flagged.
pub fn positive_commutator(
    op: &MaximalOp,
    b: &GridFunction,
    f: &GridFunction,
) -> Result<MaskedGrid> {
    let tf = op.apply_masked(f)?;
    let tbf = op.apply_masked(&b.mul(f)?)?;
    debug_assert_eq!(tf.valid, tbf.valid);
    let spec = f.spec;
    let mut out = vec![0.0_f64; spec.cell_count()];
    let bv = b.values();
    for i in 0..out.len() {
        if tf.valid[i] {
            out[i] = bv[i] * tf.grid.value_flat(i) - tbf.grid.value_flat(i);
        }
    }
    Ok(MaskedGrid {
        grid: GridFunction::from_values(spec, out)?,
        valid: tf.valid,
    })
}

/// [b, M^{γ±}_α] with a fixed symbol as an operator handle.
pub struct PositiveCommutatorOp {
    pub op: MaximalOp,
    pub b: GridFunction,
}

impl GridOp for PositiveCommutatorOp {
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        Ok(positive_commutator(&self.op, &self.b, f)?.grid)
    }
    fn apply_masked(&self, f: &GridFunction) -> Result<MaskedGrid> {
        positive_commutator(&self.op, &self.b, f)
    }
}

/// M^{γ±,k}_{α,b} with a fixed symbol as an operator handle.
pub struct MaximalCommutatorOp {
    pub params: MaximalParams,
    pub b: GridFunction,
    pub k: u32,
}

impl GridOp for MaximalCommutatorOp {
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        Ok(maximal_commutator(f, &self.b, &self.params, self.k)?.grid)
    }
    fn apply_masked(&self, f: &GridFunction) -> Result<MaskedGrid> {
        maximal_commutator(f, &self.b, &self.params, self.k)
    }
}

/// I^{γ±,k}_{α,b} with a fixed symbol as an operator handle.
pub struct IntegralCommutatorOp {
    pub params: IntegralParams,
    pub b: GridFunction,
    pub k: u32,
}

impl GridOp for IntegralCommutatorOp {
    fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        integral_commutator(f, &self.b, &self.params, self.k)
    }
}
