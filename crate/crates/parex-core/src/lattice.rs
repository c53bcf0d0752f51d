//! Dense grid functions on an (n+1)-dimensional space-time lattice and O(1)
//! box sums via prefix tables.
//!
//! Layout: one or two spatial axes of `extent_space` cells plus a time axis of
//! `extent_time` cells, unit spacing everywhere. Values are stored row-major
//! with time slowest: flat index `(t·ey + y)·ex + x`. For n = 1 the second
//! spatial axis has extent 1 and every cell carries `x[1] = 0`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::CellBox;

/// Behaviour of boxes that reach the edge of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    /// Boxes wrap modulo the extents.
    Periodic,
    /// Boxes must lie fully inside the grid; suprema only see interior rectangles.
    Clipped,
}

/// Lattice shape: spatial dimension n ∈ {1,2}, integer scaling exponent p ≥ 2,
/// per-axis extents, boundary behaviour. Spacing is fixed to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
    pub p: u32,
    pub extent_space: usize,
    pub extent_time: usize,
    pub boundary: Boundary,
}

/// A lattice cell. `x[1]` is 0 when n = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub x: [i64; 2],
    pub t: i64,
}

impl Cell {
    pub fn new1(x: i64, t: i64) -> Self {
        Cell { x: [x, 0], t }
    }

    pub fn new2(x0: i64, x1: i64, t: i64) -> Self {
        Cell { x: [x0, x1], t }
    }
}

impl GridSpec {
    pub fn new(
        n: usize,
        p: u32,
        extent_space: usize,
        extent_time: usize,
        boundary: Boundary,
    ) -> Result<Self> {
        if n != 1 && n != 2 {
            return Err(Error::InvalidSpec(
                "spatial dimension must be 1 or 2".into(),
            ));
        }
        if p < 2 {
            return Err(Error::InvalidSpec(
                "scaling exponent p must be an integer ≥ 2".into(),
            ));
        }
        if extent_space < 2 || extent_time < 2 {
            return Err(Error::InvalidSpec(
                "extents must be at least 2 cells".into(),
            ));
        }
        Ok(GridSpec {
            n,
            p,
            extent_space,
            extent_time,
            boundary,
        })
    }

    #[inline]
    pub fn ex(&self) -> usize {
        self.extent_space
    }

    /// Extent of the second spatial axis (1 when n = 1).
    #[inline]
    pub fn ey(&self) -> usize {
        if self.n == 2 {
            self.extent_space
        } else {
            1
        }
    }

    #[inline]
    pub fn et(&self) -> usize {
        self.extent_time
    }

    #[inline]
    pub fn cell_count(&self) -> usize {
        self.ex() * self.ey() * self.et()
    }

    /// Extent along spatial axis `i` (`i < n`).
    #[inline]
    pub fn extent_axis(&self, i: usize) -> usize {
        debug_assert!(i < 2);
        if i == 0 {
            self.ex()
        } else {
            self.ey()
        }
    }

    /// Flat index of a canonical (in-range) cell.
    #[inline]
    pub fn index(&self, c: &Cell) -> usize {
        debug_assert!(self.in_range(c));
        ((c.t as usize * self.ey()) + c.x[1] as usize) * self.ex() + c.x[0] as usize
    }

    #[inline]
    pub fn in_range(&self, c: &Cell) -> bool {
        c.x[0] >= 0
            && (c.x[0] as usize) < self.ex()
            && c.x[1] >= 0
            && (c.x[1] as usize) < self.ey()
            && c.t >= 0
            && (c.t as usize) < self.et()
    }

    /// Canonicalize a raw cell modulo the extents (periodic wrap).
    #[inline]
    pub fn wrap(&self, c: &Cell) -> Cell {
        Cell {
            x: [
                c.x[0].rem_euclid(self.ex() as i64),
                c.x[1].rem_euclid(self.ey() as i64),
            ],
            t: c.t.rem_euclid(self.et() as i64),
        }
    }

    /// All cells in flat-index order (time slowest).
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let (ex, ey, et) = (self.ex() as i64, self.ey() as i64, self.et() as i64);
        (0..et).flat_map(move |t| {
            (0..ey).flat_map(move |y| (0..ex).map(move |x| Cell { x: [x, y], t }))
        })
    }

    /// The whole grid as a box.
    pub fn full_box(&self) -> CellBox {
        CellBox {
            x_lo: [0, 0],
            x_hi: [self.ex() as i64, self.ey() as i64],
            t_lo: 0,
            t_hi: self.et() as i64,
        }
    }
}

/// A sampled real-valued function on the lattice. Values are finite by
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub spec: GridSpec,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn from_values(spec: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.cell_count() {
            return Err(Error::InvalidSpec(
                "value array does not match grid extents".into(),
            ));
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    index: i,
                    value_repr: v.to_string(),
                });
            }
        }
        Ok(GridFunction { spec, values })
    }

    pub fn from_fn(spec: GridSpec, mut f: impl FnMut(&Cell) -> f64) -> Result<Self> {
        let values: Vec<f64> = spec.cells().map(|c| f(&c)).collect();
        Self::from_values(spec, values)
    }

    pub fn constant(spec: GridSpec, value: f64) -> Result<Self> {
        Self::from_values(spec, vec![value; spec.cell_count()])
    }

    pub fn zero(spec: GridSpec) -> Self {
        GridFunction {
            spec,
            values: vec![0.0; spec.cell_count()],
        }
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn value(&self, c: &Cell) -> f64 {
        self.values[self.spec.index(c)]
    }

    #[inline]
    pub fn value_flat(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Value at a raw cell: wraps under periodic boundary, None outside a
    /// clipped grid.
    pub fn value_at_raw(&self, c: &Cell) -> Option<f64> {
        match self.spec.boundary {
            Boundary::Periodic => Some(self.value(&self.spec.wrap(c))),
            Boundary::Clipped => {
                if self.spec.in_range(c) {
                    Some(self.value(c))
                } else {
                    None
                }
            }
        }
    }

    pub fn map(&self, mut f: impl FnMut(f64) -> f64) -> Result<Self> {
        Self::from_values(self.spec, self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn zip_with(
        &self,
        other: &GridFunction,
        mut f: impl FnMut(f64, f64) -> f64,
    ) -> Result<Self> {
        debug_assert_eq!(self.spec, other.spec);
        Self::from_values(
            self.spec,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }

    pub fn abs_grid(&self) -> Self {
        // |v| is finite whenever v is; skip revalidation.
        GridFunction {
            spec: self.spec,
            values: self.values.iter().map(|v| v.abs()).collect(),
        }
    }

    pub fn scale(&self, c: f64) -> Result<Self> {
        self.map(|v| c * v)
    }

    pub fn add(&self, other: &GridFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GridFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &GridFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Reflect the time axis: out(x, t) = f(x, E_t − 1 − t).
    pub fn reflect_time(&self) -> Self {
        let et = self.spec.et() as i64;
        let values = self
            .spec
            .cells()
            .map(|c| {
                self.value(&Cell {
                    x: c.x,
                    t: et - 1 - c.t,
                })
            })
            .collect();
        GridFunction {
            spec: self.spec,
            values,
        }
    }

    /// Periodic translation by (dx, dt): out(c) = f(c − v).
    pub fn shift(&self, dx: [i64; 2], dt: i64) -> Self {
        let values = self
            .spec
            .cells()
            .map(|c| {
                let raw = Cell {
                    x: [c.x[0] - dx[0], c.x[1] - dx[1]],
                    t: c.t - dt,
                };
                self.value(&self.spec.wrap(&raw))
            })
            .collect();
        GridFunction {
            spec: self.spec,
            values,
        }
    }
}

/// Splits a raw half-open range into canonical segments according to the
/// boundary mode. Returns at most two segments.
fn axis_segments(
    lo: i64,
    hi: i64,
    extent: usize,
    boundary: Boundary,
    axis: &'static str,
) -> Result<AxisSegments> {
    let e = extent as i64;
    if hi <= lo {
        return Err(Error::EmptyRegion);
    }
    let len = hi - lo;
    if len > e {
        return Err(Error::InvalidParam("box longer than grid extent".into()));
    }
    match boundary {
        Boundary::Clipped => {
            if lo < 0 || hi > e {
                return Err(Error::BoxOutOfRange { axis });
            }
            Ok(([(lo as usize, hi as usize), (0, 0)], 1))
        }
        Boundary::Periodic => {
            let start = lo.rem_euclid(e);
            let end = start + len;
            if end <= e {
                Ok(([(start as usize, end as usize), (0, 0)], 1))
            } else {
                Ok(([(start as usize, e as usize), (0, (end - e) as usize)], 2))
            }
        }
    }
}

/// Up to two canonical segments on one axis, plus how many are live.
pub(crate) type AxisSegments = ([(usize, usize); 2], usize);

/// Canonical segments of a raw box per axis: (x, y, t).
pub(crate) fn box_segments(
    spec: &GridSpec,
    b: &CellBox,
) -> Result<(AxisSegments, AxisSegments, AxisSegments)> {
    let xs = axis_segments(b.x_lo[0], b.x_hi[0], spec.ex(), spec.boundary, "space-x")?;
    let ys = axis_segments(b.x_lo[1], b.x_hi[1], spec.ey(), spec.boundary, "space-y")?;
    let ts = axis_segments(b.t_lo, b.t_hi, spec.et(), spec.boundary, "time")?;
    Ok((xs, ys, ts))
}

/// Visit every cell of a raw box (wrapped if periodic) in a fixed order.
pub fn for_each_cell(spec: &GridSpec, b: &CellBox, mut visit: impl FnMut(usize)) -> Result<()> {
    let ((xs, nx), (ys, ny), (ts, nt)) = box_segments(spec, b)?;
    let (ex, ey) = (spec.ex(), spec.ey());
    for (t_lo, t_hi) in &ts[..nt] {
        for t in *t_lo..*t_hi {
            for (y_lo, y_hi) in &ys[..ny] {
                for y in *y_lo..*y_hi {
                    let base = (t * ey + y) * ex;
                    for (x_lo, x_hi) in &xs[..nx] {
                        for x in *x_lo..*x_hi {
                            visit(base + x);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Direct (loop) box sum; the oracle counterpart of the prefix table.
pub fn naive_box_sum(f: &GridFunction, b: &CellBox) -> Result<f64> {
    let mut acc = 0.0;
    for_each_cell(&f.spec, b, |i| acc += f.values[i])?;
    Ok(acc)
}

/// Direct box mean.
pub fn naive_average(f: &GridFunction, b: &CellBox) -> Result<f64> {
    let n = b.cell_count();
    if n == 0 {
        return Err(Error::EmptyRegion);
    }
    Ok(naive_box_sum(f, b)? / n as f64)
}

/// Max over a box.
pub fn box_max(f: &GridFunction, b: &CellBox) -> Result<f64> {
    let mut m = f64::NEG_INFINITY;
    for_each_cell(&f.spec, b, |i| m = m.max(f.values[i]))?;
    Ok(m)
}

/// Min over a box.
pub fn box_min(f: &GridFunction, b: &CellBox) -> Result<f64> {
    let mut m = f64::INFINITY;
    for_each_cell(&f.spec, b, |i| m = m.min(f.values[i]))?;
    Ok(m)
}

/// Cumulative sums with one ghost layer per axis; box sums in O(1) per
/// canonical segment (≤ 8 corner lookups each). Build order is a fixed
/// axis-by-axis scan, so results are identical run to run.
#[derive(Debug, Clone)]
pub struct PrefixSumTable {
    pub spec: GridSpec,
    cum: Vec<f64>,
}

impl PrefixSumTable {
    pub fn build(f: &GridFunction) -> Result<Self> {
        for (i, v) in f.values().iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    index: i,
                    value_repr: v.to_string(),
                });
            }
        }
        let spec = f.spec;
        let (ex, ey, et) = (spec.ex(), spec.ey(), spec.et());
        let (cx, cy, ct) = (ex + 1, ey + 1, et + 1);
        let mut cum = vec![0.0; cx * cy * ct];
        let idx = |x: usize, y: usize, t: usize| (t * cy + y) * cx + x;
        for t in 0..et {
            for y in 0..ey {
                for x in 0..ex {
                    cum[idx(x + 1, y + 1, t + 1)] = f.values[(t * ey + y) * ex + x];
                }
            }
        }
        // Scan along x, then y, then t.
        for t in 1..ct {
            for y in 1..cy {
                for x in 1..cx {
                    cum[idx(x, y, t)] += cum[idx(x - 1, y, t)];
                }
            }
        }
        for t in 1..ct {
            for y in 1..cy {
                for x in 1..cx {
                    cum[idx(x, y, t)] += cum[idx(x, y - 1, t)];
                }
            }
        }
        for t in 1..ct {
            for y in 1..cy {
                for x in 1..cx {
                    cum[idx(x, y, t)] += cum[idx(x, y, t - 1)];
                }
            }
        }
        Ok(PrefixSumTable { spec, cum })
    }

    #[inline]
    fn corner(&self, x: usize, y: usize, t: usize) -> f64 {
        let (cx, cy) = (self.spec.ex() + 1, self.spec.ey() + 1);
        self.cum[(t * cy + y) * cx + x]
    }

    #[inline]
    fn segment_sum(&self, x: (usize, usize), y: (usize, usize), t: (usize, usize)) -> f64 {
        let (x0, x1) = x;
        let (y0, y1) = y;
        let (t0, t1) = t;
        self.corner(x1, y1, t1) - self.corner(x0, y1, t1) - self.corner(x1, y0, t1)
            + self.corner(x0, y0, t1)
            - self.corner(x1, y1, t0)
            + self.corner(x0, y1, t0)
            + self.corner(x1, y0, t0)
            - self.corner(x0, y0, t0)
    }

    /// Sum of the function over a raw box (wrapped if periodic).
    pub fn box_sum(&self, b: &CellBox) -> Result<f64> {
        let ((xs, nx), (ys, ny), (ts, nt)) = box_segments(&self.spec, b)?;
        let mut acc = 0.0;
        for tseg in &ts[..nt] {
            for yseg in &ys[..ny] {
                for xseg in &xs[..nx] {
                    if xseg.1 > xseg.0 && yseg.1 > yseg.0 && tseg.1 > tseg.0 {
                        acc += self.segment_sum(*xseg, *yseg, *tseg);
                    }
                }
            }
        }
        Ok(acc)
    }

    /// Box mean (cell volume is 1, so |A| is the cell count).
    pub fn average(&self, b: &CellBox) -> Result<f64> {
        let n = b.cell_count();
        if n == 0 {
            return Err(Error::EmptyRegion);
        }
        Ok(self.box_sum(b)? / n as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CellBox;

    fn spec(e: usize) -> GridSpec {
        GridSpec::new(1, 2, e, e, Boundary::Periodic).unwrap()
    }

    #[test]
    fn zero_function_all_box_sums_zero() {
        let f = GridFunction::constant(spec(8), 0.0).unwrap();
        let t = PrefixSumTable::build(&f).unwrap();
        let b = CellBox {
            x_lo: [2, 0],
            x_hi: [6, 1],
            t_lo: 1,
            t_hi: 7,
        };
        assert_eq!(t.box_sum(&b).unwrap(), 0.0);
        assert_eq!(t.box_sum(&f.spec.full_box()).unwrap(), 0.0);
    }

    #[test]
    fn ones_function_counts_cells() {
        let f = GridFunction::constant(spec(8), 1.0).unwrap();
        let t = PrefixSumTable::build(&f).unwrap();
        // 4 cells of x times all 8 time cells.
        let b = CellBox {
            x_lo: [0, 0],
            x_hi: [4, 1],
            t_lo: 0,
            t_hi: 8,
        };
        assert_eq!(t.box_sum(&b).unwrap(), 32.0);
    }

    #[test]
    fn constant_average_is_constant() {
        let f = GridFunction::constant(spec(8), 5.0).unwrap();
        let t = PrefixSumTable::build(&f).unwrap();
        let b = CellBox {
            x_lo: [3, 0],
            x_hi: [7, 1],
            t_lo: 2,
            t_hi: 5,
        };
        assert_eq!(t.average(&b).unwrap(), 5.0);
    }

    #[test]
    fn indicator_average_half() {
        let s = spec(8);
        let f = GridFunction::from_fn(s, |c| if c.x[0] < 4 { 1.0 } else { 0.0 }).unwrap();
        let t = PrefixSumTable::build(&f).unwrap();
        assert_eq!(t.average(&s.full_box()).unwrap(), 0.5);
    }

    #[test]
    fn wrapped_box_matches_naive() {
        let s = spec(8);
        let f = GridFunction::from_fn(s, |c| (c.x[0] * 13 + c.t * 7) as f64 * 0.01).unwrap();
        let t = PrefixSumTable::build(&f).unwrap();
        let b = CellBox {
            x_lo: [-2, 0],
            x_hi: [3, 1],
            t_lo: 6,
            t_hi: 11,
        };
        let fast = t.box_sum(&b).unwrap();
        let slow = naive_box_sum(&f, &b).unwrap();
        assert!((fast - slow).abs() <= 1e-12 * slow.abs().max(1.0));
    }

    #[test]
    fn clipped_box_escape_is_an_error() {
        let s = GridSpec::new(1, 2, 8, 8, Boundary::Clipped).unwrap();
        let f = GridFunction::constant(s, 1.0).unwrap();
        let t = PrefixSumTable::build(&f).unwrap();
        let b = CellBox {
            x_lo: [-1, 0],
            x_hi: [3, 1],
            t_lo: 0,
            t_hi: 4,
        };
        assert_eq!(
            t.box_sum(&b).unwrap_err(),
            Error::BoxOutOfRange { axis: "space-x" }
        );
    }

    #[test]
    fn non_finite_rejected_with_index() {
        let s = spec(4);
        let mut vals = vec![0.0; s.cell_count()];
        vals[7] = f64::NAN;
        match GridFunction::from_values(s, vals) {
            Err(Error::NonFinite { index, .. }) => assert_eq!(index, 7),
            other => panic!("expected NonFinite, got {other:?}"),
        }
    }
}
