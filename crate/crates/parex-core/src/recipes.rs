//! Seeded, documented recipes for test functions, symbols and weights, all
//! addressable from the CLI config by kind + parameters.
//!
//! Exact formulas (E_t = time extent, coordinates are cell indices):
//!
//! * `constant`:        f ≡ value
//! * `coord_x`:         f(x, t) = x₀
//! * `coord_t`:         f(x, t) = t
//! * `box_indicator`:   1 on the given cell box, 0 elsewhere
//! * `cell_indicator`:  1 on one cell
//! * `uniform_noise`:   i.i.d. uniform [lo, hi) from a ChaCha8 stream
//! * `smooth_noise`:    uniform [−1, 1] blurred `passes` times with the
//!   3^(n+1)-cell neighborhood mean (wrapping around axes)
//! * `scaled`:          factor · inner
//!
//! * weight `constant`:       ω ≡ value (> 0)
//! * weight `power_time`:     ω(x,t) = (1 + |t − E_t/2|)^exponent
//! * weight `exp_symbol`:     base(x,t) · e^{scale·b(x,t)}
//! * weight `time_shift_exp`: ω(x,t) = e^{λ·(t − E_t/2)}   (centering is a
//!   constant factor, which every weight constant is invariant under)
//! * weight `product`:        pointwise product of two recipes
//! * weight `log_lipschitz`:  e^{amplitude·smooth_noise(seed, passes)}

use alloc::boxed::Box;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lattice::{Cell, GridFunction, GridSpec};
use crate::math;
use crate::weights::Weight;

/// Uniform f64 in [0, 1) from the top 53 bits of a u64.
pub fn unit_f64(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn range_f64(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * unit_f64(rng)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionRecipe {
    Constant {
        value: f64,
    },
    CoordX,
    CoordT,
    BoxIndicator {
        x_lo: i64,
        x_hi: i64,
        t_lo: i64,
        t_hi: i64,
    },
    CellIndicator {
        x: i64,
        t: i64,
    },
    UniformNoise {
        seed: u64,
        lo: f64,
        hi: f64,
    },
    SmoothNoise {
        seed: u64,
        amplitude: f64,
        passes: u32,
    },
    Scaled {
        factor: f64,
        inner: Box<FunctionRecipe>,
    },
}

/// Blur with the (2·1+1)^(n+1) neighborhood mean, wrapping around all axes.
fn blur(f: &GridFunction, passes: u32) -> GridFunction {
    let spec = f.spec;
    let mut cur = f.clone();
    for _ in 0..passes {
        let src = cur.clone();
        cur = GridFunction::from_fn(spec, |c| {
            let mut acc = 0.0;
            let mut cnt = 0.0;
            for dt in -1..=1 {
                for dy in -1..=1i64 {
                    if spec.n == 1 && dy != 0 {
                        continue;
                    }
                    for dx in -1..=1 {
                        let raw = Cell {
                            x: [c.x[0] + dx, c.x[1] + dy],
                            t: c.t + dt,
                        };
                        acc += src.value(&spec.wrap(&raw));
                        cnt += 1.0;
                    }
                }
            }
            acc / cnt
        })
        .unwrap();
    }
    cur
}

pub fn smooth_noise(spec: GridSpec, seed: u64, amplitude: f64, passes: u32) -> GridFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = GridFunction::from_fn(spec, |_| range_f64(&mut rng, -1.0, 1.0)).unwrap();
    blur(&raw, passes).scale(amplitude).unwrap()
}

pub fn make_function(spec: GridSpec, recipe: &FunctionRecipe) -> Result<GridFunction> {
    match recipe {
        FunctionRecipe::Constant { value } => GridFunction::constant(spec, *value),
        FunctionRecipe::CoordX => GridFunction::from_fn(spec, |c| c.x[0] as f64),
        FunctionRecipe::CoordT => GridFunction::from_fn(spec, |c| c.t as f64),
        FunctionRecipe::BoxIndicator {
            x_lo,
            x_hi,
            t_lo,
            t_hi,
        } => GridFunction::from_fn(spec, |c| {
            if c.x[0] >= *x_lo && c.x[0] < *x_hi && c.t >= *t_lo && c.t < *t_hi {
                1.0
            } else {
                0.0
            }
        }),
        FunctionRecipe::CellIndicator { x, t } => {
            GridFunction::from_fn(spec, |c| if c.x[0] == *x && c.t == *t { 1.0 } else { 0.0 })
        }
        FunctionRecipe::UniformNoise { seed, lo, hi } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            GridFunction::from_fn(spec, |_| range_f64(&mut rng, *lo, *hi))
        }
        FunctionRecipe::SmoothNoise {
            seed,
            amplitude,
            passes,
        } => Ok(smooth_noise(spec, *seed, *amplitude, *passes)),
        FunctionRecipe::Scaled { factor, inner } => make_function(spec, inner)?.scale(*factor),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightRecipe {
    Constant {
        value: f64,
    },
    PowerTime {
        exponent: f64,
    },
    ExpSymbol {
        base: Box<WeightRecipe>,
        symbol: Box<FunctionRecipe>,
        scale: f64,
    },
    TimeShiftExp {
        lambda: f64,
    },
    Product {
        a: Box<WeightRecipe>,
        b: Box<WeightRecipe>,
    },
    LogLipschitz {
        seed: u64,
        amplitude: f64,
        passes: u32,
    },
}

pub fn make_weight(spec: GridSpec, recipe: &WeightRecipe) -> Result<Weight> {
    match recipe {
        WeightRecipe::Constant { value } => Weight::new(GridFunction::constant(spec, *value)?),
        WeightRecipe::PowerTime { exponent } => {
            let mid = spec.et() as f64 / 2.0;
            Weight::new(GridFunction::from_fn(spec, |c| {
                math::pow(1.0 + math::abs(c.t as f64 - mid), *exponent)
            })?)
        }
        WeightRecipe::ExpSymbol {
            base,
            symbol,
            scale,
        } => {
            let b = make_weight(spec, base)?;
            let s = make_function(spec, symbol)?;
            Weight::new(b.grid().zip_with(&s, |w, b| w * math::exp(scale * b))?)
        }
        WeightRecipe::TimeShiftExp { lambda } => {
            let mid = spec.et() as f64 / 2.0;
            Weight::new(GridFunction::from_fn(spec, |c| {
                math::exp(lambda * (c.t as f64 - mid))
            })?)
        }
        WeightRecipe::Product { a, b } => make_weight(spec, a)?.mul(&make_weight(spec, b)?),
        WeightRecipe::LogLipschitz {
            seed,
            amplitude,
            passes,
        } => {
            let g = smooth_noise(spec, *seed, *amplitude, *passes);
            Weight::new(g.map(math::exp)?)
        }
    }
}

/// Seeded family of random log-Lipschitz weights used by the identity suites.
pub fn random_log_lipschitz_weights(spec: GridSpec, base_seed: u64, count: usize) -> Vec<Weight> {
    (0..count)
        .map(|i| {
            make_weight(
                spec,
                &WeightRecipe::LogLipschitz {
                    seed: base_seed.wrapping_add(i as u64),
                    amplitude: 0.8,
                    passes: 2,
                },
            )
            .unwrap()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Boundary;

    #[test]
    fn recipes_match_formulas() {
        let spec = GridSpec::new(1, 2, 8, 8, Boundary::Periodic).unwrap();
        let w = make_weight(spec, &WeightRecipe::Constant { value: 1.0 }).unwrap();
        assert!(w.grid().values().iter().all(|&v| v == 1.0));

        let lam = 0.3;
        let w = make_weight(spec, &WeightRecipe::TimeShiftExp { lambda: lam }).unwrap();
        for c in spec.cells() {
            let expect = math::exp(lam * (c.t as f64 - 4.0));
            assert_eq!(w.grid().value(&c), expect);
        }

        // exp_symbol with scale 0 is the base.
        let base = WeightRecipe::Constant { value: 2.5 };
        let sym = FunctionRecipe::CoordX;
        let w = make_weight(
            spec,
            &WeightRecipe::ExpSymbol {
                base: Box::new(base),
                symbol: Box::new(sym),
                scale: 0.0,
            },
        )
        .unwrap();
        assert!(w.grid().values().iter().all(|&v| v == 2.5));
    }

    #[test]
    fn noise_is_seed_deterministic() {
        let spec = GridSpec::new(1, 2, 8, 8, Boundary::Periodic).unwrap();
        let a = make_function(
            spec,
            &FunctionRecipe::UniformNoise {
                seed: 9,
                lo: 0.0,
                hi: 1.0,
            },
        )
        .unwrap();
        let b = make_function(
            spec,
            &FunctionRecipe::UniformNoise {
                seed: 9,
                lo: 0.0,
                hi: 1.0,
            },
        )
        .unwrap();
        assert_eq!(a.values(), b.values());
        assert!(a.values().iter().all(|&v| (0.0..1.0).contains(&v)));
    }
}
