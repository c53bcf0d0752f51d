//! Property suites for the structural invariants: randomized inputs, exact or
//! FP-associativity-level assertions.

use proptest::prelude::*;

use parex_core::geometry::{
    forward_region_contains, forward_region_contains_cells, parabolic_distance, ParabolicRectangle,
    TimeLag,
};
use parex_core::lattice::{naive_box_sum, Boundary, Cell, GridFunction, GridSpec, PrefixSumTable};
use parex_core::norms::{lorentz_norm, weak_norm, weighted_norm};
use parex_core::operators::{
    commutator_bracket, fractional_maximal, BracketMethod, Direction, Engine, FracIntegralOp,
    FractionalOrder, IntegralParams, MaximalParams,
};
use parex_core::weights::Weight;

fn spec8() -> GridSpec {
    GridSpec::new(1, 2, 8, 8, Boundary::Periodic).unwrap()
}

fn grid_from(values: Vec<f64>) -> GridFunction {
    GridFunction::from_values(spec8(), values).unwrap()
}

fn values_strategy() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-10.0..10.0f64, 64)
}

fn positive_values() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.1..10.0f64, 64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn prefix_table_matches_direct_sums(vals in values_strategy(),
                                        xl in -8i64..8, xw in 1i64..8,
                                        tl in -8i64..8, tw in 1i64..8) {
        let f = grid_from(vals);
        let table = PrefixSumTable::build(&f).unwrap();
        let b = parex_core::geometry::CellBox {
            x_lo: [xl, 0], x_hi: [xl + xw, 1], t_lo: tl, t_hi: tl + tw,
        };
        let fast = table.box_sum(&b).unwrap();
        let slow = naive_box_sum(&f, &b).unwrap();
        let scale = f.values().iter().map(|v| v.abs()).sum::<f64>().max(1.0);
        prop_assert!((fast - slow).abs() <= 1e-12 * scale);
    }

    #[test]
    fn region_closed_form_is_an_existential(x in -40i64..40, t in -40i64..40,
                                            num in 0u64..4, den_log in 2u32..4) {
        let gamma = TimeLag::new(num, den_log).unwrap();
        let origin = Cell::new1(0, 0);
        let probe = Cell::new1(x, t);
        let closed = forward_region_contains_cells(&origin, &probe, 1, gamma, 2);
        // Existential check over a fine ladder.
        let dx = x.abs() as f64;
        let g = gamma.as_f64();
        let mut found = false;
        let mut l = 1e-3f64;
        while l < 2e3 {
            if dx < l && g * l * l < t as f64 && (t as f64) < l * l {
                found = true;
                break;
            }
            l *= 1.02;
        }
        // The ladder may only miss; it never finds a spurious member.
        if found {
            prop_assert!(closed);
        }
        if !closed {
            prop_assert!(!found);
        }
        // Continuous and cell forms agree on lattice points.
        let cont = forward_region_contains(&[0.0], 0.0, &[x as f64], t as f64, gamma, 2);
        prop_assert_eq!(closed, cont);
    }

    #[test]
    fn distance_is_a_metric_with_constant_one(ax in -20.0..20.0f64, at in -20.0..20.0f64,
                                              bx in -20.0..20.0f64, bt in -20.0..20.0f64,
                                              cx in -20.0..20.0f64, ct in -20.0..20.0f64) {
        let dab = parabolic_distance(&[ax], at, &[bx], bt, 2);
        let dbc = parabolic_distance(&[bx], bt, &[cx], ct, 2);
        let dac = parabolic_distance(&[ax], at, &[cx], ct, 2);
        prop_assert!(dac <= dab + dbc + 1e-12);
        prop_assert!(dab >= 0.0);
        prop_assert_eq!(parabolic_distance(&[ax], at, &[ax], at, 2), 0.0);
    }

    #[test]
    fn maximal_is_sublinear_and_homogeneous(a in values_strategy(), b in values_strategy()) {
        let f = grid_from(a);
        let g = grid_from(b);
        let params = MaximalParams {
            gamma: TimeLag::new(1, 2).unwrap(),
            alpha: FractionalOrder::new(0.0).unwrap(),
            dir: Direction::Forward,
            engine: Engine::Fast,
        };
        let m_sum = fractional_maximal(&f.add(&g).unwrap(), &params).unwrap();
        let m_f = fractional_maximal(&f, &params).unwrap();
        let m_g = fractional_maximal(&g, &params).unwrap();
        let scale = m_f.grid.max_abs().max(m_g.grid.max_abs()).max(1.0);
        for i in 0..64 {
            prop_assert!(m_sum.grid.value_flat(i)
                <= m_f.grid.value_flat(i) + m_g.grid.value_flat(i) + 1e-12 * scale);
        }
        // Power-of-two scaling is bitwise exact.
        let m_scaled = fractional_maximal(&f.scale(8.0).unwrap(), &params).unwrap();
        for i in 0..64 {
            prop_assert_eq!(m_scaled.grid.value_flat(i), 8.0 * m_f.grid.value_flat(i));
        }
    }

    #[test]
    fn weak_norm_below_strong_norm(vals in values_strategy(), wv in positive_values(),
                                   qi in 0usize..3) {
        let q = [1.0, 2.0, 3.5][qi];
        let f = grid_from(vals);
        let w = Weight::new(grid_from(wv)).unwrap();
        let weak = weak_norm(&f, q, &w, None).unwrap();
        let strong = weighted_norm(&f, q, &w, None).unwrap();
        prop_assert!(weak <= strong * (1.0 + 1e-12));
        // Diagonal Lorentz norm is the Lebesgue norm.
        let lqq = lorentz_norm(&f, q, q, &w, None).unwrap();
        prop_assert!((lqq - strong).abs() <= 1e-10 * strong.max(1.0));
    }

    #[test]
    fn part_volumes_match_formula(mj in 0u32..3, num in 0u64..8, den in 0u32..3) {
        let m = 1i64 << mj;
        let den = den.min(2 * mj); // alignment: m^p ≥ 2^den for p = 2
        let num = num % (1u64 << den).max(1);
        let gamma = TimeLag::new(num, den).unwrap();
        let spec = GridSpec::new(1, 2, 64, 4096, Boundary::Periodic).unwrap();
        let r = ParabolicRectangle::new(Cell::new1(32, 2048), m).unwrap();
        let up = r.upper_part(&spec, gamma).unwrap();
        let lo = r.lower_part(&spec, gamma).unwrap();
        prop_assert_eq!(up.cell_count(), lo.cell_count());
        prop_assert_eq!(up.cell_count() as i64, r.part_volume(&spec, gamma).unwrap());
        let fp = r.footprint(&spec);
        prop_assert!(fp.contains_box(&up) && fp.contains_box(&lo));
        prop_assert!(up.disjoint(&lo));
    }

    #[test]
    fn bracket_methods_agree(bvals in proptest::collection::vec(-2.0..2.0f64, 64),
                             fvals in values_strategy(), k in 1u32..4) {
        let b = grid_from(bvals);
        let f = grid_from(fvals);
        let t_op = FracIntegralOp {
            params: IntegralParams::new(TimeLag::new(1, 2).unwrap(), 0.5, Direction::Forward)
                .unwrap(),
        };
        let kernel = commutator_bracket(&t_op, &b, &f, k, BracketMethod::Kernel).unwrap();
        let recursive = commutator_bracket(&t_op, &b, &f, k, BracketMethod::Recursive).unwrap();
        let scale = kernel.max_abs().max(1e-12);
        for i in 0..64 {
            prop_assert!((kernel.value_flat(i) - recursive.value_flat(i)).abs() <= 1e-9 * scale);
        }
    }
}
