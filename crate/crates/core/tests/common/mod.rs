//! Strategies and invariant checks shared by the property suite and the
//! acceptance run.

#![allow(dead_code)]

use num_traits::One;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use billiards_core::covers::{reflect_across, Motion, Tiling};
use billiards_core::exact::{rat, CyclotomicReal as Real, Rational};
use billiards_core::flow::{cylinder_decomposition, FlowOptions};
use billiards_core::polygon::{triangle_from_angles, DihedralElement, Polygon, RationalAngle};
use billiards_core::unfolding::unfold;

const CONDUCTORS: [i64; 9] = [1, 3, 4, 5, 7, 8, 12, 15, 24];

type Check = Result<(), TestCaseError>;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

/// Σ r_k cos(2πk/n) for a random small conductor n.
pub fn real() -> impl Strategy<Value = Real> {
    (prop::sample::select(CONDUCTORS.to_vec()), prop::collection::vec(small_rational(), 1..4)).prop_map(|(n, rs)| {
        rs.iter().enumerate().fold(Real::zero(), |acc, (k, r)| {
            &acc + &Real::cos_pi(&rat(2 * k as i64, n)).scale(r)
        })
    })
}

/// Angles (i/q, j/q, rest) of a triangle with denominator at most `max_q`.
pub fn triangle(max_q: i64) -> impl Strategy<Value = Polygon> {
    (3..=max_q)
        .prop_flat_map(|q| (Just(q), 1..q - 1))
        .prop_flat_map(|(q, i)| (Just(q), Just(i), 1..q - i))
        .prop_map(|(q, i, j)| {
            let [a, b, c] = [rat(i, q), rat(j, q), rat(q - i - j, q)].map(RationalAngle::new);
            triangle_from_angles(&a, &b, &c).expect("angles are positive and sum to 1")
        })
}

/// Reflection moves: (copy to reflect, side to reflect across).
pub fn moves() -> impl Strategy<Value = Vec<(usize, usize)>> {
    prop::collection::vec((0usize..16, 0usize..3), 1..6)
}

#[allow(clippy::eq_op)]
pub fn ring_laws(a: &Real, b: &Real, c: &Real) -> Check {
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(a - a, Real::zero());
    prop_assert_eq!(a * &Real::one(), a.clone());
    if !b.is_zero() {
        let q = a / b;
        prop_assert_eq!(&q * b, a.clone());
    }
    Ok(())
}

pub fn order_agrees_with_decimals(a: &Real, b: &Real) -> Check {
    let (x, y) = (a.to_f64(), b.to_f64());
    if (x - y).abs() > 1e-9 {
        prop_assert_eq!(a < b, x < y);
    }
    Ok(())
}

pub fn pythagorean(p: i64, q: i64) -> Check {
    let t = rat(p, q);
    let (c, s) = (Real::cos_pi(&t), Real::sin_pi(&t));
    prop_assert_eq!(&(&c * &c) + &(&s * &s), Real::one());
    Ok(())
}

pub fn closes_up(p: &Polygon) -> Check {
    let r = p.closure_residual();
    prop_assert!(r.x.is_zero() && r.y.is_zero());
    let sum: Rational = p.angles().iter().map(|a| a.multiple.clone()).sum();
    prop_assert_eq!(sum, Rational::one());
    prop_assert!(p.area().is_positive());
    Ok(())
}

pub fn pairing_involution(p: &Polygon) -> Check {
    let m = unfold(p);
    for (f, row) in m.pairing().iter().enumerate() {
        for (e, &(g, d)) in row.iter().enumerate() {
            prop_assert_ne!((g, d), (f, e));
            prop_assert_eq!(m.partner(g, d), (f, e));
        }
    }
    prop_assert_eq!(m.faces().len(), 2 * p.n() as usize);
    Ok(())
}

/// The G_P action on vertex classes is an action, and it preserves cone
/// angles and the base vertex a class comes from.
pub fn orbit_consistency(p: &Polygon, i: usize, j: usize) -> Check {
    let m = unfold(p);
    let g = m.group().unwrap();
    let elems: Vec<DihedralElement> = g.elements().collect();
    let (a, b) = (elems[i % elems.len()], elems[j % elems.len()]);
    for z in 0..m.cone_points().len() {
        let az = m.act_on_class(&a, z).unwrap();
        prop_assert_eq!(m.act_on_class(&a.compose(&b), z), m.act_on_class(&a, m.act_on_class(&b, z).unwrap()));
        prop_assert_eq!(m.act_on_class(&DihedralElement::identity(g.n), z), Some(z));
        prop_assert_eq!(m.cone_points()[az].multiplicity, m.cone_points()[z].multiplicity);
        prop_assert_eq!(m.cone_points()[az].source_vertex_class, m.cone_points()[z].source_vertex_class);
    }
    Ok(())
}

/// Copies added by random reflections: whenever they form a tiling, the
/// outline has exactly their total area.
pub fn tiling_area(p: &Polygon, moves: &[(usize, usize)]) -> Check {
    let g = p.group();
    let mut motions = vec![Motion::identity(g.n)];
    for &(c, s) in moves {
        let m = reflect_across(p, &g, &motions[c % motions.len()], s);
        if !motions.contains(&m) {
            motions.push(m);
        }
    }
    if let Ok(t) = Tiling::new(p, motions) {
        prop_assert_eq!(t.outline().area(), p.area().scale(&rat(t.len() as i64, 1)));
    }
    Ok(())
}

/// Cylinders in a periodic direction fill the surface.
pub fn cylinders_fill(p: &Polygon) -> Check {
    let m = unfold(p);
    if let Ok(d) = cylinder_decomposition(&m, &RationalAngle::zero(), &FlowOptions::default()) {
        prop_assert_eq!(d.total_area(), m.area());
    }
    Ok(())
}
