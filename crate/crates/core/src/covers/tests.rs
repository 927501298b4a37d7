use super::*;
use crate::exact::CyclotomicReal;
use crate::geometry::Vec2;
use crate::polygon::{triangle_from_angles, DihedralElement, Edge, Polygon, RationalAngle};
use crate::unfolding::unfold;

fn square(side: i64) -> Polygon {
    let edges = (0..4).map(|k| Edge::new(RationalAngle::frac(k, 2), CyclotomicReal::from_int(side))).collect();
    Polygon::new(edges).unwrap()
}

fn right_pentagon_triangle() -> Polygon {
    let [a, b, c] = [(1, 2), (1, 5), (3, 10)].map(|(p, q)| RationalAngle::frac(p, q));
    triangle_from_angles(&a, &b, &c).unwrap()
}

fn angles_of(p: &Polygon) -> Vec<RationalAngle> {
    let mut a = p.angles();
    a.sort();
    a
}

#[test]
fn single_copy_is_the_polygon() {
    let p = right_pentagon_triangle();
    let t = Tiling::from_words(&p, &[vec![]]).unwrap();
    assert_eq!(t.outline().canonical_form(), p.canonical_form());
    let a = analyze_cover(&t).unwrap();
    assert_eq!((a.subgroup_index, a.degree), (1, 1));
    assert!(a.branch_locus.is_empty());
    assert_eq!(a.chi_q, a.chi_p);
}

#[test]
fn checkerboard_square() {
    let t = Tiling::from_words(&square(1), &[vec![], vec![1], vec![2], vec![1, 2]]).unwrap();
    assert_eq!(t.outline(), &square(2));
    let interior: Vec<_> = t.fans().iter().filter(|f| f.kind == FanKind::Interior).collect();
    assert_eq!(interior.len(), 1);
    assert_eq!(interior[0].multiplier(), 4);
    assert_eq!(t.fans().iter().filter(|f| f.kind == FanKind::Side).count(), 4);
    let a = analyze_cover(&t).unwrap();
    assert_eq!((a.n_p, a.n_q, a.degree), (2, 2, 4));
    assert!(a.branch_locus.is_empty());
    assert_eq!((a.genus_p, a.genus_q), (1, 1));
    assert_eq!(a.h.len(), 4);
}

#[test]
fn doubled_right_triangle_is_the_isosceles_triangle() {
    // reflect across the leg between the right angle and the 3/10 corner
    let p = right_pentagon_triangle();
    let t = Tiling::from_words(&p, &[vec![], vec![2]]).unwrap();
    let expect = [(1, 5), (1, 5), (3, 5)].map(|(a, b)| RationalAngle::frac(a, b));
    assert_eq!(angles_of(t.outline()), expect.to_vec());
    let a = analyze_cover(&t).unwrap();
    assert_eq!((a.n_p, a.n_q, a.subgroup_index, a.degree), (10, 5, 2, 1));
    // the apex doubles a 3/10 corner: 2 divides 10, nothing is branched
    assert!(a.branch_locus.is_empty());
    assert_eq!((a.genus_p, a.genus_q), (2, 2));
    let side = t.fans().iter().find(|f| f.kind == FanKind::Side).unwrap();
    assert_eq!((side.vertex, side.multiplier()), (0, 2));
}

#[test]
fn l_tromino_branches_once() {
    let t = Tiling::from_words(&square(1), &[vec![], vec![1], vec![2]]).unwrap();
    let a = analyze_cover(&t).unwrap();
    assert_eq!(a.degree, 3);
    assert_eq!(a.branch_locus.len(), 1);
    assert_eq!(a.ramification_total, 2);
    assert_eq!((a.chi_p, a.chi_q, a.genus_q), (0, -2, 2));
    assert_eq!(rh::cover_chi(3, a.chi_p, &[3]), a.chi_q);
    assert!(rh::branched_genus_exceeds(a.genus_q, 3, a.genus_p));
    let z = a.branch_locus[0];
    let cover = build_cover(&t).unwrap();
    for h in &a.h {
        assert_eq!(cover.surface_p.act_on_class(h, z), Some(z));
    }
    let v = appropriate_verdict(&cover, BaseFlags { lattice: true, square_tiled: true }, &[]);
    assert_eq!(v.appropriate, Appropriate::No);
    assert!(v.reasons.contains(&Reason::SquareTiledBase));
}

#[test]
fn unbranched_cover_is_not_appropriate() {
    let t = Tiling::from_words(&right_pentagon_triangle(), &[vec![], vec![2]]).unwrap();
    let cover = build_cover(&t).unwrap();
    let v = appropriate_verdict(&cover, BaseFlags { lattice: true, square_tiled: false }, &[]);
    assert_eq!(v.appropriate, Appropriate::No);
    assert!(v.reasons.contains(&Reason::Unbranched));
}

#[test]
fn preimages_sum_to_degree() {
    let t = Tiling::from_words(&square(1), &[vec![], vec![1], vec![2]]).unwrap();
    let a = analyze_cover(&t).unwrap();
    for b in &a.points {
        let total: crate::exact::Rational =
            b.preimages.iter().map(|p| &p.count * crate::exact::rat(p.ramification as i64, 1)).sum();
        assert_eq!(total, crate::exact::rat(3, 1));
    }
}

#[test]
fn rejects_bad_tilings() {
    let p = square(1);
    let id = Motion::identity(2);
    assert!(matches!(Tiling::new(&p, vec![id.clone(), id.clone()]), Err(TilingError::Overlap(0, 1))));
    let shifted = |x: i64, y: i64| Motion {
        element: DihedralElement::identity(2),
        translation: Vec2::new(CyclotomicReal::from_int(x), CyclotomicReal::frac(y, 2)),
    };
    assert!(matches!(Tiling::new(&p, vec![id.clone(), shifted(1, 0)]), Err(TilingError::NonMirrorAdjacency(..))));
    assert!(matches!(Tiling::new(&p, vec![id.clone(), shifted(3, 0)]), Err(TilingError::Disconnected)));
    let mut up = motion_from_word(&p, &p.group(), &[1]).unwrap();
    up.translation = Vec2::new(up.translation.x.clone(), CyclotomicReal::frac(1, 2));
    assert!(Tiling::new(&p, vec![id.clone(), up]).is_err());
    assert!(matches!(Tiling::from_words(&p, &[vec![7]]), Err(TilingError::BadSide { .. })));
}

#[test]
fn composed_tiling_matches_direct_one() {
    let inner = Tiling::from_words(&square(1), &[vec![], vec![1], vec![2], vec![1, 2]]).unwrap();
    let outer = Tiling::from_words(inner.outline(), &[vec![], vec![1]]).unwrap();
    let both = outer.compose(&inner).unwrap();
    assert_eq!(both.len(), 8);
    let lengths: Vec<f64> = both.outline().edges().iter().map(|e| e.length.to_f64()).collect();
    assert_eq!(lengths, vec![4.0, 2.0, 4.0, 2.0]);
    let a = analyze_cover(&both).unwrap();
    assert_eq!(a.degree, 8);
    assert_eq!(unfold(both.outline()).genus().unwrap().g, 1);
}
