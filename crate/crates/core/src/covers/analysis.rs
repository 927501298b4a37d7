//! The translation cover M_Q → M_P induced by a reflection tiling.

use std::collections::{BTreeMap, HashSet};

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use super::tiling::{embed, FanKind, Motion, Tiling};
use crate::exact::{rat, Rational};
use crate::geometry::Vec2;
use crate::polygon::{DihedralElement, Polygon, RationalAngle};
use crate::unfolding::{unfold, SurfaceError, TranslationSurface};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("outline group has N_Q = {n_q} but its side reflections generate {generated} elements")]
    GroupMismatch { n_q: u32, generated: usize },
    #[error("element of G_Q has no counterpart in G_P")]
    NotEmbedded,
    #[error("degree {n}/{m} is not an integer")]
    NonIntegerDegree { n: usize, m: u32 },
    #[error("corners of one cone point of M_Q map to different points of M_P")]
    InconsistentClass,
    #[error("a smooth point of Q sits over a cone point of angle {0}")]
    SmoothOverCone(RationalAngle),
    #[error("point {class} of M_P has preimage count {total}, expected the degree {degree}")]
    PreimageCount { class: usize, total: Rational, degree: u32 },
    #[error("Riemann-Hurwitz fails: chi(M_Q) = {chi_q}, d*chi(M_P) - ramification = {expected}")]
    RiemannHurwitz { chi_q: i64, expected: i64 },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Clone, Debug, Serialize)]
pub struct Preimage {
    pub kind: FanKind,
    /// Number of P corners meeting there.
    pub multiplier: u32,
    pub ramification: u32,
    /// How many points of M_Q of this kind lie over the base point.
    #[serde(serialize_with = "crate::exact::serialize_rational")]
    pub count: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasePoint {
    /// Vertex class of M_P.
    pub class: usize,
    pub vertex: usize,
    pub angle: RationalAngle,
    pub preimages: Vec<Preimage>,
}

impl BasePoint {
    pub fn is_branched(&self) -> bool {
        self.preimages.iter().any(|p| p.ramification > 1)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverAnalysis {
    pub n_copies: usize,
    #[serde(rename = "N_P")]
    pub n_p: u32,
    #[serde(rename = "N_Q")]
    pub n_q: u32,
    pub subgroup_index: u32,
    pub degree: u32,
    /// G_Q as elements of G_P.
    pub g_q: Vec<DihedralElement>,
    /// Elements of G_P that carry M_Q to itself.
    pub h: Vec<DihedralElement>,
    pub points: Vec<BasePoint>,
    /// Classes of M_P over which the cover is branched.
    pub branch_locus: Vec<usize>,
    pub chi_p: i64,
    pub chi_q: i64,
    pub genus_p: i64,
    pub genus_q: i64,
    pub ramification_total: i64,
    pub rh_consistent: bool,
}

/// Ramification at a corner of Q where k corners of angle m0π/n0 meet.
pub fn ramification_index(k: u32, n0: u32) -> u32 {
    k / k.gcd(&n0)
}

pub struct Cover {
    pub analysis: CoverAnalysis,
    pub surface_p: TranslationSurface,
    pub surface_q: TranslationSurface,
    pub outline: Polygon,
}

pub fn analyze_cover(t: &Tiling) -> Result<CoverAnalysis, AnalysisError> {
    build_cover(t).map(|c| c.analysis)
}

/// Analysis plus both unfolded surfaces.
pub fn build_cover(t: &Tiling) -> Result<Cover, AnalysisError> {
    let p = t.base();
    let q = t.outline();
    let gp = t.group();
    let gq = q.group();
    let n_p = gp.n;
    let n_q = gq.n;

    let side_reflections: Vec<DihedralElement> = q
        .edges()
        .iter()
        .map(|e| gp.reflection_in(&e.direction).ok_or(AnalysisError::NotEmbedded))
        .collect::<Result<_, _>>()?;
    let generated = gp.generated_subgroup(&side_reflections);
    if generated.len() != 2 * n_q as usize {
        return Err(AnalysisError::GroupMismatch { n_q, generated: generated.len() });
    }
    let into_p: Vec<DihedralElement> =
        gq.elements().map(|h| embed(&gq, &h, gp).ok_or(AnalysisError::NotEmbedded)).collect::<Result<_, _>>()?;
    let mut g_q = into_p.clone();
    g_q.sort();
    if g_q != generated {
        return Err(AnalysisError::GroupMismatch { n_q, generated: generated.len() });
    }

    let m = n_p / n_q;
    let n = t.len();
    if !n.is_multiple_of(m as usize) {
        return Err(AnalysisError::NonIntegerDegree { n, m });
    }
    let degree = (n / m as usize) as u32;

    let mp = unfold(p);
    let mq = unfold(q);
    let angles = p.angles();
    let fans = t.fans();

    // base point of a fan inside the copy of Q labeled h
    let image = |h: &DihedralElement, corner: (usize, usize)| -> usize {
        let (c, v) = corner;
        let g = into_p[h.ordinal()].compose(&t.motions()[c].element);
        let f = mp.face_of(&g).expect("unfolded");
        let pos = mp.faces()[f].vertex_source.iter().position(|&s| s == v).expect("vertex present");
        mp.class_of(f, pos)
    };
    let fan_image = |h: &DihedralElement, k: usize| -> Result<usize, AnalysisError> {
        let z = image(h, fans[k].corners[0]);
        if fans[k].corners.iter().any(|&c| image(h, c) != z) {
            return Err(AnalysisError::InconsistentClass);
        }
        Ok(z)
    };

    // preimages of each point of M_P, grouped by fan kind
    let mut tally: BTreeMap<usize, Vec<Preimage>> = BTreeMap::new();
    let mut add = |z: usize, kind: FanKind, k: u32, e: u32, w: Rational| {
        let list = tally.entry(z).or_default();
        match list.iter_mut().find(|p| p.kind == kind) {
            Some(p) => p.count += w,
            None => list.push(Preimage { kind, multiplier: k, ramification: e, count: w }),
        }
    };
    let mut ramification = Rational::zero();
    for h in gq.elements() {
        for (k, fan) in fans.iter().enumerate() {
            let z = fan_image(&h, k)?;
            let a = &angles[fan.vertex];
            let n0 = a.denom();
            let mult = fan.multiplier();
            let (e, w) = match fan.kind {
                FanKind::Interior | FanKind::Side => {
                    if !a.numer().is_one() {
                        return Err(AnalysisError::SmoothOverCone(a.clone()));
                    }
                    let w = if fan.kind == FanKind::Interior { rat(1, 1) } else { rat(1, 2) };
                    (1, w)
                }
                FanKind::Vertex { index } => {
                    let qa = q.angle(index);
                    (ramification_index(mult, n0), rat(1, 2 * qa.denom() as i64))
                }
            };
            if e > 1 {
                ramification += &w * rat(e as i64 - 1, 1);
            }
            add(z, fan.kind, mult, e, w);
        }
    }

    // every cone point of M_Q lies over a single point of M_P
    for cp in mq.cone_points() {
        let mut seen = HashSet::new();
        for &(f, j) in &cp.vertex_orbit {
            let face = &mq.faces()[f];
            let h = face.label.expect("unfolded");
            let u = face.vertex_source[j];
            let k = fans.iter().position(|x| x.kind == FanKind::Vertex { index: u }).expect("fan at every vertex");
            seen.insert(fan_image(&h, k)?);
        }
        if seen.len() != 1 {
            return Err(AnalysisError::InconsistentClass);
        }
    }

    let mut points = Vec::with_capacity(mp.cone_points().len());
    for (class, cp) in mp.cone_points().iter().enumerate() {
        let preimages = tally.remove(&class).unwrap_or_default();
        let total: Rational = preimages.iter().map(|p| &p.count * rat(p.ramification as i64, 1)).sum();
        if total != rat(degree as i64, 1) {
            return Err(AnalysisError::PreimageCount { class, total, degree });
        }
        let vertex = cp.source_vertex_class.expect("unfolded surfaces record the source vertex");
        points.push(BasePoint { class, vertex, angle: angles[vertex].clone(), preimages });
    }
    let branch_locus: Vec<usize> = points.iter().filter(|b| b.is_branched()).map(|b| b.class).collect();

    let gp_genus = mp.genus()?;
    let gq_genus = mq.genus()?;
    let ramification_total = ramification.to_integer().to_i64().expect("small");
    assert!(ramification.is_integer(), "ramification is a whole number of points");
    let expected = degree as i64 * gp_genus.chi - ramification_total;
    if expected != gq_genus.chi {
        return Err(AnalysisError::RiemannHurwitz { chi_q: gq_genus.chi, expected });
    }

    let h = symmetry_group(t, &into_p);
    let analysis = CoverAnalysis {
        n_copies: n,
        n_p,
        n_q,
        subgroup_index: m,
        degree,
        g_q,
        h,
        points,
        branch_locus,
        chi_p: gp_genus.chi,
        chi_q: gq_genus.chi,
        genus_p: gp_genus.g,
        genus_q: gq_genus.g,
        ramification_total,
        rh_consistent: true,
    };
    Ok(Cover { analysis, surface_p: mp, surface_q: mq, outline: q.clone() })
}

/// Elements s of G_P for which s applied to the tiling is a translate of
/// some G_Q image of the tiling, i.e. the lifts of the G_P action to M_Q.
fn symmetry_group(t: &Tiling, g_q: &[DihedralElement]) -> Vec<DihedralElement> {
    let gp = t.group();
    let key = |m: &Motion, shift: &Vec2| (m.element, &m.translation - shift);
    let pieces: HashSet<(DihedralElement, Vec2)> = t.motions().iter().map(|m| key(m, &Vec2::zero())).collect();
    let is_symmetry = |s: &DihedralElement| {
        let moved: Vec<Motion> = t
            .motions()
            .iter()
            .map(|m| Motion { element: s.compose(&m.element), translation: gp.act(s, &m.translation) })
            .collect();
        let first = &moved[0];
        t.motions().iter().filter(|m| m.element == first.element).any(|m| {
            let shift = &first.translation - &m.translation;
            moved.iter().all(|x| pieces.contains(&key(x, &shift)))
        })
    };
    let sym: Vec<DihedralElement> = gp.elements().filter(is_symmetry).collect();
    let products: HashSet<DihedralElement> = g_q.iter().flat_map(|q| sym.iter().map(|s| q.compose(s))).collect();
    let mut h: Vec<DihedralElement> = products.into_iter().collect();
    h.sort();
    h
}
