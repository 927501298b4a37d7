//! Translation surfaces: the unfolding of a rational polygon into `2N`
//! glued copies, and the combinatorics every later stage relies on.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{CyclotomicReal, Rational};
use crate::geometry::Vec2;
use crate::polygon::{DihedralElement, DihedralGroup, Edge, Polygon, RationalAngle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("edge ({0}, {1}) is not paired")]
    Unpaired(usize, usize),
    #[error("pairing is not an involution at edge ({0}, {1})")]
    NotInvolution(usize, usize),
    #[error("edges ({0}, {1}) and ({2}, {3}) are not opposite parallel translates")]
    BadGluing(usize, usize, usize, usize),
    #[error("vertex class {0} has total angle {1}π, not a multiple of 2π")]
    BadConeAngle(usize, String),
    #[error("genus formulas disagree: sum of (k-1) = {sum}, -chi = {minus_chi}")]
    EulerMismatch { sum: i64, minus_chi: i64 },
}

/// One polygon copy in its own chart. Vertex `j` of the face is the
/// `vertex_source[j]` vertex of the base polygon (when there is one).
#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    pub label: Option<DihedralElement>,
    pub polygon: Polygon,
    pub vertex_source: Vec<usize>,
    pub edge_source: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConePoint {
    pub multiplicity: u32,
    /// Corners `(face, vertex)` glued into this point.
    pub vertex_orbit: Vec<(usize, usize)>,
    pub source_vertex_class: Option<usize>,
    pub is_singular: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Genus {
    pub g: i64,
    pub chi: i64,
}

#[derive(Clone, Debug)]
pub struct TranslationSurface {
    faces: Vec<Face>,
    pairing: Vec<Vec<(usize, usize)>>,
    cone_points: Vec<ConePoint>,
    corner_class: Vec<Vec<usize>>,
    base: Option<Polygon>,
    group: Option<DihedralGroup>,
}

/// Surfaces are equal when they have the same faces, gluings and base;
/// everything else is derived from those.
impl PartialEq for TranslationSurface {
    fn eq(&self, other: &Self) -> bool {
        self.faces == other.faces && self.pairing == other.pairing && self.base == other.base
    }
}

impl TranslationSurface {
    /// Glues faces along `pairing[f][e] = (f', e')`, checking that partners
    /// are opposite translates and that every cone angle is a multiple of 2π.
    pub fn from_faces(
        faces: Vec<Face>,
        pairing: Vec<Vec<(usize, usize)>>,
    ) -> Result<Self, SurfaceError> {
        Self::build(faces, pairing, None, None)
    }

    /// Like [`TranslationSurface::from_faces`], keeping a base polygon and
    /// its group so that face labels stay meaningful.
    pub fn from_parts(
        faces: Vec<Face>,
        pairing: Vec<Vec<(usize, usize)>>,
        base: Option<Polygon>,
    ) -> Result<Self, SurfaceError> {
        let group = base.as_ref().map(|p| p.group());
        Self::build(faces, pairing, base, group)
    }

    fn build(
        faces: Vec<Face>,
        pairing: Vec<Vec<(usize, usize)>>,
        base: Option<Polygon>,
        group: Option<DihedralGroup>,
    ) -> Result<Self, SurfaceError> {
        for (f, face) in faces.iter().enumerate() {
            for e in 0..face.polygon.len() {
                let &(g, d) = pairing
                    .get(f)
                    .and_then(|row| row.get(e))
                    .ok_or(SurfaceError::Unpaired(f, e))?;
                if g >= faces.len() || d >= faces[g].polygon.len() || pairing[g][d] != (f, e) || (g, d) == (f, e) {
                    return Err(SurfaceError::NotInvolution(f, e));
                }
                let a = &face.polygon.edges()[e];
                let b = &faces[g].polygon.edges()[d];
                let opposite = (&b.direction - &a.direction).mod_two() == RationalAngle::frac(1, 1);
                if !opposite || a.length != b.length {
                    return Err(SurfaceError::BadGluing(f, e, g, d));
                }
            }
        }
        let mut uf = UnionFind::new();
        let mut offset = Vec::with_capacity(faces.len());
        for face in &faces {
            offset.push(uf.len());
            uf.extend(face.polygon.len());
        }
        let id = |f: usize, v: usize| offset[f] + v % faces[f].polygon.len();
        for (f, face) in faces.iter().enumerate() {
            for e in 0..face.polygon.len() {
                let (g, d) = pairing[f][e];
                uf.union(id(f, e), id(g, d + 1));
                uf.union(id(f, e + 1), id(g, d));
            }
        }
        let mut class_of_root = std::collections::HashMap::new();
        let mut corner_class: Vec<Vec<usize>> = Vec::with_capacity(faces.len());
        let mut orbits: Vec<Vec<(usize, usize)>> = Vec::new();
        for (f, face) in faces.iter().enumerate() {
            let mut row = Vec::with_capacity(face.polygon.len());
            for v in 0..face.polygon.len() {
                let root = uf.find(id(f, v));
                let next = class_of_root.len();
                let c = *class_of_root.entry(root).or_insert(next);
                if c == orbits.len() {
                    orbits.push(Vec::new());
                }
                orbits[c].push((f, v));
                row.push(c);
            }
            corner_class.push(row);
        }
        let mut cone_points = Vec::with_capacity(orbits.len());
        for (c, orbit) in orbits.into_iter().enumerate() {
            let total: Rational = orbit
                .iter()
                .map(|&(f, v)| faces[f].polygon.angle(v).multiple)
                .sum();
            let k = &total / Rational::from_integer(BigInt::from(2));
            if !k.is_integer() || k <= Rational::zero() {
                return Err(SurfaceError::BadConeAngle(c, total.to_string()));
            }
            let k = k.to_integer().to_u32().expect("small multiplicity");
            let sources: Vec<usize> = orbit
                .iter()
                .map(|&(f, v)| faces[f].vertex_source.get(v).copied().unwrap_or(usize::MAX))
                .collect();
            let source = (sources[0] != usize::MAX && sources.iter().all(|&s| s == sources[0]))
                .then_some(sources[0]);
            cone_points.push(ConePoint {
                multiplicity: k,
                vertex_orbit: orbit,
                source_vertex_class: source,
                is_singular: k > 1,
            });
        }
        let s = TranslationSurface { faces, pairing, cone_points, corner_class, base, group };
        s.genus()?;
        Ok(s)
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn pairing(&self) -> &[Vec<(usize, usize)>] {
        &self.pairing
    }

    pub fn partner(&self, face: usize, edge: usize) -> (usize, usize) {
        self.pairing[face][edge]
    }

    pub fn cone_points(&self) -> &[ConePoint] {
        &self.cone_points
    }

    /// Vertex class of corner `(face, vertex)`.
    pub fn class_of(&self, face: usize, vertex: usize) -> usize {
        self.corner_class[face][vertex % self.faces[face].polygon.len()]
    }

    pub fn base(&self) -> Option<&Polygon> {
        self.base.as_ref()
    }

    pub fn group(&self) -> Option<&DihedralGroup> {
        self.group.as_ref()
    }

    pub fn edge_count(&self) -> usize {
        self.faces.iter().map(|f| f.polygon.len()).sum::<usize>() / 2
    }

    /// Genus from the cone angles, cross-checked against `V - E + F`.
    pub fn genus(&self) -> Result<Genus, SurfaceError> {
        let sum: i64 = self.cone_points.iter().map(|c| c.multiplicity as i64 - 1).sum();
        let chi = self.cone_points.len() as i64 - self.edge_count() as i64 + self.faces.len() as i64;
        if sum != -chi || sum % 2 != 0 {
            return Err(SurfaceError::EulerMismatch { sum, minus_chi: -chi });
        }
        Ok(Genus { g: sum / 2 + 1, chi })
    }

    pub fn area(&self) -> CyclotomicReal {
        self.faces
            .iter()
            .fold(CyclotomicReal::zero(), |acc, f| &acc + &f.polygon.area())
    }

    /// Face index of the copy labeled `g` (unfolded surfaces only).
    pub fn face_of(&self, g: &DihedralElement) -> Option<usize> {
        self.group.as_ref()?;
        Some(g.ordinal())
    }

    /// Image of a vertex class under the affine map of `h ∈ G_P`.
    pub fn act_on_class(&self, h: &DihedralElement, class: usize) -> Option<usize> {
        let (f, v) = self.cone_points[class].vertex_orbit[0];
        let face = &self.faces[f];
        let g = face.label?;
        let src = face.vertex_source[v];
        let target = h.compose(&g).ordinal();
        let tv = self.faces[target].vertex_source.iter().position(|&s| s == src)?;
        Some(self.class_of(target, tv))
    }

    /// Classes whose corners come from vertex `i` of the base polygon.
    pub fn classes_over_vertex(&self, i: usize) -> Vec<usize> {
        (0..self.cone_points.len())
            .filter(|&c| self.cone_points[c].source_vertex_class == Some(i))
            .collect()
    }
}

/// The unfolded surface of `p`: one face per element of `G_P`.
pub fn unfold(p: &Polygon) -> TranslationSurface {
    let group = p.group();
    let n = p.len();
    let refl: Vec<DihedralElement> = p
        .edges()
        .iter()
        .map(|e| group.reflection_in(&e.direction).expect("side directions lie on axes"))
        .collect();
    let mut faces = Vec::with_capacity(group.order());
    for g in group.elements() {
        let image = |i: usize| {
            let e = &p.edges()[i];
            (group.act_direction(&g, &e.direction), e.length.clone())
        };
        let (edges, vertex_source, edge_source): (Vec<Edge>, Vec<usize>, Vec<usize>) = if g.reflection {
            let edges = (0..n)
                .map(|j| {
                    let (d, l) = image(n - 1 - j);
                    Edge::new(&d + &RationalAngle::frac(1, 1), l)
                })
                .collect();
            (edges, (0..n).map(|j| (n - j) % n).collect(), (0..n).map(|j| n - 1 - j).collect())
        } else {
            let edges = (0..n).map(|j| {
                let (d, l) = image(j);
                Edge::new(d, l)
            });
            (edges.collect(), (0..n).collect(), (0..n).collect())
        };
        faces.push(Face {
            label: Some(g),
            polygon: Polygon::from_vectors_unchecked(edges),
            vertex_source,
            edge_source,
        });
    }
    let pairing = faces
        .iter()
        .map(|face| {
            let g = face.label.expect("labeled");
            face.edge_source
                .iter()
                .map(|&i| {
                    let h = g.compose(&refl[i]);
                    let target = &faces[h.ordinal()];
                    let e = target.edge_source.iter().position(|&s| s == i).expect("edge present");
                    (h.ordinal(), e)
                })
                .collect()
        })
        .collect();
    TranslationSurface::build(faces, pairing, Some(p.clone()), Some(group))
        .expect("unfolding of a valid rational polygon is a translation surface")
}

/// Cone angle data only, without building the surface: a vertex of angle
/// `m/n` gives `N/n` points of multiplicity `m`.
pub fn predicted_multiplicities(p: &Polygon) -> Vec<(usize, u32, u32)> {
    let big_n = p.n();
    p.angles()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let m = a.numer().to_u32().expect("small");
            (i, big_n / a.denom(), m)
        })
        .collect()
}

#[derive(Debug, Default)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new() -> Self {
        Self::default()
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn extend(&mut self, k: usize) {
        let start = self.parent.len();
        self.parent.extend(start..start + k);
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Flat torus glued from the unit square, used as a smoke test surface.
pub fn unit_square_torus() -> TranslationSurface {
    let one = CyclotomicReal::one();
    let sq = Polygon::new(vec![
        Edge::new(RationalAngle::zero(), one.clone()),
        Edge::new(RationalAngle::frac(1, 2), one.clone()),
        Edge::new(RationalAngle::frac(1, 1), one.clone()),
        Edge::new(RationalAngle::frac(3, 2), one),
    ])
    .expect("square");
    let face = Face { label: None, polygon: sq, vertex_source: vec![0, 1, 2, 3], edge_source: vec![0, 1, 2, 3] };
    TranslationSurface::from_faces(vec![face], vec![vec![(0, 2), (0, 3), (0, 0), (0, 1)]])
        .expect("torus")
}

impl Face {
    pub fn vertices(&self) -> Vec<Vec2> {
        self.polygon.vertices()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::triangle_from_angles;

    fn tri(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Polygon {
        triangle_from_angles(
            &RationalAngle::frac(a.0, a.1),
            &RationalAngle::frac(b.0, b.1),
            &RationalAngle::frac(c.0, c.1),
        )
        .unwrap()
    }

    fn multiplicities(s: &TranslationSurface) -> Vec<u32> {
        let mut v: Vec<u32> = s.cone_points().iter().map(|c| c.multiplicity).collect();
        v.sort();
        v
    }

    #[test]
    fn octagon_surface() {
        let s = unfold(&tri((1, 2), (1, 8), (3, 8)));
        assert_eq!(s.faces().len(), 16);
        assert_eq!(s.genus().unwrap(), Genus { g: 2, chi: -2 });
        assert_eq!(s.cone_points().iter().filter(|c| c.is_singular).count(), 1);
        assert!(s.cone_points().iter().any(|c| c.multiplicity == 3));
    }

    #[test]
    fn double_pentagon() {
        let s = unfold(&tri((1, 2), (1, 5), (3, 10)));
        assert_eq!(s.faces().len(), 20);
        assert_eq!(s.genus().unwrap().g, 2);
        // apex π/5 corners glue into the two pentagon centers
        let centers = s.classes_over_vertex(1);
        assert_eq!(centers.len(), 2);
        assert!(centers.iter().all(|&c| s.cone_points()[c].multiplicity == 1));
        assert_eq!(multiplicities(&s).iter().filter(|&&k| k == 3).count(), 1);
    }

    #[test]
    fn genus_four_for_fifteen() {
        assert_eq!(unfold(&tri((1, 5), (1, 3), (7, 15))).genus().unwrap().g, 4);
    }

    #[test]
    fn torus() {
        let t = unit_square_torus();
        assert_eq!(t.genus().unwrap(), Genus { g: 1, chi: 0 });
        let sq = Polygon::new(unit_square_torus().faces()[0].polygon.edges().to_vec()).unwrap();
        let s = unfold(&sq);
        assert_eq!(s.faces().len(), 4);
        assert!(s.cone_points().iter().all(|c| c.multiplicity == 1));
        assert_eq!(s.genus().unwrap().g, 1);
    }

    #[test]
    fn multiplicities_match_prediction() {
        let p = tri((1, 4), (1, 3), (5, 12));
        let s = unfold(&p);
        for (i, count, m) in predicted_multiplicities(&p) {
            let cls = s.classes_over_vertex(i);
            assert_eq!(cls.len() as u32, count);
            assert!(cls.iter().all(|&c| s.cone_points()[c].multiplicity == m));
        }
    }

    #[test]
    fn group_action_permutes_classes() {
        let s = unfold(&tri((2, 9), (1, 3), (4, 9)));
        let g = s.group().unwrap().clone();
        for h in g.elements() {
            let mut img: Vec<usize> =
                (0..s.cone_points().len()).map(|c| s.act_on_class(&h, c).unwrap()).collect();
            img.sort();
            img.dedup();
            assert_eq!(img.len(), s.cone_points().len());
        }
    }
}
