//! JSON files for polygons, tilings and surfaces.
//!
//! Every writer here produces something the matching reader accepts and
//! turns back into an equal value. Extra fields written for readers
//! (angles, genus, cone points, the outline) are ignored on input.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covers::{Motion, Tiling, TilingError};
use crate::polygon::{triangle_from_angles, DihedralElement, Edge, Polygon, PolygonError, RationalAngle};
use crate::unfolding::{ConePoint, Face, Genus, SurfaceError, TranslationSurface};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("{0}")]
    Format(String),
}

/// Reads a polygon from its edge list or from `{"triangle": [a, b, c]}`
/// (angles in units of π). Validation failures are polygon errors, not
/// JSON errors.
fn polygon_from_value(v: serde_json::Value) -> Result<Polygon, IoError> {
    if let Some(t) = v.get("triangle") {
        let [a, b, c]: [RationalAngle; 3] = serde_json::from_value(t.clone())?;
        return Ok(triangle_from_angles(&a, &b, &c)?);
    }
    #[derive(Deserialize)]
    struct Raw {
        edges: Vec<Edge>,
    }
    let raw: Raw = serde_json::from_value(v)?;
    Ok(Polygon::new(raw.edges)?)
}

pub fn polygon_from_json(s: &str) -> Result<Polygon, IoError> {
    polygon_from_value(serde_json::from_str(s)?)
}

pub fn polygon_to_json(p: &Polygon) -> String {
    serde_json::to_string_pretty(p).expect("polygons serialize")
}

#[derive(Serialize)]
struct TilingOut<'a> {
    base: &'a Polygon,
    #[serde(skip_serializing_if = "Option::is_none")]
    words: Option<&'a [Vec<usize>]>,
    motions: &'a [Motion],
    outline: &'a Polygon,
}

#[derive(Deserialize)]
struct TilingIn {
    base: serde_json::Value,
    #[serde(default)]
    words: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    motions: Option<Vec<Motion>>,
}

pub fn tiling_to_json(t: &Tiling) -> String {
    let out = TilingOut { base: t.base(), words: t.words(), motions: t.motions(), outline: t.outline() };
    serde_json::to_string_pretty(&out).expect("tilings serialize")
}

/// Reads a tiling from its reflection words or its motions. When both are
/// given they must describe the same copies.
pub fn tiling_from_json(s: &str) -> Result<Tiling, IoError> {
    let raw: TilingIn = serde_json::from_str(s)?;
    let base = polygon_from_value(raw.base)?;
    match (raw.words, raw.motions) {
        (Some(words), motions) => {
            let t = Tiling::from_words(&base, &words)?;
            if motions.is_some_and(|m| m != t.motions()) {
                return Err(IoError::Format("motions do not match the reflection words".into()));
            }
            Ok(t)
        }
        (None, Some(motions)) => Ok(Tiling::new(&base, motions)?),
        (None, None) => Err(IoError::Format("a tiling needs \"words\" or \"motions\"".into())),
    }
}

#[derive(Serialize, Deserialize)]
struct FaceFile {
    label: Option<DihedralElement>,
    edges: Vec<Edge>,
    vertex_source: Vec<usize>,
    edge_source: Vec<usize>,
}

#[derive(Serialize)]
struct SurfaceOut<'a> {
    base: Option<&'a Polygon>,
    faces: Vec<FaceFile>,
    pairing: &'a [Vec<(usize, usize)>],
    #[serde(skip_serializing_if = "Option::is_none")]
    genus: Option<Genus>,
    cone_points: &'a [ConePoint],
}

#[derive(Deserialize)]
struct SurfaceIn {
    #[serde(default)]
    base: Option<serde_json::Value>,
    faces: Vec<FaceFile>,
    pairing: Vec<Vec<(usize, usize)>>,
}

pub fn surface_to_json(m: &TranslationSurface) -> String {
    let faces = m
        .faces()
        .iter()
        .map(|f| FaceFile {
            label: f.label,
            edges: f.polygon.edges().to_vec(),
            vertex_source: f.vertex_source.clone(),
            edge_source: f.edge_source.clone(),
        })
        .collect();
    let out = SurfaceOut {
        base: m.base(),
        faces,
        pairing: m.pairing(),
        genus: m.genus().ok(),
        cone_points: m.cone_points(),
    };
    serde_json::to_string_pretty(&out).expect("surfaces serialize")
}

pub fn surface_from_json(s: &str) -> Result<TranslationSurface, IoError> {
    let raw: SurfaceIn = serde_json::from_str(s)?;
    let base = raw.base.filter(|v| !v.is_null()).map(polygon_from_value).transpose()?;
    let faces = raw
        .faces
        .into_iter()
        .map(|f| {
            Ok(Face {
                label: f.label,
                polygon: Polygon::new(f.edges)?,
                vertex_source: f.vertex_source,
                edge_source: f.edge_source,
            })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(TranslationSurface::from_parts(faces, raw.pairing, base)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unfolding::unfold;

    fn octagon_triangle() -> Polygon {
        polygon_from_json(r#"{"triangle":["1/2","1/8","3/8"]}"#).unwrap()
    }

    #[test]
    fn triangle_shorthand_matches_edge_list() {
        let p = octagon_triangle();
        assert_eq!(polygon_from_json(&polygon_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn edge_lengths_may_be_expressions() {
        let p = polygon_from_json(
            r#"{"edges":[{"direction":"0","length":"1"},{"direction":"1/2","length":"1"},
                {"direction":"1","length":1},{"direction":"3/2","length":"1"}]}"#,
        )
        .unwrap();
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn open_polygon_is_a_polygon_error() {
        let e = polygon_from_json(
            r#"{"edges":[{"direction":"0","length":"1"},{"direction":"1/2","length":"1"},{"direction":"1","length":"2"}]}"#,
        )
        .unwrap_err();
        assert!(matches!(e, IoError::Polygon(_)), "{e}");
    }

    #[test]
    fn surface_round_trip() {
        let m = unfold(&octagon_triangle());
        let back = surface_from_json(&surface_to_json(&m)).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.genus().unwrap().g, 2);
    }

    #[test]
    fn tiling_round_trip_by_words_and_by_motions() {
        let p = octagon_triangle();
        let t = Tiling::from_words(&p, &[vec![], vec![0]]).unwrap();
        let s = tiling_to_json(&t);
        let back = tiling_from_json(&s).unwrap();
        assert_eq!(back.motions(), t.motions());
        let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
        v.as_object_mut().unwrap().remove("words");
        let back = tiling_from_json(&v.to_string()).unwrap();
        assert_eq!(back.motions(), t.motions());
        assert_eq!(back.outline(), t.outline());
    }
}
