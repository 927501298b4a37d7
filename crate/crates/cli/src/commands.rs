use std::path::Path;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use billiards_core::catalog::{make_entry, CatalogEntry, CatalogError, Family};
use billiards_core::covers::{appropriate_verdict, build_cover, AnalysisError, BaseFlags, Tiling};
use billiards_core::exact::{parse_rational, CyclotomicReal, ParseError};
use billiards_core::flow::{cylinder_decomposition, FlowError, FlowOptions, PointRef};
use billiards_core::io::{polygon_from_json, surface_from_json, surface_to_json, tiling_from_json, IoError};
use billiards_core::periodicity::{classify_all, classify_point, default_directions, Certificate};
use billiards_core::polygon::{triangle_from_angles, Polygon, PolygonError, RationalAngle};
use billiards_core::search::{search_appropriate, SearchClass, SearchOptions};
use billiards_core::svg;
use billiards_core::unfolding::{unfold, SurfaceError, TranslationSurface};

use crate::output::{emit, write_atomic};
use crate::PolygonSource;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot access {path}: {source}")]
    File { path: String, source: std::io::Error },
    #[error(transparent)]
    Input(#[from] IoError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Cover(#[from] AnalysisError),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::File { .. } => "file",
            CliError::Input(_) => "input",
            CliError::Parse(_) => "parse",
            CliError::Polygon(_) => "polygon",
            CliError::Catalog(_) => "catalog",
            CliError::Surface(_) => "surface",
            CliError::Flow(_) => "flow",
            CliError::Cover(_) => "cover",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn json(&self) -> String {
        json!({ "error": self.kind(), "message": self.to_string() }).to_string()
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::File { path: path.display().to_string(), source })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    write_atomic(path, contents).map_err(|source| CliError::File { path: path.display().to_string(), source })
}

fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(value).expect("reports serialize");
    emit(&s, out).map_err(|source| CliError::File { path: out.map_or("<stdout>".into(), |p| p.display().to_string()), source })
}

fn angle(s: &str) -> Result<RationalAngle, CliError> {
    Ok(RationalAngle::new(parse_rational(s.trim())?))
}

fn family(s: &str) -> Result<Family, CliError> {
    s.parse::<Family>().map_err(|e| CliError::Usage(e.to_string()))
}

/// The polygon named on the command line, with its catalog entry when it
/// came from the catalog.
fn polygon(src: &PolygonSource) -> Result<(Polygon, Option<CatalogEntry>), CliError> {
    let given = [src.triangle.is_some(), src.input.is_some(), src.family.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(CliError::Usage("give exactly one of --triangle, --in, --family".into()));
    }
    if src.n.is_some() && src.family.is_none() {
        return Err(CliError::Usage("--n only applies with --family".into()));
    }
    if let Some(t) = &src.triangle {
        if t.len() != 3 {
            return Err(CliError::Usage(format!("--triangle takes three angles, got {}", t.len())));
        }
        let [a, b, c] = [&t[0], &t[1], &t[2]].map(|s| angle(s));
        return Ok((triangle_from_angles(&a?, &b?, &c?)?, None));
    }
    if let Some(path) = &src.input {
        return Ok((polygon_from_json(&read(path)?)?, None));
    }
    let f = family(src.family.as_deref().expect("checked above"))?;
    let e = make_entry(f, src.n)?;
    Ok((e.polygon.clone(), Some(e)))
}

fn surface_of(src: &PolygonSource) -> Result<TranslationSurface, CliError> {
    Ok(unfold(&polygon(src)?.0))
}

pub fn unfold_surface(src: &PolygonSource, out: Option<&Path>, svg_out: Option<&Path>) -> Result<(), CliError> {
    let m = surface_of(src)?;
    if let Some(p) = svg_out {
        write(p, &svg::surface_svg(&m))?;
    }
    emit(&surface_to_json(&m), out).map_err(|source| CliError::File { path: "<output>".into(), source })
}

#[derive(Serialize)]
struct ConeReport {
    class: usize,
    multiplicity: u32,
    /// Total angle in units of π.
    angle: u32,
    source_vertex: Option<usize>,
    singular: bool,
}

pub fn analyze(input: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let text = read(input)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(IoError::from)?;
    let m = if value.get("faces").is_some() { surface_from_json(&text)? } else { unfold(&polygon_from_json(&text)?) };
    let genus = m.genus()?;
    let cones: Vec<ConeReport> = m
        .cone_points()
        .iter()
        .enumerate()
        .map(|(class, c)| ConeReport {
            class,
            multiplicity: c.multiplicity,
            angle: 2 * c.multiplicity,
            source_vertex: c.source_vertex_class,
            singular: c.is_singular,
        })
        .collect();
    let report = json!({
        "faces": m.faces().len(),
        "N": m.group().map(|g| g.n),
        "angles": m.base().map(|p| p.angles()),
        "g": genus.g,
        "chi": genus.chi,
        "area": m.area(),
        "cone_points": cones,
    });
    emit_json(&report, out)
}

#[derive(Serialize)]
struct CylinderReport {
    height: CyclotomicReal,
    circumference: CyclotomicReal,
    area: CyclotomicReal,
}

#[derive(Serialize)]
struct SplitReport {
    class: usize,
    vertex: Option<usize>,
    cylinder: usize,
    h1: CyclotomicReal,
    h: CyclotomicReal,
    ratio: CyclotomicReal,
    rational: bool,
}

pub fn cylinders(src: &PolygonSource, direction: &str, out: Option<&Path>, svg_out: Option<&Path>) -> Result<(), CliError> {
    let m = surface_of(src)?;
    let dir = angle(direction)?;
    let d = cylinder_decomposition(&m, &dir, &FlowOptions::default())?;
    let cylinders: Vec<CylinderReport> = d
        .cylinders
        .iter()
        .map(|c| CylinderReport { height: c.height.clone(), circumference: c.circumference.clone(), area: c.area.clone() })
        .collect();
    let splits: Vec<SplitReport> = (0..m.cone_points().len())
        .filter(|&k| !m.cone_points()[k].is_singular)
        .filter_map(|k| {
            let s = d.height_split(&m, &PointRef::Class(k)).ok()?;
            Some(SplitReport {
                class: k,
                vertex: m.cone_points()[k].source_vertex_class,
                cylinder: s.cylinder,
                h1: s.h1,
                h: s.h,
                ratio: s.ratio,
                rational: s.rational,
            })
        })
        .collect();
    if let Some(p) = svg_out {
        write(p, &svg::decomposition_svg(&m, &d))?;
    }
    let report = json!({
        "direction": dir,
        "cylinders": cylinders,
        "saddle_connections": d.saddle_connections.len(),
        "total_area": d.total_area(),
        "splits": splits,
    });
    emit_json(&report, out)
}

/// Classes named by a vertex letter, a vertex index, or `class:K`.
fn classes_at(m: &TranslationSurface, point: &str) -> Result<(Option<usize>, Vec<usize>), CliError> {
    let n_vertices = m.base().map_or(0, |p| p.len());
    let p = point.trim();
    if let Some(k) = p.strip_prefix("class:") {
        let k: usize = k.parse().map_err(|_| CliError::Usage(format!("bad class {k:?}")))?;
        if k >= m.cone_points().len() {
            return Err(CliError::Usage(format!("class {k} out of range")));
        }
        return Ok((m.cone_points()[k].source_vertex_class, vec![k]));
    }
    let v = match p.chars().collect::<Vec<_>>().as_slice() {
        [c] if c.is_ascii_lowercase() => (*c as u8 - b'a') as usize,
        _ => p.parse().map_err(|_| CliError::Usage(format!("bad point {point:?}")))?,
    };
    if v >= n_vertices {
        return Err(CliError::Usage(format!("vertex {point} out of range")));
    }
    Ok((Some(v), m.classes_over_vertex(v)))
}

pub fn nonperiodic_test(src: &PolygonSource, point: &str, direction: Option<&str>, out: Option<&Path>) -> Result<(), CliError> {
    let (p, entry) = polygon(src)?;
    let m = unfold(&p);
    let (vertex, classes) = classes_at(&m, point)?;
    let mut dirs = Vec::new();
    if let Some(d) = direction {
        dirs.push(angle(d)?);
    }
    if let Some(e) = &entry {
        dirs.extend(e.non_periodic_vertices().filter(|(v, _)| Some(*v) == vertex).filter_map(|(_, d)| d.cloned()));
    }
    for d in default_directions(&m) {
        if !dirs.contains(&d) {
            dirs.push(d);
        }
    }
    let results: Vec<serde_json::Value> = classes
        .iter()
        .map(|&k| {
            let v = classify_point(&m, k, &dirs);
            let mut r = serde_json::to_value(&v).expect("verdicts serialize");
            if let Certificate::IrrationalSplit { h1, h, .. } = &v.certificate {
                let ratio = h1.checked_div(h).expect("cylinder height is positive");
                r["ratio"] = serde_json::to_value(&ratio).unwrap();
                r["ratio_squared"] = serde_json::to_value(&ratio * &ratio).unwrap();
            }
            r
        })
        .collect();
    let status = results.first().map(|r| r["status"].clone()).unwrap_or(serde_json::Value::Null);
    let agree = results.iter().all(|r| r["status"] == status);
    let report = json!({
        "angles": p.angles(),
        "vertex": vertex,
        "status": if agree { status } else { json!("mixed") },
        "directions_tried": dirs,
        "classes": results,
    });
    emit_json(&report, out)
}

pub fn check_cover(input: &Path, lattice: bool, square_tiled: bool, out: Option<&Path>, svg_out: Option<&Path>) -> Result<(), CliError> {
    let t: Tiling = tiling_from_json(&read(input)?)?;
    let cover = build_cover(&t)?;
    let verdicts = classify_all(&cover.surface_p, &default_directions(&cover.surface_p));
    let verdict = appropriate_verdict(&cover, BaseFlags { lattice, square_tiled }, &verdicts);
    if let Some(p) = svg_out {
        write(p, &svg::tiling_svg(&t))?;
    }
    let report = json!({
        "outline": cover.outline,
        "analysis": cover.analysis,
        "periodicity": verdicts,
        "verdict": verdict,
    });
    emit_json(&report, out)
}

pub fn catalog(fam: Option<&str>, n: Option<u32>, out: Option<&Path>) -> Result<(), CliError> {
    match fam {
        None => {
            if n.is_some() {
                return Err(CliError::Usage("--n needs --family".into()));
            }
            let list: Vec<serde_json::Value> = Family::ALL
                .iter()
                .map(|f| {
                    let (min, odd) = f.range().map_or((None, false), |(m, o)| (Some(m), o));
                    json!({ "family": f, "id": f.id(), "description": f.description(), "min_n": min, "odd_only": odd })
                })
                .collect();
            emit_json(&list, out)
        }
        Some(f) => {
            let e = make_entry(family(f)?, n)?;
            let m = unfold(&e.polygon);
            let genus = m.genus()?;
            let report = json!({ "entry": e, "g": genus.g, "chi": genus.chi });
            emit_json(&report, out)
        }
    }
}

pub fn search(
    fam: &str,
    n: Option<u32>,
    max_copies: usize,
    class: &str,
    max_nodes: usize,
    out: Option<&Path>,
    svg_dir: Option<&Path>,
) -> Result<(), CliError> {
    let class: SearchClass = class.parse().map_err(CliError::Usage)?;
    if max_copies == 0 {
        return Err(CliError::Usage("--max-copies must be at least 1".into()));
    }
    let e = make_entry(family(fam)?, n)?;
    let opts = SearchOptions { max_copies, max_nodes, class, ..Default::default() };
    let report = search_appropriate(&e, &opts);
    if let Some(dir) = svg_dir {
        std::fs::create_dir_all(dir).map_err(|source| CliError::File { path: dir.display().to_string(), source })?;
        for (i, r) in report.rejected.iter().enumerate().filter(|(_, r)| r.complete) {
            // second-class records live on an intermediate base; draw only those on P
            if let Ok(t) = Tiling::new(&e.polygon, r.motions.clone()) {
                write(&dir.join(format!("rejected-{i:03}-{}.svg", r.tag)), &svg::tiling_svg(&t))?;
            }
        }
    }
    emit_json(&report, out)
}
