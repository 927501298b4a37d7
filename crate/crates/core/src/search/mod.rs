//! Bounded search for reflection tilings whose cover is appropriate.
//!
//! Tilings are grown from a single copy of P one side at a time: each side
//! is either declared part of the outline or glued to a mirror copy. Nodes
//! that cannot lead to an appropriate cover are cut by the rules in
//! [`Rule`]; every cut is counted.

mod state;

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

pub use state::Rule;
use state::{Context, Mode, Node, SideState};

use crate::catalog::{CatalogEntry, Family};
use crate::covers::{appropriate_verdict, build_cover, AppropriateVerdict, Appropriate, BaseFlags, Motion, Reason, Tiling};
use crate::periodicity::{classify_all, default_directions, Status};
use crate::polygon::{Polygon, RationalAngle};
use crate::unfolding::unfold;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchClass {
    /// Q tiled directly by copies of P.
    First,
    /// Q tiled by copies of an intermediate polygon P̄, itself tiled by P
    /// with branching over periodic points only.
    Second,
}

impl std::str::FromStr for SearchClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "1" | "first" => Ok(SearchClass::First),
            "2" | "second" => Ok(SearchClass::Second),
            _ => Err(format!("unknown class {s}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub max_copies: usize,
    /// Node budget; the search reports inconclusive when it runs out.
    pub max_nodes: usize,
    pub class: SearchClass,
    /// Largest intermediate polygon, in copies of P, for the second class.
    pub intermediate_copies: usize,
    /// Cap on stored rejection records.
    pub max_records: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_copies: 8,
            max_nodes: 200_000,
            class: SearchClass::First,
            intermediate_copies: 4,
            max_records: 200,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    NoneFound,
    Candidate { motions: Vec<Motion>, verdict: AppropriateVerdict },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchStats {
    pub nodes: usize,
    pub duplicates: usize,
    pub completed: usize,
    pub prunes: BTreeMap<Rule, usize>,
}

/// A tiling the search reached and threw away.
#[derive(Clone, Debug, Serialize)]
pub struct Rejection {
    pub copies: usize,
    pub motions: Vec<Motion>,
    pub tag: String,
    /// Whether the search had decided every side when it rejected the tiling.
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub family: Family,
    pub n: Option<u32>,
    pub max_copies: usize,
    pub class: SearchClass,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub stats: SearchStats,
    pub rejected: Vec<Rejection>,
}

impl SearchReport {
    pub fn rejections_tagged<'a>(&'a self, tag: &'a str) -> impl Iterator<Item = &'a Rejection> {
        self.rejected.iter().filter(move |r| r.tag == tag)
    }
}

fn rule_tag(r: Rule) -> String {
    serde_json::to_value(r).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
}

fn verdict_tag(v: &AppropriateVerdict) -> String {
    let r = v.reasons.iter().min_by_key(|r| reason_rank(r));
    match r {
        None => "appropriate".into(),
        Some(r) => match r {
            Reason::SeveralBranchPoints { .. } => rule_tag(Rule::TwoBranchPoints),
            Reason::BranchPointPeriodic { .. } => rule_tag(Rule::BranchOverPeriodic),
            Reason::NotFixed { .. } => rule_tag(Rule::BranchPointNotFixed),
            Reason::EvenAngleInOutline => rule_tag(Rule::EvenAngle),
            Reason::EvenAnglePairInOutline => rule_tag(Rule::EvenAnglePair),
            Reason::SquareTiledBase => rule_tag(Rule::SquareTiledBase),
            Reason::Unbranched => "unbranched".into(),
            Reason::BranchPointUndecided { .. } => "undecided".into(),
            Reason::MinusIdInOutlineGroup => "minus_id".into(),
            Reason::BaseNotLattice => "base_not_lattice".into(),
        },
    }
}

fn reason_rank(r: &Reason) -> u8 {
    match r {
        Reason::BaseNotLattice => 0,
        Reason::SquareTiledBase => 1,
        Reason::Unbranched => 2,
        Reason::SeveralBranchPoints { .. } => 3,
        Reason::BranchPointPeriodic { .. } => 4,
        Reason::EvenAngleInOutline => 5,
        Reason::EvenAnglePairInOutline => 6,
        Reason::MinusIdInOutlineGroup => 7,
        Reason::NotFixed { .. } => 8,
        Reason::BranchPointUndecided { .. } => 9,
    }
}

/// Smallest corner configuration whose repetition counts as a forced ladder.
const REPEAT_FAN: usize = 3;

/// A complete tiling found by the search, with how it was judged.
enum Found {
    Candidate(Vec<Motion>, AppropriateVerdict),
    Undecided,
}

struct Search<'a> {
    ctx: &'a Context,
    opts: &'a SearchOptions,
    flags: BaseFlags,
    verdicts: Vec<crate::periodicity::PeriodicityVerdict>,
    stats: SearchStats,
    visited: HashSet<Vec<(usize, crate::geometry::Vec2, Vec<u8>)>>,
    recorded: HashSet<Vec<(usize, crate::geometry::Vec2, Vec<u8>)>>,
    rejected: Vec<Rejection>,
    exhausted: bool,
    undecided: bool,
    found: Option<Found>,
    /// Complete tilings collected in intermediate mode.
    tilings: Vec<Tiling>,
}

impl<'a> Search<'a> {
    fn new(ctx: &'a Context, opts: &'a SearchOptions, flags: BaseFlags, verdicts: Vec<crate::periodicity::PeriodicityVerdict>) -> Self {
        Search {
            ctx,
            opts,
            flags,
            verdicts,
            stats: SearchStats::default(),
            visited: HashSet::new(),
            recorded: HashSet::new(),
            rejected: Vec::new(),
            exhausted: false,
            undecided: false,
            found: None,
            tilings: Vec::new(),
        }
    }

    fn cut(&mut self, r: Rule) {
        *self.stats.prunes.entry(r).or_default() += 1;
    }

    fn done(&self) -> bool {
        self.exhausted || matches!(self.found, Some(Found::Candidate(..)))
    }

    /// Stores a rejected node when its copies already form a tiling.
    fn record(&mut self, node: &Node, tag: String, complete: bool) {
        if self.rejected.len() >= self.opts.max_records {
            return;
        }
        if Tiling::new(&self.ctx.base, node.motions.clone()).is_err() {
            return;
        }
        let key = closed_key(self.ctx, node);
        if self.recorded.insert(key) {
            self.rejected.push(Rejection { copies: node.len(), motions: node.motions.clone(), tag, complete });
        }
    }

    /// Applies one decision to a copy of the node.
    fn decide(&self, node: &Node, side: (usize, usize), internal: bool) -> Result<Node, Rule> {
        let mut next = node.clone();
        if internal {
            if next.len() >= self.opts.max_copies {
                return Err(if next.has_repeated_fan(self.ctx, REPEAT_FAN) { Rule::InfiniteForcing } else { Rule::Bound });
            }
            next.reflect(self.ctx, side.0, side.1)?;
        } else {
            next.commit_external(side.0, side.1);
        }
        match next.violation(self.ctx) {
            Some(r) => Err(r),
            None => Ok(next),
        }
    }

    /// Makes every decision that has only one surviving option. When both
    /// options of some side fail, returns the side and the two failures.
    fn propagate(&mut self, mut node: Node) -> Result<Node, (Node, (usize, usize), Rule, Rule)> {
        loop {
            let mut changed = false;
            for side in node.undecided() {
                if node.sides[side.0][side.1] != SideState::Undecided {
                    continue;
                }
                let ext = self.decide(&node, side, false);
                let int = self.decide(&node, side, true);
                match (ext, int) {
                    (Ok(_), Ok(_)) => {}
                    (Ok(n), Err(_)) | (Err(_), Ok(n)) => {
                        node = n;
                        changed = true;
                    }
                    (Err(a), Err(b)) => return Err((node, side, a, b)),
                }
            }
            if !changed {
                return Ok(node);
            }
        }
    }

    fn reject(&mut self, node: &Node, side: (usize, usize), internal: bool, r: Rule) {
        self.cut(r);
        if matches!(r, Rule::Geometry | Rule::Bound) || internal {
            return;
        }
        let mut shown = node.clone();
        shown.commit_external(side.0, side.1);
        let complete = shown.first_undecided().is_none();
        self.record(&shown, rule_tag(r), complete);
    }

    fn explore(&mut self, node: Node) {
        if self.done() {
            return;
        }
        if self.stats.nodes >= self.opts.max_nodes {
            self.exhausted = true;
            return;
        }
        self.stats.nodes += 1;
        let node = match self.propagate(node) {
            Ok(n) => n,
            Err((n, side, a, b)) => {
                self.reject(&n, side, false, a);
                self.reject(&n, side, true, b);
                return;
            }
        };
        if !self.visited.insert(node.canonical_key(self.ctx)) {
            self.stats.duplicates += 1;
            return;
        }
        let Some(side) = node.first_undecided() else {
            self.complete(&node);
            return;
        };
        for internal in [true, false] {
            match self.decide(&node, side, internal) {
                Ok(next) => self.explore(next),
                Err(r) => self.reject(&node, side, internal, r),
            }
            if self.done() {
                return;
            }
        }
    }

    fn complete(&mut self, node: &Node) {
        self.stats.completed += 1;
        let Ok(t) = Tiling::new(&self.ctx.base, node.motions.clone()) else {
            self.cut(Rule::Geometry);
            return;
        };
        if self.ctx.mode == Mode::Enumerate {
            self.tilings.push(t);
            return;
        }
        let Ok(cover) = build_cover(&t) else {
            self.cut(Rule::Geometry);
            return;
        };
        match self.ctx.mode {
            Mode::Appropriate => {
                let v = appropriate_verdict(&cover, self.flags, &self.verdicts);
                match v.appropriate {
                    Appropriate::Yes => self.found = Some(Found::Candidate(node.motions.clone(), v)),
                    Appropriate::Unknown => {
                        self.undecided = true;
                        if self.found.is_none() {
                            self.found = Some(Found::Undecided);
                        }
                        self.record(node, "undecided".into(), true);
                    }
                    Appropriate::No => {
                        let tag = verdict_tag(&v);
                        self.record(node, tag, true);
                    }
                }
            }
            Mode::Enumerate => unreachable!(),
            Mode::Intermediate => {
                let a = &cover.analysis;
                let periodic = a.branch_locus.iter().all(|&z| self.ctx.status[z] == Status::Periodic);
                if periodic && t.len() > 1 {
                    self.tilings.push(t);
                }
            }
        }
    }
}

/// Key of a node with every open side closed, for deduplicating records.
fn closed_key(ctx: &Context, node: &Node) -> Vec<(usize, crate::geometry::Vec2, Vec<u8>)> {
    let mut n = node.clone();
    for (c, s) in n.undecided() {
        n.commit_external(c, s);
    }
    n.canonical_key(ctx)
}

fn directions_for(entry: &CatalogEntry, extra: &[RationalAngle], surface: &crate::unfolding::TranslationSurface) -> Vec<RationalAngle> {
    let mut dirs: Vec<RationalAngle> = entry.non_periodic_vertices().filter_map(|(_, d)| d.cloned()).collect();
    dirs.extend(extra.iter().cloned());
    for d in default_directions(surface) {
        if !dirs.contains(&d) {
            dirs.push(d);
        }
    }
    dirs
}

struct Outcomes {
    outcome: Outcome,
    stats: SearchStats,
    rejected: Vec<Rejection>,
}

fn merge(into: &mut SearchStats, from: SearchStats) {
    into.nodes += from.nodes;
    into.duplicates += from.duplicates;
    into.completed += from.completed;
    for (k, v) in from.prunes {
        *into.prunes.entry(k).or_default() += v;
    }
}

fn first_class(base: &Polygon, flags: BaseFlags, dirs: &[RationalAngle], opts: &SearchOptions) -> Outcomes {
    let surface = unfold(base);
    let verdicts = classify_all(&surface, dirs);
    let status = verdicts.iter().map(|v| v.status).collect();
    let ctx = Context::new(base, surface, status, Mode::Appropriate);
    let mut stats = SearchStats::default();
    let root_rule = if flags.square_tiled { Some(Rule::SquareTiledBase) } else { ctx.root_rule() };
    if let Some(r) = root_rule {
        stats.prunes.insert(r, 1);
        return Outcomes { outcome: Outcome::NoneFound, stats, rejected: Vec::new() };
    }
    let mut s = Search::new(&ctx, opts, flags, verdicts);
    let mut root = Node::empty();
    root.add(&ctx, Motion::identity(ctx.group.n)).expect("first copy");
    s.explore(root);
    let outcome = match s.found.take() {
        Some(Found::Candidate(motions, verdict)) => Outcome::Candidate { motions, verdict },
        _ if s.exhausted => Outcome::Inconclusive { reason: format!("node budget of {} exhausted", opts.max_nodes) },
        Some(Found::Undecided) => {
            Outcome::Inconclusive { reason: "a tiling branches over a point of unknown periodicity".into() }
        }
        None => Outcome::NoneFound,
    };
    Outcomes { outcome, stats: s.stats, rejected: s.rejected }
}

fn intermediate_tilings(base: &Polygon, dirs: &[RationalAngle], opts: &SearchOptions, stats: &mut SearchStats) -> (Vec<Tiling>, bool) {
    let surface = unfold(base);
    let status = classify_all(&surface, dirs).iter().map(|v| v.status).collect();
    let ctx = Context::new(base, surface, status, Mode::Intermediate);
    let sub = SearchOptions { max_copies: opts.intermediate_copies, ..opts.clone() };
    let mut s = Search::new(&ctx, &sub, BaseFlags::default(), Vec::new());
    let mut root = Node::empty();
    root.add(&ctx, Motion::identity(ctx.group.n)).expect("first copy");
    s.explore(root);
    let exhausted = s.exhausted;
    let tilings = std::mem::take(&mut s.tilings);
    merge(stats, std::mem::take(&mut s.stats));
    (tilings, exhausted)
}

/// Every tiling by reflection with at most `max_copies` copies of `base`,
/// one per congruence class, with no pruning beyond geometry.
pub fn enumerate_tilings(base: &Polygon, max_copies: usize) -> Vec<Tiling> {
    let surface = unfold(base);
    let n = surface.cone_points().len();
    let ctx = Context::new(base, surface, vec![Status::Unknown; n], Mode::Enumerate);
    let opts = SearchOptions { max_copies, max_nodes: usize::MAX, ..Default::default() };
    let mut s = Search::new(&ctx, &opts, BaseFlags::default(), Vec::new());
    let mut root = Node::empty();
    root.add(&ctx, Motion::identity(ctx.group.n)).expect("first copy");
    s.explore(root);
    s.tilings
}

/// Searches for a tiling of some Q by copies of the entry's polygon whose
/// cover of M_P is appropriate.
pub fn search_appropriate(entry: &CatalogEntry, opts: &SearchOptions) -> SearchReport {
    let base = &entry.polygon;
    let flags = BaseFlags { lattice: entry.lattice, square_tiled: entry.is_square_tiled() };
    let dirs = directions_for(entry, &[], &unfold(base));
    let mut report = SearchReport {
        family: entry.family,
        n: entry.n,
        max_copies: opts.max_copies,
        class: opts.class,
        outcome: Outcome::NoneFound,
        stats: SearchStats::default(),
        rejected: Vec::new(),
    };
    match opts.class {
        SearchClass::First => {
            let o = first_class(base, flags, &dirs, opts);
            report.outcome = o.outcome;
            report.stats = o.stats;
            report.rejected = o.rejected;
        }
        SearchClass::Second => {
            if flags.square_tiled {
                report.stats.prunes.insert(Rule::SquareTiledBase, 1);
                return report;
            }
            let (inner, exhausted) = intermediate_tilings(base, &dirs, opts, &mut report.stats);
            let mut inconclusive = exhausted.then(|| "node budget exhausted while listing intermediate polygons".to_string());
            let mut seen: HashSet<String> = HashSet::new();
            for t in inner {
                let pbar = t.outline().clone();
                if !seen.insert(format!("{:?}", pbar.angles())) {
                    continue;
                }
                let k = opts.max_copies / t.len();
                if k < 2 {
                    continue;
                }
                let sub = SearchOptions { max_copies: k, ..opts.clone() };
                let pdirs: Vec<RationalAngle> = default_directions(&unfold(&pbar));
                let o = first_class(&pbar, BaseFlags { lattice: true, square_tiled: false }, &pdirs, &sub);
                merge(&mut report.stats, o.stats);
                report.rejected.extend(o.rejected);
                match o.outcome {
                    Outcome::Candidate { motions, verdict } => {
                        let outer = Tiling::new(&pbar, motions.clone());
                        let composed = outer.and_then(|o| o.compose(&t));
                        let motions = composed.map(|c| c.motions().to_vec()).unwrap_or(motions);
                        report.outcome = Outcome::Candidate { motions, verdict };
                        return report;
                    }
                    Outcome::Inconclusive { reason } => inconclusive = Some(reason),
                    Outcome::NoneFound => {}
                }
            }
            if let Some(reason) = inconclusive {
                report.outcome = Outcome::Inconclusive { reason };
            }
        }
    }
    report
}

#[cfg(test)]
mod tests;
