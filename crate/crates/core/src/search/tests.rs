use super::*;
use crate::catalog::make_entry;

fn run(f: Family, n: Option<u32>, k: usize) -> SearchReport {
    let e = make_entry(f, n).unwrap();
    search_appropriate(&e, &SearchOptions { max_copies: k, ..Default::default() })
}

#[test]
fn obtuse_twelfths_is_cut_at_the_root() {
    let r = run(Family::ObtuseTwelfths, None, 8);
    assert!(matches!(r.outcome, Outcome::NoneFound));
    assert_eq!(r.stats.nodes, 0);
}

#[test]
fn square_tiled_base_is_cut_at_the_root() {
    let r = run(Family::SquareTiled, Some(3), 8);
    assert!(matches!(r.outcome, Outcome::NoneFound));
    assert_eq!(r.stats.prunes.get(&Rule::SquareTiledBase), Some(&1));
}

pub(super) fn context_for(e: &CatalogEntry, mode: Mode) -> Context {
    let surface = unfold(&e.polygon);
    let dirs = directions_for(e, &[], &surface);
    let status = classify_all(&surface, &dirs).iter().map(|v| v.status).collect();
    Context::new(&e.polygon, surface, status, mode)
}

fn node_from_words(ctx: &Context, words: &[Vec<usize>]) -> Node {
    let t = Tiling::from_words(&ctx.base, words).unwrap();
    let mut node = Node::empty();
    for m in t.motions() {
        node.add(ctx, m.clone()).unwrap();
    }
    for (c, s) in node.undecided() {
        node.commit_external(c, s);
    }
    node
}

#[test]
fn rhombus_has_two_branch_points() {
    let e = make_entry(Family::RightTriangle, Some(5)).unwrap();
    let ctx = context_for(&e, Mode::Appropriate);
    eprintln!("status {:?} candidates {:?}", ctx.status, ctx.candidates());
    let node = node_from_words(&ctx, &[vec![], vec![2], vec![0], vec![0, 2]]);
    assert_eq!(node.violation(&ctx), Some(Rule::TwoBranchPoints));
}

#[test]
fn right_triangle_rejects_the_rhombus_for_two_branch_points() {
    let r = run(Family::RightTriangle, Some(5), 8);
    assert!(matches!(r.outcome, Outcome::NoneFound));
    let e = make_entry(Family::RightTriangle, Some(5)).unwrap();
    let ctx = context_for(&e, Mode::Appropriate);
    let rhombus = node_from_words(&ctx, &[vec![], vec![2], vec![0], vec![0, 2]]).canonical_key(&ctx);
    assert!(r.rejections_tagged("two_branch_points").any(|x| {
        let mut n = Node::empty();
        for m in &x.motions {
            n.add(&ctx, m.clone()).unwrap();
        }
        closed_key(&ctx, &n) == rhombus
    }));
}

#[test]
fn twelfths_ladder_is_cut_as_infinite_forcing() {
    let r = run(Family::Twelfths, None, 10);
    assert!(matches!(r.outcome, Outcome::NoneFound));
    assert!(r.stats.prunes.get(&Rule::InfiniteForcing).is_some_and(|&c| c > 0));
}

#[test]
fn quadrilaterals_die_at_the_root() {
    for (f, n) in [(Family::QuadFirst, 7), (Family::QuadFirst, 9), (Family::QuadSecond, 5), (Family::QuadSecond, 7)] {
        let r = run(f, Some(n), 10);
        assert!(matches!(r.outcome, Outcome::NoneFound));
        assert_eq!(r.stats.nodes, 0);
    }
}

#[test]
fn reports_are_deterministic() {
    let a = serde_json::to_string(&run(Family::Ninths, None, 8)).unwrap();
    let b = serde_json::to_string(&run(Family::Ninths, None, 8)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    let e = make_entry(Family::RightTriangle, Some(7)).unwrap();
    let r = search_appropriate(&e, &SearchOptions { max_copies: 8, max_nodes: 2, ..Default::default() });
    assert!(matches!(r.outcome, Outcome::Inconclusive { .. }));
}
