//! Whether a cover is an appropriate one: branched over a single
//! non-periodic point, so that M_Q cannot be a lattice surface.

use serde::Serialize;

use super::analysis::Cover;
use crate::periodicity::{PeriodicityVerdict, Status};
use crate::polygon::{DihedralElement, MinusIdReason};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BaseFlags {
    pub lattice: bool,
    pub square_tiled: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Appropriate {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Reason {
    BaseNotLattice,
    SquareTiledBase,
    Unbranched,
    SeveralBranchPoints { classes: Vec<usize> },
    BranchPointPeriodic { class: usize },
    BranchPointUndecided { class: usize },
    NotFixed { class: usize, element: DihedralElement },
    EvenAngleInOutline,
    EvenAnglePairInOutline,
    MinusIdInOutlineGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AppropriateVerdict {
    pub appropriate: Appropriate,
    pub reasons: Vec<Reason>,
}

/// Collects every reason against the cover; the answer is yes only when
/// there is none, unknown when the only gap is an undecided branch point.
pub fn appropriate_verdict(cover: &Cover, base: BaseFlags, verdicts: &[PeriodicityVerdict]) -> AppropriateVerdict {
    let a = &cover.analysis;
    let mut reasons = Vec::new();
    if !base.lattice {
        reasons.push(Reason::BaseNotLattice);
    }
    if base.square_tiled {
        reasons.push(Reason::SquareTiledBase);
    }
    match a.branch_locus.as_slice() {
        [] => reasons.push(Reason::Unbranched),
        [z] => {
            let z = *z;
            match verdicts.iter().find(|v| v.class == z).map(|v| v.status) {
                Some(Status::NonPeriodic) => {}
                Some(Status::Periodic) => reasons.push(Reason::BranchPointPeriodic { class: z }),
                _ => reasons.push(Reason::BranchPointUndecided { class: z }),
            }
            for h in a.g_q.iter().chain(&a.h) {
                if cover.surface_p.act_on_class(h, z) != Some(z) {
                    reasons.push(Reason::NotFixed { class: z, element: *h });
                    break;
                }
            }
        }
        many => reasons.push(Reason::SeveralBranchPoints { classes: many.to_vec() }),
    }
    let external = vec![true; cover.outline.len()];
    for t in cover.outline.minus_id_screen(Some(&external)).triggers {
        reasons.push(match t {
            MinusIdReason::EvenN => Reason::MinusIdInOutlineGroup,
            MinusIdReason::EvenAngle => Reason::EvenAngleInOutline,
            MinusIdReason::ExternalEvenAnglePair => Reason::EvenAnglePairInOutline,
            MinusIdReason::None => continue,
        });
    }
    let appropriate = match reasons.as_slice() {
        [] => Appropriate::Yes,
        [Reason::BranchPointUndecided { .. }] => Appropriate::Unknown,
        _ => Appropriate::No,
    };
    AppropriateVerdict { appropriate, reasons }
}
