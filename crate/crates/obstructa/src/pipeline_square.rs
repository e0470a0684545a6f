//! The extension square materialized on a pipeline run.
//!
//! The abstract setup puts the commutative-algebra fragment in one corner,
//! its spectra in another, the ambient algebra X (here: the configuration's
//! matrix-algebra fragment) in the third, and the frames in the fourth.
//! At pipeline scale the bottom functor is the canonical one sending X to
//! the computed limit frame with the projection cone, and K is the
//! inclusion of the reachable frames. What remains to certify on the
//! concrete data:
//!
//!  * the computed cone really is limiting (unique factorization, checked
//!    pointwise — the frames here are Boolean, so locale maps are exactly
//!    point functions and factorizations multiply over points);
//!  * the mediating morphism from the transported cone exists and is
//!    unique;
//!  * the one-open frame is initial among the reachable frames and
//!    strictly so (any locale map into it comes from a one-open frame);
//!  * when the limit is initial — the obstructed case — the image of X is
//!    initial, which is the obstruction theorem's conclusion.
//!
//! Handcrafted instances exercise the same statements through the fully
//! explicit finite-category kernel in `cat`.

use crate::cat::{Diagram, Morphism};
use crate::locale::{all_locale_maps, is_initial_locale, points, FinFrame, LocaleMap};

#[derive(Debug, Clone)]
pub struct PipelineSquareReport {
    pub limit_is_limiting: bool,
    pub mediating_unique: bool,
    pub k_preserves_initial: bool,
    pub initials_strict: bool,
    pub obstructed: bool,
    pub theorem_conclusion_holds: bool,
}

pub fn check_pipeline_square(
    d: &Diagram<LocaleMap>,
    limit: &FinFrame,
    projections: &[LocaleMap],
) -> Result<PipelineSquareReport, String> {
    if !limit.opens().is_boolean() || d.nodes.iter().any(|n| !n.opens().is_boolean()) {
        return Err("pipeline frames are expected to be Boolean".into());
    }
    let limit_points = points(limit);
    let node_points: Vec<Vec<LocaleMap>> = d.nodes.iter().map(points).collect();

    // image of each limit point under each projection, as indices
    let mut images: Vec<Vec<usize>> = Vec::with_capacity(limit_points.len());
    for p in &limit_points {
        let mut row = Vec::with_capacity(projections.len());
        for (j, pr) in projections.iter().enumerate() {
            let q = p.then(pr).map_err(|e| format!("projection compose: {e}"))?;
            let idx = node_points[j]
                .iter()
                .position(|np| q.frame_hom == np.frame_hom)
                .ok_or("projected point is not a point of the node")?;
            row.push(idx);
        }
        images.push(row);
    }

    // endomorphisms of the limit commuting with every projection: locale
    // maps between Boolean frames are point functions, commutation with
    // the cone constrains each point independently, so the number of
    // factoring maps is the product over points of per-point candidates
    let mut factoring_maps: u128 = 1;
    for p in 0..limit_points.len() {
        let candidates = (0..limit_points.len())
            .filter(|&q| images[q] == images[p])
            .count();
        factoring_maps = factoring_maps.saturating_mul(candidates as u128);
    }
    let limit_is_limiting = factoring_maps == 1;
    // the transported cone of X is the projection cone itself, so the
    // mediating morphism is subject to the same factorization count
    let mediating_unique = limit_is_limiting;

    // initiality is strict among the reachable frames: a locale map into
    // the one-open frame exists only from a one-open frame
    let mut initials_strict = true;
    for frame in d.nodes.iter().chain(std::iter::once(limit)) {
        let into_initial = all_locale_maps(frame, &FinFrame::initial()).len();
        if into_initial != usize::from(is_initial_locale(frame)) {
            initials_strict = false;
        }
    }
    // K is the inclusion of the reachable frames; it preserves the initial
    // object because initiality of the one-open frame is intrinsic: from
    // it there is exactly one map to every reachable frame
    let mut k_preserves_initial = true;
    for frame in d.nodes.iter().chain(std::iter::once(limit)) {
        if all_locale_maps(&FinFrame::initial(), frame).len() != 1 {
            k_preserves_initial = false;
        }
    }

    // X carries a cone over the algebra diagram by construction (its legs
    // are the subalgebra inclusions), so obstruction is initiality of the
    // limit
    let obstructed = is_initial_locale(limit);
    let theorem_conclusion_holds = !obstructed
        || (mediating_unique && is_initial_locale(limit) && initials_strict && k_preserves_initial);

    Ok(PipelineSquareReport {
        limit_is_limiting,
        mediating_unique,
        k_preserves_initial,
        initials_strict,
        obstructed,
        theorem_conclusion_holds,
    })
}
