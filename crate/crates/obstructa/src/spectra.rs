//! The four spectrum functors at finite scale and the no-go pipeline.
//!
//! Finite-dimensional commutative algebra models are carried entirely by
//! their labeled character sets: the Gelfand spectrum of ℂᵏ is the discrete
//! frame on k points (closed ideals = subsets), the Zariski spectrum
//! collapses to the same discrete frame because every prime ideal is
//! maximal and characters classify maximal ideals, and the Pierce spectrum
//! is the Stone spectrum of the idempotent algebra {0,1}ᵏ. The pipeline
//! assembles the subalgebra diagram of a ray configuration, applies a
//! spectrum functor, takes the locale limit, and certifies the collapse
//! equalities.

use crate::boolean::{boolean_colimit, enumerate_models, FinBoolAlg};
use crate::cat::{Diagram, Morphism};
use crate::complexes::{
    color_search_with, paste, subalgebra_diagram_with, to_cnf_with, validate_complex, ColorMode,
    ComplexError, FrameComplex, SolverOptions,
};
use crate::locale::{
    all_locale_maps, frame_as_quantale, is_initial_locale, loc_limit, points, validate_quantale,
    FinFrame, LocaleMap,
};
use crate::pba::{total_subalgebra_diagram, two_valued_morphisms, SubalgebraMode};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("invalid algebra hom: {0}")]
    BadHom(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("pipeline cross-check failed: {0}")]
    CrossCheck(String),
    #[error("internal: {0}")]
    Internal(String),
}

/// A finite-dimensional commutative algebra model ℂᵏ, carried by its k
/// labeled characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommAlgObject {
    pub character_labels: Vec<String>,
}

impl CommAlgObject {
    pub fn new(character_labels: Vec<String>) -> Self {
        CommAlgObject { character_labels }
    }

    pub fn k(&self) -> usize {
        self.character_labels.len()
    }
}

/// An algebra homomorphism ℂᵏ → ℂᵐ, stored dually: `dual[t]` is the source
/// character that target character t restricts to.
#[derive(Debug, Clone)]
pub struct AlgHom {
    pub source: CommAlgObject,
    pub target: CommAlgObject,
    pub dual: Vec<usize>,
}

impl AlgHom {
    pub fn new(
        source: CommAlgObject,
        target: CommAlgObject,
        dual: Vec<usize>,
    ) -> Result<Self, SpectraError> {
        if dual.len() != target.k() || dual.iter().any(|&x| x >= source.k()) {
            return Err(SpectraError::BadHom(
                "dual must send each target character to a source character".into(),
            ));
        }
        Ok(AlgHom {
            source,
            target,
            dual,
        })
    }
}

impl Morphism for AlgHom {
    type Object = CommAlgObject;

    fn identity_on(ob: &CommAlgObject) -> Self {
        AlgHom {
            source: ob.clone(),
            target: ob.clone(),
            dual: (0..ob.k()).collect(),
        }
    }

    fn source_object(&self) -> CommAlgObject {
        self.source.clone()
    }

    fn target_object(&self) -> CommAlgObject {
        self.target.clone()
    }

    fn then(&self, next: &Self) -> Result<Self, String> {
        if self.target != next.source {
            return Err("algebra homs not composable".into());
        }
        // duals compose contravariantly
        Ok(AlgHom {
            source: self.source.clone(),
            target: next.target.clone(),
            dual: next.dual.iter().map(|&t| self.dual[t]).collect(),
        })
    }

    fn same_morphism(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.dual == other.dual
    }
}

/// A commuting diagram of commutative algebra models.
pub type AlgebraDiagram = Diagram<AlgHom>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumFunctor {
    Gelfand,
    Zariski,
    Stone,
    Pierce,
}

impl SpectrumFunctor {
    pub const ALL: [SpectrumFunctor; 4] = [
        SpectrumFunctor::Gelfand,
        SpectrumFunctor::Zariski,
        SpectrumFunctor::Stone,
        SpectrumFunctor::Pierce,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SpectrumFunctor::Gelfand => "gelfand",
            SpectrumFunctor::Zariski => "zariski",
            SpectrumFunctor::Stone => "stone",
            SpectrumFunctor::Pierce => "pierce",
        }
    }
}

impl std::str::FromStr for SpectrumFunctor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "gelfand" => Ok(SpectrumFunctor::Gelfand),
            "zariski" => Ok(SpectrumFunctor::Zariski),
            "stone" => Ok(SpectrumFunctor::Stone),
            "pierce" => Ok(SpectrumFunctor::Pierce),
            other => Err(format!(
                "unknown functor `{other}` (expected gelfand|zariski|stone|pierce)"
            )),
        }
    }
}

/// Gelfand spectrum of ℂᵏ: the closed-ideal lattice, which at finite
/// dimension is the powerset of the k characters — the discrete frame.
pub fn gelfand(obj: &CommAlgObject) -> FinFrame {
    let b = FinBoolAlg::with_labels(obj.character_labels.clone()).expect("desk-scale algebra");
    crate::boolean::stone_spectrum(&b)
}

/// Gelfand on homs: contravariant, the locale map dual to the character
/// map.
pub fn gelfand_on(h: &AlgHom) -> LocaleMap {
    let src = gelfand(&h.target);
    let tgt = gelfand(&h.source);
    let src_masks = crate::locale::powerset_masks(h.target.k());
    let tgt_masks = crate::locale::powerset_masks(h.source.k());
    let src_index: BTreeMap<u64, usize> =
        src_masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let frame_hom = tgt_masks
        .iter()
        .map(|&smask| {
            let tmask: u64 = h
                .dual
                .iter()
                .enumerate()
                .filter(|&(_, &a)| smask >> a & 1 == 1)
                .fold(0, |m, (t, _)| m | 1 << t);
            src_index[&tmask]
        })
        .collect();
    LocaleMap::try_new(src, tgt, frame_hom).expect("dual of a character map is a frame hom")
}

/// Zariski spectrum: radical ideals of a finite-dimensional commutative
/// complex algebra. Every prime ideal is maximal and there are finitely
/// many, so the spectrum is the same discrete frame as the Gelfand one;
/// the functor keeps its own tag so pipelines can cite it separately.
pub fn zariski(obj: &CommAlgObject) -> FinFrame {
    gelfand(obj)
}

pub fn zariski_on(h: &AlgHom) -> LocaleMap {
    gelfand_on(h)
}

/// Pierce spectrum: the Stone spectrum of the Boolean algebra of
/// idempotents of ℂᵏ, which is {0,1}ᵏ with k atoms.
pub fn pierce(obj: &CommAlgObject) -> FinFrame {
    let idempotents = FinBoolAlg::with_labels(obj.character_labels.clone()).expect("desk scale");
    crate::boolean::stone_spectrum(&idempotents)
}

pub fn pierce_on(h: &AlgHom) -> LocaleMap {
    // idempotents transform by the same dual character map
    gelfand_on(h)
}

/// Componentwise comparison of the Pierce and Gelfand spectra over a
/// diagram: builds the comparison locale maps (identities at finite scale,
/// since every projection is an idempotent and vice versa on ℂᵏ) and checks
/// every naturality square exhaustively.
pub fn pierce_vs_gelfand_nat(d: &AlgebraDiagram) -> Result<(), SpectraError> {
    d.validate()
        .map_err(|e| SpectraError::Internal(format!("diagram invalid: {e}")))?;
    let comparisons: Vec<LocaleMap> = d
        .nodes
        .iter()
        .map(|obj| {
            let p = pierce(obj);
            let g = gelfand(obj);
            debug_assert_eq!(p.open_count(), g.open_count());
            LocaleMap::try_new(p, g, (0..gelfand(obj).open_count()).collect())
                .expect("identity comparison")
        })
        .collect();
    for (m, info) in d.shape.morphisms.iter().enumerate() {
        if d.shape.identity[info.src] == m {
            continue;
        }
        let h = &d.arrows[m];
        // naturality square: comparison ∘ pierce(h) = gelfand(h) ∘ comparison
        // on spectra the arrow runs target -> source
        let left = pierce_on(h)
            .then(&comparisons[info.src])
            .map_err(SpectraError::Internal)?;
        let right = comparisons[info.tgt]
            .then(&gelfand_on(h))
            .map_err(SpectraError::Internal)?;
        if !left.same_morphism(&right) {
            return Err(SpectraError::CrossCheck(format!(
                "pierce/gelfand naturality square fails at arrow {m}"
            )));
        }
    }
    Ok(())
}

/// Applies a spectrum functor to an algebra diagram, producing the locale
/// diagram over the opposite shape (spectra are contravariant), and
/// asserts functoriality by diagram validation.
pub fn spectra_diagram(
    d: &AlgebraDiagram,
    functor: SpectrumFunctor,
) -> Result<Diagram<LocaleMap>, SpectraError> {
    let on_obj: fn(&CommAlgObject) -> FinFrame = match functor {
        SpectrumFunctor::Gelfand => gelfand,
        SpectrumFunctor::Zariski => zariski,
        SpectrumFunctor::Pierce => pierce,
        SpectrumFunctor::Stone => {
            return Err(SpectraError::Internal(
                "stone spectra act on Boolean diagrams; use stone_spectra_diagram".into(),
            ))
        }
    };
    let on_hom: fn(&AlgHom) -> LocaleMap = match functor {
        SpectrumFunctor::Gelfand => gelfand_on,
        SpectrumFunctor::Zariski => zariski_on,
        SpectrumFunctor::Pierce => pierce_on,
        SpectrumFunctor::Stone => unreachable!(),
    };
    let frames: Vec<FinFrame> = d.nodes.iter().map(on_obj).collect();
    d.map_opposite(frames, |h| on_hom(h))
        .map_err(|e| SpectraError::Internal(format!("spectra diagram not functorial: {e}")))
}

/// Stone spectra of a Boolean diagram, over the opposite shape.
pub fn stone_spectra_diagram(
    d: &Diagram<crate::boolean::BoolHom>,
) -> Result<Diagram<LocaleMap>, SpectraError> {
    let frames: Vec<FinFrame> = d.nodes.iter().map(crate::boolean::stone_spectrum).collect();
    d.map_opposite(frames, |h| {
        crate::boolean::stone_on_hom(h).expect("stone of a hom is a locale map")
    })
    .map_err(|e| SpectraError::Internal(format!("stone diagram not functorial: {e}")))
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
}

/// The machine-readable pipeline report. Field order is part of the output
/// contract.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub colorings: u64,
    #[serde(rename = "booleanColimitSize")]
    pub boolean_colimit_size: u64,
    #[serde(rename = "limitOpens")]
    pub limit_opens: u64,
    #[serde(rename = "limitPoints")]
    pub limit_points: u64,
    pub initial: bool,
    pub functor: String,
    pub checks: Vec<CheckResult>,
}

/// Runs the Stone pipeline on a partial Boolean algebra: the diagram of
/// total subalgebras, Stone spectra, locale limit, initiality and counts.
pub struct StonePipelineOutcome {
    pub limit: FinFrame,
    pub limit_points: usize,
    pub initial: bool,
    pub node_count: usize,
}

pub fn stone_pipeline(
    p: &crate::pba::PartialBooleanAlgebra,
) -> Result<StonePipelineOutcome, SpectraError> {
    let (diagram, carriers) = total_subalgebra_diagram(p, SubalgebraMode::Maximal)
        .map_err(|e| SpectraError::Internal(format!("{e}")))?;
    let spectra = stone_spectra_diagram(&diagram)?;
    let (limit, projections) = loc_limit(&spectra)
        .map_err(|e| SpectraError::Internal(format!("locale limit failed: {e}")))?;
    for pr in &projections {
        pr.validate()
            .map_err(|e| SpectraError::Internal(format!("projection invalid: {e}")))?;
    }
    let limit_points = points(&limit).len();
    Ok(StonePipelineOutcome {
        initial: is_initial_locale(&limit),
        limit_points,
        node_count: carriers.len(),
        limit,
    })
}

/// Compatible families of points across a locale diagram, counted
/// directly; the canonical bijection with the points of the limit is a
/// pipeline cross-check. A point of each node, matched along every arrow
/// m: L_s → L_t by composition (point_t = m ∘ point_s).
pub fn compatible_point_families(d: &Diagram<LocaleMap>) -> Result<usize, SpectraError> {
    let node_points: Vec<Vec<LocaleMap>> = d.nodes.iter().map(points).collect();
    let k = d.nodes.len();
    if k == 0 {
        return Ok(1);
    }
    if node_points.iter().any(|ps| ps.is_empty()) {
        return Ok(0);
    }
    // integer point transport along each non-identity arrow
    struct ArrowPts {
        src: usize,
        tgt: usize,
        map: Vec<usize>,
    }
    let mut arrow_pts = Vec::new();
    for (m, info) in d.shape.morphisms.iter().enumerate() {
        if d.shape.identity[info.src] == m {
            continue;
        }
        let map = node_points[info.src]
            .iter()
            .map(|p| {
                let transported = p.then(&d.arrows[m]).expect("composable");
                // all candidates share endpoints; the frame hom decides
                node_points[info.tgt]
                    .iter()
                    .position(|q| transported.frame_hom == q.frame_hom)
                    .ok_or_else(|| {
                        SpectraError::Internal("transported point is not a point".into())
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        arrow_pts.push(ArrowPts {
            src: info.src,
            tgt: info.tgt,
            map,
        });
    }
    // process nodes so each newly placed node is checked against as many
    // placed neighbours as possible: greedy most-constrained-first
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (a, ap) in arrow_pts.iter().enumerate() {
        incident[ap.src].push(a);
        incident[ap.tgt].push(a);
    }
    let mut order: Vec<usize> = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    for _ in 0..k {
        let next = (0..k)
            .filter(|&j| !placed[j])
            .max_by_key(|&j| {
                let links = incident[j]
                    .iter()
                    .filter(|&&a| {
                        let other = if arrow_pts[a].src == j {
                            arrow_pts[a].tgt
                        } else {
                            arrow_pts[a].src
                        };
                        placed[other]
                    })
                    .count();
                (links, usize::MAX - j)
            })
            .expect("node remains");
        placed[next] = true;
        order.push(next);
    }
    let rank_of = {
        let mut r = vec![0usize; k];
        for (pos, &j) in order.iter().enumerate() {
            r[j] = pos;
        }
        r
    };
    let mut count = 0usize;
    let mut chosen = vec![usize::MAX; k];
    fn rec(
        order: &[usize],
        rank_of: &[usize],
        node_sizes: &[usize],
        incident: &[Vec<usize>],
        arrows: &[(usize, usize, &[usize])],
        pos: usize,
        chosen: &mut Vec<usize>,
        count: &mut usize,
    ) {
        if pos == order.len() {
            *count += 1;
            return;
        }
        let j = order[pos];
        'candidates: for i in 0..node_sizes[j] {
            for &a in &incident[j] {
                let (src, tgt, map) = arrows[a];
                let other = if src == j { tgt } else { src };
                if rank_of[other] < pos {
                    let ok = if src == j {
                        map[i] == chosen[tgt]
                    } else {
                        map[chosen[src]] == i
                    };
                    if !ok {
                        continue 'candidates;
                    }
                }
            }
            chosen[j] = i;
            rec(
                order, rank_of, node_sizes, incident, arrows, pos + 1, chosen, count,
            );
            chosen[j] = usize::MAX;
        }
    }
    let node_sizes: Vec<usize> = node_points.iter().map(|ps| ps.len()).collect();
    let arrows: Vec<(usize, usize, &[usize])> = arrow_pts
        .iter()
        .map(|a| (a.src, a.tgt, a.map.as_slice()))
        .collect();
    rec(
        &order, &rank_of, &node_sizes, &incident, &arrows, 0, &mut chosen, &mut count,
    );
    Ok(count)
}

/// The end-to-end no-go pipeline for one configuration and one functor
/// tag: coloring count, Boolean colimit of the total-subalgebra diagram of
/// the pasting, the limit of the spectra diagram with initiality flag and
/// point count, the cross-check equalities, and the obstruction-theorem
/// run on the materialized square.
pub fn nogo_pipeline(
    c: &FrameComplex,
    functor: SpectrumFunctor,
    options: &SolverOptions,
) -> Result<PipelineReport, SpectraError> {
    validate_complex(c)?;
    let mut checks = Vec::new();
    let mut check = |name: &str, pass: bool| {
        checks.push(CheckResult {
            name: name.into(),
            pass,
        });
        if pass {
            Ok(())
        } else {
            Err(SpectraError::CrossCheck(name.into()))
        }
    };

    let pasted = paste(c)?;

    // route 1: complete coloring search
    let colorings = color_search_with(c, &pasted, ColorMode::Count, options)?.count;

    // route 2: CNF models
    let (presentation, _) = to_cnf_with(c, &pasted)?;
    let cnf_models = enumerate_models(&presentation).len() as u64;
    check("cnf_models_equal_colorings", cnf_models == colorings)?;

    // route 3: morphisms of the pasted algebra into 2
    let pba_homs = two_valued_morphisms(&pasted.pba)
        .map_err(|e| SpectraError::Internal(format!("{e}")))?
        .len() as u64;
    check("pba_morphisms_equal_colorings", pba_homs == colorings)?;

    // Boolean colimit of the total subalgebra diagram of the pasting
    let (bool_diagram, _) = total_subalgebra_diagram(&pasted.pba, SubalgebraMode::Maximal)
        .map_err(|e| SpectraError::Internal(format!("{e}")))?;
    let (colimit, _) = boolean_colimit(&bool_diagram)
        .map_err(|e| SpectraError::Internal(format!("boolean colimit failed: {e}")))?;
    let boolean_colimit_size = colimit.size();
    check(
        "boolean_colimit_size_is_2_pow_colorings",
        colorings < 63 && boolean_colimit_size == 1u64 << colorings,
    )?;

    // route 4: the spectra diagram and its locale limit
    let locale_diagram = match functor {
        SpectrumFunctor::Stone => stone_spectra_diagram(&bool_diagram)?,
        _ => {
            let algebra_diagram = subalgebra_diagram_with(c, &pasted)?;
            pierce_vs_gelfand_nat(&algebra_diagram)?;
            spectra_diagram(&algebra_diagram, functor)?
        }
    };
    let (limit, projections) = loc_limit(&locale_diagram)
        .map_err(|e| SpectraError::Internal(format!("locale limit failed: {e}")))?;
    for pr in &projections {
        pr.validate()
            .map_err(|e| SpectraError::Internal(format!("projection invalid: {e}")))?;
    }
    let limit_points = points(&limit).len() as u64;
    let families = compatible_point_families(&locale_diagram)? as u64;
    check("limit_points_equal_point_families", limit_points == families)?;
    check("limit_points_equal_colorings", limit_points == colorings)?;
    let initial = is_initial_locale(&limit);
    check("initial_iff_uncolorable", initial == (colorings == 0))?;
    check(
        "limit_opens_equal_2_pow_colorings",
        limit.open_count() as u64 == 1u64 << colorings,
    )?;

    // the limit frame is a quantale under meet, per the coercion
    check(
        "limit_frame_is_a_quantale",
        validate_quantale(&frame_as_quantale(&limit)).is_ok(),
    )?;

    // strictness of the initial locale among the materialized frames:
    // maps into the one-open frame exist only from one-open frames
    let strict = locale_diagram.nodes.iter().all(|node| {
        all_locale_maps(node, &FinFrame::initial()).len()
            == usize::from(is_initial_locale(node))
    }) && all_locale_maps(&limit, &FinFrame::initial()).len() == usize::from(initial);
    check("initial_locale_is_strict", strict)?;

    // the obstruction square materialized on this run
    let obstruction =
        crate::pipeline_square::check_pipeline_square(&locale_diagram, &limit, &projections)
            .map_err(|e| SpectraError::Internal(format!("obstruction square: {e}")))?;
    check("limit_cone_is_universal", obstruction.limit_is_limiting)?;
    check("mediating_morphism_unique", obstruction.mediating_unique)?;
    check(
        "obstruction_theorem",
        obstruction.theorem_conclusion_holds && (obstruction.obstructed == (colorings == 0)),
    )?;

    Ok(PipelineReport {
        colorings,
        boolean_colimit_size,
        limit_opens: limit.open_count() as u64,
        limit_points,
        initial,
        functor: functor.name().to_string(),
        checks,
    })
}
