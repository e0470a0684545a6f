//! A finite-category kernel: explicit categories, functors, diagrams,
//! limits by exhaustive search, mediating morphisms, and the obstruction
//! pattern (a cone whose transported limit is initial forces collapse).
//!
//! Everything here is checked by brute force over the finite data. Diagram
//! shapes double as the shape type for the lattice, locale, Boolean and
//! algebra diagrams in the other modules.

use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("conclusion failed (modeling bug): {0}")]
    Conclusion(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorInfo {
    pub label: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category with explicit object and morphism lists. Composition
/// is stored sparsely, keyed by composable pairs `(f, g)` meaning
/// "f then g"; the validator checks totality on composable pairs, identity
/// laws, and associativity exhaustively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorInfo>,
    pub identity: Vec<usize>,
    compose: BTreeMap<(usize, usize), usize>,
}

impl FinCategory {
    pub fn try_new(
        objects: Vec<String>,
        morphisms: Vec<MorInfo>,
        identity: Vec<usize>,
        compose: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self, CatError> {
        let cat = FinCategory {
            objects,
            morphisms,
            identity,
            compose,
        };
        cat.validate()?;
        Ok(cat)
    }

    fn validate(&self) -> Result<(), CatError> {
        let bad = |m: String| Err(CatError::InvalidCategory(m));
        if self.identity.len() != self.objects.len() {
            return bad("one identity per object required".into());
        }
        for m in &self.morphisms {
            if m.src >= self.objects.len() || m.tgt >= self.objects.len() {
                return bad(format!("morphism {} has out-of-range endpoints", m.label));
            }
        }
        for (ob, &id) in self.identity.iter().enumerate() {
            if id >= self.morphisms.len()
                || self.morphisms[id].src != ob
                || self.morphisms[id].tgt != ob
            {
                return bad(format!("identity of object {ob} is not an endomorphism"));
            }
        }
        // adjacency: morphisms grouped by source object, so only composable
        // pairs and triples are ever visited
        let by_src = self.morphisms_by_source();
        for (f, m) in self.morphisms.iter().enumerate() {
            for &g in &by_src[m.tgt] {
                match self.compose.get(&(f, g)) {
                    None => return bad(format!("composite of {f} then {g} missing")),
                    Some(&h) => {
                        if h >= self.morphisms.len()
                            || self.morphisms[h].src != m.src
                            || self.morphisms[h].tgt != self.morphisms[g].tgt
                        {
                            return bad(format!("composite of {f} then {g} has wrong endpoints"));
                        }
                    }
                }
            }
        }
        let composable_pairs: usize = self
            .morphisms
            .iter()
            .map(|m| by_src[m.tgt].len())
            .sum();
        if self.compose.len() != composable_pairs {
            return bad("composition table keys must be exactly the composable pairs".into());
        }
        for (&(f, g), _) in &self.compose {
            if f >= self.morphisms.len()
                || g >= self.morphisms.len()
                || self.morphisms[f].tgt != self.morphisms[g].src
            {
                return bad(format!("composite of non-composable {f}, {g} present"));
            }
        }
        for (f, m) in self.morphisms.iter().enumerate() {
            if self.compose[&(self.identity[m.src], f)] != f
                || self.compose[&(f, self.identity[m.tgt])] != f
            {
                return bad(format!("identity law fails at morphism {f}"));
            }
        }
        for (f, mf) in self.morphisms.iter().enumerate() {
            for &g in &by_src[mf.tgt] {
                let fg = self.compose[&(f, g)];
                for &h in &by_src[self.morphisms[g].tgt] {
                    let left = self.compose[&(fg, h)];
                    let right = self.compose[&(f, self.compose[&(g, h)])];
                    if left != right {
                        return bad(format!("associativity fails at ({f},{g},{h})"));
                    }
                }
            }
        }
        Ok(())
    }

    fn morphisms_by_source(&self) -> Vec<Vec<usize>> {
        let mut by_src = vec![Vec::new(); self.objects.len()];
        for (m, info) in self.morphisms.iter().enumerate() {
            by_src[info.src].push(m);
        }
        by_src
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    /// The composite "f then g", if composable.
    pub fn then(&self, f: usize, g: usize) -> Option<usize> {
        self.compose.get(&(f, g)).copied()
    }

    pub fn homs(&self, src: usize, tgt: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].src == src && self.morphisms[m].tgt == tgt)
            .collect()
    }

    /// Discrete category: objects and identities only.
    pub fn discrete(n: usize) -> Self {
        let objects = (0..n).map(|i| format!("o{i}")).collect();
        let morphisms = (0..n)
            .map(|i| MorInfo {
                label: format!("id{i}"),
                src: i,
                tgt: i,
            })
            .collect();
        let identity: Vec<usize> = (0..n).collect();
        let mut compose = BTreeMap::new();
        for i in 0..n {
            compose.insert((i, i), i);
        }
        FinCategory::try_new(objects, morphisms, identity, compose).expect("discrete")
    }

    pub fn empty() -> Self {
        FinCategory::discrete(0)
    }

    /// A poset as a category: one morphism i→j per related pair i ≤ j.
    /// `leq` must be reflexive, antisymmetric and transitive.
    pub fn from_poset(labels: &[String], leq: &[Vec<bool>]) -> Result<Self, CatError> {
        let n = labels.len();
        // bitset rows keep the axiom check quadratic-ish
        let blocks = n.div_ceil(64);
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut row = vec![0u64; blocks];
                for j in 0..n {
                    if leq[i][j] {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
                row
            })
            .collect();
        for i in 0..n {
            if !leq[i][i] {
                return Err(CatError::InvalidCategory("poset not reflexive".into()));
            }
            for j in 0..n {
                if leq[i][j] {
                    if leq[j][i] && i != j {
                        return Err(CatError::InvalidCategory("poset not antisymmetric".into()));
                    }
                    // transitivity: everything above j is above i
                    for b in 0..blocks {
                        if rows[j][b] & !rows[i][b] != 0 {
                            return Err(CatError::InvalidCategory("poset not transitive".into()));
                        }
                    }
                }
            }
        }
        let mut morphisms = Vec::new();
        let mut index = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if leq[i][j] {
                    index.insert((i, j), morphisms.len());
                    morphisms.push(MorInfo {
                        label: format!("{}≤{}", labels[i], labels[j]),
                        src: i,
                        tgt: j,
                    });
                }
            }
        }
        let identity = (0..n).map(|i| index[&(i, i)]).collect();
        let mut out_of: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (&(i, j), &f) in &index {
            out_of[i].push((j, f));
        }
        let mut compose = BTreeMap::new();
        for (&(i, j), &f) in &index {
            for &(k, g) in &out_of[j] {
                compose.insert((f, g), index[&(i, k)]);
            }
        }
        FinCategory::try_new(labels.to_vec(), morphisms, identity, compose)
    }

    /// The opposite category: same objects, morphisms reversed.
    pub fn opposite(&self) -> FinCategory {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| MorInfo {
                label: format!("{}^op", m.label),
                src: m.tgt,
                tgt: m.src,
            })
            .collect();
        let compose = self
            .compose
            .iter()
            .map(|(&(f, g), &h)| ((g, f), h))
            .collect();
        FinCategory {
            objects: self.objects.clone(),
            morphisms,
            identity: self.identity.clone(),
            compose,
        }
    }
}

/// A functor between explicit finite categories, validated to preserve
/// endpoints, identities and composition.
#[derive(Debug, Clone)]
pub struct FunctorData {
    pub source: FinCategory,
    pub target: FinCategory,
    pub ob_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl FunctorData {
    pub fn try_new(
        source: FinCategory,
        target: FinCategory,
        ob_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Result<Self, CatError> {
        let f = FunctorData {
            source,
            target,
            ob_map,
            mor_map,
        };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<(), CatError> {
        let bad = |m: String| Err(CatError::InvalidFunctor(m));
        if self.ob_map.len() != self.source.object_count()
            || self.mor_map.len() != self.source.morphism_count()
        {
            return bad("map sizes do not match source category".into());
        }
        for (m, &fm) in self.mor_map.iter().enumerate() {
            let info = &self.source.morphisms[m];
            let fi = &self.target.morphisms[fm];
            if fi.src != self.ob_map[info.src] || fi.tgt != self.ob_map[info.tgt] {
                return bad(format!("morphism {m} breaks source/target"));
            }
        }
        for (ob, &id) in self.source.identity.iter().enumerate() {
            if self.mor_map[id] != self.target.identity[self.ob_map[ob]] {
                return bad(format!("identity of object {ob} not preserved"));
            }
        }
        let by_src = self.source.morphisms_by_source();
        for (f, mf) in self.source.morphisms.iter().enumerate() {
            for &g in &by_src[mf.tgt] {
                let h = self.source.then(f, g).expect("composable");
                let image = self
                    .target
                    .then(self.mor_map[f], self.mor_map[g])
                    .expect("image composable");
                if image != self.mor_map[h] {
                    return bad(format!("composition not preserved at ({f},{g})"));
                }
            }
        }
        Ok(())
    }

    pub fn identity_functor(c: &FinCategory) -> FunctorData {
        FunctorData {
            source: c.clone(),
            target: c.clone(),
            ob_map: (0..c.object_count()).collect(),
            mor_map: (0..c.morphism_count()).collect(),
        }
    }

    pub fn constant(source: &FinCategory, target: &FinCategory, ob: usize) -> FunctorData {
        FunctorData {
            source: source.clone(),
            target: target.clone(),
            ob_map: vec![ob; source.object_count()],
            mor_map: vec![target.identity[ob]; source.morphism_count()],
        }
    }
}

/// A diagram in a finite category: a functor from a shape category,
/// stored as its object/morphism assignment into the ambient category.
pub type DiagramData = FunctorData;

/// A cone over a diagram: an apex with one leg per shape object, commuting
/// with every diagram arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeData {
    pub apex: usize,
    pub legs: Vec<usize>,
}

impl ConeData {
    pub fn validate(&self, diagram: &DiagramData) -> Result<(), CatError> {
        let cat = &diagram.target;
        if self.legs.len() != diagram.source.object_count() {
            return Err(CatError::InvalidCone("one leg per shape object".into()));
        }
        for (j, &leg) in self.legs.iter().enumerate() {
            let info = &cat.morphisms[leg];
            if info.src != self.apex || info.tgt != diagram.ob_map[j] {
                return Err(CatError::InvalidCone(format!("leg {j} has wrong endpoints")));
            }
        }
        for (a, arrow) in diagram.source.morphisms.iter().enumerate() {
            let transported = cat
                .then(self.legs[arrow.src], diagram.mor_map[a])
                .expect("composable leg");
            if transported != self.legs[arrow.tgt] {
                return Err(CatError::InvalidCone(format!(
                    "leg square fails at shape arrow {a}"
                )));
            }
        }
        Ok(())
    }
}

fn all_cones_from(diagram: &DiagramData, apex: usize) -> Vec<ConeData> {
    let cat = &diagram.target;
    let shape_obs = diagram.source.object_count();
    let mut cones = Vec::new();
    let mut legs = vec![0usize; shape_obs];
    fn rec(
        diagram: &DiagramData,
        apex: usize,
        j: usize,
        legs: &mut Vec<usize>,
        out: &mut Vec<ConeData>,
    ) {
        if j == legs.len() {
            let cone = ConeData {
                apex,
                legs: legs.clone(),
            };
            if cone.validate(diagram).is_ok() {
                out.push(cone);
            }
            return;
        }
        for leg in diagram.target.homs(apex, diagram.ob_map[j]) {
            legs[j] = leg;
            rec(diagram, apex, j + 1, legs, out);
        }
    }
    if shape_obs == 0 {
        return vec![ConeData {
            apex,
            legs: vec![],
        }];
    }
    let _ = cat;
    rec(diagram, apex, 0, &mut legs, &mut cones);
    cones
}

pub fn all_cones(diagram: &DiagramData) -> Vec<ConeData> {
    (0..diagram.target.object_count())
        .flat_map(|apex| all_cones_from(diagram, apex))
        .collect()
}

/// True iff `cone` is limiting: every other cone factors through it by a
/// unique morphism. Checked against every cone in the category.
pub fn is_limit_cone(diagram: &DiagramData, cone: &ConeData) -> bool {
    if cone.validate(diagram).is_err() {
        return false;
    }
    let cat = &diagram.target;
    for other in all_cones(diagram) {
        let factors: Vec<usize> = cat
            .homs(other.apex, cone.apex)
            .into_iter()
            .filter(|&u| {
                cone.legs
                    .iter()
                    .enumerate()
                    .all(|(j, &leg)| cat.then(u, leg) == Some(other.legs[j]))
            })
            .collect();
        if factors.len() != 1 {
            return false;
        }
    }
    true
}

/// Exhaustive limit search: scans all apexes and leg assignments, verifies
/// the universal property against every competing cone, and returns the
/// first limiting cone in object/leg order, or None when no limit exists.
pub fn limit(diagram: &DiagramData) -> Option<(usize, ConeData)> {
    for apex in 0..diagram.target.object_count() {
        for cone in all_cones_from(diagram, apex) {
            if is_limit_cone(diagram, &cone) {
                return Some((apex, cone));
            }
        }
    }
    None
}

pub fn initial_objects(cat: &FinCategory) -> Vec<usize> {
    (0..cat.object_count())
        .filter(|&x| (0..cat.object_count()).all(|y| cat.homs(x, y).len() == 1))
        .collect()
}

pub fn is_initial(cat: &FinCategory, ob: usize) -> bool {
    (0..cat.object_count()).all(|y| cat.homs(ob, y).len() == 1)
}

/// Initial objects are strict when every morphism into one is an
/// isomorphism.
pub fn initials_are_strict(cat: &FinCategory) -> bool {
    for i in initial_objects(cat) {
        for x in 0..cat.object_count() {
            for f in cat.homs(x, i) {
                let has_inverse = cat.homs(i, x).iter().any(|&g| {
                    cat.then(f, g) == Some(cat.identity[x])
                        && cat.then(g, f) == Some(cat.identity[i])
                });
                if !has_inverse {
                    return false;
                }
            }
        }
    }
    true
}

pub fn preserves_initial(k: &FunctorData) -> bool {
    initial_objects(&k.source)
        .into_iter()
        .all(|ob| is_initial(&k.target, k.ob_map[ob]))
}

pub fn reflects_initial(u: &FunctorData) -> bool {
    (0..u.source.object_count())
        .all(|ob| !is_initial(&u.target, u.ob_map[ob]) || is_initial(&u.source, ob))
}

/// The commuting square of functors F: A→B, H: A→C, G: C→D, K: B→D
/// from the extension setup: going around both ways agrees.
#[derive(Debug, Clone)]
pub struct FunctorSquare {
    pub f: FunctorData,
    pub h: FunctorData,
    pub g: FunctorData,
    pub k: FunctorData,
}

impl FunctorSquare {
    pub fn try_new(
        f: FunctorData,
        h: FunctorData,
        g: FunctorData,
        k: FunctorData,
    ) -> Result<Self, CatError> {
        let sq = FunctorSquare { f, h, g, k };
        sq.validate()?;
        Ok(sq)
    }

    fn validate(&self) -> Result<(), CatError> {
        let a = &self.f.source;
        if self.h.source != *a {
            return Err(CatError::InvalidFunctor("F and H must share a source".into()));
        }
        if self.g.source != self.h.target || self.k.source != self.f.target {
            return Err(CatError::InvalidFunctor("square legs do not line up".into()));
        }
        if self.g.target != self.k.target {
            return Err(CatError::InvalidFunctor("G and K must share a target".into()));
        }
        for ob in 0..a.object_count() {
            if self.g.ob_map[self.h.ob_map[ob]] != self.k.ob_map[self.f.ob_map[ob]] {
                return Err(CatError::InvalidFunctor(format!(
                    "square does not commute on object {ob}"
                )));
            }
        }
        for m in 0..a.morphism_count() {
            if self.g.mor_map[self.h.mor_map[m]] != self.k.mor_map[self.f.mor_map[m]] {
                return Err(CatError::InvalidFunctor(format!(
                    "square does not commute on morphism {m}"
                )));
            }
        }
        Ok(())
    }
}

fn apply_functor(f: &FunctorData, diagram: &DiagramData) -> DiagramData {
    FunctorData {
        source: diagram.source.clone(),
        target: f.target.clone(),
        ob_map: diagram.ob_map.iter().map(|&o| f.ob_map[o]).collect(),
        mor_map: diagram.mor_map.iter().map(|&m| f.mor_map[m]).collect(),
    }
}

/// Composite F𝒜 of a diagram 𝒜 in the source of F.
pub fn transport_diagram(f: &FunctorData, diagram: &DiagramData) -> Result<DiagramData, CatError> {
    if diagram.target != f.source {
        return Err(CatError::InvalidDiagram(
            "diagram does not land in the functor's source".into(),
        ));
    }
    Ok(apply_functor(f, diagram))
}

fn transport_cone(f: &FunctorData, cone: &ConeData) -> ConeData {
    ConeData {
        apex: f.ob_map[cone.apex],
        legs: cone.legs.iter().map(|&l| f.mor_map[l]).collect(),
    }
}

/// The mediating morphism of the extension argument. Given the commuting
/// square, a diagram 𝒜 in A, a cone from X to H𝒜 in C, and a limiting cone
/// over F𝒜 in B whose K-image is again limiting, returns the unique
/// morphism G(X) → K(Y) factoring the transported cone. Uniqueness is
/// verified exhaustively.
pub fn mediating_morphism(
    square: &FunctorSquare,
    diagram_a: &DiagramData,
    cone_from_x: &ConeData,
    limit_cone: &ConeData,
) -> Result<usize, CatError> {
    let fa = transport_diagram(&square.f, diagram_a)?;
    let ha = transport_diagram(&square.h, diagram_a)?;
    cone_from_x
        .validate(&ha)
        .map_err(|e| CatError::Hypothesis(format!("cone from X over H𝒜: {e}")))?;
    if !is_limit_cone(&fa, limit_cone) {
        return Err(CatError::Hypothesis("given cone is not a limit of F𝒜".into()));
    }
    let kfa = apply_functor(&square.k, &fa);
    let k_cone = transport_cone(&square.k, limit_cone);
    if !is_limit_cone(&kfa, &k_cone) {
        return Err(CatError::Hypothesis(
            "K does not preserve the limit of this diagram".into(),
        ));
    }
    let g_cone = transport_cone(&square.g, cone_from_x);
    let d = &square.g.target;
    let candidates: Vec<usize> = d
        .homs(g_cone.apex, k_cone.apex)
        .into_iter()
        .filter(|&u| {
            k_cone
                .legs
                .iter()
                .enumerate()
                .all(|(j, &leg)| d.then(u, leg) == Some(g_cone.legs[j]))
        })
        .collect();
    match candidates.as_slice() {
        [unique] => Ok(*unique),
        [] => Err(CatError::Conclusion(
            "no mediating morphism exists (limit not preserved correctly)".into(),
        )),
        _ => Err(CatError::Conclusion("mediating morphism not unique".into())),
    }
}

/// An object X is obstructed by 𝒜 when X admits a cone over H𝒜 and
/// lim F𝒜 is initial.
pub fn is_obstructed(
    square: &FunctorSquare,
    x: usize,
    diagram_a: &DiagramData,
) -> Result<bool, CatError> {
    let ha = transport_diagram(&square.h, diagram_a)?;
    let has_cone = all_cones_from(&ha, x)
        .into_iter()
        .any(|c| c.validate(&ha).is_ok());
    if !has_cone {
        return Ok(false);
    }
    let fa = transport_diagram(&square.f, diagram_a)?;
    match limit(&fa) {
        Some((apex, _)) => Ok(is_initial(&square.f.target, apex)),
        None => Ok(false),
    }
}

#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub hypotheses_pass: bool,
    pub hypothesis_failures: Vec<String>,
    pub obstructed: bool,
    pub conclusion_checked: bool,
    pub gx_initial: bool,
}

/// The obstruction theorem as an executable assertion: when K preserves
/// initial objects, initial objects of D are strict, and X is obstructed,
/// G(X) must be initial. A conclusion failure indicates a modeling bug and
/// is reported as a hard error.
pub fn check_obstruction_theorem(
    square: &FunctorSquare,
    x: usize,
    diagram_a: &DiagramData,
) -> Result<ObstructionReport, CatError> {
    let mut failures = Vec::new();
    if !preserves_initial(&square.k) {
        failures.push("K does not preserve initial objects".to_string());
    }
    if !initials_are_strict(&square.g.target) {
        failures.push("initial objects of D are not strict".to_string());
    }
    let obstructed = is_obstructed(square, x, diagram_a)?;
    let hypotheses_pass = failures.is_empty();
    if !hypotheses_pass {
        return Ok(ObstructionReport {
            hypotheses_pass,
            hypothesis_failures: failures,
            obstructed,
            conclusion_checked: false,
            gx_initial: false,
        });
    }
    let gx_initial = is_initial(&square.g.target, square.g.ob_map[x]);
    if obstructed && !gx_initial {
        return Err(CatError::Conclusion(
            "obstructed object not sent to an initial object".into(),
        ));
    }
    Ok(ObstructionReport {
        hypotheses_pass,
        hypothesis_failures: failures,
        obstructed,
        conclusion_checked: obstructed,
        gx_initial,
    })
}

/// Concrete morphisms that diagrams in the other modules range over:
/// enough structure to check functoriality of a diagram presentation.
pub trait Morphism: Clone {
    type Object: Clone + PartialEq + fmt::Debug;
    fn identity_on(ob: &Self::Object) -> Self;
    fn source_object(&self) -> Self::Object;
    fn target_object(&self) -> Self::Object;
    /// "self then next"
    fn then(&self, next: &Self) -> Result<Self, String>;
    fn same_morphism(&self, other: &Self) -> bool;
}

/// A diagram in a concrete category: a shape, one object per shape object,
/// one concrete morphism per shape morphism. `validate` checks endpoint
/// agreement, identities, and functoriality over the whole composition
/// table — in particular the diagram commutes.
#[derive(Debug, Clone)]
pub struct Diagram<M: Morphism> {
    pub shape: FinCategory,
    pub nodes: Vec<M::Object>,
    pub arrows: Vec<M>,
}

impl<M: Morphism> Diagram<M> {
    /// Builds a diagram from the non-identity arrow assignment; identities
    /// are filled in automatically and the result is validated.
    pub fn try_new(
        shape: FinCategory,
        nodes: Vec<M::Object>,
        named_arrows: BTreeMap<usize, M>,
    ) -> Result<Self, CatError> {
        if nodes.len() != shape.object_count() {
            return Err(CatError::InvalidDiagram("one node per shape object".into()));
        }
        let mut arrows = Vec::with_capacity(shape.morphism_count());
        for m in 0..shape.morphism_count() {
            if let Some(a) = named_arrows.get(&m) {
                arrows.push(a.clone());
            } else if shape.identity[shape.morphisms[m].src] == m {
                arrows.push(M::identity_on(&nodes[shape.morphisms[m].src]));
            } else {
                return Err(CatError::InvalidDiagram(format!(
                    "no arrow supplied for shape morphism {m}"
                )));
            }
        }
        let d = Diagram {
            shape,
            nodes,
            arrows,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<(), CatError> {
        for (m, info) in self.shape.morphisms.iter().enumerate() {
            let a = &self.arrows[m];
            if a.source_object() != self.nodes[info.src] || a.target_object() != self.nodes[info.tgt]
            {
                return Err(CatError::InvalidDiagram(format!(
                    "arrow {m} endpoints disagree with shape"
                )));
            }
        }
        for (ob, &id) in self.shape.identity.iter().enumerate() {
            if !self.arrows[id].same_morphism(&M::identity_on(&self.nodes[ob])) {
                return Err(CatError::InvalidDiagram(format!(
                    "identity arrow at node {ob} is not the identity"
                )));
            }
        }
        let mut by_src = vec![Vec::new(); self.shape.object_count()];
        for (m, info) in self.shape.morphisms.iter().enumerate() {
            by_src[info.src].push(m);
        }
        for (f, mf) in self.shape.morphisms.iter().enumerate() {
            for &g in &by_src[mf.tgt] {
                let h = self.shape.then(f, g).expect("composable");
                let composite = self.arrows[f]
                    .then(&self.arrows[g])
                    .map_err(CatError::InvalidDiagram)?;
                if !composite.same_morphism(&self.arrows[h]) {
                    return Err(CatError::InvalidDiagram(format!(
                        "diagram does not commute at ({f},{g})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The same diagram over the opposite shape, each arrow replaced via
    /// `flip`; used to pass from locale diagrams to their opens diagrams.
    pub fn map_opposite<N: Morphism>(
        &self,
        nodes: Vec<N::Object>,
        flip: impl Fn(&M) -> N,
    ) -> Result<Diagram<N>, CatError> {
        let shape = self.shape.opposite();
        let arrows = self.arrows.iter().map(flip).collect();
        let d = Diagram {
            shape,
            nodes,
            arrows,
        };
        d.validate()?;
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> FinCategory {
        // 0 < a,b < 1 with a,b incomparable; meets exist: a∧b = 0
        let labels = vec!["0".into(), "a".into(), "b".into(), "1".into()];
        let mut leq = vec![vec![false; 4]; 4];
        for i in 0..4 {
            leq[i][i] = true;
        }
        leq[0][1] = true;
        leq[0][2] = true;
        leq[0][3] = true;
        leq[1][3] = true;
        leq[2][3] = true;
        FinCategory::from_poset(&labels, &leq).unwrap()
    }

    fn discrete_diagram_in(cat: &FinCategory, obs: &[usize]) -> DiagramData {
        let shape = FinCategory::discrete(obs.len());
        FunctorData {
            source: shape,
            target: cat.clone(),
            ob_map: obs.to_vec(),
            mor_map: obs.iter().map(|&o| cat.identity[o]).collect(),
        }
    }

    #[test]
    fn meet_as_product_in_poset_category() {
        let cat = diamond();
        let d = discrete_diagram_in(&cat, &[1, 2]);
        let (apex, cone) = limit(&d).expect("meet exists");
        assert_eq!(apex, 0);
        assert!(is_limit_cone(&d, &cone));
    }

    #[test]
    fn empty_diagram_limit_is_terminal() {
        let cat = diamond();
        let d = discrete_diagram_in(&cat, &[]);
        let (apex, _) = limit(&d).expect("terminal exists");
        assert_eq!(apex, 3);
    }

    #[test]
    fn discrete_category_has_no_binary_products() {
        let cat = FinCategory::discrete(2);
        let d = discrete_diagram_in(&cat, &[0, 1]);
        assert!(limit(&d).is_none());
    }

    #[test]
    fn poset_initials_are_strict() {
        let cat = diamond();
        assert_eq!(initial_objects(&cat), vec![0]);
        assert!(initials_are_strict(&cat));
    }

    #[test]
    fn identity_functor_reflects_and_preserves() {
        let cat = diamond();
        let idf = FunctorData::identity_functor(&cat);
        idf.validate().unwrap();
        assert!(preserves_initial(&idf));
        assert!(reflects_initial(&idf));
        let constant = FunctorData::constant(&cat, &cat, 3);
        assert!(!preserves_initial(&constant));
    }

    #[test]
    fn collapse_functor_does_not_reflect_initial() {
        let chain = FinCategory::from_poset(
            &["0".into(), "1".into()],
            &[vec![true, true], vec![false, true]],
        )
        .unwrap();
        let point = FinCategory::discrete(1);
        let collapse = FunctorData::try_new(
            chain.clone(),
            point.clone(),
            vec![0, 0],
            vec![0, 0, 0],
        )
        .unwrap();
        assert!(!reflects_initial(&collapse));
        // an isomorphism of chains reflects initials non-vacuously
        let iso = FunctorData::identity_functor(&chain);
        assert!(reflects_initial(&iso));
    }
}
