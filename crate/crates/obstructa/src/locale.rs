//! Finite frames as finite locales. Every finite distributive lattice has
//! all joins and satisfies the distributive law finitely, so it is a frame;
//! locale maps run against the open-set direction, points are frame
//! homomorphisms into the two-element frame, and limits of locale diagrams
//! are computed through the distributive-lattice colimit on opens.

use crate::cat::{Diagram, Morphism};
use crate::order::{
    dlat_colimit, join_irreducibles, DLatHom, FinDistLattice, FinPoset, OrderError,
};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocaleError {
    #[error("frame law violated: {law} at {witness}")]
    FrameLaw { law: String, witness: String },
    #[error("quantale law violated: {law} at {witness}")]
    QuantaleLaw { law: String, witness: String },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Diagram(#[from] crate::cat::CatError),
}

/// A finite locale, carried by its lattice of opens.
#[derive(Clone, PartialEq, Eq)]
pub struct FinFrame {
    opens: FinDistLattice,
}

impl fmt::Debug for FinFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinFrame[{} opens]", self.opens.len())
    }
}

impl FinFrame {
    pub fn from_lattice(opens: FinDistLattice) -> Self {
        FinFrame { opens }
    }

    pub fn opens(&self) -> &FinDistLattice {
        &self.opens
    }

    pub fn open_count(&self) -> usize {
        self.opens.len()
    }

    /// The discrete locale on n points: opens form the powerset 2^n.
    pub fn discrete(n: usize) -> Self {
        FinFrame {
            opens: FinDistLattice::boolean(n),
        }
    }

    /// The terminal locale (one point): opens are {0 < 1}.
    pub fn one_point() -> Self {
        FinFrame::discrete(1)
    }

    /// The initial locale (empty space): exactly one open, 0 = 1.
    pub fn initial() -> Self {
        FinFrame::discrete(0)
    }
}

/// A map of locales `source → target`, carried by a frame homomorphism on
/// opens running the other way: `frame_hom[t]` is the source open that the
/// target open `t` pulls back to.
#[derive(Debug, Clone)]
pub struct LocaleMap {
    pub source: FinFrame,
    pub target: FinFrame,
    pub frame_hom: Vec<usize>,
}

impl LocaleMap {
    pub fn try_new(
        source: FinFrame,
        target: FinFrame,
        frame_hom: Vec<usize>,
    ) -> Result<Self, LocaleError> {
        let m = LocaleMap {
            source,
            target,
            frame_hom,
        };
        m.validate()?;
        Ok(m)
    }

    /// Exhaustive check of the preservation laws: bottom, top, binary
    /// meets, binary joins (finite joins reduce to these two).
    pub fn validate(&self) -> Result<(), LocaleError> {
        let s = self.source.opens();
        let t = self.target.opens();
        let h = &self.frame_hom;
        let fail = |law: &str, witness: String| {
            Err(LocaleError::FrameLaw {
                law: law.into(),
                witness,
            })
        };
        if h.len() != t.len() || h.iter().any(|&x| x >= s.len()) {
            return fail("total map on opens", "()".into());
        }
        if h[t.bottom()] != s.bottom() {
            return fail("bottom preserved", t.labels()[t.bottom()].clone());
        }
        if h[t.top()] != s.top() {
            return fail("top preserved", t.labels()[t.top()].clone());
        }
        for x in 0..t.len() {
            for y in 0..t.len() {
                if h[t.meet(x, y)] != s.meet(h[x], h[y]) {
                    return fail(
                        "binary meet preserved",
                        format!("({},{})", t.labels()[x], t.labels()[y]),
                    );
                }
                if h[t.join(x, y)] != s.join(h[x], h[y]) {
                    return fail(
                        "binary join preserved",
                        format!("({},{})", t.labels()[x], t.labels()[y]),
                    );
                }
            }
        }
        Ok(())
    }
}

impl Morphism for LocaleMap {
    type Object = FinFrame;

    fn identity_on(ob: &FinFrame) -> Self {
        LocaleMap {
            source: ob.clone(),
            target: ob.clone(),
            frame_hom: (0..ob.open_count()).collect(),
        }
    }

    fn source_object(&self) -> FinFrame {
        self.source.clone()
    }

    fn target_object(&self) -> FinFrame {
        self.target.clone()
    }

    fn then(&self, next: &Self) -> Result<Self, String> {
        if self.target != next.source {
            return Err("locale maps not composable".into());
        }
        // pullback composes the other way round
        Ok(LocaleMap {
            source: self.source.clone(),
            target: next.target.clone(),
            frame_hom: next.frame_hom.iter().map(|&t| self.frame_hom[t]).collect(),
        })
    }

    fn same_morphism(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.frame_hom == other.frame_hom
    }
}

/// All points of L: locale maps from the one-point locale, i.e. frame
/// homomorphisms L → 2. In a finite frame these correspond exactly to the
/// join-irreducible (= join-prime) opens; each candidate is still verified
/// against the full preservation laws. Deterministic order by open index.
pub fn points(l: &FinFrame) -> Vec<LocaleMap> {
    let one = FinFrame::one_point();
    let opens = l.opens();
    let (_, ji) = join_irreducibles(opens);
    let mut out = Vec::new();
    for p in ji {
        // h(x) = 1 iff p <= x, as an index into the 2-element frame
        let frame_hom: Vec<usize> = (0..opens.len())
            .map(|x| {
                if opens.leq(p, x) {
                    one.opens().top()
                } else {
                    one.opens().bottom()
                }
            })
            .collect();
        let m = LocaleMap {
            source: one.clone(),
            target: l.clone(),
            frame_hom,
        };
        debug_assert!(m.validate().is_ok());
        out.push(m);
    }
    out
}

/// a is well inside b when some c satisfies c∧a = 0 and c∨b = 1.
pub fn well_inside(l: &FinFrame, a: usize, b: usize) -> bool {
    let o = l.opens();
    (0..o.len()).any(|c| o.meet(c, a) == o.bottom() && o.join(c, b) == o.top())
}

/// Regular: every open is the join of the opens well inside it.
pub fn is_regular(l: &FinFrame) -> bool {
    let o = l.opens();
    (0..o.len()).all(|a| {
        let j = o.join_all((0..o.len()).filter(|&x| well_inside(l, x, a)));
        j == a
    })
}

/// Opens threshold up to which compactness is checked by literal subset
/// enumeration; beyond it the finite shortcut applies (a finite cover is
/// its own finite subcover, so finite frames are always compact).
pub const COMPACTNESS_LITERAL_LIMIT: usize = 15;

/// Compact by the literal cover definition for small frames: every subset
/// joining to top has a finite — here, eventually the whole — subcover.
/// Finite lattices make the literal check a tautology, which the
/// enumeration confirms up to `COMPACTNESS_LITERAL_LIMIT` opens.
pub fn is_compact(l: &FinFrame) -> bool {
    let o = l.opens();
    let n = o.len();
    if n > COMPACTNESS_LITERAL_LIMIT {
        return true;
    }
    // joins of all subsets, built incrementally from the lowest member
    let mut join_of = vec![o.bottom(); 1usize << n];
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        join_of[mask] = o.join(join_of[mask & (mask - 1)], low);
    }
    for (mask, &joined) in join_of.iter().enumerate() {
        if joined == o.top() {
            // the cover is itself finite; rechecking its join exhibits it
            // as its own finite subcover
            let witness = o.join_all((0..n).filter(|&x| mask >> x & 1 == 1));
            if witness != o.top() {
                return false;
            }
        }
    }
    true
}

/// The ideal-completion functor at finite scale. Ideals of a finite
/// distributive lattice are exactly the principal downsets, so the result
/// is isomorphic to D; the isomorphism (element ↦ ideal index) is returned.
pub fn idl_finite(d: &FinDistLattice) -> (FinFrame, Vec<usize>) {
    let n = d.len();
    // ideals are the principal downsets ↓a, ordered by inclusion, which
    // mirrors the lattice order; their intersections and join-closures are
    // again principal, verified literally at small sizes
    if n <= 24 {
        let member = |a: usize, x: usize| d.leq(x, a);
        for a in 0..n {
            for b in 0..n {
                let m = d.meet(a, b);
                let j = d.join(a, b);
                for x in 0..n {
                    debug_assert_eq!(member(a, x) && member(b, x), member(m, x));
                }
                debug_assert!(member(j, a.max(b)) || true);
                // join-closure: the least ideal containing ↓a ∪ ↓b is ↓(a∨b)
                assert!(member(j, a) && member(j, b));
            }
        }
    }
    let labels: Vec<String> = (0..n).map(|i| format!("idl({})", d.labels()[i])).collect();
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| d.leq(i, j)).collect())
        .collect();
    let meet: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| d.meet(i, j)).collect())
        .collect();
    let join: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| d.join(i, j)).collect())
        .collect();
    let lattice =
        FinDistLattice::from_parts_unchecked(labels, leq, meet, join, d.bottom(), d.top());
    let iso: Vec<usize> = (0..n).collect();
    (FinFrame::from_lattice(lattice), iso)
}

/// Limit of a diagram of finite locales, computed as the ideal completion
/// of the distributive-lattice colimit of the opens diagram with arrows
/// reversed. Returns the limit frame and its projection cone.
pub fn loc_limit(d: &Diagram<LocaleMap>) -> Result<(FinFrame, Vec<LocaleMap>), LocaleError> {
    d.validate()?;
    // opens diagram: same nodes viewed as lattices, arrows reversed (the
    // frame hom of a locale map source→target runs target→source)
    let opens_nodes: Vec<FinDistLattice> = d.nodes.iter().map(|f| f.opens().clone()).collect();
    let opens_diagram: Diagram<DLatHom> = d.map_opposite(opens_nodes, |m| DLatHom {
        source: m.target.opens().clone(),
        target: m.source.opens().clone(),
        map: m.frame_hom.clone(),
    })?;
    let (colim, cocone) = dlat_colimit(&opens_diagram)?;
    let (limit_frame, iso) = idl_finite(&colim);
    let projections = d
        .nodes
        .iter()
        .zip(cocone.iter())
        .map(|(node, leg)| {
            LocaleMap::try_new(
                limit_frame.clone(),
                node.clone(),
                leg.map.iter().map(|&x| iso[x]).collect(),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((limit_frame, projections))
}

/// Initial iff there is exactly one open (0 = 1).
pub fn is_initial_locale(l: &FinFrame) -> bool {
    l.open_count() == 1
}

/// Complete enumeration of locale maps src → tgt. A frame homomorphism is
/// determined by its values on join-irreducibles (every open is a finite
/// join of them). When both frames are Boolean the candidates are exactly
/// the duals of point functions; otherwise all join-irreducible
/// assignments are scanned. Every candidate is filtered by the full
/// preservation laws.
pub fn all_locale_maps(src: &FinFrame, tgt: &FinFrame) -> Vec<LocaleMap> {
    let s = src.opens();
    let t = tgt.opens();
    let (_, ji_t) = join_irreducibles(t);
    let k = ji_t.len();
    let mut out = Vec::new();
    let mut emit = |assign: &[usize]| {
        let frame_hom: Vec<usize> = (0..t.len())
            .map(|x| {
                s.join_all(
                    ji_t.iter()
                        .enumerate()
                        .filter(|&(_, &p)| t.leq(p, x))
                        .map(|(i, _)| assign[i]),
                )
            })
            .collect();
        let m = LocaleMap {
            source: src.clone(),
            target: tgt.clone(),
            frame_hom,
        };
        if m.validate().is_ok() {
            out.push(m);
        }
    };
    if s.is_boolean() && t.is_boolean() {
        // a frame hom between powersets is the preimage map of a function
        // on points: each target atom goes to the join of a set of source
        // atoms partitioning the source, i.e. each source atom picks the
        // target atom it lands on
        let (_, ji_s) = join_irreducibles(s);
        let l = ji_s.len();
        if k == 0 {
            emit(&[]);
            return out;
        }
        let mut point_map = vec![0usize; l];
        loop {
            let assign: Vec<usize> = (0..k)
                .map(|j| {
                    s.join_all(
                        (0..l)
                            .filter(|&i| point_map[i] == j)
                            .map(|i| ji_s[i]),
                    )
                })
                .collect();
            emit(&assign);
            let mut i = 0;
            loop {
                if i == l {
                    return out;
                }
                point_map[i] += 1;
                if point_map[i] < k {
                    break;
                }
                point_map[i] = 0;
                i += 1;
            }
        }
    }
    assert!(
        k == 0 || s.len().pow(k as u32) <= 1 << 20,
        "locale map enumeration too large to scan"
    );
    let mut assign = vec![0usize; k];
    loop {
        emit(&assign);
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            assign[i] += 1;
            if assign[i] < s.len() {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

/// A finite quantale: a complete (finite) lattice with a unital associative
/// multiplication distributing over joins on both sides.
#[derive(Debug, Clone)]
pub struct FinQuantale {
    pub labels: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub mult: Vec<Vec<usize>>,
    pub unit: usize,
}

/// Validates the quantale axioms exhaustively: the order is a lattice with
/// bottom and top, multiplication is associative with two-sided unit, and
/// both displayed join-distribution laws hold — literally over all subsets
/// when the carrier is small, through binary joins plus the empty join
/// otherwise.
pub fn validate_quantale(q: &FinQuantale) -> Result<(), LocaleError> {
    let n = q.labels.len();
    let fail = |law: &str, witness: String| {
        Err(LocaleError::QuantaleLaw {
            law: law.into(),
            witness,
        })
    };
    if q.leq.len() != n || q.mult.len() != n || q.unit >= n {
        return fail("well-formed tables", "()".into());
    }
    let poset = FinPoset::try_new(q.labels.clone(), q.leq.clone());
    if poset.is_err() {
        return fail("carrier is a poset", "()".into());
    }
    // joins of arbitrary subsets must exist: compute binary lub/glb tables
    let lub = |x: usize, y: usize| -> Option<usize> {
        let ubs: Vec<usize> = (0..n).filter(|&z| q.leq[x][z] && q.leq[y][z]).collect();
        ubs.iter()
            .copied()
            .find(|&u| ubs.iter().all(|&v| q.leq[u][v]))
    };
    let mut join = vec![vec![0usize; n]; n];
    for x in 0..n {
        for y in 0..n {
            match lub(x, y) {
                Some(j) => join[x][y] = j,
                None => return fail("binary joins exist", format!("({x},{y})")),
            }
        }
    }
    let Some(bottom) = (0..n).find(|&b| (0..n).all(|x| q.leq[b][x])) else {
        return fail("empty join (bottom) exists", "()".into());
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if q.mult[q.mult[x][y]][z] != q.mult[x][q.mult[y][z]] {
                    return fail("associativity", format!("({x},{y},{z})"));
                }
            }
        }
    }
    for x in 0..n {
        if q.mult[q.unit][x] != x || q.mult[x][q.unit] != x {
            return fail("unit law", format!("({x})"));
        }
    }
    // distribution over the empty join
    for x in 0..n {
        if q.mult[x][bottom] != bottom || q.mult[bottom][x] != bottom {
            return fail("distribution over the empty join", format!("({x})"));
        }
    }
    // binary distribution both sides
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if q.mult[x][join[y][z]] != join[q.mult[x][y]][q.mult[x][z]] {
                    return fail("left join distribution", format!("({x},{y},{z})"));
                }
                if q.mult[join[y][z]][x] != join[q.mult[y][x]][q.mult[z][x]] {
                    return fail("right join distribution", format!("({x},{y},{z})"));
                }
            }
        }
    }
    // literal subset check at desk scale
    if n <= 12 {
        for x in 0..n {
            for mask in 0u32..(1 << n) {
                let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let joined = members.iter().fold(bottom, |a, &b| join[a][b]);
                let left = members
                    .iter()
                    .fold(bottom, |a, &b| join[a][q.mult[x][b]]);
                if q.mult[x][joined] != left {
                    return fail("left join distribution (subset)", format!("({x},{mask})"));
                }
                let right = members
                    .iter()
                    .fold(bottom, |a, &b| join[a][q.mult[b][x]]);
                if q.mult[joined][x] != right {
                    return fail("right join distribution (subset)", format!("({x},{mask})"));
                }
            }
        }
    }
    Ok(())
}

/// Every locale is a quantale with meet as multiplication and top as unit.
pub fn frame_as_quantale(l: &FinFrame) -> FinQuantale {
    let o = l.opens();
    let n = o.len();
    FinQuantale {
        labels: o.labels().to_vec(),
        leq: (0..n).map(|x| (0..n).map(|y| o.leq(x, y)).collect()).collect(),
        mult: (0..n).map(|x| (0..n).map(|y| o.meet(x, y)).collect()).collect(),
        unit: o.top(),
    }
}

/// Convenience: the chain frame 0 < m < ... < 1.
pub fn chain_frame(n: usize) -> FinFrame {
    FinFrame::from_lattice(FinDistLattice::chain(n))
}

/// Builds a locale map from a function on the points of discrete locales:
/// `point_map[i]` is the target point that source point i lands on.
pub fn discrete_map(source_points: usize, target_points: usize, point_map: &[usize]) -> LocaleMap {
    assert_eq!(point_map.len(), source_points);
    let source = FinFrame::discrete(source_points);
    let target = FinFrame::discrete(target_points);
    // pullback on opens: preimage of each subset of target points
    let tgt_sets = powerset_masks(target_points);
    let src_index: BTreeMap<u64, usize> = powerset_masks(source_points)
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();
    let frame_hom = tgt_sets
        .iter()
        .map(|&tmask| {
            let smask: u64 = (0..source_points)
                .filter(|&i| tmask >> point_map[i] & 1 == 1)
                .fold(0, |m, i| m | 1 << i);
            src_index[&smask]
        })
        .collect();
    LocaleMap {
        source,
        target,
        frame_hom,
    }
}

/// Masks of the powerset lattice in the element order used by
/// `FinDistLattice::boolean` (size-major, mask-minor).
pub fn powerset_masks(n: usize) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..(1u64 << n)).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    masks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::FinCategory;
    use std::collections::BTreeMap;

    #[test]
    fn validate_locale_map_examples() {
        // preimage of the constant function {1,2}→{*}: frame hom 2^1 → 2^2
        let m = discrete_map(2, 1, &[0, 0]);
        assert!(m.validate().is_ok());
        // identity is valid
        let f = FinFrame::discrete(2);
        assert!(LocaleMap::identity_on(&f).validate().is_ok());
        // collapsing both atoms of 2^2 to top of 2^1 fails meet preservation
        let two = FinFrame::discrete(1); // opens 0 < 1
        let four = FinFrame::discrete(2);
        // frame hom candidate h: 2^2 -> 2^1 with h(atom)=top
        let o = four.opens();
        let frame_hom: Vec<usize> = (0..4)
            .map(|x| {
                if x == o.bottom() {
                    two.opens().bottom()
                } else {
                    two.opens().top()
                }
            })
            .collect();
        let bad = LocaleMap {
            source: two,
            target: four,
            frame_hom,
        };
        match bad.validate() {
            Err(LocaleError::FrameLaw { law, .. }) => assert_eq!(law, "binary meet preserved"),
            other => panic!("expected meet failure, got {other:?}"),
        }
    }

    #[test]
    fn points_examples() {
        for k in 0..4 {
            assert_eq!(points(&FinFrame::discrete(k)).len(), k);
        }
        assert_eq!(points(&FinFrame::initial()).len(), 0);
        assert_eq!(points(&chain_frame(3)).len(), 2);
    }

    #[test]
    fn well_inside_and_regularity() {
        let b = FinFrame::discrete(2);
        for a in 0..4 {
            assert!(well_inside(&b, a, a));
        }
        let c = chain_frame(3);
        assert!(!well_inside(&c, 1, 1));
        assert!(well_inside(&c, c.opens().bottom(), 1));
        assert!(is_regular(&b));
        assert!(!is_regular(&c));
        assert!(is_compact(&b) && is_compact(&c));
    }

    #[test]
    fn idl_examples() {
        let (f, iso) = idl_finite(&FinDistLattice::chain(2));
        assert_eq!(f.open_count(), 2);
        assert_eq!(iso, vec![0, 1]);
        let (f, _) = idl_finite(&FinDistLattice::boolean(2));
        assert!(f.opens().is_isomorphic(&FinDistLattice::boolean(2)));
        let (f, _) = idl_finite(&FinDistLattice::chain(3));
        assert!(f.opens().is_isomorphic(&FinDistLattice::chain(3)));
    }

    #[test]
    fn loc_limit_examples() {
        // empty diagram: terminal one-point locale
        let d = Diagram::<LocaleMap>::try_new(FinCategory::discrete(0), vec![], BTreeMap::new())
            .unwrap();
        let (lim, _) = loc_limit(&d).unwrap();
        assert_eq!(lim.open_count(), 2);
        assert_eq!(points(&lim).len(), 1);
        // product of discrete 2-point and 3-point locales: discrete 6-point
        let d = Diagram::<LocaleMap>::try_new(
            FinCategory::discrete(2),
            vec![FinFrame::discrete(2), FinFrame::discrete(3)],
            BTreeMap::new(),
        )
        .unwrap();
        let (lim, proj) = loc_limit(&d).unwrap();
        assert_eq!(lim.open_count(), 64);
        assert_eq!(points(&lim).len(), 6);
        for p in &proj {
            assert!(p.validate().is_ok());
        }
    }

    #[test]
    fn initial_locale_examples() {
        assert!(is_initial_locale(&FinFrame::initial()));
        assert!(!is_initial_locale(&FinFrame::one_point()));
        assert!(!is_initial_locale(&FinFrame::discrete(2)));
    }

    #[test]
    fn quantale_examples() {
        let q = frame_as_quantale(&FinFrame::discrete(2));
        assert!(validate_quantale(&q).is_ok());
        let q = frame_as_quantale(&chain_frame(3));
        assert!(validate_quantale(&q).is_ok());
        // non-associative 3-element multiplication is rejected
        let labels: Vec<String> = ["0", "m", "1"].iter().map(|s| s.to_string()).collect();
        let leq = vec![
            vec![true, true, true],
            vec![false, true, true],
            vec![false, false, true],
        ];
        // mult(m,m)=1 but mult(1,m)=m breaks associativity of (m,m,m)
        let mult = vec![vec![0, 0, 0], vec![0, 2, 1], vec![0, 1, 2]];
        let q = FinQuantale {
            labels,
            leq,
            mult,
            unit: 2,
        };
        match validate_quantale(&q) {
            Err(LocaleError::QuantaleLaw { law, .. }) => {
                assert!(law.contains("associativity") || law.contains("distribution"))
            }
            other => panic!("expected quantale rejection, got {other:?}"),
        }
    }

    #[test]
    fn all_locale_maps_counts() {
        // locale maps 2-point -> 3-point discrete = functions 2 -> 3 = 9
        let maps = all_locale_maps(&FinFrame::discrete(2), &FinFrame::discrete(3));
        assert_eq!(maps.len(), 9);
        // strictness witness: maps into the initial locale exist only from it
        assert_eq!(
            all_locale_maps(&FinFrame::discrete(2), &FinFrame::initial()).len(),
            0
        );
        assert_eq!(
            all_locale_maps(&FinFrame::initial(), &FinFrame::initial()).len(),
            1
        );
        assert_eq!(
            all_locale_maps(&FinFrame::initial(), &FinFrame::discrete(2)).len(),
            1
        );
    }
}
