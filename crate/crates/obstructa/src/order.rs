//! Finite posets and finite distributive lattices with Birkhoff duality:
//! join-irreducibles on one side, downset lattices on the other. Colimits
//! of distributive-lattice diagrams are computed through limits of the dual
//! posets, which is the engine behind the locale-limit computation.

use crate::cat::{CatError, Diagram, Morphism};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("not a poset: {0}")]
    NotAPoset(String),
    #[error("lattice law {law} fails at {witness}")]
    LatticeDefect { law: String, witness: String },
    #[error("map is not monotone at element {0}")]
    NotMonotone(usize),
    #[error("not a lattice homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("structure too large to materialize: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Diagram(#[from] CatError),
}

/// A finite poset: opaque element labels plus a reflexive, antisymmetric,
/// transitive relation, all machine-checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinPoset {
    pub fn try_new(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, OrderError> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(OrderError::NotAPoset("relation must be square".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(OrderError::NotAPoset(format!("not reflexive at {i}")));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(OrderError::NotAPoset(format!("not antisymmetric at {i},{j}")));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(OrderError::NotAPoset(format!(
                            "not transitive at {i},{j},{k}"
                        )));
                    }
                }
            }
        }
        Ok(FinPoset { labels, leq })
    }

    pub fn antichain(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        let leq = (0..n)
            .map(|i| (0..n).map(|j| i == j).collect())
            .collect();
        FinPoset { labels, leq }
    }

    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("c{i}")).collect();
        let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        FinPoset { labels, leq }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn leq_table(&self) -> &[Vec<bool>] {
        &self.leq
    }
}

/// A monotone map between finite posets, owning copies of both endpoints.
#[derive(Debug, Clone)]
pub struct MonotoneMap {
    pub source: FinPoset,
    pub target: FinPoset,
    pub map: Vec<usize>,
}

impl MonotoneMap {
    pub fn try_new(source: FinPoset, target: FinPoset, map: Vec<usize>) -> Result<Self, OrderError> {
        if map.len() != source.len() || map.iter().any(|&x| x >= target.len()) {
            return Err(OrderError::NotMonotone(usize::MAX));
        }
        for i in 0..source.len() {
            for j in 0..source.len() {
                if source.leq(i, j) && !target.leq(map[i], map[j]) {
                    return Err(OrderError::NotMonotone(i));
                }
            }
        }
        Ok(MonotoneMap {
            source,
            target,
            map,
        })
    }
}

impl Morphism for MonotoneMap {
    type Object = FinPoset;

    fn identity_on(ob: &FinPoset) -> Self {
        MonotoneMap {
            source: ob.clone(),
            target: ob.clone(),
            map: (0..ob.len()).collect(),
        }
    }

    fn source_object(&self) -> FinPoset {
        self.source.clone()
    }

    fn target_object(&self) -> FinPoset {
        self.target.clone()
    }

    fn then(&self, next: &Self) -> Result<Self, String> {
        if self.target != next.source {
            return Err("monotone maps not composable".into());
        }
        Ok(MonotoneMap {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&x| next.map[x]).collect(),
        })
    }

    fn same_morphism(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.map == other.map
    }
}

/// Explicit operation tables ordered by a fixed element list. Sizes stay
/// small enough here that tables beat recomputation from the order.
#[derive(Clone, PartialEq, Eq)]
pub struct FinDistLattice {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<u16>>,
    join: Vec<Vec<u16>>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for FinDistLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinDistLattice[{} elements]", self.len())
    }
}

pub const MAX_LATTICE: usize = 4096;

impl FinDistLattice {
    /// Full validation of candidate tables: poset laws, lattice laws,
    /// compatibility of tables with the order, bounds, and distributivity.
    /// The error names the first failing law with its witnesses.
    pub fn try_new(
        labels: Vec<String>,
        leq: Vec<Vec<bool>>,
        meet: Vec<Vec<usize>>,
        join: Vec<Vec<usize>>,
        bottom: usize,
        top: usize,
    ) -> Result<Self, OrderError> {
        let n = labels.len();
        if n == 0 {
            return Err(OrderError::LatticeDefect {
                law: "nonempty carrier".into(),
                witness: "()".into(),
            });
        }
        if n > MAX_LATTICE {
            return Err(OrderError::TooLarge(format!("{n} lattice elements")));
        }
        let poset = FinPoset::try_new(labels.clone(), leq.clone())
            .map_err(|e| OrderError::LatticeDefect {
                law: format!("order axioms ({e})"),
                witness: "()".into(),
            })?;
        let _ = poset;
        let defect = |law: &str, witness: Vec<usize>| OrderError::LatticeDefect {
            law: law.into(),
            witness: format!(
                "({})",
                witness
                    .iter()
                    .map(|&i| labels[i].clone())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        };
        let total = |t: &Vec<Vec<usize>>| {
            t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|&x| x < n))
        };
        if !total(&meet) || !total(&join) {
            return Err(defect("total operation tables", vec![]));
        }
        for x in 0..n {
            if !leq[bottom][x] {
                return Err(defect("bottom is least", vec![bottom, x]));
            }
            if !leq[x][top] {
                return Err(defect("top is greatest", vec![x, top]));
            }
            for y in 0..n {
                if meet[x][y] != meet[y][x] {
                    return Err(defect("meet commutative", vec![x, y]));
                }
                if join[x][y] != join[y][x] {
                    return Err(defect("join commutative", vec![x, y]));
                }
                // table/order compatibility: x ≤ y iff x∧y = x iff x∨y = y
                let m = meet[x][y];
                let j = join[x][y];
                if !(leq[m][x] && leq[m][y]) {
                    return Err(defect("meet is a lower bound", vec![x, y]));
                }
                if !(leq[x][j] && leq[y][j]) {
                    return Err(defect("join is an upper bound", vec![x, y]));
                }
                if leq[x][y] != (m == x) || leq[x][y] != (j == y) {
                    return Err(defect("tables agree with order", vec![x, y]));
                }
                if join[x][meet[x][y]] != x || meet[x][join[x][y]] != x {
                    return Err(defect("absorption", vec![x, y]));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if meet[meet[x][y]][z] != meet[x][meet[y][z]] {
                        return Err(defect("meet associative", vec![x, y, z]));
                    }
                    if join[join[x][y]][z] != join[x][join[y][z]] {
                        return Err(defect("join associative", vec![x, y, z]));
                    }
                    // greatest lower bound: any common lower bound is under the meet
                    if leq[z][x] && leq[z][y] && !leq[z][meet[x][y]] {
                        return Err(defect("meet is greatest lower bound", vec![x, y, z]));
                    }
                    if leq[x][z] && leq[y][z] && !leq[join[x][y]][z] {
                        return Err(defect("join is least upper bound", vec![x, y, z]));
                    }
                    if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]] {
                        return Err(defect("distributivity", vec![x, y, z]));
                    }
                }
            }
        }
        Ok(Self::from_parts_unchecked(labels, leq, meet, join, bottom, top))
    }

    /// For lattices correct by construction (downset lattices, powersets,
    /// chains). Small instances of every such constructor are re-validated
    /// against `try_new` in the test suite.
    pub(crate) fn from_parts_unchecked(
        labels: Vec<String>,
        leq: Vec<Vec<bool>>,
        meet: Vec<Vec<usize>>,
        join: Vec<Vec<usize>>,
        bottom: usize,
        top: usize,
    ) -> Self {
        FinDistLattice {
            labels,
            leq,
            meet: meet
                .into_iter()
                .map(|r| r.into_iter().map(|x| x as u16).collect())
                .collect(),
            join: join
                .into_iter()
                .map(|r| r.into_iter().map(|x| x as u16).collect())
                .collect(),
            bottom,
            top,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x][y] as usize
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x][y] as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |a, b| self.join(a, b))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |a, b| self.meet(a, b))
    }

    pub fn complement_of(&self, x: usize) -> Option<usize> {
        (0..self.len())
            .find(|&y| self.meet(x, y) == self.bottom && self.join(x, y) == self.top)
    }

    /// Boolean = every element complemented (distributivity already holds).
    pub fn is_boolean(&self) -> bool {
        (0..self.len()).all(|x| self.complement_of(x).is_some())
    }

    /// Powerset of n atoms, elements ordered by (popcount, bitmask).
    pub fn boolean(n: usize) -> Self {
        let p = FinPoset::antichain(n);
        downsets(&p).expect("powerset")
    }

    pub fn chain(n: usize) -> Self {
        assert!(n >= 1);
        let labels = (0..n).map(|i| format!("c{i}")).collect();
        let leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        let meet: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| i.min(j)).collect()).collect();
        let join: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| i.max(j)).collect()).collect();
        Self::from_parts_unchecked(labels, leq, meet, join, 0, n - 1)
    }

    /// Deterministic isomorphism test: backtracking on candidate pairs,
    /// elements keyed by the invariant (height, |down|, |up|), candidates
    /// tried in lexicographic element order.
    pub fn is_isomorphic(&self, other: &FinDistLattice) -> bool {
        iso_map(self, other).is_some()
    }
}

fn height_profile(l: &FinDistLattice) -> Vec<(usize, usize, usize)> {
    let n = l.len();
    let mut height = vec![0usize; n];
    // longest chain from bottom, computed by repeated relaxation
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            for y in 0..n {
                if x != y && l.leq(x, y) && height[x] + 1 > height[y] {
                    height[y] = height[x] + 1;
                    changed = true;
                }
            }
        }
    }
    (0..n)
        .map(|x| {
            let down = (0..n).filter(|&y| l.leq(y, x)).count();
            let up = (0..n).filter(|&y| l.leq(x, y)).count();
            (height[x], down, up)
        })
        .collect()
}

pub fn iso_map(a: &FinDistLattice, b: &FinDistLattice) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let pa = height_profile(a);
    let pb = height_profile(b);
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let n = a.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        a: &FinDistLattice,
        b: &FinDistLattice,
        pa: &[(usize, usize, usize)],
        pb: &[(usize, usize, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        x: usize,
    ) -> bool {
        let n = a.len();
        if x == n {
            return true;
        }
        for y in 0..n {
            if used[y] || pa[x] != pb[y] {
                continue;
            }
            let mut ok = true;
            for z in 0..x {
                if a.leq(x, z) != b.leq(y, map[z]) || a.leq(z, x) != b.leq(map[z], y) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if extend(a, b, pa, pb, map, used, x + 1) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }
    if extend(a, b, &pa, &pb, &mut map, &mut used, 0) {
        // the order-isomorphism property forces meet/join agreement, but
        // verify the tables outright
        for x in 0..n {
            for y in 0..n {
                if map[a.meet(x, y)] != b.meet(map[x], map[y])
                    || map[a.join(x, y)] != b.join(map[x], map[y])
                {
                    return None;
                }
            }
        }
        Some(map)
    } else {
        None
    }
}

/// A homomorphism of bounded distributive lattices: preserves meet, join,
/// bottom and top, checked exhaustively.
#[derive(Debug, Clone)]
pub struct DLatHom {
    pub source: FinDistLattice,
    pub target: FinDistLattice,
    pub map: Vec<usize>,
}

impl DLatHom {
    pub fn try_new(
        source: FinDistLattice,
        target: FinDistLattice,
        map: Vec<usize>,
    ) -> Result<Self, OrderError> {
        if map.len() != source.len() || map.iter().any(|&x| x >= target.len()) {
            return Err(OrderError::NotAHomomorphism("map not total".into()));
        }
        if map[source.bottom()] != target.bottom() {
            return Err(OrderError::NotAHomomorphism("bottom not preserved".into()));
        }
        if map[source.top()] != target.top() {
            return Err(OrderError::NotAHomomorphism("top not preserved".into()));
        }
        for x in 0..source.len() {
            for y in 0..source.len() {
                if map[source.meet(x, y)] != target.meet(map[x], map[y]) {
                    return Err(OrderError::NotAHomomorphism(format!(
                        "meet not preserved at ({x},{y})"
                    )));
                }
                if map[source.join(x, y)] != target.join(map[x], map[y]) {
                    return Err(OrderError::NotAHomomorphism(format!(
                        "join not preserved at ({x},{y})"
                    )));
                }
            }
        }
        Ok(DLatHom {
            source,
            target,
            map,
        })
    }
}

impl Morphism for DLatHom {
    type Object = FinDistLattice;

    fn identity_on(ob: &FinDistLattice) -> Self {
        DLatHom {
            source: ob.clone(),
            target: ob.clone(),
            map: (0..ob.len()).collect(),
        }
    }

    fn source_object(&self) -> FinDistLattice {
        self.source.clone()
    }

    fn target_object(&self) -> FinDistLattice {
        self.target.clone()
    }

    fn then(&self, next: &Self) -> Result<Self, String> {
        if self.target != next.source {
            return Err("lattice homs not composable".into());
        }
        Ok(DLatHom {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&x| next.map[x]).collect(),
        })
    }

    fn same_morphism(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.map == other.map
    }
}

/// Structured accept/reject report for candidate lattice tables; the
/// reject branch carries the first failing law and witness triple.
pub fn validate_distributive(
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
) -> Result<FinDistLattice, OrderError> {
    FinDistLattice::try_new(labels, leq, meet, join, bottom, top)
}

/// The poset of join-irreducibles: non-bottom elements with exactly one
/// lower cover. Returns the subposet plus the carrier index of each
/// irreducible.
pub fn join_irreducibles(l: &FinDistLattice) -> (FinPoset, Vec<usize>) {
    let n = l.len();
    let mut ji = Vec::new();
    for x in 0..n {
        if x == l.bottom() {
            continue;
        }
        let below: Vec<usize> = (0..n).filter(|&y| y != x && l.leq(y, x)).collect();
        let covers = below
            .iter()
            .filter(|&&y| !below.iter().any(|&z| z != y && l.leq(y, z)))
            .count();
        if covers == 1 {
            ji.push(x);
        }
    }
    let labels = ji.iter().map(|&x| l.labels()[x].clone()).collect();
    let leq = ji
        .iter()
        .map(|&x| ji.iter().map(|&y| l.leq(x, y)).collect())
        .collect();
    (
        FinPoset::try_new(labels, leq).expect("subposet of a lattice order"),
        ji,
    )
}

/// The lattice of downward-closed subsets of P under union/intersection,
/// elements ordered by (size, bitmask). This is the Birkhoff inverse of
/// `join_irreducibles`.
pub fn downsets(p: &FinPoset) -> Result<FinDistLattice, OrderError> {
    Ok(downsets_with_sets(p)?.0)
}

/// `downsets` plus each element's member bitmask over the poset elements.
pub fn downsets_with_sets(p: &FinPoset) -> Result<(FinDistLattice, Vec<u64>), OrderError> {
    let n = p.len();
    if n > 63 {
        return Err(OrderError::TooLarge(format!("{n} join-irreducibles")));
    }
    // generate downsets directly: walk elements in index order, a set may
    // include x only if it includes everything below x
    let mut sets: Vec<u64> = vec![0];
    for x in 0..n {
        let below: u64 = (0..n)
            .filter(|&y| y != x && p.leq(y, x))
            .fold(0, |m, y| m | 1 << y);
        let mut next = Vec::with_capacity(sets.len() * 2);
        for &s in &sets {
            next.push(s);
            if s & below == below {
                next.push(s | 1 << x);
            }
        }
        sets = next;
        if sets.len() > MAX_LATTICE {
            return Err(OrderError::TooLarge(format!(
                "downset lattice exceeds {MAX_LATTICE} elements"
            )));
        }
    }
    sets.sort_by_key(|&s| (s.count_ones(), s));
    sets.dedup();
    let index: BTreeMap<u64, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let label = |s: u64| {
        let names: Vec<&str> = (0..n)
            .filter(|&x| s >> x & 1 == 1)
            .map(|x| p.labels()[x].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    };
    let labels: Vec<String> = sets.iter().map(|&s| label(s)).collect();
    let m = sets.len();
    let leq = (0..m)
        .map(|i| (0..m).map(|j| sets[i] & sets[j] == sets[i]).collect())
        .collect();
    let meet = (0..m)
        .map(|i| (0..m).map(|j| index[&(sets[i] & sets[j])]).collect())
        .collect();
    let join = (0..m)
        .map(|i| (0..m).map(|j| index[&(sets[i] | sets[j])]).collect())
        .collect();
    let bottom = index[&0];
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let top = index[&full];
    Ok((
        FinDistLattice::from_parts_unchecked(labels, leq, meet, join, bottom, top),
        sets,
    ))
}

/// Limit of a finite diagram of posets: compatible families ordered
/// componentwise, with monotone projections. The diagram must commute
/// (checked by `Diagram` validation at construction).
pub fn poset_limit(
    d: &Diagram<MonotoneMap>,
) -> Result<(FinPoset, Vec<MonotoneMap>), OrderError> {
    d.validate()?;
    let k = d.nodes.len();
    // arc-consistency propagation then DFS, families emitted in
    // lexicographic (node-major, element-minor) order
    let mut cands: Vec<Vec<bool>> = d.nodes.iter().map(|p| vec![true; p.len()]).collect();
    let arrows: Vec<(usize, usize, &MonotoneMap)> = d
        .shape
        .morphisms
        .iter()
        .enumerate()
        .map(|(m, info)| (info.src, info.tgt, &d.arrows[m]))
        .collect();
    fn prune(cands: &mut [Vec<bool>], arrows: &[(usize, usize, &MonotoneMap)]) -> bool {
        loop {
            let mut changed = false;
            for &(s, t, ref f) in arrows {
                for x in 0..cands[s].len() {
                    if cands[s][x] && !cands[t][f.map[x]] {
                        cands[s][x] = false;
                        changed = true;
                    }
                }
                for y in 0..cands[t].len() {
                    if cands[t][y] && !(0..cands[s].len()).any(|x| cands[s][x] && f.map[x] == y) {
                        cands[t][y] = false;
                        changed = true;
                    }
                }
            }
            if !changed {
                return cands.iter().all(|c| c.iter().any(|&b| b));
            }
        }
    }
    let mut families: Vec<Vec<usize>> = Vec::new();
    fn dfs(
        j: usize,
        k: usize,
        cands: &[Vec<bool>],
        arrows: &[(usize, usize, &MonotoneMap)],
        out: &mut Vec<Vec<usize>>,
        chosen: &mut Vec<usize>,
    ) {
        if j == k {
            out.push(chosen.clone());
            return;
        }
        for x in 0..cands[j].len() {
            if !cands[j][x] {
                continue;
            }
            let mut next: Vec<Vec<bool>> = cands.to_vec();
            next[j] = (0..cands[j].len()).map(|y| y == x).collect();
            if prune(&mut next, arrows) {
                chosen.push(x);
                dfs(j + 1, k, &next, arrows, out, chosen);
                chosen.pop();
            }
        }
    }
    if prune(&mut cands, &arrows) {
        let mut chosen = Vec::new();
        dfs(0, k, &cands, &arrows, &mut families, &mut chosen);
    }
    let labels: Vec<String> = families
        .iter()
        .map(|f| {
            let parts: Vec<&str> = f
                .iter()
                .enumerate()
                .map(|(j, &x)| d.nodes[j].labels()[x].as_str())
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let m = families.len();
    let leq: Vec<Vec<bool>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    families[i]
                        .iter()
                        .zip(families[j].iter())
                        .enumerate()
                        .all(|(node, (&a, &b))| d.nodes[node].leq(a, b))
                })
                .collect()
        })
        .collect();
    let limit = FinPoset::try_new(labels, leq)?;
    let projections = (0..k)
        .map(|j| MonotoneMap {
            source: limit.clone(),
            target: d.nodes[j].clone(),
            map: families.iter().map(|f| f[j]).collect(),
        })
        .collect();
    Ok((limit, projections))
}

/// Colimit of a finite diagram of distributive lattices, computed through
/// Birkhoff duality: dualize to join-irreducible posets, take the poset
/// limit over the opposite shape, and return its downset lattice together
/// with the cocone.
pub fn dlat_colimit(
    d: &Diagram<DLatHom>,
) -> Result<(FinDistLattice, Vec<DLatHom>), OrderError> {
    d.validate()?;
    let duals: Vec<(FinPoset, Vec<usize>)> = d.nodes.iter().map(join_irreducibles).collect();
    // the dual of a lattice hom f: L_i -> L_j sends a join-irreducible q of
    // L_j to the least a in L_i with q <= f(a); join-primality makes this
    // land in J(L_i)
    let mut dual_arrows: BTreeMap<usize, MonotoneMap> = BTreeMap::new();
    for (m, info) in d.shape.morphisms.iter().enumerate() {
        if d.shape.identity[info.src] == m {
            continue;
        }
        let f = &d.arrows[m];
        let (src_l, tgt_l) = (&d.nodes[info.src], &d.nodes[info.tgt]);
        let (ref pj, ref ji_j) = duals[info.tgt];
        let (ref pi, ref ji_i) = duals[info.src];
        let mut map = Vec::with_capacity(pj.len());
        for &q in ji_j {
            let preimage_bound = src_l.meet_all(
                (0..src_l.len()).filter(|&a| tgt_l.leq(q, f.map[a])),
            );
            let pos = ji_i
                .iter()
                .position(|&x| x == preimage_bound)
                .expect("dual image is join-irreducible");
            map.push(pos);
        }
        let _ = pi;
        dual_arrows.insert(
            m,
            MonotoneMap::try_new(duals[info.tgt].0.clone(), duals[info.src].0.clone(), map)?,
        );
    }
    let dual_shape = d.shape.opposite();
    let dual_diagram = Diagram::<MonotoneMap>::try_new(
        dual_shape,
        duals.iter().map(|(p, _)| p.clone()).collect(),
        dual_arrows,
    )?;
    let (limit_poset, projections) = poset_limit(&dual_diagram)?;
    let (colim, sets) = downsets_with_sets(&limit_poset)?;
    let index: BTreeMap<u64, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    // cocone leg at node i: a |-> { family x : dual-projection of x lies under a },
    // which is O(π_i) composed with the Birkhoff isomorphism L_i ≅ O(J(L_i))
    let mut cocone = Vec::new();
    for (i, node) in d.nodes.iter().enumerate() {
        let (_, ref ji) = duals[i];
        let proj = &projections[i];
        let mut map = Vec::with_capacity(node.len());
        for a in 0..node.len() {
            let mask: u64 = (0..limit_poset.len())
                .filter(|&x| node.leq(ji[proj.map[x]], a))
                .fold(0, |m, x| m | 1 << x);
            map.push(index[&mask]);
        }
        cocone.push(DLatHom::try_new(node.clone(), colim.clone(), map)?);
    }
    Ok((colim, cocone))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::FinCategory;

    pub(crate) fn diamond_m3() -> Result<FinDistLattice, OrderError> {
        // 0, a, b, c, 1 with a,b,c pairwise incomparable
        let labels: Vec<String> = ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
        let n = 5;
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
            leq[0][i] = true;
            leq[i][4] = true;
        }
        let meet = |x: usize, y: usize| {
            if leq[x][y] { x } else if leq[y][x] { y } else { 0 }
        };
        let join = |x: usize, y: usize| {
            if leq[x][y] { y } else if leq[y][x] { x } else { 4 }
        };
        let meet_t: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| meet(x, y)).collect()).collect();
        let join_t: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| join(x, y)).collect()).collect();
        FinDistLattice::try_new(labels, leq.clone(), meet_t, join_t, 0, 4)
    }

    pub(crate) fn pentagon_n5() -> Result<FinDistLattice, OrderError> {
        // 0 < a < c < 1 and 0 < b < 1, with b incomparable to a and c
        let labels: Vec<String> = ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
        let n = 5;
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
            leq[0][i] = true;
            leq[i][4] = true;
        }
        leq[1][3] = true; // a < c
        let meet = |x: usize, y: usize| {
            if leq[x][y] { x } else if leq[y][x] { y } else { 0 }
        };
        let join = |x: usize, y: usize| {
            if leq[x][y] { y } else if leq[y][x] { x } else { 4 }
        };
        let meet_t: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| meet(x, y)).collect()).collect();
        let join_t: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| join(x, y)).collect()).collect();
        FinDistLattice::try_new(labels, leq.clone(), meet_t, join_t, 0, 4)
    }

    #[test]
    fn validator_accepts_boolean_square() {
        let b = FinDistLattice::boolean(2);
        assert_eq!(b.len(), 4);
        // revalidate the constructed tables through the checked path
        let leq: Vec<Vec<bool>> = (0..4).map(|i| (0..4).map(|j| b.leq(i, j)).collect()).collect();
        let meet: Vec<Vec<usize>> = (0..4).map(|i| (0..4).map(|j| b.meet(i, j)).collect()).collect();
        let join: Vec<Vec<usize>> = (0..4).map(|i| (0..4).map(|j| b.join(i, j)).collect()).collect();
        assert!(validate_distributive(b.labels().to_vec(), leq, meet, join, b.bottom(), b.top()).is_ok());
    }

    #[test]
    fn validator_rejects_m3_and_n5() {
        match diamond_m3() {
            Err(OrderError::LatticeDefect { law, .. }) => assert_eq!(law, "distributivity"),
            other => panic!("expected distributivity defect, got {other:?}"),
        }
        match pentagon_n5() {
            Err(OrderError::LatticeDefect { law, .. }) => assert_eq!(law, "distributivity"),
            other => panic!("expected distributivity defect, got {other:?}"),
        }
    }

    #[test]
    fn join_irreducibles_examples() {
        let (p, _) = join_irreducibles(&FinDistLattice::boolean(2));
        assert_eq!(p.len(), 2);
        assert!(!p.leq(0, 1) && !p.leq(1, 0));
        let (p, _) = join_irreducibles(&FinDistLattice::chain(3));
        assert_eq!(p.len(), 2);
        assert!(p.leq(0, 1));
        let (p, _) = join_irreducibles(&FinDistLattice::boolean(3));
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn downsets_examples() {
        let two = downsets(&FinPoset::antichain(2)).unwrap();
        assert!(two.is_isomorphic(&FinDistLattice::boolean(2)));
        let one = downsets(&FinPoset::antichain(0)).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.bottom(), one.top());
        let three = downsets(&FinPoset::chain(2)).unwrap();
        assert!(three.is_isomorphic(&FinDistLattice::chain(3)));
    }

    #[test]
    fn poset_limit_examples() {
        // one-object diagram: limit is the object itself
        let p = FinPoset::chain(3);
        let d = Diagram::<MonotoneMap>::try_new(
            FinCategory::discrete(1),
            vec![p.clone()],
            BTreeMap::new(),
        )
        .unwrap();
        let (lim, proj) = poset_limit(&d).unwrap();
        assert_eq!(lim.len(), 3);
        assert_eq!(proj.len(), 1);
        // empty diagram: one-point poset
        let d = Diagram::<MonotoneMap>::try_new(FinCategory::discrete(0), vec![], BTreeMap::new())
            .unwrap();
        let (lim, _) = poset_limit(&d).unwrap();
        assert_eq!(lim.len(), 1);
        // product of antichains
        let d = Diagram::<MonotoneMap>::try_new(
            FinCategory::discrete(2),
            vec![FinPoset::antichain(2), FinPoset::antichain(3)],
            BTreeMap::new(),
        )
        .unwrap();
        let (lim, proj) = poset_limit(&d).unwrap();
        assert_eq!(lim.len(), 6);
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(lim.leq(i, j), i == j);
            }
        }
        for pr in &proj {
            MonotoneMap::try_new(pr.source.clone(), pr.target.clone(), pr.map.clone()).unwrap();
        }
    }

    #[test]
    fn dlat_colimit_examples() {
        // one-object diagram: the object itself
        let b = FinDistLattice::boolean(2);
        let d = Diagram::<DLatHom>::try_new(
            FinCategory::discrete(1),
            vec![b.clone()],
            BTreeMap::new(),
        )
        .unwrap();
        let (c, cocone) = dlat_colimit(&d).unwrap();
        assert!(c.is_isomorphic(&b));
        assert_eq!(cocone.len(), 1);
        // coproduct of 2^2 and 2^2 is 2^4
        let d = Diagram::<DLatHom>::try_new(
            FinCategory::discrete(2),
            vec![FinDistLattice::boolean(2), FinDistLattice::boolean(2)],
            BTreeMap::new(),
        )
        .unwrap();
        let (c, _) = dlat_colimit(&d).unwrap();
        assert_eq!(c.len(), 16);
        assert!(c.is_isomorphic(&FinDistLattice::boolean(4)));
        // empty diagram: the two-element lattice
        let d = Diagram::<DLatHom>::try_new(FinCategory::discrete(0), vec![], BTreeMap::new())
            .unwrap();
        let (c, _) = dlat_colimit(&d).unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn birkhoff_round_trip_small() {
        for l in [
            FinDistLattice::boolean(1),
            FinDistLattice::boolean(2),
            FinDistLattice::boolean(3),
            FinDistLattice::chain(1),
            FinDistLattice::chain(4),
        ] {
            let (p, _) = join_irreducibles(&l);
            let round = downsets(&p).unwrap();
            assert!(round.is_isomorphic(&l));
        }
    }

    #[test]
    fn isomorphism_distinguishes() {
        assert!(!FinDistLattice::chain(4).is_isomorphic(&FinDistLattice::boolean(2)));
        assert!(FinDistLattice::chain(2).is_isomorphic(&FinDistLattice::boolean(1)));
    }
}
