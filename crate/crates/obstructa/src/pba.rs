//! Partial Boolean algebras: a carrier with a reflexive symmetric
//! commeasurability relation, total negation, and meet/join defined exactly
//! on commeasurable pairs, such that every commeasurable clique lives in a
//! total Boolean subalgebra. The validator checks that axiom literally on
//! the maximal cliques of the relation. Orthomodular lattices sit on top:
//! their commeasurability relation induces a partial Boolean algebra.

use crate::boolean::{bool_two, BoolHom, BooleanError, FinBoolAlg};
use crate::cat::{CatError, Diagram, FinCategory};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbaError {
    #[error("malformed tables: {0}")]
    Malformed(String),
    #[error("commeasurability not {0}")]
    CommRelation(String),
    #[error("operation {op} defined off the commeasurability relation at ({x},{y})")]
    OffRelation { op: String, x: usize, y: usize },
    #[error("operation {op} missing on commeasurable pair ({x},{y})")]
    MissingOp { op: String, x: usize, y: usize },
    #[error("bounds not commeasurable with element {0}")]
    BoundsComm(usize),
    #[error("maximal clique {clique:?} not closed: {reason}")]
    CliqueNotClosed { clique: Vec<usize>, reason: String },
    #[error("maximal clique {clique:?} violates Boolean law {law} at {witness}")]
    CliqueNotBoolean {
        clique: Vec<usize>,
        law: String,
        witness: String,
    },
    #[error("morphism violates `{bullet}` at {witness}")]
    HomBullet { bullet: String, witness: String },
    #[error("not an orthomodular lattice: {0}")]
    NotOrthomodular(String),
    #[error("not an ortholattice: {0}")]
    NotOrtholattice(String),
    #[error(transparent)]
    Boolean(#[from] BooleanError),
    #[error(transparent)]
    Diagram(#[from] CatError),
}

/// Partial operation tables are stored sparsely, keyed by unordered
/// commeasurable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialBooleanAlgebra {
    pub labels: Vec<String>,
    pub comm: Vec<Vec<bool>>,
    pub zero: usize,
    pub one: usize,
    pub neg: Vec<usize>,
    meet: BTreeMap<(usize, usize), usize>,
    join: BTreeMap<(usize, usize), usize>,
}

fn key(x: usize, y: usize) -> (usize, usize) {
    (x.min(y), x.max(y))
}

impl PartialBooleanAlgebra {
    pub fn new(
        labels: Vec<String>,
        comm: Vec<Vec<bool>>,
        zero: usize,
        one: usize,
        neg: Vec<usize>,
        meet: BTreeMap<(usize, usize), usize>,
        join: BTreeMap<(usize, usize), usize>,
    ) -> Self {
        PartialBooleanAlgebra {
            labels,
            comm,
            zero,
            one,
            neg,
            meet,
            join,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn commeasurable(&self, x: usize, y: usize) -> bool {
        self.comm[x][y]
    }

    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        self.meet.get(&key(x, y)).copied()
    }

    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        self.join.get(&key(x, y)).copied()
    }

    /// A total Boolean algebra viewed as a partial one (commeasurability is
    /// everything).
    pub fn from_total(b: &FinBoolAlg) -> Self {
        let elems = b.elements();
        let index: BTreeMap<u64, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let n = elems.len();
        let mut meet = BTreeMap::new();
        let mut join = BTreeMap::new();
        for i in 0..n {
            for j in i..n {
                meet.insert((i, j), index[&b.meet(elems[i], elems[j])]);
                join.insert((i, j), index[&b.join(elems[i], elems[j])]);
            }
        }
        PartialBooleanAlgebra {
            labels: elems.iter().map(|e| format!("{e:b}")).collect(),
            comm: vec![vec![true; n]; n],
            zero: index[&b.zero()],
            one: index[&b.one()],
            neg: elems.iter().map(|&e| index[&b.complement(e)]).collect(),
            meet,
            join,
        }
    }
}

/// Maximal cliques of the commeasurability graph, Bron–Kerbosch with
/// pivoting, output sorted for determinism.
pub fn maximal_cliques(p: &PartialBooleanAlgebra) -> Vec<Vec<usize>> {
    let n = p.len();
    let nbrs: Vec<BTreeSet<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && p.comm[i][j]).collect())
        .collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    fn bk(
        nbrs: &[BTreeSet<usize>],
        r: &mut Vec<usize>,
        mut p_set: BTreeSet<usize>,
        mut x_set: BTreeSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p_set.is_empty() && x_set.is_empty() {
            let mut clique = r.clone();
            clique.sort_unstable();
            out.push(clique);
            return;
        }
        let pivot = p_set
            .iter()
            .chain(x_set.iter())
            .copied()
            .max_by_key(|&u| nbrs[u].len())
            .unwrap();
        let candidates: Vec<usize> = p_set.difference(&nbrs[pivot]).copied().collect();
        for v in candidates {
            r.push(v);
            bk(
                nbrs,
                r,
                p_set.intersection(&nbrs[v]).copied().collect(),
                x_set.intersection(&nbrs[v]).copied().collect(),
                out,
            );
            r.pop();
            p_set.remove(&v);
            x_set.insert(v);
        }
    }
    bk(
        &nbrs,
        &mut Vec::new(),
        (0..n).collect(),
        BTreeSet::new(),
        &mut out,
    );
    out.sort();
    out
}

#[derive(Debug, Clone)]
pub struct PbaValidation {
    pub maximal_cliques: Vec<Vec<usize>>,
}

/// Validates the partial-Boolean-algebra axioms. The clique axiom is
/// checked on every maximal clique of the commeasurability graph: each
/// must contain the bounds, be closed under negation and the partial
/// operations, and satisfy the Boolean algebra laws under them.
pub fn validate_pba(p: &PartialBooleanAlgebra) -> Result<PbaValidation, PbaError> {
    let n = p.len();
    if n == 0 {
        return Err(PbaError::Malformed("empty carrier".into()));
    }
    if p.comm.len() != n
        || p.comm.iter().any(|r| r.len() != n)
        || p.neg.len() != n
        || p.zero >= n
        || p.one >= n
        || p.neg.iter().any(|&x| x >= n)
    {
        return Err(PbaError::Malformed("table sizes".into()));
    }
    for i in 0..n {
        if !p.comm[i][i] {
            return Err(PbaError::CommRelation("reflexive".into()));
        }
        for j in 0..n {
            if p.comm[i][j] != p.comm[j][i] {
                return Err(PbaError::CommRelation("symmetric".into()));
            }
        }
        if !p.comm[p.zero][i] || !p.comm[p.one][i] {
            return Err(PbaError::BoundsComm(i));
        }
    }
    // partial operations defined exactly on commeasurable pairs
    for i in 0..n {
        for j in i..n {
            let com = p.comm[i][j];
            for (name, table) in [("meet", &p.meet), ("join", &p.join)] {
                match (com, table.contains_key(&(i, j))) {
                    (true, false) => {
                        return Err(PbaError::MissingOp {
                            op: name.into(),
                            x: i,
                            y: j,
                        })
                    }
                    (false, true) => {
                        return Err(PbaError::OffRelation {
                            op: name.into(),
                            x: i,
                            y: j,
                        })
                    }
                    _ => {}
                }
            }
        }
    }
    for (&(i, j), &v) in p.meet.iter().chain(p.join.iter()) {
        if i > j || v >= n {
            return Err(PbaError::Malformed(format!("bad table entry ({i},{j})")));
        }
    }
    let cliques = maximal_cliques(p);
    for clique in &cliques {
        check_clique_boolean(p, clique)?;
    }
    Ok(PbaValidation {
        maximal_cliques: cliques,
    })
}

fn check_clique_boolean(p: &PartialBooleanAlgebra, clique: &[usize]) -> Result<(), PbaError> {
    let inside: BTreeSet<usize> = clique.iter().copied().collect();
    let closed = |reason: String| PbaError::CliqueNotClosed {
        clique: clique.to_vec(),
        reason,
    };
    if !inside.contains(&p.zero) || !inside.contains(&p.one) {
        return Err(closed("bounds missing".into()));
    }
    for &x in clique {
        if !inside.contains(&p.neg[x]) {
            return Err(closed(format!("negation of {x} escapes")));
        }
        for &y in clique {
            let m = p
                .meet(x, y)
                .ok_or_else(|| closed(format!("meet undefined on ({x},{y})")))?;
            let j = p
                .join(x, y)
                .ok_or_else(|| closed(format!("join undefined on ({x},{y})")))?;
            if !inside.contains(&m) || !inside.contains(&j) {
                return Err(closed(format!("operation result escapes on ({x},{y})")));
            }
        }
    }
    let law = |name: &str, witness: Vec<usize>| PbaError::CliqueNotBoolean {
        clique: clique.to_vec(),
        law: name.into(),
        witness: format!("{witness:?}"),
    };
    let meet = |x: usize, y: usize| p.meet(x, y).unwrap();
    let join = |x: usize, y: usize| p.join(x, y).unwrap();
    for &x in clique {
        if meet(x, p.one) != x || join(x, p.zero) != x {
            return Err(law("identity", vec![x]));
        }
        if meet(x, p.neg[x]) != p.zero || join(x, p.neg[x]) != p.one {
            return Err(law("complement", vec![x]));
        }
        if meet(x, x) != x || join(x, x) != x {
            return Err(law("idempotence", vec![x]));
        }
        for &y in clique {
            if meet(x, y) != meet(y, x) || join(x, y) != join(y, x) {
                return Err(law("commutativity", vec![x, y]));
            }
            if meet(x, join(x, y)) != x || join(x, meet(x, y)) != x {
                return Err(law("absorption", vec![x, y]));
            }
            for &z in clique {
                if meet(meet(x, y), z) != meet(x, meet(y, z)) {
                    return Err(law("meet associativity", vec![x, y, z]));
                }
                if join(join(x, y), z) != join(x, join(y, z)) {
                    return Err(law("join associativity", vec![x, y, z]));
                }
                if meet(x, join(y, z)) != join(meet(x, y), meet(x, z)) {
                    return Err(law("distributivity", vec![x, y, z]));
                }
            }
        }
    }
    Ok(())
}

/// A map of partial Boolean algebras, owning its endpoints.
#[derive(Debug, Clone)]
pub struct PbaHom {
    pub source: PartialBooleanAlgebra,
    pub target: PartialBooleanAlgebra,
    pub map: Vec<usize>,
}

/// The four morphism laws: commeasurability preserved, bounds preserved,
/// partial meets/joins preserved on commeasurable pairs, negation
/// preserved everywhere.
pub fn validate_pba_hom(f: &PbaHom) -> Result<(), PbaError> {
    let bullet = |name: &str, witness: String| PbaError::HomBullet {
        bullet: name.into(),
        witness,
    };
    let (s, t) = (&f.source, &f.target);
    if f.map.len() != s.len() || f.map.iter().any(|&x| x >= t.len()) {
        return Err(bullet("totality", "()".into()));
    }
    if f.map[s.zero] != t.zero || f.map[s.one] != t.one {
        return Err(bullet("f(0) = 0 and f(1) = 1", "bounds".into()));
    }
    for x in 0..s.len() {
        if f.map[s.neg[x]] != t.neg[f.map[x]] {
            return Err(bullet("f(¬a) = ¬f(a)", format!("a = {x}")));
        }
        for y in 0..s.len() {
            if !s.comm[x][y] {
                continue;
            }
            if !t.comm[f.map[x]][f.map[y]] {
                return Err(bullet("f(a) ⊙ f(b) whenever a ⊙ b", format!("({x},{y})")));
            }
            let sm = s.meet(x, y).expect("meet on comm pair");
            let sj = s.join(x, y).expect("join on comm pair");
            let tm = t.meet(f.map[x], f.map[y]).expect("target meet");
            let tj = t.join(f.map[x], f.map[y]).expect("target join");
            if f.map[sm] != tm {
                return Err(bullet("f(a ∧ b) = f(a) ∧ f(b)", format!("({x},{y})")));
            }
            if f.map[sj] != tj {
                return Err(bullet("f(a ∨ b) = f(a) ∨ f(b)", format!("({x},{y})")));
            }
        }
    }
    Ok(())
}

/// All morphisms P → 2, enumerated as compatible families of characters of
/// the maximal total subalgebras, backtracking clique by clique. Every
/// candidate is re-validated as a morphism. Output sorted lexicographically
/// over element indices.
pub fn two_valued_morphisms(p: &PartialBooleanAlgebra) -> Result<Vec<Vec<bool>>, PbaError> {
    let validation = validate_pba(p)?;
    let cliques = &validation.maximal_cliques;
    // characters of a finite Boolean algebra correspond to its atoms
    let clique_atoms: Vec<Vec<usize>> = cliques.iter().map(|c| atoms_of(p, c)).collect();
    let mut results: Vec<Vec<bool>> = Vec::new();
    let mut assign: Vec<Option<bool>> = vec![None; p.len()];
    fn place(
        p: &PartialBooleanAlgebra,
        clique: &[usize],
        atom: usize,
        assign: &mut [Option<bool>],
        trail: &mut Vec<usize>,
    ) -> bool {
        for &x in clique {
            let value = p.meet(atom, x) == Some(atom);
            match assign[x] {
                Some(v) if v != value => return false,
                Some(_) => {}
                None => {
                    assign[x] = Some(value);
                    trail.push(x);
                }
            }
        }
        true
    }
    fn rec(
        p: &PartialBooleanAlgebra,
        cliques: &[Vec<usize>],
        clique_atoms: &[Vec<usize>],
        k: usize,
        assign: &mut Vec<Option<bool>>,
        results: &mut Vec<Vec<bool>>,
    ) {
        if k == cliques.len() {
            let full: Vec<bool> = assign.iter().map(|a| a.expect("cliques cover")).collect();
            results.push(full);
            return;
        }
        for &atom in &clique_atoms[k] {
            let mut trail = Vec::new();
            if place(p, &cliques[k], atom, assign, &mut trail) {
                rec(p, cliques, clique_atoms, k + 1, assign, results);
            }
            for x in trail {
                assign[x] = None;
            }
        }
    }
    rec(
        p,
        cliques,
        &clique_atoms,
        0,
        &mut assign,
        &mut results,
    );
    results.sort();
    results.dedup();
    let two = PartialBooleanAlgebra::from_total(&bool_two());
    for r in &results {
        let hom = PbaHom {
            source: p.clone(),
            target: two.clone(),
            map: r.iter().map(|&b| usize::from(b)).collect(),
        };
        validate_pba_hom(&hom)?;
    }
    Ok(results)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubalgebraMode {
    /// Maximal total subalgebras plus all pairwise intersections.
    Maximal,
    /// Every total subalgebra (the literal diagram of total subalgebras).
    Exhaustive,
}

/// The diagram of total subalgebras of P with inclusion arrows, each node
/// converted to its atom-set presentation. Returns the diagram plus each
/// node's carrier subset.
pub fn total_subalgebra_diagram(
    p: &PartialBooleanAlgebra,
    mode: SubalgebraMode,
) -> Result<(Diagram<BoolHom>, Vec<Vec<usize>>), PbaError> {
    let validation = validate_pba(p)?;
    let mut nodes: BTreeSet<Vec<usize>> = BTreeSet::new();
    match mode {
        SubalgebraMode::Maximal => {
            for c in &validation.maximal_cliques {
                nodes.insert(c.clone());
            }
            let cliques = validation.maximal_cliques.clone();
            for i in 0..cliques.len() {
                for j in (i + 1)..cliques.len() {
                    let a: BTreeSet<usize> = cliques[i].iter().copied().collect();
                    let b: BTreeSet<usize> = cliques[j].iter().copied().collect();
                    let inter: Vec<usize> = a.intersection(&b).copied().collect();
                    nodes.insert(inter);
                }
            }
        }
        SubalgebraMode::Exhaustive => {
            for c in &validation.maximal_cliques {
                for sub in subalgebras_of_clique(p, c) {
                    nodes.insert(sub);
                }
            }
        }
    }
    let node_list: Vec<Vec<usize>> = nodes.into_iter().collect();
    diagram_from_carriers(p, node_list)
}

/// All total subalgebras of one maximal clique, via partitions of its
/// atoms: every subalgebra of a finite Boolean algebra is the span of a
/// partition into blocks.
fn subalgebras_of_clique(p: &PartialBooleanAlgebra, clique: &[usize]) -> Vec<Vec<usize>> {
    let atoms = atoms_of(p, clique);
    let mut out = Vec::new();
    for partition in set_partitions(atoms.len()) {
        // block joins
        let mut blocks: Vec<usize> = Vec::new();
        for block in &partition {
            let j = block
                .iter()
                .fold(p.zero, |acc, &i| p.join(acc, atoms[i]).expect("clique join"));
            blocks.push(j);
        }
        // span: joins of all subsets of blocks
        let mut span = BTreeSet::new();
        for mask in 0u32..(1 << blocks.len()) {
            let e = (0..blocks.len())
                .filter(|&i| mask >> i & 1 == 1)
                .fold(p.zero, |acc, i| p.join(acc, blocks[i]).expect("clique join"));
            span.insert(e);
        }
        out.push(span.into_iter().collect());
    }
    out
}

fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for mut smaller in set_partitions(n - 1) {
        for i in 0..smaller.len() {
            smaller[i].push(n - 1);
            out.push(smaller.clone());
            smaller[i].pop();
        }
        smaller.push(vec![n - 1]);
        out.push(smaller.clone());
        smaller.pop();
    }
    out
}

fn atoms_of(p: &PartialBooleanAlgebra, carrier: &[usize]) -> Vec<usize> {
    carrier
        .iter()
        .copied()
        .filter(|&a| {
            a != p.zero
                && carrier.iter().all(|&b| {
                    b == a || b == p.zero || p.meet(a, b) != Some(b)
                })
        })
        .collect()
}

/// Builds the inclusion-shaped Boolean diagram over the given carrier
/// subsets (each must be a total subalgebra).
pub fn diagram_from_carriers(
    p: &PartialBooleanAlgebra,
    node_list: Vec<Vec<usize>>,
) -> Result<(Diagram<BoolHom>, Vec<Vec<usize>>), PbaError> {
    let mut algebras = Vec::new();
    let mut atom_lists = Vec::new();
    for carrier in &node_list {
        let atoms = atoms_of(p, carrier);
        let labels = atoms.iter().map(|&a| p.labels[a].clone()).collect();
        algebras.push(FinBoolAlg::with_labels(labels)?);
        atom_lists.push(atoms);
    }
    let k = node_list.len();
    let labels: Vec<String> = (0..k).map(|i| format!("S{i}")).collect();
    let leq: Vec<Vec<bool>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let a: BTreeSet<usize> = node_list[i].iter().copied().collect();
                    let b: BTreeSet<usize> = node_list[j].iter().copied().collect();
                    a.is_subset(&b)
                })
                .collect()
        })
        .collect();
    let shape = FinCategory::from_poset(&labels, &leq)?;
    let mut arrows = BTreeMap::new();
    for (m, info) in shape.morphisms.iter().enumerate() {
        if shape.identity[info.src] == m {
            continue;
        }
        let (s, t) = (info.src, info.tgt);
        // dual atom map: each atom of the bigger algebra sits under exactly
        // one atom of the smaller one
        let atom_map: Vec<usize> = atom_lists[t]
            .iter()
            .map(|&ta| {
                atom_lists[s]
                    .iter()
                    .position(|&sa| p.meet(ta, sa) == Some(ta))
                    .expect("inclusion refines atoms")
            })
            .collect();
        arrows.insert(
            m,
            BoolHom::new(algebras[s].clone(), algebras[t].clone(), atom_map)?,
        );
    }
    let diagram = Diagram::try_new(shape, algebras, arrows)?;
    Ok((diagram, node_list))
}

/// An orthocomplemented lattice given by its order and complement table;
/// meets and joins are derived (and required to exist).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoLattice {
    pub labels: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub perp: Vec<usize>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl OrthoLattice {
    /// Validates lattice structure and the three orthocomplement axioms.
    /// Orthomodularity (symmetry of commeasurability) is checked separately
    /// by `oml_validate`.
    pub fn try_new(
        labels: Vec<String>,
        leq: Vec<Vec<bool>>,
        perp: Vec<usize>,
    ) -> Result<Self, PbaError> {
        let n = labels.len();
        let fail = |m: String| Err(PbaError::NotOrtholattice(m));
        if leq.len() != n || perp.len() != n || perp.iter().any(|&x| x >= n) {
            return fail("table sizes".into());
        }
        crate::order::FinPoset::try_new(labels.clone(), leq.clone())
            .map_err(|e| PbaError::NotOrtholattice(format!("{e}")))?;
        let glb = |x: usize, y: usize| -> Option<usize> {
            let lbs: Vec<usize> = (0..n).filter(|&z| leq[z][x] && leq[z][y]).collect();
            lbs.iter().copied().find(|&m| lbs.iter().all(|&l| leq[l][m]))
        };
        let lub = |x: usize, y: usize| -> Option<usize> {
            let ubs: Vec<usize> = (0..n).filter(|&z| leq[x][z] && leq[y][z]).collect();
            ubs.iter().copied().find(|&j| ubs.iter().all(|&u| leq[j][u]))
        };
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                match (glb(x, y), lub(x, y)) {
                    (Some(m), Some(j)) => {
                        meet[x][y] = m;
                        join[x][y] = j;
                    }
                    _ => return fail(format!("meet or join missing at ({x},{y})")),
                }
            }
        }
        let Some(bottom) = (0..n).find(|&b| (0..n).all(|x| leq[b][x])) else {
            return fail("no bottom".into());
        };
        let Some(top) = (0..n).find(|&t| (0..n).all(|x| leq[x][t])) else {
            return fail("no top".into());
        };
        for a in 0..n {
            if perp[perp[a]] != a {
                return fail(format!("involution fails at {a}"));
            }
            if meet[a][perp[a]] != bottom || join[a][perp[a]] != top {
                return fail(format!("complement laws fail at {a}"));
            }
            for b in 0..n {
                if leq[a][b] && !leq[perp[b]][perp[a]] {
                    return fail(format!("antitone fails at ({a},{b})"));
                }
            }
        }
        Ok(OrthoLattice {
            labels,
            leq,
            perp,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x][y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x][y]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// MO2: the six-element orthomodular lattice 0, a, a⊥, b, b⊥, 1 with
    /// the two middle pairs incomparable.
    pub fn mo2() -> Self {
        let labels: Vec<String> = ["0", "a", "a⊥", "b", "b⊥", "1"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let n = 6;
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
            leq[0][i] = true;
            leq[i][5] = true;
        }
        let perp = vec![5, 2, 1, 4, 3, 0];
        OrthoLattice::try_new(labels, leq, perp).expect("MO2 is an ortholattice")
    }
}

/// a ⊙ b in an ortholattice: a = (a∧b) ∨ (a∧b⊥).
pub fn oml_commeasurable(l: &OrthoLattice, a: usize, b: usize) -> bool {
    l.join(l.meet(a, b), l.meet(a, l.perp[b])) == a
}

/// Orthomodular = the commeasurability relation is symmetric; reports the
/// first asymmetric pair otherwise.
pub fn oml_validate(l: &OrthoLattice) -> Result<(), PbaError> {
    for a in 0..l.len() {
        for b in 0..l.len() {
            if oml_commeasurable(l, a, b) != oml_commeasurable(l, b, a) {
                return Err(PbaError::NotOrthomodular(format!(
                    "commeasurability asymmetric at ({}, {})",
                    l.labels[a], l.labels[b]
                )));
            }
        }
    }
    Ok(())
}

/// The partial Boolean algebra induced by an orthomodular lattice:
/// commeasurability from the lattice relation, negation from the
/// orthocomplement, operations restricted to commeasurable pairs.
pub fn oml_to_pba(l: &OrthoLattice) -> Result<PartialBooleanAlgebra, PbaError> {
    oml_validate(l)?;
    let n = l.len();
    let comm: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| oml_commeasurable(l, a, b)).collect())
        .collect();
    let mut meet = BTreeMap::new();
    let mut join = BTreeMap::new();
    for a in 0..n {
        for b in a..n {
            if comm[a][b] {
                meet.insert((a, b), l.meet(a, b));
                join.insert((a, b), l.join(a, b));
            }
        }
    }
    let p = PartialBooleanAlgebra {
        labels: l.labels.clone(),
        comm,
        zero: l.bottom(),
        one: l.top(),
        neg: l.perp.clone(),
        meet,
        join,
    };
    validate_pba(&p)?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_algebra_validates() {
        let p = PartialBooleanAlgebra::from_total(&FinBoolAlg::new(2).unwrap());
        let v = validate_pba(&p).unwrap();
        assert_eq!(v.maximal_cliques.len(), 1);
        assert_eq!(v.maximal_cliques[0].len(), 4);
    }

    #[test]
    fn deleted_join_entry_rejected() {
        let mut p = PartialBooleanAlgebra::from_total(&FinBoolAlg::new(2).unwrap());
        let k = *p.join.keys().next().unwrap();
        p.join.remove(&k);
        assert!(matches!(
            validate_pba(&p),
            Err(PbaError::MissingOp { .. })
        ));
    }

    #[test]
    fn hom_examples() {
        let p = PartialBooleanAlgebra::from_total(&FinBoolAlg::new(1).unwrap());
        let id = PbaHom {
            source: p.clone(),
            target: p.clone(),
            map: vec![0, 1],
        };
        assert!(validate_pba_hom(&id).is_ok());
        let constant = PbaHom {
            source: p.clone(),
            target: p.clone(),
            map: vec![p.one, p.one],
        };
        match validate_pba_hom(&constant) {
            Err(PbaError::HomBullet { bullet, .. }) => assert!(bullet.contains("f(0)")),
            other => panic!("expected bullet failure, got {other:?}"),
        }
    }

    #[test]
    fn mo2_examples() {
        let l = OrthoLattice::mo2();
        assert!(oml_validate(&l).is_ok());
        // every pair in a Boolean block commeasurable; a and b not
        let (a, ap, b) = (1, 2, 3);
        assert!(oml_commeasurable(&l, a, ap));
        assert!(!oml_commeasurable(&l, a, b));
        // a <= b implies commeasurable
        assert!(oml_commeasurable(&l, 0, b));
        assert!(oml_commeasurable(&l, a, 5));
        let p = oml_to_pba(&l).unwrap();
        let v = validate_pba(&p).unwrap();
        assert_eq!(v.maximal_cliques.len(), 2);
        for c in &v.maximal_cliques {
            assert_eq!(c.len(), 4);
        }
        // MO2 has 4 two-valued morphisms (independent atom choice per block)
        assert_eq!(two_valued_morphisms(&p).unwrap().len(), 4);
    }

    #[test]
    fn boolean_lattice_is_totally_commeasurable() {
        // the 2^2 ortholattice: all pairs commeasurable
        let labels: Vec<String> = ["0", "x", "x⊥", "1"].iter().map(|s| s.to_string()).collect();
        let mut leq = vec![vec![false; 4]; 4];
        for i in 0..4 {
            leq[i][i] = true;
            leq[0][i] = true;
            leq[i][3] = true;
        }
        let perp = vec![3, 2, 1, 0];
        let l = OrthoLattice::try_new(labels, leq, perp).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert!(oml_commeasurable(&l, a, b));
            }
        }
        let p = oml_to_pba(&l).unwrap();
        assert_eq!(validate_pba(&p).unwrap().maximal_cliques.len(), 1);
    }

    #[test]
    fn subalgebra_diagram_of_total_algebra() {
        let p = PartialBooleanAlgebra::from_total(&FinBoolAlg::new(2).unwrap());
        let (d, carriers) = total_subalgebra_diagram(&p, SubalgebraMode::Maximal).unwrap();
        assert_eq!(carriers.len(), 1);
        assert_eq!(d.nodes.len(), 1);
        assert_eq!(d.nodes[0].atom_count(), 2);
        let (d, carriers) = total_subalgebra_diagram(&p, SubalgebraMode::Exhaustive).unwrap();
        // subalgebras of 2^2: {0,1}, {0,x,x',1}=whole, and... partitions of
        // 2 atoms: {{a},{b}} (whole) and {{a,b}} (trivial) = 2
        assert_eq!(carriers.len(), 2);
        assert_eq!(d.nodes.len(), 2);
    }

    #[test]
    fn two_valued_morphisms_of_total() {
        let p = PartialBooleanAlgebra::from_total(&FinBoolAlg::new(3).unwrap());
        assert_eq!(two_valued_morphisms(&p).unwrap().len(), 3);
    }
}
