//! Frame complexes: rays of ℂⁿ grouped into orthonormal bases, validated
//! with exact arithmetic, pasted into a finite fragment of the projection
//! partial Boolean algebra, and searched for 0/1 colorings with exactly one
//! 1 per basis. The CNF export keeps one variable per ray; subspaces shared
//! between bases become biconditional clauses rather than extra variables.

use crate::boolean::{to_dimacs, Lit, Presentation};
use crate::cat::FinCategory;
use crate::exactlin::{inner, rref, ExactLinError, RayVector, Scalar, SubspaceClass};
use crate::pba::PartialBooleanAlgebra;
use crate::spectra::{AlgHom, AlgebraDiagram, CommAlgObject};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("config error at {pointer}: {message}")]
    Config { pointer: String, message: String },
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("ray {index} invalid: {source}")]
    BadRay {
        index: usize,
        source: ExactLinError,
    },
    #[error("rays {first} and {second} define the same subspace")]
    DuplicateRay { first: usize, second: usize },
    #[error("basis {basis} has size {size}, expected the dimension {dim}")]
    BasisSize {
        basis: usize,
        size: usize,
        dim: usize,
    },
    #[error("basis {basis} references unknown ray {index}")]
    BasisIndex { basis: usize, index: usize },
    #[error("basis {basis} repeats ray {index}")]
    BasisRepeat { basis: usize, index: usize },
    #[error("bases {first} and {second} are identical")]
    DuplicateBasis { first: usize, second: usize },
    #[error("rays {i} and {j} in basis {basis} are not orthogonal")]
    NotOrthogonal { basis: usize, i: usize, j: usize },
    #[error("ray {0} belongs to no basis")]
    UncoveredRay(usize),
    #[error(transparent)]
    ExactLin(#[from] ExactLinError),
    #[error("internal: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldTag {
    Q,
    QSqrt2,
}

impl FieldTag {
    pub fn name(&self) -> &'static str {
        match self {
            FieldTag::Q => "Q",
            FieldTag::QSqrt2 => "Q(sqrt2)",
        }
    }
}

/// A configuration of rays grouped into orthonormal bases. Rays are held
/// in canonical projective form; validation decides every invariant with
/// exact arithmetic.
#[derive(Debug, Clone)]
pub struct FrameComplex {
    pub dim: usize,
    pub field: FieldTag,
    pub rays: Vec<RayVector>,
    pub bases: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct ComplexReport {
    pub dimension: usize,
    pub ray_count: usize,
    pub basis_count: usize,
    /// The theorems need n ≥ 3; reported, never enforced.
    pub meets_dimension_hypothesis: bool,
}

/// Accepts iff every invariant holds: bases of size n with exactly
/// orthogonal distinct rays, no duplicate subspaces among the rays, every
/// ray covered by some basis.
pub fn validate_complex(c: &FrameComplex) -> Result<ComplexReport, ComplexError> {
    if c.dim < 2 {
        return Err(ComplexError::DimensionTooSmall(c.dim));
    }
    for (i, r) in c.rays.iter().enumerate() {
        if r.dim() != c.dim {
            return Err(ComplexError::BadRay {
                index: i,
                source: ExactLinError::DimensionMismatch {
                    left: r.dim(),
                    right: c.dim,
                },
            });
        }
        if c.field == FieldTag::Q && r.coords().iter().any(|s| !num::traits::Zero::is_zero(s.irr_part())) {
            return Err(ComplexError::Config {
                pointer: format!("/rays/{i}"),
                message: "field Q admits no irrational coordinates".into(),
            });
        }
    }
    for i in 0..c.rays.len() {
        for j in (i + 1)..c.rays.len() {
            if c.rays[i] == c.rays[j] {
                return Err(ComplexError::DuplicateRay {
                    first: i,
                    second: j,
                });
            }
        }
    }
    for (b, basis) in c.bases.iter().enumerate() {
        if basis.len() != c.dim {
            return Err(ComplexError::BasisSize {
                basis: b,
                size: basis.len(),
                dim: c.dim,
            });
        }
        let mut seen = BTreeSet::new();
        for &r in basis {
            if r >= c.rays.len() {
                return Err(ComplexError::BasisIndex { basis: b, index: r });
            }
            if !seen.insert(r) {
                return Err(ComplexError::BasisRepeat { basis: b, index: r });
            }
        }
        for (pi, &i) in basis.iter().enumerate() {
            for &j in basis.iter().skip(pi + 1) {
                if !inner(&c.rays[i], &c.rays[j])?.is_zero() {
                    return Err(ComplexError::NotOrthogonal { basis: b, i, j });
                }
            }
        }
    }
    for b1 in 0..c.bases.len() {
        for b2 in (b1 + 1)..c.bases.len() {
            let s1: BTreeSet<usize> = c.bases[b1].iter().copied().collect();
            let s2: BTreeSet<usize> = c.bases[b2].iter().copied().collect();
            if s1 == s2 {
                return Err(ComplexError::DuplicateBasis {
                    first: b1,
                    second: b2,
                });
            }
        }
    }
    let covered: BTreeSet<usize> = c.bases.iter().flatten().copied().collect();
    for i in 0..c.rays.len() {
        if !covered.contains(&i) {
            return Err(ComplexError::UncoveredRay(i));
        }
    }
    Ok(ComplexReport {
        dimension: c.dim,
        ray_count: c.rays.len(),
        basis_count: c.bases.len(),
        meets_dimension_hypothesis: c.dim >= 3,
    })
}

/// The pasted partial Boolean algebra: elements are the subspace-sums of
/// subsets of single bases, identified across bases by canonical subspace
/// form; two elements are commeasurable iff some single basis expresses
/// both.
#[derive(Debug, Clone)]
pub struct PastedPBA {
    pub pba: PartialBooleanAlgebra,
    pub subspaces: Vec<SubspaceClass>,
    /// Every expression of each element: (basis, sorted ray indices).
    pub provenance: Vec<Vec<(usize, Vec<usize>)>>,
    /// ray_in[element][ray]: the ray lies inside the element's subspace.
    pub ray_in: Vec<Vec<bool>>,
    pub stats: PasteStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PasteStats {
    pub elements: usize,
    /// Elements expressible in at least two bases, other than 0 and 1.
    pub shared: usize,
}

pub fn paste(c: &FrameComplex) -> Result<PastedPBA, ComplexError> {
    validate_complex(c)?;
    let mut index: BTreeMap<SubspaceClass, usize> = BTreeMap::new();
    let mut subspaces: Vec<SubspaceClass> = Vec::new();
    let mut provenance: Vec<Vec<(usize, Vec<usize>)>> = Vec::new();
    let mut expressible: Vec<Vec<usize>> = vec![Vec::new(); c.bases.len()];
    let mut by_basis: Vec<BTreeMap<usize, Vec<usize>>> = vec![BTreeMap::new(); c.bases.len()];
    for (b, basis) in c.bases.iter().enumerate() {
        for mask in 0u32..(1 << c.dim) {
            let subset: Vec<usize> = (0..c.dim)
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| basis[k])
                .collect();
            let vectors: Vec<RayVector> =
                subset.iter().map(|&r| c.rays[r].clone()).collect();
            let sub = rref(c.dim, &vectors)?;
            let mut sorted = subset.clone();
            sorted.sort_unstable();
            let id = *index.entry(sub.clone()).or_insert_with(|| {
                subspaces.push(sub);
                provenance.push(Vec::new());
                subspaces.len() - 1
            });
            provenance[id].push((b, sorted.clone()));
            expressible[b].push(id);
            by_basis[b].insert(id, sorted);
        }
    }
    for exp in &mut expressible {
        exp.sort_unstable();
        exp.dedup();
    }
    let n = subspaces.len();
    let zero = index
        .get(&SubspaceClass::zero(c.dim))
        .copied()
        .ok_or_else(|| ComplexError::Internal("missing zero subspace".into()))?;
    let one = subspaces
        .iter()
        .position(|s| s.is_full())
        .ok_or_else(|| ComplexError::Internal("missing full subspace".into()))?;
    let mut comm = vec![vec![false; n]; n];
    let mut meet: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut join: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let key = |x: usize, y: usize| (x.min(y), x.max(y));
    for (b, _) in c.bases.iter().enumerate() {
        let ids = &expressible[b];
        for &x in ids {
            for &y in ids {
                if x > y {
                    continue;
                }
                comm[x][y] = true;
                comm[y][x] = true;
                let sx: BTreeSet<usize> = by_basis[b][&x].iter().copied().collect();
                let sy: BTreeSet<usize> = by_basis[b][&y].iter().copied().collect();
                let inter: Vec<usize> = sx.intersection(&sy).copied().collect();
                let union: Vec<usize> = sx.union(&sy).copied().collect();
                let m_sub = rref(
                    c.dim,
                    &inter.iter().map(|&r| c.rays[r].clone()).collect::<Vec<_>>(),
                )?;
                let j_sub = rref(
                    c.dim,
                    &union.iter().map(|&r| c.rays[r].clone()).collect::<Vec<_>>(),
                )?;
                let m_id = index[&m_sub];
                let j_id = index[&j_sub];
                // meets and joins of commuting projections are subspace
                // operations, so agreement across expressing bases is forced
                if let Some(&prev) = meet.get(&key(x, y)) {
                    if prev != m_id {
                        return Err(ComplexError::Internal(format!(
                            "meet of ({x},{y}) disagrees across bases"
                        )));
                    }
                }
                if let Some(&prev) = join.get(&key(x, y)) {
                    if prev != j_id {
                        return Err(ComplexError::Internal(format!(
                            "join of ({x},{y}) disagrees across bases"
                        )));
                    }
                }
                meet.insert(key(x, y), m_id);
                join.insert(key(x, y), j_id);
            }
        }
    }
    // negation: orthocomplement, computed inside any expressing basis
    let mut neg = vec![usize::MAX; n];
    for id in 0..n {
        let (b, ref subset) = provenance[id][0];
        let complement: Vec<usize> = c.bases[b]
            .iter()
            .copied()
            .filter(|r| !subset.contains(r))
            .collect();
        let sub = rref(
            c.dim,
            &complement
                .iter()
                .map(|&r| c.rays[r].clone())
                .collect::<Vec<_>>(),
        )?;
        neg[id] = index[&sub];
    }
    let labels: Vec<String> = (0..n)
        .map(|id| {
            let s = &subspaces[id];
            if s.is_zero() {
                "0".to_string()
            } else if s.is_full() {
                "1".to_string()
            } else if s.rank() == 1 {
                let ray = c
                    .rays
                    .iter()
                    .position(|r| s.contains(r).unwrap_or(false))
                    .map(|i| format!("r{i}"))
                    .unwrap_or_else(|| format!("e{id}"));
                ray
            } else {
                let (_, ref subset) = provenance[id][0];
                format!(
                    "⟨{}⟩",
                    subset
                        .iter()
                        .map(|r| format!("r{r}"))
                        .collect::<Vec<_>>()
                        .join("+")
                )
            }
        })
        .collect();
    let shared = (0..n)
        .filter(|&id| id != zero && id != one)
        .filter(|&id| {
            provenance[id]
                .iter()
                .map(|(b, _)| b)
                .collect::<BTreeSet<_>>()
                .len()
                >= 2
        })
        .count();
    let stats = PasteStats {
        elements: n,
        shared,
    };
    let ray_in: Vec<Vec<bool>> = (0..n)
        .map(|id| {
            let s = &subspaces[id];
            (0..c.rays.len())
                .map(|r| match s.rank() {
                    0 => false,
                    rank if rank == c.dim => true,
                    _ => s.contains(&c.rays[r]).unwrap_or(false),
                })
                .collect()
        })
        .collect();
    Ok(PastedPBA {
        pba: PartialBooleanAlgebra::new(labels, comm, zero, one, neg, meet, join),
        subspaces,
        provenance,
        ray_in,
        stats,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorMode {
    Find,
    Count,
    Enumerate,
}

#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub threads: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { threads: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorSearchResult {
    pub count: u64,
    /// First coloring found in branch order (Find), or all colorings in
    /// lexicographic ray order (Enumerate).
    pub colorings: Vec<Vec<bool>>,
}

/// The clause system of a complex: one variable per ray; per basis one
/// at-least-one clause and pairwise at-most-one clauses; per shared
/// subspace of intermediate rank, biconditional clauses between each pair
/// of distinct ray-set expressions.
fn ks_clauses(c: &FrameComplex, pasted: &PastedPBA) -> Result<Vec<Vec<Lit>>, ComplexError> {
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    for basis in &c.bases {
        clauses.push(basis.iter().map(|&r| Lit::pos(r)).collect());
        for (pi, &i) in basis.iter().enumerate() {
            for &j in basis.iter().skip(pi + 1) {
                clauses.push(vec![Lit::neg(i), Lit::neg(j)]);
            }
        }
    }
    // shared-subspace constraints from the pasted identification
    for id in 0..pasted.subspaces.len() {
        let rank = pasted.subspaces[id].rank();
        if rank == 0 || rank == c.dim {
            continue;
        }
        let mut expressions: Vec<Vec<usize>> = pasted.provenance[id]
            .iter()
            .map(|(_, subset)| subset.clone())
            .collect();
        expressions.sort();
        expressions.dedup();
        for a in 0..expressions.len() {
            for b in (a + 1)..expressions.len() {
                for &ra in &expressions[a] {
                    let mut clause = vec![Lit::neg(ra)];
                    clause.extend(expressions[b].iter().map(|&rb| Lit::pos(rb)));
                    clauses.push(clause);
                }
                for &rb in &expressions[b] {
                    let mut clause = vec![Lit::neg(rb)];
                    clause.extend(expressions[a].iter().map(|&ra| Lit::pos(ra)));
                    clauses.push(clause);
                }
            }
        }
    }
    Ok(clauses)
}

/// Decision order: rays by descending basis-membership degree, ties by
/// index.
fn branch_order(c: &FrameComplex) -> Vec<usize> {
    let mut degree = vec![0usize; c.rays.len()];
    for basis in &c.bases {
        for &r in basis {
            degree[r] += 1;
        }
    }
    let mut order: Vec<usize> = (0..c.rays.len()).collect();
    order.sort_by_key(|&r| (usize::MAX - degree[r], r));
    order
}

struct KsSolver<'a> {
    clauses: &'a [Vec<Lit>],
    order: &'a [usize],
}

enum SearchSink {
    Count(u64),
    FindFirst(Option<Vec<bool>>),
    Collect(Vec<Vec<bool>>),
}

impl SearchSink {
    fn record(&mut self, assign: &[Option<bool>]) -> bool {
        let full: Vec<bool> = assign.iter().map(|a| a.unwrap()).collect();
        match self {
            SearchSink::Count(n) => {
                *n += 1;
                true
            }
            SearchSink::FindFirst(slot) => {
                *slot = Some(full);
                false
            }
            SearchSink::Collect(all) => {
                all.push(full);
                true
            }
        }
    }
}

impl<'a> KsSolver<'a> {
    fn propagate(&self, assign: &mut [Option<bool>], trail: &mut Vec<usize>) -> bool {
        loop {
            let mut changed = false;
            for clause in self.clauses {
                let mut satisfied = false;
                let mut unit = None;
                let mut unassigned = 0;
                for l in clause {
                    match assign[l.var] {
                        Some(v) if v == l.positive => {
                            satisfied = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            unit = Some(*l);
                            unassigned += 1;
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match unassigned {
                    0 => return false,
                    1 => {
                        let l = unit.unwrap();
                        assign[l.var] = Some(l.positive);
                        trail.push(l.var);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Complete DFS; returns false when the sink asks to stop early.
    fn search(&self, assign: &mut Vec<Option<bool>>, sink: &mut SearchSink) -> bool {
        let mut trail = Vec::new();
        let mut keep_going = true;
        if self.propagate(assign, &mut trail) {
            match self.order.iter().copied().find(|&v| assign[v].is_none()) {
                None => keep_going = sink.record(assign),
                Some(var) => {
                    for value in [false, true] {
                        assign[var] = Some(value);
                        keep_going = self.search(assign, sink);
                        assign[var] = None;
                        if !keep_going {
                            break;
                        }
                    }
                }
            }
        }
        for v in trail {
            assign[v] = None;
        }
        keep_going
    }
}

/// Complete coloring search with unit propagation. Enumerate returns
/// colorings sorted in lexicographic ray order; all modes are complete and
/// deterministic, independent of the thread count.
pub fn color_search(
    c: &FrameComplex,
    mode: ColorMode,
    options: &SolverOptions,
) -> Result<ColorSearchResult, ComplexError> {
    let pasted = paste(c)?;
    color_search_with(c, &pasted, mode, options)
}

/// `color_search` against an already computed pasting.
pub fn color_search_with(
    c: &FrameComplex,
    pasted: &PastedPBA,
    mode: ColorMode,
    options: &SolverOptions,
) -> Result<ColorSearchResult, ComplexError> {
    validate_complex(c)?;
    let clauses = ks_clauses(c, pasted)?;
    let order = branch_order(c);
    let solver = KsSolver {
        clauses: &clauses,
        order: &order,
    };
    let nvars = c.rays.len();
    let threads = options.threads.max(1);

    // split the tree at the top decision variables into independent
    // branches; each branch is solved sequentially, results are merged in
    // branch order, so the outcome does not depend on the thread count
    let split_depth = if threads > 1 && !order.is_empty() {
        (threads.next_power_of_two().trailing_zeros() as usize).min(order.len()).min(4)
    } else {
        0
    };
    let mut branches: Vec<Vec<(usize, bool)>> = vec![vec![]];
    for &var in order.iter().take(split_depth) {
        let mut next = Vec::with_capacity(branches.len() * 2);
        for b in &branches {
            for value in [false, true] {
                let mut b2 = b.clone();
                b2.push((var, value));
                next.push(b2);
            }
        }
        branches = next;
    }

    let run_branch = |assumptions: &[(usize, bool)]| -> (u64, Vec<Vec<bool>>) {
        let mut assign: Vec<Option<bool>> = vec![None; nvars];
        for &(v, b) in assumptions {
            assign[v] = Some(b);
        }
        let mut sink = match mode {
            ColorMode::Count => SearchSink::Count(0),
            ColorMode::Find => SearchSink::FindFirst(None),
            ColorMode::Enumerate => SearchSink::Collect(Vec::new()),
        };
        solver.search(&mut assign, &mut sink);
        match sink {
            SearchSink::Count(n) => (n, vec![]),
            SearchSink::FindFirst(found) => match found {
                Some(f) => (1, vec![f]),
                None => (0, vec![]),
            },
            SearchSink::Collect(all) => (all.len() as u64, all),
        }
    };

    let per_branch: Vec<(u64, Vec<Vec<bool>>)> = if threads <= 1 || branches.len() <= 1 {
        branches.iter().map(|b| run_branch(b)).collect()
    } else {
        std::thread::scope(|scope| {
            let chunk = branches.len().div_ceil(threads);
            let handles: Vec<_> = branches
                .chunks(chunk)
                .map(|bs| scope.spawn(move || bs.iter().map(|b| run_branch(b)).collect::<Vec<_>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("solver thread"))
                .collect()
        })
    };

    match mode {
        ColorMode::Count => Ok(ColorSearchResult {
            count: per_branch.iter().map(|(n, _)| n).sum(),
            colorings: vec![],
        }),
        ColorMode::Find => {
            let first = per_branch
                .into_iter()
                .find_map(|(_, mut found)| found.pop());
            Ok(ColorSearchResult {
                count: first.iter().len() as u64,
                colorings: first.into_iter().collect(),
            })
        }
        ColorMode::Enumerate => {
            let mut all: Vec<Vec<bool>> = per_branch.into_iter().flat_map(|(_, f)| f).collect();
            all.sort();
            all.dedup();
            Ok(ColorSearchResult {
                count: all.len() as u64,
                colorings: all,
            })
        }
    }
}

/// The CNF presentation of a complex, plus its DIMACS serialisation with a
/// `ray <index> = var <v>` comment per variable.
pub fn to_cnf(c: &FrameComplex) -> Result<(Presentation, String), ComplexError> {
    let pasted = paste(c)?;
    to_cnf_with(c, &pasted)
}

/// `to_cnf` against an already computed pasting.
pub fn to_cnf_with(
    c: &FrameComplex,
    pasted: &PastedPBA,
) -> Result<(Presentation, String), ComplexError> {
    validate_complex(c)?;
    let clauses = ks_clauses(c, pasted)?;
    let presentation = Presentation {
        vars: (0..c.rays.len()).map(|i| format!("r{i}")).collect(),
        clauses,
    };
    let comments: Vec<String> = (0..c.rays.len())
        .map(|i| format!("ray {i} = var {}", i + 1))
        .collect();
    let dimacs = to_dimacs(&presentation, Some(&comments));
    Ok((presentation, dimacs))
}

/// The commutative-subalgebra diagram of a complex: one diagonal algebra
/// per basis (characters labeled by rays), one intersection node per basis
/// pair (characters labeled by the blocks of the common partition,
/// computed from the subspaces the two bases share), inclusion arrows
/// acting on characters by block membership.
pub fn subalgebra_diagram(c: &FrameComplex) -> Result<AlgebraDiagram, ComplexError> {
    let pasted = paste(c)?;
    subalgebra_diagram_with(c, &pasted)
}

/// `subalgebra_diagram` against an already computed pasting.
pub fn subalgebra_diagram_with(
    c: &FrameComplex,
    pasted: &PastedPBA,
) -> Result<AlgebraDiagram, ComplexError> {
    validate_complex(c)?;
    let b = c.bases.len();
    let mut nodes: Vec<CommAlgObject> = Vec::new();
    for basis in &c.bases {
        nodes.push(CommAlgObject::new(
            basis.iter().map(|&r| format!("r{r}")).collect(),
        ));
    }
    // intersection nodes, one per unordered basis pair
    struct PairNode {
        first: usize,
        second: usize,
        /// block index of every ray of each parent basis
        block_of: BTreeMap<usize, usize>,
        labels: Vec<String>,
    }
    let mut pair_nodes: Vec<PairNode> = Vec::new();
    for b1 in 0..b {
        for b2 in (b1 + 1)..b {
            // subspaces expressible in both bases
            let expressed_in = |id: usize, basis: usize| {
                pasted.provenance[id].iter().any(|(pb, _)| *pb == basis)
            };
            let common: Vec<usize> = (0..pasted.subspaces.len())
                .filter(|&id| expressed_in(id, b1) && expressed_in(id, b2))
                .collect();
            // atoms of the common algebra: minimal nonzero common
            // subspaces; inclusion compared through first-basis ray masks
            let masks: BTreeMap<usize, u64> = common
                .iter()
                .map(|&x| {
                    let m = pasted.provenance[x]
                        .iter()
                        .find(|(pb, _)| *pb == b1)
                        .map(|(_, s)| {
                            s.iter().fold(0u64, |m, &r| {
                                m | 1 << c.bases[b1].iter().position(|&br| br == r).unwrap()
                            })
                        })
                        .expect("common element expressed in first basis");
                    (x, m)
                })
                .collect();
            let leq = |x: usize, y: usize| -> bool { masks[&x] & masks[&y] == masks[&x] };
            let zero_id = common
                .iter()
                .copied()
                .find(|&id| pasted.subspaces[id].is_zero())
                .expect("zero is common");
            let atoms: Vec<usize> = common
                .iter()
                .copied()
                .filter(|&x| x != zero_id)
                .filter(|&x| {
                    common
                        .iter()
                        .all(|&y| y == x || y == zero_id || !leq(y, x))
                })
                .collect();
            // each parent ray lies in exactly one atom
            let mut block_of = BTreeMap::new();
            for &r in c.bases[b1].iter().chain(c.bases[b2].iter()) {
                let blocks: Vec<usize> = atoms
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| pasted.ray_in[a][r])
                    .map(|(i, _)| i)
                    .collect();
                if blocks.len() != 1 {
                    return Err(ComplexError::Internal(format!(
                        "ray {r} not in exactly one common block of bases {b1},{b2}"
                    )));
                }
                block_of.insert(r, blocks[0]);
            }
            let labels: Vec<String> = atoms
                .iter()
                .map(|&a| {
                    let members: Vec<String> = (0..c.rays.len())
                        .filter(|&r| pasted.ray_in[a][r])
                        .map(|r| format!("r{r}"))
                        .collect();
                    format!("{{{}}}", members.join(","))
                })
                .collect();
            pair_nodes.push(PairNode {
                first: b1,
                second: b2,
                block_of,
                labels,
            });
        }
    }
    for pn in &pair_nodes {
        nodes.push(CommAlgObject::new(pn.labels.clone()));
    }
    // shape: the inclusion poset (pair node below each parent basis)
    let total = nodes.len();
    let mut leq = vec![vec![false; total]; total];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for (p, pn) in pair_nodes.iter().enumerate() {
        leq[b + p][pn.first] = true;
        leq[b + p][pn.second] = true;
    }
    let labels: Vec<String> = (0..b)
        .map(|i| format!("B{i}"))
        .chain(pair_nodes.iter().map(|pn| format!("B{}∩B{}", pn.first, pn.second)))
        .collect();
    let shape = FinCategory::from_poset(&labels, &leq)
        .map_err(|e| ComplexError::Internal(format!("shape: {e}")))?;
    let mut arrows = BTreeMap::new();
    for (m, info) in shape.morphisms.iter().enumerate() {
        if shape.identity[info.src] == m {
            continue;
        }
        let pn = &pair_nodes[info.src - b];
        let parent = info.tgt;
        let dual: Vec<usize> = c.bases[parent].iter().map(|&r| pn.block_of[&r]).collect();
        arrows.insert(
            m,
            AlgHom::new(nodes[info.src].clone(), nodes[parent].clone(), dual)
                .map_err(|e| ComplexError::Internal(format!("{e}")))?,
        );
    }
    Diagram::try_new(shape, nodes, arrows)
        .map_err(|e| ComplexError::Internal(format!("subalgebra diagram: {e}")))
}

use crate::cat::Diagram;

/// Parses the configuration JSON schema with JSON-pointer error reporting:
/// `{ "dimension": n, "field": "Q"|"Q(sqrt2)", "rays": [[coord,...],...],
/// "bases": [[rayIndex,...],...] }` where a coord is either a rational
/// string "p/q" or a two-element array ["p/q","r/s"] meaning p/q + (r/s)√2.
pub fn parse_config(text: &str) -> Result<FrameComplex, ComplexError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| ComplexError::Config {
            pointer: String::new(),
            message: format!("invalid JSON at line {}, column {}", e.line(), e.column()),
        })?;
    let err = |pointer: &str, message: &str| ComplexError::Config {
        pointer: pointer.to_string(),
        message: message.to_string(),
    };
    let obj = value
        .as_object()
        .ok_or_else(|| err("", "expected a JSON object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "dimension" | "field" | "rays" | "bases") {
            return Err(err(&format!("/{key}"), "unknown key"));
        }
    }
    let dim = obj
        .get("dimension")
        .ok_or_else(|| err("/dimension", "missing"))?
        .as_u64()
        .ok_or_else(|| err("/dimension", "expected a positive integer"))? as usize;
    let field = match obj
        .get("field")
        .ok_or_else(|| err("/field", "missing"))?
        .as_str()
    {
        Some("Q") => FieldTag::Q,
        Some("Q(sqrt2)") => FieldTag::QSqrt2,
        _ => return Err(err("/field", "expected \"Q\" or \"Q(sqrt2)\"")),
    };
    let rays_v = obj
        .get("rays")
        .ok_or_else(|| err("/rays", "missing"))?
        .as_array()
        .ok_or_else(|| err("/rays", "expected an array"))?;
    let mut rays = Vec::with_capacity(rays_v.len());
    for (i, ray_v) in rays_v.iter().enumerate() {
        let coords_v = ray_v
            .as_array()
            .ok_or_else(|| err(&format!("/rays/{i}"), "expected an array of coordinates"))?;
        if coords_v.len() != dim {
            return Err(err(
                &format!("/rays/{i}"),
                &format!("expected {dim} coordinates, found {}", coords_v.len()),
            ));
        }
        let mut coords = Vec::with_capacity(dim);
        for (j, coord_v) in coords_v.iter().enumerate() {
            let pointer = format!("/rays/{i}/{j}");
            coords.push(parse_coord(coord_v, &pointer)?);
        }
        rays.push(RayVector::new(coords).map_err(|e| ComplexError::BadRay {
            index: i,
            source: e,
        })?);
    }
    let bases_v = obj
        .get("bases")
        .ok_or_else(|| err("/bases", "missing"))?
        .as_array()
        .ok_or_else(|| err("/bases", "expected an array"))?;
    let mut bases = Vec::with_capacity(bases_v.len());
    for (b, basis_v) in bases_v.iter().enumerate() {
        let idx_v = basis_v
            .as_array()
            .ok_or_else(|| err(&format!("/bases/{b}"), "expected an array of ray indices"))?;
        let mut basis = Vec::with_capacity(idx_v.len());
        for (k, iv) in idx_v.iter().enumerate() {
            let n = iv
                .as_u64()
                .ok_or_else(|| err(&format!("/bases/{b}/{k}"), "expected a ray index"))?;
            basis.push(n as usize);
        }
        bases.push(basis);
    }
    Ok(FrameComplex {
        dim,
        field,
        rays,
        bases,
    })
}

fn parse_fraction(s: &str, pointer: &str) -> Result<(i64, i64), ComplexError> {
    let err = |message: String| ComplexError::Config {
        pointer: pointer.to_string(),
        message,
    };
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: i64 = p
        .trim()
        .parse()
        .map_err(|_| err(format!("bad numerator in `{s}`")))?;
    let q: i64 = q
        .trim()
        .parse()
        .map_err(|_| err(format!("bad denominator in `{s}`")))?;
    if q == 0 {
        return Err(err("zero denominator".into()));
    }
    Ok((p, q))
}

fn parse_coord(v: &serde_json::Value, pointer: &str) -> Result<Scalar, ComplexError> {
    match v {
        serde_json::Value::String(s) => {
            let (p, q) = parse_fraction(s, pointer)?;
            Ok(Scalar::from_fraction(p, q))
        }
        serde_json::Value::Array(parts) if parts.len() == 2 => {
            let rat = parts[0].as_str().ok_or_else(|| ComplexError::Config {
                pointer: pointer.to_string(),
                message: "expected a fraction string".into(),
            })?;
            let irr = parts[1].as_str().ok_or_else(|| ComplexError::Config {
                pointer: pointer.to_string(),
                message: "expected a fraction string".into(),
            })?;
            let (rp, rq) = parse_fraction(rat, pointer)?;
            let (ip, iq) = parse_fraction(irr, pointer)?;
            let irr_part = Scalar::from_fraction(ip, iq).mul(&Scalar::sqrt2());
            Ok(Scalar::from_fraction(rp, rq).add(&irr_part))
        }
        _ => Err(ComplexError::Config {
            pointer: pointer.to_string(),
            message: "coordinate must be \"p/q\" or [\"p/q\",\"r/s\"]".into(),
        }),
    }
}

/// Builders for the bundled and handcrafted configurations used across the
/// test suite and the guide.
pub mod fixtures {
    use super::*;

    pub fn from_ints(dim: usize, rays: &[&[i64]], bases: &[&[usize]]) -> FrameComplex {
        FrameComplex {
            dim,
            field: FieldTag::Q,
            rays: rays
                .iter()
                .map(|r| RayVector::from_ints(r).expect("fixture ray"))
                .collect(),
            bases: bases.iter().map(|b| b.to_vec()).collect(),
        }
    }

    /// The standard basis of dimension 3 as a single basis.
    pub fn single_basis_dim3() -> FrameComplex {
        from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[0, 1, 2]])
    }

    /// Two dimension-3 bases sharing exactly the ray e1.
    pub fn shared_ray_dim3() -> FrameComplex {
        from_ints(
            3,
            &[
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
                &[0, 1, 1],
                &[0, 1, -1],
            ],
            &[&[0, 1, 2], &[0, 3, 4]],
        )
    }

    /// Two mutually unbiased bases of dimension 2.
    pub fn mub_dim2() -> FrameComplex {
        from_ints(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, -1]], &[&[0, 1], &[2, 3]])
    }

    /// Two disjoint copies of the standard basis pattern in dimension 2.
    pub fn disjoint_dim2() -> FrameComplex {
        mub_dim2()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pba::validate_pba;

    #[test]
    fn validate_examples() {
        assert!(validate_complex(&fixtures::single_basis_dim3()).is_ok());
        let report = validate_complex(&fixtures::mub_dim2()).unwrap();
        assert!(!report.meets_dimension_hypothesis);
        // duplicate ray (same subspace after scaling) rejected
        let dup = FrameComplex {
            dim: 2,
            field: FieldTag::Q,
            rays: vec![
                RayVector::from_ints(&[1, 0]).unwrap(),
                RayVector::from_ints(&[2, 0]).unwrap(),
            ],
            bases: vec![vec![0, 1]],
        };
        assert!(matches!(
            validate_complex(&dup),
            Err(ComplexError::DuplicateRay { .. })
        ));
        // non-orthogonal basis rejected
        let skew = fixtures::from_ints(2, &[&[1, 0], &[1, 1]], &[&[0, 1]]);
        assert!(matches!(
            validate_complex(&skew),
            Err(ComplexError::NotOrthogonal { .. })
        ));
    }

    #[test]
    fn paste_examples() {
        let single = paste(&fixtures::single_basis_dim3()).unwrap();
        assert_eq!(single.stats.elements, 8);
        assert!(validate_pba(&single.pba).is_ok());

        let shared = paste(&fixtures::shared_ray_dim3()).unwrap();
        assert_eq!(shared.stats.elements, 12);
        assert!(validate_pba(&shared.pba).is_ok());

        let mub = paste(&fixtures::mub_dim2()).unwrap();
        assert_eq!(mub.stats.elements, 6);
        assert!(validate_pba(&mub.pba).is_ok());
        assert_eq!(mub.stats.shared, 0);
    }

    #[test]
    fn element_count_formula_without_sharing() {
        // b bases, no shared subspaces beyond 0 and 1:
        // elements = b(2^n - 2) + 2
        let mub = paste(&fixtures::mub_dim2()).unwrap();
        assert_eq!(mub.stats.elements, 2 * (4 - 2) + 2);
    }

    #[test]
    fn color_search_examples() {
        let opts = SolverOptions::default();
        let single = color_search(&fixtures::single_basis_dim3(), ColorMode::Count, &opts)
            .unwrap();
        assert_eq!(single.count, 3);
        let shared =
            color_search(&fixtures::shared_ray_dim3(), ColorMode::Enumerate, &opts).unwrap();
        assert_eq!(shared.count, 5);
        assert_eq!(shared.colorings.len(), 5);
        // lexicographic order
        let mut sorted = shared.colorings.clone();
        sorted.sort();
        assert_eq!(shared.colorings, sorted);
        let found = color_search(&fixtures::shared_ray_dim3(), ColorMode::Find, &opts).unwrap();
        assert_eq!(found.colorings.len(), 1);
    }

    #[test]
    fn cnf_examples() {
        // single basis dim 2: 2 vars, ALO + AMO, 2 models
        let c = fixtures::from_ints(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]);
        let (p, dimacs) = to_cnf(&c).unwrap();
        assert_eq!(p.vars.len(), 2);
        assert_eq!(p.clauses.len(), 2);
        assert!(dimacs.contains("p cnf 2 2"));
        assert!(dimacs.contains("c ray 0 = var 1"));
        assert_eq!(crate::boolean::enumerate_models(&p).len(), 2);
        // two disjoint bases dim 2: 4 vars, 4 clauses, 4 models
        let (p, _) = to_cnf(&fixtures::mub_dim2()).unwrap();
        assert_eq!(p.vars.len(), 4);
        assert_eq!(p.clauses.len(), 4);
        assert_eq!(crate::boolean::enumerate_models(&p).len(), 4);
    }

    #[test]
    fn cnf_matches_search_on_shared_ray() {
        let c = fixtures::shared_ray_dim3();
        let (p, _) = to_cnf(&c).unwrap();
        let models = crate::boolean::enumerate_models(&p).len() as u64;
        let count = color_search(&c, ColorMode::Count, &SolverOptions::default())
            .unwrap()
            .count;
        assert_eq!(models, count);
        assert_eq!(models, 5);
    }

    #[test]
    fn subalgebra_diagram_examples() {
        // single basis: one node, three characters
        let d = subalgebra_diagram(&fixtures::single_basis_dim3()).unwrap();
        assert_eq!(d.nodes.len(), 1);
        assert_eq!(d.nodes[0].k(), 3);
        // two disjoint unbiased bases dim 2: two 2-character nodes plus a
        // 1-character intersection
        let d = subalgebra_diagram(&fixtures::mub_dim2()).unwrap();
        assert_eq!(d.nodes.len(), 3);
        assert_eq!(d.nodes[0].k(), 2);
        assert_eq!(d.nodes[1].k(), 2);
        assert_eq!(d.nodes[2].k(), 1);
        // shared-ray dim 3: intersection node with 2 characters
        let d = subalgebra_diagram(&fixtures::shared_ray_dim3()).unwrap();
        assert_eq!(d.nodes.len(), 3);
        assert_eq!(d.nodes[2].k(), 2);
    }

    #[test]
    fn parse_config_round_trip() {
        let text = r#"{
            "dimension": 2,
            "field": "Q(sqrt2)",
            "rays": [["1","0"], ["0","1"], [["0","1"], "1"]],
            "bases": [[0,1]]
        }"#;
        let c = parse_config(text).unwrap();
        assert_eq!(c.dim, 2);
        assert_eq!(c.rays.len(), 3);
        assert!(matches!(
            validate_complex(&c),
            Err(ComplexError::UncoveredRay(2))
        ));
        let bad = parse_config(r#"{"dimension": 2, "field": "Q", "rays": [["x"]], "bases": []}"#);
        match bad {
            Err(ComplexError::Config { pointer, .. }) => assert_eq!(pointer, "/rays/0"),
            other => panic!("expected pointer error, got {other:?}"),
        }
    }
}
