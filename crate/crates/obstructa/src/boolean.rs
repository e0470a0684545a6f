//! Finite Boolean algebras with atom-set representation, characters and
//! finite Stone duality, propositional presentations with a complete model
//! enumerator, and Lindenbaum-style colimits of Boolean-algebra diagrams.
//!
//! Elements are bitmasks over atoms, so a colimit is delivered as the
//! powerset algebra of the model set of a propositional theory — which is
//! exactly what makes the terminal-colimit computation a search problem.

use crate::cat::{Diagram, Morphism};
use crate::locale::{powerset_masks, FinFrame, LocaleMap};
use crate::order::FinDistLattice;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BooleanError {
    #[error("atom count {0} exceeds the bitmask representation")]
    TooManyAtoms(usize),
    #[error("not a Boolean homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("malformed presentation: {0}")]
    BadPresentation(String),
    #[error("malformed DIMACS input: {0}")]
    BadDimacs(String),
}

pub const MAX_ATOMS: usize = 60;

/// A finite Boolean algebra presented by its atoms; elements are the 2^k
/// bitmasks with meet/join/complement the bit operations. Atom count 0
/// encodes the terminal algebra, in which 0 = 1.
#[derive(Clone, PartialEq, Eq)]
pub struct FinBoolAlg {
    atom_labels: Vec<String>,
}

impl fmt::Debug for FinBoolAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinBoolAlg[2^{}]", self.atom_count())
    }
}

impl FinBoolAlg {
    pub fn new(atom_count: usize) -> Result<Self, BooleanError> {
        if atom_count > MAX_ATOMS {
            return Err(BooleanError::TooManyAtoms(atom_count));
        }
        Ok(FinBoolAlg {
            atom_labels: (0..atom_count).map(|i| format!("a{i}")).collect(),
        })
    }

    pub fn with_labels(atom_labels: Vec<String>) -> Result<Self, BooleanError> {
        if atom_labels.len() > MAX_ATOMS {
            return Err(BooleanError::TooManyAtoms(atom_labels.len()));
        }
        Ok(FinBoolAlg { atom_labels })
    }

    pub fn atom_count(&self) -> usize {
        self.atom_labels.len()
    }

    pub fn atom_labels(&self) -> &[String] {
        &self.atom_labels
    }

    pub fn size(&self) -> u64 {
        1u64 << self.atom_count()
    }

    pub fn is_terminal(&self) -> bool {
        self.atom_count() == 0
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        if self.atom_count() == 0 {
            0
        } else {
            (1u64 << self.atom_count()) - 1
        }
    }

    pub fn meet(&self, x: u64, y: u64) -> u64 {
        x & y
    }

    pub fn join(&self, x: u64, y: u64) -> u64 {
        x | y
    }

    pub fn complement(&self, x: u64) -> u64 {
        self.one() & !x
    }

    pub fn leq(&self, x: u64, y: u64) -> bool {
        x & y == x
    }

    /// The atoms as singleton masks, in index order.
    pub fn atoms(&self) -> Vec<u64> {
        (0..self.atom_count()).map(|i| 1u64 << i).collect()
    }

    /// All elements in (popcount, mask) order, matching the open order of
    /// the Stone spectrum frame. Only for desk-scale algebras.
    pub fn elements(&self) -> Vec<u64> {
        assert!(self.atom_count() <= 20, "element enumeration at desk scale");
        powerset_masks(self.atom_count())
    }
}

/// A unital Boolean homomorphism, stored dually: `atom_map[t]` is the
/// source atom whose image contains target atom t. Applying the hom sends
/// x to the set of target atoms whose source atom lies in x.
#[derive(Debug, Clone)]
pub struct BoolHom {
    pub source: FinBoolAlg,
    pub target: FinBoolAlg,
    pub atom_map: Vec<usize>,
}

impl BoolHom {
    pub fn new(
        source: FinBoolAlg,
        target: FinBoolAlg,
        atom_map: Vec<usize>,
    ) -> Result<Self, BooleanError> {
        if atom_map.len() != target.atom_count()
            || atom_map.iter().any(|&a| a >= source.atom_count())
        {
            return Err(BooleanError::NotAHomomorphism(
                "atom map must send each target atom to a source atom".into(),
            ));
        }
        Ok(BoolHom {
            source,
            target,
            atom_map,
        })
    }

    /// Recovers the dual atom map from a full element table, verifying the
    /// homomorphism laws on the way.
    pub fn from_table(
        source: FinBoolAlg,
        target: FinBoolAlg,
        table: &BTreeMap<u64, u64>,
    ) -> Result<Self, BooleanError> {
        let get = |x: u64| -> Result<u64, BooleanError> {
            table
                .get(&x)
                .copied()
                .ok_or_else(|| BooleanError::NotAHomomorphism(format!("no image for {x:#b}")))
        };
        if get(source.zero())? != target.zero() || get(source.one())? != target.one() {
            return Err(BooleanError::NotAHomomorphism(
                "bounds not preserved".into(),
            ));
        }
        for (&x, &fx) in table {
            if get(source.complement(x))? != target.complement(fx) {
                return Err(BooleanError::NotAHomomorphism(format!(
                    "complement not preserved at {x:#b}"
                )));
            }
            for (&y, &fy) in table {
                if get(source.meet(x, y))? != target.meet(fx, fy)
                    || get(source.join(x, y))? != target.join(fx, fy)
                {
                    return Err(BooleanError::NotAHomomorphism(format!(
                        "lattice operations not preserved at ({x:#b},{y:#b})"
                    )));
                }
            }
        }
        // each target atom lies in the image of exactly one source atom
        let mut atom_map = Vec::with_capacity(target.atom_count());
        for t in 0..target.atom_count() {
            let sources: Vec<usize> = (0..source.atom_count())
                .filter(|&a| {
                    table
                        .get(&(1u64 << a))
                        .map(|&img| img >> t & 1 == 1)
                        .unwrap_or(false)
                })
                .collect();
            match sources.as_slice() {
                [unique] => atom_map.push(*unique),
                _ => {
                    return Err(BooleanError::NotAHomomorphism(format!(
                        "target atom {t} not covered exactly once"
                    )))
                }
            }
        }
        BoolHom::new(source, target, atom_map)
    }

    pub fn apply(&self, x: u64) -> u64 {
        let mut out = 0u64;
        for (t, &a) in self.atom_map.iter().enumerate() {
            if x >> a & 1 == 1 {
                out |= 1 << t;
            }
        }
        out
    }
}

impl Morphism for BoolHom {
    type Object = FinBoolAlg;

    fn identity_on(ob: &FinBoolAlg) -> Self {
        BoolHom {
            source: ob.clone(),
            target: ob.clone(),
            atom_map: (0..ob.atom_count()).collect(),
        }
    }

    fn source_object(&self) -> FinBoolAlg {
        self.source.clone()
    }

    fn target_object(&self) -> FinBoolAlg {
        self.target.clone()
    }

    fn then(&self, next: &Self) -> Result<Self, String> {
        if self.target != next.source {
            return Err("Boolean homs not composable".into());
        }
        Ok(BoolHom {
            source: self.source.clone(),
            target: next.target.clone(),
            atom_map: next.atom_map.iter().map(|&t| self.atom_map[t]).collect(),
        })
    }

    fn same_morphism(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.atom_map == other.atom_map
    }
}

/// The two-element Boolean algebra.
pub fn bool_two() -> FinBoolAlg {
    FinBoolAlg::new(1).expect("2")
}

/// Characters B → 2 in atom order: the k-th character is the ultrafilter
/// at atom k.
pub fn characters(b: &FinBoolAlg) -> Vec<BoolHom> {
    (0..b.atom_count())
        .map(|k| BoolHom {
            source: b.clone(),
            target: bool_two(),
            atom_map: vec![k],
        })
        .collect()
}

/// Finite Stone duality on objects: the spectrum is the discrete frame on
/// the characters (equivalently the powerset of the atoms).
pub fn stone_spectrum(b: &FinBoolAlg) -> FinFrame {
    let masks = powerset_masks(b.atom_count());
    let label = |m: u64| {
        let names: Vec<&str> = (0..b.atom_count())
            .filter(|&i| m >> i & 1 == 1)
            .map(|i| b.atom_labels()[i].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    };
    let n = masks.len();
    let index: BTreeMap<u64, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let labels = masks.iter().map(|&m| label(m)).collect();
    let leq = (0..n)
        .map(|i| (0..n).map(|j| masks[i] & masks[j] == masks[i]).collect())
        .collect();
    let meet = (0..n)
        .map(|i| (0..n).map(|j| index[&(masks[i] & masks[j])]).collect())
        .collect();
    let join = (0..n)
        .map(|i| (0..n).map(|j| index[&(masks[i] | masks[j])]).collect())
        .collect();
    let bottom = index[&0];
    let top = index[&b.one()];
    FinFrame::from_lattice(FinDistLattice::from_parts_unchecked(
        labels, leq, meet, join, bottom, top,
    ))
}

/// Finite Stone duality on morphisms: contravariant, by precomposition of
/// characters. A hom B → C becomes a locale map Spec C → Spec B whose
/// frame hom takes preimages along the dual atom map.
pub fn stone_on_hom(h: &BoolHom) -> Result<LocaleMap, BooleanError> {
    let src_frame = stone_spectrum(&h.target);
    let tgt_frame = stone_spectrum(&h.source);
    let src_masks = powerset_masks(h.target.atom_count());
    let tgt_masks = powerset_masks(h.source.atom_count());
    let src_index: BTreeMap<u64, usize> =
        src_masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let frame_hom = tgt_masks
        .iter()
        .map(|&bmask| {
            let cmask: u64 = h
                .atom_map
                .iter()
                .enumerate()
                .filter(|&(_, &a)| bmask >> a & 1 == 1)
                .fold(0, |m, (t, _)| m | 1 << t);
            src_index[&cmask]
        })
        .collect();
    LocaleMap::try_new(src_frame, tgt_frame, frame_hom)
        .map_err(|e| BooleanError::NotAHomomorphism(format!("induced locale map invalid: {e}")))
}

/// The complemented elements of a frame form a Boolean algebra; for a
/// finite Stone spectrum this recovers the original algebra.
pub fn complemented_elements(f: &FinFrame) -> Vec<usize> {
    let o = f.opens();
    (0..o.len())
        .filter(|&x| o.complement_of(x).is_some())
        .collect()
}

/// A literal: variable index with polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Lit {
        Lit {
            var,
            positive: false,
        }
    }
}

/// A propositional theory in CNF over named generators. The explicit empty
/// clause is allowed and marks inconsistency.
#[derive(Debug, Clone, Default)]
pub struct Presentation {
    pub vars: Vec<String>,
    pub clauses: Vec<Vec<Lit>>,
}

impl Presentation {
    pub fn validate(&self) -> Result<(), BooleanError> {
        for c in &self.clauses {
            for l in c {
                if l.var >= self.vars.len() {
                    return Err(BooleanError::BadPresentation(format!(
                        "literal references unknown variable {}",
                        l.var
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A total assignment of the presentation's variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Valuation(pub Vec<bool>);

/// Complete model enumeration by backtracking with unit propagation.
/// Returns all satisfying valuations sorted lexicographically in variable
/// order (false < true).
pub fn enumerate_models(p: &Presentation) -> Vec<Valuation> {
    p.validate().expect("well-formed presentation");
    let mut models = Vec::new();
    let mut assign: Vec<Option<bool>> = vec![None; p.vars.len()];
    if p.clauses.iter().any(|c| c.is_empty()) {
        return models;
    }
    search(p, &mut assign, &mut models);
    models.sort();
    models
}

fn propagate(p: &Presentation, assign: &mut [Option<bool>], trail: &mut Vec<usize>) -> bool {
    loop {
        let mut changed = false;
        for clause in &p.clauses {
            let mut satisfied = false;
            let mut unassigned = None;
            let mut unassigned_count = 0;
            for l in clause {
                match assign[l.var] {
                    Some(v) if v == l.positive => {
                        satisfied = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        unassigned = Some(*l);
                        unassigned_count += 1;
                    }
                }
            }
            if satisfied {
                continue;
            }
            match unassigned_count {
                0 => return false,
                1 => {
                    let l = unassigned.unwrap();
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

fn search(p: &Presentation, assign: &mut Vec<Option<bool>>, models: &mut Vec<Valuation>) {
    let mut trail = Vec::new();
    if propagate(p, assign, &mut trail) {
        match assign.iter().position(|a| a.is_none()) {
            None => models.push(Valuation(assign.iter().map(|a| a.unwrap()).collect())),
            Some(var) => {
                for value in [false, true] {
                    assign[var] = Some(value);
                    search(p, assign, models);
                    assign[var] = None;
                }
            }
        }
    }
    for v in trail {
        assign[v] = None;
    }
}

/// The Lindenbaum algebra of a theory at finite scale: the powerset of its
/// model set, together with the interpretation sending each generator to
/// its truth set. Terminal exactly when the theory is unsatisfiable.
pub fn lindenbaum(p: &Presentation) -> Result<(FinBoolAlg, Vec<u64>), BooleanError> {
    let models = enumerate_models(p);
    if models.len() > MAX_ATOMS {
        return Err(BooleanError::TooManyAtoms(models.len()));
    }
    let labels = models
        .iter()
        .map(|m| {
            m.0.iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect::<String>()
        })
        .collect();
    let algebra = FinBoolAlg::with_labels(labels)?;
    let interpretation = (0..p.vars.len())
        .map(|v| {
            models
                .iter()
                .enumerate()
                .filter(|(_, m)| m.0[v])
                .fold(0u64, |mask, (i, _)| mask | 1 << i)
        })
        .collect();
    Ok((algebra, interpretation))
}

/// Colimit of a commuting diagram of finite Boolean algebras, computed as
/// the Lindenbaum algebra of the joint theory: one generator per element
/// per node; per node, exactly-one constraints over the atom indicators
/// plus a biconditional pinning every element to the join of its atoms;
/// per arrow, biconditionals equating each element with its image.
/// Returns the colimit with its cocone.
pub fn boolean_colimit(
    d: &Diagram<BoolHom>,
) -> Result<(FinBoolAlg, Vec<BoolHom>), BooleanError> {
    d.validate()
        .map_err(|e| BooleanError::BadPresentation(format!("diagram invalid: {e}")))?;
    let presentation = colimit_presentation(d);
    let (colim, interp) = lindenbaum(&presentation)?;
    // generator layout is node-major, element-minor with elements in
    // (popcount, mask) order
    let mut cocone = Vec::new();
    let mut offset = 0;
    for node in &d.nodes {
        let elems = node.elements();
        let mut table = BTreeMap::new();
        for (i, &e) in elems.iter().enumerate() {
            table.insert(e, interp[offset + i]);
        }
        offset += elems.len();
        cocone.push(BoolHom::from_table(node.clone(), colim.clone(), &table)?);
    }
    Ok((colim, cocone))
}

/// The joint theory of a Boolean diagram, with deterministic generator
/// order (node-id major, element-id minor).
pub fn colimit_presentation(d: &Diagram<BoolHom>) -> Presentation {
    let mut vars = Vec::new();
    let mut clauses = Vec::new();
    let mut var_of: Vec<BTreeMap<u64, usize>> = Vec::new();
    for (n, node) in d.nodes.iter().enumerate() {
        let mut map = BTreeMap::new();
        for e in node.elements() {
            map.insert(e, vars.len());
            vars.push(format!("n{n}e{e}"));
        }
        var_of.push(map);
    }
    for (n, node) in d.nodes.iter().enumerate() {
        let atoms = node.atoms();
        // at least one atom holds
        clauses.push(atoms.iter().map(|a| Lit::pos(var_of[n][a])).collect());
        // at most one atom holds
        for i in 0..atoms.len() {
            for j in (i + 1)..atoms.len() {
                clauses.push(vec![
                    Lit::neg(var_of[n][&atoms[i]]),
                    Lit::neg(var_of[n][&atoms[j]]),
                ]);
            }
        }
        // every element is the join of the atoms below it
        for e in node.elements() {
            let ev = var_of[n][&e];
            let below: Vec<usize> = atoms
                .iter()
                .filter(|&&a| node.leq(a, e))
                .map(|a| var_of[n][a])
                .collect();
            let mut clause = vec![Lit::neg(ev)];
            clause.extend(below.iter().map(|&av| Lit::pos(av)));
            clauses.push(clause);
            for av in below {
                clauses.push(vec![Lit::neg(av), Lit::pos(ev)]);
            }
        }
    }
    for (m, info) in d.shape.morphisms.iter().enumerate() {
        if d.shape.identity[info.src] == m {
            continue;
        }
        let h = &d.arrows[m];
        for e in d.nodes[info.src].elements() {
            let image = h.apply(e);
            let ev = var_of[info.src][&e];
            let iv = var_of[info.tgt][&image];
            clauses.push(vec![Lit::neg(ev), Lit::pos(iv)]);
            clauses.push(vec![Lit::pos(ev), Lit::neg(iv)]);
        }
    }
    Presentation { vars, clauses }
}

/// DIMACS CNF serialisation: one comment line per variable, the standard
/// header, then one zero-terminated clause per line. `comments` supplies
/// the per-variable text (defaults to the variable name).
pub fn to_dimacs(p: &Presentation, comments: Option<&[String]>) -> String {
    let mut out = String::new();
    for (i, name) in p.vars.iter().enumerate() {
        match comments {
            Some(lines) => out.push_str(&format!("c {}\n", lines[i])),
            None => out.push_str(&format!("c var {} = {}\n", i + 1, name)),
        }
    }
    out.push_str(&format!("p cnf {} {}\n", p.vars.len(), p.clauses.len()));
    for clause in &p.clauses {
        let lits: Vec<String> = clause
            .iter()
            .map(|l| {
                if l.positive {
                    format!("{}", l.var + 1)
                } else {
                    format!("-{}", l.var + 1)
                }
            })
            .collect();
        out.push_str(&lits.join(" "));
        if !lits.is_empty() {
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

/// Parses DIMACS CNF produced by `to_dimacs` (or any standard instance).
pub fn parse_dimacs(text: &str) -> Result<Presentation, BooleanError> {
    let mut vars = 0usize;
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut expected_clauses = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf") {
            let nums: Vec<usize> = rest
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| BooleanError::BadDimacs(line.into())))
                .collect::<Result<_, _>>()?;
            if nums.len() != 2 {
                return Err(BooleanError::BadDimacs(line.into()));
            }
            vars = nums[0];
            expected_clauses = Some(nums[1]);
            continue;
        }
        let mut clause = Vec::new();
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| BooleanError::BadDimacs(line.into()))?;
            if v == 0 {
                break;
            }
            let var = v.unsigned_abs() as usize - 1;
            if var >= vars {
                return Err(BooleanError::BadDimacs(format!(
                    "literal {v} out of declared range"
                )));
            }
            clause.push(Lit {
                var,
                positive: v > 0,
            });
        }
        clauses.push(clause);
    }
    if let Some(n) = expected_clauses {
        if clauses.len() != n {
            return Err(BooleanError::BadDimacs(format!(
                "declared {n} clauses, found {}",
                clauses.len()
            )));
        }
    }
    Ok(Presentation {
        vars: (0..vars).map(|i| format!("v{}", i + 1)).collect(),
        clauses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::FinCategory;
    use crate::locale::is_initial_locale;

    #[test]
    fn atoms_and_characters() {
        let b3 = FinBoolAlg::new(3).unwrap();
        assert_eq!(b3.atoms().len(), 3);
        assert_eq!(characters(&b3).len(), 3);
        let terminal = FinBoolAlg::new(0).unwrap();
        assert_eq!(terminal.atoms().len(), 0);
        assert_eq!(characters(&terminal).len(), 0);
        assert_eq!(terminal.zero(), terminal.one());
        assert_eq!(characters(&bool_two()).len(), 1);
    }

    #[test]
    fn stone_spectrum_examples() {
        let f = stone_spectrum(&FinBoolAlg::new(2).unwrap());
        assert_eq!(f.open_count(), 4);
        assert_eq!(crate::locale::points(&f).len(), 2);
        let f = stone_spectrum(&FinBoolAlg::new(0).unwrap());
        assert!(is_initial_locale(&f));
        // hom 2 -> 2^2 gives the locale map from the 2-point spectrum to
        // the 1-point spectrum
        let h = BoolHom::new(bool_two(), FinBoolAlg::new(2).unwrap(), vec![0, 0]).unwrap();
        let m = stone_on_hom(&h).unwrap();
        assert_eq!(m.source.open_count(), 4);
        assert_eq!(m.target.open_count(), 2);
        assert!(m.validate().is_ok());
    }

    #[test]
    fn stone_round_trip() {
        for k in 0..4 {
            let b = FinBoolAlg::new(k).unwrap();
            let f = stone_spectrum(&b);
            let complemented = complemented_elements(&f);
            assert_eq!(complemented.len() as u64, b.size());
        }
    }

    #[test]
    fn enumerate_models_examples() {
        // one free variable: two models
        let p = Presentation {
            vars: vec!["x".into()],
            clauses: vec![],
        };
        assert_eq!(enumerate_models(&p).len(), 2);
        // contradictory clauses: none
        let p = Presentation {
            vars: vec!["x".into()],
            clauses: vec![vec![Lit::pos(0)], vec![Lit::neg(0)]],
        };
        assert_eq!(enumerate_models(&p).len(), 0);
        // lexicographic order
        let p = Presentation {
            vars: vec!["x".into(), "y".into()],
            clauses: vec![vec![Lit::pos(0), Lit::pos(1)]],
        };
        let models = enumerate_models(&p);
        assert_eq!(
            models,
            vec![
                Valuation(vec![false, true]),
                Valuation(vec![true, false]),
                Valuation(vec![true, true]),
            ]
        );
    }

    #[test]
    fn lindenbaum_examples() {
        let free = Presentation {
            vars: vec!["x".into()],
            clauses: vec![],
        };
        let (alg, interp) = lindenbaum(&free).unwrap();
        assert_eq!(alg.size(), 4);
        assert_eq!(interp.len(), 1);
        let inconsistent = Presentation {
            vars: vec!["x".into()],
            clauses: vec![vec![]],
        };
        let (alg, _) = lindenbaum(&inconsistent).unwrap();
        assert!(alg.is_terminal());
        assert_eq!(alg.size(), 1);
    }

    #[test]
    fn boolean_colimit_examples() {
        // one-object diagram: the object itself up to isomorphism
        let b = FinBoolAlg::new(2).unwrap();
        let d = Diagram::<BoolHom>::try_new(
            FinCategory::discrete(1),
            vec![b.clone()],
            BTreeMap::new(),
        )
        .unwrap();
        let (c, cocone) = boolean_colimit(&d).unwrap();
        assert_eq!(c.size(), b.size());
        assert_eq!(cocone.len(), 1);
        // the cocone map is an isomorphism here
        assert_eq!(cocone[0].apply(b.one()), c.one());
        // coproduct of 2^2 and 2^2 = 2^4
        let d = Diagram::<BoolHom>::try_new(
            FinCategory::discrete(2),
            vec![FinBoolAlg::new(2).unwrap(), FinBoolAlg::new(2).unwrap()],
            BTreeMap::new(),
        )
        .unwrap();
        let (c, _) = boolean_colimit(&d).unwrap();
        assert_eq!(c.size(), 16);
    }

    #[test]
    fn dimacs_round_trip() {
        let p = Presentation {
            vars: vec!["r0".into(), "r1".into()],
            clauses: vec![vec![Lit::pos(0), Lit::pos(1)], vec![Lit::neg(0), Lit::neg(1)]],
        };
        let text = to_dimacs(&p, None);
        assert!(text.contains("p cnf 2 2"));
        let q = parse_dimacs(&text).unwrap();
        assert_eq!(enumerate_models(&q).len(), enumerate_models(&p).len());
        assert_eq!(enumerate_models(&p).len(), 2);
    }
}
