//! Independent oracles and enumerators backing the test suite and the
//! self-test. Everything here recomputes expected values by brute force,
//! deliberately avoiding the solver and duality code paths it is used to
//! check.

use crate::boolean::{BoolHom, FinBoolAlg};
use crate::cat::Diagram;
use crate::complexes::{FieldTag, FrameComplex};
use crate::exactlin::{inner, rref, RayVector, Scalar, SubspaceClass};
use crate::order::{downsets, DLatHom, FinDistLattice, FinPoset};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// All colorings of a complex by direct evaluation over every 0/1
/// assignment: exactly one 1 per basis, and equal values on every pair of
/// basis-subset expressions spanning the same subspace. Usable up to ~16
/// rays; completely independent of the search and CNF paths.
pub fn brute_force_colorings(c: &FrameComplex) -> Vec<Vec<bool>> {
    let nrays = c.rays.len();
    assert!(nrays <= 20, "brute force oracle is for small complexes");
    // group the basis-subset spans by subspace
    let mut groups: BTreeMap<SubspaceClass, Vec<(usize, u32)>> = BTreeMap::new();
    for (b, basis) in c.bases.iter().enumerate() {
        for mask in 0u32..(1 << basis.len()) {
            let vectors: Vec<RayVector> = (0..basis.len())
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| c.rays[basis[k]].clone())
                .collect();
            let sub = rref(c.dim, &vectors).expect("oracle rref");
            groups.entry(sub).or_default().push((b, mask));
        }
    }
    let shared: Vec<&Vec<(usize, u32)>> = groups.values().filter(|g| g.len() > 1).collect();
    let mut out = Vec::new();
    for assignment in 0u32..(1 << nrays) {
        let value = |r: usize| assignment >> r & 1 == 1;
        let mut ok = c
            .bases
            .iter()
            .all(|basis| basis.iter().filter(|&&r| value(r)).count() == 1);
        if ok {
            'groups: for g in &shared {
                let mut first: Option<bool> = None;
                for &(b, mask) in g.iter() {
                    let v = (0..c.bases[b].len())
                        .any(|k| mask >> k & 1 == 1 && value(c.bases[b][k]));
                    match first {
                        None => first = Some(v),
                        Some(f) if f != v => {
                            ok = false;
                            break 'groups;
                        }
                        _ => {}
                    }
                }
            }
        }
        if ok {
            out.push((0..nrays).map(value).collect());
        }
    }
    out.sort();
    out
}

/// Every finite poset (up to isomorphism) whose downset lattice has at
/// most `bound` elements, enumerated by adding maximal elements with a
/// chosen downset, pruned by the running downset count, deduplicated by
/// backtracking isomorphism inside invariant classes. By Birkhoff's
/// theorem the downset lattices of these posets are exactly the
/// distributive lattices of size ≤ bound, each occurring once.
pub fn posets_with_downsets_up_to(bound: usize) -> Vec<FinPoset> {
    #[derive(Clone)]
    struct P {
        n: usize,
        strict_down: Vec<u64>, // strictly-below sets as bitmasks
    }
    fn downset_count(p: &P, bound: usize) -> Option<usize> {
        // count downsets by DFS over elements, abandoning at the bound
        let mut sets: Vec<u64> = vec![0];
        for x in 0..p.n {
            let below = p.strict_down[x];
            let mut next = Vec::with_capacity(sets.len() * 2);
            for &s in &sets {
                next.push(s);
                if s & below == below {
                    next.push(s | 1 << x);
                }
            }
            if next.len() > bound {
                return None;
            }
            sets = next;
        }
        Some(sets.len())
    }
    let mut found: Vec<P> = Vec::new();
    let mut stack: Vec<P> = vec![P {
        n: 0,
        strict_down: vec![],
    }];
    while let Some(p) = stack.pop() {
        found.push(p.clone());
        if p.n >= 63 {
            continue;
        }
        // extend by one new maximal element whose strict downset is any
        // downward-closed subset of the current poset
        let mut down_sets: Vec<u64> = vec![0];
        for x in 0..p.n {
            let below = p.strict_down[x];
            let mut next = Vec::with_capacity(down_sets.len() * 2);
            for &s in &down_sets {
                next.push(s);
                if s & below == below {
                    next.push(s | 1 << x);
                }
            }
            down_sets = next;
        }
        for &d in &down_sets {
            // close downward: include everything under the chosen elements
            let mut closed = d;
            for x in 0..p.n {
                if d >> x & 1 == 1 {
                    closed |= p.strict_down[x];
                }
            }
            let mut q = p.clone();
            q.strict_down.push(closed);
            q.n += 1;
            if downset_count(&q, bound).is_some() {
                stack.push(q);
            }
        }
    }
    // convert and deduplicate up to isomorphism
    let mut kept: Vec<FinPoset> = Vec::new();
    let mut profiles: Vec<Vec<(usize, usize)>> = Vec::new();
    for p in found {
        let leq: Vec<Vec<bool>> = (0..p.n)
            .map(|i| {
                (0..p.n)
                    .map(|j| i == j || p.strict_down[j] >> i & 1 == 1)
                    .collect()
            })
            .collect();
        let labels = (0..p.n).map(|i| format!("x{i}")).collect();
        let poset = FinPoset::try_new(labels, leq).expect("constructed poset");
        let mut profile: Vec<(usize, usize)> = (0..p.n)
            .map(|i| {
                let down = (0..p.n).filter(|&j| poset.leq(j, i)).count();
                let up = (0..p.n).filter(|&j| poset.leq(i, j)).count();
                (down, up)
            })
            .collect();
        profile.sort_unstable();
        let duplicate = kept
            .iter()
            .zip(profiles.iter())
            .any(|(q, prof)| *prof == profile && poset_isomorphic(&poset, q));
        if !duplicate {
            kept.push(poset);
            profiles.push(profile);
        }
    }
    kept
}

fn poset_isomorphic(a: &FinPoset, b: &FinPoset) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    let inv = |p: &FinPoset, i: usize| {
        let down = (0..n).filter(|&j| p.leq(j, i)).count();
        let up = (0..n).filter(|&j| p.leq(i, j)).count();
        (down, up)
    };
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        a: &FinPoset,
        b: &FinPoset,
        inv_a: &[(usize, usize)],
        inv_b: &[(usize, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        x: usize,
    ) -> bool {
        let n = a.len();
        if x == n {
            return true;
        }
        for y in 0..n {
            if used[y] || inv_a[x] != inv_b[y] {
                continue;
            }
            if (0..x).all(|z| a.leq(x, z) == b.leq(y, map[z]) && a.leq(z, x) == b.leq(map[z], y)) {
                map[x] = y;
                used[y] = true;
                if extend(a, b, inv_a, inv_b, map, used, x + 1) {
                    return true;
                }
                map[x] = usize::MAX;
                used[y] = false;
            }
        }
        false
    }
    let inv_a: Vec<_> = (0..n).map(|i| inv(a, i)).collect();
    let inv_b: Vec<_> = (0..n).map(|i| inv(b, i)).collect();
    extend(a, b, &inv_a, &inv_b, &mut map, &mut used, 0)
}

/// Every distributive lattice with at most `bound` elements, once up to
/// isomorphism, as downset lattices of the enumerated posets.
pub fn distributive_lattices_up_to(bound: usize) -> Vec<FinDistLattice> {
    posets_with_downsets_up_to(bound)
        .iter()
        .map(|p| downsets(p).expect("bounded downset lattice"))
        .filter(|l| l.len() <= bound)
        .collect()
}

/// Presentation-based colimit oracle for distributive-lattice diagrams.
/// Generators are all elements of all nodes; relations are each node's
/// lattice structure plus the arrow equalities. Models (assignments of the
/// generators to {0,1} respecting everything) are enumerated; the
/// presented lattice is the ∧/∨-closure of the generator truth vectors
/// inside 2^models, which finite distributive lattices embed into.
pub fn presented_colimit_oracle(d: &Diagram<DLatHom>) -> FinDistLattice {
    // models = tuples of node assignments that are 2-valued lattice homs
    // and agree along arrows
    let node_homs: Vec<Vec<u64>> = d
        .nodes
        .iter()
        .map(|l| {
            assert!(l.len() <= 16, "oracle nodes at desk scale");
            (0u64..(1 << l.len()))
                .filter(|&mask| {
                    let v = |x: usize| mask >> x & 1 == 1;
                    if v(l.bottom()) || !v(l.top()) {
                        return false;
                    }
                    (0..l.len()).all(|x| {
                        (0..l.len()).all(|y| {
                            v(l.meet(x, y)) == (v(x) && v(y))
                                && v(l.join(x, y)) == (v(x) || v(y))
                        })
                    })
                })
                .collect()
        })
        .collect();
    let mut models: Vec<Vec<u64>> = vec![vec![]];
    for homs in &node_homs {
        let mut next = Vec::new();
        for m in &models {
            for &h in homs {
                let mut m2 = m.clone();
                m2.push(h);
                next.push(m2);
            }
        }
        models = next;
    }
    models.retain(|m| {
        d.shape.morphisms.iter().enumerate().all(|(mi, info)| {
            if d.shape.identity[info.src] == mi {
                return true;
            }
            let f = &d.arrows[mi];
            (0..d.nodes[info.src].len())
                .all(|x| m[info.src] >> x & 1 == m[info.tgt] >> f.map[x] & 1)
        })
    });
    let mcount = models.len();
    assert!(mcount <= 20, "oracle model space at desk scale");
    // truth vector of each generator over the models
    let mut vectors: Vec<u32> = Vec::new();
    for (n, node) in d.nodes.iter().enumerate() {
        for x in 0..node.len() {
            let v = models
                .iter()
                .enumerate()
                .filter(|(_, m)| m[n] >> x & 1 == 1)
                .fold(0u32, |acc, (i, _)| acc | 1 << i);
            vectors.push(v);
        }
    }
    vectors.push(0);
    if mcount < 32 {
        vectors.push((1u32 << mcount) - 1);
    } else {
        vectors.push(u32::MAX);
    }
    // close under meet and join
    let mut closure: Vec<u32> = vectors.clone();
    closure.sort_unstable();
    closure.dedup();
    loop {
        let mut added = false;
        let snapshot = closure.clone();
        for &a in &snapshot {
            for &b in &snapshot {
                for c in [a & b, a | b] {
                    if closure.binary_search(&c).is_err() {
                        closure.push(c);
                        closure.sort_unstable();
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    let k = closure.len();
    let index: BTreeMap<u32, usize> = closure.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let labels = closure.iter().map(|v| format!("{v:b}")).collect();
    let leq = (0..k)
        .map(|i| (0..k).map(|j| closure[i] & closure[j] == closure[i]).collect())
        .collect();
    let meet = (0..k)
        .map(|i| (0..k).map(|j| index[&(closure[i] & closure[j])]).collect())
        .collect();
    let join = (0..k)
        .map(|i| (0..k).map(|j| index[&(closure[i] | closure[j])]).collect())
        .collect();
    let bottom = index[&0];
    let top = k - 1;
    FinDistLattice::from_parts_unchecked(labels, leq, meet, join, bottom, top)
}

/// All cocones from a Boolean diagram to 2^k, as tuples of homs commuting
/// with the arrows; used to spot-check colimit universality.
pub fn boolean_cocones_to(d: &Diagram<BoolHom>, target: &FinBoolAlg) -> Vec<Vec<BoolHom>> {
    let node_homs: Vec<Vec<BoolHom>> = d
        .nodes
        .iter()
        .map(|node| all_bool_homs(node, target))
        .collect();
    let mut cocones: Vec<Vec<BoolHom>> = vec![vec![]];
    for homs in &node_homs {
        let mut next = Vec::new();
        for c in &cocones {
            for h in homs {
                let mut c2 = c.clone();
                c2.push(h.clone());
                next.push(c2);
            }
        }
        cocones = next;
    }
    cocones.retain(|legs| {
        d.shape.morphisms.iter().enumerate().all(|(mi, info)| {
            if d.shape.identity[info.src] == mi {
                return true;
            }
            let through = crate::cat::Morphism::then(&d.arrows[mi], &legs[info.tgt])
                .expect("composable");
            crate::cat::Morphism::same_morphism(&through, &legs[info.src])
        })
    });
    cocones
}

/// Every unital Boolean homomorphism source → target, by enumerating dual
/// atom maps.
pub fn all_bool_homs(source: &FinBoolAlg, target: &FinBoolAlg) -> Vec<BoolHom> {
    let (s, t) = (source.atom_count(), target.atom_count());
    if t == 0 {
        return vec![BoolHom::new(source.clone(), target.clone(), vec![]).expect("terminal")];
    }
    if s == 0 {
        // no hom out of the terminal algebra into a nontrivial one
        return vec![];
    }
    let mut out = Vec::new();
    let mut atom_map = vec![0usize; t];
    loop {
        out.push(BoolHom::new(source.clone(), target.clone(), atom_map.clone()).expect("hom"));
        let mut i = 0;
        loop {
            if i == t {
                return out;
            }
            atom_map[i] += 1;
            if atom_map[i] < s {
                break;
            }
            atom_map[i] = 0;
            i += 1;
        }
    }
}

/// Deterministic suite of small complexes (dimensions 2 and 3, at most 4
/// bases, at most 12 rays), biased toward ray sharing so coloring counts
/// stay materializable (≤ 8). Includes the named fixtures. Seeded, so the
/// suite is identical on every run.
pub fn generated_suite() -> Vec<FrameComplex> {
    let mut suite = vec![
        crate::complexes::fixtures::single_basis_dim3(),
        crate::complexes::fixtures::shared_ray_dim3(),
        crate::complexes::fixtures::mub_dim2(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0B5);
    let mut next = |n: usize| -> usize { (rng.next_u64() % n as u64) as usize };

    // a small exact pool of dimension-3 seed vectors
    let pool3: Vec<RayVector> = {
        let mut v = Vec::new();
        let vals: [i64; 4] = [0, 1, -1, 2];
        for a in vals {
            for b in vals {
                for c in vals {
                    if (a, b, c) != (0, 0, 0) {
                        v.push(RayVector::from_ints(&[a, b, c]).unwrap());
                    }
                }
            }
        }
        v.sort();
        v.dedup();
        v
    };
    let pool2: Vec<RayVector> = {
        let mut v = Vec::new();
        for a in [0i64, 1, -1, 2, 3] {
            for b in [0i64, 1, -1, 2, 3] {
                if (a, b) != (0, 0) {
                    v.push(RayVector::from_ints(&[a, b]).unwrap());
                }
            }
        }
        v.sort();
        v.dedup();
        v
    };

    let gram_schmidt = |u: &RayVector, w: &RayVector| -> Option<RayVector> {
        // w minus its projection on u, exactly
        let wu = inner(w, u).ok()?;
        let uu = inner(u, u).ok()?;
        let coef = wu.div(&uu).ok()?;
        let coords: Vec<Scalar> = w
            .coords()
            .iter()
            .zip(u.coords().iter())
            .map(|(wc, uc)| wc.sub(&coef.mul(uc)))
            .collect();
        RayVector::new(coords).ok()
    };
    let cross = |u: &RayVector, v: &RayVector| -> RayVector {
        let (a, b) = (u.coords(), v.coords());
        let c = vec![
            a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
            a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
            a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
        ];
        RayVector::new(c).expect("cross of independent vectors")
    };

    let mut attempts = 0;
    while suite.len() < 56 && attempts < 4000 {
        attempts += 1;
        let dim = if next(2) == 0 { 2 } else { 3 };
        let basis_count = 1 + next(4);
        let mut rays: Vec<RayVector> = Vec::new();
        let mut bases: Vec<Vec<usize>> = Vec::new();
        let add_ray = |rays: &mut Vec<RayVector>, r: RayVector| -> usize {
            if let Some(i) = rays.iter().position(|x| *x == r) {
                i
            } else {
                rays.push(r);
                rays.len() - 1
            }
        };
        let mut ok = true;
        for _ in 0..basis_count {
            if dim == 2 {
                // reuse an existing ray half the time to share structure
                let u = if !rays.is_empty() && next(2) == 0 {
                    rays[next(rays.len())].clone()
                } else {
                    pool2[next(pool2.len())].clone()
                };
                let perp = RayVector::new(vec![u.coords()[1].neg(), u.coords()[0].clone()])
                    .expect("perp of a nonzero vector");
                let b = vec![add_ray(&mut rays, u), add_ray(&mut rays, perp)];
                if b[0] == b[1] {
                    ok = false;
                    break;
                }
                bases.push(b);
            } else {
                let u = if !rays.is_empty() && next(2) == 0 {
                    rays[next(rays.len())].clone()
                } else {
                    pool3[next(pool3.len())].clone()
                };
                let mut v = None;
                for _ in 0..8 {
                    let w = pool3[next(pool3.len())].clone();
                    if let Some(cand) = gram_schmidt(&u, &w) {
                        v = Some(cand);
                        break;
                    }
                }
                let Some(v) = v else {
                    ok = false;
                    break;
                };
                let w = cross(&u, &v);
                let b = vec![
                    add_ray(&mut rays, u),
                    add_ray(&mut rays, v),
                    add_ray(&mut rays, w),
                ];
                let mut sorted = b.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != 3 {
                    ok = false;
                    break;
                }
                bases.push(b);
            }
        }
        if !ok || rays.len() > 12 {
            continue;
        }
        // drop duplicate bases
        let mut seen: Vec<Vec<usize>> = Vec::new();
        bases.retain(|b| {
            let mut s = b.clone();
            s.sort_unstable();
            if seen.contains(&s) {
                false
            } else {
                seen.push(s);
                true
            }
        });
        let candidate = FrameComplex {
            dim,
            field: FieldTag::Q,
            rays,
            bases,
        };
        if crate::complexes::validate_complex(&candidate).is_err() {
            continue;
        }
        let colorings = brute_force_colorings(&candidate).len();
        if colorings <= 8 {
            suite.push(candidate);
        }
    }
    assert!(suite.len() >= 50, "suite generation fell short");
    suite
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::fixtures;

    #[test]
    fn brute_force_matches_known_counts() {
        assert_eq!(brute_force_colorings(&fixtures::single_basis_dim3()).len(), 3);
        assert_eq!(brute_force_colorings(&fixtures::shared_ray_dim3()).len(), 5);
        assert_eq!(brute_force_colorings(&fixtures::mub_dim2()).len(), 4);
    }

    #[test]
    fn lattice_enumeration_counts() {
        // distributive lattice counts by size: 1,1,2,3,5,8,15 for n=1..8
        // (sizes 2..8; the empty lattice is excluded)
        let lattices = distributive_lattices_up_to(8);
        let mut by_size = vec![0usize; 9];
        for l in &lattices {
            by_size[l.len()] += 1;
        }
        assert_eq!(&by_size[1..=8], &[1, 1, 1, 2, 3, 5, 8, 15]);
    }

    #[test]
    fn poset_enumeration_dedupes() {
        let posets = posets_with_downsets_up_to(4);
        // posets with at most 4 downsets: empty, point, 2-chain, 2-antichain,
        // 3-chain, and the two 3-element fence-like posets with 4 downsets
        // (V and Λ)
        assert!(posets.len() >= 5);
        for (i, a) in posets.iter().enumerate() {
            for b in posets.iter().skip(i + 1) {
                assert!(!poset_isomorphic(a, b));
            }
        }
    }

    #[test]
    fn suite_is_deterministic_and_large_enough() {
        let a = generated_suite();
        let b = generated_suite();
        assert!(a.len() >= 50);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.rays, y.rays);
            assert_eq!(x.bases, y.bases);
        }
    }
}
