//! Suite-wide structural invariants that cut across modules: colimit
//! stability under intersection nodes, the maximal-versus-exhaustive
//! subalgebra diagram equivalence, the orthomodular/pasting consistency
//! check, functor agreement, and universal-property spot checks.

use obstructa::boolean::{boolean_colimit, FinBoolAlg};
use obstructa::cat::{Diagram, FinCategory, Morphism};
use obstructa::complexes::{fixtures, paste};
use obstructa::locale::points;
use obstructa::oracle::{all_bool_homs, boolean_cocones_to, generated_suite};
use obstructa::pba::{
    diagram_from_carriers, maximal_cliques, oml_to_pba, total_subalgebra_diagram, validate_pba,
    validate_pba_hom, OrthoLattice, PbaHom, SubalgebraMode,
};
use obstructa::spectra::{
    gelfand, gelfand_on, pierce, stone_pipeline, zariski, zariski_on, AlgHom, CommAlgObject,
};
use std::collections::BTreeMap;

#[test]
fn colimit_invariant_under_intersection_nodes() {
    // starting from the default diagram (maximal blocks plus pairwise
    // intersections), adding the intersection of two existing nodes with
    // its inclusion arrows must not change the colimit
    for c in [
        fixtures::shared_ray_dim3(),
        fixtures::mub_dim2(),
        fixtures::single_basis_dim3(),
    ] {
        let pasted = paste(&c).unwrap();
        let (default_diagram, carriers) =
            total_subalgebra_diagram(&pasted.pba, SubalgebraMode::Maximal).unwrap();
        let (base_colim, _) = boolean_colimit(&default_diagram).unwrap();
        // add intersections of every existing node pair (several of which
        // are new nodes when intersections of intersections differ)
        let mut extended = carriers.clone();
        for i in 0..carriers.len() {
            for j in (i + 1)..carriers.len() {
                let a: std::collections::BTreeSet<usize> = carriers[i].iter().copied().collect();
                let b: std::collections::BTreeSet<usize> = carriers[j].iter().copied().collect();
                extended.push(a.intersection(&b).copied().collect());
            }
        }
        extended.sort();
        extended.dedup();
        let (bigger, _) = diagram_from_carriers(&pasted.pba, extended).unwrap();
        let (ext_colim, _) = boolean_colimit(&bigger).unwrap();
        assert_eq!(base_colim.size(), ext_colim.size());
    }
}

#[test]
fn maximal_and_exhaustive_modes_agree() {
    for c in [
        fixtures::single_basis_dim3(),
        fixtures::shared_ray_dim3(),
        fixtures::mub_dim2(),
    ] {
        let pasted = paste(&c).unwrap();
        let (dm, _) = total_subalgebra_diagram(&pasted.pba, SubalgebraMode::Maximal).unwrap();
        let (de, _) = total_subalgebra_diagram(&pasted.pba, SubalgebraMode::Exhaustive).unwrap();
        let (cm, _) = boolean_colimit(&dm).unwrap();
        let (ce, _) = boolean_colimit(&de).unwrap();
        assert_eq!(cm.size(), ce.size(), "modes disagree");
    }
}

#[test]
fn mo2_pasting_consistency() {
    // the partial Boolean algebra induced by MO2 coincides with the
    // pasting of two disjoint unbiased bases of dimension 2
    let from_lattice = oml_to_pba(&OrthoLattice::mo2()).unwrap();
    let from_rays = paste(&fixtures::mub_dim2()).unwrap().pba;
    let vl = validate_pba(&from_lattice).unwrap();
    let vr = validate_pba(&from_rays).unwrap();
    assert_eq!(from_lattice.len(), from_rays.len());
    assert_eq!(vl.maximal_cliques.len(), vr.maximal_cliques.len());
    let sizes = |cliques: &[Vec<usize>]| {
        let mut s: Vec<usize> = cliques.iter().map(|c| c.len()).collect();
        s.sort_unstable();
        s
    };
    assert_eq!(sizes(&vl.maximal_cliques), sizes(&vr.maximal_cliques));
    assert_eq!(
        obstructa::pba::two_valued_morphisms(&from_lattice).unwrap().len(),
        obstructa::pba::two_valued_morphisms(&from_rays).unwrap().len(),
    );
}

#[test]
fn stone_pipeline_examples() {
    // a total algebra: the limit is its own Stone spectrum
    let total = obstructa::pba::PartialBooleanAlgebra::from_total(&FinBoolAlg::new(2).unwrap());
    let out = stone_pipeline(&total).unwrap();
    assert_eq!(out.limit_points, 2);
    assert!(!out.initial);
    // MO2 is colorable: the limit has the 4 compatible character families
    let mo2 = oml_to_pba(&OrthoLattice::mo2()).unwrap();
    let out = stone_pipeline(&mo2).unwrap();
    assert_eq!(out.limit_points, 4);
    assert!(!out.initial);
}

#[test]
fn pba_hom_composition_and_coloring_bijection() {
    let pasted = paste(&fixtures::shared_ray_dim3()).unwrap();
    let homs = obstructa::pba::two_valued_morphisms(&pasted.pba).unwrap();
    assert_eq!(homs.len(), 5);
    // each hom is valid, and composition with the identity is valid
    let two = obstructa::pba::PartialBooleanAlgebra::from_total(&FinBoolAlg::new(1).unwrap());
    for assignment in &homs {
        let f = PbaHom {
            source: pasted.pba.clone(),
            target: two.clone(),
            map: assignment.iter().map(|&b| usize::from(b)).collect(),
        };
        validate_pba_hom(&f).unwrap();
        let id = PbaHom {
            source: two.clone(),
            target: two.clone(),
            map: (0..two.len()).collect(),
        };
        let composed = PbaHom {
            source: f.source.clone(),
            target: two.clone(),
            map: f.map.iter().map(|&x| id.map[x]).collect(),
        };
        validate_pba_hom(&composed).unwrap();
    }
}

#[test]
fn boolean_colimit_universal_property_spot_check() {
    // coproduct of 2^2 and 2^2 (each free on one generator): 2^4, and
    // every cocone to 2^k factors uniquely
    let d = Diagram::try_new(
        FinCategory::discrete(2),
        vec![FinBoolAlg::new(2).unwrap(), FinBoolAlg::new(2).unwrap()],
        BTreeMap::new(),
    )
    .unwrap();
    let (colim, cocone) = boolean_colimit(&d).unwrap();
    assert_eq!(colim.size(), 16);
    for k in 0..=2usize {
        let target = FinBoolAlg::new(k).unwrap();
        for legs in boolean_cocones_to(&d, &target) {
            let factorizations: Vec<_> = all_bool_homs(&colim, &target)
                .into_iter()
                .filter(|u| {
                    cocone.iter().zip(legs.iter()).all(|(c, leg)| {
                        let through = c.then(u).expect("composable");
                        through.same_morphism(leg)
                    })
                })
                .collect();
            assert_eq!(factorizations.len(), 1, "cocone to 2^{k} factors uniquely");
        }
    }
}

#[test]
fn lindenbaum_size_is_two_to_models() {
    use obstructa::boolean::{enumerate_models, lindenbaum, Lit, Presentation};
    for clauses in [vec![], vec![vec![Lit::pos(0)]], vec![vec![Lit::pos(0), Lit::pos(1)]]] {
        let p = Presentation {
            vars: vec!["x".into(), "y".into()],
            clauses,
        };
        let models = enumerate_models(&p).len() as u32;
        let (alg, _) = lindenbaum(&p).unwrap();
        assert_eq!(alg.size(), 2u64.pow(models));
    }
}

#[test]
fn spectrum_functors_agree_objectwise_and_morphismwise() {
    for c in generated_suite().iter().take(8) {
        let d = obstructa::complexes::subalgebra_diagram(c).unwrap();
        for node in &d.nodes {
            let g = gelfand(node);
            let z = zariski(node);
            let p = pierce(node);
            assert_eq!(g.open_count(), z.open_count());
            assert_eq!(g.open_count(), p.open_count());
            assert_eq!(points(&g).len(), node.k());
        }
        for (m, info) in d.shape.morphisms.iter().enumerate() {
            if d.shape.identity[info.src] == m {
                continue;
            }
            let h = &d.arrows[m];
            assert!(gelfand_on(h).same_morphism(&zariski_on(h)));
        }
    }
}

#[test]
fn spectrum_functoriality_on_composites() {
    // characters compose contravariantly: spectrum of a composite equals
    // the composite of spectra, checked on a 3-node chain
    let a = CommAlgObject::new(vec!["x".into()]);
    let b = CommAlgObject::new(vec!["p".into(), "q".into()]);
    let c = CommAlgObject::new(vec!["u".into(), "v".into(), "w".into()]);
    let f = AlgHom::new(a.clone(), b.clone(), vec![0, 0]).unwrap();
    let g = AlgHom::new(b.clone(), c.clone(), vec![0, 1, 1]).unwrap();
    let gf = f.then(&g).unwrap();
    let spec_f = gelfand_on(&f);
    let spec_g = gelfand_on(&g);
    let spec_gf = gelfand_on(&gf);
    // Spec(g∘f) = Spec(f) ∘ Spec(g): arrows reverse
    let composite = spec_g.then(&spec_f).unwrap();
    assert!(composite.same_morphism(&spec_gf));
    // the example hom (a,b) -> (a,a,b): character map {1->1, 2->1, 3->2}
    let ex = AlgHom::new(
        CommAlgObject::new(vec!["1".into(), "2".into()]),
        CommAlgObject::new(vec!["1".into(), "2".into(), "3".into()]),
        vec![0, 0, 1],
    )
    .unwrap();
    let m = gelfand_on(&ex);
    assert_eq!(m.source.open_count(), 8);
    assert_eq!(m.target.open_count(), 4);
}

#[test]
fn paste_element_formula_without_sharing() {
    // when nothing beyond 0 and 1 is shared, |paste| = b(2^n − 2) + 2
    for c in generated_suite() {
        let pasted = paste(&c).unwrap();
        if pasted.stats.shared == 0 {
            let b = c.bases.len() as usize;
            let expected = b * ((1 << c.dim) - 2) + 2;
            assert_eq!(pasted.stats.elements, expected);
        }
    }
}

#[test]
fn poset_limit_universal_property_oracle() {
    // test mode: the returned cone must be limiting against every cone
    // whose apex is any poset with at most 4 elements (up to isomorphism,
    // which suffices since factorization counts are isomorphism-invariant)
    use obstructa::oracle::posets_with_downsets_up_to;
    use obstructa::order::{poset_limit, FinPoset, MonotoneMap};

    let apexes: Vec<FinPoset> = posets_with_downsets_up_to(16)
        .into_iter()
        .filter(|p| p.len() <= 4 && !p.is_empty())
        .collect();
    assert!(apexes.len() >= 15, "all posets on <= 4 elements");

    let all_monotone = |x: &FinPoset, y: &FinPoset| -> Vec<MonotoneMap> {
        let mut out = Vec::new();
        if y.is_empty() {
            return out;
        }
        let mut map = vec![0usize; x.len()];
        loop {
            if let Ok(m) = MonotoneMap::try_new(x.clone(), y.clone(), map.clone()) {
                out.push(m);
            }
            let mut i = 0;
            loop {
                if i == x.len() {
                    return out;
                }
                map[i] += 1;
                if map[i] < y.len() {
                    break;
                }
                map[i] = 0;
                i += 1;
            }
        }
    };

    // a cospan with genuinely constraining arrows: chain2 -> chain3 <- chain2
    let chain2 = FinPoset::chain(2);
    let chain3 = FinPoset::chain(3);
    let left = MonotoneMap::try_new(chain2.clone(), chain3.clone(), vec![0, 2]).unwrap();
    let right = MonotoneMap::try_new(chain2.clone(), chain3.clone(), vec![0, 1]).unwrap();
    let mut shape_leq = vec![vec![false; 3]; 3];
    for (i, row) in shape_leq.iter_mut().enumerate() {
        row[i] = true;
    }
    shape_leq[0][2] = true;
    shape_leq[1][2] = true;
    let labels: Vec<String> = ["l", "r", "m"].iter().map(|s| s.to_string()).collect();
    let shape = FinCategory::from_poset(&labels, &shape_leq).unwrap();
    let mut arrows = BTreeMap::new();
    for (m, info) in shape.morphisms.iter().enumerate() {
        if shape.identity[info.src] == m {
            continue;
        }
        arrows.insert(m, if info.src == 0 { left.clone() } else { right.clone() });
    }
    let diagrams = vec![
        Diagram::<MonotoneMap>::try_new(
            FinCategory::discrete(2),
            vec![FinPoset::antichain(2), FinPoset::chain(2)],
            BTreeMap::new(),
        )
        .unwrap(),
        Diagram::<MonotoneMap>::try_new(
            shape,
            vec![chain2.clone(), chain2.clone(), chain3.clone()],
            arrows,
        )
        .unwrap(),
    ];

    for d in &diagrams {
        let (lim, projections) = poset_limit(d).unwrap();
        for apex in &apexes {
            // every cone from this apex factors uniquely through the limit
            let node_maps: Vec<Vec<MonotoneMap>> =
                d.nodes.iter().map(|n| all_monotone(apex, n)).collect();
            let mut cones: Vec<Vec<usize>> = vec![vec![]];
            for maps in &node_maps {
                let mut next = Vec::new();
                for c in &cones {
                    for i in 0..maps.len() {
                        let mut c2 = c.clone();
                        c2.push(i);
                        next.push(c2);
                    }
                }
                cones = next;
            }
            cones.retain(|legs| {
                d.shape.morphisms.iter().enumerate().all(|(mi, info)| {
                    if d.shape.identity[info.src] == mi {
                        return true;
                    }
                    let through = node_maps[info.src][legs[info.src]]
                        .then(&d.arrows[mi])
                        .expect("composable");
                    through.same_morphism(&node_maps[info.tgt][legs[info.tgt]])
                })
            });
            let into_limit = all_monotone(apex, &lim);
            for legs in cones {
                let factorizations = into_limit
                    .iter()
                    .filter(|u| {
                        projections.iter().enumerate().all(|(j, pr)| {
                            let through = u.then(pr).expect("composable");
                            through.same_morphism(&node_maps[j][legs[j]])
                        })
                    })
                    .count();
                assert_eq!(factorizations, 1, "cone must factor uniquely");
            }
        }
    }
}

#[test]
fn subalgebra_diagram_intersection_node_sizes() {
    // shared-ray dim 3: two 2³ blocks and a 2² intersection {0, p, ¬p, 1}
    let pasted = paste(&fixtures::shared_ray_dim3()).unwrap();
    let (_, carriers) = total_subalgebra_diagram(&pasted.pba, SubalgebraMode::Maximal).unwrap();
    let mut sizes: Vec<usize> = carriers.iter().map(|c| c.len()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![4, 8, 8]);
    // two disjoint bases dim 2: two 2² blocks and the bounds {0, 1}
    let pasted = paste(&fixtures::mub_dim2()).unwrap();
    let (_, carriers) = total_subalgebra_diagram(&pasted.pba, SubalgebraMode::Maximal).unwrap();
    let mut sizes: Vec<usize> = carriers.iter().map(|c| c.len()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![2, 4, 4]);
}

#[test]
fn one_character_algebra_has_one_point_spectrum() {
    let scalars = CommAlgObject::new(vec!["*".into()]);
    let frame = gelfand(&scalars);
    assert_eq!(frame.open_count(), 2);
    assert_eq!(points(&frame).len(), 1);
    assert_eq!(pierce(&scalars).open_count(), 2);
}

#[test]
fn colimit_presentation_oracle_on_spectra_diagrams() {
    use obstructa::cat::Diagram as CatDiagram;
    use obstructa::order::{dlat_colimit, DLatHom};
    // the opens diagrams of small spectra diagrams: at most 3 nodes of
    // size at most 8, compared against the generators-and-relations oracle
    for c in [fixtures::shared_ray_dim3(), fixtures::mub_dim2()] {
        let algebra = obstructa::complexes::subalgebra_diagram(&c).unwrap();
        let spectra =
            obstructa::spectra::spectra_diagram(&algebra, obstructa::spectra::SpectrumFunctor::Gelfand)
                .unwrap();
        let opens: CatDiagram<DLatHom> = spectra
            .map_opposite(
                spectra.nodes.iter().map(|f| f.opens().clone()).collect(),
                |m| DLatHom {
                    source: m.target.opens().clone(),
                    target: m.source.opens().clone(),
                    map: m.frame_hom.clone(),
                },
            )
            .unwrap();
        let (colim, _) = dlat_colimit(&opens).unwrap();
        let oracle = obstructa::oracle::presented_colimit_oracle(&opens);
        assert!(oracle.is_isomorphic(&colim));
    }
}
