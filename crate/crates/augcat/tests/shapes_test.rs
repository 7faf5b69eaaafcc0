//! Shape construction: hom-set counts, axiom suites, factorizations, and the
//! hand-built counterexamples.

use augcat::cat::{
    check_3for2, check_category_axioms, check_ez, check_generalized_reedy, check_sieve,
    crossed_decompose, reedy_factorize, CategoryBuilder, FunctorData, MorClass, ReedyStructure,
};
use augcat::shapes::{
    build_cyclic, build_planar_trees, build_simplex, build_trees, cyclic_tau, PTree,
};
use once_cell::sync::Lazy;

static SIMPLEX3: Lazy<augcat::shapes::ShapeCategory> = Lazy::new(|| build_simplex(3).unwrap());
static CYCLIC3: Lazy<augcat::shapes::ShapeCategory> = Lazy::new(|| build_cyclic(3).unwrap());
static PLANAR2: Lazy<augcat::shapes::ShapeCategory> =
    Lazy::new(|| build_planar_trees(2).unwrap());
static TREES3: Lazy<augcat::shapes::ShapeCategory> = Lazy::new(|| build_trees(3).unwrap());

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[test]
fn simplex_hom_counts() {
    let s = &*SIMPLEX3;
    let o = |n: u32| s.cat.find_object(&format!("[{n}]")).unwrap();
    assert_eq!(s.cat.hom(o(1), o(2)).len(), 6);
    for n in 0..=3 {
        assert_eq!(s.cat.hom(o(0), o(n)).len(), (n + 1) as usize);
        assert_eq!(s.cat.hom(o(n), o(0)).len(), 1);
    }
    // |Hom([m],[n])| = C(m+n+1, m+1)
    for m in 0..=3u64 {
        for n in 0..=3u64 {
            assert_eq!(
                s.cat.hom(o(m as u32), o(n as u32)).len() as u64,
                binom(m + n + 1, m + 1)
            );
        }
    }
}

#[test]
fn simplex_axioms() {
    let s = &*SIMPLEX3;
    for (name, report) in s.verify_all() {
        assert!(report.ok(), "{name}: {:?}", report.violations);
    }
}

#[test]
fn one_object_trivial_category_passes() {
    let mut b = CategoryBuilder::new();
    let o = b.add_object("x", 0);
    let id = b.add_morphism(o, o, "id").unwrap();
    b.set_identity(o, id);
    let cat = b.build(|_, _| Some(id)).unwrap();
    let reedy = ReedyStructure::from_mono_epi(&cat);
    assert!(check_category_axioms(&cat).ok());
    assert!(check_generalized_reedy(&cat, &reedy).ok());
    assert!(check_ez(&cat, &reedy).ok());
}

#[test]
fn swapped_reedy_structure_reports_axiom_i() {
    let s = &*SIMPLEX3;
    let swapped = ReedyStructure {
        plus: s.reedy.minus.clone(),
        minus: s.reedy.plus.clone(),
    };
    let report = check_generalized_reedy(&s.cat, &swapped);
    assert!(!report.ok());
    assert!(report.violations.iter().any(|v| v.axiom == "reedy.i"));
}

#[test]
fn non_split_epi_category_fails_ez_condition_2() {
    // Objects x (degree 1), y (degree 0); morphisms id, t: x→x with t² = id,
    // e: x→y with e∘t = e. e is epi but has no section and no split-epi∘mono
    // factorization.
    let mut b = CategoryBuilder::new();
    let x = b.add_object("x", 1);
    let y = b.add_object("y", 0);
    let idx = b.add_morphism(x, x, "id").unwrap();
    let t = b.add_morphism(x, x, "t").unwrap();
    let idy = b.add_morphism(y, y, "id").unwrap();
    let e = b.add_morphism(x, y, "e").unwrap();
    b.set_identity(x, idx);
    b.set_identity(y, idy);
    let cat = b
        .build(|g, f| {
            Some(match (g, f) {
                (g, f) if g == idx => f,
                (g, f) if f == idx => g,
                (g, f) if g == idy => f,
                (g, f) if f == idy => g,
                (g, f) if g == t && f == t => idx,
                (g, f) if g == e && f == t => e,
                _ => return None,
            })
        })
        .unwrap();
    assert!(check_category_axioms(&cat).ok());
    let reedy = ReedyStructure {
        plus: (0..4).map(|i| cat.is_iso(augcat::cat::MorId(i))).collect(),
        minus: vec![true; 4],
    };
    let reedy_report = check_generalized_reedy(&cat, &reedy);
    assert!(reedy_report.ok(), "{:?}", reedy_report.violations);
    let ez = check_ez(&cat, &reedy);
    assert!(ez.violations.iter().any(|v| v.axiom == "ez.2"));
}

#[test]
fn cyclic_hom_counts_and_axioms() {
    let s = &*CYCLIC3;
    let o = |n: u32| s.cat.find_object(&format!("[{n}]")).unwrap();
    for n in 0..=3 {
        assert_eq!(s.cat.automorphisms(o(n)).len(), (n + 1) as usize);
    }
    assert_eq!(s.cat.hom(o(1), o(2)).len(), 12);
    // |Hom_ΔC([m],[n])| = (m+1)·|Hom_Δ([m],[n])|
    for m in 0..=3u64 {
        for n in 0..=3u64 {
            assert_eq!(
                s.cat.hom(o(m as u32), o(n as u32)).len() as u64,
                (m + 1) * binom(m + n + 1, m + 1)
            );
        }
    }
    for (name, report) in s.verify_all() {
        assert!(report.ok(), "{name}: {:?}", report.violations);
    }
}

#[test]
fn cyclic_crossed_decomposition_examples() {
    let s = &*CYCLIC3;
    let cat = &s.cat;
    let crossed = s.crossed.as_ref().unwrap();
    let o = |n: u32| cat.find_object(&format!("[{n}]")).unwrap();
    // Simplex morphisms decompose trivially.
    let d0 = cat.find_morphism(o(1), o(2), "(1,2)").unwrap();
    let (t, r) = crossed_decompose(cat, crossed, d0).unwrap();
    assert!(cat.is_identity(t));
    assert_eq!(r, d0);
    // τ_2 decomposes as (τ_2, id).
    let tau2 = cyclic_tau(s, 2).unwrap();
    let (t, r) = crossed_decompose(cat, crossed, tau2).unwrap();
    assert_eq!(t, tau2);
    assert!(cat.is_identity(r));
    // τ_2 ∘ δ_0 = δ_2 with trivial automorphism part.
    let comp = cat.compose(tau2, d0);
    let (t, r) = crossed_decompose(cat, crossed, comp).unwrap();
    assert!(cat.is_identity(t));
    let d2 = cat.find_morphism(o(1), o(2), "(0,1)").unwrap();
    assert_eq!(r, d2);
}

#[test]
fn cyclic_factorization_identity_case() {
    let s = &*CYCLIC3;
    let o2 = s.cat.find_object("[2]").unwrap();
    let id2 = s.cat.identity(o2);
    let (h, g) = reedy_factorize(&s.cat, &s.reedy, id2).unwrap();
    assert!(s.cat.is_identity(s.cat.compose(g, h)));
}

#[test]
fn simplex_factorization_examples() {
    let s = &*SIMPLEX3;
    let cat = &s.cat;
    let o = |n: u32| cat.find_object(&format!("[{n}]")).unwrap();
    // (0,0,2): [2]→[2] factors as epi (0,0,1) then mono (0,2).
    let f = cat.find_morphism(o(2), o(2), "(0,0,2)").unwrap();
    let (h, g) = reedy_factorize(cat, &s.reedy, f).unwrap();
    assert_eq!(cat.compose(g, h), f);
    assert_eq!(cat.morphism(h).name, "(0,0,1)");
    assert_eq!(cat.morphism(g).name, "(0,2)");
    // Constant map [1]→[1] at 0: σ_0 then vertex-0 inclusion.
    let c = cat.find_morphism(o(1), o(1), "(0,0)").unwrap();
    let (h, g) = reedy_factorize(cat, &s.reedy, c).unwrap();
    assert_eq!(cat.cod(h), o(0));
    assert_eq!(cat.morphism(h).name, "(0,0)");
    assert_eq!(cat.dom(g), o(0));
    assert_eq!(cat.morphism(g).name, "(0)");
}

#[test]
fn planar_trees_counts() {
    let s = &*PLANAR2;
    let cat = &s.cat;
    // η has degree 0.
    let eta = cat.find_object("*").unwrap();
    assert_eq!(cat.degree(eta), 0);
    // C2 has 3 codimension-1 faces (all outer, from η) and no automorphisms
    // in the planar category.
    let c2 = cat.find_object("(**)").unwrap();
    assert_eq!(cat.degree(c2), 1);
    let faces = cat.codim1_faces_into(c2);
    assert_eq!(faces.len(), 3);
    assert!(faces.iter().all(|&f| cat.dom(f) == eta));
    assert_eq!(cat.automorphisms(c2).len(), 1);
    for (name, report) in s.verify_all() {
        assert!(report.ok(), "{name}: {:?}", report.violations);
    }
}

#[test]
fn linear_tree_faces_match_simplex_monos() {
    let s = &*PLANAR2;
    let cat = &s.cat;
    let l1 = cat.find_object(&PTree::linear(1).encode()).unwrap();
    let l2 = cat.find_object(&PTree::linear(2).encode()).unwrap();
    let monos: Vec<_> = cat
        .hom(l1, l2)
        .iter()
        .filter(|&&m| cat.is_mono(m) && !cat.is_iso(m))
        .collect();
    // |monos [1]→[2] in Δ| = 3.
    assert_eq!(monos.len(), 3);
}

#[test]
fn symmetric_trees_axioms_and_automorphisms() {
    let s = &*TREES3;
    let cat = &s.cat;
    let c2 = cat.find_object("(**)").unwrap();
    assert_eq!(cat.automorphisms(c2).len(), 2);
    for n in 0..=3 {
        let ln = cat.find_object(&PTree::linear(n).encode()).unwrap();
        assert_eq!(cat.automorphisms(ln).len(), 1);
        assert_eq!(cat.degree(ln), n);
    }
    for (name, report) in s.verify_all() {
        assert!(report.ok(), "{name}: {:?}", report.violations);
    }
}

#[test]
fn every_tree_morphism_word_recomposes() {
    // The symmetric tree category carries no crossed data (see the module
    // docs); canonical words still recompose every morphism exactly.
    let s = &*TREES3;
    assert!(s.crossed.is_none());
    let cat = &s.cat;
    for m in cat.morphism_ids() {
        let mut acc = cat.identity(cat.dom(m));
        for &g in cat.morphism(m).word.iter().rev() {
            acc = cat.compose(g, acc);
        }
        assert_eq!(acc, m);
    }
}

#[test]
fn tree_branch_crossing_morphism_exists_and_is_not_planar_times_auto() {
    // The witness that the symmetric trees are not a crossed group over the
    // planar base in the subgroup-of-Aut sense: a map crossing two unequal
    // branches, whose source has trivial automorphism group.
    let s = &*TREES3;
    let cat = &s.cat;
    let src = cat.find_object("(()*)").unwrap();
    let tgt = cat.find_object("(()())").unwrap();
    assert_eq!(cat.automorphisms(src).len(), 1);
    assert_eq!(cat.hom(src, tgt).len(), 2);
}

#[test]
fn sieve_and_3for2() {
    // Δ inside the tree category: sieve.
    let trees = &*TREES3;
    let simplex = &trees.delta.delta;
    let outcome = check_sieve(simplex, &trees.cat, &trees.delta.functor).unwrap();
    assert!(outcome.holds);
    // Δ inside ΔC: not a sieve; witness τ_1 (an automorphism outside Δ).
    let cyc = &*CYCLIC3;
    let outcome = check_sieve(&cyc.delta.delta, &cyc.cat, &cyc.delta.functor).unwrap();
    assert!(!outcome.holds);
    let w = outcome.witness.unwrap();
    assert!(cyc.cat.is_iso(w) && !cyc.cat.is_identity(w));
    // Full 3-for-2 fails for Δ → ΔC: τ₁∘δ₁ = δ₀ has two simplex sides and a
    // twisted third. The checker reports the counterexample triple.
    let outcome = check_3for2(&cyc.delta.delta, &cyc.cat, &cyc.delta.functor).unwrap();
    assert!(!outcome.holds);
    let (f, g, h) = outcome.witness.unwrap();
    let image: std::collections::HashSet<_> =
        cyc.delta.functor.mor_map.iter().copied().collect();
    let in_img = |m| image.contains(&m) as u8;
    assert_eq!(in_img(f) + in_img(g) + in_img(h), 2);
    // The directions the amalgamation needs do hold.
    assert!(augcat::cat::amalgam::image_closed_and_left_cancellable(
        &cyc.delta.delta,
        &cyc.cat,
        &cyc.delta.functor
    )
    .unwrap());
    // Full embeddings are automatically 3-for-2.
    let outcome = check_3for2(simplex, &trees.cat, &trees.delta.functor).unwrap();
    assert!(outcome.holds);
    // Category inside itself is a sieve.
    let idf = FunctorData {
        obj_map: cyc.cat.objects().collect(),
        mor_map: cyc.cat.morphism_ids().collect(),
    };
    assert!(check_sieve(&cyc.cat, &cyc.cat, &idf).unwrap().holds);
}

#[test]
fn three_for_two_counterexample() {
    // f: 1→2, g: 2→3, h = g∘f; embed a category containing f and h but not g.
    let mut b = CategoryBuilder::new();
    let o1 = b.add_object("1", 0);
    let o2 = b.add_object("2", 0);
    let o3 = b.add_object("3", 0);
    let i1 = b.add_morphism(o1, o1, "id").unwrap();
    let i2 = b.add_morphism(o2, o2, "id").unwrap();
    let i3 = b.add_morphism(o3, o3, "id").unwrap();
    let f = b.add_morphism(o1, o2, "f").unwrap();
    let g = b.add_morphism(o2, o3, "g").unwrap();
    let h = b.add_morphism(o1, o3, "h").unwrap();
    b.set_identity(o1, i1);
    b.set_identity(o2, i2);
    b.set_identity(o3, i3);
    let cat = b
        .build(|gg, ff| {
            Some(match (gg, ff) {
                (gg, ff) if gg == i1 || gg == i2 || gg == i3 => ff,
                (gg, ff) if ff == i1 || ff == i2 || ff == i3 => gg,
                (gg, ff) if gg == g && ff == f => h,
                _ => return None,
            })
        })
        .unwrap();
    // Source category: objects a, b, c with arrows f': a→b, h': a→c only.
    let mut sb = CategoryBuilder::new();
    let a = sb.add_object("a", 0);
    let bb = sb.add_object("b", 0);
    let c = sb.add_object("c", 0);
    let ia = sb.add_morphism(a, a, "id").unwrap();
    let ib = sb.add_morphism(bb, bb, "id").unwrap();
    let ic = sb.add_morphism(c, c, "id").unwrap();
    let fp = sb.add_morphism(a, bb, "f'").unwrap();
    let hp = sb.add_morphism(a, c, "h'").unwrap();
    sb.set_identity(a, ia);
    sb.set_identity(bb, ib);
    sb.set_identity(c, ic);
    let src = sb
        .build(|gg, ff| {
            Some(match (gg, ff) {
                (gg, ff) if gg == ia || gg == ib || gg == ic => ff,
                (gg, ff) if ff == ia || ff == ib || ff == ic => gg,
                _ => return None,
            })
        })
        .unwrap();
    let functor = FunctorData {
        obj_map: vec![o1, o2, o3],
        mor_map: vec![i1, i2, i3, f, h],
    };
    let outcome = check_3for2(&src, &cat, &functor).unwrap();
    assert!(!outcome.holds);
}

#[test]
fn canonical_words_recompose_and_classify() {
    let s = &*CYCLIC3;
    let cat = &s.cat;
    for m in cat.morphism_ids() {
        let word = &cat.morphism(m).word;
        let mut acc = cat.identity(cat.dom(m));
        for &g in word.iter().rev() {
            acc = cat.compose(g, acc);
        }
        assert_eq!(acc, m, "word of {} recomposes", cat.morphism(m).name);
        match cat.morphism(m).class {
            MorClass::Identity => assert!(cat.is_identity(m)),
            MorClass::Auto => assert!(cat.is_iso(m)),
            MorClass::Face => assert!(cat.is_mono(m) && !cat.is_iso(m)),
            MorClass::Degeneracy => assert!(cat.is_epi(m) && !cat.is_iso(m)),
            MorClass::Composite => {}
        }
    }
}
