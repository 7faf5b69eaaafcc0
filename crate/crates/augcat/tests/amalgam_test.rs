//! The pushout ΔC ⊔_Δ Ω: structure, audits, and hom-set counts.

use augcat::cat::{check_functor, is_embedding};
use augcat::shapes::{amalgamate_shapes, build_cyclic, build_trees, AmalgamatedShape, PTree};
use once_cell::sync::Lazy;

static AMALGAM3: Lazy<AmalgamatedShape> = Lazy::new(|| {
    let cyc = build_cyclic(3).unwrap();
    let trees = build_trees(3).unwrap();
    amalgamate_shapes(&cyc, &trees).unwrap()
});

#[test]
fn objects_equal_tree_objects() {
    let am = &*AMALGAM3;
    let trees = build_trees(3).unwrap();
    assert_eq!(am.shape.cat.object_count(), trees.cat.object_count());
    for (a, b) in am.shape.cat.objects().zip(trees.cat.objects()) {
        assert_eq!(am.shape.cat.object(a).name, trees.cat.object(b).name);
        assert_eq!(am.shape.cat.degree(a), trees.cat.degree(b));
    }
}

#[test]
fn amalgam_passes_all_audits() {
    let am = &*AMALGAM3;
    for (name, report) in am.shape.verify_all() {
        assert!(report.ok(), "{name}: {:?}", &report.violations[..report.violations.len().min(3)]);
    }
}

#[test]
fn linear_tree_homs_biject_with_cyclic_homs() {
    let am = &*AMALGAM3;
    let cyc = build_cyclic(3).unwrap();
    let cat = &am.shape.cat;
    for m in 0..=3u32 {
        for n in 0..=3u32 {
            let lm = cat.find_object(&PTree::linear(m).encode()).unwrap();
            let ln = cat.find_object(&PTree::linear(n).encode()).unwrap();
            let cm = cyc.cat.find_object(&format!("[{m}]")).unwrap();
            let cn = cyc.cat.find_object(&format!("[{n}]")).unwrap();
            assert_eq!(cat.hom(lm, ln).len(), cyc.cat.hom(cm, cn).len());
        }
    }
}

#[test]
fn both_legs_embed() {
    let am = &*AMALGAM3;
    let cyc = build_cyclic(3).unwrap();
    let trees = build_trees(3).unwrap();
    assert!(is_embedding(&trees.cat, &am.shape.cat, &am.from_aug));
    assert!(is_embedding(&cyc.cat, &am.shape.cat, &am.from_crossed));
    let r = check_functor(&trees.cat, &am.shape.cat, &am.from_aug, true);
    assert!(r.ok(), "{:?}", &r.violations[..r.violations.len().min(3)]);
    let r = check_functor(&cyc.cat, &am.shape.cat, &am.from_crossed, true);
    assert!(r.ok(), "{:?}", &r.violations[..r.violations.len().min(3)]);
}

#[test]
fn trivial_crossed_group_amalgamation_is_identity_like() {
    // Amalgamating with the trivial crossed group (Δ itself) returns a
    // category isomorphic to the augmentation side.
    use augcat::cat::amalgam::{amalgamate, AmalgamInputs};
    use augcat::cat::CrossedGroupData;
    let trees = build_trees(2).unwrap();
    let delta = &trees.delta.delta;
    let trivial = CrossedGroupData::trivial(delta);
    let j = augcat::cat::FunctorData {
        obj_map: delta.objects().collect(),
        mor_map: delta.morphism_ids().collect(),
    };
    let inputs = AmalgamInputs {
        delta,
        crossed_cat: delta,
        crossed_data: &trivial,
        j: &j,
        aug_cat: &trees.cat,
        aug_reedy: &trees.reedy,
        i: &trees.delta.functor,
        aug_face_gens: &trees.face_gens,
        aug_degen_gens: &trees.degen_gens,
    };
    let am = amalgamate(&inputs).unwrap();
    assert_eq!(am.cat.object_count(), trees.cat.object_count());
    assert_eq!(am.cat.morphism_count(), trees.cat.morphism_count());
    for (a, b) in am.cat.morphism_ids().zip(trees.cat.morphism_ids()) {
        assert_eq!(am.cat.morphism(a).name, trees.cat.morphism(b).name);
    }
}
