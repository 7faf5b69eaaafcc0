//! Independent matching-limit oracle for the coskeleton: the n-coskeleton
//! level at `a` must agree exactly with Hom(tr_n A[a], tr_n X), each element
//! identified by its family of restrictions to levels of degree ≤ n.

use std::collections::HashSet;
use std::sync::Arc;

use augcat::presheaf::{coskeleton, hom_enumerate, representable, skeleton, Presheaf, DEFAULT_MAX_STATES};
use augcat::presheaf::random::random_presheaf;
use augcat::shapes::{build_cyclic, build_planar_trees, build_simplex, build_trees, Shape};
use once_cell::sync::Lazy;

static SHAPES: Lazy<Vec<Shape>> = Lazy::new(|| {
    vec![
        Arc::new(build_simplex(3).unwrap()),
        Arc::new(build_cyclic(2).unwrap()),
        Arc::new(build_planar_trees(3).unwrap()),
        Arc::new(build_trees(3).unwrap()),
    ]
});

/// The family of ≤n-level restriction values of one element of degree-`a`.
fn family(p: &Presheaf, shape: &Shape, a: augcat::cat::ObjId, e: u32, n: u32) -> Vec<Vec<u32>> {
    let cat = &shape.cat;
    cat.objects()
        .map(|b| {
            if cat.degree(b) > n {
                return Vec::new();
            }
            cat.hom(b, a).iter().map(|&u| p.act(u, e)).collect()
        })
        .collect()
}

#[test]
fn coskeleton_matches_matching_limit_oracle() {
    let mut total = 0;
    for shape in SHAPES.iter() {
        for seed in 0..6u64 {
            let x = random_presheaf(shape, 1000 + seed, 2, 3).unwrap();
            for n in 0..shape.max_degree() {
                let ck = coskeleton(&x, n).unwrap();
                for a in shape.cat.objects() {
                    if shape.cat.degree(a) <= n {
                        assert_eq!(ck.size(a), x.size(a));
                        continue;
                    }
                    // Oracle: maps tr_n A[a] → tr_n X.
                    let rep = representable(shape, a).truncate(n);
                    let txn = x.truncate(n);
                    let maps = hom_enumerate(&rep, &txn, DEFAULT_MAX_STATES).unwrap();
                    let oracle: HashSet<Vec<Vec<u32>>> = maps
                        .into_iter()
                        .map(|m| {
                            // A map is its family of values on Hom(b, a).
                            m
                        })
                        .collect();
                    let impl_families: HashSet<Vec<Vec<u32>>> = (0..ck.size(a) as u32)
                        .map(|e| family(&ck, shape, a, e, n))
                        .collect();
                    assert_eq!(impl_families.len(), ck.size(a), "families distinct");
                    assert_eq!(
                        impl_families, oracle,
                        "shape {:?} seed {seed} n {n} at {}",
                        shape.kind,
                        shape.cat.object(a).name
                    );
                }
                total += 1;
            }
        }
    }
    assert!(total >= 20 * SHAPES.len() / 2);
}

#[test]
fn skeleton_coskeleton_hom_count_adjunction() {
    // The adjunction on truncated data: |Hom(X, cosk_n Y)| equals
    // |Hom(tr_n X, tr_n Y)| always; the skeleton side matches through the
    // truncation too whenever the skeleton counit is injective, which holds
    // for representables (the spec's skeleton is the image subobject, which
    // can identify colliding degeneracies of a general presheaf).
    for shape in SHAPES.iter().take(2) {
        for seed in 0..3u64 {
            let x = random_presheaf(shape, 2000 + seed, 2, 2).unwrap();
            let y = random_presheaf(shape, 3000 + seed, 2, 2).unwrap();
            for n in 0..shape.max_degree() {
                let cky = coskeleton(&y, n).unwrap();
                let lhs = hom_enumerate(&x.truncate(n), &y.truncate(n), DEFAULT_MAX_STATES)
                    .unwrap()
                    .len();
                let rhs = hom_enumerate(&x, &cky, DEFAULT_MAX_STATES).unwrap().len();
                assert_eq!(rhs, lhs, "cosk side: shape {:?} seed {seed} n {n}", shape.kind);
            }
        }
        // Skeleton side on representables.
        for a in shape.cat.objects() {
            let rep = representable(shape, a);
            let y = random_presheaf(shape, 4000, 2, 2).unwrap();
            for n in 0..shape.cat.degree(a) {
                let (skx, _) = skeleton(&rep, n).to_presheaf();
                let lhs = hom_enumerate(&skx, &y, DEFAULT_MAX_STATES).unwrap().len();
                let tr = hom_enumerate(&rep.truncate(n), &y.truncate(n), DEFAULT_MAX_STATES)
                    .unwrap()
                    .len();
                assert_eq!(lhs, tr, "sk side: shape {:?} at {}", shape.kind, shape.cat.object(a).name);
            }
        }
    }
}
