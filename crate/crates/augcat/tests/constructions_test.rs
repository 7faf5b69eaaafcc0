//! Nerves, cyclic nerves, the two left adjoints, restriction, and the
//! explicit adjunction audit.

use std::sync::Arc;

use augcat::constructions::{
    adjunction_check, cyclic_group, cyclic_nerve, i_shriek_crossed, i_shriek_dendroidal, i_star,
    nerve, saturating_monoid, two_object_groupoid,
};
use augcat::presheaf::{
    hom_enumerate, is_coskeletal, product, representable, DEFAULT_MAX_STATES,
};
use augcat::presheaf::random::random_presheaf;
use augcat::shapes::{build_cyclic, build_simplex, build_trees, cyclic_tau, Shape};
use once_cell::sync::Lazy;

static SIMPLEX3: Lazy<Shape> = Lazy::new(|| Arc::new(build_simplex(3).unwrap()));
static CYCLIC3: Lazy<Shape> = Lazy::new(|| Arc::new(build_cyclic(3).unwrap()));
static TREES3: Lazy<Shape> = Lazy::new(|| Arc::new(build_trees(3).unwrap()));

fn obj(shape: &Shape, name: &str) -> augcat::cat::ObjId {
    shape.cat.find_object(name).unwrap()
}

#[test]
fn nerve_counts() {
    let s = &*SIMPLEX3;
    let z2 = cyclic_group(2);
    let n = nerve(&z2.cat, s).unwrap();
    for k in 0..=3u32 {
        assert_eq!(n.size(obj(s, &format!("[{k}]"))), 1 << k);
    }
    assert_eq!(n.coskeletal_above, Some(2));
    assert!(is_coskeletal(&n, 2).unwrap());
    // Nerve of the trivial category is terminal.
    let triv = cyclic_group(1);
    let nt = nerve(&triv.cat, s).unwrap();
    assert!(s.cat.objects().all(|o| nt.size(o) == 1));
    // A non-group monoid nerve exists too.
    let m = saturating_monoid(2);
    let nm = nerve(&m, s).unwrap();
    assert_eq!(nm.size(obj(s, "[1]")), 3);
    assert_eq!(nm.coskeletal_above, None);
}

#[test]
fn cyclic_nerve_relations_and_restriction() {
    let c = &*CYCLIC3;
    let s = &*SIMPLEX3;
    let z2 = cyclic_group(2);
    let cn = cyclic_nerve(&z2, c).unwrap();
    // τ_n^{n+1} = id at every level n ≤ 3.
    for n in 0..=3u32 {
        let t = cyclic_tau(c, n).unwrap();
        let o = obj(c, &format!("[{n}]"));
        for e in 0..cn.size(o) as u32 {
            let mut cur = e;
            for _ in 0..=n {
                cur = cn.act(t, cur);
            }
            assert_eq!(cur, e, "τ_{n}^{} fixes element {e}", n + 1);
        }
    }
    // i^*(cyclic nerve) = nerve levelwise (element names included).
    let rn = i_star(&cn, s).unwrap();
    let n = nerve(&z2.cat, s).unwrap();
    for o in s.cat.objects() {
        assert_eq!(rn.level(o), n.level(o));
    }
    for m in s.cat.morphism_ids() {
        assert_eq!(rn.action_vec(m), n.action_vec(m));
    }
    // Trivial groupoid: terminal cyclic presheaf.
    let triv = cyclic_group(1);
    let ct = cyclic_nerve(&triv, c).unwrap();
    assert!(c.cat.objects().all(|o| ct.size(o) == 1));
}

#[test]
fn free_construction_counts_and_freeness() {
    let c = &*CYCLIC3;
    let s = &*SIMPLEX3;
    // i_!(Δ[0]) has n+1 elements at level n and free automorphism action.
    let d0 = representable(s, obj(s, "[0]"));
    let f = i_shriek_crossed(&d0, c).unwrap();
    for n in 0..=3u32 {
        let o = obj(c, &format!("[{n}]"));
        assert_eq!(f.size(o), (n + 1) as usize);
        for t in c.cat.automorphisms(o) {
            if c.cat.is_identity(t) {
                continue;
            }
            for e in 0..f.size(o) as u32 {
                assert_ne!(f.act(t, e), e, "automorphism action must be free");
            }
        }
    }
    // i_!(Δ[0]) ≅ ΔC[0] (free on the point is the representable).
    let c0 = representable(c, obj(c, "[0]"));
    for o in c.cat.objects() {
        assert_eq!(f.size(o), c0.size(o));
    }
    // i_! of the empty presheaf is empty.
    let e = augcat::presheaf::empty_presheaf(s);
    let fe = i_shriek_crossed(&e, c).unwrap();
    assert!(fe.is_empty());
    // Degenerate levels of i_!(Δ[0]): everything above level 0 is degenerate.
    let nd = augcat::presheaf::nondegenerate(&f);
    for n in 1..=3u32 {
        let o = obj(c, &format!("[{n}]"));
        assert!(nd[o.idx()].iter().all(|&b| !b));
    }
}

#[test]
fn free_construction_vs_products_counterexample() {
    // The canonical comparison i_!(X×Y) → i_!X × i_!Y, (g,(x,y)) ↦
    // ((g,x),(g,y)), is an injective equivariant map but NOT an isomorphism:
    // the left side has one automorphism coordinate, the right side two.
    // Witness at X = Y = Δ[0]: i_!(Δ[0]×Δ[0]) is the cyclic circle with n+1
    // elements at level n, the right side is the torus with (n+1)².
    let c = &*CYCLIC3;
    let s = &*SIMPLEX3;
    let d0 = representable(s, obj(s, "[0]"));
    let (sq, _, _) = product(&d0, &d0).unwrap();
    let lhs = i_shriek_crossed(&sq, c).unwrap();
    let fx = i_shriek_crossed(&d0, c).unwrap();
    let (rhs, _, _) = product(&fx, &fx).unwrap();
    for n in 0..=3u32 {
        let o = obj(c, &format!("[{n}]"));
        assert_eq!(lhs.size(o), (n + 1) as usize);
        assert_eq!(rhs.size(o), ((n + 1) * (n + 1)) as usize);
    }
}

#[test]
fn extension_by_zero() {
    let t = &*TREES3;
    let s = &*SIMPLEX3;
    let d1 = representable(s, obj(s, "[1]"));
    let f = i_shriek_dendroidal(&d1, t).unwrap();
    // Empty at the 2-leaf corolla, X_1 at the linear tree L_1.
    assert_eq!(f.size(obj(t, "(**)")), 0);
    assert_eq!(f.size(obj(t, "(*)")), d1.size(obj(s, "[1]")));
    // i^* ∘ i_! = identity on the simplex side.
    let back = i_star(&f, s).unwrap();
    for o in s.cat.objects() {
        assert_eq!(back.size(o), d1.size(o));
    }
    for m in s.cat.morphism_ids() {
        assert_eq!(back.action_vec(m), d1.action_vec(m));
    }
    // i_star of the terminal presheaf is terminal.
    let tt = augcat::presheaf::terminal(t);
    let ts = i_star(&tt, s).unwrap();
    assert!(s.cat.objects().all(|o| ts.size(o) == 1));
}

#[test]
fn i_star_preserves_products() {
    let c = &*CYCLIC3;
    let s = &*SIMPLEX3;
    let z2 = cyclic_group(2);
    let cn = cyclic_nerve(&z2, c).unwrap();
    let c0 = representable(c, obj(c, "[0]"));
    let (p, _, _) = product(&cn, &c0).unwrap();
    let lhs = i_star(&p, s).unwrap();
    let (rhs, _, _) = product(&i_star(&cn, s).unwrap(), &i_star(&c0, s).unwrap()).unwrap();
    for o in s.cat.objects() {
        assert_eq!(lhs.size(o), rhs.size(o));
    }
    for m in s.cat.morphism_ids() {
        assert_eq!(lhs.action_vec(m), rhs.action_vec(m));
    }
}

#[test]
fn adjunction_bijective_cyclic() {
    let c = &*CYCLIC3;
    let s = &*SIMPLEX3;
    // X = Δ[0], Y = cyclic nerve of Z/2.
    let x = representable(s, obj(s, "[0]"));
    let y = cyclic_nerve(&cyclic_group(2), c).unwrap();
    let rep = adjunction_check(&x, &y, s, DEFAULT_MAX_STATES).unwrap();
    assert!(rep.bijective);
    assert_eq!(rep.left_size, rep.right_size);
    // Empty X: both sides are singletons.
    let e = augcat::presheaf::empty_presheaf(s);
    let rep = adjunction_check(&e, &y, s, DEFAULT_MAX_STATES).unwrap();
    assert!(rep.bijective);
    assert_eq!(rep.left_size, 1);
}

#[test]
fn adjunction_bijective_random_pairs() {
    let s = &*SIMPLEX3;
    let c = &*CYCLIC3;
    let t = &*TREES3;
    for seed in 50..53u64 {
        let x = random_presheaf(s, seed, 2, 3).unwrap();
        let y = random_presheaf(c, seed + 7, 2, 3).unwrap();
        let rep = adjunction_check(&x, &y, s, DEFAULT_MAX_STATES).unwrap();
        assert!(rep.bijective, "cyclic adjunction seed {seed}");
        let yt = random_presheaf(t, seed + 13, 2, 3).unwrap();
        let rep = adjunction_check(&x, &yt, s, DEFAULT_MAX_STATES).unwrap();
        assert!(rep.bijective, "dendroidal adjunction seed {seed}");
    }
}

#[test]
fn adjunction_cardinality_via_hom_enumerate() {
    // |Hom(i_!X, Y)| = |Hom(X, i^*Y)| computed independently on both sides.
    let s = &*SIMPLEX3;
    let t = &*TREES3;
    let x = random_presheaf(s, 77, 2, 2).unwrap();
    let y = random_presheaf(t, 78, 2, 2).unwrap();
    let lhs = hom_enumerate(
        &i_shriek_dendroidal(&x, t).unwrap(),
        &y,
        DEFAULT_MAX_STATES,
    )
    .unwrap()
    .len();
    let rhs = hom_enumerate(&x, &i_star(&y, s).unwrap(), DEFAULT_MAX_STATES)
        .unwrap()
        .len();
    assert_eq!(lhs, rhs);
}

#[test]
fn nerve_of_groupoid_is_kan_input_shape() {
    // Sanity for later homotopy tests: the 2-object groupoid nerve exists
    // and is 2-coskeletal.
    let s = &*SIMPLEX3;
    let g = two_object_groupoid();
    let n = nerve(&g.cat, s).unwrap();
    assert_eq!(n.size(obj(s, "[0]")), 2);
    assert_eq!(n.size(obj(s, "[1]")), 4);
    assert!(is_coskeletal(&n, 2).unwrap());
}
