//! Seeded random presheaves for the property suites: random colimits of
//! representables (coproducts glued along congruence-closed identifications).

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use super::Presheaf;
use crate::cat::ObjId;
use crate::error::Result;
use crate::shapes::Shape;

/// A random presheaf: a coproduct of `cells` representables with `glue`
/// random levelwise identifications, closed to a congruence.
pub fn random_presheaf(shape: &Shape, seed: u64, cells: usize, glue: usize) -> Result<Presheaf> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cat = &shape.cat;
    let objs: Vec<ObjId> = cat.objects().collect();

    // Coproduct of representables.
    let mut levels: Vec<Vec<String>> = vec![Vec::new(); cat.object_count()];
    let mut action: Vec<Vec<u32>> = vec![Vec::new(); cat.morphism_count()];
    let mut offsets: Vec<Vec<u32>> = Vec::new(); // per cell, per object
    let mut picks = Vec::new();
    for c in 0..cells.max(1) {
        let a = objs[rng.gen_range(0..objs.len())];
        picks.push(a);
        let rep = super::representable(shape, a);
        let mut offs = Vec::with_capacity(cat.object_count());
        for o in cat.objects() {
            offs.push(levels[o.idx()].len() as u32);
            for nm in rep.level(o) {
                levels[o.idx()].push(format!("c{c}:{nm}"));
            }
        }
        offsets.push(offs);
    }
    for m in cat.morphism_ids() {
        let (a, b) = (cat.dom(m), cat.cod(m));
        let mut v = Vec::with_capacity(levels[b.idx()].len());
        for (c, &pick) in picks.iter().enumerate() {
            let rep_action_len = cat.hom(b, pick).len();
            let from = cat.hom(b, pick);
            for j in 0..rep_action_len {
                // Action of the coproduct is the per-cell representable one.
                let u = from[j];
                let img = cat.compose(u, m);
                let pos = cat
                    .hom(a, pick)
                    .iter()
                    .position(|&x| x == img)
                    .expect("precomposition closed") as u32;
                let _ = j;
                v.push(offsets[c][a.idx()] + pos);
            }
        }
        action[m.idx()] = v;
    }
    let coprod = Presheaf::from_full(
        shape.clone(),
        shape.max_degree(),
        levels,
        action,
        None,
    )?;

    // Random identifications, closed under all actions (congruence closure
    // via union-find on each level plus propagation).
    let sizes: Vec<usize> = cat.objects().map(|o| coprod.size(o)).collect();
    let mut uf: Vec<Vec<u32>> = sizes.iter().map(|&n| (0..n as u32).collect()).collect();
    fn find(uf: &mut Vec<u32>, mut i: u32) -> u32 {
        while uf[i as usize] != i {
            let p = uf[uf[i as usize] as usize];
            uf[i as usize] = p;
            i = p;
        }
        i
    }
    let mut pending: Vec<(usize, u32, u32)> = Vec::new();
    for _ in 0..glue {
        let o = objs[rng.gen_range(0..objs.len())];
        let n = sizes[o.idx()];
        if n >= 2 {
            let i = rng.gen_range(0..n) as u32;
            let j = rng.gen_range(0..n) as u32;
            pending.push((o.idx(), i, j));
        }
    }
    while let Some((oi, i, j)) = pending.pop() {
        let (ri, rj) = (find(&mut uf[oi], i), find(&mut uf[oi], j));
        if ri == rj {
            continue;
        }
        uf[oi][ri as usize] = rj;
        // Propagate: identified elements must have identified action images.
        for m in cat.morphism_ids() {
            if cat.cod(m).idx() != oi {
                continue;
            }
            let a = cat.dom(m).idx();
            let va = &coprod.action[m.idx()];
            pending.push((a, va[ri as usize], va[rj as usize]));
        }
    }

    // Quotient.
    let mut class_of: Vec<Vec<u32>> = Vec::with_capacity(sizes.len());
    let mut qlevels: Vec<Vec<String>> = Vec::with_capacity(sizes.len());
    for (oi, &n) in sizes.iter().enumerate() {
        let mut remap = std::collections::HashMap::new();
        let mut names = Vec::new();
        let mut cls = Vec::with_capacity(n);
        for e in 0..n as u32 {
            let r = find(&mut uf[oi], e);
            let next = remap.len() as u32;
            let c = *remap.entry(r).or_insert(next);
            if c as usize == names.len() {
                names.push(coprod.levels[oi][r as usize].clone());
            }
            cls.push(c);
        }
        class_of.push(cls);
        qlevels.push(names);
    }
    let mut qaction: Vec<Vec<u32>> = vec![Vec::new(); cat.morphism_count()];
    for m in cat.morphism_ids() {
        let (a, b) = (cat.dom(m), cat.cod(m));
        let mut v = vec![u32::MAX; qlevels[b.idx()].len()];
        let va = &coprod.action[m.idx()];
        for e in 0..sizes[b.idx()] {
            let c = class_of[b.idx()][e] as usize;
            let img = class_of[a.idx()][va[e] as usize];
            debug_assert!(v[c] == u32::MAX || v[c] == img, "congruence closure incomplete");
            v[c] = img;
        }
        qaction[m.idx()] = v;
    }
    Presheaf::from_full(shape.clone(), shape.max_degree(), qlevels, qaction, None)
}
