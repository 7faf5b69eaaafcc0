//! The truncated cyclic category ΔC≤D.
//!
//! Morphisms [m] → [n] are modelled by monotone maps f: Z → Z with
//! f(i + m + 1) = f(i) + n + 1, taken modulo the shift f ↦ f + (n+1) and
//! normalised so that f(0) ∈ [0, n]. Composition is function composition, so
//! associativity and the cyclic relations (τ_n δ_i = δ_{i−1} τ_{n−1} for
//! 1 ≤ i ≤ n, τ_n δ_0 = δ_n, and the degeneracy analogues) hold by
//! construction and are re-verified by the axiom checkers rather than
//! transcribed by hand.

use std::collections::HashMap;

use super::{generator_sets, DeltaEmbedding, ShapeCategory, ShapeKind};
use crate::cat::{CategoryBuilder, CrossedGroupData, FunctorData, MorId, ReedyStructure};
use crate::error::Result;

/// Normalised value vector (f(0), …, f(m)) of a cyclic morphism [m] → [n].
type CycMap = Vec<i32>;

fn cyc_name(v: &[i32]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Evaluate the periodic extension at an arbitrary integer.
fn cyc_eval(v: &[i32], cod_period: i32, x: i64) -> i64 {
    let m1 = v.len() as i64;
    let q = x.div_euclid(m1);
    let r = x.rem_euclid(m1) as usize;
    v[r] as i64 + q * cod_period as i64
}

fn cyc_normalize(mut v: Vec<i64>, cod_period: i32) -> CycMap {
    let shift = v[0].div_euclid(cod_period as i64) * cod_period as i64;
    for x in v.iter_mut() {
        *x -= shift;
    }
    v.into_iter().map(|x| x as i32).collect()
}

/// All normalised cyclic morphisms [m] → [n].
fn cyc_homs(m: u32, n: u32) -> Vec<CycMap> {
    let mut out = Vec::new();
    let period = (n + 1) as i32;
    for start in 0..=n as i32 {
        // Non-decreasing continuations with v[m] ≤ v[0] + period.
        let mut cur = vec![start; (m + 1) as usize];
        loop {
            out.push(cur.clone());
            let mut i = cur.len();
            let mut advanced = false;
            while i > 1 {
                i -= 1;
                if cur[i] < start + period {
                    cur[i] += 1;
                    let v = cur[i];
                    for j in i + 1..cur.len() {
                        cur[j] = v;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    out
}

pub fn build_cyclic(max_degree: u32) -> Result<ShapeCategory> {
    let d = max_degree;
    let mut b = CategoryBuilder::new();
    let objs: Vec<_> = (0..=d).map(|n| b.add_object(format!("[{n}]"), n)).collect();
    let mut reps: Vec<CycMap> = Vec::new();
    let mut sig: Vec<(u32, u32)> = Vec::new();
    let mut index: HashMap<(u32, u32, CycMap), MorId> = HashMap::new();
    for m in 0..=d {
        for n in 0..=d {
            for v in cyc_homs(m, n) {
                let id = b.add_morphism(objs[m as usize], objs[n as usize], cyc_name(&v))?;
                index.insert((m, n, v.clone()), id);
                reps.push(v);
                sig.push((m, n));
            }
        }
    }
    for n in 0..=d {
        let idv: CycMap = (0..=n as i32).collect();
        b.set_identity(objs[n as usize], index[&(n, n, idv)]);
    }
    let cat = b.build(|g, f| {
        let (mf, _nf) = sig[f.idx()];
        let (_mg, ng) = sig[g.idx()];
        let vf = &reps[f.idx()];
        let vg = &reps[g.idx()];
        let comp: Vec<i64> = vf
            .iter()
            .map(|&x| cyc_eval(vg, (ng + 1) as i32, x as i64))
            .collect();
        let comp = cyc_normalize(comp, (ng + 1) as i32);
        index.get(&(mf, ng, comp)).copied()
    })?;

    // Base = simplex image: normalised vectors staying within [0, n].
    let base: Vec<bool> = cat
        .morphism_ids()
        .map(|m| {
            let (_, n) = sig[m.idx()];
            *reps[m.idx()].last().unwrap() <= n as i32
        })
        .collect();
    let special: Vec<Vec<MorId>> = (0..=d)
        .map(|n| {
            (0..=n)
                .map(|c| {
                    let v: CycMap = (0..=n as i32).map(|j| j + c as i32).collect();
                    index[&(n, n, v)]
                })
                .collect()
        })
        .collect();
    let crossed = CrossedGroupData { base, special };

    let reedy = ReedyStructure::from_mono_epi(&cat);
    let (face_gens, degen_gens) = generator_sets(&cat, Some(&crossed));
    let mut cat = cat;
    cat.derive_words(&face_gens, &degen_gens, Some(&crossed))?;

    // Δ ↪ ΔC: identity on objects, monotone vectors map to themselves. The
    // simplex builder enumerates morphisms in the same (m, n, lexicographic)
    // order used here, so we can walk the two lists in parallel.
    let delta_shape = super::build_simplex(d)?;
    let delta = delta_shape.cat;
    let mut mor_map: Vec<MorId> = Vec::with_capacity(delta.morphism_count());
    for m in 0..=d {
        for n in 0..=d {
            for v in super::monotone_maps(m, n) {
                let cyc: CycMap = v.iter().map(|&x| x as i32).collect();
                mor_map.push(index[&(m, n, cyc)]);
            }
        }
    }
    debug_assert_eq!(mor_map.len(), delta.morphism_count());
    let functor = FunctorData {
        obj_map: (0..=d).map(|n| objs[n as usize]).collect(),
        mor_map,
    };

    Ok(ShapeCategory {
        kind: ShapeKind::Cyclic,
        delta: DeltaEmbedding {
            delta,
            functor,
            truncation: d,
        },
        reedy,
        crossed: Some(crossed),
        truncation: d,
        face_gens,
        degen_gens,
        cat,
    })
}

/// τ_n as a morphism of the built category (the translation j ↦ j − 1).
pub fn tau(shape: &ShapeCategory, n: u32) -> Option<MorId> {
    let o = shape.cat.find_object(&format!("[{n}]"))?;
    let v: Vec<i32> = (0..=n as i32).map(|j| j + n as i32).collect();
    shape.cat.find_morphism(o, o, &cyc_name(&v))
}
