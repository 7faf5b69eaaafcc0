//! The truncated simplex category Δ≤D: objects [0]…[D], morphisms all
//! monotone maps, plus = monomorphisms, minus = epimorphisms.

use super::{generator_sets, DeltaEmbedding, ShapeCategory, ShapeKind};
use crate::cat::{CategoryBuilder, FunctorData, ReedyStructure};
use crate::error::Result;

/// A monotone map [m] → [n], stored by its value vector.
pub type MonotoneMap = Vec<u8>;

/// All monotone maps [m] → [n] in lexicographic order.
pub fn monotone_maps(m: u32, n: u32) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; (m + 1) as usize];
    loop {
        out.push(cur.clone());
        let mut i = cur.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (cur[i] as u32) < n {
                cur[i] += 1;
                let v = cur[i];
                for j in i + 1..cur.len() {
                    cur[j] = v;
                }
                break;
            }
        }
    }
}

pub fn map_name(v: &[u8]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn build_simplex(max_degree: u32) -> Result<ShapeCategory> {
    let d = max_degree;
    let mut b = CategoryBuilder::new();
    let objs: Vec<_> = (0..=d).map(|n| b.add_object(format!("[{n}]"), n)).collect();
    let mut reps: Vec<MonotoneMap> = Vec::new();
    let mut sig: Vec<(u32, u32)> = Vec::new();
    let mut index = std::collections::HashMap::new();
    for m in 0..=d {
        for n in 0..=d {
            for v in monotone_maps(m, n) {
                let id = b.add_morphism(objs[m as usize], objs[n as usize], map_name(&v))?;
                index.insert((m, n, v.clone()), id);
                reps.push(v);
                sig.push((m, n));
            }
        }
    }
    for n in 0..=d {
        let idv: MonotoneMap = (0..=n as u8).collect();
        b.set_identity(objs[n as usize], index[&(n, n, idv)]);
    }
    let cat = b.build(|g, f| {
        let vg = &reps[g.idx()];
        let vf = &reps[f.idx()];
        let comp: MonotoneMap = vf.iter().map(|&x| vg[x as usize]).collect();
        index.get(&(sig[f.idx()].0, sig[g.idx()].1, comp)).copied()
    })?;
    let reedy = ReedyStructure::from_mono_epi(&cat);
    let (face_gens, degen_gens) = generator_sets(&cat, None);
    let mut cat = cat;
    cat.derive_words(&face_gens, &degen_gens, None)?;
    let functor = FunctorData {
        obj_map: cat.objects().collect(),
        mor_map: cat.morphism_ids().collect(),
    };
    Ok(ShapeCategory {
        kind: ShapeKind::Simplex,
        delta: DeltaEmbedding {
            delta: cat.clone(),
            functor,
            truncation: d,
        },
        reedy,
        crossed: None,
        truncation: d,
        face_gens,
        degen_gens,
        cat,
    })
}
