//! Pushout amalgamation of a crossed simplicial group with an augmentation
//! category along their shared simplex embeddings.
//!
//! Gated on the simplex being a sieve in the augmentation side and the
//! crossed embedding being 3-for-2. Morphisms of the result are represented
//! uniquely as (special automorphism of the source, base morphism), which is
//! exactly the crossed-group structure of the pushout.

use std::collections::HashMap;

use super::{
    check_sieve, crossed_decompose, is_embedding, CategoryBuilder, CrossedGroupData,
    FiniteCategory, FunctorData, MorId, ObjId, ReedyStructure,
};
use crate::error::{Error, Result};

/// The directions of 3-for-2 that hold for crossed embeddings and that the
/// amalgamation uses: f, g in the image ⇒ g∘f in the image, and g, g∘f in
/// the image ⇒ f in the image.
pub fn image_closed_and_left_cancellable(
    src: &FiniteCategory,
    cat: &FiniteCategory,
    sub: &FunctorData,
) -> Result<bool> {
    if !is_embedding(src, cat, sub) {
        return Err(Error::Structural("gate requires an embedding".into()));
    }
    let image: std::collections::HashSet<MorId> = sub.mor_map.iter().copied().collect();
    let mut ok = true;
    super::for_each_composable_pair(cat, |f, g| {
        if !ok {
            return;
        }
        let h = cat.compose(g, f);
        if image.contains(&f) && image.contains(&g) && !image.contains(&h) {
            ok = false;
        }
        if image.contains(&g) && image.contains(&h) && !image.contains(&f) {
            ok = false;
        }
    });
    Ok(ok)
}

pub struct AmalgamInputs<'a> {
    /// The shared simplex category Δ (truncated).
    pub delta: &'a FiniteCategory,
    /// Crossed simplicial group (e.g. ΔC) with its crossed data and the
    /// embedding j: Δ → ΔG (bijective on objects).
    pub crossed_cat: &'a FiniteCategory,
    pub crossed_data: &'a CrossedGroupData,
    pub j: &'a FunctorData,
    /// Augmentation side (e.g. Ω) with its Reedy structure and embedding
    /// i: Δ → A exhibiting Δ as a sieve.
    pub aug_cat: &'a FiniteCategory,
    pub aug_reedy: &'a ReedyStructure,
    pub i: &'a FunctorData,
    /// Codimension-1 generators of the augmentation side, used to derive
    /// canonical words for the result.
    pub aug_face_gens: &'a [MorId],
    pub aug_degen_gens: &'a [MorId],
}

pub struct Amalgamation {
    pub cat: FiniteCategory,
    pub reedy: ReedyStructure,
    pub crossed: CrossedGroupData,
    /// A → result, identity on objects.
    pub from_aug: FunctorData,
    /// ΔG → result.
    pub from_crossed: FunctorData,
    /// Δ → result (common composite of both legs).
    pub delta_embedding: FunctorData,
}

pub fn amalgamate(inp: &AmalgamInputs) -> Result<Amalgamation> {
    let sieve = check_sieve(inp.delta, inp.aug_cat, inp.i)?;
    if !sieve.holds {
        let w = sieve
            .witness
            .map(|m| inp.aug_cat.morphism(m).name.clone())
            .unwrap_or_default();
        return Err(Error::AmalgamationRefused(format!(
            "Δ is not a sieve in the augmentation category (witness {w})"
        )));
    }
    // Full 3-for-2 fails for any non-trivial crossed group (τ₁δ₁ = δ₀ gives
    // two simplex sides with a twisted third); what the amalgamation
    // construction consumes is composition closure and left-cancellation of
    // the image, plus unique crossed decomposition, so those are gated here.
    if !image_closed_and_left_cancellable(inp.delta, inp.crossed_cat, inp.j)? {
        return Err(Error::AmalgamationRefused(
            "crossed image is not closed and left-cancellable".into(),
        ));
    }
    let crossed_report = super::check_crossed(inp.crossed_cat, inp.crossed_data);
    if !crossed_report.ok() {
        return Err(Error::AmalgamationRefused(format!(
            "crossed data invalid: {}",
            crossed_report.violations[0].witness
        )));
    }

    // Inverses of the two embeddings on their images.
    let mut i_inv: HashMap<MorId, MorId> = HashMap::new();
    for m in inp.delta.morphism_ids() {
        i_inv.insert(inp.i.mor(m), m);
    }
    let mut j_inv: HashMap<MorId, MorId> = HashMap::new();
    for m in inp.delta.morphism_ids() {
        j_inv.insert(inp.j.mor(m), m);
    }
    // The crossed base must be exactly the j-image for rewriting to work.
    for m in inp.crossed_cat.morphism_ids() {
        if inp.crossed_data.is_base(m) != j_inv.contains_key(&m) {
            return Err(Error::AmalgamationRefused(format!(
                "crossed base differs from the simplex image at {}",
                inp.crossed_cat.morphism(m).name
            )));
        }
    }
    // Which augmentation objects are simplex images, and of which Δ object.
    let mut linear: Vec<Option<ObjId>> = vec![None; inp.aug_cat.object_count()];
    for o in inp.delta.objects() {
        linear[inp.i.obj(o).idx()] = Some(o);
    }

    // Build the result. Morphisms are pairs (auto part, base part):
    //  - non-linear source: (None, φ) for φ in Hom_A;
    //  - linear source i[m]: (Some(g), φ) for g special in Aut_ΔG(j[m]).
    let mut b = CategoryBuilder::new();
    for o in inp.aug_cat.objects() {
        b.add_object(
            inp.aug_cat.object(o).name.clone(),
            inp.aug_cat.degree(o),
        );
    }
    let mut reps: Vec<(Option<MorId>, MorId)> = Vec::new();
    let mut index: HashMap<(Option<MorId>, MorId), MorId> = HashMap::new();
    let trivial_auto = |s: ObjId| -> Option<MorId> {
        linear[s.idx()].map(|d| inp.crossed_cat.identity(inp.j.obj(d)))
    };
    for s in inp.aug_cat.objects() {
        let autos: Vec<Option<MorId>> = match linear[s.idx()] {
            Some(d) => inp.crossed_data.special[inp.j.obj(d).idx()]
                .iter()
                .map(|&g| Some(g))
                .collect(),
            None => vec![None],
        };
        for t in inp.aug_cat.objects() {
            for &phi in inp.aug_cat.hom(s, t) {
                for &g in &autos {
                    let name = match g {
                        Some(g) if !inp.crossed_cat.is_identity(g) => format!(
                            "{}·{}",
                            inp.aug_cat.morphism(phi).name,
                            inp.crossed_cat.morphism(g).name
                        ),
                        _ => inp.aug_cat.morphism(phi).name.clone(),
                    };
                    let id = b.add_morphism(ObjId(s.0), ObjId(t.0), name)?;
                    reps.push((g, phi));
                    index.insert((g, phi), id);
                }
            }
        }
    }
    for o in inp.aug_cat.objects() {
        let id = index[&(trivial_auto(o), inp.aug_cat.identity(o))];
        b.set_identity(ObjId(o.0), id);
    }

    let compose = |g2: MorId, g1: MorId| -> Option<MorId> {
        let (a2, phi2) = reps[g2.idx()];
        let (a1, phi1) = reps[g1.idx()];
        let mid = inp.aug_cat.cod(phi1);
        match a2 {
            None => index.get(&(a1, inp.aug_cat.compose(phi2, phi1))).copied(),
            Some(t2) if inp.crossed_cat.is_identity(t2) => {
                index.get(&(a1, inp.aug_cat.compose(phi2, phi1))).copied()
            }
            Some(t2) => {
                // mid is linear; φ1 lands in the simplex image (sieve), so it
                // rewrites through the crossed structure.
                let _ = mid;
                let psi1 = *i_inv.get(&phi1)?;
                let u = inp.crossed_cat.compose(t2, inp.j.mor(psi1));
                let (t, r) = crossed_decompose(inp.crossed_cat, inp.crossed_data, u).ok()?;
                let psi = *j_inv.get(&r)?;
                let auto = match a1 {
                    Some(g1a) => Some(inp.crossed_cat.compose(t, g1a)),
                    None => return None,
                };
                index
                    .get(&(auto, inp.aug_cat.compose(phi2, inp.i.mor(psi))))
                    .copied()
            }
        }
    };
    let mut cat = b.build(compose)?;

    let trivial = |m: MorId| -> bool {
        match reps[m.idx()].0 {
            None => true,
            Some(g) => inp.crossed_cat.is_identity(g),
        }
    };
    let reedy = ReedyStructure {
        plus: cat
            .morphism_ids()
            .map(|m| inp.aug_reedy.in_plus(reps[m.idx()].1))
            .collect(),
        minus: cat
            .morphism_ids()
            .map(|m| inp.aug_reedy.in_minus(reps[m.idx()].1))
            .collect(),
    };
    let crossed = CrossedGroupData {
        base: cat.morphism_ids().map(trivial).collect(),
        special: cat
            .objects()
            .map(|o| {
                let autos: Vec<Option<MorId>> = match linear[o.idx()] {
                    Some(d) => inp.crossed_data.special[inp.j.obj(d).idx()]
                        .iter()
                        .map(|&g| Some(g))
                        .collect(),
                    None => vec![None],
                };
                autos
                    .into_iter()
                    .map(|g| index[&(g, inp.aug_cat.identity(o))])
                    .collect()
            })
            .collect(),
    };

    let from_aug = FunctorData {
        obj_map: inp.aug_cat.objects().map(|o| ObjId(o.0)).collect(),
        mor_map: inp
            .aug_cat
            .morphism_ids()
            .map(|m| index[&(trivial_auto(inp.aug_cat.dom(m)), m)])
            .collect(),
    };
    // ΔG → result: u = r ∘ t ↦ (t, i(j⁻¹(r))).
    let mut dg_obj_inv: Vec<Option<ObjId>> = vec![None; inp.crossed_cat.object_count()];
    for o in inp.delta.objects() {
        dg_obj_inv[inp.j.obj(o).idx()] = Some(o);
    }
    let mut from_crossed_mors = Vec::with_capacity(inp.crossed_cat.morphism_count());
    for u in inp.crossed_cat.morphism_ids() {
        let (t, r) = crossed_decompose(inp.crossed_cat, inp.crossed_data, u)?;
        let psi = *j_inv.get(&r).ok_or_else(|| {
            Error::AmalgamationRefused("crossed morphism with base outside the simplex".into())
        })?;
        from_crossed_mors.push(index[&(Some(t), inp.i.mor(psi))]);
    }
    let from_crossed = FunctorData {
        obj_map: dg_obj_inv
            .iter()
            .map(|o| {
                let d = o.expect("crossed embedding bijective on objects");
                ObjId(inp.i.obj(d).0)
            })
            .collect(),
        mor_map: from_crossed_mors,
    };
    let delta_embedding = FunctorData {
        obj_map: inp.delta.objects().map(|o| ObjId(inp.i.obj(o).0)).collect(),
        mor_map: inp
            .delta
            .morphism_ids()
            .map(|m| from_aug.mor(inp.i.mor(m)))
            .collect(),
    };

    let face_gens: Vec<MorId> = inp
        .aug_face_gens
        .iter()
        .map(|&g| from_aug.mor(g))
        .collect();
    let degen_gens: Vec<MorId> = inp
        .aug_degen_gens
        .iter()
        .map(|&g| from_aug.mor(g))
        .collect();
    cat.derive_words(&face_gens, &degen_gens, Some(&crossed))?;

    Ok(Amalgamation {
        cat,
        reedy,
        crossed,
        from_aug,
        from_crossed,
        delta_embedding,
    })
}
