//! Concrete truncated shape categories: the simplex category Δ, Connes'
//! cyclic category ΔC, planar rooted trees Ω_planar, trees Ω, and the
//! amalgamation ΔC ⊔_Δ Ω.

mod cyclic;
mod simplex;
pub mod tree;

pub use cyclic::{build_cyclic, tau as cyclic_tau};
pub use simplex::{build_simplex, monotone_maps, MonotoneMap};
pub use tree::{build_planar_trees, build_trees, PTree};

use std::sync::Arc;

use crate::cat::amalgam::{amalgamate, AmalgamInputs};
use crate::cat::{
    check_category_axioms, check_crossed, check_ez, check_functor, check_generalized_reedy,
    CheckReport, CrossedGroupData, FiniteCategory, FunctorData, MorId, ObjId, ReedyStructure,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    Simplex,
    Cyclic,
    PlanarTree,
    Tree,
    Amalgam,
}

impl ShapeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ShapeKind::Simplex => "simplex",
            ShapeKind::Cyclic => "cyclic",
            ShapeKind::PlanarTree => "planar-tree",
            ShapeKind::Tree => "tree",
            ShapeKind::Amalgam => "amalgam",
        }
    }

    pub fn from_str(s: &str) -> Option<Self> {
        Some(match s {
            "simplex" => ShapeKind::Simplex,
            "cyclic" => ShapeKind::Cyclic,
            "planar-tree" => ShapeKind::PlanarTree,
            "tree" => ShapeKind::Tree,
            "amalgam" => ShapeKind::Amalgam,
            _ => return None,
        })
    }
}

/// The simplex embedding i: Δ ↪ A carried by every shape category.
#[derive(Debug, Clone)]
pub struct DeltaEmbedding {
    /// A deterministic copy of Δ truncated at `truncation`.
    pub delta: FiniteCategory,
    pub functor: FunctorData,
    pub truncation: u32,
}

/// A finite shape category: degree-truncated, with Reedy/EZ structure,
/// optional crossed-group data and the Δ-embedding. Immutable once built.
#[derive(Debug, Clone)]
pub struct ShapeCategory {
    pub kind: ShapeKind,
    pub cat: FiniteCategory,
    pub reedy: ReedyStructure,
    pub crossed: Option<CrossedGroupData>,
    /// Top degree for simplex/cyclic; max vertex count for trees.
    pub truncation: u32,
    pub delta: DeltaEmbedding,
    pub face_gens: Vec<MorId>,
    pub degen_gens: Vec<MorId>,
}

pub type Shape = Arc<ShapeCategory>;

impl ShapeCategory {
    /// Objects of maximal stored degree and below.
    pub fn max_degree(&self) -> u32 {
        self.cat.objects().map(|o| self.cat.degree(o)).max().unwrap_or(0)
    }

    /// The object i([n]) of the shape.
    pub fn simplex_object(&self, n: u32) -> Result<ObjId> {
        if n > self.delta.truncation {
            return Err(Error::Range(format!(
                "simplex degree {n} exceeds embedded truncation {}",
                self.delta.truncation
            )));
        }
        let d = self
            .delta
            .delta
            .find_object(&format!("[{n}]"))
            .expect("delta object");
        Ok(self.delta.functor.obj(d))
    }

    /// Fingerprint used to decide whether two presheaves live over the same
    /// shape.
    pub fn fingerprint(&self) -> (ShapeKind, u32, usize, usize) {
        (
            self.kind,
            self.truncation,
            self.cat.object_count(),
            self.cat.morphism_count(),
        )
    }

    /// Run the full axiom battery: category axioms, generalised Reedy, EZ,
    /// crossed-group uniqueness (when present), and the Δ-embedding functor
    /// check.
    pub fn verify_all(&self) -> Vec<(String, CheckReport)> {
        let mut out = Vec::new();
        out.push(("category".to_string(), check_category_axioms(&self.cat)));
        out.push((
            "generalized-reedy".to_string(),
            check_generalized_reedy(&self.cat, &self.reedy),
        ));
        out.push(("ez".to_string(), check_ez(&self.cat, &self.reedy)));
        if let Some(crossed) = &self.crossed {
            out.push(("crossed".to_string(), check_crossed(&self.cat, crossed)));
        }
        out.push((
            "delta-embedding".to_string(),
            check_functor(&self.delta.delta, &self.cat, &self.delta.functor, true),
        ));
        out
    }
}

/// Degree-preserving faithful embedding of Δ into the shape (identity for
/// simplex/cyclic, linear trees for tree shapes). The returned functor is the
/// one stored in the shape; callers needing the source category use
/// `shape.delta.delta`.
pub fn embed_delta(shape: &ShapeCategory) -> FunctorData {
    shape.delta.functor.clone()
}

/// Generic generator extraction: codimension-1 base monos/split epis.
pub(crate) fn generator_sets(
    cat: &FiniteCategory,
    crossed: Option<&CrossedGroupData>,
) -> (Vec<MorId>, Vec<MorId>) {
    let is_base = |m: MorId| crossed.map(|c| c.is_base(m)).unwrap_or(true);
    let mut faces = Vec::new();
    let mut degens = Vec::new();
    for m in cat.morphism_ids() {
        if !is_base(m) || cat.is_iso(m) {
            continue;
        }
        let (da, db) = (cat.degree(cat.dom(m)), cat.degree(cat.cod(m)));
        if cat.is_mono(m) && db == da + 1 {
            faces.push(m);
        }
        if cat.is_split_epi(m) && da == db + 1 {
            degens.push(m);
        }
    }
    (faces, degens)
}

/// Amalgamation pushout ΔC ⊔_Δ Ω of a cyclic (or other crossed) shape with a
/// tree (or other amalgable) shape, returned as a shape category of kind
/// `Amalgam` together with the audit functors.
pub struct AmalgamatedShape {
    pub shape: ShapeCategory,
    pub from_aug: FunctorData,
    pub from_crossed: FunctorData,
}

pub fn amalgamate_shapes(
    crossed_shape: &ShapeCategory,
    aug_shape: &ShapeCategory,
) -> Result<AmalgamatedShape> {
    let crossed_data = crossed_shape.crossed.as_ref().ok_or_else(|| {
        Error::AmalgamationRefused("left input carries no crossed-group data".into())
    })?;
    if crossed_shape.delta.truncation != aug_shape.delta.truncation {
        return Err(Error::AmalgamationRefused(format!(
            "embedded simplex truncations differ: {} vs {}",
            crossed_shape.delta.truncation, aug_shape.delta.truncation
        )));
    }
    // Translate the crossed shape's Δ-embedding to the aug shape's copy of Δ.
    // Both are built by build_simplex at the same truncation, so the object
    // and morphism indexings agree.
    let delta = &aug_shape.delta.delta;
    if !delta.structural_eq(&crossed_shape.delta.delta) {
        return Err(Error::AmalgamationRefused(
            "the two embedded simplex categories disagree".into(),
        ));
    }
    let inputs = AmalgamInputs {
        delta,
        crossed_cat: &crossed_shape.cat,
        crossed_data,
        j: &crossed_shape.delta.functor,
        aug_cat: &aug_shape.cat,
        aug_reedy: &aug_shape.reedy,
        i: &aug_shape.delta.functor,
        aug_face_gens: &aug_shape.face_gens,
        aug_degen_gens: &aug_shape.degen_gens,
    };
    let am = amalgamate(&inputs)?;
    let (face_gens, degen_gens) = generator_sets(&am.cat, Some(&am.crossed));
    let shape = ShapeCategory {
        kind: ShapeKind::Amalgam,
        reedy: am.reedy,
        crossed: Some(am.crossed),
        truncation: aug_shape.truncation,
        delta: DeltaEmbedding {
            delta: delta.clone(),
            functor: am.delta_embedding,
            truncation: aug_shape.delta.truncation,
        },
        face_gens,
        degen_gens,
        cat: am.cat,
    };
    Ok(AmalgamatedShape {
        shape,
        from_aug: am.from_aug,
        from_crossed: am.from_crossed,
    })
}

/// Build a shape by kind; the CLI entry point.
pub fn build_shape(kind: ShapeKind, max: u32) -> Result<ShapeCategory> {
    Ok(match kind {
        ShapeKind::Simplex => build_simplex(max)?,
        ShapeKind::Cyclic => build_cyclic(max)?,
        ShapeKind::PlanarTree => build_planar_trees(max)?,
        ShapeKind::Tree => build_trees(max)?,
        ShapeKind::Amalgam => {
            let cyc = build_cyclic(max)?;
            let trees = build_trees(max)?;
            amalgamate_shapes(&cyc, &trees)?.shape
        }
    })
}
