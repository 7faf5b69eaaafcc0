//! Finite truncated presheaves over a shape category: representables,
//! subobjects, boundaries, horns, skeleta, degeneracy analysis, normal
//! monomorphisms, and the levelwise (co)limits.

pub mod cells;
pub mod cosk;
pub mod homs;
pub mod random;

pub use cells::{linearity_certificate, pushout_product_check, LinearityOutcome};
pub use cosk::{coskeleton, is_coskeletal};
pub use homs::{hom_enumerate, hom_enumerate_constrained, DEFAULT_MAX_STATES};

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::cat::{MorId, ObjId};
use crate::error::{Error, Result};
use crate::shapes::Shape;

/// Raw levelwise map data: for each object, image index per source element.
pub type LevelMap = Vec<Vec<u32>>;

/// A finite truncated presheaf. Immutable after construction; the memoized
/// coskeletal extension is idempotent, so shared readers always observe
/// consistent values.
#[derive(Debug)]
pub struct Presheaf {
    pub(crate) shape: Shape,
    /// Levels with object degree above this are not stored.
    pub(crate) truncation: u32,
    pub coskeletal_above: Option<u32>,
    /// Element display names per object.
    pub(crate) levels: Vec<Vec<String>>,
    /// Contravariant action per morphism u: a → b, as a map X_b → X_a by
    /// element index. Empty for morphisms touching unstored levels.
    pub(crate) action: Vec<Vec<u32>>,
    extended: OnceLock<Box<Presheaf>>,
}

impl Clone for Presheaf {
    fn clone(&self) -> Self {
        Presheaf {
            shape: self.shape.clone(),
            truncation: self.truncation,
            coskeletal_above: self.coskeletal_above,
            levels: self.levels.clone(),
            action: self.action.clone(),
            extended: OnceLock::new(),
        }
    }
}

impl Presheaf {
    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn size(&self, o: ObjId) -> usize {
        self.levels[o.idx()].len()
    }

    pub fn level(&self, o: ObjId) -> &[String] {
        &self.levels[o.idx()]
    }

    pub fn act(&self, m: MorId, elem: u32) -> u32 {
        self.action[m.idx()][elem as usize]
    }

    pub fn action_vec(&self, m: MorId) -> &[u32] {
        &self.action[m.idx()]
    }

    pub fn total_size(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_size() == 0
    }

    fn stored(&self, o: ObjId) -> bool {
        self.shape.cat.degree(o) <= self.truncation
    }

    /// Construct from full action data and validate.
    pub fn from_full(
        shape: Shape,
        truncation: u32,
        levels: Vec<Vec<String>>,
        action: Vec<Vec<u32>>,
        coskeletal_above: Option<u32>,
    ) -> Result<Presheaf> {
        let p = Presheaf {
            shape,
            truncation,
            coskeletal_above,
            levels,
            action,
            extended: OnceLock::new(),
        };
        p.validate()?;
        Ok(p)
    }

    /// Construct from actions of the generators only; the rest is derived by
    /// folding generator words.
    pub fn from_generator_actions(
        shape: Shape,
        truncation: u32,
        levels: Vec<Vec<String>>,
        gen_actions: HashMap<MorId, Vec<u32>>,
        coskeletal_above: Option<u32>,
    ) -> Result<Presheaf> {
        let cat = &shape.cat;
        let mut action: Vec<Vec<u32>> = vec![Vec::new(); cat.morphism_count()];
        for m in cat.morphism_ids() {
            let (a, b) = (cat.dom(m), cat.cod(m));
            if cat.degree(a) > truncation || cat.degree(b) > truncation {
                continue;
            }
            if cat.is_identity(m) {
                action[m.idx()] = (0..levels[a.idx()].len() as u32).collect();
                continue;
            }
            if let Some(v) = gen_actions.get(&m) {
                action[m.idx()] = v.clone();
                continue;
            }
            // Fold the word: m = g_1 ∘ … ∘ g_k, X(m) = X(g_k) ∘ … ∘ X(g_1).
            let word = cat.morphism(m).word.clone();
            let n = levels[b.idx()].len();
            let mut cur: Vec<u32> = (0..n as u32).collect();
            for &g in &word {
                let ga = gen_actions.get(&g).ok_or_else(|| {
                    Error::Construction(format!(
                        "generator action missing for `{}`",
                        cat.morphism(g).name
                    ))
                })?;
                for v in cur.iter_mut() {
                    *v = ga[*v as usize];
                }
            }
            action[m.idx()] = cur;
        }
        Presheaf::from_full(shape, truncation, levels, action, coskeletal_above)
    }

    /// Checks that the action respects every relation of the shape category:
    /// identities act as identities, every stored action agrees with the fold
    /// of its generator word, and `X(h∘t) = X(t)∘X(h)` for each generator `h`
    /// and morphism `t` (which implies the condition for all pairs).
    pub fn validate(&self) -> Result<()> {
        let cat = &self.shape.cat;
        if self.levels.len() != cat.object_count() || self.action.len() != cat.morphism_count() {
            return Err(Error::Structural("presheaf data sized wrong".into()));
        }
        for m in cat.morphism_ids() {
            let (a, b) = (cat.dom(m), cat.cod(m));
            if !self.stored(a) || !self.stored(b) {
                continue;
            }
            let v = &self.action[m.idx()];
            if v.len() != self.levels[b.idx()].len() {
                return Err(Error::Structural(format!(
                    "action of `{}` has wrong arity",
                    cat.morphism(m).name
                )));
            }
            let na = self.levels[a.idx()].len() as u32;
            if v.iter().any(|&x| x >= na) {
                return Err(Error::Structural(format!(
                    "action of `{}` maps out of range",
                    cat.morphism(m).name
                )));
            }
            if cat.is_identity(m) && v.iter().enumerate().any(|(i, &x)| x != i as u32) {
                return Err(Error::Structural(format!(
                    "identity of {} does not act as identity",
                    cat.object(a).name
                )));
            }
        }
        // Fold consistency.
        for m in cat.morphism_ids() {
            let (a, b) = (cat.dom(m), cat.cod(m));
            if !self.stored(a) || !self.stored(b) || cat.is_identity(m) {
                continue;
            }
            let word = &cat.morphism(m).word;
            if word.len() <= 1 {
                continue;
            }
            let n = self.levels[b.idx()].len();
            let mut cur: Vec<u32> = (0..n as u32).collect();
            for &g in word {
                let ga = &self.action[g.idx()];
                for v in cur.iter_mut() {
                    *v = ga[*v as usize];
                }
            }
            if &cur != &self.action[m.idx()] {
                return Err(Error::Structural(format!(
                    "action of `{}` disagrees with its generator word",
                    cat.morphism(m).name
                )));
            }
        }
        // Generator-pair relations.
        for &h in &cat.generators() {
            let (b, c) = (cat.dom(h), cat.cod(h));
            if !self.stored(b) || !self.stored(c) {
                continue;
            }
            for a in cat.objects() {
                if !self.stored(a) {
                    continue;
                }
                for &t in cat.hom(a, b) {
                    let ht = cat.compose(h, t);
                    let va = &self.action[ht.idx()];
                    let vh = &self.action[h.idx()];
                    let vt = &self.action[t.idx()];
                    for j in 0..va.len() {
                        if va[j] != vt[vh[j] as usize] {
                            return Err(Error::Structural(format!(
                                "relation violated: X({}∘{}) ≠ X({})∘X({})",
                                cat.morphism(h).name,
                                cat.morphism(t).name,
                                cat.morphism(t).name,
                                cat.morphism(h).name
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Levels and actions equal (names ignored).
    pub fn levelwise_equal(&self, other: &Presheaf) -> bool {
        if !Arc::ptr_eq(&self.shape, &other.shape)
            && self.shape.fingerprint() != other.shape.fingerprint()
        {
            return false;
        }
        self.levels
            .iter()
            .zip(other.levels.iter())
            .all(|(a, b)| a.len() == b.len())
            && self.action == other.action
    }

    /// The presheaf with stored levels above `n` discarded.
    pub fn truncate(&self, n: u32) -> Presheaf {
        let cat = &self.shape.cat;
        let mut levels = self.levels.clone();
        let mut action = self.action.clone();
        for o in cat.objects() {
            if cat.degree(o) > n {
                levels[o.idx()].clear();
            }
        }
        for m in cat.morphism_ids() {
            if cat.degree(cat.dom(m)) > n || cat.degree(cat.cod(m)) > n {
                action[m.idx()].clear();
            }
        }
        Presheaf {
            shape: self.shape.clone(),
            truncation: n.min(self.truncation),
            coskeletal_above: self.coskeletal_above.filter(|&k| k <= n),
            levels,
            action,
            extended: OnceLock::new(),
        }
    }

    /// Evaluate the presheaf at full shape truncation. Stored data is
    /// returned as-is; a presheaf with `coskeletal_above = Some(k)` and a
    /// lower stored truncation is extended by the unique-filler formula on
    /// first access and memoized.
    pub fn at_full(&self) -> Result<&Presheaf> {
        let cap = self.shape.max_degree();
        if self.truncation >= cap {
            return Ok(self);
        }
        let k = self.coskeletal_above.ok_or_else(|| {
            Error::Precondition(format!(
                "presheaf truncated at {} is not evaluable to degree {cap} (no coskeletal_above)",
                self.truncation
            ))
        })?;
        if k > self.truncation {
            return Err(Error::Precondition(
                "coskeletal_above exceeds the stored truncation".into(),
            ));
        }
        if let Some(p) = self.extended.get() {
            return Ok(p);
        }
        let ext = cosk::coskeleton(self, k)?;
        // The filler formula must reproduce the stored levels up to the
        // stored truncation; cardinality disagreement means the flag lied.
        for o in self.shape.cat.objects() {
            let d = self.shape.cat.degree(o);
            if d <= self.truncation && ext.size(o) != self.size(o) {
                return Err(Error::Structural(format!(
                    "presheaf is not {k}-coskeletal at stored level {}",
                    self.shape.cat.object(o).name
                )));
            }
        }
        let _ = self.extended.set(Box::new(ext));
        Ok(self.extended.get().unwrap())
    }
}

/// The representable presheaf A[a]: level b = Hom(b, a), action by
/// precomposition.
pub fn representable(shape: &Shape, a: ObjId) -> Presheaf {
    let cat = &shape.cat;
    let levels: Vec<Vec<String>> = cat
        .objects()
        .map(|b| {
            cat.hom(b, a)
                .iter()
                .map(|&m| cat.morphism(m).name.clone())
                .collect()
        })
        .collect();
    let mut action: Vec<Vec<u32>> = vec![Vec::new(); cat.morphism_count()];
    for u in cat.morphism_ids() {
        let (b, c) = (cat.dom(u), cat.cod(u));
        let from = cat.hom(c, a);
        let to = cat.hom(b, a);
        let pos: HashMap<MorId, u32> = to
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i as u32))
            .collect();
        action[u.idx()] = from.iter().map(|&v| pos[&cat.compose(v, u)]).collect();
    }
    Presheaf {
        shape: shape.clone(),
        truncation: shape.max_degree(),
        coskeletal_above: None,
        levels,
        action,
        extended: OnceLock::new(),
    }
}

/// One element per level.
pub fn terminal(shape: &Shape) -> Presheaf {
    let cat = &shape.cat;
    Presheaf {
        shape: shape.clone(),
        truncation: shape.max_degree(),
        coskeletal_above: Some(0),
        levels: cat.objects().map(|_| vec!["*".to_string()]).collect(),
        action: cat.morphism_ids().map(|_| vec![0]).collect(),
        extended: OnceLock::new(),
    }
}

pub fn empty_presheaf(shape: &Shape) -> Presheaf {
    let cat = &shape.cat;
    Presheaf {
        shape: shape.clone(),
        truncation: shape.max_degree(),
        coskeletal_above: Some(0),
        levels: cat.objects().map(|_| Vec::new()).collect(),
        action: cat.morphism_ids().map(|_| Vec::new()).collect(),
        extended: OnceLock::new(),
    }
}

/// A levelwise subset of a presheaf closed under the contravariant action.
#[derive(Debug, Clone)]
pub struct Subobject {
    pub parent: Arc<Presheaf>,
    pub selected: Vec<Vec<bool>>,
}

impl Subobject {
    pub fn full(parent: Arc<Presheaf>) -> Subobject {
        let selected = parent.levels.iter().map(|l| vec![true; l.len()]).collect();
        Subobject { parent, selected }
    }

    pub fn empty(parent: Arc<Presheaf>) -> Subobject {
        let selected = parent.levels.iter().map(|l| vec![false; l.len()]).collect();
        Subobject { parent, selected }
    }

    pub fn contains(&self, o: ObjId, elem: u32) -> bool {
        self.selected[o.idx()][elem as usize]
    }

    pub fn size(&self, o: ObjId) -> usize {
        self.selected[o.idx()].iter().filter(|&&b| b).count()
    }

    pub fn total_size(&self) -> usize {
        self.parent
            .shape
            .cat
            .objects()
            .map(|o| self.size(o))
            .sum()
    }

    pub fn is_closed(&self) -> bool {
        let cat = &self.parent.shape.cat;
        for m in cat.morphism_ids() {
            let (a, b) = (cat.dom(m), cat.cod(m));
            let v = &self.parent.action[m.idx()];
            for (j, sel) in self.selected[b.idx()].iter().enumerate() {
                if *sel && !self.selected[a.idx()][v[j] as usize] {
                    return false;
                }
            }
        }
        true
    }

    /// Close the current selection under all actions.
    pub fn close(&mut self) {
        let cat = &self.parent.shape.cat;
        loop {
            let mut changed = false;
            for m in cat.morphism_ids() {
                let (a, b) = (cat.dom(m), cat.cod(m));
                let v = &self.parent.action[m.idx()];
                for j in 0..self.selected[b.idx()].len() {
                    if self.selected[b.idx()][j] && !self.selected[a.idx()][v[j] as usize] {
                        self.selected[a.idx()][v[j] as usize] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    pub fn union_with(&mut self, other: &Subobject) {
        for (a, b) in self.selected.iter_mut().zip(other.selected.iter()) {
            for (x, y) in a.iter_mut().zip(b.iter()) {
                *x |= *y;
            }
        }
    }

    pub fn is_subset_of(&self, other: &Subobject) -> bool {
        self.selected
            .iter()
            .zip(other.selected.iter())
            .all(|(a, b)| a.iter().zip(b.iter()).all(|(x, y)| !*x || *y))
    }

    pub fn same_selection(&self, other: &Subobject) -> bool {
        self.selected == other.selected
    }

    /// Reify as a standalone presheaf together with the inclusion map.
    pub fn to_presheaf(&self) -> (Presheaf, LevelMap) {
        let cat = &self.parent.shape.cat;
        let mut reindex: Vec<Vec<Option<u32>>> = Vec::with_capacity(self.selected.len());
        let mut levels = Vec::with_capacity(self.selected.len());
        let mut incl: LevelMap = Vec::with_capacity(self.selected.len());
        for o in cat.objects() {
            let mut names = Vec::new();
            let mut inc = Vec::new();
            let mut re = vec![None; self.selected[o.idx()].len()];
            for (j, &sel) in self.selected[o.idx()].iter().enumerate() {
                if sel {
                    re[j] = Some(names.len() as u32);
                    names.push(self.parent.levels[o.idx()][j].clone());
                    inc.push(j as u32);
                }
            }
            reindex.push(re);
            levels.push(names);
            incl.push(inc);
        }
        let mut action: Vec<Vec<u32>> = vec![Vec::new(); cat.morphism_count()];
        for m in cat.morphism_ids() {
            let (a, b) = (cat.dom(m), cat.cod(m));
            if self.parent.action[m.idx()].is_empty() && !self.parent.levels[b.idx()].is_empty() {
                continue;
            }
            let mut v = Vec::new();
            for (j, &sel) in self.selected[b.idx()].iter().enumerate() {
                if sel {
                    let img = self.parent.action[m.idx()][j];
                    v.push(reindex[a.idx()][img as usize].expect("subobject not closed"));
                }
            }
            action[m.idx()] = v;
        }
        let p = Presheaf {
            shape: self.parent.shape.clone(),
            truncation: self.parent.truncation,
            coskeletal_above: None,
            levels,
            action,
            extended: OnceLock::new(),
        };
        (p, incl)
    }
}

/// A map of presheaves: levelwise functions commuting with every action.
#[derive(Debug, Clone)]
pub struct PresheafMap {
    pub source: Arc<Presheaf>,
    pub target: Arc<Presheaf>,
    pub maps: LevelMap,
}

impl PresheafMap {
    pub fn new(source: Arc<Presheaf>, target: Arc<Presheaf>, maps: LevelMap) -> Result<Self> {
        let m = PresheafMap {
            source,
            target,
            maps,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(p: Arc<Presheaf>) -> PresheafMap {
        let maps = p
            .levels
            .iter()
            .map(|l| (0..l.len() as u32).collect())
            .collect();
        PresheafMap {
            source: p.clone(),
            target: p,
            maps,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let cat = &self.source.shape.cat;
        if self.source.shape.fingerprint() != self.target.shape.fingerprint() {
            return Err(Error::Structural("map between different shapes".into()));
        }
        for o in cat.objects() {
            if self.maps[o.idx()].len() != self.source.size(o) {
                return Err(Error::Structural("map arity mismatch".into()));
            }
            let n = self.target.size(o) as u32;
            if self.maps[o.idx()].iter().any(|&x| x >= n) {
                return Err(Error::Structural("map out of range".into()));
            }
        }
        for m in cat.morphism_ids() {
            let (a, b) = (cat.dom(m), cat.cod(m));
            let sx = &self.source.action[m.idx()];
            let tx = &self.target.action[m.idx()];
            if sx.is_empty() && !self.source.levels[b.idx()].is_empty() {
                continue;
            }
            for j in 0..self.source.size(b) {
                let lhs = self.maps[a.idx()][sx[j] as usize];
                let rhs = tx[self.maps[b.idx()][j] as usize];
                if lhs != rhs {
                    return Err(Error::Structural(format!(
                        "map does not commute with `{}`",
                        cat.morphism(m).name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn compose(&self, other: &PresheafMap) -> Result<PresheafMap> {
        // self ∘ other.
        if !Arc::ptr_eq(&other.target, &self.source)
            && !other.target.levelwise_equal(&self.source)
        {
            return Err(Error::Argument("maps not composable".into()));
        }
        let maps = other
            .maps
            .iter()
            .enumerate()
            .map(|(i, v)| v.iter().map(|&x| self.maps[i][x as usize]).collect())
            .collect();
        Ok(PresheafMap {
            source: other.source.clone(),
            target: self.target.clone(),
            maps,
        })
    }

    pub fn is_levelwise_injective(&self) -> bool {
        for (i, v) in self.maps.iter().enumerate() {
            let _ = i;
            let mut seen = std::collections::HashSet::new();
            for &x in v {
                if !seen.insert(x) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_levelwise_surjective(&self) -> bool {
        for (i, v) in self.maps.iter().enumerate() {
            let n = self.target.levels[i].len();
            let mut seen = vec![false; n];
            for &x in v {
                seen[x as usize] = true;
            }
            if seen.iter().any(|&b| !b) {
                return false;
            }
        }
        true
    }

    pub fn is_levelwise_bijective(&self) -> bool {
        self.is_levelwise_injective() && self.is_levelwise_surjective()
    }

    /// The image as a subobject of the target.
    pub fn image(&self) -> Subobject {
        let mut sub = Subobject::empty(self.target.clone());
        for (i, v) in self.maps.iter().enumerate() {
            for &x in v {
                sub.selected[i][x as usize] = true;
            }
        }
        sub
    }
}

/// Boundary ∂A[a]: the elements of the representable factoring through a
/// non-invertible face operator; levelwise, morphisms whose mono part is
/// non-invertible.
pub fn boundary(shape: &Shape, a: ObjId) -> Subobject {
    let cat = &shape.cat;
    let parent = Arc::new(representable(shape, a));
    let mut sub = Subobject::empty(parent);
    for b in cat.objects() {
        for (j, &u) in cat.hom(b, a).iter().enumerate() {
            let (_, m) = cat
                .split_epi_mono_factor(u)
                .expect("EZ factorization exists in verified shapes");
            if !cat.is_iso(m) {
                sub.selected[b.idx()][j] = true;
            }
        }
    }
    sub
}

/// The f-horn Λ^f A[a]: boundary minus the elements whose mono part lies in
/// the face class of `f`. Requires `f` to be a codimension-1 face of `a`.
pub fn horn(shape: &Shape, a: ObjId, f: MorId) -> Result<Subobject> {
    let cat = &shape.cat;
    if cat.cod(f) != a || !cat.is_mono(f) || cat.is_iso(f) {
        return Err(Error::Argument(format!(
            "`{}` is not a non-invertible face operator into {}",
            cat.morphism(f).name,
            cat.object(a).name
        )));
    }
    if cat.degree(cat.dom(f)) + 1 != cat.degree(a) {
        return Err(Error::Argument(format!(
            "horns are taken at codimension-1 faces; `{}` drops degree by more",
            cat.morphism(f).name
        )));
    }
    let parent = Arc::new(representable(shape, a));
    let mut sub = Subobject::empty(parent);
    for b in cat.objects() {
        for (j, &u) in cat.hom(b, a).iter().enumerate() {
            let (_, m) = cat.split_epi_mono_factor(u).expect("EZ factorization");
            if !cat.is_iso(m) && !cat.same_face_class(f, m) {
                sub.selected[b.idx()][j] = true;
            }
        }
    }
    Ok(sub)
}

/// Skeleton: elements reachable from levels of degree ≤ n under the action.
pub fn skeleton(x: &Presheaf, n: u32) -> Subobject {
    let cat = &x.shape.cat;
    let parent = Arc::new(x.clone());
    let mut sub = Subobject::empty(parent);
    for u in cat.morphism_ids() {
        let (a, b) = (cat.dom(u), cat.cod(u));
        if cat.degree(b) > n || cat.degree(a) > x.truncation {
            continue;
        }
        let v = &x.action[u.idx()];
        for j in 0..x.size(b) {
            sub.selected[a.idx()][v[j] as usize] = true;
        }
    }
    sub
}

/// Per-level flags of elements not hit by any non-invertible degeneracy.
pub fn nondegenerate(x: &Presheaf) -> Vec<Vec<bool>> {
    let cat = &x.shape.cat;
    let mut nondeg: Vec<Vec<bool>> = x.levels.iter().map(|l| vec![true; l.len()]).collect();
    for e in cat.morphism_ids() {
        if !cat.is_split_epi(e) || cat.is_iso(e) {
            continue;
        }
        let (a, b) = (cat.dom(e), cat.cod(e));
        if cat.degree(a) > x.truncation || cat.degree(b) > x.truncation {
            continue;
        }
        let v = &x.action[e.idx()];
        for j in 0..x.size(b) {
            nondeg[a.idx()][v[j] as usize] = false;
        }
    }
    nondeg
}

/// Normal monomorphism test: levelwise injective and every nondegenerate
/// element outside the image has trivial isotropy in Aut(a).
pub fn is_normal_mono(f: &PresheafMap) -> bool {
    if !f.is_levelwise_injective() {
        return false;
    }
    normal_outside(&f.target, &f.image())
}

/// An object X is normal iff 0 → X is a normal mono.
pub fn is_normal_object(x: &Presheaf) -> bool {
    let image = Subobject::empty(Arc::new(x.clone()));
    normal_outside(x, &image)
}

fn normal_outside(target: &Presheaf, image: &Subobject) -> bool {
    let cat = &target.shape.cat;
    let nondeg = nondegenerate(target);
    for a in cat.objects() {
        if cat.degree(a) > target.truncation {
            continue;
        }
        let autos = cat.automorphisms(a);
        if autos.len() <= 1 {
            continue;
        }
        for j in 0..target.size(a) {
            if !nondeg[a.idx()][j] || image.selected[a.idx()][j] {
                continue;
            }
            for &t in &autos {
                if cat.is_identity(t) {
                    continue;
                }
                if target.act(t, j as u32) == j as u32 {
                    return false;
                }
            }
        }
    }
    true
}

/// Levelwise cartesian product with componentwise action and the two
/// projections.
pub fn product(x: &Presheaf, y: &Presheaf) -> Result<(Presheaf, LevelMap, LevelMap)> {
    if x.shape.fingerprint() != y.shape.fingerprint() {
        return Err(Error::Argument("product requires a shared shape".into()));
    }
    let cat = &x.shape.cat;
    let trunc = x.truncation.min(y.truncation);
    let mut levels = Vec::with_capacity(cat.object_count());
    let mut proj_x: LevelMap = Vec::new();
    let mut proj_y: LevelMap = Vec::new();
    for o in cat.objects() {
        let mut names = Vec::new();
        let mut px = Vec::new();
        let mut py = Vec::new();
        if cat.degree(o) <= trunc {
            for i in 0..x.size(o) {
                for j in 0..y.size(o) {
                    names.push(format!(
                        "({},{})",
                        x.levels[o.idx()][i],
                        y.levels[o.idx()][j]
                    ));
                    px.push(i as u32);
                    py.push(j as u32);
                }
            }
        }
        levels.push(names);
        proj_x.push(px);
        proj_y.push(py);
    }
    let mut action: Vec<Vec<u32>> = vec![Vec::new(); cat.morphism_count()];
    for m in cat.morphism_ids() {
        let (a, b) = (cat.dom(m), cat.cod(m));
        if cat.degree(a) > trunc || cat.degree(b) > trunc {
            continue;
        }
        let nya = y.size(a) as u32;
        let vx = &x.action[m.idx()];
        let vy = &y.action[m.idx()];
        let mut v = Vec::with_capacity(x.size(b) * y.size(b));
        for i in 0..x.size(b) {
            for j in 0..y.size(b) {
                v.push(vx[i] * nya + vy[j]);
            }
        }
        action[m.idx()] = v;
    }
    let p = Presheaf {
        shape: x.shape.clone(),
        truncation: trunc,
        coskeletal_above: None,
        levels,
        action,
        extended: OnceLock::new(),
    };
    Ok((p, proj_x, proj_y))
}

/// Fiber product of f: X → Z and g: Y → Z, as a subobject of X × Y.
pub fn pullback(f: &PresheafMap, g: &PresheafMap) -> Result<(Presheaf, LevelMap, LevelMap)> {
    if !f.target.levelwise_equal(&g.target) {
        return Err(Error::Argument("pullback requires a shared target".into()));
    }
    let (prod, px, py) = product(&f.source, &g.source)?;
    let cat = &prod.shape.cat;
    let mut keep: Vec<Vec<bool>> = Vec::new();
    for o in cat.objects() {
        let mut k = Vec::with_capacity(prod.size(o));
        for e in 0..prod.size(o) {
            let i = px[o.idx()][e];
            let j = py[o.idx()][e];
            k.push(f.maps[o.idx()][i as usize] == g.maps[o.idx()][j as usize]);
        }
        keep.push(k);
    }
    let sub = Subobject {
        parent: Arc::new(prod),
        selected: keep,
    };
    if !sub.is_closed() {
        return Err(Error::Structural("pullback selection not closed".into()));
    }
    let (p, incl) = sub.to_presheaf();
    let proj_x: LevelMap = incl
        .iter()
        .enumerate()
        .map(|(o, v)| v.iter().map(|&e| px[o][e as usize]).collect())
        .collect();
    let proj_y: LevelMap = incl
        .iter()
        .enumerate()
        .map(|(o, v)| v.iter().map(|&e| py[o][e as usize]).collect())
        .collect();
    Ok((p, proj_x, proj_y))
}

/// Pushout of X ← Z → Y (f: Z → X, g: Z → Y): levelwise amalgamated sum.
pub fn pushout(f: &PresheafMap, g: &PresheafMap) -> Result<(Presheaf, LevelMap, LevelMap)> {
    if !f.source.levelwise_equal(&g.source) {
        return Err(Error::Argument("pushout requires a shared source".into()));
    }
    let x = &f.target;
    let y = &g.target;
    let cat = &x.shape.cat;
    let trunc = x.truncation.min(y.truncation);
    // Union-find per level over X ⊔ Y.
    let mut parent_vec: Vec<Vec<u32>> = Vec::new();
    for o in cat.objects() {
        let n = x.size(o) + y.size(o);
        let mut uf: Vec<u32> = (0..n as u32).collect();
        fn find(uf: &mut Vec<u32>, mut i: u32) -> u32 {
            while uf[i as usize] != i {
                let p = uf[uf[i as usize] as usize];
                uf[i as usize] = p;
                i = p;
            }
            i
        }
        for e in 0..f.source.size(o) {
            let xi = f.maps[o.idx()][e];
            let yi = g.maps[o.idx()][e] + x.size(o) as u32;
            let (a, b) = (find(&mut uf, xi), find(&mut uf, yi));
            uf[a as usize] = b;
        }
        for i in 0..n as u32 {
            let r = find(&mut uf, i);
            uf[i as usize] = r;
        }
        parent_vec.push(uf);
    }
    // Canonical numbering of classes per level.
    let mut class_of: Vec<Vec<u32>> = Vec::new();
    let mut levels: Vec<Vec<String>> = Vec::new();
    for o in cat.objects() {
        let uf = &parent_vec[o.idx()];
        let mut remap: HashMap<u32, u32> = HashMap::new();
        let mut names = Vec::new();
        let mut cls = Vec::with_capacity(uf.len());
        for (i, &r) in uf.iter().enumerate() {
            let next = remap.len() as u32;
            let c = *remap.entry(r).or_insert(next);
            if c as usize == names.len() {
                let nm = if i < x.size(o) {
                    format!("x:{}", x.levels[o.idx()][i])
                } else {
                    format!("y:{}", y.levels[o.idx()][i - x.size(o)])
                };
                names.push(nm);
            }
            cls.push(c);
        }
        class_of.push(cls);
        levels.push(names);
    }
    let mut action: Vec<Vec<u32>> = vec![Vec::new(); cat.morphism_count()];
    for m in cat.morphism_ids() {
        let (a, b) = (cat.dom(m), cat.cod(m));
        if cat.degree(a) > trunc || cat.degree(b) > trunc {
            continue;
        }
        let mut v = vec![u32::MAX; levels[b.idx()].len()];
        let vx = &x.action[m.idx()];
        for i in 0..x.size(b) {
            let c = class_of[b.idx()][i];
            let img = class_of[a.idx()][vx[i] as usize];
            if v[c as usize] != u32::MAX && v[c as usize] != img {
                // Classes glued at b must have glued images at a; this is
                // automatic for levelwise pushouts of presheaf maps.
                return Err(Error::Structural("pushout action ill-defined".into()));
            }
            v[c as usize] = img;
        }
        let vy = &y.action[m.idx()];
        for j in 0..y.size(b) {
            let c = class_of[b.idx()][x.size(b) + j];
            let img = class_of[a.idx()][x.size(a) + vy[j] as usize];
            if v[c as usize] != u32::MAX && v[c as usize] != img {
                return Err(Error::Structural("pushout action ill-defined".into()));
            }
            v[c as usize] = img;
        }
        if v.iter().any(|&z| z == u32::MAX) {
            return Err(Error::Structural("pushout action incomplete".into()));
        }
        action[m.idx()] = v;
    }
    let p = Presheaf {
        shape: x.shape.clone(),
        truncation: trunc,
        coskeletal_above: None,
        levels,
        action,
        extended: OnceLock::new(),
    };
    p.validate()?;
    let inj_x: LevelMap = cat
        .objects()
        .map(|o| (0..x.size(o)).map(|i| class_of[o.idx()][i]).collect())
        .collect();
    let inj_y: LevelMap = cat
        .objects()
        .map(|o| {
            (0..y.size(o))
                .map(|j| class_of[o.idx()][x.size(o) + j])
                .collect()
        })
        .collect();
    Ok((p, inj_x, inj_y))
}
