//! Finite categories with degree functions.
//!
//! Everything downstream (shape categories, presheaves, horn filling) works
//! against the [`FiniteCategory`] representation built here: objects carry a
//! degree, morphisms carry a canonical name (unique within their hom-set) and
//! a generator word, and composition is stored as dense per-hom-set blocks so
//! that the exhaustive axiom scans stay cheap at truncation 4.

mod checks;
pub mod amalgam;

pub use checks::*;

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

/// Index of an object in its [`FiniteCategory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub u32);

/// Index of a morphism in its [`FiniteCategory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorId(pub u32);

impl ObjId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone)]
pub struct Object {
    pub name: String,
    pub degree: u32,
}

/// Coarse classification of a morphism by its canonical generator word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorClass {
    Identity,
    /// Composite of face generators only.
    Face,
    /// Composite of degeneracy generators only.
    Degeneracy,
    /// A single (special) automorphism.
    Auto,
    /// Mixed word (faces, degeneracies and/or an automorphism).
    Composite,
}

impl MorClass {
    pub fn as_str(self) -> &'static str {
        match self {
            MorClass::Identity => "identity",
            MorClass::Face => "face",
            MorClass::Degeneracy => "degeneracy",
            MorClass::Auto => "auto",
            MorClass::Composite => "composite",
        }
    }

    pub fn from_str(s: &str) -> Option<Self> {
        Some(match s {
            "identity" => MorClass::Identity,
            "face" => MorClass::Face,
            "degeneracy" => MorClass::Degeneracy,
            "auto" => MorClass::Auto,
            "composite" => MorClass::Composite,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Morphism {
    /// Canonical form; unique within the hom-set `(dom, cod)`.
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
    pub class: MorClass,
    /// Generator word: `f = word[0] ∘ word[1] ∘ … ∘ word[k-1]`.
    /// Empty for identities; generators have `word = [self]`.
    pub word: Vec<MorId>,
}

/// A finite category with a degree function on objects.
///
/// Immutable after construction; all queries are pure.
#[derive(Debug, Clone)]
pub struct FiniteCategory {
    objects: Vec<Object>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    homs: BTreeMap<(ObjId, ObjId), Vec<MorId>>,
    /// Position of each morphism inside its hom-set vector.
    local: Vec<u32>,
    /// Composition blocks: for objects `(a, b, c)` the vec holds
    /// `g_local * |H(a,b)| + f_local -> g∘f` for `f: a→b`, `g: b→c`.
    blocks: HashMap<(ObjId, ObjId, ObjId), Vec<MorId>>,
    is_iso: Vec<bool>,
    is_mono: Vec<bool>,
    is_epi: Vec<bool>,
    is_split_epi: Vec<bool>,
    inverse: Vec<Option<MorId>>,
}

impl FiniteCategory {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len() as u32).map(ObjId)
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len() as u32).map(MorId)
    }

    pub fn object(&self, o: ObjId) -> &Object {
        &self.objects[o.idx()]
    }

    pub fn morphism(&self, m: MorId) -> &Morphism {
        &self.morphisms[m.idx()]
    }

    pub fn degree(&self, o: ObjId) -> u32 {
        self.objects[o.idx()].degree
    }

    pub fn dom(&self, m: MorId) -> ObjId {
        self.morphisms[m.idx()].dom
    }

    pub fn cod(&self, m: MorId) -> ObjId {
        self.morphisms[m.idx()].cod
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identities[o.idx()]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identities[self.dom(m).idx()] == m
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        self.homs.get(&(a, b)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn homs(&self) -> &BTreeMap<(ObjId, ObjId), Vec<MorId>> {
        &self.homs
    }

    /// `g ∘ f` for `f: a→b`, `g: b→c`. Panics if not composable.
    pub fn compose(&self, g: MorId, f: MorId) -> MorId {
        let a = self.dom(f);
        let b = self.cod(f);
        debug_assert_eq!(b, self.dom(g), "compose: morphisms not composable");
        let c = self.cod(g);
        let block = &self.blocks[&(a, b, c)];
        let nab = self.hom(a, b).len();
        block[self.local[g.idx()] as usize * nab + self.local[f.idx()] as usize]
    }

    pub fn is_iso(&self, m: MorId) -> bool {
        self.is_iso[m.idx()]
    }

    pub fn is_mono(&self, m: MorId) -> bool {
        self.is_mono[m.idx()]
    }

    pub fn is_epi(&self, m: MorId) -> bool {
        self.is_epi[m.idx()]
    }

    pub fn is_split_epi(&self, m: MorId) -> bool {
        self.is_split_epi[m.idx()]
    }

    pub fn inverse(&self, m: MorId) -> Option<MorId> {
        self.inverse[m.idx()]
    }

    pub fn automorphisms(&self, o: ObjId) -> Vec<MorId> {
        self.hom(o, o)
            .iter()
            .copied()
            .filter(|&m| self.is_iso[m.idx()])
            .collect()
    }

    /// Non-invertible monomorphisms into `a` ("faces" in an EZ-category).
    pub fn faces_into(&self, a: ObjId) -> Vec<MorId> {
        let mut out = Vec::new();
        for (&(_, cod), ms) in self.homs.iter() {
            if cod != a {
                continue;
            }
            for &m in ms {
                if self.is_mono[m.idx()] && !self.is_iso[m.idx()] {
                    out.push(m);
                }
            }
        }
        out
    }

    /// Codimension-1 faces into `a`: non-invertible monos raising degree by 1.
    pub fn codim1_faces_into(&self, a: ObjId) -> Vec<MorId> {
        self.faces_into(a)
            .into_iter()
            .filter(|&m| self.degree(self.dom(m)) + 1 == self.degree(a))
            .collect()
    }

    /// True when `g = f ∘ θ` for some isomorphism `θ` (same face class).
    pub fn same_face_class(&self, f: MorId, g: MorId) -> bool {
        if self.cod(f) != self.cod(g) {
            return false;
        }
        let (df, dg) = (self.dom(f), self.dom(g));
        self.hom(dg, df)
            .iter()
            .any(|&t| self.is_iso[t.idx()] && self.compose(f, t) == g)
    }

    pub fn find_morphism(&self, dom: ObjId, cod: ObjId, name: &str) -> Option<MorId> {
        self.hom(dom, cod)
            .iter()
            .copied()
            .find(|&m| self.morphism(m).name == name)
    }

    pub fn find_object(&self, name: &str) -> Option<ObjId> {
        self.objects()
            .find(|&o| self.object(o).name == name)
    }

    /// Deterministic fingerprint of the category skeleton (object/morphism
    /// names, degrees, composition) used for equality-after-round-trip tests.
    pub fn structural_eq(&self, other: &FiniteCategory) -> bool {
        if self.objects.len() != other.objects.len()
            || self.morphisms.len() != other.morphisms.len()
        {
            return false;
        }
        for (x, y) in self.objects.iter().zip(other.objects.iter()) {
            if x.name != y.name || x.degree != y.degree {
                return false;
            }
        }
        for (x, y) in self.morphisms.iter().zip(other.morphisms.iter()) {
            if x.name != y.name || x.dom != y.dom || x.cod != y.cod || x.word != y.word {
                return false;
            }
        }
        for f in self.morphism_ids() {
            for g in self.morphism_ids() {
                if self.cod(f) == self.dom(g) && self.compose(g, f) != other.compose(g, f) {
                    return false;
                }
            }
        }
        true
    }
}

/// Incremental builder. Shape modules enumerate objects and morphisms with
/// concrete canonical names, then supply composition as a closure over ids.
pub struct CategoryBuilder {
    objects: Vec<Object>,
    morphisms: Vec<Morphism>,
    by_key: HashMap<(ObjId, ObjId, String), MorId>,
    identities: Vec<Option<MorId>>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        CategoryBuilder {
            objects: Vec::new(),
            morphisms: Vec::new(),
            by_key: HashMap::new(),
            identities: Vec::new(),
        }
    }

    pub fn add_object(&mut self, name: impl Into<String>, degree: u32) -> ObjId {
        let id = ObjId(self.objects.len() as u32);
        self.objects.push(Object {
            name: name.into(),
            degree,
        });
        self.identities.push(None);
        id
    }

    pub fn add_morphism(
        &mut self,
        dom: ObjId,
        cod: ObjId,
        name: impl Into<String>,
    ) -> Result<MorId> {
        let name = name.into();
        let key = (dom, cod, name.clone());
        if self.by_key.contains_key(&key) {
            return Err(Error::Construction(format!(
                "duplicate canonical form `{}` in hom({}, {})",
                name,
                self.objects[dom.idx()].name,
                self.objects[cod.idx()].name
            )));
        }
        let id = MorId(self.morphisms.len() as u32);
        self.morphisms.push(Morphism {
            name,
            dom,
            cod,
            class: MorClass::Composite,
            word: Vec::new(),
        });
        self.by_key.insert(key, id);
        Ok(id)
    }

    pub fn set_identity(&mut self, o: ObjId, m: MorId) {
        self.identities[o.idx()] = Some(m);
    }

    pub fn lookup(&self, dom: ObjId, cod: ObjId, name: &str) -> Option<MorId> {
        self.by_key.get(&(dom, cod, name.to_string())).copied()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism_dom_cod(&self, m: MorId) -> (ObjId, ObjId) {
        (self.morphisms[m.idx()].dom, self.morphisms[m.idx()].cod)
    }

    /// Finish the category. `compose(g, f)` must return `g∘f` for every
    /// composable pair; a `None` means the composite is missing from the
    /// declared morphisms, which is a construction error.
    pub fn build(
        self,
        mut compose: impl FnMut(MorId, MorId) -> Option<MorId>,
    ) -> Result<FiniteCategory> {
        let identities: Vec<MorId> = self
            .identities
            .iter()
            .enumerate()
            .map(|(i, id)| {
                id.ok_or_else(|| {
                    Error::Construction(format!("object `{}` has no identity", self.objects[i].name))
                })
            })
            .collect::<Result<_>>()?;

        let mut homs: BTreeMap<(ObjId, ObjId), Vec<MorId>> = BTreeMap::new();
        for (i, m) in self.morphisms.iter().enumerate() {
            homs.entry((m.dom, m.cod)).or_default().push(MorId(i as u32));
        }
        let mut local = vec![0u32; self.morphisms.len()];
        for ms in homs.values() {
            for (i, &m) in ms.iter().enumerate() {
                local[m.idx()] = i as u32;
            }
        }

        let mut blocks: HashMap<(ObjId, ObjId, ObjId), Vec<MorId>> = HashMap::new();
        let keys: Vec<(ObjId, ObjId)> = homs.keys().copied().collect();
        for &(a, b) in &keys {
            for &(b2, c) in &keys {
                if b != b2 {
                    continue;
                }
                let fs = &homs[&(a, b)];
                let gs = &homs[&(b, c)];
                let mut block = Vec::with_capacity(fs.len() * gs.len());
                for &g in gs {
                    for &f in fs {
                        let gf = compose(g, f).ok_or_else(|| {
                            Error::Construction(format!(
                                "composition not closed: `{}` ∘ `{}`",
                                self.morphisms[g.idx()].name,
                                self.morphisms[f.idx()].name
                            ))
                        })?;
                        let (d, e) = (self.morphisms[gf.idx()].dom, self.morphisms[gf.idx()].cod);
                        if d != a || e != c {
                            return Err(Error::Construction(format!(
                                "composite `{}` ∘ `{}` has wrong endpoints",
                                self.morphisms[g.idx()].name,
                                self.morphisms[f.idx()].name
                            )));
                        }
                        block.push(gf);
                    }
                }
                blocks.insert((a, b, c), block);
            }
        }

        let mut cat = FiniteCategory {
            objects: self.objects,
            morphisms: self.morphisms,
            identities,
            homs,
            local,
            blocks,
            is_iso: Vec::new(),
            is_mono: Vec::new(),
            is_epi: Vec::new(),
            is_split_epi: Vec::new(),
            inverse: Vec::new(),
        };
        cat.compute_flags();
        Ok(cat)
    }
}

impl Default for CategoryBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl FiniteCategory {
    fn compute_flags(&mut self) {
        let n = self.morphisms.len();
        let mut is_iso = vec![false; n];
        let mut inverse = vec![None; n];
        for m in 0..n as u32 {
            let m = MorId(m);
            let (a, b) = (self.dom(m), self.cod(m));
            for &g in self.hom(b, a) {
                if self.compose(g, m) == self.identity(a) && self.compose(m, g) == self.identity(b)
                {
                    is_iso[m.idx()] = true;
                    inverse[m.idx()] = Some(g);
                    break;
                }
            }
        }

        let mut is_mono = vec![true; n];
        let mut is_epi = vec![true; n];
        let mut is_split_epi = vec![false; n];
        let mut seen: std::collections::HashSet<MorId> = std::collections::HashSet::new();
        for m in 0..n as u32 {
            let m = MorId(m);
            let (a, b) = (self.dom(m), self.cod(m));
            'mono: for c in 0..self.objects.len() as u32 {
                let c = ObjId(c);
                seen.clear();
                for &u in self.hom(c, a) {
                    if !seen.insert(self.compose(m, u)) {
                        is_mono[m.idx()] = false;
                        break 'mono;
                    }
                }
            }
            'epi: for c in 0..self.objects.len() as u32 {
                let c = ObjId(c);
                seen.clear();
                for &u in self.hom(b, c) {
                    if !seen.insert(self.compose(u, m)) {
                        is_epi[m.idx()] = false;
                        break 'epi;
                    }
                }
            }
            is_split_epi[m.idx()] = self
                .hom(b, a)
                .iter()
                .any(|&s| self.compose(m, s) == self.identity(b));
        }

        self.is_iso = is_iso;
        self.is_mono = is_mono;
        self.is_epi = is_epi;
        self.is_split_epi = is_split_epi;
        self.inverse = inverse;
    }

    /// Install explicit generator words (used by hand-built test categories
    /// and by JSON import). Identities get `[]`; if `words` lacks an entry the
    /// morphism becomes its own generator.
    pub fn set_explicit_words(&mut self, words: HashMap<MorId, Vec<MorId>>) {
        for m in 0..self.morphisms.len() as u32 {
            let m = MorId(m);
            let w = if self.is_identity(m) {
                Vec::new()
            } else {
                words.get(&m).cloned().unwrap_or_else(|| vec![m])
            };
            self.morphisms[m.idx()].word = w;
        }
        self.reclassify();
    }

    /// Derive canonical generator words by peeling: crossed decomposition
    /// first (when `crossed` is given), then split-epi/mono factorization,
    /// then codimension-1 face and degeneracy generators.
    ///
    /// `face_gens`/`degen_gens` must be base morphisms (no automorphism part);
    /// residual isomorphisms after peeling must be identities, which holds in
    /// strict base categories and is otherwise reported as an error.
    pub fn derive_words(
        &mut self,
        face_gens: &[MorId],
        degen_gens: &[MorId],
        crossed: Option<&CrossedGroupData>,
    ) -> Result<()> {
        let mut words: Vec<Option<Vec<MorId>>> = vec![None; self.morphisms.len()];
        for m in self.morphism_ids() {
            let w = self.word_for(m, face_gens, degen_gens, crossed)?;
            words[m.idx()] = Some(w);
        }
        for i in 0..self.morphisms.len() {
            self.morphisms[i].word = words[i].take().unwrap();
        }
        self.reclassify();
        Ok(())
    }

    fn word_for(
        &self,
        f: MorId,
        face_gens: &[MorId],
        degen_gens: &[MorId],
        crossed: Option<&CrossedGroupData>,
    ) -> Result<Vec<MorId>> {
        if self.is_identity(f) {
            return Ok(Vec::new());
        }
        if self.is_iso[f.idx()] {
            return Ok(vec![f]);
        }
        // Special automorphism first: f = base ∘ t.
        let (t, base) = match crossed {
            Some(c) => {
                let (t, r) = crossed_decompose(self, c, f)?;
                (t, r)
            }
            None => (self.identity(self.dom(f)), f),
        };
        let mut word = Vec::new();
        if !self.is_identity(base) {
            // base = m ∘ e with m mono, e split epi (choose deterministically).
            let (e, m) = self.split_epi_mono_factor(base).ok_or_else(|| {
                Error::Construction(format!(
                    "no split-epi/mono factorization for `{}`",
                    self.morphism(base).name
                ))
            })?;
            // Absorb an invertible mono part into the epi so peeling starts
            // from a genuine face composite.
            let (e, m) = if self.is_iso[m.idx()] && !self.is_identity(m) {
                (self.compose(m, e), self.identity(self.cod(base)))
            } else {
                (e, m)
            };
            // Peel m into codim-1 face generators (codomain side first).
            let mut cur = m;
            while !self.is_identity(cur) {
                if self.is_iso[cur.idx()] {
                    // Residual twist (no crossed data to push it out): keep
                    // it as a single generator entry.
                    word.push(cur);
                    break;
                }
                let mut step = None;
                for &g in face_gens {
                    if self.cod(g) != self.cod(cur) {
                        continue;
                    }
                    for &rest in self.hom(self.dom(cur), self.dom(g)) {
                        if !self.is_mono(rest) && !self.is_identity(rest) {
                            continue;
                        }
                        if self.compose(g, rest) == cur {
                            step = Some((g, rest));
                            break;
                        }
                    }
                    if step.is_some() {
                        break;
                    }
                }
                match step {
                    Some((g, rest)) => {
                        word.push(g);
                        cur = rest;
                    }
                    None => {
                        return Err(Error::Construction(format!(
                            "cannot peel face generators from `{}`",
                            self.morphism(cur).name
                        )))
                    }
                }
            }
            // Peel e into codim-1 degeneracy generators (domain side first).
            let mut cur = e;
            let mut degen_word = Vec::new();
            while !self.is_identity(cur) {
                if self.is_iso[cur.idx()] {
                    degen_word.push(cur);
                    break;
                }
                let mut step = None;
                for &s in degen_gens {
                    if self.dom(s) != self.dom(cur) {
                        continue;
                    }
                    for &rest in self.hom(self.cod(s), self.cod(cur)) {
                        if !self.is_epi(rest) && !self.is_identity(rest) {
                            continue;
                        }
                        if self.compose(rest, s) == cur {
                            step = Some((s, rest));
                            break;
                        }
                    }
                    if step.is_some() {
                        break;
                    }
                }
                match step {
                    Some((s, rest)) => {
                        degen_word.push(s);
                        cur = rest;
                    }
                    None => {
                        return Err(Error::Construction(format!(
                            "cannot peel degeneracy generators from `{}`",
                            self.morphism(cur).name
                        )))
                    }
                }
            }
            degen_word.reverse();
            word.extend(degen_word);
        }
        if !self.is_identity(t) {
            word.push(t);
        }
        // Sanity: the word folds back to f.
        let mut acc = self.identity(self.dom(f));
        for &g in word.iter().rev() {
            acc = self.compose(g, acc);
        }
        if acc != f {
            return Err(Error::Construction(format!(
                "generator word for `{}` does not recompose",
                self.morphism(f).name
            )));
        }
        Ok(word)
    }

    /// Deterministic split-epi/mono factorization `f = m ∘ e`, preferring the
    /// standard image factorization (lowest middle object id, then ids).
    pub fn split_epi_mono_factor(&self, f: MorId) -> Option<(MorId, MorId)> {
        let (a, c) = (self.dom(f), self.cod(f));
        for b in self.objects() {
            for &e in self.hom(a, b) {
                if !self.is_split_epi(e) {
                    continue;
                }
                for &m in self.hom(b, c) {
                    if self.is_mono(m) && self.compose(m, e) == f {
                        return Some((e, m));
                    }
                }
            }
        }
        None
    }

    fn reclassify(&mut self) {
        for i in 0..self.morphisms.len() {
            let m = MorId(i as u32);
            let class = if self.is_identity(m) {
                MorClass::Identity
            } else if self.is_iso[i] {
                MorClass::Auto
            } else {
                let word = self.morphisms[i].word.clone();
                let any_face = word
                    .iter()
                    .any(|&g| self.is_mono[g.idx()] && !self.is_iso[g.idx()]);
                let any_degen = word
                    .iter()
                    .any(|&g| self.is_epi[g.idx()] && !self.is_iso[g.idx()]);
                let any_auto = word.iter().any(|&g| self.is_iso[g.idx()]);
                match (any_face, any_degen, any_auto) {
                    (true, false, false) => MorClass::Face,
                    (false, true, false) => MorClass::Degeneracy,
                    _ => MorClass::Composite,
                }
            };
            self.morphisms[i].class = class;
        }
    }

    /// All generators: morphisms appearing in some word (plus identities'
    /// implicit empties are excluded).
    pub fn generators(&self) -> Vec<MorId> {
        let mut seen = vec![false; self.morphisms.len()];
        for m in self.morphisms.iter() {
            for &g in &m.word {
                seen[g.idx()] = true;
            }
        }
        (0..self.morphisms.len() as u32)
            .map(MorId)
            .filter(|m| seen[m.idx()])
            .collect()
    }
}
