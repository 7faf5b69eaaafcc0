//! JSON (de)serialization: categories, shapes, presheaves, maps, groupoid
//! specs. All emitted JSON re-parses to a structurally equal object.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cat::{CategoryBuilder, FiniteCategory, MorId, ObjId};
use crate::constructions::FiniteGroupoid;
use crate::error::{Error, Result};
use crate::presheaf::{LevelMap, Presheaf, PresheafMap};
use crate::shapes::{build_shape, Shape, ShapeKind};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObjectJson {
    pub id: String,
    pub degree: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismJson {
    pub id: String,
    pub dom: String,
    pub cod: String,
    pub word: Vec<String>,
    pub class: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompositionJson {
    pub g: String,
    pub f: String,
    pub gf: String,
}

/// Category JSON. `composition` is required on input: generator words alone
/// do not determine composition in a non-free category.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<ObjectJson>,
    pub morphisms: Vec<MorphismJson>,
    pub composition: Vec<CompositionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u32>,
}

/// Globally unique morphism key: `dom|cod|name`.
fn mor_key(cat: &FiniteCategory, m: MorId) -> String {
    format!(
        "{}|{}|{}",
        cat.object(cat.dom(m)).name,
        cat.object(cat.cod(m)).name,
        cat.morphism(m).name
    )
}

pub fn category_to_json(cat: &FiniteCategory, kind: Option<&str>, truncation: Option<u32>) -> CategoryJson {
    let objects = cat
        .objects()
        .map(|o| ObjectJson {
            id: cat.object(o).name.clone(),
            degree: cat.degree(o),
        })
        .collect();
    let morphisms = cat
        .morphism_ids()
        .map(|m| MorphismJson {
            id: mor_key(cat, m),
            dom: cat.object(cat.dom(m)).name.clone(),
            cod: cat.object(cat.cod(m)).name.clone(),
            word: cat.morphism(m).word.iter().map(|&g| mor_key(cat, g)).collect(),
            class: cat.morphism(m).class.as_str().to_string(),
        })
        .collect();
    // Composites with a generator on the left determine all composites by
    // folding generator words, and keep files compact.
    let mut composition = Vec::new();
    for g in cat.generators() {
        for f in cat.morphism_ids() {
            if cat.cod(f) == cat.dom(g) {
                composition.push(CompositionJson {
                    g: mor_key(cat, g),
                    f: mor_key(cat, f),
                    gf: mor_key(cat, cat.compose(g, f)),
                });
            }
        }
    }
    CategoryJson {
        objects,
        morphisms,
        composition,
        kind: kind.map(str::to_string),
        truncation,
    }
}

pub fn category_from_json(j: &CategoryJson) -> Result<FiniteCategory> {
    let mut b = CategoryBuilder::new();
    let mut obj_ids: HashMap<String, ObjId> = HashMap::new();
    for o in &j.objects {
        if obj_ids.contains_key(&o.id) {
            return Err(Error::Structural(format!("duplicate object id `{}`", o.id)));
        }
        obj_ids.insert(o.id.clone(), b.add_object(o.id.clone(), o.degree));
    }
    let mut mor_ids: HashMap<String, MorId> = HashMap::new();
    for m in &j.morphisms {
        let dom = *obj_ids
            .get(&m.dom)
            .ok_or_else(|| Error::Structural(format!("unknown object `{}`", m.dom)))?;
        let cod = *obj_ids
            .get(&m.cod)
            .ok_or_else(|| Error::Structural(format!("unknown object `{}`", m.cod)))?;
        let name = m
            .id
            .rsplit('|')
            .next()
            .unwrap_or(&m.id)
            .to_string();
        let id = b.add_morphism(dom, cod, name)?;
        if mor_ids.insert(m.id.clone(), id).is_some() {
            return Err(Error::Structural(format!("duplicate morphism id `{}`", m.id)));
        }
    }
    if j.composition.is_empty() && j.morphisms.len() > j.objects.len() {
        return Err(Error::Structural(
            "composition table required: generator words alone do not determine composition"
                .into(),
        ));
    }
    let mut comp: HashMap<(MorId, MorId), MorId> = HashMap::new();
    for c in &j.composition {
        let g = *mor_ids
            .get(&c.g)
            .ok_or_else(|| Error::Structural(format!("unknown morphism `{}`", c.g)))?;
        let f = *mor_ids
            .get(&c.f)
            .ok_or_else(|| Error::Structural(format!("unknown morphism `{}`", c.f)))?;
        let gf = *mor_ids
            .get(&c.gf)
            .ok_or_else(|| Error::Structural(format!("unknown morphism `{}`", c.gf)))?;
        comp.insert((g, f), gf);
    }
    // Words, needed to fold generator composites into full composition.
    let mut words_by_id: HashMap<MorId, Vec<MorId>> = HashMap::new();
    for m in &j.morphisms {
        let id = mor_ids[&m.id];
        let word: Option<Vec<MorId>> = m.word.iter().map(|w| mor_ids.get(w).copied()).collect();
        let word =
            word.ok_or_else(|| Error::Structural(format!("word of `{}` has unknown ids", m.id)))?;
        words_by_id.insert(id, word);
    }
    // Identities are exactly the endomorphisms with an empty generator word
    // (the builders give every other morphism at least itself as a word);
    // their neutrality is then re-verified by `check_category_axioms`.
    let mut identities: HashMap<ObjId, MorId> = HashMap::new();
    for mj in &j.morphisms {
        if !mj.word.is_empty() {
            continue;
        }
        let m = mor_ids[&mj.id];
        let (dom, cod) = b.morphism_dom_cod(m);
        if dom != cod {
            return Err(Error::Structural(format!(
                "`{}` has an empty word but is not an endomorphism",
                mj.id
            )));
        }
        if identities.insert(dom, m).is_some() {
            return Err(Error::Structural(format!(
                "two empty-word endomorphisms at `{}`",
                mj.dom
            )));
        }
    }
    for (o, m) in &identities {
        b.set_identity(*o, *m);
    }
    // Compose by folding words through the (generator, morphism) entries.
    let identities2 = identities.clone();
    let words2 = words_by_id.clone();
    let mut cat = b.build(|g, f| {
        let word = words2.get(&g)?;
        if word.is_empty() {
            // g is an identity: only valid when it is the identity of its
            // own object, recorded above.
            if identities2.values().any(|&m| m == g) {
                return Some(f);
            }
            return None;
        }
        let mut acc = f;
        for &gen in word.iter().rev() {
            acc = match comp.get(&(gen, acc)) {
                Some(&r) => r,
                None => return None,
            };
        }
        Some(acc)
    })?;
    cat.set_explicit_words(words_by_id);
    Ok(cat)
}

/// Inline shape reference carried by presheaf files.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ShapeRef {
    pub kind: String,
    pub max: u32,
}

impl ShapeRef {
    pub fn build(&self) -> Result<Shape> {
        let kind = ShapeKind::from_str(&self.kind)
            .ok_or_else(|| Error::Argument(format!("unknown shape kind `{}`", self.kind)))?;
        Ok(Arc::new(build_shape(kind, self.max)?))
    }

    pub fn of(shape: &Shape) -> ShapeRef {
        ShapeRef {
            kind: shape.kind.as_str().to_string(),
            max: shape.truncation,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresheafJson {
    pub shape: ShapeRef,
    /// Object id → element names.
    pub levels: BTreeMap<String, Vec<String>>,
    /// Morphism id → {target element → source-level element}.
    pub action: BTreeMap<String, BTreeMap<String, String>>,
    pub coskeletal_above: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u32>,
}

pub fn presheaf_to_json(p: &Presheaf) -> PresheafJson {
    let shape = p.shape();
    let cat = &shape.cat;
    let mut levels = BTreeMap::new();
    for o in cat.objects() {
        levels.insert(cat.object(o).name.clone(), p.level(o).to_vec());
    }
    let mut action = BTreeMap::new();
    for m in cat.morphism_ids() {
        let (a, b) = (cat.dom(m), cat.cod(m));
        if cat.degree(a) > p.truncation() || cat.degree(b) > p.truncation() {
            continue;
        }
        let mut table = BTreeMap::new();
        for (j, &img) in p.action_vec(m).iter().enumerate() {
            table.insert(
                p.level(b)[j].clone(),
                p.level(a)[img as usize].clone(),
            );
        }
        action.insert(mor_key(cat, m), table);
    }
    PresheafJson {
        shape: ShapeRef::of(shape),
        levels,
        action,
        coskeletal_above: p.coskeletal_above,
        truncation: Some(p.truncation()),
    }
}

pub fn presheaf_from_json(j: &PresheafJson, shape: Option<Shape>) -> Result<Presheaf> {
    let shape = match shape {
        Some(s) => {
            if ShapeRef::of(&s) != j.shape {
                return Err(Error::Structural("shape reference mismatch".into()));
            }
            s
        }
        None => j.shape.build()?,
    };
    let cat = &shape.cat;
    let truncation = j.truncation.unwrap_or(shape.max_degree());
    let mut levels: Vec<Vec<String>> = Vec::with_capacity(cat.object_count());
    let mut index: Vec<HashMap<String, u32>> = Vec::with_capacity(cat.object_count());
    for o in cat.objects() {
        let names = j
            .levels
            .get(&cat.object(o).name)
            .cloned()
            .unwrap_or_default();
        if cat.degree(o) > truncation && !names.is_empty() {
            return Err(Error::Structural(format!(
                "level {} above the declared truncation is nonempty",
                cat.object(o).name
            )));
        }
        let idx = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as u32))
            .collect();
        levels.push(names);
        index.push(idx);
    }
    let mut action: Vec<Vec<u32>> = vec![Vec::new(); cat.morphism_count()];
    for m in cat.morphism_ids() {
        let (a, b) = (cat.dom(m), cat.cod(m));
        if cat.degree(a) > truncation || cat.degree(b) > truncation {
            continue;
        }
        let key = mor_key(cat, m);
        let table = j.action.get(&key).ok_or_else(|| {
            Error::Structural(format!("action missing for morphism `{key}`"))
        })?;
        let mut v = Vec::with_capacity(levels[b.idx()].len());
        for name in &levels[b.idx()] {
            let img = table.get(name).ok_or_else(|| {
                Error::Structural(format!("action of `{key}` missing element `{name}`"))
            })?;
            let img_idx = index[a.idx()].get(img).ok_or_else(|| {
                Error::Structural(format!("action of `{key}` hits unknown element `{img}`"))
            })?;
            v.push(*img_idx);
        }
        action[m.idx()] = v;
    }
    Presheaf::from_full(shape, truncation, levels, action, j.coskeletal_above)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresheafMapJson {
    pub source: PresheafJson,
    pub target: PresheafJson,
    /// Object id → {source element → target element}.
    pub maps: BTreeMap<String, BTreeMap<String, String>>,
}

pub fn presheaf_map_to_json(f: &PresheafMap) -> PresheafMapJson {
    let cat = &f.source.shape().cat;
    let mut maps = BTreeMap::new();
    for o in cat.objects() {
        let mut table = BTreeMap::new();
        for (e, &img) in f.maps[o.idx()].iter().enumerate() {
            table.insert(
                f.source.level(o)[e].clone(),
                f.target.level(o)[img as usize].clone(),
            );
        }
        maps.insert(cat.object(o).name.clone(), table);
    }
    PresheafMapJson {
        source: presheaf_to_json(&f.source),
        target: presheaf_to_json(&f.target),
        maps,
    }
}

pub fn presheaf_map_from_json(j: &PresheafMapJson) -> Result<PresheafMap> {
    let shape = j.source.shape.build()?;
    let source = Arc::new(presheaf_from_json(&j.source, Some(shape.clone()))?);
    let target = Arc::new(presheaf_from_json(&j.target, Some(shape))?);
    let cat = &source.shape().cat;
    let mut maps: LevelMap = Vec::with_capacity(cat.object_count());
    for o in cat.objects() {
        let name = &cat.object(o).name;
        let table = j.maps.get(name).cloned().unwrap_or_default();
        let mut v = Vec::with_capacity(source.size(o));
        for el in source.level(o) {
            let img = table.get(el).ok_or_else(|| {
                Error::Structural(format!("map missing element `{el}` at {name}"))
            })?;
            let idx = target
                .level(o)
                .iter()
                .position(|x| x == img)
                .ok_or_else(|| Error::Structural(format!("unknown target element `{img}`")))?;
            v.push(idx as u32);
        }
        maps.push(v);
    }
    PresheafMap::new(source, target, maps)
}

/// Group/groupoid/monoid specs as multiplication tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlgebraJson {
    Group {
        elements: Vec<String>,
        /// table[i][j] = index of g_i · g_j; index 0 must be the unit.
        table: Vec<Vec<u32>>,
    },
    Monoid {
        elements: Vec<String>,
        table: Vec<Vec<u32>>,
    },
    Groupoid {
        objects: Vec<String>,
        arrows: Vec<GroupoidArrowJson>,
        /// table[g][f] = index of g∘f, or null when not composable.
        table: Vec<Vec<Option<u32>>>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupoidArrowJson {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

/// Build a finite category from an algebra spec; `table[i][j]` is row ∘
/// column applied as `g_i ∘ g_j` (for one-object specs index 0 is the unit).
pub fn algebra_from_json(j: &AlgebraJson) -> Result<FiniteCategory> {
    match j {
        AlgebraJson::Group { elements, table } | AlgebraJson::Monoid { elements, table } => {
            let n = elements.len();
            if table.len() != n || table.iter().any(|r| r.len() != n) {
                return Err(Error::Structural("multiplication table sized wrong".into()));
            }
            let mut b = CategoryBuilder::new();
            let o = b.add_object("*", 0);
            let ms: Vec<MorId> = elements
                .iter()
                .map(|e| b.add_morphism(o, o, e.clone()))
                .collect::<Result<_>>()?;
            b.set_identity(o, ms[0]);
            let table = table.clone();
            b.build(move |g, f| {
                let r = table[g.0 as usize][f.0 as usize];
                ms.get(r as usize).copied()
            })
        }
        AlgebraJson::Groupoid {
            objects,
            arrows,
            table,
        } => {
            let mut b = CategoryBuilder::new();
            let mut ids: HashMap<String, ObjId> = HashMap::new();
            for o in objects {
                ids.insert(o.clone(), b.add_object(o.clone(), 0));
            }
            let mut ms = Vec::new();
            for a in arrows {
                let src = *ids
                    .get(&a.src)
                    .ok_or_else(|| Error::Structural(format!("unknown object `{}`", a.src)))?;
                let tgt = *ids
                    .get(&a.tgt)
                    .ok_or_else(|| Error::Structural(format!("unknown object `{}`", a.tgt)))?;
                ms.push(b.add_morphism(src, tgt, a.name.clone())?);
            }
            // Identities: arrows neutral per the table.
            for (i, a) in arrows.iter().enumerate() {
                if a.src != a.tgt {
                    continue;
                }
                let neutral = (0..arrows.len()).all(|k| {
                    table[i][k].map_or(true, |r| r as usize == k)
                        && table[k][i].map_or(true, |r| r as usize == k)
                });
                if neutral {
                    b.set_identity(ids[&a.src], ms[i]);
                }
            }
            let table = table.clone();
            let ms2 = ms.clone();
            b.build(move |g, f| {
                table[g.0 as usize][f.0 as usize].and_then(|r| ms2.get(r as usize).copied())
            })
        }
    }
}

pub fn groupoid_from_json(j: &AlgebraJson) -> Result<FiniteGroupoid> {
    FiniteGroupoid::new(algebra_from_json(j)?)
}
