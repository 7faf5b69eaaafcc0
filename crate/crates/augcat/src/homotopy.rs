//! Horn filling and Kan checks, lifting properties, cylinders and homotopy,
//! augmented homotopy classes, and the hypergroupoid checkers.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::cat::{MorId, ObjId};
use crate::error::{Error, Result};
use crate::presheaf::{
    boundary, hom_enumerate, hom_enumerate_constrained, horn, product, pullback, representable,
    LevelMap, Presheaf, PresheafMap,
};
use crate::presheaf::cosk::{cosk_map, cosk_unit, coskeleton};
use crate::shapes::{Shape, ShapeKind};

/// One horn that could not be filled (or failed a hypergroupoid condition).
#[derive(Debug, Clone)]
pub struct HornWitness {
    pub object: String,
    pub face: String,
    /// The horn map, listed as `element-of-A[a] ↦ element-of-X` pairs.
    pub assignment: Vec<(String, String)>,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct KanReport {
    pub horns_checked: usize,
    pub failures: Vec<HornWitness>,
}

impl KanReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Representatives of the codimension-1 face classes into `a` (one face per
/// iso-orbit f ∘ θ).
pub fn face_class_reps(shape: &Shape, a: ObjId) -> Vec<MorId> {
    let cat = &shape.cat;
    let faces = cat.codim1_faces_into(a);
    let mut reps: Vec<MorId> = Vec::new();
    for f in faces {
        if !reps.iter().any(|&r| cat.same_face_class(r, f)) {
            reps.push(f);
        }
    }
    reps
}

/// The horn subobject as a standalone presheaf plus, for each level, the
/// morphisms of the representable it selects (for restriction maps).
struct HornData {
    presheaf: Presheaf,
    /// Per object of the shape: the selected morphisms u: b → a.
    selected: Vec<Vec<MorId>>,
}

fn horn_data(shape: &Shape, a: ObjId, f: MorId) -> Result<HornData> {
    let cat = &shape.cat;
    let sub = horn(shape, a, f)?;
    let (presheaf, _) = sub.to_presheaf();
    let selected = cat
        .objects()
        .map(|b| {
            cat.hom(b, a)
                .iter()
                .enumerate()
                .filter(|(j, _)| sub.selected[b.idx()][*j])
                .map(|(_, &u)| u)
                .collect()
        })
        .collect();
    Ok(HornData { presheaf, selected })
}

/// Restriction of an element of X_a to a horn: the horn-map it induces.
fn restrict_to_horn(x: &Presheaf, data: &HornData, elem: u32) -> LevelMap {
    data.selected
        .iter()
        .map(|ms| ms.iter().map(|&u| x.act(u, elem)).collect())
        .collect()
}

/// Fillers of a horn map: elements whose restriction equals it.
fn horn_fillers(x: &Presheaf, a: ObjId, data: &HornData, h: &LevelMap) -> Vec<u32> {
    (0..x.size(a) as u32)
        .filter(|&e| &restrict_to_horn(x, data, e) == h)
        .collect()
}

fn describe_horn_map(shape: &Shape, x: &Presheaf, a: ObjId, data: &HornData, h: &LevelMap) -> Vec<(String, String)> {
    let cat = &shape.cat;
    let _ = a;
    let mut out = Vec::new();
    for (oi, ms) in data.selected.iter().enumerate() {
        for (j, &u) in ms.iter().enumerate() {
            out.push((
                cat.morphism(u).name.clone(),
                x.level(ObjId(oi as u32))[h[oi][j] as usize].clone(),
            ));
        }
    }
    out
}

/// A-Kan check: every horn map at degree ≤ cap extends along the horn
/// inclusion. Reports the unfilled horns.
pub fn is_kan(x: &Presheaf, deg_cap: u32, max_states: u64) -> Result<KanReport> {
    let x = x.at_full()?;
    let shape = x.shape().clone();
    let cat = &shape.cat;
    let mut report = KanReport::default();
    for a in cat.objects() {
        if cat.degree(a) > deg_cap {
            continue;
        }
        for f in face_class_reps(&shape, a) {
            let data = horn_data(&shape, a, f)?;
            let maps = hom_enumerate(&data.presheaf, x, max_states)?;
            report.horns_checked += maps.len();
            for m in maps {
                // Translate: map on the reified horn ↦ values on selected
                // morphisms (orders agree: to_presheaf preserves order).
                let h: LevelMap = m;
                if horn_fillers(x, a, &data, &h).is_empty() {
                    report.failures.push(HornWitness {
                        object: cat.object(a).name.clone(),
                        face: cat.morphism(f).name.clone(),
                        assignment: describe_horn_map(&shape, x, a, &data, &h),
                        detail: "no filler".into(),
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Right lifting property of p against i: every commuting square admits a
/// diagonal.
pub fn has_rlp(p: &PresheafMap, i: &PresheafMap, max_states: u64) -> Result<bool> {
    let tops = hom_enumerate(&i.source, &p.source, max_states)?;
    let bottoms = hom_enumerate(&i.target, &p.target, max_states)?;
    let cat = &p.source.shape().cat;
    for top in &tops {
        // p ∘ top determines the candidate bottoms v with v∘i = p∘top.
        let pt: LevelMap = cat
            .objects()
            .map(|o| {
                top[o.idx()]
                    .iter()
                    .map(|&e| p.maps[o.idx()][e as usize])
                    .collect()
            })
            .collect();
        // Diagonals constrained by d∘i = top.
        let mut partial: Vec<Vec<Option<u32>>> = i
            .target
            .levels
            .iter()
            .map(|l| vec![None; l.len()])
            .collect();
        let mut consistent = true;
        for o in cat.objects() {
            for (e, &img) in i.maps[o.idx()].iter().enumerate() {
                let want = top[o.idx()][e];
                match partial[o.idx()][img as usize] {
                    Some(w) if w != want => {
                        consistent = false;
                    }
                    _ => partial[o.idx()][img as usize] = Some(want),
                }
            }
        }
        let diagonals = if consistent {
            hom_enumerate_constrained(&i.target, &p.source, Some(&partial), max_states)?
        } else {
            Vec::new()
        };
        for bottom in &bottoms {
            // Square commutes iff bottom∘i = p∘top.
            let commutes = cat.objects().all(|o| {
                i.maps[o.idx()]
                    .iter()
                    .enumerate()
                    .all(|(e, &img)| bottom[o.idx()][img as usize] == pt[o.idx()][e])
            });
            if !commutes {
                continue;
            }
            let found = diagonals.iter().any(|d| {
                cat.objects().all(|o| {
                    d[o.idx()]
                        .iter()
                        .enumerate()
                        .all(|(b, &xval)| p.maps[o.idx()][xval as usize] == bottom[o.idx()][b])
                })
            });
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Cylinder X □ A[1] with end inclusions and the collapse projection.
pub struct Cylinder {
    pub cyl: Arc<Presheaf>,
    pub i0: PresheafMap,
    pub i1: PresheafMap,
    pub collapse: PresheafMap,
}

/// End sections X → A[i(0)]; over the simplex shape this is the unique map
/// to the terminal object.
fn end_sections(x: &Presheaf, max_states: u64) -> Result<Vec<LevelMap>> {
    let shape = x.shape();
    let a0 = representable(shape, shape.simplex_object(0)?);
    hom_enumerate(x, &a0, max_states)
}

/// The two vertex operators i[0] → i[1] of the shape (images of the simplex
/// faces δ_1, δ_0: vertex 0 and vertex 1).
fn vertex_maps(shape: &Shape) -> Result<(MorId, MorId)> {
    let dcat = &shape.delta.delta;
    let d0 = dcat.find_object("[0]").unwrap();
    let d1 = dcat.find_object("[1]").unwrap();
    let v0 = dcat
        .find_morphism(d0, d1, "(0)")
        .ok_or_else(|| Error::Range("simplex truncation below degree 1".into()))?;
    let v1 = dcat
        .find_morphism(d0, d1, "(1)")
        .ok_or_else(|| Error::Range("simplex truncation below degree 1".into()))?;
    Ok((shape.delta.functor.mor(v0), shape.delta.functor.mor(v1)))
}

pub fn cylinder(x: &Presheaf, max_states: u64) -> Result<Cylinder> {
    let shape = x.shape().clone();
    if !matches!(shape.kind, ShapeKind::Simplex | ShapeKind::Cyclic) {
        return Err(Error::Argument(
            "cylinder requires □ = product with i_!Δ[1]; tree shapes carry a different tensor"
                .into(),
        ));
    }
    let sections = end_sections(x, max_states)?;
    let section = sections.into_iter().next().ok_or_else(|| {
        Error::Argument("no end section X → A[i(0)]; cylinder ends do not exist".into())
    })?;
    build_cylinder(x, &section, &section, max_states).map(|(c, _)| c)
}

/// Builds the cylinder with chosen end sections; returns it with the interval
/// presheaf for reuse.
fn build_cylinder(
    x: &Presheaf,
    s0: &LevelMap,
    s1: &LevelMap,
    _max_states: u64,
) -> Result<(Cylinder, Arc<Presheaf>)> {
    let shape = x.shape().clone();
    let cat = &shape.cat;
    let a1 = Arc::new(representable(&shape, shape.simplex_object(1)?));
    let a0 = representable(&shape, shape.simplex_object(0)?);
    let (v0, v1) = vertex_maps(&shape)?;
    // A[v]: A[i0] → A[i1] by postcomposition.
    let post = |v: MorId, s: &LevelMap| -> LevelMap {
        cat.objects()
            .map(|b| {
                let h0 = cat.hom(b, shape.simplex_object(0).unwrap());
                let h1 = cat.hom(b, shape.simplex_object(1).unwrap());
                let pos: HashMap<MorId, u32> = h1
                    .iter()
                    .enumerate()
                    .map(|(i, &m)| (m, i as u32))
                    .collect();
                s[b.idx()]
                    .iter()
                    .map(|&e| pos[&cat.compose(v, h0[e as usize])])
                    .collect()
            })
            .collect()
    };
    let q0 = post(v0, s0);
    let q1 = post(v1, s1);
    let _ = a0;
    let (cyl, px, pa) = product(x, &a1)?;
    let cyl = Arc::new(cyl);
    let n_a1 = |o: ObjId| a1.size(o) as u32;
    let xarc = Arc::new(x.clone());
    let mk_end = |q: &LevelMap| -> LevelMap {
        cat.objects()
            .map(|o| {
                (0..x.size(o) as u32)
                    .map(|e| e * n_a1(o) + q[o.idx()][e as usize])
                    .collect()
            })
            .collect()
    };
    let i0 = PresheafMap::new(xarc.clone(), cyl.clone(), mk_end(&q0))?;
    let i1 = PresheafMap::new(xarc.clone(), cyl.clone(), mk_end(&q1))?;
    let collapse = PresheafMap::new(
        cyl.clone(),
        xarc,
        cat.objects()
            .map(|o| {
                (0..cyl.size(o))
                    .map(|i| px[o.idx()][i])
                    .collect()
            })
            .collect(),
    )?;
    let _ = pa;
    Ok((
        Cylinder {
            cyl,
            i0,
            i1,
            collapse,
        },
        a1,
    ))
}

/// Homotopy search: H: X □ A[1] → Y with H∘i0 = f and H∘i1 = g, optionally
/// constant on a rel subobject (levelwise flags on X). Searches over all end
/// sections.
pub fn homotopic(
    f: &PresheafMap,
    g: &PresheafMap,
    rel: Option<&Vec<Vec<bool>>>,
    max_states: u64,
) -> Result<bool> {
    if !f.source.levelwise_equal(&g.source) || !f.target.levelwise_equal(&g.target) {
        return Err(Error::Argument("homotopy needs parallel maps".into()));
    }
    let x = &*f.source;
    let shape = x.shape().clone();
    if !matches!(shape.kind, ShapeKind::Simplex | ShapeKind::Cyclic) {
        return Err(Error::Argument(
            "homotopy requires □ = product with i_!Δ[1]; tree shapes carry a different tensor"
                .into(),
        ));
    }
    let cat = &shape.cat;
    let sections = end_sections(x, max_states)?;
    if sections.is_empty() {
        return Err(Error::Argument(
            "no end section X → A[i(0)]; homotopy undefined".into(),
        ));
    }
    for s0 in &sections {
        for s1 in &sections {
            let (c, _a1) = build_cylinder(x, s0, s1, max_states)?;
            // Partial assignment on the cylinder from the two ends and rel.
            let mut partial: Vec<Vec<Option<u32>>> =
                c.cyl.levels.iter().map(|l| vec![None; l.len()]).collect();
            let mut consistent = true;
            for o in cat.objects() {
                for e in 0..x.size(o) {
                    let p0 = c.i0.maps[o.idx()][e] as usize;
                    let p1 = c.i1.maps[o.idx()][e] as usize;
                    for (pos, want) in [(p0, f.maps[o.idx()][e]), (p1, g.maps[o.idx()][e])] {
                        match partial[o.idx()][pos] {
                            Some(w) if w != want => consistent = false,
                            _ => partial[o.idx()][pos] = Some(want),
                        }
                    }
                }
                if let Some(rel) = rel {
                    // Constant on rel: every cylinder element over a rel
                    // element maps like f.
                    for i in 0..c.cyl.size(o) {
                        let xe = c.collapse.maps[o.idx()][i] as usize;
                        if rel[o.idx()][xe] {
                            let want = f.maps[o.idx()][xe];
                            match partial[o.idx()][i] {
                                Some(w) if w != want => consistent = false,
                                _ => partial[o.idx()][i] = Some(want),
                            }
                        }
                    }
                }
            }
            if !consistent {
                continue;
            }
            let hs = hom_enumerate_constrained(&c.cyl, &f.target, Some(&partial), max_states)?;
            if !hs.is_empty() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// π_a(X, x₀): classes of maps A[a] → X whose boundary factors through the
/// basepoint, modulo rel-boundary homotopy (transitive closure).
#[derive(Debug, Clone)]
pub struct HomotopyClassSet {
    pub object: String,
    pub basepoint: String,
    /// Representatives as elements of X_a.
    pub representatives: Vec<String>,
    /// Partition of the representatives by homotopy class (indices).
    pub classes: Vec<Vec<usize>>,
    /// Whether transitive closure merged pairs the raw search missed.
    pub closure_added: bool,
}

pub fn pi_a(x: &Presheaf, basepoint: u32, a: ObjId, max_states: u64) -> Result<HomotopyClassSet> {
    let x = x.at_full()?;
    let shape = x.shape().clone();
    let cat = &shape.cat;
    let obj0 = shape.simplex_object(0)?;
    if basepoint as usize >= x.size(obj0) {
        return Err(Error::Argument("basepoint out of range".into()));
    }
    // The paper defines π only for fibrant X: refuse with a witness.
    let cap = (cat.degree(a) + 1).min(shape.max_degree());
    let kan = is_kan(x, cap, max_states)?;
    if !kan.ok() {
        let w = &kan.failures[0];
        return Err(Error::Precondition(format!(
            "X is not Kan up to degree {cap}: horn ({}, {}) unfilled",
            w.object, w.face
        )));
    }

    // Boundary-trivial elements: the ∂-restriction factors through some map
    // ∂A[a] → A[0] followed by the basepoint.
    let bsub = boundary(&shape, a);
    let (bnd, _) = bsub.to_presheaf();
    let a0 = representable(&shape, obj0);
    let cs = hom_enumerate(&bnd, &a0, max_states)?;
    let selected: Vec<Vec<MorId>> = cat
        .objects()
        .map(|b| {
            cat.hom(b, a)
                .iter()
                .enumerate()
                .filter(|(j, _)| bsub.selected[b.idx()][*j])
                .map(|(_, &u)| u)
                .collect()
        })
        .collect();
    let mut reps: Vec<u32> = Vec::new();
    'elem: for e in 0..x.size(a) as u32 {
        for c in &cs {
            let matches = cat.objects().all(|b| {
                selected[b.idx()].iter().enumerate().all(|(j, &u)| {
                    let w = c[b.idx()][j]; // element of A[0]_b = Hom(b, i0)
                    let wm = cat.hom(b, obj0)[w as usize];
                    x.act(u, e) == x.act(wm, basepoint)
                })
            });
            if matches {
                reps.push(e);
                continue 'elem;
            }
        }
    }

    // Rel-boundary homotopy between the classified maps.
    let rep = Arc::new(representable(&shape, a));
    let xarc = Arc::new(x.clone());
    let rel: Vec<Vec<bool>> = bsub.selected.clone();
    let maps: Vec<PresheafMap> = reps
        .iter()
        .map(|&e| {
            PresheafMap::new(
                rep.clone(),
                xarc.clone(),
                crate::presheaf::homs::yoneda_map(x, a, e),
            )
        })
        .collect::<Result<_>>()?;
    let n = reps.len();
    let mut raw = vec![vec![false; n]; n];
    for i in 0..n {
        raw[i][i] = true;
        for j in (i + 1)..n {
            let h = homotopic(&maps[i], &maps[j], Some(&rel), max_states)?;
            raw[i][j] = h;
            raw[j][i] = h;
        }
    }
    // Transitive closure; note when it adds pairs.
    let mut closed = raw.clone();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if closed[i][j] {
                    continue;
                }
                if (0..n).any(|k| closed[i][k] && closed[k][j]) {
                    closed[i][j] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let closure_added = (0..n).any(|i| (0..n).any(|j| closed[i][j] != raw[i][j]));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut done = vec![false; n];
    for i in 0..n {
        if done[i] {
            continue;
        }
        let cls: Vec<usize> = (0..n).filter(|&j| closed[i][j]).collect();
        for &j in &cls {
            done[j] = true;
        }
        classes.push(cls);
    }
    Ok(HomotopyClassSet {
        object: cat.object(a).name.clone(),
        basepoint: x.level(obj0)[basepoint as usize].clone(),
        representatives: reps
            .iter()
            .map(|&e| x.level(a)[e as usize].clone())
            .collect(),
        classes,
        closure_added,
    })
}

/// Pluggable surjectivity notion for hypergroupoid checks; the default is
/// plain set-theoretic surjectivity.
pub trait CoverPredicate {
    /// `fibers[t]` lists the elements of X_a over target element t.
    fn is_cover(&self, fibers: &[Vec<u32>]) -> bool;
}

pub struct SetSurjective;

impl CoverPredicate for SetSurjective {
    fn is_cover(&self, fibers: &[Vec<u32>]) -> bool {
        fibers.iter().all(|f| !f.is_empty())
    }
}

#[derive(Debug, Clone, Default)]
pub struct HypergroupoidReport {
    pub checked: usize,
    pub failures: Vec<HornWitness>,
}

impl HypergroupoidReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// (A, n)-hypergroupoid check: X_a → Hom(Λ^f A[a], X) is a cover for every
/// object a with d(a) ≤ cap and face class f, and bijective for d(a) > n.
pub fn is_hypergroupoid(
    x: &Presheaf,
    n: u32,
    deg_cap: u32,
    pred: &dyn CoverPredicate,
    max_states: u64,
) -> Result<HypergroupoidReport> {
    let x = x.at_full()?;
    let shape = x.shape().clone();
    let cat = &shape.cat;
    let mut report = HypergroupoidReport::default();
    for a in cat.objects() {
        if cat.degree(a) > deg_cap {
            continue;
        }
        for f in face_class_reps(&shape, a) {
            let data = horn_data(&shape, a, f)?;
            let maps = hom_enumerate(&data.presheaf, x, max_states)?;
            report.checked += 1;
            let index: HashMap<&LevelMap, usize> =
                maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut fibers: Vec<Vec<u32>> = vec![Vec::new(); maps.len()];
            for e in 0..x.size(a) as u32 {
                let r = restrict_to_horn(x, &data, e);
                if let Some(&i) = index.get(&r) {
                    fibers[i].push(e);
                }
            }
            if !pred.is_cover(&fibers) {
                let i = fibers.iter().position(Vec::is_empty).unwrap();
                report.failures.push(HornWitness {
                    object: cat.object(a).name.clone(),
                    face: cat.morphism(f).name.clone(),
                    assignment: describe_horn_map(&shape, x, a, &data, &maps[i]),
                    detail: "evaluation not surjective".into(),
                });
            }
            if cat.degree(a) > n {
                if let Some(i) = fibers.iter().position(|fb| fb.len() > 1) {
                    report.failures.push(HornWitness {
                        object: cat.object(a).name.clone(),
                        face: cat.morphism(f).name.clone(),
                        assignment: describe_horn_map(&shape, x, a, &data, &maps[i]),
                        detail: format!(
                            "evaluation not injective above degree {n} ({} fillers)",
                            fibers[i].len()
                        ),
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Trivial relative hypergroupoid check for f: X → Y: the boundary-matching
/// maps X_a → Hom(∂A[a], X) ×_{Hom(∂A[a], Y)} Y_a are surjective for all
/// a ≤ cap and bijective for d(a) ≥ n.
pub fn is_trivial_relative_hypergroupoid(
    f: &PresheafMap,
    n: u32,
    deg_cap: u32,
    max_states: u64,
) -> Result<HypergroupoidReport> {
    let x = &f.source;
    let y = &f.target;
    let shape = x.shape().clone();
    let cat = &shape.cat;
    let mut report = HypergroupoidReport::default();
    for a in cat.objects() {
        if cat.degree(a) > deg_cap {
            continue;
        }
        let bsub = boundary(&shape, a);
        let (bnd, _) = bsub.to_presheaf();
        let selected: Vec<Vec<MorId>> = cat
            .objects()
            .map(|b| {
                cat.hom(b, a)
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| bsub.selected[b.idx()][*j])
                    .map(|(_, &u)| u)
                    .collect::<Vec<_>>()
            })
            .collect();
        let restrict = |p: &Presheaf, e: u32| -> LevelMap {
            selected
                .iter()
                .map(|ms| ms.iter().map(|&u| p.act(u, e)).collect())
                .collect()
        };
        let spheres_x = hom_enumerate(&bnd, x, max_states)?;
        // Fiber-product target: pairs (sphere over X, y) matching over Y.
        let mut target: Vec<(LevelMap, u32)> = Vec::new();
        for s in &spheres_x {
            // push the sphere into Y along f.
            let fs: LevelMap = s
                .iter()
                .enumerate()
                .map(|(oi, v)| v.iter().map(|&e| f.maps[oi][e as usize]).collect())
                .collect();
            for ye in 0..y.size(a) as u32 {
                if restrict(y, ye) == fs {
                    target.push((s.clone(), ye));
                }
            }
        }
        report.checked += 1;
        let index: HashMap<(LevelMap, u32), usize> = target
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut fibers: Vec<Vec<u32>> = vec![Vec::new(); target.len()];
        for e in 0..x.size(a) as u32 {
            let key = (restrict(x, e), f.maps[a.idx()][e as usize]);
            if let Some(&i) = index.get(&key) {
                fibers[i].push(e);
            }
        }
        if let Some(i) = fibers.iter().position(Vec::is_empty) {
            report.failures.push(HornWitness {
                object: cat.object(a).name.clone(),
                face: "∂".into(),
                assignment: vec![(
                    "target".into(),
                    format!("sphere #{i} with y = {}", y.level(a)[target[i].1 as usize]),
                )],
                detail: "boundary matching not surjective".into(),
            });
        }
        if cat.degree(a) >= n {
            if let Some(i) = fibers.iter().position(|fb| fb.len() > 1) {
                report.failures.push(HornWitness {
                    object: cat.object(a).name.clone(),
                    face: "∂".into(),
                    assignment: vec![(
                        "elements".into(),
                        fibers[i]
                            .iter()
                            .map(|&e| x.level(a)[e as usize].clone())
                            .collect::<Vec<_>>()
                            .join(", "),
                    )],
                    detail: format!("boundary matching not injective at degree ≥ {n}"),
                });
            }
        }
    }
    Ok(report)
}

/// Verifies X = Y ×_{cosk_{n-1}Y} cosk_{n-1}X for a trivial relative
/// n-hypergroupoid (the precondition is re-checked and failure refuses).
pub fn check_cosk_identity(f: &PresheafMap, n: u32, max_states: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::Argument("cosk identity needs n ≥ 1".into()));
    }
    let pre = is_trivial_relative_hypergroupoid(f, n, f.source.shape().max_degree(), max_states)?;
    if !pre.ok() {
        return Err(Error::Precondition(format!(
            "not a trivial relative {n}-hypergroupoid: {}",
            pre.failures[0].detail
        )));
    }
    let cx = Arc::new(coskeleton(&f.source, n - 1)?);
    let cy = Arc::new(coskeleton(&f.target, n - 1)?);
    let cf = cosk_map(f, &cx, &cy)?;
    let uy = cosk_unit(&f.target, &cy)?;
    let (p, proj_y, proj_cx) = pullback(&uy, &cf)?;
    // Canonical comparison X → Y ×_{coskY} coskX: x ↦ (f(x), unit(x)).
    let ux = cosk_unit(&f.source, &cx)?;
    let cat = &f.source.shape().cat;
    for o in cat.objects() {
        let mut seen = HashSet::new();
        for e in 0..f.source.size(o) {
            let fy = f.maps[o.idx()][e];
            let uxe = ux.maps[o.idx()][e];
            let slot = (0..p.size(o)).find(|&i| {
                proj_y[o.idx()][i] == fy && proj_cx[o.idx()][i] == uxe
            });
            match slot {
                None => return Ok(false),
                Some(s) => {
                    if !seen.insert(s) {
                        return Ok(false); // not injective
                    }
                }
            }
        }
        if seen.len() != p.size(o) {
            return Ok(false); // not surjective
        }
    }
    Ok(true)
}
