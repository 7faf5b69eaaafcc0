//! Skeleta-adjoint machinery: the n-coskeleton via the unique-filler /
//! matching-object formula, and the three equivalent coskeletality tests.
//!
//! Levels of degree > n are built inductively by ascending degree: an element
//! at object `a` is a boundary sphere, i.e. an assignment of an element
//! `x_v ∈ Y_{dom v}` to every non-invertible mono `v` into `a` such that for
//! every morphism `w` into `dom v` the value of `v∘w` (read off through its
//! epi/mono factorization) equals `Y(w)(x_v)`. Actions on sphere levels are
//! evaluated recursively through factorizations.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::Presheaf;
use crate::cat::{FiniteCategory, MorId, ObjId};
use crate::error::{Error, Result};

/// Per-object list of non-invertible monos (the index set of spheres).
fn monos_into(cat: &FiniteCategory, a: ObjId) -> Vec<MorId> {
    let mut ms = cat.faces_into(a);
    ms.sort_by_key(|&m| (cat.degree(cat.dom(m)), m));
    ms
}

/// Canonical split-epi/mono factorization per morphism, cached per call site.
struct Factors {
    epi: Vec<MorId>,
    mono: Vec<MorId>,
}

fn factorize_all(cat: &FiniteCategory) -> Result<Factors> {
    let mut epi = Vec::with_capacity(cat.morphism_count());
    let mut mono = Vec::with_capacity(cat.morphism_count());
    for m in cat.morphism_ids() {
        let (e, mm) = cat.split_epi_mono_factor(m).ok_or_else(|| {
            Error::Structural(format!(
                "no split-epi/mono factorization for `{}`",
                cat.morphism(m).name
            ))
        })?;
        epi.push(e);
        mono.push(mm);
    }
    Ok(Factors { epi, mono })
}

/// Working state for the inductive construction.
struct Builder<'a> {
    x: &'a Presheaf,
    n: u32,
    cat: &'a FiniteCategory,
    factors: Factors,
    monos: Vec<Vec<MorId>>,
    mono_pos: Vec<HashMap<MorId, usize>>,
    /// Levels: for degree ≤ n these mirror X; above they are spheres.
    level_sizes: Vec<usize>,
    /// Sphere data per object (empty for base levels).
    spheres: Vec<Vec<Vec<u32>>>,
    sphere_index: Vec<HashMap<Vec<u32>, u32>>,
    /// Actions built so far (keyed by morphism).
    action: Vec<Option<Vec<u32>>>,
    eval_memo: HashMap<(MorId, u32), u32>,
}

impl<'a> Builder<'a> {
    fn base(&self, o: ObjId) -> bool {
        self.cat.degree(o) <= self.n
    }

    /// Evaluate Y(u)(elem) where elem indexes the level of cod(u).
    fn eval(&mut self, u: MorId, elem: u32) -> u32 {
        if let Some(&v) = self.eval_memo.get(&(u, elem)) {
            return v;
        }
        let v = self.eval_inner(u, elem);
        self.eval_memo.insert((u, elem), v);
        v
    }

    fn eval_inner(&mut self, u: MorId, elem: u32) -> u32 {
        let (c, a) = (self.cat.dom(u), self.cat.cod(u));
        if self.base(a) && self.base(c) {
            return self.x.act(u, elem);
        }
        if !self.base(a) {
            // elem is a sphere at a.
            let m = self.factors.mono[u.idx()];
            let e = self.factors.epi[u.idx()];
            if !self.cat.is_iso(m) {
                // Strict progress: dom(m) has lower degree than a.
                let pos = self.mono_pos[a.idx()][&m];
                let val = self.spheres[a.idx()][elem as usize][pos];
                if self.cat.is_identity(e) {
                    return val;
                }
                return self.eval(e, val);
            }
            // u = θ ∘ e with θ iso: translate the sphere along θ, then apply
            // the epi part by building the target sphere directly (recursing
            // on eval(e, ·) would not shrink the degree measure).
            let translated = self.translate_sphere(m, elem);
            if self.cat.is_identity(e) {
                return translated;
            }
            let t = self.make_sphere_along(e, translated);
            return self.sphere_id(c, t);
        }
        // Base source, sphere target level: build the target sphere.
        let t = self.make_sphere_along(u, elem);
        self.sphere_id(c, t)
    }

    /// Sphere at dom(θ) obtained from a sphere at cod(θ) along an iso θ.
    fn translate_sphere(&mut self, theta: MorId, elem: u32) -> u32 {
        let (b, a) = (self.cat.dom(theta), self.cat.cod(theta));
        let data = self.spheres[a.idx()][elem as usize].clone();
        let ms = self.monos[b.idx()].clone();
        let mut out = Vec::with_capacity(ms.len());
        for &v in &ms {
            let tv = self.cat.compose(theta, v);
            let pos = self.mono_pos[a.idx()][&tv];
            out.push(data[pos]);
        }
        self.sphere_id(b, out)
    }

    /// Sphere at dom(u) (a non-base level) with values eval(u∘v, elem).
    fn make_sphere_along(&mut self, u: MorId, elem: u32) -> Vec<u32> {
        let c = self.cat.dom(u);
        let ms = self.monos[c.idx()].clone();
        let mut out = Vec::with_capacity(ms.len());
        for &v in &ms {
            let uv = self.cat.compose(u, v);
            out.push(self.eval(uv, elem));
        }
        out
    }

    fn sphere_id(&mut self, o: ObjId, data: Vec<u32>) -> u32 {
        match self.sphere_index[o.idx()].get(&data) {
            Some(&i) => i,
            None => panic!(
                "coskeleton: action produced a sphere outside the computed level at {}",
                self.cat.object(o).name
            ),
        }
    }
}

/// The n-coskeleton of a presheaf (evaluated from its stored levels ≤ n).
pub fn coskeleton(x: &Presheaf, n: u32) -> Result<Presheaf> {
    if n > x.truncation {
        return Err(Error::Argument(format!(
            "coskeleton level {n} above stored truncation {}",
            x.truncation
        )));
    }
    let shape = x.shape.clone();
    let cat = &shape.cat;
    let factors = factorize_all(cat)?;
    let monos: Vec<Vec<MorId>> = cat.objects().map(|a| monos_into(cat, a)).collect();
    let mono_pos: Vec<HashMap<MorId, usize>> = monos
        .iter()
        .map(|ms| ms.iter().enumerate().map(|(i, &m)| (m, i as usize)).collect())
        .collect();
    let mut b = Builder {
        x,
        n,
        cat,
        factors,
        monos,
        mono_pos,
        level_sizes: cat.objects().map(|o| {
            if cat.degree(o) <= n {
                x.size(o)
            } else {
                0
            }
        }).collect(),
        spheres: vec![Vec::new(); cat.object_count()],
        sphere_index: vec![HashMap::new(); cat.object_count()],
        action: vec![None; cat.morphism_count()],
        eval_memo: HashMap::new(),
    };

    // Base actions among levels ≤ n.
    for m in cat.morphism_ids() {
        let (a2, b2) = (cat.dom(m), cat.cod(m));
        if b.base(a2) && b.base(b2) {
            b.action[m.idx()] = Some(x.action[m.idx()].clone());
        }
    }

    let cap = shape.max_degree();
    let mut degrees: Vec<u32> = ((n + 1)..=cap).collect();
    degrees.sort_unstable();
    for d in degrees {
        // 1. Enumerate spheres for every object of degree d.
        for a in cat.objects() {
            if cat.degree(a) != d {
                continue;
            }
            let spheres = enumerate_spheres(&mut b, a)?;
            b.sphere_index[a.idx()] = spheres
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i as u32))
                .collect();
            b.level_sizes[a.idx()] = spheres.len();
            b.spheres[a.idx()] = spheres;
        }
        // 2. Fill actions for all morphisms whose endpoints are now built.
        for m in cat.morphism_ids() {
            if b.action[m.idx()].is_some() {
                continue;
            }
            let (a2, b2) = (cat.dom(m), cat.cod(m));
            if cat.degree(a2) > d || cat.degree(b2) > d {
                continue;
            }
            let size = b.level_sizes[b2.idx()];
            let mut v = Vec::with_capacity(size);
            for e in 0..size as u32 {
                v.push(b.eval(m, e));
            }
            b.action[m.idx()] = Some(v);
        }
    }

    let levels: Vec<Vec<String>> = cat
        .objects()
        .map(|o| {
            if b.base(o) {
                x.levels[o.idx()].clone()
            } else {
                (0..b.level_sizes[o.idx()])
                    .map(|i| format!("s{i}"))
                    .collect()
            }
        })
        .collect();
    let action: Vec<Vec<u32>> = b
        .action
        .iter()
        .map(|v| v.clone().unwrap_or_default())
        .collect();
    let p = Presheaf {
        shape,
        truncation: cap,
        coskeletal_above: Some(n),
        levels,
        action,
        extended: OnceLock::new(),
    };
    p.validate()?;
    Ok(p)
}

/// Enumerate the boundary spheres at `a`: assignments over the non-invertible
/// monos into `a`, constrained by compatibility under every morphism between
/// built levels.
fn enumerate_spheres(b: &mut Builder, a: ObjId) -> Result<Vec<Vec<u32>>> {
    let cat = b.cat;
    let ms = b.monos[a.idx()].clone();
    let k = ms.len();
    // Constraints: for slots (i over monos v), morphisms w: c → dom(v) with
    // d(c) < d(a): value(v∘w) = Y(w)(x_v), evaluated once both sides'
    // referenced slots are assigned. Each constraint is triggered at the
    // later of slot i and the slot of mono(v∘w).
    struct Constraint {
        v_slot: usize,
        w: MorId,
        mono_slot: usize,
        epi: MorId,
    }
    let mut by_trigger: Vec<Vec<Constraint>> = (0..k).map(|_| Vec::new()).collect();
    for (i, &v) in ms.iter().enumerate() {
        let dv = cat.dom(v);
        for c in cat.objects() {
            if cat.degree(c) >= cat.degree(a) {
                continue;
            }
            for &w in cat.hom(c, dv) {
                let u = cat.compose(v, w);
                let m_u = b.factors.mono[u.idx()];
                let e_u = b.factors.epi[u.idx()];
                debug_assert!(!cat.is_iso(m_u));
                let j = b.mono_pos[a.idx()][&m_u];
                by_trigger[i.max(j)].push(Constraint {
                    v_slot: i,
                    w,
                    mono_slot: j,
                    epi: e_u,
                });
            }
        }
    }

    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut cur: Vec<u32> = vec![0; k];
    fn rec(
        b: &mut Builder,
        ms: &[MorId],
        by_trigger: &[Vec<Constraint>],
        slot: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if slot == ms.len() {
            out.push(cur.clone());
            return;
        }
        let dv = b.cat.dom(ms[slot]);
        let size = b.level_sizes[dv.idx()];
        'cand: for cand in 0..size as u32 {
            cur[slot] = cand;
            for c in &by_trigger[slot] {
                // Y(w)(x_v) must equal Y(e_u)(x_{m_u}).
                let lhs = b.eval(c.w, cur[c.v_slot]);
                let rhs = if b.cat.is_identity(c.epi) {
                    cur[c.mono_slot]
                } else {
                    b.eval(c.epi, cur[c.mono_slot])
                };
                if lhs != rhs {
                    continue 'cand;
                }
            }
            rec(b, ms, by_trigger, slot + 1, cur, out);
        }
    }
    if k == 0 {
        // No boundary: exactly one (empty) sphere.
        return Ok(vec![Vec::new()]);
    }
    rec(b, &ms, &by_trigger, 0, &mut cur, &mut out);
    Ok(out)
}

/// The unit X → cosk_n(X): identity on levels ≤ n; above, an element maps to
/// the unique coskeleton element with the same boundary restrictions.
pub fn cosk_unit(x: &Presheaf, cx: &std::sync::Arc<Presheaf>) -> Result<crate::presheaf::PresheafMap> {
    let cat = &x.shape.cat;
    let n = cx
        .coskeletal_above
        .ok_or_else(|| Error::Structural("cosk_unit target is not a coskeleton".into()))?;
    let mut maps: Vec<Vec<u32>> = Vec::with_capacity(cat.object_count());
    let mut objs: Vec<ObjId> = cat.objects().collect();
    objs.sort_by_key(|&o| (cat.degree(o), o));
    let mut level_maps: Vec<Vec<u32>> = vec![Vec::new(); cat.object_count()];
    for &a in &objs {
        if cat.degree(a) <= n {
            level_maps[a.idx()] = (0..x.size(a) as u32).collect();
            continue;
        }
        let ms = monos_into(cat, a);
        let mut v = Vec::with_capacity(x.size(a));
        for e in 0..x.size(a) as u32 {
            // Boundary data of e, transported into the coskeleton through the
            // already-built lower unit components.
            let want: Vec<u32> = ms
                .iter()
                .map(|&m| level_maps[cat.dom(m).idx()][x.act(m, e) as usize])
                .collect();
            let found = (0..cx.size(a) as u32)
                .find(|&c| ms.iter().enumerate().all(|(i, &m)| cx.act(m, c) == want[i]))
                .ok_or_else(|| {
                    Error::Structural("element has no image sphere in the coskeleton".into())
                })?;
            v.push(found);
        }
        level_maps[a.idx()] = v;
    }
    for o in cat.objects() {
        maps.push(level_maps[o.idx()].clone());
    }
    crate::presheaf::PresheafMap::new(
        std::sync::Arc::new(x.clone()),
        cx.clone(),
        maps,
    )
}

/// Functorial action of cosk_n on a map f: X → Y, between already-computed
/// coskeleta.
pub fn cosk_map(
    f: &crate::presheaf::PresheafMap,
    cx: &std::sync::Arc<Presheaf>,
    cy: &std::sync::Arc<Presheaf>,
) -> Result<crate::presheaf::PresheafMap> {
    let cat = &f.source.shape.cat;
    let n = cx
        .coskeletal_above
        .ok_or_else(|| Error::Structural("cosk_map inputs are not coskeleta".into()))?;
    let mut objs: Vec<ObjId> = cat.objects().collect();
    objs.sort_by_key(|&o| (cat.degree(o), o));
    let mut level_maps: Vec<Vec<u32>> = vec![Vec::new(); cat.object_count()];
    for &a in &objs {
        if cat.degree(a) <= n {
            level_maps[a.idx()] = f.maps[a.idx()].clone();
            continue;
        }
        let ms = monos_into(cat, a);
        let mut v = Vec::with_capacity(cx.size(a));
        for e in 0..cx.size(a) as u32 {
            let want: Vec<u32> = ms
                .iter()
                .map(|&m| level_maps[cat.dom(m).idx()][cx.act(m, e) as usize])
                .collect();
            let found = (0..cy.size(a) as u32)
                .find(|&c| ms.iter().enumerate().all(|(i, &m)| cy.act(m, c) == want[i]))
                .ok_or_else(|| {
                    Error::Structural("sphere has no image in the target coskeleton".into())
                })?;
            v.push(found);
        }
        level_maps[a.idx()] = v;
    }
    crate::presheaf::PresheafMap::new(cx.clone(), cy.clone(), level_maps)
}

/// Coskeletality via the unique-filler condition: every boundary sphere at
/// degree > n has exactly one filler in X. The unit-isomorphism condition is
/// checked against it in tests.
pub fn is_coskeletal(x: &Presheaf, n: u32) -> Result<bool> {
    let x = x.at_full()?;
    let cat = &x.shape.cat;
    let factors = factorize_all(cat)?;
    for a in cat.objects() {
        if cat.degree(a) <= n {
            continue;
        }
        let ms = monos_into(cat, a);
        let spheres = spheres_over(x, a, &ms, &factors)?;
        for s in &spheres {
            let mut fillers = 0;
            for e in 0..x.size(a) as u32 {
                if ms
                    .iter()
                    .enumerate()
                    .all(|(i, &v)| x.act(v, e) == s[i])
                {
                    fillers += 1;
                }
            }
            if fillers != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Boundary spheres of a fully evaluated presheaf at object `a`: assignments
/// over non-invertible monos into `a` compatible with every action of X.
fn spheres_over(
    x: &Presheaf,
    _a: ObjId,
    ms: &[MorId],
    factors: &Factors,
) -> Result<Vec<Vec<u32>>> {
    let cat = &x.shape.cat;
    let k = ms.len();
    if k == 0 {
        return Ok(vec![Vec::new()]);
    }
    let pos: HashMap<MorId, usize> = ms.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    struct C {
        v_slot: usize,
        w: MorId,
        mono_slot: usize,
        epi: MorId,
    }
    let mut by_trigger: Vec<Vec<C>> = (0..k).map(|_| Vec::new()).collect();
    for (i, &v) in ms.iter().enumerate() {
        let dv = cat.dom(v);
        for c in cat.objects() {
            for &w in cat.hom(c, dv) {
                let u = cat.compose(v, w);
                let m_u = factors.mono[u.idx()];
                let e_u = factors.epi[u.idx()];
                let j = pos[&m_u];
                by_trigger[i.max(j)].push(C {
                    v_slot: i,
                    w,
                    mono_slot: j,
                    epi: e_u,
                });
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
    fn rec(
        x: &Presheaf,
        ms: &[MorId],
        by_trigger: &[Vec<C>],
        slot: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if slot == ms.len() {
            out.push(cur.clone());
            return;
        }
        let dv = x.shape.cat.dom(ms[slot]);
        'cand: for cand in 0..x.size(dv) as u32 {
            cur[slot] = cand;
            for c in &by_trigger[slot] {
                let lhs = x.act(c.w, cur[c.v_slot]);
                let rhs = if x.shape.cat.is_identity(c.epi) {
                    cur[c.mono_slot]
                } else {
                    x.act(c.epi, cur[c.mono_slot])
                };
                if lhs != rhs {
                    continue 'cand;
                }
            }
            rec(x, ms, by_trigger, slot + 1, cur, out);
        }
    }
    rec(x, ms, &by_trigger, 0, &mut cur, &mut out);
    Ok(out)
}
