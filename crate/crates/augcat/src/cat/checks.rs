//! Structural checks: category axioms, generalised Reedy axioms, EZ axioms,
//! crossed-group decomposition, functors, sieves and 3-for-2.
//!
//! Checks return reports listing violations with witnessing morphisms; an
//! empty report means the structure passed. Malformed input (for example a
//! broken composition table) is an error, not a violation.

use std::collections::HashSet;

use super::{FiniteCategory, MorId, ObjId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Which axiom failed, e.g. `"reedy.i"`, `"ez.2"`.
    pub axiom: String,
    /// Human-readable witness description.
    pub witness: String,
}

impl Violation {
    fn new(axiom: &str, witness: String) -> Self {
        Violation {
            axiom: axiom.to_string(),
            witness,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
    /// Degree up to which truncation-bounded conditions were verified.
    pub truncation_checked: u32,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn mor_desc(cat: &FiniteCategory, m: MorId) -> String {
    format!(
        "{}: {} -> {}",
        cat.morphism(m).name,
        cat.object(cat.dom(m)).name,
        cat.object(cat.cod(m)).name
    )
}

/// Iterate `(f, g)` over all composable pairs via the hom-set index rather
/// than a quadratic scan of all morphism pairs.
pub(crate) fn for_each_composable_pair(
    cat: &FiniteCategory,
    mut visit: impl FnMut(MorId, MorId),
) {
    let mut outgoing: std::collections::BTreeMap<ObjId, Vec<ObjId>> =
        std::collections::BTreeMap::new();
    for &(b, c) in cat.homs().keys() {
        outgoing.entry(b).or_default().push(c);
    }
    for (&(_a, b), fs) in cat.homs().iter() {
        let Some(cods) = outgoing.get(&b) else { continue };
        for &c in cods {
            for &f in fs {
                for &g in cat.hom(b, c) {
                    visit(f, g);
                }
            }
        }
    }
}

/// Identities neutral, composition associative, endpoints consistent,
/// canonical forms unique per hom-set (guaranteed by the builder but
/// re-checked for imported categories).
pub fn check_category_axioms(cat: &FiniteCategory) -> CheckReport {
    let mut report = CheckReport::default();
    for m in cat.morphism_ids() {
        let (a, b) = (cat.dom(m), cat.cod(m));
        if cat.compose(m, cat.identity(a)) != m {
            report.violations.push(Violation::new(
                "category.identity-right",
                mor_desc(cat, m),
            ));
        }
        if cat.compose(cat.identity(b), m) != m {
            report
                .violations
                .push(Violation::new("category.identity-left", mor_desc(cat, m)));
        }
    }
    // Canonical-form uniqueness within hom-sets.
    for ((a, b), ms) in cat.homs().iter() {
        let mut names = HashSet::new();
        for &m in ms {
            if !names.insert(cat.morphism(m).name.clone()) {
                report.violations.push(Violation::new(
                    "category.canonical-form",
                    format!(
                        "duplicate `{}` in hom({}, {})",
                        cat.morphism(m).name,
                        cat.object(*a).name,
                        cat.object(*b).name
                    ),
                ));
            }
        }
    }
    // Associativity over every composable triple, block-wise for speed.
    let objs: Vec<ObjId> = cat.objects().collect();
    'outer: for &a in &objs {
        for &b in &objs {
            let fs = cat.hom(a, b);
            if fs.is_empty() {
                continue;
            }
            for &c in &objs {
                let gs = cat.hom(b, c);
                if gs.is_empty() {
                    continue;
                }
                for &d in &objs {
                    let hs = cat.hom(c, d);
                    if hs.is_empty() {
                        continue;
                    }
                    for &h in hs {
                        for &g in gs {
                            let hg = cat.compose(h, g);
                            for &f in fs {
                                let gf = cat.compose(g, f);
                                if cat.compose(h, gf) != cat.compose(hg, f) {
                                    report.violations.push(Violation::new(
                                        "category.associativity",
                                        format!(
                                            "h = {}; g = {}; f = {}",
                                            mor_desc(cat, h),
                                            mor_desc(cat, g),
                                            mor_desc(cat, f)
                                        ),
                                    ));
                                    if report.violations.len() > 32 {
                                        break 'outer;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report.truncation_checked = objs.iter().map(|&o| cat.degree(o)).max().unwrap_or(0);
    report
}

/// Wide subcategories of a category, given as membership flags per morphism.
#[derive(Debug, Clone)]
pub struct ReedyStructure {
    pub plus: Vec<bool>,
    pub minus: Vec<bool>,
}

impl ReedyStructure {
    /// The EZ structure: plus = monomorphisms, minus = split epimorphisms
    /// (the degeneracy operators). With bald tree vertices a face η → C₀ is
    /// categorically epi without being split, so plain epis would not lower
    /// degree.
    pub fn from_mono_epi(cat: &FiniteCategory) -> Self {
        ReedyStructure {
            plus: cat.morphism_ids().map(|m| cat.is_mono(m)).collect(),
            minus: cat.morphism_ids().map(|m| cat.is_split_epi(m)).collect(),
        }
    }

    pub fn in_plus(&self, m: MorId) -> bool {
        self.plus[m.idx()]
    }

    pub fn in_minus(&self, m: MorId) -> bool {
        self.minus[m.idx()]
    }
}

/// Axioms i–iv and the dualisable axiom iv′ of a generalised Reedy structure,
/// plus wideness/closure of the two subcategories.
pub fn check_generalized_reedy(cat: &FiniteCategory, reedy: &ReedyStructure) -> CheckReport {
    let mut report = CheckReport::default();
    report.truncation_checked = cat.objects().map(|o| cat.degree(o)).max().unwrap_or(0);

    // Wide subcategories: identities present, closed under composition.
    for o in cat.objects() {
        let id = cat.identity(o);
        if !reedy.in_plus(id) {
            report.violations.push(Violation::new(
                "reedy.wide",
                format!("identity of {} missing from plus", cat.object(o).name),
            ));
        }
        if !reedy.in_minus(id) {
            report.violations.push(Violation::new(
                "reedy.wide",
                format!("identity of {} missing from minus", cat.object(o).name),
            ));
        }
    }
    for_each_composable_pair(cat, |f, g| {
        let gf = cat.compose(g, f);
        if reedy.in_plus(f) && reedy.in_plus(g) && !reedy.in_plus(gf) {
            report.violations.push(Violation::new(
                "reedy.wide",
                format!("plus not closed: {} after {}", mor_desc(cat, g), mor_desc(cat, f)),
            ));
        }
        if reedy.in_minus(f) && reedy.in_minus(g) && !reedy.in_minus(gf) {
            report.violations.push(Violation::new(
                "reedy.wide",
                format!(
                    "minus not closed: {} after {}",
                    mor_desc(cat, g),
                    mor_desc(cat, f)
                ),
            ));
        }
    });

    for m in cat.morphism_ids() {
        let (da, db) = (cat.degree(cat.dom(m)), cat.degree(cat.cod(m)));
        let iso = cat.is_iso(m);
        // Axiom i.
        if iso && da != db {
            report
                .violations
                .push(Violation::new("reedy.i", format!("iso changes degree: {}", mor_desc(cat, m))));
        }
        if !iso && reedy.in_plus(m) && db <= da {
            report.violations.push(Violation::new(
                "reedy.i",
                format!("non-invertible plus morphism does not raise degree: {}", mor_desc(cat, m)),
            ));
        }
        if !iso && reedy.in_minus(m) && da <= db {
            report.violations.push(Violation::new(
                "reedy.i",
                format!("non-invertible minus morphism does not lower degree: {}", mor_desc(cat, m)),
            ));
        }
        // Axiom ii.
        if (reedy.in_plus(m) && reedy.in_minus(m)) != iso {
            report.violations.push(Violation::new(
                "reedy.ii",
                format!("plus ∩ minus ≠ isomorphisms at {}", mor_desc(cat, m)),
            ));
        }
    }

    // Axiom iii: existence and uniqueness-up-to-iso of minus-then-plus
    // factorizations.
    for f in cat.morphism_ids() {
        let factorizations = reedy_factorizations(cat, reedy, f);
        if factorizations.is_empty() {
            report.violations.push(Violation::new(
                "reedy.iii",
                format!("no plus∘minus factorization of {}", mor_desc(cat, f)),
            ));
            continue;
        }
        let (h0, g0) = factorizations[0];
        for &(h, g) in factorizations.iter().skip(1) {
            let b0 = cat.cod(h0);
            let b = cat.cod(h);
            let related = cat.hom(b0, b).iter().any(|&t| {
                cat.is_iso(t) && cat.compose(t, h0) == h && cat.compose(g, t) == g0
            });
            if !related {
                report.violations.push(Violation::new(
                    "reedy.iii",
                    format!(
                        "factorizations of {} not isomorphic: ({}, {}) vs ({}, {})",
                        mor_desc(cat, f),
                        cat.morphism(h0).name,
                        cat.morphism(g0).name,
                        cat.morphism(h).name,
                        cat.morphism(g).name
                    ),
                ));
                break;
            }
        }
    }

    // Axiom iv: θ∘f = f with f ∈ minus, θ iso ⇒ θ identity.
    for f in cat.morphism_ids() {
        if !reedy.in_minus(f) {
            continue;
        }
        let b = cat.cod(f);
        for &t in cat.hom(b, b) {
            if cat.is_iso(t) && !cat.is_identity(t) && cat.compose(t, f) == f {
                report.violations.push(Violation::new(
                    "reedy.iv",
                    format!("{} fixed by iso {}", mor_desc(cat, f), cat.morphism(t).name),
                ));
            }
        }
    }
    // Axiom iv′: f∘θ = f with f ∈ plus, θ iso ⇒ θ identity.
    for f in cat.morphism_ids() {
        if !reedy.in_plus(f) {
            continue;
        }
        let a = cat.dom(f);
        for &t in cat.hom(a, a) {
            if cat.is_iso(t) && !cat.is_identity(t) && cat.compose(f, t) == f {
                report.violations.push(Violation::new(
                    "reedy.iv'",
                    format!("{} fixed by iso {}", mor_desc(cat, f), cat.morphism(t).name),
                ));
            }
        }
    }

    report
}

fn reedy_factorizations(
    cat: &FiniteCategory,
    reedy: &ReedyStructure,
    f: MorId,
) -> Vec<(MorId, MorId)> {
    let (a, c) = (cat.dom(f), cat.cod(f));
    let mut out = Vec::new();
    for b in cat.objects() {
        for &h in cat.hom(a, b) {
            if !reedy.in_minus(h) {
                continue;
            }
            for &g in cat.hom(b, c) {
                if reedy.in_plus(g) && cat.compose(g, h) == f {
                    out.push((h, g));
                }
            }
        }
    }
    out
}

/// Canonical Reedy factorization `f = g ∘ h` with `h` in minus and `g` in
/// plus: the first factorization in (middle object, h, g) order. Any other
/// factorization differs from it by an isomorphism between the middles.
pub fn reedy_factorize(
    cat: &FiniteCategory,
    reedy: &ReedyStructure,
    f: MorId,
) -> Result<(MorId, MorId)> {
    reedy_factorizations(cat, reedy, f)
        .into_iter()
        .next()
        .ok_or_else(|| {
            Error::Precondition(format!(
                "no plus∘minus factorization of {}",
                mor_desc(cat, f)
            ))
        })
}

/// EZ-category conditions on top of a generalised Reedy structure:
/// 1. monomorphisms preserve degree iff invertible, raise iff not;
/// 2. every morphism factors as a split epimorphism followed by a mono;
/// 3. split-epi pairs with common domain admit an absolute pushout, tested
///    against `Hom(r, -)` for every object `r` up to the truncation degree.
pub fn check_ez(cat: &FiniteCategory, _reedy: &ReedyStructure) -> CheckReport {
    let mut report = CheckReport::default();
    report.truncation_checked = cat.objects().map(|o| cat.degree(o)).max().unwrap_or(0);

    for m in cat.morphism_ids() {
        if !cat.is_mono(m) {
            continue;
        }
        let (da, db) = (cat.degree(cat.dom(m)), cat.degree(cat.cod(m)));
        if cat.is_iso(m) && da != db {
            report.violations.push(Violation::new(
                "ez.1",
                format!("invertible mono changes degree: {}", mor_desc(cat, m)),
            ));
        }
        if !cat.is_iso(m) && db <= da {
            report.violations.push(Violation::new(
                "ez.1",
                format!("non-invertible mono does not raise degree: {}", mor_desc(cat, m)),
            ));
        }
    }

    for f in cat.morphism_ids() {
        if cat.split_epi_mono_factor(f).is_none() {
            report.violations.push(Violation::new(
                "ez.2",
                format!("no split-epi∘mono factorization of {}", mor_desc(cat, f)),
            ));
        }
    }

    for a in cat.objects() {
        let epis: Vec<MorId> = cat
            .morphism_ids()
            .filter(|&m| cat.dom(m) == a && cat.is_split_epi(m))
            .collect();
        for &e1 in &epis {
            for &e2 in &epis {
                if e1.0 > e2.0 {
                    continue;
                }
                if has_absolute_pushout(cat, e1, e2) == Some(false) {
                    report.violations.push(Violation::new(
                        "ez.3",
                        format!(
                            "split epis without absolute pushout: {} and {}",
                            mor_desc(cat, e1),
                            mor_desc(cat, e2)
                        ),
                    ));
                }
            }
        }
    }

    report
}

/// `None` when the span admits no commuting cocone at all (vacuous case: in
/// categories with automorphisms, twisted pairs like (σ, σ∘τ) in the cyclic
/// category bound nothing, and the degeneracy-merging machinery never asks
/// for their pushout); otherwise whether some cocone is an absolute pushout.
fn has_absolute_pushout(cat: &FiniteCategory, e1: MorId, e2: MorId) -> Option<bool> {
    let (b1, b2) = (cat.cod(e1), cat.cod(e2));
    let mut any_cocone = false;
    for c in cat.objects() {
        for &m1 in cat.hom(b1, c) {
            for &m2 in cat.hom(b2, c) {
                if cat.compose(m1, e1) != cat.compose(m2, e2) {
                    continue;
                }
                any_cocone = true;
                if is_pushout_under_representables(cat, e1, e2, m1, m2) {
                    return Some(true);
                }
            }
        }
    }
    if any_cocone {
        Some(false)
    } else {
        None
    }
}

/// Checks that `Hom(r, b1) ⊔_{Hom(r, a)} Hom(r, b2) → Hom(r, c)` is a
/// bijection for every object `r`, i.e. the square is preserved by the
/// Yoneda embedding (levelwise set pushout).
fn is_pushout_under_representables(
    cat: &FiniteCategory,
    e1: MorId,
    e2: MorId,
    m1: MorId,
    m2: MorId,
) -> bool {
    let a = cat.dom(e1);
    let (b1, b2) = (cat.cod(e1), cat.cod(e2));
    let c = cat.cod(m1);
    for r in cat.objects() {
        let h1 = cat.hom(r, b1);
        let h2 = cat.hom(r, b2);
        // Union-find over the disjoint union h1 ⊔ h2, gluing along Hom(r, a).
        let n = h1.len() + h2.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let idx1: std::collections::HashMap<MorId, usize> =
            h1.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let idx2: std::collections::HashMap<MorId, usize> =
            h2.iter().enumerate().map(|(i, &m)| (m, h1.len() + i)).collect();
        for &u in cat.hom(r, a) {
            let x = idx1[&cat.compose(e1, u)];
            let y = idx2[&cat.compose(e2, u)];
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx] = ry;
        }
        // Map classes into Hom(r, c) and test bijectivity.
        let mut class_val: std::collections::HashMap<usize, MorId> =
            std::collections::HashMap::new();
        for (i, &m) in h1.iter().enumerate() {
            let root = find(&mut parent, i);
            let v = cat.compose(m1, m);
            match class_val.get(&root) {
                Some(&w) if w != v => return false, // cocone not constant on a class
                _ => {
                    class_val.insert(root, v);
                }
            }
        }
        for (i, &m) in h2.iter().enumerate() {
            let root = find(&mut parent, h1.len() + i);
            let v = cat.compose(m2, m);
            match class_val.get(&root) {
                Some(&w) if w != v => return false,
                _ => {
                    class_val.insert(root, v);
                }
            }
        }
        let mut seen_val: HashSet<MorId> = HashSet::new();
        for (_, &v) in class_val.iter() {
            if !seen_val.insert(v) {
                return false; // not injective
            }
        }
        if seen_val.len() != cat.hom(r, c).len() {
            return false; // not surjective
        }
    }
    true
}

/// Crossed-group data on a category: a wide base subcategory plus per-object
/// groups of special automorphisms through which every morphism factors
/// uniquely.
#[derive(Debug, Clone)]
pub struct CrossedGroupData {
    /// Membership of the base wide subcategory.
    pub base: Vec<bool>,
    /// Special automorphisms per object (always containing the identity).
    pub special: Vec<Vec<MorId>>,
}

impl CrossedGroupData {
    pub fn trivial(cat: &FiniteCategory) -> Self {
        CrossedGroupData {
            base: vec![true; cat.morphism_count()],
            special: cat.objects().map(|o| vec![cat.identity(o)]).collect(),
        }
    }

    pub fn is_base(&self, m: MorId) -> bool {
        self.base[m.idx()]
    }
}

/// Unique decomposition `f = r ∘ t` with `t` special and `r` in the base.
pub fn crossed_decompose(
    cat: &FiniteCategory,
    crossed: &CrossedGroupData,
    f: MorId,
) -> Result<(MorId, MorId)> {
    let a = cat.dom(f);
    let mut found = None;
    for &t in &crossed.special[a.idx()] {
        let tinv = cat
            .inverse(t)
            .ok_or_else(|| Error::Structural(format!("special {} not invertible", cat.morphism(t).name)))?;
        let r = cat.compose(f, tinv);
        if crossed.is_base(r) {
            if let Some((t0, r0)) = found {
                return Err(Error::Structural(format!(
                    "crossed decomposition of {} not unique: ({}, {}) and ({}, {})",
                    mor_desc(cat, f),
                    cat.morphism(t0).name,
                    cat.morphism(r0).name,
                    cat.morphism(t).name,
                    cat.morphism(r).name
                )));
            }
            found = Some((t, r));
        }
    }
    found.ok_or_else(|| {
        Error::Structural(format!(
            "no crossed decomposition of {}",
            mor_desc(cat, f)
        ))
    })
}

/// Full crossed-group invariant scan: base is a wide subcategory, specials
/// are automorphism subgroups, and every morphism decomposes uniquely.
pub fn check_crossed(cat: &FiniteCategory, crossed: &CrossedGroupData) -> CheckReport {
    let mut report = CheckReport::default();
    report.truncation_checked = cat.objects().map(|o| cat.degree(o)).max().unwrap_or(0);

    for o in cat.objects() {
        if !crossed.base[cat.identity(o).idx()] {
            report.violations.push(Violation::new(
                "crossed.base-wide",
                format!("identity of {} not in base", cat.object(o).name),
            ));
        }
        let specials = &crossed.special[o.idx()];
        if !specials.contains(&cat.identity(o)) {
            report.violations.push(Violation::new(
                "crossed.subgroup",
                format!("special group at {} misses the identity", cat.object(o).name),
            ));
        }
        for &t in specials {
            if cat.dom(t) != o || cat.cod(t) != o || !cat.is_iso(t) {
                report.violations.push(Violation::new(
                    "crossed.subgroup",
                    format!("{} is not an automorphism of {}", cat.morphism(t).name, cat.object(o).name),
                ));
                continue;
            }
            match cat.inverse(t) {
                Some(ti) if specials.contains(&ti) => {}
                _ => report.violations.push(Violation::new(
                    "crossed.subgroup",
                    format!("inverse of {} missing from special group", cat.morphism(t).name),
                )),
            }
            for &s in specials {
                if !specials.contains(&cat.compose(t, s)) {
                    report.violations.push(Violation::new(
                        "crossed.subgroup",
                        format!(
                            "special group at {} not closed under composition",
                            cat.object(o).name
                        ),
                    ));
                }
            }
        }
    }

    for_each_composable_pair(cat, |f, g| {
        if crossed.is_base(f) && crossed.is_base(g) && !crossed.is_base(cat.compose(g, f)) {
            report.violations.push(Violation::new(
                "crossed.base-closed",
                format!("base not closed: {} after {}", mor_desc(cat, g), mor_desc(cat, f)),
            ));
        }
    });

    for f in cat.morphism_ids() {
        if let Err(e) = crossed_decompose(cat, crossed, f) {
            report.violations.push(Violation::new(
                "crossed.unique-decomposition",
                format!("{}", e),
            ));
        }
    }

    report
}

/// A functor between two finite categories given by index maps.
#[derive(Debug, Clone)]
pub struct FunctorData {
    pub obj_map: Vec<ObjId>,
    pub mor_map: Vec<MorId>,
}

impl FunctorData {
    pub fn obj(&self, o: ObjId) -> ObjId {
        self.obj_map[o.idx()]
    }

    pub fn mor(&self, m: MorId) -> MorId {
        self.mor_map[m.idx()]
    }
}

/// Preservation of identities and composition (and degrees when requested).
pub fn check_functor(
    src: &FiniteCategory,
    dst: &FiniteCategory,
    f: &FunctorData,
    require_degree: bool,
) -> CheckReport {
    let mut report = CheckReport::default();
    if f.obj_map.len() != src.object_count() || f.mor_map.len() != src.morphism_count() {
        report.violations.push(Violation::new(
            "functor.shape",
            "object/morphism map sizes do not match the source category".into(),
        ));
        return report;
    }
    for m in src.morphism_ids() {
        let fm = f.mor(m);
        if dst.dom(fm) != f.obj(src.dom(m)) || dst.cod(fm) != f.obj(src.cod(m)) {
            report.violations.push(Violation::new(
                "functor.endpoints",
                mor_desc(src, m),
            ));
        }
    }
    if !report.ok() {
        return report;
    }
    for o in src.objects() {
        if f.mor(src.identity(o)) != dst.identity(f.obj(o)) {
            report.violations.push(Violation::new(
                "functor.identity",
                src.object(o).name.clone(),
            ));
        }
        if require_degree && src.degree(o) != dst.degree(f.obj(o)) {
            report
                .violations
                .push(Violation::new("functor.degree", src.object(o).name.clone()));
        }
    }
    for g in src.morphism_ids() {
        for h in src.morphism_ids() {
            if src.cod(g) != src.dom(h) {
                continue;
            }
            if f.mor(src.compose(h, g)) != dst.compose(f.mor(h), f.mor(g)) {
                report.violations.push(Violation::new(
                    "functor.composition",
                    format!("{} after {}", mor_desc(src, h), mor_desc(src, g)),
                ));
            }
        }
    }
    report
}

pub fn is_embedding(src: &FiniteCategory, _dst: &FiniteCategory, f: &FunctorData) -> bool {
    let mut objs = HashSet::new();
    for o in src.objects() {
        if !objs.insert(f.obj(o)) {
            return false;
        }
    }
    // Faithful: injective on each hom-set.
    for ((a, b), ms) in src.homs().iter() {
        let _ = (a, b);
        let mut seen = HashSet::new();
        for &m in ms {
            if !seen.insert(f.mor(m)) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone)]
pub struct SieveOutcome {
    pub holds: bool,
    /// A morphism of the ambient category violating the sieve condition.
    pub witness: Option<MorId>,
}

/// Sieve test: every ambient morphism landing on an image object must itself
/// be in the image (with its source).
pub fn check_sieve(
    src: &FiniteCategory,
    cat: &FiniteCategory,
    sub: &FunctorData,
) -> Result<SieveOutcome> {
    if !is_embedding(src, cat, sub) {
        return Err(Error::Structural(
            "sieve test requires a fully faithful embedding".into(),
        ));
    }
    let image_objs: HashSet<ObjId> = sub.obj_map.iter().copied().collect();
    let image_mors: HashSet<MorId> = sub.mor_map.iter().copied().collect();
    // Prefer an automorphism witness (e.g. τ₁ for Δ inside ΔC): it shows the
    // failure in its sharpest form, a morphism fixing an image object.
    let mut witness = None;
    for m in cat.morphism_ids() {
        if image_objs.contains(&cat.cod(m)) && !image_mors.contains(&m) {
            if cat.is_iso(m) {
                return Ok(SieveOutcome {
                    holds: false,
                    witness: Some(m),
                });
            }
            witness.get_or_insert(m);
        }
    }
    Ok(SieveOutcome {
        holds: witness.is_none(),
        witness,
    })
}

#[derive(Debug, Clone)]
pub struct ThreeForTwoOutcome {
    pub holds: bool,
    /// (f, g, g∘f) with exactly two of the three in the image.
    pub witness: Option<(MorId, MorId, MorId)>,
}

/// 3-for-2 property of the image morphism class of an embedding.
pub fn check_3for2(
    src: &FiniteCategory,
    cat: &FiniteCategory,
    sub: &FunctorData,
) -> Result<ThreeForTwoOutcome> {
    if !is_embedding(src, cat, sub) {
        return Err(Error::Structural(
            "3-for-2 test requires an embedding".into(),
        ));
    }
    let image: HashSet<MorId> = sub.mor_map.iter().copied().collect();
    let mut witness = None;
    for_each_composable_pair(cat, |f, g| {
        if witness.is_some() {
            return;
        }
        let h = cat.compose(g, f);
        let count =
            image.contains(&f) as u8 + image.contains(&g) as u8 + image.contains(&h) as u8;
        if count == 2 {
            witness = Some((f, g, h));
        }
    });
    Ok(ThreeForTwoOutcome {
        holds: witness.is_none(),
        witness,
    })
}
