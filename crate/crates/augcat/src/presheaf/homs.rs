//! Enumeration of presheaf maps by backtracking over nondegenerate elements.
//!
//! Every element of a presheaf over an EZ shape is the action image of a
//! nondegenerate element of lower or equal degree, so a map is determined by
//! its values on nondegenerate elements; assigning those in ascending degree
//! order and propagating through every action gives sound and complete
//! enumeration with early conflict detection.

use super::{nondegenerate, LevelMap, Presheaf};
use crate::cat::{MorId, ObjId};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_STATES: u64 = 10_000_000;

/// All maps X → Y, deterministic order. `max_states` bounds the number of
/// candidate assignments tried.
pub fn hom_enumerate(x: &Presheaf, y: &Presheaf, max_states: u64) -> Result<Vec<LevelMap>> {
    hom_enumerate_constrained(x, y, None, max_states)
}

/// As `hom_enumerate`, with optional pre-assigned values (levelwise, `None`
/// entries free). Used for lifting problems and constrained homotopy search.
pub fn hom_enumerate_constrained(
    x: &Presheaf,
    y: &Presheaf,
    partial: Option<&[Vec<Option<u32>>]>,
    max_states: u64,
) -> Result<Vec<LevelMap>> {
    if x.shape.fingerprint() != y.shape.fingerprint() {
        return Err(Error::Argument("hom requires a shared shape".into()));
    }
    let cat = &x.shape.cat;
    let trunc = x.truncation.min(y.truncation);

    // Elements at stored-but-unmatched levels make maps impossible only if
    // the target level is empty while the source is not; above the shared
    // truncation both must be empty for the enumeration to be meaningful.
    for o in cat.objects() {
        if cat.degree(o) > trunc && x.size(o) > 0 && y.size(o) == 0 {
            return Err(Error::Argument(
                "source has elements above the shared truncation".into(),
            ));
        }
    }

    // Incoming morphisms per object (for propagation).
    let mut incoming: Vec<Vec<MorId>> = vec![Vec::new(); cat.object_count()];
    for m in cat.morphism_ids() {
        let (a, b) = (cat.dom(m), cat.cod(m));
        if cat.degree(a) <= trunc && cat.degree(b) <= trunc {
            incoming[b.idx()].push(m);
        }
    }

    // Process nondegenerate elements from the top degree down: values of
    // high cells force their faces through propagation, so sources built
    // from few top cells (representables, horns, cylinders) barely branch.
    let nondeg = nondegenerate(x);
    let mut queue: Vec<(ObjId, u32)> = Vec::new();
    let mut objs: Vec<ObjId> = cat.objects().filter(|&o| cat.degree(o) <= trunc).collect();
    objs.sort_by_key(|&o| (std::cmp::Reverse(cat.degree(o)), o));
    for &o in &objs {
        for e in 0..x.size(o) as u32 {
            if nondeg[o.idx()][e as usize] {
                queue.push((o, e));
            }
        }
    }

    let mut assign: Vec<Vec<Option<u32>>> = x
        .levels
        .iter()
        .map(|l| vec![None; l.len()])
        .collect();
    // Seed the pre-assigned values through propagation so conflicts among
    // them (or their consequences) are detected up front.
    if let Some(p) = partial {
        let mut trail: Vec<(usize, usize)> = Vec::new();
        for (i, v) in p.iter().enumerate() {
            for (j, val) in v.iter().enumerate() {
                if let Some(w) = *val {
                    if !propagate(
                        x,
                        y,
                        &incoming,
                        &mut assign,
                        &mut trail,
                        ObjId(i as u32),
                        j as u32,
                        w,
                    ) {
                        return Ok(Vec::new());
                    }
                }
            }
        }
    }

    let mut out = Vec::new();
    let mut states: u64 = 0;
    search(
        x,
        y,
        &incoming,
        &queue,
        0,
        &mut assign,
        &mut out,
        &mut states,
        max_states,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    x: &Presheaf,
    y: &Presheaf,
    incoming: &[Vec<MorId>],
    queue: &[(ObjId, u32)],
    idx: usize,
    assign: &mut Vec<Vec<Option<u32>>>,
    out: &mut Vec<LevelMap>,
    states: &mut u64,
    max_states: u64,
) -> Result<()> {
    if idx == queue.len() {
        // Every element must be assigned by now (EZ reachability).
        let maps: LevelMap = assign
            .iter()
            .map(|v| v.iter().map(|o| o.expect("element unreachable")).collect())
            .collect();
        out.push(maps);
        return Ok(());
    }
    let (o, e) = queue[idx];
    if assign[o.idx()][e as usize].is_some() {
        return search(x, y, incoming, queue, idx + 1, assign, out, states, max_states);
    }
    for cand in 0..y.size(o) as u32 {
        *states += 1;
        if *states > max_states {
            return Err(Error::GuardExceeded(max_states));
        }
        let mut trail = Vec::new();
        if propagate(x, y, incoming, assign, &mut trail, o, e, cand) {
            search(x, y, incoming, queue, idx + 1, assign, out, states, max_states)?;
        }
        for (i, j) in trail {
            assign[i][j] = None;
        }
    }
    Ok(())
}

/// Assign x-element e at object o to y-element w and push every consequence
/// through all incoming actions. Returns false on conflict (trail still
/// records what was set).
fn propagate(
    x: &Presheaf,
    y: &Presheaf,
    incoming: &[Vec<MorId>],
    assign: &mut Vec<Vec<Option<u32>>>,
    trail: &mut Vec<(usize, usize)>,
    o: ObjId,
    e: u32,
    w: u32,
) -> bool {
    let mut stack = vec![(o, e, w)];
    while let Some((o, e, w)) = stack.pop() {
        match assign[o.idx()][e as usize] {
            Some(v) if v == w => continue,
            Some(_) => return false,
            None => {
                assign[o.idx()][e as usize] = Some(w);
                trail.push((o.idx(), e as usize));
                for &m in &incoming[o.idx()] {
                    let a = x.shape.cat.dom(m);
                    let xe = x.act(m, e);
                    let yw = y.act(m, w);
                    stack.push((a, xe, yw));
                }
            }
        }
    }
    true
}

/// Yoneda: the map A[a] → X classified by an element of X_a. The level-b
/// entries follow the hom-set order of the representable.
pub fn yoneda_map(x: &Presheaf, a: ObjId, elem: u32) -> LevelMap {
    let cat = &x.shape.cat;
    let mut maps = Vec::with_capacity(cat.object_count());
    for b in cat.objects() {
        if cat.degree(b) > x.truncation {
            maps.push(Vec::new());
            continue;
        }
        let ms = cat.hom(b, a);
        let mut v = Vec::with_capacity(ms.len());
        for &u in ms {
            v.push(x.act(u, elem));
        }
        maps.push(v);
    }
    maps
}
