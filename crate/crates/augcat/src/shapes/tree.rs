//! Planar and symmetric rooted-tree categories (dendroidal shapes).
//!
//! A tree is encoded as a nested list; each node of the encoding is an edge
//! of the tree (the root node is the root edge, `Leaf` nodes are leaves,
//! `Vertex` nodes carry the vertex sitting above that edge). A morphism
//! S → T is a node map such that the children of every internal node of S
//! land, in order for the planar case and up to bijection for the symmetric
//! case, on the frontier of a cut of T above the image of that node. This is
//! exactly an operad map between the free coloured operads of the trees, so
//! composition is plain map composition.
//!
//! Truncation: objects are the trees with at most `max` vertices and at most
//! `max + 1` edges. The edge cap keeps the object set finite (vertex count
//! alone admits corollas of every arity) while containing every linear tree
//! L_n for n ≤ max, and it is closed under sources of monos and targets of
//! epis, which is what boundaries and factorizations consume.

use std::collections::HashMap;

use super::{generator_sets, DeltaEmbedding, ShapeCategory, ShapeKind};
use crate::cat::{CategoryBuilder, CrossedGroupData, FunctorData, MorId, ObjId, ReedyStructure};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PTree {
    Leaf,
    Vertex(Vec<PTree>),
}

impl PTree {
    pub fn encode(&self) -> String {
        match self {
            PTree::Leaf => "*".to_string(),
            PTree::Vertex(cs) => {
                let inner: String = cs.iter().map(|c| c.encode()).collect();
                format!("({inner})")
            }
        }
    }

    pub fn vertices(&self) -> u32 {
        match self {
            PTree::Leaf => 0,
            PTree::Vertex(cs) => 1 + cs.iter().map(|c| c.vertices()).sum::<u32>(),
        }
    }

    pub fn edges(&self) -> u32 {
        match self {
            PTree::Leaf => 1,
            PTree::Vertex(cs) => 1 + cs.iter().map(|c| c.edges()).sum::<u32>(),
        }
    }

    /// Lexicographically minimal representative under planar reordering.
    pub fn canonical(&self) -> PTree {
        match self {
            PTree::Leaf => PTree::Leaf,
            PTree::Vertex(cs) => {
                let mut cs: Vec<PTree> = cs.iter().map(|c| c.canonical()).collect();
                cs.sort_by_key(|c| c.encode());
                PTree::Vertex(cs)
            }
        }
    }

    /// The linear tree with n vertices and n+1 edges.
    pub fn linear(n: u32) -> PTree {
        let mut t = PTree::Leaf;
        for _ in 0..n {
            t = PTree::Vertex(vec![t]);
        }
        t
    }

    /// The corolla with k leaves (one vertex, k+1 edges).
    pub fn corolla(k: u32) -> PTree {
        PTree::Vertex((0..k).map(|_| PTree::Leaf).collect())
    }
}

/// Flattened tree with nodes in DFS preorder (parents before children,
/// children left to right, so preorder index order is the planar order).
#[derive(Debug, Clone)]
pub struct TreeData {
    pub tree: PTree,
    pub name: String,
    pub children: Vec<Vec<u16>>,
    /// True for nodes carrying a vertex (including bald vertices).
    pub internal: Vec<bool>,
    pub n_nodes: usize,
    pub n_vertices: u32,
    /// cuts[e] = all frontiers of cuts above e, each an ordered edge list.
    cuts: Vec<Vec<Vec<u16>>>,
}

impl TreeData {
    pub fn new(tree: &PTree) -> TreeData {
        let mut children: Vec<Vec<u16>> = Vec::new();
        let mut internal: Vec<bool> = Vec::new();
        fn walk(t: &PTree, children: &mut Vec<Vec<u16>>, internal: &mut Vec<bool>) -> u16 {
            let me = children.len() as u16;
            children.push(Vec::new());
            internal.push(matches!(t, PTree::Vertex(_)));
            if let PTree::Vertex(cs) = t {
                let mut kids = Vec::new();
                for c in cs {
                    kids.push(walk(c, children, internal));
                }
                children[me as usize] = kids;
            }
            me
        }
        walk(tree, &mut children, &mut internal);
        let n_nodes = children.len();
        let mut cuts: Vec<Vec<Vec<u16>>> = vec![Vec::new(); n_nodes];
        // Children have larger preorder indices, so compute bottom-up.
        for e in (0..n_nodes).rev() {
            let mut out = vec![vec![e as u16]];
            if internal[e] {
                // Cartesian concatenation of the children's frontiers; a bald
                // vertex contributes the empty frontier.
                let mut acc: Vec<Vec<u16>> = vec![Vec::new()];
                for &c in &children[e] {
                    let mut next = Vec::new();
                    for prefix in &acc {
                        for f in &cuts[c as usize] {
                            let mut v = prefix.clone();
                            v.extend_from_slice(f);
                            next.push(v);
                        }
                    }
                    acc = next;
                }
                out.extend(acc);
            }
            cuts[e] = out;
        }
        TreeData {
            name: tree.encode(),
            tree: tree.clone(),
            n_vertices: tree.vertices(),
            n_nodes,
            children,
            internal,
            cuts,
        }
    }

    pub fn is_internal(&self, e: usize) -> bool {
        self.internal[e]
    }
}

/// All node maps S → T that are tree morphisms; planar restricts to
/// order-preserving frontier matchings.
pub fn tree_homs(s: &TreeData, t: &TreeData, planar: bool) -> Vec<Vec<u16>> {
    let internal: Vec<u16> = (0..s.n_nodes)
        .filter(|&e| s.is_internal(e))
        .map(|e| e as u16)
        .collect();
    let mut out = Vec::new();
    let mut assign = vec![u16::MAX; s.n_nodes];
    for root_img in 0..t.n_nodes as u16 {
        assign[0] = root_img;
        rec(s, t, planar, &internal, 0, &mut assign, &mut out);
    }
    out
}

fn rec(
    s: &TreeData,
    t: &TreeData,
    planar: bool,
    internal: &[u16],
    idx: usize,
    assign: &mut Vec<u16>,
    out: &mut Vec<Vec<u16>>,
) {
    if idx == internal.len() {
        out.push(assign.clone());
        return;
    }
    let v = internal[idx] as usize;
    let img = assign[v] as usize;
    let kids = &s.children[v];
    let k = kids.len();
    for frontier in &t.cuts[img] {
        if frontier.len() != k {
            continue;
        }
        if planar {
            for (i, &c) in kids.iter().enumerate() {
                assign[c as usize] = frontier[i];
            }
            rec(s, t, planar, internal, idx + 1, assign, out);
        } else {
            let mut perm: Vec<usize> = (0..k).collect();
            permute(&mut perm, 0, &mut |p| {
                for (i, &c) in kids.iter().enumerate() {
                    assign[c as usize] = frontier[p[i]];
                }
                rec(s, t, planar, internal, idx + 1, assign, out);
            });
        }
    }
    for &c in kids {
        assign[c as usize] = u16::MAX;
    }
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// All planar trees with ≤ vmax vertices and ≤ emax edges, deterministic
/// order.
pub fn enumerate_planar_trees(vmax: u32, emax: u32) -> Vec<PTree> {
    fn gen_trees(vmax: u32, emax: u32) -> Vec<PTree> {
        let mut out = Vec::new();
        if emax >= 1 {
            out.push(PTree::Leaf);
            if vmax >= 1 {
                for list in gen_lists(vmax - 1, emax - 1) {
                    out.push(PTree::Vertex(list));
                }
            }
        }
        out
    }
    fn gen_lists(vbudget: u32, ebudget: u32) -> Vec<Vec<PTree>> {
        let mut out = vec![Vec::new()];
        for t in gen_trees(vbudget, ebudget) {
            let (v, e) = (t.vertices(), t.edges());
            for rest in gen_lists(vbudget - v, ebudget - e) {
                let mut list = vec![t.clone()];
                list.extend(rest);
                out.push(list);
            }
        }
        out
    }
    let mut trees = gen_trees(vmax, emax);
    trees.sort_by_key(|t| (t.vertices(), t.edges(), t.encode()));
    trees
}

fn map_name(map: &[u16]) -> String {
    let parts: Vec<String> = map.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(" "))
}

fn build_tree_category(max_vertices: u32, planar: bool) -> Result<ShapeCategory> {
    let emax = max_vertices + 1;
    let mut trees = enumerate_planar_trees(max_vertices, emax);
    if !planar {
        let mut seen = std::collections::HashSet::new();
        trees = trees
            .into_iter()
            .map(|t| t.canonical())
            .filter(|t| seen.insert(t.encode()))
            .collect();
        trees.sort_by_key(|t| (t.vertices(), t.edges(), t.encode()));
    }
    let data: Vec<TreeData> = trees.iter().map(TreeData::new).collect();

    let mut b = CategoryBuilder::new();
    let objs: Vec<ObjId> = data
        .iter()
        .map(|t| b.add_object(t.name.clone(), t.n_vertices))
        .collect();
    let mut reps: Vec<Vec<u16>> = Vec::new();
    let mut sig: Vec<(usize, usize)> = Vec::new();
    let mut index: HashMap<(usize, usize, Vec<u16>), MorId> = HashMap::new();
    for (si, s) in data.iter().enumerate() {
        for (ti, t) in data.iter().enumerate() {
            for map in tree_homs(s, t, planar) {
                let id = b.add_morphism(objs[si], objs[ti], map_name(&map))?;
                index.insert((si, ti, map.clone()), id);
                reps.push(map);
                sig.push((si, ti));
            }
        }
    }
    for (si, s) in data.iter().enumerate() {
        let idmap: Vec<u16> = (0..s.n_nodes as u16).collect();
        b.set_identity(objs[si], index[&(si, si, idmap)]);
    }
    let cat = b.build(|g, f| {
        let (sf, _) = sig[f.idx()];
        let (_, tg) = sig[g.idx()];
        let vf = &reps[f.idx()];
        let vg = &reps[g.idx()];
        let comp: Vec<u16> = vf.iter().map(|&x| vg[x as usize]).collect();
        index.get(&(sf, tg, comp)).copied()
    })?;

    // No crossed data: the paper's "crossed Ω_planar-group" reading fails
    // mechanically. A symmetric map out of a source with unequal branches can
    // cross them (e.g. (()*) → (()()) swapping the two inputs) while the
    // source has trivial automorphism group, so no factorization through
    // source automorphisms and planar maps exists; the true decomposition
    // routes the twist through an isomorphism between different planar
    // structures, which a skeletal category cannot express as an
    // automorphism. The symmetric category is therefore verified as an
    // EZ-category directly, and tree automorphisms live in the category
    // itself (the checkers below exercise them).
    let crossed: Option<CrossedGroupData> = None;
    let _ = is_planar_map;

    let reedy = ReedyStructure::from_mono_epi(&cat);
    let (face_gens, degen_gens) = generator_sets(&cat, crossed.as_ref());
    let mut cat = cat;
    cat.derive_words(&face_gens, &degen_gens, crossed.as_ref())?;

    // Δ ↪ Ω: [n] is the linear tree L_n; a monotone map is its own node map.
    let delta_shape = super::build_simplex(max_vertices)?;
    let delta = delta_shape.cat;
    let linear_idx: Vec<usize> = (0..=max_vertices)
        .map(|n| {
            let name = PTree::linear(n).encode();
            data.iter().position(|t| t.name == name).expect("linear tree present")
        })
        .collect();
    let mut mor_map: Vec<MorId> = Vec::with_capacity(delta.morphism_count());
    for m in 0..=max_vertices {
        for n in 0..=max_vertices {
            for v in super::monotone_maps(m, n) {
                let map: Vec<u16> = v.iter().map(|&x| x as u16).collect();
                mor_map.push(index[&(linear_idx[m as usize], linear_idx[n as usize], map)]);
            }
        }
    }
    let functor = FunctorData {
        obj_map: linear_idx.iter().map(|&i| objs[i]).collect(),
        mor_map,
    };

    Ok(ShapeCategory {
        kind: if planar {
            ShapeKind::PlanarTree
        } else {
            ShapeKind::Tree
        },
        delta: DeltaEmbedding {
            delta,
            functor,
            truncation: max_vertices,
        },
        reedy,
        crossed,
        truncation: max_vertices,
        face_gens,
        degen_gens,
        cat,
    })
}

fn is_planar_map(s: &TreeData, map: &[u16]) -> bool {
    for v in 0..s.n_nodes {
        if !s.is_internal(v) {
            continue;
        }
        let kids = &s.children[v];
        for w in kids.windows(2) {
            if map[w[0] as usize] >= map[w[1] as usize] {
                return false;
            }
        }
    }
    true
}

/// Planar rooted trees with ≤ max_vertices vertices (strict EZ-category).
pub fn build_planar_trees(max_vertices: u32) -> Result<ShapeCategory> {
    build_tree_category(max_vertices, true)
}

/// Trees with planar-structure automorphisms (crossed Ω_planar-group).
pub fn build_trees(max_vertices: u32) -> Result<ShapeCategory> {
    build_tree_category(max_vertices, false)
}
