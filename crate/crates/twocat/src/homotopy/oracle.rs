//! Exhaustive bounded search over the elementary-move graph.
//!
//! This is the dumb cross-check for the presentation machinery: no spanning
//! trees, no words, just breadth-first search over every path of length up
//! to the bound, connecting paths whenever a single move relates them.

use crate::category::{ObjId, OneId, TwoCategory};
use crate::homotopy::components::UnionFind;
use crate::homotopy::path::{Path, Sign, Step};
use std::collections::HashMap;

/// Hard cap on the search bound: nodes are packed into a fixed array.
pub const MAX_BOUND: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleAnswer {
    Yes,
    NotWithinBound,
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum OracleError {
    #[error("bound {0} exceeds the supported maximum of {MAX_BOUND}")]
    BoundTooLarge(usize),
    #[error("path does not fit under the bound: length {len} > {bound}")]
    PathTooLong { len: usize, bound: usize },
    #[error("paths have different endpoints")]
    EndpointMismatch,
    #[error("broken path: {0}")]
    BrokenPath(#[from] crate::homotopy::path::PathError),
}

/// A path squeezed into a fixed-size, hashable node. Each packed step is
/// `cell_index << 1 | direction`. Unused slots are kept zeroed so equal
/// paths are bitwise-equal nodes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Node {
    start: u16,
    len: u8,
    steps: [u16; MAX_BOUND],
}

impl std::hash::Hash for Node {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let mut words = [0u64; 5];
        words[0] = (self.start as u64) << 8 | self.len as u64;
        for i in 0..MAX_BOUND {
            words[1 + i / 4] |= (self.steps[i] as u64) << (16 * (i % 4));
        }
        for w in words {
            state.write_u64(w);
        }
    }
}

/// Multiply-rotate hasher for packed nodes. The search visits millions of
/// nodes, and the default hasher dominates its profile.
#[derive(Default)]
struct NodeHasher(u64);

impl NodeHasher {
    fn add(&mut self, w: u64) {
        self.0 = (self.0.rotate_left(5) ^ w).wrapping_mul(0x517c_c1b7_2722_0a95);
    }
}

impl std::hash::Hasher for NodeHasher {
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.add(b as u64);
        }
    }
    fn write_u64(&mut self, w: u64) {
        self.add(w);
    }
    fn finish(&self) -> u64 {
        self.0
    }
}

type NodeMap = HashMap<Node, u32, std::hash::BuildHasherDefault<NodeHasher>>;

impl Node {
    fn from_path(p: &Path) -> Node {
        debug_assert!(p.steps.len() <= MAX_BOUND);
        let mut steps = [0u16; MAX_BOUND];
        for (i, s) in p.steps.iter().enumerate() {
            steps[i] = (s.cell.0 as u16) << 1 | (s.sign == Sign::Bwd) as u16;
        }
        Node {
            start: p.start.0 as u16,
            len: p.steps.len() as u8,
            steps,
        }
    }

    fn step(&self, i: usize) -> Step {
        let raw = self.steps[i];
        Step {
            sign: if raw & 1 == 0 { Sign::Fwd } else { Sign::Bwd },
            cell: OneId((raw >> 1) as u32),
        }
    }

    fn to_path(self) -> Path {
        Path {
            start: ObjId(self.start as u32),
            steps: (0..self.len as usize).map(|i| self.step(i)).collect(),
        }
    }

    fn splice(&self, at: usize, remove: usize, insert: &[Step]) -> Node {
        let mut out = *self;
        let old_len = self.len as usize;
        let new_len = old_len - remove + insert.len();
        debug_assert!(new_len <= MAX_BOUND);
        let mut k = at;
        for s in insert {
            out.steps[k] = (s.cell.0 as u16) << 1 | (s.sign == Sign::Bwd) as u16;
            k += 1;
        }
        for j in at + remove..old_len {
            out.steps[k] = self.steps[j];
            k += 1;
        }
        for slot in out.steps[k..].iter_mut() {
            *slot = 0;
        }
        out.len = new_len as u8;
        out
    }
}

/// Precomputed factorisations: for each 1-cell `h`, the pairs `(g, f)` with
/// `comp1(g, f) = h`.
pub struct CompositeIndex {
    pairs: Vec<Vec<(OneId, OneId)>>,
}

impl CompositeIndex {
    pub fn new(cat: &TwoCategory) -> CompositeIndex {
        let mut pairs = vec![Vec::new(); cat.n_one()];
        for g in cat.one_ids() {
            for f in cat.one_ids() {
                if let Some(h) = cat.comp1(g, f) {
                    pairs[h.0 as usize].push((g, f));
                }
            }
        }
        CompositeIndex { pairs }
    }

    pub fn factor_pairs(&self, h: OneId) -> &[(OneId, OneId)] {
        &self.pairs[h.0 as usize]
    }
}

/// Calls `emit` with every path one elementary move away from `node`,
/// respecting the length bound for the growing moves.
fn for_each_successor(
    cat: &TwoCategory,
    idx: &CompositeIndex,
    node: &Node,
    bound: usize,
    mut emit: impl FnMut(Node),
) {
    let len = node.len as usize;
    // Object at every position along the path.
    let mut objs = [ObjId(0); MAX_BOUND + 1];
    objs[0] = ObjId(node.start as u32);
    for i in 0..len {
        objs[i + 1] = node
            .step(i)
            .lead(cat, objs[i])
            .expect("oracle node must chain");
    }

    for i in 0..len {
        let s = node.step(i);
        // Moves 1 and 2: drop an identity step.
        if cat.is_identity1(s.cell) {
            emit(node.splice(i, 1, &[]));
        }
        // Moves 3 and 4 applied: fuse two equally signed steps.
        if i + 1 < len {
            let t = node.step(i + 1);
            if s.sign == Sign::Fwd && t.sign == Sign::Fwd {
                if let Some(h) = cat.comp1(t.cell, s.cell) {
                    emit(node.splice(i, 2, &[Step::fwd(h)]));
                }
            }
            if s.sign == Sign::Bwd && t.sign == Sign::Bwd {
                if let Some(h) = cat.comp1(s.cell, t.cell) {
                    emit(node.splice(i, 2, &[Step::bwd(h)]));
                }
            }
        }
        // Moves 3 and 4 unapplied: split one step into two factors.
        if len < bound {
            for &(g, f) in idx.factor_pairs(s.cell) {
                match s.sign {
                    Sign::Fwd => emit(node.splice(i, 1, &[Step::fwd(f), Step::fwd(g)])),
                    Sign::Bwd => emit(node.splice(i, 1, &[Step::bwd(g), Step::bwd(f)])),
                }
            }
        }
        // Move 5 in both directions, scanning candidate replacements.
        if i + 1 < len {
            let t = node.step(i + 1);
            let (o0, o1, o2) = (objs[i], objs[i + 1], objs[i + 2]);
            if s.sign == Sign::Bwd && t.sign == Sign::Fwd {
                // -u +v  =>  +u' -v'
                let (u, v) = (s.cell, t.cell);
                debug_assert_eq!(cat.one(u).src, o1);
                for &u2 in cat.ones_from(o0) {
                    let lhs = cat.comp1(u2, u);
                    for &v2 in cat.ones_from(o2) {
                        if cat.one(v2).tgt != cat.one(u2).tgt {
                            continue;
                        }
                        let (Some(l), Some(r)) = (lhs, cat.comp1(v2, v)) else {
                            continue;
                        };
                        if cat.has_two_between(l, r) {
                            emit(node.splice(i, 2, &[Step::fwd(u2), Step::bwd(v2)]));
                        }
                    }
                }
            }
            if s.sign == Sign::Fwd && t.sign == Sign::Bwd {
                // +u' -v'  =>  -u +v
                let (u2, v2) = (s.cell, t.cell);
                for &u in cat.ones_into(o0) {
                    let lhs = cat.comp1(u2, u);
                    let a1 = cat.one(u).src;
                    for &v in cat.ones_from(a1) {
                        if cat.one(v).tgt != o2 {
                            continue;
                        }
                        let (Some(l), Some(r)) = (lhs, cat.comp1(v2, v)) else {
                            continue;
                        };
                        if cat.has_two_between(l, r) {
                            emit(node.splice(i, 2, &[Step::bwd(u), Step::fwd(v)]));
                        }
                    }
                }
            }
        }
    }
    // Moves 1 and 2 unapplied: insert an identity step anywhere.
    if len < bound {
        for (pos, &o) in objs.iter().enumerate().take(len + 1) {
            if let Some(id) = cat.id1(o) {
                emit(node.splice(pos, 0, &[Step::fwd(id)]));
                emit(node.splice(pos, 0, &[Step::bwd(id)]));
            }
        }
    }
}

/// All single-move neighbours of a path, as plain paths. Used by the tests
/// to tie this enumeration to `elementary_step`.
pub fn move_neighbours(
    cat: &TwoCategory,
    p: &Path,
    bound: usize,
) -> Result<Vec<Path>, OracleError> {
    if bound > MAX_BOUND {
        return Err(OracleError::BoundTooLarge(bound));
    }
    if p.steps.len() > bound {
        return Err(OracleError::PathTooLong {
            len: p.steps.len(),
            bound,
        });
    }
    p.check(cat)?;
    let idx = CompositeIndex::new(cat);
    let mut out = Vec::new();
    for_each_successor(cat, &idx, &Node::from_path(p), bound, |n| {
        out.push(n.to_path())
    });
    out.sort_by_key(|q| format!("{}", q.display(cat)));
    out.dedup();
    Ok(out)
}

/// Outcome of a multi-source exploration: which seed paths ended up in the
/// same component of the bounded move graph.
pub struct Exploration {
    class_of_seed: Vec<u32>,
    uf: UnionFind,
    pub nodes_visited: usize,
}

impl Exploration {
    pub fn connected(&mut self, i: usize, j: usize) -> bool {
        let (a, b) = (self.class_of_seed[i], self.class_of_seed[j]);
        self.uf.same(a, b)
    }
}

/// Breadth-first search seeded with all given paths at once. Search trees
/// that touch get merged, so connectivity queries between any two seeds
/// come out of one pass. `stop_when` allows early exit (checked whenever
/// two classes merge); pass `None` to exhaust the graph.
pub fn explore(
    cat: &TwoCategory,
    seeds: &[Path],
    bound: usize,
    mut stop_when: Option<&mut dyn FnMut(&mut Exploration) -> bool>,
) -> Result<Exploration, OracleError> {
    if bound > MAX_BOUND {
        return Err(OracleError::BoundTooLarge(bound));
    }
    for p in seeds {
        if p.steps.len() > bound {
            return Err(OracleError::PathTooLong {
                len: p.steps.len(),
                bound,
            });
        }
        p.check(cat)?;
    }
    let idx = CompositeIndex::new(cat);

    let mut label: NodeMap = NodeMap::default();
    let mut queue = std::collections::VecDeque::new();
    let mut exp = Exploration {
        class_of_seed: Vec::with_capacity(seeds.len()),
        uf: UnionFind::new(seeds.len()),
        nodes_visited: 0,
    };
    for (si, p) in seeds.iter().enumerate() {
        let n = Node::from_path(p);
        match label.get(&n) {
            Some(&c) => {
                exp.uf.union(c, si as u32);
                exp.class_of_seed.push(c);
            }
            None => {
                label.insert(n, si as u32);
                queue.push_back(n);
                exp.class_of_seed.push(si as u32);
            }
        }
    }
    if let Some(f) = stop_when.as_deref_mut() {
        if f(&mut exp) {
            return Ok(exp);
        }
    }

    while let Some(n) = queue.pop_front() {
        exp.nodes_visited += 1;
        let c = label[&n];
        let mut merged = false;
        for_each_successor(cat, &idx, &n, bound, |m| match label.get(&m) {
            Some(&c2) => {
                if exp.uf.union(c, c2) {
                    merged = true;
                }
            }
            None => {
                label.insert(m, c);
                queue.push_back(m);
            }
        });
        if merged {
            if let Some(f) = stop_when.as_deref_mut() {
                if f(&mut exp) {
                    return Ok(exp);
                }
            }
        }
    }
    Ok(exp)
}

/// Decides whether two parallel paths are homotopic using at most
/// `bound`-length intermediaries. `NotWithinBound` is not a negative
/// certificate, only exhaustion of the bounded graph.
pub fn homotopic_bounded(
    cat: &TwoCategory,
    p: &Path,
    q: &Path,
    bound: usize,
) -> Result<OracleAnswer, OracleError> {
    if p.start != q.start || p.end(cat)? != q.end(cat)? {
        return Err(OracleError::EndpointMismatch);
    }
    let seeds = [p.clone(), q.clone()];
    let mut hit = false;
    let mut stop = |e: &mut Exploration| {
        hit = e.connected(0, 1);
        hit
    };
    explore(cat, &seeds, bound, Some(&mut stop))?;
    Ok(if hit {
        OracleAnswer::Yes
    } else {
        OracleAnswer::NotWithinBound
    })
}
