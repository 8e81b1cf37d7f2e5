//! Connected components of the 1-skeleton and a deterministic spanning forest.

use crate::category::{ObjId, OneId, TwoCategory};
use crate::homotopy::path::{Path, Step};

/// Plain union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    /// Returns true when the two were in different classes.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        true
    }

    pub fn same(&mut self, a: u32, b: u32) -> bool {
        self.find(a) == self.find(b)
    }
}

/// A breadth-first spanning forest of the 1-skeleton, rooted at the
/// lexicographically least object of each component, neighbours explored
/// in 1-cell id order. Everything downstream that needs a canonical path
/// between two objects reads it off this forest, so the choice is fixed
/// once per category.
#[derive(Clone, Debug)]
pub struct SpanningForest {
    /// Component index per object.
    comp_of: Vec<usize>,
    /// Components ordered by their least object, objects ascending inside.
    components: Vec<Vec<ObjId>>,
    /// Per object: the step taken from its BFS parent, root has none.
    parent_step: Vec<Option<(ObjId, Step)>>,
    /// 1-cells used by some tree edge.
    tree_edge: Vec<bool>,
}

impl SpanningForest {
    pub fn components(&self) -> &[Vec<ObjId>] {
        &self.components
    }

    pub fn component_of(&self, x: ObjId) -> usize {
        self.comp_of[x.0 as usize]
    }

    pub fn same_component(&self, x: ObjId, y: ObjId) -> bool {
        self.comp_of[x.0 as usize] == self.comp_of[y.0 as usize]
    }

    pub fn root(&self, x: ObjId) -> ObjId {
        self.components[self.component_of(x)][0]
    }

    pub fn is_tree_edge(&self, f: OneId) -> bool {
        self.tree_edge[f.0 as usize]
    }

    /// The unique tree path from the component root down to `x`.
    pub fn path_from_root(&self, x: ObjId) -> Path {
        let mut rev = Vec::new();
        let mut at = x;
        while let Some((par, step)) = self.parent_step[at.0 as usize] {
            rev.push(step);
            at = par;
        }
        rev.reverse();
        Path {
            start: at,
            steps: rev,
        }
    }

    /// The tree geodesic from `x` to `y`: up from `x` and down to `y` with
    /// the common prefix through the root cancelled. None when the two
    /// objects sit in different components.
    pub fn geodesic(&self, x: ObjId, y: ObjId) -> Option<Path> {
        if !self.same_component(x, y) {
            return None;
        }
        let px = self.path_from_root(x).steps;
        let py = self.path_from_root(y).steps;
        let mut k = 0;
        while k < px.len() && k < py.len() && px[k] == py[k] {
            k += 1;
        }
        let mut steps: Vec<Step> = px[k..].iter().rev().map(|s| s.flip()).collect();
        steps.extend_from_slice(&py[k..]);
        Some(Path { start: x, steps })
    }
}

pub fn spanning_forest(cat: &TwoCategory) -> SpanningForest {
    let n = cat.n_objects();
    let mut comp_of = vec![usize::MAX; n];
    let mut parent_step: Vec<Option<(ObjId, Step)>> = vec![None; n];
    let mut tree_edge = vec![false; cat.n_one()];
    let mut components = Vec::new();

    // Objects are stored sorted by name, so ascending index order is
    // lexicographic order.
    for start in 0..n {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let ci = components.len();
        let mut member = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        comp_of[start] = ci;
        queue.push_back(ObjId(start as u32));
        while let Some(o) = queue.pop_front() {
            member.push(o);
            for f in cat.one_ids() {
                if cat.is_identity1(f) {
                    continue;
                }
                let cell = cat.one(f);
                for (next, step) in [
                    (cell.src == o).then(|| (cell.tgt, Step::fwd(f))),
                    (cell.tgt == o).then(|| (cell.src, Step::bwd(f))),
                ]
                .into_iter()
                .flatten()
                {
                    if comp_of[next.0 as usize] == usize::MAX {
                        comp_of[next.0 as usize] = ci;
                        parent_step[next.0 as usize] = Some((o, step));
                        tree_edge[f.0 as usize] = true;
                        queue.push_back(next);
                    }
                }
            }
        }
        member.sort();
        components.push(member);
    }
    SpanningForest {
        comp_of,
        components,
        parent_step,
        tree_edge,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{CategoryData, TwoCategory};
    use crate::fixtures;

    fn two_islands() -> TwoCategory {
        let mut d = CategoryData {
            objects: vec!["a".into(), "b".into(), "p".into(), "q".into()],
            one_cells: vec![
                ("ab".into(), "a".into(), "b".into()),
                ("pq".into(), "p".into(), "q".into()),
            ],
            ..CategoryData::default()
        };
        for o in ["a", "b", "p", "q"] {
            let id = format!("i_{o}");
            d.one_cells.push((id.clone(), o.into(), o.into()));
            d.identity1.push((o.into(), id));
        }
        d.comp1 = vec![
            ("i_b".into(), "ab".into(), "ab".into()),
            ("ab".into(), "i_a".into(), "ab".into()),
            ("i_q".into(), "pq".into(), "pq".into()),
            ("pq".into(), "i_p".into(), "pq".into()),
        ];
        TwoCategory::from_data(&d, true).unwrap()
    }

    #[test]
    fn islands_are_separate_components() {
        let c = two_islands();
        let forest = spanning_forest(&c);
        assert_eq!(forest.components().len(), 2);
        let a = c.find_object("a").unwrap();
        let q = c.find_object("q").unwrap();
        assert!(!forest.same_component(a, q));
        assert!(forest.geodesic(a, q).is_none());
    }

    #[test]
    fn geodesics_run_along_the_tree() {
        let c = fixtures::pseudo_circle();
        let forest = spanning_forest(&c);
        assert_eq!(forest.components().len(), 1);
        let x = c.find_object("x").unwrap();
        let y = c.find_object("y").unwrap();
        let g = forest.geodesic(x, y).unwrap();
        assert_eq!(g.start, x);
        assert_eq!(g.end(&c).unwrap(), y);
        // Root is `a`, the least object; x and y both hang off it, so the
        // geodesic is one step up and one step down.
        assert_eq!(g.len(), 2);
        for s in &g.steps {
            assert!(forest.is_tree_edge(s.cell));
        }
        let gg = forest.geodesic(x, x).unwrap();
        assert!(gg.is_empty());
    }

    #[test]
    fn tree_has_object_count_minus_components_edges() {
        for c in [
            fixtures::sphere(),
            fixtures::pseudo_circle(),
            fixtures::walking_pair(),
        ] {
            let forest = spanning_forest(&c);
            let used = (0..c.n_one()).filter(|i| forest.tree_edge[*i]).count();
            assert_eq!(used, c.n_objects() - forest.components().len());
        }
    }

    #[test]
    fn union_find_merges_classes() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert!(uf.same(0, 1));
        assert!(!uf.same(1, 3));
        uf.union(1, 4);
        assert!(uf.same(0, 3));
    }
}
