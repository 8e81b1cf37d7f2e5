//! Edge-path presentations of the fundamental group, one per component.
//!
//! Generators are the non-identity 1-cells left out of the spanning tree.
//! Tree edges and identity 1-cells read as the empty word. Relators come
//! from identities, binary composites and 2-cells, freely reduced, with
//! empties dropped and duplicates removed.

use crate::category::{ObjId, OneId, TwoCategory};
use crate::homotopy::components::SpanningForest;
use crate::homotopy::path::{Path, Sign};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Letters are nonzero integers: `k+1` is generator `k`, negative its inverse.
pub type Word = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn word_string(&self, w: &[i32]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter()
            .map(|&l| {
                let g = &self.generators[(l.abs() - 1) as usize];
                if l > 0 {
                    g.clone()
                } else {
                    format!("{g}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Cancels adjacent inverse letters until none remain.
pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Conjugation-trims a relator: `x w x^-1` reads as `w`.
pub fn cyclic_reduce(w: &[i32]) -> Word {
    let mut v = free_reduce(w);
    while v.len() >= 2 && *v.first().unwrap() == -*v.last().unwrap() {
        v.pop();
        v.remove(0);
    }
    v
}

/// The presentation of one component together with the letter map used to
/// translate paths into words.
#[derive(Clone, Debug)]
pub struct ComponentPresentation {
    pub objects: Vec<ObjId>,
    pub presentation: GroupPresentation,
    /// Generator index per 1-cell; tree edges and identities map to None.
    gen_of: HashMap<OneId, usize>,
    pub gen_cells: Vec<OneId>,
}

impl ComponentPresentation {
    /// The freely reduced word a loop (or any path) spells in the generators.
    pub fn path_word(&self, p: &Path) -> Word {
        let mut w = Vec::new();
        for s in &p.steps {
            if let Some(&g) = self.gen_of.get(&s.cell) {
                let letter = (g + 1) as i32;
                w.push(match s.sign {
                    Sign::Fwd => letter,
                    Sign::Bwd => -letter,
                });
            }
        }
        free_reduce(&w)
    }

    /// Exponent sums per generator: the image of a path in the
    /// abelianisation, before quotienting by relators.
    pub fn abelian_image(&self, p: &Path) -> Vec<i64> {
        let mut v = vec![0i64; self.presentation.generators.len()];
        for &l in &self.path_word(p) {
            v[(l.abs() - 1) as usize] += l.signum() as i64;
        }
        v
    }
}

/// All component presentations of a category, in component order.
pub fn component_presentations(
    cat: &TwoCategory,
    forest: &SpanningForest,
) -> Vec<ComponentPresentation> {
    forest
        .components()
        .iter()
        .map(|objs| present_component(cat, forest, objs))
        .collect()
}

fn present_component(
    cat: &TwoCategory,
    forest: &SpanningForest,
    objs: &[ObjId],
) -> ComponentPresentation {
    let ci = forest.component_of(objs[0]);
    let in_comp = |o: ObjId| forest.component_of(o) == ci;

    let mut gen_cells = Vec::new();
    let mut gen_of = HashMap::new();
    for f in cat.one_ids() {
        let cell = cat.one(f);
        if !in_comp(cell.src) || cat.is_identity1(f) || forest.is_tree_edge(f) {
            continue;
        }
        gen_of.insert(f, gen_cells.len());
        gen_cells.push(f);
    }

    let letter = |f: OneId| -> Option<i32> { gen_of.get(&f).map(|&g| (g + 1) as i32) };
    let mut relators: Vec<Word> = Vec::new();
    let mut push = |w: Word| {
        let r = free_reduce(&w);
        if !r.is_empty() && !relators.contains(&r) {
            relators.push(r);
        }
    };

    // Identity 1-cells spell the empty word by fiat; their relators vanish.
    for &o in objs {
        if let Some(id) = cat.id1(o) {
            push(letter(id).into_iter().collect());
        }
    }
    // A composite reads as its factors: [f][g] = [comp1(g, f)].
    for f in cat.one_ids() {
        if !in_comp(cat.one(f).src) {
            continue;
        }
        for g in cat.one_ids() {
            let Some(h) = cat.comp1(g, f) else { continue };
            let w: Word = [letter(f), letter(g), letter(h).map(|l| -l)]
                .into_iter()
                .flatten()
                .collect();
            push(w);
        }
    }
    // A 2-cell identifies its boundary 1-cells.
    for t in cat.two_ids() {
        let two = cat.two(t);
        if !in_comp(cat.one(two.src).src) {
            continue;
        }
        let w: Word = [letter(two.src), letter(two.tgt).map(|l| -l)]
            .into_iter()
            .flatten()
            .collect();
        push(w);
    }

    let generators = gen_cells.iter().map(|&f| cat.one(f).id.clone()).collect();
    ComponentPresentation {
        objects: objs.to_vec(),
        presentation: GroupPresentation {
            generators,
            relators,
        },
        gen_of,
        gen_cells,
    }
}
