//! Tabulated finite strict (2,1)-categories and strict 2-functors.
//!
//! Every cell is listed explicitly and every composition table is stored in
//! full. Nothing is derived lazily: `comp1`, `vcomp`, the two whiskerings and
//! the 2-cell inverses are all data, and the validator checks the laws by
//! brute-force enumeration over these tables. Horizontal composition of
//! 2-cells is deliberately not stored; it is recovered by whiskering on both
//! sides, and the interchange law that makes this well-defined is one of the
//! checked laws.

use std::collections::HashMap;
use std::fmt;

/// Index of an object, after lexicographic sorting of object identifiers.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ObjId(pub u32);

/// Index of a 1-cell, after lexicographic sorting of 1-cell identifiers.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OneId(pub u32);

/// Index of a 2-cell, after lexicographic sorting of 2-cell identifiers.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TwoId(pub u32);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneCell {
    pub id: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoCell {
    pub id: String,
    /// Source 1-cell of the 2-cell.
    pub src: OneId,
    /// Target 1-cell of the 2-cell.
    pub tgt: OneId,
}

/// String-level description of a category, mirroring the text file format.
///
/// `comp1` entries are `(g, f, h)` with `h = g . f` (apply `f` first), and
/// `vcomp` entries are `(b, a, c)` with `c = b * a` (apply `a` first).
#[derive(Clone, Default, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub struct CategoryData {
    pub objects: Vec<String>,
    pub one_cells: Vec<(String, String, String)>,
    pub two_cells: Vec<(String, String, String)>,
    pub identity1: Vec<(String, String)>,
    pub identity2: Vec<(String, String)>,
    pub comp1: Vec<(String, String, String)>,
    pub vcomp: Vec<(String, String, String)>,
    pub inv2: Vec<(String, String)>,
    pub lwhisker: Vec<(String, String, String)>,
    pub rwhisker: Vec<(String, String, String)>,
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum BuildError {
    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("unknown {kind} id `{id}` in {context}")]
    UnknownId {
        kind: &'static str,
        id: String,
        context: String,
    },
    #[error("conflicting entries for {table} at ({key}): `{old}` vs `{new}`")]
    Conflict {
        table: &'static str,
        key: String,
        old: String,
        new: String,
    },
}

/// A finite strict (2,1)-category with fully tabulated structure.
///
/// Cells are stored sorted by identifier, so indices are lexicographic ranks
/// and every loop over them is deterministic. Table entries are `None` when
/// the corresponding datum was not supplied; the validator reports those as
/// totality violations rather than failing construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoCategory {
    objects: Vec<String>,
    one_cells: Vec<OneCell>,
    two_cells: Vec<TwoCell>,
    identity1: Vec<Option<OneId>>,
    identity2: Vec<Option<TwoId>>,
    inv2: Vec<Option<TwoId>>,
    comp1: Vec<Option<OneId>>,
    vcomp: Vec<Option<TwoId>>,
    lwhisker: Vec<Option<TwoId>>,
    rwhisker: Vec<Option<TwoId>>,
    out_one: Vec<Vec<OneId>>,
    in_one: Vec<Vec<OneId>>,
    twos_by_boundary: HashMap<(OneId, OneId), Vec<TwoId>>,
}

impl TwoCategory {
    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }
    pub fn n_one(&self) -> usize {
        self.one_cells.len()
    }
    pub fn n_two(&self) -> usize {
        self.two_cells.len()
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o.0 as usize]
    }
    pub fn one(&self, f: OneId) -> &OneCell {
        &self.one_cells[f.0 as usize]
    }
    pub fn two(&self, t: TwoId) -> &TwoCell {
        &self.two_cells[t.0 as usize]
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len()).map(|i| ObjId(i as u32))
    }
    pub fn one_ids(&self) -> impl Iterator<Item = OneId> + '_ {
        (0..self.one_cells.len()).map(|i| OneId(i as u32))
    }
    pub fn two_ids(&self) -> impl Iterator<Item = TwoId> + '_ {
        (0..self.two_cells.len()).map(|i| TwoId(i as u32))
    }

    pub fn find_object(&self, id: &str) -> Option<ObjId> {
        self.objects
            .binary_search_by(|o| o.as_str().cmp(id))
            .ok()
            .map(|i| ObjId(i as u32))
    }
    pub fn find_one(&self, id: &str) -> Option<OneId> {
        self.one_cells
            .binary_search_by(|c| c.id.as_str().cmp(id))
            .ok()
            .map(|i| OneId(i as u32))
    }
    pub fn find_two(&self, id: &str) -> Option<TwoId> {
        self.two_cells
            .binary_search_by(|c| c.id.as_str().cmp(id))
            .ok()
            .map(|i| TwoId(i as u32))
    }

    pub fn id1(&self, a: ObjId) -> Option<OneId> {
        self.identity1[a.0 as usize]
    }
    pub fn id2(&self, f: OneId) -> Option<TwoId> {
        self.identity2[f.0 as usize]
    }
    pub fn inv2(&self, t: TwoId) -> Option<TwoId> {
        self.inv2[t.0 as usize]
    }
    /// `comp1(g, f)` is `g` after `f`.
    pub fn comp1(&self, g: OneId, f: OneId) -> Option<OneId> {
        self.comp1[g.0 as usize * self.n_one() + f.0 as usize]
    }
    /// `vcomp(b, a)` is `b` after `a`, vertically.
    pub fn vcomp(&self, b: TwoId, a: TwoId) -> Option<TwoId> {
        self.vcomp[b.0 as usize * self.n_two() + a.0 as usize]
    }
    /// Post-whiskering `f . t`: defined when `src f` is the target object of
    /// the boundary of `t`.
    pub fn lwhisker(&self, f: OneId, t: TwoId) -> Option<TwoId> {
        self.lwhisker[f.0 as usize * self.n_two() + t.0 as usize]
    }
    /// Pre-whiskering `t . f`: defined when `tgt f` is the source object of
    /// the boundary of `t`.
    pub fn rwhisker(&self, t: TwoId, f: OneId) -> Option<TwoId> {
        self.rwhisker[t.0 as usize * self.n_one() + f.0 as usize]
    }

    pub fn id1_req(&self, a: ObjId) -> OneId {
        self.id1(a)
            .unwrap_or_else(|| panic!("missing identity1 at object `{}`", self.object_name(a)))
    }
    pub fn id2_req(&self, f: OneId) -> TwoId {
        self.id2(f)
            .unwrap_or_else(|| panic!("missing identity2 at 1-cell `{}`", self.one(f).id))
    }
    pub fn inv2_req(&self, t: TwoId) -> TwoId {
        self.inv2(t)
            .unwrap_or_else(|| panic!("missing inverse of 2-cell `{}`", self.two(t).id))
    }
    pub fn comp1_req(&self, g: OneId, f: OneId) -> OneId {
        self.comp1(g, f).unwrap_or_else(|| {
            panic!(
                "missing comp1 entry `{} . {}`",
                self.one(g).id,
                self.one(f).id
            )
        })
    }
    pub fn vcomp_req(&self, b: TwoId, a: TwoId) -> TwoId {
        self.vcomp(b, a).unwrap_or_else(|| {
            panic!(
                "missing vcomp entry `{} * {}`",
                self.two(b).id,
                self.two(a).id
            )
        })
    }
    pub fn lwhisker_req(&self, f: OneId, t: TwoId) -> TwoId {
        self.lwhisker(f, t).unwrap_or_else(|| {
            panic!(
                "missing lwhisker entry `{} {}`",
                self.one(f).id,
                self.two(t).id
            )
        })
    }
    pub fn rwhisker_req(&self, t: TwoId, f: OneId) -> TwoId {
        self.rwhisker(t, f).unwrap_or_else(|| {
            panic!(
                "missing rwhisker entry `{} {}`",
                self.two(t).id,
                self.one(f).id
            )
        })
    }

    /// 1-cells with source `a`, ascending.
    pub fn ones_from(&self, a: ObjId) -> &[OneId] {
        &self.out_one[a.0 as usize]
    }
    /// 1-cells with target `a`, ascending.
    pub fn ones_into(&self, a: ObjId) -> &[OneId] {
        &self.in_one[a.0 as usize]
    }
    /// 1-cells from `a` to `b`, ascending.
    pub fn hom_one(&self, a: ObjId, b: ObjId) -> Vec<OneId> {
        self.out_one[a.0 as usize]
            .iter()
            .copied()
            .filter(|&f| self.one(f).tgt == b)
            .collect()
    }
    /// 2-cells from 1-cell `f` to 1-cell `g`, ascending.
    pub fn twos_between(&self, f: OneId, g: OneId) -> &[TwoId] {
        self.twos_by_boundary
            .get(&(f, g))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }
    pub fn has_two_between(&self, f: OneId, g: OneId) -> bool {
        self.twos_by_boundary.contains_key(&(f, g))
    }

    pub fn is_identity1(&self, f: OneId) -> bool {
        self.identity1[self.one(f).src.0 as usize] == Some(f)
    }
    pub fn is_identity2(&self, t: TwoId) -> bool {
        self.identity2[self.two(t).src.0 as usize] == Some(t)
    }

    /// Whether two 1-cells are parallel (same source and target object).
    pub fn parallel_one(&self, f: OneId, g: OneId) -> bool {
        let (f, g) = (self.one(f), self.one(g));
        f.src == g.src && f.tgt == g.tgt
    }

    /// The opposite category: 1-cells reversed, `comp1` transposed, whiskers
    /// swapped. 2-cell directions and vertical composition are untouched.
    pub fn op(&self) -> TwoCategory {
        let n1 = self.n_one();
        let n2 = self.n_two();
        let one_cells: Vec<OneCell> = self
            .one_cells
            .iter()
            .map(|c| OneCell {
                id: c.id.clone(),
                src: c.tgt,
                tgt: c.src,
            })
            .collect();
        let mut comp1 = vec![None; n1 * n1];
        for g in 0..n1 {
            for f in 0..n1 {
                comp1[g * n1 + f] = self.comp1[f * n1 + g];
            }
        }
        let mut lwhisker = vec![None; n1 * n2];
        let mut rwhisker = vec![None; n2 * n1];
        for f in 0..n1 {
            for t in 0..n2 {
                lwhisker[f * n2 + t] = self.rwhisker[t * n1 + f];
                rwhisker[t * n1 + f] = self.lwhisker[f * n2 + t];
            }
        }
        let mut out_one = vec![Vec::new(); self.n_objects()];
        let mut in_one = vec![Vec::new(); self.n_objects()];
        for (i, c) in one_cells.iter().enumerate() {
            out_one[c.src.0 as usize].push(OneId(i as u32));
            in_one[c.tgt.0 as usize].push(OneId(i as u32));
        }
        TwoCategory {
            objects: self.objects.clone(),
            one_cells,
            two_cells: self.two_cells.clone(),
            identity1: self.identity1.clone(),
            identity2: self.identity2.clone(),
            inv2: self.inv2.clone(),
            comp1,
            vcomp: self.vcomp.clone(),
            lwhisker,
            rwhisker,
            out_one,
            in_one,
            twos_by_boundary: self.twos_by_boundary.clone(),
        }
    }

    /// Full string-level dump, with every table entry explicit.
    pub fn to_data(&self) -> CategoryData {
        let mut d = CategoryData {
            objects: self.objects.clone(),
            ..CategoryData::default()
        };
        for c in &self.one_cells {
            d.one_cells.push((
                c.id.clone(),
                self.object_name(c.src).to_string(),
                self.object_name(c.tgt).to_string(),
            ));
        }
        for c in &self.two_cells {
            d.two_cells.push((
                c.id.clone(),
                self.one(c.src).id.clone(),
                self.one(c.tgt).id.clone(),
            ));
        }
        for a in self.objects() {
            if let Some(f) = self.id1(a) {
                d.identity1
                    .push((self.object_name(a).to_string(), self.one(f).id.clone()));
            }
        }
        for f in self.one_ids() {
            if let Some(t) = self.id2(f) {
                d.identity2
                    .push((self.one(f).id.clone(), self.two(t).id.clone()));
            }
        }
        for g in self.one_ids() {
            for f in self.one_ids() {
                if let Some(h) = self.comp1(g, f) {
                    d.comp1.push((
                        self.one(g).id.clone(),
                        self.one(f).id.clone(),
                        self.one(h).id.clone(),
                    ));
                }
            }
        }
        for b in self.two_ids() {
            for a in self.two_ids() {
                if let Some(c) = self.vcomp(b, a) {
                    d.vcomp.push((
                        self.two(b).id.clone(),
                        self.two(a).id.clone(),
                        self.two(c).id.clone(),
                    ));
                }
            }
        }
        for t in self.two_ids() {
            if let Some(i) = self.inv2(t) {
                d.inv2
                    .push((self.two(t).id.clone(), self.two(i).id.clone()));
            }
        }
        for f in self.one_ids() {
            for t in self.two_ids() {
                if let Some(r) = self.lwhisker(f, t) {
                    d.lwhisker.push((
                        self.one(f).id.clone(),
                        self.two(t).id.clone(),
                        self.two(r).id.clone(),
                    ));
                }
            }
        }
        for t in self.two_ids() {
            for f in self.one_ids() {
                if let Some(r) = self.rwhisker(t, f) {
                    d.rwhisker.push((
                        self.two(t).id.clone(),
                        self.one(f).id.clone(),
                        self.two(r).id.clone(),
                    ));
                }
            }
        }
        d
    }

    /// Builds a category from string-level data. Identifiers are sorted, so
    /// the result does not depend on declaration order. With `auto_complete`
    /// set, table entries that are forced by identities are filled in; all
    /// other missing entries are left for the validator to report.
    pub fn from_data(
        data: &CategoryData,
        auto_complete: bool,
    ) -> Result<TwoCategory, Vec<BuildError>> {
        let mut errs = Vec::new();

        let mut objects = data.objects.clone();
        objects.sort();
        for w in objects.windows(2) {
            if w[0] == w[1] {
                errs.push(BuildError::DuplicateId {
                    kind: "object",
                    id: w[0].clone(),
                });
            }
        }
        objects.dedup();

        let mut one_names: Vec<&str> = data.one_cells.iter().map(|c| c.0.as_str()).collect();
        one_names.sort();
        for w in one_names.windows(2) {
            if w[0] == w[1] {
                errs.push(BuildError::DuplicateId {
                    kind: "1-cell",
                    id: w[0].to_string(),
                });
            }
        }
        let mut two_names: Vec<&str> = data.two_cells.iter().map(|c| c.0.as_str()).collect();
        two_names.sort();
        for w in two_names.windows(2) {
            if w[0] == w[1] {
                errs.push(BuildError::DuplicateId {
                    kind: "2-cell",
                    id: w[0].to_string(),
                });
            }
        }
        if !errs.is_empty() {
            return Err(errs);
        }

        let find_obj = |id: &str| objects.binary_search_by(|o| o.as_str().cmp(id)).ok();

        let mut one_cells = Vec::new();
        for (id, src, tgt) in &data.one_cells {
            let (s, t) = (find_obj(src), find_obj(tgt));
            if s.is_none() {
                errs.push(BuildError::UnknownId {
                    kind: "object",
                    id: src.clone(),
                    context: format!("mor {id}"),
                });
            }
            if t.is_none() {
                errs.push(BuildError::UnknownId {
                    kind: "object",
                    id: tgt.clone(),
                    context: format!("mor {id}"),
                });
            }
            if let (Some(s), Some(t)) = (s, t) {
                one_cells.push(OneCell {
                    id: id.clone(),
                    src: ObjId(s as u32),
                    tgt: ObjId(t as u32),
                });
            }
        }
        one_cells.sort_by(|a, b| a.id.cmp(&b.id));
        let find_one = |cells: &[OneCell], id: &str| {
            cells
                .binary_search_by(|c| c.id.as_str().cmp(id))
                .ok()
                .map(|i| OneId(i as u32))
        };

        let mut two_cells = Vec::new();
        for (id, src, tgt) in &data.two_cells {
            let (s, t) = (find_one(&one_cells, src), find_one(&one_cells, tgt));
            if s.is_none() {
                errs.push(BuildError::UnknownId {
                    kind: "1-cell",
                    id: src.clone(),
                    context: format!("cell {id}"),
                });
            }
            if t.is_none() {
                errs.push(BuildError::UnknownId {
                    kind: "1-cell",
                    id: tgt.clone(),
                    context: format!("cell {id}"),
                });
            }
            if let (Some(s), Some(t)) = (s, t) {
                two_cells.push(TwoCell {
                    id: id.clone(),
                    src: s,
                    tgt: t,
                });
            }
        }
        two_cells.sort_by(|a, b| a.id.cmp(&b.id));
        let find_two = |cells: &[TwoCell], id: &str| {
            cells
                .binary_search_by(|c| c.id.as_str().cmp(id))
                .ok()
                .map(|i| TwoId(i as u32))
        };
        if !errs.is_empty() {
            return Err(errs);
        }

        let n0 = objects.len();
        let n1 = one_cells.len();
        let n2 = two_cells.len();
        let mut identity1: Vec<Option<OneId>> = vec![None; n0];
        let mut identity2: Vec<Option<TwoId>> = vec![None; n1];
        let mut inv2: Vec<Option<TwoId>> = vec![None; n2];
        let mut comp1: Vec<Option<OneId>> = vec![None; n1 * n1];
        let mut vcomp: Vec<Option<TwoId>> = vec![None; n2 * n2];
        let mut lwhisker: Vec<Option<TwoId>> = vec![None; n1 * n2];
        let mut rwhisker: Vec<Option<TwoId>> = vec![None; n2 * n1];

        {
            let one_name = |f: OneId| one_cells[f.0 as usize].id.clone();
            let two_name = |t: TwoId| two_cells[t.0 as usize].id.clone();

            for (obj, cell) in &data.identity1 {
                match (find_obj(obj), find_one(&one_cells, cell)) {
                    (Some(a), Some(f)) => {
                        let slot = &mut identity1[a];
                        if let Some(old) = *slot {
                            if old != f {
                                errs.push(BuildError::Conflict {
                                    table: "id1",
                                    key: obj.clone(),
                                    old: one_name(old),
                                    new: cell.clone(),
                                });
                            }
                        } else {
                            *slot = Some(f);
                        }
                    }
                    (a, f) => {
                        if a.is_none() {
                            errs.push(BuildError::UnknownId {
                                kind: "object",
                                id: obj.clone(),
                                context: format!("id1 {obj}"),
                            });
                        }
                        if f.is_none() {
                            errs.push(BuildError::UnknownId {
                                kind: "1-cell",
                                id: cell.clone(),
                                context: format!("id1 {obj}"),
                            });
                        }
                    }
                }
            }
            for (cell, tc) in &data.identity2 {
                match (find_one(&one_cells, cell), find_two(&two_cells, tc)) {
                    (Some(f), Some(t)) => {
                        let slot = &mut identity2[f.0 as usize];
                        if let Some(old) = *slot {
                            if old != t {
                                errs.push(BuildError::Conflict {
                                    table: "id2",
                                    key: cell.clone(),
                                    old: two_name(old),
                                    new: tc.clone(),
                                });
                            }
                        } else {
                            *slot = Some(t);
                        }
                    }
                    (f, t) => {
                        if f.is_none() {
                            errs.push(BuildError::UnknownId {
                                kind: "1-cell",
                                id: cell.clone(),
                                context: format!("id2 {cell}"),
                            });
                        }
                        if t.is_none() {
                            errs.push(BuildError::UnknownId {
                                kind: "2-cell",
                                id: tc.clone(),
                                context: format!("id2 {cell}"),
                            });
                        }
                    }
                }
            }
            let resolve3_one =
                |g: &str, f: &str, h: &str, ctx: &str, errs: &mut Vec<BuildError>| {
                    let (a, b, c) = (
                        find_one(&one_cells, g),
                        find_one(&one_cells, f),
                        find_one(&one_cells, h),
                    );
                    for (x, id) in [(a, g), (b, f), (c, h)] {
                        if x.is_none() {
                            errs.push(BuildError::UnknownId {
                                kind: "1-cell",
                                id: id.to_string(),
                                context: ctx.to_string(),
                            });
                        }
                    }
                    match (a, b, c) {
                        (Some(a), Some(b), Some(c)) => Some((a, b, c)),
                        _ => None,
                    }
                };
            for (g, f, h) in &data.comp1 {
                if let Some((g, f, h)) =
                    resolve3_one(g, f, h, &format!("comp {g} . {f}"), &mut errs)
                {
                    let slot = &mut comp1[g.0 as usize * n1 + f.0 as usize];
                    if let Some(old) = *slot {
                        if old != h {
                            errs.push(BuildError::Conflict {
                                table: "comp",
                                key: format!("{} . {}", one_name(g), one_name(f)),
                                old: one_name(old),
                                new: one_name(h),
                            });
                        }
                    } else {
                        *slot = Some(h);
                    }
                }
            }
            let resolve3_two =
                |b: &str, a: &str, c: &str, ctx: &str, errs: &mut Vec<BuildError>| {
                    let (x, y, z) = (
                        find_two(&two_cells, b),
                        find_two(&two_cells, a),
                        find_two(&two_cells, c),
                    );
                    for (v, id) in [(x, b), (y, a), (z, c)] {
                        if v.is_none() {
                            errs.push(BuildError::UnknownId {
                                kind: "2-cell",
                                id: id.to_string(),
                                context: ctx.to_string(),
                            });
                        }
                    }
                    match (x, y, z) {
                        (Some(x), Some(y), Some(z)) => Some((x, y, z)),
                        _ => None,
                    }
                };
            for (b, a, c) in &data.vcomp {
                if let Some((b, a, c)) =
                    resolve3_two(b, a, c, &format!("vcomp {b} * {a}"), &mut errs)
                {
                    let slot = &mut vcomp[b.0 as usize * n2 + a.0 as usize];
                    if let Some(old) = *slot {
                        if old != c {
                            errs.push(BuildError::Conflict {
                                table: "vcomp",
                                key: format!("{} * {}", two_name(b), two_name(a)),
                                old: two_name(old),
                                new: two_name(c),
                            });
                        }
                    } else {
                        *slot = Some(c);
                    }
                }
            }
            for (t, i) in &data.inv2 {
                match (find_two(&two_cells, t), find_two(&two_cells, i)) {
                    (Some(t), Some(i)) => {
                        let slot = &mut inv2[t.0 as usize];
                        if let Some(old) = *slot {
                            if old != i {
                                errs.push(BuildError::Conflict {
                                    table: "inv",
                                    key: two_name(t),
                                    old: two_name(old),
                                    new: two_name(i),
                                });
                            }
                        } else {
                            *slot = Some(i);
                        }
                    }
                    (t0, i0) => {
                        if t0.is_none() {
                            errs.push(BuildError::UnknownId {
                                kind: "2-cell",
                                id: t.clone(),
                                context: format!("inv {t}"),
                            });
                        }
                        if i0.is_none() {
                            errs.push(BuildError::UnknownId {
                                kind: "2-cell",
                                id: i.clone(),
                                context: format!("inv {t}"),
                            });
                        }
                    }
                }
            }
            for (f, t, r) in &data.lwhisker {
                let (f0, t0, r0) = (
                    find_one(&one_cells, f),
                    find_two(&two_cells, t),
                    find_two(&two_cells, r),
                );
                if f0.is_none() {
                    errs.push(BuildError::UnknownId {
                        kind: "1-cell",
                        id: f.clone(),
                        context: format!("lw {f} {t}"),
                    });
                }
                for (v, id) in [(t0, t), (r0, r)] {
                    if v.is_none() {
                        errs.push(BuildError::UnknownId {
                            kind: "2-cell",
                            id: id.clone(),
                            context: format!("lw {f} {t}"),
                        });
                    }
                }
                if let (Some(f), Some(t), Some(r)) = (f0, t0, r0) {
                    let slot = &mut lwhisker[f.0 as usize * n2 + t.0 as usize];
                    if let Some(old) = *slot {
                        if old != r {
                            errs.push(BuildError::Conflict {
                                table: "lw",
                                key: format!("{} {}", one_name(f), two_name(t)),
                                old: two_name(old),
                                new: two_name(r),
                            });
                        }
                    } else {
                        *slot = Some(r);
                    }
                }
            }
            for (t, f, r) in &data.rwhisker {
                let (t0, f0, r0) = (
                    find_two(&two_cells, t),
                    find_one(&one_cells, f),
                    find_two(&two_cells, r),
                );
                if f0.is_none() {
                    errs.push(BuildError::UnknownId {
                        kind: "1-cell",
                        id: f.clone(),
                        context: format!("rw {t} {f}"),
                    });
                }
                for (v, id) in [(t0, t), (r0, r)] {
                    if v.is_none() {
                        errs.push(BuildError::UnknownId {
                            kind: "2-cell",
                            id: id.clone(),
                            context: format!("rw {t} {f}"),
                        });
                    }
                }
                if let (Some(t), Some(f), Some(r)) = (t0, f0, r0) {
                    let slot = &mut rwhisker[t.0 as usize * n1 + f.0 as usize];
                    if let Some(old) = *slot {
                        if old != r {
                            errs.push(BuildError::Conflict {
                                table: "rw",
                                key: format!("{} {}", two_name(t), one_name(f)),
                                old: two_name(old),
                                new: two_name(r),
                            });
                        }
                    } else {
                        *slot = Some(r);
                    }
                }
            }
        }
        if !errs.is_empty() {
            return Err(errs);
        }

        if auto_complete {
            // Entries forced by identities. Compositions first, since the
            // whisker rules below consult comp1.
            for f in 0..n1 {
                let cell = &one_cells[f];
                if let Some(i) = identity1[cell.src.0 as usize] {
                    let slot = &mut comp1[f * n1 + i.0 as usize];
                    if slot.is_none() {
                        *slot = Some(OneId(f as u32));
                    }
                }
                if let Some(i) = identity1[cell.tgt.0 as usize] {
                    let slot = &mut comp1[i.0 as usize * n1 + f];
                    if slot.is_none() {
                        *slot = Some(OneId(f as u32));
                    }
                }
            }
            for t in 0..n2 {
                let cell = &two_cells[t];
                if let Some(i) = identity2[cell.src.0 as usize] {
                    let slot = &mut vcomp[t * n2 + i.0 as usize];
                    if slot.is_none() {
                        *slot = Some(TwoId(t as u32));
                    }
                }
                if let Some(i) = identity2[cell.tgt.0 as usize] {
                    let slot = &mut vcomp[i.0 as usize * n2 + t];
                    if slot.is_none() {
                        *slot = Some(TwoId(t as u32));
                    }
                }
            }
            for &i in identity2.iter().flatten() {
                if inv2[i.0 as usize].is_none() {
                    inv2[i.0 as usize] = Some(i);
                }
            }
            // Whiskering an identity 2-cell gives the identity 2-cell of the
            // composite; whiskering by an identity 1-cell changes nothing.
            for f in 0..n1 {
                for g in 0..n1 {
                    if one_cells[g].tgt != one_cells[f].src {
                        continue;
                    }
                    if let (Some(ig), Some(h)) = (identity2[g], comp1[f * n1 + g]) {
                        if let Some(ih) = identity2[h.0 as usize] {
                            let slot = &mut lwhisker[f * n2 + ig.0 as usize];
                            if slot.is_none() {
                                *slot = Some(ih);
                            }
                        }
                    }
                }
            }
            for g in 0..n1 {
                for f in 0..n1 {
                    if one_cells[f].tgt != one_cells[g].src {
                        continue;
                    }
                    if let (Some(ig), Some(h)) = (identity2[g], comp1[g * n1 + f]) {
                        if let Some(ih) = identity2[h.0 as usize] {
                            let slot = &mut rwhisker[ig.0 as usize * n1 + f];
                            if slot.is_none() {
                                *slot = Some(ih);
                            }
                        }
                    }
                }
            }
            for t in 0..n2 {
                let tgt_obj = one_cells[two_cells[t].src.0 as usize].tgt;
                let src_obj = one_cells[two_cells[t].src.0 as usize].src;
                if let Some(i) = identity1[tgt_obj.0 as usize] {
                    let slot = &mut lwhisker[i.0 as usize * n2 + t];
                    if slot.is_none() {
                        *slot = Some(TwoId(t as u32));
                    }
                }
                if let Some(i) = identity1[src_obj.0 as usize] {
                    let slot = &mut rwhisker[t * n1 + i.0 as usize];
                    if slot.is_none() {
                        *slot = Some(TwoId(t as u32));
                    }
                }
            }
        }

        let mut out_one = vec![Vec::new(); n0];
        let mut in_one = vec![Vec::new(); n0];
        for (i, c) in one_cells.iter().enumerate() {
            out_one[c.src.0 as usize].push(OneId(i as u32));
            in_one[c.tgt.0 as usize].push(OneId(i as u32));
        }
        let mut twos_by_boundary: HashMap<(OneId, OneId), Vec<TwoId>> = HashMap::new();
        for (i, c) in two_cells.iter().enumerate() {
            twos_by_boundary
                .entry((c.src, c.tgt))
                .or_default()
                .push(TwoId(i as u32));
        }

        Ok(TwoCategory {
            objects,
            one_cells,
            two_cells,
            identity1,
            identity2,
            inv2,
            comp1,
            vcomp,
            lwhisker,
            rwhisker,
            out_one,
            in_one,
            twos_by_boundary,
        })
    }
}

impl fmt::Display for TwoCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "2-category ({} objects, {} 1-cells, {} 2-cells)",
            self.n_objects(),
            self.n_one(),
            self.n_two()
        )
    }
}

/// String-level description of a strict 2-functor.
#[derive(Clone, Default, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub struct FunctorData {
    pub objects: Vec<(String, String)>,
    pub one_cells: Vec<(String, String)>,
    pub two_cells: Vec<(String, String)>,
}

/// A strict 2-functor between tabulated categories, stored as total-or-absent
/// index maps. Missing assignments are validator violations, not build errors.
#[derive(Clone, PartialEq, Debug)]
pub struct TwoFunctor {
    pub dom: TwoCategory,
    pub cod: TwoCategory,
    pub obj_map: Vec<Option<ObjId>>,
    pub one_map: Vec<Option<OneId>>,
    pub two_map: Vec<Option<TwoId>>,
}

impl TwoFunctor {
    pub fn identity(c: &TwoCategory) -> TwoFunctor {
        TwoFunctor {
            dom: c.clone(),
            cod: c.clone(),
            obj_map: c.objects().map(Some).collect(),
            one_map: c.one_ids().map(Some).collect(),
            two_map: c.two_ids().map(Some).collect(),
        }
    }

    pub fn fob(&self, a: ObjId) -> Option<ObjId> {
        self.obj_map[a.0 as usize]
    }
    pub fn fone(&self, f: OneId) -> Option<OneId> {
        self.one_map[f.0 as usize]
    }
    pub fn ftwo(&self, t: TwoId) -> Option<TwoId> {
        self.two_map[t.0 as usize]
    }
    pub fn fob_req(&self, a: ObjId) -> ObjId {
        self.fob(a)
            .unwrap_or_else(|| panic!("object `{}` is not mapped", self.dom.object_name(a)))
    }
    pub fn fone_req(&self, f: OneId) -> OneId {
        self.fone(f)
            .unwrap_or_else(|| panic!("1-cell `{}` is not mapped", self.dom.one(f).id))
    }
    pub fn ftwo_req(&self, t: TwoId) -> TwoId {
        self.ftwo(t)
            .unwrap_or_else(|| panic!("2-cell `{}` is not mapped", self.dom.two(t).id))
    }

    /// The same assignment read as a functor between the opposite categories.
    pub fn op(&self) -> TwoFunctor {
        TwoFunctor {
            dom: self.dom.op(),
            cod: self.cod.op(),
            obj_map: self.obj_map.clone(),
            one_map: self.one_map.clone(),
            two_map: self.two_map.clone(),
        }
    }

    /// Builds a functor from string-level data. With `auto_complete`,
    /// assignments forced by identities (images of identity 1- and 2-cells)
    /// are filled in from the object and 1-cell maps.
    pub fn from_data(
        dom: &TwoCategory,
        cod: &TwoCategory,
        data: &FunctorData,
        auto_complete: bool,
    ) -> Result<TwoFunctor, Vec<BuildError>> {
        let mut errs = Vec::new();
        let mut obj_map: Vec<Option<ObjId>> = vec![None; dom.n_objects()];
        let mut one_map: Vec<Option<OneId>> = vec![None; dom.n_one()];
        let mut two_map: Vec<Option<TwoId>> = vec![None; dom.n_two()];

        for (a, b) in &data.objects {
            match (dom.find_object(a), cod.find_object(b)) {
                (Some(a0), Some(b0)) => {
                    if let Some(old) = obj_map[a0.0 as usize] {
                        if old != b0 {
                            errs.push(BuildError::Conflict {
                                table: "ob",
                                key: a.clone(),
                                old: cod.object_name(old).to_string(),
                                new: b.clone(),
                            });
                        }
                    } else {
                        obj_map[a0.0 as usize] = Some(b0);
                    }
                }
                (a0, b0) => {
                    if a0.is_none() {
                        errs.push(BuildError::UnknownId {
                            kind: "object",
                            id: a.clone(),
                            context: format!("ob {a}"),
                        });
                    }
                    if b0.is_none() {
                        errs.push(BuildError::UnknownId {
                            kind: "object",
                            id: b.clone(),
                            context: format!("ob {a}"),
                        });
                    }
                }
            }
        }
        for (f, g) in &data.one_cells {
            match (dom.find_one(f), cod.find_one(g)) {
                (Some(f0), Some(g0)) => {
                    if let Some(old) = one_map[f0.0 as usize] {
                        if old != g0 {
                            errs.push(BuildError::Conflict {
                                table: "m1",
                                key: f.clone(),
                                old: cod.one(old).id.clone(),
                                new: g.clone(),
                            });
                        }
                    } else {
                        one_map[f0.0 as usize] = Some(g0);
                    }
                }
                (f0, g0) => {
                    if f0.is_none() {
                        errs.push(BuildError::UnknownId {
                            kind: "1-cell",
                            id: f.clone(),
                            context: format!("m1 {f}"),
                        });
                    }
                    if g0.is_none() {
                        errs.push(BuildError::UnknownId {
                            kind: "1-cell",
                            id: g.clone(),
                            context: format!("m1 {f}"),
                        });
                    }
                }
            }
        }
        for (s, t) in &data.two_cells {
            match (dom.find_two(s), cod.find_two(t)) {
                (Some(s0), Some(t0)) => {
                    if let Some(old) = two_map[s0.0 as usize] {
                        if old != t0 {
                            errs.push(BuildError::Conflict {
                                table: "m2",
                                key: s.clone(),
                                old: cod.two(old).id.clone(),
                                new: t.clone(),
                            });
                        }
                    } else {
                        two_map[s0.0 as usize] = Some(t0);
                    }
                }
                (s0, t0) => {
                    if s0.is_none() {
                        errs.push(BuildError::UnknownId {
                            kind: "2-cell",
                            id: s.clone(),
                            context: format!("m2 {s}"),
                        });
                    }
                    if t0.is_none() {
                        errs.push(BuildError::UnknownId {
                            kind: "2-cell",
                            id: t.clone(),
                            context: format!("m2 {s}"),
                        });
                    }
                }
            }
        }
        if !errs.is_empty() {
            return Err(errs);
        }

        if auto_complete {
            for a in dom.objects() {
                if let (Some(i), Some(b)) = (dom.id1(a), obj_map[a.0 as usize]) {
                    if one_map[i.0 as usize].is_none() {
                        one_map[i.0 as usize] = cod.id1(b);
                    }
                }
            }
            for f in dom.one_ids() {
                if let (Some(i), Some(g)) = (dom.id2(f), one_map[f.0 as usize]) {
                    if two_map[i.0 as usize].is_none() {
                        two_map[i.0 as usize] = cod.id2(g);
                    }
                }
            }
        }

        Ok(TwoFunctor {
            dom: dom.clone(),
            cod: cod.clone(),
            obj_map,
            one_map,
            two_map,
        })
    }
}

/// The same functor between the opposite categories.
pub fn op_functor(f: &TwoFunctor) -> TwoFunctor {
    f.op()
}
