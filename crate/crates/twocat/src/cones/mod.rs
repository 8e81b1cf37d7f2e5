//! Diagrams of finite categories indexed by a two-category, cones over
//! them, and modifications between cones. Everything is table-backed, so
//! the coherence conditions are checked by exact equality.

use crate::category::{ObjId, OneId, TwoCategory, TwoFunctor, TwoId};
use crate::fincat::{
    compose_functors, lwhisker_nat, rwhisker_nat, validate_fin_functor, validate_fincat,
    validate_nat_trans, vcomp_nat, FinCat, FinFunctor, FinMor, NatTrans,
};

pub mod colimit;
pub mod transport;

pub use colimit::{
    c_t, c_t_inverse, c_t_modification, enumerate_functors_to, enumerate_modifications,
    enumerate_nat_transs, modification_from_nat, pi1_category, Pi1Cat,
};
pub use transport::{
    canonical_choice, choice_comparison, epsilon, eta, j_of_path, restrict_cone,
    restrict_modification, slice_leg, transport_cone, transport_context, transport_modification,
    validate_choice, whisker_compat_check, ChoiceFunction, TransportContext, TransportError,
};

/// A strict assignment of finite categories to the objects of an index
/// two-category, functors to its 1-cells and natural isos to its 2-cells.
#[derive(Clone, PartialEq, Debug)]
pub struct Diagram {
    pub index: TwoCategory,
    pub cats: Vec<FinCat>,
    pub funs: Vec<FinFunctor>,
    pub nats: Vec<NatTrans>,
}

impl Diagram {
    pub fn cat(&self, b: ObjId) -> &FinCat {
        &self.cats[b.0 as usize]
    }
    pub fn fun(&self, f: OneId) -> &FinFunctor {
        &self.funs[f.0 as usize]
    }
    pub fn nat(&self, t: TwoId) -> &NatTrans {
        &self.nats[t.0 as usize]
    }
}

pub fn validate_diagram(d: &Diagram) -> Vec<String> {
    let mut errs = Vec::new();
    let b = &d.index;
    if d.cats.len() != b.n_objects() || d.funs.len() != b.n_one() || d.nats.len() != b.n_two() {
        errs.push("assignment tables have wrong length".to_string());
        return errs;
    }
    for (i, c) in d.cats.iter().enumerate() {
        for e in validate_fincat(c) {
            errs.push(format!(
                "value at `{}`: {e}",
                b.object_name(ObjId(i as u32))
            ));
        }
    }
    for f in b.one_ids() {
        let cell = b.one(f);
        let fv = d.fun(f);
        if fv.dom != *d.cat(cell.src) || fv.cod != *d.cat(cell.tgt) {
            errs.push(format!("value of `{}` has wrong boundary", cell.id));
            continue;
        }
        for e in validate_fin_functor(fv) {
            errs.push(format!("value of `{}`: {e}", cell.id));
        }
    }
    for t in b.two_ids() {
        let cell = b.two(t);
        let tv = d.nat(t);
        if tv.dom != *d.fun(cell.src) || tv.cod != *d.fun(cell.tgt) {
            errs.push(format!("value of `{}` has wrong boundary", cell.id));
            continue;
        }
        for e in validate_nat_trans(tv) {
            errs.push(format!("value of `{}`: {e}", cell.id));
        }
        if !tv.is_iso() {
            errs.push(format!("value of `{}` is not invertible", cell.id));
        }
    }
    if !errs.is_empty() {
        return errs;
    }
    // Strictness: the assignment must send every stored operation of the
    // index to the corresponding table operation, on the nose.
    for o in b.objects() {
        if *d.fun(b.id1_req(o)) != FinFunctor::identity(d.cat(o)) {
            errs.push(format!(
                "identity of `{}` not sent to the identity functor",
                b.object_name(o)
            ));
        }
    }
    for g in b.one_ids() {
        for f in b.one_ids() {
            if let Some(h) = b.comp1(g, f) {
                if *d.fun(h) != compose_functors(d.fun(g), d.fun(f)) {
                    errs.push(format!(
                        "composite `{}` not sent to the composite functor",
                        b.one(h).id
                    ));
                }
            }
        }
    }
    for f in b.one_ids() {
        if *d.nat(b.id2_req(f)) != NatTrans::identity(d.fun(f)) {
            errs.push(format!(
                "identity 2-cell on `{}` not sent to the identity",
                b.one(f).id
            ));
        }
    }
    for y in b.two_ids() {
        for x in b.two_ids() {
            if let Some(z) = b.vcomp(y, x) {
                if *d.nat(z) != vcomp_nat(d.nat(y), d.nat(x)) {
                    errs.push(format!(
                        "vertical composite `{}` not preserved",
                        b.two(z).id
                    ));
                }
            }
        }
    }
    for f in b.one_ids() {
        for t in b.two_ids() {
            if let Some(r) = b.lwhisker(f, t) {
                if *d.nat(r) != lwhisker_nat(d.fun(f), d.nat(t)) {
                    errs.push(format!("left whisker `{}` not preserved", b.two(r).id));
                }
            }
            if let Some(r) = b.rwhisker(t, f) {
                if *d.nat(r) != rwhisker_nat(d.nat(t), d.fun(f)) {
                    errs.push(format!("right whisker `{}` not preserved", b.two(r).id));
                }
            }
        }
    }
    for t in b.two_ids() {
        let inv = b.inv2_req(t);
        if d.nat(t).inverse().as_ref() != Some(d.nat(inv)) {
            errs.push(format!("inverse of `{}` not preserved", b.two(t).id));
        }
    }
    errs
}

/// Reindex a diagram along a functor into its index.
pub fn restrict_diagram(d: &Diagram, fun: &TwoFunctor) -> Diagram {
    assert_eq!(
        fun.cod, d.index,
        "functor does not land in the diagram index"
    );
    Diagram {
        index: fun.dom.clone(),
        cats: fun
            .dom
            .objects()
            .map(|a| d.cat(fun.fob_req(a)).clone())
            .collect(),
        funs: fun
            .dom
            .one_ids()
            .map(|u| d.fun(fun.fone_req(u)).clone())
            .collect(),
        nats: fun
            .dom
            .two_ids()
            .map(|t| d.nat(fun.ftwo_req(t)).clone())
            .collect(),
    }
}

/// The covariant hom diagram of `c` at `base`: each object `x` is sent to
/// the category of 1-cells `base -> x` with 2-cells between them, each
/// 1-cell acts by postcomposition and each 2-cell by whiskering.
pub fn arrow_diagram(c: &TwoCategory, base: ObjId) -> Diagram {
    let cats: Vec<FinCat> = c.objects().map(|x| hom_fincat(c, base, x)).collect();
    let mut funs = Vec::with_capacity(c.n_one());
    for u in c.one_ids() {
        let cell = c.one(u);
        let dom = &cats[cell.src.0 as usize];
        let cod = &cats[cell.tgt.0 as usize];
        let obj_map = c
            .hom_one(base, cell.src)
            .iter()
            .map(|&chi| hom_object_index(c, base, c.comp1_req(u, chi)))
            .collect();
        let mor_map = hom_two_cells(c, base, cell.src)
            .iter()
            .map(|&t| hom_morphism_index(c, base, c.lwhisker_req(u, t)))
            .collect();
        funs.push(FinFunctor {
            dom: dom.clone(),
            cod: cod.clone(),
            obj_map,
            mor_map,
        });
    }
    let mut nats = Vec::with_capacity(c.n_two());
    for t in c.two_ids() {
        let cell = c.two(t);
        let src_of_u = c.one(cell.src).src;
        let components = c
            .hom_one(base, src_of_u)
            .iter()
            .map(|&chi| hom_morphism_index(c, base, c.rwhisker_req(t, chi)))
            .collect();
        nats.push(NatTrans {
            dom: funs[cell.src.0 as usize].clone(),
            cod: funs[cell.tgt.0 as usize].clone(),
            components,
        });
    }
    Diagram {
        index: c.clone(),
        cats,
        funs,
        nats,
    }
}

/// Hom diagram of a functor: the arrow diagram at `base`, reindexed along
/// `fun`. Its index is the domain of `fun`.
pub fn hom_diagram(fun: &TwoFunctor, base: ObjId) -> Diagram {
    restrict_diagram(&arrow_diagram(&fun.cod, base), fun)
}

/// All 2-cells of `c` whose boundary 1-cells run `base -> x`, ascending.
pub fn hom_two_cells(c: &TwoCategory, base: ObjId, x: ObjId) -> Vec<TwoId> {
    c.two_ids()
        .filter(|&t| {
            let s = c.one(c.two(t).src);
            s.src == base && s.tgt == x
        })
        .collect()
}

/// Position of a 1-cell inside the hom list used by `arrow_diagram`.
pub fn hom_object_index(c: &TwoCategory, base: ObjId, chi: OneId) -> usize {
    c.hom_one(base, c.one(chi).tgt)
        .iter()
        .position(|&f| f == chi)
        .expect("1-cell not in the hom set")
}

/// Position of a 2-cell inside the morphism list used by `arrow_diagram`.
pub fn hom_morphism_index(c: &TwoCategory, base: ObjId, t: TwoId) -> usize {
    let x = c.one(c.two(t).src).tgt;
    hom_two_cells(c, base, x)
        .iter()
        .position(|&s| s == t)
        .expect("2-cell not in the hom category")
}

fn hom_fincat(c: &TwoCategory, base: ObjId, x: ObjId) -> FinCat {
    let obj_cells = c.hom_one(base, x);
    let mor_cells = hom_two_cells(c, base, x);
    let objects: Vec<String> = obj_cells.iter().map(|&f| c.one(f).id.clone()).collect();
    let morphisms: Vec<FinMor> = mor_cells
        .iter()
        .map(|&t| {
            let cell = c.two(t);
            FinMor {
                id: cell.id.clone(),
                src: obj_cells.iter().position(|&f| f == cell.src).unwrap(),
                tgt: obj_cells.iter().position(|&f| f == cell.tgt).unwrap(),
            }
        })
        .collect();
    let identity = obj_cells
        .iter()
        .map(|&f| mor_cells.iter().position(|&t| t == c.id2_req(f)).unwrap())
        .collect();
    let n = mor_cells.len();
    let mut comp = vec![None; n * n];
    for (gi, &g) in mor_cells.iter().enumerate() {
        for (fi, &f) in mor_cells.iter().enumerate() {
            if let Some(h) = c.vcomp(g, f) {
                comp[gi * n + fi] = mor_cells.iter().position(|&t| t == h);
            }
        }
    }
    FinCat {
        objects,
        morphisms,
        identity,
        comp,
    }
}

/// A cone over a diagram: a vertex, one leg out of each diagram value into
/// the vertex, and an invertible naturality square for each index 1-cell.
/// For `u : b -> b'` the square runs `legs[b'] . D(u) => legs[b]`.
#[derive(Clone, PartialEq, Debug)]
pub struct Cone {
    pub vertex: FinCat,
    pub legs: Vec<FinFunctor>,
    pub nat: Vec<NatTrans>,
}

impl Cone {
    pub fn leg(&self, b: ObjId) -> &FinFunctor {
        &self.legs[b.0 as usize]
    }
    pub fn square(&self, u: OneId) -> &NatTrans {
        &self.nat[u.0 as usize]
    }
}

pub fn validate_cone(d: &Diagram, c: &Cone) -> Vec<String> {
    let mut errs = Vec::new();
    let b = &d.index;
    if c.legs.len() != b.n_objects() || c.nat.len() != b.n_one() {
        errs.push("leg or square tables have wrong length".to_string());
        return errs;
    }
    for o in b.objects() {
        let leg = c.leg(o);
        if leg.dom != *d.cat(o) || leg.cod != c.vertex {
            errs.push(format!("leg at `{}` has wrong boundary", b.object_name(o)));
            continue;
        }
        for e in validate_fin_functor(leg) {
            errs.push(format!("leg at `{}`: {e}", b.object_name(o)));
        }
    }
    if !errs.is_empty() {
        return errs;
    }
    for u in b.one_ids() {
        let cell = b.one(u);
        let sq = c.square(u);
        let expect_dom = compose_functors(c.leg(cell.tgt), d.fun(u));
        if sq.dom != expect_dom || sq.cod != *c.leg(cell.src) {
            errs.push(format!("square at `{}` has wrong boundary", cell.id));
            continue;
        }
        for e in validate_nat_trans(sq) {
            errs.push(format!("square at `{}`: {e}", cell.id));
        }
        if !sq.is_iso() {
            errs.push(format!("square at `{}` is not invertible", cell.id));
        }
    }
    if !errs.is_empty() {
        return errs;
    }
    for o in b.objects() {
        if *c.square(b.id1_req(o)) != NatTrans::identity(c.leg(o)) {
            errs.push(format!("unit coherence fails at `{}`", b.object_name(o)));
        }
    }
    for w in b.one_ids() {
        for u in b.one_ids() {
            if let Some(wu) = b.comp1(w, u) {
                let expect = vcomp_nat(c.square(u), &rwhisker_nat(c.square(w), d.fun(u)));
                if *c.square(wu) != expect {
                    errs.push(format!(
                        "composition coherence fails at `{}` . `{}`",
                        b.one(w).id,
                        b.one(u).id
                    ));
                }
            }
        }
    }
    for t in b.two_ids() {
        let cell = b.two(t);
        let tgt_obj = b.one(cell.src).tgt;
        let expect = vcomp_nat(c.square(cell.tgt), &lwhisker_nat(c.leg(tgt_obj), d.nat(t)));
        if *c.square(cell.src) != expect {
            errs.push(format!("2-cell compatibility fails at `{}`", cell.id));
        }
    }
    errs
}

/// A morphism of cones over the same diagram and vertex: one natural
/// transformation per leg, compatible with the squares. Components are
/// not required to be invertible.
#[derive(Clone, PartialEq, Debug)]
pub struct Modification {
    pub components: Vec<NatTrans>,
}

impl Modification {
    pub fn at(&self, b: ObjId) -> &NatTrans {
        &self.components[b.0 as usize]
    }

    pub fn is_invertible(&self) -> bool {
        self.components.iter().all(|c| c.is_iso())
    }
}

pub fn validate_modification(d: &Diagram, src: &Cone, tgt: &Cone, m: &Modification) -> Vec<String> {
    let mut errs = Vec::new();
    let b = &d.index;
    if src.vertex != tgt.vertex {
        errs.push("cones have different vertices".to_string());
        return errs;
    }
    if m.components.len() != b.n_objects() {
        errs.push("component table has wrong length".to_string());
        return errs;
    }
    for o in b.objects() {
        let comp = m.at(o);
        if comp.dom != *src.leg(o) || comp.cod != *tgt.leg(o) {
            errs.push(format!(
                "component at `{}` has wrong boundary",
                b.object_name(o)
            ));
            continue;
        }
        for e in validate_nat_trans(comp) {
            errs.push(format!("component at `{}`: {e}", b.object_name(o)));
        }
    }
    if !errs.is_empty() {
        return errs;
    }
    for u in b.one_ids() {
        let cell = b.one(u);
        let lhs = vcomp_nat(tgt.square(u), &rwhisker_nat(m.at(cell.tgt), d.fun(u)));
        let rhs = vcomp_nat(m.at(cell.src), src.square(u));
        if lhs != rhs {
            errs.push(format!("square compatibility fails at `{}`", cell.id));
        }
    }
    errs
}

/// Vertical composite of modifications, `b` after `a`.
pub fn compose_modifications(b: &Modification, a: &Modification) -> Modification {
    Modification {
        components: a
            .components
            .iter()
            .zip(&b.components)
            .map(|(x, y)| vcomp_nat(y, x))
            .collect(),
    }
}

pub fn invert_modification(m: &Modification) -> Option<Modification> {
    let components = m
        .components
        .iter()
        .map(|c| c.inverse())
        .collect::<Option<Vec<_>>>()?;
    Some(Modification { components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn arrow_diagrams_of_fixtures_validate() {
        for c in [
            fixtures::terminal(),
            fixtures::walking_pair(),
            fixtures::sphere(),
            fixtures::pseudo_circle(),
            fixtures::codiscrete(&["a", "b", "c"]),
        ] {
            for b in c.objects() {
                let d = arrow_diagram(&c, b);
                let errs = validate_diagram(&d);
                assert!(errs.is_empty(), "at {}: {errs:?}", c.object_name(b));
            }
        }
    }

    #[test]
    fn hom_diagram_is_a_restriction() {
        let f = fixtures::walking_pair_collapse();
        let b = f.cod.find_object("pt").unwrap();
        let d = hom_diagram(&f, b);
        assert_eq!(d.index, f.dom);
        assert!(validate_diagram(&d).is_empty());
        // The value at an object is the hom category onto its image.
        let a0 = f.dom.find_object("x").unwrap();
        assert_eq!(d.cat(a0).objects, vec!["i_pt".to_string()]);
    }

    #[test]
    fn sphere_hom_category_has_the_right_shape() {
        let c = fixtures::sphere();
        let x = c.find_object("x").unwrap();
        let y = c.find_object("y").unwrap();
        let d = arrow_diagram(&c, x);
        let at_y = d.cat(y);
        assert_eq!(at_y.objects, vec!["f".to_string(), "g".to_string()]);
        assert_eq!(at_y.n_mor(), 8);
        assert!(validate_fincat(at_y).is_empty());
        // f and g are isomorphic there via al.
        let al = at_y.find_mor("al").unwrap();
        assert!(at_y.is_iso(al));
    }

    #[test]
    fn identity_cone_over_a_one_point_diagram() {
        let c = fixtures::terminal();
        let b0 = ObjId(0);
        let d = arrow_diagram(&c, b0);
        let cone = Cone {
            vertex: d.cat(b0).clone(),
            legs: vec![FinFunctor::identity(d.cat(b0))],
            nat: vec![NatTrans::identity(&FinFunctor::identity(d.cat(b0)))],
        };
        assert!(validate_cone(&d, &cone).is_empty());
        let m = Modification {
            components: vec![NatTrans::identity(&cone.legs[0])],
        };
        assert!(validate_modification(&d, &cone, &cone, &m).is_empty());
        assert!(m.is_invertible());
    }

    #[test]
    fn malformed_cone_is_rejected() {
        let c = fixtures::sphere();
        let x = c.find_object("x").unwrap();
        let d = arrow_diagram(&c, x);
        let vertex = d.cat(x).clone();
        let legs: Vec<FinFunctor> = c
            .objects()
            .map(|_o| FinFunctor {
                dom: FinCat {
                    objects: vec![],
                    morphisms: vec![],
                    identity: vec![],
                    comp: vec![],
                },
                cod: vertex.clone(),
                obj_map: vec![],
                mor_map: vec![],
            })
            .collect();
        let cone = Cone {
            vertex,
            legs,
            nat: vec![],
        };
        assert!(!validate_cone(&d, &cone).is_empty());
    }
}
