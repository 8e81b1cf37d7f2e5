//! Slice construction over a 2-functor.
//!
//! For a functor `F : C -> B` and an object `b` of `B`, the slice has
//!
//! * objects `(i, f)` with `f : b -> F i`,
//! * 1-cells `(u, mu) : (i, f) -> (i', f')` with `u : i -> i'` and
//!   `mu : f' => F(u) . f`,
//! * 2-cells all `alpha : u => v` of `C` satisfying
//!   `vcomp(rwhisker(F(alpha), f), mu) = nu`.
//!
//! The result is itself a tabulated category (the carrier), plus decode
//! tables back to the constituent cells. Carrier ids are pipe-joined:
//! `i|f`, `u|mu|i|f` (1-cells carry their source pair, because `(u, mu)`
//! alone does not determine it) and `alpha|<src>|<tgt>`.

use crate::category::{CategoryData, ObjId, OneId, TwoCategory, TwoFunctor, TwoId};
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct SliceCategory {
    pub carrier: TwoCategory,
    /// The base object, in the codomain of the sliced functor.
    pub base: ObjId,
    obj_pairs: Vec<(ObjId, OneId)>,
    one_pairs: Vec<(OneId, TwoId)>,
    two_alphas: Vec<TwoId>,
    obj_lookup: HashMap<(ObjId, OneId), ObjId>,
    one_lookup: HashMap<(ObjId, OneId, TwoId), OneId>,
    two_lookup: HashMap<(OneId, OneId, TwoId), TwoId>,
}

impl SliceCategory {
    /// The pair `(i, f)` behind a carrier object.
    pub fn obj_pair(&self, o: ObjId) -> (ObjId, OneId) {
        self.obj_pairs[o.0 as usize]
    }

    /// The pair `(u, mu)` behind a carrier 1-cell.
    pub fn one_pair(&self, m: OneId) -> (OneId, TwoId) {
        self.one_pairs[m.0 as usize]
    }

    /// The underlying 2-cell of the domain category behind a carrier 2-cell.
    pub fn two_alpha(&self, t: TwoId) -> TwoId {
        self.two_alphas[t.0 as usize]
    }

    pub fn find_obj(&self, i: ObjId, f: OneId) -> Option<ObjId> {
        self.obj_lookup.get(&(i, f)).copied()
    }

    /// Carrier 1-cell with the given source carrier object and data.
    pub fn find_one(&self, src: ObjId, u: OneId, mu: TwoId) -> Option<OneId> {
        self.one_lookup.get(&(src, u, mu)).copied()
    }

    /// Carrier 2-cell between two carrier 1-cells with the given payload.
    pub fn find_two(&self, src: OneId, tgt: OneId, alpha: TwoId) -> Option<TwoId> {
        self.two_lookup.get(&(src, tgt, alpha)).copied()
    }
}

/// Builds the slice of `fun` at `base`. The carrier is assembled cell by
/// cell from the defining conditions; nothing is auto-completed.
pub fn slice_category(fun: &TwoFunctor, base: ObjId) -> SliceCategory {
    let c = &fun.dom;
    let b = &fun.cod;
    let mut data = CategoryData::default();

    // Objects: all (i, f : base -> F i).
    let mut objs: Vec<(ObjId, OneId, String)> = Vec::new();
    for i in c.objects() {
        let fi = fun.fob_req(i);
        for f in b.hom_one(base, fi) {
            let id = format!("{}|{}", c.object_name(i), b.one(f).id);
            objs.push((i, f, id));
        }
    }
    for (_, _, id) in &objs {
        data.objects.push(id.clone());
    }

    // 1-cells: (u, mu) between each pair of slice objects.
    struct One {
        id: String,
        u: OneId,
        mu: TwoId,
        src: usize,
        tgt: usize,
    }
    let mut ones: Vec<One> = Vec::new();
    for (si, &(i, f, ref sid)) in objs.iter().enumerate() {
        for (ti, &(j, f2, _)) in objs.iter().enumerate() {
            for u in c.hom_one(i, j) {
                let fu = fun.fone_req(u);
                let Some(fuf) = b.comp1(fu, f) else { continue };
                for &mu in b.twos_between(f2, fuf) {
                    let id = format!("{}|{}|{}", c.one(u).id, b.two(mu).id, sid);
                    ones.push(One {
                        id,
                        u,
                        mu,
                        src: si,
                        tgt: ti,
                    });
                }
            }
        }
    }
    for o in &ones {
        data.one_cells
            .push((o.id.clone(), objs[o.src].2.clone(), objs[o.tgt].2.clone()));
    }

    // Identity 1-cells: (id_i, id2(f)).
    for (i, f, sid) in &objs {
        let u = c.id1_req(*i);
        let mu = b.id2_req(*f);
        let id = format!("{}|{}|{}", c.one(u).id, b.two(mu).id, sid);
        data.identity1.push((sid.clone(), id));
    }

    // Composition of 1-cells: second factor's mu gets glued on with a
    // left whisker by F of the second leg.
    let one_idx: HashMap<(usize, OneId, TwoId), usize> = ones
        .iter()
        .enumerate()
        .map(|(k, o)| ((o.src, o.u, o.mu), k))
        .collect();
    let one_at = |si: usize, u: OneId, mu: TwoId, _ones: &[One]| -> usize {
        *one_idx
            .get(&(si, u, mu))
            .expect("slice composite must exist")
    };
    for a in &ones {
        for a2 in &ones {
            if a2.src != a.tgt {
                continue;
            }
            let u12 = c.comp1_req(a2.u, a.u);
            let fu2 = fun.fone_req(a2.u);
            let mu12 = b.vcomp_req(b.lwhisker_req(fu2, a.mu), a2.mu);
            let k = one_at(a.src, u12, mu12, &ones);
            data.comp1
                .push((a2.id.clone(), a.id.clone(), ones[k].id.clone()));
        }
    }

    // 2-cells: alpha : u => v whose pasting against mu yields nu.
    struct Two {
        id: String,
        alpha: TwoId,
        src: usize,
        tgt: usize,
    }
    let mut twos: Vec<Two> = Vec::new();
    for (si, s) in ones.iter().enumerate() {
        for (ti, t) in ones.iter().enumerate() {
            if s.src != t.src || s.tgt != t.tgt {
                continue;
            }
            let f = objs[s.src].1;
            for &alpha in c.twos_between(s.u, t.u) {
                let fa = fun.ftwo_req(alpha);
                let whiskered = b.rwhisker_req(fa, f);
                if b.vcomp_req(whiskered, s.mu) != t.mu {
                    continue;
                }
                let id = format!("{}|{}|{}", c.two(alpha).id, s.id, t.id);
                twos.push(Two {
                    id,
                    alpha,
                    src: si,
                    tgt: ti,
                });
            }
        }
    }
    for t in &twos {
        data.two_cells
            .push((t.id.clone(), ones[t.src].id.clone(), ones[t.tgt].id.clone()));
    }

    let two_idx: HashMap<(usize, usize, TwoId), usize> = twos
        .iter()
        .enumerate()
        .map(|(k, t)| ((t.src, t.tgt, t.alpha), k))
        .collect();
    let two_at = |src: usize, tgt: usize, alpha: TwoId, _twos: &[Two]| -> usize {
        *two_idx
            .get(&(src, tgt, alpha))
            .expect("slice 2-cell must exist")
    };

    // Identity 2-cells.
    for (oi, o) in ones.iter().enumerate() {
        let a = c.id2_req(o.u);
        let k = two_at(oi, oi, a, &twos);
        data.identity2.push((o.id.clone(), twos[k].id.clone()));
    }
    // Vertical composition and inverses are inherited from the domain.
    for s in &twos {
        for t in &twos {
            if t.src != s.tgt {
                continue;
            }
            let a = c.vcomp_req(t.alpha, s.alpha);
            let k = two_at(s.src, t.tgt, a, &twos);
            data.vcomp
                .push((t.id.clone(), s.id.clone(), twos[k].id.clone()));
        }
    }
    for s in &twos {
        let a = c.inv2_req(s.alpha);
        let k = two_at(s.tgt, s.src, a, &twos);
        data.inv2.push((s.id.clone(), twos[k].id.clone()));
    }
    // Whiskers: apply the domain whisker, recompute the boundary composites.
    for (ti, t) in twos.iter().enumerate() {
        let (s1, t1) = (&ones[t.src], &ones[t.tgt]);
        for m in &ones {
            if m.src == t1.tgt {
                // post-compose with m
                let a = c.lwhisker_req(m.u, t.alpha);
                let src_k = {
                    let u12 = c.comp1_req(m.u, s1.u);
                    let mu12 = b.vcomp_req(b.lwhisker_req(fun.fone_req(m.u), s1.mu), m.mu);
                    one_at(s1.src, u12, mu12, &ones)
                };
                let tgt_k = {
                    let u12 = c.comp1_req(m.u, t1.u);
                    let mu12 = b.vcomp_req(b.lwhisker_req(fun.fone_req(m.u), t1.mu), m.mu);
                    one_at(t1.src, u12, mu12, &ones)
                };
                let k = two_at(src_k, tgt_k, a, &twos);
                data.lwhisker
                    .push((m.id.clone(), twos[ti].id.clone(), twos[k].id.clone()));
            }
            if m.tgt == s1.src {
                // pre-compose with m
                let a = c.rwhisker_req(t.alpha, m.u);
                let src_k = {
                    let u12 = c.comp1_req(s1.u, m.u);
                    let mu12 = b.vcomp_req(b.lwhisker_req(fun.fone_req(s1.u), m.mu), s1.mu);
                    one_at(m.src, u12, mu12, &ones)
                };
                let tgt_k = {
                    let u12 = c.comp1_req(t1.u, m.u);
                    let mu12 = b.vcomp_req(b.lwhisker_req(fun.fone_req(t1.u), m.mu), t1.mu);
                    one_at(m.src, u12, mu12, &ones)
                };
                let k = two_at(src_k, tgt_k, a, &twos);
                data.rwhisker
                    .push((twos[ti].id.clone(), m.id.clone(), twos[k].id.clone()));
            }
        }
    }

    let carrier = TwoCategory::from_data(&data, false)
        .expect("slice construction must produce a well-formed table");

    // Decode tables, indexed by the carrier's sorted cell order.
    let mut obj_pairs = vec![(ObjId(0), OneId(0)); objs.len()];
    let mut obj_lookup = HashMap::new();
    for (i, f, id) in &objs {
        let o = carrier.find_object(id).unwrap();
        obj_pairs[o.0 as usize] = (*i, *f);
        obj_lookup.insert((*i, *f), o);
    }
    let mut one_pairs = vec![(OneId(0), TwoId(0)); ones.len()];
    let mut one_lookup = HashMap::new();
    for o in &ones {
        let m = carrier.find_one(&o.id).unwrap();
        one_pairs[m.0 as usize] = (o.u, o.mu);
        one_lookup.insert((carrier.find_object(&objs[o.src].2).unwrap(), o.u, o.mu), m);
    }
    let mut two_alphas = vec![TwoId(0); twos.len()];
    let mut two_lookup = HashMap::new();
    for t in &twos {
        let tt = carrier.find_two(&t.id).unwrap();
        two_alphas[tt.0 as usize] = t.alpha;
        let s = carrier.find_one(&ones[t.src].id).unwrap();
        let g = carrier.find_one(&ones[t.tgt].id).unwrap();
        two_lookup.insert((s, g, t.alpha), tt);
    }

    SliceCategory {
        carrier,
        base,
        obj_pairs,
        one_pairs,
        two_alphas,
        obj_lookup,
        one_lookup,
        two_lookup,
    }
}

/// The projection functor from the slice carrier to the domain of `fun`,
/// sending `(i, f)` to `i`, `(u, mu)` to `u` and a slice 2-cell to its
/// underlying 2-cell.
pub fn forgetful(sl: &SliceCategory, fun: &TwoFunctor) -> TwoFunctor {
    let carrier = &sl.carrier;
    let mut obj_map = Vec::with_capacity(carrier.n_objects());
    for o in carrier.objects() {
        obj_map.push(Some(sl.obj_pair(o).0));
    }
    let mut one_map = Vec::with_capacity(carrier.n_one());
    for m in carrier.one_ids() {
        one_map.push(Some(sl.one_pair(m).0));
    }
    let mut two_map = Vec::with_capacity(carrier.n_two());
    for t in carrier.two_ids() {
        two_map.push(Some(sl.two_alpha(t)));
    }
    TwoFunctor {
        dom: carrier.clone(),
        cod: fun.dom.clone(),
        obj_map,
        one_map,
        two_map,
    }
}

/// Base change along `u : b -> b'` in the codomain: a functor from the
/// slice at `b'` to the slice at `b` given by precomposition with `u`.
pub fn base_change(
    fun: &TwoFunctor,
    u: OneId,
    at_tgt: &SliceCategory,
    at_src: &SliceCategory,
) -> TwoFunctor {
    let b = &fun.cod;
    let cell = b.one(u);
    assert_eq!(
        at_tgt.base, cell.tgt,
        "first slice must sit at the target of u"
    );
    assert_eq!(
        at_src.base, cell.src,
        "second slice must sit at the source of u"
    );
    let dom = &at_tgt.carrier;

    let mut obj_map = Vec::with_capacity(dom.n_objects());
    for o in dom.objects() {
        let (i, chi) = at_tgt.obj_pair(o);
        let f = b.comp1_req(chi, u);
        obj_map.push(Some(
            at_src.find_obj(i, f).expect("base change image object"),
        ));
    }
    let mut one_map = Vec::with_capacity(dom.n_one());
    for m in dom.one_ids() {
        let (v, nu) = at_tgt.one_pair(m);
        let src = dom.one(m).src;
        let src2 = obj_map[src.0 as usize].unwrap();
        let nu2 = b.rwhisker_req(nu, u);
        one_map.push(Some(
            at_src
                .find_one(src2, v, nu2)
                .expect("base change image 1-cell"),
        ));
    }
    let mut two_map = Vec::with_capacity(dom.n_two());
    for t in dom.two_ids() {
        let alpha = at_tgt.two_alpha(t);
        let c2 = dom.two(t);
        let s = one_map[c2.src.0 as usize].unwrap();
        let g = one_map[c2.tgt.0 as usize].unwrap();
        two_map.push(Some(
            at_src
                .find_two(s, g, alpha)
                .expect("base change image 2-cell"),
        ));
    }
    TwoFunctor {
        dom: dom.clone(),
        cod: at_src.carrier.clone(),
        obj_map,
        one_map,
        two_map,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::TwoFunctor;
    use crate::fixtures;
    use crate::validate::{validate_two_category, validate_two_functor};

    fn identity_slice(cat: &TwoCategory, at: &str) -> SliceCategory {
        let f = TwoFunctor::identity(cat);
        let b = cat.find_object(at).unwrap();
        slice_category(&f, b)
    }

    #[test]
    fn object_count_sums_hom_sets() {
        for cat in [
            fixtures::terminal(),
            fixtures::walking_pair(),
            fixtures::sphere(),
        ] {
            let fun = TwoFunctor::identity(&cat);
            for bo in cat.objects() {
                let sl = slice_category(&fun, bo);
                let expect: usize = cat.objects().map(|i| cat.hom_one(bo, i).len()).sum();
                assert_eq!(sl.carrier.n_objects(), expect);
            }
        }
    }

    #[test]
    fn sphere_identity_slice_at_x_has_known_shape() {
        let cat = fixtures::sphere();
        let sl = identity_slice(&cat, "x");
        // Objects: (x, i_x), (y, f), (y, g).
        assert_eq!(sl.carrier.n_objects(), 3);
        let x = cat.find_object("x").unwrap();
        let y = cat.find_object("y").unwrap();
        let ix = cat.find_one("i_x").unwrap();
        let f = cat.find_one("f").unwrap();
        let g = cat.find_one("g").unwrap();
        let o_ix = sl.find_obj(x, ix).unwrap();
        let o_f = sl.find_obj(y, f).unwrap();
        assert!(sl.find_obj(y, g).is_some());
        // From (x, i_x) to (y, f): u in {f, g}, mu : f => u. Two choices of
        // mu for each u in the sphere, so four 1-cells.
        assert_eq!(sl.carrier.hom_one(o_ix, o_f).len(), 4);
        let _ = (o_ix, o_f, g);
    }

    #[test]
    fn slice_carriers_validate() {
        for cat in [
            fixtures::terminal(),
            fixtures::walking_pair(),
            fixtures::sphere(),
            fixtures::pseudo_circle(),
        ] {
            let fun = TwoFunctor::identity(&cat);
            for bo in cat.objects() {
                let sl = slice_category(&fun, bo);
                let rep = validate_two_category(&sl.carrier);
                assert!(
                    rep.ok,
                    "slice at {} of {:?} fails: {:?}",
                    cat.object_name(bo),
                    cat.object_name(bo),
                    rep.violations.first()
                );
            }
        }
    }

    #[test]
    fn collapse_functor_slices_validate_too() {
        let fun = fixtures::walking_pair_collapse();
        for bo in fun.cod.objects() {
            let sl = slice_category(&fun, bo);
            assert!(validate_two_category(&sl.carrier).ok);
            let forget = forgetful(&sl, &fun);
            assert!(validate_two_functor(&forget).ok);
        }
    }

    #[test]
    fn empty_slice_when_no_arrows_hit_the_image() {
        // Walking pair, slice of the identity at y: only i_y lands in
        // Hom(y, y) and nothing maps y -> x.
        let cat = fixtures::walking_pair();
        let sl = identity_slice(&cat, "y");
        assert_eq!(sl.carrier.n_objects(), 1);
        // Slice of the inclusion {x} -> pair at y is empty: no 1-cell y -> x.
        let x = cat.find_object("x").unwrap();
        let (sub, incl) = fixtures::full_subcategory(&cat, &[x]);
        let _ = sub;
        let y = cat.find_object("y").unwrap();
        let sl = slice_category(&incl, y);
        assert_eq!(sl.carrier.n_objects(), 0);
    }

    #[test]
    fn base_change_lands_in_the_other_slice_and_validates() {
        let cat = fixtures::sphere();
        let fun = TwoFunctor::identity(&cat);
        let x = cat.find_object("x").unwrap();
        let y = cat.find_object("y").unwrap();
        let f = cat.find_one("f").unwrap();
        let sl_y = slice_category(&fun, y);
        let sl_x = slice_category(&fun, x);
        let bc = base_change(&fun, f, &sl_y, &sl_x);
        assert!(validate_two_functor(&bc).ok);
        // (y, i_y) goes to (y, comp1(i_y, f)) = (y, f).
        let iy = cat.find_one("i_y").unwrap();
        let src = sl_y.find_obj(y, iy).unwrap();
        let img = bc.fob_req(src);
        assert_eq!(sl_x.obj_pair(img), (y, f));
    }

    #[test]
    fn forgetful_projects_onto_the_domain() {
        let cat = fixtures::sphere();
        let fun = TwoFunctor::identity(&cat);
        let x = cat.find_object("x").unwrap();
        let sl = slice_category(&fun, x);
        let forget = forgetful(&sl, &fun);
        assert!(validate_two_functor(&forget).ok);
        for o in sl.carrier.objects() {
            assert_eq!(forget.fob_req(o), sl.obj_pair(o).0);
        }
    }
}
