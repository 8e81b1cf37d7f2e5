//! The comparison between cones over a hom diagram and functors out of
//! the fundamental groupoid of the slice.
//!
//! When every slice component is certified simply connected, each ordered
//! same-component pair of slice objects carries exactly one homotopy class
//! of zig-zag paths, so the fundamental groupoid is a finite category with
//! one morphism per pair, represented by spanning-tree geodesics. A cone
//! over the hom diagram with vertex `T` then restricts to a functor out of
//! that groupoid, and the restriction is invertible; both directions and
//! the induced bijection on morphisms are computed below by exact tables.

use super::transport::TransportError;
use super::{
    hom_morphism_index, hom_object_index, hom_two_cells, validate_modification, Cone, Diagram,
    Modification,
};
use crate::category::{ObjId, TwoFunctor};
use crate::fincat::{compose_functors, validate_nat_trans, FinCat, FinFunctor, FinMor, NatTrans};
use crate::homotopy::path::Path;
use crate::homotopy::{Pi1Report, Sign, SpanningForest, Step, Verdict};
use crate::slice::SliceCategory;
use std::collections::HashMap;

/// The fundamental groupoid of a slice, tabulated: one morphism per
/// ordered pair of objects in the same component, with a geodesic
/// representative for each.
pub struct Pi1Cat {
    pub cat: FinCat,
    /// Endpoints of each morphism, parallel to `cat.morphisms`.
    pub pairs: Vec<(ObjId, ObjId)>,
    /// Spanning-tree representative of each morphism.
    pub geodesics: Vec<Path>,
    /// Connected components, each ascending.
    pub components: Vec<Vec<ObjId>>,
    lookup: HashMap<(u32, u32), usize>,
}

impl Pi1Cat {
    /// The unique morphism from `x` to `y`, when they are connected.
    pub fn class(&self, x: ObjId, y: ObjId) -> Option<usize> {
        self.lookup.get(&(x.0, y.0)).copied()
    }
}

/// Builds the fundamental groupoid. Refuses unless the report certifies
/// every component trivial, because only then is the morphism-per-pair
/// table honest.
pub fn pi1_category(
    fun: &TwoFunctor,
    sl: &SliceCategory,
    forest: &SpanningForest,
    report: &Pi1Report,
) -> Result<Pi1Cat, TransportError> {
    if report.simply_connected != Verdict::Trivial {
        return Err(TransportError::NotCertified {
            base: fun.cod.object_name(sl.base).to_string(),
        });
    }
    let carrier = &sl.carrier;
    let n = carrier.n_objects();
    let mut pairs = Vec::new();
    let mut geodesics = Vec::new();
    let mut lookup = HashMap::new();
    let mut morphisms = Vec::new();
    for x in 0..n as u32 {
        for y in 0..n as u32 {
            if forest.same_component(ObjId(x), ObjId(y)) {
                lookup.insert((x, y), pairs.len());
                geodesics.push(forest.geodesic(ObjId(x), ObjId(y)).expect("same component"));
                morphisms.push(FinMor {
                    id: format!(
                        "{}~{}",
                        carrier.object_name(ObjId(x)),
                        carrier.object_name(ObjId(y))
                    ),
                    src: x as usize,
                    tgt: y as usize,
                });
                pairs.push((ObjId(x), ObjId(y)));
            }
        }
    }
    let m = morphisms.len();
    let mut comp = vec![None; m * m];
    for (gi, &(gy, gz)) in pairs.iter().enumerate() {
        for (fi, &(fx, fy)) in pairs.iter().enumerate() {
            if fy == gy {
                comp[gi * m + fi] = Some(lookup[&(fx.0, gz.0)]);
            }
        }
    }
    let identity = (0..n as u32).map(|x| lookup[&(x, x)]).collect();
    let objects = (0..n as u32)
        .map(|x| carrier.object_name(ObjId(x)).to_string())
        .collect();
    Ok(Pi1Cat {
        cat: FinCat {
            objects,
            morphisms,
            identity,
            comp,
        },
        pairs,
        geodesics,
        components: forest.components().to_vec(),
        lookup,
    })
}

/// The morphism of the vertex induced by one slice step under a cone over
/// the hom diagram.
fn c_t_step(psi: &Cone, fun: &TwoFunctor, sl: &SliceCategory, step: Step) -> usize {
    let t = &psi.vertex;
    let b_cat = &fun.cod;
    let (u, mu) = sl.one_pair(step.cell);
    let cell = sl.carrier.one(step.cell);
    let (_, alpha) = sl.obj_pair(cell.src);
    let (a2, _) = sl.obj_pair(cell.tgt);
    let k = hom_object_index(b_cat, sl.base, alpha);
    // The square component runs from the leg at the far end of the cell,
    // evaluated at the pushed-forward 1-cell, back to the near leg.
    let comp_u = psi.square(u).components[k];
    match step.sign {
        Sign::Fwd => {
            let img = psi.leg(a2).mor_map[hom_morphism_index(b_cat, sl.base, b_cat.inv2_req(mu))];
            t.compose_req(img, t.inverse(comp_u).expect("square is invertible"))
        }
        Sign::Bwd => {
            let img = psi.leg(a2).mor_map[hom_morphism_index(b_cat, sl.base, mu)];
            t.compose_req(comp_u, img)
        }
    }
}

/// Restrict a cone over the hom diagram of `fun` at `sl.base` to a functor
/// out of the fundamental groupoid: objects go to leg values, the class of
/// a pair goes to the composite of step morphisms along its geodesic.
pub fn c_t(psi: &Cone, fun: &TwoFunctor, sl: &SliceCategory, pi1: &Pi1Cat) -> FinFunctor {
    let t = &psi.vertex;
    let b_cat = &fun.cod;
    let obj_map: Vec<usize> = (0..pi1.cat.n_objects())
        .map(|x| {
            let (a, alpha) = sl.obj_pair(ObjId(x as u32));
            psi.leg(a).obj_map[hom_object_index(b_cat, sl.base, alpha)]
        })
        .collect();
    let mor_map = pi1
        .geodesics
        .iter()
        .map(|p| {
            let mut acc = t.identity[obj_map[p.start.0 as usize]];
            for &step in &p.steps {
                acc = t.compose_req(c_t_step(psi, fun, sl, step), acc);
            }
            acc
        })
        .collect();
    FinFunctor {
        dom: pi1.cat.clone(),
        cod: t.clone(),
        obj_map,
        mor_map,
    }
}

/// Rebuild a cone over the hom diagram from a functor out of the
/// fundamental groupoid: legs evaluate `g` on slice objects and classes,
/// squares evaluate it on the class induced by pushing forward along a
/// domain 1-cell.
pub fn c_t_inverse(
    d: &Diagram,
    fun: &TwoFunctor,
    sl: &SliceCategory,
    pi1: &Pi1Cat,
    g: &FinFunctor,
) -> Cone {
    let b_cat = &fun.cod;
    let a_cat = &fun.dom;
    let t = g.cod.clone();
    let mut legs = Vec::with_capacity(a_cat.n_objects());
    for a in a_cat.objects() {
        let fa = fun.fob_req(a);
        let obj_map = b_cat
            .hom_one(sl.base, fa)
            .iter()
            .map(|&alpha| g.obj_map[sl.find_obj(a, alpha).unwrap().0 as usize])
            .collect();
        let mor_map = hom_two_cells(b_cat, sl.base, fa)
            .iter()
            .map(|&nu| {
                let cell = b_cat.two(nu);
                let x = sl.find_obj(a, cell.src).unwrap();
                let y = sl.find_obj(a, cell.tgt).unwrap();
                g.mor_map[pi1.class(x, y).expect("joined by a slice cell")]
            })
            .collect();
        legs.push(FinFunctor {
            dom: d.cat(a).clone(),
            cod: t.clone(),
            obj_map,
            mor_map,
        });
    }
    let mut nat = Vec::with_capacity(a_cat.n_one());
    for u in a_cat.one_ids() {
        let ucell = a_cat.one(u);
        let fu = fun.fone_req(u);
        let components = b_cat
            .hom_one(sl.base, fun.fob_req(ucell.src))
            .iter()
            .map(|&alpha| {
                let x = sl.find_obj(ucell.src, alpha).unwrap();
                let pushed = sl.find_obj(ucell.tgt, b_cat.comp1_req(fu, alpha)).unwrap();
                g.mor_map[pi1.class(pushed, x).expect("joined by a slice cell")]
            })
            .collect();
        nat.push(NatTrans {
            dom: compose_functors(&legs[ucell.tgt.0 as usize], d.fun(u)),
            cod: legs[ucell.src.0 as usize].clone(),
            components,
        });
    }
    Cone {
        vertex: t,
        legs,
        nat,
    }
}

/// The natural transformation a morphism of cones restricts to: its
/// component at a slice object is the corresponding leg component.
pub fn c_t_modification(
    fun: &TwoFunctor,
    sl: &SliceCategory,
    m: &Modification,
    g1: &FinFunctor,
    g2: &FinFunctor,
) -> NatTrans {
    let components = (0..g1.dom.n_objects())
        .map(|x| {
            let (a, alpha) = sl.obj_pair(ObjId(x as u32));
            m.at(a).components[hom_object_index(&fun.cod, sl.base, alpha)]
        })
        .collect();
    NatTrans {
        dom: g1.clone(),
        cod: g2.clone(),
        components,
    }
}

/// The inverse assignment on morphisms: spread the components of `theta`
/// back over the legs.
pub fn modification_from_nat(
    fun: &TwoFunctor,
    sl: &SliceCategory,
    theta: &NatTrans,
    psi1: &Cone,
    psi2: &Cone,
) -> Modification {
    let b_cat = &fun.cod;
    let components = fun
        .dom
        .objects()
        .map(|a| {
            let comps = b_cat
                .hom_one(sl.base, fun.fob_req(a))
                .iter()
                .map(|&alpha| theta.components[sl.find_obj(a, alpha).unwrap().0 as usize])
                .collect();
            NatTrans {
                dom: psi1.leg(a).clone(),
                cod: psi2.leg(a).clone(),
                components: comps,
            }
        })
        .collect();
    Modification { components }
}

fn all_tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        let mut next = Vec::with_capacity(out.len().saturating_mul(s));
        for t in &out {
            for i in 0..s {
                let mut t2 = t.clone();
                t2.push(i);
                next.push(t2);
            }
        }
        out = next;
        if out.is_empty() {
            break;
        }
    }
    out
}

/// Every functor from the fundamental groupoid into `t`, in a fixed
/// order. A functor is determined by the image of the least object of
/// each component together with one iso of `t` per remaining object.
pub fn enumerate_functors_to(pi1: &Pi1Cat, t: &FinCat) -> Vec<FinFunctor> {
    let isos_from: Vec<Vec<usize>> = (0..t.n_objects())
        .map(|o| {
            (0..t.n_mor())
                .filter(|&m| t.morphisms[m].src == o && t.is_iso(m))
                .collect()
        })
        .collect();
    // Per component: every (root image, isos to the other objects) choice,
    // recorded as the t-morphism from the root image to each object image.
    let mut per_comp: Vec<Vec<Vec<(u32, usize)>>> = Vec::new();
    for comp in &pi1.components {
        let mut list = Vec::new();
        for (o, isos) in isos_from.iter().enumerate() {
            let sizes = vec![isos.len(); comp.len() - 1];
            for tuple in all_tuples(&sizes) {
                let mut assignment = vec![(comp[0].0, t.identity[o])];
                for (i, &xi) in comp[1..].iter().enumerate() {
                    assignment.push((xi.0, isos[tuple[i]]));
                }
                list.push(assignment);
            }
        }
        per_comp.push(list);
    }
    let sizes: Vec<usize> = per_comp.iter().map(|l| l.len()).collect();
    let mut out = Vec::new();
    for tuple in all_tuples(&sizes) {
        let mut root_iso = vec![0usize; pi1.cat.n_objects()];
        for (ci, &choice) in tuple.iter().enumerate() {
            for &(x, m) in &per_comp[ci][choice] {
                root_iso[x as usize] = m;
            }
        }
        let obj_map: Vec<usize> = root_iso.iter().map(|&m| t.morphisms[m].tgt).collect();
        let mor_map = pi1
            .pairs
            .iter()
            .map(|&(x, y)| {
                let mx = root_iso[x.0 as usize];
                let my = root_iso[y.0 as usize];
                t.compose_req(my, t.inverse(mx).expect("chosen morphisms are isos"))
            })
            .collect();
        out.push(FinFunctor {
            dom: pi1.cat.clone(),
            cod: t.clone(),
            obj_map,
            mor_map,
        });
    }
    out
}

/// Every natural transformation between two functors out of the
/// fundamental groupoid. One component per connected component determines
/// the rest by naturality along the unique classes.
pub fn enumerate_nat_transs(pi1: &Pi1Cat, g1: &FinFunctor, g2: &FinFunctor) -> Vec<NatTrans> {
    assert_eq!(g1.cod, g2.cod, "functors must share a codomain");
    let t = &g1.cod;
    let roots: Vec<Vec<usize>> = pi1
        .components
        .iter()
        .map(|comp| {
            let x1 = comp[0].0 as usize;
            t.hom(g1.obj_map[x1], g2.obj_map[x1])
        })
        .collect();
    let sizes: Vec<usize> = roots.iter().map(|r| r.len()).collect();
    let mut out = Vec::new();
    for tuple in all_tuples(&sizes) {
        let mut components = vec![usize::MAX; pi1.cat.n_objects()];
        for (ci, comp) in pi1.components.iter().enumerate() {
            let x1 = comp[0];
            let th = roots[ci][tuple[ci]];
            components[x1.0 as usize] = th;
            for &xi in &comp[1..] {
                let fwd = g2.mor_map[pi1.class(x1, xi).unwrap()];
                let back = g1.mor_map[pi1.class(xi, x1).unwrap()];
                components[xi.0 as usize] = t.compose_req(fwd, t.compose_req(th, back));
            }
        }
        out.push(NatTrans {
            dom: g1.clone(),
            cod: g2.clone(),
            components,
        });
    }
    out
}

/// Every morphism of cones between two cones over a hom diagram, by
/// exhaustive search: candidate leg transformations object by object,
/// filtered by naturality, then by square compatibility.
pub fn enumerate_modifications(d: &Diagram, psi1: &Cone, psi2: &Cone) -> Vec<Modification> {
    let t = &psi1.vertex;
    let a_cat = &d.index;
    let mut per_a: Vec<Vec<NatTrans>> = Vec::new();
    for a in a_cat.objects() {
        let f1 = psi1.leg(a);
        let f2 = psi2.leg(a);
        let homs: Vec<Vec<usize>> = (0..d.cat(a).n_objects())
            .map(|k| t.hom(f1.obj_map[k], f2.obj_map[k]))
            .collect();
        let sizes: Vec<usize> = homs.iter().map(|h| h.len()).collect();
        let mut cands = Vec::new();
        for tuple in all_tuples(&sizes) {
            let nt = NatTrans {
                dom: f1.clone(),
                cod: f2.clone(),
                components: tuple.iter().zip(&homs).map(|(&i, h)| h[i]).collect(),
            };
            if validate_nat_trans(&nt).is_empty() {
                cands.push(nt);
            }
        }
        per_a.push(cands);
    }
    let sizes: Vec<usize> = per_a.iter().map(|c| c.len()).collect();
    let mut out = Vec::new();
    for tuple in all_tuples(&sizes) {
        let m = Modification {
            components: tuple
                .iter()
                .enumerate()
                .map(|(ai, &i)| per_a[ai][i].clone())
                .collect(),
        };
        if validate_modification(d, psi1, psi2, &m).is_empty() {
            out.push(m);
        }
    }
    out
}
