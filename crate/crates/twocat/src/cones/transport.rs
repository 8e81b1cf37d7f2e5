//! Moving cones across a functor along slice data.
//!
//! Throughout, `fun : A -> B`, `d` is a diagram over `B`, and `phi` is a
//! cone over the restriction of `d` along `fun`. Each zig-zag path in a
//! slice at `b` induces a natural iso between the composite legs at its
//! endpoints; spanning-tree geodesics make that assignment canonical, and
//! the simply-connected precondition makes it path-independent.

use super::{Cone, Diagram, Modification};
use crate::category::{ObjId, OneId, TwoFunctor};
use crate::fincat::{
    compose_functors, lwhisker_nat, rwhisker_nat, vcomp_nat, FinFunctor, NatTrans,
};
use crate::homotopy::path::{map_path, Path, PathError};
use crate::homotopy::{
    pi1_report, spanning_forest, Pi1Report, Sign, SpanningForest, Step, Verdict,
};
use crate::slice::{base_change, slice_category, SliceCategory};

/// Slice data for every object of the codomain: the slice itself, its
/// spanning forest and its fundamental group report.
pub struct TransportContext {
    pub slices: Vec<SliceCategory>,
    pub forests: Vec<SpanningForest>,
    pub reports: Vec<Pi1Report>,
}

impl TransportContext {
    pub fn slice(&self, b: ObjId) -> &SliceCategory {
        &self.slices[b.0 as usize]
    }
    pub fn forest(&self, b: ObjId) -> &SpanningForest {
        &self.forests[b.0 as usize]
    }
    pub fn report(&self, b: ObjId) -> &Pi1Report {
        &self.reports[b.0 as usize]
    }
}

pub fn transport_context(fun: &TwoFunctor, budget: u64) -> TransportContext {
    let mut slices = Vec::with_capacity(fun.cod.n_objects());
    let mut forests = Vec::with_capacity(fun.cod.n_objects());
    let mut reports = Vec::with_capacity(fun.cod.n_objects());
    for b in fun.cod.objects() {
        let sl = slice_category(fun, b);
        forests.push(spanning_forest(&sl.carrier));
        reports.push(pi1_report(&sl.carrier, budget));
        slices.push(sl);
    }
    TransportContext {
        slices,
        forests,
        reports,
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum TransportError {
    #[error("slice at `{base}` is empty")]
    EmptySlice { base: String },
    #[error("slice at `{base}` is not certified simply connected")]
    NotCertified { base: String },
    #[error("no path between the required objects in the slice at `{base}`")]
    NoPath { base: String },
    #[error("invalid choice at `{base}`: {reason}")]
    BadChoice { base: String, reason: String },
}

/// One chosen slice object per codomain object: a pair `(a, alpha)` with
/// `alpha : b -> F a`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChoiceFunction {
    pub entries: Vec<(ObjId, OneId)>,
}

impl ChoiceFunction {
    pub fn entry(&self, b: ObjId) -> (ObjId, OneId) {
        self.entries[b.0 as usize]
    }
}

pub fn validate_choice(fun: &TwoFunctor, choices: &ChoiceFunction) -> Vec<String> {
    let b_cat = &fun.cod;
    let mut errs = Vec::new();
    if choices.entries.len() != b_cat.n_objects() {
        errs.push("choice table has wrong length".to_string());
        return errs;
    }
    for b in b_cat.objects() {
        let (a, alpha) = choices.entry(b);
        if a.0 as usize >= fun.dom.n_objects() {
            errs.push(format!(
                "choice at `{}` names a missing object",
                b_cat.object_name(b)
            ));
            continue;
        }
        let cell = b_cat.one(alpha);
        if cell.src != b || cell.tgt != fun.fob_req(a) {
            errs.push(format!(
                "choice at `{}`: `{}` does not run from it to the image of `{}`",
                b_cat.object_name(b),
                cell.id,
                fun.dom.object_name(a)
            ));
        }
    }
    errs
}

/// The least slice object at every base, when every slice is nonempty.
pub fn canonical_choice(
    fun: &TwoFunctor,
    ctx: &TransportContext,
) -> Result<ChoiceFunction, TransportError> {
    let mut entries = Vec::with_capacity(fun.cod.n_objects());
    for b in fun.cod.objects() {
        let sl = ctx.slice(b);
        if sl.carrier.n_objects() == 0 {
            return Err(TransportError::EmptySlice {
                base: fun.cod.object_name(b).to_string(),
            });
        }
        entries.push(sl.obj_pair(ObjId(0)));
    }
    Ok(ChoiceFunction { entries })
}

fn require_trivial(fun: &TwoFunctor, ctx: &TransportContext) -> Result<(), TransportError> {
    for b in fun.cod.objects() {
        if ctx.slice(b).carrier.n_objects() == 0 {
            return Err(TransportError::EmptySlice {
                base: fun.cod.object_name(b).to_string(),
            });
        }
        if ctx.report(b).simply_connected != Verdict::Trivial {
            return Err(TransportError::NotCertified {
                base: fun.cod.object_name(b).to_string(),
            });
        }
    }
    Ok(())
}

fn resolve_choice(
    fun: &TwoFunctor,
    ctx: &TransportContext,
    choices: &ChoiceFunction,
    b: ObjId,
) -> Result<ObjId, TransportError> {
    let (a, alpha) = choices.entry(b);
    ctx.slice(b)
        .find_obj(a, alpha)
        .ok_or_else(|| TransportError::BadChoice {
            base: fun.cod.object_name(b).to_string(),
            reason: "not an object of the slice".to_string(),
        })
}

/// The leg a slice object induces: the cone leg at its first component,
/// composed with the diagram value of its second.
pub fn slice_leg(d: &Diagram, phi: &Cone, sl: &SliceCategory, x: ObjId) -> FinFunctor {
    let (a, alpha) = sl.obj_pair(x);
    compose_functors(phi.leg(a), d.fun(alpha))
}

fn j_of_step(d: &Diagram, phi: &Cone, sl: &SliceCategory, step: Step) -> NatTrans {
    let (u, mu) = sl.one_pair(step.cell);
    let cell = sl.carrier.one(step.cell);
    let (_a, alpha) = sl.obj_pair(cell.src);
    let (a2, _alpha2) = sl.obj_pair(cell.tgt);
    let d_alpha = d.fun(alpha);
    let d_mu = d.nat(mu);
    let phi_u = phi.square(u);
    match step.sign {
        Sign::Fwd => vcomp_nat(
            &lwhisker_nat(
                phi.leg(a2),
                &d_mu.inverse().expect("diagram 2-cell is invertible"),
            ),
            &rwhisker_nat(
                &phi_u.inverse().expect("cone square is invertible"),
                d_alpha,
            ),
        ),
        Sign::Bwd => vcomp_nat(
            &rwhisker_nat(phi_u, d_alpha),
            &lwhisker_nat(phi.leg(a2), d_mu),
        ),
    }
}

/// The natural iso induced by a zig-zag path in a slice, from the leg of
/// its start object to the leg of its end object. Steps compose left to
/// right; the empty path gives the identity.
pub fn j_of_path(
    d: &Diagram,
    phi: &Cone,
    sl: &SliceCategory,
    p: &Path,
) -> Result<NatTrans, PathError> {
    p.check(&sl.carrier)?;
    let mut acc = NatTrans::identity(&slice_leg(d, phi, sl, p.start));
    for &step in &p.steps {
        acc = vcomp_nat(&j_of_step(d, phi, sl, step), &acc);
    }
    Ok(acc)
}

/// Precompose a cone with a functor into its diagram's index.
pub fn restrict_cone(fun: &TwoFunctor, cone: &Cone) -> Cone {
    Cone {
        vertex: cone.vertex.clone(),
        legs: fun
            .dom
            .objects()
            .map(|a| cone.leg(fun.fob_req(a)).clone())
            .collect(),
        nat: fun
            .dom
            .one_ids()
            .map(|u| cone.square(fun.fone_req(u)).clone())
            .collect(),
    }
}

pub fn restrict_modification(fun: &TwoFunctor, m: &Modification) -> Modification {
    Modification {
        components: fun
            .dom
            .objects()
            .map(|a| m.at(fun.fob_req(a)).clone())
            .collect(),
    }
}

/// Extends a cone over the restricted diagram to a cone over the whole
/// diagram, using the chosen slice objects and geodesic paths. Refuses
/// unless every slice is nonempty and certified simply connected.
pub fn transport_cone(
    d: &Diagram,
    phi: &Cone,
    fun: &TwoFunctor,
    ctx: &TransportContext,
    choices: &ChoiceFunction,
) -> Result<Cone, TransportError> {
    require_trivial(fun, ctx)?;
    let b_cat = &d.index;
    let mut legs = Vec::with_capacity(b_cat.n_objects());
    for b in b_cat.objects() {
        let x = resolve_choice(fun, ctx, choices, b)?;
        legs.push(slice_leg(d, phi, ctx.slice(b), x));
    }
    let mut nat = Vec::with_capacity(b_cat.n_one());
    for u in b_cat.one_ids() {
        let cell = b_cat.one(u);
        let sl = ctx.slice(cell.src);
        let (a2, alpha2) = choices.entry(cell.tgt);
        let pulled = sl
            .find_obj(a2, b_cat.comp1_req(alpha2, u))
            .expect("slices contain every pair");
        let target = resolve_choice(fun, ctx, choices, cell.src)?;
        let path = ctx
            .forest(cell.src)
            .geodesic(pulled, target)
            .ok_or_else(|| TransportError::NoPath {
                base: b_cat.object_name(cell.src).to_string(),
            })?;
        nat.push(j_of_path(d, phi, sl, &path).expect("geodesics chain"));
    }
    Ok(Cone {
        vertex: phi.vertex.clone(),
        legs,
        nat,
    })
}

/// Transport of a morphism of cones: whisker each component with the
/// diagram value of the chosen 1-cell.
pub fn transport_modification(
    d: &Diagram,
    m: &Modification,
    choices: &ChoiceFunction,
) -> Modification {
    Modification {
        components: d
            .index
            .objects()
            .map(|b| {
                let (a, alpha) = choices.entry(b);
                rwhisker_nat(m.at(a), d.fun(alpha))
            })
            .collect(),
    }
}

/// The comparison from a cone over the restriction to the restriction of
/// its transport: at each domain object, the geodesic from the identity
/// slice object to the chosen one.
pub fn eta(
    d: &Diagram,
    phi: &Cone,
    fun: &TwoFunctor,
    ctx: &TransportContext,
    choices: &ChoiceFunction,
) -> Result<Modification, TransportError> {
    require_trivial(fun, ctx)?;
    let mut components = Vec::with_capacity(fun.dom.n_objects());
    for a0 in fun.dom.objects() {
        let b0 = fun.fob_req(a0);
        let sl = ctx.slice(b0);
        let start = sl
            .find_obj(a0, d.index.id1_req(b0))
            .expect("identity slice object exists");
        let end = resolve_choice(fun, ctx, choices, b0)?;
        let path = ctx
            .forest(b0)
            .geodesic(start, end)
            .ok_or_else(|| TransportError::NoPath {
                base: d.index.object_name(b0).to_string(),
            })?;
        components.push(j_of_path(d, phi, sl, &path).expect("geodesics chain"));
    }
    Ok(Modification { components })
}

/// The comparison from the transport of a restriction back to the
/// original cone: at each base object, the cone's own square at the
/// chosen 1-cell.
pub fn epsilon(d: &Diagram, psi: &Cone, choices: &ChoiceFunction) -> Modification {
    Modification {
        components: d
            .index
            .objects()
            .map(|b| psi.square(choices.entry(b).1).clone())
            .collect(),
    }
}

/// Checks that path-induced isos commute with base change: mapping the
/// path along `u` first and then taking its iso agrees with whiskering
/// the iso by the diagram value of `u`.
pub fn whisker_compat_check(
    d: &Diagram,
    phi: &Cone,
    fun: &TwoFunctor,
    ctx: &TransportContext,
    u: OneId,
    p: &Path,
) -> Result<bool, PathError> {
    let cell = d.index.one(u);
    let sl_src = ctx.slice(cell.src);
    let sl_tgt = ctx.slice(cell.tgt);
    let bc = base_change(fun, u, sl_tgt, sl_src);
    let lhs = j_of_path(d, phi, sl_src, &map_path(&bc, p))?;
    let rhs = rwhisker_nat(&j_of_path(d, phi, sl_tgt, p)?, d.fun(u));
    Ok(lhs == rhs)
}

/// The invertible comparison between transports along two choice
/// functions: at each base, the geodesic from the first choice to the
/// second.
pub fn choice_comparison(
    d: &Diagram,
    phi: &Cone,
    fun: &TwoFunctor,
    ctx: &TransportContext,
    first: &ChoiceFunction,
    second: &ChoiceFunction,
) -> Result<Modification, TransportError> {
    require_trivial(fun, ctx)?;
    let mut components = Vec::with_capacity(d.index.n_objects());
    for b in d.index.objects() {
        let from = resolve_choice(fun, ctx, first, b)?;
        let to = resolve_choice(fun, ctx, second, b)?;
        let path = ctx
            .forest(b)
            .geodesic(from, to)
            .ok_or_else(|| TransportError::NoPath {
                base: d.index.object_name(b).to_string(),
            })?;
        components.push(j_of_path(d, phi, ctx.slice(b), &path).expect("geodesics chain"));
    }
    Ok(Modification { components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::{
        arrow_diagram, restrict_diagram, validate_cone, validate_diagram, validate_modification,
    };
    use crate::fincat::{chain_cat, terminal_cat};
    use crate::fixtures;
    use crate::homotopy::DEFAULT_BUDGET;

    #[test]
    fn identity_functor_slices_are_contractible() {
        let c = fixtures::walking_pair();
        let fun = TwoFunctor::identity(&c);
        let ctx = transport_context(&fun, DEFAULT_BUDGET);
        for b in c.objects() {
            assert_eq!(ctx.report(b).simply_connected, Verdict::Trivial);
        }
        let x = c.find_object("x").unwrap();
        let d = arrow_diagram(&c, x);
        assert!(validate_diagram(&d).is_empty());
        let choices = canonical_choice(&fun, &ctx).unwrap();
        assert!(validate_choice(&fun, &choices).is_empty());
        let r = restrict_diagram(&d, &fun);
        assert_eq!(r, d);
    }

    #[test]
    fn transport_over_a_codiscrete_inclusion() {
        // Include a single object into a codiscrete category; every slice
        // is a point, so transport applies and every geodesic is empty.
        let big = fixtures::codiscrete(&["a", "b", "y"]);
        let yid = big.find_object("y").unwrap();
        let (_sub, fun) = fixtures::full_subcategory(&big, &[yid]);
        let ctx = transport_context(&fun, DEFAULT_BUDGET);
        let a0 = big.find_object("a").unwrap();
        let d = arrow_diagram(&big, a0);
        assert!(validate_diagram(&d).is_empty());
        let r = restrict_diagram(&d, &fun);

        // A cone over the one-object restriction: a single leg into the
        // two-object chain, picking its top.
        let vertex = chain_cat(2);
        let dfy = r.cat(ObjId(0)).clone();
        let leg = FinFunctor {
            dom: dfy,
            cod: vertex.clone(),
            obj_map: vec![1],
            mor_map: vec![vertex.identity[1]],
        };
        let phi = Cone {
            vertex,
            legs: vec![leg.clone()],
            nat: vec![NatTrans::identity(&leg)],
        };
        assert!(validate_cone(&r, &phi).is_empty());

        let choices = canonical_choice(&fun, &ctx).unwrap();
        assert!(validate_choice(&fun, &choices).is_empty());
        let psi = transport_cone(&d, &phi, &fun, &ctx, &choices).unwrap();
        assert!(validate_cone(&d, &psi).is_empty());

        let e = eta(&d, &phi, &fun, &ctx, &choices).unwrap();
        let klphi = restrict_cone(&fun, &psi);
        assert!(validate_modification(&r, &phi, &klphi, &e).is_empty());
        assert!(e.is_invertible());

        let lk = transport_cone(&d, &klphi, &fun, &ctx, &choices).unwrap();
        let eps = epsilon(&d, &psi, &choices);
        assert!(validate_modification(&d, &lk, &psi, &eps).is_empty());
        assert!(eps.is_invertible());
    }

    #[test]
    fn transport_refuses_nontrivial_slices() {
        // Collapsing the walking pair leaves a slice with free fundamental
        // group, which the transport must refuse.
        let fun = fixtures::walking_pair_collapse();
        let ctx = transport_context(&fun, DEFAULT_BUDGET);
        let pt = fun.cod.find_object("pt").unwrap();
        let d = arrow_diagram(&fun.cod, pt);
        let r = restrict_diagram(&d, &fun);
        // All restricted values are the terminal hom category, so a cone
        // with identical legs and identity squares is valid.
        let vertex = terminal_cat();
        let dom = r.cat(ObjId(0)).clone();
        let leg = FinFunctor {
            dom,
            cod: vertex.clone(),
            obj_map: vec![0],
            mor_map: vec![0],
        };
        let phi = Cone {
            vertex,
            legs: vec![leg.clone(); fun.dom.n_objects()],
            nat: vec![NatTrans::identity(&leg); fun.dom.n_one()],
        };
        assert!(validate_cone(&r, &phi).is_empty());
        let choices = canonical_choice(&fun, &ctx).unwrap();
        let err = transport_cone(&d, &phi, &fun, &ctx, &choices).unwrap_err();
        assert!(matches!(err, TransportError::NotCertified { .. }));
    }

    #[test]
    fn choice_validation_catches_bad_entries() {
        let fun = fixtures::walking_pair_collapse();
        let bad = ChoiceFunction { entries: vec![] };
        assert!(!validate_choice(&fun, &bad).is_empty());
        let pt = fun.cod.find_object("pt").unwrap();
        let i = fun.cod.id1_req(pt);
        let x = fun.dom.find_object("x").unwrap();
        let good = ChoiceFunction {
            entries: vec![(x, i)],
        };
        assert!(validate_choice(&fun, &good).is_empty());
    }
}
