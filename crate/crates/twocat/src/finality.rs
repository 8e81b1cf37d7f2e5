//! The slice criterion: a 2-functor is final when every slice of it is
//! nonempty, connected and simply connected. Verdicts are three-valued;
//! an undecided fundamental group never counts as evidence either way.

use crate::category::{op_functor, TwoFunctor};
use crate::homotopy::{pi1_report, Verdict};
use crate::slice::slice_category;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Overall {
    Final,
    NotFinal,
    Unknown,
}

/// Why the functor fails. Produced for the first definite failure in base
/// object order, so reruns agree byte for byte.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Certificate {
    EmptySlice {
        base: String,
    },
    /// Two slice objects with no zig-zag between them.
    Disconnected {
        base: String,
        first: String,
        second: String,
    },
    NontrivialPi1 {
        base: String,
        invariant_factors: Vec<i64>,
        free_rank: u32,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ObjectCheck {
    pub base: String,
    pub nonempty: bool,
    pub connected: bool,
    pub pi1: Verdict,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct FinalityReport {
    pub overall: Overall,
    pub per_object: Vec<ObjectCheck>,
    pub certificate: Option<Certificate>,
}

pub fn check_final(fun: &TwoFunctor, budget: u64) -> FinalityReport {
    let b = &fun.cod;
    let mut per_object = Vec::with_capacity(b.n_objects());
    let mut certificate = None;
    let mut any_definite_failure = false;
    let mut any_unknown = false;

    for bo in b.objects() {
        let base = b.object_name(bo).to_string();
        let sl = slice_category(fun, bo);
        let rep = pi1_report(&sl.carrier, budget);
        let check = ObjectCheck {
            base: base.clone(),
            nonempty: rep.nonempty,
            connected: rep.connected,
            pi1: rep.simply_connected,
        };

        if !check.nonempty {
            any_definite_failure = true;
            certificate.get_or_insert(Certificate::EmptySlice { base: base.clone() });
        } else if !check.connected {
            any_definite_failure = true;
            certificate.get_or_insert_with(|| Certificate::Disconnected {
                base: base.clone(),
                first: rep.components[0].objects[0].clone(),
                second: rep.components[1].objects[0].clone(),
            });
        } else if check.pi1 == Verdict::Nontrivial {
            any_definite_failure = true;
            certificate.get_or_insert_with(|| {
                let comp = rep
                    .components
                    .iter()
                    .find(|c| c.verdict == Verdict::Nontrivial)
                    .expect("a nontrivial component must exist");
                let cert = comp
                    .certificate
                    .as_ref()
                    .expect("nontrivial verdicts carry evidence");
                Certificate::NontrivialPi1 {
                    base: base.clone(),
                    invariant_factors: cert.invariant_factors.clone(),
                    free_rank: cert.free_rank,
                }
            });
        } else if check.pi1 == Verdict::Unknown {
            any_unknown = true;
        }
        per_object.push(check);
    }

    let overall = if any_definite_failure {
        Overall::NotFinal
    } else if any_unknown {
        Overall::Unknown
    } else {
        Overall::Final
    };
    FinalityReport {
        overall,
        per_object,
        certificate: if overall == Overall::NotFinal {
            certificate
        } else {
            None
        },
    }
}

/// Initiality is finality of the formal dual; co-slices are never built
/// directly.
pub fn check_initial(fun: &TwoFunctor, budget: u64) -> FinalityReport {
    check_final(&op_functor(fun), budget)
}
