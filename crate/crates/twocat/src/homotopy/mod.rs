//! Combinatorial homotopy of the underlying 1-skeleton: zig-zag paths,
//! elementary moves, fundamental-group presentations per component, bounded
//! brute-force homotopy search, and a per-category report.

pub mod components;
pub mod moves;
pub mod oracle;
pub mod path;
pub mod presentation;
pub mod simplify;
pub mod snf;

pub use components::{spanning_forest, SpanningForest, UnionFind};
pub use moves::{elementary_step, MoveData, MoveDir, MoveError, MoveKind};
pub use oracle::{
    explore, homotopic_bounded, move_neighbours, Exploration, OracleAnswer, OracleError, MAX_BOUND,
};
pub use path::{Path, PathError, Sign, Step};
pub use presentation::{component_presentations, ComponentPresentation, GroupPresentation, Word};
pub use simplify::{simplify, AbelianCertificate, SimplifyOutcome, Verdict};
pub use snf::{smith_normal_form, Snf};

use crate::category::TwoCategory;
use serde::{Deserialize, Serialize};

pub const DEFAULT_BUDGET: u64 = 200;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentReport {
    /// Object names, ascending.
    pub objects: Vec<String>,
    /// The raw edge-path presentation.
    pub presentation: GroupPresentation,
    /// What simplification left standing.
    pub simplified: GroupPresentation,
    pub verdict: Verdict,
    pub certificate: Option<AbelianCertificate>,
    pub steps_used: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Pi1Report {
    pub nonempty: bool,
    pub connected: bool,
    pub components: Vec<ComponentReport>,
    /// Trivial when every component's group is certified trivial,
    /// Nontrivial when some component is, Unknown otherwise.
    pub simply_connected: Verdict,
}

pub fn pi1_report(cat: &TwoCategory, budget: u64) -> Pi1Report {
    let forest = spanning_forest(cat);
    let comps = component_presentations(cat, &forest);
    let mut reports = Vec::with_capacity(comps.len());
    for cp in &comps {
        let out = simplify(&cp.presentation, budget);
        reports.push(ComponentReport {
            objects: cp
                .objects
                .iter()
                .map(|&o| cat.object_name(o).to_string())
                .collect(),
            presentation: cp.presentation.clone(),
            simplified: out.presentation,
            verdict: out.verdict,
            certificate: out.certificate,
            steps_used: out.steps_used,
        });
    }
    let simply_connected = if reports.iter().any(|r| r.verdict == Verdict::Nontrivial) {
        Verdict::Nontrivial
    } else if reports.iter().all(|r| r.verdict == Verdict::Trivial) {
        Verdict::Trivial
    } else {
        Verdict::Unknown
    };
    Pi1Report {
        nonempty: cat.n_objects() > 0,
        connected: reports.len() == 1,
        components: reports,
        simply_connected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn terminal_report_is_trivial() {
        let r = pi1_report(&fixtures::terminal(), DEFAULT_BUDGET);
        assert!(r.nonempty && r.connected);
        assert_eq!(r.simply_connected, Verdict::Trivial);
        assert_eq!(r.components.len(), 1);
        assert!(r.components[0].presentation.generators.is_empty());
    }

    #[test]
    fn walking_pair_report_is_a_free_group() {
        let r = pi1_report(&fixtures::walking_pair(), DEFAULT_BUDGET);
        assert_eq!(r.simply_connected, Verdict::Nontrivial);
        let c = &r.components[0];
        assert_eq!(c.verdict, Verdict::Nontrivial);
        let cert = c.certificate.as_ref().unwrap();
        assert_eq!(cert.free_rank, 1);
        assert!(cert.invariant_factors.is_empty());
    }

    #[test]
    fn sphere_report_is_trivial() {
        let r = pi1_report(&fixtures::sphere(), DEFAULT_BUDGET);
        assert_eq!(r.simply_connected, Verdict::Trivial);
        assert_eq!(r.components[0].verdict, Verdict::Trivial);
        assert!(r.components[0].simplified.generators.is_empty());
    }

    #[test]
    fn pseudo_circle_report_is_the_integers() {
        let r = pi1_report(&fixtures::pseudo_circle(), DEFAULT_BUDGET);
        let c = &r.components[0];
        assert_eq!(c.verdict, Verdict::Nontrivial);
        let cert = c.certificate.as_ref().unwrap();
        assert_eq!(cert.free_rank, 1);
        assert!(cert.invariant_factors.is_empty());
    }

    #[test]
    fn reports_serialise_and_round_trip() {
        let r = pi1_report(&fixtures::sphere(), DEFAULT_BUDGET);
        let js = serde_json::to_string(&r).unwrap();
        let back: Pi1Report = serde_json::from_str(&js).unwrap();
        assert_eq!(back.simply_connected, r.simply_connected);
        assert_eq!(back.components.len(), r.components.len());
    }
}
