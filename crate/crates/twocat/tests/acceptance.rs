//! Acceptance gate: ten scripted checks over fixed fixtures and a seeded
//! random corpus. Each check prints one labelled pass/fail line, so a test
//! transcript reads as a checklist. The corpus is deterministic; counts in
//! the pass lines are stable across runs.

use std::collections::BTreeMap;
use std::process::Command;
use std::sync::OnceLock;

use rayon::prelude::*;

use twocat::category::{op_functor, ObjId, TwoCategory, TwoFunctor};
use twocat::cones::{
    arrow_diagram, c_t, c_t_inverse, c_t_modification, canonical_choice, choice_comparison,
    enumerate_functors_to, enumerate_modifications, enumerate_nat_transs, epsilon, eta, j_of_path,
    modification_from_nat, pi1_category, restrict_cone, restrict_diagram, transport_cone,
    transport_context, validate_choice, validate_cone, validate_diagram, validate_modification,
    whisker_compat_check, ChoiceFunction, Cone, Diagram, TransportContext,
};
use twocat::finality::{check_final, check_initial, Certificate, Overall};
use twocat::fincat::{chain_cat, probe_categories, validate_fin_functor, FinCat};
use twocat::fixtures;
use twocat::gen::{random_category, random_functor};
use twocat::homotopy::{
    component_presentations, explore, pi1_report, simplify, smith_normal_form, spanning_forest,
    ComponentPresentation, Path, Snf, Step, Verdict, DEFAULT_BUDGET,
};

fn conclude(n: u32, errors: &[String], detail: &str) {
    let tag = if errors.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {n:02}: {tag} - {detail}");
    for e in errors.iter().take(5) {
        println!("    {e}");
    }
    assert!(
        errors.is_empty(),
        "criterion {n:02} failed ({} errors): {detail}",
        errors.len()
    );
}

// ---------------------------------------------------------------- corpus

const CAT_SEEDS: u64 = 220;
const FUN_SEEDS: u64 = 170;

fn cats() -> &'static [TwoCategory] {
    static CATS: OnceLock<Vec<TwoCategory>> = OnceLock::new();
    CATS.get_or_init(|| {
        (0..CAT_SEEDS)
            .map(|s| random_category(s, 4, 8, 8))
            .collect()
    })
}

fn funs() -> &'static [TwoFunctor] {
    static FUNS: OnceLock<Vec<TwoFunctor>> = OnceLock::new();
    FUNS.get_or_init(|| (0..FUN_SEEDS).map(|s| random_functor(s, 4, 8, 8)).collect())
}

struct FinalCase {
    fun: TwoFunctor,
    ctx: TransportContext,
}

/// Corpus functors whose finality check comes out `Final`, with their
/// slice contexts precomputed.
fn final_cases() -> &'static [FinalCase] {
    static CASES: OnceLock<Vec<FinalCase>> = OnceLock::new();
    CASES.get_or_init(|| {
        funs()
            .par_iter()
            .filter_map(|fun| {
                let report = check_final(fun, DEFAULT_BUDGET);
                (report.overall == Overall::Final).then(|| FinalCase {
                    fun: fun.clone(),
                    ctx: transport_context(fun, DEFAULT_BUDGET),
                })
            })
            .collect()
    })
}

/// One exercised instance: a certified-final functor, an arrow diagram on
/// its codomain, and a cone over the restricted diagram built through the
/// fundamental-groupoid interface for a rotating probe.
struct Setting {
    case: usize,
    base: ObjId,
    d: Diagram,
    r: Diagram,
    phi: Cone,
    probe: String,
}

fn build_setting(case: usize, base: ObjId, probe_idx: usize) -> Setting {
    let fc = &final_cases()[case];
    let fun = &fc.fun;
    let d = arrow_diagram(&fun.cod, base);
    let r = restrict_diagram(&d, fun);
    let sl = fc.ctx.slice(base);
    let pi1 = pi1_category(fun, sl, fc.ctx.forest(base), fc.ctx.report(base))
        .expect("final functors have certified slices");
    let probes = probe_set();
    let (probe, t) = &probes[probe_idx % probes.len()];
    let gs = enumerate_functors_to(&pi1, t);
    let g = gs.last().expect("every probe admits a functor");
    let phi = c_t_inverse(&r, fun, sl, &pi1, g);
    Setting {
        case,
        base,
        d,
        r,
        phi,
        probe: probe.clone(),
    }
}

/// One setting per final corpus functor, at its first codomain object.
fn all_settings() -> &'static [Setting] {
    static SETTINGS: OnceLock<Vec<Setting>> = OnceLock::new();
    SETTINGS.get_or_init(|| {
        (0..final_cases().len())
            .into_par_iter()
            .map(|case| build_setting(case, ObjId(0), case))
            .collect()
    })
}

/// Settings small enough for exhaustive path work: every diagram value has
/// at most 4 objects and every slice carrier keeps the step fan-out low.
fn small_settings() -> Vec<&'static Setting> {
    let picked: Vec<&Setting> = all_settings()
        .iter()
        .filter(|s| {
            let fc = &final_cases()[s.case];
            let cod = &fc.fun.cod;
            let homs_small = cod.objects().all(|x| cod.hom_one(s.base, x).len() <= 4);
            let slices_small = cod
                .objects()
                .all(|b| max_signed_degree(&fc.ctx.slice(b).carrier) <= 5);
            homs_small && slices_small
        })
        .take(60)
        .collect();
    picked
}

fn probe_set() -> &'static [(String, FinCat)] {
    static PROBES: OnceLock<Vec<(String, FinCat)>> = OnceLock::new();
    PROBES.get_or_init(|| {
        let mut ps = probe_categories();
        ps.push(("chain3".to_string(), chain_cat(3)));
        ps
    })
}

// ------------------------------------------------------------ path tools

/// All zig-zag paths from `start` of length at most `max_len`, with their
/// endpoints. The empty path is included.
fn paths_from(cat: &TwoCategory, start: ObjId, max_len: usize) -> Vec<(Path, ObjId)> {
    let outs: Vec<Vec<_>> = cat
        .objects()
        .map(|o| cat.one_ids().filter(|&f| cat.one(f).src == o).collect())
        .collect();
    let ins: Vec<Vec<_>> = cat
        .objects()
        .map(|o| cat.one_ids().filter(|&f| cat.one(f).tgt == o).collect())
        .collect();
    let mut all = vec![(
        Path {
            start,
            steps: Vec::new(),
        },
        start,
    )];
    let mut frontier = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (p, e) in &frontier {
            for &f in &outs[e.0 as usize] {
                let mut q = p.clone();
                q.steps.push(Step::fwd(f));
                next.push((q, cat.one(f).tgt));
            }
            for &f in &ins[e.0 as usize] {
                let mut q = p.clone();
                q.steps.push(Step::bwd(f));
                next.push((q, cat.one(f).src));
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// The largest number of signed steps leaving any one object; a cheap
/// proxy for how fast the bounded move graph grows.
fn max_signed_degree(cat: &TwoCategory) -> usize {
    cat.objects()
        .map(|o| {
            cat.one_ids().filter(|&f| cat.one(f).src == o).count()
                + cat.one_ids().filter(|&f| cat.one(f).tgt == o).count()
        })
        .max()
        .unwrap_or(0)
}

/// Smith form of the relator matrix, for membership tests in the relator
/// lattice of the abelianised group.
fn relator_snf(cp: &ComponentPresentation) -> Snf {
    let g = cp.presentation.generators.len();
    let rs = &cp.presentation.relators;
    let mut entries = vec![0i128; rs.len() * g];
    for (i, r) in rs.iter().enumerate() {
        for &l in r {
            entries[i * g + (l.unsigned_abs() - 1) as usize] += l.signum() as i128;
        }
    }
    smith_normal_form(rs.len(), g, &entries)
}

// ------------------------------------------------------------- criteria

#[test]
fn criterion_01_parallel_pair_collapse_is_not_final() {
    let fun = fixtures::walking_pair_collapse();
    let report = check_final(&fun, DEFAULT_BUDGET);
    let mut errs = Vec::new();
    if report.overall != Overall::NotFinal {
        errs.push(format!("expected NotFinal, got {:?}", report.overall));
    }
    match report.per_object.as_slice() {
        [oc] => {
            if oc.base != "pt" || !oc.nonempty || !oc.connected {
                errs.push(format!("slice shape is off: {oc:?}"));
            }
            if oc.pi1 != Verdict::Nontrivial {
                errs.push(format!("expected a Nontrivial verdict, got {:?}", oc.pi1));
            }
        }
        other => errs.push(format!("expected one object check, got {}", other.len())),
    }
    let want = Certificate::NontrivialPi1 {
        base: "pt".to_string(),
        invariant_factors: vec![],
        free_rank: 1,
    };
    if report.certificate.as_ref() != Some(&want) {
        errs.push(format!(
            "expected a free-rank-1 certificate, got {:?}",
            report.certificate
        ));
    }
    conclude(
        1,
        &errs,
        "collapsing a parallel pair is not final: slice connected, loop group Z, free rank 1",
    );
}

#[test]
fn criterion_02_contractible_fixture_is_final() {
    let c = fixtures::sphere();
    let rep = pi1_report(&c, DEFAULT_BUDGET);
    let mut errs = Vec::new();
    if !rep.nonempty || !rep.connected {
        errs.push("the two-cell fixture should be nonempty and connected".to_string());
    }
    if rep.simply_connected != Verdict::Trivial {
        errs.push(format!(
            "expected a Trivial verdict, got {:?}",
            rep.simply_connected
        ));
    }
    if rep.components.len() != 1 || rep.components[0].verdict != Verdict::Trivial {
        errs.push("expected a single component simplified to nothing".to_string());
    }
    let fin = check_final(&TwoFunctor::identity(&c), DEFAULT_BUDGET);
    if fin.overall != Overall::Final {
        errs.push(format!("identity should be final, got {:?}", fin.overall));
    }
    if !fin
        .per_object
        .iter()
        .all(|oc| oc.nonempty && oc.connected && oc.pi1 == Verdict::Trivial)
    {
        errs.push("every slice of the identity should be certified contractible".to_string());
    }
    conclude(
        2,
        &errs,
        "a parallel pair with invertible filling cells is simply connected and its identity is final",
    );
}

#[derive(Default)]
struct OracleTally {
    pairs: usize,
    oracle_pairs: usize,
    certified: usize,
    distinguished: usize,
    nodes: usize,
    errors: Vec<String>,
}

impl OracleTally {
    fn merge(mut self, other: OracleTally) -> OracleTally {
        self.pairs += other.pairs;
        self.oracle_pairs += other.oracle_pairs;
        self.certified += other.certified;
        self.distinguished += other.distinguished;
        self.nodes += other.nodes;
        self.errors.extend(other.errors);
        self
    }
}

/// Cross-validates the bounded search oracle against the presentation
/// route on one category: abelianisation-distinguished pairs must never
/// be certified, and certified pairs in components simplified to nothing
/// must share their tree-geodesic normal form. Paths are classified by a
/// canonical residue modulo the relator lattice, so a pair is
/// distinguished exactly when its residue classes differ. Where the move
/// graph stays narrow the oracle runs on every endpoint bucket, otherwise
/// only on buckets that actually contain a distinguished pair.
fn oracle_vs_presentations(ci: usize, cat: &TwoCategory) -> OracleTally {
    let mut t = OracleTally::default();
    let forest = spanning_forest(cat);
    let comps = component_presentations(cat, &forest);
    let verdicts: Vec<Verdict> = comps
        .iter()
        .map(|cp| simplify(&cp.presentation, DEFAULT_BUDGET).verdict)
        .collect();
    let snfs: Vec<Snf> = comps.iter().map(relator_snf).collect();
    let explore_everywhere = max_signed_degree(cat) <= 4;

    for start in cat.objects() {
        let comp = forest.component_of(start);
        let cp = &comps[comp];
        let snf = &snfs[comp];
        let paths = paths_from(cat, start, 4);
        let residues: Vec<Vec<i128>> = paths
            .iter()
            .map(|(p, _)| {
                let im: Vec<i128> = cp.abelian_image(p).iter().map(|&x| x as i128).collect();
                snf.row_lattice_residue(&im)
            })
            .collect();
        let mut buckets: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, (_, end)) in paths.iter().enumerate() {
            buckets.entry(end.0).or_default().push(i);
        }

        for (&end, bucket) in &buckets {
            let n = bucket.len();
            if n < 2 {
                continue;
            }
            // Residue class of each bucket member; two paths are
            // abelianisation-distinguished exactly when classes differ.
            let mut reps: Vec<usize> = Vec::new();
            let mut class = vec![0usize; n];
            for (k, &i) in bucket.iter().enumerate() {
                match reps.iter().position(|&r| residues[r] == residues[i]) {
                    Some(c) => class[k] = c,
                    None => {
                        class[k] = reps.len();
                        reps.push(i);
                    }
                }
            }
            let total = n * (n - 1) / 2;
            let mut sizes = vec![0usize; reps.len()];
            for &c in &class {
                sizes[c] += 1;
            }
            let same: usize = sizes.iter().map(|&s| s * (s - 1) / 2).sum();
            t.pairs += total;
            t.distinguished += total - same;

            // Buckets with a distinguished pair always face the oracle; the
            // rest are sampled deterministically to keep the search bounded.
            let sampled =
                explore_everywhere && (ci + start.0 as usize + end as usize).is_multiple_of(3);
            if !(sampled || reps.len() > 1) {
                continue;
            }
            let seeds: Vec<Path> = bucket.iter().map(|&i| paths[i].0.clone()).collect();
            let mut exp = explore(cat, &seeds, 8, None).expect("seeds fit the bound");
            t.nodes += exp.nodes_visited;
            t.oracle_pairs += total;
            let nfs: Option<Vec<Path>> = (verdicts[comp] == Verdict::Trivial).then(|| {
                bucket
                    .iter()
                    .map(|&i| {
                        forest
                            .geodesic(paths[i].0.start, paths[i].1)
                            .expect("endpoints share a component")
                    })
                    .collect()
            });
            for k in 0..n {
                for l in k + 1..n {
                    if !exp.connected(k, l) {
                        continue;
                    }
                    t.certified += 1;
                    if class[k] != class[l] {
                        t.errors.push(format!(
                            "seed {ci}: certified pair distinguished by abelianisation \
                             ({} vs {})",
                            paths[bucket[k]].0.display(cat),
                            paths[bucket[l]].0.display(cat),
                        ));
                    }
                    if let Some(nfs) = &nfs {
                        if nfs[k] != nfs[l] {
                            t.errors.push(format!(
                                "seed {ci}: certified pair with different normal forms \
                                 ({} vs {})",
                                nfs[k].display(cat),
                                nfs[l].display(cat),
                            ));
                        }
                    }
                }
            }
        }
    }
    t
}

#[test]
fn criterion_03_oracle_and_presentations_agree() {
    let corpus = cats();
    let mut errs = Vec::new();
    if corpus.len() < 200 {
        errs.push(format!("corpus too small: {}", corpus.len()));
    }
    let tally = corpus
        .par_iter()
        .enumerate()
        .map(|(ci, cat)| oracle_vs_presentations(ci, cat))
        .reduce(OracleTally::default, OracleTally::merge);
    if tally.certified == 0 {
        errs.push("the oracle never certified anything; the corpus is degenerate".to_string());
    }
    if tally.distinguished == 0 {
        errs.push("no abelianisation-distinguished pairs; the corpus is degenerate".to_string());
    }
    errs.extend(tally.errors);
    conclude(
        3,
        &errs,
        &format!(
            "{} seeded categories, {} path pairs (length <= 4), {} oracle-checked, \
             {} certified, {} distinguished, {} search nodes, no disagreements at bound 8",
            corpus.len(),
            tally.pairs,
            tally.oracle_pairs,
            tally.certified,
            tally.distinguished,
            tally.nodes
        ),
    );
}

#[test]
fn criterion_04_path_isos_depend_only_on_homotopy_class() {
    let settings = small_settings();
    let mut errs = Vec::new();
    if settings.len() < 50 {
        errs.push(format!("only {} exhaustive instances", settings.len()));
    }
    let results: Vec<(usize, usize, Vec<String>)> = settings
        .par_iter()
        .map(|s| {
            let fc = &final_cases()[s.case];
            let fun = &fc.fun;
            let mut local = Vec::new();
            let mut buckets_checked = 0usize;
            let mut oracle_pairs = 0usize;
            for b in fun.cod.objects() {
                let sl = fc.ctx.slice(b);
                let carrier = &sl.carrier;
                for start in carrier.objects() {
                    let paths = paths_from(carrier, start, 4);
                    let mut buckets: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
                    for (i, (_, end)) in paths.iter().enumerate() {
                        buckets.entry(end.0).or_default().push(i);
                    }
                    let js: Vec<_> = paths
                        .iter()
                        .map(|(p, _)| {
                            j_of_path(&s.d, &s.phi, sl, p).expect("enumerated paths are valid")
                        })
                        .collect();
                    // Every same-endpoint bucket must induce a single iso;
                    // on certified-contractible slices the homotopy classes
                    // are exactly the endpoint pairs, so this is agreement
                    // on every homotopy class at once.
                    for bucket in buckets.values() {
                        if bucket.len() < 2 {
                            continue;
                        }
                        buckets_checked += 1;
                        let first = bucket[0];
                        for &i in &bucket[1..] {
                            if js[i] != js[first] {
                                local.push(format!(
                                    "probe {}: path iso differs inside one homotopy class \
                                     ({} vs {})",
                                    s.probe,
                                    paths[first].0.display(carrier),
                                    paths[i].0.display(carrier),
                                ));
                            }
                        }
                    }
                    // Where the bounded move graph stays narrow, also run the
                    // oracle and recheck the certified pairs explicitly.
                    if max_signed_degree(carrier) <= 3 && paths.len() >= 2 {
                        let seeds: Vec<Path> = paths.iter().map(|(p, _)| p.clone()).collect();
                        let mut exp = explore(carrier, &seeds, 8, None).expect("seeds fit");
                        for bucket in buckets.values() {
                            for (k, &i) in bucket.iter().enumerate() {
                                for &j in &bucket[k + 1..] {
                                    if exp.connected(i, j) {
                                        oracle_pairs += 1;
                                        if js[i] != js[j] {
                                            local.push(
                                                "certified pair with different path isos"
                                                    .to_string(),
                                            );
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            (buckets_checked, oracle_pairs, local)
        })
        .collect();
    let buckets: usize = results.iter().map(|r| r.0).sum();
    let oracle_pairs: usize = results.iter().map(|r| r.1).sum();
    for r in &results {
        errs.extend(r.2.iter().cloned());
    }
    if oracle_pairs == 0 {
        errs.push("no oracle-certified pairs were exercised".to_string());
    }
    conclude(
        4,
        &errs,
        &format!(
            "{} instances, {} endpoint classes, {} oracle-certified pairs: \
             path isos agree on every class",
            settings.len(),
            buckets,
            oracle_pairs
        ),
    );
}

#[test]
fn criterion_05_path_isos_commute_with_base_change() {
    let settings = small_settings();
    let mut errs = Vec::new();
    if settings.len() < 50 {
        errs.push(format!("only {} exhaustive instances", settings.len()));
    }
    let results: Vec<(usize, Vec<String>)> = settings
        .par_iter()
        .map(|s| {
            let fc = &final_cases()[s.case];
            let fun = &fc.fun;
            let mut local = Vec::new();
            let mut checked = 0usize;
            for u in fun.cod.one_ids() {
                let tgt = fun.cod.one(u).tgt;
                let carrier = &fc.ctx.slice(tgt).carrier;
                for start in carrier.objects() {
                    for (p, _) in paths_from(carrier, start, 4) {
                        checked += 1;
                        match whisker_compat_check(&s.d, &s.phi, fun, &fc.ctx, u, &p) {
                            Ok(true) => {}
                            Ok(false) => local.push(format!(
                                "whisker law fails for `{}` at {}",
                                fun.cod.one(u).id,
                                p.display(carrier),
                            )),
                            Err(e) => local.push(format!("path broke under base change: {e}")),
                        }
                    }
                }
            }
            (checked, local)
        })
        .collect();
    let checked: usize = results.iter().map(|r| r.0).sum();
    for r in &results {
        errs.extend(r.1.iter().cloned());
    }
    conclude(
        5,
        &errs,
        &format!(
            "{} instances, {} (cell, path) pairs: mapping the path then taking its iso \
             equals whiskering the iso",
            settings.len(),
            checked
        ),
    );
}

#[test]
fn criterion_06_transport_round_trips_up_to_iso() {
    let settings = all_settings();
    let mut errs = Vec::new();
    if settings.is_empty() {
        errs.push("no final corpus instances".to_string());
    }
    let locals: Vec<Vec<String>> = settings
        .par_iter()
        .map(|s| {
            let fc = &final_cases()[s.case];
            let fun = &fc.fun;
            let mut local = Vec::new();
            let mut fail =
                |msg: String| local.push(format!("case {} ({}): {msg}", s.case, s.probe));
            if !validate_diagram(&s.d).is_empty() {
                fail("arrow diagram invalid".to_string());
            }
            if !validate_cone(&s.r, &s.phi).is_empty() {
                fail("seed cone invalid".to_string());
            }
            let choices = match canonical_choice(fun, &fc.ctx) {
                Ok(c) => c,
                Err(e) => {
                    fail(format!("canonical choice refused: {e}"));
                    return local;
                }
            };
            let psi = match transport_cone(&s.d, &s.phi, fun, &fc.ctx, &choices) {
                Ok(p) => p,
                Err(e) => {
                    fail(format!("transport refused: {e}"));
                    return local;
                }
            };
            if !validate_cone(&s.d, &psi).is_empty() {
                fail("transported cone invalid".to_string());
            }
            let e = match eta(&s.d, &s.phi, fun, &fc.ctx, &choices) {
                Ok(m) => m,
                Err(err) => {
                    fail(format!("unit comparison refused: {err}"));
                    return local;
                }
            };
            let kl = restrict_cone(fun, &psi);
            let v = validate_modification(&s.r, &s.phi, &kl, &e);
            if !v.is_empty() {
                fail(format!("unit comparison does not validate: {}", v[0]));
            }
            if !e.is_invertible() {
                fail("unit comparison is not componentwise invertible".to_string());
            }
            let lk = match transport_cone(&s.d, &kl, fun, &fc.ctx, &choices) {
                Ok(c) => c,
                Err(err) => {
                    fail(format!("second transport refused: {err}"));
                    return local;
                }
            };
            let eps = epsilon(&s.d, &psi, &choices);
            let v = validate_modification(&s.d, &lk, &psi, &eps);
            if !v.is_empty() {
                fail(format!("counit comparison does not validate: {}", v[0]));
            }
            if !eps.is_invertible() {
                fail("counit comparison is not componentwise invertible".to_string());
            }
            local
        })
        .collect();
    for l in locals {
        errs.extend(l);
    }
    conclude(
        6,
        &errs,
        &format!(
            "{} final instances: restriction and transport round-trip up to validated \
             invertible comparisons",
            settings.len()
        ),
    );
}

#[test]
fn criterion_07_probe_interface_bijections() {
    let mut errs = Vec::new();
    let probes = probe_set();
    for (name, t) in probes.iter() {
        if t.n_objects() > 3 || t.n_mor() > 6 {
            errs.push(format!("probe {name} is outside the advertised bounds"));
        }
    }

    let wp = fixtures::walking_pair();
    let sp = fixtures::sphere();
    let big = fixtures::codiscrete(&["a", "b", "y"]);
    let keep: Vec<ObjId> = [big.find_object("b").unwrap(), big.find_object("y").unwrap()].to_vec();
    let (_, incl) = fixtures::full_subcategory(&big, &keep);
    let instances: Vec<(String, TwoFunctor, &str)> = vec![
        (
            "identity on the parallel pair".into(),
            TwoFunctor::identity(&wp),
            "x",
        ),
        (
            "identity on the filled pair".into(),
            TwoFunctor::identity(&sp),
            "x",
        ),
        ("codiscrete inclusion".into(), incl, "a"),
    ];

    let mut round_trips = 0usize;
    let mut bijections = 0usize;
    for (label, fun, at) in &instances {
        let ctx = transport_context(fun, DEFAULT_BUDGET);
        let base = fun.cod.find_object(at).unwrap();
        let sl = ctx.slice(base);
        let pi1 = match pi1_category(fun, sl, ctx.forest(base), ctx.report(base)) {
            Ok(p) => p,
            Err(e) => {
                errs.push(format!("{label}: groupoid refused: {e}"));
                continue;
            }
        };
        let d = arrow_diagram(&fun.cod, base);
        let r = restrict_diagram(&d, fun);
        for (name, t) in probes.iter() {
            let gs = enumerate_functors_to(&pi1, t);
            if gs.is_empty() {
                errs.push(format!("{label}/{name}: no functors enumerated"));
                continue;
            }
            for g in &gs {
                if !validate_fin_functor(g).is_empty() {
                    errs.push(format!("{label}/{name}: enumerated functor invalid"));
                }
                let psi = c_t_inverse(&r, fun, sl, &pi1, g);
                if !validate_cone(&r, &psi).is_empty() {
                    errs.push(format!("{label}/{name}: rebuilt cone invalid"));
                }
                if &c_t(&psi, fun, sl, &pi1) != g {
                    errs.push(format!(
                        "{label}/{name}: round trip through cones is not exact"
                    ));
                }
                round_trips += 1;
            }
            for g1 in &gs {
                for g2 in &gs {
                    let psi1 = c_t_inverse(&r, fun, sl, &pi1, g1);
                    let psi2 = c_t_inverse(&r, fun, sl, &pi1, g2);
                    let mods = enumerate_modifications(&r, &psi1, &psi2);
                    let nats = enumerate_nat_transs(&pi1, g1, g2);
                    if mods.len() != nats.len() {
                        errs.push(format!(
                            "{label}/{name}: {} modifications vs {} transformations",
                            mods.len(),
                            nats.len()
                        ));
                        continue;
                    }
                    for nt in &nats {
                        let m = modification_from_nat(fun, sl, nt, &psi1, &psi2);
                        if !validate_modification(&r, &psi1, &psi2, &m).is_empty() {
                            errs.push(format!("{label}/{name}: image modification invalid"));
                        }
                        if &c_t_modification(fun, sl, &m, g1, g2) != nt {
                            errs.push(format!("{label}/{name}: transformation round trip broken"));
                        }
                    }
                    for m in &mods {
                        let nt = c_t_modification(fun, sl, m, g1, g2);
                        if !nats.contains(&nt) {
                            errs.push(format!(
                                "{label}/{name}: modification maps outside the enumeration"
                            ));
                        }
                        let back = modification_from_nat(fun, sl, &nt, &psi1, &psi2);
                        if &back != m {
                            errs.push(format!("{label}/{name}: modification round trip broken"));
                        }
                    }
                    bijections += 1;
                }
            }
        }
    }
    conclude(
        7,
        &errs,
        &format!(
            "{} probes on {} instances: {} cone round trips exact, {} hom-sets in bijection",
            probes.len(),
            instances.len(),
            round_trips,
            bijections
        ),
    );
}

#[test]
fn criterion_08_initiality_is_finality_of_the_opposite() {
    let mut errs = Vec::new();
    for (i, c) in cats().iter().enumerate() {
        if &c.op().op() != c {
            errs.push(format!(
                "category seed {i}: double opposite is not the identity"
            ));
        }
    }
    for (i, f) in funs().iter().enumerate() {
        if &op_functor(&op_functor(f)) != f {
            errs.push(format!(
                "functor seed {i}: double opposite is not the identity"
            ));
        }
        let initial = check_initial(f, DEFAULT_BUDGET);
        let dual = check_final(&op_functor(f), DEFAULT_BUDGET);
        if initial != dual {
            errs.push(format!(
                "functor seed {i}: initiality disagrees with dual finality"
            ));
        }
    }
    let collapse = fixtures::walking_pair_collapse();
    if check_initial(&collapse, DEFAULT_BUDGET).overall != Overall::NotFinal {
        errs.push("collapsing a parallel pair should not be initial either".to_string());
    }
    conclude(
        8,
        &errs,
        &format!(
            "{} categories and {} functors: double opposites are identities and \
             initiality equals finality of the opposite, field for field",
            cats().len(),
            funs().len()
        ),
    );
}

// --------------------------------------------------------- CLI stability

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn run_cli(args: &[String]) -> (i32, Vec<u8>, Vec<u8>) {
    let mut argv = vec!["twocat".to_string()];
    argv.extend(args.iter().cloned());
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = twocat::cli::run_with(&argv, &mut out, &mut err);
    (code, out, err)
}

fn cli_matrix() -> Vec<Vec<String>> {
    let cats = [
        "terminal.cat",
        "walking_pair.cat",
        "sphere.cat",
        "pseudo_circle.cat",
        "codiscrete_aby.cat",
        "codiscrete_by.cat",
    ];
    let funs = [
        "collapse.fun",
        "identity_terminal.fun",
        "identity_sphere.fun",
        "include_by.fun",
    ];
    let mut cmds: Vec<Vec<String>> = Vec::new();
    let mut push = |parts: &[&str]| {
        for fmt in ["text", "machine"] {
            let mut v: Vec<String> = parts.iter().map(|s| s.to_string()).collect();
            v.push("--format".into());
            v.push(fmt.into());
            cmds.push(v);
        }
    };
    for c in cats {
        let p = fixture(c);
        push(&["validate", &p]);
        push(&["pi1", &p]);
    }
    for f in funs {
        let p = fixture(f);
        push(&["check-final", &p]);
        push(&["check-initial", &p]);
    }
    push(&["slice", &fixture("collapse.fun"), "pt"]);
    push(&["slice", &fixture("identity_sphere.fun"), "x"]);
    push(&["slice", &fixture("include_by.fun"), "a"]);
    push(&["slice", &fixture("include_by.fun"), "y"]);
    push(&[
        "oracle",
        &fixture("sphere.cat"),
        "x +f",
        "x +g",
        "--bound",
        "6",
    ]);
    push(&[
        "oracle",
        &fixture("walking_pair.cat"),
        "x +f",
        "x +g",
        "--bound",
        "8",
    ]);
    push(&[
        "oracle",
        &fixture("sphere.cat"),
        "x +f -g +f",
        "x +f",
        "--bound",
        "8",
    ]);
    push(&[
        "oracle",
        &fixture("terminal.cat"),
        "pt",
        "pt",
        "--bound",
        "2",
    ]);
    let transport = [
        fixture("include_by.fun"),
        fixture("arrow_aby.dia"),
        fixture("cone_by.cone"),
    ];
    push(&["transport", &transport[0], &transport[1], &transport[2]]);
    push(&[
        "transport",
        &transport[0],
        &transport[1],
        &transport[2],
        "--choices",
        &fixture("choices_b.choice"),
    ]);
    push(&[
        "transport",
        &transport[0],
        &transport[1],
        &transport[2],
        "--choices",
        &fixture("choices_y.choice"),
    ]);
    push(&[
        "transport",
        &fixture("collapse.fun"),
        &fixture("terminal_chain.dia"),
        &fixture("cone_collapse.cone"),
    ]);
    push(&["gen-random", "--seed", "0"]);
    push(&["gen-random", "--seed", "7"]);
    push(&[
        "gen-random",
        "--objects",
        "3",
        "--mor",
        "6",
        "--cells",
        "6",
        "--seed",
        "42",
    ]);
    cmds
}

#[test]
fn criterion_09_cli_output_is_bit_stable() {
    let mut errs = Vec::new();
    let matrix = cli_matrix();
    for args in &matrix {
        let first = run_cli(args);
        let second = run_cli(args);
        if first != second {
            errs.push(format!("in-process rerun differs for: {}", args.join(" ")));
        }
    }
    // A subset again through the real binary, twice, to catch anything that
    // varies per process rather than per call.
    let bin = env!("CARGO_BIN_EXE_twocat");
    let subset: Vec<&Vec<String>> = matrix.iter().step_by(7).collect();
    for args in subset {
        let run = || {
            Command::new(bin)
                .args(args.iter())
                .output()
                .expect("the binary runs")
        };
        let a = run();
        let b = run();
        if a.stdout != b.stdout || a.stderr != b.stderr || a.status.code() != b.status.code() {
            errs.push(format!(
                "cross-process rerun differs for: {}",
                args.join(" ")
            ));
        }
    }
    conclude(
        9,
        &errs,
        &format!(
            "{} command lines run twice in-process and a {}-command subset twice \
             as subprocesses: byte-identical output",
            matrix.len(),
            matrix.len().div_ceil(7)
        ),
    );
}

#[test]
fn criterion_10_transports_along_different_choices_agree() {
    let mut errs = Vec::new();
    let mut exercised = 0usize;
    for s in all_settings() {
        let fc = &final_cases()[s.case];
        let fun = &fc.fun;
        let first = match canonical_choice(fun, &fc.ctx) {
            Ok(c) => c,
            Err(_) => continue,
        };
        // Move every choice with room to move; skip instances without room.
        let mut entries = first.entries.clone();
        let mut moved = false;
        for b in fun.cod.objects() {
            let sl = fc.ctx.slice(b);
            let n = sl.carrier.n_objects();
            if n > 1 {
                entries[b.0 as usize] = sl.obj_pair(ObjId((n - 1) as u32));
                moved = true;
            }
        }
        if !moved {
            continue;
        }
        let second = ChoiceFunction { entries };
        if !validate_choice(fun, &second).is_empty() {
            errs.push(format!(
                "case {}: alternative choice does not validate",
                s.case
            ));
            continue;
        }
        let t1 = transport_cone(&s.d, &s.phi, fun, &fc.ctx, &first);
        let t2 = transport_cone(&s.d, &s.phi, fun, &fc.ctx, &second);
        let (t1, t2) = match (t1, t2) {
            (Ok(a), Ok(b)) => (a, b),
            _ => {
                errs.push(format!("case {}: transport refused", s.case));
                continue;
            }
        };
        let m = match choice_comparison(&s.d, &s.phi, fun, &fc.ctx, &first, &second) {
            Ok(m) => m,
            Err(e) => {
                errs.push(format!("case {}: comparison refused: {e}", s.case));
                continue;
            }
        };
        let v = validate_modification(&s.d, &t1, &t2, &m);
        if !v.is_empty() {
            errs.push(format!(
                "case {}: comparison does not validate: {}",
                s.case, v[0]
            ));
        }
        if !m.is_invertible() {
            errs.push(format!("case {}: comparison is not invertible", s.case));
        }
        exercised += 1;
    }
    if exercised < 20 {
        errs.push(format!(
            "only {exercised} instances admit two distinct choices"
        ));
    }
    conclude(
        10,
        &errs,
        &format!(
            "{exercised} final instances transported along two different choice functions: \
             results connected by validated invertible comparisons"
        ),
    );
}
