//! Seeded random categories and functors for corpus tests.
//!
//! Three families, all built as coherent tables and closed by
//! construction: thin preorders (transitive relation closures), block
//! equivalences (disjoint codiscrete blocks) and preorders with duplicated
//! source-to-sink edges, optionally joined by an invertible 2-cell pair.
//! The size caps count non-identity cells; identities ride along for free.

use crate::category::{CategoryData, ObjId, TwoCategory, TwoFunctor};
use crate::fixtures;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[allow(clippy::needless_range_loop)] // reads rel[k] while writing rel[i]
fn close(rel: &mut [Vec<bool>]) {
    let n = rel.len();
    for k in 0..n {
        for i in 0..n {
            if !rel[i][k] {
                continue;
            }
            for j in 0..n {
                if rel[k][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
}

fn edge_count(rel: &[Vec<bool>]) -> usize {
    let n = rel.len();
    (0..n)
        .map(|i| (0..n).filter(|&j| i != j && rel[i][j]).count())
        .sum()
}

/// A random reflexive transitive relation with at most `max_edges`
/// off-diagonal entries, grown one generator at a time.
fn random_preorder_rel(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> Vec<Vec<bool>> {
    let mut rel = vec![vec![false; n]; n];
    for (i, row) in rel.iter_mut().enumerate() {
        row[i] = true;
    }
    let mut cands: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    cands.shuffle(rng);
    let want = if max_edges == 0 {
        0
    } else {
        rng.gen_range(0..=max_edges)
    };
    for (i, j) in cands {
        if edge_count(&rel) >= want {
            break;
        }
        let mut trial = rel.clone();
        trial[i][j] = true;
        close(&mut trial);
        if edge_count(&trial) <= max_edges {
            rel = trial;
        }
    }
    rel
}

/// A random equivalence relation whose blocks fit the edge budget.
fn random_equivalence_rel(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> Vec<Vec<bool>> {
    let mut blocks = rng.gen_range(1..=n);
    loop {
        let assign: Vec<usize> = (0..n).map(|_| rng.gen_range(0..blocks)).collect();
        let mut rel = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                rel[i][j] = i == j || assign[i] == assign[j];
            }
        }
        if edge_count(&rel) <= max_edges {
            return rel;
        }
        if blocks >= n {
            // Discrete always fits.
            let mut rel = vec![vec![false; n]; n];
            for (i, row) in rel.iter_mut().enumerate() {
                row[i] = true;
            }
            return rel;
        }
        blocks += 1;
    }
}

fn edge_name(i: usize, j: usize) -> String {
    if i == j {
        format!("i{i}")
    } else {
        format!("e{i}x{j}")
    }
}

/// The thin category of a reflexive transitive relation: at most one
/// 1-cell between any two objects, identity 2-cells only.
#[allow(clippy::needless_range_loop)] // i, j, k are object indices in rel
fn thin_category(rel: &[Vec<bool>]) -> CategoryData {
    let n = rel.len();
    let mut data = CategoryData::default();
    for i in 0..n {
        data.objects.push(format!("o{i}"));
        data.one_cells
            .push((format!("i{i}"), format!("o{i}"), format!("o{i}")));
        data.identity1.push((format!("o{i}"), format!("i{i}")));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && rel[i][j] {
                data.one_cells
                    .push((edge_name(i, j), format!("o{i}"), format!("o{j}")));
            }
        }
    }
    for (name, _, _) in data.one_cells.clone() {
        data.two_cells
            .push((format!("z{name}"), name.clone(), name.clone()));
        data.identity2.push((name.clone(), format!("z{name}")));
    }
    for i in 0..n {
        for j in 0..n {
            if i == j || !rel[i][j] {
                continue;
            }
            for k in 0..n {
                if j != k && rel[j][k] {
                    // e(j,k) after e(i,j); transitivity provides the target.
                    data.comp1
                        .push((edge_name(j, k), edge_name(i, j), edge_name(i, k)));
                }
            }
        }
    }
    data
}

/// Duplicates some edges that run from a source to a sink, so the new
/// cells compose with identities only, and sometimes joins each pair with
/// mutually inverse 2-cells.
fn insert_parallels(
    rng: &mut ChaCha8Rng,
    data: &mut CategoryData,
    rel: &[Vec<bool>],
    max_one: usize,
    max_two: usize,
) {
    let n = rel.len();
    let mut ones = edge_count(rel);
    let mut twos = 0usize;
    let is_source = |i: usize| (0..n).all(|k| k == i || !rel[k][i]);
    let is_sink = |j: usize| (0..n).all(|k| k == j || !rel[j][k]);
    let mut cands: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .filter(|&(i, j)| rel[i][j] && is_source(i) && is_sink(j))
        .collect();
    cands.shuffle(rng);
    for (i, j) in cands {
        if ones >= max_one || !rng.gen_bool(0.7) {
            continue;
        }
        let p = format!("p{i}x{j}");
        data.one_cells
            .push((p.clone(), format!("o{i}"), format!("o{j}")));
        data.two_cells.push((format!("z{p}"), p.clone(), p.clone()));
        data.identity2.push((p.clone(), format!("z{p}")));
        ones += 1;
        let e = edge_name(i, j);
        if twos + 2 <= max_two && rng.gen_bool(0.5) {
            let up = format!("c{i}x{j}");
            let down = format!("d{i}x{j}");
            data.two_cells.push((up.clone(), e.clone(), p.clone()));
            data.two_cells.push((down.clone(), p.clone(), e.clone()));
            data.inv2.push((up.clone(), down.clone()));
            data.inv2.push((down.clone(), up.clone()));
            data.vcomp.push((down.clone(), up.clone(), format!("z{e}")));
            data.vcomp.push((up.clone(), down.clone(), format!("z{p}")));
            twos += 2;
        }
    }
}

/// A seeded random category within the given caps on non-identity cells.
pub fn random_category(
    seed: u64,
    max_objects: usize,
    max_one: usize,
    max_two: usize,
) -> TwoCategory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_objects.max(1));
    let data = match rng.gen_range(0..3u8) {
        0 => thin_category(&random_preorder_rel(&mut rng, n, max_one)),
        1 => thin_category(&random_equivalence_rel(&mut rng, n, max_one)),
        _ => {
            // Bipartite shape: edges only run left to right, so every edge
            // goes from a source to a sink and is eligible for duplication.
            let mut rel = vec![vec![false; n]; n];
            for (i, row) in rel.iter_mut().enumerate() {
                row[i] = true;
            }
            if n >= 2 {
                let split = rng.gen_range(1..n);
                for i in 0..split {
                    for j in split..n {
                        if edge_count(&rel) + 1 < max_one && rng.gen_bool(0.6) {
                            rel[i][j] = true;
                        }
                    }
                }
            }
            let mut data = thin_category(&rel);
            insert_parallels(&mut rng, &mut data, &rel, max_one, max_two);
            data
        }
    };
    TwoCategory::from_data(&data, true).expect("generated data is coherent")
}

/// A seeded random functor drawn from four families: identities,
/// inclusions of a few objects into one codiscrete block, inclusions of a
/// fresh top object into a preorder, and collapses onto the point.
pub fn random_functor(seed: u64, max_objects: usize, max_one: usize, max_two: usize) -> TwoFunctor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x517c_c1b7_2722_0a95);
    match rng.gen_range(0..4u8) {
        0 => {
            let sub: u64 = rng.gen();
            TwoFunctor::identity(&random_category(sub, max_objects, max_one, max_two))
        }
        1 => {
            let mut k = rng.gen_range(2..=max_objects.max(2));
            while k > 2 && k * (k - 1) > max_one {
                k -= 1;
            }
            let rel = vec![vec![true; k]; k];
            let cat = TwoCategory::from_data(&thin_category(&rel), true).unwrap();
            let m = rng.gen_range(1..=k);
            let mut picks: Vec<ObjId> = cat.objects().collect();
            picks.shuffle(&mut rng);
            picks.truncate(m);
            picks.sort();
            fixtures::full_subcategory(&cat, &picks).1
        }
        2 => {
            let n = rng.gen_range(2..=max_objects.max(2));
            let inner = random_preorder_rel(&mut rng, n - 1, max_one.saturating_sub(n - 1));
            let mut rel = vec![vec![false; n]; n];
            for i in 0..n - 1 {
                for j in 0..n - 1 {
                    rel[i][j] = inner[i][j];
                }
            }
            for (i, row) in rel.iter_mut().enumerate() {
                row[i] = true;
                row[n - 1] = true;
            }
            let cat = TwoCategory::from_data(&thin_category(&rel), true).unwrap();
            let top = cat.find_object(&format!("o{}", n - 1)).unwrap();
            fixtures::full_subcategory(&cat, &[top]).1
        }
        _ => {
            let sub: u64 = rng.gen();
            fixtures::collapse_to_terminal(&random_category(sub, max_objects, max_one, max_two))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::{validate_two_category, validate_two_functor};

    #[test]
    fn generated_categories_validate() {
        for seed in 0..150 {
            let c = random_category(seed, 4, 8, 8);
            let report = validate_two_category(&c);
            assert!(report.ok, "seed {seed}: {:?}", report.violations);
            assert!(c.n_objects() <= 4);
        }
    }

    #[test]
    fn generated_functors_validate() {
        for seed in 0..80 {
            let f = random_functor(seed, 4, 8, 8);
            assert!(validate_two_category(&f.dom).ok, "seed {seed} dom");
            assert!(validate_two_category(&f.cod).ok, "seed {seed} cod");
            let report = validate_two_functor(&f);
            assert!(report.ok, "seed {seed}: {:?}", report.violations);
        }
    }

    #[test]
    fn generation_is_deterministic() {
        for seed in [0u64, 1, 7, 42, 1234567] {
            let a = random_category(seed, 4, 8, 8);
            let b = random_category(seed, 4, 8, 8);
            assert_eq!(a.to_data(), b.to_data());
            let f = random_functor(seed, 4, 8, 8);
            let g = random_functor(seed, 4, 8, 8);
            assert_eq!(f.dom.to_data(), g.dom.to_data());
            assert_eq!(f.cod.to_data(), g.cod.to_data());
            assert_eq!(f.obj_map, g.obj_map);
            assert_eq!(f.one_map, g.one_map);
            assert_eq!(f.two_map, g.two_map);
        }
    }

    #[test]
    fn the_corpus_is_not_degenerate() {
        let mut with_parallels = 0;
        let mut with_invertible_pair = 0;
        let mut multi_object = 0;
        for seed in 0..150 {
            let c = random_category(seed, 4, 8, 8);
            if c.n_objects() > 1 {
                multi_object += 1;
            }
            let nonid_ones = c.one_ids().filter(|&f| !c.is_identity1(f)).count();
            let parallel = c
                .one_ids()
                .any(|f| c.one_ids().any(|g| g != f && c.parallel_one(f, g)));
            if parallel {
                with_parallels += 1;
            }
            if c.two_ids().any(|t| !c.is_identity2(t)) {
                with_invertible_pair += 1;
            }
            let _ = nonid_ones;
        }
        assert!(multi_object > 50, "got {multi_object}");
        assert!(with_parallels > 10, "got {with_parallels}");
        assert!(with_invertible_pair > 5, "got {with_invertible_pair}");
    }
}
