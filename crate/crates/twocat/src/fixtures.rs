//! Small reference categories and functors used in tests and documentation.

use crate::category::{CategoryData, FunctorData, ObjId, TwoCategory, TwoFunctor};

/// One object, its identity 1-cell, and the identity 2-cell on that.
pub fn terminal() -> TwoCategory {
    let data = CategoryData {
        objects: vec!["pt".into()],
        one_cells: vec![("i_pt".into(), "pt".into(), "pt".into())],
        two_cells: vec![("ii_pt".into(), "i_pt".into(), "i_pt".into())],
        identity1: vec![("pt".into(), "i_pt".into())],
        identity2: vec![("i_pt".into(), "ii_pt".into())],
        ..CategoryData::default()
    };
    TwoCategory::from_data(&data, true).expect("terminal category builds")
}

/// Two objects `x`, `y` and two parallel 1-cells `f, g : x -> y`, with no
/// 2-cells besides identities. Its fundamental group at either object is
/// infinite cyclic.
pub fn walking_pair() -> TwoCategory {
    let data = CategoryData {
        objects: vec!["x".into(), "y".into()],
        one_cells: vec![
            ("f".into(), "x".into(), "y".into()),
            ("g".into(), "x".into(), "y".into()),
            ("i_x".into(), "x".into(), "x".into()),
            ("i_y".into(), "y".into(), "y".into()),
        ],
        two_cells: vec![
            ("ii_f".into(), "f".into(), "f".into()),
            ("ii_g".into(), "g".into(), "g".into()),
            ("ii_x".into(), "i_x".into(), "i_x".into()),
            ("ii_y".into(), "i_y".into(), "i_y".into()),
        ],
        identity1: vec![("x".into(), "i_x".into()), ("y".into(), "i_y".into())],
        identity2: vec![
            ("f".into(), "ii_f".into()),
            ("g".into(), "ii_g".into()),
            ("i_x".into(), "ii_x".into()),
            ("i_y".into(), "ii_y".into()),
        ],
        ..CategoryData::default()
    };
    TwoCategory::from_data(&data, true).expect("walking pair builds")
}

/// Two objects, two parallel 1-cells `f, g : x -> y`, and two parallel
/// 2-isomorphisms `al, be : f => g`. Closing under vertical composition
/// forces a non-identity automorphism on each of `f` and `g` (`tf = ai * be`
/// and `tg = be * ai`), so each hom-groupoid is free of rank one over two
/// objects and the whole 2-cell table has eight entries.
pub fn sphere() -> TwoCategory {
    let vc = |b: &str, a: &str, c: &str| (b.to_string(), a.to_string(), c.to_string());
    let data = CategoryData {
        objects: vec!["x".into(), "y".into()],
        one_cells: vec![
            ("f".into(), "x".into(), "y".into()),
            ("g".into(), "x".into(), "y".into()),
            ("i_x".into(), "x".into(), "x".into()),
            ("i_y".into(), "y".into(), "y".into()),
        ],
        two_cells: vec![
            ("al".into(), "f".into(), "g".into()),
            ("be".into(), "f".into(), "g".into()),
            ("ai".into(), "g".into(), "f".into()),
            ("bi".into(), "g".into(), "f".into()),
            ("tf".into(), "f".into(), "f".into()),
            ("tg".into(), "g".into(), "g".into()),
            ("ii_f".into(), "f".into(), "f".into()),
            ("ii_g".into(), "g".into(), "g".into()),
            ("ii_x".into(), "i_x".into(), "i_x".into()),
            ("ii_y".into(), "i_y".into(), "i_y".into()),
        ],
        identity1: vec![("x".into(), "i_x".into()), ("y".into(), "i_y".into())],
        identity2: vec![
            ("f".into(), "ii_f".into()),
            ("g".into(), "ii_g".into()),
            ("i_x".into(), "ii_x".into()),
            ("i_y".into(), "ii_y".into()),
        ],
        inv2: vec![
            ("al".into(), "ai".into()),
            ("ai".into(), "al".into()),
            ("be".into(), "bi".into()),
            ("bi".into(), "be".into()),
            ("tf".into(), "tf".into()),
            ("tg".into(), "tg".into()),
        ],
        vcomp: vec![
            vc("tf", "tf", "ii_f"),
            vc("al", "tf", "be"),
            vc("be", "tf", "al"),
            vc("tg", "tg", "ii_g"),
            vc("al", "ai", "ii_g"),
            vc("al", "bi", "tg"),
            vc("be", "ai", "tg"),
            vc("be", "bi", "ii_g"),
            vc("ai", "al", "ii_f"),
            vc("ai", "be", "tf"),
            vc("bi", "al", "tf"),
            vc("bi", "be", "ii_f"),
            vc("tf", "ai", "bi"),
            vc("tf", "bi", "ai"),
            vc("tg", "al", "be"),
            vc("tg", "be", "al"),
            vc("ai", "tg", "bi"),
            vc("bi", "tg", "ai"),
        ],
        ..CategoryData::default()
    };
    TwoCategory::from_data(&data, true).expect("sphere category builds")
}

/// The codiscrete category on `names`: exactly one 1-cell between every
/// ordered pair of objects, and no 2-cells besides identities.
pub fn codiscrete(names: &[&str]) -> TwoCategory {
    let n = names.len();
    let cell = |i: usize, j: usize| format!("c_{}_{}", names[i], names[j]);
    let mut data = CategoryData::default();
    for &name in names {
        data.objects.push(name.to_string());
    }
    for i in 0..n {
        for j in 0..n {
            data.one_cells
                .push((cell(i, j), names[i].to_string(), names[j].to_string()));
            data.two_cells.push((
                format!("ii_{}_{}", names[i], names[j]),
                cell(i, j),
                cell(i, j),
            ));
            data.identity2
                .push((cell(i, j), format!("ii_{}_{}", names[i], names[j])));
        }
        data.identity1.push((names[i].to_string(), cell(i, i)));
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k {
                    continue;
                }
                data.comp1.push((cell(j, k), cell(i, j), cell(i, k)));
            }
        }
    }
    TwoCategory::from_data(&data, true).expect("codiscrete category builds")
}

/// The four-object poset `x < a`, `x < b`, `y < a`, `y < b`, as a thin
/// category. Its nerve is a circle, so the fundamental group is infinite
/// cyclic even though no two 1-cells are composable.
pub fn pseudo_circle() -> TwoCategory {
    let mut data = CategoryData {
        objects: vec!["a".into(), "b".into(), "x".into(), "y".into()],
        ..CategoryData::default()
    };
    for (id, s, t) in [
        ("xa", "x", "a"),
        ("xb", "x", "b"),
        ("ya", "y", "a"),
        ("yb", "y", "b"),
    ] {
        data.one_cells.push((id.into(), s.into(), t.into()));
    }
    for o in ["a", "b", "x", "y"] {
        data.one_cells.push((format!("i_{o}"), o.into(), o.into()));
        data.identity1.push((o.into(), format!("i_{o}")));
    }
    for (id, _, _) in data.one_cells.clone() {
        data.two_cells
            .push((format!("ii_{id}"), id.clone(), id.clone()));
        data.identity2.push((id.clone(), format!("ii_{id}")));
    }
    TwoCategory::from_data(&data, true).expect("pseudo-circle builds")
}

/// The unique functor into the terminal category.
pub fn collapse_to_terminal(c: &TwoCategory) -> TwoFunctor {
    let t = terminal();
    let f = TwoFunctor {
        dom: c.clone(),
        cod: t.clone(),
        obj_map: c.objects().map(|_| t.find_object("pt")).collect(),
        one_map: c.one_ids().map(|_| t.find_one("i_pt")).collect(),
        two_map: c.two_ids().map(|_| t.find_two("ii_pt")).collect(),
    };
    f
}

/// The full subcategory on the given objects, together with its inclusion.
pub fn full_subcategory(c: &TwoCategory, keep: &[ObjId]) -> (TwoCategory, TwoFunctor) {
    let keep_obj = |o: ObjId| keep.contains(&o);
    let data = c.to_data();
    let mut sub = CategoryData::default();
    let kept_one: Vec<bool> = c
        .one_ids()
        .map(|f| keep_obj(c.one(f).src) && keep_obj(c.one(f).tgt))
        .collect();
    let kept_two: Vec<bool> = c
        .two_ids()
        .map(|t| kept_one[c.two(t).src.0 as usize])
        .collect();
    for o in c.objects() {
        if keep_obj(o) {
            sub.objects.push(c.object_name(o).to_string());
        }
    }
    for (i, cell) in data.one_cells.iter().enumerate() {
        if kept_one[i] {
            sub.one_cells.push(cell.clone());
        }
    }
    for (i, cell) in data.two_cells.iter().enumerate() {
        if kept_two[i] {
            sub.two_cells.push(cell.clone());
        }
    }
    let keep_one_id = |id: &str| kept_one[c.find_one(id).unwrap().0 as usize];
    let keep_two_id = |id: &str| kept_two[c.find_two(id).unwrap().0 as usize];
    let keep_obj_id = |id: &str| keep_obj(c.find_object(id).unwrap());
    for (o, f) in &data.identity1 {
        if keep_obj_id(o) {
            sub.identity1.push((o.clone(), f.clone()));
        }
    }
    for (f, t) in &data.identity2 {
        if keep_one_id(f) {
            sub.identity2.push((f.clone(), t.clone()));
        }
    }
    for (g, f, h) in &data.comp1 {
        if keep_one_id(g) && keep_one_id(f) {
            sub.comp1.push((g.clone(), f.clone(), h.clone()));
        }
    }
    for (b, a, r) in &data.vcomp {
        if keep_two_id(b) && keep_two_id(a) {
            sub.vcomp.push((b.clone(), a.clone(), r.clone()));
        }
    }
    for (t, i) in &data.inv2 {
        if keep_two_id(t) {
            sub.inv2.push((t.clone(), i.clone()));
        }
    }
    for (f, t, r) in &data.lwhisker {
        if keep_one_id(f) && keep_two_id(t) {
            sub.lwhisker.push((f.clone(), t.clone(), r.clone()));
        }
    }
    for (t, f, r) in &data.rwhisker {
        if keep_two_id(t) && keep_one_id(f) {
            sub.rwhisker.push((t.clone(), f.clone(), r.clone()));
        }
    }
    let subcat = TwoCategory::from_data(&sub, false).expect("full subcategory builds");
    let inclusion = TwoFunctor {
        dom: subcat.clone(),
        cod: c.clone(),
        obj_map: subcat
            .objects()
            .map(|o| c.find_object(subcat.object_name(o)))
            .collect(),
        one_map: subcat
            .one_ids()
            .map(|f| c.find_one(&subcat.one(f).id))
            .collect(),
        two_map: subcat
            .two_ids()
            .map(|t| c.find_two(&subcat.two(t).id))
            .collect(),
    };
    (subcat, inclusion)
}

/// Functor data for the collapse of the walking pair onto the terminal
/// category, the standard example of a 1-final functor that is not 2-final.
pub fn walking_pair_collapse() -> TwoFunctor {
    collapse_to_terminal(&walking_pair())
}

/// Builds a functor from explicit string pairs; convenience for tests.
pub fn functor_from_pairs(
    dom: &TwoCategory,
    cod: &TwoCategory,
    objects: &[(&str, &str)],
    ones: &[(&str, &str)],
    twos: &[(&str, &str)],
) -> TwoFunctor {
    let data = FunctorData {
        objects: objects
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        one_cells: ones
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        two_cells: twos
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    };
    TwoFunctor::from_data(dom, cod, &data, true).expect("functor builds")
}
