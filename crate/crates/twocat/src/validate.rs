//! Brute-force law checking for categories and functors.
//!
//! The checks enumerate every composable tuple in the stored tables; there is
//! no smarter decision procedure behind them, which is the point: the tables
//! are small enough that the enumeration itself is the certificate.

use crate::category::{TwoCategory, TwoFunctor};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Violation {
    /// Stable name of the violated law.
    pub law: String,
    /// Identifiers of the offending cells, in the order they appear in the law.
    pub cells: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from(violations: Vec<Violation>) -> ValidationReport {
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }
}

pub fn validate_two_category(c: &TwoCategory) -> ValidationReport {
    let mut v: Vec<Violation> = Vec::new();
    let mut push = |law: &'static str, cells: Vec<String>| {
        v.push(Violation {
            law: law.to_string(),
            cells,
        })
    };

    // Identities exist and have the right boundaries.
    for a in c.objects() {
        match c.id1(a) {
            None => push("identity1-totality", vec![c.object_name(a).to_string()]),
            Some(i) => {
                let cell = c.one(i);
                if cell.src != a || cell.tgt != a {
                    push(
                        "identity1-boundary",
                        vec![c.object_name(a).to_string(), cell.id.clone()],
                    );
                }
            }
        }
    }
    for f in c.one_ids() {
        match c.id2(f) {
            None => push("identity2-totality", vec![c.one(f).id.clone()]),
            Some(i) => {
                let cell = c.two(i);
                if cell.src != f || cell.tgt != f {
                    push(
                        "identity2-boundary",
                        vec![c.one(f).id.clone(), cell.id.clone()],
                    );
                }
            }
        }
    }
    for t in c.two_ids() {
        let cell = c.two(t);
        if !c.parallel_one(cell.src, cell.tgt) {
            push("two-cell-parallel", vec![cell.id.clone()]);
        }
    }

    // comp1: defined exactly on composable pairs, with forced boundaries.
    for g in c.one_ids() {
        for f in c.one_ids() {
            let composable = c.one(f).tgt == c.one(g).src;
            match c.comp1(g, f) {
                None if composable => push(
                    "comp1-totality",
                    vec![c.one(g).id.clone(), c.one(f).id.clone()],
                ),
                Some(h) if !composable => push(
                    "comp1-domain",
                    vec![
                        c.one(g).id.clone(),
                        c.one(f).id.clone(),
                        c.one(h).id.clone(),
                    ],
                ),
                Some(h)
                    if composable
                        && (c.one(h).src != c.one(f).src || c.one(h).tgt != c.one(g).tgt) =>
                {
                    push(
                        "comp1-boundary",
                        vec![
                            c.one(g).id.clone(),
                            c.one(f).id.clone(),
                            c.one(h).id.clone(),
                        ],
                    )
                }
                _ => {}
            }
        }
    }
    for f in c.one_ids() {
        let (src, tgt) = (c.one(f).src, c.one(f).tgt);
        if let Some(i) = c.id1(src) {
            if let Some(h) = c.comp1(f, i) {
                if h != f {
                    push(
                        "comp1-unit-right",
                        vec![c.one(f).id.clone(), c.one(h).id.clone()],
                    );
                }
            }
        }
        if let Some(i) = c.id1(tgt) {
            if let Some(h) = c.comp1(i, f) {
                if h != f {
                    push(
                        "comp1-unit-left",
                        vec![c.one(f).id.clone(), c.one(h).id.clone()],
                    );
                }
            }
        }
    }
    for h in c.one_ids() {
        for g in c.one_ids() {
            if c.one(g).tgt != c.one(h).src {
                continue;
            }
            for f in c.one_ids() {
                if c.one(f).tgt != c.one(g).src {
                    continue;
                }
                let left = c.comp1(g, f).and_then(|gf| c.comp1(h, gf));
                let right = c.comp1(h, g).and_then(|hg| c.comp1(hg, f));
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        push(
                            "comp1-assoc",
                            vec![
                                c.one(h).id.clone(),
                                c.one(g).id.clone(),
                                c.one(f).id.clone(),
                            ],
                        );
                    }
                }
            }
        }
    }

    // vcomp: defined exactly on vertically composable pairs.
    for b in c.two_ids() {
        for a in c.two_ids() {
            let composable = c.two(a).tgt == c.two(b).src;
            match c.vcomp(b, a) {
                None if composable => push(
                    "vcomp-totality",
                    vec![c.two(b).id.clone(), c.two(a).id.clone()],
                ),
                Some(t) if !composable => push(
                    "vcomp-domain",
                    vec![
                        c.two(b).id.clone(),
                        c.two(a).id.clone(),
                        c.two(t).id.clone(),
                    ],
                ),
                Some(t)
                    if composable
                        && (c.two(t).src != c.two(a).src || c.two(t).tgt != c.two(b).tgt) =>
                {
                    push(
                        "vcomp-boundary",
                        vec![
                            c.two(b).id.clone(),
                            c.two(a).id.clone(),
                            c.two(t).id.clone(),
                        ],
                    )
                }
                _ => {}
            }
        }
    }
    for t in c.two_ids() {
        let (src, tgt) = (c.two(t).src, c.two(t).tgt);
        if let Some(i) = c.id2(src) {
            if let Some(r) = c.vcomp(t, i) {
                if r != t {
                    push(
                        "vcomp-unit-right",
                        vec![c.two(t).id.clone(), c.two(r).id.clone()],
                    );
                }
            }
        }
        if let Some(i) = c.id2(tgt) {
            if let Some(r) = c.vcomp(i, t) {
                if r != t {
                    push(
                        "vcomp-unit-left",
                        vec![c.two(t).id.clone(), c.two(r).id.clone()],
                    );
                }
            }
        }
    }
    for z in c.two_ids() {
        for y in c.two_ids() {
            if c.two(y).tgt != c.two(z).src {
                continue;
            }
            for x in c.two_ids() {
                if c.two(x).tgt != c.two(y).src {
                    continue;
                }
                let left = c.vcomp(y, x).and_then(|yx| c.vcomp(z, yx));
                let right = c.vcomp(z, y).and_then(|zy| c.vcomp(zy, x));
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        push(
                            "vcomp-assoc",
                            vec![
                                c.two(z).id.clone(),
                                c.two(y).id.clone(),
                                c.two(x).id.clone(),
                            ],
                        );
                    }
                }
            }
        }
    }

    // Every 2-cell is invertible.
    for t in c.two_ids() {
        match c.inv2(t) {
            None => push("inv2-totality", vec![c.two(t).id.clone()]),
            Some(i) => {
                if c.two(i).src != c.two(t).tgt || c.two(i).tgt != c.two(t).src {
                    push(
                        "inv2-boundary",
                        vec![c.two(t).id.clone(), c.two(i).id.clone()],
                    );
                } else {
                    if let (Some(l), Some(e)) = (c.vcomp(i, t), c.id2(c.two(t).src)) {
                        if l != e {
                            push("inv2-left", vec![c.two(t).id.clone(), c.two(i).id.clone()]);
                        }
                    }
                    if let (Some(r), Some(e)) = (c.vcomp(t, i), c.id2(c.two(t).tgt)) {
                        if r != e {
                            push("inv2-right", vec![c.two(t).id.clone(), c.two(i).id.clone()]);
                        }
                    }
                }
            }
        }
    }

    // Whiskering: domains, boundaries, functoriality.
    for f in c.one_ids() {
        for t in c.two_ids() {
            let b = c.one(c.two(t).src).tgt;
            let applicable = c.one(f).src == b;
            match c.lwhisker(f, t) {
                None if applicable => push(
                    "lwhisker-totality",
                    vec![c.one(f).id.clone(), c.two(t).id.clone()],
                ),
                Some(r) if !applicable => push(
                    "lwhisker-domain",
                    vec![
                        c.one(f).id.clone(),
                        c.two(t).id.clone(),
                        c.two(r).id.clone(),
                    ],
                ),
                Some(r) if applicable => {
                    let want_src = c.comp1(f, c.two(t).src);
                    let want_tgt = c.comp1(f, c.two(t).tgt);
                    if let (Some(ws), Some(wt)) = (want_src, want_tgt) {
                        if c.two(r).src != ws || c.two(r).tgt != wt {
                            push(
                                "lwhisker-boundary",
                                vec![
                                    c.one(f).id.clone(),
                                    c.two(t).id.clone(),
                                    c.two(r).id.clone(),
                                ],
                            );
                        }
                    }
                }
                _ => {}
            }
        }
    }
    for t in c.two_ids() {
        for f in c.one_ids() {
            let a = c.one(c.two(t).src).src;
            let applicable = c.one(f).tgt == a;
            match c.rwhisker(t, f) {
                None if applicable => push(
                    "rwhisker-totality",
                    vec![c.two(t).id.clone(), c.one(f).id.clone()],
                ),
                Some(r) if !applicable => push(
                    "rwhisker-domain",
                    vec![
                        c.two(t).id.clone(),
                        c.one(f).id.clone(),
                        c.two(r).id.clone(),
                    ],
                ),
                Some(r) if applicable => {
                    let want_src = c.comp1(c.two(t).src, f);
                    let want_tgt = c.comp1(c.two(t).tgt, f);
                    if let (Some(ws), Some(wt)) = (want_src, want_tgt) {
                        if c.two(r).src != ws || c.two(r).tgt != wt {
                            push(
                                "rwhisker-boundary",
                                vec![
                                    c.two(t).id.clone(),
                                    c.one(f).id.clone(),
                                    c.two(r).id.clone(),
                                ],
                            );
                        }
                    }
                }
                _ => {}
            }
        }
    }
    for f in c.one_ids() {
        for g in c.one_ids() {
            if c.one(g).tgt != c.one(f).src {
                continue;
            }
            if let (Some(ig), Some(h)) = (c.id2(g), c.comp1(f, g)) {
                if let (Some(r), Some(ih)) = (c.lwhisker(f, ig), c.id2(h)) {
                    if r != ih {
                        push(
                            "whisker-id2",
                            vec![c.one(f).id.clone(), c.two(ig).id.clone()],
                        );
                    }
                }
            }
        }
    }
    for g in c.one_ids() {
        for f in c.one_ids() {
            if c.one(f).tgt != c.one(g).src {
                continue;
            }
            if let (Some(ig), Some(h)) = (c.id2(g), c.comp1(g, f)) {
                if let (Some(r), Some(ih)) = (c.rwhisker(ig, f), c.id2(h)) {
                    if r != ih {
                        push(
                            "whisker-id2",
                            vec![c.two(ig).id.clone(), c.one(f).id.clone()],
                        );
                    }
                }
            }
        }
    }
    for f in c.one_ids() {
        for b in c.two_ids() {
            for a in c.two_ids() {
                if c.two(a).tgt != c.two(b).src {
                    continue;
                }
                if c.one(f).src != c.one(c.two(a).src).tgt {
                    continue;
                }
                let left = c.vcomp(b, a).and_then(|ba| c.lwhisker(f, ba));
                let right = match (c.lwhisker(f, b), c.lwhisker(f, a)) {
                    (Some(fb), Some(fa)) => c.vcomp(fb, fa),
                    _ => None,
                };
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        push(
                            "whisker-vcomp",
                            vec![
                                c.one(f).id.clone(),
                                c.two(b).id.clone(),
                                c.two(a).id.clone(),
                            ],
                        );
                    }
                }
            }
        }
    }
    for b in c.two_ids() {
        for a in c.two_ids() {
            if c.two(a).tgt != c.two(b).src {
                continue;
            }
            for f in c.one_ids() {
                if c.one(f).tgt != c.one(c.two(a).src).src {
                    continue;
                }
                let left = c.vcomp(b, a).and_then(|ba| c.rwhisker(ba, f));
                let right = match (c.rwhisker(b, f), c.rwhisker(a, f)) {
                    (Some(bf), Some(af)) => c.vcomp(bf, af),
                    _ => None,
                };
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        push(
                            "whisker-vcomp",
                            vec![
                                c.two(b).id.clone(),
                                c.two(a).id.clone(),
                                c.one(f).id.clone(),
                            ],
                        );
                    }
                }
            }
        }
    }
    for g in c.one_ids() {
        for f in c.one_ids() {
            if c.one(f).tgt != c.one(g).src {
                continue;
            }
            for t in c.two_ids() {
                if c.one(c.two(t).src).tgt != c.one(f).src {
                    continue;
                }
                let left = c.comp1(g, f).and_then(|gf| c.lwhisker(gf, t));
                let right = c.lwhisker(f, t).and_then(|ft| c.lwhisker(g, ft));
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        push(
                            "whisker-comp1",
                            vec![
                                c.one(g).id.clone(),
                                c.one(f).id.clone(),
                                c.two(t).id.clone(),
                            ],
                        );
                    }
                }
            }
        }
    }
    for t in c.two_ids() {
        for g in c.one_ids() {
            if c.one(g).tgt != c.one(c.two(t).src).src {
                continue;
            }
            for f in c.one_ids() {
                if c.one(f).tgt != c.one(g).src {
                    continue;
                }
                let left = c.comp1(g, f).and_then(|gf| c.rwhisker(t, gf));
                let right = c.rwhisker(t, g).and_then(|tg| c.rwhisker(tg, f));
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        push(
                            "whisker-comp1",
                            vec![
                                c.two(t).id.clone(),
                                c.one(g).id.clone(),
                                c.one(f).id.clone(),
                            ],
                        );
                    }
                }
            }
        }
    }
    for t in c.two_ids() {
        let cell = c.two(t);
        let (a, b) = (c.one(cell.src).src, c.one(cell.src).tgt);
        if let Some(i) = c.id1(b) {
            if let Some(r) = c.lwhisker(i, t) {
                if r != t {
                    push("whisker-id1", vec![c.one(i).id.clone(), cell.id.clone()]);
                }
            }
        }
        if let Some(i) = c.id1(a) {
            if let Some(r) = c.rwhisker(t, i) {
                if r != t {
                    push("whisker-id1", vec![cell.id.clone(), c.one(i).id.clone()]);
                }
            }
        }
    }
    for f in c.one_ids() {
        for t in c.two_ids() {
            if c.one(c.two(t).src).tgt != c.one(f).src {
                continue;
            }
            for h in c.one_ids() {
                if c.one(h).tgt != c.one(c.two(t).src).src {
                    continue;
                }
                let left = c.rwhisker(t, h).and_then(|th| c.lwhisker(f, th));
                let right = c.lwhisker(f, t).and_then(|ft| c.rwhisker(ft, h));
                if let (Some(l), Some(r)) = (left, right) {
                    if l != r {
                        push(
                            "whisker-assoc",
                            vec![
                                c.one(f).id.clone(),
                                c.two(t).id.clone(),
                                c.one(h).id.clone(),
                            ],
                        );
                    }
                }
            }
        }
    }
    // Interchange: the two whisker-then-paste orders of a square agree.
    for alpha in c.two_ids() {
        let (f0, f1) = (c.two(alpha).src, c.two(alpha).tgt);
        let mid = c.one(f0).tgt;
        for beta in c.two_ids() {
            let (g0, g1) = (c.two(beta).src, c.two(beta).tgt);
            if c.one(g0).src != mid {
                continue;
            }
            let left = match (c.rwhisker(beta, f1), c.lwhisker(g0, alpha)) {
                (Some(x), Some(y)) => c.vcomp(x, y),
                _ => None,
            };
            let right = match (c.lwhisker(g1, alpha), c.rwhisker(beta, f0)) {
                (Some(x), Some(y)) => c.vcomp(x, y),
                _ => None,
            };
            if let (Some(l), Some(r)) = (left, right) {
                if l != r {
                    push(
                        "interchange",
                        vec![c.two(beta).id.clone(), c.two(alpha).id.clone()],
                    );
                }
            }
        }
    }

    ValidationReport::from(v)
}

pub fn validate_two_functor(func: &TwoFunctor) -> ValidationReport {
    let mut v: Vec<Violation> = Vec::new();
    let mut push = |law: &'static str, cells: Vec<String>| {
        v.push(Violation {
            law: law.to_string(),
            cells,
        })
    };
    let (d, c) = (&func.dom, &func.cod);

    for a in d.objects() {
        if func.fob(a).is_none() {
            push("map-totality", vec![d.object_name(a).to_string()]);
        }
    }
    for f in d.one_ids() {
        if func.fone(f).is_none() {
            push("map-totality", vec![d.one(f).id.clone()]);
        }
    }
    for t in d.two_ids() {
        if func.ftwo(t).is_none() {
            push("map-totality", vec![d.two(t).id.clone()]);
        }
    }

    for f in d.one_ids() {
        if let Some(ff) = func.fone(f) {
            if let (Some(s), Some(t)) = (func.fob(d.one(f).src), func.fob(d.one(f).tgt)) {
                if c.one(ff).src != s || c.one(ff).tgt != t {
                    push(
                        "one-boundary",
                        vec![d.one(f).id.clone(), c.one(ff).id.clone()],
                    );
                }
            }
        }
    }
    for t in d.two_ids() {
        if let Some(ft) = func.ftwo(t) {
            if let (Some(s), Some(g)) = (func.fone(d.two(t).src), func.fone(d.two(t).tgt)) {
                if c.two(ft).src != s || c.two(ft).tgt != g {
                    push(
                        "two-boundary",
                        vec![d.two(t).id.clone(), c.two(ft).id.clone()],
                    );
                }
            }
        }
    }
    for a in d.objects() {
        if let (Some(i), Some(fa)) = (d.id1(a), func.fob(a)) {
            if let (Some(fi), Some(ic)) = (func.fone(i), c.id1(fa)) {
                if fi != ic {
                    push(
                        "identity1-preserved",
                        vec![d.object_name(a).to_string(), c.one(fi).id.clone()],
                    );
                }
            }
        }
    }
    for f in d.one_ids() {
        if let (Some(i), Some(ff)) = (d.id2(f), func.fone(f)) {
            if let (Some(fi), Some(ic)) = (func.ftwo(i), c.id2(ff)) {
                if fi != ic {
                    push(
                        "identity2-preserved",
                        vec![d.one(f).id.clone(), c.two(fi).id.clone()],
                    );
                }
            }
        }
    }
    for g in d.one_ids() {
        for f in d.one_ids() {
            if d.one(f).tgt != d.one(g).src {
                continue;
            }
            let lhs = d.comp1(g, f).and_then(|h| func.fone(h));
            let rhs = match (func.fone(g), func.fone(f)) {
                (Some(fg), Some(ff)) => c.comp1(fg, ff),
                _ => None,
            };
            if let (Some(l), Some(r)) = (lhs, rhs) {
                if l != r {
                    push(
                        "comp1-preserved",
                        vec![d.one(g).id.clone(), d.one(f).id.clone()],
                    );
                }
            }
        }
    }
    for b in d.two_ids() {
        for a in d.two_ids() {
            if d.two(a).tgt != d.two(b).src {
                continue;
            }
            let lhs = d.vcomp(b, a).and_then(|t| func.ftwo(t));
            let rhs = match (func.ftwo(b), func.ftwo(a)) {
                (Some(fb), Some(fa)) => c.vcomp(fb, fa),
                _ => None,
            };
            if let (Some(l), Some(r)) = (lhs, rhs) {
                if l != r {
                    push(
                        "vcomp-preserved",
                        vec![d.two(b).id.clone(), d.two(a).id.clone()],
                    );
                }
            }
        }
    }
    for t in d.two_ids() {
        let lhs = d.inv2(t).and_then(|i| func.ftwo(i));
        let rhs = func.ftwo(t).and_then(|ft| c.inv2(ft));
        if let (Some(l), Some(r)) = (lhs, rhs) {
            if l != r {
                push("inv2-preserved", vec![d.two(t).id.clone()]);
            }
        }
    }
    for f in d.one_ids() {
        for t in d.two_ids() {
            if d.one(d.two(t).src).tgt != d.one(f).src {
                continue;
            }
            let lhs = d.lwhisker(f, t).and_then(|r| func.ftwo(r));
            let rhs = match (func.fone(f), func.ftwo(t)) {
                (Some(ff), Some(ft)) => c.lwhisker(ff, ft),
                _ => None,
            };
            if let (Some(l), Some(r)) = (lhs, rhs) {
                if l != r {
                    push(
                        "lwhisker-preserved",
                        vec![d.one(f).id.clone(), d.two(t).id.clone()],
                    );
                }
            }
        }
    }
    for t in d.two_ids() {
        for f in d.one_ids() {
            if d.one(f).tgt != d.one(d.two(t).src).src {
                continue;
            }
            let lhs = d.rwhisker(t, f).and_then(|r| func.ftwo(r));
            let rhs = match (func.ftwo(t), func.fone(f)) {
                (Some(ft), Some(ff)) => c.rwhisker(ft, ff),
                _ => None,
            };
            if let (Some(l), Some(r)) = (lhs, rhs) {
                if l != r {
                    push(
                        "rwhisker-preserved",
                        vec![d.two(t).id.clone(), d.one(f).id.clone()],
                    );
                }
            }
        }
    }

    ValidationReport::from(v)
}
