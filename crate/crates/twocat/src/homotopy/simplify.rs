//! Bounded presentation simplification with an abelian certificate.
//!
//! Pipeline: freely and cyclically reduce, abelianise through Smith normal
//! form (a nontrivial abelianisation settles the question outright), then
//! spend the step budget on Tietze transformations. A presentation that
//! empties out is certified trivial; anything still standing when the
//! budget runs dry stays undecided.

use crate::homotopy::presentation::{cyclic_reduce, free_reduce, GroupPresentation, Word};
use crate::homotopy::snf::{smith_normal_form, Snf};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Verdict {
    Trivial,
    Nontrivial,
    Unknown,
}

/// Evidence extracted from the abelianisation: the group surjects onto
/// `Z^free_rank x prod Z/d` for the listed factors.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AbelianCertificate {
    pub invariant_factors: Vec<i64>,
    pub free_rank: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimplifyOutcome {
    pub verdict: Verdict,
    pub presentation: GroupPresentation,
    pub certificate: Option<AbelianCertificate>,
    pub steps_used: u64,
}

fn abelianise(pres: &GroupPresentation) -> Snf {
    let g = pres.generators.len();
    let mut entries = vec![0i128; pres.relators.len() * g];
    for (i, r) in pres.relators.iter().enumerate() {
        for &l in r {
            entries[i * g + (l.abs() - 1) as usize] += l.signum() as i128;
        }
    }
    smith_normal_form(pres.relators.len(), g, &entries)
}

/// Multiset of nonunit invariant factors plus free rank: the part of the
/// Smith form every sound simplification step must leave alone.
fn abelian_signature(pres: &GroupPresentation) -> (Vec<i128>, usize) {
    let s = abelianise(pres);
    let mut t = s.torsion();
    t.sort_unstable();
    (t, s.coker_free_rank())
}

fn normalise(pres: &mut GroupPresentation) {
    let mut seen = Vec::new();
    for r in std::mem::take(&mut pres.relators) {
        let r = cyclic_reduce(&r);
        if !r.is_empty() && !seen.contains(&r) {
            seen.push(r);
        }
    }
    pres.relators = seen;
}

/// Substitutes a defining relator into a word. `gen` is a positive letter,
/// `repl` the word it equals (so the relator was `gen * repl^-1`-ish).
fn substitute(w: &[i32], gen: i32, repl: &[i32]) -> Word {
    let inv: Word = repl.iter().rev().map(|&l| -l).collect();
    let mut out = Vec::new();
    for &l in w {
        if l == gen {
            out.extend_from_slice(repl);
        } else if l == -gen {
            out.extend_from_slice(&inv);
        } else {
            out.push(l);
        }
    }
    free_reduce(&out)
}

/// Removes generator `gen` (positive letter) from the indexing, shifting
/// letters above it down.
fn drop_generator(pres: &mut GroupPresentation, gen: i32) {
    let idx = (gen - 1) as usize;
    pres.generators.remove(idx);
    for r in &mut pres.relators {
        for l in r.iter_mut() {
            let a = l.abs();
            debug_assert!(a != gen);
            if a > gen {
                *l = l.signum() * (a - 1);
            }
        }
    }
}

/// One Tietze generator elimination: find a relator in which some letter
/// occurs exactly once, solve for it, substitute everywhere. Returns true
/// if a generator was removed.
fn eliminate_once(pres: &mut GroupPresentation) -> bool {
    for ri in 0..pres.relators.len() {
        let r = &pres.relators[ri];
        for (pos, &l) in r.iter().enumerate() {
            let occurrences = r.iter().filter(|&&x| x.abs() == l.abs()).count();
            if occurrences != 1 {
                continue;
            }
            // Rotate so the chosen letter leads: r = l * tail, hence
            // l = tail^-1 (as a relator, r == 1).
            let mut rot = r[pos..].to_vec();
            rot.extend_from_slice(&r[..pos]);
            let tail = &rot[1..];
            let repl: Word = tail.iter().rev().map(|&x| -x).collect();
            let (gen, repl) = if l > 0 {
                (l, repl)
            } else {
                (-l, repl.iter().rev().map(|&x| -x).collect())
            };
            let rows: Vec<Word> = pres
                .relators
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != ri)
                .map(|(_, w)| substitute(w, gen, &repl))
                .collect();
            pres.relators = rows;
            drop_generator(pres, gen);
            normalise(pres);
            return true;
        }
    }
    false
}

/// One length-reducing consequence substitution: when more than half of a
/// short relator appears inside a longer one, rewrite the long one through
/// the short one. Returns true if some relator shrank.
fn shorten_once(pres: &mut GroupPresentation) -> bool {
    let relators = pres.relators.clone();
    for (si, s) in relators.iter().enumerate() {
        // All cyclic rotations of s and its inverse are usable equations.
        let mut variants: Vec<Word> = Vec::new();
        let inv: Word = s.iter().rev().map(|&l| -l).collect();
        for base in [s.clone(), inv] {
            for k in 0..base.len() {
                let mut rot = base[k..].to_vec();
                rot.extend_from_slice(&base[..k]);
                if !variants.contains(&rot) {
                    variants.push(rot);
                }
            }
        }
        for (li, long) in relators.iter().enumerate() {
            if li == si || long.len() < s.len() {
                continue;
            }
            let half = s.len() / 2 + 1;
            for var in &variants {
                let window = &var[..half.min(var.len())];
                if window.is_empty() || window.len() > long.len() {
                    continue;
                }
                for start in 0..=(long.len() - window.len()) {
                    if &long[start..start + window.len()] != window {
                        continue;
                    }
                    // window == first `half` letters of var, and var == 1,
                    // so window == (rest of var)^-1 which is shorter.
                    let rest = &var[window.len()..];
                    let repl: Word = rest.iter().rev().map(|&l| -l).collect();
                    if repl.len() >= window.len() {
                        continue;
                    }
                    let mut new_long = long[..start].to_vec();
                    new_long.extend_from_slice(&repl);
                    new_long.extend_from_slice(&long[start + window.len()..]);
                    let new_long = free_reduce(&new_long);
                    if new_long.len() < long.len() {
                        pres.relators[li] = new_long;
                        normalise(pres);
                        return true;
                    }
                }
            }
        }
    }
    false
}

pub fn simplify(pres: &GroupPresentation, budget: u64) -> SimplifyOutcome {
    let mut p = pres.clone();
    normalise(&mut p);

    let snf = abelianise(&p);
    let certificate = AbelianCertificate {
        invariant_factors: snf.torsion().iter().map(|&d| d as i64).collect(),
        free_rank: snf.coker_free_rank() as u32,
    };
    if !snf.coker_trivial() {
        return SimplifyOutcome {
            verdict: Verdict::Nontrivial,
            presentation: p,
            certificate: Some(certificate),
            steps_used: 0,
        };
    }

    let signature = abelian_signature(&p);
    let mut steps = 0u64;
    while steps < budget && !p.generators.is_empty() {
        let acted = eliminate_once(&mut p) || shorten_once(&mut p);
        if !acted {
            break;
        }
        steps += 1;
        debug_assert_eq!(
            abelian_signature(&p),
            signature,
            "a simplification step changed the abelianisation"
        );
    }

    let verdict = if p.generators.is_empty() {
        Verdict::Trivial
    } else {
        Verdict::Unknown
    };
    SimplifyOutcome {
        verdict,
        presentation: p,
        certificate: None,
        steps_used: steps,
    }
}
