//! Zig-zag paths in the 1-skeleton of a category.

use crate::category::{ObjId, OneId, TwoCategory, TwoFunctor};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    /// The 1-cell is traversed from its source to its target.
    Fwd,
    /// The 1-cell is traversed against its direction.
    Bwd,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Step {
    pub sign: Sign,
    pub cell: OneId,
}

impl Step {
    pub fn fwd(cell: OneId) -> Step {
        Step {
            sign: Sign::Fwd,
            cell,
        }
    }
    pub fn bwd(cell: OneId) -> Step {
        Step {
            sign: Sign::Bwd,
            cell,
        }
    }
    pub fn flip(self) -> Step {
        Step {
            sign: match self.sign {
                Sign::Fwd => Sign::Bwd,
                Sign::Bwd => Sign::Fwd,
            },
            cell: self.cell,
        }
    }
    /// Where this step leads when taken at object `at`, if it applies there.
    pub fn lead(self, cat: &TwoCategory, at: ObjId) -> Option<ObjId> {
        let cell = cat.one(self.cell);
        match self.sign {
            Sign::Fwd if cell.src == at => Some(cell.tgt),
            Sign::Bwd if cell.tgt == at => Some(cell.src),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    pub start: ObjId,
    pub steps: Vec<Step>,
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum PathError {
    #[error("step {index} does not chain: `{cell}` cannot be taken at `{at}`")]
    Broken {
        index: usize,
        cell: String,
        at: String,
    },
    #[error("paths do not concatenate: first ends at `{end}`, second starts at `{start}`")]
    EndpointMismatch { end: String, start: String },
}

impl Path {
    pub fn empty(start: ObjId) -> Path {
        Path {
            start,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The sequence of visited objects, one longer than the step list.
    /// Fails on the first step that does not chain.
    pub fn objects(&self, cat: &TwoCategory) -> Result<Vec<ObjId>, PathError> {
        let mut at = self.start;
        let mut out = vec![at];
        for (i, s) in self.steps.iter().enumerate() {
            at = s.lead(cat, at).ok_or_else(|| PathError::Broken {
                index: i,
                cell: cat.one(s.cell).id.clone(),
                at: cat.object_name(at).to_string(),
            })?;
            out.push(at);
        }
        Ok(out)
    }

    pub fn check(&self, cat: &TwoCategory) -> Result<(), PathError> {
        self.objects(cat).map(|_| ())
    }

    pub fn end(&self, cat: &TwoCategory) -> Result<ObjId, PathError> {
        Ok(*self.objects(cat)?.last().unwrap())
    }

    pub fn concat(&self, cat: &TwoCategory, other: &Path) -> Result<Path, PathError> {
        let end = self.end(cat)?;
        if end != other.start {
            return Err(PathError::EndpointMismatch {
                end: cat.object_name(end).to_string(),
                start: cat.object_name(other.start).to_string(),
            });
        }
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().copied());
        Ok(Path {
            start: self.start,
            steps,
        })
    }

    /// The same path read backwards.
    pub fn reverse(&self, cat: &TwoCategory) -> Result<Path, PathError> {
        let end = self.end(cat)?;
        Ok(Path {
            start: end,
            steps: self.steps.iter().rev().map(|s| s.flip()).collect(),
        })
    }

    pub fn display<'a>(&'a self, cat: &'a TwoCategory) -> PathDisplay<'a> {
        PathDisplay { path: self, cat }
    }
}

/// Push a path forward along a functor, step by step.
pub fn map_path(fun: &TwoFunctor, p: &Path) -> Path {
    Path {
        start: fun.fob_req(p.start),
        steps: p
            .steps
            .iter()
            .map(|s| Step {
                sign: s.sign,
                cell: fun.fone_req(s.cell),
            })
            .collect(),
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    cat: &'a TwoCategory,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cat.object_name(self.path.start))?;
        for s in &self.path.steps {
            let sign = match s.sign {
                Sign::Fwd => '+',
                Sign::Bwd => '-',
            };
            write!(f, " {}{}", sign, self.cat.one(s.cell).id)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn paths_chain_and_reverse() {
        let c = fixtures::walking_pair();
        let x = c.find_object("x").unwrap();
        let y = c.find_object("y").unwrap();
        let f = c.find_one("f").unwrap();
        let g = c.find_one("g").unwrap();
        let p = Path {
            start: x,
            steps: vec![Step::fwd(f), Step::bwd(g)],
        };
        assert_eq!(p.end(&c).unwrap(), x);
        let objs = p.objects(&c).unwrap();
        assert_eq!(objs, vec![x, y, x]);
        let r = p.reverse(&c).unwrap();
        assert_eq!(r.start, x);
        assert_eq!(r.steps, vec![Step::fwd(g), Step::bwd(f)]);
        assert_eq!(r.reverse(&c).unwrap(), p);
    }

    #[test]
    fn broken_paths_are_rejected() {
        let c = fixtures::walking_pair();
        let y = c.find_object("y").unwrap();
        let f = c.find_one("f").unwrap();
        let p = Path {
            start: y,
            steps: vec![Step::fwd(f)],
        };
        assert!(matches!(
            p.check(&c),
            Err(PathError::Broken { index: 0, .. })
        ));
    }

    #[test]
    fn concat_requires_matching_endpoints() {
        let c = fixtures::walking_pair();
        let x = c.find_object("x").unwrap();
        let f = c.find_one("f").unwrap();
        let p = Path {
            start: x,
            steps: vec![Step::fwd(f)],
        };
        let q = Path::empty(x);
        assert!(p.concat(&c, &q).is_err());
        let pq = p.concat(&c, &p.reverse(&c).unwrap()).unwrap();
        assert_eq!(pq.len(), 2);
        assert_eq!(pq.end(&c).unwrap(), x);
    }
}
