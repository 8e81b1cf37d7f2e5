//! Elementary homotopies between zig-zag paths.
//!
//! Five bidirectional rewrites generate the homotopy relation:
//!
//! 1. drop or insert a forward identity step,
//! 2. drop or insert a backward identity step,
//! 3. fuse two forward steps into their composite, or split one,
//! 4. fuse two backward steps into their composite, or split one,
//! 5. exchange a cospan window `-u +v` for a span window `+u' -v'`
//!    when some 2-cell `comp1(u',u) => comp1(v',v)` exists.

use crate::category::{OneId, TwoCategory, TwoId};
use crate::homotopy::path::{Path, Sign, Step};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MoveKind {
    DropIdFwd,
    DropIdBwd,
    FuseFwd,
    FuseBwd,
    Exchange,
}

/// Which way a bidirectional rewrite is applied.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MoveDir {
    Apply,
    Unapply,
}

/// Extra data some applications need.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MoveData {
    None,
    /// Identity insertion: the object whose identity is inserted is implied
    /// by the position, nothing extra is needed.
    /// Splitting a composite `h` into `(f, g)`: the two factors, in path order.
    Factors(OneId, OneId),
    /// Exchange witness: the replacement pair in path order plus the 2-cell
    /// relating the two composites.
    Square {
        first: OneId,
        second: OneId,
        cell: TwoId,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum MoveError {
    #[error("position {pos} is out of range for a path of length {len}")]
    OutOfRange { pos: usize, len: usize },
    #[error("path window at {pos} does not match the move pattern")]
    PatternMismatch { pos: usize },
    #[error("move witness is malformed: {reason}")]
    BadWitness { reason: String },
    #[error("path is broken: {0}")]
    BrokenPath(#[from] crate::homotopy::path::PathError),
}

fn bad(reason: impl Into<String>) -> MoveError {
    MoveError::BadWitness {
        reason: reason.into(),
    }
}

/// Applies one elementary move at `pos` and returns the rewritten path.
/// `Apply` reads the move left to right as listed in the module docs,
/// `Unapply` right to left. Everything is validated; nothing panics.
pub fn elementary_step(
    cat: &TwoCategory,
    path: &Path,
    pos: usize,
    kind: MoveKind,
    dir: MoveDir,
    data: &MoveData,
) -> Result<Path, MoveError> {
    let objs = path.objects(cat)?;
    let len = path.steps.len();
    let mut steps = path.steps.clone();
    match (kind, dir) {
        (MoveKind::DropIdFwd, MoveDir::Apply) | (MoveKind::DropIdBwd, MoveDir::Apply) => {
            let want = if kind == MoveKind::DropIdFwd {
                Sign::Fwd
            } else {
                Sign::Bwd
            };
            if pos >= len {
                return Err(MoveError::OutOfRange { pos, len });
            }
            let s = steps[pos];
            if s.sign != want || !cat.is_identity1(s.cell) {
                return Err(MoveError::PatternMismatch { pos });
            }
            steps.remove(pos);
        }
        (MoveKind::DropIdFwd, MoveDir::Unapply) | (MoveKind::DropIdBwd, MoveDir::Unapply) => {
            // Insert the identity of the object sitting at `pos`.
            if pos > len {
                return Err(MoveError::OutOfRange { pos, len });
            }
            let obj = objs[pos];
            let id = cat
                .id1(obj)
                .ok_or_else(|| bad(format!("object `{}` has no identity", cat.object_name(obj))))?;
            let sign = if kind == MoveKind::DropIdFwd {
                Sign::Fwd
            } else {
                Sign::Bwd
            };
            steps.insert(pos, Step { sign, cell: id });
        }
        (MoveKind::FuseFwd, MoveDir::Apply) => {
            if pos + 1 >= len {
                return Err(MoveError::OutOfRange { pos, len });
            }
            let (a, b) = (steps[pos], steps[pos + 1]);
            if a.sign != Sign::Fwd || b.sign != Sign::Fwd {
                return Err(MoveError::PatternMismatch { pos });
            }
            let h = cat
                .comp1(b.cell, a.cell)
                .ok_or(MoveError::PatternMismatch { pos })?;
            steps.splice(pos..pos + 2, [Step::fwd(h)]);
        }
        (MoveKind::FuseBwd, MoveDir::Apply) => {
            if pos + 1 >= len {
                return Err(MoveError::OutOfRange { pos, len });
            }
            let (a, b) = (steps[pos], steps[pos + 1]);
            if a.sign != Sign::Bwd || b.sign != Sign::Bwd {
                return Err(MoveError::PatternMismatch { pos });
            }
            let h = cat
                .comp1(a.cell, b.cell)
                .ok_or(MoveError::PatternMismatch { pos })?;
            steps.splice(pos..pos + 2, [Step::bwd(h)]);
        }
        (MoveKind::FuseFwd, MoveDir::Unapply) => {
            if pos >= len {
                return Err(MoveError::OutOfRange { pos, len });
            }
            let MoveData::Factors(f, g) = data else {
                return Err(bad("splitting a forward step needs the two factors"));
            };
            let s = steps[pos];
            if s.sign != Sign::Fwd {
                return Err(MoveError::PatternMismatch { pos });
            }
            if cat.comp1(*g, *f) != Some(s.cell) {
                return Err(bad("factors do not compose to the fused step"));
            }
            steps.splice(pos..pos + 1, [Step::fwd(*f), Step::fwd(*g)]);
        }
        (MoveKind::FuseBwd, MoveDir::Unapply) => {
            if pos >= len {
                return Err(MoveError::OutOfRange { pos, len });
            }
            let MoveData::Factors(f, g) = data else {
                return Err(bad("splitting a backward step needs the two factors"));
            };
            let s = steps[pos];
            if s.sign != Sign::Bwd {
                return Err(MoveError::PatternMismatch { pos });
            }
            if cat.comp1(*f, *g) != Some(s.cell) {
                return Err(bad("factors do not compose to the fused step"));
            }
            steps.splice(pos..pos + 1, [Step::bwd(*f), Step::bwd(*g)]);
        }
        (MoveKind::Exchange, dir) => {
            if pos + 1 >= len {
                return Err(MoveError::OutOfRange { pos, len });
            }
            let MoveData::Square {
                first,
                second,
                cell,
            } = data
            else {
                return Err(bad("an exchange needs its replacement pair and 2-cell"));
            };
            let (a, b) = (steps[pos], steps[pos + 1]);
            let two = cat.two(*cell);
            // Apply:   -u +v  =>  +u' -v'   with  cell : comp1(u',u) => comp1(v',v)
            // Unapply: +u' -v' =>  -u +v    with the same witness shape.
            let (u, v, u2, v2) = match dir {
                MoveDir::Apply => {
                    if a.sign != Sign::Bwd || b.sign != Sign::Fwd {
                        return Err(MoveError::PatternMismatch { pos });
                    }
                    (a.cell, b.cell, *first, *second)
                }
                MoveDir::Unapply => {
                    if a.sign != Sign::Fwd || b.sign != Sign::Bwd {
                        return Err(MoveError::PatternMismatch { pos });
                    }
                    (*first, *second, a.cell, b.cell)
                }
            };
            let lhs = cat
                .comp1(u2, u)
                .ok_or_else(|| bad("replacement does not compose with the window"))?;
            let rhs = cat
                .comp1(v2, v)
                .ok_or_else(|| bad("replacement does not compose with the window"))?;
            if two.src != lhs || two.tgt != rhs {
                return Err(bad("2-cell does not relate the two composites"));
            }
            // Endpoint preservation.
            let (o0, o2) = (objs[pos], objs[pos + 2]);
            let (ru, rv) = match dir {
                MoveDir::Apply => (u2, v2),
                MoveDir::Unapply => (u, v),
            };
            match dir {
                MoveDir::Apply => {
                    if cat.one(ru).src != o0 || cat.one(rv).src != o2 {
                        return Err(bad("replacement pair does not keep the endpoints"));
                    }
                    steps.splice(pos..pos + 2, [Step::fwd(ru), Step::bwd(rv)]);
                }
                MoveDir::Unapply => {
                    if cat.one(ru).tgt != o0 || cat.one(rv).tgt != o2 {
                        return Err(bad("replacement pair does not keep the endpoints"));
                    }
                    steps.splice(pos..pos + 2, [Step::bwd(ru), Step::fwd(rv)]);
                }
            }
        }
    }
    let out = Path {
        start: path.start,
        steps,
    };
    out.check(cat)?;
    Ok(out)
}
