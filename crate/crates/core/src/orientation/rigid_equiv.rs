use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, VertexSet};
use crate::oracle::Witness;
use crate::setfunc::SetFunc;
use crate::sparsity::exhaustive::induced_table;
use crate::sparsity::{is_sparse, Sparsity};

use super::hakimi::{hakimi_orient, HakimiOutcome};
use super::{verify_arc, Orientation, MAX_ARC_SWEEP};

#[derive(Clone, Copy, Debug)]
pub enum Direction<'a> {
    /// Build an orientation from a minimally rigid graph.
    ToOrientation,
    /// Certify minimal rigidity from a given orientation.
    ToRigidity(&'a Orientation),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EquivWitness {
    EdgeCount { edges: usize, required: i64 },
    Dense { set: VertexSet },
    Hakimi { set: VertexSet },
    InDegree { vertex: usize, got: usize, want: i64 },
    ArcDeficit { set: VertexSet },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivOutcome {
    /// Whether the graph is minimally rigid and the orientation certifies it.
    pub holds: bool,
    pub orientation: Option<Orientation>,
    pub witness: Option<EquivWitness>,
}

impl EquivOutcome {
    fn fails(w: EquivWitness) -> Self {
        EquivOutcome { holds: false, orientation: None, witness: Some(w) }
    }
}

fn arc_witness(d: &Orientation, ell: &SetFunc) -> Result<Option<EquivWitness>> {
    let v = verify_arc(d, ell, None)?;
    Ok(match v.witness {
        Some(Witness::Set { set }) => Some(EquivWitness::ArcDeficit { set }),
        Some(other) => return Err(Error::Internal(format!("unexpected arc witness {other:?}"))),
        None => None,
    })
}

/// Minimal `ell`-rigidity versus `ell`-arc-connected orientations with in-degrees `ell(v)`,
/// for `ell` with `ell(V) = 0` and nonnegative singleton values.
pub fn rigid_orientation_equiv(g: &MultiGraph, ell: &SetFunc, direction: Direction<'_>) -> Result<EquivOutcome> {
    let n = g.n();
    ell.check_ground(n)?;
    if ell.full(n) != 0 {
        return Err(Error::Precondition(format!("the function must vanish on V, got {}", ell.full(n))));
    }
    let singles = ell.singles(n);
    if let Some(v) = singles.iter().position(|&x| x < 0) {
        return Err(Error::NegativeValue { vertex: v, value: singles[v] });
    }
    if n > MAX_ARC_SWEEP {
        return Err(Error::TooLarge { what: "rigid orientation certificate", n, limit: MAX_ARC_SWEEP });
    }
    let required: i64 = singles.iter().sum();
    match direction {
        Direction::ToOrientation => {
            if g.m() as i64 != required {
                return Ok(EquivOutcome::fails(EquivWitness::EdgeCount { edges: g.m(), required }));
            }
            if let Sparsity::Violation { set } = is_sparse(g, ell)? {
                return Ok(EquivOutcome::fails(EquivWitness::Dense { set }));
            }
            let d = match hakimi_orient(g, &singles)? {
                HakimiOutcome::Oriented { orientation } => orientation,
                HakimiOutcome::Infeasible { set, .. } => return Ok(EquivOutcome::fails(EquivWitness::Hakimi { set })),
            };
            if let Some(w) = arc_witness(&d, ell)? {
                return Ok(EquivOutcome::fails(w));
            }
            Ok(EquivOutcome { holds: true, orientation: Some(d), witness: None })
        }
        Direction::ToRigidity(d) => {
            if d.host() != g {
                return Err(Error::Precondition("orientation is over a different graph".into()));
            }
            let ins = d.in_degrees();
            if let Some(v) = (0..n).find(|&v| ins[v] as i64 != singles[v]) {
                return Ok(EquivOutcome::fails(EquivWitness::InDegree { vertex: v, got: ins[v], want: singles[v] }));
            }
            if let Some(w) = arc_witness(d, ell)? {
                return Ok(EquivOutcome::fails(w));
            }
            let e = induced_table(g);
            for mask in 1..1u64 << n {
                let a = VertexSet::from_mask(mask);
                let sum: i64 = a.iter().map(|v| singles[v]).sum();
                let entering = d.in_degree_of(a) as i64;
                if e[mask as usize] != sum - entering {
                    return Err(Error::Internal(format!("in-degree identity fails on {a}")));
                }
                if a.len() < n && e[mask as usize] > ell.bound(a, n) {
                    return Err(Error::Internal(format!("{a} is dense under a valid orientation")));
                }
            }
            Ok(EquivOutcome { holds: true, orientation: Some(d.clone()), witness: None })
        }
    }
}
