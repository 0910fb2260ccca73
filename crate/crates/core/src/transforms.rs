//! Local surgeries on two-cycle bicyclic graphs and the exact comparison of
//! degree resistance distance before and after.
//!
//! Every transform keeps the vertex set (indices included) and the edge
//! count, and checks its own structural preconditions.

use serde::Serialize;

use crate::graph::{Graph, TwoCycleBase};
use crate::rational::Rational;
use crate::resistance::{degree_resistance, ResistanceError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("graph is not a bicyclic graph with exactly two cycles")]
    NotTwoCycle,
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("edge ({0}, {1}) is not in the graph")]
    EdgeAbsent(usize, usize),
    #[error("edge ({0}, {1}) is already in the graph")]
    EdgePresent(usize, usize),
    #[error("rewiring ({0}, {1}) would disconnect the graph")]
    Disconnects(usize, usize),
    #[error("cycle of length {0} cannot shrink below 3")]
    CycleTooSmall(usize),
    #[error(transparent)]
    Resistance(#[from] ResistanceError),
}

fn violation(msg: impl Into<String>) -> TransformError {
    TransformError::PreconditionViolation(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Decreased,
    Increased,
    Equal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransformOutcome {
    pub before: Graph,
    pub after: Graph,
    pub dr_before: Rational,
    pub dr_after: Rational,
    pub direction: Direction,
}

impl TransformOutcome {
    pub fn new(before: Graph, after: Graph) -> Result<Self, TransformError> {
        debug_assert_eq!((before.n(), before.m()), (after.n(), after.m()));
        let dr_before = degree_resistance(&before)?;
        let dr_after = degree_resistance(&after)?;
        let direction = match dr_after.cmp(&dr_before) {
            std::cmp::Ordering::Less => Direction::Decreased,
            std::cmp::Ordering::Greater => Direction::Increased,
            std::cmp::Ordering::Equal => Direction::Equal,
        };
        Ok(TransformOutcome {
            before,
            after,
            dr_before,
            dr_after,
            direction,
        })
    }
}

/// Selects one of the two cycles by a vertex lying on it (and not on the other).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleSelector {
    Containing(usize),
}

/// A transform with its arguments, as named on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformOp {
    Sigma {
        v: usize,
    },
    Pi {
        v: usize,
    },
    Relocate {
        u: usize,
        w: usize,
    },
    Rewire {
        remove: (usize, usize),
        add: (usize, usize),
    },
    Contract {
        edge: (usize, usize),
    },
    Shrink {
        cycle: CycleSelector,
    },
}

impl TransformOp {
    pub fn name(&self) -> &'static str {
        match self {
            TransformOp::Sigma { .. } => "sigma",
            TransformOp::Pi { .. } => "pi",
            TransformOp::Relocate { .. } => "relocate",
            TransformOp::Rewire { .. } => "rewire",
            TransformOp::Contract { .. } => "contract",
            TransformOp::Shrink { .. } => "shrink",
        }
    }

    pub fn apply(&self, g: &Graph) -> Result<Graph, TransformError> {
        match *self {
            TransformOp::Sigma { v } => sigma_transform(g, v),
            TransformOp::Pi { v } => pi_transform(g, v),
            TransformOp::Relocate { u, w } => relocate_pendants(g, u, w),
            TransformOp::Rewire { remove, add } => rewire_edge(g, remove, add),
            TransformOp::Contract { edge } => contract_to_pendant(g, edge),
            TransformOp::Shrink { cycle } => cycle_shrink(g, cycle),
        }
    }

    pub fn outcome(&self, g: &Graph) -> Result<TransformOutcome, TransformError> {
        TransformOutcome::new(g.clone(), self.apply(g)?)
    }
}

fn base_of(g: &Graph) -> Result<TwoCycleBase, TransformError> {
    g.two_cycle_base().ok_or(TransformError::NotTwoCycle)
}

fn check_vertex(g: &Graph, v: usize) -> Result<(), TransformError> {
    if v >= g.n() {
        return Err(TransformError::VertexOutOfRange(v));
    }
    Ok(())
}

/// The configuration shared by the star-moving and star-to-path transforms:
/// `v` off the base carries `s >= 1` pendants and one other neighbour `u`
/// that lies on a cycle. Returns `(u, pendants)`.
fn pendant_star(g: &Graph, v: usize) -> Result<(usize, Vec<usize>), TransformError> {
    check_vertex(g, v)?;
    let base = base_of(g)?;
    if base.in_base(v) {
        return Err(violation(format!(
            "vertex {v} lies on a cycle or the joining path"
        )));
    }
    let pendants = g.pendant_neighbors(v);
    if pendants.is_empty() {
        return Err(violation(format!("vertex {v} has no pendant neighbours")));
    }
    let others: Vec<usize> = g
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&w| g.degree(w) != 1)
        .collect();
    let &[u] = others.as_slice() else {
        return Err(violation(format!(
            "vertex {v} must have exactly one non-pendant neighbour, found {}",
            others.len()
        )));
    };
    if !base.on_cycle(u) {
        return Err(violation(format!(
            "neighbour {u} of vertex {v} is not on a cycle"
        )));
    }
    Ok((u, pendants))
}

/// Moves every pendant of `v` onto its cycle neighbour `u`.
pub fn sigma_transform(g: &Graph, v: usize) -> Result<Graph, TransformError> {
    let (u, pendants) = pendant_star(g, v)?;
    let remove: Vec<_> = pendants.iter().map(|&x| (v, x)).collect();
    let add: Vec<_> = pendants.iter().map(|&x| (u, x)).collect();
    Ok(g.edited(&remove, &add))
}

/// Replaces the pendant star at `v` by a hanging path `v v_1 ... v_s`, the
/// pendants taken in increasing index order. With one pendant the graph is
/// returned unchanged.
pub fn pi_transform(g: &Graph, v: usize) -> Result<Graph, TransformError> {
    let (_, pendants) = pendant_star(g, v)?;
    let remove: Vec<_> = pendants.iter().map(|&x| (v, x)).collect();
    let chain: Vec<usize> = std::iter::once(v).chain(pendants.iter().copied()).collect();
    let add: Vec<_> = chain.windows(2).map(|w| (w[0], w[1])).collect();
    Ok(g.edited(&remove, &add))
}

/// Moves all pendants of cycle vertex `u` onto `w`, the vertex shared by
/// the two cycles.
pub fn relocate_pendants(g: &Graph, u: usize, w: usize) -> Result<Graph, TransformError> {
    check_vertex(g, u)?;
    check_vertex(g, w)?;
    let base = base_of(g)?;
    if base.path_len() != 0 || base.path[0] != w {
        return Err(violation(format!(
            "vertex {w} is not the common vertex of the two cycles"
        )));
    }
    if u == w {
        return Err(violation("source and target vertex coincide"));
    }
    if !base.on_cycle(u) {
        return Err(violation(format!("vertex {u} is not on a cycle")));
    }
    let pendants = g.pendant_neighbors(u);
    if pendants.is_empty() {
        return Err(violation(format!("vertex {u} has no pendant neighbours")));
    }
    let remove: Vec<_> = pendants.iter().map(|&x| (u, x)).collect();
    let add: Vec<_> = pendants.iter().map(|&x| (w, x)).collect();
    Ok(g.edited(&remove, &add))
}

/// Deletes `remove` and inserts `add`. The result must stay simple and
/// connected. Works on any graph.
pub fn rewire_edge(
    g: &Graph,
    remove: (usize, usize),
    add: (usize, usize),
) -> Result<Graph, TransformError> {
    for v in [remove.0, remove.1, add.0, add.1] {
        check_vertex(g, v)?;
    }
    if !g.has_edge(remove.0, remove.1) {
        return Err(TransformError::EdgeAbsent(remove.0, remove.1));
    }
    if add.0 == add.1 {
        return Err(violation(format!(
            "edge ({}, {}) is a self-loop",
            add.0, add.1
        )));
    }
    let same = |a: (usize, usize), b: (usize, usize)| {
        (a.0.min(a.1), a.0.max(a.1)) == (b.0.min(b.1), b.0.max(b.1))
    };
    if g.has_edge(add.0, add.1) && !same(add, remove) {
        return Err(TransformError::EdgePresent(add.0, add.1));
    }
    let after = g.edited(&[remove], &[add]);
    if g.is_connected() && !after.is_connected() {
        return Err(TransformError::Disconnects(remove.0, remove.1));
    }
    Ok(after)
}

/// Contracts the joining-path edge `(keep, gone)` into `keep`, then hangs
/// `gone` back on `keep` as a pendant vertex.
pub fn contract_to_pendant(g: &Graph, edge: (usize, usize)) -> Result<Graph, TransformError> {
    let (keep, gone) = edge;
    check_vertex(g, keep)?;
    check_vertex(g, gone)?;
    let base = base_of(g)?;
    let on_path = base
        .path
        .windows(2)
        .any(|w| (w[0] == keep && w[1] == gone) || (w[1] == keep && w[0] == gone));
    if !on_path {
        return Err(violation(format!(
            "edge ({keep}, {gone}) is not on the path joining the two cycles"
        )));
    }
    let moved: Vec<usize> = g
        .neighbors(gone)
        .iter()
        .copied()
        .filter(|&x| x != keep)
        .collect();
    let remove: Vec<_> = moved.iter().map(|&x| (gone, x)).collect();
    let add: Vec<_> = moved.iter().map(|&x| (keep, x)).collect();
    Ok(g.edited(&remove, &add))
}

/// Shortens the selected cycle by one.
///
/// When the cycles share a vertex `w`, the lowest-index cycle neighbour `d`
/// of `w` leaves the cycle and stays as a pendant at `w` (edge `d x` becomes
/// `w x`). When the cycles are joined by a path with contact `w` on the
/// selected cycle, `w` leaves the cycle: with `u2` its lowest-index cycle
/// neighbour and `u1` the other, edge `w u2` becomes `u1 u2`, lengthening
/// the joining path by one.
pub fn cycle_shrink(g: &Graph, which: CycleSelector) -> Result<Graph, TransformError> {
    let CycleSelector::Containing(sel) = which;
    check_vertex(g, sel)?;
    let base = base_of(g)?;
    let cycle = base
        .cycle_containing(sel)
        .ok_or_else(|| violation(format!("vertex {sel} does not select a unique cycle")))?;
    let len = cycle.len();
    if len < 4 {
        return Err(TransformError::CycleTooSmall(len));
    }
    let w = cycle[0];
    let (a, b) = (cycle[1], cycle[len - 1]);
    if base.path_len() == 0 {
        let (d, x) = if a < b {
            (a, cycle[2])
        } else {
            (b, cycle[len - 2])
        };
        Ok(g.edited(&[(d, x)], &[(w, x)]))
    } else {
        let (u2, u1) = if a < b { (a, b) } else { (b, a) };
        Ok(g.edited(&[(w, u2)], &[(u1, u2)]))
    }
}
