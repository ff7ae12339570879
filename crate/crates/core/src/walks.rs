//! Closed walks on the labelled halfline `0, 1, 2, ...`.
//!
//! A Dyck path is a loop-free closed walk (node at time `t` = altitude after
//! step `t`); an alternating Motzkin path is a closed walk with loops that
//! moves right only at even time-steps and left only at odd ones.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::identities::{verify_thm1, verify_thm2, IdentityError};
use crate::paths::{Path, PathError, PathKind, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("a walk needs at least one node")]
    Empty,
    #[error("walk is not closed: starts at {first}, ends at {last}")]
    NotClosed { first: usize, last: usize },
    #[error("jump from node {from} to node {to} at time-step {time}")]
    Jump { from: usize, to: usize, time: usize },
    #[error("loop at time-step {time}; a Dyck walk has no loops")]
    Loop { time: usize },
    #[error("bad node label {0:?}")]
    BadLabel(String),
    #[error("walk does not map to a valid path: {0}")]
    Path(#[from] PathError),
}

/// A closed walk, stored as its node sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    nodes: Vec<usize>,
}

impl Walk {
    pub fn new(nodes: Vec<usize>) -> Result<Self, WalkError> {
        let (&first, &last) = match (nodes.first(), nodes.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(WalkError::Empty),
        };
        if first != last {
            return Err(WalkError::NotClosed { first, last });
        }
        for (t, w) in nodes.windows(2).enumerate() {
            if w[0].abs_diff(w[1]) > 1 {
                return Err(WalkError::Jump { from: w[0], to: w[1], time: t + 1 });
            }
        }
        Ok(Walk { nodes })
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn start(&self) -> usize {
        self.nodes[0]
    }

    /// Number of moves.
    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The move at each time-step as a path step.
    pub fn moves(&self) -> impl Iterator<Item = Step> + '_ {
        self.nodes.windows(2).map(|w| match w[1] as i64 - w[0] as i64 {
            1 => Step::Rise,
            -1 => Step::Fall,
            _ => Step::Level,
        })
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.nodes.iter().map(usize::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Walk {
    type Err = WalkError;

    /// Comma-separated node labels.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let nodes = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| WalkError::BadLabel(t.trim().to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Walk::new(nodes)
    }
}

fn path_to_walk(p: &Path, start: usize) -> Walk {
    Walk {
        nodes: p.altitudes().into_iter().map(|a| a + start).collect(),
    }
}

/// The loop-free walk tracing a Dyck path from node `start`.
pub fn dyck_to_walk(p: &Path, start: usize) -> Walk {
    path_to_walk(p, start)
}

/// Inverse of [`dyck_to_walk`], read relative to the walk's start node.
pub fn walk_to_dyck(w: &Walk) -> Result<Path, WalkError> {
    let steps: Vec<Step> = w.moves().collect();
    if let Some(j) = steps.iter().position(|&s| s == Step::Level) {
        return Err(WalkError::Loop { time: j + 1 });
    }
    Ok(Path::new(steps, PathKind::Dyck)?)
}

/// The walk with loops tracing an alternating Motzkin path from node 0.
pub fn alt_motzkin_to_walk(p: &Path) -> Walk {
    path_to_walk(p, 0)
}

/// Inverse of [`alt_motzkin_to_walk`]; rejects right moves at odd
/// time-steps and left moves at even ones.
pub fn walk_to_alt_motzkin(w: &Walk) -> Result<Path, WalkError> {
    Ok(Path::new(w.moves().collect(), PathKind::AltMotzkin)?)
}

/// Per-node occupation counts of a walk, indexed by node label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkStatistics {
    /// Time-steps spent at each node (the vertex-by-altitude vector).
    pub time_at_node: Vec<u64>,
    /// Moves from node `i` to node `i + 1` (the rise-by-altitude vector).
    pub advances_from_node: Vec<u64>,
    /// Loops taken at each node (all level steps, not just even ones).
    pub loops_at_node: Vec<u64>,
}

pub fn walk_statistics(w: &Walk) -> WalkStatistics {
    let top = w.nodes.iter().copied().max().unwrap_or(0);
    let mut time_at_node = vec![0u64; top + 1];
    let mut advances_from_node = vec![0u64; top];
    let mut loops_at_node = vec![0u64; top + 1];
    for &n in &w.nodes {
        time_at_node[n] += 1;
    }
    for pair in w.nodes.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if b == a + 1 {
            advances_from_node[a] += 1;
        } else if a == b {
            loops_at_node[a] += 1;
        }
    }
    WalkStatistics {
        time_at_node,
        advances_from_node,
        loops_at_node,
    }
}

/// Square-averaged advance and occupation totals over all loop-free closed
/// walks of length `2k`, next to their closed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkIdentitySummary {
    pub k: usize,
    /// `Σ_i E[advances from node i]²`.
    pub square_average_advances: BigRational,
    /// `C_{2k}/C_k² - 1`.
    pub advances_closed_form: BigRational,
    /// `Σ_i E[time at node i]²`.
    pub square_average_time: BigRational,
    /// `C_{2k+1}/C_k²`.
    pub time_closed_form: BigRational,
}

pub fn walk_identity_summary(k: usize) -> Result<WalkIdentitySummary, IdentityError> {
    let adv = verify_thm1(k)?;
    let time = verify_thm2(k)?;
    let take = |v: &crate::identities::Value| v.as_rational().cloned().expect("rational identity");
    Ok(WalkIdentitySummary {
        k,
        square_average_advances: take(&adv.lhs),
        advances_closed_form: take(&adv.rhs),
        square_average_time: take(&time.lhs),
        time_closed_form: take(&time.rhs),
    })
}
