use super::sparse::SparseOperator;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Block pattern of an operator with respect to `L_z` sectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderReport {
    /// `(Δm, block Frobenius norm)` for every significant transition,
    /// sorted by Δm.
    pub transitions: Vec<(i32, f64)>,
    /// Δm carrying the largest block norm.
    pub dominant: Option<i32>,
    /// Largest entry magnitude outside the dominant Δm.
    pub leakage: f64,
}

impl LadderReport {
    pub fn delta_ms(&self) -> Vec<i32> {
        self.transitions.iter().map(|t| t.0).collect()
    }
}

/// Groups entries by `m_row - m_col`. A transition is listed when its block
/// norm exceeds `1e-12` relative to the whole matrix (absolute below norm 1).
pub fn ladder_structure(a: &SparseOperator) -> LadderReport {
    let basis = a.basis();
    let mut blocks: BTreeMap<i32, f64> = BTreeMap::new();
    for (r, c, v) in a.entries() {
        let dm = basis.state(r).m - basis.state(c).m;
        *blocks.entry(dm).or_default() += v.norm_sqr();
    }
    let total = blocks.values().fold(0.0, |s, x| s + x).sqrt();
    let floor = 1e-12 * total.max(1.0);
    let transitions: Vec<(i32, f64)> = blocks
        .iter()
        .map(|(dm, s)| (*dm, s.sqrt()))
        .filter(|(_, n)| *n > floor)
        .collect();
    let dominant = transitions
        .iter()
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .map(|t| t.0);
    let leakage = a
        .entries()
        .filter(|(r, c, _)| Some(basis.state(*r).m - basis.state(*c).m) != dominant)
        .map(|(_, _, v)| v.norm())
        .fold(0.0, f64::max);
    LadderReport {
        transitions,
        dominant,
        leakage,
    }
}
