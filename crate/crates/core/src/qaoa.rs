//! Max-Cut cost evaluation for QAOA output distributions.
//!
//! Spin convention: bit value 0 is spin +1, bit value 1 is spin -1, with
//! bit `i` assigned to vertex `i`. An edge contributes `w * s_u * s_v`, so
//! cut edges contribute `-w` and the best cuts have the most negative cost.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::outcome::{check_width, Outcome};

/// Default vertex limit for exhaustive minimum-cost search.
pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 26;

/// Relative tolerance under which two cost ratios share a curve point.
const RATIO_MERGE_TOLERANCE: f64 = 1e-12;

/// Weighted undirected graph.
#[derive(Debug, Clone, PartialEq)]
pub struct CutGraph {
    n_vertices: usize,
    edges: Vec<(usize, usize, f64)>,
}

#[derive(Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<Vec<f64>>,
}

impl CutGraph {
    pub fn new(n_vertices: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v, w) in &edges {
            if u >= n_vertices || v >= n_vertices {
                return Err(Error::Parse(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n_vertices}"
                )));
            }
            if u == v {
                return Err(Error::Parse(format!("self-loop on vertex {u}")));
            }
            if !w.is_finite() {
                return Err(Error::Parse(format!("edge ({u}, {v}) has weight {w}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Parse(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(CutGraph { n_vertices, edges })
    }

    /// Unit-weight graph from an edge list.
    pub fn unweighted(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            n_vertices,
            edges.iter().map(|&(u, v)| (u, v, 1.0)).collect(),
        )
    }

    /// Unit-weight cycle `0-1-...-(n-1)-0`.
    pub fn cycle(n_vertices: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n_vertices).map(|i| (i, (i + 1) % n_vertices)).collect();
        Self::unweighted(n_vertices, &edges)
    }

    /// `{"n": <int>, "edges": [[u, v, w], [u, v], ...]}`; a missing weight
    /// is 1.0.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: GraphFile = serde_json::from_str(text)?;
        let mut edges = Vec::with_capacity(file.edges.len());
        for e in &file.edges {
            let index = |x: f64| -> Result<usize> {
                if x >= 0.0 && x.fract() == 0.0 {
                    Ok(x as usize)
                } else {
                    Err(Error::Parse(format!(
                        "vertex index {x} is not a non-negative integer"
                    )))
                }
            };
            match e.as_slice() {
                [u, v] => edges.push((index(*u)?, index(*v)?, 1.0)),
                [u, v, w] => edges.push((index(*u)?, index(*v)?, *w)),
                _ => {
                    return Err(Error::Parse(format!(
                        "edge {e:?} must have 2 or 3 elements"
                    )))
                }
            }
        }
        Self::new(file.n, edges)
    }

    pub fn to_json_value(&self) -> Value {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|&(u, v, w)| json!([u, v, w]))
            .collect();
        json!({"n": self.n_vertices, "edges": edges})
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    /// Cost of the assignment packed into `mask`, bit `i` (LSB first) being
    /// vertex `i`.
    fn mask_cost(&self, mask: u64) -> f64 {
        self.edges
            .iter()
            .map(|&(u, v, w)| {
                if (mask >> u ^ mask >> v) & 1 == 1 {
                    -w
                } else {
                    w
                }
            })
            .sum()
    }
}

/// Ising-form cut cost of an outcome.
pub fn cut_cost(graph: &CutGraph, x: &Outcome) -> Result<f64> {
    check_width(graph.n_vertices, x.width())?;
    Ok(graph
        .edges
        .iter()
        .map(|&(u, v, w)| if x.bit(u) != x.bit(v) { -w } else { w })
        .sum())
}

/// Exact minimum cost with the default vertex limit.
pub fn c_min(graph: &CutGraph) -> Result<f64> {
    c_min_with_limit(graph, DEFAULT_BRUTE_FORCE_LIMIT)
}

/// Exhaustive minimum over assignments with the last vertex pinned to spin
/// +1; the complement of every assignment has the same cost.
pub fn c_min_with_limit(graph: &CutGraph, limit: usize) -> Result<f64> {
    let n = graph.n_vertices;
    if n > limit || n > 63 {
        return Err(Error::BruteForceLimit {
            vertices: n,
            limit: limit.min(63),
        });
    }
    if n == 0 {
        return Ok(0.0);
    }
    let half = 1u64 << (n - 1);
    const CHUNK: u64 = 1 << 14;
    let chunks = half.div_ceil(CHUNK);
    let best = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(half);
            (start..end)
                .map(|m| graph.mask_cost(m))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min);
    Ok(best)
}

/// Probability-weighted mean cut cost.
pub fn expected_cost(graph: &CutGraph, dist: &Distribution) -> Result<f64> {
    check_width(graph.n_vertices, dist.width())?;
    let dist = dist.normalize()?;
    let mut total = 0.0;
    for (x, p) in dist.iter() {
        total += p * cut_cost(graph, x)?;
    }
    Ok(total)
}

fn resolve_c_min(graph: &CutGraph, c_min_override: Option<f64>) -> Result<f64> {
    let c = match c_min_override {
        Some(c) => c,
        None => c_min(graph)?,
    };
    if c == 0.0 || !c.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "minimum cost is {c}; the cost ratio is undefined (edgeless graph?)"
        )));
    }
    Ok(c)
}

/// `expected_cost / c_min`. One is ideal; negative values mean sub-optimal
/// cuts dominate.
pub fn cost_ratio(
    graph: &CutGraph,
    dist: &Distribution,
    c_min_override: Option<f64>,
) -> Result<f64> {
    let c = resolve_c_min(graph, c_min_override)?;
    Ok(expected_cost(graph, dist)? / c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub ratio: f64,
    pub cumulative_probability: f64,
}

/// Cumulative probability of solutions at or above each cost ratio,
/// ordered by descending ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct QualityCurve {
    points: Vec<CurvePoint>,
}

impl QualityCurve {
    pub fn points(&self) -> &[CurvePoint] {
        &self.points
    }

    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.points
                .iter()
                .map(|p| json!({"ratio": p.ratio, "cumulative_probability": p.cumulative_probability}))
                .collect(),
        )
    }

    /// CSV with header `ratio,cumulative_probability`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("ratio,cumulative_probability\n");
        for p in &self.points {
            out.push_str(&format!("{},{}\n", p.ratio, p.cumulative_probability));
        }
        out
    }
}

pub fn quality_curve(
    graph: &CutGraph,
    dist: &Distribution,
    c_min_override: Option<f64>,
) -> Result<QualityCurve> {
    check_width(graph.n_vertices, dist.width())?;
    let c = resolve_c_min(graph, c_min_override)?;
    let dist = dist.normalize()?;
    let mut rated = Vec::with_capacity(dist.len());
    for (x, p) in dist.iter() {
        rated.push((cut_cost(graph, x)? / c, p));
    }
    rated.sort_by(|a, b| b.0.total_cmp(&a.0));

    let mut points: Vec<CurvePoint> = Vec::new();
    let mut cumulative = 0.0;
    for (ratio, p) in rated {
        cumulative += p;
        match points.last_mut() {
            Some(last)
                if (last.ratio - ratio).abs()
                    <= RATIO_MERGE_TOLERANCE * last.ratio.abs().max(1.0) =>
            {
                last.cumulative_probability = cumulative;
            }
            _ => points.push(CurvePoint {
                ratio,
                cumulative_probability: cumulative,
            }),
        }
    }
    Ok(QualityCurve { points })
}
