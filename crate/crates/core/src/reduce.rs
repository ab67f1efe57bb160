//! Reduction of a plane triangulation to a triangle by edge contractions.
//!
//! Each step contracts an edge `v-w` that lies in no separating triangle,
//! so `v` and `w` have exactly the two common neighbours `p` and `q` that
//! flank the edge. With `rotation(v) = (p, w, q, x1..xk)` and
//! `rotation(w) = (q, v, p, y1..yl)` (clockwise), the merged vertex `s`
//! gets `rotation(s) = (p, y1..yl, q, x1..xk)`. `s` keeps the id of `v`.
//!
//! Edges on the outer face are never contracted: both flanking faces
//! survive as tiny triangles after the vertex is split again, and neither
//! could then be the unbounded one.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plane_graph::{Dart, PlaneGraph, VertexId};

/// Edge-selection rule for the reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Contract an edge at a vertex inside an innermost separating triangle,
    /// or any edge when there is none.
    Main,
    /// Contract the lexicographically smallest edge whose endpoints have
    /// exactly two common neighbours.
    Footnote,
}

impl Strategy {
    pub const ALL: [Strategy; 2] = [Strategy::Main, Strategy::Footnote];
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Main => "main",
            Strategy::Footnote => "footnote",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "main" => Ok(Strategy::Main),
            "footnote" => Ok(Strategy::Footnote),
            other => Err(Error::Argument(format!("unknown strategy `{other}`"))),
        }
    }
}

/// A non-facial 3-cycle with the vertices strictly inside it (on the side
/// away from the outer face).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatingTriangle {
    pub cycle: [VertexId; 3],
    pub interior: BTreeSet<VertexId>,
}

/// Everything needed to undo one contraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionRecord {
    pub s: VertexId,
    pub v: VertexId,
    pub w: VertexId,
    pub p: VertexId,
    pub q: VertexId,
    pub xs: Vec<VertexId>,
    pub ys: Vec<VertexId>,
    /// Outer dart of the graph before contraction.
    pub outer: Dart,
}

impl ContractionRecord {
    /// Clockwise rotation of the merged vertex: `(p, y1..yl, q, x1..xk)`.
    pub fn merged_rotation(&self) -> Vec<VertexId> {
        let mut rot = vec![self.p];
        rot.extend(&self.ys);
        rot.push(self.q);
        rot.extend(&self.xs);
        rot
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionSequence {
    pub records: Vec<ContractionRecord>,
    pub base: PlaneGraph,
}

impl ReductionSequence {
    /// Undoes the records from the base up; the last graph is the input.
    pub fn replay(&self) -> Result<Vec<PlaneGraph>> {
        let mut graphs = vec![self.base.clone()];
        for record in self.records.iter().rev() {
            let next = expand(graphs.last().expect("non-empty"), record)?;
            graphs.push(next);
        }
        Ok(graphs)
    }
}

fn require_triangulation(graph: &PlaneGraph) -> Result<()> {
    if graph.is_triangulation() {
        Ok(())
    } else {
        Err(Error::NotTriangulation)
    }
}

fn sorted3(a: VertexId, b: VertexId, c: VertexId) -> [VertexId; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

/// All separating triangles, ordered by their sorted vertex triple.
pub fn separating_triangles(graph: &PlaneGraph) -> Result<Vec<SeparatingTriangle>> {
    require_triangulation(graph)?;
    let faces = graph.faces();
    let face_sets: BTreeSet<[VertexId; 3]> = faces
        .iter()
        .map(|f| sorted3(f.darts[0].tail, f.darts[1].tail, f.darts[2].tail))
        .collect();
    let mut face_of: BTreeMap<Dart, usize> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for d in &f.darts {
            face_of.insert(*d, i);
        }
    }
    let outer_face = faces.iter().position(|f| f.outer).expect("outer face");

    let mut result = Vec::new();
    for (a, b) in graph.edges() {
        for &c in graph.rotation(a) {
            if c <= b || !graph.has_edge(b, c) {
                continue;
            }
            let cycle = [a, b, c];
            if face_sets.contains(&cycle) {
                continue;
            }
            let blocked: BTreeSet<Dart> = [(a, b), (b, c), (a, c)]
                .into_iter()
                .flat_map(|(x, y)| [Dart::new(x, y), Dart::new(y, x)])
                .collect();
            let mut reached = vec![false; faces.len()];
            reached[outer_face] = true;
            let mut queue = VecDeque::from([outer_face]);
            while let Some(f) = queue.pop_front() {
                for d in &faces[f].darts {
                    if blocked.contains(d) {
                        continue;
                    }
                    let g = face_of[&d.reversed()];
                    if !reached[g] {
                        reached[g] = true;
                        queue.push_back(g);
                    }
                }
            }
            let exterior: BTreeSet<VertexId> = faces
                .iter()
                .zip(&reached)
                .filter(|(_, r)| **r)
                .flat_map(|(f, _)| f.darts.iter().map(|d| d.tail))
                .collect();
            let interior: BTreeSet<VertexId> = graph
                .vertices()
                .filter(|v| !exterior.contains(v) && !cycle.contains(v))
                .collect();
            let outside = exterior.iter().filter(|v| !cycle.contains(v)).count();
            if interior.is_empty() || outside == 0 {
                return Err(Error::Invariant(format!(
                    "non-facial triangle {cycle:?} does not separate"
                )));
            }
            result.push(SeparatingTriangle { cycle, interior });
        }
    }
    result.sort_by_key(|t| t.cycle);
    Ok(result)
}

fn common_count(graph: &PlaneGraph, v: VertexId, w: VertexId) -> usize {
    graph.common_neighbours(v, w).map_or(0, |c| c.len())
}

fn require_reducible(graph: &PlaneGraph) -> Result<()> {
    require_triangulation(graph)?;
    if graph.vertex_count() < 4 {
        return Err(Error::Precondition(format!(
            "edge selection needs at least 4 vertices, got {}",
            graph.vertex_count()
        )));
    }
    Ok(())
}

/// Edge at a vertex inside an innermost separating triangle (fewest
/// interior vertices, ties by vertex triple), or the first non-outer edge
/// when the graph has no separating triangle.
pub fn select_edge_main(graph: &PlaneGraph) -> Result<(VertexId, VertexId)> {
    require_reducible(graph)?;
    let triangles = separating_triangles(graph)?;
    let Some(innermost) = triangles
        .iter()
        .min_by_key(|t| (t.interior.len(), t.cycle))
    else {
        let (v, w) = graph
            .edges()
            .into_iter()
            .find(|&(v, w)| !graph.is_outer_edge(v, w))
            .ok_or_else(|| Error::Invariant("triangulation has only outer edges".into()))?;
        if common_count(graph, v, w) != 2 {
            return Err(Error::Invariant(format!(
                "edge {v}-{w} has {} common neighbours in a graph without separating triangles",
                common_count(graph, v, w)
            )));
        }
        return Ok((v, w));
    };
    let u = *innermost.interior.first().expect("non-empty interior");
    let mut nbrs = graph.rotation(u).to_vec();
    nbrs.sort_unstable();
    nbrs.into_iter()
        .find(|&z| common_count(graph, u, z) == 2)
        .map(|z| (u, z))
        .ok_or_else(|| {
            Error::Invariant(format!(
                "no edge at vertex {u} inside innermost separating triangle {:?} has exactly two common neighbours",
                innermost.cycle
            ))
        })
}

/// Lexicographically smallest non-outer edge whose endpoints have exactly
/// two common neighbours.
pub fn select_edge_footnote(graph: &PlaneGraph) -> Result<(VertexId, VertexId)> {
    require_reducible(graph)?;
    graph
        .edges()
        .into_iter()
        .find(|&(v, w)| !graph.is_outer_edge(v, w) && common_count(graph, v, w) == 2)
        .ok_or_else(|| Error::Invariant("no edge with exactly two common neighbours".into()))
}

pub fn select_edge(graph: &PlaneGraph, strategy: Strategy) -> Result<(VertexId, VertexId)> {
    match strategy {
        Strategy::Main => select_edge_main(graph),
        Strategy::Footnote => select_edge_footnote(graph),
    }
}

/// `rotation(at)` rotated to start at `first`.
fn rotation_from(graph: &PlaneGraph, at: VertexId, first: VertexId) -> Vec<VertexId> {
    let mut rot = graph.rotation(at).to_vec();
    let i = rot.iter().position(|&u| u == first).expect("neighbour");
    rot.rotate_left(i);
    rot
}

/// Contracts edge `v-w` into `s` (which keeps the id `v`).
pub fn contract(
    graph: &PlaneGraph,
    v: VertexId,
    w: VertexId,
) -> Result<(PlaneGraph, ContractionRecord)> {
    require_reducible(graph)?;
    let common = graph.common_neighbours(v, w)?;
    if common.len() != 2 {
        return Err(Error::Precondition(format!(
            "edge {v}-{w} has {} common neighbours, contraction needs exactly 2",
            common.len()
        )));
    }
    if graph.is_outer_edge(v, w) {
        return Err(Error::Precondition(format!(
            "edge {v}-{w} bounds the outer face"
        )));
    }
    let (p, q) = graph.flanking_apexes(v, w)?;
    let around_v = rotation_from(graph, v, p);
    let around_w = rotation_from(graph, w, q);
    debug_assert_eq!(&around_v[..3], &[p, w, q]);
    debug_assert_eq!(&around_w[..3], &[q, v, p]);
    let record = ContractionRecord {
        s: v,
        v,
        w,
        p,
        q,
        xs: around_v[3..].to_vec(),
        ys: around_w[3..].to_vec(),
        outer: graph.outer_dart().expect("triangulation has edges"),
    };

    let mut rot = graph.rotations().clone();
    rot.remove(&w);
    rot.insert(v, record.merged_rotation());
    for &y in &record.ys {
        for u in rot.get_mut(&y).expect("neighbour").iter_mut() {
            if *u == w {
                *u = v;
            }
        }
    }
    for apex in [p, q] {
        rot.get_mut(&apex).expect("apex").retain(|&u| u != w);
    }
    let substitute = |x: VertexId| if x == w { v } else { x };
    let outer = record.outer;
    let outer = Dart::new(substitute(outer.tail), substitute(outer.head));
    let contracted = PlaneGraph::from_rotation_map(rot, Some(outer))?;
    debug_assert!(contracted.is_triangulation());
    Ok((contracted, record))
}

/// Inverse of [`contract`]: splits `s` back into `v` and `w`.
pub fn expand(graph: &PlaneGraph, record: &ContractionRecord) -> Result<PlaneGraph> {
    let ContractionRecord { v, w, p, q, .. } = *record;
    if !graph.contains_vertex(v) || graph.contains_vertex(w) {
        return Err(Error::Argument(format!(
            "record for {v}/{w} does not match the graph"
        )));
    }
    let merged = record.merged_rotation();
    let current = rotation_from(graph, v, p);
    if current != merged {
        return Err(Error::Argument(format!(
            "rotation of {v} is {current:?}, record expects {merged:?}"
        )));
    }
    let mut rot = graph.rotations().clone();
    let mut around_v = vec![p, w, q];
    around_v.extend(&record.xs);
    let mut around_w = vec![q, v, p];
    around_w.extend(&record.ys);
    rot.insert(v, around_v);
    rot.insert(w, around_w);
    for &y in &record.ys {
        for u in rot.get_mut(&y).expect("neighbour").iter_mut() {
            if *u == v {
                *u = w;
            }
        }
    }
    for (apex, after_v) in [(p, false), (q, true)] {
        let list = rot.get_mut(&apex).expect("apex");
        let i = list.iter().position(|&u| u == v).expect("apex adjacent to s");
        list.insert(if after_v { i + 1 } else { i }, w);
    }
    PlaneGraph::from_rotation_map(rot, Some(record.outer))
}

/// Contracts until three vertices remain. `observe` sees the input and
/// every intermediate graph.
pub fn reduce_observed(
    graph: &PlaneGraph,
    strategy: Strategy,
    mut observe: impl FnMut(&PlaneGraph),
) -> Result<ReductionSequence> {
    require_triangulation(graph)?;
    if graph.vertex_count() < 3 {
        return Err(Error::Size(format!(
            "reduction needs at least 3 vertices, got {}",
            graph.vertex_count()
        )));
    }
    let mut current = graph.clone();
    let mut records = Vec::with_capacity(graph.vertex_count() - 3);
    observe(&current);
    while current.vertex_count() > 3 {
        let (v, w) = select_edge(&current, strategy)?;
        let (next, record) = contract(&current, v, w)?;
        if !next.is_triangulation() || next.edge_count() != 3 * next.vertex_count() - 6 {
            return Err(Error::Invariant(format!(
                "contracting {v}-{w} broke the triangulation"
            )));
        }
        observe(&next);
        records.push(record);
        current = next;
    }
    Ok(ReductionSequence {
        records,
        base: current,
    })
}

pub fn reduce(graph: &PlaneGraph, strategy: Strategy) -> Result<ReductionSequence> {
    reduce_observed(graph, strategy, |_| {})
}
