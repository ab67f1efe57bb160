//! Completing a plane graph to a plane triangulation.
//!
//! Chords are inserted one at a time inside faces of length greater than
//! three. For each such face the preferred chord is a fan step from the
//! smallest vertex on the walk; when that would duplicate an edge (or join a
//! vertex to itself across a cut vertex) the zig-zag chord from the next
//! boundary vertex is tried, then any ear, then any pair of corners. A
//! corner is identified by the dart entering it, so faces whose boundary
//! visits a vertex several times are handled in the same loop.

use crate::drawing::Drawing;
use crate::error::{Error, Result};
use crate::geometry::Scalar;
use crate::plane_graph::{PlaneGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation {
    pub original: PlaneGraph,
    pub triangulated: PlaneGraph,
    /// Added edges in insertion order.
    pub added_edges: Vec<(VertexId, VertexId)>,
}

impl Augmentation {
    /// Restricts a drawing of the triangulation to the original graph. The
    /// coordinates are unchanged; only the reported edge set shrinks.
    pub fn strip<S: Scalar>(&self, drawing: &Drawing<S>) -> (PlaneGraph, Drawing<S>) {
        (self.original.clone(), drawing.clone())
    }
}

fn is_valid_chord(graph: &PlaneGraph, walk: &[VertexId], i: usize, j: usize) -> bool {
    let (a, b) = (walk[i], walk[j]);
    a != b && !graph.has_edge(a, b)
}

/// Corner pair `(i, j)` of the face walk to join, or `None` if the face admits
/// no chord (impossible for faces of length at least four in a simple plane graph).
fn choose_chord(graph: &PlaneGraph, walk: &[VertexId]) -> Option<(usize, usize)> {
    let m = walk.len();
    let apex = walk
        .iter()
        .enumerate()
        .min_by_key(|(_, v)| **v)
        .map(|(i, _)| i)?;
    let fan = (apex, (apex + 2) % m);
    let zigzag = ((apex + 1) % m, (apex + 3) % m);
    let ears = (0..m).map(|i| (i, (i + 2) % m));
    let pairs = (0..m).flat_map(|i| (i + 2..m).filter(move |&j| j - i <= m - 2).map(move |j| (i, j)));
    [fan, zigzag]
        .into_iter()
        .chain(ears)
        .chain(pairs)
        .find(|&(i, j)| is_valid_chord(graph, walk, i, j))
}

/// Adds the chord between corners `i` and `j` of the face walk.
fn insert_chord(graph: &PlaneGraph, walk: &[VertexId], i: usize, j: usize) -> Result<PlaneGraph> {
    let m = walk.len();
    let mut rot = graph.rotations().clone();
    for (corner, other) in [(i, j), (j, i)] {
        let at = walk[corner];
        let entering_from = walk[(corner + m - 1) % m];
        let list = rot.get_mut(&at).expect("walk vertex");
        let pos = list
            .iter()
            .position(|&u| u == entering_from)
            .expect("walk dart");
        list.insert(pos + 1, walk[other]);
    }
    PlaneGraph::from_rotation_map(rot, graph.outer_dart())
}

/// Adds edges until every face, the outer one included, is a triangle.
/// The outer dart is kept, so the new outer face is the triangle of the old
/// outer face that contains it.
pub fn triangulate(graph: &PlaneGraph) -> Result<Augmentation> {
    if graph.vertex_count() < 3 {
        return Err(Error::Size(format!(
            "triangulation needs at least 3 vertices, got {}",
            graph.vertex_count()
        )));
    }
    let mut current = graph.clone();
    let mut added_edges = Vec::new();
    while let Some(face) = current.faces().into_iter().find(|f| f.len() > 3) {
        let walk = face.vertices();
        let (i, j) = choose_chord(&current, &walk).ok_or_else(|| {
            Error::Invariant(format!("face {walk:?} admits no chord"))
        })?;
        current = insert_chord(&current, &walk, i, j)?;
        added_edges.push((walk[i].min(walk[j]), walk[i].max(walk[j])));
    }
    debug_assert!(current.is_triangulation());
    Ok(Augmentation {
        original: graph.clone(),
        triangulated: current,
        added_edges,
    })
}
