//! Instance generators.
//!
//! Seeded families use PCG-XSL-RR 128/64 (`rand_pcg::Pcg64`) seeded through
//! `SeedableRng::seed_from_u64`, so a seed always yields the same graph.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg64;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::plane_graph::{Dart, PlaneGraph, VertexId};
use crate::verify::embed_straight_line;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Triangle,
    K4,
    Octahedron,
    /// Hub plus a rim cycle; `n` counts all vertices.
    Wheel(usize),
    /// K4 with `depth` vertices stacked into nested faces.
    Stacked(usize),
    Cycle(usize),
    /// Centre plus `n - 1` leaves.
    Star(usize),
    RandomTriangulation { n: usize, seed: u64 },
}

impl GeneratorSpec {
    /// Family name plus optional size parameter, as accepted on the command line.
    pub fn parse(family: &str, size: Option<usize>, seed: u64) -> Result<Self> {
        let need = |what: &str| {
            size.ok_or_else(|| Error::Argument(format!("family `{what}` needs a size parameter")))
        };
        Ok(match family {
            "triangle" => GeneratorSpec::Triangle,
            "k4" => GeneratorSpec::K4,
            "octahedron" => GeneratorSpec::Octahedron,
            "wheel" => GeneratorSpec::Wheel(need(family)?),
            "stacked" => GeneratorSpec::Stacked(need(family)?),
            "cycle" => GeneratorSpec::Cycle(need(family)?),
            "star" => GeneratorSpec::Star(need(family)?),
            "random" | "random_triangulation" => GeneratorSpec::RandomTriangulation {
                n: need(family)?,
                seed,
            },
            other => return Err(Error::Argument(format!("unknown family `{other}`"))),
        })
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<PlaneGraph> {
    match *spec {
        GeneratorSpec::Triangle => Ok(triangle()),
        GeneratorSpec::K4 => Ok(k4()),
        GeneratorSpec::Octahedron => Ok(octahedron()),
        GeneratorSpec::Wheel(n) => wheel(n),
        GeneratorSpec::Stacked(depth) => stacked(depth),
        GeneratorSpec::Cycle(n) => cycle(n),
        GeneratorSpec::Star(n) => star(n),
        GeneratorSpec::RandomTriangulation { n, seed } => random_triangulation(n, seed),
    }
}

/// Triangle whose outer walk is `0 -> 2 -> 1`.
pub fn triangle() -> PlaneGraph {
    PlaneGraph::new(vec![vec![1, 2], vec![0, 2], vec![0, 1]], Some(Dart::new(0, 2)))
        .expect("triangle")
}

/// K4 with outer face `0, 2, 1` and vertex 3 inside, matching the drawing
/// `(0,0), (4,0), (2,3), (2,1)`.
pub fn k4() -> PlaneGraph {
    PlaneGraph::new(
        vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]],
        Some(Dart::new(0, 2)),
    )
    .expect("k4")
}

/// Octahedron with inner triangle `0, 1, 2` and outer triangle `3, 4, 5`.
pub fn octahedron() -> PlaneGraph {
    let points = [(4, 2), (5, 4), (3, 4), (0, 0), (8, 0), (4, 7)].map(|(x, y)| Point::<f64>::from_ints(x, y));
    let edges = [
        (0, 1),
        (1, 2),
        (0, 2),
        (3, 4),
        (4, 5),
        (3, 5),
        (0, 3),
        (0, 4),
        (1, 4),
        (1, 5),
        (2, 5),
        (2, 3),
    ];
    embed_straight_line(&points, &edges).expect("octahedron")
}

fn on_circle(k: usize, m: usize) -> Point<f64> {
    let angle = TAU * k as f64 / m as f64;
    Point::new(1000.0 * angle.cos(), 1000.0 * angle.sin())
}

pub fn cycle(n: usize) -> Result<PlaneGraph> {
    if n < 3 {
        return Err(Error::Size(format!("cycle needs n >= 3, got {n}")));
    }
    let points: Vec<_> = (0..n).map(|k| on_circle(k, n)).collect();
    let edges: Vec<_> = (0..n).map(|k| (k, (k + 1) % n)).collect();
    embed_straight_line(&points, &edges)
}

pub fn wheel(n: usize) -> Result<PlaneGraph> {
    if n < 4 {
        return Err(Error::Size(format!("wheel needs n >= 4, got {n}")));
    }
    let rim = n - 1;
    let mut points = vec![Point::new(0.0, 0.0)];
    points.extend((0..rim).map(|k| on_circle(k, rim)));
    let mut edges: Vec<_> = (1..n).map(|k| (0, k)).collect();
    edges.extend((0..rim).map(|k| (1 + k, 1 + (k + 1) % rim)));
    embed_straight_line(&points, &edges)
}

pub fn star(n: usize) -> Result<PlaneGraph> {
    if n < 2 {
        return Err(Error::Size(format!("star needs n >= 2, got {n}")));
    }
    let mut points = vec![Point::new(0.0, 0.0)];
    points.extend((0..n - 1).map(|k| on_circle(k, n - 1)));
    let edges: Vec<_> = (1..n).map(|k| (0, k)).collect();
    embed_straight_line(&points, &edges)
}

/// Inserts a new vertex `id` into the triangular face to the left of
/// `dart`, joined to its three corners. The outer dart is kept, so stacking
/// into the outer face makes the triangle on that dart the new outer face.
pub fn stack_into_face(graph: &PlaneGraph, dart: Dart, id: VertexId) -> Result<PlaneGraph> {
    let [a, b, c] = graph.face_triangle_of(dart)?;
    if graph.contains_vertex(id) {
        return Err(Error::Argument(format!("vertex {id} already exists")));
    }
    let mut rot: BTreeMap<VertexId, Vec<VertexId>> = graph.rotations().clone();
    for (corner, before) in [(a, c), (b, a), (c, b)] {
        let list = rot.get_mut(&corner).expect("corner");
        let i = list.iter().position(|&u| u == before).expect("face corner");
        list.insert(i + 1, id);
    }
    rot.insert(id, vec![a, c, b]);
    PlaneGraph::from_rotation_map(rot, graph.outer_dart())
}

/// K4 with `depth` vertices stacked one inside the other, each into the
/// face to the left of dart `0 -> 1`.
pub fn stacked(depth: usize) -> Result<PlaneGraph> {
    let mut g = k4();
    for i in 0..depth {
        g = stack_into_face(&g, Dart::new(0, 1), 4 + i)?;
    }
    Ok(g)
}

/// Random stacked triangulation: starting from a triangle, repeatedly picks
/// a face uniformly (the outer face included) and stacks a new vertex into it.
pub fn random_triangulation(n: usize, seed: u64) -> Result<PlaneGraph> {
    if n < 3 {
        return Err(Error::Size(format!("random triangulation needs n >= 3, got {n}")));
    }
    let mut rng = Pcg64::seed_from_u64(seed);
    let mut g = triangle();
    for id in 3..n {
        let faces = g.faces();
        let face = &faces[rng.random_range(0..faces.len())];
        g = stack_into_face(&g, face.darts[0], id)?;
    }
    Ok(g)
}

/// Deletes about `fraction` of the edges, chosen uniformly, skipping any
/// deletion that would disconnect the graph.
pub fn delete_edges(graph: &PlaneGraph, fraction: f64, seed: u64) -> Result<PlaneGraph> {
    let mut rng = Pcg64::seed_from_u64(seed);
    let mut candidates = graph.edges();
    candidates.shuffle(&mut rng);
    let target = (fraction * graph.edge_count() as f64).round() as usize;
    let mut g = graph.clone();
    let mut deleted = 0;
    for (u, v) in candidates {
        if deleted == target {
            break;
        }
        if let Some(next) = delete_edge(&g, u, v)? {
            g = next;
            deleted += 1;
        }
    }
    Ok(g)
}

/// Removes edge `u-v`; `None` when that would disconnect the graph.
pub fn delete_edge(graph: &PlaneGraph, u: VertexId, v: VertexId) -> Result<Option<PlaneGraph>> {
    let mut rot = graph.rotations().clone();
    rot.get_mut(&u).expect("vertex").retain(|&x| x != v);
    rot.get_mut(&v).expect("vertex").retain(|&x| x != u);
    let outer = graph
        .outer_face()
        .into_iter()
        .find(|d| !((d.tail == u && d.head == v) || (d.tail == v && d.head == u)));
    match PlaneGraph::from_rotation_map(rot, outer) {
        Ok(g) => Ok(Some(g)),
        Err(Error::Structure(crate::error::StructureError::Disconnected(..))) => Ok(None),
        Err(e) => Err(e),
    }
}
