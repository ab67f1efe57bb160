//! Independent certifier for straight-line drawings.
//!
//! Everything here is brute force over vertex and edge pairs: `O(E^2)`
//! segment tests with no sweep and no pruning, so the checker stays simple
//! enough to serve as the oracle for the layout pipeline. Under the exact
//! kernel a passing report means the drawing is a crossing-free
//! straight-line drawing realizing the graph's rotation system and outer
//! face. Under the floating kernel, any predicate inside the tolerance band
//! counts as degenerate and is reported as a violation.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::drawing::Drawing;
use crate::error::{Error, Result};
use crate::geometry::{
    ccw_angle_cmp, coincident, cross_sign, dot_sign, line_intersection, orient, Point, Scalar,
    Sign,
};
use crate::plane_graph::{Dart, PlaneGraph, VertexId};

pub type Edge = (VertexId, VertexId);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Crossing {
        edges: [Edge; 2],
        witness: [String; 2],
    },
    Overlap {
        edges: [Edge; 2],
    },
    VertexOnEdge {
        vertex: VertexId,
        edge: Edge,
    },
    Coincident {
        vertices: [VertexId; 2],
    },
    RotationMismatch {
        vertex: VertexId,
        expected: Vec<VertexId>,
        realized: Vec<VertexId>,
    },
    OuterFaceMismatch {
        expected: Vec<VertexId>,
        realized: Vec<VertexId>,
    },
}

impl Violation {
    /// Edges this violation concerns, for highlighting.
    pub fn edges(&self) -> Vec<Edge> {
        match self {
            Violation::Crossing { edges, .. } | Violation::Overlap { edges } => edges.to_vec(),
            Violation::VertexOnEdge { edge, .. } => vec![*edge],
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        VerifyReport {
            passed: violations.is_empty(),
            violations,
        }
    }

    pub fn count(&self, pred: impl Fn(&Violation) -> bool) -> usize {
        self.violations.iter().filter(|v| pred(v)).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentIntersection {
    Disjoint,
    ProperCrossing,
    /// The segments share exactly one point that is an endpoint of at least one.
    Touching,
    CollinearOverlap,
}

fn within_box<S: Scalar>(a: &Point<S>, b: &Point<S>, z: &Point<S>) -> bool {
    let (lo_x, hi_x) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (lo_y, hi_y) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    *lo_x <= z.x && z.x <= *hi_x && *lo_y <= z.y && z.y <= *hi_y
}

/// Classifies segments `a-b` and `c-d` by orientation signs; symmetric in
/// the order of the two segments.
pub fn segments_intersect<S: Scalar>(
    a: &Point<S>,
    b: &Point<S>,
    c: &Point<S>,
    d: &Point<S>,
    tolerance: f64,
) -> SegmentIntersection {
    let o1 = orient(a, b, c, tolerance);
    let o2 = orient(a, b, d, tolerance);
    let o3 = orient(c, d, a, tolerance);
    let o4 = orient(c, d, b, tolerance);

    if o1 == Sign::Zero && o2 == Sign::Zero {
        return collinear_overlap(a, b, c, d);
    }
    if (o1 == o2 && o1 != Sign::Zero) || (o3 == o4 && o3 != Sign::Zero) {
        return SegmentIntersection::Disjoint;
    }
    if o1 != Sign::Zero && o2 != Sign::Zero && o3 != Sign::Zero && o4 != Sign::Zero {
        return SegmentIntersection::ProperCrossing;
    }
    let touches = (o1 == Sign::Zero && within_box(a, b, c))
        || (o2 == Sign::Zero && within_box(a, b, d))
        || (o3 == Sign::Zero && within_box(c, d, a))
        || (o4 == Sign::Zero && within_box(c, d, b));
    if touches {
        SegmentIntersection::Touching
    } else {
        SegmentIntersection::Disjoint
    }
}

fn collinear_overlap<S: Scalar>(
    a: &Point<S>,
    b: &Point<S>,
    c: &Point<S>,
    d: &Point<S>,
) -> SegmentIntersection {
    let dir = b.sub(a);
    let len = dir.norm_sq();
    let tc = c.sub(a).dot(&dir);
    let td = d.sub(a).dot(&dir);
    let (lo, hi) = if tc <= td { (tc, td) } else { (td, tc) };
    let zero = S::zero();
    let start = if lo > zero { lo } else { zero };
    let end = if hi < len { hi } else { len };
    match start.partial_cmp(&end) {
        Some(Ordering::Less) => SegmentIntersection::CollinearOverlap,
        Some(Ordering::Equal) => SegmentIntersection::Touching,
        _ => SegmentIntersection::Disjoint,
    }
}

fn placed<S: Scalar>(drawing: &Drawing<S>, v: VertexId) -> Result<&Point<S>> {
    drawing
        .point(v)
        .ok_or_else(|| Error::Argument(format!("vertex {v} has no coordinates")))
}

/// Neighbours of `v` in clockwise order of their directions around `v`'s
/// point (y axis up), rotated to start at the smallest neighbour.
pub fn realized_rotation<S: Scalar>(
    graph: &PlaneGraph,
    drawing: &Drawing<S>,
    v: VertexId,
) -> Result<Vec<VertexId>> {
    let origin = placed(drawing, v)?;
    let mut dirs = Vec::with_capacity(graph.degree(v));
    for &u in graph.rotation(v) {
        dirs.push((u, placed(drawing, u)?.sub(origin)));
    }
    let reference = Point::from_ints(1, 0);
    // Descending counterclockwise angle is clockwise order.
    dirs.sort_by(|(_, a), (_, b)| ccw_angle_cmp(&reference, b, a));
    let mut order: Vec<VertexId> = dirs.into_iter().map(|(u, _)| u).collect();
    if let Some(pos) = order.iter().enumerate().min_by_key(|(_, u)| **u).map(|(i, _)| i) {
        order.rotate_left(pos);
    }
    Ok(order)
}

/// Dart whose left side is the unbounded region: it leaves the lowest (then
/// leftmost) vertex toward the first neighbour met when sweeping clockwise
/// from the downward direction.
fn realized_outer_start<S: Scalar>(
    graph: &PlaneGraph,
    drawing: &Drawing<S>,
) -> Result<Option<Dart>> {
    let mut lowest: Option<(VertexId, &Point<S>)> = None;
    for v in graph.vertices() {
        let p = placed(drawing, v)?;
        let better = match lowest {
            None => true,
            Some((_, q)) => p.y < q.y || (p.y == q.y && p.x < q.x),
        };
        if better {
            lowest = Some((v, p));
        }
    }
    let Some((u, origin)) = lowest else {
        return Ok(None);
    };
    let down = Point::from_ints(0, -1);
    let mut best: Option<(VertexId, Point<S>)> = None;
    for &x in graph.rotation(u) {
        let dir = placed(drawing, x)?.sub(origin);
        let better = match &best {
            None => true,
            Some((_, b)) => ccw_angle_cmp(&down, &dir, b) == Ordering::Greater,
        };
        if better {
            best = Some((x, dir));
        }
    }
    Ok(best.map(|(x, _)| Dart::new(u, x)))
}

/// Vertex sequence of the face the drawing shows as unbounded, traced with
/// the realized rotations.
pub fn realized_outer_face<S: Scalar>(
    graph: &PlaneGraph,
    drawing: &Drawing<S>,
) -> Result<Vec<VertexId>> {
    let Some(start) = realized_outer_start(graph, drawing)? else {
        return Ok(Vec::new());
    };
    // Rotations are read off only for the vertices the walk visits.
    let mut rotations = std::collections::BTreeMap::new();
    let mut next = |d: Dart| -> Result<Dart> {
        let rot: &Vec<VertexId> = match rotations.entry(d.head) {
            std::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::btree_map::Entry::Vacant(e) => e.insert(realized_rotation(graph, drawing, d.head)?),
        };
        let i = rot.iter().position(|&x| x == d.tail).expect("neighbour");
        Ok(Dart::new(d.head, rot[(i + 1) % rot.len()]))
    };
    let mut walk = vec![start.tail];
    let mut cur = next(start)?;
    let limit = 2 * graph.edge_count() + 1;
    while cur != start && walk.len() <= limit {
        walk.push(cur.tail);
        cur = next(cur)?;
    }
    Ok(walk)
}

/// Equal as cyclic sequences.
fn same_cycle(a: &[VertexId], b: &[VertexId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..b.len()).any(|shift| a.iter().zip(b.iter().cycle().skip(shift)).all(|(x, y)| x == y))
}

fn edge_key(u: VertexId, v: VertexId) -> Edge {
    (u.min(v), u.max(v))
}

/// Full certification of `drawing` against `graph`.
pub fn verify<S: Scalar>(graph: &PlaneGraph, drawing: &Drawing<S>) -> Result<VerifyReport> {
    check(graph, drawing, None)
}

/// Certification restricted to the `focus` vertices and their neighbours:
/// points, edges and rotations among that closed neighbourhood, plus the
/// outer face. Meant for a triangulation whose drawing was valid before the
/// focus vertices were placed inside the star of the vertex they replace;
/// any new conflict then involves an edge of that star or of its link. The
/// result is advisory; only [`verify`] certifies a drawing.
pub fn verify_local<S: Scalar>(
    graph: &PlaneGraph,
    drawing: &Drawing<S>,
    focus: &[VertexId],
) -> Result<VerifyReport> {
    let focus: BTreeSet<VertexId> = focus.iter().copied().collect();
    let mut near = focus.clone();
    for &v in &focus {
        near.extend(graph.rotation(v).iter().copied());
    }
    check(graph, drawing, Some(&Scope { focus, near }))
}

struct Scope {
    focus: BTreeSet<VertexId>,
    near: BTreeSet<VertexId>,
}

fn check<S: Scalar>(
    graph: &PlaneGraph,
    drawing: &Drawing<S>,
    scope: Option<&Scope>,
) -> Result<VerifyReport> {
    let tol = drawing.tolerance();
    let witness = |e: &Edge, f: &Edge| {
        let at = |v: VertexId| drawing.point(v).expect("placed");
        line_intersection(at(e.0), at(e.1), at(f.0), at(f.1))
            .map(|p| [p.x.literal(), p.y.literal()])
            .unwrap_or_default()
    };
    if tol == 0.0 {
        if let Some(grid) = integer_grid(drawing) {
            return check_points(graph, &grid, scope, &witness);
        }
    }
    check_points(graph, drawing, scope, &witness)
}

/// The drawing multiplied by a common positive factor that makes every
/// coordinate an integer. All exact predicates are invariant under such a
/// scaling, and integer arithmetic avoids reducing fractions.
fn integer_grid<S: Scalar>(drawing: &Drawing<S>) -> Option<Drawing<BigInt>> {
    let placed: Vec<(VertexId, &Point<S>)> = drawing.iter().collect();
    let values: Vec<&S> = placed.iter().flat_map(|(_, p)| [&p.x, &p.y]).collect();
    let ints = S::to_integer_grid(&values)?;
    let mut grid = Drawing::new(crate::geometry::Kernel::Exact);
    for ((v, _), xy) in placed.iter().zip(ints.chunks(2)) {
        grid.set(*v, Point::new(xy[0].clone(), xy[1].clone()));
    }
    Some(grid)
}

fn check_points<S: Scalar>(
    graph: &PlaneGraph,
    drawing: &Drawing<S>,
    scope: Option<&Scope>,
    witness: &dyn Fn(&Edge, &Edge) -> [String; 2],
) -> Result<VerifyReport> {
    let tol = drawing.tolerance();
    let in_focus = |v: VertexId| scope.is_none_or(|s| s.focus.contains(&v));
    let is_near = |v: VertexId| scope.is_none_or(|s| s.near.contains(&v));
    let vertices: Vec<VertexId> = graph.vertices().filter(|&v| is_near(v)).collect();
    let points: Vec<&Point<S>> = vertices
        .iter()
        .map(|&v| placed(drawing, v))
        .collect::<Result<_>>()?;
    let at = |v: VertexId| drawing.point(v).expect("placed");
    let edges: Vec<Edge> = graph
        .edges()
        .into_iter()
        .filter(|e| is_near(e.0) && is_near(e.1))
        .collect();
    let edge_in_focus = |e: &Edge| in_focus(e.0) || in_focus(e.1);
    let mut violations = Vec::new();

    // (a) distinct points
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if !(in_focus(vertices[i]) || in_focus(vertices[j])) {
                continue;
            }
            if coincident(points[i], points[j], tol) {
                violations.push(Violation::Coincident {
                    vertices: [vertices[i], vertices[j]],
                });
            }
        }
    }

    // (b) no vertex on a non-incident edge
    for (i, &z) in vertices.iter().enumerate() {
        for e in &edges {
            if e.0 == z || e.1 == z || !(in_focus(z) || edge_in_focus(e)) {
                continue;
            }
            let (a, b) = (at(e.0), at(e.1));
            if orient(a, b, points[i], tol) == Sign::Zero && within_box(a, b, points[i]) {
                violations.push(Violation::VertexOnEdge { vertex: z, edge: *e });
            }
        }
    }

    // (c) independent edges do not meet
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
                continue;
            }
            if !(edge_in_focus(e) || edge_in_focus(f)) {
                continue;
            }
            let (a, b, c, d) = (at(e.0), at(e.1), at(f.0), at(f.1));
            match segments_intersect(a, b, c, d, tol) {
                SegmentIntersection::ProperCrossing => {
                    let witness = witness(e, f);
                    violations.push(Violation::Crossing {
                        edges: [*e, *f],
                        witness,
                    });
                }
                SegmentIntersection::CollinearOverlap => {
                    violations.push(Violation::Overlap { edges: [*e, *f] })
                }
                // Touching means an endpoint lies on the other edge: reported by (b).
                SegmentIntersection::Touching | SegmentIntersection::Disjoint => {}
            }
        }
    }

    // (d) edges sharing an endpoint leave it in distinct directions
    let check_star = |u: VertexId| {
        in_focus(u) || graph.rotation(u).iter().any(|&x| in_focus(x))
    };
    for &u in &vertices {
        if !check_star(u) {
            continue;
        }
        let rot = graph.rotation(u);
        for (i, &a) in rot.iter().enumerate() {
            for &b in &rot[i + 1..] {
                let da = at(a).sub(at(u));
                let db = at(b).sub(at(u));
                if cross_sign(&da, &db, tol) == Sign::Zero && dot_sign(&da, &db, tol) != Sign::Negative
                {
                    violations.push(Violation::Overlap {
                        edges: [edge_key(u, a), edge_key(u, b)],
                    });
                }
            }
        }
    }

    // (e) realized rotations
    for &u in &vertices {
        if !check_star(u) {
            continue;
        }
        let realized = realized_rotation(graph, drawing, u)?;
        let expected = graph.rotation(u);
        if !same_cycle(&realized, expected) {
            violations.push(Violation::RotationMismatch {
                vertex: u,
                expected: expected.to_vec(),
                realized,
            });
        }
    }

    // (f) outer face
    let expected: Vec<VertexId> = graph.outer_face().iter().map(|d| d.tail).collect();
    let realized = realized_outer_face(graph, drawing)?;
    if !same_cycle(&expected, &realized) {
        violations.push(Violation::OuterFaceMismatch { expected, realized });
    }

    Ok(VerifyReport::from_violations(violations))
}

/// The embedding a straight-line drawing realizes: rotations read off the
/// directions and the outer face taken from the unbounded region.
pub fn embed_straight_line<S: Scalar>(points: &[Point<S>], edges: &[Edge]) -> Result<PlaneGraph> {
    let drawing = Drawing::from_points(crate::geometry::Kernel::Exact, points.iter().cloned());
    let reference = Point::from_ints(1, 0);
    let mut rotation: Vec<Vec<VertexId>> = vec![Vec::new(); points.len()];
    for &(u, v) in edges {
        rotation[u].push(v);
        rotation[v].push(u);
    }
    for (v, nbrs) in rotation.iter_mut().enumerate() {
        let o = &points[v];
        nbrs.sort_by(|&a, &b| {
            ccw_angle_cmp(&reference, &points[b].sub(o), &points[a].sub(o))
        });
    }
    let provisional = edges.first().map(|&(u, v)| Dart::new(u, v));
    let shape = PlaneGraph::from_rotation_map_any_genus(
        rotation.iter().cloned().enumerate().collect(),
        provisional,
    )?;
    let outer = realized_outer_start(&shape, &drawing)?;
    PlaneGraph::new(rotation, outer)
}
