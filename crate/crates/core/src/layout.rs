//! Geometric expansion of a reduction sequence into a straight-line drawing.
//!
//! The base triangle is drawn at fixed points. Each contraction is then
//! undone by splitting the drawn vertex `s` into `v` and `w`: both are put
//! on a line `L` through `s` that has `p` and `q` strictly on opposite
//! sides, at equal distance from `s`, with `v` on the ray inside the
//! angular sector at `s` that holds the `x` neighbours. The distance starts
//! at half the distance from `s` to its nearest neighbour (rounded down to
//! a power of two times the direction vector) and is halved until the
//! affected star certifies.
//!
//! With the exact kernel every coordinate produced from integer base
//! points is a dyadic rational, and bit lengths grow additively with the
//! number of halvings along each chain of splits.

use crate::augment::triangulate;
pub use crate::drawing::{Drawing, ExactDrawing, FloatDrawing};
use crate::error::{Error, Result};
use crate::geometry::{dot_sign, in_ccw_sector, power_of_two_below, Kernel, Point, Scalar, Sign};
use crate::plane_graph::PlaneGraph;
use crate::reduce::{expand, reduce, ContractionRecord, Strategy};
use crate::verify::{verify, verify_local};

/// Line through `point` with normal vector `normal`.
#[derive(Debug, Clone, PartialEq)]
pub struct Line<S> {
    pub point: Point<S>,
    pub normal: Point<S>,
}

impl<S: Scalar> Line<S> {
    /// Sign of `normal . (z - point)`.
    pub fn side(&self, z: &Point<S>, tolerance: f64) -> Sign {
        dot_sign(&self.normal, &z.sub(&self.point), tolerance)
    }

    pub fn direction(&self) -> Point<S> {
        self.normal.perp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayoutOptions {
    pub kernel: Kernel,
    /// Halvings of the split distance before giving up.
    pub max_halvings: u32,
    /// Run the full verifier after every split, not only on the affected star.
    pub verify_each_split: bool,
    /// Run the full verifier on the final drawing.
    pub final_verify: bool,
}

impl LayoutOptions {
    pub fn exact() -> Self {
        LayoutOptions {
            kernel: Kernel::Exact,
            max_halvings: 64,
            verify_each_split: cfg!(debug_assertions),
            final_verify: true,
        }
    }

    pub fn floating(tolerance: f64) -> Self {
        LayoutOptions {
            kernel: Kernel::Floating { tolerance },
            ..Self::exact()
        }
    }
}

impl Default for LayoutOptions {
    fn default() -> Self {
        Self::exact()
    }
}

/// Line through `s` with `p` strictly on the positive side and `q` strictly
/// on the negative side.
///
/// The normal is `(p - s) - (q - s)` when that already separates, which
/// covers every pair at an angle of at least 90 degrees. Otherwise the
/// normal is the perpendicular of `q - s` turned toward `p`, tilted away
/// from `q` by a power-of-two multiple of `q - s` small enough to keep `p`
/// positive. Square roots are never needed.
pub fn separating_line<S: Scalar>(
    s: &Point<S>,
    p: &Point<S>,
    q: &Point<S>,
    tolerance: f64,
) -> Result<Line<S>> {
    let a = p.sub(s);
    let b = q.sub(s);
    if a.is_origin() || b.is_origin() {
        return Err(Error::Degenerate(format!(
            "separating line through {s} needs p, q distinct from it"
        )));
    }
    let separates = |n: &Point<S>| {
        dot_sign(n, &a, tolerance) == Sign::Positive && dot_sign(n, &b, tolerance) == Sign::Negative
    };
    let simple = a.sub(&b);
    if separates(&simple) {
        return Ok(Line {
            point: s.clone(),
            normal: simple,
        });
    }
    let turn = b.cross(&a);
    if turn.is_zero() {
        return Err(Error::Degenerate(format!(
            "directions from {s} to {p} and {q} coincide"
        )));
    }
    let mut base = b.perp();
    if turn < S::zero() {
        base = base.neg();
    }
    // base . a = |turn| > 0 and base . b = 0.
    let lean = a.dot(&b);
    let bound = base.dot(&a) / (lean * S::from_int(2));
    let delta = power_of_two_below(&S::one(), &(bound.clone() * bound));
    let normal = base.sub(&b.scale(&delta));
    if separates(&normal) {
        Ok(Line {
            point: s.clone(),
            normal,
        })
    } else {
        Err(Error::Degenerate(format!(
            "no separating line through {s} for {p} and {q} within tolerance"
        )))
    }
}

fn kernel_for<S: Scalar>(kernel: Kernel) -> Kernel {
    if S::EXACT {
        Kernel::Exact
    } else {
        kernel
    }
}

/// Draws a 3-cycle at `(0,0)`, `(2,3)`, `(4,0)` so that its outer walk runs
/// clockwise and therefore bounds the unbounded region.
pub fn draw_base<S: Scalar>(base: &PlaneGraph, kernel: Kernel) -> Result<Drawing<S>> {
    if base.vertex_count() != 3 || base.edge_count() != 3 {
        return Err(Error::Precondition(format!(
            "base graph must be a triangle, got {} vertices and {} edges",
            base.vertex_count(),
            base.edge_count()
        )));
    }
    let walk = base.outer_face();
    let mut drawing = Drawing::new(kernel_for::<S>(kernel));
    for (d, (x, y)) in walk.iter().zip([(0, 0), (2, 3), (4, 0)]) {
        drawing.set(d.tail, Point::from_ints(x, y));
    }
    Ok(drawing)
}

/// Undoes one contraction in the drawing. `graph` is the graph before the
/// contraction (the one the output must realize). Returns the new drawing
/// and the number of halvings the distance search used.
pub fn split_vertex<S: Scalar>(
    drawing: &Drawing<S>,
    record: &ContractionRecord,
    graph: &PlaneGraph,
    max_halvings: u32,
) -> Result<(Drawing<S>, u32)> {
    let tol = drawing.tolerance();
    let at = |v| {
        drawing
            .point(v)
            .cloned()
            .ok_or_else(|| Error::Argument(format!("vertex {v} is not drawn")))
    };
    let s = at(record.s)?;
    let p = at(record.p)?;
    let q = at(record.q)?;
    let line = separating_line(&s, &p, &q, tol)?;
    let to_p = p.sub(&s);
    let to_q = q.sub(&s);
    // The x neighbours sit clockwise from q to p, i.e. counterclockwise from p to q.
    let dir = line.direction();
    let toward_v = if in_ccw_sector(&to_p, &to_q, &dir) {
        dir
    } else if in_ccw_sector(&to_p, &to_q, &dir.neg()) {
        dir.neg()
    } else {
        return Err(Error::Degenerate(format!(
            "line through {s} does not enter the sector between {p} and {q}"
        )));
    };

    let mut nearest: Option<S> = None;
    for t in record.merged_rotation() {
        let d = at(t)?.sub(&s).norm_sq();
        if nearest.as_ref().is_none_or(|m| d < *m) {
            nearest = Some(d);
        }
    }
    let eps_sq = nearest.expect("s has neighbours") / S::from_int(4);
    let mut scale = power_of_two_below(&toward_v.norm_sq(), &eps_sq);

    let mut last_failure = None;
    for halvings in 0..=max_halvings {
        let offset = toward_v.scale(&scale);
        let mut out = drawing.clone();
        out.remove(record.s);
        out.set(record.v, s.add(&offset));
        out.set(record.w, s.sub(&offset));
        let report = verify_local(graph, &out, &[record.v, record.w])?;
        if report.passed {
            return Ok((out, halvings));
        }
        last_failure = report.violations.into_iter().next();
        scale = scale.half();
    }
    Err(Error::Kernel(format!(
        "splitting vertex {} into {}/{} failed after {max_halvings} halvings; last violation: {last_failure:?}",
        record.s, record.v, record.w
    )))
}

#[derive(Debug, Clone)]
pub struct DrawOutcome<S> {
    pub drawing: Drawing<S>,
    /// Halvings used by each split, in split order.
    pub halvings: Vec<u32>,
    pub added_edges: usize,
}

/// Straight-line drawing of `graph` realizing its embedding: triangulate,
/// reduce, draw the base triangle, split vertices back in reverse order,
/// then drop the added edges.
pub fn draw_with<S: Scalar>(
    graph: &PlaneGraph,
    strategy: Strategy,
    options: &LayoutOptions,
) -> Result<DrawOutcome<S>> {
    let kernel = kernel_for::<S>(options.kernel);
    let n = graph.vertex_count();
    if n < 3 {
        let drawing = Drawing::from_points(
            kernel,
            [(0, 0), (4, 0)].into_iter().take(n).map(|(x, y)| Point::from_ints(x, y)),
        );
        return Ok(DrawOutcome {
            drawing,
            halvings: Vec::new(),
            added_edges: 0,
        });
    }
    let augmentation = triangulate(graph)?;
    let sequence = reduce(&augmentation.triangulated, strategy)?;
    let mut drawing = draw_base::<S>(&sequence.base, kernel)?;
    let mut current = sequence.base.clone();
    let mut halvings = Vec::with_capacity(sequence.records.len());
    for record in sequence.records.iter().rev() {
        let next = expand(&current, record)?;
        let (split, used) = split_vertex(&drawing, record, &next, options.max_halvings)?;
        if options.verify_each_split {
            let report = verify(&next, &split)?;
            if !report.passed {
                return Err(Error::Invariant(format!(
                    "drawing invalid after splitting {}: {:?}",
                    record.s, report.violations
                )));
            }
        }
        halvings.push(used);
        drawing = split;
        current = next;
    }
    let (original, drawing) = augmentation.strip(&drawing);
    if options.final_verify {
        let report = verify(&original, &drawing)?;
        if !report.passed {
            let message = format!("final drawing fails verification: {:?}", report.violations);
            return Err(if S::EXACT {
                Error::Invariant(message)
            } else {
                Error::Kernel(message)
            });
        }
    }
    Ok(DrawOutcome {
        drawing,
        halvings,
        added_edges: augmentation.added_edges.len(),
    })
}

/// Exact-kernel drawing with default options.
pub fn draw(graph: &PlaneGraph, strategy: Strategy) -> Result<ExactDrawing> {
    draw_with(graph, strategy, &LayoutOptions::exact()).map(|o| o.drawing)
}
