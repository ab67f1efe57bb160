use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::geometry::{ExactPoint, Kernel, Point, Scalar};
use crate::plane_graph::VertexId;

/// Vertex coordinates, indexed by vertex id, tagged with the kernel that
/// produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct Drawing<S> {
    coords: Vec<Option<Point<S>>>,
    pub kernel: Kernel,
}

pub type ExactDrawing = Drawing<BigRational>;
pub type FloatDrawing = Drawing<f64>;

impl<S: Scalar> Drawing<S> {
    pub fn new(kernel: Kernel) -> Self {
        Drawing {
            coords: Vec::new(),
            kernel,
        }
    }

    pub fn from_points(kernel: Kernel, points: impl IntoIterator<Item = Point<S>>) -> Self {
        Drawing {
            coords: points.into_iter().map(Some).collect(),
            kernel,
        }
    }

    pub fn point(&self, v: VertexId) -> Option<&Point<S>> {
        self.coords.get(v).and_then(Option::as_ref)
    }

    pub fn set(&mut self, v: VertexId, point: Point<S>) {
        if self.coords.len() <= v {
            self.coords.resize(v + 1, None);
        }
        self.coords[v] = Some(point);
    }

    pub fn remove(&mut self, v: VertexId) -> Option<Point<S>> {
        self.coords.get_mut(v).and_then(Option::take)
    }

    /// Placed vertices in id order.
    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &Point<S>)> {
        self.coords
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.as_ref().map(|p| (v, p)))
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn tolerance(&self) -> f64 {
        self.kernel.tolerance()
    }
}

impl FloatDrawing {
    /// The same coordinates as exact rationals (lossless); keeps the
    /// floating kernel tag.
    pub fn to_exact(&self) -> ExactDrawing {
        let mut out = Drawing::new(self.kernel);
        for (v, p) in self.iter() {
            out.set(v, p.to_exact());
        }
        out
    }
}

impl ExactDrawing {
    pub fn to_float(&self, tolerance: f64) -> FloatDrawing {
        let mut out = Drawing::new(Kernel::Floating { tolerance });
        for (v, p) in self.iter() {
            out.set(v, p.to_float());
        }
        out
    }

    /// Same coordinates, re-tagged as exact so predicates run without tolerance.
    pub fn as_exact_kernel(&self) -> ExactDrawing {
        Drawing {
            coords: self.coords.clone(),
            kernel: Kernel::Exact,
        }
    }
}

/// Serializable summary of one coordinate pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coordinate {
    pub vertex: VertexId,
    pub x: String,
    pub y: String,
}

impl ExactDrawing {
    pub fn coordinates(&self) -> Vec<Coordinate> {
        self.iter()
            .map(|(v, p): (VertexId, &ExactPoint)| Coordinate {
                vertex: v,
                x: crate::geometry::format_rational(&p.x),
                y: crate::geometry::format_rational(&p.y),
            })
            .collect()
    }
}
