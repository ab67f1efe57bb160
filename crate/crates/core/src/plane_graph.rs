//! Plane graphs as rotation systems.
//!
//! Each vertex stores the cyclic sequence of its neighbours in clockwise
//! order, as seen with the x axis pointing right and the y axis up. Faces
//! are the orbits of the next-dart rule: from dart `u -> v` the walk
//! continues with `v -> w`, where `w` is the neighbour immediately after
//! `u` in the clockwise rotation of `v`. Under this rule every bounded face
//! is traced counterclockwise (the face lies to the left of each dart) and
//! the outer face is traced clockwise.
//!
//! Values are canonical: every rotation list starts at its smallest
//! neighbour and the outer face is identified by its smallest dart, so two
//! graphs with the same embedding compare equal.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, StructureError};

pub type VertexId = usize;

/// A directed edge `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Dart {
    pub fn new(tail: VertexId, head: VertexId) -> Self {
        Dart { tail, head }
    }

    pub fn reversed(self) -> Self {
        Dart::new(self.head, self.tail)
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.tail, self.head)
    }
}

/// One face boundary walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
    pub outer: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Vertex sequence of the walk (tails of its darts).
    pub fn vertices(&self) -> Vec<VertexId> {
        self.darts.iter().map(|d| d.tail).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rotation: BTreeMap<VertexId, Vec<VertexId>>,
    outer: Option<Dart>,
}

fn canonical_cycle(mut cycle: Vec<VertexId>) -> Vec<VertexId> {
    if let Some(pos) = cycle.iter().enumerate().min_by_key(|(_, v)| **v).map(|(i, _)| i) {
        cycle.rotate_left(pos);
    }
    cycle
}

impl PlaneGraph {
    /// Builds a graph on vertices `0..rotations.len()`.
    pub fn new(rotations: Vec<Vec<VertexId>>, outer: Option<Dart>) -> Result<Self> {
        Self::from_rotation_map(rotations.into_iter().enumerate().collect(), outer)
    }

    /// Builds a graph whose vertex set is the key set of `rotation`.
    pub fn from_rotation_map(
        rotation: BTreeMap<VertexId, Vec<VertexId>>,
        outer: Option<Dart>,
    ) -> Result<Self> {
        Self::build(rotation, outer, true)
    }

    /// Like [`PlaneGraph::from_rotation_map`] but skips the Euler check, so
    /// the rotation system may describe an embedding of higher genus. Only
    /// meant for certifying drawings against arbitrary rotation systems;
    /// the drawing pipeline rejects such graphs.
    pub fn from_rotation_map_any_genus(
        rotation: BTreeMap<VertexId, Vec<VertexId>>,
        outer: Option<Dart>,
    ) -> Result<Self> {
        Self::build(rotation, outer, false)
    }

    fn build(
        rotation: BTreeMap<VertexId, Vec<VertexId>>,
        outer: Option<Dart>,
        planar: bool,
    ) -> Result<Self> {
        let rotation = rotation
            .into_iter()
            .map(|(v, nbrs)| (v, canonical_cycle(nbrs)))
            .collect();
        let mut graph = PlaneGraph { rotation, outer };
        graph.validate(planar)?;
        if let Some(dart) = graph.outer {
            graph.outer = graph.face_walk(dart).into_iter().min();
        }
        Ok(graph)
    }

    /// Rebuilds the rotation system from face boundary walks: consecutive
    /// darts `u -> v`, `v -> w` of a walk put `w` right after `u` around `v`.
    pub fn from_faces(
        vertices: impl IntoIterator<Item = VertexId>,
        faces: &[Vec<Dart>],
        outer: Option<Dart>,
    ) -> Result<Self> {
        let mut successor: BTreeMap<VertexId, HashMap<VertexId, VertexId>> =
            vertices.into_iter().map(|v| (v, HashMap::new())).collect();
        for walk in faces {
            for (i, d) in walk.iter().enumerate() {
                let next = walk[(i + 1) % walk.len()];
                if next.tail != d.head {
                    return Err(Error::Argument(format!(
                        "face walk is not closed at dart {d}"
                    )));
                }
                successor
                    .entry(d.head)
                    .or_default()
                    .insert(d.tail, next.head);
            }
        }
        let mut rotation = BTreeMap::new();
        for (v, succ) in successor {
            let mut order = Vec::with_capacity(succ.len());
            if let Some(&start) = succ.keys().min() {
                let mut cur = start;
                loop {
                    order.push(cur);
                    cur = *succ.get(&cur).ok_or_else(|| {
                        Error::Argument(format!("faces leave the rotation at {v} open"))
                    })?;
                    if cur == start || order.len() > succ.len() {
                        break;
                    }
                }
                if order.len() != succ.len() {
                    return Err(Error::Argument(format!(
                        "faces around vertex {v} do not form a single cycle"
                    )));
                }
            }
            rotation.insert(v, order);
        }
        PlaneGraph::from_rotation_map(rotation, outer)
    }

    fn validate(&self, planar: bool) -> Result<(), StructureError> {
        if self.rotation.is_empty() {
            return Err(StructureError::Empty);
        }
        for (&v, nbrs) in &self.rotation {
            let mut seen = BTreeSet::new();
            for &u in nbrs {
                if u == v {
                    return Err(StructureError::Loop(v));
                }
                if !seen.insert(u) {
                    return Err(StructureError::RepeatedNeighbour {
                        vertex: v,
                        neighbour: u,
                    });
                }
                match self.rotation.get(&u) {
                    None => {
                        return Err(StructureError::UnknownVertex {
                            vertex: v,
                            neighbour: u,
                        })
                    }
                    Some(back) if !back.contains(&v) => {
                        return Err(StructureError::Asymmetric(v, u))
                    }
                    _ => {}
                }
            }
        }
        let start = *self.rotation.keys().next().expect("non-empty");
        let mut reached = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in &self.rotation[&v] {
                if reached.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        if let Some(&missing) = self.rotation.keys().find(|v| !reached.contains(v)) {
            return Err(StructureError::Disconnected(missing, start));
        }
        match self.outer {
            Some(d) if !self.has_edge(d.tail, d.head) => {
                return Err(StructureError::BadOuterDart(d.tail, d.head))
            }
            None if self.edge_count() > 0 => return Err(StructureError::MissingOuterDart),
            _ => {}
        }
        let euler = self.vertex_count() as i64 - self.edge_count() as i64
            + self.face_count() as i64;
        if planar && euler != 2 {
            return Err(StructureError::NotPlanar(euler));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.values().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.rotation.keys().copied()
    }

    /// One past the largest vertex id.
    pub fn id_bound(&self) -> usize {
        self.rotation.keys().next_back().map_or(0, |v| v + 1)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.rotation.contains_key(&v)
    }

    /// Clockwise neighbour sequence of `v`, starting at its smallest neighbour.
    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        self.rotation.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn rotations(&self) -> &BTreeMap<VertexId, Vec<VertexId>> {
        &self.rotation
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation(v).len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.rotation(u).contains(&v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.rotation
            .iter()
            .flat_map(|(&v, nbrs)| nbrs.iter().filter(move |&&u| v < u).map(move |&u| (v, u)))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.rotation
            .iter()
            .flat_map(|(&v, nbrs)| nbrs.iter().map(move |&u| Dart::new(v, u)))
    }

    pub fn outer_dart(&self) -> Option<Dart> {
        self.outer
    }

    /// Neighbour following `u` clockwise around `v`.
    pub fn cw_next(&self, v: VertexId, u: VertexId) -> VertexId {
        let rot = self.rotation(v);
        let i = rot.iter().position(|&x| x == u).expect("neighbour in rotation");
        rot[(i + 1) % rot.len()]
    }

    /// Neighbour preceding `u` clockwise around `v`.
    pub fn cw_prev(&self, v: VertexId, u: VertexId) -> VertexId {
        let rot = self.rotation(v);
        let i = rot.iter().position(|&x| x == u).expect("neighbour in rotation");
        rot[(i + rot.len() - 1) % rot.len()]
    }

    pub fn next_dart(&self, d: Dart) -> Dart {
        Dart::new(d.head, self.cw_next(d.head, d.tail))
    }

    /// The face walk starting at `start`.
    pub fn face_walk(&self, start: Dart) -> Vec<Dart> {
        let mut walk = vec![start];
        let mut cur = self.next_dart(start);
        while cur != start {
            walk.push(cur);
            cur = self.next_dart(cur);
        }
        walk
    }

    /// Walk of the nominated outer face (empty for a single vertex).
    pub fn outer_face(&self) -> Vec<Dart> {
        self.outer.map(|d| self.face_walk(d)).unwrap_or_default()
    }

    /// All face walks; each dart appears in exactly one. A graph without
    /// edges has a single empty outer face.
    pub fn faces(&self) -> Vec<Face> {
        let Some(outer) = self.outer else {
            return vec![Face {
                darts: Vec::new(),
                outer: true,
            }];
        };
        let mut seen = BTreeSet::new();
        let mut faces = Vec::new();
        for d in self.darts() {
            if seen.contains(&d) {
                continue;
            }
            let walk = self.face_walk(d);
            seen.extend(walk.iter().copied());
            let is_outer = walk.contains(&outer);
            faces.push(Face {
                darts: walk,
                outer: is_outer,
            });
        }
        faces
    }

    pub fn face_count(&self) -> usize {
        if self.outer.is_none() && self.edge_count() == 0 {
            return 1;
        }
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for d in self.darts() {
            if seen.insert(d) {
                count += 1;
                let mut cur = self.next_dart(d);
                while cur != d {
                    seen.insert(cur);
                    cur = self.next_dart(cur);
                }
            }
        }
        count
    }

    /// Every face walk, the outer one included, has length three.
    pub fn is_triangulation(&self) -> bool {
        self.edge_count() > 0 && self.faces().iter().all(|f| f.len() == 3)
    }

    /// Whether `u-v` is an edge of the outer face boundary.
    pub fn is_outer_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.outer_face()
            .iter()
            .any(|d| (d.tail == u && d.head == v) || (d.tail == v && d.head == u))
    }

    pub fn common_neighbours(&self, v: VertexId, w: VertexId) -> Result<BTreeSet<VertexId>> {
        if !self.has_edge(v, w) {
            return Err(Error::Argument(format!("{v}-{w} is not an edge")));
        }
        let nv: BTreeSet<_> = self.rotation(v).iter().copied().collect();
        Ok(self
            .rotation(w)
            .iter()
            .copied()
            .filter(|u| nv.contains(u))
            .collect())
    }

    /// The triangular face to the left of `dart`, as `[tail, head, apex]`.
    pub fn face_triangle_of(&self, dart: Dart) -> Result<[VertexId; 3]> {
        if !self.has_edge(dart.tail, dart.head) {
            return Err(Error::Argument(format!("{dart} is not a dart")));
        }
        if !self.is_triangulation() {
            return Err(Error::NotTriangulation);
        }
        let apex = self.cw_next(dart.head, dart.tail);
        Ok([dart.tail, dart.head, apex])
    }

    /// Apexes `(p, q)` of the two faces flanking edge `v-w`: `p` is the apex
    /// of the face to the left of `v -> w`, `q` of the face to its right.
    /// Equivalently `p` precedes and `q` follows `w` clockwise around `v`.
    pub fn flanking_apexes(&self, v: VertexId, w: VertexId) -> Result<(VertexId, VertexId)> {
        let [_, _, p] = self.face_triangle_of(Dart::new(v, w))?;
        let q = self.cw_next(v, w);
        Ok((p, q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::generate;

    #[test]
    fn next_dart_follows_clockwise_successor() {
        let k4 = generate::k4();
        // 3 is the centre; clockwise around 3 is 2, 1, 0 (y up).
        assert_eq!(k4.rotation(3), &[0, 2, 1]);
        assert_eq!(k4.next_dart(Dart::new(0, 3)), Dart::new(3, 2));
        assert_eq!(k4.face_walk(Dart::new(0, 3)).len(), 3);
    }

    #[test]
    fn face_counts_match_euler() {
        let tri = generate::triangle();
        let faces = tri.faces();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert_eq!(generate::k4().faces().len(), 4);
        assert_eq!(generate::octahedron().faces().len(), 8);
        assert_eq!(generate::octahedron().faces().iter().filter(|f| f.outer).count(), 1);
    }

    #[test]
    fn triangulation_predicate() {
        assert!(generate::k4().is_triangulation());
        assert!(generate::octahedron().is_triangulation());
        assert!(!generate::cycle(4).unwrap().is_triangulation());
    }

    #[test]
    fn common_neighbours_small_cases() {
        let k4 = generate::k4();
        assert_eq!(k4.common_neighbours(0, 1).unwrap(), BTreeSet::from([2, 3]));
        let oct = generate::octahedron();
        for (u, v) in oct.edges() {
            assert_eq!(oct.common_neighbours(u, v).unwrap().len(), 2);
        }
        // K4 {0,1,2,3} with 4 stacked inside face 0,1,3 (v=0, w=1, p=3).
        let stacked = generate::stacked(1).unwrap();
        assert_eq!(
            stacked.common_neighbours(0, 1).unwrap(),
            BTreeSet::from([2, 3, 4])
        );
        assert!(matches!(k4.common_neighbours(0, 0), Err(Error::Argument(_))));
    }

    #[test]
    fn flanking_apexes_of_k4_and_octahedron() {
        let k4 = generate::k4();
        let (p, q) = k4.flanking_apexes(0, 1).unwrap();
        assert_eq!(BTreeSet::from([p, q]), BTreeSet::from([2, 3]));
        assert_eq!(k4.cw_prev(0, 1), p);
        assert_eq!(k4.cw_next(0, 1), q);

        let oct = generate::octahedron();
        for (v, w) in oct.edges() {
            let (p, q) = oct.flanking_apexes(v, w).unwrap();
            let faces: Vec<BTreeSet<_>> = oct
                .faces()
                .iter()
                .map(|f| f.vertices().into_iter().collect())
                .collect();
            assert!(faces.contains(&BTreeSet::from([v, w, p])));
            assert!(faces.contains(&BTreeSet::from([v, w, q])));
        }
        let c4 = generate::cycle(4).unwrap();
        assert_eq!(
            c4.face_triangle_of(Dart::new(0, 1)),
            Err(Error::NotTriangulation)
        );
    }

    #[test]
    fn construction_rejects_bad_inputs() {
        let asym = PlaneGraph::new(vec![vec![1], vec![]], Some(Dart::new(0, 1)));
        assert_eq!(
            asym,
            Err(Error::Structure(StructureError::Asymmetric(0, 1)))
        );
        let looped = PlaneGraph::new(vec![vec![0]], None);
        assert_eq!(looped, Err(Error::Structure(StructureError::Loop(0))));
        let repeated = PlaneGraph::new(vec![vec![1, 1], vec![0, 0]], Some(Dart::new(0, 1)));
        assert!(matches!(
            repeated,
            Err(Error::Structure(StructureError::RepeatedNeighbour { .. }))
        ));
        let split = PlaneGraph::new(
            vec![vec![1], vec![0], vec![3], vec![2]],
            Some(Dart::new(0, 1)),
        );
        assert!(matches!(
            split,
            Err(Error::Structure(StructureError::Disconnected(..)))
        ));
        // K4 with one rotation reversed has genus 1.
        let twisted = PlaneGraph::new(
            vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 1, 2]],
            Some(Dart::new(0, 1)),
        );
        assert!(matches!(
            twisted,
            Err(Error::Structure(StructureError::NotPlanar(_)))
        ));
    }

    #[test]
    fn single_vertex_and_single_edge() {
        let one = PlaneGraph::new(vec![vec![]], None).unwrap();
        assert_eq!(one.face_count(), 1);
        let two = PlaneGraph::new(vec![vec![1], vec![0]], Some(Dart::new(1, 0))).unwrap();
        assert_eq!(two.faces().len(), 1);
        assert_eq!(two.outer_dart(), Some(Dart::new(0, 1)));
    }

    #[test]
    fn rebuild_from_faces_round_trips() {
        for g in [generate::k4(), generate::octahedron(), generate::star(5).unwrap()] {
            let walks: Vec<_> = g.faces().into_iter().map(|f| f.darts).collect();
            let rebuilt = PlaneGraph::from_faces(g.vertices(), &walks, g.outer_dart()).unwrap();
            assert_eq!(rebuilt, g);
        }
    }
}
