//! Branched generalized triangulations of oriented 3-manifolds.
//!
//! Tetrahedra are glued face to face. Every tetrahedron lists its corners in
//! its branching order, so corner `i` is the local vertex `i` and every edge
//! points from the lower corner to the higher one. Gluings must therefore
//! match face corners in increasing order; `eps` compares the orientation of
//! the ordered tetrahedron with the orientation of the manifold.

mod builders;
mod io;
mod moves;
mod surface;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

pub use moves::{random_move, MoveKind};
pub use surface::{SurfaceTriangulation, SIDE_CORNERS};

use crate::error::{Error, Result};

/// Corner pairs of a tetrahedron in canonical slot order.
pub const PAIRS: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Slot index of the corner pair `{a, b}`.
pub fn pair_index(a: u8, b: u8) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("invalid corner pair ({a}, {b})"),
    }
}

/// Corners of face `f` (the face opposite corner `f`), ascending.
pub fn face_corners(f: u8) -> [u8; 3] {
    match f {
        0 => [1, 2, 3],
        1 => [0, 2, 3],
        2 => [0, 1, 3],
        3 => [0, 1, 2],
        _ => panic!("invalid face {f}"),
    }
}

pub(crate) fn perm_sign(p: &[u8]) -> i8 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn invert4(p: [u8; 4]) -> [u8; 4] {
    let mut q = [0u8; 4];
    for (i, &x) in p.iter().enumerate() {
        q[x as usize] = i as u8;
    }
    q
}

/// Gluing of one face to a face of another (or the same) tetrahedron.
/// `perm[c]` is the partner corner matched with corner `c`; `perm[face]` is
/// the partner face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FaceGluing {
    pub tet: usize,
    pub face: u8,
    pub perm: [u8; 4],
}

impl FaceGluing {
    /// The gluing that matches the corners of two faces in increasing order.
    pub fn ascending(from_face: u8, tet: usize, face: u8) -> Self {
        let mut perm = [0u8; 4];
        perm[from_face as usize] = face;
        for (a, b) in face_corners(from_face).into_iter().zip(face_corners(face)) {
            perm[a as usize] = b;
        }
        FaceGluing { tet, face, perm }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    In,
    Out,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::In => "in",
            Side::Out => "out",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMark {
    pub label: String,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tetrahedron {
    pub gluings: [Option<FaceGluing>; 4],
    pub eps: i8,
}

/// A structural problem found by [`GeneralizedTriangulation::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Empty,
    BadEps { tet: usize },
    GluingOutOfRange { tet: usize, face: u8 },
    BadPermutation { tet: usize, face: u8 },
    FixedFace { tet: usize, face: u8 },
    NotInvolutive { tet: usize, face: u8 },
    BranchingInconsistent { tet: usize, face: u8 },
    OrientationInconsistent { tet: usize, face: u8 },
    UnmarkedBoundary { tet: usize, face: u8 },
    MarkedGluedFace { tet: usize, face: u8 },
    MarkOutOfRange { tet: usize, face: u8 },
    VertexLink { vertex: usize, euler: i64, expected: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            Empty => write!(f, "complex has no tetrahedra"),
            BadEps { tet } => write!(f, "tet {tet}: eps must be +1 or -1"),
            GluingOutOfRange { tet, face } => write!(f, "face ({tet}, {face}): gluing target out of range"),
            BadPermutation { tet, face } => {
                write!(f, "face ({tet}, {face}): corner correspondence is not a permutation sending the face to the partner face")
            }
            FixedFace { tet, face } => write!(f, "face ({tet}, {face}) is glued to itself"),
            NotInvolutive { tet, face } => write!(f, "face ({tet}, {face}): partner gluing does not point back"),
            BranchingInconsistent { tet, face } => {
                write!(f, "face ({tet}, {face}): gluing does not preserve the branching order")
            }
            OrientationInconsistent { tet, face } => {
                write!(f, "face ({tet}, {face}): incident tetrahedra induce the same orientation")
            }
            UnmarkedBoundary { tet, face } => write!(f, "face ({tet}, {face}) is unglued and carries no boundary mark"),
            MarkedGluedFace { tet, face } => write!(f, "face ({tet}, {face}) is glued but boundary-marked"),
            MarkOutOfRange { tet, face } => write!(f, "boundary mark on nonexistent face ({tet}, {face})"),
            VertexLink { vertex, euler, expected } => write!(
                f,
                "vertex {vertex}: link has Euler characteristic {euler}, expected {expected}"
            ),
        }
    }
}

/// Result of validation: empty means the complex is a branched oriented
/// 3-manifold triangulation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// An edge class, directed along the branching.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    pub tail: usize,
    pub head: usize,
    /// First slot `(tet, i, j)` with `i < j` in scan order.
    pub rep: (usize, u8, u8),
}

/// A face class with its edges in branching order `[e01, e12, e02]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceClass {
    pub rep: (usize, u8),
    pub edges: [usize; 3],
    pub glued: bool,
}

/// Derived combinatorics of a valid complex.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub vertex_of_corner: Vec<[usize; 4]>,
    pub edge_of_slot: Vec<[usize; 6]>,
    pub face_of_slot: Vec<[usize; 4]>,
    pub n_vertices: usize,
    pub edges: Vec<EdgeClass>,
    pub faces: Vec<FaceClass>,
    pub boundary_vertex: Vec<bool>,
}

/// Plain 2-complex: vertices, directed edges, and triangles `[e01, e12, e02]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSkeleton {
    pub n_vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub triangles: Vec<[usize; 3]>,
}

/// A boundary side viewed as a surface, with maps back into the 3-complex.
#[derive(Clone, Debug)]
pub struct BoundarySurface {
    pub surface: SurfaceTriangulation,
    pub faces: Vec<(usize, u8)>,
    /// Surface edge → edge class of the 3-complex.
    pub edge_map: Vec<usize>,
    /// Surface vertex → vertex class of the 3-complex.
    pub vertex_map: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct GeneralizedTriangulation {
    tets: Vec<Tetrahedron>,
    boundary: BTreeMap<(usize, u8), BoundaryMark>,
    analysis: OnceLock<Analysis>,
}

impl PartialEq for GeneralizedTriangulation {
    fn eq(&self, other: &Self) -> bool {
        self.tets == other.tets && self.boundary == other.boundary
    }
}

impl Eq for GeneralizedTriangulation {}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Class ids numbered by first appearance in index order.
    fn canonical_ids(&mut self) -> (Vec<usize>, usize) {
        let n = self.0.len();
        let mut id_of_root = vec![usize::MAX; n];
        let mut ids = vec![0; n];
        let mut next = 0;
        for (x, id) in ids.iter_mut().enumerate() {
            let r = self.find(x);
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = next;
                next += 1;
            }
            *id = id_of_root[r];
        }
        (ids, next)
    }
}

impl GeneralizedTriangulation {
    /// Assembles a complex without validating it.
    pub fn from_parts(tets: Vec<Tetrahedron>, boundary: BTreeMap<(usize, u8), BoundaryMark>) -> Self {
        GeneralizedTriangulation {
            tets,
            boundary,
            analysis: OnceLock::new(),
        }
    }

    /// Assembles and validates a complex.
    pub fn new(tets: Vec<Tetrahedron>, boundary: BTreeMap<(usize, u8), BoundaryMark>) -> Result<Self> {
        let t = Self::from_parts(tets, boundary);
        t.analysis()?;
        Ok(t)
    }

    pub fn tets(&self) -> &[Tetrahedron] {
        &self.tets
    }

    pub fn tet_count(&self) -> usize {
        self.tets.len()
    }

    pub fn eps(&self, t: usize) -> i8 {
        self.tets[t].eps
    }

    pub fn gluing(&self, t: usize, f: u8) -> Option<FaceGluing> {
        self.tets[t].gluings[f as usize]
    }

    pub fn boundary_marks(&self) -> &BTreeMap<(usize, u8), BoundaryMark> {
        &self.boundary
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_empty()
    }

    /// Checks every structural invariant; on success the derived classes are cached.
    pub fn validate(&self) -> ValidationReport {
        let mut v = Vec::new();
        let n = self.tets.len();
        if n == 0 {
            v.push(Violation::Empty);
            return ValidationReport { violations: v };
        }
        for (&(tet, face), _) in &self.boundary {
            if tet >= n || face > 3 {
                v.push(Violation::MarkOutOfRange { tet, face });
            }
        }
        for (t, tet) in self.tets.iter().enumerate() {
            if tet.eps != 1 && tet.eps != -1 {
                v.push(Violation::BadEps { tet: t });
            }
            for f in 0..4u8 {
                let Some(g) = tet.gluings[f as usize] else {
                    if !self.boundary.contains_key(&(t, f)) {
                        v.push(Violation::UnmarkedBoundary { tet: t, face: f });
                    }
                    continue;
                };
                if self.boundary.contains_key(&(t, f)) {
                    v.push(Violation::MarkedGluedFace { tet: t, face: f });
                }
                if g.tet >= n || g.face > 3 {
                    v.push(Violation::GluingOutOfRange { tet: t, face: f });
                    continue;
                }
                let mut seen = [false; 4];
                let mut is_perm = g.perm[f as usize] == g.face;
                for &x in &g.perm {
                    if x > 3 || seen[x as usize] {
                        is_perm = false;
                    } else {
                        seen[x as usize] = true;
                    }
                }
                if !is_perm {
                    v.push(Violation::BadPermutation { tet: t, face: f });
                    continue;
                }
                if g.tet == t && g.face == f {
                    v.push(Violation::FixedFace { tet: t, face: f });
                    continue;
                }
                let back = self.tets[g.tet].gluings[g.face as usize];
                if back != Some(FaceGluing { tet: t, face: f, perm: invert4(g.perm) }) {
                    v.push(Violation::NotInvolutive { tet: t, face: f });
                    continue;
                }
                let c = face_corners(f);
                let img = c.map(|x| g.perm[x as usize]);
                if !(img[0] < img[1] && img[1] < img[2]) {
                    v.push(Violation::BranchingInconsistent { tet: t, face: f });
                    continue;
                }
                if (t, f) < (g.tet, g.face) {
                    let sign = tet.eps * self.tets[g.tet].eps * if (f + g.face) % 2 == 0 { 1 } else { -1 };
                    if sign != -1 {
                        v.push(Violation::OrientationInconsistent { tet: t, face: f });
                    }
                }
            }
        }
        if !v.is_empty() {
            return ValidationReport { violations: v };
        }
        let a = self.compute_analysis();
        let mut euler = vec![0i64; a.n_vertices];
        for e in &a.edges {
            euler[e.tail] += 1;
            euler[e.head] += 1;
        }
        for fc in &a.faces {
            for c in face_corners(fc.rep.1) {
                euler[a.vertex_of_corner[fc.rep.0][c as usize]] -= 1;
            }
        }
        for corners in &a.vertex_of_corner {
            for &x in corners {
                euler[x] += 1;
            }
        }
        for (vertex, &chi) in euler.iter().enumerate() {
            let expected = if a.boundary_vertex[vertex] { 1 } else { 2 };
            if chi != expected {
                v.push(Violation::VertexLink {
                    vertex,
                    euler: chi,
                    expected,
                });
            }
        }
        if v.is_empty() {
            let _ = self.analysis.set(a);
        }
        ValidationReport { violations: v }
    }

    /// Cached derived combinatorics; errors if the complex is invalid.
    pub fn analysis(&self) -> Result<&Analysis> {
        if let Some(a) = self.analysis.get() {
            return Ok(a);
        }
        let report = self.validate();
        match report.violations.first() {
            None => Ok(self.analysis.get().expect("validation caches the analysis")),
            Some(first) => Err(Error::InvalidComplex(format!(
                "{first}{}",
                if report.violations.len() > 1 {
                    format!(" (and {} more)", report.violations.len() - 1)
                } else {
                    String::new()
                }
            ))),
        }
    }

    fn compute_analysis(&self) -> Analysis {
        let n = self.tets.len();
        let mut vuf = UnionFind::new(4 * n);
        let mut euf = UnionFind::new(6 * n);
        let mut fuf = UnionFind::new(4 * n);
        for (t, tet) in self.tets.iter().enumerate() {
            for f in 0..4u8 {
                let Some(g) = tet.gluings[f as usize] else { continue };
                fuf.union(4 * t + f as usize, 4 * g.tet + g.face as usize);
                let c = face_corners(f);
                for &x in &c {
                    vuf.union(4 * t + x as usize, 4 * g.tet + g.perm[x as usize] as usize);
                }
                for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                    let (a, b) = (c[i], c[j]);
                    let (pa, pb) = (g.perm[a as usize], g.perm[b as usize]);
                    euf.union(6 * t + pair_index(a, b), 6 * g.tet + pair_index(pa, pb));
                }
            }
        }
        let (vids, n_vertices) = vuf.canonical_ids();
        let (eids, n_edges) = euf.canonical_ids();
        let (fids, n_faces) = fuf.canonical_ids();
        let vertex_of_corner: Vec<[usize; 4]> =
            (0..n).map(|t| std::array::from_fn(|c| vids[4 * t + c])).collect();
        let edge_of_slot: Vec<[usize; 6]> =
            (0..n).map(|t| std::array::from_fn(|p| eids[6 * t + p])).collect();
        let face_of_slot: Vec<[usize; 4]> =
            (0..n).map(|t| std::array::from_fn(|f| fids[4 * t + f])).collect();
        let mut edges: Vec<Option<EdgeClass>> = vec![None; n_edges];
        for t in 0..n {
            for (p, &(i, j)) in PAIRS.iter().enumerate() {
                let e = edge_of_slot[t][p];
                if edges[e].is_none() {
                    edges[e] = Some(EdgeClass {
                        tail: vertex_of_corner[t][i as usize],
                        head: vertex_of_corner[t][j as usize],
                        rep: (t, i, j),
                    });
                }
            }
        }
        let mut faces: Vec<Option<FaceClass>> = vec![None; n_faces];
        let mut boundary_vertex = vec![false; n_vertices];
        for t in 0..n {
            for f in 0..4u8 {
                let id = face_of_slot[t][f as usize];
                let glued = self.tets[t].gluings[f as usize].is_some();
                let [a, b, c] = face_corners(f);
                if !glued {
                    for x in [a, b, c] {
                        boundary_vertex[vertex_of_corner[t][x as usize]] = true;
                    }
                }
                if faces[id].is_none() {
                    faces[id] = Some(FaceClass {
                        rep: (t, f),
                        edges: [
                            edge_of_slot[t][pair_index(a, b)],
                            edge_of_slot[t][pair_index(b, c)],
                            edge_of_slot[t][pair_index(a, c)],
                        ],
                        glued,
                    });
                }
            }
        }
        Analysis {
            vertex_of_corner,
            edge_of_slot,
            face_of_slot,
            n_vertices,
            edges: edges.into_iter().map(Option::unwrap).collect(),
            faces: faces.into_iter().map(Option::unwrap).collect(),
            boundary_vertex,
        }
    }

    /// Number of vertex classes.
    pub fn n0(&self) -> Result<usize> {
        Ok(self.analysis()?.n_vertices)
    }

    pub fn edge_count(&self) -> Result<usize> {
        Ok(self.analysis()?.edges.len())
    }

    pub fn face_count(&self) -> Result<usize> {
        Ok(self.analysis()?.faces.len())
    }

    pub fn euler_characteristic(&self) -> Result<i64> {
        let a = self.analysis()?;
        Ok(a.n_vertices as i64 - a.edges.len() as i64 + a.faces.len() as i64 - self.tets.len() as i64)
    }

    /// Edge classes of tetrahedron `t` in [`PAIRS`] order.
    pub fn tet_edges(&self, t: usize) -> Result<[usize; 6]> {
        Ok(self.analysis()?.edge_of_slot[t])
    }

    /// Edge class of the corner pair `(i, j)` of tetrahedron `t`.
    pub fn edge_of(&self, t: usize, i: u8, j: u8) -> Result<usize> {
        Ok(self.analysis()?.edge_of_slot[t][pair_index(i, j)])
    }

    pub fn two_skeleton(&self) -> Result<TwoSkeleton> {
        let a = self.analysis()?;
        Ok(TwoSkeleton {
            n_vertices: a.n_vertices,
            edges: a.edges.iter().map(|e| (e.tail, e.head)).collect(),
            triangles: a.faces.iter().map(|f| f.edges).collect(),
        })
    }

    /// The marked faces on one side, as a surface.
    pub fn boundary_surface(&self, side: Side) -> Result<BoundarySurface> {
        self.marked_surface(|m| m.side == side)
    }

    /// The faces carrying boundary label `label`, as a surface.
    pub fn boundary_component(&self, label: &str) -> Result<BoundarySurface> {
        if !self.boundary.values().any(|m| m.label == label) {
            return Err(Error::InvalidBoundary(format!("no boundary component labelled `{label}`")));
        }
        self.marked_surface(|m| m.label == label)
    }

    /// Distinct boundary labels in sorted order.
    pub fn boundary_labels(&self) -> Vec<String> {
        let labels: std::collections::BTreeSet<&String> = self.boundary.values().map(|m| &m.label).collect();
        labels.into_iter().cloned().collect()
    }

    fn marked_surface(&self, keep: impl Fn(&BoundaryMark) -> bool) -> Result<BoundarySurface> {
        let a = self.analysis()?;
        let faces: Vec<(usize, u8)> = self
            .boundary
            .iter()
            .filter(|(_, m)| keep(m))
            .map(|(&k, _)| k)
            .collect();
        let mut local = BTreeMap::new();
        let mut edge_map = Vec::new();
        let mut triangles = Vec::with_capacity(faces.len());
        for &(t, f) in &faces {
            let [x, y, z] = face_corners(f);
            let tri = [(x, y), (y, z), (x, z)].map(|(i, j)| {
                let e = a.edge_of_slot[t][pair_index(i, j)];
                *local.entry(e).or_insert_with(|| {
                    edge_map.push(e);
                    edge_map.len() - 1
                })
            });
            triangles.push(tri);
        }
        let surface = SurfaceTriangulation::new(edge_map.len(), triangles)?;
        let mut vertex_map = vec![usize::MAX; surface.vertex_count()];
        for (k, &(t, f)) in faces.iter().enumerate() {
            for (pos, c) in face_corners(f).into_iter().enumerate() {
                vertex_map[surface.corner_vertex(k, pos)] = a.vertex_of_corner[t][c as usize];
            }
        }
        Ok(BoundarySurface {
            surface,
            faces,
            edge_map,
            vertex_map,
        })
    }

    /// Disjoint union; tetrahedra of `other` are renumbered after those of `self`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let shift = self.tets.len();
        let mut tets = self.tets.clone();
        tets.extend(other.tets.iter().map(|t| Tetrahedron {
            gluings: t.gluings.map(|g| {
                g.map(|g| FaceGluing {
                    tet: g.tet + shift,
                    ..g
                })
            }),
            eps: t.eps,
        }));
        let mut boundary = self.boundary.clone();
        boundary.extend(other.boundary.iter().map(|(&(t, f), m)| ((t + shift, f), m.clone())));
        Self::from_parts(tets, boundary)
    }

    /// Glues the `out` side of `self` to the `in` side of `next` (cobordism
    /// composition "`next` after `self`"). Both sides must carry the same
    /// surface triangulation; faces are matched in order.
    pub fn glue(&self, next: &Self) -> Result<Self> {
        let out = self.boundary_surface(Side::Out)?;
        let inn = next.boundary_surface(Side::In)?;
        if out.surface != inn.surface {
            return Err(Error::InvalidComposition(
                "outgoing and incoming boundary triangulations differ".into(),
            ));
        }
        let shift = self.tets.len();
        let mut joined = self.disjoint_union(next);
        for (&(t, f), &(t2, f2)) in out.faces.iter().zip(&inn.faces) {
            let t2 = t2 + shift;
            joined.boundary.remove(&(t, f));
            joined.boundary.remove(&(t2, f2));
            joined.tets[t].gluings[f as usize] = Some(FaceGluing::ascending(f, t2, f2));
            joined.tets[t2].gluings[f2 as usize] = Some(FaceGluing::ascending(f2, t, f));
        }
        joined.analysis()?;
        Ok(joined)
    }

    /// Reorders the corners of every tetrahedron: `order[t][i]` is the old
    /// corner placed at position `i`. Gluings, boundary marks and `eps` are
    /// carried along; the result is not validated.
    pub(crate) fn reorder_corners(&self, order: &[[u8; 4]]) -> Self {
        let inv: Vec<[u8; 4]> = order.iter().map(|&o| invert4(o)).collect();
        let tets = self
            .tets
            .iter()
            .enumerate()
            .map(|(t, tet)| {
                let gluings = std::array::from_fn(|i| {
                    let old_face = order[t][i];
                    tet.gluings[old_face as usize].map(|g| {
                        let perm = std::array::from_fn(|k| {
                            let old_corner = order[t][k];
                            inv[g.tet][g.perm[old_corner as usize] as usize]
                        });
                        FaceGluing {
                            tet: g.tet,
                            face: inv[g.tet][g.face as usize],
                            perm,
                        }
                    })
                });
                Tetrahedron {
                    gluings,
                    eps: tet.eps * perm_sign(&order[t]),
                }
            })
            .collect();
        let boundary = self
            .boundary
            .iter()
            .map(|(&(t, f), m)| ((t, inv[t][f as usize]), m.clone()))
            .collect();
        Self::from_parts(tets, boundary)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_and_face_tables() {
        for (p, &(a, b)) in PAIRS.iter().enumerate() {
            assert_eq!(pair_index(a, b), p);
            assert_eq!(pair_index(b, a), p);
        }
        for f in 0..4 {
            assert!(!face_corners(f).contains(&f));
        }
        assert_eq!(perm_sign(&[1, 0, 2, 3]), -1);
        assert_eq!(perm_sign(&[1, 2, 3, 0]), -1);
        assert_eq!(invert4([1, 2, 3, 0]), [3, 0, 1, 2]);
    }

    #[test]
    fn ascending_gluing() {
        let g = FaceGluing::ascending(3, 7, 0);
        assert_eq!(g.perm, [1, 2, 3, 0]);
    }

    #[test]
    fn self_glued_face_is_reported() {
        let mut gl = [None; 4];
        gl[0] = Some(FaceGluing { tet: 0, face: 0, perm: [0, 1, 2, 3] });
        let mut marks = BTreeMap::new();
        for f in 1..4 {
            marks.insert((0, f), BoundaryMark { label: "b".into(), side: Side::In });
        }
        let t = GeneralizedTriangulation::from_parts(vec![Tetrahedron { gluings: gl, eps: 1 }], marks);
        let r = t.validate();
        assert!(r.violations.contains(&Violation::FixedFace { tet: 0, face: 0 }));
        assert!(t.analysis().is_err());
    }

    #[test]
    fn single_tetrahedron_is_a_ball() {
        let marks = (0..4)
            .map(|f| ((0, f), BoundaryMark { label: "s".into(), side: Side::Out }))
            .collect();
        let t = GeneralizedTriangulation::new(vec![Tetrahedron { gluings: [None; 4], eps: 1 }], marks).unwrap();
        assert_eq!(t.n0().unwrap(), 4);
        assert_eq!(t.edge_count().unwrap(), 6);
        assert_eq!(t.euler_characteristic().unwrap(), 1);
        let b = t.boundary_surface(Side::Out).unwrap();
        assert_eq!(b.surface.triangle_count(), 4);
        assert_eq!(b.surface.vertex_count(), 4);
        assert!(t.boundary_surface(Side::In).unwrap().faces.is_empty());
    }

    #[test]
    fn unmarked_face_is_reported() {
        let t = GeneralizedTriangulation::from_parts(
            vec![Tetrahedron { gluings: [None; 4], eps: 1 }],
            BTreeMap::new(),
        );
        assert_eq!(t.validate().violations.len(), 4);
    }
}
