use std::collections::HashMap;

use super::{TwoSkeleton, UnionFind};
use crate::error::{Error, Result};

/// Corner pairs of a triangle side, in `[e01, e12, e02]` order.
pub const SIDE_CORNERS: [(usize, usize); 3] = [(0, 1), (1, 2), (0, 2)];

/// Sign of side `p` in the boundary of an ordered triangle.
const SIDE_SIGN: [i8; 3] = [1, 1, -1];

/// A branched triangulated closed surface: each triangle lists its edges as
/// `[e01, e12, e02]` with respect to its corner order, and every edge points
/// from the lower corner to the higher one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceTriangulation {
    edges: usize,
    triangles: Vec<[usize; 3]>,
    vertex_of_corner: Vec<[usize; 3]>,
    n_vertices: usize,
    orientation: Vec<i8>,
}

impl SurfaceTriangulation {
    /// Validates and builds: every edge on exactly two triangle sides,
    /// consistent endpoints, circular vertex links, orientable.
    pub fn new(edges: usize, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let mut sides: Vec<Vec<(usize, usize)>> = vec![Vec::new(); edges];
        for (t, tri) in triangles.iter().enumerate() {
            for (p, &e) in tri.iter().enumerate() {
                if e >= edges {
                    return Err(Error::InvalidComplex(format!("triangle {t} uses unknown edge {e}")));
                }
                sides[e].push((t, p));
            }
        }
        if let Some(e) = sides.iter().position(|s| s.len() != 2) {
            return Err(Error::InvalidComplex(format!(
                "surface edge {e} lies on {} triangle sides, expected 2",
                sides[e].len()
            )));
        }
        let mut uf = UnionFind::new(3 * triangles.len());
        for s in &sides {
            let [(t1, p1), (t2, p2)] = [s[0], s[1]];
            let (a1, b1) = SIDE_CORNERS[p1];
            let (a2, b2) = SIDE_CORNERS[p2];
            uf.union(3 * t1 + a1, 3 * t2 + a2);
            uf.union(3 * t1 + b1, 3 * t2 + b2);
        }
        let (ids, n_vertices) = uf.canonical_ids();
        let vertex_of_corner: Vec<[usize; 3]> = (0..triangles.len())
            .map(|t| std::array::from_fn(|c| ids[3 * t + c]))
            .collect();

        // each vertex link must be a circle: #edge ends = #corners
        let mut link = vec![0i64; n_vertices];
        for s in &sides {
            let (t, p) = s[0];
            let (a, b) = SIDE_CORNERS[p];
            link[vertex_of_corner[t][a]] += 1;
            link[vertex_of_corner[t][b]] += 1;
        }
        for corners in &vertex_of_corner {
            for &v in corners {
                link[v] -= 1;
            }
        }
        if let Some(v) = link.iter().position(|&x| x != 0) {
            return Err(Error::InvalidComplex(format!("surface vertex {v} has a singular link")));
        }

        let mut orientation = vec![0i8; triangles.len()];
        let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); triangles.len()];
        for s in &sides {
            let [(t1, p1), (t2, p2)] = [s[0], s[1]];
            let rel = -SIDE_SIGN[p1] * SIDE_SIGN[p2];
            adj[t1].push((t2, rel));
            adj[t2].push((t1, rel));
        }
        for start in 0..triangles.len() {
            if orientation[start] != 0 {
                continue;
            }
            orientation[start] = 1;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for &(u, rel) in &adj[t] {
                    let want = orientation[t] * rel;
                    if orientation[u] == 0 {
                        orientation[u] = want;
                        stack.push(u);
                    } else if orientation[u] != want {
                        return Err(Error::InvalidComplex("surface is not orientable".into()));
                    }
                }
            }
        }
        Ok(SurfaceTriangulation {
            edges,
            triangles,
            vertex_of_corner,
            n_vertices,
            orientation,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.n_vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Vertex class of corner `pos` of triangle `t`.
    pub fn corner_vertex(&self, t: usize, pos: usize) -> usize {
        self.vertex_of_corner[t][pos]
    }

    /// Orientation sign of triangle `t` relative to its corner order, chosen
    /// so that neighbours agree (`+1` on the first triangle of each component).
    pub fn orientation(&self, t: usize) -> i8 {
        self.orientation[t]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices as i64 - self.edges as i64 + self.triangles.len() as i64
    }

    /// `(tail, head)` vertex classes of every edge.
    pub fn edge_endpoints(&self) -> Vec<(usize, usize)> {
        let mut ends = vec![(usize::MAX, usize::MAX); self.edges];
        for (t, tri) in self.triangles.iter().enumerate() {
            for (p, &e) in tri.iter().enumerate() {
                let (a, b) = SIDE_CORNERS[p];
                ends[e] = (self.vertex_of_corner[t][a], self.vertex_of_corner[t][b]);
            }
        }
        ends
    }

    pub fn two_skeleton(&self) -> TwoSkeleton {
        TwoSkeleton {
            n_vertices: self.n_vertices,
            edges: self.edge_endpoints(),
            triangles: self.triangles.clone(),
        }
    }

    /// Renumbers edges by first appearance; used by builders that name
    /// edges symbolically.
    fn from_keyed<K: std::hash::Hash + Eq + Clone>(tris: Vec<[K; 3]>) -> Result<Self> {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let triangles = tris
            .into_iter()
            .map(|tri| {
                tri.map(|k| {
                    let next = ids.len();
                    *ids.entry(k).or_insert(next)
                })
            })
            .collect();
        Self::new(ids.len(), triangles)
    }

    /// One-vertex torus: a square with edges `a` (horizontal), `b`
    /// (vertical) and the diagonal `d`, triangles `[a, b, d]` and `[b, a, d]`.
    pub fn torus() -> Self {
        Self::new(3, vec![[0, 1, 2], [1, 0, 2]]).expect("torus is valid")
    }

    /// Boundary of a tetrahedron with vertices ordered `0 < 1 < 2 < 3`.
    pub fn sphere2() -> Self {
        let tris = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
            .map(|[a, b, c]| [(a, b), (b, c), (a, c)]);
        Self::from_keyed(tris.to_vec()).expect("tetrahedron boundary is valid")
    }

    /// One-vertex triangulation of the closed orientable surface of genus
    /// `g ≥ 1`, from the `4g`-gon with word `a₁b₁a₁⁻¹b₁⁻¹⋯`.
    ///
    /// With polygon corners `P₀…P₄g₋₁`, handle `k` is the pentagon
    /// `A=P₄ₖ, B, C, D, E=P₄ₖ₊₄` cut into `(A,B,C)`, `(E,D,C)` and `(A,C,E)`.
    /// The diagonals `A→C` and `E→C` point into `C`; the closing diagonal
    /// between consecutive `Qₖ = P₄ₖ` points forward, except for the last
    /// handle where it runs `Q₀ → Q_{g-1}`. For `g ≥ 3` the inner `g`-gon is
    /// fanned from `Q₀`. The result has `4g − 2` triangles and `6g − 3` edges.
    pub fn sigma(g: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidParameter(
                "genus must be at least 1 (use sphere2 for genus 0)".into(),
            ));
        }
        if g == 1 {
            return Ok(Self::torus());
        }
        #[derive(Clone, PartialEq, Eq, Hash)]
        enum Key {
            A(usize),
            B(usize),
            ToC(usize),
            FromE(usize),
            Inner(usize, usize),
        }
        let closing = |k: usize| {
            if k + 1 < g {
                Key::Inner(k, k + 1)
            } else {
                Key::Inner(0, g - 1)
            }
        };
        let mut tris = Vec::new();
        for k in 0..g {
            tris.push([Key::A(k), Key::B(k), Key::ToC(k)]);
            tris.push([Key::B(k), Key::A(k), Key::FromE(k)]);
            if k + 1 < g {
                // order A < E < C
                tris.push([closing(k), Key::FromE(k), Key::ToC(k)]);
            } else {
                // order E < A < C
                tris.push([closing(k), Key::ToC(k), Key::FromE(k)]);
            }
        }
        for j in 1..g.saturating_sub(1) {
            let left = if j == 1 { Key::Inner(0, 1) } else { Key::Inner(0, j) };
            let right = if j + 1 == g - 1 { Key::Inner(0, g - 1) } else { Key::Inner(0, j + 1) };
            tris.push([left, closing(j), right]);
        }
        Self::from_keyed(tris)
    }

    /// Barycentric subdivision, branched by vertex < edge midpoint < barycenter.
    pub fn barycentric_subdivision(&self) -> Self {
        #[derive(Clone, PartialEq, Eq, Hash)]
        enum Key {
            TailHalf(usize),
            HeadHalf(usize),
            CornerBary(usize, usize),
            MidBary(usize, usize),
        }
        let mut tris = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for corner in 0..3 {
                for (p, &(a, b)) in SIDE_CORNERS.iter().enumerate() {
                    if corner != a && corner != b {
                        continue;
                    }
                    let half = if corner == a {
                        Key::TailHalf(tri[p])
                    } else {
                        Key::HeadHalf(tri[p])
                    };
                    tris.push([half, Key::MidBary(t, p), Key::CornerBary(t, corner)]);
                }
            }
        }
        Self::from_keyed(tris).expect("subdivision of a valid surface is valid")
    }

    /// Parses `torus`, `torus-bary`, `sphere2` or `sigma:<g>`.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        match spec.trim() {
            "torus" => Ok(Self::torus()),
            "torus-bary" => Ok(Self::torus().barycentric_subdivision()),
            "sphere2" => Ok(Self::sphere2()),
            s => match s.strip_prefix("sigma:") {
                Some(g) => Self::sigma(g.parse().map_err(|_| {
                    Error::InvalidParameter(format!("bad genus `{g}`"))
                })?),
                None => Err(Error::InvalidParameter(format!(
                    "unknown surface `{s}` (expected torus, torus-bary, sphere2, sigma:<g>)"
                ))),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_surfaces() {
        let t = SurfaceTriangulation::torus();
        assert_eq!((t.vertex_count(), t.edge_count(), t.triangle_count()), (1, 3, 2));
        assert_eq!(t.euler_characteristic(), 0);
        let s = SurfaceTriangulation::sphere2();
        assert_eq!((s.vertex_count(), s.edge_count(), s.triangle_count()), (4, 6, 4));
        assert_eq!(s.euler_characteristic(), 2);
        for g in 1..=4 {
            let sg = SurfaceTriangulation::sigma(g).unwrap();
            assert_eq!(sg.vertex_count(), 1, "genus {g}");
            assert_eq!(sg.triangle_count(), 4 * g - 2);
            assert_eq!(sg.edge_count(), 6 * g - 3);
            assert_eq!(sg.euler_characteristic(), 2 - 2 * g as i64);
        }
        assert!(SurfaceTriangulation::sigma(0).is_err());
    }

    #[test]
    fn subdivision() {
        let b = SurfaceTriangulation::torus().barycentric_subdivision();
        assert_eq!((b.vertex_count(), b.edge_count(), b.triangle_count()), (6, 18, 12));
        assert_eq!(b.euler_characteristic(), 0);
        let bb = SurfaceTriangulation::sphere2().barycentric_subdivision();
        assert_eq!(bb.euler_characteristic(), 2);
    }

    #[test]
    fn rejects_bad_surfaces() {
        assert!(SurfaceTriangulation::new(3, vec![[0, 1, 2]]).is_err());
        // projective plane: two triangles glued with one twist
        let err = SurfaceTriangulation::new(3, vec![[0, 1, 2], [0, 2, 1]]).unwrap_err();
        assert!(err.to_string().contains("orientable"));
        // two triangles glued along all sides form a sphere
        let pillow = SurfaceTriangulation::new(3, vec![[0, 1, 2], [0, 1, 2]]).unwrap();
        assert_eq!(pillow.euler_characteristic(), 2);
    }

    #[test]
    fn edge_endpoints_follow_corners() {
        let s = SurfaceTriangulation::sphere2();
        let ends = s.edge_endpoints();
        for (t, tri) in s.triangles().iter().enumerate() {
            for (p, &(a, b)) in SIDE_CORNERS.iter().enumerate() {
                assert_eq!(ends[tri[p]], (s.corner_vertex(t, a), s.corner_vertex(t, b)));
            }
        }
    }
}
