use std::collections::{BTreeMap, HashMap};

use super::{
    face_corners, BoundaryMark, FaceGluing, GeneralizedTriangulation, Side, SurfaceTriangulation,
    Tetrahedron,
};
use crate::error::{Error, Result};
use crate::groups::Permutation;

/// Corner slots of the three prism tetrahedra that carry the lower and upper
/// halves of the side quad over triangle side `p` (`[e01, e12, e02]` order).
const SIDE_SLOTS: [((usize, u8), (usize, u8)); 3] = [((1, 3), (2, 3)), ((0, 0), (1, 0)), ((0, 1), (2, 2))];

fn glue_pair(tets: &mut [Tetrahedron], (t, f): (usize, u8), (t2, f2): (usize, u8)) {
    tets[t].gluings[f as usize] = Some(FaceGluing::ascending(f, t2, f2));
    tets[t2].gluings[f2 as usize] = Some(FaceGluing::ascending(f2, t, f));
}

/// Orientation signs for a set of tetrahedra glued along ascending face
/// correspondences, anchored at `+1` per component.
fn orient(tets: &mut [Tetrahedron]) -> Result<()> {
    let n = tets.len();
    let mut eps = vec![0i8; n];
    for start in 0..n {
        if eps[start] != 0 {
            continue;
        }
        eps[start] = 1;
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for f in 0..4u8 {
                let Some(g) = tets[t].gluings[f as usize] else { continue };
                let parity = if (f + g.face) % 2 == 0 { 1 } else { -1 };
                let want = -eps[t] * parity;
                if eps[g.tet] == 0 {
                    eps[g.tet] = want;
                    stack.push(g.tet);
                } else if eps[g.tet] != want {
                    return Err(Error::InvalidComplex("complex is not orientable".into()));
                }
            }
        }
    }
    for (tet, e) in tets.iter_mut().zip(eps) {
        tet.eps = e;
    }
    Ok(())
}

impl GeneralizedTriangulation {
    /// Builds a closed complex from tetrahedra given as 4-tuples of global
    /// vertex ids; the global order of the ids is the branching. Faces with
    /// the same vertex set are glued, and orientations are chosen coherently
    /// starting from `eps = +1` on the first tetrahedron of each component.
    pub fn from_ordered_simplices(simplices: &[[usize; 4]]) -> Result<Self> {
        let mut sorted = Vec::with_capacity(simplices.len());
        for s in simplices {
            let mut v = *s;
            v.sort_unstable();
            if v.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!("simplex {s:?} repeats a vertex")));
            }
            sorted.push(v);
        }
        let mut faces: HashMap<[usize; 3], Vec<(usize, u8)>> = HashMap::new();
        for (t, v) in sorted.iter().enumerate() {
            for f in 0..4u8 {
                let key = face_corners(f).map(|c| v[c as usize]);
                faces.entry(key).or_default().push((t, f));
            }
        }
        let mut tets = vec![
            Tetrahedron {
                gluings: [None; 4],
                eps: 1
            };
            sorted.len()
        ];
        let mut keys: Vec<_> = faces.into_iter().collect();
        keys.sort();
        for (key, slots) in keys {
            match slots.as_slice() {
                [a, b] => glue_pair(&mut tets, *a, *b),
                _ => {
                    return Err(Error::InvalidComplex(format!(
                        "face {key:?} is shared by {} simplices, expected 2",
                        slots.len()
                    )))
                }
            }
        }
        orient(&mut tets)?;
        Self::new(tets, BTreeMap::new())
    }

    /// Boundary of the 4-simplex on vertices `0 < 1 < 2 < 3 < 4`.
    pub fn sphere3() -> Self {
        let mut simplices = Vec::new();
        for skip in (0..5).rev() {
            let v: Vec<usize> = (0..5).filter(|&x| x != skip).collect();
            simplices.push([v[0], v[1], v[2], v[3]]);
        }
        Self::from_ordered_simplices(&simplices).expect("sphere3 is valid")
    }

    /// The unit cube with opposite faces identified, cut into the six
    /// monotone lattice paths `0 → e_a → e_a + e_b → (1,1,1)`. Edges point
    /// along the coordinate directions; each tetrahedron's orientation sign is
    /// the sign of its axis permutation.
    pub fn torus3() -> Self {
        let mut points = Vec::new();
        let mut eps = Vec::new();
        for sigma in Permutation::all(3) {
            let mut p = [[0i32; 3]; 4];
            for step in 0..3 {
                p[step + 1] = p[step];
                p[step + 1][sigma.apply(step)] += 1;
            }
            points.push(p);
            eps.push(sigma.sign());
        }
        let mut faces: BTreeMap<[[i32; 3]; 2], Vec<(usize, u8)>> = BTreeMap::new();
        for (t, p) in points.iter().enumerate() {
            for f in 0..4u8 {
                let [a, b, c] = face_corners(f).map(|i| p[i as usize]);
                let key = [
                    std::array::from_fn(|k| b[k] - a[k]),
                    std::array::from_fn(|k| c[k] - a[k]),
                ];
                faces.entry(key).or_default().push((t, f));
            }
        }
        let mut tets: Vec<Tetrahedron> = eps
            .into_iter()
            .map(|eps| Tetrahedron {
                gluings: [None; 4],
                eps,
            })
            .collect();
        for slots in faces.values() {
            assert_eq!(slots.len(), 2, "cube faces pair up under translation");
            glue_pair(&mut tets, slots[0], slots[1]);
        }
        Self::new(tets, BTreeMap::new()).expect("torus3 is valid")
    }

    /// `S × [0,1]`: every triangle `u₀u₁u₂` becomes the prism with top
    /// `w₀w₁w₂`, cut into `[u₀u₁u₂w₂]`, `[u₀u₁w₁w₂]`, `[u₀w₀w₁w₂]`. Side
    /// quads use the diagonal from the lower tail to the upper head, so
    /// neighbouring prisms agree. `S × {0}` is marked `in` (label `bottom`),
    /// `S × {1}` is marked `out` (label `top`).
    pub fn cylinder(surface: &SurfaceTriangulation) -> Result<Self> {
        let tets = Self::prisms(surface);
        let mut boundary = BTreeMap::new();
        for k in 0..surface.triangle_count() {
            boundary.insert(
                (3 * k, 3),
                BoundaryMark {
                    label: "bottom".into(),
                    side: Side::In,
                },
            );
            boundary.insert(
                (3 * k + 2, 0),
                BoundaryMark {
                    label: "top".into(),
                    side: Side::Out,
                },
            );
        }
        Self::new(tets, boundary)
    }

    /// `S × S¹`, the cylinder over `S` with its two ends identified.
    pub fn surface_cross_s1(surface: &SurfaceTriangulation) -> Result<Self> {
        let mut tets = Self::prisms(surface);
        for k in 0..surface.triangle_count() {
            glue_pair(&mut tets, (3 * k + 2, 0), (3 * k, 3));
        }
        Self::new(tets, BTreeMap::new())
    }

    /// `Σ_g × S¹` over the one-vertex polygon triangulation of `Σ_g`.
    pub fn sigma_cross_s1(g: usize) -> Result<Self> {
        Self::surface_cross_s1(&SurfaceTriangulation::sigma(g)?)
    }

    fn prisms(surface: &SurfaceTriangulation) -> Vec<Tetrahedron> {
        let n = surface.triangle_count();
        let mut tets = Vec::with_capacity(3 * n);
        for k in 0..n {
            let s = surface.orientation(k);
            for sign in [1, -1, 1] {
                tets.push(Tetrahedron {
                    gluings: [None; 4],
                    eps: s * sign,
                });
            }
        }
        for k in 0..n {
            glue_pair(&mut tets, (3 * k, 2), (3 * k + 1, 2));
            glue_pair(&mut tets, (3 * k + 1, 1), (3 * k + 2, 1));
        }
        let mut sides: Vec<Vec<(usize, usize)>> = vec![Vec::new(); surface.edge_count()];
        for (k, tri) in surface.triangles().iter().enumerate() {
            for (p, &e) in tri.iter().enumerate() {
                sides[e].push((k, p));
            }
        }
        for s in &sides {
            let [(k1, p1), (k2, p2)] = [s[0], s[1]];
            let (lo1, up1) = SIDE_SLOTS[p1];
            let (lo2, up2) = SIDE_SLOTS[p2];
            glue_pair(&mut tets, (3 * k1 + lo1.0, lo1.1), (3 * k2 + lo2.0, lo2.1));
            glue_pair(&mut tets, (3 * k1 + up1.0, up1.1), (3 * k2 + up2.0, up2.1));
        }
        tets
    }

    /// Parses `sphere3`, `torus3`, `sigma-s1:<g>` or `cylinder:<surface>`.
    pub fn parse_builder(spec: &str) -> Option<Result<Self>> {
        let spec = spec.trim();
        match spec {
            "sphere3" => return Some(Ok(Self::sphere3())),
            "torus3" => return Some(Ok(Self::torus3())),
            _ => {}
        }
        if let Some(g) = spec.strip_prefix("sigma-s1:") {
            return Some(
                g.parse()
                    .map_err(|_| Error::InvalidParameter(format!("bad genus `{g}`")))
                    .and_then(Self::sigma_cross_s1),
            );
        }
        if let Some(s) = spec.strip_prefix("cylinder:") {
            return Some(SurfaceTriangulation::parse_spec(s).and_then(|s| Self::cylinder(&s)));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::PAIRS;

    fn edge_links_close(t: &GeneralizedTriangulation) -> bool {
        // walk around every edge slot through the two faces containing it
        let a = t.analysis().unwrap();
        let mut visited = vec![[false; 6]; t.tet_count()];
        for start_t in 0..t.tet_count() {
            for p in 0..6 {
                if visited[start_t][p] {
                    continue;
                }
                let (i, j) = PAIRS[p];
                let others: Vec<u8> = (0..4).filter(|&c| c != i && c != j).collect();
                let (mut tt, mut ci, mut cj, mut via) = (start_t, i, j, others[0]);
                loop {
                    visited[tt][super::super::pair_index(ci, cj)] = true;
                    let Some(g) = t.gluing(tt, via) else { return false };
                    let (ni, nj) = (g.perm[ci as usize], g.perm[cj as usize]);
                    let entered = g.face;
                    let next_via = (0..4).find(|&c| c != ni && c != nj && c != entered).unwrap();
                    assert_eq!(
                        a.edge_of_slot[g.tet][super::super::pair_index(ni, nj)],
                        a.edge_of_slot[start_t][p]
                    );
                    tt = g.tet;
                    ci = ni;
                    cj = nj;
                    via = next_via;
                    if tt == start_t && super::super::pair_index(ci, cj) == p && via == others[0] {
                        break;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn sphere3_shape() {
        let s = GeneralizedTriangulation::sphere3();
        assert!(s.validate().passed());
        assert_eq!(s.tet_count(), 5);
        assert_eq!(s.n0().unwrap(), 5);
        assert_eq!(s.edge_count().unwrap(), 10);
        assert_eq!(s.face_count().unwrap(), 10);
        assert_eq!(s.euler_characteristic().unwrap(), 0);
        assert!(edge_links_close(&s));
    }

    #[test]
    fn torus3_shape() {
        let t = GeneralizedTriangulation::torus3();
        assert!(t.validate().passed());
        assert_eq!(t.tet_count(), 6);
        assert_eq!(t.n0().unwrap(), 1);
        assert_eq!(t.edge_count().unwrap(), 7);
        assert_eq!(t.euler_characteristic().unwrap(), 0);
        assert!(edge_links_close(&t));
        let signs: Vec<i8> = t.tets().iter().map(|x| x.eps).collect();
        assert_eq!(signs.iter().filter(|&&e| e == 1).count(), 3);
    }

    #[test]
    fn sigma_cross_s1_shape() {
        for g in 1..=3 {
            let m = GeneralizedTriangulation::sigma_cross_s1(g).unwrap();
            assert_eq!(m.tet_count(), 3 * (4 * g - 2));
            assert_eq!(m.n0().unwrap(), 1);
            assert_eq!(m.euler_characteristic().unwrap(), 0);
            assert!(edge_links_close(&m));
        }
        assert_eq!(GeneralizedTriangulation::sigma_cross_s1(2).unwrap().edge_count().unwrap(), 19);
    }

    #[test]
    fn cylinders() {
        for s in [
            SurfaceTriangulation::torus(),
            SurfaceTriangulation::sphere2(),
            SurfaceTriangulation::sigma(2).unwrap(),
            SurfaceTriangulation::torus().barycentric_subdivision(),
        ] {
            let c = GeneralizedTriangulation::cylinder(&s).unwrap();
            assert_eq!(c.tet_count(), 3 * s.triangle_count());
            assert_eq!(c.n0().unwrap(), 2 * s.vertex_count());
            let bottom = c.boundary_surface(Side::In).unwrap();
            let top = c.boundary_surface(Side::Out).unwrap();
            assert_eq!(bottom.surface, s);
            assert_eq!(top.surface, s);
            let labels: std::collections::BTreeSet<_> =
                c.boundary_marks().values().map(|m| m.label.clone()).collect();
            assert_eq!(labels.len(), 2);
        }
    }

    #[test]
    fn gluing_cylinders() {
        let s = SurfaceTriangulation::torus();
        let c = GeneralizedTriangulation::cylinder(&s).unwrap();
        let cc = c.glue(&c).unwrap();
        assert_eq!(cc.tet_count(), 12);
        assert_eq!(cc.n0().unwrap(), 3);
        assert_eq!(cc.boundary_surface(Side::In).unwrap().surface, s);
        let other = GeneralizedTriangulation::cylinder(&SurfaceTriangulation::sphere2()).unwrap();
        assert!(matches!(c.glue(&other), Err(Error::InvalidComposition(_))));
    }

    #[test]
    fn rejects_bad_simplicial_input() {
        assert!(GeneralizedTriangulation::from_ordered_simplices(&[[0, 1, 2, 3]]).is_err());
        assert!(GeneralizedTriangulation::from_ordered_simplices(&[[0, 1, 1, 3]]).is_err());
    }

    #[test]
    fn builder_specs() {
        assert!(GeneralizedTriangulation::parse_builder("sphere3").is_some());
        assert!(GeneralizedTriangulation::parse_builder("cylinder:sigma:2").unwrap().is_ok());
        assert!(GeneralizedTriangulation::parse_builder("sigma-s1:x").unwrap().is_err());
        assert!(GeneralizedTriangulation::parse_builder("nope").is_none());
    }
}
