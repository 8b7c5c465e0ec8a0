//! Forward Pachner moves and branching changes.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{face_corners, perm_sign, FaceGluing, GeneralizedTriangulation, Tetrahedron, PAIRS};
use crate::error::{Error, Result};

/// A move applied to a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveKind {
    Pachner14 { tet: usize },
    Pachner23 { tet: usize, face: u8 },
    /// New global rank of every vertex class.
    RelabelVertices(Vec<usize>),
    /// Edge classes whose direction is flipped.
    ReverseEdges(Vec<usize>),
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveKind::Pachner14 { tet } => write!(f, "1-4 on tet {tet}"),
            MoveKind::Pachner23 { tet, face } => write!(f, "2-3 on face ({tet}, {face})"),
            MoveKind::RelabelVertices(r) => write!(f, "relabel vertices {r:?}"),
            MoveKind::ReverseEdges(e) => write!(f, "reverse edges {e:?}"),
        }
    }
}

struct NewTet {
    /// Symbols in branching order.
    syms: [u8; 4],
    /// Index into the removed tetrahedra whose geometry this tet inherits.
    source: usize,
    replaced: u8,
    by: u8,
}

/// Replaces the `removed` tetrahedra (with corner symbols `syms`) by
/// `new_tets`. Faces are matched by symbol sets; a new face not shared by two
/// new tetrahedra inherits the gluing or boundary mark of the old face with
/// the same symbols.
fn retriangulate(
    t: &GeneralizedTriangulation,
    removed: &[usize],
    syms: &[[u8; 4]],
    new_tets: &[NewTet],
) -> Result<GeneralizedTriangulation> {
    let n_old = t.tets.len();
    let new_id = |k: usize| {
        if k < removed.len() {
            removed[k]
        } else {
            n_old + k - removed.len()
        }
    };
    let removed_index: HashMap<usize, usize> = removed.iter().enumerate().map(|(r, &id)| (id, r)).collect();
    let mut tets = t.tets.clone();
    tets.resize(
        n_old + new_tets.len() - removed.len(),
        Tetrahedron {
            gluings: [None; 4],
            eps: 1,
        },
    );
    let mut boundary = t.boundary.clone();
    for &id in removed {
        for f in 0..4 {
            boundary.remove(&(id, f));
        }
    }

    let face_key = |s: &[u8; 4], f: u8| {
        let mut k: Vec<u8> = face_corners(f).iter().map(|&c| s[c as usize]).collect();
        k.sort_unstable();
        k
    };
    let pos = |s: &[u8; 4], sym: u8| s.iter().position(|&x| x == sym).expect("symbol present") as u8;

    let mut new_faces: HashMap<Vec<u8>, Vec<(usize, u8)>> = HashMap::new();
    for (k, nt) in new_tets.iter().enumerate() {
        for f in 0..4u8 {
            new_faces.entry(face_key(&nt.syms, f)).or_default().push((k, f));
        }
    }
    let mut old_faces: HashMap<Vec<u8>, (usize, u8)> = HashMap::new();
    for (r, s) in syms.iter().enumerate() {
        for f in 0..4u8 {
            old_faces.insert(face_key(s, f), (r, f));
        }
    }

    for (k, nt) in new_tets.iter().enumerate() {
        let src = &syms[nt.source];
        let list: Vec<u8> = src.iter().map(|&s| if s == nt.replaced { nt.by } else { s }).collect();
        let q: Vec<u8> = list.iter().map(|&s| pos(&nt.syms, s)).collect();
        tets[new_id(k)].eps = t.tets[removed[nt.source]].eps * perm_sign(&q);
    }

    for (k, nt) in new_tets.iter().enumerate() {
        for f in 0..4u8 {
            let key = face_key(&nt.syms, f);
            let here = new_id(k);
            let shared: Vec<(usize, u8)> = new_faces[&key].iter().copied().filter(|&x| x != (k, f)).collect();
            if let Some(&(k2, f2)) = shared.first() {
                let other = &new_tets[k2].syms;
                let perm = std::array::from_fn(|c| if c as u8 == f { f2 } else { pos(other, nt.syms[c]) });
                tets[here].gluings[f as usize] = Some(FaceGluing {
                    tet: new_id(k2),
                    face: f2,
                    perm,
                });
                continue;
            }
            let &(r, fo) = old_faces
                .get(&key)
                .ok_or_else(|| Error::MoveRejected("new face matches no old face".into()))?;
            let old_id = removed[r];
            let old_corner = |c: usize| pos(&syms[r], nt.syms[c]);
            match t.tets[old_id].gluings[fo as usize] {
                None => {
                    let mark = t.boundary[&(old_id, fo)].clone();
                    boundary.insert((here, f), mark);
                }
                Some(g) => {
                    if let Some(&r2) = removed_index.get(&g.tet) {
                        let key2 = face_key(&syms[r2], g.face);
                        let &(k2, f2) = new_faces
                            .get(&key2)
                            .and_then(|v| v.first())
                            .ok_or_else(|| Error::MoveRejected("glued face vanished".into()))?;
                        let perm = std::array::from_fn(|c| {
                            if c as u8 == f {
                                f2
                            } else {
                                let pc = g.perm[old_corner(c) as usize];
                                pos(&new_tets[k2].syms, syms[r2][pc as usize])
                            }
                        });
                        tets[here].gluings[f as usize] = Some(FaceGluing {
                            tet: new_id(k2),
                            face: f2,
                            perm,
                        });
                    } else {
                        let perm: [u8; 4] = std::array::from_fn(|c| {
                            if c as u8 == f {
                                g.face
                            } else {
                                g.perm[old_corner(c) as usize]
                            }
                        });
                        tets[here].gluings[f as usize] = Some(FaceGluing {
                            tet: g.tet,
                            face: g.face,
                            perm,
                        });
                        tets[g.tet].gluings[g.face as usize] = Some(FaceGluing {
                            tet: here,
                            face: f,
                            perm: super::invert4(perm),
                        });
                    }
                }
            }
        }
    }
    let result = GeneralizedTriangulation::from_parts(tets, boundary);
    result
        .analysis()
        .map_err(|e| Error::MoveRejected(format!("result is not a valid complex: {e}")))?;
    Ok(result)
}

/// Sorts four symbols into a linear order given pairwise directions, or
/// `None` if the directions contain a cycle.
fn linear_order(syms: [u8; 4], dir: impl Fn(u8, u8) -> bool) -> Option<[u8; 4]> {
    let mut out = [0usize; 4];
    for i in 0..4 {
        for j in 0..4 {
            if i != j && dir(syms[i], syms[j]) {
                out[i] += 1;
            }
        }
    }
    let mut idx = [0usize, 1, 2, 3];
    idx.sort_by_key(|&i| std::cmp::Reverse(out[i]));
    if (0..4).all(|k| out[idx[k]] == 3 - k) {
        Some(idx.map(|i| syms[i]))
    } else {
        None
    }
}

impl GeneralizedTriangulation {
    /// 1-4 move: cone the four faces of `tet` to a new interior vertex,
    /// which is last in every new local order.
    pub fn pachner_14(&self, tet: usize) -> Result<Self> {
        self.analysis()?;
        if tet >= self.tets.len() {
            return Err(Error::MoveInapplicable(format!("no tet {tet}")));
        }
        let new_tets: Vec<NewTet> = (0..4u8)
            .map(|f| {
                let [a, b, c] = face_corners(f);
                NewTet {
                    syms: [a, b, c, 4],
                    source: 0,
                    replaced: f,
                    by: 4,
                }
            })
            .collect();
        retriangulate(self, &[tet], &[[0, 1, 2, 3]], &new_tets)
    }

    /// 2-3 move across face `face` of `tet`: the two tetrahedra sharing it
    /// become three around the edge joining their apexes. The new edge
    /// points from the apex of `tet` to the other apex if that keeps every
    /// new tetrahedron acyclic, otherwise the other way.
    pub fn pachner_23(&self, tet: usize, face: u8) -> Result<Self> {
        self.analysis()?;
        if tet >= self.tets.len() || face > 3 {
            return Err(Error::MoveInapplicable(format!("no face ({tet}, {face})")));
        }
        let g = self.tets[tet].gluings[face as usize]
            .ok_or_else(|| Error::MoveInapplicable(format!("face ({tet}, {face}) is a boundary face")))?;
        if g.tet == tet {
            return Err(Error::MoveInapplicable(format!(
                "face ({tet}, {face}) joins a tetrahedron to itself"
            )));
        }
        let a = face;
        const B: u8 = 4;
        let mut syms2 = [0u8; 4];
        for c in face_corners(face) {
            syms2[g.perm[c as usize] as usize] = c;
        }
        syms2[g.face as usize] = B;
        let rank2 = |s: u8| syms2.iter().position(|&x| x == s).unwrap();
        let fc = face_corners(face);
        for a_first in [true, false] {
            let dir = |x: u8, y: u8| -> bool {
                match (x, y) {
                    (x, y) if x == a && y == B => a_first,
                    (x, y) if x == B && y == a => !a_first,
                    (x, y) if x == B || y == B => rank2(x) < rank2(y),
                    (x, y) => x < y,
                }
            };
            let mut new_tets = Vec::new();
            for &z in &fc {
                let rest: Vec<u8> = fc.iter().copied().filter(|&x| x != z).collect();
                match linear_order([a, B, rest[0], rest[1]], dir) {
                    Some(syms) => new_tets.push(NewTet {
                        syms,
                        source: 0,
                        replaced: z,
                        by: B,
                    }),
                    None => break,
                }
            }
            if new_tets.len() == 3 {
                return retriangulate(self, &[tet, g.tet], &[[0, 1, 2, 3], syms2], &new_tets);
            }
        }
        Err(Error::MoveRejected(format!(
            "no direction of the new edge across face ({tet}, {face}) keeps the branching acyclic"
        )))
    }

    /// Re-branches by a global order of vertex classes: `rank[v]` is the new
    /// position of vertex class `v`. Needs distinct vertex classes in every
    /// tetrahedron.
    pub fn relabel_vertices(&self, rank: &[usize]) -> Result<Self> {
        let a = self.analysis()?;
        let mut seen = vec![false; rank.len()];
        if rank.len() != a.n_vertices || rank.iter().any(|&r| r >= rank.len() || std::mem::replace(&mut seen[r], true)) {
            return Err(Error::InvalidParameter(format!(
                "expected a permutation of {} vertex classes",
                a.n_vertices
            )));
        }
        let mut order = Vec::with_capacity(self.tets.len());
        for (t, corners) in a.vertex_of_corner.iter().enumerate() {
            let mut o = [0u8, 1, 2, 3];
            o.sort_by_key(|&c| rank[corners[c as usize]]);
            if (0..3).any(|i| corners[o[i] as usize] == corners[o[i + 1] as usize]) {
                return Err(Error::MoveInapplicable(format!(
                    "tet {t} has repeated vertex classes; use edge reversal instead"
                )));
            }
            order.push(o);
        }
        let result = self.reorder_corners(&order);
        result
            .analysis()
            .map_err(|e| Error::MoveRejected(e.to_string()))?;
        Ok(result)
    }

    /// Flips the direction of the given edge classes; rejected if some
    /// tetrahedron loses its linear order.
    pub fn reverse_edges(&self, edges: &[usize]) -> Result<Self> {
        let a = self.analysis()?;
        let mut flip = vec![false; a.edges.len()];
        for &e in edges {
            *flip.get_mut(e).ok_or_else(|| Error::InvalidParameter(format!("no edge class {e}")))? = true;
        }
        let mut order = Vec::with_capacity(self.tets.len());
        for t in 0..self.tets.len() {
            let dir = |x: u8, y: u8| {
                let p = super::pair_index(x, y);
                (x < y) != flip[a.edge_of_slot[t][p]]
            };
            let o = linear_order([0, 1, 2, 3], dir).ok_or_else(|| {
                Error::MoveRejected(format!("reversal makes the branching of tet {t} cyclic"))
            })?;
            order.push(o);
        }
        let result = self.reorder_corners(&order);
        result
            .analysis()
            .map_err(|e| Error::MoveRejected(e.to_string()))?;
        Ok(result)
    }

    pub fn apply_move(&self, m: &MoveKind) -> Result<Self> {
        match m {
            MoveKind::Pachner14 { tet } => self.pachner_14(*tet),
            MoveKind::Pachner23 { tet, face } => self.pachner_23(*tet, *face),
            MoveKind::RelabelVertices(r) => self.relabel_vertices(r),
            MoveKind::ReverseEdges(e) => self.reverse_edges(e),
        }
    }
}

/// Applies one random accepted move: a 1-4 move (only when `allow_14`), a
/// 2-3 move on a random interior face between distinct tetrahedra, or a
/// branching change (global vertex relabel when every tetrahedron has
/// distinct vertex classes, random edge reversal otherwise).
pub fn random_move(
    t: &GeneralizedTriangulation,
    rng: &mut impl Rng,
    allow_14: bool,
) -> Result<(MoveKind, GeneralizedTriangulation)> {
    let a = t.analysis()?;
    let kinds: &[u8] = if allow_14 { &[0, 1, 2] } else { &[1, 2] };
    let kind = *kinds.choose(rng).expect("nonempty");
    if kind == 0 {
        let tet = rng.gen_range(0..t.tet_count());
        let m = MoveKind::Pachner14 { tet };
        let next = t.apply_move(&m)?;
        return Ok((m, next));
    }
    if kind == 2 {
        let distinct = a
            .vertex_of_corner
            .iter()
            .all(|c| PAIRS.iter().all(|&(i, j)| c[i as usize] != c[j as usize]));
        for _ in 0..20 {
            let m = if distinct {
                let mut rank: Vec<usize> = (0..a.n_vertices).collect();
                rank.shuffle(rng);
                MoveKind::RelabelVertices(rank)
            } else {
                let edges: Vec<usize> = (0..a.edges.len()).filter(|_| rng.gen_bool(0.5)).collect();
                MoveKind::ReverseEdges(edges)
            };
            match t.apply_move(&m) {
                Ok(next) => return Ok((m, next)),
                Err(Error::MoveRejected(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    let mut faces: Vec<(usize, u8)> = (0..t.tet_count())
        .flat_map(|tet| (0..4u8).map(move |f| (tet, f)))
        .filter(|&(tet, f)| t.gluing(tet, f).is_some_and(|g| g.tet != tet && (tet, f) < (g.tet, g.face)))
        .collect();
    faces.shuffle(rng);
    for (tet, face) in faces {
        let m = MoveKind::Pachner23 { tet, face };
        match t.apply_move(&m) {
            Ok(next) => return Ok((m, next)),
            Err(Error::MoveRejected(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::MoveInapplicable("no 2-3 move is accepted on this complex".into()))
}
