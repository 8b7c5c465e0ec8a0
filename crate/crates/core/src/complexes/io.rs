//! Text format for triangulations.
//!
//! ```text
//! format dwtv-tri 1
//! tets <N>
//! eps <s_0> ... <s_{N-1}>
//! gluing <t> <f> <t'> <f'> <a> <b> <c>
//! branch <edge-class-id> <t> <i> <j>
//! boundary <label> <in|out> <t> <f>
//! ```
//!
//! `a b c` are the corners of `t'` matched with the corners of face `f` of
//! `t` taken in increasing order. A `branch` line fixes the direction of an
//! edge class as corner `i` → corner `j` of tetrahedron `t`. `eps` is the
//! orientation sign of each tetrahedron's branching order. Corner labels in
//! a file may be arbitrary; on reading, every tetrahedron is relabelled so
//! that its corners follow the branching.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use super::{
    face_corners, invert4, pair_index, BoundaryMark, FaceGluing, GeneralizedTriangulation, Side,
    Tetrahedron, PAIRS,
};
use crate::error::{parse_err, Error, Result};

/// Union-find that also tracks whether two corner-pair slots are identified
/// with matching (`0`) or opposite (`1`) directions.
struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        if self.parent[x] == x {
            return (x, 0);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] ^= p;
        (root, self.parity[x])
    }

    /// Returns false if the identification contradicts an earlier one.
    fn union(&mut self, a: usize, b: usize, rel: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        self.parity[hi] = pa ^ pb ^ rel;
        true
    }
}

impl GeneralizedTriangulation {
    /// Renders the canonical text form.
    pub fn to_text(&self) -> Result<String> {
        let a = self.analysis()?;
        let mut s = String::from("format dwtv-tri 1\n");
        let _ = writeln!(s, "tets {}", self.tets.len());
        let eps: Vec<String> = self.tets.iter().map(|t| t.eps.to_string()).collect();
        let _ = writeln!(s, "eps {}", eps.join(" "));
        for (t, tet) in self.tets.iter().enumerate() {
            for f in 0..4u8 {
                if let Some(g) = tet.gluings[f as usize] {
                    if (t, f) <= (g.tet, g.face) {
                        let [x, y, z] = face_corners(f).map(|c| g.perm[c as usize]);
                        let _ = writeln!(s, "gluing {t} {f} {} {} {x} {y} {z}", g.tet, g.face);
                    }
                }
            }
        }
        for (id, e) in a.edges.iter().enumerate() {
            let _ = writeln!(s, "branch {id} {} {} {}", e.rep.0, e.rep.1, e.rep.2);
        }
        for (&(t, f), m) in &self.boundary {
            let _ = writeln!(s, "boundary {} {} {t} {f}", m.label, m.side);
        }
        Ok(s)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text()?)?;
        Ok(())
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Parses the text form. Structural problems that the format can carry
    /// (self-glued faces, orientation clashes, unmarked faces) are left for
    /// [`Self::validate`]; branching information must be complete and
    /// acyclic for parsing to succeed.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut eps: Option<Vec<i8>> = None;
        let mut gluings: Vec<(usize, usize, u8, usize, u8, [u8; 3])> = Vec::new();
        let mut branches: Vec<(usize, usize, usize, u8, u8)> = Vec::new();
        let mut marks: Vec<(usize, String, Side, usize, u8)> = Vec::new();
        let mut seen_format = false;
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let num = |k: usize| -> Result<usize> {
                toks.get(k)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(ln, format!("expected an integer in position {k}")))
            };
            let small = |k: usize| -> Result<u8> {
                let v = num(k)?;
                if v > 3 {
                    return Err(parse_err(ln, format!("corner or face index {v} out of range")));
                }
                Ok(v as u8)
            };
            match toks[0] {
                "format" => {
                    if toks.get(1) != Some(&"dwtv-tri") || toks.get(2) != Some(&"1") {
                        return Err(parse_err(ln, "unsupported format header"));
                    }
                    seen_format = true;
                }
                "tets" => n = Some(num(1)?),
                "eps" => {
                    let v = toks[1..]
                        .iter()
                        .map(|t| match *t {
                            "1" | "+1" => Ok(1),
                            "-1" => Ok(-1),
                            _ => Err(parse_err(ln, format!("eps must be +1 or -1, got `{t}`"))),
                        })
                        .collect::<Result<Vec<i8>>>()?;
                    eps = Some(v);
                }
                "gluing" => {
                    if toks.len() != 8 {
                        return Err(parse_err(ln, "gluing needs 7 integers"));
                    }
                    gluings.push((ln, num(1)?, small(2)?, num(3)?, small(4)?, [small(5)?, small(6)?, small(7)?]));
                }
                "branch" => {
                    if toks.len() != 5 {
                        return Err(parse_err(ln, "branch needs 4 integers"));
                    }
                    branches.push((ln, num(1)?, num(2)?, small(3)?, small(4)?));
                }
                "boundary" => {
                    if toks.len() != 5 {
                        return Err(parse_err(ln, "boundary needs <label> <in|out> <t> <f>"));
                    }
                    let side = match toks[2] {
                        "in" => Side::In,
                        "out" => Side::Out,
                        s => return Err(parse_err(ln, format!("side must be in or out, got `{s}`"))),
                    };
                    marks.push((ln, toks[1].to_string(), side, num(3)?, small(4)?));
                }
                other => return Err(parse_err(ln, format!("unknown keyword `{other}`"))),
            }
        }
        if !seen_format {
            return Err(parse_err(1, "missing `format dwtv-tri 1` header"));
        }
        let n = n.ok_or_else(|| parse_err(1, "missing `tets <N>`"))?;
        if n == 0 {
            return Err(parse_err(1, "a complex needs at least one tetrahedron"));
        }
        let eps = eps.ok_or_else(|| parse_err(1, "missing `eps` line"))?;
        if eps.len() != n {
            return Err(parse_err(1, format!("eps lists {} signs for {n} tetrahedra", eps.len())));
        }

        let mut glue: Vec<[Option<FaceGluing>; 4]> = vec![[None; 4]; n];
        for &(ln, t, f, t2, f2, img) in &gluings {
            if t >= n || t2 >= n {
                return Err(parse_err(ln, "tetrahedron index out of range"));
            }
            let mut perm = [0u8; 4];
            perm[f as usize] = f2;
            for (c, x) in face_corners(f).into_iter().zip(img) {
                perm[c as usize] = x;
            }
            let mut sorted = perm;
            sorted.sort_unstable();
            if sorted != [0, 1, 2, 3] {
                return Err(parse_err(ln, "face corners must map bijectively onto the partner face"));
            }
            let here = FaceGluing { tet: t2, face: f2, perm };
            let back = FaceGluing { tet: t, face: f, perm: invert4(perm) };
            for ((tt, ff), g) in [((t, f), here), ((t2, f2), back)] {
                match glue[tt][ff as usize] {
                    Some(old) if old != g => {
                        return Err(parse_err(ln, format!("face ({tt}, {ff}) is glued twice")))
                    }
                    _ => glue[tt][ff as usize] = Some(g),
                }
            }
        }

        // orient edge slots relative to their class
        let mut uf = ParityUnionFind::new(6 * n);
        for (t, gl) in glue.iter().enumerate() {
            for f in 0..4u8 {
                let Some(g) = gl[f as usize] else { continue };
                let c = face_corners(f);
                for (i, j) in [(0, 1), (1, 2), (0, 2)] {
                    let (x, y) = (c[i], c[j]);
                    let (px, py) = (g.perm[x as usize], g.perm[y as usize]);
                    let rel = u8::from(px > py);
                    if !uf.union(6 * t + pair_index(x, y), 6 * g.tet + pair_index(px, py), rel) {
                        return Err(Error::InvalidComplex(format!(
                            "an edge of tet {t} is identified with itself reversed"
                        )));
                    }
                }
            }
        }
        let mut class_id: HashMap<usize, usize> = HashMap::new();
        for slot in 0..6 * n {
            let root = uf.find(slot).0;
            let next = class_id.len();
            class_id.entry(root).or_insert(next);
        }
        // direction of each class root: 0 = along the root slot's low→high
        let mut root_dir: HashMap<usize, u8> = HashMap::new();
        for &(ln, id, t, i, j) in &branches {
            if t >= n || i == j {
                return Err(parse_err(ln, "bad branch slot"));
            }
            let (root, p) = uf.find(6 * t + pair_index(i, j));
            if class_id[&root] != id {
                return Err(parse_err(
                    ln,
                    format!("corners {i},{j} of tet {t} belong to edge class {}, not {id}", class_id[&root]),
                ));
            }
            let d = u8::from(i > j) ^ p;
            if root_dir.insert(root, d).is_some_and(|old| old != d) {
                return Err(parse_err(ln, format!("conflicting directions for edge class {id}")));
            }
        }
        let mut order = Vec::with_capacity(n);
        for t in 0..n {
            let mut dirs = [[false; 4]; 4];
            for &(i, j) in &PAIRS {
                let (root, p) = uf.find(6 * t + pair_index(i, j));
                let d = *root_dir.get(&root).ok_or_else(|| {
                    Error::InvalidComplex(format!("edge class {} has no branch line", class_id[&root]))
                })?;
                let forward = d ^ p == 0;
                dirs[i as usize][j as usize] = forward;
                dirs[j as usize][i as usize] = !forward;
            }
            let out: Vec<usize> = (0..4).map(|c| dirs[c].iter().filter(|&&x| x).count()).collect();
            let mut o = [0u8, 1, 2, 3];
            o.sort_by_key(|&c| std::cmp::Reverse(out[c as usize]));
            if (0..4).any(|k| out[o[k] as usize] != 3 - k) {
                return Err(Error::InvalidComplex(format!("branching of tet {t} is cyclic")));
            }
            order.push(o);
        }

        let mut boundary = BTreeMap::new();
        for (ln, label, side, t, f) in marks {
            if t >= n {
                return Err(parse_err(ln, "tetrahedron index out of range"));
            }
            if boundary.insert((t, f), BoundaryMark { label, side }).is_some() {
                return Err(parse_err(ln, format!("face ({t}, {f}) is marked twice")));
            }
        }
        let tets = glue
            .into_iter()
            .map(|gluings| Tetrahedron { gluings, eps: 1 })
            .collect();
        let raw = GeneralizedTriangulation::from_parts(tets, boundary);
        let mut result = raw.reorder_corners(&order);
        for (tet, e) in result.tets.iter_mut().zip(eps) {
            tet.eps = e;
        }
        Ok(result)
    }

    /// Resolves a builder name or, failing that, a file path.
    pub fn from_spec(spec: &str) -> Result<Self> {
        match Self::parse_builder(spec) {
            Some(r) => r,
            None if Path::new(spec).exists() => Self::read(spec),
            None => Err(Error::InvalidParameter(format!(
                "unknown complex `{spec}` (expected sphere3, torus3, sigma-s1:<g>, cylinder:<surface>, or a file path)"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::SurfaceTriangulation;

    #[test]
    fn round_trips() {
        let complexes = [
            GeneralizedTriangulation::sphere3(),
            GeneralizedTriangulation::torus3(),
            GeneralizedTriangulation::sigma_cross_s1(2).unwrap(),
            GeneralizedTriangulation::cylinder(&SurfaceTriangulation::torus()).unwrap(),
            GeneralizedTriangulation::torus3().pachner_14(2).unwrap(),
        ];
        for c in complexes {
            let text = c.to_text().unwrap();
            let back = GeneralizedTriangulation::parse(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(back.to_text().unwrap(), text);
        }
    }

    #[test]
    fn relabelled_corners_are_normalized() {
        // a single tetrahedron listed with corners in reverse branching order
        let text = "format dwtv-tri 1\ntets 1\neps 1\n\
            branch 0 0 1 0\nbranch 1 0 2 0\nbranch 2 0 3 0\nbranch 3 0 2 1\nbranch 4 0 3 1\nbranch 5 0 3 2\n\
            boundary s out 0 0\nboundary s out 0 1\nboundary s out 0 2\nboundary s out 0 3\n";
        let t = GeneralizedTriangulation::parse(text).unwrap();
        assert!(t.validate().passed());
        let marks: Vec<(usize, u8)> = t.boundary_marks().keys().copied().collect();
        assert_eq!(marks, vec![(0, 0), (0, 1), (0, 2), (0, 3)]);
        assert_eq!(t.eps(0), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            GeneralizedTriangulation::parse("tets 1\n"),
            Err(Error::Parse { .. })
        ));
        let cyclic = "format dwtv-tri 1\ntets 1\neps 1\n\
            branch 0 0 0 1\nbranch 1 0 2 0\nbranch 2 0 0 3\nbranch 3 0 1 2\nbranch 4 0 1 3\nbranch 5 0 2 3\n";
        assert!(GeneralizedTriangulation::parse(cyclic).is_err());
        let missing = "format dwtv-tri 1\ntets 1\neps 1\nbranch 0 0 0 1\n";
        assert!(GeneralizedTriangulation::parse(missing).is_err());
        let mut text = GeneralizedTriangulation::sphere3().to_text().unwrap();
        text.push_str("bogus 1\n");
        assert!(matches!(
            GeneralizedTriangulation::parse(&text),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn self_glued_face_reaches_validation() {
        let text = "format dwtv-tri 1\ntets 1\neps 1\ngluing 0 0 0 0 1 2 3\n\
            branch 0 0 0 1\nbranch 1 0 0 2\nbranch 2 0 0 3\nbranch 3 0 1 2\nbranch 4 0 1 3\nbranch 5 0 2 3\n\
            boundary s in 0 1\nboundary s in 0 2\nboundary s in 0 3\n";
        let t = GeneralizedTriangulation::parse(text).unwrap();
        assert!(t
            .validate()
            .violations
            .contains(&crate::complexes::Violation::FixedFace { tet: 0, face: 0 }));
    }
}
