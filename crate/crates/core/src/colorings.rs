//! Admissible colorings (flat `G`-connections) of a branched complex.
//!
//! A coloring assigns a group element to every edge class along its
//! branching direction; the opposite direction carries the inverse. It is
//! admissible when `γ(ab)·γ(bc) = γ(ac)` on every triangle `a < b < c`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::path::Path;

use crate::complexes::{GeneralizedTriangulation, TwoSkeleton};
use crate::error::{parse_err, Error, Result};
use crate::groups::{Element, FiniteGroup};

/// Edge-class values of an admissible coloring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring(pub Vec<Element>);

impl Coloring {
    pub fn values(&self) -> &[Element] {
        &self.0
    }

    pub fn get(&self, edge: usize) -> Element {
        self.0[edge]
    }

    /// The listing line `id:elem id:elem ...`.
    pub fn to_line(&self) -> String {
        let parts: Vec<String> = self.0.iter().enumerate().map(|(e, g)| format!("{e}:{g}")).collect();
        parts.join(" ")
    }

    /// Parses a listing line; every id in `0..n_edges` must occur once.
    pub fn parse_line(line: &str, n_edges: usize, group: &FiniteGroup) -> std::result::Result<Self, String> {
        let mut values = vec![None; n_edges];
        for tok in line.split_whitespace() {
            let (id, g) = tok
                .split_once(':')
                .ok_or_else(|| format!("expected `id:element`, got `{tok}`"))?;
            let id: usize = id.parse().map_err(|_| format!("bad edge id `{id}`"))?;
            let g: Element = g.parse().map_err(|_| format!("bad element `{g}`"))?;
            if id >= n_edges {
                return Err(format!("edge id {id} out of range (have {n_edges})"));
            }
            if g >= group.order() {
                return Err(format!("element {g} out of range for {group}"));
            }
            if values[id].replace(g).is_some() {
                return Err(format!("edge id {id} given twice"));
            }
        }
        values
            .into_iter()
            .enumerate()
            .map(|(e, v)| v.ok_or_else(|| format!("edge id {e} missing")))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Coloring)
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

/// Gauge field: one group element per vertex class.
pub type GaugeField = Vec<Element>;

/// True if `values` is flat on every triangle of `skel`.
pub fn is_admissible(skel: &TwoSkeleton, group: &FiniteGroup, values: &[Element]) -> bool {
    skel.triangles
        .iter()
        .all(|&[a, b, c]| group.mul(values[a], values[b]) == values[c])
}

/// Boundary data: per labelled boundary component, values on the edges of
/// that component's surface (numbered as in
/// [`GeneralizedTriangulation::boundary_component`]).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundaryColoring {
    pub components: BTreeMap<String, Vec<Element>>,
}

impl BoundaryColoring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, label: impl Into<String>, values: Vec<Element>) -> Self {
        self.components.insert(label.into(), values);
        self
    }

    /// The all-identity coloring of every boundary component of `t`.
    pub fn trivial(t: &GeneralizedTriangulation) -> Result<Self> {
        let mut out = Self::new();
        for label in t.boundary_labels() {
            let s = t.boundary_component(&label)?;
            out.components.insert(label, vec![0; s.surface.edge_count()]);
        }
        Ok(out)
    }

    /// Converts to pinned edge-class values of `t`. Every boundary component
    /// must be covered, each component must be flat, and components sharing
    /// an edge class must agree on it.
    pub fn pins(&self, t: &GeneralizedTriangulation, group: &FiniteGroup) -> Result<Vec<Option<Element>>> {
        let labels = t.boundary_labels();
        for label in self.components.keys() {
            if !labels.contains(label) {
                return Err(Error::InvalidBoundary(format!("complex has no boundary component `{label}`")));
            }
        }
        let mut pins = vec![None; t.edge_count()?];
        for label in labels {
            let values = self
                .components
                .get(&label)
                .ok_or_else(|| Error::InvalidBoundary(format!("no coloring given for component `{label}`")))?;
            let comp = t.boundary_component(&label)?;
            let skel = comp.surface.two_skeleton();
            if values.len() != skel.edges.len() {
                return Err(Error::InvalidBoundary(format!(
                    "component `{label}` has {} edges, coloring gives {}",
                    skel.edges.len(),
                    values.len()
                )));
            }
            if let Some(&g) = values.iter().find(|&&g| g >= group.order()) {
                return Err(Error::InvalidBoundary(format!("element {g} out of range for {group}")));
            }
            if let Some((k, _)) = skel
                .triangles
                .iter()
                .enumerate()
                .find(|(_, &[a, b, c])| group.mul(values[a], values[b]) != values[c])
            {
                return Err(Error::InvalidBoundary(format!(
                    "coloring of component `{label}` is not flat on triangle {k}"
                )));
            }
            for (local, &e) in comp.edge_map.iter().enumerate() {
                match pins[e] {
                    Some(old) if old != values[local] => {
                        return Err(Error::InvalidBoundary(format!(
                            "components disagree on edge class {e}"
                        )))
                    }
                    _ => pins[e] = Some(values[local]),
                }
            }
        }
        Ok(pins)
    }

    /// Lines `component <label>` followed by one coloring line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (label, values) in &self.components {
            s.push_str(&format!("component {label}\n{}\n", Coloring(values.clone()).to_line()));
        }
        s
    }

    /// Parses the text form against the component surfaces of `t`.
    pub fn parse(text: &str, t: &GeneralizedTriangulation, group: &FiniteGroup) -> Result<Self> {
        let mut out = Self::new();
        let mut current: Option<(String, usize)> = None;
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(label) = line.strip_prefix("component ") {
                let label = label.trim().to_string();
                let n = t
                    .boundary_component(&label)
                    .map_err(|e| parse_err(ln, e.to_string()))?
                    .surface
                    .edge_count();
                current = Some((label, n));
                continue;
            }
            let (label, n) = current
                .take()
                .ok_or_else(|| parse_err(ln, "coloring line before `component <label>`"))?;
            let c = Coloring::parse_line(line, n, group).map_err(|m| parse_err(ln, m))?;
            if out.components.insert(label.clone(), c.0).is_some() {
                return Err(parse_err(ln, format!("component `{label}` given twice")));
            }
        }
        if let Some((label, _)) = current {
            return Err(parse_err(text.lines().count(), format!("component `{label}` has no coloring line")));
        }
        Ok(out)
    }

    pub fn read(path: impl AsRef<Path>, t: &GeneralizedTriangulation, group: &FiniteGroup) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?, t, group)
    }
}

#[derive(Clone, Copy, Debug)]
enum Step {
    /// Branch over every group element.
    Free(usize),
    /// Determined by triangle `tri`, in which `edge` occurs exactly once.
    Forced { edge: usize, tri: usize },
    /// All edges of `tri` are known; verify flatness.
    Check(usize),
}

/// A static search order over the edge classes of a 2-complex.
#[derive(Clone, Debug)]
pub struct SearchPlan {
    steps: Vec<Step>,
    free: usize,
}

impl SearchPlan {
    /// Orders the edges so that each free choice is followed by every value
    /// it forces. Pinned edges are known from the start. Free edges are
    /// chosen to maximize the number of triangles they bring one step from
    /// closing, ties broken by lowest index.
    pub fn new(skel: &TwoSkeleton, pinned: &[bool]) -> Self {
        let n = skel.edges.len();
        let mut known = pinned.to_vec();
        let mut done = vec![false; skel.triangles.len()];
        let mut steps = Vec::new();
        let mut free = 0;
        let mut tris_of: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, tri) in skel.triangles.iter().enumerate() {
            for &e in tri {
                if !tris_of[e].contains(&k) {
                    tris_of[e].push(k);
                }
            }
        }
        let unknown_in = |known: &[bool], tri: &[usize; 3]| -> Vec<usize> {
            let mut u: Vec<usize> = tri.iter().copied().filter(|&e| !known[e]).collect();
            u.dedup();
            u
        };
        loop {
            // checks and forced values until nothing changes
            let mut progress = true;
            while progress {
                progress = false;
                for (k, tri) in skel.triangles.iter().enumerate() {
                    if done[k] {
                        continue;
                    }
                    let missing: Vec<usize> = tri.iter().copied().filter(|&e| !known[e]).collect();
                    match missing.as_slice() {
                        [] => {
                            steps.push(Step::Check(k));
                            done[k] = true;
                            progress = true;
                        }
                        [e] => {
                            steps.push(Step::Forced { edge: *e, tri: k });
                            known[*e] = true;
                            done[k] = true;
                            progress = true;
                        }
                        _ => {}
                    }
                }
            }
            let candidates = (0..n).filter(|&e| !known[e]);
            let best = candidates.max_by_key(|&e| {
                let closing = tris_of[e]
                    .iter()
                    .filter(|&&k| !done[k] && unknown_in(&known, &skel.triangles[k]) == [e])
                    .count();
                let near = tris_of[e]
                    .iter()
                    .filter(|&&k| !done[k] && unknown_in(&known, &skel.triangles[k]).len() == 2)
                    .count();
                (closing, near, std::cmp::Reverse(e))
            });
            match best {
                Some(e) => {
                    steps.push(Step::Free(e));
                    known[e] = true;
                    free += 1;
                }
                None => break,
            }
        }
        SearchPlan { steps, free }
    }

    /// Number of edges enumerated freely.
    pub fn free_edges(&self) -> usize {
        self.free
    }
}

/// Streams every admissible coloring of `skel` agreeing with `pins`, in
/// search order. The callback may stop the search by returning `false`.
pub fn for_each_coloring(
    skel: &TwoSkeleton,
    group: &FiniteGroup,
    pins: &[Option<Element>],
    mut visit: impl FnMut(&[Element]) -> bool,
) -> Result<()> {
    if pins.len() != skel.edges.len() {
        return Err(Error::InvalidParameter(format!(
            "{} pins for {} edges",
            pins.len(),
            skel.edges.len()
        )));
    }
    let pinned: Vec<bool> = pins.iter().map(Option::is_some).collect();
    let plan = SearchPlan::new(skel, &pinned);
    let mut values: Vec<Element> = pins.iter().map(|p| p.unwrap_or(0)).collect();
    search(&plan, skel, group, 0, &mut values, &mut visit);
    Ok(())
}

fn search(
    plan: &SearchPlan,
    skel: &TwoSkeleton,
    group: &FiniteGroup,
    depth: usize,
    values: &mut [Element],
    visit: &mut impl FnMut(&[Element]) -> bool,
) -> bool {
    let Some(&step) = plan.steps.get(depth) else {
        return visit(values);
    };
    match step {
        Step::Free(e) => {
            for g in group.elements() {
                values[e] = g;
                if !search(plan, skel, group, depth + 1, values, visit) {
                    return false;
                }
            }
            true
        }
        Step::Forced { edge, tri } => {
            let [a, b, c] = skel.triangles[tri];
            values[edge] = if edge == c {
                group.mul(values[a], values[b])
            } else if edge == b {
                group.mul(group.inv(values[a]), values[c])
            } else {
                group.mul(values[c], group.inv(values[b]))
            };
            search(plan, skel, group, depth + 1, values, visit)
        }
        Step::Check(tri) => {
            let [a, b, c] = skel.triangles[tri];
            if group.mul(values[a], values[b]) != values[c] {
                return true;
            }
            search(plan, skel, group, depth + 1, values, visit)
        }
    }
}

/// All admissible colorings agreeing with `pins`, sorted lexicographically
/// by edge-class values.
pub fn enumerate_pinned(skel: &TwoSkeleton, group: &FiniteGroup, pins: &[Option<Element>]) -> Result<Vec<Coloring>> {
    let mut out = Vec::new();
    for_each_coloring(skel, group, pins, |v| {
        out.push(Coloring(v.to_vec()));
        true
    })?;
    out.sort_unstable();
    Ok(out)
}

/// Number of admissible colorings agreeing with `pins`.
pub fn count_pinned(skel: &TwoSkeleton, group: &FiniteGroup, pins: &[Option<Element>]) -> Result<u64> {
    let mut n = 0u64;
    for_each_coloring(skel, group, pins, |_| {
        n += 1;
        true
    })?;
    Ok(n)
}

/// `Col(M, τ)`: admissible colorings of `t` extending `boundary`, sorted.
/// With no boundary coloring every edge class is free.
pub fn enumerate(
    t: &GeneralizedTriangulation,
    group: &FiniteGroup,
    boundary: Option<&BoundaryColoring>,
) -> Result<Vec<Coloring>> {
    let skel = t.two_skeleton()?;
    let pins = match boundary {
        Some(b) => b.pins(t, group)?,
        None => vec![None; skel.edges.len()],
    };
    enumerate_pinned(&skel, group, &pins)
}

/// `γ^δ`: the edge from `u` to `v` becomes `δ(u)·γ·δ(v)⁻¹`.
pub fn gauge_act(skel: &TwoSkeleton, group: &FiniteGroup, gamma: &Coloring, delta: &[Element]) -> Coloring {
    Coloring(
        skel.edges
            .iter()
            .zip(&gamma.0)
            .map(|(&(u, v), &g)| group.mul(group.mul(delta[u], g), group.inv(delta[v])))
            .collect(),
    )
}

/// A gauge orbit with its lexicographically smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub representative: Coloring,
    pub size: usize,
}

/// Gauge orbits of the admissible colorings of a closed complex, ordered by
/// representative.
pub fn orbits(t: &GeneralizedTriangulation, group: &FiniteGroup) -> Result<Vec<Orbit>> {
    if !t.is_closed() {
        return Err(Error::Unsupported(
            "gauge orbits are only computed for closed complexes".into(),
        ));
    }
    orbits_of(&t.two_skeleton()?, group)
}

/// Gauge orbits of all admissible colorings of a 2-complex.
pub fn orbits_of(skel: &TwoSkeleton, group: &FiniteGroup) -> Result<Vec<Orbit>> {
    let all = enumerate_pinned(skel, group, &vec![None; skel.edges.len()])?;
    let index: HashMap<&Coloring, usize> = all.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut seen = vec![false; all.len()];
    let mut out = Vec::new();
    let mut delta = vec![group.identity(); skel.n_vertices];
    for start in 0..all.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut size = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            size += 1;
            for v in 0..skel.n_vertices {
                for g in group.elements().skip(1) {
                    delta[v] = g;
                    let next = gauge_act(skel, group, &all[i], &delta);
                    let j = *index.get(&next).ok_or_else(|| {
                        Error::InvalidComplex("gauge action left the set of admissible colorings".into())
                    })?;
                    if !seen[j] {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
                delta[v] = group.identity();
            }
        }
        out.push(Orbit {
            representative: all[start].clone(),
            size,
        });
    }
    Ok(out)
}

/// Word in the generators of a presentation: `(generator, inverted)`.
type Word = Vec<(usize, bool)>;

fn free_reduce(word: Word) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for letter in word {
        match out.last() {
            Some(&(g, inv)) if g == letter.0 && inv != letter.1 => {
                out.pop();
            }
            _ => out.push(letter),
        }
    }
    out
}

fn invert_word(word: &[(usize, bool)]) -> Word {
    word.iter().rev().map(|&(g, inv)| (g, !inv)).collect()
}

/// A finite presentation of the fundamental group of a connected 2-complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Generators are the edges outside a breadth-first spanning tree;
    /// each triangle `[e01, e12, e02]` gives the relator `e01·e12·e02⁻¹`.
    pub fn of(skel: &TwoSkeleton) -> Result<Self> {
        let n = skel.n_vertices;
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, &(u, v)) in skel.edges.iter().enumerate() {
            adj[u].push((e, v));
            adj[v].push((e, u));
        }
        let mut reached = vec![false; n];
        let mut tree = vec![false; skel.edges.len()];
        if n > 0 {
            reached[0] = true;
            let mut queue = VecDeque::from([0]);
            while let Some(u) = queue.pop_front() {
                for &(e, v) in &adj[u] {
                    if !reached[v] {
                        reached[v] = true;
                        tree[e] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(Error::Unsupported("complex is not connected".into()));
        }
        let mut gen_of = vec![usize::MAX; skel.edges.len()];
        let mut generators = 0;
        for e in 0..skel.edges.len() {
            if !tree[e] {
                gen_of[e] = generators;
                generators += 1;
            }
        }
        let relators = skel
            .triangles
            .iter()
            .map(|&[a, b, c]| {
                let word = [(a, false), (b, false), (c, true)]
                    .into_iter()
                    .filter(|&(e, _)| !tree[e])
                    .map(|(e, inv)| (gen_of[e], inv))
                    .collect();
                free_reduce(word)
            })
            .filter(|w: &Word| !w.is_empty())
            .collect();
        Ok(Presentation { generators, relators })
    }

    /// Removes generators that occur exactly once in some relator by
    /// solving for them. Returns the simplified presentation over the
    /// surviving generators, renumbered in increasing order.
    pub fn simplify(&self) -> Presentation {
        let mut relators = self.relators.clone();
        let mut alive = vec![true; self.generators];
        loop {
            let mut found = None;
            'outer: for (r, word) in relators.iter().enumerate() {
                for &(g, _) in word {
                    if word.iter().filter(|&&(h, _)| h == g).count() == 1 {
                        found = Some((r, g));
                        break 'outer;
                    }
                }
            }
            let Some((r, g)) = found else { break };
            let word = relators.remove(r);
            let pos = word.iter().position(|&(h, _)| h == g).expect("letter present");
            // u g^s v = 1  ⇒  g^s = u⁻¹ v⁻¹
            let mut value: Word = invert_word(&word[..pos]);
            value.extend(invert_word(&word[pos + 1..]));
            if word[pos].1 {
                value = invert_word(&value);
            }
            let value = free_reduce(value);
            let value_inv = invert_word(&value);
            relators = relators
                .into_iter()
                .map(|w| {
                    let mut out = Vec::with_capacity(w.len());
                    for (h, inv) in w {
                        if h == g {
                            out.extend_from_slice(if inv { &value_inv } else { &value });
                        } else {
                            out.push((h, inv));
                        }
                    }
                    free_reduce(out)
                })
                .filter(|w| !w.is_empty())
                .collect();
            alive[g] = false;
        }
        let mut renumber = vec![usize::MAX; self.generators];
        let mut generators = 0;
        for g in 0..self.generators {
            if alive[g] {
                renumber[g] = generators;
                generators += 1;
            }
        }
        let mut relators: Vec<Word> = relators
            .into_iter()
            .map(|w| w.into_iter().map(|(g, inv)| (renumber[g], inv)).collect())
            .collect();
        relators.sort();
        relators.dedup();
        Presentation { generators, relators }
    }

    fn evaluate(&self, group: &FiniteGroup, word: &[(usize, bool)], images: &[Element]) -> Element {
        word.iter().fold(group.identity(), |acc, &(g, inv)| {
            let x = images[g];
            group.mul(acc, if inv { group.inv(x) } else { x })
        })
    }

    /// All homomorphisms to `group`, as generator images.
    pub fn homomorphisms(&self, group: &FiniteGroup, limit: u64) -> Result<Vec<Vec<Element>>> {
        let total = (group.order() as u64).checked_pow(self.generators as u32);
        if total.is_none_or(|t| t > limit) {
            return Err(Error::SizeLimit(format!(
                "{}^{} generator assignments exceed the limit {limit}",
                group.order(),
                self.generators
            )));
        }
        let mut out = Vec::new();
        let mut images = vec![0; self.generators];
        loop {
            if self
                .relators
                .iter()
                .all(|r| self.evaluate(group, r, &images) == group.identity())
            {
                out.push(images.clone());
            }
            let mut k = 0;
            loop {
                if k == images.len() {
                    return Ok(out);
                }
                images[k] += 1;
                if images[k] < group.order() {
                    break;
                }
                images[k] = 0;
                k += 1;
            }
        }
    }
}

/// Largest brute-force search the hom-count oracle will attempt.
pub const HOM_SEARCH_LIMIT: u64 = 100_000_000;

/// `#Hom(π₁, G)/conj` for a connected 2-complex, from a presentation.
pub fn hom_count_of(skel: &TwoSkeleton, group: &FiniteGroup) -> Result<usize> {
    let p = Presentation::of(skel)?.simplify();
    let homs = p.homomorphisms(group, HOM_SEARCH_LIMIT)?;
    let classes: HashSet<Vec<Element>> = homs.iter().map(|h| group.canonical_conjugate(h)).collect();
    Ok(classes.len())
}

/// `#Hom(π₁(M), G)/conj` for a connected closed complex. Independent of the
/// coloring search.
pub fn hom_count_mod_conj(t: &GeneralizedTriangulation, group: &FiniteGroup) -> Result<usize> {
    if !t.is_closed() {
        return Err(Error::Unsupported("hom count is computed for closed complexes".into()));
    }
    hom_count_of(&t.two_skeleton()?, group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::SurfaceTriangulation;

    fn brute_force(skel: &TwoSkeleton, group: &FiniteGroup) -> u64 {
        let n = skel.edges.len();
        let mut v = vec![0; n];
        let mut count = 0;
        loop {
            if is_admissible(skel, group, &v) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return count;
                }
                v[k] += 1;
                if v[k] < group.order() {
                    break;
                }
                v[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn torus3_counts() {
        let t = GeneralizedTriangulation::torus3();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let cols = enumerate(&t, &z2, None).unwrap();
        assert_eq!(cols.len(), 8);
        assert!(cols.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(brute_force(&t.two_skeleton().unwrap(), &z2), 8);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(enumerate(&t, &s3, None).unwrap().len(), 48);
    }

    #[test]
    fn sphere3_counts() {
        let t = GeneralizedTriangulation::sphere3();
        let skel = t.two_skeleton().unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(count_pinned(&skel, &z2, &[None; 10]).unwrap(), 16);
        assert_eq!(brute_force(&skel, &z2), 16);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(count_pinned(&skel, &s3, &[None; 10]).unwrap(), 6u64.pow(4));
    }

    #[test]
    fn search_plan_is_mostly_forced() {
        let t = GeneralizedTriangulation::sigma_cross_s1(2).unwrap();
        let skel = t.two_skeleton().unwrap();
        let plan = SearchPlan::new(&skel, &vec![false; skel.edges.len()]);
        // one vertex: free edges bounded by the generators of the presentation
        assert!(plan.free_edges() <= 5 + 1, "{}", plan.free_edges());
    }

    #[test]
    fn gauge_examples() {
        let t = GeneralizedTriangulation::torus3();
        let skel = t.two_skeleton().unwrap();
        let z3 = FiniteGroup::cyclic(3).unwrap();
        for c in enumerate(&t, &z3, None).unwrap() {
            assert_eq!(gauge_act(&skel, &z3, &c, &[0]), c);
            assert_eq!(gauge_act(&skel, &z3, &c, &[2]), c);
        }
        let s = GeneralizedTriangulation::sphere3();
        let skel = s.two_skeleton().unwrap();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let cols = enumerate(&s, &s3, None).unwrap();
        let d1 = [1, 2, 3, 4, 5];
        let d2 = [5, 0, 2, 1, 3];
        for c in cols.iter().step_by(37) {
            let once = gauge_act(&skel, &s3, &gauge_act(&skel, &s3, c, &d1), &d2);
            let combined: Vec<_> = (0..5).map(|v| s3.mul(d2[v], d1[v])).collect();
            assert_eq!(once, gauge_act(&skel, &s3, c, &combined));
            assert!(is_admissible(&skel, &s3, &once.0));
        }
    }

    #[test]
    fn orbit_examples() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let sphere = GeneralizedTriangulation::sphere3();
        let o = orbits(&sphere, &z2).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].size, 16);
        assert_eq!(o[0].representative, Coloring(vec![0; 10]));
        let torus = GeneralizedTriangulation::torus3();
        assert_eq!(orbits(&torus, &z2).unwrap().len(), 8);
        let o = orbits(&torus, &s3).unwrap();
        assert_eq!(o.len(), 21);
        assert!(o.iter().all(|x| 6 % x.size == 0));
        assert_eq!(o.iter().map(|x| x.size).sum::<usize>(), 48);
    }

    #[test]
    fn hom_counts() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(hom_count_mod_conj(&GeneralizedTriangulation::sphere3(), &s3).unwrap(), 1);
        let torus = GeneralizedTriangulation::torus3();
        assert_eq!(hom_count_mod_conj(&torus, &z2).unwrap(), 8);
        assert_eq!(hom_count_mod_conj(&torus, &s3).unwrap(), 21);
        let p = Presentation::of(&torus.two_skeleton().unwrap()).unwrap().simplify();
        assert_eq!(p.generators, 3);
        // surface of genus 2: 2g generators, one relator
        let s2 = SurfaceTriangulation::sigma(2).unwrap().two_skeleton();
        let p = Presentation::of(&s2).unwrap().simplify();
        assert_eq!((p.generators, p.relators.len()), (4, 1));
        assert_eq!(hom_count_of(&s2, &z2).unwrap(), 16);
    }

    #[test]
    fn disconnected_is_unsupported() {
        let two = GeneralizedTriangulation::sphere3().disjoint_union(&GeneralizedTriangulation::sphere3());
        let z2 = FiniteGroup::cyclic(2).unwrap();
        assert!(matches!(hom_count_mod_conj(&two, &z2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn boundary_pins() {
        let surf = SurfaceTriangulation::torus();
        let cyl = GeneralizedTriangulation::cylinder(&surf).unwrap();
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let tau = BoundaryColoring::trivial(&cyl).unwrap();
        let all = enumerate(&cyl, &z2, None).unwrap();
        let pinned = enumerate(&cyl, &z2, Some(&tau)).unwrap();
        assert!(!pinned.is_empty() && pinned.len() < all.len());
        // torus edges 0,1,2 with [0,1,2]: (1,1,1) is not flat in Z2
        let bad = BoundaryColoring::new()
            .with("bottom", vec![1, 1, 1])
            .with("top", vec![0, 0, 0]);
        assert!(matches!(enumerate(&cyl, &z2, Some(&bad)), Err(Error::InvalidBoundary(_))));
        let partial = BoundaryColoring::new().with("bottom", vec![0, 0, 0]);
        assert!(matches!(partial.pins(&cyl, &z2), Err(Error::InvalidBoundary(_))));
        let text = tau.to_text();
        assert_eq!(BoundaryColoring::parse(&text, &cyl, &z2).unwrap(), tau);
    }

    #[test]
    fn listing_lines() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let c = Coloring(vec![2, 0, 1]);
        assert_eq!(c.to_line(), "0:2 1:0 2:1");
        assert_eq!(Coloring::parse_line("2:1 0:2 1:0", 3, &z3).unwrap(), c);
        assert!(Coloring::parse_line("0:2 1:0", 3, &z3).is_err());
        assert!(Coloring::parse_line("0:3 1:0 2:0", 3, &z3).is_err());
    }
}
