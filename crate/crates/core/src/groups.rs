//! Finite groups given by explicit multiplication tables.
//!
//! Elements are dense indices `0..order` and the identity is always `0`, so
//! colorings, gauge fields and cochain tables are flat arrays indexed by
//! element.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use crate::error::{parse_err, Error, Result};

/// Index of a group element.
pub type Element = usize;

/// Largest group order accepted by the constructors (the order of S₆).
pub const MAX_ORDER: usize = 720;

/// A permutation of `{0, .., n-1}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        for &p in &one_line {
            if p >= n || seen[p] {
                return Err(Error::InvalidParameter(format!(
                    "{one_line:?} is not a permutation of 0..{n}"
                )));
            }
            seen[p] = true;
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Permutation(inv)
    }

    /// Number of pairs `i < j` with `p(i) > p(j)`, i.e. the Coxeter length.
    ///
    /// This is also the writhe of the positive reduced braid lifting the
    /// permutation, which is what the `Sₙ` cocycle is built from.
    pub fn inversions(&self) -> usize {
        let p = &self.0;
        let mut count = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn sign(&self) -> i8 {
        if self.inversions() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All permutations of `n` letters in lexicographic order of their
    /// one-line notation (so the identity comes first).
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(current.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1])
            else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// A finite group stored as a full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<Element>,
    inverses: Vec<Element>,
    permutations: Option<Vec<Permutation>>,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table, checking the
    /// group axioms exhaustively.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<Element>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter("group order must be positive".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::SizeLimit(format!(
                "group order {order} exceeds {MAX_ORDER}"
            )));
        }
        if table.len() != order * order {
            return Err(Error::InvalidParameter(format!(
                "multiplication table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidParameter(format!("table entry {bad} out of range")));
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        for g in 0..order {
            if mul(0, g) != g || mul(g, 0) != g {
                return Err(Error::InvalidParameter(format!(
                    "element 0 is not a two-sided identity (fails at {g})"
                )));
            }
        }
        let mut inverses = vec![usize::MAX; order];
        for g in 0..order {
            match (0..order).find(|&h| mul(g, h) == 0) {
                Some(h) if mul(h, g) == 0 => inverses[g] = h,
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "element {g} has no two-sided inverse"
                    )))
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mul(a, b);
                for c in 0..order {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidParameter(format!(
                            "table is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            order,
            table,
            inverses,
            permutations: None,
        })
    }

    /// The cyclic group ℤₙ under addition mod `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("cyclic group of order 0".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::SizeLimit(format!("cyclic group order {n} exceeds {MAX_ORDER}")));
        }
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let inverses = (0..n).map(|g| (n - g) % n).collect();
        Ok(FiniteGroup {
            name: format!("cyclic:{n}"),
            order: n,
            table,
            inverses,
            permutations: None,
        })
    }

    /// The symmetric group Sₙ; element `i` is the `i`-th permutation in
    /// lexicographic order and `mul(x, y) = x ∘ y`.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("symmetric group on 0 letters".into()));
        }
        if n > 6 {
            return Err(Error::SizeLimit(format!("symmetric:{n} exceeds S_6")));
        }
        let perms = Permutation::all(n);
        let index: std::collections::HashMap<&Permutation, usize> =
            perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let order = perms.len();
        let mut table = Vec::with_capacity(order * order);
        for x in &perms {
            for y in &perms {
                table.push(index[&x.compose(y)]);
            }
        }
        let inverses = perms.iter().map(|p| index[&p.inverse()]).collect();
        Ok(FiniteGroup {
            name: format!("symmetric:{n}"),
            order,
            table,
            inverses,
            permutations: Some(perms),
        })
    }

    /// Direct product; the pair `(x, y)` has index `x * |b| + y`.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let order = a.order * b.order;
        if order > MAX_ORDER {
            return Err(Error::SizeLimit(format!("product order {order} exceeds {MAX_ORDER}")));
        }
        let nb = b.order;
        let mut table = Vec::with_capacity(order * order);
        for g in 0..order {
            for h in 0..order {
                let x = a.mul(g / nb, h / nb);
                let y = b.mul(g % nb, h % nb);
                table.push(x * nb + y);
            }
        }
        let inverses = (0..order)
            .map(|g| a.inv(g / nb) * nb + b.inv(g % nb))
            .collect();
        Ok(FiniteGroup {
            name: format!("product:{}x{}", a.name, b.name),
            order,
            table,
            inverses,
            permutations: None,
        })
    }

    /// Parses a group spec: `cyclic:<n>`, `symmetric:<n>`,
    /// `product:<spec>x<spec>` or `table:<path>`.
    pub fn parse_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(n) = spec.strip_prefix("cyclic:") {
            return Self::cyclic(parse_usize(n)?);
        }
        if let Some(n) = spec.strip_prefix("symmetric:") {
            return Self::symmetric(parse_usize(n)?);
        }
        if let Some(rest) = spec.strip_prefix("product:") {
            // The separator is ambiguous for nested specs; take the first split
            // where both halves parse.
            for (pos, _) in rest.match_indices('x') {
                let (left, right) = (&rest[..pos], &rest[pos + 1..]);
                if let (Ok(a), Ok(b)) = (Self::parse_spec(left), Self::parse_spec(right)) {
                    return Self::product(&a, &b);
                }
            }
            return Err(Error::InvalidParameter(format!("cannot parse product spec `{spec}`")));
        }
        if let Some(path) = spec.strip_prefix("table:") {
            return Self::read_table_file(path);
        }
        Err(Error::InvalidParameter(format!(
            "unknown group spec `{spec}` (expected cyclic:<n>, symmetric:<n>, product:<a>x<b>, table:<path>)"
        )))
    }

    pub fn read_table_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::parse_table(&format!("table:{}", path.display()), &text)
    }

    /// Parses the whitespace-separated table format: `order <k>` followed by
    /// `k` rows of `k` indices.
    pub fn parse_table(name: &str, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty table file"))?;
        let mut toks = header.split_whitespace();
        if toks.next() != Some("order") {
            return Err(parse_err(ln, "expected `order <k>`"));
        }
        let order: usize = toks
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(ln, "bad order"))?;
        let mut table = Vec::with_capacity(order * order);
        for row in 0..order {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| parse_err(ln, format!("missing table row {row}")))?;
            let vals: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| parse_err(ln, format!("bad entry `{t}`"))))
                .collect::<Result<_>>()?;
            if vals.len() != order {
                return Err(parse_err(ln, format!("row has {} entries, expected {order}", vals.len())));
            }
            table.extend(vals);
        }
        Self::from_table(name, order, table)
    }

    /// Renders the table in the file format accepted by [`Self::parse_table`].
    pub fn to_table_text(&self) -> String {
        let mut s = format!("order {}\n", self.order);
        for g in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|h| self.mul(g, h).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        self.inverses[a]
    }

    /// `g x g⁻¹`.
    pub fn conjugate(&self, g: Element, x: Element) -> Element {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    /// Same multiplication table, ignoring the name.
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    /// For groups built by [`Self::symmetric`], the permutation behind each
    /// element index.
    pub fn permutations(&self) -> Option<&[Permutation]> {
        self.permutations.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// All `h` with `hg = gh`.
    pub fn centralizer(&self, g: Element) -> Vec<Element> {
        self.elements()
            .filter(|&h| self.mul(h, g) == self.mul(g, h))
            .collect()
    }

    /// Simultaneous conjugate `g t g⁻¹` of a tuple.
    pub fn conjugate_tuple(&self, g: Element, tuple: &[Element]) -> Vec<Element> {
        tuple.iter().map(|&x| self.conjugate(g, x)).collect()
    }

    /// Lexicographically smallest simultaneous conjugate of `tuple`.
    pub fn canonical_conjugate(&self, tuple: &[Element]) -> Vec<Element> {
        self.elements()
            .map(|g| self.conjugate_tuple(g, tuple))
            .min()
            .unwrap_or_default()
    }

    /// Number of orbits of `tuples` under simultaneous conjugation.
    pub fn conjugacy_quotient(&self, tuples: &[Vec<Element>]) -> usize {
        let classes: HashSet<Vec<Element>> =
            tuples.iter().map(|t| self.canonical_conjugate(t)).collect();
        classes.len()
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("expected a nonnegative integer, got `{s}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.mul(3, 2), 1);
        let z1 = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(z1.order(), 1);
        assert_eq!(z1.identity(), 0);
        let z5 = FiniteGroup::cyclic(5).unwrap();
        assert_eq!(z5.inv(2), 3);
        assert!(matches!(FiniteGroup::cyclic(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn symmetric_basics() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.permutations().unwrap()[0], Permutation::identity(3));
        assert!(matches!(FiniteGroup::symmetric(7), Err(Error::SizeLimit(_))));
        let s2 = FiniteGroup::symmetric(2).unwrap();
        assert!(s2.same_table(&FiniteGroup::cyclic(2).unwrap()));
        // the symmetric tables pass the full axiom check
        for n in 1..=4 {
            let g = FiniteGroup::symmetric(n).unwrap();
            FiniteGroup::from_table("check", g.order(), g.table().to_vec()).unwrap();
        }
    }

    #[test]
    fn centralizers_in_s3() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let perms = s3.permutations().unwrap();
        let transposition = perms.iter().position(|p| p.one_line() == [1, 0, 2]).unwrap();
        let three_cycle = perms.iter().position(|p| p.one_line() == [1, 2, 0]).unwrap();
        // brute-force: count commuting elements directly from the permutations
        let brute = |x: usize| {
            perms
                .iter()
                .filter(|h| h.compose(&perms[x]) == perms[x].compose(h))
                .count()
        };
        assert_eq!(s3.centralizer(transposition).len(), brute(transposition));
        assert_eq!(s3.centralizer(transposition).len(), 2);
        assert_eq!(s3.centralizer(three_cycle).len(), brute(three_cycle));
        assert_eq!(s3.centralizer(three_cycle).len(), 3);
        assert_eq!(s3.centralizer(0).len(), 6);
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert!(z6.elements().all(|g| z6.centralizer(g).len() == 6));
    }

    #[test]
    fn inversions_examples() {
        assert_eq!(Permutation::identity(4).inversions(), 0);
        assert_eq!(Permutation::new(vec![2, 0, 1]).unwrap().inversions(), 2);
        assert_eq!(Permutation::new(vec![2, 1, 0]).unwrap().inversions(), 3);
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn inversion_parity_is_a_homomorphism_on_s4() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        for p in &all {
            for q in &all {
                let lhs = p.compose(q).inversions() % 2;
                let rhs = (p.inversions() + q.inversions()) % 2;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn conjugacy_quotients() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.conjugacy_quotient(&[vec![0, 0, 0]]), 1);

        let v4 = FiniteGroup::parse_spec("product:cyclic:2xcyclic:2").unwrap();
        assert_eq!(v4.order(), 4);
        let pairs: Vec<Vec<usize>> = (0..4).flat_map(|a| (0..4).map(move |b| vec![a, b])).collect();
        // abelian: every orbit is a singleton
        assert_eq!(v4.conjugacy_quotient(&pairs), 16);

        // brute-force orbit count of pairwise commuting triples in S3
        let commute = |a: usize, b: usize| s3.mul(a, b) == s3.mul(b, a);
        let mut triples = Vec::new();
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    if commute(a, b) && commute(a, c) && commute(b, c) {
                        triples.push(vec![a, b, c]);
                    }
                }
            }
        }
        let mut orbits: Vec<HashSet<Vec<usize>>> = Vec::new();
        for t in &triples {
            if orbits.iter().any(|o| o.contains(t)) {
                continue;
            }
            orbits.push((0..6).map(|g| s3.conjugate_tuple(g, t)).collect());
        }
        assert_eq!(triples.len(), 48);
        assert_eq!(orbits.len(), 21);
        assert_eq!(s3.conjugacy_quotient(&triples), 21);
        // orbit-stabilizer: every orbit size divides |G|
        assert!(orbits.iter().all(|o| 6 % o.len() == 0));
    }

    #[test]
    fn table_round_trip_and_errors() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let parsed = FiniteGroup::parse_table("t", &g.to_table_text()).unwrap();
        assert!(parsed.same_table(&g));
        // not associative: a "loop" of order 3 with a bad row
        let bad = "order 3\n0 1 2\n1 0 2\n2 2 0\n";
        assert!(FiniteGroup::parse_table("bad", bad).is_err());
        assert!(FiniteGroup::parse_spec("dihedral:4").is_err());
    }

    #[test]
    fn associativity_of_builtin_groups() {
        for g in [
            FiniteGroup::cyclic(7).unwrap(),
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::parse_spec("product:symmetric:3xcyclic:2").unwrap(),
        ] {
            for a in g.elements() {
                for b in g.elements() {
                    for c in g.elements() {
                        assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                    }
                }
            }
        }
    }
}
