//! Group cochains valued in roots of unity, stored additively as exponents.
//!
//! A [`Cochain3`] with root order `m` represents `α(g,h,k) = ζₘ^e(g,h,k)`;
//! all multiplicative identities become additive identities modulo `m`.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use rand::Rng;

use crate::cyclotomics::{merged_order, CycNumber};
use crate::error::{parse_err, Error, Result};
use crate::groups::{Element, FiniteGroup};

fn modulo(x: i64, m: u64) -> u64 {
    x.rem_euclid(m as i64) as u64
}

/// A 3-cochain `G × G × G → ℤₘ`.
#[derive(Clone, Debug)]
pub struct Cochain3 {
    group: Arc<FiniteGroup>,
    root_order: u64,
    table: Vec<u64>,
    normalized: bool,
}

/// Outcome of an exhaustive pentagon check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleReport {
    Pass { quadruples: u64 },
    /// Lexicographically smallest failing quadruple and the exponent of δα there.
    Fail { witness: [Element; 4], exponent: u64 },
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        matches!(self, CocycleReport::Pass { .. })
    }
}

impl Cochain3 {
    /// Wraps a row-major table indexed `(g·|G| + h)·|G| + k`.
    pub fn new(group: Arc<FiniteGroup>, root_order: u64, table: Vec<u64>) -> Result<Self> {
        crate::cyclotomics::check_order(root_order)?;
        let n = group.order();
        if table.len() != n * n * n {
            return Err(Error::InvalidParameter(format!(
                "3-cochain table has {} entries, expected {}",
                table.len(),
                n * n * n
            )));
        }
        if let Some(bad) = table.iter().find(|&&e| e >= root_order) {
            return Err(Error::InvalidParameter(format!(
                "exponent {bad} out of range for root order {root_order}"
            )));
        }
        let mut c = Cochain3 {
            group,
            root_order,
            table,
            normalized: false,
        };
        c.normalized = c.compute_normalized();
        Ok(c)
    }

    /// Builds a cochain from an integer-valued function, reduced mod `m`.
    pub fn from_fn(
        group: Arc<FiniteGroup>,
        root_order: u64,
        f: impl Fn(Element, Element, Element) -> i64,
    ) -> Result<Self> {
        crate::cyclotomics::check_order(root_order)?;
        let n = group.order();
        let mut table = Vec::with_capacity(n * n * n);
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    table.push(modulo(f(g, h, k), root_order));
                }
            }
        }
        Self::new(group, root_order, table)
    }

    /// The constant cochain `α ≡ 1`.
    pub fn trivial(group: Arc<FiniteGroup>, root_order: u64) -> Result<Self> {
        Self::from_fn(group, root_order, |_, _, _| 0)
    }

    /// The cocycle on ℤₙ with exponent `s(x)(s(y)+s(z)-s(y+z))` mod `n²`.
    pub fn zn(n: usize) -> Result<Self> {
        Self::zn_on(Arc::new(FiniteGroup::cyclic(n)?))
    }

    /// [`Self::zn`] over a caller-supplied copy of ℤₙ.
    pub fn zn_on(group: Arc<FiniteGroup>) -> Result<Self> {
        let n = group.order();
        if !group.same_table(&FiniteGroup::cyclic(n)?) {
            return Err(Error::InvalidParameter(format!(
                "zn cocycle needs the cyclic group of order {n}, got {}",
                group.name()
            )));
        }
        let m = (n * n) as u64;
        let ni = n as i64;
        Self::from_fn(group, m, |x, y, z| {
            let (x, y, z) = (x as i64, y as i64, z as i64);
            x * (y + z - (y + z) % ni)
        })
    }

    /// The cocycle on Sₙ with exponent `inv(x)(inv(y)+inv(z)-inv(yz))` mod 4.
    pub fn sn(n: usize) -> Result<Self> {
        if !(2..=5).contains(&n) {
            return Err(Error::SizeLimit(format!("sn cocycle needs 2 <= n <= 5, got {n}")));
        }
        Self::sn_on(Arc::new(FiniteGroup::symmetric(n)?))
    }

    /// [`Self::sn`] over a caller-supplied symmetric group.
    pub fn sn_on(group: Arc<FiniteGroup>) -> Result<Self> {
        let n = (2..=5)
            .find(|&n| (1..=n).product::<usize>() == group.order())
            .ok_or_else(|| {
                Error::SizeLimit(format!(
                    "sn cocycle needs a symmetric group S_n with 2 <= n <= 5, got {}",
                    group.name()
                ))
            })?;
        let reference = FiniteGroup::symmetric(n)?;
        if !group.same_table(&reference) {
            return Err(Error::InvalidParameter(format!(
                "sn cocycle needs symmetric:{n} in its standard numbering, got {}",
                group.name()
            )));
        }
        let inv: Vec<i64> = reference
            .permutations()
            .expect("symmetric groups carry permutations")
            .iter()
            .map(|p| p.inversions() as i64)
            .collect();
        let g2 = group.clone();
        Self::from_fn(group, 4, move |x, y, z| inv[x] * (inv[y] + inv[z] - inv[g2.mul(y, z)]))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    #[inline]
    pub fn exponent(&self, g: Element, h: Element, k: Element) -> u64 {
        let n = self.group.order();
        self.table[(g * n + h) * n + k]
    }

    pub fn value(&self, g: Element, h: Element, k: Element) -> Result<CycNumber> {
        CycNumber::root(self.root_order, self.exponent(g, h, k) as i64)
    }

    /// True when every entry with an identity argument is zero.
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    fn compute_normalized(&self) -> bool {
        let n = self.group.order();
        (0..n).all(|a| {
            (0..n).all(|b| {
                self.exponent(0, a, b) == 0 && self.exponent(a, 0, b) == 0 && self.exponent(a, b, 0) == 0
            })
        })
    }

    /// Same cochain seen in root order `m` (a multiple of the current one).
    pub fn lift(&self, m: u64) -> Result<Self> {
        if m % self.root_order != 0 {
            return Err(Error::InvalidParameter(format!(
                "cannot embed root order {} into {m}",
                self.root_order
            )));
        }
        let step = m / self.root_order;
        Self::new(
            self.group.clone(),
            m,
            self.table.iter().map(|e| e * step).collect(),
        )
    }

    /// Pointwise product `α·α'` in the merged root order.
    pub fn multiply(&self, other: &Cochain3) -> Result<Self> {
        if !self.group.same_table(&other.group) {
            return Err(Error::InvalidParameter("cochains live on different groups".into()));
        }
        let m = merged_order(self.root_order, other.root_order)?;
        let (a, b) = (self.lift(m)?, other.lift(m)?);
        let table = a.table.iter().zip(&b.table).map(|(x, y)| (x + y) % m).collect();
        Self::new(self.group.clone(), m, table)
    }

    /// Pointwise inverse (negated exponents).
    pub fn inverse(&self) -> Self {
        let m = self.root_order;
        let table = self.table.iter().map(|e| (m - e) % m).collect();
        Self::new(self.group.clone(), m, table).expect("shape unchanged")
    }

    /// Returns a copy with `delta` added to the exponent at `(g,h,k)`.
    pub fn with_shifted_entry(&self, g: Element, h: Element, k: Element, delta: i64) -> Self {
        let n = self.group.order();
        let mut table = self.table.clone();
        let idx = (g * n + h) * n + k;
        table[idx] = modulo(table[idx] as i64 + delta, self.root_order);
        Self::new(self.group.clone(), self.root_order, table).expect("shape unchanged")
    }

    /// Exponent of `δα(x,y,z,t) = α(y,z,t) - α(xy,z,t) + α(x,yz,t) - α(x,y,zt) + α(x,y,z)`.
    pub fn delta(&self, x: Element, y: Element, z: Element, t: Element) -> u64 {
        let g = &self.group;
        let e = |a, b, c| self.exponent(a, b, c) as i64;
        let s = e(y, z, t) - e(g.mul(x, y), z, t) + e(x, g.mul(y, z), t) - e(x, y, g.mul(z, t))
            + e(x, y, z);
        modulo(s, self.root_order)
    }

    /// Checks the pentagon identity on all `|G|⁴` quadruples.
    pub fn check(&self) -> CocycleReport {
        let n = self.group.order();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for t in 0..n {
                        let d = self.delta(x, y, z, t);
                        if d != 0 {
                            return CocycleReport::Fail {
                                witness: [x, y, z, t],
                                exponent: d,
                            };
                        }
                    }
                }
            }
        }
        CocycleReport::Pass {
            quadruples: (n as u64).pow(4),
        }
    }

    /// Returns an error carrying the witness when the pentagon fails.
    pub fn ensure_cocycle(&self) -> Result<()> {
        match self.check() {
            CocycleReport::Pass { .. } => Ok(()),
            CocycleReport::Fail { witness, .. } => Err(Error::NotACocycle(witness)),
        }
    }

    /// Exponent of `β(g,h,k) = α(g,h,k)α(h,k,g)α(k,g,h) / α(g,k,h)α(h,g,k)α(k,h,g)`.
    pub fn beta(&self, g: Element, h: Element, k: Element) -> u64 {
        let e = |a, b, c| self.exponent(a, b, c) as i64;
        let s = e(g, h, k) + e(h, k, g) + e(k, g, h) - e(g, k, h) - e(h, g, k) - e(k, h, g);
        modulo(s, self.root_order)
    }

    /// Text form: `group <spec>`, `root-order <m>`, then `g h k e` for every
    /// nonzero exponent.
    pub fn to_text(&self) -> String {
        let mut s = format!("group {}\nroot-order {}\n", self.group.name(), self.root_order);
        let n = self.group.order();
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    let e = self.exponent(g, h, k);
                    if e != 0 {
                        let _ = writeln!(s, "{g} {h} {k} {e}");
                    }
                }
            }
        }
        s
    }

    /// Parses [`Self::to_text`] output. When `expected` is given, the file's
    /// group must have the same table and that group is used.
    pub fn parse(text: &str, expected: Option<&Arc<FiniteGroup>>) -> Result<Self> {
        let (group, m, entries) = parse_cochain_text(text, 3, expected)?;
        let n = group.order();
        let mut table = vec![0u64; n * n * n];
        for (ln, v) in entries {
            if v[..3].iter().any(|&x| x >= n as u64) {
                return Err(parse_err(ln, "element index out of range"));
            }
            table[((v[0] as usize) * n + v[1] as usize) * n + v[2] as usize] = v[3] % m;
        }
        Self::new(group, m, table)
    }

    pub fn read(path: impl AsRef<Path>, expected: Option<&Arc<FiniteGroup>>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?, expected)
    }
}

impl PartialEq for Cochain3 {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_table(&other.group)
            && self.root_order == other.root_order
            && self.table == other.table
    }
}

type Entries = Vec<(usize, Vec<u64>)>;

fn parse_cochain_text(
    text: &str,
    arity: usize,
    expected: Option<&Arc<FiniteGroup>>,
) -> Result<(Arc<FiniteGroup>, u64, Entries)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, line) = lines.next().ok_or_else(|| parse_err(1, "empty cochain file"))?;
    let spec = line
        .strip_prefix("group")
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| parse_err(ln, "expected `group <spec>`"))?;
    let parsed = FiniteGroup::parse_spec(spec).map_err(|e| parse_err(ln, e.to_string()))?;
    let group = match expected {
        Some(g) if g.same_table(&parsed) => g.clone(),
        Some(g) => {
            return Err(parse_err(
                ln,
                format!("file is over {spec}, which does not match {}", g.name()),
            ))
        }
        None => Arc::new(parsed),
    };
    let (ln, line) = lines
        .next()
        .ok_or_else(|| parse_err(ln, "missing `root-order <m>`"))?;
    let m: u64 = line
        .strip_prefix("root-order")
        .and_then(|s| s.trim().parse().ok())
        .filter(|&m| m > 0)
        .ok_or_else(|| parse_err(ln, "expected `root-order <m>`"))?;
    let mut entries = Vec::new();
    for (ln, line) in lines {
        let vals: Vec<u64> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(ln, format!("bad token `{t}`"))))
            .collect::<Result<_>>()?;
        if vals.len() != arity + 1 {
            return Err(parse_err(ln, format!("expected {} integers", arity + 1)));
        }
        entries.push((ln, vals));
    }
    Ok((group, m, entries))
}

/// A 2-cochain `G × G → ℤₘ`, used to twist cocycles by coboundaries.
#[derive(Clone, Debug)]
pub struct Cochain2 {
    group: Arc<FiniteGroup>,
    root_order: u64,
    table: Vec<u64>,
}

impl Cochain2 {
    pub fn from_fn(
        group: Arc<FiniteGroup>,
        root_order: u64,
        f: impl Fn(Element, Element) -> i64,
    ) -> Result<Self> {
        crate::cyclotomics::check_order(root_order)?;
        let n = group.order();
        let table = (0..n * n)
            .map(|i| modulo(f(i / n, i % n), root_order))
            .collect();
        Ok(Cochain2 {
            group,
            root_order,
            table,
        })
    }

    /// Uniformly random exponents.
    pub fn random(group: Arc<FiniteGroup>, root_order: u64, rng: &mut impl Rng) -> Result<Self> {
        let n = group.order();
        let vals: Vec<i64> = (0..n * n)
            .map(|_| rng.gen_range(0..root_order) as i64)
            .collect();
        Self::from_fn(group, root_order, |g, h| vals[g * n + h])
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn exponent(&self, g: Element, h: Element) -> u64 {
        self.table[g * self.group.order() + h]
    }

    /// `(δb)(g,h,k) = b(h,k) - b(gh,k) + b(g,hk) - b(g,h)`.
    pub fn coboundary(&self) -> Cochain3 {
        let g = &self.group;
        let b = |x, y| self.exponent(x, y) as i64;
        Cochain3::from_fn(self.group.clone(), self.root_order, |x, y, z| {
            b(y, z) - b(g.mul(x, y), z) + b(x, g.mul(y, z)) - b(x, y)
        })
        .expect("root order already validated")
    }

    /// Text form: `group <spec>`, `root-order <m>`, then `g h e` per nonzero entry.
    pub fn to_text(&self) -> String {
        let mut s = format!("group {}\nroot-order {}\n", self.group.name(), self.root_order);
        let n = self.group.order();
        for g in 0..n {
            for h in 0..n {
                let e = self.exponent(g, h);
                if e != 0 {
                    let _ = writeln!(s, "{g} {h} {e}");
                }
            }
        }
        s
    }

    pub fn parse(text: &str, expected: Option<&Arc<FiniteGroup>>) -> Result<Self> {
        let (group, m, entries) = parse_cochain_text(text, 2, expected)?;
        let n = group.order();
        let mut table = vec![0u64; n * n];
        for (ln, v) in entries {
            if v[..2].iter().any(|&x| x >= n as u64) {
                return Err(parse_err(ln, "element index out of range"));
            }
            table[v[0] as usize * n + v[1] as usize] = v[2] % m;
        }
        crate::cyclotomics::check_order(m)?;
        Ok(Cochain2 {
            group,
            root_order: m,
            table,
        })
    }

    pub fn read(path: impl AsRef<Path>, expected: Option<&Arc<FiniteGroup>>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?, expected)
    }
}

/// Resolves a cocycle spec (`trivial`, `zn`, `sn`, `file:<path>`, each with an
/// optional `*coboundary:<path>` twist) against a group.
pub fn parse_cocycle_spec(spec: &str, group: &Arc<FiniteGroup>) -> Result<Cochain3> {
    let mut parts = spec.split('*');
    let base = parts.next().unwrap_or("").trim();
    let mut alpha = match base {
        "trivial" => Cochain3::trivial(group.clone(), 1)?,
        "zn" => Cochain3::zn_on(group.clone())?,
        "sn" => Cochain3::sn_on(group.clone())?,
        _ => match base.strip_prefix("file:") {
            Some(path) => Cochain3::read(path, Some(group))?,
            None => {
                return Err(Error::InvalidParameter(format!(
                    "unknown cocycle spec `{base}` (expected trivial, zn, sn, file:<path>, optionally *coboundary:<path>)"
                )))
            }
        },
    };
    for twist in parts {
        let path = twist.trim().strip_prefix("coboundary:").ok_or_else(|| {
            Error::InvalidParameter(format!("unknown cocycle twist `{twist}` (expected coboundary:<path>)"))
        })?;
        let b = Cochain2::read(path, Some(group))?;
        alpha = alpha.multiply(&b.coboundary())?;
    }
    Ok(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn small_groups() -> Vec<Arc<FiniteGroup>> {
        let mut v: Vec<Arc<FiniteGroup>> = (1..=6)
            .map(|n| Arc::new(FiniteGroup::cyclic(n).unwrap()))
            .collect();
        v.push(Arc::new(FiniteGroup::symmetric(3).unwrap()));
        v.push(Arc::new(FiniteGroup::parse_spec("product:cyclic:2xcyclic:2").unwrap()));
        v
    }

    #[test]
    fn zn_entries() {
        let a = Cochain3::zn(2).unwrap();
        assert_eq!(a.root_order(), 4);
        assert_eq!(a.exponent(1, 1, 1), 2);
        let b = Cochain3::zn(3).unwrap();
        assert_eq!(b.exponent(1, 2, 2), 3);
        for n in 1..=5 {
            let c = Cochain3::zn(n).unwrap();
            assert!(c.is_normalized());
            for y in 0..n {
                for z in 0..n {
                    assert_eq!(c.exponent(0, y, z), 0);
                }
            }
        }
    }

    #[test]
    fn sn_entries() {
        let a = Cochain3::sn(3).unwrap();
        assert_eq!(a.root_order(), 4);
        for y in 0..6 {
            for z in 0..6 {
                assert_eq!(a.exponent(0, y, z), 0);
            }
            assert_eq!(a.exponent(y, 0, 0), 0);
        }
        assert!(matches!(Cochain3::sn(6), Err(Error::SizeLimit(_))));
        assert!(matches!(Cochain3::sn(1), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn catalog_cocycles_pass() {
        for n in 1..=4 {
            assert!(Cochain3::zn(n).unwrap().check().passed(), "zn({n})");
        }
        for n in 2..=4 {
            assert!(Cochain3::sn(n).unwrap().check().passed(), "sn({n})");
        }
        assert_eq!(
            Cochain3::sn(3).unwrap().check(),
            CocycleReport::Pass { quadruples: 1296 }
        );
        for g in small_groups() {
            assert!(Cochain3::trivial(g, 5).unwrap().check().passed());
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let a = Cochain3::zn(3).unwrap();
        for (g, h, k) in [(1, 1, 1), (2, 1, 0), (0, 0, 0), (2, 2, 2)] {
            let bad = a.with_shifted_entry(g, h, k, 1);
            let CocycleReport::Fail { witness, exponent } = bad.check() else {
                panic!("perturbation at ({g},{h},{k}) went unnoticed");
            };
            assert_ne!(exponent, 0);
            assert_eq!(bad.delta(witness[0], witness[1], witness[2], witness[3]), exponent);
            // the witness is the first failing quadruple in lexicographic order
            let first = (0..81)
                .map(|i| [i / 27, i / 9 % 3, i / 3 % 3, i % 3])
                .find(|q| bad.delta(q[0], q[1], q[2], q[3]) != 0)
                .unwrap();
            assert_eq!(witness, first);
        }
    }

    #[test]
    fn delta_delta_vanishes_on_basis_cochains() {
        // δ is ℤ-linear, so checking every basis 2-cochain covers all of them.
        for g in small_groups() {
            let n = g.order();
            for m in 1..=8u64 {
                for idx in 0..n * n {
                    let b = Cochain2::from_fn(g.clone(), m, |x, y| (x * n + y == idx) as i64).unwrap();
                    assert!(b.coboundary().check().passed(), "{} m={m} idx={idx}", g.name());
                }
            }
        }
    }

    #[test]
    fn coboundary_examples() {
        let z2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let zero = Cochain2::from_fn(z2.clone(), 4, |_, _| 0).unwrap();
        assert_eq!(zero.coboundary(), Cochain3::trivial(z2.clone(), 4).unwrap());
        // b(g,h) = s(g)s(h): δb(g,h,k) = s(h)s(k) - s(gh)s(k) + s(g)s(hk) - s(g)s(h)
        let b = Cochain2::from_fn(z2.clone(), 4, |x, y| (x * y) as i64).unwrap();
        let d = b.coboundary();
        for x in 0..2i64 {
            for y in 0..2i64 {
                for z in 0..2i64 {
                    let expected = y * z - ((x + y) % 2) * z + x * ((y + z) % 2) - x * y;
                    assert_eq!(
                        d.exponent(x as usize, y as usize, z as usize),
                        expected.rem_euclid(4) as u64
                    );
                }
            }
        }
        // s(g)s(h) is bilinear on ℤ₂, hence already a 2-cocycle
        assert_eq!(d, Cochain3::trivial(z2.clone(), 4).unwrap());
        // b(g,h) = s(g): δb(g,h,k) = s(h) - s(gh)
        let d = Cochain2::from_fn(z2, 4, |x, _| x as i64).unwrap().coboundary();
        assert_eq!(d.exponent(1, 1, 0), 1);
        assert_eq!(d.exponent(0, 1, 1), 0);
        assert!(d.check().passed());
    }

    #[test]
    fn multiply_and_inverse() {
        let a = Cochain3::zn(2).unwrap();
        let z2 = a.group().clone();
        assert_eq!(a.multiply(&Cochain3::trivial(z2.clone(), 1).unwrap()).unwrap(), a);
        assert_eq!(
            a.multiply(&a.inverse()).unwrap(),
            Cochain3::trivial(z2.clone(), 4).unwrap()
        );
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = Cochain2::random(z2, 6, &mut rng).unwrap();
        let twisted = a.multiply(&b.coboundary()).unwrap();
        assert_eq!(twisted.root_order(), 12);
        assert!(twisted.check().passed());
        let s3 = Cochain3::sn(3).unwrap();
        assert!(s3.multiply(&a).is_err());
    }

    #[test]
    fn beta_identities() {
        let mut cochains = Vec::new();
        for g in small_groups() {
            let n = g.order();
            if g.same_table(&FiniteGroup::cyclic(n).unwrap()) {
                cochains.push(Cochain3::zn_on(g.clone()).unwrap());
            }
        }
        cochains.push(Cochain3::sn(3).unwrap());
        for a in &cochains {
            let n = a.group().order();
            let m = a.root_order();
            for g in 0..n {
                for h in 0..n {
                    for k in 0..n {
                        let b = a.beta(g, h, k);
                        assert_eq!(b, a.beta(h, k, g));
                        assert_eq!((b + a.beta(h, g, k)) % m, 0);
                        assert_eq!((b + a.beta(g, k, h)) % m, 0);
                        if g == h || h == k || g == k {
                            assert_eq!(b, 0);
                        }
                    }
                }
            }
        }
        for n in 1..=4 {
            let a = Cochain3::zn(n).unwrap();
            for g in 0..n {
                for h in 0..n {
                    for k in 0..n {
                        assert_eq!(a.beta(g, h, k), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let a = Cochain3::sn(3).unwrap();
        let back = Cochain3::parse(&a.to_text(), None).unwrap();
        assert_eq!(a, back);
        let z3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = Cochain2::random(z3.clone(), 9, &mut rng).unwrap();
        let back = Cochain2::parse(&b.to_text(), Some(&z3)).unwrap();
        assert_eq!(b.coboundary(), back.coboundary());
        assert!(Cochain3::parse(&a.to_text(), Some(&z3)).is_err());
        assert!(matches!(
            Cochain3::parse("group cyclic:2\nroot-order 4\n0 1\n", None),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn spec_parsing() {
        let z3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        assert_eq!(parse_cocycle_spec("zn", &z3).unwrap(), Cochain3::zn(3).unwrap());
        assert!(parse_cocycle_spec("sn", &z3).is_err());
        assert!(parse_cocycle_spec("bogus", &z3).is_err());
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        assert!(parse_cocycle_spec("sn", &s3).unwrap().check().passed());

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("b.txt");
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let b = Cochain2::random(z3.clone(), 9, &mut rng).unwrap();
        std::fs::write(&path, b.to_text()).unwrap();
        let spec = format!("zn*coboundary:{}", path.display());
        let twisted = parse_cocycle_spec(&spec, &z3).unwrap();
        assert_eq!(twisted, Cochain3::zn(3).unwrap().multiply(&b.coboundary()).unwrap());
    }
}
