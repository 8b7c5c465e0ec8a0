//! Dijkgraaf–Witten state sums and the Turaev–Viro evaluation for group
//! categories whose simple objects all have dimension one.
//!
//! Every coloring contributes `ζₘ^w` with `w = Σ_Δ ε_Δ·e(Δ, γ)`, so sums are
//! accumulated as histograms over `ℤₘ` and turned into a [`CycNumber`] once.

use num_bigint::BigInt;
use num_traits::One;

use crate::cocycles::Cochain3;
use crate::colorings::{for_each_coloring, BoundaryColoring, Coloring};
use crate::complexes::{pair_index, GeneralizedTriangulation};
use crate::cyclotomics::{CycNumber, Rational};
use crate::error::{Error, Result};
use crate::groups::{Element, FiniteGroup};

/// Which edges of a tetrahedron feed the cocycle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Convention {
    /// `α(γ(01), γ(12), γ(23))`.
    #[default]
    Standard,
    /// `α(γ(01), γ(12), γ(20))` with `γ(20) = γ(02)⁻¹`. Not a triangulation
    /// invariant in general; kept for comparison.
    Compat,
}

/// A group category with invertible simples: the group of simples, the
/// associator as a 3-cocycle, and the quantum dimension of each simple.
#[derive(Clone, Debug)]
pub struct GroupCategory {
    associator: Cochain3,
    dims: Vec<i8>,
}

impl GroupCategory {
    /// All simples of dimension `+1`. The associator must satisfy the
    /// pentagon identity.
    pub fn new(associator: Cochain3) -> Result<Self> {
        let n = associator.group().order();
        Self::with_dims(associator, vec![1; n])
    }

    /// Simples of dimension `±1` (`dim(X)² = 1`).
    pub fn with_dims(associator: Cochain3, dims: Vec<i8>) -> Result<Self> {
        associator.ensure_cocycle()?;
        if dims.len() != associator.group().order() {
            return Err(Error::InvalidParameter(format!(
                "{} dimensions for {} simples",
                dims.len(),
                associator.group().order()
            )));
        }
        if let Some(d) = dims.iter().find(|&&d| d != 1 && d != -1) {
            return Err(Error::InvalidParameter(format!("dimension {d} of an invertible simple must be ±1")));
        }
        Ok(GroupCategory { associator, dims })
    }

    pub fn group(&self) -> &FiniteGroup {
        self.associator.group()
    }

    pub fn associator(&self) -> &Cochain3 {
        &self.associator
    }

    pub fn dims(&self) -> &[i8] {
        &self.dims
    }

    /// `Σ dim(X)²`, which is `|G|`.
    pub fn dimension(&self) -> usize {
        self.dims.len()
    }
}

/// The 6j-symbol `{a b c; d e f}` for invertible simples is determined by
/// `(b, c, d)`: its exponent is `α(b, c, d)`.
pub fn sixj(c: &GroupCategory, b: Element, cc: Element, d: Element) -> u64 {
    c.associator.exponent(b, cc, d)
}

/// The full 6j-symbol, `None` when it vanishes, i.e. unless
/// `e = b⊗c`, `f = c⊗d` and `a = b⊗c⊗d`.
#[allow(clippy::too_many_arguments)]
pub fn sixj_full(
    c: &GroupCategory,
    a: Element,
    b: Element,
    cc: Element,
    d: Element,
    e: Element,
    f: Element,
) -> Option<u64> {
    let g = c.group();
    let admissible = e == g.mul(b, cc) && f == g.mul(cc, d) && a == g.mul(e, d);
    admissible.then(|| sixj(c, b, cc, d))
}

/// Cocycle exponent of one tetrahedron together with the sign it is raised to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TetWeight {
    pub exponent: u64,
    pub eps: i8,
}

impl TetWeight {
    /// `ε·exponent` reduced mod `m`.
    pub fn signed(&self, m: u64) -> u64 {
        if self.eps > 0 || self.exponent == 0 {
            self.exponent
        } else {
            m - self.exponent
        }
    }
}

/// Edge values of tetrahedron `tet` along its branching `(01, 02, 03, 12, 13, 23)`.
fn tet_values(edges: &[usize; 6], values: &[Element]) -> [Element; 6] {
    edges.map(|e| values[e])
}

fn weight_of(
    group: &FiniteGroup,
    alpha: &Cochain3,
    edges: &[usize; 6],
    values: &[Element],
    conv: Convention,
) -> u64 {
    let v = tet_values(edges, values);
    let g01 = v[pair_index(0, 1)];
    let g12 = v[pair_index(1, 2)];
    let third = match conv {
        Convention::Standard => v[pair_index(2, 3)],
        Convention::Compat => group.inv(v[pair_index(0, 2)]),
    };
    alpha.exponent(g01, g12, third)
}

pub fn tet_weight(
    t: &GeneralizedTriangulation,
    tet: usize,
    gamma: &Coloring,
    alpha: &Cochain3,
    conv: Convention,
) -> Result<TetWeight> {
    let edges = t.tet_edges(tet)?;
    Ok(TetWeight {
        exponent: weight_of(alpha.group(), alpha, &edges, gamma.values(), conv),
        eps: t.eps(tet),
    })
}

/// Per-coloring record for `--trace` output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub coloring: Coloring,
    /// `Σ ε_Δ·e(Δ, γ)` mod `m`.
    pub exponent: u64,
}

/// Options shared by the state-sum entry points.
#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub convention: Convention,
    /// Keep a per-coloring exponent record.
    pub trace: bool,
}

/// A state sum with its ingredients.
#[derive(Clone, Debug)]
pub struct StateSum {
    pub value: CycNumber,
    /// Number of colorings summed.
    pub colorings: u64,
    /// Vertex classes in the normalization `|G|^(−n0)`.
    pub n0: usize,
    pub trace: Vec<TraceEntry>,
}

fn check_alpha(t: &GeneralizedTriangulation, alpha: &Cochain3) -> Result<()> {
    let report = t.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidComplex(v.to_string()));
    }
    alpha.ensure_cocycle()
}

/// Histogram of `Σ_Δ ε_Δ·e(Δ, γ)` over the colorings agreeing with `pins`.
fn histogram(
    t: &GeneralizedTriangulation,
    alpha: &Cochain3,
    pins: &[Option<Element>],
    opts: Options,
) -> Result<(Vec<BigInt>, u64, Vec<TraceEntry>)> {
    let m = alpha.root_order();
    let group = alpha.group();
    let skel = t.two_skeleton()?;
    let tets: Vec<([usize; 6], i8)> = (0..t.tet_count())
        .map(|k| Ok((t.tet_edges(k)?, t.eps(k))))
        .collect::<Result<_>>()?;
    let mut counts = vec![0u64; m as usize];
    let mut total = 0u64;
    let mut trace = Vec::new();
    for_each_coloring(&skel, group, pins, |values| {
        let mut w = 0u64;
        for (edges, eps) in &tets {
            let e = weight_of(group, alpha, edges, values, opts.convention);
            w = (w + if *eps > 0 { e } else { (m - e) % m }) % m;
        }
        counts[w as usize] += 1;
        total += 1;
        if opts.trace {
            trace.push(TraceEntry {
                coloring: Coloring(values.to_vec()),
                exponent: w,
            });
        }
        true
    })?;
    trace.sort_by(|a, b| a.coloring.cmp(&b.coloring));
    Ok((counts.into_iter().map(BigInt::from).collect(), total, trace))
}

fn normalize(hist: &[BigInt], m: u64, order: usize, n0: usize) -> Result<CycNumber> {
    let denom = BigInt::from(order).pow(n0 as u32);
    let sum = CycNumber::from_histogram(m, hist)?;
    Ok(sum.scale(&Rational::new(BigInt::one(), denom)).reduce())
}

/// `|G|^(−n0) Σ_γ Π_Δ α(Δ, γ)^{ε_Δ}` with the colorings restricted by `pins`
/// and `n0` counting every vertex class.
pub fn state_sum_pinned(
    t: &GeneralizedTriangulation,
    alpha: &Cochain3,
    pins: &[Option<Element>],
    opts: Options,
) -> Result<StateSum> {
    check_alpha(t, alpha)?;
    let n0 = t.n0()?;
    let (hist, colorings, trace) = histogram(t, alpha, pins, opts)?;
    Ok(StateSum {
        value: normalize(&hist, alpha.root_order(), alpha.group().order(), n0)?,
        colorings,
        n0,
        trace,
    })
}

/// The Dijkgraaf–Witten invariant of a closed complex.
pub fn dw_invariant(t: &GeneralizedTriangulation, alpha: &Cochain3) -> Result<CycNumber> {
    Ok(dw_invariant_with(t, alpha, Options::default())?.value)
}

pub fn dw_invariant_with(t: &GeneralizedTriangulation, alpha: &Cochain3, opts: Options) -> Result<StateSum> {
    if !t.is_closed() {
        return Err(Error::InvalidBoundary(
            "complex has boundary; use the relative invariant with a boundary coloring".into(),
        ));
    }
    let pins = vec![None; t.edge_count()?];
    state_sum_pinned(t, alpha, &pins, opts)
}

/// The relative invariant `Z_M(τ)`; `n0` counts boundary vertices too.
pub fn dw_relative(t: &GeneralizedTriangulation, alpha: &Cochain3, tau: &BoundaryColoring) -> Result<CycNumber> {
    Ok(dw_relative_with(t, alpha, tau, Options::default())?.value)
}

pub fn dw_relative_with(
    t: &GeneralizedTriangulation,
    alpha: &Cochain3,
    tau: &BoundaryColoring,
    opts: Options,
) -> Result<StateSum> {
    let pins = tau.pins(t, alpha.group())?;
    state_sum_pinned(t, alpha, &pins, opts)
}

/// Largest number of Turaev–Viro colorings the exhaustive path will visit.
pub const TV_SLOW_LIMIT: u64 = 10_000_000;

/// The Turaev–Viro invariant of a closed complex for a group category.
///
/// The default path visits every assignment of a simple to each edge class
/// and evaluates the full 6j-symbol on each tetrahedron, so inadmissible
/// assignments are discarded only because some 6j-symbol vanishes. With
/// `fast`, only admissible colorings are visited.
pub fn tv_invariant(t: &GeneralizedTriangulation, c: &GroupCategory, fast: bool) -> Result<CycNumber> {
    if c.dims.iter().any(|&d| d != 1) {
        return Err(Error::Unsupported(
            "the state sum is only evaluated when every simple has dimension 1".into(),
        ));
    }
    if !t.is_closed() {
        return Err(Error::InvalidBoundary("complex has boundary".into()));
    }
    let report = t.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidComplex(v.to_string()));
    }
    let group = c.group();
    let alpha = c.associator();
    let m = alpha.root_order();
    let n_edges = t.edge_count()?;
    let tets: Vec<([usize; 6], i8)> = (0..t.tet_count())
        .map(|k| Ok((t.tet_edges(k)?, t.eps(k))))
        .collect::<Result<_>>()?;
    let mut counts = vec![0u64; m as usize];
    let mut add = |values: &[Element]| {
        let mut w = 0u64;
        for (edges, eps) in &tets {
            let v = tet_values(edges, values);
            let [e01, e02, e03, e12, e13, e23] = [
                v[pair_index(0, 1)],
                v[pair_index(0, 2)],
                v[pair_index(0, 3)],
                v[pair_index(1, 2)],
                v[pair_index(1, 3)],
                v[pair_index(2, 3)],
            ];
            let Some(e) = sixj_full(c, e03, e01, e12, e23, e02, e13) else {
                return;
            };
            w = (w + if *eps > 0 { e } else { (m - e) % m }) % m;
        }
        counts[w as usize] += 1;
    };
    if fast {
        let skel = t.two_skeleton()?;
        for_each_coloring(&skel, group, &vec![None; n_edges], |v| {
            add(v);
            true
        })?;
    } else {
        let total = (group.order() as u64).checked_pow(n_edges as u32);
        if total.is_none_or(|x| x > TV_SLOW_LIMIT) {
            return Err(Error::SizeLimit(format!(
                "{}^{n_edges} colorings exceed the exhaustive limit {TV_SLOW_LIMIT}; use the fast path",
                group.order()
            )));
        }
        let mut values = vec![0; n_edges];
        'odometer: loop {
            add(&values);
            for slot in values.iter_mut() {
                *slot += 1;
                if *slot < group.order() {
                    continue 'odometer;
                }
                *slot = 0;
            }
            break;
        }
    }
    let hist: Vec<BigInt> = counts.into_iter().map(BigInt::from).collect();
    normalize(&hist, m, c.dimension(), t.n0()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn int(n: i64) -> CycNumber {
        CycNumber::from_integer(1, n).unwrap()
    }

    #[test]
    fn torus3_twisted() {
        let t = GeneralizedTriangulation::torus3();
        assert_eq!(dw_invariant(&t, &Cochain3::zn(2).unwrap()).unwrap().as_rational(), Some(Rational::from_integer(4.into())));
        assert_eq!(dw_invariant(&t, &Cochain3::zn(3).unwrap()).unwrap().as_rational(), Some(Rational::from_integer(9.into())));
    }

    #[test]
    fn untwisted_is_hom_count_over_order() {
        let t = GeneralizedTriangulation::torus3();
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let v = dw_invariant(&t, &Cochain3::trivial(s3, 1).unwrap()).unwrap();
        assert_eq!(v, int(8));
        let s = GeneralizedTriangulation::sphere3();
        let z2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let v = dw_invariant(&s, &Cochain3::trivial(z2, 1).unwrap()).unwrap();
        assert_eq!(v.as_rational(), Some(Rational::new(1.into(), 2.into())));
    }

    #[test]
    fn sixj_examples() {
        let c = GroupCategory::new(Cochain3::zn(2).unwrap()).unwrap();
        assert_eq!(sixj(&c, 1, 1, 1), 2);
        for g in 0..2 {
            for h in 0..2 {
                assert_eq!(sixj(&c, 0, g, h), 0);
                assert_eq!(sixj(&c, g, 0, h), 0);
                assert_eq!(sixj(&c, g, h, 0), 0);
            }
        }
        assert_eq!(sixj_full(&c, 1, 1, 1, 1, 0, 0), Some(2));
        assert_eq!(sixj_full(&c, 0, 1, 1, 1, 0, 0), None);
        let trivial = GroupCategory::new(Cochain3::trivial(Arc::new(FiniteGroup::cyclic(3).unwrap()), 1).unwrap())
            .unwrap();
        assert_eq!(sixj(&trivial, 1, 2, 1), 0);
        assert_eq!(trivial.dimension(), 3);
    }

    #[test]
    fn tv_matches_dw() {
        let s = GeneralizedTriangulation::sphere3();
        let t = GeneralizedTriangulation::torus3();
        let zn2 = Cochain3::zn(2).unwrap();
        let c = GroupCategory::new(zn2.clone()).unwrap();
        for m in [&s, &t] {
            let dw = dw_invariant(m, &zn2).unwrap();
            assert_eq!(tv_invariant(m, &c, false).unwrap(), dw);
            assert_eq!(tv_invariant(m, &c, true).unwrap(), dw);
        }
    }

    #[test]
    fn negative_dims_are_unsupported() {
        let c = GroupCategory::with_dims(Cochain3::zn(2).unwrap(), vec![1, -1]).unwrap();
        let t = GeneralizedTriangulation::torus3();
        assert!(matches!(tv_invariant(&t, &c, true), Err(Error::Unsupported(_))));
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let bad = Cochain3::zn(2).unwrap().with_shifted_entry(1, 1, 0, 1);
        let t = GeneralizedTriangulation::torus3();
        assert!(matches!(dw_invariant(&t, &bad), Err(Error::NotACocycle(_))));
    }

    #[test]
    fn trivial_alpha_gives_zero_weights() {
        let t = GeneralizedTriangulation::sphere3();
        let z3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let a = Cochain3::trivial(z3.clone(), 1).unwrap();
        let g = Coloring(vec![1; 10]);
        for k in 0..t.tet_count() {
            assert_eq!(tet_weight(&t, k, &g, &a, Convention::Standard).unwrap().exponent, 0);
        }
    }

    #[test]
    fn relative_invariants() {
        let s = GeneralizedTriangulation::sphere3();
        let zn2 = Cochain3::zn(2).unwrap();
        assert_eq!(dw_relative(&s, &zn2, &BoundaryColoring::new()).unwrap(), dw_invariant(&s, &zn2).unwrap());
        let two = s.disjoint_union(&s);
        let one = dw_invariant(&s, &zn2).unwrap();
        assert_eq!(dw_invariant(&two, &zn2).unwrap(), one.checked_mul(&one).unwrap());
    }

    #[test]
    fn trace_records_every_coloring() {
        let t = GeneralizedTriangulation::torus3();
        let opts = Options {
            trace: true,
            ..Options::default()
        };
        let r = dw_invariant_with(&t, &Cochain3::zn(2).unwrap(), opts).unwrap();
        assert_eq!(r.trace.len(), 8);
        assert_eq!(r.colorings, 8);
        assert_eq!(r.n0, 1);
    }

    #[test]
    fn surface_bundles_and_moves() {
        use rand::SeedableRng;
        let r = |n: i64| Some(Rational::from_integer(n.into()));
        let s1 = GeneralizedTriangulation::sigma_cross_s1(1).unwrap();
        assert_eq!(dw_invariant(&s1, &Cochain3::zn(3).unwrap()).unwrap().as_rational(), r(9));
        let s2 = GeneralizedTriangulation::sigma_cross_s1(2).unwrap();
        assert_eq!(dw_invariant(&s2, &Cochain3::zn(2).unwrap()).unwrap().as_rational(), r(16));
        let sn = Cochain3::sn(3).unwrap();
        for base in [GeneralizedTriangulation::sphere3(), GeneralizedTriangulation::torus3()] {
            let want = dw_invariant(&base, &sn).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
            let mut t = base.clone();
            for _ in 0..8 {
                t = crate::complexes::random_move(&t, &mut rng, true).unwrap().1;
                assert_eq!(dw_invariant(&t, &sn).unwrap(), want);
            }
        }
    }
}
