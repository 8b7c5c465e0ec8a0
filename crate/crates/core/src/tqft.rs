//! The triangulated TQFT: the vector space spanned by the flat colorings of
//! a surface, cobordism matrices, composition and image dimensions.
//!
//! For a cobordism `M` from `M₋` (faces marked `in`) to `M₊` (marked `out`),
//! the unnormalized matrix entry at `(c′, c)` is
//! `|G|^(−n_int) Σ_γ Π_Δ α(Δ,γ)^{ε_Δ}` over colorings restricting to `c` on
//! `M₋` and `c′` on `M₊`, where `n_int` counts interior vertex classes.
//! Composing two such matrices gives the matrix of the glued cobordism times
//! `|G|^{n0(Σ)}` for the gluing surface `Σ`; the `in` normalization
//! multiplies by `|G|^(−n0(M₋))` and composes strictly.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::cocycles::Cochain3;
use crate::colorings::{enumerate_pinned, for_each_coloring, Coloring};
use crate::complexes::{pair_index, GeneralizedTriangulation, Side, SurfaceTriangulation};
use crate::cyclotomics::{CycNumber, Rational};
use crate::error::{Error, Result};
use crate::groups::{Element, FiniteGroup};

/// `k[Col(S)]` with its basis in sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringSpace {
    pub surface: SurfaceTriangulation,
    pub basis: Vec<Coloring>,
}

impl ColoringSpace {
    pub fn new(surface: &SurfaceTriangulation, group: &FiniteGroup) -> Result<Self> {
        let skel = surface.two_skeleton();
        let basis = enumerate_pinned(&skel, group, &vec![None; skel.edges.len()])?;
        Ok(ColoringSpace {
            surface: surface.clone(),
            basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// How a cobordism matrix is scaled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// `|G|^(−n_int)` only.
    Raw,
    /// Extra factor `|G|^(−n0(M₋))`.
    #[default]
    In,
    /// Extra factor `|G|^(−n0(M₊))`.
    Out,
    /// Extra factor `|G|^(−(n0(M₋)+n0(M₊))/2)`.
    Middle,
}

impl Normalization {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "raw" | "none" => Ok(Normalization::Raw),
            "i" | "in" => Ok(Normalization::In),
            "o" | "out" => Ok(Normalization::Out),
            "m" | "middle" => Ok(Normalization::Middle),
            _ => Err(Error::InvalidParameter(format!(
                "unknown normalization `{s}` (expected i, o, m or raw)"
            ))),
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Raw => "raw",
            Normalization::In => "i",
            Normalization::Out => "o",
            Normalization::Middle => "m",
        })
    }
}

/// A linear map between coloring spaces. The represented matrix is
/// `entries · |G|^(−1/2)` when `half_power` is set; the square root is kept
/// symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobordismMatrix {
    pub domain: ColoringSpace,
    pub codomain: ColoringSpace,
    /// Row `c′` (codomain), column `c` (domain).
    pub entries: Vec<Vec<CycNumber>>,
    pub half_power: bool,
    pub group_order: usize,
}

fn group_power(order: usize, exp: i64) -> Rational {
    let p = BigInt::from(order).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

fn distinct(v: &[usize]) -> usize {
    v.iter().collect::<BTreeSet<_>>().len()
}

/// Largest `rows · columns · m` histogram a cobordism matrix may allocate.
pub const MATRIX_LIMIT: u64 = 4_000_000;

/// The matrix of `m` from its `in` side to its `out` side.
pub fn cobordism_matrix(
    m: &GeneralizedTriangulation,
    alpha: &Cochain3,
    normalization: Normalization,
) -> Result<CobordismMatrix> {
    let report = m.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidComplex(v.to_string()));
    }
    alpha.ensure_cocycle()?;
    let group = alpha.group();
    let inn = m.boundary_surface(Side::In)?;
    let out = m.boundary_surface(Side::Out)?;
    let domain = ColoringSpace::new(&inn.surface, group)?;
    let codomain = ColoringSpace::new(&out.surface, group)?;
    let cells = domain.dim() as u64 * codomain.dim() as u64 * alpha.root_order();
    if cells > MATRIX_LIMIT {
        return Err(Error::SizeLimit(format!(
            "{}×{} matrix over ℤ_{} exceeds the limit {MATRIX_LIMIT}",
            codomain.dim(),
            domain.dim(),
            alpha.root_order()
        )));
    }
    let n_in = distinct(&inn.vertex_map);
    let n_out = distinct(&out.vertex_map);
    let mut boundary_vertices: Vec<usize> = inn.vertex_map.clone();
    boundary_vertices.extend(&out.vertex_map);
    let n_int = m.n0()? - distinct(&boundary_vertices);

    let index = |space: &ColoringSpace| -> HashMap<Vec<Element>, usize> {
        space.basis.iter().enumerate().map(|(i, c)| (c.0.clone(), i)).collect()
    };
    let in_index = index(&domain);
    let out_index = index(&codomain);
    let root = alpha.root_order();
    let (rows, cols) = (codomain.dim(), domain.dim());
    let mut hist = vec![vec![vec![0u64; root as usize]; cols]; rows];
    let tets: Vec<([usize; 6], i8)> = (0..m.tet_count())
        .map(|k| Ok((m.tet_edges(k)?, m.eps(k))))
        .collect::<Result<_>>()?;
    let skel = m.two_skeleton()?;
    let mut missing = false;
    for_each_coloring(&skel, group, &vec![None; skel.edges.len()], |values| {
        let c_in: Vec<Element> = inn.edge_map.iter().map(|&e| values[e]).collect();
        let c_out: Vec<Element> = out.edge_map.iter().map(|&e| values[e]).collect();
        let (Some(&j), Some(&i)) = (in_index.get(&c_in), out_index.get(&c_out)) else {
            missing = true;
            return false;
        };
        let mut w = 0u64;
        for (edges, eps) in &tets {
            let v = |a: u8, b: u8| values[edges[pair_index(a, b)]];
            let e = alpha.exponent(v(0, 1), v(1, 2), v(2, 3));
            w = (w + if *eps > 0 { e } else { (root - e) % root }) % root;
        }
        hist[i][j][w as usize] += 1;
        true
    })?;
    if missing {
        return Err(Error::InvalidBoundary(
            "a coloring restricts to a non-flat boundary coloring".into(),
        ));
    }

    // overall exponent of |G|, doubled to allow half powers
    let twice = -2 * n_int as i64
        + match normalization {
            Normalization::Raw => 0,
            Normalization::In => -2 * n_in as i64,
            Normalization::Out => -2 * n_out as i64,
            Normalization::Middle => -(n_in as i64 + n_out as i64),
        };
    let half_power = twice % 2 != 0;
    let scale = group_power(group.order(), (twice + i64::from(half_power)) / 2);
    let entries = hist
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|h| {
                    let h: Vec<BigInt> = h.into_iter().map(BigInt::from).collect();
                    Ok(CycNumber::from_histogram(root, &h)?.scale(&scale).reduce())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CobordismMatrix {
        domain,
        codomain,
        entries,
        half_power,
        group_order: group.order(),
    })
}

impl CobordismMatrix {
    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &CobordismMatrix) -> Result<CobordismMatrix> {
        if first.codomain.surface != self.domain.surface {
            return Err(Error::InvalidComposition(
                "surfaces differ between the outgoing and incoming sides".into(),
            ));
        }
        if first.codomain.basis != self.domain.basis {
            let k = first
                .codomain
                .basis
                .iter()
                .zip(&self.domain.basis)
                .position(|(a, b)| a != b)
                .unwrap_or(first.codomain.dim().min(self.domain.dim()));
            return Err(Error::InvalidComposition(format!(
                "bases differ at index {k} ({} vs {} elements)",
                first.codomain.dim(),
                self.domain.dim()
            )));
        }
        if first.group_order != self.group_order {
            return Err(Error::InvalidComposition("matrices over different groups".into()));
        }
        let mut entries = match integer_product(&self.entries, &first.entries)? {
            Some(e) => e,
            None => exact_product(&self.entries, &first.entries)?,
        };
        let both_half = self.half_power && first.half_power;
        if both_half {
            let s = group_power(self.group_order, -1);
            for row in &mut entries {
                for x in row.iter_mut() {
                    *x = x.scale(&s);
                }
            }
        }
        Ok(CobordismMatrix {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            entries,
            half_power: self.half_power != first.half_power,
            group_order: self.group_order,
        })
    }

    /// Multiplies every entry by `|G|^exp`.
    pub fn scaled(&self, exp: i64) -> CobordismMatrix {
        let s = group_power(self.group_order, exp);
        CobordismMatrix {
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|x| x.scale(&s)).collect())
                .collect(),
            ..self.clone()
        }
    }

    pub fn is_idempotent(&self) -> Result<bool> {
        Ok(self.domain == self.codomain && self.compose(self)? == *self)
    }

    pub fn is_identity(&self) -> bool {
        !self.half_power
            && self.domain == self.codomain
            && self.entries.iter().enumerate().all(|(i, row)| {
                row.iter().enumerate().all(|(j, x)| {
                    x.as_rational() == Some(Rational::from_integer(BigInt::from(u8::from(i == j))))
                })
            })
    }

    /// Rank over the cyclotomic field by exact elimination; the symbolic
    /// square root does not change the rank.
    pub fn rank(&self) -> Result<usize> {
        rank(&self.entries)
    }

    /// Canonical text, one row per line, entries separated by `; `.
    pub fn render(&self) -> String {
        let mut s = String::new();
        if self.half_power {
            s.push_str(&format!("scalar = {}^(-1/2)\n", self.group_order));
        }
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(CycNumber::render).collect();
            s.push_str(&cells.join("; "));
            s.push('\n');
        }
        s
    }
}

fn exact_product(a: &[Vec<CycNumber>], b: &[Vec<CycNumber>]) -> Result<Vec<Vec<CycNumber>>> {
    let cols = b.first().map_or(0, Vec::len);
    let mut entries = Vec::with_capacity(a.len());
    for row_a in a {
        let mut row = Vec::with_capacity(cols);
        for j in 0..cols {
            let mut acc = CycNumber::zero(1)?;
            for (x, row_b) in row_a.iter().zip(b) {
                let y = &row_b[j];
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                acc = acc.checked_add(&x.checked_mul(y)?)?;
            }
            row.push(acc.reduce());
        }
        entries.push(row);
    }
    Ok(entries)
}

/// Sparse `(exponent, coefficient)` lists over a common root order, scaled
/// by one common denominator.
struct IntegerForm {
    cells: Vec<Vec<Vec<(usize, i128)>>>,
    denom: BigInt,
}

fn integer_form(m: &[Vec<CycNumber>], order: u64) -> Result<Option<IntegerForm>> {
    let lifted: Vec<Vec<CycNumber>> = m
        .iter()
        .map(|row| row.iter().map(|x| x.lift(order)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let denom = lifted
        .iter()
        .flatten()
        .flat_map(|x| x.raw_coeffs().iter())
        .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let d = Rational::from_integer(denom.clone());
    let mut cells = Vec::with_capacity(lifted.len());
    for row in &lifted {
        let mut out_row = Vec::with_capacity(row.len());
        for x in row {
            let mut sparse = Vec::new();
            for (e, c) in x.raw_coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let Some(v) = (c * &d).to_integer().to_i128() else {
                    return Ok(None);
                };
                sparse.push((e, v));
            }
            out_row.push(sparse);
        }
        cells.push(out_row);
    }
    Ok(Some(IntegerForm { cells, denom }))
}

/// Product over `ℤ[ℤ_L]` with overflow checks; `None` when a coefficient
/// leaves `i128`.
fn integer_product(a: &[Vec<CycNumber>], b: &[Vec<CycNumber>]) -> Result<Option<Vec<Vec<CycNumber>>>> {
    let order = a
        .iter()
        .chain(b)
        .flatten()
        .try_fold(1u64, |acc, x| crate::cyclotomics::merged_order(acc, x.order()))?;
    let (Some(fa), Some(fb)) = (integer_form(a, order)?, integer_form(b, order)?) else {
        return Ok(None);
    };
    let l = order as usize;
    let scale = Rational::new(BigInt::one(), &fa.denom * &fb.denom);
    let cols = b.first().map_or(0, Vec::len);
    let mut entries = Vec::with_capacity(a.len());
    let mut acc = vec![0i128; l];
    for row_a in &fa.cells {
        let mut row = Vec::with_capacity(cols);
        for j in 0..cols {
            acc.iter_mut().for_each(|x| *x = 0);
            for (x, row_b) in row_a.iter().zip(&fb.cells) {
                for &(p, u) in x {
                    for &(q, v) in &row_b[j] {
                        let slot = &mut acc[(p + q) % l];
                        let Some(next) = u.checked_mul(v).and_then(|w| slot.checked_add(w)) else {
                            return Ok(None);
                        };
                        *slot = next;
                    }
                }
            }
            let coeffs = acc.iter().map(|&c| Rational::from_integer(c.into()) * &scale).collect();
            row.push(CycNumber::from_coeffs(order, coeffs)?.reduce());
        }
        entries.push(row);
    }
    Ok(Some(entries))
}

/// Rank of a dense matrix by Gaussian elimination; the pivot is the first
/// nonzero entry in row-major order among the remaining rows.
pub fn rank(matrix: &[Vec<CycNumber>]) -> Result<usize> {
    let mut rows: Vec<Vec<CycNumber>> = matrix.iter().map(|r| r.iter().map(CycNumber::reduce).collect()).collect();
    let mut r = 0;
    while r < rows.len() {
        let pivot = (r..rows.len())
            .filter_map(|i| rows[i].iter().position(|x| !x.is_zero()).map(|j| (i, j)))
            .min_by_key(|&(i, j)| (j, i));
        let Some((pi, pj)) = pivot else { break };
        rows.swap(r, pi);
        let inv = rows[r][pj].inverse()?;
        let pivot_row: Vec<CycNumber> = rows[r]
            .iter()
            .map(|x| x.checked_mul(&inv))
            .collect::<Result<_>>()?;
        for row in rows.iter_mut().skip(r + 1) {
            if row[pj].is_zero() {
                continue;
            }
            let f = row[pj].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.checked_sub(&f.checked_mul(p)?)?.reduce();
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    Ok(r)
}

/// `dim 𝒱(S)`: rank of the `in`-normalized cylinder over `S`.
pub fn tqft_dim(surface: &SurfaceTriangulation, alpha: &Cochain3) -> Result<usize> {
    let cyl = GeneralizedTriangulation::cylinder(surface)?;
    cobordism_matrix(&cyl, alpha, Normalization::In)?.rank()
}
