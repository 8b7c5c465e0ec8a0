//! Exact arithmetic in cyclotomic fields ℚ(ζₘ).
//!
//! A [`CycNumber`] stores `Σ cⱼ ζₘʲ` as a length-`m` vector of rationals, i.e.
//! an element of the group algebra ℚ[ℤₘ]. Sums stay in that form; reduction
//! modulo the cyclotomic polynomial Φₘ happens only when a canonical form is
//! needed (equality, rendering, division). Two numbers with different root
//! orders are compared and combined in ℚ(ζ_lcm).

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Default cap on root orders (covers ℤₙ cocycles with n ≤ 100).
pub const DEFAULT_ROOT_ORDER_CAP: u64 = 10_000;

static ROOT_ORDER_CAP: AtomicU64 = AtomicU64::new(DEFAULT_ROOT_ORDER_CAP);

/// Current cap on the root order of any [`CycNumber`] produced by arithmetic.
pub fn root_order_cap() -> u64 {
    ROOT_ORDER_CAP.load(Ordering::Relaxed)
}

/// Sets the process-wide root-order cap.
pub fn set_root_order_cap(cap: u64) {
    ROOT_ORDER_CAP.store(cap.max(1), Ordering::Relaxed);
}

pub(crate) fn check_order(m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParameter("root order must be positive".into()));
    }
    let cap = root_order_cap();
    if m > cap {
        return Err(Error::RootOrderOverflow { requested: m, cap });
    }
    Ok(())
}

/// Least common multiple of two root orders, checked against the cap.
pub fn merged_order(a: u64, b: u64) -> Result<u64> {
    let m = a.lcm(&b);
    check_order(m)?;
    Ok(m)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Coefficients (low degree first) of the `m`-th cyclotomic polynomial,
/// computed by exact division of `xᵐ - 1` by `Φ_d` for every proper divisor
/// `d` of `m`. Results are cached.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut poly = vec![BigInt::zero(); m as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[m as usize] = BigInt::one();
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let divisor = cyclotomic_polynomial(d);
        poly = exact_div_monic(&poly, &divisor);
    }
    let poly = Arc::new(poly);
    cache.lock().unwrap().insert(m, poly.clone());
    poly
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|r| r.is_zero()), "division was not exact");
    quot
}

/// An exact element of ℚ(ζₘ).
#[derive(Clone, Debug)]
pub struct CycNumber {
    order: u64,
    coeffs: Vec<Rational>,
}

impl CycNumber {
    pub fn zero(m: u64) -> Result<Self> {
        check_order(m)?;
        Ok(CycNumber {
            order: m,
            coeffs: vec![Rational::zero(); m as usize],
        })
    }

    pub fn one(m: u64) -> Result<Self> {
        Self::root(m, 0)
    }

    /// `ζₘ^(e mod m)`.
    pub fn root(m: u64, e: i64) -> Result<Self> {
        let mut z = Self::zero(m)?;
        let idx = e.rem_euclid(m as i64) as usize;
        z.coeffs[idx] = Rational::one();
        Ok(z)
    }

    pub fn from_rational(m: u64, r: Rational) -> Result<Self> {
        let mut z = Self::zero(m)?;
        z.coeffs[0] = r;
        Ok(z)
    }

    pub fn from_integer(m: u64, n: i64) -> Result<Self> {
        Self::from_rational(m, Rational::from_integer(n.into()))
    }

    /// `Σⱼ coeffs[j] ζₘʲ`; `coeffs.len()` must equal `m`.
    pub fn from_coeffs(m: u64, coeffs: Vec<Rational>) -> Result<Self> {
        check_order(m)?;
        if coeffs.len() != m as usize {
            return Err(Error::InvalidParameter(format!(
                "{} coefficients, expected {m}",
                coeffs.len()
            )));
        }
        Ok(CycNumber { order: m, coeffs })
    }

    /// `Σⱼ counts[j] ζₘʲ`; `counts.len()` must equal `m`.
    pub fn from_histogram(m: u64, counts: &[BigInt]) -> Result<Self> {
        check_order(m)?;
        if counts.len() != m as usize {
            return Err(Error::InvalidParameter(format!(
                "histogram has {} buckets, expected {m}",
                counts.len()
            )));
        }
        Ok(CycNumber {
            order: m,
            coeffs: counts.iter().map(|c| Rational::from_integer(c.clone())).collect(),
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Raw group-algebra coefficients (not necessarily canonical).
    pub fn raw_coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Embeds into ℚ(ζ_new) where `new` is a multiple of the current order.
    pub fn lift(&self, new: u64) -> Result<Self> {
        if new % self.order != 0 {
            return Err(Error::InvalidParameter(format!(
                "cannot embed root order {} into {new}",
                self.order
            )));
        }
        if new == self.order {
            return Ok(self.clone());
        }
        let step = (new / self.order) as usize;
        let mut z = Self::zero(new)?;
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                z.coeffs[j * step] = c.clone();
            }
        }
        Ok(z)
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        let m = merged_order(self.order, other.order)?;
        Ok((self.lift(m)?, other.lift(m)?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.order == other.order {
            let mut z = self.clone();
            z.add_assign_same(other);
            return Ok(z);
        }
        let (mut a, b) = self.aligned(other)?;
        a.add_assign_same(&b);
        Ok(a)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    fn add_assign_same(&mut self, other: &Self) {
        debug_assert_eq!(self.order, other.order);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    pub fn neg(&self) -> Self {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Product in ℚ[ℤₘ] (exponents add mod `m`), reduced afterwards so that
    /// repeated products stay short.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = if self.order == other.order {
            (self.clone(), other.clone())
        } else {
            self.aligned(other)?
        };
        let m = a.order as usize;
        let nz_b: Vec<(usize, &Rational)> = b
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut out = vec![Rational::zero(); m];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for &(j, cb) in &nz_b {
                out[(i + j) % m] += ca * cb;
            }
        }
        Ok(CycNumber {
            order: a.order,
            coeffs: out,
        }
        .reduce())
    }

    /// Canonical representative modulo Φₘ: all coefficients at index
    /// `≥ φ(m)` are zero.
    pub fn reduce(&self) -> Self {
        let m = self.order as usize;
        let phi = cyclotomic_polynomial(self.order);
        let d = phi.len() - 1;
        let mut c = self.coeffs.clone();
        for k in (d..m).rev() {
            if c[k].is_zero() {
                continue;
            }
            let t = std::mem::replace(&mut c[k], Rational::zero());
            for (j, pj) in phi.iter().take(d).enumerate() {
                if !pj.is_zero() {
                    c[k - d + j] -= &t * Rational::from_integer(pj.clone());
                }
            }
        }
        CycNumber {
            order: self.order,
            coeffs: c,
        }
    }

    /// The `φ(m)` coefficients of the canonical form.
    pub fn canonical_coeffs(&self) -> Vec<Rational> {
        let d = totient(self.order) as usize;
        let mut r = self.reduce().coeffs;
        r.truncate(d);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.canonical_coeffs().iter().all(|c| c.is_zero())
    }

    /// The value as a rational if the canonical form is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        let c = self.canonical_coeffs();
        if c.iter().skip(1).all(|x| x.is_zero()) {
            Some(c.into_iter().next().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm against Φₘ.
    pub fn inverse(&self) -> Result<Self> {
        let a = trim(self.canonical_coeffs());
        if a.is_empty() {
            return Err(Error::InvalidParameter("division by zero".into()));
        }
        let phi: Vec<Rational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // invariant: s_i * a ≡ r_i (mod Φ)
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1) = (Vec::<Rational>::new(), vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Φ is irreducible, so the last nonzero remainder is a constant.
        let c = r1[0].clone();
        debug_assert!(!c.is_zero());
        let inv_c = c.recip();
        let mut z = Self::zero(self.order)?;
        for (j, sj) in s1.iter().enumerate() {
            z.coeffs[j % self.order as usize] += sj * &inv_c;
        }
        Ok(z.reduce())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inverse()?)
    }

    /// Floating-point value, for display and sanity checks only.
    pub fn to_complex_approx(&self) -> (f64, f64) {
        let m = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * j as f64 / m;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }

    /// Canonical text: `<num>/<den>` when rational, otherwise
    /// `(<num>/<den>) * [c_0, ..., c_{φ(m)-1}] zeta:<m>` with integer `c_i`
    /// whose gcd is 1 and whose first nonzero entry is positive.
    pub fn render(&self) -> String {
        if let Some(r) = self.as_rational() {
            return format!("{}/{}", r.numer(), r.denom());
        }
        let coeffs = self.canonical_coeffs();
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let body: Vec<String> = ints.iter().map(|c| (c / &g).to_string()).collect();
        format!("({g}/{den}) * [{}] zeta:{}", body.join(", "), self.order)
    }

    /// Decimal approximation with 12 significant digits, for humans.
    pub fn approx_string(&self) -> String {
        let (mut re, mut im) = self.to_complex_approx();
        let scale = re.abs().max(im.abs()).max(1.0);
        if re.abs() <= 1e-12 * scale {
            re = 0.0;
        }
        if im.abs() <= 1e-12 * scale {
            im = 0.0;
        }
        if im == 0.0 {
            format_significant(re)
        } else {
            let sign = if im < 0.0 { '-' } else { '+' };
            format!("{}{}{}i", format_significant(re), sign, format_significant(im.abs()))
        }
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        let m = self.order.lcm(&other.order);
        let (Ok(a), Ok(b)) = (self.lift(m), other.lift(m)) else {
            return false;
        };
        a.canonical_coeffs() == b.canonical_coeffs()
    }
}

impl Eq for CycNumber {}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn format_significant(x: f64) -> String {
    if x == 0.0 {
        return "0.0".into();
    }
    let digits = x.abs().log10().floor() as i32 + 1;
    let decimals = (12 - digits).max(1) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') && !s.ends_with(".0") {
            s.pop();
        }
    }
    if s == "-0.0" {
        s = "0.0".into();
    }
    s
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let den = trim(den.to_vec());
    let mut rem = trim(num.to_vec());
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead = den.last().unwrap().clone();
    let mut quot = vec![Rational::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let c = rem.last().unwrap() / &lead;
        for (j, d) in den.iter().enumerate() {
            rem[shift + j] -= &c * d;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 = |m| {
            cyclotomic_polynomial(m)
                .iter()
                .map(|c| c.to_i64().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(9), vec![1, 0, 0, 1, 0, 0, 1]);
        for m in 1..=64 {
            assert_eq!(cyclotomic_polynomial(m).len() as u64 - 1, totient(m));
        }
    }

    #[test]
    fn roots() {
        let minus_one = CycNumber::from_integer(1, -1).unwrap();
        assert_eq!(CycNumber::root(4, 2).unwrap(), minus_one);
        assert_eq!(CycNumber::root(4, 2).unwrap().as_rational(), Some(q(-1, 1)));
        assert_eq!(CycNumber::root(7, 0).unwrap().as_rational(), Some(q(1, 1)));
        // Φ₆ = x² - x + 1: x³ = x·x² = x(x - 1) = x² - x = -1
        assert_eq!(CycNumber::root(6, 3).unwrap().as_rational(), Some(q(-1, 1)));
        assert_eq!(CycNumber::root(2, 1).unwrap().as_rational(), Some(q(-1, 1)));
        assert!(matches!(CycNumber::root(0, 1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn field_operations() {
        let z = CycNumber::root(4, 1).unwrap();
        let z3 = CycNumber::root(4, 3).unwrap();
        assert_eq!(z.checked_mul(&z3).unwrap().as_rational(), Some(q(1, 1)));
        let sum = z.checked_add(&z3).unwrap();
        assert!(sum.is_zero());
        let two = CycNumber::from_integer(4, 2).unwrap();
        assert_eq!(sum.checked_add(&two).unwrap().as_rational(), Some(q(2, 1)));
        let four = CycNumber::from_integer(1, 4).unwrap();
        assert_eq!(four.scale(&q(1, 4)).as_rational(), Some(q(1, 1)));
        assert_eq!(CycNumber::root(3, 1).unwrap().as_rational(), None);
        assert_eq!(CycNumber::zero(5).unwrap().as_rational(), Some(q(0, 1)));
    }

    #[test]
    fn geometric_sums_vanish() {
        for m in 2..=64 {
            let mut s = CycNumber::zero(m).unwrap();
            for j in 0..m as i64 {
                s = s.checked_add(&CycNumber::root(m, j).unwrap()).unwrap();
            }
            assert!(s.is_zero(), "m = {m}");
        }
    }

    #[test]
    fn root_multiplication_adds_exponents() {
        for m in 1..=16u64 {
            for a in 0..m as i64 {
                for b in 0..m as i64 {
                    let lhs = CycNumber::root(m, a)
                        .unwrap()
                        .checked_mul(&CycNumber::root(m, b).unwrap())
                        .unwrap();
                    assert_eq!(lhs, CycNumber::root(m, a + b).unwrap());
                }
            }
        }
    }

    #[test]
    fn mixed_orders_embed() {
        // ζ₄ = ζ₈², and i·i = -1 in either presentation
        let i4 = CycNumber::root(4, 1).unwrap();
        let i8 = CycNumber::root(8, 2).unwrap();
        assert_eq!(i4, i8);
        let prod = i4.checked_mul(&i8).unwrap();
        assert_eq!(prod.order(), 8);
        assert_eq!(prod.as_rational(), Some(q(-1, 1)));
        // ζ₃ + ζ₂ lives in ℚ(ζ₆)
        let s = CycNumber::root(3, 1)
            .unwrap()
            .checked_add(&CycNumber::root(2, 1).unwrap())
            .unwrap();
        assert_eq!(s.order(), 6);
    }

    #[test]
    fn cap_is_enforced() {
        let a = CycNumber::root(9_973, 1).unwrap();
        let b = CycNumber::root(2, 1).unwrap();
        assert!(matches!(
            a.checked_mul(&b),
            Err(Error::RootOrderOverflow { requested: 19_946, .. })
        ));
    }

    #[test]
    fn inverses() {
        for m in [3u64, 4, 5, 8, 9, 12] {
            let x = CycNumber::root(m, 1)
                .unwrap()
                .checked_add(&CycNumber::from_integer(m, 3).unwrap())
                .unwrap();
            let inv = x.inverse().unwrap();
            assert_eq!(x.checked_mul(&inv).unwrap().as_rational(), Some(q(1, 1)));
        }
        assert!(CycNumber::zero(4).unwrap().inverse().is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(CycNumber::from_integer(9, 9).unwrap().render(), "9/1");
        assert_eq!(CycNumber::from_rational(4, q(-3, 6)).unwrap().render(), "-1/2");
        let x = CycNumber::root(4, 1).unwrap().scale(&q(-2, 3));
        assert_eq!(x.render(), "(-2/3) * [0, 1] zeta:4");
        let y = CycNumber::root(3, 1)
            .unwrap()
            .scale(&q(1, 2))
            .checked_add(&CycNumber::from_rational(3, q(1, 3)).unwrap())
            .unwrap();
        assert_eq!(y.render(), "(1/6) * [2, 3] zeta:3");
        assert_eq!(CycNumber::from_integer(1, 9).unwrap().approx_string(), "9.0");
        assert_eq!(CycNumber::root(4, 1).unwrap().approx_string(), "0.0+1.0i");
    }

    #[test]
    fn reduce_is_idempotent_and_value_preserving() {
        for m in [5u64, 12, 30, 64] {
            let mut x = CycNumber::zero(m).unwrap();
            for j in 0..m as i64 {
                let r = CycNumber::root(m, j).unwrap().scale(&q(j * j % 7 - 3, 1 + j % 4));
                x = x.checked_add(&r).unwrap();
            }
            let r1 = x.reduce();
            assert_eq!(r1.reduce().raw_coeffs(), r1.raw_coeffs());
            let (a, b) = (x.to_complex_approx(), r1.to_complex_approx());
            assert!((a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9);
        }
    }
}
