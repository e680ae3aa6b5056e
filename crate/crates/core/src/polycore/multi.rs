//! Sparse bivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::dense::ZPoly2;
use super::gcd;
use super::text::{format_terms, monomial_text, parse_multi};
use super::uni::Coefficient;
use super::PolyError;

/// Exponent pair `x^x * y^y`, ordered graded-lexicographically with `x > y`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(self) -> u32 {
        self.x + self.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `x, y`; the map never stores zero coefficients. Iteration
/// order is ascending, so the leading term is the last entry.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn term(c: BigRational, x: u32, y: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(x, y), c);
        }
        MultiPoly { terms }
    }

    pub fn x() -> Self {
        Self::term(BigRational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::term(BigRational::one(), 0, 1)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, x: u32, y: u32) -> BigRational {
        self.terms
            .get(&Monomial::new(x, y))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_constant() {
            Some(self.coeff(0, 0))
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.y).max()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn diff_x(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| m.x > 0).map(|(m, c)| {
            (
                Monomial::new(m.x - 1, m.y),
                c * BigRational::from_integer(m.x.into()),
            )
        }))
    }

    pub fn diff_y(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|(m, _)| m.y > 0).map(|(m, c)| {
            (
                Monomial::new(m.x, m.y - 1),
                c * BigRational::from_integer(m.y.into()),
            )
        }))
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x0: &BigRational, y0: &BigRational) -> BigRational {
        let dx = self.deg_x().unwrap_or(0) as usize;
        let dy = self.deg_y().unwrap_or(0) as usize;
        let xp = powers(x0, dx);
        let yp = powers(y0, dy);
        self.terms.iter().fold(BigRational::zero(), |acc, (m, c)| {
            acc + c * &xp[m.x as usize] * &yp[m.y as usize]
        })
    }

    /// Substitutes `y = y0`, leaving a polynomial in `x` only.
    pub fn subs_y(&self, y0: &BigRational) -> Self {
        let yp = powers(y0, self.deg_y().unwrap_or(0) as usize);
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.x, 0), c * &yp[m.y as usize])),
        )
    }

    /// Floating evaluation by compensated Horner: rows in `y` first, then `x`.
    pub fn eval_f64(&self, x0: f64, y0: f64) -> f64 {
        let dx = self.deg_x().unwrap_or(0) as usize;
        let dy = self.deg_y().unwrap_or(0) as usize;
        let mut rows = vec![vec![0.0f64; dy + 1]; dx + 1];
        for (m, c) in &self.terms {
            rows[m.x as usize][m.y as usize] = c.to_f64().unwrap_or(f64::NAN);
        }
        let vals: Vec<(f64, f64)> = rows.iter().map(|r| comp_horner(r, y0, None)).collect();
        let hi: Vec<f64> = vals.iter().map(|v| v.0).collect();
        let lo: Vec<f64> = vals.iter().map(|v| v.1).collect();
        let (s, c) = comp_horner(&hi, x0, Some(&lo));
        s + c
    }

    pub fn max_abs_coeff_f64(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    /// `(d, z)` with `d * self = z` and `z` integral (`d > 0` minimal).
    pub fn to_integer(&self) -> (BigInt, ZPoly2) {
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let dx = self.deg_x().unwrap_or(0) as usize;
        let dy = self.deg_y().unwrap_or(0) as usize;
        let mut rows = vec![vec![BigInt::zero(); dy + 1]; dx + 1];
        for (m, c) in &self.terms {
            rows[m.x as usize][m.y as usize] = (c.numer() * &den) / c.denom();
        }
        (den, ZPoly2::from_rows(rows))
    }

    pub fn from_zpoly(z: &ZPoly2) -> Self {
        let mut terms = BTreeMap::new();
        for (i, row) in z.rows().iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    terms.insert(
                        Monomial::new(i as u32, j as u32),
                        BigRational::from_integer(c.clone()),
                    );
                }
            }
        }
        MultiPoly { terms }
    }

    /// `(c, q)` with `self = c * q`, `q` having primitive integer coefficients
    /// and positive leading coefficient. Zero maps to `(0, 0)`.
    pub fn canonical(&self) -> (BigRational, MultiPoly) {
        if self.is_zero() {
            return (BigRational::zero(), MultiPoly::zero());
        }
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = self.terms.values().fold(BigInt::zero(), |g, c| {
            g.gcd(&(c.numer() * (&den / c.denom())))
        });
        let mut c = BigRational::new(num, den);
        if self.leading().unwrap().1.is_negative() {
            c = -c;
        }
        let inv = c.recip();
        (c, self.scale(&inv))
    }

    pub fn normalized(&self) -> MultiPoly {
        self.canonical().1
    }

    pub fn is_canonical(&self) -> bool {
        !self.is_zero() && self.canonical().0.is_one()
    }

    /// Canonical GCD; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (_, a) = self.to_integer();
        let (_, b) = other.to_integer();
        Self::from_zpoly(&gcd::gcd(&a, &b)).normalized()
    }

    /// Exact quotient, or `None` when `b` does not divide `self`.
    pub fn exact_div(&self, b: &Self) -> Option<Self> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (ca, pa) = self.canonical();
        let (cb, pb) = b.canonical();
        let (_, za) = pa.to_integer();
        let (_, zb) = pb.to_integer();
        let q = za.exact_div(&zb)?;
        Some(Self::from_zpoly(&q).scale(&(ca / cb)))
    }

    /// Removes every squarefree factor shared with `other`, at full power.
    pub fn remove_factors_of(&self, other: &Self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut cur = self.clone();
        loop {
            let g = cur.gcd(other);
            if g.is_constant() {
                return cur;
            }
            cur = cur.exact_div(&g).expect("gcd divides");
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&BigRational) -> BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

fn powers(v: &BigRational, n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigRational::one());
    for i in 0..n {
        out.push(&out[i] * v);
    }
    out
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Compensated Horner on ascending coefficients; `lo` carries optional
/// low-order parts of the coefficients. Returns `(value, correction)`.
fn comp_horner(a: &[f64], x: f64, lo: Option<&[f64]>) -> (f64, f64) {
    let n = a.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let low = |i: usize| lo.map_or(0.0, |l| l[i]);
    let mut s = a[n - 1];
    let mut c = low(n - 1);
    for i in (0..n - 1).rev() {
        let (p, pi) = two_prod(s, x);
        let (ns, sigma) = two_sum(p, a[i]);
        s = ns;
        c = c * x + (pi + sigma) + low(i);
    }
    (s, c)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: Self) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: Self) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: Self) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(Monomial::new(ma.x + mb.x, ma.y + mb.y), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Coefficient for MultiPoly {
    fn ring_zero() -> Self {
        MultiPoly::zero()
    }
    fn ring_one() -> Self {
        MultiPoly::one()
    }
    fn is_ring_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_int(n: i64) -> Self {
        MultiPoly::from_int(n)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_terms(
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| (c.clone(), monomial_text(*m))),
        );
        f.write_str(&s)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MultiPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        parse_multi(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn graded_lex_order() {
        let q = p("y^3 + x*y + x^2 + 1");
        assert_eq!(q.to_string(), "y^3 + x^2 + x*y + 1");
        assert_eq!(q.leading().unwrap().0, &Monomial::new(0, 3));
    }

    #[test]
    fn canonical_form() {
        let q = p("-2/3*x^2 + 4/3*y");
        let (c, n) = q.canonical();
        assert_eq!(n, p("x^2 - 2*y"));
        assert_eq!(n.scale(&c), q);
        assert_eq!(n.canonical().1, n);
    }

    #[test]
    fn evaluation() {
        let q = p("x^2 - 4*y");
        let r = |n: i64| BigRational::from_integer(n.into());
        assert!(q.eval(&r(2), &r(1)).is_zero());
        let g = p("x^2 + y^2 + 4*y + 4");
        assert!(g.eval(&r(0), &r(-2)).is_zero());
        assert!(MultiPoly::zero().eval(&r(3), &r(7)).is_zero());
        assert_eq!(g.eval_f64(1.5, -0.5), 1.5f64.powi(2) + 0.25 - 2.0 + 4.0);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p("x^2 - y^2").gcd(&p("x - y")), p("x - y"));
        assert_eq!(p("3*x - 6").gcd(&MultiPoly::zero()), p("x - 2"));
        let a = &p("x + 1").pow(2) * &p("x - 1");
        let b = &p("x + 1") * &p("x - 2");
        assert_eq!(a.gcd(&b), p("x + 1"));
    }

    #[test]
    fn exact_division() {
        let a = &p("1/2*x + y") * &p("x^2 - 3*y");
        assert_eq!(a.exact_div(&p("x^2 - 3*y")).unwrap(), p("1/2*x + y"));
        assert!(a.exact_div(&p("x - 1")).is_none());
    }
}
