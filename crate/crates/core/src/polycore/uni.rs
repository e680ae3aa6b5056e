//! Dense univariate polynomials in a distinguished variable (`t` or `s`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::dense::zuni;
use super::gcd::{gcd_uni, primitive_uni};
use super::text::format_terms;
use super::PolyError;

/// Minimal ring interface shared by the coefficient domains of [`UniPoly`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn is_ring_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_int(n: i64) -> Self;
}

impl Coefficient for BigRational {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn is_ring_zero(&self) -> bool {
        Zero::is_zero(self)
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
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Coefficient for BigInt {
    fn ring_zero() -> Self {
        Zero::zero()
    }
    fn ring_one() -> Self {
        One::one()
    }
    fn is_ring_zero(&self) -> bool {
        Zero::is_zero(self)
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
        BigInt::from(n)
    }
}

/// Dense polynomial `sum c[k] t^k`; the leading coefficient is nonzero unless
/// the polynomial is zero (empty coefficient vector).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly<C> {
    coeffs: Vec<C>,
}

pub type QPoly = UniPoly<BigRational>;
pub type ZPoly = UniPoly<BigInt>;

impl<C: Coefficient> UniPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_ring_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::ring_one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: C, k: usize) -> Self {
        let mut v = vec![C::ring_zero(); k];
        v.push(c);
        Self::new(v)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(C::ring_one(), 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::ring_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.times(k)).collect())
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

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&C::from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::ring_zero(), |acc, c| acc.times(x).plus(c))
    }

    /// Composition `self(r(s))`.
    pub fn compose(&self, r: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * r) + &Self::constant(c.clone())
        })
    }

    /// Homogenized composition with a rational function `num/den`:
    /// returns `den^k * self(num/den)` where `k = max(deg self, min_power)`.
    pub fn compose_rational(&self, num: &Self, den: &Self, power: usize) -> Self {
        let k = power.max(self.deg0());
        let mut acc = Self::zero();
        let mut num_pow = Self::one();
        let den_pows: Vec<Self> = {
            let mut v = vec![Self::one()];
            for _ in 0..k {
                let next = v.last().unwrap() * den;
                v.push(next);
            }
            v
        };
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_ring_zero() {
                let term = (&num_pow * &den_pows[k - i]).scale(c);
                acc = &acc + &term;
            }
            num_pow = &num_pow * num;
        }
        acc
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> UniPoly<D> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Coefficient> Add for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn add(self, rhs: Self) -> UniPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.plus(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => C::ring_zero(),
                })
                .collect(),
        )
    }
}

impl<C: Coefficient> Sub for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn sub(self, rhs: Self) -> UniPoly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a.minus(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.negated(),
                    (None, None) => C::ring_zero(),
                })
                .collect(),
        )
    }
}

impl<C: Coefficient> Mul for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn mul(self, rhs: Self) -> UniPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![C::ring_zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_ring_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_ring_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        UniPoly::new(out)
    }
}

impl<C: Coefficient> Neg for &UniPoly<C> {
    type Output = UniPoly<C>;
    fn neg(self) -> UniPoly<C> {
        UniPoly::new(self.coeffs.iter().map(|c| c.negated()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coefficient> $tr for UniPoly<C> {
            type Output = UniPoly<C>;
            fn $m(self, rhs: Self) -> UniPoly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

// ---------------------------------------------------------------------------
// Rational coefficients

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QPoly {
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| rat(v)).collect())
    }

    pub fn from_zpoly(z: &ZPoly) -> Self {
        z.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Splits into `(scale, integer polynomial)` with `self = scale * z`,
    /// `z` primitive with positive leading coefficient.
    pub fn to_primitive_integer(&self) -> (BigRational, ZPoly) {
        if self.is_zero() {
            return (BigRational::zero(), ZPoly::zero());
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let prim = primitive_uni(&ints);
        let ratio = BigRational::new(ints.last().unwrap().clone(), prim.last().unwrap().clone());
        (ratio / BigRational::from_integer(den), ZPoly::new(prim))
    }

    /// Primitive integer representative with positive leading coefficient.
    pub fn normalized(&self) -> Self {
        Self::from_zpoly(&self.to_primitive_integer().1)
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    pub fn div_rem(&self, b: &Self) -> Result<(Self, Self), PolyError> {
        let db = b.degree().ok_or(PolyError::DivisionByZero)?;
        let lc_inv = b.lc().unwrap().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        for top in (db..r.len()).rev() {
            if r[top].is_zero() {
                continue;
            }
            let c = &r[top] * &lc_inv;
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[top - db + j] -= &c * bj;
            }
            q[top - db] = c;
        }
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn exact_div(&self, b: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible)
        }
    }

    /// Primitive-normalized GCD; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let a = self.to_primitive_integer().1;
        let b = other.to_primitive_integer().1;
        Self::from_zpoly(&ZPoly::new(gcd_uni(a.coeffs(), b.coeffs())))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        (self * other)
            .exact_div(&g)
            .expect("gcd divides")
            .normalized()
    }

    /// Removes from `self` every irreducible factor it shares with `other`.
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

    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").normalized()
    }

    /// Yun decomposition into coprime squarefree parts with multiplicities,
    /// each part primitive-normalized; the leading constant is dropped.
    pub fn squarefree_parts(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.normalized();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).expect("gcd divides");
        let c = df.exact_div(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).expect("gcd divides");
            d = &d.exact_div(&a).expect("gcd divides") - &b.derivative();
            i += 1;
        }
        out
    }

    /// `sigma` with `sigma^2 = self` and positive leading coefficient, when
    /// one exists over the rationals.
    pub fn exact_sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (scale, _) = self.to_primitive_integer();
        if scale.is_negative() {
            return None;
        }
        let mut sigma = Self::one();
        for (part, m) in self.squarefree_parts() {
            if m % 2 == 1 {
                return None;
            }
            sigma = &sigma * &part.pow(m / 2);
        }
        // self = k * sigma^2 for a positive rational k that must be a square
        let k = self.lc().unwrap() / sigma.lc().unwrap().pow(2);
        let rn = k.numer().sqrt();
        let rd = k.denom().sqrt();
        if &(&rn * &rn) != k.numer() || &(&rd * &rd) != k.denom() {
            return None;
        }
        let root = sigma.scale(&BigRational::new(rn, rd));
        debug_assert_eq!(&root * &root, *self);
        Some(root)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Canonical text in the given variable, highest degree first.
    pub fn to_text(&self, var: &str) -> String {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_ring_zero())
            .map(|(k, c)| {
                let mono = match k {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{k}"),
                };
                (c.clone(), mono)
            });
        format_terms(terms)
    }
}

impl ZPoly {
    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn content(&self) -> BigInt {
        zuni::content(&self.coeffs)
    }

    pub fn exact_div(&self, b: &Self) -> Option<Self> {
        zuni::exact_div(&self.coeffs, &b.coeffs).map(Self::new)
    }

    pub fn is_negative_lc(&self) -> bool {
        self.lc().is_some_and(|c| c.is_negative())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("t"))
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", QPoly::from_zpoly(self).to_text("t"))
    }
}

impl fmt::Debug for UniPoly<super::multi::MultiPoly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*t^{k}"))
            .collect();
        write!(
            f,
            "{}",
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            }
        )
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_examples() {
        let t2 = QPoly::from_ints(&[0, 0, 1]);
        let s1 = QPoly::from_ints(&[1, 1]);
        assert_eq!(t2.compose(&s1), QPoly::from_ints(&[1, 2, 1]));
        let t = QPoly::var();
        let r = QPoly::from_ints(&[5, 3, -2, 1]);
        assert_eq!(t.compose(&r), r);
    }

    #[test]
    fn compose_rational_clears_denominator() {
        // t^2 at (s+1)/(s-1): numerator (s+1)^2, power 2
        let t2 = QPoly::from_ints(&[0, 0, 1]);
        let n = QPoly::from_ints(&[1, 1]);
        let d = QPoly::from_ints(&[-1, 1]);
        assert_eq!(t2.compose_rational(&n, &d, 0), QPoly::from_ints(&[1, 2, 1]));
        // 1 + t at power 2: (s-1)^2 + (s+1)(s-1)
        let p = QPoly::from_ints(&[1, 1]);
        let want = &d.pow(2) + &(&n * &d);
        assert_eq!(p.compose_rational(&n, &d, 2), want);
    }

    #[test]
    fn gcd_and_lcm() {
        let a = QPoly::from_ints(&[1, 0, 1]).pow(2); // (t^2+1)^2
        let b = QPoly::from_ints(&[2, 0, 2]); // 2(t^2+1)
        assert_eq!(a.gcd(&b), QPoly::from_ints(&[1, 0, 1]));
        assert_eq!(a.lcm(&b), a);
    }

    #[test]
    fn primitive_integer_split() {
        let p = QPoly::new(vec![
            BigRational::new(1.into(), 2.into()),
            rat(0),
            BigRational::new((-3).into(), 4.into()),
        ]);
        let (s, z) = p.to_primitive_integer();
        assert_eq!(z, ZPoly::from_i64(&[-2, 0, 3]));
        assert_eq!(QPoly::from_zpoly(&z).scale(&s), p);
    }
}
