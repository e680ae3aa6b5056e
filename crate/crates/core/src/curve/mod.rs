//! Rational plane curves: normalization to a common denominator, hodograph,
//! implicitization, tracing index and rejection of lines and circles.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::polycore::dense::ZPoly2;
use crate::polycore::gcd::gcd as zgcd;
use crate::polycore::{resultant_t, yun_squarefree, MultiPoly, PolyError, QPoly, UniPoly};
use crate::rng;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("the curve is a line")]
    LineRejected,
    #[error("the curve is a circle")]
    CircleRejected,
    #[error("the parametrization is constant")]
    DegenerateRejected,
    #[error("zero denominator in parametrization")]
    ZeroDenominator,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `(p1/q1, p2/q2)` with each fraction reduced and monic denominators.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalParametrization {
    pub p1: QPoly,
    pub q1: QPoly,
    pub p2: QPoly,
    pub q2: QPoly,
}

fn reduce_fraction(p: &QPoly, q: &QPoly) -> Result<(QPoly, QPoly), CurveError> {
    if q.is_zero() {
        return Err(CurveError::ZeroDenominator);
    }
    let g = p.gcd(q);
    let (p, q) = if g.is_constant() {
        (p.clone(), q.clone())
    } else {
        (p.exact_div(&g)?, q.exact_div(&g)?)
    };
    let k = q.lc().unwrap().recip();
    Ok((p.scale(&k), q.scale(&k)))
}

impl RationalParametrization {
    pub fn new(p1: QPoly, q1: QPoly, p2: QPoly, q2: QPoly) -> Result<Self, CurveError> {
        let (p1, q1) = reduce_fraction(&p1, &q1)?;
        let (p2, q2) = reduce_fraction(&p2, &q2)?;
        Ok(RationalParametrization { p1, q1, p2, q2 })
    }

    /// Polynomial parametrization `(x(t), y(t))`.
    pub fn polynomial(x: QPoly, y: QPoly) -> Self {
        Self::new(x, QPoly::one(), y, QPoly::one()).expect("unit denominators")
    }

    /// Point at a parameter value, `None` at a pole.
    pub fn point(&self, t: &BigRational) -> Option<(BigRational, BigRational)> {
        let d1 = self.q1.eval(t);
        let d2 = self.q2.eval(t);
        if d1.is_zero() || d2.is_zero() {
            return None;
        }
        Some((self.p1.eval(t) / d1, self.p2.eval(t) / d2))
    }
}

/// `(X/W, Y/W)` with `gcd(X, Y, W) = 1`, integer coefficients with no common
/// content, and positive leading coefficient of `W`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedParametrization {
    pub x: QPoly,
    pub y: QPoly,
    pub w: QPoly,
}

impl NormalizedParametrization {
    pub fn point(&self, t: &BigRational) -> Option<(BigRational, BigRational)> {
        let w = self.w.eval(t);
        if w.is_zero() {
            return None;
        }
        Some((self.x.eval(t) / &w, self.y.eval(t) / w))
    }

    pub fn point_f64(&self, t: f64) -> (f64, f64) {
        let w = self.w.eval_f64(t);
        (self.x.eval_f64(t) / w, self.y.eval_f64(t) / w)
    }
}

pub fn normalize(rp: &RationalParametrization) -> NormalizedParametrization {
    let w = rp.q1.lcm(&rp.q2);
    let x = &rp.p1 * &w.exact_div(&rp.q1).expect("lcm");
    let y = &rp.p2 * &w.exact_div(&rp.q2).expect("lcm");
    let g = x.gcd(&y).gcd(&w);
    let (x, y, w) = if g.is_constant() {
        (x, y, w)
    } else {
        (
            x.exact_div(&g).unwrap(),
            y.exact_div(&g).unwrap(),
            w.exact_div(&g).unwrap(),
        )
    };
    // one rational scale making all three integral with coprime coefficients
    let all = || x.coeffs().iter().chain(y.coeffs()).chain(w.coeffs());
    let den = all().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let num = all().fold(BigInt::zero(), |a, c| {
        a.gcd(&(c.numer() * (&den / c.denom())))
    });
    let mut k = BigRational::new(den, num);
    if w.lc().unwrap().is_negative() {
        k = -k;
    }
    NormalizedParametrization {
        x: x.scale(&k),
        y: y.scale(&k),
        w: w.scale(&k),
    }
}

/// `U = X'W - XW'`, `V = Y'W - YW'`, `w = U^2 + V^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hodograph {
    pub u: QPoly,
    pub v: QPoly,
    pub w: QPoly,
}

pub fn hodograph(np: &NormalizedParametrization) -> Result<Hodograph, CurveError> {
    let dw = np.w.derivative();
    let u = &(&np.x.derivative() * &np.w) - &(&np.x * &dw);
    let v = &(&np.y.derivative() * &np.w) - &(&np.y * &dw);
    let w = &(&u * &u) + &(&v * &v);
    if w.is_zero() {
        return Err(CurveError::DegenerateRejected);
    }
    Ok(Hodograph { u, v, w })
}

/// Squarefree implicit equation with the tracing index of the
/// parametrization: `constant * f^tracing_index` is the implicitization
/// resultant.
#[derive(Clone, Debug, PartialEq)]
pub struct ImplicitCurve {
    pub f: MultiPoly,
    pub tracing_index: u32,
    pub constant: BigRational,
    pub is_line: bool,
}

/// `c(t) * m(x, y)` as a polynomial in `t`.
pub fn lift(c: &QPoly, m: &MultiPoly) -> UniPoly<MultiPoly> {
    UniPoly::new(c.coeffs().iter().map(|k| m.scale(k)).collect())
}

pub fn implicitize(rp: &RationalParametrization) -> Result<ImplicitCurve, CurveError> {
    let a = &lift(&rp.q1, &MultiPoly::x()) - &lift(&rp.p1, &MultiPoly::one());
    let b = &lift(&rp.q2, &MultiPoly::y()) - &lift(&rp.p2, &MultiPoly::one());
    let res = match resultant_t(&a, &b) {
        Ok(r) => r,
        Err(PolyError::ConstantResultantInputs) => return Err(CurveError::DegenerateRejected),
        Err(e) => return Err(e.into()),
    };
    if res.is_zero() {
        return Err(CurveError::Inconsistent(
            "implicitization resultant vanishes for a reduced parametrization".into(),
        ));
    }
    let dec = yun_squarefree(&res)?;
    if dec.parts.len() != 1 {
        return Err(CurveError::Inconsistent(format!(
            "implicitization resultant has {} squarefree parts",
            dec.parts.len()
        )));
    }
    let (f, n) = dec.parts[0].clone();
    let deg_f = f.total_degree().unwrap_or(0);
    if deg_f == 0 || res.total_degree().unwrap() != n * deg_f {
        return Err(CurveError::Inconsistent("degree ratio mismatch".into()));
    }
    check_vanishes(rp, &f)?;
    Ok(ImplicitCurve {
        is_line: deg_f == 1,
        f,
        tracing_index: n,
        constant: dec.constant,
    })
}

/// Exact check that `f` vanishes at random rational parameter values.
fn check_vanishes(rp: &RationalParametrization, f: &MultiPoly) -> Result<(), CurveError> {
    let mut r = rng::stream("implicitize");
    let mut checked = 0;
    let mut tries = 0;
    while checked < 8 && tries < 200 {
        tries += 1;
        let t = rng::rational(&mut r, 50, 20);
        if let Some((x, y)) = rp.point(&t) {
            if !f.eval(&x, &y).is_zero() {
                return Err(CurveError::Inconsistent(format!(
                    "implicit equation does not vanish at t = {t}"
                )));
            }
            checked += 1;
        }
    }
    Ok(())
}

/// Degree in `s` of `gcd(X(t)W(s) - X(s)W(t), Y(t)W(s) - Y(s)W(t))`.
pub fn tracing_index_by_gcd(np: &NormalizedParametrization) -> Result<u32, CurveError> {
    let x = integer_coeffs(&np.x);
    let y = integer_coeffs(&np.y);
    let w = integer_coeffs(&np.w);
    // rows indexed by t-degree, columns by s-degree
    let cross = |a: &[BigInt], b: &[BigInt]| {
        let n = a.len().max(b.len());
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                rows[i][j] += ai * bj;
                rows[j][i] -= ai * bj;
            }
        }
        ZPoly2::from_rows(rows)
    };
    let gx = cross(&x, &w);
    let gy = cross(&y, &w);
    if gx.is_zero() && gy.is_zero() {
        return Err(CurveError::DegenerateRejected);
    }
    let g = zgcd(&gx, &gy);
    Ok(g.deg_y().unwrap_or(0) as u32)
}

fn integer_coeffs(p: &QPoly) -> Vec<BigInt> {
    p.coeffs()
        .iter()
        .map(|c| {
            assert!(c.is_integer(), "normalized parametrization is integral");
            c.to_integer()
        })
        .collect()
}

/// Tracing index from the implicitization exponent, cross-checked by the
/// two-parameter GCD degree.
pub fn tracing_index(rp: &RationalParametrization) -> Result<u32, CurveError> {
    let ic = implicitize(rp)?;
    let np = normalize(rp);
    let by_gcd = tracing_index_by_gcd(&np)?;
    if by_gcd != ic.tracing_index {
        return Err(CurveError::Inconsistent(format!(
            "tracing index methods disagree: resultant exponent {}, gcd degree {}",
            ic.tracing_index, by_gcd
        )));
    }
    Ok(by_gcd)
}

/// A parametrization accepted as offset input, with its derived data.
#[derive(Clone, Debug)]
pub struct ValidatedCurve {
    pub rp: RationalParametrization,
    pub np: NormalizedParametrization,
    pub hodograph: Hodograph,
    pub implicit: ImplicitCurve,
}

pub fn validate_curve(rp: &RationalParametrization) -> Result<ValidatedCurve, CurveError> {
    let np = normalize(rp);
    let hodograph = hodograph(&np)?;
    let implicit = implicitize(rp)?;
    if implicit.is_line {
        return Err(CurveError::LineRejected);
    }
    if is_circle(&implicit.f) {
        return Err(CurveError::CircleRejected);
    }
    Ok(ValidatedCurve {
        rp: rp.clone(),
        np,
        hodograph,
        implicit,
    })
}

/// `a(x^2 + y^2) + bx + cy + e` with `a != 0`.
fn is_circle(f: &MultiPoly) -> bool {
    if f.total_degree() != Some(2) {
        return false;
    }
    let a = f.coeff(2, 0);
    !a.is_zero() && f.coeff(0, 2) == a && f.coeff(1, 1).is_zero()
}

/// `rp(num(s)/den(s))` with denominators cleared and fractions re-reduced.
pub fn reparametrize(
    rp: &RationalParametrization,
    num: &QPoly,
    den: &QPoly,
) -> Result<RationalParametrization, CurveError> {
    if den.is_zero() {
        return Err(CurveError::ZeroDenominator);
    }
    let g = num.gcd(den);
    let (num, den) = if g.is_constant() {
        (num.clone(), den.clone())
    } else {
        (num.exact_div(&g)?, den.exact_div(&g)?)
    };
    if num.is_constant() && den.is_constant() {
        return Err(CurveError::DegenerateRejected);
    }
    let sub = |p: &QPoly, q: &QPoly| {
        let k = p.deg0().max(q.deg0());
        (
            p.compose_rational(&num, &den, k),
            q.compose_rational(&num, &den, k),
        )
    };
    let (p1, q1) = sub(&rp.p1, &rp.q1);
    let (p2, q2) = sub(&rp.p2, &rp.q2);
    RationalParametrization::new(p1, q1, p2, q2)
}
