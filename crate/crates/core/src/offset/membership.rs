//! Exact tests of whether a polynomial vanishes on the offset, and a degree
//! certificate based on sections by a random line.
//!
//! Offset points are `(X/W + e d V/s, Y/W - e d U/s)` with `s^2 = U^2 + V^2`.
//! Membership substitutes them symbolically: modulo `s^2 - w` in general,
//! or with `s = sigma` when `w = sigma^2` has a rational square root (the two
//! branches are then separate curves and are tested one at a time).

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::polycore::{MultiPoly, QPoly, ZPoly};
use crate::rng;

use super::OffsetProblem;

/// Integer data of an offset problem; `d = a / b`.
pub(crate) struct IntegerData {
    pub x: ZPoly,
    pub y: ZPoly,
    pub w: ZPoly,
    pub u: ZPoly,
    pub v: ZPoly,
    pub speed2: ZPoly,
    pub a: BigInt,
    pub b: BigInt,
    /// Integer square root of `speed2` and the matching distance, when `speed2`
    /// is a perfect square: `d / r = a_ph / b_ph` for `sigma = r * sigma_z`.
    pub ph: Option<(ZPoly, BigInt, BigInt)>,
}

fn to_z(p: &QPoly) -> ZPoly {
    p.map(|c| {
        assert!(c.is_integer(), "integral parametrization");
        c.to_integer()
    })
}

impl IntegerData {
    pub fn new(op: &OffsetProblem) -> Self {
        let np = &op.curve.np;
        let h = &op.curve.hodograph;
        let ph = h.w.exact_sqrt().map(|sigma| {
            let (r, sz) = sigma.to_primitive_integer();
            let dd = &op.d / r;
            (sz, dd.numer().clone(), dd.denom().clone())
        });
        IntegerData {
            x: to_z(&np.x),
            y: to_z(&np.y),
            w: to_z(&np.w),
            u: to_z(&h.u),
            v: to_z(&h.v),
            speed2: to_z(&h.w),
            a: op.d.numer().clone(),
            b: op.d.denom().clone(),
            ph,
        }
    }
}

/// Commutative ring in which a branch of the offset is evaluated.
trait Ring: Clone {
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, k: &BigInt) -> Self;
    fn one(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for ZPoly {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, k: &BigInt) -> Self {
        ZPoly::scale(self, k)
    }
    fn one(&self) -> Self {
        ZPoly::one()
    }
    fn is_zero(&self) -> bool {
        ZPoly::is_zero(self)
    }
}

/// `a + b s` in `Z[t][s] / (s^2 - w)`.
#[derive(Clone)]
struct Quad {
    a: ZPoly,
    b: ZPoly,
    w: Arc<ZPoly>,
}

impl Ring for Quad {
    fn add(&self, o: &Self) -> Self {
        Quad {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            w: self.w.clone(),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let bb = &self.b * &o.b;
        Quad {
            a: &(&self.a * &o.a) + &(&bb * &*self.w),
            b: &(&self.a * &o.b) + &(&self.b * &o.a),
            w: self.w.clone(),
        }
    }
    fn scale(&self, k: &BigInt) -> Self {
        Quad {
            a: self.a.scale(k),
            b: self.b.scale(k),
            w: self.w.clone(),
        }
    }
    fn one(&self) -> Self {
        Quad {
            a: ZPoly::one(),
            b: ZPoly::zero(),
            w: self.w.clone(),
        }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

fn powers<R: Ring>(base: &R, n: usize) -> Vec<R> {
    let mut out = vec![base.one()];
    for i in 0..n {
        out.push(out[i].mul(base));
    }
    out
}

/// `D^k * g(nx / D, ny / D)` with `k = deg g`; `g` must have integer
/// coefficients.
fn homogenized<R: Ring>(g: &MultiPoly, nx: &R, ny: &R, den: &R) -> R {
    let k = g.total_degree().unwrap_or(0) as usize;
    let px = powers(nx, g.deg_x().unwrap_or(0) as usize);
    let py = powers(ny, g.deg_y().unwrap_or(0) as usize);
    let pd = powers(den, k);
    let mut acc: Option<R> = None;
    for (m, c) in g.terms() {
        let c = c.to_integer();
        let term = px[m.x as usize]
            .mul(&py[m.y as usize])
            .mul(&pd[k - m.degree() as usize])
            .scale(&c);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    acc.unwrap_or_else(|| nx.one().scale(&BigInt::zero()))
}

/// True iff `g` vanishes identically on at least one branch of the offset.
pub(crate) fn vanishes_on_offset(data: &IntegerData, g: &MultiPoly) -> bool {
    if g.is_constant() {
        return g.is_zero();
    }
    let g = g.normalized();
    let vw = &data.v * &data.w;
    let uw = &data.u * &data.w;
    for eps in [1i64, -1] {
        let e = BigInt::from(eps);
        let hit = match &data.ph {
            Some((sigma, a, b)) => {
                let nx = &(&data.x * sigma).scale(b) + &vw.scale(&(a * &e));
                let ny = &(&data.y * sigma).scale(b) - &uw.scale(&(a * &e));
                let den = (&data.w * sigma).scale(b);
                homogenized(&g, &nx, &ny, &den).is_zero()
            }
            None => {
                let w = Arc::new(data.speed2.clone());
                let q = |a: ZPoly, b: ZPoly| Quad { a, b, w: w.clone() };
                let nx = q(vw.scale(&(&data.a * &e)), data.x.scale(&data.b));
                let ny = q(uw.scale(&(-&data.a * &e)), data.y.scale(&data.b));
                let den = q(ZPoly::zero(), data.w.scale(&data.b));
                homogenized(&g, &nx, &ny, &den).is_zero()
            }
        };
        if hit {
            return true;
        }
    }
    false
}

/// Offset points on the line `alpha x + beta y = gamma`.
pub(crate) struct LineSection {
    /// Parameter polynomial whose roots give the offset points on the line,
    /// with excluded roots removed.
    roots: QPoly,
    nx: ZPoly,
    ny: ZPoly,
    den: ZPoly,
}

impl LineSection {
    pub fn new(data: &IntegerData, alpha: &BigInt, beta: &BigInt, gamma: &BigInt) -> Option<Self> {
        let a_lin = &(&data.x.scale(alpha) + &data.y.scale(beta)) - &data.w.scale(gamma);
        let l = &data.v.scale(alpha) - &data.u.scale(beta);
        let k = &(&data.speed2 * &(&a_lin * &a_lin)).scale(&(&data.b * &data.b))
            - &(&(&data.w * &data.w) * &(&l * &l)).scale(&(&data.a * &data.a));
        if k.is_zero() || a_lin.is_zero() || l.is_zero() {
            return None;
        }
        let excluded = QPoly::from_zpoly(&(&(&a_lin * &data.w) * &data.speed2));
        let roots = QPoly::from_zpoly(&k).remove_factors_of(&excluded);
        Some(LineSection {
            roots,
            nx: &(&data.x * &l) - &(&data.v * &a_lin),
            ny: &(&data.y * &l) + &(&data.u * &a_lin),
            den: &data.w * &l,
        })
    }

    /// Number of section roots, with multiplicity, at which `g` vanishes.
    pub fn count(&self, g: &MultiPoly) -> usize {
        let r = QPoly::from_zpoly(&homogenized(&g.normalized(), &self.nx, &self.ny, &self.den));
        if r.is_zero() {
            return self.roots.deg0();
        }
        let mut h = self.roots.clone();
        let mut count = 0;
        loop {
            let c = h.gcd(&r);
            if c.is_constant() {
                return count;
            }
            count += c.deg0();
            h = h.exact_div(&c).expect("gcd divides");
        }
    }
}

/// Random lines used by the degree certificate, fixed per problem.
pub(crate) fn certificate_lines(data: &IntegerData, count: usize) -> Vec<LineSection> {
    let mut r = rng::stream("line-section");
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 50 {
        tries += 1;
        let alpha = BigInt::from(r.gen_range(1..=97i64));
        let beta = BigInt::from(r.gen_range(-97..=97i64));
        let gamma = BigInt::from(r.gen_range(-997..=997i64));
        if beta.is_zero() {
            continue;
        }
        if let Some(s) = LineSection::new(data, &alpha, &beta, &gamma) {
            out.push(s);
        }
    }
    out
}

/// A squarefree part of multiplicity `m` consisting only of offset components
/// meets a generic line in `deg g` points, each generated by exactly `m`
/// parameter values. Extraneous factors contribute no generated points, so
/// any of them hidden in `g` makes the count fall short.
pub(crate) fn degree_certificate(lines: &[LineSection], g: &MultiPoly, m: u32) -> bool {
    let deg = g.total_degree().unwrap_or(0) as usize;
    lines.iter().any(|l| l.count(g) == m as usize * deg)
}
