//! Resultants with respect to `t` under the Sylvester-determinant convention.
//!
//! Bivariate coefficients: denominators are cleared, then the integer
//! resultant is recovered from images on an `(x, y)` evaluation grid modulo
//! enough primes to cover a Hadamard-type coefficient bound. Every image is
//! computed with the formal degrees of the inputs, so evaluation commutes with
//! the resultant and no image is ever discarded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;

use super::dense::{zuni, ZPoly2};
use super::modular::{self, prime, Crt, Fp, PRIME_BITS};
use super::multi::MultiPoly;
use super::uni::{QPoly, UniPoly};
use super::PolyError;

/// `Res_t(p, q)`: the Sylvester determinant of `p` and `q` as polynomials in
/// `t`. Returns zero (not an error) when they share a factor.
pub fn resultant_t(p: &UniPoly<MultiPoly>, q: &UniPoly<MultiPoly>) -> Result<MultiPoly, PolyError> {
    let (m, n) = match (p.degree(), q.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(PolyError::ZeroInput("resultant")),
    };
    if m == 0 && n == 0 {
        return Err(PolyError::ConstantResultantInputs);
    }
    if m == 0 {
        return Ok(p.coeffs()[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(q.coeffs()[0].pow(m as u32));
    }
    let (lp, zp) = integer_coeffs(p);
    let (lq, zq) = integer_coeffs(q);
    let r = modular_resultant(&zp, &zq);
    let scale = BigRational::from_integer(Pow::pow(&lp, n) * Pow::pow(&lq, m));
    Ok(MultiPoly::from_zpoly(&r).scale(&scale.recip()))
}

/// Common denominator `L` and the integer coefficients of `L * p`.
fn integer_coeffs(p: &UniPoly<MultiPoly>) -> (BigInt, Vec<ZPoly2>) {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(&c.to_integer().0));
    let lr = BigRational::from_integer(l.clone());
    let z = p
        .coeffs()
        .iter()
        .map(|c| c.scale(&lr).to_integer().1)
        .collect();
    (l, z)
}

fn max_deg(cs: &[ZPoly2], f: impl Fn(&ZPoly2) -> Option<usize>) -> usize {
    cs.iter().filter_map(f).max().unwrap_or(0)
}

/// Resultant of integer polynomials in `t` with coefficients in `Z[x, y]`.
/// Both inputs have positive degree in `t` and nonzero leading coefficient.
fn modular_resultant(p: &[ZPoly2], q: &[ZPoly2]) -> ZPoly2 {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let dx = n * max_deg(p, ZPoly2::deg_x) + m * max_deg(q, ZPoly2::deg_x);
    let dy = n * max_deg(p, ZPoly2::deg_y) + m * max_deg(q, ZPoly2::deg_y);

    // Each Sylvester row contributes at most the 1-norm of its polynomial.
    let norm_p: BigInt = p.iter().map(ZPoly2::norm1).sum();
    let norm_q: BigInt = q.iter().map(ZPoly2::norm1).sum();
    let bound = Pow::pow(&norm_p, n) * Pow::pow(&norm_q, m);
    let need_bits = modular::bits(&bound) + 2;
    let nprimes = need_bits.div_ceil(PRIME_BITS) as usize;

    let images: Vec<Vec<u64>> = (0..nprimes)
        .into_par_iter()
        .map(|i| image(Fp::new(prime(i)), p, q, dx, dy))
        .collect();

    let width = dy + 1;
    let mut crt = Crt::new((dx + 1) * width);
    for (i, img) in images.iter().enumerate() {
        crt.push(Fp::new(prime(i)), img);
    }
    let flat = crt.symmetric();
    let rows: Vec<Vec<BigInt>> = flat.chunks(width).map(|c| c.to_vec()).collect();
    ZPoly2::from_rows(rows)
}

/// Coefficients of the resultant modulo one prime, flattened as
/// `[x-degree * (dy + 1) + y-degree]`.
fn image(f: Fp, p: &[ZPoly2], q: &[ZPoly2], dx: usize, dy: usize) -> Vec<u64> {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let rp: Vec<Vec<Vec<u64>>> = p.iter().map(|c| c.reduce(f)).collect();
    let rq: Vec<Vec<Vec<u64>>> = q.iter().map(|c| c.reduce(f)).collect();
    let xs: Vec<u64> = (0..=dx as u64).collect();
    let ys: Vec<u64> = (0..=dy as u64).collect();

    // grid[iy] = resultant values along x at y = iy, interpolated into x-coefficients
    let mut by_y: Vec<Vec<u64>> = Vec::with_capacity(dy + 1);
    let mut a = vec![0u64; m + 1];
    let mut b = vec![0u64; n + 1];
    for &y0 in &ys {
        let px: Vec<Vec<u64>> = rp.iter().map(|c| ZPoly2::eval_y_mod(c, f, y0)).collect();
        let qx: Vec<Vec<u64>> = rq.iter().map(|c| ZPoly2::eval_y_mod(c, f, y0)).collect();
        let mut vals = Vec::with_capacity(dx + 1);
        for &x0 in &xs {
            for (k, c) in px.iter().enumerate() {
                a[k] = modular::eval(f, c, x0);
            }
            for (k, c) in qx.iter().enumerate() {
                b[k] = modular::eval(f, c, x0);
            }
            let mut at = a.clone();
            let mut bt = b.clone();
            modular::trim(&mut at);
            modular::trim(&mut bt);
            vals.push(modular::resultant_formal(f, &at, m, &bt, n));
        }
        let mut cx = modular::interpolate(f, &xs, &vals);
        cx.resize(dx + 1, 0);
        by_y.push(cx);
    }

    let width = dy + 1;
    let mut out = vec![0u64; (dx + 1) * width];
    let mut col = vec![0u64; dy + 1];
    for i in 0..=dx {
        for (j, row) in by_y.iter().enumerate() {
            col[j] = row[i];
        }
        let cy = modular::interpolate(f, &ys, &col);
        for (j, &c) in cy.iter().enumerate() {
            out[i * width + j] = c;
        }
    }
    out
}

/// Univariate resultant over `Q` by the subresultant PRS on cleared
/// denominators.
pub fn resultant_uni(a: &QPoly, b: &QPoly) -> Result<BigRational, PolyError> {
    let (m, n) = match (a.degree(), b.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(PolyError::ZeroInput("resultant")),
    };
    if m == 0 && n == 0 {
        return Err(PolyError::ConstantResultantInputs);
    }
    let (sa, za) = a.to_primitive_integer();
    let (sb, zb) = b.to_primitive_integer();
    let r = resultant_prs(za.coeffs(), zb.coeffs());
    let k = Pow::pow(&sa, n) * Pow::pow(&sb, m);
    Ok(BigRational::from_integer(r) * k)
}

/// Subresultant PRS resultant of integer polynomials (ascending coefficients,
/// no trailing zeros), Sylvester convention.
pub fn resultant_prs(a: &[BigInt], b: &[BigInt]) -> BigInt {
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let (da, db) = (a.len() - 1, b.len() - 1);
    if db == 0 {
        return Pow::pow(&b[0], da);
    }
    if da == 0 {
        return Pow::pow(&a[0], db);
    }
    let ca = zuni::content(a);
    let cb = zuni::content(b);
    let mut t = Pow::pow(&ca, db) * Pow::pow(&cb, da);
    let mut a: Vec<BigInt> = a.iter().map(|c| c / &ca).collect();
    let mut b: Vec<BigInt> = b.iter().map(|c| c / &cb).collect();
    let mut s = BigInt::one();
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (dega, degb) = (a.len() - 1, b.len() - 1);
        let delta = dega - degb;
        if dega % 2 == 1 && degb % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        let divisor = &g * Pow::pow(&h, delta);
        a = b;
        b = r.iter().map(|c| c / &divisor).collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            Pow::pow(&g, delta) / Pow::pow(&h, delta - 1)
        };
        if b.is_empty() {
            return BigInt::zero();
        }
        if b.len() == 1 {
            break;
        }
    }
    let dega = a.len() - 1;
    let hb = Pow::pow(&b[0], dega) / Pow::pow(&h, dega - 1);
    t *= &s;
    t * hb
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = b.last().unwrap();
    let mut r = a.to_vec();
    let mut e = a.len() - b.len() + 1;
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top].clone();
        for v in r.iter_mut() {
            *v *= lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[top - db + j] -= &c * bj;
        }
        zuni::trim(&mut r);
        e -= 1;
        if r.is_empty() {
            break;
        }
    }
    if e > 0 {
        let k = Pow::pow(lc, e);
        for v in r.iter_mut() {
            *v *= &k;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::uni::rat;

    fn mp(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn tpoly(cs: &[&str]) -> UniPoly<MultiPoly> {
        UniPoly::new(cs.iter().map(|c| mp(c)).collect())
    }

    #[test]
    fn sylvester_sign_convention() {
        let r = resultant_t(&tpoly(&["-1", "1"]), &tpoly(&["-2", "1"])).unwrap();
        assert_eq!(r, MultiPoly::from_int(-1));
        let u = resultant_uni(&QPoly::from_ints(&[-1, 1]), &QPoly::from_ints(&[-2, 1])).unwrap();
        assert_eq!(u, rat(-1));
    }

    #[test]
    fn implicitization_examples() {
        // x - t, y - t^2
        let r = resultant_t(&tpoly(&["x", "-1"]), &tpoly(&["y", "0", "-1"])).unwrap();
        assert_eq!(r.normalized(), mp("x^2 - y"));
        // x - t^2, y - t^4
        let r = resultant_t(
            &tpoly(&["x", "0", "-1"]),
            &tpoly(&["y", "0", "0", "0", "-1"]),
        )
        .unwrap();
        assert_eq!(r.normalized(), mp("x^2 - y").pow(2));
    }

    #[test]
    fn rational_coefficients_and_common_factor() {
        let p = tpoly(&["1/2*x", "1/3"]);
        let q = tpoly(&["y", "0", "1"]);
        // Res(x/2 + t/3, y + t^2) = (1/3)^2 * q(-3x/2) = y/9 + x^2/4
        assert_eq!(resultant_t(&p, &q).unwrap(), mp("1/4*x^2 + 1/9*y"));
        let c = tpoly(&["x", "1"]);
        let p2 = UniPoly::new(vec![mp("x*y"), mp("y")]);
        assert!(resultant_t(&c, &p2).unwrap().is_zero());
    }

    #[test]
    fn constant_inputs() {
        assert!(resultant_t(&tpoly(&["x"]), &tpoly(&["y"])).is_err());
        assert_eq!(
            resultant_t(&tpoly(&["x"]), &tpoly(&["1", "0", "1"])).unwrap(),
            mp("x^2")
        );
    }

    #[test]
    fn prs_small_cases() {
        let z = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        // Res(t^2 - 1, t - 2) = (2^2 - 1) = 3
        assert_eq!(
            resultant_prs(&z(&[-1, 0, 1]), &z(&[-2, 1])),
            BigInt::from(3)
        );
        // Res(t - 2, t^2 - 1) = (-1)^(1*2) * 3 = 3
        assert_eq!(
            resultant_prs(&z(&[-2, 1]), &z(&[-1, 0, 1])),
            BigInt::from(3)
        );
        // Res(t, t^3 + 1) = 1 and swapping the odd-degree pair flips the sign
        assert_eq!(
            resultant_prs(&z(&[0, 1]), &z(&[1, 0, 0, 1])),
            BigInt::from(1)
        );
        assert_eq!(
            resultant_prs(&z(&[1, 0, 0, 1]), &z(&[0, 1])),
            BigInt::from(-1)
        );
        // shared root
        assert!(resultant_prs(&z(&[-1, 0, 1]), &z(&[1, 1])).is_zero());
    }
}
