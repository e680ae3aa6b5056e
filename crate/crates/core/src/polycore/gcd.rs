//! Bivariate GCD over the integers by dense modular interpolation (Brown).
//!
//! Images are computed modulo word-size primes at evaluation points in `y`,
//! scaled by the GCD of the leading coefficients, interpolated in `y` and
//! combined by CRT. A candidate is accepted only after exact trial division
//! of both inputs over `Z[x, y]`, so the result never depends on lucky primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dense::{zuni, ZPoly2};
use super::modular::{self, prime, Crt, Fp};

/// Primitive GCD of two integer polynomials, with positive x-major leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &ZPoly2, b: &ZPoly2) -> ZPoly2 {
    if a.is_zero() && b.is_zero() {
        return ZPoly2::zero();
    }
    if a.is_zero() {
        return normalized(b.clone());
    }
    if b.is_zero() {
        return normalized(a.clone());
    }
    if a.is_constant() || b.is_constant() {
        return ZPoly2::one();
    }
    let dxa = a.deg_x().unwrap_or(0);
    let dxb = b.deg_x().unwrap_or(0);
    if dxa == 0 && dxb == 0 {
        return normalized(gcd(&a.swap_xy(), &b.swap_xy()).swap_xy());
    }
    if dxa == 0 {
        return gcd(a, &content_x(b));
    }
    if dxb == 0 {
        return gcd(&content_x(a), b);
    }
    let ca = content_x(a);
    let cb = content_x(b);
    let c = gcd(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    normalized(c.mul(&brown(&pa, &pb)))
}

fn normalized(mut p: ZPoly2) -> ZPoly2 {
    p.make_primitive();
    p
}

/// Content with respect to `x`: the primitive GCD of the `y`-coefficient rows.
pub fn content_x(a: &ZPoly2) -> ZPoly2 {
    let mut g = ZPoly2::zero();
    for row in a.rows() {
        if row.is_empty() {
            continue;
        }
        let r = ZPoly2::from_y_coeffs(row.clone());
        g = if g.is_zero() {
            normalized(r)
        } else {
            gcd(&g, &r)
        };
        if g.is_constant() {
            return ZPoly2::one();
        }
    }
    if g.is_zero() {
        ZPoly2::one()
    } else {
        g
    }
}

/// Primitive part with respect to `x` (integer content also removed).
pub fn primitive_x(a: &ZPoly2) -> ZPoly2 {
    let c = content_x(a);
    normalized(a.exact_div(&c).expect("content divides"))
}

/// Integer GCD of the leading `y`-coefficients, including integer content.
fn full_gcd_y(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let ia = zuni::content(a);
    let ib = zuni::content(b);
    let prim = gcd(
        &ZPoly2::from_y_coeffs(a.to_vec()),
        &ZPoly2::from_y_coeffs(b.to_vec()),
    );
    let mut g: Vec<BigInt> = prim.rows().first().cloned().unwrap_or_default();
    let k = ia.gcd(&ib);
    for c in g.iter_mut() {
        *c *= &k;
    }
    g
}

/// Core of Brown's algorithm: both inputs primitive with respect to `x` and
/// of positive degree in `x`.
fn brown(a: &ZPoly2, b: &ZPoly2) -> ZPoly2 {
    let gamma = full_gcd_y(a.lc_x(), b.lc_x());
    let gamma_deg = gamma.len() - 1;
    let bound_y = gamma_deg + a.deg_y().unwrap_or(0).min(b.deg_y().unwrap_or(0));
    let mut dmin = a.deg_x().unwrap().min(b.deg_x().unwrap());

    let mut crt: Option<Crt> = None;
    let mut crt_deg = usize::MAX;
    let mut previous: Option<Vec<BigInt>> = None;

    for pi in 0.. {
        assert!(pi < 10_000, "modular gcd failed to converge");
        let f = Fp::new(prime(pi));
        let ra = a.reduce(f);
        let rb = b.reduce(f);
        let lca = zuni::reduce(f, a.lc_x());
        let lcb = zuni::reduce(f, b.lc_x());
        let gm = zuni::reduce(f, &gamma);
        if gm.is_empty() || lca.is_empty() || lcb.is_empty() {
            continue;
        }

        let mut pts: Vec<u64> = Vec::new();
        let mut imgs: Vec<Vec<u64>> = Vec::new();
        // Evaluation points move with the prime so that an unlucky point
        // cannot repeat forever.
        let mut y0: u64 = start_point(pi as u64) % (f.p - 1);
        while pts.len() <= bound_y {
            let cur = y0 % f.p;
            y0 += 1;
            if modular::eval(f, &lca, cur) == 0 || modular::eval(f, &lcb, cur) == 0 {
                continue;
            }
            let ax = ZPoly2::eval_y_mod(&ra, f, cur);
            let bx = ZPoly2::eval_y_mod(&rb, f, cur);
            let mut g = modular::gcd(f, &ax, &bx);
            let dg = g.len() - 1;
            if dg == 0 {
                return ZPoly2::one();
            }
            if dg > dmin {
                continue;
            }
            if dg < dmin {
                dmin = dg;
                pts.clear();
                imgs.clear();
                crt = None;
                crt_deg = usize::MAX;
                previous = None;
            }
            let scale = modular::eval(f, &gm, cur);
            for c in g.iter_mut() {
                *c = f.mul(*c, scale);
            }
            pts.push(cur);
            imgs.push(g);
        }

        // Interpolate each x-coefficient in y; flatten to (dmin+1)*(bound_y+1).
        let width = bound_y + 1;
        let mut flat = vec![0u64; (dmin + 1) * width];
        for i in 0..=dmin {
            let vals: Vec<u64> = imgs.iter().map(|g| g[i]).collect();
            let poly = modular::interpolate(f, &pts, &vals);
            for (j, &c) in poly.iter().enumerate() {
                flat[i * width + j] = c;
            }
        }

        if crt_deg != dmin {
            crt = Some(Crt::new(flat.len()));
            crt_deg = dmin;
            previous = None;
        }
        let acc = crt.as_mut().expect("crt initialized");
        acc.push(f, &flat);
        let lifted = acc.symmetric();
        if previous.as_ref() == Some(&lifted) {
            let rows: Vec<Vec<BigInt>> = lifted.chunks(width).map(|c| c.to_vec()).collect();
            let cand = primitive_x(&ZPoly2::from_rows(rows));
            if !cand.is_zero() && a.exact_div(&cand).is_some() && b.exact_div(&cand).is_some() {
                return cand;
            }
        }
        previous = Some(lifted);
    }
    unreachable!()
}

fn start_point(i: u64) -> u64 {
    if i == 0 {
        return 0;
    }
    let mut z = i.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Primitive GCD of univariate integer polynomials (ascending coefficients),
/// positive leading coefficient.
pub fn gcd_uni(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let g = gcd(
        &ZPoly2::from_x_coeffs(a.to_vec()),
        &ZPoly2::from_x_coeffs(b.to_vec()),
    );
    g.as_x_only().unwrap_or_default()
}

/// Primitive part of a univariate integer polynomial with positive leading
/// coefficient.
pub fn primitive_uni(a: &[BigInt]) -> Vec<BigInt> {
    let mut c = zuni::content(a);
    if a.last().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    if c.is_zero() || c.is_one() {
        return a.to_vec();
    }
    a.iter().map(|x| x / &c).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: Vec<Vec<i64>>) -> ZPoly2 {
        ZPoly2::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        )
    }

    #[test]
    fn bivariate_gcd_finds_common_factor() {
        // f = x - y, a = f * (x + y + 1), b = f * (2x - 3y^2)
        let f = z(vec![vec![0, -1], vec![1]]);
        let a = f.mul(&z(vec![vec![1, 1], vec![1]]));
        let b = f.mul(&z(vec![vec![0, 0, -3], vec![2]]));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn gcd_with_y_content() {
        // a = (y^2 + 1)(x + 2), b = (y^2 + 1) y
        let a = z(vec![vec![2, 0, 2], vec![1, 0, 1]]);
        let b = z(vec![vec![0, 1, 0, 1]]);
        assert_eq!(gcd(&a, &b), z(vec![vec![1, 0, 1]]));
    }

    #[test]
    fn coprime_returns_one() {
        let a = z(vec![vec![1], vec![0, 1], vec![1]]);
        let b = z(vec![vec![0, 2], vec![3]]);
        assert_eq!(gcd(&a, &b), ZPoly2::one());
    }

    #[test]
    fn unlucky_first_point() {
        // gcd(x^2 - 4y, 2x) = 1 although both vanish-degree at y = 0
        let a = z(vec![vec![0, -4], vec![], vec![1]]);
        let b = z(vec![vec![], vec![2]]);
        assert_eq!(gcd(&a, &b), ZPoly2::one());
    }

    #[test]
    fn univariate_with_large_coefficients() {
        let big = BigInt::from(10).pow(40) + BigInt::from(7);
        let f = vec![big.clone(), BigInt::from(3), BigInt::one()];
        let a = zuni::mul(&f, &[BigInt::from(-5), BigInt::from(2)]);
        let b = zuni::mul(&f, &[big, BigInt::zero(), BigInt::from(9)]);
        assert_eq!(gcd_uni(&a, &b), f);
    }
}
