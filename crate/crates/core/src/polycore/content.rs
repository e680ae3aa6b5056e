//! Content with respect to `t` of polynomials in `Q[t][x, y]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::multi::{Monomial, MultiPoly};
use super::uni::{QPoly, UniPoly};
use super::PolyError;

/// Regroups `sum_k c_k(x, y) t^k` by `(x, y)`-monomial.
pub fn by_monomial(p: &UniPoly<MultiPoly>) -> BTreeMap<Monomial, QPoly> {
    let mut map: BTreeMap<Monomial, Vec<BigRational>> = BTreeMap::new();
    let len = p.coeffs().len();
    for (k, c) in p.coeffs().iter().enumerate() {
        for (m, v) in c.terms() {
            map.entry(*m)
                .or_insert_with(|| vec![BigRational::zero(); len])[k] = v.clone();
        }
    }
    map.into_iter().map(|(m, v)| (m, QPoly::new(v))).collect()
}

/// Inverse of [`by_monomial`].
pub fn from_monomials(map: &BTreeMap<Monomial, QPoly>) -> UniPoly<MultiPoly> {
    let len = map.values().map(|q| q.coeffs().len()).max().unwrap_or(0);
    let mut coeffs = vec![MultiPoly::zero(); len];
    for (m, q) in map {
        for (k, v) in q.coeffs().iter().enumerate() {
            coeffs[k].add_term(*m, v);
        }
    }
    UniPoly::new(coeffs)
}

/// Splits `p = content * primitive`, where the content is the GCD in `Q[t]`
/// of the coefficients of `p` as a polynomial in `x, y`. The content carries
/// a positive rational factor so that the primitive part has coprime integer
/// coefficients.
pub fn content_wrt_t(p: &UniPoly<MultiPoly>) -> Result<(QPoly, UniPoly<MultiPoly>), PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroInput("content"));
    }
    let groups = by_monomial(p);
    let mut g = QPoly::zero();
    for q in groups.values() {
        g = g.gcd(q);
        if g.is_constant() {
            break;
        }
    }
    let mut quotients: BTreeMap<Monomial, QPoly> = groups
        .iter()
        .map(|(m, q)| (*m, q.exact_div(&g).expect("gcd divides")))
        .collect();
    // positive rational content of the remaining coefficients
    let den = quotients
        .values()
        .flat_map(|q| q.coeffs())
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let num = quotients
        .values()
        .flat_map(|q| q.coeffs())
        .fold(BigInt::zero(), |a, c| {
            a.gcd(&(c.numer() * (&den / c.denom())))
        });
    let k = BigRational::new(num, den);
    let inv = k.recip();
    for q in quotients.values_mut() {
        *q = q.scale(&inv);
    }
    Ok((g.scale(&k), from_monomials(&quotients)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_contents() {
        // t*x + t
        let p = UniPoly::new(vec![MultiPoly::zero(), mp("x + 1")]);
        let (c, q) = content_wrt_t(&p).unwrap();
        assert_eq!(c, QPoly::from_ints(&[0, 1]));
        assert_eq!(q, UniPoly::new(vec![mp("x + 1")]));
        // 2t*x + 4t*y
        let p = UniPoly::new(vec![MultiPoly::zero(), mp("2*x + 4*y")]);
        let (c, q) = content_wrt_t(&p).unwrap();
        assert_eq!(c, QPoly::from_ints(&[0, 2]));
        assert_eq!(q, UniPoly::new(vec![mp("x + 2*y")]));
    }

    #[test]
    fn zero_is_an_error() {
        assert!(content_wrt_t(&UniPoly::zero()).is_err());
    }
}
