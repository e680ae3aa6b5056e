//! Oracles, strategies and property bodies shared by the property tests and
//! the acceptance harness.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use offsetal::cli::input::{parse_expr, Expr};
use offsetal::curve::{self, normalize, RationalParametrization};
use offsetal::polycore::{
    content_wrt_t, resultant_uni, yun_squarefree, Monomial, MultiPoly, QPoly, UniPoly,
};

type Outcome = Result<(), TestCaseError>;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn qpoly(coeffs: Vec<i64>) -> QPoly {
    QPoly::from_ints(&coeffs)
}

/// Determinant by Gaussian elimination over Q.
pub fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            let f = &m[r][c] / &piv;
            if f.is_zero() {
                continue;
            }
            let (top, rest) = m.split_at_mut(r);
            for (dst, src) in rest[0][c..].iter_mut().zip(&top[c][c..]) {
                *dst -= &f * src;
            }
        }
    }
    d
}

/// Resultant as the determinant of the Sylvester matrix.
pub fn sylvester(a: &[i64], b: &[i64]) -> BigRational {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = Vec::new();
    for i in 0..n {
        let mut row = vec![BigRational::zero(); size];
        for (j, c) in a.iter().rev().enumerate() {
            row[i + j] = q(*c);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigRational::zero(); size];
        for (j, c) in b.iter().rev().enumerate() {
            row[i + j] = q(*c);
        }
        rows.push(row);
    }
    det(rows)
}

/// Integer coefficients, constant first, with a nonzero leading one.
pub fn uni_coeffs(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    (1..=max_deg).prop_flat_map(|d| {
        (
            prop::collection::vec(-9i64..=9, d),
            prop_oneof![-9i64..=-1, 1i64..=9],
        )
            .prop_map(|(mut v, lead)| {
                v.push(lead);
                v
            })
    })
}

pub fn bivariate(max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0..=max_deg), (0..=max_deg), -6i64..=6), 1..5).prop_map(move |terms| {
        MultiPoly::from_terms(
            terms
                .into_iter()
                .filter(|(x, y, _)| x + y <= max_deg)
                .map(|(x, y, c)| (Monomial::new(x, y), q(c))),
        )
    })
}

pub fn nonconstant(max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    bivariate(max_deg).prop_filter("nonconstant", |p| !p.is_constant())
}

fn is_squarefree(p: &MultiPoly) -> bool {
    p.gcd(&p.diff_x()).gcd(&p.diff_y()).is_constant()
}

pub fn yun_input() -> impl Strategy<Value = (Vec<(MultiPoly, u32)>, i64)> {
    (
        prop::collection::vec((nonconstant(2), 1u32..=3), 1..=3),
        prop_oneof![-7i64..=-1, 1i64..=7],
    )
}

pub fn yun_reconstructs_and_is_coprime(factors: &[(MultiPoly, u32)], c: i64) -> Outcome {
    let mut p = MultiPoly::from_int(c);
    for (f, m) in factors {
        p = &p * &f.pow(*m);
    }
    let dec = yun_squarefree(&p).unwrap();
    prop_assert_eq!(dec.reconstruct(), p);
    for (i, (a, ma)) in dec.parts.iter().enumerate() {
        prop_assert!(!a.is_constant());
        prop_assert!(is_squarefree(a));
        for (b, mb) in &dec.parts[i + 1..] {
            prop_assert!(ma != mb);
            prop_assert!(a.gcd(b).is_constant());
        }
    }
    Ok(())
}

pub fn resultant_pair() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (uni_coeffs(8), uni_coeffs(8))
}

pub fn resultant_matches_sylvester(a: &[i64], b: &[i64]) -> Outcome {
    let r = resultant_uni(&qpoly(a.to_vec()), &qpoly(b.to_vec())).unwrap();
    prop_assert_eq!(r, sylvester(a, b));
    Ok(())
}

/// A rational curve of degree at most 3, composed with `t <- inner(s)`, so
/// degrees stay at most 6.
pub fn traced_curve() -> impl Strategy<Value = (Vec<i64>, Vec<i64>, Vec<i64>, Vec<i64>)> {
    (
        uni_coeffs(3),
        uni_coeffs(3),
        prop::collection::vec(-4i64..=4, 1..=3),
        prop_oneof![
            Just(vec![0i64, 1]),
            Just(vec![0i64, 0, 1]),
            Just(vec![1i64, 0, 1]),
            Just(vec![0i64, 1, 1]),
        ],
    )
}

pub fn tracing_index_methods_agree(x: &[i64], y: &[i64], w: &[i64], inner: &[i64]) -> Outcome {
    let wq = qpoly(w.to_vec());
    prop_assume!(!wq.is_zero());
    let rp = RationalParametrization::new(qpoly(x.to_vec()), wq.clone(), qpoly(y.to_vec()), wq);
    prop_assume!(rp.is_ok());
    let rp = curve::reparametrize(&rp.unwrap(), &qpoly(inner.to_vec()), &QPoly::one());
    prop_assume!(rp.is_ok());
    let rp = rp.unwrap();
    let by_degree = curve::implicitize(&rp);
    prop_assume!(by_degree.is_ok());
    let by_gcd = curve::tracing_index_by_gcd(&normalize(&rp)).unwrap();
    prop_assert_eq!(by_degree.unwrap().tracing_index, by_gcd);
    Ok(())
}

pub fn mobius_input() -> impl Strategy<Value = (Vec<i64>, Vec<i64>, [i64; 4])> {
    (
        uni_coeffs(3),
        uni_coeffs(3),
        [-5i64..=5, -5i64..=5, -5i64..=5, -5i64..=5],
    )
}

pub fn tracing_index_is_mobius_invariant(x: &[i64], y: &[i64], [a, b, c, d]: [i64; 4]) -> Outcome {
    prop_assume!(a * d - b * c != 0);
    let rp = RationalParametrization::polynomial(qpoly(x.to_vec()), qpoly(y.to_vec()));
    let n = curve::tracing_index(&rp);
    prop_assume!(n.is_ok());
    let moved = curve::reparametrize(&rp, &qpoly(vec![b, a]), &qpoly(vec![d, c])).unwrap();
    prop_assert_eq!(curve::tracing_index(&moved).unwrap(), n.unwrap());
    Ok(())
}

pub fn normalize_is_idempotent(x: &[i64], y: &[i64], w: &[i64]) -> Outcome {
    let rp = RationalParametrization::new(
        qpoly(x.to_vec()),
        qpoly(w.to_vec()),
        qpoly(y.to_vec()),
        qpoly(w.to_vec()),
    )
    .unwrap();
    let np = normalize(&rp);
    let again = normalize(
        &RationalParametrization::new(np.x.clone(), np.w.clone(), np.y.clone(), np.w.clone())
            .unwrap(),
    );
    prop_assert_eq!(again, np);
    Ok(())
}

pub fn content_times_primitive_is_identity(c: &[i64], k: i64, coeffs: Vec<MultiPoly>) -> Outcome {
    let p0 = UniPoly::new(coeffs);
    prop_assume!(!p0.is_zero());
    let cq = qpoly(c.to_vec()).scale(&BigRational::new(BigInt::from(k), BigInt::from(3)));
    let p = &curve::lift(&cq, &MultiPoly::one()) * &p0;
    let (content, prim) = content_wrt_t(&p).unwrap();
    prop_assert_eq!(&curve::lift(&content, &MultiPoly::one()) * &prim, p);
    Ok(())
}

pub fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::T),
        (0i64..50, 1i64..6).prop_map(|(n, d)| Expr::Num(BigRational::new(n.into(), d.into()))),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner, 0u32..4).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
        ]
    })
}

pub fn print_then_parse_is_identity(e: &Expr) -> Outcome {
    prop_assume!(e.eval().is_some());
    let printed = e.to_string();
    prop_assert_eq!(&parse_expr(&printed, 1, 0).unwrap(), e);
    Ok(())
}
