//! Yun squarefree decomposition of bivariate polynomials.
//!
//! The content with respect to `x` (a polynomial in `y` alone) is decomposed
//! separately, then Yun's recurrence runs in `x` on the primitive part with
//! exact GCDs over `Z[x, y]`. Parts with equal multiplicity are merged.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::dense::ZPoly2;
use super::gcd::{content_x, gcd};
use super::multi::MultiPoly;
use super::PolyError;

#[derive(Clone, Debug, PartialEq)]
pub struct SquarefreeDecomposition {
    /// Canonical squarefree parts with their multiplicities, ascending.
    pub parts: Vec<(MultiPoly, u32)>,
    pub constant: BigRational,
}

impl SquarefreeDecomposition {
    pub fn reconstruct(&self) -> MultiPoly {
        self.parts
            .iter()
            .fold(MultiPoly::constant(self.constant.clone()), |acc, (p, m)| {
                &acc * &p.pow(*m)
            })
    }

    pub fn part_with_multiplicity(&self, m: u32) -> Option<&MultiPoly> {
        self.parts.iter().find(|(_, k)| *k == m).map(|(p, _)| p)
    }
}

pub fn yun_squarefree(p: &MultiPoly) -> Result<SquarefreeDecomposition, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroInput("squarefree decomposition"));
    }
    let (c, q) = p.canonical();
    if q.is_constant() {
        return Ok(SquarefreeDecomposition {
            parts: Vec::new(),
            constant: p.constant_value().unwrap(),
        });
    }
    let (_, z) = q.to_integer();
    let mut acc: BTreeMap<u32, ZPoly2> = BTreeMap::new();
    for (part, m) in yun_z(&z) {
        let slot = acc.entry(m).or_insert_with(ZPoly2::one);
        *slot = slot.mul(&part);
    }
    let parts: Vec<(MultiPoly, u32)> = acc
        .into_iter()
        .map(|(m, z)| (MultiPoly::from_zpoly(&z).normalized(), m))
        .collect();
    // The product of canonical parts is primitive with positive leading
    // coefficient, hence equal to q.
    let out = SquarefreeDecomposition { parts, constant: c };
    debug_assert_eq!(out.reconstruct(), *p);
    Ok(out)
}

/// Squarefree parts of a nonconstant integer polynomial; multiplicities
/// may repeat between the `y`-content and the primitive part.
fn yun_z(f: &ZPoly2) -> Vec<(ZPoly2, u32)> {
    if f.deg_x().unwrap_or(0) == 0 {
        if f.is_constant() {
            return Vec::new();
        }
        return yun_z(&f.swap_xy())
            .into_iter()
            .map(|(p, m)| (p.swap_xy(), m))
            .collect();
    }
    let cont = content_x(f);
    let prim = f.exact_div(&cont).expect("content divides");
    let mut out = Vec::new();
    if !cont.is_constant() {
        out.extend(yun_z(&cont));
    }
    out.extend(yun_x(&prim));
    out
}

/// Yun's recurrence in `x` for a polynomial primitive with respect to `x`.
fn yun_x(f: &ZPoly2) -> Vec<(ZPoly2, u32)> {
    let mut out = Vec::new();
    let df = f.diff_x();
    let a0 = gcd(f, &df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let c = df.exact_div(&a0).expect("gcd divides");
    let mut d = c.sub(&b.diff_x());
    let mut i = 1u32;
    while b.deg_x().unwrap_or(0) > 0 {
        let a = gcd(&b, &d);
        if a.deg_x().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        let c = d.exact_div(&a).expect("gcd divides");
        d = c.sub(&b.diff_x());
        i += 1;
    }
    out
}
