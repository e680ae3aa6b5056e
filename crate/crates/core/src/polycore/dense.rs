//! Dense bivariate polynomials over the integers.
//!
//! `ZPoly2` stores `rows[i][j]` = coefficient of `x^i y^j`. It is the working
//! representation of the GCD, squarefree and exact-division kernels: all
//! rational inputs are cleared to integers before entering here.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modular::Fp;

/// Dense univariate integer polynomial helpers (ascending coefficients, no
/// trailing zeros).
pub mod zuni {
    use super::*;

    pub fn trim(v: &mut Vec<BigInt>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }

    pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        trim(&mut out);
        out
    }

    pub fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] += c;
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] -= c;
        }
        trim(&mut out);
        out
    }

    /// Exact quotient `a / b` over `Z[y]`, or `None` if `b` does not divide `a`.
    pub fn exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
        if b.is_empty() {
            return None;
        }
        if a.is_empty() {
            return Some(Vec::new());
        }
        if a.len() < b.len() {
            return None;
        }
        let db = b.len() - 1;
        let lc = &b[db];
        let mut r = a.to_vec();
        let mut q = vec![BigInt::zero(); a.len() - db];
        for top in (db..r.len()).rev() {
            if r[top].is_zero() {
                continue;
            }
            let (c, rem) = r[top].div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    r[top - db + j] -= &c * bj;
                }
            }
            q[top - db] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        trim(&mut q);
        Some(q)
    }

    pub fn content(a: &[BigInt]) -> BigInt {
        a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn eval_mod(f: Fp, a: &[BigInt], y: u64) -> u64 {
        a.iter()
            .rev()
            .fold(0, |acc, c| f.add(f.mul(acc, y), f.reduce(c)))
    }

    pub fn reduce(f: Fp, a: &[BigInt]) -> Vec<u64> {
        let mut v: Vec<u64> = a.iter().map(|c| f.reduce(c)).collect();
        super::super::modular::trim(&mut v);
        v
    }

    pub fn derivative(a: &[BigInt]) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        trim(&mut out);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZPoly2 {
    rows: Vec<Vec<BigInt>>,
}

impl ZPoly2 {
    pub fn zero() -> Self {
        ZPoly2 { rows: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_rows(vec![vec![c]])
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn from_rows(mut rows: Vec<Vec<BigInt>>) -> Self {
        for r in rows.iter_mut() {
            zuni::trim(r);
        }
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        ZPoly2 { rows }
    }

    /// A polynomial in `x` alone.
    pub fn from_x_coeffs(c: Vec<BigInt>) -> Self {
        Self::from_rows(c.into_iter().map(|v| vec![v]).collect())
    }

    /// A polynomial in `y` alone.
    pub fn from_y_coeffs(c: Vec<BigInt>) -> Self {
        Self::from_rows(vec![c])
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.rows
            .iter()
            .map(|r| r.len())
            .max()
            .and_then(|l| l.checked_sub(1))
    }

    pub fn is_constant(&self) -> bool {
        self.rows.len() <= 1 && self.rows.first().is_none_or(|r| r.len() <= 1)
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.rows[0][0].clone())
        } else {
            None
        }
    }

    /// Coefficients in `x` only, if the polynomial does not involve `y`.
    pub fn as_x_only(&self) -> Option<Vec<BigInt>> {
        if self.rows.iter().all(|r| r.len() <= 1) {
            Some(
                self.rows
                    .iter()
                    .map(|r| r.first().cloned().unwrap_or_default())
                    .collect(),
            )
        } else {
            None
        }
    }

    pub fn lc_x(&self) -> &[BigInt] {
        self.rows.last().map(|r| r.as_slice()).unwrap_or(&[])
    }

    /// Leading coefficient in the x-major lexicographic order.
    pub fn lead_integer(&self) -> Option<&BigInt> {
        self.rows.last().and_then(|r| r.last())
    }

    pub fn swap_xy(&self) -> Self {
        let dy = match self.deg_y() {
            Some(d) => d,
            None => return Self::zero(),
        };
        let mut rows = vec![vec![BigInt::zero(); self.rows.len()]; dy + 1];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in r.iter().enumerate() {
                rows[j][i] = c.clone();
            }
        }
        Self::from_rows(rows)
    }

    pub fn integer_content(&self) -> BigInt {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the integer content and makes the x-major leading
    /// coefficient positive. Returns the removed signed factor.
    pub fn make_primitive(&mut self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        let mut g = self.integer_content();
        if self.lead_integer().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        if !g.is_one() {
            for r in self.rows.iter_mut() {
                for c in r.iter_mut() {
                    *c = &*c / &g;
                }
            }
        }
        g
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        ZPoly2 {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|c| c * k).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.rows.len().max(other.rows.len());
        let rows = (0..n)
            .map(|i| {
                zuni::add(
                    self.rows.get(i).map(|r| r.as_slice()).unwrap_or(&[]),
                    other.rows.get(i).map(|r| r.as_slice()).unwrap_or(&[]),
                )
            })
            .collect();
        Self::from_rows(rows)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![Vec::new(); self.rows.len() + other.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for (j, b) in other.rows.iter().enumerate() {
                if b.is_empty() {
                    continue;
                }
                let prod = zuni::mul(a, b);
                rows[i + j] = zuni::add(&rows[i + j], &prod);
            }
        }
        Self::from_rows(rows)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn diff_x(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, r)| r.iter().map(|c| c * BigInt::from(i)).collect())
            .collect();
        Self::from_rows(rows)
    }

    pub fn diff_y(&self) -> Self {
        Self::from_rows(self.rows.iter().map(|r| zuni::derivative(r)).collect())
    }

    /// Exact quotient over `Z[x, y]`, or `None` when `b` does not divide `self`.
    pub fn exact_div(&self, b: &Self) -> Option<Self> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let da = self.rows.len() - 1;
        let db = b.rows.len() - 1;
        if da < db {
            return None;
        }
        let lcb = b.lc_x();
        let mut r = self.rows.clone();
        let mut q = vec![Vec::new(); da - db + 1];
        for i in (0..=da - db).rev() {
            let row = &r[i + db];
            if row.is_empty() {
                continue;
            }
            let qi = zuni::exact_div(row, lcb)?;
            for (j, bj) in b.rows.iter().enumerate() {
                if bj.is_empty() {
                    continue;
                }
                let prod = zuni::mul(&qi, bj);
                r[i + j] = zuni::sub(&r[i + j], &prod);
            }
            q[i] = qi;
        }
        if r.iter().any(|row| !row.is_empty()) {
            return None;
        }
        Some(Self::from_rows(q))
    }

    pub fn reduce(&self, f: Fp) -> Vec<Vec<u64>> {
        self.rows.iter().map(|r| zuni::reduce(f, r)).collect()
    }

    /// `self(x, y0)` modulo `p`, as ascending coefficients in `x`.
    pub fn eval_y_mod(reduced: &[Vec<u64>], f: Fp, y0: u64) -> Vec<u64> {
        let mut out: Vec<u64> = reduced
            .iter()
            .map(|r| r.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, y0), c)))
            .collect();
        super::modular::trim(&mut out);
        out
    }

    /// Sum of absolute values of all coefficients.
    pub fn norm1(&self) -> BigInt {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|c| c.abs())
            .sum()
    }

    pub fn max_abs(&self) -> BigInt {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }
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
    fn exact_division_roundtrip() {
        // (x + y) * (x - 2y + 3)
        let a = z(vec![vec![0, 1], vec![1]]);
        let b = z(vec![vec![3, -2], vec![1]]);
        let p = a.mul(&b);
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!(p.exact_div(&b), Some(a));
        let c = z(vec![vec![1, 1], vec![2]]);
        assert_eq!(p.exact_div(&c), None);
    }

    #[test]
    fn swap_is_involution() {
        let a = z(vec![vec![1, 2, 3], vec![0, 5], vec![7]]);
        assert_eq!(a.swap_xy().swap_xy(), a);
        assert_eq!(a.swap_xy().deg_x(), a.deg_y());
    }
}
