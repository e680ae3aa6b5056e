//! Word-size prime field arithmetic and dense univariate polynomials over
//! `F_p`, used by the modular GCD and resultant kernels.
//!
//! All primes are just below 2^62 so that products fit in `u128` and a single
//! prime carries about 61 bits of a reconstructed integer.

use std::sync::Mutex;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A prime modulus with the handful of field operations the kernels need.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn reduce(self, a: &BigInt) -> u64 {
        let m = a.mod_floor(&BigInt::from(self.p));
        m.to_u64().expect("residue fits in u64")
    }

    pub fn from_i64(self, a: i64) -> u64 {
        let m = (a as i128).rem_euclid(self.p as i128);
        m as u64
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

/// The `i`-th prime below 2^62, counting downward.
pub fn prime(i: usize) -> u64 {
    let mut cache = PRIMES.lock().expect("prime cache poisoned");
    while cache.len() <= i {
        let mut c = match cache.last() {
            Some(&last) => last - 2,
            None => (1u64 << 62) - 1,
        };
        while !is_prime_u64(c) {
            c -= 2;
        }
        cache.push(c);
    }
    cache[i]
}

/// Bits of modulus contributed by each prime returned by [`prime`].
pub const PRIME_BITS: u64 = 61;

/// Incremental Chinese remaindering for a vector of residues.
#[derive(Clone, Debug)]
pub struct Crt {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt {
            modulus: BigInt::one(),
            values: vec![BigInt::zero(); len],
        }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// Folds in residues modulo a fresh prime `f.p`.
    pub fn push(&mut self, f: Fp, residues: &[u64]) {
        assert_eq!(residues.len(), self.values.len());
        let m_mod_p = f.reduce(&self.modulus);
        let m_inv = f.inv(m_mod_p);
        for (v, &r) in self.values.iter_mut().zip(residues) {
            let v_mod_p = f.reduce(v);
            let k = f.mul(f.sub(r, v_mod_p), m_inv);
            if k != 0 {
                *v += &self.modulus * BigInt::from(k);
            }
        }
        self.modulus *= BigInt::from(f.p);
    }

    /// Values in the symmetric range `(-M/2, M/2]`.
    pub fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1;
        self.values
            .iter()
            .map(|v| {
                if v > &half {
                    v - &self.modulus
                } else {
                    v.clone()
                }
            })
            .collect()
    }
}

/// Number of bits needed for `|x|`.
pub fn bits(x: &BigInt) -> u64 {
    x.magnitude().bits()
}

/// `ceil(log2(x))` for a positive integer, as a float-free upper bound.
pub fn log2_ceil(x: &BigUint) -> u64 {
    if x.is_zero() || x.is_one() {
        return 0;
    }
    let b = x.bits();
    let pow = BigUint::one() << (b - 1);
    if *x == pow {
        b - 1
    } else {
        b
    }
}

/// Sign-aware absolute value helper used by the norm bounds.
pub fn abs_uint(x: &BigInt) -> BigUint {
    match x.sign() {
        Sign::Minus => (-x).to_biguint().expect("nonnegative"),
        _ => x.abs().to_biguint().expect("nonnegative"),
    }
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials over F_p, coefficient vector in ascending degree
// with no trailing zeros.

pub fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn deg(v: &[u64]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub fn eval(f: Fp, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Remainder of `a` modulo nonzero `b`, in place.
pub fn rem_in_place(f: Fp, a: &mut Vec<u64>, b: &[u64]) {
    let db = b.len() - 1;
    let inv = f.inv(b[db]);
    while a.len() > db {
        let top = a.len() - 1;
        let q = f.mul(a[top], inv);
        if q != 0 {
            let shift = top - db;
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = f.sub(a[shift + j], f.mul(q, bj));
            }
        }
        a.pop();
        trim(a);
    }
    trim(a);
}

pub fn make_monic(f: Fp, a: &mut [u64]) {
    if let Some(&lc) = a.last() {
        let inv = f.inv(lc);
        for c in a.iter_mut() {
            *c = f.mul(*c, inv);
        }
    }
}

/// Monic GCD; the zero polynomial if both inputs are zero.
pub fn gcd(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        rem_in_place(f, &mut a, &b);
        std::mem::swap(&mut a, &mut b);
    }
    make_monic(f, &mut a);
    a
}

pub fn mul(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ai, bj));
        }
    }
    trim(&mut out);
    out
}

/// Quotient of `a` by nonzero `b` (remainder discarded).
pub fn div(f: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return Vec::new();
    }
    let inv = f.inv(b[db]);
    let mut q = vec![0u64; r.len() - db];
    for top in (db..r.len()).rev() {
        let c = f.mul(r[top], inv);
        q[top - db] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[top - db + j] = f.sub(r[top - db + j], f.mul(c, bj));
            }
        }
    }
    trim(&mut q);
    q
}

/// Resultant of polynomials with *actual* degrees (no leading zeros), via the
/// Euclidean remainder sequence.
fn resultant_actual(f: Fp, a: &[u64], b: &[u64]) -> u64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    let mut acc = 1u64;
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            return f.mul(acc, f.pow(b[0], da as u64));
        }
        let mut r = a.clone();
        rem_in_place(f, &mut r, &b);
        if r.is_empty() {
            return 0;
        }
        let dr = r.len() - 1;
        if (da * db) % 2 == 1 {
            acc = f.neg(acc);
        }
        acc = f.mul(acc, f.pow(b[db], (da - dr) as u64));
        a = b;
        b = r;
    }
}

/// Sylvester-determinant resultant with formal degrees `m`, `n`: the
/// coefficient vectors may have fewer than `m + 1` (resp. `n + 1`) entries
/// when leading coefficients vanish.
pub fn resultant_formal(f: Fp, a: &[u64], m: usize, b: &[u64], n: usize) -> u64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if m == 0 && n == 0 {
        return 1;
    }
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let ma = a.len() - 1;
    let nb = b.len() - 1;
    if ma < m && nb < n {
        return 0;
    }
    if ma < m {
        let k = m - ma;
        let mut r = resultant_formal(f, &a, ma, &b, n);
        if (k * n) % 2 == 1 {
            r = f.neg(r);
        }
        return f.mul(r, f.pow(b[nb], k as u64));
    }
    if nb < n {
        let k = n - nb;
        let r = resultant_formal(f, &a, m, &b, nb);
        return f.mul(r, f.pow(a[ma], k as u64));
    }
    if m == 0 {
        return f.pow(a[0], n as u64);
    }
    if n == 0 {
        return f.pow(b[0], m as u64);
    }
    resultant_actual(f, &a, &b)
}

/// Newton interpolation through `(xs[i], ys[i])`; returns ascending
/// coefficients of the unique polynomial of degree < `xs.len()`.
pub fn interpolate(f: Fp, xs: &[u64], ys: &[u64]) -> Vec<u64> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(dd[i], dd[i - 1]);
            let den = f.sub(xs[i], xs[i - j]);
            dd[i] = f.mul(num, f.inv(den));
        }
    }
    let mut poly = vec![0u64; n];
    for k in (0..n).rev() {
        // poly = poly * (x - xs[k]) + dd[k]
        let mut next = vec![0u64; n];
        for i in 0..n {
            if poly[i] == 0 {
                continue;
            }
            if i + 1 < n {
                next[i + 1] = f.add(next[i + 1], poly[i]);
            }
            next[i] = f.sub(next[i], f.mul(poly[i], xs[k]));
        }
        next[0] = f.add(next[0], dd[k]);
        poly = next;
    }
    trim(&mut poly);
    poly
}
