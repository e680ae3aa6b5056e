//! Candidate extraneous factors of the offset resultant.
//!
//! Three sources, combined into one product `E`:
//! * lines `P(x, y, t0) = 0` contained in the circle `Q(x, y, t0) = 0`: every
//!   point of such a line makes `t0` a common root;
//! * common zeros of the leading coefficients of `P` and `Q` in `t`;
//! * isotropic line pairs through curve points whose normal is isotropic
//!   (roots of `U^2 + V^2` not shared with `W`).

use crate::curve::lift;
use crate::polycore::{content, rat, resultant_t, MultiPoly, QPoly, UniPoly};

use super::{OffsetError, OffsetProblem, PQSystem};

/// Splits `P = a(t) x + b(t) y + c(t)`.
fn linear_parts(p: &UniPoly<MultiPoly>) -> (QPoly, QPoly, QPoly) {
    let groups = content::by_monomial(p);
    let get = |x, y| {
        groups
            .iter()
            .find(|(m, _)| m.x == x && m.y == y)
            .map(|(_, q)| q.clone())
            .unwrap_or_else(QPoly::zero)
    };
    (get(1, 0), get(0, 1), get(0, 0))
}

/// Splits `Q = al(t)(x^2 + y^2) + be(t) x + ga(t) y + de(t)`.
fn circle_parts(q: &UniPoly<MultiPoly>) -> (QPoly, QPoly, QPoly, QPoly) {
    let groups = content::by_monomial(q);
    let get = |x, y| {
        groups
            .iter()
            .find(|(m, _)| m.x == x && m.y == y)
            .map(|(_, q)| q.clone())
            .unwrap_or_else(QPoly::zero)
    };
    (get(2, 0), get(1, 0), get(0, 1), get(0, 0))
}

/// Parameter values at which the line `P = 0` lies on the circle `Q = 0`,
/// as a squarefree polynomial in `t`.
fn line_in_circle(pq: &PQSystem) -> QPoly {
    let (a, b, c) = linear_parts(&pq.p);
    let (al, be, ga, de) = circle_parts(&pq.q);
    let sum_sq = &(&a * &a) + &(&b * &b);
    let r2 = &al * &sum_sq;
    let two = rat(2);

    // x = -(b y + c)/a substituted into a^2 Q
    let r1a = &(&(&(&al * &b) * &c).scale(&two) - &(&(&be * &a) * &b)) + &(&ga * &(&a * &a));
    let r0a = &(&(&al * &(&c * &c)) - &(&(&be * &a) * &c)) + &(&de * &(&a * &a));
    let ta = r2.gcd(&r1a).gcd(&r0a).remove_factors_of(&a);

    // y = -(a x + c)/b substituted into b^2 Q
    let r1b = &(&(&(&al * &a) * &c).scale(&two) - &(&(&ga * &a) * &b)) + &(&be * &(&b * &b));
    let r0b = &(&(&al * &(&c * &c)) - &(&(&ga * &b) * &c)) + &(&de * &(&b * &b));
    let tb = r2.gcd(&r1b).gcd(&r0b).remove_factors_of(&b);

    let t = if ta.is_zero() {
        tb
    } else if tb.is_zero() {
        ta
    } else {
        ta.lcm(&tb)
    };
    if t.is_zero() {
        QPoly::one()
    } else {
        t.squarefree_part()
    }
}

/// Product of the candidate extraneous factors, canonical (`1` when there are
/// none).
pub fn extraneous_candidates(op: &OffsetProblem, pq: &PQSystem) -> Result<MultiPoly, OffsetError> {
    let mut e = MultiPoly::one();

    let t_lines = line_in_circle(pq);
    if !t_lines.is_constant() {
        let tl = lift(&t_lines, &MultiPoly::one());
        let r = resultant_t(&tl, &pq.p)?;
        if !r.is_zero() && !r.is_constant() {
            e = &e * &r.normalized();
        }
    }

    let lp = pq.p.lc().cloned().unwrap_or_else(MultiPoly::zero);
    let lq = pq.q.lc().cloned().unwrap_or_else(MultiPoly::zero);
    let inf = lp.gcd(&lq);
    if !inf.is_constant() {
        e = &e * &inf;
    }

    let np = &op.curve.np;
    let wbar = op
        .curve
        .hodograph
        .w
        .squarefree_part()
        .remove_factors_of(&np.w);
    if !wbar.is_constant() {
        let dx = &lift(&np.w, &MultiPoly::x()) - &lift(&np.x, &MultiPoly::one());
        let dy = &lift(&np.w, &MultiPoly::y()) - &lift(&np.y, &MultiPoly::one());
        let iso = &(&dx * &dx) + &(&dy * &dy);
        let wl = lift(&wbar, &MultiPoly::one());
        let r = resultant_t(&wl, &iso)?;
        if !r.is_zero() && !r.is_constant() {
            e = &e * &r.normalized();
        }
    }
    Ok(e.normalized())
}
