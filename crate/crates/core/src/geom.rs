//! Exact planar geometry over the rationals for the lattice pillowcase
//! model: the plane modulo the group generated by translations by `2Z^2`
//! and the point reflection at the origin. Corner classes (mod the group)
//! are the four punctures of the cut surface.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pt {
    pub x: Q,
    pub y: Q,
}

impl Pt {
    pub fn new(x: Q, y: Q) -> Pt {
        Pt { x, y }
    }

    pub fn of(x: i64, y: i64) -> Pt {
        Pt { x: q(x), y: q(y) }
    }

    pub fn add(&self, o: &Pt) -> Pt {
        Pt { x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn sub(&self, o: &Pt) -> Pt {
        Pt { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    pub fn neg(&self) -> Pt {
        Pt { x: -&self.x, y: -&self.y }
    }

    pub fn scale(&self, s: &Q) -> Pt {
        Pt { x: &self.x * s, y: &self.y * s }
    }
}

pub fn cross(a: &Pt, b: &Pt) -> Q {
    &a.x * &b.y - &a.y * &b.x
}

/// Group element: `z -> sign * z + 2 * (tx, ty)` with `sign = +-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupEl {
    pub sign: i8,
    pub tx: i64,
    pub ty: i64,
}

impl GroupEl {
    pub fn apply(&self, p: &Pt) -> Pt {
        let s = if self.sign > 0 { p.clone() } else { p.neg() };
        Pt { x: s.x + q(2 * self.tx), y: s.y + q(2 * self.ty) }
    }
}

/// Proper interior intersection of segments `a0a1` and `b0b1`; returns the
/// parameters `(t, u)` in `(0,1) x (0,1)` when the crossing is transversal
/// and interior to both.
pub fn seg_intersection(a0: &Pt, a1: &Pt, b0: &Pt, b1: &Pt) -> Option<(Q, Q)> {
    let r = a1.sub(a0);
    let s = b1.sub(b0);
    let denom = cross(&r, &s);
    if denom.is_zero() {
        return None; // parallel or collinear: never a transversal crossing
    }
    let qp = b0.sub(a0);
    let t = cross(&qp, &s) / denom.clone();
    let u = cross(&qp, &r) / denom;
    let zero = Q::zero();
    let one = Q::one();
    if t > zero && t < one && u > zero && u < one {
        Some((t, u))
    } else {
        None
    }
}

/// Total ordering of nonzero direction vectors by angle in `[0, 2pi)`,
/// starting from the positive x axis, counterclockwise. Exact.
pub fn angle_cmp(a: &Pt, b: &Pt) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let ha = half_of(a);
    let hb = half_of(b);
    if ha != hb {
        return ha.cmp(&hb);
    }
    let c = cross(a, b);
    if c.is_positive() {
        Ordering::Less
    } else if c.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// 0 for the upper half (y > 0, or y = 0 and x > 0), 1 for the lower.
fn half_of(p: &Pt) -> u8 {
    if p.y.is_positive() || (p.y.is_zero() && p.x.is_positive()) {
        0
    } else {
        1
    }
}

/// Ordering of directions modulo the point reflection (angles mod pi).
pub fn angle_mod_pi_cmp(a: &Pt, b: &Pt) -> std::cmp::Ordering {
    let na = normalize_half(a);
    let nb = normalize_half(b);
    angle_cmp(&na, &nb)
}

/// Flip a vector into the closed upper half plane representative.
pub fn normalize_half(p: &Pt) -> Pt {
    if half_of(p) == 0 {
        p.clone()
    } else {
        p.neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_basic() {
        let a0 = Pt::of(0, 0);
        let a1 = Pt::of(2, 2);
        let b0 = Pt::of(0, 2);
        let b1 = Pt::of(2, 0);
        let (t, u) = seg_intersection(&a0, &a1, &b0, &b1).unwrap();
        assert_eq!(t, qr(1, 2));
        assert_eq!(u, qr(1, 2));
        assert!(seg_intersection(&a0, &a1, &Pt::of(3, 0), &Pt::of(4, 0)).is_none());
    }

    #[test]
    fn angle_order() {
        let e = Pt::of(1, 0);
        let n = Pt::of(0, 1);
        let w = Pt::of(-1, 0);
        let s = Pt::of(0, -1);
        let mut v = vec![s.clone(), w.clone(), n.clone(), e.clone()];
        v.sort_by(angle_cmp);
        assert_eq!(v, vec![e, n, w, s]);
    }
}
