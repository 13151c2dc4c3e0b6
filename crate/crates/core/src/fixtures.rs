//! Reference diagrams: the trivial Heegaard diagram, the three standard
//! (2,0)-trisection diagrams, degenerate families, and the drawn examples
//! used by tests.

use crate::build::{FlatBuilder, GluePlan, Strand, StrandKind};
use crate::diagram::Diagram;
use crate::error::Result;
use crate::geom::{q, qr, GroupEl, Pt, Q};
use crate::map::Family;

fn vertical(family: Family, handle: i64, offset: Q) -> Strand {
    Strand::seam(family, (handle, 0), (0, 1), offset)
}

/// A seam wiggling once across the vertical line of its handle: crosses the
/// offset-0 vertical seam exactly once. `sign > 0` bulges right then left
/// going up; `sign < 0` the mirror image.
fn winding_vertical(family: Family, handle: i64, sign: i64, d: Q) -> Strand {
    let x0 = q(handle);
    let s = if sign >= 0 { d } else { -d };
    let pts = vec![
        Pt::new(&x0 + &s, qr(1, 16)),
        Pt::new(&x0 + &s, qr(3, 8)),
        Pt::new(&x0 - &s, qr(5, 8)),
        Pt::new(&x0 - &s, qr(15, 16)),
    ];
    Strand {
        family,
        pts,
        kind: StrandKind::Arc { start_corner: (handle, 0), end_corner: (handle, 1) },
    }
}

/// The trivial genus-two Heegaard diagram: `iota(a_i, b_j) = delta_ij`.
pub fn trivial_heegaard() -> Result<Diagram> {
    let mut fb = FlatBuilder::new();
    fb.add_marking();
    let b1 = fb.add(vertical(Family::Beta, 0, q(0)));
    let b2 = fb.add(vertical(Family::Beta, 1, q(0)));
    fb.build(
        Family::Alpha,
        &GluePlan::Chains(vec![vec![(b1, true)], vec![(b2, true)]]),
    )
}

/// The standard S^2 x S^2 diagram: gamma vertical, beta of slope 1/2.
pub fn standard_s2xs2() -> Result<Diagram> {
    let mut fb = FlatBuilder::new();
    fb.add_marking();
    let g1 = fb.add(vertical(Family::Gamma, 0, q(0)));
    let g2 = fb.add(vertical(Family::Gamma, 1, q(0)));
    let b1 = fb.add(Strand::seam(Family::Beta, (0, 0), (2, 1), q(0)));
    let b2 = fb.add(Strand::seam(Family::Beta, (1, 0), (2, 1), q(0)));
    fb.build(
        Family::Alpha,
        &GluePlan::Chains(vec![
            vec![(g1, true)],
            vec![(g2, true)],
            vec![(b1, true)],
            vec![(b2, true)],
        ]),
    )
}

/// Standard diagram with beta parallel to gamma up to one winding at each
/// handle; signs pick CP^2 # CP^2 (+,+) or CP^2 # bar CP^2 (+,-).
pub fn standard_winding(w1: i64, w2: i64) -> Result<Diagram> {
    let mut fb = FlatBuilder::new();
    fb.add_marking();
    let g1 = fb.add(vertical(Family::Gamma, 0, q(0)));
    let g2 = fb.add(vertical(Family::Gamma, 1, q(0)));
    let b1 = fb.add(winding_vertical(Family::Beta, 0, w1, qr(1, 64)));
    let b2 = fb.add(winding_vertical(Family::Beta, 1, w2, qr(1, 64)));
    fb.build(
        Family::Alpha,
        &GluePlan::Chains(vec![
            vec![(g1, true)],
            vec![(g2, true)],
            vec![(b1, true)],
            vec![(b2, true)],
        ]),
    )
}

pub fn standard_cp2_cp2() -> Result<Diagram> {
    standard_winding(1, 1)
}

pub fn standard_cp2_cp2bar() -> Result<Diagram> {
    standard_winding(1, -1)
}

/// The (2,2) diagram where alpha = beta = gamma: both families are
/// boundary-parallel loops.
pub fn two_two_diagram() -> Result<Diagram> {
    let mut fb = FlatBuilder::new();
    fb.add_marking();
    fb.add(Strand::corner_loop(Family::Beta, (0, 1), qr(1, 8)));
    fb.add(Strand::corner_loop(Family::Beta, (1, 1), qr(1, 8)));
    fb.add(Strand::corner_loop(Family::Gamma, (0, 1), qr(1, 10)));
    fb.add(Strand::corner_loop(Family::Gamma, (1, 1), qr(1, 10)));
    fb.build(Family::Alpha, &GluePlan::Chains(vec![]))
}

/// A single boundary-parallel loop at the given handle.
pub fn parallel_loop(family: Family, handle: i64, r: Q) -> Strand {
    Strand::corner_loop(family, (handle, 1), r)
}

/// Verticals at both handles with an explicit glue offset: offset 0 gives
/// the trivial diagram, other offsets re-chain the arcs.
pub fn vertical_with_offsets(copies: usize, h1: i64, h2: i64) -> Result<Diagram> {
    let mut fb = FlatBuilder::new();
    fb.add_marking();
    for k in 0..copies {
        fb.add(vertical(Family::Beta, 0, qr(k as i64 + 1, 512)));
        fb.add(vertical(Family::Beta, 1, qr(k as i64 + 1, 512)));
    }
    fb.build(Family::Alpha, &GluePlan::Offsets { h1, h2 })
}

/// Used by tests that need a raw group element.
pub fn corner_reflection(v: (i64, i64)) -> GroupEl {
    GroupEl { sign: -1, tx: v.0, ty: v.1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::CurveRef;
    use crate::map::Family;

    #[test]
    fn trivial_is_valid() {
        let d = trivial_heegaard().unwrap();
        let rep = d.validate();
        assert!(rep.is_valid(), "{:?}", rep.errors);
        let betas = d.family_curves(Family::Beta);
        assert_eq!(betas.len(), 2);
        let m: Vec<usize> = betas
            .iter()
            .flat_map(|&b| {
                [
                    d.raw_intersections(CurveRef::Base(0), CurveRef::Curve(b)),
                    d.raw_intersections(CurveRef::Base(1), CurveRef::Curve(b)),
                ]
            })
            .collect();
        let mut sorted = m.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 0, 1, 1]);
        assert_eq!(d.family_intersections(Family::Alpha, Family::Beta), 2);
    }

    #[test]
    fn standard_s2xs2_is_valid() {
        let d = standard_s2xs2().unwrap();
        let rep = d.validate();
        assert!(rep.is_valid(), "{:?}", rep.errors);
        assert_eq!(d.family_intersections(Family::Alpha, Family::Beta), 2);
        assert_eq!(d.family_intersections(Family::Alpha, Family::Gamma), 2);
        assert_eq!(d.family_intersections(Family::Beta, Family::Gamma), 2);
    }

    #[test]
    fn standard_windings_are_valid() {
        for (w1, w2) in [(1, 1), (1, -1), (-1, -1), (-1, 1)] {
            let d = standard_winding(w1, w2).unwrap();
            let rep = d.validate();
            assert!(rep.is_valid(), "({w1},{w2}): {:?}", rep.errors);
            assert_eq!(d.family_intersections(Family::Beta, Family::Gamma), 2);
            assert_eq!(d.family_intersections(Family::Alpha, Family::Beta), 2);
        }
    }

    #[test]
    fn two_two_is_valid() {
        let d = two_two_diagram().unwrap();
        let rep = d.validate();
        assert!(rep.is_valid(), "{:?}", rep.errors);
        assert_eq!(d.family_intersections(Family::Beta, Family::Gamma), 0);
        assert_eq!(d.family_intersections(Family::Alpha, Family::Beta), 0);
        assert!(rep
            .warnings
            .iter()
            .any(|w| w.contains("disjoint from the base")));
    }
}
