//! Minimal position: removing bigons between curves, pushing trivial
//! passages back across the base curves, and sliding marking seams out of
//! the way. Every diagram-producing operation runs this to a fixpoint, so
//! crossing counts realize geometric intersection numbers.

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::map::{DartId, Family, Map, MapBuilder, NodeKind, NIL};

#[derive(Debug, Clone, Copy)]
enum Move {
    /// Two-sided face between distinct curves; both corner crossings
    /// dissolve.
    Bigon { a: DartId },
    /// Face [curve edge, mark edge, circle segment] at a mark end: dissolve
    /// the crossing and slide the mark end past the slot.
    MarkTriangle { a: DartId },
    /// One-sided face: an edge joining rot-adjacent slots of one circle;
    /// push the passage across the base curve.
    BoundaryBigon { a: DartId },
}

fn find_move(map: &Map) -> Option<Move> {
    let n = map.dart_count();
    let mut seen = vec![false; n];
    let mut triangle: Option<Move> = None;
    let mut boundary: Option<Move> = None;
    for d in 0..n {
        if seen[d] {
            continue;
        }
        let mut orbit = vec![d];
        let mut e = map.next_in_face(d);
        while e != d {
            orbit.push(e);
            e = map.next_in_face(e);
        }
        for &x in &orbit {
            seen[x] = true;
        }
        match orbit.len() {
            1 => {
                let a = orbit[0];
                let (u, v) = (map.node_of[a], map.node_of[map.pairing[a]]);
                if u == v && map.is_circle(u) && map.family_of_dart(a) != Family::Mark {
                    boundary.get_or_insert(Move::BoundaryBigon { a });
                }
            }
            2 => {
                let (a, b) = (orbit[0], orbit[1]);
                // Corners of the face: the nodes where the walk turns.
                let n1 = map.node_of[map.pairing[a]];
                let n2 = map.node_of[map.pairing[b]];
                let circles =
                    map.is_circle(n1) as u8 + map.is_circle(n2) as u8;
                if circles == 0 {
                    if map.curve_of[a] != map.curve_of[b] {
                        return Some(Move::Bigon { a });
                    }
                } else if circles == 1 {
                    // Triangle [edge, edge, circle segment]; reducible when
                    // exactly one side is a marking seam ending at that
                    // circle corner.
                    let fam_a = map.family_of_dart(a);
                    let fam_b = map.family_of_dart(b);
                    let marks = (fam_a == Family::Mark) as u8 + (fam_b == Family::Mark) as u8;
                    if marks == 1 {
                        let m = if fam_a == Family::Mark { a } else { b };
                        let me = if map.is_circle(map.node_of[m]) {
                            m
                        } else {
                            map.pairing[m]
                        };
                        if map.is_circle(map.node_of[me]) && map.glue[me] == NIL {
                            triangle.get_or_insert(Move::MarkTriangle { a });
                        }
                    }
                }
            }
            _ => {}
        }
    }
    // Bigons first (returned immediately above), then mark triangles, then
    // boundary pushes; boundary pushes can create new crossings, so clean
    // crossing-level junk first.
    triangle.or(boundary)
}

/// Dissolve one crossing node in the builder: both strands splice straight.
fn dissolve_crossing(mb: &mut MapBuilder, node: usize) -> Result<()> {
    let ds = mb.nodes[node].1.clone();
    if ds.len() != 4 {
        return Err(Error::Invalid("dissolving a non 4-valent node".into()));
    }
    // Strand pairs: (ds[0], ds[2]) and (ds[1], ds[3]).
    for (i, j) in [(0usize, 2usize), (1, 3)] {
        let a = mb.darts[ds[i]].pairing;
        let b = mb.darts[ds[j]].pairing;
        if a == ds[j] || b == ds[i] {
            return Err(Error::Invalid(
                "dissolving a crossing would erase a curve entirely".into(),
            ));
        }
        mb.pair(a, b);
    }
    for d in ds {
        mb.darts[d].dead = true;
    }
    mb.nodes[node].1.clear();
    Ok(())
}

fn apply_move(d: &Diagram, mv: Move) -> Result<Diagram> {
    let map = &d.map;
    let mut mb = MapBuilder::from_map(map);
    match mv {
        Move::Bigon { a } => {
            let x = map.node_of[a];
            let y = map.node_of[map.pairing[a]];
            // Dissolve both crossings. Splicing twice is safe because the
            // builder updates pairings in place.
            dissolve_crossing(&mut mb, x)?;
            dissolve_crossing(&mut mb, y)?;
        }
        Move::MarkTriangle { a } => {
            let b = map.next_in_face(a);
            let (u, _v) = (map.node_of[a], map.node_of[map.pairing[a]]);
            let crossing = if map.is_circle(u) { map.node_of[b] } else { u };
            // Mark end dart at the circle.
            let (ma, mb_dart) = if map.family_of_dart(a) == Family::Mark {
                (a, b)
            } else {
                (b, a)
            };
            let _ = mb_dart;
            let me = if map.is_circle(map.node_of[ma]) { ma } else { map.pairing[ma] };
            // Real slot in the triangle: the circle dart of the real edge.
            let real = if map.family_of_dart(a) == Family::Mark { b } else { a };
            let rs = if map.is_circle(map.node_of[real]) { real } else { map.pairing[real] };
            if !map.is_circle(map.node_of[rs]) || !map.is_circle(map.node_of[me]) {
                return Err(Error::Invalid("mark triangle without circle corner".into()));
            }
            dissolve_crossing(&mut mb, crossing)?;
            // Slide the mark end past the real slot.
            let node = map.node_of[me];
            let list = &mut mb.nodes[node].1;
            let pos_me = list.iter().position(|&x| x == me).unwrap();
            list.remove(pos_me);
            let pos_rs = list.iter().position(|&x| x == rs).unwrap();
            // If the mark end was ccw-after the slot, it moves ccw-before,
            // and vice versa.
            if map.rot_next[rs] == me {
                list.insert(pos_rs, me);
            } else {
                list.insert(pos_rs + 1, me);
            }
        }
        Move::BoundaryBigon { a } => {
            let s1 = if map.rot_next[map.pairing[a]] == a { a } else { map.pairing[a] };
            let s2 = map.pairing[s1];
            // s2 immediately precedes s1 ccw with an empty gap.
            debug_assert_eq!(map.rot_next[s2], s1);
            let g1 = map.glue[s1];
            let g2 = map.glue[s2];
            if g1 == NIL || g2 == NIL {
                return Err(Error::Invalid("boundary bigon without glue".into()));
            }
            let curve = map.curve_of[s1];
            // Mark ends strictly inside the ccw gap from g1 to g2.
            let mut marks_between = Vec::new();
            let mut e = map.rot_next[g1];
            while e != g2 {
                if map.family_of_dart(e) == Family::Mark {
                    marks_between.push(e);
                } else if map.glue[e] != NIL {
                    return Err(Error::Invalid(
                        "glue does not reverse order at a boundary bigon".into(),
                    ));
                }
                e = map.rot_next[e];
            }
            let o1 = map.pairing[g1];
            let o2 = map.pairing[g2];
            let closed_passage = o1 == g2;
            // Remove the four slots.
            for s in [s1, s2, g1, g2] {
                mb.kill_dart(s);
            }
            // Build the hug chain across the former gap, crossing each mark
            // arc once. Chain darts: for each mark end me (in ccw order
            // from g1), a crossing with rotation [P-bwd, mark-out, P-fwd,
            // mark-in].
            let mut entry: Vec<DartId> = Vec::new();
            let mut exit: Vec<DartId> = Vec::new();
            for &me in &marks_between {
                let node = mb.add_node(NodeKind::Crossing);
                let far = mb.darts[me].pairing;
                let mark_curve = mb.darts[me].curve;
                let p_bwd = mb.push_dart(node, curve);
                let mark_out = mb.push_dart(node, mark_curve);
                let p_fwd = mb.push_dart(node, curve);
                let mark_in = mb.push_dart(node, mark_curve);
                mb.pair(mark_in, me);
                mb.pair(mark_out, far);
                entry.push(p_bwd);
                exit.push(p_fwd);
            }
            if closed_passage {
                // The far side was the bare edge g1-g2; the curve becomes
                // the hug cycle alone.
                if marks_between.is_empty() {
                    return Err(Error::Invalid(
                        "reduction would erase an inessential curve".into(),
                    ));
                }
                for i in 0..marks_between.len() {
                    let j = (i + 1) % marks_between.len();
                    mb.pair(exit[i], entry[j]);
                }
            } else {
                let mut prev = o1;
                for i in 0..marks_between.len() {
                    mb.pair(prev, entry[i]);
                    prev = exit[i];
                }
                mb.pair(prev, o2);
                if marks_between.is_empty() {
                    // Direct splice.
                    mb.pair(o1, o2);
                }
            }
        }
    }
    let (map, _) = mb.commit();
    Ok(Diagram { map, base: d.base })
}

/// Reduce to minimal position: no bigons, no trivial base passages, the
/// marking in minimal position against everything.
pub fn reduce(d: &Diagram) -> Result<Diagram> {
    let mut cur = d.clone();
    let mut guard = 0usize;
    let limit = 4 * d.map.dart_count() * (d.map.dart_count() + 4) + 64;
    while let Some(mv) = find_move(&cur.map) {
        cur = apply_move(&cur, mv)?;
        guard += 1;
        if guard > limit {
            return Err(Error::Invalid("reduction did not terminate".into()));
        }
    }
    Ok(cur)
}

pub fn is_reduced(d: &Diagram) -> bool {
    find_move(&d.map).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{FlatBuilder, GluePlan, Strand, StrandKind};
    use crate::fixtures;
    use crate::geom::{q, qr, Pt};
    use crate::map::Family;

    #[test]
    fn standard_diagrams_are_reduced() {
        for d in [
            fixtures::trivial_heegaard().unwrap(),
            fixtures::standard_s2xs2().unwrap(),
            fixtures::standard_cp2_cp2().unwrap(),
            fixtures::two_two_diagram().unwrap(),
        ] {
            assert!(is_reduced(&d));
            let r = reduce(&d).unwrap();
            assert_eq!(r, d);
        }
    }

    /// A beta strand wiggling across the vertical gamma twice bounds a
    /// bigon; reduction removes both crossings.
    #[test]
    fn artificial_bigon_is_removed() {
        let mut fb = FlatBuilder::new();
        fb.add_marking();
        let g1 = fb.add(Strand::seam(Family::Gamma, (0, 0), (0, 1), q(0)));
        let g2 = fb.add(Strand::seam(Family::Gamma, (1, 0), (0, 1), q(0)));
        let d = qr(1, 64);
        let pts = vec![
            Pt::new(-d.clone(), qr(1, 16)),
            Pt::new(-d.clone(), qr(2, 8)),
            Pt::new(d.clone(), qr(3, 8)),
            Pt::new(-d.clone(), qr(4, 8)),
            Pt::new(-d.clone(), qr(15, 16)),
        ];
        let b1 = fb.add(Strand {
            family: Family::Beta,
            pts,
            kind: StrandKind::Arc { start_corner: (0, 0), end_corner: (0, 1) },
        });
        let b2 = fb.add(Strand::seam(Family::Beta, (1, 0), (0, 1), qr(1, 64)));
        let diag = fb
            .build(
                Family::Alpha,
                &GluePlan::Chains(vec![
                    vec![(g1, true)],
                    vec![(g2, true)],
                    vec![(b1, true)],
                    vec![(b2, true)],
                ]),
            )
            .unwrap();
        assert!(diag.validate().is_valid());
        assert_eq!(diag.family_intersections(Family::Beta, Family::Gamma), 2);
        let red = reduce(&diag).unwrap();
        assert!(red.validate().is_valid(), "{:?}", red.validate().errors);
        assert_eq!(red.family_intersections(Family::Beta, Family::Gamma), 0);
        assert!(is_reduced(&red));
    }
}
