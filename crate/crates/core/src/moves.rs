//! Geometric moves on diagrams: parallel push-offs, Dehn twists about the
//! base curves, handle slides, basing pushes for inessential
//! intersections, windings, the five homeomorphisms, and the curve
//! replacements used by the standardizer.

use std::collections::HashSet;

use num_rational::Rational64;

use crate::diagram::{CurveRef, Diagram};
use crate::error::{Error, Result};
use crate::map::{CurveId, DartId, Family, MapBuilder, NodeKind, Puncture, Side, NIL};
use crate::reduce::reduce;
use crate::route::{insert_closed_route, Step};

/// Steps of a closed route running parallel to a drawn curve on its left.
pub fn parallel_steps(d: &Diagram, c: CurveId) -> Result<Vec<Step>> {
    let map = &d.map;
    let cyc = map.curve_cycle(c);
    if cyc.is_empty() {
        return Err(Error::Unsupported("parallel of a dartless curve".into()));
    }
    let mut steps = Vec::new();
    for &fwd in &cyc {
        let arr = map.pairing[fwd];
        match map.nodes[map.node_of[arr]] {
            NodeKind::Crossing => {
                steps.push(Step::Edge { dart: map.rot_prev[arr] });
            }
            NodeKind::Circle(_) => {
                let after = map.rot_prev[arr];
                let after_partner = map.glue[arr];
                steps.push(Step::Base { after, after_partner });
            }
        }
    }
    Ok(steps)
}

/// Insert a parallel push-off of `c` as a new curve of `family`.
pub fn insert_parallel(d: &Diagram, c: CurveId, family: Family) -> Result<Diagram> {
    let steps = parallel_steps(d, c)?;
    let (nd, _) = insert_closed_route(d, family, &steps)?;
    Ok(nd)
}

/// Dehn twist about the base curve of `handle`, applied to the curves in
/// `targets` only, `power` full turns (sign = direction). Implemented as a
/// drag of every target strand end around the minus-side circle.
pub fn twist_about_base(
    d: &Diagram,
    handle: u8,
    targets: &[CurveId],
    power: i64,
) -> Result<Diagram> {
    if power == 0 {
        return Ok(d.clone());
    }
    let map = &d.map;
    let node = map.circle_node(Puncture { handle, side: Side::Minus });
    let all = map.darts_at(node);
    let in_targets =
        |x: DartId| -> bool { targets.contains(&map.curve_of[x]) && map.glue[x] != NIL };
    let s_list: Vec<DartId> = all.iter().copied().filter(|&x| in_targets(x)).collect();
    if s_list.is_empty() {
        return Ok(d.clone());
    }
    let laps = power.unsigned_abs() as usize;
    let ccw = power > 0;
    let mut mb = MapBuilder::from_map(map);
    // For each target end `s`, the obstacle sequence: all non-target
    // incidences of the circle, in drag order starting after `s`.
    // Crossing nodes are created per (s, lap, t); along each obstacle t the
    // crossings are ordered by total swept angle.
    let pos_of: std::collections::HashMap<DartId, usize> =
        all.iter().copied().enumerate().map(|(i, x)| (x, i)).collect();
    let m = all.len();
    struct Hit {
        s: DartId,
        t: DartId,
        swept: usize,
        p_bwd: DartId,
        p_fwd: DartId,
        t_out: DartId,
        t_in: DartId,
    }
    let mut hits: Vec<Hit> = Vec::new();
    for &s in &s_list {
        for lap in 0..laps {
            // obstacles in drag order from s
            for k in 1..m {
                let idx = if ccw {
                    (pos_of[&s] + k) % m
                } else {
                    (pos_of[&s] + m - k) % m
                };
                let t = all[idx];
                if in_targets(t) {
                    continue;
                }
                let node = mb.add_node(NodeKind::Crossing);
                let s_curve = mb.darts[s].curve;
                let t_curve = mb.darts[t].curve;
                // ccw drag: rotation [s-bwd, t-out, s-fwd, t-in];
                // cw drag: [s-bwd, t-in, s-fwd, t-out].
                let (p_bwd, t_a, p_fwd, t_b);
                p_bwd = mb.push_dart(node, s_curve);
                if ccw {
                    t_a = mb.push_dart(node, t_curve); // t-out
                    p_fwd = mb.push_dart(node, s_curve);
                    t_b = mb.push_dart(node, t_curve); // t-in
                    hits.push(Hit {
                        s,
                        t,
                        swept: lap * m + k,
                        p_bwd,
                        p_fwd,
                        t_out: t_a,
                        t_in: t_b,
                    });
                } else {
                    t_a = mb.push_dart(node, t_curve); // t-in
                    p_fwd = mb.push_dart(node, s_curve);
                    t_b = mb.push_dart(node, t_curve); // t-out
                    hits.push(Hit {
                        s,
                        t,
                        swept: lap * m + k,
                        p_bwd,
                        p_fwd,
                        t_out: t_b,
                        t_in: t_a,
                    });
                }
            }
        }
    }
    // Rechain every target strand: far end -> hits in swept order -> slot.
    for &s in &s_list {
        let far = mb.darts[s].pairing;
        let mut seq: Vec<&Hit> = hits.iter().filter(|h| h.s == s).collect();
        seq.sort_by_key(|h| h.swept);
        let mut prev = far;
        for h in &seq {
            mb.pair(prev, h.p_bwd);
            prev = h.p_fwd;
        }
        mb.pair(prev, s);
    }
    // Rechain every obstacle strand: from its far end through its hits,
    // ordered from outside in (ascending swept), ending at the slot/end.
    let obstacles: Vec<DartId> = all.iter().copied().filter(|&x| !in_targets(x)).collect();
    for &t in &obstacles {
        let far = mb.darts[t].pairing;
        let mut seq: Vec<&Hit> = hits.iter().filter(|h| h.t == t).collect();
        if seq.is_empty() {
            continue;
        }
        seq.sort_by_key(|h| h.swept);
        let mut prev = far;
        for h in &seq {
            mb.pair(prev, h.t_out);
            prev = h.t_in;
        }
        mb.pair(prev, t);
    }
    let (map, _) = mb.commit();
    reduce(&Diagram { map, base: d.base })
}

/// The five homeomorphisms at the diagram level. Slope actions live in
/// [`crate::slope`]; on diagrams each homeomorphism acts by relabeling
/// circles and possibly reversing orientation, the twisting being absorbed
/// by isotopy of the representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagramHomeo {
    /// Hyperelliptic involution: swaps both +- pairs.
    J,
    /// Swaps the two handles.
    JPrime,
    /// Half twist: swaps the +- pair of one handle.
    Phi { handle: u8 },
    /// Reflection (orientation reversing).
    H,
    /// The other reflection; same diagram-level action as H.
    Psi,
}

pub fn apply_homeo(d: &Diagram, h: DiagramHomeo) -> Result<Diagram> {
    let mut map = d.map.clone();
    match h {
        DiagramHomeo::J => {
            for kind in map.nodes.iter_mut() {
                if let NodeKind::Circle(p) = kind {
                    *p = p.partner();
                }
            }
        }
        DiagramHomeo::JPrime => {
            for kind in map.nodes.iter_mut() {
                if let NodeKind::Circle(p) = kind {
                    p.handle = 1 - p.handle;
                }
            }
        }
        DiagramHomeo::Phi { handle } => {
            for kind in map.nodes.iter_mut() {
                if let NodeKind::Circle(p) = kind {
                    if p.handle == handle {
                        *p = p.partner();
                    }
                }
            }
        }
        DiagramHomeo::H | DiagramHomeo::Psi => {
            std::mem::swap(&mut map.rot_next, &mut map.rot_prev);
        }
    }
    Ok(Diagram { map, base: d.base })
}

/// Push one inessential crossing through the base: the crossing of the
/// triangle face `[edge of c, edge of e, segment of the circle]` moves to
/// the far side of the base curve.
fn push_triangle(d: &Diagram, tri: Triangle) -> Result<Diagram> {
    let map = &d.map;
    let Triangle { crossing, s_f, s_g } = tri;
    let mut mb = MapBuilder::from_map(map);
    // Strand data at the crossing: for each of the two curves, the dart
    // toward its slot and the dart away (f0/g0).
    let ds = map.darts_at(crossing);
    let toward = |slot: DartId| -> Option<DartId> {
        ds.iter().copied().find(|&x| map.pairing[x] == slot)
    };
    let f_to = toward(s_f).ok_or_else(|| Error::Invalid("triangle edge missing".into()))?;
    let g_to = toward(s_g).ok_or_else(|| Error::Invalid("triangle edge missing".into()))?;
    let f_away = map.straight_through(f_to);
    let g_away = map.straight_through(g_to);
    let f0 = map.pairing[f_away];
    let g0 = map.pairing[g_away];
    let t_f = map.glue[s_f];
    let t_g = map.glue[s_g];
    let f1 = map.pairing[t_f];
    let g1 = map.pairing[t_g];
    let f_curve = map.curve_of[s_f];
    let g_curve = map.curve_of[s_g];
    // Remove the old crossing; strands now run f0 -> s_f and g0 -> s_g.
    for &x in &ds {
        mb.darts[x].dead = true;
    }
    mb.nodes[crossing].1.clear();
    mb.pair(f0, s_f);
    mb.pair(g0, s_g);
    // New crossing on the far side, adjacent to t_f: the g strand hugs the
    // circle from t_g to the new crossing, crossing intervening mark ends.
    // Determine hug direction: from t_g toward t_f the short way not
    // passing other real slots (glue order reversal guarantees the gap
    // between t_f and t_g in one direction is mark-only).
    let node = map.node_of[t_f];
    let mut path: Vec<DartId> = Vec::new();
    let mut e = map.rot_next[t_f];
    let mut ok_next = true;
    while e != t_g {
        if map.glue[e] != NIL {
            ok_next = false;
            break;
        }
        path.push(e);
        e = map.rot_next[e];
    }
    if !ok_next {
        path.clear();
        let mut e = map.rot_prev[t_f];
        while e != t_g {
            if map.glue[e] != NIL {
                return Err(Error::Invalid("triangle slots not adjacent across glue".into()));
            }
            path.push(e);
            e = map.rot_prev[e];
        }
    }
    let _ = node;
    // New crossing between the f strand (t_f -> f1) and the g strand.
    // Local picture: both strands leave the circle near t_f and t_g and
    // cross once; ccw rotation [f-bwd(toward t_f), g-fwd(toward g1),
    // f-fwd(toward f1), g-bwd(toward t_g)].
    let y = mb.add_node(NodeKind::Crossing);
    let f_bwd = mb.push_dart(y, f_curve);
    let g_fwd = mb.push_dart(y, g_curve);
    let f_fwd = mb.push_dart(y, f_curve);
    let g_bwd = mb.push_dart(y, g_curve);
    mb.pair(t_f, f_bwd);
    mb.pair(f_fwd, f1);
    mb.pair(g_fwd, g1);
    // g strand from t_g crosses the intervening marks, then reaches the
    // crossing.
    let mut prev = t_g;
    for &me in path.iter().rev() {
        // path was collected from t_f side; crossing order from t_g is the
        // reverse.
        let far = mb.darts[me].pairing;
        let mcurve = mb.darts[me].curve;
        let x = mb.add_node(NodeKind::Crossing);
        let gb = mb.push_dart(x, g_curve);
        let m_out = mb.push_dart(x, mcurve);
        let gf = mb.push_dart(x, g_curve);
        let m_in = mb.push_dart(x, mcurve);
        mb.pair(m_in, me);
        mb.pair(m_out, far);
        mb.pair(prev, gb);
        prev = gf;
    }
    mb.pair(prev, g_bwd);
    let (map, _) = mb.commit();
    Ok(Diagram { map, base: d.base })
}

#[derive(Debug, Clone, Copy)]
struct Triangle {
    crossing: usize,
    s_f: DartId,
    s_g: DartId,
}

/// Find a triangle face `[edge, edge, circle segment]` between two real
/// families based at a circle matching `want`, with both edges real.
fn find_triangle(d: &Diagram, want: &dyn Fn(Puncture) -> bool) -> Option<Triangle> {
    let map = &d.map;
    let n = map.dart_count();
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut orbit = vec![s];
        let mut e = map.next_in_face(s);
        while e != s {
            orbit.push(e);
            e = map.next_in_face(e);
        }
        for &x in &orbit {
            seen[x] = true;
        }
        if orbit.len() != 2 {
            continue;
        }
        let (a, b) = (orbit[0], orbit[1]);
        if map.family_of_dart(a) == Family::Mark || map.family_of_dart(b) == Family::Mark {
            continue;
        }
        if map.curve_of[a] == map.curve_of[b] {
            continue;
        }
        // One corner at a circle (the slots), the other a crossing.
        let n1 = map.node_of[map.pairing[a]];
        let n2 = map.node_of[map.pairing[b]];
        let (slot_side, cross_side) = if map.is_circle(n1) && !map.is_circle(n2) {
            (a, b)
        } else if map.is_circle(n2) && !map.is_circle(n1) {
            (b, a)
        } else {
            continue;
        };
        let p = map.puncture_of(map.node_of[map.pairing[slot_side]]).unwrap();
        if !want(p) {
            continue;
        }
        // slots: pairing(slot_side) is one; the other is the slot the
        // second edge leaves from: the walk turns at the circle between
        // them.
        let s1 = map.pairing[slot_side];
        let crossing = map.node_of[map.pairing[cross_side]];
        let s2 = map.pairing[map.next_in_face(slot_side)];
        let _ = s2;
        // The two slots are s1 and the pairing of the dart leaving the
        // circle along the other edge: that dart is rot_next(s1) skipping
        // marks? The face has exactly two edge sides, so the exit dart is
        // the other orbit dart's pairing-side at the circle.
        let other_slot = {
            // cross_side points from the crossing to ... find the dart at
            // the circle on the other edge: it is the dart x with
            // pairing(x) at the crossing and node(x) the circle.
            let cands: Vec<DartId> = map
                .darts_at(map.node_of[s1])
                .into_iter()
                .filter(|&x| map.node_of[map.pairing[x]] == crossing)
                .collect();
            if cands.len() != 1 {
                // ambiguous; skip
                continue;
            }
            cands[0]
        };
        if map.glue[s1] == NIL || map.glue[other_slot] == NIL {
            continue;
        }
        return Some(Triangle { crossing, s_f: s1, s_g: other_slot });
    }
    None
}

/// Push every inessential intersection so its triangle is based at the
/// chosen side of each handle.
pub fn push_inessential(d: &Diagram, target_side: [Side; 2]) -> Result<Diagram> {
    let mut cur = reduce(d)?;
    let mut guard = 0;
    let limit = 4 * (cur.map.dart_count() + 8) * (cur.map.dart_count() + 8);
    loop {
        let wrong = |p: Puncture| p.side != target_side[p.handle as usize];
        match find_triangle(&cur, &wrong) {
            None => break,
            Some(t) => {
                cur = push_triangle(&cur, t)?;
                cur = reduce(&cur)?;
            }
        }
        guard += 1;
        if guard > limit {
            return Err(Error::Invalid("basing push did not terminate".into()));
        }
    }
    Ok(cur)
}

/// Winding of `curve` relative to the `opposing` family at handle `i`:
/// signed count of its inessential intersections in triangles based at the
/// plus side, divided by the opposing family's intersection with the base
/// curve. Requires plus-based inessential intersections and oriented
/// curves.
pub fn winding(
    d: &Diagram,
    handle: u8,
    curve: CurveId,
    opposing: Family,
) -> Result<Rational64> {
    let denom = d.family_intersections(d.base, opposing) as i64;
    let denom_h: i64 = d
        .family_curves(opposing)
        .iter()
        .map(|&g| d.raw_intersections(CurveRef::Base(handle), CurveRef::Curve(g)) as i64)
        .sum();
    let _ = denom;
    if denom_h == 0 {
        return Err(Error::Precondition("opposing family misses this handle".into()));
    }
    let fwd_c = d.forward_darts(curve)?;
    let mut fwd_g: HashSet<DartId> = HashSet::new();
    for g in d.family_curves(opposing) {
        fwd_g.extend(d.forward_darts(g)?);
    }
    // Peel triangles at (handle, plus): count signed crossings, pushing
    // each through virtually by deleting it from a scratch copy.
    let mut scratch = d.clone();
    let mut total: i64 = 0;
    let mut guard = 0;
    loop {
        let want = |p: Puncture| p.handle == handle && p.side == Side::Plus;
        let tri = {
            let found = find_triangle(&scratch, &want);
            match found {
                None => break,
                Some(t) => t,
            }
        };
        // The crossing involves `curve` and the opposing family?
        let cs: Vec<CurveId> = scratch
            .map
            .darts_at(tri.crossing)
            .iter()
            .map(|&x| scratch.map.curve_of[x])
            .collect();
        let involves = cs.contains(&curve)
            && cs.iter().any(|&c| scratch.map.curves[c].family == opposing);
        if involves {
            // Sign in the original diagram orientation: find the out-dart
            // of `curve` at this crossing in the scratch map. Orientations
            // carry over since scratch starts as a clone and push_triangle
            // preserves curve ids.
            let ds = scratch.map.darts_at(tri.crossing);
            let out_c = ds
                .iter()
                .copied()
                .find(|&x| scratch.map.curve_of[x] == curve && fwd_scratch(&scratch, x, &fwd_c));
            let sign = match out_c {
                Some(oc) => {
                    let nx = scratch.map.rot_next[oc];
                    if fwd_scratch(&scratch, nx, &fwd_g) {
                        1
                    } else {
                        -1
                    }
                }
                None => 0,
            };
            total += sign;
        }
        scratch = push_triangle(&scratch, tri)?;
        guard += 1;
        if guard > 4 * (d.map.dart_count() + 16) * (d.map.dart_count() + 16) {
            return Err(Error::Invalid("winding peel did not terminate".into()));
        }
    }
    Ok(Rational64::new(total, denom_h))
}

/// Whether a scratch-map dart is forward: scratch maps share curve ids
/// with the original but darts differ; recompute forwardness from the
/// curve orientation stored in the scratch map itself.
fn fwd_scratch(d: &Diagram, x: DartId, _orig: &HashSet<DartId>) -> bool {
    let c = d.map.curve_of[x];
    if let Ok(f) = d.forward_darts(c) {
        f.contains(&x)
    } else {
        false
    }
}

/// Slide `moved` over `other` (same family) along a band given as a route
/// from a position beside `moved` to a position beside `other`. The band
/// is described by the darts it crosses; it must avoid the family itself.
pub fn handle_slide(
    d: &Diagram,
    moved: CurveId,
    other: CurveId,
    band: &[Step],
    band_start: DartId,
    band_end: DartId,
) -> Result<Diagram> {
    let fam = d.map.curves[moved].family;
    if d.map.curves[other].family != fam || moved == other {
        return Err(Error::InvalidBand("band must join the two curves of one family".into()));
    }
    // Validate the band avoids its own family.
    for st in band {
        if let Step::Edge { dart } = st {
            if d.map.curve_of[*dart] == moved || d.map.curve_of[*dart] == other {
                return Err(Error::InvalidBand("band crosses the sliding family".into()));
            }
        }
    }
    // The slid curve: parallel lap of `moved` starting at the band foot,
    // band to `other`, full parallel lap of `other`, band back. We build
    // it as a closed route: lap(moved) from foot, band, lap(other), band
    // reversed. The reversed band crosses the same strands adjacent to the
    // outgoing crossings; we realize it by crossing the same darts again
    // (each recorded dart half-edge lies next to the outgoing passage).
    let lap_moved = lap_from(d, moved, band_start)?;
    let lap_other = lap_from(d, other, band_end)?;
    let mut steps: Vec<Step> = Vec::new();
    steps.extend(lap_moved);
    steps.extend(band.iter().copied());
    steps.extend(lap_other);
    for st in band.iter().rev() {
        steps.push(match *st {
            Step::Edge { dart } => Step::Edge { dart },
            Step::Base { after, after_partner } => Step::Base { after: after_partner, after_partner: after },
        });
    }
    let (mut nd, new_curve) = insert_closed_route(d, fam, &steps)?;
    // The new curve replaces `moved`.
    let mut mb = MapBuilder::from_map(&nd.map);
    mb.delete_curve(moved);
    let (map, _) = mb.commit();
    nd = Diagram { map, base: d.base };
    let _ = new_curve;
    let nd = reduce(&nd)?;
    nd.require_valid()?;
    Ok(nd)
}

/// Parallel lap of a curve starting from the event nearest the given dart
/// (a dart on the curve): the full cycle of parallel steps rotated so the
/// lap begins beside `from`.
fn lap_from(d: &Diagram, c: CurveId, from: DartId) -> Result<Vec<Step>> {
    let cyc = d.map.curve_cycle(c);
    if cyc.is_empty() {
        return Err(Error::Unsupported("lap of a dartless curve".into()));
    }
    let pos = cyc.iter().position(|&x| x == from).unwrap_or(0);
    let mut steps = Vec::new();
    for i in 0..cyc.len() {
        let fwd = cyc[(pos + i) % cyc.len()];
        let arr = d.map.pairing[fwd];
        match d.map.nodes[d.map.node_of[arr]] {
            NodeKind::Crossing => steps.push(Step::Edge { dart: d.map.rot_prev[arr] }),
            NodeKind::Circle(_) => steps.push(Step::Base {
                after: d.map.rot_prev[arr],
                after_partner: d.map.glue[arr],
            }),
        }
    }
    Ok(steps)
}

/// A random handle slide within a family: random band feet and a random
/// waypoint face, routed by breadth-first search. Retries until a valid
/// slide is found.
pub fn random_slide<R: rand::Rng>(
    d: &Diagram,
    family: Family,
    rng: &mut R,
) -> Result<Diagram> {
    use crate::route::{face_graph, find_route, RouteSpec};
    let curves = d.family_curves(family);
    if curves.len() != 2 {
        return Err(Error::Precondition(format!("family {family:?} needs two curves")));
    }
    for _attempt in 0..40 {
        let (moved, other) = if rng.gen_bool(0.5) {
            (curves[0], curves[1])
        } else {
            (curves[1], curves[0])
        };
        let cyc_m = d.map.curve_cycle(moved);
        let cyc_o = d.map.curve_cycle(other);
        if cyc_m.is_empty() || cyc_o.is_empty() {
            return Err(Error::Unsupported("slide of a dartless curve".into()));
        }
        let band_start = cyc_m[rng.gen_range(0..cyc_m.len())];
        let band_end = cyc_o[rng.gen_range(0..cyc_o.len())];
        let fg = face_graph(&d.map);
        let waypoint = rng.gen_range(0..fg.nfaces);
        let curves_tbl = d.map.curves.clone();
        let fam = family;
        let spec = RouteSpec {
            map: &d.map,
            may_cross: Box::new(move |c: CurveId| curves_tbl[c].family != fam),
            may_cross_base: true,
        };
        let leg1 = find_route(&spec, &fg, &[fg.face_of_dart[band_start]], &|f| f == waypoint);
        let leg2 = find_route(&spec, &fg, &[waypoint], &|f| f == fg.face_of_dart[band_end]);
        let (mut steps, l2) = match (leg1, leg2) {
            (Some(a), Some(b)) => (a, b),
            _ => continue,
        };
        steps.extend(l2);
        match handle_slide(d, moved, other, &steps, band_start, band_end) {
            Ok(nd) => return Ok(nd),
            Err(_) => continue,
        }
    }
    Err(Error::BudgetExhausted("no valid random slide found".into()))
}

/// Scramble: `n` random slides on randomly chosen present families.
pub fn scramble<R: rand::Rng>(d: &Diagram, n: usize, rng: &mut R) -> Result<Diagram> {
    let mut cur = d.clone();
    let fams = cur.present_families();
    if fams.is_empty() {
        return Ok(cur);
    }
    for _ in 0..n {
        let f = fams[rng.gen_range(0..fams.len())];
        cur = random_slide(&cur, f, rng)?;
    }
    Ok(cur)
}
