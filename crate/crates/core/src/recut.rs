//! Re-cutting: presenting the same curve configuration on the surface cut
//! along a different cut system. The old base curves become drawn curves;
//! crossings with the new base curves become boundary slots.
//!
//! The new marking travels through the transformation as scratch closed
//! curves: a closed curve crossing a new base curve exactly once becomes,
//! after cutting, exactly one essential seam between that handle's two new
//! circles.

use std::collections::{HashMap, HashSet};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::map::{CurveId, DartId, Family, MapBuilder, NodeId, NodeKind, Puncture, Side, NIL};
use crate::reduce;
use crate::route::{face_graph, find_route, insert_closed_route, RouteSpec, Step};

struct SlotRec {
    plus: DartId,
    minus: DartId,
}

/// Insert a scratch closed curve crossing `n1` exactly `c1` times (0 or 1)
/// and `n2` exactly `c2` times, otherwise crossing anything else.
fn insert_seed(d: &Diagram, n1: CurveId, n2: CurveId, c1: bool, c2: bool) -> Result<Diagram> {
    let map = &d.map;
    let fg = face_graph(map);
    let curves = map.curves.clone();
    let avoid = move |c: CurveId| c != n1 && c != n2 && curves[c].family != Family::Temp;
    let spec = RouteSpec { map, may_cross: Box::new(avoid.clone()), may_cross_base: true };
    let pick_dart = |c: CurveId| -> Result<DartId> {
        map.curve_cycle(c)
            .first()
            .copied()
            .ok_or_else(|| Error::Unsupported("new base curve has no crossings".into()))
    };
    let mut steps: Vec<Step> = Vec::new();
    if c1 && c2 {
        let u = pick_dart(n1)?;
        let v = pick_dart(n2)?;
        // Cross n1 at u, route to the left face of v, cross n2, route back
        // to the left face of u.
        steps.push(Step::Edge { dart: u });
        let mid = find_route(&spec, &fg, &[fg.face_of_dart[map.pairing[u]]], &|f| {
            f == fg.face_of_dart[v]
        })
        .ok_or_else(|| Error::Invalid("no seed route".into()))?;
        steps.extend(mid);
        steps.push(Step::Edge { dart: v });
        let back = find_route(&spec, &fg, &[fg.face_of_dart[map.pairing[v]]], &|f| {
            f == fg.face_of_dart[u]
        })
        .ok_or_else(|| Error::Invalid("no seed route".into()))?;
        steps.extend(back);
    } else {
        let u = pick_dart(if c1 { n1 } else { n2 })?;
        steps.push(Step::Edge { dart: u });
        let back = find_route(&spec, &fg, &[fg.face_of_dart[map.pairing[u]]], &|f| {
            f == fg.face_of_dart[u]
        })
        .ok_or_else(|| Error::Invalid("no seed route".into()))?;
        steps.extend(back);
    }
    let (nd, _) = insert_closed_route(d, Family::Temp, &steps)?;
    Ok(nd)
}

/// Re-cut the diagram along two disjoint drawn curves of one family. The
/// old base becomes two drawn curves of the old base family; dartless
/// parallel curves survive as parallels of those.
pub fn recut(d: &Diagram, n1: CurveId, n2: CurveId) -> Result<Diagram> {
    let fam = d.map.curves[n1].family;
    if fam != d.map.curves[n2].family || fam == Family::Mark {
        return Err(Error::Precondition(
            "new base must be two drawn curves of one real family".into(),
        ));
    }
    // Floaters: curves whose every crossing involves a mark. Recorded and
    // re-inserted as parallels of the drawn old base afterwards.
    let mut floaters: Vec<(Family, u8)> = Vec::new();
    {
        let live: HashSet<CurveId> = (0..d.map.dart_count()).map(|x| d.map.curve_of[x]).collect();
        for &c in &live {
            if d.map.curves[c].family == Family::Mark || c == n1 || c == n2 {
                continue;
            }
            let only_marks = (0..d.map.dart_count())
                .filter(|&x| d.map.curve_of[x] == c)
                .all(|x| {
                    let n = d.map.node_of[x];
                    !d.map.is_circle(n)
                        && d.map
                            .darts_at(n)
                            .iter()
                            .any(|&y| d.map.family_of_dart(y) == Family::Mark)
                });
            if only_marks {
                let class = crate::canon::floater_handle(d, c)
                    .ok_or_else(|| Error::Unsupported("non-parallel floating curve".into()))?;
                floaters.push((d.map.curves[c].family, class));
            }
        }
    }
    // Seed the future marking: one seam per new handle, one curve giving
    // both cross seams.
    let mut seeded = insert_seed(d, n1, n2, true, false)?;
    seeded = insert_seed(&seeded, n1, n2, false, true)?;
    seeded = insert_seed(&seeded, n1, n2, true, true)?;
    // Strip the old marking (floaters lose their darts with it).
    let mut mb = MapBuilder::from_map(&seeded.map);
    for c in seeded.family_curves(Family::Mark) {
        mb.delete_curve(c);
    }
    let (map, _) = mb.commit();
    let map = &map;

    let cyc1 = map.curve_cycle(n1);
    let cyc2 = map.curve_cycle(n2);
    if cyc1.is_empty() || cyc2.is_empty() {
        return Err(Error::Unsupported("re-cutting along a dartless curve".into()));
    }
    let cyc_set: HashSet<DartId> = cyc1.iter().chain(cyc2.iter()).copied().collect();
    let live: HashSet<CurveId> = (0..map.dart_count()).map(|x| map.curve_of[x]).collect();

    let minus_slot = |s: DartId| -> DartId {
        let p = map.puncture_of(map.node_of[s]).unwrap();
        if p.side == Side::Minus {
            s
        } else {
            map.glue[s]
        }
    };

    let mut out = MapBuilder::new();
    let mut new_circle: HashMap<Puncture, NodeId> = HashMap::new();
    for p in Puncture::all() {
        new_circle.insert(p, out.add_node(NodeKind::Circle(p)));
    }
    let mut curve_map: HashMap<CurveId, CurveId> = HashMap::new();
    for &c in &live {
        if c != n1 && c != n2 {
            curve_map.insert(c, out.add_curve(map.curves[c].family));
        }
    }
    let old_curve = [out.add_curve(d.base), out.add_curve(d.base)];

    // Kept crossings.
    let mut kept: HashMap<NodeId, NodeId> = HashMap::new();
    for (n, kind) in map.nodes.iter().enumerate() {
        if matches!(kind, NodeKind::Crossing)
            && !map.darts_at(n).iter().any(|&x| {
                let c = map.curve_of[x];
                c == n1 || c == n2
            })
        {
            kept.insert(n, out.add_node(NodeKind::Crossing));
        }
    }
    let mut dart_map: HashMap<DartId, DartId> = HashMap::new();
    for (&n, &nn) in &kept {
        for x in map.darts_at(n) {
            let d2 = out.push_dart(nn, curve_map[&map.curve_of[x]]);
            dart_map.insert(x, d2);
        }
    }
    // Passage crossings for glue pairs not on n1/n2: rotation
    // [dm, on, dg, op] - strand toward minus side, old curve toward
    // rot_next, strand toward plus side, old curve toward rot_prev.
    let mut passage: HashMap<DartId, (DartId, DartId, DartId, DartId)> = HashMap::new();
    for x in 0..map.dart_count() {
        if map.glue[x] == NIL {
            continue;
        }
        let c = map.curve_of[x];
        if c == n1 || c == n2 {
            continue;
        }
        let m = minus_slot(x);
        if passage.contains_key(&m) {
            continue;
        }
        let h = map.puncture_of(map.node_of[m]).unwrap().handle as usize;
        let nn = out.add_node(NodeKind::Crossing);
        let dm = out.push_dart(nn, curve_map[&c]);
        let on = out.push_dart(nn, old_curve[h]);
        let dg = out.push_dart(nn, curve_map[&c]);
        let op = out.push_dart(nn, old_curve[h]);
        passage.insert(m, (dm, on, dg, op));
    }

    // Slots on the new circles in traversal order of each new base curve.
    let mut slot_of_crossing: HashMap<NodeId, SlotRec> = HashMap::new();
    let mut slot_of_passage: HashMap<DartId, SlotRec> = HashMap::new();
    for (h, cyc) in [(0usize, &cyc1), (1usize, &cyc2)] {
        let minus_node = new_circle[&Puncture { handle: h as u8, side: Side::Minus }];
        let plus_node = new_circle[&Puncture { handle: h as u8, side: Side::Plus }];
        let mut buf: Vec<(bool, NodeId, DartId, DartId)> = Vec::new();
        for &fwd in cyc {
            let arr = map.pairing[fwd];
            let node = map.node_of[arr];
            match map.nodes[node] {
                NodeKind::Crossing => {
                    let e = map
                        .darts_at(node)
                        .iter()
                        .map(|&x| map.curve_of[x])
                        .find(|&c| c != n1 && c != n2)
                        .ok_or_else(|| {
                            Error::Precondition("new base curves are not disjoint".into())
                        })?;
                    let md = out.push_dart(minus_node, curve_map[&e]);
                    buf.push((true, node, arr, md));
                }
                NodeKind::Circle(p) => {
                    let m = minus_slot(arr);
                    let md = out.push_dart(minus_node, old_curve[p.handle as usize]);
                    buf.push((false, node, m, md));
                }
            }
        }
        for &(is_cross, node, key, md) in buf.iter().rev() {
            let pd = out.push_dart(plus_node, out.darts[md].curve);
            out.set_glue(md, pd);
            if is_cross {
                slot_of_crossing.insert(node, SlotRec { plus: pd, minus: md });
            } else {
                slot_of_passage.insert(key, SlotRec { plus: pd, minus: md });
            }
        }
    }

    // Port of an old directed dart on a surviving strand.
    let port = |x: DartId| -> Result<DartId> {
        let n = map.node_of[x];
        match map.nodes[n] {
            NodeKind::Crossing => {
                if let Some(&d2) = dart_map.get(&x) {
                    return Ok(d2);
                }
                let rec = slot_of_crossing
                    .get(&n)
                    .ok_or_else(|| Error::Invalid("unmapped crossing".into()))?;
                let bf = map
                    .darts_at(n)
                    .into_iter()
                    .find(|y| cyc_set.contains(y))
                    .ok_or_else(|| Error::Invalid("missing base orientation".into()))?;
                Ok(if map.rot_next[bf] == x { rec.plus } else { rec.minus })
            }
            NodeKind::Circle(_) => {
                let m = minus_slot(x);
                if let Some(&(dm, _, dg, _)) = passage.get(&m) {
                    Ok(if x == m { dm } else { dg })
                } else {
                    Err(Error::Invalid("port requested for a new base slot".into()))
                }
            }
        }
    };

    // Edges of surviving curves.
    for x in 0..map.dart_count() {
        let y = map.pairing[x];
        if x > y {
            continue;
        }
        let c = map.curve_of[x];
        if c == n1 || c == n2 {
            continue;
        }
        out.pair(port(x)?, port(y)?);
    }
    // Old base curves: chain events around each old minus circle.
    for h in 0..2usize {
        let node = map.circle_node(Puncture { handle: h as u8, side: Side::Minus });
        let slots: Vec<DartId> = map
            .darts_at(node)
            .into_iter()
            .filter(|&s| map.glue[s] != NIL)
            .collect();
        if slots.is_empty() {
            return Err(Error::Unsupported(
                "old base curve crosses nothing; re-cut would disconnect the map".into(),
            ));
        }
        let ends: Vec<(DartId, DartId)> = slots
            .iter()
            .map(|&m| {
                if let Some(&(_, on, _, op)) = passage.get(&m) {
                    Ok((on, op))
                } else if let Some(rec) = slot_of_passage.get(&m) {
                    // The passing strand is a new base curve. If it arrives
                    // on the minus circle (crossing the old base from minus
                    // to plus), the old curve heads toward rot_next on its
                    // right, the minus side.
                    let arr = arrival_at(map, &cyc1, &cyc2, m);
                    if arr == m {
                        Ok((rec.minus, rec.plus))
                    } else {
                        Ok((rec.plus, rec.minus))
                    }
                } else {
                    Err(Error::Invalid("old base slot unaccounted".into()))
                }
            })
            .collect::<Result<_>>()?;
        let k = ends.len();
        for i in 0..k {
            let (to_next, _) = ends[i];
            let (_, to_prev) = ends[(i + 1) % k];
            out.pair(to_next, to_prev);
        }
    }

    let (new_map, _) = out.commit();
    let mut res = Diagram { map: new_map, base: fam };
    // Scratch curves become the marking: unglue their slots and split into
    // per-arc mark curves.
    temps_to_marks(&mut res)?;
    for (ffam, h) in floaters {
        let target = res
            .family_curves(d.base)
            .get(h as usize)
            .copied()
            .ok_or_else(|| Error::Invalid("lost old base curve".into()))?;
        res = crate::moves::insert_parallel(&res, target, ffam)?;
    }
    let res = reduce::reduce(&res)?;
    Ok(res)
}

/// The arrival slot of n1/n2 whose minus-side representative is `m`.
fn arrival_at(map: &crate::map::Map, cyc1: &[DartId], cyc2: &[DartId], m: DartId) -> DartId {
    let g = map.glue[m];
    for cyc in [cyc1, cyc2] {
        for &fwd in cyc {
            let arr = map.pairing[fwd];
            if arr == m || arr == g {
                return arr;
            }
        }
    }
    m
}

/// Convert scratch curves into marking seams: remove their glue and split
/// each into one mark curve per arc.
fn temps_to_marks(d: &mut Diagram) -> Result<()> {
    let mut mb = MapBuilder::from_map(&d.map);
    let mut changed = false;
    for x in 0..mb.darts.len() {
        if mb.darts[x].dead {
            continue;
        }
        let c = mb.darts[x].curve;
        if mb.curves[c].family == Family::Temp && mb.darts[x].glue != NIL {
            let g = mb.darts[x].glue;
            mb.darts[x].glue = NIL;
            mb.darts[g].glue = NIL;
            changed = true;
        }
    }
    let _ = changed;
    let (map, _) = mb.commit();
    // Split temp curves into arcs: walk from each unglued end.
    let mut mb = MapBuilder::from_map(&map);
    let mut seen: HashSet<DartId> = HashSet::new();
    let mut arc_of: HashMap<DartId, CurveId> = HashMap::new();
    for s in 0..map.dart_count() {
        if map.family_of_dart(s) != Family::Temp || seen.contains(&s) {
            continue;
        }
        if !map.is_circle(map.node_of[s]) || map.glue[s] != NIL {
            continue;
        }
        // s is an arc end; walk to the far end.
        let mc = mb.add_curve(Family::Mark);
        let mut dart = s;
        loop {
            seen.insert(dart);
            arc_of.insert(dart, mc);
            let arr = map.pairing[dart];
            seen.insert(arr);
            arc_of.insert(arr, mc);
            match map.nodes[map.node_of[arr]] {
                NodeKind::Circle(_) => break,
                NodeKind::Crossing => {
                    dart = map.straight_through(arr);
                }
            }
        }
    }
    for (dart, mc) in arc_of {
        mb.darts[dart].curve = mc;
    }
    // Any leftover temp darts mean a scratch curve failed to become marks.
    for x in 0..mb.darts.len() {
        if !mb.darts[x].dead && mb.curves[mb.darts[x].curve].family == Family::Temp {
            return Err(Error::Invalid("scratch curve did not convert to marking".into()));
        }
    }
    let (map, _) = mb.commit();
    *d = Diagram { map, base: d.base };
    Ok(())
}
