//! Inserting new curves along routes through the complement of the
//! existing structure. A route is a list of steps, each crossing one
//! current edge or one base curve; open routes start and end in circle
//! slots. Routes are found by breadth-first search over faces and applied
//! through a cursor that keeps the map consistent after every step.

use std::collections::{HashMap, VecDeque};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::map::{CurveId, DartId, Family, Map, MapBuilder, NodeKind, NIL};

/// One crossing step of a route, expressed against the current map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// Cross the edge of `dart`, entering from the face on its left.
    Edge { dart: DartId },
    /// Cross the base curve through the gap immediately ccw-after `after`
    /// on its circle, emerging immediately ccw-after `after_partner` on the
    /// partner circle.
    Base { after: DartId, after_partner: DartId },
}

/// Where an open route ends: a new slot inserted immediately ccw-after the
/// given dart on its circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlotAnchor {
    pub after: DartId,
}

pub struct Cursor {
    pub mb: MapBuilder,
    curve: CurveId,
    pending: Option<DartId>,
    first_back: Option<DartId>,
    own_slots: std::collections::HashSet<DartId>,
}

impl Cursor {
    pub fn new(mb: MapBuilder, curve: CurveId) -> Cursor {
        Cursor { mb, curve, pending: None, first_back: None, own_slots: Default::default() }
    }

    pub fn begin_at_slot(&mut self, a: SlotAnchor) -> DartId {
        let d = self.mb.insert_dart_after(a.after, self.curve);
        self.pending = Some(d);
        d
    }

    /// Cross the edge of `dart` from its left side. Returns the forward
    /// continuation dart of the crossed strand nearest `node(dart)` so
    /// callers can keep referring to the surviving half-edges.
    pub fn cross_edge(&mut self, dart: DartId) -> (DartId, DartId) {
        let other = self.mb.darts[dart].pairing;
        let strand_curve = self.mb.darts[dart].curve;
        let node = self.mb.add_node(NodeKind::Crossing);
        // ccw rotation [a1, p2, a2, p1]: a1 toward node(dart), p2 route
        // forward, a2 toward the far node, p1 route backward.
        let a1 = self.mb.push_dart(node, strand_curve);
        let p2 = self.mb.push_dart(node, self.curve);
        let a2 = self.mb.push_dart(node, strand_curve);
        let p1 = self.mb.push_dart(node, self.curve);
        self.mb.pair(dart, a1);
        self.mb.pair(a2, other);
        match self.pending.take() {
            Some(p) => self.mb.pair(p, p1),
            None => self.first_back = Some(p1),
        }
        self.pending = Some(p2);
        (a1, a2)
    }

    /// Cross the base curve through the given gap. The entry slot goes
    /// ccw-after `after` (advanced past slots this cursor already placed
    /// there, which keeps repeated passages order-reversing); the exit slot
    /// goes directly ccw-after `after_partner` on the partner circle.
    pub fn cross_base(&mut self, after: DartId, after_partner: DartId) {
        let mut anchor = after;
        loop {
            let node = self.mb.darts[anchor].node;
            let list = &self.mb.nodes[node].1;
            let pos = list.iter().position(|&x| x == anchor).expect("anchor at node");
            let next = list[(pos + 1) % list.len()];
            if self.own_slots.contains(&next) {
                anchor = next;
            } else {
                break;
            }
        }
        let s = self.mb.insert_dart_after(anchor, self.curve);
        let t = self.mb.insert_dart_after(after_partner, self.curve);
        self.own_slots.insert(s);
        self.own_slots.insert(t);
        self.mb.set_glue(s, t);
        match self.pending.take() {
            Some(p) => self.mb.pair(p, s),
            None => self.first_back = Some(s),
        }
        self.pending = Some(t);
    }

    pub fn end_at_slot(&mut self, a: SlotAnchor) -> DartId {
        let d = self.mb.insert_dart_after(a.after, self.curve);
        let p = self.pending.take().expect("open route in progress");
        self.mb.pair(p, d);
        d
    }

    pub fn close_loop(&mut self) -> Result<()> {
        let p = self.pending.take().ok_or_else(|| Error::Invalid("empty loop".into()))?;
        let f = self
            .first_back
            .take()
            .ok_or_else(|| Error::Invalid("loop with no crossings".into()))?;
        self.mb.pair(p, f);
        Ok(())
    }
}

/// Apply an open route as a new curve of `family` between two slot
/// anchors; returns the rebuilt diagram (not reduced).
pub fn insert_arc_route(
    d: &Diagram,
    family: Family,
    start: SlotAnchor,
    steps: &[Step],
    end: SlotAnchor,
    glue_start_end: bool,
) -> Result<(Diagram, CurveId)> {
    let mut mb = MapBuilder::from_map(&d.map);
    let curve = mb.add_curve(family);
    let mut cur = Cursor::new(mb, curve);
    let s0 = cur.begin_at_slot(start);
    apply_steps(&mut cur, steps)?;
    let s1 = cur.end_at_slot(end);
    if glue_start_end {
        cur.mb.set_glue(s0, s1);
    }
    let (map, _) = cur.mb.commit();
    Ok((Diagram { map, base: d.base }, curve))
}

/// Apply a closed route as a new curve of `family`.
pub fn insert_closed_route(
    d: &Diagram,
    family: Family,
    steps: &[Step],
) -> Result<(Diagram, CurveId)> {
    let mut mb = MapBuilder::from_map(&d.map);
    let curve = mb.add_curve(family);
    let mut cur = Cursor::new(mb, curve);
    apply_steps(&mut cur, steps)?;
    cur.close_loop()?;
    let (map, _) = cur.mb.commit();
    Ok((Diagram { map, base: d.base }, curve))
}

fn apply_steps(cur: &mut Cursor, steps: &[Step]) -> Result<()> {
    // Edge darts referenced by later steps may have been subdivided by
    // earlier steps. Callers must reference the surviving half: steps are
    // applied in order against the evolving map, and each `Edge { dart }`
    // crosses the half-edge currently attached to `dart`.
    for &st in steps {
        match st {
            Step::Edge { dart } => {
                cur.cross_edge(dart);
            }
            Step::Base { after, after_partner } => {
                cur.cross_base(after, after_partner);
            }
        }
    }
    Ok(())
}

/// Positions for the route search: a face of the map, identified by its
/// orbit representative dart.
#[derive(Debug, Clone)]
pub struct FaceGraph {
    pub face_of_dart: Vec<usize>,
    pub nfaces: usize,
    /// For each face, its darts in orbit order.
    pub faces: Vec<Vec<DartId>>,
}

pub fn face_graph(map: &Map) -> FaceGraph {
    let (face_of_dart, nfaces) = map.faces();
    let mut faces = vec![Vec::new(); nfaces];
    let mut seen = vec![false; map.dart_count()];
    for d in 0..map.dart_count() {
        if seen[d] {
            continue;
        }
        let f = face_of_dart[d];
        let mut e = d;
        loop {
            seen[e] = true;
            faces[f].push(e);
            e = map.next_in_face(e);
            if e == d {
                break;
            }
        }
    }
    FaceGraph { face_of_dart, nfaces, faces }
}

impl FaceGraph {
    /// Face lying ccw-after `d` at `d`'s node (the face of the gap or
    /// corner between `d` and `rot_next(d)`): the face whose walk exits
    /// along `rot_next(d)`.
    pub fn face_after(&self, map: &Map, d: DartId) -> usize {
        self.face_of_dart[map.rot_next[d]]
    }
}

/// Search constraints: which edges a route may cross, and whether it may
/// pass through the base curves.
pub struct RouteSpec<'a> {
    pub map: &'a Map,
    pub may_cross: Box<dyn Fn(CurveId) -> bool + 'a>,
    pub may_cross_base: bool,
}

/// BFS from one set of seed faces to a target predicate; returns the step
/// list. Deterministic: faces and darts are explored in index order.
pub fn find_route(
    spec: &RouteSpec,
    fg: &FaceGraph,
    starts: &[usize],
    target: &dyn Fn(usize) -> bool,
) -> Option<Vec<Step>> {
    let map = spec.map;
    #[derive(Clone, Copy)]
    enum Via {
        Seed,
        Edge { dart: DartId, from: usize },
        Base { after: DartId, after_partner: DartId, from: usize },
    }
    let mut via: Vec<Option<Via>> = vec![None; fg.nfaces];
    let mut q = VecDeque::new();
    for &s in starts {
        if via[s].is_none() {
            via[s] = Some(Via::Seed);
            q.push_back(s);
        }
    }
    let mut goal = None;
    'outer: while let Some(f) = q.pop_front() {
        if target(f) {
            goal = Some(f);
            break;
        }
        let mut darts = fg.faces[f].clone();
        darts.sort_unstable();
        for d in darts {
            // Crossing the edge of pairing(d) from its left lands in the
            // face left of pairing(d)... the face left of d is f; crossing
            // d's edge from f enters the face left of pairing(d).
            let e = map.pairing[d];
            let g = fg.face_of_dart[e];
            if (spec.may_cross)(map.curve_of[d]) && via[g].is_none() {
                via[g] = Some(Via::Edge { dart: d, from: f });
                q.push_back(g);
                if target(g) {
                    goal = Some(g);
                    break 'outer;
                }
            }
            // Base passage: if the walk of face f turns at a circle after
            // arriving on pairing(d), the gap between pairing(d) and
            // rot_next(pairing(d)) belongs to f.
            if spec.may_cross_base {
                let arr = map.pairing[d];
                let node = map.node_of[arr];
                if map.is_circle(node) {
                    if let Some((gap_face, after, after_partner)) =
                        base_gap_passage(map, fg, arr)
                    {
                        debug_assert_eq!(fg.face_after(map, arr), f);
                        let _ = gap_face;
                        let tgt_face = fg.face_after(map, after_partner);
                        if via[tgt_face].is_none() {
                            via[tgt_face] = Some(Via::Base { after: arr, after_partner, from: f });
                            q.push_back(tgt_face);
                            if target(tgt_face) {
                                goal = Some(tgt_face);
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
    }
    let mut g = goal?;
    let mut steps = Vec::new();
    loop {
        match via[g].unwrap() {
            Via::Seed => break,
            Via::Edge { dart, from } => {
                steps.push(Step::Edge { dart });
                g = from;
            }
            Via::Base { after, after_partner, from } => {
                steps.push(Step::Base { after, after_partner });
                g = from;
            }
        }
    }
    steps.reverse();
    Some(steps)
}

/// For a circle dart `arr`, the gap ccw-after it: returns
/// `(face of the gap, after = arr, after_partner)` where the partner
/// anchor is chosen so the glued slot order reverses: a slot inserted
/// after `arr` must land after the glue of the next real slot.
pub fn base_gap_passage(
    map: &Map,
    fg: &FaceGraph,
    arr: DartId,
) -> Option<(usize, DartId, DartId)> {
    // Next real slot ccw from arr (inclusive of wrap; marks skipped).
    let mut e = map.rot_next[arr];
    let next_real = loop {
        if map.glue[e] != NIL {
            break e;
        }
        if e == arr {
            break NIL;
        }
        e = map.rot_next[e];
    };
    if next_real == NIL {
        // No real slots at all on this circle: land after any dart on the
        // partner circle.
        let p = map.puncture_of(map.node_of[arr])?;
        let partner = map.circle_node(p.partner());
        let after_partner = map.node_dart[partner];
        return Some((fg.face_after(map, arr), arr, after_partner));
    }
    let after_partner = map.glue[next_real];
    Some((fg.face_after(map, arr), arr, after_partner))
}

/// All gap positions on a circle node: darts `d` at the node such that the
/// gap after `d` is delimited on both sides by visible-or-any darts.
pub fn circle_gaps(map: &Map, node: usize) -> Vec<DartId> {
    map.darts_at(node)
}

/// Record of an inserted route for traces: the steps plus anchors, with
/// curve family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RouteRecord {
    Open { family: Family, start_after: DartId, steps: Vec<Step>, end_after: DartId, glue_ends: bool },
    Closed { family: Family, steps: Vec<Step> },
}
