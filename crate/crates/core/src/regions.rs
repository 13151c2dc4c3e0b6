//! Complementary-region computation.
//!
//! Regions of a chosen subsystem are computed from the faces of the full
//! map by union-find: faces merge across every edge whose curve is
//! invisible, and (in glued mode) across each segment of a base curve
//! between consecutive real slots. Boundary walks recover cyclic boundary
//! words for the cut picture.

use std::collections::HashMap;

use crate::map::{CurveId, DartId, Family, Map, NodeKind, Puncture, NIL};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseMode {
    /// Boundary circles are walls; regions live in the cut surface.
    Cut,
    /// Base curves are invisible; regions live in the glued surface.
    Glued,
}

/// Which curves are walls. The marking is never a wall.
#[derive(Debug, Clone)]
pub struct Visibility {
    pub families: Vec<Family>,
    pub extra_curves: Vec<CurveId>,
    pub omit_curves: Vec<CurveId>,
}

impl Visibility {
    pub fn families(fams: &[Family]) -> Visibility {
        Visibility { families: fams.to_vec(), extra_curves: Vec::new(), omit_curves: Vec::new() }
    }

    pub fn curves(cs: &[CurveId]) -> Visibility {
        Visibility { families: Vec::new(), extra_curves: cs.to_vec(), omit_curves: Vec::new() }
    }

    pub fn visible(&self, map: &Map, c: CurveId) -> bool {
        if self.omit_curves.contains(&c) {
            return false;
        }
        let fam = map.curves[c].family;
        if fam == Family::Mark {
            return false;
        }
        self.families.contains(&fam) || self.extra_curves.contains(&c)
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Result of a region computation: each full-map face mapped to a region
/// class, plus the class count.
#[derive(Debug, Clone)]
pub struct Regions {
    pub face_of_dart: Vec<usize>,
    pub region_of_face: Vec<usize>,
    pub region_count: usize,
}

impl Regions {
    pub fn region_of_dart(&self, d: DartId) -> usize {
        self.region_of_face[self.face_of_dart[d]]
    }
}

/// Real slots of a circle node in ccw order.
pub fn real_slots(map: &Map, node: usize) -> Vec<DartId> {
    if map.node_dart[node] == NIL {
        return Vec::new();
    }
    map.darts_at(node).into_iter().filter(|&d| map.glue[d] != NIL).collect()
}

pub fn compute_regions(map: &Map, vis: &Visibility, mode: BaseMode) -> Regions {
    let (face_of_dart, nfaces) = map.faces();
    let mut dsu = Dsu::new(nfaces);
    for d in 0..map.dart_count() {
        let p = map.pairing[d];
        if d < p && !vis.visible(map, map.curve_of[d]) {
            dsu.union(face_of_dart[d], face_of_dart[p]);
        }
    }
    if mode == BaseMode::Glued {
        for node in 0..map.nodes.len() {
            let pct = match map.nodes[node] {
                NodeKind::Circle(p) => p,
                NodeKind::Crossing => continue,
            };
            // Handle each circle pair once, from the minus side.
            if pct.side != crate::map::Side::Minus {
                continue;
            }
            let slots = real_slots(map, node);
            if slots.is_empty() {
                // Nothing crosses this base curve: merge the two sides
                // wholesale.
                let partner = map.circle_node(pct.partner());
                let da = map.rot_next[map.node_dart[node]];
                let db = map.rot_next[map.node_dart[partner]];
                dsu.union(face_of_dart[da], face_of_dart[db]);
            } else {
                let m = slots.len();
                for i in 0..m {
                    let r = slots[i];
                    let r_next = slots[(i + 1) % m];
                    // Gap after r on this side matches the gap after
                    // glue(r_next) on the partner side.
                    let a = map.rot_next[r];
                    let b = map.rot_next[map.glue[r_next]];
                    dsu.union(face_of_dart[a], face_of_dart[b]);
                }
            }
        }
    }
    let mut region_of_face = vec![NIL; nfaces];
    let mut count = 0;
    let mut reps: HashMap<usize, usize> = HashMap::new();
    for f in 0..nfaces {
        let r = dsu.find(f);
        let id = *reps.entry(r).or_insert_with(|| {
            let id = count;
            count += 1;
            id
        });
        region_of_face[f] = id;
    }
    Regions { face_of_dart, region_of_face, region_count: count }
}

/// One side of a region boundary in the cut picture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundarySide {
    /// A maximal run along a visible curve: the directed darts traversed
    /// (each pointing away from its start node), all on one curve between
    /// two visible corners.
    Arc { curve: CurveId, darts: Vec<DartId> },
    /// A circle segment from slot `from` ccw to slot `to` (full-map darts,
    /// possibly marks skipped inside).
    Circle { puncture: Puncture, from: DartId, to: DartId },
}

/// Cyclic boundary walk of the region containing the step starting at
/// visible directed dart `start`, in cut mode with the given visibility.
/// Returns the boundary word; `start`'s curve must be visible.
pub fn boundary_walk(map: &Map, vis: &Visibility, start: DartId) -> Vec<BoundarySide> {
    let mut word = Vec::new();
    let mut cur_arc: Vec<DartId> = Vec::new();
    let mut d = start;
    loop {
        cur_arc.push(d);
        // Arrive at the next node.
        let arr = map.pairing[d];
        let node = map.node_of[arr];
        match map.nodes[node] {
            NodeKind::Crossing => {
                // Scan ccw from the arrival for the next visible departure.
                let mut e = map.rot_next[arr];
                loop {
                    if vis.visible(map, map.curve_of[e]) {
                        break;
                    }
                    e = map.rot_next[e];
                }
                if e == map.straight_through(arr) && !vis.visible(map, map.curve_of[arr]) {
                    // unreachable: arrivals are always on visible curves
                }
                if map.curve_of[e] == map.curve_of[arr] && e == map.straight_through(arr) {
                    // Passing straight through an invisible crossing: the
                    // arc side continues.
                    d = e;
                } else {
                    // Corner of the region.
                    word.push(BoundarySide::Arc {
                        curve: map.curve_of[cur_arc[0]],
                        darts: std::mem::take(&mut cur_arc),
                    });
                    d = e;
                }
            }
            NodeKind::Circle(p) => {
                // Close the arc side, then traverse the circle ccw to the
                // next visible departure.
                word.push(BoundarySide::Arc {
                    curve: map.curve_of[cur_arc[0]],
                    darts: std::mem::take(&mut cur_arc),
                });
                let mut e = map.rot_next[arr];
                loop {
                    if vis.visible(map, map.curve_of[e]) {
                        break;
                    }
                    e = map.rot_next[e];
                }
                word.push(BoundarySide::Circle { puncture: p, from: arr, to: e });
                d = e;
            }
        }
        if d == start {
            if !cur_arc.is_empty() {
                word.push(BoundarySide::Arc {
                    curve: map.curve_of[cur_arc[0]],
                    darts: std::mem::take(&mut cur_arc),
                });
            }
            break;
        }
    }
    word
}

/// Merge a trailing arc fragment with a leading fragment of the same
/// traversal (the walk may start mid-arc).
pub fn normalize_word(mut word: Vec<BoundarySide>) -> Vec<BoundarySide> {
    if word.len() >= 2 {
        let first_is_arc = matches!(word.first(), Some(BoundarySide::Arc { .. }));
        let last_is_arc = matches!(word.last(), Some(BoundarySide::Arc { .. }));
        if first_is_arc && last_is_arc {
            if let (Some(BoundarySide::Arc { curve: c2, darts: d2 }), ) = (word.pop(),) {
                if let Some(BoundarySide::Arc { curve: c1, darts: d1 }) = word.first_mut() {
                    if *c1 == c2 {
                        let mut merged = d2;
                        merged.extend(std::mem::take(d1));
                        *d1 = merged;
                    } else {
                        word.push(BoundarySide::Arc { curve: c2, darts: d2 });
                    }
                }
            }
        }
    }
    word
}
