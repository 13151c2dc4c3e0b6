//! Constructing diagrams from exact polyline drawings in the lattice
//! pillowcase: the plane modulo `z -> +-z + 2Z^2`. Corner classes are the
//! four punctures: `(0,0) = d1-`, `(0,1) = d1+`, `(1,0) = d2-`,
//! `(1,1) = d2+`.
//!
//! Strands are either arcs (polylines from one corner to another, first
//! and last points inside the puncture disks) or loops (polylines closing
//! up through a group element). Crossings away from the corners are
//! computed exactly by enumerating group translates. The four marking
//! seams are added automatically by [`FlatBuilder::add_marking`].

use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::geom::{
    angle_cmp, angle_mod_pi_cmp, normalize_half, q, qr, seg_intersection, GroupEl, Pt, Q,
};
use crate::map::{CurveId, DartId, Family, MapBuilder, NodeId, NodeKind, Puncture, Side};

pub const INSET_DEN: i64 = 16;

/// Corner class of a lattice point.
pub fn corner_class(v: (i64, i64)) -> Puncture {
    let x = v.0.rem_euclid(2);
    let y = v.1.rem_euclid(2);
    match (x, y) {
        (0, 0) => Puncture { handle: 0, side: Side::Minus },
        (0, 1) => Puncture { handle: 0, side: Side::Plus },
        (1, 0) => Puncture { handle: 1, side: Side::Minus },
        (1, 1) => Puncture { handle: 1, side: Side::Plus },
        _ => unreachable!(),
    }
}

/// The canonical corner of a puncture class.
pub fn class_corner(p: Puncture) -> (i64, i64) {
    match (p.handle, p.side) {
        (0, Side::Minus) => (0, 0),
        (0, Side::Plus) => (0, 1),
        (1, Side::Minus) => (1, 0),
        (1, Side::Plus) => (1, 1),
        _ => unreachable!(),
    }
}

#[derive(Debug, Clone)]
pub enum StrandKind {
    Arc { start_corner: (i64, i64), end_corner: (i64, i64) },
    /// Closed in the quotient: the last point equals `closure` applied to
    /// the first.
    Loop { closure: GroupEl },
}

#[derive(Debug, Clone)]
pub struct Strand {
    pub family: Family,
    pub pts: Vec<Pt>,
    pub kind: StrandKind,
}

impl Strand {
    /// A straight seam from `v` in direction `u` (primitive), pushed off by
    /// `offset` along the left normal of `u`, with standard insets.
    pub fn seam(family: Family, v: (i64, i64), u: (i64, i64), offset: Q) -> Strand {
        let w = (v.0 + u.0, v.1 + u.1);
        let vu = Pt::of(u.0, u.1);
        let n = Pt::of(-u.1, u.0);
        let base = Pt::of(v.0, v.1);
        let m = u.0.abs().max(u.1.abs());
        let inset = qr(1, INSET_DEN * m);
        let p0 = base.add(&vu.scale(&inset)).add(&n.scale(&offset));
        let p1 = base.add(&vu).sub(&vu.scale(&inset)).add(&n.scale(&offset));
        Strand { family, pts: vec![p0, p1], kind: StrandKind::Arc { start_corner: v, end_corner: w } }
    }

    /// A loop hugging the puncture at corner `v`, at L-infinity radius
    /// `r`: an open polyline over the top closed by the corner reflection.
    pub fn corner_loop(family: Family, v: (i64, i64), r: Q) -> Strand {
        let base = Pt::of(v.0, v.1);
        let pts = vec![
            base.add(&Pt::new(-r.clone(), q(0))),
            base.add(&Pt::new(-r.clone(), r.clone())),
            base.add(&Pt::new(r.clone(), r.clone())),
            base.add(&Pt::new(r, q(0))),
        ];
        Strand {
            family,
            pts,
            kind: StrandKind::Loop { closure: GroupEl { sign: -1, tx: v.0, ty: v.1 } },
        }
    }
}

/// How arc ends are joined across the base curves.
#[derive(Debug, Clone)]
pub enum GluePlan {
    /// Curves listed explicitly: each is a cyclic sequence of
    /// `(strand index, forward)`; the end of one arc glues to the start of
    /// the next. Loops are implicit and must not be listed.
    Chains(Vec<Vec<(usize, bool)>>),
    /// Slot `i` (ccw) on each minus circle glues to slot
    /// `(offset - i) mod m` on the plus circle.
    Offsets { h1: i64, h2: i64 },
}

struct Crossing {
    strand_a: usize,
    t_a: (usize, Q),
    dir_a: Pt,
    strand_b: usize,
    t_b: (usize, Q),
    dir_b: Pt,
}

/// An end of an arc strand: (strand index, true = start end).
type End = (usize, bool);

#[derive(Default)]
pub struct FlatBuilder {
    pub strands: Vec<Strand>,
}

impl FlatBuilder {
    pub fn new() -> FlatBuilder {
        FlatBuilder::default()
    }

    /// The standard marking: vertical seams at both handles plus the two
    /// slope-0/1 cross seams, pushed off the lattice lines.
    pub fn add_marking(&mut self) {
        let d = qr(1, 37);
        self.strands.push(Strand::seam(Family::Mark, (0, 0), (0, 1), d.clone()));
        self.strands.push(Strand::seam(Family::Mark, (1, 0), (0, 1), d.clone()));
        self.strands.push(Strand::seam(Family::Mark, (0, 0), (1, 0), d.clone()));
        self.strands.push(Strand::seam(Family::Mark, (0, 1), (1, 0), d));
    }

    pub fn add(&mut self, s: Strand) -> usize {
        self.strands.push(s);
        self.strands.len() - 1
    }

    fn bbox(pts: &[Pt]) -> (Q, Q, Q, Q) {
        let mut xmin = pts[0].x.clone();
        let mut xmax = pts[0].x.clone();
        let mut ymin = pts[0].y.clone();
        let mut ymax = pts[0].y.clone();
        for p in pts {
            if p.x < xmin {
                xmin = p.x.clone();
            }
            if p.x > xmax {
                xmax = p.x.clone();
            }
            if p.y < ymin {
                ymin = p.y.clone();
            }
            if p.y > ymax {
                ymax = p.y.clone();
            }
        }
        (xmin, xmax, ymin, ymax)
    }

    fn crossings_between(&self, i: usize, j: usize) -> Result<Vec<Crossing>> {
        let a = &self.strands[i].pts;
        let b = &self.strands[j].pts;
        let (axmin, axmax, aymin, aymax) = Self::bbox(a);
        let (bxmin, bxmax, bymin, bymax) = Self::bbox(b);
        let mut out = Vec::new();
        for sign in [1i8, -1] {
            let (sbxmin, sbxmax) = if sign > 0 {
                (bxmin.clone(), bxmax.clone())
            } else {
                (-bxmax.clone(), -bxmin.clone())
            };
            let (sbymin, sbymax) = if sign > 0 {
                (bymin.clone(), bymax.clone())
            } else {
                (-bymax.clone(), -bymin.clone())
            };
            let txlo = ((&axmin - &sbxmax) / q(2)).floor().to_integer().to_i64().unwrap();
            let txhi = ((&axmax - &sbxmin) / q(2)).ceil().to_integer().to_i64().unwrap();
            let tylo = ((&aymin - &sbymax) / q(2)).floor().to_integer().to_i64().unwrap();
            let tyhi = ((&aymax - &sbymin) / q(2)).ceil().to_integer().to_i64().unwrap();
            for tx in txlo..=txhi {
                for ty in tylo..=tyhi {
                    let g = GroupEl { sign, tx, ty };
                    if i == j && sign == 1 && tx == 0 && ty == 0 {
                        continue;
                    }
                    let gb: Vec<Pt> = b.iter().map(|p| g.apply(p)).collect();
                    for (sa, wa) in a.windows(2).enumerate() {
                        for (sb, wb) in gb.windows(2).enumerate() {
                            if let Some((t, u)) = seg_intersection(&wa[0], &wa[1], &wb[0], &wb[1])
                            {
                                if i == j {
                                    // Count each unordered self pair once.
                                    if (sa, &t) > (sb, &u) {
                                        continue;
                                    }
                                }
                                let dir_a = wa[1].sub(&wa[0]);
                                let raw = b[sb + 1].sub(&b[sb]);
                                let dir_b_img = if sign > 0 { raw } else { raw.neg() };
                                out.push(Crossing {
                                    strand_a: i,
                                    t_a: (sa, t),
                                    dir_a,
                                    strand_b: j,
                                    t_b: (sb, u),
                                    dir_b: dir_b_img,
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Build the combinatorial map over base family `base`.
    pub fn build(&self, base: Family, plan: &GluePlan) -> Result<Diagram> {
        let n = self.strands.len();
        let mut crossings: Vec<Crossing> = Vec::new();
        for i in 0..n {
            if !self.crossings_between(i, i)?.is_empty() {
                return Err(Error::Invalid(format!("strand {i} crosses itself in the quotient")));
            }
            for j in i + 1..n {
                let fam_i = self.strands[i].family;
                let fam_j = self.strands[j].family;
                let c = self.crossings_between(i, j)?;
                if fam_i == fam_j && !c.is_empty() {
                    return Err(Error::Invalid(format!(
                        "strands {i} and {j} of family {fam_i:?} intersect"
                    )));
                }
                crossings.extend(c);
            }
        }
        // Ordered crossing lists per strand: (seg, t, crossing id, dir).
        let mut per_strand: Vec<Vec<(usize, Q, usize, Pt)>> = vec![Vec::new(); n];
        for (ci, c) in crossings.iter().enumerate() {
            per_strand[c.strand_a].push((c.t_a.0, c.t_a.1.clone(), ci, c.dir_a.clone()));
            if c.strand_b != c.strand_a {
                per_strand[c.strand_b].push((c.t_b.0, c.t_b.1.clone(), ci, c.dir_b.clone()));
            }
        }
        for list in per_strand.iter_mut() {
            list.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        }
        for (i, s) in self.strands.iter().enumerate() {
            if matches!(s.kind, StrandKind::Loop { .. }) && per_strand[i].is_empty() {
                return Err(Error::Invalid(format!(
                    "loop strand {i} crosses nothing; its embedding would be lost"
                )));
            }
        }
        let mut mb = MapBuilder::new();
        let mut circle_nodes: HashMap<Puncture, NodeId> = HashMap::new();
        for p in Puncture::all() {
            circle_nodes.insert(p, mb.add_node(NodeKind::Circle(p)));
        }
        let cross_nodes: Vec<NodeId> =
            (0..crossings.len()).map(|_| mb.add_node(NodeKind::Crossing)).collect();
        let strand_curve: Vec<CurveId> =
            (0..n).map(|i| mb.add_curve(self.strands[i].family)).collect();
        // Slots on the circles, sorted ccw by angle mod pi.
        let mut slot_keys: Vec<(Puncture, End, Pt)> = Vec::new();
        for (i, s) in self.strands.iter().enumerate() {
            if let StrandKind::Arc { start_corner, end_corner } = s.kind {
                let sv = s.pts[0].sub(&Pt::of(start_corner.0, start_corner.1));
                let ev = s.pts[s.pts.len() - 1].sub(&Pt::of(end_corner.0, end_corner.1));
                slot_keys.push((corner_class(start_corner), (i, true), normalize_half(&sv)));
                slot_keys.push((corner_class(end_corner), (i, false), normalize_half(&ev)));
            }
        }
        let mut end_dart: HashMap<End, DartId> = HashMap::new();
        let mut circle_order: HashMap<Puncture, Vec<End>> = HashMap::new();
        for p in Puncture::all() {
            let mut local: Vec<(End, Pt)> = slot_keys
                .iter()
                .filter(|(pc, _, _)| *pc == p)
                .map(|(_, e, k)| (*e, k.clone()))
                .collect();
            local.sort_by(|a, b| angle_mod_pi_cmp(&a.1, &b.1));
            for w in local.windows(2) {
                if angle_mod_pi_cmp(&w[0].1, &w[1].1) == std::cmp::Ordering::Equal {
                    return Err(Error::Invalid(format!(
                        "coincident slot angles at {}",
                        p.label()
                    )));
                }
            }
            let node = circle_nodes[&p];
            let mut order = Vec::new();
            for (e, _) in local {
                let d = mb.push_dart(node, strand_curve[e.0]);
                end_dart.insert(e, d);
                order.push(e);
            }
            circle_order.insert(p, order);
        }
        // Crossing darts ccw by exact direction. Keys: (crossing, side)
        // where side 0 = strand_a forward, 1 = a backward, 2 = b forward,
        // 3 = b backward.
        let mut cross_dart: HashMap<(usize, u8), DartId> = HashMap::new();
        for (ci, c) in crossings.iter().enumerate() {
            let node = cross_nodes[ci];
            let mut dirs: Vec<(u8, Pt)> = vec![
                (0, c.dir_a.clone()),
                (1, c.dir_a.neg()),
                (2, c.dir_b.clone()),
                (3, c.dir_b.neg()),
            ];
            dirs.sort_by(|x, y| angle_cmp(&x.1, &y.1));
            for (side, _) in dirs {
                let curve = if side < 2 { strand_curve[c.strand_a] } else { strand_curve[c.strand_b] };
                let d = mb.push_dart(node, curve);
                cross_dart.insert((ci, side), d);
            }
        }
        // Edges along each strand.
        for i in 0..n {
            let hits = &per_strand[i];
            let fwd_of = |ci: usize| -> DartId {
                if crossings[ci].strand_a == i {
                    cross_dart[&(ci, 0)]
                } else {
                    cross_dart[&(ci, 2)]
                }
            };
            let bwd_of = |ci: usize| -> DartId {
                if crossings[ci].strand_a == i {
                    cross_dart[&(ci, 1)]
                } else {
                    cross_dart[&(ci, 3)]
                }
            };
            match self.strands[i].kind {
                StrandKind::Arc { .. } => {
                    let mut prev_fwd = end_dart[&(i, true)];
                    for &(_, _, ci, _) in hits {
                        mb.pair(prev_fwd, bwd_of(ci));
                        prev_fwd = fwd_of(ci);
                    }
                    mb.pair(prev_fwd, end_dart[&(i, false)]);
                }
                StrandKind::Loop { .. } => {
                    let k = hits.len();
                    for a in 0..k {
                        let b = (a + 1) % k;
                        mb.pair(fwd_of(hits[a].2), bwd_of(hits[b].2));
                    }
                }
            }
        }
        // Hmm: a self-crossing-free loop meets each crossing once, but a
        // crossing id can appear twice on one strand when a strand crosses
        // another strand that happens to be itself under the quotient;
        // those were rejected above.
        // Glue.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut glue_pairs: Vec<(End, End)> = Vec::new();
        match plan {
            GluePlan::Chains(chains) => {
                for chain in chains {
                    for (k, &(s, fwd)) in chain.iter().enumerate() {
                        let &(s2, fwd2) = &chain[(k + 1) % chain.len()];
                        for idx in [s, s2] {
                            if !matches!(self.strands[idx].kind, StrandKind::Arc { .. }) {
                                return Err(Error::Invalid(format!(
                                    "chain lists non-arc strand {idx}"
                                )));
                            }
                        }
                        let end_of = |idx: usize, forward: bool| -> (i64, i64) {
                            match self.strands[idx].kind {
                                StrandKind::Arc { start_corner, end_corner } => {
                                    if forward {
                                        end_corner
                                    } else {
                                        start_corner
                                    }
                                }
                                _ => unreachable!(),
                            }
                        };
                        let c1 = corner_class(end_of(s, fwd));
                        let c2 = corner_class(end_of(s2, !fwd2));
                        if c2 != c1.partner() {
                            return Err(Error::Invalid(format!(
                                "chain joins {} to {}, not partner circles",
                                c1.label(),
                                c2.label()
                            )));
                        }
                        glue_pairs.push(((s, !fwd), (s2, fwd2)));
                    }
                }
            }
            GluePlan::Offsets { h1, h2 } => {
                for (handle, off) in [(0u8, *h1), (1u8, *h2)] {
                    let minus = &circle_order[&Puncture { handle, side: Side::Minus }];
                    let plus = &circle_order[&Puncture { handle, side: Side::Plus }];
                    let mi: Vec<End> = minus
                        .iter()
                        .copied()
                        .filter(|e| self.strands[e.0].family != Family::Mark)
                        .collect();
                    let pl: Vec<End> = plus
                        .iter()
                        .copied()
                        .filter(|e| self.strands[e.0].family != Family::Mark)
                        .collect();
                    if mi.len() != pl.len() {
                        return Err(Error::Invalid(format!(
                            "handle {handle}: {} slots on minus, {} on plus",
                            mi.len(),
                            pl.len()
                        )));
                    }
                    let m = mi.len() as i64;
                    for (idx, e) in mi.iter().enumerate() {
                        let j = (off - idx as i64).rem_euclid(m.max(1)) as usize;
                        glue_pairs.push((*e, pl[j]));
                    }
                }
            }
        }
        for (ea, eb) in &glue_pairs {
            if self.strands[ea.0].family == Family::Mark
                || self.strands[eb.0].family == Family::Mark
            {
                return Err(Error::Invalid("marking seams cannot be glued".into()));
            }
            let (da, db) = (end_dart[ea], end_dart[eb]);
            mb.set_glue(da, db);
            let (ra, rb) = (find(&mut parent, ea.0), find(&mut parent, eb.0));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        // Merge curve ids along chains.
        for i in 0..n {
            let r = find(&mut parent, i);
            if r != i {
                let target = strand_curve[r];
                let from = strand_curve[i];
                for d in 0..mb.darts.len() {
                    if mb.darts[d].curve == from {
                        mb.darts[d].curve = target;
                    }
                }
            }
        }
        let (map, _) = mb.commit();
        Ok(Diagram { map, base })
    }
}
