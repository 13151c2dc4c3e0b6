//! The diagram type: a combinatorial map of curve families on the
//! genus-two surface cut along a base cut system, together with the
//! four-seam marking that pins the embedding.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::map::{CurveId, DartId, Family, Map, NodeKind, Puncture, Side, NIL};
use crate::regions::{compute_regions, BaseMode, Visibility};

/// Reference to a curve: one of the two base curves (by handle) or a drawn
/// curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveRef {
    Base(u8),
    Curve(CurveId),
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub map: Map,
    /// Family realized by the boundary circles.
    pub base: Family,
}

impl Diagram {
    /// Live curves of a family, ascending by id.
    pub fn family_curves(&self, fam: Family) -> Vec<CurveId> {
        let mut live = HashSet::new();
        for d in 0..self.map.dart_count() {
            live.insert(self.map.curve_of[d]);
        }
        let mut out: Vec<CurveId> = live
            .into_iter()
            .filter(|&c| self.map.curves[c].family == fam)
            .collect();
        out.sort_unstable();
        out
    }

    /// Families with at least one live curve, base and marking excluded.
    pub fn present_families(&self) -> Vec<Family> {
        [Family::Alpha, Family::Beta, Family::Gamma]
            .into_iter()
            .filter(|&f| f != self.base && !self.family_curves(f).is_empty())
            .collect()
    }

    pub fn mark_curves(&self) -> Vec<CurveId> {
        self.family_curves(Family::Mark)
    }

    /// Endpoint punctures of an open (marking) arc.
    pub fn arc_endpoints(&self, c: CurveId) -> Vec<Puncture> {
        let mut out = Vec::new();
        for d in 0..self.map.dart_count() {
            if self.map.curve_of[d] == c
                && self.map.glue[d] == NIL
                && self.map.is_circle(self.map.node_of[d])
            {
                out.push(self.map.puncture_of(self.map.node_of[d]).unwrap());
            }
        }
        out
    }

    /// Crossing nodes shared by two drawn curves.
    pub fn crossings_between(&self, a: CurveId, b: CurveId) -> Vec<usize> {
        let mut out = Vec::new();
        for (n, kind) in self.map.nodes.iter().enumerate() {
            if !matches!(kind, NodeKind::Crossing) {
                continue;
            }
            let ds = self.map.darts_at(n);
            let (c0, c1) = (self.map.curve_of[ds[0]], self.map.curve_of[ds[1]]);
            if (c0 == a && c1 == b) || (c0 == b && c1 == a) {
                out.push(n);
            }
        }
        out
    }

    /// Real slots of a curve on the circles of a handle (both sides).
    pub fn slots_on_handle(&self, c: CurveId, handle: u8) -> Vec<DartId> {
        let mut out = Vec::new();
        for d in 0..self.map.dart_count() {
            if self.map.curve_of[d] != c || self.map.glue[d] == NIL {
                continue;
            }
            if let Some(p) = self.map.puncture_of(self.map.node_of[d]) {
                if p.handle == handle && p.side == Side::Minus {
                    out.push(d);
                }
            }
        }
        out
    }

    /// Raw crossing count between two curve references (no minimality
    /// check); base-base pairs are disjoint.
    pub fn raw_intersections(&self, a: CurveRef, b: CurveRef) -> usize {
        match (a, b) {
            (CurveRef::Base(_), CurveRef::Base(_)) => 0,
            (CurveRef::Base(h), CurveRef::Curve(c)) | (CurveRef::Curve(c), CurveRef::Base(h)) => {
                self.slots_on_handle(c, h).len()
            }
            (CurveRef::Curve(c), CurveRef::Curve(e)) => {
                if c == e {
                    0
                } else {
                    self.crossings_between(c, e).len()
                }
            }
        }
    }

    /// Total intersection number between two families (base family allowed).
    pub fn family_intersections(&self, f: Family, g: Family) -> usize {
        let refs = |fam: Family| -> Vec<CurveRef> {
            if fam == self.base {
                vec![CurveRef::Base(0), CurveRef::Base(1)]
            } else {
                self.family_curves(fam).into_iter().map(CurveRef::Curve).collect()
            }
        };
        let mut total = 0;
        for a in refs(f) {
            for b in refs(g) {
                total += self.raw_intersections(a, b);
            }
        }
        total
    }

    /// Directed darts of `c` in traversal order following its orientation;
    /// errors if unoriented.
    pub fn oriented_cycle(&self, c: CurveId) -> Result<Vec<DartId>> {
        if self.map.curves[c].forward.is_none() {
            return Err(Error::MissingOrientation(format!("curve {c}")));
        }
        Ok(self.map.curve_cycle(c))
    }

    /// Assign an orientation to a curve (choosing its lowest dart as
    /// forward) if not already oriented.
    pub fn orient_default(&mut self, c: CurveId) {
        if self.map.curves[c].forward.is_some() {
            return;
        }
        let d = (0..self.map.dart_count()).find(|&d| self.map.curve_of[d] == c);
        self.map.curves[c].forward = d;
    }

    pub fn reverse_orientation(&mut self, c: CurveId) {
        let cycle = self.map.curve_cycle(c);
        if let Some(f) = self.map.curves[c].forward {
            // The reversed direction departs along the pairing of the dart
            // that the forward traversal arrives on.
            let pos = cycle.iter().position(|&d| d == f).unwrap_or(0);
            let prev = cycle[(pos + cycle.len() - 1) % cycle.len()];
            self.map.curves[c].forward = Some(self.map.pairing[prev]);
        }
    }

    /// The set of darts departed by the oriented traversal of `c`.
    pub fn forward_darts(&self, c: CurveId) -> Result<HashSet<DartId>> {
        let f = self.map.curves[c].forward.ok_or_else(|| {
            Error::MissingOrientation(format!("curve {c}"))
        })?;
        let mut out = HashSet::new();
        let mut d = f;
        loop {
            out.insert(d);
            match self.map.curve_next(d) {
                Some(n) if n != f => d = n,
                _ => break,
            }
        }
        Ok(out)
    }

    /// Sign of the crossing node `n` between oriented curves `c` and `e`:
    /// +1 when (tangent of c, tangent of e) is a positive basis.
    pub fn crossing_sign(
        &self,
        n: usize,
        c: CurveId,
        fwd_c: &HashSet<DartId>,
        fwd_e: &HashSet<DartId>,
    ) -> i64 {
        let ds = self.map.darts_at(n);
        let out_c = *ds
            .iter()
            .find(|&&d| self.map.curve_of[d] == c && fwd_c.contains(&d))
            .expect("oriented strand at crossing");
        let next = self.map.rot_next[out_c];
        if fwd_e.contains(&next) {
            1
        } else {
            -1
        }
    }

    /// Signed count of `c` passing through the base curve of `handle`:
    /// +1 when crossing from the minus to the plus side.
    pub fn signed_base_crossings(&self, c: CurveId, handle: u8) -> Result<i64> {
        let fwd = self.forward_darts(c)?;
        let mut total = 0;
        for d in 0..self.map.dart_count() {
            if self.map.curve_of[d] != c || self.map.glue[d] == NIL || !fwd.contains(&d) {
                continue;
            }
            // d departs a circle; the traversal crossed the base arriving
            // at glue(d)'s circle... count at the arrival slot instead:
            // traversal arrives at slot pairing-side. Count each passage
            // once, at its entry slot.
            let p = self.map.puncture_of(self.map.node_of[d]).unwrap();
            if p.handle != handle {
                continue;
            }
            // The passage enters at the partner circle and leaves from d;
            // entering side is the partner of d's side.
            total += match p.side {
                // leaving from the plus side means the strand traveled
                // minus -> plus
                Side::Plus => 1,
                Side::Minus => -1,
            };
        }
        Ok(total)
    }

    /// Checks all diagram invariants and reports violations.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        for e in self.map.structural_errors() {
            rep.errors.push(e);
        }
        if !rep.errors.is_empty() {
            return rep; // deeper checks assume structure
        }
        // Marking: four arcs with the square-cutting endpoint pattern.
        let marks = self.mark_curves();
        if marks.len() != 4 {
            rep.errors.push(format!("expected 4 marking seams, found {}", marks.len()));
            return rep;
        }
        // Endpoint census: one seam per handle plus two cross seams; any
        // such disjoint essential quad cuts the sphere into two squares.
        let mut handle_seams = [0usize; 2];
        let mut cross_seams = 0usize;
        for &m in &marks {
            let mut eps = self.arc_endpoints(m);
            eps.sort();
            if eps.len() != 2 {
                rep.errors.push(format!("marking curve {m} is not an open seam"));
                continue;
            }
            if eps[0].handle == eps[1].handle {
                if eps[0].side == eps[1].side {
                    rep.errors.push(format!("marking curve {m} has equal endpoints"));
                } else {
                    handle_seams[eps[0].handle as usize] += 1;
                }
            } else {
                cross_seams += 1;
            }
        }
        if handle_seams != [1, 1] || cross_seams != 2 {
            rep.errors.push("marking seams do not have the square-cutting endpoint pattern".into());
        }
        for i in 0..marks.len() {
            for j in i + 1..marks.len() {
                if !self.crossings_between(marks[i], marks[j]).is_empty() {
                    rep.errors.push("marking seams intersect each other".into());
                }
            }
        }
        if rep.errors.is_empty() {
            let r = mark_complement_regions(&self.map);
            if r != 2 {
                rep.errors
                    .push(format!("marking complement has {r} regions, expected two squares"));
            }
        }
        // Non-mark curves close up.
        for fam in [Family::Alpha, Family::Beta, Family::Gamma] {
            for c in self.family_curves(fam) {
                let darts: Vec<DartId> =
                    (0..self.map.dart_count()).filter(|&d| self.map.curve_of[d] == c).collect();
                let cyc = self.map.curve_darts(c);
                if cyc.len() != darts.len() {
                    rep.errors.push(format!(
                        "curve {c} does not close into a single cycle ({} of {} darts)",
                        cyc.len(),
                        darts.len()
                    ));
                    continue;
                }
                let mut d0 = cyc[0];
                let mut closed = false;
                for _ in 0..darts.len() + 1 {
                    match self.map.curve_next(d0) {
                        Some(n) => {
                            d0 = n;
                            if d0 == cyc[0] {
                                closed = true;
                                break;
                            }
                        }
                        None => break,
                    }
                }
                if !closed {
                    rep.errors.push(format!("curve {c} does not close up (unglued end)"));
                }
            }
        }
        if self.base == Family::Mark || self.base == Family::Temp {
            rep.errors.push("base must be a real curve family".into());
        }
        if !self.family_curves(Family::Temp).is_empty() {
            rep.errors.push("scratch curves left in the diagram".into());
        }
        if !rep.errors.is_empty() {
            return rep;
        }
        // Family structure: two curves per present family, cut systems.
        for fam in self.present_families() {
            let cs = self.family_curves(fam);
            if cs.len() != 2 {
                rep.errors.push(format!(
                    "family {:?} has {} curves, expected 2",
                    fam,
                    cs.len()
                ));
                continue;
            }
            for &c in &cs {
                let r = compute_regions(&self.map, &Visibility::curves(&[c]), BaseMode::Glued);
                if r.region_count != 1 {
                    rep.errors.push(format!("curve {c} of family {fam:?} separates the surface"));
                }
            }
            let r = compute_regions(&self.map, &Visibility::curves(&cs), BaseMode::Glued);
            if r.region_count != 1 {
                rep.errors.push(format!(
                    "family {:?} is not a cut system: complement has {} components",
                    fam, r.region_count
                ));
            }
            if self.family_intersections(fam, self.base) == 0 {
                rep.warnings.push(format!(
                    "family {:?} is disjoint from the base cut system",
                    fam
                ));
            }
        }
        rep
    }

    pub fn require_valid(&self) -> Result<()> {
        let rep = self.validate();
        if rep.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid(rep.errors.join("; ")))
        }
    }
}

/// Region count of the complement of the marking in the cut surface.
fn mark_complement_regions(map: &Map) -> usize {
    let (face_of_dart, nfaces) = map.faces();
    let mut dsu: Vec<usize> = (0..nfaces).collect();
    fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
        if dsu[x] != x {
            let r = find(dsu, dsu[x]);
            dsu[x] = r;
        }
        dsu[x]
    }
    for d in 0..map.dart_count() {
        let p = map.pairing[d];
        if d < p && map.family_of_dart(d) != Family::Mark {
            let (a, b) = (find(&mut dsu, face_of_dart[d]), find(&mut dsu, face_of_dart[p]));
            if a != b {
                dsu[a] = b;
            }
        }
    }
    let mut reps = HashSet::new();
    for f in 0..nfaces {
        let r = find(&mut dsu, f);
        reps.insert(r);
    }
    reps.len()
}
