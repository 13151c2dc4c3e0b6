//! Canonical codes: equal codes exactly when two diagrams differ by a
//! relabeling-compatible isomorphism of the glued configuration — dart
//! renumbering, the hyperelliptic involution (side swap), handle swap,
//! and reflection. The marking seams are stripped before encoding.
//!
//! Disconnected configurations are encoded per component plus a region
//! incidence table that pins how the pieces assemble on the surface.

use std::collections::HashMap;

use crate::diagram::Diagram;
use crate::map::{CurveId, DartId, Family, Map, NodeKind, Puncture, Side, NIL};
use crate::regions::{compute_regions, BaseMode, Visibility};

/// Stripped view: real darts are those of non-mark curves that sit at
/// circles or at real-real crossings.
struct Stripped<'a> {
    map: &'a Map,
    real: Vec<bool>,
}

impl<'a> Stripped<'a> {
    fn new(map: &'a Map) -> Stripped<'a> {
        let mut real = vec![false; map.dart_count()];
        for d in 0..map.dart_count() {
            if map.family_of_dart(d) == Family::Mark {
                continue;
            }
            let n = map.node_of[d];
            match map.nodes[n] {
                NodeKind::Circle(_) => real[d] = true,
                NodeKind::Crossing => {
                    let ds = map.darts_at(n);
                    if ds.iter().all(|&x| map.family_of_dart(x) != Family::Mark) {
                        real[d] = true;
                    }
                }
            }
        }
        Stripped { map, real }
    }

    fn rot(&self, d: DartId, reflect: bool) -> DartId {
        let mut e = d;
        loop {
            e = if reflect { self.map.rot_prev[e] } else { self.map.rot_next[e] };
            if self.real[e] {
                return e;
            }
        }
    }

    /// Pairing through mark crossings.
    fn pairing(&self, d: DartId) -> DartId {
        let mut e = self.map.pairing[d];
        while !self.real[e] {
            e = self.map.pairing[self.map.straight_through(e)];
        }
        e
    }
}

const PUNCTURE_PERMS: [[(u8, Side); 4]; 8] = {
    use Side::{Minus, Plus};
    // (handle swap) x (J on handle 0) x (J on handle 1)? J acts on both
    // sides simultaneously; allowed relabelings are handle swap, global J,
    // and per-handle side flips coming from homeomorphisms of the cut
    // sphere that extend over the gluing (each side flip extends: it is the
    // half twist on that handle). All eight sign/handle patterns extend.
    [
        [(0, Minus), (0, Plus), (1, Minus), (1, Plus)],
        [(0, Plus), (0, Minus), (1, Minus), (1, Plus)],
        [(0, Minus), (0, Plus), (1, Plus), (1, Minus)],
        [(0, Plus), (0, Minus), (1, Plus), (1, Minus)],
        [(1, Minus), (1, Plus), (0, Minus), (0, Plus)],
        [(1, Plus), (1, Minus), (0, Minus), (0, Plus)],
        [(1, Minus), (1, Plus), (0, Plus), (0, Minus)],
        [(1, Plus), (1, Minus), (0, Plus), (0, Minus)],
    ]
};

fn perm_label(p: Puncture, perm: &[(u8, Side); 4]) -> u8 {
    let idx = (p.handle * 2 + if p.side == Side::Plus { 1 } else { 0 }) as usize;
    let (h, s) = perm[idx];
    h * 2 + if s == Side::Plus { 1 } else { 0 }
}

fn family_token(f: Family) -> u32 {
    match f {
        Family::Alpha => 0,
        Family::Beta => 1,
        Family::Gamma => 2,
        Family::Mark => 3,
        Family::Temp => 4,
    }
}

/// Canonical encoding of one stripped component from a fixed start, under
/// a relabel variant. Tokens are u32 words.
fn encode_component(
    s: &Stripped,
    start: DartId,
    reflect: bool,
    perm: &[(u8, Side); 4],
) -> Vec<u32> {
    let mut id: HashMap<DartId, u32> = HashMap::new();
    let mut order: Vec<DartId> = Vec::new();
    let mut curve_ids: HashMap<CurveId, u32> = HashMap::new();
    let mut out = Vec::new();
    id.insert(start, 0);
    order.push(start);
    let mut k = 0;
    while k < order.len() {
        let d = order[k];
        for step in 0..3u8 {
            let e = match step {
                0 => Some(s.rot(d, reflect)),
                1 => Some(s.pairing(d)),
                _ => {
                    let g = s.map.glue[d];
                    if g == NIL {
                        None
                    } else {
                        Some(g)
                    }
                }
            };
            match e {
                None => out.push(u32::MAX),
                Some(e) => {
                    let next = id.len() as u32;
                    let t = *id.entry(e).or_insert_with(|| {
                        order.push(e);
                        next
                    });
                    out.push(t);
                }
            }
        }
        let n = s.map.node_of[d];
        out.push(match s.map.nodes[n] {
            NodeKind::Circle(p) => 100 + perm_label(p, perm) as u32,
            NodeKind::Crossing => 99,
        });
        let c = s.map.curve_of[d];
        let fresh = curve_ids.len() as u32;
        let ct = *curve_ids.entry(c).or_insert(fresh);
        out.push(family_token(s.map.curves[c].family) * 1000 + ct);
        k += 1;
    }
    out
}

/// The canonical code of a diagram.
pub fn canonical_code(d: &Diagram) -> Vec<u8> {
    let map = &d.map;
    let s = Stripped::new(map);
    // Components of the stripped glued structure: union-find over real
    // darts via rot, pairing, glue; plus partner circles always joined.
    let nd = map.dart_count();
    let mut parent: Vec<usize> = (0..nd).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    fn union(p: &mut Vec<usize>, a: usize, b: usize) {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p[ra] = rb;
        }
    }
    let real_darts: Vec<DartId> = (0..nd).filter(|&x| s.real[x]).collect();
    for &x in &real_darts {
        union(&mut parent, x, s.rot(x, false));
        union(&mut parent, x, s.pairing(x));
        if map.glue[x] != NIL {
            union(&mut parent, x, map.glue[x]);
        }
    }
    // Group components.
    let mut comps: HashMap<usize, Vec<DartId>> = HashMap::new();
    for &x in &real_darts {
        let r = find(&mut parent, x);
        comps.entry(r).or_default().push(x);
    }
    // Dartless floaters: non-mark curves all of whose crossings are mark
    // crossings. Classified by the puncture partition they cut off.
    let mut floaters: Vec<(u32, u32)> = Vec::new();
    let live: std::collections::HashSet<CurveId> =
        (0..nd).map(|x| map.curve_of[x]).collect();
    for &c in &live {
        if map.curves[c].family == Family::Mark {
            continue;
        }
        let has_real = (0..nd).any(|x| map.curve_of[x] == c && s.real[x]);
        if has_real {
            continue;
        }
        floaters.push((family_token(map.curves[c].family), floater_class(d, c)));
    }
    floaters.sort_unstable();

    let mut best: Option<Vec<u8>> = None;
    for reflect in [false, true] {
        for perm in &PUNCTURE_PERMS {
            // Per component: minimal encoding over starts.
            let mut comp_codes: Vec<(Vec<u32>, Vec<DartId>)> = Vec::new();
            for darts in comps.values() {
                let mut bestc: Option<Vec<u32>> = None;
                for &st in darts {
                    let code = encode_component(&s, st, reflect, perm);
                    if bestc.as_ref().map_or(true, |b| code < *b) {
                        bestc = Some(code);
                    }
                }
                comp_codes.push((bestc.unwrap(), darts.clone()));
            }
            comp_codes.sort();
            // Region incidence: regions of the full stripped system in the
            // glued surface; rows of per-component boundary dart counts.
            let vis = Visibility::families(&[Family::Alpha, Family::Beta, Family::Gamma]);
            let regions = compute_regions(map, &vis, BaseMode::Glued);
            let mut rows: Vec<Vec<u32>> = Vec::new();
            for r in 0..regions.region_count {
                let mut row = vec![0u32; comp_codes.len()];
                for (ci, (_, darts)) in comp_codes.iter().enumerate() {
                    let mut cnt = 0;
                    for &x in darts.iter() {
                        if regions.region_of_dart(x) == r {
                            cnt += 1;
                        }
                    }
                    row[ci] = cnt;
                }
                rows.push(row);
            }
            rows.sort();
            // Serialize.
            let mut bytes: Vec<u8> = Vec::new();
            let push32 = |bytes: &mut Vec<u8>, v: u32| bytes.extend_from_slice(&v.to_be_bytes());
            push32(&mut bytes, comp_codes.len() as u32);
            for (code, _) in &comp_codes {
                push32(&mut bytes, code.len() as u32);
                for &t in code {
                    push32(&mut bytes, t);
                }
            }
            push32(&mut bytes, floaters.len() as u32);
            for &(f, k) in &floaters {
                push32(&mut bytes, f);
                push32(&mut bytes, k);
            }
            push32(&mut bytes, rows.len() as u32);
            for row in &rows {
                for &v in row {
                    push32(&mut bytes, v);
                }
            }
            if best.as_ref().map_or(true, |b| bytes < *b) {
                best = Some(bytes);
            }
        }
    }
    best.unwrap_or_default()
}

/// Handle index for a curve parallel to a base curve, if it is one.
pub fn floater_handle(d: &Diagram, c: CurveId) -> Option<u8> {
    match floater_class(d, c) {
        0 => Some(0),
        1 => Some(1),
        _ => None,
    }
}

/// Which side partition a scaffold-only curve cuts off: 0/1 = parallel to
/// that handle's base curve, 2 = separates the handles, 3 = diagonal.
fn floater_class(d: &Diagram, c: CurveId) -> u32 {
    let vis = Visibility::curves(&[c]);
    let regions = compute_regions(&d.map, &vis, BaseMode::Cut);
    // Region of each circle: via the face after its first dart.
    let mut side: HashMap<Puncture, usize> = HashMap::new();
    for (n, kind) in d.map.nodes.iter().enumerate() {
        if let NodeKind::Circle(p) = kind {
            let dart = d.map.node_dart[n];
            let f = d.map.rot_next[dart];
            side.insert(*p, regions.region_of_dart(f));
        }
    }
    let p = |h: u8, s: Side| side[&Puncture { handle: h, side: s }];
    let (a, b, c2, d2) = (
        p(0, Side::Plus),
        p(0, Side::Minus),
        p(1, Side::Plus),
        p(1, Side::Minus),
    );
    if regions.region_count < 2 {
        return 9; // does not separate the cut sphere: not boundary-parallel
    }
    // Exactly one circle cut off -> parallel to that handle.
    let groups = [(a, 0u32), (b, 0), (c2, 1), (d2, 1)];
    for (i, &(g, h)) in groups.iter().enumerate() {
        if groups.iter().enumerate().all(|(j, &(g2, _))| (g2 == g) == (i == j)) {
            return h;
        }
    }
    if a == b && c2 == d2 && a != c2 {
        return 2;
    }
    3
}

/// Convenience: hex string of the canonical code (used in census records).
pub fn code_hex(code: &[u8]) -> String {
    let mut s = String::with_capacity(code.len() * 2);
    for b in code {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn standard_diagrams_have_distinct_codes() {
        let a = canonical_code(&fixtures::standard_s2xs2().unwrap());
        let b = canonical_code(&fixtures::standard_cp2_cp2().unwrap());
        let c = canonical_code(&fixtures::standard_cp2_cp2bar().unwrap());
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_ne!(b, c);
    }

    #[test]
    fn reflection_identifies_mirror_windings() {
        let b = canonical_code(&fixtures::standard_winding(1, 1).unwrap());
        let b2 = canonical_code(&fixtures::standard_winding(-1, -1).unwrap());
        assert_eq!(b, b2);
        let c = canonical_code(&fixtures::standard_winding(1, -1).unwrap());
        let c2 = canonical_code(&fixtures::standard_winding(-1, 1).unwrap());
        assert_eq!(c, c2);
        assert_ne!(b, c);
    }
}
