use genus2::fixtures;
use genus2::map::{Family, NodeKind};
use genus2::recut::recut;

#[test]
fn dump_trivial_recut() {
    let d = fixtures::trivial_heegaard().unwrap();
    let betas = d.family_curves(Family::Beta);
    let r = match recut(&d, betas[0], betas[1]) { Ok(r) => r, Err(e) => panic!("{e}") };
    let m = &r.map;
    for (n, kind) in m.nodes.iter().enumerate() {
        let ds = if m.node_dart[n] == usize::MAX { vec![] } else { m.darts_at(n) };
        let info: Vec<String> = ds.iter().map(|&x| format!(
            "d{}[c{}{:?}]->p{}{}", x, m.curve_of[x], m.curves[m.curve_of[x]].family,
            m.pairing[x],
            if m.glue[x] != usize::MAX { format!(" g{}", m.glue[x]) } else { "".into() }
        )).collect();
        println!("node {n} {:?}: {}", kind, info.join("  "));
    }
    let (faces, nf) = m.faces();
    println!("faces: {nf}");
    let mut by_face: std::collections::HashMap<usize, Vec<usize>> = Default::default();
    for x in 0..m.dart_count() { by_face.entry(faces[x]).or_default().push(x); }
    for (f, ds) in by_face { println!("  face {f}: {ds:?}"); }
    let _ = NodeKind::Crossing;
}
