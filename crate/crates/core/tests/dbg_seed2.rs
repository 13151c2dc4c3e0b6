use genus2::fixtures;

#[test]
fn dump_trivial() {
    let d = fixtures::trivial_heegaard().unwrap();
    let m = &d.map;
    for (n, kind) in m.nodes.iter().enumerate() {
        let ds = m.darts_at(n);
        let info: Vec<String> = ds.iter().map(|&x| format!(
            "d{}[c{}{:?}]->p{}{}", x, m.curve_of[x], m.curves[m.curve_of[x]].family,
            m.pairing[x],
            if m.glue[x] != usize::MAX { format!(" g{}", m.glue[x]) } else { "".into() }
        )).collect();
        println!("node {n} {:?}: {}", kind, info.join("  "));
    }
    let (faces, nf) = m.faces();
    println!("nfaces {nf}");
    let mut by_face: std::collections::HashMap<usize, Vec<usize>> = Default::default();
    for x in 0..m.dart_count() { by_face.entry(faces[x]).or_default().push(x); }
    let mut keys: Vec<_> = by_face.keys().copied().collect(); keys.sort();
    for f in keys { println!("  face {f}: {:?}", by_face[&f]); }
}
