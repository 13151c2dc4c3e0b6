use genus2::fixtures;
use genus2::map::Family;
use genus2::recut::recut;
use genus2::moves::push_inessential;
use genus2::map::Side;

#[test]
fn dbg_recut_trivial() {
    let d = fixtures::trivial_heegaard().unwrap();
    let betas = d.family_curves(Family::Beta);
    match recut(&d, betas[0], betas[1]) {
        Ok(r) => {
            let rep = r.validate();
            println!("trivial recut: valid={} errs={:?}", rep.is_valid(), rep.errors);
            assert!(rep.is_valid());
        }
        Err(e) => panic!("recut failed: {e}"),
    }
}

#[test]
fn dbg_triangle_cp2() {
    let mut d = fixtures::standard_cp2_cp2().unwrap();
    for f in [Family::Beta, Family::Gamma] {
        for c in d.family_curves(f) { d.orient_default(c); }
    }
    let d2 = push_inessential(&d, [Side::Plus, Side::Plus]).unwrap();
    println!("after push: valid={} iota_bg={}", d2.validate().is_valid(),
        d2.family_intersections(Family::Beta, Family::Gamma));
    // count triangle-ish faces manually
    let map = &d2.map;
    let mut orbit_lens = std::collections::HashMap::new();
    let (faces, nf) = map.faces();
    let mut sizes = vec![0usize; nf];
    for dd in 0..map.dart_count() { sizes[faces[dd]] += 1; }
    for s in &sizes { *orbit_lens.entry(*s).or_insert(0usize) += 1; }
    println!("face orbit sizes: {orbit_lens:?}");
}
