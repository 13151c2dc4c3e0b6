use genus2::build::{FlatBuilder, GluePlan, Strand};
use genus2::fixtures;
use genus2::geom::q;
use genus2::map::Family;
use genus2::route::{face_graph, find_route, insert_closed_route, RouteSpec, Step};

#[test]
fn seeded_trivial_is_planar() {
    let d = fixtures::trivial_heegaard().unwrap();
    let betas = d.family_curves(Family::Beta);
    let (n1, _n2) = (betas[0], betas[1]);
    let map = &d.map;
    let fg = face_graph(map);
    let curves = map.curves.clone();
    let avoid = move |c: usize| c != n1 && curves[c].family != Family::Temp;
    let spec = RouteSpec { map, may_cross: Box::new(avoid), may_cross_base: true };
    let u = map.curve_cycle(n1)[0];
    let mut steps = vec![Step::Edge { dart: u }];
    let back = find_route(&spec, &fg, &[fg.face_of_dart[map.pairing[u]]], &|f| {
        f == fg.face_of_dart[u]
    })
    .unwrap();
    println!("route back: {:?}", back);
    steps.extend(back);
    let (nd, _) = insert_closed_route(&d, Family::Temp, &steps).unwrap();
    let errs = nd.map.structural_errors();
    println!("seeded errors: {errs:?}");
    assert!(errs.is_empty());
}

#[test]
fn simple_base_crossing_loop() {
    // Directly test a closed route with one Edge and one Base step on the
    // bare marked sphere with one beta curve.
    let mut fb = FlatBuilder::new();
    fb.add_marking();
    let b1 = fb.add(Strand::seam(Family::Beta, (0, 0), (0, 1), q(0)));
    let b2 = fb.add(Strand::seam(Family::Beta, (1, 0), (0, 1), q(0)));
    let d = fb
        .build(
            Family::Alpha,
            &GluePlan::Chains(vec![vec![(b1, true)], vec![(b2, true)]]),
        )
        .unwrap();
    let map = &d.map;
    let fg = face_graph(map);
    let betas = d.family_curves(Family::Beta);
    let u = map.curve_cycle(betas[0])[0];
    let curves = map.curves.clone();
    let n1 = betas[0];
    let avoid = move |c: usize| c != n1 && curves[c].family != Family::Temp;
    let spec = RouteSpec { map, may_cross: Box::new(avoid), may_cross_base: true };
    let back = find_route(&spec, &fg, &[fg.face_of_dart[map.pairing[u]]], &|f| {
        f == fg.face_of_dart[u]
    })
    .unwrap();
    println!("steps: Edge(u) then {back:?}");
    let mut steps = vec![Step::Edge { dart: u }];
    steps.extend(back);
    let (nd, _) = insert_closed_route(&d, Family::Temp, &steps).unwrap();
    let errs = nd.map.structural_errors();
    println!("errors: {errs:?}");
    assert!(errs.is_empty());
}
