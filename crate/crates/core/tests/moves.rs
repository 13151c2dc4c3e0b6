use genus2::canon::canonical_code;
use genus2::diagram::CurveRef;
use genus2::fixtures;
use genus2::map::{Family, Side};
use genus2::moves::{
    apply_homeo, insert_parallel, push_inessential, random_slide, twist_about_base, winding,
    DiagramHomeo,
};
use genus2::recut::recut;
use num_rational::Rational64;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn parallel_pushoff_is_valid() {
    let d = fixtures::standard_s2xs2().unwrap();
    let g = d.family_curves(Family::Gamma)[0];
    let nd = insert_parallel(&d, g, Family::Gamma).unwrap();
    // Three gamma curves now; the structural map must still embed.
    assert!(nd.map.structural_errors().is_empty(), "{:?}", nd.map.structural_errors());
    assert_eq!(nd.family_curves(Family::Gamma).len(), 3);
}

#[test]
fn twisting_all_families_is_a_homeomorphism() {
    let d = fixtures::standard_s2xs2().unwrap();
    let code = canonical_code(&d);
    let mut targets = d.family_curves(Family::Beta);
    targets.extend(d.family_curves(Family::Gamma));
    let t = twist_about_base(&d, 0, &targets, 1).unwrap();
    assert!(t.validate().is_valid(), "{:?}", t.validate().errors);
    assert_eq!(canonical_code(&t), code, "full twist must preserve the class");
}

#[test]
fn twisting_one_family_changes_relative_position() {
    let d = fixtures::standard_s2xs2().unwrap();
    let betas = d.family_curves(Family::Beta);
    let t = twist_about_base(&d, 0, &betas, 1).unwrap();
    assert!(t.validate().is_valid(), "{:?}", t.validate().errors);
    assert_eq!(t.family_intersections(Family::Alpha, Family::Beta), 2);
    assert_ne!(
        t.family_intersections(Family::Beta, Family::Gamma),
        d.family_intersections(Family::Beta, Family::Gamma)
    );
}

#[test]
fn homeos_preserve_canonical_code() {
    let d = fixtures::standard_cp2_cp2bar().unwrap();
    let code = canonical_code(&d);
    for h in [
        DiagramHomeo::J,
        DiagramHomeo::JPrime,
        DiagramHomeo::Phi { handle: 1 },
        DiagramHomeo::H,
        DiagramHomeo::Psi,
    ] {
        let e = apply_homeo(&d, h).unwrap();
        assert!(e.validate().is_valid(), "{h:?}: {:?}", e.validate().errors);
        assert_eq!(canonical_code(&e), code, "{h:?}");
    }
}

#[test]
fn winding_signs_on_standard_diagrams() {
    let mut d = fixtures::standard_cp2_cp2().unwrap();
    for c in d.family_curves(Family::Beta) {
        d.orient_default(c);
    }
    for c in d.family_curves(Family::Gamma) {
        d.orient_default(c);
    }
    let d = push_inessential(&d, [Side::Plus, Side::Plus]).unwrap();
    let betas = d.family_curves(Family::Beta);
    // Each beta curve winds once around its handle relative to gamma.
    let w0 = winding(&d, 0, betas[0], Family::Gamma).unwrap();
    let w1 = winding(&d, 1, betas[1], Family::Gamma).unwrap();
    assert_eq!(w0.abs(), Rational64::new(1, 1), "w0 = {w0}");
    assert_eq!(w1.abs(), Rational64::new(1, 1), "w1 = {w1}");
    // Reversing the gamma orientations negates the windings.
    let mut e = d.clone();
    for c in e.family_curves(Family::Gamma) {
        e.reverse_orientation(c);
    }
    assert_eq!(winding(&e, 0, betas[0], Family::Gamma).unwrap(), -w0);
}

#[test]
fn recut_standard_diagram_round_trip() {
    let d = fixtures::standard_s2xs2().unwrap();
    let code = canonical_code(&d);
    let betas = d.family_curves(Family::Beta);
    let r = recut(&d, betas[0], betas[1]).unwrap();
    assert!(r.validate().is_valid(), "{:?}", r.validate().errors);
    assert_eq!(r.base, Family::Beta);
    // In the new coordinates the alpha family is drawn.
    assert_eq!(r.family_curves(Family::Alpha).len(), 2);
    assert_eq!(r.family_intersections(Family::Beta, Family::Alpha), 2);
    assert_eq!(r.family_intersections(Family::Alpha, Family::Gamma), 2);
    assert_eq!(r.family_intersections(Family::Beta, Family::Gamma), 2);
    // Cut back along alpha: same class.
    let alphas = r.family_curves(Family::Alpha);
    let rr = recut(&r, alphas[0], alphas[1]).unwrap();
    assert!(rr.validate().is_valid());
    assert_eq!(canonical_code(&rr), code);
}

#[test]
fn random_slides_stay_valid() {
    let d = fixtures::trivial_heegaard().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cur = d;
    for i in 0..12 {
        cur = random_slide(&cur, Family::Beta, &mut rng).unwrap();
        let rep = cur.validate();
        assert!(rep.is_valid(), "slide {i}: {:?}", rep.errors);
        assert!(
            cur.family_intersections(Family::Alpha, Family::Beta) >= 2
        );
    }
}
