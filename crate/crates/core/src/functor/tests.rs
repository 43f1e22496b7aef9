use std::sync::Arc;

use super::*;
use crate::fixtures::{self, path_blocks};
use crate::scalar::{DenseMatrix, Field, Scalar};

const Q: Field = Field::Rational;

fn a1() -> (Arc<GentleAlgebra>, Functor) {
    let alg = Arc::new(fixtures::algebra_a1());
    let f = Functor::new(alg.clone()).unwrap();
    (alg, f)
}

/// `[name, degree]` in the A1 poset.
fn el(f: &Functor, name: &str, d: i64) -> GradedElement {
    f.poset().element(name, d).unwrap()
}

fn m(rows: &[&[i64]]) -> DenseMatrix {
    DenseMatrix::from_i64(Q, rows)
}

fn expect(f: &Functor, entries: &[(&str, i64, &str, i64, DenseMatrix)]) -> BlockMatrix {
    entries.iter().map(|(a, i, b, j, mat)| ((el(f, a, *i), el(f, b, *j)), mat.clone())).collect()
}

#[test]
fn printed_object() {
    let (alg, f) = a1();
    let p = fixtures::a1_complex(&alg, Q);
    let img = f.object(&p).unwrap();
    let o = &img.value;
    assert!(o.validate().is_valid(), "{}", o.validate());
    for (n, d, k) in [("e1", 1, 1), ("x", 1, 1), ("xa", 1, 0), ("xay", 1, 0), ("e1", 2, 2), ("x", 2, 2), ("xa", 2, 1), ("xay", 2, 1)] {
        assert_eq!(o.dim(el(&f, n, d)), k, "{n},{d}");
    }
    let want = expect(
        &f,
        &[
            ("e1", 1, "e1", 2, m(&[&[0, 1]])),
            ("x", 1, "x", 2, m(&[&[0, 1]])),
            ("e1", 1, "x", 2, m(&[&[2, 0]])),
            ("e1", 1, "xay", 2, m(&[&[2]])),
            ("x", 1, "xa", 2, m(&[&[1]])),
            ("x", 1, "xay", 2, m(&[&[3]])),
        ],
    );
    assert_eq!(o.blocks(), &want);
    // e₁ lands twice, every other nonzero path once
    assert_eq!(img.placement.len(), 6);
}

#[test]
fn printed_morphism() {
    let (alg, f) = a1();
    let p = fixtures::a1_complex(&alg, Q);
    let (al, be, ga, de, ep, la) = (1, 2, 3, 4, 5, 6);
    let phi = fixtures::a1_endomorphism(&p, [al, be, ga, de, ep, la]);
    let img = f.morphism(&phi).unwrap().value;
    assert!(img.validate().is_valid(), "{}", img.validate());
    let want = expect(
        &f,
        &[
            ("e1", 1, "e1", 1, m(&[&[be]])),
            ("e1", 1, "x", 1, m(&[&[la]])),
            ("x", 1, "x", 1, m(&[&[be]])),
            ("e1", 2, "e1", 2, m(&[&[be, 0], &[0, be]])),
            ("e1", 2, "x", 2, m(&[&[al, ga], &[0, la]])),
            ("e1", 2, "xa", 2, m(&[&[de], &[la]])),
            ("e1", 2, "xay", 2, m(&[&[ep], &[3 * la]])),
            ("x", 2, "x", 2, m(&[&[be, 0], &[0, be]])),
            ("xa", 2, "xa", 2, m(&[&[be]])),
            ("xay", 2, "xay", 2, m(&[&[be]])),
        ],
    );
    assert_eq!(img.blocks(), &want);
}

#[test]
fn printed_cone_image() {
    let (alg, f) = a1();
    let p = fixtures::a1_complex(&alg, Q);
    let (al, be, ga, de, ep, la) = (1, 2, 3, 4, 5, 6);
    let phi = fixtures::a1_endomorphism(&p, [al, be, ga, de, ep, la]);
    let (c, _, _) = mapping_cone(&phi).unwrap();
    let img = f.object(&c).unwrap().value;
    let want = expect(
        &f,
        &[
            ("e1", 0, "e1", 1, m(&[&[0, -1, be]])),
            ("e1", 0, "x", 1, m(&[&[-2, 0, la]])),
            ("e1", 0, "xay", 1, m(&[&[-2]])),
            ("x", 0, "x", 1, m(&[&[0, -1, be]])),
            ("x", 0, "xa", 1, m(&[&[-1]])),
            ("x", 0, "xay", 1, m(&[&[-3]])),
            ("e1", 1, "e1", 2, m(&[&[be, 0], &[0, be], &[0, 1]])),
            ("e1", 1, "x", 2, m(&[&[al, ga], &[0, la], &[2, 0]])),
            ("e1", 1, "xa", 2, m(&[&[de], &[la], &[0]])),
            ("e1", 1, "xay", 2, m(&[&[ep], &[3 * la], &[2]])),
            ("x", 1, "x", 2, m(&[&[be, 0], &[0, be], &[0, 1]])),
            ("x", 1, "xa", 2, m(&[&[0], &[0], &[1]])),
            ("x", 1, "xay", 2, m(&[&[0], &[0], &[3]])),
            ("xa", 1, "xa", 2, m(&[&[be]])),
            ("xay", 1, "xay", 2, m(&[&[be]])),
        ],
    );
    assert_eq!(img.blocks(), &want);
    assert_eq!(img.dims().total(), 16);
    let r = f.check_cone_compat(&phi).unwrap();
    assert!(r.is_valid(), "{r}");
}

#[test]
fn loop_example_images() {
    let (alg, f) = a1();
    let (p, phi) = fixtures::a1_loop(&alg, Q);
    let fp = f.object(&p).unwrap().value;
    let want = expect(&f, &[("e1", 1, "e1", 2, m(&[&[1]])), ("e1", 1, "x", 2, m(&[&[1]])), ("x", 1, "x", 2, m(&[&[1]]))]);
    assert_eq!(fp.blocks(), &want);
    let fphi = f.morphism(&phi).unwrap().value;
    let mut want: Vec<_> = [("e1", 1), ("x", 1), ("e1", 2), ("x", 2)].iter().map(|&(n, d)| (n, d, n, d, m(&[&[1]]))).collect();
    want.push(("e1", 1, "x", 1, m(&[&[1]])));
    want.push(("e1", 2, "x", 2, m(&[&[1]])));
    assert_eq!(fphi.blocks(), &expect(&f, &want));
}

#[test]
fn loop_example_dichotomy() {
    let (alg, f) = a1();
    let (p, phi) = fixtures::a1_loop(&alg, Q);
    let fphi = f.morphism(&phi).unwrap().value;
    let zero = BondMorphism::zero(fphi.source(), fphi.target()).unwrap();
    assert!(find_witness(&fphi, &zero, Variant::Kappa).unwrap().is_none());
    assert!(find_witness(&fphi, &zero, Variant::K).unwrap().is_some());
    let z = ChainMap::zero(&p, &p).unwrap();
    assert!(homotopy_witness(&phi, &z).unwrap().is_some());
    let d = f.check_homotopy_equiv(&phi).unwrap();
    assert!(d.homotopic);
    assert!(d.report.is_valid(), "{}", d.report);
}

#[test]
fn kronecker_image_is_the_four_point_triangle() {
    let alg = Arc::new(fixtures::algebra_a2());
    let f = Functor::new(alg.clone()).unwrap();
    let ex = fixtures::four_point_triangle();
    assert_eq!(f.poset().names(), ["e_s(a)", "a", "e_s(b)", "b"]);
    // ∂ = p(b) − p(a) reproduces B and T on the nose
    let (p, phi) = fixtures::a2_complex(&alg, Q, -1);
    assert!(phi.validate().is_valid());
    let fp = f.object(&p).unwrap().value;
    assert_eq!(fp.blocks(), ex.b.blocks());
    assert_eq!(fp.dims(), ex.b.dims());
    let fphi = f.morphism(&phi).unwrap().value;
    assert_eq!(fphi.blocks(), ex.t.blocks());
    let omega = cones::cone(&fphi).unwrap();
    assert_eq!(omega.blocks(), cones::cone(&ex.t).unwrap().blocks());
    // ∂ = p(a) − p(b) gives the same data with the object blocks negated
    let (p, phi) = fixtures::a2_complex(&alg, Q, 1);
    assert_eq!(f.object(&p).unwrap().value.blocks(), &ex.b.blocks().neg());
    assert_eq!(f.morphism(&phi).unwrap().value.blocks(), ex.t.blocks());
}

#[test]
fn stalk_image() {
    let alg = Arc::new(fixtures::algebra_a2());
    let f = Functor::new(alg.clone()).unwrap();
    let p = ProjComplex::stalk(alg, Q, 0, 0, 1).unwrap();
    let o = f.object(&p).unwrap().value;
    assert!(o.blocks().is_zero());
    assert_eq!(o.dim(f.poset().element("e_s(a)", 0).unwrap()), 1);
    assert_eq!(o.dim(f.poset().element("e_s(b)", 0).unwrap()), 1);
    assert_eq!(o.dims().total(), 2);
    let r = f.check_shift_compat(&p, None).unwrap();
    assert!(r.is_valid());
    let shifted = f.object(&p.shift(1).unwrap()).unwrap().value;
    assert_eq!(shifted.dim(f.poset().element("e_s(a)", -1).unwrap()), 1);
}

#[test]
fn shift_compat_on_examples() {
    let (alg, f) = a1();
    let (p, phi) = fixtures::a1_loop(&alg, Q);
    assert!(f.check_shift_compat(&p, Some(&phi)).unwrap().is_valid());
    let p = fixtures::a1_complex(&alg, Q);
    let phi = fixtures::a1_endomorphism(&p, [1, 2, 3, 4, 5, 6]);
    assert!(f.check_shift_compat(&p, Some(&phi)).unwrap().is_valid());
}

#[test]
fn functoriality() {
    let (alg, f) = a1();
    let p = fixtures::a1_complex(&alg, Q);
    let phi = fixtures::a1_endomorphism(&p, [1, 2, 3, 4, 5, 6]);
    let psi = fixtures::a1_endomorphism(&p, [0, 1, 2, 0, 1, 1]);
    let fphi = f.morphism(&phi).unwrap().value;
    let fpsi = f.morphism(&psi).unwrap().value;
    assert_eq!(f.morphism(&phi.compose(&psi).unwrap()).unwrap().value, fphi.compose(&fpsi).unwrap());
    assert_eq!(f.morphism(&phi.add(&psi).unwrap()).unwrap().value, fphi.add(&fpsi).unwrap());
    let id = f.morphism(&ChainMap::identity(&p)).unwrap().value;
    assert_eq!(id, BondMorphism::identity(id.source()));
    assert!(f.morphism(&ChainMap::zero(&p, &p).unwrap()).unwrap().value.is_zero());
    let s = Scalar::from_i64(Q, -3);
    assert_eq!(f.morphism(&phi.scale(&s)).unwrap().value, fphi.scale(&s));
}

#[test]
fn homotopy_decisions_agree_on_examples() {
    let (alg, f) = a1();
    let p = fixtures::a1_complex(&alg, Q);
    for params in [[0, 1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0], [0, 0, 1, 1, 1, 0], [1, 2, 3, 4, 5, 6]] {
        let phi = fixtures::a1_endomorphism(&p, params);
        let d = f.check_homotopy_equiv(&phi).unwrap();
        assert!(d.report.is_valid(), "{params:?}: {}", d.report);
    }
    let (c, _, _) = mapping_cone(&ChainMap::identity(&p)).unwrap();
    let c = Arc::new(c);
    let d = f.check_homotopy_equiv(&ChainMap::identity(&c)).unwrap();
    assert!(d.homotopic);
    assert!(d.report.is_valid(), "{}", d.report);
}

#[test]
fn witness_dictionary_round_trip() {
    let (alg, f) = a1();
    let p = fixtures::a1_complex(&alg, Q);
    let s = path_blocks(&alg, Q, &[("e1", &[&[1], &[2]]), ("x", &[&[0], &[5]])]);
    let h = HomotopyWitness::new(p.clone(), p.clone(), [(2, s)].into_iter().collect()).unwrap();
    let l = f.homotopy_to_witness(&h).unwrap();
    assert!(l.validate().is_valid(), "{}", l.validate());
    assert_eq!(f.witness_to_homotopy(&l, &p, &p).unwrap(), h);
}

#[test]
fn foreign_algebra_is_rejected() {
    let (_, f) = a1();
    let a2 = Arc::new(fixtures::algebra_a2());
    let p = ProjComplex::stalk(a2, Q, 0, 0, 1).unwrap();
    assert!(matches!(f.object(&p), Err(Error::Invalid(_))));
}
