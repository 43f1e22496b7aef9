use std::sync::Arc;

use super::*;
use crate::equiv::{find_witness, is_iso_in_quotient};
use crate::fixtures;
use crate::scalar::{DenseMatrix, Field, Scalar};

const Q: Field = Field::Rational;

fn certifies(s: &BondMorphism, t: &BondMorphism, l: &KMatrixWitness) {
    let r = check_witness(s, t, l).unwrap();
    assert!(r.is_valid(), "{r}");
}

fn valid(m: &BondMorphism) {
    let r = m.validate();
    assert!(r.is_valid(), "{r}");
}

#[test]
fn printed_cone() {
    let ex = fixtures::four_point_triangle();
    let p = &ex.poset;
    let e = |n: &str, d: i64| p.element(n, d).unwrap();
    let omega = cone(&ex.t).unwrap();
    assert!(omega.validate().is_valid());
    for (n, d) in [("u", 0), ("v", 0), ("a", 1), ("b", 1)] {
        assert_eq!(omega.dim(e(n, d)), 2);
    }
    assert_eq!(omega.dims().total(), 8);
    assert_eq!(omega.blocks().len(), 2);
    assert_eq!(omega.block(e("u", 0), e("a", 1)), Some(&DenseMatrix::from_i64(Q, &[&[1, 1], &[0, 1]])));
    assert_eq!(omega.block(e("v", 0), e("b", 1)), Some(&DenseMatrix::from_i64(Q, &[&[-1, 1], &[0, -1]])));
}

#[test]
fn printed_inclusion_and_projection() {
    let ex = fixtures::four_point_triangle();
    let iota = inclusion(&ex.t).unwrap();
    let pi = projection(&ex.t).unwrap();
    valid(&iota);
    valid(&pi);
    let in_c = DenseMatrix::from_i64(Q, &[&[0, 1]]);
    let out_b = DenseMatrix::from_i64(Q, &[&[1], &[0]]);
    assert_eq!(iota.blocks().len(), 4);
    for (&(x, y), m) in iota.blocks().iter() {
        assert_eq!(x, y);
        assert_eq!(m, &in_c);
    }
    assert_eq!(pi.blocks().len(), 4);
    for (&(x, y), m) in pi.blocks().iter() {
        assert_eq!(x, y);
        assert_eq!(m, &out_b);
    }
    assert!(iota.compose(&pi).unwrap().is_zero());
}

#[test]
fn cone_of_zero_morphism_has_no_mixing() {
    let ex = fixtures::four_point_triangle();
    let z = BondMorphism::zero(&ex.b, &ex.shifted_b).unwrap();
    let omega = cone(&z).unwrap();
    let sum = ex.shifted_b.direct_sum(&ex.shifted_b).unwrap();
    assert_eq!(omega.dims(), sum.dims());
    assert_eq!(omega, sum);
}

#[test]
fn standard_triangles_validate() {
    let ex = fixtures::four_point_triangle();
    let tri = standard_triangle(&ex.t).unwrap();
    assert!(tri.validate().is_valid(), "{}", tri.validate());
    // consecutive maps: T·ι ≃ 0 and ι·π = 0
    let ti = ex.t.compose(&tri.v).unwrap();
    let zero = BondMorphism::zero(ti.source(), ti.target()).unwrap();
    let w = find_witness(&ti, &zero, Variant::K).unwrap().expect("T·ι ≃ 0");
    certifies(&ti, &zero, &w);

    let o = Arc::new(BondObject::zero(ex.poset.clone(), Q));
    let tri0 = standard_triangle(&BondMorphism::identity(&o)).unwrap();
    assert!(tri0.validate().is_valid());
    assert!(tri0.z.is_zero_object());
}

#[test]
fn rotation_on_printed_data() {
    let ex = fixtures::four_point_triangle();
    let rot = rotation_witnesses(&ex.t).unwrap();
    valid(&rot.r);
    valid(&rot.s);
    let rs = rot.r.compose(&rot.s).unwrap();
    assert_eq!(rs, BondMorphism::identity(rot.r.source()));
    assert_eq!(rs.blocks().len(), 4);

    let pi_c = rot.standard.w.clone();
    let st = rot.s.compose(&ex.t.shift().unwrap()).unwrap().neg();
    certifies(&pi_c, &st, &rot.l_comm);

    let id = BondMorphism::identity(&rot.standard.z);
    let sr = rot.s.compose(&rot.r).unwrap();
    certifies(&id, &sr, &rot.l_inv);
    assert!(rot.rotated.validate().is_valid(), "{}", rot.rotated.validate());
    // ι_{Ω_T}·S is the projection of Ω_T
    assert_eq!(rot.standard.v.compose(&rot.s).unwrap(), rot.rotated.v);
}

#[test]
fn rotation_of_zero_morphism() {
    let ex = fixtures::four_point_triangle();
    let z = BondMorphism::zero(&ex.b, &ex.shifted_b).unwrap();
    let rot = rotation_witnesses(&z).unwrap();
    assert_eq!(rot.r.compose(&rot.s).unwrap(), BondMorphism::identity(rot.r.source()));
}

#[test]
fn fill_in_with_identities() {
    let ex = fixtures::four_point_triangle();
    let (f, g) = (BondMorphism::identity(&ex.b), BondMorphism::identity(&ex.shifted_b));
    let l = KMatrixWitness::zero(Variant::K, &ex.b, &ex.shifted_b);
    let h = tr3_fill(&ex.t, &ex.t, &f, &g, &l).unwrap();
    assert_eq!(h, BondMorphism::identity(h.source()));

    let bad = g.neg();
    assert!(matches!(tr3_fill(&ex.t, &ex.t, &f, &bad, &l), Err(Error::WitnessInvalid(_))));
}

#[test]
fn fill_in_with_null_perturbation() {
    // F = Id, T2 = T + N with N ≃ 0, G = Id: the square commutes up to N.
    let ex = fixtures::four_point_triangle();
    let (n, l) = crate::equiv::random_null_morphism(&ex.b, &ex.shifted_b, |i| Scalar::from_i64(Q, (i as i64 % 3) - 1)).unwrap();
    valid(&n);
    let t2 = ex.t.add(&n).unwrap();
    let (f, g) = (BondMorphism::identity(&ex.b), BondMorphism::identity(&ex.shifted_b));
    let h = tr3_fill(&ex.t, &t2, &f, &g, &l).unwrap();
    valid(&h);
    let i1 = inclusion(&ex.t).unwrap();
    let i2 = inclusion(&t2).unwrap();
    assert_eq!(g.compose(&i2).unwrap(), i1.compose(&h).unwrap());
    let p1 = projection(&ex.t).unwrap();
    let p2 = projection(&t2).unwrap();
    assert_eq!(p1.compose(&f.shift().unwrap()).unwrap(), h.compose(&p2).unwrap());
}

fn check_octahedron(s: &BondMorphism, t: &BondMorphism) {
    let oct = octahedron(s, t).unwrap();
    for m in [&oct.f, &oct.g, &oct.lambda, &oct.lambda_inverse] {
        valid(m);
    }
    let iota_st = inclusion(&oct.f).unwrap();
    assert!(same_object(iota_st.target(), &oct.omega_f));
    let g_lambda = oct.g.compose(&oct.lambda).unwrap();
    let iota_st_direct = inclusion_into(&oct.f, &oct.omega_f).unwrap();
    certifies(&iota_st_direct, &g_lambda, &oct.l_rot);

    let pi_f = projection(&oct.f).unwrap();
    let pi_c = projection(t).unwrap();
    let shifted_iota = inclusion(s).unwrap().shift().unwrap();
    assert_eq!(oct.lambda.compose(&pi_f).unwrap().blocks(), pi_c.compose(&shifted_iota).unwrap().blocks());

    let ll = oct.lambda.compose(&oct.lambda_inverse).unwrap();
    assert_eq!(ll, BondMorphism::identity(&oct.omega_t));
    let id_f = BondMorphism::identity(&oct.omega_f);
    let back = oct.lambda_inverse.compose(&oct.lambda).unwrap();
    certifies(&id_f, &back, &oct.l_comm);

    let cert = is_iso_in_quotient(&oct.lambda).unwrap().expect("Λ is invertible in the quotient");
    valid(&cert.inverse);
}

#[test]
fn octahedron_on_printed_data() {
    let ex = fixtures::four_point_triangle();
    let iota = inclusion(&ex.t).unwrap();
    check_octahedron(&ex.t, &iota);
    let id = BondMorphism::identity(&ex.b);
    check_octahedron(&id, &id);
    assert!(matches!(octahedron(&ex.t, &ex.t), Err(Error::ComposeMismatch)));
}

#[test]
fn cone_of_identity_is_contractible() {
    let ex = fixtures::four_point_triangle();
    let (omega, l) = omega_identity_witness(&ex.b).unwrap();
    assert!(omega.validate().is_valid());
    let id = BondMorphism::identity(&omega);
    let zero = BondMorphism::zero(&omega, &omega).unwrap();
    certifies(&id, &zero, &l);
    let found = find_witness(&id, &zero, Variant::K).unwrap().expect("Ω_Id ≅ 0");
    certifies(&id, &zero, &found);
    let o = Arc::new(BondObject::zero(ex.poset.clone(), Q));
    let to_zero = BondMorphism::zero(&omega, &o).unwrap();
    assert!(is_iso_in_quotient(&to_zero).unwrap().is_some());
}

#[test]
fn cone_commutes_with_shift_up_to_sign_twist() {
    // ⟦B⟧ negates and ⟦T⟧ does not, so the T-blocks of Ω_{⟦T⟧} and ⟦Ω_T⟧
    // differ by a sign; diag(−Id, Id) is an exact isomorphism between them.
    let ex = fixtures::four_point_triangle();
    let st = ex.t.shift().unwrap();
    let a = Arc::new(cone(&st).unwrap());
    let b = Arc::new(cone(&ex.t).unwrap().shift().unwrap());
    assert_eq!(a.dims(), b.dims());
    assert_ne!(a.blocks(), b.blocks());
    let l = cone_layout(&st);
    let (id_b, id_c) = (st.source().identity_blocks(), st.target().identity_blocks());
    let j = assemble(Q, &l, &l, &[entry(0, 0, &id_b, -1), entry(1, 1, &id_c, 1)]).unwrap();
    let j = BondMorphism::new(a.clone(), b.clone(), j).unwrap();
    valid(&j);
    let back = BondMorphism::new(b.clone(), a.clone(), j.blocks().clone()).unwrap();
    valid(&back);
    assert_eq!(j.compose(&back).unwrap(), BondMorphism::identity(&a));
}

#[test]
fn assemble_places_signed_blocks() {
    let ex = fixtures::four_point_triangle();
    let l = Layout::new(&[(&ex.b, 0), (&ex.b, 0)]);
    let id = ex.b.identity_blocks();
    let m = assemble(Q, &l, &l, &[entry(0, 1, &id, -1)]).unwrap();
    let want = DenseMatrix::from_i64(Q, &[&[0, -1], &[0, 0]]);
    assert!(m.iter().all(|(_, b)| b == &want));
    assert_eq!(m.len(), 4);
    assert_eq!(l.dims().unwrap().total(), 8);
}
