use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::fixtures;

fn names(alg: &GentleAlgebra, ps: &[Path]) -> Vec<String> {
    ps.iter().map(|p| alg.path_name(p)).collect()
}

#[test]
fn a1_paths() {
    let a1 = fixtures::algebra_a1();
    assert_eq!(names(&a1, a1.paths()), ["e1", "e2", "x", "a", "y", "xa", "ay", "xay"]);
    assert_eq!(names(&a1, a1.maximal_paths()), ["xay"]);
}

#[test]
fn a2_paths() {
    let a2 = fixtures::algebra_a2();
    assert_eq!(names(&a2, a2.paths()), ["e1", "e2", "a", "b"]);
    assert_eq!(names(&a2, a2.maximal_paths()), ["a", "b"]);
}

#[test]
fn free_loop_is_infinite() {
    let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
    let err = GentleAlgebra::new(q, &[] as &[(&str, &str)], None).unwrap_err();
    assert!(matches!(err, Error::NotFiniteDimensional(_)));
}

#[test]
fn single_vertex() {
    let q = Quiver::new(&["1"], &[] as &[(&str, &str, &str)]).unwrap();
    let alg = GentleAlgebra::new(q, &[] as &[(&str, &str)], None).unwrap();
    assert_eq!(names(&alg, alg.paths()), ["e1"]);
    assert_eq!(names(&alg, alg.maximal_paths()), ["e1"]);
    let y = alg.algebra_poset().unwrap();
    assert_eq!(y.poset().names(), ["e1"]);
    assert_eq!(y.poset().sigma(0), 0);
}

#[test]
fn non_gentle_inputs() {
    let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2"), ("c", "1", "2")]).unwrap();
    assert!(matches!(GentleAlgebra::new(q, &[] as &[(&str, &str)], None), Err(Error::Invalid(_))));
    let q = Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "2", "3")]).unwrap();
    let rel: BTreeSet<(usize, usize)> = BTreeSet::new();
    let r = validate_gentle(&q, &rel).unwrap();
    assert!(r.has(Condition::NonRelationBranching));
    let rel: BTreeSet<(usize, usize)> = [(0, 1), (0, 2)].into_iter().collect();
    let r = validate_gentle(&q, &rel).unwrap();
    assert!(r.has(Condition::RelationBranching));
    let rel: BTreeSet<(usize, usize)> = [(1, 0)].into_iter().collect();
    assert!(validate_gentle(&q, &rel).unwrap().has(Condition::RelationLength));
    assert!(Quiver::new(&["1"], &[("a", "1", "9")]).is_err());
}

#[test]
fn path_multiplication() {
    let a1 = fixtures::algebra_a1();
    let p = |s: &str| a1.parse_path(s).unwrap();
    assert_eq!(a1.path_mul(&p("x"), &p("a")).unwrap(), Some(p("xa")));
    assert_eq!(a1.path_mul(&p("x"), &p("x")).unwrap(), None);
    assert_eq!(a1.path_mul(&p("e1"), &p("x")).unwrap(), Some(p("x")));
    assert_eq!(a1.path_mul(&p("xa"), &p("y")).unwrap(), Some(p("xay")));
    assert!(matches!(a1.path_mul(&p("a"), &p("x")), Err(Error::EndpointMismatch(_))));
    let d = a1.decompositions(&p("xay"));
    assert_eq!(d.len(), 4);
    assert_eq!((a1.path_name(&d[0].0), a1.path_name(&d[0].1)), ("e1".into(), "xay".into()));
    assert_eq!((a1.path_name(&d[3].0), a1.path_name(&d[3].1)), ("xay".into(), "e2".into()));
    assert_eq!(a1.embedding(&p("ay")), Some((0, 1)));
}

#[test]
fn a1_poset() {
    let a1 = fixtures::algebra_a1();
    let y = a1.algebra_poset().unwrap();
    let p = y.poset();
    assert_eq!(p.names(), ["e1", "x", "xa", "xay"]);
    assert_eq!(p.sigma(0), 1);
    assert_eq!(p.sigma(2), 3);
    assert_eq!(y.copies(0).collect::<Vec<_>>(), [0, 1]);
    assert_eq!(y.coords(2), (0, 2));
    assert_eq!(y.base(0, 3), Some(3));
}

#[test]
fn a2_poset() {
    let a2 = fixtures::algebra_a2();
    let y = a2.algebra_poset().unwrap();
    let p = y.poset();
    assert_eq!(p.names(), ["e_s(a)", "a", "e_s(b)", "b"]);
    assert_eq!(p.sigma(0), 2);
    assert_eq!(p.sigma(1), 3);
}

#[test]
fn declared_maximal_order() {
    let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
    let alg = GentleAlgebra::new(q.clone(), &[] as &[(&str, &str)], Some(&["b", "a"][..])).unwrap();
    assert_eq!(names(&alg, alg.maximal_paths()), ["b", "a"]);
    assert!(GentleAlgebra::new(q.clone(), &[] as &[(&str, &str)], Some(&["b"][..])).is_err());
    assert!(GentleAlgebra::new(q, &[] as &[(&str, &str)], Some(&["a", "e1"][..])).is_err());
}

/// Random quivers on up to three vertices with random relations.
fn quivers() -> impl Strategy<Value = (Quiver, Vec<(String, String)>)> {
    (1usize..=3)
        .prop_flat_map(|nv| (Just(nv), prop::collection::vec((0..nv, 0..nv), 0..5)))
        .prop_flat_map(|(nv, arrows)| {
            let na = arrows.len();
            let rels = prop::collection::vec((0..na.max(1), 0..na.max(1)), 0..4);
            (Just(nv), Just(arrows), rels)
        })
        .prop_map(|(nv, arrows, rels)| {
            let vs: Vec<String> = (1..=nv).map(|v| v.to_string()).collect();
            let names: Vec<String> = (0..arrows.len()).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
            let arrows: Vec<(String, String, String)> =
                arrows.iter().enumerate().map(|(i, &(s, t))| (names[i].clone(), vs[s].clone(), vs[t].clone())).collect();
            let q = Quiver::new(&vs, &arrows).unwrap();
            let rels = rels
                .into_iter()
                .filter(|&(a, b)| a < arrows.len() && b < arrows.len() && arrows[a].1 == arrows[b].0)
                .map(|(a, b)| (names[a].clone(), names[b].clone()))
                .collect();
            (q, rels)
        })
}

proptest! {
    #[test]
    fn gentle_invariants((q, rels) in quivers()) {
        let rels: Vec<(&str, &str)> = rels.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let alg = GentleAlgebra::new(q, &rels, None);
        prop_assume!(alg.is_ok());
        let alg = alg.unwrap();
        for p in alg.paths() {
            if !p.is_trivial() {
                let (m, s) = alg.embedding(p).expect("embeds");
                prop_assert_eq!(&alg.maximal_paths()[m].subpath(alg.quiver(), s, s + p.len()), p);
            }
            let e = Path::trivial(p.source());
            prop_assert_eq!(alg.path_mul(&e, p).unwrap(), Some(p.clone()));
            let f = Path::trivial(p.target());
            prop_assert_eq!(alg.path_mul(p, &f).unwrap(), Some(p.clone()));
        }
        for a in alg.paths() {
            for b in alg.paths().iter().filter(|b| b.source() == a.target()) {
                for c in alg.paths().iter().filter(|c| c.source() == b.target()) {
                    let ab = alg.path_mul(a, b).unwrap();
                    let bc = alg.path_mul(b, c).unwrap();
                    let left = match ab { Some(ab) => alg.path_mul(&ab, c).unwrap(), None => None };
                    let right = match bc { Some(bc) => alg.path_mul(a, &bc).unwrap(), None => None };
                    prop_assert_eq!(left, right);
                }
            }
        }
        let y = alg.algebra_poset().unwrap();
        for i in 0..y.len() {
            let j = y.poset().sigma(i);
            prop_assert_eq!(y.target(i), y.target(j));
            prop_assert!(y.copies(y.target(i)).count() <= 2);
        }
    }
}
