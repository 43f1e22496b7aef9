//! Small hand-written instances used by tests, the CLI goldens and the
//! acceptance battery.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::category::{BlockMatrix, BondMorphism, BondObject, DimensionVector};
use crate::complexes::{ChainMap, Multiplicities, PathBlocks, ProjComplex};
use crate::gentle::{GentleAlgebra, Quiver};
use crate::poset::BasePoset;
use crate::scalar::{DenseMatrix, Field};

/// The four-point poset `u < a < v < b`, `σ(u) = v`, `σ(a) = b`, with a
/// rank-two object `B` and a morphism `T: B → ⟦B⟧`.
pub struct FourPoint {
    pub poset: Arc<BasePoset>,
    pub b: Arc<BondObject>,
    pub shifted_b: Arc<BondObject>,
    pub t: BondMorphism,
}

pub fn four_point_poset() -> Arc<BasePoset> {
    Arc::new(BasePoset::new(&["u", "a", "v", "b"], &[("u", "v"), ("a", "b")]).unwrap())
}

pub fn four_point_triangle() -> FourPoint {
    let q = Field::Rational;
    let poset = four_point_poset();
    let e = |n: &str, d: i64| poset.element(n, d).unwrap();
    let m = |x: i64| DenseMatrix::from_i64(q, &[&[x]]);

    let dims: DimensionVector = [(e("u", 1), 1), (e("v", 1), 1), (e("a", 2), 1), (e("b", 2), 1)]
        .into_iter()
        .collect();
    let blocks: BlockMatrix = [((e("u", 1), e("a", 2)), m(-1)), ((e("v", 1), e("b", 2)), m(1))]
        .into_iter()
        .collect();
    let b = Arc::new(BondObject::new(poset.clone(), q, dims, blocks).unwrap());
    let shifted_b = Arc::new(b.shift().unwrap());
    let t_blocks: BlockMatrix = [((e("u", 1), e("a", 1)), m(1)), ((e("v", 1), e("b", 1)), m(1))]
        .into_iter()
        .collect();
    let t = BondMorphism::new(b.clone(), shifted_b.clone(), t_blocks).unwrap();
    FourPoint { poset, b, shifted_b, t }
}

/// Loop `x` at 1, arrow `a: 1 → 2`, loop `y` at 2, with `x² = y² = 0`.
pub fn algebra_a1() -> GentleAlgebra {
    let q = Quiver::new(&["1", "2"], &[("x", "1", "1"), ("a", "1", "2"), ("y", "2", "2")]).unwrap();
    GentleAlgebra::new(q, &[("x", "x"), ("y", "y")], None).unwrap()
}

/// The Kronecker quiver `a, b: 1 → 2` without relations.
pub fn algebra_a2() -> GentleAlgebra {
    let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
    GentleAlgebra::new(q, &[], None).unwrap()
}

/// Named path blocks with integer entries.
pub fn path_blocks(alg: &GentleAlgebra, field: Field, blocks: &[(&str, &[&[i64]])]) -> PathBlocks {
    blocks.iter().map(|(w, m)| (alg.parse_path(w).unwrap(), DenseMatrix::from_i64(field, m))).collect()
}

fn mults(entries: &[(i64, &[(usize, usize)])]) -> Multiplicities {
    entries.iter().map(|(j, m)| (*j, m.iter().copied().collect())).collect()
}

/// Over `A1`: `P₁ → P₁² ⊕ P₂` in degrees 1, 2 with
/// `∂¹ = (2p(x), p(e₁), p(a) + 3p(ay) + 2p(xay))`.
pub fn a1_complex(alg: &Arc<GentleAlgebra>, field: Field) -> Arc<ProjComplex> {
    let d1 = path_blocks(alg, field, &[("e1", &[&[0, 1]]), ("x", &[&[2, 0]]), ("a", &[&[1]]), ("ay", &[&[3]]), ("xay", &[&[2]])]);
    let dims = mults(&[(1, &[(0, 1)]), (2, &[(0, 2), (1, 1)])]);
    Arc::new(ProjComplex::new(alg.clone(), field, dims, [(1, d1)].into_iter().collect()).unwrap())
}

/// The endomorphism family of [`a1_complex`] at `(α, β, γ, δ, ε, λ)`.
pub fn a1_endomorphism(p: &Arc<ProjComplex>, [al, be, ga, de, ep, la]: [i64; 6]) -> ChainMap {
    let (alg, f) = (p.algebra(), p.field());
    let phi1 = path_blocks(alg, f, &[("e1", &[&[be]]), ("x", &[&[la]])]);
    let phi2 = path_blocks(
        alg,
        f,
        &[
            ("e1", &[&[be, 0], &[0, be]]),
            ("e2", &[&[be]]),
            ("x", &[&[al, ga], &[0, la]]),
            ("xa", &[&[de], &[la]]),
            ("xay", &[&[ep], &[3 * la]]),
        ],
    );
    ChainMap::new(p.clone(), p.clone(), [(1, phi1), (2, phi2)].into_iter().collect()).unwrap()
}

/// Over `A1`: `P₁ → P₁` in degrees 1, 2 with `∂¹ = p(x) + p(e₁)`, and the
/// endomorphism `φ¹ = φ² = ∂¹`.
pub fn a1_loop(alg: &Arc<GentleAlgebra>, field: Field) -> (Arc<ProjComplex>, ChainMap) {
    let d = path_blocks(alg, field, &[("e1", &[&[1]]), ("x", &[&[1]])]);
    let dims = mults(&[(1, &[(0, 1)]), (2, &[(0, 1)])]);
    let p = Arc::new(ProjComplex::new(alg.clone(), field, dims, [(1, d.clone())].into_iter().collect()).unwrap());
    let phi = ChainMap::new(p.clone(), p.clone(), [(1, d.clone()), (2, d)].into_iter().collect()).unwrap();
    (p, phi)
}

/// Over `A2`: `P₁ → P₂` in degrees 1, 2 with `∂¹ = sign·(p(a) − p(b))`, and
/// `φ: P → P[1]` with `φ¹ = p(a) + p(b)`.
pub fn a2_complex(alg: &Arc<GentleAlgebra>, field: Field, sign: i64) -> (Arc<ProjComplex>, ChainMap) {
    let d = path_blocks(alg, field, &[("a", &[&[sign]]), ("b", &[&[-sign]])]);
    let dims = mults(&[(1, &[(0, 1)]), (2, &[(1, 1)])]);
    let p = Arc::new(ProjComplex::new(alg.clone(), field, dims, [(1, d)].into_iter().collect()).unwrap());
    let p1 = Arc::new(p.shift(1).unwrap());
    let phi1 = path_blocks(alg, field, &[("a", &[&[1]]), ("b", &[&[1]])]);
    let phi = ChainMap::new(p, p1, [(1, phi1)].into_iter().collect::<BTreeMap<_, _>>()).unwrap();
    (phi.source().clone(), phi)
}
