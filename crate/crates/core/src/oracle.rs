//! Independent reference computations used to cross-check the solvers.
//!
//! Nothing here goes through the affine-system builder: complexes are
//! flattened to k-linear maps on path bases, block matrices to dense
//! matrices, and GF(2) witnesses are found by enumeration.

use std::collections::BTreeMap;

use crate::category::{BlockMatrix, BondMorphism, BondObject};
use crate::complexes::{ChainMap, HomotopyWitness, PathBlocks, ProjComplex};
use crate::equiv::Variant;
use crate::gentle::{GentleAlgebra, Path};
use crate::poset::GradedElement;
use crate::scalar::{DenseMatrix, Field, Scalar};

/// Basis of `P_v` as a vector space: nonzero paths ending at `v`.
fn basis(alg: &GentleAlgebra, v: usize) -> Vec<&Path> {
    alg.paths().iter().filter(|u| u.target() == v).collect()
}

/// Offsets of the summands `(v, copy)` of `⊕_v P_v^{d_v}` in the flat basis.
fn offsets(alg: &GentleAlgebra, dims: &BTreeMap<usize, usize>) -> (BTreeMap<usize, usize>, usize) {
    let mut out = BTreeMap::new();
    let mut at = 0;
    for (&v, &d) in dims {
        out.insert(v, at);
        at += d * basis(alg, v).len();
    }
    (out, at)
}

/// The k-linear matrix of `Σ p(w)·M_w` acting on row vectors, where `p(w)`
/// sends a path `u` to `u·w`.
pub fn flatten_map(
    alg: &GentleAlgebra,
    field: Field,
    source: &BTreeMap<usize, usize>,
    target: &BTreeMap<usize, usize>,
    blocks: &PathBlocks,
) -> DenseMatrix {
    let (so, rows) = offsets(alg, source);
    let (to, cols) = offsets(alg, target);
    let mut out = DenseMatrix::zeros(field, rows, cols);
    for (w, m) in blocks {
        let (s, t) = (w.source(), w.target());
        let (bs, bt) = (basis(alg, s), basis(alg, t));
        for (ui, u) in bs.iter().enumerate() {
            let Some(uw) = alg.path_mul(u, w).expect("u ends where w starts") else { continue };
            let pi = bt.iter().position(|p| **p == uw).expect("nonzero path is a basis element");
            for i in 0..m.rows() {
                for k in 0..m.cols() {
                    let c = m.get(i, k);
                    if c.is_zero() {
                        continue;
                    }
                    let (r, col) = (so[&s] + i * bs.len() + ui, to[&t] + k * bt.len() + pi);
                    let old = out.get(r, col);
                    out.set(r, col, &(&old + &c));
                }
            }
        }
    }
    out
}

fn at(p: &ProjComplex, j: i64) -> BTreeMap<usize, usize> {
    p.dims().get(&j).cloned().unwrap_or_default()
}

fn flat_diff(p: &ProjComplex, j: i64) -> DenseMatrix {
    let empty = PathBlocks::new();
    flatten_map(p.algebra(), p.field(), &at(p, j), &at(p, j + 1), p.differential(j).unwrap_or(&empty))
}

fn flat_blocks(p: &ProjComplex, q: &ProjComplex, blocks: &BTreeMap<i64, PathBlocks>, j: i64, offset: i64) -> DenseMatrix {
    let empty = PathBlocks::new();
    flatten_map(p.algebra(), p.field(), &at(p, j), &at(q, j - offset), blocks.get(&j).unwrap_or(&empty))
}

fn span(p: &ProjComplex, q: &ProjComplex) -> std::ops::RangeInclusive<i64> {
    let lo = [p.degree_range(), q.degree_range()].into_iter().flatten().map(|r| r.0).min().unwrap_or(0);
    let hi = [p.degree_range(), q.degree_range()].into_iter().flatten().map(|r| r.1).max().unwrap_or(0);
    lo - 1..=hi + 1
}

/// `∂ʲ∂ʲ⁺¹ = 0` on the flattened complex.
pub fn complex_squares_to_zero(p: &ProjComplex) -> bool {
    span(p, p).all(|j| flat_diff(p, j).try_mul(&flat_diff(p, j + 1)).unwrap().is_zero())
}

/// `φʲ∂̃ʲ = ∂ʲφʲ⁺¹` on the flattened complexes.
pub fn chain_map_commutes(f: &ChainMap) -> bool {
    let (p, q) = (f.source(), f.target());
    span(p, q).all(|j| {
        let l = flat_blocks(p, q, f.blocks(), j, 0).try_mul(&flat_diff(q, j)).unwrap();
        let r = flat_diff(p, j).try_mul(&flat_blocks(p, q, f.blocks(), j + 1, 0)).unwrap();
        l == r
    })
}

/// `φʲ − ψʲ = sʲ∂̃ʲ⁻¹ + ∂ʲsʲ⁺¹` on the flattened complexes.
pub fn homotopy_holds(phi: &ChainMap, psi: &ChainMap, s: &HomotopyWitness) -> bool {
    let (p, q) = (phi.source(), phi.target());
    span(p, q).all(|j| {
        let lhs = flat_blocks(p, q, phi.blocks(), j, 0).try_sub(&flat_blocks(p, q, psi.blocks(), j, 0)).unwrap();
        let a = flat_blocks(p, q, s.blocks(), j, 1).try_mul(&flat_diff(q, j - 1)).unwrap();
        let b = flat_diff(p, j).try_mul(&flat_blocks(p, q, s.blocks(), j + 1, 1)).unwrap();
        lhs == a.try_add(&b).unwrap()
    })
}

/// Dense layout of the support of an object.
struct Flat {
    offsets: BTreeMap<GradedElement, usize>,
    total: usize,
}

impl Flat {
    fn new(b: &BondObject) -> Flat {
        let mut offsets = BTreeMap::new();
        let mut total = 0;
        for x in b.support() {
            offsets.insert(x, total);
            total += b.dim(x);
        }
        Flat { offsets, total }
    }
}

fn dense(field: Field, rows: &Flat, cols: &Flat, m: &BlockMatrix) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(field, rows.total, cols.total);
    for (&(x, y), b) in m.iter() {
        out.add_block(rows.offsets[&x], cols.offsets[&y], b);
    }
    out
}

/// Decides `S ≃ T` (K) or `S ≡ T` (κ) over GF(2) by trying every witness.
/// Returns `None` when the witness has more than `max_unknowns` free entries.
pub fn brute_force_witness(s: &BondMorphism, t: &BondMorphism, variant: Variant, max_unknowns: usize) -> Option<bool> {
    let (b, c) = (s.source(), s.target());
    let field = b.field();
    assert_eq!(field, Field::Prime(2), "the enumeration oracle runs over GF(2)");
    let poset = b.poset();
    let (fb, fc) = (Flat::new(b), Flat::new(c));
    let allowed = |x: GradedElement, y: GradedElement| match variant {
        Variant::K => x.degree <= y.degree || (x.degree == y.degree + 1 && x.base <= y.base),
        Variant::Kappa => x.degree < y.degree || (x.degree == y.degree && x.base <= y.base),
    };
    let step = if variant == Variant::K { 1 } else { 0 };
    // each entry of L is a variable index; tied blocks share indices
    let mut owner: BTreeMap<(GradedElement, GradedElement), usize> = BTreeMap::new();
    let mut cells: Vec<(GradedElement, GradedElement, usize)> = Vec::new();
    let mut n = 0;
    for x in b.support() {
        for y in c.support() {
            if !allowed(x, y) {
                continue;
            }
            let tied = x.base == y.base && poset.sigma(x.base) != x.base && x.degree - y.degree == step;
            let partner = (poset.involution(x), poset.involution(y));
            let base = match owner.get(&partner) {
                Some(&o) if tied => o,
                _ => {
                    let o = n;
                    n += b.dim(x) * c.dim(y);
                    o
                }
            };
            owner.insert((x, y), base);
            cells.push((x, y, base));
        }
    }
    if n > max_unknowns {
        return None;
    }
    let target = dense(field, &fb, &fc, s.blocks()).try_sub(&dense(field, &fb, &fc, t.blocks())).unwrap();
    let bd = dense(field, &fb, &fb, b.blocks());
    let cd = dense(field, &fc, &fc, c.blocks());
    let one = Scalar::one(field);
    for mask in 0u64..(1u64 << n) {
        let mut l = DenseMatrix::zeros(field, fb.total, fc.total);
        for &(x, y, base) in &cells {
            let cols = c.dim(y);
            for i in 0..b.dim(x) {
                for k in 0..cols {
                    if mask >> (base + i * cols + k) & 1 == 1 {
                        l.set(fb.offsets[&x] + i, fc.offsets[&y] + k, &one);
                    }
                }
            }
        }
        let rhs = bd.try_mul(&l).unwrap().try_add(&l.try_mul(&cd).unwrap()).unwrap();
        if rhs == target {
            return Some(true);
        }
    }
    Some(false)
}
