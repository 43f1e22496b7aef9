//! Homotopies and random chain maps as affine systems keyed by `(degree, path)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{check_pair, ChainMap, HomotopyWitness, PathBlocks, ProjComplex};
use crate::equiv::system::{Builder, Expr, Unknown};
use crate::error::Result;
use crate::gentle::Path;
use crate::scalar::Scalar;

type Key = (i64, Path);

fn degrees(p: &ProjComplex, q: &ProjComplex, q_offset: i64) -> Vec<i64> {
    match (p.degree_range(), q.degree_range()) {
        (Some((a, b)), Some((c, d))) => (a.max(c + q_offset)..=b.min(d + q_offset)).collect(),
        _ => Vec::new(),
    }
}

/// Unknown blocks `X_{w,j}: Pʲ → P̃ʲ⁻ᵒ`.
fn unknown(builder: &mut Builder, p: &ProjComplex, q: &ProjComplex, offset: i64) -> Unknown<Key> {
    let mut cells = Vec::new();
    for j in degrees(p, q, offset) {
        for w in p.algebra.paths() {
            cells.push(((j, w.clone()), p.dim(w.source(), j), q.dim(w.target(), j - offset)));
        }
    }
    builder.unknown(cells, |_| None)
}

/// `+= r·X∂̃ + l·∂X` where `X: Pʲ → P̃ʲ⁻ᵒ`.
fn add_boundary(
    e: &mut Expr<Key>,
    x: &Unknown<Key>,
    p: &ProjComplex,
    q: &ProjComplex,
    offset: i64,
    (r, l): (i64, i64),
) -> Result<()> {
    let alg = &p.algebra;
    let empty = PathBlocks::new();
    for ((j, w1), vb) in x.iter() {
        for (w2, a) in q.diff.get(&(j - offset)).unwrap_or(&empty) {
            if w2.source() == w1.target() {
                if let Some(w) = alg.path_mul(w1, w2)? {
                    e.add_right_block((*j, w), *vb, a, r);
                }
            }
        }
    }
    for (&j, m) in &p.diff {
        for (w1, a) in m {
            for w2 in alg.paths().iter().filter(|w2| w2.source() == w1.target()) {
                if let Some(vb) = x.get(&(j + 1, w2.clone())) {
                    if let Some(w) = alg.path_mul(w1, w2)? {
                        e.add_left_block((j, w), a, vb, l);
                    }
                }
            }
        }
    }
    Ok(())
}

fn add_map(e: &mut Expr<Key>, f: &ChainMap, sign: i64) {
    for (&j, m) in &f.blocks {
        for (w, b) in m {
            e.add_const_block((j, w.clone()), b, sign);
        }
    }
}

fn read(x: &Unknown<Key>, field: crate::scalar::Field, sol: &[Scalar]) -> BTreeMap<i64, PathBlocks> {
    let mut out: BTreeMap<i64, PathBlocks> = BTreeMap::new();
    for ((j, w), m) in x.values(field, sol) {
        out.entry(j).or_default().insert(w, m);
    }
    out
}

/// Searches for `s` with `φ − ψ = s∂̃ + ∂s`.
pub fn homotopy_witness(phi: &ChainMap, psi: &ChainMap) -> Result<Option<HomotopyWitness>> {
    phi.parallel(psi)?;
    let (p, q) = (&phi.source, &phi.target);
    let field = p.field;
    let mut builder = Builder::new(field);
    let s = unknown(&mut builder, p, q, 1);
    let mut e = Expr::new(field);
    add_map(&mut e, phi, 1);
    add_map(&mut e, psi, -1);
    add_boundary(&mut e, &s, p, q, 1, (-1, -1))?;
    builder.require_zero(&e, |_| true);
    match builder.solve() {
        Some(sol) => Ok(Some(HomotopyWitness::new(p.clone(), q.clone(), read(&s, field, &sol))?)),
        None => Ok(None),
    }
}

/// A chain map `P → P̃` with free parameters drawn from `free`.
pub fn random_chain_map(p: &Arc<ProjComplex>, q: &Arc<ProjComplex>, free: impl FnMut(usize) -> Scalar) -> Result<ChainMap> {
    check_pair(p, q)?;
    let field = p.field;
    let mut builder = Builder::new(field);
    let x = unknown(&mut builder, p, q, 0);
    let mut e = Expr::new(field);
    add_boundary(&mut e, &x, p, q, 0, (1, -1))?;
    builder.require_zero(&e, |_| true);
    let sol = builder.solve_with(free).expect("the zero map is a chain map");
    ChainMap::new(p.clone(), q.clone(), read(&x, field, &sol))
}

/// A random `s` and the null-homotopic chain map `s∂̃ + ∂s` it induces.
pub fn random_null_homotopic(
    p: &Arc<ProjComplex>,
    q: &Arc<ProjComplex>,
    mut free: impl FnMut(usize) -> Scalar,
) -> Result<(ChainMap, HomotopyWitness)> {
    check_pair(p, q)?;
    let field = p.field;
    let mut builder = Builder::new(field);
    let s = unknown(&mut builder, p, q, 1);
    let sol: Vec<Scalar> = (0..builder.vars()).map(&mut free).collect();
    let h = HomotopyWitness::new(p.clone(), q.clone(), read(&s, field, &sol))?;
    Ok((h.boundary()?, h))
}
