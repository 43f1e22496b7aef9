//! The functor `𝐅` from complexes of projectives over a gentle algebra to
//! block matrices over its algebra poset.
//!
//! A block `A_{w,i}` lands at `([m,s], i) → ([m,s+len(w)], i+1)`, where
//! `w` sits at position `s` of the maximal path `m`. A trivial path `e_r`
//! lands on the diagonal at every poset element with target `r`. Chain
//! maps are placed without the degree step, homotopies with a step down.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::category::{BlockMatrix, BondMorphism, BondObject, DimensionVector};
use crate::complexes::{homotopy_witness, mapping_cone, ChainMap, HomotopyWitness, PathBlocks, ProjComplex};
use crate::cones;
use crate::equiv::{check_witness, find_witness, KMatrixWitness, Variant};
use crate::error::{Error, Result};
use crate::gentle::{AlgebraPoset, GentleAlgebra, Path};
use crate::poset::{BasePoset, GradedElement};
use crate::report::{Condition, Report};

/// Which `(path, degree)` block produced the block at `(row, col)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placed {
    pub path: Path,
    pub degree: i64,
    pub row: GradedElement,
    pub col: GradedElement,
}

#[derive(Clone, Debug)]
pub struct Image<T> {
    pub value: T,
    pub placement: Vec<Placed>,
}

/// Outcome of comparing the homotopy and K-matrix decisions for `φ ∼ 0`.
#[derive(Clone, Debug)]
pub struct HomotopyDecision {
    pub homotopic: bool,
    pub homotopy: Option<HomotopyWitness>,
    pub witness: Option<KMatrixWitness>,
    /// Failures of the translated witnesses; empty when both translate.
    pub report: Report,
}

#[derive(Clone, Debug)]
pub struct Functor {
    algebra: Arc<GentleAlgebra>,
    poset: AlgebraPoset,
}

impl Functor {
    pub fn new(algebra: Arc<GentleAlgebra>) -> Result<Functor> {
        let poset = algebra.algebra_poset()?;
        Ok(Functor { algebra, poset })
    }

    pub fn algebra(&self) -> &Arc<GentleAlgebra> {
        &self.algebra
    }

    pub fn algebra_poset(&self) -> &AlgebraPoset {
        &self.poset
    }

    pub fn poset(&self) -> &Arc<BasePoset> {
        self.poset.poset()
    }

    fn check(&self, p: &ProjComplex) -> Result<()> {
        if Arc::ptr_eq(p.algebra(), &self.algebra) || **p.algebra() == *self.algebra {
            Ok(())
        } else {
            Err(Error::Invalid("complex lives over a different algebra".into()))
        }
    }

    /// Base elements `(row, col)` receiving the blocks of `w`.
    pub fn positions(&self, w: &Path) -> Vec<(usize, usize)> {
        if w.is_trivial() {
            return self.poset.copies(w.source()).map(|b| (b, b)).collect();
        }
        let (m, s) = self.algebra.embedding(w).expect("nonzero paths embed in a maximal path");
        let base = |l| self.poset.base(m, l).expect("prefix of a maximal path");
        vec![(base(s), base(s + w.len()))]
    }

    fn place(&self, blocks: &BTreeMap<i64, PathBlocks>, step: i64) -> Result<(BlockMatrix, Vec<Placed>)> {
        let mut out = BlockMatrix::new();
        let mut placement = Vec::new();
        for (&j, m) in blocks {
            let to = j.checked_add(step).ok_or(Error::DegreeOverflow)?;
            for (w, b) in m {
                for (rb, cb) in self.positions(w) {
                    let (row, col) = (GradedElement::new(rb, j), GradedElement::new(cb, to));
                    out.add_at(row, col, b)?;
                    placement.push(Placed { path: w.clone(), degree: j, row, col });
                }
            }
        }
        Ok((out, placement))
    }

    /// Band `([m,ℓ], i)` has size `d_{t(m,ℓ), i}`.
    pub fn dims(&self, p: &ProjComplex) -> DimensionVector {
        let mut d = DimensionVector::new();
        for (&j, m) in p.dims() {
            for (&v, &n) in m {
                for b in self.poset.copies(v) {
                    d.set(GradedElement::new(b, j), n);
                }
            }
        }
        d
    }

    pub fn object(&self, p: &ProjComplex) -> Result<Image<BondObject>> {
        self.check(p)?;
        let (blocks, placement) = self.place(p.differentials(), 1)?;
        let value = BondObject::new(self.poset().clone(), p.field(), self.dims(p), blocks)?;
        Ok(Image { value, placement })
    }

    pub fn morphism(&self, f: &ChainMap) -> Result<Image<BondMorphism>> {
        let source = Arc::new(self.object(f.source())?.value);
        let target = Arc::new(self.object(f.target())?.value);
        let (blocks, placement) = self.place(f.blocks(), 0)?;
        let value = BondMorphism::new(source, target, blocks)?;
        Ok(Image { value, placement })
    }

    /// `𝒮^{[uw,i−1]}_{[u,i]} = S_{w,i}`, trivial paths on every copy.
    pub fn homotopy_to_witness(&self, s: &HomotopyWitness) -> Result<KMatrixWitness> {
        let source = Arc::new(self.object(s.source())?.value);
        let target = Arc::new(self.object(s.target())?.value);
        let (blocks, _) = self.place(s.blocks(), -1)?;
        KMatrixWitness::new(Variant::K, source, target, blocks)
    }

    /// Reads `S_{w,i}` off the position of `w`; for trivial paths any copy
    /// serves since the K-tie forces the copies to agree.
    pub fn witness_to_homotopy(
        &self,
        l: &KMatrixWitness,
        source: &Arc<ProjComplex>,
        target: &Arc<ProjComplex>,
    ) -> Result<HomotopyWitness> {
        self.check(source)?;
        let mut out: BTreeMap<i64, PathBlocks> = BTreeMap::new();
        for &j in source.dims().keys() {
            for w in self.algebra.paths() {
                if source.dim(w.source(), j) == 0 || target.dim(w.target(), j - 1) == 0 {
                    continue;
                }
                let (rb, cb) = self.positions(w)[0];
                if let Some(b) = l.blocks().get(GradedElement::new(rb, j), GradedElement::new(cb, j - 1)) {
                    out.entry(j).or_default().insert(w.clone(), b.clone());
                }
            }
        }
        HomotopyWitness::new(source.clone(), target.clone(), out)
    }

    /// `𝐅(C(φ)) = Ω_{𝐅(φ)}`, `𝐅(ι) = ι` and `𝐅(π) = π`, exactly.
    pub fn check_cone_compat(&self, phi: &ChainMap) -> Result<Report> {
        let (c, iota, pi) = mapping_cone(phi)?;
        let f = self.morphism(phi)?.value;
        let mut r = Report::new();
        if self.object(&c)?.value != cones::cone(&f)? {
            r.push(Condition::Compatibility, "F(C(phi)) vs cone(F(phi))");
        }
        if self.morphism(&iota)?.value != cones::inclusion(&f)? {
            r.push(Condition::Compatibility, "F(iota) vs inclusion(F(phi))");
        }
        if self.morphism(&pi)?.value != cones::projection(&f)? {
            r.push(Condition::Compatibility, "F(pi) vs projection(F(phi))");
        }
        Ok(r)
    }

    /// `𝐅(P[1]) = ⟦𝐅(P)⟧` and, if given, `𝐅(φ[1]) = ⟦𝐅(φ)⟧`, exactly.
    pub fn check_shift_compat(&self, p: &ProjComplex, phi: Option<&ChainMap>) -> Result<Report> {
        let mut r = Report::new();
        if self.object(&p.shift(1)?)?.value != self.object(p)?.value.shift()? {
            r.push(Condition::Compatibility, "F(P[1]) vs [[F(P)]]");
        }
        if let Some(phi) = phi {
            if self.morphism(&phi.shift(1)?)?.value != self.morphism(phi)?.value.shift()? {
                r.push(Condition::Compatibility, "F(phi[1]) vs [[F(phi)]]");
            }
        }
        Ok(r)
    }

    /// Decides `φ ∼ 0` on both sides, fails with
    /// [`Error::DecisionMismatch`] if they disagree, and otherwise
    /// translates each witness to the other side and re-checks it.
    pub fn check_homotopy_equiv(&self, phi: &ChainMap) -> Result<HomotopyDecision> {
        let (p, q) = (phi.source(), phi.target());
        let zero = ChainMap::zero(p, q)?;
        let homotopy = homotopy_witness(phi, &zero)?;
        let f = self.morphism(phi)?.value;
        let f0 = BondMorphism::zero(f.source(), f.target())?;
        let witness = find_witness(&f, &f0, Variant::K)?;
        if homotopy.is_some() != witness.is_some() {
            return Err(Error::DecisionMismatch(format!(
                "homotopy solver says {}, K-matrix solver says {}",
                homotopy.is_some(),
                witness.is_some()
            )));
        }
        let mut report = Report::new();
        if let (Some(s), Some(l)) = (&homotopy, &witness) {
            let translated = self.homotopy_to_witness(s)?;
            for v in translated.validate().violations.into_iter().chain(check_witness(&f, &f0, &translated)?.violations) {
                report.push(v.condition, format!("from homotopy: {}", v.location));
            }
            let back = self.witness_to_homotopy(l, p, q)?;
            for v in back.check(phi, &zero)?.violations {
                report.push(v.condition, format!("from K-matrix: {}", v.location));
            }
        }
        Ok(HomotopyDecision { homotopic: homotopy.is_some(), homotopy, witness, report })
    }
}

pub fn functor_object(p: &ProjComplex) -> Result<Image<BondObject>> {
    Functor::new(p.algebra().clone())?.object(p)
}

pub fn functor_morphism(f: &ChainMap) -> Result<Image<BondMorphism>> {
    Functor::new(f.source().algebra().clone())?.morphism(f)
}

#[cfg(test)]
mod tests;
