use std::sync::Arc;

use super::block::BlockMatrix;
use super::object::{direct_sum_blocks_with, same_object, same_poset, BondObject};
use crate::error::{Error, Result};
use crate::poset::GradedElement;
use crate::report::{Condition, Report};
use crate::scalar::{DenseMatrix, Scalar};

/// A block matrix `T: B → C` (rows indexed by `B`, columns by `C`).
#[derive(Clone, Debug)]
pub struct BondMorphism {
    source: Arc<BondObject>,
    target: Arc<BondObject>,
    blocks: BlockMatrix,
}

impl PartialEq for BondMorphism {
    fn eq(&self, other: &BondMorphism) -> bool {
        same_object(&self.source, &other.source)
            && same_object(&self.target, &other.target)
            && self.blocks == other.blocks
    }
}

impl Eq for BondMorphism {}

impl BondMorphism {
    /// Stores the data after normalization; conditions (a)–(d) are checked
    /// by [`BondMorphism::validate`].
    pub fn new(source: Arc<BondObject>, target: Arc<BondObject>, blocks: BlockMatrix) -> Result<BondMorphism> {
        if !same_poset(source.poset(), target.poset()) {
            return Err(Error::PosetMismatch);
        }
        if source.field() != target.field() {
            return Err(Error::FieldMismatch);
        }
        for (&(x, y), b) in blocks.iter() {
            if !source.poset().contains(x) || !source.poset().contains(y) {
                return Err(Error::ForeignElement);
            }
            if b.field() != source.field() {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(BondMorphism { source, target, blocks })
    }

    pub fn identity(b: &Arc<BondObject>) -> BondMorphism {
        BondMorphism { source: b.clone(), target: b.clone(), blocks: b.identity_blocks() }
    }

    pub fn zero(b: &Arc<BondObject>, c: &Arc<BondObject>) -> Result<BondMorphism> {
        BondMorphism::new(b.clone(), c.clone(), BlockMatrix::new())
    }

    pub fn source(&self) -> &Arc<BondObject> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BondObject> {
        &self.target
    }

    pub fn blocks(&self) -> &BlockMatrix {
        &self.blocks
    }

    pub fn block(&self, x: GradedElement, y: GradedElement) -> Option<&DenseMatrix> {
        self.blocks.get(x, y)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_zero()
    }

    /// Conditions (a) shape, (b) `TC = BT`, (c) triangularity, (d) σ-tied diagonal.
    pub fn validate(&self) -> Report {
        let (b, c) = (&self.source, &self.target);
        let mut report = Report::new();
        for (&(x, y), m) in self.blocks.iter() {
            if m.shape() != (b.dim(x), c.dim(y)) {
                report.push(Condition::BlockShape, b.pair_label(x, y));
            }
        }
        if report.is_valid() && b.validate().is_valid() && c.validate().is_valid() {
            let tc = self.blocks.try_mul(c.blocks()).expect("shapes checked");
            let bt = b.blocks().try_mul(&self.blocks).expect("shapes checked");
            let diff = tc.try_sub(&bt).expect("shapes checked");
            for &(x, y) in diff.keys() {
                report.push(Condition::Intertwining, b.pair_label(x, y));
            }
        }
        for &(x, y) in self.blocks.keys() {
            if x > y {
                report.push(Condition::Triangularity, b.pair_label(x, y));
            }
        }
        let poset = b.poset();
        let mut diagonal: Vec<GradedElement> = b.support().filter(|&x| c.dim(x) > 0).collect();
        diagonal.retain(|x| x.base < poset.sigma(x.base));
        for x in diagonal {
            let sx = poset.involution(x);
            if self.blocks.get(x, x) != self.blocks.get(sx, sx) {
                report.push(Condition::SigmaDiagonal, b.pair_label(x, sx));
            }
        }
        report
    }

    /// Diagrammatic composition `fg`: first `self`, then `g`.
    pub fn compose(&self, g: &BondMorphism) -> Result<BondMorphism> {
        if !same_object(&self.target, &g.source) {
            return Err(Error::ComposeMismatch);
        }
        Ok(BondMorphism {
            source: self.source.clone(),
            target: g.target.clone(),
            blocks: self.blocks.try_mul(&g.blocks)?,
        })
    }

    fn check_parallel(&self, g: &BondMorphism) -> Result<()> {
        if same_object(&self.source, &g.source) && same_object(&self.target, &g.target) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch("morphisms are not parallel".into()))
        }
    }

    pub fn add(&self, g: &BondMorphism) -> Result<BondMorphism> {
        self.check_parallel(g)?;
        Ok(self.with_blocks(self.blocks.try_add(&g.blocks)?))
    }

    pub fn sub(&self, g: &BondMorphism) -> Result<BondMorphism> {
        self.check_parallel(g)?;
        Ok(self.with_blocks(self.blocks.try_sub(&g.blocks)?))
    }

    pub fn scale(&self, s: &Scalar) -> BondMorphism {
        self.with_blocks(self.blocks.scale(s))
    }

    pub fn neg(&self) -> BondMorphism {
        self.with_blocks(self.blocks.neg())
    }

    fn with_blocks(&self, blocks: BlockMatrix) -> BondMorphism {
        BondMorphism { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    /// `⟦T⟧`: reindexed one degree down, no sign.
    pub fn shift(&self) -> Result<BondMorphism> {
        self.shift_by(1)
    }

    pub fn shift_by(&self, n: i64) -> Result<BondMorphism> {
        let k = n.checked_neg().ok_or(Error::DegreeOverflow)?;
        Ok(BondMorphism {
            source: Arc::new(self.source.shift_by(n)?),
            target: Arc::new(self.target.shift_by(n)?),
            blocks: self.blocks.reindex(k)?,
        })
    }

    /// `f ⊕ g: B ⊕ B' → C ⊕ C'`.
    pub fn direct_sum(&self, g: &BondMorphism) -> Result<BondMorphism> {
        let source = Arc::new(self.source.direct_sum(&g.source)?);
        let target = Arc::new(self.target.direct_sum(&g.target)?);
        let blocks = direct_sum_blocks_with(
            source.field(),
            source.dims(),
            target.dims(),
            &self.blocks,
            &g.blocks,
            |x| self.source.dim(x),
            |y| self.target.dim(y),
        );
        BondMorphism::new(source, target, blocks)
    }
}
