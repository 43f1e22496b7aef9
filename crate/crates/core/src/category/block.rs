use std::collections::BTreeMap;

use crate::error::Result;
use crate::poset::GradedElement;
use crate::scalar::{DenseMatrix, Field, Scalar};

pub type BlockKey = (GradedElement, GradedElement);

/// Sparse block matrix indexed by pairs of graded elements.
///
/// Only nonzero, nonempty blocks are stored, so derived equality is
/// blockwise equality with absent blocks read as zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockMatrix {
    blocks: BTreeMap<BlockKey, DenseMatrix>,
}

impl BlockMatrix {
    pub fn new() -> BlockMatrix {
        BlockMatrix::default()
    }

    pub fn from_map(blocks: BTreeMap<BlockKey, DenseMatrix>) -> BlockMatrix {
        let mut m = BlockMatrix { blocks };
        m.normalize();
        m
    }

    fn normalize(&mut self) {
        self.blocks.retain(|_, b| !b.is_empty() && !b.is_zero());
    }

    pub fn get(&self, x: GradedElement, y: GradedElement) -> Option<&DenseMatrix> {
        self.blocks.get(&(x, y))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BlockKey, &DenseMatrix)> {
        self.blocks.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &BlockKey> {
        self.blocks.keys()
    }

    #[allow(clippy::len_without_is_empty)] // see is_zero
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Blocks in row `x`.
    pub fn row(&self, x: GradedElement) -> impl Iterator<Item = (&BlockKey, &DenseMatrix)> {
        self.blocks.range((x, GradedElement::MIN)..=(x, GradedElement::MAX))
    }

    /// Adds `m` into the block at `(x, y)`.
    pub fn add_at(&mut self, x: GradedElement, y: GradedElement, m: &DenseMatrix) -> Result<()> {
        if m.is_empty() || m.is_zero() {
            return Ok(());
        }
        match self.blocks.get_mut(&(x, y)) {
            Some(b) => {
                let s = b.try_add(m)?;
                if s.is_zero() {
                    self.blocks.remove(&(x, y));
                } else {
                    *b = s;
                }
            }
            None => {
                self.blocks.insert((x, y), m.clone());
            }
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &BlockMatrix) -> Result<BlockMatrix> {
        let mut out = BlockMatrix::new();
        for (&(x, y), a) in &self.blocks {
            for (&(_, z), b) in other.row(y) {
                out.add_at(x, z, &a.try_mul(b)?)?;
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &BlockMatrix) -> Result<BlockMatrix> {
        let mut out = self.clone();
        for (&(x, y), b) in &other.blocks {
            out.add_at(x, y, b)?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &BlockMatrix) -> Result<BlockMatrix> {
        self.try_add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> BlockMatrix {
        BlockMatrix::from_map(self.blocks.iter().map(|(k, b)| (*k, b.scale(s))).collect())
    }

    pub fn neg(&self) -> BlockMatrix {
        BlockMatrix { blocks: self.blocks.iter().map(|(k, b)| (*k, -b)).collect() }
    }

    /// Moves every row and column index by `k` degrees.
    pub fn reindex(&self, k: i64) -> Result<BlockMatrix> {
        let mut blocks = BTreeMap::new();
        for (&(x, y), b) in &self.blocks {
            blocks.insert((x.offset(k)?, y.offset(k)?), b.clone());
        }
        Ok(BlockMatrix { blocks })
    }

    pub fn field(&self) -> Option<Field> {
        self.blocks.values().next().map(DenseMatrix::field)
    }

    pub fn into_map(self) -> BTreeMap<BlockKey, DenseMatrix> {
        self.blocks
    }
}

impl FromIterator<(BlockKey, DenseMatrix)> for BlockMatrix {
    fn from_iter<I: IntoIterator<Item = (BlockKey, DenseMatrix)>>(iter: I) -> BlockMatrix {
        BlockMatrix::from_map(iter.into_iter().collect())
    }
}

/// Band sizes per graded element; only positive sizes are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DimensionVector {
    dims: BTreeMap<GradedElement, usize>,
}

impl DimensionVector {
    pub fn new() -> DimensionVector {
        DimensionVector::default()
    }

    pub fn get(&self, x: GradedElement) -> usize {
        self.dims.get(&x).copied().unwrap_or(0)
    }

    pub fn set(&mut self, x: GradedElement, d: usize) {
        if d == 0 {
            self.dims.remove(&x);
        } else {
            self.dims.insert(x, d);
        }
    }

    pub fn add(&mut self, x: GradedElement, d: usize) {
        let cur = self.get(x);
        self.set(x, cur + d);
    }

    /// The support, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = GradedElement> + '_ {
        self.dims.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (GradedElement, usize)> + '_ {
        self.dims.iter().map(|(k, v)| (*k, *v))
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn reindex(&self, k: i64) -> Result<DimensionVector> {
        let mut dims = BTreeMap::new();
        for (&x, &d) in &self.dims {
            dims.insert(x.offset(k)?, d);
        }
        Ok(DimensionVector { dims })
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.dims.keys().map(|x| x.degree).min()?;
        let hi = self.dims.keys().map(|x| x.degree).max()?;
        Some((lo, hi))
    }
}

impl FromIterator<(GradedElement, usize)> for DimensionVector {
    fn from_iter<I: IntoIterator<Item = (GradedElement, usize)>>(iter: I) -> DimensionVector {
        let mut d = DimensionVector::new();
        for (x, n) in iter {
            d.add(x, n);
        }
        d
    }
}
