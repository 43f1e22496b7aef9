use std::collections::BTreeMap;
use std::sync::Arc;

use super::block::{BlockMatrix, DimensionVector};
use crate::error::{Error, Result};
use crate::poset::{BasePoset, GradedElement};
use crate::report::{Condition, Report};
use crate::scalar::{DenseMatrix, Field, Scalar};

/// A square-zero block matrix over `Y × Z`.
#[derive(Clone, Debug)]
pub struct BondObject {
    poset: Arc<BasePoset>,
    field: Field,
    dims: DimensionVector,
    blocks: BlockMatrix,
}

impl PartialEq for BondObject {
    fn eq(&self, other: &BondObject) -> bool {
        same_poset(&self.poset, &other.poset)
            && self.field == other.field
            && self.dims == other.dims
            && self.blocks == other.blocks
    }
}

impl Eq for BondObject {}

pub(crate) fn same_poset(a: &Arc<BasePoset>, b: &Arc<BasePoset>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Object equality with a pointer fast path.
pub fn same_object(a: &Arc<BondObject>, b: &Arc<BondObject>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl BondObject {
    /// Stores the data after normalization. Shape and `B² = 0` are not
    /// checked here; see [`BondObject::validate`].
    pub fn new(poset: Arc<BasePoset>, field: Field, dims: DimensionVector, blocks: BlockMatrix) -> Result<BondObject> {
        for x in dims.support() {
            if !poset.contains(x) {
                return Err(Error::ForeignElement);
            }
        }
        for (&(x, y), b) in blocks.iter() {
            if !poset.contains(x) || !poset.contains(y) {
                return Err(Error::ForeignElement);
            }
            if b.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(BondObject { poset, field, dims, blocks })
    }

    /// The zero object: every band empty.
    pub fn zero(poset: Arc<BasePoset>, field: Field) -> BondObject {
        BondObject { poset, field, dims: DimensionVector::new(), blocks: BlockMatrix::new() }
    }

    pub fn poset(&self) -> &Arc<BasePoset> {
        &self.poset
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &DimensionVector {
        &self.dims
    }

    pub fn dim(&self, x: GradedElement) -> usize {
        self.dims.get(x)
    }

    pub fn blocks(&self) -> &BlockMatrix {
        &self.blocks
    }

    pub fn block(&self, x: GradedElement, y: GradedElement) -> Option<&DenseMatrix> {
        self.blocks.get(x, y)
    }

    pub fn support(&self) -> impl Iterator<Item = GradedElement> + '_ {
        self.dims.support()
    }

    pub fn is_zero_object(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn label(&self, x: GradedElement) -> String {
        self.poset.label(x)
    }

    pub(crate) fn pair_label(&self, x: GradedElement, y: GradedElement) -> String {
        format!("({}, {})", self.label(x), self.label(y))
    }

    /// Checks band compatibility, σ-paired sizes and `B² = 0`.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        for (&(x, y), b) in self.blocks.iter() {
            if b.shape() != (self.dim(x), self.dim(y)) {
                report.push(Condition::BandShape, self.pair_label(x, y));
            }
        }
        for x in self.support() {
            let sx = self.poset.involution(x);
            let differ = sx != x && self.dim(x) != self.dim(sx);
            // report each pair once
            if differ && (x.base < sx.base || self.dim(sx) == 0) {
                report.push(Condition::SigmaDimension, format!("({}, {})", self.label(x), self.label(sx)));
            }
        }
        if report.is_valid() {
            let sq = self.blocks.try_mul(&self.blocks).expect("shapes checked");
            for &(x, z) in sq.keys() {
                report.push(Condition::SquareZero, self.pair_label(x, z));
            }
        }
        report
    }

    /// `⟦B⟧` with `⟦B⟧_{[u,i]}^{[v,j]} = −B_{[u,i+1]}^{[v,j+1]}`.
    pub fn shift(&self) -> Result<BondObject> {
        self.shift_by(1)
    }

    /// `n`-fold shift (negative `n` shifts the other way).
    pub fn shift_by(&self, n: i64) -> Result<BondObject> {
        let k = n.checked_neg().ok_or(Error::DegreeOverflow)?;
        let mut blocks = self.blocks.reindex(k)?;
        if n % 2 != 0 {
            blocks = blocks.neg();
        }
        Ok(BondObject {
            poset: self.poset.clone(),
            field: self.field,
            dims: self.dims.reindex(k)?,
            blocks,
        })
    }

    /// `B ⊕ C`: bands concatenated per element (B first), blocks diagonal.
    pub fn direct_sum(&self, other: &BondObject) -> Result<BondObject> {
        if !same_poset(&self.poset, &other.poset) {
            return Err(Error::PosetMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut dims = self.dims.clone();
        for (x, d) in other.dims.iter() {
            dims.add(x, d);
        }
        let blocks = direct_sum_blocks(self.field, &dims, self.blocks(), other.blocks(), |x| self.dim(x), |y| self.dim(y));
        BondObject::new(self.poset.clone(), self.field, dims, blocks)
    }

    pub fn identity_blocks(&self) -> BlockMatrix {
        self.support()
            .map(|x| ((x, x), DenseMatrix::identity(self.field, self.dim(x))))
            .collect()
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        Scalar::from_i64(self.field, n)
    }
}

/// Block-diagonal placement of `a` (top-left) and `b` (bottom-right).
/// `dims` are the summed sizes; `row_off(x)` / `col_off(y)` give the size
/// of the first summand's band at `x` / `y`.
pub(crate) fn direct_sum_blocks_with(
    field: Field,
    row_dims: &DimensionVector,
    col_dims: &DimensionVector,
    a: &BlockMatrix,
    b: &BlockMatrix,
    row_off: impl Fn(GradedElement) -> usize,
    col_off: impl Fn(GradedElement) -> usize,
) -> BlockMatrix {
    let mut out: BTreeMap<_, DenseMatrix> = BTreeMap::new();
    for (&(x, y), m) in a.iter() {
        out.entry((x, y))
            .or_insert_with(|| DenseMatrix::zeros(field, row_dims.get(x), col_dims.get(y)))
            .add_block(0, 0, m);
    }
    for (&(x, y), m) in b.iter() {
        out.entry((x, y))
            .or_insert_with(|| DenseMatrix::zeros(field, row_dims.get(x), col_dims.get(y)))
            .add_block(row_off(x), col_off(y), m);
    }
    BlockMatrix::from_map(out)
}

fn direct_sum_blocks(
    field: Field,
    dims: &DimensionVector,
    a: &BlockMatrix,
    b: &BlockMatrix,
    row_off: impl Fn(GradedElement) -> usize,
    col_off: impl Fn(GradedElement) -> usize,
) -> BlockMatrix {
    direct_sum_blocks_with(field, dims, dims, a, b, row_off, col_off)
}
