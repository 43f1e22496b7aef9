//! Band layouts for objects glued from shifted pieces, and assembly of
//! block matrices between such layouts.

use std::sync::Arc;

use crate::category::{BlockMatrix, BondObject, DimensionVector};
use crate::error::Result;
use crate::poset::GradedElement;
use crate::scalar::{DenseMatrix, Field, Scalar};

/// Ordered parts `(X, k)`: at `y` the part contributes the bands of `X` at
/// `y + k`, stacked in the given order.
#[derive(Clone)]
pub(crate) struct Layout {
    parts: Vec<(Arc<BondObject>, i64)>,
}

impl Layout {
    pub(crate) fn new(parts: &[(&Arc<BondObject>, i64)]) -> Layout {
        Layout { parts: parts.iter().map(|(o, k)| ((*o).clone(), *k)).collect() }
    }

    fn part_dim(&self, p: usize, y: GradedElement) -> usize {
        let (o, k) = &self.parts[p];
        y.offset(*k).map(|z| o.dim(z)).unwrap_or(0)
    }

    fn start(&self, p: usize, y: GradedElement) -> usize {
        (0..p).map(|q| self.part_dim(q, y)).sum()
    }

    fn total(&self, y: GradedElement) -> usize {
        self.start(self.parts.len(), y)
    }

    pub(crate) fn dims(&self) -> Result<DimensionVector> {
        let mut dims = DimensionVector::new();
        for (o, k) in &self.parts {
            for (x, d) in o.dims().iter() {
                dims.add(x.offset(-k)?, d);
            }
        }
        Ok(dims)
    }
}

/// `sign · M` placed from row part `row` to column part `col`.
pub(crate) struct Entry<'a> {
    pub row: usize,
    pub col: usize,
    pub m: &'a BlockMatrix,
    pub sign: i64,
}

pub(crate) fn entry(row: usize, col: usize, m: &BlockMatrix, sign: i64) -> Entry<'_> {
    Entry { row, col, m, sign }
}

pub(crate) fn assemble(field: Field, rows: &Layout, cols: &Layout, entries: &[Entry<'_>]) -> Result<BlockMatrix> {
    let mut out = BlockMatrix::new();
    for e in entries {
        let s = Scalar::from_i64(field, e.sign);
        let (rk, ck) = (rows.parts[e.row].1, cols.parts[e.col].1);
        for (&(xs, ys), m) in e.m.iter() {
            let (x, y) = (xs.offset(-rk)?, ys.offset(-ck)?);
            let mut big = DenseMatrix::zeros(field, rows.total(x), cols.total(y));
            big.add_block(rows.start(e.row, x), cols.start(e.col, y), &m.scale(&s));
            out.add_at(x, y, &big)?;
        }
    }
    Ok(out)
}

/// Object with the given layout and blocks.
pub(crate) fn object(like: &BondObject, layout: &Layout, blocks: BlockMatrix) -> Result<BondObject> {
    BondObject::new(like.poset().clone(), like.field(), layout.dims()?, blocks)
}
