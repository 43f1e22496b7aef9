//! Affine systems whose unknowns are entries of block matrices.
//!
//! An [`Unknown`] reserves variables for a set of keyed blocks (aliased
//! blocks share variables). An [`Expr`] maps keys to blocks of affine forms
//! built from products of known matrices with unknowns. Keys are pairs of
//! graded elements for block matrices, `(degree, path)` for complexes.

use std::collections::BTreeMap;

use crate::category::{BlockKey, BlockMatrix};
use crate::poset::GradedElement;
use crate::scalar::{AffineSystem, DenseMatrix, Field, Scalar};

#[derive(Clone, Copy, Debug)]
pub(crate) struct VarBlock {
    offset: usize,
    rows: usize,
    cols: usize,
}

impl VarBlock {
    fn var(&self, i: usize, j: usize) -> usize {
        self.offset + i * self.cols + j
    }
}

/// Unknown keyed family of matrices.
#[derive(Clone, Debug)]
pub(crate) struct Unknown<K = BlockKey> {
    blocks: BTreeMap<K, VarBlock>,
}

impl<K: Ord + Clone> Unknown<K> {
    pub(crate) fn iter(&self) -> impl Iterator<Item = (&K, &VarBlock)> {
        self.blocks.iter()
    }

    pub(crate) fn get(&self, k: &K) -> Option<VarBlock> {
        self.blocks.get(k).copied()
    }

    /// Reads the unknown back from a solution vector; zero blocks dropped.
    pub(crate) fn values(&self, field: Field, sol: &[Scalar]) -> BTreeMap<K, DenseMatrix> {
        self.blocks
            .iter()
            .map(|(k, vb)| {
                let mut m = DenseMatrix::zeros(field, vb.rows, vb.cols);
                for i in 0..vb.rows {
                    for j in 0..vb.cols {
                        m.set(i, j, &sol[vb.var(i, j)]);
                    }
                }
                (k.clone(), m)
            })
            .filter(|(_, m)| !m.is_zero())
            .collect()
    }
}

impl Unknown<BlockKey> {
    fn row(&self, x: GradedElement) -> impl Iterator<Item = (&BlockKey, &VarBlock)> {
        self.blocks.range((x, GradedElement::MIN)..=(x, GradedElement::MAX))
    }

    pub(crate) fn value(&self, field: Field, sol: &[Scalar]) -> BlockMatrix {
        BlockMatrix::from_map(self.values(field, sol))
    }
}

#[derive(Clone, Debug)]
struct Form {
    terms: Vec<(usize, Scalar)>,
    constant: Scalar,
}

#[derive(Clone, Debug)]
struct BlockForm {
    rows: usize,
    cols: usize,
    cells: Vec<Form>,
}

/// Keyed blocks of affine forms in the builder's variables.
#[derive(Clone, Debug)]
pub(crate) struct Expr<K = BlockKey> {
    field: Field,
    blocks: BTreeMap<K, BlockForm>,
}

impl<K: Ord + Clone> Expr<K> {
    pub(crate) fn new(field: Field) -> Expr<K> {
        Expr { field, blocks: BTreeMap::new() }
    }

    fn block(&mut self, key: K, rows: usize, cols: usize) -> &mut BlockForm {
        let zero = Scalar::zero(self.field);
        let b = self.blocks.entry(key).or_insert_with(|| BlockForm {
            rows,
            cols,
            cells: vec![Form { terms: Vec::new(), constant: zero }; rows * cols],
        });
        assert_eq!((b.rows, b.cols), (rows, cols), "inconsistent block shape in expression");
        b
    }

    /// `+= sign · m` at `key`.
    pub(crate) fn add_const_block(&mut self, key: K, m: &DenseMatrix, sign: i64) {
        let s = Scalar::from_i64(self.field, sign);
        let f = self.block(key, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j);
                if !v.is_zero() {
                    let c = &mut f.cells[i * f.cols + j].constant;
                    *c = &*c + &(&s * &v);
                }
            }
        }
    }

    /// `+= sign · a·X` at `key`, where `X` is the block `vb`.
    pub(crate) fn add_left_block(&mut self, key: K, a: &DenseMatrix, vb: VarBlock, sign: i64) {
        assert_eq!(a.cols(), vb.rows, "inner shape mismatch in A·X");
        let s = Scalar::from_i64(self.field, sign);
        let f = self.block(key, a.rows(), vb.cols);
        for i in 0..a.rows() {
            for l in 0..a.cols() {
                let coef = a.get(i, l);
                if coef.is_zero() {
                    continue;
                }
                let coef = &s * &coef;
                for j in 0..vb.cols {
                    f.cells[i * f.cols + j].terms.push((vb.var(l, j), coef.clone()));
                }
            }
        }
    }

    /// `+= sign · X·c` at `key`, where `X` is the block `vb`.
    pub(crate) fn add_right_block(&mut self, key: K, vb: VarBlock, c: &DenseMatrix, sign: i64) {
        assert_eq!(vb.cols, c.rows(), "inner shape mismatch in X·C");
        let s = Scalar::from_i64(self.field, sign);
        let f = self.block(key, vb.rows, c.cols());
        for l in 0..vb.cols {
            for j in 0..c.cols() {
                let coef = c.get(l, j);
                if coef.is_zero() {
                    continue;
                }
                let coef = &s * &coef;
                for i in 0..vb.rows {
                    f.cells[i * f.cols + j].terms.push((vb.var(i, l), coef.clone()));
                }
            }
        }
    }
}

impl Expr<BlockKey> {
    /// `+= sign · M`.
    pub(crate) fn add_const(&mut self, m: &BlockMatrix, sign: i64) {
        for (&key, b) in m.iter() {
            self.add_const_block(key, b, sign);
        }
    }

    /// `+= sign · A·X`.
    pub(crate) fn add_left(&mut self, a: &BlockMatrix, x: &Unknown, sign: i64) {
        for (&(r, mid), am) in a.iter() {
            for (&(_, col), &vb) in x.row(mid) {
                self.add_left_block((r, col), am, vb, sign);
            }
        }
    }

    /// `+= sign · X·C`.
    pub(crate) fn add_right(&mut self, x: &Unknown, c: &BlockMatrix, sign: i64) {
        for (&(r, mid), &vb) in &x.blocks {
            for (&(_, col), cm) in c.row(mid) {
                self.add_right_block((r, col), vb, cm, sign);
            }
        }
    }

}

/// Collects unknowns and equations, then solves.
pub(crate) struct Builder {
    field: Field,
    vars: usize,
    equations: Vec<(Vec<(usize, Scalar)>, Scalar)>,
}

impl Builder {
    pub(crate) fn new(field: Field) -> Builder {
        Builder { field, vars: 0, equations: Vec::new() }
    }

    pub(crate) fn field(&self) -> Field {
        self.field
    }

    pub(crate) fn vars(&self) -> usize {
        self.vars
    }

    /// Reserves variables for `cells` in iteration order. A cell whose
    /// `alias` is an already reserved key of the same shape reuses it.
    pub(crate) fn unknown<K: Ord + Clone>(
        &mut self,
        cells: impl IntoIterator<Item = (K, usize, usize)>,
        alias: impl Fn(&K) -> Option<K>,
    ) -> Unknown<K> {
        let mut u = Unknown { blocks: BTreeMap::new() };
        for (key, rows, cols) in cells {
            if rows == 0 || cols == 0 {
                continue;
            }
            let shared = alias(&key)
                .and_then(|k| u.blocks.get(&k).copied())
                .filter(|vb| (vb.rows, vb.cols) == (rows, cols));
            let vb = match shared {
                Some(vb) => vb,
                None => {
                    let vb = VarBlock { offset: self.vars, rows, cols };
                    self.vars += rows * cols;
                    vb
                }
            };
            u.blocks.insert(key, vb);
        }
        u
    }

    fn push_form(&mut self, f: &Form) {
        self.equations.push((f.terms.clone(), -&f.constant));
    }

    /// Every entry of `e` at keys accepted by `filter` must vanish.
    pub(crate) fn require_zero<K: Ord + Clone>(&mut self, e: &Expr<K>, filter: impl Fn(&K) -> bool) {
        for (key, b) in &e.blocks {
            if filter(key) {
                for f in &b.cells {
                    self.push_form(f);
                }
            }
        }
    }

    /// Blocks `k1` and `k2` of `e` must agree (absent blocks read as zero).
    pub(crate) fn require_equal<K: Ord + Clone>(&mut self, e: &Expr<K>, k1: K, k2: K) {
        let zero = Scalar::zero(self.field);
        match (e.blocks.get(&k1), e.blocks.get(&k2)) {
            (None, None) => {}
            (Some(a), None) | (None, Some(a)) => {
                for f in &a.cells {
                    self.push_form(f);
                }
            }
            (Some(a), Some(b)) => {
                assert_eq!((a.rows, a.cols), (b.rows, b.cols), "σ-paired blocks differ in shape");
                for (fa, fb) in a.cells.iter().zip(&b.cells) {
                    let mut terms = fa.terms.clone();
                    let minus = Scalar::from_i64(self.field, -1);
                    terms.extend(fb.terms.iter().map(|(k, c)| (*k, &minus * c)));
                    let constant = &fa.constant - &fb.constant;
                    self.equations.push((terms, &zero - &constant));
                }
            }
        }
    }

    fn system(&self) -> AffineSystem {
        let mut sys = AffineSystem::new(self.field, self.vars);
        for (terms, rhs) in &self.equations {
            sys.push(terms.clone(), rhs.clone());
        }
        sys
    }

    pub(crate) fn solve(&self) -> Option<Vec<Scalar>> {
        self.system().solve()
    }

    pub(crate) fn solve_with(&self, free: impl FnMut(usize) -> Scalar) -> Option<Vec<Scalar>> {
        self.system().solve_with(free)
    }
}
