//! Bounded complexes of indecomposable projectives over a gentle algebra.
//!
//! Maps between sums of projectives are formal sums `Σ_w p(w)·M_w` over
//! the path basis; a block `M_w` has one row per summand `P_{s(w)}` of the
//! source and one column per summand `P_{t(w)}` of the target. Composition
//! is diagrammatic: `p(w1)·p(w2) = p(w1w2)`.

mod solve;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gentle::{GentleAlgebra, Path};
use crate::report::{Condition, Report};
use crate::scalar::{DenseMatrix, Field, Scalar};

pub use solve::{homotopy_witness, random_chain_map, random_null_homotopic};

/// Path-indexed blocks of one map.
pub type PathBlocks = BTreeMap<Path, DenseMatrix>;

/// Degree → vertex → multiplicity.
pub type Multiplicities = BTreeMap<i64, BTreeMap<usize, usize>>;

fn same_algebra(a: &Arc<GentleAlgebra>, b: &Arc<GentleAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn normalize(blocks: BTreeMap<i64, PathBlocks>) -> BTreeMap<i64, PathBlocks> {
    blocks
        .into_iter()
        .map(|(j, m)| (j, m.into_iter().filter(|(_, b)| !b.is_empty() && !b.is_zero()).collect::<PathBlocks>()))
        .filter(|(_, m)| !m.is_empty())
        .collect()
}

fn check_blocks(alg: &GentleAlgebra, field: Field, blocks: &BTreeMap<i64, PathBlocks>) -> Result<()> {
    for m in blocks.values() {
        for (w, b) in m {
            if !alg.contains(w) {
                return Err(Error::Unknown(format!("path {w:?} is not in the algebra")));
            }
            if b.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
    }
    Ok(())
}

/// `Σ p(w1)L_{w1} · Σ p(w2)R_{w2}`, dropping products through relations.
pub fn path_product(alg: &GentleAlgebra, left: &PathBlocks, right: &PathBlocks) -> Result<PathBlocks> {
    let mut out: PathBlocks = BTreeMap::new();
    for (w1, l) in left {
        for (w2, r) in right.iter().filter(|(w2, _)| w2.source() == w1.target()) {
            if let Some(w) = alg.path_mul(w1, w2)? {
                let p = l.try_mul(r)?;
                match out.get_mut(&w) {
                    Some(acc) => *acc = acc.try_add(&p)?,
                    None => {
                        out.insert(w, p);
                    }
                }
            }
        }
    }
    out.retain(|_, b| !b.is_zero());
    Ok(out)
}

fn blocks_sub(a: &PathBlocks, b: &PathBlocks) -> Result<PathBlocks> {
    let mut out = a.clone();
    for (w, m) in b {
        match out.get_mut(w) {
            Some(acc) => *acc = acc.try_sub(m)?,
            None => {
                out.insert(w.clone(), -m);
            }
        }
    }
    out.retain(|_, m| !m.is_zero());
    Ok(out)
}

fn combine(
    a: &BTreeMap<i64, PathBlocks>,
    b: &BTreeMap<i64, PathBlocks>,
    op: impl Fn(&PathBlocks, &PathBlocks) -> Result<PathBlocks>,
) -> Result<BTreeMap<i64, PathBlocks>> {
    let empty = PathBlocks::new();
    let degrees: std::collections::BTreeSet<i64> = a.keys().chain(b.keys()).copied().collect();
    let mut out = BTreeMap::new();
    for j in degrees {
        out.insert(j, op(a.get(&j).unwrap_or(&empty), b.get(&j).unwrap_or(&empty))?);
    }
    Ok(normalize(out))
}

fn scale_blocks(a: &BTreeMap<i64, PathBlocks>, s: &Scalar) -> BTreeMap<i64, PathBlocks> {
    normalize(a.iter().map(|(&j, m)| (j, m.iter().map(|(w, b)| (w.clone(), b.scale(s))).collect())).collect())
}

fn shift_blocks(a: &BTreeMap<i64, PathBlocks>, k: i64, negate: bool) -> Result<BTreeMap<i64, PathBlocks>> {
    let mut out = BTreeMap::new();
    for (&j, m) in a {
        let nj = j.checked_sub(k).ok_or(Error::DegreeOverflow)?;
        let m = if negate { m.iter().map(|(w, b)| (w.clone(), -b)).collect() } else { m.clone() };
        out.insert(nj, m);
    }
    Ok(out)
}

/// A bounded complex `P•` with differentials `∂ʲ = Σ_w p(w)·A_{w,j}`.
#[derive(Clone, Debug)]
pub struct ProjComplex {
    algebra: Arc<GentleAlgebra>,
    field: Field,
    dims: Multiplicities,
    diff: BTreeMap<i64, PathBlocks>,
}

impl PartialEq for ProjComplex {
    fn eq(&self, other: &ProjComplex) -> bool {
        same_algebra(&self.algebra, &other.algebra)
            && self.field == other.field
            && self.dims == other.dims
            && self.diff == other.diff
    }
}

impl ProjComplex {
    pub fn new(algebra: Arc<GentleAlgebra>, field: Field, dims: Multiplicities, diff: BTreeMap<i64, PathBlocks>) -> Result<ProjComplex> {
        let nv = algebra.quiver().vertices().len();
        let dims: Multiplicities = dims
            .into_iter()
            .map(|(j, m)| (j, m.into_iter().filter(|&(_, d)| d > 0).collect::<BTreeMap<_, _>>()))
            .filter(|(_, m)| !m.is_empty())
            .collect();
        if dims.values().flat_map(|m| m.keys()).any(|&v| v >= nv) {
            return Err(Error::Unknown("vertex index out of range".into()));
        }
        let diff = normalize(diff);
        check_blocks(&algebra, field, &diff)?;
        Ok(ProjComplex { algebra, field, dims, diff })
    }

    pub fn zero(algebra: Arc<GentleAlgebra>, field: Field) -> ProjComplex {
        ProjComplex { algebra, field, dims: BTreeMap::new(), diff: BTreeMap::new() }
    }

    /// `count` copies of `P_v` in degree `j`.
    pub fn stalk(algebra: Arc<GentleAlgebra>, field: Field, v: usize, j: i64, count: usize) -> Result<ProjComplex> {
        let dims = [(j, [(v, count)].into_iter().collect())].into_iter().collect();
        ProjComplex::new(algebra, field, dims, BTreeMap::new())
    }

    pub fn algebra(&self) -> &Arc<GentleAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &Multiplicities {
        &self.dims
    }

    pub fn dim(&self, v: usize, j: i64) -> usize {
        self.dims.get(&j).and_then(|m| m.get(&v)).copied().unwrap_or(0)
    }

    pub fn differentials(&self) -> &BTreeMap<i64, PathBlocks> {
        &self.diff
    }

    pub fn differential(&self, j: i64) -> Option<&PathBlocks> {
        self.diff.get(&j)
    }

    pub fn block(&self, w: &Path, j: i64) -> Option<&DenseMatrix> {
        self.diff.get(&j).and_then(|m| m.get(w))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Smallest and largest degree with a nonzero term.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((*self.dims.keys().next()?, *self.dims.keys().next_back()?))
    }

    fn label(&self, w: &Path, j: i64) -> String {
        format!("({}, {j})", self.algebra.path_name(w))
    }

    /// Shapes of `A_{w,j}` and `∂ʲ∂ʲ⁺¹ = 0` in the path basis.
    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        for (&j, m) in &self.diff {
            for (w, b) in m {
                if b.shape() != (self.dim(w.source(), j), self.dim(w.target(), j + 1)) {
                    r.push(Condition::DifferentialShape, self.label(w, j));
                }
            }
        }
        if !r.is_valid() {
            return r;
        }
        for (&j, m) in &self.diff {
            if let Some(next) = self.diff.get(&(j + 1)) {
                let sq = path_product(&self.algebra, m, next).expect("shapes checked");
                for w in sq.keys() {
                    r.push(Condition::PathSquareZero, self.label(w, j));
                }
            }
        }
        r
    }

    /// `P[k]`: `(P[k])ʲ = P^{j+k}` with differential `(−1)^k ∂^{j+k}`.
    pub fn shift(&self, k: i64) -> Result<ProjComplex> {
        let mut dims = BTreeMap::new();
        for (&j, m) in &self.dims {
            dims.insert(j.checked_sub(k).ok_or(Error::DegreeOverflow)?, m.clone());
        }
        Ok(ProjComplex { algebra: self.algebra.clone(), field: self.field, dims, diff: shift_blocks(&self.diff, k, k % 2 != 0)? })
    }

    /// `P ⊕ P̃`, summands of `P` first at every vertex.
    pub fn direct_sum(&self, other: &ProjComplex) -> Result<ProjComplex> {
        let zero = ChainMap::zero(&Arc::new(self.shift(-1)?), &Arc::new(other.clone()))?;
        let (c, _, _) = mapping_cone(&zero)?;
        Ok(c)
    }
}

/// A chain map `φ•: P• → P̃•` with blocks `φ_{w,j}`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: Arc<ProjComplex>,
    target: Arc<ProjComplex>,
    blocks: BTreeMap<i64, PathBlocks>,
}

impl PartialEq for ChainMap {
    fn eq(&self, other: &ChainMap) -> bool {
        self.source == other.source && self.target == other.target && self.blocks == other.blocks
    }
}

fn check_pair(source: &ProjComplex, target: &ProjComplex) -> Result<()> {
    if !same_algebra(&source.algebra, &target.algebra) {
        return Err(Error::Invalid("complexes over different algebras".into()));
    }
    if source.field != target.field {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

impl ChainMap {
    pub fn new(source: Arc<ProjComplex>, target: Arc<ProjComplex>, blocks: BTreeMap<i64, PathBlocks>) -> Result<ChainMap> {
        check_pair(&source, &target)?;
        let blocks = normalize(blocks);
        check_blocks(&source.algebra, source.field, &blocks)?;
        Ok(ChainMap { source, target, blocks })
    }

    pub fn zero(source: &Arc<ProjComplex>, target: &Arc<ProjComplex>) -> Result<ChainMap> {
        ChainMap::new(source.clone(), target.clone(), BTreeMap::new())
    }

    pub fn identity(p: &Arc<ProjComplex>) -> ChainMap {
        let mut blocks = BTreeMap::new();
        for (&j, m) in &p.dims {
            let e: PathBlocks = m.iter().map(|(&v, &d)| (Path::trivial(v), DenseMatrix::identity(p.field, d))).collect();
            blocks.insert(j, e);
        }
        ChainMap { source: p.clone(), target: p.clone(), blocks }
    }

    pub fn source(&self) -> &Arc<ProjComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ProjComplex> {
        &self.target
    }

    pub fn blocks(&self) -> &BTreeMap<i64, PathBlocks> {
        &self.blocks
    }

    pub fn block(&self, w: &Path, j: i64) -> Option<&DenseMatrix> {
        self.blocks.get(&j).and_then(|m| m.get(w))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Shapes and `φʲ∂̃ʲ = ∂ʲφʲ⁺¹` in the path basis.
    pub fn validate(&self) -> Report {
        let (p, q) = (&self.source, &self.target);
        let mut r = Report::new();
        for (&j, m) in &self.blocks {
            for (w, b) in m {
                if b.shape() != (p.dim(w.source(), j), q.dim(w.target(), j)) {
                    r.push(Condition::ChainMapShape, p.label(w, j));
                }
            }
        }
        if !r.is_valid() || !p.validate().is_valid() || !q.validate().is_valid() {
            return r;
        }
        let empty = PathBlocks::new();
        let degrees: std::collections::BTreeSet<i64> =
            self.blocks.keys().copied().chain(self.blocks.keys().map(|j| j - 1)).collect();
        for j in degrees {
            let left = path_product(&p.algebra, self.blocks.get(&j).unwrap_or(&empty), q.diff.get(&j).unwrap_or(&empty));
            let right = path_product(&p.algebra, p.diff.get(&j).unwrap_or(&empty), self.blocks.get(&(j + 1)).unwrap_or(&empty));
            let diff = blocks_sub(&left.expect("shapes checked"), &right.expect("shapes checked")).expect("shapes checked");
            for w in diff.keys() {
                r.push(Condition::Commutation, p.label(w, j));
            }
        }
        r
    }

    /// Diagrammatic composite: first `self`, then `g`.
    pub fn compose(&self, g: &ChainMap) -> Result<ChainMap> {
        if self.target != g.source {
            return Err(Error::ComposeMismatch);
        }
        let alg = self.source.algebra.clone();
        let blocks = combine(&self.blocks, &g.blocks, |a, b| path_product(&alg, a, b))?;
        Ok(ChainMap { source: self.source.clone(), target: g.target.clone(), blocks })
    }

    fn parallel(&self, g: &ChainMap) -> Result<()> {
        if self.source == g.source && self.target == g.target {
            Ok(())
        } else {
            Err(Error::ShapeMismatch("chain maps are not parallel".into()))
        }
    }

    pub fn add(&self, g: &ChainMap) -> Result<ChainMap> {
        self.parallel(g)?;
        let neg = scale_blocks(&g.blocks, &Scalar::from_i64(self.source.field, -1));
        Ok(ChainMap { blocks: combine(&self.blocks, &neg, blocks_sub)?, ..self.clone() })
    }

    pub fn sub(&self, g: &ChainMap) -> Result<ChainMap> {
        self.parallel(g)?;
        Ok(ChainMap { blocks: combine(&self.blocks, &g.blocks, blocks_sub)?, ..self.clone() })
    }

    pub fn scale(&self, s: &Scalar) -> ChainMap {
        ChainMap { blocks: scale_blocks(&self.blocks, s), ..self.clone() }
    }

    pub fn neg(&self) -> ChainMap {
        self.scale(&Scalar::from_i64(self.source.field, -1))
    }

    /// `φ[k]ʲ = φ^{j+k}`, no sign.
    pub fn shift(&self, k: i64) -> Result<ChainMap> {
        Ok(ChainMap {
            source: Arc::new(self.source.shift(k)?),
            target: Arc::new(self.target.shift(k)?),
            blocks: shift_blocks(&self.blocks, k, false)?,
        })
    }
}

/// Maps `sʲ: Pʲ → P̃ʲ⁻¹` with blocks `S_{w,j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomotopyWitness {
    source: Arc<ProjComplex>,
    target: Arc<ProjComplex>,
    blocks: BTreeMap<i64, PathBlocks>,
}

impl HomotopyWitness {
    pub fn new(source: Arc<ProjComplex>, target: Arc<ProjComplex>, blocks: BTreeMap<i64, PathBlocks>) -> Result<HomotopyWitness> {
        check_pair(&source, &target)?;
        let blocks = normalize(blocks);
        check_blocks(&source.algebra, source.field, &blocks)?;
        Ok(HomotopyWitness { source, target, blocks })
    }

    pub fn source(&self) -> &Arc<ProjComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ProjComplex> {
        &self.target
    }

    pub fn blocks(&self) -> &BTreeMap<i64, PathBlocks> {
        &self.blocks
    }

    pub fn block(&self, w: &Path, j: i64) -> Option<&DenseMatrix> {
        self.blocks.get(&j).and_then(|m| m.get(w))
    }

    /// The null-homotopic chain map `sʲ∂̃ʲ⁻¹ + ∂ʲsʲ⁺¹`.
    pub fn boundary(&self) -> Result<ChainMap> {
        let (p, q) = (&self.source, &self.target);
        let alg = &p.algebra;
        let empty = PathBlocks::new();
        let degrees: std::collections::BTreeSet<i64> =
            self.blocks.keys().copied().chain(self.blocks.keys().map(|j| j - 1)).collect();
        let mut out = BTreeMap::new();
        for j in degrees {
            let a = path_product(alg, self.blocks.get(&j).unwrap_or(&empty), q.diff.get(&(j - 1)).unwrap_or(&empty))?;
            let b = path_product(alg, p.diff.get(&j).unwrap_or(&empty), self.blocks.get(&(j + 1)).unwrap_or(&empty))?;
            let neg_b: PathBlocks = b.into_iter().map(|(w, m)| (w, -&m)).collect();
            out.insert(j, blocks_sub(&a, &neg_b)?);
        }
        ChainMap::new(p.clone(), q.clone(), out)
    }

    /// Shapes and `φʲ − ψʲ = sʲ∂̃ʲ⁻¹ + ∂ʲsʲ⁺¹`.
    pub fn check(&self, phi: &ChainMap, psi: &ChainMap) -> Result<Report> {
        phi.parallel(psi)?;
        if phi.source != self.source || phi.target != self.target {
            return Err(Error::ShapeMismatch("homotopy lives over different complexes".into()));
        }
        let (p, q) = (&self.source, &self.target);
        let mut r = Report::new();
        for (&j, m) in &self.blocks {
            for (w, b) in m {
                if b.shape() != (p.dim(w.source(), j), q.dim(w.target(), j - 1)) {
                    r.push(Condition::HomotopyShape, p.label(w, j));
                }
            }
        }
        if !r.is_valid() {
            return Ok(r);
        }
        let lhs = phi.sub(psi)?;
        let diff = lhs.sub(&self.boundary()?)?;
        for (&j, m) in &diff.blocks {
            for w in m.keys() {
                r.push(Condition::HomotopyEquation, p.label(w, j));
            }
        }
        Ok(r)
    }
}

/// `C(φ)ʲ = Pʲ⁺¹ ⊕ P̃ʲ` with `∂_φ = [[−∂, φ], [0, ∂̃]]`, the inclusion
/// `P̃ → C(φ)` and the projection `C(φ) → P[1]`.
pub fn mapping_cone(phi: &ChainMap) -> Result<(ProjComplex, ChainMap, ChainMap)> {
    let (p, q) = (&phi.source, &phi.target);
    let field = p.field;
    let alg = p.algebra.clone();
    let p1 = Arc::new(p.shift(1)?);
    let mut dims: Multiplicities = BTreeMap::new();
    for (&j, m) in p1.dims.iter().chain(q.dims.iter()) {
        let e = dims.entry(j).or_default();
        for (&v, &d) in m {
            *e.entry(v).or_default() += d;
        }
    }
    let cone_dim = |v: usize, j: i64| p1.dim(v, j) + q.dim(v, j);
    let empty = PathBlocks::new();
    let degrees: std::collections::BTreeSet<i64> =
        p1.diff.keys().chain(q.diff.keys()).copied().chain(phi.blocks.keys().map(|j| j - 1)).collect();
    let mut diff = BTreeMap::new();
    for j in degrees {
        let a = p1.diff.get(&j).unwrap_or(&empty);
        let f = phi.blocks.get(&(j + 1)).unwrap_or(&empty);
        let b = q.diff.get(&j).unwrap_or(&empty);
        let paths: std::collections::BTreeSet<&Path> = a.keys().chain(f.keys()).chain(b.keys()).collect();
        let mut m = PathBlocks::new();
        for w in paths {
            let (s, t) = (w.source(), w.target());
            let mut big = DenseMatrix::zeros(field, cone_dim(s, j), cone_dim(t, j + 1));
            if let Some(x) = a.get(w) {
                big.add_block(0, 0, x);
            }
            if let Some(x) = f.get(w) {
                big.add_block(0, p1.dim(t, j + 1), x);
            }
            if let Some(x) = b.get(w) {
                big.add_block(p1.dim(s, j), p1.dim(t, j + 1), x);
            }
            m.insert(w.clone(), big);
        }
        diff.insert(j, m);
    }
    let cone = Arc::new(ProjComplex::new(alg, field, dims, diff)?);
    let mut iota = BTreeMap::new();
    let mut pi = BTreeMap::new();
    for (&j, m) in &cone.dims {
        let mut im = PathBlocks::new();
        let mut pm = PathBlocks::new();
        for &v in m.keys() {
            let (dp, dq) = (p1.dim(v, j), q.dim(v, j));
            let mut i = DenseMatrix::zeros(field, dq, dp + dq);
            i.add_block(0, dp, &DenseMatrix::identity(field, dq));
            let mut o = DenseMatrix::zeros(field, dp + dq, dp);
            o.add_block(0, 0, &DenseMatrix::identity(field, dp));
            im.insert(Path::trivial(v), i);
            pm.insert(Path::trivial(v), o);
        }
        iota.insert(j, im);
        pi.insert(j, pm);
    }
    let iota = ChainMap::new(q.clone(), cone.clone(), iota)?;
    let pi = ChainMap::new(cone.clone(), p1, pi)?;
    Ok(((*cone).clone(), iota, pi))
}
