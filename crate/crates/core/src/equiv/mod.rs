//! The relations `≃` (K-matrices) and `≡` (κ-matrices) between parallel
//! morphisms, decided by exact linear feasibility.
//!
//! A witness `L` for `S ≃ T` satisfies `S − T = BL + LC`. Its nonzero
//! blocks live in a region below the diagonal by at most one degree (K) or
//! on and above it (κ), and σ-paired blocks are tied:
//!
//! - κ: `L([u,i],[u,i]) = L([σu,i],[σu,i])`;
//! - K: `L([u,i+1],[u,i]) = L([σu,i+1],[σu,i])`.

pub(crate) mod system;

use std::fmt;
use std::sync::Arc;

use crate::category::{same_object, BlockKey, BlockMatrix, BondMorphism, BondObject};
use crate::error::{Error, Result};
use crate::poset::{BasePoset, GradedElement};
use crate::report::{Condition, Report};
use crate::scalar::Scalar;

use system::{Builder, Expr, Unknown};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    K,
    Kappa,
}

impl Variant {
    /// Whether a witness block at `(x, y)` may be nonzero.
    pub fn allows(self, x: GradedElement, y: GradedElement) -> bool {
        match self {
            Variant::K => x.degree <= y.degree || (x.degree == y.degree + 1 && x.base <= y.base),
            Variant::Kappa => x <= y,
        }
    }

    /// The σ-partner of a tied key, if `key` is tied at all.
    pub fn tied(self, poset: &BasePoset, (x, y): BlockKey) -> Option<BlockKey> {
        if x.base != y.base || poset.sigma(x.base) == x.base {
            return None;
        }
        let step = match self {
            Variant::K => 1,
            Variant::Kappa => 0,
        };
        (x.degree.checked_sub(y.degree) == Some(step)).then(|| (poset.involution(x), poset.involution(y)))
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::K => "K",
            Variant::Kappa => "kappa",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "K" | "k" => Ok(Variant::K),
            "kappa" | "κ" => Ok(Variant::Kappa),
            _ => Err(Error::Parse(format!("unknown variant `{s}` (expected K or kappa)"))),
        }
    }
}

/// Block matrix `L` with rows indexed by `B` and columns by `C`.
#[derive(Clone, Debug)]
pub struct KMatrixWitness {
    variant: Variant,
    source: Arc<BondObject>,
    target: Arc<BondObject>,
    blocks: BlockMatrix,
}

impl PartialEq for KMatrixWitness {
    fn eq(&self, other: &KMatrixWitness) -> bool {
        self.variant == other.variant
            && same_object(&self.source, &other.source)
            && same_object(&self.target, &other.target)
            && self.blocks == other.blocks
    }
}

impl KMatrixWitness {
    pub fn new(
        variant: Variant,
        source: Arc<BondObject>,
        target: Arc<BondObject>,
        blocks: BlockMatrix,
    ) -> Result<KMatrixWitness> {
        // reuse the morphism constructor's poset, field and element checks
        let m = BondMorphism::new(source, target, blocks)?;
        Ok(KMatrixWitness {
            variant,
            source: m.source().clone(),
            target: m.target().clone(),
            blocks: m.blocks().clone(),
        })
    }

    pub fn zero(variant: Variant, source: &Arc<BondObject>, target: &Arc<BondObject>) -> KMatrixWitness {
        KMatrixWitness { variant, source: source.clone(), target: target.clone(), blocks: BlockMatrix::new() }
    }

    pub fn variant(&self) -> Variant {
        self.variant
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

    pub fn with_variant(&self, variant: Variant) -> KMatrixWitness {
        KMatrixWitness { variant, ..self.clone() }
    }

    pub fn neg(&self) -> KMatrixWitness {
        KMatrixWitness { blocks: self.blocks.neg(), ..self.clone() }
    }

    pub fn add(&self, other: &KMatrixWitness) -> Result<KMatrixWitness> {
        if !same_object(&self.source, &other.source) || !same_object(&self.target, &other.target) {
            return Err(Error::ShapeMismatch("witnesses live over different objects".into()));
        }
        Ok(KMatrixWitness { blocks: self.blocks.try_add(&other.blocks)?, ..self.clone() })
    }

    /// Shape, zero region and σ-tie conditions (everything except the
    /// certificate equation).
    pub fn validate(&self) -> Report {
        let (b, c) = (&self.source, &self.target);
        let poset = b.poset();
        let mut report = Report::new();
        for (&(x, y), m) in self.blocks.iter() {
            if m.shape() != (b.dim(x), c.dim(y)) {
                report.push(Condition::WitnessShape, b.pair_label(x, y));
            }
            if !self.variant.allows(x, y) {
                report.push(Condition::WitnessRegion, b.pair_label(x, y));
            }
        }
        for x in b.support() {
            if x.base > poset.sigma(x.base) {
                continue;
            }
            let y = match self.variant {
                Variant::K => match x.offset(-1) {
                    Ok(y) => y,
                    Err(_) => continue,
                },
                Variant::Kappa => x,
            };
            if c.dim(y) == 0 {
                continue;
            }
            if let Some((sx, sy)) = self.variant.tied(poset, (x, y)) {
                if self.blocks.get(x, y) != self.blocks.get(sx, sy) {
                    report.push(Condition::WitnessSigma, format!("{} vs {}", b.pair_label(x, y), b.pair_label(sx, sy)));
                }
            }
        }
        report
    }
}

fn parallel(s: &BondMorphism, t: &BondMorphism) -> Result<()> {
    if same_object(s.source(), t.source()) && same_object(s.target(), t.target()) {
        Ok(())
    } else {
        Err(Error::ShapeMismatch("morphisms are not parallel".into()))
    }
}

/// Checks every witness condition, including `S − T = BL + LC`.
pub fn check_witness(s: &BondMorphism, t: &BondMorphism, l: &KMatrixWitness) -> Result<Report> {
    parallel(s, t)?;
    if !same_object(s.source(), &l.source) || !same_object(s.target(), &l.target) {
        return Err(Error::ShapeMismatch("witness lives over different objects".into()));
    }
    let mut report = l.validate();
    if !report.has(Condition::WitnessShape) {
        let (b, c) = (&l.source, &l.target);
        let lhs = s.blocks().try_sub(t.blocks())?;
        let rhs = b.blocks().try_mul(&l.blocks)?.try_add(&l.blocks.try_mul(c.blocks())?)?;
        for &(x, y) in lhs.try_sub(&rhs)?.keys() {
            report.push(Condition::WitnessEquation, b.pair_label(x, y));
        }
    }
    Ok(report)
}

fn cells(b: &BondObject, c: &BondObject, region: impl Fn(GradedElement, GradedElement) -> bool) -> Vec<(BlockKey, usize, usize)> {
    let mut out = Vec::new();
    for x in b.support() {
        for y in c.support() {
            if region(x, y) {
                out.push(((x, y), b.dim(x), c.dim(y)));
            }
        }
    }
    out
}

/// Unknown witness over `(b, c)` with the variant's region and ties.
pub(crate) fn witness_unknown(builder: &mut Builder, variant: Variant, b: &BondObject, c: &BondObject) -> Unknown {
    let poset = b.poset().clone();
    builder.unknown(cells(b, c, |x, y| variant.allows(x, y)), move |k| {
        variant.tied(&poset, *k).filter(|p| p < k)
    })
}

/// Unknown morphism `b → c`: triangular with σ-tied diagonal. The
/// intertwining equations are added as well.
pub(crate) fn morphism_unknown(builder: &mut Builder, b: &BondObject, c: &BondObject) -> Unknown {
    let poset = b.poset().clone();
    let u = builder.unknown(cells(b, c, |x, y| x <= y), move |k| {
        Variant::Kappa.tied(&poset, *k).filter(|p| p < k)
    });
    let mut e = Expr::new(builder.field());
    e.add_right(&u, c.blocks(), 1);
    e.add_left(b.blocks(), &u, -1);
    builder.require_zero(&e, |_| true);
    u
}

/// Searches for a witness of `S ≃ T` (K) or `S ≡ T` (κ).
pub fn find_witness(s: &BondMorphism, t: &BondMorphism, variant: Variant) -> Result<Option<KMatrixWitness>> {
    parallel(s, t)?;
    let (b, c) = (s.source(), s.target());
    let field = b.field();
    let mut builder = Builder::new(field);
    let l = witness_unknown(&mut builder, variant, b, c);
    let mut e = Expr::new(field);
    e.add_const(s.blocks(), 1);
    e.add_const(t.blocks(), -1);
    e.add_left(b.blocks(), &l, -1);
    e.add_right(&l, c.blocks(), -1);
    builder.require_zero(&e, |_| true);
    Ok(builder.solve().map(|sol| KMatrixWitness {
        variant,
        source: b.clone(),
        target: c.clone(),
        blocks: l.value(field, &sol),
    }))
}

/// Certificate that `T: B → C` is invertible in the quotient: `U: C → B`
/// with `TU ≃ Id_B` (witness `left`) and `UT ≃ Id_C` (witness `right`).
#[derive(Clone, Debug)]
pub struct IsoCertificate {
    pub inverse: BondMorphism,
    pub left: KMatrixWitness,
    pub right: KMatrixWitness,
}

/// Solves one joint system for `U`, `L1`, `L2` with
/// `TU − Id_B = BL1 + L1B` and `UT − Id_C = CL2 + L2C`.
pub fn is_iso_in_quotient(t: &BondMorphism) -> Result<Option<IsoCertificate>> {
    let (b, c) = (t.source(), t.target());
    if same_object(b, c) && t.blocks() == &b.identity_blocks() {
        return Ok(Some(IsoCertificate {
            inverse: t.clone(),
            left: KMatrixWitness::zero(Variant::K, b, b),
            right: KMatrixWitness::zero(Variant::K, c, c),
        }));
    }
    let field = b.field();
    let mut builder = Builder::new(field);
    let u = morphism_unknown(&mut builder, c, b);
    let l1 = witness_unknown(&mut builder, Variant::K, b, b);
    let l2 = witness_unknown(&mut builder, Variant::K, c, c);

    let mut e1 = Expr::new(field);
    e1.add_left(t.blocks(), &u, 1);
    e1.add_const(&b.identity_blocks(), -1);
    e1.add_left(b.blocks(), &l1, -1);
    e1.add_right(&l1, b.blocks(), -1);
    builder.require_zero(&e1, |_| true);

    let mut e2 = Expr::new(field);
    e2.add_right(&u, t.blocks(), 1);
    e2.add_const(&c.identity_blocks(), -1);
    e2.add_left(c.blocks(), &l2, -1);
    e2.add_right(&l2, c.blocks(), -1);
    builder.require_zero(&e2, |_| true);

    let Some(sol) = builder.solve() else { return Ok(None) };
    let inverse = BondMorphism::new(c.clone(), b.clone(), u.value(field, &sol))?;
    let left = KMatrixWitness { variant: Variant::K, source: b.clone(), target: b.clone(), blocks: l1.value(field, &sol) };
    let right = KMatrixWitness { variant: Variant::K, source: c.clone(), target: c.clone(), blocks: l2.value(field, &sol) };
    Ok(Some(IsoCertificate { inverse, left, right }))
}

fn require_null(f: &BondMorphism, l: &KMatrixWitness) -> Result<()> {
    let zero = BondMorphism::zero(f.source(), f.target())?;
    let r = check_witness(f, &zero, l)?;
    if r.is_valid() {
        Ok(())
    } else {
        Err(Error::WitnessInvalid(format!("L does not certify F ≃ 0:\n{r}")))
    }
}

fn require_certificate(s: &BondMorphism, l: KMatrixWitness) -> Result<KMatrixWitness> {
    let zero = BondMorphism::zero(s.source(), s.target())?;
    let r = check_witness(s, &zero, &l)?;
    if r.is_valid() {
        Ok(l)
    } else {
        Err(Error::WitnessInvalid(format!("composed witness fails:\n{r}")))
    }
}

/// Given `F ≃ 0` via `L` and `G` composable after `F`, returns `L·G`
/// certifying `FG ≃ 0`.
pub fn is_ideal_stable(f: &BondMorphism, l: &KMatrixWitness, g: &BondMorphism) -> Result<KMatrixWitness> {
    require_null(f, l)?;
    let fg = f.compose(g)?;
    let lg = KMatrixWitness {
        variant: l.variant,
        source: f.source().clone(),
        target: g.target().clone(),
        blocks: l.blocks.try_mul(g.blocks())?,
    };
    require_certificate(&fg, lg)
}

/// Given `H` composable before `F` and `F ≃ 0` via `L`, returns `H·L`
/// certifying `HF ≃ 0`.
pub fn is_ideal_stable_left(h: &BondMorphism, f: &BondMorphism, l: &KMatrixWitness) -> Result<KMatrixWitness> {
    require_null(f, l)?;
    let hf = h.compose(f)?;
    let hl = KMatrixWitness {
        variant: l.variant,
        source: h.source().clone(),
        target: f.target().clone(),
        blocks: h.blocks().try_mul(&l.blocks)?,
    };
    require_certificate(&hf, hl)
}

/// Random valid morphism `b → c`; `free` draws the free variables.
pub fn random_morphism(b: &Arc<BondObject>, c: &Arc<BondObject>, free: impl FnMut(usize) -> Scalar) -> Result<BondMorphism> {
    let field = b.field();
    let mut builder = Builder::new(field);
    let u = morphism_unknown(&mut builder, b, c);
    let sol = builder.solve_with(free).expect("the zero morphism is a solution");
    BondMorphism::new(b.clone(), c.clone(), u.value(field, &sol))
}

/// Random morphism `b → c` of the form `BL + LC` together with `L`.
///
/// `L` is drawn among witnesses for which `BL + LC` is a morphism.
pub fn random_null_morphism(
    b: &Arc<BondObject>,
    c: &Arc<BondObject>,
    free: impl FnMut(usize) -> Scalar,
) -> Result<(BondMorphism, KMatrixWitness)> {
    let field = b.field();
    let poset = b.poset().clone();
    let mut builder = Builder::new(field);
    let l = witness_unknown(&mut builder, Variant::K, b, c);
    let mut e = Expr::new(field);
    e.add_left(b.blocks(), &l, 1);
    e.add_right(&l, c.blocks(), 1);
    // BL + LC must be triangular with σ-tied diagonal; it intertwines automatically.
    builder.require_zero(&e, |(x, y)| x > y);
    for x in b.support() {
        let sx = poset.involution(x);
        if x.base < sx.base && c.dim(x) > 0 {
            builder.require_equal(&e, (x, x), (sx, sx));
        }
    }
    let sol = builder.solve_with(free).expect("L = 0 is a solution");
    let blocks = l.value(field, &sol);
    let w = KMatrixWitness { variant: Variant::K, source: b.clone(), target: c.clone(), blocks };
    let f = b.blocks().try_mul(&w.blocks)?.try_add(&w.blocks.try_mul(c.blocks())?)?;
    Ok((BondMorphism::new(b.clone(), c.clone(), f)?, w))
}

/// Whether `S ≃ T` (or `S ≡ T`).
pub fn equivalent(s: &BondMorphism, t: &BondMorphism, variant: Variant) -> Result<bool> {
    Ok(find_witness(s, t, variant)?.is_some())
}

#[cfg(test)]
mod tests;
