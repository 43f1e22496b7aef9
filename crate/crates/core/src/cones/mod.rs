//! Cones, standard triangles, rotation, the fill-in of a square and the
//! octahedral configuration.
//!
//! Inside each graded element of `Ω_T` the `⟦B⟧` bands come first, then
//! the `C` bands:
//!
//! ```text
//! Ω_T(x, y) = [ −B(x+1, y+1)   T(x+1, y) ]
//!             [      0          C(x, y)  ]
//! ```

mod layout;

use std::sync::Arc;

use crate::category::{same_object, BondMorphism, BondObject};
use crate::equiv::{check_witness, KMatrixWitness, Variant};
use crate::error::{Error, Result};
use crate::report::{Condition, Report};

use layout::{assemble, entry, object, Layout};

fn cone_layout(t: &BondMorphism) -> Layout {
    Layout::new(&[(t.source(), 1), (t.target(), 0)])
}

/// The cone `Ω_T` of `T: B → C`.
pub fn cone(t: &BondMorphism) -> Result<BondObject> {
    let (b, c) = (t.source(), t.target());
    let l = cone_layout(t);
    let blocks = assemble(
        b.field(),
        &l,
        &l,
        &[entry(0, 0, b.blocks(), -1), entry(0, 1, t.blocks(), 1), entry(1, 1, c.blocks(), 1)],
    )?;
    object(b, &l, blocks)
}

fn inclusion_into(t: &BondMorphism, omega: &Arc<BondObject>) -> Result<BondMorphism> {
    let c = t.target();
    let id = c.identity_blocks();
    let blocks = assemble(c.field(), &Layout::new(&[(c, 0)]), &cone_layout(t), &[entry(0, 1, &id, 1)])?;
    BondMorphism::new(c.clone(), omega.clone(), blocks)
}

fn projection_from(t: &BondMorphism, omega: &Arc<BondObject>, shifted_b: &Arc<BondObject>) -> Result<BondMorphism> {
    let b = t.source();
    let id = b.identity_blocks();
    let blocks = assemble(b.field(), &cone_layout(t), &Layout::new(&[(b, 1)]), &[entry(0, 0, &id, 1)])?;
    BondMorphism::new(omega.clone(), shifted_b.clone(), blocks)
}

/// `ι_C = [0 | Id_C]: C → Ω_T`.
pub fn inclusion(t: &BondMorphism) -> Result<BondMorphism> {
    inclusion_into(t, &Arc::new(cone(t)?))
}

/// `π_{⟦B⟧} = [Id_B ; 0]: Ω_T → ⟦B⟧`.
pub fn projection(t: &BondMorphism) -> Result<BondMorphism> {
    projection_from(t, &Arc::new(cone(t)?), &Arc::new(t.source().shift()?))
}

/// A sextuple `(X, Y, Z, u, v, w)` with `u: X → Y`, `v: Y → Z`, `w: Z → ⟦X⟧`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub x: Arc<BondObject>,
    pub y: Arc<BondObject>,
    pub z: Arc<BondObject>,
    pub u: BondMorphism,
    pub v: BondMorphism,
    pub w: BondMorphism,
}

impl Triangle {
    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        let shifted = self.x.shift().ok().map(Arc::new);
        let ends = [
            ("u", &self.u, &self.x, Some(&self.y)),
            ("v", &self.v, &self.y, Some(&self.z)),
            ("w", &self.w, &self.z, shifted.as_ref()),
        ];
        for (name, m, s, t) in ends {
            if !same_object(m.source(), s) || !t.is_some_and(|t| same_object(m.target(), t)) {
                r.push(Condition::Endpoints, name);
            }
            for v in m.validate().violations {
                r.push(v.condition, format!("{name}: {}", v.location));
            }
        }
        r
    }
}

/// `B →T C →ι Ω_T →π ⟦B⟧`.
pub fn standard_triangle(t: &BondMorphism) -> Result<Triangle> {
    let omega = Arc::new(cone(t)?);
    let shifted = Arc::new(t.source().shift()?);
    Ok(Triangle {
        x: t.source().clone(),
        y: t.target().clone(),
        z: omega.clone(),
        u: t.clone(),
        v: inclusion_into(t, &omega)?,
        w: projection_from(t, &omega, &shifted)?,
    })
}

/// Data showing that the rotated triangle `C → Ω_T → ⟦B⟧ → ⟦C⟧` is
/// isomorphic to the standard triangle on `ι_C`.
#[derive(Clone, Debug)]
pub struct Rotation {
    /// `R = [−T, Id_B, 0]: ⟦B⟧ → Ω_{ι_C}`.
    pub r: BondMorphism,
    /// `S = [0; Id_B; 0]: Ω_{ι_C} → ⟦B⟧`.
    pub s: BondMorphism,
    /// Certifies `π_{⟦C⟧} ≃ −S·⟦T⟧`.
    pub l_comm: KMatrixWitness,
    /// Certifies `Id ≃ S·R` on `Ω_{ι_C}`.
    pub l_inv: KMatrixWitness,
    /// `(C, Ω_T, ⟦B⟧, ι_C, π_{⟦B⟧}, −⟦T⟧)`.
    pub rotated: Triangle,
    /// The standard triangle on `ι_C`.
    pub standard: Triangle,
}

pub fn rotation_witnesses(t: &BondMorphism) -> Result<Rotation> {
    let (b, c) = (t.source(), t.target());
    let field = b.field();
    let first = standard_triangle(t)?;
    let iota = first.v.clone();
    let standard = standard_triangle(&iota)?;
    let big = standard.z.clone();
    let shifted_b = first.w.target().clone();
    let shifted_c = standard.w.target().clone();

    let three = Layout::new(&[(c, 1), (b, 1), (c, 0)]);
    let sb = Layout::new(&[(b, 1)]);
    let sc = Layout::new(&[(c, 1)]);
    let id_b = b.identity_blocks();
    let id_c = c.identity_blocks();

    let r = BondMorphism::new(
        shifted_b.clone(),
        big.clone(),
        assemble(field, &sb, &three, &[entry(0, 0, t.blocks(), -1), entry(0, 1, &id_b, 1)])?,
    )?;
    let s = BondMorphism::new(big.clone(), shifted_b.clone(), assemble(field, &three, &sb, &[entry(1, 0, &id_b, 1)])?)?;
    let l_comm =
        KMatrixWitness::new(Variant::K, big.clone(), shifted_c, assemble(field, &three, &sc, &[entry(2, 0, &id_c, 1)])?)?;
    let l_inv = KMatrixWitness::new(Variant::K, big.clone(), big, assemble(field, &three, &three, &[entry(2, 0, &id_c, 1)])?)?;

    let rotated = Triangle {
        x: c.clone(),
        y: first.z.clone(),
        z: shifted_b,
        u: iota,
        v: first.w.clone(),
        w: t.shift()?.neg(),
    };
    Ok(Rotation { r, s, l_comm, l_inv, rotated, standard })
}

/// Given a square `F·T2 ≃ T·G` certified by `L`
/// (`F·T2 − T·G = B·L + L·C'`), returns `H: Ω_T → Ω_{T2}` with
/// `H = [[F, −L], [0, G]]`.
pub fn tr3_fill(
    t: &BondMorphism,
    t2: &BondMorphism,
    f: &BondMorphism,
    g: &BondMorphism,
    l: &KMatrixWitness,
) -> Result<BondMorphism> {
    let ft2 = f.compose(t2)?;
    let tg = t.compose(g)?;
    let report = check_witness(&ft2, &tg, l)?;
    if l.variant() != Variant::K || !report.is_valid() {
        return Err(Error::WitnessInvalid(format!("L does not certify F·T2 ≃ T·G:\n{report}")));
    }
    let field = t.source().field();
    let omega = Arc::new(cone(t)?);
    let omega2 = Arc::new(cone(t2)?);
    let blocks = assemble(
        field,
        &cone_layout(t),
        &cone_layout(t2),
        &[entry(0, 0, f.blocks(), 1), entry(0, 1, l.blocks(), -1), entry(1, 1, g.blocks(), 1)],
    )?;
    BondMorphism::new(omega, omega2, blocks)
}

/// The octahedral configuration for `S: B → C`, `T: C → D`.
#[derive(Clone, Debug)]
pub struct Octahedron {
    pub omega_s: Arc<BondObject>,
    pub omega_st: Arc<BondObject>,
    pub omega_t: Arc<BondObject>,
    /// `Ω_F`, the cone of `F`.
    pub omega_f: Arc<BondObject>,
    /// `F = [[Id_B, 0], [0, T]]: Ω_S → Ω_{ST}`.
    pub f: BondMorphism,
    /// `G = [[S, 0], [0, Id_D]]: Ω_{ST} → Ω_T`.
    pub g: BondMorphism,
    /// `Λ: Ω_T → Ω_F`.
    pub lambda: BondMorphism,
    /// Certifies `ι_{Ω_{ST}} ≃ G·Λ`.
    pub l_rot: KMatrixWitness,
    /// Inverse of `Λ` in the quotient; `Λ·Λ' = Id` exactly.
    pub lambda_inverse: BondMorphism,
    /// Certifies `Id ≃ Λ'·Λ` on `Ω_F`.
    pub l_comm: KMatrixWitness,
}

pub fn octahedron(s: &BondMorphism, t: &BondMorphism) -> Result<Octahedron> {
    let st = s.compose(t)?;
    let (b, c, d) = (s.source(), s.target(), t.target());
    let field = b.field();
    let omega_s = Arc::new(cone(s)?);
    let omega_st = Arc::new(cone(&st)?);
    let omega_t = Arc::new(cone(t)?);
    let ls = cone_layout(s);
    let lst = cone_layout(&st);
    let lt = cone_layout(t);
    let lf = Layout::new(&[(b, 2), (c, 1), (b, 1), (d, 0)]);
    let (id_b, id_c, id_d) = (b.identity_blocks(), c.identity_blocks(), d.identity_blocks());

    let f = BondMorphism::new(
        omega_s.clone(),
        omega_st.clone(),
        assemble(field, &ls, &lst, &[entry(0, 0, &id_b, 1), entry(1, 1, t.blocks(), 1)])?,
    )?;
    let g = BondMorphism::new(
        omega_st.clone(),
        omega_t.clone(),
        assemble(field, &lst, &lt, &[entry(0, 0, s.blocks(), 1), entry(1, 1, &id_d, 1)])?,
    )?;
    let omega_f = Arc::new(cone(&f)?);
    let lambda = BondMorphism::new(
        omega_t.clone(),
        omega_f.clone(),
        assemble(field, &lt, &lf, &[entry(0, 1, &id_c, 1), entry(1, 3, &id_d, 1)])?,
    )?;
    let l_rot = KMatrixWitness::new(
        Variant::K,
        omega_st.clone(),
        omega_f.clone(),
        assemble(field, &lst, &lf, &[entry(0, 0, &id_b, 1)])?,
    )?;
    let lambda_inverse = BondMorphism::new(
        omega_f.clone(),
        omega_t.clone(),
        assemble(field, &lf, &lt, &[entry(1, 0, &id_c, 1), entry(2, 0, s.blocks(), 1), entry(3, 1, &id_d, 1)])?,
    )?;
    let l_comm = KMatrixWitness::new(
        Variant::K,
        omega_f.clone(),
        omega_f.clone(),
        assemble(field, &lf, &lf, &[entry(2, 0, &id_b, 1)])?,
    )?;
    Ok(Octahedron { omega_s, omega_st, omega_t, omega_f, f, g, lambda, l_rot, lambda_inverse, l_comm })
}

/// `L = [[0, 0], [Id_B, 0]]` on `Ω_{Id_B}`, certifying `Id ≃ 0` there.
pub fn omega_identity_witness(b: &Arc<BondObject>) -> Result<(Arc<BondObject>, KMatrixWitness)> {
    let id = BondMorphism::identity(b);
    let omega = Arc::new(cone(&id)?);
    let l = cone_layout(&id);
    let blocks = assemble(b.field(), &l, &l, &[entry(1, 0, &b.identity_blocks(), 1)])?;
    let w = KMatrixWitness::new(Variant::K, omega.clone(), omega.clone(), blocks)?;
    Ok((omega, w))
}

#[cfg(test)]
mod tests;
