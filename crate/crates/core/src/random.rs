//! Seeded random instances.
//!
//! Objects are built from stalks (zero differential, a few bands) by taking
//! cones of random morphisms; complexes from stalk complexes by taking
//! mapping cones of random chain maps. Both constructions only ever emit
//! valid data.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{BlockMatrix, BondMorphism, BondObject, DimensionVector};
use crate::complexes::{mapping_cone, random_chain_map, random_null_homotopic, ChainMap, HomotopyWitness, ProjComplex};
use crate::cones;
use crate::equiv::{random_morphism, random_null_morphism, KMatrixWitness};
use crate::error::Result;
use crate::gentle::{GentleAlgebra, Quiver};
use crate::poset::{BasePoset, GradedElement};
use crate::scalar::{Field, Scalar};

pub struct Generator {
    rng: ChaCha8Rng,
    field: Field,
}

fn scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    match field {
        Field::Prime(p) => Scalar::from_i64(field, rng.gen_range(0..p as i64)),
        Field::Rational => Scalar::from_i64(field, rng.gen_range(-3..=3)),
    }
}

impl Generator {
    pub fn new(seed: u64, field: Field) -> Generator {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed), field }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn scalar(&mut self) -> Scalar {
        scalar(&mut self.rng, self.field)
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Source of values for the free variables of an affine system.
    pub fn free(&mut self) -> impl FnMut(usize) -> Scalar + '_ {
        let field = self.field;
        move |_| scalar(&mut self.rng, field)
    }

    /// Two to four base elements, each σ-paired with probability one half.
    pub fn poset(&mut self) -> Arc<BasePoset> {
        let n = self.rng.gen_range(2..=4);
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let mut free: Vec<usize> = (0..n).collect();
        free.shuffle(&mut self.rng);
        let mut pairs = Vec::new();
        while free.len() >= 2 && self.rng.gen_bool(0.5) {
            let (a, b) = (free.pop().unwrap(), free.pop().unwrap());
            pairs.push((names[a].clone(), names[b].clone()));
        }
        Arc::new(BasePoset::new(&names, &pairs).unwrap())
    }

    /// Zero differential, band sizes 0 or 1 in degrees `lo..=hi`.
    pub fn stalk_object(&mut self, poset: &Arc<BasePoset>, lo: i64, hi: i64) -> Arc<BondObject> {
        let mut dims = DimensionVector::new();
        for base in 0..poset.len() {
            let s = poset.sigma(base);
            if s < base {
                continue;
            }
            for d in lo..=hi {
                if self.rng.gen_bool(0.4) {
                    dims.set(GradedElement::new(base, d), 1);
                    dims.set(GradedElement::new(s, d), 1);
                }
            }
        }
        Arc::new(BondObject::new(poset.clone(), self.field, dims, BlockMatrix::new()).unwrap())
    }

    pub fn morphism(&mut self, b: &Arc<BondObject>, c: &Arc<BondObject>) -> Result<BondMorphism> {
        random_morphism(b, c, self.free())
    }

    /// A null morphism `BL + LC` and its witness.
    pub fn null_morphism(&mut self, b: &Arc<BondObject>, c: &Arc<BondObject>) -> Result<(BondMorphism, KMatrixWitness)> {
        random_null_morphism(b, c, self.free())
    }

    /// `depth` rounds of taking the cone of a random morphism into the
    /// current object from a fresh stalk one degree up.
    pub fn object(&mut self, poset: &Arc<BasePoset>, depth: usize) -> Result<Arc<BondObject>> {
        let mut c = self.stalk_object(poset, 0, 1);
        for _ in 0..depth {
            let b = self.stalk_object(poset, 0, 1);
            let t = self.morphism(&b, &c)?;
            c = Arc::new(cones::cone(&t)?);
        }
        Ok(c)
    }

    /// A fresh poset with an object of depth at most two on it.
    pub fn object_on_fresh_poset(&mut self) -> Result<Arc<BondObject>> {
        let p = self.poset();
        let depth = self.rng.gen_range(0..=2);
        self.object(&p, depth)
    }

    /// A random morphism between two random objects on one poset.
    pub fn morphism_on_fresh_poset(&mut self) -> Result<BondMorphism> {
        let p = self.poset();
        let (d1, d2) = (self.rng.gen_range(0..=2), self.rng.gen_range(0..=2));
        let b = self.object(&p, d1)?;
        let c = self.object(&p, d2)?;
        self.morphism(&b, &c)
    }

    /// One of a few small gentle algebras.
    pub fn algebra(&mut self) -> Arc<GentleAlgebra> {
        Arc::new(match self.rng.gen_range(0..4) {
            0 => crate::fixtures::algebra_a1(),
            1 => crate::fixtures::algebra_a2(),
            2 => linear(true),
            _ => linear(false),
        })
    }

    /// One or two copies of a random `P_v` in a degree from `lo..=hi`.
    pub fn stalk_complex(&mut self, alg: &Arc<GentleAlgebra>, lo: i64, hi: i64) -> Arc<ProjComplex> {
        let v = self.rng.gen_range(0..alg.quiver().vertices().len());
        let j = self.rng.gen_range(lo..=hi);
        let count = if self.rng.gen_bool(0.3) { 2 } else { 1 };
        Arc::new(ProjComplex::stalk(alg.clone(), self.field, v, j, count).unwrap())
    }

    pub fn chain_map(&mut self, p: &Arc<ProjComplex>, q: &Arc<ProjComplex>) -> Result<ChainMap> {
        random_chain_map(p, q, self.free())
    }

    pub fn null_homotopic(&mut self, p: &Arc<ProjComplex>, q: &Arc<ProjComplex>) -> Result<(ChainMap, HomotopyWitness)> {
        random_null_homotopic(p, q, self.free())
    }

    /// Cones of random chain maps, `depth` rounds, starting from a stalk.
    /// Each new stalk sits in a degree where the current complex lives, so
    /// that the chain map has a chance to be nonzero.
    pub fn complex(&mut self, alg: &Arc<GentleAlgebra>, depth: usize) -> Result<Arc<ProjComplex>> {
        let mut q = self.stalk_complex(alg, 0, 1);
        for _ in 0..depth {
            let (lo, hi) = q.degree_range().unwrap_or((0, 1));
            let p = self.stalk_complex(alg, lo, hi);
            let f = self.chain_map(&p, &q)?;
            q = Arc::new(mapping_cone(&f)?.0);
        }
        Ok(q)
    }

    /// Source and target complexes of depth at most three and a chain map;
    /// half the time the map is null-homotopic by construction.
    pub fn chain_map_instance(&mut self) -> Result<ChainMap> {
        let alg = self.algebra();
        let (d1, d2) = (self.rng.gen_range(0..=3), self.rng.gen_range(0..=3));
        let p = self.complex(&alg, d1)?;
        let q = self.complex(&alg, d2)?;
        if self.rng.gen_bool(0.5) {
            Ok(self.null_homotopic(&p, &q)?.0)
        } else {
            self.chain_map(&p, &q)
        }
    }
}

/// `1 → 2 → 3` along `a`, `b`, with `ab = 0` if `relation`.
fn linear(relation: bool) -> GentleAlgebra {
    let q = Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
    let rel: &[(&str, &str)] = if relation { &[("a", "b")] } else { &[] };
    GentleAlgebra::new(q, rel, None).unwrap()
}
