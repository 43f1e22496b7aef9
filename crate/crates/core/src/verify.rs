//! The randomized verification battery.
//!
//! Each criterion runs independent trials in parallel; trial `i` of
//! criterion `c` draws from its own generator seeded by `(seed, c, i)`, so
//! results do not depend on scheduling.

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use crate::category::{BondMorphism, BondObject};
use crate::cones;
use crate::equiv::{check_witness, find_witness, is_ideal_stable, is_ideal_stable_left, is_iso_in_quotient, Variant};
use crate::error::Error;
use crate::fixtures;
use crate::functor::Functor;
use crate::oracle;
use crate::random::Generator;
use crate::report::Report;
use crate::scalar::Field;

/// Result of one criterion.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub criterion: u8,
    pub name: &'static str,
    pub trials: usize,
    pub failures: Vec<String>,
    /// Free-form statistics, e.g. how many decisions were positive.
    pub note: String,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub seed: u64,
    /// Field for criteria 3 to 9; criterion 10 always runs over GF(2).
    pub field: Field,
    /// Overrides every criterion's default trial count.
    pub trials: Option<usize>,
}

impl Default for Config {
    fn default() -> Config {
        Config { seed: 1, field: Field::Prime(5), trials: None }
    }
}

type Trial = std::result::Result<Option<bool>, String>;

fn err(e: Error) -> String {
    e.to_string()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn valid(r: Report, what: &str) -> std::result::Result<(), String> {
    ensure(r.is_valid(), || format!("{what}: {r}"))
}

fn trial_seed(seed: u64, criterion: u8, i: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((criterion as u64) << 48) ^ i as u64
}

/// Runs `trials` trials. A trial may return `Some(flag)` to be tallied in
/// the note as yes/no.
fn run(
    config: &Config,
    criterion: u8,
    name: &'static str,
    default_trials: usize,
    field: Field,
    trial: impl Fn(&mut Generator) -> Trial + Sync,
) -> Outcome {
    let trials = config.trials.unwrap_or(default_trials);
    let results: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|i| trial(&mut Generator::new(trial_seed(config.seed, criterion, i), field)))
        .collect();
    let mut failures = Vec::new();
    let (mut yes, mut no) = (0, 0);
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(Some(true)) => yes += 1,
            Ok(Some(false)) => no += 1,
            Ok(None) => {}
            Err(e) => failures.push(format!("trial {i}: {e}")),
        }
    }
    let note = if yes + no > 0 { format!("yes {yes}, no {no}") } else { String::new() };
    Outcome { criterion, name, trials, failures, note }
}

fn identity_cone_witness(b: &Arc<BondObject>) -> std::result::Result<(), String> {
    let (omega, l) = cones::omega_identity_witness(b).map_err(err)?;
    let id = BondMorphism::identity(&omega);
    let zero = BondMorphism::zero(&omega, &omega).map_err(err)?;
    valid(check_witness(&id, &zero, &l).map_err(err)?, "Id ≃ 0 on the cone of the identity")
}

pub fn omega_identity(config: &Config) -> Outcome {
    let mut out = run(config, 3, "cone of identity is null", 20, config.field, |g| {
        let b = g.object_on_fresh_poset().map_err(err)?;
        identity_cone_witness(&b).map(|_| None)
    });
    if let Err(e) = identity_cone_witness(&fixtures::four_point_triangle().b) {
        out.failures.push(format!("four-point B: {e}"));
    }
    out
}

pub fn rotation(config: &Config) -> Outcome {
    run(config, 4, "rotation", 50, config.field, |g| {
        let t = g.morphism_on_fresh_poset().map_err(err)?;
        let rot = cones::rotation_witnesses(&t).map_err(err)?;
        valid(rot.r.validate(), "R")?;
        valid(rot.s.validate(), "S")?;
        let rs = rot.r.compose(&rot.s).map_err(err)?;
        ensure(rs == BondMorphism::identity(rot.r.source()), || "R·S ≠ Id".into())?;
        let st = rot.s.compose(&t.shift().map_err(err)?).map_err(err)?.neg();
        valid(check_witness(&rot.standard.w, &st, &rot.l_comm).map_err(err)?, "L_comm")?;
        let id = BondMorphism::identity(&rot.standard.z);
        let sr = rot.s.compose(&rot.r).map_err(err)?;
        valid(check_witness(&id, &sr, &rot.l_inv).map_err(err)?, "L_inv")?;
        Ok(None)
    })
}

pub fn fill_in(config: &Config) -> Outcome {
    run(config, 5, "fill-in of a square", 50, config.field, |g| {
        let p = g.poset();
        let b = g.object(&p, 1).map_err(err)?;
        let c = g.object(&p, 1).map_err(err)?;
        let c2 = g.object(&p, 0).map_err(err)?;
        let t = g.morphism(&b, &c).map_err(err)?;
        let gm = g.morphism(&c, &c2).map_err(err)?;
        let lambda = g.nonzero_scalar();
        let f = BondMorphism::identity(&b).scale(&lambda);
        let (n, l) = g.null_morphism(&b, &c2).map_err(err)?;
        // F·T2 = T·G + N with N = BL + LC'
        let t2 = t.compose(&gm).and_then(|tg| tg.add(&n)).map_err(err)?.scale(&lambda.inv().expect("nonzero"));
        let h = cones::tr3_fill(&t, &t2, &f, &gm, &l).map_err(err)?;
        valid(h.validate(), "H")?;
        let (i1, i2) = (cones::inclusion(&t).map_err(err)?, cones::inclusion(&t2).map_err(err)?);
        ensure(gm.compose(&i2).map_err(err)? == i1.compose(&h).map_err(err)?, || "G·ι ≠ ι·H".into())?;
        let (p1, p2) = (cones::projection(&t).map_err(err)?, cones::projection(&t2).map_err(err)?);
        let lhs = p1.compose(&f.shift().map_err(err)?).map_err(err)?;
        ensure(lhs == h.compose(&p2).map_err(err)?, || "π·⟦F⟧ ≠ H·π".into())?;
        Ok(None)
    })
}

pub fn octahedron(config: &Config) -> Outcome {
    run(config, 6, "octahedron", 30, config.field, |g| {
        let p = g.poset();
        let b = g.object(&p, 1).map_err(err)?;
        let c = g.object(&p, 0).map_err(err)?;
        let d = g.object(&p, 1).map_err(err)?;
        let s = g.morphism(&b, &c).map_err(err)?;
        let t = g.morphism(&c, &d).map_err(err)?;
        let oct = cones::octahedron(&s, &t).map_err(err)?;
        valid(oct.f.validate(), "F")?;
        valid(oct.g.validate(), "G")?;
        valid(oct.lambda.validate(), "Λ")?;
        let pi_f = cones::projection(&oct.f).map_err(err)?;
        let pi_t = cones::projection(&t).map_err(err)?;
        let iota_s = cones::inclusion(&s).and_then(|i| i.shift()).map_err(err)?;
        ensure(
            oct.lambda.compose(&pi_f).map_err(err)?.blocks() == pi_t.compose(&iota_s).map_err(err)?.blocks(),
            || "Λ·π ≠ π·⟦ι⟧".into(),
        )?;
        let iota_st = cones::inclusion(&oct.f).map_err(err)?;
        let g_lambda = oct.g.compose(&oct.lambda).map_err(err)?;
        valid(check_witness(&iota_st, &g_lambda, &oct.l_rot).map_err(err)?, "ι ≃ GΛ")?;
        ensure(is_iso_in_quotient(&oct.lambda).map_err(err)?.is_some(), || "Λ is not invertible in the quotient".into())?;
        Ok(None)
    })
}

pub fn functor_compat(config: &Config) -> Outcome {
    run(config, 7, "functor: cones and shift", 50, config.field, |g| {
        let phi = g.chain_map_instance().map_err(err)?;
        valid(phi.validate(), "generated chain map")?;
        let f = Functor::new(phi.source().algebra().clone()).map_err(err)?;
        valid(f.check_cone_compat(&phi).map_err(err)?, "cone")?;
        valid(f.check_shift_compat(phi.source(), Some(&phi)).map_err(err)?, "shift")?;
        valid(f.check_shift_compat(phi.target(), None).map_err(err)?, "shift of target")?;
        Ok(None)
    })
}

pub fn homotopy_equiv(config: &Config) -> Outcome {
    run(config, 8, "homotopy vs K-matrix decisions", 100, config.field, |g| {
        let phi = g.chain_map_instance().map_err(err)?;
        let f = Functor::new(phi.source().algebra().clone()).map_err(err)?;
        let d = f.check_homotopy_equiv(&phi).map_err(err)?;
        valid(d.report, "witness translation")?;
        if let Some(s) = &d.homotopy {
            let zero = crate::complexes::ChainMap::zero(phi.source(), phi.target()).map_err(err)?;
            ensure(oracle::homotopy_holds(&phi, &zero, s), || "flattened homotopy check failed".into())?;
        }
        Ok(Some(d.homotopic))
    })
}

pub fn ideal(config: &Config) -> Outcome {
    run(config, 9, "null morphisms form an ideal", 30, config.field, |g| {
        let p = g.poset();
        let a = g.object(&p, 0).map_err(err)?;
        let b = g.object(&p, 1).map_err(err)?;
        let c = g.object(&p, 1).map_err(err)?;
        let d = g.object(&p, 0).map_err(err)?;
        let (f, l) = g.null_morphism(&b, &c).map_err(err)?;
        let gm = g.morphism(&c, &d).map_err(err)?;
        let h = g.morphism(&a, &b).map_err(err)?;
        let lg = is_ideal_stable(&f, &l, &gm).map_err(err)?;
        let fg = f.compose(&gm).map_err(err)?;
        valid(check_witness(&fg, &BondMorphism::zero(fg.source(), fg.target()).map_err(err)?, &lg).map_err(err)?, "FG ≃ 0")?;
        let hl = is_ideal_stable_left(&h, &f, &l).map_err(err)?;
        let hf = h.compose(&f).map_err(err)?;
        valid(check_witness(&hf, &BondMorphism::zero(hf.source(), hf.target()).map_err(err)?, &hl).map_err(err)?, "HF ≃ 0")?;
        Ok(None)
    })
}

/// Largest witness size the enumeration oracle accepts.
pub const ORACLE_UNKNOWNS: usize = 12;

pub fn solver_oracle(config: &Config) -> Outcome {
    run(config, 10, "solver vs exhaustive GF(2) oracle", 200, Field::Prime(2), |g| {
        for _ in 0..500 {
            let p = g.poset();
            let (d1, d2) = (g.rng().gen_range(0..=1), g.rng().gen_range(0..=1));
            let b = g.object(&p, d1).map_err(err)?;
            let c = g.object(&p, d2).map_err(err)?;
            let s = g.morphism(&b, &c).map_err(err)?;
            let t = if g.rng().gen_bool(0.5) {
                s.add(&g.null_morphism(&b, &c).map_err(err)?.0).map_err(err)?
            } else {
                g.morphism(&b, &c).map_err(err)?
            };
            let variant = if g.rng().gen_bool(0.5) { Variant::K } else { Variant::Kappa };
            let Some(brute) = oracle::brute_force_witness(&s, &t, variant, ORACLE_UNKNOWNS) else { continue };
            let solved = find_witness(&s, &t, variant).map_err(err)?;
            if let Some(l) = &solved {
                valid(check_witness(&s, &t, l).map_err(err)?, "returned witness")?;
            }
            ensure(solved.is_some() == brute, || format!("{variant}: solver says {}, oracle says {brute}", solved.is_some()))?;
            return Ok(Some(brute));
        }
        Err(format!("no instance with at most {ORACLE_UNKNOWNS} unknowns"))
    })
}

/// Criteria 3 to 10 in order.
pub fn run_all(config: &Config) -> Vec<Outcome> {
    vec![
        omega_identity(config),
        rotation(config),
        fill_in(config),
        octahedron(config),
        functor_compat(config),
        homotopy_equiv(config),
        ideal(config),
        solver_oracle(config),
    ]
}
