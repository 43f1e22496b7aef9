//! Exact Gaussian elimination for sparse affine systems.
//!
//! Equations are absorbed one at a time into an echelon basis; each new row
//! is reduced against the existing pivots and, if anything survives, its
//! first nonzero column becomes a new pivot. Free variables default to zero.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{inv_mod, Field, Scalar};
use crate::error::{Error, Result};

/// Sparse affine system `Σ a_k x_k = b`.
#[derive(Clone, Debug)]
pub struct AffineSystem {
    field: Field,
    unknowns: usize,
    rows: Vec<(Vec<(usize, Scalar)>, Scalar)>,
}

impl AffineSystem {
    pub fn new(field: Field, unknowns: usize) -> AffineSystem {
        AffineSystem { field, unknowns, rows: Vec::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> usize {
        self.rows.len()
    }

    /// Adds `Σ coeffs = rhs`. Repeated indices are summed.
    pub fn push(&mut self, coeffs: Vec<(usize, Scalar)>, rhs: Scalar) {
        debug_assert!(coeffs.iter().all(|(k, _)| *k < self.unknowns));
        self.rows.push((coeffs, rhs));
    }

    /// Canonical solution (free variables zero) or `None` if inconsistent.
    pub fn solve(&self) -> Option<Vec<Scalar>> {
        let field = self.field;
        self.solve_with(|_| Scalar::zero(field))
    }

    /// Solution with free variable `k` set to `free(k)`.
    pub fn solve_with(&self, free: impl FnMut(usize) -> Scalar) -> Option<Vec<Scalar>> {
        match self.field {
            Field::Prime(p) => eliminate(&ModP(p), self, free),
            Field::Rational => eliminate(&Rat, self, free),
        }
    }

    /// Checks an assignment against every equation.
    pub fn satisfied_by(&self, x: &[Scalar]) -> bool {
        self.rows.iter().all(|(coeffs, rhs)| {
            let mut acc = Scalar::zero(self.field);
            for (k, a) in coeffs {
                acc = &acc + &(a * &x[*k]);
            }
            &acc == rhs
        })
    }
}

/// Dense front end: each row is `(coefficients, rhs)` with one coefficient
/// per unknown.
pub fn solve_affine(field: Field, system: &[(Vec<Scalar>, Scalar)], unknowns: usize) -> Result<Option<Vec<Scalar>>> {
    let mut sys = AffineSystem::new(field, unknowns);
    for (i, (row, rhs)) in system.iter().enumerate() {
        if row.len() != unknowns {
            return Err(Error::DimensionMismatch(format!(
                "equation {i} has {} coefficients, expected {unknowns}",
                row.len()
            )));
        }
        let coeffs = row
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| (k, a.clone()))
            .collect();
        sys.push(coeffs, rhs.clone());
    }
    Ok(sys.solve())
}

trait Arith {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn lift(&self, s: &Scalar) -> Self::E;
    fn lower(&self, e: Self::E) -> Scalar;
}

struct ModP(u64);

impl Arith for ModP {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.0)
    }
    fn lift(&self, s: &Scalar) -> u64 {
        match s {
            Scalar::Prime { value, modulus } if *modulus == self.0 => *value,
            _ => panic!("field mismatch in solver"),
        }
    }
    fn lower(&self, e: u64) -> Scalar {
        Scalar::Prime { value: e, modulus: self.0 }
    }
}

struct Rat;

impl Arith for Rat {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }
    fn lift(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Rational(q) => q.clone(),
            _ => panic!("field mismatch in solver"),
        }
    }
    fn lower(&self, e: BigRational) -> Scalar {
        Scalar::Rational(e)
    }
}

struct PivotRow<E> {
    /// Entries strictly right of the pivot (the pivot coefficient is 1).
    tail: Vec<(usize, E)>,
    rhs: E,
}

fn eliminate<A: Arith>(
    ar: &A,
    sys: &AffineSystem,
    mut free: impl FnMut(usize) -> Scalar,
) -> Option<Vec<Scalar>> {
    let n = sys.unknowns;
    let mut pivots: Vec<Option<PivotRow<A::E>>> = (0..n).map(|_| None).collect();

    for (coeffs, rhs) in &sys.rows {
        let mut work: BTreeMap<usize, A::E> = BTreeMap::new();
        for (k, a) in coeffs {
            let a = ar.lift(a);
            let e = work.entry(*k).or_insert_with(|| ar.zero());
            *e = ar.add(e, &a);
        }
        work.retain(|_, v| !ar.is_zero(v));
        let mut b = ar.lift(rhs);

        let mut lead = None;
        while let Some((&c, coef)) = work.iter().next() {
            let coef = coef.clone();
            match &pivots[c] {
                Some(row) => {
                    work.remove(&c);
                    for (k, v) in &row.tail {
                        let e = work.entry(*k).or_insert_with(|| ar.zero());
                        *e = ar.sub(e, &ar.mul(&coef, v));
                        if ar.is_zero(e) {
                            work.remove(k);
                        }
                    }
                    b = ar.sub(&b, &ar.mul(&coef, &row.rhs));
                }
                None => {
                    lead = Some((c, coef));
                    break;
                }
            }
        }

        match lead {
            None => {
                if !ar.is_zero(&b) {
                    return None;
                }
            }
            Some((c, coef)) => {
                let inv = ar.inv(&coef);
                work.remove(&c);
                let tail = work.into_iter().map(|(k, v)| (k, ar.mul(&inv, &v))).collect();
                pivots[c] = Some(PivotRow { tail, rhs: ar.mul(&inv, &b) });
            }
        }
    }

    let mut x: Vec<A::E> = vec![ar.zero(); n];
    for (k, p) in pivots.iter().enumerate() {
        if p.is_none() {
            x[k] = ar.lift(&free(k));
        }
    }
    for k in (0..n).rev() {
        if let Some(row) = &pivots[k] {
            let mut v = row.rhs.clone();
            for (j, a) in &row.tail {
                v = ar.sub(&v, &ar.mul(a, &x[*j]));
            }
            x[k] = v;
        }
    }
    Some(x.into_iter().map(|e| ar.lower(e)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(f: Field, n: i64) -> Scalar {
        Scalar::from_i64(f, n)
    }

    #[test]
    fn two_by_two() {
        let q = Field::Rational;
        let sys = vec![
            (vec![s(q, 1), s(q, 1)], s(q, 2)),
            (vec![s(q, 1), s(q, -1)], s(q, 0)),
        ];
        assert_eq!(solve_affine(q, &sys, 2).unwrap(), Some(vec![s(q, 1), s(q, 1)]));
    }

    #[test]
    fn contradiction() {
        let q = Field::Rational;
        let sys = vec![(vec![s(q, 0)], s(q, 1))];
        assert_eq!(solve_affine(q, &sys, 1).unwrap(), None);
    }

    #[test]
    fn empty_system_is_zero() {
        let f = Field::Prime(5);
        assert_eq!(solve_affine(f, &[], 3).unwrap(), Some(vec![s(f, 0); 3]));
    }

    #[test]
    fn ragged_rows_rejected() {
        let q = Field::Rational;
        assert!(solve_affine(q, &[(vec![s(q, 1)], s(q, 1))], 2).is_err());
    }

    #[test]
    fn free_variables_follow_callback() {
        let f = Field::Prime(7);
        let mut sys = AffineSystem::new(f, 3);
        sys.push(vec![(0, s(f, 1)), (2, s(f, 1))], s(f, 3));
        let x = sys.solve_with(|k| s(f, k as i64 + 1)).unwrap();
        // x1, x2 free; x0 = 3 - x2
        assert_eq!(x, vec![s(f, 0), s(f, 2), s(f, 3)]);
        assert!(sys.satisfied_by(&x));
        assert_eq!(sys.solve().unwrap(), vec![s(f, 3), s(f, 0), s(f, 0)]);
    }

    fn random_system(
        coeffs: &[Vec<i64>],
        x0: &[i64],
        f: Field,
    ) -> (AffineSystem, Vec<(Vec<Scalar>, Scalar)>) {
        let n = x0.len();
        let mut sys = AffineSystem::new(f, n);
        let mut dense = Vec::new();
        for row in coeffs {
            let rhs: i64 = row.iter().zip(x0).map(|(a, b)| a * b).sum();
            sys.push(
                row.iter().enumerate().map(|(k, a)| (k, s(f, *a))).collect(),
                s(f, rhs),
            );
            dense.push((row.iter().map(|a| s(f, *a)).collect(), s(f, rhs)));
        }
        (sys, dense)
    }

    proptest! {
        #[test]
        fn consistent_systems_are_solved(
            (coeffs, x0) in (1usize..6, 1usize..7).prop_flat_map(|(n, m)| (
                prop::collection::vec(prop::collection::vec(-3i64..4, n), m),
                prop::collection::vec(-4i64..5, n),
            ))
        ) {
            for f in [Field::Rational, Field::Prime(5), Field::Prime(2)] {
                let (sys, _) = random_system(&coeffs, &x0, f);
                let x = sys.solve().expect("built from a known solution");
                prop_assert!(sys.satisfied_by(&x));
            }
        }

        #[test]
        fn rational_and_prime_agree(
            (coeffs, rhs) in (1usize..5, 1usize..6).prop_flat_map(|(n, m)| (
                prop::collection::vec(prop::collection::vec(-2i64..3, n), m),
                prop::collection::vec(-2i64..3, m),
            ))
        ) {
            let q = Field::Rational;
            let n = coeffs[0].len();
            let mut sys = AffineSystem::new(q, n);
            for (row, b) in coeffs.iter().zip(&rhs) {
                sys.push(row.iter().enumerate().map(|(k, a)| (k, s(q, *a))).collect(), s(q, *b));
            }
            if let Some(x) = sys.solve() {
                let coprime = x.iter().all(|v| match v {
                    Scalar::Rational(r) => {
                        let d = r.denom();
                        (d % num_bigint::BigInt::from(7)) != num_bigint::BigInt::from(0)
                    }
                    _ => unreachable!(),
                });
                if coprime {
                    let f = Field::Prime(7);
                    let mut sys7 = AffineSystem::new(f, n);
                    for (row, b) in coeffs.iter().zip(&rhs) {
                        sys7.push(row.iter().enumerate().map(|(k, a)| (k, s(f, *a))).collect(), s(f, *b));
                    }
                    prop_assert!(sys7.solve().is_some());
                }
            }
        }
    }
}
