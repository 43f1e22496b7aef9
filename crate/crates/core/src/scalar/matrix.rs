use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Field, Scalar};
use crate::error::{Error, Result};

/// Row-major dense matrix. Zero rows or zero columns are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Entries,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Entries {
    Rational(Vec<BigRational>),
    Prime { p: u64, v: Vec<u64> },
}

impl DenseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> DenseMatrix {
        let n = rows * cols;
        let data = match field {
            Field::Rational => Entries::Rational(vec![BigRational::zero(); n]),
            Field::Prime(p) => Entries::Prime { p, v: vec![0; n] },
        };
        DenseMatrix { rows, cols, data }
    }

    pub fn identity(field: Field, n: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, &Scalar::one(field));
        }
        m
    }

    /// Builds from integer rows; all rows must have the same length.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> DenseMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = DenseMatrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged integer rows");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, &Scalar::from_i64(field, x));
            }
        }
        m
    }

    /// Builds from scalar rows. `cols` disambiguates the zero-row case.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<DenseMatrix> {
        let mut m = DenseMatrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for (j, x) in r.iter().enumerate() {
                if x.field() != field {
                    return Err(Error::FieldMismatch);
                }
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> Field {
        match &self.data {
            Entries::Rational(_) => Field::Rational,
            Entries::Prime { p, .. } => Field::Prime(*p),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let k = r * self.cols + c;
        match &self.data {
            Entries::Rational(v) => Scalar::Rational(v[k].clone()),
            Entries::Prime { p, v } => Scalar::Prime { value: v[k], modulus: *p },
        }
    }

    pub fn set(&mut self, r: usize, c: usize, x: &Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let k = r * self.cols + c;
        match (&mut self.data, x) {
            (Entries::Rational(v), Scalar::Rational(q)) => v[k] = q.clone(),
            (Entries::Prime { p, v }, Scalar::Prime { value, modulus }) if p == modulus => v[k] = *value,
            _ => panic!("field mismatch: {} vs {}", self.field(), x.field()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Entries::Rational(v) => v.iter().all(Zero::is_zero),
            Entries::Prime { v, .. } => v.iter().all(|&x| x == 0),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j { x.is_one() } else { x.is_zero() }
                })
            })
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn try_mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let data = match (&self.data, &other.data) {
            (Entries::Rational(a), Entries::Rational(b)) => {
                let mut out = vec![BigRational::zero(); n * m];
                for i in 0..n {
                    for l in 0..k {
                        let x = &a[i * k + l];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            let y = &b[l * m + j];
                            if !y.is_zero() {
                                out[i * m + j] += x * y;
                            }
                        }
                    }
                }
                Entries::Rational(out)
            }
            (Entries::Prime { p, v: a }, Entries::Prime { p: q, v: b }) if p == q => {
                let p = *p;
                let mut out = vec![0u64; n * m];
                for i in 0..n {
                    for l in 0..k {
                        let x = a[i * k + l];
                        if x == 0 {
                            continue;
                        }
                        for j in 0..m {
                            out[i * m + j] = (out[i * m + j] + x * b[l * m + j]) % p;
                        }
                    }
                }
                Entries::Prime { p, v: out }
            }
            _ => return Err(Error::FieldMismatch),
        };
        Ok(DenseMatrix { rows: n, cols: m, data })
    }

    fn zip(&self, other: &DenseMatrix, sub: bool) -> Result<DenseMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = match (&self.data, &other.data) {
            (Entries::Rational(a), Entries::Rational(b)) => Entries::Rational(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| if sub { x - y } else { x + y })
                    .collect(),
            ),
            (Entries::Prime { p, v: a }, Entries::Prime { p: q, v: b }) if p == q => Entries::Prime {
                p: *p,
                v: a.iter()
                    .zip(b)
                    .map(|(x, y)| if sub { (x + p - y) % p } else { (x + y) % p })
                    .collect(),
            },
            _ => return Err(Error::FieldMismatch),
        };
        Ok(DenseMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.zip(other, false)
    }

    pub fn try_sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.zip(other, true)
    }

    pub fn scale(&self, s: &Scalar) -> DenseMatrix {
        let data = match (&self.data, s) {
            (Entries::Rational(a), Scalar::Rational(q)) => Entries::Rational(a.iter().map(|x| x * q).collect()),
            (Entries::Prime { p, v }, Scalar::Prime { value, modulus }) if p == modulus => Entries::Prime {
                p: *p,
                v: v.iter().map(|x| x * value % p).collect(),
            },
            _ => panic!("field mismatch: {} vs {}", self.field(), s.field()),
        };
        DenseMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// Copy of the `rows x cols` window starting at `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> DenseMatrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "window out of range");
        let mut m = DenseMatrix::zeros(self.field(), rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, &self.get(r0 + i, c0 + j));
            }
        }
        m
    }

    /// Adds `block` into the window starting at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &DenseMatrix) {
        assert!(
            r0 + block.rows <= self.rows && c0 + block.cols <= self.cols,
            "block out of range"
        );
        for i in 0..block.rows {
            for j in 0..block.cols {
                let x = block.get(i, j);
                if !x.is_zero() {
                    let y = &self.get(r0 + i, c0 + j) + &x;
                    self.set(r0 + i, c0 + j, &y);
                }
            }
        }
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.field(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, &self.get(i, j));
            }
        }
        m
    }

    /// Reinterprets every entry in another field (integers reduce mod p).
    pub fn to_field(&self, field: Field) -> Result<DenseMatrix> {
        let mut m = DenseMatrix::zeros(field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = match self.get(i, j) {
                    Scalar::Rational(q) => Scalar::from_fraction(field, q.numer(), q.denom())?,
                    Scalar::Prime { value, .. } => {
                        Scalar::from_fraction(field, &BigInt::from(value), &BigInt::one())?
                    }
                };
                m.set(i, j, &x);
            }
        }
        Ok(m)
    }
}

/// Exact product; errors on mismatched inner dimensions.
pub fn mat_mul(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix> {
    a.try_mul(b)
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

impl Mul for &DenseMatrix {
    type Output = DenseMatrix;
    fn mul(self, rhs: &DenseMatrix) -> DenseMatrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &DenseMatrix {
    type Output = DenseMatrix;
    fn add(self, rhs: &DenseMatrix) -> DenseMatrix {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &DenseMatrix {
    type Output = DenseMatrix;
    fn sub(self, rhs: &DenseMatrix) -> DenseMatrix {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &DenseMatrix {
    type Output = DenseMatrix;
    fn neg(self) -> DenseMatrix {
        self.scale(&Scalar::from_i64(self.field(), -1))
    }
}
