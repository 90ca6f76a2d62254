//! Linear algebra over prime fields: scalars, dense matrices, rank, and
//! alternating forms with their congruence normal form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime field `F_p` with `p < 2^15`, so products of two reduced values
/// and short sums of them fit in a `u32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const MAX_MODULUS: u32 = 1 << 15;

    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= Self::MAX_MODULUS as u64 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn elem(self, v: i64) -> FpScalar {
        FpScalar {
            value: v.rem_euclid(self.p as i64) as u32,
            modulus: self.p,
        }
    }

    pub fn zero(self) -> FpScalar {
        self.elem(0)
    }

    pub fn one(self) -> FpScalar {
        self.elem(1)
    }

    /// `a + b` on reduced representatives.
    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    /// Inverse of a reduced nonzero value by the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a % self.p == 0 {
            return Err(Error::DivisionByZero(self.p));
        }
        let (mut r0, mut r1) = (self.p as i64, (a % self.p) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(t0.rem_euclid(self.p as i64) as u32)
    }

    /// A uniformly random reduced value.
    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p as u64)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// An element of `F_p` carrying its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    modulus: u32,
}

impl FpScalar {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Result<FpScalar> {
        let value = self.field().inv(self.value)?;
        Ok(FpScalar { value, ..self })
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! scalar_op {
    ($trait:ident, $method:ident) => {
        impl $trait for FpScalar {
            type Output = FpScalar;
            fn $method(self, rhs: FpScalar) -> FpScalar {
                assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
                FpScalar {
                    value: self.field().$method(self.value, rhs.value),
                    modulus: self.modulus,
                }
            }
        }
    };
}

scalar_op!(Add, add);
scalar_op!(Sub, sub);
scalar_op!(Mul, mul);

impl Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar {
            value: self.field().neg(self.value),
            ..self
        }
    }
}

/// `1/a`, failing on zero.
pub fn fp_inv(a: FpScalar) -> Result<FpScalar> {
    a.inv()
}

/// Dense row-major matrix over one prime field. Entries are stored reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = FpMatrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing each entry mod `p`.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&v| field.elem(v).value));
        }
        Ok(FpMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Wraps already-reduced row-major data.
    pub fn from_raw(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        let p = field.modulus();
        Ok(FpMatrix {
            field,
            rows,
            cols,
            data: data.into_iter().map(|v| v % p).collect(),
        })
    }

    pub fn random<R: Rng + ?Sized>(field: PrimeField, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        FpMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Rejection-samples an invertible `n × n` matrix.
    pub fn random_invertible<R: Rng + ?Sized>(field: PrimeField, n: usize, rng: &mut R) -> Self {
        loop {
            let m = FpMatrix::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn raw(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn get(&self, i: usize, j: usize) -> FpScalar {
        FpScalar {
            value: self.raw(i, j),
            modulus: self.field.modulus(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: FpScalar) {
        assert_eq!(v.modulus, self.field.modulus(), "mixed moduli");
        self.data[i * self.cols + j] = v.value;
    }

    pub(crate) fn set_raw(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.raw(i, j);
            }
        }
        t
    }

    pub fn mul(&self, rhs: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        assert_eq!(self.field, rhs.field, "mixed moduli");
        let f = self.field;
        let mut out = FpMatrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.raw(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, rhs.raw(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| m.raw(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.raw(r, c)).expect("pivot is nonzero");
            for j in 0..self.cols {
                let v = f.mul(m.raw(r, j), inv);
                m.set_raw(r, j, v);
            }
            for i in 0..self.rows {
                let factor = m.raw(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = f.sub(m.raw(i, j), f.mul(factor, m.raw(r, j)));
                    m.set_raw(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Row rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix over F_{} ({}x{}):", self.field.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// `rank(m)`.
pub fn matrix_rank(m: &FpMatrix) -> usize {
    m.rank()
}

/// An alternating bilinear form on `F_p^n`: zero diagonal and
/// `m[j][i] = -m[i][j]`. Over `F_2` the zero diagonal is not implied by
/// antisymmetry and is checked separately.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewForm {
    matrix: FpMatrix,
}

impl SkewForm {
    pub fn from_matrix(matrix: FpMatrix) -> Result<Self> {
        if matrix.rows != matrix.cols {
            return Err(Error::NotAlternating(format!(
                "{}x{} matrix is not square",
                matrix.rows, matrix.cols
            )));
        }
        let f = matrix.field;
        for i in 0..matrix.rows {
            if matrix.raw(i, i) != 0 {
                return Err(Error::NotAlternating(format!("diagonal entry ({i},{i}) is nonzero")));
            }
            for j in i + 1..matrix.cols {
                if matrix.raw(j, i) != f.neg(matrix.raw(i, j)) {
                    return Err(Error::NotAlternating(format!(
                        "entries ({i},{j}) and ({j},{i}) are not opposite"
                    )));
                }
            }
        }
        Ok(SkewForm { matrix })
    }

    /// Builds the form from its strictly upper-triangular entries
    /// `ω(e_i, e_j)`, `i < j`, in lexicographic order.
    pub fn from_upper(field: PrimeField, n: usize, upper: &[u32]) -> Result<Self> {
        if upper.len() != n * (n - 1) / 2 {
            return Err(Error::DimensionMismatch {
                expected: n * (n - 1) / 2,
                found: upper.len(),
            });
        }
        let mut m = FpMatrix::zeros(field, n, n);
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = it.next().unwrap() % field.modulus();
                m.set_raw(i, j, v);
                m.set_raw(j, i, field.neg(v));
            }
        }
        Ok(SkewForm { matrix: m })
    }

    /// The standard form of rank `r`: `ω(e_i, e_{r/2+i}) = 1` for `i < r/2`,
    /// i.e. the block matrix `(0 I 0; -I 0 0; 0 0 0)`.
    pub fn standard(field: PrimeField, n: usize, rank: usize) -> Result<Self> {
        if rank % 2 != 0 || rank > n {
            return Err(Error::Domain(format!(
                "no alternating form of rank {rank} on F_p^{n}"
            )));
        }
        let half = rank / 2;
        let mut m = FpMatrix::zeros(field, n, n);
        for i in 0..half {
            m.set_raw(i, half + i, 1);
            m.set_raw(half + i, i, field.neg(1));
        }
        Ok(SkewForm { matrix: m })
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        SkewForm {
            matrix: FpMatrix::zeros(field, n, n),
        }
    }

    pub fn random<R: Rng + ?Sized>(field: PrimeField, n: usize, rng: &mut R) -> Self {
        let upper: Vec<u32> = (0..n * (n - 1) / 2).map(|_| field.random(rng)).collect();
        SkewForm::from_upper(field, n, &upper).expect("length matches")
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    pub fn field(&self) -> PrimeField {
        self.matrix.field
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn upper(&self) -> Vec<u32> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.matrix.raw(i, j));
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// `uᵀ ω v`. Entries of `u` and `v` are reduced mod `p`.
    pub fn evaluate(&self, u: &[u32], v: &[u32]) -> Result<FpScalar> {
        let n = self.dim();
        for w in [u, v] {
            if w.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: w.len(),
                });
            }
        }
        let f = self.field();
        let p = f.modulus();
        let mut acc = 0u32;
        for i in 0..n {
            let ui = u[i] % p;
            if ui == 0 {
                continue;
            }
            let mut row = 0u32;
            for j in 0..n {
                row = f.add(row, f.mul(self.matrix.raw(i, j), v[j] % p));
            }
            acc = f.add(acc, f.mul(ui, row));
        }
        Ok(FpScalar { value: acc, modulus: p })
    }

    /// `Pᵀ ω P`, the form in the basis given by the columns of `P`.
    pub fn congruent(&self, p: &FpMatrix) -> Result<SkewForm> {
        let m = p.transpose().mul(&self.matrix)?.mul(p)?;
        Ok(SkewForm { matrix: m })
    }

    /// Symplectic elimination: returns `P` with `Pᵀ ω P` standard of rank `r`.
    ///
    /// Repeatedly takes the first pair `(i, j)`, `i < j`, of remaining basis
    /// vectors with `ω(b_i, b_j) != 0`, rescales it to a hyperbolic pair
    /// `(x, y)`, and projects every other remaining vector off `<x, y>`.
    /// Pairs fill columns `0..r/2` and `r/2..r`; leftover vectors span the
    /// radical and fill the rest.
    pub fn congruence_normal_form(&self) -> CongruenceNormalForm {
        let n = self.dim();
        let f = self.field();
        let form = |a: &[u32], b: &[u32]| self.evaluate(a, b).expect("dimensions match").value;
        let mut remaining: Vec<Vec<u32>> = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        loop {
            let pair = (0..remaining.len()).find_map(|i| {
                (i + 1..remaining.len())
                    .find(|&j| form(&remaining[i], &remaining[j]) != 0)
                    .map(|j| (i, j))
            });
            let Some((i, j)) = pair else { break };
            let scale = f.inv(form(&remaining[i], &remaining[j])).expect("nonzero");
            let y: Vec<u32> = remaining.remove(j).iter().map(|&c| f.mul(c, scale)).collect();
            let x = remaining.remove(i);
            for b in remaining.iter_mut() {
                // b <- b - ω(b, y) x + ω(b, x) y
                let by = form(b, &y);
                let bx = form(b, &x);
                for k in 0..n {
                    b[k] = f.add(f.sub(b[k], f.mul(by, x[k])), f.mul(bx, y[k]));
                }
            }
            xs.push(x);
            ys.push(y);
        }
        let rank = 2 * xs.len();
        let mut basis = FpMatrix::zeros(f, n, n);
        for (col, v) in xs.iter().chain(ys.iter()).chain(remaining.iter()).enumerate() {
            for (row, &c) in v.iter().enumerate() {
                basis.set_raw(row, col, c);
            }
        }
        CongruenceNormalForm { basis, rank }
    }
}

impl fmt::Debug for SkewForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewForm({:?})", self.matrix)
    }
}

/// Output of symplectic elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceNormalForm {
    /// Invertible change of basis `P` (columns are the new basis).
    pub basis: FpMatrix,
    /// Even rank `r` of the form.
    pub rank: usize,
}

/// Validates `m` as alternating, then runs symplectic elimination.
pub fn skew_congruence_normal_form(m: &FpMatrix) -> Result<CongruenceNormalForm> {
    Ok(SkewForm::from_matrix(m.clone())?.congruence_normal_form())
}

/// `uᵀ ω v`.
pub fn evaluate_form(form: &SkewForm, u: &[u32], v: &[u32]) -> Result<FpScalar> {
    form.evaluate(u, v)
}
