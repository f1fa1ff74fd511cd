//! Dense vectors and matrices over ℚ with a fraction-free exact solver.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Vector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Vector(vec![Scalar::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Scalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    /// Nonzero coordinates as `(index, value)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector(self.0.iter().map(|a| a * c).collect())
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// A `rows × cols` matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl LinearMap {
    pub fn zero(rows: usize, cols: usize) -> Self {
        LinearMap {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::mismatch("ragged matrix rows"));
        }
        Ok(LinearMap {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds the map sending basis vector `j` to `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.dim(), rows);
            for (i, c) in col.support() {
                m[(i, j)] = c.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    /// Nonzero entries of column `j` as `(row, value)`.
    pub fn column_support(&self, j: usize) -> Vec<(usize, Scalar)> {
        (0..self.rows)
            .filter_map(|i| {
                let c = &self[(i, j)];
                (!c.is_zero()).then(|| (i, c.clone()))
            })
            .collect()
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if v.dim() != self.cols {
            return Err(Error::mismatch(format!(
                "map has {} columns, vector has dim {}",
                self.cols,
                v.dim()
            )));
        }
        let mut out = Vector::zero(self.rows);
        for (j, x) in v.support() {
            for i in 0..self.rows {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    out[i] += &(a * x);
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.cols != other.rows {
            return Err(Error::mismatch(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = LinearMap::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> LinearMap {
        let mut out = LinearMap::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap {
        LinearMap {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::mismatch("matrix shapes differ"));
        }
        Ok(LinearMap {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    self[(i, j)]
                        == if i == j {
                            Scalar::one()
                        } else {
                            Scalar::zero()
                        }
                })
            })
    }

    pub fn rank(&self) -> usize {
        echelon(&self.to_integer_rows(None)).1.len()
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        if !self.is_square() {
            return Err(Error::mismatch("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            cols.push(solve_linear(self, &Vector::basis(n, j))?);
        }
        Ok(LinearMap::from_columns(n, &cols))
    }

    /// Integer power; negative exponents need an invertible map.
    pub fn pow(&self, exp: i32) -> Result<LinearMap> {
        if !self.is_square() {
            return Err(Error::mismatch("power of a non-square matrix"));
        }
        let base = if exp < 0 {
            self.inverse().map_err(|_| Error::AlphaNotInvertible)?
        } else {
            self.clone()
        };
        let mut acc = LinearMap::identity(self.rows);
        for _ in 0..exp.unsigned_abs() {
            acc = acc.compose(&base)?;
        }
        Ok(acc)
    }

    /// Basis of the kernel, in reduced form.
    pub fn nullspace(&self) -> Vec<Vector> {
        let rref = reduced_echelon(&self.to_integer_rows(None), self.cols);
        kernel_from_rref(&rref, self.cols)
    }

    /// Rows scaled to integers, with `b` appended as an extra column when given.
    fn to_integer_rows(&self, b: Option<&Vector>) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let mut row: Vec<&Scalar> = self.row(i).iter().collect();
                if let Some(b) = b {
                    row.push(&b[i]);
                }
                integer_row(&row)
            })
            .collect()
    }
}

impl Index<(usize, usize)> for LinearMap {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for LinearMap {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[Scalar]> = (0..self.rows).map(|i| self.row(i)).collect();
        f.debug_list().entries(rows).finish()
    }
}

fn integer_row(row: &[&Scalar]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()));
    row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
}

/// Fraction-free (Bareiss) row echelon form. Returns the reduced matrix and pivot columns.
fn echelon(rows: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

struct Rref {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

/// Reduced row echelon form over ℚ restricted to the first `ncols` columns' pivots.
fn reduced_echelon(rows: &[Vec<BigInt>], ncols: usize) -> Rref {
    let (m, pivots) = echelon(rows);
    let mut rows: Vec<Vec<Scalar>> = m
        .iter()
        .take(pivots.len())
        .map(|row| {
            row.iter()
                .map(|x| Scalar::from_big(x.clone(), BigInt::one()).unwrap())
                .collect()
        })
        .collect();
    for (r, &c) in pivots.iter().enumerate().rev() {
        if c >= ncols {
            continue;
        }
        let inv = rows[r][c].recip().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for above in 0..r {
            let f = rows[above][c].clone();
            if f.is_zero() {
                continue;
            }
            let (top, rest) = rows.split_at_mut(r);
            for (x, y) in top[above].iter_mut().zip(&rest[0]) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Rref { rows, pivots }
}

fn kernel_from_rref(rref: &Rref, ncols: usize) -> Vec<Vector> {
    let pivot_cols: Vec<usize> = rref.pivots.iter().copied().filter(|&c| c < ncols).collect();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = Vector::zero(ncols);
            v[f] = Scalar::one();
            for (r, &p) in pivot_cols.iter().enumerate() {
                v[p] = -&rref.rows[r][f];
            }
            v
        })
        .collect()
}

/// Solves `m · x = b` exactly, insisting on a unique solution.
pub fn solve_linear(m: &LinearMap, b: &Vector) -> Result<Vector> {
    if b.dim() != m.rows() {
        return Err(Error::mismatch(format!(
            "matrix has {} rows, right-hand side has dim {}",
            m.rows(),
            b.dim()
        )));
    }
    let n = m.cols();
    let rref = reduced_echelon(&m.to_integer_rows(Some(b)), n);
    if rref.pivots.contains(&n) {
        return Err(Error::NoSolution);
    }
    if rref.pivots.len() < n {
        return Err(Error::NonUnique(n - rref.pivots.len()));
    }
    let mut x = Vector::zero(n);
    for (r, &p) in rref.pivots.iter().enumerate() {
        x[p] = rref.rows[r][n].clone();
    }
    Ok(x)
}

/// All solutions of `m · x = b` as a particular solution plus a kernel basis.
pub fn solve_affine(m: &LinearMap, b: &Vector) -> Result<(Vector, Vec<Vector>)> {
    if b.dim() != m.rows() {
        return Err(Error::mismatch("right-hand side dimension"));
    }
    let n = m.cols();
    let rref = reduced_echelon(&m.to_integer_rows(Some(b)), n);
    if rref.pivots.contains(&n) {
        return Err(Error::NoSolution);
    }
    let mut x = Vector::zero(n);
    for (r, &p) in rref.pivots.iter().enumerate() {
        x[p] = rref.rows[r][n].clone();
    }
    Ok((x, kernel_from_rref(&rref, n)))
}
