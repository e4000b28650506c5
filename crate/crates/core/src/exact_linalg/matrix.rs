use std::fmt;

use super::scalar::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Solution set of an affine system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolution {
    Inconsistent,
    Solutions {
        particular: Vec<Scalar>,
        kernel: Vec<Vec<Scalar>>,
    },
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols` and lie in `field`.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            for s in &r {
                if s.field() != field {
                    return Err(Error::FieldMismatch(format!("{} in {field}", s.field())));
                }
            }
            entries.extend(r);
        }
        Ok(ExactMatrix {
            rows: n,
            cols,
            field,
            entries,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.int(v)).collect())
            .collect();
        Self::from_rows(field, cols, data).expect("rectangular integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<Self> {
        if self.cols != other.cols || self.field != other.field {
            return Err(Error::Dimension(format!(
                "cannot stack {}x{} on {}x{}",
                other.rows, other.cols, self.rows, self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field,
            entries,
        })
    }

    pub fn mul(&self, o: &ExactMatrix) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| dot(self.field, self.row(i), v))
            .collect())
    }

    pub fn add(&self, o: &ExactMatrix) -> Result<Self> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &ExactMatrix) -> Result<Self> {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = &*e * s;
        }
        out
    }

    fn zip(&self, o: &ExactMatrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&o.entries)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries,
        })
    }

    /// Reduced row echelon form. Pivots are taken at the first nonzero entry in column order.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            let support: Vec<usize> = (c..cols).filter(|&j| !m.get(r, j).is_zero()).collect();
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for &j in &support {
                    let v = m.get(i, j) - &(&factor * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivot_cols: pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Nonzero rows of the reduced form.
    pub fn row_basis(&self) -> ExactMatrix {
        let r = self.rref();
        let rows = (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect();
        ExactMatrix::from_rows(self.field, self.cols, rows).expect("shape preserved")
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Right kernel basis, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let r = self.rref();
        kernel_from_rref(&r, self.cols)
    }

    /// Coefficients `c` with `cᵀ·self = v`, when `v` lies in the row span.
    pub fn span_membership(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        match self.transpose().solve_affine(v)? {
            AffineSolution::Inconsistent => Ok(None),
            AffineSolution::Solutions { particular, .. } => Ok(Some(particular)),
        }
    }

    /// Full solution set of `self · x = rhs`.
    pub fn solve_affine(&self, rhs: &[Scalar]) -> Result<AffineSolution> {
        if rhs.len() != self.rows {
            return Err(Error::Dimension(format!(
                "rhs of length {} against {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let mut aug = ExactMatrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let r = aug.rref();
        if r.pivot_cols.last() == Some(&self.cols) {
            return Ok(AffineSolution::Inconsistent);
        }
        let mut particular = vec![self.field.zero(); self.cols];
        for (i, &pc) in r.pivot_cols.iter().enumerate() {
            particular[pc] = r.matrix.get(i, self.cols).clone();
        }
        let kernel = kernel_from_rref(&r, self.cols);
        Ok(AffineSolution::Solutions { particular, kernel })
    }
}

fn kernel_from_rref(r: &Rref, cols: usize) -> Vec<Vec<Scalar>> {
    let field = r.matrix.field;
    let mut is_pivot = vec![false; cols];
    for &p in &r.pivot_cols {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (i, &pc) in r.pivot_cols.iter().enumerate() {
            v[pc] = -r.matrix.get(i, free);
        }
        basis.push(v);
    }
    basis
}

/// Dot product in `field`.
pub fn dot(field: FieldSpec, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

impl fmt::Display for ExactMatrix {
    /// Rows separated by `;`, entries by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j).plain())?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn identity_rref() {
        let m = ExactMatrix::identity(q(), 2);
        let r = m.rref();
        assert_eq!(r.matrix, m);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);
    }

    #[test]
    fn zero_matrix_nullspace() {
        let m = ExactMatrix::zeros(q(), 3, 3);
        assert_eq!(m.rank(), 0);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 3);
        assert_eq!(ns[1], vec![q().zero(), q().one(), q().zero()]);
    }

    #[test]
    fn single_equation_kernel() {
        let m = ExactMatrix::from_ints(q(), &[vec![1, 2]]);
        assert_eq!(m.nullspace(), vec![vec![q().int(-2), q().int(1)]]);
    }

    #[test]
    fn affine_cases() {
        let m = ExactMatrix::from_ints(q(), &[vec![1, 1]]);
        match m.solve_affine(&[q().int(2)]).unwrap() {
            AffineSolution::Solutions { particular, kernel } => {
                assert_eq!(particular, vec![q().int(2), q().int(0)]);
                assert_eq!(kernel, vec![vec![q().int(-1), q().int(1)]]);
            }
            AffineSolution::Inconsistent => panic!(),
        }
        let z = ExactMatrix::from_ints(q(), &[vec![0]]);
        assert_eq!(
            z.solve_affine(&[q().int(1)]).unwrap(),
            AffineSolution::Inconsistent
        );
        let id = ExactMatrix::identity(q(), 3);
        let b = vec![q().int(4), q().int(-1), q().ratio(1, 3).unwrap()];
        match id.solve_affine(&b).unwrap() {
            AffineSolution::Solutions { particular, kernel } => {
                assert_eq!(particular, b);
                assert!(kernel.is_empty());
            }
            AffineSolution::Inconsistent => panic!(),
        }
        assert!(id.solve_affine(&[q().int(1)]).is_err());
    }

    #[test]
    fn membership_basics() {
        let m = ExactMatrix::from_ints(q(), &[vec![1, 2, 0], vec![0, 1, 1]]);
        let c = m.span_membership(m.row(0)).unwrap().unwrap();
        let back: Vec<Scalar> = (0..3)
            .map(|j| &(&c[0] * m.get(0, j)) + &(&c[1] * m.get(1, j)))
            .collect();
        assert_eq!(back, m.row(0));
        let z = vec![q().zero(); 3];
        assert!(m.span_membership(&z).unwrap().unwrap().iter().all(Scalar::is_zero));
        assert!(m.span_membership(&[q().int(0), q().int(0), q().int(1)]).unwrap().is_none());
        assert!(m.span_membership(&z[..2]).is_err());
    }

    #[test]
    fn display_format() {
        let m = ExactMatrix::from_ints(q(), &[vec![1, -2], vec![0, 3]]);
        assert_eq!(m.to_string(), "1,-2;0,3");
    }
}
