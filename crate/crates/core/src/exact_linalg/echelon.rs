use std::collections::BTreeMap;

use super::matrix::ExactMatrix;
use super::scalar::{FieldSpec, Scalar};

/// Sparse row: column to nonzero entry.
pub type SparseRow = BTreeMap<usize, Scalar>;

/// Incremental row echelon form over sparse rows; keeps only independent rows.
#[derive(Clone, Debug)]
pub struct RowReducer {
    field: FieldSpec,
    cols: usize,
    // leading column to a row whose leading entry is 1 there
    pivots: BTreeMap<usize, SparseRow>,
}

impl RowReducer {
    pub fn new(field: FieldSpec, cols: usize) -> Self {
        RowReducer {
            field,
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds a row; returns whether it was independent of the rows so far.
    pub fn push(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        while let Some((&c, lead)) = row.iter().next() {
            match self.pivots.get(&c) {
                Some(p) => {
                    let factor = lead.clone();
                    for (j, v) in p {
                        let e = row.entry(*j).or_insert_with(|| self.field.zero());
                        *e -= &(&factor * v);
                        if e.is_zero() {
                            row.remove(j);
                        }
                    }
                }
                None => {
                    let inv = lead.inv().expect("nonzero lead");
                    for v in row.values_mut() {
                        *v = &*v * &inv;
                    }
                    self.pivots.insert(c, row);
                    return true;
                }
            }
        }
        false
    }

    /// Pushes a dense row.
    pub fn push_dense(&mut self, row: &[Scalar]) -> bool {
        self.push(
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| (j, v.clone()))
                .collect(),
        )
    }

    /// The kept rows as a dense matrix.
    pub fn to_matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.field, self.pivots.len(), self.cols);
        for (i, row) in self.pivots.values().enumerate() {
            for (j, v) in row {
                m.set(i, *j, v.clone());
            }
        }
        m
    }

    /// Right kernel of the kept rows.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        self.to_matrix().nullspace()
    }
}
