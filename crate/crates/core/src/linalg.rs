//! Dense exact linear algebra over Q.
//!
//! Everything here is deterministic: row-reduction pivots on the first
//! non-zero entry in column order, and "the" solution of an underdetermined
//! system is the one with all free variables set to zero. Column order is
//! ascending canonical monomial order wherever a matrix realizes a map
//! between graded pieces, so canonical solutions prefer small monomials.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Bigrade, Bigrading, Monomial, Polynomial, VarSet};
use crate::rat::Rat;

/// Dense matrix over Q, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch);
        }
        Ok(ExactMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch);
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += a * &v[c];
                    }
                }
                acc
            })
            .collect())
    }

    /// Reduced row-echelon form with the pivot column list and the rank.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>, usize) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..m.cols {
            if lead >= m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, pr);
            let inv = Rat::one() / m.get(lead, col).clone();
            m.scale_row(lead, &inv, col);
            for r in 0..m.rows {
                if r != lead && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.sub_scaled_row(r, lead, &factor, col);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        let rank = pivots.len();
        (m, pivots, rank)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Rat, from_col: usize) {
        for c in from_col..self.cols {
            if !self.get(r, c).is_zero() {
                let v = self.get(r, c) * factor;
                self.set(r, c, v);
            }
        }
    }

    fn sub_scaled_row(&mut self, dst: usize, src: usize, factor: &Rat, from_col: usize) {
        for c in from_col..self.cols {
            let s = self.get(src, c);
            if !s.is_zero() {
                let v = self.get(dst, c) - s * factor;
                self.set(dst, c, v);
            }
        }
    }

    /// Canonical particular solution of `self * x = b`: free variables are
    /// zero. `None` when the system is inconsistent.
    pub fn solve_particular(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch);
        }
        let mut aug = ExactMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots, _) = aug.rref();
        // A pivot in the augmented column means inconsistency.
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = red.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Reduced basis of the null space, one vector per free column, in
    /// ascending free-column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (red, pivots, _) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &col) in pivots.iter().enumerate() {
                let entry = red.get(row, free);
                if !entry.is_zero() {
                    v[col] = -entry.clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// A basis for a subspace of a graded piece, kept in reduced row-echelon
/// form with respect to the ascending canonical monomial order.
#[derive(Clone, Debug)]
pub struct VectorSpaceBasis {
    vars: VarSet,
    grading: Bigrading,
    grade: Bigrade,
    monomials: Vec<Monomial>,
    vectors: Vec<Polynomial>,
    matrix: ExactMatrix,
    pivots: Vec<usize>,
}

impl VectorSpaceBasis {
    /// Row-reduces `spanning` coefficient rows (aligned to `monomials`,
    /// ascending) and keeps the non-zero rows.
    pub fn from_span(
        vars: &VarSet,
        grading: &Bigrading,
        grade: Bigrade,
        monomials: Vec<Monomial>,
        spanning: Vec<Vec<Rat>>,
    ) -> Result<Self> {
        for row in &spanning {
            if row.len() != monomials.len() {
                return Err(Error::DimensionMismatch);
            }
        }
        let m = ExactMatrix::from_rows(spanning)?;
        let (red, pivots, rank) = m.rref();
        let mut kept = ExactMatrix::zeros(rank, monomials.len());
        let mut vectors = Vec::with_capacity(rank);
        for r in 0..rank {
            let mut terms = Vec::new();
            for c in 0..monomials.len() {
                let v = red.get(r, c);
                kept.set(r, c, v.clone());
                if !v.is_zero() {
                    terms.push((monomials[c].clone(), v.clone()));
                }
            }
            vectors.push(Polynomial::from_terms(vars, terms)?);
        }
        Ok(VectorSpaceBasis {
            vars: vars.clone(),
            grading: grading.clone(),
            grade,
            monomials,
            vectors,
            matrix: kept,
            pivots,
        })
    }

    /// Builds from spanning polynomials, all homogeneous of `grade`.
    pub fn from_polynomials(
        vars: &VarSet,
        grading: &Bigrading,
        grade: Bigrade,
        monomials: Vec<Monomial>,
        polys: &[Polynomial],
    ) -> Result<Self> {
        let rows = polys
            .iter()
            .map(|p| coords(p, &monomials))
            .collect::<Result<Vec<_>>>()?;
        Self::from_span(vars, grading, grade, monomials, rows)
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn grade(&self) -> Bigrade {
        self.grade
    }

    pub fn grading(&self) -> &Bigrading {
        &self.grading
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn vectors(&self) -> &[Polynomial] {
        &self.vectors
    }

    /// Membership test: reduces the coordinate vector against the stored
    /// echelon rows and checks that nothing survives.
    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        let Ok(mut v) = coords(p, &self.monomials) else {
            return Ok(false);
        };
        for (row, &pc) in self.pivots.iter().enumerate() {
            if v[pc].is_zero() {
                continue;
            }
            let factor = v[pc].clone();
            for c in pc..self.monomials.len() {
                let entry = self.matrix.get(row, c);
                if !entry.is_zero() {
                    v[c] = &v[c] - entry * &factor;
                }
            }
        }
        Ok(v.iter().all(Rat::is_zero))
    }

    /// Two bases span the same space iff their reduced matrices agree.
    pub fn same_space(&self, other: &VectorSpaceBasis) -> bool {
        self.monomials == other.monomials && self.matrix == other.matrix
    }
}

/// Coordinates of `p` in an explicit monomial list; errors when `p` has
/// support outside the list.
pub fn coords(p: &Polynomial, monomials: &[Monomial]) -> Result<Vec<Rat>> {
    let mut v = vec![Rat::zero(); monomials.len()];
    'outer: for (m, c) in p.terms() {
        for (i, basis_m) in monomials.iter().enumerate() {
            if basis_m == m {
                v[i] = c.clone();
                continue 'outer;
            }
        }
        return Err(Error::Inhomogeneous(
            "polynomial has support outside the graded piece".into(),
        ));
    }
    Ok(v)
}
