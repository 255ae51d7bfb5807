//! Exact rational linear algebra: row-reduced matrices, kernels, images and
//! canonical subspaces of `ℚ^d`. Vectors are rows and matrices act on the
//! right, matching the lattice layer.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::lattice::{Int, LatticeVector};

pub type Rat = BigRational;

pub fn rat_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

/// Dense rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rat>>,
}

impl QMat {
    pub fn new(data: Vec<Vec<Rat>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols));
        QMat { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![vec![Rat::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m.data[i][i] = Rat::one();
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<Int>]) -> Self {
        QMat::new(
            rows.iter()
                .map(|r| r.iter().map(rat_int).collect())
                .collect(),
        )
    }

    pub fn from_lattice_rows(rows: &[LatticeVector]) -> Self {
        QMat::new(
            rows.iter()
                .map(|r| r.coords().iter().map(rat_int).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &Vec<Rat>> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|e| e.is_zero()))
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other.data[k][j].is_zero() {
                        continue;
                    }
                    let add = &self.data[i][k] * &other.data[k][j];
                    out.data[i][j] += add;
                }
            }
        }
        out
    }

    pub fn apply_row(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Rat::zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if !self.data[i][j].is_zero() {
                    out[j] += c * &self.data[i][j];
                }
            }
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> QMat {
        QMat::new(
            self.data
                .iter()
                .map(|r| r.iter().map(|e| e * k).collect())
                .collect(),
        )
    }

    pub fn vstack(&self, other: &QMat) -> QMat {
        if self.rows == 0 {
            return other.clone();
        }
        if other.rows == 0 {
            return self.clone();
        }
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        QMat::new(data)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].clone();
            for j in c..self.cols {
                m[r][j] = &m[r][j] / &inv;
            }
            for i in 0..self.rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in c..self.cols {
                        let sub = &f * &m[r][j];
                        m[i][j] -= sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (QMat::new(m), pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Basis of `{x : x · self = 0}` (left kernel), as rows.
    pub fn left_kernel(&self) -> QMat {
        self.transpose().right_kernel()
    }

    /// Basis of `{x : self · xᵀ = 0}`, returned as rows of length `cols`.
    pub fn right_kernel(&self) -> QMat {
        if self.cols == 0 {
            return QMat::zero(0, 0);
        }
        if self.rows == 0 {
            return QMat::identity(self.cols);
        }
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::new();
        for &fc in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[fc] = Rat::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.data[pi][fc].clone();
            }
            rows.push(v);
        }
        if rows.is_empty() {
            QMat::zero(0, self.cols)
        } else {
            QMat::new(rows)
        }
    }

    /// Expresses `target` rows as combinations of `self` rows:
    /// returns `c` with `c · self = target`, if solvable.
    pub fn express_rows(&self, target: &QMat) -> Option<QMat> {
        assert_eq!(self.cols, target.cols());
        if target.rows == 0 {
            return Some(QMat::zero(0, self.rows));
        }
        if self.rows == 0 {
            return if target.is_zero() {
                Some(QMat::zero(target.rows, 0))
            } else {
                None
            };
        }
        // solve selfᵀ · xᵀ = targetᵀ column by column via one shared rref
        let a = self.transpose();
        let b = target.transpose();
        let mut aug = a.data.clone();
        for i in 0..a.rows {
            aug[i].extend(b.data[i].iter().cloned());
        }
        let aug = QMat::new(aug);
        let (r, pivots) = aug.rref();
        // inconsistent if a pivot lands in the augmented block
        if pivots.iter().any(|&p| p >= a.cols) {
            return None;
        }
        let mut out = QMat::zero(target.rows, self.rows);
        for (pi, &pc) in pivots.iter().enumerate() {
            for t in 0..target.rows {
                out.data[t][pc] = r.data[pi][a.cols + t].clone();
            }
        }
        Some(out)
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMat[{}×{}]", self.rows, self.cols)?;
        for r in &self.data {
            let pretty: Vec<String> = r.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", pretty.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of `ℚ^ambient` in canonical form: the RREF basis makes equality
/// structural equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: QMat,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: QMat::zero(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: QMat::identity(ambient),
        }
    }

    pub fn from_rows(ambient: usize, rows: &QMat) -> Self {
        if rows.rows() == 0 {
            return Subspace::zero(ambient);
        }
        assert_eq!(rows.cols(), ambient);
        let (r, pivots) = rows.rref();
        let basis = QMat::new(r.data[..pivots.len()].to_vec());
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &QMat {
        &self.basis
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let target = QMat::new(vec![v.to_vec()]);
        self.basis.express_rows(&target).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        other.basis.express_rows(&self.basis).is_some()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_rows(self.ambient, &self.basis.vstack(&other.basis))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        // rows (x | y) of the kernel of [A; -B] stacked give x·A = y·B
        let stacked = self.basis.vstack(&other.basis.scale(&-Rat::one()));
        let ker = stacked.left_kernel();
        let mut rows = Vec::new();
        for k in 0..ker.rows() {
            let coeffs = &ker.row(k)[..self.dim()];
            rows.push(self.basis.apply_row_partial(coeffs));
        }
        if rows.is_empty() {
            Subspace::zero(self.ambient)
        } else {
            Subspace::from_rows(self.ambient, &QMat::new(rows))
        }
    }
}

impl QMat {
    fn apply_row_partial(&self, coeffs: &[Rat]) -> Vec<Rat> {
        assert_eq!(coeffs.len(), self.rows);
        let mut out = vec![Rat::zero(); self.cols];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if !self.data[i][j].is_zero() {
                    out[j] += c * &self.data[i][j];
                }
            }
        }
        out
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of ℚ^{})", self.dim(), self.ambient)
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rats(vals: &[i64]) -> Vec<Rat> {
    vals.iter().map(|&v| Rat::from_integer(Int::from(v))).collect()
}
