//! Exact integer lattices: vectors, matrices, Smith and Hermite normal forms,
//! saturations, quotient lattices and ordered bases of wedge powers.
//!
//! Everything here is arbitrary-precision; there is no floating point anywhere
//! in this crate. Vectors are rows, and matrices act on the right
//! (`x ↦ x · A`).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// A point of the lattice `ℤ^rank` (an element of `N` or of its dual `M`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    coords: Vec<Int>,
}

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVector { coords }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector {
            coords: coords.iter().map(|&c| int(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector {
            coords: vec![Int::zero(); rank],
        }
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.coords[i] = Int::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Int {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The pairing `⟨self, other⟩`.
    pub fn dot(&self, other: &LatticeVector) -> Int {
        debug_assert_eq!(self.rank(), other.rank());
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector::new(
            self.coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector::new(
            self.coords
                .iter()
                .zip(other.coords.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Int) -> LatticeVector {
        LatticeVector::new(self.coords.iter().map(|a| a * k).collect())
    }

    pub fn gcd(&self) -> Int {
        self.coords.iter().fold(Int::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides by the gcd of the coordinates; the sign pattern is preserved.
    pub fn primitive(&self) -> Result<LatticeVector> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let g = self.gcd();
        Ok(LatticeVector::new(
            self.coords.iter().map(|c| c / &g).collect(),
        ))
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.gcd().is_one()
    }
}

impl PartialOrd for LatticeVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LatticeVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.coords.cmp(&other.coords))
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// Rectangular integer matrix. Rows are lattice vectors; `x ↦ x·A` maps
/// `ℤ^rows → ℤ^cols`.
#[derive(Clone, PartialEq, Eq)]
pub struct LatticeMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Int>>,
}

impl LatticeMatrix {
    pub fn new(entries: Vec<Vec<Int>>) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        assert!(entries.iter().all(|r| r.len() == cols));
        LatticeMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: &[LatticeVector]) -> Self {
        LatticeMatrix::new(rows.iter().map(|r| r.coords().to_vec()).collect())
    }

    pub fn from_i64(entries: &[&[i64]]) -> Self {
        LatticeMatrix::new(
            entries
                .iter()
                .map(|r| r.iter().map(|&c| int(c)).collect())
                .collect(),
        )
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        LatticeMatrix {
            rows,
            cols,
            entries: vec![vec![Int::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i][i] = Int::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Int {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> LatticeVector {
        LatticeVector::new(self.entries[i].clone())
    }

    pub fn row_vectors(&self) -> Vec<LatticeVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> LatticeMatrix {
        let mut t = LatticeMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j][i] = self.entries[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &LatticeMatrix) -> LatticeMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = LatticeMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Int::zero();
                for k in 0..self.cols {
                    acc += &self.entries[i][k] * &other.entries[k][j];
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(v.rank(), self.rows);
        let mut out = vec![Int::zero(); self.cols];
        for (i, c) in v.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                out[j] += c * &self.entries[i][j];
            }
        }
        LatticeVector::new(out)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, e)| i == j || e.is_zero()))
    }

    pub fn rank_exact(&self) -> usize {
        self.smith_normal_form().divisors().len()
    }

    /// Smith normal form with all four transforms: `u · a · v = s`, diagonal
    /// with a divisibility chain and nonnegative entries.
    pub fn smith_normal_form(&self) -> SmithDecomposition {
        let mut calc = SmithCalc::new(self.clone());
        calc.run();
        calc.into_decomposition()
    }

    /// Canonical Hermite normal form of the row lattice: pivot columns strictly
    /// increase, pivots are positive, entries above a pivot are reduced into
    /// `[0, pivot)`. Zero rows are dropped.
    pub fn hermite_normal_form(&self) -> LatticeMatrix {
        let mut m = self.entries.clone();
        let rows = self.rows;
        let cols = self.cols;
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row >= rows {
                break;
            }
            // gcd-combine everything below into one pivot
            let mut found = None;
            for r in pivot_row..rows {
                if !m[r][col].is_zero() {
                    found = Some(r);
                    break;
                }
            }
            let Some(first) = found else { continue };
            m.swap(pivot_row, first);
            for r in (pivot_row + 1)..rows {
                while !m[r][col].is_zero() {
                    let q = m[r][col].div_floor(&m[pivot_row][col]);
                    for j in 0..cols {
                        let sub = &q * &m[pivot_row][j];
                        m[r][j] -= sub;
                    }
                    if !m[r][col].is_zero() {
                        m.swap(pivot_row, r);
                    }
                }
            }
            if m[pivot_row][col].is_negative() {
                for j in 0..cols {
                    m[pivot_row][j] = -m[pivot_row][j].clone();
                }
            }
            // reduce entries above the pivot into [0, pivot)
            for r in 0..pivot_row {
                let q = m[r][col].div_floor(&m[pivot_row][col]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let sub = &q * &m[pivot_row][j];
                        m[r][j] -= sub;
                    }
                }
            }
            pivot_row += 1;
        }
        m.truncate(pivot_row);
        LatticeMatrix::new(m)
    }

    /// Basis of `{x ∈ ℤ^cols : a · xᵀ = 0}`, i.e. of the integer vectors
    /// orthogonal to every row. The basis spans a saturated sublattice.
    pub fn right_kernel_basis(&self) -> Vec<LatticeVector> {
        if self.rows == 0 {
            return (0..self.cols)
                .map(|i| LatticeVector::unit(self.cols, i))
                .collect();
        }
        let snf = self.smith_normal_form();
        let r = snf.divisors().len();
        // u·a·v = s ⟹ kernel of a = span of columns r.. of v
        (r..self.cols)
            .map(|j| {
                LatticeVector::new((0..self.cols).map(|i| snf.v.entries[i][j].clone()).collect())
            })
            .map(|v| v.primitive().unwrap_or(v))
            .collect()
    }

    /// Basis of the saturation `span_ℚ(rows) ∩ ℤ^cols`, in Hermite form.
    pub fn saturation_basis(&self) -> Vec<LatticeVector> {
        let kernel = LatticeMatrix::from_rows(&self.right_kernel_basis());
        if kernel.rows == 0 {
            return LatticeMatrix::identity(self.cols).row_vectors();
        }
        let sat = kernel.right_kernel_basis();
        LatticeMatrix::from_rows(&sat).hermite_normal_form().row_vectors()
    }
}

impl fmt::Debug for LatticeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in &self.entries {
            writeln!(f, "  {:?}", r)?;
        }
        write!(f, "]")
    }
}

/// `u·a·v = s` exactly, with `u`, `v` unimodular and their inverses tracked.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub s: LatticeMatrix,
    pub u: LatticeMatrix,
    pub u_inv: LatticeMatrix,
    pub v: LatticeMatrix,
    pub v_inv: LatticeMatrix,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries `d₁ | d₂ | …`.
    pub fn divisors(&self) -> Vec<Int> {
        let n = self.s.rows.min(self.s.cols);
        (0..n)
            .map(|i| self.s.entry(i, i).clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }
}

struct SmithCalc {
    a: LatticeMatrix,
    u: LatticeMatrix,
    u_inv: LatticeMatrix,
    v: LatticeMatrix,
    v_inv: LatticeMatrix,
}

impl SmithCalc {
    fn new(a: LatticeMatrix) -> Self {
        let (r, c) = (a.rows, a.cols);
        SmithCalc {
            a,
            u: LatticeMatrix::identity(r),
            u_inv: LatticeMatrix::identity(r),
            v: LatticeMatrix::identity(c),
            v_inv: LatticeMatrix::identity(c),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.entries.swap(i, j);
        self.u.entries.swap(i, j);
        // (row swap)⁻¹ = column swap on u_inv
        for r in 0..self.u_inv.rows {
            self.u_inv.entries[r].swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.a.rows {
            self.a.entries[r].swap(i, j);
        }
        for r in 0..self.v.rows {
            self.v.entries[r].swap(i, j);
        }
        self.v_inv.entries.swap(i, j);
    }

    /// row_i += q · row_j  (and the inverse bookkeeping)
    fn add_row(&mut self, i: usize, j: usize, q: &Int) {
        for c in 0..self.a.cols {
            let add = q * &self.a.entries[j][c];
            self.a.entries[i][c] += add;
        }
        for c in 0..self.u.cols {
            let add = q * &self.u.entries[j][c];
            self.u.entries[i][c] += add;
        }
        for r in 0..self.u_inv.rows {
            let sub = q * &self.u_inv.entries[r][i];
            self.u_inv.entries[r][j] -= sub;
        }
    }

    /// col_i += q · col_j
    fn add_col(&mut self, i: usize, j: usize, q: &Int) {
        for r in 0..self.a.rows {
            let add = q * &self.a.entries[r][j];
            self.a.entries[r][i] += add;
        }
        for r in 0..self.v.rows {
            let add = q * &self.v.entries[r][j];
            self.v.entries[r][i] += add;
        }
        for c in 0..self.v_inv.cols {
            let sub = q * &self.v_inv.entries[i][c];
            self.v_inv.entries[j][c] -= sub;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.a.cols {
            self.a.entries[i][c] = -self.a.entries[i][c].clone();
        }
        for c in 0..self.u.cols {
            self.u.entries[i][c] = -self.u.entries[i][c].clone();
        }
        for r in 0..self.u_inv.rows {
            self.u_inv.entries[r][i] = -self.u_inv.entries[r][i].clone();
        }
    }

    fn run(&mut self) {
        let n = self.a.rows.min(self.a.cols);
        let mut t = 0;
        while t < n {
            if !self.pivot_to(t) {
                break;
            }
            self.clear_at(t);
            t += 1;
        }
        self.fix_divisibility(t);
        for i in 0..t {
            if self.a.entries[i][i].is_negative() {
                self.negate_row(i);
            }
        }
    }

    /// Moves a minimal-magnitude nonzero entry of the trailing block to (t,t).
    fn pivot_to(&mut self, t: usize) -> bool {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                if self.a.entries[i][j].is_zero() {
                    continue;
                }
                match &best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if self.a.entries[i][j].abs() < self.a.entries[*bi][*bj].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        match best {
            None => false,
            Some((i, j)) => {
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                true
            }
        }
    }

    fn clear_at(&mut self, t: usize) {
        loop {
            let mut dirty = false;
            for i in (t + 1)..self.a.rows {
                if self.a.entries[i][t].is_zero() {
                    continue;
                }
                let q = -self.a.entries[i][t].div_floor(&self.a.entries[t][t]);
                self.add_row(i, t, &q);
                if !self.a.entries[i][t].is_zero() {
                    self.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in (t + 1)..self.a.cols {
                if self.a.entries[t][j].is_zero() {
                    continue;
                }
                let q = -self.a.entries[t][j].div_floor(&self.a.entries[t][t]);
                self.add_col(j, t, &q);
                if !self.a.entries[t][j].is_zero() {
                    self.swap_cols(t, j);
                    dirty = true;
                }
            }
            let row_clear = ((t + 1)..self.a.rows).all(|i| self.a.entries[i][t].is_zero());
            let col_clear = ((t + 1)..self.a.cols).all(|j| self.a.entries[t][j].is_zero());
            if row_clear && col_clear && !dirty {
                break;
            }
        }
    }

    fn fix_divisibility(&mut self, r: usize) {
        if r < 2 {
            return;
        }
        loop {
            let mut fixed = true;
            for i in 0..r - 1 {
                let d0 = self.a.entries[i][i].clone();
                let d1 = self.a.entries[i + 1][i + 1].clone();
                if d0.is_zero() || (&d1 % &d0).is_zero() {
                    continue;
                }
                // fold d1 into the (i,i) slot and re-clear
                self.add_row(i, i + 1, &Int::one());
                self.clear_at(i);
                for j in i + 1..r - 1 {
                    self.clear_at(j);
                }
                fixed = false;
            }
            if fixed {
                break;
            }
        }
    }

    fn into_decomposition(self) -> SmithDecomposition {
        SmithDecomposition {
            s: self.a,
            u: self.u,
            u_inv: self.u_inv,
            v: self.v,
            v_inv: self.v_inv,
        }
    }
}

/// Free quotient of `ℤ^rank` by the saturation of the span of `gens`.
///
/// `projection` is `rank × quotient_rank`, `section` is `quotient_rank × rank`,
/// both acting on row vectors, with `section · projection = identity` on the
/// quotient. The quotient is always torsion-free because the span is
/// saturated before quotienting — exactly what the lattice `ℤ(σ ∩ N)`
/// spanned by the lattice points of a cone requires.
#[derive(Clone, Debug)]
pub struct QuotientLattice {
    pub ambient_rank: usize,
    pub quotient_rank: usize,
    pub projection: LatticeMatrix,
    pub section: LatticeMatrix,
    pub sublattice_basis: Vec<LatticeVector>,
    /// Elementary divisors of the generator matrix; any entry ≠ 1 means the
    /// raw generators spanned a finite-index sublattice of the saturation.
    pub generator_divisors: Vec<Int>,
}

pub fn quotient_lattice(rank: usize, gens: &[LatticeVector]) -> Result<QuotientLattice> {
    for g in gens {
        if g.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                got: g.rank(),
            });
        }
    }
    if gens.is_empty() {
        return Ok(QuotientLattice {
            ambient_rank: rank,
            quotient_rank: rank,
            projection: LatticeMatrix::identity(rank),
            section: LatticeMatrix::identity(rank),
            sublattice_basis: vec![],
            generator_divisors: vec![],
        });
    }
    let g = LatticeMatrix::from_rows(gens);
    let snf = g.smith_normal_form();
    let r = snf.divisors().len();
    let q = rank - r;
    // rows of v⁻¹ are a basis of ℤ^rank adapted to the span: the first r rows
    // span the saturation, the last q rows map to a basis of the quotient.
    let projection = LatticeMatrix::new(
        (0..rank)
            .map(|i| (r..rank).map(|j| snf.v.entries[i][j].clone()).collect())
            .collect(),
    );
    let section = LatticeMatrix::new(
        (r..rank)
            .map(|i| snf.v_inv.entries[i].clone())
            .collect::<Vec<_>>(),
    );
    let sublattice_basis = (0..r)
        .map(|i| LatticeVector::new(snf.v_inv.entries[i].clone()))
        .collect();
    Ok(QuotientLattice {
        ambient_rank: rank,
        quotient_rank: q,
        projection,
        section,
        sublattice_basis,
        generator_divisors: snf.divisors(),
    })
}

/// Canonical ordered basis of `∧^degree ℤ^rank`: index subsets of
/// `{0..rank}` of size `degree` in lexicographic order. Every module of the
/// crate shares this one ordering, so signs of wedge coordinates agree
/// everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeBasis {
    rank: usize,
    degree: usize,
    subsets: Vec<Vec<usize>>,
}

impl WedgeBasis {
    pub fn new(rank: usize, degree: usize) -> Self {
        WedgeBasis {
            rank,
            degree,
            subsets: combinations(rank, degree),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }
}

/// All `k`-element subsets of `{0, …, n-1}` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
    }
    (num / den) as usize
}

/// All integer vectors of `ℤ^rank` with coordinates in `[-radius, radius]`,
/// in lexicographic order.
pub fn weight_box(rank: usize, radius: i64) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; rank];
    fn rec(rank: usize, radius: i64, i: usize, cur: &mut Vec<i64>, out: &mut Vec<LatticeVector>) {
        if i == rank {
            out.push(LatticeVector::from_i64(cur));
            return;
        }
        for c in -radius..=radius {
            cur[i] = c;
            rec(rank, radius, i + 1, cur, out);
        }
    }
    rec(rank, radius, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    /// Independent oracle for the diagonal of the Smith form: the k-th
    /// determinantal divisor is the gcd of all k×k minors, and the elementary
    /// divisors are their successive quotients.
    fn snf_diagonal_oracle(a: &LatticeMatrix) -> Vec<Int> {
        let n = a.rows().min(a.cols());
        let mut prev = Int::one();
        let mut out = Vec::new();
        for k in 1..=n {
            let mut g = Int::zero();
            for rows in combinations(a.rows(), k) {
                for cols in combinations(a.cols(), k) {
                    g = g.gcd(&minor_det(a, &rows, &cols));
                }
            }
            if g.is_zero() {
                break;
            }
            out.push(&g / &prev);
            prev = g;
        }
        out
    }

    fn minor_det(a: &LatticeMatrix, rows: &[usize], cols: &[usize]) -> Int {
        // cofactor expansion; minors here are at most 4×4
        let k = rows.len();
        if k == 1 {
            return a.entry(rows[0], cols[0]).clone();
        }
        let mut acc = Int::zero();
        for (i, &r) in rows.iter().enumerate() {
            let sub_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
            let term = a.entry(r, cols[0]) * minor_det(a, &sub_rows, &cols[1..]);
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn check_snf(a: &LatticeMatrix) {
        let snf = a.smith_normal_form();
        assert!(snf.s.is_diagonal(), "{:?} not diagonal", snf.s);
        // u·a·v = s
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.s);
        // inverses really invert
        assert_eq!(snf.u.mul(&snf.u_inv), LatticeMatrix::identity(a.rows()));
        assert_eq!(snf.v_inv.mul(&snf.v), LatticeMatrix::identity(a.cols()));
        // reconstruct a = u⁻¹·s·v⁻¹
        assert_eq!(snf.u_inv.mul(&snf.s).mul(&snf.v_inv), *a);
        // divisibility chain, nonnegative, matches the minor-gcd oracle
        let d = snf.divisors();
        for i in 1..d.len() {
            assert!((&d[i] % &d[i - 1]).is_zero(), "chain broken: {:?}", d);
        }
        assert!(d.iter().all(|x| x.is_positive()));
        assert_eq!(d, snf_diagonal_oracle(a));
    }

    #[test]
    fn snf_identity() {
        let a = LatticeMatrix::identity(2);
        let snf = a.smith_normal_form();
        assert_eq!(snf.s, LatticeMatrix::identity(2));
        check_snf(&a);
    }

    #[test]
    fn snf_two_by_two() {
        let a = LatticeMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let snf = a.smith_normal_form();
        assert_eq!(snf.divisors(), vec![int(2), int(4)]);
        check_snf(&a);
    }

    #[test]
    fn snf_zero_matrix() {
        let a = LatticeMatrix::from_i64(&[&[0]]);
        let snf = a.smith_normal_form();
        assert_eq!(snf.s.entry(0, 0), &int(0));
        assert!(snf.divisors().is_empty());
        check_snf(&a);
    }

    #[test]
    fn snf_assorted() {
        for a in [
            LatticeMatrix::from_i64(&[&[1, 0, 0], &[1, 2, 0]]),
            LatticeMatrix::from_i64(&[&[-20, -7, -27], &[17, 8, 14], &[13, 8, 10]]),
            LatticeMatrix::from_i64(&[&[0, 0], &[0, 0]]),
            LatticeMatrix::from_i64(&[&[6], &[10], &[15]]),
            LatticeMatrix::from_i64(&[&[2, 6, 10, -4]]),
        ] {
            check_snf(&a);
        }
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(lv(&[2, 4, 0]).primitive().unwrap(), lv(&[1, 2, 0]));
        assert_eq!(lv(&[1, 0, 0]).primitive().unwrap(), lv(&[1, 0, 0]));
        assert_eq!(lv(&[-3, -6]).primitive().unwrap(), lv(&[-1, -2]));
        assert_eq!(lv(&[0, 0]).primitive(), Err(Error::ZeroVector));
    }

    #[test]
    fn primitive_idempotent() {
        for v in weight_box(3, 2) {
            if v.is_zero() {
                continue;
            }
            let p = v.primitive().unwrap();
            assert_eq!(p.primitive().unwrap(), p);
            assert!(p.is_primitive());
        }
    }

    #[test]
    fn quotient_by_plane_gens() {
        // the two generators span the xy-plane rationally with index two;
        // the quotient is taken by the saturation, so it is ℤ in z.
        let q = quotient_lattice(3, &[lv(&[1, 0, 0]), lv(&[1, 2, 0])]).unwrap();
        assert_eq!(q.quotient_rank, 1);
        assert_eq!(q.generator_divisors, vec![int(1), int(2)]);
        // projection is ± the z-coordinate
        let pz = q.projection.apply_row(&lv(&[0, 0, 1]));
        assert_eq!(pz.coord(0).abs(), int(1));
        assert!(q.projection.apply_row(&lv(&[1, 0, 0])).is_zero());
        assert!(q.projection.apply_row(&lv(&[1, 2, 0])).is_zero());
        // section then projection is the identity on the quotient
        assert_eq!(
            q.section.mul(&q.projection),
            LatticeMatrix::identity(1)
        );
    }

    #[test]
    fn quotient_no_gens() {
        let q = quotient_lattice(2, &[]).unwrap();
        assert_eq!(q.quotient_rank, 2);
        assert_eq!(q.projection, LatticeMatrix::identity(2));
    }

    #[test]
    fn quotient_full() {
        let q = quotient_lattice(1, &[lv(&[1])]).unwrap();
        assert_eq!(q.quotient_rank, 0);
    }

    #[test]
    fn quotient_round_trip() {
        let q = quotient_lattice(3, &[lv(&[1, 0, 0]), lv(&[1, 2, 0])]).unwrap();
        assert_eq!(
            q.section.mul(&q.projection),
            LatticeMatrix::identity(q.quotient_rank)
        );
        // lift any quotient element via the section and project back
        for w in weight_box(q.quotient_rank, 3) {
            let lifted = q.section.apply_row(&w);
            assert_eq!(q.projection.apply_row(&lifted), w);
        }
    }

    #[test]
    fn saturation_of_index_two_sublattice() {
        let m = LatticeMatrix::from_i64(&[&[1, 0, 0], &[1, 2, 0]]);
        let sat = m.saturation_basis();
        assert_eq!(
            sat,
            vec![lv(&[1, 0, 0]), lv(&[0, 1, 0])],
        );
    }

    #[test]
    fn kernel_is_orthogonal_complement() {
        let m = LatticeMatrix::from_i64(&[&[1, 0, 0], &[1, 2, 0]]);
        let k = m.right_kernel_basis();
        assert_eq!(k.len(), 1);
        for g in m.row_vectors() {
            assert!(g.dot(&k[0]).is_zero());
        }
    }

    #[test]
    fn hermite_canonical() {
        let m = LatticeMatrix::from_i64(&[&[0, 1, 2], &[1, 1, 1], &[2, 3, 5]]);
        let h = m.hermite_normal_form();
        // canonical form is independent of row order
        let m2 = LatticeMatrix::from_i64(&[&[2, 3, 5], &[0, 1, 2], &[1, 1, 1]]);
        assert_eq!(h, m2.hermite_normal_form());
    }

    #[test]
    fn wedge_basis_shape() {
        let b = WedgeBasis::new(4, 2);
        assert_eq!(b.dim(), 6);
        assert_eq!(b.subsets()[0], vec![0, 1]);
        assert_eq!(b.subsets()[5], vec![2, 3]);
        assert_eq!(binomial(4, 2), 6);
    }
}
