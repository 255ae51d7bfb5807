//! Finite cochain complexes of rational vector spaces with explicit
//! cohomology bases, chain maps, induced maps on cohomology, and mapping
//! cones. Everything is small and dense; exactness questions reduce to rank
//! counting.

use num_traits::Zero;

use crate::linalg::{QMat, Rat, Subspace};

/// A complex `C⁰ → C¹ → ⋯`; `maps[q]` is `dims[q] × dims[q+1]` acting on row
/// vectors.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    dims: Vec<usize>,
    maps: Vec<QMat>,
}

impl CochainComplex {
    pub fn new(dims: Vec<usize>, maps: Vec<QMat>) -> Self {
        assert_eq!(maps.len() + 1, dims.len().max(1));
        for (q, m) in maps.iter().enumerate() {
            assert_eq!(m.rows(), dims[q], "map {} row mismatch", q);
            assert_eq!(m.cols(), dims[q + 1], "map {} col mismatch", q);
        }
        CochainComplex { dims, maps }
    }

    pub fn zero_length(len: usize) -> Self {
        CochainComplex {
            dims: vec![0; len],
            maps: (0..len.saturating_sub(1)).map(|_| QMat::zero(0, 0)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, q: usize) -> usize {
        if q < self.dims.len() {
            self.dims[q]
        } else {
            0
        }
    }

    pub fn map(&self, q: usize) -> Option<&QMat> {
        self.maps.get(q)
    }

    /// `d ∘ d = 0` exactly.
    pub fn check_d_squared(&self) -> bool {
        for q in 0..self.maps.len().saturating_sub(1) {
            if !self.maps[q].mul(&self.maps[q + 1]).is_zero() {
                return false;
            }
        }
        true
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        (0..self.len()).map(|q| self.cohomology(q).dim()).collect()
    }

    /// Cycles, boundaries and a set of representative rows for `H^q`.
    pub fn cohomology(&self, q: usize) -> CohomologySpace {
        let dim = self.dim(q);
        let cycles = match self.maps.get(q) {
            Some(d) if dim > 0 => d.left_kernel(),
            _ => QMat::identity(dim),
        };
        let boundaries = if q == 0 || self.dim(q - 1) == 0 || dim == 0 {
            QMat::zero(0, dim)
        } else {
            let sub = Subspace::from_rows(dim, &self.maps[q - 1]);
            sub.basis().clone()
        };
        // extend the boundaries to a basis of the cycles
        let mut stacked = boundaries.clone();
        let mut reps_rows: Vec<Vec<Rat>> = Vec::new();
        let mut rank = stacked.rank();
        for i in 0..cycles.rows() {
            let cand = QMat::new(vec![cycles.row(i).to_vec()]);
            let trial = stacked.vstack(&cand);
            let r = trial.rank();
            if r > rank {
                reps_rows.push(cycles.row(i).to_vec());
                stacked = trial;
                rank = r;
            }
        }
        let reps = if reps_rows.is_empty() {
            QMat::zero(0, dim)
        } else {
            QMat::new(reps_rows)
        };
        CohomologySpace {
            ambient: dim,
            boundaries,
            reps,
        }
    }
}

/// `H^q` presented by boundary rows plus representative rows that complete
/// them to a basis of the cycles.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    ambient: usize,
    boundaries: QMat,
    reps: QMat,
}

impl CohomologySpace {
    pub fn dim(&self) -> usize {
        self.reps.rows()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn reps(&self) -> &QMat {
        &self.reps
    }

    /// Class coordinates of a cycle with respect to the representatives.
    pub fn class_coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        if self.dim() == 0 {
            // the class must be zero, i.e. v must be a boundary
            if v.iter().all(|x| x.is_zero()) {
                return Some(vec![]);
            }
            let target = QMat::new(vec![v.to_vec()]);
            return self.boundaries.express_rows(&target).map(|_| vec![]);
        }
        let stacked = self.boundaries.vstack(&self.reps);
        let target = QMat::new(vec![v.to_vec()]);
        let coeffs = stacked.express_rows(&target)?;
        Some(coeffs.row(0)[self.boundaries.rows()..].to_vec())
    }
}

/// A degreewise map between complexes; `comps[q]` is
/// `src.dims[q] × tgt.dims[q]`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    comps: Vec<QMat>,
}

impl ChainMap {
    pub fn new(src: &CochainComplex, tgt: &CochainComplex, comps: Vec<QMat>) -> Self {
        assert_eq!(comps.len(), src.len().max(tgt.len()));
        for (q, c) in comps.iter().enumerate() {
            assert_eq!(c.rows(), src.dim(q), "component {} rows", q);
            assert_eq!(c.cols(), tgt.dim(q), "component {} cols", q);
        }
        ChainMap { comps }
    }

    pub fn comp(&self, q: usize) -> &QMat {
        &self.comps[q]
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    /// `f ∘ d_src = d_tgt ∘ f` in every degree.
    pub fn commutes(&self, src: &CochainComplex, tgt: &CochainComplex) -> bool {
        for q in 0..self.comps.len().saturating_sub(1) {
            let left = match src.map(q) {
                Some(d) => d.mul(&self.comps[q + 1]),
                None => QMat::zero(src.dim(q), tgt.dim(q + 1)),
            };
            let right = match tgt.map(q) {
                Some(d) => self.comps[q].mul(d),
                None => QMat::zero(src.dim(q), tgt.dim(q + 1)),
            };
            if left != right {
                return false;
            }
        }
        true
    }

    /// Matrix of the induced map `H^q(src) → H^q(tgt)` in the representative
    /// coordinates of both sides.
    pub fn induced(
        &self,
        q: usize,
        src: &CochainComplex,
        tgt: &CochainComplex,
    ) -> QMat {
        let hs = src.cohomology(q);
        let ht = tgt.cohomology(q);
        let mut rows = Vec::new();
        for i in 0..hs.dim() {
            let image = if src.dim(q) == 0 {
                vec![Rat::zero(); tgt.dim(q)]
            } else {
                self.comps[q].apply_row(hs.reps().row(i))
            };
            let coords = ht
                .class_coords(&image)
                .expect("chain map sends cycles to cycles");
            rows.push(coords);
        }
        if rows.is_empty() {
            QMat::zero(0, ht.dim())
        } else {
            QMat::new(rows)
        }
    }
}

/// Direct sum of two complexes (degreewise block sum).
pub fn direct_sum(a: &CochainComplex, b: &CochainComplex) -> (CochainComplex, SumLayout) {
    let len = a.len().max(b.len());
    let dims: Vec<usize> = (0..len).map(|q| a.dim(q) + b.dim(q)).collect();
    let mut maps = Vec::new();
    for q in 0..len.saturating_sub(1) {
        let mut m = QMat::zero(dims[q], dims[q + 1]);
        if let Some(da) = a.map(q) {
            copy_block(&mut m, da, 0, 0);
        }
        if let Some(db) = b.map(q) {
            copy_block(&mut m, db, a.dim(q), a.dim(q + 1));
        }
        maps.push(m);
    }
    let layout = SumLayout {
        first_dims: (0..len).map(|q| a.dim(q)).collect(),
    };
    (CochainComplex::new(dims, maps), layout)
}

/// Remembers where the first summand sits inside a direct sum.
#[derive(Clone, Debug)]
pub struct SumLayout {
    pub first_dims: Vec<usize>,
}

pub fn copy_block(dest: &mut QMat, src: &QMat, row_off: usize, col_off: usize) {
    for i in 0..src.rows() {
        for j in 0..src.cols() {
            if !src.entry(i, j).is_zero() {
                dest.set(row_off + i, col_off + j, src.entry(i, j).clone());
            }
        }
    }
}

/// Kernel subcomplex of a degreewise-surjective chain map `g : M → P`:
/// returns the subcomplex `E = ker g` with its differential expressed in a
/// chosen basis, plus the basis rows of each `E^q` inside `M^q`.
pub fn kernel_subcomplex(m: &CochainComplex, g: &ChainMap) -> (CochainComplex, Vec<QMat>) {
    let len = m.len();
    let mut bases: Vec<QMat> = Vec::with_capacity(len);
    for q in 0..len {
        if m.dim(q) == 0 {
            bases.push(QMat::zero(0, 0));
        } else {
            bases.push(g.comp(q).left_kernel());
        }
    }
    let dims: Vec<usize> = bases.iter().map(|b| b.rows()).collect();
    let mut maps = Vec::new();
    for q in 0..len.saturating_sub(1) {
        if dims[q] == 0 || dims[q + 1] == 0 {
            maps.push(QMat::zero(dims[q], dims[q + 1]));
            continue;
        }
        let image = bases[q].mul(m.map(q).expect("length checked"));
        let expressed = bases[q + 1]
            .express_rows(&image)
            .expect("differential preserves the kernel of a chain map");
        maps.push(expressed);
    }
    (CochainComplex::new(dims, maps), bases)
}

/// Re-expresses a chain map `f : X → M` landing inside the kernel of `g`
/// as a chain map `X → E` in the kernel bases.
pub fn corestrict_to_kernel(
    x: &CochainComplex,
    e: &CochainComplex,
    bases: &[QMat],
    f: &ChainMap,
) -> ChainMap {
    let len = x.len().max(e.len());
    let mut comps = Vec::with_capacity(len);
    for q in 0..len {
        if x.dim(q) == 0 || e.dim(q) == 0 {
            comps.push(QMat::zero(x.dim(q), e.dim(q)));
            continue;
        }
        let image = f.comp(q).clone();
        let expressed = bases[q]
            .express_rows(&image)
            .expect("map lands in the kernel");
        comps.push(expressed);
    }
    ChainMap { comps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rats;

    /// 0 → ℚ² → ℚ → 0 with surjective difference map
    fn two_chart_complex() -> CochainComplex {
        CochainComplex::new(
            vec![2, 1],
            vec![QMat::new(vec![rats(&[-1]), rats(&[1])])],
        )
    }

    #[test]
    fn cohomology_of_two_chart_complex() {
        let c = two_chart_complex();
        assert!(c.check_d_squared());
        assert_eq!(c.cohomology_dims(), vec![1, 0]);
        let h0 = c.cohomology(0);
        // the diagonal is the kernel of the difference
        assert_eq!(h0.reps().rows(), 1);
        let coords = h0.class_coords(&rats(&[2, 2])).unwrap();
        assert_eq!(coords.len(), 1);
    }

    #[test]
    fn induced_identity_map() {
        let c = two_chart_complex();
        let id = ChainMap::new(&c, &c, vec![QMat::identity(2), QMat::identity(1)]);
        assert!(id.commutes(&c, &c));
        let m = id.induced(0, &c, &c);
        assert_eq!(m, QMat::identity(1));
    }

    #[test]
    fn kernel_subcomplex_of_sum_projection() {
        // kernel of the projection of c ⊕ c onto its first summand is c
        let c = two_chart_complex();
        let (s, _) = direct_sum(&c, &c);
        let mut p0 = QMat::zero(4, 2);
        p0.set(0, 0, Rat::from_integer(1.into()));
        p0.set(1, 1, Rat::from_integer(1.into()));
        let mut p1 = QMat::zero(2, 1);
        p1.set(0, 0, Rat::from_integer(1.into()));
        let g = ChainMap::new(&s, &c, vec![p0, p1]);
        assert!(g.commutes(&s, &c));
        let (e, bases) = kernel_subcomplex(&s, &g);
        assert_eq!(e.dim(0), 2);
        assert_eq!(e.dim(1), 1);
        assert_eq!(bases[0].rows(), 2);
        assert!(e.check_d_squared());
        assert_eq!(e.cohomology_dims(), c.cohomology_dims());
    }

    #[test]
    fn direct_sum_dims() {
        let c = two_chart_complex();
        let (s, layout) = direct_sum(&c, &c);
        assert_eq!(s.dim(0), 4);
        assert_eq!(s.dim(1), 2);
        assert_eq!(layout.first_dims, vec![2, 1]);
        assert_eq!(s.cohomology_dims(), vec![2, 0]);
    }
}
