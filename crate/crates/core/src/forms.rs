//! Per-weight graded pieces of differential forms on affine toric charts.
//!
//! For a weight `m` in the dual cone of `σ`, the reflexive piece is
//! `∧^p(M ∩ σ(m)⊥) ⊗ ℚ`, viewed inside `∧^p M ⊗ ℚ`. The Kähler piece is
//! represented by its image inside the same ambient space: the span of
//! wedges `v₁∧⋯∧v_p` over monoid elements `vᵢ` with `m − Σvᵢ` still in the
//! monoid. Units of the monoid make that enumeration infinite as stated, so
//! it is split: each wedge slot is either a nonzero element of the pointed
//! part (lifted along the fixed section) or a unit-lattice basis vector.
//! Multilinearity in the unit coordinates makes this finite family span the
//! same subspace: a wedge is multi-affine in the unit coordinates of its
//! slots, so its values on the integer grid span exactly what its
//! "coefficient" wedges span, and those have each slot equal to a section
//! lift or a unit basis vector.

use num_traits::{One, Zero};

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::lattice::{binomial, combinations, Int, LatticeVector, WedgeBasis};
use crate::linalg::{rat_int, QMat, Rat, Subspace};
use crate::monoids::AffineMonoid;

/// Default cap on the Hochschild oracle degree.
pub const MAX_HH_DEGREE: usize = 3;
/// Default budget for decomposition enumeration inside the oracle.
pub const DEFAULT_HH_BUDGET: usize = 1_000_000;

/// A rational subspace of `∧^p M ⊗ ℚ` attached to a weight. The basis matrix
/// is kept in reduced row echelon form, so equality is structural.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedSubspace {
    weight: LatticeVector,
    degree: usize,
    ambient_rank: usize,
    space: Subspace,
}

impl GradedSubspace {
    pub fn zero(weight: LatticeVector, degree: usize, ambient_rank: usize) -> Self {
        let dim = binomial(ambient_rank, degree);
        GradedSubspace {
            weight,
            degree,
            ambient_rank,
            space: Subspace::zero(dim),
        }
    }

    pub fn new(weight: LatticeVector, degree: usize, ambient_rank: usize, space: Subspace) -> Self {
        assert_eq!(space.ambient(), binomial(ambient_rank, degree));
        GradedSubspace {
            weight,
            degree,
            ambient_rank,
            space,
        }
    }

    pub fn weight(&self) -> &LatticeVector {
        &self.weight
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        self.space.is_subspace_of(&other.space)
    }

    /// Same subspace re-attached at another weight.
    pub fn reattach(&self, weight: LatticeVector) -> GradedSubspace {
        GradedSubspace {
            weight,
            degree: self.degree,
            ambient_rank: self.ambient_rank,
            space: self.space.clone(),
        }
    }
}

/// Coordinates of `v₁∧⋯∧v_p` in the shared lexicographic wedge basis:
/// the `p×p` minors of the row matrix of the vectors.
pub fn wedge_coordinates(rank: usize, vectors: &[LatticeVector]) -> Vec<Rat> {
    let p = vectors.len();
    let basis = WedgeBasis::new(rank, p);
    basis
        .subsets()
        .iter()
        .map(|cols| rat_int(&minor_det(vectors, cols)))
        .collect()
}

fn minor_det(vectors: &[LatticeVector], cols: &[usize]) -> Int {
    let k = cols.len();
    if k == 0 {
        return Int::one();
    }
    if k == 1 {
        return vectors[0].coord(cols[0]).clone();
    }
    let mut acc = Int::zero();
    for (i, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = vectors[0].coord(c) * minor_det(&vectors[1..], &rest);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Matrix of `ω ↦ m ∧ ω` from `∧^p` to `∧^{p+1}` in wedge coordinates
/// (rows indexed by degree-`p` subsets, acting on row vectors).
pub fn wedge_with_weight_matrix(rank: usize, p: usize, m: &LatticeVector) -> QMat {
    let src = WedgeBasis::new(rank, p);
    let tgt = WedgeBasis::new(rank, p + 1);
    let tgt_index = |subset: &[usize]| -> usize {
        tgt.subsets()
            .iter()
            .position(|s| s == subset)
            .expect("subset in lexicographic basis")
    };
    let mut out = QMat::zero(src.dim(), tgt.dim());
    for (row, subset) in src.subsets().iter().enumerate() {
        for i in 0..rank {
            if subset.contains(&i) || m.coord(i).is_zero() {
                continue;
            }
            let mut joined = subset.clone();
            let pos = joined.iter().position(|&j| j > i).unwrap_or(joined.len());
            joined.insert(pos, i);
            // moving e_i past `pos` earlier factors costs (−1)^pos
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            let col = tgt_index(&joined);
            out.set(row, col, rat_int(&(m.coord(i) * Int::from(sign))));
        }
    }
    out
}

/// Matrix of the contraction `ι_n : ∧^p → ∧^{p-1}` in wedge coordinates.
pub fn contraction_matrix(rank: usize, p: usize, n: &LatticeVector) -> QMat {
    assert!(p >= 1);
    let src = WedgeBasis::new(rank, p);
    let tgt = WedgeBasis::new(rank, p - 1);
    let tgt_index = |subset: &[usize]| -> usize {
        tgt.subsets()
            .iter()
            .position(|s| s == subset)
            .expect("subset in lexicographic basis")
    };
    let mut out = QMat::zero(src.dim(), tgt.dim());
    for (row, subset) in src.subsets().iter().enumerate() {
        for (k, &i) in subset.iter().enumerate() {
            if n.coord(i).is_zero() {
                continue;
            }
            let rest: Vec<usize> = subset.iter().copied().filter(|&x| x != i).collect();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let col = tgt_index(&rest);
            out.set(row, col, rat_int(&(n.coord(i) * Int::from(sign))));
        }
    }
    out
}

/// Lattice basis of `M ∩ face⊥` for a face of a cone in `N`.
fn orthogonal_basis(face: &Cone) -> Vec<LatticeVector> {
    let mut gens = face.rays().to_vec();
    gens.extend(face.lineality().iter().cloned());
    if gens.is_empty() {
        return (0..face.ambient_rank())
            .map(|i| LatticeVector::unit(face.ambient_rank(), i))
            .collect();
    }
    crate::lattice::LatticeMatrix::from_rows(&gens).right_kernel_basis()
}

/// The weight-`m` piece of the reflexive `p`-forms over the chart of `σ`:
/// `∧^p(M ∩ σ(m)⊥)` if `m ∈ σ∨`, zero otherwise.
pub fn tilde_omega_weight(sigma: &Cone, m: &LatticeVector, p: usize) -> GradedSubspace {
    let rank = sigma.ambient_rank();
    if !sigma.dual().contains(m).expect("rank checked by caller") {
        return GradedSubspace::zero(m.clone(), p, rank);
    }
    let face = sigma.face_of_weight(m).expect("m is in the dual");
    let basis = orthogonal_basis(&face);
    let mut rows = Vec::new();
    for subset in combinations(basis.len(), p) {
        let vecs: Vec<LatticeVector> = subset.iter().map(|&i| basis[i].clone()).collect();
        rows.push(wedge_coordinates(rank, &vecs));
    }
    let dim = binomial(rank, p);
    let space = if rows.is_empty() {
        Subspace::zero(dim)
    } else {
        Subspace::from_rows(dim, &QMat::new(rows))
    };
    let out = GradedSubspace::new(m.clone(), p, rank, space);
    debug_assert_eq!(out.dim(), binomial(basis.len(), p));
    out
}

/// The weight-`m` piece of the image of Kähler `p`-forms inside
/// `∧^p M ⊗ ℚ`, for the monoid of `σ`.
pub fn omega_image_weight(sigma: &Cone, m: &LatticeVector, p: usize) -> GradedSubspace {
    omega_image_in_monoid(&AffineMonoid::of_cone(sigma), m, p)
}

/// Same, rooted at an explicit monoid (used to re-root computations in the
/// sub-monoid `A ∩ σ(m)⊥` and by the Čech layer's per-chart caches).
pub fn omega_image_in_monoid(a: &AffineMonoid, m: &LatticeVector, p: usize) -> GradedSubspace {
    let rank = a.ambient_rank();
    let gens = omega_image_generators(a, m, p);
    let rows: Vec<Vec<Rat>> = gens
        .iter()
        .map(|family| wedge_coordinates(rank, family))
        .collect();
    let dim = binomial(rank, p);
    let space = if rows.is_empty() {
        Subspace::zero(dim)
    } else {
        Subspace::from_rows(dim, &QMat::new(rows))
    };
    GradedSubspace::new(m.clone(), p, rank, space)
}

/// The finite spanning family behind `omega_image_in_monoid`: each entry is
/// a `p`-tuple of lattice vectors whose wedge is a generator of the image
/// piece. Exposed so the dilation layer can re-derive the same span after
/// scaling every slot.
pub fn omega_image_generators(
    a: &AffineMonoid,
    m: &LatticeVector,
    p: usize,
) -> Vec<Vec<LatticeVector>> {
    if !a.contains(m).expect("rank agreement") {
        return vec![];
    }
    let split = a.pointed_split();
    let m_bar = split.projection.apply_row(m);
    let units = &split.unit_basis;
    let mut out: Vec<Vec<LatticeVector>> = Vec::new();
    for pointed_slots in 0..=p {
        let unit_slots = p - pointed_slots;
        if unit_slots > units.len() {
            continue;
        }
        let tuples = increasing_nonzero_tuples(&split.pointed, &m_bar, pointed_slots);
        for tuple in &tuples {
            let lifted: Vec<LatticeVector> = tuple
                .iter()
                .map(|v| split.section.apply_row(v))
                .collect();
            for unit_subset in combinations(units.len(), unit_slots) {
                let mut vecs = lifted.clone();
                vecs.extend(unit_subset.iter().map(|&j| units[j].clone()));
                out.push(vecs);
            }
        }
    }
    out
}

/// Strictly increasing tuples of nonzero pointed-monoid elements whose sum
/// stays below `m` in the monoid order. Repeats would wedge to zero, so they
/// are skipped outright.
fn increasing_nonzero_tuples(
    pointed: &AffineMonoid,
    m: &LatticeVector,
    k: usize,
) -> Vec<Vec<LatticeVector>> {
    let mut out = Vec::new();
    let mut cur: Vec<LatticeVector> = Vec::with_capacity(k);
    fn rec(
        pointed: &AffineMonoid,
        remaining: &LatticeVector,
        k: usize,
        cur: &mut Vec<LatticeVector>,
        out: &mut Vec<Vec<LatticeVector>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for u in pointed
            .elements_below(remaining)
            .expect("remaining stays in the monoid")
        {
            if u.is_zero() {
                continue;
            }
            if let Some(last) = cur.last() {
                if &u <= last {
                    continue;
                }
            }
            let rest = remaining.sub(&u);
            cur.push(u);
            rec(pointed, &rest, k, cur, out);
            cur.pop();
        }
    }
    rec(pointed, m, k, &mut cur, &mut out);
    out
}

/// `dim Ω̃ − dim (image Ω)` at one weight; nonnegative since the image piece
/// is contained in the reflexive piece.
pub fn coker_dimension(sigma: &Cone, m: &LatticeVector, p: usize) -> usize {
    let tilde = tilde_omega_weight(sigma, m, p);
    let image = omega_image_weight(sigma, m, p);
    debug_assert!(image.is_subspace_of(&tilde));
    tilde.dim() - image.dim()
}

/// The exterior derivative in weight `m`: the map `ω ↦ m ∧ ω` restricted to
/// a given domain subspace of `∧^p M ⊗ ℚ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeMap {
    pub weight: LatticeVector,
    pub degree_from: usize,
    /// `domain.dim × binomial(rank, p+1)`: rows are images of the domain
    /// basis vectors in wedge coordinates.
    pub matrix: QMat,
}

impl DerivativeMap {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn image(&self, ambient_rank: usize) -> GradedSubspace {
        GradedSubspace::new(
            self.weight.clone(),
            self.degree_from + 1,
            ambient_rank,
            Subspace::from_rows(self.matrix.cols(), &self.matrix),
        )
    }
}

pub fn derivative_map(
    m: &LatticeVector,
    p: usize,
    domain: &GradedSubspace,
) -> Result<DerivativeMap> {
    if domain.weight() != m || domain.degree() != p {
        return Err(Error::WeightMismatch);
    }
    let ambient = wedge_with_weight_matrix(domain.ambient_rank(), p, m);
    let matrix = domain.space().basis().mul(&ambient);
    Ok(DerivativeMap {
        weight: m.clone(),
        degree_from: p,
        matrix,
    })
}

/// Which graded sheaf a section request refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SheafKind {
    /// Reflexive (pushed-forward) `p`-forms.
    Tilde(usize),
    /// Image of Kähler `p`-forms under the comparison map.
    OmegaImage(usize),
    /// The structure sheaf (reflexive 0-forms).
    Structure,
}

impl SheafKind {
    pub fn degree(&self) -> usize {
        match self {
            SheafKind::Tilde(p) | SheafKind::OmegaImage(p) => *p,
            SheafKind::Structure => 0,
        }
    }

    pub fn section(&self, sigma: &Cone, m: &LatticeVector) -> GradedSubspace {
        match self {
            SheafKind::Tilde(p) => tilde_omega_weight(sigma, m, *p),
            SheafKind::Structure => tilde_omega_weight(sigma, m, 0),
            SheafKind::OmegaImage(p) => omega_image_weight(sigma, m, *p),
        }
    }
}

/// The inclusion-induced restriction of sections along `U_τ → U_σ` for a
/// face `τ ≺ σ`: both sides live in `∧^p M ⊗ ℚ` and the section space only
/// grows, so the map is the identity on coordinates, expressed in the bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionMap {
    pub source: GradedSubspace,
    pub target: GradedSubspace,
    /// `source.dim × target.dim`
    pub matrix: QMat,
}

pub fn restriction_map(
    sigma: &Cone,
    face: &Cone,
    m: &LatticeVector,
    p: usize,
    sheaf: SheafKind,
) -> Result<RestrictionMap> {
    if !face.is_face_of(sigma) {
        return Err(Error::NotAFace);
    }
    let kind = match sheaf {
        SheafKind::Structure => SheafKind::Tilde(0),
        other => other,
    };
    let kind = match kind {
        SheafKind::Tilde(_) => SheafKind::Tilde(p),
        SheafKind::OmegaImage(_) => SheafKind::OmegaImage(p),
        SheafKind::Structure => unreachable!(),
    };
    let source = kind.section(sigma, m);
    let target = kind.section(face, m);
    let matrix = target
        .space()
        .basis()
        .express_rows(source.space().basis())
        .expect("sections over the face contain sections over the cone");
    Ok(RestrictionMap {
        source,
        target,
        matrix,
    })
}

/// Weight-`m` kernel of the residue-style map from `𝒪 ⊗ ∧^p M` to the sum
/// over rays of `𝒪_{V(ρ)} ⊗ ∧^{p-1}(M ∩ ρ⊥)`. Defined for every cone; the
/// comparison against the reflexive piece is the content of the residue
/// description on smooth charts.
pub fn residue_kernel(sigma: &Cone, m: &LatticeVector, p: usize) -> GradedSubspace {
    let rank = sigma.ambient_rank();
    if !sigma.dual().contains(m).expect("rank agreement") {
        return GradedSubspace::zero(m.clone(), p, rank);
    }
    let dim = binomial(rank, p);
    if p == 0 {
        return GradedSubspace::new(m.clone(), 0, rank, Subspace::full(dim));
    }
    // only rays where χ^m survives the restriction contribute a constraint
    let mut stacked: Option<QMat> = None;
    for ray in sigma.rays() {
        let n = ray.primitive().expect("rays are nonzero");
        if !m.dot(&n).is_zero() {
            continue;
        }
        let c = contraction_matrix(rank, p, &n);
        stacked = Some(match stacked {
            None => c,
            Some(prev) => hstack(&prev, &c),
        });
    }
    let space = match stacked {
        None => Subspace::full(dim),
        Some(c) => Subspace::from_rows(dim, &c.left_kernel()),
    };
    GradedSubspace::new(m.clone(), p, rank, space)
}

fn hstack(a: &QMat, b: &QMat) -> QMat {
    assert_eq!(a.rows(), b.rows());
    let mut data = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut row = a.row(i).to_vec();
        row.extend(b.row(i).iter().cloned());
        data.push(row);
    }
    QMat::new(data)
}

/// Verifies, at one weight, that the reflexive piece equals the kernel of
/// the assembled residue map. Restricted to smooth cones, where the residue
/// description of the defining sequence applies chart by chart.
pub fn residue_check(sigma: &Cone, m: &LatticeVector, p: usize) -> Result<bool> {
    if !sigma.classify().smooth {
        return Err(Error::NonSmoothCone);
    }
    Ok(tilde_omega_weight(sigma, m, p) == residue_kernel(sigma, m, p))
}

/// Exact weight-graded Hochschild dimensions `HH_q` for `q ≤ max_degree`,
/// over the chart of `σ`.
///
/// The unit lattice splits off as an exterior algebra factor whose weight
/// pieces are all of dimension `binomial(units, i)`; the pointed part is
/// computed from the exhaustive weight-graded bar-type complex, and the two
/// combine by the Künneth rule.
pub fn hochschild_weight_oracle(
    sigma: &Cone,
    m: &LatticeVector,
    max_degree: usize,
) -> Result<Vec<usize>> {
    hochschild_dims_of_monoid(
        &AffineMonoid::of_cone(sigma),
        m,
        max_degree,
        DEFAULT_HH_BUDGET,
    )
}

pub fn hochschild_dims_of_monoid(
    a: &AffineMonoid,
    m: &LatticeVector,
    max_degree: usize,
    budget: usize,
) -> Result<Vec<usize>> {
    if max_degree > MAX_HH_DEGREE {
        return Err(Error::DegreeTooLarge {
            requested: max_degree,
            max: MAX_HH_DEGREE,
        });
    }
    if !a.contains(m).expect("rank agreement") {
        return Ok(vec![0; max_degree + 1]);
    }
    let split = a.pointed_split();
    let m_bar = split.projection.apply_row(m);
    let pointed = pointed_hochschild_dims(&split.pointed, &m_bar, max_degree, budget)?;
    let u = split.unit_basis.len();
    Ok((0..=max_degree)
        .map(|q| {
            (0..=q.min(u))
                .map(|i| binomial(u, i) * pointed[q - i])
                .sum()
        })
        .collect())
}

fn pointed_hochschild_dims(
    pointed: &AffineMonoid,
    m_bar: &LatticeVector,
    max_degree: usize,
    budget: usize,
) -> Result<Vec<usize>> {
    // chains C_q are spanned by (q+1)-tuples of monoid elements summing to m̄
    let mut chains: Vec<Vec<Vec<LatticeVector>>> = Vec::with_capacity(max_degree + 2);
    for q in 0..=(max_degree + 1) {
        chains.push(pointed.decompositions_budgeted(m_bar, q + 1, budget)?);
    }
    let boundary = |q: usize| -> QMat {
        // b: C_q → C_{q-1}
        let src = &chains[q];
        let tgt = &chains[q - 1];
        let index: std::collections::BTreeMap<&Vec<LatticeVector>, usize> =
            tgt.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut mat = QMat::zero(src.len(), tgt.len());
        for (row, tuple) in src.iter().enumerate() {
            for i in 0..q {
                let mut merged = Vec::with_capacity(q);
                merged.extend(tuple[..i].iter().cloned());
                merged.push(tuple[i].add(&tuple[i + 1]));
                merged.extend(tuple[i + 2..].iter().cloned());
                let col = index[&merged];
                let sign = if i % 2 == 0 { Rat::one() } else { -Rat::one() };
                let cur = mat.entry(row, col).clone();
                mat.set(row, col, cur + sign);
            }
            let mut wrapped = Vec::with_capacity(q);
            wrapped.push(tuple[q].add(&tuple[0]));
            wrapped.extend(tuple[1..q].iter().cloned());
            let col = index[&wrapped];
            let sign = if q % 2 == 0 { Rat::one() } else { -Rat::one() };
            let cur = mat.entry(row, col).clone();
            mat.set(row, col, cur + sign);
        }
        mat
    };
    let mut ranks = vec![0usize; max_degree + 2];
    for q in 1..=(max_degree + 1) {
        if chains[q].is_empty() || chains[q - 1].is_empty() {
            ranks[q] = 0;
        } else {
            ranks[q] = boundary(q).rank();
        }
    }
    Ok((0..=max_degree)
        .map(|q| chains[q].len() - ranks[q] - ranks[q + 1])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::weight_box;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    fn tau() -> Cone {
        Cone::from_rays(3, &[lv(&[1, 0, 0]), lv(&[1, 2, 0])])
    }

    fn orthant(rank: usize) -> Cone {
        let rays: Vec<LatticeVector> =
            (0..rank).map(|i| LatticeVector::unit(rank, i)).collect();
        Cone::from_rays(rank, &rays)
    }

    #[test]
    fn tilde_examples() {
        // weight (1,0,0) cuts out the origin face, so the piece is all of ∧¹M
        let t = tilde_omega_weight(&tau(), &lv(&[1, 0, 0]), 1);
        assert_eq!(t.dim(), 3);
        // degree zero pieces are one-dimensional wherever the weight lives
        assert_eq!(tilde_omega_weight(&tau(), &lv(&[1, 0, 0]), 0).dim(), 1);
        // outside the dual cone everything vanishes
        assert_eq!(tilde_omega_weight(&tau(), &lv(&[-1, 0, 0]), 1).dim(), 0);
    }

    #[test]
    fn tilde_dims_follow_face_binomials() {
        let t = tau();
        for m in weight_box(3, 2) {
            if !t.dual().contains(&m).unwrap() {
                continue;
            }
            let face = t.face_of_weight(&m).unwrap();
            let r = 3 - face.dim();
            for p in 0..=3 {
                assert_eq!(tilde_omega_weight(&t, &m, p).dim(), binomial(r, p));
            }
        }
    }

    #[test]
    fn image_at_base_weight() {
        // spanned by dX and X·dT/T: directions (1,0,0) and (0,0,1)
        let img = omega_image_weight(&tau(), &lv(&[1, 0, 0]), 1);
        assert_eq!(img.dim(), 2);
        assert!(img.space().contains(&wedge_coordinates(3, &[lv(&[1, 0, 0])])));
        assert!(img.space().contains(&wedge_coordinates(3, &[lv(&[0, 0, 1])])));
        assert!(!img.space().contains(&wedge_coordinates(3, &[lv(&[0, 1, 0])])));
    }

    #[test]
    fn image_at_doubled_weight() {
        let img = omega_image_weight(&tau(), &lv(&[2, 0, 0]), 1);
        assert_eq!(img.dim(), 3);
    }

    #[test]
    fn image_equals_tilde_on_smooth_chart() {
        let c = orthant(2);
        for m in weight_box(2, 2) {
            for p in 0..=2 {
                let t = tilde_omega_weight(&c, &m, p);
                let i = omega_image_weight(&c, &m, p);
                assert_eq!(t, i, "weight {} degree {}", m, p);
            }
        }
    }

    #[test]
    fn image_always_inside_tilde() {
        for m in weight_box(3, 2) {
            for p in 0..=2 {
                let t = tilde_omega_weight(&tau(), &m, p);
                let i = omega_image_weight(&tau(), &m, p);
                assert!(i.is_subspace_of(&t));
            }
        }
    }

    #[test]
    fn coker_examples() {
        for c in -2i64..=2 {
            assert_eq!(coker_dimension(&tau(), &lv(&[1, 0, c]), 1), 1);
        }
        assert_eq!(coker_dimension(&tau(), &lv(&[0, 1, 0]), 1), 0);
        let smooth = orthant(2);
        for m in weight_box(2, 2) {
            for p in 0..=2 {
                assert_eq!(coker_dimension(&smooth, &m, p), 0);
            }
        }
    }

    #[test]
    fn face_reduction_of_image() {
        // the image piece computed in A equals the one computed in A ∩ σ(m)⊥
        let t = tau();
        let a = AffineMonoid::of_cone(&t);
        for m in weight_box(3, 2) {
            if !a.contains(&m).unwrap() {
                continue;
            }
            let face = t.face_of_weight(&m).unwrap();
            let b = a.intersect_orthogonal(&face);
            for p in 0..=2 {
                assert_eq!(
                    omega_image_in_monoid(&a, &m, p),
                    omega_image_in_monoid(&b, &m, p),
                    "weight {} degree {}",
                    m,
                    p
                );
            }
        }
    }

    #[test]
    fn derivative_wedge_formula() {
        let m = lv(&[1, 0, 0]);
        let w = wedge_with_weight_matrix(3, 1, &m);
        // e₂ ↦ e₁∧e₂ : coordinate over {0,1} is +1
        let img = w.apply_row(&crate::linalg::rats(&[0, 1, 0]));
        assert_eq!(img, crate::linalg::rats(&[1, 0, 0]));
        // m ∧ m = 0
        let img = w.apply_row(&crate::linalg::rats(&[1, 0, 0]));
        assert!(img.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn derivative_on_full_tilde_piece() {
        let m = lv(&[1, 0, 0]);
        let dom = tilde_omega_weight(&tau(), &m, 1);
        let d = derivative_map(&m, 1, &dom).unwrap();
        assert_eq!(d.rank(), 2); // kernel is the line ℚ·m
        assert_eq!(
            derivative_map(&lv(&[0, 1, 0]), 1, &dom),
            Err(Error::WeightMismatch)
        );
    }

    #[test]
    fn derivative_squares_to_zero() {
        let m = lv(&[1, 2, 1]);
        for p in 0..=2 {
            let a = wedge_with_weight_matrix(3, p, &m);
            let b = wedge_with_weight_matrix(3, p + 1, &m);
            assert!(a.mul(&b).is_zero());
        }
    }

    #[test]
    fn wedge_kernel_equals_image_at_nonzero_weight() {
        // exactness of m∧− on the full exterior algebra for m ≠ 0
        let m = lv(&[1, 0, 0]);
        for p in 1..=2 {
            let a = wedge_with_weight_matrix(3, p - 1, &m);
            let b = wedge_with_weight_matrix(3, p, &m);
            let image_dim = Subspace::from_rows(a.cols(), &a).dim();
            let kernel_dim = b.rows() - b.rank();
            assert_eq!(image_dim, kernel_dim, "degree {}", p);
        }
    }

    #[test]
    fn restriction_examples() {
        let t = tau();
        let ray = Cone::from_rays(3, &[lv(&[1, 0, 0])]);
        // m = (1,0,0) cuts the origin face on both sides: a 3→3 isomorphism
        let m = lv(&[1, 0, 0]);
        let r = restriction_map(&t, &ray, &m, 1, SheafKind::Tilde(1)).unwrap();
        assert_eq!(r.source.dim(), 3);
        assert_eq!(r.target.dim(), 3);
        assert_eq!(r.matrix.rank(), 3);

        // m = (0,1,0) keeps the ray e₁ on both sides: a 2→2 isomorphism
        let m = lv(&[0, 1, 0]);
        let r = restriction_map(&t, &ray, &m, 1, SheafKind::Tilde(1)).unwrap();
        assert_eq!(r.source.dim(), 2);
        assert_eq!(r.target.dim(), 2);
        assert_eq!(r.matrix.rank(), 2);

        // face = cone itself: identity
        let r = restriction_map(&t, &t, &m, 1, SheafKind::Tilde(1)).unwrap();
        assert_eq!(r.matrix, QMat::identity(2));

        // weight outside σ∨: zero map from zero
        let m = lv(&[-1, 1, 0]);
        assert!(!t.dual().contains(&m).unwrap());
        let r = restriction_map(&t, &ray, &m, 1, SheafKind::Tilde(1)).unwrap();
        assert_eq!(r.source.dim(), 0);

        let not_face = Cone::from_rays(3, &[lv(&[1, 1, 0])]);
        assert_eq!(
            restriction_map(&t, &not_face, &m, 1, SheafKind::Tilde(1)),
            Err(Error::NotAFace)
        );
    }

    #[test]
    fn restrictions_injective_on_box() {
        let t = tau();
        for face in t.faces().unwrap() {
            for m in weight_box(3, 2) {
                if !t.dual().contains(&m).unwrap() {
                    continue;
                }
                for p in 0..=2 {
                    let r = restriction_map(&t, &face, &m, p, SheafKind::Tilde(p)).unwrap();
                    assert_eq!(r.matrix.rank(), r.source.dim());
                }
            }
        }
    }

    #[test]
    fn residue_on_smooth_plane() {
        let c = orthant(2);
        let m = lv(&[1, 0]);
        assert!(residue_check(&c, &m, 1).unwrap());
        let k = residue_kernel(&c, &m, 1);
        assert_eq!(k.dim(), 1);
        assert!(k.space().contains(&wedge_coordinates(2, &[lv(&[1, 0])])));
        // degree zero: no constraints
        assert!(residue_check(&c, &m, 0).unwrap());
        // weight zero: all rays constrain, kernel matches the tilde piece
        assert!(residue_check(&c, &LatticeVector::zero(2), 1).unwrap());
    }

    #[test]
    fn residue_box_sweep_smooth() {
        for c in [orthant(2), orthant(3)] {
            let rank = c.ambient_rank();
            for m in weight_box(rank, 2) {
                for p in 0..=rank {
                    assert!(residue_check(&c, &m, p).unwrap());
                }
            }
        }
    }

    #[test]
    fn residue_rejects_singular_cone() {
        assert_eq!(
            residue_check(&tau(), &lv(&[1, 0, 0]), 1),
            Err(Error::NonSmoothCone)
        );
    }

    #[test]
    fn residue_kernel_matches_tilde_even_when_singular() {
        // the kernel description is the definition on every chart
        for m in weight_box(3, 2) {
            for p in 0..=3 {
                assert_eq!(
                    residue_kernel(&tau(), &m, p),
                    tilde_omega_weight(&tau(), &m, p)
                );
            }
        }
    }

    #[test]
    fn hochschild_on_tau_chart() {
        let dims = hochschild_weight_oracle(&tau(), &lv(&[1, 0, 0]), 2).unwrap();
        assert_eq!(dims[0], 1);
        assert_eq!(dims[1], 2); // matches the two-dimensional image piece
        let img = omega_image_weight(&tau(), &lv(&[1, 0, 0]), 1);
        assert_eq!(dims[1], img.dim());
    }

    #[test]
    fn hochschild_free_monoid_matches_binomials() {
        let c = orthant(2);
        let dims = hochschild_weight_oracle(&c, &lv(&[1, 1]), 3).unwrap();
        // smooth chart: HH_q piece has the Kähler dimension
        assert_eq!(dims, vec![1, 2, 1, 0]);
        let zero = hochschild_weight_oracle(&c, &lv(&[-1, 0]), 2).unwrap();
        assert_eq!(zero, vec![0, 0, 0]);
    }

    #[test]
    fn hochschild_face_reduction() {
        // weight pieces agree between A and B = A ∩ σ(m)⊥
        let t = tau();
        let a = AffineMonoid::of_cone(&t);
        for m in [lv(&[0, 1, 0]), lv(&[2, -1, 0]), lv(&[1, 0, 1])] {
            let face = t.face_of_weight(&m).unwrap();
            let b = a.intersect_orthogonal(&face);
            let in_a = hochschild_dims_of_monoid(&a, &m, 2, DEFAULT_HH_BUDGET).unwrap();
            let in_b = hochschild_dims_of_monoid(&b, &m, 2, DEFAULT_HH_BUDGET).unwrap();
            assert_eq!(in_a, in_b, "weight {}", m);
        }
    }

    #[test]
    fn hochschild_degree_cap() {
        assert_eq!(
            hochschild_weight_oracle(&tau(), &lv(&[1, 0, 0]), 9),
            Err(Error::DegreeTooLarge { requested: 9, max: 3 })
        );
    }

    #[test]
    fn hh1_matches_image_dim_on_box() {
        let quadric = AffineMonoid::from_dual_cone(Cone::from_rays(2, &[lv(&[0, 1]), lv(&[2, -1])]));
        for m in weight_box(2, 3) {
            if !quadric.contains(&m).unwrap() {
                continue;
            }
            let hh = hochschild_dims_of_monoid(&quadric, &m, 1, DEFAULT_HH_BUDGET).unwrap();
            let img = omega_image_in_monoid(&quadric, &m, 1);
            assert_eq!(hh[1], img.dim(), "weight {}", m);
        }
    }
}
