//! Dilation endomorphisms on weight pieces and their colimit traces.
//!
//! Raising monomials to the `c`-th power sends the weight-`m` piece to the
//! weight-`cm` piece; on `p`-form pieces the induced map is `c^p` times the
//! identity on wedge coordinates, so each piece is carried to the same
//! subspace of `∧^p M ⊗ ℚ`, re-attached at the scaled weight. Iterating
//! against a sequence of factors produces a weakly increasing chain of
//! Kähler-image pieces inside the fixed reflexive piece; the traces record
//! where the chain stabilizes.


use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::forms::{
    hochschild_dims_of_monoid, omega_image_generators, tilde_omega_weight, wedge_coordinates,
    GradedSubspace, DEFAULT_HH_BUDGET,
};
use crate::lattice::{Int, LatticeVector};
use crate::linalg::{rat_int, QMat, Rat, Subspace};
use crate::monoids::AffineMonoid;

/// A chain of Kähler-image pieces along iterated dilations.
#[derive(Clone, Debug)]
pub struct DilationTrace {
    pub cone: Cone,
    pub base_weight: LatticeVector,
    pub degree: usize,
    /// The dilation factors actually consumed (a prefix of the input).
    pub factors: Vec<u64>,
    /// Image pieces at weights `m, c₁m, c₁c₂m, …` (as many as were needed).
    pub chain: Vec<GradedSubspace>,
    /// First index `k` with `chain[k] = chain[k+1] = ` the reflexive piece.
    pub stabilized_at: Option<usize>,
    /// Dimension of the reflexive piece, the stabilization target.
    pub tilde_dim: usize,
}

impl DilationTrace {
    pub fn chain_dims(&self) -> Vec<usize> {
        self.chain.iter().map(|s| s.dim()).collect()
    }
}

/// The image of the weight-`m` Kähler piece under one dilation by `c`,
/// computed two ways and checked equal: directly, by scaling every spanning
/// vector by `c` and re-expanding the wedges; and through the scaling law,
/// as `c^p` times the identity on wedge coordinates.
pub fn theta_image(
    sigma: &Cone,
    m: &LatticeVector,
    p: usize,
    c: u64,
) -> Result<GradedSubspace> {
    assert!(c >= 1, "dilation factors are positive");
    if !sigma.dual().contains(m)? {
        return Err(Error::WeightOutsideDual);
    }
    let monoid = AffineMonoid::of_cone(sigma);
    let gens = omega_image_generators(&monoid, m, p);
    let rank = sigma.ambient_rank();
    let c_int = Int::from(c);
    let scale = rat_int(&c_int.pow(p as u32));
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for family in &gens {
        let scaled_vectors: Vec<LatticeVector> =
            family.iter().map(|v| v.scale(&c_int)).collect();
        let direct = wedge_coordinates(rank, &scaled_vectors);
        let by_law: Vec<Rat> = wedge_coordinates(rank, family)
            .into_iter()
            .map(|x| x * &scale)
            .collect();
        assert_eq!(direct, by_law, "dilation scaling law violated");
        rows.push(direct);
    }
    let dim = crate::lattice::binomial(rank, p);
    let space = if rows.is_empty() {
        Subspace::zero(dim)
    } else {
        Subspace::from_rows(dim, &QMat::new(rows))
    };
    let scaled_weight = m.scale(&c_int);
    Ok(GradedSubspace::new(scaled_weight, p, rank, space))
}

/// The reflexive pieces at `m` and `cm` coincide as subspaces, because the
/// face cut out by a weight is invariant under positive scaling.
pub fn tilde_theta_iso_check(sigma: &Cone, m: &LatticeVector, p: usize, c: u64) -> bool {
    assert!(c >= 1);
    let at_m = tilde_omega_weight(sigma, m, p);
    let at_cm = tilde_omega_weight(sigma, &m.scale(&Int::from(c)), p);
    at_m.space() == at_cm.space()
}

/// Builds the chain of image pieces along the weights `m, c₁m, c₁c₂m, …`,
/// stopping as soon as two consecutive pieces agree with the reflexive
/// piece. Exhausting the sequence without stabilizing is an error carrying
/// the dimensions seen.
pub fn colimit_trace(
    sigma: &Cone,
    m: &LatticeVector,
    p: usize,
    factors: &[u64],
) -> Result<DilationTrace> {
    assert!(factors.iter().all(|&c| c >= 2), "dilation factors must be ≥ 2");
    if !sigma.dual().contains(m)? {
        return Err(Error::WeightOutsideDual);
    }
    let tilde = tilde_omega_weight(sigma, m, p);
    let tilde_dim = tilde.dim();
    let mut chain: Vec<GradedSubspace> = vec![crate::forms::omega_image_weight(sigma, m, p)];
    let mut weight = m.clone();
    let mut consumed: Vec<u64> = Vec::new();
    let mut stabilized_at = None;
    for &c in factors {
        let prev = chain.last().unwrap().clone();
        weight = weight.scale(&Int::from(c));
        consumed.push(c);
        let next = crate::forms::omega_image_weight(sigma, &weight, p);
        // monotone: the dilated previous piece sits inside the next one
        debug_assert!(prev.space().is_subspace_of(next.space()));
        chain.push(next.clone());
        let k = chain.len() - 2;
        if prev.space() == next.space() && prev.space() == tilde.space() {
            stabilized_at = Some(k);
            break;
        }
    }
    if stabilized_at.is_none() {
        return Err(Error::NotStabilized {
            chain: chain.iter().map(|s| s.dim()).collect(),
        });
    }
    Ok(DilationTrace {
        cone: sigma.clone(),
        base_weight: m.clone(),
        degree: p,
        factors: consumed,
        chain,
        stabilized_at,
        tilde_dim,
    })
}

/// Result of tracking Hochschild dimensions along a dilation chain.
#[derive(Clone, Debug)]
pub struct HochschildTrace {
    pub base_weight: LatticeVector,
    pub degree: usize,
    pub hh_dims: Vec<usize>,
    pub image_dims: Vec<usize>,
    pub tilde_dim: usize,
    pub stabilized_at: Option<usize>,
}

impl HochschildTrace {
    /// The per-step excess of the Hochschild dimension over the image
    /// dimension; it must shrink to zero along the chain.
    pub fn excess(&self) -> Vec<usize> {
        self.hh_dims
            .iter()
            .zip(self.image_dims.iter())
            .map(|(h, i)| h - i)
            .collect()
    }
}

/// Tracks `HH_q` dimensions along the weights `m, c₁m, …` and checks they
/// stabilize to the reflexive dimension.
pub fn hh_colimit_check(
    sigma: &Cone,
    m: &LatticeVector,
    q: usize,
    factors: &[u64],
) -> Result<HochschildTrace> {
    assert!(factors.iter().all(|&c| c >= 2));
    if !sigma.dual().contains(m)? {
        return Err(Error::WeightOutsideDual);
    }
    let monoid = AffineMonoid::of_cone(sigma);
    let tilde_dim = tilde_omega_weight(sigma, m, q).dim();
    let mut weight = m.clone();
    let mut hh_dims = Vec::new();
    let mut image_dims = Vec::new();
    let mut stabilized_at = None;
    let mut prev_hh: Option<usize> = None;
    for step in 0..=factors.len() {
        let hh = hochschild_dims_of_monoid(&monoid, &weight, q, DEFAULT_HH_BUDGET)?[q];
        let img = crate::forms::omega_image_in_monoid(&monoid, &weight, q).dim();
        hh_dims.push(hh);
        image_dims.push(img);
        if let Some(prev) = prev_hh {
            if prev == hh && hh == tilde_dim {
                stabilized_at = Some(step - 1);
                break;
            }
        }
        prev_hh = Some(hh);
        if step < factors.len() {
            weight = weight.scale(&Int::from(factors[step]));
        }
    }
    if stabilized_at.is_none() {
        return Err(Error::NotStabilized { chain: hh_dims });
    }
    Ok(HochschildTrace {
        base_weight: m.clone(),
        degree: q,
        hh_dims,
        image_dims,
        tilde_dim,
        stabilized_at,
    })
}

/// The default dilation sequence used by reports.
pub const DEFAULT_DILATION_SEQUENCE: [u64; 6] = [2, 2, 2, 2, 2, 2];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{binomial, weight_box};

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
    fn theta_image_on_tau() {
        let th = theta_image(&tau(), &lv(&[1, 0, 0]), 1, 2).unwrap();
        assert_eq!(th.weight(), &lv(&[2, 0, 0]));
        assert_eq!(th.dim(), 2);
        // contained in, but smaller than, the image piece at the new weight
        let at_two = crate::forms::omega_image_weight(&tau(), &lv(&[2, 0, 0]), 1);
        assert!(th.is_subspace_of(&at_two));
        assert_eq!(at_two.dim(), 3);
    }

    #[test]
    fn theta_identity_at_c_one() {
        let th = theta_image(&tau(), &lv(&[1, 0, 0]), 1, 1).unwrap();
        let img = crate::forms::omega_image_weight(&tau(), &lv(&[1, 0, 0]), 1);
        assert_eq!(th, img);
    }

    #[test]
    fn theta_degree_zero_shifts_weight_only() {
        let th = theta_image(&tau(), &lv(&[1, 0, 0]), 0, 3).unwrap();
        assert_eq!(th.weight(), &lv(&[3, 0, 0]));
        assert_eq!(th.dim(), 1);
        assert_eq!(
            theta_image(&tau(), &lv(&[-1, 0, 0]), 0, 2),
            Err(Error::WeightOutsideDual)
        );
    }

    #[test]
    fn theta_monotone_on_box() {
        let t = tau();
        for m in weight_box(3, 2) {
            if !t.dual().contains(&m).unwrap() {
                continue;
            }
            for p in 0..=2 {
                for c in [2u64, 3] {
                    let th = theta_image(&t, &m, p, c).unwrap();
                    let target = crate::forms::omega_image_weight(
                        &t,
                        &m.scale(&Int::from(c)),
                        p,
                    );
                    assert!(th.is_subspace_of(&target));
                }
            }
        }
    }

    #[test]
    fn tilde_iso_check_samples() {
        assert!(tilde_theta_iso_check(&tau(), &lv(&[1, 0, 0]), 1, 3));
        assert!(tilde_theta_iso_check(&tau(), &LatticeVector::zero(3), 2, 2));
        assert!(tilde_theta_iso_check(&tau(), &lv(&[-1, 0, 0]), 1, 2));
        for m in weight_box(3, 2) {
            for p in 0..=3 {
                assert!(tilde_theta_iso_check(&tau(), &m, p, 2));
            }
        }
    }

    #[test]
    fn trace_on_tau_base_weight() {
        let tr = colimit_trace(&tau(), &lv(&[1, 0, 0]), 1, &[2, 2, 2]).unwrap();
        assert_eq!(tr.chain_dims(), vec![2, 3, 3]);
        assert_eq!(tr.stabilized_at, Some(1));
        assert_eq!(tr.tilde_dim, 3);
        assert_eq!(tr.tilde_dim, binomial(3, 1));
    }

    #[test]
    fn trace_stabilizes_immediately_on_smooth_cone() {
        let c = orthant(2);
        let tr = colimit_trace(&c, &lv(&[1, 1]), 1, &[2, 2]).unwrap();
        assert_eq!(tr.stabilized_at, Some(0));
    }

    #[test]
    fn trace_at_zero_weight() {
        let tr = colimit_trace(&tau(), &LatticeVector::zero(3), 1, &[2, 2]).unwrap();
        assert_eq!(tr.stabilized_at, Some(0));
        // σ(0) = σ, so the target is ∧¹ of the rank-1 orthogonal lattice
        assert_eq!(tr.tilde_dim, 1);
    }

    #[test]
    fn trace_interior_weight_reaches_full_wedge() {
        // a weight interior to the dual cone localizes to the whole torus
        let tr = colimit_trace(&tau(), &lv(&[1, 1, 0]), 1, &[2, 2, 2]).unwrap();
        assert_eq!(tr.tilde_dim, binomial(3, 1));
        assert_eq!(tr.chain.last().unwrap().dim(), 3);
    }

    #[test]
    fn hh_trace_quadric() {
        // source cone whose dual-cone monoid is the pointed quadric monoid
        let quadric_m = Cone::from_rays(2, &[lv(&[0, 1]), lv(&[2, -1])]);
        let sigma = quadric_m.dual();
        let tr = hh_colimit_check(&sigma, &lv(&[1, 0]), 1, &[2, 2]).unwrap();
        assert_eq!(tr.tilde_dim, 2);
        assert_eq!(*tr.hh_dims.last().unwrap(), 2);
        assert!(tr.excess().last().unwrap() == &0);
    }

    #[test]
    fn hh_trace_smooth_immediate() {
        let c = orthant(2);
        let tr = hh_colimit_check(&c, &lv(&[1, 1]), 1, &[2, 2]).unwrap();
        assert_eq!(tr.stabilized_at, Some(0));
    }

    #[test]
    fn hh_trace_degree_zero() {
        let tr = hh_colimit_check(&tau(), &lv(&[1, 0, 0]), 0, &[2, 2]).unwrap();
        assert_eq!(tr.stabilized_at, Some(0));
        assert!(tr.hh_dims.iter().all(|&d| d == 1));
    }
}
