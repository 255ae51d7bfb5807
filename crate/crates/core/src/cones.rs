//! Rational polyhedral cones with both generator and inequality descriptions,
//! kept in canonical form so that equality of cones is structural equality.
//!
//! The two descriptions are converted into each other by an incremental
//! double description pass over the constraints, with exact integer
//! arithmetic throughout. A cone stores its own extreme rays and lineality
//! as well as the extreme rays and lineality of its dual, which makes
//! dualization an involution by construction.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Int, LatticeMatrix, LatticeVector};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cone {
    ambient_rank: usize,
    /// Primitive extreme rays, sorted.
    rays: Vec<LatticeVector>,
    /// Saturated Hermite basis of the lineality lattice; empty iff strongly convex.
    lineality: Vec<LatticeVector>,
    /// Primitive extreme rays of the dual cone, sorted.
    normals: Vec<LatticeVector>,
    /// Saturated Hermite basis of `(span cone)⊥`, the lineality of the dual.
    span_normals: Vec<LatticeVector>,
}

/// Classification flags for a cone.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ConeClass {
    pub strongly_convex: bool,
    pub simplicial: bool,
    pub smooth: bool,
    pub dim: usize,
}

impl Cone {
    /// The cone `{0}`.
    pub fn origin(ambient_rank: usize) -> Self {
        Cone::from_generators(ambient_rank, &[], &[])
    }

    pub fn from_rays(ambient_rank: usize, rays: &[LatticeVector]) -> Self {
        Cone::from_generators(ambient_rank, rays, &[])
    }

    /// Builds the canonical form of `cone(rays) + span(lineality)`.
    pub fn from_generators(
        ambient_rank: usize,
        rays: &[LatticeVector],
        lineality: &[LatticeVector],
    ) -> Self {
        for v in rays.iter().chain(lineality) {
            assert_eq!(v.rank(), ambient_rank, "generator rank mismatch");
        }
        // dual side: m is in the dual iff ⟨m, ray⟩ ≥ 0 and ⟨m, l⟩ = 0
        let (dual_rays, dual_lin) = double_description(ambient_rank, rays, lineality);
        // primal canonical form as the bidual
        let (prim_rays, prim_lin) = double_description(ambient_rank, &dual_rays, &dual_lin);
        Cone {
            ambient_rank,
            rays: prim_rays,
            lineality: canonical_lattice_basis(ambient_rank, &prim_lin),
            normals: dual_rays,
            span_normals: canonical_lattice_basis(ambient_rank, &dual_lin),
        }
    }

    /// Builds the cone `{x : ⟨a, x⟩ ≥ 0 ∀a ∈ ineqs, ⟨e, x⟩ = 0 ∀e ∈ eqs}`.
    pub fn from_constraints(
        ambient_rank: usize,
        ineqs: &[LatticeVector],
        eqs: &[LatticeVector],
    ) -> Self {
        let mut with_eqs: Vec<LatticeVector> = ineqs.to_vec();
        let mut lin_side: Vec<LatticeVector> = eqs.to_vec();
        // double_description(rank, rays, lin) computes the dual of
        // cone(rays)+span(lin); feed the constraints as generators.
        let (rays, lin) = double_description(ambient_rank, &std::mem::take(&mut with_eqs), &std::mem::take(&mut lin_side));
        Cone::from_generators(ambient_rank, &rays, &lin)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[LatticeVector] {
        &self.lineality
    }

    pub fn normals(&self) -> &[LatticeVector] {
        &self.normals
    }

    pub fn span_normals(&self) -> &[LatticeVector] {
        &self.span_normals
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_origin(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn dim(&self) -> usize {
        let mut gens = self.rays.clone();
        gens.extend(self.lineality.iter().cloned());
        if gens.is_empty() {
            return 0;
        }
        LatticeMatrix::from_rows(&gens).rank_exact()
    }

    /// The dual cone in the dual lattice. An involution on canonical forms.
    pub fn dual(&self) -> Cone {
        Cone {
            ambient_rank: self.ambient_rank,
            rays: self.normals.clone(),
            lineality: self.span_normals.clone(),
            normals: self.rays.clone(),
            span_normals: self.lineality.clone(),
        }
    }

    /// Membership test via the inequality description.
    pub fn contains(&self, v: &LatticeVector) -> Result<bool> {
        if v.rank() != self.ambient_rank {
            return Err(Error::RankMismatch {
                expected: self.ambient_rank,
                got: v.rank(),
            });
        }
        Ok(self.normals.iter().all(|n| !n.dot(v).is_negative())
            && self.span_normals.iter().all(|s| s.dot(v).is_zero()))
    }

    /// Containment of whole cones.
    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r).unwrap_or(false))
            && other.lineality.iter().all(|l| {
                self.contains(l).unwrap_or(false) && self.contains(&l.neg()).unwrap_or(false)
            })
    }

    /// The face `{n ∈ cone : ⟨m, n⟩ = 0}` cut out by a dual-cone weight `m`.
    pub fn face_of_weight(&self, m: &LatticeVector) -> Result<Cone> {
        if m.rank() != self.ambient_rank {
            return Err(Error::RankMismatch {
                expected: self.ambient_rank,
                got: m.rank(),
            });
        }
        if !self.dual().contains(m)? {
            return Err(Error::WeightNotInDual);
        }
        let face_rays: Vec<LatticeVector> = self
            .rays
            .iter()
            .filter(|r| m.dot(r).is_zero())
            .cloned()
            .collect();
        Ok(Cone::from_generators(
            self.ambient_rank,
            &face_rays,
            &self.lineality,
        ))
    }

    /// All faces of a strongly convex cone, including `{0}` and the cone
    /// itself, deduplicated, sorted by (dimension, rays).
    pub fn faces(&self) -> Result<Vec<Cone>> {
        if !self.is_strongly_convex() {
            return Err(Error::HasLineality);
        }
        let mut seen: BTreeSet<Cone> = BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(c) = stack.pop() {
            if !seen.insert(c.clone()) {
                continue;
            }
            for n in &c.normals {
                let facet_rays: Vec<LatticeVector> = c
                    .rays
                    .iter()
                    .filter(|r| n.dot(r).is_zero())
                    .cloned()
                    .collect();
                stack.push(Cone::from_rays(self.ambient_rank, &facet_rays));
            }
        }
        let mut out: Vec<Cone> = seen.into_iter().collect();
        out.sort_by_key(|c| (c.dim(), c.rays.clone()));
        Ok(out)
    }

    /// A dual-cone weight whose face is exactly `face`, when `face ≺ self`.
    pub fn weight_cutting_face(&self, face: &Cone) -> LatticeVector {
        let mut m = LatticeVector::zero(self.ambient_rank);
        for n in &self.normals {
            if face.rays.iter().all(|r| n.dot(r).is_zero()) {
                m = m.add(n);
            }
        }
        m
    }

    /// Face test: containment plus "is cut out by some dual weight".
    pub fn is_face_of(&self, other: &Cone) -> bool {
        if !other.contains_cone(self) {
            return false;
        }
        let m = other.weight_cutting_face(self);
        match other.face_of_weight(&m) {
            Ok(f) => f == *self,
            Err(_) => false,
        }
    }

    pub fn classify(&self) -> ConeClass {
        let dim = self.dim();
        let strongly_convex = self.is_strongly_convex();
        let simplicial = strongly_convex && self.rays.len() == dim;
        let smooth = if self.is_origin() {
            true
        } else if simplicial {
            let m = LatticeMatrix::from_rows(&self.rays);
            let d = m.smith_normal_form().divisors();
            d.len() == self.rays.len() && d.iter().all(|x| x.is_one())
        } else {
            false
        };
        ConeClass {
            strongly_convex,
            simplicial,
            smooth,
            dim,
        }
    }

    /// Intersection of two cones in the same lattice, in canonical form.
    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let mut ineqs = self.normals.clone();
        ineqs.extend(other.normals.iter().cloned());
        let mut eqs = self.span_normals.clone();
        eqs.extend(other.span_normals.iter().cloned());
        Cone::from_constraints(self.ambient_rank, &ineqs, &eqs)
    }

    /// Multiplicity of a simplicial cone: the index of the sublattice spanned
    /// by its rays inside the lattice of its span. 1 means smooth.
    pub fn multiplicity(&self) -> Int {
        let m = LatticeMatrix::from_rows(&self.rays);
        m.smith_normal_form()
            .divisors()
            .into_iter()
            .product::<Int>()
            .max(Int::one())
    }

    /// Saturated basis of `{m : ⟨m, x⟩ = 0 ∀ x ∈ cone}` in the dual lattice.
    pub fn orthogonal_lattice_basis(&self) -> Vec<LatticeVector> {
        self.span_normals.clone()
    }
}

impl std::fmt::Display for Cone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(|r| r.to_string()).collect();
        write!(f, "cone[{}]", rays.join(" "))?;
        if !self.lineality.is_empty() {
            let lin: Vec<String> = self.lineality.iter().map(|r| r.to_string()).collect();
            write!(f, "+line[{}]", lin.join(" "))?;
        }
        Ok(())
    }
}

fn canonical_lattice_basis(rank: usize, gens: &[LatticeVector]) -> Vec<LatticeVector> {
    if gens.is_empty() {
        return vec![];
    }
    let _ = rank;
    LatticeMatrix::from_rows(gens).saturation_basis()
}

/// Computes the dual of `cone(rays) + span(lineality)`: returns the extreme
/// rays and a lineality basis of `{m : ⟨m, r⟩ ≥ 0, ⟨m, l⟩ = 0}`.
///
/// Incremental insertion: the state starts as the whole space and each
/// generator of the primal contributes one constraint. Rays are kept
/// primitive; adjacency of rays is decided by the combinatorial zero-set
/// test, and a final extremality filter by tight-constraint rank keeps the
/// output minimal.
pub fn double_description(
    rank: usize,
    ineq_gens: &[LatticeVector],
    eq_gens: &[LatticeVector],
) -> (Vec<LatticeVector>, Vec<LatticeVector>) {
    let mut lin: Vec<LatticeVector> = (0..rank).map(|i| LatticeVector::unit(rank, i)).collect();
    let mut rays: Vec<LatticeVector> = Vec::new();
    let mut processed: Vec<(LatticeVector, bool)> = Vec::new(); // (constraint, is_equality)

    for e in eq_gens {
        if e.is_zero() {
            continue;
        }
        insert_constraint(&mut rays, &mut lin, &processed, e, true);
        processed.push((e.clone(), true));
    }
    for a in ineq_gens {
        if a.is_zero() {
            continue;
        }
        insert_constraint(&mut rays, &mut lin, &processed, a, false);
        processed.push((a.clone(), false));
    }

    // final extremality filter: a ray is extreme iff its tight constraints
    // cut the space down to lineality plus one
    let keep: Vec<LatticeVector> = rays
        .iter()
        .filter(|r| {
            let tight: Vec<LatticeVector> = processed
                .iter()
                .filter(|(c, _)| c.dot(r).is_zero())
                .map(|(c, _)| c.clone())
                .collect();
            let t_rank = if tight.is_empty() {
                0
            } else {
                LatticeMatrix::from_rows(&tight).rank_exact()
            };
            rank - t_rank == lin.len() + 1
        })
        .cloned()
        .collect();
    let mut rays = keep;
    rays.sort();
    rays.dedup();
    (rays, lin)
}

fn insert_constraint(
    rays: &mut Vec<LatticeVector>,
    lin: &mut Vec<LatticeVector>,
    processed: &[(LatticeVector, bool)],
    c: &LatticeVector,
    is_equality: bool,
) {
    // if the lineality sticks out of the hyperplane, slide everything into it
    if let Some(pos) = lin.iter().position(|l| !c.dot(l).is_zero()) {
        let mut l0 = lin.remove(pos);
        if c.dot(&l0).is_negative() {
            l0 = l0.neg();
        }
        let a0 = c.dot(&l0);
        for l in lin.iter_mut() {
            let al = c.dot(l);
            if !al.is_zero() {
                *l = l.scale(&a0).sub(&l0.scale(&al));
                *l = l.primitive().expect("lineality reduction hit zero");
            }
        }
        for r in rays.iter_mut() {
            let ar = c.dot(r);
            if !ar.is_zero() {
                *r = r.scale(&a0).sub(&l0.scale(&ar));
                if !r.is_zero() {
                    *r = r.primitive().unwrap();
                }
            }
        }
        rays.retain(|r| !r.is_zero());
        if !is_equality {
            rays.push(l0);
        }
        return;
    }

    // lineality already inside the hyperplane: classic ray step
    let value = |r: &LatticeVector| c.dot(r);
    let pos: Vec<LatticeVector> = rays.iter().filter(|r| value(r).is_positive()).cloned().collect();
    let neg: Vec<LatticeVector> = rays.iter().filter(|r| value(r).is_negative()).cloned().collect();
    let zero: Vec<LatticeVector> = rays.iter().filter(|r| value(r).is_zero()).cloned().collect();

    if neg.is_empty() && (!is_equality || pos.is_empty()) {
        return; // constraint is not active
    }

    let tight_set = |r: &LatticeVector| -> BTreeSet<usize> {
        processed
            .iter()
            .enumerate()
            .filter(|(_, (cc, _))| cc.dot(r).is_zero())
            .map(|(i, _)| i)
            .collect()
    };

    let mut new_rays: Vec<LatticeVector> = zero;
    if !is_equality {
        new_rays.extend(pos.iter().cloned());
    }
    let (side_a, side_b) = (&pos, &neg);
    for ra in side_a {
        for rb in side_b {
            if !adjacent(rays, processed, &tight_set, ra, rb) {
                continue;
            }
            // positive combination lying on the hyperplane
            let w = ra.scale(&-value(rb)).add(&rb.scale(&value(ra)));
            if w.is_zero() {
                continue;
            }
            new_rays.push(w.primitive().unwrap());
        }
    }
    new_rays.sort();
    new_rays.dedup();
    *rays = new_rays;
}

fn adjacent(
    rays: &[LatticeVector],
    _processed: &[(LatticeVector, bool)],
    tight_set: &dyn Fn(&LatticeVector) -> BTreeSet<usize>,
    ra: &LatticeVector,
    rb: &LatticeVector,
) -> bool {
    let ta = tight_set(ra);
    let tb = tight_set(rb);
    let common: BTreeSet<usize> = ta.intersection(&tb).copied().collect();
    !rays.iter().any(|r| {
        r != ra && r != rb && {
            let tr = tight_set(r);
            common.iter().all(|i| tr.contains(i))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::weight_box;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    fn cone(rank: usize, rays: &[&[i64]]) -> Cone {
        let rays: Vec<LatticeVector> = rays.iter().map(|r| lv(r)).collect();
        Cone::from_rays(rank, &rays)
    }

    /// the singular two-dimensional cone from the running example,
    /// spanned by e₁ and e₁+2e₂ inside ℤ³
    fn tau() -> Cone {
        cone(3, &[&[1, 0, 0], &[1, 2, 0]])
    }

    #[test]
    fn first_orthant_self_dual() {
        let c = cone(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(c.dual(), c);
        assert_eq!(c.rays(), &[lv(&[0, 1]), lv(&[1, 0])]);
        assert!(c.normals().contains(&lv(&[1, 0])));
    }

    #[test]
    fn dual_of_origin_is_everything() {
        let c = Cone::origin(2);
        let d = c.dual();
        assert!(d.rays().is_empty());
        assert_eq!(d.lineality().len(), 2);
        assert!(d.contains(&lv(&[-7, 3])).unwrap());
    }

    #[test]
    fn dual_of_tau_matches_known_generators() {
        // the dual must equal the cone generated by
        // (1,0,0),(0,1,0),(2,-1,0),(0,0,1),(0,0,-1)
        let d = tau().dual();
        let expected = Cone::from_generators(
            3,
            &[lv(&[1, 0, 0]), lv(&[0, 1, 0]), lv(&[2, -1, 0])],
            &[lv(&[0, 0, 1])],
        );
        assert_eq!(d, expected);
        // extreme rays modulo the z-axis lineality
        assert_eq!(d.rays(), &[lv(&[0, 1, 0]), lv(&[2, -1, 0])]);
        assert_eq!(d.lineality(), &[lv(&[0, 0, 1])]);
        // and (1,0,0) is interior to the pointed part, not extreme
        assert!(d.contains(&lv(&[1, 0, 0])).unwrap());
    }

    #[test]
    fn biduality_on_samples() {
        for c in [
            tau(),
            cone(2, &[&[1, 0], &[1, 2]]),
            cone(3, &[&[1, 0, 0], &[1, 2, 0], &[-1, 0, 1]]),
            cone(2, &[&[1, 0], &[0, 1]]),
            Cone::origin(3),
            cone(1, &[&[1]]),
        ] {
            assert_eq!(c.dual().dual(), c);
        }
    }

    #[test]
    fn face_of_weight_examples() {
        let t = tau();
        // weight (1,0,0) pairs positively with both rays: face is the origin
        let f = t.face_of_weight(&lv(&[1, 0, 0])).unwrap();
        assert!(f.is_origin());
        // zero weight gives the cone back
        assert_eq!(t.face_of_weight(&LatticeVector::zero(3)).unwrap(), t);
        // weight (0,1,0) kills exactly the ray e₁
        let f = t.face_of_weight(&lv(&[0, 1, 0])).unwrap();
        assert_eq!(f.rays(), &[lv(&[1, 0, 0])]);
        // a weight outside the dual is rejected
        assert_eq!(
            t.face_of_weight(&lv(&[-1, 0, 0])),
            Err(Error::WeightNotInDual)
        );
    }

    #[test]
    fn faces_counts() {
        assert_eq!(cone(2, &[&[1, 0], &[1, 2]]).faces().unwrap().len(), 4);
        assert_eq!(cone(3, &[&[1, 0, 0]]).faces().unwrap().len(), 2);
        assert_eq!(
            cone(3, &[&[1, 0, 0], &[1, 2, 0], &[-1, 0, 1]])
                .faces()
                .unwrap()
                .len(),
            8
        );
        let with_line = Cone::from_generators(2, &[], &[lv(&[1, 0])]);
        assert_eq!(with_line.faces(), Err(Error::HasLineality));
    }

    #[test]
    fn classify_examples() {
        let smooth = cone(2, &[&[1, 0], &[0, 1]]).classify();
        assert!(smooth.smooth && smooth.simplicial && smooth.strongly_convex);
        assert_eq!(smooth.dim, 2);

        let a1 = cone(2, &[&[1, 0], &[1, 2]]).classify();
        assert!(a1.simplicial && !a1.smooth);

        let c3 = cone(3, &[&[1, 0, 0], &[1, 2, 0], &[-1, 0, 1]]).classify();
        assert!(c3.simplicial);
        assert!(!c3.smooth); // ray matrix has elementary divisors 1,1,2
        assert_eq!(
            cone(3, &[&[1, 0, 0], &[1, 2, 0], &[-1, 0, 1]]).multiplicity(),
            Int::from(2)
        );
    }

    #[test]
    fn contains_examples() {
        let orthant = cone(2, &[&[1, 0], &[0, 1]]);
        assert!(orthant.contains(&lv(&[1, 1])).unwrap());
        assert!(!tau().contains(&lv(&[0, 0, 1])).unwrap());
        assert!(tau().contains(&LatticeVector::zero(3)).unwrap());
        assert_eq!(
            orthant.contains(&lv(&[1, 1, 1])),
            Err(Error::RankMismatch { expected: 2, got: 3 })
        );
    }

    #[test]
    fn every_face_is_cut_by_a_weight() {
        for c in [
            tau(),
            cone(2, &[&[1, 0], &[1, 2]]),
            cone(3, &[&[1, 0, 0], &[1, 2, 0], &[-1, 0, 1]]),
        ] {
            for f in c.faces().unwrap() {
                let m = c.weight_cutting_face(&f);
                assert_eq!(c.face_of_weight(&m).unwrap(), f, "face {} of {}", f, c);
                assert!(f.is_face_of(&c));
            }
        }
    }

    #[test]
    fn face_of_weight_is_intersective() {
        let c = cone(3, &[&[1, 0, 0], &[1, 2, 0], &[-1, 0, 1]]);
        let dual = c.dual();
        let weights: Vec<LatticeVector> = weight_box(3, 2)
            .into_iter()
            .filter(|m| dual.contains(m).unwrap())
            .collect();
        for m1 in &weights {
            for m2 in &weights {
                let f12 = c.face_of_weight(&m1.add(m2)).unwrap();
                let f1 = c.face_of_weight(m1).unwrap();
                let f2 = c.face_of_weight(m2).unwrap();
                assert_eq!(f12, f1.intersect(&f2));
            }
        }
    }

    #[test]
    fn intersection_of_charts() {
        let s1 = cone(3, &[&[1, 0, 0], &[1, 2, 0], &[-1, 0, 1]]);
        let s2 = cone(3, &[&[1, 0, 0], &[1, 2, 0], &[-1, 0, -1]]);
        assert_eq!(s1.intersect(&s2), tau());
    }

    #[test]
    fn hidden_lineality_is_detected() {
        let c = Cone::from_rays(2, &[lv(&[1, 0]), lv(&[-1, 0]), lv(&[0, 1])]);
        assert!(!c.is_strongly_convex());
        assert_eq!(c.lineality(), &[lv(&[1, 0])]);
        assert_eq!(c.rays(), &[lv(&[0, 1])]);
    }
}
