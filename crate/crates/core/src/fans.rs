//! Fans: face-closed, intersection-compatible collections of strongly convex
//! cones, with stars, orbit closures, star subdivision, resolution of
//! singularities and blow-up squares.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::lattice::{quotient_lattice, LatticeMatrix, LatticeVector};
use crate::linalg::Rat;

/// A fan in `N_ℝ`. Cones are stored in canonical form, closed under faces,
/// deduplicated and sorted, so two fans are equal iff they are structurally
/// equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fan {
    ambient_rank: usize,
    cones: Vec<Cone>,
    maximal: Vec<usize>,
}

/// First fan axiom violation found, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanViolation {
    NotStronglyConvex { cone: Cone },
    MissingFace { cone: Cone, face: Cone },
    BadIntersection { a: Cone, b: Cone, meet: Cone },
    WrongRank { cone: Cone, expected: usize },
}

impl std::fmt::Display for FanViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FanViolation::NotStronglyConvex { cone } => {
                write!(f, "cone {} contains a line", cone)
            }
            FanViolation::MissingFace { cone, face } => {
                write!(f, "face {} of cone {} is not in the fan", face, cone)
            }
            FanViolation::BadIntersection { a, b, meet } => {
                write!(f, "intersection {} of {} and {} is not a common face", meet, a, b)
            }
            FanViolation::WrongRank { cone, expected } => {
                write!(f, "cone {} does not live in rank {}", cone, expected)
            }
        }
    }
}

impl Fan {
    /// Builds the face closure of the given cones and checks the fan axioms.
    pub fn from_cones(ambient_rank: usize, cones: Vec<Cone>) -> Result<Fan> {
        let fan = Fan::face_closure(ambient_rank, cones)?;
        match fan.validate() {
            Ok(()) => Ok(fan),
            Err(v) => Err(Error::InvalidFan(v.to_string())),
        }
    }

    /// Face closure without the compatibility check (used by `validate` tests
    /// that want to inspect violations).
    pub fn face_closure(ambient_rank: usize, cones: Vec<Cone>) -> Result<Fan> {
        let mut set: BTreeSet<Cone> = BTreeSet::new();
        for c in cones {
            if c.ambient_rank() != ambient_rank {
                return Err(Error::RankMismatch {
                    expected: ambient_rank,
                    got: c.ambient_rank(),
                });
            }
            if !c.is_strongly_convex() {
                return Err(Error::InvalidFan(
                    FanViolation::NotStronglyConvex { cone: c }.to_string(),
                ));
            }
            for f in c.faces()? {
                set.insert(f);
            }
        }
        if set.is_empty() {
            set.insert(Cone::origin(ambient_rank));
        }
        let cones: Vec<Cone> = {
            let mut v: Vec<Cone> = set.into_iter().collect();
            v.sort_by_key(|c| (c.dim(), c.rays().to_vec()));
            v
        };
        let maximal = compute_maximal(&cones);
        Ok(Fan {
            ambient_rank,
            cones,
            maximal,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.maximal.iter().map(|&i| &self.cones[i]).collect()
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.cones.contains(c)
    }

    pub fn rays(&self) -> Vec<LatticeVector> {
        let mut out: Vec<LatticeVector> = self
            .cones
            .iter()
            .filter(|c| c.dim() == 1)
            .map(|c| c.rays()[0].clone())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Checks the fan axioms: strong convexity, face closure, and that the
    /// intersection of any two cones is a face of each.
    pub fn validate(&self) -> std::result::Result<(), FanViolation> {
        for c in &self.cones {
            if c.ambient_rank() != self.ambient_rank {
                return Err(FanViolation::WrongRank {
                    cone: c.clone(),
                    expected: self.ambient_rank,
                });
            }
            if !c.is_strongly_convex() {
                return Err(FanViolation::NotStronglyConvex { cone: c.clone() });
            }
            for f in c.faces().expect("strongly convex") {
                if !self.cones.contains(&f) {
                    return Err(FanViolation::MissingFace {
                        cone: c.clone(),
                        face: f,
                    });
                }
            }
        }
        for (i, a) in self.cones.iter().enumerate() {
            for b in &self.cones[i + 1..] {
                let meet = a.intersect(b);
                if !meet.is_face_of(a) || !meet.is_face_of(b) {
                    return Err(FanViolation::BadIntersection {
                        a: a.clone(),
                        b: b.clone(),
                        meet,
                    });
                }
            }
        }
        Ok(())
    }

    /// The cones of the fan containing `sigma`.
    pub fn star(&self, sigma: &Cone) -> Result<Vec<Cone>> {
        if !self.cones.contains(sigma) {
            return Err(Error::ConeNotInFan);
        }
        Ok(self
            .cones
            .iter()
            .filter(|c| c.contains_cone(sigma))
            .cloned()
            .collect())
    }

    /// Is `v` contained in the support (union of cones)?
    pub fn supports(&self, v: &LatticeVector) -> bool {
        self.cones
            .iter()
            .any(|c| c.contains(v).unwrap_or(false))
    }

    /// The smallest cone of the fan containing `v`, i.e. the unique cone
    /// containing `v` in its relative interior.
    pub fn minimal_cone_containing(&self, v: &LatticeVector) -> Option<&Cone> {
        self.cones
            .iter()
            .filter(|c| c.contains(v).unwrap_or(false))
            .min_by_key(|c| c.dim())
    }

    /// The orbit closure of `sigma`: the fan of images of its star in the
    /// quotient lattice `N̄ = N / ℤ(σ ∩ N)` together with the projection,
    /// section, and the weight lattice `M ∩ σ⊥` of the closure.
    pub fn orbit_closure(&self, sigma: &Cone) -> Result<OrbitClosureData> {
        let star = self.star(sigma)?;
        let q = quotient_lattice(self.ambient_rank, sigma.rays())?;
        let projected: Vec<Cone> = star
            .iter()
            .map(|c| {
                let rays: Vec<LatticeVector> = c
                    .rays()
                    .iter()
                    .map(|r| q.projection.apply_row(r))
                    .filter(|r| !r.is_zero())
                    .collect();
                Cone::from_rays(q.quotient_rank, &rays)
            })
            .collect();
        let fan_bar = Fan::from_cones(q.quotient_rank, projected)?;
        // weights of the closure: pull quotient weights back along the
        // projection; rows of the projection span M ∩ σ⊥
        let weight_embedding = q.projection.transpose();
        Ok(OrbitClosureData {
            quotient_rank: q.quotient_rank,
            projection: q.projection,
            section: q.section,
            fan_bar,
            weight_embedding,
            base_cone: sigma.clone(),
        })
    }

    /// Star subdivision along the ray through `v`. Cones not containing the
    /// ray survive; each cone containing it is replaced by the cones
    /// `ν + ray` over its faces `ν` not containing the ray.
    pub fn star_subdivision(&self, v: &LatticeVector) -> Result<Fan> {
        if v.is_zero() || !v.is_primitive() {
            return Err(Error::NonPrimitiveRay);
        }
        if !self.supports(v) {
            return Err(Error::RayOutsideSupport);
        }
        let ray = Cone::from_rays(self.ambient_rank, &[v.clone()]);
        if self.cones.contains(&ray) {
            return Ok(self.clone());
        }
        let mut new_cones: Vec<Cone> = vec![ray];
        for c in &self.cones {
            if !c.contains(v).unwrap() {
                new_cones.push(c.clone());
                continue;
            }
            for nu in c.faces().expect("strongly convex") {
                if nu.contains(v).unwrap() {
                    continue;
                }
                let mut rays = nu.rays().to_vec();
                rays.push(v.clone());
                new_cones.push(Cone::from_rays(self.ambient_rank, &rays));
            }
        }
        Fan::from_cones(self.ambient_rank, new_cones)
    }

    /// Resolution of singularities by repeated star subdivision. Returns the
    /// smooth refinement and the trail of subdivision rays used.
    pub fn resolve(&self) -> (Fan, Vec<LatticeVector>) {
        let mut fan = self.clone();
        let mut trail = Vec::new();
        let mut guard = 0usize;
        loop {
            let target = fan
                .cones
                .iter()
                .filter(|c| !c.classify().smooth)
                .min_by_key(|c| (c.dim(), c.rays().to_vec()))
                .cloned();
            let Some(c) = target else {
                return (fan, trail);
            };
            let v = subdivision_ray(&c);
            fan = fan
                .star_subdivision(&v)
                .expect("chosen ray lies inside the cone");
            trail.push(v);
            guard += 1;
            assert!(guard < 10_000, "resolution failed to terminate");
        }
    }

    /// Assembles the abstract blow-up square for the subdivision at `v`.
    pub fn blowup_square(&self, v: &LatticeVector) -> Result<BlowupSquare> {
        if v.is_zero() || !v.is_primitive() {
            return Err(Error::NonPrimitiveRay);
        }
        if !self.supports(v) {
            return Err(Error::RayOutsideSupport);
        }
        let subdivided = self.star_subdivision(v)?;
        let sigma = self
            .minimal_cone_containing(v)
            .expect("support checked")
            .clone();
        let rho = Cone::from_rays(self.ambient_rank, &[v.clone()]);
        let degenerate = subdivided == *self;
        let orbit_base = self.orbit_closure(&sigma)?;
        let orbit_exceptional = subdivided.orbit_closure(&rho)?;
        let square = BlowupSquare {
            base_fan: self.clone(),
            subdivided_fan: subdivided,
            new_ray: v.clone(),
            minimal_cone: sigma,
            orbit_base,
            orbit_exceptional,
            degenerate,
        };
        square.check_complement()?;
        Ok(square)
    }
}

fn compute_maximal(cones: &[Cone]) -> Vec<usize> {
    (0..cones.len())
        .filter(|&i| {
            !cones
                .iter()
                .enumerate()
                .any(|(j, other)| j != i && other != &cones[i] && other.contains_cone(&cones[i]))
        })
        .collect()
}

/// Ray choice for one resolution step on a non-smooth cone: for a
/// non-simplicial cone, the primitive sum of its rays; for a simplicial one,
/// a nonzero fundamental-parallelepiped point of minimal positive height.
fn subdivision_ray(c: &Cone) -> LatticeVector {
    let class = c.classify();
    if !class.simplicial {
        let sum = c
            .rays()
            .iter()
            .fold(LatticeVector::zero(c.ambient_rank()), |acc, r| acc.add(r));
        return sum.primitive().expect("cone has rays");
    }
    // simplicial non-smooth: enumerate the parallelepiped points of the rays
    let pts = crate::monoids::parallelepiped_lattice_points(c.rays());
    let mut best: Option<(Rat, LatticeVector)> = None;
    for p in pts {
        if p.is_zero() {
            continue;
        }
        let height = barycentric_height(c.rays(), &p);
        match &best {
            None => best = Some((height, p)),
            Some((bh, bp)) => {
                if height < *bh || (height == *bh && p < *bp) {
                    best = Some((height, p));
                }
            }
        }
    }
    let (_, p) = best.expect("non-smooth simplicial cone has a nonzero parallelepiped point");
    p.primitive().expect("nonzero")
}

/// Sum of the barycentric coordinates of `p` in the simplex spanned by rays.
fn barycentric_height(rays: &[LatticeVector], p: &LatticeVector) -> Rat {
    use crate::linalg::QMat;
    let a = QMat::from_lattice_rows(rays);
    let target = QMat::from_lattice_rows(&[p.clone()]);
    let c = a
        .express_rows(&target)
        .expect("parallelepiped point lies in the span");
    c.row(0).iter().fold(Rat::zero(), |acc, x| acc + x)
}

/// Orbit closure `V(σ)` as a toric variety in the quotient lattice, with the
/// exact matrices needed to move weights back and forth.
#[derive(Clone, Debug)]
pub struct OrbitClosureData {
    pub quotient_rank: usize,
    /// `ambient_rank × quotient_rank`, rows act on the right.
    pub projection: LatticeMatrix,
    /// `quotient_rank × ambient_rank`, a section of the projection.
    pub section: LatticeMatrix,
    pub fan_bar: Fan,
    /// `quotient_rank × ambient_rank`: row `i` is the image in `M` of the
    /// `i`-th dual basis vector of the quotient; rows span `M ∩ σ⊥`.
    pub weight_embedding: LatticeMatrix,
    pub base_cone: Cone,
}

impl OrbitClosureData {
    /// Restricts a weight `m ∈ M ∩ σ⊥` to the quotient weight lattice.
    /// Returns `None` when `m` does not vanish on σ.
    pub fn restrict_weight(&self, m: &LatticeVector) -> Option<LatticeVector> {
        if self.base_cone.rays().iter().any(|r| !m.dot(r).is_zero()) {
            return None;
        }
        let m_bar = self.section_weight(m);
        // check the round trip: m̄ embedded back must be m
        if self.weight_embedding.apply_row(&m_bar) == *m {
            Some(m_bar)
        } else {
            None
        }
    }

    fn section_weight(&self, m: &LatticeVector) -> LatticeVector {
        // m̄ = m · sectionᵀ, i.e. pair m with the section rows
        LatticeVector::new(
            (0..self.quotient_rank)
                .map(|i| {
                    let row = self.section.row(i);
                    m.dot(&row)
                })
                .collect(),
        )
    }
}

/// The abstract blow-up square induced by a star subdivision: the subdivided
/// fan, the minimal cone containing the new ray, and the two orbit closures.
#[derive(Clone, Debug)]
pub struct BlowupSquare {
    pub base_fan: Fan,
    pub subdivided_fan: Fan,
    pub new_ray: LatticeVector,
    pub minimal_cone: Cone,
    /// `V = V_Δ(σ)` inside the base fan.
    pub orbit_base: OrbitClosureData,
    /// `V' = V_{Δ'}(ρ)` inside the subdivided fan.
    pub orbit_exceptional: OrbitClosureData,
    /// True when the ray already belonged to the fan, so `Δ' = Δ`.
    pub degenerate: bool,
}

impl BlowupSquare {
    /// `Δ' ∖ Star_{Δ'}(ρ) = Δ ∖ Star_Δ(σ)` as sets of canonical cones.
    pub fn check_complement(&self) -> Result<()> {
        let rho = Cone::from_rays(
            self.base_fan.ambient_rank(),
            std::slice::from_ref(&self.new_ray),
        );
        let star_new: BTreeSet<Cone> = self
            .subdivided_fan
            .star(&rho)
            .map_err(|_| Error::MalformedSquare("new ray missing from subdivision".into()))?
            .into_iter()
            .collect();
        let star_old: BTreeSet<Cone> = self
            .base_fan
            .star(&self.minimal_cone)
            .map_err(|_| Error::MalformedSquare("minimal cone missing from base fan".into()))?
            .into_iter()
            .collect();
        let left: BTreeSet<Cone> = self
            .subdivided_fan
            .cones()
            .iter()
            .filter(|c| !star_new.contains(c))
            .cloned()
            .collect();
        let right: BTreeSet<Cone> = self
            .base_fan
            .cones()
            .iter()
            .filter(|c| !star_old.contains(c))
            .cloned()
            .collect();
        if left == right {
            Ok(())
        } else {
            Err(Error::MalformedSquare(
                "open complements of the star differ".into(),
            ))
        }
    }
}

/// Support equality helper used by subdivision tests: both fans must contain
/// exactly the same lattice points of a sample box.
pub fn same_support_on_box(a: &Fan, b: &Fan, radius: i64) -> bool {
    crate::lattice::weight_box(a.ambient_rank(), radius)
        .into_iter()
        .all(|v| a.supports(&v) == b.supports(&v))
}

pub fn fan_is_smooth(f: &Fan) -> bool {
    f.cones().iter().all(|c| c.classify().smooth)
}

/// Number of non-smooth cones, used by resolution tests.
pub fn nonsmooth_count(f: &Fan) -> usize {
    f.cones().iter().filter(|c| !c.classify().smooth).count()
}
