//! Čech (hyper)cohomology of the graded sheaves over the maximal-cone cover.
//!
//! Every section space at a fixed weight is a subspace of `∧^p M ⊗ ℚ` and
//! every structural map (restriction to a smaller chart, comparison of the
//! Kähler image into the reflexive piece, exterior derivative, restriction
//! to an orbit closure) is induced by the identity or by `m ∧ −` on that one
//! ambient space. Complex building therefore reduces to expressing bases in
//! bases, and every cohomological statement to rank arithmetic.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::complex::{
    corestrict_to_kernel, direct_sum, kernel_subcomplex, ChainMap, CochainComplex,
};
use crate::cones::Cone;
use crate::error::{Error, Result};
use crate::fans::{BlowupSquare, Fan};
use crate::forms::{GradedSubspace, SheafKind};
use crate::lattice::{binomial, combinations, LatticeVector};
use crate::linalg::{QMat, Rat};
use crate::monoids::AffineMonoid;

/// Cover data for a fan: maximal cones in canonical order and the cones of
/// all tuple intersections, with one cached monoid per intersection so that
/// pointed splits are shared across weights.
pub struct Cover {
    ambient_rank: usize,
    max: Vec<Cone>,
    tuple_data: BTreeMap<Vec<usize>, (Cone, AffineMonoid)>,
}

impl Cover {
    pub fn new(fan: &Fan) -> Cover {
        let max: Vec<Cone> = fan.maximal_cones().into_iter().cloned().collect();
        let mut tuple_data = BTreeMap::new();
        let k = max.len();
        for q in 0..k {
            for tuple in combinations(k, q + 1) {
                let mut cone = max[tuple[0]].clone();
                for &i in &tuple[1..] {
                    cone = cone.intersect(&max[i]);
                }
                let monoid = AffineMonoid::of_cone(&cone);
                tuple_data.insert(tuple, (cone, monoid));
            }
        }
        Cover {
            ambient_rank: fan.ambient_rank(),
            max,
            tuple_data,
        }
    }

    /// Cover by an explicit sub-collection of maximal cones (used for the
    /// star covers of orbit closures).
    pub fn from_cones(ambient_rank: usize, max: Vec<Cone>) -> Cover {
        let mut tuple_data = BTreeMap::new();
        let k = max.len();
        for q in 0..k {
            for tuple in combinations(k, q + 1) {
                let mut cone = max[tuple[0]].clone();
                for &i in &tuple[1..] {
                    cone = cone.intersect(&max[i]);
                }
                let monoid = AffineMonoid::of_cone(&cone);
                tuple_data.insert(tuple, (cone, monoid));
            }
        }
        Cover {
            ambient_rank,
            max,
            tuple_data,
        }
    }

    pub fn size(&self) -> usize {
        self.max.len()
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max
    }

    pub fn tuple_cone(&self, tuple: &[usize]) -> &Cone {
        &self.tuple_data[tuple].0
    }

    fn section(&self, kind: SheafKind, tuple: &[usize], m: &LatticeVector) -> GradedSubspace {
        let (cone, monoid) = &self.tuple_data[tuple];
        match kind {
            SheafKind::Tilde(p) => crate::forms::tilde_omega_weight(cone, m, p),
            SheafKind::Structure => crate::forms::tilde_omega_weight(cone, m, 0),
            SheafKind::OmegaImage(p) => crate::forms::omega_image_in_monoid(monoid, m, p),
        }
    }
}

/// One direct summand of a total complex: a sheaf column, a cover tuple, the
/// section subspace, and the coordinate offset inside its total degree.
#[derive(Clone, Debug)]
pub struct Summand {
    pub column: usize,
    pub tuple: Vec<usize>,
    pub section: GradedSubspace,
    pub offset: usize,
}

/// The total complex of (Čech degree) × (column degree), with the layout of
/// its summands per total degree.
pub struct TotalComplex {
    pub complex: CochainComplex,
    pub layout: Vec<Vec<Summand>>,
}

/// Builds the total complex for a list of sheaf columns connected by
/// ambient-coordinate horizontal maps (`horiz[j]` maps the wedge coordinates
/// of column `j` into those of column `j+1`). A single column with no
/// horizontal maps is the plain Čech complex.
pub fn total_complex(
    cover: &Cover,
    columns: &[SheafKind],
    horiz: &[QMat],
    m: &LatticeVector,
) -> TotalComplex {
    assert!(!columns.is_empty());
    assert_eq!(horiz.len() + 1, columns.len());
    let k = cover.size();
    let cech_len = k; // degrees 0..k-1
    let total_len = cech_len + columns.len() - 1;

    // collect summands per total degree
    let mut layout: Vec<Vec<Summand>> = vec![Vec::new(); total_len];
    for (j, kind) in columns.iter().enumerate() {
        for q in 0..cech_len {
            let n = q + j;
            for tuple in combinations(k, q + 1) {
                let section = cover.section(*kind, &tuple, m);
                layout[n].push(Summand {
                    column: j,
                    tuple,
                    section,
                    offset: 0,
                });
            }
        }
    }
    // deterministic ordering and offsets
    let mut dims = Vec::with_capacity(total_len);
    for summands in layout.iter_mut() {
        summands.sort_by(|a, b| (a.column, &a.tuple).cmp(&(b.column, &b.tuple)));
        let mut off = 0;
        for s in summands.iter_mut() {
            s.offset = off;
            off += s.section.dim();
        }
        dims.push(off);
    }

    // assemble the differentials
    let mut maps = Vec::with_capacity(total_len.saturating_sub(1));
    for n in 0..total_len.saturating_sub(1) {
        let mut d = QMat::zero(dims[n], dims[n + 1]);
        let target_index: BTreeMap<(usize, &Vec<usize>), usize> = layout[n + 1]
            .iter()
            .enumerate()
            .map(|(i, s)| ((s.column, &s.tuple), i))
            .collect();
        for src in &layout[n] {
            if src.section.dim() == 0 {
                continue;
            }
            let q = src.tuple.len() - 1;
            // Čech part: insert one extra cover index
            for extra in 0..k {
                if src.tuple.contains(&extra) {
                    continue;
                }
                let mut t = src.tuple.clone();
                let pos = t.iter().position(|&x| x > extra).unwrap_or(t.len());
                t.insert(pos, extra);
                let sign = if pos % 2 == 0 { Rat::one() } else { -Rat::one() };
                let Some(&ti) = target_index.get(&(src.column, &t)) else {
                    continue;
                };
                let tgt = &layout[n + 1][ti];
                if tgt.section.dim() == 0 {
                    continue;
                }
                let block = tgt
                    .section
                    .space()
                    .basis()
                    .express_rows(src.section.space().basis())
                    .expect("restriction to a deeper intersection is an inclusion");
                add_block(&mut d, &block.scale(&sign), src.offset, tgt.offset);
            }
            // horizontal part with the sign (−1)^{Čech degree}
            if src.column + 1 < columns.len() {
                let key = (src.column + 1, &src.tuple);
                if let Some(&ti) = target_index.get(&key) {
                    let tgt = &layout[n + 1][ti];
                    if tgt.section.dim() > 0 {
                        let moved = src.section.space().basis().mul(&horiz[src.column]);
                        let block = tgt
                            .section
                            .space()
                            .basis()
                            .express_rows(&moved)
                            .expect("horizontal map lands in the target sections");
                        let sign = if q % 2 == 0 { Rat::one() } else { -Rat::one() };
                        add_block(&mut d, &block.scale(&sign), src.offset, tgt.offset);
                    }
                }
            }
        }
        maps.push(d);
    }
    let complex = CochainComplex::new(dims, maps);
    debug_assert!(complex.check_d_squared());
    TotalComplex { complex, layout }
}

fn add_block(dest: &mut QMat, block: &QMat, row_off: usize, col_off: usize) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            if !block.entry(i, j).is_zero() {
                let cur = dest.entry(row_off + i, col_off + j).clone();
                dest.set(row_off + i, col_off + j, cur + block.entry(i, j).clone());
            }
        }
    }
}

fn validated_cover(fan: &Fan) -> Result<Cover> {
    fan.validate()
        .map_err(|v| Error::InvalidFan(v.to_string()))?;
    Ok(Cover::new(fan))
}

/// Exact dimensions of `H^q(X, F)_m` over the maximal-cone cover,
/// `q = 0 … #maximal−1`.
pub fn cech_cohomology(fan: &Fan, sheaf: SheafKind, m: &LatticeVector) -> Result<Vec<usize>> {
    let cover = validated_cover(fan)?;
    Ok(cech_cohomology_on(&cover, sheaf, m))
}

pub fn cech_cohomology_on(cover: &Cover, sheaf: SheafKind, m: &LatticeVector) -> Vec<usize> {
    total_complex(cover, &[sheaf], &[], m)
        .complex
        .cohomology_dims()
}

/// Dimension of the global sections `H⁰(X, F)_m`: the intersection of the
/// section spaces over the maximal charts inside the common ambient space.
pub fn global_sections_dim(fan: &Fan, sheaf: SheafKind, m: &LatticeVector) -> Result<usize> {
    let dims = cech_cohomology(fan, sheaf, m)?;
    Ok(dims[0])
}

/// Hypercohomology dimensions of the truncated reflexive de Rham complex
/// `F⁰ → F¹ → ⋯ → F^t` (differential `m ∧ −` in weight `m`).
pub fn hyper_cohomology_truncated(fan: &Fan, t: usize, m: &LatticeVector) -> Result<Vec<usize>> {
    let cover = validated_cover(fan)?;
    let rank = fan.ambient_rank();
    let columns: Vec<SheafKind> = (0..=t).map(SheafKind::Tilde).collect();
    let horiz: Vec<QMat> = (0..t)
        .map(|j| crate::forms::wedge_with_weight_matrix(rank, j, m))
        .collect();
    Ok(total_complex(&cover, &columns, &horiz, m)
        .complex
        .cohomology_dims())
}

/// Hypercohomology dimensions of the two-term complex
/// `[image of Ω¹ → reflexive Ω̃¹]` in weight `m`.
pub fn mapping_cone_cohomology(fan: &Fan, m: &LatticeVector) -> Result<Vec<usize>> {
    let cover = validated_cover(fan)?;
    Ok(mapping_cone_cohomology_on(&cover, fan.ambient_rank(), m))
}

pub fn mapping_cone_cohomology_on(
    cover: &Cover,
    ambient_rank: usize,
    m: &LatticeVector,
) -> Vec<usize> {
    let columns = [SheafKind::OmegaImage(1), SheafKind::Tilde(1)];
    let horiz = vec![QMat::identity(binomial(ambient_rank, 1))];
    total_complex(cover, &columns, &horiz, m)
        .complex
        .cohomology_dims()
}

/// Per-degree data of the blow-up long exact sequence at one weight.
#[derive(Clone, Debug)]
pub struct BlowupLesReport {
    pub weight: LatticeVector,
    pub degree_p: usize,
    pub h_x: Vec<usize>,
    pub h_x_prime: Vec<usize>,
    pub h_v: Vec<usize>,
    pub h_v_prime: Vec<usize>,
    pub rank_a: Vec<usize>,
    pub rank_b: Vec<usize>,
    pub rank_delta: Vec<usize>,
    pub exact: bool,
    pub alternating_sum_zero: bool,
    pub failures: Vec<String>,
}

impl BlowupLesReport {
    pub fn alternating_sum(&self) -> i64 {
        let mut acc: i64 = 0;
        for q in 0..self.h_x.len() {
            let term = self.h_x[q] as i64 - self.h_x_prime[q] as i64 - self.h_v[q] as i64
                + self.h_v_prime[q] as i64;
            acc += if q % 2 == 0 { term } else { -term };
        }
        acc
    }
}

/// Prebuilt cover data for sweeping a blow-up square over many weights and
/// degrees without recomputing tuple intersections.
pub struct LesSetup {
    new_ray: LatticeVector,
    sigma_rays: Vec<LatticeVector>,
    cover_x: Cover,
    cover_xp: Cover,
    cover_v: Cover,
    cover_vp: Cover,
    star_x: Vec<usize>,
    star_xp: Vec<usize>,
    assign: Vec<usize>,
    star_assign: Vec<usize>,
}

impl LesSetup {
    pub fn new(sq: &BlowupSquare) -> LesSetup {
        let rank = sq.base_fan.ambient_rank();
        let sigma = &sq.minimal_cone;
        let rho = Cone::from_rays(rank, std::slice::from_ref(&sq.new_ray));
        let cover_x = Cover::new(&sq.base_fan);
        let cover_xp = Cover::new(&sq.subdivided_fan);
        // star covers for the two orbit closures, as sub-collections of the
        // maximal covers (kept in the same order so refinement choices agree)
        let star_x: Vec<usize> = (0..cover_x.size())
            .filter(|&i| cover_x.max_cones()[i].contains_cone(sigma))
            .collect();
        let star_xp: Vec<usize> = (0..cover_xp.size())
            .filter(|&i| cover_xp.max_cones()[i].contains_cone(&rho))
            .collect();
        // refinement assignment: each maximal cone of the subdivision lies
        // in some maximal cone of the base fan
        let assign: Vec<usize> = cover_xp
            .max_cones()
            .iter()
            .map(|c| {
                (0..cover_x.size())
                    .find(|&i| cover_x.max_cones()[i].contains_cone(c))
                    .expect("subdivision refines the base fan")
            })
            .collect();
        let star_assign: Vec<usize> = star_xp
            .iter()
            .map(|&j| {
                let target = assign[j];
                star_x
                    .iter()
                    .position(|&i| i == target)
                    .expect("refined star cones land in star cones")
            })
            .collect();
        let cover_v = Cover::from_cones(
            rank,
            star_x.iter().map(|&i| cover_x.max_cones()[i].clone()).collect(),
        );
        let cover_vp = Cover::from_cones(
            rank,
            star_xp.iter().map(|&i| cover_xp.max_cones()[i].clone()).collect(),
        );
        LesSetup {
            new_ray: sq.new_ray.clone(),
            sigma_rays: sigma.rays().to_vec(),
            cover_x,
            cover_xp,
            cover_v,
            cover_vp,
            star_x,
            star_xp,
            assign,
            star_assign,
        }
    }

    pub fn check(&self, p: usize, m: &LatticeVector) -> BlowupLesReport {
        blowup_les_on(self, p, m)
    }
}

/// Verifies exactness of
/// `⋯ → H^q(X) → H^q(X') ⊕ H^q(V) → H^q(V') → H^{q+1}(X) → ⋯`
/// for the reflexive `p`-forms at weight `m`.
///
/// The chain-level map onto the `V'`-columns is degreewise surjective, so
/// the sequence is realized as the long exact sequence of
/// `0 → ker g → C(X')⊕C(V) → C(V') → 0`, and exactness of the reported
/// sequence is equivalent to the comparison map from `C(X)` into `ker g`
/// being an isomorphism on cohomology.
pub fn blowup_les_check(sq: &BlowupSquare, p: usize, m: &LatticeVector) -> Result<BlowupLesReport> {
    Ok(LesSetup::new(sq).check(p, m))
}

fn blowup_les_on(setup: &LesSetup, p: usize, m: &LatticeVector) -> BlowupLesReport {
    let cover_x = &setup.cover_x;
    let cover_xp = &setup.cover_xp;
    let cover_v = &setup.cover_v;
    let cover_vp = &setup.cover_vp;
    let star_x = &setup.star_x;
    let star_xp = &setup.star_xp;
    let assign = &setup.assign;
    let star_assign = &setup.star_assign;

    let m_on_sigma = setup.sigma_rays.iter().all(|r| m.dot(r).is_zero());
    let m_on_rho = m.dot(&setup.new_ray).is_zero();

    let kind = SheafKind::Tilde(p);
    let len = cover_x.size().max(cover_xp.size());

    let cx = padded_cech(cover_x, kind, m, len);
    let cxp = padded_cech(cover_xp, kind, m, len);
    let cv = sub_cover_complex(cover_x, star_x, kind, m, m_on_sigma, len);
    let cvp = sub_cover_complex(cover_xp, star_xp, kind, m, m_on_rho, len);

    let pullback = refinement_chain_map(cover_x, cover_xp, assign, kind, m, &cx.0, &cxp.0);
    let restrict_x = sub_cover_projection(cover_x, star_x, kind, m, &cx.0, &cv, m_on_sigma);
    let restrict_xp = sub_cover_projection(cover_xp, star_xp, kind, m, &cxp.0, &cvp, m_on_rho);
    let pullback_v = if m_on_sigma && m_on_rho {
        refinement_chain_map(cover_v, cover_vp, star_assign, kind, m, &cv.0, &cvp.0)
    } else {
        zero_chain_map(&cv.0, &cvp.0)
    };

    // f = (π*, i*) : C(X) → C(X') ⊕ C(V)
    let (sum, layout) = direct_sum(&cxp.0, &cv.0);
    let f_comps: Vec<QMat> = (0..len)
        .map(|q| {
            let mut mcomp = QMat::zero(cx.0.dim(q), sum.dim(q));
            crate::complex::copy_block(&mut mcomp, pullback.comp(q), 0, 0);
            crate::complex::copy_block(&mut mcomp, restrict_x.comp(q), 0, layout.first_dims[q]);
            mcomp
        })
        .collect();
    let f = ChainMap::new(&cx.0, &sum, f_comps);

    // g = (restriction to V') − (pullback from V) : C(X') ⊕ C(V) → C(V')
    let g_comps: Vec<QMat> = (0..len)
        .map(|q| {
            let mut mcomp = QMat::zero(sum.dim(q), cvp.0.dim(q));
            crate::complex::copy_block(&mut mcomp, restrict_xp.comp(q), 0, 0);
            let neg = pullback_v.comp(q).scale(&-Rat::one());
            crate::complex::copy_block(&mut mcomp, &neg, layout.first_dims[q], 0);
            mcomp
        })
        .collect();
    let g = ChainMap::new(&sum, &cvp.0, g_comps);

    let mut failures: Vec<String> = Vec::new();
    if !f.commutes(&cx.0, &sum) {
        failures.push("pullback/restriction is not a chain map".into());
    }
    if !g.commutes(&sum, &cvp.0) {
        failures.push("map onto the exceptional orbit is not a chain map".into());
    }
    for q in 0..len {
        if !f.comp(q).mul(g.comp(q)).is_zero() {
            failures.push(format!("g∘f nonzero in degree {}", q));
        }
        if cvp.0.dim(q) > 0 {
            let rank_g = g.comp(q).rank();
            if rank_g != cvp.0.dim(q) {
                failures.push(format!("g not surjective in degree {}", q));
            }
        }
    }

    // the exact backbone: 0 → E → C(X')⊕C(V) → C(V') → 0
    let (e, e_bases) = kernel_subcomplex(&sum, &g);
    let f_e = corestrict_to_kernel(&cx.0, &e, &e_bases, &f);

    let h_x: Vec<usize> = cx.0.cohomology_dims();
    let h_sum: Vec<usize> = sum.cohomology_dims();
    let h_xp: Vec<usize> = cxp.0.cohomology_dims();
    let h_v: Vec<usize> = cv.0.cohomology_dims();
    let h_vp: Vec<usize> = cvp.0.cohomology_dims();
    let h_e: Vec<usize> = e.cohomology_dims();
    debug_assert_eq!(
        h_sum,
        (0..len).map(|q| h_xp[q] + h_v[q]).collect::<Vec<_>>()
    );

    // comparison must be an isomorphism on cohomology for the triangle to
    // hold; report failure otherwise
    let mut fe_induced: Vec<QMat> = Vec::with_capacity(len);
    for q in 0..len {
        let ind = f_e.induced(q, &cx.0, &e);
        if h_x[q] != h_e[q] || ind.rank() != h_x[q] {
            failures.push(format!(
                "comparison into the kernel complex is not an isomorphism in degree {} ({} vs {})",
                q, h_x[q], h_e[q]
            ));
        }
        fe_induced.push(ind);
    }

    let mut rank_a = vec![0usize; len];
    let mut rank_b = vec![0usize; len];
    let mut rank_delta = vec![0usize; len];
    let mut a_mats: Vec<QMat> = Vec::with_capacity(len);
    let mut b_mats: Vec<QMat> = Vec::with_capacity(len);
    for q in 0..len {
        let a = f.induced(q, &cx.0, &sum);
        let b = g.induced(q, &sum, &cvp.0);
        rank_a[q] = a.rank();
        rank_b[q] = b.rank();
        if !a.mul(&b).is_zero() {
            failures.push(format!("composition b∘a nonzero on cohomology, degree {}", q));
        }
        a_mats.push(a);
        b_mats.push(b);
    }

    // connecting map via the snake construction on the exact backbone,
    // transported along the inverse of the comparison isomorphism
    let mut delta_mats: Vec<QMat> = Vec::with_capacity(len);
    if failures.is_empty() {
        for q in 0..len {
            let hvp_q = cvp.0.cohomology(q);
            if hvp_q.dim() == 0 || q + 1 >= len {
                delta_mats.push(QMat::zero(hvp_q.dim(), if q + 1 < len { h_x[q + 1] } else { 0 }));
                continue;
            }
            let he_next = e.cohomology(q + 1);
            let mut rows = Vec::new();
            for i in 0..hvp_q.dim() {
                let z = hvp_q.reps().row(i).to_vec();
                // lift: y with y·g = z
                let y = g
                    .comp(q)
                    .express_rows(&QMat::new(vec![z]))
                    .expect("g is surjective");
                // boundary of the lift lands in the kernel subcomplex
                let dy = match sum.map(q) {
                    Some(d) => QMat::new(vec![d.apply_row(y.row(0))]),
                    None => QMat::zero(1, sum.dim(q + 1)),
                };
                let in_e = e_bases[q + 1]
                    .express_rows(&dy)
                    .expect("boundary of the lift is killed by g");
                let class_e = he_next
                    .class_coords(in_e.row(0))
                    .expect("boundary of a lift is a cycle");
                // transport to H^{q+1}(X) through the inverse comparison
                let coords_x = fe_induced[q + 1]
                    .express_rows(&QMat::new(vec![class_e]))
                    .expect("comparison is an isomorphism");
                rows.push(coords_x.row(0).to_vec());
            }
            let mat = if rows.is_empty() {
                QMat::zero(0, h_x[q + 1])
            } else {
                QMat::new(rows)
            };
            rank_delta[q] = mat.rank();
            delta_mats.push(mat);
        }

        // compositions involving the connecting map must vanish
        for q in 0..len {
            if q + 1 < len {
                if !b_mats[q].mul(&delta_mats[q]).is_zero() {
                    failures.push(format!("δ∘b nonzero on cohomology, degree {}", q));
                }
                if !delta_mats[q].mul(&a_mats[q + 1]).is_zero() {
                    failures.push(format!("a∘δ nonzero on cohomology, degree {}", q));
                }
            }
        }

        // rank conditions: exactness at every node
        for q in 0..len {
            let prev_delta = if q == 0 { 0 } else { rank_delta[q - 1] };
            if rank_a[q] + prev_delta != h_x[q] {
                failures.push(format!("not exact at H^{}(X)", q));
            }
            if rank_a[q] + rank_b[q] != h_xp[q] + h_v[q] {
                failures.push(format!("not exact at H^{}(X')⊕H^{}(V)", q, q));
            }
            if rank_b[q] + rank_delta[q] != h_vp[q] {
                failures.push(format!("not exact at H^{}(V')", q));
            }
        }
    }

    let mut report = BlowupLesReport {
        weight: m.clone(),
        degree_p: p,
        h_x,
        h_x_prime: h_xp,
        h_v,
        h_v_prime: h_vp,
        rank_a,
        rank_b,
        rank_delta,
        exact: failures.is_empty(),
        alternating_sum_zero: true,
        failures,
    };
    report.alternating_sum_zero = report.alternating_sum() == 0;
    report.exact = report.exact && report.alternating_sum_zero;
    report
}

/// Plain Čech complex padded with zero degrees up to `len`.
fn padded_cech(
    cover: &Cover,
    kind: SheafKind,
    m: &LatticeVector,
    len: usize,
) -> (CochainComplex, TotalComplex) {
    let tc = total_complex(cover, &[kind], &[], m);
    (pad_complex(&tc.complex, len), tc)
}

fn pad_complex(c: &CochainComplex, len: usize) -> CochainComplex {
    if c.len() >= len {
        return c.clone();
    }
    let mut dims: Vec<usize> = (0..c.len()).map(|q| c.dim(q)).collect();
    let mut maps: Vec<QMat> = (0..c.len() - 1)
        .map(|q| c.map(q).unwrap().clone())
        .collect();
    while dims.len() < len {
        maps.push(QMat::zero(*dims.last().unwrap(), 0));
        dims.push(0);
    }
    CochainComplex::new(dims, maps)
}

/// Čech complex of a sub-cover, or the zero complex when the weight does not
/// restrict to the orbit closure.
fn sub_cover_complex(
    cover: &Cover,
    sub: &[usize],
    kind: SheafKind,
    m: &LatticeVector,
    weight_restricts: bool,
    len: usize,
) -> (CochainComplex, Option<TotalComplex>) {
    if !weight_restricts || sub.is_empty() {
        return (CochainComplex::zero_length(len), None);
    }
    let cones: Vec<Cone> = sub.iter().map(|&i| cover.max_cones()[i].clone()).collect();
    let sub_cover = Cover::from_cones(cover.ambient_rank, cones);
    let tc = total_complex(&sub_cover, &[kind], &[], m);
    (pad_complex(&tc.complex, len), Some(tc))
}

fn zero_chain_map(src: &CochainComplex, tgt: &CochainComplex) -> ChainMap {
    let len = src.len().max(tgt.len());
    ChainMap::new(
        src,
        tgt,
        (0..len).map(|q| QMat::zero(src.dim(q), tgt.dim(q))).collect(),
    )
}

/// The Čech-level pullback along a cover refinement: `assign[j]` names a
/// source cover cone containing target cone `j`. Section spaces only grow
/// under refinement, so each block is an inclusion expressed in bases.
fn refinement_chain_map(
    src_cover: &Cover,
    tgt_cover: &Cover,
    assign: &[usize],
    kind: SheafKind,
    m: &LatticeVector,
    src: &CochainComplex,
    tgt: &CochainComplex,
) -> ChainMap {
    let len = src.len().max(tgt.len());
    let mut comps = Vec::with_capacity(len);
    for q in 0..len {
        let mut mat = QMat::zero(src.dim(q), tgt.dim(q));
        if q < tgt_cover.size() {
            // iterate over target tuples, locate the assigned source tuple
            let tgt_tuples = combinations(tgt_cover.size(), q + 1);
            let src_tuples = combinations(src_cover.size(), q + 1);
            let src_offsets = tuple_offsets(src_cover, &src_tuples, kind, m);
            let tgt_offsets = tuple_offsets(tgt_cover, &tgt_tuples, kind, m);
            for t in &tgt_tuples {
                let mut mapped: Vec<usize> = t.iter().map(|&j| assign[j]).collect();
                let sign = sort_with_sign(&mut mapped);
                if sign == 0 {
                    continue; // repeated index: contribution vanishes
                }
                let tgt_sec = tgt_cover.section(kind, t, m);
                if tgt_sec.dim() == 0 {
                    continue;
                }
                let src_sec = src_cover.section(kind, &mapped, m);
                if src_sec.dim() == 0 {
                    continue;
                }
                let block = tgt_sec
                    .space()
                    .basis()
                    .express_rows(src_sec.space().basis())
                    .expect("sections include into refined sections");
                let signed = if sign > 0 {
                    block
                } else {
                    block.scale(&-Rat::one())
                };
                add_block(
                    &mut mat,
                    &signed,
                    src_offsets[&mapped],
                    tgt_offsets[t],
                );
            }
        }
        comps.push(mat);
    }
    ChainMap::new(src, tgt, comps)
}

/// Projection of a Čech complex onto the tuples of a sub-cover. When the
/// weight restricts to the orbit closure, the section spaces agree and each
/// block is an identity expressed in bases.
fn sub_cover_projection(
    cover: &Cover,
    sub: &[usize],
    kind: SheafKind,
    m: &LatticeVector,
    src: &CochainComplex,
    tgt_pair: &(CochainComplex, Option<TotalComplex>),
    weight_restricts: bool,
) -> ChainMap {
    let (tgt, _) = tgt_pair;
    if !weight_restricts || sub.is_empty() {
        return zero_chain_map(src, tgt);
    }
    let len = src.len().max(tgt.len());
    let mut comps = Vec::with_capacity(len);
    for q in 0..len {
        let mut mat = QMat::zero(src.dim(q), tgt.dim(q));
        if q < sub.len() {
            let src_tuples = combinations(cover.size(), q + 1);
            let src_offsets = tuple_offsets(cover, &src_tuples, kind, m);
            let sub_tuples = combinations(sub.len(), q + 1);
            // offsets inside the sub-cover complex
            let mut off = 0usize;
            for t in &sub_tuples {
                let global: Vec<usize> = t.iter().map(|&j| sub[j]).collect();
                let tgt_sec_cone = {
                    let mut cone = cover.max_cones()[global[0]].clone();
                    for &i in &global[1..] {
                        cone = cone.intersect(&cover.max_cones()[i]);
                    }
                    cone
                };
                let tgt_sec = match kind {
                    SheafKind::Tilde(p) => crate::forms::tilde_omega_weight(&tgt_sec_cone, m, p),
                    SheafKind::Structure => crate::forms::tilde_omega_weight(&tgt_sec_cone, m, 0),
                    SheafKind::OmegaImage(p) => crate::forms::omega_image_weight(&tgt_sec_cone, m, p),
                };
                if tgt_sec.dim() > 0 {
                    let src_sec = cover.section(kind, &global, m);
                    let block = tgt_sec
                        .space()
                        .basis()
                        .express_rows(src_sec.space().basis())
                        .expect("sections agree on the star tuples");
                    add_block(&mut mat, &block, src_offsets[&global], off);
                }
                off += tgt_sec.dim();
            }
        }
        comps.push(mat);
    }
    ChainMap::new(src, tgt, comps)
}

fn tuple_offsets(
    cover: &Cover,
    tuples: &[Vec<usize>],
    kind: SheafKind,
    m: &LatticeVector,
) -> BTreeMap<Vec<usize>, usize> {
    let mut out = BTreeMap::new();
    let mut off = 0usize;
    for t in tuples {
        out.insert(t.clone(), off);
        off += cover.section(kind, t, m).dim();
    }
    out
}

/// Sorts in place; returns +1/−1 for the permutation parity, 0 on repeats.
fn sort_with_sign(v: &mut Vec<usize>) -> i32 {
    let mut sign = 1i32;
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            match v[j].cmp(&v[i]) {
                std::cmp::Ordering::Less => {
                    v.swap(i, j);
                    sign = -sign;
                }
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::weight_box;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    fn p1_fan() -> Fan {
        Fan::from_cones(
            1,
            vec![
                Cone::from_rays(1, &[lv(&[1])]),
                Cone::from_rays(1, &[lv(&[-1])]),
            ],
        )
        .unwrap()
    }

    fn huge_fan() -> Fan {
        let s1 = Cone::from_rays(3, &[lv(&[1, 0, 0]), lv(&[1, 2, 0]), lv(&[-1, 0, 1])]);
        let s2 = Cone::from_rays(3, &[lv(&[1, 0, 0]), lv(&[1, 2, 0]), lv(&[-1, 0, -1])]);
        Fan::from_cones(3, vec![s1, s2]).unwrap()
    }

    fn tau_fan() -> Fan {
        Fan::from_cones(3, vec![Cone::from_rays(3, &[lv(&[1, 0, 0]), lv(&[1, 2, 0])])]).unwrap()
    }

    #[test]
    fn p1_structure_sheaf() {
        let f = p1_fan();
        let dims = cech_cohomology(&f, SheafKind::Structure, &lv(&[0])).unwrap();
        assert_eq!(dims, vec![1, 0]);
        for m in [lv(&[1]), lv(&[-1]), lv(&[2])] {
            let dims = cech_cohomology(&f, SheafKind::Structure, &m).unwrap();
            assert_eq!(dims, vec![0, 0], "weight {}", m);
        }
    }

    #[test]
    fn p1_one_forms() {
        let f = p1_fan();
        let dims = cech_cohomology(&f, SheafKind::Tilde(1), &lv(&[0])).unwrap();
        assert_eq!(dims, vec![0, 1]);
        for m in weight_box(1, 3) {
            let dims = cech_cohomology(&f, SheafKind::Tilde(1), &m).unwrap();
            let expected = if m.is_zero() { vec![0, 1] } else { vec![0, 0] };
            assert_eq!(dims, expected, "weight {}", m);
        }
    }

    #[test]
    fn affine_chart_has_no_higher_cohomology() {
        let f = tau_fan();
        for m in weight_box(3, 2) {
            for kind in [
                SheafKind::Structure,
                SheafKind::Tilde(1),
                SheafKind::Tilde(2),
                SheafKind::OmegaImage(1),
            ] {
                let dims = cech_cohomology(&f, kind, &m).unwrap();
                assert_eq!(dims.len(), 1);
            }
        }
    }

    #[test]
    fn hyper_matches_structure_at_t0() {
        let f = p1_fan();
        for m in weight_box(1, 2) {
            let h = hyper_cohomology_truncated(&f, 0, &m).unwrap();
            let c = cech_cohomology(&f, SheafKind::Structure, &m).unwrap();
            assert_eq!(h, c);
        }
    }

    #[test]
    fn hyper_p1_truncation_one() {
        let f = p1_fan();
        let h = hyper_cohomology_truncated(&f, 1, &lv(&[0])).unwrap();
        // H⁰ = global functions, H¹ = 0, H² = top piece of weight 0
        assert_eq!(h, vec![1, 0, 1]);
    }

    #[test]
    fn hyper_affine_vanishes_beyond_truncation() {
        let f = tau_fan();
        for t in 1..=3usize {
            for m in weight_box(3, 1) {
                let h = hyper_cohomology_truncated(&f, t, &m).unwrap();
                // affine chart: the complex has length t+1, and degree 2t
                // exceeds it for t ≥ 1
                for q in (t + 1)..h.len() {
                    assert_eq!(h[q], 0);
                }
                if 2 * t < h.len() {
                    assert_eq!(h[2 * t], 0);
                }
            }
        }
    }

    #[test]
    fn mapping_cone_on_single_chart_is_cokernel() {
        let f = tau_fan();
        let t = Cone::from_rays(3, &[lv(&[1, 0, 0]), lv(&[1, 2, 0])]);
        for m in weight_box(3, 2) {
            let dims = mapping_cone_cohomology(&f, &m).unwrap();
            let coker = crate::forms::coker_dimension(&t, &m, 1);
            assert_eq!(dims[1], coker, "weight {}", m);
            assert_eq!(dims[0], 0, "weight {}", m);
        }
    }

    #[test]
    fn mapping_cone_vanishes_on_smooth_fan() {
        let f = p1_fan();
        for m in weight_box(1, 2) {
            let dims = mapping_cone_cohomology(&f, &m).unwrap();
            assert!(dims.iter().all(|&d| d == 0), "weight {}", m);
        }
    }

    #[test]
    fn mapping_cone_huge_fan_weights() {
        let f = huge_fan();
        let h = mapping_cone_cohomology(&f, &lv(&[1, 0, 0])).unwrap();
        assert_eq!(h[2], 1);
        for m in [lv(&[1, 0, 1]), lv(&[1, 0, -1]), lv(&[0, 1, 0])] {
            let h = mapping_cone_cohomology(&f, &m).unwrap();
            assert_eq!(h[2], 0, "weight {}", m);
        }
    }

    #[test]
    fn cech_dims_stable_under_cover_order() {
        // permuting the maximal cones must not change the dimensions
        let f = huge_fan();
        let cover = Cover::new(&f);
        let reversed = Cover::from_cones(
            3,
            cover.max_cones().iter().rev().cloned().collect(),
        );
        for m in weight_box(3, 1) {
            for kind in [SheafKind::Structure, SheafKind::Tilde(1)] {
                assert_eq!(
                    cech_cohomology_on(&cover, kind, &m),
                    cech_cohomology_on(&reversed, kind, &m)
                );
            }
        }
    }

    #[test]
    fn orbit_cover_matches_intrinsic_quotient_computation() {
        // sections of the orbit closure computed through the star cover in N
        // agree with the intrinsic complex over the quotient fan
        let f = huge_fan();
        let t = Cone::from_rays(3, &[lv(&[1, 0, 0]), lv(&[1, 2, 0])]);
        let oc = f.orbit_closure(&t).unwrap();
        for m in weight_box(3, 2) {
            let Some(m_bar) = oc.restrict_weight(&m) else {
                continue;
            };
            let intrinsic =
                cech_cohomology(&oc.fan_bar, SheafKind::Structure, &m_bar).unwrap();
            let star_cones: Vec<Cone> = f
                .maximal_cones()
                .into_iter()
                .filter(|c| c.contains_cone(&t))
                .cloned()
                .collect();
            let star_cover = Cover::from_cones(3, star_cones);
            let via_star = cech_cohomology_on(&star_cover, SheafKind::Structure, &m);
            assert_eq!(intrinsic, via_star, "weight {}", m);
        }
    }

    #[test]
    fn blowup_les_a1_square() {
        let fan = Fan::from_cones(2, vec![Cone::from_rays(2, &[lv(&[1, 0]), lv(&[1, 2])])])
            .unwrap();
        let sq = fan.blowup_square(&lv(&[1, 1])).unwrap();
        for p in 0..=2 {
            for m in weight_box(2, 2) {
                let report = blowup_les_check(&sq, p, &m).unwrap();
                assert!(
                    report.exact,
                    "p={} weight {}: {:?}",
                    p, m, report.failures
                );
                assert!(report.alternating_sum_zero);
            }
        }
    }

    #[test]
    fn blowup_les_degenerate_square() {
        let fan = Fan::from_cones(2, vec![Cone::from_rays(2, &[lv(&[1, 0]), lv(&[1, 2])])])
            .unwrap();
        let sq = fan.blowup_square(&lv(&[1, 0])).unwrap();
        assert!(sq.degenerate);
        let report = blowup_les_check(&sq, 1, &lv(&[1, 1])).unwrap();
        assert!(report.exact, "{:?}", report.failures);
    }
}
