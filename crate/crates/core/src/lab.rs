//! Scripted reproductions of the worked example computations from the
//! literature on toric variety K-theory, with pass/fail verdicts, plus the
//! structural identity suites whose spectrum-level statements are reported
//! as documented identities and verified only through their per-weight
//! homological shadows.

use rayon::prelude::*;

use crate::cech::{mapping_cone_cohomology_on, Cover};
use crate::cones::Cone;
use crate::dilation::DEFAULT_DILATION_SEQUENCE;
use crate::error::Result;
use crate::fans::Fan;
use crate::forms::{omega_image_weight, tilde_omega_weight};
use crate::lattice::{weight_box, Int, LatticeVector};
use crate::report::{Check, ExampleReport, Provenance, Table};

/// The singular two-dimensional cone spanned by `e₁` and `e₁+2e₂` in `ℤ³`;
/// its chart is the quadric cone cylinder.
pub fn quadric_cylinder_cone() -> Cone {
    Cone::from_rays(
        3,
        &[
            LatticeVector::from_i64(&[1, 0, 0]),
            LatticeVector::from_i64(&[1, 2, 0]),
        ],
    )
}

/// The two-chart fan extending the quadric cylinder cone by the rays
/// `(-1,0,1)` and `(-1,0,-1)`.
pub fn two_chart_fan() -> Fan {
    let s1 = Cone::from_rays(
        3,
        &[
            LatticeVector::from_i64(&[1, 0, 0]),
            LatticeVector::from_i64(&[1, 2, 0]),
            LatticeVector::from_i64(&[-1, 0, 1]),
        ],
    );
    let s2 = Cone::from_rays(
        3,
        &[
            LatticeVector::from_i64(&[1, 0, 0]),
            LatticeVector::from_i64(&[1, 2, 0]),
            LatticeVector::from_i64(&[-1, 0, -1]),
        ],
    );
    Fan::from_cones(3, vec![s1, s2]).expect("the two charts meet along a common face")
}

/// The projective line: rays `±1` in rank one.
pub fn projective_line_fan() -> Fan {
    Fan::from_cones(
        1,
        vec![
            Cone::from_rays(1, &[LatticeVector::from_i64(&[1])]),
            Cone::from_rays(1, &[LatticeVector::from_i64(&[-1])]),
        ],
    )
    .expect("two opposite rays form a fan")
}

/// The surface quadric cone singularity: `cone{(1,0),(1,2)}` in rank two.
pub fn a1_fan() -> Fan {
    Fan::from_cones(
        2,
        vec![Cone::from_rays(
            2,
            &[
                LatticeVector::from_i64(&[1, 0]),
                LatticeVector::from_i64(&[1, 2]),
            ],
        )],
    )
    .expect("a single cone always validates")
}

/// The smooth affine plane chart.
pub fn orthant_fan(rank: usize) -> Fan {
    let rays: Vec<LatticeVector> = (0..rank).map(|i| LatticeVector::unit(rank, i)).collect();
    Fan::from_cones(rank, vec![Cone::from_rays(rank, &rays)]).expect("orthant validates")
}

fn sweep<T: Send>(
    weights: &[LatticeVector],
    parallel: bool,
    f: impl Fn(&LatticeVector) -> T + Sync,
) -> Vec<T> {
    if parallel {
        weights.par_iter().map(|m| f(m)).collect()
    } else {
        weights.iter().map(|m| f(m)).collect()
    }
}

fn is_weight_line(m: &LatticeVector) -> bool {
    m.coord(0) == &Int::from(1) && m.coord(1).eq(&Int::from(0))
}

/// Reproduces the affine quadric-cylinder computation: the reflexive piece
/// is three-dimensional along the weight line `(1,0,*)`, the Kähler image is
/// two-dimensional there, and the cokernel is the one-dimensional line of a
/// Laurent module — it also carries the weight-two piece of `K₁` of the
/// chart via the one-chart two-term complex.
pub fn run_huge_k1(radius: i64, parallel: bool) -> ExampleReport {
    let mut report = ExampleReport::new("hugeK1");
    report.param("window_radius", radius);
    let tau = quadric_cylinder_cone();
    let fan = Fan::from_cones(3, vec![tau.clone()]).expect("affine chart");
    let cover = Cover::new(&fan);
    let weights = weight_box(3, radius);

    let rows = sweep(&weights, parallel, |m| {
        let tilde = tilde_omega_weight(&tau, m, 1).dim();
        let image = omega_image_weight(&tau, m, 1).dim();
        let cone_dims = mapping_cone_cohomology_on(&cover, 3, m);
        (m.clone(), tilde, image, cone_dims[1])
    });

    let mut table = Table::new("forms_p1", &["weight", "tilde", "image", "coker"]);
    let mut k1_table = Table::new("k1_weight2_piece", &["weight", "dim"]);
    let mut line_ok = true;
    let mut k1_matches_coker = true;
    for (m, tilde, image, h1) in &rows {
        let coker = tilde - image;
        if *tilde > 0 {
            table.push_row(vec![
                m.to_string(),
                tilde.to_string(),
                image.to_string(),
                coker.to_string(),
            ]);
        }
        if coker > 0 {
            k1_table.push_row(vec![m.to_string(), coker.to_string()]);
        }
        let expected = if is_weight_line(m) { 1 } else { 0 };
        if coker != expected {
            line_ok = false;
        }
        if *h1 != coker {
            k1_matches_coker = false;
        }
    }
    report.tables.push(table);
    report.tables.push(k1_table);

    let base = LatticeVector::from_i64(&[1, 0, 0]);
    report.checks.push(Check::compare(
        "reflexive piece at (1,0,0) has dimension 3",
        3,
        tilde_omega_weight(&tau, &base, 1).dim(),
        Provenance::Literature,
    ));
    report.checks.push(Check::compare(
        "Kähler image at (1,0,0) has dimension 2",
        2,
        omega_image_weight(&tau, &base, 1).dim(),
        Provenance::Literature,
    ));
    for c in -radius..=radius {
        let m = LatticeVector::from_i64(&[1, 0, c]);
        let coker = crate::forms::coker_dimension(&tau, &m, 1);
        report.checks.push(Check::compare(
            format!("cokernel at (1,0,{}) is a line", c),
            1,
            coker,
            Provenance::Literature,
        ));
    }
    report.checks.push(Check::boolean(
        "cokernel vanishes off the weight line (1,0,*) across the box",
        line_ok,
        Provenance::Literature,
    ));
    report.checks.push(Check::boolean(
        "one-chart two-term complex H¹ equals the cokernel at every box weight",
        k1_matches_coker,
        Provenance::Literature,
    ));
    report.annotations.push(
        "The cokernel table is the weight decomposition of a Laurent polynomial module: \
         one dimension in every weight (1,0,c), c ∈ ℤ."
            .into(),
    );
    report.annotations.push(
        "Weight-two K₁ of the chart is carried by H¹ of the two-term complex; rows list \
         only nonzero entries inside the window."
            .into(),
    );
    report
}

/// Reproduces the two-chart computation: `H²` of the two-term complex is a
/// single line sitting exactly at weight `(1,0,0)`, and the direct
/// Mayer–Vietoris cokernel computation agrees weight by weight.
pub fn run_huge(radius: i64, parallel: bool) -> ExampleReport {
    let mut report = ExampleReport::new("huge");
    report.param("window_radius", radius);
    let fan = two_chart_fan();
    let cover = Cover::new(&fan);
    let tau = quadric_cylinder_cone();
    let charts: Vec<Cone> = fan.maximal_cones().into_iter().cloned().collect();
    let weights = weight_box(3, radius);

    let rows = sweep(&weights, parallel, |m| {
        let h = mapping_cone_cohomology_on(&cover, 3, m);
        let mv = mayer_vietoris_coker_dim(&tau, &charts, m);
        (m.clone(), h[2], mv)
    });

    let mut table = Table::new("mapping_cone_h2", &["weight", "h2", "mv_coker"]);
    let mut agree = true;
    let mut support_ok = true;
    for (m, h2, mv) in &rows {
        if *h2 > 0 || *mv > 0 {
            table.push_row(vec![m.to_string(), h2.to_string(), mv.to_string()]);
        }
        if h2 != mv {
            agree = false;
        }
        let expected = if m == &LatticeVector::from_i64(&[1, 0, 0]) {
            1
        } else {
            0
        };
        if *h2 != expected {
            support_ok = false;
        }
    }
    report.tables.push(table);

    report.checks.push(Check::compare(
        "H² at weight (1,0,0) is one-dimensional",
        1,
        rows.iter()
            .find(|(m, _, _)| m == &LatticeVector::from_i64(&[1, 0, 0]))
            .map(|(_, h2, _)| *h2)
            .unwrap_or(usize::MAX),
        Provenance::Literature,
    ));
    report.checks.push(Check::boolean(
        "H² vanishes at every other box weight",
        support_ok,
        Provenance::Literature,
    ));
    for c in [1i64, -1] {
        let m = LatticeVector::from_i64(&[1, 0, c]);
        let h2 = rows
            .iter()
            .find(|(w, _, _)| w == &m)
            .map(|(_, h2, _)| *h2)
            .unwrap_or(usize::MAX);
        report.checks.push(Check::compare(
            format!("H² at (1,0,{}) is killed by a chart section", c),
            0,
            h2,
            Provenance::Literature,
        ));
    }
    report.checks.push(Check::boolean(
        "Čech computation agrees with the Mayer–Vietoris cokernel at every box weight",
        agree,
        Provenance::Oracle,
    ));
    report.annotations.push(
        "The cokernel of the chart-section map onto the overlap cokernel realizes the \
         weight-two piece of K₀ of the two-chart variety; only weight (1,0,0) survives."
            .into(),
    );
    report
}

/// The overlap cokernel modulo the images of the chart sections:
/// `Ω̃¹(U_τ)_m / (image Ω¹(U_τ)_m + Ω̃¹(U_{σ₁})_m + Ω̃¹(U_{σ₂})_m)`.
fn mayer_vietoris_coker_dim(tau: &Cone, charts: &[Cone], m: &LatticeVector) -> usize {
    let tilde_tau = tilde_omega_weight(tau, m, 1);
    if tilde_tau.dim() == 0 {
        return 0;
    }
    let mut filled = omega_image_weight(tau, m, 1).space().clone();
    for chart in charts {
        let sec = tilde_omega_weight(chart, m, 1);
        filled = filled.sum(sec.space());
    }
    tilde_tau.dim() - filled.dim()
}

/// Affine vanishing inputs of the rank-one Grothendieck group identity:
/// the truncated reflexive de Rham hypercohomology vanishes in degree `2t`
/// for every `t > 0` on a single chart, and at `t = 0` the degree-zero group
/// is the weight space of the coordinate ring. The group-level identity is
/// annotated, not computed.
pub fn k0_affine_identity(sigma: &Cone, radius: i64) -> Result<ExampleReport> {
    let mut report = ExampleReport::new("k0");
    report.param("window_radius", radius);
    let rank = sigma.ambient_rank();
    let fan = Fan::from_cones(rank, vec![sigma.clone()])?;
    let dual = sigma.dual();
    let mut all_vanish = true;
    let mut h0_matches = true;
    let mut table = Table::new("hyper_truncated", &["t", "weight", "degree", "dim"]);
    for t in 0..=3usize {
        for m in weight_box(rank, radius) {
            let dims = crate::cech::hyper_cohomology_truncated(&fan, t, &m)?;
            for (qq, d) in dims.iter().enumerate() {
                if *d > 0 {
                    table.push_row(vec![
                        t.to_string(),
                        m.to_string(),
                        qq.to_string(),
                        d.to_string(),
                    ]);
                }
            }
            if t > 0 {
                let h2t = dims.get(2 * t).copied().unwrap_or(0);
                if h2t != 0 {
                    all_vanish = false;
                }
            } else {
                let expected = if dual.contains(&m)? { 1 } else { 0 };
                if dims[0] != expected {
                    h0_matches = false;
                }
            }
        }
    }
    report.tables.push(table);
    report.checks.push(Check::boolean(
        "H^{2t} of the truncated complex vanishes for every t in 1..=3 and box weight",
        all_vanish,
        Provenance::Definition,
    ));
    report.checks.push(Check::boolean(
        "H⁰ at t = 0 equals the coordinate-ring weight dimension",
        h0_matches,
        Provenance::Definition,
    ));
    report.annotations.push(
        "The Grothendieck group of an affine toric chart is infinite cyclic — recorded \
         as a documented identity; only its vanishing input above is computed."
            .into(),
    );
    Ok(report)
}

/// Dilation-vanishing chains for the two-term complex over a fan, plus the
/// documented spectrum-level identities they shadow.
pub fn structural_identities(fan: &Fan, radius: i64, parallel: bool) -> Result<ExampleReport> {
    let mut report = ExampleReport::new("identities");
    report.param("window_radius", radius);
    fan.validate()
        .map_err(|v| crate::error::Error::InvalidFan(v.to_string()))?;
    let cover = Cover::new(fan);
    let rank = fan.ambient_rank();
    let weights = weight_box(rank, radius);

    let chains = sweep(&weights, parallel, |m| {
        let mut chain: Vec<usize> = Vec::new();
        let mut w = m.clone();
        let mut vanished = false;
        for step in 0..=DEFAULT_DILATION_SEQUENCE.len() {
            let dims = mapping_cone_cohomology_on(&cover, rank, &w);
            let total: usize = dims.iter().sum();
            chain.push(total);
            if total == 0 && step > 0 && chain[step - 1] == 0 {
                vanished = true;
                break;
            }
            if step < DEFAULT_DILATION_SEQUENCE.len() {
                w = w.scale(&Int::from(DEFAULT_DILATION_SEQUENCE[step]));
            }
        }
        // a chain that starts at zero and stays zero for one step counts
        if chain.len() >= 2 && chain[0] == 0 && chain[1] == 0 {
            vanished = true;
        }
        (m.clone(), chain, vanished)
    });

    let mut table = Table::new("dilation_chains", &["weight", "chain"]);
    let mut all_vanish = true;
    for (m, chain, vanished) in &chains {
        if chain[0] > 0 {
            let pretty: Vec<String> = chain.iter().map(|d| d.to_string()).collect();
            table.push_row(vec![m.to_string(), pretty.join(",")]);
        }
        if !vanished {
            all_vanish = false;
        }
    }
    report.tables.push(table);
    report.checks.push(Check::boolean(
        "two-term complex cohomology vanishes along every dilation chain in the box",
        all_vanish,
        Provenance::Oracle,
    ));
    report.annotations.push(
        "Documented identity (not computed): the map from K-theory to homotopy K-theory \
         of a toric variety is a split surjection, so K splits off the fiber cohomology."
            .into(),
    );
    report.annotations.push(
        "Documented identity (not computed): the weight-two summand of that fiber is the \
         hypercohomology of the two-term complex computed here; higher weights are out of \
         scope."
            .into(),
    );
    report.annotations.push(
        "Documented identity (not computed): after inverting dilations, K-theory and \
         homotopy K-theory agree; the chain table above is the per-weight shadow of the \
         vanishing that drives it."
            .into(),
    );
    report.annotations.push(
        "Documented identity (not computed): for a pointed affine monoid the reduced \
         K-groups vanish after inverting dilations; the affine cokernel chains are its \
         weight-level shadow."
            .into(),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn huge_k1_report_passes() {
        let r = run_huge_k1(2, false);
        assert!(r.pass(), "failed checks: {:?}", r.failed_checks());
        // coker table rows: exactly the five weights (1,0,-2..=2)
        let k1 = r.tables.iter().find(|t| t.name == "k1_weight2_piece").unwrap();
        assert_eq!(k1.rows.len(), 5);
        assert!(k1.rows.iter().all(|row| row[1] == "1"));
    }

    #[test]
    fn huge_report_passes() {
        let r = run_huge(2, false);
        assert!(r.pass(), "failed checks: {:?}", r.failed_checks());
    }

    #[test]
    fn parallel_sweep_matches_serial() {
        let serial = run_huge_k1(1, false);
        let par = run_huge_k1(1, true);
        assert_eq!(serial.pass(), par.pass());
        for (a, b) in serial.tables.iter().zip(par.tables.iter()) {
            assert_eq!(a.rows, b.rows);
        }
    }

    #[test]
    fn k0_identity_on_quadric_cylinder() {
        let r = k0_affine_identity(&quadric_cylinder_cone(), 1).unwrap();
        assert!(r.pass(), "failed checks: {:?}", r.failed_checks());
        assert!(!r.annotations.is_empty());
    }

    #[test]
    fn structural_identities_two_chart() {
        let r = structural_identities(&two_chart_fan(), 1, false).unwrap();
        assert!(r.pass(), "failed checks: {:?}", r.failed_checks());
        // the base weight chain (1,0,0) appears with leading dimension 1
        let table = &r.tables[0];
        let row = table
            .rows
            .iter()
            .find(|row| row[0] == "(1,0,0)")
            .expect("weight line row present");
        assert!(row[1].starts_with("1,0,0"));
        // spectrum-level statements are labelled as documented identities
        assert!(r.annotations.iter().filter(|a| a.contains("Documented identity")).count() >= 4);
    }

    #[test]
    fn structural_identities_smooth_fan_trivial() {
        let r = structural_identities(&projective_line_fan(), 2, false).unwrap();
        assert!(r.pass());
        assert!(r.tables[0].rows.is_empty());
    }
}
