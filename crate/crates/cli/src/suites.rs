//! The checks behind each subcommand. Every function is deterministic in
//! the config and independent of the worker count.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde_json::json;

use nkcore::exterior::{Form, Orientation};
use nkcore::flag::cohomology::invariant_cohomology;
use nkcore::flag::deform::{
    density_polynomial, density_terms, density_with, dv_closed, q3_closed, q3_formula, q4_closed, rho,
    rho_closed, rho_formula, sigma_hat, sigma_hat_closed, v_field,
};
use nkcore::flag::dirac::{dirac, killing_field, symmetry_defect};
use nkcore::flag::haar::{haar_sample, mean_stderr, obstruction_with};
use nkcore::flag::{
    coefficients, coset_frame, invariant_structure, Calculus, FormField, LieAlg, Normalization,
};
use nkcore::random::{gaussian, gaussian_form, near_identity, substream, well_conditioned};
use nkcore::stable::{
    dual2, dual3, dual3_oriented, dual4_oriented, lin_dual3, lin_dual4, quad_dual3, quad_dual4,
    richardson_first, FdSteps,
};
use nkcore::su3types::{
    decompose2, decompose3, identity_suite_with, projector_ranks_2, projector_ranks_3, rank_of,
};
use nkcore::{SU3Structure, Tolerances};

use crate::config::{CommandKind, RunConfig};
use crate::error::CliError;
use crate::report::{Check, McEntry, Report};

/// Offsets separating the random streams of different checks under one seed.
const STREAM_DUAL2: u64 = 1 << 40;
const STREAM_DUAL3: u64 = 2 << 40;
const STREAM_LIN: u64 = 3 << 40;
const STREAM_POINTS: u64 = 4 << 40;
const STREAM_FIELDS: u64 = 5 << 40;
const STREAM_MC: u64 = 6 << 40;

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.command {
        CommandKind::VerifyAlgebra => verify_algebra(cfg),
        CommandKind::FlagCheck => flag_check(cfg),
        CommandKind::Deformations => deformations(cfg),
        CommandKind::Obstruction => obstruction(cfg),
        CommandKind::Cohomology => cohomology(cfg),
    }
}

fn tol() -> Tolerances {
    Tolerances::default()
}

fn random_xi(rng: &mut impl rand::Rng) -> LieAlg {
    LieAlg::from_coords(&std::array::from_fn(|_| gaussian(rng)))
}

/// Largest value of `f` over `n` indexed inputs, in parallel. NaN and
/// errors map to infinity so they fail every tolerance.
fn par_max<F>(n: usize, f: F) -> f64
where
    F: Fn(u64) -> Result<f64, nkcore::Error> + Sync,
{
    (0..n as u64)
        .into_par_iter()
        .map(|i| match f(i) {
            Ok(x) if !x.is_nan() => x,
            _ => f64::INFINITY,
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(0.0, f64::max)
}

fn verify_algebra(cfg: &RunConfig) -> Result<Report, CliError> {
    let n = cfg.samples;
    let base = SU3Structure::standard();
    let suite = identity_suite_with(&base, n, cfg.seed, 1e-9, &|m, f| m.star(f));
    let mut checks: Vec<Check> = suite
        .checks
        .iter()
        .map(|c| {
            Check::new(
                cfg,
                &format!("{}.{}", c.group, c.name),
                c.max_residual,
                c.tolerance,
                c.anchor,
            )
        })
        .collect();

    let t = tol();
    let round2 = par_max(n, |i| {
        let w = gaussian_form(&mut substream(cfg.seed, STREAM_DUAL2 + i), 2);
        let orientation = Orientation::of((w ^ w ^ w).top());
        let back = dual4_oriented(&dual2(&w, &t)?, orientation, &t)?;
        Ok(back.rel_diff(&w))
    });
    checks.push(Check::new(
        cfg,
        "duality.dual4_dual2",
        round2,
        1e-9,
        "dual4(½ω²) = ω",
    ));

    let round3 = par_max(n, |i| {
        let a = well_conditioned(&mut substream(cfg.seed, STREAM_DUAL3 + i), 0.7);
        let rho = base.re_omega.pullback(&a);
        let once = dual3(&rho, &t)?;
        let twice = dual3(&once.rho_hat, &t)?;
        let j = (twice.j.mat - once.j.mat).amax() / once.j.mat.amax();
        Ok(twice.rho_hat.rel_diff(&(-rho)).max(j))
    });
    checks.push(Check::new(
        cfg,
        "duality.dual3_twice",
        round3,
        1e-9,
        "ρ̂̂ = −ρ with the same J",
    ));

    let h = cfg.fd_step;
    let lin = (0..n.min(200) as u64)
        .into_par_iter()
        .map(|i| -> Result<(f64, f64), nkcore::Error> {
            let mut rng = substream(cfg.seed, STREAM_LIN + i);
            let b = base.pullback(&near_identity(&mut rng, 0.2), &t)?;
            let o = b.orientation();
            let sd = gaussian_form(&mut rng, 4);
            let sigma0 = (b.omega ^ b.omega) * 0.5;
            let fd4 = richardson_first(|s| dual4_oriented(&(sigma0 + sd * s), o, &t), h)?;
            let rd = gaussian_form(&mut rng, 3);
            let fd3 = richardson_first(|s| Ok(dual3_oriented(&(b.re_omega + rd * s), o, &t)?.rho_hat), h)?;
            Ok((
                lin_dual4(&sd, &b).rel_diff(&fd4),
                lin_dual3(&rd, &b).rel_diff(&fd3),
            ))
        })
        .map(|r| r.unwrap_or((f64::INFINITY, f64::INFINITY)))
        .collect::<Vec<_>>()
        .into_iter()
        .fold((0.0_f64, 0.0_f64), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    checks.push(Check::new(
        cfg,
        "duality.lin_dual4_fd",
        lin.0,
        1e-6,
        "σ̂ = ½∗σ₁ + ∗σ₆ − ∗σ₈",
    ));
    checks.push(Check::new(
        cfg,
        "duality.lin_dual3_fd",
        lin.1,
        1e-6,
        "ρ̂ = ∗(ρ₆ + ρ₁⊕₁) − ∗ρ₁₂",
    ));

    let r2 = projector_ranks_2(&base, &t);
    let r3 = projector_ranks_3(&base, &t);
    let miss = |got: [usize; 3], want: [usize; 3]| -> f64 {
        got.iter().zip(want).map(|(g, w)| g.abs_diff(w) as f64).sum()
    };
    checks.push(Check::new(
        cfg,
        "types.ranks_2",
        miss(r2, [1, 6, 8]),
        0.0,
        "Λ² = Λ²₁ ⊕ Λ²₆ ⊕ Λ²₈",
    ));
    checks.push(Check::new(
        cfg,
        "types.ranks_3",
        miss(r3, [6, 2, 12]),
        0.0,
        "Λ³ = Λ³₆ ⊕ Λ³₁⊕₁ ⊕ Λ³₁₂",
    ));

    let mut report = Report::new(cfg, checks);
    report.details.insert("projector_ranks_2".into(), json!(r2));
    report.details.insert("projector_ranks_3".into(), json!(r3));
    Ok(report)
}

fn zero_field(degree: usize) -> FormField {
    FormField::closed(degree, move |_| Form::zero(degree))
}

fn flag_check(cfg: &RunConfig) -> Result<Report, CliError> {
    let t = tol();
    let frame = coset_frame();
    let mut checks = vec![
        Check::new(
            cfg,
            "frame.orthonormal",
            frame.gram_residual(),
            1e-12,
            "⟨Xᵢ, Xⱼ⟩ = δᵢⱼ for −B/12",
        ),
        Check::new(
            cfg,
            "frame.antisymmetry",
            frame.antisymmetry_residual(),
            1e-12,
            "cᵏᵢⱼ = −cᵏⱼᵢ",
        ),
        Check::new(
            cfg,
            "frame.jacobi",
            frame.jacobi_residual(),
            1e-12,
            "Jacobi identity",
        ),
        Check::new(
            cfg,
            "frame.closure",
            frame.closure_residual(),
            1e-12,
            "[Xᵢ, Xⱼ] ∈ su(3)",
        ),
    ];
    let structure = match invariant_structure(&t) {
        Ok(s) => s,
        Err(e) => {
            checks.push(Check::new(
                cfg,
                "structure",
                f64::INFINITY,
                0.0,
                "dω = 3ReΩ, dImΩ = −2ω²",
            ));
            let mut r = Report::new(cfg, checks);
            r.advisory = Some(e.to_string());
            return Ok(r);
        }
    };
    let res = structure.residuals;
    checks.extend([
        Check::new(cfg, "nk.d_omega", res.d_omega, 1e-10, "dω = 3ReΩ"),
        Check::new(cfg, "nk.d_re_omega", res.d_re_omega, 1e-10, "dReΩ = 0"),
        Check::new(cfg, "nk.d_im_omega", res.d_im_omega, 1e-10, "dImΩ = −2ω²"),
        Check::new(cfg, "nk.im_omega_dual", res.im_omega, 1e-10, "ImΩ = Im(θ₁∧θ₂∧θ₃)"),
        Check::new(
            cfg,
            "nk.horizontal",
            res.vertical,
            1e-12,
            "d of invariant forms is horizontal",
        ),
    ]);
    let tc = structure.torsion();
    checks.extend([
        Check::new(cfg, "torsion.w1", (tc.w1 - 1.0).abs(), 1e-10, "w₁ = 1"),
        Check::new(
            cfg,
            "torsion.others",
            tc.max_other(),
            1e-10,
            "all other torsion classes vanish",
        ),
        Check::new(
            cfg,
            "torsion.consistency",
            tc.residual,
            1e-10,
            "dReΩ and dImΩ agree with dω",
        ),
    ]);

    let calc = Calculus::new(cfg.fd_step, t)?;
    let points = 20u64;
    let dv = par_max(points as usize, |i| {
        let mut rng = substream(cfg.seed, STREAM_POINTS + i);
        let xi = random_xi(&mut rng);
        let g = haar_sample(&mut rng);
        let c = coefficients(&g, &xi);
        let mut worst = 0.0_f64;
        for k in 0..3 {
            let fd = calc.d_at(&v_field(&xi, k), &g)?;
            worst = worst.max(fd.rel_diff(&dv_closed(&c, k)));
        }
        Ok(worst)
    });
    checks.push(Check::new(
        cfg,
        "dv.fd_vs_closed",
        dv,
        1e-6,
        "dv₁ = 4·Im(z₁θ₁ − z₂θ₂) in the −B/12 frame",
    ));
    let dd = par_max(5, |i| {
        let mut rng = substream(cfg.seed, STREAM_POINTS + i);
        let xi = random_xi(&mut rng);
        let g = haar_sample(&mut rng);
        Ok(calc.d_at(&calc.d(&v_field(&xi, 0)), &g)?.max_abs())
    });
    checks.push(Check::new(cfg, "calculus.d_squared", dd, 1e-6, "d² = 0"));

    let zero0 = zero_field(0);
    let kernel = par_max(50, |i| {
        let g = haar_sample(&mut substream(cfg.seed, STREAM_POINTS + i));
        let mut worst = 0.0_f64;
        for k in 0..8 {
            let mut coords = [0.0; 8];
            coords[k] = 1.0;
            let x = killing_field(&LieAlg::from_coords(&coords));
            worst = worst.max(dirac(&calc, &x, &zero0, &zero0, &g)?.max_abs());
        }
        Ok(worst)
    });
    checks.push(Check::new(
        cfg,
        "dirac.killing_kernel",
        kernel,
        1e-6,
        "Killing fields lie in ker D",
    ));

    let (mean, stderr) = dirac_symmetry(&calc, cfg.seed, cfg.samples)?;
    let sym = mean.abs() / stderr;
    checks.push(Check::new(
        cfg,
        "dirac.symmetry_sigmas",
        sym,
        3.0,
        "D is self-adjoint (|mean defect| in standard errors)",
    ));

    let mut report = Report::new(cfg, checks);
    report.details.insert("w1".into(), json!(tc.w1));
    report.details.insert("w1hat".into(), json!(tc.w1hat));
    report
        .details
        .insert("dirac_symmetry".into(), json!({"mean": mean, "stderr": stderr}));
    Ok(report)
}

/// Mean and standard error of `⟨Du, u′⟩ − ⟨u, Du′⟩` over Haar samples, for
/// seeded test fields built from Killing fields and coefficient functions.
pub fn dirac_symmetry(calc: &Calculus, seed: u64, samples: usize) -> Result<(f64, f64), CliError> {
    let mut rng = substream(seed, STREAM_FIELDS);
    let mut xi = || random_xi(&mut rng);
    let (a, b, c, d, e, f) = (xi(), xi(), xi(), xi(), xi(), xi());
    let u0 = killing_field(&a).wedge(&v_field(&b, 0));
    let v0 = killing_field(&c).wedge(&v_field(&d, 1)).add(&killing_field(&e));
    let (u1, u2) = (v_field(&b, 2), v_field(&f, 1));
    let (v1, v2) = (v_field(&d, 0), v_field(&e, 2));
    let defects: Vec<Result<f64, nkcore::Error>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let g = haar_sample(&mut substream(seed, STREAM_MC + i));
            symmetry_defect(calc, (&u0, &u1, &u2), (&v0, &v1, &v2), &g)
        })
        .collect();
    let defects: Vec<f64> = defects.into_iter().collect::<Result<_, _>>()?;
    Ok(mean_stderr(&defects))
}

fn deformations(cfg: &RunConfig) -> Result<Report, CliError> {
    let t = tol();
    let calc = Calculus::new(cfg.fd_step, t)?;
    let base = calc.structure.su3.clone();
    let mut checks = Vec::new();

    // Linear map ξ ↦ σ̂_ξ (and ↦ (σ̂_ξ, ρ_ξ)) sampled at a few points.
    let probe: Vec<_> = (0..6)
        .map(|i| haar_sample(&mut substream(cfg.seed, STREAM_FIELDS + i)))
        .collect();
    let column = |k: usize, with_rho: bool| -> Vec<f64> {
        let mut coords = [0.0; 8];
        coords[k] = 1.0;
        let xi = LieAlg::from_coords(&coords);
        let mut out = Vec::new();
        for g in &probe {
            let c = coefficients(g, &xi);
            out.extend_from_slice(sigma_hat_closed(&c).coeffs());
            if with_rho {
                out.extend_from_slice(rho_closed(&c).coeffs());
            }
        }
        out
    };
    let rank = |with_rho: bool| {
        let cols: Vec<Vec<f64>> = (0..8).map(|k| column(k, with_rho)).collect();
        let m = DMatrix::from_fn(cols[0].len(), 8, |r, c| cols[c][r]);
        rank_of(&m, t.rank)
    };
    let (rank_sigma, rank_pair) = (rank(false), rank(true));
    checks.push(Check::new(
        cfg,
        "sigma_hat.rank",
        rank_sigma.abs_diff(8) as f64,
        0.0,
        "8-dimensional space of infinitesimal deformations",
    ));
    checks.push(Check::new(
        cfg,
        "sigma_hat.kernel",
        rank_pair.abs_diff(8) as f64,
        0.0,
        "ξ ↦ (σ̂_ξ, ρ_ξ) is injective",
    ));

    let steps = FdSteps::default();
    let rows: Vec<Result<[f64; 12], nkcore::Error>> = (0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(cfg.seed, STREAM_POINTS + i);
            let xi = random_xi(&mut rng);
            let g = haar_sample(&mut rng);
            let c = coefficients(&g, &xi);
            let s = sigma_hat_closed(&c);
            let w2 = base.omega ^ base.omega;
            let types = decompose2(&s, &base);
            let primitive = types
                .lambda
                .abs()
                .max(types.x.amax())
                .max((s ^ w2).max_abs())
                .max((s ^ base.re_omega).max_abs());
            let s_field = sigma_hat(&xi);
            let coclosed = calc.codiff_at(&s_field, &g)?.max_abs();
            let three_rho = rho_closed(&c) * 3.0;
            let derivative = calc.d_at(&s_field, &g)?.rel_diff(&three_rho);
            let rt = decompose3(&three_rho, &base);
            let twelve = rt.x.amax().max(rt.lambda.abs()).max(rt.mu.abs()) / three_rho.max_abs().max(1.0);
            let lap = calc.laplacian_at(&s_field, Some(&rho(&xi).scaled(3.0)), Some(&zero_field(1)), &g)?;
            let laplacian = lap.rel_diff(&(s * 12.0));
            let full = if i < 10 {
                calc.laplacian_at(&s_field, None, None, &g)?.rel_diff(&(s * 12.0))
            } else {
                0.0
            };

            let q4 = q4_closed(&c, &base);
            let ss = s ^ s;
            let q4_relation = ((base.omega ^ q4) - ss).max_abs() / ss.max_abs().max(1.0);
            let (q4_fd, q3_fd) = if i < 10 {
                let n4 = ss.max_abs().sqrt().max(1e-300);
                let fd4 = quad_dual4(&((s * (1.0 / n4)) ^ base.omega), &base, &steps, &t)? * (n4 * n4);
                let r = rho_closed(&c);
                let n3 = r.max_abs().max(1e-300);
                let fd3 = quad_dual3(&(r * (1.0 / n3)), &base, &steps, &t)? * (n3 * n3);
                (fd4.rel_diff(&q4), fd3.rel_diff(&q3_closed(&c)))
            } else {
                (0.0, 0.0)
            };
            let [v1, v2, v3] = c.v;
            let (first, _) = density_terms(&c, &c, &base, Normalization::Formula);
            let p4 = -72.0 * v1 * v2 * v3;
            let reduction4 = (first - p4).abs() / p4.abs().max(1.0);
            let vol_pair = (base.re_omega ^ base.im_omega).top();
            let lhs = ((q3_formula(&c.z) * 9.0) ^ rho_formula(&c.z)).top();
            let rhs = -(c.z[0] * c.z[1] * c.z[2]).re * vol_pair;
            let reduction3 = (lhs - rhs).abs() / rhs.abs().max(1.0);
            let density = |n: Normalization| {
                let f = density_with(&xi, &xi, &g, &base, n);
                let p = density_polynomial(&c, n);
                (f - p).abs() / p.abs().max(1.0)
            };
            Ok([
                primitive,
                coclosed,
                derivative,
                twelve,
                laplacian,
                full,
                q4_relation,
                q4_fd,
                q3_fd,
                reduction4.max(reduction3),
                density(Normalization::Formula),
                density(Normalization::Geometric),
            ])
        })
        .collect();
    let mut worst = [0.0_f64; 12];
    for row in rows {
        let row = row.unwrap_or([f64::INFINITY; 12]);
        for (w, x) in worst.iter_mut().zip(row) {
            *w = w.max(if x.is_nan() { f64::INFINITY } else { x });
        }
    }
    let names: [(&str, f64, &str); 12] = [
        ("sigma_hat.primitive_1_1", 1e-10, "σ̂_ξ is a primitive (1,1)-form"),
        ("sigma_hat.coclosed", 1e-6, "d*σ̂_ξ = 0"),
        ("rho.derivative", 1e-6, "dσ̂_ξ = 3ρ_ξ"),
        ("rho.type_12", 1e-10, "ρ_ξ ∈ Λ³₁₂"),
        ("sigma_hat.laplacian", 1e-4, "Δσ̂_ξ = 12σ̂_ξ"),
        (
            "sigma_hat.laplacian_full_fd",
            1e-4,
            "Δσ̂_ξ = 12σ̂_ξ without closed inner layers",
        ),
        ("q4.relation", 1e-10, "ω∧Q₄ = σ̂∧σ̂"),
        ("q4.fd_oracle", 1e-4, "Q₄ is the quadratic term of dual4"),
        ("q3.fd_oracle", 1e-4, "Q₃ is the quadratic term of dual3"),
        (
            "reductions",
            1e-8,
            "⟨12Q₄, σ̂⟩ = −72v₁v₂v₃ and 9Q₃∧ρ = −Re(z₁z₂z₃)ReΩ∧ImΩ",
        ),
        ("density.formula", 1e-8, "density = −72v₁v₂v₃ − 4Re(z₁z₂z₃)"),
        (
            "density.geometric",
            1e-8,
            "density = −72v₁v₂v₃ − 256Re(z₁z₂z₃) with 3ρ = dσ̂",
        ),
    ];
    for ((name, default, anchor), err) in names.iter().zip(worst) {
        checks.push(Check::new(cfg, name, err, *default, anchor));
    }
    let mut report = Report::new(cfg, checks);
    report.details.insert("rank_sigma_hat".into(), json!(rank_sigma));
    report.details.insert("rank_sigma_rho".into(), json!(rank_pair));
    report
        .details
        .insert("normalization".into(), json!(cfg.normalization));
    Ok(report)
}

/// Standard errors by which two ratios may differ and still agree.
pub const CONSISTENCY_SIGMAS: f64 = 3.0;
/// Required significance of a nonzero ratio.
pub const NONZERO_SIGMAS: f64 = 5.0;
/// A ξ with `i·det ξ = 0` passes when its mean is within this many errors of 0.
pub const ZERO_SIGMAS: f64 = 4.0;

fn obstruction(cfg: &RunConfig) -> Result<Report, CliError> {
    let base = invariant_structure(&tol())?.su3;
    let specs = cfg.xi_or_default();
    let mut checks = Vec::new();
    let mut mc = Vec::new();
    let mut underpowered = Vec::new();
    for spec in &specs {
        let est = obstruction_with(&spec.xi, None, cfg.samples, cfg.seed, &base, cfg.normalization)?;
        match (est.ratio, est.ratio_stderr) {
            (Some(r), Some(se)) => {
                let sigmas = r.abs() / se;
                let c = Check::new(
                    cfg,
                    &format!("ratio_nonzero[{}]", spec.text),
                    1.0 / sigmas,
                    1.0 / NONZERO_SIGMAS,
                    "Φ(ξ,ξ)/(i det ξ) ≠ 0 (relative standard error)",
                );
                if !c.passed {
                    underpowered.push(spec.text.clone());
                }
                checks.push(c);
            }
            _ => checks.push(Check::new(
                cfg,
                &format!("mean_vanishes[{}]", spec.text),
                est.mean.abs() / est.stderr,
                ZERO_SIGMAS,
                "i det ξ = 0 implies Φ(ξ,ξ) = 0 (|mean| in standard errors)",
            )),
        }
        mc.push(McEntry {
            xi_spec: spec.text.clone(),
            xi: est.xi,
            samples: est.samples,
            seed: est.seed,
            mean: est.mean,
            stderr: est.stderr,
            idet: est.idet,
            ratio: est.ratio,
            ratio_stderr: est.ratio_stderr,
            sigmas: est.sigmas,
        });
    }
    let ratios: Vec<(f64, f64)> = mc
        .iter()
        .filter_map(|m| Some((m.ratio?, m.ratio_stderr?)))
        .collect();
    if ratios.len() >= 2 {
        let mut worst = 0.0_f64;
        for (i, a) in ratios.iter().enumerate() {
            for b in &ratios[i + 1..] {
                worst = worst.max((a.0 - b.0).abs() / (a.1 * a.1 + b.1 * b.1).sqrt());
            }
        }
        checks.push(Check::new(
            cfg,
            "ratio_consistency",
            worst,
            CONSISTENCY_SIGMAS,
            "Φ(ξ,ξ) = iC det ξ (largest pairwise gap in combined standard errors)",
        ));
    }
    let mut report = Report::new(cfg, checks);
    report.mc = mc;
    report
        .details
        .insert("normalization".into(), json!(cfg.normalization));
    if !underpowered.is_empty() {
        report.advisory = Some(format!(
            "underpowered: ratio below {NONZERO_SIGMAS} standard errors for {}; increase --samples",
            underpowered.join(", ")
        ));
    }
    Ok(report)
}

fn cohomology(cfg: &RunConfig) -> Result<Report, CliError> {
    let t = tol();
    let structure = invariant_structure(&t)?;
    let r = invariant_cohomology(&structure, &t);
    let m = &structure.su3.metric;
    let harmonic = r
        .harmonic2
        .iter()
        .map(|h| {
            let d = nkcore::flag::ce::ce_d(h).0.max_abs();
            let dstar = nkcore::flag::ce::ce_d(&m.star(h)).0.max_abs();
            d.max(dstar)
        })
        .fold(0.0, f64::max);
    let checks = vec![
        Check::new(
            cfg,
            "betti.b2",
            r.betti[2].abs_diff(2) as f64,
            0.0,
            "invariant b² = 2",
        ),
        Check::new(cfg, "betti.b3", r.betti[3] as f64, 0.0, "invariant b³ = 0"),
        Check::new(
            cfg,
            "harmonic2.type_8",
            r.harmonic2_type_residual,
            1e-10,
            "η∧ω² = 0 = η∧ReΩ for harmonic η",
        ),
        Check::new(cfg, "harmonic2.closed_coclosed", harmonic, 1e-12, "dη = 0 = d*η"),
        Check::new(
            cfg,
            "harmonic3.type_12",
            r.harmonic3_type_residual,
            1e-10,
            "harmonic 3-forms lie in Λ³₁₂",
        ),
        Check::new(
            cfg,
            "complex.horizontal",
            r.vertical,
            1e-12,
            "d of invariant forms is horizontal",
        ),
    ];
    let mut report = Report::new(cfg, checks);
    report.details.insert("betti".into(), json!(r.betti));
    report
        .details
        .insert("invariant_dims".into(), json!(r.invariant_dims));
    Ok(report)
}
