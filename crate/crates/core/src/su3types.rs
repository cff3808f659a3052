//! SU(3) type decompositions of 2-, 3- and 4-forms, the map α, intrinsic
//! torsion, and a randomized suite of the pointwise identities relating them.
//!
//! Projections are computed from wedge and star formulas only, so each
//! projector doubles as a check of those formulas.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::exterior::{basis_len, Endo, Form, Metric, Vector, DIM};
use crate::random;
use crate::stable::{self, SU3Structure};
use crate::tolerance::{rel_diff_scalar, Tolerances};

/// `η = λω + X⌟ReΩ + η₀` with `η₀ ∈ Λ²₈`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoFormTypes {
    pub lambda: f64,
    pub x: Vector,
    pub eta0: Form,
}

impl TwoFormTypes {
    pub fn reassemble(&self, base: &SU3Structure) -> Form {
        base.omega * self.lambda + base.contract_re(&self.x) + self.eta0
    }
}

/// `σ = X♭∧ω + λReΩ + μImΩ + ρ₀` with `ρ₀ ∈ Λ³₁₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeFormTypes {
    pub x: Vector,
    pub lambda: f64,
    pub mu: f64,
    pub rho0: Form,
}

impl ThreeFormTypes {
    pub fn reassemble(&self, base: &SU3Structure) -> Form {
        (base.metric.flat(&self.x) ^ base.omega)
            + base.re_omega * self.lambda
            + base.im_omega * self.mu
            + self.rho0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorsionClasses {
    pub w1: f64,
    pub w1hat: f64,
    pub w2: Form,
    pub w2hat: Form,
    pub w3: Form,
    pub w4: Vector,
    pub w5: Vector,
    /// Disagreement between the classes read off from `dω` and those read
    /// off from `dReΩ`, `dImΩ`.
    pub residual: f64,
}

impl TorsionClasses {
    /// Largest component other than `w₁`.
    pub fn max_other(&self) -> f64 {
        [
            self.w1hat.abs(),
            self.w2.max_abs(),
            self.w2hat.max_abs(),
            self.w3.max_abs(),
            self.w4.amax(),
            self.w5.amax(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn decompose2(eta: &Form, base: &SU3Structure) -> TwoFormTypes {
    decompose2_with(eta, base, &|m, f| m.star(f))
}

fn decompose2_with(eta: &Form, base: &SU3Structure, star: &StarFn) -> TwoFormTypes {
    let m = &base.metric;
    let w2 = base.omega ^ base.omega;
    let lambda = star(m, &(*eta ^ w2)).value() / 6.0;
    let x = m.sharp(&star(m, &(*eta ^ base.im_omega))) * -0.5;
    let eta0 = *eta - base.omega * lambda - base.contract_re(&x);
    TwoFormTypes { lambda, x, eta0 }
}

pub fn decompose3(sigma: &Form, base: &SU3Structure) -> ThreeFormTypes {
    let m = &base.metric;
    let jx = m.sharp(&m.star(&(*sigma ^ base.omega))) * 0.5;
    let x = -base.j.apply(&jx);
    let mu = -0.25 * m.star(&(*sigma ^ base.re_omega)).value();
    let lambda = 0.25 * m.star(&(*sigma ^ base.im_omega)).value();
    let rho0 = *sigma - (m.flat(&x) ^ base.omega) - base.re_omega * lambda - base.im_omega * mu;
    ThreeFormTypes { x, lambda, mu, rho0 }
}

/// Types of the unique 2-form `η` with `η∧ω = τ`.
pub fn decompose4(tau: &Form, base: &SU3Structure) -> TwoFormTypes {
    let zeta = decompose2(&base.metric.star(tau), base);
    let types = TwoFormTypes {
        lambda: 0.5 * zeta.lambda,
        x: zeta.x,
        eta0: -zeta.eta0,
    };
    debug_assert!((types.reassemble(base) ^ base.omega).rel_diff(tau) < 1e-8);
    types
}

/// The 2-form `η` with `η∧ω = τ`.
pub fn unwedge_omega(tau: &Form, base: &SU3Structure) -> Form {
    decompose4(tau, base).reassemble(base)
}

/// Metric adjoint of `X ↦ X⌟ReΩ`, normalized so that `α(X⌟ReΩ) = 2X`.
/// Components outside `Λ²₆` are annihilated.
pub fn alpha(eta: &Form, base: &SU3Structure) -> Vector {
    let m = &base.metric;
    let mut w = Vector::zeros();
    for i in 0..DIM {
        let mut e = Vector::zeros();
        e[i] = 1.0;
        w[i] = m.inner(eta, &base.contract_re(&e)).expect("2-forms");
    }
    m.sharp(&Form::one_form(&w))
}

pub fn torsion_classes(
    domega: &Form,
    d_re_omega: &Form,
    d_im_omega: &Form,
    base: &SU3Structure,
) -> TorsionClasses {
    let t = decompose3(domega, base);
    let a = decompose4(d_re_omega, base);
    let b = decompose4(d_im_omega, base);
    let w1 = t.lambda / 3.0;
    let w1hat = t.mu / 3.0;
    let w5 = -base.j.apply(&a.x);
    let residual = [
        rel_diff_scalar(2.0 * w1hat, a.lambda),
        rel_diff_scalar(-2.0 * w1, b.lambda),
        (w5 - b.x).amax() / w5.amax().max(1.0),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    TorsionClasses {
        w1,
        w1hat,
        w2: a.eta0,
        w2hat: b.eta0,
        w3: t.rho0,
        w4: t.x,
        w5,
        residual,
    }
}

/// A Hodge star `(metric, form) ↦ ⋆form`, so the suite can be run against a
/// deliberately wrong convention.
pub type StarFn = dyn Fn(&Metric, &Form) -> Form + Sync;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub group: &'static str,
    pub name: &'static str,
    pub anchor: &'static str,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<IdentityCheck>,
    pub passed: bool,
}

impl IdentityReport {
    pub fn group_passed(&self, group: &str) -> bool {
        self.checks.iter().filter(|c| c.group == group).all(|c| c.passed)
    }
}

struct Identity {
    group: &'static str,
    name: &'static str,
    anchor: &'static str,
}

const IDENTITIES: &[Identity] = &[
    Identity {
        group: "hodge",
        name: "star_contract_re_j",
        anchor: "∗(X⌟ReΩ) = −JX∧ReΩ",
    },
    Identity {
        group: "hodge",
        name: "star_contract_re_im",
        anchor: "∗(X⌟ReΩ) = X∧ImΩ",
    },
    Identity {
        group: "hodge",
        name: "star_one_form",
        anchor: "∗Y = ½JY∧ω²",
    },
    Identity {
        group: "hodge",
        name: "star_symmetric_action",
        anchor: "∗(S_∗ReΩ)=−S_∗ImΩ",
    },
    Identity {
        group: "hodge",
        name: "star_re_omega",
        anchor: "∗ReΩ = ImΩ",
    },
    Identity {
        group: "hodge",
        name: "star_omega",
        anchor: "∗ω = ½ω²",
    },
    Identity {
        group: "contraction",
        name: "contract_wedge_omega",
        anchor: "(X⌟ReΩ)∧ω = −JX∧ReΩ",
    },
    Identity {
        group: "contraction",
        name: "contract_wedge_re",
        anchor: "(X⌟ReΩ)∧ReΩ = X∧ω²",
    },
    Identity {
        group: "contraction",
        name: "contract_norm",
        anchor: "|X⌟ReΩ|² = 2|X|²",
    },
    Identity {
        group: "two_form",
        name: "singlet",
        anchor: "∗(η∧ω²) = 6λ",
    },
    Identity {
        group: "two_form",
        name: "six_im",
        anchor: "∗(η∧ImΩ)=−2X",
    },
    Identity {
        group: "two_form",
        name: "six_re",
        anchor: "∗(η∧ReΩ) = 2JX",
    },
    Identity {
        group: "two_form",
        name: "eight_conditions",
        anchor: "η ∧ ω² =0=η ∧ ReΩ",
    },
    Identity {
        group: "two_form",
        name: "star_wedge_omega",
        anchor: "∗(η∧ω) = −η₀+2λω + X⌟ReΩ",
    },
    Identity {
        group: "two_form",
        name: "quadratic",
        anchor: "∗(η∧η∧ω) = −|η₀|²+6λ²+2|X|²",
    },
    Identity {
        group: "two_form",
        name: "projectors",
        anchor: "Λ² = Λ²₁ ⊕ Λ²₆ ⊕ Λ²₈",
    },
    Identity {
        group: "three_form",
        name: "six",
        anchor: "∗(σ∧ω) = 2JX",
    },
    Identity {
        group: "three_form",
        name: "one_re",
        anchor: "∗(σ∧ReΩ) = −4μ",
    },
    Identity {
        group: "three_form",
        name: "one_im",
        anchor: "∗(σ∧ImΩ)=4λ",
    },
    Identity {
        group: "three_form",
        name: "twelve_conditions",
        anchor: "ρ∧ω =0=ρ∧Ω",
    },
    Identity {
        group: "three_form",
        name: "projectors",
        anchor: "Λ³ = Λ³₆ ⊕ Λ³₁⊕₁ ⊕ Λ³₁₂",
    },
    Identity {
        group: "four_form",
        name: "unwedge_omega",
        anchor: "η∧ω = τ",
    },
    Identity {
        group: "linearized",
        name: "lin_dual4",
        anchor: "σ̂ = ½∗σ₁ + ∗σ₆ − ∗σ₈",
    },
    Identity {
        group: "linearized",
        name: "lin_dual3",
        anchor: "ρ̂ = ∗(ρ₆ + ρ₁⊕₁) − ∗ρ₁₂",
    },
];

/// Run every identity on `samples` random inputs; pass iff each residual is
/// at most `1e−9`.
pub fn identity_suite(base: &SU3Structure, samples: usize, seed: u64) -> IdentityReport {
    identity_suite_with(base, samples, seed, 1e-9, &|m, f| m.star(f))
}

pub fn identity_suite_with(
    base: &SU3Structure,
    samples: usize,
    seed: u64,
    tolerance: f64,
    star: &StarFn,
) -> IdentityReport {
    let per_sample: Vec<Vec<f64>> = (0..samples)
        .into_par_iter()
        .map(|i| sample_residuals(base, seed, i as u64, star))
        .collect();
    let mut max = vec![0.0_f64; IDENTITIES.len()];
    for residuals in &per_sample {
        for (m, r) in max.iter_mut().zip(residuals) {
            // NaN must count as failure
            *m = if r.is_nan() || m.is_nan() {
                f64::NAN
            } else {
                m.max(*r)
            };
        }
    }
    let checks: Vec<IdentityCheck> = IDENTITIES
        .iter()
        .zip(max)
        .map(|(id, r)| IdentityCheck {
            group: id.group,
            name: id.name,
            anchor: id.anchor,
            max_residual: r,
            tolerance,
            passed: r <= tolerance,
        })
        .collect();
    IdentityReport {
        samples,
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

/// `‖a − b‖∞ / max(‖a‖∞, ‖b‖∞, 1)` for the pair.
fn rd(a: &Form, b: &Form) -> f64 {
    a.rel_diff(b)
}

/// Relative size of something that should vanish, measured against `scale`.
fn vanishing(value: f64, scale: f64) -> f64 {
    value.abs() / scale.max(1.0)
}

fn sample_residuals(base: &SU3Structure, seed: u64, index: u64, star: &StarFn) -> Vec<f64> {
    let mut rng = random::substream(seed, index);
    let m = &base.metric;
    let st = |f: &Form| star(m, f);
    let w = base.omega;
    let w2 = w ^ w;
    let re = base.re_omega;
    let im = base.im_omega;

    let x = random::gaussian_vector(&mut rng);
    let y = random::gaussian_vector(&mut rng);
    let eta = random::gaussian_form(&mut rng, 2);
    let sigma = random::gaussian_form(&mut rng, 3);
    let tau = random::gaussian_form(&mut rng, 4);
    let s = symmetric_anti_j(&random::gaussian_matrix(&mut rng), base);
    let sigma_dot = random::gaussian_form(&mut rng, 4) * 0.1;
    let rho_dot = random::gaussian_form(&mut rng, 3) * 0.1;

    let x_re = base.contract_re(&x);
    let mut out = Vec::with_capacity(IDENTITIES.len());

    // hodge
    out.push(rd(&st(&x_re), &-(base.j_flat(&x) ^ re)));
    out.push(rd(&st(&x_re), &(m.flat(&x) ^ im)));
    out.push(rd(&st(&m.flat(&y)), &((base.j_flat(&y) ^ w2) * 0.5)));
    out.push(rd(&st(&re.endo_act(&s)), &-im.endo_act(&s)));
    out.push(rd(&st(&re), &im));
    out.push(rd(&st(&w), &(w2 * 0.5)));

    // contraction
    out.push(rd(&(x_re ^ w), &-(base.j_flat(&x) ^ re)));
    out.push(rd(&(x_re ^ re), &(m.flat(&x) ^ w2)));
    out.push(rel_diff_scalar(m.norm2_form(&x_re), 2.0 * m.norm2(&x)));

    // two-form: build η from known parts so each channel has a reference
    let t2 = decompose2_with(&eta, base, star);
    let lam = random::gaussian(&mut rng);
    let built = w * lam + x_re + t2.eta0;
    out.push(rel_diff_scalar(st(&(built ^ w2)).value(), 6.0 * lam));
    out.push(rd(&st(&(built ^ im)), &(m.flat(&x) * -2.0)));
    out.push(rd(&st(&(built ^ re)), &(base.j_flat(&x) * 2.0)));
    out.push(vanishing(
        (t2.eta0 ^ w2).max_abs().max((t2.eta0 ^ re).max_abs()),
        t2.eta0.max_abs(),
    ));
    out.push(rd(&st(&(built ^ w)), &(-t2.eta0 + w * (2.0 * lam) + x_re)));
    out.push(rel_diff_scalar(
        st(&(built ^ built ^ w)).value(),
        -m.norm2_form(&t2.eta0) + 6.0 * lam * lam + 2.0 * m.norm2(&x),
    ));
    out.push(projector_residual_2(&eta, base));

    // three-form
    let t3 = decompose3(&sigma, base);
    let (lam3, mu3) = (random::gaussian(&mut rng), random::gaussian(&mut rng));
    let built3 = (m.flat(&x) ^ w) + re * lam3 + im * mu3 + t3.rho0;
    out.push(rd(&st(&(built3 ^ w)), &(base.j_flat(&x) * 2.0)));
    out.push(rel_diff_scalar(st(&(built3 ^ re)).value(), -4.0 * mu3));
    out.push(rel_diff_scalar(st(&(built3 ^ im)).value(), 4.0 * lam3));
    out.push(vanishing(
        [(t3.rho0 ^ w), (t3.rho0 ^ re), (t3.rho0 ^ im)]
            .iter()
            .map(Form::max_abs)
            .fold(0.0, f64::max),
        t3.rho0.max_abs(),
    ));
    out.push(projector_residual_3(&sigma, base));

    // four-form
    let eta4 = unwedge_omega(&tau, base);
    let round = unwedge_omega(&(eta ^ w), base);
    out.push(rd(&(eta4 ^ w), &tau).max(rd(&round, &eta)));

    // linearized duals against Richardson-extrapolated central differences
    let o = base.orientation();
    let tol = Tolerances::default();
    let sigma0 = w2 * 0.5;
    let h = 1e-3;
    let fd4 = stable::richardson_first(|t| stable::dual4_oriented(&(sigma0 + sigma_dot * t), o, &tol), h);
    out.push(match fd4 {
        Ok(fd) => rd(&lin_dual4_with(&sigma_dot, base, star), &fd),
        Err(_) => f64::NAN,
    });
    let fd3 = stable::richardson_first(
        |t| Ok(stable::dual3_oriented(&(re + rho_dot * t), o, &tol)?.rho_hat),
        h,
    );
    out.push(match fd3 {
        Ok(fd) => rd(&lin_dual3_with(&rho_dot, base, star), &fd),
        Err(_) => f64::NAN,
    });

    debug_assert_eq!(out.len(), IDENTITIES.len());
    out
}

fn lin_dual4_with(sigma_dot: &Form, base: &SU3Structure, star: &StarFn) -> Form {
    let m = &base.metric;
    let st = |f: &Form| star(m, f);
    let t = decompose2_with(&st(sigma_dot), base, star);
    let s1 = st(&(base.omega * t.lambda));
    let s6 = st(&base.contract_re(&t.x));
    let s8 = st(&t.eta0);
    st(&s1) * 0.5 + st(&s6) - st(&s8)
}

fn lin_dual3_with(rho_dot: &Form, base: &SU3Structure, star: &StarFn) -> Form {
    let m = &base.metric;
    let t = decompose3(rho_dot, base);
    let rho6 = m.flat(&t.x) ^ base.omega;
    let rho11 = base.re_omega * t.lambda + base.im_omega * t.mu;
    star(m, &(rho6 + rho11)) - star(m, &t.rho0)
}

/// The part of `a` that is `g`-symmetric and anticommutes with `J`.
pub fn symmetric_anti_j(a: &crate::exterior::Matrix, base: &SU3Structure) -> Endo {
    let g = base.metric.gram();
    let ginv = g.try_inverse().expect("metric is invertible");
    // g-symmetric part: ½(A + g⁻¹Aᵀg)
    let sym = (a + ginv * a.transpose() * g) * 0.5;
    let j = base.j.mat;
    Endo::new((sym + j * sym * j) * 0.5)
}

fn projector_residual_2(eta: &Form, base: &SU3Structure) -> f64 {
    let m = &base.metric;
    let t = decompose2(eta, base);
    let parts = [base.omega * t.lambda, base.contract_re(&t.x), t.eta0];
    let mut r = rd(&(parts[0] + parts[1] + parts[2]), eta);
    let scale = m.norm2_form(eta).max(1.0);
    for (k, p) in parts.iter().enumerate() {
        let again = decompose2(p, base);
        let pieces = [base.omega * again.lambda, base.contract_re(&again.x), again.eta0];
        for (l, q) in pieces.iter().enumerate() {
            let expected = if k == l { *p } else { Form::zero(2) };
            r = r.max(rd(q, &expected));
        }
        for q in parts.iter().skip(k + 1) {
            r = r.max(vanishing(m.inner(p, q).expect("2-forms"), scale));
        }
    }
    r
}

fn projector_residual_3(sigma: &Form, base: &SU3Structure) -> f64 {
    let m = &base.metric;
    let split = |s: &Form| {
        let t = decompose3(s, base);
        [
            m.flat(&t.x) ^ base.omega,
            base.re_omega * t.lambda + base.im_omega * t.mu,
            t.rho0,
        ]
    };
    let parts = split(sigma);
    let mut r = rd(&(parts[0] + parts[1] + parts[2]), sigma);
    let scale = m.norm2_form(sigma).max(1.0);
    for (k, p) in parts.iter().enumerate() {
        for (l, q) in split(p).iter().enumerate() {
            let expected = if k == l { *p } else { Form::zero(3) };
            r = r.max(rd(q, &expected));
        }
        for q in parts.iter().skip(k + 1) {
            r = r.max(vanishing(m.inner(p, q).expect("3-forms"), scale));
        }
    }
    r
}

/// Numerical ranks of the three projectors on Λ² (expected 1, 6, 8).
pub fn projector_ranks_2(base: &SU3Structure, tol: &Tolerances) -> [usize; 3] {
    let images: Vec<[Form; 3]> = (0..basis_len(2))
        .map(|i| {
            let e = Form::from_mask(crate::exterior::basis_masks(2)[i], 1.0);
            let t = decompose2(&e, base);
            [base.omega * t.lambda, base.contract_re(&t.x), t.eta0]
        })
        .collect();
    std::array::from_fn(|k| numerical_rank(images.iter().map(|p| p[k]), tol))
}

/// Numerical ranks of the three projectors on Λ³ (expected 6, 2, 12).
pub fn projector_ranks_3(base: &SU3Structure, tol: &Tolerances) -> [usize; 3] {
    let m = &base.metric;
    let images: Vec<[Form; 3]> = (0..basis_len(3))
        .map(|i| {
            let e = Form::from_mask(crate::exterior::basis_masks(3)[i], 1.0);
            let t = decompose3(&e, base);
            [
                m.flat(&t.x) ^ base.omega,
                base.re_omega * t.lambda + base.im_omega * t.mu,
                t.rho0,
            ]
        })
        .collect();
    std::array::from_fn(|k| numerical_rank(images.iter().map(|p| p[k]), tol))
}

/// Rank of the span of `forms`, with singular values below
/// `tol.rank × largest` treated as zero.
pub fn numerical_rank(forms: impl Iterator<Item = Form>, tol: &Tolerances) -> usize {
    let columns: Vec<Form> = forms.collect();
    if columns.is_empty() {
        return 0;
    }
    let rows = columns[0].len();
    let mat = nalgebra::DMatrix::from_fn(rows, columns.len(), |r, c| columns[c].coeffs()[r]);
    rank_of(&mat, tol.rank)
}

pub fn rank_of(mat: &nalgebra::DMatrix<f64>, rel: f64) -> usize {
    if mat.nrows() == 0 || mat.ncols() == 0 {
        return 0;
    }
    let sv = mat.singular_values();
    let largest = sv.max();
    if largest == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel * largest).count()
}

/// Convenience for callers holding only the forms.
pub fn torsion_of(
    omega: &Form,
    re_omega: &Form,
    derivatives: [&Form; 3],
    tol: &Tolerances,
) -> Result<TorsionClasses> {
    let base = stable::assemble_su3(omega, re_omega, tol)?;
    Ok(torsion_classes(
        derivatives[0],
        derivatives[1],
        derivatives[2],
        &base,
    ))
}
