//! Left-invariant forms on SU(3) and the Chevalley–Eilenberg differential.
//!
//! Forms on su₃ are stored densely over all 256 subsets of the coframe
//! `e¹..e⁸`; bits 0..5 span `m*` and bits 6, 7 span `t*`.

use std::ops::{Add, AddAssign, Mul, Sub};
use std::sync::LazyLock;

use crate::exterior::{ComplexForm, Form};
use crate::flag::lie::coset_frame;

pub const VERTICAL: u16 = 0b1100_0000;

#[derive(Clone, PartialEq)]
pub struct Form8 {
    c: Box<[f64; 256]>,
}

impl std::fmt::Debug for Form8 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = (0..256)
            .filter(|&m| self.c[m] != 0.0)
            .map(|m| format!("{:+.3e}·{m:08b}", self.c[m]))
            .collect();
        write!(f, "Form8[{}]", terms.join(" "))
    }
}

/// Sign of `e^a ∧ e^b` relative to `e^{a∪b}`; zero if they overlap.
fn merge_sign(a: u16, b: u16) -> f64 {
    if a & b != 0 {
        return 0.0;
    }
    let mut swaps = 0;
    let mut rest = a;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        swaps += (b & ((1u16 << bit) - 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl Form8 {
    pub fn zero() -> Self {
        Self {
            c: Box::new([0.0; 256]),
        }
    }

    pub fn basis(mask: u16) -> Self {
        let mut f = Self::zero();
        f.c[mask as usize] = 1.0;
        f
    }

    pub fn embed(form: &Form) -> Self {
        let mut f = Self::zero();
        for (m, c) in form.terms() {
            f.c[m as usize] = c;
        }
        f
    }

    pub fn coeff(&self, mask: u16) -> f64 {
        self.c[mask as usize]
    }

    pub fn add_to(&mut self, mask: u16, v: f64) {
        self.c[mask as usize] += v;
    }

    pub fn terms(&self) -> impl Iterator<Item = (u16, f64)> + '_ {
        (0..256u16).filter_map(|m| {
            let c = self.c[m as usize];
            (c != 0.0).then_some((m, c))
        })
    }

    pub fn wedge(&self, other: &Form8) -> Form8 {
        let mut out = Form8::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                let s = merge_sign(a, b);
                if s != 0.0 {
                    out.c[(a | b) as usize] += s * x * y;
                }
            }
        }
        out
    }

    /// The Chevalley–Eilenberg differential of a left-invariant form.
    pub fn d(&self) -> Form8 {
        let table = &*D_BASIS;
        let mut out = Form8::zero();
        for (m, x) in self.terms() {
            for (n, y) in table[m as usize].terms() {
                out.c[n as usize] += x * y;
            }
        }
        out
    }

    /// Split into the degree-`k` component along `m*` and the largest vertical
    /// coefficient.
    pub fn horizontal(&self, degree: usize) -> (Form, f64) {
        let mut f = Form::zero(degree);
        let mut vertical = 0.0_f64;
        for (m, c) in self.terms() {
            if m & VERTICAL != 0 {
                vertical = vertical.max(c.abs());
            } else if m.count_ones() as usize == degree {
                f.add_to(m as u8, c);
            } else {
                vertical = vertical.max(c.abs());
            }
        }
        (f, vertical)
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl Add for &Form8 {
    type Output = Form8;
    fn add(self, rhs: &Form8) -> Form8 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Form8> for Form8 {
    fn add_assign(&mut self, rhs: &Form8) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a += b;
        }
    }
}

impl Sub for &Form8 {
    type Output = Form8;
    fn sub(self, rhs: &Form8) -> Form8 {
        let mut out = self.clone();
        for (a, b) in out.c.iter_mut().zip(rhs.c.iter()) {
            *a -= b;
        }
        out
    }
}

impl Mul<f64> for &Form8 {
    type Output = Form8;
    fn mul(self, s: f64) -> Form8 {
        let mut out = self.clone();
        for a in out.c.iter_mut() {
            *a *= s;
        }
        out
    }
}

/// `d(e^I)` for every subset `I`, from `deᵏ = −Σ_{i<j} cᵏᵢⱼ eⁱ∧eʲ` and the
/// Leibniz rule.
static D_BASIS: LazyLock<Vec<Form8>> = LazyLock::new(|| {
    let frame = coset_frame();
    let mut de = Vec::with_capacity(8);
    for k in 0..8 {
        let mut f = Form8::zero();
        for i in 0..8 {
            for j in (i + 1)..8 {
                f.add_to((1 << i) | (1 << j), -frame.c[k][i][j]);
            }
        }
        de.push(f);
    }
    let mut table: Vec<Form8> = Vec::with_capacity(256);
    table.push(Form8::zero());
    for mask in 1u16..256 {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        // d(eˡ∧rest) = deˡ∧rest − eˡ∧d(rest)
        let first = de[low].wedge(&Form8::basis(rest));
        let second = Form8::basis(1 << low).wedge(&table[rest as usize]);
        table.push(&first - &second);
    }
    table
});

/// `dφ` of a constant form on `m`, together with its vertical residual.
pub fn ce_d(form: &Form) -> (Form, f64) {
    Form8::embed(form).d().horizontal(form.degree() + 1)
}

/// `θ₁ = e² − ie¹`, `θ₂ = e⁴ + ie³`, `θ₃ = e⁶ − ie⁵` (1-based).
pub fn theta(i: usize) -> ComplexForm {
    let (re, im) = match i {
        1 => (Form::e(&[2]), -Form::e(&[1])),
        2 => (Form::e(&[4]), Form::e(&[3])),
        3 => (Form::e(&[6]), -Form::e(&[5])),
        _ => panic!("θ index {i} out of range 1..=3"),
    };
    ComplexForm::new(re, im).expect("1-forms")
}

/// Infinitesimal action of `Xₖ ∈ t` on `m*` as a derivation of `Λ(m*)`.
pub fn t_action(k: usize, form: &Form) -> Form {
    let frame = coset_frame();
    // (ad*_{X} α)(Y) = −α([X, Y]); on eⁱ: −Σⱼ cⁱₖⱼ eʲ
    let mut out = Form::zero(form.degree());
    for (mask, c) in form.terms() {
        for i in 0..6 {
            if mask & (1 << i) == 0 {
                continue;
            }
            for j in 0..6 {
                let coeff = -frame.c[i][k][j];
                if coeff == 0.0 {
                    continue;
                }
                let rest = mask & !(1 << i);
                if rest & (1 << j) != 0 {
                    continue;
                }
                // replace eⁱ by eʲ in place
                let before_i = (mask & ((1 << i) - 1)).count_ones();
                let new = rest | (1 << j);
                let before_j = (rest & ((1 << j) - 1)).count_ones();
                let sign = if (before_i + before_j) % 2 == 0 { 1.0 } else { -1.0 };
                out.add_to(new, sign * coeff * c);
            }
        }
    }
    out
}
