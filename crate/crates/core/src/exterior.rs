//! Dense exterior algebra of the dual of ℝ⁶.
//!
//! A k-form is stored as its C(6,k) coefficients over the lexicographically
//! ordered basis `e^{i1}∧…∧e^{ik}`, `i1 < … < ik`. Internally a basis element
//! is a 6-bit mask; bit `i` stands for `e^{i+1}`. Forms are evaluated on
//! vectors with the determinant convention, so `(e¹∧e²)(∂₁, ∂₂) = 1`.

use std::fmt;
use std::ops::{Add, AddAssign, BitXor, Mul, Neg, Sub, SubAssign};
use std::sync::LazyLock;

use nalgebra::{Matrix6, SymmetricEigen, Vector6};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub const DIM: usize = 6;
/// Mask of the top-degree basis element `e¹²³⁴⁵⁶`.
pub const TOP: u8 = 0b11_1111;
/// Largest basis size, C(6,3).
pub const MAX_LEN: usize = 20;

pub type Vector = Vector6<f64>;
pub type Matrix = Matrix6<f64>;

struct Tables {
    masks: [Vec<u8>; 7],
    index: [u8; 64],
    wedge_sign: Box<[[i8; 64]; 64]>,
}

fn lex_masks(k: usize) -> Vec<u8> {
    fn rec(start: usize, left: usize, acc: u8, out: &mut Vec<u8>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..DIM {
            rec(i + 1, left - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    rec(0, k, 0, &mut out);
    out
}

/// Sign of `e^A ∧ e^B` relative to `e^{A∪B}` for disjoint masks: the parity
/// of pairs `(i ∈ A, j ∈ B)` with `i > j`.
fn merge_sign(a: u8, b: u8) -> i8 {
    let mut inversions = 0u32;
    for j in 0..DIM {
        if b & (1 << j) != 0 {
            inversions += (a >> (j + 1)).count_ones();
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

static TABLES: LazyLock<Tables> = LazyLock::new(|| {
    let masks: [Vec<u8>; 7] = std::array::from_fn(lex_masks);
    let mut index = [0u8; 64];
    for list in &masks {
        for (i, &m) in list.iter().enumerate() {
            index[m as usize] = i as u8;
        }
    }
    let mut wedge_sign = Box::new([[0i8; 64]; 64]);
    for a in 0..64u8 {
        for b in 0..64u8 {
            if a & b == 0 {
                wedge_sign[a as usize][b as usize] = merge_sign(a, b);
            }
        }
    }
    Tables {
        masks,
        index,
        wedge_sign,
    }
});

/// Basis masks of degree `k` in lexicographic order.
pub fn basis_masks(k: usize) -> &'static [u8] {
    &TABLES.masks[k]
}

pub fn basis_len(k: usize) -> usize {
    TABLES.masks[k].len()
}

fn index_of(mask: u8) -> usize {
    TABLES.index[mask as usize] as usize
}

fn sign_of(a: u8, b: u8) -> f64 {
    TABLES.wedge_sign[a as usize][b as usize] as f64
}

/// Sign picked up when the factor `e^from` sitting inside `e^mask` is replaced
/// by `e^to` and the result re-sorted. `to` must not already be in `mask`.
fn replace_sign(mask: u8, from: usize, to: usize) -> f64 {
    let (lo, hi) = if from < to { (from, to) } else { (to, from) };
    let between = if hi > lo + 1 {
        ((1u8 << hi) - 1) & !((1u8 << (lo + 1)) - 1)
    } else {
        0
    };
    if (mask & between).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// A real exterior form on ℝ⁶.
#[derive(Clone, Copy, PartialEq)]
pub struct Form {
    degree: u8,
    coeffs: [f64; MAX_LEN],
}

impl Form {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= DIM, "form degree {degree} out of range");
        Self {
            degree: degree as u8,
            coeffs: [0.0; MAX_LEN],
        }
    }

    pub fn scalar(c: f64) -> Self {
        let mut f = Self::zero(0);
        f.coeffs[0] = c;
        f
    }

    pub fn new(degree: usize, coeffs: &[f64]) -> Result<Self> {
        if degree > DIM {
            return Err(Error::BadDegree(degree));
        }
        let expected = basis_len(degree);
        if coeffs.len() != expected {
            return Err(Error::BadLength {
                degree,
                got: coeffs.len(),
                expected,
            });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut f = Self::zero(degree);
        f.coeffs[..expected].copy_from_slice(coeffs);
        Ok(f)
    }

    /// The basis monomial `e^{i1}∧…∧e^{ik}` from 1-based indices in any order.
    /// Repeated indices give the zero form.
    pub fn e(indices: &[usize]) -> Self {
        let mut f = Self::zero(indices.len());
        let mut mask = 0u8;
        let mut sign = 1.0;
        for &i in indices {
            assert!((1..=DIM).contains(&i), "basis index {i} out of range");
            let bit = 1u8 << (i - 1);
            if mask & bit != 0 {
                return f;
            }
            sign *= sign_of(mask, bit);
            mask |= bit;
        }
        f.coeffs[index_of(mask)] = sign;
        f
    }

    pub fn from_mask(mask: u8, c: f64) -> Self {
        let mut f = Self::zero(mask.count_ones() as usize);
        f.coeffs[index_of(mask)] = c;
        f
    }

    /// The 1-form with the given components.
    pub fn one_form(v: &Vector) -> Self {
        let mut f = Self::zero(1);
        f.coeffs[..DIM].copy_from_slice(v.as_slice());
        f
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn len(&self) -> usize {
        basis_len(self.degree())
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs[..self.len()]
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        let n = self.len();
        &mut self.coeffs[..n]
    }

    pub fn coeff(&self, mask: u8) -> f64 {
        debug_assert_eq!(mask.count_ones() as usize, self.degree());
        self.coeffs[index_of(mask)]
    }

    pub fn add_to(&mut self, mask: u8, c: f64) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree());
        self.coeffs[index_of(mask)] += c;
    }

    /// `(mask, coefficient)` pairs over the basis of this degree.
    pub fn terms(&self) -> impl Iterator<Item = (u8, f64)> + '_ {
        basis_masks(self.degree())
            .iter()
            .zip(self.coeffs())
            .map(|(&m, &c)| (m, c))
    }

    /// Components of a 1-form.
    pub fn to_vector(&self) -> Vector {
        assert_eq!(self.degree, 1, "to_vector needs a 1-form");
        Vector::from_column_slice(&self.coeffs[..DIM])
    }

    /// Coefficient of `e¹²³⁴⁵⁶` of a 6-form.
    pub fn top(&self) -> f64 {
        assert_eq!(self.degree, 6, "top needs a 6-form");
        self.coeffs[0]
    }

    /// Value of a 0-form.
    pub fn value(&self) -> f64 {
        assert_eq!(self.degree, 0, "value needs a 0-form");
        self.coeffs[0]
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs().iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_finite())
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut f = *self;
        f.coeffs.iter_mut().for_each(|c| *c *= s);
        f
    }

    /// Relative distance `|a-b|_inf / max(|a|_inf, |b|_inf, 1)`.
    pub fn rel_diff(&self, other: &Form) -> f64 {
        assert_eq!(self.degree, other.degree, "rel_diff across degrees");
        crate::tolerance::rel_diff(self.coeffs(), other.coeffs())
    }

    pub fn wedge(&self, other: &Form) -> Result<Form> {
        let (j, k) = (self.degree(), other.degree());
        if j + k > DIM {
            return Err(Error::DegreeOverflow { left: j, right: k });
        }
        let mut out = Form::zero(j + k);
        for (a, ca) in self.terms() {
            if ca == 0.0 {
                continue;
            }
            for (b, cb) in other.terms() {
                if a & b == 0 && cb != 0.0 {
                    out.coeffs[index_of(a | b)] += sign_of(a, b) * ca * cb;
                }
            }
        }
        Ok(out)
    }

    /// Interior product `X ⌟ self`.
    pub fn contract(&self, x: &Vector) -> Result<Form> {
        if self.degree == 0 {
            return Err(Error::ContractZeroForm);
        }
        let mut out = Form::zero(self.degree() - 1);
        for (m, c) in self.terms() {
            if c == 0.0 {
                continue;
            }
            let mut position = 0;
            for i in 0..DIM {
                let bit = 1u8 << i;
                if m & bit != 0 {
                    let sign = if position % 2 == 0 { 1.0 } else { -1.0 };
                    out.coeffs[index_of(m & !bit)] += sign * x[i] * c;
                    position += 1;
                }
            }
        }
        Ok(out)
    }

    /// Evaluate on `degree` vectors.
    pub fn eval(&self, vectors: &[Vector]) -> f64 {
        assert_eq!(vectors.len(), self.degree(), "wrong number of arguments");
        let mut f = *self;
        for v in vectors {
            f = f.contract(v).expect("degree checked above");
        }
        f.value()
    }

    /// The derivation action `S_* φ(X1,…,Xp) = −Σ φ(X1,…,S Xj,…,Xp)`.
    pub fn endo_act(&self, s: &Endo) -> Form {
        let mut out = Form::zero(self.degree());
        for (m, c) in self.terms() {
            if c == 0.0 {
                continue;
            }
            for a in 0..DIM {
                if m & (1 << a) == 0 {
                    continue;
                }
                // S_* e^a = −Σ_b S_{ab} e^b
                for b in 0..DIM {
                    let sab = s.mat[(a, b)];
                    if sab == 0.0 {
                        continue;
                    }
                    if b == a {
                        out.coeffs[index_of(m)] -= sab * c;
                    } else if m & (1 << b) == 0 {
                        let target = (m & !(1 << a)) | (1 << b);
                        out.coeffs[index_of(target)] -= replace_sign(m, a, b) * sab * c;
                    }
                }
            }
        }
        out
    }

    /// Pullback by a linear map: `(A^*φ)(X,…) = φ(AX,…)`.
    pub fn pullback(&self, a: &Matrix) -> Form {
        let k = self.degree();
        let mut out = Form::zero(k);
        for (m, c) in self.terms() {
            if c == 0.0 {
                continue;
            }
            for (j, &n) in basis_masks(k).iter().enumerate() {
                out.coeffs[j] += c * minor_det(a, m, n);
            }
        }
        out
    }

    /// Hodge star with respect to `metric`.
    pub fn star(&self, metric: &Metric) -> Form {
        metric.star(self)
    }

    pub fn inner(&self, other: &Form, metric: &Metric) -> Result<f64> {
        metric.inner(self, other)
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form{}[", self.degree)?;
        let mut first = true;
        for (m, c) in self.terms() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c:.6}·e")?;
            for i in 0..DIM {
                if m & (1 << i) != 0 {
                    write!(f, "{}", i + 1)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "]")
    }
}

impl Add for Form {
    type Output = Form;
    fn add(mut self, rhs: Form) -> Form {
        self += rhs;
        self
    }
}

impl AddAssign for Form {
    fn add_assign(&mut self, rhs: Form) {
        assert_eq!(self.degree, rhs.degree, "adding forms of different degree");
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(mut self, rhs: Form) -> Form {
        self -= rhs;
        self
    }
}

impl SubAssign for Form {
    fn sub_assign(&mut self, rhs: Form) {
        assert_eq!(self.degree, rhs.degree, "subtracting forms of different degree");
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.scaled(-1.0)
    }
}

impl Mul<f64> for Form {
    type Output = Form;
    fn mul(self, s: f64) -> Form {
        self.scaled(s)
    }
}

impl Mul<Form> for f64 {
    type Output = Form;
    fn mul(self, f: Form) -> Form {
        f.scaled(self)
    }
}

/// `a ^ b` is the wedge product; panics when the degrees add up past 6.
impl BitXor for Form {
    type Output = Form;
    fn bitxor(self, rhs: Form) -> Form {
        self.wedge(&rhs).expect("wedge degree exceeds 6")
    }
}

pub fn wedge(a: &Form, b: &Form) -> Result<Form> {
    a.wedge(b)
}

pub fn contract(x: &Vector, a: &Form) -> Result<Form> {
    a.contract(x)
}

pub fn star(a: &Form, metric: &Metric) -> Form {
    metric.star(a)
}

pub fn endo_act(s: &Endo, a: &Form) -> Form {
    a.endo_act(s)
}

pub fn inner(a: &Form, b: &Form, metric: &Metric) -> Result<f64> {
    metric.inner(a, b)
}

/// Determinant of the submatrix of `a` with the given row and column masks.
fn minor_det(a: &Matrix, rows: u8, cols: u8) -> f64 {
    let r: Vec<usize> = (0..DIM).filter(|i| rows & (1 << i) != 0).collect();
    let c: Vec<usize> = (0..DIM).filter(|i| cols & (1 << i) != 0).collect();
    let k = r.len();
    if k == 0 {
        return 1.0;
    }
    let mut m = [[0.0f64; DIM]; DIM];
    for (i, &ri) in r.iter().enumerate() {
        for (j, &cj) in c.iter().enumerate() {
            m[i][j] = a[(ri, cj)];
        }
    }
    let mut det = 1.0;
    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))
            .unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        let pivot_row = m[col];
        for row in m.iter_mut().take(k).skip(col + 1) {
            let factor = row[col] / pivot_row[col];
            for (x, p) in row[col..k].iter_mut().zip(&pivot_row[col..k]) {
                *x -= factor * p;
            }
        }
    }
    det
}

/// A linear endomorphism of ℝ⁶ acting on vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Endo {
    pub mat: Matrix,
}

impl Endo {
    pub fn new(mat: Matrix) -> Self {
        Self { mat }
    }

    pub fn identity() -> Self {
        Self {
            mat: Matrix::identity(),
        }
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.mat * v
    }

    pub fn compose(&self, other: &Endo) -> Endo {
        Endo::new(self.mat * other.mat)
    }

    /// Dual action on 1-forms, `α ↦ α∘S`.
    pub fn transpose_act(&self, alpha: &Form) -> Form {
        Form::one_form(&(self.mat.transpose() * alpha.to_vector()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }

    pub fn of(x: f64) -> Self {
        if x >= 0.0 {
            Orientation::Positive
        } else {
            Orientation::Negative
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

/// A positive-definite inner product on vectors together with an orientation.
///
/// Forms are paired with the inverse Gram matrix; the induced inner product
/// on k-forms is tabulated once at construction.
#[derive(Clone, PartialEq)]
pub struct Metric {
    gram: Matrix,
    inverse: Matrix,
    orientation: Orientation,
    sqrt_det: f64,
    form_gram: [Vec<f64>; 7],
}

impl fmt::Debug for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Metric")
            .field("gram", &self.gram)
            .field("orientation", &self.orientation)
            .finish()
    }
}

impl Metric {
    pub fn new(gram: Matrix, orientation: Orientation) -> Result<Self> {
        if gram.iter().any(|x| !x.is_finite()) {
            return Err(Error::DegenerateMetric("non-finite entry".into()));
        }
        let scale = gram.amax().max(f64::MIN_POSITIVE);
        let asym = (gram - gram.transpose()).amax();
        if asym > 1e-12 * scale {
            return Err(Error::DegenerateMetric(format!("asymmetry {asym:.3e}")));
        }
        let sym = (gram + gram.transpose()) * 0.5;
        let eig = SymmetricEigen::new(sym);
        let min = eig.eigenvalues.min();
        if min <= 1e-12 * scale {
            return Err(Error::DegenerateMetric(format!("smallest eigenvalue {min:.3e}")));
        }
        let inverse = sym
            .try_inverse()
            .ok_or_else(|| Error::DegenerateMetric("singular".into()))?;
        let inverse = (inverse + inverse.transpose()) * 0.5;
        let form_gram = std::array::from_fn(|k| {
            let masks = basis_masks(k);
            let n = masks.len();
            let mut g = vec![0.0; n * n];
            for (i, &a) in masks.iter().enumerate() {
                for (j, &b) in masks.iter().enumerate() {
                    g[i * n + j] = minor_det(&inverse, a, b);
                }
            }
            g
        });
        Ok(Self {
            gram: sym,
            inverse,
            orientation,
            sqrt_det: sym.determinant().sqrt(),
            form_gram,
        })
    }

    pub fn identity(orientation: Orientation) -> Self {
        Self::new(Matrix::identity(), orientation).expect("identity is a metric")
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Riemannian volume form.
    pub fn volume(&self) -> Form {
        Form::from_mask(TOP, self.orientation.sign() * self.sqrt_det)
    }

    pub fn flat(&self, v: &Vector) -> Form {
        Form::one_form(&(self.gram * v))
    }

    pub fn sharp(&self, alpha: &Form) -> Vector {
        self.inverse * alpha.to_vector()
    }

    pub fn dot(&self, x: &Vector, y: &Vector) -> f64 {
        (x.transpose() * self.gram * y)[(0, 0)]
    }

    pub fn norm2(&self, x: &Vector) -> f64 {
        self.dot(x, x)
    }

    fn gram_apply(&self, b: &Form) -> [f64; MAX_LEN] {
        let k = b.degree();
        let n = basis_len(k);
        let g = &self.form_gram[k];
        let mut out = [0.0; MAX_LEN];
        for (i, o) in out.iter_mut().enumerate().take(n) {
            *o = (0..n).map(|j| g[i * n + j] * b.coeffs[j]).sum();
        }
        out
    }

    pub fn inner(&self, a: &Form, b: &Form) -> Result<f64> {
        if a.degree != b.degree {
            return Err(Error::DegreeMismatch {
                left: a.degree(),
                right: b.degree(),
            });
        }
        let gb = self.gram_apply(b);
        Ok(a.coeffs().iter().zip(gb.iter()).map(|(x, y)| x * y).sum())
    }

    pub fn norm2_form(&self, a: &Form) -> f64 {
        self.inner(a, a).expect("same degree")
    }

    /// Characterised by `a ∧ ⋆b = ⟨a, b⟩ vol` for every `a`.
    pub fn star(&self, b: &Form) -> Form {
        let k = b.degree();
        let gb = self.gram_apply(b);
        let factor = self.orientation.sign() * self.sqrt_det;
        let mut out = Form::zero(DIM - k);
        for (i, &m) in basis_masks(k).iter().enumerate() {
            let comp = TOP & !m;
            out.coeffs[index_of(comp)] = sign_of(m, comp) * factor * gb[i];
        }
        out
    }
}

/// A complex form `re + i·im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexForm {
    pub re: Form,
    pub im: Form,
}

impl ComplexForm {
    pub fn new(re: Form, im: Form) -> Result<Self> {
        if re.degree != im.degree {
            return Err(Error::DegreeMismatch {
                left: re.degree(),
                right: im.degree(),
            });
        }
        Ok(Self { re, im })
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            re: Form::zero(degree),
            im: Form::zero(degree),
        }
    }

    pub fn real(re: Form) -> Self {
        Self {
            im: Form::zero(re.degree()),
            re,
        }
    }

    pub fn degree(&self) -> usize {
        self.re.degree()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            re: self.re * c.re - self.im * c.im,
            im: self.re * c.im + self.im * c.re,
        }
    }

    pub fn wedge(&self, other: &ComplexForm) -> Result<ComplexForm> {
        let rr = self.re.wedge(&other.re)?;
        let ii = self.im.wedge(&other.im)?;
        let ri = self.re.wedge(&other.im)?;
        let ir = self.im.wedge(&other.re)?;
        Ok(Self {
            re: rr - ii,
            im: ri + ir,
        })
    }
}

impl Add for ComplexForm {
    type Output = ComplexForm;
    fn add(self, rhs: ComplexForm) -> ComplexForm {
        ComplexForm {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for ComplexForm {
    type Output = ComplexForm;
    fn sub(self, rhs: ComplexForm) -> ComplexForm {
        ComplexForm {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl BitXor for ComplexForm {
    type Output = ComplexForm;
    fn bitxor(self, rhs: ComplexForm) -> ComplexForm {
        self.wedge(&rhs).expect("wedge degree exceeds 6")
    }
}

impl Mul<ComplexForm> for Complex64 {
    type Output = ComplexForm;
    fn mul(self, f: ComplexForm) -> ComplexForm {
        f.scale(self)
    }
}

/// The standard parallel structure on ℂ³ with real coordinates ordered
/// `x₁, y₁, x₂, y₂, x₃, y₃`.
pub mod standard {
    use super::*;

    /// `dz_j = dx_j + i dy_j`.
    pub fn dz(j: usize) -> ComplexForm {
        assert!((1..=3).contains(&j));
        ComplexForm {
            re: Form::e(&[2 * j - 1]),
            im: Form::e(&[2 * j]),
        }
    }

    pub fn omega() -> Form {
        Form::e(&[1, 2]) + Form::e(&[3, 4]) + Form::e(&[5, 6])
    }

    pub fn big_omega() -> ComplexForm {
        dz(1) ^ dz(2) ^ dz(3)
    }

    pub fn re_omega() -> Form {
        big_omega().re
    }

    pub fn im_omega() -> Form {
        big_omega().im
    }

    /// `J ∂x_j = ∂y_j`.
    pub fn j() -> Endo {
        let mut m = Matrix::zeros();
        for k in 0..3 {
            m[(2 * k + 1, 2 * k)] = 1.0;
            m[(2 * k, 2 * k + 1)] = -1.0;
        }
        Endo::new(m)
    }
}
