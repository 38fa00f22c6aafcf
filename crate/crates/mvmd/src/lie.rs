//! Lie algebra and Lie group structure on non-square matrices.
//!
//! An m x n matrix acts on R^m through its restricted square form
//! `A * bridge(n, m)`; this turns the dimension-keeping product into an
//! associative (non-unital) product on a fixed shape. Adjoining a formal
//! identity `a I_{m x n}` yields a unital ring in which invertibility,
//! exp/log, and a generalized Cayley-Hamilton theorem all make sense for
//! non-square matrices. The cross-shape group product glues these rings
//! along the shape lattice.

use crate::error::{Error, Result};
use crate::lattice::{lcm, Shape};
use crate::mat::{bridge, e_mat, kron, Mat};
use crate::maps::{box_map, char_poly_of, Poly};
use crate::stp::{dk_stp, mat_hat, pseudo_stp, Sign};
use nalgebra::DMatrix;

/// Element a*I_{m x n} + A0 of the extended ring over shape (m, n). For
/// square shapes this is just the ordinary matrix a*I + A0.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtMat {
    pub scalar: f64,
    pub body: Mat,
}

impl ExtMat {
    pub fn new(scalar: f64, body: Mat) -> Self {
        ExtMat { scalar, body }
    }

    /// The multiplicative identity of shape (m, n).
    pub fn one(m: usize, n: usize) -> Self {
        ExtMat {
            scalar: 1.0,
            body: Mat::zeros(m, n),
        }
    }

    pub fn shape(&self) -> Shape {
        self.body.shape()
    }

    pub fn transpose(&self) -> ExtMat {
        ExtMat {
            scalar: self.scalar,
            body: self.body.transpose(),
        }
    }

    /// Realize as an ordinary matrix; square shapes only.
    pub fn to_mat(&self) -> Result<Mat> {
        if !self.body.is_square() {
            return Err(Error::NotSquare {
                rows: self.body.rows(),
                cols: self.body.cols(),
            });
        }
        Mat::identity(self.body.rows())
            .scale(self.scalar)
            .add(&self.body)
    }

    pub fn approx_eq(&self, other: &ExtMat, tol: f64) -> bool {
        (self.scalar - other.scalar).abs() <= tol && self.body.approx_eq(&other.body, tol)
    }
}

/// Restricted square form: A * bridge(n, m), the m x m matrix realizing the
/// dimension-keeping action of A on R^m.
pub fn restricted_form(a: &Mat, weighted: bool) -> Result<Mat> {
    if a.is_square() {
        return Ok(a.clone());
    }
    a.matmul(&bridge(a.cols(), a.rows(), weighted)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketKind {
    /// A dk B - B dk A; equal shapes, stays in the shape.
    Dk,
    /// A pstp B -hat B pstp A; any shapes, lands at the join.
    Pseudo,
}

pub fn bracket(a: &Mat, b: &Mat, kind: BracketKind, weighted: bool) -> Result<Mat> {
    match kind {
        BracketKind::Dk => {
            if a.shape() != b.shape() {
                return Err(Error::ShapeMismatch {
                    left: a.shape().to_string(),
                    right: b.shape().to_string(),
                    ctx: "dk bracket",
                });
            }
            dk_stp(a, b, weighted)?.sub(&dk_stp(b, a, weighted)?)
        }
        BracketKind::Pseudo => {
            mat_hat(&pseudo_stp(a, b)?, &pseudo_stp(b, a)?, Sign::Minus)
        }
    }
}

/// Characteristic polynomial of the restricted form (degree = rows of A).
pub fn char_poly(a: &Mat, weighted: bool) -> Result<Poly> {
    char_poly_of(&restricted_form(a, weighted)?)
}

/// k-fold dimension-keeping power, k >= 1 (k = 0 is `ExtMat::one`).
pub fn dk_power(a: &Mat, k: usize, weighted: bool) -> Result<Mat> {
    if k == 0 {
        return Err(Error::invalid(
            "dk_power needs k >= 1; the zeroth power is the formal identity",
        ));
    }
    let mut acc = a.clone();
    for _ in 1..k {
        acc = dk_stp(&acc, a, weighted)?;
    }
    Ok(acc)
}

fn check_same_shape(x: &ExtMat, y: &ExtMat, ctx: &'static str) -> Result<()> {
    if x.shape() != y.shape() {
        return Err(Error::ShapeMismatch {
            left: x.shape().to_string(),
            right: y.shape().to_string(),
            ctx,
        });
    }
    Ok(())
}

pub fn ext_add(x: &ExtMat, y: &ExtMat) -> Result<ExtMat> {
    check_same_shape(x, y, "extended-ring addition")?;
    Ok(ExtMat {
        scalar: x.scalar + y.scalar,
        body: x.body.add(&y.body)?,
    })
}

/// (aI + A0)(bI + B0) = ab I + a B0 + b A0 + A0 dk B0.
pub fn ext_mul(x: &ExtMat, y: &ExtMat, weighted: bool) -> Result<ExtMat> {
    check_same_shape(x, y, "extended-ring product")?;
    let body = y
        .body
        .scale(x.scalar)
        .add(&x.body.scale(y.scalar))?
        .add(&dk_stp(&x.body, &y.body, weighted)?)?;
    Ok(ExtMat {
        scalar: x.scalar * y.scalar,
        body,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvertMethod {
    /// Polynomial coefficients from the characteristic function of the
    /// restricted form, via the back-substitution recursion.
    ClosedForm,
    /// Solve (I + Pi_A0) B0 = -A0 directly.
    LinearSolve,
}

/// Invertibility criterion: c_m - c_{m-1} + ... + (-1)^{m-1} c_1 - 1 where
/// c_j is the coefficient of x^{j-1} in the characteristic polynomial of the
/// restricted form. Equals -det(I + Pi_A0); zero means not invertible.
pub fn invert_criterion(a0: &Mat, weighted: bool) -> Result<f64> {
    let a = if a0.rows() > a0.cols() {
        a0.transpose()
    } else {
        a0.clone()
    };
    let p = char_poly(&a, weighted)?;
    let m = p.degree();
    let mut d = -1.0;
    for j in 1..=m {
        let sign = if (m - j) % 2 == 0 { 1.0 } else { -1.0 };
        d += sign * p.coeff(j - 1);
    }
    Ok(d)
}

/// Solve the closed-form coefficient recursion for the inverse body of
/// I + A0: coefficients x_1..x_m with B0 = sum x_i A0^<i>.
fn closed_form_coeffs(p: &Poly) -> Result<Vec<f64>> {
    let m = p.degree();
    let c = |j: usize| p.coeff(j - 1); // c_j = coeff of x^{j-1}
    if m == 1 {
        let d = c(1) - 1.0;
        if d.abs() <= 1e-10 {
            return Err(Error::NotInvertible { criterion: d });
        }
        return Ok(vec![1.0 / d]);
    }
    // x_j = P_j x_m + Q_j, accumulated bottom-up from the constant equation
    let mut pq = Vec::with_capacity(m - 1);
    let (mut pj, mut qj) = (c(1), -1.0);
    pq.push((pj, qj));
    for j in 2..m {
        pj = c(j) - pj;
        qj = -qj;
        pq.push((pj, qj));
    }
    let d = c(m) - 1.0 - pj;
    if d.abs() <= 1e-10 {
        return Err(Error::NotInvertible { criterion: d });
    }
    let xm = qj / d;
    let mut xs: Vec<f64> = pq.iter().map(|&(p_, q_)| p_ * xm + q_).collect();
    xs.push(xm);
    Ok(xs)
}

fn invert_unit_body(a0: &Mat, method: InvertMethod, weighted: bool) -> Result<Mat> {
    // fewer rows than columns keeps the polynomial degree minimal; transpose
    // otherwise and transpose back (the bridge transposes symmetrically)
    if a0.rows() > a0.cols() {
        return Ok(invert_unit_body(&a0.transpose(), method, weighted)?.transpose());
    }
    let m = a0.rows();
    match method {
        InvertMethod::ClosedForm => {
            let p = char_poly(a0, weighted)?;
            let xs = closed_form_coeffs(&p)?;
            let mut b0 = Mat::zeros(a0.rows(), a0.cols());
            let mut pow = a0.clone();
            for (i, &xi) in xs.iter().enumerate() {
                if i > 0 {
                    pow = dk_stp(&pow, a0, weighted)?;
                }
                b0 = b0.add(&pow.scale(xi))?;
            }
            Ok(b0)
        }
        InvertMethod::LinearSolve => {
            let lhs = Mat::identity(m).add(&restricted_form(a0, weighted)?)?;
            let dm = DMatrix::from_row_slice(m, m, lhs.data());
            let rhs = DMatrix::from_row_slice(m, a0.cols(), a0.data()).scale(-1.0);
            let lu = dm.lu();
            match lu.solve(&rhs) {
                Some(sol) => {
                    let mut data = Vec::with_capacity(m * a0.cols());
                    for i in 0..m {
                        for j in 0..a0.cols() {
                            data.push(sol[(i, j)]);
                        }
                    }
                    let b0 = Mat::new(a0.rows(), a0.cols(), data)?;
                    // guard against a numerically singular solve slipping through
                    let res = a0.add(&b0)?.add(&dk_stp(a0, &b0, weighted)?)?;
                    if res.norm_inf() > 1e-6 * (1.0 + a0.norm_inf()) {
                        return Err(Error::NotInvertible {
                            criterion: invert_criterion(a0, weighted)?,
                        });
                    }
                    Ok(b0)
                }
                None => Err(Error::NotInvertible {
                    criterion: invert_criterion(a0, weighted)?,
                }),
            }
        }
    }
}

/// Invert aI + A0 (a != 0): returns Y with X*Y = Y*X = I exactly in the ring
/// sense, i.e. bodies satisfying A0 + B0 + A0 dk B0 = 0 after normalizing
/// the scalar to 1.
pub fn ext_invert(x: &ExtMat, method: InvertMethod, weighted: bool) -> Result<ExtMat> {
    if x.scalar == 0.0 {
        return Err(Error::invalid("cannot invert: zero scalar part"));
    }
    let unit_body = x.body.scale(1.0 / x.scalar);
    let b0 = invert_unit_body(&unit_body, method, weighted)?;
    Ok(ExtMat {
        scalar: 1.0 / x.scalar,
        body: b0.scale(1.0 / x.scalar),
    })
}

/// exp<B> = I + sum_{k>=1} B^<k> / k!, truncated when the term norm drops
/// below `tol`.
pub fn ext_exp(b: &Mat, weighted: bool, max_terms: usize, tol: f64) -> Result<ExtMat> {
    let mut sum = Mat::zeros(b.rows(), b.cols());
    let mut term = b.clone();
    let mut k = 1usize;
    loop {
        sum = sum.add(&term.scale(1.0 / factorial(k)))?;
        if term.norm_inf() / factorial(k) < tol {
            break;
        }
        if k >= max_terms {
            return Err(Error::NonConvergent {
                terms: k,
                last_norm: term.norm_inf() / factorial(k),
            });
        }
        term = dk_stp(&term, b, weighted)?;
        k += 1;
    }
    Ok(ExtMat {
        scalar: 1.0,
        body: sum,
    })
}

/// log<I + B0> = sum_{i>=1} (-1)^{i-1} B0^<i> / i, for scalar-1 elements
/// with the restricted form of the body inside the unit ball.
pub fn ext_log(x: &ExtMat, weighted: bool, max_terms: usize, tol: f64) -> Result<Mat> {
    if (x.scalar - 1.0).abs() > 1e-12 {
        return Err(Error::invalid(
            "log requires scalar part exactly 1 (normalize first)",
        ));
    }
    let b = &x.body;
    let mut sum = Mat::zeros(b.rows(), b.cols());
    let mut pow = b.clone();
    let mut i = 1usize;
    loop {
        let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
        sum = sum.add(&pow.scale(sign / i as f64))?;
        if pow.norm_inf() / (i as f64) < tol {
            break;
        }
        if i >= max_terms {
            return Err(Error::NonConvergent {
                terms: i,
                last_norm: pow.norm_inf() / (i as f64),
            });
        }
        pow = dk_stp(&pow, b, weighted)?;
        i += 1;
    }
    Ok(sum)
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, v| acc * v as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ideal {
    /// Trace of the restricted form vanishes.
    Q,
    /// Restricted form is a scalar multiple of the identity.
    Z,
}

pub fn ideal_member(a: &Mat, which: Ideal, weighted: bool, tol: f64) -> Result<bool> {
    let pi = restricted_form(a, weighted)?;
    match which {
        Ideal::Q => Ok(pi.trace()?.abs() <= tol),
        Ideal::Z => {
            let r = pi.trace()? / pi.rows() as f64;
            Ok(pi.sub(&Mat::identity(pi.rows()).scale(r))?.norm_inf() <= tol)
        }
    }
}

/// Basis of {A m x n : A bridge(n,m) = r I_m for some r}, an
/// ((n-m)m + 1)-dimensional space for m <= n; computed as the null space of
/// the linear constraint in the mn+1 unknowns (entries of A, r).
pub fn z_basis(m: usize, n: usize, weighted: bool) -> Result<Vec<Mat>> {
    if m > n {
        return Err(Error::invalid("z_basis expects m <= n (transpose first)"));
    }
    let psi = bridge(n, m, weighted)?;
    let cols = m * n + 1;
    // padded square so the SVD's V spans the full column space (a thin SVD
    // of the wide constraint block would omit the null-space vectors)
    let mut k = DMatrix::<f64>::zeros(cols, cols);
    for i in 0..m {
        for kk in 0..m {
            let row = i * m + kk;
            for j in 0..n {
                k[(row, i * n + j)] = psi.at(j, kk);
            }
            if i == kk {
                k[(row, m * n)] = -1.0;
            }
        }
    }
    let svd = k.svd(false, true);
    let v_t = svd.v_t.as_ref().ok_or(Error::EigenFailure)?;
    let smax = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let cutoff = 1e-10 * smax.max(1.0);
    let mut basis = Vec::new();
    for r in 0..cols {
        let sv = if r < svd.singular_values.len() {
            svd.singular_values[r]
        } else {
            0.0
        };
        if sv <= cutoff {
            let row = v_t.row(r);
            let data: Vec<f64> = (0..m * n).map(|idx| row[idx]).collect();
            basis.push(Mat::new(m, n, data)?);
        }
    }
    Ok(basis)
}

/// Membership in the matrix set preserving the pairing induced by M:
/// A pstp M +hat M pstp A^T = 0. Checked both directly and through the
/// squaring map (the two are equivalent); both must pass.
pub fn gm_member(a: &Mat, m: &Mat, tol: f64) -> Result<bool> {
    let am = pseudo_stp(a, m)?;
    let mat = pseudo_stp(m, &a.transpose())?;
    let direct = mat_hat(&am, &mat, Sign::Plus)?.norm_inf();
    let boxed = box_map(&am)?.add(&box_map(&mat)?)?.norm_inf();
    Ok(direct <= tol && boxed <= tol)
}

/// Cross-shape group product: scalars multiply, bodies inflate to the shape
/// join with normalized all-ones weights and combine through the pseudo
/// product. Same-shape inputs agree with `ext_mul` (weighted).
pub fn hyper_gl_mul(x: &ExtMat, y: &ExtMat) -> Result<ExtMat> {
    let (a, b) = (x.scalar, y.scalar);
    let (xs, ys) = (x.shape(), y.shape());
    let s = lcm(xs.rows, ys.rows)?;
    let t = lcm(xs.cols, ys.cols)?;
    let xi = kron(&x.body, &e_mat(s / xs.rows, t / xs.cols))?;
    let yi = kron(&y.body, &e_mat(s / ys.rows, t / ys.cols))?;
    let body = yi
        .scale(a)
        .add(&xi.scale(b))?
        .add(&pseudo_stp(&x.body, &y.body)?)?;
    Ok(ExtMat { scalar: a * b, body })
}
