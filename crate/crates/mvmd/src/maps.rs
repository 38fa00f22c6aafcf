//! Structural maps on matrices of arbitrary shape: the squaring map that
//! embeds an m x n matrix into square lcm(m,n) form, symmetrizing/alternating
//! parts, and the spectral theory (characteristic polynomial, eigenpairs,
//! trace) this induces for non-square matrices.

use crate::error::{Error, Result};
use crate::lattice::lcm;
use crate::mat::{e_mat, kron, Mat};
use crate::stp::{mat_hat, Sign};
use nalgebra::{Complex, DMatrix};

pub type C64 = Complex<f64>;

/// Real polynomial, coefficients ascending (c0 + c1 x + ... + cd x^d).
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty());
        Poly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        (self.coeffs.last().unwrap() - 1.0).abs() < 1e-12
    }

    /// Coefficient of x^k (0 for k beyond the degree).
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Evaluate at a square matrix (Horner).
    pub fn eval_mat(&self, a: &Mat) -> Result<Mat> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        let mut acc = Mat::identity(n).scale(*self.coeffs.last().unwrap());
        for &c in self.coeffs.iter().rev().skip(1) {
            acc = acc.matmul(a)?.add(&Mat::identity(n).scale(c))?;
        }
        Ok(acc)
    }
}

/// Characteristic polynomial of a square matrix by the Faddeev-LeVerrier
/// recursion; exact rational arithmetic is not needed at the sizes in scope.
pub fn char_poly_of(a: &Mat) -> Result<Poly> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut m = Mat::identity(n);
    for k in 1..=n {
        let nk = a.matmul(&m)?;
        let c = -nk.trace()? / k as f64;
        coeffs[n - k] = c;
        m = nk.add(&Mat::identity(n).scale(c))?;
    }
    Ok(Poly::new(coeffs))
}

/// Squaring map: A (x) E_{t/m x t/n} with t = lcm(m,n). Square inputs are
/// returned unchanged.
pub fn box_map(a: &Mat) -> Result<Mat> {
    let t = lcm(a.rows(), a.cols())?;
    if t == a.rows() && t == a.cols() {
        return Ok(a.clone());
    }
    kron(a, &e_mat(t / a.rows(), t / a.cols()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymMode {
    Symmetrize,
    Alternate,
}

/// Symmetrizing/alternating part: (A +/-hat A^T)/2, a t x t matrix. The two
/// parts sum to the squaring map of A.
pub fn sym_alt(a: &Mat, mode: SymMode) -> Result<Mat> {
    let at = a.transpose();
    let s = match mode {
        SymMode::Symmetrize => mat_hat(a, &at, Sign::Plus)?,
        SymMode::Alternate => mat_hat(a, &at, Sign::Minus)?,
    };
    Ok(s.scale(0.5))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymKind {
    Symmetric,
    Skew,
}

/// Generalized (skew-)symmetry: the squaring map output is (skew-)symmetric.
pub fn is_sym_skew(a: &Mat, kind: SymKind, tol: f64) -> Result<bool> {
    let b = box_map(a)?;
    let bt = b.transpose();
    let diff = match kind {
        SymKind::Symmetric => b.sub(&bt)?,
        SymKind::Skew => b.add(&bt)?,
    };
    Ok(diff.norm_inf() <= tol)
}

/// Characteristic polynomial of the squaring map (degree lcm(m,n)).
pub fn s_char_poly(a: &Mat) -> Result<Poly> {
    char_poly_of(&box_map(a)?)
}

/// Trace of the squaring map.
pub fn box_trace(a: &Mat) -> Result<f64> {
    box_map(a)?.trace()
}

/// Eigenpairs of the squaring map. Each returned pair satisfies
/// |B x - lambda x| <= 1e-8 |B| or the call reports failure.
pub fn s_spectrum(a: &Mat) -> Result<Vec<(C64, Vec<C64>)>> {
    let b = box_map(a)?;
    let t = b.rows();
    let db = DMatrix::from_row_slice(t, t, b.data());
    let eigs = db.complex_eigenvalues();
    let scale = db.norm().max(1.0);
    let mut out = Vec::with_capacity(t);
    for &lam in eigs.iter() {
        let mut shifted = db.map(|v| C64::new(v, 0.0));
        for i in 0..t {
            shifted[(i, i)] -= lam;
        }
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.as_ref().ok_or(Error::EigenFailure)?;
        // smallest singular value is last; its right singular vector spans
        // the (numerical) null space of B - lambda I
        let row = v_t.row(t - 1);
        let x: Vec<C64> = row.iter().map(|c| c.conj()).collect();
        let dx = nalgebra::DVector::from_vec(x.clone());
        let residual = (&db.map(|v| C64::new(v, 0.0)) * &dx - dx.scale(1.0) * lam).norm();
        if residual > 1e-8 * scale {
            return Err(Error::EigenFailure);
        }
        out.push((lam, x));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::HVec;
    use crate::stp::{dk_stp, mm_stp, pseudo_stp, MmKind};

    fn m(rows: &[&[f64]]) -> Mat {
        Mat::from_rows(rows).unwrap()
    }

    #[test]
    fn box_of_square_is_identity_map() {
        let a = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert!(box_map(&a).unwrap().approx_eq(&a, 0.0));
    }

    #[test]
    fn box_of_row_vector() {
        let a = m(&[&[3.0, 5.0]]);
        let r = 1.0 / 2f64.sqrt();
        let expect = m(&[&[3.0 * r, 5.0 * r], &[3.0 * r, 5.0 * r]]);
        assert!(box_map(&a).unwrap().approx_eq(&expect, 1e-15));
    }

    #[test]
    fn sym_alt_decomposition() {
        let a = m(&[&[1.0, 2.0, -1.0], &[0.5, 1.0, 2.0]]);
        let s = sym_alt(&a, SymMode::Symmetrize).unwrap();
        let k = sym_alt(&a, SymMode::Alternate).unwrap();
        assert!(s.sub(&s.transpose()).unwrap().is_zero(1e-12));
        assert!(k.add(&k.transpose()).unwrap().is_zero(1e-12));
        let total = s.add(&k).unwrap();
        assert!(total.approx_eq(&box_map(&a).unwrap(), 1e-12));
    }

    #[test]
    fn sym_alt_square_is_classical() {
        let a = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let s = sym_alt(&a, SymMode::Symmetrize).unwrap();
        let expect = a.add(&a.transpose()).unwrap().scale(0.5);
        assert!(s.approx_eq(&expect, 1e-15));
    }

    #[test]
    fn is_sym_skew_checks() {
        let sym = m(&[&[1.0, 2.0], &[2.0, 5.0]]);
        assert!(is_sym_skew(&sym, SymKind::Symmetric, 1e-12).unwrap());
        let z = m(&[&[1.0, 2.0], &[2.0, 1.0]]);
        let a = kron(&z, &e_mat(1, 2)).unwrap(); // z (x) E_{1x2}, box reproduces pattern
        assert!(is_sym_skew(&a, SymKind::Symmetric, 1e-12).unwrap());
        let generic = m(&[&[0.3, 1.0, -0.7], &[2.0, 0.1, 0.4]]);
        assert!(!is_sym_skew(&generic, SymKind::Symmetric, 1e-9).unwrap());
        assert!(!is_sym_skew(&generic, SymKind::Skew, 1e-9).unwrap());
    }

    #[test]
    fn s_char_poly_row_vector() {
        let a = m(&[&[1.0, 1.0]]);
        let p = s_char_poly(&a).unwrap();
        // lambda^2 - sqrt(2) lambda
        assert_eq!(p.degree(), 2);
        assert!((p.coeff(2) - 1.0).abs() < 1e-12);
        assert!((p.coeff(1) + 2f64.sqrt()).abs() < 1e-12);
        assert!(p.coeff(0).abs() < 1e-12);
    }

    #[test]
    fn s_cayley_hamilton() {
        let a = m(&[&[0.7, -0.3, 0.2, 0.9], &[1.1, 0.4, -0.6, 0.0], &[0.2, 0.8, 0.5, -1.0]]);
        let b = box_map(&a).unwrap();
        let p = s_char_poly(&a).unwrap();
        let r = p.eval_mat(&b).unwrap();
        let scale = 1.0 + b.norm_inf().powi(b.rows() as i32);
        assert!(r.norm_inf() <= 1e-7 * scale);
    }

    #[test]
    fn spectrum_row_vector() {
        let a = m(&[&[1.0, 1.0]]);
        let eigs = s_spectrum(&a).unwrap();
        let mut vals: Vec<f64> = eigs.iter().map(|(l, _)| l.re).collect();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] - 0.0).abs() < 1e-10);
        assert!((vals[1] - 2f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn spectrum_square_classical() {
        let a = m(&[&[2.0, 0.0], &[0.0, 3.0]]);
        let eigs = s_spectrum(&a).unwrap();
        let mut vals: Vec<f64> = eigs.iter().map(|(l, _)| l.re).collect();
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] - 2.0).abs() < 1e-10 && (vals[1] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn trace_equals_eigen_sum() {
        let a = m(&[&[0.4, -1.2, 0.9], &[2.0, 0.3, -0.5]]);
        let eigs = s_spectrum(&a).unwrap();
        let sum: C64 = eigs.iter().map(|(l, _)| *l).sum();
        assert!((sum.re - box_trace(&a).unwrap()).abs() < 1e-9);
        assert!(sum.im.abs() < 1e-9);
        // row-vector trace closed form
        let r = m(&[&[3.0, 7.0]]);
        assert!((box_trace(&r).unwrap() - 10.0 / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn box_is_multiplicative_for_dk_within_a_shape() {
        let a = m(&[&[0.2, 1.0, -0.4], &[1.5, 0.3, 0.8]]);
        let b = m(&[&[1.0, 0.0, 0.5], &[-0.2, 0.7, 1.1]]);
        let lhs = box_map(&dk_stp(&a, &b, true).unwrap()).unwrap();
        let rhs = box_map(&a)
            .unwrap()
            .matmul(&box_map(&b).unwrap())
            .unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-9));
    }

    #[test]
    fn box_intertwines_pseudo_with_type2_product() {
        let a = m(&[&[0.6, -0.1], &[0.4, 1.2], &[0.0, 0.9]]);
        let b = m(&[&[1.0, 0.3, -0.5], &[0.2, 0.8, 0.1]]);
        let lhs = box_map(&pseudo_stp(&a, &b).unwrap()).unwrap();
        let rhs = mm_stp(
            &box_map(&a).unwrap(),
            &box_map(&b).unwrap(),
            MmKind::Type2Left,
        )
        .unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-9));
    }

    #[test]
    fn eval_mat_horner() {
        let p = Poly::new(vec![2.0, -3.0, 1.0]); // x^2 - 3x + 2
        let a = m(&[&[1.0, 0.0], &[0.0, 2.0]]);
        let r = p.eval_mat(&a).unwrap();
        assert!(r.is_zero(1e-12));
        assert!((p.eval(3.0) - 2.0).abs() < 1e-12);
        let _ = HVec::new(vec![1.0]).unwrap();
    }
}
