//! Semi-tensor products and semi-tensor additions: matrix products and sums
//! generalized to arbitrary dimensions by Kronecker-inflating each factor to
//! the lattice join of the dimensions involved.

use crate::error::{Error, Result};
use crate::lattice::lcm;
use crate::mat::{bridge, e_mat, e_vec, j_mat, kron, kron_vec, ones_vec, HVec, Mat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmKind {
    /// (A (x) I)(B (x) I)
    Type1Left,
    /// (I (x) A)(I (x) B)
    Type1Right,
    /// (A (x) J)(B (x) J)
    Type2Left,
    /// (J (x) A)(J (x) B)
    Type2Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MvKind {
    /// (A (x) I)(x (x) 1)
    Type1,
    /// (A (x) J)(x (x) 1)
    Type2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Matrix-matrix semi-tensor product. A is m x n, B is p x q, t = lcm(n,p);
/// result is (mt/n) x (qt/p). Degenerates to AB when n = p.
pub fn mm_stp(a: &Mat, b: &Mat, kind: MmKind) -> Result<Mat> {
    let (n, p) = (a.cols(), b.rows());
    if n == p {
        return a.matmul(b);
    }
    let t = lcm(n, p)?;
    let (ka, kb) = (t / n, t / p);
    let (fa, fb) = match kind {
        MmKind::Type1Left => (
            kron(a, &Mat::identity(ka))?,
            kron(b, &Mat::identity(kb))?,
        ),
        MmKind::Type1Right => (
            kron(&Mat::identity(ka), a)?,
            kron(&Mat::identity(kb), b)?,
        ),
        MmKind::Type2Left => (kron(a, &j_mat(ka))?, kron(b, &j_mat(kb))?),
        MmKind::Type2Right => (kron(&j_mat(ka), a)?, kron(&j_mat(kb), b)?),
    };
    fa.matmul(&fb)
}

/// Matrix-vector semi-tensor product; result lives in R^{mt/n}.
pub fn mv_stp(a: &Mat, x: &HVec, kind: MvKind) -> Result<HVec> {
    let (n, p) = (a.cols(), x.dim());
    let t = lcm(n, p)?;
    let (ka, kp) = (t / n, t / p);
    let fa = match kind {
        MvKind::Type1 => kron(a, &Mat::identity(ka))?,
        MvKind::Type2 => kron(a, &j_mat(ka))?,
    };
    let xs = kron_vec(x, &ones_vec(kp));
    HVec::from_col(&fa.matmul(&xs.as_col())?)
}

/// Vector-vector semi-tensor product: the unnormalized dot product of the
/// all-ones stretches to the common dimension.
pub fn vv_stp(x: &HVec, y: &HVec) -> Result<f64> {
    let t = lcm(x.dim(), y.dim())?;
    let xs = kron_vec(x, &ones_vec(t / x.dim()));
    let ys = kron_vec(y, &ones_vec(t / y.dim()));
    xs.dot(&ys)
}

/// Dimension-keeping semi-tensor product: A bridge(n,p) B, shape m x q.
/// Same-shape inputs give a same-shape output; n = p recovers AB exactly.
pub fn dk_stp(a: &Mat, b: &Mat, weighted: bool) -> Result<Mat> {
    if a.cols() == b.rows() {
        return a.matmul(b);
    }
    a.matmul(&bridge(a.cols(), b.rows(), weighted)?)?.matmul(b)
}

/// Pseudo semi-tensor product: inflate both factors to the shape join with
/// normalized all-ones weights, then take the (weighted) dimension-keeping
/// product. Result shape is lcm(m,p) x lcm(n,q).
pub fn pseudo_stp(a: &Mat, b: &Mat) -> Result<Mat> {
    let s = lcm(a.rows(), b.rows())?;
    let t = lcm(a.cols(), b.cols())?;
    let ai = kron(a, &e_mat(s / a.rows(), t / a.cols()))?;
    let bi = kron(b, &e_mat(s / b.rows(), t / b.cols()))?;
    dk_stp(&ai, &bi, true)
}

// ---------------------------------------------------------------------------
// Semi-tensor additions
// ---------------------------------------------------------------------------

/// x (x) 1 +/- y (x) 1 in R^{lcm(m,n)}.
pub fn vec_bar(x: &HVec, y: &HVec, sign: Sign) -> Result<HVec> {
    let t = lcm(x.dim(), y.dim())?;
    let xs = kron_vec(x, &ones_vec(t / x.dim()));
    let ys = kron_vec(y, &ones_vec(t / y.dim()));
    xs.add(&ys.scale(sign.factor()))
}

/// x (x) e +/- y (x) e with normalized all-ones stretches.
pub fn vec_hat(x: &HVec, y: &HVec, sign: Sign) -> Result<HVec> {
    let t = lcm(x.dim(), y.dim())?;
    let xs = kron_vec(x, &e_vec(t / x.dim()));
    let ys = kron_vec(y, &e_vec(t / y.dim()));
    xs.add(&ys.scale(sign.factor()))
}

/// A (x) I +/- B (x) I for square matrices.
pub fn sq_bar(a: &Mat, b: &Mat, sign: Sign) -> Result<Mat> {
    require_square(a)?;
    require_square(b)?;
    let t = lcm(a.rows(), b.rows())?;
    let ai = kron(a, &Mat::identity(t / a.rows()))?;
    let bi = kron(b, &Mat::identity(t / b.rows()))?;
    ai.add(&bi.scale(sign.factor()))
}

/// A (x) J +/- B (x) J for square matrices.
pub fn sq_hat(a: &Mat, b: &Mat, sign: Sign) -> Result<Mat> {
    require_square(a)?;
    require_square(b)?;
    let t = lcm(a.rows(), b.rows())?;
    let ai = kron(a, &j_mat(t / a.rows()))?;
    let bi = kron(b, &j_mat(t / b.rows()))?;
    ai.add(&bi.scale(sign.factor()))
}

/// General matrix semi-tensor addition with normalized all-ones weights:
/// A (x) E_{s/m x t/n} +/- B (x) E_{s/p x t/q}, (s,t) the shape join.
pub fn mat_hat(a: &Mat, b: &Mat, sign: Sign) -> Result<Mat> {
    let s = lcm(a.rows(), b.rows())?;
    let t = lcm(a.cols(), b.cols())?;
    let ai = kron(a, &e_mat(s / a.rows(), t / a.cols()))?;
    let bi = kron(b, &e_mat(s / b.rows(), t / b.cols()))?;
    ai.add(&bi.scale(sign.factor()))
}

fn require_square(m: &Mat) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        })
    }
}

/// Dispatch selector for the semi-tensor additions (CLI and generic tests).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StaKind {
    VecBar,
    VecHat,
    SqBar,
    SqHat,
    MatHat,
}

pub fn sta_mat(a: &Mat, b: &Mat, kind: StaKind, sign: Sign) -> Result<Mat> {
    match kind {
        StaKind::SqBar => sq_bar(a, b, sign),
        StaKind::SqHat => sq_hat(a, b, sign),
        StaKind::MatHat => mat_hat(a, b, sign),
        StaKind::VecBar | StaKind::VecHat => {
            let (x, y) = (HVec::from_col(a)?, HVec::from_col(b)?);
            let r = if kind == StaKind::VecBar {
                vec_bar(&x, &y, sign)?
            } else {
                vec_hat(&x, &y, sign)?
            };
            Ok(r.as_col())
        }
    }
}
