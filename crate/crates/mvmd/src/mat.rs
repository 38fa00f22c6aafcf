//! Dense matrices/vectors with explicit shape, plus the weight patterns
//! (all-ones, normalized all-ones, averaging) and bridge matrices that every
//! cross-dimensional operator is built from.

use crate::error::{Error, Result};
use crate::lattice::{lcm, Shape};

/// Dense real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// Element of R^infinity: a real vector carrying its own dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct HVec {
    data: Vec<f64>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid("matrix dimensions must be >= 1"));
        }
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "data length {} does not match {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: i });
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::invalid("ragged rows"));
        }
        Mat::new(r, c, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> Shape {
        Shape {
            rows: self.rows,
            cols: self.cols,
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |a, b| a + b, "matrix addition")
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, |a, b| a - b, "matrix subtraction")
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(f64, f64) -> f64, ctx: &'static str) -> Result<Mat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                left: self.shape().to_string(),
                right: other.shape().to_string(),
                ctx,
            });
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn matmul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                left: self.shape().to_string(),
                right: other.shape().to_string(),
                ctx: "matrix product",
            });
        }
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut out = Mat::zeros(m, n);
        for i in 0..m {
            for p in 0..k {
                let a = self.data[i * k + p];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[p * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((0..self.rows).map(|i| self.at(i, i)).sum())
    }

    /// Max absolute entry.
    pub fn norm_inf(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn approx_eq(&self, other: &Mat, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.norm_inf() <= tol
    }

    /// Column `j` as a vector.
    pub fn col(&self, j: usize) -> HVec {
        HVec {
            data: (0..self.rows).map(|i| self.at(i, j)).collect(),
        }
    }
}

impl HVec {
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::invalid("vector dimension must be >= 1"));
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index: i });
        }
        Ok(HVec { data })
    }

    pub fn zeros(n: usize) -> Self {
        HVec { data: vec![0.0; n] }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn at(&self, i: usize) -> f64 {
        self.data[i]
    }

    pub fn scale(&self, s: f64) -> HVec {
        HVec {
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add(&self, other: &HVec) -> Result<HVec> {
        if self.dim() != other.dim() {
            return Err(Error::ShapeMismatch {
                left: format!("{}", self.dim()),
                right: format!("{}", other.dim()),
                ctx: "vector addition",
            });
        }
        Ok(HVec {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &HVec) -> Result<HVec> {
        self.add(&other.scale(-1.0))
    }

    pub fn dot(&self, other: &HVec) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::ShapeMismatch {
                left: format!("{}", self.dim()),
                right: format!("{}", other.dim()),
                ctx: "dot product",
            });
        }
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum())
    }

    pub fn norm_inf(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn approx_eq(&self, other: &HVec, tol: f64) -> bool {
        self.dim() == other.dim()
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    /// View as an n x 1 matrix.
    pub fn as_col(&self) -> Mat {
        Mat {
            rows: self.dim(),
            cols: 1,
            data: self.data.clone(),
        }
    }

    pub fn from_col(m: &Mat) -> Result<HVec> {
        if m.cols() != 1 {
            return Err(Error::invalid(format!(
                "expected a column vector, got {}",
                m.shape()
            )));
        }
        Ok(HVec {
            data: m.data().to_vec(),
        })
    }
}

// ---------------------------------------------------------------------------
// Weight patterns
// ---------------------------------------------------------------------------

/// All-ones column vector of length k.
pub fn ones_vec(k: usize) -> HVec {
    HVec { data: vec![1.0; k] }
}

/// Normalized all-ones vector: ones_vec(n)/sqrt(n). Unit Euclidean norm.
pub fn e_vec(n: usize) -> HVec {
    HVec {
        data: vec![1.0 / (n as f64).sqrt(); n],
    }
}

pub fn ones_mat(m: usize, n: usize) -> Mat {
    Mat {
        rows: m,
        cols: n,
        data: vec![1.0; m * n],
    }
}

/// Normalized all-ones matrix: every entry 1/sqrt(m*n). Unit Frobenius norm.
pub fn e_mat(m: usize, n: usize) -> Mat {
    Mat {
        rows: m,
        cols: n,
        data: vec![1.0 / ((m * n) as f64).sqrt(); m * n],
    }
}

/// Averaging matrix: n x n with every entry 1/n. Idempotent; equals e_mat(n,n).
pub fn j_mat(n: usize) -> Mat {
    Mat {
        rows: n,
        cols: n,
        data: vec![1.0 / n as f64; n * n],
    }
}

/// Weight pattern selector, used where the pattern is data (CLI, reduction).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    OnesVec,
    EVec,
    EMat,
    JMat,
    Identity,
}

/// Build a weight as a matrix (vectors come back as k x 1 columns).
pub fn weight(kind: WeightKind, m: usize, n: Option<usize>) -> Result<Mat> {
    match kind {
        WeightKind::OnesVec => Ok(ones_vec(m).as_col()),
        WeightKind::EVec => Ok(e_vec(m).as_col()),
        WeightKind::EMat => {
            let n = n.ok_or_else(|| Error::invalid("e_mat weight needs both dimensions"))?;
            Ok(e_mat(m, n))
        }
        WeightKind::JMat => Ok(j_mat(m)),
        WeightKind::Identity => Ok(Mat::identity(m)),
    }
}

// ---------------------------------------------------------------------------
// Kronecker product and bridges
// ---------------------------------------------------------------------------

pub fn kron(a: &Mat, b: &Mat) -> Result<Mat> {
    let rows = a
        .rows
        .checked_mul(b.rows)
        .ok_or(Error::Overflow { ctx: "kron rows" })?;
    let cols = a
        .cols
        .checked_mul(b.cols)
        .ok_or(Error::Overflow { ctx: "kron cols" })?;
    let mut out = Mat::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let v = a.at(i, j);
            if v == 0.0 {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out.data[(i * b.rows + k) * cols + (j * b.cols + l)] = v * b.at(k, l);
                }
            }
        }
    }
    Ok(out)
}

/// Kronecker-stretch of a vector by a weight vector: x (x) w.
pub fn kron_vec(x: &HVec, w: &HVec) -> HVec {
    let mut data = Vec::with_capacity(x.dim() * w.dim());
    for &xi in &x.data {
        for &wi in &w.data {
            data.push(xi * wi);
        }
    }
    HVec { data }
}

/// The n x p bridge matrix mediating the dimension-keeping product.
///
/// Weighted: (I_n (x) e_vec(t/n)^T)(I_p (x) e_vec(t/p)), t = lcm(n,p).
/// Unweighted: the same with all-ones columns; the two differ by the exact
/// scalar factor sqrt(n*p)/t.
pub fn bridge(n: usize, p: usize, weighted: bool) -> Result<Mat> {
    let t = lcm(n, p)?;
    let (a, b) = (t / n, t / p);
    let (wa, wb) = if weighted {
        (e_vec(a), e_vec(b))
    } else {
        (ones_vec(a), ones_vec(b))
    };
    let left = kron(&Mat::identity(n), &wa.as_col().transpose())?;
    let right = kron(&Mat::identity(p), &wb.as_col())?;
    left.matmul(&right)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_small() {
        assert_eq!(e_vec(1).data(), &[1.0]);
        assert!(j_mat(2).approx_eq(
            &Mat::from_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap(),
            0.0
        ));
        let e23 = e_mat(2, 3);
        let v = 1.0 / 6f64.sqrt();
        assert!(e23.data().iter().all(|&x| (x - v).abs() < 1e-15));
    }

    #[test]
    fn kron_identity_expansion() {
        let a = Mat::from_rows(&[&[1.0, 2.0]]).unwrap();
        let k = kron(&a, &Mat::identity(2)).unwrap();
        let expect =
            Mat::from_rows(&[&[1.0, 0.0, 2.0, 0.0], &[0.0, 1.0, 0.0, 2.0]]).unwrap();
        assert!(k.approx_eq(&expect, 0.0));
    }

    #[test]
    fn e_weights_multiply_under_kron() {
        let lhs = kron(&e_vec(2).as_col(), &e_vec(3).as_col()).unwrap();
        assert!(lhs.approx_eq(&e_vec(6).as_col(), 1e-15));
        let lhs = kron(&e_mat(2, 1), &e_mat(1, 3)).unwrap();
        assert!(lhs.approx_eq(&e_mat(2, 3), 1e-15));
    }

    #[test]
    fn bridge_constants() {
        let b = bridge(3, 2, false).unwrap();
        let expect = Mat::from_rows(&[&[2.0, 0.0], &[1.0, 1.0], &[0.0, 2.0]]).unwrap();
        assert!(b.approx_eq(&expect, 0.0));

        let bw = bridge(3, 2, true).unwrap();
        assert!(bw.approx_eq(&expect.scale(6f64.sqrt() / 6.0), 1e-14));

        for n in 1..=5 {
            assert!(bridge(n, n, true).unwrap().approx_eq(&Mat::identity(n), 1e-14));
            assert!(bridge(n, n, false).unwrap().approx_eq(&Mat::identity(n), 1e-14));
        }
    }

    #[test]
    fn bridge_scaling_law() {
        for n in 1..=6 {
            for p in 1..=6 {
                let t = lcm(n, p).unwrap() as f64;
                let scaled = bridge(n, p, false)
                    .unwrap()
                    .scale(((n * p) as f64).sqrt() / t);
                assert!(bridge(n, p, true).unwrap().approx_eq(&scaled, 1e-14));
            }
        }
    }

    #[test]
    fn nonfinite_rejected() {
        assert!(Mat::new(1, 2, vec![1.0, f64::NAN]).is_err());
        assert!(HVec::new(vec![f64::INFINITY]).is_err());
    }
}
