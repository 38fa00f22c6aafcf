//! Reduction to irreducible representatives and the equivalence relations
//! they decide.
//!
//! A vector is *reducible* when it is a Kronecker stretch `z (x) w` of a
//! shorter vector by a weight pattern; likewise a matrix with patterns I, J
//! (averaging) or E (normalized all-ones). Reduction searches divisors from
//! the smallest up, so the first hit is the canonical minimal representative.

use crate::error::{Error, Result};
use crate::lattice::{divisors_ascending, lcm};
use crate::mat::{e_mat, e_vec, j_mat, kron, kron_vec, ones_vec, HVec, Mat};

/// Default per-entry absolute tolerance for reduction decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct VecReduction {
    pub representative: HVec,
    pub factor: usize,
}

#[derive(Debug, Clone)]
pub struct MatReduction {
    pub representative: Mat,
    pub row_factor: usize,
    pub col_factor: usize,
}

/// Matrix weight pattern for reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatWeight {
    I,
    J,
    E,
}

/// Smallest `s | m` with `x = z (x) ones(m/s)` within `tol`; `z` is the
/// blockwise mean, so sub-tolerance noise is averaged away.
pub fn reduce_vec(x: &HVec, tol: f64) -> VecReduction {
    let m = x.dim();
    for &s in &divisors_ascending(m) {
        let k = m / s;
        let mut z = Vec::with_capacity(s);
        let mut ok = true;
        'blocks: for i in 0..s {
            let block = &x.data()[i * k..(i + 1) * k];
            let mean = block.iter().sum::<f64>() / k as f64;
            for &v in block {
                if (v - mean).abs() > tol {
                    ok = false;
                    break 'blocks;
                }
            }
            z.push(mean);
        }
        if ok {
            return VecReduction {
                representative: HVec::new(z).expect("means of finite data are finite"),
                factor: k,
            };
        }
    }
    unreachable!("s = m always succeeds with factor 1")
}

/// Reduction with the normalized stretch `x = z (x) e_vec(k)`; same block
/// structure as [`reduce_vec`], representative rescaled by sqrt(k).
pub fn reduce_vec_e(x: &HVec, tol: f64) -> VecReduction {
    let r = reduce_vec(x, tol);
    let s = (r.factor as f64).sqrt();
    VecReduction {
        representative: r.representative.scale(s),
        factor: r.factor,
    }
}

fn weight_block(weight: MatWeight, kr: usize, kc: usize) -> Mat {
    match weight {
        MatWeight::I => Mat::identity(kr),
        MatWeight::J => j_mat(kr),
        MatWeight::E => e_mat(kr, kc),
    }
}

/// Smallest divisor pair (rows first, then columns) and `C` with
/// `A = C (x) W` within `tol`, `W` the chosen weight pattern. `C` is the
/// least-squares fit of each block against `W`. Patterns I and J require a
/// square input and square blocks.
pub fn reduce_mat(a: &Mat, weight: MatWeight, tol: f64) -> Result<MatReduction> {
    let (m, n) = (a.rows(), a.cols());
    if weight != MatWeight::E && m != n {
        return Err(Error::NotSquare { rows: m, cols: n });
    }
    let row_divs = divisors_ascending(m);
    for &r in &row_divs {
        let col_candidates: Vec<usize> = match weight {
            MatWeight::E => divisors_ascending(n),
            _ => vec![r],
        };
        for &s in &col_candidates {
            if n % s != 0 {
                continue;
            }
            let (kr, kc) = (m / r, n / s);
            let w = weight_block(weight, kr, kc);
            let wnorm2: f64 = w.data().iter().map(|v| v * v).sum();
            let mut c = Mat::zeros(r, s);
            let mut ok = true;
            'blocks: for i in 0..r {
                for j in 0..s {
                    let mut dot = 0.0;
                    for bi in 0..kr {
                        for bj in 0..kc {
                            dot += a.at(i * kr + bi, j * kc + bj) * w.at(bi, bj);
                        }
                    }
                    let cij = dot / wnorm2;
                    for bi in 0..kr {
                        for bj in 0..kc {
                            let expect = cij * w.at(bi, bj);
                            if (a.at(i * kr + bi, j * kc + bj) - expect).abs() > tol {
                                ok = false;
                                break 'blocks;
                            }
                        }
                    }
                    c.set(i, j, cij);
                }
            }
            if ok {
                return Ok(MatReduction {
                    representative: c,
                    row_factor: kr,
                    col_factor: kc,
                });
            }
        }
    }
    unreachable!("(r, s) = (m, n) always succeeds with unit factors")
}

/// Right-factor variant: smallest `p` with `A = I_{m/p} (x) C`, `C` p x p.
/// Used to decide equivalence of permutation matrices under right embedding.
pub fn reduce_mat_right_identity(a: &Mat, tol: f64) -> Result<MatReduction> {
    let m = a.rows();
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: m,
            cols: a.cols(),
        });
    }
    for &p in &divisors_ascending(m) {
        let k = m / p;
        let mut c = Mat::zeros(p, p);
        // candidate C: mean of the diagonal blocks
        for bi in 0..p {
            for bj in 0..p {
                let mut sum = 0.0;
                for b in 0..k {
                    sum += a.at(b * p + bi, b * p + bj);
                }
                c.set(bi, bj, sum / k as f64);
            }
        }
        let mut ok = true;
        'check: for i in 0..k {
            for j in 0..k {
                for bi in 0..p {
                    for bj in 0..p {
                        let expect = if i == j { c.at(bi, bj) } else { 0.0 };
                        if (a.at(i * p + bi, j * p + bj) - expect).abs() > tol {
                            ok = false;
                            break 'check;
                        }
                    }
                }
            }
        }
        if ok {
            return Ok(MatReduction {
                representative: c,
                row_factor: k,
                col_factor: k,
            });
        }
    }
    unreachable!("p = m always succeeds")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VecRelation {
    /// x (x) ones = y (x) ones at the join dimension.
    Bar,
    /// x (x) e = y (x) e (normalized stretch).
    Hat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatRelation {
    /// A (x) I = B (x) I (square).
    SqI,
    /// A (x) J = B (x) J (square).
    SqJ,
    /// A (x) E = B (x) E (any shape, componentwise join).
    MatE,
    /// I_r (x) A = I_s (x) B (square; right Kronecker factor).
    PermRight,
}

/// Decide vector equivalence by comparing stretched forms at the join.
pub fn equivalent_vec(x: &HVec, y: &HVec, rel: VecRelation, tol: f64) -> Result<bool> {
    let t = lcm(x.dim(), y.dim())?;
    let (kx, ky) = (t / x.dim(), t / y.dim());
    let (xs, ys) = match rel {
        VecRelation::Bar => (
            kron_vec(x, &ones_vec(kx)),
            kron_vec(y, &ones_vec(ky)),
        ),
        VecRelation::Hat => (kron_vec(x, &e_vec(kx)), kron_vec(y, &e_vec(ky))),
    };
    Ok(xs.approx_eq(&ys, tol))
}

/// Decide vector equivalence by reducing both sides and comparing minimal
/// representatives; agrees with [`equivalent_vec`] away from the tolerance
/// boundary.
pub fn equivalent_vec_by_reduction(x: &HVec, y: &HVec, rel: VecRelation, tol: f64) -> bool {
    let (rx, ry) = match rel {
        VecRelation::Bar => (reduce_vec(x, tol), reduce_vec(y, tol)),
        VecRelation::Hat => (reduce_vec_e(x, tol), reduce_vec_e(y, tol)),
    };
    rx.representative.dim() == ry.representative.dim()
        && rx.representative.approx_eq(&ry.representative, tol)
}

/// Decide matrix equivalence by comparing stretched forms at the join.
pub fn equivalent_mat(a: &Mat, b: &Mat, rel: MatRelation, tol: f64) -> Result<bool> {
    match rel {
        MatRelation::MatE => {
            let s = lcm(a.rows(), b.rows())?;
            let t = lcm(a.cols(), b.cols())?;
            let ai = kron(a, &e_mat(s / a.rows(), t / a.cols()))?;
            let bi = kron(b, &e_mat(s / b.rows(), t / b.cols()))?;
            Ok(ai.approx_eq(&bi, tol))
        }
        MatRelation::SqI | MatRelation::SqJ | MatRelation::PermRight => {
            for m in [a, b] {
                if !m.is_square() {
                    return Err(Error::NotSquare {
                        rows: m.rows(),
                        cols: m.cols(),
                    });
                }
            }
            let t = lcm(a.rows(), b.rows())?;
            let (ka, kb) = (t / a.rows(), t / b.rows());
            let (ai, bi) = match rel {
                MatRelation::SqI => (
                    kron(a, &Mat::identity(ka))?,
                    kron(b, &Mat::identity(kb))?,
                ),
                MatRelation::SqJ => (kron(a, &j_mat(ka))?, kron(b, &j_mat(kb))?),
                MatRelation::PermRight => (
                    kron(&Mat::identity(ka), a)?,
                    kron(&Mat::identity(kb), b)?,
                ),
                MatRelation::MatE => unreachable!(),
            };
            Ok(ai.approx_eq(&bi, tol))
        }
    }
}

/// Reduction-based decision procedure for matrix equivalence.
pub fn equivalent_mat_by_reduction(a: &Mat, b: &Mat, rel: MatRelation, tol: f64) -> Result<bool> {
    let (ra, rb) = match rel {
        MatRelation::SqI => (
            reduce_mat(a, MatWeight::I, tol)?,
            reduce_mat(b, MatWeight::I, tol)?,
        ),
        MatRelation::SqJ => (
            reduce_mat(a, MatWeight::J, tol)?,
            reduce_mat(b, MatWeight::J, tol)?,
        ),
        MatRelation::MatE => (
            reduce_mat(a, MatWeight::E, tol)?,
            reduce_mat(b, MatWeight::E, tol)?,
        ),
        MatRelation::PermRight => (
            reduce_mat_right_identity(a, tol)?,
            reduce_mat_right_identity(b, tol)?,
        ),
    };
    let (ca, cb) = (&ra.representative, &rb.representative);
    if ca.rows() != cb.rows() || ca.cols() != cb.cols() {
        return Ok(false);
    }
    Ok(ca.approx_eq(cb, tol))
}
