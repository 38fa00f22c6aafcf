//! Inner-product geometry of R^infinity: a normalized inner product under
//! which a vector is indistinguishable from its stretched copies, the metric
//! it induces, least-squares projection between dimensions, sphere slices,
//! and projection-based extension of functions and vector fields.

use crate::error::Result;
use crate::lattice::lcm;
use crate::mat::{kron, ones_mat, HVec, Mat};
use crate::stp::{vec_bar, vec_hat, vv_stp, Sign};

/// Normalized inner product: the stretched dot product divided by the join
/// dimension. Stretch-invariant: inner(x, x (x) ones(k)) = inner(x, x).
pub fn inner(x: &HVec, y: &HVec) -> Result<f64> {
    let t = lcm(x.dim(), y.dim())?;
    Ok(vv_stp(x, y)? / t as f64)
}

/// The same value computed through the normalized-weight stretch: the raw
/// E-weighted dot product differs from [`inner`] by exactly sqrt(m n), so it
/// is divided out here; the two routes agree to rounding error.
pub fn inner_e(x: &HVec, y: &HVec) -> Result<f64> {
    let (m, n) = (x.dim(), y.dim());
    let xs = vec_hat(x, &HVec::zeros(n), Sign::Plus)?;
    let ys = vec_hat(&HVec::zeros(m), y, Sign::Plus)?;
    Ok(xs.dot(&ys)? / ((m * n) as f64).sqrt())
}

pub fn norm(x: &HVec) -> Result<f64> {
    Ok(inner(x, x)?.max(0.0).sqrt())
}

/// Distance: stretch-subtract to the join, then take the norm. A
/// hyper-metric: zero exactly on equivalent (mutually stretched) vectors.
pub fn dist(x: &HVec, y: &HVec) -> Result<f64> {
    norm(&vec_bar(x, y, Sign::Minus)?)
}

/// The n x m matrix realizing least-squares projection from R^m onto R^n
/// (both viewed inside R^{lcm(m,n)}).
pub fn projection_matrix(m: usize, n: usize) -> Result<Mat> {
    let t = lcm(m, n)?;
    let (km, kn) = (t / m, t / n);
    let left = kron(&Mat::identity(n), &ones_mat(1, kn))?;
    let right = kron(&Mat::identity(m), &ones_mat(km, 1))?;
    Ok(left.matmul(&right)?.scale(1.0 / kn as f64))
}

/// Project xi in R^m onto R^n: returns the projection x0 and the residual
/// x0 - xi stretched into R^{lcm(m,n)}; the residual is orthogonal to every
/// vector of R^n, in particular to x0.
pub fn project(xi: &HVec, n: usize) -> Result<(HVec, HVec)> {
    let p = projection_matrix(xi.dim(), n)?;
    let x0 = HVec::from_col(&p.matmul(&xi.as_col())?)?;
    let residual = vec_bar(&x0, xi, Sign::Minus)?;
    Ok((x0, residual))
}

/// Slice of the sphere centered at c0 with radius r by the subspace R^n:
/// a sphere centered at the projection of c0 whose radius shrinks by the
/// offset distance; empty (None) when the offset exceeds r.
pub fn sphere_slice(c0: &HVec, r: f64, n: usize) -> Result<Option<(HVec, f64)>> {
    let (cn, _) = project(c0, n)?;
    let hn = vec_bar(c0, &cn, Sign::Minus)?;
    let off = norm(&hn)?;
    if off > r {
        return Ok(None);
    }
    Ok(Some((cn, (r * r - off * off).max(0.0).sqrt())))
}

/// Extend a scalar function on R^theta to all of R^infinity: evaluate on the
/// projection when theta divides the argument's dimension, zero otherwise.
pub fn extend_function<F: Fn(&HVec) -> f64>(h: F, theta: usize, z: &HVec) -> Result<f64> {
    let m = z.dim();
    if m % theta != 0 {
        return Ok(0.0);
    }
    let (z0, _) = project(z, theta)?;
    Ok(h(&z0))
}

/// Extend a vector field on R^n: project the argument down, evaluate, lift
/// the value back up; zero field off the multiples of n. On a stretched
/// argument z0 (x) ones(r) the lift is f(z0) (x) ones(r).
pub fn extend_vector_field<F: Fn(&HVec) -> HVec>(f: F, n: usize, z: &HVec) -> Result<HVec> {
    let m = z.dim();
    if m % n != 0 {
        return Ok(HVec::zeros(m));
    }
    let (zn, _) = project(z, n)?;
    let fv = f(&zn);
    let up = projection_matrix(fv.dim(), m)?;
    HVec::from_col(&up.matmul(&fv.as_col())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{kron_vec, ones_vec};

    fn v(d: &[f64]) -> HVec {
        HVec::new(d.to_vec()).unwrap()
    }

    #[test]
    fn inner_values() {
        assert!((inner(&v(&[1.0, 2.0]), &v(&[1.0, 2.0, 3.0])).unwrap() - 20.0 / 6.0).abs() < 1e-14);
        let x = v(&[1.0, -1.0, 2.0]);
        assert!((inner(&x, &x).unwrap() - 2.0).abs() < 1e-14);
        let xs = kron_vec(&x, &ones_vec(4));
        assert!((inner(&x, &xs).unwrap() - inner(&x, &x).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn inner_e_matches_inner() {
        let x = v(&[1.0, 2.0, -0.5]);
        let y = v(&[0.3, 1.1]);
        assert!((inner(&x, &y).unwrap() - inner_e(&x, &y).unwrap()).abs() < 1e-12);
        assert!((inner(&x, &x).unwrap() - inner_e(&x, &x).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn norms_and_distances() {
        for n in 1..=6 {
            assert!((norm(&ones_vec(n)).unwrap() - 1.0).abs() < 1e-14);
        }
        let x = v(&[1.0, 2.0]);
        let xs = kron_vec(&x, &ones_vec(3));
        assert!(dist(&x, &xs).unwrap() < 1e-14);
        let xi = v(&[1.0, -2.0, 0.5, 3.0]);
        let n2: f64 = xi.data().iter().map(|a| a * a).sum::<f64>() / 4.0;
        assert!((norm(&xi).unwrap().powi(2) - n2).abs() < 1e-13);
    }

    #[test]
    fn projection_matrix_4_to_6() {
        let p = projection_matrix(4, 6).unwrap();
        let expect = Mat::from_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.5, 0.5, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.5, 0.5],
            &[0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert!(p.approx_eq(&expect, 0.0));
        assert!(projection_matrix(5, 5).unwrap().approx_eq(&Mat::identity(5), 0.0));
    }

    #[test]
    fn projection_chain_composes() {
        for (u, vdim, w) in [(2usize, 4usize, 8usize), (1, 3, 6), (2, 6, 12), (3, 6, 24)] {
            let direct = projection_matrix(w, u).unwrap();
            let chained = projection_matrix(vdim, u)
                .unwrap()
                .matmul(&projection_matrix(w, vdim).unwrap())
                .unwrap();
            assert!(direct.approx_eq(&chained, 1e-12));
        }
    }

    #[test]
    fn projection_orthogonality_and_pythagoras() {
        let xi = v(&[0.7, -1.1, 2.2, 0.4]);
        for n in 1..=8 {
            let (x0, res) = project(&xi, n).unwrap();
            assert!(inner(&res, &x0).unwrap().abs() <= 1e-10 * inner(&xi, &xi).unwrap().max(1.0));
            let lhs = inner(&xi, &xi).unwrap();
            let rhs = inner(&x0, &x0).unwrap() + inner(&res, &res).unwrap();
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }

    #[test]
    fn project_4_to_6_closed_form() {
        let xi = v(&[1.0, 2.0, 3.0, 4.0]);
        let (x0, _) = project(&xi, 6).unwrap();
        assert!(x0.approx_eq(&v(&[1.0, 1.5, 2.0, 3.0, 3.5, 4.0]), 1e-14));
    }

    #[test]
    fn sphere_slices() {
        let c = v(&[1.0, 2.0, 3.0]);
        let s = sphere_slice(&c, 2.0, 3).unwrap().unwrap();
        assert!(s.0.approx_eq(&c, 0.0) && (s.1 - 2.0).abs() < 1e-14);

        let z = v(&[1.0, 2.0]);
        let c = kron_vec(&z, &ones_vec(2));
        let s = sphere_slice(&c, 1.5, 2).unwrap().unwrap();
        assert!(s.0.approx_eq(&z, 1e-12) && (s.1 - 1.5).abs() < 1e-12);

        let c = v(&[0.9, 2.1, -3.0]);
        assert!(sphere_slice(&c, 1e-6, 2).unwrap().is_none());
    }

    #[test]
    fn function_extension() {
        let h = |x: &HVec| x.data().iter().sum::<f64>();
        let z = v(&[1.0, 2.0]);
        assert!((extend_function(h, 2, &z).unwrap() - 3.0).abs() < 1e-14);
        let zz = kron_vec(&z, &ones_vec(3));
        let a = extend_function(h, 2, &zz).unwrap();
        let b = extend_function(h, 2, &z).unwrap();
        assert!((a - b).abs() < 1e-12);
        let odd = v(&[1.0, 2.0, 3.0]);
        assert_eq!(extend_function(h, 2, &odd).unwrap(), 0.0);
    }

    #[test]
    fn vector_field_extension() {
        let mmat = Mat::from_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]).unwrap();
        let f = |x: &HVec| HVec::from_col(&mmat.matmul(&x.as_col()).unwrap()).unwrap();
        let z0 = v(&[1.0, 2.0]);
        // m = n
        assert!(extend_vector_field(f, 2, &z0).unwrap().approx_eq(&v(&[2.0, -1.0]), 1e-14));
        // lifted argument
        let z = kron_vec(&z0, &ones_vec(3));
        let lifted = extend_vector_field(f, 2, &z).unwrap();
        assert!(lifted.approx_eq(&kron_vec(&v(&[2.0, -1.0]), &ones_vec(3)), 1e-12));
        // off the filter
        let odd = v(&[1.0, 2.0, 3.0]);
        assert!(extend_vector_field(f, 2, &odd).unwrap().approx_eq(&HVec::zeros(3), 0.0));
    }
}
