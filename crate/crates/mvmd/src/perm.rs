//! Cross-order permutation products.
//!
//! Permutations of different orders multiply by first embedding both into the
//! symmetric group of order lcm(m,n) (either by the left embedding, whose
//! matrix is P (x) I_k, or the right embedding I_k (x) P) and then composing.
//! The matrix representation turns the left product into the type-1 left
//! semi-tensor product of the permutation matrices, exactly in integers.

use crate::error::{Error, Result};
use crate::lattice::lcm;
use crate::mat::Mat;

/// A permutation of {1..n}, stored 0-indexed; constructors and accessors use
/// 1-indexed images to match standard cycle/image notation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perm {
    image: Vec<usize>, // image[i] = sigma(i+1) - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Perm {
    /// Build from a 1-indexed image list, e.g. `[2,1,4,3]`.
    pub fn from_image_1(image: &[usize]) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::invalid("permutation order must be >= 1"));
        }
        let mut seen = vec![false; n];
        for &v in image {
            if v < 1 || v > n || seen[v - 1] {
                return Err(Error::invalid(format!(
                    "not a bijection on 1..{}: image {:?}",
                    n, image
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Perm {
            image: image.iter().map(|&v| v - 1).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            image: (0..n).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.image.len()
    }

    /// sigma(i) with 1-indexed argument and result.
    pub fn apply_1(&self, i: usize) -> usize {
        self.image[i - 1] + 1
    }

    /// 1-indexed image list.
    pub fn image_1(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v + 1).collect()
    }

    /// Composition (self . other)(i) = self(other(i)); equal orders only.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.order() != other.order() {
            return Err(Error::ShapeMismatch {
                left: self.order().to_string(),
                right: other.order().to_string(),
                ctx: "permutation composition",
            });
        }
        Ok(Perm {
            image: other.image.iter().map(|&v| self.image[v]).collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.order()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Perm { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// The permutation matrix with column i equal to the sigma(i)-th unit vector,
/// so that M_sigma e_i = e_sigma(i) and M_{sigma . mu} = M_sigma M_mu.
pub fn perm_matrix(sigma: &Perm) -> Mat {
    let n = sigma.order();
    let mut m = Mat::zeros(n, n);
    for i in 0..n {
        m.set(sigma.image[i], i, 1.0);
    }
    m
}

/// Recover a permutation from its matrix (entries must be exactly 0/1).
pub fn perm_from_matrix(m: &Mat) -> Result<Perm> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut image = vec![usize::MAX; n];
    for j in 0..n {
        let mut hit = None;
        for i in 0..n {
            let v = m.at(i, j);
            if v == 1.0 {
                if hit.replace(i).is_some() {
                    return Err(Error::invalid("not a permutation matrix"));
                }
            } else if v != 0.0 {
                return Err(Error::invalid("not a permutation matrix"));
            }
        }
        image[j] = hit.ok_or_else(|| Error::invalid("not a permutation matrix"))?;
    }
    let mut seen = vec![false; n];
    for &v in &image {
        if seen[v] {
            return Err(Error::invalid("not a permutation matrix"));
        }
        seen[v] = true;
    }
    Ok(Perm { image })
}

/// Embed an order-m permutation into order n (m | n).
///
/// Left: acts on blocks, matrix P_sigma (x) I_k; position (i-1)k+s maps to
/// (sigma(i)-1)k+s. Right: acts within blocks, matrix I_k (x) P_sigma.
pub fn embed(sigma: &Perm, n: usize, side: Side) -> Result<Perm> {
    let m = sigma.order();
    if n % m != 0 {
        return Err(Error::invalid(format!(
            "cannot embed order {} into order {}: not a multiple",
            m, n
        )));
    }
    let k = n / m;
    let mut image = vec![0; n];
    match side {
        Side::Left => {
            for i in 0..m {
                for s in 0..k {
                    image[i * k + s] = sigma.image[i] * k + s;
                }
            }
        }
        Side::Right => {
            for b in 0..k {
                for i in 0..m {
                    image[b * m + i] = b * m + sigma.image[i];
                }
            }
        }
    }
    Ok(Perm { image })
}

/// Cross-order product: embed both factors into order lcm(m,n) on the given
/// side, then compose.
pub fn perm_product(sigma: &Perm, mu: &Perm, side: Side) -> Result<Perm> {
    let t = lcm(sigma.order(), mu.order())?;
    let es = embed(sigma, t, side)?;
    let em = embed(mu, t, side)?;
    es.compose(&em)
}

/// Parity: +1 for even permutations, -1 for odd.
pub fn perm_sign(sigma: &Perm) -> i32 {
    let n = sigma.order();
    let mut seen = vec![false; n];
    let mut sign = 1;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = sigma.image[cur];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}
