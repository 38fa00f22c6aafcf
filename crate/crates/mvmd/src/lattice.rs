//! Divisibility lattices over the positive integers.
//!
//! MD-1 is `Z_+` ordered by divisibility (join = lcm, meet = gcd); MD-2 is
//! `Z_+ x Z_+` with the componentwise order. Every dimension-matching rule in
//! this crate is a join or meet in one of these two lattices.

use crate::error::{Error, Result};

/// Largest value an lcm may take before we refuse to continue.
const DIM_LIMIT: u128 = 1 << 62;

pub fn gcd(a: usize, b: usize) -> usize {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Least common multiple with an overflow guard: anything past 2^62 is an
/// error rather than silent wraparound.
pub fn lcm(a: usize, b: usize) -> Result<usize> {
    if a == 0 || b == 0 {
        return Err(Error::invalid("lcm of zero"));
    }
    let g = gcd(a, b);
    let l = (a as u128 / g as u128) * b as u128;
    if l > DIM_LIMIT {
        return Err(Error::Overflow { ctx: "lcm" });
    }
    Ok(l as usize)
}

/// `(a ∨ b, a ∧ b)` in MD-1. The product of the two results equals `a*b`.
pub fn lcm_gcd(a: usize, b: usize) -> Result<(usize, usize)> {
    Ok((lcm(a, b)?, gcd(a, b)))
}

/// Strict MD-1 order: `a` properly divides `b`.
pub fn md1_precedes(a: usize, b: usize) -> bool {
    a != b && b % a == 0
}

/// Reflexive MD-1 order: `a` divides `b`.
pub fn md1_precedes_eq(a: usize, b: usize) -> bool {
    b % a == 0
}

/// A point of the MD-2 lattice; doubles as the shape of a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shape {
    pub rows: usize,
    pub cols: usize,
}

impl Shape {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid("shape components must be >= 1"));
        }
        Ok(Shape { rows, cols })
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// Componentwise (lcm, gcd) of two shapes.
pub fn md2_join_meet(s: Shape, t: Shape) -> Result<(Shape, Shape)> {
    let join = Shape {
        rows: lcm(s.rows, t.rows)?,
        cols: lcm(s.cols, t.cols)?,
    };
    let meet = Shape {
        rows: gcd(s.rows, t.rows),
        cols: gcd(s.cols, t.cols),
    };
    Ok((join, meet))
}

/// All divisors of `n` in increasing order, from 1 to n.
pub fn divisors_ascending(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}
