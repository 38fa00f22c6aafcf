//! Linear (control) systems over the six cross-dimensional module
//! structures: the state, control, and disturbance may live in spaces of
//! different -- and time-varying -- dimensions, with the structure's product
//! absorbing every mismatch.

use crate::equivalence::reduce_vec_e;
use crate::error::{Error, Result};
use crate::mat::{HVec, Mat};
use crate::stp::{dk_stp, mv_stp, vec_bar, vec_hat, MvKind, Sign};

/// Which module structure realizes the product M*x and the state addition.
///
/// * `Aleph1`: classical; requires square M matching the state.
/// * `Aleph2`: dimension-keeping product; output dimension = rows(M).
/// * `Aleph3`: type-1 matrix-vector semi-tensor product, all-ones addition.
/// * `Aleph4`: type-2 (averaging) product, normalized addition.
/// * `Aleph5`/`Aleph6`: dimension-keeping product on equivalence classes;
///   states are reduced to irreducible representatives after every step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    Aleph1,
    Aleph2,
    Aleph3,
    Aleph4,
    Aleph5,
    Aleph6,
}

impl Structure {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "aleph1" | "1" => Structure::Aleph1,
            "aleph2" | "2" => Structure::Aleph2,
            "aleph3" | "3" => Structure::Aleph3,
            "aleph4" | "4" => Structure::Aleph4,
            "aleph5" | "5" => Structure::Aleph5,
            "aleph6" | "6" => Structure::Aleph6,
            other => return Err(Error::invalid(format!("unknown structure '{}'", other))),
        })
    }
}

/// Constant or step-indexed coefficient matrix.
#[derive(Debug, Clone)]
pub enum Coef {
    Constant(Mat),
    Sequence(Vec<Mat>),
}

impl Coef {
    pub fn at(&self, k: usize) -> Result<&Mat> {
        match self {
            Coef::Constant(m) => Ok(m),
            Coef::Sequence(v) => v
                .get(k)
                .ok_or_else(|| Error::invalid(format!("coefficient sequence ended at step {}", k))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SystemSpec {
    pub structure: Structure,
    pub m: Coef,
    pub b: Option<Coef>,
    pub c: Option<Coef>,
    pub x0: HVec,
    /// Weighting of the bridge for the dimension-keeping structures.
    pub weighted: bool,
    /// Reduction tolerance for the equivalence-class structures.
    pub tol: f64,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<HVec>,
}

impl Trajectory {
    pub fn dims(&self) -> Vec<usize> {
        self.states.iter().map(|s| s.dim()).collect()
    }

    /// One row per step: time, dimension, then the state entries.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for (t, x) in self.times.iter().zip(&self.states) {
            out.push_str(&format!("{:.6}", t));
            out.push_str(&format!(" {}", x.dim()));
            for v in x.data() {
                out.push_str(&format!(" {:.17e}", v));
            }
            out.push('\n');
        }
        out
    }
}

/// The structure's realization of M * x.
fn act(structure: Structure, m: &Mat, x: &HVec, weighted: bool) -> Result<HVec> {
    match structure {
        Structure::Aleph1 => {
            if !m.is_square() || m.cols() != x.dim() {
                return Err(Error::ShapeMismatch {
                    left: m.shape().to_string(),
                    right: format!("{}", x.dim()),
                    ctx: "classical product (structure aleph1)",
                });
            }
            HVec::from_col(&m.matmul(&x.as_col())?)
        }
        Structure::Aleph2 | Structure::Aleph5 | Structure::Aleph6 => {
            HVec::from_col(&dk_stp(m, &x.as_col(), weighted)?)
        }
        Structure::Aleph3 => mv_stp(m, x, MvKind::Type1),
        Structure::Aleph4 => mv_stp(m, x, MvKind::Type2),
    }
}

/// The structure's state addition.
fn combine(structure: Structure, a: &HVec, b: &HVec) -> Result<HVec> {
    match structure {
        Structure::Aleph1 | Structure::Aleph2 => a.add(b),
        Structure::Aleph3 => vec_bar(a, b, Sign::Plus),
        Structure::Aleph4 | Structure::Aleph5 | Structure::Aleph6 => vec_hat(a, b, Sign::Plus),
    }
}

pub fn simulate_discrete(
    spec: &SystemSpec,
    horizon: usize,
    u: Option<&[HVec]>,
    eta: Option<&[HVec]>,
) -> Result<Trajectory> {
    let mut times = Vec::with_capacity(horizon + 1);
    let mut states = Vec::with_capacity(horizon + 1);
    times.push(0.0);
    states.push(spec.x0.clone());
    let mut x = spec.x0.clone();
    for k in 0..horizon {
        let mut next = act(spec.structure, spec.m.at(k)?, &x, spec.weighted)?;
        if let (Some(bc), Some(us)) = (&spec.b, u) {
            if let Some(uk) = us.get(k) {
                let term = act(spec.structure, bc.at(k)?, uk, spec.weighted)?;
                next = combine(spec.structure, &next, &term)?;
            }
        }
        if let (Some(cc), Some(es)) = (&spec.c, eta) {
            if let Some(ek) = es.get(k) {
                let term = act(spec.structure, cc.at(k)?, ek, spec.weighted)?;
                next = combine(spec.structure, &next, &term)?;
            }
        }
        if next.data().iter().any(|v| !v.is_finite()) {
            return Err(Error::NumericalBlowUp { step: k + 1 });
        }
        if matches!(spec.structure, Structure::Aleph5 | Structure::Aleph6) {
            next = reduce_vec_e(&next, spec.tol).representative;
        }
        times.push((k + 1) as f64);
        states.push(next.clone());
        x = next;
    }
    Ok(Trajectory { times, states })
}

/// Fixed-step fourth-order Runge-Kutta integration of
/// x' = M x (+ B u(t)) (+ C eta(t)). The state product must be
/// dimension-invariant (checked at t = 0); the disturbance dimension is free
/// to vary because the cross-dimensional product always lands back in the
/// state space.
pub fn simulate_continuous(
    spec: &SystemSpec,
    t_final: f64,
    dt: f64,
    u: Option<&dyn Fn(f64) -> HVec>,
    eta: Option<&dyn Fn(f64) -> HVec>,
) -> Result<Trajectory> {
    if dt <= 0.0 || t_final < 0.0 {
        return Err(Error::invalid("need dt > 0 and t_final >= 0"));
    }
    let n = spec.x0.dim();
    let m0 = spec.m.at(0)?;
    let probe = act(spec.structure, m0, &spec.x0, spec.weighted)?;
    if probe.dim() != n {
        return Err(Error::DimensionNotInvariant {
            from: n,
            to: probe.dim(),
        });
    }

    let rhs = |t: f64, x: &HVec| -> Result<HVec> {
        let mut dx = act(spec.structure, spec.m.at(0)?, x, spec.weighted)?;
        if dx.dim() != n {
            return Err(Error::DimensionNotInvariant {
                from: n,
                to: dx.dim(),
            });
        }
        if let (Some(bc), Some(uf)) = (&spec.b, u) {
            let term = act(spec.structure, bc.at(0)?, &uf(t), spec.weighted)?;
            if term.dim() != n {
                return Err(Error::DimensionNotInvariant {
                    from: n,
                    to: term.dim(),
                });
            }
            dx = dx.add(&term)?;
        }
        if let (Some(cc), Some(ef)) = (&spec.c, eta) {
            // disturbance channel always goes through the dimension-keeping
            // product so a dimension-varying eta still lands in R^n
            let e = ef(t);
            let term = HVec::from_col(&dk_stp(cc.at(0)?, &e.as_col(), spec.weighted)?)?;
            if term.dim() != n {
                return Err(Error::DimensionNotInvariant {
                    from: n,
                    to: term.dim(),
                });
            }
            dx = dx.add(&term)?;
        }
        Ok(dx)
    };

    let steps = (t_final / dt).round() as usize;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut x = spec.x0.clone();
    let mut t = 0.0;
    times.push(t);
    states.push(x.clone());
    for step in 0..steps {
        let k1 = rhs(t, &x)?;
        let k2 = rhs(t + dt / 2.0, &x.add(&k1.scale(dt / 2.0))?)?;
        let k3 = rhs(t + dt / 2.0, &x.add(&k2.scale(dt / 2.0))?)?;
        let k4 = rhs(t + dt, &x.add(&k3.scale(dt))?)?;
        let incr = k1
            .add(&k2.scale(2.0))?
            .add(&k3.scale(2.0))?
            .add(&k4)?
            .scale(dt / 6.0);
        x = x.add(&incr)?;
        if x.data().iter().any(|v| !v.is_finite()) {
            return Err(Error::NumericalBlowUp { step: step + 1 });
        }
        t = (step + 1) as f64 * dt;
        times.push(t);
        states.push(x.clone());
    }
    Ok(Trajectory { times, states })
}
