//! Simulation spec files: `key = value` lines (with `#` comments). Keys:
//!
//! * `structure` -- aleph1 .. aleph6
//! * `m`, `b`, `c` -- matrix file paths (`b`, `c` optional)
//! * `x0` -- initial-state vector file
//! * `horizon` -- step count (discrete run)
//! * `t_final`, `dt` -- continuous run instead of a discrete one
//! * `u`, `eta` -- comma-separated vector files; a discrete run consumes
//!   them stepwise, a continuous run cycles through them as piecewise
//!   constants over unit time
//! * `weighted` -- true/false bridge weighting (default true)

use crate::expr::as_vec;
use crate::matio::read_mat;
use mvmd::mat::HVec;
use mvmd::systems::{
    simulate_continuous, simulate_discrete, Coef, Structure, SystemSpec, Trajectory,
};
use std::collections::HashMap;
use std::path::{Path, PathBuf};

pub struct SimFile {
    spec: SystemSpec,
    horizon: Option<usize>,
    t_final: Option<f64>,
    dt: Option<f64>,
    u: Vec<HVec>,
    eta: Vec<HVec>,
}

pub fn parse_sim_file(path: &Path, tol: f64) -> Result<SimFile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut kv = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
        kv.insert(k.trim().to_owned(), v.trim().to_owned());
    }
    let get = |k: &str| kv.get(k).cloned();
    let need = |k: &str| get(k).ok_or_else(|| format!("missing '{}' in spec file", k));

    let relative = |v: &str| -> PathBuf { base.join(v) };
    let load_mat = |k: &str| -> Result<_, String> { read_mat(&relative(&need(k)?)) };
    let load_vecs = |k: &str| -> Result<Vec<HVec>, String> {
        match get(k) {
            None => Ok(Vec::new()),
            Some(list) => list
                .split(',')
                .map(|f| as_vec(&read_mat(&relative(f.trim()))?))
                .collect(),
        }
    };

    let structure = Structure::parse(&need("structure")?).map_err(|e| e.to_string())?;
    let spec = SystemSpec {
        structure,
        m: Coef::Constant(load_mat("m")?),
        b: get("b").map(|_| load_mat("b")).transpose()?.map(Coef::Constant),
        c: get("c").map(|_| load_mat("c")).transpose()?.map(Coef::Constant),
        x0: as_vec(&load_mat("x0")?)?,
        weighted: match get("weighted").as_deref() {
            None | Some("true") => true,
            Some("false") => false,
            Some(v) => return Err(format!("weighted must be true or false, got '{}'", v)),
        },
        tol,
    };
    let parse_num = |k: &str| -> Result<Option<f64>, String> {
        get(k)
            .map(|v| v.parse::<f64>().map_err(|_| format!("bad number for '{}': {}", k, v)))
            .transpose()
    };
    Ok(SimFile {
        spec,
        horizon: get("horizon")
            .map(|v| v.parse().map_err(|_| format!("bad horizon '{}'", v)))
            .transpose()?,
        t_final: parse_num("t_final")?,
        dt: parse_num("dt")?,
        u: load_vecs("u")?,
        eta: load_vecs("eta")?,
    })
}

pub fn run(sim: &SimFile) -> mvmd::Result<Trajectory> {
    if let Some(horizon) = sim.horizon {
        let u = if sim.u.is_empty() { None } else { Some(sim.u.as_slice()) };
        let eta = if sim.eta.is_empty() { None } else { Some(sim.eta.as_slice()) };
        simulate_discrete(&sim.spec, horizon, u, eta)
    } else {
        let t_final = sim.t_final.unwrap_or(1.0);
        let dt = sim.dt.unwrap_or(1e-3);
        let cycle = |seq: &[HVec], t: f64| -> HVec {
            let idx = (t.max(0.0) as usize) % seq.len();
            seq[idx].clone()
        };
        let useq = sim.u.clone();
        let eseq = sim.eta.clone();
        let uf = move |t: f64| cycle(&useq, t);
        let ef = move |t: f64| cycle(&eseq, t);
        let u: Option<&dyn Fn(f64) -> HVec> = if sim.u.is_empty() { None } else { Some(&uf) };
        let eta: Option<&dyn Fn(f64) -> HVec> = if sim.eta.is_empty() { None } else { Some(&ef) };
        simulate_continuous(&sim.spec, t_final, dt, u, eta)
    }
}

pub fn is_discrete(sim: &SimFile) -> bool {
    sim.horizon.is_some()
}
