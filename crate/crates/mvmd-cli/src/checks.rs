//! Seeded law-check suites. Each law reports the worst residual seen over
//! the requested number of random trials; a suite passes when every law's
//! residual stays within its tolerance.

use mvmd::geometry::{dist, inner, project, projection_matrix};
use mvmd::lie::{
    bracket, char_poly, dk_power, ext_invert, ext_mul, restricted_form, BracketKind, ExtMat,
    InvertMethod,
};
use mvmd::maps::{box_map, s_char_poly, sym_alt, SymMode};
use mvmd::mat::{e_mat, kron, kron_vec, ones_vec, HVec, Mat};
use mvmd::perm::{perm_matrix, perm_product, perm_sign, Perm, Side};
use mvmd::stp::{dk_stp, mat_hat, mm_stp, pseudo_stp, MmKind, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct LawReport {
    pub name: String,
    pub max_residual: f64,
    pub tol: f64,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.tol
    }
}

pub const SUITES: [&str; 5] = ["stp_laws", "hyper_ring", "perm", "geometry", "lie"];

pub fn run_suite(suite: &str, seed: u64, trials: usize) -> Result<Vec<LawReport>, String> {
    match suite {
        "stp_laws" => Ok(stp_laws(seed, trials)),
        "hyper_ring" => Ok(hyper_ring(seed, trials)),
        "perm" => Ok(perm_laws(seed, trials)),
        "geometry" => Ok(geometry_laws(seed, trials)),
        "lie" => Ok(lie_laws(seed, trials)),
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(s, seed, trials)?);
            }
            Ok(out)
        }
        other => Err(format!(
            "unknown suite '{}'; expected one of {} or 'all'",
            other,
            SUITES.join(", ")
        )),
    }
}

fn rand_mat(r: &mut ChaCha8Rng, m: usize, n: usize) -> Mat {
    Mat::new(m, n, (0..m * n).map(|_| r.gen_range(-1.0..1.0)).collect()).unwrap()
}

fn rand_vec(r: &mut ChaCha8Rng, n: usize) -> HVec {
    HVec::new((0..n).map(|_| r.gen_range(-1.0..1.0)).collect()).unwrap()
}

fn rand_perm(r: &mut ChaCha8Rng, n: usize) -> Perm {
    let mut img: Vec<usize> = (1..=n).collect();
    for i in (1..img.len()).rev() {
        img.swap(i, r.gen_range(0..=i));
    }
    Perm::from_image_1(&img).unwrap()
}

fn residual(a: &Mat, b: &Mat) -> f64 {
    match a.sub(b) {
        Ok(d) => d.norm_inf() / (1.0 + a.norm_inf().max(b.norm_inf())),
        Err(_) => f64::INFINITY,
    }
}

struct Tracker {
    laws: Vec<LawReport>,
}

impl Tracker {
    fn new() -> Self {
        Tracker { laws: Vec::new() }
    }

    fn record(&mut self, name: &str, value: f64, tol: f64) {
        if let Some(l) = self.laws.iter_mut().find(|l| l.name == name) {
            l.max_residual = l.max_residual.max(value);
        } else {
            self.laws.push(LawReport {
                name: name.to_owned(),
                max_residual: value,
                tol,
            });
        }
    }
}

fn stp_laws(seed: u64, trials: usize) -> Vec<LawReport> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tracker::new();
    for _ in 0..trials {
        let dims: Vec<usize> = (0..6).map(|_| r.gen_range(1..=4)).collect();
        let a = rand_mat(&mut r, dims[0], dims[1]);
        let b = rand_mat(&mut r, dims[2], dims[3]);
        let c = rand_mat(&mut r, dims[4], dims[5]);
        let k = MmKind::Type1Left;
        t.record(
            "type1 associativity",
            residual(
                &mm_stp(&mm_stp(&a, &b, k).unwrap(), &c, k).unwrap(),
                &mm_stp(&a, &mm_stp(&b, &c, k).unwrap(), k).unwrap(),
            ),
            1e-9,
        );
        for (w, name) in [(true, "dk associativity (weighted)"), (false, "dk associativity (ones)")] {
            t.record(
                name,
                residual(
                    &dk_stp(&dk_stp(&a, &b, w).unwrap(), &c, w).unwrap(),
                    &dk_stp(&a, &dk_stp(&b, &c, w).unwrap(), w).unwrap(),
                ),
                1e-9,
            );
        }
        t.record(
            "dk transpose law",
            residual(
                &dk_stp(&a, &b, true).unwrap().transpose(),
                &dk_stp(&b.transpose(), &a.transpose(), true).unwrap(),
            ),
            1e-10,
        );
        let same = rand_mat(&mut r, a.rows(), a.cols());
        t.record(
            "dk distributivity (same shape)",
            residual(
                &dk_stp(&c, &a.add(&same).unwrap(), true).unwrap(),
                &dk_stp(&c, &a, true).unwrap().add(&dk_stp(&c, &same, true).unwrap()).unwrap(),
            ),
            1e-9,
        );
        let (p, q, kk) = (r.gen_range(1..=4), r.gen_range(1..=4), r.gen_range(1..=3));
        t.record(
            "stretched weight cancellation",
            residual(
                &kron(&a, &e_mat(p, kk * b.rows())).unwrap()
                    .matmul(&kron(&b, &e_mat(kk * a.cols(), q)).unwrap()).unwrap(),
                &kron(&a, &e_mat(p, b.rows())).unwrap()
                    .matmul(&kron(&b, &e_mat(a.cols(), q)).unwrap()).unwrap(),
            ),
            1e-9,
        );
    }
    t.laws
}

fn hyper_ring(seed: u64, trials: usize) -> Vec<LawReport> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tracker::new();
    for _ in 0..trials {
        let dims: Vec<usize> = (0..6).map(|_| r.gen_range(1..=4)).collect();
        let a = rand_mat(&mut r, dims[0], dims[1]);
        let b = rand_mat(&mut r, dims[2], dims[3]);
        let c = rand_mat(&mut r, dims[4], dims[5]);
        t.record(
            "pstp associativity",
            residual(
                &pseudo_stp(&pseudo_stp(&a, &b).unwrap(), &c).unwrap(),
                &pseudo_stp(&a, &pseudo_stp(&b, &c).unwrap()).unwrap(),
            ),
            1e-9,
        );
        t.record(
            "right distributivity over hadd",
            residual(
                &pseudo_stp(&mat_hat(&a, &b, Sign::Plus).unwrap(), &c).unwrap(),
                &mat_hat(&pseudo_stp(&a, &c).unwrap(), &pseudo_stp(&b, &c).unwrap(), Sign::Plus)
                    .unwrap(),
            ),
            1e-9,
        );
        t.record(
            "left distributivity over hadd",
            residual(
                &pseudo_stp(&c, &mat_hat(&a, &b, Sign::Plus).unwrap()).unwrap(),
                &mat_hat(&pseudo_stp(&c, &a).unwrap(), &pseudo_stp(&c, &b).unwrap(), Sign::Plus)
                    .unwrap(),
            ),
            1e-9,
        );
        t.record(
            "pstp transpose law",
            residual(
                &pseudo_stp(&a, &b).unwrap().transpose(),
                &pseudo_stp(&b.transpose(), &a.transpose()).unwrap(),
            ),
            1e-10,
        );
        t.record(
            "squaring-map product bridge",
            residual(
                &box_map(&pseudo_stp(&a, &b).unwrap()).unwrap(),
                &mm_stp(&box_map(&a).unwrap(), &box_map(&b).unwrap(), MmKind::Type2Left).unwrap(),
            ),
            1e-9,
        );
        t.record(
            "symmetrizer homomorphism",
            residual(
                &sym_alt(&mat_hat(&a, &b, Sign::Plus).unwrap(), SymMode::Symmetrize).unwrap(),
                &mat_hat(
                    &sym_alt(&a, SymMode::Symmetrize).unwrap(),
                    &sym_alt(&b, SymMode::Symmetrize).unwrap(),
                    Sign::Plus,
                )
                .unwrap(),
            ),
            1e-9,
        );
    }
    t.laws
}

fn perm_laws(seed: u64, trials: usize) -> Vec<LawReport> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tracker::new();
    for _ in 0..trials {
        let (na, nb, nc) = (r.gen_range(1..=4), r.gen_range(1..=4), r.gen_range(1..=4));
        let a = rand_perm(&mut r, na);
        let b = rand_perm(&mut r, nb);
        let c = rand_perm(&mut r, nc);
        for (side, kind, name) in [
            (Side::Left, MmKind::Type1Left, "matrix functoriality (left)"),
            (Side::Right, MmKind::Type1Right, "matrix functoriality (right)"),
        ] {
            let lhs = perm_matrix(&perm_product(&a, &b, side).unwrap());
            let rhs = mm_stp(&perm_matrix(&a), &perm_matrix(&b), kind).unwrap();
            t.record(name, residual(&lhs, &rhs), 0.0);
        }
        let lhs = perm_product(&perm_product(&a, &b, Side::Left).unwrap(), &c, Side::Left).unwrap();
        let rhs = perm_product(&a, &perm_product(&b, &c, Side::Left).unwrap(), Side::Left).unwrap();
        t.record(
            "product associativity",
            if lhs.image_1() == rhs.image_1() { 0.0 } else { 1.0 },
            0.0,
        );
        let inv_ok = perm_product(&a, &a.inverse(), Side::Left).unwrap().is_identity();
        t.record("inverse law", if inv_ok { 0.0 } else { 1.0 }, 0.0);
        let tt = mvmd::lattice::lcm(a.order(), b.order()).unwrap();
        let expect = perm_sign(&a).pow((tt / a.order()) as u32)
            * perm_sign(&b).pow((tt / b.order()) as u32);
        let got = perm_sign(&perm_product(&a, &b, Side::Left).unwrap());
        t.record("embedded sign law", if got == expect { 0.0 } else { 1.0 }, 0.0);
    }
    t.laws
}

fn geometry_laws(seed: u64, trials: usize) -> Vec<LawReport> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tracker::new();
    // built-in constant for the 4 -> 6 projection
    let expect = Mat::from_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.5, 0.5, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 0.0, 0.5, 0.5],
        &[0.0, 0.0, 0.0, 1.0],
    ])
    .unwrap();
    t.record(
        "projection 4->6 constant",
        residual(&projection_matrix(4, 6).unwrap(), &expect),
        0.0,
    );
    for _ in 0..trials {
        let xd = r.gen_range(1..=6);
        let xi = rand_vec(&mut r, xd);
        let n = r.gen_range(1..=6);
        let (x0, res) = project(&xi, n).unwrap();
        t.record(
            "projection orthogonality",
            inner(&res, &x0).unwrap().abs() / (1.0 + inner(&xi, &xi).unwrap()),
            1e-10,
        );
        let lhs = inner(&xi, &xi).unwrap();
        let rhs = inner(&x0, &x0).unwrap() + inner(&res, &res).unwrap();
        t.record("pythagoras", (lhs - rhs).abs() / (1.0 + lhs), 1e-10);
        let (yd, zd) = (r.gen_range(1..=6), r.gen_range(1..=6));
        let y = rand_vec(&mut r, yd);
        let z = rand_vec(&mut r, zd);
        t.record(
            "metric symmetry",
            (dist(&xi, &y).unwrap() - dist(&y, &xi).unwrap()).abs(),
            1e-12,
        );
        let slack =
            dist(&xi, &z).unwrap() - dist(&xi, &y).unwrap() - dist(&y, &z).unwrap();
        t.record("triangle inequality", slack.max(0.0), 1e-12);
        let stretched = kron_vec(&xi, &ones_vec(r.gen_range(1..=3)));
        t.record("stretch invariance of distance", dist(&xi, &stretched).unwrap(), 1e-12);
    }
    t.laws
}

fn lie_laws(seed: u64, trials: usize) -> Vec<LawReport> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tracker::new();
    let shapes = [(2usize, 2usize), (2, 3), (3, 2), (2, 4), (3, 4)];
    for i in 0..trials {
        let (m, n) = shapes[i % shapes.len()];
        let a = rand_mat(&mut r, m, n);
        let b = rand_mat(&mut r, m, n);
        let c = rand_mat(&mut r, m, n);
        // Cayley-Hamilton residual, reported per shape
        for w in [true, false] {
            let p = char_poly(&a, w).unwrap();
            let mut acc = dk_power(&a, m + 1, w).unwrap();
            for j in 0..m {
                acc = acc.add(&dk_power(&a, j + 1, w).unwrap().scale(p.coeff(j))).unwrap();
            }
            let pi = restricted_form(&a, w).unwrap();
            let scale = 1.0 + pi.norm_inf().max(1.0).powi(m as i32) * (1.0 + a.norm_inf());
            t.record(
                &format!("cayley-hamilton {}x{} ({})", m, n, if w { "weighted" } else { "ones" }),
                acc.norm_inf() / scale,
                1e-7,
            );
        }
        let ps = s_char_poly(&a).unwrap();
        let boxed = box_map(&a).unwrap();
        let td = boxed.rows() as i32;
        t.record(
            &format!("squared cayley-hamilton {}x{}", m, n),
            ps.eval_mat(&boxed).unwrap().norm_inf()
                / (1.0 + boxed.norm_inf().max(1.0).powi(td)),
            1e-7,
        );
        // Jacobi identity
        let w = true;
        let term = |x: &Mat, y: &Mat, z: &Mat| {
            bracket(x, &bracket(y, z, BracketKind::Dk, w).unwrap(), BracketKind::Dk, w).unwrap()
        };
        let sum = term(&a, &b, &c)
            .add(&term(&b, &c, &a)).unwrap()
            .add(&term(&c, &a, &b)).unwrap();
        t.record("jacobi identity", sum.norm_inf(), 1e-9);
        // inversion round trip on small bodies
        let small = a.scale(0.2);
        let x = ExtMat::new(1.0, small.clone());
        if let Ok(inv) = ext_invert(&x, InvertMethod::LinearSolve, true) {
            let prod = ext_mul(&x, &inv, true).unwrap();
            t.record(
                "inverse round trip",
                prod.body.norm_inf() + (prod.scalar - 1.0).abs(),
                1e-8,
            );
        }
    }
    t.laws
}
