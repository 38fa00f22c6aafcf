//! Property-based checks of the algebraic laws the operator suite promises:
//! associativity and distributivity of the cross-dimensional products, the
//! transpose and weight identities, hyper-group laws of the permutation
//! product, homomorphism properties of the squaring/symmetrizing maps,
//! consistency of the equivalence reductions with the operators, the metric
//! axioms, and the Lie/ring structure of the non-square matrix algebra.

use mvmd::equivalence::{
    equivalent_vec, equivalent_vec_by_reduction, reduce_mat, reduce_vec, MatWeight, VecRelation,
};
use mvmd::geometry::{dist, inner, norm, project};
use mvmd::lie::{
    bracket, ext_invert, ext_mul, hyper_gl_mul, ideal_member, BracketKind, ExtMat, Ideal,
    InvertMethod,
};
use mvmd::maps::{box_map, box_trace, s_char_poly, s_spectrum, sym_alt, SymMode};
use mvmd::mat::{bridge, e_mat, e_vec, j_mat, kron, kron_vec, ones_vec, HVec, Mat};
use mvmd::perm::{embed, perm_matrix, perm_product, perm_sign, Perm, Side};
use mvmd::stp::{
    dk_stp, mat_hat, mm_stp, mv_stp, pseudo_stp, sq_bar, sq_hat, vec_bar, vec_hat, vv_stp, MmKind,
    MvKind, Sign,
};
use proptest::prelude::*;

fn entries(k: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-1.0..1.0f64, k)
}

fn mat(m: usize, n: usize) -> impl Strategy<Value = Mat> {
    entries(m * n).prop_map(move |d| Mat::new(m, n, d).unwrap())
}

fn any_mat(max: usize) -> impl Strategy<Value = Mat> {
    (1..=max, 1..=max).prop_flat_map(|(m, n)| mat(m, n))
}

fn sq_mat(max: usize) -> impl Strategy<Value = Mat> {
    (1..=max).prop_flat_map(|n| mat(n, n))
}

fn any_vec(max: usize) -> impl Strategy<Value = HVec> {
    (1..=max).prop_flat_map(|n| entries(n).prop_map(|d| HVec::new(d).unwrap()))
}

fn perm(max: usize) -> impl Strategy<Value = Perm> {
    (1..=max)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|img| Perm::from_image_1(&img).unwrap())
}

/// Combined absolute/relative closeness on matrices.
fn close(a: &Mat, b: &Mat, tol: f64) -> bool {
    match a.sub(b) {
        Ok(d) => d.norm_inf() <= tol * (1.0 + a.norm_inf().max(b.norm_inf())),
        Err(_) => false,
    }
}

fn close_vec(a: &HVec, b: &HVec, tol: f64) -> bool {
    close(&a.as_col(), &b.as_col(), tol)
}

// ---------------------------------------------------------------------------
// Products: associativity, distributivity, transposes, degeneracy
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn stp_type1_associative(a in any_mat(4), b in any_mat(4), c in any_mat(4)) {
        let k = MmKind::Type1Left;
        let lhs = mm_stp(&mm_stp(&a, &b, k).unwrap(), &c, k).unwrap();
        let rhs = mm_stp(&a, &mm_stp(&b, &c, k).unwrap(), k).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-9));
    }

    #[test]
    fn dk_associative(a in any_mat(4), b in any_mat(4), c in any_mat(4), w in any::<bool>()) {
        let lhs = dk_stp(&dk_stp(&a, &b, w).unwrap(), &c, w).unwrap();
        let rhs = dk_stp(&a, &dk_stp(&b, &c, w).unwrap(), w).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-9));
    }

    #[test]
    fn pseudo_associative(a in any_mat(4), b in any_mat(4), c in any_mat(4)) {
        let lhs = pseudo_stp(&pseudo_stp(&a, &b).unwrap(), &c).unwrap();
        let rhs = pseudo_stp(&a, &pseudo_stp(&b, &c).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-9));
    }

    #[test]
    fn products_distribute_over_same_shape_sums(
        a in any_mat(4),
        (b, c) in (1usize..=4, 1usize..=4).prop_flat_map(|(m, n)| (mat(m, n), mat(m, n))),
        w in any::<bool>(),
    ) {
        let sum = b.add(&c).unwrap();
        let lhs = dk_stp(&a, &sum, w).unwrap();
        let rhs = dk_stp(&a, &b, w).unwrap().add(&dk_stp(&a, &c, w).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-9));
        let lhs = mm_stp(&a, &sum, MmKind::Type1Left).unwrap();
        let rhs = mm_stp(&a, &b, MmKind::Type1Left).unwrap()
            .add(&mm_stp(&a, &c, MmKind::Type1Left).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-9));
    }

    #[test]
    fn hyper_ring_distributivity(a in any_mat(4), b in any_mat(4), c in any_mat(4)) {
        // (A +hat B) phat C = (A phat C) +hat (B phat C), and the left mirror.
        let lhs = pseudo_stp(&mat_hat(&a, &b, Sign::Plus).unwrap(), &c).unwrap();
        let rhs = mat_hat(&pseudo_stp(&a, &c).unwrap(), &pseudo_stp(&b, &c).unwrap(), Sign::Plus)
            .unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-9));
        let lhs = pseudo_stp(&c, &mat_hat(&a, &b, Sign::Plus).unwrap()).unwrap();
        let rhs = mat_hat(&pseudo_stp(&c, &a).unwrap(), &pseudo_stp(&c, &b).unwrap(), Sign::Plus)
            .unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-9));
    }

    #[test]
    fn transpose_laws(a in any_mat(4), b in any_mat(4), w in any::<bool>()) {
        let lhs = dk_stp(&a, &b, w).unwrap().transpose();
        let rhs = dk_stp(&b.transpose(), &a.transpose(), w).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-10));
        let lhs = pseudo_stp(&a, &b).unwrap().transpose();
        let rhs = pseudo_stp(&b.transpose(), &a.transpose()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-10));
        let lhs = mat_hat(&a, &b, Sign::Plus).unwrap().transpose();
        let rhs = mat_hat(&a.transpose(), &b.transpose(), Sign::Plus).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-10));
    }

    #[test]
    fn additions_commute_and_associate(x in any_vec(6), y in any_vec(6), z in any_vec(6)) {
        for f in [vec_bar, vec_hat] {
            prop_assert!(close_vec(
                &f(&x, &y, Sign::Plus).unwrap(),
                &f(&y, &x, Sign::Plus).unwrap(),
                1e-12,
            ));
            let lhs = f(&f(&x, &y, Sign::Plus).unwrap(), &z, Sign::Plus).unwrap();
            let rhs = f(&x, &f(&y, &z, Sign::Plus).unwrap(), Sign::Plus).unwrap();
            prop_assert!(close_vec(&lhs, &rhs, 1e-12));
        }
    }

    #[test]
    fn square_additions_commute_and_associate(a in sq_mat(4), b in sq_mat(4), c in sq_mat(4)) {
        for f in [sq_bar, sq_hat, mat_hat] {
            prop_assert!(close(
                &f(&a, &b, Sign::Plus).unwrap(),
                &f(&b, &a, Sign::Plus).unwrap(),
                1e-12,
            ));
            let lhs = f(&f(&a, &b, Sign::Plus).unwrap(), &c, Sign::Plus).unwrap();
            let rhs = f(&a, &f(&b, &c, Sign::Plus).unwrap(), Sign::Plus).unwrap();
            prop_assert!(close(&lhs, &rhs, 1e-12));
        }
    }

    #[test]
    fn zero_acts_as_identity_up_to_inflation(a in any_mat(4), p in 1usize..=4, q in 1usize..=4) {
        let z = Mat::zeros(p, q);
        let s = mvmd::lattice::lcm(a.rows(), p).unwrap();
        let t = mvmd::lattice::lcm(a.cols(), q).unwrap();
        let expect = kron(&a, &e_mat(s / a.rows(), t / a.cols())).unwrap();
        prop_assert!(close(&mat_hat(&a, &z, Sign::Plus).unwrap(), &expect, 1e-12));
        prop_assert!(close(&mat_hat(&z, &a, Sign::Plus).unwrap(), &expect, 1e-12));
    }

    #[test]
    fn classical_degeneracy_is_exact(
        (a, b) in (1usize..=4, 1usize..=4, 1usize..=4)
            .prop_flat_map(|(m, n, q)| (mat(m, n), mat(n, q))),
    ) {
        let ab = a.matmul(&b).unwrap();
        prop_assert!(close(&mm_stp(&a, &b, MmKind::Type1Left).unwrap(), &ab, 0.0));
        prop_assert!(close(&dk_stp(&a, &b, true).unwrap(), &ab, 0.0));
        prop_assert!(close(&dk_stp(&a, &b, false).unwrap(), &ab, 0.0));
    }

    #[test]
    fn stretched_weight_factors_cancel(
        a in any_mat(3), b in any_mat(3),
        k in 1usize..=3, r in 1usize..=3, s in 1usize..=3,
    ) {
        // (A (x) E_{r x kp})(B (x) E_{kn x s}) = (A (x) E_{r x p})(B (x) E_{n x s})
        let (n, p) = (a.cols(), b.rows());
        let lhs = kron(&a, &e_mat(r, k * p)).unwrap()
            .matmul(&kron(&b, &e_mat(k * n, s)).unwrap()).unwrap();
        let rhs = kron(&a, &e_mat(r, p)).unwrap()
            .matmul(&kron(&b, &e_mat(n, s)).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-10));
    }

    #[test]
    fn kronecker_mixed_product(
        (a, c) in (1usize..=3, 1usize..=3, 1usize..=3)
            .prop_flat_map(|(m, n, q)| (mat(m, n), mat(n, q))),
        (b, d) in (1usize..=3, 1usize..=3, 1usize..=3)
            .prop_flat_map(|(m, n, q)| (mat(m, n), mat(n, q))),
    ) {
        let lhs = kron(&a, &b).unwrap().matmul(&kron(&c, &d).unwrap()).unwrap();
        let rhs = kron(&a.matmul(&c).unwrap(), &b.matmul(&d).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-10));
    }
}

#[test]
fn normalized_weight_identities() {
    for n in 1..=8usize {
        let e = e_vec(n);
        assert!((e.dot(&e).unwrap() - 1.0).abs() < 1e-12);
        assert!(j_mat(n).approx_eq(&e_mat(n, n), 1e-14));
        for m in 1..=8usize {
            assert!(e_mat(m, n).transpose().approx_eq(&e_mat(n, m), 0.0));
            let prod = kron(&e_vec(n).as_col(), &e_vec(m).as_col()).unwrap();
            assert!(prod.approx_eq(&e_vec(n * m).as_col(), 1e-12));
            assert!(kron(&e_mat(m, 1), &e_mat(1, n)).unwrap().approx_eq(&e_mat(m, n), 1e-12));
        }
    }
    for (n, p) in [(3usize, 2usize), (4, 6), (2, 5), (6, 4)] {
        let t = mvmd::lattice::lcm(n, p).unwrap() as f64;
        let scaled = bridge(n, p, false).unwrap().scale(((n * p) as f64).sqrt() / t);
        assert!(bridge(n, p, true).unwrap().approx_eq(&scaled, 1e-14));
    }
}

// ---------------------------------------------------------------------------
// Permutation hyper group
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn perm_product_associative(a in perm(4), b in perm(4), c in perm(4)) {
        for side in [Side::Left, Side::Right] {
            let lhs = perm_product(&perm_product(&a, &b, side).unwrap(), &c, side).unwrap();
            let rhs = perm_product(&a, &perm_product(&b, &c, side).unwrap(), side).unwrap();
            prop_assert_eq!(lhs.image_1(), rhs.image_1());
        }
    }

    #[test]
    fn perm_inverse_law(a in perm(6)) {
        let inv = a.inverse();
        prop_assert!(perm_product(&a, &inv, Side::Left).unwrap().is_identity());
        prop_assert!(perm_product(&inv, &a, Side::Left).unwrap().is_identity());
    }

    #[test]
    fn embedding_is_homomorphism(a in perm(4), b in perm(4), k in 1usize..=3) {
        // a and b may have different orders; restrict to the equal-order case.
        if a.order() == b.order() {
            let n = a.order() * k;
            for side in [Side::Left, Side::Right] {
                let lhs = embed(&a.compose(&b).unwrap(), n, side).unwrap();
                let rhs = embed(&a, n, side).unwrap()
                    .compose(&embed(&b, n, side).unwrap()).unwrap();
                prop_assert_eq!(lhs.image_1(), rhs.image_1());
            }
        }
    }

    #[test]
    fn perm_matrix_functoriality(a in perm(4), b in perm(4)) {
        let left = perm_matrix(&perm_product(&a, &b, Side::Left).unwrap());
        let via_stp =
            mm_stp(&perm_matrix(&a), &perm_matrix(&b), MmKind::Type1Left).unwrap();
        prop_assert!(left.approx_eq(&via_stp, 0.0));
        let right = perm_matrix(&perm_product(&a, &b, Side::Right).unwrap());
        let via_stp =
            mm_stp(&perm_matrix(&a), &perm_matrix(&b), MmKind::Type1Right).unwrap();
        prop_assert!(right.approx_eq(&via_stp, 0.0));
    }

    #[test]
    fn perm_sign_law(a in perm(5), b in perm(5)) {
        // an embedding with stretch factor k turns every transposition into k
        // disjoint transpositions, so signs embed as sign^k; the product sign
        // is the product of the embedded signs
        let t = mvmd::lattice::lcm(a.order(), b.order()).unwrap();
        let prod = perm_product(&a, &b, Side::Left).unwrap();
        let expected = perm_sign(&a).pow((t / a.order()) as u32)
            * perm_sign(&b).pow((t / b.order()) as u32);
        prop_assert_eq!(perm_sign(&prod), expected);
        // plain multiplicativity at equal orders
        if a.order() == b.order() {
            prop_assert_eq!(perm_sign(&prod), perm_sign(&a) * perm_sign(&b));
        }
        // products of even permutations stay even
        if perm_sign(&a) == 1 && perm_sign(&b) == 1 {
            prop_assert_eq!(perm_sign(&prod), 1);
        }
    }
}

// ---------------------------------------------------------------------------
// Squaring / symmetrizing maps
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn sym_alt_are_hat_homomorphisms(a in any_mat(4), b in any_mat(4)) {
        for mode in [SymMode::Symmetrize, SymMode::Alternate] {
            let lhs = sym_alt(&mat_hat(&a, &b, Sign::Plus).unwrap(), mode).unwrap();
            let rhs = mat_hat(&sym_alt(&a, mode).unwrap(), &sym_alt(&b, mode).unwrap(), Sign::Plus)
                .unwrap();
            prop_assert!(close(&lhs, &rhs, 1e-9));
        }
    }

    #[test]
    fn sym_plus_alt_is_box(a in any_mat(4)) {
        let s = sym_alt(&a, SymMode::Symmetrize).unwrap();
        let alt = sym_alt(&a, SymMode::Alternate).unwrap();
        prop_assert!(close(&s.add(&alt).unwrap(), &box_map(&a).unwrap(), 1e-12));
        // outputs are symmetric / skew
        prop_assert!(close(&s, &s.transpose(), 1e-12));
        prop_assert!(close(&alt, &alt.transpose().scale(-1.0), 1e-12));
    }

    #[test]
    fn box_is_hat_homomorphism(a in any_mat(4), b in any_mat(4)) {
        let lhs = box_map(&mat_hat(&a, &b, Sign::Plus).unwrap()).unwrap();
        let rhs = mat_hat(&box_map(&a).unwrap(), &box_map(&b).unwrap(), Sign::Plus).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-9));
    }

    #[test]
    fn box_multiplicativity(
        (a, b) in (1usize..=4, 1usize..=4).prop_flat_map(|(m, n)| (mat(m, n), mat(m, n))),
    ) {
        // same shape: box(A dk B) = box(A) box(B)
        let lhs = box_map(&dk_stp(&a, &b, true).unwrap()).unwrap();
        let rhs = box_map(&a).unwrap().matmul(&box_map(&b).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-9));
    }

    #[test]
    fn box_pseudo_bridge(a in any_mat(4), b in any_mat(4)) {
        // box(A phat B) = box(A) circ box(B), circ the second-type product
        let lhs = box_map(&pseudo_stp(&a, &b).unwrap()).unwrap();
        let rhs = mm_stp(&box_map(&a).unwrap(), &box_map(&b).unwrap(), MmKind::Type2Left).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-9));
    }

    #[test]
    fn square_cayley_hamilton(a in any_mat(4)) {
        let boxed = box_map(&a).unwrap();
        let p = s_char_poly(&a).unwrap();
        let residual = p.eval_mat(&boxed).unwrap().norm_inf();
        let t = boxed.rows() as i32;
        prop_assert!(residual <= 1e-7 * (1.0 + boxed.norm_inf().powi(t)));
    }

    #[test]
    fn box_trace_is_eigenvalue_sum(a in any_mat(3)) {
        let pairs = s_spectrum(&a).unwrap();
        let re: f64 = pairs.iter().map(|(l, _)| l.re).sum();
        let im: f64 = pairs.iter().map(|(l, _)| l.im).sum();
        prop_assert!((re - box_trace(&a).unwrap()).abs() < 1e-8);
        prop_assert!(im.abs() < 1e-8);
        // trace zero forces the product of eigenvalue exponentials to one
        if box_trace(&a).unwrap().abs() < 1e-12 {
            let det_exp: f64 = pairs.iter().map(|(l, _)| l.re.exp()).product();
            prop_assert!((det_exp - 1.0).abs() < 1e-8 * det_exp.abs().max(1.0));
        }
    }
}

// ---------------------------------------------------------------------------
// Equivalence reductions vs operators
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn vec_reduction_round_trip(z in any_vec(4), k in 1usize..=4) {
        let inflated = kron_vec(&z, &ones_vec(k));
        let red = reduce_vec(&inflated, 1e-9);
        let back = kron_vec(&red.representative, &ones_vec(inflated.dim() / red.representative.dim()));
        prop_assert!(close_vec(&back, &inflated, 1e-12));
        // idempotence
        prop_assert_eq!(reduce_vec(&red.representative, 1e-9).factor, 1);
    }

    #[test]
    fn mat_reduction_round_trip(c in any_mat(3), r in 1usize..=3, s in 1usize..=3) {
        let inflated = kron(&c, &e_mat(r, s)).unwrap();
        let red = reduce_mat(&inflated, MatWeight::E, 1e-9).unwrap();
        let back = kron(
            &red.representative,
            &e_mat(inflated.rows() / red.representative.rows(),
                   inflated.cols() / red.representative.cols()),
        ).unwrap();
        prop_assert!(close(&back, &inflated, 1e-12));
    }

    #[test]
    fn reduction_consistent_with_operators(
        a in any_mat(3), b in any_mat(3),
        ka in 1usize..=2, kb in 1usize..=2,
    ) {
        // inflate A and B; sums and products of equivalent pairs reduce to
        // the same representative
        let a2 = kron(&a, &e_mat(ka, ka)).unwrap();
        let b2 = kron(&b, &e_mat(kb, kb)).unwrap();
        let r1 = reduce_mat(&mat_hat(&a, &b, Sign::Plus).unwrap(), MatWeight::E, 1e-9).unwrap();
        let r2 = reduce_mat(&mat_hat(&a2, &b2, Sign::Plus).unwrap(), MatWeight::E, 1e-9).unwrap();
        prop_assert!(close(&r1.representative, &r2.representative, 1e-9));
        let p1 = reduce_mat(&pseudo_stp(&a, &b).unwrap(), MatWeight::E, 1e-9).unwrap();
        let p2 = reduce_mat(&pseudo_stp(&a2, &b2).unwrap(), MatWeight::E, 1e-9).unwrap();
        prop_assert!(close(&p1.representative, &p2.representative, 1e-9));
    }

    #[test]
    fn equivalence_routes_agree(x in any_vec(4), y in any_vec(4), k in 1usize..=3) {
        let xs = kron_vec(&x, &ones_vec(k));
        for (u, v) in [(&x, &xs), (&x, &y)] {
            let direct = equivalent_vec(u, v, VecRelation::Bar, 1e-9).unwrap();
            let by_rep = equivalent_vec_by_reduction(u, v, VecRelation::Bar, 1e-9);
            prop_assert_eq!(direct, by_rep);
        }
        prop_assert!(equivalent_vec(&x, &xs, VecRelation::Bar, 1e-9).unwrap());
    }
}

// ---------------------------------------------------------------------------
// Geometry: metric axioms, orthogonal projection
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn metric_axioms(x in any_vec(6), y in any_vec(6), z in any_vec(6)) {
        prop_assert!((dist(&x, &y).unwrap() - dist(&y, &x).unwrap()).abs() < 1e-12);
        prop_assert!(
            dist(&x, &z).unwrap() <= dist(&x, &y).unwrap() + dist(&y, &z).unwrap() + 1e-12
        );
    }

    #[test]
    fn zero_distance_iff_equivalent(x in any_vec(4), y in any_vec(4), k in 1usize..=3) {
        let xs = kron_vec(&x, &ones_vec(k));
        prop_assert!(dist(&x, &xs).unwrap() < 1e-12);
        let d = dist(&x, &y).unwrap();
        let eq = equivalent_vec(&x, &y, VecRelation::Bar, 1e-9).unwrap();
        prop_assert_eq!(d < 1e-9, eq);
    }

    #[test]
    fn inner_respects_equivalence(x in any_vec(4), y in any_vec(4), k in 1usize..=3, r in 1usize..=3) {
        let a = inner(&x, &y).unwrap();
        let b = inner(&kron_vec(&x, &ones_vec(k)), &kron_vec(&y, &ones_vec(r))).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn projection_pythagoras_with_third_point(xi in any_vec(6), n in 1usize..=6, zd in entries(6)) {
        let (x0, res) = project(&xi, n).unwrap();
        prop_assert!(inner(&res, &x0).unwrap().abs() <= 1e-10 * (1.0 + inner(&xi, &xi).unwrap()));
        let z = HVec::new(zd[..n].to_vec()).unwrap();
        let lhs = norm(&vec_bar(&xi, &z, Sign::Minus).unwrap()).unwrap().powi(2);
        let rhs = norm(&vec_bar(&xi, &x0, Sign::Minus).unwrap()).unwrap().powi(2)
            + norm(&z.sub(&x0).unwrap()).unwrap().powi(2);
        prop_assert!((lhs - rhs).abs() < 1e-9 * (1.0 + lhs.abs()));
    }
}

// ---------------------------------------------------------------------------
// Lie / ring structure of the non-square algebra
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn bracket_bilinear_and_skew(
        (a, b) in (1usize..=3, 1usize..=4).prop_flat_map(|(m, n)| (mat(m, n), mat(m, n))),
        s in -2.0..2.0f64,
        w in any::<bool>(),
    ) {
        let zero = Mat::zeros(a.rows(), a.cols());
        prop_assert!(close(&bracket(&a, &a, BracketKind::Dk, w).unwrap(), &zero, 1e-12));
        let lhs = bracket(&a.scale(s), &b, BracketKind::Dk, w).unwrap();
        let rhs = bracket(&a, &b, BracketKind::Dk, w).unwrap().scale(s);
        prop_assert!(close(&lhs, &rhs, 1e-12));
        let anti = bracket(&b, &a, BracketKind::Dk, w).unwrap().scale(-1.0);
        prop_assert!(close(&bracket(&a, &b, BracketKind::Dk, w).unwrap(), &anti, 1e-12));
    }

    #[test]
    fn jacobi_identity(
        (a, b, c) in (1usize..=3, 1usize..=4)
            .prop_flat_map(|(m, n)| (mat(m, n), mat(m, n), mat(m, n))),
        w in any::<bool>(),
    ) {
        let k = BracketKind::Dk;
        let term = |x: &Mat, y: &Mat, z: &Mat| {
            bracket(x, &bracket(y, z, k, w).unwrap(), k, w).unwrap()
        };
        let sum = term(&a, &b, &c)
            .add(&term(&b, &c, &a)).unwrap()
            .add(&term(&c, &a, &b)).unwrap();
        prop_assert!(close(&sum, &Mat::zeros(a.rows(), a.cols()), 1e-9));
    }

    #[test]
    fn brackets_are_trace_free(
        (a, b) in (1usize..=3, 1usize..=4).prop_flat_map(|(m, n)| (mat(m, n), mat(m, n))),
        w in any::<bool>(),
    ) {
        let c = bracket(&a, &b, BracketKind::Dk, w).unwrap();
        prop_assert!(ideal_member(&c, Ideal::Q, w, 1e-10).unwrap());
    }

    #[test]
    fn inflation_is_bracket_homomorphism(
        (a, b) in (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| (mat(m, n), mat(m, n))),
        p in 1usize..=3, q in 1usize..=3,
    ) {
        let lift = |x: &Mat| kron(x, &e_mat(p, q)).unwrap();
        let lhs = bracket(&lift(&a), &lift(&b), BracketKind::Dk, true).unwrap();
        let rhs = lift(&bracket(&a, &b, BracketKind::Dk, true).unwrap());
        prop_assert!(close(&lhs, &rhs, 1e-9));
    }

    #[test]
    fn extended_ring_mul_associative(
        (a0, b0, c0) in (1usize..=3, 1usize..=3)
            .prop_flat_map(|(m, n)| (mat(m, n), mat(m, n), mat(m, n))),
        sa in -2.0..2.0f64, sb in -2.0..2.0f64, sc in -2.0..2.0f64,
        w in any::<bool>(),
    ) {
        let x = ExtMat::new(sa, a0);
        let y = ExtMat::new(sb, b0);
        let z = ExtMat::new(sc, c0);
        let lhs = ext_mul(&ext_mul(&x, &y, w).unwrap(), &z, w).unwrap();
        let rhs = ext_mul(&x, &ext_mul(&y, &z, w).unwrap(), w).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, 1e-9));
        // multiplicative identity
        let one = ExtMat::one(x.shape().rows, x.shape().cols);
        prop_assert!(ext_mul(&x, &one, w).unwrap().approx_eq(&x, 1e-12));
    }

    #[test]
    fn hyper_gl_associative(a0 in mat(2, 3), b0 in mat(3, 2), c0 in mat(2, 2)) {
        let x = ExtMat::new(1.0, a0);
        let y = ExtMat::new(1.0, b0);
        let z = ExtMat::new(1.0, c0);
        let lhs = hyper_gl_mul(&hyper_gl_mul(&x, &y).unwrap(), &z).unwrap();
        let rhs = hyper_gl_mul(&x, &hyper_gl_mul(&y, &z).unwrap()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn hyper_gl_inverse_reverses_factors(a0 in mat(2, 3), b0 in mat(3, 2)) {
        // keep the bodies small so both factors are invertible
        let x = ExtMat::new(1.0, a0.scale(0.15));
        let y = ExtMat::new(1.0, b0.scale(0.15));
        let xi = ext_invert(&x, InvertMethod::LinearSolve, true).unwrap();
        let yi = ext_invert(&y, InvertMethod::LinearSolve, true).unwrap();
        let z = hyper_gl_mul(&x, &y).unwrap();
        let w = hyper_gl_mul(&yi, &xi).unwrap();
        let prod = hyper_gl_mul(&z, &w).unwrap();
        let (m, n) = (prod.shape().rows, prod.shape().cols);
        prop_assert!(prod.approx_eq(&ExtMat::one(m, n), 1e-7));
    }
}

// ---------------------------------------------------------------------------
// Module laws: matrix action distributes over vector addition
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn weighted_dk_action_distributes(m in any_mat(4), x in any_vec(4), y in any_vec(4)) {
        // the normalized-weight action lands in a fixed dimension; the sum
        // rule holds on the nose
        let sum = vec_hat(&x, &y, Sign::Plus).unwrap();
        let lhs = dk_stp(&m, &sum.as_col(), true).unwrap();
        let rhs = dk_stp(&m, &x.as_col(), true).unwrap()
            .add(&dk_stp(&m, &y.as_col(), true).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-9));
    }

    #[test]
    fn stp_actions_distribute_up_to_equivalence(
        m in sq_mat(3), x in any_vec(4), y in any_vec(4),
    ) {
        // ones-stretch actions agree with the summed actions after reduction
        let sum = vec_bar(&x, &y, Sign::Plus).unwrap();
        for kind in [MvKind::Type1, MvKind::Type2] {
            let lhs = mv_stp(&m, &sum, kind).unwrap();
            let rhs = vec_bar(
                &mv_stp(&m, &x, kind).unwrap(),
                &mv_stp(&m, &y, kind).unwrap(),
                Sign::Plus,
            ).unwrap();
            prop_assert!(equivalent_vec(&lhs, &rhs, VecRelation::Bar, 1e-9).unwrap());
        }
    }

    #[test]
    fn action_linear_in_the_matrix(
        (m1, m2) in (1usize..=4, 1usize..=4).prop_flat_map(|(m, n)| (mat(m, n), mat(m, n))),
        x in any_vec(4),
        w in any::<bool>(),
    ) {
        let lhs = dk_stp(&m1.add(&m2).unwrap(), &x.as_col(), w).unwrap();
        let rhs = dk_stp(&m1, &x.as_col(), w).unwrap()
            .add(&dk_stp(&m2, &x.as_col(), w).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, 1e-12));
    }

    #[test]
    fn vv_stp_bilinear_and_symmetric(x in any_vec(4), y in any_vec(4), s in -2.0..2.0f64) {
        prop_assert!((vv_stp(&x, &y).unwrap() - vv_stp(&y, &x).unwrap()).abs() < 1e-12);
        prop_assert!(
            (vv_stp(&x.scale(s), &y).unwrap() - s * vv_stp(&x, &y).unwrap()).abs() < 1e-10
        );
    }
}
