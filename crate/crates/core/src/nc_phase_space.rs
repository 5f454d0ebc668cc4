//! Noncommutative phase space: parameter duals, the Bopp shift, induced
//! brackets and the generalized symplectic matrix.

use nalgebra::{Matrix3, Matrix6};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::Vector3;

/// Symmetrization convention used for the mixed block of [`build_symplectic`].
pub const SYMMETRIZATION_CONVENTION: &str = "T_(ij) = (T_ij + T_ji)/2";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NCParams {
    /// Space noncommutativity, length².
    pub theta: Vector3,
    /// Momentum noncommutativity, momentum².
    pub eta: Vector3,
}

/// A_ij = ε_ijk a_k
pub fn dual_matrix(a: &Vector3) -> Matrix3<f64> {
    Matrix3::new(0.0, a.z, -a.y, -a.z, 0.0, a.x, a.y, -a.x, 0.0)
}

impl NCParams {
    pub fn new(theta: Vector3, eta: Vector3) -> Result<Self> {
        if theta.iter().chain(eta.iter()).any(|v| !v.is_finite()) {
            return Err(invalid("nc", "NC parameters must be finite"));
        }
        Ok(Self { theta, eta })
    }

    pub fn commutative() -> Self {
        Self {
            theta: Vector3::zeros(),
            eta: Vector3::zeros(),
        }
    }

    pub fn space(theta: Vector3) -> Self {
        Self {
            theta,
            eta: Vector3::zeros(),
        }
    }

    pub fn momentum(eta: Vector3) -> Self {
        Self {
            theta: Vector3::zeros(),
            eta,
        }
    }

    pub fn theta_matrix(&self) -> Matrix3<f64> {
        dual_matrix(&self.theta)
    }

    pub fn eta_matrix(&self) -> Matrix3<f64> {
        dual_matrix(&self.eta)
    }

    /// True when only one of θ and η is nonzero (or both vanish).
    pub fn is_single_sector(&self) -> bool {
        self.theta == Vector3::zeros() || self.eta == Vector3::zeros()
    }

    pub fn negated(&self) -> Self {
        Self {
            theta: -self.theta,
            eta: -self.eta,
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            theta: self.theta * s,
            eta: self.eta * s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhasePoint {
    pub x: Vector3,
    pub p: Vector3,
}

impl PhasePoint {
    pub fn new(x: Vector3, p: Vector3) -> Self {
        Self { x, p }
    }
}

/// The linear map (x', p') ↦ (x, p) as a 6×6 matrix.
pub fn bopp_matrix(nc: &NCParams, hbar: f64) -> Matrix6<f64> {
    let mut m = Matrix6::identity();
    let half = 0.5 / hbar;
    m.fixed_view_mut::<3, 3>(0, 3).copy_from(&(-nc.theta_matrix() * half));
    m.fixed_view_mut::<3, 3>(3, 0).copy_from(&(nc.eta_matrix() * half));
    m
}

/// x_i = x'_i − θ_ij p'_j/(2ħ),  p_i = p'_i + η_ij x'_j/(2ħ)
pub fn bopp_shift(point: &PhasePoint, nc: &NCParams, hbar: f64) -> PhasePoint {
    let half = 0.5 / hbar;
    PhasePoint {
        x: point.x - nc.theta_matrix() * point.p * half,
        p: point.p + nc.eta_matrix() * point.x * half,
    }
}

/// Commutator coefficients: [a_i, b_j] = i·table_ij.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BracketTable {
    pub xx: Matrix3<f64>,
    pub pp: Matrix3<f64>,
    pub xp: Matrix3<f64>,
}

impl BracketTable {
    /// The printed algebra: θ_ij, η_ij and ħ(δ_ij + θ_ik η_jk/(4ħ²)).
    pub fn expected(nc: &NCParams, hbar: f64) -> Self {
        let th = nc.theta_matrix();
        let et = nc.eta_matrix();
        let mut xp = Matrix3::identity() * hbar;
        for i in 0..3 {
            for j in 0..3 {
                let s: f64 = (0..3).map(|k| th[(i, k)] * et[(j, k)]).sum();
                xp[(i, j)] += s / (4.0 * hbar);
            }
        }
        Self { xx: th, pp: et, xp }
    }

    /// Largest entrywise difference relative to the largest entry of `other`.
    pub fn max_relative_diff(&self, other: &Self) -> f64 {
        let scale = [other.xx, other.pp, other.xp]
            .iter()
            .map(|m| m.amax())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        [self.xx - other.xx, self.pp - other.pp, self.xp - other.xp]
            .iter()
            .map(|m| m.amax())
            .fold(0.0, f64::max)
            / scale
    }
}

fn canonical_form() -> Matrix6<f64> {
    let mut j = Matrix6::zeros();
    j.fixed_view_mut::<3, 3>(0, 3).copy_from(&Matrix3::identity());
    j.fixed_view_mut::<3, 3>(3, 0).copy_from(&(-Matrix3::identity()));
    j
}

/// Canonical Poisson brackets of the Bopp-shifted linear coordinate
/// functions, multiplied by iħ.
pub fn verify_brackets(nc: &NCParams, hbar: f64) -> BracketTable {
    let m = bopp_matrix(nc, hbar);
    let pb = m * canonical_form() * m.transpose() * hbar;
    BracketTable {
        xx: pb.fixed_view::<3, 3>(0, 0).into(),
        pp: pb.fixed_view::<3, 3>(3, 3).into(),
        xp: pb.fixed_view::<3, 3>(0, 3).into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymplecticStructure {
    pub alpha_matrix: Matrix6<f64>,
    pub convention: &'static str,
}

/// Generalized symplectic matrix with blocks θ_ij/ħ, η_ij/ħ and
/// ±(δ_ij − θ_k(i η_j)l δ^kl/(4ħ²)).
pub fn build_symplectic(nc: &NCParams, hbar: f64) -> SymplecticStructure {
    let th = nc.theta_matrix();
    let et = nc.eta_matrix();
    let mut mixed = Matrix3::identity();
    for i in 0..3 {
        for j in 0..3 {
            let s: f64 = (0..3).map(|k| th[(k, i)] * et[(j, k)] + th[(k, j)] * et[(i, k)]).sum();
            mixed[(i, j)] -= 0.5 * s / (4.0 * hbar * hbar);
        }
    }
    let mut a = Matrix6::zeros();
    a.fixed_view_mut::<3, 3>(0, 0).copy_from(&(th / hbar));
    a.fixed_view_mut::<3, 3>(0, 3).copy_from(&mixed);
    a.fixed_view_mut::<3, 3>(3, 0).copy_from(&(-mixed));
    a.fixed_view_mut::<3, 3>(3, 3).copy_from(&(et / hbar));
    SymplecticStructure {
        alpha_matrix: a,
        convention: SYMMETRIZATION_CONVENTION,
    }
}

/// H^NC(x', p') = H(bopp_shift(x', p')).
pub fn nc_hamiltonian<H>(h: H, nc: NCParams, hbar: f64) -> impl Fn(&PhasePoint) -> f64
where
    H: Fn(&PhasePoint) -> f64,
{
    move |pt| h(&bopp_shift(pt, &nc, hbar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
        match (i, j, k) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
            _ => 0.0,
        }
    }

    #[test]
    fn dual_matrix_matches_contraction() {
        let a = Vector3::new(0.3, -1.1, 2.5);
        let m = dual_matrix(&a);
        for i in 0..3 {
            for j in 0..3 {
                let want: f64 = (0..3).map(|k| levi_civita(i, j, k) * a[k]).sum();
                assert_eq!(m[(i, j)], want);
            }
        }
        // θ_k = ½ ε_ijk θ_ij
        for k in 0..3 {
            let back: f64 = (0..3)
                .flat_map(|i| (0..3).map(move |j| (i, j)))
                .map(|(i, j)| 0.5 * levi_civita(i, j, k) * m[(i, j)])
                .sum();
            assert_eq!(back, a[k]);
        }
    }

    #[test]
    fn shift_examples() {
        let pt = PhasePoint::new(Vector3::new(1.0, 2.0, 3.0), Vector3::new(-0.5, 0.2, 0.9));
        assert_eq!(bopp_shift(&pt, &NCParams::commutative(), 1.0), pt);

        let p = 0.8;
        let th3 = 0.05;
        let out = bopp_shift(
            &PhasePoint::new(Vector3::zeros(), Vector3::new(p, 0.0, 0.0)),
            &NCParams::space(Vector3::new(0.0, 0.0, th3)),
            1.0,
        );
        assert_eq!(out.x, Vector3::new(0.0, th3 * p / 2.0, 0.0));
        assert_eq!(out.p, Vector3::new(p, 0.0, 0.0));
    }

    #[test]
    fn shift_matches_matrix_form() {
        let nc = NCParams::new(Vector3::new(0.1, -0.2, 0.3), Vector3::new(0.05, 0.4, -0.1)).unwrap();
        let pt = PhasePoint::new(Vector3::new(1.0, -2.0, 0.5), Vector3::new(0.3, 0.7, -1.2));
        let z = nalgebra::Vector6::new(pt.x.x, pt.x.y, pt.x.z, pt.p.x, pt.p.y, pt.p.z);
        let w = bopp_matrix(&nc, 1.3) * z;
        let out = bopp_shift(&pt, &nc, 1.3);
        for i in 0..3 {
            assert!((w[i] - out.x[i]).abs() < 1e-15);
            assert!((w[i + 3] - out.p[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn space_only_brackets() {
        let th3 = 0.7;
        let t = verify_brackets(&NCParams::space(Vector3::new(0.0, 0.0, th3)), 1.0);
        assert_eq!(t.xx[(0, 1)], th3);
        assert_eq!(t.xx[(1, 0)], -th3);
        assert_eq!(t.pp, Matrix3::zeros());
        assert_eq!(t.xp, Matrix3::identity());
    }

    #[test]
    fn momentum_only_brackets() {
        let e3 = 0.4;
        let t = verify_brackets(&NCParams::momentum(Vector3::new(0.0, 0.0, e3)), 1.0);
        assert_eq!(t.pp[(0, 1)], e3);
        assert_eq!(t.xx, Matrix3::zeros());
    }

    #[test]
    fn missing_correction_is_detected() {
        let nc = NCParams::new(Vector3::new(0.3, 0.1, -0.2), Vector3::new(0.2, -0.5, 0.4)).unwrap();
        let mut wrong = BracketTable::expected(&nc, 1.0);
        wrong.xp = Matrix3::identity();
        assert!(verify_brackets(&nc, 1.0).max_relative_diff(&wrong) > 1e-3);
    }

    #[test]
    fn symplectic_canonical_limit() {
        let a = build_symplectic(&NCParams::commutative(), 1.0).alpha_matrix;
        assert_eq!(a, canonical_form());
        let b = build_symplectic(&NCParams::space(Vector3::new(0.0, 0.0, 0.25)), 1.0).alpha_matrix;
        assert_eq!(b[(0, 1)], 0.25);
    }

    #[test]
    fn symplectic_mixed_block_is_symmetrized_bracket() {
        let hbar = 0.8;
        let nc = NCParams::new(Vector3::new(0.3, 0.1, -0.2), Vector3::new(0.2, -0.5, 0.4)).unwrap();
        let a = build_symplectic(&nc, hbar).alpha_matrix;
        let xp = verify_brackets(&nc, hbar).xp / hbar;
        let sym = (xp + xp.transpose()) * 0.5;
        let block: Matrix3<f64> = a.fixed_view::<3, 3>(0, 3).into();
        assert!((block - sym).amax() < 1e-15);
    }

    #[test]
    fn symplectic_first_order_matches_brackets() {
        let hbar = 1.0;
        let base = NCParams::new(Vector3::new(0.3, 0.1, -0.2), Vector3::new(0.2, -0.5, 0.4)).unwrap();
        for kappa in [1e-3, 1e-4] {
            let nc = base.scaled(kappa);
            let a = build_symplectic(&nc, hbar).alpha_matrix;
            let t = verify_brackets(&nc, hbar);
            let xx: Matrix3<f64> = a.fixed_view::<3, 3>(0, 0).into();
            let pp: Matrix3<f64> = a.fixed_view::<3, 3>(3, 3).into();
            let xp: Matrix3<f64> = a.fixed_view::<3, 3>(0, 3).into();
            assert_eq!(xx, t.xx);
            assert_eq!(pp, t.pp);
            // Mixed blocks differ only at second order.
            assert!((xp - t.xp).amax() < kappa * kappa);
        }
    }

    #[test]
    fn free_hamiltonian_under_momentum_shift() {
        let m = 1.7;
        let hbar = 1.0;
        let h = move |pt: &PhasePoint| pt.p.norm_squared() / (2.0 * m);
        let nc = NCParams::momentum(Vector3::new(0.0, 0.0, 0.35));
        let hnc = nc_hamiltonian(h, nc, hbar);
        let mut s = 7u64;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        for _ in 0..10 {
            let pt = PhasePoint::new(Vector3::new(next(), next(), next()), Vector3::new(next(), next(), next()));
            // η_ij x'_j = (x' × η)_i
            let want = (pt.p - nc.eta.cross(&pt.x) / (2.0 * hbar)).norm_squared() / (2.0 * m);
            assert!((hnc(&pt) - want).abs() < 1e-14);
        }
        let space = nc_hamiltonian(h, NCParams::space(Vector3::new(0.1, 0.2, 0.3)), hbar);
        let pt = PhasePoint::new(Vector3::new(0.4, 0.5, 0.6), Vector3::new(1.0, -2.0, 0.5));
        assert_eq!(space(&pt), h(&pt));
        let constant = nc_hamiltonian(|_: &PhasePoint| 4.2, nc, hbar);
        assert_eq!(constant(&pt), 4.2);
    }

    fn vec3() -> impl Strategy<Value = Vector3> {
        prop::array::uniform3(-1.0f64..1.0).prop_map(Vector3::from)
    }

    proptest! {
        #[test]
        fn brackets_match_printed_algebra(th in vec3(), et in vec3(), hbar in 0.1f64..10.0) {
            let nc = NCParams::new(th, et).unwrap();
            let got = verify_brackets(&nc, hbar);
            let want = BracketTable::expected(&nc, hbar);
            prop_assert!(got.max_relative_diff(&want) <= 1e-14);
        }

        #[test]
        fn symplectic_is_antisymmetric(th in vec3(), et in vec3(), hbar in 0.1f64..10.0) {
            let a = build_symplectic(&NCParams::new(th, et).unwrap(), hbar).alpha_matrix;
            prop_assert_eq!(a, -a.transpose());
        }

        #[test]
        fn shift_is_linear(x1 in vec3(), p1 in vec3(), x2 in vec3(), p2 in vec3(),
                           th in vec3(), et in vec3(), a in -2.0f64..2.0, b in -2.0f64..2.0) {
            let nc = NCParams::new(th, et).unwrap();
            let lhs = bopp_shift(&PhasePoint::new(x1 * a + x2 * b, p1 * a + p2 * b), &nc, 1.0);
            let s1 = bopp_shift(&PhasePoint::new(x1, p1), &nc, 1.0);
            let s2 = bopp_shift(&PhasePoint::new(x2, p2), &nc, 1.0);
            prop_assert!((lhs.x - (s1.x * a + s2.x * b)).amax() < 1e-13);
            prop_assert!((lhs.p - (s1.p * a + s2.p * b)).amax() < 1e-13);
        }

        #[test]
        fn inverse_residual_is_quadratic(x in vec3(), p in vec3(), th in vec3(), et in vec3()) {
            let pt = PhasePoint::new(x, p);
            let residual = |s: f64| {
                let nc = NCParams::new(th * s, et * s).unwrap();
                let back = bopp_shift(&bopp_shift(&pt, &nc, 1.0), &nc.negated(), 1.0);
                (back.x - pt.x).norm() + (back.p - pt.p).norm()
            };
            let (r1, r2) = (residual(1e-2), residual(5e-3));
            prop_assume!(r1 > 1e-12);
            prop_assert!((r1 / r2 - 4.0).abs() < 1e-3, "ratio {}", r1 / r2);
        }
    }
}
