//! Pauli and Dirac matrices in the standard (Dirac) representation.
//!
//! γ₀ = diag(I, −I) and αᵢ = [[0, σᵢ], [σᵢ, 0]]. Entries are 0, ±1 or ±i,
//! so the Clifford relations hold with exact floating-point equality.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix of dimension 2 or 4, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::UnsupportedMatrixDim(dim));
        }
        Ok(Self {
            dim,
            entries: vec![ZERO; dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[&[C64]]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zeros(dim)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|v| v * s).collect(),
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let n = self.dim;
        let mut out = Self::zeros(n)?;
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += self[(i, k)] * rhs[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.zip(rhs, |a, b| a + b))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.zip(rhs, |a, b| a - b))
    }

    /// Matrix–spinor product; only defined for 4×4 matrices.
    pub fn apply(&self, s: &Spinor4) -> Result<Spinor4> {
        if self.dim != 4 {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: 4,
            });
        }
        let mut out = [ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..4 {
                *o += self[(i, j)] * s.0[j];
            }
        }
        Ok(Spinor4(out))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|v| *v == ZERO)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        Ok(())
    }

    fn zip(&self, rhs: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(*a, *b)).collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.dim + j]
    }
}

// Operator impls panic on dimension mismatch; use the `try_*` forms when
// dimensions are not statically known.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: Self) -> ComplexMatrix {
        self.try_mul(rhs).expect("matrix dimensions must match")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: Self) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix dimensions must match")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: Self) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix dimensions must match")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale(-ONE)
    }
}

/// Four-component Dirac spinor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor4(pub [C64; 4]);

impl Spinor4 {
    pub const ZERO: Spinor4 = Spinor4([ZERO; 4]);

    pub fn from_blocks(upper: [C64; 2], lower: [C64; 2]) -> Self {
        Spinor4([upper[0], upper[1], lower[0], lower[1]])
    }

    /// ⟨self|other⟩ = self† · other
    pub fn inner(&self, other: &Spinor4) -> C64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: C64) -> Self {
        Spinor4(self.0.map(|c| c * s))
    }
}

impl Add for Spinor4 {
    type Output = Spinor4;
    fn add(self, rhs: Self) -> Spinor4 {
        Spinor4(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for Spinor4 {
    type Output = Spinor4;
    fn sub(self, rhs: Self) -> Spinor4 {
        Spinor4(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Mul<C64> for Spinor4 {
    type Output = Spinor4;
    fn mul(self, s: C64) -> Spinor4 {
        self.scale(s)
    }
}

fn check_index(i: usize) -> Result<()> {
    if (1..=3).contains(&i) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange(i))
    }
}

/// Pauli matrix σᵢ, i ∈ {1, 2, 3}.
pub fn pauli(i: usize) -> Result<ComplexMatrix> {
    check_index(i)?;
    let rows: [[C64; 2]; 2] = match i {
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        _ => [[ONE, ZERO], [ZERO, -ONE]],
    };
    ComplexMatrix::from_rows(&[&rows[0], &rows[1]])
}

fn block(tl: &ComplexMatrix, tr: &ComplexMatrix, bl: &ComplexMatrix, br: &ComplexMatrix) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4).expect("4 is supported");
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = tl[(i, j)];
            m[(i, j + 2)] = tr[(i, j)];
            m[(i + 2, j)] = bl[(i, j)];
            m[(i + 2, j + 2)] = br[(i, j)];
        }
    }
    m
}

/// Dirac αᵢ = γ⁰γᵢ.
pub fn dirac_alpha(i: usize) -> Result<ComplexMatrix> {
    let s = pauli(i)?;
    let z = ComplexMatrix::zeros(2)?;
    Ok(block(&z, &s, &s, &z))
}

pub fn dirac_gamma0() -> ComplexMatrix {
    let id = ComplexMatrix::identity(2).expect("2 is supported");
    let z = ComplexMatrix::zeros(2).expect("2 is supported");
    block(&id, &z, &z, &(-&id))
}

/// {a, b} = ab + ba
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.try_mul(b)?.try_add(&b.try_mul(a)?)
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.try_mul(b)?.try_sub(&b.try_mul(a)?)
}

/// The three αᵢ, cached as a fixed array for hot loops.
pub fn alpha_triplet() -> [ComplexMatrix; 3] {
    [1, 2, 3].map(|i| dirac_alpha(i).expect("valid index"))
}

/// c·α·p + γ₀mc², the free Dirac Hamiltonian at momentum p.
pub fn free_dirac_hamiltonian(p: [f64; 3], mass: f64, c: f64) -> ComplexMatrix {
    let alphas = alpha_triplet();
    let mut h = dirac_gamma0().scale(C64::from(mass * c * c));
    for (a, pi) in alphas.iter().zip(p) {
        h = &h + &a.scale(C64::from(c * pi));
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_three_is_diagonal() {
        let s3 = pauli(3).unwrap();
        assert_eq!(s3[(0, 0)], ONE);
        assert_eq!(s3[(1, 1)], -ONE);
        assert_eq!(s3[(0, 1)], ZERO);
    }

    #[test]
    fn pauli_su2_commutator() {
        let c = commutator(&pauli(1).unwrap(), &pauli(2).unwrap()).unwrap();
        assert_eq!(c, pauli(3).unwrap().scale(C64::new(0.0, 2.0)));
    }

    #[test]
    fn pauli_involution() {
        let id = ComplexMatrix::identity(2).unwrap();
        for i in 1..=3 {
            let s = pauli(i).unwrap();
            assert_eq!(&s * &s, id);
        }
    }

    #[test]
    fn index_out_of_range() {
        assert_eq!(pauli(0), Err(Error::IndexOutOfRange(0)));
        assert_eq!(dirac_alpha(4), Err(Error::IndexOutOfRange(4)));
    }

    #[test]
    fn clifford_relations_exact() {
        let id = ComplexMatrix::identity(4).unwrap();
        let g0 = dirac_gamma0();
        for i in 1..=3 {
            let ai = dirac_alpha(i).unwrap();
            for j in 1..=3 {
                let aj = dirac_alpha(j).unwrap();
                let ac = anticommutator(&ai, &aj).unwrap();
                if i == j {
                    assert_eq!(ac, id.scale(C64::from(2.0)));
                } else {
                    assert!(ac.is_zero());
                }
            }
            assert!(anticommutator(&ai, &g0).unwrap().is_zero());
            assert_eq!(ai.adjoint(), ai);
        }
        assert_eq!(&g0 * &g0, id);
        assert_eq!(g0.adjoint(), g0);
    }

    #[test]
    fn anticommutator_examples() {
        let id = ComplexMatrix::identity(4).unwrap();
        assert_eq!(anticommutator(&id, &id).unwrap(), id.scale(C64::from(2.0)));
        let zero = ComplexMatrix::zeros(4).unwrap();
        assert!(anticommutator(&dirac_alpha(1).unwrap(), &zero).unwrap().is_zero());
        let err = anticommutator(&pauli(1).unwrap(), &id);
        assert_eq!(err, Err(Error::DimensionMismatch { left: 2, right: 4 }));
    }

    #[test]
    fn unsupported_dims() {
        assert_eq!(ComplexMatrix::zeros(3), Err(Error::UnsupportedMatrixDim(3)));
    }

    #[test]
    fn hamiltonian_squares_to_energy() {
        // (cα·p + γ₀mc²)² = (p²c² + m²c⁴)·I
        let p = [0.3, -0.2, 0.7];
        let h = free_dirac_hamiltonian(p, 1.0, 1.0);
        let e2 = 1.0 + p.iter().map(|x| x * x).sum::<f64>();
        let expect = ComplexMatrix::identity(4).unwrap().scale(C64::from(e2));
        assert!((&h * &h).max_abs_diff(&expect) < 1e-15);
    }
}
