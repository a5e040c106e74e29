//! Dense complex matrices with unitarity checks.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Shorthand used throughout the crate.
pub type C64 = Complex64;

/// A dense square complex matrix. Constructors that promise unitarity
/// validate it; `from_array_unchecked` exists for intermediate products that
/// are checked by the caller.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    mat: Array2<C64>,
}

impl Unitary {
    pub fn identity(dim: usize) -> Self {
        Self {
            mat: Array2::eye(dim),
        }
    }

    /// Builds from an entry function and verifies unitarity.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> C64, tol: f64) -> Result<Self> {
        let mat = Array2::from_shape_fn((dim, dim), |(r, c)| f(r, c));
        Self::from_array(mat, tol)
    }

    /// Wraps an existing array and verifies unitarity.
    pub fn from_array(mat: Array2<C64>, tol: f64) -> Result<Self> {
        let u = Self { mat };
        let dev = u.unitarity_deviation();
        if dev > tol {
            return Err(Error::NotUnitary { deviation: dev });
        }
        Ok(u)
    }

    /// Wraps an array without checking it. For internal compositions whose
    /// factors were already validated.
    pub fn from_array_unchecked(mat: Array2<C64>) -> Self {
        Self { mat }
    }

    /// Permutation matrix taking basis state `col` to `perm[col]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let dim = perm.len();
        let mut mat = Array2::zeros((dim, dim));
        for (col, &row) in perm.iter().enumerate() {
            mat[(row, col)] = C64::new(1.0, 0.0);
        }
        Self { mat }
    }

    /// Diagonal matrix from its entries.
    pub fn diagonal(entries: &[C64]) -> Self {
        let dim = entries.len();
        let mut mat = Array2::zeros((dim, dim));
        for (k, &z) in entries.iter().enumerate() {
            mat[(k, k)] = z;
        }
        Self { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.mat[(row, col)]
    }

    pub fn as_array(&self) -> &Array2<C64> {
        &self.mat
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self {
            mat: self.mat.t().mapv(|z| z.conj()),
        }
    }

    /// Matrix product `self * rhs` (rhs acts first on column vectors).
    pub fn matmul(&self, rhs: &Self) -> Self {
        Self {
            mat: self.mat.dot(&rhs.mat),
        }
    }

    /// Kronecker product `self (x) rhs`; `self` indexes the more significant
    /// digit, consistent with site ordering in `QuditRegister`.
    pub fn kron(&self, rhs: &Self) -> Self {
        Self {
            mat: ndarray::linalg::kron(&self.mat, &rhs.mat),
        }
    }

    /// Largest entry of |U U† - I|.
    pub fn unitarity_deviation(&self) -> f64 {
        let product = self.mat.dot(&self.mat.t().mapv(|z| z.conj()));
        let dim = self.dim();
        let mut worst = 0.0f64;
        for r in 0..dim {
            for c in 0..dim {
                let expect = if r == c {
                    C64::new(1.0, 0.0)
                } else {
                    C64::new(0.0, 0.0)
                };
                worst = worst.max((product[(r, c)] - expect).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// Largest entrywise difference |self - other|.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in comparison");
        let mut worst = 0.0f64;
        for (a, b) in self.mat.iter().zip(other.mat.iter()) {
            worst = worst.max((a - b).norm());
        }
        worst
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim() && self.max_abs_diff(other) <= tol
    }

    /// Smallest max-entry distance to `other` over a global phase, with the
    /// phase fitted on the largest-magnitude entry of `other`.
    pub fn max_abs_diff_up_to_phase(&self, other: &Self) -> f64 {
        let mut pivot = (0, 0);
        let mut best = 0.0f64;
        for r in 0..other.dim() {
            for c in 0..other.dim() {
                let m = other.get(r, c).norm();
                if m > best {
                    best = m;
                    pivot = (r, c);
                }
            }
        }
        if best == 0.0 {
            return self.max_abs_diff(other);
        }
        let phase = self.get(pivot.0, pivot.1) / other.get(pivot.0, pivot.1);
        let phase = phase / C64::new(phase.norm(), 0.0).max_one();
        let rotated = Self {
            mat: other.mat.mapv(|z| z * phase),
        };
        self.max_abs_diff(&rotated)
    }
}

trait MaxOne {
    fn max_one(self) -> Self;
}

impl MaxOne for C64 {
    /// Guards the phase normalization against a zero pivot.
    fn max_one(self) -> Self {
        if self.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            self
        }
    }
}
