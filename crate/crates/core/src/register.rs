//! Mixed-radix registers of qubits and qutrits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported register size. Six qutrits (dimension 729) covers the
/// five-control ladder plus target; anything larger is rejected up front.
pub const MAX_SITES: usize = 6;

/// An ordered list of local dimensions, each 2 or 3. Site 0 is the most
/// significant digit of a basis index, so |q1 q2 q3> maps to the integer
/// q1*d2*d3 + q2*d3 + q3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuditRegister {
    dims: Vec<usize>,
}

impl QuditRegister {
    /// Builds a register from explicit local dimensions.
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::EmptyRegister);
        }
        if dims.len() > MAX_SITES {
            return Err(Error::RegisterTooLarge(dims.len()));
        }
        for (site, &dim) in dims.iter().enumerate() {
            if dim != 2 && dim != 3 {
                return Err(Error::InvalidDimension { site, dim });
            }
        }
        Ok(Self {
            dims: dims.to_vec(),
        })
    }

    /// Register of `n` qutrits.
    pub fn qutrits(n: usize) -> Result<Self> {
        Self::new(&vec![3; n])
    }

    /// Register of `n` qubits.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(&vec![2; n])
    }

    pub fn num_sites(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Local dimension of one site.
    pub fn dim(&self, site: usize) -> usize {
        self.dims[site]
    }

    /// Full Hilbert-space dimension (product of local dimensions).
    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Index stride of `site`: the product of all dimensions after it.
    pub fn stride(&self, site: usize) -> usize {
        self.dims[site + 1..].iter().product()
    }

    /// Basis index for a digit string, site 0 most significant.
    pub fn index_of(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.dims.len() {
            return Err(Error::DigitCountMismatch {
                len: digits.len(),
                expected: self.dims.len(),
            });
        }
        let mut index = 0;
        for (site, (&digit, &dim)) in digits.iter().zip(&self.dims).enumerate() {
            if digit >= dim {
                return Err(Error::DigitOutOfRange { site, digit, dim });
            }
            index = index * dim + digit;
        }
        Ok(index)
    }

    /// Digit string of a basis index.
    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.dims.len()];
        for site in (0..self.dims.len()).rev() {
            digits[site] = index % self.dims[site];
            index /= self.dims[site];
        }
        digits
    }

    /// Digit of `index` at one site without expanding the full string.
    pub fn digit_at(&self, index: usize, site: usize) -> usize {
        (index / self.stride(site)) % self.dims[site]
    }

    /// True when every digit of `index` is 0 or 1.
    pub fn is_qubit_index(&self, index: usize) -> bool {
        (0..self.dims.len()).all(|site| self.digit_at(index, site) < 2)
    }

    /// All basis indices whose digits are 0/1 only, in increasing order.
    pub fn qubit_indices(&self) -> Vec<usize> {
        (0..self.total_dim())
            .filter(|&i| self.is_qubit_index(i))
            .collect()
    }

    /// Formats a basis index as its digit string, e.g. 5 -> "012".
    pub fn format_index(&self, index: usize) -> String {
        self.digits_of(index)
            .iter()
            .map(|d| char::from(b'0' + *d as u8))
            .collect()
    }
}
