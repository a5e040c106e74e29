//! Dense state vectors over mixed qubit/qutrit registers.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::register::QuditRegister;
use crate::tolerance::Tolerances;
use crate::unitary::{Unitary, C64};

/// A normalized pure state on a `QuditRegister`. Amplitudes are stored in
/// basis-index order (site 0 most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    register: QuditRegister,
    amps: Vec<C64>,
}

/// Builds the computational basis state with the given digits.
pub fn basis_state(register: &QuditRegister, digits: &[usize]) -> Result<StateVector> {
    StateVector::basis_state(register, digits)
}

impl StateVector {
    pub fn basis_state(register: &QuditRegister, digits: &[usize]) -> Result<Self> {
        let index = register.index_of(digits)?;
        Ok(Self::basis_index(register, index))
    }

    /// Basis state from a flat index, which must be in range.
    pub fn basis_index(register: &QuditRegister, index: usize) -> Self {
        let mut amps = vec![C64::new(0.0, 0.0); register.total_dim()];
        amps[index] = C64::new(1.0, 0.0);
        Self {
            register: register.clone(),
            amps,
        }
    }

    /// Wraps an amplitude vector, validating length and norm.
    pub fn from_amplitudes(
        register: &QuditRegister,
        amps: Vec<C64>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if amps.len() != register.total_dim() {
            return Err(Error::StateLengthMismatch {
                len: amps.len(),
                expected: register.total_dim(),
            });
        }
        let state = Self {
            register: register.clone(),
            amps,
        };
        let norm = state.norm();
        if (norm - 1.0).abs() > tol.normalization {
            return Err(Error::NotNormalized { norm });
        }
        Ok(state)
    }

    pub fn register(&self) -> &QuditRegister {
        &self.register
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &Self) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Euclidean distance to another state on the same register.
    pub fn distance(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Probability of finding `site` at `level`.
    pub fn population(&self, site: usize, level: usize) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(index, _)| self.register.digit_at(*index, site) == level)
            .map(|(_, amp)| amp.norm_sqr())
            .sum()
    }

    /// Norm of the component outside the all-qubit-digit subspace.
    pub fn outside_qubit_norm(&self) -> f64 {
        // An all-qubit register leaves the sum empty, which is -0.0; adding
        // +0.0 keeps the result a positive zero.
        (self
            .amps
            .iter()
            .enumerate()
            .filter(|(index, _)| !self.register.is_qubit_index(*index))
            .map(|(_, amp)| amp.norm_sqr())
            .sum::<f64>()
            + 0.0)
            .sqrt()
    }

    fn site_offsets(&self, sites: &[usize]) -> Result<(usize, Vec<usize>)> {
        let num_sites = self.register.num_sites();
        let mut seen = vec![false; num_sites];
        for &site in sites {
            if site >= num_sites || seen[site] {
                return Err(Error::BadSites(sites.to_vec()));
            }
            seen[site] = true;
        }
        let local_dims: Vec<usize> = sites.iter().map(|&s| self.register.dim(s)).collect();
        let local_dim: usize = local_dims.iter().product();
        // offsets[l] = flat-index offset of local basis state l, with the
        // first listed site as the most significant local digit.
        let mut offsets = vec![0usize; local_dim];
        for (l, offset) in offsets.iter_mut().enumerate() {
            let mut rem = l;
            let mut acc = 0usize;
            for (k, &site) in sites.iter().enumerate() {
                let trailing: usize = local_dims[k + 1..].iter().product();
                let digit = rem / trailing;
                rem %= trailing;
                acc += digit * self.register.stride(site);
            }
            *offset = acc;
        }
        Ok((local_dim, offsets))
    }

    /// Indices whose digits at every listed site are zero; each is the base
    /// of one local block.
    fn block_bases(&self, sites: &[usize]) -> Vec<usize> {
        (0..self.register.total_dim())
            .filter(|&index| sites.iter().all(|&s| self.register.digit_at(index, s) == 0))
            .collect()
    }

    /// Applies a (not necessarily unitary) local matrix to the listed sites,
    /// first site most significant. No normalization is enforced.
    pub fn apply_matrix(&mut self, matrix: &Array2<C64>, sites: &[usize]) -> Result<()> {
        let (local_dim, offsets) = self.site_offsets(sites)?;
        if matrix.nrows() != local_dim || matrix.ncols() != local_dim {
            return Err(Error::MatrixDimension {
                expected: local_dim,
                found: matrix.nrows(),
            });
        }
        let mut scratch = vec![C64::new(0.0, 0.0); local_dim];
        for base in self.block_bases(sites) {
            for (l, slot) in scratch.iter_mut().enumerate() {
                *slot = self.amps[base + offsets[l]];
            }
            for (r, &offset) in offsets.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for (c, &amp) in scratch.iter().enumerate() {
                    acc += matrix[(r, c)] * amp;
                }
                self.amps[base + offset] = acc;
            }
        }
        Ok(())
    }

    /// Applies a unitary gate to the listed sites in listed order.
    pub fn apply_gate(&mut self, gate: &Unitary, sites: &[usize]) -> Result<()> {
        self.apply_matrix(gate.as_array(), sites)
    }

    /// Rescales the amplitudes to unit norm (no-op on the zero vector) and
    /// returns the norm they had before scaling.
    pub fn renormalize(&mut self) -> f64 {
        let norm = self.norm();
        if norm > 0.0 {
            let inv = C64::new(1.0 / norm, 0.0);
            for amp in &mut self.amps {
                *amp *= inv;
            }
        }
        norm
    }
}
