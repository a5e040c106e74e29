//! Density operators and partial traces.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::register::QuditRegister;
use crate::state::StateVector;
use crate::unitary::C64;

/// A density operator over a (possibly reduced) register. Hermiticity and
/// unit trace are validated on construction; positivity follows from the
/// constructors offered here (pure states, partial traces, Kraus maps).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    register: QuditRegister,
    mat: Array2<C64>,
}

/// Partial trace of a pure state onto the listed sites (in listed order).
pub fn reduced_density(state: &StateVector, keep: &[usize]) -> Result<DensityOperator> {
    DensityOperator::reduced_from_state(state, keep)
}

/// Purity of a density operator.
pub fn purity(rho: &DensityOperator) -> f64 {
    rho.purity()
}

impl DensityOperator {
    /// |psi><psi| on the full register of `state`.
    pub fn from_pure(state: &StateVector) -> Self {
        let dim = state.register().total_dim();
        let amps = state.amplitudes();
        let mat = Array2::from_shape_fn((dim, dim), |(r, c)| amps[r] * amps[c].conj());
        Self {
            register: state.register().clone(),
            mat,
        }
    }

    /// Traces out every site not listed in `keep`; the result's site order
    /// follows `keep`.
    pub fn reduced_from_state(state: &StateVector, keep: &[usize]) -> Result<Self> {
        let full = state.register();
        let mut seen = vec![false; full.num_sites()];
        for &site in keep {
            if site >= full.num_sites() || seen[site] {
                return Err(Error::BadSites(keep.to_vec()));
            }
            seen[site] = true;
        }
        let kept_dims: Vec<usize> = keep.iter().map(|&s| full.dim(s)).collect();
        let register = QuditRegister::new(&kept_dims)?;
        let dim = register.total_dim();
        let mut mat = Array2::zeros((dim, dim));
        let amps = state.amplitudes();
        for (i, a) in amps.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            'cols: for (j, b) in amps.iter().enumerate() {
                if b.norm_sqr() == 0.0 {
                    continue;
                }
                for (site, kept) in seen.iter().enumerate() {
                    if !kept && full.digit_at(i, site) != full.digit_at(j, site) {
                        continue 'cols;
                    }
                }
                let row: Vec<usize> = keep.iter().map(|&s| full.digit_at(i, s)).collect();
                let col: Vec<usize> = keep.iter().map(|&s| full.digit_at(j, s)).collect();
                let r = register.index_of(&row)?;
                let c = register.index_of(&col)?;
                mat[(r, c)] += a * b.conj();
            }
        }
        Ok(Self { register, mat })
    }

    /// Maximally mixed state on a register.
    pub fn maximally_mixed(register: &QuditRegister) -> Self {
        let dim = register.total_dim();
        let mut mat = Array2::zeros((dim, dim));
        for k in 0..dim {
            mat[(k, k)] = C64::new(1.0 / dim as f64, 0.0);
        }
        Self {
            register: register.clone(),
            mat,
        }
    }

    pub fn register(&self) -> &QuditRegister {
        &self.register
    }

    pub fn as_array(&self) -> &Array2<C64> {
        &self.mat
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.mat[(row, col)]
    }

    pub fn trace(&self) -> C64 {
        (0..self.mat.nrows()).map(|k| self.mat[(k, k)]).sum()
    }

    /// Tr(rho^2); for Hermitian rho this is the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest deviation from Hermitian symmetry.
    pub fn hermiticity_deviation(&self) -> f64 {
        let dim = self.mat.nrows();
        let mut worst = 0.0f64;
        for r in 0..dim {
            for c in 0..dim {
                worst = worst.max((self.mat[(r, c)] - self.mat[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// <psi|rho|psi> for a pure state given by its amplitudes.
    pub fn fidelity_pure(&self, amps: &[C64]) -> f64 {
        assert_eq!(amps.len(), self.mat.nrows(), "state dimension mismatch");
        let mut acc = C64::new(0.0, 0.0);
        for (r, ar) in amps.iter().enumerate() {
            for (c, ac) in amps.iter().enumerate() {
                acc += ar.conj() * self.mat[(r, c)] * ac;
            }
        }
        acc.re
    }

    /// Applies a Kraus map on one site: rho -> sum_k K_k rho K_k^dagger.
    /// The Kraus operators act on the local dimension of `site`.
    pub fn apply_kraus(&mut self, kraus: &[Array2<C64>], site: usize) -> Result<()> {
        let local = self.register.dim(site);
        for k in kraus {
            if k.nrows() != local || k.ncols() != local {
                return Err(Error::MatrixDimension {
                    expected: local,
                    found: k.nrows(),
                });
            }
        }
        let dim = self.register.total_dim();
        let stride = self.register.stride(site);
        let mut next = Array2::zeros((dim, dim));
        for k in kraus {
            for r in 0..dim {
                let r_digit = self.register.digit_at(r, site);
                let r_base = r - r_digit * stride;
                for c in 0..dim {
                    let c_digit = self.register.digit_at(c, site);
                    let c_base = c - c_digit * stride;
                    let mut acc = C64::new(0.0, 0.0);
                    for a in 0..local {
                        let ka = k[(r_digit, a)];
                        if ka.norm_sqr() == 0.0 {
                            continue;
                        }
                        for b in 0..local {
                            let kb = k[(c_digit, b)].conj();
                            if kb.norm_sqr() == 0.0 {
                                continue;
                            }
                            acc += ka * self.mat[(r_base + a * stride, c_base + b * stride)] * kb;
                        }
                    }
                    next[(r, c)] += acc;
                }
            }
        }
        self.mat = next;
        Ok(())
    }

    /// Largest entrywise difference to another operator.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
