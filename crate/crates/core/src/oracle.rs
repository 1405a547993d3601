//! Brute-force ground truth for the analytic modules.
//!
//! The Hamiltonian is assembled directly from Pauli operators on the `2^N`
//! spin product basis and diagonalized densely. Bit `l - 1` of a basis index
//! is the spin at site `l`; `0` is up, `1` is down (flipped).

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Result, XxError};
use crate::spectrum::ChainParams;

/// Largest chain the oracle will materialize.
pub const ORACLE_CAP: usize = 12;

/// Residual bound `‖Hv − λv‖` every returned eigenpair must satisfy.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Dense real symmetric `H = -Σ_i (J/2)(σˣ_i σˣ_{i+1} + σʸ_i σʸ_{i+1}) - B Σ_i σᶻ_i`
/// with open ends.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseHamiltonian {
    n: usize,
    matrix: DMatrix<f64>,
}

/// Ascending eigenvalues with orthonormal eigenvectors as matching columns.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

impl DenseHamiltonian {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.matrix * v
    }
}

pub fn build_hamiltonian(params: &ChainParams) -> Result<DenseHamiltonian> {
    build_hamiltonian_with_cap(params, ORACLE_CAP)
}

pub fn build_hamiltonian_with_cap(params: &ChainParams, cap: usize) -> Result<DenseHamiltonian> {
    let n = params.n;
    if n > cap {
        return Err(XxError::Size {
            what: "dense Hamiltonian",
            n,
            cap,
        });
    }
    let dim = 1usize << n;
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for s in 0..dim {
        // -B σᶻ: +1 for up (bit 0), -1 for down
        let down = s.count_ones() as f64;
        h[(s, s)] = -params.b * (n as f64 - 2.0 * down);
        // (σˣσˣ + σʸσʸ)/2 = σ⁺σ⁻ + σ⁻σ⁺ swaps antiparallel neighbours
        for i in 0..n.saturating_sub(1) {
            let pair = 0b11 << i;
            let bits = s & pair;
            if bits != 0 && bits != pair {
                let t = s ^ pair;
                h[(t, s)] -= params.j;
            }
        }
    }
    Ok(DenseHamiltonian { n, matrix: h })
}

/// Full eigensystem of a real symmetric matrix, eigenvalues ascending.
///
/// Fails when the matrix is not square or when any eigenpair misses
/// [`RESIDUAL_TOL`].
pub fn symmetric_eigen(matrix: &DMatrix<f64>) -> Result<Eigensystem> {
    if !matrix.is_square() {
        return Err(XxError::invalid(format!(
            "eigensolver needs a square matrix, got {}x{}",
            matrix.nrows(),
            matrix.ncols()
        )));
    }
    let dim = matrix.nrows();
    let eig = SymmetricEigen::try_new(matrix.clone(), f64::EPSILON, 0)
        .ok_or_else(|| XxError::Numerical("symmetric eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(dim, dim, |r, c| eig.eigenvectors[(r, order[c])]);

    let scale = matrix.amax().max(1.0);
    let residual = matrix * &vectors - &vectors * DMatrix::from_diagonal(&DVector::from_vec(values.clone()));
    for c in 0..dim {
        let norm = residual.column(c).norm();
        if norm.is_nan() || norm >= RESIDUAL_TOL * scale {
            return Err(XxError::Numerical(format!(
                "eigenpair {c} residual {norm:e} exceeds {RESIDUAL_TOL:e}"
            )));
        }
    }
    Ok(Eigensystem { values, vectors })
}

pub fn diagonalize(h: &DenseHamiltonian) -> Result<Eigensystem> {
    symmetric_eigen(&h.matrix)
}
