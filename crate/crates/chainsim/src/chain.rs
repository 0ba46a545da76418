//! Chain geometry, coupling tables, model selection and initial states.
//!
//! Spins are indexed 1..=N throughout the public API. All couplings are
//! angular frequencies; times are their reciprocal, so every observable
//! depends on the dimensionless product d*t.

use ndarray::Array2;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ChainError {
    #[error("chain must have at least 2 spins, got {0}")]
    InvalidChain(usize),
    #[error("coupling strength must be nonzero")]
    ZeroCoupling,
    #[error("power-law exponent must be positive, got {0}")]
    InvalidExponent(f64),
    #[error("spin index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("deviation state needs at least one nonzero weight")]
    EmptyState,
    #[error("duplicate spin index {0} in deviation state")]
    DuplicateIndex(usize),
    #[error("coupling matrix is not symmetric with zero diagonal")]
    InvalidMatrix,
}

/// Which two-body model is built over a coupling table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonianKind {
    /// Secular dipolar interaction: d_ij (σz σz − (σx σx + σy σy)/2).
    Dipolar,
    /// Flip-flop exchange: (d_ij/2)(σx σx + σy σy).
    Xy,
    /// Double-quantum interaction: (d_ij/2)(σx σx − σy σy).
    Dq,
}

impl HamiltonianKind {
    pub fn as_str(self) -> &'static str {
        match self {
            HamiltonianKind::Dipolar => "dipolar",
            HamiltonianKind::Xy => "xy",
            HamiltonianKind::Dq => "dq",
        }
    }
}

/// Symmetric N x N table of pair coupling strengths d_ij, zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingTable {
    n_spins: usize,
    d: Array2<f64>,
}

impl CouplingTable {
    /// Uniform nearest-neighbor couplings: d_ij = d for |i-j| = 1, else 0.
    pub fn nearest_neighbor(n: usize, d: f64) -> Result<Self, ChainError> {
        if n < 2 {
            return Err(ChainError::InvalidChain(n));
        }
        if d == 0.0 {
            return Err(ChainError::ZeroCoupling);
        }
        let mut m = Array2::zeros((n, n));
        for i in 0..n - 1 {
            m[[i, i + 1]] = d;
            m[[i + 1, i]] = d;
        }
        Ok(Self { n_spins: n, d: m })
    }

    /// Power-law couplings d_ij = d / |i-j|^exponent. The physical dipolar
    /// case is exponent = 3.
    pub fn dipolar(n: usize, d: f64, exponent: f64) -> Result<Self, ChainError> {
        if n < 2 {
            return Err(ChainError::InvalidChain(n));
        }
        if d == 0.0 {
            return Err(ChainError::ZeroCoupling);
        }
        if !(exponent > 0.0) {
            return Err(ChainError::InvalidExponent(exponent));
        }
        let mut m = Array2::zeros((n, n));
        for i in 0..n {
            for j in i + 1..n {
                let r = (j - i) as f64;
                let v = d / r.powf(exponent);
                m[[i, j]] = v;
                m[[j, i]] = v;
            }
        }
        Ok(Self { n_spins: n, d: m })
    }

    /// Wrap an explicit matrix, validating symmetry and zero diagonal.
    pub fn from_matrix(d: Array2<f64>) -> Result<Self, ChainError> {
        let n = d.nrows();
        if n < 2 || d.ncols() != n {
            return Err(ChainError::InvalidChain(n));
        }
        for i in 0..n {
            if d[[i, i]] != 0.0 {
                return Err(ChainError::InvalidMatrix);
            }
            for j in 0..i {
                if d[[i, j]] != d[[j, i]] {
                    return Err(ChainError::InvalidMatrix);
                }
            }
        }
        Ok(Self { n_spins: n, d })
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    /// Coupling between spins i and j (1-based).
    pub fn coupling(&self, i: usize, j: usize) -> f64 {
        self.d[[i - 1, j - 1]]
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.d
    }

    /// Some(d) when the table is exactly uniform nearest-neighbor.
    pub fn nearest_neighbor_strength(&self) -> Option<f64> {
        let n = self.n_spins;
        let d = self.d[[0, 1]];
        for i in 0..n {
            for j in i + 1..n {
                let expect = if j == i + 1 { d } else { 0.0 };
                if self.d[[i, j]] != expect {
                    return None;
                }
            }
        }
        Some(d)
    }

    /// Largest |i-j| with a nonzero coupling.
    pub fn max_range(&self) -> usize {
        let n = self.n_spins;
        let mut r = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.d[[i, j]] != 0.0 {
                    r = r.max(j - i);
                }
            }
        }
        r
    }
}

/// Traceless initial state written as a weighted sum of single-spin
/// z-polarizations, Σ_a w_a σ_z^a. Indices are 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationState {
    weights: Vec<(usize, f64)>,
}

impl DeviationState {
    /// Polarization entirely on spin `a`.
    pub fn single(a: usize) -> Self {
        Self {
            weights: vec![(a, 1.0)],
        }
    }

    /// σ_z^1 + σ_z^N, the state preparable with collective control.
    pub fn both_ends(n: usize) -> Self {
        Self {
            weights: vec![(1, 1.0), (n, 1.0)],
        }
    }

    pub fn new(weights: impl IntoIterator<Item = (usize, f64)>) -> Result<Self, ChainError> {
        let mut w: Vec<(usize, f64)> = weights.into_iter().filter(|&(_, v)| v != 0.0).collect();
        w.sort_by_key(|&(a, _)| a);
        if w.is_empty() {
            return Err(ChainError::EmptyState);
        }
        for pair in w.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(ChainError::DuplicateIndex(pair[0].0));
            }
        }
        Ok(Self { weights: w })
    }

    /// Check every index lies in 1..=n.
    pub fn validate_for(&self, n: usize) -> Result<(), ChainError> {
        for &(a, _) in &self.weights {
            if a == 0 || a > n {
                return Err(ChainError::IndexOutOfRange { index: a, n });
            }
        }
        Ok(())
    }

    /// (spin, weight) pairs, sorted by spin index.
    pub fn weights(&self) -> &[(usize, f64)] {
        &self.weights
    }

    pub fn label(&self) -> String {
        self.weights
            .iter()
            .map(|&(a, w)| {
                if w == 1.0 {
                    format!("sz{a}")
                } else {
                    format!("{w}*sz{a}")
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// Fermion mode grid of an open N-spin chain: k_n = pi*n/(N+1), n = 1..N.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeGrid {
    n_spins: usize,
    k: Vec<f64>,
}

impl ModeGrid {
    pub fn new(n: usize) -> Result<Self, ChainError> {
        if n < 2 {
            return Err(ChainError::InvalidChain(n));
        }
        let k = (1..=n)
            .map(|m| std::f64::consts::PI * m as f64 / (n + 1) as f64)
            .collect();
        Ok(Self { n_spins: n, k })
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn k_values(&self) -> &[f64] {
        &self.k
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn nearest_neighbor_two_spins() {
        let t = CouplingTable::nearest_neighbor(2, 1.0).unwrap();
        assert_eq!(t.matrix().as_slice().unwrap(), &[0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn nearest_neighbor_three_spins() {
        let t = CouplingTable::nearest_neighbor(3, 2.5).unwrap();
        assert_eq!(t.coupling(1, 2), 2.5);
        assert_eq!(t.coupling(2, 3), 2.5);
        assert_eq!(t.coupling(1, 3), 0.0);
    }

    #[test]
    fn nearest_neighbor_21_spins_has_20_bonds() {
        let t = CouplingTable::nearest_neighbor(21, 1.0).unwrap();
        let bonds = (1..21).filter(|&i| t.coupling(i, i + 1) != 0.0).count();
        assert_eq!(bonds, 20);
        assert_eq!(t.nearest_neighbor_strength(), Some(1.0));
        assert_eq!(t.max_range(), 1);
    }

    #[test]
    fn invalid_chain_rejected() {
        assert_eq!(
            CouplingTable::nearest_neighbor(1, 1.0),
            Err(ChainError::InvalidChain(1))
        );
    }

    #[test]
    fn dipolar_inverse_cube() {
        let t = CouplingTable::dipolar(3, 1.0, 3.0).unwrap();
        assert_abs_diff_eq!(t.coupling(1, 3), 1.0 / 8.0);
        let t = CouplingTable::dipolar(4, 8.0, 3.0).unwrap();
        assert_abs_diff_eq!(t.coupling(1, 4), 8.0 / 27.0);
    }

    #[test]
    fn dipolar_two_spins_equals_nn() {
        let a = CouplingTable::dipolar(2, 1.0, 3.0).unwrap();
        let b = CouplingTable::nearest_neighbor(2, 1.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn dipolar_long_range_decays_with_exponent() {
        let soft = CouplingTable::dipolar(6, 1.0, 3.0).unwrap();
        let hard = CouplingTable::dipolar(6, 1.0, 30.0).unwrap();
        for i in 1..=6 {
            for j in i + 2..=6 {
                assert!(hard.coupling(i, j) < soft.coupling(i, j));
                assert!(hard.coupling(i, j) < 1e-9);
            }
        }
    }

    #[test]
    fn from_matrix_rejects_asymmetric() {
        let mut m = Array2::zeros((3, 3));
        m[[0, 1]] = 1.0;
        assert_eq!(CouplingTable::from_matrix(m), Err(ChainError::InvalidMatrix));
    }

    #[test]
    fn mode_grid_three_spins() {
        let g = ModeGrid::new(3).unwrap();
        let expect = [PI / 4.0, PI / 2.0, 3.0 * PI / 4.0];
        for (k, e) in g.k_values().iter().zip(expect) {
            assert_abs_diff_eq!(*k, e, epsilon = 1e-15);
        }
    }

    #[test]
    fn mode_grid_two_spins() {
        let g = ModeGrid::new(2).unwrap();
        assert_abs_diff_eq!(g.k_values()[0], PI / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g.k_values()[1], 2.0 * PI / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn mode_grid_21_middle_mode() {
        let g = ModeGrid::new(21).unwrap();
        assert_eq!(g.k_values().len(), 21);
        assert_abs_diff_eq!(g.k_values()[10], PI / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn deviation_state_rejects_empty_and_duplicates() {
        assert_eq!(DeviationState::new([]), Err(ChainError::EmptyState));
        assert_eq!(
            DeviationState::new([(1, 0.0)]),
            Err(ChainError::EmptyState)
        );
        assert_eq!(
            DeviationState::new([(2, 1.0), (2, 0.5)]),
            Err(ChainError::DuplicateIndex(2))
        );
    }

    #[test]
    fn deviation_state_bounds() {
        let s = DeviationState::both_ends(21);
        assert!(s.validate_for(21).is_ok());
        assert_eq!(
            s.validate_for(5),
            Err(ChainError::IndexOutOfRange { index: 21, n: 5 })
        );
    }

    proptest! {
        #[test]
        fn tables_symmetric_zero_diagonal(n in 2usize..30, d in 0.1f64..10.0, e in 0.5f64..6.0) {
            for t in [
                CouplingTable::nearest_neighbor(n, d).unwrap(),
                CouplingTable::dipolar(n, d, e).unwrap(),
            ] {
                let m = t.matrix();
                for i in 0..n {
                    prop_assert_eq!(m[[i, i]], 0.0);
                    for j in 0..n {
                        prop_assert_eq!(m[[i, j]], m[[j, i]]);
                    }
                }
            }
        }

        #[test]
        fn mode_grid_symmetric_about_half_pi(n in 2usize..200) {
            let g = ModeGrid::new(n).unwrap();
            let k = g.k_values();
            prop_assert!(k.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(k.iter().all(|&x| x > 0.0 && x < PI));
            for i in 0..n {
                prop_assert!((k[i] + k[n - 1 - i] - PI).abs() < 1e-12);
            }
        }
    }
}
