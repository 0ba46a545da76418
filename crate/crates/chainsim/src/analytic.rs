//! Closed-form free-fermion engine for nearest-neighbor XY and DQ dynamics.
//!
//! An open N-spin chain with uniform nearest-neighbor coupling d maps onto
//! free fermion modes k_n = pi*n/(N+1) with eigenfrequencies 2d cos(k). Under
//! the flip-flop (XY) interaction the mode occupations are conserved and each
//! coefficient of a quadratic observable just picks up a phase. Under the
//! double-quantum (DQ) interaction mode pairs mix through a Bogoliubov-type
//! rotation that generates pairing terms; on the open chain the partner of a
//! mode is its reflection k <-> pi - k realized with alternating-site phases,
//! so the site-basis one-particle propagator splits into a particle-conserving
//! block U(t) supported on even site separations and a pairing block V(t) on
//! odd separations:
//!
//!   U(t)[j,m] = i^(j-m) * Σ_n S[j,n] S[m,n] cos(psi_n(t))
//!   V(t)[j,m] = i^(j-m) * Σ_n S[j,n] S[m,n] sin(psi_n(t))
//!
//! with S the orthogonal sine transform and psi_n(t) = 2 d t cos(k_n). All
//! transport and coherence observables below are derived from this propagator
//! and reduce to O(N) or O(N^2) trigonometric sums per time point.
//!
//! Everything here is valid for nearest-neighbor couplings only: longer-range
//! couplings make the fermion picture non-quadratic and are handled by the
//! dense oracle instead.

use crate::chain::{ChainError, DeviationState, HamiltonianKind, ModeGrid};
use ndarray::Array2;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum AnalyticError {
    #[error("model not supported by the fermion engine: {0}")]
    UnsupportedModel(&'static str),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Eigenfrequencies 2d cos(k_n) of the nearest-neighbor chain.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenfrequencies: Vec<f64>,
}

impl Spectrum {
    pub fn eigenfrequencies(&self) -> &[f64] {
        &self.eigenfrequencies
    }
}

/// Spectrum of the uniform nearest-neighbor chain. XY and DQ share the same
/// eigenfrequency multiset; the dipolar model has no free-fermion form.
pub fn spectrum(kind: HamiltonianKind, n: usize, d: f64) -> Result<Spectrum, AnalyticError> {
    match kind {
        HamiltonianKind::Xy | HamiltonianKind::Dq => {}
        HamiltonianKind::Dipolar => {
            return Err(AnalyticError::UnsupportedModel(
                "dipolar model is not quadratic in fermions",
            ))
        }
    }
    let grid = ModeGrid::new(n)?;
    Ok(Spectrum {
        eigenfrequencies: grid.k_values().iter().map(|k| 2.0 * d * k.cos()).collect(),
    })
}

/// Mode phases psi_n(t) = 2 d t cos(k_n), precomputed for one time.
#[derive(Debug, Clone)]
pub struct ModePhase {
    psi: Vec<f64>,
}

impl ModePhase {
    pub fn at(grid: &ModeGrid, d: f64, t: f64) -> Self {
        Self {
            psi: grid
                .k_values()
                .iter()
                .map(|k| 2.0 * d * t * k.cos())
                .collect(),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.psi
    }
}

/// Orthogonal sine transform, S[j,n] = sqrt(2/(N+1)) sin(k_n (j+1)).
/// Symmetric and involutive: S = S^T, S S = 1.
fn sine_matrix(n: usize) -> Array2<f64> {
    let norm = (2.0 / (n as f64 + 1.0)).sqrt();
    let grid = ModeGrid::new(n).expect("n >= 2");
    let k = grid.k_values();
    Array2::from_shape_fn((n, n), |(j, m)| norm * (k[m] * (j + 1) as f64).sin())
}

fn mode_amplitude(a: usize, n: usize) -> Vec<f64> {
    let norm = (2.0 / (n as f64 + 1.0)).sqrt();
    let grid = ModeGrid::new(n).expect("n >= 2");
    grid.k_values()
        .iter()
        .map(|k| norm * (k * a as f64).sin())
        .collect()
}

fn check_spin(label: &str, a: usize, n: usize) {
    assert!(
        a >= 1 && a <= n,
        "spin index {label}={a} out of range 1..={n}"
    );
}

/// Polarization transferred from spin a to spin b after XY evolution for
/// time t: |Σ_n S[a,n] S[b,n] e^{-i psi_n}|^2. Normalized so the value at
/// (a, a, t=0) is 1.
pub fn polarization_xy(a: usize, b: usize, n: usize, d: f64, t: f64) -> f64 {
    let (c, s) = transfer_sums(a, b, n, d, t);
    c * c + s * s
}

/// Polarization transfer under DQ evolution: Re[(Σ_n S[a,n] S[b,n]
/// e^{-i psi_n})^2]. Equal to the XY transfer for even b-a and to its
/// negative for odd b-a.
pub fn polarization_dq(a: usize, b: usize, n: usize, d: f64, t: f64) -> f64 {
    let (c, s) = transfer_sums(a, b, n, d, t);
    c * c - s * s
}

fn transfer_sums(a: usize, b: usize, n: usize, d: f64, t: f64) -> (f64, f64) {
    check_spin("a", a, n);
    check_spin("b", b, n);
    let norm = 2.0 / (n as f64 + 1.0);
    let mut c = 0.0;
    let mut s = 0.0;
    for m in 1..=n {
        let k = std::f64::consts::PI * m as f64 / (n + 1) as f64;
        let w = norm * (k * a as f64).sin() * (k * b as f64).sin();
        let psi = 2.0 * d * t * k.cos();
        c += w * psi.cos();
        s += w * psi.sin();
    }
    (c, s)
}

/// Zero- and double-quantum intensities (J0, J2) for DQ evolution of a state
/// polarized on spin a. J2 is the intensity of a single order (+2 and -2 are
/// equal), so J0 + 2 J2 = 1 at all times.
pub fn mqc_intensities(a: usize, n: usize, d: f64, t: f64) -> (f64, f64) {
    check_spin("a", a, n);
    let amp = mode_amplitude(a, n);
    let grid = ModeGrid::new(n).expect("n >= 2");
    let mut occ_c = 0.0;
    let mut occ_s = 0.0;
    for (w, k) in amp.iter().zip(grid.k_values()) {
        let psi = 2.0 * d * t * k.cos();
        occ_c += w * w * psi.cos().powi(2);
        occ_s += w * w * psi.sin().powi(2);
    }
    (occ_c * occ_c + occ_s * occ_s, occ_c * occ_s)
}

/// MQC intensities when only the total magnetization is detectable. The
/// signature is weaker: single mode sums with doubled phases.
pub fn mqc_intensities_collective(a: usize, n: usize, d: f64, t: f64) -> (f64, f64) {
    check_spin("a", a, n);
    let amp = mode_amplitude(a, n);
    let grid = ModeGrid::new(n).expect("n >= 2");
    let mut j0 = 0.0;
    let mut j2 = 0.0;
    for (w, k) in amp.iter().zip(grid.k_values()) {
        let two_psi = 4.0 * d * t * k.cos();
        j0 += w * w * two_psi.cos().powi(2);
        j2 += 0.5 * w * w * two_psi.sin().powi(2);
    }
    (j0, j2)
}

/// MQC intensities for an arbitrary weighted deviation state, computed from
/// the evolved quadratic observable: J0 is the squared Frobenius weight of
/// the particle-conserving block and J2 of the pairing block, normalized so
/// J0(0) = 1. Reduces exactly to [`mqc_intensities`] for a single unit
/// weight.
pub fn mqc_intensities_state(
    state: &DeviationState,
    n: usize,
    d: f64,
    t: f64,
) -> Result<(f64, f64), AnalyticError> {
    let grid = ModeGrid::new(n)?;
    let obs = initial_observable(state, &grid)?;
    let norm = obs.block_weights().0;
    let evolved = obs.evolved_dq(d, t);
    let (p2, q2) = evolved.block_weights();
    Ok((p2 / norm, 0.5 * q2 / norm))
}

/// Operator quadratic in the fermion modes:
///
///   scalar + Σ P[k,h] a†_k a_h + (1/2) Σ Q[k,h] a†_k a†_h + h.c. of the Q part
///
/// P is Hermitian and Q antisymmetric. This is the evolving object of the
/// engine; observables are extracted from its blocks.
#[derive(Debug, Clone)]
pub struct QuadraticObservable {
    n_spins: usize,
    scalar: f64,
    p: Array2<Complex64>,
    q: Array2<Complex64>,
}

/// Quadratic-mode form of a weighted z-polarization state:
/// P[k,h] = -(2/(N+1)) Σ_a w_a sin(k a) sin(h a), Q = 0, scalar = Σ_a w_a / 2.
/// The represented operator is -(1/2) Σ_a w_a σ_z^a plus the scalar.
pub fn initial_observable(
    state: &DeviationState,
    grid: &ModeGrid,
) -> Result<QuadraticObservable, AnalyticError> {
    let n = grid.n_spins();
    state.validate_for(n)?;
    let mut p = Array2::<Complex64>::zeros((n, n));
    let mut scalar = 0.0;
    for &(a, w) in state.weights() {
        let amp = mode_amplitude(a, n);
        for k in 0..n {
            for h in 0..n {
                p[[k, h]] -= Complex64::new(w * amp[k] * amp[h], 0.0);
            }
        }
        scalar += 0.5 * w;
    }
    Ok(QuadraticObservable {
        n_spins: n,
        scalar,
        p,
        q: Array2::zeros((n, n)),
    })
}

impl QuadraticObservable {
    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn scalar(&self) -> f64 {
        self.scalar
    }

    pub fn particle_block(&self) -> &Array2<Complex64> {
        &self.p
    }

    pub fn pairing_block(&self) -> &Array2<Complex64> {
        &self.q
    }

    /// Squared Frobenius weights (|P|^2, |Q|^2) of the two blocks.
    pub fn block_weights(&self) -> (f64, f64) {
        let p2 = self.p.iter().map(|z| z.norm_sqr()).sum();
        let q2 = self.q.iter().map(|z| z.norm_sqr()).sum();
        (p2, q2)
    }

    /// Normalized trace of the represented operator (zero for any
    /// deviation-state input, at all times).
    pub fn normalized_trace(&self) -> f64 {
        let tr_p: Complex64 = self.p.diag().sum();
        self.scalar + 0.5 * tr_p.re
    }

    /// XY evolution for time t: P[k,h] picks up e^{-i(psi_k - psi_h)},
    /// Q[k,h] picks up e^{-i(psi_k + psi_h)}, scalar unchanged.
    pub fn evolved_xy(&self, d: f64, t: f64) -> Self {
        let grid = ModeGrid::new(self.n_spins).expect("n >= 2");
        let psi = ModePhase::at(&grid, d, t);
        let ph: Vec<Complex64> = psi
            .values()
            .iter()
            .map(|&x| Complex64::from_polar(1.0, -x))
            .collect();
        let n = self.n_spins;
        let mut p = self.p.clone();
        let mut q = self.q.clone();
        for k in 0..n {
            for h in 0..n {
                p[[k, h]] *= ph[k] * ph[h].conj();
                q[[k, h]] *= ph[k] * ph[h];
            }
        }
        Self {
            n_spins: n,
            scalar: self.scalar,
            p,
            q,
        }
    }

    /// DQ evolution for time t via the site-basis propagator blocks U, V.
    /// Mixes particle-conserving and pairing blocks; the scalar absorbs the
    /// normal-ordering residue so the represented operator is unchanged.
    pub fn evolved_dq(&self, d: f64, t: f64) -> Self {
        let n = self.n_spins;
        let s = sine_matrix(n).mapv(|x| Complex64::new(x, 0.0));
        let (u, v) = dq_propagator(n, d, t);

        let p_site = s.dot(&self.p).dot(&s);
        let q_site = s.dot(&self.q).dot(&s);
        let q_conj = q_site.mapv(|z| z.conj());
        let p_t = p_site.t().to_owned();

        // M' = G† M G with M = [[P, Q], [-Q*, -P^T]] and G = [[U, V], [-V, U]].
        let p_new = u.dot(&p_site).dot(&u) - u.dot(&q_site).dot(&v) + v.dot(&q_conj).dot(&u)
            - v.dot(&p_t).dot(&v);
        let q_new = u.dot(&q_site).dot(&u) + u.dot(&p_site).dot(&v) + v.dot(&p_t).dot(&u)
            + v.dot(&q_conj).dot(&v);

        let mut p = s.dot(&p_new).dot(&s);
        let mut q = s.dot(&q_new).dot(&s);
        // Restore exact Hermiticity / antisymmetry lost to roundoff.
        let p_dag = p.t().mapv(|z| z.conj());
        p = (&p + &p_dag) * Complex64::new(0.5, 0.0);
        let q_t = q.t().to_owned();
        q = (&q - &q_t) * Complex64::new(0.5, 0.0);

        let tr_old: Complex64 = self.p.diag().sum();
        let tr_new: Complex64 = p.diag().sum();
        Self {
            n_spins: n,
            scalar: self.scalar + 0.5 * (tr_old.re - tr_new.re),
            p,
            q,
        }
    }

    /// Polarization on spin b for an observable built by
    /// [`initial_observable`], normalized so a unit-weight source spin reads
    /// 1 at t = 0.
    pub fn polarization(&self, b: usize) -> f64 {
        check_spin("b", b, self.n_spins);
        let amp = mode_amplitude(b, self.n_spins);
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..self.n_spins {
            for h in 0..self.n_spins {
                acc += self.p[[k, h]] * amp[k] * amp[h];
            }
        }
        -acc.re
    }
}

/// Site-basis one-particle propagator blocks for DQ evolution of the state
/// (coefficients transform as c_j -> Σ_m U[j,m] c_m + V[j,m] c†_m).
fn dq_propagator(n: usize, d: f64, t: f64) -> (Array2<Complex64>, Array2<Complex64>) {
    const I_POW: [Complex64; 4] = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ];
    let s = sine_matrix(n);
    let grid = ModeGrid::new(n).expect("n >= 2");
    let psi = ModePhase::at(&grid, d, t);
    let mut sc = s.clone();
    let mut ss = s.clone();
    for (m, &x) in psi.values().iter().enumerate() {
        let (si, co) = x.sin_cos();
        sc.column_mut(m).mapv_inplace(|v| v * co);
        ss.column_mut(m).mapv_inplace(|v| v * si);
    }
    let xc = sc.dot(&s);
    let xs = ss.dot(&s);
    let mut u = Array2::<Complex64>::zeros((n, n));
    let mut v = Array2::<Complex64>::zeros((n, n));
    for j in 0..n {
        for m in 0..n {
            let ph = I_POW[(j as i64 - m as i64).rem_euclid(4) as usize];
            u[[j, m]] = ph * xc[[j, m]];
            v[[j, m]] = ph * xs[[j, m]];
        }
    }
    (u, v)
}
