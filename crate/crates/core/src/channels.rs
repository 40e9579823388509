//! Environment evolution over one interaction interval.
//!
//! The production path works in the energy eigenbasis {|e⟩, |g⟩}: populations
//! and the single coherence are updated in closed form and the result is
//! rotated back to the computational basis. [`apply_channel_kraus`] evaluates
//! the same map as `U(τ) [E₀ρE₀† + E₁ρE₁†] U†(τ)` and exists so the two routes
//! can be checked against each other.
//!
//! Units: ħ = 1 and ω = 1, so `tau` and `t_dec` are the dimensionless ωτ and
//! ωT_D.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, Matrix2, PureState, Unitary2};
use crate::scalar::Scalar;

/// Excited and ground eigenstates of the (hidden) environment Hamiltonian
/// H = (ω/2)(|e⟩⟨e| − |g⟩⟨g|).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBasis<T> {
    excited: PureState<T>,
    ground: PureState<T>,
}

impl<T: Scalar> EnergyBasis<T> {
    pub fn new(excited: PureState<T>, ground: PureState<T>) -> Result<Self> {
        let overlap = excited.inner(&ground).norm();
        if !(overlap <= T::tolerance()) {
            return Err(Error::Invariant {
                what: "energy basis orthogonality",
                deviation: overlap.to_f64_lossless(),
            });
        }
        Ok(Self { excited, ground })
    }

    /// Eigenbasis of H = (ω/4)(√3 X − Z):
    /// |e⟩ = (|0⟩ + √3|1⟩)/2, |g⟩ = (−√3|0⟩ + |1⟩)/2.
    pub fn standard() -> Self {
        let half = T::lit(0.5);
        let s3_half = T::lit(3f64.sqrt() / 2.0);
        let z = T::zero();
        let excited = PureState::new(Complex::new(half, z), Complex::new(s3_half, z))
            .expect("standard excited state is normalized");
        let ground = PureState::new(Complex::new(-s3_half, z), Complex::new(half, z))
            .expect("standard ground state is normalized");
        Self { excited, ground }
    }

    pub fn excited(&self) -> &PureState<T> {
        &self.excited
    }

    pub fn ground(&self) -> &PureState<T> {
        &self.ground
    }

    /// Components (ρ_ee, ρ_gg, ρ_eg) of `rho` in this basis.
    fn components(&self, rho: &DensityMatrix<T>) -> (T, T, Complex<T>) {
        let m = rho.matrix();
        let rho_g = m.apply(&self.ground.amplitudes());
        let ee = rho.expectation(&self.excited);
        let gg = rho.expectation(&self.ground);
        let eg = self.excited.inner_raw(&rho_g);
        (ee, gg, eg)
    }

    fn assemble(&self, ee: T, gg: T, eg: Complex<T>) -> Matrix2<T> {
        let (e, g) = (&self.excited, &self.ground);
        let pe = Matrix2::outer(e, e).scale_real(ee);
        let pg = Matrix2::outer(g, g).scale_real(gg);
        let coh = Matrix2::outer(e, g).scale(eg);
        pe + pg + coh + coh.adjoint()
    }
}

impl<T: Scalar> Default for EnergyBasis<T> {
    fn default() -> Self {
        Self::standard()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseKind {
    Noiseless,
    PhaseDamping,
    AmplitudeDamping,
}

/// Immutable description of one evolution interval.
///
/// An infinite decoherence time is allowed for either damping kind and then
/// reproduces the noiseless evolution exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel<T> {
    kind: NoiseKind,
    tau: T,
    t_dec: T,
    basis: EnergyBasis<T>,
}

impl<T: Scalar> Channel<T> {
    pub fn new(kind: NoiseKind, tau: T, t_dec: T, basis: EnergyBasis<T>) -> Result<Self> {
        if !(tau.is_finite() && tau > T::zero()) {
            return Err(Error::InvalidChannel(format!(
                "evolution time must be finite and positive, got {tau}"
            )));
        }
        if t_dec.is_nan() || t_dec <= T::zero() {
            return Err(Error::InvalidChannel(format!(
                "decoherence time must be positive, got {t_dec}"
            )));
        }
        let t_dec = match kind {
            NoiseKind::Noiseless => T::infinity(),
            _ => t_dec,
        };
        Ok(Self {
            kind,
            tau,
            t_dec,
            basis,
        })
    }

    pub fn noiseless(tau: T) -> Result<Self> {
        Self::new(
            NoiseKind::Noiseless,
            tau,
            T::infinity(),
            EnergyBasis::standard(),
        )
    }

    pub fn phase_damping(tau: T, t_dec: T) -> Result<Self> {
        Self::new(NoiseKind::PhaseDamping, tau, t_dec, EnergyBasis::standard())
    }

    pub fn amplitude_damping(tau: T, t_dec: T) -> Result<Self> {
        Self::new(
            NoiseKind::AmplitudeDamping,
            tau,
            t_dec,
            EnergyBasis::standard(),
        )
    }

    pub fn kind(&self) -> NoiseKind {
        self.kind
    }

    pub fn tau(&self) -> T {
        self.tau
    }

    /// Decoherence time; `+inf` for the noiseless kind.
    pub fn t_dec(&self) -> T {
        self.t_dec
    }

    pub fn basis(&self) -> &EnergyBasis<T> {
        &self.basis
    }

    /// e^{−τ/T_D}, exactly 1 when T_D is infinite.
    pub fn coherence_decay(&self) -> T {
        (-self.tau / self.t_dec).exp()
    }

    /// 1 − e^{−2τ/T_D}, the excited-state decay probability.
    fn decay_probability(&self) -> T {
        -(T::lit(-2.0) * self.tau / self.t_dec).exp_m1()
    }
}

/// U(τ) = e^{−iτ/2}|e⟩⟨e| + e^{+iτ/2}|g⟩⟨g|.
pub fn hamiltonian_unitary<T: Scalar>(basis: &EnergyBasis<T>, tau: T) -> Unitary2<T> {
    let half = tau / T::lit(2.0);
    let pe = Matrix2::outer(basis.excited(), basis.excited());
    let pg = Matrix2::outer(basis.ground(), basis.ground());
    let m = pe.scale(Complex::from_polar(T::one(), -half))
        + pg.scale(Complex::from_polar(T::one(), half));
    Unitary2::from_matrix_unchecked(m)
}

/// Kraus operators (E₀, E₁) in the computational basis.
///
/// Both damping kinds share E₀ = |g⟩⟨g| + e^{−τ/T_D}|e⟩⟨e|; phase damping
/// uses E₁ = √(1−e^{−2τ/T_D})|e⟩⟨e| and amplitude damping
/// E₁ = √(1−e^{−2τ/T_D})|g⟩⟨e|. The noiseless kind returns (I, 0).
pub fn kraus_pair<T: Scalar>(ch: &Channel<T>) -> (Matrix2<T>, Matrix2<T>) {
    let (e, g) = (ch.basis.excited(), ch.basis.ground());
    match ch.kind {
        NoiseKind::Noiseless => (Matrix2::identity(), Matrix2::zero()),
        NoiseKind::PhaseDamping | NoiseKind::AmplitudeDamping => {
            let decay = ch.coherence_decay();
            let jump = ch.decay_probability().sqrt();
            let e0 = Matrix2::outer(g, g) + Matrix2::outer(e, e).scale_real(decay);
            let e1 = if ch.kind == NoiseKind::PhaseDamping {
                Matrix2::outer(e, e).scale_real(jump)
            } else {
                Matrix2::outer(g, e).scale_real(jump)
            };
            (e0, e1)
        }
    }
}

/// Closed-form evolution E_τ(ρ).
pub fn apply_channel<T: Scalar>(ch: &Channel<T>, rho: &DensityMatrix<T>) -> DensityMatrix<T> {
    let (ee, gg, eg) = ch.basis.components(rho);
    let coherence = eg * Complex::from_polar(ch.coherence_decay(), -ch.tau);
    let (ee, gg) = match ch.kind {
        NoiseKind::Noiseless | NoiseKind::PhaseDamping => (ee, gg),
        NoiseKind::AmplitudeDamping => {
            let lost = ee * ch.decay_probability();
            (ee - lost, gg + lost)
        }
    };
    DensityMatrix::from_matrix_unchecked(ch.basis.assemble(ee, gg, coherence))
}

/// Reference evaluation U(τ)[E₀ρE₀† + E₁ρE₁†]U†(τ) via the Kraus pair.
pub fn apply_channel_kraus<T: Scalar>(ch: &Channel<T>, rho: &DensityMatrix<T>) -> DensityMatrix<T> {
    let (e0, e1) = kraus_pair(ch);
    let m = rho.matrix();
    let damped = m.sandwich(&e0) + m.sandwich(&e1);
    let u = hamiltonian_unitary(&ch.basis, ch.tau);
    DensityMatrix::from_matrix_unchecked(damped.sandwich(u.matrix()))
}

/// P(0) = Tr[ρ E_τ(ρ)], the probability that the inverted state is found in
/// the seed basis state.
///
/// Raw values within the tolerance band around [0, 1] are clamped; anything
/// further out means the channel produced an invalid state.
pub fn measurement_prob_zero<T: Scalar>(ch: &Channel<T>, rho: &DensityMatrix<T>) -> Result<T> {
    let raw = rho.overlap(&apply_channel(ch, rho));
    let tol = T::tolerance();
    if !(raw >= -tol && raw <= T::one() + tol) {
        return Err(Error::ProbabilityOutOfRange(raw.to_f64_lossless()));
    }
    Ok(raw.max(T::zero()).min(T::one()))
}
