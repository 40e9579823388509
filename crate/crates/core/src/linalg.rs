//! Fixed-size complex linear algebra for a single qubit.
//!
//! Everything here is a 2×2 (or 2-vector) value type. Validated wrappers
//! ([`PureState`], [`DensityMatrix`], [`Unitary2`]) sit on top of the plain
//! [`Matrix2`] and check their invariants on construction.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Plain 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2<T> {
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Scalar> Matrix2<T> {
    pub fn new(m: [[Complex<T>; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn from_real(m: [[T; 2]; 2]) -> Self {
        Self::new([
            [
                Complex::new(m[0][0], T::zero()),
                Complex::new(m[0][1], T::zero()),
            ],
            [
                Complex::new(m[1][0], T::zero()),
                Complex::new(m[1][1], T::zero()),
            ],
        ])
    }

    pub fn zero() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self::new([[z, z], [z, z]])
    }

    pub fn identity() -> Self {
        Self::from_real([[T::one(), T::zero()], [T::zero(), T::one()]])
    }

    /// Outer product |a⟩⟨b|.
    pub fn outer(a: &PureState<T>, b: &PureState<T>) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = a.amp[i] * b.amp[j].conj();
            }
        }
        out
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.m[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self::new([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn trace(&self) -> Complex<T> {
        self.m[0][0] + self.m[1][1]
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut out = *self;
        out.m.iter_mut().flatten().for_each(|z| *z = *z * s);
        out
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    /// A M A† for an arbitrary (not necessarily unitary) `a`.
    pub fn sandwich(&self, a: &Matrix2<T>) -> Self {
        *a * *self * a.adjoint()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix2<T>) -> T {
        let d = *self - *other;
        d.m.iter()
            .flatten()
            .map(|z| z.norm())
            .fold(T::zero(), T::max)
    }

    pub fn frobenius_norm(&self) -> T {
        self.m
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    pub fn apply(&self, v: &[Complex<T>; 2]) -> [Complex<T>; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    fn hermiticity_defect(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }
}

impl<T: Scalar> Add for Matrix2<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = self.m[i][j] + rhs.m[i][j];
            }
        }
        out
    }
}

impl<T: Scalar> Sub for Matrix2<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] = self.m[i][j] - rhs.m[i][j];
            }
        }
        out
    }
}

impl<T: Scalar> Neg for Matrix2<T> {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale_real(-T::one())
    }
}

impl<T: Scalar> Mul for Matrix2<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let a = &self.m;
        let b = &rhs.m;
        Self::new([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

/// Normalized single-qubit state vector in the computational basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState<T> {
    amp: [Complex<T>; 2],
}

impl<T: Scalar> PureState<T> {
    /// Builds a state, rejecting amplitudes whose squared norm is not 1.
    pub fn new(amp0: Complex<T>, amp1: Complex<T>) -> Result<Self> {
        let norm = amp0.norm_sqr() + amp1.norm_sqr();
        let defect = (norm - T::one()).abs();
        if !(defect <= T::tolerance()) {
            return Err(Error::Invariant {
                what: "pure state normalization",
                deviation: defect.to_f64_lossless(),
            });
        }
        Ok(Self { amp: [amp0, amp1] })
    }

    /// Builds a state from real amplitudes after rescaling them to unit norm.
    pub fn normalized_real(a0: T, a1: T) -> Self {
        let n = (a0 * a0 + a1 * a1).sqrt();
        Self {
            amp: [
                Complex::new(a0 / n, T::zero()),
                Complex::new(a1 / n, T::zero()),
            ],
        }
    }

    /// Computational basis state |bit⟩.
    pub fn basis(bit: BasisBit) -> Self {
        let (one, zero) = (
            Complex::new(T::one(), T::zero()),
            Complex::new(T::zero(), T::zero()),
        );
        match bit {
            BasisBit::Zero => Self { amp: [one, zero] },
            BasisBit::One => Self { amp: [zero, one] },
        }
    }

    pub fn amp0(&self) -> Complex<T> {
        self.amp[0]
    }

    pub fn amp1(&self) -> Complex<T> {
        self.amp[1]
    }

    pub fn amplitudes(&self) -> [Complex<T>; 2] {
        self.amp
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &PureState<T>) -> Complex<T> {
        self.amp[0].conj() * other.amp[0] + self.amp[1].conj() * other.amp[1]
    }

    /// ⟨self|v⟩ for a raw vector.
    pub fn inner_raw(&self, v: &[Complex<T>; 2]) -> Complex<T> {
        self.amp[0].conj() * v[0] + self.amp[1].conj() * v[1]
    }
}

/// Which computational basis state seeds a preparation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BasisBit {
    #[default]
    Zero,
    One,
}

impl BasisBit {
    pub fn index(self) -> usize {
        match self {
            BasisBit::Zero => 0,
            BasisBit::One => 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            BasisBit::Zero => BasisBit::One,
            BasisBit::One => BasisBit::Zero,
        }
    }
}

/// Hermitian, unit-trace, positive-semidefinite 2×2 operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<T> {
    mat: Matrix2<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Validates `mat` against all density-matrix invariants.
    pub fn new(mat: Matrix2<T>) -> Result<Self> {
        let rho = Self { mat };
        rho.check(T::tolerance())?;
        Ok(rho)
    }

    /// Wraps a matrix that is a density matrix by construction.
    pub(crate) fn from_matrix_unchecked(mat: Matrix2<T>) -> Self {
        Self { mat }
    }

    /// Checks hermiticity, trace and positivity against `tol`.
    pub fn check(&self, tol: T) -> Result<()> {
        let herm = self.mat.hermiticity_defect();
        if !(herm <= tol) {
            return Err(Error::Invariant {
                what: "density matrix hermiticity",
                deviation: herm.to_f64_lossless(),
            });
        }
        let tr = self.mat.trace();
        let tr_defect = (tr - Complex::new(T::one(), T::zero())).norm();
        if !(tr_defect <= tol) {
            return Err(Error::Invariant {
                what: "density matrix trace",
                deviation: tr_defect.to_f64_lossless(),
            });
        }
        let (low, _) = self.eigenvalues();
        if !(low >= -tol) {
            return Err(Error::Invariant {
                what: "density matrix positivity",
                deviation: (-low).to_f64_lossless(),
            });
        }
        Ok(())
    }

    pub fn matrix(&self) -> &Matrix2<T> {
        &self.mat
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.mat.m[row][col]
    }

    /// Eigenvalues (ascending) of the Hermitian part.
    pub fn eigenvalues(&self) -> (T, T) {
        let two = T::lit(2.0);
        let a = self.mat.m[0][0].re;
        let d = self.mat.m[1][1].re;
        let b = (self.mat.m[0][1] + self.mat.m[1][0].conj()).scale(T::lit(0.5));
        let mid = (a + d) / two;
        let half_gap = (((a - d) / two).powi(2) + b.norm_sqr()).sqrt();
        (mid - half_gap, mid + half_gap)
    }

    /// Tr ρ².
    pub fn purity(&self) -> T {
        (self.mat * self.mat).trace().re
    }

    /// Tr(self · other), real for Hermitian arguments.
    pub fn overlap(&self, other: &DensityMatrix<T>) -> T {
        (self.mat * other.mat).trace().re
    }

    /// ⟨ψ|ρ|ψ⟩.
    pub fn expectation(&self, psi: &PureState<T>) -> T {
        psi.inner_raw(&self.mat.apply(&psi.amplitudes())).re
    }
}

/// 2×2 unitary operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2<T> {
    mat: Matrix2<T>,
}

impl<T: Scalar> Unitary2<T> {
    /// Validates U†U = I entrywise.
    pub fn new(mat: Matrix2<T>) -> Result<Self> {
        let u = Self { mat };
        let defect = u.unitarity_defect();
        if !(defect <= T::tolerance()) {
            return Err(Error::Invariant {
                what: "unitarity",
                deviation: defect.to_f64_lossless(),
            });
        }
        Ok(u)
    }

    pub(crate) fn from_matrix_unchecked(mat: Matrix2<T>) -> Self {
        Self { mat }
    }

    pub fn identity() -> Self {
        Self {
            mat: Matrix2::identity(),
        }
    }

    pub fn matrix(&self) -> &Matrix2<T> {
        &self.mat
    }

    pub fn adjoint(&self) -> Self {
        Self {
            mat: self.mat.adjoint(),
        }
    }

    /// max |(U†U − I)_ij|.
    pub fn unitarity_defect(&self) -> T {
        (self.mat.adjoint() * self.mat).max_abs_diff(&Matrix2::identity())
    }

    /// U|bit⟩, i.e. the selected column.
    pub fn column(&self, bit: BasisBit) -> [Complex<T>; 2] {
        let c = bit.index();
        [self.mat.m[0][c], self.mat.m[1][c]]
    }

    pub fn apply(&self, psi: &PureState<T>) -> PureState<T> {
        let [a0, a1] = self.mat.apply(&psi.amplitudes());
        PureState { amp: [a0, a1] }
    }

    pub fn scale_phase(&self, phase: Complex<T>) -> Self {
        Self {
            mat: self.mat.scale(phase),
        }
    }
}

impl<T: Scalar> Mul for Unitary2<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self {
            mat: self.mat * rhs.mat,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

/// The Pauli matrix for `axis`.
pub fn pauli<T: Scalar>(axis: PauliAxis) -> Unitary2<T> {
    let (o, l) = (T::zero(), T::one());
    let c = |re: T, im: T| Complex::new(re, im);
    let m = match axis {
        PauliAxis::X => [[c(o, o), c(l, o)], [c(l, o), c(o, o)]],
        PauliAxis::Y => [[c(o, o), c(o, -l)], [c(o, l), c(o, o)]],
        PauliAxis::Z => [[c(l, o), c(o, o)], [c(o, o), c(-l, o)]],
    };
    Unitary2::from_matrix_unchecked(Matrix2::new(m))
}

/// exp(−iθP/2) = cos(θ/2)·I − i·sin(θ/2)·P.
pub fn axis_rotation<T: Scalar>(axis: PauliAxis, angle: T) -> Unitary2<T> {
    let half = angle / T::lit(2.0);
    let (s, c) = half.sin_cos();
    let cos_part = Matrix2::identity().scale_real(c);
    let sin_part = pauli::<T>(axis).mat.scale(Complex::new(T::zero(), -s));
    Unitary2::from_matrix_unchecked(cos_part + sin_part)
}

/// U ρ U†.
pub fn conjugate<T: Scalar>(u: &Unitary2<T>, rho: &DensityMatrix<T>) -> DensityMatrix<T> {
    DensityMatrix::from_matrix_unchecked(rho.mat.sandwich(&u.mat))
}

/// |ψ⟩⟨ψ|.
pub fn density_from_pure<T: Scalar>(psi: &PureState<T>) -> DensityMatrix<T> {
    DensityMatrix::from_matrix_unchecked(Matrix2::outer(psi, psi))
}

/// |⟨target|U|bit⟩|.
pub fn overlap_magnitude<T: Scalar>(target: &PureState<T>, u: &Unitary2<T>, bit: BasisBit) -> T {
    target.inner_raw(&u.column(bit)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        Complex::new(re, im)
    }

    fn close(a: &Matrix2<f64>, b: &Matrix2<f64>, tol: f64) -> bool {
        a.max_abs_diff(b) <= tol
    }

    #[test]
    fn pauli_matrices_are_exact() {
        let x = pauli::<f64>(PauliAxis::X);
        assert_eq!(*x.matrix(), Matrix2::from_real([[0.0, 1.0], [1.0, 0.0]]));
        let z = pauli::<f64>(PauliAxis::Z);
        assert_eq!(*z.matrix(), Matrix2::from_real([[1.0, 0.0], [0.0, -1.0]]));
        let y = pauli::<f64>(PauliAxis::Y);
        assert_eq!((y * y).matrix(), &Matrix2::identity());
        for axis in [PauliAxis::X, PauliAxis::Y, PauliAxis::Z] {
            let p = pauli::<f64>(axis);
            assert_eq!(p.matrix().adjoint(), *p.matrix());
            assert!(p.unitarity_defect() == 0.0);
        }
    }

    #[test]
    fn rotation_special_angles() {
        let r0 = axis_rotation::<f64>(PauliAxis::X, 0.0);
        assert_eq!(*r0.matrix(), Matrix2::identity());

        let rz = axis_rotation::<f64>(PauliAxis::Z, 2.0 * std::f64::consts::PI);
        assert!(close(rz.matrix(), &-Matrix2::identity(), 1e-12));

        // cos(π/2) I − i sin(π/2) X = −iX
        let rx = axis_rotation::<f64>(PauliAxis::X, std::f64::consts::PI);
        let expected = Matrix2::new([[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, -1.0), c(0.0, 0.0)]]);
        assert!(close(rx.matrix(), &expected, 1e-12));
    }

    #[test]
    fn rotation_matches_exponential_series() {
        // Truncated Taylor series of exp(−iθP/2) as an independent route.
        fn expm_series(a: Matrix2<f64>) -> Matrix2<f64> {
            let mut term = Matrix2::identity();
            let mut sum = Matrix2::identity();
            for n in 1..40 {
                term = (term * a).scale_real(1.0 / n as f64);
                sum = sum + term;
            }
            sum
        }
        for axis in [PauliAxis::X, PauliAxis::Y, PauliAxis::Z] {
            for theta in [-2.7, -0.3, 0.9, 3.1] {
                let gen = pauli::<f64>(axis).matrix().scale(c(0.0, -theta / 2.0));
                let series = expm_series(gen);
                assert!(close(axis_rotation(axis, theta).matrix(), &series, 1e-12));
            }
        }
    }

    #[test]
    fn conjugation_examples() {
        let zero = density_from_pure(&PureState::<f64>::basis(BasisBit::Zero));
        let same = conjugate(&Unitary2::identity(), &zero);
        assert_eq!(same, zero);

        let flipped = conjugate(&pauli(PauliAxis::X), &zero);
        assert_eq!(
            *flipped.matrix(),
            Matrix2::from_real([[0.0, 0.0], [0.0, 1.0]])
        );

        // e^{−iπY/4}|0⟩ = (|0⟩ + |1⟩)/√2: every entry of the projector is 1/2.
        let ry = axis_rotation(PauliAxis::Y, std::f64::consts::FRAC_PI_2);
        let plus = conjugate(&ry, &zero);
        let half = Matrix2::from_real([[0.5, 0.5], [0.5, 0.5]]);
        assert!(close(plus.matrix(), &half, 1e-12));
    }

    #[test]
    fn density_from_basis_and_superposition() {
        let r0 = density_from_pure(&PureState::<f64>::basis(BasisBit::Zero));
        assert_eq!(*r0.matrix(), Matrix2::from_real([[1.0, 0.0], [0.0, 0.0]]));
        let r1 = density_from_pure(&PureState::<f64>::basis(BasisBit::One));
        assert_eq!(*r1.matrix(), Matrix2::from_real([[0.0, 0.0], [0.0, 1.0]]));
        let plus = density_from_pure(&PureState::normalized_real(1.0, 1.0));
        assert!(close(
            plus.matrix(),
            &Matrix2::from_real([[0.5, 0.5], [0.5, 0.5]]),
            1e-15
        ));
        assert!(plus.check(1e-12).is_ok());
        assert!((plus.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn overlap_with_reference_eigenstates() {
        let s3 = 3f64.sqrt();
        let e = PureState::normalized_real(1.0, s3);
        let g = PureState::normalized_real(-s3, 1.0);
        let id = Unitary2::identity();
        assert!((overlap_magnitude(&e, &id, BasisBit::Zero) - 0.5).abs() < 1e-15);
        assert!((overlap_magnitude(&g, &id, BasisBit::Zero) - s3 / 2.0).abs() < 1e-15);
        assert!((overlap_magnitude(&e, &id, BasisBit::One) - s3 / 2.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_invalid_objects() {
        assert!(PureState::new(c(1.0, 0.0), c(0.1, 0.0)).is_err());
        assert!(PureState::new(c(0.6, 0.0), c(0.0, 0.8)).is_ok());

        let not_herm = Matrix2::new([[c(0.5, 0.0), c(0.1, 0.0)], [c(0.2, 0.0), c(0.5, 0.0)]]);
        assert!(matches!(
            DensityMatrix::new(not_herm),
            Err(Error::Invariant {
                what: "density matrix hermiticity",
                ..
            })
        ));
        let bad_trace = Matrix2::from_real([[0.7, 0.0], [0.0, 0.7]]);
        assert!(DensityMatrix::new(bad_trace).is_err());
        let negative = Matrix2::from_real([[1.2, 0.0], [0.0, -0.2]]);
        assert!(matches!(
            DensityMatrix::new(negative),
            Err(Error::Invariant {
                what: "density matrix positivity",
                ..
            })
        ));
        assert!(Unitary2::new(Matrix2::from_real([[1.0, 1.0], [0.0, 1.0]])).is_err());
        assert!(Unitary2::new(*pauli::<f64>(PauliAxis::Y).matrix()).is_ok());
    }

    #[test]
    fn generic_over_f32() {
        let r = axis_rotation::<f32>(PauliAxis::Y, 1.3);
        assert!(r.unitarity_defect() < f32::tolerance());
        let rho = conjugate(&r, &density_from_pure(&PureState::basis(BasisBit::Zero)));
        assert!(rho.check(f32::tolerance()).is_ok());
    }
}
