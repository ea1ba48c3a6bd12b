use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{Hermitian8, Party, Slot, SystemPerm, Tolerance};
use crate::{Error, Real, Result};

/// The X-shaped self-adjoint matrix `X(a, b, z)`.
///
/// The same value type is used for states `(a, b, z)` and for witnesses
/// `(s, t, u)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XMatrix<T> {
    pub a: [T; 4],
    pub b: [T; 4],
    pub z: [Complex<T>; 4],
}

impl<T: Real> XMatrix<T> {
    pub fn new(a: [T; 4], b: [T; 4], z: [Complex<T>; 4]) -> Result<Self> {
        let x = XMatrix { a, b, z };
        if !x.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite X-matrix entry in {x:?}")));
        }
        Ok(x)
    }

    /// Real anti-diagonal convenience constructor.
    pub fn real(a: [T; 4], b: [T; 4], z: [T; 4]) -> Result<Self> {
        Self::new(a, b, z.map(|v| Complex::new(v, T::zero())))
    }

    pub fn zero() -> Self {
        XMatrix {
            a: [T::zero(); 4],
            b: [T::zero(); 4],
            z: [Complex::new(T::zero(), T::zero()); 4],
        }
    }

    /// `X_i(a, b, z)`: only slot `i` is populated.
    pub fn single(slot: Slot, a: T, b: T, z: Complex<T>) -> Self {
        let mut x = Self::zero();
        x.a[slot.index()] = a;
        x.b[slot.index()] = b;
        x.z[slot.index()] = z;
        x
    }

    /// `|000⟩⟨000| + |111⟩⟨111| + |000⟩⟨111| + |111⟩⟨000|`.
    pub fn ghz() -> Self {
        Self::single(Slot::of(1), T::one(), T::one(), Complex::new(T::one(), T::zero()))
    }

    pub fn identity() -> Self {
        XMatrix {
            a: [T::one(); 4],
            b: [T::one(); 4],
            z: [Complex::new(T::zero(), T::zero()); 4],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.a.iter().chain(self.b.iter()).all(|v| v.is_finite())
            && self.z.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// `1 + max(|a_i|, |b_i|, |z_i|)`.
    pub fn scale(&self) -> T {
        let m = self
            .a
            .iter()
            .chain(self.b.iter())
            .map(|v| v.abs())
            .chain(self.z.iter().map(|c| c.norm()))
            .fold(T::zero(), T::max);
        T::one() + m
    }

    /// `sqrt(a_i b_i)` with negative diagonals clamped to zero.
    #[inline]
    pub fn root(&self, slot: Slot) -> T {
        let i = slot.index();
        (self.a[i].max(T::zero()) * self.b[i].max(T::zero())).sqrt()
    }

    #[inline]
    pub fn modulus(&self, slot: Slot) -> T {
        self.z[slot.index()].norm()
    }

    /// Phase of `z_i`, with `arg 0 = 0`.
    #[inline]
    pub fn phase(&self, slot: Slot) -> T {
        let z = self.z[slot.index()];
        if z.re == T::zero() && z.im == T::zero() {
            T::zero()
        } else {
            z.arg()
        }
    }

    pub fn embed(&self) -> Hermitian8<T> {
        let mut h = Hermitian8::zero();
        for s in Slot::ALL {
            let i = s.index();
            let j = 7 - i;
            h.set_raw(i, i, Complex::new(self.a[i], T::zero()));
            h.set_raw(j, j, Complex::new(self.b[i], T::zero()));
            h.set_raw(i, j, self.z[i]);
            h.set_raw(j, i, self.z[i].conj());
        }
        h
    }

    /// Bilinear pairing with `self` in the witness role.
    pub fn pair(&self, other: &XMatrix<T>) -> T {
        let two = T::lit(2.0);
        (0..4)
            .map(|i| self.a[i] * other.a[i] + self.b[i] * other.b[i] + two * (self.z[i] * other.z[i]).re)
            .sum()
    }

    pub fn partial_transpose(&self, party: Party) -> Self {
        let z = self.z;
        let z = match party {
            Party::A => [z[3].conj(), z[2].conj(), z[1].conj(), z[0].conj()],
            Party::B => [z[2], z[3], z[0], z[1]],
            Party::C => [z[1], z[0], z[3], z[2]],
        };
        XMatrix {
            a: self.a,
            b: self.b,
            z,
        }
    }

    /// Moves each party's tensor factor to the position of its image.
    pub fn permute(&self, sigma: &SystemPerm) -> Self {
        let mut out = Self::zero();
        for s in Slot::ALL {
            let i = s.index();
            let v = sigma.apply_basis(i);
            if v < 4 {
                out.a[v] = self.a[i];
                out.b[v] = self.b[i];
                out.z[v] = self.z[i];
            } else {
                let j = 7 - v;
                out.a[j] = self.b[i];
                out.b[j] = self.a[i];
                out.z[j] = self.z[i].conj();
            }
        }
        out
    }

    /// Positivity of each 2×2 block `[[a_i, z_i], [conj z_i, b_i]]`.
    pub fn is_psd(&self, tol: &Tolerance<T>) -> bool {
        let scale = self.scale();
        Slot::ALL.iter().all(|&s| {
            let i = s.index();
            tol.nonneg(self.a[i], scale)
                && tol.nonneg(self.b[i], scale)
                && tol.nonneg(
                    (self.a[i].max(T::zero()) * self.b[i].max(T::zero())).sqrt() - self.z[i].norm(),
                    scale,
                )
        })
    }

    pub fn is_ghz_diagonal(&self, tol: &Tolerance<T>) -> bool {
        let scale = self.scale();
        (0..4).all(|i| tol.close(self.a[i], self.b[i], scale) && tol.close(self.z[i].im, T::zero(), scale))
    }

    /// Frobenius norm of the embedded 8×8 matrix.
    pub fn norm(&self) -> T {
        self.coords().iter().map(|&v| v * v).sum::<T>().sqrt()
    }

    /// Real coordinates `(a, b, √2 Re z, √2 Im z)`; the Euclidean norm of the
    /// coordinates equals the Frobenius norm of the embedding.
    pub fn coords(&self) -> [T; 16] {
        let r2 = T::SQRT_2();
        let mut c = [T::zero(); 16];
        for i in 0..4 {
            c[i] = self.a[i];
            c[4 + i] = self.b[i];
            c[8 + i] = r2 * self.z[i].re;
            c[12 + i] = r2 * self.z[i].im;
        }
        c
    }

    pub fn from_coords(c: &[T; 16]) -> Self {
        let r2 = T::SQRT_2();
        let mut x = Self::zero();
        for i in 0..4 {
            x.a[i] = c[i];
            x.b[i] = c[4 + i];
            x.z[i] = Complex::new(c[8 + i] / r2, c[12 + i] / r2);
        }
        x
    }

    pub fn cast<U: Real>(&self) -> XMatrix<U> {
        let f = |v: T| U::lit(v.as_f64());
        XMatrix {
            a: self.a.map(f),
            b: self.b.map(f),
            z: self.z.map(|c| Complex::new(f(c.re), f(c.im))),
        }
    }
}

impl<T: Real> Add for XMatrix<T> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<T: Real> AddAssign for XMatrix<T> {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..4 {
            self.a[i] += rhs.a[i];
            self.b[i] += rhs.b[i];
            self.z[i] = self.z[i] + rhs.z[i];
        }
    }
}

impl<T: Real> Sub for XMatrix<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Neg for XMatrix<T> {
    type Output = Self;

    fn neg(self) -> Self {
        self * -T::one()
    }
}

impl<T: Real> Mul<T> for XMatrix<T> {
    type Output = Self;

    fn mul(self, k: T) -> Self {
        XMatrix {
            a: self.a.map(|v| v * k),
            b: self.b.map(|v| v * k),
            z: self.z.map(|c| c * k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn example() -> XMatrix<f64> {
        XMatrix::real([0., 1., 1., 2.], [0., 1., 1., 2.], [0., 1., 1., 0.]).unwrap()
    }

    #[test]
    fn rejects_non_finite() {
        assert!(XMatrix::real([f64::NAN, 0., 0., 0.], [0.; 4], [0.; 4]).is_err());
        assert!(XMatrix::new(
            [0.; 4],
            [0.; 4],
            [c(0., f64::INFINITY), c(0., 0.), c(0., 0.), c(0., 0.)]
        )
        .is_err());
    }

    #[test]
    fn ghz_embedding() {
        let h = XMatrix::<f64>::ghz().embed();
        for i in 0..8 {
            for j in 0..8 {
                let expected = if (i == 0 || i == 7) && (j == 0 || j == 7) {
                    1.0
                } else {
                    0.0
                };
                assert_eq!(h.entry(i, j), c(expected, 0.0), "entry ({i},{j})");
            }
        }
        assert_eq!(XMatrix::<f64>::zero().embed(), Hermitian8::zero());
    }

    #[test]
    fn pairing_examples() {
        let ghz = XMatrix::<f64>::ghz();
        let w_delta = XMatrix::single(Slot::of(1), 1.0, 1.0, c(-1.0, 0.0));
        assert_eq!(w_delta.pair(&ghz), 0.0);
        let w = XMatrix::real([0., 1., 1., 1.], [0., 1., 1., 1.], [-1., 0., 0., 0.]).unwrap();
        assert_eq!(w.pair(&ghz), -2.0);
    }

    #[test]
    fn partial_transposes() {
        let z = [c(1., 2.), c(3., 4.), c(5., 6.), c(7., 8.)];
        let x = XMatrix::new([1.; 4], [2.; 4], z).unwrap();
        assert_eq!(x.partial_transpose(Party::B).z, [z[2], z[3], z[0], z[1]]);
        assert_eq!(x.partial_transpose(Party::C).z, [z[1], z[0], z[3], z[2]]);
        for p in Party::ALL {
            assert_eq!(x.partial_transpose(p).partial_transpose(p), x);
        }
        let g = XMatrix::<f64>::ghz().partial_transpose(Party::A);
        assert_eq!(
            g,
            XMatrix::real([1., 0., 0., 0.], [1., 0., 0., 0.], [0., 0., 0., 1.]).unwrap()
        );
    }

    #[test]
    fn psd_and_ghz_diagonal() {
        let tol = Tolerance::default();
        assert!(XMatrix::<f64>::ghz().is_psd(&tol));
        let bad = XMatrix::real([1., 0., 0., 0.], [0.; 4], [1., 0., 0., 0.]).unwrap();
        assert!(!bad.is_psd(&tol));
        assert!(XMatrix::<f64>::ghz().is_ghz_diagonal(&tol));
        assert!(example().is_ghz_diagonal(&tol));
        let not_ghz = XMatrix::real([1., 0., 0., 0.], [2., 0., 0., 0.], [1., 0., 0., 0.]).unwrap();
        assert!(!not_ghz.is_ghz_diagonal(&tol));
    }

    #[test]
    fn coords_roundtrip_and_norm() {
        let x = XMatrix::new(
            [1., -2., 3., 0.5],
            [0.1, 0.2, 0.3, 0.4],
            [c(1., -1.), c(0., 2.), c(-3., 0.), c(0.5, 0.25)],
        )
        .unwrap();
        let back = XMatrix::from_coords(&x.coords());
        for i in 0..4 {
            assert!((back.a[i] - x.a[i]).abs() < 1e-15);
            assert!((back.z[i] - x.z[i]).norm() < 1e-15);
        }
        assert!((x.norm() - x.embed().frobenius_norm()).abs() < 1e-12);
    }

    #[test]
    fn phase_of_zero_is_zero() {
        assert_eq!(XMatrix::<f64>::zero().phase(Slot::of(2)), 0.0);
        let x = XMatrix::single(Slot::of(2), 1.0, 1.0, c(0.0, -1.0));
        assert!((x.phase(Slot::of(2)) + std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }
}
