use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use super::{symmetric_eigenvalues, Party, SystemPerm, Tolerance, XMatrix};
use crate::{Error, Real, Result};

/// General 8×8 self-adjoint matrix over `C² ⊗ C² ⊗ C²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hermitian8<T> {
    m: [[Complex<T>; 8]; 8],
}

impl<T: Real> Hermitian8<T> {
    /// Validates finiteness and self-adjointness within `tol`, then
    /// symmetrises away the admitted rounding.
    pub fn new(entries: [[Complex<T>; 8]; 8], tol: &Tolerance<T>) -> Result<Self> {
        let mut scale = T::zero();
        for (i, row) in entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::InvalidInput(format!(
                        "non-finite entry at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                scale = scale.max(v.norm());
            }
        }
        let scale = T::one() + scale;
        for i in 0..8 {
            for j in i..8 {
                let gap = (entries[i][j] - entries[j][i].conj()).norm();
                if gap > tol.eps * scale {
                    return Err(Error::InvalidInput(format!(
                        "matrix is not self-adjoint: entries ({}, {}) and ({}, {}) differ from conjugate symmetry by {}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1,
                        gap
                    )));
                }
            }
        }
        let half = T::lit(0.5);
        let mut m = entries;
        for i in 0..8 {
            for j in i..8 {
                let v = (entries[i][j] + entries[j][i].conj()) * half;
                m[i][j] = v;
                m[j][i] = v.conj();
            }
        }
        Ok(Hermitian8 { m })
    }

    pub fn zero() -> Self {
        Hermitian8 {
            m: [[Complex::new(T::zero(), T::zero()); 8]; 8],
        }
    }

    pub fn identity() -> Self {
        Self::diagonal([T::one(); 8])
    }

    pub fn diagonal(d: [T; 8]) -> Self {
        let mut h = Self::zero();
        for (i, v) in d.into_iter().enumerate() {
            h.m[i][i] = Complex::new(v, T::zero());
        }
        h
    }

    /// Unnormalised projector `|v⟩⟨v|`.
    pub fn projector(v: &[Complex<T>; 8]) -> Self {
        let mut h = Self::zero();
        for i in 0..8 {
            for j in 0..8 {
                h.m[i][j] = v[i] * v[j].conj();
            }
        }
        h
    }

    /// `|x⟩⊗|y⟩⊗|w⟩` projector.
    pub fn product_projector(x: &[Complex<T>; 2], y: &[Complex<T>; 2], w: &[Complex<T>; 2]) -> Self {
        let mut v = [Complex::new(T::zero(), T::zero()); 8];
        for (k, slot) in v.iter_mut().enumerate() {
            *slot = x[(k >> 2) & 1] * y[(k >> 1) & 1] * w[k & 1];
        }
        Self::projector(&v)
    }

    pub(crate) fn set_raw(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.m[i][j] = v;
    }

    /// Zero-based entry access.
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.m[i][j]
    }

    pub fn entries(&self) -> &[[Complex<T>; 8]; 8] {
        &self.m
    }

    /// Keeps the diagonal and anti-diagonal.
    pub fn x_part(&self) -> XMatrix<T> {
        let mut x = XMatrix::zero();
        for i in 0..4 {
            let j = 7 - i;
            x.a[i] = self.m[i][i].re;
            x.b[i] = self.m[j][j].re;
            x.z[i] = self.m[i][j];
        }
        x
    }

    /// Frobenius norm of everything outside the X pattern.
    pub fn off_x_norm(&self) -> T {
        let mut acc = T::zero();
        for i in 0..8 {
            for j in 0..8 {
                if j != i && j != 7 - i {
                    acc += self.m[i][j].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    pub fn is_x_shaped(&self, tol: &Tolerance<T>) -> bool {
        self.off_x_norm() <= tol.eps * (T::one() + self.frobenius_norm())
    }

    pub fn frobenius_norm(&self) -> T {
        self.m.iter().flatten().map(|v| v.norm_sqr()).sum::<T>().sqrt()
    }

    /// `⟨self, q⟩ = Tr(q selfᵗ) = Σ_pq q_pq self_pq`.
    pub fn pair(&self, q: &Hermitian8<T>) -> T {
        let mut acc = Complex::new(T::zero(), T::zero());
        for p in 0..8 {
            for r in 0..8 {
                acc += q.m[p][r] * self.m[p][r];
            }
        }
        acc.re
    }

    /// Eigenvalues in ascending order, via the 16×16 real symmetric form
    /// `[[Re H, -Im H], [Im H, Re H]]` whose spectrum is that of `H` doubled.
    pub fn eigenvalues(&self) -> [T; 8] {
        let mut s = [[T::zero(); 16]; 16];
        for i in 0..8 {
            for j in 0..8 {
                let v = self.m[i][j];
                s[i][j] = v.re;
                s[i + 8][j + 8] = v.re;
                s[i][j + 8] = -v.im;
                s[i + 8][j] = v.im;
            }
        }
        let all = symmetric_eigenvalues(s);
        let mut out = [T::zero(); 8];
        for k in 0..8 {
            out[k] = T::lit(0.5) * (all[2 * k] + all[2 * k + 1]);
        }
        out
    }

    pub fn is_psd(&self, tol: &Tolerance<T>) -> bool {
        let eig = self.eigenvalues();
        let spectral = eig.iter().fold(T::zero(), |m, v| m.max(v.abs()));
        eig[0] >= -tol.eps * (T::one() + spectral)
    }

    pub fn partial_transpose(&self, party: Party) -> Self {
        let bit = 1usize << party.shift();
        let mut out = Self::zero();
        for i in 0..8 {
            for j in 0..8 {
                let (ti, tj) = if (i & bit) != (j & bit) {
                    (i ^ bit, j ^ bit)
                } else {
                    (i, j)
                };
                out.m[ti][tj] = self.m[i][j];
            }
        }
        out
    }

    pub fn permute(&self, sigma: &SystemPerm) -> Self {
        let mut out = Self::zero();
        for i in 0..8 {
            for j in 0..8 {
                out.m[sigma.apply_basis(i)][sigma.apply_basis(j)] = self.m[i][j];
            }
        }
        out
    }
}

impl<T: Real> Add for Hermitian8<T> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for i in 0..8 {
            for j in 0..8 {
                self.m[i][j] += rhs.m[i][j];
            }
        }
        self
    }
}

impl<T: Real> Sub for Hermitian8<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + rhs * -T::one()
    }
}

impl<T: Real> Mul<T> for Hermitian8<T> {
    type Output = Self;

    fn mul(mut self, k: T) -> Self {
        for row in self.m.iter_mut() {
            for v in row.iter_mut() {
                *v *= k;
            }
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn rejects_non_self_adjoint_and_names_entries() {
        let mut e = [[c(0., 0.); 8]; 8];
        e[1][5] = c(1., 0.);
        let err = Hermitian8::new(e, &Tolerance::default()).unwrap_err();
        assert!(err.to_string().contains("(2, 6)"), "{err}");
        e[5][1] = c(1., 0.);
        assert!(Hermitian8::new(e, &Tolerance::default()).is_ok());
    }

    #[test]
    fn identity_pairing_and_psd() {
        let id = Hermitian8::<f64>::identity();
        assert_eq!(id.pair(&id), 8.0);
        let tol = Tolerance::default();
        assert!(id.is_psd(&tol));
        let mut d = [1.0; 8];
        d[7] = -1.0;
        assert!(!Hermitian8::diagonal(d).is_psd(&tol));
    }

    #[test]
    fn ghz_full_pairing_by_loop() {
        let g = XMatrix::<f64>::ghz().embed();
        let mut brute = 0.0;
        for p in 0..8 {
            for q in 0..8 {
                // Tr(Q Pᵗ) = Σ_p Σ_q Q[p][q] · Pᵗ[q][p]
                brute += (g.entry(p, q) * g.entry(p, q)).re;
            }
        }
        assert_eq!(brute, 4.0);
        assert_eq!(g.pair(&g), 4.0);
    }

    #[test]
    fn w_state_x_part() {
        let s = 1.0 / 3f64.sqrt();
        let mut v = [c(0., 0.); 8];
        v[1] = c(s, 0.);
        v[2] = c(s, 0.);
        v[4] = c(s, 0.);
        let x = Hermitian8::projector(&v).x_part();
        let third = 1.0 / 3.0;
        let expect = [0., third, third, 0.];
        for i in 0..4 {
            assert!((x.a[i] - expect[i]).abs() < 1e-15);
            assert!(x.z[i].norm() < 1e-15);
        }
        assert!((x.b[3] - third).abs() < 1e-15);
        assert!(x.b[..3].iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn full_partial_transpose_matches_x_formula() {
        let z = [c(1., 2.), c(3., -4.), c(-5., 6.), c(7., 0.5)];
        let x = XMatrix::new([9.; 4], [8.; 4], z).unwrap();
        for p in Party::ALL {
            let full = x.embed().partial_transpose(p);
            assert_eq!(full.x_part(), x.partial_transpose(p));
            assert_eq!(full.off_x_norm(), 0.0);
        }
    }

    #[test]
    fn permutation_matches_x_formula() {
        let z = [c(1., 2.), c(3., -4.), c(-5., 6.), c(7., 0.5)];
        let x = XMatrix::new([1., 2., 3., 4.], [5., 6., 7., 8.], z).unwrap();
        for s in SystemPerm::all() {
            assert_eq!(x.embed().permute(&s).x_part(), x.permute(&s));
        }
    }
}
