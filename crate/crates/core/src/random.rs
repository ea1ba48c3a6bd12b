//! Random test inputs: X-matrices, witness candidates, product states and
//! general self-adjoint matrices.

use num_complex::Complex;
use rand::Rng;

use crate::xcore::{Hermitian8, Slot, XMatrix};
use crate::Real;

fn phase<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.gen_range(0.0..std::f64::consts::TAU)
}

fn polar<T: Real>(r: f64, t: f64) -> Complex<T> {
    Complex::from_polar(T::lit(r), T::lit(t))
}

/// PSD X-matrix: each `2×2` block is positive, with occasional zero
/// diagonals and saturated blocks.
pub fn random_psd_x<T: Real, R: Rng + ?Sized>(rng: &mut R) -> XMatrix<T> {
    let mut x = XMatrix::zero();
    for s in Slot::ALL {
        let i = s.index();
        let mut a: f64 = rng.gen();
        let mut b: f64 = rng.gen();
        match rng.gen_range(0..10) {
            0 => a = 0.0,
            1 => b = 0.0,
            _ => {}
        }
        let t: f64 = rng.gen();
        let m = (a * b).sqrt() * if rng.gen_bool(0.1) { 1.0 } else { t };
        x.a[i] = T::lit(a);
        x.b[i] = T::lit(b);
        x.z[i] = polar(m, phase(rng));
    }
    x
}

/// Half PSD, half arbitrary (negative diagonals and oversized anti-diagonal
/// entries allowed).
pub fn random_x<T: Real, R: Rng + ?Sized>(rng: &mut R) -> XMatrix<T> {
    if rng.gen_bool(0.5) {
        return random_psd_x(rng);
    }
    let mut x = XMatrix::zero();
    for s in Slot::ALL {
        let i = s.index();
        x.a[i] = T::lit(rng.gen_range(-0.2..1.0));
        x.b[i] = T::lit(rng.gen_range(-0.2..1.0));
        x.z[i] = polar(rng.gen_range(0.0..1.2), phase(rng));
    }
    x
}

/// Witness candidate with nonnegative diagonal.
pub fn random_witness_candidate<T: Real, R: Rng + ?Sized>(rng: &mut R) -> XMatrix<T> {
    let mut w = XMatrix::zero();
    for s in Slot::ALL {
        let i = s.index();
        let zero = rng.gen_bool(0.1);
        w.a[i] = T::lit(if zero { 0.0 } else { rng.gen() });
        w.b[i] = T::lit(if zero { 0.0 } else { rng.gen() });
        w.z[i] = polar(rng.gen_range(0.0..0.8), phase(rng));
    }
    w
}

/// A normalised random vector in `C²`.
pub fn random_qubit<T: Real, R: Rng + ?Sized>(rng: &mut R) -> [Complex<T>; 2] {
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::PI);
    [polar((theta / 2.0).cos(), 0.0), polar((theta / 2.0).sin(), phase(rng))]
}

/// Projector onto a random product vector `x ⊗ y ⊗ w`.
pub fn random_product_state<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Hermitian8<T> {
    let x = random_qubit(rng);
    let y = random_qubit(rng);
    let w = random_qubit(rng);
    Hermitian8::product_projector(&x, &y, &w)
}

/// Random self-adjoint matrix with entries of modulus at most one.
pub fn random_hermitian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Hermitian8<T> {
    let mut h = Hermitian8::zero();
    for i in 0..8 {
        h.set_raw(i, i, polar(rng.gen_range(-1.0..1.0), 0.0));
        for j in i + 1..8 {
            let v = polar(rng.gen(), phase(rng));
            h.set_raw(i, j, v);
            h.set_raw(j, i, v.conj());
        }
    }
    h
}
