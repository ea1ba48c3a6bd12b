#![allow(dead_code)]

use std::f64::consts::TAU;

use nalgebra::{SMatrix, SymmetricEigen};
use proptest::prelude::*;
use xcone::{Complex64, Hermitian64, Party, XMatrix64};

pub type Mat8 = SMatrix<Complex64, 8, 8>;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn xr(a: [f64; 4], b: [f64; 4], z: [f64; 4]) -> XMatrix64 {
    XMatrix64::real(a, b, z).unwrap()
}

pub fn to_na(h: &Hermitian64) -> Mat8 {
    Mat8::from_fn(|i, j| h.entry(i, j))
}

/// Direct placement of an X-matrix, independent of the library's embedding.
pub fn x_to_na(x: &XMatrix64) -> Mat8 {
    let mut m = Mat8::zeros();
    for i in 0..4 {
        m[(i, i)] = c(x.a[i]);
        m[(7 - i, 7 - i)] = c(x.b[i]);
        m[(i, 7 - i)] = x.z[i];
        m[(7 - i, i)] = x.z[i].conj();
    }
    m
}

/// `Tr(Q Pᵗ)` by a full loop.
pub fn trace_pairing(p: &Mat8, q: &Mat8) -> f64 {
    let pt = p.transpose();
    (q * pt).trace().re
}

pub fn min_eigenvalue(m: &Mat8) -> f64 {
    SymmetricEigen::new(*m)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

fn bit(p: Party) -> usize {
    match p {
        Party::A => 4,
        Party::B => 2,
        Party::C => 1,
    }
}

/// Transpose of one tensor factor by basis-index surgery.
pub fn partial_transpose_na(m: &Mat8, p: Party) -> Mat8 {
    let mask = bit(p);
    Mat8::from_fn(|r, s| {
        let r2 = (r & !mask) | (s & mask);
        let s2 = (s & !mask) | (r & mask);
        m[(r2, s2)]
    })
}

pub fn arb_complex(max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..max, 0.0..TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

/// Arbitrary X-matrices, including non-PSD ones.
pub fn arb_x() -> impl Strategy<Value = XMatrix64> {
    (
        prop::array::uniform4(-0.5..2.0f64),
        prop::array::uniform4(-0.5..2.0f64),
        prop::array::uniform4(arb_complex(2.0)),
    )
        .prop_map(|(a, b, z)| XMatrix64::new(a, b, z).unwrap())
}

fn diag_entry() -> impl Strategy<Value = f64> {
    prop_oneof![1 => Just(0.0), 6 => 0.0..2.0f64]
}

/// PSD X-matrices, with some zero diagonals and saturated blocks.
pub fn arb_psd_x() -> impl Strategy<Value = XMatrix64> {
    (
        prop::array::uniform4(diag_entry()),
        prop::array::uniform4(diag_entry()),
        prop::array::uniform4(prop_oneof![1 => Just(1.0), 4 => 0.0..=1.0f64]),
        prop::array::uniform4(0.0..TAU),
    )
        .prop_map(|(a, b, t, th)| {
            let mut z = [Complex64::new(0.0, 0.0); 4];
            for i in 0..4 {
                z[i] = Complex64::from_polar((a[i] * b[i]).sqrt() * t[i], th[i]);
            }
            XMatrix64::new(a, b, z).unwrap()
        })
}

/// Witness candidates with nonnegative diagonal.
pub fn arb_witness() -> impl Strategy<Value = XMatrix64> {
    (
        prop::array::uniform4(diag_entry()),
        prop::array::uniform4(diag_entry()),
        prop::array::uniform4(arb_complex(1.5)),
    )
        .prop_map(|(a, b, z)| XMatrix64::new(a, b, z).unwrap())
}

pub fn arb_hermitian() -> impl Strategy<Value = Hermitian64> {
    (
        prop::array::uniform8(-1.0..1.0f64),
        prop::collection::vec(arb_complex(1.0), 28),
    )
        .prop_map(|(d, off)| {
            let mut m = [[Complex64::new(0.0, 0.0); 8]; 8];
            let mut k = 0;
            for i in 0..8 {
                m[i][i] = c(d[i]);
                for j in i + 1..8 {
                    m[i][j] = off[k];
                    m[j][i] = off[k].conj();
                    k += 1;
                }
            }
            Hermitian64::new(m, &Default::default()).unwrap()
        })
}
