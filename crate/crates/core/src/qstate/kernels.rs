//! In-place amplitude kernels. Targets are assumed validated by the caller.
//!
//! Qubit `q` of an `n`-qubit register lives at bit `n - 1 - q` of the
//! amplitude index.

use crate::C64;

#[inline]
pub(crate) fn bit_mask(n: usize, q: usize) -> usize {
    1usize << (n - 1 - q)
}

/// Generic 2x2 matrix `[m00, m01, m10, m11]` on qubit `q`.
pub(crate) fn apply_1q(amps: &mut [C64], n: usize, q: usize, m: [C64; 4]) {
    let stride = bit_mask(n, q);
    for chunk in amps.chunks_exact_mut(2 * stride) {
        let (lo, hi) = chunk.split_at_mut(stride);
        for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
            let x0 = *a0;
            let x1 = *a1;
            *a0 = m[0] * x0 + m[1] * x1;
            *a1 = m[2] * x0 + m[3] * x1;
        }
    }
}

/// `Ry(θ) = [[c, -s], [s, c]]` with `c = cos θ/2`, `s = sin θ/2`.
pub(crate) fn apply_ry(amps: &mut [C64], n: usize, q: usize, theta: f64) {
    let (s, c) = (0.5 * theta).sin_cos();
    let stride = bit_mask(n, q);
    for chunk in amps.chunks_exact_mut(2 * stride) {
        let (lo, hi) = chunk.split_at_mut(stride);
        for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
            let x0 = *a0;
            let x1 = *a1;
            *a0 = x0 * c - x1 * s;
            *a1 = x0 * s + x1 * c;
        }
    }
}

/// `Rx(θ) = [[c, -i s], [-i s, c]]`.
pub(crate) fn apply_rx(amps: &mut [C64], n: usize, q: usize, theta: f64) {
    let (s, c) = (0.5 * theta).sin_cos();
    let mis = C64::new(0.0, -s);
    let stride = bit_mask(n, q);
    for chunk in amps.chunks_exact_mut(2 * stride) {
        let (lo, hi) = chunk.split_at_mut(stride);
        for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
            let x0 = *a0;
            let x1 = *a1;
            *a0 = x0 * c + x1 * mis;
            *a1 = x0 * mis + x1 * c;
        }
    }
}

/// `Rz(θ) = diag(e^{-iθ/2}, e^{iθ/2})`.
pub(crate) fn apply_rz(amps: &mut [C64], n: usize, q: usize, theta: f64) {
    let p0 = C64::from_polar(1.0, -0.5 * theta);
    let p1 = p0.conj();
    let stride = bit_mask(n, q);
    for chunk in amps.chunks_exact_mut(2 * stride) {
        let (lo, hi) = chunk.split_at_mut(stride);
        for a in lo.iter_mut() {
            *a *= p0;
        }
        for a in hi.iter_mut() {
            *a *= p1;
        }
    }
}

pub(crate) fn apply_cz(amps: &mut [C64], n: usize, a: usize, b: usize) {
    let mask = bit_mask(n, a) | bit_mask(n, b);
    for (i, amp) in amps.iter_mut().enumerate() {
        if i & mask == mask {
            *amp = -*amp;
        }
    }
}

pub(crate) fn apply_cnot(amps: &mut [C64], n: usize, control: usize, target: usize) {
    let cm = bit_mask(n, control);
    let tm = bit_mask(n, target);
    for i in 0..amps.len() {
        if i & cm != 0 && i & tm == 0 {
            amps.swap(i, i | tm);
        }
    }
}

pub(crate) fn apply_x(amps: &mut [C64], n: usize, q: usize) {
    let stride = bit_mask(n, q);
    for chunk in amps.chunks_exact_mut(2 * stride) {
        let (lo, hi) = chunk.split_at_mut(stride);
        lo.swap_with_slice(hi);
    }
}

/// `Y = [[0, -i], [i, 0]]`.
pub(crate) fn apply_y(amps: &mut [C64], n: usize, q: usize) {
    let stride = bit_mask(n, q);
    let i = C64::new(0.0, 1.0);
    for chunk in amps.chunks_exact_mut(2 * stride) {
        let (lo, hi) = chunk.split_at_mut(stride);
        for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
            let x0 = *a0;
            *a0 = -i * *a1;
            *a1 = i * x0;
        }
    }
}

pub(crate) fn apply_z(amps: &mut [C64], n: usize, q: usize) {
    let stride = bit_mask(n, q);
    for chunk in amps.chunks_exact_mut(2 * stride) {
        for a in chunk[stride..].iter_mut() {
            *a = -*a;
        }
    }
}

/// Dense `2^k x 2^k` row-major matrix on `targets`; `targets[0]` is the most
/// significant bit of the local index.
pub(crate) fn apply_dense(amps: &mut [C64], n: usize, targets: &[usize], matrix: &[C64]) {
    let k = targets.len();
    let sub = 1usize << k;
    debug_assert_eq!(matrix.len(), sub * sub);
    let masks: Vec<usize> = targets.iter().map(|&t| bit_mask(n, t)).collect();
    let tmask: usize = masks.iter().sum();
    let offsets: Vec<usize> = (0..sub)
        .map(|s| {
            (0..k)
                .filter(|&j| (s >> (k - 1 - j)) & 1 == 1)
                .map(|j| masks[j])
                .sum()
        })
        .collect();
    let mut buf = vec![C64::new(0.0, 0.0); sub];
    for base in 0..amps.len() {
        if base & tmask != 0 {
            continue;
        }
        for (b, &off) in buf.iter_mut().zip(&offsets) {
            *b = amps[base + off];
        }
        for (r, &off) in offsets.iter().enumerate() {
            let row = &matrix[r * sub..(r + 1) * sub];
            amps[base + off] = row.iter().zip(&buf).map(|(m, x)| m * x).sum();
        }
    }
}
