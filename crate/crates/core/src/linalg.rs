//! Small dense linear-algebra helpers on complex matrices.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::C64;

pub type CMat = DMatrix<C64>;

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn identity(dim: usize) -> CMat {
    CMat::identity(dim, dim)
}

/// `|i⟩⟨j|` in dimension `dim`.
pub fn ket_bra(i: usize, j: usize, dim: usize) -> CMat {
    let mut m = CMat::zeros(dim, dim);
    m[(i, j)] = c(1.0);
    m
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn is_hermitian(m: &CMat, tol: f64) -> bool {
    m.is_square() && (m - m.adjoint()).iter().all(|z| z.norm() <= tol)
}

pub fn is_real(m: &CMat) -> bool {
    m.iter().all(|z| z.im == 0.0)
}

pub fn is_diagonal(m: &CMat) -> bool {
    let n = m.nrows();
    (0..n).all(|i| (0..n).all(|j| i == j || m[(i, j)] == C64::new(0.0, 0.0)))
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

pub fn eigh(m: &CMat) -> Eigen {
    let n = m.nrows();
    let (values, vectors) = if is_real(m) {
        let re = m.map(|z| z.re);
        let e = SymmetricEigen::new(re);
        (e.eigenvalues.as_slice().to_vec(), e.eigenvectors.map(c))
    } else {
        let e = SymmetricEigen::new(m.clone());
        (e.eigenvalues.as_slice().to_vec(), e.eigenvectors)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted_vals = order.iter().map(|&i| values[i]).collect();
    let sorted_vecs = CMat::from_fn(n, n, |r, col| vectors[(r, order[col])]);
    Eigen {
        values: sorted_vals,
        vectors: sorted_vecs,
    }
}

/// Spectral norm of a Hermitian matrix.
pub fn hermitian_norm(m: &CMat) -> f64 {
    if is_diagonal(m) {
        return (0..m.nrows()).map(|i| m[(i, i)].norm()).fold(0.0, f64::max);
    }
    eigh(m).values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// `exp(-i t H)` for Hermitian `H`.
pub fn expm_i(h: &CMat, t: f64) -> CMat {
    let e = eigh(h);
    let n = h.nrows();
    let phases = CMat::from_fn(n, n, |i, j| {
        if i == j {
            C64::from_polar(1.0, -t * e.values[i])
        } else {
            C64::new(0.0, 0.0)
        }
    });
    &e.vectors * phases * e.vectors.adjoint()
}

/// Value of qubit `q` in basis index `idx` of a `width`-qubit register.
#[inline]
pub fn bit(idx: usize, q: usize, width: usize) -> usize {
    (idx >> (width - 1 - q)) & 1
}

/// Basis index of a bit string, first character most significant.
pub fn index_of(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

pub fn bits_of(idx: usize, width: usize) -> Vec<bool> {
    (0..width).map(|q| bit(idx, q, width) == 1).collect()
}

pub fn bitstring(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Haar-ish random unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal divided out.
pub fn random_unitary(dim: usize, rng: &mut crate::rng::Rng) -> CMat {
    let g = CMat::from_fn(dim, dim, |_, _| {
        C64::new(crate::circuit::gauss(rng), crate::circuit::gauss(rng))
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = CMat::from_fn(dim, dim, |i, j| {
        if i == j {
            let d = r[(i, i)];
            if d.norm() > 0.0 {
                d / d.norm()
            } else {
                c(1.0)
            }
        } else {
            c(0.0)
        }
    });
    q * phases
}

/// Applies a dense block on `support` to a full amplitude vector in place.
pub fn apply_local(amps: &mut [C64], width: usize, support: &[usize], block: &CMat) {
    let k = support.len();
    let shifts: Vec<usize> = support.iter().map(|&q| width - 1 - q).collect();
    let mask = shifts.iter().fold(0usize, |m, &s| m | (1 << s));
    let deposit: Vec<usize> = (0..1usize << k)
        .map(|c| {
            shifts
                .iter()
                .enumerate()
                .fold(0, |acc, (j, &s)| acc | (((c >> (k - 1 - j)) & 1) << s))
        })
        .collect();
    let mut local = vec![C64::new(0.0, 0.0); 1 << k];
    for base in 0..amps.len() {
        if base & mask != 0 {
            continue;
        }
        for (c, l) in local.iter_mut().enumerate() {
            *l = amps[base | deposit[c]];
        }
        for r in 0..1usize << k {
            amps[base | deposit[r]] = (0..1usize << k).map(|c| block[(r, c)] * local[c]).sum();
        }
    }
}
