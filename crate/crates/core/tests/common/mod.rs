//! Shared test oracles, independent of the code paths they check.
//!
//! * `jacobi_eig` — cyclic complex Jacobi diagonalization of Hermitian
//!   matrices; the reference for eigenvalue-based checks.
//! * `svd_norm` — largest singular value via Jacobi on A†A; the reference
//!   for `spectral_norm`.
//! * `expm_hermitian` — V·e^Λ·V† through the Jacobi oracle; the reference
//!   for `expm` on Hermitian inputs.
//! * `taylor_expm` — a second, plain series implementation with a fixed
//!   scaling policy; the reference for `expm` on general inputs.
//! * `recursive_product` — the splitting formula evaluated by direct matrix
//!   recursion instead of schedule flattening; the reference for
//!   `Schedule::suzuki` + `evaluate`.

#![allow(dead_code)]

use num_complex::Complex64;
use prodform::linalg::ComplexMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_matrix(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| {
        c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
    .unwrap()
}

pub fn random_hermitian(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let m = random_matrix(dim, rng);
    m.add(&m.dagger()).scaled(c(0.5, 0.0))
}

pub fn random_real_diagonal(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let d: Vec<Complex64> = (0..dim).map(|_| c(rng.gen_range(-1.0..1.0), 0.0)).collect();
    ComplexMatrix::diagonal(&d).unwrap()
}

/// Random unitary via Gram-Schmidt on a random matrix's columns.
pub fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let m = random_matrix(dim, rng);
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|j| (0..dim).map(|i| m.get(i, j)).collect())
        .collect();
    for j in 0..dim {
        for k in 0..j {
            let proj: Complex64 = (0..dim).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..dim {
                let sub = proj * cols[k][i];
                cols[j][i] -= sub;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 1e-8, "random columns were near-dependent");
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i]).unwrap()
}

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
/// Returns (eigenvalues, eigenvector columns) with A·V = V·diag(λ).
pub fn jacobi_eig(a: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = a.dim();
    let mut m: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j)).collect())
        .collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
                .collect()
        })
        .collect();

    let scale = a.frobenius_norm().max(1.0);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += m[p][q].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p][q];
                if apq.norm() <= 1e-300 {
                    continue;
                }
                let app = m[p][p].re;
                let aqq = m[q][q].re;
                let phase = apq / apq.norm();
                let theta = 0.5 * (2.0 * apq.norm()).atan2(app - aqq);
                let (s, co) = theta.sin_cos();
                // column rotation: col_p' = co*col_p + s*conj(phase)... applied
                // as G with G[p][p]=co, G[p][q]=-s*phase, G[q][p]=s*conj(phase),
                // G[q][q]=co; update M <- G† M G and V <- V G.
                let gpp = c(co, 0.0);
                let gpq = -phase * s;
                let gqp = phase.conj() * s;
                let gqq = c(co, 0.0);

                // M <- M G (columns p, q)
                for i in 0..n {
                    let mip = m[i][p];
                    let miq = m[i][q];
                    m[i][p] = mip * gpp + miq * gqp;
                    m[i][q] = mip * gpq + miq * gqq;
                }
                // M <- G† M (rows p, q)
                for jcol in 0..n {
                    let mpj = m[p][jcol];
                    let mqj = m[q][jcol];
                    m[p][jcol] = gpp.conj() * mpj + gqp.conj() * mqj;
                    m[q][jcol] = gpq.conj() * mpj + gqq.conj() * mqj;
                }
                // V <- V G
                for i in 0..n {
                    let vip = v[i][p];
                    let viq = v[i][q];
                    v[i][p] = vip * gpp + viq * gqp;
                    v[i][q] = vip * gpq + viq * gqq;
                }
            }
        }
    }
    let eigs: Vec<f64> = (0..n).map(|i| m[i][i].re).collect();
    let vm = ComplexMatrix::from_fn(n, |i, j| v[i][j]).unwrap();
    (eigs, vm)
}

/// Largest singular value through the Jacobi oracle on A†A.
pub fn svd_norm(a: &ComplexMatrix) -> f64 {
    let gram = a.dagger().matmul(a).unwrap();
    let (eigs, _) = jacobi_eig(&gram);
    eigs.iter().fold(0.0f64, |acc, &x| acc.max(x)).max(0.0).sqrt()
}

/// e^A for Hermitian A through the Jacobi oracle: V e^Λ V†.
pub fn expm_hermitian(a: &ComplexMatrix) -> ComplexMatrix {
    let (eigs, v) = jacobi_eig(a);
    let d = ComplexMatrix::diagonal(&eigs.iter().map(|&x| c(x.exp(), 0.0)).collect::<Vec<_>>())
        .unwrap();
    v.matmul(&d).unwrap().matmul(&v.dagger()).unwrap()
}

/// Plain Taylor exponential with its own scaling rule (scale to norm <=
/// 0.25, fixed 40-term series); written separately from the library kernel.
pub fn taylor_expm(a: &ComplexMatrix) -> ComplexMatrix {
    let norm = a.frobenius_norm();
    let s: i32 = if norm <= 0.25 {
        0
    } else {
        (norm / 0.25).log2().ceil() as i32
    };
    let scaled = a.scaled(c(2f64.powi(-s), 0.0));
    let mut sum = ComplexMatrix::identity(a.dim());
    let mut term = ComplexMatrix::identity(a.dim());
    for k in 1..=40u64 {
        term = term.matmul(&scaled).unwrap().scaled(c(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
    }
    let mut out = sum;
    for _ in 0..s {
        out = out.matmul(&out).unwrap();
    }
    out
}

/// Coefficient of the five-factor recursion, written independently.
fn recursion_coefficient(order: u32) -> f64 {
    1.0 / (4.0 - 4f64.powf(1.0 / (order as f64 - 1.0)))
}

/// The symmetric splitting evaluated by direct matrix recursion:
/// base exp(B/2)·exp(C)·exp(B/2), then the five-factor composition. The
/// time dependence enters by pre-scaling B and C.
pub fn recursive_product(b: &ComplexMatrix, cm: &ComplexMatrix, order: u32) -> ComplexMatrix {
    assert!(order >= 2 && order % 2 == 0);
    if order == 2 {
        let half_b = b.scaled(c(0.5, 0.0)).expm().unwrap();
        return half_b
            .matmul(&cm.expm().unwrap())
            .unwrap()
            .matmul(&half_b)
            .unwrap();
    }
    let sk = recursion_coefficient(order);
    let outer = recursive_product(&b.scaled(c(sk, 0.0)), &cm.scaled(c(sk, 0.0)), order - 2);
    let mid_scale = 1.0 - 4.0 * sk;
    let middle = recursive_product(
        &b.scaled(c(mid_scale, 0.0)),
        &cm.scaled(c(mid_scale, 0.0)),
        order - 2,
    );
    outer
        .matmul(&outer)
        .unwrap()
        .matmul(&middle)
        .unwrap()
        .matmul(&outer)
        .unwrap()
        .matmul(&outer)
        .unwrap()
}
