#![allow(dead_code)]

use ptcoh::linalg::{partial_trace, trace_distance, CMat, Complex};
use ptcoh::state::QState;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `exp(a)` by scaling and squaring a truncated Taylor series. Independent
/// of the closed-form propagators under test.
pub fn expm(a: &CMat) -> CMat {
    let n = a.rows();
    let norm = a.frobenius_norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.scale_re(0.5f64.powi(squarings as i32));
    let mut sum = CMat::identity(n);
    let mut term = CMat::identity(n);
    for k in 1..=30 {
        term = (&term * &scaled).scale_re(1.0 / k as f64);
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

pub fn gaussian_complex(rng: &mut ChaCha8Rng) -> Complex {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state on `n` qubits.
pub fn random_pure(rng: &mut ChaCha8Rng, n: usize) -> QState {
    let psi: Vec<Complex> = (0..1 << n).map(|_| gaussian_complex(rng)).collect();
    QState::from_pure(&psi).unwrap()
}

/// Random density matrix `G G† / tr(G G†)` with `G` a `2ⁿ × k` Ginibre matrix.
pub fn random_mixed(rng: &mut ChaCha8Rng, n: usize, rank: usize) -> QState {
    let d = 1 << n;
    let g = CMat::from_vec(
        d,
        rank,
        (0..d * rank).map(|_| gaussian_complex(rng)).collect(),
    )
    .unwrap();
    let w = &g * &g.dagger();
    let tr = w.trace().re;
    QState::new(n, w.scale_re(1.0 / tr).hermitian_part()).unwrap()
}

/// Trace distance between `rho` and the product of its marginals on `left`
/// and the complementary qubits.
pub fn distance_to_product(s: &QState, left: &[usize]) -> f64 {
    let n = s.n_qubits();
    let right: Vec<usize> = (0..n).filter(|q| !left.contains(q)).collect();
    let a = partial_trace(s.rho(), n, left).unwrap();
    let b = partial_trace(s.rho(), n, &right).unwrap();
    assert!(
        left.iter().all(|&q| right.iter().all(|&p| q < p)),
        "left block must precede right block"
    );
    trace_distance(s.rho(), &a.kron(&b)).unwrap()
}

pub fn relative_frobenius(a: &CMat, b: &CMat) -> f64 {
    (a - b).frobenius_norm() / b.frobenius_norm().max(1e-300)
}
