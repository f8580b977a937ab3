//! Pauli-expectation readout, seeded Gaussian readout noise, and least-squares
//! state reconstruction with projection onto the physical states.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{herm_eig, kron_all, pauli_x, pauli_y, pauli_z, CMat, HermEig};
use crate::state::QState;

pub const MAX_ITERATIONS: usize = 500;

/// Expectation values of a set of Pauli strings, e.g. `"XZI"`. The first
/// character acts on qubit 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    #[serde(rename = "labels")]
    pub observable_labels: Vec<String>,
    pub values: Vec<f64>,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl MeasurementRecord {
    pub fn new(labels: Vec<String>, values: Vec<f64>) -> Result<Self> {
        let rec = MeasurementRecord {
            observable_labels: labels,
            values,
            noise_sigma: 0.0,
            seed: 0,
        };
        rec.validate()?;
        Ok(rec)
    }

    /// Number of qubits the labels address.
    pub fn validate(&self) -> Result<usize> {
        if self.observable_labels.len() != self.values.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels but {} values",
                self.observable_labels.len(),
                self.values.len()
            )));
        }
        let n = self
            .observable_labels
            .first()
            .map(|l| l.len())
            .ok_or_else(|| Error::Underdetermined("empty record".into()))?;
        let mut seen = HashSet::new();
        for label in &self.observable_labels {
            if label.len() != n || label.is_empty() || !label.chars().all(|c| "IXYZ".contains(c)) {
                return Err(Error::MalformedLabel(label.clone()));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::MalformedLabel(format!("{label} (duplicate)")));
            }
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(n)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let rec: MeasurementRecord = serde_json::from_str(s)?;
        rec.validate()?;
        Ok(rec)
    }
}

pub fn pauli_matrix(label: &str) -> Result<CMat> {
    let factors = label
        .chars()
        .map(|c| match c {
            'I' => Ok(CMat::identity(2)),
            'X' => Ok(pauli_x()),
            'Y' => Ok(pauli_y()),
            'Z' => Ok(pauli_z()),
            _ => Err(Error::MalformedLabel(label.to_string())),
        })
        .collect::<Result<Vec<_>>>()?;
    if factors.is_empty() {
        return Err(Error::MalformedLabel(label.to_string()));
    }
    Ok(kron_all(&factors))
}

/// All `4ⁿ` Pauli strings in lexicographic `I < X < Y < Z` order, optionally
/// without the identity.
pub fn all_pauli_labels(n_qubits: usize, include_identity: bool) -> Vec<String> {
    const LETTERS: [char; 4] = ['I', 'X', 'Y', 'Z'];
    let total = 1usize << (2 * n_qubits);
    (0..total)
        .map(|mut k| {
            let mut s = vec!['I'; n_qubits];
            for slot in s.iter_mut().rev() {
                *slot = LETTERS[k % 4];
                k /= 4;
            }
            s.into_iter().collect::<String>()
        })
        .filter(|l| include_identity || l.chars().any(|c| c != 'I'))
        .collect()
}

fn expectation(rho: &CMat, pauli: &CMat) -> f64 {
    // tr(ρP) = Σ_ij ρ_ij P_ji
    let d = rho.rows();
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..d {
            acc += (rho[(i, j)] * pauli[(j, i)]).re;
        }
    }
    acc
}

pub fn measure_paulis(s: &QState, labels: &[&str]) -> Result<MeasurementRecord> {
    let mut values = Vec::with_capacity(labels.len());
    for &label in labels {
        if label.len() != s.n_qubits() {
            return Err(Error::MalformedLabel(label.to_string()));
        }
        values.push(expectation(s.rho(), &pauli_matrix(label)?));
    }
    MeasurementRecord::new(labels.iter().map(|l| l.to_string()).collect(), values)
}

/// Independent `N(0, sigma)` samples from a ChaCha8 stream seeded with `seed`.
pub fn gaussian_noise(sigma: f64, seed: u64, count: usize) -> Result<Vec<f64>> {
    let normal = Normal::new(0.0, sigma)
        .map_err(|e| Error::InvalidParameter(format!("noise sigma {sigma}: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| normal.sample(&mut rng)).collect())
}

pub fn add_noise(rec: &MeasurementRecord, sigma: f64, seed: u64) -> Result<MeasurementRecord> {
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidParameter(format!("noise sigma {sigma}")));
    }
    if sigma == 0.0 {
        return Ok(rec.clone());
    }
    let noise = gaussian_noise(sigma, seed, rec.values.len())?;
    Ok(MeasurementRecord {
        observable_labels: rec.observable_labels.clone(),
        values: rec.values.iter().zip(noise).map(|(v, e)| v + e).collect(),
        noise_sigma: sigma,
        seed,
    })
}

#[derive(Clone, Debug)]
pub struct ReconstructionResult {
    pub state: QState,
    /// Root-mean-square misfit between the record and the reconstructed
    /// state's expectation values.
    pub residual: f64,
    /// Eigenvalues removed by the positivity projection.
    pub iterations: usize,
}

/// Closest unit-trace spectrum with no negative entries: the most negative
/// eigenvalues are zeroed one at a time and their weight spread evenly over
/// the rest.
fn project_spectrum(eig: &HermEig) -> Result<(Vec<f64>, usize)> {
    let d = eig.values.len();
    let total: f64 = eig.values.iter().sum();
    let mut lambda: Vec<f64> = eig.values.iter().map(|x| x / total).collect();
    // ascending: the most negative comes first
    let mut removed = 0;
    let mut deficit = 0.0;
    while removed < d {
        if removed == MAX_ITERATIONS {
            return Err(Error::ReconstructionDiverged(MAX_ITERATIONS));
        }
        let remaining = (d - removed) as f64;
        if lambda[removed] + deficit / remaining >= 0.0 {
            break;
        }
        deficit += lambda[removed];
        lambda[removed] = 0.0;
        removed += 1;
    }
    let remaining = (d - removed) as f64;
    for x in lambda.iter_mut().skip(removed) {
        *x += deficit / remaining;
    }
    Ok((lambda, removed))
}

/// Eigenvalue clipping plus renormalization; the last guard before a
/// reconstructed matrix becomes a [`QState`].
pub fn force_physical(n_qubits: usize, rho: &CMat) -> Result<QState> {
    let eig = herm_eig(&rho.hermitian_part())?;
    let total: f64 = eig.values.iter().map(|x| x.max(0.0)).sum();
    if !(total > 0.0) {
        return Err(Error::BadTrace(total));
    }
    let repaired = eig.map_values(|x| x.max(0.0) / total).hermitian_part();
    QState::new(n_qubits, repaired)
}

/// Least-squares reconstruction from a complete Pauli record.
///
/// Pauli strings are orthogonal under the trace inner product, so the
/// unconstrained minimizer over unit-trace Hermitian matrices is
/// `(I + Σ v_k P_k) / 2ⁿ`. It is then projected onto the positive
/// semidefinite cone.
pub fn reconstruct(rec: &MeasurementRecord) -> Result<ReconstructionResult> {
    let n = rec.validate()?;
    let dim = 1usize << n;
    let expected: HashSet<String> = all_pauli_labels(n, false).into_iter().collect();
    let have: HashSet<&str> = rec
        .observable_labels
        .iter()
        .map(|s| s.as_str())
        .filter(|l| l.chars().any(|c| c != 'I'))
        .collect();
    let missing = expected
        .iter()
        .filter(|l| !have.contains(l.as_str()))
        .count();
    if missing > 0 {
        return Err(Error::Underdetermined(format!(
            "{missing} of {} non-identity Pauli expectations missing",
            expected.len()
        )));
    }

    let paulis = rec
        .observable_labels
        .iter()
        .map(|l| pauli_matrix(l))
        .collect::<Result<Vec<_>>>()?;
    let mut estimate = CMat::identity(dim);
    for ((label, p), v) in rec.observable_labels.iter().zip(&paulis).zip(&rec.values) {
        if label.chars().all(|c| c == 'I') {
            continue;
        }
        estimate = &estimate + &p.scale_re(*v);
    }
    let estimate = estimate.scale_re(1.0 / dim as f64).hermitian_part();

    let eig = herm_eig(&estimate)?;
    let (spectrum, iterations) = project_spectrum(&eig)?;
    let projected = HermEig {
        values: spectrum,
        vectors: eig.vectors,
    }
    .map_values(|x| x);
    let state = force_physical(n, &projected)?;

    let sq: f64 = paulis
        .iter()
        .zip(&rec.values)
        .map(|(p, v)| (expectation(state.rho(), p) - v).powi(2))
        .sum();
    let residual = (sq / rec.values.len() as f64).sqrt();

    Ok(ReconstructionResult {
        state,
        residual,
        iterations,
    })
}
