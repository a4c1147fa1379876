//! Superoperators: vectorization of density matrices, sandwich maps
//! M ρ M†, Liouvillian assembly from rate blocks, and the matrix
//! exponential of generators.
//!
//! Density vectors are ordered populations first, then coherences row-major:
//! for one qubit (ρ₀₀, ρ₁₁, ρ₀₁, ρ₁₀), and for two qubits the sixteen
//! elements (ρ₀₀,₀₀, ρ₀₁,₀₁, ρ₁₀,₁₀, ρ₁₁,₁₁, ρ₀₀,₀₁, …, ρ₁₁,₁₀).

use crate::error::{Error, Result};
use crate::hilbert::DensityMatrix;
use crate::linalg::{self, dag, identity, max_abs_diff, CMat, CVec, C64};

/// Mapping between matrix element pairs (i, j) and density-vector slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorizationConvention {
    dim: usize,
    slots: Vec<(usize, usize)>,
}

impl VectorizationConvention {
    /// Populations (i, i) first, then off-diagonal elements row-major.
    pub fn populations_first(dim: usize) -> Self {
        let mut slots: Vec<(usize, usize)> = (0..dim).map(|i| (i, i)).collect();
        for i in 0..dim {
            for j in 0..dim {
                if i != j {
                    slots.push((i, j));
                }
            }
        }
        VectorizationConvention { dim, slots }
    }

    /// The single-qubit ordering (ρ₀₀, ρ₁₁, ρ₀₁, ρ₁₀).
    pub fn single_qubit() -> Self {
        Self::populations_first(2)
    }

    /// The two-qubit ordering with populations first and the twelve
    /// coherences in row-major sequence.
    pub fn two_qubits() -> Self {
        Self::populations_first(4)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vector_len(&self) -> usize {
        self.dim * self.dim
    }

    pub fn slots(&self) -> &[(usize, usize)] {
        &self.slots
    }

    pub fn slot_of(&self, i: usize, j: usize) -> usize {
        if i == j {
            i
        } else {
            // populations occupy the first dim slots; find the off-diagonal
            let mut idx = self.dim;
            for a in 0..self.dim {
                for b in 0..self.dim {
                    if a != b {
                        if (a, b) == (i, j) {
                            return idx;
                        }
                        idx += 1;
                    }
                }
            }
            unreachable!("slot_of called with out-of-range indices")
        }
    }

    /// Row vector implementing the trace: ones at population slots.
    pub fn trace_row(&self) -> CVec {
        let mut row = CVec::zeros(self.vector_len());
        for k in 0..self.dim {
            row[k] = C64::new(1.0, 0.0);
        }
        row
    }
}

/// Arrange the N² elements of a density matrix in a vector.
pub fn vectorize(rho: &DensityMatrix, conv: &VectorizationConvention) -> Result<CVec> {
    if rho.dim() != conv.dim {
        return Err(Error::DimensionMismatch {
            context: "vectorize",
            expected: conv.dim,
            got: rho.dim(),
        });
    }
    Ok(vectorize_matrix(rho.matrix(), conv))
}

pub fn vectorize_matrix(m: &CMat, conv: &VectorizationConvention) -> CVec {
    let mut v = CVec::zeros(conv.vector_len());
    for (k, &(i, j)) in conv.slots.iter().enumerate() {
        v[k] = m[[i, j]];
    }
    v
}

pub fn devectorize(v: &CVec, conv: &VectorizationConvention) -> CMat {
    let mut m = CMat::zeros((conv.dim, conv.dim));
    for (k, &(i, j)) in conv.slots.iter().enumerate() {
        m[[i, j]] = v[k];
    }
    m
}

/// N²×N² matrix acting on the vectorized density matrix.
#[derive(Debug, Clone)]
pub struct SuperOperator {
    mat: CMat,
    conv: VectorizationConvention,
}

impl SuperOperator {
    pub fn new(mat: CMat, conv: VectorizationConvention) -> Result<Self> {
        if mat.nrows() != conv.vector_len() || mat.ncols() != conv.vector_len() {
            return Err(Error::DimensionMismatch {
                context: "superoperator matrix",
                expected: conv.vector_len(),
                got: mat.nrows(),
            });
        }
        Ok(SuperOperator { mat, conv })
    }

    pub fn identity(conv: VectorizationConvention) -> Self {
        let mat = identity(conv.vector_len());
        SuperOperator { mat, conv }
    }

    pub fn dim(&self) -> usize {
        self.conv.dim
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn convention(&self) -> &VectorizationConvention {
        &self.conv
    }

    pub fn apply_vec(&self, v: &CVec) -> CVec {
        self.mat.dot(v)
    }

    /// Apply to a density matrix, validating the output state.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let v = vectorize(rho, &self.conv)?;
        DensityMatrix::new(devectorize(&self.mat.dot(&v), &self.conv))
    }

    /// self ∘ inner: apply `inner` first.
    pub fn compose(&self, inner: &SuperOperator) -> Result<SuperOperator> {
        self.check_same_convention(inner)?;
        Ok(SuperOperator { mat: self.mat.dot(&inner.mat), conv: self.conv.clone() })
    }

    pub fn add(&self, other: &SuperOperator) -> Result<SuperOperator> {
        self.check_same_convention(other)?;
        Ok(SuperOperator { mat: &self.mat + &other.mat, conv: self.conv.clone() })
    }

    pub fn scale(&self, factor: C64) -> SuperOperator {
        SuperOperator { mat: self.mat.mapv(|z| z * factor), conv: self.conv.clone() }
    }

    pub fn power(&self, n: u64) -> SuperOperator {
        SuperOperator { mat: linalg::matrix_power(&self.mat, n), conv: self.conv.clone() }
    }

    /// e^{self · t}.
    pub fn expm(&self, t: f64) -> SuperOperator {
        let scaled = self.mat.mapv(|z| z * t);
        SuperOperator { mat: linalg::expm(&scaled), conv: self.conv.clone() }
    }

    /// Max deviation of trace_row · mat from trace_row.
    pub fn trace_preservation_deviation(&self) -> f64 {
        let row = self.conv.trace_row();
        let applied = row.dot(&self.mat);
        (0..self.conv.vector_len())
            .map(|k| (applied[k] - row[k]).norm())
            .fold(0.0f64, f64::max)
    }

    /// Max deviation of trace_row · mat from zero (generator form).
    pub fn trace_annihilation_deviation(&self) -> f64 {
        let row = self.conv.trace_row();
        let applied = row.dot(&self.mat);
        applied.iter().map(|z| z.norm()).fold(0.0f64, f64::max)
    }

    fn check_same_convention(&self, other: &SuperOperator) -> Result<()> {
        if self.conv != other.conv {
            return Err(Error::DimensionMismatch {
                context: "superoperator convention",
                expected: self.conv.vector_len(),
                got: other.conv.vector_len(),
            });
        }
        Ok(())
    }
}

/// Superoperator of the sandwich map ρ ↦ M ρ M†.
pub fn sandwich_superop(m: &CMat, conv: &VectorizationConvention) -> Result<SuperOperator> {
    if m.nrows() != conv.dim || m.ncols() != conv.dim {
        return Err(Error::DimensionMismatch {
            context: "sandwich operator",
            expected: conv.dim,
            got: m.nrows(),
        });
    }
    let len = conv.vector_len();
    let mut s = CMat::zeros((len, len));
    for (a, &(i, j)) in conv.slots.iter().enumerate() {
        for (b, &(k, l)) in conv.slots.iter().enumerate() {
            s[[a, b]] = m[[i, k]] * m[[j, l]].conj();
        }
    }
    SuperOperator::new(s, conv.clone())
}

/// Superoperator of ρ ↦ A ρ.
pub fn left_mult_superop(a: &CMat, conv: &VectorizationConvention) -> Result<SuperOperator> {
    let len = conv.vector_len();
    let mut s = CMat::zeros((len, len));
    for (r, &(i, j)) in conv.slots.iter().enumerate() {
        for (c, &(k, l)) in conv.slots.iter().enumerate() {
            if j == l {
                s[[r, c]] = a[[i, k]];
            }
        }
    }
    SuperOperator::new(s, conv.clone())
}

/// Superoperator of ρ ↦ ρ B.
pub fn right_mult_superop(b: &CMat, conv: &VectorizationConvention) -> Result<SuperOperator> {
    let len = conv.vector_len();
    let mut s = CMat::zeros((len, len));
    for (r, &(i, j)) in conv.slots.iter().enumerate() {
        for (c, &(k, l)) in conv.slots.iter().enumerate() {
            if i == k {
                s[[r, c]] = b[[l, j]];
            }
        }
    }
    SuperOperator::new(s, conv.clone())
}

/// Commutator generator −i[H, ·].
pub fn hamiltonian_superop(h: &CMat, conv: &VectorizationConvention) -> Result<SuperOperator> {
    let i = C64::new(0.0, 1.0);
    let left = left_mult_superop(h, conv)?;
    let right = right_mult_superop(h, conv)?;
    let mat = (&left.mat - &right.mat).mapv(|z| -i * z);
    SuperOperator::new(mat, conv.clone())
}

/// Lindblad dissipator L ρ L† − ½{L†L, ρ} as a superoperator.
pub fn dissipator_superop(l: &CMat, conv: &VectorizationConvention) -> Result<SuperOperator> {
    let sand = sandwich_superop(l, conv)?;
    let ldl = dag(l).dot(l);
    let left = left_mult_superop(&ldl, conv)?;
    let right = right_mult_superop(&ldl, conv)?;
    let mat = &sand.mat - &(&left.mat + &right.mat).mapv(|z| 0.5 * z);
    SuperOperator::new(mat, conv.clone())
}

/// Measurement operators with their sandwich superoperators.
///
/// Validates the completeness relation Σ M†M = 1 and, when flagged
/// projective, orthogonality MₙMₘ = δₙₘ Mₙ.
#[derive(Debug, Clone)]
pub struct MeasurementSet {
    operators: Vec<CMat>,
    labels: Vec<String>,
    superops: Vec<SuperOperator>,
    projective: bool,
}

pub const COMPLETENESS_TOL: f64 = 1e-10;

impl MeasurementSet {
    pub fn new(
        operators: Vec<CMat>,
        labels: Vec<String>,
        conv: &VectorizationConvention,
        projective: bool,
    ) -> Result<Self> {
        assert_eq!(operators.len(), labels.len(), "one label per measurement operator");
        let dim = conv.dim();
        let mut sum = CMat::zeros((dim, dim));
        for m in &operators {
            sum += &dag(m).dot(m);
        }
        let dev = max_abs_diff(&sum, &identity(dim));
        if dev > COMPLETENESS_TOL {
            return Err(Error::CompletenessViolation { deviation: dev });
        }
        if projective {
            for (n, mn) in operators.iter().enumerate() {
                for (m, mm) in operators.iter().enumerate() {
                    let product = mn.dot(mm);
                    let expected = if n == m { mn.clone() } else { CMat::zeros((dim, dim)) };
                    let dev = max_abs_diff(&product, &expected);
                    if dev > COMPLETENESS_TOL {
                        return Err(Error::NotProjective { deviation: dev });
                    }
                }
            }
        }
        let superops = operators
            .iter()
            .map(|m| sandwich_superop(m, conv))
            .collect::<Result<Vec<_>>>()?;
        Ok(MeasurementSet { operators, labels, superops, projective })
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn operator(&self, m: usize) -> &CMat {
        &self.operators[m]
    }

    pub fn label(&self, m: usize) -> &str {
        &self.labels[m]
    }

    pub fn superop(&self, m: usize) -> &SuperOperator {
        &self.superops[m]
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    /// Born probability of outcome m, tr(M†M ρ).
    pub fn outcome_probability(&self, m: usize, rho: &DensityMatrix) -> f64 {
        let op = &self.operators[m];
        linalg::trace(&dag(op).dot(op).dot(rho.matrix())).re
    }

    /// Σₘ 𝓜ₘ, the measurement-averaged superoperator (generally not the
    /// identity).
    pub fn averaging_superop(&self) -> SuperOperator {
        let mut acc = self.superops[0].clone();
        for s in &self.superops[1..] {
            acc = acc.add(s).expect("same convention by construction");
        }
        acc
    }
}

/// A coupling term: the equation for the first coherence picks up the
/// second one with the given weight.
pub type CoherenceCoupling = ((usize, usize), (usize, usize), C64);

/// Assemble a block Liouvillian from a population rate block, per-coherence
/// complex rates, and explicit coherence-coherence couplings.
///
/// `population_block[[i, j]]` multiplies ρ_jj in the equation for ρ̇_ii; its
/// columns must sum to zero (trace conservation). `coherence_rates[c]` is the
/// diagonal coefficient of the c-th off-diagonal slot, and each coupling
/// ((i, j), (k, l), w) adds w·ρ_kl to the equation for ρ̇_ij.
pub fn liouvillian_from_rates(
    population_block: &ndarray::Array2<f64>,
    coherence_rates: &[C64],
    coherence_couplings: &[CoherenceCoupling],
    conv: &VectorizationConvention,
) -> Result<SuperOperator> {
    let dim = conv.dim();
    if population_block.nrows() != dim || population_block.ncols() != dim {
        return Err(Error::DimensionMismatch {
            context: "population block",
            expected: dim,
            got: population_block.nrows(),
        });
    }
    let n_coh = conv.vector_len() - dim;
    if coherence_rates.len() != n_coh {
        return Err(Error::DimensionMismatch {
            context: "coherence rates",
            expected: n_coh,
            got: coherence_rates.len(),
        });
    }
    for j in 0..dim {
        let sum: f64 = (0..dim).map(|i| population_block[[i, j]]).sum();
        if sum.abs() > 1e-10 {
            return Err(Error::ColumnSumViolation { column: j, sum });
        }
    }
    let len = conv.vector_len();
    let mut mat = CMat::zeros((len, len));
    for i in 0..dim {
        for j in 0..dim {
            mat[[i, j]] = C64::new(population_block[[i, j]], 0.0);
        }
    }
    for (c, rate) in coherence_rates.iter().enumerate() {
        mat[[dim + c, dim + c]] = *rate;
    }
    for &((i, j), (k, l), w) in coherence_couplings {
        if i == j || k == l {
            return Err(Error::InvalidParameter {
                name: "coherence_couplings",
                reason: format!("({i},{j})<-({k},{l}) touches a population slot"),
            });
        }
        mat[[conv.slot_of(i, j), conv.slot_of(k, l)]] += w;
    }
    let s = SuperOperator::new(mat, conv.clone())?;
    let dev = s.trace_annihilation_deviation();
    debug_assert!(dev <= 1e-12, "assembled generator leaks trace: {dev:.3e}");
    Ok(s)
}

/// Dephasing-free closed-system generator −i[H, ·] plus nothing else; kept
/// as a convenience for protocols without dissipation.
pub fn hamiltonian_liouvillian(h: &CMat, conv: &VectorizationConvention) -> Result<SuperOperator> {
    hamiltonian_superop(h, conv)
}
