//! Weighted Pauli-string Hamiltonians on qubit chains.
//!
//! A Hamiltonian is an ordered sum of weighted Pauli strings,
//! H = Σ_j w_j · P_j, where each P_j is an n-fold Kronecker product over
//! {I, X, Y, Z}. Builders are provided for the transverse-field Ising chain
//! and the isotropic Heisenberg chain (open boundaries). `realize` expands
//! the strings into a dense [`TermList`], the splitting input consumed by
//! the product-formula machinery.
//!
//! Text format (one term per line, `#` starts a comment):
//!
//! ```text
//! # n = 3 chain
//! -1.0 ZZI
//! -1.0 IZZ
//! -0.5 XII
//! ```

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Dense realization cap: 2^12 = 4096 stays desk-scale.
pub const DENSE_QUBIT_CAP: usize = 12;

/// Single-qubit Pauli axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    I,
    X,
    Y,
    Z,
}

impl PauliAxis {
    /// The 2x2 matrix for this axis.
    pub fn matrix(self) -> ComplexMatrix {
        let z = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let rows = match self {
            PauliAxis::I => [one, z, z, one],
            PauliAxis::X => [z, one, one, z],
            PauliAxis::Y => [z, -i, i, z],
            PauliAxis::Z => [one, z, z, -one],
        };
        ComplexMatrix::from_entries(2, rows.to_vec()).expect("pauli entries are finite")
    }

    pub fn from_char(ch: char) -> Option<Self> {
        match ch {
            'I' => Some(PauliAxis::I),
            'X' => Some(PauliAxis::X),
            'Y' => Some(PauliAxis::Y),
            'Z' => Some(PauliAxis::Z),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            PauliAxis::I => 'I',
            PauliAxis::X => 'X',
            PauliAxis::Y => 'Y',
            PauliAxis::Z => 'Z',
        }
    }
}

/// One weighted Pauli string on `n = axes.len()` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    axes: Vec<PauliAxis>,
    weight: f64,
}

impl PauliString {
    pub fn new(axes: Vec<PauliAxis>, weight: f64) -> Result<Self> {
        if !weight.is_finite() {
            return Err(Error::NonFiniteEntries);
        }
        Ok(Self { axes, weight })
    }

    pub fn n(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[PauliAxis] {
        &self.axes
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Number of non-identity axes.
    pub fn support(&self) -> usize {
        self.axes.iter().filter(|a| **a != PauliAxis::I).count()
    }

    /// Qubit indices with a non-identity axis, ascending.
    pub fn support_qubits(&self) -> Vec<usize> {
        self.axes
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != PauliAxis::I)
            .map(|(q, _)| q)
            .collect()
    }

    /// Dense matrix `weight * axes[0] ⊗ axes[1] ⊗ ... ⊗ axes[n-1]`.
    pub fn matrix(&self) -> Result<ComplexMatrix> {
        if self.n() > DENSE_QUBIT_CAP {
            return Err(Error::DenseCap {
                n: self.n(),
                cap: DENSE_QUBIT_CAP,
            });
        }
        let mut m = ComplexMatrix::identity(1);
        for axis in &self.axes {
            m = m.kron(&axis.matrix());
        }
        Ok(m.scaled(Complex64::new(self.weight, 0.0)))
    }
}

/// An n-qubit Hamiltonian as an ordered list of weighted Pauli strings.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliHamiltonian {
    n: usize,
    terms: Vec<PauliString>,
}

impl PauliHamiltonian {
    pub fn new(n: usize, terms: Vec<PauliString>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyHamiltonian);
        }
        for term in &terms {
            if term.n() != n {
                return Err(Error::MixedTermWidth {
                    expected: n,
                    got: term.n(),
                });
            }
        }
        Ok(Self { n, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[PauliString] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Largest support over the terms (the k of k-locality).
    pub fn locality(&self) -> usize {
        self.terms.iter().map(PauliString::support).max().unwrap_or(0)
    }

    /// Transverse-field Ising chain, open boundaries:
    /// weights -J on adjacent ZZ pairs, then -h on single X per site.
    /// Term order is bonds left to right, then fields left to right.
    pub fn ising_1d(n: usize, j: f64, h: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::ChainTooShort(n));
        }
        let mut terms = Vec::with_capacity(2 * n - 1);
        for site in 0..n - 1 {
            let mut axes = vec![PauliAxis::I; n];
            axes[site] = PauliAxis::Z;
            axes[site + 1] = PauliAxis::Z;
            terms.push(PauliString::new(axes, -j)?);
        }
        for site in 0..n {
            let mut axes = vec![PauliAxis::I; n];
            axes[site] = PauliAxis::X;
            terms.push(PauliString::new(axes, -h)?);
        }
        Self::new(n, terms)
    }

    /// Isotropic Heisenberg chain, open boundaries: per bond the three
    /// two-qubit couplings XX, YY, ZZ, each with weight J.
    pub fn heisenberg_1d(n: usize, j: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::ChainTooShort(n));
        }
        let mut terms = Vec::with_capacity(3 * (n - 1));
        for site in 0..n - 1 {
            for axis in [PauliAxis::X, PauliAxis::Y, PauliAxis::Z] {
                let mut axes = vec![PauliAxis::I; n];
                axes[site] = axis;
                axes[site + 1] = axis;
                terms.push(PauliString::new(axes, j)?);
            }
        }
        Self::new(n, terms)
    }

    /// Expand every term into its dense matrix; dim = 2^n.
    pub fn realize(&self) -> Result<TermList> {
        if self.n > DENSE_QUBIT_CAP {
            return Err(Error::DenseCap {
                n: self.n,
                cap: DENSE_QUBIT_CAP,
            });
        }
        let matrices = self
            .terms
            .iter()
            .map(PauliString::matrix)
            .collect::<Result<Vec<_>>>()?;
        TermList::new(matrices)
    }

    /// Parse the one-term-per-line text format.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut terms: Vec<PauliString> = Vec::new();
        let mut n: Option<usize> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = idx + 1;
            let mut parts = line.split_whitespace();
            let weight_str = parts.next().ok_or_else(|| Error::Parse {
                line: lineno,
                msg: "missing weight".into(),
            })?;
            let axes_str = parts.next().ok_or_else(|| Error::Parse {
                line: lineno,
                msg: "missing axes string".into(),
            })?;
            if parts.next().is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "expected exactly `<weight> <axes>`".into(),
                });
            }
            let weight: f64 = weight_str.parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("invalid weight `{weight_str}`"),
            })?;
            let axes = axes_str
                .chars()
                .map(|ch| {
                    PauliAxis::from_char(ch).ok_or_else(|| Error::Parse {
                        line: lineno,
                        msg: format!("invalid axis `{ch}` (expected I, X, Y or Z)"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            match n {
                None => n = Some(axes.len()),
                Some(expected) if expected != axes.len() => {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!(
                            "axes string has length {}, expected {expected}",
                            axes.len()
                        ),
                    });
                }
                _ => {}
            }
            terms.push(PauliString::new(axes, weight).map_err(|_| Error::Parse {
                line: lineno,
                msg: "weight must be finite".into(),
            })?);
        }
        let n = n.ok_or(Error::EmptyHamiltonian)?;
        Self::new(n, terms)
    }

    /// Serialize to the text format accepted by [`Self::from_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for term in &self.terms {
            let axes: String = term.axes().iter().map(|a| a.to_char()).collect();
            out.push_str(&format!("{} {axes}\n", crate::sig17(term.weight())));
        }
        out
    }
}

/// Ordered list of same-dimension dense matrices H_1..H_L, the abstract
/// splitting input. Also carries non-Hermitian validation matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct TermList {
    dim: usize,
    terms: Vec<ComplexMatrix>,
}

impl TermList {
    pub fn new(terms: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = match terms.first() {
            Some(m) => m.dim(),
            None => return Err(Error::EmptyTermList),
        };
        for m in &terms {
            if m.dim() != dim {
                return Err(Error::MixedDimensions {
                    expected: dim,
                    got: m.dim(),
                });
            }
        }
        Ok(Self { dim, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[ComplexMatrix] {
        &self.terms
    }

    pub fn get(&self, j: usize) -> &ComplexMatrix {
        &self.terms[j]
    }

    /// Σ_j H_j.
    pub fn sum(&self) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim);
        for m in &self.terms {
            acc = acc.add(m);
        }
        acc
    }

    /// τ = t · max_j ||H_j||, the dimensionless evolution scale.
    pub fn tau(&self, t: f64) -> Result<f64> {
        if self.terms.is_empty() {
            return Err(Error::EmptyTermList);
        }
        if t <= 0.0 || !t.is_finite() {
            return Err(Error::NonPositiveTime(t));
        }
        let max_norm = self
            .terms
            .iter()
            .map(ComplexMatrix::spectral_norm)
            .fold(0.0, f64::max);
        Ok(t * max_norm)
    }
}
