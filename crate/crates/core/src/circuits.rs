//! Elementary-gate circuits for Pauli-string exponentials.
//!
//! Gate set: Hadamard, Rz(θ) = diag(e^{-iθ/2}, e^{iθ/2}), CNOT, and the
//! Phase gate S = diag(1, i). Rz generalizes the fixed Z-rotation used in
//! the two-qubit textbook constructions (their rotation is exactly Rz(2)),
//! and S extends the set so Y axes are reachable via Y = S·Had·Z·Had·S†.
//!
//! Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of
//! a basis-state index. CNOT uses control = first qubit, matching the
//! standard |a⟩|b⟩ → |a⟩|a⊕b⟩ matrix written in that ordering. Anyone
//! comparing against the opposite convention must reindex.
//!
//! `compile_pauli_exponential` realizes exp(-i·w·t·P) exactly (not up to
//! global phase): a basis-change layer maps every non-identity axis to Z,
//! a CNOT ladder accumulates the support parity downward onto the
//! highest-index support qubit, one Rz(2wt) applies the phase there, and
//! the ladder and basis layer are mirrored to uncompute.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::formulas::Schedule;
use crate::hamiltonian::{PauliAxis, PauliHamiltonian, PauliString};
use crate::linalg::ComplexMatrix;

/// Dense circuit evaluation cap: 2^10 x 2^10 unitaries.
pub const CIRCUIT_QUBIT_CAP: usize = 10;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// One elementary gate. Fields are qubit indices; `Rz` carries its angle in
/// radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Had(usize),
    Rz(usize, f64),
    Cnot(usize, usize),
    Phase(usize),
}

impl Gate {
    fn validate(&self, n: usize) -> Result<()> {
        let check = |q: usize| {
            if q < n {
                Ok(())
            } else {
                Err(Error::QubitIndex { q, n })
            }
        };
        match *self {
            Gate::Had(q) | Gate::Rz(q, _) | Gate::Phase(q) => check(q),
            Gate::Cnot(c, t) => {
                check(c)?;
                check(t)?;
                if c == t {
                    return Err(Error::SelfControl(c));
                }
                Ok(())
            }
        }
    }
}

/// Tally of gates by kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GateCounts {
    pub had: usize,
    pub rz: usize,
    pub cnot: usize,
    pub phase: usize,
}

impl GateCounts {
    pub fn total(&self) -> usize {
        self.had + self.rz + self.cnot + self.phase
    }
}

/// Ordered gate list over `n` qubits; the first gate is applied first.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Self { n, gates: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        for gate in &other.gates {
            self.push(*gate)?;
        }
        Ok(())
    }

    pub fn gate_counts(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for gate in &self.gates {
            match gate {
                Gate::Had(_) => counts.had += 1,
                Gate::Rz(_, _) => counts.rz += 1,
                Gate::Cnot(_, _) => counts.cnot += 1,
                Gate::Phase(_) => counts.phase += 1,
            }
        }
        counts
    }

    /// Dense 2^n unitary of the whole circuit; the gate at position 0 is the
    /// rightmost factor of the operator product.
    pub fn unitary(&self) -> Result<ComplexMatrix> {
        if self.n > CIRCUIT_QUBIT_CAP {
            return Err(Error::WidthCap {
                n: self.n,
                cap: CIRCUIT_QUBIT_CAP,
            });
        }
        let dim = 1usize << self.n;
        let mut u = ComplexMatrix::identity(dim);
        for gate in &self.gates {
            apply_gate(&mut u, self.n, *gate);
        }
        Ok(u)
    }

    /// Text dump: header `qubits n`, then one gate per line (`H q`,
    /// `RZ q theta`, `CNOT c t`, `S q`); angles carry 17 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.n);
        for gate in &self.gates {
            match *gate {
                Gate::Had(q) => out.push_str(&format!("H {q}\n")),
                Gate::Rz(q, theta) => {
                    out.push_str(&format!("RZ {q} {}\n", crate::sig17(theta)))
                }
                Gate::Cnot(c, t) => out.push_str(&format!("CNOT {c} {t}\n")),
                Gate::Phase(q) => out.push_str(&format!("S {q}\n")),
            }
        }
        out
    }
}

/// Left-multiply the matrix by the gate, transforming rows in place.
/// Qubit q addresses bit (n-1-q) of the row index.
fn apply_gate(u: &mut ComplexMatrix, n: usize, gate: Gate) {
    let dim = 1usize << n;
    let bit = |q: usize| 1usize << (n - 1 - q);
    match gate {
        Gate::Had(q) => {
            let mask = bit(q);
            transform_pairs(u, dim, mask, |a, b| {
                (
                    (a + b) * Complex64::new(FRAC_1_SQRT_2, 0.0),
                    (a - b) * Complex64::new(FRAC_1_SQRT_2, 0.0),
                )
            });
        }
        Gate::Rz(q, theta) => {
            let mask = bit(q);
            let lo = Complex64::from_polar(1.0, -theta / 2.0);
            let hi = Complex64::from_polar(1.0, theta / 2.0);
            transform_pairs(u, dim, mask, |a, b| (a * lo, b * hi));
        }
        Gate::Phase(q) => {
            let mask = bit(q);
            let i = Complex64::new(0.0, 1.0);
            transform_pairs(u, dim, mask, |a, b| (a, b * i));
        }
        Gate::Cnot(c, t) => {
            let (cmask, tmask) = (bit(c), bit(t));
            let mut out = u.clone();
            for row in 0..dim {
                if row & cmask != 0 {
                    swap_rows_into(&mut out, u, row, row ^ tmask, dim);
                }
            }
            *u = out;
        }
    }
}

/// Apply a 2x2 action to every row pair (r, r|mask) with the mask bit clear
/// in r.
fn transform_pairs(
    u: &mut ComplexMatrix,
    dim: usize,
    mask: usize,
    f: impl Fn(Complex64, Complex64) -> (Complex64, Complex64),
) {
    let mut entries: Vec<Complex64> = u.entries().to_vec();
    for r0 in 0..dim {
        if r0 & mask != 0 {
            continue;
        }
        let r1 = r0 | mask;
        for col in 0..dim {
            let a = entries[r0 * dim + col];
            let b = entries[r1 * dim + col];
            let (na, nb) = f(a, b);
            entries[r0 * dim + col] = na;
            entries[r1 * dim + col] = nb;
        }
    }
    *u = ComplexMatrix::from_entries(dim, entries).expect("gate action keeps entries finite");
}

fn swap_rows_into(dst: &mut ComplexMatrix, src: &ComplexMatrix, to: usize, from: usize, dim: usize) {
    let row: Vec<Complex64> = (0..dim).map(|col| src.get(from, col)).collect();
    let mut entries = dst.entries().to_vec();
    entries[to * dim..(to + 1) * dim].copy_from_slice(&row);
    *dst = ComplexMatrix::from_entries(dim, entries).expect("row swap keeps entries finite");
}

/// Per-qubit basis-change gates entering the Z frame (circuit order).
fn basis_in(axis: PauliAxis, q: usize) -> Vec<Gate> {
    match axis {
        PauliAxis::X => vec![Gate::Had(q)],
        // S† = S^3 followed by Had maps Y to Z.
        PauliAxis::Y => vec![Gate::Phase(q), Gate::Phase(q), Gate::Phase(q), Gate::Had(q)],
        _ => vec![],
    }
}

/// Per-qubit basis-change gates leaving the Z frame (circuit order).
fn basis_out(axis: PauliAxis, q: usize) -> Vec<Gate> {
    match axis {
        PauliAxis::X => vec![Gate::Had(q)],
        PauliAxis::Y => vec![Gate::Had(q), Gate::Phase(q)],
        _ => vec![],
    }
}

/// Compile exp(-i·weight·t·P) for one Pauli string into elementary gates.
///
/// All-identity strings are rejected when `weight·t != 0`: their evolution
/// is a pure global phase, which the gate set cannot realize exactly.
pub fn compile_pauli_exponential(p: &PauliString, t: f64) -> Result<Circuit> {
    let mut circuit = Circuit::new(p.n());
    let support = p.support_qubits();
    if support.is_empty() {
        if p.weight() * t == 0.0 {
            return Ok(circuit);
        }
        return Err(Error::GlobalPhase);
    }

    for &q in &support {
        for gate in basis_in(p.axes()[q], q) {
            circuit.push(gate)?;
        }
    }
    for pair in support.windows(2) {
        circuit.push(Gate::Cnot(pair[0], pair[1]))?;
    }
    let target = *support.last().expect("support is non-empty");
    circuit.push(Gate::Rz(target, 2.0 * p.weight() * t))?;
    for pair in support.windows(2).rev() {
        circuit.push(Gate::Cnot(pair[0], pair[1]))?;
    }
    for &q in support.iter().rev() {
        for gate in basis_out(p.axes()[q], q) {
            circuit.push(gate)?;
        }
    }
    Ok(circuit)
}

/// Compile m repetitions of the order-`order` schedule over the Hamiltonian's
/// terms, each factor realized by [`compile_pauli_exponential`] at effective
/// time coeff·t/m.
///
/// Factors are emitted in reverse schedule order because circuits apply
/// gates first-to-last while the schedule's leftmost factor acts last.
pub fn compile_trotter(
    h: &PauliHamiltonian,
    t: f64,
    m: u64,
    order: u32,
) -> Result<Circuit> {
    if h.n() > CIRCUIT_QUBIT_CAP {
        return Err(Error::WidthCap {
            n: h.n(),
            cap: CIRCUIT_QUBIT_CAP,
        });
    }
    let schedule = Schedule::suzuki(order, h.term_count())?;
    let step_t = t / m as f64;
    let mut circuit = Circuit::new(h.n());
    for _ in 0..m {
        for &(j, coeff) in schedule.factors().iter().rev() {
            let block = compile_pauli_exponential(&h.terms()[j], coeff * step_t)?;
            circuit.extend(&block)?;
        }
    }
    Ok(circuit)
}
