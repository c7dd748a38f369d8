//! Built-in validation matrices.

use crate::hamiltonian::TermList;
use crate::linalg::ComplexMatrix;

/// A 2x2 real matrix with its triangular split A = B + C, where B carries
/// the strict upper triangle and C the strict lower triangle, each with half
/// the diagonal. B and C do not commute, which makes the pair a compact
/// splitting benchmark. Available from the CLI as `--builtin abc`.
#[derive(Debug, Clone)]
pub struct SplitFixture {
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
    pub c: ComplexMatrix,
}

impl SplitFixture {
    /// The split {B, C} as a two-term list.
    pub fn term_list(&self) -> TermList {
        TermList::new(vec![self.b.clone(), self.c.clone()]).expect("two same-dim terms")
    }
}

/// The bundled fixture. B and C are derived from A by the triangular split
/// rather than stored, so A = B + C holds exactly.
pub fn abc() -> SplitFixture {
    let entries = [2.2, 6.9, 4.2, 6.66];
    let a = ComplexMatrix::from_real(2, &entries).expect("finite entries");
    let b = ComplexMatrix::from_real(2, &[entries[0] / 2.0, entries[1], 0.0, entries[3] / 2.0])
        .expect("finite entries");
    let c = ComplexMatrix::from_real(2, &[entries[0] / 2.0, 0.0, entries[2], entries[3] / 2.0])
        .expect("finite entries");
    SplitFixture { a, b, c }
}
