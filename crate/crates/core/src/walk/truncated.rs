use nalgebra::DMatrix;
use num_complex::Complex64;

use super::arc::{Arc, ArcState};
use super::evolution::step;
use super::verblunsky::VerblunskySeq;

/// `U = S C` compressed to the `2N + 1` arcs `(0;L), (0;R), ..., (N;L)`.
#[derive(Clone, Debug)]
pub struct TruncatedOperator {
    pub cutoff: usize,
    pub matrix: DMatrix<Complex64>,
    /// Columns whose image under `U` partly leaves the window.
    pub leaky_columns: Vec<usize>,
}

pub fn truncated_matrix(seq: &VerblunskySeq, cutoff: usize) -> TruncatedOperator {
    assert!(cutoff >= 1, "cutoff must be at least 1");
    let dim = 2 * cutoff + 1;
    let mut matrix = DMatrix::zeros(dim, dim);
    let mut leaky_columns = Vec::new();
    for col in 0..dim {
        let image = step(&ArcState::delta(Arc::from_index(col)), seq);
        let amps = image.amplitudes();
        for (row, z) in amps.iter().enumerate().take(dim) {
            matrix[(row, col)] = *z;
        }
        if amps.iter().skip(dim).any(|z| z.norm_sqr() > 0.0) {
            leaky_columns.push(col);
        }
    }
    TruncatedOperator {
        cutoff,
        matrix,
        leaky_columns,
    }
}
