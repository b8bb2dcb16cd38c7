use rand::Rng;

use crate::matrix::QMatrix;

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> QMatrix {
    crate::genval::uniform_matrix(rng, rows, cols, 1.0)
}

/// Random matrix of the given rank (product of two random factors).
pub fn random_rank(rng: &mut impl Rng, rows: usize, cols: usize, rank: usize) -> QMatrix {
    &random_matrix(rng, rows, rank) * &random_matrix(rng, rank, cols)
}

/// Random matrix whose rank is itself drawn uniformly from `0..=min(rows, cols)`.
pub fn random_mixed(rng: &mut impl Rng, rows: usize, cols: usize) -> QMatrix {
    let rank = rng.random_range(0..=rows.min(cols));
    random_rank(rng, rows, cols, rank)
}
