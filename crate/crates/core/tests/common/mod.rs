#![allow(dead_code)]

use qsylv_core::genval::uniform_matrix;
use qsylv_core::solvers::MainDims;
use qsylv_core::{Branch, MainInstance, MainSolution, QMatrix, Quaternion as Q};
use rand::Rng;

pub fn random(rng: &mut impl Rng, rows: usize, cols: usize) -> QMatrix {
    uniform_matrix(rng, rows, cols, 1.0)
}

pub fn random_rank(rng: &mut impl Rng, rows: usize, cols: usize, rank: usize) -> QMatrix {
    &random(rng, rows, rank) * &random(rng, rank, cols)
}

/// Rank drawn uniformly from `0..=min(rows, cols)`.
pub fn random_mixed(rng: &mut impl Rng, rows: usize, cols: usize) -> QMatrix {
    let rank = rng.random_range(0..=rows.min(cols));
    random_rank(rng, rows, cols, rank)
}

pub fn random_dims(rng: &mut impl Rng, max: usize) -> MainDims {
    let mut d = [0; 10];
    for x in &mut d {
        *x = rng.random_range(1..=max);
    }
    MainDims::from_array(d)
}

fn q(rows: &[&[Q]]) -> QMatrix {
    QMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

const O: Q = Q::ZERO;
const ONE: Q = Q::ONE;
const I: Q = Q::I;
const J: Q = Q::J;
const K: Q = Q::K;

pub fn example() -> MainInstance {
    MainInstance {
        a1: q(&[&[I, O], &[O, O]]),
        b1: q(&[&[O, I], &[O, O]]),
        a2: q(&[&[O, O], &[I, O]]),
        b2: q(&[&[O, O], &[O, I]]),
        a3: q(&[&[ONE, I], &[O, O]]),
        b3: q(&[&[ONE, J], &[O, O]]),
        a4: q(&[&[ONE, K], &[O, O]]),
        b4: q(&[&[O, O], &[K, I]]),
        b: q(&[&[I.scale(3.0), I - ONE], &[O, J]]),
    }
}

pub fn example_solution() -> MainSolution {
    MainSolution {
        x1: q(&[&[ONE, I], &[O, O]]),
        x2: q(&[&[ONE, J], &[O, O]]),
        y1: q(&[&[I, J], &[O, O]]),
        y2: q(&[&[I, K], &[O, O]]),
        y3: q(&[&[I, J], &[K, O]]),
        branch: Branch::F1,
    }
}
