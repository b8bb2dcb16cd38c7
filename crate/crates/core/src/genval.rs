//! Seeded instance generation and residual checks.
//!
//! Every matrix slot draws from its own stream of a ChaCha8 generator seeded
//! with the spec's seed, so changing one shape never perturbs another slot.
//! Slot numbers: `A1`=0, `B1`=1, `A2`=2, `B2`=3, `A3`=4, `B3`=5, `A4`=6,
//! `B4`=7, `X1`=8, `X2`=9, `Y1`=10, `Y2`=11, `Y3`=12, and perturbation
//! attempt `t` uses stream `13 + t`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{QsError, Result};
use crate::matrix::QMatrix;
use crate::quaternion::{EtaAxis, Quaternion};
use crate::solvers::{Branch, EtaInstance, EtaSolution, MainDims, MainInstance, MainSolution};

const MAX_PERTURBATION_ATTEMPTS: u64 = 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CoefRank {
    /// Dense uniform entries (generically full rank).
    #[default]
    Full,
    /// Each coefficient is a product of two uniform factors with an inner
    /// dimension drawn uniformly from `0..=min(rows, cols)`.
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Consistent,
    Inconsistent,
    EtaConsistent(EtaAxis),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    /// For η-instances only `m`, `p`, `k2`, `k3`, `k4` are used.
    pub dims: MainDims,
    pub seed: u64,
    pub entry_scale: f64,
    pub coef_rank: CoefRank,
    pub kind: GenKind,
}

impl GenSpec {
    pub fn new(dims: MainDims, seed: u64) -> Self {
        GenSpec { dims, seed, entry_scale: 1.0, coef_rank: CoefRank::Full, kind: GenKind::Consistent }
    }

    pub fn with_coef_rank(mut self, coef_rank: CoefRank) -> Self {
        self.coef_rank = coef_rank;
        self
    }

    pub fn with_kind(mut self, kind: GenKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_scale(mut self, entry_scale: f64) -> Self {
        self.entry_scale = entry_scale;
        self
    }

    fn rng(&self, slot: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(slot);
        rng
    }

    fn unknown(&self, slot: u64, rows: usize, cols: usize) -> QMatrix {
        uniform_matrix(&mut self.rng(slot), rows, cols, self.entry_scale)
    }

    fn coefficient(&self, slot: u64, rows: usize, cols: usize) -> QMatrix {
        let mut rng = self.rng(slot);
        match self.coef_rank {
            CoefRank::Full => uniform_matrix(&mut rng, rows, cols, self.entry_scale),
            CoefRank::Random => {
                let r = rng.random_range(0..=rows.min(cols));
                let left = uniform_matrix(&mut rng, rows, r, self.entry_scale);
                let right = uniform_matrix(&mut rng, r, cols, 1.0);
                (&left * &right).scale(1.0 / (r.max(1) as f64).sqrt())
            }
        }
    }
}

/// Matrix with every real component uniform in `[−scale, scale]`.
pub fn uniform_matrix(rng: &mut impl Rng, rows: usize, cols: usize, scale: f64) -> QMatrix {
    let data = (0..rows * cols)
        .map(|_| {
            Quaternion::new(
                rng.random_range(-scale..=scale),
                rng.random_range(-scale..=scale),
                rng.random_range(-scale..=scale),
                rng.random_range(-scale..=scale),
            )
        })
        .collect();
    QMatrix::new(rows, cols, data).expect("finite entries")
}

/// [`uniform_matrix`] drawn from stream `stream` of a ChaCha8 generator seeded with `seed`.
pub fn seeded_matrix(seed: u64, stream: u64, rows: usize, cols: usize, scale: f64) -> QMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    uniform_matrix(&mut rng, rows, cols, scale)
}

/// Samples coefficients and a witness solution, then sets `B` to the image of
/// the witness.
pub fn gen_consistent(spec: &GenSpec) -> (MainInstance, MainSolution) {
    let d = spec.dims;
    let mut inst = MainInstance {
        a1: spec.coefficient(0, d.m, d.p),
        b1: spec.coefficient(1, d.q, d.n),
        a2: spec.coefficient(2, d.m, d.k2),
        b2: spec.coefficient(3, d.l2, d.n),
        a3: spec.coefficient(4, d.m, d.k3),
        b3: spec.coefficient(5, d.l3, d.n),
        a4: spec.coefficient(6, d.m, d.k4),
        b4: spec.coefficient(7, d.l4, d.n),
        b: QMatrix::zeros(d.m, d.n),
    };
    let witness = MainSolution {
        x1: spec.unknown(8, d.p, d.n),
        x2: spec.unknown(9, d.m, d.q),
        y1: spec.unknown(10, d.k2, d.l2),
        y2: spec.unknown(11, d.k3, d.l3),
        y3: spec.unknown(12, d.k4, d.l4),
        branch: Branch::F1,
    };
    inst.b = inst.apply(&witness).expect("generated shapes conform");
    (inst, witness)
}

/// `L[r, i] · e · R[j, s]` for all `(r, s)`: the image of a single-entry unknown.
fn rank_one_image(l: &QMatrix, r: &QMatrix, i: usize, j: usize, e: Quaternion) -> Vec<f64> {
    let mut out = Vec::with_capacity(4 * l.rows() * r.cols());
    for row in 0..l.rows() {
        let left = l[(row, i)] * e;
        for col in 0..r.cols() {
            out.extend_from_slice(&(left * r[(j, col)]).to_array());
        }
    }
    out
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn orthogonalize(v: &mut [f64], basis: &[Vec<f64>]) {
    for _ in 0..2 {
        for q in basis {
            let c = dot(q, v);
            v.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
        }
    }
}

/// Orthonormal basis of the range of the real-linear map
/// `(X1, X2, Y1, Y2, Y3) ↦ A1X1 + X2B1 + A2Y1B2 + A3Y2B3 + A4Y3B4`.
fn range_basis(inst: &MainInstance) -> Vec<Vec<f64>> {
    let (m, n) = inst.b.shape();
    let im = QMatrix::identity(m);
    let in_ = QMatrix::identity(n);
    let terms: [(&QMatrix, &QMatrix); 5] =
        [(&inst.a1, &in_), (&im, &inst.b1), (&inst.a2, &inst.b2), (&inst.a3, &inst.b3), (&inst.a4, &inst.b4)];
    let units = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];
    let scale = inst.matrices().iter().map(|m| m.max_entry_norm()).fold(1.0, f64::max);

    let mut basis: Vec<Vec<f64>> = Vec::new();
    for (l, r) in terms {
        for i in 0..l.cols() {
            for j in 0..r.rows() {
                for &e in &units {
                    if basis.len() == 4 * m * n {
                        return basis;
                    }
                    let mut v = rank_one_image(l, r, i, j, e);
                    let before = dot(&v, &v).sqrt();
                    if before <= 1e-12 * scale {
                        continue;
                    }
                    orthogonalize(&mut v, &basis);
                    let after = dot(&v, &v).sqrt();
                    if after > 1e-8 * before {
                        v.iter_mut().for_each(|x| *x /= after);
                        basis.push(v);
                    }
                }
            }
        }
    }
    basis
}

/// A consistent instance whose `B` is then moved off the attainable range by a
/// component orthogonal to it. The perturbation has Frobenius norm
/// `entry_scale · sqrt(m n)`.
///
/// Fails with `GenerationFailed` when every `B` is attainable for these shapes.
pub fn gen_inconsistent(spec: &GenSpec) -> Result<MainInstance> {
    let (mut inst, _) = gen_consistent(spec);
    let (m, n) = inst.b.shape();
    if m * n == 0 {
        return Err(QsError::GenerationFailed("B is empty".into()));
    }
    let basis = range_basis(&inst);
    if basis.len() == 4 * m * n {
        return Err(QsError::GenerationFailed(format!(
            "the equation is surjective for these shapes (every {m}x{n} right-hand side is attainable)"
        )));
    }
    for attempt in 0..MAX_PERTURBATION_ATTEMPTS {
        let mut rng = spec.rng(13 + attempt);
        let mut z: Vec<f64> = (0..4 * m * n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let before = dot(&z, &z).sqrt();
        orthogonalize(&mut z, &basis);
        let after = dot(&z, &z).sqrt();
        if after <= 1e-6 * before {
            continue;
        }
        let factor = spec.entry_scale * ((m * n) as f64).sqrt() / after;
        let data = z.chunks(4).map(|c| Quaternion::new(c[0], c[1], c[2], c[3]).scale(factor)).collect();
        let delta = QMatrix::new(m, n, data)?;
        inst.b = &inst.b + &delta;
        return Ok(inst);
    }
    Err(QsError::GenerationFailed(format!(
        "no usable perturbation after {MAX_PERTURBATION_ATTEMPTS} attempts"
    )))
}

/// η-Hermitian witness `Y_i = (G_i + G_i^{η*})/2`, arbitrary `X1`, and the
/// matching `B`, made exactly η-Hermitian by symmetrizing.
pub fn gen_eta_consistent(spec: &GenSpec, eta: EtaAxis) -> (EtaInstance, EtaSolution) {
    let d = spec.dims;
    let sym = |g: QMatrix| (&g + &g.eta_conj_transpose(eta)).scale(0.5);
    let mut inst = EtaInstance {
        a1: spec.coefficient(0, d.m, d.p),
        a2: spec.coefficient(2, d.m, d.k2),
        a3: spec.coefficient(4, d.m, d.k3),
        a4: spec.coefficient(6, d.m, d.k4),
        b: QMatrix::zeros(d.m, d.m),
        eta,
    };
    let witness = EtaSolution {
        x1: spec.unknown(8, d.p, d.m),
        y1: sym(spec.unknown(10, d.k2, d.k2)),
        y2: sym(spec.unknown(11, d.k3, d.k3)),
        y3: sym(spec.unknown(12, d.k4, d.k4)),
    };
    let b = inst.apply(&witness).expect("generated shapes conform");
    inst.b = (&b + &b.eta_conj_transpose(eta)).scale(0.5);
    (inst, witness)
}

/// Frobenius norm of `A1X1 + X2B1 + A2Y1B2 + A3Y2B3 + A4Y3B4 − B`.
pub fn residual(inst: &MainInstance, sol: &MainSolution) -> Result<f64> {
    Ok(inst.apply(sol)?.try_sub(&inst.b)?.frobenius_norm())
}

/// Frobenius norm of the η-equation residual.
pub fn eta_residual(inst: &EtaInstance, sol: &EtaSolution) -> Result<f64> {
    Ok(inst.apply(sol)?.try_sub(&inst.b)?.frobenius_norm())
}
