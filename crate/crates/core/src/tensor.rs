//! Dense complex operators on spin-1/2 chains.
//!
//! Basis convention used everywhere in the crate: `|up> = (1, 0)`,
//! `|down> = (0, 1)`, and on an `n`-slot chain slot 0 (the impurity) is the
//! slowest-varying bit of the basis index. Slot `s` therefore sits at bit
//! `n - 1 - s`, so for two slots the index is `2 * bit(slot 0) + bit(slot 1)`.
//!
//! A [`TwoSiteOperator`] is written in its own ordered basis
//! `(up up, up down, down up, down down)` where the first factor is the first
//! slot passed to [`embed_two_site`].

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on particles per chain (Hilbert dimension <= 128).
pub const MAX_PARTICLES: usize = 6;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries; `data.len()` must be a square.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimMismatch {
                left: dim * dim,
                right: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows<const D: usize>(rows: [[Complex64; D]; D]) -> Self {
        Self {
            dim: D,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        check_dims(self.dim, other.dim)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        check_dims(self.dim, rhs.dim)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        check_dims(self.dim, v.len())?;
        let n = self.dim;
        Ok((0..n)
            .map(|i| self.data[i * n..(i + 1) * n].iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    /// Panics on dimension mismatch; use [`ComplexMatrix::matmul`] for the fallible form.
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix dimensions must agree")
    }
}

fn check_dims(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimMismatch { left, right });
    }
    Ok(())
}

/// A 4x4 operator on an ordered pair of spin-1/2 slots.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSiteOperator(ComplexMatrix);

impl TwoSiteOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        check_dims(4, matrix.dim())?;
        Ok(Self(matrix))
    }

    pub fn identity() -> Self {
        Self(ComplexMatrix::identity(4))
    }

    /// The permutation `P |a b> = |b a>`.
    pub fn swap() -> Self {
        let mut m = ComplexMatrix::zeros(4);
        m[(0, 0)] = ONE;
        m[(1, 2)] = ONE;
        m[(2, 1)] = ONE;
        m[(3, 3)] = ONE;
        Self(m)
    }

    /// `P * self * P`: the same operator with its two factors exchanged.
    pub fn swapped(&self) -> Self {
        let p = Self::swap();
        Self(&(&p.0 * &self.0) * &p.0)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }
}

/// Slot layout of an impurity plus `n_particles` electrons.
///
/// Slot 0 is the impurity and slot `k` is particle `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainSpec {
    n_particles: usize,
}

impl ChainSpec {
    pub fn new(n_particles: usize) -> Result<Self> {
        if n_particles == 0 || n_particles > MAX_PARTICLES {
            return Err(Error::ChainSize {
                got: n_particles,
                max: MAX_PARTICLES,
            });
        }
        Ok(Self { n_particles })
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn n_slots(&self) -> usize {
        self.n_particles + 1
    }

    pub fn dim(&self) -> usize {
        1 << self.n_slots()
    }

    /// Spin bit (0 = up, 1 = down) of `slot` inside basis index `index`.
    #[inline]
    pub fn bit(&self, index: usize, slot: usize) -> usize {
        (index >> (self.n_slots() - 1 - slot)) & 1
    }
}

/// Lifts `op` to the full chain, acting on `(slot_a, slot_b)` in that order.
pub fn embed_two_site(op: &TwoSiteOperator, slot_a: usize, slot_b: usize, chain: ChainSpec) -> Result<ComplexMatrix> {
    let n_slots = chain.n_slots();
    if slot_a == slot_b || slot_a >= n_slots || slot_b >= n_slots {
        return Err(Error::InvalidSlots {
            slot_a,
            slot_b,
            n_slots,
        });
    }
    let dim = chain.dim();
    let shift_a = n_slots - 1 - slot_a;
    let shift_b = n_slots - 1 - slot_b;
    let mask = (1 << shift_a) | (1 << shift_b);
    let local = op.matrix();

    let mut out = ComplexMatrix::zeros(dim);
    for row in 0..dim {
        let rest = row & !mask;
        let r_local = 2 * ((row >> shift_a) & 1) + ((row >> shift_b) & 1);
        for c_local in 0..4 {
            let v = local[(r_local, c_local)];
            if v == ZERO {
                continue;
            }
            let col = rest | ((c_local >> 1) << shift_a) | ((c_local & 1) << shift_b);
            out[(row, col)] = v;
        }
    }
    Ok(out)
}

/// Frobenius norm of `a - b`.
pub fn residual(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    check_dims(a.dim(), b.dim())?;
    Ok(a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// Operator product `ops[0] * ops[1] * ... * ops[last]`.
///
/// The last element acts first on a state; the first element acts last.
pub fn compose<'a, I>(ops: I) -> Result<ComplexMatrix>
where
    I: IntoIterator<Item = &'a ComplexMatrix>,
{
    let mut iter = ops.into_iter();
    let first = iter.next().ok_or(Error::EmptyComposition)?;
    iter.try_fold(first.clone(), |acc, m| acc.matmul(m))
}
