//! Ordered-sector amplitudes of the N-particle wavefunction.
//!
//! Amplitudes are labelled by an [`Ordering`] of the labels `0..=N` (0 is the
//! impurity), read left to right as spatial order. Neighbouring orderings are
//! linked by S-matrices:
//!
//! * `f^{..0j..} = S^{j0}(z_j) f^{..j0..}` (particle passes the impurity),
//! * `f^{..ji..} = S^{ij}(z_i, z_j) f^{..ij..}` (two particles exchange).
//!
//! The amplitude assignment is well defined iff every closed path on this
//! graph multiplies to the identity. Elementary loops (involutions, commuting
//! far swaps and braid hexagons) generate all loops, so those are the ones
//! checked.
//!
//! For one particle the periodic boundary turns the impurity relation into
//! the difference equation `f^{10}(z - L) = S^{10}(z) f^{10}(z)`, which
//! [`extend_one_particle`] propagates period by period.

use itertools::Itertools;
use num_complex::Complex64;

use crate::couplings::SpectralProfile;
use crate::error::{Error, Result};
use crate::smatrix::{xxz_smatrix, PairArgument};
use crate::tensor::{embed_two_site, residual, ChainSpec, ComplexMatrix};

/// Spatial order of impurity and particles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ordering(Vec<usize>);

impl Ordering {
    pub fn new(sequence: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; sequence.len()];
        for &label in &sequence {
            if label >= sequence.len() || seen[label] {
                return Err(Error::InvalidOrdering(format!(
                    "{sequence:?} is not a permutation of 0..={}",
                    sequence.len().saturating_sub(1)
                )));
            }
            seen[label] = true;
        }
        if sequence.len() < 2 {
            return Err(Error::InvalidOrdering(
                "need the impurity and at least one particle".into(),
            ));
        }
        Ok(Self(sequence))
    }

    /// `N, N-1, ..., 1, 0`: the amplitude the difference equations are written for.
    pub fn reference(n_particles: usize) -> Self {
        Self((0..=n_particles).rev().collect())
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn n_particles(&self) -> usize {
        self.0.len() - 1
    }

    pub fn swapped(&self, p: usize) -> Result<Self> {
        if p + 1 >= self.0.len() {
            return Err(Error::InvalidOrdering(format!("swap position {p} out of range")));
        }
        let mut next = self.0.clone();
        next.swap(p, p + 1);
        Ok(Self(next))
    }
}

/// Amplitude components indexed by spin configuration under the
/// [`crate::tensor`] basis convention.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeVector(pub Vec<Complex64>);

impl AmplitudeVector {
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[index] = Complex64::new(1.0, 0.0);
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn transformed(&self, op: &ComplexMatrix) -> Result<Self> {
        op.apply(&self.0).map(Self)
    }
}

/// Spectral data of one amplitude graph: `phi(z_k)` per particle, constant
/// anisotropy, and the particle-particle argument rule.
#[derive(Debug, Clone)]
pub struct AmplitudeContext {
    chain: ChainSpec,
    /// `phis[k - 1] = phi(z_k)`.
    phis: Vec<f64>,
    u: f64,
    pair_rule: PairArgument,
}

impl AmplitudeContext {
    pub fn new(zs: &[f64], spectral: &SpectralProfile, u: f64) -> Result<Self> {
        Ok(Self {
            chain: ChainSpec::new(zs.len())?,
            phis: zs.iter().map(|&z| spectral.eval(z)).collect(),
            u,
            pair_rule: PairArgument::Difference,
        })
    }

    pub fn with_pair_rule(mut self, rule: PairArgument) -> Self {
        self.pair_rule = rule;
        self
    }

    pub fn chain(&self) -> ChainSpec {
        self.chain
    }

    fn phi(&self, particle: usize) -> f64 {
        self.phis[particle - 1]
    }

    /// Operator taking `f^{..xy..}` to `f^{..yx..}`.
    fn edge_operator(&self, x: usize, y: usize) -> Result<ComplexMatrix> {
        let arg = match (x, y) {
            (j, 0) => self.phi(j),
            (0, j) => -self.phi(j),
            (i, j) => self.pair_rule.eval(self.phi(i), self.phi(j)),
        };
        embed_two_site(&xxz_smatrix(arg, self.u)?, x, y, self.chain)
    }
}

/// Swaps positions `p`, `p + 1` of `ord` and returns the operator mapping the
/// old amplitude to the new one.
pub fn adjacent_relation(ord: &Ordering, p: usize, ctx: &AmplitudeContext) -> Result<(Ordering, ComplexMatrix)> {
    if ord.n_particles() != ctx.chain.n_particles() {
        return Err(Error::InvalidOrdering("ordering and context disagree on N".into()));
    }
    let next = ord.swapped(p)?;
    let op = ctx.edge_operator(ord.0[p], ord.0[p + 1])?;
    Ok((next, op))
}

/// Operator product along a swap path, first swap acting first.
pub fn path_operator(start: &Ordering, path: &[usize], ctx: &AmplitudeContext) -> Result<(Ordering, ComplexMatrix)> {
    let mut ord = start.clone();
    let mut acc = ComplexMatrix::identity(ctx.chain.dim());
    for &p in path {
        let (next, op) = adjacent_relation(&ord, p, ctx)?;
        acc = op.matmul(&acc)?;
        ord = next;
    }
    Ok((ord, acc))
}

/// Adjacent swaps (bubble sort) turning `from` into `to`.
pub fn shortest_path(from: &Ordering, to: &Ordering) -> Result<Vec<usize>> {
    if from.0.len() != to.0.len() {
        return Err(Error::PathMismatch);
    }
    let mut pos = vec![0; to.0.len()];
    for (i, &label) in to.0.iter().enumerate() {
        pos[label] = i;
    }
    let mut keys: Vec<usize> = from.0.iter().map(|&l| pos[l]).collect();
    let mut path = Vec::new();
    for end in (1..keys.len()).rev() {
        for p in 0..end {
            if keys[p] > keys[p + 1] {
                keys.swap(p, p + 1);
                path.push(p);
            }
        }
    }
    Ok(path)
}

/// Carries `reference` (the amplitude at `reference_ord`) along `path` and
/// checks that the path ends at `target`.
pub fn propagate_amplitude(
    reference: &AmplitudeVector,
    reference_ord: &Ordering,
    target: &Ordering,
    path: &[usize],
    ctx: &AmplitudeContext,
) -> Result<AmplitudeVector> {
    let mut ord = reference_ord.clone();
    let mut amp = reference.clone();
    for &p in path {
        let (next, op) = adjacent_relation(&ord, p, ctx)?;
        amp = amp.transformed(&op)?;
        ord = next;
    }
    if &ord != target {
        return Err(Error::PathMismatch);
    }
    Ok(amp)
}

/// Elementary closed loops based at one ordering, as pairs of paths that must agree.
fn elementary_loops(n_positions: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let swaps = n_positions - 1;
    let mut loops = Vec::new();
    for p in 0..swaps {
        loops.push((vec![p, p], vec![]));
        if p + 1 < swaps {
            loops.push((vec![p, p + 1, p], vec![p + 1, p, p + 1]));
        }
        for q in p + 2..swaps {
            loops.push((vec![p, q], vec![q, p]));
        }
    }
    loops
}

/// Maximum operator residual over all elementary loops at every ordering.
pub fn consistency_residual(ctx: &AmplitudeContext) -> Result<f64> {
    let n = ctx.chain.n_particles();
    if n > 4 {
        return Err(Error::ChainSize { got: n, max: 4 });
    }
    let loops = elementary_loops(n + 1);
    let mut worst = 0.0f64;
    for perm in (0..=n).permutations(n + 1) {
        let ord = Ordering(perm);
        for (left, right) in &loops {
            let (_, a) = path_operator(&ord, left, ctx)?;
            let (_, b) = path_operator(&ord, right, ctx)?;
            worst = worst.max(residual(&a, &b)?);
        }
    }
    Ok(worst)
}

/// One-particle amplitude `f^{10}` sampled on a window grid and its copies
/// shifted by whole periods.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeField {
    z0: f64,
    length: f64,
    grid: Vec<f64>,
    periods: usize,
    /// `slices[n + periods][k]` is `f^{10}(grid[k] + n L)`, `n in -periods..=periods`.
    slices: Vec<Vec<AmplitudeVector>>,
}

/// `m` equally spaced points covering `[z0, z0 + length)`.
pub fn uniform_grid(z0: f64, length: f64, m: usize) -> Vec<f64> {
    (0..m).map(|k| z0 + length * k as f64 / m as f64).collect()
}

pub const DEFAULT_GRID_POINTS: usize = 64;

impl AmplitudeField {
    /// Initial data on the window `[z0, z0 + length)`.
    pub fn from_window(z0: f64, length: f64, grid: Vec<f64>, values: Vec<AmplitudeVector>) -> Result<Self> {
        if !(length > 0.0) {
            return Err(Error::DomainError(format!(
                "window length must be positive, got {length}"
            )));
        }
        if grid.is_empty() || grid.len() != values.len() {
            return Err(Error::DimMismatch {
                left: grid.len(),
                right: values.len(),
            });
        }
        let inside = grid.iter().all(|&z| z >= z0 && z < z0 + length);
        let increasing = grid.windows(2).all(|w| w[0] < w[1]);
        if !inside || !increasing {
            return Err(Error::DomainError(
                "grid must be strictly increasing inside the window".into(),
            ));
        }
        for v in &values {
            if v.dim() != 4 {
                return Err(Error::DimMismatch {
                    left: 4,
                    right: v.dim(),
                });
            }
            if !v.is_finite() {
                return Err(Error::DomainError("initial amplitude is not finite".into()));
            }
        }
        Ok(Self {
            z0,
            length,
            grid,
            periods: 0,
            slices: vec![values],
        })
    }

    pub fn window_start(&self) -> f64 {
        self.z0
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn periods(&self) -> usize {
        self.periods
    }

    /// `f^{10}(grid[k] + n L)`.
    pub fn value(&self, n: i64, k: usize) -> Option<&AmplitudeVector> {
        let idx = usize::try_from(n + self.periods as i64).ok()?;
        self.slices.get(idx)?.get(k)
    }

    pub fn value_mut(&mut self, n: i64, k: usize) -> Option<&mut AmplitudeVector> {
        let idx = usize::try_from(n + self.periods as i64).ok()?;
        self.slices.get_mut(idx)?.get_mut(k)
    }

    pub fn slice(&self, n: i64) -> Option<&[AmplitudeVector]> {
        let idx = usize::try_from(n + self.periods as i64).ok()?;
        self.slices.get(idx).map(Vec::as_slice)
    }
}

fn impurity_operator(phi: f64, u: f64) -> Result<ComplexMatrix> {
    embed_two_site(&xxz_smatrix(phi, u)?, 1, 0, ChainSpec::new(1)?)
}

/// Extends the window data `n_periods` periods in each direction:
/// towards smaller `z` with `f(z - L) = S(z) f(z)` and towards larger `z` with
/// `f(z + L) = S(z + L)^{-1} f(z)`.
///
/// The result is re-checked against the difference equation before returning.
pub fn extend_one_particle(
    initial: &AmplitudeField,
    n_periods: usize,
    spectral: &SpectralProfile,
    u: f64,
) -> Result<AmplitudeField> {
    let base = initial.slice(0).ok_or(Error::DomainError("empty field".into()))?;
    let length = initial.length;

    let mut down = Vec::with_capacity(n_periods);
    let mut current = base.to_vec();
    for n in 0..n_periods as i64 {
        current = initial
            .grid
            .iter()
            .zip(&current)
            .map(|(&z, v)| v.transformed(&impurity_operator(spectral.eval(z - n as f64 * length), u)?))
            .collect::<Result<_>>()?;
        down.push(current.clone());
    }

    let mut up = Vec::with_capacity(n_periods);
    let mut current = base.to_vec();
    for n in 1..=n_periods as i64 {
        current = initial
            .grid
            .iter()
            .zip(&current)
            .map(|(&z, v)| v.transformed(&impurity_operator(-spectral.eval(z + n as f64 * length), u)?))
            .collect::<Result<_>>()?;
        up.push(current.clone());
    }

    let mut slices: Vec<Vec<AmplitudeVector>> = down.into_iter().rev().collect();
    slices.push(base.to_vec());
    slices.extend(up);
    let field = AmplitudeField {
        z0: initial.z0,
        length,
        grid: initial.grid.clone(),
        periods: n_periods,
        slices,
    };

    let scale = base.iter().map(AmplitudeVector::norm).fold(1.0, f64::max);
    let recheck = pbc_residual(&field, spectral, u)?;
    if recheck > 1e-10 * scale {
        return Err(Error::DomainError(format!(
            "extended field violates the difference equation by {recheck:e}"
        )));
    }
    Ok(field)
}

/// `max |f^{01}(z) - f^{10}(z - L)|` over every grid point with a stored
/// predecessor, where `f^{01}(z) = S^{10}(z) f^{10}(z)`.
pub fn pbc_residual(field: &AmplitudeField, spectral: &SpectralProfile, u: f64) -> Result<f64> {
    let p = field.periods as i64;
    let mut worst = 0.0f64;
    for n in (-p + 1)..=p {
        for (k, &zk) in field.grid.iter().enumerate() {
            let z = zk + n as f64 * field.length;
            let here = field.value(n, k).expect("in range");
            let below = field.value(n - 1, k).expect("in range");
            let f01 = here.transformed(&impurity_operator(spectral.eval(z), u)?)?;
            worst = worst.max(f01.distance(below));
        }
    }
    Ok(worst)
}

/// Propagates the window data `n_periods` periods towards smaller `z`, then
/// back up from there, and returns the largest distance to the original data.
pub fn roundtrip_residual(
    initial: &AmplitudeField,
    n_periods: usize,
    spectral: &SpectralProfile,
    u: f64,
) -> Result<f64> {
    let n = n_periods as i64;
    let down = extend_one_particle(initial, n_periods, spectral, u)?;
    let shift = n as f64 * initial.length;
    let low = AmplitudeField::from_window(
        initial.z0 - shift,
        initial.length,
        initial.grid.iter().map(|z| z - shift).collect(),
        down.slice(-n).expect("extended").to_vec(),
    )?;
    let up = extend_one_particle(&low, n_periods, spectral, u)?;
    let back = up.slice(n).expect("extended");
    let orig = initial.slice(0).expect("window");
    Ok(back.iter().zip(orig).map(|(a, b)| a.distance(b)).fold(0.0, f64::max))
}

/// Norm of the weight outside the sector with `down_spins` down spins.
pub fn sector_leakage(amp: &AmplitudeVector, chain: ChainSpec, down_spins: usize) -> f64 {
    amp.0
        .iter()
        .enumerate()
        .filter(|(idx, _)| (0..chain.n_slots()).map(|s| chain.bit(*idx, s)).sum::<usize>() != down_spins)
        .map(|(_, z)| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smatrix::SMatrixArgs;

    fn lin() -> SpectralProfile {
        SpectralProfile::Linear { a: 0.5, c: 0.1 }
    }

    #[test]
    fn ordering_validation() {
        assert!(Ordering::new(vec![1, 0]).is_ok());
        assert!(Ordering::new(vec![1, 1]).is_err());
        assert!(Ordering::new(vec![0, 2]).is_err());
        assert!(Ordering::new(vec![0]).is_err());
        assert_eq!(Ordering::reference(3).labels(), &[3, 2, 1, 0]);
    }

    #[test]
    fn one_particle_edge_is_impurity_smatrix() {
        let ctx = AmplitudeContext::new(&[0.4], &lin(), 0.5).unwrap();
        let (next, op) = adjacent_relation(&Ordering::reference(1), 0, &ctx).unwrap();
        assert_eq!(next.labels(), &[0, 1]);
        let expected = impurity_operator(0.5 * 0.4 + 0.1, 0.5).unwrap();
        assert_eq!(op, expected);
    }

    #[test]
    fn equal_spectral_values_give_permutation() {
        let flat = SpectralProfile::custom("flat", |_| 0.3);
        let ctx = AmplitudeContext::new(&[0.1, 0.9], &flat, 0.5).unwrap();
        let ord = Ordering::new(vec![2, 1, 0]).unwrap();
        let (_, op) = adjacent_relation(&ord, 0, &ctx).unwrap();
        let p = embed_two_site(&crate::tensor::TwoSiteOperator::swap(), 2, 1, ctx.chain()).unwrap();
        assert!(op.max_abs_diff(&p).unwrap() < 1e-15);
    }

    #[test]
    fn double_swap_is_identity() {
        let ctx = AmplitudeContext::new(&[0.3, 1.1], &lin(), 0.6).unwrap();
        let start = Ordering::reference(2);
        for p in 0..2 {
            let (end, op) = path_operator(&start, &[p, p], &ctx).unwrap();
            assert_eq!(end, start);
            assert!(residual(&op, &ComplexMatrix::identity(8)).unwrap() < 1e-13);
        }
    }

    #[test]
    fn propagation_basics() {
        let ctx = AmplitudeContext::new(&[0.4], &lin(), 0.5).unwrap();
        let r = Ordering::reference(1);
        let amp = AmplitudeVector::basis(4, 2);
        assert_eq!(propagate_amplitude(&amp, &r, &r, &[], &ctx).unwrap(), amp);

        let target = Ordering::new(vec![0, 1]).unwrap();
        let out = propagate_amplitude(&amp, &r, &target, &[0], &ctx).unwrap();
        let expected = AmplitudeVector(impurity_operator(0.5 * 0.4 + 0.1, 0.5).unwrap().apply(&amp.0).unwrap());
        assert_eq!(out, expected);

        assert_eq!(propagate_amplitude(&amp, &r, &r, &[0], &ctx), Err(Error::PathMismatch));
    }

    #[test]
    fn two_paths_agree() {
        let ctx = AmplitudeContext::new(&[0.3, 1.1], &lin(), 0.6).unwrap();
        let from = Ordering::new(vec![1, 2, 0]).unwrap();
        let to = Ordering::new(vec![0, 2, 1]).unwrap();
        let amp = AmplitudeVector(
            (0..8)
                .map(|k| Complex64::new(0.1 * k as f64 - 0.3, 0.05 * (k * k) as f64))
                .collect(),
        );
        let a = propagate_amplitude(&amp, &from, &to, &[0, 1, 0], &ctx).unwrap();
        let b = propagate_amplitude(&amp, &from, &to, &[1, 0, 1], &ctx).unwrap();
        assert!(a.distance(&b) < 1e-12);
        assert!((a.norm() - amp.norm()).abs() < 1e-12);
    }

    #[test]
    fn shortest_path_reaches_target() {
        let from = Ordering::reference(3);
        let to = Ordering::new(vec![0, 2, 3, 1]).unwrap();
        let path = shortest_path(&from, &to).unwrap();
        let ctx = AmplitudeContext::new(&[0.1, 0.2, 0.3], &lin(), 0.4).unwrap();
        let (end, _) = path_operator(&from, &path, &ctx).unwrap();
        assert_eq!(end, to);
        // inversions between 3,2,1,0 and 0,2,3,1
        assert_eq!(path.len(), 4);
    }

    #[test]
    fn consistency_examples() {
        let ctx = AmplitudeContext::new(&[0.3, 1.1], &lin(), 0.0).unwrap();
        assert_eq!(consistency_residual(&ctx).unwrap(), 0.0);

        let ctx = AmplitudeContext::new(&[0.3, 1.1], &lin(), 0.6).unwrap();
        assert!(consistency_residual(&ctx).unwrap() < 1e-12);

        let bad = ctx.with_pair_rule(PairArgument::Skewed(2.0));
        assert!(consistency_residual(&bad).unwrap() > 1e-3);
    }

    fn window_field(values: Vec<AmplitudeVector>, length: f64) -> AmplitudeField {
        let grid = uniform_grid(0.0, length, values.len());
        AmplitudeField::from_window(0.0, length, grid, values).unwrap()
    }

    #[test]
    fn up_up_component_is_inert() {
        let field = window_field(vec![AmplitudeVector::basis(4, 0); 8], 1.0);
        let ext = extend_one_particle(&field, 3, &lin(), 0.5).unwrap();
        for n in -3..=3 {
            for k in 0..8 {
                assert_eq!(ext.value(n, k).unwrap(), &AmplitudeVector::basis(4, 0));
            }
        }
    }

    #[test]
    fn single_step_matches_mixing_block() {
        let profile = SpectralProfile::Linear { a: 0.5, c: 0.0 };
        // particle up, impurity down: index 2*1 + 0
        let field = AmplitudeField::from_window(0.0, 1.0, vec![0.4], vec![AmplitudeVector::basis(4, 2)]).unwrap();
        let ext = extend_one_particle(&field, 1, &profile, 0.5).unwrap();
        let (b, c) = SMatrixArgs::new(0.2, 0.5).unwrap().weights();
        let v = ext.value(-1, 0).unwrap();
        assert!((v.0[2] - b).norm() < 1e-15);
        assert!((v.0[1] - c).norm() < 1e-15);
        assert_eq!(v.0[0], Complex64::new(0.0, 0.0));
        assert_eq!(v.0[3], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn pbc_residual_detects_perturbation() {
        let values: Vec<_> = (0..16)
            .map(|k| {
                AmplitudeVector(vec![
                    Complex64::new(0.2, 0.0),
                    Complex64::new(0.5, 0.1 * k as f64),
                    Complex64::new(-0.3, 0.2),
                    Complex64::new(0.0, 0.4),
                ])
            })
            .collect();
        let field = window_field(values, 1.0);
        let mut ext = extend_one_particle(&field, 2, &lin(), 0.5).unwrap();
        assert!(pbc_residual(&ext, &lin(), 0.5).unwrap() < 1e-12);
        ext.value_mut(1, 5).unwrap().0[1] += Complex64::new(1e-3, 0.0);
        let r = pbc_residual(&ext, &lin(), 0.5).unwrap();
        assert!((r - 1e-3).abs() < 1e-9, "{r}");

        let zero = window_field(vec![AmplitudeVector(vec![Complex64::new(0.0, 0.0); 4]); 4], 1.0);
        let ext = extend_one_particle(&zero, 2, &lin(), 0.5).unwrap();
        assert_eq!(pbc_residual(&ext, &lin(), 0.5).unwrap(), 0.0);
    }

    #[test]
    fn forward_backward_roundtrip() {
        let values: Vec<_> = (0..8)
            .map(|k| {
                AmplitudeVector(vec![
                    Complex64::new(0.1, 0.0),
                    Complex64::new(0.3 * k as f64, -0.2),
                    Complex64::new(0.7, 0.1 * k as f64),
                    Complex64::new(0.0, -0.5),
                ])
            })
            .collect();
        let field = window_field(values, 1.3);
        assert!(roundtrip_residual(&field, 10, &lin(), 0.7).unwrap() < 1e-11);
    }

    #[test]
    fn window_validation() {
        let v = vec![AmplitudeVector::basis(4, 0); 2];
        assert!(AmplitudeField::from_window(0.0, 1.0, vec![0.5, 0.2], v.clone()).is_err());
        assert!(AmplitudeField::from_window(0.0, 1.0, vec![0.5, 1.0], v.clone()).is_err());
        assert!(AmplitudeField::from_window(0.0, 1.0, vec![0.5], v).is_err());
        assert!(AmplitudeField::from_window(0.0, 1.0, vec![0.5], vec![AmplitudeVector::basis(8, 0)]).is_err());
    }

    #[test]
    fn leakage_of_mixed_sector() {
        let chain = ChainSpec::new(1).unwrap();
        let v = AmplitudeVector::basis(4, 1);
        assert_eq!(sector_leakage(&v, chain, 1), 0.0);
        assert_eq!(sector_leakage(&v, chain, 0), 1.0);
    }
}
