//! Finite-dimensional density-operator geometry: mixtures, their
//! decompositions into pure states, spans, and the entropy of equal mixtures.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::LN_2;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::error::{Error, Result};
use crate::math::linalg::{inner, norm, CMatrix};

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 64;

const NORM_TOL: f64 = 1e-12;
const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;
const WEIGHT_SUM_TOL: f64 = 1e-12;
/// Eigenvalues at or below this count as zero when forming supports.
const RANK_TOL: f64 = 1e-10;
/// Singular-value threshold for column spaces.
const SPAN_RANK_TOL: f64 = 1e-9;

/// Unit vector in `C^d`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Requires `2 <= d <= 64` and unit norm within `1e-12`.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        let n = norm(&amplitudes);
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n));
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes first.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        let n = norm(&amplitudes);
        if !(n > 1e-12) {
            return Err(Error::DegenerateState(n));
        }
        for z in amplitudes.iter_mut() {
            *z /= n;
        }
        Ok(Self { amplitudes })
    }

    /// Standard basis vector `e_i`, zero-based.
    pub fn basis(dim: usize, i: usize) -> Result<Self> {
        check_dim(dim)?;
        if i >= dim {
            return Err(Error::DimensionMismatch { expected: dim, found: i + 1 });
        }
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[i] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes: v })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &PureState) -> Result<Complex64> {
        same_dim(self.dim(), other.dim())?;
        Ok(inner(&self.amplitudes, &other.amplitudes))
    }

    pub fn projector(&self) -> CMatrix {
        CMatrix::outer(&self.amplitudes)
    }
}

fn check_dim(d: usize) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&d) {
        Ok(())
    } else {
        Err(Error::InvalidDimension(d))
    }
}

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidDensity(format!("{}x{} matrix is not square", matrix.rows(), matrix.cols())));
        }
        check_dim(matrix.rows())?;
        let defect = matrix.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!("hermiticity defect {defect:e}")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr} differs from 1")));
        }
        let (values, _) = matrix.eigh();
        if values[0] < -PSD_TOL {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {:e}", values[0])));
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Eigenvalues (ascending) and eigenvectors (columns).
    pub fn eigen(&self) -> (Vec<f64>, CMatrix) {
        self.matrix.eigh()
    }

    /// Number of eigenvalues above `1e-10`.
    pub fn rank(&self) -> usize {
        self.eigen().0.iter().filter(|&&l| l > RANK_TOL).count()
    }

    /// `<psi|rho|psi>`.
    pub fn expectation(&self, psi: &PureState) -> Result<f64> {
        same_dim(self.dim(), psi.dim())?;
        Ok(self.matrix.quadratic_form(psi.amplitudes()).re)
    }

    pub fn distance(&self, other: &DensityMatrix) -> Result<f64> {
        same_dim(self.dim(), other.dim())?;
        Ok((&self.matrix - &other.matrix).frobenius_norm())
    }
}

/// Strictly convex combination of pure states.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvexDecomposition {
    weights: Vec<f64>,
    states: Vec<PureState>,
}

impl ConvexDecomposition {
    pub fn new(weights: Vec<f64>, states: Vec<PureState>) -> Result<Self> {
        if weights.len() != states.len() {
            return Err(Error::InvalidDecomposition(format!("{} weights for {} states", weights.len(), states.len())));
        }
        if states.is_empty() {
            return Err(Error::InvalidDecomposition("no states".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidDecomposition(format!("weight {w} is not strictly positive")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidDecomposition(format!("weights sum to {total}")));
        }
        let d = states[0].dim();
        for s in &states[1..] {
            same_dim(d, s.dim())?;
        }
        Ok(Self { weights, states })
    }

    /// Equal weights `1/k`.
    pub fn uniform(states: Vec<PureState>) -> Result<Self> {
        let k = states.len().max(1);
        Self::new(vec![1.0 / k as f64; states.len()], states)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn states(&self) -> &[PureState] {
        &self.states
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    fn matrix(&self) -> CMatrix {
        let d = self.dim();
        let mut m = CMatrix::zeros(d, d);
        for (w, s) in self.weights.iter().zip(&self.states) {
            m = &m + &s.projector().scale(*w);
        }
        m
    }
}

/// `sum_i w_i |psi_i><psi_i|`.
pub fn density_from_mixture(decomposition: &ConvexDecomposition) -> Result<DensityMatrix> {
    DensityMatrix::new(decomposition.matrix())
}

/// `-sum lambda ln lambda` in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let (values, _) = rho.eigen();
    if values[0] < -PSD_TOL {
        return Err(Error::InvalidDensity(format!("negative eigenvalue {:e}", values[0])));
    }
    Ok(values.iter().map(|&l| -xlnx(l.max(0.0))).sum())
}

fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Entropy of `(|psi><psi| + |phi><phi|)/2`.
pub fn equal_mixture_entropy(psi: &PureState, phi: &PureState) -> Result<f64> {
    same_dim(psi.dim(), phi.dim())?;
    let mix = ConvexDecomposition::new(vec![0.5, 0.5], vec![psi.clone(), phi.clone()])?;
    von_neumann_entropy(&density_from_mixture(&mix)?)
}

/// `f(p) = -(1+p)/2 ln((1+p)/2) - (1-p)/2 ln((1-p)/2)` for `p = |<psi|phi>|`.
pub fn entropy_from_overlap(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain { value: p, lo: 0.0, hi: 1.0 });
    }
    Ok(-xlnx((1.0 + p) / 2.0) - xlnx((1.0 - p) / 2.0))
}

/// Inverse of [`entropy_from_overlap`] by bisection.
pub fn overlap_from_entropy(entropy: f64) -> Result<f64> {
    if !(0.0..=LN_2).contains(&entropy) {
        return Err(Error::Domain { value: entropy, lo: 0.0, hi: LN_2 });
    }
    // f is decreasing: f(lo) >= entropy >= f(hi).
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if entropy_from_overlap(mid)? > entropy {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let f_lo = entropy_from_overlap(lo)? - entropy;
    let f_hi = entropy_from_overlap(hi)? - entropy;
    Ok(if f_lo.abs() <= f_hi.abs() { lo } else { hi })
}

/// Given `psi = sum c_i phi_i`, return `phi_hat_i = (c_i / c_hat_i) phi_i` so
/// that `psi = sum c_hat_i phi_hat_i` for arbitrary nonzero targets. The
/// outputs lie on the original rays but are generally not normalized.
pub fn rescale_decomposition(
    psi: &PureState,
    terms: &[(Complex64, PureState)],
    targets: &[Complex64],
) -> Result<Vec<Vec<Complex64>>> {
    if terms.len() != targets.len() {
        return Err(Error::DimensionMismatch { expected: terms.len(), found: targets.len() });
    }
    for (_, phi) in terms {
        same_dim(psi.dim(), phi.dim())?;
    }
    if let Some(i) = targets.iter().position(|t| *t == Complex64::new(0.0, 0.0)) {
        return Err(Error::ZeroCoefficient(i));
    }
    if let Some(i) = terms.iter().position(|(c, _)| *c == Complex64::new(0.0, 0.0)) {
        return Err(Error::Precondition(format!("original coefficient {i} is zero")));
    }
    let residual = combination_residual(psi, terms.iter().map(|(c, phi)| (*c, phi.amplitudes())));
    if residual > 1e-10 {
        return Err(Error::Precondition(format!("psi differs from sum c_i phi_i by {residual:e}")));
    }

    let rescaled: Vec<Vec<Complex64>> =
        terms.iter().zip(targets).map(|((c, phi), t)| phi.amplitudes().iter().map(|z| z * (c / t)).collect()).collect();

    let residual = combination_residual(psi, targets.iter().zip(&rescaled).map(|(t, v)| (*t, v.as_slice())));
    if residual > 1e-10 {
        return Err(Error::Precondition(format!("rescaled decomposition misses psi by {residual:e}")));
    }
    Ok(rescaled)
}

/// `|| psi - sum c_i v_i ||`.
fn combination_residual<'a>(psi: &PureState, terms: impl Iterator<Item = (Complex64, &'a [Complex64])>) -> f64 {
    let mut acc = psi.amplitudes().to_vec();
    for (c, v) in terms {
        for (a, z) in acc.iter_mut().zip(v) {
            *a -= c * z;
        }
    }
    norm(&acc)
}

/// Outcome of comparing two decompositions.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpanComparison {
    pub mixtures_equal: bool,
    pub spans_equal: bool,
    /// `|| rho_A - rho_B ||_F`.
    pub mixture_gap: f64,
    /// `|| P_A - P_B ||_F` between the column-space projectors.
    pub projector_gap: f64,
    pub rank_a: usize,
    pub rank_b: usize,
}

impl SpanComparison {
    /// Equal mixtures must have equal spans.
    pub fn implication_holds(&self) -> bool {
        !self.mixtures_equal || self.spans_equal
    }
}

pub fn spans_equal_via_mixture(a: &ConvexDecomposition, b: &ConvexDecomposition) -> Result<SpanComparison> {
    same_dim(a.dim(), b.dim())?;
    let mixture_gap = (&a.matrix() - &b.matrix()).frobenius_norm();
    let (pa, rank_a) = span_projector(a.states());
    let (pb, rank_b) = span_projector(b.states());
    let projector_gap = (&pa - &pb).frobenius_norm();
    Ok(SpanComparison {
        mixtures_equal: mixture_gap <= 1e-9,
        spans_equal: rank_a == rank_b && projector_gap <= 1e-8,
        mixture_gap,
        projector_gap,
        rank_a,
        rank_b,
    })
}

/// Orthogonal projector onto the span of `states`, with its rank.
fn span_projector(states: &[PureState]) -> (CMatrix, usize) {
    let columns: Vec<&[Complex64]> = states.iter().map(|s| s.amplitudes()).collect();
    let (_, basis) = CMatrix::from_columns(&columns).column_space(SPAN_RANK_TOL);
    let d = states[0].dim();
    let mut p = CMatrix::zeros(d, d);
    for v in &basis {
        p = &p + &CMatrix::outer(v);
    }
    (p, basis.len())
}

/// `|| psi - P psi ||` for the projector onto span(`states`).
pub fn span_residual(psi: &PureState, states: &[PureState]) -> Result<f64> {
    for s in states {
        same_dim(psi.dim(), s.dim())?;
    }
    let (p, _) = span_projector(states);
    let projected = p.mul_vec(psi.amplitudes());
    let diff: Vec<Complex64> = psi.amplitudes().iter().zip(&projected).map(|(a, b)| a - b).collect();
    Ok(norm(&diff))
}

/// Write `rho` as a strictly convex mixture whose first term is `psi`.
///
/// The weight on `psi` is the largest `a` keeping `rho - a |psi><psi|`
/// positive semidefinite, located by bisection on the smallest eigenvalue;
/// the rest is the eigendecomposition of the normalized remainder.
pub fn decompose_including(rho: &DensityMatrix, psi: &PureState) -> Result<ConvexDecomposition> {
    let bracket = rho.expectation(psi)?;
    if !(bracket > 1e-8) {
        return Err(Error::OrthogonalToSupport(bracket));
    }
    let projector = psi.projector();
    let gap_to_pure = (rho.matrix() - &projector).frobenius_norm();
    if gap_to_pure <= 1e-10 {
        return ConvexDecomposition::new(vec![1.0], vec![psi.clone()]);
    }

    let (values, vectors) = rho.eigen();
    let original_rank = values.iter().filter(|&&l| l > RANK_TOL).count();
    let support_residual = {
        let mut proj = vec![Complex64::new(0.0, 0.0); psi.dim()];
        for (j, _) in values.iter().enumerate().filter(|(_, l)| **l > RANK_TOL) {
            let v = vectors.column(j);
            let c = inner(&v, psi.amplitudes());
            for (p, z) in proj.iter_mut().zip(&v) {
                *p += c * z;
            }
        }
        let diff: Vec<Complex64> = psi.amplitudes().iter().zip(&proj).map(|(a, b)| a - b).collect();
        norm(&diff)
    };
    if support_residual > 1e-6 {
        return Err(Error::OutsideSupport(support_residual));
    }

    let min_eig = |a: f64| (rho.matrix() - &projector.scale(a)).eigh().0[0];
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        if hi - lo <= 1e-12 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if min_eig(mid) >= -1e-12 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = lo;
    if !(a > 1e-12) {
        return Err(Error::OutsideSupport(support_residual));
    }

    let remainder = (rho.matrix() - &projector.scale(a)).scale(1.0 / (1.0 - a));
    let (rvalues, rvectors) = remainder.eigh();
    let kept: Vec<usize> = (0..rvalues.len()).filter(|&j| rvalues[j] > RANK_TOL).collect();
    if kept.len() >= original_rank {
        return Err(Error::RankDidNotDecrease { original: original_rank, remainder: kept.len() });
    }

    let mut weights = vec![a];
    let mut states = vec![psi.clone()];
    for &j in kept.iter().rev() {
        weights.push((1.0 - a) * rvalues[j]);
        states.push(PureState::normalized(rvectors.column(j))?);
    }
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    ConvexDecomposition::new(weights, states)
}

/// Two decompositions of one mixture: one over the given states, one through `psi`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DualityWitness {
    pub rho: DensityMatrix,
    pub over_given: ConvexDecomposition,
    pub through_psi: ConvexDecomposition,
    /// `|| psi - P psi ||` for the projector onto span of the given states.
    pub span_residual: f64,
    /// `|| rho(over_given) - rho(through_psi) ||_F`.
    pub reconstruction_residual: f64,
}

/// Forward direction: `psi` in the span of `phis` yields a mixture of the
/// `phis` that also decomposes through `psi`.
pub fn verify_superposition_duality(psi: &PureState, phis: &[PureState]) -> Result<DualityWitness> {
    if phis.is_empty() {
        return Err(Error::Precondition("no states supplied".into()));
    }
    for phi in phis {
        let overlap = psi.overlap(phi)?.norm();
        if overlap >= 1.0 - 1e-10 {
            return Err(Error::Precondition(format!(
                "psi coincides with a given state up to phase (|overlap| = {overlap})"
            )));
        }
    }
    let span_residual = span_residual(psi, phis)?;
    if span_residual > 1e-10 {
        return Err(Error::NotInSpan(span_residual));
    }

    let mut over_given = ConvexDecomposition::uniform(phis.to_vec())?;
    let mut rho = density_from_mixture(&over_given)?;
    if rho.expectation(psi)? <= 1e-8 {
        // Tilt the weights towards the states that overlap psi.
        let raw: Vec<f64> = phis
            .iter()
            .map(|phi| psi.overlap(phi).map(|c| c.norm_sqr() + 1.0 / phis.len() as f64))
            .collect::<Result<_>>()?;
        let total: f64 = raw.iter().sum();
        over_given = ConvexDecomposition::new(raw.iter().map(|w| w / total).collect(), phis.to_vec())?;
        rho = density_from_mixture(&over_given)?;
    }
    let through_psi = decompose_including(&rho, psi)?;
    let reconstruction_residual = (&over_given.matrix() - &through_psi.matrix()).frobenius_norm();
    Ok(DualityWitness { rho, over_given, through_psi, span_residual, reconstruction_residual })
}

/// Reverse direction: two decompositions of one mixture, the second
/// containing `psi`, force `psi` into the span of the first. Returns the
/// span residual.
pub fn verify_span_from_decompositions(
    psi: &PureState,
    over_given: &ConvexDecomposition,
    through_psi: &ConvexDecomposition,
) -> Result<f64> {
    same_dim(over_given.dim(), through_psi.dim())?;
    let gap = (&over_given.matrix() - &through_psi.matrix()).frobenius_norm();
    if gap > 1e-8 {
        return Err(Error::Precondition(format!("decompositions describe different mixtures (gap {gap:e})")));
    }
    let contains = through_psi.states().iter().any(|s| s.overlap(psi).map(|c| c.norm() > 1.0 - 1e-10).unwrap_or(false));
    if !contains {
        return Err(Error::Precondition("second decomposition does not contain psi".into()));
    }
    let residual = span_residual(psi, over_given.states())?;
    if residual > 1e-9 {
        return Err(Error::NotInSpan(residual));
    }
    Ok(residual)
}

/// Seeded random instances for the mixture propositions.
pub mod random {
    use super::*;
    use core::f64::consts::PI;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub fn seeded(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    /// Standard complex normal sample by Box-Muller.
    pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
        let u1 = 1.0 - rng.random::<f64>();
        let u2 = rng.random::<f64>();
        let r = (-2.0 * u1.ln()).sqrt();
        Complex64::from_polar(r, 2.0 * PI * u2) * core::f64::consts::FRAC_1_SQRT_2
    }

    /// Haar-distributed pure state.
    pub fn pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<PureState> {
        PureState::normalized((0..dim).map(|_| complex_normal(rng)).collect())
    }

    /// `k` random states with weights bounded away from zero.
    pub fn decomposition<R: Rng + ?Sized>(dim: usize, k: usize, rng: &mut R) -> Result<ConvexDecomposition> {
        let states = (0..k).map(|_| pure_state(dim, rng)).collect::<Result<Vec<_>>>()?;
        let raw: Vec<f64> = (0..k).map(|_| 0.1 + rng.random::<f64>()).collect();
        let total: f64 = raw.iter().sum();
        ConvexDecomposition::new(raw.iter().map(|w| w / total).collect(), states)
    }

    /// Random mixture of rank `min(k, dim)`.
    pub fn density<R: Rng + ?Sized>(dim: usize, k: usize, rng: &mut R) -> Result<DensityMatrix> {
        density_from_mixture(&decomposition(dim, k, rng)?)
    }

    /// Decomposition `A` of a random mixture and a second decomposition `B`
    /// of the same mixture built from its eigenvectors.
    pub fn common_mixture_pair<R: Rng + ?Sized>(
        dim: usize,
        k: usize,
        rng: &mut R,
    ) -> Result<(ConvexDecomposition, ConvexDecomposition)> {
        let a = decomposition(dim, k, rng)?;
        let (values, vectors) = a.matrix().eigh();
        let mut weights = Vec::new();
        let mut states = Vec::new();
        for (j, &l) in values.iter().enumerate() {
            if l > RANK_TOL {
                weights.push(l);
                states.push(PureState::normalized(vectors.column(j))?);
            }
        }
        let total: f64 = weights.iter().sum();
        let b = ConvexDecomposition::new(weights.iter().map(|w| w / total).collect(), states)?;
        Ok((a, b))
    }

    /// A state in the span of `k` random states, together with those states.
    pub fn spanned_state<R: Rng + ?Sized>(dim: usize, k: usize, rng: &mut R) -> Result<(PureState, Vec<PureState>)> {
        let phis = (0..k).map(|_| pure_state(dim, rng)).collect::<Result<Vec<_>>>()?;
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        for phi in &phis {
            let c = complex_normal(rng);
            for (a, z) in v.iter_mut().zip(phi.amplitudes()) {
                *a += c * z;
            }
        }
        Ok((PureState::normalized(v)?, phis))
    }
}
