//! The window families used throughout: dense windows on `{1..N}`,
//! perturbed dense windows with prescribed support size, combs fixed by
//! every modulation, integer-sampled B-splines, truncated Gaussians, and
//! the truncated infinite-support window generating a dependent frame.
//!
//! All finite families place their support starting at index 1.

use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{Float, One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{GaborError, Result};
use crate::scalar::Scalar;
use crate::sequences::{FiniteSequence, GaborSystem};
use crate::spectral;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowFamily {
    Dense,
    Perturbed,
    Comb,
    Bspline,
    Gaussian,
    InfiniteDependentTruncated,
}

/// A constructed window with the parameters that produced it and an upper
/// bound on the distance to the ideal (possibly infinite-support) window.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionRecord<T: Scalar + Serialize> {
    pub window: FiniteSequence<T>,
    pub family: WindowFamily,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub modulation_count: Option<u32>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub translation_step: Option<u32>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub support_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_max: Option<u32>,
    pub truncation_error: T,
    /// Modulation-only dependency coefficients carried by the truncated
    /// infinite-support construction, in order `m = 0..M-1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulation_dependency: Option<Vec<Complex<T>>>,
}

impl<T: Scalar + Serialize> ConstructionRecord<T> {
    /// Record for an exactly representable family (no truncation).
    pub fn exact(window: FiniteSequence<T>, family: WindowFamily) -> Self {
        Self {
            window,
            family,
            modulation_count: None,
            translation_step: None,
            support_size: None,
            epsilon: None,
            rho: None,
            tau: None,
            l_max: None,
            truncation_error: T::zero(),
            modulation_dependency: None,
        }
    }
}

/// Window with support exactly `{1, ..., N}`; defaults to all ones.
pub fn dense_window<T: Scalar>(
    translation_step: u32,
    values: Option<Vec<Complex<T>>>,
) -> Result<FiniteSequence<T>> {
    let n = translation_step as usize;
    let values = values.unwrap_or_else(|| vec![Complex::one(); n]);
    if values.len() != n {
        return Err(GaborError::InvalidConstruction(format!(
            "dense window needs exactly {n} values, got {}",
            values.len()
        )));
    }
    if values.iter().any(|v| v.is_zero()) {
        return Err(GaborError::InvalidConstruction(
            "dense window values must all be nonzero".into(),
        ));
    }
    Ok(FiniteSequence::new(1, values))
}

/// Dense window on `{1..N}` plus `epsilon` impulses on `{N+1..K}`, with
/// `epsilon = rho * A / ((K - N) sqrt(M))` staying strictly inside the
/// perturbation budget of the base frame's lower bound `A`.
///
/// The base is first rescaled to unit lower frame bound. That keeps the
/// construction inside the actual stability budget of the perturbation
/// theorem (`epsilon (K - N) sqrt(M) < sqrt(A)`) for every `rho` in
/// `(0, 1)`: after the rescaling the two conditions coincide.
pub fn perturbed_window<T: Scalar>(
    modulation_count: u32,
    translation_step: u32,
    support_size: usize,
    rho: T,
    base: Option<FiniteSequence<T>>,
) -> Result<ConstructionRecord<T>> {
    let (m, n) = (modulation_count, translation_step);
    if n > m {
        return Err(GaborError::InvalidConstruction(format!(
            "perturbed window needs N <= M, got N = {n}, M = {m}"
        )));
    }
    if support_size <= n as usize {
        return Err(GaborError::InvalidConstruction(format!(
            "perturbed window needs K > N, got K = {support_size}, N = {n}"
        )));
    }
    if rho <= T::zero() || rho >= T::one() {
        return Err(GaborError::InvalidConstruction("rho must lie in (0, 1)".into()));
    }
    let base = match base {
        Some(b) => {
            if b.support_min() != Some(1)
                || b.support_max() != Some(n as i64)
                || b.support_size() != n as usize
            {
                return Err(GaborError::InvalidConstruction(format!(
                    "base window must have support exactly {{1, ..., {n}}}"
                )));
            }
            b
        }
        None => dense_window(n, None)?,
    };
    let sys = GaborSystem::new(base.clone(), m, n);
    let report = spectral::frame_bounds(&sys, spectral::DEFAULT_GRID_PER_N * n as usize)?;
    if !report.is_frame() {
        return Err(GaborError::InvalidConstruction("base window does not generate a frame".into()));
    }
    let base = base.scaled(Complex::new(T::one() / Float::sqrt(report.lower), T::zero()));
    let lower = T::one(); // lower frame bound of the rescaled base
    let excess = T::of_usize(support_size - n as usize);
    let epsilon = rho * lower / (excess * Float::sqrt(T::of_usize(m as usize)));

    let mut window = base;
    for k in (n as i64 + 1)..=(support_size as i64) {
        window = window.add(&FiniteSequence::delta(k).scaled(Complex::new(epsilon, T::zero())));
    }
    debug_assert_eq!(window.support_size(), support_size);

    let check = GaborSystem::new(window.clone(), m, n);
    let (still_frame, _) = spectral::is_frame(&check)?;
    if !still_frame {
        return Err(GaborError::InvalidConstruction(
            "perturbed window failed the frame check; perturbation budget violated".into(),
        ));
    }
    Ok(ConstructionRecord {
        window,
        family: WindowFamily::Perturbed,
        modulation_count: Some(m),
        translation_step: Some(n),
        support_size: Some(support_size),
        epsilon: Some(epsilon),
        rho: Some(rho),
        tau: None,
        l_max: None,
        truncation_error: T::zero(),
        modulation_dependency: None,
    })
}

/// The comb `sum_{k=1}^K delta_{kM}`, fixed by every modulation `E_{m/M}`.
pub fn comb_window<T: Scalar>(modulation_count: u32, spikes: usize) -> Result<FiniteSequence<T>> {
    if modulation_count < 2 {
        return Err(GaborError::InvalidConstruction(
            "comb window needs M >= 2: for M = 1 every nonzero window generates an independent system"
                .into(),
        ));
    }
    if spikes == 0 {
        return Err(GaborError::InvalidConstruction("comb window needs K >= 1".into()));
    }
    let m = modulation_count as i64;
    let mut coeffs = vec![Complex::<T>::zero(); (spikes as i64 * m - m + 1) as usize];
    for k in 0..spikes as i64 {
        coeffs[(k * m) as usize] = Complex::one();
    }
    Ok(FiniteSequence::new(m, coeffs))
}

/// Exact integer samples of the B-spline `B_{N+1}` at `j = 1..N`, as
/// rationals. Computed by the integer-sample recurrence
/// `a(n, j) = j * a(n-1, j) + (n + 1 - j) * a(n-1, j-1)` over `n!`
/// (the same numbers the convolution recursion produces at the nodes).
pub fn bspline_integer_samples_exact(translation_step: u32) -> Vec<Ratio<i128>> {
    let n = translation_step as usize;
    // a[j-1] holds the integer numerator for sample position j.
    let mut a = vec![0i128; n];
    a[0] = 1;
    for row in 2..=n {
        for j in (0..row).rev() {
            let prev_same = if j < row - 1 { a[j] } else { 0 };
            let prev_left = if j > 0 { a[j - 1] } else { 0 };
            a[j] = (j as i128 + 1) * prev_same + (row as i128 - j as i128) * prev_left;
        }
    }
    let factorial: i128 = (1..=n as i128).product();
    a.into_iter().map(|v| Ratio::new(v, factorial)).collect()
}

/// Integer samples of `B_{N+1}`: support exactly `{1..N}`, values summing
/// to one.
pub fn bspline_window<T: Scalar>(translation_step: u32) -> Result<FiniteSequence<T>> {
    if translation_step == 0 {
        return Err(GaborError::InvalidConstruction("B-spline window needs N >= 1".into()));
    }
    let samples = bspline_integer_samples_exact(translation_step);
    let coeffs = samples
        .iter()
        .map(|r| Complex::new(T::of(r.to_f64().expect("rational fits in f64")), T::zero()))
        .collect();
    Ok(FiniteSequence::new(1, coeffs))
}

/// Truncated Gaussian `g(j) = e^{-j^2}` for `|j| <= J`,
/// `J = ceil(sqrt(ln(1/tau)))`, with a reported bound on the discarded
/// tail's norm.
pub fn gaussian_window<T: Scalar>(tau: T) -> Result<ConstructionRecord<T>> {
    if tau <= T::zero() || tau >= T::one() {
        return Err(GaborError::InvalidConstruction("tau must lie in (0, 1)".into()));
    }
    let j_max = Float::ceil(Float::sqrt(Float::ln(T::one() / tau)));
    let j_max_i = <T as ToPrimitive>::to_i64(&j_max).expect("cutoff index fits in i64");
    let coeffs = (-j_max_i..=j_max_i)
        .map(|j| {
            let x = T::of_i64(j);
            Complex::new(Float::exp(-x * x), T::zero())
        })
        .collect();
    let window = FiniteSequence::new(-j_max_i, coeffs);

    // Tail of sum e^{-2 j^2}: a few explicit terms plus a geometric
    // majorant (the term ratio beyond j is below e^{-2}).
    let mut tail = T::zero();
    for j in (j_max_i + 1)..=(j_max_i + 3) {
        let x = T::of_i64(j);
        tail += Float::exp(T::of(-2.0) * x * x);
    }
    let far = T::of_i64(j_max_i + 4);
    tail += Float::exp(T::of(-2.0) * far * far) / (T::one() - Float::exp(T::of(-2.0)));
    let truncation_error = Float::sqrt(T::of(2.0) * tail);

    Ok(ConstructionRecord {
        window,
        family: WindowFamily::Gaussian,
        modulation_count: None,
        translation_step: None,
        support_size: Some((2 * j_max_i + 1) as usize),
        epsilon: None,
        rho: None,
        tau: Some(tau),
        l_max: None,
        truncation_error,
        modulation_dependency: None,
    })
}

/// Smallest `l_max` with `eps * 2^{-l_max} * sqrt(M) < 1e-10`.
pub fn default_spike_count<T: Scalar>(eps: T, modulation_count: u32) -> u32 {
    let target = T::of(1e-10);
    let mut bound = eps * Float::sqrt(T::of_usize(modulation_count as usize));
    let mut l = 0u32;
    while bound >= target && l < 4096 {
        bound = bound / T::of(2.0);
        l += 1;
    }
    l
}

/// Truncation of the infinite-support window
/// `g + sum_l (eps / 2^l) delta_{l M + 1}`: still a frame for small `eps`,
/// yet annihilated by a modulation-only coefficient vector, which the
/// record carries.
pub fn dependent_infinite_window<T: Scalar + Serialize>(
    modulation_count: u32,
    translation_step: u32,
    eps: T,
    l_max: u32,
) -> Result<ConstructionRecord<T>> {
    let (m, n) = (modulation_count, translation_step);
    if n >= m {
        return Err(GaborError::InvalidConstruction(format!(
            "dependent infinite window needs N < M, got N = {n}, M = {m}"
        )));
    }
    if eps <= T::zero() {
        return Err(GaborError::InvalidConstruction("eps must be positive".into()));
    }
    if l_max == 0 {
        return Err(GaborError::InvalidConstruction("l_max must be at least 1".into()));
    }
    let mut window = dense_window::<T>(n, None)?;
    let mut scale = eps;
    for l in 1..=l_max as i64 {
        scale = scale / T::of(2.0);
        window = window
            .add(&FiniteSequence::delta(l * m as i64 + 1).scaled(Complex::new(scale, T::zero())));
    }
    let truncation_error = eps / Float::powi(T::of(2.0), l_max as i32);

    // Null vector of the N x M character matrix [e^{2 pi i j m / M}],
    // j = 1..N: guaranteed since N < M, and it annihilates every spike
    // because the spike positions are congruent to 1 mod M.
    let matrix = nalgebra::DMatrix::from_fn(n as usize, m as usize, |r, c| {
        crate::sequences::unit_root::<T>((r as i64 + 1) * c as i64, m)
    });
    let (sigma, mut coeffs) = crate::dependence::smallest_singular_pair(&matrix);
    debug_assert!(sigma < T::of(1e-10));
    crate::dependence::canonicalize(&mut coeffs);

    Ok(ConstructionRecord {
        window,
        family: WindowFamily::InfiniteDependentTruncated,
        modulation_count: Some(m),
        translation_step: Some(n),
        support_size: Some(n as usize + l_max as usize),
        epsilon: Some(eps),
        rho: None,
        tau: None,
        l_max: Some(l_max),
        truncation_error,
        modulation_dependency: Some(coeffs.iter().copied().collect()),
    })
}
