//! Explicit linear-dependency certificates and finite-range independence
//! certification.
//!
//! `find_dependency` dispatches on the regimes where dependence is
//! guaranteed:
//!
//! 1. the window is fixed by a nontrivial modulation (comb structure):
//!    an exact two-term certificate;
//! 2. `M` exceeds the support size: the `M` modulations of the window sit
//!    in a space of dimension `|supp g|`, a null vector over `n = 0` does it;
//! 3. `N < M`: a counting argument forces a null vector once enough
//!    translates are included; the smallest number is
//!    `l = floor((L - M)/(M - N)) + 1` with `L` the support-window length.
//!
//! Everything else is the regime where both dependent and independent
//! systems exist, reported as `NoGuaranteedDependency`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use num_traits::{Float, Zero};
use serde::ser::{SerializeSeq, SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{GaborError, Result};
use crate::scalar::Scalar;
use crate::sequences::{modulate, synthesis_matrix, FiniteSequence, GaborSystem, LatticeIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    CombExact,
    CountingNullspace,
    ModulationOnly,
}

/// A finitely supported coefficient family `c_{m,n}` with unit norm whose
/// synthesis `sum c_{m,n} E_{m/M} T_{nN} g` has the recorded residual norm.
#[derive(Clone, Debug)]
pub struct DependencyCertificate<T> {
    pub kind: CertificateKind,
    /// Coefficients in n-major enumeration order.
    pub terms: Vec<(LatticeIndex, Complex<T>)>,
    pub residual: T,
    /// Number of translates used by the counting construction, when it ran.
    pub ell: Option<u32>,
    /// Residual tolerance class the certificate was issued under.
    pub tolerance: T,
}

impl<T: Scalar + serde::Serialize> Serialize for DependencyCertificate<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Terms<'a, T>(&'a [(LatticeIndex, Complex<T>)]);
        impl<T: Scalar + serde::Serialize> Serialize for Terms<'_, T> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                #[derive(serde::Serialize)]
                struct Term<T> {
                    m: u32,
                    n: i64,
                    re: T,
                    im: T,
                }
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for (idx, c) in self.0 {
                    seq.serialize_element(&Term { m: idx.m, n: idx.n, re: c.re, im: c.im })?;
                }
                seq.end()
            }
        }
        let mut s = serializer.serialize_struct("DependencyCertificate", 4)?;
        s.serialize_field("kind", &self.kind)?;
        s.serialize_field("terms", &Terms(&self.terms))?;
        s.serialize_field("residual", &self.residual)?;
        s.serialize_field("enumeration_order", "n-major")?;
        s.end()
    }
}

/// Finite-range independence evidence: the smallest singular value of the
/// synthesis matrix over `n in [n_lo, n_hi]`. This certifies only the
/// finite subfamily, never the full system.
#[derive(Clone, Debug, Serialize)]
pub struct IndependenceCertificate<T> {
    pub n_lo: i64,
    pub n_hi: i64,
    pub sigma_min: T,
    pub tolerance: T,
}

/// Outcome of a finite-range independence check. Failure hands back the
/// near-null vector so callers can escalate it to a dependency claim.
#[derive(Clone, Debug)]
pub enum IndependenceOutcome<T> {
    Independent(IndependenceCertificate<T>),
    NearDependent(DependencyCertificate<T>),
}

/// Smallest singular value with its right-singular vector. The matrix is
/// padded with zero rows when it is wide, so genuine null directions are
/// visible to the thin SVD.
pub(crate) fn smallest_singular_pair<T: Scalar>(
    matrix: &DMatrix<Complex<T>>,
) -> (T, DVector<Complex<T>>) {
    let padded;
    let work = if matrix.nrows() < matrix.ncols() {
        let mut p = DMatrix::<Complex<T>>::zeros(matrix.ncols(), matrix.ncols());
        p.view_mut((0, 0), (matrix.nrows(), matrix.ncols())).copy_from(matrix);
        padded = p;
        &padded
    } else {
        matrix
    };
    let svd = work.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let mut best = 0usize;
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s < svd.singular_values[best] {
            best = i;
        }
    }
    let sigma = svd.singular_values[best];
    let v = DVector::from_fn(work.ncols(), |k, _| v_t[(best, k)].conj());
    (sigma, v)
}

/// Canonical gauge: unit norm and the first coefficient of nonnegligible
/// modulus rotated to the positive real axis.
pub(crate) fn canonicalize<T: Scalar>(v: &mut DVector<Complex<T>>) {
    let norm_sqr = v.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr());
    let norm = Float::sqrt(norm_sqr);
    if norm.is_zero() {
        return;
    }
    let inv = Complex::new(T::one() / norm, T::zero());
    for c in v.iter_mut() {
        *c *= inv;
    }
    let max_abs = v.iter().fold(T::zero(), |acc, c| Float::max(acc, c.norm()));
    let cutoff = T::of(1e-12) * max_abs;
    if let Some(first) = v.iter().position(|c| c.norm() > cutoff) {
        let phase = v[first] / Complex::new(v[first].norm(), T::zero());
        let rot = phase.conj();
        for c in v.iter_mut() {
            *c *= rot;
        }
    }
}

/// The minimal number of translates making the counting argument fire:
/// smallest `l >= 0` with `(l + 1) M > L + l N`.
pub fn minimal_translate_count(support_len: usize, modulation_count: u32, translation_step: u32) -> u32 {
    let l = support_len as i64;
    let m = modulation_count as i64;
    let n = translation_step as i64;
    debug_assert!(n < m);
    let ell = (l - m).div_euclid(m - n) + 1;
    ell.max(0) as u32
}

/// Produces a dependency certificate wherever the parameter regime
/// guarantees one.
pub fn find_dependency<T: Scalar>(sys: &GaborSystem<T>) -> Result<DependencyCertificate<T>> {
    if sys.window.is_zero() {
        return Err(GaborError::ZeroWindow);
    }
    let g = &sys.window;
    let m_count = sys.modulation_count;
    let n_step = sys.translation_step;

    // Comb structure: g = E_{m'/M} g exactly, tried before any numerics.
    let comb_tol = T::of(1e-14) * Float::max(T::one(), g.norm());
    for m_prime in 1..m_count {
        if modulate(g, m_prime as i64, m_count).approx_eq(g, comb_tol) {
            let half = Complex::new(T::one() / Float::sqrt(T::of(2.0)), T::zero());
            let terms = vec![
                (LatticeIndex { m: 0, n: 0 }, half),
                (LatticeIndex { m: m_prime, n: 0 }, -half),
            ];
            let cert = DependencyCertificate {
                kind: CertificateKind::CombExact,
                terms,
                residual: T::zero(),
                ell: None,
                tolerance: T::of(1e-14),
            };
            let residual = verify_certificate(sys, &cert)?;
            return Ok(DependencyCertificate { residual, ..cert });
        }
    }

    let support_size = g.support_size();
    if m_count as usize > support_size {
        // M modulations of g live in a |supp g|-dimensional space.
        let support: Vec<i64> = g.iter().filter(|(_, c)| !c.is_zero()).map(|(j, _)| j).collect();
        let matrix = DMatrix::from_fn(support.len(), m_count as usize, |r, m| {
            g.value(support[r]) * crate::sequences::unit_root::<T>(support[r] * m as i64, m_count)
        });
        let (sigma, mut v) = smallest_singular_pair(&matrix);
        canonicalize(&mut v);
        let terms = (0..m_count).map(|m| (LatticeIndex { m, n: 0 }, v[m as usize])).collect();
        return Ok(DependencyCertificate {
            kind: CertificateKind::ModulationOnly,
            terms,
            residual: sigma,
            ell: None,
            tolerance: T::of(1e-8),
        });
    }

    if n_step < m_count {
        let ell = minimal_translate_count(g.support_len(), m_count, n_step);
        let synth = synthesis_matrix(sys, 0, ell as i64)?;
        let (sigma, mut v) = smallest_singular_pair(&synth.matrix);
        canonicalize(&mut v);
        let terms = synth
            .columns
            .iter()
            .enumerate()
            .map(|(i, idx)| (*idx, v[i]))
            .collect();
        return Ok(DependencyCertificate {
            kind: CertificateKind::CountingNullspace,
            terms,
            residual: sigma,
            ell: Some(ell),
            tolerance: T::of(1e-8),
        });
    }

    Err(GaborError::NoGuaranteedDependency {
        modulation_count: m_count,
        translation_step: n_step,
        support_size,
    })
}

/// Recomputes the synthesis norm of a certificate from scratch.
pub fn verify_certificate<T: Scalar>(
    sys: &GaborSystem<T>,
    cert: &DependencyCertificate<T>,
) -> Result<T> {
    if cert.terms.iter().all(|(_, c)| c.is_zero()) {
        return Err(GaborError::EmptyCertificate);
    }
    let mut acc = FiniteSequence::<T>::zero();
    for (idx, c) in &cert.terms {
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&sys.element(*idx)?.scaled(*c));
    }
    Ok(acc.norm())
}

/// Smallest singular value of the synthesis matrix over a translation
/// range; succeeds iff it exceeds `tol`.
pub fn certify_independence_range<T: Scalar>(
    sys: &GaborSystem<T>,
    n_lo: i64,
    n_hi: i64,
    tol: T,
) -> Result<IndependenceOutcome<T>> {
    let synth = synthesis_matrix(sys, n_lo, n_hi)?;
    let (sigma, mut v) = smallest_singular_pair(&synth.matrix);
    if sigma > tol {
        Ok(IndependenceOutcome::Independent(IndependenceCertificate {
            n_lo,
            n_hi,
            sigma_min: sigma,
            tolerance: tol,
        }))
    } else {
        canonicalize(&mut v);
        let terms = synth.columns.iter().enumerate().map(|(i, idx)| (*idx, v[i])).collect();
        Ok(IndependenceOutcome::NearDependent(DependencyCertificate {
            kind: CertificateKind::CountingNullspace,
            terms,
            residual: sigma,
            ell: None,
            tolerance: tol,
        }))
    }
}

/// Default independence tolerance: `1e-8` relative to the column norm.
pub fn default_independence_tol<T: Scalar>(sys: &GaborSystem<T>) -> T {
    T::of(1e-8) * sys.window.norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    type Seq = FiniteSequence<f64>;

    #[test]
    fn comb_certificate_is_exact() {
        let g = Seq::delta(2).add(&Seq::delta(4));
        let sys = GaborSystem::new(g, 2, 1);
        let cert = find_dependency(&sys).unwrap();
        assert_eq!(cert.kind, CertificateKind::CombExact);
        assert!(cert.residual < 1e-14);
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        assert!((cert.terms[0].1.re - inv_sqrt2).abs() < 1e-15);
        assert!((cert.terms[1].1.re + inv_sqrt2).abs() < 1e-15);
        assert!(verify_certificate(&sys, &cert).unwrap() < 1e-14);
    }

    #[test]
    fn impulse_with_many_modulations() {
        // delta_0 is fixed by every modulation, so the comb branch fires
        // with an exact two-term certificate; coefficients sum to zero.
        let sys = GaborSystem::new(Seq::delta(0), 3, 1);
        let cert = find_dependency(&sys).unwrap();
        assert!(cert.residual < 1e-14);
        let sum: Complex<f64> = cert.terms.iter().map(|(_, c)| c).sum();
        assert!(sum.norm() < 1e-14);
    }

    #[test]
    fn modulation_only_nullspace() {
        // Support {1}, M = 3 > 1 = |supp g|, not modulation invariant.
        let sys = GaborSystem::new(Seq::delta(1), 3, 1);
        let cert = find_dependency(&sys).unwrap();
        assert_eq!(cert.kind, CertificateKind::ModulationOnly);
        assert!(cert.residual < 1e-14);
        assert!(verify_certificate(&sys, &cert).unwrap() < 1e-12);
    }

    #[test]
    fn counting_nullspace_two_point_window() {
        let g = Seq::from_real(1, &[1.0, 1.0]);
        let sys = GaborSystem::new(g, 2, 1);
        let cert = find_dependency(&sys).unwrap();
        assert_eq!(cert.kind, CertificateKind::CountingNullspace);
        assert_eq!(cert.ell, Some(1));
        assert_eq!(cert.terms.len(), 4);
        assert!(cert.residual < 1e-10);
        let recomputed = verify_certificate(&sys, &cert).unwrap();
        assert!((recomputed - cert.residual).abs() < 1e-12);
    }

    #[test]
    fn no_guarantee_in_mixed_regime() {
        // N >= M, M <= |supp g|, no modulation invariance.
        let g = Seq::from_real(1, &[1.0, 2.0]);
        let sys = GaborSystem::new(g, 2, 3);
        assert!(matches!(
            find_dependency(&sys),
            Err(GaborError::NoGuaranteedDependency { .. })
        ));
    }

    #[test]
    fn minimal_translate_count_is_minimal() {
        for (l, m, n) in [(2usize, 2u32, 1u32), (5, 3, 1), (7, 4, 2), (12, 6, 5), (3, 4, 1)] {
            let ell = minimal_translate_count(l, m, n) as i64;
            let (li, mi, ni) = (l as i64, m as i64, n as i64);
            assert!((ell + 1) * mi > li + ell * ni, "chosen ell must satisfy the count");
            if ell >= 1 {
                assert!(ell * mi <= li + (ell - 1) * ni, "ell - 1 must fail the count");
            }
        }
    }

    #[test]
    fn independence_of_orthonormal_basis() {
        let sys = GaborSystem::new(Seq::delta(0), 1, 1);
        match certify_independence_range(&sys, -5, 5, 1e-8).unwrap() {
            IndependenceOutcome::Independent(c) => assert!((c.sigma_min - 1.0).abs() < 1e-12),
            IndependenceOutcome::NearDependent(_) => panic!("orthonormal basis flagged dependent"),
        }
    }

    #[test]
    fn independence_of_dense_riesz_basis() {
        // ones on {1..3}, M = N = 3: disjoint orthogonal blocks, sigma_min = sqrt(3)
        let g = Seq::from_real(1, &[1.0, 1.0, 1.0]);
        let sys = GaborSystem::new(g, 3, 3);
        match certify_independence_range(&sys, -4, 4, 1e-8).unwrap() {
            IndependenceOutcome::Independent(c) => {
                assert!((c.sigma_min - 3.0_f64.sqrt()).abs() < 1e-10)
            }
            IndependenceOutcome::NearDependent(_) => panic!("Riesz basis flagged dependent"),
        }
    }

    #[test]
    fn near_null_failure_returns_vector() {
        let g = Seq::delta(2).add(&Seq::delta(4));
        let sys = GaborSystem::new(g, 2, 1);
        match certify_independence_range(&sys, 0, 0, 1e-8).unwrap() {
            IndependenceOutcome::NearDependent(cert) => {
                assert!(cert.residual < 1e-12);
                assert!(verify_certificate(&sys, &cert).unwrap() < 1e-10);
            }
            IndependenceOutcome::Independent(_) => panic!("comb subfamily is dependent"),
        }
    }

    #[test]
    fn verify_rejects_zero_certificate() {
        let sys = GaborSystem::new(Seq::delta(0), 2, 1);
        let cert = DependencyCertificate {
            kind: CertificateKind::ModulationOnly,
            terms: vec![(LatticeIndex { m: 0, n: 0 }, Complex::new(0.0, 0.0))],
            residual: 0.0,
            ell: None,
            tolerance: 1e-8,
        };
        assert!(matches!(verify_certificate(&sys, &cert), Err(GaborError::EmptyCertificate)));
    }

    #[test]
    fn single_modulation_translates_stay_independent() {
        // M = 1 systems: sigma_min positive for any nonzero window and range.
        let g = Seq::new(0, vec![Complex::new(0.7, -0.3), Complex::new(1.1, 0.2), Complex::new(-0.5, 0.9)]);
        for n_step in [1u32, 2, 5] {
            let sys = GaborSystem::new(g.clone(), 1, n_step);
            match certify_independence_range(&sys, -3, 3, 0.0).unwrap() {
                IndependenceOutcome::Independent(c) => assert!(c.sigma_min > 1e-8),
                IndependenceOutcome::NearDependent(_) => panic!("M = 1 family must be independent"),
            }
        }
    }
}
