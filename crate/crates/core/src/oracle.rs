//! Slow, assumption-free cross-checks. `rayleigh_quotient` implements the
//! defining frame inequality directly; its translation sum is exact, since
//! only finitely many translates overlap a finitely supported argument.
//! Deliberately naive; used by tests and by the one-time validation of the
//! duality normalization.

use num_traits::Float;

use crate::dependence::{canonicalize, smallest_singular_pair, CertificateKind, DependencyCertificate};
use crate::error::{GaborError, Result};
use crate::scalar::Scalar;
use crate::sequences::{synthesis_matrix, FiniteSequence, GaborSystem, LatticeIndex};

/// `sum_{m,n} |<f, E_{m/M} T_{nN} g>|^2 / |f|^2` with the `n`-sum running
/// over exactly the translates whose support meets `supp f`.
pub fn rayleigh_quotient<T: Scalar>(sys: &GaborSystem<T>, f: &FiniteSequence<T>) -> Result<T> {
    if f.is_zero() {
        return Err(GaborError::InvalidWindow("rayleigh quotient needs a nonzero argument".into()));
    }
    if sys.window.is_zero() {
        return Err(GaborError::ZeroWindow);
    }
    let g = &sys.window;
    let step = sys.translation_step as i64;
    // supp(T_{nN} g) = supp(g) + nN meets supp(f) iff
    // nN in [min f - max g, max f - min g].
    let lo = f.support_min().unwrap() - g.support_max().unwrap();
    let hi = f.support_max().unwrap() - g.support_min().unwrap();
    let n_lo = lo.div_euclid(step) + if lo.rem_euclid(step) != 0 { 1 } else { 0 };
    let n_hi = hi.div_euclid(step);

    let mut total = T::zero();
    for n in n_lo..=n_hi {
        for m in 0..sys.modulation_count {
            let elem = sys.element(LatticeIndex { m, n })?;
            total += f.inner_product(&elem).norm_sqr();
        }
    }
    Ok(total / f.norm_sqr())
}

/// Extreme eigenvalues of the Gram matrix of the finite subfamily over
/// `n in [n_lo, n_hi]`: squared extreme singular values of the synthesis
/// matrix. For a Riesz sequence these bracket inside the true Riesz
/// bounds for every range, with the minimum non-increasing as the range
/// grows.
pub fn gram_finite_section<T: Scalar>(
    sys: &GaborSystem<T>,
    n_lo: i64,
    n_hi: i64,
) -> Result<(T, T)> {
    let synth = synthesis_matrix(sys, n_lo, n_hi)?;
    let sv = synth.matrix.singular_values();
    let mut lo = T::infinity();
    let mut hi = T::zero();
    for &s in sv.iter() {
        lo = Float::min(lo, s);
        hi = Float::max(hi, s);
    }
    // A wide matrix has a genuine null direction the thin SVD cannot see.
    if synth.matrix.ncols() > synth.matrix.nrows() {
        lo = T::zero();
    }
    Ok((lo * lo, hi * hi))
}

/// Sweeps `l = 0..=max_l` and returns the first near-null synthesis vector
/// found, if any.
pub fn dependency_search<T: Scalar>(
    sys: &GaborSystem<T>,
    max_l: u32,
    tol: T,
) -> Result<Option<DependencyCertificate<T>>> {
    if sys.window.is_zero() {
        return Err(GaborError::ZeroWindow);
    }
    for ell in 0..=max_l {
        let synth = synthesis_matrix(sys, 0, ell as i64)?;
        let (sigma, mut v) = smallest_singular_pair(&synth.matrix);
        if sigma <= tol {
            canonicalize(&mut v);
            let terms = synth.columns.iter().enumerate().map(|(i, idx)| (*idx, v[i])).collect();
            return Ok(Some(DependencyCertificate {
                kind: CertificateKind::CountingNullspace,
                terms,
                residual: sigma,
                ell: Some(ell),
                tolerance: tol,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::windows::comb_window;
    use num_complex::Complex;

    type Seq = FiniteSequence<f64>;

    #[test]
    fn rayleigh_of_orthonormal_basis() {
        let sys = GaborSystem::new(Seq::delta(0), 1, 1);
        assert!((rayleigh_quotient(&sys, &Seq::delta(0)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rayleigh_of_doubled_basis_is_constant() {
        let sys = GaborSystem::new(Seq::delta(0), 2, 1);
        for f in [
            Seq::delta(3),
            Seq::new(-2, vec![Complex::new(1.0, 2.0), Complex::new(-0.5, 0.25)]),
            Seq::from_real(0, &[1.0, -1.0, 2.0, 0.5]),
        ] {
            assert!((rayleigh_quotient(&sys, &f).unwrap() - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rayleigh_of_tight_dense_frame() {
        // dense ones on {1..N}, N <= M: tight frame with bound M
        for (m, n) in [(3u32, 2u32), (4, 4), (5, 3)] {
            let g = Seq::from_real(1, &vec![1.0; n as usize]);
            let sys = GaborSystem::new(g, m, n);
            let f = Seq::new(
                -1,
                vec![Complex::new(0.3, 1.0), Complex::new(-0.7, 0.2), Complex::new(1.1, -0.4)],
            );
            assert!((rayleigh_quotient(&sys, &f).unwrap() - m as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn rayleigh_rejects_zero_argument() {
        let sys = GaborSystem::new(Seq::delta(0), 1, 1);
        assert!(rayleigh_quotient(&sys, &Seq::zero()).is_err());
    }

    #[test]
    fn gram_of_orthonormal_basis() {
        let sys = GaborSystem::new(Seq::delta(0), 1, 1);
        let (lo, hi) = gram_finite_section(&sys, 0, 4).unwrap();
        assert!((lo - 1.0).abs() < 1e-12);
        assert!((hi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gram_sees_comb_degeneracy() {
        let g = comb_window::<f64>(2, 2).unwrap();
        let sys = GaborSystem::new(g, 2, 1);
        let (lo, _) = gram_finite_section(&sys, 0, 0).unwrap();
        assert!(lo < 1e-12);
    }

    #[test]
    fn gram_of_disjoint_orthogonal_blocks() {
        let g = Seq::from_real(1, &[1.0, 1.0, 1.0]);
        let sys = GaborSystem::new(g, 3, 3);
        let (lo, hi) = gram_finite_section(&sys, -2, 2).unwrap();
        assert!((lo - 3.0).abs() < 1e-10);
        assert!((hi - 3.0).abs() < 1e-10);
    }

    #[test]
    fn search_finds_comb_at_zero_translates() {
        let g = comb_window::<f64>(2, 1).unwrap();
        let sys = GaborSystem::new(g, 2, 1);
        let cert = dependency_search(&sys, 0, 1e-10).unwrap().unwrap();
        assert_eq!(cert.ell, Some(0));
        assert!(cert.residual < 1e-12);
    }

    #[test]
    fn search_respects_riesz_basis_regime() {
        let g = Seq::from_real(1, &[1.0, 1.0]);
        let sys = GaborSystem::new(g, 2, 2);
        assert!(dependency_search(&sys, 6, 1e-6).unwrap().is_none());
    }

    #[test]
    fn search_agrees_with_counting_construction() {
        let g = Seq::from_real(1, &[1.0, 1.0]);
        let sys = GaborSystem::new(g, 2, 1);
        let found = dependency_search(&sys, 8, 1e-10).unwrap().unwrap();
        let built = crate::dependence::find_dependency(&sys).unwrap();
        assert_eq!(found.ell, built.ell);
    }
}
