//! Finitely supported complex sequences on the integers and the Gabor
//! operator algebra acting on them: modulation, translation, inner
//! products and synthesis-matrix assembly.
//!
//! A sequence is stored as a dense coefficient block plus the index of its
//! first stored coefficient. Construction trims exact zeros at both ends,
//! so the first and last stored coefficients of a nonzero sequence are
//! nonzero and the zero sequence is the empty block.

use num_complex::Complex;
use num_traits::{Float, One, Zero};
use serde::ser::{Serialize, SerializeSeq, SerializeStruct, Serializer};

use crate::error::{GaborError, Result};
use crate::scalar::Scalar;

/// A finitely supported sequence on the integer lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSequence<T> {
    offset: i64,
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> FiniteSequence<T> {
    /// Builds a sequence whose value at index `offset + i` is `coeffs[i]`.
    /// Leading and trailing exact zeros are trimmed.
    pub fn new(offset: i64, coeffs: Vec<Complex<T>>) -> Self {
        let mut seq = Self { offset, coeffs };
        seq.trim();
        seq
    }

    pub fn zero() -> Self {
        Self { offset: 0, coeffs: Vec::new() }
    }

    /// The unit impulse at index `k`.
    pub fn delta(k: i64) -> Self {
        Self { offset: k, coeffs: vec![Complex::one()] }
    }

    pub fn from_real(offset: i64, values: &[T]) -> Self {
        Self::new(offset, values.iter().map(|&v| Complex::new(v, T::zero())).collect())
    }

    fn trim(&mut self) {
        let first = self.coeffs.iter().position(|c| !c.is_zero());
        match first {
            None => {
                self.coeffs.clear();
                self.offset = 0;
            }
            Some(lo) => {
                let hi = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
                self.coeffs.drain(hi + 1..);
                self.coeffs.drain(..lo);
                self.offset += lo as i64;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the first stored (hence nonzero) coefficient.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Value at index `j`; zero outside the stored block.
    pub fn value(&self, j: i64) -> Complex<T> {
        let i = j - self.offset;
        if i >= 0 && (i as usize) < self.coeffs.len() {
            self.coeffs[i as usize]
        } else {
            Complex::zero()
        }
    }

    pub fn support_min(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    pub fn support_max(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.offset + self.coeffs.len() as i64 - 1)
    }

    /// Support-window length: last nonzero index minus first, plus one.
    /// Interior zeros count. Zero for the zero sequence.
    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Number of coefficients with nonzero modulus, exactly as stored.
    pub fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn norm_sqr(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr())
    }

    pub fn norm(&self) -> T {
        Float::sqrt(self.norm_sqr())
    }

    /// Iterates over stored `(index, coefficient)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex<T>)> + '_ {
        self.coeffs.iter().enumerate().map(move |(i, &c)| (self.offset + i as i64, c))
    }

    /// `sum_j self(j) * conj(other(j))` over the finite support intersection.
    pub fn inner_product(&self, other: &Self) -> Complex<T> {
        if self.is_zero() || other.is_zero() {
            return Complex::zero();
        }
        let lo = self.offset.max(other.offset);
        let hi = self.support_max().unwrap().min(other.support_max().unwrap());
        let mut acc = Complex::zero();
        let mut j = lo;
        while j <= hi {
            acc += self.value(j) * other.value(j).conj();
            j += 1;
        }
        acc
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        Self::new(self.offset, self.coeffs.iter().map(|&x| x * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(other.offset);
        let hi = self.support_max().unwrap().max(other.support_max().unwrap());
        let coeffs = (lo..=hi).map(|j| self.value(j) + other.value(j)).collect();
        Self::new(lo, coeffs)
    }

    /// Coefficient-wise comparison with absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        if self.is_zero() && other.is_zero() {
            return true;
        }
        let lo = match (self.support_min(), other.support_min()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => return true,
        };
        let hi = self
            .support_max()
            .into_iter()
            .chain(other.support_max())
            .max()
            .unwrap();
        (lo..=hi).all(|j| (self.value(j) - other.value(j)).norm() <= tol)
    }
}

/// `e^{2 pi i numer / denom}` with the argument reduced to `[0, denom)`
/// before the transcendental call, so exact phase identities (combs,
/// periodicity in the modulation index) hold to machine precision.
pub fn unit_root<T: Scalar>(numer: i64, denom: u32) -> Complex<T> {
    let d = denom as i64;
    let r = numer.rem_euclid(d);
    if r == 0 {
        return Complex::one();
    }
    if 2 * r == d {
        return -Complex::<T>::one();
    }
    let theta = T::of(2.0) * T::PI() * T::of_i64(r) / T::of_i64(d);
    Complex::from_polar(T::one(), theta)
}

/// Modulation: `result(j) = e^{2 pi i j m / M} g(j)`. `m` is reduced mod `M`.
pub fn modulate<T: Scalar>(g: &FiniteSequence<T>, m: i64, modulation_count: u32) -> FiniteSequence<T> {
    let m = m.rem_euclid(modulation_count as i64);
    let coeffs = g
        .iter()
        .map(|(j, c)| c * unit_root::<T>(j * m, modulation_count))
        .collect();
    FiniteSequence::new(g.offset(), coeffs)
}

/// Translation: `result(j) = g(j - n)`.
pub fn translate<T: Scalar>(g: &FiniteSequence<T>, n: i64) -> FiniteSequence<T> {
    FiniteSequence::new(g.offset() + n, g.coeffs().to_vec())
}

/// Index `(m, n)` of a Gabor system element, `0 <= m < M`, `n` unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LatticeIndex {
    pub m: u32,
    pub n: i64,
}

/// A window together with lattice parameters: modulation step `1/M`,
/// translation step `N`.
#[derive(Clone, Debug)]
pub struct GaborSystem<T> {
    pub window: FiniteSequence<T>,
    /// `M`: number of modulations, step `1/M`.
    pub modulation_count: u32,
    /// `N`: translation step.
    pub translation_step: u32,
}

impl<T: Scalar> GaborSystem<T> {
    pub fn new(window: FiniteSequence<T>, modulation_count: u32, translation_step: u32) -> Self {
        assert!(modulation_count >= 1 && translation_step >= 1, "lattice parameters must be positive");
        Self { window, modulation_count, translation_step }
    }

    /// The system with `M` and `N` swapped, same window. Used by the
    /// duality principle.
    pub fn adjoint(&self) -> Self {
        Self {
            window: self.window.clone(),
            modulation_count: self.translation_step,
            translation_step: self.modulation_count,
        }
    }

    /// The element `E_{m/M} T_{nN} g`, i.e. `j -> e^{2 pi i j m / M} g(j - nN)`.
    pub fn element(&self, idx: LatticeIndex) -> Result<FiniteSequence<T>> {
        if idx.m >= self.modulation_count {
            return Err(GaborError::ModulationOutOfRange {
                m: idx.m as i64,
                modulation_count: self.modulation_count,
            });
        }
        let shifted = translate(&self.window, idx.n * self.translation_step as i64);
        Ok(modulate(&shifted, idx.m as i64, self.modulation_count))
    }
}

/// `E_{m/M} T_{nN} g`; free-function form of [`GaborSystem::element`].
pub fn gabor_element<T: Scalar>(
    sys: &GaborSystem<T>,
    idx: LatticeIndex,
) -> Result<FiniteSequence<T>> {
    sys.element(idx)
}

/// Synthesis matrix of a finite sub-system: one column per element, rows
/// covering the joint support. Column enumeration is n-major (outer loop
/// over `n`, inner over `m`); certificates record this order.
#[derive(Clone, Debug)]
pub struct SynthesisMatrix<T> {
    pub matrix: nalgebra::DMatrix<Complex<T>>,
    /// Integer index represented by matrix row 0.
    pub row_start: i64,
    pub columns: Vec<LatticeIndex>,
}

pub fn synthesis_matrix<T: Scalar>(
    sys: &GaborSystem<T>,
    n_lo: i64,
    n_hi: i64,
) -> Result<SynthesisMatrix<T>> {
    if sys.window.is_zero() {
        return Err(GaborError::ZeroWindow);
    }
    if n_lo > n_hi {
        return Err(GaborError::EmptyRange { n_lo, n_hi });
    }
    let step = sys.translation_step as i64;
    let row_start = sys.window.support_min().unwrap() + n_lo * step;
    let row_end = sys.window.support_max().unwrap() + n_hi * step;
    let rows = (row_end - row_start + 1) as usize;

    let mut columns = Vec::with_capacity(((n_hi - n_lo + 1) as usize) * sys.modulation_count as usize);
    for n in n_lo..=n_hi {
        for m in 0..sys.modulation_count {
            columns.push(LatticeIndex { m, n });
        }
    }

    let mut matrix = nalgebra::DMatrix::<Complex<T>>::zeros(rows, columns.len());
    for (col, idx) in columns.iter().enumerate() {
        let elem = sys.element(*idx)?;
        for (j, c) in elem.iter() {
            matrix[((j - row_start) as usize, col)] = c;
        }
    }
    Ok(SynthesisMatrix { matrix, row_start, columns })
}

impl<T: Scalar + Serialize> Serialize for FiniteSequence<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct CoeffList<'a, T>(&'a [Complex<T>]);
        impl<T: Scalar + Serialize> Serialize for CoeffList<'_, T> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for c in self.0 {
                    seq.serialize_element(&[c.re, c.im])?;
                }
                seq.end()
            }
        }
        let mut s = serializer.serialize_struct("FiniteSequence", 2)?;
        s.serialize_field("offset", &self.offset)?;
        s.serialize_field("coeffs", &CoeffList(&self.coeffs))?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Seq = FiniteSequence<f64>;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn trimming_is_idempotent_and_preserves_values() {
        let raw = Seq::new(-2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(raw.offset(), -1);
        assert_eq!(raw.support_len(), 3);
        assert_eq!(raw.value(-1), c(1.0, 0.0));
        assert_eq!(raw.value(1), c(2.0, 0.0));
        assert_eq!(raw.value(0), c(0.0, 0.0));
        let again = Seq::new(raw.offset(), raw.coeffs().to_vec());
        assert_eq!(raw, again);
    }

    #[test]
    fn zero_sequence_is_canonical() {
        let z = Seq::new(17, vec![c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(z.is_zero());
        assert_eq!(z, Seq::zero());
        assert_eq!(z.support_size(), 0);
        assert_eq!(z.support_len(), 0);
    }

    #[test]
    fn support_size_counts_nonzero_only() {
        let g = Seq::new(1, vec![c(1.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)]);
        assert_eq!(g.support_size(), 2);
        assert_eq!(g.support_len(), 3);
    }

    #[test]
    fn modulate_delta_at_origin_is_identity() {
        // phase at j = 0 is 1
        let g = Seq::delta(0);
        assert_eq!(modulate(&g, 1, 4), g);
    }

    #[test]
    fn modulate_delta_one_half_turn() {
        // e^{pi i} = -1
        let g = Seq::delta(1);
        let out = modulate(&g, 1, 2);
        assert_eq!(out.value(1), c(-1.0, 0.0));
    }

    #[test]
    fn modulation_fixes_comb_supported_sequences() {
        let g = Seq::delta(2).add(&Seq::delta(4));
        assert_eq!(modulate(&g, 1, 2), g);
    }

    #[test]
    fn translate_deltas() {
        assert_eq!(translate(&Seq::delta(0), 3), Seq::delta(3));
        assert_eq!(translate(&Seq::delta(5), -5), Seq::delta(0));
    }

    #[test]
    fn translate_shifts_support() {
        let n = 4i64;
        let g = Seq::from_real(1, &[1.0, 2.0, 3.0, 4.0]);
        let shifted = translate(&g, n);
        assert_eq!(shifted.support_min(), Some(1 + n));
        assert_eq!(shifted.support_max(), Some(2 * n));
        assert_eq!(shifted.support_size(), g.support_size());
        assert!((shifted.norm() - g.norm()).abs() < 1e-15);
    }

    #[test]
    fn gabor_element_matches_phase_by_hand() {
        // (delta_0, M = 2, N = 1), (m = 1, n = 2): value at j = 2 is
        // e^{2 pi i * 2 / 2} = 1, so the element is delta_2.
        let sys = GaborSystem::new(Seq::delta(0), 2, 1);
        let e = sys.element(LatticeIndex { m: 1, n: 2 }).unwrap();
        assert_eq!(e, Seq::delta(2));
        let e0 = sys.element(LatticeIndex { m: 0, n: 2 }).unwrap();
        assert_eq!(e0, Seq::delta(2));
    }

    #[test]
    fn element_rejects_out_of_range_modulation() {
        let sys = GaborSystem::new(Seq::delta(0), 2, 1);
        assert!(sys.element(LatticeIndex { m: 2, n: 0 }).is_err());
    }

    #[test]
    fn commutation_scalar() {
        // T_n E_m = e^{-2 pi i n m / M} E_m T_n
        let g = Seq::new(-1, vec![c(0.3, -0.2), c(1.5, 0.7), c(-0.4, 0.9)]);
        let (m, modulation_count, n) = (2i64, 5u32, 3i64);
        let a = translate(&modulate(&g, m, modulation_count), n);
        let b = modulate(&translate(&g, n), m, modulation_count)
            .scaled(unit_root::<f64>(-n * m, modulation_count));
        assert!(a.approx_eq(&b, 1e-14));
    }

    #[test]
    fn inner_products() {
        assert_eq!(Seq::delta(0).inner_product(&Seq::delta(0)), c(1.0, 0.0));
        assert_eq!(Seq::delta(0).inner_product(&Seq::delta(1)), c(0.0, 0.0));
        let g = Seq::new(0, vec![c(1.0, 2.0), c(-3.0, 0.5)]);
        let ip = g.inner_product(&g);
        assert!(ip.im.abs() < 1e-15);
        assert!((ip.re - g.norm_sqr()).abs() < 1e-13);
    }

    #[test]
    fn synthesis_identity_for_impulse_basis() {
        let sys = GaborSystem::new(Seq::delta(0), 1, 1);
        let s = synthesis_matrix(&sys, 0, 2).unwrap();
        assert_eq!(s.matrix.nrows(), 3);
        assert_eq!(s.matrix.ncols(), 3);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) };
                assert_eq!(s.matrix[(i, j)], expect);
            }
        }
    }

    #[test]
    fn synthesis_dimension_count() {
        // g = delta_1 + delta_2, M = 2, N = 1, n in [0, 1]:
        // 4 columns in 3 rows (j = 1..3), more columns than rows.
        let g = Seq::from_real(1, &[1.0, 1.0]);
        let sys = GaborSystem::new(g, 2, 1);
        let s = synthesis_matrix(&sys, 0, 1).unwrap();
        assert_eq!(s.matrix.nrows(), 3);
        assert_eq!(s.matrix.ncols(), 4);
        assert_eq!(s.row_start, 1);
    }

    #[test]
    fn synthesis_columns_reproduce_elements_and_norms() {
        let g = Seq::new(2, vec![c(0.5, 1.0), c(-1.0, 0.25), c(2.0, -0.5)]);
        let sys = GaborSystem::new(g.clone(), 3, 2);
        let s = synthesis_matrix(&sys, -1, 2).unwrap();
        for (col, idx) in s.columns.iter().enumerate() {
            let elem = sys.element(*idx).unwrap();
            let mut norm_sqr = 0.0;
            for r in 0..s.matrix.nrows() {
                let v = s.matrix[(r, col)];
                assert_eq!(v, elem.value(s.row_start + r as i64));
                norm_sqr += v.norm_sqr();
            }
            assert!((norm_sqr.sqrt() - g.norm()).abs() < 1e-13);
        }
    }

    #[test]
    fn synthesis_rejects_zero_window() {
        let sys = GaborSystem::new(Seq::zero(), 2, 1);
        assert!(matches!(synthesis_matrix(&sys, 0, 1), Err(GaborError::ZeroWindow)));
    }

    #[test]
    fn modulation_periodicity_is_exact() {
        let g = Seq::new(-3, vec![c(1.0, -2.0), c(0.5, 0.5), c(-0.25, 1.0)]);
        for m in 0..7i64 {
            assert_eq!(modulate(&g, m + 7, 7), modulate(&g, m, 7));
        }
    }
}
