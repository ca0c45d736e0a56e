use std::fmt;

use super::field::PrimeField;
use crate::error::{Error, Result};

/// An element of k[t]/(t^N) over a prime field, stored densely.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TruncatedSeries {
    field: PrimeField,
    coeffs: Vec<u32>,
}

impl TruncatedSeries {
    /// Builds a series from raw (possibly unreduced) coefficients; the length is N.
    pub fn new(field: PrimeField, coeffs: impl IntoIterator<Item = i64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| field.reduce(c)).collect();
        TruncatedSeries { field, coeffs }
    }

    pub(crate) fn from_reduced(field: PrimeField, coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < field.modulus()));
        TruncatedSeries { field, coeffs }
    }

    pub fn zero(field: PrimeField, trunc: usize) -> Self {
        TruncatedSeries {
            field,
            coeffs: vec![0; trunc],
        }
    }

    pub fn one(field: PrimeField, trunc: usize) -> Self {
        Self::monomial(field, trunc, 0, 1)
    }

    /// `coeff * t^exp`, which is zero when `exp >= trunc`.
    pub fn monomial(field: PrimeField, trunc: usize, exp: usize, coeff: i64) -> Self {
        let mut s = Self::zero(field, trunc);
        if exp < trunc {
            s.coeffs[exp] = field.reduce(coeff);
        }
        s
    }

    /// Builds a series from `(exponent, coefficient)` terms; terms at or beyond `trunc` vanish.
    pub fn from_terms(field: PrimeField, trunc: usize, terms: &[(usize, i64)]) -> Self {
        let mut s = Self::zero(field, trunc);
        for &(e, c) in terms {
            if e < trunc {
                s.coeffs[e] = field.add(s.coeffs[e], field.reduce(c));
            }
        }
        s
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// The truncation level N.
    #[inline]
    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    #[inline]
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Least exponent with a nonzero coefficient; `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.order().is_none()
    }

    pub fn leading_coeff(&self) -> Option<u32> {
        self.order().map(|i| self.coeffs[i])
    }

    /// Nonzero terms as `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Config(format!(
                "field mismatch: F_{} vs F_{}",
                self.field.modulus(),
                other.field.modulus()
            )));
        }
        if self.trunc() != other.trunc() {
            return Err(Error::Config(format!(
                "truncation mismatch: {} vs {}",
                self.trunc(),
                other.trunc()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(TruncatedSeries { field: f, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(TruncatedSeries { field: f, coeffs })
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        TruncatedSeries {
            field: f,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Truncated product (coefficient convolution cut at N).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.trunc();
        let mut out = vec![0u32; n];
        convolve_into(self.field, &self.coeffs, &other.coeffs, &mut out);
        Ok(TruncatedSeries {
            field: self.field,
            coeffs: out,
        })
    }

    /// Multiplication by `t^k`, dropping terms that overflow N.
    pub fn shifted_up(&self, k: usize) -> Self {
        let n = self.trunc();
        let mut coeffs = vec![0; n];
        if k < n {
            coeffs[k..].copy_from_slice(&self.coeffs[..n - k]);
        }
        TruncatedSeries {
            field: self.field,
            coeffs,
        }
    }

    /// Same series at a different truncation level (cut or zero-padded).
    pub fn resized(&self, trunc: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(trunc, 0);
        TruncatedSeries {
            field: self.field,
            coeffs,
        }
    }

    /// Inverse of a unit (nonzero constant term) modulo t^N.
    pub fn unit_inverse(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0 == 0 {
            return Err(Error::Domain(
                "series with zero constant term is not a unit".into(),
            ));
        }
        Ok(TruncatedSeries {
            field: self.field,
            coeffs: unit_inverse_coeffs(self.field, &self.coeffs, self.trunc()),
        })
    }
}

/// `out += a * b`, truncated to `out.len()`.
pub(crate) fn convolve_into(f: PrimeField, a: &[u32], b: &[u32], out: &mut [u32]) {
    let n = out.len();
    let p = f.modulus() as u64;
    let mut acc = vec![0u64; n];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 || i >= n {
            continue;
        }
        let ai = ai as u64;
        for (j, &bj) in b.iter().enumerate().take(n - i) {
            if bj != 0 {
                acc[i + j] += ai * bj as u64;
            }
        }
        // keep accumulators bounded
        if i % 1024 == 1023 {
            acc.iter_mut().for_each(|x| *x %= p);
        }
    }
    for (o, x) in out.iter_mut().zip(acc) {
        *o = ((*o as u64 + x) % p) as u32;
    }
}

/// Inverse of a power series with nonzero constant term, to `n` coefficients.
pub(crate) fn unit_inverse_coeffs(f: PrimeField, u: &[u32], n: usize) -> Vec<u32> {
    let c0 = u.first().copied().unwrap_or(0);
    assert!(c0 != 0, "unit_inverse of a non-unit");
    let inv0 = f.inv(c0);
    let mut out = vec![0u32; n];
    if n == 0 {
        return out;
    }
    out[0] = inv0;
    for k in 1..n {
        let mut s = 0u32;
        for j in 1..=k.min(u.len().saturating_sub(1)) {
            if u[j] != 0 && out[k - j] != 0 {
                s = f.add(s, f.mul(u[j], out[k - j]));
            }
        }
        out[k] = f.mul(f.neg(s), inv0);
    }
    out
}

/// Free function form of [`TruncatedSeries::mul`].
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.mul(b)
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().map(|(e, c)| (e as i64, c)))
    }
}

/// Renders terms in the `parse_series` grammar (`t^e`, `c*t^e`, constants).
pub(crate) fn write_terms(
    f: &mut impl fmt::Write,
    terms: impl Iterator<Item = (i64, u32)>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        match (e, c) {
            (0, c) => write!(f, "{c}")?,
            (e, 1) => write!(f, "t^{e}")?,
            (e, c) => write!(f, "{c}*t^{e}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn monomial_product() {
        let k = f(3);
        let a = TruncatedSeries::monomial(k, 20, 3, 1);
        let b = TruncatedSeries::monomial(k, 20, 7, 1);
        assert_eq!(a.mul(&b).unwrap(), TruncatedSeries::monomial(k, 20, 10, 1));
    }

    #[test]
    fn characteristic_two_square() {
        let k = f(2);
        let a = TruncatedSeries::from_terms(k, 8, &[(0, 1), (1, 1)]);
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq, TruncatedSeries::from_terms(k, 8, &[(0, 1), (2, 1)]));
    }

    #[test]
    fn truncation_boundary() {
        let k = f(5);
        let n = 12;
        let a = TruncatedSeries::monomial(k, n, n - 1, 1);
        let b = TruncatedSeries::monomial(k, n, 1, 1);
        assert!(a.mul(&b).unwrap().is_zero());
    }

    #[test]
    fn mismatched_truncation_is_config_error() {
        let k = f(5);
        let a = TruncatedSeries::one(k, 4);
        let b = TruncatedSeries::one(k, 5);
        assert!(matches!(a.mul(&b), Err(Error::Config(_))));
        let c = TruncatedSeries::one(f(3), 4);
        assert!(matches!(a.mul(&c), Err(Error::Config(_))));
    }

    #[test]
    fn unit_inverse_roundtrip() {
        let k = f(7);
        let u = TruncatedSeries::from_terms(k, 15, &[(0, 3), (2, 5), (7, 1)]);
        let v = u.unit_inverse().unwrap();
        assert_eq!(u.mul(&v).unwrap(), TruncatedSeries::one(k, 15));
    }

    #[test]
    fn display_uses_grammar() {
        let k = f(5);
        let s = TruncatedSeries::from_terms(k, 10, &[(6, 1), (7, -1)]);
        assert_eq!(s.to_string(), "t^6 + 4*t^7");
    }
}
