use crate::coeffcore::{
    convolve_into, unit_inverse_coeffs, write_terms, PrimeField, TruncatedSeries,
};
use crate::error::{Error, Result};

/// An exact Laurent polynomial `sum coeffs[i] t^(lo + i)`.
///
/// Elements picked out of echelon bases (reductions, colon witnesses, factors)
/// are genuine members of their lattice, so they are carried exactly rather
/// than modulo t^N.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Elem {
    lo: i64,
    coeffs: Vec<u32>,
}

impl Elem {
    pub(crate) fn new(lo: i64, coeffs: Vec<u32>) -> Self {
        Elem { lo, coeffs }.trimmed()
    }

    pub fn zero() -> Self {
        Elem {
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn monomial(exp: i64, coeff: u32) -> Self {
        Elem::new(exp, vec![coeff])
    }

    pub fn from_series(s: &TruncatedSeries) -> Self {
        Elem::new(0, s.coeffs().to_vec())
    }

    fn trimmed(mut self) -> Self {
        let Some(first) = self.coeffs.iter().position(|&c| c != 0) else {
            return Elem::zero();
        };
        let last = self.coeffs.iter().rposition(|&c| c != 0).unwrap();
        self.coeffs.truncate(last + 1);
        self.coeffs.drain(..first);
        self.lo += first as i64;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent of the lowest term.
    pub fn order(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    /// One past the highest exponent.
    pub fn end(&self) -> i64 {
        self.lo + self.coeffs.len() as i64
    }

    pub fn leading_coeff(&self) -> Option<u32> {
        self.coeffs.first().copied()
    }

    pub fn coeff(&self, exp: i64) -> u32 {
        if exp < self.lo {
            return 0;
        }
        self.coeffs
            .get((exp - self.lo) as usize)
            .copied()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.lo + i as i64, c))
    }

    /// Coefficients of the exponents `lo..hi`.
    pub(crate) fn window(&self, lo: i64, hi: i64) -> Vec<u32> {
        (lo..hi).map(|e| self.coeff(e)).collect()
    }

    pub fn mul(&self, other: &Elem, field: PrimeField) -> Elem {
        if self.is_zero() || other.is_zero() {
            return Elem::zero();
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        convolve_into(field, &self.coeffs, &other.coeffs, &mut out);
        Elem::new(self.lo + other.lo, out)
    }

    pub fn scale(&self, c: u32, field: PrimeField) -> Elem {
        Elem::new(
            self.lo,
            self.coeffs.iter().map(|&a| field.mul(a, c)).collect(),
        )
    }

    pub fn add(&self, other: &Elem, field: PrimeField) -> Elem {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.end().max(other.end());
        Elem::new(
            lo,
            (lo..hi)
                .map(|e| field.add(self.coeff(e), other.coeff(e)))
                .collect(),
        )
    }

    /// Leading coefficient scaled to 1.
    pub fn monic(&self, field: PrimeField) -> Elem {
        match self.leading_coeff() {
            Some(c) if c != 1 => self.scale(field.inv(c), field),
            _ => self.clone(),
        }
    }

    /// The unit part `self / t^order`, as a power series known to `len` terms.
    pub(crate) fn unit_part(&self, len: usize) -> Vec<u32> {
        let mut u = self.coeffs.clone();
        u.resize(len, 0);
        u
    }

    /// Inverse of the unit part to `len` terms.
    pub(crate) fn unit_part_inverse(&self, field: PrimeField, len: usize) -> Vec<u32> {
        unit_inverse_coeffs(field, &self.coeffs, len)
    }

    pub fn to_series(&self, field: PrimeField, trunc: usize) -> Result<TruncatedSeries> {
        if self.lo < 0 && !self.is_zero() {
            return Err(Error::Domain(format!(
                "element of order {} is not a power series",
                self.lo
            )));
        }
        let mut v = vec![0u32; trunc];
        for (e, c) in self.terms() {
            if (e as usize) < trunc {
                v[e as usize] = c;
            }
        }
        Ok(TruncatedSeries::from_reduced(field, v))
    }
}

impl std::fmt::Display for Elem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write_terms(f, self.terms())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_orders() {
        let e = Elem::new(-2, vec![0, 0, 3, 0, 1, 0]);
        assert_eq!(e.order(), Some(0));
        assert_eq!(e.end(), 3);
        assert_eq!(e.coeff(2), 1);
        assert!(Elem::new(5, vec![0, 0]).is_zero());
    }

    #[test]
    fn product_of_laurent() {
        let f = PrimeField::new(3).unwrap();
        let a = Elem::new(-1, vec![1, 1]);
        let b = Elem::new(2, vec![1, 2]);
        // (t^-1 + 1)(t^2 + 2t^3) = t + 2t^2 + t^2 + 2t^3 = t + 0 t^2 + 2 t^3
        let p = a.mul(&b, f);
        assert_eq!(p.terms().collect::<Vec<_>>(), vec![(1, 1), (3, 2)]);
    }
}
