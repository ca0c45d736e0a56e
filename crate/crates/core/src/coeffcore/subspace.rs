use super::field::PrimeField;
use super::linalg::Echelon;
use super::series::{convolve_into, TruncatedSeries};
use crate::error::{Error, Result};

/// A k-linear subspace of k[t]/(t^N) in canonical echelon form.
///
/// Row orders are strictly increasing, every leading coefficient is 1 and each
/// leading position is cleared from all other rows, so equal subspaces compare
/// equal row for row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ech: Echelon,
}

impl Subspace {
    pub fn zero(field: PrimeField, trunc: usize) -> Self {
        Subspace {
            ech: Echelon::new(field, trunc),
        }
    }

    pub(crate) fn from_echelon(ech: Echelon) -> Self {
        Subspace { ech }
    }

    pub fn field(&self) -> PrimeField {
        self.ech.field()
    }

    pub fn trunc(&self) -> usize {
        self.ech.width()
    }

    pub fn dim(&self) -> usize {
        self.ech.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Leading orders of the rows, strictly increasing.
    pub fn orders(&self) -> &[usize] {
        self.ech.pivots()
    }

    pub fn rows(&self) -> impl Iterator<Item = TruncatedSeries> + '_ {
        let f = self.field();
        self.ech
            .rows()
            .iter()
            .map(move |r| TruncatedSeries::from_reduced(f, r.clone()))
    }

    pub(crate) fn raw_rows(&self) -> &[Vec<u32>] {
        self.ech.rows()
    }

    fn check(&self, s: &TruncatedSeries) -> Result<()> {
        if s.field() != self.field() || s.trunc() != self.trunc() {
            return Err(Error::Config(format!(
                "series over F_{} mod t^{} does not live in subspace over F_{} mod t^{}",
                s.field().modulus(),
                s.trunc(),
                self.field().modulus(),
                self.trunc()
            )));
        }
        Ok(())
    }

    /// Remainder of `s` after eliminating all leading positions.
    pub fn reduce(&self, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(s)?;
        let mut v = s.coeffs().to_vec();
        self.ech.reduce(&mut v);
        Ok(TruncatedSeries::from_reduced(self.field(), v))
    }

    pub fn contains(&self, s: &TruncatedSeries) -> Result<bool> {
        Ok(self.reduce(s)?.is_zero())
    }

    /// Subspace spanned by `self` and `other`.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        if other.field() != self.field() || other.trunc() != self.trunc() {
            return Err(Error::Config(
                "subspace join across different ambients".into(),
            ));
        }
        let mut ech = self.ech.clone();
        for r in other.ech.rows() {
            ech.insert(r.clone());
        }
        Ok(Subspace { ech })
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        for r in self.rows() {
            if !other.contains(&r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Canonical echelon basis of the span of `gens` inside k[t]/(t^trunc).
pub fn echelonize(field: PrimeField, trunc: usize, gens: &[TruncatedSeries]) -> Result<Subspace> {
    let mut ech = Echelon::new(field, trunc);
    for g in gens {
        if g.field() != field || g.trunc() != trunc {
            return Err(Error::Config(format!(
                "generator over F_{} mod t^{} in ambient F_{} mod t^{}",
                g.field().modulus(),
                g.trunc(),
                field.modulus(),
                trunc
            )));
        }
        ech.insert(g.coeffs().to_vec());
    }
    Ok(Subspace { ech })
}

/// Least subspace containing `seed` and stable under multiplication by every multiplier.
///
/// Fixpoint iteration; terminates since the dimension is bounded by N.
pub fn module_closure(seed: &Subspace, multipliers: &[TruncatedSeries]) -> Result<Subspace> {
    let f = seed.field();
    let n = seed.trunc();
    for m in multipliers {
        seed.check(m)?;
    }
    let mut ech = seed.ech.clone();
    let mut frontier: Vec<Vec<u32>> = ech.rows().to_vec();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for m in multipliers {
                let mut prod = vec![0u32; n];
                convolve_into(f, v, m.coeffs(), &mut prod);
                let mut probe = prod.clone();
                ech.reduce(&mut probe);
                if probe.iter().any(|&c| c != 0) && ech.insert(prod.clone()) {
                    next.push(prod);
                }
            }
        }
        frontier = next;
    }
    Ok(Subspace { ech })
}
