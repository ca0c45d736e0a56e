use super::elem::Elem;
use super::lattice::{fit, FractionalIdeal};
use crate::coeffcore::{echelonize, module_closure, PrimeField, TruncatedSeries};
use crate::error::{Error, Result};
use crate::semigroup::{gcd_all, NumericalSemigroup};

/// Largest truncation the automatic precision raise will pick.
pub const MAX_TRUNC: usize = 4096;

/// A local ring k ⊆ R ⊆ k[[t]] with k[[t]] as its normalization.
///
/// The carrier is stored exactly as a lattice (it contains t^c k[[t]] for its
/// conductor c); `trunc` is the working precision N that bounds every window
/// an operation may touch.
#[derive(Clone, Debug)]
pub struct LocalRing {
    field: PrimeField,
    trunc: usize,
    carrier: FractionalIdeal,
    maximal: FractionalIdeal,
    max_gens: Vec<Elem>,
    value_semigroup: NumericalSemigroup,
    monomial: bool,
}

impl PartialEq for LocalRing {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier
    }
}

impl Eq for LocalRing {}

/// Default working precision for conductor `c`.
pub fn default_trunc(conductor: u64) -> usize {
    4 * (conductor as usize + 1)
}

impl LocalRing {
    /// The complete subalgebra k[[gens]] of k[[t]], as `ring_from_spec` describes.
    ///
    /// `trunc = None` picks the default precision; a requested precision below
    /// the default is raised to it.
    pub fn from_generators(
        field: PrimeField,
        gens: &[TruncatedSeries],
        trunc: Option<usize>,
    ) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Domain("a ring needs at least one generator".into()));
        }
        let mut orders = Vec::with_capacity(gens.len());
        for g in gens {
            if g.field() != field {
                return Err(Error::Config("generator over a different field".into()));
            }
            match g.order() {
                Some(o) if o >= 1 => orders.push(o as u64),
                Some(_) => {
                    return Err(Error::Domain("ring generators must have order >= 1".into()))
                }
                None => return Err(Error::Domain("zero ring generator".into())),
            }
        }
        let gens: Vec<Elem> = gens.iter().map(Elem::from_series).collect();
        let g = gcd_all(orders.iter().copied());
        // conductor of the semigroup generated by the orders bounds that of R
        let mut n = if g == 1 {
            default_trunc(NumericalSemigroup::new(&orders)?.conductor())
        } else {
            256
        };
        loop {
            let (carrier_rows, values) = closure_rows(field, &gens, n)?;
            let vg = gcd_all(values.iter().copied().filter(|&v| v > 0));
            if vg != 1 {
                return Err(Error::NotNormalizedByPowerSeries(if g != 1 {
                    g
                } else {
                    vg
                }));
            }
            // conductor read off the window; trusted once it sits well below n
            let mut c = n as u64;
            while c > 0 && values.binary_search(&(c - 1)).is_ok() {
                c -= 1;
            }
            if g != 1 && 2 * c as usize >= n {
                if n >= MAX_TRUNC {
                    return Err(Error::NotNormalizedByPowerSeries(g));
                }
                n *= 2;
                continue;
            }
            let carrier = FractionalIdeal::from_window(
                field,
                0,
                c as i64,
                carrier_rows.into_iter().map(|mut r| {
                    r.truncate(c as usize);
                    r
                }),
            );
            let want = trunc.unwrap_or(0).max(default_trunc(c));
            return LocalRing::from_carrier(carrier, want);
        }
    }

    /// Semigroup ring k[[t^h : h ∈ gens]].
    pub fn monomial(
        field: PrimeField,
        semigroup_gens: &[u64],
        trunc: Option<usize>,
    ) -> Result<Self> {
        let h = NumericalSemigroup::new(semigroup_gens)?;
        let n = trunc.unwrap_or(0).max(default_trunc(h.conductor()));
        let gens: Vec<TruncatedSeries> = h
            .generators()
            .iter()
            .map(|&g| TruncatedSeries::monomial(field, n, g as usize, 1))
            .collect();
        Self::from_generators(field, &gens, Some(n))
    }

    /// Re-wraps a lattice R ⊆ A ⊆ k[[t]] as a local ring, verifying it is one.
    pub fn from_carrier(carrier: FractionalIdeal, trunc: usize) -> Result<Self> {
        let field = carrier.field();
        if carrier.order() != 0 || !carrier.contains_elem(&Elem::monomial(0, 1)) {
            return Err(Error::InvariantViolation(format!(
                "candidate ring {carrier} does not contain 1 or has negative orders"
            )));
        }
        fit(trunc, 0, 2 * carrier.conductor().max(1))?;
        let c = carrier.conductor();
        let maximal =
            FractionalIdeal::from_window(field, 1, c.max(1), carrier.basis_window(1, c.max(1)));
        // closure under products, checked through a k-basis
        let square = carrier.product_kbasis(&carrier, trunc)?;
        if square != carrier {
            return Err(Error::InvariantViolation(format!(
                "candidate ring {carrier} is not closed under multiplication (watermark too low?)"
            )));
        }
        let m2 = maximal.product_kbasis(&maximal, trunc)?;
        let max_gens = complement_gens(&maximal, &m2);
        let values: Vec<u64> = carrier
            .values_below_conductor()
            .into_iter()
            .filter(|&v| v > 0)
            .map(|v| v as u64)
            .chain((c.max(1) as u64)..(2 * c.max(1) as u64 + 1))
            .collect();
        let value_semigroup = NumericalSemigroup::new(&values)?;
        let monomial = carrier.row_elems().iter().all(|r| r.terms().count() == 1);
        Ok(LocalRing {
            field,
            trunc,
            carrier,
            maximal,
            max_gens,
            value_semigroup,
            monomial,
        })
    }

    /// Same ring at a different working precision.
    pub fn with_trunc(&self, trunc: usize) -> Result<Self> {
        fit(trunc, 0, 2 * self.conductor_order().max(1) as i64)?;
        let mut r = self.clone();
        r.trunc = trunc;
        Ok(r)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// The ring itself as a fractional ideal.
    pub fn carrier(&self) -> &FractionalIdeal {
        &self.carrier
    }

    pub fn maximal_ideal(&self) -> &FractionalIdeal {
        &self.maximal
    }

    /// Minimal generators of the maximal ideal.
    pub fn max_ideal_generators(&self) -> &[Elem] {
        &self.max_gens
    }

    pub fn value_semigroup(&self) -> &NumericalSemigroup {
        &self.value_semigroup
    }

    /// Least c with t^c k[[t]] ⊆ R.
    pub fn conductor_order(&self) -> u64 {
        self.carrier.conductor() as u64
    }

    pub fn is_monomial(&self) -> bool {
        self.monomial
    }

    /// Multiplicity: least positive value.
    pub fn multiplicity(&self) -> u64 {
        self.maximal.order() as u64
    }

    pub fn embedding_dimension(&self) -> usize {
        self.max_gens.len()
    }

    pub fn one(&self) -> Elem {
        Elem::monomial(0, 1)
    }

    pub fn series(&self, e: &Elem) -> Result<TruncatedSeries> {
        e.to_series(self.field, self.trunc)
    }

    /// Ideal (fractional when generators have negative order) generated over R.
    pub fn ideal(&self, gens: &[Elem]) -> Result<FractionalIdeal> {
        self.carrier.times_elems(gens, self.trunc)
    }

    pub fn ideal_from_series(&self, gens: &[TruncatedSeries]) -> Result<FractionalIdeal> {
        let gens: Vec<Elem> = gens.iter().map(Elem::from_series).collect();
        self.ideal(&gens)
    }

    /// Whether `I` is an R-submodule of k((t)).
    pub fn is_module(&self, i: &FractionalIdeal) -> Result<bool> {
        Ok(i.times_elems(&self.max_gens, self.trunc)?.is_subset_of(i))
    }

    /// m·I.
    pub fn max_times(&self, i: &FractionalIdeal) -> Result<FractionalIdeal> {
        if self.max_gens.is_empty() {
            // R = k[[t]] without generators cannot occur; keep the product honest
            return i.times_elems(&[Elem::monomial(1, 1)], self.trunc);
        }
        i.times_elems(&self.max_gens, self.trunc)
    }

    /// A minimal generating set of `I` over R, as exact elements.
    pub fn minimal_generators(&self, i: &FractionalIdeal) -> Result<Vec<Elem>> {
        let mi = self.max_times(i)?;
        Ok(complement_gens(i, &mi))
    }

    /// μ_R(I).
    pub fn mu(&self, i: &FractionalIdeal) -> Result<usize> {
        self.max_times(i)?.colength_in(i)
    }

    pub fn sum(&self, a: &FractionalIdeal, b: &FractionalIdeal) -> FractionalIdeal {
        a.sum(b)
    }

    pub fn product(&self, a: &FractionalIdeal, b: &FractionalIdeal) -> Result<FractionalIdeal> {
        let gens = self.minimal_generators(a)?;
        b.times_elems(&gens, self.trunc)
    }

    /// `A : B = {x : xB ⊆ A}` for R-modules A, B.
    pub fn colon(&self, a: &FractionalIdeal, b: &FractionalIdeal) -> Result<FractionalIdeal> {
        let gens = self.minimal_generators(b)?;
        a.colon_gens(&gens, self.trunc)
    }

    /// `A :_R B = (A : B) ∩ R`.
    pub fn colon_in_ring(
        &self,
        a: &FractionalIdeal,
        b: &FractionalIdeal,
    ) -> Result<FractionalIdeal> {
        Ok(self.colon(a, b)?.intersection(&self.carrier))
    }

    pub fn scaled(&self, i: &FractionalIdeal, x: &Elem) -> Result<FractionalIdeal> {
        i.scaled(x, self.trunc)
    }

    pub fn divided(&self, i: &FractionalIdeal, x: &Elem) -> Result<FractionalIdeal> {
        i.divided(x, self.trunc)
    }

    /// Whether `I ⊆ R` is a proper ideal (hence m-primary in this model).
    pub fn is_proper_ideal(&self, i: &FractionalIdeal) -> bool {
        i.is_subset_of(&self.maximal)
    }

    /// ℓ_R(R/I) for an ideal I ⊆ R.
    pub fn colength(&self, i: &FractionalIdeal) -> Result<usize> {
        if !i.is_subset_of(&self.carrier) {
            return Err(Error::Domain(format!("{i} is not an ideal of R")));
        }
        i.colength_in(&self.carrier)
    }

    /// dim_k((I :_R m)/I), the Cohen-Macaulay type of R/I.
    pub fn socle_dim(&self, i: &FractionalIdeal) -> Result<usize> {
        let s = self.colon_in_ring(i, &self.maximal)?;
        i.colength_in(&s)
    }

    /// I:I as a ring.
    pub fn endo_ring(&self, i: &FractionalIdeal) -> Result<LocalRing> {
        LocalRing::from_carrier(self.colon(i, i)?, self.trunc)
    }

    /// Elements spanning `((I : m) ∩ outer) / I`, for `I ⊆ outer`.
    pub fn socle_basis(&self, i: &FractionalIdeal, outer: &FractionalIdeal) -> Result<Vec<Elem>> {
        let s = i
            .colon_gens(&self.max_gens, self.trunc)?
            .intersection(outer);
        Ok(complement_gens(&s, i))
    }

    /// R : R̄ = t^c k[[t]].
    pub fn conductor_ideal(&self) -> FractionalIdeal {
        FractionalIdeal::tail_from(self.field, self.carrier.conductor())
    }

    /// Canonical text form of an element of k((t)), truncated where the ideal
    /// `context` makes higher terms irrelevant.
    pub fn render_generators(&self, i: &FractionalIdeal) -> Result<Vec<String>> {
        let mi = self.max_times(i)?;
        let cut = mi.conductor();
        Ok(self
            .minimal_generators(i)?
            .into_iter()
            .map(|g| {
                let g = g.monic(self.field);
                Elem::new(
                    g.order().unwrap_or(0),
                    g.window(g.order().unwrap_or(0), cut),
                )
                .to_string()
            })
            .collect())
    }

    /// The ring's own description: its lattice with orders below the conductor.
    pub fn describe(&self) -> String {
        self.carrier.describe()
    }
}

/// Elements of `big` spanning `big / small` (with `small ⊆ big`).
pub(crate) fn complement_gens(big: &FractionalIdeal, small: &FractionalIdeal) -> Vec<Elem> {
    let lo = big.order();
    let hi = small.conductor().max(big.conductor());
    let mut ech = small.echelon_window(lo, hi);
    let mut out = Vec::new();
    for e in big.kbasis_elems(hi) {
        let v = e.window(lo, hi);
        if ech.insert(v) {
            out.push(e);
        }
    }
    out
}

/// Echelon rows of k[gens] mod t^n (as full-length vectors) and their orders.
fn closure_rows(field: PrimeField, gens: &[Elem], n: usize) -> Result<(Vec<Vec<u32>>, Vec<u64>)> {
    let one = TruncatedSeries::one(field, n);
    let seed = echelonize(field, n, &[one])?;
    let mults: Vec<TruncatedSeries> = gens
        .iter()
        .map(|g| g.to_series(field, n))
        .collect::<Result<_>>()?;
    let closed = module_closure(&seed, &mults)?;
    let values = closed.orders().iter().map(|&o| o as u64).collect();
    Ok((closed.raw_rows().to_vec(), values))
}
