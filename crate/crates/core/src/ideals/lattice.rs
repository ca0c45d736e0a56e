use std::fmt;

use super::elem::Elem;
use crate::coeffcore::linalg::{kernel, Echelon};
use crate::coeffcore::{convolve_into, write_terms, PrimeField, Subspace};
use crate::error::{Error, Result};

/// A nonzero fractional ideal `t^(-shift) * (span(num) + t^tail k[[t]])`, where
/// `tail = num.trunc()`.
///
/// Every nonzero fractional ideal of a ring between R and k[[t]] contains a
/// full tail t^c k[[t]], so the object is exact: coefficients at orders below
/// the tail are stored, and everything from the tail on belongs to the ideal.
/// The form is canonical (minimal shift, tail equal to the conductor of the
/// ideal, reduced echelon rows), so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FractionalIdeal {
    shift: usize,
    num: Subspace,
}

/// Fails when a computation would need coefficients outside a width-`trunc` buffer.
pub(crate) fn fit(trunc: usize, lo: i64, hi: i64) -> Result<()> {
    let needed = (hi - lo.min(0)).max(0) as usize;
    if needed > trunc {
        return Err(Error::PrecisionExhausted {
            needed,
            available: trunc,
        });
    }
    Ok(())
}

impl FractionalIdeal {
    /// The lattice spanned by `vecs` (coefficients of exponents `lo..hi`) plus t^hi k[[t]].
    pub(crate) fn from_window(
        field: PrimeField,
        lo: i64,
        hi: i64,
        vecs: impl IntoIterator<Item = Vec<u32>>,
    ) -> FractionalIdeal {
        assert!(hi >= lo);
        let ech = Echelon::from_rows(field, (hi - lo) as usize, vecs);
        Self::from_echelon(lo, hi, ech)
    }

    fn from_echelon(lo: i64, hi: i64, ech: Echelon) -> FractionalIdeal {
        let field = ech.field();
        let pivots = ech.pivots();
        // conductor: least c such that every exponent in [c, hi) is a pivot
        let mut cond = hi;
        let mut k = pivots.len();
        while k > 0 && lo + pivots[k - 1] as i64 == cond - 1 {
            cond -= 1;
            k -= 1;
        }
        let order = pivots.first().map_or(cond, |&p| (lo + p as i64).min(cond));
        let shift = (-order).max(0);
        let width = (cond + shift) as usize;
        let rows = ech
            .rows()
            .iter()
            .zip(pivots)
            .filter(|(_, &p)| lo + (p as i64) < cond)
            .map(|(row, _)| {
                let mut v = vec![0u32; width];
                for (i, &c) in row.iter().enumerate() {
                    let e = lo + i as i64;
                    if c != 0 && e < cond {
                        v[(e + shift) as usize] = c;
                    }
                }
                v
            });
        FractionalIdeal {
            shift: shift as usize,
            num: Subspace::from_echelon(Echelon::from_rows(field, width, rows)),
        }
    }

    /// t^c k[[t]].
    pub fn tail_from(field: PrimeField, c: i64) -> FractionalIdeal {
        Self::from_window(field, c, c, std::iter::empty())
    }

    pub fn field(&self) -> PrimeField {
        self.num.field()
    }

    /// The ideal equals `t^(-shift)` times the numerator.
    pub fn shift(&self) -> usize {
        self.shift
    }

    /// Numerator subspace; its truncation level is the exact tail in shifted coordinates.
    pub fn num(&self) -> &Subspace {
        &self.num
    }

    /// Least c with t^c k[[t]] inside the ideal. Every statement about orders
    /// at or above this exponent is exact by construction.
    pub fn conductor(&self) -> i64 {
        self.num.trunc() as i64 - self.shift as i64
    }

    /// Least order of a nonzero element.
    pub fn order(&self) -> i64 {
        self.num
            .orders()
            .first()
            .map_or(self.conductor(), |&p| p as i64 - self.shift as i64)
    }

    /// Orders of elements below the conductor (everything above is present).
    pub fn values_below_conductor(&self) -> Vec<i64> {
        let s = self.shift as i64;
        self.num.orders().iter().map(|&p| p as i64 - s).collect()
    }

    pub fn has_value(&self, v: i64) -> bool {
        v >= self.conductor()
            || (v + self.shift as i64 >= 0
                && self
                    .num
                    .orders()
                    .binary_search(&((v + self.shift as i64) as usize))
                    .is_ok())
    }

    /// Basis of `(L ∩ t^lo k[[t]]) mod t^hi` as coefficient vectors over `lo..hi`.
    pub(crate) fn basis_window(&self, lo: i64, hi: i64) -> Vec<Vec<u32>> {
        let s = self.shift as i64;
        let w = (hi - lo).max(0) as usize;
        let mut out = Vec::new();
        for (row, &p) in self.num.raw_rows().iter().zip(self.num.orders()) {
            let e0 = p as i64 - s;
            if e0 < lo || e0 >= hi {
                continue;
            }
            let mut v = vec![0u32; w];
            for (i, &c) in row.iter().enumerate().skip(p) {
                let e = i as i64 - s;
                if e >= hi {
                    break;
                }
                v[(e - lo) as usize] = c;
            }
            out.push(v);
        }
        for e in self.conductor().max(lo)..hi {
            let mut v = vec![0u32; w];
            v[(e - lo) as usize] = 1;
            out.push(v);
        }
        out
    }

    pub(crate) fn echelon_window(&self, lo: i64, hi: i64) -> Echelon {
        Echelon::from_rows(
            self.field(),
            (hi - lo).max(0) as usize,
            self.basis_window(lo, hi),
        )
    }

    /// Echelon rows as exact elements (each row is itself a member of the ideal).
    pub fn row_elems(&self) -> Vec<Elem> {
        let s = self.shift as i64;
        self.num
            .raw_rows()
            .iter()
            .map(|r| Elem::new(-s, r.clone()))
            .collect()
    }

    /// Row elements followed by the monomials t^j for `conductor <= j < upto`.
    pub(crate) fn kbasis_elems(&self, upto: i64) -> Vec<Elem> {
        let mut out = self.row_elems();
        out.extend((self.conductor()..upto).map(|j| Elem::monomial(j, 1)));
        out
    }

    /// Least-order echelon element (monic); every element of least order is a
    /// unit multiple of it modulo higher orders.
    pub fn first_element(&self) -> Elem {
        self.row_elems()
            .into_iter()
            .next()
            .unwrap_or_else(|| Elem::monomial(self.conductor(), 1))
    }

    pub fn contains_elem(&self, x: &Elem) -> bool {
        let Some(o) = x.order() else { return true };
        if o < self.order() {
            return false;
        }
        let lo = self.order();
        let hi = self.conductor();
        if o >= hi {
            return true;
        }
        let ech = self.echelon_window(lo, hi);
        let mut v = x.window(lo, hi);
        ech.reduce(&mut v);
        v.iter().all(|&c| c == 0)
    }

    pub fn is_subset_of(&self, other: &FractionalIdeal) -> bool {
        if self.order() < other.order() {
            return false;
        }
        let lo = other.order();
        let hi = self.conductor().max(other.conductor());
        let ech = other.echelon_window(lo, hi);
        self.basis_window(lo, hi).into_iter().all(|mut v| {
            ech.reduce(&mut v);
            v.iter().all(|&c| c == 0)
        })
    }

    /// `dim_k(bigger / self)`, for `self ⊆ bigger`.
    pub fn colength_in(&self, bigger: &FractionalIdeal) -> Result<usize> {
        if !self.is_subset_of(bigger) {
            return Err(Error::Domain("colength of a non-contained ideal".into()));
        }
        let lo = bigger.order();
        let hi = self.conductor().max(bigger.conductor());
        Ok((lo..hi)
            .filter(|&v| bigger.has_value(v) && !self.has_value(v))
            .count())
    }

    pub fn sum(&self, other: &FractionalIdeal) -> FractionalIdeal {
        let lo = self.order().min(other.order());
        let hi = self.conductor().min(other.conductor());
        let mut vecs = self.basis_window(lo, hi);
        vecs.extend(other.basis_window(lo, hi));
        Self::from_window(self.field(), lo, hi, vecs)
    }

    pub fn intersection(&self, other: &FractionalIdeal) -> FractionalIdeal {
        let f = self.field();
        let lo = self.order().max(other.order());
        let hi = self.conductor().max(other.conductor()).max(lo);
        let a = self.basis_window(lo, hi);
        let b = other.basis_window(lo, hi);
        let mut stacked = a.clone();
        stacked.extend(b.iter().map(|v| v.iter().map(|&c| f.neg(c)).collect()));
        let rel = kernel(f, &stacked);
        let w = (hi - lo) as usize;
        let vecs = rel.into_iter().map(|c| {
            let mut v = vec![0u32; w];
            for (ci, ai) in c.iter().zip(&a) {
                if *ci != 0 {
                    crate::coeffcore::linalg::axpy(f, &mut v, *ci, ai, 0);
                }
            }
            v
        });
        Self::from_window(f, lo, hi, vecs)
    }

    /// `x * L` for a nonzero element `x`.
    pub fn scaled(&self, x: &Elem, trunc: usize) -> Result<FractionalIdeal> {
        let o = x
            .order()
            .ok_or_else(|| Error::Domain("scaling by zero".into()))?;
        let (lo, hi) = (self.order(), self.conductor());
        fit(trunc, lo + o, hi + o)?;
        let w = (hi - lo) as usize;
        let u = x.unit_part(w);
        Ok(self.multiply_unit(&u, lo, hi, o))
    }

    /// `L / x` for a nonzero element `x`.
    pub fn divided(&self, x: &Elem, trunc: usize) -> Result<FractionalIdeal> {
        let o = x
            .order()
            .ok_or_else(|| Error::Domain("division by zero".into()))?;
        let (lo, hi) = (self.order(), self.conductor());
        fit(trunc, lo - o, hi - o)?;
        let w = (hi - lo) as usize;
        let u = x.unit_part_inverse(self.field(), w);
        Ok(self.multiply_unit(&u, lo, hi, -o))
    }

    fn multiply_unit(&self, u: &[u32], lo: i64, hi: i64, shift_by: i64) -> FractionalIdeal {
        let f = self.field();
        let w = (hi - lo) as usize;
        let vecs = self.basis_window(lo, hi).into_iter().map(|v| {
            let mut out = vec![0u32; w];
            convolve_into(f, &v, u, &mut out);
            out
        });
        Self::from_window(f, lo + shift_by, hi + shift_by, vecs)
    }

    /// `sum_g g * L`.
    pub(crate) fn times_elems(&self, gens: &[Elem], trunc: usize) -> Result<FractionalIdeal> {
        let f = self.field();
        let gens: Vec<&Elem> = gens.iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::Domain("product with the zero ideal".into()));
        }
        let lo = gens.iter().map(|g| g.order().unwrap()).min().unwrap() + self.order();
        let hi = gens
            .iter()
            .map(|g| g.order().unwrap() + self.conductor())
            .min()
            .unwrap();
        fit(trunc, lo, hi)?;
        let w = (hi - lo) as usize;
        let mut vecs = Vec::new();
        for g in gens {
            let go = g.order().unwrap();
            let gw = g.window(go, hi - self.order());
            for v in self.basis_window(self.order(), hi - go) {
                // v covers exponents order.., g covers go..; product lands at order+go..
                let mut out = vec![0u32; w];
                let off = (self.order() + go - lo) as usize;
                convolve_into(f, &v, &gw, &mut out[off..]);
                vecs.push(out);
            }
        }
        Ok(Self::from_window(f, lo, hi, vecs))
    }

    /// Product of two lattices through a full k-basis of `other`.
    pub(crate) fn product_kbasis(
        &self,
        other: &FractionalIdeal,
        trunc: usize,
    ) -> Result<FractionalIdeal> {
        let hi = (self.order() + other.conductor()).min(other.order() + self.conductor());
        self.times_elems(
            &other.kbasis_elems((hi - self.order()).max(other.conductor() + 1)),
            trunc,
        )
    }

    /// `{x : x g ∈ self for all g in gens}`; equals `self : B` when `gens`
    /// generate B over a ring that `self` is a module over.
    pub(crate) fn colon_gens(&self, gens: &[Elem], trunc: usize) -> Result<FractionalIdeal> {
        let f = self.field();
        let gens: Vec<&Elem> = gens.iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            return Err(Error::Domain("colon by the zero ideal is undefined".into()));
        }
        let ob = gens.iter().map(|g| g.order().unwrap()).min().unwrap();
        let (oa, ca) = (self.order(), self.conductor());
        let (xlo, xhi) = (oa - ob, ca - ob);
        fit(trunc, xlo, xhi)?;
        fit(trunc, oa, ca)?;
        let ech = self.echelon_window(oa, ca);
        let free: Vec<usize> = (0..(ca - oa) as usize)
            .filter(|c| ech.pivots().binary_search(c).is_err())
            .collect();
        let mut images = Vec::with_capacity((xhi - xlo) as usize);
        for i in xlo..xhi {
            let mut img = Vec::with_capacity(free.len() * gens.len());
            for g in &gens {
                // t^i * g restricted to exponents oa..ca
                let mut v: Vec<u32> = (oa..ca).map(|e| g.coeff(e - i)).collect();
                ech.reduce(&mut v);
                img.extend(free.iter().map(|&c| v[c]));
            }
            images.push(img);
        }
        let sols = if images.first().is_some_and(|v| v.is_empty()) {
            // every candidate maps into self
            (0..images.len())
                .map(|i| {
                    let mut v = vec![0u32; images.len()];
                    v[i] = 1;
                    v
                })
                .collect()
        } else {
            kernel(f, &images)
        };
        Ok(Self::from_window(f, xlo, xhi, sols))
    }

    /// Canonical text form: echelon rows then the tail marker.
    pub fn describe(&self) -> String {
        let mut s = String::new();
        let rows = self.row_elems();
        s.push('(');
        for (i, r) in rows.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            let _ = write_terms(&mut s, r.terms());
        }
        if !rows.is_empty() {
            s.push_str(", ");
        }
        s.push_str(&format!("t^{}..)", self.conductor()));
        s
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn mono_lattice(f: PrimeField, exps: &[i64], tail: i64) -> FractionalIdeal {
        let lo = *exps.iter().min().unwrap_or(&tail);
        let w = (tail - lo) as usize;
        FractionalIdeal::from_window(
            f,
            lo,
            tail,
            exps.iter().map(|&e| {
                let mut v = vec![0; w];
                v[(e - lo) as usize] = 1;
                v
            }),
        )
    }

    #[test]
    fn canonical_form_drops_redundant_tail() {
        let f = k(2);
        let a = mono_lattice(f, &[3, 6, 7, 8, 9, 10, 11], 12);
        let b = mono_lattice(f, &[3, 6], 7);
        assert_eq!(a, b);
        assert_eq!(a.conductor(), 6);
        assert_eq!(a.order(), 3);
    }

    #[test]
    fn negative_orders_shift() {
        let f = k(3);
        let a = mono_lattice(f, &[-4, 0], 3);
        assert_eq!(a.shift(), 4);
        assert_eq!(a.order(), -4);
        assert_eq!(a.values_below_conductor(), vec![-4, 0]);
    }

    #[test]
    fn intersection_and_sum_of_monomial_lattices() {
        let f = k(5);
        let a = mono_lattice(f, &[0, 3, 6], 7);
        let b = mono_lattice(f, &[2, 3, 5], 6);
        let i = a.intersection(&b);
        assert_eq!(i, mono_lattice(f, &[3, 6], 7));
        let s = a.sum(&b);
        assert_eq!(s, mono_lattice(f, &[0, 2, 3], 5));
        assert!(i.is_subset_of(&a) && i.is_subset_of(&b));
        assert!(a.is_subset_of(&s) && b.is_subset_of(&s));
    }

    #[test]
    fn divide_then_scale_roundtrip() {
        let f = k(3);
        let a = mono_lattice(f, &[6, 9, 10], 12);
        let b = Elem::new(6, vec![1, 2]);
        let q = a.divided(&b, 64).unwrap();
        assert_eq!(q.order(), 0);
        assert_eq!(q.scaled(&b, 64).unwrap(), a);
    }

    #[test]
    fn precision_guard() {
        let f = k(2);
        let a = mono_lattice(f, &[0], 40);
        assert!(matches!(
            a.scaled(&Elem::monomial(30, 1), 64),
            Err(Error::PrecisionExhausted { .. })
        ));
    }
}
