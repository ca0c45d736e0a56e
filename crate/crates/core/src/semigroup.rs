//! Numerical semigroup combinatorics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A numerical semigroup H ⊆ N with finite complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    /// membership[i] ⟺ i ∈ H, for 0 ≤ i ≤ bound
    membership: Vec<bool>,
    frobenius: i64,
    multiplicity: u64,
    pseudo_frobenius: Vec<u64>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn gcd_all(xs: impl IntoIterator<Item = u64>) -> u64 {
    xs.into_iter().fold(0, gcd)
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `generators` (gcd must be 1).
    pub fn new(generators: &[u64]) -> Result<Self> {
        if generators.is_empty() || generators.contains(&0) {
            return Err(Error::InvalidSemigroup(
                "generators must be a nonempty list of positive integers".into(),
            ));
        }
        let g = gcd_all(generators.iter().copied());
        if g != 1 {
            return Err(Error::InvalidSemigroup(format!(
                "generators have gcd {g}, so the complement is infinite (no conductor)"
            )));
        }
        let mut gens: Vec<u64> = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let multiplicity = gens[0];

        // Frobenius number is below (min gen) * (max gen); fill a table that far
        // and then cut to the stated bound.
        let probe = (gens[0] * gens[gens.len() - 1]) as usize + 1;
        let table = fill_table(&gens, probe);
        let frobenius = table.iter().rposition(|&m| !m).map_or(-1, |i| i as i64);
        let bound = (2 * frobenius + 2).max(0) as usize;
        let membership = if bound < table.len() {
            table[..=bound].to_vec()
        } else {
            fill_table(&gens, bound + 1)
        };

        let mut sg = NumericalSemigroup {
            generators: Vec::new(),
            membership,
            frobenius,
            multiplicity,
            pseudo_frobenius: Vec::new(),
        };
        sg.generators = gens
            .iter()
            .copied()
            .filter(|&g| !sg.is_sum_of_two_nonzero(g))
            .collect();
        sg.pseudo_frobenius = sg
            .gaps()
            .filter(|&g| sg.generators.iter().all(|&h| sg.contains(g + h)))
            .collect();
        Ok(sg)
    }

    fn is_sum_of_two_nonzero(&self, x: u64) -> bool {
        (1..x).any(|a| self.contains(a) && self.contains(x - a))
    }

    pub fn contains(&self, x: u64) -> bool {
        if x as i64 > self.frobenius {
            return true;
        }
        self.membership[x as usize]
    }

    /// Minimal generating set.
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Largest integer not in H (−1 for H = N).
    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    /// Least c with c + N ⊆ H.
    pub fn conductor(&self) -> u64 {
        (self.frobenius + 1) as u64
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    /// The membership table window `[0, 2F + 2]`.
    pub fn table(&self) -> &[bool] {
        &self.membership
    }

    pub fn gaps(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.conductor()).filter(move |&x| !self.contains(x))
    }

    pub fn genus(&self) -> usize {
        self.gaps().count()
    }

    /// Elements of H below `bound`.
    pub fn elements_below(&self, bound: u64) -> impl Iterator<Item = u64> + '_ {
        (0..bound).filter(move |&x| self.contains(x))
    }

    /// Apéry set with respect to `n ∈ H`: least element of H in each residue class mod n.
    pub fn apery(&self, n: u64) -> Result<Vec<u64>> {
        if n == 0 || !self.contains(n) {
            return Err(Error::Domain(format!(
                "{n} is not a nonzero element of the semigroup"
            )));
        }
        let mut out: Vec<u64> = (0..n)
            .map(|r| {
                (0..)
                    .map(|k| r + k * n)
                    .find(|&x| self.contains(x))
                    .expect("every residue class meets H")
            })
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Gaps g with g + h ∈ H for every nonzero h ∈ H.
    pub fn pseudo_frobenius(&self) -> &[u64] {
        &self.pseudo_frobenius
    }

    /// Cohen-Macaulay type of the semigroup ring.
    pub fn type_number(&self) -> usize {
        self.pseudo_frobenius.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.type_number() == 1
    }

    /// Exponents {F − g : g a gap}, together with 0; they span the standard
    /// canonical fractional ideal R ⊆ K ⊆ k[[t]] over the semigroup ring.
    pub fn canonical_exponents(&self) -> Vec<u64> {
        let f = self.frobenius;
        let mut out: Vec<u64> = self.gaps().map(|g| (f - g as i64) as u64).collect();
        out.sort_unstable();
        out
    }
}

fn fill_table(gens: &[u64], len: usize) -> Vec<bool> {
    let mut m = vec![false; len];
    if len > 0 {
        m[0] = true;
    }
    for i in 0..len {
        if m[i] {
            for &g in gens {
                let j = i + g as usize;
                if j < len {
                    m[j] = true;
                }
            }
        }
    }
    m
}

/// Canonical exponents of `H`; see [`NumericalSemigroup::canonical_exponents`].
pub fn sg_canonical_exponents(h: &NumericalSemigroup) -> Vec<u64> {
    h.canonical_exponents()
}
