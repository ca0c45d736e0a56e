//! Dense linear algebra over F_p on raw coefficient vectors.

use super::field::PrimeField;

/// Reduced row echelon form of a subspace of F_p^width.
///
/// Rows are kept sorted by pivot; every pivot entry is 1 and is the only
/// nonzero entry of its column. Two equal subspaces therefore have equal rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Echelon {
    field: PrimeField,
    width: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: PrimeField, width: usize) -> Self {
        Echelon {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows(
        field: PrimeField,
        width: usize,
        rows: impl IntoIterator<Item = Vec<u32>>,
    ) -> Self {
        let mut e = Echelon::new(field, width);
        for r in rows {
            e.insert(r);
        }
        e
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    #[inline]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Eliminates every pivot column from `v` in place.
    pub fn reduce(&self, v: &mut [u32]) {
        debug_assert_eq!(v.len(), self.width);
        let f = self.field;
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                axpy(f, v, f.neg(c), row, piv);
            }
        }
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(v[piv]);
        for x in v[piv..].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                axpy(f, row, f.neg(c), &v, piv);
            }
        }
        let at = self.pivots.partition_point(|&p| p < piv);
        self.pivots.insert(at, piv);
        self.rows.insert(at, v);
        true
    }
}

/// `y[from..] += a * x[from..]`.
#[inline]
pub(crate) fn axpy(f: PrimeField, y: &mut [u32], a: u32, x: &[u32], from: usize) {
    if a == 0 {
        return;
    }
    for (yi, &xi) in y[from..].iter_mut().zip(&x[from..]) {
        if xi != 0 {
            *yi = f.add(*yi, f.mul(a, xi));
        }
    }
}

/// Basis of the space of linear relations `sum c_i vectors[i] = 0`.
///
/// Each returned vector has length `vectors.len()`.
pub(crate) fn kernel(field: PrimeField, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let m = vectors.len();
    let w = vectors.first().map_or(0, |v| v.len());
    let mut pivot_rows: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut out = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        debug_assert_eq!(v.len(), w);
        let mut r = Vec::with_capacity(w + m);
        r.extend_from_slice(v);
        r.resize(w + m, 0);
        r[w + i] = 1;
        for (piv, row) in &pivot_rows {
            let c = r[*piv];
            if c != 0 {
                axpy(field, &mut r, field.neg(c), row, 0);
            }
        }
        match r[..w].iter().position(|&c| c != 0) {
            Some(piv) => {
                let inv = field.inv(r[piv]);
                r.iter_mut().for_each(|x| *x = field.mul(*x, inv));
                pivot_rows.push((piv, r));
            }
            None => out.push(r[w..].to_vec()),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_dependent_vectors() {
        let f = PrimeField::new(5).unwrap();
        let v = vec![vec![1, 2, 0], vec![0, 1, 1], vec![1, 3, 1]];
        let k = kernel(f, &v);
        assert_eq!(k.len(), 1);
        let c = &k[0];
        let combo = v.iter().zip(c).fold(vec![0; 3], |acc, (row, &ci)| {
            acc.iter().zip(row).map(|(&a, &x)| f.add(a, f.mul(ci, x))).collect()
        });
        assert_eq!(combo, [0, 0, 0]);
    }

    #[test]
    fn echelon_is_reduced() {
        let f = PrimeField::new(3).unwrap();
        let e = Echelon::from_rows(
            f,
            4,
            vec![vec![0, 1, 2, 0], vec![1, 1, 0, 1], vec![0, 0, 1, 1]],
        );
        assert_eq!(e.pivots(), &[0, 1, 2]);
        for (r, &p) in e.rows().iter().zip(e.pivots()) {
            assert_eq!(r[p], 1);
            for &q in e.pivots() {
                if q != p {
                    assert_eq!(r[q], 0);
                }
            }
        }
    }
}
