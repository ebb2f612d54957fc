//! Dense square matrices over a tropical semiring.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::semiring::{Scalar, SemiringKind};

/// An immutable `k × k` matrix tagged with its semiring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    kind: SemiringKind,
    dim: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    /// Builds a matrix from row-major entries, rejecting the wrong infinity.
    pub fn new(kind: SemiringKind, dim: usize, data: Vec<Scalar>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != dim * dim {
            return Err(Error::EntryCount {
                expected: dim * dim,
                got: data.len(),
            });
        }
        if let Some(bad) = data.iter().find(|s| !kind.admits(s)) {
            return Err(Error::ForeignInfinity {
                kind,
                value: bad.clone(),
            });
        }
        Ok(Matrix { kind, dim, data })
    }

    pub fn from_rows(kind: SemiringKind, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(dim, r.len()));
        }
        Matrix::new(kind, dim, rows.into_iter().flatten().collect())
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(kind: SemiringKind, rows: &[R]) -> Result<Self> {
        Matrix::from_rows(
            kind,
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| Scalar::int(v)).collect())
                .collect(),
        )
    }

    /// Integer min-plus matrix from a literal array.
    pub fn min_plus<const N: usize>(rows: [[i64; N]; N]) -> Self {
        Matrix::from_int_rows(SemiringKind::MinPlus, &rows).expect("literal matrix")
    }

    /// Integer max-plus matrix from a literal array.
    pub fn max_plus<const N: usize>(rows: [[i64; N]; N]) -> Self {
        Matrix::from_int_rows(SemiringKind::MaxPlus, &rows).expect("literal matrix")
    }

    pub fn from_fn(kind: SemiringKind, dim: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Result<Self> {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Matrix::new(kind, dim, data)
    }

    /// The tropical identity: `0` on the diagonal, additive neutral elsewhere.
    pub fn identity(kind: SemiringKind, dim: usize) -> Self {
        Matrix::from_fn(kind, dim, |i, j| if i == j { kind.one() } else { kind.zero() })
            .expect("identity of positive dimension")
    }

    /// The all-additive-neutral matrix.
    pub fn zero(kind: SemiringKind, dim: usize) -> Self {
        Matrix::from_fn(kind, dim, |_, _| kind.zero()).expect("zero of positive dimension")
    }

    pub fn kind(&self) -> SemiringKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.dim + j]
    }

    /// Finite entry at `(i, j)`; panics on infinity. Callers check finiteness first.
    pub(crate) fn fin(&self, i: usize, j: usize) -> &Rational {
        self.get(i, j).finite().expect("finite entry")
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.data.chunks(self.dim)
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        self.rows().map(<[Scalar]>::to_vec).collect()
    }

    /// Returns a copy with entry `(i, j)` replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: Scalar) -> Result<Matrix> {
        if !self.kind.admits(&value) {
            return Err(Error::ForeignInfinity { kind: self.kind, value });
        }
        let mut out = self.clone();
        out.data[i * self.dim + j] = value;
        Ok(out)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(Scalar::is_finite)
    }

    /// Errors with the first non-finite position.
    pub fn ensure_finite(&self) -> Result<()> {
        match self.data.iter().position(|s| !s.is_finite()) {
            None => Ok(()),
            Some(p) => Err(Error::NonFinite {
                row: p / self.dim,
                col: p % self.dim,
            }),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|s| s.finite().is_none_or(Rational::is_integer))
    }

    fn check_compatible(&self, other: &Matrix) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch(self.kind, other.kind));
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    /// Entrywise `⊕`.
    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.kind.plus(a, b))
            .collect();
        Ok(Matrix {
            kind: self.kind,
            dim: self.dim,
            data,
        })
    }

    /// Tropical product `(A ⊗ B)_ij = ⊕_l a_il ⊗ b_lj`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_compatible(other)?;
        let k = self.dim;
        let kind = self.kind;
        let mut data = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let mut best: Option<Rational> = None;
                for l in 0..k {
                    if let (Scalar::Finite(a), Scalar::Finite(b)) = (self.get(i, l), other.get(l, j)) {
                        let s = a + b;
                        best = Some(match best {
                            None => s,
                            Some(cur) => match kind {
                                SemiringKind::MinPlus => cur.min(s),
                                SemiringKind::MaxPlus => cur.max(s),
                            },
                        });
                    }
                }
                data.push(best.map_or_else(|| kind.zero(), Scalar::Finite));
            }
        }
        Ok(Matrix { kind, dim: k, data })
    }

    /// Left-to-right product of a non-empty chain.
    pub fn product<'a, I>(chain: I) -> Result<Matrix>
    where
        I: IntoIterator<Item = &'a Matrix>,
    {
        let mut it = chain.into_iter();
        let first = it.next().ok_or(Error::EmptyValues)?.clone();
        it.try_fold(first, |acc, m| acc.mul(m))
    }

    /// `A^{⊗n}`, with `A^{⊗0} = I`.
    pub fn pow(&self, n: u32) -> Matrix {
        let mut result = Matrix::identity(self.kind, self.dim);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same shape");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same shape");
            }
        }
        result
    }

    /// `c ⊗ A`, entrywise.
    pub fn scalar_mul(&self, c: &Scalar) -> Result<Matrix> {
        if !self.kind.admits(c) {
            return Err(Error::ForeignInfinity {
                kind: self.kind,
                value: c.clone(),
            });
        }
        Ok(Matrix {
            kind: self.kind,
            dim: self.dim,
            data: self.data.iter().map(|a| self.kind.times(c, a)).collect(),
        })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.kind, self.dim, |i, j| self.get(j, i).clone()).expect("same shape")
    }

    /// Entrywise negation, moving the matrix into the dual semiring.
    ///
    /// `neg(A ⊗_min B) = neg(A) ⊗_max neg(B)`.
    pub fn negate(&self) -> Matrix {
        Matrix {
            kind: self.kind.dual(),
            dim: self.dim,
            data: self.data.iter().map(Scalar::negate).collect(),
        }
    }

    /// Entrywise numeric `self ≥ other` (ignores semiring direction).
    pub fn dominates(&self, other: &Matrix) -> bool {
        self.dim == other.dim && self.data.iter().zip(&other.data).all(|(a, b)| a >= b)
    }

    /// `A ⊗ B == B ⊗ A`.
    pub fn commutes_with(&self, other: &Matrix) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}",
            if self.kind == SemiringKind::MinPlus {
                "min"
            } else {
                "max"
            },
            self
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_mul(a: &Matrix, b: &Matrix) -> Matrix {
        let kind = a.kind();
        Matrix::from_fn(kind, a.dim(), |i, j| {
            (0..a.dim())
                .map(|l| kind.times(a.get(i, l), b.get(l, j)))
                .fold(kind.zero(), |acc, x| kind.plus(&acc, &x))
        })
        .unwrap()
    }

    #[test]
    fn add_is_entrywise_min() {
        let a = Matrix::min_plus([[3, 7], [5, 12]]);
        let b = Matrix::min_plus([[5, 12], [25, 12]]);
        assert_eq!(a.add(&b).unwrap(), a);
        assert_eq!(a.add(&a).unwrap(), a);
        assert_eq!(a.add(&Matrix::zero(SemiringKind::MinPlus, 2)).unwrap(), a);
    }

    #[test]
    fn marginal_example_product() {
        let a = Matrix::min_plus([[3, 7, 4], [5, 12, 7], [6, 5, 11]]);
        let c = Matrix::min_plus([[0, 7, 5], [1, 0, 6], [-1, 5, 0]]);
        assert_eq!(a.mul(&c).unwrap(), a);
        let id = Matrix::identity(SemiringKind::MinPlus, 3);
        assert_eq!(a.mul(&id).unwrap(), a);
        assert_eq!(id.mul(&a).unwrap(), a);
    }

    #[test]
    fn product_matches_brute_force() {
        let a = Matrix::max_plus([[1, -4], [0, 9]]);
        let b = Matrix::from_rows(
            SemiringKind::MaxPlus,
            vec![
                vec![Scalar::NegInf, Scalar::int(2)],
                vec![Scalar::ratio(1, 2), Scalar::int(-3)],
            ],
        )
        .unwrap();
        assert_eq!(a.mul(&b).unwrap(), brute_mul(&a, &b));
    }

    #[test]
    fn powers() {
        let a = Matrix::min_plus([[54, 15, 33], [59, 87, 53], [9, 63, 80]]);
        assert_eq!(a.pow(0), Matrix::identity(SemiringKind::MinPlus, 3));
        // min(54+54, 15+59, 33+9)
        assert_eq!(a.pow(2).get(0, 0), &Scalar::int(42));
        assert_eq!(a.pow(3), a.mul(&a.pow(2)).unwrap());
    }

    #[test]
    fn scalar_multiples() {
        let a = Matrix::min_plus([[54, 15], [59, 87]]);
        assert_eq!(a.scalar_mul(&Scalar::int(0)).unwrap(), a);
        assert_eq!(
            a.scalar_mul(&Scalar::int(-97)).unwrap(),
            Matrix::min_plus([[-43, -82], [-38, -10]])
        );
        assert_eq!(
            a.scalar_mul(&Scalar::PosInf).unwrap(),
            Matrix::zero(SemiringKind::MinPlus, 2)
        );
        assert!(a.scalar_mul(&Scalar::NegInf).is_err());
    }

    #[test]
    fn rejects_mismatches() {
        let a = Matrix::min_plus([[1, 2], [3, 4]]);
        let b = Matrix::min_plus([[1]]);
        assert_eq!(a.mul(&b), Err(Error::DimensionMismatch(2, 1)));
        let c = Matrix::max_plus([[1, 2], [3, 4]]);
        assert!(matches!(a.add(&c), Err(Error::KindMismatch(..))));
        assert!(matches!(
            Matrix::new(SemiringKind::MaxPlus, 1, vec![Scalar::PosInf]),
            Err(Error::ForeignInfinity { .. })
        ));
        assert_eq!(Matrix::new(SemiringKind::MinPlus, 0, vec![]), Err(Error::EmptyMatrix));
    }

    #[test]
    fn negation_swaps_semirings() {
        let a = Matrix::min_plus([[1, 5], [-2, 0]]);
        let b = Matrix::min_plus([[3, -1], [4, 4]]);
        assert_eq!(a.mul(&b).unwrap().negate(), a.negate().mul(&b.negate()).unwrap());
    }
}
