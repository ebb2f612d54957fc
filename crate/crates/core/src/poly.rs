use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::Scalar;

/// `p(x) = a_0 ⊕ a_1 ⊗ x ⊕ … ⊕ a_k ⊗ x^{⊗k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropPolynomial {
    coefficients: Vec<Scalar>,
}

impl TropPolynomial {
    pub fn new(coefficients: Vec<Scalar>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        Ok(TropPolynomial { coefficients })
    }

    pub fn from_ints(coefficients: &[i64]) -> Result<Self> {
        TropPolynomial::new(coefficients.iter().map(|&c| Scalar::int(c)).collect())
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `p(A) = a_0 ⊗ I ⊕ a_1 ⊗ A ⊕ … ⊕ a_k ⊗ A^{⊗k}`, summed term by term.
    pub fn eval(&self, a: &Matrix) -> Result<Matrix> {
        let kind = a.kind();
        let mut power = Matrix::identity(kind, a.dim());
        let mut acc = Matrix::zero(kind, a.dim());
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                power = power.mul(a)?;
            }
            acc = acc.add(&power.scalar_mul(c)?)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::SemiringKind;

    #[test]
    fn protocol_example_secrets() {
        let a = Matrix::min_plus([[54, 15, 33], [59, 87, 53], [9, 63, 80]]);
        let b = Matrix::min_plus([[50, 11, 14], [16, 29, 33], [27, 86, 96]]);
        let p1 = TropPolynomial::from_ints(&[-69, -97, 60]).unwrap();
        assert_eq!(
            p1.eval(&a).unwrap(),
            Matrix::min_plus([[-69, -82, -64], [-38, -69, -44], [-88, -34, -69]])
        );
        // The printed Q1 is q1 evaluated at B.
        let q1 = TropPolynomial::from_ints(&[8, -93, 69]).unwrap();
        assert_eq!(
            q1.eval(&b).unwrap(),
            Matrix::min_plus([[-43, -82, -79], [-77, -64, -60], [-66, -7, 3]])
        );
    }

    #[test]
    fn constant_zero_is_identity() {
        let a = Matrix::max_plus([[1, 2], [3, 4]]);
        let p = TropPolynomial::from_ints(&[0]).unwrap();
        assert_eq!(p.eval(&a).unwrap(), Matrix::identity(SemiringKind::MaxPlus, 2));
    }

    #[test]
    fn empty_polynomial_rejected() {
        assert_eq!(TropPolynomial::new(vec![]), Err(Error::EmptyPolynomial));
    }
}
