//! Pairwise-commuting matrix families: polynomials of a fixed matrix,
//! circulant variants, deformations of a Jones matrix, and Linde–de la
//! Puente matrices. Each family has a constructor, a membership predicate
//! and a seeded sampler.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::TropPolynomial;
use crate::rational::Rational;
use crate::semiring::{Scalar, SemiringKind};

fn circulant_with(
    kind: SemiringKind,
    values: &[Scalar],
    shift: impl Fn(usize, usize) -> Option<Scalar>,
) -> Result<Matrix> {
    let n = values.len();
    if n == 0 {
        return Err(Error::EmptyValues);
    }
    Matrix::from_fn(kind, n, |i, j| {
        let v = &values[(j + n - i) % n];
        match shift(i, j) {
            Some(t) => kind.times(&t, v),
            None => v.clone(),
        }
    })
}

/// `C(c_1, …, c_n)`: row `i` is `values` cyclically right-shifted `i` times.
pub fn make_circulant(values: &[Scalar], kind: SemiringKind) -> Result<Matrix> {
    circulant_with(kind, values, |_, _| None)
}

/// Circulant layout with every strictly-above-diagonal entry multiplied by `t`.
pub fn make_upper_t_circulant(t: &Scalar, values: &[Scalar], kind: SemiringKind) -> Result<Matrix> {
    circulant_with(kind, values, |i, j| (j > i).then(|| t.clone()))
}

/// Circulant layout with every strictly-below-diagonal entry multiplied by `s`.
pub fn make_lower_s_circulant(s: &Scalar, values: &[Scalar], kind: SemiringKind) -> Result<Matrix> {
    circulant_with(kind, values, |i, j| (j < i).then(|| s.clone()))
}

fn first_row(a: &Matrix) -> Vec<Scalar> {
    a.rows().next().expect("positive dimension").to_vec()
}

pub fn is_circulant(a: &Matrix) -> bool {
    make_circulant(&first_row(a), a.kind()).is_ok_and(|c| c == *a)
}

/// Whether `a` is upper-`t`-circulant. The untouched values are read off the
/// first column, where `c_j` sits at row `n − j`.
pub fn is_upper_t_circulant(a: &Matrix, t: &Scalar) -> bool {
    let n = a.dim();
    let values: Vec<Scalar> = (0..n).map(|j| a.get((n - j) % n, 0).clone()).collect();
    make_upper_t_circulant(t, &values, a.kind()).is_ok_and(|c| c == *a)
}

pub fn is_lower_s_circulant(a: &Matrix, s: &Scalar) -> bool {
    make_lower_s_circulant(s, &first_row(a), a.kind()).is_ok_and(|c| c == *a)
}

/// Jones condition `a_ij ⊗ a_jk ≤ a_ik ⊗ a_jj` for all `i, j, k`, over max-plus.
///
/// Min-plus matrices are never Jones matrices.
pub fn is_jones(a: &Matrix) -> bool {
    let kind = a.kind();
    if kind != SemiringKind::MaxPlus {
        return false;
    }
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = kind.times(a.get(i, j), a.get(j, k));
                let rhs = kind.times(a.get(i, k), a.get(j, j));
                if lhs > rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Deformation `b_ij = a_ij ⊗ (a_ii ⊕ a_jj)^{⊗(α−1)}`.
pub fn deform(a: &Matrix, alpha: &Rational) -> Result<Matrix> {
    if alpha.is_negative() || *alpha > Rational::from_int(1) {
        return Err(Error::AlphaOutOfRange(alpha.clone()));
    }
    if !is_jones(a) {
        return Err(Error::NotJones);
    }
    let n = a.dim();
    for i in 0..n {
        if !a.get(i, i).is_finite() {
            return Err(Error::NonFinite { row: i, col: i });
        }
    }
    let exponent = alpha - &Rational::from_int(1);
    Matrix::from_fn(a.kind(), n, |i, j| match a.get(i, j) {
        Scalar::Finite(v) => {
            let diag = a.fin(i, i).clone().max(a.fin(j, j).clone());
            Scalar::Finite(v + &(&exponent * &diag))
        }
        other => other.clone(),
    })
}

fn check_ldp_params(r: &Rational, k: &Rational) -> Result<()> {
    if r.is_negative() || *k > Rational::ZERO {
        return Err(Error::InvalidLdp {
            r: r.clone(),
            k: k.clone(),
        });
    }
    Ok(())
}

/// Membership in `[r, 2r]^k_n`. Over max-plus the definition is mirrored:
/// `A` belongs iff `−A` is a min-plus member.
pub fn is_ldp(a: &Matrix, r: &Rational, k: &Rational) -> Result<bool> {
    check_ldp_params(r, k)?;
    let m = match a.kind() {
        SemiringKind::MinPlus => a.clone(),
        SemiringKind::MaxPlus => a.negate(),
    };
    let two_r = r + r;
    let n = m.dim();
    for i in 0..n {
        for j in 0..n {
            let Some(v) = m.get(i, j).finite() else {
                return Ok(false);
            };
            let ok = if i == j { v == k } else { v >= r && *v <= two_r };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Samples an integer Linde–de la Puente matrix: diagonal `k`, off-diagonal
/// entries uniform in `[r, 2r]`.
pub fn sample_ldp<R: Rng + ?Sized>(r: i64, k: i64, dim: usize, kind: SemiringKind, rng: &mut R) -> Result<Matrix> {
    check_ldp_params(&Rational::from_int(r), &Rational::from_int(k))?;
    if dim == 0 {
        return Err(Error::EmptyMatrix);
    }
    let m = Matrix::from_fn(SemiringKind::MinPlus, dim, |i, j| {
        Scalar::int(if i == j { k } else { rng.gen_range(r..=2 * r) })
    })?;
    Ok(match kind {
        SemiringKind::MinPlus => m,
        SemiringKind::MaxPlus => m.negate(),
    })
}

/// Samples an integer Jones matrix as `a_ij = a_ii − c_ij`, where `c` is the
/// shortest-path closure of random non-negative weights. Every Jones matrix
/// with finite entries has this form, and the closure guarantees the
/// triangle inequality `c_ik ≤ c_ij + c_jk` that the condition reduces to.
pub fn sample_jones<R: Rng + ?Sized>(dim: usize, diag: (i64, i64), spread: i64, rng: &mut R) -> Result<Matrix> {
    if dim == 0 {
        return Err(Error::EmptyMatrix);
    }
    if diag.0 > diag.1 || spread < 0 {
        return Err(Error::InvalidRange { lo: diag.0, hi: diag.1 });
    }
    let mut c = vec![vec![0i64; dim]; dim];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            if i != j {
                *v = rng.gen_range(0..=spread);
            }
        }
    }
    for m in 0..dim {
        for i in 0..dim {
            for j in 0..dim {
                let via = c[i][m] + c[m][j];
                if via < c[i][j] {
                    c[i][j] = via;
                }
            }
        }
    }
    let d: Vec<i64> = (0..dim).map(|_| rng.gen_range(diag.0..=diag.1)).collect();
    Matrix::from_fn(SemiringKind::MaxPlus, dim, |i, j| Scalar::int(d[i] - c[i][j]))
}

/// `A ⊗ B == B ⊗ A`.
pub fn commute_check(a: &Matrix, b: &Matrix) -> Result<bool> {
    a.commutes_with(b)
}

fn sample_range<R: Rng + ?Sized>(range: (i64, i64), rng: &mut R) -> Result<i64> {
    if range.0 > range.1 {
        return Err(Error::InvalidRange {
            lo: range.0,
            hi: range.1,
        });
    }
    Ok(rng.gen_range(range.0..=range.1))
}

/// A pairwise-commuting subset of the matrix semigroup, described by how to
/// draw members from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FamilySpec {
    /// `p(base)` for random `p` of degree `max_degree`.
    PolyOf {
        base: Matrix,
        max_degree: u32,
        coeff_range: (i64, i64),
    },
    Circulant {
        kind: SemiringKind,
        dim: usize,
        value_range: (i64, i64),
    },
    UpperTCirculant {
        kind: SemiringKind,
        dim: usize,
        t: Rational,
        value_range: (i64, i64),
    },
    LowerSCirculant {
        kind: SemiringKind,
        dim: usize,
        s: Rational,
        value_range: (i64, i64),
    },
    /// Deformations `base^{(α)}` with `α = n / denominator ∈ alpha_range`.
    JonesDeform {
        base: Matrix,
        alpha_range: (Rational, Rational),
        denominator: u32,
    },
    /// Linde–de la Puente matrices with `r` and `k` drawn per member. Any two
    /// such matrices commute, whatever their parameters.
    LindeDeLaPuente {
        kind: SemiringKind,
        dim: usize,
        r_range: (i64, i64),
        k_range: (i64, i64),
    },
}

impl FamilySpec {
    pub fn kind(&self) -> SemiringKind {
        match self {
            FamilySpec::PolyOf { base, .. } | FamilySpec::JonesDeform { base, .. } => base.kind(),
            FamilySpec::Circulant { kind, .. }
            | FamilySpec::UpperTCirculant { kind, .. }
            | FamilySpec::LowerSCirculant { kind, .. }
            | FamilySpec::LindeDeLaPuente { kind, .. } => *kind,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            FamilySpec::PolyOf { base, .. } | FamilySpec::JonesDeform { base, .. } => base.dim(),
            FamilySpec::Circulant { dim, .. }
            | FamilySpec::UpperTCirculant { dim, .. }
            | FamilySpec::LowerSCirculant { dim, .. }
            | FamilySpec::LindeDeLaPuente { dim, .. } => *dim,
        }
    }

    /// Checks the invariants that make the family pairwise commuting.
    pub fn validate(&self) -> Result<()> {
        let check_range = |r: (i64, i64)| {
            if r.0 > r.1 {
                Err(Error::InvalidRange { lo: r.0, hi: r.1 })
            } else {
                Ok(())
            }
        };
        if self.dim() == 0 {
            return Err(Error::EmptyMatrix);
        }
        match self {
            FamilySpec::PolyOf { coeff_range, .. } => check_range(*coeff_range),
            FamilySpec::Circulant { value_range, .. }
            | FamilySpec::UpperTCirculant { value_range, .. }
            | FamilySpec::LowerSCirculant { value_range, .. } => check_range(*value_range),
            FamilySpec::JonesDeform {
                base,
                alpha_range,
                denominator,
            } => {
                if !is_jones(base) {
                    return Err(Error::NotJones);
                }
                base.ensure_finite()?;
                let one = Rational::from_int(1);
                for a in [&alpha_range.0, &alpha_range.1] {
                    if a.is_negative() || *a > one {
                        return Err(Error::AlphaOutOfRange(a.clone()));
                    }
                }
                if *denominator == 0 || alpha_range.0 > alpha_range.1 || self.alpha_numerators().is_none() {
                    return Err(Error::Parse("empty alpha grid".into()));
                }
                Ok(())
            }
            FamilySpec::LindeDeLaPuente { r_range, k_range, .. } => {
                check_range(*r_range)?;
                check_range(*k_range)?;
                check_ldp_params(&Rational::from_int(r_range.0), &Rational::from_int(k_range.1))
            }
        }
    }

    fn alpha_numerators(&self) -> Option<(i64, i64)> {
        let FamilySpec::JonesDeform {
            alpha_range,
            denominator,
            ..
        } = self
        else {
            return None;
        };
        let d = Rational::from_int(*denominator as i64);
        let lo = (&alpha_range.0 * &d).ceil().to_i64()?;
        let hi = (&alpha_range.1 * &d).floor().to_i64()?;
        (lo <= hi).then_some((lo, hi))
    }

    /// Draws one member of the family.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Matrix> {
        self.validate()?;
        let values = |dim: usize, range: (i64, i64), rng: &mut R| -> Result<Vec<Scalar>> {
            (0..dim).map(|_| sample_range(range, rng).map(Scalar::int)).collect()
        };
        match self {
            FamilySpec::PolyOf {
                base,
                max_degree,
                coeff_range,
            } => {
                let coeffs = (0..=*max_degree)
                    .map(|_| sample_range(*coeff_range, rng).map(Scalar::int))
                    .collect::<Result<Vec<_>>>()?;
                TropPolynomial::new(coeffs)?.eval(base)
            }
            FamilySpec::Circulant { kind, dim, value_range } => {
                make_circulant(&values(*dim, *value_range, rng)?, *kind)
            }
            FamilySpec::UpperTCirculant {
                kind,
                dim,
                t,
                value_range,
            } => make_upper_t_circulant(&Scalar::Finite(t.clone()), &values(*dim, *value_range, rng)?, *kind),
            FamilySpec::LowerSCirculant {
                kind,
                dim,
                s,
                value_range,
            } => make_lower_s_circulant(&Scalar::Finite(s.clone()), &values(*dim, *value_range, rng)?, *kind),
            FamilySpec::JonesDeform { base, denominator, .. } => {
                let (lo, hi) = self.alpha_numerators().expect("validated");
                let alpha = Rational::new(rng.gen_range(lo..=hi), *denominator as i64);
                deform(base, &alpha)
            }
            FamilySpec::LindeDeLaPuente {
                kind,
                dim,
                r_range,
                k_range,
            } => {
                let r = sample_range(*r_range, rng)?;
                let k = sample_range(*k_range, rng)?;
                sample_ldp(r, k, *dim, *kind, rng)
            }
        }
    }

    /// The base matrix whose powers span the family, for polynomial families.
    pub fn poly_base(&self) -> Option<&Matrix> {
        match self {
            FamilySpec::PolyOf { base, .. } => Some(base),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    #[test]
    fn circulant_layout() {
        let c = make_circulant(&ints(&[1, 2, 3]), SemiringKind::MinPlus).unwrap();
        assert_eq!(c, Matrix::min_plus([[1, 2, 3], [3, 1, 2], [2, 3, 1]]));
        assert!(is_circulant(&c));
        let one = make_circulant(&ints(&[4]), SemiringKind::MinPlus).unwrap();
        assert_eq!(one, Matrix::min_plus([[4]]));
        assert_eq!(make_circulant(&[], SemiringKind::MinPlus), Err(Error::EmptyValues));
    }

    #[test]
    fn cyclic_permutation_matrix() {
        let kind = SemiringKind::MinPlus;
        let mut v = vec![kind.zero(); 3];
        v[2] = kind.one();
        let p = make_circulant(&v, kind).unwrap();
        // each row holds exactly one zero, and the pattern is a permutation
        for i in 0..3 {
            let row: Vec<_> = (0..3).filter(|&j| p.get(i, j) == &kind.one()).collect();
            assert_eq!(row.len(), 1);
        }
        assert_eq!(p.pow(3), Matrix::identity(kind, 3));
    }

    #[test]
    fn t_and_s_circulants() {
        let kind = SemiringKind::MinPlus;
        let five = Scalar::int(5);
        let u = make_upper_t_circulant(&five, &ints(&[1, 2]), kind).unwrap();
        assert_eq!(u, Matrix::min_plus([[1, 7], [2, 1]]));
        assert!(is_upper_t_circulant(&u, &five));
        let l = make_lower_s_circulant(&five, &ints(&[1, 2]), kind).unwrap();
        assert_eq!(l, Matrix::min_plus([[1, 2], [7, 1]]));
        assert!(is_lower_s_circulant(&l, &five));
        let plain = make_upper_t_circulant(&Scalar::int(0), &ints(&[1, 2, 3]), kind).unwrap();
        assert_eq!(plain, make_circulant(&ints(&[1, 2, 3]), kind).unwrap());
    }

    #[test]
    fn jones_predicate() {
        assert!(!is_jones(&Matrix::max_plus([[0, 5], [5, 0]])));
        assert!(is_jones(&Matrix::max_plus([[-3]])));
        // rank one: a_ij = u_i + v_j
        assert!(is_jones(&Matrix::max_plus([[1, 3, 0], [2, 4, 1], [-1, 1, -2]])));
        assert!(!is_jones(&Matrix::min_plus([[0]])));
    }

    #[test]
    fn deformation_values() {
        let a = Matrix::max_plus([[2, 1], [1, 3]]);
        assert!(is_jones(&a));
        assert_eq!(deform(&a, &Rational::from_int(1)).unwrap(), a);
        let half = deform(&a, &Rational::new(1, 2)).unwrap();
        let expected = Matrix::from_rows(
            SemiringKind::MaxPlus,
            vec![
                vec![Scalar::int(1), Scalar::ratio(-1, 2)],
                vec![Scalar::ratio(-1, 2), Scalar::ratio(3, 2)],
            ],
        )
        .unwrap();
        assert_eq!(half, expected);
        assert!(matches!(
            deform(&a, &Rational::new(3, 2)),
            Err(Error::AlphaOutOfRange(_))
        ));
        assert_eq!(
            deform(&Matrix::max_plus([[0, 5], [5, 0]]), &Rational::ZERO),
            Err(Error::NotJones)
        );
    }

    #[test]
    fn ldp_membership() {
        let a = Matrix::min_plus([[-1, 1], [2, -1]]);
        assert!(is_ldp(&a, &Rational::from_int(1), &Rational::from_int(-1)).unwrap());
        assert!(!is_ldp(&a, &Rational::from_int(2), &Rational::from_int(-1)).unwrap());
        assert!(is_ldp(&a, &Rational::from_int(-1), &Rational::ZERO).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let z = sample_ldp(0, -3, 3, SemiringKind::MinPlus, &mut rng).unwrap();
        assert!(is_ldp(&z, &Rational::ZERO, &Rational::from_int(-3)).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(z.get(i, j), &Scalar::int(0));
                }
            }
        }
        assert!(sample_ldp(1, 1, 2, SemiringKind::MinPlus, &mut rng).is_err());
    }

    #[test]
    fn ldp_pair_commutes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = sample_ldp(1, -1, 3, SemiringKind::MinPlus, &mut rng).unwrap();
        let b = sample_ldp(3, -2, 3, SemiringKind::MinPlus, &mut rng).unwrap();
        assert!(commute_check(&a, &b).unwrap());
    }

    #[test]
    fn non_commuting_pair_detected() {
        let a = Matrix::min_plus([[0, 3], [1, 5]]);
        let b = Matrix::min_plus([[2, 0], [4, 1]]);
        assert!(!commute_check(&a, &b).unwrap());
        assert!(commute_check(&a, &a).unwrap());
    }

    #[test]
    fn sampled_jones_is_jones() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for dim in 1..=4 {
            let a = sample_jones(dim, (-10, 10), 12, &mut rng).unwrap();
            assert!(is_jones(&a), "{a:?}");
        }
    }

    #[test]
    fn family_spec_validation() {
        let bad = FamilySpec::JonesDeform {
            base: Matrix::max_plus([[0, 5], [5, 0]]),
            alpha_range: (Rational::ZERO, Rational::from_int(1)),
            denominator: 2,
        };
        assert_eq!(bad.validate(), Err(Error::NotJones));
        let bad_ldp = FamilySpec::LindeDeLaPuente {
            kind: SemiringKind::MinPlus,
            dim: 2,
            r_range: (-1, 3),
            k_range: (-2, 0),
        };
        assert!(bad_ldp.validate().is_err());
    }
}
