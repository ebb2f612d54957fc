//! Residuation bounds for one-sided, two-sided and chained marginal words.
//!
//! Everything is computed over min-plus. A max-plus input is negated, solved
//! over min-plus, and the bounds negated back, so over max-plus the bounds
//! are upper rather than lower bounds.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::semiring::{Scalar, SemiringKind};

/// Which side of `A` the unknown sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `A ⊗ X = A`.
    Right,
    /// `X ⊗ A = A`.
    Left,
}

fn to_min_plus(a: &Matrix) -> Result<Matrix> {
    a.ensure_finite()?;
    Ok(match a.kind() {
        SemiringKind::MinPlus => a.clone(),
        SemiringKind::MaxPlus => a.negate(),
    })
}

fn from_min_plus(m: Matrix, kind: SemiringKind) -> Matrix {
    match kind {
        SemiringKind::MinPlus => m,
        SemiringKind::MaxPlus => m.negate(),
    }
}

fn max_over<I: Iterator<Item = Rational>>(it: I) -> Rational {
    it.reduce(Rational::max).expect("non-empty range")
}

fn residual_min(a: &Matrix, side: Side) -> Matrix {
    let k = a.dim();
    Matrix::from_fn(SemiringKind::MinPlus, k, |i, j| {
        Scalar::Finite(max_over((0..k).map(|l| match side {
            Side::Right => a.fin(l, j) - a.fin(l, i),
            Side::Left => a.fin(i, l) - a.fin(j, l),
        })))
    })
    .expect("positive dimension")
}

/// `X*` with `x*_ij = max_l (a_lj − a_li)`: `A ⊗ X = A` forces `X ≥ X*`.
pub fn residual_right(a: &Matrix) -> Result<Matrix> {
    Ok(from_min_plus(residual_min(&to_min_plus(a)?, Side::Right), a.kind()))
}

/// `X*` with `x*_ij = max_l (a_il − a_jl)`: `X ⊗ A = A` forces `X ≥ X*`.
pub fn residual_left(a: &Matrix) -> Result<Matrix> {
    Ok(from_min_plus(residual_min(&to_min_plus(a)?, Side::Left), a.kind()))
}

/// Whether the positions where `X` meets `X*` cover the whole index grid,
/// which holds exactly when `X` solves the one-sided equation.
pub fn cover_check(a: &Matrix, x: &Matrix, side: Side) -> Result<bool> {
    if a.kind() != x.kind() {
        return Err(Error::KindMismatch(a.kind(), x.kind()));
    }
    if a.dim() != x.dim() {
        return Err(Error::DimensionMismatch(a.dim(), x.dim()));
    }
    let am = to_min_plus(a)?;
    let xm = match x.kind() {
        SemiringKind::MinPlus => x.clone(),
        SemiringKind::MaxPlus => x.negate(),
    };
    let star = residual_min(&am, side);
    if !xm.dominates(&star) {
        return Err(Error::BelowResidual);
    }
    let k = a.dim();
    let mut covered = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            if xm.get(i, j) != star.get(i, j) {
                continue;
            }
            let x_star = star.fin(i, j);
            for l in 0..k {
                // M_ij: the entries of the product that x_ij reproduces exactly.
                match side {
                    Side::Right if *x_star == am.fin(l, j) - am.fin(l, i) => covered[l * k + j] = true,
                    Side::Left if *x_star == am.fin(i, l) - am.fin(j, l) => covered[i * k + l] = true,
                    _ => {}
                }
            }
        }
    }
    Ok(covered.into_iter().all(|c| c))
}

/// `p_ij = x*_ij` on `T`, `max(l, x*_ij)` elsewhere.
pub fn max_possible_matrix(t: &BTreeSet<(usize, usize)>, x_star: &Matrix, l: &Scalar) -> Matrix {
    Matrix::from_fn(x_star.kind(), x_star.dim(), |i, j| {
        let x = x_star.get(i, j);
        if t.contains(&(i, j)) {
            x.clone()
        } else {
            x.clone().max(l.clone())
        }
    })
    .expect("same shape as X*")
}

/// A dense table indexed by `order` indices, each in `0..dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    dim: usize,
    order: usize,
    data: Vec<Rational>,
}

impl Tensor {
    fn from_fn(dim: usize, order: usize, mut f: impl FnMut(&[usize]) -> Rational) -> Tensor {
        let len = dim.pow(order as u32);
        let mut data = Vec::with_capacity(len);
        let mut idx = vec![0; order];
        for _ in 0..len {
            data.push(f(&idx));
            for slot in idx.iter_mut().rev() {
                *slot += 1;
                if *slot < dim {
                    break;
                }
                *slot = 0;
            }
        }
        Tensor { dim, order, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry at `idx`; the first index varies slowest.
    pub fn get(&self, idx: &[usize]) -> &Rational {
        assert_eq!(idx.len(), self.order, "tensor index arity");
        let flat = idx.iter().fold(0, |acc, &i| {
            assert!(i < self.dim, "tensor index out of range");
            acc * self.dim + i
        });
        &self.data[flat]
    }

    pub fn values(&self) -> &[Rational] {
        &self.data
    }

    /// Order-4 tensor laid out as a `k × k` grid of `k × k` blocks: the first
    /// two indices pick the block, the last two the entry inside it.
    pub fn block_rows(&self) -> Vec<Vec<Rational>> {
        assert_eq!(self.order, 4, "block layout needs four indices");
        let k = self.dim;
        (0..k * k)
            .map(|row| {
                let (p, r) = (row / k, row % k);
                (0..k * k)
                    .map(|col| self.get(&[p, col / k, r, col % k]).clone())
                    .collect()
            })
            .collect()
    }

    fn negate(self) -> Tensor {
        Tensor {
            data: self.data.into_iter().map(|v| -v).collect(),
            ..self
        }
    }
}

fn common_shape(ms: &[Matrix]) -> Result<(SemiringKind, usize)> {
    let first = ms.first().ok_or(Error::EmptyValues)?;
    for m in ms {
        if m.kind() != first.kind() {
            return Err(Error::KindMismatch(first.kind(), m.kind()));
        }
        if m.dim() != first.dim() {
            return Err(Error::DimensionMismatch(first.dim(), m.dim()));
        }
    }
    Ok((first.kind(), first.dim()))
}

/// Bounds `x_ip + y_qj ≥ a_ij − a_pq` for `X ⊗ A ⊗ Y = A`, indexed `[i, p, q, j]`.
pub fn two_sided_residual(a: &Matrix) -> Result<Tensor> {
    let am = to_min_plus(a)?;
    let t = Tensor::from_fn(a.dim(), 4, |ix| am.fin(ix[0], ix[3]) - am.fin(ix[1], ix[2]));
    Ok(match a.kind() {
        SemiringKind::MinPlus => t,
        SemiringKind::MaxPlus => t.negate(),
    })
}

/// Residual data for `A₀ ⊗ X₁ ⊗ A₁ ⊗ … ⊗ Xₙ ⊗ Aₙ = A₀ ⊗ … ⊗ Aₙ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NFactorResidual {
    /// The chain product.
    pub d: Matrix,
    /// Indexed `[p₁, q₁, …, pₙ, qₙ]`: the bound on `x₁[p₁,q₁] + … + xₙ[pₙ,qₙ]`.
    pub tensor: Tensor,
}

/// `x*_{p₁q₁…pₙqₙ} = max_ij (d_ij − a₀[i,p₁] − a₁[q₁,p₂] − … − aₙ[qₙ,j])`.
pub fn n_factor_residual(chain: &[Matrix]) -> Result<NFactorResidual> {
    if chain.len() < 2 {
        return Err(Error::Template("a chain needs at least two constants".into()));
    }
    let (kind, k) = common_shape(chain)?;
    let mins = chain.iter().map(to_min_plus).collect::<Result<Vec<_>>>()?;
    let d = Matrix::product(&mins)?;
    let n = chain.len() - 1;
    let tensor = Tensor::from_fn(k, 2 * n, |ix| {
        // Inner sum over the interior factors, shared by every (i, j).
        let mut inner = Rational::ZERO;
        for m in 1..n {
            inner = &inner + mins[m].fin(ix[2 * m - 1], ix[2 * m]);
        }
        let (p1, qn) = (ix[0], ix[2 * n - 1]);
        max_over(
            (0..k)
                .flat_map(|i| (0..k).map(move |j| (i, j)))
                .map(|(i, j)| &(&(d.fin(i, j) - mins[0].fin(i, p1)) - &inner) - mins[n].fin(qn, j)),
        )
    });
    Ok(match kind {
        SemiringKind::MinPlus => NFactorResidual { d, tensor },
        SemiringKind::MaxPlus => NFactorResidual {
            d: d.negate(),
            tensor: tensor.negate(),
        },
    })
}

/// Residual data for `A ⊗ X ⊗ B ⊗ Y ⊗ C = A ⊗ B ⊗ C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiveFactorResidual {
    pub d: Matrix,
    /// Indexed `[p, q, r, s]`: the bound on `x_pq + y_rs`.
    pub tensor: Tensor,
    /// Pairs `(p, r)` with `x*_pprr = 0`.
    pub p: BTreeSet<(usize, usize)>,
    pub px: BTreeSet<usize>,
    pub py: BTreeSet<usize>,
}

pub fn five_factor_residual(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<FiveFactorResidual> {
    let NFactorResidual { d, tensor } = n_factor_residual(&[a.clone(), b.clone(), c.clone()])?;
    let k = a.dim();
    let p: BTreeSet<(usize, usize)> = (0..k)
        .flat_map(|p| (0..k).map(move |r| (p, r)))
        .filter(|&(p, r)| tensor.get(&[p, p, r, r]).is_zero())
        .collect();
    let px = p.iter().map(|&(p, _)| p).collect();
    let py = p.iter().map(|&(_, r)| r).collect();
    Ok(FiveFactorResidual { d, tensor, p, px, py })
}
