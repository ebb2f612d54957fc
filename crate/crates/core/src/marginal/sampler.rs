//! Randomised constructions of marginal sets.
//!
//! Samplers work over min-plus. For a max-plus word the inputs are negated,
//! sampled with the same parameters, and every output matrix is negated back.

use std::collections::BTreeSet;

use rand::Rng;

use super::residual::{
    five_factor_residual, max_possible_matrix, n_factor_residual, residual_left, residual_right, two_sided_residual,
    FiveFactorResidual,
};
use super::{MarginalSet, WordTemplate};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::semiring::{Scalar, SemiringKind};
use crate::solver::{solve_feasible_min, Assignment, ConstraintSystem, Tag, VarId};

/// Attempts allowed per requested tuple before a sampler gives up.
pub const RETRY_BUDGET: usize = 64;

fn check_range(lo: i64, hi: i64) -> Result<()> {
    if lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    Ok(())
}

fn to_min(m: &Matrix) -> Matrix {
    match m.kind() {
        SemiringKind::MinPlus => m.clone(),
        SemiringKind::MaxPlus => m.negate(),
    }
}

fn back(m: Matrix, kind: SemiringKind) -> Matrix {
    match kind {
        SemiringKind::MinPlus => m,
        SemiringKind::MaxPlus => m.negate(),
    }
}

/// Fills `set` up to `n` tuples from `draw`, within the retry budget.
fn fill<F>(mut set: MarginalSet, n: usize, mut draw: F) -> Result<MarginalSet>
where
    F: FnMut() -> Result<Option<Vec<Matrix>>>,
{
    let budget = RETRY_BUDGET * n.max(1);
    let mut attempts = 0;
    while set.len() < n {
        if attempts == budget {
            return Err(Error::SamplerExhausted {
                wanted: n,
                got: set.len(),
                attempts,
            });
        }
        attempts += 1;
        if let Some(tuple) = draw()? {
            set.insert(tuple)?;
        }
    }
    Ok(set)
}

/// `lo + u` for a uniform integer `u ∈ [0, ⌊hi − lo⌋]`.
fn uniform_between<R: Rng + ?Sized>(lo: &Rational, hi: &Rational, rng: &mut R) -> Rational {
    let span = (hi - lo).floor().to_i64().expect("sampling span fits in i64");
    lo + &Rational::from_int(rng.gen_range(0..=span))
}

fn one_sided<R: Rng + ?Sized>(
    a: &Matrix,
    n: usize,
    l: i64,
    star: Matrix,
    template: WordTemplate,
    rng: &mut R,
) -> Result<MarginalSet> {
    let kind = a.kind();
    let star = to_min(&star);
    let diag: BTreeSet<_> = (0..a.dim()).map(|i| (i, i)).collect();
    let hat = max_possible_matrix(&diag, &star, &Scalar::int(l));
    fill(MarginalSet::new(template), n, || {
        let x = Matrix::from_fn(SemiringKind::MinPlus, a.dim(), |i, j| {
            Scalar::Finite(uniform_between(star.fin(i, j), hat.fin(i, j), rng))
        })?;
        Ok(Some(vec![back(x, kind)]))
    })
}

/// `n` distinct `X` with `A ⊗ X = A`, each entry uniform between `X*` and `X̂`
/// (threshold `l`, diagonal pinned).
pub fn sample_right_marginal<R: Rng + ?Sized>(a: &Matrix, n: usize, l: i64, rng: &mut R) -> Result<MarginalSet> {
    let star = residual_right(a)?;
    one_sided(a, n, l, star, WordTemplate::right(a), rng)
}

/// `n` distinct `X` with `X ⊗ A = A`.
pub fn sample_left_marginal<R: Rng + ?Sized>(a: &Matrix, n: usize, l: i64, rng: &mut R) -> Result<MarginalSet> {
    let star = residual_left(a)?;
    one_sided(a, n, l, star, WordTemplate::left(a), rng)
}

/// Reads the X and Y matrices out of a solver assignment.
pub fn solution_matrices(sol: &Assignment, k: usize) -> Result<(Matrix, Matrix)> {
    let read = |tag: Tag| {
        Matrix::from_fn(SemiringKind::MinPlus, k, |i, j| {
            Scalar::Finite(sol[&VarId { tag, row: i, col: j }].clone())
        })
    };
    Ok((read(Tag::X)?, read(Tag::Y)?))
}

fn pair_system(
    k: usize,
    bounds: impl Fn(usize, usize, usize, usize) -> Rational,
    equalities: &[(usize, usize)],
    r: &Matrix,
    s: &Matrix,
) -> Result<ConstraintSystem> {
    for m in [r, s] {
        if m.dim() != k {
            return Err(Error::DimensionMismatch(k, m.dim()));
        }
        m.ensure_finite()?;
    }
    let mut sys = ConstraintSystem::new();
    for p in 0..k {
        for q in 0..k {
            for u in 0..k {
                for v in 0..k {
                    sys.ge(VarId::x(p, q), VarId::y(u, v), bounds(p, q, u, v));
                }
            }
        }
    }
    for &(p, u) in equalities {
        sys.equal(VarId::x(p, p), VarId::y(u, u), 0);
    }
    for i in 0..k {
        for j in 0..k {
            sys.bound(VarId::x(i, j), r.fin(i, j).clone());
            sys.bound(VarId::y(i, j), s.fin(i, j).clone());
        }
    }
    Ok(sys)
}

/// Constraints for `X ⊗ A ⊗ Y = A` over min-plus: `x_ip + y_qj ≥ a_ij − a_pq`,
/// `x_ii + y_jj = 0`, `X ≥ R` and `Y ≥ S`.
pub fn sandwich_constraints(a: &Matrix, r: &Matrix, s: &Matrix) -> Result<ConstraintSystem> {
    let t = two_sided_residual(a)?;
    let k = a.dim();
    let equalities: Vec<_> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    pair_system(k, |i, p, q, j| t.get(&[i, p, q, j]).clone(), &equalities, r, s)
}

/// Constraints for `A ⊗ X ⊗ B ⊗ Y ⊗ C = A ⊗ B ⊗ C` over min-plus:
/// `x_pq + y_rs ≥ x*_pqrs`, `x_pp + y_rr = 0` on `P`, `X ≥ R` and `Y ≥ S`.
pub fn five_factor_constraints(res: &FiveFactorResidual, r: &Matrix, s: &Matrix) -> Result<ConstraintSystem> {
    let equalities: Vec<_> = res.p.iter().copied().collect();
    pair_system(
        res.tensor.dim(),
        |p, q, u, v| res.tensor.get(&[p, q, u, v]).clone(),
        &equalities,
        r,
        s,
    )
}

fn solve_pair(sys: &ConstraintSystem, k: usize) -> Result<Option<(Matrix, Matrix)>> {
    match solve_feasible_min(sys) {
        Ok(sol) => solution_matrices(&sol, k).map(Some),
        Err(Error::Infeasible) => Ok(None),
        Err(e) => Err(e),
    }
}

fn random_grid<R: Rng + ?Sized>(
    k: usize,
    l1: i64,
    l2: i64,
    rng: &mut R,
    mut pinned: impl FnMut(usize, usize) -> Option<i64>,
) -> Matrix {
    let mut draw = |i, j| Scalar::int(pinned(i, j).unwrap_or_else(|| rng.gen_range(l1..=l2)));
    Matrix::from_fn(SemiringKind::MinPlus, k, &mut draw).expect("positive dimension")
}

/// `n` distinct pairs `(X, Y)` with `X ⊗ A ⊗ Y = A`.
///
/// Each draw picks `d ∈ [l1, l2]`, pins the diagonal bounds to `d` and `−d`,
/// draws the remaining bounds from `[l1, l2]`, and takes the solver's
/// canonical solution.
pub fn sample_sandwich_marginal<R: Rng + ?Sized>(
    a: &Matrix,
    n: usize,
    l1: i64,
    l2: i64,
    rng: &mut R,
) -> Result<MarginalSet> {
    check_range(l1, l2)?;
    let kind = a.kind();
    let am = to_min(a);
    am.ensure_finite()?;
    let k = a.dim();
    fill(MarginalSet::new(WordTemplate::sandwich(a)), n, || {
        let d = rng.gen_range(l1..=l2);
        let r = random_grid(k, l1, l2, rng, |i, j| (i == j).then_some(d));
        let s = random_grid(k, l1, l2, rng, |i, j| (i == j).then_some(-d));
        let pair = solve_pair(&sandwich_constraints(&am, &r, &s)?, k)?;
        Ok(pair.map(|(x, y)| vec![back(x, kind), back(y, kind)]))
    })
}

/// One draw of an `(X, Y)` pair, or `None` when the draw was rejected.
type PairDraw = Result<Option<(Matrix, Matrix)>>;

fn five_factor_draw<R: Rng + ?Sized>(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    l1: i64,
    l2: i64,
) -> Result<impl FnMut(&mut R) -> PairDraw> {
    let res = five_factor_residual(&to_min(a), &to_min(b), &to_min(c))?;
    let k = a.dim();
    Ok(move |rng: &mut R| {
        let h = rng.gen_range(l1..=l2);
        let r = random_grid(k, l1, l2, rng, |i, j| (i == j && res.px.contains(&i)).then_some(h));
        let s = random_grid(k, l1, l2, rng, |i, j| (i == j && res.py.contains(&j)).then_some(-h));
        solve_pair(&five_factor_constraints(&res, &r, &s)?, k)
    })
}

/// `n` distinct pairs `(X, Y)` with `A ⊗ X ⊗ B ⊗ Y ⊗ C = A ⊗ B ⊗ C`.
pub fn sample_five_factor_marginal<R: Rng + ?Sized>(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    n: usize,
    l1: i64,
    l2: i64,
    rng: &mut R,
) -> Result<MarginalSet> {
    check_range(l1, l2)?;
    let kind = a.kind();
    let template = WordTemplate::five_factor(a, b, c)?;
    let mut draw = five_factor_draw(a, b, c, l1, l2)?;
    fill(MarginalSet::new(template), n, || {
        Ok(draw(rng)?.map(|(x, y)| vec![back(x, kind), back(y, kind)]))
    })
}

/// `n` distinct tuples for `A₀ ⊗ X₁ ⊗ A₁ ⊗ … ⊗ Xₘ ⊗ Aₘ`.
///
/// Slots are filled two at a time. With the prefix `L` (everything left of the
/// pair, already fixed) and the suffix `S` (the product of the constants right
/// of the pair), `(X_i, X_{i+1})` is a five-factor draw for `L ⊗ □ ⊗ A_i ⊗ □ ⊗ S`.
/// A final unpaired slot is drawn for `L ⊗ □ ⊗ Aₘ` by [`single_slot_draw`].
pub fn sample_n_factor_marginal<R: Rng + ?Sized>(
    chain: &[Matrix],
    n: usize,
    l1: i64,
    l2: i64,
    rng: &mut R,
) -> Result<MarginalSet> {
    check_range(l1, l2)?;
    let template = WordTemplate::chain(chain)?;
    let kind = template.kind();
    let mins: Vec<Matrix> = chain.iter().map(to_min).collect();
    for m in &mins {
        m.ensure_finite()?;
    }
    let m = mins.len() - 1;
    fill(MarginalSet::new(template), n, || {
        let mut slots = Vec::with_capacity(m);
        let mut prefix = mins[0].clone();
        let mut i = 1;
        while i <= m {
            let drawn = if i < m {
                let suffix = Matrix::product(&mins[i + 1..])?;
                five_factor_draw(&prefix, &mins[i], &suffix, l1, l2)?(rng)?.map(|(x, y)| vec![x, y])
            } else {
                single_slot_draw(&prefix, &mins[m], l1, l2, rng)?.map(|x| vec![x])
            };
            let Some(xs) = drawn else { return Ok(None) };
            for (off, x) in xs.into_iter().enumerate() {
                prefix = prefix.mul(&x)?.mul(&mins[i + off])?;
                slots.push(x);
            }
            i += 2;
        }
        Ok(Some(slots.into_iter().map(|x| back(x, kind)).collect()))
    })
}

/// One `X` with `L ⊗ X ⊗ R = L ⊗ R` over min-plus.
///
/// Every solution satisfies `X ≥ X*` with `x*_pq = max_ij (d_ij − l_ip − r_qj)`.
/// The diagonal positions where `x*_uu = 0` reproduce every entry of `D`, so
/// pinning them and drawing the rest uniformly in `[x*_pq, max(h, x*_pq)]`,
/// `h ∈ [l1, l2]`, always gives a solution.
pub fn single_slot_draw<R: Rng + ?Sized>(
    left: &Matrix,
    right: &Matrix,
    l1: i64,
    l2: i64,
    rng: &mut R,
) -> Result<Option<Matrix>> {
    check_range(l1, l2)?;
    let res = n_factor_residual(&[left.clone(), right.clone()])?;
    let k = left.dim();
    let star = Matrix::from_fn(SemiringKind::MinPlus, k, |p, q| {
        Scalar::Finite(res.tensor.get(&[p, q]).clone())
    })?;
    let pinned: BTreeSet<_> = (0..k).filter(|&u| star.fin(u, u).is_zero()).map(|u| (u, u)).collect();
    let h = rng.gen_range(l1..=l2);
    let hat = max_possible_matrix(&pinned, &star, &Scalar::int(h));
    let x = Matrix::from_fn(SemiringKind::MinPlus, k, |i, j| {
        Scalar::Finite(uniform_between(star.fin(i, j), hat.fin(i, j), rng))
    })?;
    Ok(Some(x))
}

/// `A`: the word `A ⊕ ◯` is unchanged exactly by matrices above `A` (below
/// `A` over max-plus).
pub fn additive_marginal_bound(a: &Matrix) -> Matrix {
    a.clone()
}

/// `n` distinct `X` with `A ⊕ X = A`, each entry `a_ij` shifted away from `A`
/// by a uniform integer in `[0, l]`. Neutral entries stay neutral.
pub fn sample_additive_marginal<R: Rng + ?Sized>(a: &Matrix, n: usize, l: i64, rng: &mut R) -> Result<MarginalSet> {
    check_range(0, l)?;
    let kind = a.kind();
    let am = to_min(a);
    fill(MarginalSet::new(WordTemplate::additive(a)), n, || {
        let x = Matrix::from_fn(SemiringKind::MinPlus, a.dim(), |i, j| match am.get(i, j) {
            Scalar::Finite(v) => Scalar::Finite(v + &Rational::from_int(rng.gen_range(0..=l))),
            other => other.clone(),
        })?;
        Ok(Some(vec![back(x, kind)]))
    })
}
