//! Marginal sets: tuples that leave a word's value unchanged when substituted
//! into its free slots.

mod residual;
mod sampler;

use std::collections::HashSet;

pub use residual::{
    cover_check, five_factor_residual, max_possible_matrix, n_factor_residual, residual_left, residual_right,
    two_sided_residual, FiveFactorResidual, NFactorResidual, Side, Tensor,
};
pub use sampler::{
    additive_marginal_bound, five_factor_constraints, sample_additive_marginal, sample_five_factor_marginal,
    sample_left_marginal, sample_n_factor_marginal, sample_right_marginal, sample_sandwich_marginal,
    sandwich_constraints, single_slot_draw, solution_matrices, RETRY_BUDGET,
};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::SemiringKind;

/// One factor of a summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    /// Index into the template's constants.
    Const(usize),
    /// Free multiplicative slot; neutral value `I`.
    Slot(usize),
}

/// `w = ⊕_t (product of atoms) ⊕ ◯_1 ⊕ … ⊕ ◯_c`.
///
/// A tuple fills the multiplicative slots in index order, then the circle
/// (additive) slots in index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordTemplate {
    kind: SemiringKind,
    dim: usize,
    constants: Vec<Matrix>,
    summands: Vec<Vec<Atom>>,
    circles: Vec<usize>,
    slots: usize,
}

fn check_permutation(ids: &[usize], what: &str) -> Result<()> {
    let mut seen = vec![false; ids.len()];
    for &i in ids {
        if i >= ids.len() || seen[i] {
            return Err(Error::Template(format!(
                "{what} slots must be numbered 0..{} with each used once",
                ids.len()
            )));
        }
        seen[i] = true;
    }
    Ok(())
}

impl WordTemplate {
    pub fn new(constants: Vec<Matrix>, summands: Vec<Vec<Atom>>, circles: Vec<usize>) -> Result<Self> {
        let first = constants
            .first()
            .ok_or_else(|| Error::Template("a word needs at least one constant".into()))?;
        let (kind, dim) = (first.kind(), first.dim());
        for c in &constants {
            if c.kind() != kind {
                return Err(Error::KindMismatch(kind, c.kind()));
            }
            if c.dim() != dim {
                return Err(Error::DimensionMismatch(dim, c.dim()));
            }
        }
        if summands.is_empty() && circles.is_empty() {
            return Err(Error::Template("empty word".into()));
        }
        let mut slot_ids = Vec::new();
        for atom in summands.iter().flatten() {
            match *atom {
                Atom::Const(i) if i >= constants.len() => {
                    return Err(Error::Template(format!("constant c{i} is not defined")));
                }
                Atom::Slot(i) => slot_ids.push(i),
                Atom::Const(_) => {}
            }
        }
        check_permutation(&slot_ids, "multiplicative")?;
        check_permutation(&circles, "additive")?;
        Ok(WordTemplate {
            kind,
            dim,
            constants,
            summands,
            circles,
            slots: slot_ids.len(),
        })
    }

    /// A single product of constants and slots.
    pub fn product(constants: Vec<Matrix>, atoms: Vec<Atom>) -> Result<Self> {
        WordTemplate::new(constants, vec![atoms], vec![])
    }

    /// `A ⊗ □`.
    pub fn right(a: &Matrix) -> Self {
        WordTemplate::product(vec![a.clone()], vec![Atom::Const(0), Atom::Slot(0)]).expect("well-formed")
    }

    /// `□ ⊗ A`.
    pub fn left(a: &Matrix) -> Self {
        WordTemplate::product(vec![a.clone()], vec![Atom::Slot(0), Atom::Const(0)]).expect("well-formed")
    }

    /// `□₁ ⊗ A ⊗ □₂`.
    pub fn sandwich(a: &Matrix) -> Self {
        WordTemplate::product(vec![a.clone()], vec![Atom::Slot(0), Atom::Const(0), Atom::Slot(1)]).expect("well-formed")
    }

    /// `A₀ ⊗ □₁ ⊗ A₁ ⊗ … ⊗ □ₙ ⊗ Aₙ`.
    pub fn chain(chain: &[Matrix]) -> Result<Self> {
        if chain.len() < 2 {
            return Err(Error::Template("a chain needs at least two constants".into()));
        }
        let mut atoms = vec![Atom::Const(0)];
        for i in 1..chain.len() {
            atoms.push(Atom::Slot(i - 1));
            atoms.push(Atom::Const(i));
        }
        WordTemplate::product(chain.to_vec(), atoms)
    }

    /// `A ⊗ □₁ ⊗ B ⊗ □₂ ⊗ C`.
    pub fn five_factor(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<Self> {
        WordTemplate::chain(&[a.clone(), b.clone(), c.clone()])
    }

    /// `A ⊕ ◯`.
    pub fn additive(a: &Matrix) -> Self {
        WordTemplate::new(vec![a.clone()], vec![vec![Atom::Const(0)]], vec![0]).expect("well-formed")
    }

    pub fn kind(&self) -> SemiringKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[Matrix] {
        &self.constants
    }

    pub fn summands(&self) -> &[Vec<Atom>] {
        &self.summands
    }

    pub fn circles(&self) -> &[usize] {
        &self.circles
    }

    /// Number of multiplicative slots.
    pub fn slot_count(&self) -> usize {
        self.slots
    }

    /// Total tuple length: multiplicative slots plus circles.
    pub fn arity(&self) -> usize {
        self.slots + self.circles.len()
    }

    fn check_tuple(&self, tuple: &[Matrix]) -> Result<()> {
        if tuple.len() != self.arity() {
            return Err(Error::Arity {
                expected: self.arity(),
                got: tuple.len(),
            });
        }
        for m in tuple {
            if m.kind() != self.kind {
                return Err(Error::KindMismatch(self.kind, m.kind()));
            }
            if m.dim() != self.dim {
                return Err(Error::DimensionMismatch(self.dim, m.dim()));
            }
        }
        Ok(())
    }

    /// Evaluates the word with `tuple` substituted into its slots.
    pub fn eval(&self, tuple: &[Matrix]) -> Result<Matrix> {
        self.check_tuple(tuple)?;
        let mut acc = Matrix::zero(self.kind, self.dim);
        for summand in &self.summands {
            let mut term = Matrix::identity(self.kind, self.dim);
            for atom in summand {
                let m = match *atom {
                    Atom::Const(i) => &self.constants[i],
                    Atom::Slot(i) => &tuple[i],
                };
                term = term.mul(m)?;
            }
            acc = acc.add(&term)?;
        }
        for &c in &self.circles {
            acc = acc.add(&tuple[self.slots + c])?;
        }
        Ok(acc)
    }

    /// The neutral tuple: identities in the slots, zero matrices in the circles.
    pub fn neutral_tuple(&self) -> Vec<Matrix> {
        let mut t = vec![Matrix::identity(self.kind, self.dim); self.slots];
        t.extend(std::iter::repeat_n(
            Matrix::zero(self.kind, self.dim),
            self.circles.len(),
        ));
        t
    }

    /// The word's value at the neutral tuple.
    pub fn base_value(&self) -> Matrix {
        self.eval(&self.neutral_tuple()).expect("neutral tuple fits")
    }
}

/// Whether substituting `tuple` leaves the word's value unchanged.
pub fn verify_marginal(w: &WordTemplate, tuple: &[Matrix]) -> Result<bool> {
    Ok(w.eval(tuple)? == w.base_value())
}

/// A deduplicated set of tuples, each verified marginal for the template.
#[derive(Debug, Clone)]
pub struct MarginalSet {
    template: WordTemplate,
    base: Matrix,
    tuples: Vec<Vec<Matrix>>,
    seen: HashSet<Vec<Matrix>>,
}

impl MarginalSet {
    pub fn new(template: WordTemplate) -> Self {
        let base = template.base_value();
        MarginalSet {
            template,
            base,
            tuples: Vec::new(),
            seen: HashSet::new(),
        }
    }

    /// Adds `tuple` if it is new. Rejects tuples that are not marginal.
    pub fn insert(&mut self, tuple: Vec<Matrix>) -> Result<bool> {
        if self.template.eval(&tuple)? != self.base {
            return Err(Error::NotMarginal);
        }
        if self.seen.contains(&tuple) {
            return Ok(false);
        }
        self.seen.insert(tuple.clone());
        self.tuples.push(tuple);
        Ok(true)
    }

    pub fn template(&self) -> &WordTemplate {
        &self.template
    }

    pub fn tuples(&self) -> &[Vec<Matrix>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn into_tuples(self) -> Vec<Vec<Matrix>> {
        self.tuples
    }
}
