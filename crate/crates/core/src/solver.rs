//! Feasibility for systems of two-variable sum constraints with per-variable
//! lower bounds.
//!
//! Every sum constraint pairs an X-class variable with a Y-class one. With
//! `z = −x` each constraint becomes a difference constraint, so the whole
//! system is a shortest-path problem from a virtual origin. Bellman–Ford
//! either finds a negative cycle (infeasible) or the largest feasible `z`,
//! i.e. the least feasible `x`; `y` is then the least value compatible with
//! that `x`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Which matrix a variable belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    X,
    Y,
    /// Position in a longer chain; even positions behave like `X`.
    Chain(usize),
}

impl Tag {
    fn is_x_class(self) -> bool {
        match self {
            Tag::X => true,
            Tag::Y => false,
            Tag::Chain(k) => k % 2 == 0,
        }
    }
}

/// One entry `(row, col)` of one unknown matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub tag: Tag,
    pub row: usize,
    pub col: usize,
}

impl VarId {
    pub fn x(row: usize, col: usize) -> Self {
        VarId { tag: Tag::X, row, col }
    }

    pub fn y(row: usize, col: usize) -> Self {
        VarId { tag: Tag::Y, row, col }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumConstraint {
    pub u: VarId,
    pub v: VarId,
    pub c: Rational,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSystem {
    /// `u + v ≥ c`.
    pub sum_ge: Vec<SumConstraint>,
    /// `u + v = c`.
    pub sum_eq: Vec<SumConstraint>,
    pub lower_bound: BTreeMap<VarId, Rational>,
}

pub type Assignment = BTreeMap<VarId, Rational>;

impl ConstraintSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ge(&mut self, u: VarId, v: VarId, c: impl Into<Rational>) -> &mut Self {
        self.sum_ge.push(SumConstraint { u, v, c: c.into() });
        self
    }

    pub fn equal(&mut self, u: VarId, v: VarId, c: impl Into<Rational>) -> &mut Self {
        self.sum_eq.push(SumConstraint { u, v, c: c.into() });
        self
    }

    /// Sets `var ≥ bound`, keeping the tighter bound if one already exists.
    pub fn bound(&mut self, var: VarId, bound: impl Into<Rational>) -> &mut Self {
        let bound = bound.into();
        self.lower_bound
            .entry(var)
            .and_modify(|b| {
                if bound > *b {
                    *b = bound.clone();
                }
            })
            .or_insert(bound);
        self
    }

    fn constraints(&self) -> impl Iterator<Item = (&SumConstraint, bool)> {
        self.sum_ge
            .iter()
            .map(|c| (c, false))
            .chain(self.sum_eq.iter().map(|c| (c, true)))
    }

    fn validate(&self) -> Result<()> {
        for (c, _) in self.constraints() {
            if c.u.tag.is_x_class() == c.v.tag.is_x_class() {
                return Err(Error::MalformedSystem(format!(
                    "{:?} and {:?} are on the same side",
                    c.u, c.v
                )));
            }
            for var in [c.u, c.v] {
                if !self.lower_bound.contains_key(&var) {
                    return Err(Error::MalformedSystem(format!("{var:?} has no lower bound")));
                }
            }
        }
        Ok(())
    }

    /// Whether `a` assigns every variable and satisfies every constraint.
    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        let bounds_ok = self
            .lower_bound
            .iter()
            .all(|(var, b)| a.get(var).is_some_and(|v| v >= b));
        bounds_ok
            && self.constraints().all(|(c, is_eq)| match (a.get(&c.u), a.get(&c.v)) {
                (Some(u), Some(v)) => {
                    let s = u + v;
                    if is_eq {
                        s == c.c
                    } else {
                        s >= c.c
                    }
                }
                _ => false,
            })
    }
}

struct Edge {
    from: usize,
    to: usize,
    w: Rational,
}

/// A feasible assignment, or [`Error::Infeasible`].
///
/// The returned assignment is the canonical one of [`solve_feasible_min`].
pub fn solve_feasible(sys: &ConstraintSystem) -> Result<Assignment> {
    solve_feasible_min(sys)
}

/// The feasible assignment with the least X-class part, completed by the
/// least Y-class part compatible with it.
///
/// The feasible set is a lattice in `(−x, y)` coordinates, so the least X
/// exists whenever the system is feasible.
pub fn solve_feasible_min(sys: &ConstraintSystem) -> Result<Assignment> {
    sys.validate()?;
    let vars: Vec<VarId> = sys.lower_bound.keys().copied().collect();
    let index: BTreeMap<VarId, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i + 1)).collect();
    const ORIGIN: usize = 0;

    // Node values: z = −x for X-class, y for Y-class; edge a→b of weight w
    // encodes val(b) − val(a) ≤ w.
    let mut edges = Vec::new();
    for (var, b) in &sys.lower_bound {
        let n = index[var];
        if var.tag.is_x_class() {
            edges.push(Edge {
                from: ORIGIN,
                to: n,
                w: -b,
            });
        } else {
            edges.push(Edge {
                from: n,
                to: ORIGIN,
                w: -b,
            });
        }
    }
    for (c, is_eq) in sys.constraints() {
        let (x, y) = if c.u.tag.is_x_class() { (c.u, c.v) } else { (c.v, c.u) };
        let (zx, ny) = (index[&x], index[&y]);
        // x + y ≥ c  ⇔  z − y ≤ −c
        edges.push(Edge {
            from: ny,
            to: zx,
            w: -&c.c,
        });
        if is_eq {
            // x + y ≤ c  ⇔  y − z ≤ c
            edges.push(Edge {
                from: zx,
                to: ny,
                w: c.c.clone(),
            });
        }
    }

    let n = vars.len() + 1;
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    dist[ORIGIN] = Some(Rational::ZERO);
    let mut settled = false;
    for _ in 0..n {
        let mut changed = false;
        for e in &edges {
            let Some(d) = &dist[e.from] else { continue };
            let cand = d + &e.w;
            if dist[e.to].as_ref().is_none_or(|cur| cand < *cur) {
                dist[e.to] = Some(cand);
                changed = true;
            }
        }
        if !changed {
            settled = true;
            break;
        }
    }
    if !settled {
        return Err(Error::Infeasible);
    }

    let mut out = Assignment::new();
    for var in vars.iter().filter(|v| v.tag.is_x_class()) {
        let z = dist[index[var]]
            .as_ref()
            .expect("every X-class node hangs off the origin");
        out.insert(*var, -z);
    }
    for var in vars.iter().filter(|v| !v.tag.is_x_class()) {
        out.insert(*var, sys.lower_bound[var].clone());
    }
    for (c, _) in sys.constraints() {
        let (x, y) = if c.u.tag.is_x_class() { (c.u, c.v) } else { (c.v, c.u) };
        let need = &c.c - &out[&x];
        if need > out[&y] {
            out.insert(y, need);
        }
    }

    if !sys.is_satisfied_by(&out) {
        return Err(Error::Infeasible);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn tiny_cases() {
        let (x, y) = (VarId::x(0, 0), VarId::y(0, 0));
        let mut sys = ConstraintSystem::new();
        sys.equal(x, y, 0).bound(x, 3).bound(y, 1);
        assert_eq!(solve_feasible(&sys), Err(Error::Infeasible));

        let mut sys = ConstraintSystem::new();
        sys.ge(x, y, -1).bound(x, 0).bound(y, 0);
        let a = solve_feasible_min(&sys).unwrap();
        assert_eq!((a[&x].clone(), a[&y].clone()), (r(0), r(0)));

        let mut sys = ConstraintSystem::new();
        sys.equal(x, y, 0).bound(x, 2).bound(y, -2);
        let a = solve_feasible_min(&sys).unwrap();
        assert_eq!((a[&x].clone(), a[&y].clone()), (r(2), r(-2)));
    }

    #[test]
    fn same_side_pair_is_malformed() {
        let mut sys = ConstraintSystem::new();
        sys.ge(VarId::x(0, 0), VarId::x(0, 1), 0)
            .bound(VarId::x(0, 0), 0)
            .bound(VarId::x(0, 1), 0);
        assert!(matches!(solve_feasible(&sys), Err(Error::MalformedSystem(_))));
        let mut sys = ConstraintSystem::new();
        sys.ge(VarId::x(0, 0), VarId::y(0, 0), 0).bound(VarId::x(0, 0), 0);
        assert!(matches!(solve_feasible(&sys), Err(Error::MalformedSystem(_))));
    }

    #[test]
    fn rational_constants() {
        let (x, y) = (VarId::x(0, 0), VarId::y(0, 0));
        let mut sys = ConstraintSystem::new();
        sys.ge(x, y, Rational::new(1, 2))
            .bound(x, Rational::new(1, 3))
            .bound(y, 0);
        let a = solve_feasible(&sys).unwrap();
        assert_eq!(a[&x], Rational::new(1, 3));
        assert_eq!(a[&y], Rational::new(1, 6));
    }

    fn enumerate(sys: &ConstraintSystem, vars: &[VarId], lo: i64, hi: i64) -> Vec<Assignment> {
        let mut found = Vec::new();
        let mut cur = vec![lo; vars.len()];
        loop {
            let a: Assignment = vars.iter().zip(&cur).map(|(v, &c)| (*v, r(c))).collect();
            if sys.is_satisfied_by(&a) {
                found.push(a);
            }
            let mut k = 0;
            loop {
                if k == cur.len() {
                    return found;
                }
                cur[k] += 1;
                if cur[k] <= hi {
                    break;
                }
                cur[k] = lo;
                k += 1;
            }
        }
    }

    #[test]
    fn agrees_with_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (lo, hi) = (-10, 10);
        for _ in 0..60 {
            let nx = rng.gen_range(1..=2);
            let ny = rng.gen_range(1..=2);
            let xs: Vec<VarId> = (0..nx).map(|i| VarId::x(0, i)).collect();
            let ys: Vec<VarId> = (0..ny).map(|i| VarId::y(0, i)).collect();
            let mut sys = ConstraintSystem::new();
            for v in xs.iter().chain(&ys) {
                sys.bound(*v, rng.gen_range(-5..=5));
            }
            for _ in 0..rng.gen_range(1..=4) {
                let (u, v) = (xs[rng.gen_range(0..nx)], ys[rng.gen_range(0..ny)]);
                if rng.gen_bool(0.3) {
                    sys.equal(u, v, rng.gen_range(-6..=6));
                } else {
                    sys.ge(u, v, rng.gen_range(-6..=6));
                }
            }
            let vars: Vec<VarId> = xs.iter().chain(&ys).copied().collect();
            let grid = enumerate(&sys, &vars, lo, hi);
            match solve_feasible_min(&sys) {
                Err(Error::Infeasible) => assert!(grid.is_empty(), "{sys:?}"),
                Ok(sol) => {
                    assert!(sys.is_satisfied_by(&sol));
                    let in_grid = sol.values().all(|v| *v >= r(lo) && *v <= r(hi));
                    if in_grid {
                        assert!(!grid.is_empty());
                    }
                    for g in &grid {
                        assert!(xs.iter().all(|x| g[x] >= sol[x]), "{sys:?}");
                        if xs.iter().all(|x| g[x] == sol[x]) {
                            assert!(ys.iter().all(|y| g[y] >= sol[y]));
                        }
                    }
                }
                Err(e) => panic!("{e}"),
            }
        }
    }
}
