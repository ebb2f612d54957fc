//! Golden vectors checked by `tropmarg selftest`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Result;
use crate::marginal::{max_possible_matrix, residual_right, verify_marginal, WordTemplate};
use crate::matrix::Matrix;
use crate::protocols::{fixtures, run_protocol, Protocol};
use crate::semiring::{Scalar, SemiringKind};
use crate::wire::{Encoding, SetFile};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn residual() -> Result<bool> {
    let a = Matrix::min_plus([[0, 85, -6], [-72, 53, -97], [-72, 52, -69]]);
    let x = residual_right(&a)?;
    let diag: BTreeSet<_> = (0..3).map(|i| (i, i)).collect();
    let hat = max_possible_matrix(&diag, &x, &Scalar::int(100));
    Ok(x == Matrix::min_plus([[0, 125, 3], [-85, 0, -91], [25, 150, 0]])
        && hat == Matrix::min_plus([[0, 125, 100], [100, 0, 100], [100, 150, 0]]))
}

fn bilinear() -> Result<bool> {
    let a = Matrix::min_plus([[3, 2], [1, 5]]);
    let x = Matrix::min_plus([[3, 9], [7, 3]]);
    let y = Matrix::min_plus([[-3, 4], [0, -3]]);
    Ok(verify_marginal(&WordTemplate::sandwich(&a), &[x.clone(), y.clone()])? && x.mul(&a)? != a && a.mul(&y)? != a)
}

fn key(text: &str, protocol: Protocol, expect: Option<Matrix>) -> Result<bool> {
    let t = run_protocol(protocol, &fixtures::load(text)?)?;
    Ok(t.agreed && expect.is_none_or(|k| t.key_a == k))
}

fn notation() -> Result<bool> {
    let one = |rows: &[&[i64]]| Matrix::from_int_rows(SemiringKind::MinPlus, rows).map(|m| vec![m]);
    let mut grid = Vec::new();
    for c in 4..=5 {
        for b in 3..=7 {
            grid.push(one(&[&[2, b], &[c, 5]])?);
        }
    }
    let chain = vec![
        one(&[&[2, 3, 4], &[4, 5, 1], &[0, 8, 6]])?,
        one(&[&[2, 3, 7], &[4, 5, 1], &[0, 8, 6]])?,
        one(&[&[2, 3, 8], &[4, 5, 2], &[0, 8, 6]])?,
    ];
    let g = SetFile::encode(&grid, Encoding::Auto)?;
    let d = SetFile::encode(&chain, Encoding::Auto)?;
    Ok(g.notation()? == "[[2,[3,7]],[[4,5],5]]"
        && d.notation()? == "[[2,3,4],[4,5,1],[0,8,6]], (((1,3),7)), (((1,3),8),((2,3),2))"
        && g.tuples()? == grid
        && d.tuples()? == chain)
}

type Golden = (&'static str, fn() -> Result<bool>);

/// Runs every golden check.
pub fn run() -> Vec<Check> {
    let checks: [Golden; 6] = [
        ("right residual and max-possible matrix", residual),
        ("2x2 sandwich solution", bilinear),
        ("4x4 sandwich exchange key", || {
            let k = Matrix::min_plus([
                [202, 208, 164, 183],
                [217, 223, 179, 198],
                [203, 209, 165, 184],
                [200, 206, 162, 181],
            ]);
            key(fixtures::SANDWICH_4X4, Protocol::Sandwich, Some(k))
        }),
        ("two-block exchange key", || {
            let k = Matrix::min_plus([[-308, -310, -315], [-305, -320, -278], [-330, -332, -290]]);
            key(fixtures::MULTIBLOCK_3X3, Protocol::Multiblock, Some(k))
        }),
        ("one-sided exchange agreement", || {
            key(fixtures::ONE_SIDED_3X3, Protocol::OneSided, None)
        }),
        ("set compression notation", notation),
    ];
    checks
        .into_iter()
        .map(|(name, f)| match f() {
            Ok(passed) => Check {
                name,
                passed,
                error: None,
            },
            Err(e) => Check {
                name,
                passed: false,
                error: Some(e.to_string()),
            },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_golden_checks_pass() {
        for c in super::run() {
            assert!(c.passed, "{c:?}");
        }
    }
}
