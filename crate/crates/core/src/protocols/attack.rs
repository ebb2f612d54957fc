use serde::{Deserialize, Serialize};

use super::{Protocol, ProtocolTranscript};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::semiring::{Scalar, SemiringKind};

/// `{A^0, …, A^d}`.
pub fn power_basis(a: &Matrix, degree: u32) -> Vec<Matrix> {
    (0..=degree).map(|k| a.pow(k)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackOutcome {
    /// `ẑ_ij` for left basis element `i` and right basis element `j`.
    pub z: Vec<Vec<Scalar>>,
    pub candidate: Matrix,
}

fn to_min(m: &Matrix) -> Matrix {
    match m.kind() {
        SemiringKind::MinPlus => m.clone(),
        SemiringKind::MaxPlus => m.negate(),
    }
}

/// Principal solution of `z ⊗ t = u` over min-plus.
fn principal(t: &Matrix, u: &Matrix) -> Scalar {
    let mut best: Option<Scalar> = None;
    for (tv, uv) in t.entries().iter().zip(u.entries()) {
        let Some(tv) = tv.finite() else { continue };
        let z = match uv.finite() {
            Some(uv) => Scalar::Finite(uv - tv),
            None => uv.clone(),
        };
        best = Some(best.map_or(z.clone(), |b| b.max(z)));
    }
    best.unwrap_or(Scalar::PosInf)
}

/// Writes `u` as `⊕ z_ij ⊗ a_i ⊗ w ⊗ b_j` and, if that works, returns
/// `⊕ z_ij ⊗ a_i ⊗ v ⊗ b_j`.
///
/// Uses the principal solution `ẑ`, which solves the system whenever any
/// solution does.
pub fn attack_decomposition(
    w: &Matrix,
    u: &Matrix,
    v: &Matrix,
    left: &[Matrix],
    right: &[Matrix],
) -> Result<AttackOutcome> {
    let kind = w.kind();
    for m in [u, v].into_iter().chain(left).chain(right) {
        if m.kind() != kind {
            return Err(Error::KindMismatch(kind, m.kind()));
        }
        if m.dim() != w.dim() {
            return Err(Error::DimensionMismatch(w.dim(), m.dim()));
        }
    }
    if left.is_empty() || right.is_empty() {
        return Err(Error::EmptyValues);
    }
    let (w, u, v) = (to_min(w), to_min(u), to_min(v));
    let left: Vec<Matrix> = left.iter().map(to_min).collect();
    let right: Vec<Matrix> = right.iter().map(to_min).collect();

    let zero = Matrix::zero(SemiringKind::MinPlus, w.dim());
    let (mut rebuilt, mut candidate) = (zero.clone(), zero);
    let mut z = Vec::with_capacity(left.len());
    for a in &left {
        let mut row = Vec::with_capacity(right.len());
        for b in &right {
            let t = Matrix::product([a, &w, b])?;
            let zij = principal(&t, &u);
            rebuilt = rebuilt.add(&t.scalar_mul(&zij)?)?;
            candidate = candidate.add(&Matrix::product([a, &v, b])?.scalar_mul(&zij)?)?;
            row.push(zij);
        }
        z.push(row);
    }
    if rebuilt != u {
        return Err(Error::NoDecomposition);
    }
    Ok(match kind {
        SemiringKind::MinPlus => AttackOutcome { z, candidate },
        SemiringKind::MaxPlus => AttackOutcome {
            z: z.iter().map(|r| r.iter().map(Scalar::negate).collect()).collect(),
            candidate: candidate.negate(),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttackVerdict {
    /// The candidate equals the shared key.
    Recovered,
    /// A decomposition exists but the candidate is not the key.
    WrongKey,
    NoDecomposition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttackReport {
    pub protocol: Protocol,
    pub seed: u64,
    pub degree: u32,
    pub verdict: AttackVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate: Option<Matrix>,
    pub key: Matrix,
    pub matched: bool,
}

/// Runs the decomposition attack on every block of a transcript, with the
/// power bases of each block's polynomial families.
pub fn attack_transcript(t: &ProtocolTranscript, degree: u32) -> Result<AttackReport> {
    let (us, vs) = t.exchanged()?;
    if us.len() != vs.len() || us.len() > t.params.blocks.len() {
        return Err(Error::Parse("transcript messages do not match its blocks".into()));
    }
    let mut candidate: Option<Matrix> = None;
    let mut verdict = AttackVerdict::Recovered;
    for ((u, v), block) in us.iter().zip(&vs).zip(&t.params.blocks) {
        let base = |f: &crate::families::FamilySpec| {
            f.poly_base()
                .map(|b| power_basis(b, degree))
                .ok_or_else(|| Error::Protocol("the attack needs polynomial families".into()))
        };
        match attack_decomposition(&block.w, u, v, &base(&block.h)?, &base(&block.r)?) {
            Ok(out) => {
                candidate = Some(match candidate {
                    None => out.candidate,
                    Some(acc) => acc.mul(&out.candidate)?,
                });
            }
            Err(Error::NoDecomposition) => {
                verdict = AttackVerdict::NoDecomposition;
                candidate = None;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let matched = candidate.as_ref() == Some(&t.key_a);
    if verdict == AttackVerdict::Recovered && !matched {
        verdict = AttackVerdict::WrongKey;
    }
    Ok(AttackReport {
        protocol: t.protocol,
        seed: t.seed,
        degree,
        verdict,
        candidate,
        key: t.key_a.clone(),
        matched,
    })
}
