use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BlockParams, ProtocolParams, SamplerParams};
use crate::error::{Error, Result};
use crate::families::{sample_jones, FamilySpec};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::semiring::{Scalar, SemiringKind};

/// The commuting families parameters can be generated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Poly,
    Circulant,
    UpperT,
    LowerS,
    Jones,
    Ldp,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::Poly,
        FamilyKind::Circulant,
        FamilyKind::UpperT,
        FamilyKind::LowerS,
        FamilyKind::Jones,
        FamilyKind::Ldp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Poly => "poly",
            FamilyKind::Circulant => "circulant",
            FamilyKind::UpperT => "upper-t",
            FamilyKind::LowerS => "lower-s",
            FamilyKind::Jones => "jones",
            FamilyKind::Ldp => "ldp",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

/// Inputs for [`ProtocolParams::generate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub semiring: SemiringKind,
    pub dim: usize,
    pub range: (i64, i64),
    pub family: FamilyKind,
    pub blocks: usize,
    /// Polynomial degree for [`FamilyKind::Poly`].
    pub degree: u32,
    pub sampler: SamplerParams,
    pub seed: u64,
}

fn random_matrix<R: Rng + ?Sized>(kind: SemiringKind, dim: usize, range: (i64, i64), rng: &mut R) -> Result<Matrix> {
    Matrix::from_fn(kind, dim, |_, _| Scalar::int(rng.gen_range(range.0..=range.1)))
}

fn family<R: Rng + ?Sized>(spec: &GenSpec, rng: &mut R) -> Result<FamilySpec> {
    let (kind, dim, range) = (spec.semiring, spec.dim, spec.range);
    Ok(match spec.family {
        FamilyKind::Poly => FamilySpec::PolyOf {
            base: random_matrix(kind, dim, range, rng)?,
            max_degree: spec.degree,
            coeff_range: range,
        },
        FamilyKind::Circulant => FamilySpec::Circulant {
            kind,
            dim,
            value_range: range,
        },
        FamilyKind::UpperT => FamilySpec::UpperTCirculant {
            kind,
            dim,
            t: Rational::from_int(rng.gen_range(range.0..=range.1)),
            value_range: range,
        },
        FamilyKind::LowerS => FamilySpec::LowerSCirculant {
            kind,
            dim,
            s: Rational::from_int(rng.gen_range(range.0..=range.1)),
            value_range: range,
        },
        FamilyKind::Jones => {
            if kind != SemiringKind::MaxPlus {
                return Err(Error::WrongSemiring {
                    expected: SemiringKind::MaxPlus,
                    got: kind,
                });
            }
            let spread = (range.1 - range.0).max(0);
            FamilySpec::JonesDeform {
                base: sample_jones(dim, range, spread, rng)?,
                alpha_range: (Rational::from_int(0), Rational::from_int(1)),
                denominator: 8,
            }
        }
        FamilyKind::Ldp => FamilySpec::LindeDeLaPuente {
            kind,
            dim,
            r_range: (0, range.1.max(0)),
            k_range: (range.0.min(0), 0),
        },
    })
}

impl ProtocolParams {
    /// Random public data: one `w` per block and fresh `H`, `R` families.
    pub fn generate(spec: &GenSpec) -> Result<ProtocolParams> {
        if spec.range.0 > spec.range.1 {
            return Err(Error::InvalidRange {
                lo: spec.range.0,
                hi: spec.range.1,
            });
        }
        if spec.dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let blocks = (0..spec.blocks.max(1))
            .map(|_| {
                Ok(BlockParams {
                    w: random_matrix(spec.semiring, spec.dim, spec.range, &mut rng)?,
                    h: family(spec, &mut rng)?,
                    r: family(spec, &mut rng)?,
                })
            })
            .collect::<Result<_>>()?;
        let params = ProtocolParams {
            semiring: spec.semiring,
            dim: spec.dim,
            range: spec.range,
            blocks,
            sampler: spec.sampler,
            seed: spec.seed,
            fixture: None,
        };
        params.validate()?;
        Ok(params)
    }
}
