//! Two-party key exchange over commuting matrix families, with and without
//! marginal sets, and the linear-decomposition attack on the plain scheme.

mod attack;
mod generate;
mod run;

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use attack::{attack_decomposition, attack_transcript, power_basis, AttackOutcome, AttackReport, AttackVerdict};
pub use generate::{FamilyKind, GenSpec};
pub use run::{run_protocol, run_protocol_multiblock, run_protocol_one_sided, run_protocol_sandwich, run_sidelnikov};

use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::matrix::Matrix;
use crate::semiring::SemiringKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Protocol {
    /// `u = p₁·w·q₁`, no marginal sets.
    Sidelnikov,
    /// Marginal sets for `p·□` and `□·q`.
    OneSided,
    /// A marginal set for `p·□·w·□·q`.
    Sandwich,
    /// `n` blocks chained through marginal sets for `□·q_{i−1}·p_i·□`.
    Multiblock,
}

impl Protocol {
    pub const ALL: [Protocol; 4] = [
        Protocol::Sidelnikov,
        Protocol::OneSided,
        Protocol::Sandwich,
        Protocol::Multiblock,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Protocol::Sidelnikov => "sidelnikov",
            Protocol::OneSided => "one-sided",
            Protocol::Sandwich => "sandwich",
            Protocol::Multiblock => "multiblock",
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Protocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Protocol::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown protocol {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Alice,
    Bob,
}

/// Public data for one block: the element `w` and the families `H`, `R`
/// the secrets `p` and `q` are drawn from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockParams {
    pub w: Matrix,
    pub h: FamilySpec,
    pub r: FamilySpec,
}

/// Marginal-set sampling knobs: set size, the one-sided threshold `l`, and
/// the bound range `[l1, l2]` of the linear-programming samplers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerParams {
    pub count: usize,
    pub l: i64,
    pub l1: i64,
    pub l2: i64,
}

impl Default for SamplerParams {
    fn default() -> Self {
        SamplerParams {
            count: 3,
            l: 100,
            l1: -10,
            l2: 10,
        }
    }
}

/// Pinned choices for one party, so a run can replay a recorded exchange.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartyFixture {
    /// One `p` per block.
    pub p: Vec<Matrix>,
    /// One `q` per block.
    pub q: Vec<Matrix>,
    /// The party's published sets, each a list of tuples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub published: Option<Vec<Vec<Vec<Matrix>>>>,
    /// Index of the tuple taken from each of the other party's sets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub picks: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub alice: PartyFixture,
    pub bob: PartyFixture,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolParams {
    pub semiring: SemiringKind,
    pub dim: usize,
    /// Entry range the public matrices were drawn from.
    pub range: (i64, i64),
    pub blocks: Vec<BlockParams>,
    #[serde(default)]
    pub sampler: SamplerParams,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<Fixture>,
}

impl ProtocolParams {
    /// Checks shapes and that every family is well formed and commuting.
    pub fn validate(&self) -> Result<()> {
        if self.blocks.is_empty() {
            return Err(Error::Protocol("at least one block is required".into()));
        }
        let s = &self.sampler;
        if s.count == 0 {
            return Err(Error::Protocol("marginal sets need at least one element".into()));
        }
        if s.l1 > s.l2 {
            return Err(Error::InvalidRange { lo: s.l1, hi: s.l2 });
        }
        let mut probe = ChaCha8Rng::seed_from_u64(0);
        for b in &self.blocks {
            if b.w.kind() != self.semiring {
                return Err(Error::KindMismatch(self.semiring, b.w.kind()));
            }
            if b.w.dim() != self.dim {
                return Err(Error::DimensionMismatch(self.dim, b.w.dim()));
            }
            for fam in [&b.h, &b.r] {
                if fam.kind() != self.semiring {
                    return Err(Error::KindMismatch(self.semiring, fam.kind()));
                }
                if fam.dim() != self.dim {
                    return Err(Error::DimensionMismatch(self.dim, fam.dim()));
                }
                fam.validate()?;
                let (x, y) = (fam.sample(&mut probe)?, fam.sample(&mut probe)?);
                if !x.commutes_with(&y)? {
                    return Err(Error::Protocol("family members do not commute".into()));
                }
            }
        }
        if let Some(f) = &self.fixture {
            for party in [&f.alice, &f.bob] {
                if party.p.len() != self.blocks.len() || party.q.len() != self.blocks.len() {
                    return Err(Error::Protocol("fixture needs one p and one q per block".into()));
                }
                for m in party.p.iter().chain(&party.q) {
                    if m.kind() != self.semiring || m.dim() != self.dim {
                        return Err(Error::Protocol("fixture secret has the wrong shape".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// The same parameters without pinned secrets.
    pub fn public(&self) -> ProtocolParams {
        ProtocolParams {
            fixture: None,
            ..self.clone()
        }
    }
}

/// What a public message carries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Payload {
    /// A marginal set, described by the shape of its word only.
    MarginalSet {
        word: String,
        tuples: Vec<Vec<Matrix>>,
    },
    Matrices {
        values: Vec<Matrix>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PublicMessage {
    pub from: Role,
    pub label: String,
    pub note: String,
    pub payload: Payload,
}

/// One party's secrets and choices, kept apart from the public messages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrivateRecord {
    pub role: Role,
    pub p: Vec<Matrix>,
    pub q: Vec<Matrix>,
    pub picks: Vec<usize>,
    pub key: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolTranscript {
    pub protocol: Protocol,
    pub seed: u64,
    pub params: ProtocolParams,
    pub messages: Vec<PublicMessage>,
    pub private: Vec<PrivateRecord>,
    pub key_a: Matrix,
    pub key_b: Matrix,
    pub agreed: bool,
}

impl ProtocolTranscript {
    pub fn message(&self, label: &str) -> Option<&PublicMessage> {
        self.messages.iter().find(|m| m.label == label)
    }

    /// Matrices sent as `u` (by Alice) and `v` (by Bob).
    pub fn exchanged(&self) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
        let get = |label: &str| match self.message(label).map(|m| &m.payload) {
            Some(Payload::Matrices { values }) => Ok(values.clone()),
            _ => Err(Error::Parse(format!("transcript has no {label} message"))),
        };
        Ok((get("u")?, get("v")?))
    }

    /// Parameters that reproduce this exact run, with every secret and
    /// choice pinned from the record.
    pub fn replay_params(&self) -> Result<ProtocolParams> {
        let party = |role: Role| -> Result<PartyFixture> {
            let rec = self
                .private
                .iter()
                .find(|r| r.role == role)
                .ok_or_else(|| Error::Parse(format!("transcript lacks the {role:?} record")))?;
            let published: Vec<Vec<Vec<Matrix>>> = self
                .messages
                .iter()
                .filter(|m| m.from == role)
                .filter_map(|m| match &m.payload {
                    Payload::MarginalSet { tuples, .. } => Some(tuples.clone()),
                    Payload::Matrices { .. } => None,
                })
                .collect();
            Ok(PartyFixture {
                p: rec.p.clone(),
                q: rec.q.clone(),
                published: (!published.is_empty()).then_some(published),
                picks: (!rec.picks.is_empty()).then(|| rec.picks.clone()),
            })
        };
        Ok(ProtocolParams {
            fixture: Some(Fixture {
                alice: party(Role::Alice)?,
                bob: party(Role::Bob)?,
            }),
            ..self.params.clone()
        })
    }
}

/// Recorded exchanges bundled with the crate.
pub mod fixtures {
    use super::ProtocolParams;
    use crate::error::Result;

    pub const SANDWICH_4X4: &str = include_str!("../../fixtures/sandwich_4x4.json");
    pub const ONE_SIDED_3X3: &str = include_str!("../../fixtures/one_sided_3x3.json");
    pub const MULTIBLOCK_3X3: &str = include_str!("../../fixtures/multiblock_3x3.json");

    pub fn load(text: &str) -> Result<ProtocolParams> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marginal::{verify_marginal, WordTemplate};

    fn golden(text: &str, protocol: Protocol) -> ProtocolTranscript {
        let params = fixtures::load(text).unwrap();
        run_protocol(protocol, &params).unwrap()
    }

    fn sidelnikov_fixture() -> ProtocolParams {
        let mut params = fixtures::load(fixtures::SANDWICH_4X4).unwrap();
        let fx = params.fixture.as_mut().unwrap();
        for party in [&mut fx.alice, &mut fx.bob] {
            party.published = None;
            party.picks = None;
        }
        params
    }

    #[test]
    fn sandwich_example_reproduces_every_message() {
        let t = golden(fixtures::SANDWICH_4X4, Protocol::Sandwich);
        let (u, v) = t.exchanged().unwrap();
        assert_eq!(
            u,
            vec![Matrix::min_plus([
                [83, 95, 45, 64],
                [95, 107, 57, 76],
                [81, 93, 43, 62],
                [78, 90, 40, 59]
            ])]
        );
        assert_eq!(
            v,
            vec![Matrix::min_plus([
                [113, 110, 81, 94],
                [128, 125, 96, 109],
                [114, 111, 82, 95],
                [113, 110, 81, 94]
            ])]
        );
        let k = Matrix::min_plus([
            [202, 208, 164, 183],
            [217, 223, 179, 198],
            [203, 209, 165, 184],
            [200, 206, 162, 181],
        ]);
        assert_eq!(t.key_a, k);
        assert_eq!(t.key_b, k);
        assert!(t.agreed);
    }

    #[test]
    fn two_block_example_key() {
        let t = golden(fixtures::MULTIBLOCK_3X3, Protocol::Multiblock);
        let k = Matrix::min_plus([[-308, -310, -315], [-305, -320, -278], [-330, -332, -290]]);
        assert_eq!((t.key_a.clone(), t.key_b.clone()), (k.clone(), k));
        let (u, v) = t.exchanged().unwrap();
        assert_eq!(u[0], Matrix::min_plus([[65, -8, 49], [31, 42, 0], [6, 21, -8]]));
        assert_eq!(
            u[1],
            Matrix::min_plus([[-101, -103, -54], [-65, -67, -72], [-47, -85, -36]])
        );
        assert_eq!(
            v[0],
            Matrix::min_plus([[-109, -145, -106], [-106, -95, -137], [-131, -116, -145]])
        );
        assert_eq!(
            v[1],
            Matrix::min_plus([[-78, -80, -38], [-15, -23, -49], [-24, -62, -20]])
        );
    }

    #[test]
    fn one_sided_example_agrees_after_recomputation() {
        let params = fixtures::load(fixtures::ONE_SIDED_3X3).unwrap();
        let a = params.blocks[0].h.poly_base().unwrap().clone();
        let b = params.blocks[0].r.poly_base().unwrap().clone();
        let p1 = crate::TropPolynomial::from_ints(&[-69, -97, 60])
            .unwrap()
            .eval(&a)
            .unwrap();
        let q1 = crate::TropPolynomial::from_ints(&[8, -93, 69])
            .unwrap()
            .eval(&b)
            .unwrap();
        let fx = params.fixture.as_ref().unwrap();
        assert_eq!(p1, fx.alice.p[0]);
        assert_eq!(q1, fx.alice.q[0]);
        let t = run_protocol(Protocol::OneSided, &params).unwrap();
        assert!(t.agreed, "{} vs {}", t.key_a, t.key_b);
        assert_ne!(
            t.key_a,
            Matrix::min_plus([[-187, -258, -243], [-186, -226, -275], [-182, -226, -244]])
        );
    }

    #[test]
    fn seeded_runs_agree_and_replay() {
        for protocol in Protocol::ALL {
            for seed in 0..5 {
                let spec = GenSpec {
                    semiring: SemiringKind::MinPlus,
                    dim: 3,
                    range: (-20, 20),
                    family: FamilyKind::Poly,
                    blocks: 2,
                    degree: 2,
                    sampler: SamplerParams::default(),
                    seed,
                };
                let params = ProtocolParams::generate(&spec).unwrap();
                let t = run_protocol(protocol, &params).unwrap();
                assert!(t.agreed, "{protocol} seed {seed}");
                assert_eq!(run_protocol(protocol, &params).unwrap(), t);
                let again = run_protocol(protocol, &t.replay_params().unwrap()).unwrap();
                assert_eq!(again.key_a, t.key_a);
                assert_eq!(again.messages, t.messages);
            }
        }
    }

    #[test]
    fn published_sets_are_marginal() {
        let params = fixtures::load(fixtures::SANDWICH_4X4).unwrap();
        let t = run_protocol(Protocol::Sandwich, &params.public()).unwrap();
        let bob = &t.private[1];
        let w = WordTemplate::five_factor(&bob.p[0], &t.params.blocks[0].w, &bob.q[0]).unwrap();
        let Payload::MarginalSet { tuples, .. } = &t.message("M2").unwrap().payload else {
            panic!("M2 is a set")
        };
        for tuple in tuples {
            assert!(verify_marginal(&w, tuple).unwrap());
        }
    }

    #[test]
    fn attack_breaks_the_baseline() {
        for seed in 0..5 {
            let spec = GenSpec {
                semiring: SemiringKind::MinPlus,
                dim: 3,
                range: (-20, 20),
                family: FamilyKind::Poly,
                blocks: 1,
                degree: 3,
                sampler: SamplerParams::default(),
                seed,
            };
            let t = run_protocol(Protocol::Sidelnikov, &ProtocolParams::generate(&spec).unwrap()).unwrap();
            let report = attack_transcript(&t, 3).unwrap();
            assert_eq!(report.verdict, AttackVerdict::Recovered);
        }
    }

    #[test]
    fn attack_with_the_secrets_in_the_basis() {
        let params = sidelnikov_fixture();
        let t = run_protocol(Protocol::Sidelnikov, &params).unwrap();
        let (u, v) = t.exchanged().unwrap();
        let alice = &t.private[0];
        let out = attack_decomposition(&params.blocks[0].w, &u[0], &v[0], &alice.p, &alice.q).unwrap();
        assert_eq!(out.candidate, t.key_a);
    }

    #[test]
    fn trivial_secrets_give_w() {
        let mut params = sidelnikov_fixture();
        let id = Matrix::identity(SemiringKind::MinPlus, 4);
        let fx = params.fixture.as_mut().unwrap();
        for party in [&mut fx.alice, &mut fx.bob] {
            party.p = vec![id.clone()];
            party.q = vec![id.clone()];
        }
        let t = run_protocol(Protocol::Sidelnikov, &params).unwrap();
        assert_eq!(t.key_a, params.blocks[0].w);
    }
}
