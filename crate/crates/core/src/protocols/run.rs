use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PartyFixture, Payload, PrivateRecord, Protocol, ProtocolParams, ProtocolTranscript, PublicMessage, Role};
use crate::error::{Error, Result};
use crate::marginal::{
    sample_five_factor_marginal, sample_left_marginal, sample_right_marginal, sample_sandwich_marginal, MarginalSet,
    WordTemplate,
};
use crate::matrix::Matrix;

/// How one published set is produced when it is not pinned.
enum Draw {
    Right(Matrix),
    Left(Matrix),
    Sandwich(Matrix),
    FiveFactor(Matrix, Matrix, Matrix),
}

struct SetSpec {
    word: &'static str,
    note: String,
    draw: Draw,
}

impl SetSpec {
    fn template(&self) -> Result<WordTemplate> {
        Ok(match &self.draw {
            Draw::Right(a) => WordTemplate::right(a),
            Draw::Left(a) => WordTemplate::left(a),
            Draw::Sandwich(a) => WordTemplate::sandwich(a),
            Draw::FiveFactor(a, b, c) => WordTemplate::five_factor(a, b, c)?,
        })
    }

    fn sample<R: Rng + ?Sized>(&self, params: &ProtocolParams, rng: &mut R) -> Result<MarginalSet> {
        let s = &params.sampler;
        match &self.draw {
            Draw::Right(a) => sample_right_marginal(a, s.count, s.l, rng),
            Draw::Left(a) => sample_left_marginal(a, s.count, s.l, rng),
            Draw::Sandwich(a) => sample_sandwich_marginal(a, s.count, s.l1, s.l2, rng),
            Draw::FiveFactor(a, b, c) => sample_five_factor_marginal(a, b, c, s.count, s.l1, s.l2, rng),
        }
    }
}

struct Party {
    role: Role,
    p: Vec<Matrix>,
    q: Vec<Matrix>,
    sets: Vec<(String, &'static str, String, Vec<Vec<Matrix>>)>,
    picks: Vec<usize>,
    chosen: Vec<Vec<Matrix>>,
}

impl Party {
    fn index(&self) -> usize {
        match self.role {
            Role::Alice => 1,
            Role::Bob => 2,
        }
    }
}

fn fixture_for(params: &ProtocolParams, role: Role) -> Option<&PartyFixture> {
    params.fixture.as_ref().map(|f| match role {
        Role::Alice => &f.alice,
        Role::Bob => &f.bob,
    })
}

fn secrets<R: Rng + ?Sized>(params: &ProtocolParams, blocks: usize, role: Role, rng: &mut R) -> Result<Party> {
    let (p, q) = match fixture_for(params, role) {
        Some(f) => (f.p[..blocks].to_vec(), f.q[..blocks].to_vec()),
        None => {
            let (mut p, mut q) = (Vec::with_capacity(blocks), Vec::with_capacity(blocks));
            for b in &params.blocks[..blocks] {
                p.push(b.h.sample(rng)?);
                q.push(b.r.sample(rng)?);
            }
            (p, q)
        }
    };
    Ok(Party {
        role,
        p,
        q,
        sets: Vec::new(),
        picks: Vec::new(),
        chosen: Vec::new(),
    })
}

fn set_specs(protocol: Protocol, params: &ProtocolParams, party: &Party) -> Result<Vec<SetSpec>> {
    let k = party.index();
    let (p, q) = (&party.p, &party.q);
    Ok(match protocol {
        Protocol::Sidelnikov => Vec::new(),
        Protocol::OneSided => vec![
            SetSpec {
                word: "right",
                note: format!("p{k}·□"),
                draw: Draw::Right(p[0].clone()),
            },
            SetSpec {
                word: "left",
                note: format!("□·q{k}"),
                draw: Draw::Left(q[0].clone()),
            },
        ],
        Protocol::Sandwich => vec![SetSpec {
            word: "five-factor",
            note: format!("p{k}·□·w·□·q{k}"),
            draw: Draw::FiveFactor(p[0].clone(), params.blocks[0].w.clone(), q[0].clone()),
        }],
        Protocol::Multiblock => {
            let n = p.len();
            let mut specs = vec![SetSpec {
                word: "right",
                note: format!("p{k}1·□"),
                draw: Draw::Right(p[0].clone()),
            }];
            for j in 1..n {
                specs.push(SetSpec {
                    word: "sandwich",
                    note: format!("□·q{k}{j}·p{k}{}·□", j + 1),
                    draw: Draw::Sandwich(q[j - 1].mul(&p[j])?),
                });
            }
            specs.push(SetSpec {
                word: "left",
                note: format!("□·q{k}{n}"),
                draw: Draw::Left(q[n - 1].clone()),
            });
            specs
        }
    })
}

fn set_label(protocol: Protocol, party: usize, idx: usize) -> String {
    match (protocol, idx) {
        (Protocol::OneSided, 1) => format!("N{party}"),
        (Protocol::Multiblock, _) => format!("M{party}{}", idx + 1),
        _ => format!("M{party}"),
    }
}

fn publish<R: Rng + ?Sized>(protocol: Protocol, params: &ProtocolParams, party: &mut Party, rng: &mut R) -> Result<()> {
    let specs = set_specs(protocol, params, party)?;
    let pinned = fixture_for(params, party.role).and_then(|f| f.published.as_ref());
    if let Some(pinned) = pinned {
        if pinned.len() != specs.len() {
            return Err(Error::Protocol(format!(
                "fixture publishes {} sets, the protocol needs {}",
                pinned.len(),
                specs.len()
            )));
        }
    }
    for (idx, spec) in specs.iter().enumerate() {
        let set = match pinned {
            Some(pinned) => {
                let mut set = MarginalSet::new(spec.template()?);
                for tuple in &pinned[idx] {
                    if !set.insert(tuple.clone())? {
                        return Err(Error::Protocol("fixture set repeats a tuple".into()));
                    }
                }
                if set.is_empty() {
                    return Err(Error::Protocol("fixture set is empty".into()));
                }
                set
            }
            None => spec.sample(params, rng)?,
        };
        let label = set_label(protocol, party.index(), idx);
        party
            .sets
            .push((label, spec.word, spec.note.clone(), set.into_tuples()));
    }
    Ok(())
}

fn pick<R: Rng + ?Sized>(params: &ProtocolParams, me: &mut Party, other: &Party, rng: &mut R) -> Result<()> {
    let pinned = fixture_for(params, me.role).and_then(|f| f.picks.as_ref());
    if let Some(pinned) = pinned {
        if pinned.len() != other.sets.len() {
            return Err(Error::Protocol(
                "fixture picks do not match the number of received sets".into(),
            ));
        }
    }
    for (idx, (label, _, _, tuples)) in other.sets.iter().enumerate() {
        let i = match pinned {
            Some(pinned) => pinned[idx],
            None => rng.gen_range(0..tuples.len()),
        };
        let tuple = tuples
            .get(i)
            .ok_or_else(|| Error::Protocol(format!("pick {i} is outside {label}")))?;
        me.picks.push(i);
        me.chosen.push(tuple.clone());
    }
    Ok(())
}

/// The matrices a party sends, one per block.
fn message(protocol: Protocol, params: &ProtocolParams, me: &Party) -> Result<Vec<Matrix>> {
    let (p, q, c) = (&me.p, &me.q, &me.chosen);
    let w = |i: usize| &params.blocks[i].w;
    Ok(match protocol {
        Protocol::Sidelnikov => vec![Matrix::product([&p[0], w(0), &q[0]])?],
        Protocol::OneSided => vec![Matrix::product([&c[0][0], &p[0], w(0), &q[0], &c[1][0]])?],
        Protocol::Sandwich => vec![Matrix::product([&p[0], &c[0][0], w(0), &c[0][1], &q[0]])?],
        Protocol::Multiblock => {
            let n = p.len();
            (0..n)
                .map(|i| {
                    let left = if i == 0 { &c[0][0] } else { &c[i][1] };
                    let right = &c[i + 1][0];
                    Matrix::product([left, &p[i], w(i), &q[i], right])
                })
                .collect::<Result<_>>()?
        }
    })
}

fn key(me: &Party, received: &[Matrix]) -> Result<Matrix> {
    let mut factors = Vec::with_capacity(3 * received.len());
    for (i, v) in received.iter().enumerate() {
        factors.extend([&me.p[i], v, &me.q[i]]);
    }
    Matrix::product(factors)
}

fn block_count(protocol: Protocol, params: &ProtocolParams) -> usize {
    match protocol {
        Protocol::Multiblock => params.blocks.len(),
        _ => 1,
    }
}

fn run<R: Rng + ?Sized>(protocol: Protocol, params: &ProtocolParams, rng: &mut R) -> Result<ProtocolTranscript> {
    params.validate()?;
    let blocks = block_count(protocol, params);

    let mut alice = secrets(params, blocks, Role::Alice, rng)?;
    publish(protocol, params, &mut alice, rng)?;
    let mut bob = secrets(params, blocks, Role::Bob, rng)?;
    publish(protocol, params, &mut bob, rng)?;
    pick(params, &mut alice, &bob, rng)?;
    pick(params, &mut bob, &alice, rng)?;

    let u = message(protocol, params, &alice)?;
    let v = message(protocol, params, &bob)?;
    let key_a = key(&alice, &v)?;
    let key_b = key(&bob, &u)?;

    let mut messages = Vec::new();
    for party in [&alice, &bob] {
        for (label, word, note, tuples) in &party.sets {
            messages.push(PublicMessage {
                from: party.role,
                label: label.clone(),
                note: note.clone(),
                payload: Payload::MarginalSet {
                    word: (*word).to_string(),
                    tuples: tuples.clone(),
                },
            });
        }
    }
    messages.push(PublicMessage {
        from: Role::Alice,
        label: "u".into(),
        note: "c·p1·w·q1·d".into(),
        payload: Payload::Matrices { values: u },
    });
    messages.push(PublicMessage {
        from: Role::Bob,
        label: "v".into(),
        note: "c·p2·w·q2·d".into(),
        payload: Payload::Matrices { values: v },
    });

    let record = |party: Party, key: &Matrix| PrivateRecord {
        role: party.role,
        p: party.p,
        q: party.q,
        picks: party.picks,
        key: key.clone(),
    };
    let mut public = params.public();
    public.blocks.truncate(blocks);
    Ok(ProtocolTranscript {
        protocol,
        seed: params.seed,
        params: public,
        messages,
        private: vec![record(alice, &key_a), record(bob, &key_b)],
        agreed: key_a == key_b,
        key_a,
        key_b,
    })
}

/// The unprotected baseline: `u = p₁·w·q₁`, `v = p₂·w·q₂`.
pub fn run_sidelnikov<R: Rng + ?Sized>(params: &ProtocolParams, rng: &mut R) -> Result<ProtocolTranscript> {
    run(Protocol::Sidelnikov, params, rng)
}

/// `u = c₂·p₁·w·q₁·d₂` with `c₂`, `d₂` from Bob's sets for `p₂·□` and `□·q₂`.
pub fn run_protocol_one_sided<R: Rng + ?Sized>(params: &ProtocolParams, rng: &mut R) -> Result<ProtocolTranscript> {
    run(Protocol::OneSided, params, rng)
}

/// `u = p₁·c₂·w·d₂·q₁` with `(c₂, d₂)` from Bob's set for `p₂·□·w·□·q₂`.
pub fn run_protocol_sandwich<R: Rng + ?Sized>(params: &ProtocolParams, rng: &mut R) -> Result<ProtocolTranscript> {
    run(Protocol::Sandwich, params, rng)
}

/// One message per block; neighbouring blocks are glued by sets for
/// `□·q_{i−1}·p_i·□`, the ends by sets for `p₁·□` and `□·qₙ`.
pub fn run_protocol_multiblock<R: Rng + ?Sized>(params: &ProtocolParams, rng: &mut R) -> Result<ProtocolTranscript> {
    run(Protocol::Multiblock, params, rng)
}

/// Runs `protocol` with a generator seeded from `params.seed`.
pub fn run_protocol(protocol: Protocol, params: &ProtocolParams) -> Result<ProtocolTranscript> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    run(protocol, params, &mut rng)
}
