//! File formats: marginal sets (raw, interval box, delta chain), word
//! templates, and atomic file output.
//!
//! Every document is single-line JSON with a fixed key order, so parsing and
//! re-serializing reproduces the same bytes.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::de::{self, DeserializeOwned};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::marginal::{Atom, MarginalSet, WordTemplate};
use crate::matrix::Matrix;
use crate::semiring::{Scalar, SemiringKind};

/// Requested set encoding. `Auto` picks `Interval` when the set is a box and
/// `Delta` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Encoding {
    Raw,
    Interval,
    Delta,
    Auto,
}

impl std::str::FromStr for Encoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(Encoding::Raw),
            "interval" => Ok(Encoding::Interval),
            "delta" => Ok(Encoding::Delta),
            "auto" => Ok(Encoding::Auto),
            _ => Err(Error::Parse(format!("unknown encoding {s:?}"))),
        }
    }
}

type Rows = Vec<Vec<Scalar>>;

/// One entry of an interval grid: a fixed value or an integer range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Range(i64, i64),
    Fixed(Scalar),
}

/// A position inside a tuple, 1-based. The slot is omitted for single
/// matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub slot: usize,
    pub row: usize,
    pub col: usize,
}

/// `((i, j), value)`: the next tuple has `value` at position `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Change {
    pub at: Position,
    pub value: Scalar,
    single: bool,
}

impl Serialize for Change {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let p = self.at;
        if self.single {
            ([p.row, p.col], &self.value).serialize(s)
        } else {
            ([p.slot, p.row, p.col], &self.value).serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for Change {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (pos, value): (Vec<usize>, Scalar) = Deserialize::deserialize(d)?;
        let (single, at) = match pos[..] {
            [row, col] => (true, Position { slot: 1, row, col }),
            [slot, row, col] => (false, Position { slot, row, col }),
            _ => return Err(de::Error::custom("a position is (i, j) or (slot, i, j)")),
        };
        if at.slot == 0 || at.row == 0 || at.col == 0 {
            return Err(de::Error::custom("positions are 1-based"));
        }
        Ok(Change { at, value, single })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Body {
    Raw {
        tuples: Vec<Vec<Rows>>,
    },
    /// One grid per slot; the set is every combination of the ranges.
    Interval {
        slots: Vec<Vec<Vec<Cell>>>,
    },
    /// The first tuple, then each tuple's changes against its predecessor.
    Delta {
        base: Vec<Rows>,
        diffs: Vec<Vec<Change>>,
    },
}

/// An encoded marginal set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetFile {
    pub semiring: SemiringKind,
    pub dim: usize,
    pub arity: usize,
    pub body: Body,
}

fn flat(tuple: &[Matrix]) -> impl Iterator<Item = (Position, &Scalar)> {
    tuple.iter().enumerate().flat_map(|(s, m)| {
        let k = m.dim();
        m.entries().iter().enumerate().map(move |(idx, v)| {
            (
                Position {
                    slot: s + 1,
                    row: idx / k + 1,
                    col: idx % k + 1,
                },
                v,
            )
        })
    })
}

/// Per-position integer range if `tuples` is exactly an axis-aligned box.
fn detect_box(tuples: &[Vec<Matrix>]) -> Option<Vec<Vec<Vec<Cell>>>> {
    let first = tuples.first()?;
    let mut lo: Vec<Scalar> = flat(first).map(|(_, v)| v.clone()).collect();
    let mut hi = lo.clone();
    for t in &tuples[1..] {
        for (i, (_, v)) in flat(t).enumerate() {
            lo[i] = lo[i].clone().min(v.clone());
            hi[i] = hi[i].clone().max(v.clone());
        }
    }
    let mut volume: u128 = 1;
    let mut cells = Vec::with_capacity(lo.len());
    for (l, h) in lo.iter().zip(&hi) {
        if l == h {
            cells.push(Cell::Fixed(l.clone()));
            continue;
        }
        let (l, h) = (l.to_i64()?, h.to_i64()?);
        volume = volume.checked_mul(u128::try_from(h - l + 1).ok()?)?;
        cells.push(Cell::Range(l, h));
    }
    if volume != tuples.len() as u128 {
        return None;
    }
    // Distinct tuples inside the box with the box's volume fill it, provided
    // every varying entry is an integer.
    for t in tuples {
        for ((_, v), c) in flat(t).zip(&cells) {
            if matches!(c, Cell::Range(..)) && v.to_i64().is_none() {
                return None;
            }
        }
    }
    let (dim, arity) = (first[0].dim(), first.len());
    let mut it = cells.into_iter();
    Some(
        (0..arity)
            .map(|_| (0..dim).map(|_| it.by_ref().take(dim).collect()).collect())
            .collect(),
    )
}

fn tuple_changes(prev: &[Matrix], next: &[Matrix]) -> Vec<Change> {
    let single = prev.len() == 1;
    flat(prev)
        .zip(flat(next))
        .filter(|((_, a), (_, b))| a != b)
        .map(|((at, _), (_, b))| Change {
            at,
            value: b.clone(),
            single,
        })
        .collect()
}

fn check_tuples(kind: SemiringKind, dim: usize, arity: usize, tuples: &[Vec<Matrix>]) -> Result<()> {
    let mut seen = HashSet::new();
    for t in tuples {
        if t.len() != arity {
            return Err(Error::Arity {
                expected: arity,
                got: t.len(),
            });
        }
        for m in t {
            if m.kind() != kind {
                return Err(Error::KindMismatch(kind, m.kind()));
            }
            if m.dim() != dim {
                return Err(Error::DimensionMismatch(dim, m.dim()));
            }
        }
        if !seen.insert(t) {
            return Err(Error::Encoding("a set cannot repeat a tuple".into()));
        }
    }
    Ok(())
}

impl SetFile {
    /// Encodes a non-empty list of distinct tuples.
    pub fn encode(tuples: &[Vec<Matrix>], encoding: Encoding) -> Result<SetFile> {
        let first = tuples
            .first()
            .ok_or_else(|| Error::Encoding("cannot encode an empty set".into()))?;
        let m0 = first
            .first()
            .ok_or_else(|| Error::Encoding("tuples must hold at least one matrix".into()))?;
        let (semiring, dim, arity) = (m0.kind(), m0.dim(), first.len());
        check_tuples(semiring, dim, arity, tuples)?;
        let rows = |t: &[Matrix]| t.iter().map(Matrix::to_rows).collect::<Vec<_>>();
        let body = match encoding {
            Encoding::Raw => Body::Raw {
                tuples: tuples.iter().map(|t| rows(t)).collect(),
            },
            Encoding::Interval => {
                let slots =
                    detect_box(tuples).ok_or_else(|| Error::Encoding("the set is not an integer box".into()))?;
                Body::Interval { slots }
            }
            Encoding::Delta => Body::Delta {
                base: rows(first),
                diffs: tuples.windows(2).map(|w| tuple_changes(&w[0], &w[1])).collect(),
            },
            Encoding::Auto => {
                let enc = if detect_box(tuples).is_some() {
                    Encoding::Interval
                } else {
                    Encoding::Delta
                };
                return SetFile::encode(tuples, enc);
            }
        };
        Ok(SetFile {
            semiring,
            dim,
            arity,
            body,
        })
    }

    pub fn encoding(&self) -> Encoding {
        match self.body {
            Body::Raw { .. } => Encoding::Raw,
            Body::Interval { .. } => Encoding::Interval,
            Body::Delta { .. } => Encoding::Delta,
        }
    }

    fn matrix(&self, rows: Rows) -> Result<Matrix> {
        let m = Matrix::from_rows(self.semiring, rows)?;
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, m.dim()));
        }
        Ok(m)
    }

    fn tuple(&self, rows: &[Rows]) -> Result<Vec<Matrix>> {
        if rows.len() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                got: rows.len(),
            });
        }
        rows.iter().map(|r| self.matrix(r.clone())).collect()
    }

    /// The tuples, in encoding order. Interval grids are enumerated with the
    /// earliest varying position changing fastest.
    pub fn tuples(&self) -> Result<Vec<Vec<Matrix>>> {
        if self.dim == 0 || self.arity == 0 {
            return Err(Error::Encoding("dimension and arity must be positive".into()));
        }
        let tuples = match &self.body {
            Body::Raw { tuples } => {
                if tuples.is_empty() {
                    return Err(Error::Encoding("empty set".into()));
                }
                tuples.iter().map(|t| self.tuple(t)).collect::<Result<Vec<_>>>()?
            }
            Body::Interval { slots } => self.enumerate_box(slots)?,
            Body::Delta { base, diffs } => {
                let mut cur = self.tuple(base)?;
                let mut out = vec![cur.clone()];
                for changes in diffs {
                    let mut rows: Vec<Rows> = cur.iter().map(Matrix::to_rows).collect();
                    let mut touched = HashSet::new();
                    for c in changes {
                        let p = c.at;
                        if c.single != (self.arity == 1) {
                            return Err(Error::Encoding("position form does not match the arity".into()));
                        }
                        if p.slot > self.arity || p.row > self.dim || p.col > self.dim {
                            return Err(Error::Encoding(format!(
                                "position ({}, {}) is out of range",
                                p.row, p.col
                            )));
                        }
                        if !touched.insert(p) {
                            return Err(Error::Encoding("a position changes twice in one step".into()));
                        }
                        let slot = &mut rows[p.slot - 1][p.row - 1][p.col - 1];
                        if *slot == c.value {
                            return Err(Error::Encoding("a change must alter the entry".into()));
                        }
                        *slot = c.value.clone();
                    }
                    cur = self.tuple(&rows)?;
                    out.push(cur.clone());
                }
                out
            }
        };
        check_tuples(self.semiring, self.dim, self.arity, &tuples)?;
        Ok(tuples)
    }

    fn enumerate_box(&self, slots: &[Vec<Vec<Cell>>]) -> Result<Vec<Vec<Matrix>>> {
        if slots.len() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                got: slots.len(),
            });
        }
        let mut cells = Vec::new();
        for grid in slots {
            if grid.len() != self.dim || grid.iter().any(|r| r.len() != self.dim) {
                return Err(Error::Encoding("interval grid has the wrong shape".into()));
            }
            cells.extend(grid.iter().flatten().cloned());
        }
        let mut volume: u128 = 1;
        for c in &cells {
            if let Cell::Range(lo, hi) = c {
                if lo >= hi {
                    return Err(Error::Encoding(format!("range [{lo}, {hi}] must have lo < hi")));
                }
                volume = volume
                    .checked_mul((hi - lo + 1) as u128)
                    .filter(|v| *v <= 1 << 24)
                    .ok_or_else(|| Error::Encoding("interval box is too large to enumerate".into()))?;
            }
        }
        let mut odometer: Vec<i64> = cells
            .iter()
            .map(|c| match c {
                Cell::Range(lo, _) => *lo,
                Cell::Fixed(_) => 0,
            })
            .collect();
        let mut out = Vec::with_capacity(volume as usize);
        let per = self.dim * self.dim;
        for _ in 0..volume {
            let values: Vec<Scalar> = cells
                .iter()
                .zip(&odometer)
                .map(|(c, v)| match c {
                    Cell::Fixed(s) => s.clone(),
                    Cell::Range(..) => Scalar::int(*v),
                })
                .collect();
            let tuple = values
                .chunks(per)
                .map(|chunk| Matrix::new(self.semiring, self.dim, chunk.to_vec()))
                .collect::<Result<Vec<_>>>()?;
            out.push(tuple);
            for (c, v) in cells.iter().zip(odometer.iter_mut()) {
                if let Cell::Range(lo, hi) = c {
                    if *v < *hi {
                        *v += 1;
                        break;
                    }
                    *v = *lo;
                }
            }
        }
        Ok(out)
    }

    /// Compact notation for single-matrix sets: `[[2,[3,7]],[[4,5],5]]` for
    /// a box, `base, (((1,3),7)), …` for a delta chain.
    pub fn notation(&self) -> Result<String> {
        fn rows_text(rows: &Rows) -> String {
            let inner: Vec<String> = rows
                .iter()
                .map(|r| format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            format!("[{}]", inner.join(","))
        }
        if self.arity != 1 {
            return Err(Error::Encoding(
                "the compact notation covers single matrices only".into(),
            ));
        }
        Ok(match &self.body {
            Body::Raw { tuples } => tuples.iter().map(|t| rows_text(&t[0])).collect::<Vec<_>>().join(", "),
            Body::Interval { slots } => {
                let cell = |c: &Cell| match c {
                    Cell::Fixed(v) => v.to_string(),
                    Cell::Range(lo, hi) => format!("[{lo},{hi}]"),
                };
                let rows: Vec<String> = slots[0]
                    .iter()
                    .map(|r| format!("[{}]", r.iter().map(cell).collect::<Vec<_>>().join(",")))
                    .collect();
                format!("[{}]", rows.join(","))
            }
            Body::Delta { base, diffs } => {
                let mut out = rows_text(&base[0]);
                for changes in diffs {
                    let parts: Vec<String> = changes
                        .iter()
                        .map(|c| format!("(({},{}),{})", c.at.row, c.at.col, c.value))
                        .collect();
                    let _ = write!(out, ", ({})", parts.join(","));
                }
                out
            }
        })
    }
}

/// Encodes a marginal set as a single-line document.
pub fn encode_marginal_set(set: &MarginalSet, encoding: Encoding) -> Result<String> {
    to_text(&SetFile::encode(set.tuples(), encoding)?)
}

/// Decodes a set document, verifying every tuple against `template`.
pub fn decode_marginal_set(text: &str, template: &WordTemplate) -> Result<MarginalSet> {
    let file: SetFile = from_text(text)?;
    let mut set = MarginalSet::new(template.clone());
    for t in file.tuples()? {
        set.insert(t)?;
    }
    Ok(set)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TemplateWire {
    constants: Vec<Matrix>,
    summands: Vec<Vec<String>>,
    circles: Vec<usize>,
}

fn atom_text(a: &Atom) -> String {
    match a {
        Atom::Const(i) => format!("c{i}"),
        Atom::Slot(i) => format!("x{i}"),
    }
}

fn parse_atom(s: &str) -> Result<Atom> {
    let bad = || Error::Template(format!("atom {s:?} is neither cN nor xN"));
    let (head, idx) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
    let idx: usize = idx.parse().map_err(|_| bad())?;
    match head {
        "c" => Ok(Atom::Const(idx)),
        "x" => Ok(Atom::Slot(idx)),
        _ => Err(bad()),
    }
}

/// `{"constants":[…],"summands":[["c0","x0"]],"circles":[]}`; `cN` names a
/// constant, `xN` a multiplicative slot.
impl Serialize for WordTemplate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TemplateWire {
            constants: self.constants().to_vec(),
            summands: self
                .summands()
                .iter()
                .map(|t| t.iter().map(atom_text).collect())
                .collect(),
            circles: self.circles().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WordTemplate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = TemplateWire::deserialize(d)?;
        let summands = w
            .summands
            .iter()
            .map(|t| t.iter().map(|a| parse_atom(a)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(de::Error::custom)?;
        WordTemplate::new(w.constants, summands, w.circles).map_err(de::Error::custom)
    }
}

/// Named word shapes over one constant, or three for `five-factor`.
pub fn named_word(name: &str, constants: &[Matrix]) -> Result<WordTemplate> {
    let need = if name == "five-factor" { 3 } else { 1 };
    if constants.len() != need {
        return Err(Error::Template(format!("{name} needs {need} constant(s)")));
    }
    let a = &constants[0];
    match name {
        "right" => Ok(WordTemplate::right(a)),
        "left" => Ok(WordTemplate::left(a)),
        "sandwich" => Ok(WordTemplate::sandwich(a)),
        "additive" => Ok(WordTemplate::additive(a)),
        "five-factor" => WordTemplate::five_factor(a, &constants[1], &constants[2]),
        _ => Err(Error::Template(format!("unknown word {name:?}"))),
    }
}

/// Single-line JSON followed by a newline.
pub fn to_text<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string(value).map_err(|e| Error::Encoding(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn from_text<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

/// Writes `bytes` next to `path` and renames over it, so readers never see
/// a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error.to_string()))?;
    Ok(())
}

/// A machine-readable error record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub error: String,
    pub message: String,
}

impl ErrorRecord {
    pub fn new(kind: &str, err: &Error) -> Self {
        ErrorRecord {
            error: kind.to_string(),
            message: err.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(rows: &[&[i64]]) -> Vec<Matrix> {
        vec![Matrix::from_int_rows(SemiringKind::MinPlus, rows).unwrap()]
    }

    fn box_example() -> Vec<Vec<Matrix>> {
        let mut out = Vec::new();
        for c in 4..=5 {
            for b in 3..=7 {
                out.push(single(&[&[2, b], &[c, 5]]));
            }
        }
        out
    }

    fn chain_example() -> Vec<Vec<Matrix>> {
        vec![
            single(&[&[2, 3, 4], &[4, 5, 1], &[0, 8, 6]]),
            single(&[&[2, 3, 7], &[4, 5, 1], &[0, 8, 6]]),
            single(&[&[2, 3, 8], &[4, 5, 2], &[0, 8, 6]]),
        ]
    }

    #[test]
    fn box_notation() {
        let f = SetFile::encode(&box_example(), Encoding::Auto).unwrap();
        assert_eq!(f.encoding(), Encoding::Interval);
        assert_eq!(f.notation().unwrap(), "[[2,[3,7]],[[4,5],5]]");
        assert_eq!(f.tuples().unwrap(), box_example());
    }

    #[test]
    fn delta_notation() {
        let f = SetFile::encode(&chain_example(), Encoding::Auto).unwrap();
        assert_eq!(f.encoding(), Encoding::Delta);
        assert_eq!(
            f.notation().unwrap(),
            "[[2,3,4],[4,5,1],[0,8,6]], (((1,3),7)), (((1,3),8),((2,3),2))"
        );
        assert_eq!(f.tuples().unwrap(), chain_example());
        assert!(SetFile::encode(&chain_example(), Encoding::Interval).is_err());
    }

    #[test]
    fn singleton_delta_is_base_only() {
        let t = vec![single(&[&[1, 2], &[3, 4]])];
        let f = SetFile::encode(&t, Encoding::Delta).unwrap();
        assert_eq!(
            f.body,
            Body::Delta {
                base: vec![t[0][0].to_rows()],
                diffs: vec![]
            }
        );
    }

    #[test]
    fn documents_round_trip_byte_for_byte() {
        let pairs = vec![
            vec![Matrix::min_plus([[1, 2], [3, 4]]), Matrix::min_plus([[0, 0], [0, 0]])],
            vec![Matrix::min_plus([[1, 2], [3, 5]]), Matrix::min_plus([[0, 1], [0, 0]])],
        ];
        for tuples in [box_example(), chain_example(), pairs] {
            for enc in [Encoding::Raw, Encoding::Delta, Encoding::Auto] {
                let text = to_text(&SetFile::encode(&tuples, enc).unwrap()).unwrap();
                let back: SetFile = from_text(&text).unwrap();
                assert_eq!(to_text(&back).unwrap(), text);
                assert_eq!(back.tuples().unwrap(), tuples);
            }
        }
    }

    #[test]
    fn infinities_travel_as_tokens() {
        let m = Matrix::from_rows(
            SemiringKind::MinPlus,
            vec![
                vec![Scalar::PosInf, Scalar::int(0)],
                vec![Scalar::ratio(1, 3), Scalar::int(2)],
            ],
        )
        .unwrap();
        let text = to_text(&SetFile::encode(&[vec![m.clone()]], Encoding::Raw).unwrap()).unwrap();
        assert!(text.contains("\"inf\"") && text.contains("\"1/3\""));
        assert_eq!(from_text::<SetFile>(&text).unwrap().tuples().unwrap(), vec![vec![m]]);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        for bad in [
            r#"{"semiring":"min-plus","dim":2,"arity":1,"body":{"type":"delta","base":[[[1,2],[3,4]]],"diffs":[[[[3,1],5]]]}}"#,
            r#"{"semiring":"min-plus","dim":2,"arity":1,"body":{"type":"delta","base":[[[1,2],[3,4]]],"diffs":[[[[1,1],1]]]}}"#,
            r#"{"semiring":"min-plus","dim":2,"arity":1,"body":{"type":"raw","tuples":[]}}"#,
            r#"{"semiring":"min-plus","dim":2,"arity":1,"body":{"type":"raw","tuples":[[[[1,2],[3,4]]],[[[1,2],[3,4]]]]}}"#,
            r#"{"semiring":"min-plus","dim":2,"arity":1,"body":{"type":"interval","slots":[[[[5,1],0],[0,0]]]}}"#,
        ] {
            let parsed: Result<SetFile> = from_text(bad);
            assert!(parsed.and_then(|f| f.tuples()).is_err(), "{bad}");
        }
    }

    #[test]
    fn template_round_trip() {
        let a = Matrix::min_plus([[3, 2], [1, 5]]);
        for name in ["right", "left", "sandwich", "additive"] {
            let w = named_word(name, std::slice::from_ref(&a)).unwrap();
            let text = to_text(&w).unwrap();
            assert_eq!(from_text::<WordTemplate>(&text).unwrap(), w);
        }
        let w = named_word("right", &[a]).unwrap();
        assert!(to_text(&w).unwrap().contains(r#""summands":[["c0","x0"]]"#));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.json");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"two");
    }
}
