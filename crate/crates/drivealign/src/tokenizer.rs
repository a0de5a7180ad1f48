//! Fixed-vocabulary tokenization of multi-turn conversations and
//! trajectory-text serialization.
//!
//! Text is split into units: the literal markers `<SOT>`/`<EOT>`, single
//! digit characters, the punctuation set `. , ( ) -`, and maximal runs of
//! any other non-space characters. Each unit owns its preceding space, so a
//! unit can appear in the vocabulary twice (`"ego"` and `" ego"`); decoding
//! is plain concatenation and round-trips exactly. Numbers therefore
//! tokenize digit by digit, which is how the model predicts coordinates.

use std::collections::HashMap;
use std::ops::Range;

use serde_json::json;
use thiserror::Error;

use crate::traj::{Trajectory, Waypoint, WAYPOINT_COUNT};

pub const PAD: u32 = 0;
pub const BOS: u32 = 1;
pub const EOS: u32 = 2;
pub const SOT: u32 = 3;
pub const EOT: u32 = 4;

const RESERVED: [&str; 5] = ["<PAD>", "<BOS>", "<EOS>", "<SOT>", "<EOT>"];
const MAX_VOCAB: usize = 1024;
const PUNCT: [char; 5] = ['.', ',', '(', ')', '-'];

#[derive(Debug, Error)]
pub enum TokenizerError {
    #[error("empty template corpus")]
    EmptyCorpus,
    #[error("vocabulary exceeds {MAX_VOCAB} tokens ({0})")]
    VocabTooLarge(usize),
    #[error("out-of-vocabulary token {0:?}")]
    OutOfVocab(String),
    #[error("invalid vocabulary file: {0}")]
    InvalidVocab(String),
    #[error("conversation has no supervised positions")]
    EmptyMask,
}

/// Trajectory-text parse failures; each kind drives distinct handling of
/// failed generations downstream.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TrajParseError {
    #[error("missing <SOT>/<EOT> markers")]
    MissingMarker,
    #[error("expected {WAYPOINT_COUNT} waypoints, found {0}")]
    WaypointCount(usize),
    #[error("unparseable number {0:?}")]
    BadNumber(String),
}

/// Bijective token-string-to-id map with fixed reserved ids 0..4.
#[derive(Clone, Debug)]
pub struct Vocab {
    to_id: HashMap<String, u32>,
    to_token: Vec<String>,
}

impl Vocab {
    /// Build from template texts. Ids are assigned in first-encounter
    /// order; whenever a unit is first seen, both its bare and
    /// space-prefixed spellings are registered, so any single-spaced text
    /// over the template material encodes without OOV errors.
    pub fn build(template_corpus: &[String]) -> Result<Self, TokenizerError> {
        if template_corpus.is_empty() {
            return Err(TokenizerError::EmptyCorpus);
        }
        let mut vocab = Self {
            to_id: HashMap::new(),
            to_token: Vec::new(),
        };
        for t in RESERVED {
            vocab.push(t);
        }
        for text in template_corpus {
            for piece in split_units(text) {
                let unit = piece.unit;
                if !vocab.to_id.contains_key(unit) {
                    // Reserved markers already own their bare spelling.
                    if !RESERVED.contains(&unit) {
                        vocab.push(unit);
                    }
                }
                let spaced = format!(" {unit}");
                if !vocab.to_id.contains_key(&spaced) {
                    vocab.push(&spaced);
                }
            }
        }
        if vocab.to_token.len() > MAX_VOCAB {
            return Err(TokenizerError::VocabTooLarge(vocab.to_token.len()));
        }
        Ok(vocab)
    }

    fn push(&mut self, token: &str) {
        let id = self.to_token.len() as u32;
        self.to_id.insert(token.to_string(), id);
        self.to_token.push(token.to_string());
    }

    pub fn len(&self) -> usize {
        self.to_token.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_token.is_empty()
    }

    pub fn id(&self, token: &str) -> Option<u32> {
        self.to_id.get(token).copied()
    }

    pub fn token(&self, id: u32) -> Option<&str> {
        self.to_token.get(id as usize).map(|s| s.as_str())
    }

    pub fn contains(&self, token: &str) -> bool {
        self.to_id.contains_key(token)
    }

    /// Encode a text fragment. `leading_space` marks whether the fragment
    /// follows other text it is separated from by one space.
    pub fn encode_fragment(&self, text: &str, leading_space: bool) -> Result<Vec<u32>, TokenizerError> {
        let mut out = Vec::new();
        for (i, piece) in split_units(text).into_iter().enumerate() {
            let spaced = piece.has_space || (i == 0 && leading_space);
            let key: std::borrow::Cow<str> =
                if spaced { format!(" {}", piece.unit).into() } else { piece.unit.into() };
            match self.to_id.get(key.as_ref()) {
                Some(&id) => out.push(id),
                None => return Err(TokenizerError::OutOfVocab(key.into_owned())),
            }
        }
        Ok(out)
    }

    pub fn encode(&self, text: &str) -> Result<Vec<u32>, TokenizerError> {
        self.encode_fragment(text, false)
    }

    /// Concatenate token strings; structural ids (PAD/BOS/EOS) contribute
    /// nothing, `<SOT>`/`<EOT>` decode to their literal spelling.
    pub fn decode(&self, ids: &[u32]) -> String {
        let mut out = String::new();
        for &id in ids {
            if id == PAD || id == BOS || id == EOS {
                continue;
            }
            if let Some(tok) = self.token(id) {
                out.push_str(tok);
            }
        }
        out
    }

    /// Persist as a JSON object `{token: id}` with keys sorted.
    pub fn to_json(&self) -> String {
        let map: std::collections::BTreeMap<&str, u32> =
            self.to_token.iter().enumerate().map(|(i, t)| (t.as_str(), i as u32)).collect();
        serde_json::to_string_pretty(&json!(map)).expect("vocab serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, TokenizerError> {
        let map: std::collections::BTreeMap<String, u32> = serde_json::from_str(text)
            .map_err(|e| TokenizerError::InvalidVocab(e.to_string()))?;
        let mut to_token = vec![String::new(); map.len()];
        let mut to_id = HashMap::new();
        for (token, id) in map {
            let slot = to_token
                .get_mut(id as usize)
                .ok_or_else(|| TokenizerError::InvalidVocab(format!("id {id} out of range")))?;
            if !slot.is_empty() {
                return Err(TokenizerError::InvalidVocab(format!("duplicate id {id}")));
            }
            *slot = token.clone();
            to_id.insert(token, id);
        }
        for (i, reserved) in RESERVED.iter().enumerate() {
            if to_token.get(i).map(|s| s.as_str()) != Some(*reserved) {
                return Err(TokenizerError::InvalidVocab(format!(
                    "reserved token {reserved} missing from id {i}"
                )));
            }
        }
        Ok(Self { to_id, to_token })
    }
}

struct Piece<'a> {
    has_space: bool,
    unit: &'a str,
}

fn is_punct(c: char) -> bool {
    PUNCT.contains(&c)
}

fn marker_at(text: &str, i: usize) -> Option<usize> {
    for m in ["<SOT>", "<EOT>"] {
        if text[i..].starts_with(m) {
            return Some(m.len());
        }
    }
    None
}

fn split_units(text: &str) -> Vec<Piece<'_>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let mut pending_space = false;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c == ' ' {
            pending_space = true;
            i += 1;
            continue;
        }
        let start = i;
        if let Some(len) = marker_at(text, i) {
            i += len;
        } else if c.is_ascii_digit() || is_punct(c) {
            i += 1;
        } else {
            while i < bytes.len() {
                let c = bytes[i] as char;
                if c == ' ' || c.is_ascii_digit() || is_punct(c) || marker_at(text, i).is_some() {
                    break;
                }
                i += 1;
            }
        }
        out.push(Piece { has_space: pending_space, unit: &text[start..i] });
        pending_space = false;
    }
    out
}

/// One turn's extent inside a [`TokenStream`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TurnSpan {
    pub prompt: Range<usize>,
    pub response: Range<usize>,
}

/// Flattened multi-turn conversation: token ids, a per-token supervision
/// mask (true exactly on response tokens plus the final `<EOS>`), and the
/// spans of each turn. The leading `<BOS>` belongs to the first prompt
/// span and `<EOS>` to the last response span, so spans cover every
/// position.
#[derive(Clone, Debug, PartialEq)]
pub struct TokenStream {
    pub ids: Vec<u32>,
    pub loss_mask: Vec<bool>,
    pub turn_spans: Vec<TurnSpan>,
}

impl TokenStream {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn masked_count(&self) -> usize {
        self.loss_mask.iter().filter(|&&m| m).count()
    }
}

/// Encode `(prompt, response)` turns as
/// `<BOS> prompt1 response1 prompt2 ... <EOS>`, supervising response
/// tokens and the final `<EOS>` only.
pub fn encode_conversation(
    turns: &[(String, String)],
    vocab: &Vocab,
) -> Result<TokenStream, TokenizerError> {
    let mut ids = vec![BOS];
    let mut loss_mask = vec![false];
    let mut turn_spans = Vec::with_capacity(turns.len());
    for (ti, (prompt, response)) in turns.iter().enumerate() {
        let prompt_start = if ti == 0 { 0 } else { ids.len() };
        let p_ids = vocab.encode_fragment(prompt, ti > 0)?;
        ids.extend_from_slice(&p_ids);
        loss_mask.extend(std::iter::repeat(false).take(p_ids.len()));
        let prompt_end = ids.len();
        let r_ids = vocab.encode_fragment(response, true)?;
        ids.extend_from_slice(&r_ids);
        loss_mask.extend(std::iter::repeat(true).take(r_ids.len()));
        turn_spans.push(TurnSpan { prompt: prompt_start..prompt_end, response: prompt_end..ids.len() });
    }
    ids.push(EOS);
    loss_mask.push(true);
    if let Some(last) = turn_spans.last_mut() {
        last.response.end = ids.len();
    }
    let stream = TokenStream { ids, loss_mask, turn_spans };
    if stream.masked_count() == 0 {
        return Err(TokenizerError::EmptyMask);
    }
    Ok(stream)
}

/// `<SOT>(x1,y1),...,(x6,y6)<EOT>` with every coordinate printed to
/// exactly two decimal places.
pub fn serialize_trajectory(traj: &Trajectory) -> String {
    let body: Vec<String> =
        traj.points().iter().map(|w| format!("({:.2},{:.2})", w.x, w.y)).collect();
    format!("<SOT>{}<EOT>", body.join(","))
}

/// Parse the first `<SOT>`...`<EOT>` span of `text` into a trajectory.
pub fn parse_trajectory(text: &str) -> Result<Trajectory, TrajParseError> {
    let start = text.find("<SOT>").ok_or(TrajParseError::MissingMarker)?;
    let after = &text[start + 5..];
    let end = after.find("<EOT>").ok_or(TrajParseError::MissingMarker)?;
    let inner = &after[..end];

    let mut points = Vec::new();
    let mut rest = inner;
    loop {
        rest = rest.trim_start_matches(',');
        if rest.is_empty() {
            break;
        }
        let Some(stripped) = rest.strip_prefix('(') else {
            return Err(TrajParseError::BadNumber(clip(rest)));
        };
        let Some(close) = stripped.find(')') else {
            return Err(TrajParseError::BadNumber(clip(stripped)));
        };
        let pair = &stripped[..close];
        let mut nums = pair.split(',');
        let x = parse_coord(nums.next().unwrap_or(""))?;
        let y = parse_coord(nums.next().unwrap_or(""))?;
        if nums.next().is_some() {
            return Err(TrajParseError::BadNumber(clip(pair)));
        }
        points.push(Waypoint::new(x, y));
        rest = &stripped[close + 1..];
    }
    Trajectory::from_points(&points).ok_or(TrajParseError::WaypointCount(points.len()))
}

fn parse_coord(s: &str) -> Result<f64, TrajParseError> {
    let v: f64 = s.trim().parse().map_err(|_| TrajParseError::BadNumber(clip(s)))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(TrajParseError::BadNumber(clip(s)))
    }
}

fn clip(s: &str) -> String {
    s.chars().take(32).collect()
}
