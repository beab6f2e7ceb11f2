//! Hurwitz moves on factorizations and breadth-first orbit enumeration.
//!
//! Positions are 1-based: the move at position `i` acts on factors `i` and
//! `i + 1`.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};
use std::hash::Hash;
use std::sync::Arc;

use rustc_hash::FxHashSet;
use serde::Serialize;
use thiserror::Error;

use crate::groups::{Group, GroupError};
use crate::toddcoxeter::ElementId;

/// Default bound on orbit members.
pub const DEFAULT_NODE_CAP: usize = 10_000_000;

#[derive(Debug, Error)]
pub enum HurwitzError {
    #[error("a factorization needs at least one factor")]
    Empty,
    #[error("move position {position} is out of range for length {length} (valid: 1..={max})", max = length.saturating_sub(1))]
    PositionOutOfRange { position: usize, length: usize },
    #[error("factorizations have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("factorizations live in different groups")]
    GroupMismatch,
    #[error("node cap must be at least 1")]
    InvalidCap,
    #[error("orbit was capped at {0} members; rerun with a larger --node-cap to export it")]
    CappedOrbit(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Forward => Direction::Inverse,
            Direction::Inverse => Direction::Forward,
        }
    }
}

/// A tuple of group elements.
#[derive(Clone)]
pub struct Factorization {
    group: Arc<Group>,
    factors: Vec<ElementId>,
}

impl Factorization {
    pub fn new(group: Arc<Group>, factors: Vec<ElementId>) -> Result<Self, HurwitzError> {
        if factors.is_empty() {
            return Err(HurwitzError::Empty);
        }
        for &f in &factors {
            group.check(f)?;
        }
        Ok(Self { group, factors })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn factors(&self) -> &[ElementId] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Same group, different factors; the caller vouches for membership.
    pub(crate) fn with_factors(&self, factors: Vec<ElementId>) -> Self {
        Self {
            group: Arc::clone(&self.group),
            factors,
        }
    }

    pub fn product(&self) -> ElementId {
        self.group.product(self.factors.iter().copied())
    }

    pub fn labels(&self) -> Vec<String> {
        self.factors.iter().map(|&f| self.group.label(f)).collect()
    }

    pub fn hurwitz_move(
        &self,
        position: usize,
        direction: Direction,
    ) -> Result<Self, HurwitzError> {
        let mut factors = self.factors.clone();
        check_position(position, factors.len())?;
        apply_move(&self.group, &mut factors, position - 1, direction);
        Ok(self.with_factors(factors))
    }

    /// Applies `moves` left to right.
    pub fn apply_braid(&self, moves: &[(usize, Direction)]) -> Result<Self, HurwitzError> {
        for &(position, _) in moves {
            check_position(position, self.len())?;
        }
        let mut factors = self.factors.clone();
        for &(position, direction) in moves {
            apply_move(&self.group, &mut factors, position - 1, direction);
        }
        Ok(self.with_factors(factors))
    }
}

impl PartialEq for Factorization {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.factors == other.factors
    }
}

impl Eq for Factorization {}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Factorization").field(&self.factors).finish()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.labels().join(", "))
    }
}

fn check_position(position: usize, length: usize) -> Result<(), HurwitzError> {
    if position == 0 || position >= length {
        Err(HurwitzError::PositionOutOfRange { position, length })
    } else {
        Ok(())
    }
}

/// Moves on the pair at 0-based index `k`, `k + 1`.
#[inline]
fn apply_move(group: &Group, factors: &mut [ElementId], k: usize, direction: Direction) {
    let (x, y) = (factors[k], factors[k + 1]);
    let (u, v) = match direction {
        Direction::Forward => (y, group.conjugate(x, y)),
        Direction::Inverse => (group.conjugate(y, group.inverse(x)), x),
    };
    factors[k] = u;
    factors[k + 1] = v;
}

/// Packs a factor tuple into a hashable key.
trait Codec {
    type Key: Hash + Eq + Clone;
    fn encode(&self, factors: &[ElementId]) -> Self::Key;
    fn decode(&self, key: &Self::Key, out: &mut [ElementId]);
}

/// Fixed-width bit packing into one `u128`, used when it fits.
struct Packed {
    bits: u32,
    mask: u128,
}

impl Packed {
    fn new(order: usize, length: usize) -> Option<Self> {
        let bits = usize::BITS - order.saturating_sub(1).leading_zeros();
        let bits = bits.max(1);
        (bits as usize * length <= 128).then(|| Self {
            bits,
            mask: (1u128 << bits) - 1,
        })
    }
}

impl Codec for Packed {
    type Key = u128;

    #[inline]
    fn encode(&self, factors: &[ElementId]) -> u128 {
        factors
            .iter()
            .fold(0u128, |acc, f| (acc << self.bits) | u128::from(f.0))
    }

    #[inline]
    fn decode(&self, key: &u128, out: &mut [ElementId]) {
        let mut k = *key;
        for slot in out.iter_mut().rev() {
            *slot = ElementId((k & self.mask) as u32);
            k >>= self.bits;
        }
    }
}

/// Fallback for long tuples over large groups.
struct Boxed;

impl Codec for Boxed {
    type Key = Box<[u32]>;

    fn encode(&self, factors: &[ElementId]) -> Box<[u32]> {
        factors.iter().map(|f| f.0).collect()
    }

    fn decode(&self, key: &Box<[u32]>, out: &mut [ElementId]) {
        for (slot, &v) in out.iter_mut().zip(key.iter()) {
            *slot = ElementId(v);
        }
    }
}

struct Exploration<K> {
    seen: FxHashSet<K>,
    capped: bool,
    found: bool,
}

fn explore<C: Codec>(
    codec: &C,
    group: &Group,
    base: &[ElementId],
    cap: usize,
    target: Option<&[ElementId]>,
) -> Exploration<C::Key> {
    let target = target.map(|t| codec.encode(t));
    let start = codec.encode(base);
    let mut found = target.as_ref() == Some(&start);
    let mut seen = FxHashSet::default();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    let mut current = base.to_vec();
    let mut capped = false;
    'bfs: while let Some(key) = queue.pop_front() {
        if found {
            break;
        }
        codec.decode(&key, &mut current);
        for k in 0..current.len().saturating_sub(1) {
            for direction in [Direction::Forward, Direction::Inverse] {
                let (x, y) = (current[k], current[k + 1]);
                apply_move(group, &mut current, k, direction);
                let next = codec.encode(&current);
                current[k] = x;
                current[k + 1] = y;
                if seen.contains(&next) {
                    continue;
                }
                if seen.len() >= cap {
                    capped = true;
                    break 'bfs;
                }
                if target.as_ref() == Some(&next) {
                    found = true;
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Exploration {
        seen,
        capped,
        found,
    }
}

/// The set of factorizations reachable from `base`.
#[derive(Debug, Clone)]
pub struct Orbit {
    base: Factorization,
    members: Vec<Box<[ElementId]>>,
    capped: bool,
}

impl Orbit {
    pub fn base(&self) -> &Factorization {
        &self.base
    }

    /// Members in ascending order of their factor keys.
    pub fn members(&self) -> &[Box<[ElementId]>] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_capped(&self) -> bool {
        self.capped
    }

    pub fn contains(&self, factors: &[ElementId]) -> bool {
        self.position(factors).is_some()
    }

    fn position(&self, factors: &[ElementId]) -> Option<usize> {
        self.members
            .binary_search_by(|m| m.as_ref().cmp(factors))
            .ok()
    }

    pub fn to_dot(&self, options: ExportOptions) -> Result<String, HurwitzError> {
        let (vertices, edges) = self.graph(options)?;
        let mut out = String::from("digraph orbit {\n");
        for (i, v) in vertices.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", v.replace('"', "\\\""));
        }
        for e in &edges {
            let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.from, e.to, e.label);
        }
        out.push_str("}\n");
        Ok(out)
    }

    pub fn to_json(&self, options: ExportOptions) -> Result<String, HurwitzError> {
        let (vertices, edges) = self.graph(options)?;
        let doc = OrbitGraph { vertices, edges };
        Ok(serde_json::to_string_pretty(&doc).expect("graph serializes"))
    }

    fn graph(&self, options: ExportOptions) -> Result<(Vec<String>, Vec<Edge>), HurwitzError> {
        if self.capped {
            return Err(HurwitzError::CappedOrbit(self.size()));
        }
        let group = &self.base.group;
        let vertices = self
            .members
            .iter()
            .map(|m| {
                let labels: Vec<String> = m.iter().map(|&f| group.label(f)).collect();
                format!("({})", labels.join(", "))
            })
            .collect();
        let mut edges = Vec::new();
        let mut scratch = Vec::new();
        for (from, member) in self.members.iter().enumerate() {
            for k in 0..member.len().saturating_sub(1) {
                scratch.clear();
                scratch.extend_from_slice(member);
                apply_move(group, &mut scratch, k, Direction::Forward);
                let to = self.position(&scratch).expect("uncapped orbits are closed");
                if to != from || options.self_loops {
                    edges.push(Edge {
                        from,
                        to,
                        label: format!("σ{}", k + 1),
                    });
                }
            }
        }
        Ok((vertices, edges))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ExportOptions {
    /// Include edges for moves that fix a member.
    pub self_loops: bool,
}

#[derive(Serialize)]
struct Edge {
    from: usize,
    to: usize,
    #[serde(rename = "move")]
    label: String,
}

#[derive(Serialize)]
struct OrbitGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

/// Serializes as a bare integer when finite, `{"at_least": n}` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitSize {
    Finite(usize),
    AtLeast(usize),
}

impl Serialize for OrbitSize {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match *self {
            OrbitSize::Finite(n) => s.serialize_u64(n as u64),
            OrbitSize::AtLeast(n) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("at_least", &n)?;
                m.end()
            }
        }
    }
}

impl OrbitSize {
    pub fn finite(self) -> Option<usize> {
        match self {
            OrbitSize::Finite(n) => Some(n),
            OrbitSize::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for OrbitSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitSize::Finite(n) => write!(f, "{n}"),
            OrbitSize::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Yes,
    No,
    Unknown,
}

fn with_codec<R>(
    group: &Group,
    length: usize,
    packed: impl FnOnce(&Packed) -> R,
    boxed: impl FnOnce(&Boxed) -> R,
) -> R {
    match Packed::new(group.order(), length) {
        Some(codec) => packed(&codec),
        None => boxed(&Boxed),
    }
}

/// Breadth-first closure of `base` under all moves and inverse moves.
///
/// At most `node_cap` members are collected; if the orbit is larger the
/// result is marked capped and holds the members found so far.
pub fn orbit(base: &Factorization, node_cap: usize) -> Result<Orbit, HurwitzError> {
    if node_cap == 0 {
        return Err(HurwitzError::InvalidCap);
    }
    let group = &base.group;
    let length = base.len();
    let (members, capped) = with_codec(
        group,
        length,
        |c| collect(c, group, &base.factors, node_cap),
        |c| collect(c, group, &base.factors, node_cap),
    );
    Ok(Orbit {
        base: base.clone(),
        members,
        capped,
    })
}

fn collect<C: Codec>(
    codec: &C,
    group: &Group,
    base: &[ElementId],
    cap: usize,
) -> (Vec<Box<[ElementId]>>, bool) {
    let ex = explore(codec, group, base, cap, None);
    let mut buf = base.to_vec();
    let mut members: Vec<Box<[ElementId]>> = ex
        .seen
        .iter()
        .map(|k| {
            codec.decode(k, &mut buf);
            buf.clone().into_boxed_slice()
        })
        .collect();
    members.sort_unstable();
    (members, ex.capped)
}

pub fn orbit_size(base: &Factorization, node_cap: usize) -> Result<OrbitSize, HurwitzError> {
    if node_cap == 0 {
        return Err(HurwitzError::InvalidCap);
    }
    let group = &base.group;
    let (n, capped) = with_codec(
        group,
        base.len(),
        |c| {
            let ex = explore(c, group, &base.factors, node_cap, None);
            (ex.seen.len(), ex.capped)
        },
        |c| {
            let ex = explore(c, group, &base.factors, node_cap, None);
            (ex.seen.len(), ex.capped)
        },
    );
    Ok(if capped {
        OrbitSize::AtLeast(n)
    } else {
        OrbitSize::Finite(n)
    })
}

/// Whether `second` is reachable from `first`, stopping as soon as it is.
pub fn same_orbit(
    first: &Factorization,
    second: &Factorization,
    node_cap: usize,
) -> Result<Membership, HurwitzError> {
    if node_cap == 0 {
        return Err(HurwitzError::InvalidCap);
    }
    if !Arc::ptr_eq(&first.group, &second.group) {
        return Err(HurwitzError::GroupMismatch);
    }
    if first.len() != second.len() {
        return Err(HurwitzError::LengthMismatch(first.len(), second.len()));
    }
    if first.product() != second.product() {
        return Ok(Membership::No);
    }
    let group = &first.group;
    let (found, capped) = with_codec(
        group,
        first.len(),
        |c| {
            let ex = explore(c, group, &first.factors, node_cap, Some(&second.factors));
            (ex.found, ex.capped)
        },
        |c| {
            let ex = explore(c, group, &first.factors, node_cap, Some(&second.factors));
            (ex.found, ex.capped)
        },
    );
    Ok(match (found, capped) {
        (true, _) => Membership::Yes,
        (false, true) => Membership::Unknown,
        (false, false) => Membership::No,
    })
}
