//! A single finite-group interface over several concrete backends.
//!
//! Every backend maps its elements to dense keys `0..order` with `0` the
//! identity, so orbit code can treat elements as small integers regardless
//! of where they came from. Small groups (order up to
//! [`DENSE_TABLE_LIMIT`]) get a full multiplication table up front.

mod direct;
mod permutation;

use std::collections::BTreeMap;

use thiserror::Error;

pub use direct::{DihedralGroup, QuaternionGroup};
pub use permutation::{Permutation, PermutationGroup, MAX_DEGREE, MAX_SYMMETRIC_DEGREE};

use crate::presentations::{Builtin, PresentationError};
use crate::toddcoxeter::{enumerate, CayleyRealization, ElementId, Enumeration, EnumerationError};
use crate::words::Word;

/// Groups up to this order get a precomputed multiplication table.
pub const DENSE_TABLE_LIMIT: usize = 2048;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("element {0} is not in a group of order {1}")]
    NotAnElement(u32, usize),
    #[error("unsupported permutation degree {0}")]
    UnsupportedDegree(usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("bad cycle notation {0:?}")]
    BadCycleNotation(String),
    #[error("permutation {0} is not in this group")]
    PermutationNotInGroup(String),
    #[error("this group has no generator named {0:?}")]
    UnknownGenerator(String),
    #[error("group axiom violated: {0}")]
    AxiomViolation(String),
    #[error("presentation did not close within {0} cosets")]
    Capped(usize),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

#[derive(Debug, Clone)]
pub enum Backend {
    Cayley(CayleyRealization),
    Permutation(PermutationGroup),
    DirectDihedral(DihedralGroup),
    DirectQuaternion(QuaternionGroup),
}

/// A finite group with elements keyed `0..order`.
#[derive(Debug, Clone)]
pub struct Group {
    backend: Backend,
    order: usize,
    table: Option<Vec<u32>>,
    inverses: Vec<u32>,
    generators: Vec<(String, ElementId)>,
}

impl Group {
    pub fn from_backend(backend: Backend) -> Self {
        let (order, generators): (usize, Vec<(String, ElementId)>) = match &backend {
            Backend::Cayley(r) => (
                r.order(),
                r.origin()
                    .generators()
                    .iter()
                    .enumerate()
                    .map(|(i, n)| (n.clone(), r.generator(i)))
                    .collect(),
            ),
            Backend::Permutation(p) => (
                p.order(),
                p.generators()
                    .iter()
                    .map(|(n, g)| (n.clone(), ElementId(p.key_of(g).expect("generator"))))
                    .collect(),
            ),
            Backend::DirectDihedral(d) => (
                d.order(),
                vec![
                    ("r".into(), ElementId(d.key(1, false))),
                    ("s".into(), ElementId(d.key(0, true))),
                ],
            ),
            Backend::DirectQuaternion(q) => (
                q.order(),
                vec![
                    ("i".into(), ElementId(QuaternionGroup::I)),
                    ("j".into(), ElementId(QuaternionGroup::J)),
                ],
            ),
        };
        let mut group = Self {
            backend,
            order,
            table: None,
            inverses: Vec::new(),
            generators,
        };
        group.inverses = (0..order as u32)
            .map(|g| group.backend_inverse(g))
            .collect();
        if order <= DENSE_TABLE_LIMIT {
            let mut table = Vec::with_capacity(order * order);
            for g in 0..order as u32 {
                for h in 0..order as u32 {
                    table.push(group.backend_multiply(g, h));
                }
            }
            group.table = Some(table);
        }
        group
    }

    pub fn from_realization(r: CayleyRealization) -> Self {
        Self::from_backend(Backend::Cayley(r))
    }

    /// Enumerates a named presentation and wraps the result.
    pub fn from_builtin(b: &Builtin, coset_cap: usize) -> Result<Self, GroupError> {
        let p = b.presentation()?;
        match enumerate(&p, coset_cap)? {
            Enumeration::Complete(r) => Ok(Self::from_realization(r)),
            Enumeration::Capped { .. } => Err(GroupError::Capped(coset_cap)),
        }
    }

    /// The full symmetric group `S_n`, keyed by Lehmer rank.
    pub fn symmetric_group(n: usize) -> Result<Self, GroupError> {
        Ok(Self::from_backend(Backend::Permutation(
            PermutationGroup::symmetric(n)?,
        )))
    }

    pub fn dihedral(n: u32) -> Option<Self> {
        DihedralGroup::new(n).map(|d| Self::from_backend(Backend::DirectDihedral(d)))
    }

    pub fn quaternion() -> Self {
        Self::from_backend(Backend::DirectQuaternion(QuaternionGroup))
    }

    fn backend_multiply(&self, g: u32, h: u32) -> u32 {
        match &self.backend {
            Backend::Cayley(r) => r.multiply_unchecked(ElementId(g), ElementId(h)).0,
            Backend::Permutation(p) => p.multiply(g, h),
            Backend::DirectDihedral(d) => d.multiply(g, h),
            Backend::DirectQuaternion(q) => q.multiply(g, h),
        }
    }

    fn backend_inverse(&self, g: u32) -> u32 {
        match &self.backend {
            Backend::Cayley(r) => r.inverse(ElementId(g)).expect("in range").0,
            Backend::Permutation(p) => p.inverse(g),
            Backend::DirectDihedral(d) => d.inverse(g),
            Backend::DirectQuaternion(q) => q.inverse(g),
        }
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn realization(&self) -> Option<&CayleyRealization> {
        match &self.backend {
            Backend::Cayley(r) => Some(r),
            _ => None,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> ElementId {
        ElementId::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.order as u32).map(ElementId)
    }

    pub fn contains(&self, g: ElementId) -> bool {
        g.index() < self.order
    }

    pub fn check(&self, g: ElementId) -> Result<ElementId, GroupError> {
        if self.contains(g) {
            Ok(g)
        } else {
            Err(GroupError::NotAnElement(g.0, self.order))
        }
    }

    /// Canonical key of `g`; injective and dense in `0..order`.
    pub fn key(&self, g: ElementId) -> u32 {
        g.0
    }

    /// Group product. Both arguments must be elements of this group.
    #[inline]
    pub fn multiply(&self, g: ElementId, h: ElementId) -> ElementId {
        match &self.table {
            Some(t) => ElementId(t[g.index() * self.order + h.index()]),
            None => ElementId(self.backend_multiply(g.0, h.0)),
        }
    }

    #[inline]
    pub fn inverse(&self, g: ElementId) -> ElementId {
        ElementId(self.inverses[g.index()])
    }

    /// `y^-1 g y`.
    #[inline]
    pub fn conjugate(&self, g: ElementId, y: ElementId) -> ElementId {
        self.multiply(self.multiply(self.inverse(y), g), y)
    }

    pub fn pow(&self, g: ElementId, exponent: i64) -> ElementId {
        let base = if exponent < 0 { self.inverse(g) } else { g };
        let mut acc = self.identity();
        let mut sq = base;
        let mut e = exponent.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(acc, sq);
            }
            sq = self.multiply(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn product<I: IntoIterator<Item = ElementId>>(&self, items: I) -> ElementId {
        items
            .into_iter()
            .fold(self.identity(), |acc, x| self.multiply(acc, x))
    }

    /// Least `k >= 1` with `g^k = 1`.
    pub fn element_order(&self, g: ElementId) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity() {
            x = self.multiply(x, g);
            k += 1;
        }
        k
    }

    /// Element order -> number of elements of that order.
    pub fn element_order_multiset(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for g in self.elements() {
            *out.entry(self.element_order(g)).or_insert(0) += 1;
        }
        out
    }

    pub fn generators(&self) -> &[(String, ElementId)] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Result<ElementId, GroupError> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, g)| g)
            .ok_or_else(|| GroupError::UnknownGenerator(name.to_string()))
    }

    /// Evaluates a word by generator name.
    pub fn evaluate(&self, w: &Word) -> Result<ElementId, GroupError> {
        if let Backend::Cayley(r) = &self.backend {
            if let Ok(g) = r.evaluate_word(w) {
                return Ok(g);
            }
        }
        let images = w
            .alphabet()
            .names()
            .iter()
            .map(|n| self.generator(n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.product(w.letters().iter().map(|l| {
            let g = images[l.generator];
            if l.inverse {
                self.inverse(g)
            } else {
                g
            }
        })))
    }

    /// Looks up a permutation literal in a permutation-backed group.
    pub fn permutation_element(&self, text: &str) -> Result<ElementId, GroupError> {
        let Backend::Permutation(p) = &self.backend else {
            return Err(GroupError::BadCycleNotation(format!(
                "{text} (this group is not a permutation group)"
            )));
        };
        let perm = Permutation::parse_cycles(p.degree(), text)?;
        p.key_of(&perm)
            .map(ElementId)
            .ok_or_else(|| GroupError::PermutationNotInGroup(perm.to_string()))
    }

    /// Human-readable name of an element.
    pub fn label(&self, g: ElementId) -> String {
        match &self.backend {
            Backend::Cayley(r) => r
                .representative(g)
                .map(|w| w.to_string())
                .unwrap_or_else(|_| g.to_string()),
            Backend::Permutation(p) => p.element(g.0).to_string(),
            Backend::DirectDihedral(d) => d.label(g.0),
            Backend::DirectQuaternion(q) => q.label(g.0),
        }
    }

    /// Checks associativity, identity and inverses. Exhaustive up to order
    /// 200; above that, a deterministic sample of triples.
    pub fn verify_axioms(&self) -> Result<(), GroupError> {
        let n = self.order as u32;
        let e = self.identity();
        for g in self.elements() {
            if self.multiply(e, g) != g || self.multiply(g, e) != g {
                return Err(GroupError::AxiomViolation(format!("identity fails at {g}")));
            }
            if self.multiply(g, self.inverse(g)) != e || self.multiply(self.inverse(g), g) != e {
                return Err(GroupError::AxiomViolation(format!("inverse fails at {g}")));
            }
        }
        let triples: Box<dyn Iterator<Item = (u32, u32, u32)>> = if n <= 200 {
            Box::new(
                (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c)))),
            )
        } else {
            Box::new((0..20_000u64).map(move |k| {
                let h = k.wrapping_mul(0x9e37_79b9_7f4a_7c15);
                (
                    (h % n as u64) as u32,
                    ((h >> 20) % n as u64) as u32,
                    ((h >> 40) % n as u64) as u32,
                )
            }))
        };
        for (a, b, c) in triples {
            let (a, b, c) = (ElementId(a), ElementId(b), ElementId(c));
            if self.multiply(self.multiply(a, b), c) != self.multiply(a, self.multiply(b, c)) {
                return Err(GroupError::AxiomViolation(format!(
                    "associativity fails at ({a}, {b}, {c})"
                )));
            }
        }
        Ok(())
    }
}

/// Extends `images` (one target element per generator of `source`, in
/// order) to a map on all of `source`, and checks that it is a group
/// isomorphism onto `target`.
///
/// Returns the element map on success.
pub fn isomorphism_from_generators(
    source: &Group,
    target: &Group,
    images: &[ElementId],
) -> Option<Vec<ElementId>> {
    if source.order() != target.order() || images.len() != source.generators().len() {
        return None;
    }
    let mut map: Vec<Option<ElementId>> = vec![None; source.order()];
    map[0] = Some(target.identity());
    let mut queue = std::collections::VecDeque::from([source.identity()]);
    while let Some(g) = queue.pop_front() {
        let image = map[g.index()].expect("queued elements are mapped");
        for (k, &(_, s)) in source.generators().iter().enumerate() {
            let next = source.multiply(g, s);
            let next_image = target.multiply(image, images[k]);
            match map[next.index()] {
                None => {
                    map[next.index()] = Some(next_image);
                    queue.push_back(next);
                }
                Some(existing) if existing != next_image => return None,
                Some(_) => {}
            }
        }
    }
    let map: Vec<ElementId> = map.into_iter().collect::<Option<_>>()?;
    let mut hit = vec![false; target.order()];
    for &m in &map {
        if std::mem::replace(&mut hit[m.index()], true) {
            return None;
        }
    }
    for g in source.elements() {
        for h in source.elements() {
            if map[source.multiply(g, h).index()] != target.multiply(map[g.index()], map[h.index()])
            {
                return None;
            }
        }
    }
    Some(map)
}
