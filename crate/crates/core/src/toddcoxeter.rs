//! Coset enumeration over the trivial subgroup.
//!
//! The enumerator is the relator-based (HLT) strategy: cosets are processed
//! in creation order, each relator is scanned and filled from the current
//! coset, and then any missing generator images are defined. Coincidences
//! are merged through a union-find forest with immediate table patching.
//!
//! Because the subgroup is trivial, the finished coset table is the right
//! regular representation of the group. After enumeration the live cosets
//! are renumbered by a breadth-first walk from the identity coset, trying
//! generators in declaration order (each generator before its inverse), so
//! element ids do not depend on anything but the presentation.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentations::{Presentation, PresentationError};
use crate::words::{Letter, Word, WordError};

/// Default bound on simultaneously live cosets.
pub const DEFAULT_COSET_CAP: usize = 1_000_000;

const UNDEF: u32 = u32::MAX;

/// An element of a realized finite group; `0` is always the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("coset cap must be at least 1")]
    InvalidCap,
    #[error("at most 127 generators are supported, got {0}")]
    TooManyGenerators(usize),
    #[error("element id {id} is out of range for a group of order {order}")]
    OutOfRange { id: u32, order: usize },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("invalid realization: {0}")]
    InvalidRealization(String),
    #[error("malformed realization JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("realization source presentation: {0}")]
    Presentation(Box<PresentationError>),
}

/// Outcome of [`enumerate`].
#[derive(Debug, Clone)]
pub enum Enumeration {
    Complete(CayleyRealization),
    /// More than the allowed number of cosets were live at once.
    Capped {
        live: usize,
        defined: usize,
    },
}

impl Enumeration {
    pub fn complete(self) -> Option<CayleyRealization> {
        match self {
            Enumeration::Complete(r) => Some(r),
            Enumeration::Capped { .. } => None,
        }
    }
}

/// A finite group given by its right regular action.
///
/// Column `2 * g` of the action table is right multiplication by generator
/// `g`, column `2 * g + 1` by its inverse.
#[derive(Debug, Clone)]
pub struct CayleyRealization {
    origin: Presentation,
    order: usize,
    actions: Vec<Vec<u32>>,
    /// Shortest word (as action columns) reaching each element.
    representatives: Vec<Vec<u8>>,
    inverses: Vec<u32>,
}

fn column(letter: Letter) -> usize {
    2 * letter.generator + usize::from(letter.inverse)
}

struct CosetTable {
    columns: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    cap: usize,
    queue: Vec<u32>,
}

struct Capped;

impl CosetTable {
    fn new(columns: usize, cap: usize) -> Self {
        Self {
            columns,
            table: vec![UNDEF; columns],
            parent: vec![0],
            live: 1,
            cap,
            queue: Vec::new(),
        }
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.columns + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.columns + x] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), Capped> {
        if self.live >= self.cap || self.parent.len() >= UNDEF as usize {
            return Err(Capped);
        }
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.table
            .extend(std::iter::repeat(UNDEF).take(self.columns));
        self.live += 1;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, k: u32, l: u32) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (keep, drop) = if k < l { (k, l) } else { (l, k) };
        self.parent[drop as usize] = keep;
        self.live -= 1;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.columns {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                self.set(f, x ^ 1, UNDEF);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let image = self.get(e1, x);
                if image != UNDEF {
                    self.merge(f1, image);
                    continue;
                }
                let back = self.get(f1, x ^ 1);
                if back != UNDEF {
                    self.merge(e1, back);
                } else {
                    self.set(e1, x, f1);
                    self.set(f1, x ^ 1, e1);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, relator: &[usize]) -> Result<(), Capped> {
        if relator.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0isize;
        let mut j = relator.len() as isize - 1;
        let at = |k: isize| relator[k as usize];
        loop {
            while i <= j && self.get(f, at(i)) != UNDEF {
                f = self.get(f, at(i));
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, at(j) ^ 1) != UNDEF {
                b = self.get(b, at(j) ^ 1);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i {
                self.set(f, at(i), b);
                self.set(b, at(i) ^ 1, f);
                return Ok(());
            }
            self.define(f, at(i))?;
        }
    }
}

/// Enumerates the cosets of the trivial subgroup of `presentation`.
pub fn enumerate(
    presentation: &Presentation,
    coset_cap: usize,
) -> Result<Enumeration, EnumerationError> {
    if coset_cap == 0 {
        return Err(EnumerationError::InvalidCap);
    }
    if presentation.generators().len() > 127 {
        return Err(EnumerationError::TooManyGenerators(
            presentation.generators().len(),
        ));
    }
    let columns = 2 * presentation.generators().len();
    let relators: Vec<Vec<usize>> = presentation
        .relators()
        .iter()
        .map(|r| r.letters().iter().map(|&l| column(l)).collect())
        .collect();

    let mut ct = CosetTable::new(columns, coset_cap);
    let capped = |ct: &CosetTable| Enumeration::Capped {
        live: ct.live,
        defined: ct.parent.len(),
    };
    let mut c = 0u32;
    while (c as usize) < ct.parent.len() {
        for r in &relators {
            if !ct.is_live(c) {
                break;
            }
            if ct.scan_and_fill(c, r).is_err() {
                return Ok(capped(&ct));
            }
        }
        for x in 0..columns {
            if ct.is_live(c) && ct.get(c, x) == UNDEF && ct.define(c, x).is_err() {
                return Ok(capped(&ct));
            }
        }
        c += 1;
    }
    Ok(Enumeration::Complete(compact(
        presentation.clone(),
        &mut ct,
    )))
}

fn compact(origin: Presentation, ct: &mut CosetTable) -> CayleyRealization {
    let columns = ct.columns;
    let mut renumber = vec![UNDEF; ct.parent.len()];
    let mut order_of_visit = vec![0u32];
    let mut representatives: Vec<Vec<u8>> = vec![Vec::new()];
    renumber[0] = 0;
    let mut queue = VecDeque::from([0u32]);
    while let Some(c) = queue.pop_front() {
        let here = renumber[c as usize] as usize;
        for x in 0..columns {
            let d = ct.get(c, x);
            let d = ct.rep(d);
            if renumber[d as usize] == UNDEF {
                renumber[d as usize] = order_of_visit.len() as u32;
                order_of_visit.push(d);
                let mut word = representatives[here].clone();
                word.push(x as u8);
                representatives.push(word);
                queue.push_back(d);
            }
        }
    }
    let order = order_of_visit.len();
    let actions: Vec<Vec<u32>> = (0..columns)
        .map(|x| {
            order_of_visit
                .iter()
                .map(|&c| {
                    let d = ct.get(c, x);
                    let d = ct.rep(d);
                    renumber[d as usize]
                })
                .collect()
        })
        .collect();
    CayleyRealization::assemble(origin, order, actions, Some(representatives))
}

impl CayleyRealization {
    fn assemble(
        origin: Presentation,
        order: usize,
        actions: Vec<Vec<u32>>,
        representatives: Option<Vec<Vec<u8>>>,
    ) -> Self {
        let representatives =
            representatives.unwrap_or_else(|| breadth_first_words(order, &actions).0);
        let mut r = Self {
            origin,
            order,
            actions,
            representatives,
            inverses: Vec::new(),
        };
        r.inverses = (0..order as u32)
            .map(|g| {
                let word = &r.representatives[g as usize];
                word.iter()
                    .rev()
                    .fold(0u32, |acc, &x| r.actions[x as usize ^ 1][acc as usize])
            })
            .collect();
        r
    }

    pub fn origin(&self) -> &Presentation {
        &self.origin
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> ElementId {
        ElementId::IDENTITY
    }

    /// Right multiplication by generator `g` (or its inverse), as a table.
    pub fn generator_action(&self, g: usize, inverse: bool) -> &[u32] {
        &self.actions[2 * g + usize::from(inverse)]
    }

    /// The image of the identity under generator `g`.
    pub fn generator(&self, g: usize) -> ElementId {
        ElementId(self.actions[2 * g][0])
    }

    fn check(&self, g: ElementId) -> Result<(), EnumerationError> {
        if g.index() < self.order {
            Ok(())
        } else {
            Err(EnumerationError::OutOfRange {
                id: g.0,
                order: self.order,
            })
        }
    }

    /// `g * h`: follows a representative word of `h` starting from `g`.
    pub fn multiply(&self, g: ElementId, h: ElementId) -> Result<ElementId, EnumerationError> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.multiply_unchecked(g, h))
    }

    pub(crate) fn multiply_unchecked(&self, g: ElementId, h: ElementId) -> ElementId {
        let word = &self.representatives[h.index()];
        ElementId(
            word.iter()
                .fold(g.0, |acc, &x| self.actions[x as usize][acc as usize]),
        )
    }

    pub fn inverse(&self, g: ElementId) -> Result<ElementId, EnumerationError> {
        self.check(g)?;
        Ok(ElementId(self.inverses[g.index()]))
    }

    pub fn evaluate_word(&self, w: &Word) -> Result<ElementId, EnumerationError> {
        let ours = self.origin.alphabet();
        if !(std::sync::Arc::ptr_eq(w.alphabet(), ours) || **w.alphabet() == **ours) {
            return Err(WordError::AlphabetMismatch {
                left: ours.names().join(","),
                right: w.alphabet().names().join(","),
            }
            .into());
        }
        Ok(ElementId(w.letters().iter().fold(0u32, |acc, &l| {
            self.actions[column(l)][acc as usize]
        })))
    }

    /// A shortest word for `g`, trying generators in declaration order.
    pub fn representative(&self, g: ElementId) -> Result<Word, EnumerationError> {
        self.check(g)?;
        let letters = self.representatives[g.index()].iter().map(|&x| Letter {
            generator: x as usize / 2,
            inverse: x % 2 == 1,
        });
        Ok(Word::reduce(self.origin.alphabet(), letters)?)
    }

    /// Checks every structural invariant of the realization.
    pub fn validate(&self) -> Result<(), EnumerationError> {
        let bad = |m: String| Err(EnumerationError::InvalidRealization(m));
        let n = self.order;
        if n == 0 {
            return bad("empty group".into());
        }
        if self.actions.len() != 2 * self.origin.generators().len() {
            return bad("wrong number of action columns".into());
        }
        for (x, col) in self.actions.iter().enumerate() {
            if col.len() != n {
                return bad(format!("column {x} has length {} not {n}", col.len()));
            }
            let mut seen = vec![false; n];
            for &d in col {
                if d as usize >= n || std::mem::replace(&mut seen[d as usize], true) {
                    return bad(format!("column {x} is not a permutation"));
                }
            }
            let back = &self.actions[x ^ 1];
            if (0..n).any(|c| back[col[c] as usize] as usize != c) {
                return bad(format!("column {x} is not inverted by column {}", x ^ 1));
            }
        }
        for r in self.origin.relators() {
            let cols: Vec<usize> = r.letters().iter().map(|&l| column(l)).collect();
            for c in 0..n as u32 {
                let end = cols.iter().fold(c, |acc, &x| self.actions[x][acc as usize]);
                if end != c {
                    return bad(format!("relator {r} does not fix {c}"));
                }
            }
        }
        let (_, reached) = breadth_first_words(n, &self.actions);
        if reached != n {
            return bad("action is not transitive".into());
        }
        // Regularity: the permutations induced by the representative words
        // must be closed under every generator, so there are exactly n of
        // them and the action is the regular one.
        if n <= 4096 {
            let induced: Vec<Vec<u32>> = (0..n)
                .map(|g| {
                    (0..n as u32)
                        .map(|c| {
                            self.representatives[g]
                                .iter()
                                .fold(c, |acc, &x| self.actions[x as usize][acc as usize])
                        })
                        .collect()
                })
                .collect();
            for (g, perm) in induced.iter().enumerate() {
                if perm[0] as usize != g {
                    return bad(format!("representative of {g} does not reach it"));
                }
                for col in &self.actions {
                    let target = &induced[col[g] as usize];
                    if (0..n).any(|c| col[perm[c] as usize] != target[c]) {
                        return bad("action is not regular".into());
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let file = RealizationFile {
            order: self.order,
            generators: self.origin.generators().to_vec(),
            relators: self
                .origin
                .relators()
                .iter()
                .map(ToString::to_string)
                .collect(),
            actions: (0..self.origin.generators().len())
                .map(|g| self.actions[2 * g].clone())
                .collect(),
        };
        serde_json::to_string(&file).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, EnumerationError> {
        let file: RealizationFile = serde_json::from_str(text)?;
        let mut source = format!("<{} | ", file.generators.join(", "));
        source.push_str(&if file.relators.is_empty() {
            "1".to_string()
        } else {
            file.relators.join(", ")
        });
        source.push('>');
        let origin = Presentation::parse(&source)
            .map_err(|e| EnumerationError::Presentation(Box::new(e.into())))?;
        if file.actions.len() != file.generators.len() {
            return Err(EnumerationError::InvalidRealization(
                "one action table per generator is required".into(),
            ));
        }
        let n = file.order;
        let mut actions = Vec::with_capacity(2 * file.actions.len());
        for forward in file.actions {
            if forward.len() != n || forward.iter().any(|&d| d as usize >= n) {
                return Err(EnumerationError::InvalidRealization(
                    "action table does not match the order".into(),
                ));
            }
            let mut backward = vec![UNDEF; n];
            for (c, &d) in forward.iter().enumerate() {
                backward[d as usize] = c as u32;
            }
            actions.push(forward);
            actions.push(backward);
        }
        if actions.iter().flatten().any(|&d| d == UNDEF) {
            return Err(EnumerationError::InvalidRealization(
                "action table is not a permutation".into(),
            ));
        }
        let (representatives, reached) = breadth_first_words(n, &actions);
        if reached != n {
            return Err(EnumerationError::InvalidRealization(
                "action is not transitive".into(),
            ));
        }
        let r = Self::assemble(origin, n, actions, Some(representatives));
        r.validate()?;
        Ok(r)
    }
}

fn breadth_first_words(order: usize, actions: &[Vec<u32>]) -> (Vec<Vec<u8>>, usize) {
    let mut words: Vec<Option<Vec<u8>>> = vec![None; order];
    if order == 0 {
        return (Vec::new(), 0);
    }
    words[0] = Some(Vec::new());
    let mut reached = 1;
    let mut queue = VecDeque::from([0u32]);
    while let Some(c) = queue.pop_front() {
        for (x, col) in actions.iter().enumerate() {
            let d = col[c as usize] as usize;
            if words[d].is_none() {
                let mut w = words[c as usize].clone().unwrap_or_default();
                w.push(x as u8);
                words[d] = Some(w);
                reached += 1;
                queue.push_back(d as u32);
            }
        }
    }
    (
        words.into_iter().map(Option::unwrap_or_default).collect(),
        reached,
    )
}

#[derive(Debug, Serialize, Deserialize)]
struct RealizationFile {
    order: usize,
    generators: Vec<String>,
    relators: Vec<String>,
    actions: Vec<Vec<u32>>,
}
