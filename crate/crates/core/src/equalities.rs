//! Tuple transformations that preserve Hurwitz orbit size, and checks that
//! compute both sides instead of trusting the equality.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::groups::{Group, GroupError};
use crate::hurwitz::{orbit_size, Direction, Factorization, HurwitzError, OrbitSize};
use crate::toddcoxeter::ElementId;
use crate::words::{Word, WordError};

#[derive(Debug, Error)]
pub enum EqualityError {
    #[error("pattern has {0} distinct symbols; only two-symbol patterns are in scope")]
    TooManySymbols(usize),
    #[error("word tuple is empty")]
    EmptyTuple,
    #[error("move position {position} is out of range for length {length}")]
    PositionOutOfRange { position: usize, length: usize },
    #[error("CSV output failed: {0}")]
    Csv(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Hurwitz(#[from] HurwitzError),
}

/// `sigma^m (x, y)` in closed form, for any integer `m`.
///
/// Writing `m = 2n` or `m = 2n + 1` (with `n` rounded towards negative
/// infinity), the even case is
/// `(y^-1 (x^-1 y^-1)^(n-1) x (y x)^(n-1) y, (y^-1 x^-1)^n y (x y)^n)` and
/// the odd case is
/// `((y^-1 x^-1)^n y (x y)^n, y^-1 (x^-1 y^-1)^n x (y x)^n y)`.
/// Negative `m` stands for `|m|` inverse moves.
pub fn closed_form_pair(
    group: &Group,
    x: ElementId,
    y: ElementId,
    m: i64,
) -> (ElementId, ElementId) {
    let n = m.div_euclid(2);
    let xi = group.inverse(x);
    let yi = group.inverse(y);
    let xy = group.multiply(x, y);
    let yx = group.multiply(y, x);
    let xiyi = group.multiply(xi, yi);
    let yixi = group.multiply(yi, xi);
    let p = |g, k| group.pow(g, k);
    let prod = |items: &[ElementId]| group.product(items.iter().copied());
    if m.rem_euclid(2) == 0 {
        (
            prod(&[yi, p(xiyi, n - 1), x, p(yx, n - 1), y]),
            prod(&[p(yixi, n), y, p(xy, n)]),
        )
    } else {
        (
            prod(&[p(yixi, n), y, p(xy, n)]),
            prod(&[yi, p(xiyi, n), x, p(yx, n), y]),
        )
    }
}

/// `(x1, x2, ..., xl) -> (x2, ..., xl, x1)`.
pub fn cycle(f: &Factorization) -> Factorization {
    let mut factors = f.factors().to_vec();
    factors.rotate_left(1);
    f.with_factors(factors)
}

/// Conjugates every factor by `y`: `x -> y^-1 x y`.
pub fn conjugate_all(f: &Factorization, y: ElementId) -> Result<Factorization, EqualityError> {
    let group = f.group();
    group.check(y)?;
    Ok(f.with_factors(f.factors().iter().map(|&x| group.conjugate(x, y)).collect()))
}

/// `(x1, ..., xl) -> (xl^-1, ..., x1^-1)`.
pub fn flip_inverse(f: &Factorization) -> Factorization {
    let group = f.group();
    f.with_factors(
        f.factors()
            .iter()
            .rev()
            .map(|&x| group.inverse(x))
            .collect(),
    )
}

pub fn reverse_tuple(f: &Factorization) -> Factorization {
    f.with_factors(f.factors().iter().rev().copied().collect())
}

/// `(x1, ..., xl) -> (x1^-1, ..., xl^-1)`, order kept.
pub fn invert_each(f: &Factorization) -> Factorization {
    let group = f.group();
    f.with_factors(f.factors().iter().map(|&x| group.inverse(x)).collect())
}

/// A tuple of reduced words over one alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordTuple {
    words: Vec<Word>,
}

impl WordTuple {
    pub fn new(words: Vec<Word>) -> Result<Self, EqualityError> {
        let Some(first) = words.first() else {
            return Err(EqualityError::EmptyTuple);
        };
        if let Some(w) = words.iter().find(|w| !w.same_alphabet(first)) {
            return Err(WordError::AlphabetMismatch {
                left: first.alphabet().names().join(", "),
                right: w.alphabet().names().join(", "),
            }
            .into());
        }
        Ok(Self { words })
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `(a1, ..., al) -> (al*, ..., a1*)`, where `*` reverses a word.
    pub fn double_reverse(&self) -> WordTuple {
        WordTuple {
            words: self.words.iter().rev().map(Word::reverse).collect(),
        }
    }

    /// The same move as on group elements, carried out in the free group.
    pub fn hurwitz_move(
        &self,
        position: usize,
        direction: Direction,
    ) -> Result<Self, EqualityError> {
        let length = self.words.len();
        if position == 0 || position >= length {
            return Err(EqualityError::PositionOutOfRange { position, length });
        }
        let mut words = self.words.clone();
        let (u, v) = (&self.words[position - 1], &self.words[position]);
        let (a, b) = match direction {
            Direction::Forward => (v.clone(), v.inverse().concat(u)?.concat(v)?),
            Direction::Inverse => (u.concat(v)?.concat(&u.inverse())?, u.clone()),
        };
        words[position - 1] = a;
        words[position] = b;
        Ok(Self { words })
    }

    pub fn apply_braid(&self, moves: &[(usize, Direction)]) -> Result<Self, EqualityError> {
        moves
            .iter()
            .try_fold(self.clone(), |t, &(p, d)| t.hurwitz_move(p, d))
    }

    /// Evaluates each word by generator name in `group`.
    pub fn evaluate(&self, group: &Arc<Group>) -> Result<Factorization, EqualityError> {
        let factors = self
            .words
            .iter()
            .map(|w| group.evaluate(w))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Factorization::new(Arc::clone(group), factors)?)
    }
}

impl fmt::Display for WordTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.words.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transform {
    Cycle,
    FlipInverse,
    ConjugateAll(ElementId),
    ReverseTuple,
    InvertEach,
}

impl Transform {
    pub fn apply(&self, f: &Factorization) -> Result<Factorization, EqualityError> {
        Ok(match self {
            Transform::Cycle => cycle(f),
            Transform::FlipInverse => flip_inverse(f),
            Transform::ConjugateAll(y) => conjugate_all(f, *y)?,
            Transform::ReverseTuple => reverse_tuple(f),
            Transform::InvertEach => invert_each(f),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Transform::Cycle => "cycle",
            Transform::FlipInverse => "flip_inverse",
            Transform::ConjugateAll(_) => "conjugate_all",
            Transform::ReverseTuple => "reverse_tuple",
            Transform::InvertEach => "invert_each",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    Unequal,
    Inconclusive,
}

impl Verdict {
    pub fn of(left: OrbitSize, right: OrbitSize) -> Self {
        match (left, right) {
            (OrbitSize::Finite(a), OrbitSize::Finite(b)) if a == b => Verdict::Equal,
            (OrbitSize::Finite(_), OrbitSize::Finite(_)) => Verdict::Unequal,
            _ => Verdict::Inconclusive,
        }
    }
}

/// Both orbit sizes, computed independently.
#[derive(Debug, Clone, Serialize)]
pub struct EqualityReport {
    pub transform: String,
    pub input: Vec<String>,
    pub output: Vec<String>,
    pub size_left: OrbitSize,
    pub size_right: OrbitSize,
    pub verdict: Verdict,
    /// Whether equal sizes are implied by a known result for this input.
    /// Only double reverses over non-reversible presentations lack one.
    pub guaranteed: bool,
}

impl EqualityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn compare(
    transform: String,
    input: Vec<String>,
    output: Vec<String>,
    left: &Factorization,
    right: &Factorization,
    node_cap: usize,
    guaranteed: bool,
) -> Result<EqualityReport, EqualityError> {
    let size_left = orbit_size(left, node_cap)?;
    let size_right = orbit_size(right, node_cap)?;
    Ok(EqualityReport {
        transform,
        input,
        output,
        size_left,
        size_right,
        verdict: Verdict::of(size_left, size_right),
        guaranteed,
    })
}

/// Orbit sizes of `f` and `transform(f)`.
pub fn check_equality(
    f: &Factorization,
    transform: &Transform,
    node_cap: usize,
) -> Result<EqualityReport, EqualityError> {
    let g = transform.apply(f)?;
    // Plain reversal is only covered when every factor has order <= 2, or
    // for pairs.
    let guaranteed = match transform {
        Transform::ReverseTuple => {
            f.len() <= 2 || f.factors().iter().all(|&x| f.group().element_order(x) <= 2)
        }
        Transform::InvertEach => f.len() <= 2,
        _ => true,
    };
    let name = match transform {
        Transform::ConjugateAll(y) => format!("conjugate_all({})", f.group().label(*y)),
        t => t.name().to_string(),
    };
    compare(name, f.labels(), g.labels(), f, &g, node_cap, guaranteed)
}

/// Orbit sizes of a word tuple and its double reverse, both evaluated in
/// `group`. `reversible` says whether the presentation the words come from
/// has reversible relations; without it there is no guarantee.
pub fn check_double_reverse(
    group: &Arc<Group>,
    tuple: &WordTuple,
    reversible: bool,
    node_cap: usize,
) -> Result<EqualityReport, EqualityError> {
    let mirrored = tuple.double_reverse();
    let left = tuple.evaluate(group)?;
    let right = mirrored.evaluate(group)?;
    let show = |t: &WordTuple| t.words().iter().map(ToString::to_string).collect();
    compare(
        "double_reverse".into(),
        show(tuple),
        show(&mirrored),
        &left,
        &right,
        node_cap,
        reversible,
    )
}

/// Applies `moves` to `tuple` and the mirrored moves (position `l - p`,
/// opposite direction) to its double reverse, and reports whether the two
/// results are again double reverses of each other, entry by entry in
/// `group`.
pub fn mirror_moves_check(
    group: &Arc<Group>,
    tuple: &WordTuple,
    moves: &[(usize, Direction)],
) -> Result<bool, EqualityError> {
    let l = tuple.len();
    let mirrored: Vec<(usize, Direction)> = moves
        .iter()
        .map(|&(p, d)| (l.saturating_sub(p), d.flipped()))
        .collect();
    let left = tuple.apply_braid(moves)?.double_reverse();
    let right = tuple.double_reverse().apply_braid(&mirrored)?;
    Ok(left.evaluate(group)?.factors() == right.evaluate(group)?.factors())
}

/// Whether the reverse of `pattern` is a cyclic rotation of it. Patterns
/// with more than two distinct symbols are rejected.
pub fn remark_rotation_check<T: Ord>(pattern: &[T]) -> Result<bool, EqualityError> {
    let distinct: BTreeSet<&T> = pattern.iter().collect();
    if distinct.len() > 2 {
        return Err(EqualityError::TooManySymbols(distinct.len()));
    }
    let reversed: Vec<&T> = pattern.iter().rev().collect();
    let n = pattern.len();
    Ok(n == 0 || (0..n).any(|shift| (0..n).all(|i| &pattern[(i + shift) % n] == reversed[i])))
}

/// The three scan symbols, in scan order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Symbol {
    A,
    B,
    AInv,
}

impl Symbol {
    fn as_str(self) -> &'static str {
        match self {
            Symbol::A => "a",
            Symbol::B => "b",
            Symbol::AInv => "a^-1",
        }
    }
}

fn join(symbols: &[Symbol]) -> String {
    symbols
        .iter()
        .map(|s| s.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Rearranges `v` into the next lexicographic permutation; false when `v`
/// was the last one.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Sorted multisets of size `len` over the scan symbols.
fn multisets(len: usize) -> Vec<Vec<Symbol>> {
    let mut out = Vec::new();
    for a in 0..=len {
        for b in 0..=len - a {
            let c = len - a - b;
            let mut m = vec![Symbol::A; a];
            m.extend(std::iter::repeat(Symbol::B).take(b));
            m.extend(std::iter::repeat(Symbol::AInv).take(c));
            out.push(m);
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub multiset: String,
    pub permutation: String,
    pub orbit_size: usize,
    pub capped: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MultisetSummary {
    pub multiset: String,
    pub permutations: usize,
    /// Sizes of the uncapped orbits.
    pub sizes: BTreeSet<usize>,
    pub inconclusive: usize,
    /// More than one size observed.
    pub candidate: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub max_len: usize,
    pub rows: Vec<ScanRow>,
    pub multisets: Vec<MultisetSummary>,
}

impl ScanReport {
    pub fn uniform(&self) -> usize {
        self.multisets
            .iter()
            .filter(|m| !m.candidate && m.inconclusive == 0)
            .count()
    }

    pub fn candidates(&self) -> Vec<&MultisetSummary> {
        self.multisets.iter().filter(|m| m.candidate).collect()
    }

    pub fn inconclusive(&self) -> usize {
        self.multisets.iter().filter(|m| m.inconclusive > 0).count()
    }

    pub fn summary(&self) -> String {
        format!(
            "multisets: {}, uniform: {}, counterexample candidates: {}, inconclusive: {}",
            self.multisets.len(),
            self.uniform(),
            self.candidates().len(),
            self.inconclusive()
        )
    }

    /// Columns `multiset, permutation, orbit_size, capped`.
    pub fn to_csv(&self) -> Result<String, EqualityError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)
                .map_err(|e| EqualityError::Csv(e.to_string()))?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| EqualityError::Csv(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

/// For every multiset over `{a, b, a^-1}` of size `1..=max_len`, computes
/// the orbit size of each distinct arrangement in `group` and flags
/// multisets whose arrangements disagree.
pub fn conjecture_scan(
    group: &Arc<Group>,
    max_len: usize,
    node_cap: usize,
) -> Result<ScanReport, EqualityError> {
    let a = group.generator("a")?;
    let b = group.generator("b")?;
    let value = |s: Symbol| match s {
        Symbol::A => a,
        Symbol::B => b,
        Symbol::AInv => group.inverse(a),
    };
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for len in 1..=max_len {
        for mut arrangement in multisets(len) {
            let multiset = join(&arrangement);
            let mut summary = MultisetSummary {
                multiset: multiset.clone(),
                permutations: 0,
                sizes: BTreeSet::new(),
                inconclusive: 0,
                candidate: false,
            };
            loop {
                let f = Factorization::new(
                    Arc::clone(group),
                    arrangement.iter().map(|&s| value(s)).collect(),
                )?;
                let size = orbit_size(&f, node_cap)?;
                let (n, capped) = match size {
                    OrbitSize::Finite(n) => (n, false),
                    OrbitSize::AtLeast(n) => (n, true),
                };
                if capped {
                    summary.inconclusive += 1;
                } else {
                    summary.sizes.insert(n);
                }
                summary.permutations += 1;
                rows.push(ScanRow {
                    multiset: multiset.clone(),
                    permutation: join(&arrangement),
                    orbit_size: n,
                    capped,
                });
                if !next_permutation(&mut arrangement) {
                    break;
                }
            }
            summary.candidate = summary.sizes.len() > 1;
            summaries.push(summary);
        }
    }
    Ok(ScanReport {
        max_len,
        rows,
        multisets: summaries,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct G4Report {
    pub aabb: OrbitSize,
    pub abab: OrbitSize,
    pub pass: bool,
}

/// Orbit sizes of `(a, a, b, b)` and `(a, b, a, b)`; passes iff they are
/// exactly 36 and 27.
pub fn g4_counterexample_check(
    group: &Arc<Group>,
    node_cap: usize,
) -> Result<G4Report, EqualityError> {
    let a = group.generator("a")?;
    let b = group.generator("b")?;
    let aabb = orbit_size(
        &Factorization::new(Arc::clone(group), vec![a, a, b, b])?,
        node_cap,
    )?;
    let abab = orbit_size(
        &Factorization::new(Arc::clone(group), vec![a, b, a, b])?,
        node_cap,
    )?;
    Ok(G4Report {
        aabb,
        abab,
        pass: aabb == OrbitSize::Finite(36) && abab == OrbitSize::Finite(27),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{parse_word_tuple, Builtin};
    use crate::words::Alphabet;

    fn realize(b: Builtin) -> Arc<Group> {
        Arc::new(Group::from_builtin(&b, 100_000).unwrap())
    }

    #[test]
    fn closed_form_small_exponents() {
        let g = realize(Builtin::G6);
        let (a, b) = (g.generator("a").unwrap(), g.generator("b").unwrap());
        assert_eq!(closed_form_pair(&g, a, b, 0), (a, b));
        assert_eq!(closed_form_pair(&g, a, b, 1), (b, g.conjugate(a, b)));
        assert_eq!(
            closed_form_pair(&g, a, b, -1),
            (g.conjugate(b, g.inverse(a)), a)
        );
    }

    #[test]
    fn tuple_transforms() {
        let g = Arc::new(Group::symmetric_group(4).unwrap());
        let f = Factorization::new(
            Arc::clone(&g),
            vec![ElementId(1), ElementId(5), ElementId(9)],
        )
        .unwrap();
        assert_eq!(
            cycle(&f).factors(),
            &[ElementId(5), ElementId(9), ElementId(1)]
        );
        assert_eq!(cycle(&cycle(&cycle(&f))), f);
        assert_eq!(
            reverse_tuple(&f).factors(),
            &[ElementId(9), ElementId(5), ElementId(1)]
        );
        assert_eq!(flip_inverse(&flip_inverse(&f)), f);
        assert_eq!(conjugate_all(&f, g.identity()).unwrap(), f);
        let y = ElementId(7);
        assert_eq!(
            conjugate_all(&conjugate_all(&f, y).unwrap(), g.inverse(y)).unwrap(),
            f
        );
        assert!(conjugate_all(&f, ElementId(24)).is_err());
    }

    #[test]
    fn double_reverse_examples() {
        let al = Alphabet::new(["i", "j"]);
        let t = WordTuple::new(parse_word_tuple(&al, "i, j, i j").unwrap()).unwrap();
        assert_eq!(t.double_reverse().to_string(), "(j i, j, i)");
        assert_eq!(t.double_reverse().double_reverse(), t);
        let al = Alphabet::new(["a", "b"]);
        let t = WordTuple::new(parse_word_tuple(&al, "a b, 1").unwrap()).unwrap();
        assert_eq!(t.double_reverse().to_string(), "(1, b a)");
        let letters = WordTuple::new(parse_word_tuple(&al, "a b b^-1 a").unwrap()).unwrap();
        assert_eq!(letters.len(), 4);
        let dr: Vec<String> = letters
            .double_reverse()
            .words()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(dr, ["a", "b^-1", "b", "a"]);
        assert!(WordTuple::new(vec![]).is_err());
    }

    #[test]
    fn word_moves_match_group_moves() {
        let g = realize(Builtin::G6);
        let al = Alphabet::new(["a", "b"]);
        let t = WordTuple::new(parse_word_tuple(&al, "a b, b a^-1, a").unwrap()).unwrap();
        let moves = [
            (1, Direction::Forward),
            (2, Direction::Inverse),
            (1, Direction::Inverse),
        ];
        let via_words = t.apply_braid(&moves).unwrap().evaluate(&g).unwrap();
        let via_group = t.evaluate(&g).unwrap().apply_braid(&moves).unwrap();
        assert_eq!(via_words, via_group);
        assert!(mirror_moves_check(&g, &t, &moves).unwrap());
        assert!(t.hurwitz_move(3, Direction::Forward).is_err());
    }

    #[test]
    fn reverse_rotation_patterns() {
        assert!(remark_rotation_check(&[0, 0, 1, 0, 1]).unwrap());
        assert!(!remark_rotation_check(&[0, 0, 1, 0, 1, 1]).unwrap());
        assert!(remark_rotation_check::<u8>(&[]).unwrap());
        assert!(matches!(
            remark_rotation_check(&[0, 1, 2]),
            Err(EqualityError::TooManySymbols(3))
        ));
    }

    #[test]
    fn permutations_of_multisets() {
        let mut v = vec![0, 0, 1];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen, [vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(multisets(2).len(), 6);
        assert_eq!(multisets(4).len(), 15);
    }

    #[test]
    fn scan_small() {
        let g = realize(Builtin::G6);
        let report = conjecture_scan(&g, 3, 1_000_000).unwrap();
        assert_eq!(report.multisets.len(), 3 + 6 + 10);
        assert_eq!(report.rows.len(), 3 + 9 + 27);
        assert!(report.candidates().is_empty());
        let csv = report.to_csv().unwrap();
        assert!(csv.starts_with("multiset,permutation,orbit_size,capped\n"));
    }

    #[test]
    fn g4_sizes() {
        let g = realize(Builtin::G4);
        let r = g4_counterexample_check(&g, 1_000).unwrap();
        assert!(r.pass, "{r:?}");
        let small = g4_counterexample_check(&g, 10).unwrap();
        assert!(!small.pass);
    }

    #[test]
    fn report_json_has_exact_integers() {
        let g = realize(Builtin::G4);
        let f = Factorization::new(
            Arc::clone(&g),
            vec![g.generator("a").unwrap(), g.generator("b").unwrap()],
        )
        .unwrap();
        let r = check_equality(&f, &Transform::ReverseTuple, 100).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["verdict"], "equal");
        assert_eq!(
            v["size_left"].as_u64(),
            Some(r.size_left.finite().unwrap() as u64)
        );
        assert_eq!(v["input"][0], "a");
    }
}
