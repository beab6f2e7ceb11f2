//! Seeded property suites: sample factorizations over a list of groups and
//! compare orbit sizes across a transformation.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::equalities::{
    check_double_reverse, check_equality, closed_form_pair, mirror_moves_check, EqualityError,
    Transform, Verdict, WordTuple,
};
use crate::groups::{Group, GroupError};
use crate::hurwitz::{Direction, Factorization, HurwitzError};
use crate::presentations::{check_reversible, Builtin, PresentationError, ReversibilityStatus};
use crate::toddcoxeter::ElementId;
use crate::words::{Letter, Word};

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown theorem suite {0:?}")]
    UnknownSuite(String),
    #[error("{group}: presentation is not reversible (reverse of {relator} is {value}, not 1)")]
    NotReversible {
        group: String,
        relator: String,
        value: String,
    },
    #[error("{0}: reversibility could not be decided")]
    ReversibilityUnknown(String),
    #[error("{0}: this suite needs a group given by a presentation")]
    NeedsPresentation(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Equality(#[from] EqualityError),
    #[error(transparent)]
    Hurwitz(#[from] HurwitzError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremSuite {
    PairSwap,
    PairInverse,
    Cycle,
    FlipInverse,
    Conjugate,
    InvolutionReverse,
    DoubleReverse,
    ClosedForm,
    MirrorMoves,
}

impl TheoremSuite {
    pub const ALL: [TheoremSuite; 9] = [
        TheoremSuite::PairSwap,
        TheoremSuite::PairInverse,
        TheoremSuite::Cycle,
        TheoremSuite::FlipInverse,
        TheoremSuite::Conjugate,
        TheoremSuite::InvolutionReverse,
        TheoremSuite::DoubleReverse,
        TheoremSuite::ClosedForm,
        TheoremSuite::MirrorMoves,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremSuite::PairSwap => "pair-swap",
            TheoremSuite::PairInverse => "pair-inverse",
            TheoremSuite::Cycle => "cycle",
            TheoremSuite::FlipInverse => "flip-inverse",
            TheoremSuite::Conjugate => "conjugate",
            TheoremSuite::InvolutionReverse => "involution-reverse",
            TheoremSuite::DoubleReverse => "double-reverse",
            TheoremSuite::ClosedForm => "closed-form",
            TheoremSuite::MirrorMoves => "mirror-moves",
        }
    }

    /// Whether the suite samples words and so needs presentation groups.
    pub fn uses_words(self) -> bool {
        matches!(
            self,
            TheoremSuite::DoubleReverse | TheoremSuite::MirrorMoves
        )
    }

    /// Groups sampled when none are given.
    pub fn default_groups(self) -> &'static [&'static str] {
        if self.uses_words() {
            &["dihedral-rs:5", "g6"]
        } else {
            &STANDARD_GROUPS
        }
    }
}

impl fmt::Display for TheoremSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremSuite {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| SuiteError::UnknownSuite(s.to_string()))
    }
}

/// The five groups the factorization suites run over by default.
pub const STANDARD_GROUPS: [&str; 5] = ["s4", "dihedral-rs:6", "q8-ab", "g4", "g6"];

/// A realized group with the name it was requested by.
#[derive(Debug, Clone)]
pub struct NamedGroup {
    pub name: String,
    pub group: Arc<Group>,
}

/// Accepts `sN` for the symmetric group on `N` points, or any builtin
/// presentation name.
pub fn realize_named(name: &str, coset_cap: usize) -> Result<NamedGroup, SuiteError> {
    let lower = name.trim().to_ascii_lowercase();
    let symmetric = lower
        .strip_prefix('s')
        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
        .and_then(|d| d.parse::<usize>().ok());
    let group = match symmetric {
        Some(n) => Group::symmetric_group(n)?,
        None => Group::from_builtin(&lower.parse::<Builtin>()?, coset_cap)?,
    };
    Ok(NamedGroup {
        name: lower,
        group: Arc::new(group),
    })
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Samples per group.
    pub samples: usize,
    pub seed: u64,
    pub node_cap: usize,
    /// Factorization lengths, inclusive.
    pub min_len: usize,
    pub max_len: usize,
    /// Closed-form exponents run over `-range..=range`.
    pub range: i64,
    /// Word tuples: at most this many words, each of at most this many
    /// letters.
    pub max_tuple_len: usize,
    pub max_word_len: usize,
    pub max_braid_len: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            samples: 100,
            seed: 0,
            node_cap: crate::hurwitz::DEFAULT_NODE_CAP,
            min_len: 2,
            max_len: 4,
            range: 20,
            max_tuple_len: 3,
            max_word_len: 3,
            max_braid_len: 8,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct GroupOutcome {
    pub group: String,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: TheoremSuite,
    pub seed: u64,
    pub groups: Vec<GroupOutcome>,
    /// Descriptions of the first few failures.
    pub failures: Vec<String>,
}

const MAX_RECORDED_FAILURES: usize = 20;

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.groups.iter().map(|g| g.passed).sum()
    }

    pub fn failed(&self) -> usize {
        self.groups.iter().map(|g| g.failed).sum()
    }

    pub fn inconclusive(&self) -> usize {
        self.groups.iter().map(|g| g.inconclusive).sum()
    }

    fn record(&mut self, index: usize, outcome: Outcome) {
        let g = &mut self.groups[index];
        match outcome {
            Outcome::Pass => g.passed += 1,
            Outcome::Inconclusive => g.inconclusive += 1,
            Outcome::Fail(msg) => {
                g.failed += 1;
                if self.failures.len() < MAX_RECORDED_FAILURES {
                    self.failures.push(format!("{}: {msg}", g.group));
                }
            }
        }
    }
}

enum Outcome {
    Pass,
    Fail(String),
    Inconclusive,
}

impl Outcome {
    fn from_verdict(v: Verdict, describe: impl FnOnce() -> String) -> Self {
        match v {
            Verdict::Equal => Outcome::Pass,
            Verdict::Unequal => Outcome::Fail(describe()),
            Verdict::Inconclusive => Outcome::Inconclusive,
        }
    }
}

fn random_element(rng: &mut ChaCha8Rng, group: &Group) -> ElementId {
    ElementId(rng.gen_range(0..group.order() as u32))
}

fn random_factorization(
    rng: &mut ChaCha8Rng,
    group: &Arc<Group>,
    pool: Option<&[ElementId]>,
    len: usize,
) -> Factorization {
    let factors = (0..len)
        .map(|_| match pool {
            Some(p) => *p.choose(rng).expect("pool is non-empty"),
            None => random_element(rng, group),
        })
        .collect();
    Factorization::new(Arc::clone(group), factors).expect("sampled elements are in the group")
}

fn random_word_tuple(
    rng: &mut ChaCha8Rng,
    group: &Group,
    config: &SuiteConfig,
    min_len: usize,
) -> WordTuple {
    let alphabet = group
        .realization()
        .expect("checked by the caller")
        .origin()
        .alphabet();
    let len = rng.gen_range(min_len..=config.max_tuple_len.max(min_len));
    let words = (0..len)
        .map(|_| {
            let letters = rng.gen_range(0..=config.max_word_len);
            let raw: Vec<Letter> = (0..letters)
                .map(|_| Letter {
                    generator: rng.gen_range(0..alphabet.len()),
                    inverse: rng.gen(),
                })
                .collect();
            Word::reduce(alphabet, raw).expect("letters are in range")
        })
        .collect();
    WordTuple::new(words).expect("one alphabet")
}

fn require_reversible(named: &NamedGroup) -> Result<(), SuiteError> {
    let realization = named
        .group
        .realization()
        .ok_or_else(|| SuiteError::NeedsPresentation(named.name.clone()))?;
    let report = check_reversible(realization.origin(), Some(realization), false)?;
    match report.status {
        ReversibilityStatus::Reversible => Ok(()),
        ReversibilityStatus::Unknown => Err(SuiteError::ReversibilityUnknown(named.name.clone())),
        ReversibilityStatus::NotReversible => {
            let w = report
                .witness
                .expect("non-reversible reports carry a witness");
            Err(SuiteError::NotReversible {
                group: named.name.clone(),
                relator: w.relator.to_string(),
                value: named.group.label(w.value),
            })
        }
    }
}

/// Runs `suite` with `config.samples` samples per group.
///
/// Word-based suites refuse groups whose presentation is not reversible.
pub fn run_suite(
    suite: TheoremSuite,
    groups: &[NamedGroup],
    config: &SuiteConfig,
) -> Result<SuiteReport, SuiteError> {
    if suite == TheoremSuite::DoubleReverse {
        for g in groups {
            require_reversible(g)?;
        }
    }
    if suite == TheoremSuite::MirrorMoves {
        for g in groups {
            if g.group.realization().is_none() {
                return Err(SuiteError::NeedsPresentation(g.name.clone()));
            }
        }
    }
    let mut report = SuiteReport {
        suite,
        seed: config.seed,
        groups: groups
            .iter()
            .map(|g| GroupOutcome {
                group: g.name.clone(),
                ..GroupOutcome::default()
            })
            .collect(),
        failures: Vec::new(),
    };
    for (index, named) in groups.iter().enumerate() {
        let group = &named.group;
        let stream = (index as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ stream);
        let involutions: Vec<ElementId> = group
            .elements()
            .filter(|&g| group.element_order(g) <= 2)
            .collect();
        for _ in 0..config.samples {
            let len = rng.gen_range(config.min_len..=config.max_len.max(config.min_len));
            let outcome = match suite {
                TheoremSuite::PairSwap | TheoremSuite::PairInverse => {
                    let f = random_factorization(&mut rng, group, None, 2);
                    let t = if suite == TheoremSuite::PairSwap {
                        Transform::ReverseTuple
                    } else {
                        Transform::InvertEach
                    };
                    factorization_outcome(&f, &t, config)?
                }
                TheoremSuite::Cycle => {
                    let f = random_factorization(&mut rng, group, None, len);
                    factorization_outcome(&f, &Transform::Cycle, config)?
                }
                TheoremSuite::FlipInverse => {
                    let f = random_factorization(&mut rng, group, None, len);
                    factorization_outcome(&f, &Transform::FlipInverse, config)?
                }
                TheoremSuite::Conjugate => {
                    let f = random_factorization(&mut rng, group, None, len);
                    let y = random_element(&mut rng, group);
                    factorization_outcome(&f, &Transform::ConjugateAll(y), config)?
                }
                TheoremSuite::InvolutionReverse => {
                    let f = random_factorization(&mut rng, group, Some(&involutions), len);
                    factorization_outcome(&f, &Transform::ReverseTuple, config)?
                }
                TheoremSuite::ClosedForm => {
                    let x = random_element(&mut rng, group);
                    let y = random_element(&mut rng, group);
                    closed_form_outcome(group, x, y, config.range)
                }
                TheoremSuite::DoubleReverse => {
                    let t = random_word_tuple(&mut rng, group, config, 1);
                    let r = check_double_reverse(group, &t, true, config.node_cap)?;
                    Outcome::from_verdict(r.verdict, || {
                        format!(
                            "{} has orbit size {} but its double reverse {} has {}",
                            t,
                            r.size_left,
                            t.double_reverse(),
                            r.size_right
                        )
                    })
                }
                TheoremSuite::MirrorMoves => {
                    let t = random_word_tuple(&mut rng, group, config, 2);
                    let count = rng.gen_range(0..=config.max_braid_len);
                    let moves: Vec<(usize, Direction)> = (0..count)
                        .map(|_| {
                            let p = rng.gen_range(1..t.len());
                            let d = if rng.gen() {
                                Direction::Forward
                            } else {
                                Direction::Inverse
                            };
                            (p, d)
                        })
                        .collect();
                    if mirror_moves_check(group, &t, &moves)? {
                        Outcome::Pass
                    } else {
                        Outcome::Fail(format!("mirrored moves {moves:?} on {t} disagree"))
                    }
                }
            };
            report.record(index, outcome);
        }
    }
    Ok(report)
}

fn factorization_outcome(
    f: &Factorization,
    transform: &Transform,
    config: &SuiteConfig,
) -> Result<Outcome, SuiteError> {
    let r = check_equality(f, transform, config.node_cap)?;
    Ok(Outcome::from_verdict(r.verdict, || {
        format!(
            "{} on ({}) gives ({}): sizes {} vs {}",
            r.transform,
            r.input.join(", "),
            r.output.join(", "),
            r.size_left,
            r.size_right
        )
    }))
}

/// Compares the closed form with iterated moves for every exponent in
/// `-range..=range`.
fn closed_form_outcome(group: &Group, x: ElementId, y: ElementId, range: i64) -> Outcome {
    for direction in [Direction::Forward, Direction::Inverse] {
        let mut pair = [x, y];
        for step in 1..=range {
            let (u, v) = (pair[0], pair[1]);
            pair = match direction {
                Direction::Forward => [v, group.conjugate(u, v)],
                Direction::Inverse => [group.conjugate(v, group.inverse(u)), u],
            };
            let m = if direction == Direction::Forward {
                step
            } else {
                -step
            };
            let closed = closed_form_pair(group, x, y, m);
            if closed != (pair[0], pair[1]) {
                return Outcome::Fail(format!(
                    "m = {m} on ({}, {}): closed form ({}, {}) vs iterated ({}, {})",
                    group.label(x),
                    group.label(y),
                    group.label(closed.0),
                    group.label(closed.1),
                    group.label(pair[0]),
                    group.label(pair[1])
                ));
            }
        }
    }
    if closed_form_pair(group, x, y, 0) != (x, y) {
        return Outcome::Fail("m = 0 is not the identity".into());
    }
    Outcome::Pass
}
