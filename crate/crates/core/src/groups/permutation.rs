use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use super::GroupError;

/// A permutation of `{0, .., n-1}`, stored as its image list.
///
/// Products compose left to right: `(p * q)(x) = q(p(x))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self((0..degree as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i as usize >= images.len() || std::mem::replace(&mut seen[i as usize], true) {
                return Err(GroupError::NotAPermutation(format!("{images:?}")));
            }
        }
        Ok(Self(images))
    }

    /// Builds a permutation from 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut p = Self::identity(degree);
        for cycle in cycles {
            let mut seen = Vec::new();
            for &point in cycle {
                if point == 0 || point > degree || seen.contains(&point) {
                    return Err(GroupError::NotAPermutation(format!("{cycle:?}")));
                }
                seen.push(point);
            }
            let mut c = Self::identity(degree);
            for (k, &point) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                c.0[point - 1] = (next - 1) as u8;
            }
            p = p.compose(&c);
        }
        Ok(p)
    }

    /// Parses cycle notation such as `(1 2)(3 4)` or `(1,2,3)`; `()` is the
    /// identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self, GroupError> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')').map(|end| (&r[..end], &r[end + 1..])))
                .ok_or_else(|| GroupError::BadCycleNotation(text.to_string()))?;
            let points = body
                .0
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| GroupError::BadCycleNotation(text.to_string()))?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = body.1.trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn compose(&self, then: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| then.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u8;
        }
        Permutation(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Rank in lexicographic order of image lists (Lehmer code).
    pub fn lehmer_rank(&self) -> u64 {
        let n = self.0.len();
        let mut rank = 0u64;
        for i in 0..n {
            let smaller_later = self.0[i + 1..].iter().filter(|&&y| y < self.0[i]).count() as u64;
            rank = rank * (n - i) as u64 + smaller_later;
        }
        rank
    }

    pub fn from_lehmer_rank(degree: usize, mut rank: u64) -> Permutation {
        let mut digits = vec![0usize; degree];
        for i in (0..degree).rev() {
            let base = (degree - i) as u64;
            digits[i] = (rank % base) as usize;
            rank /= base;
        }
        let mut pool: Vec<u8> = (0..degree as u8).collect();
        Permutation(digits.into_iter().map(|d| pool.remove(d)).collect())
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.0[x] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// The closure of a set of permutations, with elements keyed by their
/// position in Lehmer-rank order (so for the full symmetric group the key
/// is the rank itself).
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<u64, u32>,
    generators: Vec<(String, Permutation)>,
}

/// Largest degree accepted for eager closure.
pub const MAX_DEGREE: usize = 10;

/// Largest `n` for which the full `S_n` is materialized.
pub const MAX_SYMMETRIC_DEGREE: usize = 8;

impl PermutationGroup {
    pub fn generated_by(
        degree: usize,
        generators: Vec<(String, Permutation)>,
    ) -> Result<Self, GroupError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(GroupError::UnsupportedDegree(degree));
        }
        if let Some((name, _)) = generators.iter().find(|(_, p)| p.degree() != degree) {
            return Err(GroupError::NotAPermutation(format!(
                "generator {name} has the wrong degree"
            )));
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for (_, g) in &generators {
                let q = p.compose(g);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort_by_key(Permutation::lehmer_rank);
        Ok(Self::from_sorted(degree, elements, generators))
    }

    /// The full symmetric group, generated by adjacent transpositions
    /// `s1 = (1 2)`, `s2 = (2 3)`, ...
    pub fn symmetric(degree: usize) -> Result<Self, GroupError> {
        if degree == 0 || degree > MAX_SYMMETRIC_DEGREE {
            return Err(GroupError::UnsupportedDegree(degree));
        }
        let total: u64 = (1..=degree as u64).product();
        let elements = (0..total)
            .map(|r| Permutation::from_lehmer_rank(degree, r))
            .collect();
        let generators = (1..degree)
            .map(|i| {
                let p = Permutation::from_cycles(degree, &[vec![i, i + 1]])
                    .expect("adjacent transposition");
                (format!("s{i}"), p)
            })
            .collect();
        Ok(Self::from_sorted(degree, elements, generators))
    }

    fn from_sorted(
        degree: usize,
        elements: Vec<Permutation>,
        generators: Vec<(String, Permutation)>,
    ) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.lehmer_rank(), i as u32))
            .collect();
        Self {
            degree,
            elements,
            index,
            generators,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, key: u32) -> &Permutation {
        &self.elements[key as usize]
    }

    pub fn key_of(&self, p: &Permutation) -> Option<u32> {
        if p.degree() != self.degree {
            return None;
        }
        self.index.get(&p.lehmer_rank()).copied()
    }

    pub fn generators(&self) -> &[(String, Permutation)] {
        &self.generators
    }

    pub(crate) fn multiply(&self, g: u32, h: u32) -> u32 {
        let p = self.element(g).compose(self.element(h));
        self.key_of(&p).expect("closed under composition")
    }

    pub(crate) fn inverse(&self, g: u32) -> u32 {
        self.key_of(&self.element(g).inverse())
            .expect("closed under inverses")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lehmer_rank_round_trips() {
        for r in 0..120 {
            let p = Permutation::from_lehmer_rank(5, r);
            assert_eq!(p.lehmer_rank(), r);
        }
        assert!(Permutation::from_lehmer_rank(4, 0).is_identity());
    }

    #[test]
    fn cycle_notation() {
        let p = Permutation::parse_cycles(3, "(1 2)").unwrap();
        assert_eq!(p.images(), &[1, 0, 2]);
        assert_eq!(p.to_string(), "(1 2)");
        let q = Permutation::parse_cycles(4, "(1,2,3)(4)").unwrap();
        assert_eq!(q.to_string(), "(1 2 3)");
        assert!(Permutation::parse_cycles(3, "()").unwrap().is_identity());
        assert!(Permutation::parse_cycles(3, "(1 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 1)").is_err());
        assert!(Permutation::parse_cycles(3, "1 2").is_err());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Permutation::parse_cycles(3, "(1 2)").unwrap();
        let b = Permutation::parse_cycles(3, "(2 3)").unwrap();
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!(a.compose(&b).to_string(), "(1 3 2)");
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn closures() {
        let d = 6;
        let rot = Permutation::parse_cycles(d, "(1 2 3 4 5 6)").unwrap();
        let flip = Permutation::parse_cycles(d, "(2 6)(3 5)").unwrap();
        let g =
            PermutationGroup::generated_by(d, vec![("r".into(), rot), ("s".into(), flip)]).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(PermutationGroup::symmetric(4).unwrap().order(), 24);
        assert!(PermutationGroup::symmetric(9).is_err());
        assert!(PermutationGroup::symmetric(0).is_err());
    }
}
