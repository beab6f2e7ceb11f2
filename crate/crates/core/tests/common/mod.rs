//! Independent reference implementations used only by tests.
//!
//! None of these share code with the library beyond plain data: groups are
//! rebuilt from matrices, permutations and quaternions, and orbits are
//! traversed depth-first instead of breadth-first.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

/// `Z[z]` with `z` a primitive 12th root of unity, reduced modulo
/// `z^4 - z^2 + 1`. Coefficients of `1, z, z^2, z^3`.
pub type Cyclo = [i64; 4];

pub const ONE: Cyclo = [1, 0, 0, 0];
pub const ZERO: Cyclo = [0, 0, 0, 0];

pub fn cyclo_mul(a: Cyclo, b: Cyclo) -> Cyclo {
    let mut raw = [0i64; 7];
    for i in 0..4 {
        for j in 0..4 {
            raw[i + j] += a[i] * b[j];
        }
    }
    // z^6 = -1, z^5 = z^3 - z, z^4 = z^2 - 1
    let mut out = [raw[0], raw[1], raw[2], raw[3]];
    out[0] -= raw[6];
    out[3] += raw[5];
    out[1] -= raw[5];
    out[2] += raw[4];
    out[0] -= raw[4];
    out
}

pub fn cyclo_add(a: Cyclo, b: Cyclo) -> Cyclo {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

pub type Mat = [[Cyclo; 2]; 2];

pub const IDENTITY: Mat = [[ONE, ZERO], [ZERO, ONE]];

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = cyclo_add(cyclo_mul(a[i][0], b[0][j]), cyclo_mul(a[i][1], b[1][j]));
        }
    }
    out
}

/// Closure of `generators` under multiplication.
pub fn mat_closure(generators: &[Mat], limit: usize) -> Option<HashSet<Mat>> {
    let mut seen = HashSet::from([IDENTITY]);
    let mut queue = VecDeque::from([IDENTITY]);
    while let Some(m) = queue.pop_front() {
        for g in generators {
            let p = mat_mul(&m, g);
            if seen.insert(p) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(p);
            }
        }
    }
    Some(seen)
}

pub fn mat_pow(m: &Mat, k: u32) -> Mat {
    (0..k).fold(IDENTITY, |acc, _| mat_mul(&acc, m))
}

/// `a b a ...` with `len` factors.
pub fn mat_alternating(a: &Mat, b: &Mat, len: u32) -> Mat {
    (0..len).fold(IDENTITY, |acc, k| {
        mat_mul(&acc, if k % 2 == 0 { a } else { b })
    })
}

/// Two reflections generating the rank-two complex reflection groups:
/// `[[e1, 1], [0, 1]]` and `[[1, 0], [kappa, e2]]`.
pub fn reflection_pair(e1: Cyclo, e2: Cyclo, kappa: Cyclo) -> (Mat, Mat) {
    ([[e1, ONE], [ZERO, ONE]], [[ONE, ZERO], [kappa, e2]])
}

/// z^4, a primitive cube root of unity.
pub const OMEGA: Cyclo = [-1, 0, 1, 0];

/// Reflections of orders 3 and 3 satisfying `aba = bab`.
pub fn g4_matrices() -> (Mat, Mat) {
    reflection_pair(OMEGA, OMEGA, [1, 0, -1, 0])
}

/// Reflections of orders 3 and 2 satisfying `(ab)^3 = (ba)^3`.
pub fn g6_matrices() -> (Mat, Mat) {
    reflection_pair(OMEGA, [-1, 0, 0, 0], [2, -1, -1, 1])
}

/// Depth-first orbit of `start` under the moves, with the group given by
/// plain multiplication and inversion closures.
pub fn dfs_orbit(
    start: &[u32],
    mul: &dyn Fn(u32, u32) -> u32,
    inv: &dyn Fn(u32) -> u32,
) -> BTreeSet<Vec<u32>> {
    let conj = |x: u32, y: u32| mul(mul(inv(y), x), y);
    let mut seen = BTreeSet::from([start.to_vec()]);
    let mut stack = vec![start.to_vec()];
    while let Some(t) = stack.pop() {
        for i in 0..t.len().saturating_sub(1) {
            let (x, y) = (t[i], t[i + 1]);
            for (u, v) in [(y, conj(x, y)), (mul(mul(x, y), inv(x)), x)] {
                let mut next = t.clone();
                next[i] = u;
                next[i + 1] = v;
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    seen
}

/// Permutations as image arrays, composed left to right.
pub type Perm = Vec<u8>;

pub fn perm_mul(p: &Perm, q: &Perm) -> Perm {
    p.iter().map(|&x| q[x as usize]).collect()
}

pub fn perm_inv(p: &Perm) -> Perm {
    let mut out = vec![0u8; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

pub fn perm_order(p: &Perm) -> usize {
    let id: Perm = (0..p.len() as u8).collect();
    let mut q = p.clone();
    let mut k = 1;
    while q != id {
        q = perm_mul(&q, p);
        k += 1;
    }
    k
}

pub fn perm_closure(generators: &[Perm]) -> BTreeSet<Perm> {
    let id: Perm = (0..generators[0].len() as u8).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = perm_mul(&p, g);
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

/// Rotation and reflection of a regular `n`-gon, acting on its `2n` flags
/// (vertex `k` with orientation `e`, numbered `k + n e`). Unlike the action
/// on vertices this stays faithful for `n = 1, 2`.
pub fn dihedral_generators(n: usize) -> (Perm, Perm) {
    let flag = |k: usize, e: usize| (k % n + n * e) as u8;
    let rot = (0..2 * n).map(|i| flag(i % n + 1, i / n)).collect();
    let flip = (0..2 * n).map(|i| flag(n - i % n, 1 - i / n)).collect();
    (rot, flip)
}

pub fn order_multiset<T>(elements: &[T], order: impl Fn(&T) -> usize) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for e in elements {
        *out.entry(order(e)).or_insert(0) += 1;
    }
    out
}

/// Integer quaternions `w + x i + y j + z k`.
pub type Quat = [i64; 4];

pub fn quat_mul(a: Quat, b: Quat) -> Quat {
    let [a0, a1, a2, a3] = a;
    let [b0, b1, b2, b3] = b;
    [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
}

pub fn quaternion_units() -> Vec<Quat> {
    let i = [0, 1, 0, 0];
    let j = [0, 0, 1, 0];
    let mut seen = BTreeSet::from([[1, 0, 0, 0]]);
    let mut queue = VecDeque::from([[1, 0, 0, 0]]);
    while let Some(q) = queue.pop_front() {
        for g in [i, j] {
            let p = quat_mul(q, g);
            if seen.insert(p) {
                queue.push_back(p);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn quat_order(q: &Quat) -> usize {
    let mut p = *q;
    let mut k = 1;
    while p != [1, 0, 0, 0] {
        p = quat_mul(p, *q);
        k += 1;
    }
    k
}

/// The three transpositions of S3 as image arrays: (1 2), (2 3), (1 3).
pub fn s3_transpositions() -> [Perm; 3] {
    [vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]]
}

/// Partition of all nine ordered transposition pairs of S3 into orbits,
/// found by brute-force union-find over single moves.
pub fn s3_pair_components() -> Vec<BTreeSet<(Perm, Perm)>> {
    let ts = s3_transpositions();
    let pairs: Vec<(Perm, Perm)> = ts
        .iter()
        .flat_map(|a| ts.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let index = |p: &(Perm, Perm)| pairs.iter().position(|q| q == p).expect("closed");
    let mut parent: Vec<usize> = (0..pairs.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for (k, (x, y)) in pairs.iter().enumerate() {
        let moved = (y.clone(), perm_mul(&perm_mul(&perm_inv(y), x), y));
        let j = index(&moved);
        let (a, b) = (find(&mut parent, k), find(&mut parent, j));
        parent[a] = b;
    }
    let mut groups: BTreeMap<usize, BTreeSet<(Perm, Perm)>> = BTreeMap::new();
    for (k, p) in pairs.iter().enumerate() {
        let r = find(&mut parent, k);
        groups.entry(r).or_default().insert(p.clone());
    }
    groups.into_values().collect()
}

/// Parses `(a b c)` cycles (1-based) into an image array.
pub fn perm_from_cycle(n: usize, cycle: &[usize]) -> Perm {
    let mut p: Perm = (0..n as u8).collect();
    for (k, &a) in cycle.iter().enumerate() {
        p[a - 1] = (cycle[(k + 1) % cycle.len()] - 1) as u8;
    }
    p
}
