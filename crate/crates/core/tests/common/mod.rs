//! Random instances shared by the integration tests. Everything is seeded.
#![allow(dead_code)]

use std::collections::VecDeque;

use num_rational::BigRational;

use penner::graph::{graph_of, is_connected, spanning_tree_walk, OmegaGraph};
use penner::penner::{IntersectionMatrix, TwistWord};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn from_i64(rows: &[Vec<i64>]) -> IntersectionMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntersectionMatrix::from_int_rows(&refs).expect("valid by construction")
}

/// Connected integer Ω: a random spanning tree with entries in `1..=max`,
/// plus extra positive entries with probability `density`.
pub fn connected_omega(rng: &mut StdRng, n: usize, max: i64, density: f64) -> IntersectionMatrix {
    let mut w = vec![vec![0i64; n]; n];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        let x = rng.gen_range(1..=max);
        w[u][v] = x;
        w[v][u] = x;
    }
    for i in 0..n {
        for j in i + 1..n {
            if w[i][j] == 0 && rng.gen_bool(density) {
                let x = rng.gen_range(1..=max);
                w[i][j] = x;
                w[j][i] = x;
            }
        }
    }
    // Relabel so the tree is not always rooted at vertex 1.
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| w[perm[i]][perm[j]]).collect()).collect();
    from_i64(&p)
}

/// Connected bipartite integer Ω with blocks of sizes `a` and `n - a`.
pub fn connected_bipartite(rng: &mut StdRng, n: usize, max: i64) -> IntersectionMatrix {
    assert!(n >= 2);
    loop {
        let a = rng.gen_range(1..n);
        let mut w = vec![vec![0i64; n]; n];
        for i in 0..a {
            for j in a..n {
                if rng.gen_bool(0.6) {
                    let x = rng.gen_range(1..=max);
                    w[i][j] = x;
                    w[j][i] = x;
                }
            }
        }
        let omega = from_i64(&w);
        if is_connected(&graph_of(&omega)) {
            return omega;
        }
    }
}

/// Ω with entries `p/q` on a random connected support.
pub fn rational_omega(rng: &mut StdRng, n: usize) -> IntersectionMatrix {
    let support = connected_omega(rng, n, 1, 0.4);
    let mut rows = vec![vec!["0".to_string(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if support.omega(i + 1, j + 1) != &BigRational::from_integer(0.into()) {
                let s = format!("{}/{}", rng.gen_range(1..=9), rng.gen_range(1..=5));
                rows[i][j] = s.clone();
                rows[j][i] = s;
            }
        }
    }
    IntersectionMatrix::from_strings(&rows).expect("valid by construction")
}

fn step(rng: &mut StdRng, g: &OmegaGraph, v: usize) -> usize {
    *g.neighbors(v).choose(rng).expect("vertex has a neighbor")
}

fn shortest_path(g: &OmegaGraph, from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![0usize; g.n() + 1];
    let mut seen = vec![false; g.n() + 1];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    let mut path = vec![to];
    while *path.last().unwrap() != from {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    path
}

/// Closed path supported in `g`, starting at `start`, with about `steps`
/// random steps. The closing edge back to `start` is implicit.
pub fn closed_path(rng: &mut StdRng, g: &OmegaGraph, start: usize, steps: usize) -> Vec<usize> {
    let mut out = vec![start];
    let mut cur = start;
    for _ in 0..steps.max(1) {
        cur = step(rng, g, cur);
        out.push(cur);
    }
    while cur == start {
        cur = step(rng, g, cur);
        out.push(cur);
    }
    let back = shortest_path(g, cur, start);
    out.extend_from_slice(&back[1..back.len() - 1]);
    out
}

/// Contractible supported closed path: a random walk on a stack that
/// only ever moves forward along an edge or backs up.
pub fn contractible_path(rng: &mut StdRng, g: &OmegaGraph, start: usize, steps: usize) -> Vec<usize> {
    let mut stack = vec![start];
    let mut out = vec![start];
    for _ in 0..steps.max(1) {
        if stack.len() > 1 && rng.gen_bool(0.4) {
            stack.pop();
        } else {
            let v = step(rng, g, *stack.last().unwrap());
            stack.push(v);
        }
        out.push(*stack.last().unwrap());
    }
    while stack.len() > 1 {
        stack.pop();
        out.push(*stack.last().unwrap());
    }
    if out.len() == 1 {
        let v = step(rng, g, start);
        out.extend([v, start]);
    }
    // Drop the final return to `start`: the closing edge is implicit.
    out.pop();
    out
}

/// Closed supported path through every vertex of a connected `g`.
pub fn covering_path(rng: &mut StdRng, g: &OmegaGraph, steps: usize) -> Vec<usize> {
    let start = rng.gen_range(1..=g.n());
    let mut gamma = spanning_tree_walk(g, start);
    if steps > 0 {
        gamma.extend(closed_path(rng, g, start, steps));
    }
    gamma
}

/// A word using every generator, in random order, with powers in `1..=pmax`.
/// `n >= 2`.
pub fn general_word(rng: &mut StdRng, n: usize, extra: usize, pmax: u64) -> TwistWord {
    let mut gamma: Vec<usize> = (1..=n).collect();
    gamma.shuffle(rng);
    // Insert extras between two neighbours they differ from, cyclically.
    for _ in 0..extra {
        let pos = rng.gen_range(0..gamma.len());
        let (a, b) = (gamma[(pos + gamma.len() - 1) % gamma.len()], gamma[pos]);
        let options: Vec<usize> = (1..=n).filter(|&v| v != a && v != b).collect();
        if let Some(&v) = options.choose(rng) {
            gamma.insert(pos, v);
        }
    }
    let powers = random_powers(rng, gamma.len(), pmax);
    TwistWord::new(gamma, powers).expect("no adjacent repeats by construction")
}

pub fn random_powers(rng: &mut StdRng, len: usize, pmax: u64) -> Vec<u64> {
    (0..len).map(|_| rng.gen_range(1..=pmax)).collect()
}
