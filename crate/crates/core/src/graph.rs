//! The graph G(Ω) and closed paths in it.
//!
//! A path `(i_1, …, i_K)` always denotes the closed path `(i_1 … i_K i_1)`.

use std::collections::VecDeque;

use num_traits::Signed;

use crate::penner::{path_edges, IntersectionMatrix, TwistWord};

/// Vertices `1..=n`, edge `ij` when `ω_ij > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaGraph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

pub fn graph_of(omega: &IntersectionMatrix) -> OmegaGraph {
    let n = omega.n();
    let adj = (0..n)
        .map(|i| (0..n).map(|j| omega.entries()[(i, j)].is_positive()).collect())
        .collect();
    OmegaGraph { n, adj }
}

impl OmegaGraph {
    /// Graph from a 1-based edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![vec![false; n]; n];
        for &(i, j) in edges {
            if i != j {
                adj[i - 1][j - 1] = true;
                adj[j - 1][i - 1] = true;
            }
        }
        OmegaGraph { n, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based adjacency test; out-of-range vertices are never adjacent.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && i <= self.n && j <= self.n && self.adj[i - 1][j - 1]
    }

    /// 1-based neighbours of `i`.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (1..=self.n).filter(|&j| self.adj[i - 1][j - 1]).collect()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adj[i][j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    fn colors(&self) -> Option<Vec<Option<bool>>> {
        let mut color = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                let cu = color[u].expect("colored");
                for v in 0..self.n {
                    if !self.adj[u][v] {
                        continue;
                    }
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            q.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color)
    }
}

pub fn is_connected(g: &OmegaGraph) -> bool {
    if g.n == 0 {
        return true;
    }
    let mut seen = vec![false; g.n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for v in 0..g.n {
            if g.adj[u][v] && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// 1-based blocks `(a, b)` of a 2-coloring.
pub type Bipartition = (Vec<usize>, Vec<usize>);

pub fn is_bipartite(g: &OmegaGraph) -> bool {
    bipartition(g).is_some()
}

/// The 2-coloring of each component starts with its lowest vertex in the
/// a-block.
pub fn bipartition(g: &OmegaGraph) -> Option<Bipartition> {
    let colors = g.colors()?;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, c) in colors.into_iter().enumerate() {
        if c == Some(false) {
            a.push(i + 1);
        } else {
            b.push(i + 1);
        }
    }
    Some((a, b))
}

/// Every edge of the closed path, wraparound included, is in `g`.
pub fn word_supported(word: &TwistWord, g: &OmegaGraph) -> bool {
    path_supported(word.gamma(), g)
}

pub fn path_supported(gamma: &[usize], g: &OmegaGraph) -> bool {
    path_edges(gamma).iter().all(|&(i, j)| g.has_edge(i, j))
}

/// First edge of the closed path missing from `g`.
pub fn first_missing_edge(gamma: &[usize], g: &OmegaGraph) -> Option<(usize, usize)> {
    path_edges(gamma).into_iter().find(|&(i, j)| !g.has_edge(i, j))
}

/// The path visits every vertex `1..=n`.
pub fn is_general(word: &TwistWord, n: usize) -> bool {
    first_unvisited(word.gamma(), n).is_none()
}

pub fn first_unvisited(gamma: &[usize], n: usize) -> Option<usize> {
    (1..=n).find(|i| !gamma.contains(i))
}

/// Remove backtrackings `(… a b a …) → (… a …)` until none remain.
///
/// With `rel_last_edge` the wraparound edge `(i_K, i_1)` is kept: the open
/// walk `i_1 … i_K` is freely reduced with its endpoints fixed. Without it
/// the edge word is reduced cyclically; a contractible path reduces to a
/// single vertex.
pub fn reduce_backtracking(gamma: &[usize], rel_last_edge: bool) -> Vec<usize> {
    if gamma.len() < 2 {
        return gamma.to_vec();
    }
    if rel_last_edge {
        free_reduce(gamma.iter().copied())
    } else {
        let closed = gamma.iter().copied().chain(std::iter::once(gamma[0]));
        let mut s = free_reduce(closed);
        while s.len() >= 3 && s[1] == s[s.len() - 2] {
            s.pop();
            s.remove(0);
        }
        s.pop();
        if s.is_empty() {
            vec![gamma[0]]
        } else {
            s
        }
    }
}

fn free_reduce(walk: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut s: Vec<usize> = Vec::new();
    for v in walk {
        if s.len() >= 2 && s[s.len() - 2] == v {
            s.pop();
        } else {
            s.push(v);
        }
    }
    s
}

/// Null-homotopic in the graph viewed as a 1-complex.
pub fn is_contractible(gamma: &[usize]) -> bool {
    reduce_backtracking(gamma, false).len() <= 1
}

/// A closed walk around a depth-first spanning tree from `start`: it visits
/// every vertex of the component and is contractible.
pub fn spanning_tree_walk(g: &OmegaGraph, start: usize) -> Vec<usize> {
    fn dfs(g: &OmegaGraph, u: usize, seen: &mut [bool], out: &mut Vec<usize>) {
        for v in g.neighbors(u) {
            if !seen[v - 1] {
                seen[v - 1] = true;
                out.push(v);
                dfs(g, v, seen, out);
                out.push(u);
            }
        }
    }
    let mut seen = vec![false; g.n];
    seen[start - 1] = true;
    let mut out = vec![start];
    dfs(g, start, &mut seen, &mut out);
    // The walk ends back at `start`; the closing edge is implicit.
    if out.len() > 1 {
        out.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> OmegaGraph {
        OmegaGraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)])
    }

    #[test]
    fn graph_basics() {
        let w = IntersectionMatrix::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(graph_of(&w).edges(), vec![(1, 2)]);
        assert!(graph_of(&IntersectionMatrix::zero(3)).edges().is_empty());
        assert!(!is_connected(&OmegaGraph::from_edges(2, &[])));
        assert!(is_connected(&OmegaGraph::from_edges(3, &[(1, 2), (2, 3)])));
    }

    #[test]
    fn bipartite_checks() {
        assert!(!is_bipartite(&triangle()));
        let g = OmegaGraph::from_edges(2, &[(1, 2)]);
        assert_eq!(bipartition(&g), Some((vec![1], vec![2])));
    }

    #[test]
    fn support_and_generality() {
        let w = TwistWord::unit(vec![1, 2, 3]).unwrap();
        assert!(word_supported(&w, &triangle()));
        let w12 = TwistWord::unit(vec![1, 2]).unwrap();
        assert!(!word_supported(&w12, &OmegaGraph::from_edges(2, &[])));
        assert!(is_general(&w, 3));
        assert!(!is_general(&w12, 3));
        assert!(is_general(&TwistWord::unit(vec![1, 2, 1, 3]).unwrap(), 3));
    }

    #[test]
    fn backtracking_reduction() {
        assert_eq!(reduce_backtracking(&[1, 2, 1, 3], true), vec![1, 3]);
        assert_eq!(reduce_backtracking(&[1, 2, 3], true), vec![1, 2, 3]);
        assert_eq!(reduce_backtracking(&[1, 2, 3, 2, 1, 4], true), vec![1, 4]);
        // Rel last edge: (1,2) keeps its wraparound edge 2→1.
        assert_eq!(reduce_backtracking(&[1, 2], true), vec![1, 2]);
        assert_eq!(reduce_backtracking(&[1, 2], false), vec![1]);
    }

    #[test]
    fn contractibility() {
        assert!(is_contractible(&[1, 2]));
        assert!(!is_contractible(&[1, 2, 3]));
        assert!(is_contractible(&[1, 2, 3, 2, 1, 2, 3, 2]));
        assert!(!is_contractible(&[1, 2, 3, 1, 2, 3]));
        // Cyclic cancellation across the basepoint.
        assert!(is_contractible(&[2, 1, 3, 1]));
    }

    #[test]
    fn tree_walk_covers_and_contracts() {
        let g = OmegaGraph::from_edges(5, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5)]);
        let walk = spanning_tree_walk(&g, 1);
        assert!(is_contractible(&walk));
        assert!(path_supported(&walk, &g));
        assert!((1..=5).all(|v| walk.contains(&v)));
    }
}
