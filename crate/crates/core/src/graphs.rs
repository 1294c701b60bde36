//! Undirected multigraphs with loops.
//!
//! Two degree conventions coexist here. The adjacency matrix counts a loop
//! once on the diagonal, so `A^k` counts walks where a loop is one step.
//! Degree (and everything Eulerian) counts a loop twice.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::invalid("a graph needs at least one vertex"));
        }
        let edges: Vec<_> = edges.into_iter().collect();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= vertex_count || b >= vertex_count) {
            return Err(Error::invalid(format!(
                "edge ({a}, {b}) has an endpoint outside 0..{vertex_count}"
            )));
        }
        Ok(Graph { vertex_count, edges })
    }

    /// Complete simple graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self> {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Graph::new(n, edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::new(n, (1..n).map(|i| (i - 1, i)))
    }

    /// The seven bridges: land masses A (island), B, C (banks), D (east).
    pub fn konigsberg() -> Self {
        Graph::new(4, [(0, 1), (0, 1), (0, 2), (0, 2), (0, 3), (1, 3), (2, 3)]).expect("static graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Degrees with each loop contributing 2.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    /// True when every vertex with nonzero degree lies in one component.
    fn edges_connected(&self) -> bool {
        let adj = self.neighbours();
        let Some(start) = (0..self.vertex_count).find(|&v| !adj[v].is_empty()) else {
            return true;
        };
        let seen = reachable(&adj, start);
        (0..self.vertex_count).all(|v| adj[v].is_empty() || seen[v])
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            if a != b {
                adj[b].push(a);
            }
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let seen = reachable(&self.neighbours(), 0);
        seen.into_iter().all(|s| s)
    }
}

fn reachable(adj: &[Vec<usize>], start: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Text format: first significant line holds the vertex count, then one
/// `i j` edge per line. Blank lines and `#` comments are ignored.
impl FromStr for Graph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, first) = lines.next().ok_or(Error::Syntax {
            line: 1,
            message: "missing vertex count".into(),
        })?;
        let n: usize = first.parse().map_err(|_| Error::Syntax {
            line,
            message: format!("expected a vertex count, found {first:?}"),
        })?;
        let mut edges = Vec::new();
        for (line, l) in lines {
            let nums: Vec<&str> = l.split_whitespace().collect();
            let parsed = match nums.as_slice() {
                [a, b] => a.parse::<usize>().ok().zip(b.parse::<usize>().ok()),
                _ => None,
            };
            let edge = parsed.ok_or_else(|| Error::Syntax {
                line,
                message: format!("expected \"i j\", found {l:?}"),
            })?;
            edges.push(edge);
        }
        Graph::new(n, edges)
    }
}

/// Square matrix of exact non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    order: usize,
    entries: Vec<BigUint>,
}

impl SquareMatrix {
    pub fn zeros(order: usize) -> Self {
        SquareMatrix {
            order,
            entries: vec![BigUint::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = SquareMatrix::zeros(order);
        for i in 0..order {
            m.entries[i * order + i] = BigUint::one();
        }
        m
    }

    pub fn from_rows<R: AsRef<[u64]>>(rows: &[R]) -> Result<Self> {
        let order = rows.len();
        if order == 0 || rows.iter().any(|r| r.as_ref().len() != order) {
            return Err(Error::invalid("matrix rows must form a non-empty square"));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().map(|&v| BigUint::from(v)))
            .collect();
        Ok(SquareMatrix { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> &BigUint {
        &self.entries[row * self.order + col]
    }

    fn get_mut(&mut self, row: usize, col: usize) -> &mut BigUint {
        &mut self.entries[row * self.order + col]
    }

    /// Entries as `u64` rows, or `None` if any entry does not fit.
    pub fn to_u64_rows(&self) -> Option<Vec<Vec<u64>>> {
        (0..self.order)
            .map(|r| {
                (0..self.order)
                    .map(|c| u64::try_from(self.get(r, c)).ok())
                    .collect()
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|r| (r + 1..self.order).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn mul(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.order, other.order, "matrix orders differ");
        let n = self.order;
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u32) -> SquareMatrix {
        let mut result = SquareMatrix::identity(self.order);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Entry `(i, j)` is the number of edges joining `i` and `j`; a loop adds 1
/// to the diagonal.
pub fn adjacency_matrix(g: &Graph) -> SquareMatrix {
    let mut m = SquareMatrix::zeros(g.vertex_count);
    for &(a, b) in &g.edges {
        *m.get_mut(a, b) += 1u32;
        if a != b {
            *m.get_mut(b, a) += 1u32;
        }
    }
    m
}

pub fn matrix_power(m: &SquareMatrix, k: u32) -> SquareMatrix {
    m.pow(k)
}

pub fn count_walks(g: &Graph, from: usize, to: usize, length: u32) -> Result<BigUint> {
    let n = g.vertex_count;
    if from >= n || to >= n {
        return Err(Error::invalid(format!("vertex out of range 0..{n}")));
    }
    Ok(adjacency_matrix(g).pow(length).get(from, to).clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EulerClass {
    Circuit,
    Path(usize, usize),
    None,
}

pub fn eulerian_class(g: &Graph) -> EulerClass {
    if !g.edges_connected() {
        return EulerClass::None;
    }
    let odd: Vec<usize> = g
        .degrees()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d % 2 == 1)
        .map(|(v, _)| v)
        .collect();
    match odd.as_slice() {
        [] => EulerClass::Circuit,
        &[u, v] => EulerClass::Path(u, v),
        _ => EulerClass::None,
    }
}

/// An Euler trail as a vertex sequence (Hierholzer), or `None` when the graph
/// has none. Edgeless graphs yield an empty trail.
pub fn euler_trail(g: &Graph) -> Option<Vec<usize>> {
    let start = match eulerian_class(g) {
        EulerClass::None => return None,
        EulerClass::Path(u, _) => u,
        EulerClass::Circuit => match g.edges.first() {
            Some(&(a, _)) => a,
            None => return Some(Vec::new()),
        },
    };
    // incidence lists of (edge id, other endpoint)
    let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.vertex_count];
    for (id, &(a, b)) in g.edges.iter().enumerate() {
        inc[a].push((id, b));
        if a != b {
            inc[b].push((id, a));
        }
    }
    let mut used = vec![false; g.edges.len()];
    let mut cursor = vec![0usize; g.vertex_count];
    let mut stack = vec![start];
    let mut trail = Vec::with_capacity(g.edges.len() + 1);
    while let Some(&v) = stack.last() {
        while cursor[v] < inc[v].len() && used[inc[v][cursor[v]].0] {
            cursor[v] += 1;
        }
        if let Some(&(id, w)) = inc[v].get(cursor[v]) {
            used[id] = true;
            stack.push(w);
        } else {
            trail.push(v);
            stack.pop();
        }
    }
    trail.reverse();
    Some(trail)
}

pub fn is_tree(g: &Graph) -> bool {
    !g.has_loops() && g.edge_count() + 1 == g.vertex_count && g.is_connected()
}
