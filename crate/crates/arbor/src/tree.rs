//! Tree representations.
//!
//! A [`RecursiveTree`] lives in arrival coordinates: vertex `t` is the
//! vertex that arrived at time `t`, and `parent(t) < t`. A [`LabeledTree`]
//! is the observed object: an unrooted shape whose labels carry no time
//! information. [`GroundTruth`] is the hidden bijection between the two.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TreeError {
    #[error("tree must have at least one vertex")]
    EmptyTree,
    #[error("vertex {child} has parent {parent}, expected a value in 1..{child}")]
    ParentOutOfRange { child: usize, parent: usize },
    #[error("label {0} out of range 1..=n")]
    LabelOutOfRange(usize),
    #[error("expected {expected} edges, got {got}")]
    WrongEdgeCount { expected: usize, got: usize },
    #[error("edge set is not connected")]
    Disconnected,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Growth model of a recursive tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Urrt,
    Pa,
}

impl Model {
    pub const ALL: [Model; 2] = [Model::Urrt, Model::Pa];

    pub fn as_str(self) -> &'static str {
        match self {
            Model::Urrt => "urrt",
            Model::Pa => "pa",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Model {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, TreeError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "urrt" | "uniform" => Ok(Model::Urrt),
            "pa" | "preferential" => Ok(Model::Pa),
            other => Err(TreeError::Parse(format!("unknown model '{other}'"))),
        }
    }
}

/// Ground-truth tree in arrival coordinates: vertices are their ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursiveTree {
    n: usize,
    /// `parents[t - 2]` is the parent of the vertex of rank `t`.
    parents: Vec<usize>,
}

impl RecursiveTree {
    /// Builds a tree from the parent choices of ranks `2..=n`.
    pub fn from_parents(n: usize, parents: &[usize]) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::EmptyTree);
        }
        if parents.len() != n - 1 {
            return Err(TreeError::WrongEdgeCount {
                expected: n - 1,
                got: parents.len(),
            });
        }
        for (i, &p) in parents.iter().enumerate() {
            let child = i + 2;
            if p == 0 || p >= child {
                return Err(TreeError::ParentOutOfRange { child, parent: p });
            }
        }
        Ok(Self {
            n,
            parents: parents.to_vec(),
        })
    }

    pub fn singleton() -> Self {
        Self {
            n: 1,
            parents: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Parent of the rank-`t` vertex, `t >= 2`.
    pub fn parent(&self, t: usize) -> usize {
        self.parents[t - 2]
    }

    /// Parent choices of ranks `2..=n`, in order.
    pub fn parent_choices(&self) -> &[usize] {
        &self.parents
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parents
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i + 2))
    }

    /// The shape with identity labels (label = rank).
    pub fn to_labeled(&self) -> LabeledTree {
        let mut adj = vec![Vec::new(); self.n + 1];
        for (u, v) in self.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        LabeledTree { n: self.n, adj }
    }

    /// Serializes as `parents: p2 p3 ... pn`.
    pub fn parents_line(&self) -> String {
        let mut s = String::from("parents:");
        for p in &self.parents {
            s.push(' ');
            s.push_str(&p.to_string());
        }
        s
    }

    /// Parses the `parents: p2 p3 ... pn` form.
    pub fn parse_parents_line(line: &str) -> Result<Self, TreeError> {
        let rest = line
            .trim()
            .strip_prefix("parents:")
            .ok_or_else(|| TreeError::Parse("missing 'parents:' prefix".into()))?;
        let parents = rest
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|e| TreeError::Parse(format!("bad parent '{tok}': {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_parents(parents.len() + 1, &parents)
    }
}

/// Observed tree shape: undirected adjacency over labels `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTree {
    n: usize,
    /// `adj[u]` lists the neighbors of label `u`; index 0 unused.
    adj: Vec<Vec<usize>>,
}

impl LabeledTree {
    /// Builds and validates a tree from an undirected edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::EmptyTree);
        }
        if edges.len() != n - 1 {
            return Err(TreeError::WrongEdgeCount {
                expected: n - 1,
                got: edges.len(),
            });
        }
        let mut adj = vec![Vec::new(); n + 1];
        for &(u, v) in edges {
            if u == 0 || u > n {
                return Err(TreeError::LabelOutOfRange(u));
            }
            if v == 0 || v > n {
                return Err(TreeError::LabelOutOfRange(v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let tree = Self { n, adj };
        if !tree.is_connected() {
            return Err(TreeError::Disconnected);
        }
        Ok(tree)
    }

    /// Adjacency already known to form a tree (generator output).
    pub(crate) fn from_adjacency_unchecked(n: usize, adj: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(adj.len(), n + 1);
        let tree = Self { n, adj };
        debug_assert!(tree.is_connected());
        tree
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1usize];
        seen[1] = true;
        let mut count = 0;
        while let Some(u) = stack.pop() {
            count += 1;
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    /// BFS from `root`: visit order plus the predecessor of each vertex
    /// (`parent[root] = 0`).
    pub(crate) fn bfs(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(self.n);
        let mut parent = vec![0usize; self.n + 1];
        let mut seen = vec![false; self.n + 1];
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(root);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        (order, parent)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Edges with the smaller label first, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n.saturating_sub(1));
        for u in 1..=self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Edge-list text format: header `n=<count>`, then one `u v` per line.
    pub fn to_edge_list_text(&self) -> String {
        let mut s = format!("n={}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn from_edge_list_text(text: &str) -> Result<Self, TreeError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| TreeError::Parse("empty input".into()))?;
        let n: usize = header
            .trim()
            .strip_prefix("n=")
            .ok_or_else(|| TreeError::Parse("expected 'n=<count>' header".into()))?
            .parse()
            .map_err(|e| TreeError::Parse(format!("bad vertex count: {e}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let u = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| TreeError::Parse(format!("bad edge line '{line}'")))?;
            let v = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| TreeError::Parse(format!("bad edge line '{line}'")))?;
            if it.next().is_some() {
                return Err(TreeError::Parse(format!("trailing tokens in '{line}'")));
            }
            edges.push((u, v));
        }
        Self::from_edges(n, &edges)
    }
}

/// Hidden correspondence between labels and arrival ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruth {
    /// `sigma[label] = rank`; index 0 unused.
    sigma: Vec<usize>,
    /// `tau[rank] = label`; index 0 unused.
    tau: Vec<usize>,
}

impl GroundTruth {
    /// Builds from `tau` (rank -> label), taking `sigma` as its inverse.
    pub fn from_rank_to_label(tau: Vec<usize>) -> Self {
        let mut sigma = vec![0; tau.len()];
        for (rank, &label) in tau.iter().enumerate().skip(1) {
            sigma[label] = rank;
        }
        Self { sigma, tau }
    }

    pub fn n(&self) -> usize {
        self.sigma.len() - 1
    }

    /// Arrival rank of a label (the map sigma).
    pub fn rank_of(&self, label: usize) -> usize {
        self.sigma[label]
    }

    /// Label holding a given rank (the map tau = sigma^-1).
    pub fn label_of(&self, rank: usize) -> usize {
        self.tau[rank]
    }
}
