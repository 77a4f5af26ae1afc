//! Tree centrality scores: subtree sizes, Jordan centrality, centroids,
//! descendant centrality, and degrees.
//!
//! Jordan centrality of a vertex is the size of the largest subtree hanging
//! off it; the smaller the value, the more central the vertex. Descendant
//! centrality is the root-aware counterpart: an affine decreasing function
//! of the number of descendants in the tree rooted at the true first vertex.

use crate::tree::{LabeledTree, TreeError};

/// Sort direction a score induces on ranks: `Ascending` means lower scores
/// receive earlier ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Ascending,
    Descending,
}

/// Per-label scores (index 0 unused) plus the direction that turns them
/// into an ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    pub values: Vec<f64>,
    pub direction: Direction,
}

impl ScoreVector {
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }
}

/// Centroids of a tree (one or two, adjacent when two) with the minimal
/// Jordan centrality and the vertex path from a designated root to the
/// centroid nearest it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentroidReport {
    /// Minimizers of the Jordan centrality; nearest to the root first.
    pub centroids: Vec<usize>,
    pub psi_min: usize,
    /// Path from the root to `centroids[0]`, both endpoints included.
    pub path_root_to_centroid: Vec<usize>,
}

fn check_root(tree: &LabeledTree, root: usize) -> Result<(), TreeError> {
    if root == 0 || root > tree.n() {
        return Err(TreeError::LabelOutOfRange(root));
    }
    Ok(())
}

/// Number of vertices in the subtree hanging from each vertex when the tree
/// is rooted at `root`; `counts[root] = n`. One traversal, O(n).
pub fn subtree_size_counts(tree: &LabeledTree, root: usize) -> Result<Vec<usize>, TreeError> {
    check_root(tree, root)?;
    let (order, parent) = tree.bfs(root);
    let mut counts = vec![1usize; tree.n() + 1];
    counts[0] = 0;
    for &u in order.iter().rev() {
        if u != root {
            counts[parent[u]] += counts[u];
        }
    }
    Ok(counts)
}

/// [`subtree_size_counts`] as a score vector.
pub fn subtree_sizes(tree: &LabeledTree, root: usize) -> Result<ScoreVector, TreeError> {
    let counts = subtree_size_counts(tree, root)?;
    Ok(ScoreVector {
        values: counts.iter().map(|&c| c as f64).collect(),
        direction: Direction::Descending,
    })
}

/// Descendant counts de(u) in the tree rooted at `root`: subtree size minus
/// the vertex itself.
pub fn descendant_counts(tree: &LabeledTree, root: usize) -> Result<Vec<usize>, TreeError> {
    let mut counts = subtree_size_counts(tree, root)?;
    for c in counts.iter_mut().skip(1) {
        *c -= 1;
    }
    Ok(counts)
}

/// Jordan centrality of every vertex: the largest subtree hanging off it,
/// computed in O(n) from one rooted pass. A single vertex has centrality 0.
pub fn jordan_centrality_counts(tree: &LabeledTree) -> Vec<usize> {
    let n = tree.n();
    let mut psi = vec![0usize; n + 1];
    if n == 1 {
        return psi;
    }
    let root = 1;
    let (order, parent) = tree.bfs(root);
    let mut counts = vec![1usize; n + 1];
    for &u in order.iter().rev() {
        if u != root {
            counts[parent[u]] += counts[u];
        }
    }
    for u in 1..=n {
        let above = n - counts[u];
        let below = tree
            .neighbors(u)
            .iter()
            .filter(|&&v| parent[v] == u && v != root)
            .map(|&v| counts[v])
            .max()
            .unwrap_or(0);
        psi[u] = above.max(below);
    }
    psi
}

/// [`jordan_centrality_counts`] as a score vector (ascending: central first).
pub fn jordan_centrality(tree: &LabeledTree) -> ScoreVector {
    ScoreVector {
        values: jordan_centrality_counts(tree)
            .iter()
            .map(|&c| c as f64)
            .collect(),
        direction: Direction::Ascending,
    }
}

/// All minimizers of the Jordan centrality plus the path leading to them
/// from `root`. A tree has one or two centroids; two are always adjacent.
pub fn centroid(tree: &LabeledTree, root: usize) -> Result<CentroidReport, TreeError> {
    check_root(tree, root)?;
    let n = tree.n();
    let psi = jordan_centrality_counts(tree);
    let psi_min = (1..=n).map(|u| psi[u]).min().expect("nonempty tree");

    let (order, parent) = tree.bfs(root);
    let mut depth = vec![0usize; n + 1];
    for &u in &order {
        if u != root {
            depth[u] = depth[parent[u]] + 1;
        }
    }
    let mut centroids: Vec<usize> = (1..=n).filter(|&u| psi[u] == psi_min).collect();
    centroids.sort_by_key(|&u| (depth[u], u));
    debug_assert!(centroids.len() <= 2);

    let mut path = Vec::with_capacity(depth[centroids[0]] + 1);
    let mut u = centroids[0];
    loop {
        path.push(u);
        if u == root {
            break;
        }
        u = parent[u];
    }
    path.reverse();
    Ok(CentroidReport {
        centroids,
        psi_min,
        path_root_to_centroid: path,
    })
}

/// Descendant centrality n + 1 - de(u) in the tree rooted at `root`
/// (ascending order equals descending descendant count).
pub fn descendant_centrality(tree: &LabeledTree, root: usize) -> Result<ScoreVector, TreeError> {
    let n = tree.n();
    let de = descendant_counts(tree, root)?;
    let mut values = vec![0.0; n + 1];
    for u in 1..=n {
        values[u] = (n + 1 - de[u]) as f64;
    }
    Ok(ScoreVector {
        values,
        direction: Direction::Ascending,
    })
}

/// Vertex degrees, to be ranked in decreasing order.
pub fn degree_vector(tree: &LabeledTree) -> ScoreVector {
    let n = tree.n();
    let mut values = vec![0.0; n + 1];
    for u in 1..=n {
        values[u] = tree.degree(u) as f64;
    }
    ScoreVector {
        values,
        direction: Direction::Descending,
    }
}
