//! Random recursive tree generators and label scrambling.

use crate::rng::RngState;
use crate::tree::{GroundTruth, LabeledTree, Model, RecursiveTree, TreeError};

/// Uniform random recursive tree: rank `t` attaches to a uniform earlier vertex.
pub fn generate_urrt(n: usize, rng: &mut RngState) -> Result<RecursiveTree, TreeError> {
    if n == 0 {
        return Err(TreeError::EmptyTree);
    }
    let mut parents = Vec::with_capacity(n.saturating_sub(1));
    for t in 2..=n {
        parents.push(rng.index(t - 1) + 1);
    }
    RecursiveTree::from_parents(n, &parents)
}

/// Preferential attachment tree: rank `t` attaches to an existing vertex with
/// probability proportional to its degree.
///
/// The size-2 tree is the single edge (1,2). From `t = 3` on, the parent is a
/// uniform draw from an append-only half-edge list (every edge contributes
/// both endpoints), which realizes deg(v)/(2(t-2)) exactly in O(1) per step.
pub fn generate_pa(n: usize, rng: &mut RngState) -> Result<RecursiveTree, TreeError> {
    if n == 0 {
        return Err(TreeError::EmptyTree);
    }
    let mut parents = Vec::with_capacity(n.saturating_sub(1));
    if n >= 2 {
        parents.push(1);
        let mut half_edges = Vec::with_capacity(2 * (n - 1));
        half_edges.push(1);
        half_edges.push(2);
        for t in 3..=n {
            let parent = half_edges[rng.index(half_edges.len())];
            parents.push(parent);
            half_edges.push(parent);
            half_edges.push(t);
        }
    }
    RecursiveTree::from_parents(n, &parents)
}

/// Dispatch on the model tag.
pub fn generate(model: Model, n: usize, rng: &mut RngState) -> Result<RecursiveTree, TreeError> {
    match model {
        Model::Urrt => generate_urrt(n, rng),
        Model::Pa => generate_pa(n, rng),
    }
}

/// Applies a uniform random relabeling, producing the observed shape and the
/// hidden truth. Rank `t` receives label `pi(t)`; `sigma = pi^-1` maps a
/// label back to its rank.
pub fn shuffle_labels(tree: &RecursiveTree, rng: &mut RngState) -> (LabeledTree, GroundTruth) {
    let n = tree.n();
    let mut tau: Vec<usize> = (0..=n).collect();
    rng.shuffle(&mut tau[1..]);
    let mut adj = vec![Vec::new(); n + 1];
    for (u, v) in tree.edges() {
        let (lu, lv) = (tau[u], tau[v]);
        adj[lu].push(lv);
        adj[lv].push(lu);
    }
    let labeled = LabeledTree::from_adjacency_unchecked(n, adj);
    (labeled, GroundTruth::from_rank_to_label(tau))
}
