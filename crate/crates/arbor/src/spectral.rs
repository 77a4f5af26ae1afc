//! Fiedler vector of a tree Laplacian, matrix-free.
//!
//! Inverse iteration restricted to the orthogonal complement of the
//! all-ones vector. Each step applies the Laplacian pseudo-inverse exactly
//! in O(n) by leaf elimination along the tree, so one iteration is two
//! linear passes and convergence is governed by lambda2/lambda3.

use thiserror::Error;

use crate::centrality::ScoreVector;
use crate::rng::RngState;
use crate::tree::LabeledTree;

pub const DEFAULT_TOL: f64 = 1e-8;

/// Iteration cap used by callers that do not pick their own.
pub fn default_max_iter(n: usize) -> usize {
    50 * n.max(1)
}

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("vector length {got} does not match tree size {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("tree must have at least 2 vertices")]
    TooSmall,
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("eigensolver did not converge: {iterations} iterations, residual {residual:.3e}")]
    NotConverged { iterations: usize, residual: f64 },
}

/// Converged eigenpair for the second-smallest Laplacian eigenvalue.
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub lambda2: f64,
    /// Unit-norm eigenvector over labels `1..=n`; index 0 unused.
    pub vector: Vec<f64>,
    /// `||L v - lambda2 v||_2` at return.
    pub residual: f64,
    pub iterations: usize,
}

/// y = L x with L = D - A; entry 0 is passed through as 0.
pub fn laplacian_apply(tree: &LabeledTree, x: &[f64]) -> Result<Vec<f64>, SpectralError> {
    let n = tree.n();
    if x.len() != n + 1 {
        return Err(SpectralError::LengthMismatch {
            expected: n + 1,
            got: x.len(),
        });
    }
    let mut y = vec![0.0; n + 1];
    for u in 1..=n {
        let mut acc = tree.degree(u) as f64 * x[u];
        for &v in tree.neighbors(u) {
            acc -= x[v];
        }
        y[u] = acc;
    }
    Ok(y)
}

fn center(x: &mut [f64]) {
    let n = x.len() - 1;
    let mean: f64 = x[1..].iter().sum::<f64>() / n as f64;
    for v in &mut x[1..] {
        *v -= mean;
    }
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = x[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in &mut x[1..] {
            *v /= norm;
        }
    }
    norm
}

/// Exact solve of `L x = b` on the tree for `b` orthogonal to the ones
/// vector; the returned solution is centered. Leaf elimination in reverse
/// BFS order, then back-substitution.
fn solve_laplacian(
    tree: &LabeledTree,
    order: &[usize],
    parent: &[usize],
    b: &[f64],
) -> Vec<f64> {
    let n = tree.n();
    let root = order[0];
    let mut diag: Vec<f64> = (0..=n).map(|u| if u == 0 { 0.0 } else { tree.degree(u) as f64 }).collect();
    let mut rhs = b.to_vec();
    for &u in order.iter().rev() {
        if u != root {
            let p = parent[u];
            diag[p] -= 1.0 / diag[u];
            rhs[p] += rhs[u] / diag[u];
        }
    }
    let mut x = vec![0.0; n + 1];
    for &u in order {
        if u != root {
            x[u] = (rhs[u] + x[parent[u]]) / diag[u];
        }
    }
    center(&mut x);
    x
}

/// Eigenpair of the second-smallest Laplacian eigenvalue, from a random
/// start supplied by `rng`.
pub fn fiedler_vector(
    tree: &LabeledTree,
    tol: f64,
    max_iter: usize,
    rng: &mut RngState,
) -> Result<EigenResult, SpectralError> {
    let n = tree.n();
    if n < 2 {
        return Err(SpectralError::TooSmall);
    }
    if tol <= 0.0 {
        return Err(SpectralError::BadTolerance);
    }
    let (order, parent) = tree.bfs(1);

    let mut v: Vec<f64> = std::iter::once(0.0)
        .chain((0..n).map(|_| rng.unit_f64() - 0.5))
        .collect();
    center(&mut v);
    if normalize(&mut v) == 0.0 {
        // all-equal draw; any fixed non-constant start works
        v[1] = 1.0;
        center(&mut v);
        normalize(&mut v);
    }

    let mut residual = f64::INFINITY;
    for iter in 1..=max_iter {
        let mut w = solve_laplacian(tree, &order, &parent, &v);
        normalize(&mut w);
        let lv = laplacian_apply(tree, &w)?;
        let lambda: f64 = (1..=n).map(|u| w[u] * lv[u]).sum();
        residual = (1..=n)
            .map(|u| (lv[u] - lambda * w[u]).powi(2))
            .sum::<f64>()
            .sqrt();
        v = w;
        if residual <= tol {
            return Ok(EigenResult {
                lambda2: lambda,
                vector: v,
                residual,
                iterations: iter,
            });
        }
    }
    Err(SpectralError::NotConverged {
        iterations: max_iter,
        residual,
    })
}

/// Ascending ranks of the entries of `v` over labels `1..=n`, ties by label.
fn ascending_ranks(v: &[f64]) -> Vec<usize> {
    let n = v.len() - 1;
    let mut idx: Vec<usize> = (1..=n).collect();
    idx.sort_unstable_by(|&a, &b| v[a].total_cmp(&v[b]).then(a.cmp(&b)));
    let mut rank = vec![0usize; n + 1];
    for (pos, &u) in idx.iter().enumerate() {
        rank[u] = pos + 1;
    }
    rank
}

fn orientation_score(v: &[f64], degrees: &ScoreVector) -> f64 {
    let n = degrees.n();
    let rank = ascending_ranks(v);
    (1..=n)
        .map(|u| (n - rank[u]) as f64 * degrees.values[u])
        .sum()
}

/// Resolves the +-v ambiguity of an eigenvector for seriation: keep the sign
/// whose ascending-entry order places high-degree vertices earlier. An exact
/// score tie is broken by a uniform random sign.
pub fn orient(vector: &[f64], degrees: &ScoreVector, rng: &mut RngState) -> Vec<f64> {
    let flipped: Vec<f64> = vector.iter().map(|x| -x).collect();
    let keep = orientation_score(vector, degrees);
    let flip = orientation_score(&flipped, degrees);
    if keep > flip || (keep == flip && rng.coin()) {
        vector.to_vec()
    } else {
        flipped
    }
}
