//! Ordering procedures: score-based ranking with randomized tie-breaking,
//! plus the leaf-peeling and spectral baselines.

use std::fmt;

use crate::centrality::{
    centroid, degree_vector, descendant_centrality, descendant_counts, jordan_centrality,
    Direction, ScoreVector,
};
use crate::rng::RngState;
use crate::spectral::{self, SpectralError};
use crate::tree::{LabeledTree, TreeError};

/// Tags for the ordering procedures compared by the experiment harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    Jordan,
    Descendant,
    Degree,
    Spectral,
    ReverseDmc,
    Random,
}

impl Estimator {
    pub const ALL: [Estimator; 6] = [
        Estimator::Jordan,
        Estimator::Descendant,
        Estimator::Degree,
        Estimator::Spectral,
        Estimator::ReverseDmc,
        Estimator::Random,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Estimator::Jordan => "jordan",
            Estimator::Descendant => "descendant",
            Estimator::Degree => "degree",
            Estimator::Spectral => "spectral",
            Estimator::ReverseDmc => "reverse_dmc",
            Estimator::Random => "random",
        }
    }

    /// Only the descendant ordering is oracle-assisted: it is handed the
    /// true root, which no shape-only procedure can know.
    pub fn requires_root(self) -> bool {
        matches!(self, Estimator::Descendant)
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Estimator {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, TreeError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "jordan" => Ok(Estimator::Jordan),
            "descendant" => Ok(Estimator::Descendant),
            "degree" => Ok(Estimator::Degree),
            "spectral" => Ok(Estimator::Spectral),
            "reverse_dmc" | "reverse-dmc" | "rdmc" => Ok(Estimator::ReverseDmc),
            "random" => Ok(Estimator::Random),
            other => Err(TreeError::Parse(format!("unknown estimator '{other}'"))),
        }
    }
}

/// An estimated arrival order: a bijection from labels onto ranks `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ordering {
    /// `rank[label]`; index 0 unused.
    rank: Vec<usize>,
}

impl Ordering {
    /// Validates bijectivity onto `1..=n`.
    pub fn from_ranks(rank: Vec<usize>) -> Result<Self, TreeError> {
        let n = rank.len() - 1;
        let mut seen = vec![false; n + 1];
        for &r in &rank[1..] {
            if r == 0 || r > n || seen[r] {
                return Err(TreeError::Parse(format!("ranks are not a bijection onto 1..={n}")));
            }
            seen[r] = true;
        }
        Ok(Self { rank })
    }

    fn from_ranks_unchecked(rank: Vec<usize>) -> Self {
        debug_assert!(Self::from_ranks(rank.clone()).is_ok());
        Self { rank }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rank: (0..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.rank.len() - 1
    }

    pub fn rank_of(&self, label: usize) -> usize {
        self.rank[label]
    }

    /// `ranks()[label] = rank`; entry 0 unused.
    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Inverse view: position `r` holds the label ranked `r`; entry 0 unused.
    pub fn labels_by_rank(&self) -> Vec<usize> {
        let mut tau = vec![0; self.rank.len()];
        for (label, &r) in self.rank.iter().enumerate().skip(1) {
            tau[r] = label;
        }
        tau
    }

    /// A ranking is recursive on a tree when the rank-1 vertex has no
    /// lower-ranked neighbor and every other vertex has exactly one.
    pub fn is_recursive_on(&self, tree: &LabeledTree) -> bool {
        (1..=self.n()).all(|u| {
            let smaller = tree
                .neighbors(u)
                .iter()
                .filter(|&&v| self.rank[v] < self.rank[u])
                .count();
            if self.rank[u] == 1 {
                smaller == 0
            } else {
                smaller == 1
            }
        })
    }
}

/// Ranks labels by score, strictly across distinct values; every block of
/// equal scores receives a uniformly random permutation of its rank interval.
pub fn order_by_scores(scores: &ScoreVector, rng: &mut RngState) -> Ordering {
    let n = scores.n();
    assert!(
        scores.values[1..].iter().all(|v| v.is_finite()),
        "scores must be finite"
    );
    let mut idx: Vec<usize> = (1..=n).collect();
    match scores.direction {
        Direction::Ascending => {
            idx.sort_unstable_by(|&a, &b| scores.values[a].total_cmp(&scores.values[b]))
        }
        Direction::Descending => {
            idx.sort_unstable_by(|&a, &b| scores.values[b].total_cmp(&scores.values[a]))
        }
    }
    let mut rank = vec![0usize; n + 1];
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && scores.values[idx[j]] == scores.values[idx[i]] {
            j += 1;
        }
        rng.shuffle(&mut idx[i..j]);
        for k in i..j {
            rank[idx[k]] = k + 1;
        }
        i = j;
    }
    Ordering::from_ranks_unchecked(rank)
}

/// Ranks vertices by increasing Jordan centrality, ties at random.
pub fn jordan_ordering(tree: &LabeledTree, rng: &mut RngState) -> Ordering {
    order_by_scores(&jordan_centrality(tree), rng)
}

/// Ranks vertices by decreasing descendant count in the tree rooted at the
/// (true) root. Oracle-assisted: a benchmark, not an estimator one could
/// run on shape alone.
pub fn descendant_ordering(
    tree: &LabeledTree,
    root: usize,
    rng: &mut RngState,
) -> Result<Ordering, TreeError> {
    Ok(order_by_scores(&descendant_centrality(tree, root)?, rng))
}

/// Ranks vertices by decreasing degree, ties at random.
pub fn degree_ordering(tree: &LabeledTree, rng: &mut RngState) -> Ordering {
    order_by_scores(&degree_vector(tree), rng)
}

/// A uniformly random ranking.
pub fn random_ordering(n: usize, rng: &mut RngState) -> Ordering {
    let mut rank: Vec<usize> = (0..=n).collect();
    rng.shuffle(&mut rank[1..]);
    Ordering::from_ranks_unchecked(rank)
}

/// Jordan ordering coupled with a descendant ordering whose ties are broken
/// "in the same manner": within every block of equal descendant count, the
/// members off the root-to-centroid path keep the relative order the Jordan
/// ordering gave them, and on-path members are inserted into uniformly
/// random slots of the block.
pub fn coupled_jordan_descendant(
    tree: &LabeledTree,
    root: usize,
    rng: &mut RngState,
) -> Result<(Ordering, Ordering), TreeError> {
    let n = tree.n();
    let jordan = jordan_ordering(tree, rng);
    let de = descendant_counts(tree, root)?;
    let report = centroid(tree, root)?;
    let mut on_path = vec![false; n + 1];
    for &u in &report.path_root_to_centroid {
        on_path[u] = true;
    }

    let mut labels: Vec<usize> = (1..=n).collect();
    labels.sort_unstable_by(|&a, &b| de[b].cmp(&de[a]).then(a.cmp(&b)));
    let mut rank = vec![0usize; n + 1];
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && de[labels[j]] == de[labels[i]] {
            j += 1;
        }
        let mut seq: Vec<usize> = labels[i..j].iter().copied().filter(|&u| !on_path[u]).collect();
        seq.sort_unstable_by_key(|&u| jordan.rank_of(u));
        for &u in labels[i..j].iter().filter(|&&u| on_path[u]) {
            let slot = rng.index(seq.len() + 1);
            seq.insert(slot, u);
        }
        for (k, &u) in seq.iter().enumerate() {
            rank[u] = i + k + 1;
        }
        i = j;
    }
    Ok((jordan, Ordering::from_ranks_unchecked(rank)))
}

/// Reverse DMC peeling: repeatedly removes the current leaf most likely,
/// under preferential attachment, to be the latest arrival. The score of a
/// leaf v in an m-vertex tree is (deg(parent(v)) - 1) / (2(m-2)); the
/// normalizer is shared, so comparison uses deg(parent) - 1 with uniform
/// tie-breaks. The removed leaf gets rank m; the survivor gets rank 1.
pub fn reverse_dmc_ordering(tree: &LabeledTree, rng: &mut RngState) -> Ordering {
    let n = tree.n();
    let mut rank = vec![0usize; n + 1];
    let mut deg: Vec<usize> = (0..=n).map(|u| if u == 0 { 0 } else { tree.degree(u) }).collect();
    let mut alive = vec![true; n + 1];
    alive[0] = false;

    for m in (2..=n).rev() {
        let mut best: Option<usize> = None;
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for v in 1..=n {
            if !alive[v] || deg[v] != 1 {
                continue;
            }
            let parent = *tree
                .neighbors(v)
                .iter()
                .find(|&&w| alive[w])
                .expect("a leaf of a live tree with >= 2 vertices has a neighbor");
            let score = deg[parent] - 1;
            match best {
                Some(b) if score < b => {}
                Some(b) if score == b => candidates.push((v, parent)),
                _ => {
                    best = Some(score);
                    candidates.clear();
                    candidates.push((v, parent));
                }
            }
        }
        let (chosen, parent) = candidates[rng.index(candidates.len())];
        rank[chosen] = m;
        alive[chosen] = false;
        deg[chosen] = 0;
        deg[parent] -= 1;
    }
    let survivor = (1..=n).find(|&u| alive[u]).expect("one vertex remains");
    rank[survivor] = 1;
    Ordering::from_ranks_unchecked(rank)
}

/// Spectral seriation: rank vertices by the entries of the Fiedler vector,
/// oriented so that high-degree vertices come first.
pub fn spectral_ordering(
    tree: &LabeledTree,
    rng: &mut RngState,
    tol: f64,
) -> Result<Ordering, SpectralError> {
    let n = tree.n();
    if n == 1 {
        return Ok(Ordering::identity(1));
    }
    let eig = spectral::fiedler_vector(tree, tol, spectral::default_max_iter(n), rng)?;
    let degrees = degree_vector(tree);
    let oriented = spectral::orient(&eig.vector, &degrees, rng);
    let scores = ScoreVector {
        values: oriented,
        direction: Direction::Ascending,
    };
    Ok(order_by_scores(&scores, rng))
}
