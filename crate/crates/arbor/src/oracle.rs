//! Exact ground truth for testing: descendant-count distributions, full
//! history enumeration at small sizes, and exact expected risks with
//! analytic tie handling.
//!
//! Enumeration carries exact rational probabilities and is the arbiter for
//! every closed-form law implemented here; the large-n closed forms are
//! evaluated in log space.

use num::{BigRational, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::centrality::{centroid, degree_vector, jordan_centrality_counts, subtree_size_counts};
use crate::estimators::Estimator;
use crate::risk::risk_alpha;
use crate::rng::{derive_seed, RngState};
use crate::tree::{LabeledTree, Model, RecursiveTree};
use crate::treegen::{generate, shuffle_labels};

/// Histories grow factorially; URRT(9) already has 8! = 40320 of them.
pub const ENUMERATION_CAP: usize = 9;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("vertex rank {rank} out of range 2..={n}")]
    RankOutOfRange { rank: usize, n: usize },
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    SizeAboveCap { n: usize, cap: usize },
    #[error("no exact oracle for estimator '{0}' (randomness is not tie-block shaped)")]
    UnsupportedEstimator(Estimator),
    #[error("tree must have at least one vertex")]
    EmptyTree,
}

/// Exact distribution of a descendant count: `probs()[k] = P(de = k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    probs: Vec<f64>,
}

impl Pmf {
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn max_support(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(k, p)| k as f64 * p)
            .sum()
    }

    /// Total-variation distance from an empirical sample of counts.
    pub fn tv_from_samples(&self, samples: &[usize]) -> f64 {
        let max = samples
            .iter()
            .copied()
            .max()
            .unwrap_or(0)
            .max(self.max_support());
        let mut empirical = vec![0.0; max + 1];
        for &s in samples {
            empirical[s] += 1.0 / samples.len() as f64;
        }
        let mut tv = 0.0;
        for k in 0..=max {
            let p = self.probs.get(k).copied().unwrap_or(0.0);
            tv += (p - empirical[k]).abs();
        }
        tv / 2.0
    }
}

/// Cumulative table of ln(k!).
struct LnFact(Vec<f64>);

impl LnFact {
    fn new(max: usize) -> Self {
        let mut table = vec![0.0; max + 1];
        for k in 1..=max {
            table[k] = table[k - 1] + (k as f64).ln();
        }
        Self(table)
    }

    fn get(&self, k: usize) -> f64 {
        self.0[k]
    }
}

/// Exact descendant-count law of vertex `j` in a uniform random recursive
/// tree of size `n`:
/// `P(de(j) = k) = (j-1) (n-k-2)! (n-j)! / ((n-j-k)! (n-1)!)`,
/// evaluated in log space. Mean is `n/j - 1`.
pub fn urrt_descendant_pmf(n: usize, j: usize) -> Result<Pmf, OracleError> {
    if j < 2 || j > n {
        return Err(OracleError::RankOutOfRange { rank: j, n });
    }
    let lf = LnFact::new(n);
    let probs = (0..=n - j)
        .map(|k| {
            let lnp = ((j - 1) as f64).ln() + lf.get(n - k - 2) + lf.get(n - j)
                - lf.get(n - j - k)
                - lf.get(n - 1);
            lnp.exp()
        })
        .collect();
    Ok(Pmf { probs })
}

/// Exact descendant-count law of vertex `i` in a preferential attachment
/// tree of size `n`. The count follows a Polya urn on half-edges started at
/// (1, 2i-3) with 2 balls added per draw:
/// `P(de(i) = k) = C(n-i, k) prod_{a=1}^{k}(2a-1)
///                 prod_{b=0}^{n-i-k-1}(2i-3+2b) / prod_{m=0}^{n-i-1}(2i-2+2m)`,
/// evaluated in log space.
pub fn pa_descendant_pmf(n: usize, i: usize) -> Result<Pmf, OracleError> {
    if i < 2 || i > n {
        return Err(OracleError::RankOutOfRange { rank: i, n });
    }
    let cap = n - i;
    let lf = LnFact::new(cap);
    // prefix sums of the log factor strings
    let mut white = vec![0.0; cap + 1];
    for a in 1..=cap {
        white[a] = white[a - 1] + ((2 * a - 1) as f64).ln();
    }
    let mut black = vec![0.0; cap + 1];
    for m in 1..=cap {
        black[m] = black[m - 1] + ((2 * i - 3 + 2 * (m - 1)) as f64).ln();
    }
    let denom: f64 = (0..cap).map(|m| ((2 * i - 2 + 2 * m) as f64).ln()).sum();
    let probs = (0..=cap)
        .map(|k| {
            let ln_choose = lf.get(cap) - lf.get(k) - lf.get(cap - k);
            (ln_choose + white[k] + black[cap - k] - denom).exp()
        })
        .collect();
    Ok(Pmf { probs })
}

/// One attachment history with its exact probability.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedHistory {
    pub tree: RecursiveTree,
    pub probability: BigRational,
}

fn ratio(num: usize, den: usize) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Every attachment history of the model at size `n`, with exact rational
/// probabilities summing to one.
pub fn enumerate_histories(n: usize, model: Model) -> Result<Vec<WeightedHistory>, OracleError> {
    if n == 0 {
        return Err(OracleError::EmptyTree);
    }
    if n > ENUMERATION_CAP {
        return Err(OracleError::SizeAboveCap {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    if n == 1 {
        return Ok(vec![WeightedHistory {
            tree: RecursiveTree::singleton(),
            probability: BigRational::one(),
        }]);
    }
    let mut out = Vec::new();
    let mut choices = vec![0usize; n + 1];
    let mut degrees = vec![0usize; n + 1];
    choices[2] = 1;
    degrees[1] = 1;
    degrees[2] = 1;
    recurse(3, n, model, &mut choices, &mut degrees, BigRational::one(), &mut out);
    // step 2 is forced in both models, so its probability factor is 1
    Ok(out)
}

fn recurse(
    t: usize,
    n: usize,
    model: Model,
    choices: &mut Vec<usize>,
    degrees: &mut Vec<usize>,
    prob: BigRational,
    out: &mut Vec<WeightedHistory>,
) {
    if t > n {
        let parents: Vec<usize> = (2..=n).map(|s| choices[s]).collect();
        out.push(WeightedHistory {
            tree: RecursiveTree::from_parents(n, &parents).expect("valid enumeration"),
            probability: prob,
        });
        return;
    }
    for parent in 1..t {
        let step = match model {
            Model::Urrt => ratio(1, t - 1),
            Model::Pa => ratio(degrees[parent], 2 * (t - 2)),
        };
        choices[t] = parent;
        degrees[parent] += 1;
        degrees[t] = 1;
        recurse(t + 1, n, model, choices, degrees, prob.clone() * step, out);
        degrees[t] = 0;
        degrees[parent] -= 1;
    }
}

/// Marginal law of `de(vertex)` from full enumeration, exact.
pub fn enumeration_descendant_marginal(
    n: usize,
    vertex: usize,
    model: Model,
) -> Result<Vec<BigRational>, OracleError> {
    if vertex < 2 || vertex > n {
        return Err(OracleError::RankOutOfRange { rank: vertex, n });
    }
    let mut marginal = vec![BigRational::zero(); n - vertex + 1];
    for h in enumerate_histories(n, model)? {
        let labeled = h.tree.to_labeled();
        let counts = subtree_size_counts(&labeled, 1).expect("root 1 valid");
        marginal[counts[vertex] - 1] += h.probability;
    }
    Ok(marginal)
}

/// Sum of |s - t| for s in a..=b.
fn abs_sum(a: usize, b: usize, t: usize) -> usize {
    (a..=b).map(|s| s.abs_diff(t)).sum()
}

/// Expected rank displacement per true rank for one history, with tied
/// score blocks averaged analytically: a block of size k occupying a rank
/// interval gives each member every interval rank with probability 1/k.
fn history_displacements(tree: &RecursiveTree, estimator: Estimator) -> Vec<BigRational> {
    let n = tree.n();
    let labeled = tree.to_labeled();
    // In arrival coordinates the truth is the identity, so scores are indexed
    // by true rank. Larger key = earlier rank, uniformly across estimators.
    let keys: Vec<i64> = match estimator {
        Estimator::Jordan => jordan_centrality_counts(&labeled)
            .iter()
            .map(|&c| -(c as i64))
            .collect(),
        Estimator::Descendant => subtree_size_counts(&labeled, 1)
            .expect("root 1 valid")
            .iter()
            .map(|&c| c as i64)
            .collect(),
        Estimator::Degree => degree_vector(&labeled)
            .values
            .iter()
            .map(|&d| d as i64)
            .collect(),
        _ => unreachable!("filtered by expected_displacements"),
    };
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by_key(|&u| std::cmp::Reverse(keys[u]));
    let mut disp = vec![BigRational::zero(); n + 1];
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && keys[order[j]] == keys[order[i]] {
            j += 1;
        }
        let block = j - i;
        for &t in &order[i..j] {
            disp[t] = ratio(abs_sum(i + 1, j, t), block);
        }
        i = j;
    }
    disp
}

/// Expected rank displacement `E|rank_hat(t) - t|` for every true rank t,
/// averaged exactly over all histories and tie-breaks.
pub fn expected_displacements(
    estimator: Estimator,
    n: usize,
    model: Model,
) -> Result<Vec<BigRational>, OracleError> {
    match estimator {
        Estimator::Spectral | Estimator::ReverseDmc => {
            return Err(OracleError::UnsupportedEstimator(estimator))
        }
        _ => {}
    }
    if n == 0 {
        return Err(OracleError::EmptyTree);
    }
    if n > ENUMERATION_CAP {
        return Err(OracleError::SizeAboveCap {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    if estimator == Estimator::Random {
        // one big tie block regardless of the tree
        let mut disp = vec![BigRational::zero(); n + 1];
        for t in 1..=n {
            disp[t] = ratio(abs_sum(1, n, t), n);
        }
        return Ok(disp);
    }
    let mut disp = vec![BigRational::zero(); n + 1];
    for h in enumerate_histories(n, model)? {
        let d = history_displacements(&h.tree, estimator);
        for t in 1..=n {
            disp[t] += &h.probability * &d[t];
        }
    }
    Ok(disp)
}

/// Exact expected risk of an ordering procedure at enumeration scale.
pub fn exact_risk(
    estimator: Estimator,
    n: usize,
    alpha: f64,
    model: Model,
) -> Result<f64, OracleError> {
    let disp = expected_displacements(estimator, n, model)?;
    Ok((1..=n)
        .map(|t| disp[t].to_f64().expect("small rational") / (t as f64).powf(alpha))
        .sum())
}

/// Canonical encoding of the unlabeled shape (AHU rooted at the centroid,
/// minimum over the at most two centroids).
pub fn canonical_shape(tree: &RecursiveTree) -> String {
    fn encode(tree: &LabeledTree, u: usize, parent: usize) -> String {
        let mut kids: Vec<String> = tree
            .neighbors(u)
            .iter()
            .filter(|&&v| v != parent)
            .map(|&v| encode(tree, v, u))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    let labeled = tree.to_labeled();
    let report = centroid(&labeled, 1).expect("root 1 valid");
    report
        .centroids
        .iter()
        .map(|&c| encode(&labeled, c, 0))
        .min()
        .expect("at least one centroid")
}

/// One entry of the oracle self-check report.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckReport {
    pub name: String,
    pub expected: f64,
    pub observed: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckReport {
    fn within(name: &str, expected: f64, observed: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            expected,
            observed,
            tolerance,
            pass: (observed - expected).abs() <= tolerance,
        }
    }
}

/// Full self-check output, serializable as JSON.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SelfCheckReport {
    pub checks: Vec<CheckReport>,
    pub notes: Vec<String>,
    pub all_pass: bool,
}

impl SelfCheckReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub struct SelfCheckConfig {
    /// Replicates for the Monte-Carlo-vs-exact risk checks.
    pub mc_replicates: usize,
    /// Replicates for the empirical descendant-mean check at n = 1000.
    pub urn_replicates: usize,
    pub seed: u64,
}

impl Default for SelfCheckConfig {
    fn default() -> Self {
        Self {
            mc_replicates: 100_000,
            urn_replicates: 10_000,
            seed: 0xA12B0,
        }
    }
}

/// Runs every oracle invariant and returns the pass/fail report.
pub fn run_self_checks(cfg: &SelfCheckConfig) -> SelfCheckReport {
    let mut checks = Vec::new();
    let mut notes = Vec::new();

    // history probabilities sum to exactly one
    for model in Model::ALL {
        let sum: BigRational = enumerate_histories(7, model)
            .expect("within cap")
            .into_iter()
            .map(|h| h.probability)
            .sum();
        checks.push(CheckReport {
            name: format!("{model}_history_prob_sum_n7"),
            expected: 1.0,
            observed: sum.to_f64().unwrap(),
            tolerance: 0.0,
            pass: sum.is_one(),
        });
    }

    // closed-form pmfs match enumeration exactly
    for model in Model::ALL {
        let mut max_dev = 0.0f64;
        for n in 2..=8 {
            for v in 2..=n {
                let pmf = match model {
                    Model::Urrt => urrt_descendant_pmf(n, v),
                    Model::Pa => pa_descendant_pmf(n, v),
                }
                .unwrap();
                let marginal = enumeration_descendant_marginal(n, v, model).unwrap();
                for (k, exact) in marginal.iter().enumerate() {
                    let dev = (pmf.probs()[k] - exact.to_f64().unwrap()).abs();
                    max_dev = max_dev.max(dev);
                }
            }
        }
        checks.push(CheckReport::within(
            &format!("{model}_pmf_vs_enumeration_max_dev"),
            0.0,
            max_dev,
            1e-12,
        ));
    }

    // normalization on a grid past the enumeration cap
    let mut max_norm_dev = 0.0f64;
    for n in [2usize, 3, 5, 8, 13, 21, 34, 55, 64] {
        for v in 2..=n {
            max_norm_dev = max_norm_dev.max((urrt_descendant_pmf(n, v).unwrap().total() - 1.0).abs());
            max_norm_dev = max_norm_dev.max((pa_descendant_pmf(n, v).unwrap().total() - 1.0).abs());
        }
    }
    checks.push(CheckReport::within(
        "pmf_normalization_max_dev",
        0.0,
        max_norm_dev,
        1e-12,
    ));

    // E[de(j) + 1] = n/j in the uniform model
    let mut max_mean_dev = 0.0f64;
    for n in [10usize, 30, 64] {
        for j in 2..=n {
            let mean = urrt_descendant_pmf(n, j).unwrap().mean() + 1.0;
            max_mean_dev = max_mean_dev.max((mean - n as f64 / j as f64).abs());
        }
    }
    checks.push(CheckReport::within(
        "urrt_pmf_mean_identity_max_dev",
        0.0,
        max_mean_dev,
        1e-9,
    ));

    // empirical descendant means from the generator at n = 1000
    let n_big = 1000usize;
    for j in [2usize, 10, 100] {
        let reps = cfg.urn_replicates;
        let mut values = Vec::with_capacity(reps);
        for rep in 0..reps {
            let mut rng = RngState::from_seed(derive_seed(cfg.seed, &[90, j as u64, rep as u64]));
            let tree = generate(Model::Urrt, n_big, &mut rng).expect("n >= 1");
            let counts = subtree_size_counts(&tree.to_labeled(), 1).unwrap();
            values.push(counts[j] as f64);
        }
        let mean = values.iter().sum::<f64>() / reps as f64;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (reps - 1) as f64;
        let se = (var / reps as f64).sqrt();
        checks.push(CheckReport::within(
            &format!("urrt_empirical_mean_de_plus1_n1000_j{j}"),
            n_big as f64 / j as f64,
            mean,
            3.0 * se,
        ));
    }

    // same-shape histories carry equal probability in the uniform model
    {
        let mut by_shape: std::collections::HashMap<String, Vec<BigRational>> =
            std::collections::HashMap::new();
        for h in enumerate_histories(6, Model::Urrt).unwrap() {
            by_shape
                .entry(canonical_shape(&h.tree))
                .or_default()
                .push(h.probability);
        }
        let mut max_spread = BigRational::zero();
        for probs in by_shape.values() {
            for p in probs {
                let d = (p - &probs[0]).abs();
                if d > max_spread {
                    max_spread = d;
                }
            }
        }
        checks.push(CheckReport {
            name: "urrt_shape_exchangeability_n6".to_string(),
            expected: 0.0,
            observed: max_spread.to_f64().unwrap(),
            tolerance: 0.0,
            pass: max_spread.is_zero(),
        });
    }

    // Monte Carlo means converge to the exact risks
    let estimators = [
        Estimator::Jordan,
        Estimator::Descendant,
        Estimator::Degree,
        Estimator::Random,
    ];
    let n_mc = 5usize;
    for model in Model::ALL {
        for (ei, &est) in estimators.iter().enumerate() {
            let exact = exact_risk(est, n_mc, 1.0, model).unwrap();
            let reps = cfg.mc_replicates;
            let mut sum = 0.0;
            let mut sumsq = 0.0;
            for rep in 0..reps {
                let mut rng = RngState::from_seed(derive_seed(
                    cfg.seed,
                    &[model as u64, ei as u64, rep as u64],
                ));
                let tree = generate(model, n_mc, &mut rng).unwrap();
                let (labeled, truth) = shuffle_labels(&tree, &mut rng);
                let ordering = match est {
                    Estimator::Jordan => crate::estimators::jordan_ordering(&labeled, &mut rng),
                    Estimator::Descendant => crate::estimators::descendant_ordering(
                        &labeled,
                        truth.label_of(1),
                        &mut rng,
                    )
                    .unwrap(),
                    Estimator::Degree => crate::estimators::degree_ordering(&labeled, &mut rng),
                    Estimator::Random => crate::estimators::random_ordering(n_mc, &mut rng),
                    _ => unreachable!(),
                };
                let r = risk_alpha(&ordering, &truth, 1.0).unwrap();
                sum += r;
                sumsq += r * r;
            }
            let mean = sum / reps as f64;
            let var = (sumsq - sum * sum / reps as f64) / (reps - 1) as f64;
            let se = (var / reps as f64).sqrt();
            checks.push(CheckReport::within(
                &format!("mc_vs_exact_{model}_{est}_n{n_mc}"),
                exact,
                mean,
                3.0 * se,
            ));
        }
    }

    // documented deviation: the simple closed form (i-1)/(n-1) for
    // P(de(i) = 0) holds in the uniform model but not under preferential
    // attachment, where enumeration confirms the urn product instead.
    for (n, i) in [(4usize, 2usize), (6, 3)] {
        let product = pa_descendant_pmf(n, i).unwrap().probs()[0];
        let closed = (i - 1) as f64 / (n - 1) as f64;
        if (product - closed).abs() > 1e-12 {
            notes.push(format!(
                "pa pmf zero case at n={n}, i={i}: urn product gives {product:.6}, \
                 the (i-1)/(n-1) closed form gives {closed:.6}; enumeration agrees \
                 with the product form"
            ));
        }
    }

    let all_pass = checks.iter().all(|c| c.pass);
    SelfCheckReport {
        checks,
        notes,
        all_pass,
    }
}
