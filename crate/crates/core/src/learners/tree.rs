//! Decision-tree core shared by every tree-based learner.
//!
//! One grower handles classification trees (gini/entropy on weighted
//! labels), regression trees on residuals (variance reduction, mean leaves)
//! and second-order boosting trees (gradient/hessian sums with L2 and
//! per-leaf penalties).

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::data::Matrix;

/// Scores within this margin count as ties.
pub const TIE_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Gini,
    Entropy,
}

/// What a node's split search optimizes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Objective {
    /// Weighted impurity decrease on 0/1 labels.
    Class(Criterion),
    /// Weighted variance reduction on real targets.
    Variance,
    /// Regularized second-order gain; targets are gradients, weights are
    /// hessians.
    Newton {
        lambda: f64,
        gamma: f64,
        min_child_weight: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateMode {
    /// Midpoints between consecutive distinct sorted values.
    Exhaustive,
    /// One uniform threshold per feature between its node minimum and maximum.
    RandomThreshold,
}

/// Per-row targets and weights a tree is grown on.
#[derive(Clone, Copy, Debug)]
pub struct NodeData<'a> {
    pub x: &'a Matrix,
    /// Labels (0/1), residuals or gradients depending on the objective.
    pub target: &'a [f64],
    /// Sample weights, or hessians for [`Objective::Newton`].
    pub weight: &'a [f64],
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
struct Stats {
    n: usize,
    w: f64,
    s: f64,
    q: f64,
}

impl Stats {
    #[inline]
    fn add(&mut self, obj: &Objective, y: f64, w: f64) {
        self.n += 1;
        match obj {
            Objective::Newton { .. } => {
                self.w += w;
                self.s += y;
            }
            _ => {
                self.w += w;
                self.s += w * y;
                self.q += w * y * y;
            }
        }
    }

    fn minus(&self, o: &Stats) -> Stats {
        Stats {
            n: self.n - o.n,
            w: self.w - o.w,
            s: self.s - o.s,
            q: self.q - o.q,
        }
    }
}

fn entropy_bits(p: f64) -> f64 {
    let h = |v: f64| if v > 0.0 { -v * v.log2() } else { 0.0 };
    h(p) + h(1.0 - p)
}

fn impurity(obj: &Objective, st: &Stats) -> f64 {
    if st.w <= 0.0 {
        return 0.0;
    }
    match obj {
        Objective::Class(c) => {
            let p = (st.s / st.w).clamp(0.0, 1.0);
            match c {
                Criterion::Gini => 2.0 * p * (1.0 - p),
                Criterion::Entropy => entropy_bits(p),
            }
        }
        Objective::Variance => (st.q / st.w - (st.s / st.w).powi(2)).max(0.0),
        Objective::Newton { .. } => 0.0,
    }
}

/// Score of splitting `parent` into `left` and the complement; `None` when
/// the split is not admissible.
fn split_score(obj: &Objective, parent: &Stats, left: &Stats) -> Option<f64> {
    let right = parent.minus(left);
    if left.n == 0 || right.n == 0 {
        return None;
    }
    match obj {
        Objective::Newton {
            lambda,
            gamma,
            min_child_weight,
        } => {
            if left.w < *min_child_weight || right.w < *min_child_weight {
                return None;
            }
            let term = |st: &Stats| st.s * st.s / (st.w + lambda);
            Some(0.5 * (term(left) + term(&right) - term(parent)) - gamma)
        }
        _ => {
            let (wl, wr) = (left.w / parent.w, right.w / parent.w);
            Some(impurity(obj, parent) - wl * impurity(obj, left) - wr * impurity(obj, &right))
        }
    }
}

/// Leaf output: class-1 probability, mean residual, or Newton weight.
pub fn leaf_value(obj: &Objective, data: &NodeData, rows: &[usize]) -> f64 {
    let st = node_stats(obj, data, rows);
    match obj {
        Objective::Newton { lambda, .. } => newton_leaf_weight(st.s, st.w, *lambda),
        _ if st.w > 0.0 => st.s / st.w,
        _ => 0.0,
    }
}

/// Regularized leaf weight `-G / (H + lambda)`.
pub fn newton_leaf_weight(grad_sum: f64, hess_sum: f64, lambda: f64) -> f64 {
    -grad_sum / (hess_sum + lambda)
}

fn node_stats(obj: &Objective, data: &NodeData, rows: &[usize]) -> Stats {
    let mut st = Stats::default();
    for &i in rows {
        st.add(obj, data.target[i], data.weight[i]);
    }
    st
}

fn is_pure(obj: &Objective, data: &NodeData, rows: &[usize]) -> bool {
    match obj {
        Objective::Newton { .. } => false,
        _ => {
            let first = data.target[rows[0]];
            rows.iter().all(|&i| data.target[i] == first)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitCandidate {
    pub feature: usize,
    pub threshold: f64,
    /// Impurity decrease (or regularized gain for Newton trees).
    pub score: f64,
}

/// Best split of `rows` over `features` (ascending).
///
/// Classification and variance objectives return the best admissible split
/// whenever the node is impure, even at zero decrease, so consistent data
/// can always be separated; pure nodes give `None`. Newton objectives
/// require a strictly positive gain. Ties go to the lowest feature index,
/// then the lowest threshold.
pub fn best_split<R: Rng + ?Sized>(
    data: &NodeData,
    rows: &[usize],
    features: &[usize],
    objective: &Objective,
    mode: CandidateMode,
    rng: &mut R,
) -> Option<SplitCandidate> {
    if rows.len() < 2 || is_pure(objective, data, rows) {
        return None;
    }
    let parent = node_stats(objective, data, rows);
    let mut best: Option<SplitCandidate> = None;
    let mut offer = |cand: SplitCandidate| {
        if best.is_none_or(|b| cand.score > b.score + TIE_EPS) {
            best = Some(cand);
        }
    };
    let mut sorted: Vec<(f64, usize)> = Vec::with_capacity(rows.len());
    for &f in features {
        match mode {
            CandidateMode::Exhaustive => {
                sorted.clear();
                sorted.extend(rows.iter().map(|&i| (data.x.get(i, f), i)));
                sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
                let mut left = Stats::default();
                for k in 0..sorted.len() - 1 {
                    let (v, i) = sorted[k];
                    left.add(objective, data.target[i], data.weight[i]);
                    let next = sorted[k + 1].0;
                    if next <= v {
                        continue;
                    }
                    if let Some(score) = split_score(objective, &parent, &left) {
                        let mut threshold = v + (next - v) / 2.0;
                        if threshold >= next {
                            threshold = v;
                        }
                        offer(SplitCandidate {
                            feature: f,
                            threshold,
                            score,
                        });
                    }
                }
            }
            CandidateMode::RandomThreshold => {
                let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
                for &i in rows {
                    let v = data.x.get(i, f);
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
                if lo >= hi {
                    continue;
                }
                let u: f64 = rng.random();
                let mut threshold = lo + u * (hi - lo);
                if threshold >= hi {
                    threshold = lo;
                }
                let mut left = Stats::default();
                for &i in rows {
                    if data.x.get(i, f) <= threshold {
                        left.add(objective, data.target[i], data.weight[i]);
                    }
                }
                if let Some(score) = split_score(objective, &parent, &left) {
                    offer(SplitCandidate {
                        feature: f,
                        threshold,
                        score,
                    });
                }
            }
        }
    }
    match objective {
        Objective::Newton { .. } => best.filter(|b| b.score > 0.0),
        _ => best,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "t", rename_all = "snake_case")]
pub enum Node {
    /// Rows with `x[feature] <= threshold` go left.
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        value: f64,
        /// Total sample weight (hessian sum for Newton trees).
        weight: f64,
        n: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecisionTree {
    pub nodes: Vec<Node>,
}

impl DecisionTree {
    pub fn leaf_for(&self, row: &[f64]) -> &Node {
        let mut k = 0;
        loop {
            match &self.nodes[k] {
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => k = if row[*feature] <= *threshold { *left } else { *right },
                leaf => return leaf,
            }
        }
    }

    /// Leaf output for one row.
    pub fn predict(&self, row: &[f64]) -> f64 {
        match self.leaf_for(row) {
            Node::Leaf { value, .. } => *value,
            Node::Split { .. } => unreachable!("leaf_for returns leaves"),
        }
    }

    pub fn depth(&self) -> usize {
        fn go(t: &DecisionTree, k: usize) -> usize {
            match t.nodes[k] {
                Node::Split { left, right, .. } => 1 + go(t, left).max(go(t, right)),
                Node::Leaf { .. } => 0,
            }
        }
        go(self, 0)
    }

    pub fn n_leaves(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Leaf { .. })).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TreeParams {
    pub objective: Objective,
    /// `None` grows until purity.
    pub max_depth: Option<usize>,
    pub min_samples_split: usize,
    /// Features drawn (without replacement) per node; `None` uses all.
    pub max_features: Option<usize>,
    pub mode: CandidateMode,
}

impl TreeParams {
    pub fn classification(criterion: Criterion) -> Self {
        Self {
            objective: Objective::Class(criterion),
            max_depth: None,
            min_samples_split: 2,
            max_features: None,
            mode: CandidateMode::Exhaustive,
        }
    }
}

/// Grows a tree on `rows` (indices into `data`).
pub fn grow_tree<R: Rng + ?Sized>(data: &NodeData, rows: Vec<usize>, params: &TreeParams, rng: &mut R) -> DecisionTree {
    assert!(!rows.is_empty(), "grow_tree needs at least one row");
    let d = data.x.n_cols();
    let all: Vec<usize> = (0..d).collect();
    let mut nodes = Vec::new();
    let mut stack = vec![(0usize, rows, 0usize)];
    nodes.push(Node::Leaf {
        value: 0.0,
        weight: 0.0,
        n: 0,
    });
    while let Some((slot, rows, depth)) = stack.pop() {
        let can_split = params.max_depth.is_none_or(|m| depth < m) && rows.len() >= params.min_samples_split.max(2);
        let split = if can_split {
            let feats = match params.max_features {
                Some(m) if m < d => {
                    let mut f = index::sample(rng, d, m.max(1)).into_vec();
                    f.sort_unstable();
                    f
                }
                _ => all.clone(),
            };
            best_split(data, &rows, &feats, &params.objective, params.mode, rng)
        } else {
            None
        };
        match split {
            Some(s) => {
                let (l, r): (Vec<usize>, Vec<usize>) =
                    rows.iter().partition(|&&i| data.x.get(i, s.feature) <= s.threshold);
                let li = nodes.len();
                nodes.push(Node::Leaf { value: 0.0, weight: 0.0, n: 0 });
                nodes.push(Node::Leaf { value: 0.0, weight: 0.0, n: 0 });
                nodes[slot] = Node::Split {
                    feature: s.feature,
                    threshold: s.threshold,
                    left: li,
                    right: li + 1,
                };
                stack.push((li + 1, r, depth + 1));
                stack.push((li, l, depth + 1));
            }
            None => {
                let st = node_stats(&params.objective, data, &rows);
                nodes[slot] = Node::Leaf {
                    value: leaf_value(&params.objective, data, &rows),
                    weight: st.w,
                    n: rows.len(),
                };
            }
        }
    }
    DecisionTree { nodes }
}
