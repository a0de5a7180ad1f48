use std::collections::HashMap;

use super::graph::{Graph, Node};
use super::tensor::Tensor;
use super::AutodiffError;

/// Named parameter arrays with a stable iteration order.
///
/// Order is the insertion order, so two stores built by the same
/// construction sequence are identical, including iteration.
#[derive(Clone, Debug, Default)]
pub struct ParamStore {
    entries: Vec<(String, Tensor)>,
    index: HashMap<String, usize>,
}

impl ParamStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: &str, value: Tensor) -> Result<(), AutodiffError> {
        if self.index.contains_key(name) {
            return Err(AutodiffError::DuplicateParam(name.to_string()));
        }
        self.index.insert(name.to_string(), self.entries.len());
        self.entries.push((name.to_string(), value));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Tensor> {
        self.index.get(name).map(|&i| &self.entries[i].1)
    }

    pub fn get_mut(&mut self, name: &str) -> Option<&mut Tensor> {
        let i = *self.index.get(name)?;
        Some(&mut self.entries[i].1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total scalar count across all parameters.
    pub fn total_params(&self) -> usize {
        self.entries.iter().map(|(_, t)| t.len()).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Tensor)> {
        self.entries.iter().map(|(n, t)| (n.as_str(), t))
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = (&str, &mut Tensor)> {
        self.entries.iter_mut().map(|(n, t)| (n.as_str(), t))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    fn position(&self, name: &str) -> Result<usize, AutodiffError> {
        self.index.get(name).copied().ok_or_else(|| AutodiffError::UnknownParam(name.to_string()))
    }
}

/// Graph nodes for every parameter of a store, in store order.
pub struct BoundParams {
    nodes: Vec<Node>,
}

impl BoundParams {
    /// Register every parameter of `store` as a differentiable leaf.
    pub fn bind(graph: &mut Graph, store: &ParamStore) -> Result<Self, AutodiffError> {
        let mut nodes = Vec::with_capacity(store.len());
        for (_, tensor) in store.iter() {
            nodes.push(graph.leaf(tensor.clone(), true)?);
        }
        Ok(Self { nodes })
    }

    pub fn node(&self, store: &ParamStore, name: &str) -> Result<Node, AutodiffError> {
        Ok(self.nodes[store.position(name)?])
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }
}

/// Per-parameter gradients aligned with a [`ParamStore`].
///
/// Parameters that do not appear on any path to the loss hold exact zeros.
#[derive(Clone, Debug)]
pub struct GradStore {
    grads: Vec<(String, Tensor)>,
    index: HashMap<String, usize>,
}

impl GradStore {
    pub fn zeros_like(store: &ParamStore) -> Self {
        let grads = store.iter().map(|(n, t)| (n.to_string(), Tensor::zeros(t.shape()))).collect();
        let index = store.index.clone();
        Self { grads, index }
    }

    pub fn get(&self, name: &str) -> Option<&Tensor> {
        self.index.get(name).map(|&i| &self.grads[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Tensor)> {
        self.grads.iter().map(|(n, t)| (n.as_str(), t))
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = (&str, &mut Tensor)> {
        self.grads.iter_mut().map(|(n, t)| (n.as_str(), t))
    }

    /// Largest absolute entry, useful for divergence checks.
    pub fn max_abs(&self) -> f64 {
        self.grads
            .iter()
            .flat_map(|(_, t)| t.data().iter())
            .fold(0.0_f64, |acc, &v| acc.max(v.abs()))
    }
}

impl Graph {
    /// Backward pass folded into a [`GradStore`] aligned with `store`.
    pub fn backward_params(
        &self,
        loss: Node,
        bound: &BoundParams,
        store: &ParamStore,
    ) -> Result<GradStore, AutodiffError> {
        let grads = self.backward(loss)?;
        let mut out = GradStore::zeros_like(store);
        for (slot, node) in out.grads.iter_mut().zip(bound.nodes()) {
            if let Some(g) = grads.get(*node) {
                slot.1 = g.clone();
            }
        }
        Ok(out)
    }
}

/// Central-difference gradient estimate, one coordinate at a time:
/// `(f(p + eps) - f(p - eps)) / (2 eps)`.
///
/// This is the oracle the analytic backward pass is checked against; it
/// never touches the graph machinery.
pub fn finite_diff_grad<F>(
    f: &mut F,
    params: &mut ParamStore,
    eps: f64,
) -> Result<GradStore, AutodiffError>
where
    F: FnMut(&ParamStore) -> Result<f64, AutodiffError>,
{
    assert!(eps > 0.0, "eps must be positive");
    let mut out = GradStore::zeros_like(params);
    for pi in 0..params.entries.len() {
        let n = params.entries[pi].1.len();
        for ci in 0..n {
            let d = finite_diff_coord(f, params, eps, pi, ci)?;
            out.grads[pi].1.data_mut()[ci] = d;
        }
    }
    Ok(out)
}

/// Central difference restricted to named coordinates; used where a full
/// sweep over every parameter would be too slow.
pub fn finite_diff_grad_coords<F>(
    f: &mut F,
    params: &mut ParamStore,
    eps: f64,
    coords: &[(String, usize)],
) -> Result<Vec<f64>, AutodiffError>
where
    F: FnMut(&ParamStore) -> Result<f64, AutodiffError>,
{
    let mut out = Vec::with_capacity(coords.len());
    for (name, ci) in coords {
        let pi = params.position(name)?;
        out.push(finite_diff_coord(f, params, eps, pi, *ci)?);
    }
    Ok(out)
}

fn finite_diff_coord<F>(
    f: &mut F,
    params: &mut ParamStore,
    eps: f64,
    pi: usize,
    ci: usize,
) -> Result<f64, AutodiffError>
where
    F: FnMut(&ParamStore) -> Result<f64, AutodiffError>,
{
    let orig = params.entries[pi].1.data()[ci];
    params.entries[pi].1.data_mut()[ci] = orig + eps;
    let plus = f(params);
    params.entries[pi].1.data_mut()[ci] = orig - eps;
    let minus = f(params);
    params.entries[pi].1.data_mut()[ci] = orig;
    let (plus, minus) = (plus?, minus?);
    if !plus.is_finite() || !minus.is_finite() {
        return Err(AutodiffError::NonFiniteProbe {
            param: params.entries[pi].0.clone(),
            index: ci,
        });
    }
    Ok((plus - minus) / (2.0 * eps))
}

/// Worst-case relative disagreement between two gradient vectors.
///
/// Entries where both sides are below `floor` in magnitude count as exact
/// agreement; everything else is `|a - b| / max(|a|, |b|)`.
pub fn max_rel_err(a: &[f64], b: &[f64], floor: f64) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let scale = x.abs().max(y.abs());
            if scale < floor {
                0.0
            } else {
                (x - y).abs() / scale
            }
        })
        .fold(0.0_f64, f64::max)
}
