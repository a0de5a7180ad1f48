use super::tensor::{log_softmax, matmul, Tensor};
use super::AutodiffError;

/// Handle into a [`Graph`]; cheap to copy, valid only for the graph that
/// created it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Node(pub(crate) usize);

enum Op {
    Leaf,
    // The source node is provenance only; backward never traverses it.
    Detach(#[allow(dead_code)] Node),
    Add(Node, Node),
    /// `[n, d] + [d]`, the vector added to every row.
    AddRow(Node, Node),
    AddScalar(Node),
    Mul(Node, Node),
    /// `[n, d] * [d]`, per-column scaling.
    MulRow(Node, Node),
    /// `[n, d] * [n]`, per-row scaling.
    MulCol(Node, Node),
    Scale(Node, f64),
    MatMul { a: Node, b: Node, transpose_b: bool },
    GatherRows(Node, Vec<usize>),
    /// Row-wise log-softmax over the last axis.
    LogSoftmax(Node),
    Exp(Node),
    Log1p(Node),
    Sum(Node),
    Mean(Node),
    /// `[n, d] -> [n]`, mean over the last axis.
    MeanLastAxis(Node),
    Reshape(Node),
    ConcatRows(Vec<Node>),
    /// Positions where `mask` is true are replaced by the fill constant.
    MaskFill { x: Node, mask: Vec<bool> },
}

struct NodeData {
    value: Tensor,
    op: Op,
    requires_grad: bool,
}

/// Single-use computation graph for one forward/backward pass.
///
/// Nodes are appended in construction order, which doubles as a topological
/// order; the backward sweep walks ids in reverse, so gradient accumulation
/// order is deterministic. [`Graph::detach`] creates a node whose value is
/// shared but through which no gradient flows.
#[derive(Default)]
pub struct Graph {
    nodes: Vec<NodeData>,
}

/// Per-node gradients produced by [`Graph::backward`].
pub struct Gradients {
    grads: Vec<Option<Tensor>>,
}

impl Gradients {
    /// Gradient of the loss w.r.t. `node`, or `None` if the node is not on
    /// any differentiable path.
    pub fn get(&self, node: Node) -> Option<&Tensor> {
        self.grads[node.0].as_ref()
    }

    /// Like [`Gradients::get`] but materializes an exact-zero tensor for
    /// off-path nodes.
    pub fn get_or_zeros(&self, graph: &Graph, node: Node) -> Tensor {
        match &self.grads[node.0] {
            Some(g) => g.clone(),
            None => Tensor::zeros(graph.value(node).shape()),
        }
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn value(&self, node: Node) -> &Tensor {
        &self.nodes[node.0].value
    }

    pub fn requires_grad(&self, node: Node) -> bool {
        self.nodes[node.0].requires_grad
    }

    fn push(&mut self, value: Tensor, op: Op, requires_grad: bool) -> Result<Node, AutodiffError> {
        value.check_finite(op_name(&op))?;
        let id = self.nodes.len();
        self.nodes.push(NodeData { value, op, requires_grad });
        Ok(Node(id))
    }

    fn rg(&self, n: Node) -> bool {
        self.nodes[n.0].requires_grad
    }

    /// Differentiable input (a parameter when `requires_grad` is true).
    pub fn leaf(&mut self, value: Tensor, requires_grad: bool) -> Result<Node, AutodiffError> {
        self.push(value, Op::Leaf, requires_grad)
    }

    /// Non-differentiable input.
    pub fn constant(&mut self, value: Tensor) -> Result<Node, AutodiffError> {
        self.push(value, Op::Leaf, false)
    }

    /// Stop-gradient: value identical to `x`, zero gradient through it.
    pub fn detach(&mut self, x: Node) -> Node {
        let value = self.nodes[x.0].value.clone();
        let id = self.nodes.len();
        self.nodes.push(NodeData { value, op: Op::Detach(x), requires_grad: false });
        Node(id)
    }

    pub fn add(&mut self, a: Node, b: Node) -> Result<Node, AutodiffError> {
        let (va, vb) = (self.value(a), self.value(b));
        if va.shape() != vb.shape() {
            return Err(shape_err("add", va.shape(), vb.shape()));
        }
        let mut out = va.clone();
        out.add_assign(vb);
        let rg = self.rg(a) || self.rg(b);
        self.push(out, Op::Add(a, b), rg)
    }

    /// `[n, d] + [d]` with the vector broadcast over rows.
    pub fn add_row(&mut self, x: Node, v: Node) -> Result<Node, AutodiffError> {
        let (vx, vv) = (self.value(x), self.value(v));
        if vx.rank() != 2 || vv.rank() != 1 || vx.cols() != vv.len() {
            return Err(shape_err("add_row", vx.shape(), vv.shape()));
        }
        let cols = vx.cols();
        let mut out = vx.clone();
        for (i, e) in out.data_mut().iter_mut().enumerate() {
            *e += vv.data()[i % cols];
        }
        let rg = self.rg(x) || self.rg(v);
        self.push(out, Op::AddRow(x, v), rg)
    }

    pub fn add_scalar(&mut self, x: Node, c: f64) -> Result<Node, AutodiffError> {
        let out = self.value(x).map(|v| v + c);
        let rg = self.rg(x);
        self.push(out, Op::AddScalar(x), rg)
    }

    pub fn mul(&mut self, a: Node, b: Node) -> Result<Node, AutodiffError> {
        let (va, vb) = (self.value(a), self.value(b));
        if va.shape() != vb.shape() {
            return Err(shape_err("mul", va.shape(), vb.shape()));
        }
        let data = va.data().iter().zip(vb.data()).map(|(x, y)| x * y).collect();
        let out = Tensor::new(va.shape(), data)?;
        let rg = self.rg(a) || self.rg(b);
        self.push(out, Op::Mul(a, b), rg)
    }

    /// `[n, d] * [d]` with the vector broadcast over rows.
    pub fn mul_row(&mut self, x: Node, v: Node) -> Result<Node, AutodiffError> {
        let (vx, vv) = (self.value(x), self.value(v));
        if vx.rank() != 2 || vv.rank() != 1 || vx.cols() != vv.len() {
            return Err(shape_err("mul_row", vx.shape(), vv.shape()));
        }
        let cols = vx.cols();
        let mut out = vx.clone();
        for (i, e) in out.data_mut().iter_mut().enumerate() {
            *e *= vv.data()[i % cols];
        }
        let rg = self.rg(x) || self.rg(v);
        self.push(out, Op::MulRow(x, v), rg)
    }

    /// `[n, d] * [n]` with one scale per row.
    pub fn mul_col(&mut self, x: Node, s: Node) -> Result<Node, AutodiffError> {
        let (vx, vs) = (self.value(x), self.value(s));
        if vx.rank() != 2 || vs.rank() != 1 || vx.rows() != vs.len() {
            return Err(shape_err("mul_col", vx.shape(), vs.shape()));
        }
        let cols = vx.cols();
        let mut out = vx.clone();
        for (i, e) in out.data_mut().iter_mut().enumerate() {
            *e *= vs.data()[i / cols];
        }
        let rg = self.rg(x) || self.rg(s);
        self.push(out, Op::MulCol(x, s), rg)
    }

    pub fn scale(&mut self, x: Node, c: f64) -> Result<Node, AutodiffError> {
        let out = self.value(x).map(|v| v * c);
        let rg = self.rg(x);
        self.push(out, Op::Scale(x, c), rg)
    }

    /// `a - b`, composed from scale and add.
    pub fn sub(&mut self, a: Node, b: Node) -> Result<Node, AutodiffError> {
        let nb = self.scale(b, -1.0)?;
        self.add(a, nb)
    }

    pub fn matmul(&mut self, a: Node, b: Node) -> Result<Node, AutodiffError> {
        self.matmul_impl(a, b, false)
    }

    /// `a * b^T`.
    pub fn matmul_nt(&mut self, a: Node, b: Node) -> Result<Node, AutodiffError> {
        self.matmul_impl(a, b, true)
    }

    fn matmul_impl(&mut self, a: Node, b: Node, transpose_b: bool) -> Result<Node, AutodiffError> {
        let out = matmul(self.value(a), self.value(b), false, transpose_b)?;
        let rg = self.rg(a) || self.rg(b);
        self.push(out, Op::MatMul { a, b, transpose_b }, rg)
    }

    /// `out[i, :] = x[indices[i], :]`.
    pub fn gather_rows(&mut self, x: Node, indices: &[usize]) -> Result<Node, AutodiffError> {
        let vx = self.value(x);
        if vx.rank() != 2 {
            return Err(shape_err("gather_rows", vx.shape(), &[]));
        }
        let rows = vx.rows();
        if let Some(&bad) = indices.iter().find(|&&i| i >= rows) {
            return Err(AutodiffError::IndexOutOfRange { op: "gather_rows", index: bad, len: rows });
        }
        let cols = vx.cols();
        let mut data = Vec::with_capacity(indices.len() * cols);
        for &i in indices {
            data.extend_from_slice(vx.row(i));
        }
        let out = Tensor::new(&[indices.len(), cols], data)?;
        let rg = self.rg(x);
        self.push(out, Op::GatherRows(x, indices.to_vec()), rg)
    }

    /// Row-wise log-softmax; rank-1 input is treated as a single row.
    pub fn log_softmax(&mut self, x: Node) -> Result<Node, AutodiffError> {
        let vx = self.value(x);
        if vx.is_empty() {
            return Err(AutodiffError::Empty { op: "log_softmax" });
        }
        let cols = vx.cols();
        let mut data = Vec::with_capacity(vx.len());
        for chunk in vx.data().chunks(cols) {
            data.extend(log_softmax(chunk)?);
        }
        let out = Tensor::new(vx.shape(), data)?;
        let rg = self.rg(x);
        self.push(out, Op::LogSoftmax(x), rg)
    }

    pub fn exp(&mut self, x: Node) -> Result<Node, AutodiffError> {
        let out = self.value(x).map(f64::exp);
        let rg = self.rg(x);
        self.push(out, Op::Exp(x), rg)
    }

    pub fn log1p(&mut self, x: Node) -> Result<Node, AutodiffError> {
        let out = self.value(x).map(f64::ln_1p);
        let rg = self.rg(x);
        self.push(out, Op::Log1p(x), rg)
    }

    pub fn sum(&mut self, x: Node) -> Result<Node, AutodiffError> {
        let out = Tensor::scalar(self.value(x).data().iter().sum());
        let rg = self.rg(x);
        self.push(out, Op::Sum(x), rg)
    }

    pub fn mean(&mut self, x: Node) -> Result<Node, AutodiffError> {
        let vx = self.value(x);
        if vx.is_empty() {
            return Err(AutodiffError::Empty { op: "mean" });
        }
        let out = Tensor::scalar(vx.data().iter().sum::<f64>() / vx.len() as f64);
        let rg = self.rg(x);
        self.push(out, Op::Mean(x), rg)
    }

    /// `[n, d] -> [n]` mean over the last axis.
    pub fn mean_last_axis(&mut self, x: Node) -> Result<Node, AutodiffError> {
        let vx = self.value(x);
        if vx.rank() != 2 || vx.cols() == 0 {
            return Err(shape_err("mean_last_axis", vx.shape(), &[]));
        }
        let cols = vx.cols();
        let data: Vec<f64> =
            vx.data().chunks(cols).map(|r| r.iter().sum::<f64>() / cols as f64).collect();
        let out = Tensor::new(&[vx.rows()], data)?;
        let rg = self.rg(x);
        self.push(out, Op::MeanLastAxis(x), rg)
    }

    pub fn reshape(&mut self, x: Node, shape: &[usize]) -> Result<Node, AutodiffError> {
        let out = self.value(x).reshaped(shape)?;
        let rg = self.rg(x);
        self.push(out, Op::Reshape(x), rg)
    }

    /// Concatenate rank-2 tensors along axis 0.
    pub fn concat_rows(&mut self, parts: &[Node]) -> Result<Node, AutodiffError> {
        if parts.is_empty() {
            return Err(AutodiffError::Empty { op: "concat_rows" });
        }
        let cols = self.value(parts[0]).cols();
        let mut rows = 0;
        let mut data = Vec::new();
        for &p in parts {
            let v = self.value(p);
            if v.rank() != 2 || v.cols() != cols {
                return Err(shape_err("concat_rows", v.shape(), &[0, cols]));
            }
            rows += v.rows();
            data.extend_from_slice(v.data());
        }
        let out = Tensor::new(&[rows, cols], data)?;
        let rg = parts.iter().any(|&p| self.rg(p));
        self.push(out, Op::ConcatRows(parts.to_vec()), rg)
    }

    /// Replace entries where `mask` is true with `fill`; gradient is zero
    /// through filled positions.
    pub fn mask_fill(&mut self, x: Node, mask: &[bool], fill: f64) -> Result<Node, AutodiffError> {
        let vx = self.value(x);
        if mask.len() != vx.len() {
            return Err(AutodiffError::ShapeMismatch {
                op: "mask_fill",
                detail: format!("mask has {} entries for {} elements", mask.len(), vx.len()),
            });
        }
        let mut out = vx.clone();
        for (e, &m) in out.data_mut().iter_mut().zip(mask) {
            if m {
                *e = fill;
            }
        }
        let rg = self.rg(x);
        self.push(out, Op::MaskFill { x, mask: mask.to_vec() }, rg)
    }

    /// ReLU built on mask-fill (mask from the forward value).
    pub fn relu(&mut self, x: Node) -> Result<Node, AutodiffError> {
        let mask: Vec<bool> = self.value(x).data().iter().map(|&v| v < 0.0).collect();
        self.mask_fill(x, &mask, 0.0)
    }

    /// `1 / sqrt(x + eps)` for strictly positive `x + eps`, composed from
    /// the primitive op set: exp(-0.5 * log(x + eps)).
    pub fn rsqrt_eps(&mut self, x: Node, eps: f64) -> Result<Node, AutodiffError> {
        let shifted = self.add_scalar(x, eps - 1.0)?;
        let ln = self.log1p(shifted)?;
        let half = self.scale(ln, -0.5)?;
        self.exp(half)
    }

    /// Reverse-mode sweep from a scalar loss.
    ///
    /// Returns one gradient slot per node; slots not on any differentiable
    /// path stay `None` (exact zero). Accumulation follows reverse
    /// construction order, so repeated runs are bit-identical.
    pub fn backward(&self, loss: Node) -> Result<Gradients, AutodiffError> {
        let lv = self.value(loss);
        if lv.len() != 1 {
            return Err(AutodiffError::NonScalarLoss { shape: lv.shape().to_vec() });
        }
        let mut grads: Vec<Option<Tensor>> = vec![None; self.nodes.len()];
        grads[loss.0] = Some(Tensor::new(lv.shape(), vec![1.0]).expect("unit seed"));

        for id in (0..=loss.0).rev() {
            let Some(g) = grads[id].take() else { continue };
            let node = &self.nodes[id];
            if !node.requires_grad {
                // Re-store for leaves so callers can still query them.
                grads[id] = Some(g);
                continue;
            }
            self.propagate(id, &g, &mut grads)?;
            grads[id] = Some(g);
        }
        Ok(Gradients { grads })
    }

    fn accumulate(grads: &mut [Option<Tensor>], target: Node, contribution: Tensor) {
        match &mut grads[target.0] {
            Some(existing) => existing.add_assign(&contribution),
            slot @ None => *slot = Some(contribution),
        }
    }

    fn propagate(
        &self,
        id: usize,
        g: &Tensor,
        grads: &mut [Option<Tensor>],
    ) -> Result<(), AutodiffError> {
        let node = &self.nodes[id];
        match &node.op {
            Op::Leaf | Op::Detach(_) => {}
            Op::Add(a, b) => {
                if self.rg(*a) {
                    Self::accumulate(grads, *a, g.clone());
                }
                if self.rg(*b) {
                    Self::accumulate(grads, *b, g.clone());
                }
            }
            Op::AddRow(x, v) => {
                if self.rg(*x) {
                    Self::accumulate(grads, *x, g.clone());
                }
                if self.rg(*v) {
                    let cols = self.value(*v).len();
                    let mut gv = Tensor::zeros(&[cols]);
                    for (i, &e) in g.data().iter().enumerate() {
                        gv.data_mut()[i % cols] += e;
                    }
                    Self::accumulate(grads, *v, gv);
                }
            }
            Op::AddScalar(x) => {
                if self.rg(*x) {
                    Self::accumulate(grads, *x, g.reshaped(self.value(*x).shape())?);
                }
            }
            Op::Mul(a, b) => {
                if self.rg(*a) {
                    let d = mul_elem(g, self.value(*b));
                    Self::accumulate(grads, *a, d);
                }
                if self.rg(*b) {
                    let d = mul_elem(g, self.value(*a));
                    Self::accumulate(grads, *b, d);
                }
            }
            Op::MulRow(x, v) => {
                let (vx, vv) = (self.value(*x), self.value(*v));
                let cols = vv.len();
                if self.rg(*x) {
                    let mut d = g.clone();
                    for (i, e) in d.data_mut().iter_mut().enumerate() {
                        *e *= vv.data()[i % cols];
                    }
                    Self::accumulate(grads, *x, d);
                }
                if self.rg(*v) {
                    let mut d = Tensor::zeros(&[cols]);
                    for (i, &e) in g.data().iter().enumerate() {
                        d.data_mut()[i % cols] += e * vx.data()[i];
                    }
                    Self::accumulate(grads, *v, d);
                }
            }
            Op::MulCol(x, s) => {
                let (vx, vs) = (self.value(*x), self.value(*s));
                let cols = vx.cols();
                if self.rg(*x) {
                    let mut d = g.clone();
                    for (i, e) in d.data_mut().iter_mut().enumerate() {
                        *e *= vs.data()[i / cols];
                    }
                    Self::accumulate(grads, *x, d);
                }
                if self.rg(*s) {
                    let mut d = Tensor::zeros(&[vs.len()]);
                    for (i, &e) in g.data().iter().enumerate() {
                        d.data_mut()[i / cols] += e * vx.data()[i];
                    }
                    Self::accumulate(grads, *s, d);
                }
            }
            Op::Scale(x, c) => {
                if self.rg(*x) {
                    Self::accumulate(grads, *x, g.map(|v| v * c));
                }
            }
            Op::MatMul { a, b, transpose_b } => {
                let (va, vb) = (self.value(*a), self.value(*b));
                if *transpose_b {
                    // out = a * b^T
                    if self.rg(*a) {
                        Self::accumulate(grads, *a, matmul(g, vb, false, false)?);
                    }
                    if self.rg(*b) {
                        Self::accumulate(grads, *b, matmul(g, va, true, false)?);
                    }
                } else {
                    if self.rg(*a) {
                        Self::accumulate(grads, *a, matmul(g, vb, false, true)?);
                    }
                    if self.rg(*b) {
                        Self::accumulate(grads, *b, matmul(va, g, true, false)?);
                    }
                }
            }
            Op::GatherRows(x, indices) => {
                if self.rg(*x) {
                    let vx = self.value(*x);
                    let cols = vx.cols();
                    let mut d = Tensor::zeros(vx.shape());
                    for (r, &i) in indices.iter().enumerate() {
                        let src = &g.data()[r * cols..(r + 1) * cols];
                        let dst = &mut d.data_mut()[i * cols..(i + 1) * cols];
                        for (o, s) in dst.iter_mut().zip(src) {
                            *o += s;
                        }
                    }
                    Self::accumulate(grads, *x, d);
                }
            }
            Op::LogSoftmax(x) => {
                if self.rg(*x) {
                    let y = &node.value;
                    let cols = y.cols();
                    let mut d = g.clone();
                    for (row_g, row_y) in d.data_mut().chunks_mut(cols).zip(y.data().chunks(cols)) {
                        let s: f64 = row_g.iter().sum();
                        for (e, &ly) in row_g.iter_mut().zip(row_y) {
                            *e -= ly.exp() * s;
                        }
                    }
                    Self::accumulate(grads, *x, d);
                }
            }
            Op::Exp(x) => {
                if self.rg(*x) {
                    Self::accumulate(grads, *x, mul_elem(g, &node.value));
                }
            }
            Op::Log1p(x) => {
                if self.rg(*x) {
                    let vx = self.value(*x);
                    let data = g.data().iter().zip(vx.data()).map(|(&e, &v)| e / (1.0 + v)).collect();
                    Self::accumulate(grads, *x, Tensor::new(vx.shape(), data)?);
                }
            }
            Op::Sum(x) => {
                if self.rg(*x) {
                    Self::accumulate(grads, *x, Tensor::full(self.value(*x).shape(), g.item()));
                }
            }
            Op::Mean(x) => {
                if self.rg(*x) {
                    let vx = self.value(*x);
                    Self::accumulate(grads, *x, Tensor::full(vx.shape(), g.item() / vx.len() as f64));
                }
            }
            Op::MeanLastAxis(x) => {
                if self.rg(*x) {
                    let vx = self.value(*x);
                    let cols = vx.cols();
                    let mut d = Tensor::zeros(vx.shape());
                    for (i, e) in d.data_mut().iter_mut().enumerate() {
                        *e = g.data()[i / cols] / cols as f64;
                    }
                    Self::accumulate(grads, *x, d);
                }
            }
            Op::Reshape(x) => {
                if self.rg(*x) {
                    Self::accumulate(grads, *x, g.reshaped(self.value(*x).shape())?);
                }
            }
            Op::ConcatRows(parts) => {
                let cols = node.value.cols();
                let mut offset = 0;
                for &p in parts {
                    let rows = self.value(p).rows();
                    if self.rg(p) {
                        let slice = &g.data()[offset * cols..(offset + rows) * cols];
                        Self::accumulate(
                            grads,
                            p,
                            Tensor::new(&[rows, cols], slice.to_vec())?,
                        );
                    }
                    offset += rows;
                }
            }
            Op::MaskFill { x, mask } => {
                if self.rg(*x) {
                    let mut d = g.clone();
                    for (e, &m) in d.data_mut().iter_mut().zip(mask) {
                        if m {
                            *e = 0.0;
                        }
                    }
                    Self::accumulate(grads, *x, d);
                }
            }
        }
        Ok(())
    }
}

fn mul_elem(a: &Tensor, b: &Tensor) -> Tensor {
    debug_assert_eq!(a.shape(), b.shape());
    let mut out = a.clone();
    for (e, &v) in out.data_mut().iter_mut().zip(b.data()) {
        *e *= v;
    }
    out
}

fn shape_err(op: &'static str, a: &[usize], b: &[usize]) -> AutodiffError {
    AutodiffError::ShapeMismatch { op, detail: format!("incompatible shapes {:?} and {:?}", a, b) }
}

fn op_name(op: &Op) -> &'static str {
    match op {
        Op::Leaf => "leaf",
        Op::Detach(_) => "detach",
        Op::Add(..) => "add",
        Op::AddRow(..) => "add_row",
        Op::AddScalar(..) => "add_scalar",
        Op::Mul(..) => "mul",
        Op::MulRow(..) => "mul_row",
        Op::MulCol(..) => "mul_col",
        Op::Scale(..) => "scale",
        Op::MatMul { .. } => "matmul",
        Op::GatherRows(..) => "gather_rows",
        Op::LogSoftmax(_) => "log_softmax",
        Op::Exp(_) => "exp",
        Op::Log1p(_) => "log1p",
        Op::Sum(_) => "sum",
        Op::Mean(_) => "mean",
        Op::MeanLastAxis(_) => "mean_last_axis",
        Op::Reshape(_) => "reshape",
        Op::ConcatRows(_) => "concat_rows",
        Op::MaskFill { .. } => "mask_fill",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_leaf(g: &mut Graph, v: f64) -> Node {
        g.leaf(Tensor::scalar(v), true).unwrap()
    }

    #[test]
    fn square_gradient() {
        let mut g = Graph::new();
        let x = scalar_leaf(&mut g, 3.0);
        let y = g.mul(x, x).unwrap();
        let grads = g.backward(y).unwrap();
        assert_eq!(grads.get(x).unwrap().item(), 6.0);
    }

    #[test]
    fn detach_value_identity() {
        let mut g = Graph::new();
        let x = g.leaf(Tensor::new(&[2], vec![1.5, -2.0]).unwrap(), true).unwrap();
        let d = g.detach(x);
        assert_eq!(g.value(d).data(), g.value(x).data());
    }

    #[test]
    fn detach_blocks_gradient() {
        // d/dx [ detach(x) * x ] at x=3 is 3: only the live factor counts.
        let mut g = Graph::new();
        let x = scalar_leaf(&mut g, 3.0);
        let d = g.detach(x);
        let y = g.mul(d, x).unwrap();
        let grads = g.backward(y).unwrap();
        assert_eq!(grads.get(x).unwrap().item(), 3.0);
    }

    #[test]
    fn detach_is_idempotent() {
        let mut g = Graph::new();
        let x = scalar_leaf(&mut g, 2.5);
        let d1 = g.detach(x);
        let d2 = g.detach(d1);
        assert_eq!(g.value(d1).data(), g.value(d2).data());
        let y = g.mul(d2, x).unwrap();
        let grads = g.backward(y).unwrap();
        assert_eq!(grads.get(x).unwrap().item(), 2.5);
        assert!(grads.get(d1).is_none());
    }

    #[test]
    fn detached_slot_gets_exact_zero() {
        // f(a, b) = log(1 + exp(detach(a) - b)) at a=b=0:
        // df/da = 0 exactly, df/db = -0.5.
        let mut g = Graph::new();
        let a = scalar_leaf(&mut g, 0.0);
        let b = scalar_leaf(&mut g, 0.0);
        let da = g.detach(a);
        let diff = g.sub(da, b).unwrap();
        let e = g.exp(diff).unwrap();
        let f = g.log1p(e).unwrap();
        let grads = g.backward(f).unwrap();
        assert!(grads.get(a).is_none(), "detached input must receive no gradient at all");
        assert_eq!(grads.get_or_zeros(&g, a).item().to_bits(), 0.0_f64.to_bits());
        assert!((grads.get(b).unwrap().item() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn non_scalar_loss_rejected() {
        let mut g = Graph::new();
        let x = g.leaf(Tensor::new(&[2], vec![1.0, 2.0]).unwrap(), true).unwrap();
        assert!(matches!(g.backward(x), Err(AutodiffError::NonScalarLoss { .. })));
    }

    #[test]
    fn matmul_gradients_match_manual() {
        // f = sum(A * B), dA = ones * B^T, dB = A^T * ones.
        let mut g = Graph::new();
        let a = g.leaf(Tensor::new(&[2, 2], vec![1.0, 2.0, 3.0, 4.0]).unwrap(), true).unwrap();
        let b = g.leaf(Tensor::new(&[2, 2], vec![0.5, 0.3, 0.7, 0.1]).unwrap(), true).unwrap();
        let c = g.matmul(a, b).unwrap();
        let s = g.sum(c).unwrap();
        let grads = g.backward(s).unwrap();
        assert_eq!(grads.get(a).unwrap().data(), &[0.8, 0.8, 0.8, 0.8]);
        assert_eq!(grads.get(b).unwrap().data(), &[4.0, 4.0, 6.0, 6.0]);
    }

    #[test]
    fn gather_rows_scatters_gradient() {
        let mut g = Graph::new();
        let x = g
            .leaf(Tensor::new(&[3, 2], vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap(), true)
            .unwrap();
        let picked = g.gather_rows(x, &[2, 0, 2]).unwrap();
        assert_eq!(g.value(picked).data(), &[5.0, 6.0, 1.0, 2.0, 5.0, 6.0]);
        let s = g.sum(picked).unwrap();
        let grads = g.backward(s).unwrap();
        assert_eq!(grads.get(x).unwrap().data(), &[1.0, 1.0, 0.0, 0.0, 2.0, 2.0]);
    }

    #[test]
    fn mask_fill_zeroes_masked_gradient() {
        let mut g = Graph::new();
        let x = g.leaf(Tensor::new(&[4], vec![1.0, -2.0, 3.0, -4.0]).unwrap(), true).unwrap();
        let y = g.mask_fill(x, &[false, true, false, true], 9.0).unwrap();
        assert_eq!(g.value(y).data(), &[1.0, 9.0, 3.0, 9.0]);
        let s = g.sum(y).unwrap();
        let grads = g.backward(s).unwrap();
        assert_eq!(grads.get(x).unwrap().data(), &[1.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn backward_is_deterministic() {
        let build = || {
            let mut g = Graph::new();
            let x = g.leaf(Tensor::new(&[2, 2], vec![0.3, -1.2, 0.8, 0.05]).unwrap(), true).unwrap();
            let sq = g.mul(x, x).unwrap();
            let ls = g.log_softmax(sq).unwrap();
            let e = g.exp(ls).unwrap();
            let m = g.mean(e).unwrap();
            let grads = g.backward(m).unwrap();
            grads.get(x).unwrap().data().iter().map(|v| v.to_bits()).collect::<Vec<_>>()
        };
        assert_eq!(build(), build());
    }

    #[test]
    fn rsqrt_eps_matches_reference() {
        let mut g = Graph::new();
        let x = g.leaf(Tensor::new(&[3], vec![0.25, 1.0, 4.0]).unwrap(), true).unwrap();
        let y = g.rsqrt_eps(x, 0.0).unwrap();
        let got = g.value(y).data();
        for (got, want) in got.iter().zip([2.0, 1.0, 0.5]) {
            assert!((got - want).abs() < 1e-12);
        }
    }
}
