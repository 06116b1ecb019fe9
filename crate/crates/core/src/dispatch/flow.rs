//! Min-cost flow with arc gains, solved by successive shortest augmenting
//! paths.
//!
//! An arc carrying `f` units out of its tail delivers `gain * f` at its head
//! and costs `cost * f`. Node labels are the cost of landing one unit at the
//! node, so relaxing `u -> v` gives `(label[u] + cost) / gain`. With every
//! gain equal to one this is the textbook algorithm.
//!
//! Residual edge `2i` is arc `i` forward, `2i + 1` its reverse. Relaxation
//! scans edges in index order and only accepts strict improvements, so ties
//! go to the lowest edge index. Among equal-cost labels the one reached with
//! the larger cumulative gain wins, which keeps zero-cost energy off lossy
//! arcs when a lossless route is equally cheap.

const EPS: f64 = 1e-9;
const MAX_AUGMENTATIONS: usize = 100_000;

pub type NodeId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone)]
struct Arc {
    from: NodeId,
    to: NodeId,
    cap: f64,
    cost: f64,
    gain: f64,
    flow: f64,
}

#[derive(Debug, Clone, Copy)]
struct Edge {
    tail: NodeId,
    head: NodeId,
    residual: f64,
    cost: f64,
    gain: f64,
}

#[derive(Debug, Clone)]
pub struct GainNetwork {
    nodes: usize,
    arcs: Vec<Arc>,
}

fn tol(x: f64) -> f64 {
    1e-12 * x.abs().max(1.0)
}

impl GainNetwork {
    pub fn new(nodes: usize) -> Self {
        Self {
            nodes,
            arcs: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    /// Adds an arc; `cap` is measured at the tail.
    pub fn add_arc(&mut self, from: NodeId, to: NodeId, cap: f64, cost: f64, gain: f64) -> ArcId {
        assert!(from < self.nodes && to < self.nodes, "arc endpoint out of range");
        assert!(gain > 0.0, "gain must be positive");
        self.arcs.push(Arc {
            from,
            to,
            cap: cap.max(0.0),
            cost,
            gain,
            flow: 0.0,
        });
        self.arcs.len() - 1
    }

    /// Flow leaving the tail of `arc`.
    pub fn flow(&self, arc: ArcId) -> f64 {
        self.arcs[arc].flow
    }

    pub fn total_cost(&self) -> f64 {
        self.arcs.iter().map(|a| a.cost * a.flow).sum()
    }

    fn edge(&self, e: usize) -> Edge {
        let a = &self.arcs[e / 2];
        if e % 2 == 0 {
            Edge {
                tail: a.from,
                head: a.to,
                residual: a.cap - a.flow,
                cost: a.cost,
                gain: a.gain,
            }
        } else {
            Edge {
                tail: a.to,
                head: a.from,
                residual: a.flow * a.gain,
                cost: -a.cost / a.gain,
                gain: 1.0 / a.gain,
            }
        }
    }

    fn edges(&self) -> impl Iterator<Item = (usize, Edge)> + '_ {
        (0..2 * self.arcs.len()).map(|e| (e, self.edge(e)))
    }

    fn max_passes(&self) -> usize {
        16 * self.nodes + 16
    }

    /// Cheapest cost of landing one unit at each node, starting from
    /// `source` (which has unlimited supply at zero cost). Also returns the
    /// predecessor edge of each node.
    fn arrival_labels(&self, source: NodeId) -> (Vec<f64>, Vec<Option<usize>>) {
        let n = self.nodes;
        let mut label = vec![f64::INFINITY; n];
        let mut gain_to = vec![0.0; n];
        let mut pred = vec![None; n];
        label[source] = 0.0;
        gain_to[source] = 1.0;
        for _ in 0..self.max_passes() {
            let mut changed = false;
            for (e, edge) in self.edges() {
                if edge.residual <= EPS || edge.head == source || !label[edge.tail].is_finite() {
                    continue;
                }
                let cand = (label[edge.tail] + edge.cost) / edge.gain;
                let cand_gain = gain_to[edge.tail] * edge.gain;
                let current = label[edge.head];
                let better = if current.is_infinite() {
                    true
                } else {
                    let t = tol(current);
                    cand < current - t
                        || (cand <= current + t && cand_gain > gain_to[edge.head] * (1.0 + 1e-12))
                };
                if better {
                    label[edge.head] = cand;
                    gain_to[edge.head] = cand_gain;
                    pred[edge.head] = Some(e);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (label, pred)
    }

    /// Marginal cost of one more unit at each node.
    pub fn marginal_arrival_costs(&self, source: NodeId) -> Vec<f64> {
        self.arrival_labels(source).0
    }

    /// Cost of returning one unit from each node to `source` along residual
    /// edges; its negation is the saving from needing one unit less there.
    pub fn marginal_disposal_costs(&self, source: NodeId) -> Vec<f64> {
        let n = self.nodes;
        let mut label = vec![f64::INFINITY; n];
        label[source] = 0.0;
        for _ in 0..self.max_passes() {
            let mut changed = false;
            for (_, edge) in self.edges() {
                if edge.residual <= EPS || edge.tail == source || !label[edge.head].is_finite() {
                    continue;
                }
                let cand = edge.cost + edge.gain * label[edge.head];
                if cand < label[edge.tail] - tol(label[edge.tail].min(1e300)) {
                    label[edge.tail] = cand;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        label
    }

    fn trace(&self, source: NodeId, sink: NodeId, pred: &[Option<usize>]) -> Option<Vec<usize>> {
        let mut path = Vec::new();
        let mut seen = vec![false; self.nodes];
        let mut v = sink;
        while v != source {
            if seen[v] {
                return None;
            }
            seen[v] = true;
            let e = pred[v]?;
            path.push(e);
            v = self.edge(e).tail;
        }
        path.reverse();
        Some(path)
    }

    /// Augments along cheapest paths until `required` units have arrived at
    /// `sink` or no path remains. Returns the amount delivered to `sink`.
    pub fn deliver(&mut self, source: NodeId, sink: NodeId, required: f64) -> f64 {
        let mut delivered = 0.0;
        let scale = required.abs().max(1.0);
        for _ in 0..MAX_AUGMENTATIONS {
            let remaining = required - delivered;
            if remaining <= EPS * scale {
                break;
            }
            let (_, pred) = self.arrival_labels(source);
            let Some(path) = self.trace(source, sink, &pred) else {
                break;
            };
            let edges: Vec<Edge> = path.iter().map(|&e| self.edge(e)).collect();

            // units entering each edge per unit leaving the source
            let mut prefix = Vec::with_capacity(edges.len());
            let mut g = 1.0;
            for edge in &edges {
                prefix.push(g);
                g *= edge.gain;
            }
            let path_gain = g;
            let mut x = remaining / path_gain;
            for (edge, p) in edges.iter().zip(&prefix) {
                x = x.min(edge.residual / p);
            }
            if x <= 0.0 {
                break;
            }
            for (&e, p) in path.iter().zip(&prefix) {
                let entering = x * p;
                let arc = &mut self.arcs[e / 2];
                if e % 2 == 0 {
                    arc.flow += entering;
                } else {
                    arc.flow -= entering / arc.gain;
                }
                // snap round-off at the bounds
                if arc.flow < EPS * arc.cap.max(1.0) {
                    arc.flow = arc.flow.max(0.0);
                }
                if arc.flow > arc.cap {
                    arc.flow = arc.cap;
                }
            }
            delivered += x * path_gain;
        }
        delivered
    }
}
