//! Effective resistance by dense Cholesky solves of the grounded Laplacian,
//! plus two-terminal splits of a network into subnetworks `A` and `B`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::netmodel::{Edge, EdgeId, Network, VertexId};

/// Resistance between `x` and `y` in the subnetwork made of `edges`, or `None`
/// if the edges do not connect them. Loops are ignored; parallel edges add
/// their conductances.
fn resistance_on<'a>(
    vertex_count: usize,
    edges: impl Iterator<Item = &'a Edge> + Clone,
    x: VertexId,
    y: VertexId,
) -> Option<f64> {
    let mut adj = vec![Vec::new(); vertex_count];
    for e in edges.clone().filter(|e| !e.is_loop()) {
        adj[e.u.0].push(e.v.0);
        adj[e.v.0].push(e.u.0);
    }
    // Only the component holding x matters; anything else would make the
    // reduced Laplacian singular.
    let mut slot = vec![usize::MAX; vertex_count];
    let mut order = vec![x.0];
    slot[x.0] = 0;
    let mut head = 0;
    while head < order.len() {
        let w = order[head];
        head += 1;
        for &z in &adj[w] {
            if slot[z] == usize::MAX {
                slot[z] = order.len();
                order.push(z);
            }
        }
    }
    if slot[y.0] == usize::MAX {
        return None;
    }

    // Ground y by swapping it into the last slot and dropping that row/column.
    let k = order.len();
    let last = order[k - 1];
    let ys = slot[y.0];
    order.swap(ys, k - 1);
    slot[last] = ys;
    slot[y.0] = k - 1;

    let dim = k - 1;
    let mut lap = DMatrix::<f64>::zeros(dim, dim);
    for e in edges.filter(|e| !e.is_loop()) {
        let (a, b) = (slot[e.u.0], slot[e.v.0]);
        if a == usize::MAX {
            continue;
        }
        let c = 1.0 / e.length;
        if a < dim {
            lap[(a, a)] += c;
        }
        if b < dim {
            lap[(b, b)] += c;
        }
        if a < dim && b < dim {
            lap[(a, b)] -= c;
            lap[(b, a)] -= c;
        }
    }
    let mut rhs = DVector::<f64>::zeros(dim);
    rhs[slot[x.0]] = 1.0;
    let potential = match lap.clone().cholesky() {
        Some(ch) => ch.solve(&rhs),
        None => lap.lu().solve(&rhs)?,
    };
    Some(potential[slot[x.0]])
}

pub fn effective_resistance(net: &Network, x: VertexId, y: VertexId) -> Result<f64> {
    net.check_vertex(x)?;
    net.check_vertex(y)?;
    if x == y {
        return Err(Error::SameVertex(x));
    }
    Ok(
        resistance_on(net.vertex_count(), net.edges().iter(), x, y)
            .expect("networks are connected"),
    )
}

/// Resistance between the endpoints of `edge` in the network with that edge
/// removed. Infinite for a bridge, zero for a loop.
pub fn resistance_without_edge(net: &Network, edge: EdgeId) -> Result<f64> {
    let e = *net.checked_edge(edge)?;
    if e.is_loop() {
        return Ok(0.0);
    }
    let rest = net.edges().iter().filter(|f| f.id != edge);
    Ok(resistance_on(net.vertex_count(), rest, e.u, e.v).unwrap_or(f64::INFINITY))
}

/// A partition of the edges into `A` and its complement `B` such that the
/// two sides share exactly the vertices `x` and `y`, and each side alone
/// connects them.
#[derive(Debug, Clone)]
pub struct SplitSpec<'n> {
    net: &'n Network,
    in_a: Vec<bool>,
    x: VertexId,
    y: VertexId,
    r_a: f64,
    r_b: f64,
}

impl<'n> SplitSpec<'n> {
    pub fn new(net: &'n Network, a_edges: &[EdgeId], x: VertexId, y: VertexId) -> Result<Self> {
        net.check_vertex(x)?;
        net.check_vertex(y)?;
        if x == y {
            return Err(Error::InvalidSplit(format!("terminals coincide at {x}")));
        }
        let mut in_a = vec![false; net.edge_count()];
        for &e in a_edges {
            net.checked_edge(e)?;
            in_a[e.0] = true;
        }
        let a_size = in_a.iter().filter(|&&b| b).count();
        if a_size == 0 {
            return Err(Error::InvalidSplit("A is empty".into()));
        }
        if a_size == net.edge_count() {
            return Err(Error::InvalidSplit("B is empty".into()));
        }

        let n = net.vertex_count();
        let mut touches_a = vec![false; n];
        let mut touches_b = vec![false; n];
        for e in net.edges() {
            let side = if in_a[e.id.0] {
                &mut touches_a
            } else {
                &mut touches_b
            };
            side[e.u.0] = true;
            side[e.v.0] = true;
        }
        for w in 0..n {
            let shared = touches_a[w] && touches_b[w];
            let terminal = w == x.0 || w == y.0;
            if shared && !terminal {
                return Err(Error::InvalidSplit(format!(
                    "A and B also meet at vertex {w}"
                )));
            }
        }

        let a_side = net.edges().iter().filter(|e| in_a[e.id.0]);
        let b_side = net.edges().iter().filter(|e| !in_a[e.id.0]);
        let r_a = resistance_on(n, a_side, x, y)
            .ok_or_else(|| Error::InvalidSplit(format!("A does not connect {x} to {y}")))?;
        let r_b = resistance_on(n, b_side, x, y)
            .ok_or_else(|| Error::InvalidSplit(format!("B does not connect {x} to {y}")))?;
        Ok(SplitSpec {
            net,
            in_a,
            x,
            y,
            r_a,
            r_b,
        })
    }

    /// `A` is the single non-loop edge `edge`, `B` everything else; terminals
    /// are its endpoints in stored order.
    pub fn single_edge(net: &'n Network, edge: EdgeId) -> Result<Self> {
        let e = *net.checked_edge(edge)?;
        SplitSpec::new(net, &[edge], e.u, e.v)
    }

    pub fn network(&self) -> &'n Network {
        self.net
    }

    pub fn x(&self) -> VertexId {
        self.x
    }

    pub fn y(&self) -> VertexId {
        self.y
    }

    pub fn in_a(&self, edge: EdgeId) -> bool {
        self.in_a[edge.0]
    }

    pub fn a_mask(&self) -> &[bool] {
        &self.in_a
    }

    /// Same partition with the roles of `x` and `y` exchanged.
    pub fn swapped(&self) -> SplitSpec<'n> {
        SplitSpec {
            x: self.y,
            y: self.x,
            ..self.clone()
        }
    }
}

/// `(R_A, R_B)`: resistance between the terminals in each side on its own.
pub fn split_resistances(spec: &SplitSpec<'_>) -> (f64, f64) {
    (spec.r_a, spec.r_b)
}

/// Probability that a walk from `x` first reaches `y` through `A`:
/// `C_A / (C_A + C_B)`, equivalently `R^{xy} / R_A`.
pub fn via_probability(spec: &SplitSpec<'_>) -> f64 {
    let (ca, cb) = (1.0 / spec.r_a, 1.0 / spec.r_b);
    ca / (ca + cb)
}
