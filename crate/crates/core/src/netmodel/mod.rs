//! Immutable network model: a connected multigraph whose edges carry positive
//! lengths (read as resistances). Loops and parallel edges are first-class.
//!
//! Every edge yields two [`Arc`]s. For an ordinary edge the arcs are the two
//! directions; for a loop they are the two traversal senses. Conductance and
//! step statistics at a vertex are sums over the arcs leaving it, so a loop
//! is counted twice.

mod text;

use std::fmt;

pub use text::{parse_network, write_network, NetworkFile};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which way an arc runs along its edge. `Forward` goes from the edge's first
/// endpoint to its second; for a loop the two values name the two senses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// An oriented edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub edge: EdgeId,
    pub direction: Direction,
}

impl Arc {
    pub fn new(edge: EdgeId, direction: Direction) -> Self {
        Arc { edge, direction }
    }

    pub fn reversed(self) -> Self {
        Arc::new(self.edge, self.direction.reversed())
    }

    /// Dense index in `0..2 * edge_count`.
    pub fn index(self) -> usize {
        2 * self.edge.0
            + match self.direction {
                Direction::Forward => 0,
                Direction::Backward => 1,
            }
    }

    pub fn from_index(index: usize) -> Self {
        let direction = if index.is_multiple_of(2) {
            Direction::Forward
        } else {
            Direction::Backward
        };
        Arc::new(EdgeId(index / 2), direction)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.direction {
            Direction::Forward => '+',
            Direction::Backward => '-',
        };
        write!(f, "{}{}", self.edge.0, sign)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub length: f64,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn tail(&self, direction: Direction) -> VertexId {
        match direction {
            Direction::Forward => self.u,
            Direction::Backward => self.v,
        }
    }

    pub fn head(&self, direction: Direction) -> VertexId {
        match direction {
            Direction::Forward => self.v,
            Direction::Backward => self.u,
        }
    }

    /// The endpoint opposite `x`, or `None` if `x` is not an endpoint.
    pub fn other(&self, x: VertexId) -> Option<VertexId> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

/// One arc leaving a vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Incidence {
    pub arc: Arc,
    pub head: VertexId,
    pub length: f64,
}

/// A connected weighted multigraph. Construction validates everything; the
/// value is immutable afterwards.
#[derive(Debug, Clone)]
pub struct Network {
    vertex_count: usize,
    edges: Vec<Edge>,
    total_length: f64,
    incidences: Vec<Vec<Incidence>>,
    conductance: Vec<f64>,
}

impl PartialEq for Network {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.edges == other.edges
    }
}

impl Network {
    /// Builds a network from `(u, v, length)` triples. Edge ids follow list order.
    pub fn new(vertex_count: usize, edge_list: &[(usize, usize, f64)]) -> Result<Network> {
        if vertex_count == 0 {
            return Err(Error::EmptyNetwork);
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        for (index, &(u, v, length)) in edge_list.iter().enumerate() {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        count: vertex_count,
                    });
                }
            }
            if !(length > 0.0 && length.is_finite()) {
                return Err(Error::NonPositiveLength { index, length });
            }
            edges.push(Edge {
                id: EdgeId(index),
                u: VertexId(u),
                v: VertexId(v),
                length,
            });
        }

        let mut incidences = vec![Vec::new(); vertex_count];
        for e in &edges {
            for direction in [Direction::Forward, Direction::Backward] {
                incidences[e.tail(direction).0].push(Incidence {
                    arc: Arc::new(e.id, direction),
                    head: e.head(direction),
                    length: e.length,
                });
            }
        }

        let mut seen = vec![false; vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for inc in &incidences[x] {
                if !seen[inc.head.0] {
                    seen[inc.head.0] = true;
                    stack.push(inc.head.0);
                }
            }
        }
        if let Some(unreached) = seen.iter().position(|s| !s) {
            return Err(Error::DisconnectedNetwork(unreached));
        }

        let conductance = incidences
            .iter()
            .map(|incs| incs.iter().map(|i| 1.0 / i.length).sum())
            .collect();
        let total_length = edges.iter().map(|e| e.length).sum();
        Ok(Network {
            vertex_count,
            edges,
            total_length,
            incidences,
            conductance,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn arc_count(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn checked_edge(&self, id: EdgeId) -> Result<&Edge> {
        self.edges.get(id.0).ok_or(Error::EdgeOutOfRange {
            edge: id.0,
            count: self.edges.len(),
        })
    }

    /// Sum of all edge lengths (the network's `m`).
    pub fn total_length(&self) -> f64 {
        self.total_length
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count).map(VertexId)
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (0..self.arc_count()).map(Arc::from_index)
    }

    pub fn check_vertex(&self, x: VertexId) -> Result<()> {
        if x.0 < self.vertex_count {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: x.0,
                count: self.vertex_count,
            })
        }
    }

    /// Arcs leaving `x`, a loop contributing both of its senses.
    pub fn incidences(&self, x: VertexId) -> &[Incidence] {
        &self.incidences[x.0]
    }

    pub fn tail(&self, arc: Arc) -> VertexId {
        self.edge(arc.edge).tail(arc.direction)
    }

    pub fn head(&self, arc: Arc) -> VertexId {
        self.edge(arc.edge).head(arc.direction)
    }

    pub fn length(&self, arc: Arc) -> f64 {
        self.edge(arc.edge).length
    }

    /// `C_x`: the sum of `1/ℓ` over arcs leaving `x`.
    pub fn vertex_conductance(&self, x: VertexId) -> Result<f64> {
        self.check_vertex(x)?;
        Ok(self.conductance[x.0])
    }

    /// One-step law of the walk at `x`: each leaving arc with weight
    /// `(1/ℓ)/C_x`, in incidence order.
    pub fn transition_distribution(&self, x: VertexId) -> Result<Vec<(Arc, f64)>> {
        let c = self.vertex_conductance(x)?;
        Ok(self.incidences[x.0]
            .iter()
            .map(|inc| (inc.arc, (1.0 / inc.length) / c))
            .collect())
    }

    /// Same network with every length multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Network> {
        let list: Vec<_> = self
            .edges
            .iter()
            .map(|e| (e.u.0, e.v.0, e.length * factor))
            .collect();
        Network::new(self.vertex_count, &list)
    }

    pub fn edge_list(&self) -> Vec<(usize, usize, f64)> {
        self.edges
            .iter()
            .map(|e| (e.u.0, e.v.0, e.length))
            .collect()
    }
}

/// A choice of one arc per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    directions: Vec<Direction>,
}

impl Orientation {
    pub fn new(net: &Network, directions: Vec<Direction>) -> Result<Orientation> {
        if directions.len() != net.edge_count() {
            return Err(Error::InvalidRule(format!(
                "orientation covers {} edges, network has {}",
                directions.len(),
                net.edge_count()
            )));
        }
        Ok(Orientation { directions })
    }

    pub fn all_forward(net: &Network) -> Orientation {
        Orientation {
            directions: vec![Direction::Forward; net.edge_count()],
        }
    }

    pub fn random<R: rand::Rng + ?Sized>(net: &Network, rng: &mut R) -> Orientation {
        let directions = (0..net.edge_count())
            .map(|_| {
                if rng.gen::<bool>() {
                    Direction::Forward
                } else {
                    Direction::Backward
                }
            })
            .collect();
        Orientation { directions }
    }

    pub fn edge_count(&self) -> usize {
        self.directions.len()
    }

    pub fn arc(&self, edge: EdgeId) -> Arc {
        Arc::new(edge, self.directions[edge.0])
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn contains(&self, arc: Arc) -> bool {
        self.directions[arc.edge.0] == arc.direction
    }
}
