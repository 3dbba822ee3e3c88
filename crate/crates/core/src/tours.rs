//! Closed walks that cross every edge once in each direction, and the epoch
//! process that paces a random walk along such a walk.
//!
//! Given a closed walk `σ = a_1 … a_{2|E|}` and a random walker started at its
//! root, epoch `τ_i` is the first time after `τ_{i-1}` that the walker has
//! crossed `a_i` (arc mode, or directed mode when `a_i` agrees with the
//! orientation), or merely stands at the head of `a_i` (directed mode, arc
//! against the orientation). Each edge owns two of the intervals
//! `[τ_{i-1}, τ_i]`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::estimate::Summary;
use crate::netmodel::{Arc, Direction, EdgeId, Network, VertexId};
use crate::resistance::{effective_resistance, resistance_without_edge};
use crate::walker::{EpochMode, StoppingRule, TimingModel, Walker};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedWalk {
    root: VertexId,
    arcs: Vec<Arc>,
}

impl ClosedWalk {
    pub fn new(net: &Network, root: VertexId, arcs: Vec<Arc>) -> Result<ClosedWalk> {
        let walk = ClosedWalk { root, arcs };
        walk.validate(net)?;
        Ok(walk)
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Checks incidence, closure at the root, and that the arcs are exactly
    /// the network's arcs, each once.
    pub fn validate(&self, net: &Network) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidWalk(m));
        net.check_vertex(self.root)?;
        if self.arcs.len() != net.arc_count() {
            return bad(format!(
                "{} arcs, expected {}",
                self.arcs.len(),
                net.arc_count()
            ));
        }
        let mut seen = vec![false; net.arc_count()];
        let mut at = self.root;
        for (i, &arc) in self.arcs.iter().enumerate() {
            if arc.edge.0 >= net.edge_count() {
                return bad(format!("arc {arc} at position {i} is not in the network"));
            }
            if net.tail(arc) != at {
                return bad(format!(
                    "arc {arc} at position {i} does not leave vertex {at}"
                ));
            }
            if std::mem::replace(&mut seen[arc.index()], true) {
                return bad(format!("arc {arc} repeated"));
            }
            at = net.head(arc);
        }
        if at != self.root {
            return bad(format!("walk ends at {at}, not at root {}", self.root));
        }
        Ok(())
    }

    /// Whitespace-separated arcs, `<edge>+` for forward and `<edge>-` for
    /// backward.
    pub fn to_arc_list(&self) -> String {
        self.arcs
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_arc_list(net: &Network, root: VertexId, text: &str) -> Result<ClosedWalk> {
        let arcs = text
            .split_whitespace()
            .map(|tok| {
                let (num, dir) = match tok.as_bytes().last() {
                    Some(b'+') => (&tok[..tok.len() - 1], Direction::Forward),
                    Some(b'-') => (&tok[..tok.len() - 1], Direction::Backward),
                    _ => return Err(Error::InvalidWalk(format!("bad arc token `{tok}`"))),
                };
                let edge = num
                    .parse()
                    .map_err(|_| Error::InvalidWalk(format!("bad arc token `{tok}`")))?;
                Ok(Arc::new(EdgeId(edge), dir))
            })
            .collect::<Result<Vec<_>>>()?;
        ClosedWalk::new(net, root, arcs)
    }
}

/// How to build the double-cover walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WalkConstruction {
    /// Depth-first spanning tree; each chord is crossed out and back at the
    /// first endpoint that scans it.
    DepthFirst,
    /// Hierholzer circuit of the digraph holding both arcs of every edge.
    Euler,
}

pub fn build_walk(net: &Network, root: VertexId, how: WalkConstruction) -> Result<ClosedWalk> {
    match how {
        WalkConstruction::DepthFirst => construct_double_cover_walk(net, root),
        WalkConstruction::Euler => euler_double_cover_walk(net, root),
    }
}

pub fn construct_double_cover_walk(net: &Network, root: VertexId) -> Result<ClosedWalk> {
    net.check_vertex(root)?;
    let mut visited = vec![false; net.vertex_count()];
    let mut used = vec![false; net.edge_count()];
    let mut arcs = Vec::with_capacity(net.arc_count());
    // (vertex, next incidence to scan, arc back to the parent)
    let mut stack: Vec<(VertexId, usize, Option<Arc>)> = vec![(root, 0, None)];
    visited[root.0] = true;
    while let Some(top) = stack.last_mut() {
        let u = top.0;
        let incs = net.incidences(u);
        if top.1 < incs.len() {
            let inc = incs[top.1];
            top.1 += 1;
            if std::mem::replace(&mut used[inc.arc.edge.0], true) {
                continue;
            }
            arcs.push(inc.arc);
            if visited[inc.head.0] {
                arcs.push(inc.arc.reversed());
            } else {
                visited[inc.head.0] = true;
                stack.push((inc.head, 0, Some(inc.arc.reversed())));
            }
        } else if let Some((_, _, Some(back))) = stack.pop() {
            arcs.push(back);
        }
    }
    ClosedWalk::new(net, root, arcs)
}

pub fn euler_double_cover_walk(net: &Network, root: VertexId) -> Result<ClosedWalk> {
    net.check_vertex(root)?;
    let mut next = vec![0usize; net.vertex_count()];
    let mut used = vec![false; net.arc_count()];
    let mut stack: Vec<(VertexId, Option<Arc>)> = vec![(root, None)];
    let mut circuit = Vec::with_capacity(net.arc_count());
    while let Some(&(u, _)) = stack.last() {
        let incs = net.incidences(u);
        while next[u.0] < incs.len() && used[incs[next[u.0]].arc.index()] {
            next[u.0] += 1;
        }
        if let Some(inc) = incs.get(next[u.0]) {
            used[inc.arc.index()] = true;
            stack.push((inc.head, Some(inc.arc)));
        } else if let Some((_, Some(arc))) = stack.pop() {
            circuit.push(arc);
        } else {
            break;
        }
    }
    circuit.reverse();
    ClosedWalk::new(net, root, circuit)
}

/// Epoch times of one simulated walk and the per-edge interval lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct EpochRecord {
    /// `τ_1 … τ_{2|E|}`.
    pub tau: Vec<f64>,
    /// For each edge, the lengths of its two intervals in walk order.
    pub intervals: Vec<[f64; 2]>,
    /// Whether the cover-and-return condition of the mode held at the last
    /// epoch.
    pub cover_verified: bool,
}

impl EpochRecord {
    pub(crate) fn from_taus(
        net: &Network,
        walk: &ClosedWalk,
        tau: Vec<f64>,
        covered: bool,
    ) -> Self {
        let mut intervals = vec![[0.0; 2]; net.edge_count()];
        let mut filled = vec![0usize; net.edge_count()];
        let mut prev = 0.0;
        for (arc, &t) in walk.arcs().iter().zip(&tau) {
            let e = arc.edge.0;
            intervals[e][filled[e]] = t - prev;
            filled[e] += 1;
            prev = t;
        }
        EpochRecord {
            tau,
            intervals,
            cover_verified: covered,
        }
    }

    pub fn final_time(&self) -> f64 {
        self.tau.last().copied().unwrap_or(0.0)
    }

    pub fn edge_interval_total(&self, edge: EdgeId) -> f64 {
        let [a, b] = self.intervals[edge.0];
        a + b
    }
}

/// Simulates one walk from the root of `walk` until its last epoch.
pub fn epoch_times<R: Rng + ?Sized>(
    net: &Network,
    walk: &ClosedWalk,
    mode: &EpochMode,
    model: TimingModel,
    rng: &mut R,
) -> Result<EpochRecord> {
    let rule = StoppingRule::EpochSequence {
        walk: walk.clone(),
        mode: mode.clone(),
    };
    let outcome = Walker::new(net, model).run(walk.root(), &rule, rng)?;
    Ok(outcome
        .epochs()
        .cloned()
        .expect("epoch rule records epochs"))
}

pub fn per_edge_interval_stats(records: &[EpochRecord]) -> Result<Vec<Summary>> {
    let first = records.first().ok_or(Error::EmptyInput)?;
    let mut stats = vec![Summary::default(); first.intervals.len()];
    for r in records {
        for (e, s) in stats.iter_mut().enumerate() {
            s.push(r.edge_interval_total(EdgeId(e)));
        }
    }
    Ok(stats)
}

/// Sample mean of `|I¹_e| + |I²_e|` for every edge.
pub fn per_edge_interval_means(records: &[EpochRecord]) -> Result<Vec<f64>> {
    Ok(per_edge_interval_stats(records)?
        .iter()
        .map(Summary::mean)
        .collect())
}

/// Expected directed-mode interval total for one edge: `2 m ℓ(e)`.
pub fn directed_interval_mean(net: &Network, edge: EdgeId) -> f64 {
    2.0 * net.total_length() * net.edge(edge).length
}

/// Per-edge `2mℓ(3ℓ+R_B)/(2ℓ+R_B)`, with `R_B` the resistance between the
/// edge's endpoints once the edge is removed (infinite for a bridge, zero for
/// a loop). This is the expected time of the first commute crossing the edge
/// in both directions, in either order.
pub fn both_ways_commute_mean(net: &Network, edge: EdgeId) -> Result<f64> {
    let m = net.total_length();
    let l = net.checked_edge(edge)?.length;
    let rb = resistance_without_edge(net, edge)?;
    Ok(if rb.is_infinite() {
        2.0 * m * l
    } else {
        2.0 * m * l * (3.0 * l + rb) / (2.0 * l + rb)
    })
}

/// Expected arc-mode interval total for one edge: `4 m ℓ(e) − 2 m R^{uv}`,
/// where `R^{uv}` is the full-network resistance between the endpoints (zero
/// for a loop). The two intervals wait for the two arcs in a fixed order, so
/// this exceeds [`both_ways_commute_mean`] whenever the edge lies on a cycle.
pub fn ordered_arc_interval_mean(net: &Network, edge: EdgeId) -> Result<f64> {
    let m = net.total_length();
    let e = *net.checked_edge(edge)?;
    let r = if e.is_loop() {
        0.0
    } else {
        effective_resistance(net, e.u, e.v)?
    };
    Ok(4.0 * m * e.length - 2.0 * m * r)
}

pub fn both_ways_commute_total(net: &Network) -> Result<f64> {
    net.edges()
        .iter()
        .map(|e| both_ways_commute_mean(net, e.id))
        .sum()
}

pub fn ordered_arc_epoch_mean(net: &Network) -> Result<f64> {
    net.edges()
        .iter()
        .map(|e| ordered_arc_interval_mean(net, e.id))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmodel::Orientation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(i: usize) -> VertexId {
        VertexId(i)
    }

    fn triangle() -> Network {
        Network::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap()
    }

    #[test]
    fn single_edge_walk() {
        let net = Network::new(2, &[(0, 1, 1.0)]).unwrap();
        let w = construct_double_cover_walk(&net, v(0)).unwrap();
        assert_eq!(w.to_arc_list(), "0+ 0-");
        let w = construct_double_cover_walk(&net, v(1)).unwrap();
        assert_eq!(w.to_arc_list(), "0- 0+");
    }

    #[test]
    fn triangle_walks_golden() {
        let net = triangle();
        let dfs = construct_double_cover_walk(&net, v(0)).unwrap();
        assert_eq!(dfs.to_arc_list(), "0+ 1+ 2+ 2- 1- 0-");
        let euler = euler_double_cover_walk(&net, v(0)).unwrap();
        assert_eq!(euler.to_arc_list(), "0+ 0- 2- 1- 1+ 2+");
        assert_ne!(dfs, euler);
        let back = ClosedWalk::parse_arc_list(&net, v(0), &dfs.to_arc_list()).unwrap();
        assert_eq!(back, dfs);
    }

    #[test]
    fn star_and_loops() {
        let star = Network::new(5, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (0, 4, 1.0)]).unwrap();
        for how in [WalkConstruction::DepthFirst, WalkConstruction::Euler] {
            assert_eq!(build_walk(&star, v(0), how).unwrap().len(), 8);
            assert_eq!(build_walk(&star, v(3), how).unwrap().len(), 8);
        }
        let messy = Network::new(
            3,
            &[
                (0, 0, 1.0),
                (0, 1, 2.0),
                (0, 1, 0.5),
                (1, 2, 1.0),
                (2, 2, 3.0),
                (2, 0, 1.0),
            ],
        )
        .unwrap();
        for how in [WalkConstruction::DepthFirst, WalkConstruction::Euler] {
            for r in 0..3 {
                build_walk(&messy, v(r), how).unwrap();
            }
        }
        let lone = Network::new(1, &[]).unwrap();
        assert!(construct_double_cover_walk(&lone, v(0)).unwrap().is_empty());
    }

    #[test]
    fn rejects_broken_walks() {
        let net = triangle();
        assert!(ClosedWalk::parse_arc_list(&net, v(0), "0+ 1+ 2+").is_err());
        assert!(ClosedWalk::parse_arc_list(&net, v(0), "0+ 0- 0+ 0- 1+ 1-").is_err());
        assert!(ClosedWalk::parse_arc_list(&net, v(0), "1+ 2+ 0+ 0- 2- 1-").is_err());
        assert!(ClosedWalk::parse_arc_list(&net, v(0), "0+ 1+ 2+ 2- 1- 0x").is_err());
    }

    #[test]
    fn unit_edge_epochs_are_forced() {
        let net = Network::new(2, &[(0, 1, 1.0)]).unwrap();
        let walk = construct_double_cover_walk(&net, v(0)).unwrap();
        let mode = EpochMode::Directed(Orientation::all_forward(&net));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = epoch_times(&net, &walk, &mode, TimingModel::LSquared, &mut rng).unwrap();
        assert_eq!(r.tau, vec![1.0, 2.0]);
        assert_eq!(r.intervals, vec![[1.0, 1.0]]);
        assert!(r.cover_verified);
    }

    #[test]
    fn intervals_partition_the_epoch_span() {
        let net = Network::new(3, &[(0, 1, 1.0), (1, 2, 0.5), (2, 0, 2.0), (1, 1, 0.3)]).unwrap();
        let walk = euler_double_cover_walk(&net, v(1)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for mode in [
            EpochMode::Arc,
            EpochMode::Directed(Orientation::random(&net, &mut rng)),
        ] {
            for _ in 0..50 {
                let r =
                    epoch_times(&net, &walk, &mode, TimingModel::BrownianMean, &mut rng).unwrap();
                let total: f64 = r.intervals.iter().map(|[a, b]| a + b).sum();
                assert!((total - r.final_time()).abs() < 1e-9);
                assert!(r.tau.windows(2).all(|w| w[0] <= w[1]));
                assert!(r.cover_verified);
            }
        }
    }

    #[test]
    fn arc_targets() {
        let net = triangle();
        // R_B = 2, ℓ = 1, m = 3
        assert!((both_ways_commute_total(&net).unwrap() - 22.5).abs() < 1e-12);
        // 4·3 − 2·3·(2/3) = 8 per edge
        assert!((ordered_arc_epoch_mean(&net).unwrap() - 24.0).abs() < 1e-12);
        let lp = Network::new(1, &[(0, 0, 1.0)]).unwrap();
        assert!((both_ways_commute_mean(&lp, EdgeId(0)).unwrap() - 3.0).abs() < 1e-12);
        assert!((ordered_arc_interval_mean(&lp, EdgeId(0)).unwrap() - 4.0).abs() < 1e-12);
        let path = Network::new(3, &[(0, 1, 1.0), (1, 2, 2.0)]).unwrap();
        assert!((both_ways_commute_total(&path).unwrap() - 18.0).abs() < 1e-12);
        assert!((ordered_arc_epoch_mean(&path).unwrap() - 18.0).abs() < 1e-12);
        assert_eq!(per_edge_interval_means(&[]), Err(Error::EmptyInput));
    }
}
