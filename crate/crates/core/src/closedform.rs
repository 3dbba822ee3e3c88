//! Exact expectations: commute identity, arc-cost commute identity, refined
//! commutes across a two-terminal split, cover-time bounds, and the
//! Brownian-model step times.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::netmodel::{Arc, EdgeId, Network, VertexId};
use crate::resistance::{effective_resistance, split_resistances, via_probability, SplitSpec};

/// Expected `x → y → x` commute time, `2 m R^{xy}`.
pub fn commute_time(net: &Network, x: VertexId, y: VertexId) -> Result<f64> {
    Ok(2.0 * net.total_length() * effective_resistance(net, x, y)?)
}

/// Expected total cost of a commute when traversing arc `a` costs `cost(a)`:
/// `F · R^{xy}` with `F = Σ_a cost(a) / ℓ(a)`.
pub fn weighted_cost_commute(
    net: &Network,
    cost: &HashMap<Arc, f64>,
    x: VertexId,
    y: VertexId,
) -> Result<f64> {
    let mut f = 0.0;
    for arc in net.arcs() {
        let c = cost
            .get(&arc)
            .ok_or_else(|| Error::MissingArcCost(arc.to_string()))?;
        f += c / net.length(arc);
    }
    Ok(f * effective_resistance(net, x, y)?)
}

/// Arc-cost map built from a function of the arc's length.
pub fn cost_by_length(net: &Network, f: impl Fn(f64) -> f64) -> HashMap<Arc, f64> {
    net.arcs().map(|a| (a, f(net.length(a)))).collect()
}

/// Expected times for the four refined commutes of a split, with the
/// per-commute probabilities and expected commute counts behind them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinedCommuteValues {
    /// First commute in which either trip goes through `A`.
    pub t_either: f64,
    /// First commute whose outbound trip goes through `A`.
    pub t_forward: f64,
    /// First commute whose return trip goes through `A`.
    pub t_backward: f64,
    /// First commute completion by which both directions have gone through `A`.
    pub t_both: f64,
    pub p_a: f64,
    /// Chance that a commute with at least one trip through `A` has only one.
    pub q: f64,
    pub y_i: f64,
    pub y_ii: f64,
    pub y_iii: f64,
}

pub fn refined_commutes(spec: &SplitSpec<'_>) -> RefinedCommuteValues {
    let m = spec.network().total_length();
    let (ra, rb) = split_resistances(spec);
    let p = via_probability(spec);
    let denom = 2.0 * ra + rb;
    let y_ii = 1.0 / p;
    let y_i = 1.0 / (p * (2.0 - p));
    let q = 2.0 * (1.0 - p) / (2.0 - p);
    RefinedCommuteValues {
        t_either: 2.0 * m * ra * (ra + rb) / denom,
        t_forward: 2.0 * m * ra,
        t_backward: 2.0 * m * ra,
        t_both: 2.0 * m * ra * (3.0 * ra + rb) / denom,
        p_a: p,
        q,
        y_i,
        y_ii,
        y_iii: y_i + q * y_ii,
    }
}

/// `(2m², 3m²)`: upper bounds on the expected edge and arc cover-and-return
/// times from any root.
pub fn cover_bounds(net: &Network) -> (f64, f64) {
    let m = net.total_length();
    (2.0 * m * m, 3.0 * m * m)
}

fn incident_length_sum(net: &Network, x: VertexId) -> f64 {
    net.incidences(x).iter().map(|i| i.length).sum()
}

fn nonempty_conductance(net: &Network, x: VertexId) -> Result<f64> {
    let c = net.vertex_conductance(x)?;
    if c == 0.0 {
        return Err(Error::Stuck(x));
    }
    Ok(c)
}

/// Expected duration of one step from `x`: `(1/C_x) Σ ℓ_i` over leaving arcs.
/// Identical in both timing models.
pub fn mean_step_time(net: &Network, x: VertexId) -> Result<f64> {
    let c = nonempty_conductance(net, x)?;
    Ok(incident_length_sum(net, x) / c)
}

/// Expected time a Brownian particle spends before its last departure from
/// `x` on the way to a neighbour: two thirds of the mean step time.
pub fn mean_predeparture_time(net: &Network, x: VertexId) -> Result<f64> {
    Ok(2.0 / 3.0 * mean_step_time(net, x)?)
}

/// Expected time for a Brownian particle at `x` to cross `edge`, given that
/// `edge` is the one it crosses: `ℓ²/3 + (2/3)(1/C_x) Σ ℓ_j`.
pub fn brownian_traversal_mean(net: &Network, x: VertexId, edge: EdgeId) -> Result<f64> {
    net.check_vertex(x)?;
    let e = net.checked_edge(edge)?;
    if e.other(x).is_none() {
        return Err(Error::EdgeNotIncident { vertex: x, edge });
    }
    Ok(half_excursion_mean(e.length)? + mean_predeparture_time(net, x)?)
}

/// Mean time from the last visit to 0 until the first visit to `length` for
/// standard Brownian motion on the half line: `ℓ²/3`.
pub fn half_excursion_mean(length: f64) -> Result<f64> {
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::NonPositiveLength { index: 0, length });
    }
    Ok(length * length / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> VertexId {
        VertexId(i)
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12 * (1.0 + b.abs())
    }

    fn pair() -> Network {
        Network::new(2, &[(0, 1, 1.0), (0, 1, 2.0)]).unwrap()
    }

    #[test]
    fn commute_values() {
        let path = Network::new(5, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0)]).unwrap();
        assert!(close(commute_time(&path, v(0), v(4)).unwrap(), 32.0));
        let e = Network::new(2, &[(0, 1, 2.0)]).unwrap();
        assert!(close(commute_time(&e, v(0), v(1)).unwrap(), 8.0));
        assert!(close(commute_time(&pair(), v(0), v(1)).unwrap(), 4.0));
    }

    #[test]
    fn weighted_costs() {
        let net = pair();
        let sq = cost_by_length(&net, |l| l * l);
        assert!(close(
            weighted_cost_commute(&net, &sq, v(0), v(1)).unwrap(),
            commute_time(&net, v(0), v(1)).unwrap()
        ));
        let zero = cost_by_length(&net, |_| 0.0);
        assert_eq!(weighted_cost_commute(&net, &zero, v(0), v(1)).unwrap(), 0.0);
        let lin = cost_by_length(&net, |l| l);
        assert!(close(
            weighted_cost_commute(&net, &lin, v(0), v(1)).unwrap(),
            2.0 * 2.0 * (2.0 / 3.0)
        ));
        let mut partial = sq.clone();
        partial.remove(&Arc::from_index(3));
        assert!(matches!(
            weighted_cost_commute(&net, &partial, v(0), v(1)),
            Err(Error::MissingArcCost(_))
        ));
    }

    #[test]
    fn refined_triangle() {
        let net = Network::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap();
        let spec = SplitSpec::single_edge(&net, EdgeId(0)).unwrap();
        let r = refined_commutes(&spec);
        assert!(close(r.t_forward, 6.0));
        assert!(close(r.t_backward, 6.0));
        assert!(close(r.t_either, 4.5));
        assert!(close(r.t_both, 7.5));
        assert!(close(r.p_a, 2.0 / 3.0));
        assert!(close(r.y_iii, 15.0 / 8.0));
        let two_m_r = 2.0 * 3.0 * (2.0 / 3.0);
        assert!(close(r.t_both, two_m_r * r.y_iii));
        assert!(close(r.t_either, two_m_r * r.y_i));
        assert!(close(r.t_forward, two_m_r * r.y_ii));
    }

    #[test]
    fn refined_large_rb_limit() {
        // A = unit x–y edge, B = a long detour
        let net = Network::new(3, &[(0, 1, 1.0), (0, 2, 500.0), (2, 1, 500.0)]).unwrap();
        let spec = SplitSpec::single_edge(&net, EdgeId(0)).unwrap();
        let r = refined_commutes(&spec);
        let base = 2.0 * net.total_length();
        for t in [r.t_either, r.t_forward, r.t_both] {
            assert!((t / base - 1.0).abs() < 2e-3);
        }
    }

    #[test]
    fn bounds() {
        let net = Network::new(2, &[(0, 1, 1.0), (0, 1, 2.0)]).unwrap();
        assert_eq!(cover_bounds(&net), (18.0, 27.0));
        let lp = Network::new(1, &[(0, 0, 1.0)]).unwrap();
        assert_eq!(cover_bounds(&lp), (2.0, 3.0));
    }

    #[test]
    fn step_times() {
        let net = pair();
        assert!(close(mean_step_time(&net, v(0)).unwrap(), 2.0));
        assert!(close(
            mean_predeparture_time(&net, v(0)).unwrap(),
            4.0 / 3.0
        ));
        let star = Network::new(4, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        assert!(close(mean_step_time(&star, v(0)).unwrap(), 1.0));
        assert!(close(
            mean_predeparture_time(&star, v(0)).unwrap(),
            2.0 / 3.0
        ));
        for m in [1.0, 2.5] {
            let lp = Network::new(1, &[(0, 0, m)]).unwrap();
            assert!(close(mean_step_time(&lp, v(0)).unwrap(), m * m));
        }
        let lp = Network::new(1, &[(0, 0, 1.0)]).unwrap();
        assert!(close(mean_predeparture_time(&lp, v(0)).unwrap(), 2.0 / 3.0));
        let lone = Network::new(1, &[]).unwrap();
        assert_eq!(mean_step_time(&lone, v(0)), Err(Error::Stuck(v(0))));
    }

    #[test]
    fn brownian_traversal() {
        let net = pair();
        assert!(close(
            brownian_traversal_mean(&net, v(0), EdgeId(0)).unwrap(),
            5.0 / 3.0
        ));
        assert!(close(
            brownian_traversal_mean(&net, v(1), EdgeId(1)).unwrap(),
            8.0 / 3.0
        ));
        let star = Network::new(4, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        assert!(close(
            brownian_traversal_mean(&star, v(0), EdgeId(2)).unwrap(),
            1.0
        ));
        assert_eq!(
            brownian_traversal_mean(&star, v(1), EdgeId(2)),
            Err(Error::EdgeNotIncident {
                vertex: v(1),
                edge: EdgeId(2)
            })
        );
    }

    #[test]
    fn half_excursion() {
        assert!(close(half_excursion_mean(1.0).unwrap(), 1.0 / 3.0));
        assert!(close(half_excursion_mean(2.0).unwrap(), 4.0 / 3.0));
        assert!(close(half_excursion_mean(3.0).unwrap(), 3.0));
        assert!(half_excursion_mean(0.0).is_err());
    }
}
