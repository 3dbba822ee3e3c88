//! Exact reference values computed without the library's solvers. Networks
//! are plain `(vertex_count, [(u, v, length)])` lists; arcs are
//! `(edge, forward)` with `forward` meaning u → v.

#![allow(dead_code)]

use std::collections::HashMap;
use std::hash::Hash;

pub type Edges = Vec<(usize, usize, f64)>;

/// Dense Gaussian elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        assert!(a[piv][col].abs() > 1e-14, "singular system");
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// Resistance by grounding `y` and solving the reduced Laplacian.
pub fn laplacian_resistance(n: usize, edges: &Edges, x: usize, y: usize) -> f64 {
    let idx: Vec<Option<usize>> = {
        let mut k = 0;
        (0..n)
            .map(|v| {
                if v == y {
                    None
                } else {
                    k += 1;
                    Some(k - 1)
                }
            })
            .collect()
    };
    let mut a = vec![vec![0.0; n - 1]; n - 1];
    for &(u, v, l) in edges {
        if u == v {
            continue;
        }
        let c = 1.0 / l;
        if let Some(i) = idx[u] {
            a[i][i] += c;
        }
        if let Some(j) = idx[v] {
            a[j][j] += c;
        }
        if let (Some(i), Some(j)) = (idx[u], idx[v]) {
            a[i][j] -= c;
            a[j][i] -= c;
        }
    }
    let mut b = vec![0.0; n - 1];
    b[idx[x].unwrap()] = 1.0;
    gauss_solve(a, b)[idx[x].unwrap()]
}

/// Series-parallel reduction between terminals `x` and `y`. Returns `None`
/// when the network does not reduce to a single edge.
pub fn series_parallel_resistance(edges: &Edges, x: usize, y: usize) -> Option<f64> {
    let mut list: Vec<(usize, usize, f64)> = edges.iter().copied().filter(|e| e.0 != e.1).collect();
    loop {
        if list.len() == 1 {
            let (u, v, l) = list[0];
            return ((u, v) == (x, y) || (u, v) == (y, x)).then_some(l);
        }
        // parallel
        let mut merged = false;
        'p: for i in 0..list.len() {
            for j in i + 1..list.len() {
                let (a, b) = (list[i], list[j]);
                if (a.0, a.1) == (b.0, b.1) || (a.0, a.1) == (b.1, b.0) {
                    list[i].2 = 1.0 / (1.0 / a.2 + 1.0 / b.2);
                    list.swap_remove(j);
                    merged = true;
                    break 'p;
                }
            }
        }
        if merged {
            continue;
        }
        let mut degree: HashMap<usize, Vec<usize>> = HashMap::new();
        for (k, &(u, v, _)) in list.iter().enumerate() {
            degree.entry(u).or_default().push(k);
            degree.entry(v).or_default().push(k);
        }
        let inner = degree
            .iter()
            .find(|(&w, ks)| w != x && w != y && ks.len() <= 2)
            .map(|(&w, ks)| (w, ks.clone()));
        match inner {
            Some((_, ks)) if ks.len() == 1 => {
                list.swap_remove(ks[0]);
            }
            Some((w, ks)) => {
                let (a, b) = (list[ks[0]], list[ks[1]]);
                let end = |e: (usize, usize, f64)| if e.0 == w { e.1 } else { e.0 };
                let joined = (end(a), end(b), a.2 + b.2);
                let (hi, lo) = (ks[0].max(ks[1]), ks[0].min(ks[1]));
                list.swap_remove(hi);
                list.swap_remove(lo);
                list.push(joined);
            }
            None => return None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Timing {
    Squared,
    Brownian,
}

/// One possible step from a vertex.
#[derive(Clone, Copy, Debug)]
pub struct Move {
    pub edge: usize,
    pub forward: bool,
    pub to: usize,
    pub prob: f64,
    pub cost: f64,
}

/// All moves out of each vertex with their probabilities and expected costs.
pub fn moves(n: usize, edges: &Edges, timing: Timing) -> Vec<Vec<Move>> {
    let mut out = vec![Vec::new(); n];
    for (k, &(u, v, l)) in edges.iter().enumerate() {
        out[u].push((k, true, v, l));
        out[v].push((k, false, u, l));
    }
    out.into_iter()
        .map(|arcs| {
            let c: f64 = arcs.iter().map(|a| 1.0 / a.3).sum();
            let total_len: f64 = arcs.iter().map(|a| a.3).sum();
            arcs.iter()
                .map(|&(edge, forward, to, l)| Move {
                    edge,
                    forward,
                    to,
                    prob: (1.0 / l) / c,
                    cost: match timing {
                        Timing::Squared => l * l,
                        Timing::Brownian => l * l / 3.0 + (2.0 / 3.0) * total_len / c,
                    },
                })
                .collect()
        })
        .collect()
}

/// Expected total cost until absorption for a chain whose states are
/// discovered from `start`. `step` lists `(prob, cost, next)` for a live state
/// and returns an empty list for an absorbing one.
pub fn absorbing_cost<S, F>(start: S, step: F) -> f64
where
    S: Clone + Eq + Hash,
    F: Fn(&S) -> Vec<(f64, f64, S)>,
{
    let mut index: HashMap<S, usize> = HashMap::new();
    let mut states = vec![start.clone()];
    index.insert(start, 0);
    let mut rows = Vec::new();
    let mut k = 0;
    while k < states.len() {
        let s = states[k].clone();
        let out = step(&s);
        let mut row = Vec::new();
        for (p, c, t) in out {
            let j = *index.entry(t.clone()).or_insert_with(|| {
                states.push(t);
                states.len() - 1
            });
            row.push((p, c, j));
        }
        rows.push(row);
        k += 1;
    }
    let n = states.len();
    let mut a = vec![vec![0.0; n]; n];
    let mut b = vec![0.0; n];
    for (i, row) in rows.iter().enumerate() {
        a[i][i] = 1.0;
        for &(p, c, j) in row {
            a[i][j] -= p;
            b[i] += p * c;
        }
    }
    gauss_solve(a, b)[0]
}

/// Expected time to reach `target` from `start`.
pub fn hitting_time(n: usize, edges: &Edges, start: usize, target: usize, timing: Timing) -> f64 {
    let mv = moves(n, edges, timing);
    absorbing_cost(start, |&w| {
        if w == target {
            return vec![];
        }
        mv[w].iter().map(|m| (m.prob, m.cost, m.to)).collect()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cover {
    Edges,
    Arcs,
    /// Arcs `(e, forward)` where `forward == orientation[e]`.
    Directed,
    Vertices {
        with_return: bool,
    },
}

/// Expected cover(-and-return) time by enumerating `(position, covered)`.
pub fn cover_time(
    n: usize,
    edges: &Edges,
    root: usize,
    cover: Cover,
    orientation: &[bool],
    timing: Timing,
) -> f64 {
    let mv = moves(n, edges, timing);
    let m = edges.len();
    let items = match cover {
        Cover::Edges | Cover::Directed => m,
        Cover::Arcs => 2 * m,
        Cover::Vertices { .. } => n,
    };
    let full: u64 = if items == 64 {
        u64::MAX
    } else {
        (1u64 << items) - 1
    };
    let start_mask = match cover {
        Cover::Vertices { .. } => 1u64 << root,
        _ => 0,
    };
    let needs_return = !matches!(cover, Cover::Vertices { with_return: false });
    absorbing_cost((root, start_mask), |&(w, mask)| {
        if mask == full && (!needs_return || w == root) {
            return vec![];
        }
        mv[w]
            .iter()
            .map(|mo| {
                let bit = match cover {
                    Cover::Edges => 1u64 << mo.edge,
                    Cover::Arcs => 1u64 << (2 * mo.edge + usize::from(!mo.forward)),
                    Cover::Directed => {
                        if mo.forward == orientation[mo.edge] {
                            1u64 << mo.edge
                        } else {
                            0
                        }
                    }
                    Cover::Vertices { .. } => 1u64 << mo.to,
                };
                (mo.prob, mo.cost, (mo.to, mask | bit))
            })
            .collect()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Refined {
    Either,
    Forward,
    Backward,
    Both,
}

/// Expected refined commute time from `x`, where `in_a[e]` marks side A.
/// State: position, heading to y?, current forward trip via A, and the
/// persistent flags used by `Both`.
pub fn refined_commute(
    n: usize,
    edges: &Edges,
    in_a: &[bool],
    x: usize,
    y: usize,
    kind: Refined,
    timing: Timing,
) -> f64 {
    let mv = moves(n, edges, timing);
    type St = (usize, bool, bool, bool, bool, bool);
    // (pos, to_y, fwd_via, seen_f, seen_b, done)
    absorbing_cost::<St, _>(
        (x, true, false, false, false, false),
        |&(w, to_y, fv, sf, sb, done)| {
            if done {
                return vec![];
            }
            mv[w]
                .iter()
                .map(|mo| {
                    let via = in_a[mo.edge];
                    let next = if to_y && mo.to == y {
                        (y, false, via, sf, sb, false)
                    } else if !to_y && mo.to == x {
                        let (sf2, sb2) = (sf || fv, sb || via);
                        let stop = match kind {
                            Refined::Either => fv || via,
                            Refined::Forward => fv,
                            Refined::Backward => via,
                            Refined::Both => sf2 && sb2,
                        };
                        (x, true, false, sf2, sb2, stop)
                    } else {
                        (mo.to, to_y, fv, sf, sb, false)
                    };
                    (mo.prob, mo.cost, next)
                })
                .collect()
        },
    )
}

/// Expected final epoch of the pacing process along `sigma` (a list of
/// `(edge, forward)` arcs from `root`). `vertex_type[i]` marks epochs that
/// only wait for the walker to be at the arc's head, counted at or after the
/// previous epoch.
pub fn epoch_final_mean(
    n: usize,
    edges: &Edges,
    root: usize,
    sigma: &[(usize, bool)],
    vertex_type: &[bool],
    timing: Timing,
) -> f64 {
    let mv = moves(n, edges, timing);
    let head = |&(e, f): &(usize, bool)| if f { edges[e].1 } else { edges[e].0 };
    let settle = |w: usize, mut i: usize| {
        while i < sigma.len() && vertex_type[i] && head(&sigma[i]) == w {
            i += 1;
        }
        i
    };
    absorbing_cost((root, settle(root, 0)), |&(w, i)| {
        if i == sigma.len() {
            return vec![];
        }
        mv[w]
            .iter()
            .map(|mo| {
                let j = if !vertex_type[i] && (mo.edge, mo.forward) == sigma[i] {
                    i + 1
                } else {
                    i
                };
                (mo.prob, mo.cost, (mo.to, settle(mo.to, j)))
            })
            .collect()
    })
}
