//! Named instances and seeded random networks, plus the compact `--gen`
//! spec syntax (`path:1,1,1`, `loop:2`, `tree:6`, `random:n=5,m=8,seed=4`).

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::netmodel::Network;

fn check_length(index: usize, length: f64) -> Result<()> {
    if length > 0.0 && length.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveLength { index, length })
    }
}

/// Path whose consecutive edges have the given lengths, starting at vertex 0.
pub fn path(edge_lengths: &[f64]) -> Result<Network> {
    if edge_lengths.is_empty() {
        return Err(Error::InfeasibleParameters(
            "a path needs at least one edge".into(),
        ));
    }
    let list: Vec<_> = edge_lengths
        .iter()
        .enumerate()
        .map(|(i, &l)| check_length(i, l).map(|_| (i, i + 1, l)))
        .collect::<Result<_>>()?;
    Network::new(edge_lengths.len() + 1, &list)
}

/// Path of `edges` unit edges, `P_{edges+1}`.
pub fn unit_path(edges: usize) -> Result<Network> {
    path(&vec![1.0; edges])
}

/// A single vertex carrying one loop.
pub fn loop_network(length: f64) -> Result<Network> {
    check_length(0, length)?;
    Network::new(1, &[(0, 0, length)])
}

/// Two vertices joined by an edge of length 1 and an edge of length 2.
pub fn parallel_pair() -> Network {
    Network::new(2, &[(0, 1, 1.0), (0, 1, 2.0)]).expect("valid")
}

/// Unit triangle with edges `01, 12, 20`.
pub fn triangle() -> Network {
    Network::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).expect("valid")
}

/// `k` unit edges from centre 0.
pub fn star(k: usize) -> Result<Network> {
    if k == 0 {
        return Err(Error::InfeasibleParameters(
            "a star needs at least one edge".into(),
        ));
    }
    let list: Vec<_> = (1..=k).map(|i| (0, i, 1.0)).collect();
    Network::new(k + 1, &list)
}

/// Complete binary tree of the given depth rooted at 0; the `2^k` edges at
/// level `k` (root edges are level 1) have length `4^{-k}`.
pub fn binary_tree(depth: u32) -> Result<Network> {
    if depth == 0 || depth > 24 {
        return Err(Error::InvalidDepth(depth));
    }
    let vertex_count = (1usize << (depth + 1)) - 1;
    let list: Vec<_> = (1..vertex_count)
        .map(|child| {
            let parent = (child - 1) / 2;
            let level = usize::BITS - (child + 1).leading_zeros() - 1;
            (parent, child, 0.25f64.powi(level as i32))
        })
        .collect();
    Network::new(vertex_count, &list)
}

/// Unit-length lollipop on `n` vertices: a clique on `⌈2n/3⌉` vertices with a
/// path on the remaining vertices hanging off clique vertex `⌈2n/3⌉ − 1`.
pub fn lollipop(n: usize) -> Result<Network> {
    if n < 4 {
        return Err(Error::TooSmall(n));
    }
    let k = (2 * n).div_ceil(3);
    let mut list = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            list.push((i, j, 1.0));
        }
    }
    for i in k..n {
        list.push((i - 1, i, 1.0));
    }
    Network::new(n, &list)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomParams {
    pub vertices: usize,
    pub edges: usize,
    pub length_range: (f64, f64),
    pub allow_loops: bool,
    pub allow_parallel: bool,
    pub seed: u64,
}

impl RandomParams {
    pub fn new(vertices: usize, edges: usize, seed: u64) -> RandomParams {
        RandomParams {
            vertices,
            edges,
            length_range: (1.0, 1.0),
            allow_loops: false,
            allow_parallel: false,
            seed,
        }
    }
}

/// Random connected network: a random spanning tree first, then extra edges
/// between uniformly chosen endpoints, lengths uniform in `length_range`.
pub fn random_network(p: &RandomParams) -> Result<Network> {
    let n = p.vertices;
    let infeasible = |m: String| Err(Error::InfeasibleParameters(m));
    if n == 0 {
        return infeasible("need at least one vertex".into());
    }
    if p.edges + 1 < n {
        return infeasible(format!("{} edges cannot connect {n} vertices", p.edges));
    }
    let (lo, hi) = p.length_range;
    if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
        return infeasible(format!("bad length range [{lo}, {hi}]"));
    }
    if !p.allow_parallel {
        let mut cap = n * (n - 1) / 2;
        if p.allow_loops {
            cap += n;
        }
        if p.edges > cap {
            return infeasible(format!(
                "{} edges exceed the {cap} available slots",
                p.edges
            ));
        }
    }
    if n == 1 && p.edges > 0 && !p.allow_loops {
        return infeasible("a single vertex can only carry loops".into());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let length = |rng: &mut ChaCha8Rng| if lo == hi { lo } else { rng.gen_range(lo..=hi) };
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(&mut rng);
    let mut list = Vec::with_capacity(p.edges);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let l = length(&mut rng);
        list.push((labels[j], labels[i], l));
    }
    let mut present = std::collections::HashSet::new();
    for &(u, v, _) in &list {
        present.insert((u.min(v), u.max(v)));
    }
    while list.len() < p.edges {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v && !p.allow_loops {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if !p.allow_parallel && !present.insert(key) {
            continue;
        }
        let l = length(&mut rng);
        list.push((u, v, l));
    }
    Network::new(n, &list)
}

/// Parsed `--gen` spec.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Path(Vec<f64>),
    UnitPath(usize),
    Loop(f64),
    ParallelPair,
    Triangle,
    Star(usize),
    Lollipop(usize),
    BinaryTree(u32),
    Random(RandomParams),
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Network> {
        match self {
            GeneratorSpec::Path(l) => path(l),
            GeneratorSpec::UnitPath(k) => unit_path(*k),
            GeneratorSpec::Loop(l) => loop_network(*l),
            GeneratorSpec::ParallelPair => Ok(parallel_pair()),
            GeneratorSpec::Triangle => Ok(triangle()),
            GeneratorSpec::Star(k) => star(*k),
            GeneratorSpec::Lollipop(n) => lollipop(*n),
            GeneratorSpec::BinaryTree(d) => binary_tree(*d),
            GeneratorSpec::Random(p) => random_network(p),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = |message: String| Error::BadGenerator {
            spec: spec.to_string(),
            message,
        };
        let (kind, args) = spec.split_once(':').unwrap_or((spec, ""));
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| bad(format!("`{s}` is not a number")))
        };
        let int = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| bad(format!("`{s}` is not a count")))
        };
        let need_args = || {
            if args.is_empty() {
                Err(bad(format!("`{kind}` needs a parameter")))
            } else {
                Ok(args)
            }
        };
        Ok(match kind {
            "path" => GeneratorSpec::Path(need_args()?.split(',').map(num).collect::<Result<_>>()?),
            "upath" => GeneratorSpec::UnitPath(int(need_args()?)?),
            "loop" => GeneratorSpec::Loop(if args.is_empty() { 1.0 } else { num(args)? }),
            "parallel_pair" => GeneratorSpec::ParallelPair,
            "triangle" => GeneratorSpec::Triangle,
            "star" => GeneratorSpec::Star(int(need_args()?)?),
            "lollipop" => GeneratorSpec::Lollipop(int(need_args()?)?),
            "tree" | "binary_tree" => GeneratorSpec::BinaryTree(int(need_args()?)? as u32),
            "random" => {
                let mut p = RandomParams::new(0, 0, 0);
                let mut edges = None;
                for kv in need_args()?.split(',') {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| bad(format!("expected key=value, got `{kv}`")))?;
                    match k.trim() {
                        "n" => p.vertices = int(v)?,
                        "m" => edges = Some(int(v)?),
                        "seed" => p.seed = int(v)? as u64,
                        "lo" => p.length_range.0 = num(v)?,
                        "hi" => p.length_range.1 = num(v)?,
                        "loops" => p.allow_loops = int(v)? != 0,
                        "parallel" => p.allow_parallel = int(v)? != 0,
                        other => return Err(bad(format!("unknown key `{other}`"))),
                    }
                }
                if p.vertices == 0 {
                    return Err(bad("missing n".into()));
                }
                p.edges = edges.unwrap_or(p.vertices - 1);
                GeneratorSpec::Random(p)
            }
            other => return Err(bad(format!("unknown generator `{other}`"))),
        })
    }
}
