//! Cover-and-return times on the extremal instances and on a random network,
//! each against its 2m² or 3m² bound.

use edgecover::closedform::cover_bounds;
use edgecover::estimate::{estimate, Experiment};
use edgecover::generators::{loop_network, random_network, unit_path, RandomParams};
use edgecover::{Network, Orientation, StoppingRule, TimingModel, VertexId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn show(name: &str, net: &Network, exp: &Experiment) -> edgecover::Result<()> {
    let root = VertexId(0);
    let (two, three) = cover_bounds(net);
    let orient = Orientation::random(net, &mut ChaCha8Rng::seed_from_u64(5));
    let rules = [
        ("edges", StoppingRule::EdgeCoverReturn(root), two),
        ("arcs", StoppingRule::ArcCoverReturn(root), three),
        (
            "directed",
            StoppingRule::DirectedCoverReturn(root, orient),
            two,
        ),
    ];
    for (label, rule, bound) in rules {
        let r = estimate(net, root, &rule, TimingModel::LSquared, exp)?;
        println!(
            "{name:>12} {label:>9}: {:9.4} ± {:.4}  (bound {bound:.4})",
            r.mean, r.stderr
        );
    }
    Ok(())
}

fn main() -> edgecover::Result<()> {
    let exp = Experiment::new(20_000, 7);
    show("unit path 6", &unit_path(6)?, &exp)?;
    show("unit loop", &loop_network(1.0)?, &exp)?;
    let mut p = RandomParams::new(6, 9, 11);
    p.length_range = (0.2, 3.0);
    p.allow_loops = true;
    p.allow_parallel = true;
    show("random", &random_network(&p)?, &exp)?;
    Ok(())
}
