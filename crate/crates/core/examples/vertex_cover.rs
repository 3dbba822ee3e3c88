//! Vertex cover times on the unit path with 6 edges, from the middle and
//! from an end.

use edgecover::estimate::{estimate_vertex_cover, Experiment};
use edgecover::generators::unit_path;
use edgecover::{TimingModel, VertexId};

fn main() -> edgecover::Result<()> {
    let net = unit_path(6)?;
    let exp = Experiment::new(20_000, 2);
    for (name, root) in [("middle", VertexId(3)), ("end", VertexId(0))] {
        for with_return in [false, true] {
            let r = estimate_vertex_cover(&net, root, with_return, TimingModel::LSquared, &exp)?;
            println!(
                "from {name:>6}, return = {with_return:5}: {:.3} ± {:.3}",
                r.mean, r.stderr
            );
        }
    }
    Ok(())
}
