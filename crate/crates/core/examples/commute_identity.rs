//! Simulated commute times against 2mR on a unit path and the parallel pair.

use edgecover::closedform::commute_time;
use edgecover::estimate::{verify, Check, Experiment};
use edgecover::generators::{parallel_pair, unit_path};
use edgecover::{TimingModel, VertexId};

fn main() -> edgecover::Result<()> {
    let exp = Experiment::new(100_000, 1);
    let cases = [
        ("unit path, 8 edges", unit_path(8)?, VertexId(8)),
        ("parallel pair", parallel_pair(), VertexId(1)),
    ];
    for (name, net, far) in cases {
        let target = commute_time(&net, VertexId(0), far)?;
        let v = verify(
            &net,
            &Check::Commute {
                x: VertexId(0),
                y: far,
            },
            TimingModel::LSquared,
            &exp,
            3.0,
        )?;
        println!(
            "{name}: 2mR = {target}, simulated {:.4} ± {:.4}, pass = {}",
            v.estimate.mean, v.estimate.stderr, v.pass
        );
    }
    Ok(())
}
