//! Cover bounds over a batch of seeded random networks, written as CSV.

use std::io;

use edgecover::closedform::cover_bounds;
use edgecover::estimate::{compare, estimate, write_csv, ComparisonKind, Experiment, ReportRow};
use edgecover::generators::{random_network, RandomParams};
use edgecover::{StoppingRule, TimingModel, VertexId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let exp = Experiment::new(5_000, 9);
    let mut rows = Vec::new();
    for seed in 0..10 {
        let n = 3 + seed as usize % 6;
        let mut p = RandomParams::new(n, n - 1 + seed as usize % 5, seed);
        p.length_range = (0.2, 3.0);
        p.allow_loops = true;
        p.allow_parallel = true;
        let net = random_network(&p)?;
        let (_, arc_bound) = cover_bounds(&net);
        let r = estimate(
            &net,
            VertexId(0),
            &StoppingRule::ArcCoverReturn(VertexId(0)),
            TimingModel::LSquared,
            &exp,
        )?;
        rows.push(ReportRow::from(compare(
            r,
            arc_bound,
            ComparisonKind::UpperBound,
            3.0,
        )));
    }
    write_csv(&rows, io::stdout())?;
    Ok(())
}
