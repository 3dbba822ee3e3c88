//! The two timing models on the parallel pair: per-edge Brownian means, a
//! forced tour, and the edge cover-and-return time they share.

use edgecover::closedform::{brownian_traversal_mean, mean_step_time};
use edgecover::estimate::{estimate, Experiment};
use edgecover::exact::edge_cover_return_time;
use edgecover::generators::parallel_pair;
use edgecover::{Arc, Direction, EdgeId, StoppingRule, TimingModel, VertexId, Walker};

fn main() -> edgecover::Result<()> {
    let net = parallel_pair();
    let x = VertexId(0);
    for e in [EdgeId(0), EdgeId(1)] {
        println!(
            "Brownian mean across edge {} from x: {:.6}",
            e.0,
            brownian_traversal_mean(&net, x, e)?
        );
    }
    println!("mean step time at x: {:.6}", mean_step_time(&net, x)?);

    let tour = [
        Arc::new(EdgeId(0), Direction::Forward),
        Arc::new(EdgeId(1), Direction::Backward),
    ];
    let exp = Experiment::new(50_000, 1);
    for model in [TimingModel::LSquared, TimingModel::BrownianMean] {
        let forced = Walker::new(&net, model).charge_path(x, &tour)?;
        let exact = edge_cover_return_time(&net, x, model)?;
        let r = estimate(&net, x, &StoppingRule::EdgeCoverReturn(x), model, &exp)?;
        println!("{model}: forced tour {forced:.6}, cover-and-return exact {exact:.6}, simulated {:.4} ± {:.4}", r.mean, r.stderr);
    }
    Ok(())
}
