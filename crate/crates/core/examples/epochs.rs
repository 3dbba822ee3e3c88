//! Pacing a random walk along a fixed double-cover walk σ. In directed mode
//! the last epoch averages 2m² whatever σ and the orientation are, and each
//! edge's two intervals average 2mℓ.

use edgecover::estimate::{trial_rng, Summary};
use edgecover::generators::triangle;
use edgecover::tours::{
    build_walk, directed_interval_mean, epoch_times, ordered_arc_epoch_mean,
    per_edge_interval_means, WalkConstruction,
};
use edgecover::walker::EpochMode;
use edgecover::{Orientation, TimingModel, VertexId};

fn main() -> edgecover::Result<()> {
    let net = triangle();
    let m = net.total_length();
    let orient = Orientation::new(
        &net,
        vec![
            edgecover::Direction::Forward,
            edgecover::Direction::Backward,
            edgecover::Direction::Forward,
        ],
    )?;
    for how in [WalkConstruction::DepthFirst, WalkConstruction::Euler] {
        let walk = build_walk(&net, VertexId(0), how)?;
        println!("σ ({how:?}): {}", walk.to_arc_list());
        let records = (0..20_000)
            .map(|t| {
                let mut rng = trial_rng(3, t);
                epoch_times(
                    &net,
                    &walk,
                    &EpochMode::Directed(orient.clone()),
                    TimingModel::LSquared,
                    &mut rng,
                )
            })
            .collect::<edgecover::Result<Vec<_>>>()?;
        let finals: Vec<f64> = records.iter().map(|r| r.final_time()).collect();
        let s = Summary::from_samples(&finals);
        println!(
            "  directed τ_final {:.4} ± {:.4} (2m² = {})",
            s.mean(),
            s.stderr(),
            2.0 * m * m
        );
        for (e, mean) in per_edge_interval_means(&records)?.iter().enumerate() {
            println!(
                "  edge {e}: {mean:.4} (2mℓ = {})",
                directed_interval_mean(&net, edgecover::EdgeId(e))
            );
        }
    }

    let walk = build_walk(&net, VertexId(0), WalkConstruction::DepthFirst)?;
    let finals = (0..20_000)
        .map(|t| {
            epoch_times(
                &net,
                &walk,
                &EpochMode::Arc,
                TimingModel::LSquared,
                &mut trial_rng(4, t),
            )
            .map(|r| r.final_time())
        })
        .collect::<edgecover::Result<Vec<_>>>()?;
    let s = Summary::from_samples(&finals);
    println!(
        "arc mode τ_final {:.4} ± {:.4} (exact {})",
        s.mean(),
        s.stderr(),
        ordered_arc_epoch_mean(&net)?
    );
    Ok(())
}
