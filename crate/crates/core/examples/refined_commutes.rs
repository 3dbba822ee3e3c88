//! The four refined commute times across a split, exact and simulated, plus
//! the commute-counting view of the same walks.

use edgecover::closedform::refined_commutes;
use edgecover::estimate::{estimate_refined, run_trials_with, Experiment};
use edgecover::generators::triangle;
use edgecover::walker::RefinedKind;
use edgecover::{EdgeId, SplitSpec, StoppingRule, TimingModel};

fn main() -> edgecover::Result<()> {
    let net = triangle();
    let spec = SplitSpec::single_edge(&net, EdgeId(0))?;
    let exact = refined_commutes(&spec);
    println!("p_A = {:.4}, q = {:.4}", exact.p_a, exact.q);

    let exp = Experiment::new(100_000, 2);
    for kind in RefinedKind::ALL {
        let target = match kind {
            RefinedKind::Either => exact.t_either,
            RefinedKind::Forward => exact.t_forward,
            RefinedKind::Backward => exact.t_backward,
            RefinedKind::Both => exact.t_both,
        };
        let r = estimate_refined(&spec, kind, TimingModel::LSquared, &exp)?;
        println!(
            "{:>8}: exact {target:.4}, simulated {:.4} ± {:.4}",
            kind.name(),
            r.mean,
            r.stderr
        );
    }

    // average number of commutes the "both" walk needs
    let rule = StoppingRule::RefinedCommute {
        kind: RefinedKind::Both,
        spec: spec.clone(),
    };
    let counts = run_trials_with(&net, spec.x(), &rule, TimingModel::LSquared, &exp, |o| {
        o.commute_count().unwrap_or(0) as f64
    })?;
    let mean = counts.iter().sum::<f64>() / counts.len() as f64;
    println!(
        "mean commutes until both flags: {mean:.4} (exact {:.4})",
        exact.y_iii
    );
    Ok(())
}
