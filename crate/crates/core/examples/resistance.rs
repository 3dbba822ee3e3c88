//! Effective resistances on a few small networks, and the split quantities
//! used by the refined commute formulas.

use edgecover::generators::{parallel_pair, triangle};
use edgecover::resistance::{
    effective_resistance, resistance_without_edge, split_resistances, via_probability,
};
use edgecover::{EdgeId, SplitSpec, VertexId};

fn main() -> edgecover::Result<()> {
    let tri = triangle();
    println!(
        "triangle R(0,1) = {:.6}",
        effective_resistance(&tri, VertexId(0), VertexId(1))?
    );
    println!(
        "triangle R(0,1) without edge 0 = {}",
        resistance_without_edge(&tri, EdgeId(0))?
    );

    let pp = parallel_pair();
    println!(
        "parallel pair R(0,1) = {:.6}",
        effective_resistance(&pp, VertexId(0), VertexId(1))?
    );
    let spec = SplitSpec::single_edge(&pp, EdgeId(0))?;
    let (ra, rb) = split_resistances(&spec);
    println!(
        "split on the unit edge: R_A = {ra:.6}, R_B = {rb:.6}, P(via A) = {:.6}",
        via_probability(&spec)
    );
    Ok(())
}
