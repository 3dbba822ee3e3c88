//! Parsing and writing the network text format, and the closed walk used by
//! the epoch process.

use edgecover::netmodel::{parse_network, write_network};
use edgecover::tours::construct_double_cover_walk;

const SQUARE: &str = "\
# a square with one diagonal
edge a b 1 fwd
edge b c 1 fwd
edge c d 2 bwd
edge d a 1 fwd
edge a c 0.5 fwd
";

fn main() -> edgecover::Result<()> {
    let file = parse_network(SQUARE)?;
    let net = &file.network;
    println!(
        "{} vertices, {} edges, m = {}",
        net.vertex_count(),
        net.edge_count(),
        net.total_length()
    );
    print!("{}", write_network(net, file.orientation.as_ref()));
    let root = file.vertex("a").expect("label a");
    println!(
        "σ from a: {}",
        construct_double_cover_walk(net, root)?.to_arc_list()
    );
    Ok(())
}
