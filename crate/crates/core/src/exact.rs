//! Exact expected edge cover-and-return time for small networks.
//!
//! The walk state is `(position, covered edges)`. Covered sets only grow, so
//! the sets are solved from the full set downwards; for a fixed set the
//! unknowns are one expected remaining time per vertex, coupled only through
//! already-covered edges.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::netmodel::{Network, VertexId};
use crate::walker::{TimingModel, Walker};

pub const MAX_EXACT_EDGES: usize = 16;

pub fn edge_cover_return_time(net: &Network, root: VertexId, model: TimingModel) -> Result<f64> {
    net.check_vertex(root)?;
    let e = net.edge_count();
    if e > MAX_EXACT_EDGES {
        return Err(Error::TooLarge(format!(
            "{e} edges; the exact solver handles at most {MAX_EXACT_EDGES}"
        )));
    }
    let n = net.vertex_count();
    let walker = Walker::new(net, model);
    let full = (1usize << e) - 1;
    // remaining[mask * n + w]
    let mut remaining = vec![0.0; (full + 1) * n];

    for mask in (0..=full).rev() {
        let mut a = DMatrix::<f64>::identity(n, n);
        let mut b = DVector::<f64>::zeros(n);
        for w in net.vertices() {
            if mask == full && w == root {
                continue;
            }
            let c = net.vertex_conductance(w)?;
            for inc in net.incidences(w) {
                let p = (1.0 / inc.length) / c;
                b[w.0] += p * walker.arc_charge(inc.arc);
                let bit = 1usize << inc.arc.edge.0;
                if mask & bit != 0 {
                    a[(w.0, inc.head.0)] -= p;
                } else {
                    b[w.0] += p * remaining[(mask | bit) * n + inc.head.0];
                }
            }
        }
        let x = a
            .lu()
            .solve(&b)
            .ok_or_else(|| Error::TooLarge(format!("singular system for covered set {mask:#b}")))?;
        remaining[mask * n..(mask + 1) * n].copy_from_slice(x.as_slice());
    }
    Ok(remaining[root.0])
}
