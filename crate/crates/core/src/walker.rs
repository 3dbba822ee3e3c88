//! Jump-chain random walk. Each step picks a leaving arc with probability
//! proportional to `1/ℓ` and charges elapsed time according to a
//! [`TimingModel`]. A [`StoppingRule`] decides, from the steps so far, when
//! the walk ends.

use std::fmt;

use rand::Rng;

use crate::closedform::brownian_traversal_mean;
use crate::error::{Error, Result};
use crate::netmodel::{Arc, Network, Orientation, VertexId};
use crate::resistance::SplitSpec;
use crate::tours::{ClosedWalk, EpochRecord};

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TimingModel {
    /// Crossing an edge of length `ℓ` takes exactly `ℓ²`.
    LSquared,
    /// Crossing edge `e` from `x` takes the Brownian conditional mean
    /// `ℓ(e)²/3 + (2/3)(1/C_x) Σ ℓ`. Expectations of stopping times agree with
    /// true Brownian motion; individual paths do not.
    BrownianMean,
}

impl TimingModel {
    pub fn name(self) -> &'static str {
        match self {
            TimingModel::LSquared => "l2",
            TimingModel::BrownianMean => "brownian",
        }
    }
}

impl fmt::Display for TimingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkEvent {
    pub step_index: u64,
    pub arc: Arc,
    pub arrival: VertexId,
    pub elapsed: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RefinedKind {
    Either,
    Forward,
    Backward,
    Both,
}

impl RefinedKind {
    pub const ALL: [RefinedKind; 4] = [
        RefinedKind::Either,
        RefinedKind::Forward,
        RefinedKind::Backward,
        RefinedKind::Both,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RefinedKind::Either => "either",
            RefinedKind::Forward => "forward",
            RefinedKind::Backward => "backward",
            RefinedKind::Both => "both",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpochMode {
    /// Arcs of the closed walk that agree with the orientation must be
    /// traversed; the others only require reaching their head.
    Directed(Orientation),
    /// Every arc of the closed walk must be traversed.
    Arc,
}

#[derive(Debug, Clone)]
pub enum StoppingRule<'n> {
    FirstPassage(VertexId),
    Commute {
        x: VertexId,
        y: VertexId,
    },
    RefinedCommute {
        kind: RefinedKind,
        spec: SplitSpec<'n>,
    },
    EdgeCoverReturn(VertexId),
    ArcCoverReturn(VertexId),
    DirectedCoverReturn(VertexId, Orientation),
    VertexCover {
        root: VertexId,
        with_return: bool,
    },
    EpochSequence {
        walk: ClosedWalk,
        mode: EpochMode,
    },
}

impl StoppingRule<'_> {
    /// Vertex the walk must start from, if the rule fixes one.
    pub fn required_start(&self) -> Option<VertexId> {
        match self {
            StoppingRule::FirstPassage(_) => None,
            StoppingRule::Commute { x, .. } => Some(*x),
            StoppingRule::RefinedCommute { spec, .. } => Some(spec.x()),
            StoppingRule::EdgeCoverReturn(r)
            | StoppingRule::ArcCoverReturn(r)
            | StoppingRule::DirectedCoverReturn(r, _)
            | StoppingRule::VertexCover { root: r, .. } => Some(*r),
            StoppingRule::EpochSequence { walk, .. } => Some(walk.root()),
        }
    }

    /// Short label used in reports.
    pub fn describe(&self) -> String {
        match self {
            StoppingRule::FirstPassage(t) => format!("first_passage({t})"),
            StoppingRule::Commute { x, y } => format!("commute({x};{y})"),
            StoppingRule::RefinedCommute { kind, spec } => {
                format!("refined_{}({};{})", kind.name(), spec.x(), spec.y())
            }
            StoppingRule::EdgeCoverReturn(r) => format!("edge_cover_return({r})"),
            StoppingRule::ArcCoverReturn(r) => format!("arc_cover_return({r})"),
            StoppingRule::DirectedCoverReturn(r, _) => format!("directed_cover_return({r})"),
            StoppingRule::VertexCover { root, with_return } => {
                if *with_return {
                    format!("vertex_cover_return({root})")
                } else {
                    format!("vertex_cover({root})")
                }
            }
            StoppingRule::EpochSequence { walk, mode } => {
                let m = match mode {
                    EpochMode::Directed(_) => "directed",
                    EpochMode::Arc => "arc",
                };
                format!("epochs_{m}({})", walk.root())
            }
        }
    }

    fn check(&self, net: &Network) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidRule(m));
        match self {
            StoppingRule::FirstPassage(t) => net.check_vertex(*t),
            StoppingRule::Commute { x, y } => {
                net.check_vertex(*x)?;
                net.check_vertex(*y)?;
                if x == y {
                    return Err(Error::SameVertex(*x));
                }
                Ok(())
            }
            StoppingRule::RefinedCommute { spec, .. } => {
                if !std::ptr::eq(spec.network(), net) && spec.network() != net {
                    return bad("split belongs to a different network".into());
                }
                Ok(())
            }
            StoppingRule::EdgeCoverReturn(r)
            | StoppingRule::ArcCoverReturn(r)
            | StoppingRule::VertexCover { root: r, .. } => net.check_vertex(*r),
            StoppingRule::DirectedCoverReturn(r, o) => {
                net.check_vertex(*r)?;
                if o.edge_count() != net.edge_count() {
                    return bad("orientation does not match the network".into());
                }
                Ok(())
            }
            StoppingRule::EpochSequence { walk, mode } => {
                walk.validate(net)?;
                if let EpochMode::Directed(o) = mode {
                    if o.edge_count() != net.edge_count() {
                        return bad("orientation does not match the network".into());
                    }
                }
                Ok(())
            }
        }
    }
}

/// Outbound and return trip of one elementary `x → y → x` commute, flagged by
/// whether the arc that completed each trip lies in `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommuteTrip {
    pub forward_via_a: bool,
    pub backward_via_a: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Auxiliary {
    None,
    Commutes(Vec<CommuteTrip>),
    Epochs(EpochRecord),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkOutcome {
    pub stop_time: f64,
    pub step_count: u64,
    pub auxiliary: Auxiliary,
}

impl WalkOutcome {
    /// Number of elementary commutes performed, for commute-type rules.
    pub fn commute_count(&self) -> Option<usize> {
        match &self.auxiliary {
            Auxiliary::Commutes(trips) => Some(trips.len()),
            _ => None,
        }
    }

    pub fn epochs(&self) -> Option<&EpochRecord> {
        match &self.auxiliary {
            Auxiliary::Epochs(r) => Some(r),
            _ => None,
        }
    }
}

/// Splits a walk from `x` into elementary commutes as arrivals come in.
#[derive(Debug, Clone)]
struct CommuteSplitter<'a> {
    x: VertexId,
    y: VertexId,
    in_a: Option<&'a [bool]>,
    outbound: bool,
    forward_via_a: bool,
}

impl<'a> CommuteSplitter<'a> {
    fn new(x: VertexId, y: VertexId, in_a: Option<&'a [bool]>) -> Self {
        CommuteSplitter {
            x,
            y,
            in_a,
            outbound: true,
            forward_via_a: false,
        }
    }

    fn via_a(&self, arc: Arc) -> bool {
        self.in_a.is_some_and(|m| m[arc.edge.0])
    }

    /// Returns the finished trip when `arc` completes a commute.
    fn arrive(&mut self, arc: Arc, at: VertexId) -> Option<CommuteTrip> {
        if self.outbound && at == self.y {
            self.outbound = false;
            self.forward_via_a = self.via_a(arc);
            None
        } else if !self.outbound && at == self.x {
            self.outbound = true;
            Some(CommuteTrip {
                forward_via_a: self.forward_via_a,
                backward_via_a: self.via_a(arc),
            })
        } else {
            None
        }
    }
}

/// Cuts a recorded walk that starts at `spec.x()` into elementary commutes
/// and flags each trip by whether it reached its target through `A`.
/// Because `A` and `B` meet only at the terminals, a trip goes through `A`
/// exactly when its final arc is an `A` edge.
pub fn commute_trips<'e>(
    events: impl IntoIterator<Item = &'e WalkEvent>,
    spec: &SplitSpec<'_>,
) -> Vec<CommuteTrip> {
    let mut splitter = CommuteSplitter::new(spec.x(), spec.y(), Some(spec.a_mask()));
    events
        .into_iter()
        .filter_map(|ev| splitter.arrive(ev.arc, ev.arrival))
        .collect()
}

enum CoverKey<'r> {
    Edge,
    Arc,
    Directed(&'r Orientation),
}

enum Tracker<'r> {
    FirstPassage(VertexId),
    Commute {
        splitter: CommuteSplitter<'r>,
    },
    Refined {
        kind: RefinedKind,
        splitter: CommuteSplitter<'r>,
        seen_forward: bool,
        seen_backward: bool,
        trips: Vec<CommuteTrip>,
    },
    Cover {
        root: VertexId,
        key: CoverKey<'r>,
        covered: Vec<bool>,
        remaining: usize,
    },
    Vertices {
        root: VertexId,
        with_return: bool,
        visited: Vec<bool>,
        remaining: usize,
    },
    Epochs {
        walk: &'r ClosedWalk,
        /// Per walk index: `true` if the epoch needs that exact arc,
        /// `false` if arriving at its head suffices.
        needs_arc: Vec<bool>,
        heads: Vec<VertexId>,
        index: usize,
        tau: Vec<f64>,
        traversed: Vec<bool>,
    },
}

impl<'r> Tracker<'r> {
    fn new(net: &Network, rule: &'r StoppingRule<'_>, start: VertexId) -> Tracker<'r> {
        match rule {
            StoppingRule::FirstPassage(t) => Tracker::FirstPassage(*t),
            StoppingRule::Commute { x, y } => Tracker::Commute {
                splitter: CommuteSplitter::new(*x, *y, None),
            },
            StoppingRule::RefinedCommute { kind, spec } => Tracker::Refined {
                kind: *kind,
                splitter: CommuteSplitter::new(spec.x(), spec.y(), Some(spec.a_mask())),
                seen_forward: false,
                seen_backward: false,
                trips: Vec::new(),
            },
            StoppingRule::EdgeCoverReturn(r) => Tracker::Cover {
                root: *r,
                key: CoverKey::Edge,
                covered: vec![false; net.edge_count()],
                remaining: net.edge_count(),
            },
            StoppingRule::ArcCoverReturn(r) => Tracker::Cover {
                root: *r,
                key: CoverKey::Arc,
                covered: vec![false; net.arc_count()],
                remaining: net.arc_count(),
            },
            StoppingRule::DirectedCoverReturn(r, o) => Tracker::Cover {
                root: *r,
                key: CoverKey::Directed(o),
                covered: vec![false; net.edge_count()],
                remaining: net.edge_count(),
            },
            StoppingRule::VertexCover { root, with_return } => {
                let mut visited = vec![false; net.vertex_count()];
                visited[start.0] = true;
                Tracker::Vertices {
                    root: *root,
                    with_return: *with_return,
                    visited,
                    remaining: net.vertex_count() - 1,
                }
            }
            StoppingRule::EpochSequence { walk, mode } => {
                let needs_arc = walk
                    .arcs()
                    .iter()
                    .map(|&a| match mode {
                        EpochMode::Arc => true,
                        EpochMode::Directed(o) => o.contains(a),
                    })
                    .collect();
                let heads = walk.arcs().iter().map(|&a| net.head(a)).collect();
                Tracker::Epochs {
                    walk,
                    needs_arc,
                    heads,
                    index: 0,
                    tau: Vec::with_capacity(walk.len()),
                    traversed: vec![false; net.arc_count()],
                }
            }
        }
    }

    /// Fires epochs that only need the walker to be where it already is.
    fn settle_epochs(
        at: VertexId,
        now: f64,
        needs_arc: &[bool],
        heads: &[VertexId],
        index: &mut usize,
        tau: &mut Vec<f64>,
    ) {
        while *index < needs_arc.len() && !needs_arc[*index] && heads[*index] == at {
            tau.push(now);
            *index += 1;
        }
    }

    fn done_at_start(&mut self, start: VertexId) -> bool {
        match self {
            Tracker::FirstPassage(t) => *t == start,
            Tracker::Commute { .. } | Tracker::Refined { .. } => false,
            Tracker::Cover {
                root, remaining, ..
            } => *remaining == 0 && start == *root,
            Tracker::Vertices {
                root,
                with_return,
                remaining,
                ..
            } => *remaining == 0 && (!*with_return || start == *root),
            Tracker::Epochs {
                needs_arc,
                heads,
                index,
                tau,
                ..
            } => {
                Self::settle_epochs(start, 0.0, needs_arc, heads, index, tau);
                *index == needs_arc.len()
            }
        }
    }

    fn advance(&mut self, arc: Arc, at: VertexId, now: f64) -> bool {
        match self {
            Tracker::FirstPassage(t) => at == *t,
            Tracker::Commute { splitter } => splitter.arrive(arc, at).is_some(),
            Tracker::Refined {
                kind,
                splitter,
                seen_forward,
                seen_backward,
                trips,
            } => {
                let Some(trip) = splitter.arrive(arc, at) else {
                    return false;
                };
                trips.push(trip);
                *seen_forward |= trip.forward_via_a;
                *seen_backward |= trip.backward_via_a;
                match kind {
                    RefinedKind::Either => trip.forward_via_a || trip.backward_via_a,
                    RefinedKind::Forward => trip.forward_via_a,
                    RefinedKind::Backward => trip.backward_via_a,
                    RefinedKind::Both => *seen_forward && *seen_backward,
                }
            }
            Tracker::Cover {
                root,
                key,
                covered,
                remaining,
            } => {
                let slot = match key {
                    CoverKey::Edge => Some(arc.edge.0),
                    CoverKey::Arc => Some(arc.index()),
                    CoverKey::Directed(o) => o.contains(arc).then_some(arc.edge.0),
                };
                if let Some(s) = slot {
                    if !covered[s] {
                        covered[s] = true;
                        *remaining -= 1;
                    }
                }
                *remaining == 0 && at == *root
            }
            Tracker::Vertices {
                root,
                with_return,
                visited,
                remaining,
            } => {
                if !visited[at.0] {
                    visited[at.0] = true;
                    *remaining -= 1;
                }
                *remaining == 0 && (!*with_return || at == *root)
            }
            Tracker::Epochs {
                walk,
                needs_arc,
                heads,
                index,
                tau,
                traversed,
            } => {
                traversed[arc.index()] = true;
                if *index < needs_arc.len() && needs_arc[*index] && walk.arcs()[*index] == arc {
                    tau.push(now);
                    *index += 1;
                }
                Self::settle_epochs(at, now, needs_arc, heads, index, tau);
                *index == needs_arc.len()
            }
        }
    }

    fn finish(self, net: &Network, mode: Option<&EpochMode>) -> Auxiliary {
        match self {
            Tracker::Refined { trips, .. } => Auxiliary::Commutes(trips),
            Tracker::Commute { .. } => Auxiliary::Commutes(vec![CommuteTrip {
                forward_via_a: false,
                backward_via_a: false,
            }]),
            Tracker::Epochs {
                walk,
                tau,
                traversed,
                ..
            } => {
                let covered = match mode {
                    Some(EpochMode::Directed(o)) => {
                        net.edges().iter().all(|e| traversed[o.arc(e.id).index()])
                    }
                    _ => traversed.iter().all(|&t| t),
                };
                Auxiliary::Epochs(EpochRecord::from_taus(net, walk, tau, covered))
            }
            _ => Auxiliary::None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Choice {
    cumulative: f64,
    arc: Arc,
    head: VertexId,
    charge: f64,
}

/// One sampled move.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub arc: Arc,
    pub next: VertexId,
    pub charge: f64,
}

/// Precomputed sampling tables for one network and timing model.
#[derive(Debug, Clone)]
pub struct Walker<'n> {
    net: &'n Network,
    model: TimingModel,
    table: Vec<Vec<Choice>>,
    step_budget: u64,
}

impl<'n> Walker<'n> {
    pub fn new(net: &'n Network, model: TimingModel) -> Walker<'n> {
        let table = net
            .vertices()
            .map(|x| {
                let c = net.vertex_conductance(x).unwrap();
                let mut acc = 0.0;
                let mut choices: Vec<Choice> = net
                    .incidences(x)
                    .iter()
                    .map(|inc| {
                        acc += (1.0 / inc.length) / c;
                        let charge = match model {
                            TimingModel::LSquared => inc.length * inc.length,
                            TimingModel::BrownianMean => {
                                brownian_traversal_mean(net, x, inc.arc.edge).unwrap()
                            }
                        };
                        Choice {
                            cumulative: acc,
                            arc: inc.arc,
                            head: inc.head,
                            charge,
                        }
                    })
                    .collect();
                if let Some(last) = choices.last_mut() {
                    last.cumulative = 1.0;
                }
                choices
            })
            .collect();
        Walker {
            net,
            model,
            table,
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }

    pub fn with_step_budget(mut self, budget: u64) -> Self {
        self.step_budget = budget;
        self
    }

    pub fn network(&self) -> &'n Network {
        self.net
    }

    pub fn model(&self) -> TimingModel {
        self.model
    }

    /// Time charged for crossing `arc` from its tail.
    pub fn arc_charge(&self, arc: Arc) -> f64 {
        let tail = self.net.tail(arc);
        self.table[tail.0]
            .iter()
            .find(|c| c.arc == arc)
            .map(|c| c.charge)
            .expect("every arc appears at its tail")
    }

    pub fn step<R: Rng + ?Sized>(&self, at: VertexId, rng: &mut R) -> Result<Step> {
        self.net.check_vertex(at)?;
        let choices = &self.table[at.0];
        if choices.is_empty() {
            return Err(Error::Stuck(at));
        }
        let u: f64 = rng.gen();
        let i = choices
            .partition_point(|c| c.cumulative <= u)
            .min(choices.len() - 1);
        let c = choices[i];
        Ok(Step {
            arc: c.arc,
            next: c.head,
            charge: c.charge,
        })
    }

    /// Total charge of a prescribed arc sequence starting at `start`.
    pub fn charge_path(&self, start: VertexId, arcs: &[Arc]) -> Result<f64> {
        self.net.check_vertex(start)?;
        let mut at = start;
        let mut total = 0.0;
        for &arc in arcs {
            self.net.checked_edge(arc.edge)?;
            if self.net.tail(arc) != at {
                return Err(Error::InvalidWalk(format!(
                    "arc {arc} does not leave vertex {at}"
                )));
            }
            total += self.arc_charge(arc);
            at = self.net.head(arc);
        }
        Ok(total)
    }

    pub fn run<R: Rng + ?Sized>(
        &self,
        start: VertexId,
        rule: &StoppingRule<'_>,
        rng: &mut R,
    ) -> Result<WalkOutcome> {
        self.run_observed(start, rule, rng, |_| {})
    }

    /// Like [`Walker::run`] but also returns every step taken.
    pub fn run_recorded<R: Rng + ?Sized>(
        &self,
        start: VertexId,
        rule: &StoppingRule<'_>,
        rng: &mut R,
    ) -> Result<(WalkOutcome, Vec<WalkEvent>)> {
        let mut events = Vec::new();
        let outcome = self.run_observed(start, rule, rng, |ev| events.push(*ev))?;
        Ok((outcome, events))
    }

    fn run_observed<R: Rng + ?Sized>(
        &self,
        start: VertexId,
        rule: &StoppingRule<'_>,
        rng: &mut R,
        mut observe: impl FnMut(&WalkEvent),
    ) -> Result<WalkOutcome> {
        self.net.check_vertex(start)?;
        rule.check(self.net)?;
        if let Some(required) = rule.required_start() {
            if required != start {
                return Err(Error::InvalidRule(format!(
                    "{} must start at {required}, not {start}",
                    rule.describe()
                )));
            }
        }
        let mode = match rule {
            StoppingRule::EpochSequence { mode, .. } => Some(mode),
            _ => None,
        };

        let mut tracker = Tracker::new(self.net, rule, start);
        let mut at = start;
        let mut elapsed = 0.0;
        let mut steps = 0u64;
        let mut done = tracker.done_at_start(start);
        while !done {
            if steps >= self.step_budget {
                return Err(Error::StepBudgetExceeded(self.step_budget));
            }
            let s = self.step(at, rng)?;
            elapsed += s.charge;
            at = s.next;
            observe(&WalkEvent {
                step_index: steps,
                arc: s.arc,
                arrival: at,
                elapsed,
            });
            steps += 1;
            done = tracker.advance(s.arc, at, elapsed);
        }
        Ok(WalkOutcome {
            stop_time: elapsed,
            step_count: steps,
            auxiliary: tracker.finish(self.net, mode),
        })
    }
}
