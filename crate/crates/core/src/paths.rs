//! Static execution-path enumeration with bounded loop unrolling.
//!
//! The walk is a depth-first search over the CFG from ENTRY that takes the
//! False edge before the True edge at every branch. A `while` header's True
//! edge may be taken at most `loop_bound` times per path. Feasibility is not
//! considered: every combination of branch outcomes is a path.
//!
//! With the `parallel` feature the search tree is split into independent
//! decision prefixes that are explored on the rayon pool. Results are
//! concatenated in prefix order, so ordering and truncation are identical to
//! the sequential search.

use std::cmp::Reverse;
use std::fmt::Write as _;

use crate::cfg::{Cfg, EdgeLabel, NodeRef, Outcome};
use crate::frontend::{NumberedProgram, StatementId};

pub const DEFAULT_LOOP_BOUND: u32 = 2;
pub const DEFAULT_MAX_PATHS: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Decision {
    pub branch: StatementId,
    pub outcome: Outcome,
    /// 1-based visit index of `branch` on this path; always 1 for `if` headers outside loops.
    pub occurrence: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StaticPath {
    pub decisions: Vec<Decision>,
    pub node_ids: Vec<StatementId>,
}

impl StaticPath {
    /// Positions of the True bits, most significant first. Comparing these
    /// lexicographically compares the decision vectors as binary numbers whose
    /// least significant bit is the textually earliest branch.
    fn sort_key(&self) -> Vec<(StatementId, u32)> {
        let mut bits: Vec<_> = self
            .decisions
            .iter()
            .filter(|d| d.outcome == Outcome::True)
            .map(|d| (d.branch, d.occurrence))
            .collect();
        bits.sort_by_key(|&b| Reverse(b));
        bits
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSet {
    pub paths: Vec<StaticPath>,
    /// Set when more than `max_paths` paths exist; `paths` then holds the first
    /// `max_paths` found by the depth-first search.
    pub truncated: bool,
    pub loop_bound: u32,
}

impl PathSet {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

#[derive(Clone, Debug)]
struct Walk {
    at: NodeRef,
    node_ids: Vec<StatementId>,
    decisions: Vec<Decision>,
    visits: Vec<u32>,
    /// True edges taken per loop header.
    iterations: Vec<u32>,
}

enum Step {
    Done(StaticPath),
    /// Continuations in search order: False first.
    Fork(Walk, Walk),
}

impl Walk {
    fn start(cfg: &Cfg) -> Walk {
        let n = cfg.statement_count();
        Walk {
            at: NodeRef::Entry,
            node_ids: Vec::new(),
            decisions: Vec::new(),
            visits: vec![0; n],
            iterations: vec![0; n],
        }
    }

    fn take(&mut self, id: StatementId, outcome: Outcome, target: NodeRef) {
        self.decisions.push(Decision {
            branch: id,
            outcome,
            occurrence: self.visits[id.0],
        });
        if outcome == Outcome::True {
            self.iterations[id.0] += 1;
        }
        self.at = target;
    }

    /// Runs forward until the next branch with two viable edges, or EXIT.
    fn advance(mut self, cfg: &Cfg, loop_bound: u32) -> Step {
        loop {
            let id = match self.at {
                NodeRef::Exit => {
                    return Step::Done(StaticPath {
                        decisions: self.decisions,
                        node_ids: self.node_ids,
                    })
                }
                NodeRef::Entry => {
                    self.at = single_successor(cfg, self.at);
                    continue;
                }
                NodeRef::Stmt(id) => id,
            };
            self.node_ids.push(id);
            self.visits[id.0] += 1;

            let (Some(on_false), Some(on_true)) = (
                cfg.branch_target(self.at, Outcome::False),
                cfg.branch_target(self.at, Outcome::True),
            ) else {
                self.at = single_successor(cfg, self.at);
                continue;
            };

            // Both arms empty: the two walks would be indistinguishable, keep the False one.
            let same_target = on_false == on_true;
            let exhausted = cfg.is_loop_header(id) && self.iterations[id.0] >= loop_bound;
            if same_target || exhausted {
                self.take(id, Outcome::False, on_false);
                continue;
            }

            let mut taken = self.clone();
            self.take(id, Outcome::False, on_false);
            taken.take(id, Outcome::True, on_true);
            return Step::Fork(self, taken);
        }
    }
}

fn single_successor(cfg: &Cfg, node: NodeRef) -> NodeRef {
    let mut out = cfg.out_edges(node);
    let e = out.next().expect("non-exit node has a successor");
    debug_assert_eq!(e.label, EdgeLabel::Unconditional);
    e.to
}

/// Depth-first completion of `start`, stopping once `out` holds `limit` paths.
fn search(start: Walk, cfg: &Cfg, loop_bound: u32, limit: usize, out: &mut Vec<StaticPath>) {
    let mut stack = vec![start];
    while let Some(walk) = stack.pop() {
        match walk.advance(cfg, loop_bound) {
            Step::Done(path) => {
                out.push(path);
                if out.len() >= limit {
                    return;
                }
            }
            Step::Fork(on_false, on_true) => {
                stack.push(on_true);
                stack.push(on_false);
            }
        }
    }
}

fn finish(mut found: Vec<StaticPath>, max_paths: usize, loop_bound: u32) -> PathSet {
    let truncated = found.len() > max_paths;
    found.truncate(max_paths);
    found.sort_by_cached_key(|p| (p.sort_key(), p.node_ids.clone()));
    PathSet {
        paths: found,
        truncated,
        loop_bound,
    }
}

pub fn enumerate_static_paths_sequential(cfg: &Cfg, loop_bound: u32, max_paths: usize) -> PathSet {
    let max_paths = max_paths.clamp(1, usize::MAX - 1);
    let mut found = Vec::new();
    search(Walk::start(cfg), cfg, loop_bound, max_paths + 1, &mut found);
    finish(found, max_paths, loop_bound)
}

#[cfg(feature = "parallel")]
pub fn enumerate_static_paths_parallel(cfg: &Cfg, loop_bound: u32, max_paths: usize) -> PathSet {
    use rayon::prelude::*;

    enum Item {
        Done(StaticPath),
        Pending(Walk),
    }

    const MAX_SPLIT_ROUNDS: usize = 16;

    let max_paths = max_paths.clamp(1, usize::MAX - 1);
    let limit = max_paths + 1;
    let wanted = 4 * rayon::current_num_threads();

    let mut items = vec![Item::Pending(Walk::start(cfg))];
    for _ in 0..MAX_SPLIT_ROUNDS {
        let pending = items
            .iter()
            .filter(|i| matches!(i, Item::Pending(_)))
            .count();
        if pending == 0 || pending >= wanted || items.len() >= limit {
            break;
        }
        let mut next = Vec::with_capacity(items.len() * 2);
        for item in items {
            match item {
                Item::Pending(walk) => match walk.advance(cfg, loop_bound) {
                    Step::Done(path) => next.push(Item::Done(path)),
                    Step::Fork(on_false, on_true) => {
                        next.push(Item::Pending(on_false));
                        next.push(Item::Pending(on_true));
                    }
                },
                done => next.push(done),
            }
        }
        items = next;
    }

    // Each prefix yields either all of its paths or at least `limit`, so the
    // first `limit` of the concatenation match the sequential search.
    let chunks: Vec<Vec<StaticPath>> = items
        .into_par_iter()
        .map(|item| match item {
            Item::Done(path) => vec![path],
            Item::Pending(walk) => {
                let mut out = Vec::new();
                search(walk, cfg, loop_bound, limit, &mut out);
                out
            }
        })
        .collect();
    let found: Vec<StaticPath> = chunks.into_iter().flatten().take(limit).collect();
    finish(found, max_paths, loop_bound)
}

/// Enumerates every static path, up to `max_paths` (clamped to at least 1).
pub fn enumerate_static_paths(cfg: &Cfg, loop_bound: u32, max_paths: usize) -> PathSet {
    #[cfg(feature = "parallel")]
    {
        enumerate_static_paths_parallel(cfg, loop_bound, max_paths)
    }
    #[cfg(not(feature = "parallel"))]
    {
        enumerate_static_paths_sequential(cfg, loop_bound, max_paths)
    }
}

/// `Line Number <id>: <condition>: TRUE|FALSE`
pub fn decision_line(program: &NumberedProgram, decision: &Decision) -> String {
    let cond = program
        .statement(decision.branch)
        .condition()
        .map(|c| c.to_string())
        .unwrap_or_default();
    let outcome = match decision.outcome {
        Outcome::True => "TRUE",
        Outcome::False => "FALSE",
    };
    format!("Line Number {}: {cond}: {outcome}", decision.branch)
}

pub(crate) fn join_ids(ids: &[StatementId]) -> String {
    let mut s = String::new();
    for id in ids {
        let _ = write!(s, " {id}");
    }
    s
}

/// Decision lines then `Execution Path <k>: ...` for each path; blocks separated by a blank line.
pub fn render_path_report(program: &NumberedProgram, ps: &PathSet) -> String {
    let blocks: Vec<String> = ps
        .paths
        .iter()
        .enumerate()
        .map(|(k, path)| {
            let mut block = String::new();
            for d in &path.decisions {
                block.push_str(&decision_line(program, d));
                block.push('\n');
            }
            let _ = write!(
                block,
                "Execution Path {}:{}",
                k + 1,
                join_ids(&path.node_ids)
            );
            block
        })
        .collect();
    let mut out = blocks.join("\n\n");
    out.push('\n');
    out
}
