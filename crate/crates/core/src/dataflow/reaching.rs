//! Reaching definitions by worklist iteration to the least fixed point.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::cfg::{Cfg, NodeRef};
use crate::frontend::StatementId;

use super::DefUse;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Definition {
    pub site: StatementId,
    pub var: String,
}

impl Definition {
    pub fn new(site: StatementId, var: impl Into<String>) -> Self {
        Definition {
            site,
            var: var.into(),
        }
    }
}

pub type DefSet = BTreeSet<Definition>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachSets {
    pub ins: BTreeMap<NodeRef, DefSet>,
    pub outs: BTreeMap<NodeRef, DefSet>,
}

impl ReachSets {
    pub fn in_of(&self, node: NodeRef) -> &DefSet {
        &self.ins[&node]
    }

    pub fn out_of(&self, node: NodeRef) -> &DefSet {
        &self.outs[&node]
    }
}

/// out(n) = gen(n) ∪ (in(n) − kill(n)), in(n) = ⋃ out(p) over predecessors p.
pub fn reaching_definitions(cfg: &Cfg, du: &DefUse) -> ReachSets {
    let mut preds: BTreeMap<NodeRef, Vec<NodeRef>> =
        cfg.nodes().iter().map(|&n| (n, Vec::new())).collect();
    for e in cfg.edges() {
        let p = preds.get_mut(&e.to).expect("edge target is a node");
        if !p.contains(&e.from) {
            p.push(e.from);
        }
    }

    let mut ins: BTreeMap<NodeRef, DefSet> =
        cfg.nodes().iter().map(|&n| (n, DefSet::new())).collect();
    let mut outs = ins.clone();

    let mut worklist: VecDeque<NodeRef> = cfg.nodes().iter().copied().collect();
    let mut queued: BTreeSet<NodeRef> = worklist.iter().copied().collect();

    while let Some(n) = worklist.pop_front() {
        queued.remove(&n);

        let mut input = DefSet::new();
        for p in &preds[&n] {
            input.extend(outs[p].iter().cloned());
        }

        let generated = n
            .statement_id()
            .and_then(|id| du.def_of(id).map(|v| Definition::new(id, v)));
        let mut output: DefSet = match &generated {
            // everything else defining the same variable is killed
            Some(g) => input.iter().filter(|d| d.var != g.var).cloned().collect(),
            None => input.clone(),
        };
        output.extend(generated);

        ins.insert(n, input);
        if outs[&n] != output {
            outs.insert(n, output);
            for e in cfg.out_edges(n) {
                if queued.insert(e.to) {
                    worklist.push_back(e.to);
                }
            }
        }
    }

    ReachSets { ins, outs }
}
