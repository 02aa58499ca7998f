//! Def/use tables, reaching definitions and the dependence graphs built on them.

mod defuse;
mod dependence;
mod reaching;
mod variables;

pub use defuse::{defs_uses, DefUse};
pub use dependence::{
    build_pdg, control_dependences, data_dependences, DepEdge, DepKind, DependenceGraph,
    DependenceKind,
};
pub use reaching::{reaching_definitions, DefSet, Definition, ReachSets};
pub use variables::{variable_dependences, VarEdge, VariableGraph};

use crate::cfg::Cfg;
use crate::frontend::NumberedProgram;

/// Every dependence graph for one program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dependences {
    pub def_use: DefUse,
    pub reach: ReachSets,
    pub data: DependenceGraph,
    pub control: DependenceGraph,
    pub program: DependenceGraph,
    pub variables: VariableGraph,
}

impl Dependences {
    /// The data-side chain and the structural graphs share only immutable inputs,
    /// so with the `parallel` feature they are computed on separate rayon tasks.
    pub fn compute(program: &NumberedProgram, cfg: &Cfg) -> Self {
        let def_use = defs_uses(program);
        let data_side = || {
            let reach = reaching_definitions(cfg, &def_use);
            let data = data_dependences(&reach, &def_use);
            (reach, data)
        };
        let structural = || {
            (
                control_dependences(program),
                variable_dependences(program, &def_use),
            )
        };

        #[cfg(feature = "parallel")]
        let ((reach, data), (control, variables)) = rayon::join(data_side, structural);
        #[cfg(not(feature = "parallel"))]
        let ((reach, data), (control, variables)) = (data_side(), structural());

        let pdg = build_pdg(&data, &control);
        Dependences {
            def_use,
            reach,
            data,
            control,
            program: pdg,
            variables,
        }
    }
}
