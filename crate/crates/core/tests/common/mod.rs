//! Fixtures, a random program generator and independent oracles shared by the
//! integration tests. Nothing here calls into the analyses it checks.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use flowgraph::cfg::{Cfg, EdgeLabel, NodeRef, Outcome};
use flowgraph::frontend::{NumberedProgram, StatementKind};

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn golden(name: &str) -> String {
    std::fs::read_to_string(golden_dir().join(name)).expect("golden file")
}

pub fn prog_a() -> String {
    golden("prog_a.java")
}

pub fn prog_b() -> String {
    golden("prog_b.java")
}

pub fn wrap(body: &str) -> String {
    format!("class T {{ public static void main(String[] args) {{ {body} }} }}")
}

// ---------------------------------------------------------------------------
// Random programs
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
pub struct GenConfig {
    pub max_stmts: usize,
    pub max_if_depth: usize,
    pub loops: bool,
}

impl GenConfig {
    pub fn loop_free() -> Self {
        GenConfig {
            max_stmts: 12,
            max_if_depth: 3,
            loops: false,
        }
    }

    pub fn with_loops() -> Self {
        GenConfig {
            max_stmts: 12,
            max_if_depth: 3,
            loops: true,
        }
    }
}

struct Gen<'r> {
    rng: &'r mut ChaCha8Rng,
    config: GenConfig,
    budget: usize,
    next_var: usize,
}

impl Gen<'_> {
    fn fresh(&mut self) -> String {
        let name = format!("v{}", self.next_var);
        self.next_var += 1;
        name
    }

    fn int_expr(&mut self, vars: &[String], depth: u32) -> String {
        let leaf = depth == 0 || self.rng.gen_bool(0.4);
        if leaf {
            if !vars.is_empty() && self.rng.gen_bool(0.6) {
                return vars.choose(self.rng).unwrap().clone();
            }
            return self.rng.gen_range(-3..10).to_string();
        }
        match self.rng.gen_range(0..6) {
            0 => format!(
                "{} + {}",
                self.int_expr(vars, depth - 1),
                self.int_expr(vars, depth - 1)
            ),
            1 => format!(
                "{} - ({})",
                self.int_expr(vars, depth - 1),
                self.int_expr(vars, depth - 1)
            ),
            2 => format!(
                "({}) * {}",
                self.int_expr(vars, depth - 1),
                self.int_expr(vars, depth - 1)
            ),
            3 => format!(
                "({}) / {}",
                self.int_expr(vars, depth - 1),
                self.rng.gen_range(1..5)
            ),
            4 => format!(
                "({}) % {}",
                self.int_expr(vars, depth - 1),
                self.rng.gen_range(1..5)
            ),
            _ => format!("-({})", self.int_expr(vars, depth - 1)),
        }
    }

    fn condition(&mut self, vars: &[String]) -> String {
        let rel = ["<", ">", "<=", ">=", "==", "!="];
        let atom = |g: &mut Self| {
            let op = rel.choose(g.rng).unwrap();
            format!("{} {op} {}", g.int_expr(vars, 1), g.int_expr(vars, 1))
        };
        match self.rng.gen_range(0..8) {
            0 => format!("{} && {}", atom(self), atom(self)),
            1 => format!("{} || {}", atom(self), atom(self)),
            2 => format!("!({})", atom(self)),
            _ => atom(self),
        }
    }

    /// Appends statements to `out` until the budget or a random stop.
    fn seq(&mut self, vars: &mut Vec<String>, if_depth: usize, out: &mut String, min_len: usize) {
        let mut produced = 0;
        while self.budget > 0 && (produced < min_len || self.rng.gen_bool(0.7)) {
            self.stmt(vars, if_depth, out);
            produced += 1;
        }
    }

    fn arm(&mut self, vars: &[String], if_depth: usize, out: &mut String) {
        // arms get their own scope, so declarations inside stay local
        let mut local = vars.to_vec();
        if self.rng.gen_bool(0.1) {
            out.push_str("{ } ");
            return;
        }
        out.push_str("{ ");
        self.seq(&mut local, if_depth, out, 1);
        out.push_str("} ");
    }

    fn stmt(&mut self, vars: &mut Vec<String>, if_depth: usize, out: &mut String) {
        self.budget -= 1;
        let can_nest = self.budget > 0;
        let roll = self.rng.gen_range(0..10);
        if can_nest && roll < 4 && if_depth < self.config.max_if_depth {
            let cond = self.condition(vars);
            out.push_str(&format!("if ({cond}) "));
            self.arm(vars, if_depth + 1, out);
            if self.rng.gen_bool(0.6) {
                out.push_str("else ");
                self.arm(vars, if_depth + 1, out);
            }
        } else if can_nest && roll < 6 && self.config.loops {
            let cond = self.condition(vars);
            out.push_str(&format!("while ({cond}) "));
            self.arm(vars, if_depth, out);
        } else if roll < 7 || vars.is_empty() {
            let name = self.fresh();
            let e = self.int_expr(vars, 2);
            out.push_str(&format!("int {name} = {e}; "));
            vars.push(name);
        } else if roll < 8 {
            let e = self.int_expr(vars, 2);
            out.push_str(&format!("System.out.println({e}); "));
        } else {
            let target = vars.choose(self.rng).unwrap().clone();
            let e = self.int_expr(vars, 2);
            out.push_str(&format!("{target} = {e}; "));
        }
    }
}

/// Source text of a random program with at most `config.max_stmts` numbered statements.
pub fn random_program(seed: u64, config: GenConfig) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = if rng.gen_bool(0.2) {
        rng.gen_range(1..=config.max_stmts)
    } else {
        rng.gen_range(config.max_stmts / 2..=config.max_stmts)
    };
    let mut g = Gen {
        rng: &mut rng,
        config,
        budget: total,
        next_var: 0,
    };
    let mut vars = Vec::new();
    let mut body = String::new();
    // a couple of declarations up front keep conditions interesting
    let decls = g.rng.gen_range(1..=2).min(total);
    for _ in 0..decls {
        g.budget -= 1;
        let name = g.fresh();
        let v = g.rng.gen_range(-2..8);
        body.push_str(&format!("int {name} = {v}; "));
        vars.push(name);
    }
    while g.budget > 0 {
        g.seq(&mut vars, 0, &mut body, 1);
    }
    wrap(&body)
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

fn defined_var(program: &NumberedProgram, node: NodeRef) -> Option<String> {
    let id = node.statement_id()?;
    match &program.statement(id).kind {
        StatementKind::Decl { name, .. } | StatementKind::Assign { name, .. } => Some(name.clone()),
        _ => None,
    }
}

fn succ_map(cfg: &Cfg) -> BTreeMap<NodeRef, Vec<(NodeRef, EdgeLabel)>> {
    let mut m: BTreeMap<NodeRef, Vec<(NodeRef, EdgeLabel)>> =
        cfg.nodes().iter().map(|&n| (n, Vec::new())).collect();
    for e in cfg.edges() {
        m.get_mut(&e.from).unwrap().push((e.to, e.label));
    }
    m
}

fn is_back_edge(from: NodeRef, to: NodeRef) -> bool {
    match (from, to) {
        (NodeRef::Stmt(a), NodeRef::Stmt(b)) => b <= a,
        _ => false,
    }
}

pub type DefPair = (usize, String);

/// Reaching-definition in-sets by explicit enumeration of every ENTRY-rooted walk
/// on which each back edge is taken at most `max_back` times.
pub fn brute_force_reaching_ins(
    program: &NumberedProgram,
    cfg: &Cfg,
    max_back: u32,
) -> BTreeMap<NodeRef, BTreeSet<DefPair>> {
    let succ = succ_map(cfg);
    let mut ins: BTreeMap<NodeRef, BTreeSet<DefPair>> =
        cfg.nodes().iter().map(|&n| (n, BTreeSet::new())).collect();

    type State = (
        NodeRef,
        BTreeMap<String, usize>,
        BTreeMap<(NodeRef, NodeRef), u32>,
    );

    // every reachable walk state, explored once; identical states see identical futures
    let mut seen: HashSet<State> = HashSet::new();
    let mut stack: Vec<State> = vec![(NodeRef::Entry, BTreeMap::new(), BTreeMap::new())];
    while let Some(state) = stack.pop() {
        if !seen.insert(state.clone()) {
            continue;
        }
        let (node, last_def, back) = state;
        let set = ins.get_mut(&node).unwrap();
        for (v, &site) in &last_def {
            set.insert((site, v.clone()));
        }
        let mut after = last_def;
        if let (Some(v), Some(id)) = (defined_var(program, node), node.statement_id()) {
            after.insert(v, id.0);
        }
        for &(to, _) in &succ[&node] {
            let mut back = back.clone();
            if is_back_edge(node, to) {
                let count = back.entry((node, to)).or_insert(0);
                if *count >= max_back {
                    continue;
                }
                *count += 1;
            }
            stack.push((to, after.clone(), back));
        }
    }
    ins
}

/// Postdominator sets by the textbook iterative intersection, over the CFG
/// augmented with an ENTRY → EXIT edge.
pub fn postdominators(cfg: &Cfg) -> BTreeMap<NodeRef, BTreeSet<NodeRef>> {
    let mut succ: BTreeMap<NodeRef, BTreeSet<NodeRef>> =
        cfg.nodes().iter().map(|&n| (n, BTreeSet::new())).collect();
    for e in cfg.edges() {
        succ.get_mut(&e.from).unwrap().insert(e.to);
    }
    succ.get_mut(&NodeRef::Entry).unwrap().insert(NodeRef::Exit);

    let all: BTreeSet<NodeRef> = cfg.nodes().iter().copied().collect();
    let mut pdom: BTreeMap<NodeRef, BTreeSet<NodeRef>> = cfg
        .nodes()
        .iter()
        .map(|&n| {
            if n == NodeRef::Exit {
                (n, BTreeSet::from([n]))
            } else {
                (n, all.clone())
            }
        })
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        for &n in cfg.nodes() {
            if n == NodeRef::Exit {
                continue;
            }
            let mut it = succ[&n].iter();
            let mut acc = pdom[it.next().unwrap()].clone();
            for s in it {
                acc = acc.intersection(&pdom[s]).copied().collect();
            }
            acc.insert(n);
            if acc != pdom[&n] {
                pdom.insert(n, acc);
                changed = true;
            }
        }
    }
    pdom
}

/// Control dependences by definition: u depends on branch b via edge b → s with
/// label L iff u postdominates s and u does not strictly postdominate b.
/// ENTRY is treated as a branch whose True edge enters the program and whose
/// False edge goes straight to EXIT.
pub fn postdominance_control_deps(cfg: &Cfg) -> BTreeSet<(NodeRef, NodeRef, Outcome)> {
    let pdom = postdominators(cfg);
    let mut branch_edges: Vec<(NodeRef, NodeRef, Outcome)> = Vec::new();
    for e in cfg.edges() {
        match (e.from, e.label) {
            (NodeRef::Entry, _) => branch_edges.push((e.from, e.to, Outcome::True)),
            (_, EdgeLabel::True) => branch_edges.push((e.from, e.to, Outcome::True)),
            (_, EdgeLabel::False) => branch_edges.push((e.from, e.to, Outcome::False)),
            _ => {}
        }
    }
    branch_edges.push((NodeRef::Entry, NodeRef::Exit, Outcome::False));

    let mut deps = BTreeSet::new();
    for (b, s, label) in branch_edges {
        for &u in cfg.nodes() {
            if !matches!(u, NodeRef::Stmt(_)) {
                continue;
            }
            let u_pdoms_s = pdom[&s].contains(&u);
            let u_strictly_pdoms_b = u != b && pdom[&b].contains(&u);
            if u_pdoms_s && !u_strictly_pdoms_b {
                deps.insert((b, u, label));
            }
        }
    }
    deps
}

/// Number of distinct ENTRY → EXIT node sequences in an acyclic CFG.
pub fn dag_path_count(cfg: &Cfg) -> u128 {
    let mut succ: BTreeMap<NodeRef, BTreeSet<NodeRef>> = BTreeMap::new();
    for e in cfg.edges() {
        assert!(!is_back_edge(e.from, e.to), "graph has a cycle");
        succ.entry(e.from).or_default().insert(e.to);
    }
    fn count(
        n: NodeRef,
        succ: &BTreeMap<NodeRef, BTreeSet<NodeRef>>,
        memo: &mut BTreeMap<NodeRef, u128>,
    ) -> u128 {
        if n == NodeRef::Exit {
            return 1;
        }
        if let Some(&c) = memo.get(&n) {
            return c;
        }
        let c = succ[&n].iter().map(|&s| count(s, succ, memo)).sum();
        memo.insert(n, c);
        c
    }
    count(NodeRef::Entry, &succ, &mut BTreeMap::new())
}

/// Is there a walk d → … → u whose intermediate nodes do not define `var`?
pub fn def_clear_path_exists(
    program: &NumberedProgram,
    cfg: &Cfg,
    d: NodeRef,
    u: NodeRef,
    var: &str,
) -> bool {
    let succ = succ_map(cfg);
    let mut seen = BTreeSet::new();
    let mut stack: Vec<NodeRef> = succ[&d].iter().map(|&(s, _)| s).collect();
    while let Some(n) = stack.pop() {
        if n == u {
            return true;
        }
        if !seen.insert(n) || defined_var(program, n).as_deref() == Some(var) {
            continue;
        }
        stack.extend(succ[&n].iter().map(|&(s, _)| s));
    }
    false
}

// ---------------------------------------------------------------------------
// DOT grammar checker
// ---------------------------------------------------------------------------

#[derive(Debug, Default, PartialEq, Eq)]
pub struct DotSummary {
    pub directed: bool,
    pub node_stmts: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum DotTok {
    Id(String),
    Sym(&'static str),
}

fn dot_tokens(src: &str) -> Result<Vec<DotTok>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err("unterminated string".into()),
                    Some('\\') => {
                        s.push(*chars.get(i + 1).ok_or("dangling escape")?);
                        i += 2;
                    }
                    Some('"') => {
                        i += 1;
                        break;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            out.push(DotTok::Id(format!("\"{s}")));
        } else if c == '-' && matches!(chars.get(i + 1), Some('>') | Some('-')) {
            out.push(DotTok::Sym(if chars[i + 1] == '>' { "->" } else { "--" }));
            i += 2;
        } else if let Some(sym) = ["{", "}", "[", "]", ";", ",", "=", ":"]
            .into_iter()
            .find(|s| s.starts_with(c))
        {
            out.push(DotTok::Sym(sym));
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(DotTok::Id(chars[start..i].iter().collect()));
        } else if c.is_ascii_digit() || c == '.' || c == '-' {
            let start = i;
            i += 1;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            out.push(DotTok::Id(chars[start..i].iter().collect()));
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

const DOT_KEYWORDS: &[&str] = &["node", "edge", "graph", "digraph", "subgraph", "strict"];

struct DotParser {
    toks: Vec<DotTok>,
    pos: usize,
    directed: bool,
    summary: DotSummary,
}

impl DotParser {
    fn peek(&self) -> Option<&DotTok> {
        self.toks.get(self.pos)
    }

    fn sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(DotTok::Sym(x)) if *x == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, k: &str) -> bool {
        if matches!(self.peek(), Some(DotTok::Id(x)) if x.eq_ignore_ascii_case(k)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn is_plain_id(&self) -> bool {
        match self.peek() {
            Some(DotTok::Id(x)) => {
                x.starts_with('"') || !DOT_KEYWORDS.iter().any(|k| x.eq_ignore_ascii_case(k))
            }
            _ => false,
        }
    }

    fn id(&mut self) -> Result<(), String> {
        if self.is_plain_id() {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!(
                "expected ID at token {}: {:?}",
                self.pos,
                self.peek()
            ))
        }
    }

    fn graph(&mut self) -> Result<(), String> {
        self.keyword("strict");
        if self.keyword("digraph") {
            self.directed = true;
        } else if !self.keyword("graph") {
            return Err("expected graph or digraph".into());
        }
        self.summary.directed = self.directed;
        if self.is_plain_id() {
            self.pos += 1;
        }
        if !self.sym("{") {
            return Err("expected '{'".into());
        }
        self.stmt_list()?;
        if !self.sym("}") {
            return Err(format!("expected '}}' at token {}", self.pos));
        }
        if self.pos != self.toks.len() {
            return Err("trailing tokens".into());
        }
        Ok(())
    }

    fn stmt_list(&mut self) -> Result<(), String> {
        while !matches!(self.peek(), Some(DotTok::Sym("}")) | None) {
            self.stmt()?;
            self.sym(";");
        }
        Ok(())
    }

    fn attr_list(&mut self) -> Result<(), String> {
        while self.sym("[") {
            while !self.sym("]") {
                self.id()?;
                if !self.sym("=") {
                    return Err("expected '=' in attribute".into());
                }
                self.id()?;
                if !self.sym(",") {
                    self.sym(";");
                }
            }
        }
        Ok(())
    }

    fn node_id(&mut self) -> Result<(), String> {
        self.id()?;
        if self.sym(":") {
            self.id()?;
            if self.sym(":") {
                self.id()?;
            }
        }
        Ok(())
    }

    fn subgraph(&mut self) -> Result<(), String> {
        if self.keyword("subgraph") && self.is_plain_id() {
            self.pos += 1;
        }
        if !self.sym("{") {
            return Err("expected '{' for subgraph".into());
        }
        self.stmt_list()?;
        if !self.sym("}") {
            return Err("expected '}' for subgraph".into());
        }
        Ok(())
    }

    fn stmt(&mut self) -> Result<(), String> {
        if self.keyword("graph") || self.keyword("node") || self.keyword("edge") {
            if !matches!(self.peek(), Some(DotTok::Sym("["))) {
                return Err("attr_stmt needs an attribute list".into());
            }
            return self.attr_list();
        }
        let subgraph_start = matches!(self.peek(), Some(DotTok::Sym("{")))
            || matches!(self.peek(), Some(DotTok::Id(x)) if x.eq_ignore_ascii_case("subgraph"));
        if subgraph_start {
            self.subgraph()?;
        } else {
            self.node_id()?;
            if self.sym("=") {
                return self.id();
            }
        }
        let mut edges = 0;
        loop {
            let op = if self.sym("->") {
                "->"
            } else if self.sym("--") {
                "--"
            } else {
                break;
            };
            if (op == "->") != self.directed {
                return Err(format!("edge operator {op} does not match graph type"));
            }
            if matches!(self.peek(), Some(DotTok::Sym("{"))) {
                self.subgraph()?;
            } else {
                self.node_id()?;
            }
            edges += 1;
        }
        if edges == 0 {
            self.summary.node_stmts += 1;
        }
        self.summary.edges += edges;
        self.attr_list()
    }
}

/// Validates `src` against the DOT language grammar.
pub fn check_dot(src: &str) -> Result<DotSummary, String> {
    let mut p = DotParser {
        toks: dot_tokens(src)?,
        pos: 0,
        directed: false,
        summary: DotSummary::default(),
    };
    p.graph()?;
    Ok(p.summary)
}
