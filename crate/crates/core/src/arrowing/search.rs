//! Search over edge colorings with clause learning.
//!
//! Boolean variable `x(e, c)` says edge `e` has color `c`. Every edge gets
//! exactly one color (an at-least-one clause plus pairwise exclusions), and
//! every copy of `F_i` contributes the clause "some edge of this copy is not
//! colored `i`". A copy is live while none of its edges has been excluded
//! from its color.
//!
//! Decisions follow the fail-first rule: color the uncolored edge lying in
//! the most live copies (lowest index on ties) with its lowest remaining
//! color. Conflicts are analysed to the first unique implication point; the
//! learned clause is kept and the search jumps back to the level where it
//! becomes unit. Once no uncolored edge lies in a live copy, any completion
//! is valid, so the search stops there.

use super::{ArrowOutcome, ArrowWitness};

const UNSET: u8 = u8::MAX;
const NO_REASON: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Decisions made.
    pub nodes: u64,
    /// Conflicts analysed.
    pub conflicts: u64,
    /// Copies (constraints) in the instance.
    pub copies: usize,
}

type Lit = u32;

fn pos(var: u32) -> Lit {
    var << 1
}

fn neg(var: u32) -> Lit {
    var << 1 | 1
}

fn var_of(l: Lit) -> usize {
    (l >> 1) as usize
}

fn is_neg(l: Lit) -> bool {
    l & 1 == 1
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Value {
    True,
    False,
    Unset,
}

struct Solver {
    colors: usize,
    edges: usize,

    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<u32>>,

    // Per variable.
    value: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    seen: Vec<bool>,

    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    head: usize,

    // Copy bookkeeping for the branching rule.
    copy_color: Vec<u8>,
    copy_edges: Vec<Vec<u32>>,
    edge_copies: Vec<Vec<u32>>,
    killed: Vec<u16>,
    live: Vec<u32>,
    color: Vec<u8>,

    stats: SearchStats,
}

enum Status {
    Sat,
    Unsat,
    Budget,
}

/// `copies[i]` lists the copies of target `i`, each as host edge indices.
pub(super) fn run(
    edge_count: usize,
    copies: &[Vec<Vec<usize>>],
    symmetric: bool,
    budget: u64,
) -> (ArrowOutcome, SearchStats) {
    let mut s = Solver::new(edge_count, copies);
    let status = s.solve(symmetric, budget);
    let outcome = match status {
        Status::Sat => ArrowOutcome::NotArrows(ArrowWitness {
            colors: s.color.iter().map(|&c| c as usize).collect(),
        }),
        Status::Unsat => ArrowOutcome::Arrows,
        Status::Budget => ArrowOutcome::Unknown,
    };
    (outcome, s.stats)
}

impl Solver {
    fn new(edges: usize, copies: &[Vec<Vec<usize>>]) -> Self {
        let colors = copies.len();
        let vars = edges * colors;
        let mut s = Solver {
            colors,
            edges,
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * vars],
            value: vec![UNSET; vars],
            level: vec![0; vars],
            reason: vec![NO_REASON; vars],
            seen: vec![false; vars],
            trail: Vec::with_capacity(vars),
            trail_lim: Vec::new(),
            head: 0,
            copy_color: Vec::new(),
            copy_edges: Vec::new(),
            edge_copies: vec![Vec::new(); edges],
            killed: Vec::new(),
            live: vec![0; edges],
            color: vec![UNSET; edges],
            stats: SearchStats::default(),
        };
        for (c, list) in copies.iter().enumerate() {
            for copy in list {
                let id = s.copy_edges.len() as u32;
                for &e in copy {
                    s.edge_copies[e].push(id);
                    s.live[e] += 1;
                }
                s.copy_color.push(c as u8);
                s.copy_edges.push(copy.iter().map(|&e| e as u32).collect());
            }
        }
        s.killed = vec![0; s.copy_edges.len()];
        s.stats.copies = s.copy_edges.len();
        s
    }

    fn var(&self, e: usize, c: usize) -> u32 {
        (e * self.colors + c) as u32
    }

    fn lit_value(&self, l: Lit) -> Value {
        match self.value[var_of(l)] {
            UNSET => Value::Unset,
            v if (v == 1) != is_neg(l) => Value::True,
            _ => Value::False,
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    /// Add an original clause at level 0. Returns false on a conflict.
    fn add_clause(&mut self, lits: Vec<Lit>) -> bool {
        match lits.len() {
            0 => false,
            1 => match self.lit_value(lits[0]) {
                Value::True => true,
                Value::False => false,
                Value::Unset => {
                    self.enqueue(lits[0], NO_REASON);
                    true
                }
            },
            _ => {
                let id = self.clauses.len() as u32;
                self.watches[(lits[0] ^ 1) as usize].push(id);
                self.watches[(lits[1] ^ 1) as usize].push(id);
                self.clauses.push(lits);
                true
            }
        }
    }

    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = var_of(l);
        self.value[v] = if is_neg(l) { 0 } else { 1 };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
        let (e, c) = (v / self.colors, v % self.colors);
        if is_neg(l) {
            for k in 0..self.edge_copies[e].len() {
                let id = self.edge_copies[e][k] as usize;
                if self.copy_color[id] as usize == c {
                    self.killed[id] += 1;
                    if self.killed[id] == 1 {
                        for &f in &self.copy_edges[id] {
                            self.live[f as usize] -= 1;
                        }
                    }
                }
            }
        } else {
            self.color[e] = c as u8;
        }
    }

    fn unassign(&mut self, l: Lit) {
        let v = var_of(l);
        self.value[v] = UNSET;
        self.reason[v] = NO_REASON;
        let (e, c) = (v / self.colors, v % self.colors);
        if is_neg(l) {
            for k in 0..self.edge_copies[e].len() {
                let id = self.edge_copies[e][k] as usize;
                if self.copy_color[id] as usize == c {
                    if self.killed[id] == 1 {
                        for &f in &self.copy_edges[id] {
                            self.live[f as usize] += 1;
                        }
                    }
                    self.killed[id] -= 1;
                }
            }
        } else {
            self.color[e] = UNSET;
        }
    }

    /// Unit propagation over all clauses. Returns a conflicting clause.
    fn propagate(&mut self) -> Option<u32> {
        while self.head < self.trail.len() {
            let p = self.trail[self.head];
            self.head += 1;
            // Clauses watching the literal that just became false.
            let false_lit = p ^ 1;
            let mut ws = std::mem::take(&mut self.watches[p as usize]);
            let mut i = 0;
            let mut conflict = None;
            while i < ws.len() {
                let cid = ws[i];
                let clause = &mut self.clauses[cid as usize];
                if clause[0] == false_lit {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                if self.lit_value_raw(first) == Value::True {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..self.clauses[cid as usize].len() {
                    let l = self.clauses[cid as usize][k];
                    if self.lit_value_raw(l) != Value::False {
                        self.clauses[cid as usize].swap(1, k);
                        self.watches[(l ^ 1) as usize].push(cid);
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                match self.lit_value_raw(first) {
                    Value::False => {
                        conflict = Some(cid);
                        break;
                    }
                    _ => {
                        self.enqueue(first, cid);
                        i += 1;
                    }
                }
            }
            // Watches added to this list during the scan were pushed onto the
            // (empty) replacement and must be kept.
            let added = std::mem::replace(&mut self.watches[p as usize], ws);
            self.watches[p as usize].extend(added);
            if conflict.is_some() {
                self.head = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn lit_value_raw(&self, l: Lit) -> Value {
        self.lit_value(l)
    }

    /// First-UIP analysis; returns the learned clause (asserting literal
    /// first) and the backjump level.
    fn analyze(&mut self, mut cid: u32) -> (Vec<Lit>, u32) {
        let current = self.decision_level();
        let mut learnt: Vec<Lit> = vec![0];
        let mut pending = 0usize;
        let mut idx = self.trail.len();
        let mut p: Option<Lit> = None;
        loop {
            let clause = self.clauses[cid as usize].clone();
            for &q in &clause {
                if Some(q) == p {
                    continue;
                }
                let v = var_of(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    if self.level[v] == current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[var_of(self.trail[idx])] {
                    break;
                }
            }
            let lit = self.trail[idx];
            self.seen[var_of(lit)] = false;
            pending -= 1;
            if pending == 0 {
                learnt[0] = lit ^ 1;
                break;
            }
            p = Some(lit);
            cid = self.reason[var_of(lit)];
        }

        // Drop literals implied by the rest of the clause.
        let keep: Vec<bool> = learnt
            .iter()
            .enumerate()
            .map(|(k, &q)| k == 0 || !self.redundant(q))
            .collect();
        for &q in &learnt[1..] {
            self.seen[var_of(q)] = false;
        }
        let mut out: Vec<Lit> = learnt
            .into_iter()
            .zip(keep)
            .filter(|&(_, k)| k)
            .map(|(q, _)| q)
            .collect();

        let mut back = 0;
        if out.len() > 1 {
            let mut best = 1;
            for k in 2..out.len() {
                if self.level[var_of(out[k])] > self.level[var_of(out[best])] {
                    best = k;
                }
            }
            out.swap(1, best);
            back = self.level[var_of(out[1])];
        }
        (out, back)
    }

    /// `q` is implied by literals already in the learned clause.
    fn redundant(&self, q: Lit) -> bool {
        let r = self.reason[var_of(q)];
        r != NO_REASON
            && self.clauses[r as usize].iter().all(|&x| {
                let v = var_of(x);
                v == var_of(q) || self.seen[v] || self.level[v] == 0
            })
    }

    fn backjump(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let stop = self.trail_lim[level as usize];
        while self.trail.len() > stop {
            let l = self.trail.pop().expect("trail above the stop mark");
            self.unassign(l);
        }
        self.trail_lim.truncate(level as usize);
        self.head = self.trail.len();
    }

    /// Uncolored edge in the most live copies, lowest index on ties.
    fn pick(&self) -> Option<(usize, u32)> {
        let mut best: Option<(usize, u32)> = None;
        for e in 0..self.edges {
            if self.color[e] == UNSET && best.map_or(true, |(_, b)| self.live[e] > b) {
                best = Some((e, self.live[e]));
            }
        }
        best
    }

    fn lowest_open_color(&self, e: usize) -> usize {
        (0..self.colors)
            .find(|&c| self.value[self.var(e, c) as usize] == UNSET)
            .expect("an uncolored edge has an open color")
    }

    fn solve(&mut self, symmetric: bool, budget: u64) -> Status {
        for e in 0..self.edges {
            let alo: Vec<Lit> = (0..self.colors).map(|c| pos(self.var(e, c))).collect();
            if !self.add_clause(alo) {
                return Status::Unsat;
            }
            for a in 0..self.colors {
                for b in a + 1..self.colors {
                    let clause = vec![neg(self.var(e, a)), neg(self.var(e, b))];
                    self.add_clause(clause);
                }
            }
        }
        for id in 0..self.copy_edges.len() {
            let c = self.copy_color[id] as usize;
            let clause: Vec<Lit> = self.copy_edges[id]
                .iter()
                .map(|&e| neg(self.var(e as usize, c)))
                .collect();
            if !self.add_clause(clause) {
                return Status::Unsat;
            }
        }
        if self.propagate().is_some() {
            return Status::Unsat;
        }
        if symmetric {
            // Colors are interchangeable: the first branching edge takes the
            // first color.
            if let Some((e, live)) = self.pick() {
                if live > 0 && self.value[self.var(e, 0) as usize] == UNSET {
                    self.enqueue(pos(self.var(e, 0)), NO_REASON);
                    if self.propagate().is_some() {
                        return Status::Unsat;
                    }
                }
            }
        }

        loop {
            let Some((e, live)) = self.pick() else {
                return Status::Sat;
            };
            if live == 0 {
                for f in 0..self.edges {
                    if self.color[f] == UNSET {
                        self.color[f] = self.lowest_open_color(f) as u8;
                    }
                }
                return Status::Sat;
            }
            self.stats.nodes += 1;
            if self.stats.nodes > budget {
                return Status::Budget;
            }
            let c = self.lowest_open_color(e);
            self.trail_lim.push(self.trail.len());
            self.enqueue(pos(self.var(e, c)), NO_REASON);
            while let Some(conflict) = self.propagate() {
                self.stats.conflicts += 1;
                if self.decision_level() == 0 {
                    return Status::Unsat;
                }
                let (learnt, back) = self.analyze(conflict);
                self.backjump(back);
                let asserting = learnt[0];
                if learnt.len() == 1 {
                    self.enqueue(asserting, NO_REASON);
                } else {
                    let id = self.clauses.len() as u32;
                    self.watches[(learnt[0] ^ 1) as usize].push(id);
                    self.watches[(learnt[1] ^ 1) as usize].push(id);
                    self.clauses.push(learnt);
                    self.enqueue(asserting, id);
                }
            }
        }
    }
}
