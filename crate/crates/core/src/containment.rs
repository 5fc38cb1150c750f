//! Ramsey-class containment `R(F_1, …, F_s) ⊆ R(Q_1, …, Q_t)` through the
//! partition condition, plus Ramsey equivalence.
//!
//! [`corollary71_verify`] builds the smallest arrowing-gap instances from
//! complete hypergraphs.
//!
//! The partition condition asks for a map `j ↦ i` from targets to sources
//! such that `F_i → (Q_j)_{j ∈ A_i}` for every `i`, where `A_i` is the set of
//! targets sent to `i`. Parts may be empty and an empty tuple is arrowed
//! vacuously.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::arrowing::{
    arrows, ramsey_number, verify_witness, ArrowError, ArrowInstance, ArrowOutcome, ArrowWitness,
    SearchConfig,
};
use crate::classes::{classify, ClassError};
use crate::hypergraph::{canonical_form, contains_copy, CanonicalKey, Hypergraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContainmentError {
    #[error("{0} tuple is empty")]
    EmptyTuple(&'static str),
    #[error("uniformities differ: expected {expected}, {side}[{index}] has {got}")]
    UniformityMismatch {
        side: &'static str,
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("qs[{0}] has no edges")]
    EdgelessTarget(usize),
    #[error("targets outside X_r ∪ Y_r: {violators:?}")]
    OutsideClasses { violators: Vec<usize> },
    #[error("{side}[{index}] violates the equivalence hypothesis: {reason}")]
    EquivalenceHypothesis {
        side: &'static str,
        index: usize,
        reason: &'static str,
    },
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Arrow(ArrowError),
    #[error("arrowing budget exhausted")]
    Unknown,
}

impl From<ArrowError> for ContainmentError {
    fn from(e: ArrowError) -> Self {
        match e {
            ArrowError::Unknown { .. } => ContainmentError::Unknown,
            other => ContainmentError::Arrow(other),
        }
    }
}

/// `assignment[j]` is the source index `i` that target `j` is sent to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionCertificate {
    pub assignment: Vec<usize>,
}

impl PartitionCertificate {
    /// The part `A_i`, in increasing target order.
    pub fn part(&self, i: usize) -> Vec<usize> {
        part_of(&self.assignment, i)
    }
}

/// Why one assignment fails: `F_source ↛ (Q_j)_{j ∈ targets}` as shown by
/// `witness`, a coloring of the edges of `F_source` in which color `c`
/// stands for target `targets[c]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub assignment: Vec<usize>,
    pub source: usize,
    pub targets: Vec<usize>,
    pub witness: ArrowWitness,
    /// Found by the copy-existence check rather than by search.
    pub by_missing_copy: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainmentVerdict {
    pub holds: bool,
    pub certificate: Option<PartitionCertificate>,
    /// One entry per assignment, in enumeration order; empty if `holds`.
    pub refutations: Vec<Refutation>,
}

impl ContainmentVerdict {
    /// JSON with every witness expanded to `{edge, color}` lists on its host.
    pub fn to_json(&self, fs: &[Hypergraph]) -> serde_json::Value {
        let refutations: Vec<serde_json::Value> = self
            .refutations
            .iter()
            .map(|rf| {
                serde_json::json!({
                    "assignment": rf.assignment,
                    "source": rf.source,
                    "targets": rf.targets,
                    "byMissingCopy": rf.by_missing_copy,
                    "witness": rf.witness.to_json(&fs[rf.source]),
                })
            })
            .collect();
        serde_json::json!({
            "holds": self.holds,
            "certificate": self.certificate.as_ref().map(|c| &c.assignment),
            "refutations": refutations,
        })
    }
}

fn part_of(assignment: &[usize], i: usize) -> Vec<usize> {
    (0..assignment.len()).filter(|&j| assignment[j] == i).collect()
}

fn validate(fs: &[Hypergraph], qs: &[Hypergraph]) -> Result<usize, ContainmentError> {
    let r = fs.first().ok_or(ContainmentError::EmptyTuple("fs"))?.r();
    if qs.is_empty() {
        return Err(ContainmentError::EmptyTuple("qs"));
    }
    for (side, tuple) in [("fs", fs), ("qs", qs)] {
        if let Some(index) = tuple.iter().position(|h| h.r() != r) {
            return Err(ContainmentError::UniformityMismatch {
                side,
                index,
                expected: r,
                got: tuple[index].r(),
            });
        }
    }
    if let Some(j) = qs.iter().position(|q| q.edge_count() == 0) {
        return Err(ContainmentError::EdgelessTarget(j));
    }
    Ok(r)
}

/// Isomorphism key for a target; falls back to the index when the
/// hypergraph is too large for a canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum TargetKey {
    Canon(CanonicalKey),
    Index(usize),
}

fn target_keys(qs: &[Hypergraph]) -> Vec<TargetKey> {
    qs.iter()
        .enumerate()
        .map(|(j, q)| match canonical_form(&q.strip_isolated()) {
            Ok(k) => TargetKey::Canon(k),
            Err(_) => TargetKey::Index(j),
        })
        .collect()
}

/// Representative index of each source: the first equal hypergraph.
fn source_classes(fs: &[Hypergraph]) -> Vec<usize> {
    (0..fs.len())
        .map(|i| (0..i).find(|&k| fs[k] == fs[i]).unwrap_or(i))
        .collect()
}

#[derive(Debug, Clone)]
enum Memo {
    Arrows,
    /// Coloring in the sorted-key order of the part.
    NotArrows(ArrowWitness),
    Unknown,
}

struct Oracle<'a> {
    fs: &'a [Hypergraph],
    qs: &'a [Hypergraph],
    keys: Vec<TargetKey>,
    classes: Vec<usize>,
    cfg: SearchConfig,
    has_copy: HashMap<(usize, usize), bool>,
    memo: HashMap<(usize, Vec<TargetKey>), Memo>,
}

enum PartResult {
    Arrows,
    Fails(Refutation),
    Unknown,
}

impl<'a> Oracle<'a> {
    fn new(fs: &'a [Hypergraph], qs: &'a [Hypergraph], cfg: SearchConfig) -> Self {
        Oracle {
            fs,
            qs,
            keys: target_keys(qs),
            classes: source_classes(fs),
            cfg,
            has_copy: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    fn copy_exists(&mut self, i: usize, j: usize) -> bool {
        let ci = self.classes[i];
        let (fs, qs) = (self.fs, self.qs);
        *self
            .has_copy
            .entry((ci, j))
            .or_insert_with(|| contains_copy(&qs[j], &fs[ci]))
    }

    /// Part `A_i` sorted by target key, as positions into `part`.
    fn key_order(&self, part: &[usize]) -> Vec<usize> {
        let mut order: Vec<usize> = (0..part.len()).collect();
        order.sort_by(|&a, &b| self.keys[part[a]].cmp(&self.keys[part[b]]));
        order
    }

    fn decide(&mut self, i: usize, part: &[usize]) -> Result<Memo, ContainmentError> {
        let order = self.key_order(part);
        let key: Vec<TargetKey> = order.iter().map(|&k| self.keys[part[k]].clone()).collect();
        let ci = self.classes[i];
        if let Some(m) = self.memo.get(&(ci, key.clone())) {
            return Ok(m.clone());
        }
        let targets: Vec<Hypergraph> = order.iter().map(|&k| self.qs[part[k]].clone()).collect();
        let inst = ArrowInstance::new(self.fs[ci].clone(), targets)?;
        let m = match arrows(&inst, &self.cfg) {
            ArrowOutcome::Arrows => Memo::Arrows,
            ArrowOutcome::NotArrows(w) => Memo::NotArrows(w),
            ArrowOutcome::Unknown => Memo::Unknown,
        };
        self.memo.insert((ci, key), m.clone());
        Ok(m)
    }

    /// Missing-copy witness: color every edge of `F_i` with the color of
    /// target `part[pos]`.
    fn missing_copy(&mut self, assignment: &[usize], i: usize, part: &[usize]) -> Option<Refutation> {
        let pos = (0..part.len()).find(|&k| !self.copy_exists(i, part[k]))?;
        Some(Refutation {
            assignment: assignment.to_vec(),
            source: i,
            targets: part.to_vec(),
            witness: ArrowWitness {
                colors: vec![pos; self.fs[i].edge_count()],
            },
            by_missing_copy: true,
        })
    }

    fn check_part(
        &mut self,
        assignment: &[usize],
        i: usize,
        part: &[usize],
    ) -> Result<PartResult, ContainmentError> {
        if part.is_empty() {
            return Ok(PartResult::Arrows);
        }
        match self.decide(i, part)? {
            Memo::Arrows => Ok(PartResult::Arrows),
            Memo::Unknown => Ok(PartResult::Unknown),
            Memo::NotArrows(w) => {
                let order = self.key_order(part);
                let colors = w.colors.iter().map(|&c| order[c]).collect();
                Ok(PartResult::Fails(Refutation {
                    assignment: assignment.to_vec(),
                    source: i,
                    targets: part.to_vec(),
                    witness: ArrowWitness { colors },
                    by_missing_copy: false,
                }))
            }
        }
    }

    /// `Ok(None)` if the assignment is a certificate.
    fn evaluate(&mut self, assignment: &[usize]) -> Result<Option<Refutation>, ContainmentError> {
        let s = self.fs.len();
        let parts: Vec<Vec<usize>> = (0..s).map(|i| part_of(assignment, i)).collect();
        for i in 0..s {
            if let Some(rf) = self.missing_copy(assignment, i, &parts[i]) {
                return Ok(Some(rf));
            }
        }
        let mut unknown = false;
        for i in 0..s {
            match self.check_part(assignment, i, &parts[i])? {
                PartResult::Arrows => {}
                PartResult::Fails(rf) => return Ok(Some(rf)),
                PartResult::Unknown => unknown = true,
            }
        }
        if unknown {
            Err(ContainmentError::Unknown)
        } else {
            Ok(None)
        }
    }
}

/// Advance a base-`s` counter whose first digit is most significant.
fn next_assignment(a: &mut [usize], s: usize) -> bool {
    for d in a.iter_mut().rev() {
        *d += 1;
        if *d < s {
            return true;
        }
        *d = 0;
    }
    false
}

/// Search all `s^t` assignments in lexicographic order. Returns the first
/// certificate, or a refutation for every assignment.
pub fn partition_condition(
    fs: &[Hypergraph],
    qs: &[Hypergraph],
    cfg: &SearchConfig,
) -> Result<ContainmentVerdict, ContainmentError> {
    validate(fs, qs)?;
    let mut oracle = Oracle::new(fs, qs, *cfg);
    let mut assignment = vec![0; qs.len()];
    let mut refutations = Vec::new();
    loop {
        match oracle.evaluate(&assignment)? {
            None => {
                return Ok(ContainmentVerdict {
                    holds: true,
                    certificate: Some(PartitionCertificate { assignment }),
                    refutations: Vec::new(),
                })
            }
            Some(rf) => refutations.push(rf),
        }
        if !next_assignment(&mut assignment, fs.len()) {
            break;
        }
    }
    Ok(ContainmentVerdict {
        holds: false,
        certificate: None,
        refutations,
    })
}

/// Re-check a verdict through the arrowing module: every clause of a
/// certificate arrows, and every refutation witness is valid.
pub fn verify_verdict(
    fs: &[Hypergraph],
    qs: &[Hypergraph],
    verdict: &ContainmentVerdict,
    cfg: &SearchConfig,
) -> Result<bool, ContainmentError> {
    if let Some(cert) = &verdict.certificate {
        if cert.assignment.len() != qs.len() || cert.assignment.iter().any(|&i| i >= fs.len()) {
            return Ok(false);
        }
        for (i, f) in fs.iter().enumerate() {
            let part = cert.part(i);
            if part.is_empty() {
                continue;
            }
            let inst = ArrowInstance::new(f.clone(), part.iter().map(|&j| qs[j].clone()).collect())?;
            match arrows(&inst, cfg) {
                ArrowOutcome::Arrows => {}
                ArrowOutcome::NotArrows(_) => return Ok(false),
                ArrowOutcome::Unknown => return Err(ContainmentError::Unknown),
            }
        }
        return Ok(verdict.holds);
    }
    let total = fs.len().checked_pow(qs.len() as u32);
    if verdict.holds || Some(verdict.refutations.len()) != total {
        return Ok(false);
    }
    let mut expected = vec![0; qs.len()];
    for rf in &verdict.refutations {
        if rf.assignment != expected
            || rf.source >= fs.len()
            || rf.targets != part_of(&rf.assignment, rf.source)
        {
            return Ok(false);
        }
        let inst = ArrowInstance::new(
            fs[rf.source].clone(),
            rf.targets.iter().map(|&j| qs[j].clone()).collect(),
        )?;
        if !verify_witness(&inst, &rf.witness) {
            return Ok(false);
        }
        next_assignment(&mut expected, fs.len());
    }
    Ok(true)
}

/// Fast yes/no form of the partition condition, without witnesses.
///
/// Assignments are tried with the most even part sizes first. Results are
/// shared between equal sources and reused monotonically: a failure on a
/// multiset of targets implies failure on every larger multiset, and
/// success on a multiset implies success on every smaller one.
pub fn partition_condition_holds(
    fs: &[Hypergraph],
    qs: &[Hypergraph],
    cfg: &SearchConfig,
) -> Result<bool, ContainmentError> {
    validate(fs, qs)?;
    let (s, t) = (fs.len(), qs.len());
    let mut oracle = Oracle::new(fs, qs, *cfg);

    // Targets as class ids so multisets compare by counts.
    let mut distinct: Vec<TargetKey> = oracle.keys.clone();
    distinct.sort();
    distinct.dedup();
    let kind: Vec<usize> = oracle
        .keys
        .iter()
        .map(|k| distinct.binary_search(k).expect("key is present"))
        .collect();

    let mut assignments = Vec::new();
    let mut a = vec![0; t];
    loop {
        let mut sizes = vec![0; s];
        for &i in &a {
            sizes[i] += 1;
        }
        assignments.push((sizes.into_iter().max().unwrap_or(0), a.clone()));
        if !next_assignment(&mut a, s) {
            break;
        }
    }
    assignments.sort();

    let mut known: Vec<(usize, Vec<usize>, bool)> = Vec::new();
    let counts = |part: &[usize]| {
        let mut c = vec![0; distinct.len()];
        for &j in part {
            c[kind[j]] += 1;
        }
        c
    };
    let infer = |known: &[(usize, Vec<usize>, bool)], ci: usize, c: &[usize]| {
        known.iter().find_map(|(kc, kcounts, value)| {
            if *kc != ci {
                return None;
            }
            let sub = c.iter().zip(kcounts).all(|(x, y)| x <= y);
            let sup = c.iter().zip(kcounts).all(|(x, y)| x >= y);
            match value {
                true if sub => Some(true),
                false if sup => Some(false),
                _ => None,
            }
        })
    };

    let mut unknown = false;
    'outer: for (_, a) in assignments {
        let mut parts: Vec<(usize, Vec<usize>)> = (0..s).map(|i| (i, part_of(&a, i))).collect();
        parts.retain(|(_, p)| !p.is_empty());
        for (i, p) in &parts {
            if p.iter().any(|&j| !oracle.copy_exists(*i, j)) {
                continue 'outer;
            }
        }
        parts.sort_by_key(|(i, p)| (p.len(), *i));
        let mut pending = false;
        for (i, p) in &parts {
            let ci = oracle.classes[*i];
            let c = counts(p);
            let value = match infer(&known, ci, &c) {
                Some(v) => v,
                None => match oracle.decide(*i, p)? {
                    Memo::Arrows => {
                        known.push((ci, c, true));
                        true
                    }
                    Memo::NotArrows(_) => {
                        known.push((ci, c, false));
                        false
                    }
                    Memo::Unknown => {
                        pending = true;
                        continue;
                    }
                },
            };
            if !value {
                continue 'outer;
            }
        }
        if pending {
            unknown = true;
        } else {
            return Ok(true);
        }
    }
    if unknown {
        Err(ContainmentError::Unknown)
    } else {
        Ok(false)
    }
}

/// Indices of hypergraphs outside `X_r ∪ Y_r`.
fn class_violators(hs: &[Hypergraph]) -> Result<Vec<usize>, ContainmentError> {
    let mut out = Vec::new();
    for (j, h) in hs.iter().enumerate() {
        if !classify(h)?.in_either() {
            out.push(j);
        }
    }
    Ok(out)
}

/// Decide `R(fs) ⊆ R(qs)`. Refuses unless every target lies in
/// `X_r ∪ Y_r`, where the partition condition is a characterization.
pub fn containment_decision(
    fs: &[Hypergraph],
    qs: &[Hypergraph],
    cfg: &SearchConfig,
) -> Result<ContainmentVerdict, ContainmentError> {
    validate(fs, qs)?;
    let violators = class_violators(qs)?;
    if !violators.is_empty() {
        return Err(ContainmentError::OutsideClasses { violators });
    }
    partition_condition(fs, qs, cfg)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub equivalent: bool,
    /// `mapping[i] = j` with `F_i ≅ Q_j`, when equivalent.
    pub mapping: Option<Vec<usize>>,
}

/// Ramsey equivalence of two tuples whose members all lie in `X_r ∪ Y_r`
/// and have at least two edges: equivalent iff equal up to reordering and
/// isomorphism.
pub fn equivalence_decision(
    fs: &[Hypergraph],
    qs: &[Hypergraph],
) -> Result<Equivalence, ContainmentError> {
    validate(fs, qs)?;
    for (side, tuple) in [("fs", fs), ("qs", qs)] {
        for (index, h) in tuple.iter().enumerate() {
            if h.edge_count() < 2 {
                return Err(ContainmentError::EquivalenceHypothesis {
                    side,
                    index,
                    reason: "fewer than two edges",
                });
            }
            if !classify(h)?.in_either() {
                return Err(ContainmentError::EquivalenceHypothesis {
                    side,
                    index,
                    reason: "outside X_r ∪ Y_r",
                });
            }
        }
    }
    if fs.len() != qs.len() {
        return Ok(Equivalence {
            equivalent: false,
            mapping: None,
        });
    }
    let fk = target_keys(fs);
    let qk = target_keys(qs);
    let mut used = vec![false; qs.len()];
    let mut mapping = Vec::with_capacity(fs.len());
    for (i, k) in fk.iter().enumerate() {
        let hit = (0..qs.len()).find(|&j| {
            !used[j]
                && match (k, &qk[j]) {
                    (TargetKey::Canon(a), TargetKey::Canon(b)) => a == b,
                    _ => fs[i] == qs[j],
                }
        });
        match hit {
            Some(j) => {
                used[j] = true;
                mapping.push(j);
            }
            None => {
                return Ok(Equivalence {
                    equivalent: false,
                    mapping: None,
                })
            }
        }
    }
    Ok(Equivalence {
        equivalent: true,
        mapping: Some(mapping),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Cor71Item {
    I,
    II,
    III,
}

impl std::str::FromStr for Cor71Item {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "i" => Ok(Cor71Item::I),
            "ii" => Ok(Cor71Item::II),
            "iii" => Ok(Cor71Item::III),
            other => Err(format!("unknown item {other:?}, expected i, ii or iii")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cor71Report {
    pub item: Cor71Item,
    /// `R(K_k, K_k) - 1`, computed for item i only.
    pub q: Option<usize>,
    pub fs: Vec<Hypergraph>,
    pub qs: Vec<Hypergraph>,
    pub verdict: ContainmentVerdict,
    /// No partition exists, so some `G` arrows `fs` but not `qs`.
    pub separated: bool,
}

impl Cor71Report {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "item": self.item,
            "q": self.q,
            "fs": self.fs.iter().map(Hypergraph::to_json).collect::<Vec<_>>(),
            "qs": self.qs.iter().map(Hypergraph::to_json).collect::<Vec<_>>(),
            "separated": self.separated,
            "verdict": self.verdict.to_json(&self.fs),
        })
    }
}

/// Largest host tried when computing `R(K_k, K_k)` for item i.
const COR71_RAMSEY_CAP: usize = 12;

/// Build the tuples of the chosen item and confirm that no partition
/// exists. Item i: `(K_q, K_l)` vs `(K_k, K_k)` with `q = R(K_k,K_k) - 1`;
/// item ii: `(K_{k-1}, K_{k-1}, K_l)` vs `(K_k, K_l)`; item iii:
/// `(K_{k+1}, K_{k-1}, K_l)` vs `(K_k, K_k, K_l)`.
pub fn corollary71_verify(
    item: Cor71Item,
    r: usize,
    k: usize,
    l: usize,
    cfg: &SearchConfig,
) -> Result<Cor71Report, ContainmentError> {
    if !(k > l && l >= r && r >= 2) {
        return Err(ContainmentError::BadParameters(format!(
            "need k > l >= r >= 2, got r = {r}, k = {k}, l = {l}"
        )));
    }
    let kk = |m: usize| {
        Hypergraph::complete(r, m).map_err(|e| ContainmentError::BadParameters(e.to_string()))
    };
    let (q, fs, qs) = match item {
        Cor71Item::I => {
            let found = ramsey_number(&[kk(k)?, kk(k)?], COR71_RAMSEY_CAP, cfg)?;
            let q = found.value - 1;
            (Some(q), vec![kk(q)?, kk(l)?], vec![kk(k)?, kk(k)?])
        }
        Cor71Item::II => (None, vec![kk(k - 1)?, kk(k - 1)?, kk(l)?], vec![kk(k)?, kk(l)?]),
        Cor71Item::III => (
            None,
            vec![kk(k + 1)?, kk(k - 1)?, kk(l)?],
            vec![kk(k)?, kk(k)?, kk(l)?],
        ),
    };
    let verdict = containment_decision(&fs, &qs, cfg)?;
    Ok(Cor71Report {
        item,
        q,
        separated: !verdict.holds,
        fs,
        qs,
        verdict,
    })
}
