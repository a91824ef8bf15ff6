//! The vector-enumeration closure.
//!
//! Basis vectors are indexed by window-reduced words, in creation order. The
//! empty word is index 0 and generates the module. Each live word is
//! processed once: its generator actions are defined (introducing new words
//! as needed), then every relator is traced from it, defining whatever is
//! missing along the way. A nonzero residual is a linear relation among
//! basis vectors; the highest-index word in it is retired and rewritten in
//! terms of the others. Retired words are substituted lazily wherever they
//! are read.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::freealg::{Gen, WindowPolicy, Word};

use super::sparse::{self, IntRow, SparseVec, Term};
use super::EnumerationError;

/// `Σ coeff · word` with positive unit-letter words, acting on the right.
#[derive(Clone, Debug)]
pub(crate) struct Relator {
    pub terms: Vec<(BigRational, Vec<Gen>)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Abort when the live dimension exceeds this.
    pub max_dim: usize,
    /// Abort when a word longer than this would be introduced.
    pub max_len: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_dim: 200_000,
            max_len: 64,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationStats {
    pub words_defined: usize,
    pub coincidences: usize,
    pub definitions: u64,
    pub max_word_len: usize,
    pub final_sweeps: usize,
}

/// Single-owner state of one enumeration.
pub struct EnumerationState {
    ngens: usize,
    pub(crate) words: Vec<Word>,
    index: HashMap<Word, u32>,
    /// `None` for live words; otherwise the word's expression in terms of
    /// strictly lower indices.
    pub(crate) retired: Vec<Option<IntRow>>,
    pub(crate) table: Vec<Vec<Option<IntRow>>>,
    /// Next word to process.
    pub(crate) cursor: usize,
    live: usize,
    pub(crate) stats: EnumerationStats,
    policy: WindowPolicy<BigRational>,
    budget: Budget,
}

impl EnumerationState {
    pub(crate) fn new(policy: WindowPolicy<BigRational>, budget: Budget) -> Self {
        let ngens = policy.num_generators();
        let mut st = EnumerationState {
            ngens,
            words: Vec::new(),
            index: HashMap::new(),
            retired: Vec::new(),
            table: Vec::new(),
            cursor: 0,
            live: 0,
            stats: EnumerationStats::default(),
            policy,
            budget,
        };
        st.intern(Word::identity())
            .expect("identity fits any budget");
        st
    }

    pub fn live_dimension(&self) -> usize {
        self.live
    }

    pub fn definitions(&self) -> u64 {
        self.stats.definitions
    }

    pub fn frontier(&self) -> usize {
        self.words.len() - self.cursor
    }

    pub(crate) fn is_live(&self, i: u32) -> bool {
        self.retired[i as usize].is_none()
    }

    fn budget_error(&self) -> EnumerationError {
        EnumerationError::BudgetExceeded {
            live_dimension: self.live,
            frontier: self.frontier(),
        }
    }

    fn intern(&mut self, w: Word) -> Result<u32, EnumerationError> {
        if let Some(&i) = self.index.get(&w) {
            return Ok(i);
        }
        if w.len() > self.budget.max_len || self.live >= self.budget.max_dim {
            return Err(self.budget_error());
        }
        let i = self.words.len() as u32;
        self.stats.max_word_len = self.stats.max_word_len.max(w.len());
        self.index.insert(w.clone(), i);
        self.words.push(w);
        self.retired.push(None);
        self.table.push(vec![None; self.ngens]);
        self.live += 1;
        self.stats.words_defined += 1;
        Ok(i)
    }

    /// Rewrites retired indices of `v` until only live ones remain.
    pub(crate) fn normalize(&mut self, v: &IntRow) -> IntRow {
        if v.nums.iter().all(|(i, _)| self.is_live(*i)) {
            return v.clone();
        }
        let mut live = Vec::with_capacity(v.nums.len());
        let mut dead = Vec::new();
        for (i, n) in &v.nums {
            if self.is_live(*i) {
                live.push((*i, n.clone()));
            } else {
                self.resolve(*i);
                dead.push((*i, n));
            }
        }
        let live = IntRow {
            den: v.den.clone(),
            nums: live,
        };
        let mut terms = vec![Term::int(BigInt::one(), &live)];
        for (i, n) in dead {
            terms.push(Term {
                num: n.clone(),
                den: v.den.clone(),
                row: self.retired[i as usize].as_ref().unwrap(),
            });
        }
        sparse::combine_int(self.words.len(), &terms)
    }

    /// Makes the stored expression of retired word `root` live-supported,
    /// compressing every retired expression it passes through.
    fn resolve(&mut self, root: u32) {
        let mut stack = vec![root];
        while let Some(&i) = stack.last() {
            let expr = self.retired[i as usize].as_ref().unwrap();
            let dirty_child = expr
                .nums
                .iter()
                .map(|(j, _)| *j)
                .find(|&j| !self.is_live(j) && !self.is_clean(j));
            if let Some(j) = dirty_child {
                stack.push(j);
                continue;
            }
            stack.pop();
            if self.is_clean(i) {
                continue;
            }
            let expr = self.retired[i as usize].take().unwrap();
            let (live, dead): (Vec<_>, Vec<_>) = expr
                .nums
                .iter()
                .cloned()
                .partition(|(j, _)| self.retired[*j as usize].is_none());
            let live = IntRow {
                den: expr.den.clone(),
                nums: live,
            };
            let mut terms = vec![Term::int(BigInt::one(), &live)];
            for (j, n) in dead {
                terms.push(Term {
                    num: n,
                    den: expr.den.clone(),
                    row: self.retired[j as usize].as_ref().unwrap(),
                });
            }
            let clean = sparse::combine_int(self.words.len(), &terms);
            self.retired[i as usize] = Some(clean);
        }
    }

    fn is_clean(&self, i: u32) -> bool {
        self.retired[i as usize]
            .as_ref()
            .unwrap()
            .nums
            .iter()
            .all(|(j, _)| self.is_live(*j))
    }

    /// Defines `e_w · g` from the word `w g` if not yet defined.
    fn define(&mut self, w: u32, g: Gen) -> Result<(), EnumerationError> {
        if self.table[w as usize][g as usize].is_some() {
            return Ok(());
        }
        let product = self.words[w as usize].mul(&Word::gen(g));
        let reduced = self.policy.reduce_word(&(), product);
        let mut parts = Vec::with_capacity(reduced.len());
        for (word, c) in reduced.terms() {
            let idx = self.intern(word.clone())?;
            parts.push((idx, c.clone()));
        }
        let v = IntRow::from_sparse(&sparse::collect(parts));
        let v = self.normalize(&v);
        self.table[w as usize][g as usize] = Some(v);
        self.stats.definitions += 1;
        Ok(())
    }

    /// Makes `e_w · g` defined and live-supported.
    fn prepare(&mut self, w: u32, g: Gen) -> Result<(), EnumerationError> {
        self.define(w, g)?;
        let row = self.table[w as usize][g as usize].as_ref().unwrap();
        if row.nums.iter().any(|(i, _)| !self.is_live(*i)) {
            let raw = self.table[w as usize][g as usize].take().unwrap();
            let v = self.normalize(&raw);
            self.table[w as usize][g as usize] = Some(v);
        }
        Ok(())
    }

    /// `v · g`, defining missing entries.
    fn apply(&mut self, v: &IntRow, g: Gen) -> Result<IntRow, EnumerationError> {
        let v = self.normalize(v);
        for (i, _) in &v.nums {
            self.prepare(*i, g)?;
        }
        // preparing may intern words but never retires any
        let terms: Vec<Term<'_>> = v
            .nums
            .iter()
            .map(|(i, n)| Term {
                num: n.clone(),
                den: v.den.clone(),
                row: self.table[*i as usize][g as usize].as_ref().unwrap(),
            })
            .collect();
        Ok(sparse::combine_int(self.words.len(), &terms))
    }

    fn eval_relator(&mut self, w: u32, rel: &Relator) -> Result<IntRow, EnumerationError> {
        let mut images = Vec::with_capacity(rel.terms.len());
        for (_, letters) in &rel.terms {
            let mut v = IntRow::unit(w);
            for &g in letters {
                v = self.apply(&v, g)?;
                if v.is_empty() {
                    break;
                }
            }
            images.push(v);
        }
        let terms: Vec<Term<'_>> = rel
            .terms
            .iter()
            .zip(&images)
            .map(|((c, _), v)| Term::rational(c, v))
            .collect();
        let r = sparse::combine_int(self.words.len(), &terms);
        Ok(self.normalize(&r))
    }

    /// Imposes `residual = 0`, cascading through the table.
    fn coincidence(&mut self, residual: IntRow) -> Result<(), EnumerationError> {
        let mut queue = vec![residual];
        while let Some(v) = queue.pop() {
            let mut v = self.normalize(&v);
            let Some((h, nh)) = v.nums.pop() else {
                continue;
            };
            // e_h = −(rest)/nh
            let expr = IntRow::normalized(-nh, v.nums);
            self.retired[h as usize] = Some(expr.clone());
            self.live -= 1;
            self.stats.coincidences += 1;
            let row = std::mem::take(&mut self.table[h as usize]);
            self.table[h as usize] = vec![None; self.ngens];
            for (g, entry) in row.into_iter().enumerate() {
                if let Some(u) = entry {
                    let image = self.apply(&expr, g as Gen)?;
                    let minus_one = -BigInt::one();
                    let diff = sparse::combine_int(
                        self.words.len(),
                        &[Term::int(BigInt::one(), &image), Term::int(minus_one, &u)],
                    );
                    queue.push(diff);
                }
            }
        }
        Ok(())
    }

    fn process(&mut self, w: u32, relators: &[Relator]) -> Result<(), EnumerationError> {
        for g in 0..self.ngens as Gen {
            if !self.is_live(w) {
                return Ok(());
            }
            self.define(w, g)?;
        }
        for rel in relators {
            if !self.is_live(w) {
                return Ok(());
            }
            let r = self.eval_relator(w, rel)?;
            if !r.is_empty() {
                self.coincidence(r)?;
            }
        }
        Ok(())
    }

    /// Runs to closure: every live word processed, the table total on live
    /// words, and every relator vanishing on every live word.
    pub(crate) fn run(
        &mut self,
        relators: &[Relator],
        mut on_progress: impl FnMut(&Self) -> Result<(), EnumerationError>,
    ) -> Result<(), EnumerationError> {
        loop {
            while self.cursor < self.words.len() {
                let w = self.cursor as u32;
                if self.is_live(w) {
                    self.process(w, relators)?;
                    if self.live > self.budget.max_dim {
                        return Err(self.budget_error());
                    }
                }
                self.cursor += 1;
                on_progress(self)?;
            }
            // final sweep over everything
            self.stats.final_sweeps += 1;
            let before = (self.words.len(), self.stats.coincidences);
            for w in 0..self.words.len() as u32 {
                if !self.is_live(w) {
                    continue;
                }
                for g in 0..self.ngens as Gen {
                    if self.is_live(w) {
                        self.prepare(w, g)?;
                    }
                }
                for rel in relators {
                    if !self.is_live(w) {
                        break;
                    }
                    let r = self.eval_relator(w, rel)?;
                    if !r.is_empty() {
                        self.coincidence(r)?;
                    }
                }
            }
            if (self.words.len(), self.stats.coincidences) == before {
                return Ok(());
            }
        }
    }

    /// Live words in index order and, per generator, the action matrix rows
    /// re-indexed to positions in that list.
    pub(crate) fn finish(&mut self) -> (Vec<Word>, Vec<Vec<SparseVec>>) {
        let live: Vec<u32> = (0..self.words.len() as u32)
            .filter(|&i| self.is_live(i))
            .collect();
        let mut position = vec![u32::MAX; self.words.len()];
        for (p, &i) in live.iter().enumerate() {
            position[i as usize] = p as u32;
        }
        let mut rows = vec![Vec::with_capacity(live.len()); self.ngens];
        for &i in &live {
            for (g, row) in rows.iter_mut().enumerate() {
                let v = self.table[i as usize][g]
                    .clone()
                    .expect("closed table is total");
                let v = self.normalize(&v).to_sparse();
                let mut mapped: SparseVec = v
                    .into_iter()
                    .map(|(j, c)| (position[j as usize], c))
                    .collect();
                mapped.sort_unstable_by_key(|(j, _)| *j);
                row.push(mapped);
            }
        }
        let basis = live
            .iter()
            .map(|&i| self.words[i as usize].clone())
            .collect();
        (basis, rows)
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// Replaces the budget, e.g. to raise it on a restored checkpoint.
    pub fn set_budget(&mut self, budget: Budget) {
        self.budget = budget;
    }

    pub(crate) fn from_parts(
        policy: WindowPolicy<BigRational>,
        budget: Budget,
        words: Vec<Word>,
        retired: Vec<Option<IntRow>>,
        table: Vec<Vec<Option<IntRow>>>,
        cursor: usize,
        stats: EnumerationStats,
    ) -> Self {
        let ngens = policy.num_generators();
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as u32))
            .collect();
        let live = retired.iter().filter(|r| r.is_none()).count();
        EnumerationState {
            ngens,
            words,
            index,
            retired,
            table,
            cursor,
            live,
            stats,
            policy,
            budget,
        }
    }
}
