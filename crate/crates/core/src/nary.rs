//! Finite n-ary groups: evaluation, axiom checks, equation solving,
//! retracts and translates of subsets.
//!
//! Slots are 1-based throughout, matching the usual notation
//! `f(x_1, ..., x_n)`: slot `i` has a prefix of length `i - 1` and a suffix
//! of length `n - i`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::presentation::HGPresentation;
use crate::report::{VerificationReport, Witness};
use crate::set::ElementSet;
use crate::{par_map, Element};

/// Largest table (in entries) a table-backed group may hold.
pub const TABLE_LIMIT: u64 = 10_000_000;

/// Limits shared by the exhaustive and sampled checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    /// Largest instance count an exhaustive check may enumerate.
    pub budget: u64,
    /// Number of random instances drawn by sampled checks.
    pub samples: u64,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            budget: 10_000_000,
            samples: 1_000_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssocStrategy {
    /// Exhaustive when in budget, else certificate when a valid presentation
    /// is attached, else sampled with `CheckConfig::samples` tuples.
    Auto,
    Exhaustive,
    Sampled(u64),
    Certificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerificationStatus {
    Unchecked,
    VerifiedExhaustive,
    VerifiedCertificate,
    VerifiedSampled(u64),
}

/// A finite n-ary operation on `0..size`, backed by a flat table in
/// row-major tuple order, by a Hosszu-Gloskin presentation, or by both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteNaryGroup {
    arity: usize,
    size: usize,
    table: Option<Vec<Element>>,
    presentation: Option<Box<HGPresentation>>,
    status: VerificationStatus,
    names: Option<Vec<String>>,
}

fn table_entries(size: usize, arity: usize) -> u128 {
    (size as u128).saturating_pow(arity as u32)
}

impl FiniteNaryGroup {
    pub fn from_table(arity: usize, size: usize, table: Vec<Element>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidTable(format!("arity must be at least 2, got {arity}")));
        }
        if size == 0 {
            return Err(Error::InvalidTable("carrier must be non-empty".into()));
        }
        let entries = table_entries(size, arity);
        if entries > TABLE_LIMIT as u128 {
            return Err(Error::InvalidTable(format!(
                "{size}^{arity} entries exceed the table limit {TABLE_LIMIT}; use a presentation"
            )));
        }
        if table.len() as u128 != entries {
            return Err(Error::InvalidTable(format!(
                "table for size {size} and arity {arity} needs {entries} entries, found {}",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= size) {
            return Err(Error::OutOfRange { element: bad, size });
        }
        Ok(FiniteNaryGroup {
            arity,
            size,
            table: Some(table),
            presentation: None,
            status: VerificationStatus::Unchecked,
            names: None,
        })
    }

    /// Tabulates `op` over every n-tuple.
    pub fn from_fn(arity: usize, size: usize, op: impl Fn(&[Element]) -> Element) -> Result<Self> {
        let entries = table_entries(size, arity);
        if arity < 2 || size == 0 || entries > TABLE_LIMIT as u128 {
            return FiniteNaryGroup::from_table(arity, size, Vec::new());
        }
        let mut table = Vec::with_capacity(entries as usize);
        let mut xs = vec![0; arity];
        loop {
            table.push(op(&xs));
            if !odometer(&mut xs, size) {
                break;
            }
        }
        FiniteNaryGroup::from_table(arity, size, table)
    }

    /// Presentation-backed group; the caller has validated `p`.
    pub(crate) fn from_presentation(p: HGPresentation) -> Self {
        FiniteNaryGroup {
            arity: p.arity(),
            size: p.base().size(),
            table: None,
            names: p.base().names().map(<[String]>::to_vec),
            presentation: Some(Box::new(p)),
            status: VerificationStatus::Unchecked,
        }
    }

    /// Adds a materialized table next to the presentation, when it fits.
    pub fn with_table(mut self) -> Result<Self> {
        if self.table.is_none() {
            let t = FiniteNaryGroup::from_fn(self.arity, self.size, |xs| self.eval_unchecked(xs))?;
            self.table = t.table;
        }
        Ok(self)
    }

    /// Drops the presentation, keeping only the table.
    pub fn without_presentation(mut self) -> Result<Self> {
        self = self.with_table()?;
        self.presentation = None;
        Ok(self)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        if names.len() == self.size {
            self.names = Some(names);
        }
        self
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self) -> Option<&[Element]> {
        self.table.as_deref()
    }

    pub fn presentation(&self) -> Option<&HGPresentation> {
        self.presentation.as_deref()
    }

    pub fn status(&self) -> VerificationStatus {
        self.status
    }

    pub fn is_verified(&self) -> bool {
        self.status != VerificationStatus::Unchecked
    }

    fn check_element(&self, e: Element) -> Result<()> {
        if e >= self.size {
            return Err(Error::OutOfRange {
                element: e,
                size: self.size,
            });
        }
        Ok(())
    }

    fn check_slot(&self, slot: usize, prefix: &[Element], suffix: &[Element]) -> Result<()> {
        if slot == 0 || slot > self.arity {
            return Err(Error::Slot {
                slot,
                arity: self.arity,
            });
        }
        if prefix.len() != slot - 1 {
            return Err(Error::Arity {
                expected: slot - 1,
                found: prefix.len(),
            });
        }
        if suffix.len() != self.arity - slot {
            return Err(Error::Arity {
                expected: self.arity - slot,
                found: suffix.len(),
            });
        }
        prefix.iter().chain(suffix).try_for_each(|&e| self.check_element(e))
    }

    /// `f(x_1, ..., x_n)`.
    pub fn eval(&self, xs: &[Element]) -> Result<Element> {
        if xs.len() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                found: xs.len(),
            });
        }
        xs.iter().try_for_each(|&e| self.check_element(e))?;
        Ok(self.eval_unchecked(xs))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, xs: &[Element]) -> Element {
        match (&self.table, &self.presentation) {
            (Some(t), _) => t[xs.iter().fold(0, |acc, &x| acc * self.size + x)],
            (None, Some(p)) => p.eval_unchecked(xs),
            (None, None) => unreachable!("operation has a backing"),
        }
    }

    /// Evaluates with `x` substituted at `slot` between `prefix` and `suffix`.
    fn eval_slot(&self, buf: &mut Vec<Element>, prefix: &[Element], x: Element, suffix: &[Element]) -> Element {
        buf.clear();
        buf.extend_from_slice(prefix);
        buf.push(x);
        buf.extend_from_slice(suffix);
        self.eval_unchecked(buf)
    }

    /// Associativity: the n ways of nesting one inner application inside a
    /// (2n-1)-tuple agree, for every pair of positions `i < j`.
    pub fn check_associativity(&self, strategy: AssocStrategy, cfg: &CheckConfig) -> Result<VerificationReport> {
        let start = Instant::now();
        let tuples = table_entries(self.size, 2 * self.arity - 1);
        let strategy = match strategy {
            AssocStrategy::Auto if tuples <= cfg.budget as u128 => AssocStrategy::Exhaustive,
            AssocStrategy::Auto if self.presentation.as_ref().is_some_and(|p| p.is_valid()) => {
                AssocStrategy::Certificate
            }
            AssocStrategy::Auto => AssocStrategy::Sampled(cfg.samples),
            s => s,
        };
        let mut report = VerificationReport::new(self.subject(), "associativity");
        match strategy {
            AssocStrategy::Exhaustive => {
                if tuples > cfg.budget as u128 {
                    return Err(Error::BudgetExceeded {
                        required: tuples,
                        budget: cfg.budget,
                    });
                }
                self.associativity_exhaustive(&mut report);
            }
            AssocStrategy::Certificate => {
                let p = self.presentation.as_ref().ok_or(Error::NoPresentation)?;
                let v = p.validate();
                if v.failed() {
                    return Err(Error::InvalidPresentation(v.to_string()));
                }
                report.note("certified by a valid Hosszu-Gloskin presentation; no enumeration");
            }
            AssocStrategy::Sampled(k) => self.associativity_sampled(&mut report, k, cfg.seed),
            AssocStrategy::Auto => unreachable!(),
        }
        Ok(report.with_elapsed(start.elapsed()))
    }

    fn pair_count(&self) -> u64 {
        (self.arity * (self.arity - 1) / 2) as u64
    }

    /// Returns the least pair `(i, j)` (1-based) whose nestings disagree.
    fn associativity_violation(&self, xs: &[Element], buf: &mut Vec<Element>, vals: &mut Vec<Element>) -> Option<(usize, usize)> {
        let n = self.arity;
        vals.clear();
        for i in 0..n {
            let inner = self.eval_unchecked(&xs[i..i + n]);
            vals.push(self.eval_slot(buf, &xs[..i], inner, &xs[i + n..]));
        }
        for i in 0..n {
            for j in i + 1..n {
                if vals[i] != vals[j] {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }

    fn associativity_exhaustive(&self, report: &mut VerificationReport) {
        let len = 2 * self.arity - 1;
        let pairs = self.pair_count();
        // Partition on the first coordinate; chunks stop at their first
        // failure and are merged in order, so the reported counterexample is
        // the lexicographically least one.
        let chunks = par_map(0..self.size, |first| {
            let mut xs = vec![0; len];
            xs[0] = first;
            let (mut buf, mut vals) = (Vec::new(), Vec::new());
            let mut checked = 0u64;
            loop {
                checked += pairs;
                if let Some((i, j)) = self.associativity_violation(&xs, &mut buf, &mut vals) {
                    let mut w = vec![i, j];
                    w.extend_from_slice(&xs);
                    return (checked, Some(w));
                }
                if !odometer(&mut xs[1..], self.size) {
                    return (checked, None);
                }
            }
        });
        let mut witness = None;
        for (checked, w) in chunks {
            report.instances += checked;
            if witness.is_none() {
                witness = w;
            }
        }
        if let Some(w) = witness {
            report.record_failure(Witness::new("(i, j, x_1..x_{2n-1})", w));
        }
    }

    fn associativity_sampled(&self, report: &mut VerificationReport, k: u64, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut xs = vec![0; 2 * self.arity - 1];
        let (mut buf, mut vals) = (Vec::new(), Vec::new());
        for _ in 0..k {
            xs.iter_mut().for_each(|x| *x = rng.gen_range(0..self.size));
            report.instances += self.pair_count();
            if let Some((i, j)) = self.associativity_violation(&xs, &mut buf, &mut vals) {
                let mut w = vec![i, j];
                w.extend_from_slice(&xs);
                report.record_failure(Witness::new("(i, j, x_1..x_{2n-1})", w));
                break;
            }
        }
        report.note(format!("{k} random tuples"));
        report.mark_probabilistic(seed);
    }

    /// Unique solvability, exhaustively: for every slot and coefficient
    /// tuple, `x -> f(prefix, x, suffix)` must hit every target exactly once.
    pub fn check_unique_solvability(&self, cfg: &CheckConfig) -> Result<VerificationReport> {
        let required = table_entries(self.size, self.arity) * self.arity as u128;
        if required > cfg.budget as u128 {
            return Err(Error::BudgetExceeded {
                required,
                budget: cfg.budget,
            });
        }
        let start = Instant::now();
        let mut report = VerificationReport::new(self.subject(), "unique-solvability");
        let mut violations = 0u64;
        let mut coeffs = vec![0; self.arity - 1];
        let mut scratch = SolveScratch::new(self.size);
        for slot in 1..=self.arity {
            coeffs.fill(0);
            loop {
                report.instances += self.size as u64;
                violations += self.solvability_violations(slot, &coeffs, &mut scratch, &mut report);
                if !odometer(&mut coeffs, self.size) {
                    break;
                }
            }
        }
        if violations > 0 {
            report.note(format!("{violations} targets with zero or several solutions"));
        }
        Ok(report.with_elapsed(start.elapsed()))
    }

    /// Unique solvability on `k` random (slot, coefficient) choices.
    pub fn check_unique_solvability_sampled(&self, k: u64, seed: u64) -> VerificationReport {
        let start = Instant::now();
        let mut report = VerificationReport::new(self.subject(), "unique-solvability");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut coeffs = vec![0; self.arity - 1];
        let mut scratch = SolveScratch::new(self.size);
        let mut violations = 0;
        for _ in 0..k {
            let slot = rng.gen_range(1..=self.arity);
            coeffs.iter_mut().for_each(|c| *c = rng.gen_range(0..self.size));
            report.instances += self.size as u64;
            violations += self.solvability_violations(slot, &coeffs, &mut scratch, &mut report);
        }
        if violations > 0 {
            report.note(format!("{violations} targets with zero or several solutions"));
        }
        report.note(format!("{k} random coefficient tuples"));
        report.mark_probabilistic(seed);
        report.with_elapsed(start.elapsed())
    }

    fn solvability_violations(&self, slot: usize, coeffs: &[Element], s: &mut SolveScratch, report: &mut VerificationReport) -> u64 {
        let (prefix, suffix) = coeffs.split_at(slot - 1);
        s.counts.fill(0);
        for x in 0..self.size {
            let y = self.eval_slot(&mut s.buf, prefix, x, suffix);
            s.counts[y] += 1;
        }
        let mut violations = 0;
        for (target, &c) in s.counts.iter().enumerate() {
            if c != 1 {
                violations += 1;
                if report.witnesses().is_empty() {
                    let mut w = vec![slot];
                    w.extend_from_slice(coeffs);
                    w.push(target);
                    w.push(c);
                    report.record_failure(Witness::new("(slot, coefficients.., target, solutions)", w));
                }
            }
        }
        violations
    }

    /// Runs the axiom checks and, when both pass, upgrades the status.
    pub fn verify(&mut self, cfg: &CheckConfig) -> Result<Vec<VerificationReport>> {
        let assoc = self.check_associativity(AssocStrategy::Auto, cfg)?;
        let certified = self.presentation.as_ref().is_some_and(|p| p.is_valid());
        let solv = match self.check_unique_solvability(cfg) {
            Ok(r) => r,
            Err(Error::BudgetExceeded { .. }) if certified => {
                let mut r = VerificationReport::new(self.subject(), "unique-solvability");
                r.note("certified by a valid Hosszu-Gloskin presentation; no enumeration");
                r
            }
            Err(Error::BudgetExceeded { .. }) => self.check_unique_solvability_sampled(cfg.samples, cfg.seed),
            Err(e) => return Err(e),
        };
        if self.status == VerificationStatus::Unchecked && !assoc.failed() && !solv.failed() {
            self.status = if assoc.seed.is_some() || solv.seed.is_some() {
                VerificationStatus::VerifiedSampled(cfg.samples)
            } else if assoc.instances == 0 || solv.instances == 0 {
                VerificationStatus::VerifiedCertificate
            } else {
                VerificationStatus::VerifiedExhaustive
            };
        }
        Ok(vec![assoc, solv])
    }

    /// The unique `x` with `f(prefix, x, suffix) = target`.
    pub fn solve(&self, slot: usize, prefix: &[Element], suffix: &[Element], target: Element) -> Result<Element> {
        self.check_slot(slot, prefix, suffix)?;
        self.check_element(target)?;
        let mut buf = Vec::with_capacity(self.arity);
        let mut found = None;
        let mut count = 0;
        for x in 0..self.size {
            if self.eval_slot(&mut buf, prefix, x, suffix) == target {
                count += 1;
                found.get_or_insert(x);
            }
        }
        match (found, count) {
            (Some(x), 1) => Ok(x),
            (None, _) => Err(Error::NoSolution { slot, target }),
            (Some(_), count) => Err(Error::MultipleSolutions { slot, target, count }),
        }
    }

    /// The retract over `a`: `x . y = f(x, a, ..., a, y)` with `n - 2` copies of `a`.
    pub fn retract(&self, a: Element) -> Result<FiniteGroup> {
        self.check_element(a)?;
        let n = self.arity;
        let group = FiniteGroup::from_fn(self.size, |x, y| {
            let mut args = vec![a; n];
            args[0] = x;
            args[n - 1] = y;
            self.eval_unchecked(&args)
        })?;
        Ok(match &self.names {
            Some(names) => group.with_names(names.clone()),
            None => group,
        })
    }

    /// `{ f(prefix, a, suffix) : a in set }`.
    pub fn translate(&self, slot: usize, prefix: &[Element], suffix: &[Element], set: &ElementSet) -> Result<ElementSet> {
        self.check_slot(slot, prefix, suffix)?;
        if set.universe() != self.size {
            return Err(Error::InvalidTable(format!(
                "subset of a carrier of size {} used with a group of size {}",
                set.universe(),
                self.size
            )));
        }
        let mut buf = Vec::with_capacity(self.arity);
        let mut out = ElementSet::empty(self.size);
        for a in set.iter() {
            out.insert(self.eval_slot(&mut buf, prefix, a, suffix));
        }
        Ok(out)
    }

    /// Compares two operations on the same carrier tuple by tuple:
    /// exhaustively when `size^n <= cfg.budget`, else on `cfg.samples`
    /// random tuples.
    pub fn compare_pointwise(&self, other: &FiniteNaryGroup, cfg: &CheckConfig) -> Result<VerificationReport> {
        if self.arity != other.arity || self.size != other.size {
            return Err(Error::Arity {
                expected: self.arity,
                found: other.arity,
            });
        }
        let start = Instant::now();
        let mut report = VerificationReport::new(self.subject(), "pointwise agreement");
        let mut xs = vec![0; self.arity];
        let differs = |xs: &[Element], report: &mut VerificationReport| {
            report.instances += 1;
            let differ = self.eval_unchecked(xs) != other.eval_unchecked(xs);
            if differ {
                report.record_failure(Witness::new("tuple", xs.to_vec()));
            }
            differ
        };
        if table_entries(self.size, self.arity) <= cfg.budget as u128 {
            while !differs(&xs, &mut report) && odometer(&mut xs, self.size) {}
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for _ in 0..cfg.samples {
                xs.iter_mut().for_each(|x| *x = rng.gen_range(0..self.size));
                if differs(&xs, &mut report) {
                    break;
                }
            }
            report.mark_probabilistic(cfg.seed);
        }
        Ok(report.with_elapsed(start.elapsed()))
    }

    fn subject(&self) -> String {
        format!("{}-ary group of order {}", self.arity, self.size)
    }
}

struct SolveScratch {
    counts: Vec<usize>,
    buf: Vec<Element>,
}

impl SolveScratch {
    fn new(size: usize) -> Self {
        SolveScratch {
            counts: vec![0; size],
            buf: Vec::new(),
        }
    }
}

/// Advances `xs` as a little-endian-last counter in base `radix`
/// (the last coordinate moves fastest). Returns false after wrapping.
pub(crate) fn odometer(xs: &mut [Element], radix: usize) -> bool {
    for x in xs.iter_mut().rev() {
        *x += 1;
        if *x < radix {
            return true;
        }
        *x = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn e1() -> FiniteNaryGroup {
        FiniteNaryGroup::from_fn(3, 2, |x| (x[0] + x[1] + x[2]) % 2).unwrap()
    }

    fn e2() -> FiniteNaryGroup {
        FiniteNaryGroup::from_fn(3, 4, |x| (x[0] + x[1] + x[2] + 2) % 4).unwrap()
    }

    fn e3() -> FiniteNaryGroup {
        FiniteNaryGroup::from_fn(3, 3, |x| (x[0] + 2 * x[1] + x[2]) % 3).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(e1().eval(&[1, 1, 1]).unwrap(), 1);
        assert_eq!(e2().eval(&[0, 0, 0]).unwrap(), 2);
        assert_eq!(e3().eval(&[0, 1, 0]).unwrap(), 2);
    }

    #[test]
    fn eval_rejects_bad_input() {
        assert_eq!(e1().eval(&[1, 1]), Err(Error::Arity { expected: 3, found: 2 }));
        assert_eq!(e1().eval(&[1, 2, 0]), Err(Error::OutOfRange { element: 2, size: 2 }));
    }

    #[test]
    fn table_shape_is_checked() {
        assert!(matches!(FiniteNaryGroup::from_table(3, 2, vec![0; 7]), Err(Error::InvalidTable(_))));
        assert!(matches!(FiniteNaryGroup::from_table(3, 2, vec![2; 8]), Err(Error::OutOfRange { .. })));
        assert!(matches!(FiniteNaryGroup::from_table(1, 2, vec![0, 1]), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn exhaustive_associativity_counts() {
        let cfg = CheckConfig::default();
        let r = e1().check_associativity(AssocStrategy::Exhaustive, &cfg).unwrap();
        assert_eq!(r.status(), Status::Pass);
        assert_eq!(r.instances, 96);

        let trivial = FiniteNaryGroup::from_table(3, 1, vec![0]).unwrap();
        let r = trivial.check_associativity(AssocStrategy::Exhaustive, &cfg).unwrap();
        assert_eq!(r.status(), Status::Pass);
        assert_eq!(r.instances, 3);
    }

    #[test]
    fn corrupted_cell_gives_counterexample() {
        let mut table = e2().table().unwrap().to_vec();
        table[0] = 3; // f(0,0,0) was 2
        let g = FiniteNaryGroup::from_table(3, 4, table).unwrap();
        let r = g.check_associativity(AssocStrategy::Exhaustive, &CheckConfig::default()).unwrap();
        assert!(r.failed());
        let w = &r.witnesses()[0].values;
        let (i, j, xs) = (w[0], w[1], &w[2..]);
        // Recompute the two nestings independently.
        let nest = |p: usize| {
            let inner = g.eval(&xs[p - 1..p + 2]).unwrap();
            let mut outer = xs[..p - 1].to_vec();
            outer.push(inner);
            outer.extend_from_slice(&xs[p + 2..]);
            g.eval(&outer).unwrap()
        };
        assert_ne!(nest(i), nest(j));
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = CheckConfig { budget: 10, ..CheckConfig::default() };
        assert!(matches!(
            e1().check_associativity(AssocStrategy::Exhaustive, &cfg),
            Err(Error::BudgetExceeded { required: 32, budget: 10 })
        ));
        assert!(matches!(e1().check_associativity(AssocStrategy::Certificate, &cfg), Err(Error::NoPresentation)));
        let r = e1().check_associativity(AssocStrategy::Auto, &cfg).unwrap();
        assert_eq!(r.status(), Status::ProbabilisticPass);
        assert_eq!(r.seed, Some(0));
    }

    #[test]
    fn sampled_check_is_deterministic() {
        let cfg = CheckConfig::default();
        let a = e3().check_associativity(AssocStrategy::Sampled(500), &cfg).unwrap();
        let b = e3().check_associativity(AssocStrategy::Sampled(500), &cfg).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.instances, 1500);
    }

    #[test]
    fn unique_solvability() {
        let cfg = CheckConfig::default();
        let r = e1().check_unique_solvability(&cfg).unwrap();
        assert_eq!(r.status(), Status::Pass);
        assert_eq!(r.instances, 3 * 4 * 2);
        assert!(e3().check_unique_solvability(&cfg).unwrap().passed());

        let product = FiniteNaryGroup::from_fn(3, 2, |x| x[0] * x[1] * x[2]).unwrap();
        let r = product.check_unique_solvability(&cfg).unwrap();
        assert!(r.failed());
        assert!(product.solve(2, &[0], &[0], 1).is_err());
    }

    #[test]
    fn solve_examples() {
        assert_eq!(e2().solve(2, &[1], &[3], 0).unwrap(), 2);
        assert_eq!(e1().solve(1, &[], &[0, 0], 1).unwrap(), 1);
        assert_eq!(e3().solve(2, &[0], &[0], 2).unwrap(), 1);
    }

    #[test]
    fn solve_reports_non_unique() {
        let product = FiniteNaryGroup::from_fn(3, 2, |x| x[0] * x[1] * x[2]).unwrap();
        assert_eq!(product.solve(2, &[0], &[0], 1), Err(Error::NoSolution { slot: 2, target: 1 }));
        assert_eq!(
            product.solve(2, &[0], &[0], 0),
            Err(Error::MultipleSolutions { slot: 2, target: 0, count: 2 })
        );
        assert!(matches!(e1().solve(4, &[0, 0, 0], &[], 0), Err(Error::Slot { .. })));
        assert!(matches!(e1().solve(2, &[], &[0], 0), Err(Error::Arity { .. })));
    }

    #[test]
    fn retract_examples() {
        let r = e1().retract(0).unwrap();
        assert_eq!(r.table(), FiniteGroup::cyclic(2).table());

        let r = e2().retract(0).unwrap();
        assert_eq!(r.identity(), 2);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(r.op(x, y), (x + y + 2) % 4);
            }
        }

        let r = e3().retract(0).unwrap();
        assert_eq!(r.table(), FiniteGroup::cyclic(3).table());
        assert_eq!(r.identity(), 0);
    }

    #[test]
    fn binary_case_is_an_ordinary_group() {
        let z5 = FiniteNaryGroup::from_fn(2, 5, |x| (x[0] + x[1]) % 5).unwrap();
        let mut z5c = z5.clone();
        z5c.verify(&CheckConfig::default()).unwrap();
        assert_eq!(z5c.status(), VerificationStatus::VerifiedExhaustive);
        assert_eq!(z5.retract(3).unwrap().table(), FiniteGroup::cyclic(5).table());
    }

    #[test]
    fn translate_examples() {
        let a = ElementSet::from_elements(2, [0]).unwrap();
        assert_eq!(e1().translate(2, &[1], &[1], &a).unwrap().to_vec(), vec![0]);
        let a = ElementSet::from_elements(4, [0, 1]).unwrap();
        assert_eq!(e2().translate(1, &[], &[0, 0], &a).unwrap().to_vec(), vec![2, 3]);
        let empty = ElementSet::empty(3);
        assert!(e3().translate(3, &[1, 2], &[], &empty).unwrap().is_empty());
        assert!(e3().translate(3, &[1], &[], &empty).is_err());
    }

    #[test]
    fn pointwise_comparison() {
        let cfg = CheckConfig::default();
        let r = e2().compare_pointwise(&e2(), &cfg).unwrap();
        assert!(r.passed());
        assert_eq!(r.instances, 64);
        let shifted = FiniteNaryGroup::from_fn(3, 4, |x| (x[0] + x[1] + x[2]) % 4).unwrap();
        let r = e2().compare_pointwise(&shifted, &cfg).unwrap();
        assert_eq!(r.witnesses()[0].values, vec![0, 0, 0]);
        assert!(e2().compare_pointwise(&e1(), &cfg).is_err());
    }

    #[test]
    fn verification_status_is_monotone() {
        let mut g = e2();
        assert_eq!(g.status(), VerificationStatus::Unchecked);
        g.verify(&CheckConfig::default()).unwrap();
        assert_eq!(g.status(), VerificationStatus::VerifiedExhaustive);

        let mut bad = FiniteNaryGroup::from_fn(3, 2, |x| x[0] * x[1] * x[2]).unwrap();
        bad.verify(&CheckConfig::default()).unwrap();
        assert_eq!(bad.status(), VerificationStatus::Unchecked);

        let mut sampled = e3();
        let cfg = CheckConfig { budget: 1, samples: 200, seed: 9 };
        sampled.verify(&cfg).unwrap();
        assert_eq!(sampled.status(), VerificationStatus::VerifiedSampled(200));
    }
}
