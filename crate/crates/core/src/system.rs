//! Finite truncations of inverse systems of finite n-ary groups.
//!
//! The index poset is finite and has a top level, so every cylinder set of
//! the limit is represented at the top. Transition maps run downward:
//! `map(i, j)` is defined for `j <= i` and sends level `i` onto level `j`.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cover::{build_post_cover, PostCoverGroup};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::nary::{odometer, CheckConfig, FiniteNaryGroup};
use crate::report::{VerificationReport, Witness};
use crate::Element;

/// A finite partial order with a top element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedIndex {
    ids: Vec<String>,
    /// `leq[j * len + i]` holds when `j <= i`.
    leq: Vec<bool>,
    top: usize,
}

impl DirectedIndex {
    /// `relations` holds pairs `(i, j)` meaning `j <= i`; the order is their
    /// reflexive-transitive closure.
    pub fn new(ids: Vec<String>, relations: &[(String, String)], top: &str) -> Result<Self> {
        let len = ids.len();
        if len == 0 {
            return Err(Error::Index("no levels".into()));
        }
        for (k, id) in ids.iter().enumerate() {
            if ids[..k].contains(id) {
                return Err(Error::Index(format!("duplicate level id {id:?}")));
            }
        }
        let pos = |id: &str| {
            ids.iter()
                .position(|x| x == id)
                .ok_or_else(|| Error::UnknownLevel(id.to_string()))
        };
        let mut leq = vec![false; len * len];
        for k in 0..len {
            leq[k * len + k] = true;
        }
        for (i, j) in relations {
            let (i, j) = (pos(i)?, pos(j)?);
            leq[j * len + i] = true;
        }
        // Warshall closure.
        for m in 0..len {
            for j in 0..len {
                if leq[j * len + m] {
                    for i in 0..len {
                        if leq[m * len + i] {
                            leq[j * len + i] = true;
                        }
                    }
                }
            }
        }
        for i in 0..len {
            for j in 0..i {
                if leq[j * len + i] && leq[i * len + j] {
                    return Err(Error::Index(format!(
                        "{:?} and {:?} are mutually below each other",
                        ids[i], ids[j]
                    )));
                }
            }
        }
        let top = pos(top)?;
        if let Some(k) = (0..len).find(|&k| !leq[k * len + top]) {
            return Err(Error::Index(format!("{:?} is not below the top {:?}", ids[k], ids[top])));
        }
        Ok(DirectedIndex { ids, leq, top })
    }

    /// A chain `ids[0] <= ids[1] <= ...` topped by the last id.
    pub fn chain<S: Into<String>>(ids: impl IntoIterator<Item = S>) -> Result<Self> {
        let ids: Vec<String> = ids.into_iter().map(Into::into).collect();
        let relations: Vec<(String, String)> =
            ids.windows(2).map(|w| (w[1].clone(), w[0].clone())).collect();
        let top = ids.last().cloned().unwrap_or_default();
        DirectedIndex::new(ids, &relations, &top)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, level: usize) -> &str {
        &self.ids[level]
    }

    pub fn position(&self, id: &str) -> Result<usize> {
        self.ids
            .iter()
            .position(|x| x == id)
            .ok_or_else(|| Error::UnknownLevel(id.to_string()))
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `j <= i`.
    #[inline]
    pub fn leq(&self, j: usize, i: usize) -> bool {
        self.leq[j * self.len() + i]
    }

    /// Pairs `(i, j)` with `j < i`, in increasing order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.leq(j, i))
            .collect()
    }

    /// The designated upper bound of `a` and `b`: the least common upper
    /// bound when one exists, otherwise the lowest-positioned minimal one.
    pub fn upper_bound(&self, a: usize, b: usize) -> usize {
        let ubs: Vec<usize> = (0..self.len())
            .filter(|&u| self.leq(a, u) && self.leq(b, u))
            .collect();
        ubs.iter()
            .copied()
            .find(|&u| ubs.iter().all(|&v| self.leq(u, v)))
            .or_else(|| {
                ubs.iter()
                    .copied()
                    .find(|&u| ubs.iter().all(|&v| v == u || !self.leq(v, u)))
            })
            .expect("top is a common upper bound")
    }

    /// Levels strictly above `level`, lowest position first.
    pub fn above(&self, level: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&u| u != level && self.leq(level, u))
            .collect()
    }
}

/// One element per level, compatible with every transition map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Thread(Vec<Element>);

impl Thread {
    pub fn elements(&self) -> &[Element] {
        &self.0
    }

    pub fn at(&self, level: usize) -> Element {
        self.0[level]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSystem {
    index: DirectedIndex,
    levels: Vec<FiniteNaryGroup>,
    /// Keyed by `(i, j)` with `j < i`.
    maps: BTreeMap<(usize, usize), Vec<Element>>,
}

fn check_map(map: &[Element], from: usize, to: usize, what: &str) -> Result<()> {
    if map.len() != from {
        return Err(Error::System(format!(
            "{what} needs {from} images, found {}",
            map.len()
        )));
    }
    if let Some(&bad) = map.iter().find(|&&y| y >= to) {
        return Err(Error::OutOfRange {
            element: bad,
            size: to,
        });
    }
    Ok(())
}

impl InverseSystem {
    /// Checks the shape of the data: one group per level, equal arities, and
    /// a well-formed map for exactly the strictly comparable pairs.
    pub fn new(
        index: DirectedIndex,
        levels: Vec<FiniteNaryGroup>,
        maps: BTreeMap<(usize, usize), Vec<Element>>,
    ) -> Result<Self> {
        if levels.len() != index.len() {
            return Err(Error::System(format!(
                "{} levels for an index of {} ids",
                levels.len(),
                index.len()
            )));
        }
        let arity = levels[0].arity();
        if let Some(k) = levels.iter().position(|g| g.arity() != arity) {
            return Err(Error::System(format!(
                "level {:?} has arity {}, expected {arity}",
                index.id(k),
                levels[k].arity()
            )));
        }
        let pairs = index.strict_pairs();
        for &(i, j) in &pairs {
            let map = maps.get(&(i, j)).ok_or_else(|| {
                Error::System(format!("missing map {}>{}", index.id(i), index.id(j)))
            })?;
            check_map(
                map,
                levels[i].size(),
                levels[j].size(),
                &format!("map {}>{}", index.id(i), index.id(j)),
            )?;
        }
        if let Some(&(i, j)) = maps.keys().find(|k| !pairs.contains(k)) {
            let name = |k: usize| index.ids.get(k).map_or("?", String::as_str).to_string();
            return Err(Error::System(format!(
                "map {}>{} given for levels that are not comparable",
                name(i),
                name(j)
            )));
        }
        Ok(InverseSystem {
            index,
            levels,
            maps,
        })
    }

    /// A chain `levels[0] <- levels[1] <- ...` with maps computed by
    /// `project(i, j, x)` for every `j < i`.
    pub fn chain(
        ids: &[&str],
        levels: Vec<FiniteNaryGroup>,
        project: impl Fn(usize, usize, Element) -> Element,
    ) -> Result<Self> {
        let index = DirectedIndex::chain(ids.iter().copied())?;
        let mut maps = BTreeMap::new();
        for (i, j) in index.strict_pairs() {
            maps.insert((i, j), (0..levels[i].size()).map(|x| project(i, j, x)).collect());
        }
        InverseSystem::new(index, levels, maps)
    }

    pub fn index(&self) -> &DirectedIndex {
        &self.index
    }

    pub fn arity(&self) -> usize {
        self.levels[0].arity()
    }

    pub fn level(&self, k: usize) -> &FiniteNaryGroup {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[FiniteNaryGroup] {
        &self.levels
    }

    pub fn maps(&self) -> &BTreeMap<(usize, usize), Vec<Element>> {
        &self.maps
    }

    /// `phi_{ij}` applied to `x`, for `j <= i`.
    #[inline]
    pub fn project(&self, i: usize, j: usize, x: Element) -> Element {
        if i == j {
            x
        } else {
            self.maps[&(i, j)][x]
        }
    }

    /// `phi_{ij}` as an image array, for `j <= i`.
    pub fn map(&self, i: usize, j: usize) -> Result<Vec<Element>> {
        if !self.index.leq(j, i) {
            return Err(Error::Incomparable(
                self.index.id(i).to_string(),
                self.index.id(j).to_string(),
            ));
        }
        Ok((0..self.levels[i].size()).map(|x| self.project(i, j, x)).collect())
    }

    /// Runs every check: level axioms, homomorphism property, cocycle
    /// condition and surjectivity with equal fibers.
    pub fn validate(&self, cfg: &CheckConfig) -> Vec<VerificationReport> {
        self.clone().verify(cfg)
    }

    /// Like [`InverseSystem::validate`], also upgrading each level's status.
    pub fn verify(&mut self, cfg: &CheckConfig) -> Vec<VerificationReport> {
        let mut reports = Vec::new();
        for k in 0..self.levels.len() {
            let id = self.index.id(k).to_string();
            match self.levels[k].verify(cfg) {
                Ok(rs) => reports.extend(rs.into_iter().map(|mut r| {
                    r.subject = format!("level {id}: {}", r.subject);
                    r
                })),
                Err(e) => {
                    let mut r = VerificationReport::new(format!("level {id}"), "axioms");
                    r.record_failure(Witness::new(e.to_string(), vec![k]));
                    reports.push(r);
                }
            }
        }
        reports.push(self.check_homomorphisms(cfg));
        reports.push(self.check_cocycle());
        reports.push(self.check_fibers());
        reports
    }

    fn check_homomorphisms(&self, cfg: &CheckConfig) -> VerificationReport {
        let start = Instant::now();
        let mut report = VerificationReport::new("inverse system", "transition maps are homomorphisms");
        let n = self.arity();
        let mut sampled = false;
        for (&(i, j), map) in &self.maps {
            let (gi, gj) = (&self.levels[i], &self.levels[j]);
            let mut images = vec![0; n];
            let mut check = |xs: &[Element], report: &mut VerificationReport| {
                for (y, &x) in images.iter_mut().zip(xs) {
                    *y = map[x];
                }
                report.instances += 1;
                if map[gi.eval_unchecked(xs)] != gj.eval_unchecked(&images) {
                    let mut w = vec![i, j];
                    w.extend_from_slice(xs);
                    report.record_failure(Witness::new("(level i, level j, tuple)", w));
                    return false;
                }
                true
            };
            let mut xs = vec![0; n];
            if (gi.size() as u128).saturating_pow(n as u32) <= cfg.budget as u128 {
                while check(&xs, &mut report) && odometer(&mut xs, gi.size()) {}
            } else {
                sampled = true;
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                for _ in 0..cfg.samples {
                    xs.iter_mut().for_each(|x| *x = rng.gen_range(0..gi.size()));
                    if !check(&xs, &mut report) {
                        break;
                    }
                }
            }
        }
        if sampled {
            report.mark_probabilistic(cfg.seed);
        }
        report.with_elapsed(start.elapsed())
    }

    fn check_cocycle(&self) -> VerificationReport {
        let start = Instant::now();
        let mut report = VerificationReport::new("inverse system", "cocycle condition");
        let len = self.index.len();
        for (i, j) in self.index.strict_pairs() {
            for k in (0..len).filter(|&k| k != j && self.index.leq(k, j)) {
                for x in 0..self.levels[i].size() {
                    report.instances += 1;
                    let via_j = self.project(j, k, self.project(i, j, x));
                    if via_j != self.project(i, k, x) {
                        report.record_failure(Witness::new("(level i, level j, level k, element)", vec![i, j, k, x]));
                        break;
                    }
                }
            }
        }
        report.with_elapsed(start.elapsed())
    }

    fn check_fibers(&self) -> VerificationReport {
        let start = Instant::now();
        let mut report = VerificationReport::new("inverse system", "surjective with equal fibers");
        for (&(i, j), map) in &self.maps {
            let mut counts = vec![0usize; self.levels[j].size()];
            for &y in map {
                counts[y] += 1;
            }
            report.instances += counts.len() as u64;
            let expected = self.levels[i].size() / self.levels[j].size();
            if let Some(y) = counts.iter().position(|&c| c != expected || c == 0) {
                report.record_failure(Witness::new(
                    "(level i, level j, element, fiber size)",
                    vec![i, j, y, counts[y]],
                ));
            }
        }
        report.with_elapsed(start.elapsed())
    }

    pub fn thread(&self, elements: Vec<Element>) -> Result<Thread> {
        if elements.len() != self.levels.len() {
            return Err(Error::Thread(format!(
                "{} elements for {} levels",
                elements.len(),
                self.levels.len()
            )));
        }
        for (k, &x) in elements.iter().enumerate() {
            if x >= self.levels[k].size() {
                return Err(Error::Thread(format!(
                    "element {x} outside level {:?}",
                    self.index.id(k)
                )));
            }
        }
        for (i, j) in self.index.strict_pairs() {
            if self.project(i, j, elements[i]) != elements[j] {
                return Err(Error::Thread(format!(
                    "{} at {:?} projects to {} at {:?}, not {}",
                    elements[i],
                    self.index.id(i),
                    self.project(i, j, elements[i]),
                    self.index.id(j),
                    elements[j]
                )));
            }
        }
        Ok(Thread(elements))
    }

    /// The thread through `x` at the top level.
    pub fn thread_from_top(&self, x: Element) -> Result<Thread> {
        let top = self.index.top();
        if x >= self.levels[top].size() {
            return Err(Error::Thread(format!("element {x} outside the top level")));
        }
        let elements = (0..self.levels.len()).map(|k| self.project(top, k, x)).collect();
        Ok(Thread(elements))
    }

    fn check_thread(&self, t: &Thread) -> Result<()> {
        self.thread(t.0.clone()).map(|_| ())
    }

    /// Per level, the prefix and suffix obtained by projecting the `n - 1`
    /// coefficient threads around `slot`.
    pub fn thread_translate_data(&self, slot: usize, coefficients: &[Thread]) -> Result<Vec<(Vec<Element>, Vec<Element>)>> {
        let n = self.arity();
        if coefficients.len() != n - 1 {
            return Err(Error::Arity {
                expected: n - 1,
                found: coefficients.len(),
            });
        }
        if slot == 0 || slot > n {
            return Err(Error::Slot { slot, arity: n });
        }
        coefficients.iter().try_for_each(|t| self.check_thread(t))?;
        Ok((0..self.levels.len())
            .map(|k| {
                let (pre, suf) = coefficients.split_at(slot - 1);
                (
                    pre.iter().map(|t| t.at(k)).collect(),
                    suf.iter().map(|t| t.at(k)).collect(),
                )
            })
            .collect())
    }

    /// The system of retracts over the thread `a`; fails if some transition
    /// map is not a homomorphism of the retracts.
    pub fn induced_retract_system(&self, a: &Thread) -> Result<GroupSystem> {
        self.check_thread(a)?;
        let levels = (0..self.levels.len())
            .map(|k| self.levels[k].retract(a.at(k)))
            .collect::<Result<Vec<_>>>()?;
        let system = GroupSystem {
            index: self.index.clone(),
            levels,
            maps: self.maps.clone(),
        };
        let report = system.check_homomorphisms();
        if report.failed() {
            return Err(Error::System(format!("retract transition fails: {report}")));
        }
        Ok(system)
    }

    /// The system of Post covers; requires a presentation at every level,
    /// compatible with the transitions (`phi.theta_i = theta_j.phi` and
    /// `phi(b_i) = b_j`).
    pub fn induced_cover_system(&self) -> Result<CoverSystem> {
        let presentations = (0..self.levels.len())
            .map(|k| {
                self.levels[k].presentation().ok_or_else(|| {
                    Error::System(format!("level {:?} has no presentation", self.index.id(k)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        for (&(i, j), map) in &self.maps {
            let (pi, pj) = (presentations[i], presentations[j]);
            if let Some(x) = (0..map.len()).find(|&x| map[pi.theta()[x]] != pj.theta()[map[x]]) {
                return Err(Error::System(format!(
                    "theta incompatible with map {}>{} at element {x}",
                    self.index.id(i),
                    self.index.id(j)
                )));
            }
            if map[pi.b()] != pj.b() {
                return Err(Error::System(format!(
                    "map {}>{} sends b = {} to {}, but b = {} below",
                    self.index.id(i),
                    self.index.id(j),
                    pi.b(),
                    map[pi.b()],
                    pj.b()
                )));
            }
        }
        let covers = presentations
            .iter()
            .map(|p| build_post_cover(p))
            .collect::<Result<Vec<_>>>()?;
        let mut maps = BTreeMap::new();
        for (&(i, j), map) in &self.maps {
            maps.insert((i, j), covers[i].induced_map(&covers[j], map)?);
        }
        Ok(CoverSystem {
            groups: GroupSystem {
                index: self.index.clone(),
                levels: covers.iter().map(|c| c.group().clone()).collect(),
                maps,
            },
            covers,
        })
    }
}

/// An inverse system of ordinary finite groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSystem {
    index: DirectedIndex,
    levels: Vec<FiniteGroup>,
    maps: BTreeMap<(usize, usize), Vec<Element>>,
}

impl GroupSystem {
    pub fn index(&self) -> &DirectedIndex {
        &self.index
    }

    pub fn level(&self, k: usize) -> &FiniteGroup {
        &self.levels[k]
    }

    pub fn map(&self, i: usize, j: usize) -> Option<&[Element]> {
        self.maps.get(&(i, j)).map(Vec::as_slice)
    }

    pub fn check_homomorphisms(&self) -> VerificationReport {
        let mut report = VerificationReport::new("group system", "transition maps are homomorphisms");
        for (&(i, j), map) in &self.maps {
            report.instances += (self.levels[i].size() * self.levels[i].size()) as u64;
            if let Some((x, y)) = self.levels[i].homomorphism_witness(&self.levels[j], map) {
                report.record_failure(Witness::new("(level i, level j, x, y)", vec![i, j, x, y]));
            }
        }
        report
    }
}

/// The induced system of Post covers, with the per-level cover data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSystem {
    pub groups: GroupSystem,
    pub covers: Vec<PostCoverGroup>,
}
