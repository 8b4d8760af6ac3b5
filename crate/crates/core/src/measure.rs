//! Exact Haar measures on cylinder sets of a profinite n-ary group.
//!
//! A cylinder set is a subset of one level's carrier, standing for its
//! preimage in the inverse limit. Because every transition map is surjective
//! with equal fibers, the normalized count `|A| / |G_level|` does not depend
//! on the level a set is represented at. Three measures are computed:
//!
//! * `m_p`, counting in the n-ary group itself;
//! * `m`, counting in the retract over a base-point thread;
//! * `m*`, counting the grade-1 copy of the set inside the Post cover.
//!
//! The identity `m_p(A) = m(A) = (n - 1) m*(A)` is checked as an equality of
//! rationals, with no tolerance.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cover::cover_subset_of_g;
use crate::error::{Error, Result};
use crate::report::{VerificationReport, Witness};
use crate::set::ElementSet;
use crate::system::{CoverSystem, GroupSystem, InverseSystem, Thread};
use crate::{par_map, Element};

/// An exact rational in lowest terms, always rendered as `p/q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeasureValue(Ratio<u64>);

impl MeasureValue {
    pub fn new(numer: u64, denom: u64) -> Self {
        MeasureValue(Ratio::new(numer, denom))
    }

    pub fn zero() -> Self {
        MeasureValue::new(0, 1)
    }

    pub fn one() -> Self {
        MeasureValue::new(1, 1)
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn scale(self, k: u64) -> Self {
        MeasureValue(self.0 * Ratio::from_integer(k))
    }
}

impl std::ops::Add for MeasureValue {
    type Output = MeasureValue;

    fn add(self, rhs: Self) -> Self {
        MeasureValue(self.0 + rhs.0)
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for MeasureValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Schema(format!("expected a rational p/q, found {s:?}"));
        let (p, q) = s.split_once('/').unwrap_or((s, "1"));
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let q: u64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        Ok(MeasureValue::new(p, q))
    }
}

impl Serialize for MeasureValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MeasureValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A subset of one level, standing for its preimage in the limit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CylinderSet {
    pub level: usize,
    pub subset: ElementSet,
}

impl CylinderSet {
    pub fn new(system: &InverseSystem, level: usize, subset: ElementSet) -> Result<Self> {
        if level >= system.levels().len() {
            return Err(Error::UnknownLevel(level.to_string()));
        }
        if subset.universe() != system.level(level).size() {
            return Err(Error::Schema(format!(
                "subset of a carrier of size {} at level {:?} of size {}",
                subset.universe(),
                system.index().id(level),
                system.level(level).size()
            )));
        }
        Ok(CylinderSet { level, subset })
    }

    pub fn from_elements(system: &InverseSystem, level: usize, elements: impl IntoIterator<Item = Element>) -> Result<Self> {
        let size = system
            .levels()
            .get(level)
            .ok_or_else(|| Error::UnknownLevel(level.to_string()))?
            .size();
        CylinderSet::new(system, level, ElementSet::from_elements(size, elements)?)
    }

    pub fn full(system: &InverseSystem, level: usize) -> Self {
        CylinderSet {
            level,
            subset: ElementSet::full(system.level(level).size()),
        }
    }

    pub fn empty(system: &InverseSystem, level: usize) -> Self {
        CylinderSet {
            level,
            subset: ElementSet::empty(system.level(level).size()),
        }
    }
}

/// Re-expresses `a` at the higher level `to` by preimage.
pub fn refine(system: &InverseSystem, a: &CylinderSet, to: usize) -> Result<CylinderSet> {
    let map = system.map(to, a.level)?;
    Ok(CylinderSet {
        level: to,
        subset: a.subset.preimage(&map),
    })
}

fn common(system: &InverseSystem, a: &CylinderSet, b: &CylinderSet) -> (CylinderSet, CylinderSet) {
    let u = system.index().upper_bound(a.level, b.level);
    let ra = refine(system, a, u).expect("upper bound is above a");
    let rb = refine(system, b, u).expect("upper bound is above b");
    (ra, rb)
}

pub fn cyl_union(system: &InverseSystem, a: &CylinderSet, b: &CylinderSet) -> CylinderSet {
    let (a, b) = common(system, a, b);
    CylinderSet {
        level: a.level,
        subset: a.subset.union(&b.subset),
    }
}

pub fn cyl_intersect(system: &InverseSystem, a: &CylinderSet, b: &CylinderSet) -> CylinderSet {
    let (a, b) = common(system, a, b);
    CylinderSet {
        level: a.level,
        subset: a.subset.intersection(&b.subset),
    }
}

pub fn cyl_complement(a: &CylinderSet) -> CylinderSet {
    CylinderSet {
        level: a.level,
        subset: a.subset.complement(),
    }
}

/// Inclusion of the limit sets, decided at a common level.
pub fn cyl_is_subset(system: &InverseSystem, a: &CylinderSet, b: &CylinderSet) -> bool {
    let (a, b) = common(system, a, b);
    a.subset.is_subset(&b.subset)
}

/// `m_p(A) = |A| / |G_level|`.
pub fn measure_polyadic(system: &InverseSystem, a: &CylinderSet) -> MeasureValue {
    MeasureValue::new(a.subset.len() as u64, system.level(a.level).size() as u64)
}

/// The three measures of one cylinder set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HaarMeasures {
    pub m_p: MeasureValue,
    pub m: MeasureValue,
    pub m_star: MeasureValue,
    pub identity_holds: bool,
}

/// An inverse system together with its retract system over a base-point
/// thread and its Post-cover system.
#[derive(Debug, Clone)]
pub struct HaarContext<'a> {
    system: &'a InverseSystem,
    base_point: Thread,
    retracts: GroupSystem,
    covers: CoverSystem,
}

impl<'a> HaarContext<'a> {
    pub fn new(system: &'a InverseSystem, base_point: Thread) -> Result<Self> {
        let retracts = system.induced_retract_system(&base_point)?;
        let covers = system.induced_cover_system()?;
        Ok(HaarContext {
            system,
            base_point,
            retracts,
            covers,
        })
    }

    /// Context over the thread through element 0 of the top level.
    pub fn with_default_base_point(system: &'a InverseSystem) -> Result<Self> {
        HaarContext::new(system, system.thread_from_top(0)?)
    }

    pub fn system(&self) -> &InverseSystem {
        self.system
    }

    pub fn base_point(&self) -> &Thread {
        &self.base_point
    }

    pub fn retracts(&self) -> &GroupSystem {
        &self.retracts
    }

    pub fn covers(&self) -> &CoverSystem {
        &self.covers
    }

    pub fn measure_polyadic(&self, a: &CylinderSet) -> MeasureValue {
        measure_polyadic(self.system, a)
    }

    /// Normalized counting measure in the retract at `a.level`.
    pub fn measure_retract(&self, a: &CylinderSet) -> MeasureValue {
        MeasureValue::new(a.subset.len() as u64, self.retracts.level(a.level).size() as u64)
    }

    /// Measure of the grade-1 copy of `a` in the Post cover at `a.level`.
    pub fn measure_cover(&self, a: &CylinderSet) -> MeasureValue {
        let cover = &self.covers.covers[a.level];
        let embedded = cover_subset_of_g(cover, &a.subset);
        MeasureValue::new(embedded.len() as u64, cover.size() as u64)
    }

    /// `m*(K)` at a level, for the normal subgroup `K = G x {0}`.
    pub fn measure_cover_kernel(&self, level: usize) -> MeasureValue {
        let cover = &self.covers.covers[level];
        MeasureValue::new(cover.kernel().len() as u64, cover.size() as u64)
    }

    pub fn measures(&self, a: &CylinderSet) -> HaarMeasures {
        let m_p = self.measure_polyadic(a);
        let m = self.measure_retract(a);
        let m_star = self.measure_cover(a);
        let identity_holds = m_p == m && m_p == m_star.scale(self.system.arity() as u64 - 1);
        HaarMeasures {
            m_p,
            m,
            m_star,
            identity_holds,
        }
    }

    /// `m_p(A) = m(A) = (n - 1) m*(A)`, exactly. A failure here means a bug
    /// rather than bad input.
    pub fn check_haar_identity(&self, a: &CylinderSet) -> (HaarMeasures, VerificationReport) {
        let mut report = VerificationReport::new(self.subject(a), "haar identity");
        let ms = self.measures(a);
        report.instances = 1;
        if !ms.identity_holds {
            let mut w = vec![a.level];
            w.extend(a.subset.iter());
            report.record_failure(Witness::new(
                format!(
                    "internal error: m_p={} m={} m*={} at (level, subset..)",
                    ms.m_p, ms.m, ms.m_star
                ),
                w,
            ));
        }
        (ms, report)
    }

    /// For each slot, the translate `f(x_1..x_{i-1}, A, x_{i+1}..x_n)` by the
    /// projected coefficient threads has the measure of `A` under `m_p`, `m`
    /// and `(n-1) m*`, equals `L . theta^(i-1)(A) . R` as a set, and has the
    /// measure of `theta^(i-1)(A)`.
    pub fn check_translation_invariance(&self, a: &CylinderSet, coefficients: &[Thread], slots: &[usize]) -> Result<VerificationReport> {
        let start = Instant::now();
        let mut report = VerificationReport::new(self.subject(a), "translation invariance");
        let level = self.system.level(a.level);
        let p = level.presentation().ok_or(Error::NoPresentation)?;
        let base = p.base();
        let n = self.system.arity();
        let before = self.measures(a);
        for &slot in slots {
            let data = self.system.thread_translate_data(slot, coefficients)?;
            let (prefix, suffix) = &data[a.level];
            let translated = level.translate(slot, prefix, suffix, &a.subset)?;
            let t = CylinderSet {
                level: a.level,
                subset: translated,
            };
            report.instances += 1;
            let after = self.measures(&t);
            if after != before {
                report.record_failure(Witness::new(
                    format!("measures change ({} -> {}) under slot", before.m_p, after.m_p),
                    vec![slot],
                ));
            }
            // L = x_1 . theta(x_2) ... theta^(i-2)(x_{i-1})
            let left = prefix
                .iter()
                .enumerate()
                .fold(base.identity(), |acc, (k, &x)| base.op(acc, p.theta_pow(k, x)));
            // R = theta^i(x_{i+1}) ... theta^(n-1)(x_n) . b
            let right = suffix
                .iter()
                .enumerate()
                .fold(base.identity(), |acc, (k, &x)| base.op(acc, p.theta_pow(slot + k, x)));
            let right = base.op(right, p.b());
            let mut expanded = ElementSet::empty(base.size());
            let mut twisted = ElementSet::empty(base.size());
            for x in a.subset.iter() {
                let tx = p.theta_pow(slot - 1, x);
                twisted.insert(tx);
                expanded.insert(base.op(base.op(left, tx), right));
            }
            if expanded != t.subset {
                report.record_failure(Witness::new("translate differs from L.theta^(i-1)(A).R at slot", vec![slot]));
            }
            let twisted = CylinderSet {
                level: a.level,
                subset: twisted,
            };
            if self.measure_retract(&twisted) != after.m {
                report.record_failure(Witness::new("m(translate) != m(theta^(i-1)(A)) at slot", vec![slot]));
            }
        }
        debug_assert!(slots.iter().all(|&s| s >= 1 && s <= n));
        Ok(report.with_elapsed(start.elapsed()))
    }

    /// `m(theta(A)) = m(A)` at `A`'s level and at the lowest level above it,
    /// where the image of the refined set must also be the refinement of the
    /// image.
    pub fn check_automorphism_invariance(&self, a: &CylinderSet) -> Result<VerificationReport> {
        let start = Instant::now();
        let mut report = VerificationReport::new(self.subject(a), "automorphism invariance");
        let theta_image = |c: &CylinderSet| -> Result<CylinderSet> {
            let p = self.system.level(c.level).presentation().ok_or(Error::NoPresentation)?;
            Ok(CylinderSet {
                level: c.level,
                subset: c.subset.image(p.theta(), c.subset.universe()),
            })
        };
        let image = theta_image(a)?;
        report.instances += 1;
        if self.measure_retract(&image) != self.measure_retract(a) {
            report.record_failure(Witness::new("m(theta(A)) != m(A) at level", vec![a.level]));
        }
        if let Some(&up) = self.system.index().above(a.level).first() {
            let refined = refine(self.system, a, up)?;
            let refined_image = theta_image(&refined)?;
            report.instances += 1;
            if self.measure_retract(&refined_image) != self.measure_retract(&refined) {
                report.record_failure(Witness::new("m(theta(A)) != m(A) at level", vec![up]));
            }
            if refined_image != refine(self.system, &image, up)? {
                report.record_failure(Witness::new("theta does not commute with refinement to level", vec![up]));
            }
        }
        Ok(report.with_elapsed(start.elapsed()))
    }

    /// `m(theta(A)) = m(A)` for every subset `A` of a level with at most
    /// `MAX_MASK_BITS` elements, enumerated as bitmasks.
    pub fn automorphism_invariance_all_subsets(&self, level: usize) -> Result<VerificationReport> {
        let start = Instant::now();
        let g = self.system.level(level);
        let size = g.size();
        if size > MAX_MASK_BITS {
            return Err(Error::BudgetExceeded {
                required: 1u128 << size.min(127),
                budget: 1 << MAX_MASK_BITS,
            });
        }
        let theta = g.presentation().ok_or(Error::NoPresentation)?.theta().to_vec();
        let denom = self.retracts.level(level).size() as u64;
        let image = MaskImage::new(&theta);
        let total: u64 = 1 << size;
        let chunk_bits = size.saturating_sub(8);
        let chunks = (total >> chunk_bits) as usize;
        let failures = par_map(0..chunks, |c| {
            let lo = (c as u64) << chunk_bits;
            (lo..lo + (1u64 << chunk_bits)).find(|&mask| {
                let img = image.apply(mask);
                MeasureValue::new(img.count_ones() as u64, denom)
                    != MeasureValue::new(mask.count_ones() as u64, denom)
            })
        });
        let mut report = VerificationReport::new(
            format!("level {}", self.system.index().id(level)),
            "automorphism invariance (all subsets)",
        );
        report.instances = total;
        if let Some(mask) = failures.into_iter().flatten().next() {
            report.record_failure(Witness::new("subset", ElementSet::from_mask(size, mask).to_vec()));
        }
        Ok(report.with_elapsed(start.elapsed()))
    }

    fn subject(&self, a: &CylinderSet) -> String {
        format!("cylinder at {} of size {}", self.system.index().id(a.level), a.subset.len())
    }
}

/// Largest level for [`HaarContext::automorphism_invariance_all_subsets`].
pub const MAX_MASK_BITS: usize = 32;

/// Image of a bitmask under a permutation, via one lookup table per byte.
struct MaskImage {
    tables: Vec<[u64; 256]>,
}

impl MaskImage {
    fn new(map: &[Element]) -> Self {
        let tables = (0..map.len().div_ceil(8))
            .map(|byte| {
                let mut t = [0u64; 256];
                for (v, slot) in t.iter_mut().enumerate() {
                    for bit in 0..8 {
                        let e = byte * 8 + bit;
                        if v >> bit & 1 == 1 && e < map.len() {
                            *slot |= 1 << map[e];
                        }
                    }
                }
                t
            })
            .collect();
        MaskImage { tables }
    }

    #[inline]
    fn apply(&self, mask: u64) -> u64 {
        self.tables
            .iter()
            .enumerate()
            .fold(0, |acc, (k, t)| acc | t[(mask >> (8 * k) & 0xff) as usize])
    }
}

/// Settings for [`run_haar_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HaarSuiteConfig {
    /// Exhaustive over all top-level subsets when `|top| <= max_exhaustive_bits`.
    pub max_exhaustive_bits: u32,
    /// Random subsets drawn otherwise.
    pub samples: u64,
    /// Random coefficient tuples per subset for the translation suite.
    pub coefficient_samples: usize,
    pub seed: u64,
}

impl Default for HaarSuiteConfig {
    fn default() -> Self {
        HaarSuiteConfig {
            max_exhaustive_bits: 16,
            samples: 4096,
            coefficient_samples: 2,
            seed: 0,
        }
    }
}

/// Runs the identity, translation-invariance and automorphism-invariance
/// suites over cylinder subsets of the top level.
pub fn run_haar_suite(ctx: &HaarContext<'_>, cfg: &HaarSuiteConfig) -> Result<Vec<VerificationReport>> {
    let system = ctx.system();
    let top = system.index().top();
    let size = system.level(top).size();
    let n = system.arity();
    let slots: Vec<usize> = (1..=n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let exhaustive = size as u32 <= cfg.max_exhaustive_bits;
    let subsets: Box<dyn Iterator<Item = ElementSet>> = if exhaustive {
        Box::new((0..1u64 << size).map(move |m| ElementSet::from_mask(size, m)))
    } else {
        let mut sub_rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
        Box::new((0..cfg.samples).map(move |_| {
            let mut s = ElementSet::empty(size);
            for e in 0..size {
                if sub_rng.gen_bool(0.5) {
                    s.insert(e);
                }
            }
            s
        }))
    };
    let subject = format!("{} levels, top {}", system.levels().len(), system.index().id(top));
    let mut identity = VerificationReport::new(&subject, "haar identity");
    let mut translation = VerificationReport::new(&subject, "translation invariance");
    let mut automorphism = VerificationReport::new(&subject, "automorphism invariance");
    for subset in subsets {
        let a = CylinderSet { level: top, subset };
        identity.absorb(ctx.check_haar_identity(&a).1);
        for _ in 0..cfg.coefficient_samples {
            let coefficients = (0..n - 1)
                .map(|_| system.thread_from_top(rng.gen_range(0..size)))
                .collect::<Result<Vec<_>>>()?;
            translation.absorb(ctx.check_translation_invariance(&a, &coefficients, &slots)?);
        }
        automorphism.absorb(ctx.check_automorphism_invariance(&a)?);
    }
    let mut reports = vec![identity, translation, automorphism];
    for r in &mut reports {
        if exhaustive {
            r.note(format!("all 2^{size} top-level subsets"));
        } else {
            r.note(format!("{} random top-level subsets", cfg.samples));
            r.mark_probabilistic(cfg.seed);
        }
    }
    reports[1].seed = Some(cfg.seed);
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn cyl(s: &InverseSystem, level: &str, elems: &[usize]) -> CylinderSet {
        let k = s.index().position(level).unwrap();
        CylinderSet::from_elements(s, k, elems.iter().copied()).unwrap()
    }

    #[test]
    fn measure_value_formatting() {
        assert_eq!(MeasureValue::new(2, 8).to_string(), "1/4");
        assert_eq!(MeasureValue::one().to_string(), "1/1");
        assert_eq!("3/6".parse::<MeasureValue>().unwrap(), MeasureValue::new(1, 2));
        assert!("1/0".parse::<MeasureValue>().is_err());
        assert_eq!(serde_json::to_string(&MeasureValue::new(1, 8)).unwrap(), "\"1/8\"");
    }

    #[test]
    fn refine_examples() {
        let s1 = corpus::s1();
        let r = refine(&s1, &cyl(&s1, "Z4", &[1]), 2).unwrap();
        assert_eq!(r.subset.to_vec(), vec![1, 5]);
        assert!(refine(&s1, &CylinderSet::full(&s1, 0), 2).unwrap().subset.is_full());
        assert!(refine(&s1, &cyl(&s1, "Z4", &[]), 2).unwrap().subset.is_empty());
        assert!(matches!(refine(&s1, &cyl(&s1, "Z8", &[1]), 0), Err(Error::Incomparable(..))));
    }

    #[test]
    fn boolean_operations() {
        let s1 = corpus::s1();
        let u = cyl_union(&s1, &cyl(&s1, "Z2", &[0]), &cyl(&s1, "Z2", &[1]));
        assert!(u.subset.is_full());
        let i = cyl_intersect(&s1, &cyl(&s1, "Z4", &[1]), &cyl(&s1, "Z2", &[0]));
        assert_eq!(i.level, 1);
        assert!(i.subset.is_empty());
        assert!(cyl_complement(&CylinderSet::full(&s1, 2)).subset.is_empty());
    }

    #[test]
    fn incomparable_levels_meet_at_the_top() {
        let d = corpus::klein_diamond();
        let i = cyl_intersect(&d, &cyl(&d, "left", &[1]), &cyl(&d, "right", &[1]));
        assert_eq!(i.level, 2);
        assert_eq!(i.subset.to_vec(), vec![3]);
        assert_eq!(measure_polyadic(&d, &i), MeasureValue::new(1, 4));
    }

    #[test]
    fn polyadic_measure_examples() {
        let s1 = corpus::s1();
        assert_eq!(measure_polyadic(&s1, &CylinderSet::full(&s1, 2)), MeasureValue::one());
        let a = cyl(&s1, "Z4", &[1]);
        assert_eq!(measure_polyadic(&s1, &a), MeasureValue::new(1, 4));
        assert_eq!(measure_polyadic(&s1, &refine(&s1, &a, 2).unwrap()), MeasureValue::new(1, 4));
    }

    #[test]
    fn three_measures_in_s1() {
        let s1 = corpus::s1();
        let ctx = HaarContext::with_default_base_point(&s1).unwrap();
        let a = cyl(&s1, "Z4", &[1]);
        assert_eq!(ctx.measure_retract(&a), MeasureValue::new(1, 4));
        assert_eq!(ctx.measure_cover(&a), MeasureValue::new(1, 8));
        assert_eq!(ctx.measure_cover(&CylinderSet::full(&s1, 1)), MeasureValue::new(1, 2));
        assert_eq!(ctx.measure_retract(&cyl(&s1, "Z8", &[])), MeasureValue::zero());
        assert_eq!(ctx.measure_cover(&cyl(&s1, "Z8", &[])), MeasureValue::zero());
        assert_eq!(ctx.measure_retract(&CylinderSet::full(&s1, 2)), MeasureValue::one());

        let (ms, r) = ctx.check_haar_identity(&cyl(&s1, "Z2", &[1]));
        assert!(r.passed());
        assert_eq!((ms.m_p, ms.m, ms.m_star), (MeasureValue::new(1, 2), MeasureValue::new(1, 2), MeasureValue::new(1, 4)));
        let (ms, _) = ctx.check_haar_identity(&a);
        assert_eq!((ms.m_p, ms.m, ms.m_star), (MeasureValue::new(1, 4), MeasureValue::new(1, 4), MeasureValue::new(1, 8)));
        assert!(ms.identity_holds);
    }

    #[test]
    fn translation_examples() {
        let s1 = corpus::s1();
        let ctx = HaarContext::with_default_base_point(&s1).unwrap();
        let zero = s1.thread_from_top(0).unwrap();
        let a = cyl(&s1, "Z4", &[1]);
        let r = ctx.check_translation_invariance(&a, &[zero.clone(), zero.clone()], &[2]).unwrap();
        assert!(r.passed());
        let t = s1.level(1).translate(2, &[0], &[0], &a.subset).unwrap();
        assert_eq!(t.to_vec(), vec![1]);

        let z3 = corpus::single_level(corpus::cyclic_presentation(3, 3, 2, 0).derive().unwrap());
        let ctx = HaarContext::with_default_base_point(&z3).unwrap();
        let a = cyl(&z3, "G", &[0, 1]);
        let t = z3.level(0).translate(2, &[0], &[0], &a.subset).unwrap();
        assert_eq!(t.to_vec(), vec![0, 2]);
        let zero = z3.thread_from_top(0).unwrap();
        assert!(ctx.check_translation_invariance(&a, &[zero.clone(), zero], &[1, 2, 3]).unwrap().passed());
    }

    #[test]
    fn automorphism_examples() {
        let s1 = corpus::s1();
        let ctx = HaarContext::with_default_base_point(&s1).unwrap();
        assert!(ctx.check_automorphism_invariance(&cyl(&s1, "Z2", &[1])).unwrap().passed());

        let t = corpus::z3_tower();
        let ctx = HaarContext::with_default_base_point(&t).unwrap();
        let a = cyl(&t, "Z3", &[1]);
        let img = a.subset.image(t.level(0).presentation().unwrap().theta(), 3);
        assert_eq!(img.to_vec(), vec![2]);
        let r = ctx.check_automorphism_invariance(&a).unwrap();
        assert!(r.passed());
        assert_eq!(r.instances, 2);
        assert!(ctx.check_automorphism_invariance(&CylinderSet::full(&t, 2)).unwrap().passed());
    }

    #[test]
    fn all_subsets_fast_path_matches_generic() {
        let t = corpus::z3_tower();
        let ctx = HaarContext::with_default_base_point(&t).unwrap();
        let r = ctx.automorphism_invariance_all_subsets(1).unwrap();
        assert!(r.passed());
        assert_eq!(r.instances, 512);
        for mask in 0..512u64 {
            let a = CylinderSet { level: 1, subset: ElementSet::from_mask(9, mask) };
            assert!(ctx.check_automorphism_invariance(&a).unwrap().passed());
        }
    }

    #[test]
    fn mask_image_is_a_permutation_image() {
        let map: Vec<usize> = (0..20).map(|x| (x * 7 + 3) % 20).collect();
        let image = MaskImage::new(&map);
        for mask in [0u64, 1, 0b1011, 0xfffff, 0x80001] {
            let s = ElementSet::from_mask(20, mask);
            let expected = s.image(&map, 20);
            assert_eq!(ElementSet::from_mask(20, image.apply(mask)), expected);
        }
    }

    #[test]
    fn suite_on_s1_passes_exhaustively() {
        let s1 = corpus::s1();
        let ctx = HaarContext::with_default_base_point(&s1).unwrap();
        let reports = run_haar_suite(&ctx, &HaarSuiteConfig::default()).unwrap();
        assert!(reports.iter().all(|r| r.status() == crate::Status::Pass), "{reports:#?}");
        assert_eq!(reports[0].instances, 256);
    }

    #[test]
    fn suite_sampling_is_probabilistic() {
        let t = corpus::z3_tower();
        let ctx = HaarContext::with_default_base_point(&t).unwrap();
        let cfg = HaarSuiteConfig { samples: 50, seed: 42, ..HaarSuiteConfig::default() };
        let reports = run_haar_suite(&ctx, &cfg).unwrap();
        assert!(reports.iter().all(|r| r.status() == crate::Status::ProbabilisticPass));
        assert!(reports.iter().all(|r| r.seed == Some(42)));
    }
}
