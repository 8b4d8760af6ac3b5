//! Explicit Post covers of derived n-ary groups.
//!
//! For a presentation `(G, ., theta, b)` of arity `n` the cover lives on
//! `G x Z_(n-1)`, with
//!
//! ```text
//! (x, i) o (y, j) = (x . theta^i(y) . b^q, r)   where i + j = q(n-1) + r, 0 <= r < n-1.
//! ```
//!
//! The n-ary group sits inside as the grade-1 coset of `K = G x {0}`, and the
//! n-fold product of grade-1 elements reproduces `f`. Cover elements are
//! indexed grade-major: `(x, i)` is `i * |G| + x`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{groups_isomorphic, FiniteGroup};
use crate::nary::{odometer, CheckConfig, FiniteNaryGroup};
use crate::presentation::HGPresentation;
use crate::report::{VerificationReport, Witness};
use crate::set::ElementSet;
use crate::Element;

/// Exhaustive n-fold product checks run while `|G|^n` stays under this.
pub const PRODUCT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostCoverGroup {
    source: HGPresentation,
    cover: FiniteGroup,
    grades: usize,
}

impl PostCoverGroup {
    pub fn source(&self) -> &HGPresentation {
        &self.source
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.cover
    }

    /// `n - 1`, the order of the grading group.
    pub fn grades(&self) -> usize {
        self.grades
    }

    pub fn base_size(&self) -> usize {
        self.source.base().size()
    }

    pub fn size(&self) -> usize {
        self.cover.size()
    }

    #[inline]
    pub fn index(&self, x: Element, grade: usize) -> Element {
        grade * self.base_size() + x
    }

    /// `(x, grade)` for a cover index.
    #[inline]
    pub fn pair(&self, e: Element) -> (Element, usize) {
        (e % self.base_size(), e / self.base_size())
    }

    pub fn grading(&self) -> Vec<usize> {
        (0..self.size()).map(|e| self.pair(e).1).collect()
    }

    /// `x -> (x, 1 mod (n-1))`.
    #[inline]
    pub fn embed(&self, x: Element) -> Element {
        self.index(x, 1 % self.grades)
    }

    /// The normal subgroup `K = G x {0}`.
    pub fn kernel(&self) -> ElementSet {
        ElementSet::from_elements(self.size(), 0..self.base_size()).expect("grade 0 in range")
    }

    /// The map on covers induced by `phi: G -> H` acting as the identity on
    /// grades. Fails when the result is not a group homomorphism.
    pub fn induced_map(&self, target: &PostCoverGroup, phi: &[Element]) -> Result<Vec<Element>> {
        if self.grades != target.grades || phi.len() != self.base_size() {
            return Err(Error::System(
                "covers of different arity or map of the wrong length".into(),
            ));
        }
        let map: Vec<Element> = (0..self.size())
            .map(|e| {
                let (x, i) = self.pair(e);
                target.index(phi[x], i)
            })
            .collect();
        if let Some((x, y)) = self.cover.homomorphism_witness(&target.cover, &map) {
            return Err(Error::System(format!(
                "induced cover map is not a homomorphism at ({:?}, {:?})",
                self.pair(x),
                self.pair(y)
            )));
        }
        Ok(map)
    }
}

pub fn build_post_cover(p: &HGPresentation) -> Result<PostCoverGroup> {
    let report = p.validate();
    if report.failed() {
        return Err(Error::InvalidPresentation(report.to_string()));
    }
    let g = p.base();
    let s = g.size();
    let m = p.arity() - 1;
    let cover = FiniteGroup::from_fn(m * s, |u, v| {
        let (x, i) = (u % s, u / s);
        let (y, j) = (v % s, v / s);
        let (q, r) = ((i + j) / m, (i + j) % m);
        let mut z = g.op(x, p.theta_pow(i, y));
        if q == 1 {
            z = g.op(z, p.b());
        }
        r * s + z
    })?;
    let names = (0..m * s).map(|e| format!("({},{})", e % s, e / s)).collect();
    Ok(PostCoverGroup {
        source: p.clone(),
        cover: cover.with_names(names),
        grades: m,
    })
}

/// `{ (a, 1 mod (n-1)) : a in set }`.
pub fn cover_subset_of_g(c: &PostCoverGroup, set: &ElementSet) -> ElementSet {
    let mut out = ElementSet::empty(c.size());
    for a in set.iter() {
        out.insert(c.embed(a));
    }
    out
}

/// Checks the five defining properties of the Post cover against `g`:
///
/// 1. `K` is a normal subgroup isomorphic to the retract;
/// 2. the embedded copy of `g` is a single coset of `K`;
/// 3. the quotient by `K` is cyclic of order `n - 1`;
/// 4. `f(x_1, ..., x_n)` equals the n-fold cover product of the embedded `x_k`;
/// 5. the embedded copy of `g` generates the cover.
pub fn verify_cover_properties(c: &PostCoverGroup, g: &FiniteNaryGroup, cfg: &CheckConfig) -> Vec<VerificationReport> {
    let subject = format!("post cover of order {}", c.size());
    let cover = c.group();
    let kernel = c.kernel();
    let n = c.grades + 1;

    let mut item1 = VerificationReport::new(&subject, "1: K normal and isomorphic to the retract");
    let start = Instant::now();
    match cover.subgroup(&kernel) {
        Ok(k_group) => {
            item1.instances += (c.size() * kernel.len()) as u64;
            if let Some((gg, k)) = find_non_normal(cover, &kernel) {
                item1.record_failure(Witness::new("g.k.g^-1 outside K at (g, k)", vec![gg, k]));
            }
            let retract = g.retract(0);
            for (label, target) in [("base", Ok(c.source.base().clone())), ("retract over 0", retract)] {
                item1.instances += 1;
                match target {
                    Ok(t) if groups_isomorphic(&k_group, &t).is_some() => {}
                    _ => item1.record_failure(Witness::new(format!("K not isomorphic to {label}"), vec![])),
                }
            }
        }
        Err(Error::GroupAxiom { witness, .. }) => {
            item1.record_failure(Witness::new("K not closed at", witness));
        }
        Err(_) => item1.record_failure(Witness::new("K not a subgroup", vec![])),
    }
    let item1 = item1.with_elapsed(start.elapsed());

    let start = Instant::now();
    let mut item2 = VerificationReport::new(&subject, "2: G is a coset of K");
    let image = cover_subset_of_g(c, &ElementSet::full(c.base_size()));
    let g0 = c.embed(0);
    let left = coset(cover, g0, &kernel, true);
    let right = coset(cover, g0, &kernel, false);
    item2.instances = image.len() as u64;
    if image.len() != g.size() {
        item2.record_failure(Witness::new("embedding not injective", vec![image.len()]));
    }
    if image != left || image != right {
        item2.record_failure(Witness::new(
            "embedded G differs from the coset of K at",
            vec![g0],
        ));
    }
    let item2 = item2.with_elapsed(start.elapsed());

    let start = Instant::now();
    let mut item3 = VerificationReport::new(&subject, "3: G*/K is cyclic of order n-1");
    let mut cosets: Vec<ElementSet> = Vec::new();
    for e in 0..c.size() {
        let cs = coset(cover, e, &kernel, true);
        if !cosets.contains(&cs) {
            cosets.push(cs);
        }
    }
    item3.instances = c.size() as u64;
    if cosets.len() != c.grades {
        item3.record_failure(Witness::new("number of cosets", vec![cosets.len()]));
    }
    // Order of the image of g0 in the quotient.
    let mut power = g0;
    let mut order = 1;
    while !kernel.contains(power) && order <= c.size() {
        power = cover.op(power, g0);
        order += 1;
    }
    if order != c.grades {
        item3.record_failure(Witness::new("order of gK in the quotient", vec![order]));
    }
    if let Some((gg, k)) = find_non_normal(cover, &kernel) {
        item3.record_failure(Witness::new("K not normal at (g, k)", vec![gg, k]));
    }
    let item3 = item3.with_elapsed(start.elapsed());

    let start = Instant::now();
    let mut item4 = VerificationReport::new(&subject, "4: f is the n-fold cover product");
    let s = g.size();
    let product_matches = |xs: &[Element]| {
        let prod = xs.iter().skip(1).fold(c.embed(xs[0]), |acc, &x| cover.op(acc, c.embed(x)));
        prod == c.embed(g.eval_unchecked(xs))
    };
    let tuples = (s as u128).saturating_pow(n as u32);
    let mut xs = vec![0; n];
    if tuples <= cfg.budget.min(PRODUCT_BUDGET) as u128 {
        loop {
            item4.instances += 1;
            if !product_matches(&xs) {
                item4.record_failure(Witness::new("tuple", xs.clone()));
                break;
            }
            if !odometer(&mut xs, s) {
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.samples {
            xs.iter_mut().for_each(|x| *x = rng.gen_range(0..s));
            item4.instances += 1;
            if !product_matches(&xs) {
                item4.record_failure(Witness::new("tuple", xs.clone()));
                break;
            }
        }
        item4.mark_probabilistic(cfg.seed);
    }
    let item4 = item4.with_elapsed(start.elapsed());

    let start = Instant::now();
    let mut item5 = VerificationReport::new(&subject, "5: G generates G*");
    let gens = image.to_vec();
    let span = cover.generated_subgroup(&gens);
    item5.instances = span.len() as u64;
    if !span.is_full() {
        item5.record_failure(Witness::new("span size", vec![span.len()]));
    }
    if c.grades == 1 {
        item5.note("n = 2: the embedded copy is the whole group, so this holds trivially");
    }
    let item5 = item5.with_elapsed(start.elapsed());

    vec![item1, item2, item3, item4, item5]
}

fn coset(g: &FiniteGroup, x: Element, k: &ElementSet, left: bool) -> ElementSet {
    let mut out = ElementSet::empty(g.size());
    for y in k.iter() {
        out.insert(if left { g.op(x, y) } else { g.op(y, x) });
    }
    out
}

fn find_non_normal(g: &FiniteGroup, k: &ElementSet) -> Option<(Element, Element)> {
    (0..g.size()).find_map(|x| {
        let inv = g.inverse(x);
        k.iter()
            .find(|&y| !k.contains(g.op(g.op(x, y), inv)))
            .map(|y| (x, y))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_passed;

    fn presentation(n: usize, m: usize, k: usize, b: usize) -> HGPresentation {
        HGPresentation::new(n, FiniteGroup::cyclic(m), (0..m).map(|x| x * k % m).collect(), b).unwrap()
    }

    #[test]
    fn e1_cover_is_klein() {
        let c = build_post_cover(&presentation(3, 2, 1, 0)).unwrap();
        assert_eq!(c.size(), 4);
        for u in 0..4 {
            for v in 0..4 {
                let ((x, i), (y, j)) = (c.pair(u), c.pair(v));
                assert_eq!(c.pair(c.group().op(u, v)), ((x + y) % 2, (i + j) % 2));
            }
        }
        assert!(groups_isomorphic(c.group(), &FiniteGroup::klein_four()).is_some());
    }

    #[test]
    fn e2_cover_carry() {
        let c = build_post_cover(&presentation(3, 4, 1, 2)).unwrap();
        assert_eq!(c.size(), 8);
        let g01 = c.index(0, 1);
        assert_eq!(c.pair(c.group().op(g01, g01)), (2, 0));
        let p = c.group().op(c.group().op(g01, g01), g01);
        assert_eq!(c.pair(p), (2, 1));
    }

    #[test]
    fn binary_cover_is_base() {
        let c = build_post_cover(&presentation(2, 3, 1, 0)).unwrap();
        assert_eq!(c.size(), 3);
        assert!(c.kernel().is_full());
        assert_eq!(c.embed(2), 2);
        let g = presentation(2, 3, 1, 0).derive().unwrap();
        let reports = verify_cover_properties(&c, &g, &CheckConfig::default());
        assert!(all_passed(&reports));
        assert!(!reports[4].notes.is_empty());
    }

    #[test]
    fn five_properties_on_small_examples() {
        for p in [presentation(3, 2, 1, 0), presentation(3, 4, 1, 2), presentation(3, 3, 2, 0), presentation(5, 8, 3, 4)] {
            let c = build_post_cover(&p).unwrap();
            let g = p.clone().derive().unwrap();
            let reports = verify_cover_properties(&c, &g, &CheckConfig::default());
            assert!(all_passed(&reports), "{reports:#?}");
            assert_eq!(c.kernel().len() * c.grades(), c.size());
        }
        let c = build_post_cover(&presentation(3, 2, 1, 0)).unwrap();
        let g = presentation(3, 2, 1, 0).derive().unwrap();
        let reports = verify_cover_properties(&c, &g, &CheckConfig::default());
        assert_eq!(reports[3].instances, 8);
    }

    #[test]
    fn item4_detects_mismatched_operation() {
        let c = build_post_cover(&presentation(3, 4, 1, 2)).unwrap();
        let wrong = FiniteNaryGroup::from_fn(3, 4, |x| (x[0] + x[1] + x[2]) % 4).unwrap();
        let reports = verify_cover_properties(&c, &wrong, &CheckConfig::default());
        assert!(reports[3].failed());
        assert_eq!(reports[3].witnesses()[0].values, vec![0, 0, 0]);
    }

    #[test]
    fn cover_subset_embeds_at_grade_one() {
        let c = build_post_cover(&presentation(3, 2, 1, 0)).unwrap();
        let a = ElementSet::from_elements(2, [1]).unwrap();
        let img = cover_subset_of_g(&c, &a);
        assert_eq!(img.iter().map(|e| c.pair(e)).collect::<Vec<_>>(), vec![(1, 1)]);
        let c = build_post_cover(&presentation(3, 4, 1, 2)).unwrap();
        let img = cover_subset_of_g(&c, &ElementSet::full(4));
        assert_eq!(img.len(), 4);
        assert!(img.iter().all(|e| c.pair(e).1 == 1));
        assert!(cover_subset_of_g(&c, &ElementSet::empty(4)).is_empty());
    }

    #[test]
    fn reduction_induces_cover_epimorphism() {
        let top = build_post_cover(&presentation(3, 8, 1, 2)).unwrap();
        let bottom = build_post_cover(&presentation(3, 4, 1, 2)).unwrap();
        let phi: Vec<_> = (0..8).map(|x| x % 4).collect();
        let map = top.induced_map(&bottom, &phi).unwrap();
        assert_eq!(bottom.pair(map[top.index(5, 1)]), (1, 1));
        let bad: Vec<_> = (0..8).map(|x| (x + 1) % 4).collect();
        assert!(top.induced_map(&bottom, &bad).is_err());
    }
}
