//! Hosszu-Gloskin presentations: an ordinary group `(G, .)`, an automorphism
//! `theta` and an element `b` with
//!
//! 1. `theta(b) = b`,
//! 2. `theta^(n-1)(x) = b . x . b^-1` for every `x`,
//!
//! from which the n-ary operation
//! `f(x_1, ..., x_n) = x_1 . theta(x_2) . theta^2(x_3) ... theta^(n-1)(x_n) . b`
//! is derived.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::nary::{odometer, CheckConfig, FiniteNaryGroup};
use crate::report::{VerificationReport, Witness};
use crate::Element;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HGPresentation {
    arity: usize,
    base: FiniteGroup,
    theta: Vec<Element>,
    b: Element,
    /// `theta_powers[k][x] = theta^k(x)` for `k = 0..arity`.
    theta_powers: Vec<Vec<Element>>,
}

impl HGPresentation {
    /// Checks only the shape of the data; see [`HGPresentation::validate`]
    /// for the algebraic conditions.
    pub fn new(arity: usize, base: FiniteGroup, theta: Vec<Element>, b: Element) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidTable(format!("arity must be at least 2, got {arity}")));
        }
        let size = base.size();
        if theta.len() != size {
            return Err(Error::InvalidTable(format!(
                "theta needs {size} images, found {}",
                theta.len()
            )));
        }
        if let Some(&bad) = theta.iter().chain([&b]).find(|&&v| v >= size) {
            return Err(Error::OutOfRange { element: bad, size });
        }
        let mut theta_powers = vec![(0..size).collect::<Vec<_>>()];
        for k in 1..arity {
            let prev = &theta_powers[k - 1];
            theta_powers.push(prev.iter().map(|&x| theta[x]).collect());
        }
        Ok(HGPresentation {
            arity,
            base,
            theta,
            b,
            theta_powers,
        })
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn theta(&self) -> &[Element] {
        &self.theta
    }

    pub fn b(&self) -> Element {
        self.b
    }

    /// `theta^k(x)` for `k < arity`.
    #[inline]
    pub fn theta_pow(&self, k: usize, x: Element) -> Element {
        self.theta_powers[k][x]
    }

    /// `theta^k(x)` for any `k`.
    pub fn theta_pow_any(&self, k: usize, x: Element) -> Element {
        (0..k).fold(x, |y, _| self.theta[y])
    }

    pub fn validate(&self) -> VerificationReport {
        let start = Instant::now();
        let g = &self.base;
        let size = g.size();
        let mut report = VerificationReport::new(
            format!("presentation (n={}, order {})", self.arity, size),
            "hosszu-gloskin conditions",
        );
        report.instances = (size * size + 1 + size) as u64;
        if let Some(w) = g.automorphism_witness(&self.theta) {
            let label = if w.len() == 1 {
                "theta is not injective at x"
            } else {
                "theta(x.y) != theta(x).theta(y) at (x, y)"
            };
            report.record_failure(Witness::new(label, w));
        }
        if self.theta[self.b] != self.b {
            report.record_failure(Witness::new("condition 1: theta(b) != b at b", vec![self.b]));
        }
        let b_inv = g.inverse(self.b);
        if let Some(x) = (0..size).find(|&x| {
            self.theta_pow_any(self.arity - 1, x) != g.op(g.op(self.b, x), b_inv)
        }) {
            report.record_failure(Witness::new(
                "condition 2: theta^(n-1)(x) != b.x.b^-1 at x",
                vec![x],
            ));
        }
        report.with_elapsed(start.elapsed())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, xs: &[Element]) -> Element {
        let g = &self.base;
        let acc = xs
            .iter()
            .enumerate()
            .skip(1)
            .fold(xs[0], |acc, (k, &x)| g.op(acc, self.theta_powers[k][x]));
        g.op(acc, self.b)
    }

    /// The derived n-ary group, backed by this presentation.
    pub fn derive(self) -> Result<FiniteNaryGroup> {
        let report = self.validate();
        if report.failed() {
            return Err(Error::InvalidPresentation(report.to_string()));
        }
        Ok(FiniteNaryGroup::from_presentation(self))
    }
}

/// Limits for [`recover`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecoverConfig {
    /// Largest carrier for which automorphisms are enumerated.
    pub size_limit: usize,
    /// Pointwise comparison is exhaustive when `size^n <= check.budget`,
    /// otherwise it uses `check.samples` random tuples.
    pub check: CheckConfig,
}

impl Default for RecoverConfig {
    fn default() -> Self {
        RecoverConfig {
            size_limit: 12,
            check: CheckConfig {
                budget: 10_000_000,
                samples: 1_000_000,
                seed: 0,
            },
        }
    }
}

/// Finds a presentation of `g` over the retract at `base_point`.
///
/// Candidates `(theta, b)` range over `Aut(retract) x carrier` in
/// lexicographic order (theta's image array first, then `b`); the first one
/// satisfying both conditions and reproducing `f` pointwise is returned.
pub fn recover(g: &FiniteNaryGroup, base_point: Element, cfg: &RecoverConfig) -> Result<HGPresentation> {
    if g.size() > cfg.size_limit {
        return Err(Error::SearchTooLarge {
            size: g.size(),
            limit: cfg.size_limit,
        });
    }
    let base = g.retract(base_point)?;
    let n = g.arity();
    for theta in base.automorphisms() {
        for b in 0..base.size() {
            if theta[b] != b {
                continue;
            }
            let candidate = HGPresentation::new(n, base.clone(), theta.clone(), b)?;
            if candidate.validate().failed() {
                continue;
            }
            if reproduces(&candidate, g, &cfg.check) {
                return Ok(candidate);
            }
        }
    }
    Err(Error::NoPresentationFound { base_point })
}

fn reproduces(p: &HGPresentation, g: &FiniteNaryGroup, cfg: &CheckConfig) -> bool {
    let n = g.arity();
    let size = g.size();
    let tuples = (size as u128).saturating_pow(n as u32);
    let mut xs = vec![0; n];
    if tuples <= cfg.budget as u128 {
        loop {
            if p.eval_unchecked(&xs) != g.eval_unchecked(&xs) {
                return false;
            }
            if !odometer(&mut xs, size) {
                return true;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.samples).all(|_| {
        xs.iter_mut().for_each(|x| *x = rng.gen_range(0..size));
        p.eval_unchecked(&xs) == g.eval_unchecked(&xs)
    })
}
