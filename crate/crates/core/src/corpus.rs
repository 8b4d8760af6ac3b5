//! Ready-made presentations and inverse systems used by the tests, the
//! acceptance suite, the CLI and the browser demo.

use std::collections::BTreeMap;

use crate::group::FiniteGroup;
use crate::nary::FiniteNaryGroup;
use crate::presentation::HGPresentation;
use crate::system::{DirectedIndex, InverseSystem};
use crate::Element;

/// `(Z_m, +)` with `theta(x) = mult * x` and the given `b`.
pub fn cyclic_presentation(n: usize, m: usize, mult: usize, b: Element) -> HGPresentation {
    HGPresentation::new(n, FiniteGroup::cyclic(m), (0..m).map(|x| x * mult % m).collect(), b)
        .expect("well-formed cyclic presentation")
}

/// S_3 with `theta` = conjugation by `conj_by` and `b` = identity.
pub fn s3_presentation(n: usize, conj_by: Element) -> HGPresentation {
    let s3 = FiniteGroup::symmetric3();
    let inv = s3.inverse(conj_by);
    let theta = (0..6).map(|x| s3.op(s3.op(conj_by, x), inv)).collect();
    HGPresentation::new(n, s3, theta, 0).expect("well-formed S_3 presentation")
}

/// Sign of each S_3 element in [`FiniteGroup::symmetric3`] order, as Z_2.
pub const S3_SIGN: [Element; 6] = [0, 1, 1, 0, 0, 1];

/// S_3 index of the transposition swapping 0 and 1.
pub const S3_TRANSPOSITION: Element = 2;
/// S_3 index of the 3-cycle 0 -> 1 -> 2 -> 0.
pub const S3_THREE_CYCLE: Element = 3;

fn derived(p: HGPresentation) -> FiniteNaryGroup {
    p.derive().expect("corpus presentations are valid")
}

pub fn single_level(g: FiniteNaryGroup) -> InverseSystem {
    let index = DirectedIndex::chain(["G"]).expect("one level");
    InverseSystem::new(index, vec![g], BTreeMap::new()).expect("one level")
}

/// A chain of cyclic levels `Z_{m_0} <- Z_{m_1} <- ...` with reduction maps,
/// `theta(x) = mult * x` and per-level `b`.
pub fn cyclic_tower(n: usize, moduli: &[usize], mult: usize, bs: &[Element]) -> InverseSystem {
    let ids: Vec<String> = moduli.iter().map(|m| format!("Z{m}")).collect();
    let ids: Vec<&str> = ids.iter().map(String::as_str).collect();
    let levels = moduli
        .iter()
        .zip(bs)
        .map(|(&m, &b)| derived(cyclic_presentation(n, m, mult, b)))
        .collect();
    InverseSystem::chain(&ids, levels, |_, j, x| x % moduli[j]).expect("cyclic tower")
}

/// `Z_2 <- S_3` along the sign map, with `theta` = conjugation by `conj_by`
/// on S_3 and the identity on Z_2.
pub fn s3_sign_system(n: usize, conj_by: Element) -> InverseSystem {
    let top = derived(s3_presentation(n, conj_by));
    let bottom = derived(cyclic_presentation(n, 2, 1, 0));
    let names: Vec<String> = FiniteGroup::symmetric3().names().unwrap().to_vec();
    InverseSystem::chain(&["Z2", "S3"], vec![bottom, top.with_names(names)], |_, _, x| S3_SIGN[x])
        .expect("sign system")
}

/// n = 3, `Z_2 <- Z_4 <- Z_8`, `theta = id`, `b = 0`.
pub fn s1() -> InverseSystem {
    cyclic_tower(3, &[2, 4, 8], 1, &[0, 0, 0])
}

/// n = 3, `Z_2 <- Z_4 <- Z_8` with `f = x + y + z + 2` on Z_4 and
/// `x + y + z + 6` on Z_8, so the retract at 0 has identity 2 throughout.
pub fn e2_tower() -> InverseSystem {
    cyclic_tower(3, &[2, 4, 8], 1, &[0, 2, 6])
}

/// The Z_3-power tower `Z_3 <- Z_9 <- Z_27` with n = 3, `theta(x) = -x`
/// (which is `2x` on Z_3) and `b = 0`.
pub fn z3_tower() -> InverseSystem {
    let moduli = [3, 9, 27];
    let ids = ["Z3", "Z9", "Z27"];
    let levels = moduli
        .iter()
        .map(|&m| derived(cyclic_presentation(3, m, m - 1, 0)))
        .collect();
    InverseSystem::chain(&ids, levels, |_, j, x| x % moduli[j]).expect("Z_3 tower")
}

/// The Z_3-power tower with `theta(x) = 2x` at every level. Doubling has
/// order 18 modulo 27, so `theta^(n-1) = id` needs `18 | n - 1`; this uses
/// the smallest such arity, n = 19.
pub fn z3_doubling_tower() -> InverseSystem {
    cyclic_tower(19, &[3, 9, 27], 2, &[0, 0, 0])
}

/// Two incomparable Z_2 quotients below the Klein four-group (n = 3,
/// `theta = id`, `b = 0`). Element `(a, b)` of the top is `2a + b`.
pub fn klein_diamond() -> InverseSystem {
    let ids = ["left", "right", "V4"].map(String::from).to_vec();
    let rel = [("V4", "left"), ("V4", "right")].map(|(i, j)| (i.to_string(), j.to_string()));
    let index = DirectedIndex::new(ids, &rel, "V4").expect("diamond");
    let v4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
    let top = derived(HGPresentation::new(3, v4, (0..4).collect(), 0).expect("V4"));
    let z2 = || derived(cyclic_presentation(3, 2, 1, 0));
    let maps = BTreeMap::from([
        ((2, 0), vec![0, 0, 1, 1]),
        ((2, 1), vec![0, 1, 0, 1]),
    ]);
    InverseSystem::new(index, vec![z2(), z2(), top], maps).expect("diamond")
}

/// The named systems spanning arities 2 to 5 used for the Haar identity.
pub fn haar_corpus() -> Vec<(&'static str, InverseSystem)> {
    vec![
        ("s1: n=3 Z2<-Z4<-Z8", s1()),
        ("e2-tower: n=3 Z2<-Z4<-Z8, b=-2", e2_tower()),
        ("binary: n=2 Z2<-Z4<-Z8", cyclic_tower(2, &[2, 4, 8], 1, &[0, 0, 0])),
        ("sign: n=2 Z2<-S3", s3_sign_system(2, 0)),
        ("sign: n=3 Z2<-S3, theta=conj(t)", s3_sign_system(3, S3_TRANSPOSITION)),
        ("z3: n=3 Z3, theta=2x", single_level(derived(cyclic_presentation(3, 3, 2, 0)))),
        ("n=4 Z2<-Z4, b=1", cyclic_tower(4, &[2, 4], 1, &[1, 1])),
        ("sign: n=4 Z2<-S3, theta=conj(r)", s3_sign_system(4, S3_THREE_CYCLE)),
        ("n=5 Z2<-Z4<-Z8, theta=3x, b=4", cyclic_tower(5, &[2, 4, 8], 3, &[0, 0, 4])),
        ("sign: n=5 Z2<-S3, theta=conj(t)", s3_sign_system(5, S3_TRANSPOSITION)),
        ("diamond: n=3 Z2,Z2<-V4", klein_diamond()),
    ]
}

/// Valid presentations with base order at most 8 and arity at most 5.
pub fn presentation_corpus() -> Vec<(&'static str, HGPresentation)> {
    vec![
        ("E1: n=3 Z2 id 0", cyclic_presentation(3, 2, 1, 0)),
        ("E2: n=3 Z4 id 2", cyclic_presentation(3, 4, 1, 2)),
        ("E3: n=3 Z3 2x 0", cyclic_presentation(3, 3, 2, 0)),
        ("n=2 Z3", cyclic_presentation(2, 3, 1, 0)),
        ("n=2 S3", s3_presentation(2, 0)),
        ("n=3 Z8 id 4", cyclic_presentation(3, 8, 1, 4)),
        ("n=3 Z8 7x 0", cyclic_presentation(3, 8, 7, 0)),
        ("n=3 Z8 3x 4", cyclic_presentation(3, 8, 3, 4)),
        ("n=3 S3 conj(t)", s3_presentation(3, S3_TRANSPOSITION)),
        ("n=4 Z4 id 1", cyclic_presentation(4, 4, 1, 1)),
        ("n=4 S3 conj(r)", s3_presentation(4, S3_THREE_CYCLE)),
        ("n=4 Z7 2x 0", cyclic_presentation(4, 7, 2, 0)),
        ("n=5 Z8 3x 4", cyclic_presentation(5, 8, 3, 4)),
        ("n=5 Z5 2x 0", cyclic_presentation(5, 5, 2, 0)),
        ("n=5 S3 conj(t)", s3_presentation(5, S3_TRANSPOSITION)),
        ("n=5 Z6 5x 3", cyclic_presentation(5, 6, 5, 3)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_presentations_are_valid() {
        for (name, p) in presentation_corpus() {
            assert!(p.is_valid(), "{name}: {}", p.validate());
        }
        assert!(!cyclic_presentation(3, 9, 2, 0).is_valid());
        assert!(cyclic_presentation(19, 27, 2, 0).is_valid());
    }

    #[test]
    fn haar_corpus_systems_build_covers() {
        for (name, s) in haar_corpus() {
            assert!(s.induced_cover_system().is_ok(), "{name}");
        }
        assert!(z3_tower().induced_cover_system().is_ok());
        assert!(z3_doubling_tower().induced_cover_system().is_ok());
    }
}
