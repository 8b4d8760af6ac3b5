//! Browser bindings for the `polyadic` crate. Every export returns a JSON
//! string; failures come back as `{"error": "..."}`.

use polyadic::corpus::{self, cyclic_presentation};
use polyadic::measure::{refine, HaarContext, HaarMeasures};
use polyadic::{
    build_post_cover, verify_cover_properties, CheckConfig, CylinderSet, Element, HGPresentation, InverseSystem,
    VerificationReport,
};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_ORDER: usize = 32;
const MAX_ARITY: usize = 8;

fn respond<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).expect("serializable"),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn presentation(n: usize, m: usize, mult: usize, b: usize) -> Result<HGPresentation, String> {
    if !(2..=MAX_ARITY).contains(&n) {
        return Err(format!("arity must be between 2 and {MAX_ARITY}"));
    }
    if !(1..=MAX_ORDER).contains(&m) {
        return Err(format!("order must be between 1 and {MAX_ORDER}"));
    }
    if b >= m {
        return Err(format!("b = {b} is not an element of Z{m}"));
    }
    Ok(cyclic_presentation(n, m, mult % m, b))
}

#[derive(Serialize)]
struct Derived {
    arity: usize,
    order: usize,
    theta: Vec<Element>,
    b: Element,
    valid: bool,
    reports: Vec<VerificationReport>,
    /// Cayley table of the retract at 0, row-major.
    retract: Option<Vec<Element>>,
}

/// Presentation `(Z_m, +, x -> mult * x, b)` of arity `n`: validity, the
/// axiom checks of the derived group and its retract at 0.
#[wasm_bindgen]
pub fn derive_cyclic(n: usize, m: usize, mult: usize, b: usize) -> String {
    respond(derive_inner(n, m, mult, b))
}

fn derive_inner(n: usize, m: usize, mult: usize, b: usize) -> Result<Derived, String> {
    let p = presentation(n, m, mult, b)?;
    let v = p.validate();
    let mut out = Derived {
        arity: n,
        order: m,
        theta: p.theta().to_vec(),
        b,
        valid: v.passed(),
        reports: vec![v],
        retract: None,
    };
    if out.valid {
        let mut g = p.derive().map_err(|e| e.to_string())?;
        out.reports.extend(g.verify(&CheckConfig::default()).map_err(|e| e.to_string())?);
        out.retract = Some(g.retract(0).map_err(|e| e.to_string())?.table().to_vec());
    }
    Ok(out)
}

#[derive(Serialize)]
struct Cover {
    order: usize,
    grades: usize,
    grading: Vec<usize>,
    table: Vec<Element>,
    /// Cover index of each base element under the embedding.
    embedding: Vec<Element>,
    kernel: Vec<Element>,
    reports: Vec<VerificationReport>,
}

/// Post cover of the same presentation as [`derive_cyclic`].
#[wasm_bindgen]
pub fn post_cover(n: usize, m: usize, mult: usize, b: usize) -> String {
    respond(cover_inner(n, m, mult, b))
}

fn cover_inner(n: usize, m: usize, mult: usize, b: usize) -> Result<Cover, String> {
    let p = presentation(n, m, mult, b)?;
    let c = build_post_cover(&p).map_err(|e| e.to_string())?;
    let g = p.clone().derive().map_err(|e| e.to_string())?;
    Ok(Cover {
        order: c.size(),
        grades: c.grades(),
        grading: c.grading(),
        table: c.group().table().to_vec(),
        embedding: (0..m).map(|x| c.embed(x)).collect(),
        kernel: c.kernel().to_vec(),
        reports: verify_cover_properties(&c, &g, &CheckConfig::default()),
    })
}

fn systems() -> Vec<(&'static str, InverseSystem)> {
    let mut all = corpus::haar_corpus();
    all.push(("z3 tower: n=3 Z3<-Z9<-Z27, theta=-x", corpus::z3_tower()));
    all
}

/// The demo systems with their levels.
#[wasm_bindgen]
pub fn list_systems() -> String {
    let list: Vec<_> = systems()
        .iter()
        .map(|(name, s)| {
            let levels: Vec<_> = (0..s.index().len())
                .map(|k| json!({ "id": s.index().id(k), "size": s.level(k).size() }))
                .collect();
            json!({ "name": name, "arity": s.arity(), "top": s.index().top(), "levels": levels })
        })
        .collect();
    respond(Ok(list))
}

#[derive(Serialize)]
struct Measured {
    measures: HaarMeasures,
    /// The same set pulled back to the top level.
    refined: Vec<Element>,
    /// `f(c, .., c, A, c, .., c)` with `A` in `slot` and the thread through
    /// top element `coefficient` elsewhere.
    translate: Vec<Element>,
    translate_measures: HaarMeasures,
}

/// Haar measures of the cylinder over `subset` at `level` of system
/// `system`, its refinement to the top and one translate.
#[wasm_bindgen]
pub fn measure(system: usize, level: usize, subset: &[u32], slot: usize, coefficient: usize) -> String {
    respond(measure_inner(system, level, subset, slot, coefficient))
}

fn measure_inner(system: usize, level: usize, subset: &[u32], slot: usize, coefficient: usize) -> Result<Measured, String> {
    let all = systems();
    let (_, s) = all.get(system).ok_or("no such system")?;
    if level >= s.index().len() {
        return Err("no such level".into());
    }
    let n = s.arity();
    if !(1..=n).contains(&slot) {
        return Err(format!("slot must be between 1 and {n}"));
    }
    let err = |e: polyadic::Error| e.to_string();
    let a = CylinderSet::from_elements(s, level, subset.iter().map(|&x| x as Element)).map_err(err)?;
    let ctx = HaarContext::with_default_base_point(s).map_err(err)?;
    let top = s.index().top();
    let refined = refine(s, &a, top).map_err(err)?.subset.to_vec();
    let c = s.thread_from_top(coefficient).map_err(err)?;
    let coefficients = vec![c; n - 1];
    let data = s.thread_translate_data(slot, &coefficients).map_err(err)?;
    let (prefix, suffix) = &data[level];
    let t = s.level(level).translate(slot, prefix, suffix, &a.subset).map_err(err)?;
    let t = CylinderSet::new(s, level, t).map_err(err)?;
    Ok(Measured {
        measures: ctx.measures(&a),
        refined,
        translate: t.subset.to_vec(),
        translate_measures: ctx.measures(&t),
    })
}
