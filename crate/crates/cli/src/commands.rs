use std::fmt::Write as _;

use knset::fan::Fan;
use knset::koszul::{
    assemble_report, massey_triple, poincare_duality_check, CohomologyReport, GeneratorEntry, KoszulModel,
    MasseyOutcome, ProductPair,
};
use knset::polytope::{cokernel_matrix, jacobian_rank_check, sample_on_z, HPolytope, Tolerances};
use knset::SimplicialComplex;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::args::CommonArgs;
use crate::cache::SubcomplexCache;
use crate::error::CliError;
use crate::input::{polytope_error, Input};

/// A command result in both output formats.
pub struct Output {
    pub json: Value,
    pub text: String,
}

fn fan_summary(f: &Fan) -> (Value, String) {
    let complete = f.is_complete();
    let regular = f.is_regular();
    let mut text = String::new();
    writeln!(text, "simplicial: true").unwrap();
    writeln!(text, "regular: {regular}").unwrap();
    writeln!(text, "complete: {complete}").unwrap();
    if !f.rescaled_rays().is_empty() {
        writeln!(text, "rescaled rays: {:?}", f.rescaled_rays()).unwrap();
    }
    let group = match f.group_structure() {
        Ok(g) => {
            let finite = if g.torsion.is_empty() {
                String::new()
            } else {
                let parts: Vec<String> = g.torsion.iter().map(|t| format!("Z/{t}")).collect();
                format!(", finite part {}", parts.join(" + "))
            };
            writeln!(text, "G: rank {}{finite}", g.free_rank).unwrap();
            json!({"torus_rank": g.free_rank, "finite_part": big_list(&g.torsion)})
        }
        Err(e) => {
            writeln!(text, "G: undefined ({e})").unwrap();
            Value::Null
        }
    };
    let value = json!({
        "simplicial": true,
        "regular": regular,
        "complete": complete,
        "rescaled_rays": f.rescaled_rays(),
        "group": group,
    });
    (value, text)
}

pub fn validate(input: &Input) -> Result<Output, CliError> {
    match input {
        Input::Fan(f) => {
            let (mut value, body) = fan_summary(f);
            value["kind"] = json!("fan");
            value["m"] = json!(f.ray_count());
            value["n"] = json!(f.dimension());
            let text = format!("fan: m={}, n={}\n{body}", f.ray_count(), f.dimension());
            Ok(Output { json: value, text })
        }
        Input::Polytope(p) => {
            let simple = p.is_simple();
            let mut value = json!({
                "kind": "polytope",
                "m": p.facet_count(),
                "n": p.dimension(),
                "vertices": p.vertices().len(),
                "simple": simple,
            });
            let mut text = format!(
                "polytope: m={}, n={}, vertices={}\nsimple: {simple}\n",
                p.facet_count(),
                p.dimension(),
                p.vertices().len()
            );
            if simple {
                let fan = p.normal_fan().map_err(polytope_error)?;
                let (fan_value, body) = fan_summary(&fan);
                value["normal_fan"] = fan_value;
                text.push_str(&body);
            }
            Ok(Output { json: value, text })
        }
        Input::Complex(k) => {
            let non_faces: Vec<Vec<usize>> = k.minimal_non_faces().iter().map(|s| s.labels()).collect();
            let value = json!({
                "kind": "complex",
                "m": k.vertex_count(),
                "dimension": k.dimension(),
                "f_vector": k.f_vector(),
                "minimal_non_faces": non_faces,
            });
            let text = format!(
                "complex: m={}, dimension={}\nf-vector: {:?}\nminimal non-faces: {}\n",
                k.vertex_count(),
                k.dimension(),
                k.f_vector(),
                render_sets(&non_faces)
            );
            Ok(Output { json: value, text })
        }
    }
}

/// Integers as JSON numbers when they fit in `i64`, decimal strings otherwise.
fn big_list(xs: &[BigInt]) -> Value {
    xs.iter()
        .map(|x| x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from))
        .collect()
}

fn render_sets(sets: &[Vec<usize>]) -> String {
    sets.iter()
        .map(|s| format!("{{{}}}", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn report_for(input: &Input, cache: &SubcomplexCache) -> Result<(SimplicialComplex, CohomologyReport), CliError> {
    let k = input.complex()?;
    let mut report = assemble_report(&cache.tables(&k));
    if let Some((m, n)) = input.manifold_dimensions() {
        report.poincare_duality = Some(poincare_duality_check(&report, m, n));
    }
    Ok((k, report))
}

fn report_text(report: &CohomologyReport) -> String {
    let mut text = String::new();
    let betti: Vec<String> = report.betti.iter().map(|b| b.to_string()).collect();
    writeln!(text, "betti: ({})", betti.join(",")).unwrap();
    for g in &report.groups {
        let group = g.group();
        if !group.is_zero() {
            writeln!(text, "H^{} = {group}", g.degree).unwrap();
        }
    }
    writeln!(
        text,
        "torsion: {}",
        if report.is_torsion_free() { "none" } else { "present" }
    )
    .unwrap();
    writeln!(text, "bigraded:").unwrap();
    for e in &report.bigraded {
        let torsion = if e.torsion.is_empty() {
            String::new()
        } else {
            format!(
                " torsion {:?}",
                e.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()
            )
        };
        writeln!(text, "  b^{{-{},{}}} = {}{torsion}", e.i, e.two_j, e.rank).unwrap();
    }
    if let Some(pd) = report.poincare_duality {
        writeln!(text, "poincare duality: {pd}").unwrap();
    }
    text
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

pub fn betti(input: &Input, cache: &SubcomplexCache) -> Result<Output, CliError> {
    let (_, report) = report_for(input, cache)?;
    Ok(Output {
        json: to_value(&report),
        text: report_text(&report),
    })
}

pub fn ring(input: &Input, cache: &SubcomplexCache, common: &CommonArgs, products: bool) -> Result<Output, CliError> {
    let (k, mut report) = report_for(input, cache)?;
    let model = KoszulModel::new(k);
    let gens: Vec<_> = model
        .all_generators()
        .into_iter()
        .filter(|(_, c, _)| common.degree.is_none_or(|d| d == c.degree))
        .collect();
    let entries: Vec<GeneratorEntry> = gens
        .iter()
        .map(|(i, c, order)| GeneratorEntry {
            degree: c.degree,
            cocycle: c.representative.to_string(),
            multidegree: i.labels(),
            order: (!order.is_zero()).then(|| order.to_string()),
        })
        .collect();
    let mut text = report_text(&report);
    let mut degree = None;
    for e in &entries {
        if degree != Some(e.degree) {
            let count = entries.iter().filter(|x| x.degree == e.degree).count();
            writeln!(text, "H^{}: {count} generators", e.degree).unwrap();
            degree = Some(e.degree);
        }
        let order = e.order.as_ref().map(|o| format!(" (order {o})")).unwrap_or_default();
        writeln!(text, "  [{}]{order}", e.cocycle).unwrap();
    }
    report.generators = Some(entries);
    let mut value = to_value(&report);
    if products {
        let mut table = Vec::new();
        writeln!(text, "products:").unwrap();
        for (a, (_, x, _)) in gens.iter().enumerate() {
            for (_, y, _) in &gens[a..] {
                let p = model.cup_product(x, y);
                if p.representative.is_zero() {
                    continue;
                }
                writeln!(
                    text,
                    "  [{}]*[{}] = [{}]",
                    x.representative, y.representative, p.representative
                )
                .unwrap();
                table.push(json!({
                    "left": x.representative.to_string(),
                    "right": y.representative.to_string(),
                    "product": p.representative.to_string(),
                }));
            }
        }
        value["products"] = Value::Array(table);
    }
    Ok(Output { json: value, text })
}

fn polytope(input: &Input) -> Result<&HPolytope, CliError> {
    match input {
        Input::Polytope(p) => Ok(p),
        _ => Err(CliError::Input("quadrics needs a polytope input".into())),
    }
}

pub fn quadrics(input: &Input, common: &CommonArgs, check: bool, samples: usize) -> Result<Output, CliError> {
    let p = polytope(input)?;
    let q = cokernel_matrix(p, common.facet_order.as_deref()).map_err(polytope_error)?;
    let equations = q.render_equations();
    let target: Vec<String> = q.target().iter().map(|t| t.to_string()).collect();
    let mut value = to_value(&q);
    value["equations"] = json!(equations);
    value["target"] = big_list(&q.target());
    let mut text = String::new();
    writeln!(text, "permutation: {:?}", q.permutation).unwrap();
    writeln!(text, "C =").unwrap();
    for row in &q.c {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        writeln!(text, "  {}", cells.join("")).unwrap();
    }
    writeln!(
        text,
        "b = ({})",
        q.b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    )
    .unwrap();
    writeln!(text, "Cb = ({})", target.join(",")).unwrap();
    for e in &equations {
        writeln!(text, "{e}").unwrap();
    }
    if check {
        let tol = Tolerances {
            residual: common.tol,
            ..Tolerances::default()
        };
        let pts = sample_on_z(p, &q, samples, common.seed).map_err(polytope_error)?;
        let max_residual = pts.iter().fold(0.0f64, |acc, pt| acc.max(pt.max_residual()));
        let mut full_rank = 0;
        for pt in &pts {
            if let Ok(true) = jacobian_rank_check(pt, &q, tol) {
                full_rank += 1;
            }
        }
        let rows = q.equation_count();
        let ok = max_residual < tol.residual && full_rank == pts.len();
        writeln!(
            text,
            "check: max residual {max_residual:.3e} {} {:e}, rank {rows}/{rows} at {full_rank}/{} points",
            if max_residual < tol.residual { "<" } else { ">=" },
            tol.residual,
            pts.len()
        )
        .unwrap();
        value["check"] = json!({
            "samples": pts.len(),
            "seed": common.seed,
            "max_residual": max_residual,
            "tolerance": tol.residual,
            "full_rank_points": full_rank,
            "rank": rows,
            "passed": ok,
        });
    }
    Ok(Output { json: value, text })
}

pub fn massey(input: &Input, a: &str, b: &str, c: &str) -> Result<Output, CliError> {
    let k = input.complex()?;
    let model = KoszulModel::new(k);
    let parse = |s: &str| model.parse_class(s).map_err(|e| CliError::Cocycle(format!("{s}: {e}")));
    let (a, b, c) = (parse(a)?, parse(b)?, parse(c)?);
    let out = massey_triple(&model, &a, &b, &c).map_err(|e| CliError::Cocycle(e.to_string()))?;
    Ok(match out {
        MasseyOutcome::Undefined(pair) => {
            let pair = match pair {
                ProductPair::Ab => "ab",
                ProductPair::Bc => "bc",
            };
            Output {
                json: json!({"defined": false, "nonzero_product": pair}),
                text: format!("undefined: the product {pair} is nonzero in cohomology\n"),
            }
        }
        MasseyOutcome::Defined(r) => {
            let canonical = model.canonical(&r.representative);
            let verdict = if r.trivial { "trivial" } else { "NON-trivial" };
            Output {
                json: json!({
                    "defined": true,
                    "trivial": r.trivial,
                    "degree": r.representative.degree,
                    "representative": r.representative.representative.to_string(),
                    "class": canonical.representative.to_string(),
                    "e": r.e.to_string(),
                    "f": r.f.to_string(),
                }),
                text: format!(
                    "defined, {verdict}, rep {} in degree {}\nclass [{}]\ne = {}\nf = {}\n",
                    r.representative.representative, r.representative.degree, canonical.representative, r.e, r.f
                ),
            }
        }
    })
}
