//! Document builders: every subcommand produces one JSON value plus a flat
//! table for TSV output.

use num_rational::Rational64;
use serde_json::{json, Value};

use coxtype::classify::{
    closure_poset, newton_table, order_report, smoothness_report, strata_index_set, verify_witness,
    BasicLabel, ClassificationVerdict, IndexVariant, StratumDatum, WitnessStatus,
};
use coxtype::eo::{leq_j_sigma, reduce_partial_conjugation};
use coxtype::newton::{coordinate_system, display_coords};
use coxtype::{basic_locus_eo, AffElement, EoData, EoRecord, NodeSet, Quadruple, Word};

use crate::error::CliError;

/// A table with a header row.
#[derive(Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub struct Output {
    pub json: Value,
    pub table: Table,
}

impl Output {
    pub fn render(&self, tsv: bool) -> String {
        if !tsv {
            let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
            s.push('\n');
            return s;
        }
        let mut s = self.table.columns.join("\t");
        s.push('\n');
        for row in &self.table.rows {
            s.push_str(&row.join("\t"));
            s.push('\n');
        }
        s
    }
}

/// Always `p/q`, never a float.
pub fn rat(r: &Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rats(v: &[Rational64]) -> Vec<String> {
    v.iter().map(rat).collect()
}

fn set(s: NodeSet) -> Vec<usize> {
    s.to_vec()
}

fn yn(b: bool) -> String {
    b.to_string()
}

fn quad_json(q: &Quadruple) -> Value {
    json!({
        "datum": q.datum.name(),
        "family": q.datum.family.to_string(),
        "rank": q.datum.rank,
        "model": model_name(q),
        "lambda": q.lambda.to_string(),
        "removed_vertex": q.removed,
        "sigma": q.sigma.label,
        "tau": q.word(&q.tau).to_string(),
        "tau_sigma_perm": q.tau_sigma_perm(),
    })
}

pub fn model_name(q: &Quadruple) -> &'static str {
    match q.datum.model {
        coxtype::LatticeModel::Gl => "gl",
        coxtype::LatticeModel::Adjoint => "adjoint",
    }
}

fn normal_form(q: &Quadruple, x: &AffElement) -> Value {
    let dim = q.datum.dim;
    json!({
        "translation": &x.translation_part()[..dim],
        "finite": x.finite_matrix(dim),
    })
}

fn newton_json(q: &Quadruple, r: &EoRecord) -> Value {
    json!({
        "coords": coordinate_system(&q.datum),
        "nu": rats(&display_coords(&q.datum, &r.newton.nu)),
        "kappa": r.newton.kappa,
        "pairing": rat(&r.newton.pairing),
    })
}

fn record_json(q: &Quadruple, r: &EoRecord) -> Value {
    json!({
        "word": r.word.to_string(),
        "normal_form": normal_form(q, &r.element),
        "length": r.length,
        "support": set(r.support),
        "orbit_count": r.orbit_count,
        "sigma_coxeter": r.sigma_coxeter,
        "coxeter": r.coxeter,
        "straight": r.straight,
        "central": r.central,
        "i_set": set(r.i_set),
        "newton": newton_json(q, r),
    })
}

pub fn eo(q: &Quadruple, eo: &EoData) -> Output {
    let table = Table {
        columns: vec!["word", "length", "support", "orbit_count", "coxeter", "straight", "central", "nu", "kappa"],
        rows: eo
            .elements
            .iter()
            .map(|r| {
                vec![
                    r.word.to_string(),
                    r.length.to_string(),
                    r.support.to_string(),
                    r.orbit_count.to_string(),
                    yn(r.coxeter),
                    yn(r.straight),
                    yn(r.central),
                    rats(&display_coords(&q.datum, &r.newton.nu)).join(","),
                    r.newton.kappa.to_string(),
                ]
            })
            .collect(),
    };
    Output {
        json: json!({
            "quadruple": quad_json(q),
            "count": eo.elements.len(),
            "coxeter_count": eo.coxeter().count(),
            "elements": eo.elements.iter().map(|r| record_json(q, r)).collect::<Vec<_>>(),
        }),
        table,
    }
}

pub fn newton(q: &Quadruple, eo: &EoData) -> Output {
    let rows = newton_table(q, eo);
    Output {
        json: json!({
            "quadruple": quad_json(q),
            "coords": coordinate_system(&q.datum),
            "rows": rows.iter().map(|r| json!({
                "word": r.word.to_string(),
                "length": r.length,
                "nu": rats(&r.nu),
                "kappa": r.kappa,
            })).collect::<Vec<_>>(),
        }),
        table: Table {
            columns: vec!["word", "length", "nu", "kappa"],
            rows: rows
                .iter()
                .map(|r| vec![r.word.to_string(), r.length.to_string(), rats(&r.nu).join(","), r.kappa.to_string()])
                .collect(),
        },
    }
}

pub fn basic_locus(q: &Quadruple, eo: &EoData) -> Output {
    let rows = basic_locus_eo(q, eo);
    let label = |l: BasicLabel| match l {
        BasicLabel::Basic => "basic",
        BasicLabel::NonBasic => "non-basic",
        BasicLabel::Undecided => "undecided",
    };
    Output {
        json: json!({
            "quadruple": quad_json(q),
            "rows": rows.iter().map(|(w, l, b)| json!({"word": w.to_string(), "length": l, "label": label(*b)})).collect::<Vec<_>>(),
        }),
        table: Table {
            columns: vec!["word", "length", "label"],
            rows: rows
                .iter()
                .map(|(w, l, b)| vec![w.to_string(), l.to_string(), label(*b).to_string()])
                .collect(),
        },
    }
}

fn variant_name(v: IndexVariant) -> &'static str {
    match v {
        IndexVariant::Literal => "literal",
        IndexVariant::MinDistance => "min-distance",
    }
}

fn stratum_json(s: &StratumDatum) -> Value {
    json!({
        "sigma": set(s.sigma),
        "flat": set(s.flat),
        "sharp": set(s.sharp),
        "word": s.word.to_string(),
        "length": s.length,
        "d": s.d,
        "component": s.component_tag,
    })
}

fn strata_table(strata: &[StratumDatum]) -> Table {
    Table {
        columns: vec!["sigma", "flat", "sharp", "word", "length", "d", "component"],
        rows: strata
            .iter()
            .map(|s| {
                vec![
                    s.sigma.to_string(),
                    s.flat.to_string(),
                    s.sharp.to_string(),
                    s.word.to_string(),
                    s.length.to_string(),
                    s.d.to_string(),
                    s.component_tag.clone(),
                ]
            })
            .collect(),
    }
}

/// Stratum data only makes sense for quadruples of Coxeter type.
fn require_coxeter(v: &ClassificationVerdict) -> Result<(), CliError> {
    if v.coxeter_type {
        return Ok(());
    }
    Err(CliError::Invalid(format!(
        "{} is not of Coxeter type (witness {})",
        v.quadruple.label(),
        v.witness.as_ref().or(v.csc_failure.as_ref()).map(Word::to_string).unwrap_or_default()
    )))
}

pub fn strata(v: &ClassificationVerdict) -> Result<Output, CliError> {
    require_coxeter(v)?;
    let q = &v.quadruple;
    let rep = strata_index_set(q, &v.eo)?;
    Ok(Output {
        json: json!({
            "quadruple": quad_json(q),
            "variant_used": variant_name(rep.variant),
            "strata": rep.strata.iter().map(stratum_json).collect::<Vec<_>>(),
        }),
        table: strata_table(&rep.strata),
    })
}

fn edge_json(nodes: &[NodeSet], edges: &[(usize, usize)]) -> Vec<Value> {
    edges
        .iter()
        .map(|&(a, b)| json!([set(nodes[a]), set(nodes[b])]))
        .collect()
}

pub fn closure(v: &ClassificationVerdict) -> Result<Output, CliError> {
    require_coxeter(v)?;
    let q = &v.quadruple;
    let rep = strata_index_set(q, &v.eo)?;
    let poset = closure_poset(q, &rep.strata)?;
    Ok(Output {
        json: json!({
            "quadruple": quad_json(q),
            "nodes": poset.nodes.iter().map(|s| set(*s)).collect::<Vec<_>>(),
            "hasse": edge_json(&poset.nodes, &poset.hasse),
            "relations": edge_json(&poset.nodes, &poset.relations),
            "agrees_with_leq_j_sigma": poset.agrees_with_leq_j_sigma,
            "covers_raise_length_by_one": poset.covers_raise_rank_by_one,
        }),
        table: Table {
            columns: vec!["below", "above"],
            rows: poset
                .hasse
                .iter()
                .map(|&(a, b)| vec![poset.nodes[a].to_string(), poset.nodes[b].to_string()])
                .collect(),
        },
    })
}

pub fn smoothness(v: &ClassificationVerdict) -> Result<Output, CliError> {
    require_coxeter(v)?;
    let q = &v.quadruple;
    let rep = strata_index_set(q, &v.eo)?;
    let sm = smoothness_report(q, &rep.strata)?;
    Ok(Output {
        json: json!({
            "quadruple": quad_json(q),
            "table_entry": sm.table_entry,
            "all_smooth": sm.all_smooth(),
            "rows": sm.rows.iter().map(|r| json!({
                "sigma": set(r.sigma),
                "word": r.word.to_string(),
                "length": r.length,
                "tau_fixes_j": r.tau_fixes_j,
                "smooth": r.criterion_smooth,
                "longest_element_check": r.longest_element_check,
            })).collect::<Vec<_>>(),
        }),
        table: Table {
            columns: vec!["sigma", "word", "length", "tau_fixes_j", "smooth", "longest_element_check"],
            rows: sm
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.sigma.to_string(),
                        r.word.to_string(),
                        r.length.to_string(),
                        yn(r.tau_fixes_j),
                        yn(r.criterion_smooth),
                        yn(r.longest_element_check),
                    ]
                })
                .collect(),
        },
    })
}

/// The full verdict document.
pub fn classify(v: &ClassificationVerdict) -> Result<Output, CliError> {
    let q = &v.quadruple;
    let eo_doc = eo(q, &v.eo).json;
    let mut doc = json!({
        "quadruple": quad_json(q),
        "cc": v.cc,
        "csc": v.csc,
        "coxeter_type": v.coxeter_type,
        "witness": v.witness.as_ref().map(Word::to_string),
        "csc_failure": v.csc_failure.as_ref().map(Word::to_string),
        "eo": eo_doc["elements"],
        "newton_table": newton(q, &v.eo).json["rows"],
        "strata": [],
        "closure_edges": [],
        "smoothness": [],
        "variant_used": Value::Null,
    });
    if v.coxeter_type {
        let order = order_report(q, &v.eo)?;
        doc["orders"] = json!({
            "newton_almost_linear": order.newton_almost_linear,
            "jsigma_equals_bruhat": order.jsigma_equals_bruhat,
            "jsigma_almost_linear": order.jsigma_almost_linear,
        });
        let st = strata(v)?.json;
        doc["strata"] = st["strata"].clone();
        doc["variant_used"] = st["variant_used"].clone();
        doc["closure_edges"] = closure(v)?.json["hasse"].clone();
        doc["smoothness"] = smoothness(v)?.json["rows"].clone();
    }
    let witness = v.witness.as_ref().map(Word::to_string).unwrap_or_default();
    Ok(Output {
        json: doc,
        table: Table {
            columns: sweep_columns(),
            rows: vec![sweep_row(v, witness)],
        },
    })
}

fn sweep_columns() -> Vec<&'static str> {
    vec!["datum", "lambda", "removed_vertex", "sigma", "tau", "eo_count", "cc", "csc", "coxeter_type", "witness"]
}

fn sweep_row(v: &ClassificationVerdict, witness: String) -> Vec<String> {
    let q = &v.quadruple;
    vec![
        q.datum.name(),
        q.lambda.to_string(),
        q.removed.to_string(),
        q.sigma.label.clone(),
        q.word(&q.tau).to_string(),
        v.eo.elements.len().to_string(),
        yn(v.cc),
        yn(v.csc),
        yn(v.coxeter_type),
        witness,
    ]
}

pub fn sweep(max_rank: usize, verdicts: &[ClassificationVerdict]) -> Output {
    let rows: Vec<Value> = verdicts
        .iter()
        .map(|v| {
            let mut q = quad_json(&v.quadruple);
            q["eo_count"] = json!(v.eo.elements.len());
            q["cc"] = json!(v.cc);
            q["csc"] = json!(v.csc);
            q["coxeter_type"] = json!(v.coxeter_type);
            q["witness"] = json!(v.witness.as_ref().map(Word::to_string));
            q
        })
        .collect();
    Output {
        json: json!({
            "max_rank": max_rank,
            "quadruples": verdicts.len(),
            "positives": verdicts.iter().filter(|v| v.coxeter_type).count(),
            "rows": rows,
        }),
        table: Table {
            columns: sweep_columns(),
            rows: verdicts
                .iter()
                .map(|v| sweep_row(v, v.witness.as_ref().map(Word::to_string).unwrap_or_default()))
                .collect(),
        },
    }
}

pub fn witness(q: &Quadruple, word: &Word) -> Result<(Output, bool), CliError> {
    let rep = verify_witness(q, word)?;
    let status = match rep.status {
        WitnessStatus::Confirmed => "confirmed",
        WitnessStatus::NotEoElement => "not-eo-element",
        WitnessStatus::NotCentral => "not-central",
        WitnessStatus::SigmaCoxeter => "sigma-coxeter",
    };
    let out = Output {
        json: json!({
            "quadruple": quad_json(q),
            "input": word.to_string(),
            "word": rep.word,
            "in_eo": rep.in_eo,
            "central": rep.central,
            "sigma_coxeter": rep.sigma_coxeter,
            "status": status,
        }),
        table: Table {
            columns: vec!["input", "word", "in_eo", "central", "sigma_coxeter", "status"],
            rows: vec![vec![
                word.to_string(),
                rep.word.clone(),
                yn(rep.in_eo),
                yn(rep.central),
                yn(rep.sigma_coxeter),
                status.to_string(),
            ]],
        },
    };
    Ok((out, rep.status == WitnessStatus::Confirmed))
}

pub fn reduce(q: &Quadruple, x: &AffElement) -> Result<Output, CliError> {
    let d = &q.datum;
    let (y, moves) = reduce_partial_conjugation(d, q.j(), x, &q.sigma)?;
    let (xw, yw) = (q.word(x).to_string(), q.word(&y).to_string());
    let moves_text = moves.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ");
    Ok(Output {
        json: json!({
            "quadruple": quad_json(q),
            "input": xw,
            "input_length": d.length(x),
            "reduced": yw,
            "reduced_length": d.length(&y),
            "moves": moves,
        }),
        table: Table {
            columns: vec!["input", "input_length", "reduced", "reduced_length", "moves"],
            rows: vec![vec![xw, d.length(x).to_string(), yw, d.length(&y).to_string(), moves_text]],
        },
    })
}

pub fn leq(q: &Quadruple, x: &AffElement, w: &AffElement) -> Result<Output, CliError> {
    let d = &q.datum;
    let js = leq_j_sigma(d, q.j(), x, w, &q.sigma)?;
    let bruhat = d.bruhat_leq(x, w);
    let (xw, ww) = (q.word(x).to_string(), q.word(w).to_string());
    Ok(Output {
        json: json!({
            "quadruple": quad_json(q),
            "x": xw,
            "w": ww,
            "leq_j_sigma": js,
            "bruhat_leq": bruhat,
        }),
        table: Table {
            columns: vec!["x", "w", "leq_j_sigma", "bruhat_leq"],
            rows: vec![vec![xw, ww, yn(js), yn(bruhat)]],
        },
    })
}
