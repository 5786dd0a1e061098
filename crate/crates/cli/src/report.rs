//! Text and JSON renderings of a solve report. Variable and row indices are 1-based.

use std::fmt::Write as _;

use maxplus_opt::oracle::Verdict;
use maxplus_opt::{ExtScalar, OptProblem, SolveReport, VarConstraint};
use serde_json::{Map, Value};

fn list(indices: &[usize]) -> String {
    indices.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(", ")
}

fn constraint_text(j: usize, c: &VarConstraint) -> String {
    match c {
        VarConstraint::EqualTo(v) => format!("x{} = {v}", j + 1),
        VarConstraint::AtMost(v) => format!("x{} <= {v}", j + 1),
        VarConstraint::Free => format!("x{} free", j + 1),
    }
}

fn unsolvable_reason(r: &SolveReport) -> String {
    if let Some(i) = r.lower_bound.iter().position(|v| !v.is_finite()) {
        format!("b{} = {} is not finite", r.preprocess.kept_rows[i] + 1, r.lower_bound[i])
    } else if let Some(j) = r.greatest_subsolution.iter().position(|v| !v.is_finite()) {
        format!(
            "x*{} = {} is not finite",
            r.preprocess.kept_vars[j] + 1,
            r.greatest_subsolution[j]
        )
    } else {
        match r.criterion_sum {
            Some(s) => format!("criterion sum {s} differs from c"),
            None => "criterion does not hold".to_string(),
        }
    }
}

/// Original-index view of the witness, eliminated variables left unset.
fn lifted_witness(r: &SolveReport) -> Option<Vec<Option<ExtScalar>>> {
    let w = r.witness.as_ref()?;
    let w: Vec<Option<ExtScalar>> = w.iter().copied().map(Some).collect();
    Some(r.preprocess.lift_point(&w, None))
}

pub fn render_text(p: &OptProblem, r: &SolveReport, verdict: Option<&Verdict>) -> String {
    let pre = &r.preprocess;
    let mut out = String::new();
    writeln!(
        out,
        "problem: {} rows, {} variables, c = {}, J = {{{}}}",
        p.num_rows(),
        p.num_vars(),
        p.constant(),
        list(&p.support())
    )
    .unwrap();

    if pre.is_identity() {
        writeln!(out, "preprocessing: nothing to remove").unwrap();
    } else {
        writeln!(out, "preprocessing:").unwrap();
        if !pre.dropped_rows.is_empty() {
            writeln!(out, "  dropped eps rows: {}", list(&pre.dropped_rows)).unwrap();
        }
        if !pre.eliminated_vars.is_empty() {
            writeln!(out, "  eliminated variables (eps column, zero coefficient): {}", list(&pre.eliminated_vars))
                .unwrap();
        }
    }

    writeln!(out, "greatest lower bound:").unwrap();
    for (i, v) in r.lifted_lower_bound().iter().enumerate() {
        let note = if pre.dropped_rows.contains(&i) { "  (eps row)" } else { "" };
        writeln!(out, "  b{} = {v}{note}", i + 1).unwrap();
    }

    writeln!(out, "greatest subsolution:").unwrap();
    for (&j, v) in pre.kept_vars.iter().zip(&r.greatest_subsolution) {
        writeln!(out, "  x*{} = {v}", j + 1).unwrap();
    }

    match r.criterion_sum {
        Some(s) => writeln!(out, "criterion: sum over J of k_j x*_j = {s}, c = {}, tol = {:e}", p.constant(), r.tol),
        None => writeln!(out, "criterion: not evaluated (non-finite bound or subsolution)"),
    }
    .unwrap();

    if r.solvable {
        writeln!(out, "solvable: yes").unwrap();
        writeln!(out, "unique: {}", if r.unique { "yes" } else { "no" }).unwrap();
        let set = r.solutions.as_ref().expect("solvable reports carry a solution set");
        let parts: Vec<String> =
            set.constraints().iter().enumerate().map(|(j, c)| constraint_text(j, c)).collect();
        writeln!(out, "solution set: S = {{{}}}", parts.join(", ")).unwrap();
        if let Some(w) = lifted_witness(r) {
            let parts: Vec<String> = w
                .iter()
                .map(|v| v.map_or_else(|| "free".to_string(), |v| v.to_string()))
                .collect();
            writeln!(out, "second optimum: ({})", parts.join(", ")).unwrap();
        }
    } else {
        writeln!(out, "solvable: no ({})", unsolvable_reason(r)).unwrap();
        writeln!(out, "unique: n/a").unwrap();
        writeln!(out, "solution set: empty").unwrap();
    }

    if let Some(v) = verdict {
        writeln!(out, "verification: {v}").unwrap();
    }
    out
}

fn scalar_value(v: ExtScalar) -> Value {
    match v {
        ExtScalar::Finite(x) => Value::from(if x == 0.0 { 0.0 } else { x }),
        other => Value::from(other.to_string()),
    }
}

/// Flat key/value JSON document; infinities are the strings `"-inf"` / `"+inf"`.
pub fn render_json(p: &OptProblem, r: &SolveReport, verdict: Option<&Verdict>) -> String {
    let pre = &r.preprocess;
    let mut m = Map::new();
    m.insert("rows".into(), p.num_rows().into());
    m.insert("vars".into(), p.num_vars().into());
    m.insert("c".into(), p.constant().into());
    m.insert("tol".into(), r.tol.into());
    m.insert("dropped_rows".into(), list(&pre.dropped_rows).into());
    m.insert("eliminated_vars".into(), list(&pre.eliminated_vars).into());
    for (i, v) in r.lifted_lower_bound().iter().enumerate() {
        m.insert(format!("b{}", i + 1), scalar_value(*v));
    }
    for (&j, v) in pre.kept_vars.iter().zip(&r.greatest_subsolution) {
        m.insert(format!("x*{}", j + 1), scalar_value(*v));
    }
    m.insert(
        "criterion_sum".into(),
        r.criterion_sum.map_or(Value::Null, Value::from),
    );
    m.insert("solvable".into(), r.solvable.into());
    m.insert("unique".into(), (r.solvable && r.unique).into());
    if let Some(set) = &r.solutions {
        for (j, c) in set.constraints().iter().enumerate() {
            let v = match c {
                VarConstraint::EqualTo(v) => format!("= {v}"),
                VarConstraint::AtMost(v) => format!("<= {v}"),
                VarConstraint::Free => "free".to_string(),
            };
            m.insert(format!("S.x{}", j + 1), v.into());
        }
    }
    if let Some(v) = verdict {
        m.insert(
            "verdict".into(),
            if v.is_consistent() { "consistent" } else { "inconsistent" }.into(),
        );
        m.insert("samples_checked".into(), v.samples_checked.into());
        if let Some(cx) = &v.counterexample {
            m.insert("counterexample".into(), cx.reason.clone().into());
        }
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("map serializes");
    s.push('\n');
    s
}
