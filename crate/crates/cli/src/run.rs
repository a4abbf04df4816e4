use std::io::Write;

use bz_core::closed_form::{self, Violation};
use bz_core::enumerator::{self, SumOptions};
use bz_core::oracle::Oracle;
use bz_core::triangle::{GeneralTriangle, TriangleShape};
use bz_core::weights::integrality_ok;
use bz_core::Weight;
use serde::{Deserialize, Serialize};

use crate::format::render_polytope;
use crate::query::{Mode, Options, Output, QuerySpec};
use crate::{CliError, EXIT_DISCREPANCY, EXIT_OK};

/// Machine-readable result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub algebra: String,
    pub mode: Mode,
    pub weights: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    pub result: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Multiplicity {
        value: u128,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        oracle: Option<u128>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        polytope: Option<Vec<String>>,
    },
    Decomposition {
        terms: Vec<Term>,
        dimension: u128,
    },
    Triangles {
        triangles: Vec<Vec<Vec<i64>>>,
    },
    Decision {
        holds: bool,
        integrality: bool,
        violations: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        oracle: Option<u128>,
    },
    Polytope {
        variables: Vec<String>,
        inequalities: Vec<String>,
    },
    Crosscheck {
        max_label: i64,
        checked: usize,
        discrepancies: usize,
        triples: Vec<TripleResult>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub weight: Vec<i64>,
    pub multiplicity: u128,
    pub dimension: u128,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleResult {
    pub weights: Vec<Vec<i64>>,
    pub sum: u128,
    pub polytope: u128,
    pub triangles: u128,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<u128>,
}

impl TripleResult {
    pub fn agrees(&self) -> bool {
        let s = self.sum;
        self.polytope == s
            && self.triangles == s
            && self.closed_form.is_none_or(|c| c == s)
            && self.oracle.is_none_or(|o| o == s)
    }
}

fn weights_of(ws: &[Weight]) -> Vec<Vec<i64>> {
    ws.iter().map(|w| w.labels().to_vec()).collect()
}

fn weight_text(labels: &[i64]) -> String {
    let inner: Vec<String> = labels.iter().map(i64::to_string).collect();
    format!("({})", inner.join(","))
}

/// Computes the record for `query` and its exit status.
pub fn evaluate(query: &QuerySpec, options: &Options) -> Result<(Record, i32), CliError> {
    let ws = &query.weights;
    let mut status = EXIT_OK;
    let mut oracle = Oracle::new();
    let sum_options = SumOptions {
        check_order: options.order_check,
    };
    let result = match query.mode {
        Mode::Multiplicity => {
            let value = enumerator::multiplicity_sum_with(&ws[0], &ws[1], &ws[2], sum_options)?;
            let oracle = options
                .oracle
                .then(|| oracle.triple_multiplicity(&ws[0], &ws[1], &ws[2]) as u128);
            if oracle.is_some_and(|o| o != value) {
                status = EXIT_DISCREPANCY;
            }
            let polytope = if options.emit_polytope && integrality_ok(&ws[0], &ws[1], &ws[2]) {
                let p = enumerator::polytope_of(&ws[0], &ws[1], &ws[2])?;
                Some(render_polytope(&p).lines().map(str::to_string).collect())
            } else {
                None
            };
            Outcome::Multiplicity {
                value,
                oracle,
                polytope,
            }
        }
        Mode::Decompose => {
            let bz = enumerator::decompose(&ws[0], &ws[1])?;
            let reference = options
                .oracle
                .then(|| oracle.decompose(&ws[0], &ws[1]).clone());
            let mut terms: Vec<Term> = bz
                .iter()
                .map(|(w, &m)| Term {
                    weight: w.labels().to_vec(),
                    multiplicity: m,
                    dimension: w.weyl_dimension(),
                    oracle: reference
                        .as_ref()
                        .map(|r| r.get(w).copied().unwrap_or(0) as u128),
                })
                .collect();
            if let Some(r) = &reference {
                for (w, &m) in r.iter().filter(|(w, _)| !bz.contains_key(*w)) {
                    terms.push(Term {
                        weight: w.labels().to_vec(),
                        multiplicity: 0,
                        dimension: w.weyl_dimension(),
                        oracle: Some(m as u128),
                    });
                }
                terms.sort_by(|a, b| a.weight.cmp(&b.weight));
            }
            if terms
                .iter()
                .any(|t| t.oracle.is_some_and(|o| o != t.multiplicity))
            {
                status = EXIT_DISCREPANCY;
            }
            Outcome::Decomposition {
                terms,
                dimension: ws[0].weyl_dimension() * ws[1].weyl_dimension(),
            }
        }
        Mode::Triangles => {
            let ts = enumerator::list_true_triangles(&ws[0], &ws[1], &ws[2])?;
            Outcome::Triangles {
                triangles: ts.iter().map(|t| t.rows()).collect(),
            }
        }
        Mode::Nonvanishing | Mode::Threshold => {
            let k = query.k.unwrap_or(0);
            let system = match (query.mode, query.rank) {
                (Mode::Threshold, _) => closed_form::su3_threshold_inequalities(),
                (_, 2) => closed_form::su3_inequalities(),
                _ => closed_form::su4_inequalities(),
            };
            let violations = system.violations(&ws[0], &ws[1], &ws[2], k)?;
            let integrality = integrality_ok(&ws[0], &ws[1], &ws[2]);
            let holds = integrality && violations.is_empty();
            let oracle = options
                .oracle
                .then(|| oracle.triple_multiplicity(&ws[0], &ws[1], &ws[2]) as u128);
            if oracle.is_some_and(|t| (t > k as u128) != holds) {
                status = EXIT_DISCREPANCY;
            }
            Outcome::Decision {
                holds,
                integrality,
                violations: violations.iter().map(Violation::to_string).collect(),
                oracle,
            }
        }
        Mode::Polytope => {
            if !integrality_ok(&ws[0], &ws[1], &ws[2]) {
                return Err(bz_core::Error::Integrality.into());
            }
            let p = enumerator::polytope_of(&ws[0], &ws[1], &ws[2])?;
            let text = p.to_string();
            Outcome::Polytope {
                variables: p.variables().to_vec(),
                inequalities: text.lines().map(str::to_string).collect(),
            }
        }
        Mode::Crosscheck => {
            let triples = crosscheck(query.rank, options, &mut oracle)?;
            let discrepancies = triples.iter().filter(|t| !t.agrees()).count();
            if discrepancies > 0 {
                status = EXIT_DISCREPANCY;
            }
            Outcome::Crosscheck {
                max_label: options.max_label,
                checked: triples.len(),
                discrepancies,
                triples,
            }
        }
    };
    let record = Record {
        algebra: query.algebra(),
        mode: query.mode,
        weights: weights_of(ws),
        k: query.k,
        result,
    };
    Ok((record, status))
}

/// Every integral triple with labels in `0..=max_label`, lexicographically.
fn crosscheck(
    rank: usize,
    options: &Options,
    oracle: &mut Oracle,
) -> Result<Vec<TripleResult>, CliError> {
    let base = options.max_label + 1;
    let count = base
        .checked_pow(rank as u32)
        .ok_or_else(|| CliError::Usage("label range too large".into()))?;
    let all: Vec<Weight> = (0..count)
        .map(|mut code| {
            let mut labels = vec![0; rank];
            for l in labels.iter_mut().rev() {
                *l = code % base;
                code /= base;
            }
            Weight::new(labels)
        })
        .collect::<Result<_, _>>()?;
    let sum_options = SumOptions {
        check_order: options.order_check,
    };
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            for c in &all {
                if !integrality_ok(a, b, c) {
                    continue;
                }
                let closed = match rank {
                    2 => Some(closed_form::su3_multiplicity(a, b, c)?),
                    3 => Some(closed_form::su4_multiplicity(a, b, c)?),
                    _ => None,
                };
                out.push(TripleResult {
                    weights: weights_of(&[a.clone(), b.clone(), c.clone()]),
                    sum: enumerator::multiplicity_sum_with(a, b, c, sum_options)?,
                    polytope: enumerator::count_multiplicity(a, b, c)?,
                    triangles: enumerator::list_true_triangles(a, b, c)?.len() as u128,
                    closed_form: closed,
                    oracle: options
                        .oracle
                        .then(|| oracle.triple_multiplicity(a, b, c) as u128),
                });
            }
        }
    }
    Ok(out)
}

/// Human-readable rendering of a record.
pub fn render_text(record: &Record) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    match &record.result {
        Outcome::Multiplicity {
            value,
            oracle,
            polytope,
        } => {
            line(value.to_string());
            if let Some(o) = oracle {
                line(format!("oracle: {o}"));
            }
            for p in polytope.iter().flatten() {
                line(p.clone());
            }
        }
        Outcome::Decomposition { terms, dimension } => {
            let mut total = 0u128;
            for t in terms {
                total += t.multiplicity * t.dimension;
                let oracle = t
                    .oracle
                    .map(|o| format!("  oracle {o}"))
                    .unwrap_or_default();
                line(format!(
                    "{}  {}  dim {}{oracle}",
                    weight_text(&t.weight),
                    t.multiplicity,
                    t.dimension
                ));
            }
            line(format!(
                "# dimension {dimension}, sum of multiplicity x dim {total}"
            ));
        }
        Outcome::Triangles { triangles } => {
            line(format!("# {} true triangles", triangles.len()));
            let rank = record.weights.first().map_or(0, Vec::len);
            for rows in triangles {
                let shape = TriangleShape::new(rank).expect("rank >= 1");
                let t = GeneralTriangle::new(shape, flatten_rows(rank, rows))
                    .expect("well-formed rows");
                line(String::new());
                line(t.to_string().trim_end().to_string());
            }
        }
        Outcome::Decision {
            holds,
            integrality,
            violations,
            oracle,
        } => {
            line(holds.to_string());
            if !integrality {
                line("  integrality fails: the congruence classes do not add up to 0".into());
            }
            for v in violations {
                line(format!("  violated {v}"));
            }
            if let Some(o) = oracle {
                line(format!("oracle: T = {o}"));
            }
        }
        Outcome::Polytope {
            variables,
            inequalities,
        } => {
            line(format!("# variables: {}", variables.join(" ")));
            for q in inequalities {
                line(q.clone());
            }
        }
        Outcome::Crosscheck {
            max_label,
            checked,
            discrepancies,
            triples,
        } => {
            for t in triples.iter().filter(|t| !t.agrees()) {
                let ws: Vec<String> = t.weights.iter().map(|w| weight_text(w)).collect();
                line(format!(
                    "discrepancy {}: sum {} polytope {} triangles {} closed form {:?} oracle {:?}",
                    ws.join(" "),
                    t.sum,
                    t.polytope,
                    t.triangles,
                    t.closed_form,
                    t.oracle
                ));
            }
            line(format!("checked {checked} triples with labels <= {max_label}: {discrepancies} discrepancies"));
        }
    }
    out
}

/// Undoes [`GeneralTriangle::rows`].
fn flatten_rows(rank: usize, rows: &[Vec<i64>]) -> Vec<i64> {
    let shape = TriangleShape::new(rank).expect("rank >= 1");
    let mut entries = vec![0; shape.entry_count()];
    for (indices, values) in shape.layout_rows().iter().zip(rows) {
        for (&i, &v) in indices.iter().zip(values) {
            entries[i] = v;
        }
    }
    entries
}

/// Evaluates `query`, writes the result to `out` and returns the exit status.
pub fn run(query: &QuerySpec, options: &Options, out: &mut dyn Write) -> Result<i32, CliError> {
    let (record, status) = evaluate(query, options)?;
    match query.output {
        Output::Json => {
            serde_json::to_writer_pretty(&mut *out, &record)?;
            writeln!(out)?;
        }
        Output::Text => out.write_all(render_text(&record).as_bytes())?,
    }
    Ok(status)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn query(mode: Mode, ws: &[&str], k: Option<u64>) -> QuerySpec {
        let algebra = format!("su{}", ws.first().map_or(3, |w| w.split(',').count() + 1));
        QuerySpec::new(&algebra, mode, ws, k, Output::Text).unwrap()
    }

    fn text(query: &QuerySpec, options: &Options) -> (String, i32) {
        let mut buf = Vec::new();
        let status = run(query, options, &mut buf).unwrap();
        (String::from_utf8(buf).unwrap(), status)
    }

    #[test]
    fn multiplicity_text() {
        let o = Options {
            oracle: true,
            ..Options::default()
        };
        let (t, s) = text(&query(Mode::Multiplicity, &["1,1", "1,1", "1,1"], None), &o);
        assert_eq!((t.as_str(), s), ("2\noracle: 2\n", EXIT_OK));
    }

    #[test]
    fn triangle_rows_round_trip() {
        let (record, _) = evaluate(
            &query(Mode::Triangles, &["1,1", "1,1", "1,1"], None),
            &Options::default(),
        )
        .unwrap();
        let Outcome::Triangles { triangles } = &record.result else {
            panic!()
        };
        let listed = enumerator::list_true_triangles(
            &Weight::new(vec![1, 1]).unwrap(),
            &Weight::new(vec![1, 1]).unwrap(),
            &Weight::new(vec![1, 1]).unwrap(),
        )
        .unwrap();
        for (rows, t) in triangles.iter().zip(&listed) {
            assert_eq!(flatten_rows(2, rows), t.entries());
        }
        assert!(render_text(&record).starts_with("# 2 true triangles\n\n"));
    }

    #[test]
    fn decision_explains() {
        let (t, _) = text(
            &query(Mode::Nonvanishing, &["0,0", "0,0", "1,1"], None),
            &Options::default(),
        );
        assert!(
            t.starts_with("false\n  violated #10: nu^1 <= lambda^2 + mu^2  (1 > 0)\n"),
            "{t}"
        );
        let (t, _) = text(
            &query(Mode::Nonvanishing, &["1,0", "1,0", "0,0"], None),
            &Options::default(),
        );
        assert!(t.contains("integrality fails"));
    }

    #[test]
    fn crosscheck_small() {
        let q = QuerySpec::new("su3", Mode::Crosscheck, &[], None, Output::Text).unwrap();
        let o = Options {
            oracle: true,
            max_label: 1,
            ..Options::default()
        };
        let (t, s) = text(&q, &o);
        assert_eq!(s, EXIT_OK);
        assert!(t.ends_with("with labels <= 1: 0 discrepancies\n"), "{t}");
    }
}
