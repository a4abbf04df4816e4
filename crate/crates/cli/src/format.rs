//! Text formats: weights on the command line and the polytope exchange
//! format.
//!
//! A polytope file holds one inequality per line,
//! `c1*v1 + c2*v2 + ... >= k`, with exact rational literals such as `-3/2`.
//! Lines starting with `#` are comments, except `# variables: a b c`, which
//! fixes the variable order (otherwise it is the order of first use).

use std::str::FromStr;

use bz_core::enumerator::{Inequality, InequalitySystem, Rational};
use bz_core::Weight;

use crate::CliError;

/// `"1,0,2"` → Dynkin labels `(1,0,2)`.
pub fn parse_weight(text: &str) -> Result<Weight, CliError> {
    let labels = text
        .split(',')
        .map(|s| {
            s.trim().parse::<i64>().map_err(|_| {
                CliError::Usage(format!(
                    "malformed weight {text:?}: expected comma-separated integers"
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Weight::new(labels)?)
}

/// `"su4"` → rank 3.
pub fn parse_algebra(text: &str) -> Result<usize, CliError> {
    let n = text
        .strip_prefix("su")
        .map(|s| s.trim_start_matches('(').trim_end_matches(')'))
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 2)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "unknown algebra {text:?}: expected su<N> with N >= 2"
            ))
        })?;
    Ok(n - 1)
}

pub fn render_polytope(system: &InequalitySystem) -> String {
    let mut out = format!("# variables: {}\n", system.variables().join(" "));
    let body = system.to_string();
    if !body.is_empty() {
        out.push_str(&body);
        out.push('\n');
    }
    out
}

fn parse_rational(text: &str, line: usize) -> Result<Rational, CliError> {
    Rational::from_str(text).map_err(|_| CliError::Parse {
        line,
        message: format!("bad number {text:?}"),
    })
}

/// Splits `a - b + 3/2*c` into signed terms.
fn terms(lhs: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut current = String::new();
    for ch in lhs.chars().filter(|c| !c.is_whitespace()) {
        let sign_after_star = current.ends_with('*') || current.is_empty() || current == "-";
        if (ch == '+' || ch == '-') && !sign_after_star {
            out.push(std::mem::take(&mut current));
        }
        if ch != '+' {
            current.push(ch);
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

pub fn parse_polytope(text: &str) -> Result<InequalitySystem, CliError> {
    let mut variables: Vec<String> = Vec::new();
    let mut rows: Vec<(Vec<(String, Rational)>, Rational)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(list) = comment.trim().strip_prefix("variables:") {
                variables.extend(list.split_whitespace().map(str::to_string));
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let (lhs, rhs) = trimmed.split_once(">=").ok_or_else(|| CliError::Parse {
            line,
            message: "expected `>=`".into(),
        })?;
        let mut constant = parse_rational(rhs.trim(), line)?;
        if lhs.trim_end().ends_with(['+', '-', '*']) {
            return Err(CliError::Parse {
                line,
                message: "dangling operator".into(),
            });
        }
        let mut row = Vec::new();
        for term in terms(lhs) {
            let (coeff, name) = match term.split_once('*') {
                Some((c, v)) => (parse_rational(c, line)?, v.to_string()),
                None if term.starts_with(|c: char| c.is_ascii_digit()) => {
                    constant -= parse_rational(&term, line)?;
                    continue;
                }
                None if term.starts_with("-")
                    && term[1..].starts_with(|c: char| c.is_ascii_digit()) =>
                {
                    constant -= parse_rational(&term, line)?;
                    continue;
                }
                None => match term.strip_prefix('-') {
                    Some(v) => (Rational::from_integer(-1), v.to_string()),
                    None => (Rational::from_integer(1), term.clone()),
                },
            };
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(CliError::Parse {
                    line,
                    message: format!("bad variable name {name:?}"),
                });
            }
            if !variables.contains(&name) {
                variables.push(name.clone());
            }
            row.push((name, coeff));
        }
        rows.push((row, constant));
    }
    let mut system = InequalitySystem::new(variables.clone());
    for (row, constant) in rows {
        let mut coefficients = vec![Rational::from_integer(0); variables.len()];
        for (name, c) in row {
            let k = variables
                .iter()
                .position(|v| *v == name)
                .expect("registered");
            coefficients[k] += c;
        }
        system.push(Inequality::new(coefficients, constant))?;
    }
    Ok(system)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_and_algebras() {
        assert_eq!(parse_weight("1, 0,2").unwrap().labels(), &[1, 0, 2]);
        assert!(parse_weight("1,x").is_err());
        assert!(parse_weight("1,-1").is_err());
        assert_eq!(parse_algebra("su3").unwrap(), 2);
        assert_eq!(parse_algebra("su(5)").unwrap(), 4);
        assert!(parse_algebra("su1").is_err());
        assert!(parse_algebra("so5").is_err());
    }

    #[test]
    fn hand_written_rows() {
        let s = parse_polytope("x - y >= -2\n-3/2*x + 2 >= -1\n# note\n\n y >= 0").unwrap();
        assert_eq!(s.variables(), &["x".to_string(), "y".to_string()]);
        let r = |n, d| Rational::new(n, d);
        assert_eq!(
            s.inequalities()[0],
            Inequality::new(vec![r(1, 1), r(-1, 1)], r(-2, 1))
        );
        assert_eq!(
            s.inequalities()[1],
            Inequality::new(vec![r(-3, 2), r(0, 1)], r(-3, 1))
        );
        assert!(parse_polytope("x <= 3").is_err());
        assert!(parse_polytope("2*x+ >= 1").is_err());
    }

    #[test]
    fn render_then_parse_is_identity() {
        let text = "# variables: a b c\n1*a + -1/2*c >= 3/4\n0 >= -1\n-1*b >= -2\n";
        let s = parse_polytope(text).unwrap();
        assert_eq!(render_polytope(&s), text);
        assert_eq!(parse_polytope(&render_polytope(&s)).unwrap(), s);
    }
}
