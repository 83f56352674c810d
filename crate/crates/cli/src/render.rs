// Text reports. Numbers are rounded to three decimals; JSON output carries
// the same values at full precision.

use std::fmt::Write;

use pcrank_core::{Analysis, RevisionSession};

fn label_width(a: &Analysis) -> usize {
    a.labels
        .iter()
        .map(|l| l.chars().count())
        .max()
        .unwrap_or(0)
        .max(6)
}

fn pair(a: &Analysis, (i, j): (usize, usize)) -> String {
    format!("({i},{j}) [{} vs {}]", a.labels[i - 1], a.labels[j - 1])
}

fn margin(m: Option<f64>) -> String {
    m.map_or_else(|| "n/a".to_owned(), |x| format!("{x:.3}"))
}

pub fn rank(a: &Analysis) -> String {
    let width = label_width(a);
    let mut s = String::new();
    writeln!(s, "method: {}", a.ranking.method()).unwrap();
    writeln!(s, "weights:").unwrap();
    for (label, w) in a.labels.iter().zip(a.weights()) {
        writeln!(s, "  {label:<width$}  {w:.3}").unwrap();
    }
    writeln!(s, "lambda_max: {:.3}", a.lambda_max).unwrap();
    write!(s, "saaty_index: {:.3}", a.saaty_index).unwrap();
    s
}

pub fn discrepancy(a: &Analysis) -> String {
    let width = label_width(a);
    let mut s = String::new();
    writeln!(s, "local discrepancy ({} ranking):", a.ranking.method()).unwrap();
    write!(s, "  {:<width$}", "").unwrap();
    for label in &a.labels {
        write!(s, "  {label:>width$}").unwrap();
    }
    writeln!(s).unwrap();
    for (label, row) in a.labels.iter().zip(&a.discrepancy.values) {
        write!(s, "  {label:<width$}").unwrap();
        for v in row {
            write!(s, "  {v:>width$.3}").unwrap();
        }
        writeln!(s).unwrap();
    }
    write!(
        s,
        "global discrepancy: {:.3} at {}",
        a.discrepancy.global,
        pair(a, a.discrepancy.argmax)
    )
    .unwrap();
    s
}

pub fn cop(a: &Analysis) -> String {
    let c = &a.cop;
    let mut s = String::new();
    writeln!(s, "delta (global discrepancy): {:.3}", c.delta).unwrap();
    if c.pop_violations.is_empty() {
        writeln!(s, "POP violations: none").unwrap();
    } else {
        writeln!(s, "POP violations:").unwrap();
        for &(i, j) in &c.pop_violations {
            writeln!(s, "  m[{i},{j}] > 1 but weight {i} <= weight {j}").unwrap();
        }
    }
    if c.poip_violations.is_empty() {
        writeln!(s, "POIP violations: none").unwrap();
    } else {
        writeln!(s, "POIP violations:").unwrap();
        for &(i, j, k, l) in &c.poip_violations {
            writeln!(s, "  m[{i},{j}] > m[{k},{l}] but w{i}/w{j} <= w{k}/w{l}").unwrap();
        }
    }
    let verdict = |safe: bool| if safe { "safe" } else { "not guaranteed" };
    writeln!(
        s,
        "POP:  {} (every m_ij > 1 must exceed {:.3}; margin {})",
        verdict(c.pop_safe),
        c.pop_threshold,
        margin(c.pop_margin)
    )
    .unwrap();
    write!(
        s,
        "POIP: {} (every m_ij/m_kl must exceed {:.3}; margin {})",
        verdict(c.poip_safe),
        c.poip_threshold,
        margin(c.poip_margin)
    )
    .unwrap();
    s
}

pub fn advise(session: &RevisionSession, round_target: bool) -> String {
    let a = session.current();
    let mut s = String::new();
    if !session.step_log().is_empty() {
        writeln!(s, "applied:").unwrap();
        for step in session.step_log() {
            writeln!(
                s,
                "  m[{},{}]: {} -> {}",
                step.i, step.j, step.old_value, step.new_value
            )
            .unwrap();
        }
        writeln!(s, "{}", rank(a)).unwrap();
        writeln!(s, "{}", discrepancy(a)).unwrap();
        writeln!(s, "{}", cop(a)).unwrap();
    }
    let sug = &a.suggestion;
    let target = if round_target {
        format!("{:.2}", sug.rounded_target())
    } else {
        format!("{:.3}", sug.consistent_target)
    };
    write!(
        s,
        "suggestion: revise m{} = {} (local discrepancy {:.3}); consistent value {}",
        pair(a, sug.position),
        sug.current_value,
        sug.local_discrepancy,
        target
    )
    .unwrap();
    s
}
