//! Human-readable and JSON renderings of a solution.

use std::fmt::Write;

use crate::document::SolutionDocument;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Table,
}

pub fn emit_report(doc: &SolutionDocument, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("solution serializes");
            s.push('\n');
            s
        }
        ReportFormat::Table => table(doc),
    }
}

fn preset_cell(doc: &SolutionDocument, name: &str, alt: usize) -> String {
    doc.presets
        .iter()
        .find(|p| p.credibility == name)
        .and_then(|p| p.weights.as_ref())
        .map_or_else(|| "n/a".to_string(), |w| format!("{:.3}", w[alt]))
}

fn table(doc: &SolutionDocument) -> String {
    let custom = doc.credibility == "custom";
    let mut header = vec![
        "Alternative".to_string(),
        "High".to_string(),
        "Medium".to_string(),
        "Low".to_string(),
    ];
    if custom {
        header.push(format!("λ = {}", doc.lambda));
    }
    header.push("Interval range".to_string());
    header.push("Ranking".to_string());

    let mut rows = vec![header];
    for (alt, label) in doc.alternatives.iter().enumerate() {
        let mut row = vec![label.clone()];
        for name in ["high", "medium", "low"] {
            row.push(preset_cell(doc, name, alt));
        }
        if custom {
            row.push(format!("{:.3}", doc.weights[alt]));
        }
        row.push(doc.intervals[alt].display());
        row.push(doc.ranking.positions[alt].to_string());
        rows.push(row);
    }

    let cols = rows[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (cell, w))| {
                let pad = w - cell.chars().count();
                if c == 0 {
                    format!("{cell}{}", " ".repeat(pad))
                } else {
                    format!("{}{cell}", " ".repeat(pad))
                }
            })
            .collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
        if i == 0 {
            let total = widths.iter().sum::<usize>() + 2 * (cols - 1);
            writeln!(out, "{}", "-".repeat(total)).unwrap();
        }
    }
    out.push('\n');
    let order: Vec<&str> = doc
        .ranking
        .order
        .iter()
        .map(|&k| doc.alternatives[k - 1].as_str())
        .collect();
    writeln!(out, "Ranking: {}", order.join(" > ")).unwrap();
    match doc.lambda_min {
        Some(lm) => writeln!(out, "lambda_min = {lm:.4}").unwrap(),
        None => writeln!(out, "lambda_min = none (all weights equal)").unwrap(),
    }
    for w in &doc.warnings {
        writeln!(out, "warning: {w}").unwrap();
    }
    writeln!(out, "I.D. = {:.4}", doc.inconsistency_degree).unwrap();
    out
}
