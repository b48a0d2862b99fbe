use std::io::{BufRead, Write};

use graphsym::symmetry::Certificate;
use graphsym::{classify, graph6, ClassifyOptions, Permutation, QuantumSymmetryVerdict};
use serde::Serialize;

use crate::{usage, Format, Outcome};

#[derive(Serialize)]
struct Line<'a> {
    index: u64,
    n: usize,
    classical: &'static str,
    group_order: Option<String>,
    status: &'static str,
    certificate: &'a Option<Certificate>,
}

const CSV_COLUMNS: [&str; 8] = [
    "index",
    "n",
    "classical",
    "group_order",
    "status",
    "certificate",
    "first",
    "second",
];

fn image(p: &Permutation) -> String {
    p.image()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn csv_record(index: u64, n: usize, v: &QuantumSymmetryVerdict) -> Vec<String> {
    let (kind, first, second) = match &v.certificate {
        Some(Certificate::DisjointAutomorphisms { first, second }) => (
            "disjoint_automorphisms".to_string(),
            image(first),
            image(second),
        ),
        Some(Certificate::FullCoherentAlgebra { num_classes, .. }) => (
            format!("full_coherent_algebra:{num_classes}"),
            String::new(),
            String::new(),
        ),
        None => (String::new(), String::new(), String::new()),
    };
    vec![
        index.to_string(),
        n.to_string(),
        v.classical.as_str().to_string(),
        v.group_order
            .as_ref()
            .map(|o| o.to_string())
            .unwrap_or_default(),
        v.status.as_str().to_string(),
        kind,
        first,
        second,
    ]
}

/// Classifies one graph6 graph per input line, streaming. Blank lines and a
/// `>>graph6<<` prefix are skipped; `index` counts graphs from 0. The CSV
/// header comes with the first graph, so empty input gives empty output.
/// Malformed lines are reported on `err` and skipped, and make the whole
/// run fail with a usage error once the input is exhausted.
pub fn classify_stream<R: BufRead>(
    mut input: R,
    opts: &ClassifyOptions,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    let mut line = String::new();
    let (mut line_no, mut index) = (0u64, 0u64);
    let (mut bad_lines, mut failed) = (0u64, false);
    loop {
        line.clear();
        if input.read_line(&mut line)? == 0 {
            break;
        }
        line_no += 1;
        let text = line.trim_end_matches(['\n', '\r']);
        let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
        if text.trim().is_empty() {
            continue;
        }
        let g = match graph6::decode(text.as_bytes()) {
            Ok(g) => g,
            Err(e) => {
                writeln!(err, "line {line_no}: {e}")?;
                bad_lines += 1;
                continue;
            }
        };
        let verdict = classify(&g, opts);
        if !verdict.verify(&g) {
            writeln!(err, "line {line_no}: certificate failed re-verification")?;
            failed = true;
        }
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *out);
                if index == 0 {
                    w.write_record(CSV_COLUMNS)?;
                }
                w.write_record(csv_record(index, g.n(), &verdict))?;
                w.flush()?;
            }
            Format::Text => {
                let record = Line {
                    index,
                    n: g.n(),
                    classical: verdict.classical.as_str(),
                    group_order: verdict.group_order.as_ref().map(|o| o.to_string()),
                    status: verdict.status.as_str(),
                    certificate: &verdict.certificate,
                };
                serde_json::to_writer(&mut *out, &record)?;
                out.write_all(b"\n")?;
            }
        }
        index += 1;
    }
    out.flush()?;
    if bad_lines > 0 {
        return Err(usage(format!("{bad_lines} malformed input line(s)")));
    }
    Ok(if failed {
        Outcome::Failed
    } else {
        Outcome::Success
    })
}
