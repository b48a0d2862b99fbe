use std::io::Write;

use graphsym::moments::{asymptotic_moments, exact_moments, rational_to_f64};

use super::{opt, EXACT_MOMENT_LIMIT};
use crate::{usage, Format};

const COLUMNS: [&str; 7] = [
    "n",
    "method",
    "e_cn",
    "e_cn_sq",
    "var_ratio",
    "var_ratio_shifted",
    "cheb_bound",
];

/// CSV of floating-point moments, or one JSON object per `n` in text mode
/// (exact rationals as `"p/q"` strings up to the exact limit).
pub fn write_moments(ns: &[usize], format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
    if let Some(n) = ns.iter().find(|&&n| n < 4) {
        return Err(usage(format!("moments need n >= 4, got {n}")));
    }
    let mut csv_out = (format == Format::Csv).then(|| csv::Writer::from_writer(Vec::new()));
    if let Some(w) = csv_out.as_mut() {
        w.write_record(COLUMNS)?;
    }
    for &n in ns {
        let exact = n <= EXACT_MOMENT_LIMIT;
        let row = if exact {
            let m = exact_moments(n)?;
            if let Format::Text = format {
                serde_json::to_writer(&mut *out, &m)?;
                out.write_all(b"\n")?;
                continue;
            }
            [
                Some(rational_to_f64(&m.e_cn)),
                m.e_cn_sq.as_ref().map(rational_to_f64),
                m.var_ratio().as_ref().map(rational_to_f64),
                m.var_ratio_shifted().as_ref().map(rational_to_f64),
                m.chebyshev_bound_f64(),
            ]
        } else {
            let m = asymptotic_moments(n)?;
            if let Format::Text = format {
                serde_json::to_writer(&mut *out, &m)?;
                out.write_all(b"\n")?;
                continue;
            }
            [
                Some(m.e_cn),
                Some(m.e_cn_sq),
                Some(m.var_ratio),
                Some(m.var_ratio_shifted),
                Some(m.chebyshev_bound),
            ]
        };
        if let Some(w) = csv_out.as_mut() {
            let mut rec = vec![
                n.to_string(),
                if exact { "exact" } else { "log-space" }.to_string(),
            ];
            rec.extend(row.into_iter().map(opt));
            w.write_record(rec)?;
        }
    }
    if let Some(w) = csv_out.as_mut() {
        w.flush()?;
        out.write_all(w.get_ref())?;
    }
    Ok(())
}
