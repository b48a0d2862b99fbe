use std::io::Write;

use graphsym::{
    brute_force_automorphisms, wl2_stabilize, ClassifyOptions, Proportion, SampleStream,
};

use crate::Format;

/// One row of the G(n, 1/2) experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphRow {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// Samples whose WL-2 configuration has `n²` classes.
    pub full: Proportion,
    /// Mean of `num_classes / n²`.
    pub mean_class_ratio: f64,
    /// Full samples whose automorphism group was recomputed by brute force
    /// (only for `n` within the brute-force cap).
    pub brute_checked: u64,
    /// Full samples with a non-trivial automorphism: must be 0.
    pub violations: u64,
}

pub const GRAPH_COLUMNS: [&str; 9] = [
    "n",
    "trials",
    "seed",
    "full_fraction",
    "full_lo",
    "full_hi",
    "mean_class_ratio",
    "brute_checked",
    "violations",
];

pub fn graph_experiment(
    ns: &[usize],
    trials: u64,
    seed: u64,
    opts: &ClassifyOptions,
) -> graphsym::Result<Vec<GraphRow>> {
    if trials == 0 {
        return Err(graphsym::Error::InvalidArgument(
            "--trials must be positive".into(),
        ));
    }
    if let Some(&n) = ns.iter().find(|&&n| n > opts.wl_cap) {
        return Err(graphsym::Error::CapExceeded {
            what: "2-dimensional WL refinement",
            n,
            cap: opts.wl_cap,
        });
    }
    ns.iter()
        .map(|&n| {
            let stream = SampleStream::gnp(seed, n, 0.5, trials)?;
            let obs = stream.par_map(|_, g| {
                let c = wl2_stabilize(&g, opts.wl_cap).expect("n checked against the cap");
                let full = c.is_full();
                let checked = full && n <= opts.brute_force_cap;
                let violation = checked
                    && !brute_force_automorphisms(&g, opts.brute_force_cap)
                        .expect("n within the cap")
                        .is_trivial();
                (full, c.num_classes(), checked, violation)
            });
            let full = obs.iter().filter(|o| o.0).count() as u64;
            let ratio_sum: f64 = obs.iter().map(|o| o.1 as f64 / (n * n) as f64).sum();
            Ok(GraphRow {
                n,
                trials,
                seed,
                full: Proportion::wilson99(full, trials),
                mean_class_ratio: ratio_sum / trials as f64,
                brute_checked: obs.iter().filter(|o| o.2).count() as u64,
                violations: obs.iter().filter(|o| o.3).count() as u64,
            })
        })
        .collect()
}

fn record(r: &GraphRow) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.trials.to_string(),
        r.seed.to_string(),
        r.full.estimate.to_string(),
        r.full.lower.to_string(),
        r.full.upper.to_string(),
        r.mean_class_ratio.to_string(),
        r.brute_checked.to_string(),
        r.violations.to_string(),
    ]
}

pub fn write_rows(rows: &[GraphRow], format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(GRAPH_COLUMNS)?;
            for r in rows {
                w.write_record(record(r))?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in rows {
                for (k, v) in GRAPH_COLUMNS.iter().zip(record(r)) {
                    writeln!(out, "{k}: {v}")?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
