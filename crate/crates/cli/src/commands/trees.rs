use std::io::Write;

use graphsym::cherry::{disjoint_cherry_pair, find_cherries};
use graphsym::{
    classify, ClassicalStatus, ClassifyOptions, Proportion, QuantumStatus, SampleStream,
    TrialSummary,
};

use super::{mean_and_bound, opt};
use crate::Format;

/// One row of the tree experiment. Proportions carry 99% Wilson intervals.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeRow {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub mean: f64,
    pub exact_mean: Option<f64>,
    /// Chebyshev lower bound on `P[C_n >= 2]`.
    pub cheb_bound: Option<f64>,
    pub p_geq_1: Proportion,
    pub p_geq_2: Proportion,
    pub two_disjoint_cherries: Proportion,
    /// Classified quantum symmetric with a certificate that re-verified.
    pub quantum_symmetric: Proportion,
    /// The subset of those whose certificate is two transpositions.
    pub qs_transposition: Proportion,
    /// Non-trivial automorphism group.
    pub symmetric: Proportion,
    /// Verdicts whose certificate failed re-verification; always 0 unless
    /// something is broken.
    pub certificate_failures: u64,
}

pub const TREE_COLUMNS: [&str; 21] = [
    "n",
    "trials",
    "seed",
    "mean",
    "exact_mean",
    "cheb_bound",
    "p_geq_1",
    "p_geq_1_lo",
    "p_geq_1_hi",
    "p_geq_2",
    "p_geq_2_lo",
    "p_geq_2_hi",
    "p_two_disjoint_cherries",
    "p_two_disjoint_cherries_lo",
    "p_two_disjoint_cherries_hi",
    "quantum_symmetric_fraction",
    "quantum_symmetric_lo",
    "quantum_symmetric_hi",
    "qs_transposition_fraction",
    "symmetric_fraction",
    "certificate_failures",
];

struct Observation {
    cherries: usize,
    disjoint: bool,
    quantum_symmetric: bool,
    transposition: bool,
    symmetric: bool,
    certificate_failed: bool,
}

/// Samples `trials` uniform trees for every `n` (sample `i` from stream
/// `i` of `seed`) and tabulates cherries and classifier verdicts. The
/// result depends only on the arguments, not on the worker count.
pub fn tree_experiment(
    ns: &[usize],
    trials: u64,
    seed: u64,
    opts: &ClassifyOptions,
) -> graphsym::Result<Vec<TreeRow>> {
    if trials == 0 {
        return Err(graphsym::Error::InvalidArgument(
            "--trials must be positive".into(),
        ));
    }
    ns.iter()
        .map(|&n| {
            let stream = SampleStream::trees(seed, n, trials)?;
            let obs = stream.par_map(|_, t| {
                let cherries = find_cherries(&t);
                let verdict = classify(&t, opts);
                let verified = verdict.verify(&t);
                let qs = verdict.status == QuantumStatus::QuantumSymmetric && verified;
                Observation {
                    cherries: cherries.len(),
                    disjoint: disjoint_cherry_pair(&cherries).is_some(),
                    quantum_symmetric: qs,
                    transposition: qs && verdict.has_transposition_pair(),
                    symmetric: verdict.classical == ClassicalStatus::Symmetric,
                    certificate_failed: verdict.certificate.is_some() && !verified,
                }
            });
            let counts: Vec<usize> = obs.iter().map(|o| o.cherries).collect();
            let summary = TrialSummary::from_counts(n, seed, &counts)?;
            let count = |f: fn(&Observation) -> bool| obs.iter().filter(|o| f(o)).count() as u64;
            let (exact_mean, cheb_bound) = mean_and_bound(n);
            Ok(TreeRow {
                n,
                trials,
                seed,
                mean: summary.mean,
                exact_mean,
                cheb_bound,
                p_geq_1: summary.p_geq_1,
                p_geq_2: summary.p_geq_2,
                two_disjoint_cherries: Proportion::wilson99(count(|o| o.disjoint), trials),
                quantum_symmetric: Proportion::wilson99(count(|o| o.quantum_symmetric), trials),
                qs_transposition: Proportion::wilson99(count(|o| o.transposition), trials),
                symmetric: Proportion::wilson99(count(|o| o.symmetric), trials),
                certificate_failures: count(|o| o.certificate_failed),
            })
        })
        .collect()
}

fn record(r: &TreeRow) -> Vec<String> {
    let p = |x: &Proportion| {
        [
            x.estimate.to_string(),
            x.lower.to_string(),
            x.upper.to_string(),
        ]
    };
    let mut v = vec![
        r.n.to_string(),
        r.trials.to_string(),
        r.seed.to_string(),
        r.mean.to_string(),
        opt(r.exact_mean),
        opt(r.cheb_bound),
    ];
    v.extend(p(&r.p_geq_1));
    v.extend(p(&r.p_geq_2));
    v.extend(p(&r.two_disjoint_cherries));
    v.extend(p(&r.quantum_symmetric));
    v.push(r.qs_transposition.estimate.to_string());
    v.push(r.symmetric.estimate.to_string());
    v.push(r.certificate_failures.to_string());
    v
}

pub fn write_rows(rows: &[TreeRow], format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(TREE_COLUMNS)?;
            for r in rows {
                w.write_record(record(r))?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in rows {
                for (k, v) in TREE_COLUMNS.iter().zip(record(r)) {
                    writeln!(out, "{k}: {v}")?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
