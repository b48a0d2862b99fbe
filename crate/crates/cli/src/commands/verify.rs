use std::io::Write;

use graphsym::census::cherry_census;
use graphsym::moments;
use num_bigint::BigInt;

use crate::{usage, Outcome};

/// Closed forms under test. Implementations other than [`ClosedForms`]
/// exist to exercise the checker itself.
pub trait FormulaSet: Sync {
    fn name(&self) -> &'static str;
    /// Trees with a cherry at one fixed triple of distinct labels.
    fn trees_with_cherry_at(&self, n: usize) -> BigInt;
    /// Cherries summed over all trees.
    fn total_cherries(&self, n: usize) -> BigInt;
    /// Squared cherry counts summed over all trees; `None` where the formula
    /// is not claimed.
    fn total_squared(&self, n: usize) -> Option<BigInt>;
}

/// The library's closed forms.
pub struct ClosedForms;

impl FormulaSet for ClosedForms {
    fn name(&self) -> &'static str {
        "closed forms"
    }

    fn trees_with_cherry_at(&self, n: usize) -> BigInt {
        moments::trees_with_cherry_at(n).expect("n >= 4")
    }

    fn total_cherries(&self, n: usize) -> BigInt {
        moments::total_cherries_over_all_trees(n).expect("n >= 4")
    }

    fn total_squared(&self, n: usize) -> Option<BigInt> {
        moments::total_squared_cherries_over_all_trees(n).ok()
    }
}

/// The closed forms with the published second moment.
pub struct PublishedForms;

impl FormulaSet for PublishedForms {
    fn name(&self) -> &'static str {
        "closed forms, published second moment"
    }

    fn trees_with_cherry_at(&self, n: usize) -> BigInt {
        ClosedForms.trees_with_cherry_at(n)
    }

    fn total_cherries(&self, n: usize) -> BigInt {
        ClosedForms.total_cherries(n)
    }

    fn total_squared(&self, n: usize) -> Option<BigInt> {
        moments::published_total_squared_cherries(n).ok()
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

/// Enumerates all trees for `n = 4..=n_max` and compares the exact tallies
/// with `forms`. Writes a report and fails on the first false identity of
/// each kind (all `n` are still reported).
pub fn verify_formulas(
    n_max: usize,
    cap: usize,
    forms: &dyn FormulaSet,
    out: &mut dyn Write,
) -> anyhow::Result<Outcome> {
    if n_max < 4 {
        return Err(usage(format!("--n-max must be at least 4, got {n_max}")));
    }
    if n_max > cap {
        return Err(usage(format!(
            "--n-max {n_max} exceeds the enumeration cap {cap}"
        )));
    }
    writeln!(out, "checking {} for n = 4..={n_max}", forms.name())?;
    let mut failures = Vec::new();
    for n in 4..=n_max {
        let census = cherry_census(n, cap)?;
        writeln!(out, "n={n} trees={}", census.trees)?;

        let per_triple = forms.trees_with_cherry_at(n);
        let mut triples = 0u64;
        let mut bad_triple = None;
        for (triple, count) in census.per_triple_counts() {
            triples += 1;
            if bad_triple.is_none() && BigInt::from(count) != per_triple {
                bad_triple = Some((triple, count));
            }
        }
        writeln!(
            out,
            "  cherry at a fixed triple: {triples} triples, formula {per_triple} trees each: {}",
            verdict(bad_triple.is_none())
        )?;
        if let Some(((i1, i2, j), count)) = bad_triple {
            writeln!(
                out,
                "    triple ({i1},{i2},{j}) is a cherry in {count} trees"
            )?;
            failures.push(format!(
                "n={n}: trees with cherry at ({i1},{i2},{j}) = {count} != {per_triple}"
            ));
        }

        let total = forms.total_cherries(n);
        let ok = BigInt::from(census.total) == total;
        writeln!(
            out,
            "  sum of C_n: {} (formula {total}), E[C_n] = {}/{}: {}",
            census.total,
            census.total,
            census.trees,
            verdict(ok)
        )?;
        if !ok {
            failures.push(format!("n={n}: sum of C_n = {} != {total}", census.total));
        }

        match forms.total_squared(n) {
            Some(sq) => {
                let ok = BigInt::from(census.total_squared) == sq;
                writeln!(
                    out,
                    "  sum of C_n^2: {} (formula {sq}), E[C_n^2] = {}/{}: {}",
                    census.total_squared,
                    census.total_squared,
                    census.trees,
                    verdict(ok)
                )?;
                if !ok {
                    failures.push(format!(
                        "n={n}: sum of C_n^2 = {} != {sq}",
                        census.total_squared
                    ));
                }
            }
            None => writeln!(
                out,
                "  sum of C_n^2: {} (no formula below n = 7)",
                census.total_squared
            )?,
        }
        let hist: Vec<String> = census.histogram.iter().map(u64::to_string).collect();
        writeln!(out, "  trees by cherry count: {}", hist.join(" "))?;
    }
    if failures.is_empty() {
        writeln!(out, "all identities hold")?;
        Ok(Outcome::Success)
    } else {
        for f in &failures {
            writeln!(out, "FAILED {f}")?;
        }
        Ok(Outcome::Failed)
    }
}
