//! The `bench` subcommand: generate focal supports of a chosen shape, run
//! the zeta/Möbius pair in the superset order with the selected scheme, and
//! report combine counts against the dense-baseline formula n·2^{n−1} per
//! direction. The invariant under test is that the support-restricted
//! evaluation never performs more combines than the dense one.

use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use emt::kernels::naive::MAX_DENSE_WIDTH;
use emt::structure::{analyze, analyze_forced, AnalysisConfig};
use emt::{
    fmt_transform, transform_on_structure, FocalStructure, OpKind, OrderRelation, SubsetWord,
    TransformSpec,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::pipeline::SchemeFlag;

/// Shape of the generated supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum GeneratorFlag {
    /// Distinct nonempty subsets drawn uniformly.
    Random,
    /// A nested chain of prefixes of a shuffled frame.
    Consonant,
    /// Pairwise-disjoint blocks of a shuffled frame.
    QuasiBayesian,
}

impl GeneratorFlag {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorFlag::Random => "random",
            GeneratorFlag::Consonant => "consonant",
            GeneratorFlag::QuasiBayesian => "quasi_bayesian",
        }
    }
}

/// One measured trial.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BenchRow {
    pub trial: usize,
    pub scheme: String,
    pub support_size: usize,
    pub closure_size: usize,
    pub zeta_combines: u64,
    pub moebius_combines: u64,
    pub proxy_visits: u64,
    pub wall_micros: u64,
    pub fmt_combines: u64,
}

/// The whole report, one row per trial.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BenchReport {
    pub generator: GeneratorFlag,
    pub omega: usize,
    pub support: usize,
    pub seed: u64,
    pub trials: usize,
    pub scheme_flag: String,
    pub fmt_combines_per_direction: u64,
    pub rows: Vec<BenchRow>,
    pub pass: bool,
}

fn from_mask(width: usize, mask: u64) -> SubsetWord {
    SubsetWord::from_indices(width, (0..width).filter(|&i| mask >> i & 1 == 1))
}

/// Draw a support of the requested shape. Sizes are clamped to what the
/// shape admits: at most 2^n − 1 distinct nonempty sets, at most n chain
/// links or disjoint blocks.
pub fn generate_support(
    rng: &mut ChaCha8Rng,
    generator: GeneratorFlag,
    width: usize,
    support_size: usize,
) -> Vec<SubsetWord> {
    match generator {
        GeneratorFlag::Random => {
            let cap = ((1u64 << width) - 1) as usize;
            let count = support_size.clamp(1, cap);
            let mut masks = std::collections::BTreeSet::new();
            while masks.len() < count {
                masks.insert(rng.random_range(1..1u64 << width));
            }
            masks.into_iter().map(|m| from_mask(width, m)).collect()
        }
        GeneratorFlag::Consonant => {
            let count = support_size.clamp(1, width);
            let mut order: Vec<usize> = (0..width).collect();
            order.shuffle(rng);
            let mut lengths: Vec<usize> = (1..=width).collect();
            lengths.shuffle(rng);
            let mut lengths: Vec<usize> = lengths.into_iter().take(count).collect();
            lengths.sort_unstable();
            lengths
                .into_iter()
                .map(|len| SubsetWord::from_indices(width, order[..len].iter().copied()))
                .collect()
        }
        GeneratorFlag::QuasiBayesian => {
            let count = support_size.clamp(1, width);
            let mut order: Vec<usize> = (0..width).collect();
            order.shuffle(rng);
            // Random composition of `width` into `count` positive parts.
            let mut cuts: Vec<usize> = (1..width).collect();
            cuts.shuffle(rng);
            let mut cuts: Vec<usize> = cuts.into_iter().take(count - 1).collect();
            cuts.push(0);
            cuts.push(width);
            cuts.sort_unstable();
            cuts.windows(2)
                .map(|pair| SubsetWord::from_indices(width, order[pair[0]..pair[1]].iter().copied()))
                .collect()
        }
    }
}

/// Symmetric Dirichlet(1) masses over the support.
pub fn generate_masses(rng: &mut ChaCha8Rng, count: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..count)
        .map(|_| -(rng.random_range(f64::MIN_POSITIVE..1.0)).ln())
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

fn build_structure(
    support: &[SubsetWord],
    flag: SchemeFlag,
) -> Result<FocalStructure> {
    let order = OrderRelation::SupersetOf;
    Ok(match flag {
        SchemeFlag::Auto => analyze(support, order, &AnalysisConfig::default()),
        SchemeFlag::Consonant => analyze_forced(support, order, emt::Scheme::Consonant)?,
        SchemeFlag::Semilattice => analyze_forced(support, order, emt::Scheme::Semilattice)?,
        SchemeFlag::Lattice => analyze_forced(support, order, emt::Scheme::LatticeSupport)?,
        SchemeFlag::Agnostic => analyze_forced(support, order, emt::Scheme::OrderAgnostic)?,
        SchemeFlag::Fmt => bail!("the dense scheme is the baseline; it has no structure"),
    })
}

fn run_trial(
    trial: usize,
    width: usize,
    support: &[SubsetWord],
    masses: &[f64],
    flag: SchemeFlag,
) -> Result<BenchRow> {
    let spec_zeta = TransformSpec::zeta(OrderRelation::SupersetOf, OpKind::Additive);
    let spec_moebius = TransformSpec::moebius(OrderRelation::SupersetOf, OpKind::Additive);
    let fmt_combines = fmt_baseline(width);

    if flag == SchemeFlag::Fmt {
        ensure!(
            width <= MAX_DENSE_WIDTH,
            "frame too large for the dense transform: |Ω| = {width} exceeds {MAX_DENSE_WIDTH}"
        );
        let mut dense = vec![0.0; 1 << width];
        for (set, mass) in support.iter().zip(masses) {
            dense[set.indices().fold(0usize, |acc, i| acc | 1 << i)] = *mass;
        }
        let start = Instant::now();
        let (view, zeta_ops) = fmt_transform(width, &dense, spec_zeta)?;
        let (back, moebius_ops) = fmt_transform(width, &view, spec_moebius)?;
        let wall_micros = start.elapsed().as_micros() as u64;
        check_recovery(&dense, &back)?;
        return Ok(BenchRow {
            trial,
            scheme: "fmt".into(),
            support_size: support.len(),
            closure_size: 1 << width,
            zeta_combines: zeta_ops.combines,
            moebius_combines: moebius_ops.combines,
            proxy_visits: 0,
            wall_micros,
            fmt_combines,
        });
    }

    let structure = build_structure(support, flag)?;
    let values: Vec<f64> = structure
        .family
        .nodes()
        .iter()
        .map(|node| {
            support
                .iter()
                .position(|s| s == node)
                .map_or(0.0, |i| masses[i])
        })
        .collect();
    let start = Instant::now();
    let (view, zeta_ops) = transform_on_structure(&structure, &values, spec_zeta)?;
    let (back, moebius_ops) = transform_on_structure(&structure, &view, spec_moebius)?;
    let wall_micros = start.elapsed().as_micros() as u64;
    check_recovery(&values, &back)?;
    Ok(BenchRow {
        trial,
        scheme: structure.scheme.name().into(),
        support_size: support.len(),
        closure_size: structure.family.len(),
        zeta_combines: zeta_ops.combines,
        moebius_combines: moebius_ops.combines,
        proxy_visits: zeta_ops.proxy_visits + moebius_ops.proxy_visits,
        wall_micros,
        fmt_combines,
    })
}

/// Dense-baseline combines per direction.
pub fn fmt_baseline(width: usize) -> u64 {
    (width as u64) * (1u64 << (width.saturating_sub(1)))
}

fn check_recovery(input: &[f64], recovered: &[f64]) -> Result<()> {
    for (i, (a, b)) in input.iter().zip(recovered).enumerate() {
        ensure!(
            (a - b).abs() <= 1e-9,
            "round trip drifted at node {i}: {a} vs {b}"
        );
    }
    Ok(())
}

pub fn run_bench(
    generator: GeneratorFlag,
    width: usize,
    support_size: usize,
    seed: u64,
    trials: usize,
    flag: SchemeFlag,
) -> Result<BenchReport> {
    ensure!(width >= 1, "the frame needs at least one element");
    ensure!(trials >= 1, "need at least one trial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(trials);
    let mut pass = true;
    for trial in 0..trials {
        let support = generate_support(&mut rng, generator, width, support_size);
        let masses = generate_masses(&mut rng, support.len());
        let row = run_trial(trial, width, &support, &masses, flag)
            .with_context(|| format!("trial {trial}"))?;
        if row.zeta_combines > row.fmt_combines || row.moebius_combines > row.fmt_combines {
            pass = false;
        }
        rows.push(row);
    }
    Ok(BenchReport {
        generator,
        omega: width,
        support: support_size,
        seed,
        trials,
        scheme_flag: flag.name().into(),
        fmt_combines_per_direction: fmt_baseline(width),
        rows,
        pass,
    })
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string(self).expect("report serialization");
        text.push('\n');
        text
    }

    pub fn summary_lines(&self) -> Vec<String> {
        let mut lines = Vec::with_capacity(self.rows.len() + 1);
        for row in &self.rows {
            lines.push(format!(
                "trial {} scheme={} |S|={} closure={} zeta={} moebius={} proxy={} wall={}us fmt={}",
                row.trial,
                row.scheme,
                row.support_size,
                row.closure_size,
                row.zeta_combines,
                row.moebius_combines,
                row.proxy_visits,
                row.wall_micros,
                row.fmt_combines,
            ));
        }
        lines.push(format!(
            "bench generator={} omega={} trials={} invariant(EMT ≤ FMT)={}",
            self.generator.name(),
            self.omega,
            self.trials,
            if self.pass { "PASS" } else { "FAIL" }
        ));
        lines
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_have_their_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let width = rng.random_range(2..=8);
            let size = rng.random_range(1..=10);

            let chain = generate_support(&mut rng, GeneratorFlag::Consonant, width, size);
            assert!(!chain.is_empty() && chain.len() <= width.min(size));
            for pair in chain.windows(2) {
                assert!(
                    pair[0].is_subset_of(&pair[1]) && pair[0] != pair[1],
                    "chain must strictly nest"
                );
            }

            let blocks = generate_support(&mut rng, GeneratorFlag::QuasiBayesian, width, size);
            assert!(!blocks.is_empty() && blocks.len() <= width.min(size));
            for (i, a) in blocks.iter().enumerate() {
                assert!(!a.is_empty(), "blocks are nonempty");
                for b in blocks.iter().skip(i + 1) {
                    assert!(!a.intersects(b), "blocks are disjoint");
                }
            }

            let random = generate_support(&mut rng, GeneratorFlag::Random, width, size);
            let expected = size.min((1usize << width) - 1);
            assert_eq!(random.len(), expected);
            for set in &random {
                assert!(!set.is_empty());
            }
        }
    }

    #[test]
    fn masses_are_a_distribution() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let masses = generate_masses(&mut rng, 17);
        assert!((masses.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(masses.iter().all(|&m| m > 0.0));
    }

    #[test]
    fn consonant_chains_cost_one_combine_per_link() {
        let report = run_bench(GeneratorFlag::Consonant, 16, 16, 42, 3, SchemeFlag::Auto).unwrap();
        assert!(report.pass);
        assert_eq!(report.fmt_combines_per_direction, 16 * (1 << 15));
        for row in &report.rows {
            assert_eq!(row.scheme, "consonant");
            assert_eq!(row.support_size, 16);
            assert_eq!(row.zeta_combines, 15);
            assert_eq!(row.moebius_combines, 15);
        }
    }

    #[test]
    fn quasi_bayesian_work_is_linear_in_the_support() {
        // Agnostic-scheme combines at fixed |Ω| should double with |S|.
        let combines_at = |size: usize| -> u64 {
            let report =
                run_bench(GeneratorFlag::QuasiBayesian, 16, size, 9, 4, SchemeFlag::Agnostic)
                    .unwrap();
            assert!(report.pass);
            report.rows.iter().map(|r| r.zeta_combines).sum::<u64>() / 4
        };
        let at4 = combines_at(4);
        let at8 = combines_at(8);
        let at16 = combines_at(16);
        assert_eq!(at4, 4);
        assert_eq!(at8, 8);
        assert_eq!(at16, 16);
    }

    #[test]
    fn the_dense_baseline_bench_matches_its_formula() {
        let report = run_bench(GeneratorFlag::Random, 8, 10, 3, 2, SchemeFlag::Fmt).unwrap();
        assert!(report.pass);
        for row in &report.rows {
            assert_eq!(row.zeta_combines, 8 * (1 << 7));
            assert_eq!(row.moebius_combines, 8 * (1 << 7));
            assert_eq!(row.closure_size, 256);
        }
    }

    #[test]
    fn random_benches_respect_the_dense_bound() {
        for seed in 0..5 {
            let report = run_bench(GeneratorFlag::Random, 10, 8, seed, 5, SchemeFlag::Auto)
                .unwrap();
            assert!(report.pass, "seed {seed}");
            for row in &report.rows {
                assert!(row.zeta_combines <= 10 * (1 << 9));
            }
        }
    }
}
