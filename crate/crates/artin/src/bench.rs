//! Deterministic instance generation and wall-clock measurement for the
//! scaling checks and the `bench` subcommand.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::context::GroupContext;
use crate::dihedral_conjugacy::conjugacy_dihedral;
use crate::rewrite::{normal_form, reduce};
use crate::solver::conjugacy;
use crate::word::Word;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BenchOp {
    /// Geodesic reduction of a random word.
    Reduce,
    /// Canonical form of a random word.
    NormalForm,
    /// Conjugacy decision on a constructed conjugate pair. Runs the
    /// dihedral pipeline directly on two-generator groups and the full
    /// solver otherwise.
    Conjugate,
}

impl BenchOp {
    pub fn name(self) -> &'static str {
        match self {
            BenchOp::Reduce => "reduce",
            BenchOp::NormalForm => "normal-form",
            BenchOp::Conjugate => "conjugate",
        }
    }

    pub fn parse(s: &str) -> Option<BenchOp> {
        match s {
            "reduce" => Some(BenchOp::Reduce),
            "normal-form" => Some(BenchOp::NormalForm),
            "conjugate" => Some(BenchOp::Conjugate),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub operation: String,
    pub length: usize,
    pub samples: usize,
    pub mean_micros: f64,
}

/// Uniformly random freely reduced word of exactly `len` letters.
pub fn random_reduced_word(ctx: &GroupContext, len: usize, rng: &mut ChaCha8Rng) -> Word {
    let letters = ctx.letters();
    let mut out = Word::new();
    while out.len() < len {
        let a = letters[rng.gen_range(0..letters.len())];
        if out.last() == Some(a.inverse()) {
            continue;
        }
        out.push(a);
    }
    out
}

fn time_micros(mut run: impl FnMut()) -> f64 {
    let start = Instant::now();
    run();
    start.elapsed().as_secs_f64() * 1e6
}

/// Mean wall time per operation and length. Instances are generated from
/// the seed, so the benched workload is reproducible even though the
/// timings themselves are not.
pub fn run_bench(
    ctx: &GroupContext,
    lengths: &[usize],
    samples: usize,
    seed: u64,
    ops: &[BenchOp],
) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for &len in lengths {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (len as u64).wrapping_mul(0x9e37_79b9));
        for &op in ops {
            let mut total = 0.0;
            match op {
                BenchOp::Reduce => {
                    for _ in 0..samples {
                        let w = random_reduced_word(ctx, len, &mut rng);
                        total += time_micros(|| {
                            let _ = reduce(&w, ctx);
                        });
                    }
                }
                BenchOp::NormalForm => {
                    for _ in 0..samples {
                        let w = random_reduced_word(ctx, len, &mut rng);
                        total += time_micros(|| {
                            let _ = normal_form(&w, ctx);
                        });
                    }
                }
                BenchOp::Conjugate => {
                    for _ in 0..samples {
                        let u = random_reduced_word(ctx, len, &mut rng);
                        let f = random_reduced_word(ctx, 2, &mut rng);
                        let v = f.invert().concat(&u).concat(&f);
                        total += time_micros(|| {
                            let hit = if ctx.n() == 2 {
                                conjugacy_dihedral(
                                    &u,
                                    &v,
                                    ctx.m(crate::word::GeneratorId(0), crate::word::GeneratorId(1)),
                                )
                                .is_some()
                            } else {
                                conjugacy(&u, &v, ctx).conjugate
                            };
                            assert!(hit, "constructed pairs are conjugate");
                        });
                    }
                }
            }
            rows.push(BenchRow {
                operation: op.name().into(),
                length: len,
                samples,
                mean_micros: total / samples as f64,
            });
        }
    }
    rows
}

/// Least-squares slope of log(time) against log(length) for one operation:
/// the empirical scaling exponent.
pub fn fit_exponent(rows: &[BenchRow], operation: &str) -> f64 {
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.operation == operation)
        .map(|r| ((r.length as f64).ln(), r.mean_micros.max(1e-3).ln()))
        .collect();
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::{CoxeterMatrix, MValue};

    #[test]
    fn instances_are_deterministic() {
        let matrix = CoxeterMatrix::from_pairs(2, &[(0, 1, MValue::Finite(4))]).unwrap();
        let ctx = GroupContext::new(matrix).unwrap();
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        let a = random_reduced_word(&ctx, 20, &mut r1);
        let b = random_reduced_word(&ctx, 20, &mut r2);
        assert_eq!(a, b);
        assert!(a.is_freely_reduced());
        assert_eq!(a.len(), 20);
    }

    #[test]
    fn bench_runs_all_ops() {
        let matrix = CoxeterMatrix::from_pairs(2, &[(0, 1, MValue::Finite(4))]).unwrap();
        let ctx = GroupContext::new(matrix).unwrap();
        let rows = run_bench(
            &ctx,
            &[8, 16],
            2,
            1,
            &[BenchOp::Reduce, BenchOp::NormalForm, BenchOp::Conjugate],
        );
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.mean_micros >= 0.0));
    }

    #[test]
    fn fit_exponent_of_linear_data() {
        let rows = vec![
            BenchRow { operation: "op".into(), length: 16, samples: 1, mean_micros: 16.0 },
            BenchRow { operation: "op".into(), length: 32, samples: 1, mean_micros: 32.0 },
            BenchRow { operation: "op".into(), length: 64, samples: 1, mean_micros: 64.0 },
        ];
        let e = fit_exponent(&rows, "op");
        assert!((e - 1.0).abs() < 1e-9);
    }
}
