use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fitness::{evaluate, is_optimal, match_vector, Evaluation};
use crate::genotype::{random_genotype, Genotype};
use crate::geometry::ProblemParams;
use crate::num::Scalar;
use crate::rng::SplitMix64;

use super::config::{Crossover, EvolutionConfig};
use super::crossover::{one_point_crossover, uniform_crossover};
use super::mutation::outer_mutation;
use super::selection::{select, FitnessOrd, Origin};

/// State of the best individual after a generation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub generation: u64,
    pub i: u64,
    /// `𝕁 − ε`
    pub j: u64,
    pub ones: usize,
    pub fitness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub seed: u64,
    pub generations: u64,
    pub evaluations: u64,
    pub success: bool,
    pub final_fitness: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<Vec<TrajectoryPoint>>,
}

struct Individual<T> {
    genotype: Genotype,
    eval: Evaluation<T>,
}

fn best<T: Scalar>(pop: &[Individual<T>]) -> &Individual<T> {
    pop.iter()
        .reduce(|b, x| {
            if x.eval.fitness_cmp(&b.eval).is_gt() {
                x
            } else {
                b
            }
        })
        .expect("non-empty population")
}

/// Runs one replicate until some individual is optimal or the generation
/// cap is hit.
pub fn run<T: Scalar>(p: &ProblemParams<T>, cfg: &EvolutionConfig, seed: u64) -> Result<RunRecord> {
    cfg.validate()?;
    let mut rng = SplitMix64::new(seed);
    let lambda = cfg.lambda;
    let s = cfg.init_bound(p.r());
    let make = |genotype: Genotype| Individual {
        eval: evaluate(p, &genotype),
        genotype,
    };

    let mut pop: Vec<Individual<T>> = (0..lambda)
        .map(|_| make(random_genotype(p.key, s, &mut rng)))
        .collect();
    let mut trajectory = cfg.record_trajectory.then(Vec::new);
    let record =
        |trajectory: &mut Option<Vec<TrajectoryPoint>>, generation, pop: &[Individual<T>]| {
            if let Some(t) = trajectory {
                let b = best(pop);
                let (i, j) = b.eval.score.coords();
                t.push(TrajectoryPoint {
                    generation,
                    i,
                    j,
                    ones: match_vector(p, &b.genotype).ones,
                    fitness: b.eval.fitness.as_f64(),
                });
            }
        };
    record(&mut trajectory, 0, &pop);

    let mut generations = 0;
    let mut success = pop.iter().any(|ind| is_optimal(p, &ind.genotype));
    while !success && generations < cfg.max_generations {
        let offspring: Vec<Individual<T>> = (0..lambda)
            .map(|_| {
                let child = match cfg.crossover {
                    Crossover::None => {
                        let parent = if lambda == 1 {
                            0
                        } else {
                            rng.below_usize(lambda)
                        };
                        pop[parent].genotype.clone()
                    }
                    mode => {
                        let first = rng.below_usize(lambda);
                        let mut second = rng.below_usize(lambda - 1);
                        if second >= first {
                            second += 1;
                        }
                        let (a, b) = (&pop[first].genotype, &pop[second].genotype);
                        if mode == Crossover::OnePoint {
                            one_point_crossover(a, b, &mut rng)
                        } else {
                            uniform_crossover(a, b, &mut rng)
                        }
                    }
                };
                make(outer_mutation(&child, &cfg.mutation, &mut rng))
            })
            .collect();

        let parent_evals: Vec<Evaluation<T>> = pop.iter().map(|i| i.eval).collect();
        let offspring_evals: Vec<Evaluation<T>> = offspring.iter().map(|i| i.eval).collect();
        let survivors = select(&parent_evals, &offspring_evals);
        let mut parents: Vec<Option<Individual<T>>> = pop.into_iter().map(Some).collect();
        let mut children: Vec<Option<Individual<T>>> = offspring.into_iter().map(Some).collect();
        pop = survivors
            .into_iter()
            .map(|s| {
                let slot = match s.origin {
                    Origin::Parent => &mut parents[s.index],
                    Origin::Offspring => &mut children[s.index],
                };
                slot.take().expect("each individual survives at most once")
            })
            .collect();

        generations += 1;
        record(&mut trajectory, generations, &pop);
        success = pop.iter().any(|ind| is_optimal(p, &ind.genotype));
    }

    let final_fitness = if success {
        1.0
    } else {
        best(&pop).eval.fitness.as_f64()
    };
    Ok(RunRecord {
        seed,
        generations,
        evaluations: lambda as u64 * (generations + 1),
        success,
        final_fitness,
        trajectory,
    })
}
