//! Steady-state evolutionary search.
//!
//! Each step selects two parents by q-tournament, recombines them with
//! the crossover probability (otherwise copies), mutates both offspring,
//! and lets the better offspring replace the current worst individual if
//! it is strictly better. A generation is one population's worth of newly
//! created offspring. The population's best fitness therefore never
//! increases, and a fixed seed reproduces a run bit for bit.

use rand::Rng;
use thiserror::Error;

use crate::eval::{chromosome_fitness, evaluate};
use crate::genome::{mutate, random_chromosome, uniform_crossover, Chromosome, GeneRef};
use crate::parity::ParityProblem;

/// Parameters of one search run.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchParams {
    pub population_size: usize,
    /// Generation budget; one generation = `population_size` offspring.
    pub generations: usize,
    /// Number of Fredkin genes after the fixed terminal prefix; the full
    /// genome length is `terminal_count + code_len`.
    pub code_len: usize,
    /// Per-gene replacement probability applied to each offspring.
    pub mutation_prob: f64,
    /// Probability that a parent pair is recombined rather than copied.
    pub crossover_prob: f64,
    /// Tournament size as a fraction of the population; the actual size
    /// is `max(1, round(frac * population_size))`.
    pub tournament_frac: f64,
    /// Seed this run was (or should be) driven by; recorded in results.
    pub seed: u64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("population_size must be at least 2, got {0}")]
    PopulationTooSmall(usize),
    #[error("code_len must be at least 1, got {0}")]
    CodeLenTooSmall(usize),
    #[error("{name} must lie in [0, 1], got {value}")]
    ProbabilityOutOfRange { name: &'static str, value: f64 },
}

impl SearchParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        if self.population_size < 2 {
            return Err(ParamError::PopulationTooSmall(self.population_size));
        }
        if self.code_len < 1 {
            return Err(ParamError::CodeLenTooSmall(self.code_len));
        }
        for (name, value) in [
            ("mutation_prob", self.mutation_prob),
            ("crossover_prob", self.crossover_prob),
            ("tournament_frac", self.tournament_frac),
        ] {
            if !(0.0..=1.0).contains(&value) || value.is_nan() {
                return Err(ParamError::ProbabilityOutOfRange { name, value });
            }
        }
        Ok(())
    }

    /// Effective q for tournament selection.
    pub fn tournament_size(&self) -> usize {
        ((self.tournament_frac * self.population_size as f64).round() as usize).max(1)
    }
}

/// One population member with its cached fitness and best channel.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub chromosome: Chromosome,
    pub fitness: u32,
    pub best_ref: GeneRef,
}

/// Outcome of one search run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    /// True iff a zero-error circuit was found.
    pub success: bool,
    pub best_fitness: u32,
    /// Winning channel within the best chromosome.
    pub best_ref: GeneRef,
    /// Generations consumed: 0 if the initial population already held a
    /// solution, otherwise the 1-based generation in which the solution
    /// appeared, or the full budget on failure.
    pub generations_used: usize,
    pub best_chromosome: Chromosome,
    /// Best population fitness after initialization and after each
    /// generation (the final entry repeats 0 on early success).
    pub best_fitness_by_generation: Vec<u32>,
}

/// q-tournament selection: draws `q` indices with replacement (as `q`
/// successive uniform draws from `rng`) and returns the index of the
/// sampled individual with the lowest fitness; ties break toward the
/// lowest index.
pub fn tournament_select(population: &[Individual], q: usize, rng: &mut impl Rng) -> usize {
    assert!(q >= 1 && q <= population.len(), "tournament size {q} out of range");
    let mut best: Option<usize> = None;
    for _ in 0..q {
        let idx = rng.gen_range(0..population.len());
        let better = match best {
            None => true,
            Some(b) => {
                population[idx].fitness < population[b].fitness
                    || (population[idx].fitness == population[b].fitness && idx < b)
            }
        };
        if better {
            best = Some(idx);
        }
    }
    best.expect("q >= 1")
}

fn make_individual(
    chromosome: Chromosome,
    terminals: &[crate::signal::SignalVector],
    target: &crate::signal::SignalVector,
) -> Individual {
    let eval = evaluate(&chromosome, terminals);
    let (fitness, best_ref) = chromosome_fitness(&eval, target);
    Individual { chromosome, fitness, best_ref }
}

/// Run the steady-state loop until the generation budget is exhausted or
/// a zero-error individual appears.
pub fn steady_state_search(
    params: &SearchParams,
    problem: &ParityProblem,
    rng: &mut impl Rng,
) -> RunResult {
    params.validate().expect("invalid search parameters");
    let terminals = problem.terminal_signals();
    let target = problem.parity_target();
    let q = params.tournament_size();

    let mut population: Vec<Individual> = (0..params.population_size)
        .map(|_| {
            make_individual(
                random_chromosome(problem.terminal_count(), params.code_len, rng),
                &terminals,
                &target,
            )
        })
        .collect();

    let mut best = argmin_fitness(&population);
    let mut history = vec![population[best].fitness];
    if population[best].fitness == 0 {
        return finish(population, best, 0, history);
    }

    for generation in 1..=params.generations {
        let mut created = 0;
        while created < params.population_size {
            let p1 = tournament_select(&population, q, rng);
            let p2 = tournament_select(&population, q, rng);
            let (c1, c2) = if rng.gen_bool(params.crossover_prob) {
                uniform_crossover(&population[p1].chromosome, &population[p2].chromosome, rng)
            } else {
                (population[p1].chromosome.clone(), population[p2].chromosome.clone())
            };
            let o1 = make_individual(mutate(&c1, params.mutation_prob, rng), &terminals, &target);
            let o2 = make_individual(mutate(&c2, params.mutation_prob, rng), &terminals, &target);
            created += 2;

            let offspring = if o1.fitness <= o2.fitness { o1 } else { o2 };
            let worst = argmax_fitness(&population);
            if offspring.fitness < population[worst].fitness {
                population[worst] = offspring;
                if population[worst].fitness < population[best].fitness {
                    best = worst;
                }
                if population[best].fitness == 0 {
                    history.push(0);
                    return finish(population, best, generation, history);
                }
            }
        }
        history.push(population[best].fitness);
    }

    let generations = params.generations;
    finish(population, best, generations, history)
}

fn argmin_fitness(population: &[Individual]) -> usize {
    let mut best = 0;
    for (i, ind) in population.iter().enumerate().skip(1) {
        if ind.fitness < population[best].fitness {
            best = i;
        }
    }
    best
}

fn argmax_fitness(population: &[Individual]) -> usize {
    let mut worst = 0;
    for (i, ind) in population.iter().enumerate().skip(1) {
        if ind.fitness > population[worst].fitness {
            worst = i;
        }
    }
    worst
}

fn finish(
    mut population: Vec<Individual>,
    best: usize,
    generations_used: usize,
    history: Vec<u32>,
) -> RunResult {
    let champion = population.swap_remove(best);
    RunResult {
        success: champion.fitness == 0,
        best_fitness: champion.fitness,
        best_ref: champion.best_ref,
        generations_used,
        best_chromosome: champion.chromosome,
        best_fitness_by_generation: history,
    }
}
