//! Selection, crossover, and mutation operators.
//!
//! Crossover and mutation take explicit cut points / positions so they are
//! pure and directly testable; the engine draws those from its seeded source.
//! Naive site exchange would duplicate places on permutation chromosomes, so
//! the permutation operators are the segment-preserving OX1 and the
//! mapping-repair PMX; plain single-point exchange is reserved for string
//! chromosomes where it is safe.

use serde::{Deserialize, Serialize};

use crate::encoding::{Alphabet, PermutationChromosome, PlaceId, StringChromosome};
use crate::error::{GaError, Result};
use crate::rng::SeededRng;

/// Available crossover operators. Permutation operators apply only to
/// permutation chromosomes, `single-point` only to strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossoverOperator {
    Ox1,
    Pmx,
    SinglePoint,
}

/// Available mutation operators. `swap` applies to permutations,
/// `random-reset` to strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MutationOperator {
    Swap,
    RandomReset,
}

/// Crossover operator plus the per-pair application probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverSpec {
    pub operator: CrossoverOperator,
    pub rate: f64,
}

/// Mutation operator plus the per-individual application probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutationSpec {
    pub operator: MutationOperator,
    pub rate: f64,
}

/// Roulette wheel built from lower-is-better fitnesses: per-individual
/// values 1/f, their normalized probabilities, and the cumulative column a
/// uniform draw is looked up against.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionWheel {
    values: Vec<f64>,
    probabilities: Vec<f64>,
    cumulative: Vec<f64>,
}

impl SelectionWheel {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }
}

/// Builds the selection wheel from strictly positive fitnesses.
///
/// The final cumulative entry is pinned to exactly 1.0 (the prefix sum lands
/// within ~2^-50 of it anyway) so that every draw in [0,1) falls inside some
/// interval.
pub fn build_wheel(fitnesses: &[f64]) -> Result<SelectionWheel> {
    if fitnesses.is_empty() {
        return Err(GaError::domain(
            "cannot build a selection wheel from zero individuals",
        ));
    }
    if let Some(bad) = fitnesses
        .iter()
        .find(|f| (**f).partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater))
    {
        return Err(GaError::domain(format!(
            "selection values need strictly positive fitness, got {bad}"
        )));
    }

    let values: Vec<f64> = fitnesses.iter().map(|f| 1.0 / f).collect();
    let total: f64 = values.iter().sum();
    let probabilities: Vec<f64> = values.iter().map(|v| v / total).collect();

    let mut cumulative = Vec::with_capacity(probabilities.len());
    let mut acc = 0.0;
    for p in &probabilities {
        acc += p;
        cumulative.push(acc);
    }
    *cumulative.last_mut().expect("nonempty") = 1.0;

    Ok(SelectionWheel {
        values,
        probabilities,
        cumulative,
    })
}

/// Maps a uniform draw `r` in [0,1) to the selected index: the smallest `i`
/// with `r < cumulative[i]`.
pub fn spin(wheel: &SelectionWheel, r: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&r) {
        return Err(GaError::domain(format!(
            "selection draw {r} outside [0, 1)"
        )));
    }
    Ok(wheel.cumulative.partition_point(|&c| c <= r))
}

fn check_cuts(len: usize, cut1: usize, cut2: usize) -> Result<()> {
    if cut1 > cut2 || cut2 > len {
        return Err(GaError::domain(format!(
            "cut points ({cut1}, {cut2}) invalid for chromosome length {len}"
        )));
    }
    Ok(())
}

fn check_same_length(a: &PermutationChromosome, b: &PermutationChromosome) -> Result<()> {
    if a.len() != b.len() {
        return Err(GaError::domain(format!(
            "parents have different lengths: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// Order crossover (OX1). Each child keeps one parent's segment
/// `[cut1, cut2)` in place and fills the remaining positions left to right
/// with the other parent's genes in that parent's order, skipping genes the
/// segment already holds. Both children are valid permutations whenever the
/// parents are valid over the same place set.
pub fn order_crossover(
    parent_a: &PermutationChromosome,
    parent_b: &PermutationChromosome,
    cut1: usize,
    cut2: usize,
) -> Result<(PermutationChromosome, PermutationChromosome)> {
    check_same_length(parent_a, parent_b)?;
    check_cuts(parent_a.len(), cut1, cut2)?;
    Ok((
        ox1_child(parent_a, parent_b, cut1, cut2),
        ox1_child(parent_b, parent_a, cut1, cut2),
    ))
}

fn ox1_child(
    keeper: &PermutationChromosome,
    filler: &PermutationChromosome,
    cut1: usize,
    cut2: usize,
) -> PermutationChromosome {
    let len = keeper.len();
    let segment = &keeper.genes()[cut1..cut2];
    let mut donor = filler.genes().iter().filter(|g| !segment.contains(g));
    let genes: Vec<PlaceId> = (0..len)
        .map(|pos| {
            if (cut1..cut2).contains(&pos) {
                keeper.genes()[pos]
            } else {
                *donor
                    .next()
                    .expect("filler supplies exactly the missing genes")
            }
        })
        .collect();
    PermutationChromosome::from_genes(genes)
}

/// Partially mapped crossover (PMX). Each child keeps one parent's segment
/// `[cut1, cut2)`; outside the segment it takes the other parent's gene,
/// chased through the segment mapping until it leaves the segment.
pub fn pmx_crossover(
    parent_a: &PermutationChromosome,
    parent_b: &PermutationChromosome,
    cut1: usize,
    cut2: usize,
) -> Result<(PermutationChromosome, PermutationChromosome)> {
    check_same_length(parent_a, parent_b)?;
    check_cuts(parent_a.len(), cut1, cut2)?;
    Ok((
        pmx_child(parent_a, parent_b, cut1, cut2),
        pmx_child(parent_b, parent_a, cut1, cut2),
    ))
}

fn pmx_child(
    keeper: &PermutationChromosome,
    donor: &PermutationChromosome,
    cut1: usize,
    cut2: usize,
) -> PermutationChromosome {
    let segment = &keeper.genes()[cut1..cut2];
    let genes: Vec<PlaceId> = (0..keeper.len())
        .map(|pos| {
            if (cut1..cut2).contains(&pos) {
                keeper.genes()[pos]
            } else {
                let mut gene = donor.genes()[pos];
                // Follow keeper-segment -> donor-segment mappings until the
                // candidate no longer collides with the kept segment. Each
                // step moves to a distinct gene, so this terminates.
                while let Some(offset) = segment.iter().position(|g| *g == gene) {
                    gene = donor.genes()[cut1 + offset];
                }
                gene
            }
        })
        .collect();
    PermutationChromosome::from_genes(genes)
}

/// Single-point crossover for string chromosomes: children swap their tails
/// at `cut`.
pub fn single_point_crossover(
    parent_a: &StringChromosome,
    parent_b: &StringChromosome,
    cut: usize,
) -> Result<(StringChromosome, StringChromosome)> {
    if parent_a.len() != parent_b.len() {
        return Err(GaError::domain(format!(
            "parents have different lengths: {} vs {}",
            parent_a.len(),
            parent_b.len()
        )));
    }
    if cut > parent_a.len() {
        return Err(GaError::domain(format!(
            "cut point {cut} invalid for chromosome length {}",
            parent_a.len()
        )));
    }
    let mut child_a = parent_a.genes().to_vec();
    let mut child_b = parent_b.genes().to_vec();
    child_a[cut..].swap_with_slice(&mut child_b[cut..]);
    Ok((
        StringChromosome::from_chars(child_a),
        StringChromosome::from_chars(child_b),
    ))
}

/// Exchanges the genes at positions `i` and `j` within one chromosome.
pub fn swap_mutation(
    chromosome: &PermutationChromosome,
    i: usize,
    j: usize,
) -> Result<PermutationChromosome> {
    let len = chromosome.len();
    if i >= len || j >= len {
        return Err(GaError::domain(format!(
            "swap positions ({i}, {j}) out of range for length {len}"
        )));
    }
    let mut genes = chromosome.genes().to_vec();
    genes.swap(i, j);
    Ok(PermutationChromosome::from_genes(genes))
}

/// Replaces the character at `position` with one drawn uniformly from the
/// alphabet (possibly the same character).
pub fn random_reset_mutation(
    chromosome: &StringChromosome,
    position: usize,
    rng: &mut SeededRng,
    alphabet: &Alphabet,
) -> Result<StringChromosome> {
    if position >= chromosome.len() {
        return Err(GaError::domain(format!(
            "reset position {position} out of range for length {}",
            chromosome.len()
        )));
    }
    let mut genes = chromosome.genes().to_vec();
    genes[position] = alphabet.char_at(rng.index(alphabet.len()));
    Ok(StringChromosome::from_chars(genes))
}
