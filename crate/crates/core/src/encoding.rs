//! Chromosome representations and their validity rules.
//!
//! A tour over `n` places is encoded as a permutation of the `n - 1`
//! non-home places; the home place (index 0, displayed as `P1`) is implicit
//! at both ends of the tour, so every permutation is a valid tour with no
//! repair step. String candidates are plain character sequences over a
//! declared alphabet.

use std::fmt;
use std::str::FromStr;

use crate::error::{GaError, PermutationError, PermutationViolation, Result};
use crate::rng::SeededRng;

/// Identifier of a place, 0-based. Index 0 is the fixed home place.
/// Rendered as `P1`..`Pn` to match the usual tabular notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaceId(usize);

impl PlaceId {
    pub const HOME: PlaceId = PlaceId(0);

    pub fn new(index: usize) -> Self {
        PlaceId(index)
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub fn is_home(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for PlaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0 + 1)
    }
}

impl FromStr for PlaceId {
    type Err = GaError;

    /// Parses the display form `P<k>` with `k >= 1`.
    fn from_str(s: &str) -> Result<Self> {
        let digits = s.strip_prefix('P').ok_or_else(|| {
            GaError::Parse(format!("place label `{s}` must look like P1, P2, ..."))
        })?;
        let k: usize = digits
            .parse()
            .map_err(|_| GaError::Parse(format!("place label `{s}` has a non-numeric index")))?;
        if k == 0 {
            return Err(GaError::Parse("place labels start at P1".into()));
        }
        Ok(PlaceId(k - 1))
    }
}

/// Ordering of the non-home places that defines a tour.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationChromosome {
    genes: Vec<PlaceId>,
}

impl PermutationChromosome {
    /// Wraps a gene sequence without validating it; run
    /// [`validate_permutation`] where validity is not known by construction.
    pub fn from_genes(genes: Vec<PlaceId>) -> Self {
        PermutationChromosome { genes }
    }

    /// Convenience constructor from 0-based place indices.
    pub fn from_indices(indices: &[usize]) -> Self {
        PermutationChromosome {
            genes: indices.iter().copied().map(PlaceId::new).collect(),
        }
    }

    pub fn genes(&self) -> &[PlaceId] {
        &self.genes
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    pub fn reversed(&self) -> Self {
        let mut genes = self.genes.clone();
        genes.reverse();
        PermutationChromosome { genes }
    }
}

impl fmt::Display for PermutationChromosome {
    /// Dash-joined gene labels, e.g. `P2-P3-P5-P4-P6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, gene) in self.genes.iter().enumerate() {
            if i > 0 {
                write!(f, "-")?;
            }
            write!(f, "{gene}")?;
        }
        Ok(())
    }
}

/// Character sequence candidate for the target-string problem.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StringChromosome {
    genes: Vec<char>,
}

impl StringChromosome {
    pub fn from_chars(genes: Vec<char>) -> Self {
        StringChromosome { genes }
    }

    pub fn from_text(text: &str) -> Self {
        StringChromosome {
            genes: text.chars().collect(),
        }
    }

    pub fn genes(&self) -> &[char] {
        &self.genes
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }
}

impl fmt::Display for StringChromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.genes {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Declared gene alphabet for string chromosomes. Duplicates are dropped,
/// first occurrence wins, order is preserved (draw indices map onto it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    chars: Vec<char>,
}

impl Alphabet {
    pub fn new(chars: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let chars: Vec<char> = chars.into_iter().filter(|c| seen.insert(*c)).collect();
        if chars.is_empty() {
            return Err(GaError::instance("alphabet must not be empty"));
        }
        Ok(Alphabet { chars })
    }

    /// The 95 printable 7-bit characters (space through `~`), the default
    /// alphabet for the string demo.
    pub fn printable_ascii() -> Self {
        Alphabet {
            chars: (0x20u8..=0x7e).map(char::from).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.chars.contains(&c)
    }

    pub fn char_at(&self, index: usize) -> char {
        self.chars[index]
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::printable_ascii()
    }
}

/// A chromosome plus its fitness once evaluated. Lower fitness is better.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual<C> {
    pub chromosome: C,
    fitness: Option<f64>,
}

impl<C> Individual<C> {
    pub fn new(chromosome: C) -> Self {
        Individual {
            chromosome,
            fitness: None,
        }
    }

    pub fn evaluated(chromosome: C, fitness: f64) -> Self {
        Individual {
            chromosome,
            fitness: Some(fitness),
        }
    }

    pub fn fitness(&self) -> Option<f64> {
        self.fitness
    }

    pub fn set_fitness(&mut self, fitness: f64) {
        self.fitness = Some(fitness);
    }
}

/// Fixed-size collection of individuals at one generation.
#[derive(Debug, Clone, PartialEq)]
pub struct Population<C> {
    members: Vec<Individual<C>>,
    generation: u32,
}

impl<C> Population<C> {
    pub fn new(members: Vec<Individual<C>>, generation: u32) -> Self {
        Population {
            members,
            generation,
        }
    }

    pub fn members(&self) -> &[Individual<C>] {
        &self.members
    }

    pub fn members_mut(&mut self) -> &mut [Individual<C>] {
        &mut self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn generation(&self) -> u32 {
        self.generation
    }
}

/// Draws a uniformly random tour chromosome over `place_count` places via an
/// unbiased shuffle of the non-home places.
pub fn random_permutation(
    place_count: usize,
    rng: &mut SeededRng,
) -> Result<PermutationChromosome> {
    if place_count < 2 {
        return Err(GaError::instance(format!(
            "a tour needs at least 2 places, got {place_count}"
        )));
    }
    let mut genes: Vec<PlaceId> = (1..place_count).map(PlaceId::new).collect();
    rng.shuffle(&mut genes);
    Ok(PermutationChromosome { genes })
}

/// Draws a random string chromosome of the given length, each position
/// uniform over the alphabet.
pub fn random_string(length: usize, alphabet: &Alphabet, rng: &mut SeededRng) -> StringChromosome {
    StringChromosome {
        genes: (0..length)
            .map(|_| alphabet.char_at(rng.index(alphabet.len())))
            .collect(),
    }
}

/// Checks the permutation invariants for `place_count` places: length
/// `place_count - 1`, home absent, every non-home place exactly once.
/// Collects all violations instead of stopping at the first.
pub fn validate_permutation(
    chromosome: &PermutationChromosome,
    place_count: usize,
) -> std::result::Result<(), PermutationError> {
    let expected = place_count.saturating_sub(1);
    let mut violations = Vec::new();

    if chromosome.len() != expected {
        violations.push(PermutationViolation::WrongLength {
            expected,
            actual: chromosome.len(),
        });
    }

    let mut counts = vec![0usize; place_count];
    for (position, gene) in chromosome.genes().iter().enumerate() {
        if gene.is_home() {
            violations.push(PermutationViolation::HomePresent { position });
        } else if gene.index() >= place_count {
            violations.push(PermutationViolation::OutOfRange {
                place: *gene,
                place_count,
            });
        } else {
            counts[gene.index()] += 1;
        }
    }
    for (index, &count) in counts.iter().enumerate().skip(1) {
        if count > 1 {
            violations.push(PermutationViolation::Duplicate {
                place: PlaceId::new(index),
            });
        } else if count == 0 {
            violations.push(PermutationViolation::Missing {
                place: PlaceId::new(index),
            });
        }
    }

    if violations.is_empty() {
        Ok(())
    } else {
        Err(PermutationError { violations })
    }
}

/// Expands a chromosome into the full home-anchored tour:
/// `[home, genes..., home]`, length `n + 1`.
pub fn tour_of(chromosome: &PermutationChromosome) -> Vec<PlaceId> {
    let mut tour = Vec::with_capacity(chromosome.len() + 2);
    tour.push(PlaceId::HOME);
    tour.extend_from_slice(chromosome.genes());
    tour.push(PlaceId::HOME);
    tour
}
