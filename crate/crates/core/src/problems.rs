//! Problem definitions: fitness functions and instance ingestion.
//!
//! Both problems score lower-is-better. The selection stage inverts fitness
//! (1/f) when building the wheel; the fitness functions themselves stay raw.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::encoding::{
    tour_of, validate_permutation, Alphabet, PermutationChromosome, PlaceId, StringChromosome,
};
use crate::error::{GaError, Result};

/// Symmetric nonnegative place-to-place distances with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    size: usize,
    entries: Vec<f64>, // row-major, size * size
}

impl DistanceMatrix {
    /// Builds a matrix from row-major entries, checking shape, symmetry,
    /// zero diagonal, and that every entry is finite and nonnegative.
    pub fn from_entries(size: usize, entries: Vec<f64>) -> Result<Self> {
        if size < 2 {
            return Err(GaError::instance(format!(
                "a distance matrix needs at least 2 places, got {size}"
            )));
        }
        if entries.len() != size * size {
            return Err(GaError::instance(format!(
                "expected {} entries for a {size}x{size} matrix, got {}",
                size * size,
                entries.len()
            )));
        }
        let matrix = DistanceMatrix { size, entries };
        for i in 0..size {
            if matrix.at(i, i) != 0.0 {
                return Err(GaError::instance(format!(
                    "diagonal entry ({i},{i}) must be zero"
                )));
            }
            for j in 0..size {
                let d = matrix.at(i, j);
                if !d.is_finite() || d < 0.0 {
                    return Err(GaError::instance(format!(
                        "distance ({i},{j}) = {d} must be finite and nonnegative"
                    )));
                }
                if matrix.at(i, j) != matrix.at(j, i) {
                    return Err(GaError::instance(format!(
                        "matrix is asymmetric at ({i},{j}): {} vs {}",
                        matrix.at(i, j),
                        matrix.at(j, i)
                    )));
                }
            }
        }
        Ok(matrix)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }

    pub fn distance(&self, from: PlaceId, to: PlaceId) -> f64 {
        self.at(from.index(), to.index())
    }

    /// Serializes the upper-triangle edge set back to the `From,To,Distance`
    /// CSV shape accepted by [`load_distance_edges`].
    pub fn to_edge_csv(&self) -> String {
        let mut out = String::from("From,To,Distance\n");
        for i in 0..self.size {
            for j in (i + 1)..self.size {
                let _ = writeln!(out, "P{},P{},{}", i + 1, j + 1, self.at(i, j));
            }
        }
        out
    }
}

/// Round-trip TSP instance: tours start and finish at the home place (P1).
#[derive(Debug, Clone, PartialEq)]
pub struct TspInstance {
    matrix: DistanceMatrix,
}

impl TspInstance {
    pub fn new(matrix: DistanceMatrix) -> Self {
        TspInstance { matrix }
    }

    pub fn matrix(&self) -> &DistanceMatrix {
        &self.matrix
    }

    pub fn place_count(&self) -> usize {
        self.matrix.size()
    }

    pub fn home(&self) -> PlaceId {
        PlaceId::HOME
    }
}

/// Target string to evolve towards, plus the alphabet candidates draw from.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetStringInstance {
    target: Vec<char>,
    alphabet: Alphabet,
}

impl TargetStringInstance {
    pub fn new(target: &str, alphabet: Alphabet) -> Result<Self> {
        let target: Vec<char> = target.chars().collect();
        if target.is_empty() {
            return Err(GaError::instance("target string must not be empty"));
        }
        if let Some(c) = target.iter().find(|c| !alphabet.contains(**c)) {
            return Err(GaError::instance(format!(
                "target character {c:?} is not in the alphabet"
            )));
        }
        Ok(TargetStringInstance { target, alphabet })
    }

    pub fn target(&self) -> &[char] {
        &self.target
    }

    pub fn target_text(&self) -> String {
        self.target.iter().collect()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn length(&self) -> usize {
        self.target.len()
    }

    /// Length and alphabet membership check for a candidate.
    pub fn validate_chromosome(&self, chromosome: &StringChromosome) -> Result<()> {
        if chromosome.len() != self.target.len() {
            return Err(GaError::domain(format!(
                "candidate length {} does not match target length {}",
                chromosome.len(),
                self.target.len()
            )));
        }
        if let Some(c) = chromosome
            .genes()
            .iter()
            .find(|c| !self.alphabet.contains(**c))
        {
            return Err(GaError::domain(format!(
                "candidate character {c:?} is not in the alphabet"
            )));
        }
        Ok(())
    }
}

/// Tour length of a chromosome: the sum of consecutive leg distances of the
/// home-anchored tour. Lower is better.
pub fn tsp_fitness(instance: &TspInstance, chromosome: &PermutationChromosome) -> Result<f64> {
    validate_permutation(chromosome, instance.place_count())?;
    let tour = tour_of(chromosome);
    Ok(tour
        .windows(2)
        .map(|leg| instance.matrix.distance(leg[0], leg[1]))
        .sum())
}

/// Hamming mismatch count between a candidate and the target. Lower is
/// better; zero means an exact match.
pub fn string_fitness(
    instance: &TargetStringInstance,
    chromosome: &StringChromosome,
) -> Result<usize> {
    if chromosome.len() != instance.target.len() {
        return Err(GaError::domain(format!(
            "candidate length {} does not match target length {}",
            chromosome.len(),
            instance.target.len()
        )));
    }
    Ok(chromosome
        .genes()
        .iter()
        .zip(&instance.target)
        .filter(|(a, b)| a != b)
        .count())
}

/// Loads a symmetric distance matrix from an edge-list CSV with columns
/// `From`, `To`, `Distance` and place labels `P1`..`Pn`. A leading serial
/// number column (or any other extra column) is ignored. The place count is
/// inferred from the largest label; every unordered pair must be covered
/// exactly once (consistent duplicates are tolerated, conflicts are not).
pub fn load_distance_edges(text: &str) -> Result<DistanceMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());

    let headers = reader
        .headers()
        .map_err(|e| GaError::Parse(format!("unreadable CSV header: {e}")))?
        .clone();
    let column = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or_else(|| GaError::Parse(format!("CSV header is missing a `{name}` column")))
    };
    let from_col = column("From")?;
    let to_col = column("To")?;
    let dist_col = column("Distance")?;

    let mut edges: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut max_index = 0usize;
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| GaError::Parse(format!("bad CSV record: {e}")))?;
        let field = |col: usize, name: &str| -> Result<&str> {
            record
                .get(col)
                .ok_or_else(|| GaError::Parse(format!("row {} is missing `{name}`", line + 2)))
        };
        let from: PlaceId = field(from_col, "From")?.parse()?;
        let to: PlaceId = field(to_col, "To")?.parse()?;
        let distance: f64 = field(dist_col, "Distance")?
            .parse()
            .map_err(|_| GaError::Parse(format!("row {}: distance is not a number", line + 2)))?;

        if from == to {
            return Err(GaError::instance(format!(
                "row {}: {from} to itself is not an edge",
                line + 2
            )));
        }
        if !distance.is_finite() || distance < 0.0 {
            return Err(GaError::instance(format!(
                "row {}: distance {distance} must be finite and nonnegative",
                line + 2
            )));
        }
        max_index = max_index.max(from.index()).max(to.index());

        let key = (from.index().min(to.index()), from.index().max(to.index()));
        match edges.insert(key, distance) {
            Some(previous) if previous != distance => {
                return Err(GaError::instance(format!(
                    "conflicting distances for P{}-P{}: {previous} vs {distance}",
                    key.0 + 1,
                    key.1 + 1
                )));
            }
            _ => {}
        }
    }

    if edges.is_empty() {
        return Err(GaError::instance("edge list contains no edges"));
    }
    let size = max_index + 1;
    let missing: Vec<String> = (0..size)
        .flat_map(|i| ((i + 1)..size).map(move |j| (i, j)))
        .filter(|key| !edges.contains_key(key))
        .map(|(i, j)| format!("P{}-P{}", i + 1, j + 1))
        .collect();
    if !missing.is_empty() {
        return Err(GaError::instance(format!(
            "incomplete edge list, missing distance for {}",
            missing.join(", ")
        )));
    }

    let mut entries = vec![0.0; size * size];
    for (&(i, j), &d) in &edges {
        entries[i * size + j] = d;
        entries[j * size + i] = d;
    }
    DistanceMatrix::from_entries(size, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::worked_example;

    fn chrom(indices: &[usize]) -> PermutationChromosome {
        PermutationChromosome::from_indices(indices)
    }

    #[test]
    fn tour_length_matches_hand_sums() {
        let instance = worked_example::instance();
        // 5+7+8+4+3+2 and 3+7+3+4+3+2 leg sums.
        assert_eq!(
            tsp_fitness(&instance, &chrom(&[1, 2, 4, 3, 5])).unwrap(),
            29.0
        );
        assert_eq!(
            tsp_fitness(&instance, &chrom(&[2, 1, 4, 3, 5])).unwrap(),
            22.0
        );
    }

    #[test]
    fn two_place_tour_is_out_and_back() {
        let matrix = DistanceMatrix::from_entries(2, vec![0.0, 7.5, 7.5, 0.0]).unwrap();
        let instance = TspInstance::new(matrix);
        assert_eq!(tsp_fitness(&instance, &chrom(&[1])).unwrap(), 15.0);
    }

    #[test]
    fn tsp_fitness_rejects_invalid_chromosomes() {
        let instance = worked_example::instance();
        assert!(matches!(
            tsp_fitness(&instance, &chrom(&[1, 1, 4, 3, 5])),
            Err(GaError::InvalidPermutation(_))
        ));
    }

    #[test]
    fn mismatch_count_is_positionwise() {
        let alphabet = Alphabet::printable_ascii();
        let ga = TargetStringInstance::new("GA", alphabet.clone()).unwrap();
        assert_eq!(
            string_fitness(&ga, &StringChromosome::from_text("GA")).unwrap(),
            0
        );

        let ab = TargetStringInstance::new("AB", alphabet.clone()).unwrap();
        assert_eq!(
            string_fitness(&ab, &StringChromosome::from_text("AC")).unwrap(),
            1
        );

        // Only index 3 ('L') coincides.
        let hello = TargetStringInstance::new("HELLO", alphabet).unwrap();
        assert_eq!(
            string_fitness(&hello, &StringChromosome::from_text("WORLD")).unwrap(),
            4
        );
    }

    #[test]
    fn string_fitness_rejects_length_mismatch() {
        let instance = TargetStringInstance::new("AB", Alphabet::printable_ascii()).unwrap();
        assert!(string_fitness(&instance, &StringChromosome::from_text("ABC")).is_err());
    }

    #[test]
    fn target_must_be_drawn_from_the_alphabet() {
        let narrow = Alphabet::new("AB".chars()).unwrap();
        assert!(TargetStringInstance::new("ABBA", narrow.clone()).is_ok());
        assert!(TargetStringInstance::new("ABC", narrow.clone()).is_err());
        assert!(TargetStringInstance::new("", narrow).is_err());
    }

    #[test]
    fn worked_example_edges_load_into_the_expected_matrix() {
        let matrix = load_distance_edges(worked_example::DISTANCE_CSV).unwrap();
        assert_eq!(matrix.size(), 6);
        let expected = [
            (0, 1, 5.0),
            (0, 2, 3.0),
            (0, 3, 4.0),
            (0, 4, 6.0),
            (0, 5, 2.0),
            (1, 2, 7.0),
            (1, 3, 4.0),
            (1, 4, 3.0),
            (1, 5, 5.0),
            (2, 3, 9.0),
            (2, 4, 8.0),
            (2, 5, 8.0),
            (3, 4, 4.0),
            (3, 5, 3.0),
            (4, 5, 6.0),
        ];
        for (i, j, d) in expected {
            assert_eq!(matrix.distance(PlaceId::new(i), PlaceId::new(j)), d);
            assert_eq!(matrix.distance(PlaceId::new(j), PlaceId::new(i)), d);
        }
        for i in 0..6 {
            assert_eq!(matrix.distance(PlaceId::new(i), PlaceId::new(i)), 0.0);
        }
    }

    #[test]
    fn single_edge_makes_a_two_place_matrix() {
        let matrix = load_distance_edges("From,To,Distance\nP1,P2,7\n").unwrap();
        assert_eq!(matrix.size(), 2);
        assert_eq!(matrix.distance(PlaceId::new(0), PlaceId::new(1)), 7.0);
    }

    #[test]
    fn decimal_distances_parse() {
        let matrix = load_distance_edges("From,To,Distance\nP1,P2,7.25\n").unwrap();
        assert_eq!(matrix.distance(PlaceId::new(0), PlaceId::new(1)), 7.25);
    }

    #[test]
    fn conflicting_duplicate_edges_are_rejected() {
        let err = load_distance_edges("From,To,Distance\nP1,P2,5\nP2,P1,6\n").unwrap_err();
        assert!(err.to_string().contains("conflicting"), "{err}");
        // A consistent duplicate is fine.
        load_distance_edges("From,To,Distance\nP1,P2,5\nP2,P1,5\n").unwrap();
    }

    #[test]
    fn missing_pair_is_named_in_the_error() {
        let err = load_distance_edges("From,To,Distance\nP1,P2,5\nP1,P3,4\n").unwrap_err();
        assert!(err.to_string().contains("P2-P3"), "{err}");
    }

    #[test]
    fn negative_distance_is_rejected() {
        assert!(load_distance_edges("From,To,Distance\nP1,P2,-1\n").is_err());
    }

    #[test]
    fn self_edge_is_rejected() {
        assert!(load_distance_edges("From,To,Distance\nP1,P1,0\nP1,P2,5\n").is_err());
    }

    #[test]
    fn edge_csv_round_trips() {
        let matrix = load_distance_edges(worked_example::DISTANCE_CSV).unwrap();
        let reloaded = load_distance_edges(&matrix.to_edge_csv()).unwrap();
        assert_eq!(matrix, reloaded);
    }
}
