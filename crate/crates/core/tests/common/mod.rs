use ga_engine::{DistanceMatrix, SeededRng, TspInstance};

/// Random symmetric instance with integer distances in [1, 50]. Integer
/// values keep every tour-length sum exact in f64, so oracle comparisons
/// are equality checks, not tolerance checks.
pub fn random_instance(place_count: usize, rng: &mut SeededRng) -> TspInstance {
    let mut entries = vec![0.0; place_count * place_count];
    for i in 0..place_count {
        for j in (i + 1)..place_count {
            let d = (rng.index(50) + 1) as f64;
            entries[i * place_count + j] = d;
            entries[j * place_count + i] = d;
        }
    }
    TspInstance::new(
        DistanceMatrix::from_entries(place_count, entries).expect("construction is valid"),
    )
}
