//! Behavior tests of the C surface, driven from Rust through the same
//! extern functions a foreign caller would use.

use std::ffi::{CStr, CString};
use std::ptr;

use ga_engine_ffi::*;

const EDGE_CSV: &str = "\
From,To,Distance
P1,P2,5
P1,P3,3
P1,P4,4
P1,P5,6
P1,P6,2
P2,P3,7
P2,P4,4
P2,P5,3
P2,P6,5
P3,P4,9
P3,P5,8
P3,P6,8
P4,P5,4
P4,P6,3
P5,P6,6
";

fn load_instance(csv: &str) -> *mut GaTspInstance {
    let csv = CString::new(csv).unwrap();
    let mut handle = ptr::null_mut();
    let status = unsafe { ga_tsp_instance_from_csv_text(csv.as_ptr(), &mut handle) };
    assert_eq!(status, GaStatus::Ok);
    assert!(!handle.is_null());
    handle
}

fn last_error() -> String {
    let mut buffer = vec![0i8; 512];
    let len = unsafe { ga_last_error_message(buffer.as_mut_ptr() as *mut _, buffer.len()) };
    let text = unsafe { CStr::from_ptr(buffer.as_ptr() as *const _) };
    let text = text.to_string_lossy().into_owned();
    assert!(len >= text.len());
    text
}

#[test]
fn version_is_a_static_string() {
    let version = unsafe { CStr::from_ptr(ga_version()) };
    assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn instance_loads_and_reports_its_size() {
    let instance = load_instance(EDGE_CSV);
    assert_eq!(unsafe { ga_tsp_instance_place_count(instance) }, 6);
    unsafe { ga_tsp_instance_free(instance) };
}

#[test]
fn malformed_csv_sets_a_readable_error() {
    let csv = CString::new("From,To,Distance\nP1,P2,5\nP1,P3,4\n").unwrap();
    let mut handle = ptr::null_mut();
    let status = unsafe { ga_tsp_instance_from_csv_text(csv.as_ptr(), &mut handle) };
    assert_eq!(status, GaStatus::InvalidInstance);
    assert!(handle.is_null());
    assert!(last_error().contains("P2-P3"), "{}", last_error());
}

#[test]
fn null_arguments_are_rejected() {
    let mut handle = ptr::null_mut();
    let status = unsafe { ga_tsp_instance_from_csv_text(ptr::null(), &mut handle) };
    assert_eq!(status, GaStatus::NullPointer);

    let csv = CString::new(EDGE_CSV).unwrap();
    let status = unsafe { ga_tsp_instance_from_csv_text(csv.as_ptr(), ptr::null_mut()) };
    assert_eq!(status, GaStatus::NullPointer);
}

#[test]
fn tsp_run_is_deterministic_and_bounded_by_the_oracle() {
    let instance = load_instance(EDGE_CSV);

    let mut length = 0.0;
    let mut count = 0u64;
    let mut tour = vec![0u32; 7];
    let mut written = 0usize;
    let status = unsafe {
        ga_oracle_solve(
            instance,
            &mut length,
            &mut count,
            tour.as_mut_ptr(),
            tour.len(),
            &mut written,
        )
    };
    assert_eq!(status, GaStatus::Ok);
    assert_eq!(length, 22.0);
    assert_eq!(count, 120);
    assert_eq!(written, 7);
    assert_eq!(tour[0], 0);
    assert_eq!(tour[6], 0);

    let options = ga_run_options_default();
    let mut first = ptr::null_mut();
    let mut second = ptr::null_mut();
    unsafe {
        assert_eq!(ga_tsp_run(instance, &options, &mut first), GaStatus::Ok);
        assert_eq!(ga_tsp_run(instance, &options, &mut second), GaStatus::Ok);

        let best = ga_run_result_best_fitness(first);
        assert!(best >= length);
        assert_eq!(best, ga_run_result_best_fitness(second));
        assert_eq!(
            ga_run_result_generations(first),
            ga_run_result_generations(second)
        );
        assert_eq!(
            ga_run_result_total_evaluations(first),
            ga_run_result_total_evaluations(second)
        );

        let mut best_tour = vec![0u32; 7];
        let mut needed = 0usize;
        assert_eq!(
            ga_run_result_best_tour(first, best_tour.as_mut_ptr(), best_tour.len(), &mut needed),
            GaStatus::Ok
        );
        assert_eq!(needed, 7);
        assert_eq!(best_tour[0], 0);
        assert_eq!(best_tour[6], 0);

        ga_run_result_free(first);
        ga_run_result_free(second);
        ga_tsp_instance_free(instance);
    }
}

#[test]
fn undersized_buffers_report_the_required_size() {
    let instance = load_instance(EDGE_CSV);
    let options = ga_run_options_default();
    let mut result = ptr::null_mut();
    unsafe {
        assert_eq!(ga_tsp_run(instance, &options, &mut result), GaStatus::Ok);

        let mut needed = 0usize;
        let status = ga_run_result_best_tour(result, ptr::null_mut(), 0, &mut needed);
        assert_eq!(status, GaStatus::BufferTooSmall);
        assert_eq!(needed, 7);

        let mut tiny = [0i8; 3];
        let mut required = 0usize;
        let status = ga_run_result_best_rendered(
            result,
            tiny.as_mut_ptr() as *mut _,
            tiny.len(),
            &mut required,
        );
        assert_eq!(status, GaStatus::BufferTooSmall);
        assert!(required > tiny.len());

        let mut buffer = vec![0i8; required];
        let status = ga_run_result_best_rendered(
            result,
            buffer.as_mut_ptr() as *mut _,
            buffer.len(),
            &mut required,
        );
        assert_eq!(status, GaStatus::Ok);
        let rendered = CStr::from_ptr(buffer.as_ptr() as *const _)
            .to_str()
            .unwrap();
        assert!(rendered.starts_with("P1-"));
        assert!(rendered.ends_with("-P1"));

        ga_run_result_free(result);
        ga_tsp_instance_free(instance);
    }
}

#[test]
fn oversized_oracle_requests_are_refused() {
    let mut csv = String::from("From,To,Distance\n");
    let n = 12;
    for i in 1..=n {
        for j in (i + 1)..=n {
            csv.push_str(&format!("P{i},P{j},1\n"));
        }
    }
    let instance = load_instance(&csv);
    let mut length = 0.0;
    let mut count = 0u64;
    let status = unsafe {
        ga_oracle_solve(
            instance,
            &mut length,
            &mut count,
            ptr::null_mut(),
            0,
            ptr::null_mut(),
        )
    };
    assert_eq!(status, GaStatus::InstanceTooLarge);
    unsafe { ga_tsp_instance_free(instance) };
}

#[test]
fn invalid_options_surface_as_config_errors() {
    let instance = load_instance(EDGE_CSV);
    let mut options = ga_run_options_default();
    options.crossover_rate = 1.5;
    let mut result = ptr::null_mut();
    let status = unsafe { ga_tsp_run(instance, &options, &mut result) };
    assert_eq!(status, GaStatus::InvalidConfig);
    assert!(last_error().contains("crossover.rate"), "{}", last_error());

    let mut options = ga_run_options_default();
    options.crossover_operator = GaCrossoverKind::SinglePoint;
    let status = unsafe { ga_tsp_run(instance, &options, &mut result) };
    assert_eq!(status, GaStatus::InvalidConfig);
    unsafe { ga_tsp_instance_free(instance) };
}

#[test]
fn string_runs_reach_forced_targets() {
    let target = CString::new("GAGA").unwrap();
    let alphabet = CString::new("GA").unwrap();
    let mut options = ga_run_options_default();
    options.population_size = 30;
    options.mutation_rate = 0.8;
    options.has_fitness_threshold = true;
    options.fitness_threshold = 0.0;
    options.max_generations = 500;

    let mut result = ptr::null_mut();
    let status =
        unsafe { ga_string_run(target.as_ptr(), alphabet.as_ptr(), &options, &mut result) };
    assert_eq!(status, GaStatus::Ok);
    unsafe {
        assert_eq!(ga_run_result_best_fitness(result), 0.0);
        assert_eq!(
            ga_run_result_termination(result),
            GaTerminationReason::FitnessThreshold
        );

        // A tour accessor on a string run is a type error, not a crash.
        let mut buffer = [0u32; 8];
        let status =
            ga_run_result_best_tour(result, buffer.as_mut_ptr(), buffer.len(), ptr::null_mut());
        assert_eq!(status, GaStatus::Unsupported);

        let mut rendered = vec![0i8; 16];
        let status = ga_run_result_best_rendered(
            result,
            rendered.as_mut_ptr() as *mut _,
            rendered.len(),
            ptr::null_mut(),
        );
        assert_eq!(status, GaStatus::Ok);
        assert_eq!(
            CStr::from_ptr(rendered.as_ptr() as *const _)
                .to_str()
                .unwrap(),
            "GAGA"
        );
        ga_run_result_free(result);
    }
}

#[test]
fn csv_file_loader_reads_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("edges.csv");
    std::fs::write(&path, EDGE_CSV).unwrap();

    let c_path = CString::new(path.to_str().unwrap()).unwrap();
    let mut handle = ptr::null_mut();
    let status = unsafe { ga_tsp_instance_from_csv_file(c_path.as_ptr(), &mut handle) };
    assert_eq!(status, GaStatus::Ok);
    assert_eq!(unsafe { ga_tsp_instance_place_count(handle) }, 6);
    unsafe { ga_tsp_instance_free(handle) };

    let missing = CString::new("/nonexistent/edges.csv").unwrap();
    let status = unsafe { ga_tsp_instance_from_csv_file(missing.as_ptr(), &mut handle) };
    assert_eq!(status, GaStatus::IoError);
}
