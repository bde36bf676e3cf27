use std::fs;
use std::path::Path;

use commitrep::evolution::{SWEEP_SCHEMA, TRAJECTORY_SCHEMA};
use commitrep::fixation::FIXATION_SCHEMA;
use commitrep::harness::{
    check_schema, reproduce_figures, run_config, ExperimentConfig, ExperimentKind, FigureScale,
    Manifest, COMPOSITIONS_SCHEMA, MEAN_TRAJECTORY_SCHEMA, REPUTATION_SUMMARY_SCHEMA,
};
use commitrep::reputation::REPUTATION_SCHEMA;
use commitrep::{Error, Regime};

fn small(kind: ExperimentKind, out: &Path) -> ExperimentConfig {
    ExperimentConfig {
        kind,
        benefits: vec![1.5, 5.5],
        turns: 2000,
        replicates: 2,
        rounds: 10_000,
        compositions: 3,
        out_dir: out.to_path_buf(),
        ..ExperimentConfig::default()
    }
}

fn data_lines(path: &Path) -> Vec<String> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(String::from)
        .collect()
}

#[test]
fn each_kind_writes_schema_tagged_csvs_and_a_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let expected = [
        (
            ExperimentKind::Evolve,
            vec![
                ("trajectories.csv", TRAJECTORY_SCHEMA),
                ("mean_trajectory.csv", MEAN_TRAJECTORY_SCHEMA),
            ],
        ),
        (ExperimentKind::Sweep, vec![("sweep.csv", SWEEP_SCHEMA)]),
        (
            ExperimentKind::Fixation,
            vec![("fixation.csv", FIXATION_SCHEMA)],
        ),
        (
            ExperimentKind::CompositionsSample,
            vec![("compositions.csv", COMPOSITIONS_SCHEMA)],
        ),
        (
            ExperimentKind::ReputationValidate,
            vec![
                ("reputation.csv", REPUTATION_SCHEMA),
                ("reputation_summary.csv", REPUTATION_SUMMARY_SCHEMA),
            ],
        ),
    ];
    for (kind, files) in expected {
        let out = dir.path().join(format!("{kind:?}"));
        let config = small(kind, &out);
        let result = run_config(&config).unwrap();
        for (name, schema) in files {
            check_schema(&out.join(name), schema).unwrap();
            assert!(result.files.contains(&out.join(name)));
        }
        let manifest = Manifest::load(&result.manifest).unwrap();
        assert_eq!(manifest.config, config);
        assert_eq!(manifest.seeds, vec![1, 2]);
        assert_eq!(manifest.version, env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn fixation_csv_covers_every_ordered_pair_per_scenario() {
    let dir = tempfile::tempdir().unwrap();
    run_config(&small(ExperimentKind::Fixation, dir.path())).unwrap();
    let lines = data_lines(&dir.path().join("fixation.csv"));
    assert!(lines[0].starts_with("invader,resident,rho"));
    assert_eq!(lines.len() - 1, 2 * 9 * 8);
}

#[test]
fn sweep_csv_has_one_row_per_grid_point() {
    let dir = tempfile::tempdir().unwrap();
    let config = ExperimentConfig {
        arrangement_costs: vec![0.5, 1.0, 1.5],
        regimes: vec![Regime::A2a, Regime::A2b],
        ..small(ExperimentKind::Sweep, dir.path())
    };
    run_config(&config).unwrap();
    let lines = data_lines(&dir.path().join("sweep.csv"));
    assert_eq!(
        lines[0],
        "epsilon,regime,b,c_a,mean_cooperation,replicates,seed_base"
    );
    assert_eq!(lines.len() - 1, 2 * 3 * 2);
}

#[test]
fn zero_turns_gives_only_the_initial_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let config = ExperimentConfig {
        turns: 0,
        benefits: vec![5.5],
        replicates: 1,
        ..small(ExperimentKind::Evolve, dir.path())
    };
    run_config(&config).unwrap();
    let lines = data_lines(&dir.path().join("trajectories.csv"));
    assert_eq!(lines.len(), 2);
    assert!(lines[1].contains(",0,0,0,0,0,100,0,0,0,0"), "{}", lines[1]);
}

#[test]
fn rerunning_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = small(ExperimentKind::ReputationValidate, dir.path());
    run_config(&config).unwrap();
    let first = fs::read(dir.path().join("reputation.csv")).unwrap();
    commitrep::harness::rerun_manifest(&dir.path().join("manifest.toml")).unwrap();
    assert_eq!(first, fs::read(dir.path().join("reputation.csv")).unwrap());
}

#[test]
fn invalid_config_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let config = ExperimentConfig {
        selection: -1.0,
        ..small(ExperimentKind::Evolve, dir.path())
    };
    assert_eq!(run_config(&config).unwrap_err().field(), Some("selection"));
    // nothing was written
    assert!(fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let config = small(ExperimentKind::Fixation, &blocker.join("sub"));
    assert!(matches!(run_config(&config), Err(Error::Io { .. })));
}

#[test]
fn schema_mismatch_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.csv");
    fs::write(&path, "# schema: commitrep/sweep/v0\nb\n").unwrap();
    let err = check_schema(&path, SWEEP_SCHEMA).unwrap_err();
    assert!(
        matches!(err, Error::SchemaMismatch { ref found, .. } if found == "commitrep/sweep/v0")
    );
}

#[test]
fn config_files_load_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.toml");
    fs::write(
        &path,
        "kind = \"fixation\"\nbenefits = [1.5, 9.5]\nindexing = \"invaders\"\n",
    )
    .unwrap();
    let c = ExperimentConfig::load(&path).unwrap();
    assert_eq!(c.kind, ExperimentKind::Fixation);
    assert_eq!(c.benefits, vec![1.5, 9.5]);
    fs::write(&path, "kind = \"nope\"\n").unwrap();
    assert_eq!(
        ExperimentConfig::load(&path).unwrap_err().kind(),
        "config_parse"
    );
}

#[test]
fn figures_reproduce_at_a_tiny_scale() {
    let dir = tempfile::tempdir().unwrap();
    let scale = FigureScale {
        grid_points: 2,
        sweep_replicates: 1,
        trajectory_replicates: 2,
        sampling_replicates: 1,
        compositions_per_scenario: 2,
        turns: 500,
        rounds: 2000,
    };
    let csvs = reproduce_figures(dir.path(), &scale).unwrap();
    assert_eq!(csvs.len(), 5);
    for csv in &csvs {
        assert!(csv.exists(), "{}", csv.display());
        assert!(fs::read_to_string(csv)
            .unwrap()
            .starts_with("# schema: commitrep/"));
    }
    // every figure-4 scenario is accounted for, observers or not
    let summary = data_lines(&dir.path().join("fig4/reputation_summary.csv"));
    assert_eq!(summary.len() - 1, 27);
    let without: usize = summary[1..]
        .iter()
        .map(|l| l.split(',').nth(6).unwrap().parse::<usize>().unwrap())
        .sum();
    // all-0- starts rarely hold an observer after 500 turns
    assert!(without > 0);
}
