//! End-to-end harness runs and the files they emit.

use std::fs;

use netsampler_core::config::{DatasetEntry, OutputFormat, Property, RunConfig};
use netsampler_core::generate;
use netsampler_core::report::bundle_from_json;
use netsampler_core::{emit_report, run_experiment, run_on_graphs, save_edge_list, t_critical, Technique};

fn small_config(runs: usize) -> RunConfig {
    let mut config = RunConfig::new(Vec::new());
    config.runs = runs;
    config.master_seed = 99;
    config
}

fn read_dir_sorted(dir: &std::path::Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn same_master_seed_gives_byte_identical_reports() {
    let a = generate::barabasi_albert(300, 3, 1);
    let b = generate::gnp(200, 0.04, 2);
    let graphs = [("ba", &a), ("gnp", &b)];
    let config = small_config(5);
    let tmp = tempfile::tempdir().unwrap();
    let (d1, d2) = (tmp.path().join("one"), tmp.path().join("two"));
    let formats = [OutputFormat::Csv, OutputFormat::Json];
    emit_report(&run_on_graphs(&config, &graphs).unwrap(), &d1, &formats).unwrap();
    emit_report(&run_on_graphs(&config, &graphs).unwrap(), &d2, &formats).unwrap();
    let (f1, f2) = (read_dir_sorted(&d1), read_dir_sorted(&d2));
    assert_eq!(f1.len(), 1 + 2 * 4 + 1);
    assert_eq!(f1, f2);

    let mut other = config.clone();
    other.master_seed = 100;
    let changed = run_on_graphs(&other, &graphs).unwrap();
    let base = run_on_graphs(&config, &graphs).unwrap();
    assert_ne!(changed.rows, base.rows);
}

#[test]
fn single_technique_single_run_emits_four_rows() {
    let g = generate::gnp(60, 0.1, 4);
    let mut config = small_config(1);
    config.techniques = vec![Technique::Ffs];
    let bundle = run_on_graphs(&config, &[("net", &g)]).unwrap();
    assert_eq!(bundle.rows.len(), 4);
    let tmp = tempfile::tempdir().unwrap();
    let written = emit_report(&bundle, tmp.path(), &[OutputFormat::Csv]).unwrap();
    assert_eq!(written.len(), 1);
    let text = fs::read_to_string(tmp.path().join("rows.csv")).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert_eq!(
        text.lines().next().unwrap(),
        "network,technique,property,mean,std,residual,significant"
    );
    // One realization: std is zero and no residual exists.
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[4], "0");
        assert_eq!(fields[5], "");
        assert_eq!(fields[6], "false");
    }
}

#[test]
fn json_round_trip_preserves_the_bundle() {
    let g = generate::barabasi_albert(150, 2, 8);
    let mut config = small_config(3);
    config.induction_sweep = true;
    config.sweep_fractions = vec![0.5, 1.0];
    let bundle = run_on_graphs(&config, &[("ba", &g)]).unwrap();
    let tmp = tempfile::tempdir().unwrap();
    emit_report(&bundle, tmp.path(), &[OutputFormat::Json]).unwrap();
    let back = bundle_from_json(&fs::read_to_string(tmp.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(back, bundle);
    // Five induced techniques, two fractions, four properties.
    assert_eq!(bundle.sweep.len(), 5 * 2 * 4);
}

#[test]
fn csv_significance_matches_the_critical_value() {
    let nets = [
        generate::barabasi_albert(250, 2, 1),
        generate::gnp(250, 0.03, 2),
        generate::barabasi_albert(250, 4, 3),
    ];
    let graphs: Vec<(&str, &_)> = vec![("a", &nets[0]), ("b", &nets[1]), ("c", &nets[2])];
    let bundle = run_on_graphs(&small_config(4), &graphs).unwrap();
    let crit = t_critical(6, 0.05);
    assert!((crit - 2.4469).abs() < 5e-4);
    let tmp = tempfile::tempdir().unwrap();
    emit_report(&bundle, tmp.path(), &[OutputFormat::Csv]).unwrap();
    let text = fs::read_to_string(tmp.path().join("rows.csv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 3 * 8 * 4);
    for line in text.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let r: f64 = fields[5].parse().unwrap();
        assert_eq!(fields[6] == "true", r.abs() > crit, "{line}");
    }

    // Residual tables: one per property, 8 x 3 cells each.
    assert_eq!(bundle.residual_tables.len(), 4);
    for table in &bundle.residual_tables {
        assert_eq!(table.matrix.residuals.len(), 8);
        assert!(table.matrix.residuals.iter().all(|row| row.len() == 3));
    }
    // Summaries average the per-network residuals.
    assert_eq!(bundle.summaries.len(), 4 * 8);
    for s in &bundle.summaries {
        let table = bundle
            .residual_tables
            .iter()
            .find(|t| t.property == s.property)
            .unwrap();
        let i = table.matrix.techniques.iter().position(|t| *t == s.technique).unwrap();
        let row = &table.matrix.residuals[i];
        let mean = row.iter().sum::<f64>() / row.len() as f64;
        assert!((s.mean_residual.unwrap() - mean).abs() < 1e-12);
    }
}

#[test]
fn experiment_from_files_reports_bad_datasets_and_keeps_going() {
    let tmp = tempfile::tempdir().unwrap();
    let good = tmp.path().join("good.txt");
    save_edge_list(&generate::gnp(80, 0.08, 6), &good).unwrap();
    let bad = tmp.path().join("bad.txt");
    fs::write(&bad, "0 1\n1 2 3\n").unwrap();
    let entry = |name: &str, path: &std::path::Path, n| DatasetEntry {
        name: name.into(),
        path: path.into(),
        expected_n: n,
        expected_m: None,
    };
    let mut config = small_config(2);
    config.datasets = vec![
        entry("good", &good, Some(80)),
        entry("bad", &bad, None),
        entry("missing", &tmp.path().join("nope.txt"), None),
        entry("wrong-n", &good, Some(81)),
    ];
    config.properties = vec![Property::AvgDegree, Property::Density];
    let bundle = run_experiment(&config).unwrap();
    assert_eq!(bundle.networks.len(), 1);
    assert_eq!(bundle.rows.len(), 8 * 2);
    let failed: Vec<&str> = bundle.failures.iter().map(|f| f.name.as_str()).collect();
    assert_eq!(failed, ["bad", "missing", "wrong-n"]);
    assert!(bundle.failures[0].error.contains("line 2"));
}

#[test]
fn config_file_paths_resolve_against_its_directory() {
    let tmp = tempfile::tempdir().unwrap();
    save_edge_list(&generate::cycle(30), tmp.path().join("ring.txt")).unwrap();
    let path = tmp.path().join("run.toml");
    fs::write(
        &path,
        "runs = 2\nmaster_seed = 5\ntechniques = [\"RNS\", \"RWS\", \"FFI\"]\n\
         [[datasets]]\nname = \"ring\"\npath = \"ring.txt\"\nexpected_n = 30\nexpected_m = 30\n\
         [output]\ndir = \"out\"\nformats = [\"csv\"]\n",
    )
    .unwrap();
    let config = RunConfig::load(&path).unwrap();
    assert_eq!(config.output.dir, tmp.path().join("out"));
    let bundle = run_experiment(&config).unwrap();
    assert!(bundle.failures.is_empty());
    assert_eq!(bundle.rows.len(), 3 * 4);
    let written = emit_report(&bundle, &config.output.dir, &config.output.formats).unwrap();
    assert!(written.iter().all(|p| p.starts_with(tmp.path().join("out"))));
}

#[test]
fn unknown_config_keys_are_rejected() {
    let err = RunConfig::from_toml_str("runs = 2\nrunz = 3\n[[datasets]]\nname = \"a\"\npath = \"a\"\n").unwrap_err();
    assert!(err.to_string().contains("runz"));
}

#[test]
fn shipped_example_config_is_valid() {
    let text = include_str!("../../../configs/example.toml");
    let config = RunConfig::from_toml_str(text).unwrap();
    assert_eq!(config.techniques.len(), 8);
    assert_eq!(config.runs, 100);
}
