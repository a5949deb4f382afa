use std::fs;
use std::path::Path;
use std::process::Command;

use whiplash::harness::{
    self, compare, parse_config, parse_config_with_overrides, run, run_and_write, step_size_sweep, HarnessError,
    RunConfig, SUMMARY_HEADER,
};
use whiplash::optim::Verdict;

const BIN: &str = env!("CARGO_BIN_EXE_whiplash-bench");

fn discrete(method: &str, extra: &str) -> RunConfig {
    parse_config(&format!(
        "function = rosenbrock\nmethod = {method}\nstep_size = 1e-5\nmax_iters = 2000\nx0 = [5, -3]\n{extra}"
    ))
    .unwrap()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<csv::StringRecord>) {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    let header = rdr.headers().unwrap().iter().map(String::from).collect();
    let rows = rdr.records().collect::<Result<Vec<_>, _>>().unwrap();
    (header, rows)
}

fn expected_rows(steps: usize, stride: usize) -> usize {
    steps / stride + 1 + usize::from(!steps.is_multiple_of(stride))
}

#[test]
fn run_writes_trace_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = discrete("whiplash", "id = w\nrecord_stride = 300\n");
    let outcome = run_and_write(&cfg, dir.path()).unwrap();
    assert_eq!(outcome.summary.iterations, 2000);

    let (header, rows) = read_csv(&dir.path().join("w_trace.csv"));
    assert_eq!(header.join(","), "k,x0,x1,z0,z1,f,grad_norm,alpha");
    assert_eq!(rows.len(), expected_rows(2000, 300));
    assert_eq!(&rows.last().unwrap()[0], "2000");
    // Round-trip exact floats.
    let last_x0: f64 = rows.last().unwrap()[1].parse().unwrap();
    let harness::Trace::Discrete(r) = &outcome.trace else { panic!("discrete run") };
    assert_eq!(last_x0, r.final_x[0]);

    let (header, rows) = read_csv(&dir.path().join("w_summary.csv"));
    assert_eq!(header.join(","), SUMMARY_HEADER);
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][8], "budget_exhausted");
}

#[test]
fn continuous_trace_row_count_follows_horizon_and_stride() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = parse_config(
        "id = c\nfunction = rosenbrock\nmethod = whiplash\nstep_size = 1e-3\nt_end = 2.5\nx0 = [2, 2]\nv0 = [0, 0]\nrecord_stride = 40\n",
    )
    .unwrap();
    let outcome = run_and_write(&cfg, dir.path()).unwrap();
    assert_eq!(outcome.summary.iterations, 2500);
    let (header, rows) = read_csv(&dir.path().join("c_trace.csv"));
    assert_eq!(header.join(","), "t,x0,x1,v0,v1,f,gamma,W");
    assert_eq!(rows.len(), expected_rows(2500, 40));
}

#[test]
fn overrides_take_precedence_over_the_file() {
    let src = "function = rosenbrock\nmethod = gd\nstep_size = 1e-5\nmax_iters = 10\nx0 = [0, 0]\n";
    let cfg = parse_config_with_overrides(src, &["method=heavyball".into(), "method.params.beta=0.5".into()]).unwrap();
    assert_eq!(cfg.method_name(), "heavyball");
}

#[test]
fn compare_ranks_by_final_value() {
    let cfgs: Vec<RunConfig> = ["gd", "whiplash", "adam", "heavyball", "nesterov"]
        .iter()
        .map(|m| discrete(m, &format!("id = {m}\n")))
        .collect();
    let cmp = compare(&cfgs).unwrap();
    let ids: Vec<&str> = cmp.outcomes.iter().map(|o| o.summary.id.as_str()).collect();
    assert_eq!(ids, ["gd", "whiplash", "adam", "heavyball", "nesterov"]);
    let ranked: Vec<f64> = cmp.ranked().map(|o| o.summary.final_f).collect();
    assert!(ranked.windows(2).all(|w| w[0] <= w[1]));

    let table = cmp.table_csv();
    assert!(table.starts_with(&format!("rank,{SUMMARY_HEADER}\n")));
    assert_eq!(table.lines().count(), 6);
    let curves = cmp.curves_csv();
    assert_eq!(curves.lines().next().unwrap(), "k,gd,whiplash,adam,heavyball,nesterov");
    assert_eq!(curves.lines().count(), 1 + expected_rows(2000, 100));
}

#[test]
fn compare_ties_are_broken_by_method_name() {
    // Every method stays put at the minimizer, so all final values are 0.
    let cfgs: Vec<RunConfig> = ["whiplash", "adam", "gd"]
        .iter()
        .map(|m| {
            parse_config(&format!(
                "id = {m}\nfunction = rosenbrock\nmethod = {m}\nstep_size = 1e-5\nmax_iters = 5\nx0 = [1, 1]\n"
            ))
            .unwrap()
        })
        .collect();
    let cmp = compare(&cfgs).unwrap();
    let order: Vec<&str> = cmp.ranked().map(|o| o.summary.method.as_str()).collect();
    assert_eq!(order, ["adam", "gd", "whiplash"]);
}

#[test]
fn compare_single_config_gives_one_row() {
    let cmp = compare(&[discrete("gd", "")]).unwrap();
    assert_eq!(cmp.table_csv().lines().count(), 2);
}

#[test]
fn compare_rejects_mismatched_problems() {
    let a = discrete("gd", "");
    let b = discrete("whiplash", "x0 = [0, 0]\n");
    assert!(matches!(compare(&[a.clone(), b]), Err(HarnessError::Validation(_))));
    let c = parse_config("function = sphere\nmethod = gd\nstep_size = 1e-5\nmax_iters = 10\nx0 = [5, -3]\n").unwrap();
    assert!(matches!(compare(&[a, c]), Err(HarnessError::Validation(_))));
    assert!(compare(&[]).is_err());
}

#[test]
fn compare_on_identity_quadratic_matches_closed_form_gd() {
    let (s, n) = (0.01, 3000);
    let cfgs: Vec<RunConfig> = ["whiplash", "gd", "nesterov", "heavyball", "adam"]
        .iter()
        .map(|m| {
            parse_config(&format!(
                "id = {m}\nfunction = quadratic:1,1\nmethod = {m}\nstep_size = {s}\nmax_iters = {n}\nx0 = [1, -2]\n"
            ))
            .unwrap()
        })
        .collect();
    let cmp = compare(&cfgs).unwrap();
    for o in &cmp.outcomes {
        assert!(o.summary.final_dist.unwrap() < 1e-3, "{}: {:?}", o.summary.id, o.summary.final_dist);
    }
    let gd = &cmp.outcomes[1].summary;
    let f0 = 0.5 * (1.0 + 4.0);
    let closed = (1.0f64 - s).powi(2 * n) * f0;
    assert!((gd.final_f - closed).abs() <= 1e-10 * closed, "{} vs {closed}", gd.final_f);
}

#[test]
fn sweep_finds_the_step_size_cliff() {
    let base = parse_config(
        "id = sw\nfunction = rosenbrock\nmethod = whiplash\nstep_size = 1e-5\nmax_iters = 200000\nx0 = [12, 3]\nstop.dist_tol = 1e-2\n",
    )
    .unwrap();
    let sweep = step_size_sweep(&base, &[1e-4, 1e-5, 1e-6]).unwrap();
    let verdicts: Vec<Verdict> = sweep.rows.iter().map(|r| r.verdict).collect();
    assert_eq!(verdicts, [Verdict::Diverged, Verdict::ConvergedDist, Verdict::ConvergedDist]);
    assert_eq!(sweep.largest_stable, Some(1e-5));

    let single = step_size_sweep(&base, &[1e-5]).unwrap();
    assert_eq!(single.rows.len(), 1);
    assert!(step_size_sweep(&base, &[]).is_err());
}

#[test]
fn sweep_flips_at_the_gradient_descent_stability_bound() {
    // 2 / lambda_max = 0.02 for diag(1, 100).
    let base = parse_config("function = quadratic:1,100\nmethod = gd\nstep_size = 0.01\nmax_iters = 10000\nx0 = [1, 1]\n")
        .unwrap();
    let sweep = step_size_sweep(&base, &[0.0199, 0.0201]).unwrap();
    assert_ne!(sweep.rows[0].verdict, Verdict::Diverged);
    assert_eq!(sweep.rows[1].verdict, Verdict::Diverged);
    assert_eq!(sweep.largest_stable, Some(0.0199));
}

#[test]
fn sweep_rejects_continuous_configs() {
    let cfg = parse_config("preset = fig6a\n").unwrap();
    assert!(matches!(step_size_sweep(&cfg, &[1e-3]), Err(HarnessError::Validation(_))));
}

#[test]
fn fig5_trace_has_a_populated_damping_column() {
    let dir = tempfile::tempdir().unwrap();
    let out = harness::run_preset("fig5", dir.path()).unwrap();
    assert_eq!(out.outcomes.len(), 1);
    let (header, rows) = read_csv(&dir.path().join("fig5_trace.csv"));
    let gamma = header.iter().position(|h| h == "gamma").unwrap();
    for row in &rows {
        let g: f64 = row[gamma].parse().unwrap();
        assert!(g >= 1.0);
    }
}

#[test]
fn fig7_all_writes_four_traces() {
    let dir = tempfile::tempdir().unwrap();
    let out = harness::run_preset("fig7_all", dir.path()).unwrap();
    assert_eq!(out.outcomes.len(), 4);
    for tag in ["a", "b", "c", "d"] {
        let (_, rows) = read_csv(&dir.path().join(format!("fig7{tag}_trace.csv")));
        assert_eq!(rows.len(), expected_rows(20000, 100));
    }
}

#[test]
fn identical_configs_give_identical_bytes() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    harness::run_preset("fig2", a.path()).unwrap();
    harness::run_preset("fig2", b.path()).unwrap();
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 12);
    for n in names {
        assert_eq!(fs::read(a.path().join(&n)).unwrap(), fs::read(b.path().join(&n)).unwrap(), "{n:?}");
    }
}

#[test]
fn run_summary_reports_distance_for_known_minimizers() {
    let r = run(&discrete("whiplash", "")).unwrap();
    assert!(r.summary.final_dist.is_some());
    let r = run(&parse_config("function = sphere:3\nmethod = gd\nstep_size = 0.1\nmax_iters = 10\nx0 = [1, 1, 1]\n").unwrap())
        .unwrap();
    assert!(r.summary.final_dist.unwrap() < 1.0);
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn cli_run_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    fs::write(
        &cfg,
        "# whiplash from the origin\nid = exp\nfunction = rosenbrock\nmethod = whiplash\nstep_size = 1e-5\nmax_iters = 20000\nx0 = [0, 0]\nstop.dist_tol = 1e-2\n",
    )
    .unwrap();
    let out = dir.path().to_str().unwrap();
    let cfg = cfg.to_str().unwrap();

    let (code, stdout, _) = cli(&["run", "--config", cfg, "--out", out]);
    assert_eq!(code, 0);
    assert!(stdout.contains("converged_dist"));
    assert!(dir.path().join("exp_trace.csv").exists());

    let (code, _, _) = cli(&["run", "--config", cfg, "--out", out, "--set", "step_size=1e-3", "--set", "x0=[12,3]"]);
    assert_eq!(code, 3);

    let (code, _, stderr) = cli(&["run", "--config", cfg, "--set", "step_size=-1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("step_size"), "{stderr}");

    let (code, _, stderr) = cli(&["run", "--config", cfg, "--set", "bogus.key=1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("bogus.key"), "{stderr}");

    let missing = dir.path().join("missing.cfg");
    let (code, _, _) = cli(&["run", "--config", missing.to_str().unwrap()]);
    assert_eq!(code, 4);

    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let (code, _, _) = cli(&["run", "--config", cfg, "--out", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(code, 4);
}

#[test]
fn cli_compare_and_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cmp.cfg");
    fs::write(
        &cfg,
        "id = cmp\nfunction = rosenbrock\nmethod = heavyball\nmethod.params.beta = 0.5\nstep_size = 1e-5\nmax_iters = 3000\nx0 = [5, -3]\n",
    )
    .unwrap();
    let (out, cfg) = (dir.path().to_str().unwrap(), cfg.to_str().unwrap());
    let (code, stdout, stderr) = cli(&["compare", "--config", cfg, "--methods", "whiplash,gd,heavyball", "--out", out]);
    assert_eq!(code, 0, "{stderr}");
    assert_eq!(stdout.lines().count(), 4, "{stdout}");
    for f in ["cmp_compare.csv", "cmp_curves.csv", "cmp_gd_trace.csv", "cmp_heavyball_summary.csv"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }

    let (code, stdout, _) = cli(&["sweep", "--config", cfg, "--sizes", "1e-3,1e-5", "--out", out, "--set", "method=whiplash", "--set", "x0=[12,3]"]);
    assert_eq!(code, 2, "method.params.beta is not a whiplash parameter\n{stdout}");
    fs::write(
        dir.path().join("sw.cfg"),
        "id = sw\nfunction = rosenbrock\nmethod = whiplash\nstep_size = 1e-5\nmax_iters = 20000\nx0 = [12, 3]\n",
    )
    .unwrap();
    let sw = dir.path().join("sw.cfg");
    let (code, stdout, _) = cli(&["sweep", "--config", sw.to_str().unwrap(), "--sizes", "1e-4,1e-5", "--out", out]);
    assert_eq!(code, 0);
    assert!(stdout.contains("largest non-diverging step size: 1e-5"), "{stdout}");
    let (header, rows) = read_csv(&dir.path().join("sw_sweep.csv"));
    assert_eq!(header.join(","), harness::SWEEP_HEADER);
    assert_eq!(rows.len(), 2);
    let (code, _, _) = cli(&["sweep", "--config", sw.to_str().unwrap(), "--sizes", "1e-3", "--out", out]);
    assert_eq!(code, 3);
}

#[test]
fn cli_preset_unknown_name_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, stderr) = cli(&["preset", "fig99", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("fig99"));
}
