//! Acceptance gate: one test per criterion, each ending in a single
//! `[PASS]`/`[FAIL]` line (run with `-- --nocapture` to see the lines for
//! passing criteria; failing ones always surface theirs).

use std::process::{Command, Output};
use std::time::Instant;

use seqseg::evaluate::{self, EvalConfig, EvalSolver};
use seqseg::io;

use seqseg_core::{
    builtin_design, kl_divergence, replicate_seed, scores_tied, simulate::simulate,
    solve_bruteforce, solve_dp, solve_hierarchical, Alignment, BlockModel, IntervalRef,
    IntervalScorer, PenaltyConfig, PenaltyFamily, SimulationDesign,
};

// ---------------------------------------------------------------- plumbing

fn verdict(criterion: usize, pass: bool, detail: &str) {
    let tag = if pass { "[PASS]" } else { "[FAIL]" };
    println!("{tag} criterion {criterion}: {detail}");
    assert!(pass, "{tag} criterion {criterion}: {detail}");
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_seqseg")
}

fn run_cli(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary launches")
}

/// SplitMix64: a tiny deterministic generator for test instances.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

const LABELS: [&str; 3] = ["a", "b", "c"];
const FAMILIES: [PenaltyFamily; 3] = [
    PenaltyFamily::Theoretical,
    PenaltyFamily::Empirical,
    PenaltyFamily::EmpiricalFloored,
];
const C_GRID: [f64; 4] = [1.0, 0.5, 0.1, 0.05];

/// Random alignment with m in 2..=10, n in 2..=50, declared per-column
/// alphabets of size 2..=3. With `diverse`, the first two rows are forced
/// to differ in every column so every column shows at least two symbols.
fn random_alignment(rng: &mut Rng, diverse: bool) -> Alignment {
    let m = 2 + rng.below(9);
    let n = 2 + rng.below(49);
    let sizes: Vec<usize> = (0..m).map(|_| 2 + rng.below(2)).collect();
    let mut data = vec![0u16; n * m];
    for r in 0..n {
        for c in 0..m {
            data[r * m + c] = rng.below(sizes[c]) as u16;
        }
    }
    if diverse {
        for c in 0..m {
            data[c] = 0;
            data[m + c] = 1;
        }
    }
    let alphabets: Vec<Vec<String>> = sizes
        .iter()
        .map(|&k| LABELS[..k].iter().map(|s| s.to_string()).collect())
        .collect();
    Alignment::from_codes(n, data, alphabets).unwrap()
}

/// Random interval of width >= 2 plus an interior split position.
fn random_split(rng: &mut Rng, m: usize) -> (IntervalRef, usize) {
    let lo = 1 + rng.below(m - 1);
    let hi = lo + 1 + rng.below(m - lo);
    let s = lo + rng.below(hi - lo);
    (IntervalRef::new(lo, hi).unwrap(), s)
}

// --------------------------------------------------------------- criteria

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = Rng(0xC1);
    let mut checked = 0usize;
    let mut first_bad = None;
    for i in 0..200 {
        let a = random_alignment(&mut rng, false);
        for family in FAMILIES {
            for c in C_GRID {
                let scorer =
                    IntervalScorer::new(&a, PenaltyConfig::new(family, c).unwrap());
                let dp = solve_dp(&scorer);
                let brute = solve_bruteforce(&scorer, 20).unwrap();
                checked += 1;
                if dp.cuts() != brute.cuts() && first_bad.is_none() {
                    first_bad = Some(format!(
                        "instance {i} ({}x{}, {family:?}, c={c}): dp {:?} vs brute {:?}",
                        a.rows(),
                        a.cols(),
                        dp.cuts(),
                        brute.cuts()
                    ));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let detail = match &first_bad {
        None => format!(
            "dp equals brute force on {checked} (instance, penalty) runs in {secs:.1}s (< 30s)"
        ),
        Some(bad) => format!("dp diverged from brute force: {bad}"),
    };
    verdict(1, first_bad.is_none() && secs < 30.0, &detail);
}

/// Recovery-rate table for one design over n in {100, 5000}.
fn recovery_rates(design: &str, seed: u64) -> evaluate::EvalReport {
    let blocks = builtin_design(design).unwrap();
    let config = EvalConfig {
        design: design.to_string(),
        n_grid: vec![100, 5000],
        c_grid: C_GRID.to_vec(),
        replicates: 100,
        solver: EvalSolver::Dp,
        family: PenaltyFamily::Theoretical,
        seed,
        timing: false,
    };
    evaluate::run(&config, &blocks).unwrap()
}

/// Checks the criterion 2/4 recovery properties and prints the rate table.
fn recovery_verdict(criterion: usize, design: &str) {
    let start = Instant::now();
    let report = recovery_rates(design, 1);
    let rate = |n: usize, c: f64| {
        report
            .rates
            .iter()
            .find(|r| r.n == n && r.c == c)
            .map(|r| r.recovery_rate)
            .unwrap()
    };
    for &c in &C_GRID {
        println!(
            "  {design} c={c}: rate(n=100) = {:.4}, rate(n=5000) = {:.4}",
            rate(100, c),
            rate(5000, c)
        );
    }
    let high: Vec<f64> = C_GRID
        .iter()
        .copied()
        .filter(|&c| rate(5000, c) >= 0.95)
        .collect();
    let backward: Vec<f64> = C_GRID
        .iter()
        .copied()
        .filter(|&c| rate(5000, c) < rate(100, c))
        .collect();
    let secs = start.elapsed().as_secs_f64();
    let detail = format!(
        "{design}: rate(5000) >= 0.95 at c in {high:?}; c with rate(5000) < rate(100): {backward:?}; {secs:.0}s (< 120s)"
    );
    verdict(
        criterion,
        !high.is_empty() && backward.is_empty() && secs < 120.0,
        &detail,
    );
}

#[test]
fn criterion_2_binary_recovery_rates() {
    recovery_verdict(2, "paper-binary");
}

#[test]
fn criterion_3_hierarchical_convergence() {
    let blocks = builtin_design("paper-binary").unwrap();
    const REPS: usize = 100;
    let mut recover = [0usize; 4];
    let mut agree = [0usize; 4];
    let mut inadmissible = None;
    for rep in 0..REPS {
        let design =
            SimulationDesign::new(5000, blocks.clone(), replicate_seed(1, rep as u64))
                .unwrap();
        let (align, truth) = simulate(&design);
        for (ci, &c) in C_GRID.iter().enumerate() {
            let scorer = IntervalScorer::new(
                &align,
                PenaltyConfig::new(PenaltyFamily::Theoretical, c).unwrap(),
            );
            let dp = solve_dp(&scorer);
            let hier = solve_hierarchical(&scorer);
            if dp.cuts() == truth.as_slice() {
                recover[ci] += 1;
            }
            if hier.cuts() == dp.cuts() {
                agree[ci] += 1;
            }
            if hier.score() > dp.score() && !scores_tied(hier.score(), dp.score()) {
                inadmissible = Some(format!(
                    "rep {rep} c={c}: hier {} > dp {}",
                    hier.score(),
                    dp.score()
                ));
            }
        }
    }
    // Admissibility must hold on arbitrary instances too, not just the design.
    let mut rng = Rng(0xC3);
    for i in 0..200 {
        let a = random_alignment(&mut rng, false);
        for family in FAMILIES {
            for c in C_GRID {
                let scorer =
                    IntervalScorer::new(&a, PenaltyConfig::new(family, c).unwrap());
                let dp = solve_dp(&scorer);
                let hier = solve_hierarchical(&scorer);
                if hier.score() > dp.score() && !scores_tied(hier.score(), dp.score()) {
                    inadmissible = Some(format!(
                        "random instance {i} ({family:?}, c={c}): hier {} > dp {}",
                        hier.score(),
                        dp.score()
                    ));
                }
            }
        }
    }
    // Smallest penalty scale whose n=5000 recovery rate clears 0.95.
    let star = C_GRID
        .iter()
        .enumerate()
        .rev()
        .find(|&(ci, _)| recover[ci] >= 95);
    let detail = match (star, &inadmissible) {
        (Some((ci, &c)), None) => {
            let ok = agree[ci] >= 90;
            let d = format!(
                "at c={c} (smallest with dp rate {}/100 >= 95), hier matched dp {}/100 (>= 90); hier objective never above dp",
                recover[ci], agree[ci]
            );
            verdict(3, ok, &d);
            return;
        }
        (None, _) => format!("no c in {C_GRID:?} reached 95/100 dp recovery at n=5000"),
        (_, Some(bad)) => format!("hier objective exceeded dp: {bad}"),
    };
    verdict(3, false, &detail);
}

#[test]
fn criterion_4_ternary_recovery_rates() {
    recovery_verdict(4, "paper-ternary");
}

#[test]
fn criterion_5_invariant_suites() {
    let mut rng = Rng(0xC5);
    let mut failures: Vec<String> = Vec::new();
    let mut note = |cond: bool, msg: String| {
        if !cond && failures.len() < 5 {
            failures.push(msg);
        }
    };

    // Q <= 0, and Q(I) >= Q(I1) + Q(I2) within 1e-9 relative, on 1000 pairs.
    for i in 0..1000 {
        let a = random_alignment(&mut rng, false);
        let scorer = IntervalScorer::new(&a, PenaltyConfig::default());
        let (iv, s) = random_split(&mut rng, a.cols());
        let q = scorer.block_loglik(iv).unwrap();
        let q1 = scorer
            .block_loglik(IntervalRef::new(iv.lo, s).unwrap())
            .unwrap();
        let q2 = scorer
            .block_loglik(IntervalRef::new(s + 1, iv.hi).unwrap())
            .unwrap();
        note(q <= 1e-12, format!("pair {i}: Q = {q} > 0"));
        let tol = 1e-9 * q.abs().max((q1 + q2).abs()).max(1.0);
        note(
            q >= q1 + q2 - tol,
            format!("pair {i}: Q({iv}) = {q} < {q1} + {q2}"),
        );
    }

    // (A1): splitting strictly lowers the penalty, 1000 splits per family.
    // Diverse instances keep every column at two observed symbols or more,
    // which the floored family needs for strictness.
    for i in 0..1000 {
        let a = random_alignment(&mut rng, true);
        let (iv, s) = random_split(&mut rng, a.cols());
        for family in [PenaltyFamily::Theoretical, PenaltyFamily::EmpiricalFloored] {
            let scorer =
                IntervalScorer::new(&a, PenaltyConfig::new(family, 1.0).unwrap());
            let p = scorer.penalty(iv).unwrap();
            let p1 = scorer.penalty(IntervalRef::new(iv.lo, s).unwrap()).unwrap();
            let p2 = scorer
                .penalty(IntervalRef::new(s + 1, iv.hi).unwrap())
                .unwrap();
            note(
                p > p1 + p2,
                format!("split {i} ({family:?}): p({iv}) = {p} vs {p1} + {p2}"),
            );
        }
    }

    // Row order never changes a score.
    for i in 0..200 {
        let a = random_alignment(&mut rng, false);
        let (n, m) = (a.rows(), a.cols());
        let mut perm: Vec<usize> = (0..n).collect();
        for r in (1..n).rev() {
            perm.swap(r, rng.below(r + 1));
        }
        let mut data = vec![0u16; n * m];
        for (r_new, &r_old) in perm.iter().enumerate() {
            for c in 0..m {
                data[r_new * m + c] = a.code(r_old, c);
            }
        }
        let alphabets: Vec<Vec<String>> = (0..m).map(|c| a.alphabet(c).to_vec()).collect();
        let b = Alignment::from_codes(n, data, alphabets).unwrap();
        for family in FAMILIES {
            let config = PenaltyConfig::new(family, 0.5).unwrap();
            let sa = IntervalScorer::new(&a, config);
            let sb = IntervalScorer::new(&b, config);
            let (iv, _) = random_split(&mut rng, m);
            let (qa, qb) = (sa.block_loglik(iv).unwrap(), sb.block_loglik(iv).unwrap());
            note(
                (qa - qb).abs() <= 1e-12 * qa.abs().max(1.0),
                format!("perm {i} ({family:?}): Q {qa} vs {qb}"),
            );
            note(
                sa.penalty(iv).unwrap() == sb.penalty(iv).unwrap(),
                format!("perm {i} ({family:?}): penalties differ"),
            );
        }
    }

    // KL divergence: non-negative, zero exactly on equal tables.
    for i in 0..500 {
        let k = 2 + rng.below(4);
        let draw = |rng: &mut Rng| -> Vec<f64> {
            let counts: Vec<u64> = (0..k).map(|_| 1 + rng.below(50) as u64).collect();
            let total: u64 = counts.iter().sum();
            counts.iter().map(|&x| x as f64 / total as f64).collect()
        };
        let p = draw(&mut rng);
        let q = draw(&mut rng);
        let d = kl_divergence(&p, &q).unwrap();
        note(d >= 0.0, format!("kl {i}: D = {d} < 0"));
        if p != q {
            note(d > 0.0, format!("kl {i}: D = 0 on unequal tables"));
        }
        note(
            kl_divergence(&p, &p).unwrap() == 0.0,
            format!("kl {i}: D(p, p) != 0"),
        );
    }

    let detail = if failures.is_empty() {
        "Q <= 0, Q superadditive (1000 pairs), (A1) strict for Theoretical and \
         EmpiricalFloored (1000 splits), row-permutation invariance, KL >= 0 with \
         equality iff equal"
            .to_string()
    } else {
        failures.join("; ")
    };
    verdict(5, failures.is_empty(), &detail);
}

#[test]
fn criterion_6_wide_alignment_cli_performance() {
    // A 21 x 326 sample: thirteen sticky six-state chains whose drift rate
    // varies block to block, echoing a protein-sized alignment.
    let lens: [usize; 13] = [30, 22, 18, 34, 26, 20, 31, 25, 17, 33, 24, 19, 27];
    let eps: [f64; 13] = [
        0.0, 0.08, 0.25, 0.02, 0.15, 0.35, 0.0, 0.10, 0.30, 0.05, 0.20, 0.12, 0.28,
    ];
    let k = 6;
    let blocks: Vec<BlockModel> = lens
        .iter()
        .zip(eps.iter())
        .enumerate()
        .map(|(b, (&len, &e))| {
            let mut t = vec![vec![0.0; k]; k];
            for x in 0..k {
                t[x][x] = 1.0 - e;
                t[x][(x + 1) % k] = e;
            }
            let mut init = vec![0.0; k];
            init[b % k] = 1.0;
            BlockModel::with_initial(len, t, init).unwrap()
        })
        .collect();
    let design = SimulationDesign::new(21, blocks, 17).unwrap();
    let (align, _) = simulate(&design);
    assert_eq!((align.rows(), align.cols()), (21, 326));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wide.tsv");
    io::write_matrix(&path, &align, '\t').unwrap();

    let mut counts: Vec<usize> = Vec::new();
    let mut worst = 0.0f64;
    for c in ["1e-7", "1e-5", "1e-3"] {
        let start = Instant::now();
        let out = run_cli(&[
            "segment",
            "--input",
            path.to_str().unwrap(),
            "--solver",
            "dp",
            "--c",
            c,
            "--omit-timing",
        ]);
        worst = worst.max(start.elapsed().as_secs_f64());
        assert_eq!(out.status.code(), Some(0));
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        counts.push(report["cuts"].as_array().unwrap().len());
    }
    let ordered = counts.windows(2).all(|w| w[0] <= w[1]) && counts[0] < counts[2];
    verdict(
        6,
        ordered && worst < 10.0,
        &format!(
            "21x326 dp cut counts {counts:?} grow with c over 1e-7, 1e-5, 1e-3; slowest run {worst:.2}s (< 10s)"
        ),
    );
}

#[test]
fn criterion_7_byte_identical_reruns() {
    let dir = tempfile::tempdir().unwrap();
    let mut diffs: Vec<&str> = Vec::new();

    let out_a = dir.path().join("a.tsv");
    let sim_args = [
        "simulate",
        "--design",
        "paper-binary",
        "--n",
        "50",
        "--seed",
        "123",
        "--out",
        out_a.to_str().unwrap(),
    ];
    let first = run_cli(&sim_args);
    let matrix_first = std::fs::read(&out_a).unwrap();
    let truth_first = std::fs::read(dir.path().join("a.tsv.truth")).unwrap();
    let second = run_cli(&sim_args);
    if first.stdout != second.stdout {
        diffs.push("simulate stdout");
    }
    if std::fs::read(&out_a).unwrap() != matrix_first {
        diffs.push("matrix file");
    }
    if std::fs::read(dir.path().join("a.tsv.truth")).unwrap() != truth_first {
        diffs.push("truth file");
    }

    for extra in [&["--omit-timing"][..], &["--tsv", "--omit-timing"][..]] {
        let mut args = vec!["segment", "--input", out_a.to_str().unwrap()];
        args.extend_from_slice(extra);
        if run_cli(&args).stdout != run_cli(&args).stdout {
            diffs.push("segment output");
        }
    }

    for extra in [
        &["--omit-timing"][..],
        &["--tsv", "--omit-timing"][..],
        &["--rates-tsv", "--omit-timing"][..],
    ] {
        let mut args = vec![
            "evaluate",
            "--design",
            "paper-ternary",
            "--n-grid",
            "80",
            "--c-grid",
            "0.5,0.1",
            "--replicates",
            "3",
            "--seed",
            "6",
        ];
        args.extend_from_slice(extra);
        if run_cli(&args).stdout != run_cli(&args).stdout {
            diffs.push("evaluate output");
        }
    }

    let detail = if diffs.is_empty() {
        "simulate, segment, and evaluate reruns are byte-identical (JSON, TSV, matrix, truth)"
            .to_string()
    } else {
        format!("outputs differed across reruns: {diffs:?}")
    };
    verdict(7, diffs.is_empty(), &detail);
}
