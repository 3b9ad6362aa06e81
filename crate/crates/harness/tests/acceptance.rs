//! The acceptance criteria, run in order. Each prints one PASS or FAIL line.
//! Criteria that are known to fail, and why, are listed in `KNOWN_RED`; the
//! test fails if the set of failing criteria differs from that list.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_rational::Rational64;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use syllogistic::calculus::{
    expand_chain, find_countermodel, gold_conclusions, is_valid, parse_statement, ConclusionLabel,
    Oracle, Sentence, Statement, ValidityTable,
};
use syllogistic::datagen::{generate, option_text, substream, DatasetItem, DatasetKind, Taxonomy};
use syllogistic::eval::{
    answers_by_id, chi2_yates, evaluate, parse_answer, spearman, HumanBaseline, RunData,
};
use syllogistic::heuristics::{atmosphere_predict, coverage_stats, published_prediction};
use syllogistic::{ExactReport, HeuristicTheory, LabelSet, Mood, Schema};
use syllogistic_harness::{parse_records, predict_mock, MockReasoner};

/// Criteria expected to fail:
/// 2: PHM valid coverage computes to 54.17 (26 of 48) from the published
///    prediction table, not 60.42.
/// 5: four valid schemas (AE1, AE3, EA2, EA3) conclude both `Eac` and `Oca`
///    style pairs whose joint falsity needs `a` and `c` to coincide, so 40
///    unbelievable items keep one true gold conclusion.
const KNOWN_RED: [u8; 2] = [2, 5];

const VALID_TABLE: &str = "AA1:Aac Iac Ica, AA2:Aca Iac Ica, AA4:Iac Ica, AI2:Iac Ica, AI4:Iac Ica, \
    AE1:Eac Eca Oac Oca, AE2:Oac, AE3:Eac Eca Oac Oca, AE4:Oac, AO3:Oca, AO4:Oac, IA1:Iac Ica, IA4:Iac Ica, \
    IE1:Oac, IE2:Oac, IE3:Oac, IE4:Oac, EA1:Oca, EA2:Eac Eca Oac Oca, EA3:Eac Eca Oac Oca, EA4:Oca, EI1:Oca, \
    EI2:Oca, EI3:Oca, EI4:Oca, OA3:Oac, OA4:Oca";

const ATMOSPHERE_TABLE: &str = "AA1:Aac Aca, AA2:Aac Aca, AA4:Aac Aca, AI2:Iac Ica, AI4:Iac Ica, AE1:Eac Eca, \
    AE2:Eac Eca, AE3:Eac Eca, AE4:Eac Eca, AO3:Oac Oca, AO4:Oac Oca, IA1:Iac Ica, IA4:Iac Ica, IE1:Oac Oca, \
    IE2:Oac Oca, IE3:Oac Oca, IE4:Oac Oca, EA1:Eac Eca, EA2:Eac Eca, EA3:Eac Eca, EA4:Eac Eca, EI1:Oac Oca, \
    EI2:Oac Oca, EI3:Oac Oca, EI4:Oac Oca, OA3:Oac Oca, OA4:Oac Oca, AA3:Aac Aca, AI1:Iac Ica, AI3:Iac Ica, \
    AO1:Oac Oca, AO2:Oac Oca, IA2:Iac Ica, IA3:Iac Ica, II1:Iac Ica, II2:Iac Ica, II3:Iac Ica, II4:Iac Ica, \
    IO1:Oac Oca, IO2:Oac Oca, IO3:Oac Oca, IO4:Oac Oca, EE1:Eac Eca, EE2:Eac Eca, EE3:Eac Eca, EE4:Eac Eca, \
    EO1:Oac Oca, EO2:Oac Oca, EO3:Oac Oca, EO4:Oac Oca, OA1:Oac Oca, OA2:Oac Oca, OI1:Oac Oca, OI2:Oac Oca, \
    OI3:Oac Oca, OI4:Oac Oca, OE1:Oac Oca, OE2:Oac Oca, OE3:Oac Oca, OE4:Oac Oca, OO1:Oac Oca, OO2:Oac Oca, \
    OO3:Oac Oca, OO4:Oac Oca";

fn parse_table(text: &str) -> BTreeMap<Schema, LabelSet> {
    text.split(',')
        .map(|entry| {
            let (code, labels) = entry.trim().split_once(':').unwrap();
            let set = labels
                .split_whitespace()
                .map(|l| l.parse::<ConclusionLabel>().unwrap())
                .collect();
            (code.parse().unwrap(), set)
        })
        .collect()
}

type Criterion = (u8, &'static str, fn() -> Outcome);
type ShapeCheck = (DatasetKind, usize, fn(Schema) -> bool, usize);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn secs(d: Duration) -> String {
    format!("{:.3} s", d.as_secs_f64())
}

fn pct2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

fn validity_table() -> Outcome {
    let start = Instant::now();
    let derived = Oracle::new(4).derive_table();
    let elapsed = start.elapsed();
    let expected = parse_table(VALID_TABLE);
    let mut mismatches = Vec::new();
    for s in Schema::all() {
        let want = expected.get(&s).copied().unwrap_or(LabelSet::EMPTY);
        if derived.get(s) != want {
            mismatches.push(s.code());
        }
    }
    let stored_agrees = ValidityTable::stored().diff(&derived).is_empty();
    let pass = mismatches.is_empty()
        && stored_agrees
        && derived.valid_count() == 27
        && derived.conclusion_count() == 48
        && elapsed < Duration::from_secs(10);
    outcome(
        pass,
        format!(
            "{} valid, {} conclusions, {} NVC, mismatches {:?}, stored table agrees {stored_agrees}, {}",
            derived.valid_count(),
            derived.conclusion_count(),
            64 - derived.valid_count(),
            mismatches,
            secs(elapsed)
        ),
    )
}

fn heuristic_coverage() -> Outcome {
    let start = Instant::now();
    let stats: Vec<(HeuristicTheory, f64, f64)> = HeuristicTheory::ALL
        .into_iter()
        .map(|t| {
            let c = coverage_stats::<f64>(t);
            (t, c.valid_pct, c.invalid_pct)
        })
        .collect();
    let elapsed = start.elapsed();
    let expected = [
        (HeuristicTheory::Atmosphere, 62.50, Some(0.00)),
        (HeuristicTheory::Matching, 45.83, Some(0.00)),
        (HeuristicTheory::Conversion, 33.33, None),
        (HeuristicTheory::Phm, 60.42, Some(0.00)),
    ];
    let mut failures = Vec::new();
    for ((t, valid, invalid), (_, want_valid, want_invalid)) in stats.iter().zip(expected) {
        let invalid_ok = match want_invalid {
            Some(w) => pct2(*invalid) == w,
            None => (invalid - 86.11).abs() <= 0.5,
        };
        if pct2(*valid) != want_valid || !invalid_ok {
            failures.push(format!("{t} ({:.2}, {:.2})", valid, invalid));
        }
    }
    let shown: Vec<String> = stats
        .iter()
        .map(|(t, v, i)| format!("{t} ({v:.2}, {i:.2})"))
        .collect();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(1);
    outcome(
        pass,
        format!(
            "{}; off target: {:?}, {}",
            shown.join(", "),
            failures,
            secs(elapsed)
        ),
    )
}

fn atmosphere_agreement() -> Outcome {
    let table = parse_table(ATMOSPHERE_TABLE);
    let disagree: Vec<String> = Schema::all()
        .into_iter()
        .filter(|&s| {
            atmosphere_predict(s) != table[&s] || published_prediction(s).atmosphere != table[&s]
        })
        .map(|s| s.code())
        .collect();
    outcome(
        table.len() == 64 && disagree.is_empty(),
        format!(
            "{} schemas compared, disagreements {:?}",
            table.len(),
            disagree
        ),
    )
}

fn has_all_options(item: &DatasetItem) -> bool {
    let want: BTreeSet<String> = ConclusionLabel::ALL
        .iter()
        .map(|&l| option_text(l, item.a(), item.c()))
        .collect();
    let got: BTreeSet<String> = item.options.iter().cloned().collect();
    item.options.len() == 9 && got == want
}

fn shape_ok(
    items: &[DatasetItem],
    eligible: impl Fn(Schema) -> bool,
    n_premises: usize,
) -> Result<(), String> {
    let mut per_schema: BTreeMap<Schema, usize> = BTreeMap::new();
    for i in items {
        *per_schema.entry(i.schema).or_default() += 1;
        if !has_all_options(i) {
            return Err(format!("{}: bad options", i.id));
        }
        if i.n_premises != n_premises || i.premises.len() != n_premises {
            return Err(format!("{}: {} premises", i.id, i.premises.len()));
        }
    }
    let expected: Vec<Schema> = Schema::all().into_iter().filter(|&s| eligible(s)).collect();
    if per_schema.keys().copied().collect::<Vec<_>>() != expected {
        return Err("wrong schemas".into());
    }
    if let Some((s, n)) = per_schema.iter().find(|(_, &n)| n != 10) {
        return Err(format!("{s} has {n} items"));
    }
    Ok(())
}

fn dataset_shapes() -> Outcome {
    let start = Instant::now();
    let seed = 11;
    let mut sizes = Vec::new();
    let mut problems = Vec::new();
    let checks: [ShapeCheck; 5] = [
        (DatasetKind::Believable, 640, |_| true, 2),
        (DatasetKind::Unbelievable, 270, is_valid, 2),
        (DatasetKind::Chain2, 280, Schema::has_a_premise, 2),
        (DatasetKind::Chain3, 280, Schema::has_a_premise, 3),
        (DatasetKind::Chain4, 280, Schema::has_a_premise, 4),
    ];
    for (kind, size, eligible, n_premises) in checks {
        match generate(kind, seed) {
            Ok(items) => {
                sizes.push(format!("{} {}", kind.name(), items.len()));
                if items.len() != size {
                    problems.push(format!("{}: {} items", kind.name(), items.len()));
                }
                if let Err(e) = shape_ok(&items, eligible, n_premises) {
                    problems.push(format!("{}: {e}", kind.name()));
                }
            }
            Err(e) => problems.push(format!("{}: {e}", kind.name())),
        }
    }
    let elapsed = start.elapsed();
    let pass = problems.is_empty() && elapsed < Duration::from_secs(30);
    outcome(
        pass,
        format!(
            "{}; problems {:?}, {}",
            sizes.join(", "),
            problems,
            secs(elapsed)
        ),
    )
}

fn statements(item: &DatasetItem, tax: &Taxonomy) -> (Vec<bool>, Vec<bool>) {
    let terms = [
        item.terms[0].clone(),
        item.terms[1].clone(),
        item.terms[2].clone(),
    ];
    let premises = item.schema.premises_of(&terms).unwrap();
    let premise_truth = premises.iter().map(|p| tax.truth(p).unwrap()).collect();
    let gold_truth = item
        .gold
        .iter()
        .map(|l| {
            tax.truth(&l.statement(&terms[0], &terms[2]).unwrap())
                .unwrap()
        })
        .collect();
    (premise_truth, gold_truth)
}

fn dataset_soundness() -> Outcome {
    let tax = Taxonomy::builtin();
    let believable = generate(DatasetKind::Believable, 11).unwrap();
    let unbelievable = generate(DatasetKind::Unbelievable, 11).unwrap();
    let bad_believable: Vec<&str> = believable
        .iter()
        .filter(|i| {
            let (p, g) = statements(i, &tax);
            !p.iter().all(|&t| t) || !g.iter().all(|&t| t)
        })
        .map(|i| i.id.as_str())
        .collect();
    let bad_unbelievable: Vec<&DatasetItem> = unbelievable
        .iter()
        .filter(|i| statements(i, &tax).1.iter().any(|&t| t))
        .collect();
    let bad_schemas: BTreeSet<String> = bad_unbelievable.iter().map(|i| i.schema.code()).collect();
    let pass = bad_believable.is_empty() && bad_unbelievable.is_empty();
    outcome(
        pass,
        format!(
            "believable {}/{} sound; unbelievable {}/{} with all gold false (others in {:?})",
            believable.len() - bad_believable.len(),
            believable.len(),
            unbelievable.len() - bad_unbelievable.len(),
            unbelievable.len(),
            bad_schemas
        ),
    )
}

fn exact_report(items: &[DatasetItem], mock: MockReasoner) -> ExactReport {
    let answers = answers_by_id(&parse_records(items, &predict_mock(items, mock)));
    evaluate(
        mock.to_string().as_str(),
        RunData {
            items,
            answers: &answers,
        },
        None,
        &HumanBaseline::builtin(),
        &Taxonomy::builtin(),
    )
}

fn pipeline_equivalence() -> Outcome {
    let items = generate(DatasetKind::Believable, 11).unwrap();
    let r = |n, d| Some(Rational64::new(n, d));
    let mut failures = Vec::new();

    let gold = exact_report(&items, MockReasoner::Gold);
    if gold.accuracy.overall != r(100, 1)
        || gold.consistency.contradictory != 0
        || gold.completeness.incomplete != 0
    {
        failures.push("gold");
    }

    let atm = exact_report(&items, MockReasoner::Heuristic(HeuristicTheory::Atmosphere));
    let overlap = &atm.heuristic_overlap[&HeuristicTheory::Atmosphere];
    let all_overlap = [
        overlap.predicted_correct_valid_pct,
        overlap.predicted_mistakes_valid_pct,
        overlap.predicted_mistakes_invalid_pct,
    ]
    .iter()
    .all(|p| *p == r(100, 1));
    if atm.accuracy.valid != r(2200, 27) || atm.accuracy.invalid != r(0, 1) || !all_overlap {
        failures.push("atmosphere");
    }

    let conv = exact_report(&items, MockReasoner::Heuristic(HeuristicTheory::Conversion));
    if conv.accuracy.invalid != r(3200, 37) {
        failures.push("conversion");
    }
    let show = |x: Option<Rational64>| x.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
    outcome(
        failures.is_empty(),
        format!(
            "gold acc {} contradictory {} incomplete {}; atmosphere valid {} invalid {}; conversion invalid {}; failures {:?}",
            show(gold.accuracy.overall),
            gold.consistency.contradictory,
            gold.completeness.incomplete,
            show(atm.accuracy.valid),
            show(atm.accuracy.invalid),
            show(conv.accuracy.invalid),
            failures
        ),
    )
}

/// Yates-corrected chi-square written out directly, with the p-value from
/// the chi-square distribution itself.
fn direct_chi2(t: [[u64; 2]; 2]) -> (f64, f64) {
    let [[a, b], [c, d]] = t.map(|r| r.map(|v| v as f64));
    let n = a + b + c + d;
    let corrected = ((a * d - b * c).abs() - n / 2.0).max(0.0);
    let x = n * corrected * corrected / ((a + b) * (c + d) * (a + c) * (b + d));
    (x, 1.0 - ChiSquared::new(1.0).unwrap().cdf(x))
}

fn statistics() -> Outcome {
    let mut failures = Vec::new();
    let human: Vec<f64> = HumanBaseline::builtin()
        .per_schema
        .values()
        .copied()
        .collect();
    let reversed: Vec<f64> = human.iter().map(|v| -v).collect();
    if spearman(&human, &human).unwrap() != 1.0 {
        failures.push("self-correlation".to_string());
    }
    if spearman(&human, &reversed).unwrap() != -1.0 {
        failures.push("reversed".to_string());
    }

    let mut runner = TestRunner::new(Config {
        cases: 100,
        ..Config::default()
    });
    let vectors = (
        prop::collection::vec(-1e3f64..1e3, 3..40),
        prop::collection::vec(-1e3f64..1e3, 40),
    );
    let invariant = runner.run(&vectors, |(x, y)| {
        let y = &y[..x.len()];
        if let Ok(rho) = spearman(&x, y) {
            let fx: Vec<f64> = x.iter().map(|v| (v / 100.0).exp()).collect();
            let gy: Vec<f64> = y.iter().map(|v| v * v * v + 3.0 * v).collect();
            prop_assert!((spearman(&fx, &gy).unwrap() - rho).abs() < 1e-12);
        }
        Ok(())
    });
    if let Err(e) = invariant {
        failures.push(format!("monotone invariance: {e}"));
    }

    match chi2_yates([[25, 25], [25, 25]]) {
        Some(c) if c.statistic == 0.0 && c.p_value == 1.0 => {}
        other => failures.push(format!("balanced table gave {other:?}")),
    }
    let mut rng = substream(7, "acceptance/chi2");
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let t = [
            [rng.random_range(1..300), rng.random_range(1..300)],
            [rng.random_range(1..300), rng.random_range(1..300)],
        ];
        let got = chi2_yates(t).unwrap();
        let (x, p) = direct_chi2(t);
        worst = worst
            .max((got.statistic - x).abs())
            .max((got.p_value - p).abs());
    }
    if worst > 1e-9 {
        failures.push(format!("chi-square off by {worst:e}"));
    }
    outcome(
        failures.is_empty(),
        format!("largest chi-square deviation {worst:.1e}; failures {failures:?}"),
    )
}

fn round_trips() -> Outcome {
    let vocabulary: Vec<String> = (0..100).map(|i| format!("w{i}x")).collect();
    let mut bad = 0usize;
    let mut checked = 0usize;
    for s in &vocabulary {
        for o in &vocabulary {
            if s == o {
                continue;
            }
            for mood in Mood::ALL {
                let stmt = Statement::new(mood, s.clone(), o.clone()).unwrap();
                checked += 1;
                match parse_statement(&stmt.render(), &vocabulary) {
                    Ok(Sentence::Claim(back)) if back == stmt => {}
                    _ => bad += 1,
                }
            }
        }
    }

    let items = generate(DatasetKind::Believable, 11).unwrap();
    let mut subsets = 0usize;
    let mut bad_subsets = 0usize;
    for item in items.iter().step_by(64) {
        let labelled = item.labelled_options();
        for mask in 1u32..(1 << 9) {
            let chosen: Vec<(ConclusionLabel, String)> = labelled
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, x)| x.clone())
                .collect();
            for order in [false, true] {
                let mut chosen = chosen.clone();
                if order {
                    chosen.reverse();
                }
                let text = chosen
                    .iter()
                    .map(|(_, o)| o.trim_end_matches('.'))
                    .collect::<Vec<_>>()
                    .join(" or ");
                let want: Vec<ConclusionLabel> = chosen.iter().map(|(l, _)| *l).collect();
                subsets += 1;
                if parse_answer(&format!("{text}."), item) != want {
                    bad_subsets += 1;
                }
            }
        }
    }
    outcome(
        bad == 0 && bad_subsets == 0,
        format!(
            "statements {}/{checked} round-trip; answer subsets {}/{subsets} recovered",
            checked - bad,
            subsets - bad_subsets
        ),
    )
}

fn chain_conservativity() -> Outcome {
    let start = Instant::now();
    let terms = ["a", "b", "c"];
    let aux = ["t1", "t2"];
    let mut checked = 0;
    let mut failures = Vec::new();
    for s in Schema::all().into_iter().filter(|s| s.has_a_premise()) {
        for n in [2, 3] {
            let e = expand_chain(s, &terms, &aux, n).unwrap();
            checked += 1;
            let entails_replaced = find_countermodel(&e.premises, &e.replaced, 4).is_none();
            let gold_kept = gold_conclusions(s).iter().all(|l| {
                find_countermodel(&e.premises, &l.statement(&"a", &"c").unwrap(), 4).is_none()
            });
            if !entails_replaced || !gold_kept {
                failures.push(format!("{s}/{n}"));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && checked == 56 && elapsed < Duration::from_secs(60),
        format!(
            "{checked} expansions, failures {failures:?}, {}",
            secs(elapsed)
        ),
    )
}

fn run_cli(dir: &Path, args: &[&str]) {
    let status = Command::new(env!("CARGO_BIN_EXE_syllogistic"))
        .args(args)
        .current_dir(dir)
        .status()
        .expect("binary runs");
    assert!(status.success(), "syllogistic {args:?} failed");
}

fn pipeline_artifacts(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    for kind in ["believable", "unbelievable", "pseudo", "chain4"] {
        run_cli(
            dir,
            &[
                "generate",
                "--condition",
                kind,
                "--seed",
                "5",
                "--out",
                &format!("{kind}.jsonl"),
            ],
        );
    }
    run_cli(
        dir,
        &[
            "prompt",
            "--dataset",
            "believable.jsonl",
            "--setting",
            "icl-out",
            "--pool",
            "pseudo.jsonl",
            "--seed",
            "5",
            "--out",
            "prompts.jsonl",
        ],
    );
    for (mock, tag) in [("random:5", "random"), ("atmosphere", "atmosphere")] {
        run_cli(
            dir,
            &[
                "predict",
                "--dataset",
                "believable.jsonl",
                "--mock",
                mock,
                "--out",
                &format!("{tag}.bel.jsonl"),
            ],
        );
        run_cli(
            dir,
            &[
                "predict",
                "--dataset",
                "unbelievable.jsonl",
                "--mock",
                mock,
                "--out",
                &format!("{tag}.unb.jsonl"),
            ],
        );
        run_cli(
            dir,
            &[
                "evaluate",
                "--dataset",
                "believable.jsonl",
                "--predictions",
                &format!("{tag}.bel.jsonl"),
                "--unbelievable-dataset",
                "unbelievable.jsonl",
                "--unbelievable-predictions",
                &format!("{tag}.unb.jsonl"),
                "--name",
                tag,
                "--out",
                &format!("{tag}.report.json"),
            ],
        );
    }
    run_cli(
        dir,
        &[
            "report",
            "--table",
            "accuracy",
            "--out",
            "table.md",
            "random.report.json",
            "atmosphere.report.json",
        ],
    );
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read(&p).unwrap(),
            )
        })
        .collect()
}

fn determinism() -> Outcome {
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = pipeline_artifacts(d1.path());
    let second = pipeline_artifacts(d2.path());
    let differing: Vec<&String> = first
        .keys()
        .filter(|k| first.get(*k) != second.get(*k))
        .collect();
    outcome(
        first.len() == 12 && first.keys().eq(second.keys()) && differing.is_empty(),
        format!(
            "{} artifacts compared, differing {:?}",
            first.len(),
            differing
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "validity table", validity_table),
        (2, "heuristic coverage", heuristic_coverage),
        (3, "atmosphere rule vs table", atmosphere_agreement),
        (4, "dataset shapes", dataset_shapes),
        (5, "dataset soundness", dataset_soundness),
        (6, "pipeline oracle equivalence", pipeline_equivalence),
        (7, "statistics", statistics),
        (8, "round trips", round_trips),
        (9, "chain conservativity", chain_conservativity),
        (10, "determinism", determinism),
    ];
    let mut red = Vec::new();
    for (n, name, check) in criteria {
        let o = check();
        println!(
            "criterion {n:>2} {name}: {} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            red.push(n);
        }
    }
    println!("failing: {red:?}, expected: {KNOWN_RED:?}");
    if red != KNOWN_RED {
        eprintln!("failing criteria differ from the documented ones");
        std::process::exit(1);
    }
}
