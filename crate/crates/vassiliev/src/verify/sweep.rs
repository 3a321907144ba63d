use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use num::rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::braid::{permutation_of, BraidWord, Orientation};
use crate::error::{Error, Result};
use crate::invariants::{Evaluator, InvariantId};
use crate::moves::{MoveSpec, SignConvention};
use crate::verify::words::{random_knot_word, random_word_with_phi, shrink_word};
use crate::verify::{boundedness_probe, check_c_equivalence, check_symbolic, check_theorem, check_x_independence};

/// Sweep parameters. Parsed from JSON or from flat `key=value` lines.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    pub seed: u64,
    pub k1_cases: usize,
    pub k2_cases: usize,
    pub general_cases: usize,
    pub xindep_cases: usize,
    pub xindep_alternatives: usize,
    pub cequiv_cases: usize,
    pub numeric_ks: Vec<usize>,
    pub symbolic_max_k: usize,
    pub t_max_len: usize,
    pub x_max_len: usize,
    pub force: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            seed: 42,
            k1_cases: 50,
            k2_cases: 20,
            general_cases: 10,
            xindep_cases: 10,
            xindep_alternatives: 3,
            cequiv_cases: 10,
            numeric_ks: vec![1, 2],
            symbolic_max_k: 3,
            t_max_len: 8,
            x_max_len: 12,
            force: false,
        }
    }
}

impl SweepConfig {
    /// Accepts a JSON object or flat `key=value` lines (`#` comments, the
    /// list field as comma-separated values).
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            return Ok(serde_json::from_str(text)?);
        }
        let mut config = SweepConfig::default();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key=value, got `{}`", line)))?;
            let (key, value) = (key.trim(), value.trim());
            let parse_usize = |v: &str| {
                v.parse::<usize>().map_err(|_| Error::Config(format!("bad number `{}`", v)))
            };
            match key {
                "seed" => {
                    config.seed =
                        value.parse().map_err(|_| Error::Config(format!("bad seed `{}`", value)))?
                }
                "k1_cases" => config.k1_cases = parse_usize(value)?,
                "k2_cases" => config.k2_cases = parse_usize(value)?,
                "general_cases" => config.general_cases = parse_usize(value)?,
                "xindep_cases" => config.xindep_cases = parse_usize(value)?,
                "xindep_alternatives" => config.xindep_alternatives = parse_usize(value)?,
                "cequiv_cases" => config.cequiv_cases = parse_usize(value)?,
                "numeric_ks" => {
                    config.numeric_ks = value
                        .split(',')
                        .map(|v| parse_usize(v.trim()))
                        .collect::<Result<Vec<_>>>()?
                }
                "symbolic_max_k" => config.symbolic_max_k = parse_usize(value)?,
                "t_max_len" => config.t_max_len = parse_usize(value)?,
                "x_max_len" => config.x_max_len = parse_usize(value)?,
                "force" => {
                    config.force = value
                        .parse()
                        .map_err(|_| Error::Config(format!("bad bool `{}`", value)))?
                }
                _ => return Err(Error::Config(format!("unknown key `{}`", key))),
            }
        }
        Ok(config)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyReport {
    pub name: String,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FailureRecord {
    pub family: String,
    pub detail: String,
    /// Full reproduction command line for the failing case.
    pub repro: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundednessRecord {
    pub family: String,
    pub radius: usize,
    pub max_abs_difference: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub seed: u64,
    /// The sign convention the symbolic oracle selects over all mixed
    /// orientations.
    pub convention: Option<String>,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
    pub families: Vec<FamilyReport>,
    pub failures: Vec<FailureRecord>,
    pub boundedness: Vec<BoundednessRecord>,
    pub total_cases: usize,
    pub passed: usize,
    pub failed: usize,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from("family,cases,passed,failed\n");
        for f in &self.families {
            out.push_str(&format!("{},{},{},{}\n", f.name, f.cases, f.passed, f.failed));
        }
        out.push_str(&format!("total,{},{},{}\n", self.total_cases, self.passed, self.failed));
        out
    }
}

struct SweepRun<'a> {
    config: &'a SweepConfig,
    ev: Evaluator,
    report: SweepReport,
}

impl<'a> SweepRun<'a> {
    fn family(&mut self, name: &str) -> usize {
        self.report.families.push(FamilyReport {
            name: name.to_string(),
            cases: 0,
            passed: 0,
            failed: 0,
        });
        self.report.families.len() - 1
    }

    fn record(&mut self, family: usize, passed: bool) {
        let f = &mut self.report.families[family];
        f.cases += 1;
        self.report.total_cases += 1;
        if passed {
            f.passed += 1;
            self.report.passed += 1;
        } else {
            f.failed += 1;
            self.report.failed += 1;
        }
    }

    fn fail(&mut self, family: usize, detail: String, repro: String) {
        let name = self.report.families[family].name.clone();
        self.report.failures.push(FailureRecord { family: name, detail, repro });
    }
}

fn all_d_vectors(k: usize) -> Vec<Vec<i8>> {
    (0u32..1 << (k + 1))
        .map(|mask| (0..=k).map(|i| if mask >> i & 1 == 1 { 2 } else { -2 }).collect())
        .collect()
}

/// Runs the full verification sweep. Deterministic for a fixed seed.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    let mut run = SweepRun {
        config,
        ev: Evaluator::new(),
        report: SweepReport {
            seed: config.seed,
            convention: None,
            notes: vec![
                "numeric families run at constant orientation: a braid with mixed boundary \
                 orientation cannot close to a knot, so those move classes need cups and caps \
                 and are unreachable here; the symbolic families cover every orientation"
                    .to_string(),
            ],
            warnings: Vec::new(),
            families: Vec::new(),
            failures: Vec::new(),
            boundedness: Vec::new(),
            total_cases: 0,
            passed: 0,
            failed: 0,
        },
    };

    symbolic_family(&mut run)?;
    convention_oracle_family(&mut run)?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut r1_differences: Vec<BigRational> = Vec::new();
    for &k in &config.numeric_ks {
        if k > 3 && !config.force {
            run.report.warnings.push(format!(
                "k = {} exceeds the desk-scale budget (k <= 3); skipped. Set force=true to run it.",
                k
            ));
            continue;
        }
        let cases = match k {
            1 => config.k1_cases,
            2 => config.k2_cases,
            _ => config.k2_cases.min(5),
        };
        theorem_family(&mut run, &mut rng, k, cases, &mut r1_differences)?;
    }
    if !r1_differences.is_empty() {
        let max = boundedness_probe(&r1_differences)?;
        run.report.boundedness.push(BoundednessRecord {
            family: "theorem".into(),
            radius: 1,
            max_abs_difference: max.to_string(),
        });
    }

    let mut r2_differences: Vec<BigRational> = Vec::new();
    general_family(&mut run, &mut rng, &mut r2_differences)?;
    if !r2_differences.is_empty() {
        let max = boundedness_probe(&r2_differences)?;
        run.report.boundedness.push(BoundednessRecord {
            family: "general-n2".into(),
            radius: 2,
            max_abs_difference: max.to_string(),
        });
    }

    x_independence_family(&mut run, &mut rng)?;
    c_equivalence_family(&mut run, &mut rng)?;

    Ok(run.report)
}

fn symbolic_family(run: &mut SweepRun) -> Result<()> {
    let fam = run.family("symbolic");
    let max_k = if run.config.symbolic_max_k > 3 && !run.config.force {
        run.report.warnings.push(format!(
            "symbolic_max_k = {} exceeds the desk-scale budget (k <= 3); clamped.",
            run.config.symbolic_max_k
        ));
        3
    } else {
        run.config.symbolic_max_k
    };
    for k in 1..=max_k {
        for d in all_d_vectors(k) {
            let spec = MoveSpec::new(k, d.clone(), Orientation::upward(k + 2))?;
            let report = check_symbolic(&spec, SignConvention::Additive)?;
            run.record(fam, report.equal);
            if !report.equal {
                let repro = format!(
                    "vassiliev symbolic --k {} --d {} --o {}",
                    k,
                    join_d(&d),
                    spec.o
                );
                run.fail(
                    fam,
                    format!("expansion {} != closed form {}", report.expanded, report.closed_form),
                    repro,
                );
            }
        }
    }
    Ok(())
}

fn convention_oracle_family(run: &mut SweepRun) -> Result<()> {
    let fam = run.family("convention-oracle");
    let mut winners = Vec::new();
    for conv in [SignConvention::Additive, SignConvention::Multiplicative] {
        let mut all_hold = true;
        for k in 1..=2usize {
            for d in all_d_vectors(k) {
                for o in Orientation::all(k + 2) {
                    let spec = MoveSpec::new(k, d.clone(), o)?;
                    if !check_symbolic(&spec, conv)?.equal {
                        all_hold = false;
                    }
                }
            }
        }
        if all_hold {
            winners.push(conv);
        }
    }
    let exactly_one = winners.len() == 1;
    run.record(fam, exactly_one);
    if exactly_one {
        run.report.convention = Some(winners[0].to_string());
    } else {
        run.fail(
            fam,
            format!("expected exactly one surviving convention, found {:?}", winners),
            "vassiliev sweep".into(),
        );
    }
    Ok(())
}

fn theorem_family(
    run: &mut SweepRun,
    rng: &mut ChaCha8Rng,
    k: usize,
    cases: usize,
    differences: &mut Vec<BigRational>,
) -> Result<()> {
    let fam = run.family(&format!("theorem-k{}", k));
    let n = k + 2;
    let o = Orientation::upward(n);
    let ids: Vec<InvariantId> = match k {
        1 => vec![InvariantId::C2, InvariantId::J2],
        2 => vec![InvariantId::J3, InvariantId::C2],
        _ => vec![InvariantId::C4, InvariantId::J4],
    };
    let d_choices = all_d_vectors(k);
    for case in 0..cases {
        let d = d_choices[case % d_choices.len()].clone();
        let spec = MoveSpec::new(k, d.clone(), o.clone())?;
        let t = random_knot_word(rng, n, &o, run.config.t_max_len, 5000)?;
        let phi = permutation_of(&t)?;
        let x = random_word_with_phi(rng, n, &o, &phi, run.config.x_max_len, 5000)?;
        for &id in &ids {
            let report = check_theorem(&run.ev, &spec, &t, &x, id, SignConvention::Additive, false)?;
            let singular =
                check_theorem(&run.ev, &spec, &t, &x, id, SignConvention::Additive, true)?;
            let variants_agree = report.rhs == singular.rhs;
            let passed = report.equal && singular.equal && variants_agree;
            run.record(fam, passed);
            if passed {
                differences.push(report.lhs.clone());
            } else {
                let (st, sx) = minimize(&run.ev, &spec, &t, &x, id);
                run.fail(
                    fam,
                    format!(
                        "lhs {} vs rhs {} (singular rhs {}, agree: {})",
                        report.lhs, report.rhs, singular.rhs, variants_agree
                    ),
                    repro_check(&spec, &st, &sx, id, run.config.seed),
                );
            }
        }
    }
    Ok(())
}

fn general_family(
    run: &mut SweepRun,
    rng: &mut ChaCha8Rng,
    differences: &mut Vec<BigRational>,
) -> Result<()> {
    let fam = run.family("general-n2-k1");
    let k = 1;
    let strands = 2 * (k + 2);
    let o = Orientation::upward(strands);
    let block_o = Orientation::upward(k + 2);
    let d_choices = all_d_vectors(k);
    for case in 0..run.config.general_cases {
        let d0 = d_choices[case % d_choices.len()].clone();
        let d1 = d_choices[(case / d_choices.len()) % d_choices.len()].clone();
        let specs = vec![
            MoveSpec::new(k, d0.clone(), block_o.clone())?,
            MoveSpec::new(k, d1.clone(), block_o.clone())?,
        ];
        let t = random_knot_word(rng, strands, &o, run.config.x_max_len, 20000)?;
        let phi = permutation_of(&t)?;
        let x = random_word_with_phi(rng, strands, &o, &phi, run.config.x_max_len, 20000)?;
        let report = crate::verify::check_general(
            &run.ev,
            &specs,
            &o,
            &t,
            &x,
            InvariantId::C2,
            SignConvention::Additive,
            false,
        )?;
        run.record(fam, report.equal);
        if report.equal {
            differences.push(report.lhs.clone());
        } else {
            run.fail(
                fam,
                format!("lhs {} vs rhs {}", report.lhs, report.rhs),
                format!(
                    "vassiliev general --n 2 --k 1 --d {}/{} --o {} --t '{}' --x '{}' --inv c2  # seed {}",
                    join_d(&d0),
                    join_d(&d1),
                    o,
                    t.render(),
                    x.render(),
                    run.config.seed
                ),
            );
        }
    }
    Ok(())
}

fn x_independence_family(run: &mut SweepRun, rng: &mut ChaCha8Rng) -> Result<()> {
    let fam = run.family("x-independence");
    let d_choices = all_d_vectors(1);
    for case in 0..run.config.xindep_cases {
        let spec = MoveSpec::new(1, d_choices[case % d_choices.len()].clone(), Orientation::upward(3))?;
        let o = Orientation::upward(3);
        let t = random_knot_word(rng, 3, &o, run.config.t_max_len, 5000)?;
        let phi = permutation_of(&t)?;
        let mut xs: Vec<BraidWord> = vec![t.clone()];
        let mut seen: BTreeSet<String> = BTreeSet::new();
        seen.insert(t.render());
        let mut guard = 0;
        while xs.len() < run.config.xindep_alternatives.max(3) && guard < 200 {
            guard += 1;
            let x = random_word_with_phi(rng, 3, &o, &phi, run.config.x_max_len, 5000)?;
            if seen.insert(x.render()) {
                xs.push(x);
            }
        }
        let report =
            check_x_independence(&run.ev, &spec, &t, &xs, InvariantId::C2, SignConvention::Additive)?;
        run.record(fam, report.independent);
        if !report.independent {
            run.fail(
                fam,
                format!(
                    "rhs values differ across x: {:?}",
                    report.rhs_values.iter().map(|v| v.value.to_string()).collect::<Vec<_>>()
                ),
                format!(
                    "vassiliev check --k 1 --d {} --o 000 --t '{}' --x '<each>' --inv c2  # seed {}",
                    join_d(&spec.d),
                    t.render(),
                    run.config.seed
                ),
            );
        }
    }
    Ok(())
}

fn c_equivalence_family(run: &mut SweepRun, rng: &mut ChaCha8Rng) -> Result<()> {
    let fam = run.family("c-equivalence");
    // Distance-one pairs under a degree-(k+1) move agree on all invariants
    // of degree <= k: k=2 checked with c2, k=3 with c2 and j3.
    let plans: [(usize, Vec<InvariantId>); 2] = [
        (2, vec![InvariantId::C2]),
        (3, vec![InvariantId::C2, InvariantId::J3]),
    ];
    for (k, ids) in &plans {
        let n = k + 2;
        let o = Orientation::upward(n);
        let d_choices = all_d_vectors(*k);
        for case in 0..run.config.cequiv_cases {
            let spec = MoveSpec::new(*k, d_choices[case % d_choices.len()].clone(), o.clone())?;
            let t = random_knot_word(rng, n, &o, run.config.t_max_len.min(6), 20000)?;
            for &id in ids {
                let equal = check_c_equivalence(&run.ev, &spec, &t, id)?;
                run.record(fam, equal);
                if !equal {
                    run.fail(
                        fam,
                        format!("{} differs across a C_{{{},d,o}} pair", id, k),
                        format!(
                            "vassiliev check --k {} --d {} --o {} --t '{}' --x '{}' --inv {}  # seed {}",
                            k,
                            join_d(&spec.d),
                            o,
                            t.render(),
                            t.render(),
                            id,
                            run.config.seed
                        ),
                    );
                }
            }
        }
    }
    Ok(())
}

fn minimize(
    ev: &Evaluator,
    spec: &MoveSpec,
    t: &BraidWord,
    x: &BraidWord,
    id: InvariantId,
) -> (BraidWord, BraidWord) {
    let fails = |t: &BraidWord, x: &BraidWord| {
        check_theorem(ev, spec, t, x, id, SignConvention::Additive, false)
            .map(|r| !r.equal)
            .unwrap_or(false)
    };
    let st = shrink_word(t, |cand| fails(cand, x));
    let sx = shrink_word(x, |cand| fails(&st, cand));
    (st, sx)
}

fn repro_check(spec: &MoveSpec, t: &BraidWord, x: &BraidWord, id: InvariantId, seed: u64) -> String {
    format!(
        "vassiliev check --k {} --d {} --o {} --t '{}' --x '{}' --inv {}  # seed {}",
        spec.k,
        join_d(&spec.d),
        spec.o,
        t.render(),
        x.render(),
        id,
        seed
    )
}

fn join_d(d: &[i8]) -> String {
    d.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// Writes `report.json` and `summary.csv` into `out_dir`.
pub fn write_report(report: &SweepReport, out_dir: &Path) -> Result<()> {
    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join("report.json"), serde_json::to_string_pretty(report)?)?;
    fs::write(out_dir.join("summary.csv"), report.summary_csv())?;
    Ok(())
}
