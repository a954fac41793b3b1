//! Dispatch of a single job and assembly of its report.

use num_bigint::BigUint;
use num_complex::Complex;
use serde_json::{json, Value};
use taumackey::characters::{
    clifford_theory_check, compute_character_table_seeded, fs_indicators, self_conjugate_census, twisted_fs_indicators,
    zeta_expansion_check, DEFAULT_TABLE_SEED,
};
use taumackey::conjugacy::{conjugacy_classes, power_sum_report, zeta_tau, DEFAULT_PAIR_BUDGET};
use taumackey::criteria::{abelian_characterization, class_invariance_check, equality_chain, simple_reducibility};
use taumackey::gelfand::{
    build_coset_space, condition_star, garsia_criterion, gelfand_criteria_report, spherical_functions,
    twisted_fs_gelfand,
};
use taumackey::group::{construct_family, FamilySpec, DEFAULT_CAP};
use taumackey::morphisms::{tau_clifford, tau_inverse};
use taumackey::{CharacterTable64, GroupMap, GroupTable};

use crate::spec::{build_group, build_sigma, build_subgroup, build_tau};
use crate::{CliError, Command, JobSpec, EXIT_CROSS_CHECK, EXIT_OK, VERSION};

/// Residual bound applied to every floating-point identity in a report.
pub const REPORT_TOLERANCE: f64 = 1e-6;

const DEFAULT_CLIFFORD_MAX: u32 = 5;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub exit_code: i32,
}

struct Payload {
    result: Value,
    skipped: Vec<String>,
    failures: Vec<String>,
}

impl Payload {
    fn new(result: Value) -> Self {
        Payload {
            result,
            skipped: Vec::new(),
            failures: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
}

/// Runs one job. Never panics on bad input: errors become part of the report.
pub fn run_job(job: &JobSpec, default_seed: Option<u64>) -> Outcome {
    let seed = job.seed.or(default_seed).unwrap_or(DEFAULT_TABLE_SEED);
    let mut report = json!({
        "tool": "taumackey",
        "version": VERSION,
        "command": job.command.name(),
        "input": serde_json::to_value(job).expect("job specs serialize"),
        "seed": seed.to_string(),
    });
    let exit_code = match dispatch(job, seed) {
        Ok(p) => {
            let code = if p.failures.is_empty() { EXIT_OK } else { EXIT_CROSS_CHECK };
            report["status"] = json!(if code == EXIT_OK { "ok" } else { "cross-check failed" });
            report["result"] = p.result;
            report["skipped"] = json!(p.skipped);
            if !p.failures.is_empty() {
                report["failures"] = json!(p.failures);
            }
            code
        }
        Err(e) => {
            report["status"] = json!(if e.code == EXIT_CROSS_CHECK { "cross-check failed" } else { "error" });
            report["error"] = json!(e.message);
            e.code
        }
    };
    report["exit_code"] = json!(exit_code);
    Outcome { report, exit_code }
}

fn dispatch(job: &JobSpec, seed: u64) -> Result<Payload, CliError> {
    let budget = job.budget_pairs.unwrap_or(DEFAULT_PAIR_BUDGET);
    if job.command == Command::CliffordBattery && job.group.is_none() {
        return clifford_family_battery(job.n.unwrap_or(DEFAULT_CLIFFORD_MAX), seed, budget);
    }
    let group = build_group(
        job.group
            .as_ref()
            .ok_or_else(|| CliError::usage("group: required for this command"))?,
        "group",
    )?;
    let tau = || -> Result<GroupMap, CliError> {
        match &job.tau {
            Some(t) => build_tau(&group, t, "tau"),
            None => Ok(tau_inverse(&group)),
        }
    };
    let table = || table(&group, seed);
    match job.command {
        Command::CharTable => char_table(&group, &table()?),
        Command::Fs => fs(&group, &tau()?, &table()?),
        Command::SimplyReducible => simply_reducible(&group, &tau()?, &table()?, budget),
        Command::PowerSums => power_sums(&group, &tau()?, job.n.unwrap_or(2), budget),
        Command::CliffordBattery => {
            let r = clifford_theory_check::<f64>(&group, &tau()?).map_err(|e| CliError::from_core(e, "clifford-battery"))?;
            Ok(Payload::new(json!({ "clifford_theory": r })))
        }
        Command::ConditionStar => {
            let sigma = build_sigma(
                &group,
                job.sigma
                    .as_ref()
                    .ok_or_else(|| CliError::usage("sigma: required for condition-star"))?,
                "sigma",
            )?;
            let r = condition_star(&group, &sigma).map_err(|e| CliError::from_core(e, "condition-star"))?;
            let mut p = Payload::new(json!({ "condition_star": r }));
            if !r.involution {
                p.skipped.push("skipped: σ is not an involution, no Gelfand verdict".into());
            }
            Ok(p)
        }
        Command::Gelfand => {
            let sub = build_subgroup(
                &group,
                job.subgroup
                    .as_ref()
                    .ok_or_else(|| CliError::usage("subgroup: required for gelfand"))?,
                "subgroup",
            )?;
            gelfand(&group, &sub, &tau()?, &table()?, budget)
        }
    }
}

fn table(group: &GroupTable, seed: u64) -> Result<CharacterTable64, CliError> {
    compute_character_table_seeded(group, seed).map_err(|e| CliError::from_core(e, "character table"))
}

fn core(what: &str) -> impl Fn(taumackey::Error) -> CliError + '_ {
    move |e| CliError::from_core(e, what)
}

/// Values within `1e-9` of an integer print as that integer; other parts
/// print with nine decimals.
pub fn format_complex(z: Complex<f64>) -> String {
    fn part(x: f64) -> String {
        let r = x.round();
        if (x - r).abs() < 1e-9 {
            format!("{}", r as i64)
        } else {
            let s = format!("{x:.9}");
            s.trim_end_matches('0').to_string()
        }
    }
    let re = part(z.re);
    let im = part(z.im);
    match (re.as_str(), im.as_str()) {
        (_, "0") => re,
        ("0", "1") => "i".into(),
        ("0", "-1") => "-i".into(),
        ("0", _) => format!("{im}i"),
        (_, "1") => format!("{re}+i"),
        (_, "-1") => format!("{re}-i"),
        (_, i) if i.starts_with('-') => format!("{re}{im}i"),
        _ => format!("{re}+{im}i"),
    }
}

fn describe_map(map: &GroupMap) -> Value {
    json!({
        "kind": map.kind().name(),
        "involutory": map.is_involutory(),
        "validation": if map.was_exhaustive() { "exhaustive" } else { "sampled" },
    })
}

fn char_table(group: &GroupTable, table: &CharacterTable64) -> Result<Payload, CliError> {
    let classes = table.classes();
    let class_info: Vec<Value> = (0..classes.class_count())
        .map(|c| {
            json!({
                "representative": group.label(classes.representative(c)),
                "size": classes.class_size(c),
                "centralizer_order": classes.class_centralizer_order(c),
                "real": classes.is_real(c),
            })
        })
        .collect();
    let rows: Vec<Vec<String>> = table
        .rows()
        .iter()
        .map(|r| r.values().iter().map(|&z| format_complex(z)).collect())
        .collect();
    let sum_sq: u128 = table.degrees().iter().map(|&d| (d as u128) * (d as u128)).sum();
    let mut p = Payload::new(json!({
        "order": group.order().to_string(),
        "family": group.family_tag(),
        "classes": class_info,
        "degrees": table.degrees(),
        "degree_square_sum": { "value": sum_sq.to_string(), "check": "exact" },
        "rows": rows,
        "fs_indicators": fs_indicators(table).map_err(core("fs indicators"))?,
        "quality": table.quality(),
    }));
    p.require(sum_sq == group.order() as u128, "sum of squared degrees differs from |G|");
    Ok(p)
}

fn fs(group: &GroupTable, tau: &GroupMap, table: &CharacterTable64) -> Result<Payload, CliError> {
    let classes = conjugacy_classes(group);
    let twisted = twisted_fs_indicators(table, tau).map_err(core("twisted indicators"))?;
    let census = self_conjugate_census(table, tau).map_err(core("self-conjugate census"))?;
    let expansion = zeta_expansion_check(table, tau).map_err(core("ζ expansion"))?;
    let zeta = zeta_tau(group, tau).map_err(core("tau"))?;
    let per_class = zeta.per_class(&classes);
    let invariance = class_invariance_check(table, tau).map_err(core("class invariance"))?;
    let abelian = abelian_characterization(group, tau).map_err(core("abelian characterization"))?;
    let mut p = Payload::new(json!({
        "tau": describe_map(tau),
        "classical_indicators": fs_indicators(table).map_err(core("fs indicators"))?,
        "twisted_indicators": twisted.values,
        "indicator_formula_gap": twisted.formula_gap,
        "self_conjugate": {
            "rows": census.count,
            "invariant_classes": census.invariant_classes,
            "zeta_square_mean": census.from_zeta.to_string(),
            "check": "exact",
        },
        "zeta_per_class": per_class.as_ref().map(|v| v.iter().map(|z| z.to_string()).collect::<Vec<_>>()),
        "zeta_expansion_residual": expansion,
        "class_invariance": invariance,
        "abelian_characterization": abelian,
        "table_quality": table.quality(),
    }));
    p.require(per_class.is_some(), "ζ_τ is not constant on classes");
    p.require(twisted.formula_gap < REPORT_TOLERANCE, "indicator formulas disagree");
    p.require(expansion < REPORT_TOLERANCE, "ζ expansion residual too large");
    p.require(
        census.count == census.invariant_classes && census.from_zeta as usize == census.count,
        "self-conjugate census disagrees",
    );
    Ok(p)
}

fn simply_reducible(group: &GroupTable, tau: &GroupMap, table: &CharacterTable64, budget: usize) -> Result<Payload, CliError> {
    let v = simple_reducibility(group, tau, table, budget).map_err(core("simple reducibility"))?;
    let chain = equality_chain(group, tau, 3).map_err(core("equality chain"))?;
    let mut p = Payload::new(json!({
        "tau": describe_map(tau),
        "verdict": v.simply_reducible(),
        "routes_agree": v.agree(),
        "by_definition": v.by_definition(),
        "routes": v,
        "mackey_wigner_sides": "exact",
        "equality_chain": chain,
    }));
    if v.mackey_cosets.is_none() {
        p.skipped.push(format!("skipped: Mackey coset scan exceeds the pair budget {budget}"));
    }
    p.require(v.agree(), "simple reducibility routes disagree");
    Ok(p)
}

fn power_sums(group: &GroupTable, tau: &GroupMap, n: u32, budget: usize) -> Result<Payload, CliError> {
    let r = power_sum_report(group, tau, n, Some(budget)).map_err(core("power sums"))?;
    let mut p = Payload::new(json!({ "tau": describe_map(tau), "power_sums": r, "check": "exact" }));
    match r.verified_against_orbits {
        None => p.skipped.push(format!("skipped: orbit scan for n = {n} not available within budget {budget}")),
        Some(ok) => p.require(ok, "power sums disagree with the orbit scan"),
    }
    Ok(p)
}

fn clifford_family_battery(max_n: u32, seed: u64, budget: usize) -> Result<Payload, CliError> {
    if max_n == 0 {
        return Err(CliError::usage("n: must be at least 1"));
    }
    let mut entries = Vec::new();
    let mut failures = Vec::new();
    let mut skipped = Vec::new();
    for n in 1..=max_n {
        let group = construct_family(&FamilySpec::Clifford(n as usize), DEFAULT_CAP)
            .map_err(|e| CliError::from_core(e, &format!("clifford({n})")))?;
        let tau = tau_clifford(&group).map_err(|e| CliError::from_core(e, &format!("clifford({n}).tau")))?;
        let table = table(&group, seed)?;
        let v = simple_reducibility(&group, &tau, &table, budget)
            .map_err(|e| CliError::from_core(e, &format!("clifford({n})")))?;
        let closed_form = BigUint::from(2u32).pow(3 * n + 1);
        if !v.agree() {
            failures.push(format!("clifford({n}): routes disagree"));
        }
        if v.mackey_cosets.is_none() {
            skipped.push(format!("skipped: clifford({n}) Mackey coset scan exceeds the pair budget {budget}"));
        }
        entries.push(json!({
            "n": n,
            "order": group.order().to_string(),
            "verdict": v.simply_reducible(),
            "by_definition": v.by_definition(),
            "mackey_cosets": v.mackey_cosets,
            "mackey_wigner": v.mackey_wigner,
            "sum_zeta_cubed": v.sum_zeta_cubed.to_string(),
            "sum_v_squared": v.sum_v_squared.to_string(),
            "sides_equal": v.sum_zeta_cubed == v.sum_v_squared,
            "closed_form_2_pow_3n_plus_1": closed_form.to_string(),
            "closed_form_matches": closed_form == v.sum_v_squared,
        }));
    }
    Ok(Payload {
        result: json!({ "battery": entries }),
        skipped,
        failures,
    })
}

fn gelfand(
    group: &GroupTable,
    sub: &taumackey::group::Subgroup,
    tau: &GroupMap,
    table: &CharacterTable64,
    budget: usize,
) -> Result<Payload, CliError> {
    let space = build_coset_space(group, sub).map_err(core("subgroup"))?;
    let report = gelfand_criteria_report(&space, tau, table, budget).map_err(core("gelfand"))?;
    let garsia = garsia_criterion(&space, table, budget).map_err(core("garsia"))?;
    let mut p = Payload::new(json!({
        "tau": describe_map(tau),
        "subgroup_order": sub.order(),
        "points": space.size(),
        "criteria": report,
        "garsia": { "holds": garsia.holds(), "parts": garsia },
    }));
    if let Some(s) = &report.skipped {
        p.skipped.push(s.clone());
    }
    if !report.gelfand {
        p.skipped
            .push("skipped: permutation character is not multiplicity-free, no spherical functions".into());
        return Ok(p);
    }
    let sph = spherical_functions(&space, table).map_err(core("spherical functions"))?;
    let twisted = twisted_fs_gelfand(&space, tau, table).map_err(core("twisted gelfand"))?;
    p.result["spherical"] = json!({
        "constituents": sph.rows,
        "degrees": sph.degrees,
        "double_cosets": sph.representatives.iter().map(|&r| group.label(r)).collect::<Vec<_>>(),
        "values": sph.values.iter().map(|v| v.iter().map(|&z| format_complex(z)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "invariance_residual": sph.invariance_residual,
        "normalization_residual": sph.normalization_residual,
        "inversion_residual": sph.inversion_residual,
        "orthogonality_residual": sph.orthogonality_residual,
    });
    p.require(
        twisted.per_rho_identity_residuals.iter().all(|&r| r < REPORT_TOLERANCE),
        "spherical indicator identity residual too large",
    );
    p.require(twisted.zeta_x_identity_holds, "ζ square identity on X fails");
    p.require(twisted.zeta_x_inversion_residual < REPORT_TOLERANCE, "ζ inversion on X residual too large");
    p.require(twisted.k_orbit_count_match != Some(false), "τ-invariant K-orbit count mismatch");
    p.require(
        twisted.self_conjugate_indicators_one != Some(false),
        "self-τ-conjugate constituent with C_τ ≠ 1",
    );
    if let Some(s) = &twisted.skipped {
        p.skipped.push(s.clone());
    }
    p.result["twisted"] = json!(twisted);
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_formatting() {
        assert_eq!(format_complex(Complex::new(2.0, 0.0)), "2");
        assert_eq!(format_complex(Complex::new(-0.0000000001, 0.0)), "0");
        assert_eq!(format_complex(Complex::new(-0.5, 0.8660254037844386)), "-0.5+0.866025404i");
        assert_eq!(format_complex(Complex::new(0.0, -1.0)), "-i");
        assert_eq!(format_complex(Complex::new(1.0, -2.5)), "1-2.5i");
    }

    fn job(command: Command, group: Value) -> JobSpec {
        JobSpec {
            group: Some(group),
            ..JobSpec::new(command)
        }
    }

    #[test]
    fn trivial_group_table() {
        let o = run_job(&job(Command::CharTable, json!({"family": "cyclic", "n": 1})), None);
        assert_eq!(o.exit_code, 0);
        assert_eq!(o.report["result"]["rows"], json!([["1"]]));
    }

    #[test]
    fn power_sums_of_s3() {
        let mut j = job(Command::PowerSums, json!({"family": "symmetric", "n": 3}));
        j.tau = Some(json!("inverse"));
        j.n = Some(2);
        let o = run_job(&j, None);
        assert_eq!(o.exit_code, 0);
        assert_eq!(o.report["result"]["power_sums"]["sum_v_n"], json!("66"));
        assert_eq!(o.report["result"]["power_sums"]["sum_zeta_n1"], json!("66"));
    }

    #[test]
    fn quaternion_is_simply_reducible() {
        let o = run_job(&job(Command::SimplyReducible, json!({"family": "quaternion8"})), None);
        assert_eq!(o.exit_code, 0);
        assert_eq!(o.report["result"]["verdict"], json!(true));
    }

    #[test]
    fn usage_errors_exit_one() {
        let o = run_job(&job(Command::Gelfand, json!({"family": "symmetric", "n": 3})), None);
        assert_eq!(o.exit_code, 1);
        assert!(o.report["error"].as_str().unwrap().starts_with("subgroup"));
        let o = run_job(&JobSpec::new(Command::Fs), None);
        assert_eq!(o.exit_code, 1);
    }

    #[test]
    fn gelfand_report_without_multiplicity_freeness() {
        let mut j = job(Command::Gelfand, json!({"family": "symmetric", "n": 3}));
        j.subgroup = Some(json!({"generators": []}));
        let o = run_job(&j, None);
        assert_eq!(o.exit_code, 0);
        assert!(o.report["skipped"][0].as_str().unwrap().starts_with("skipped:"));
    }
}
