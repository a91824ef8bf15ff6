use std::path::{Path, PathBuf};

use hecke_core::coeff::Specialization;
use hecke_core::demazure::{braid_failure_check, check_nilpotent, NILPOTENCY_DEGREE};
use hecke_core::enumerate::candidate::build_candidate_1296_with_seed;
use hecke_core::enumerate::{
    certify_spanning, resume, start, verify_result, Budget, Checkpoint, EnumerationError,
    EnumerationResult,
};
use hecke_core::freealg::Word;
use hecke_core::presentations::catalogue;
use hecke_core::rewrite::{check_trace, shipped_trace, RewriteError, RewriteTrace};
use hecke_core::witness::{
    certify_module, torsion_witness, witness_catalogue, witness_module, WitnessError,
};
use hecke_verify as acceptance;
use serde_json::json;

use crate::config::{cache_dir, cache_key, Config};
use crate::report::{Inputs, RunReport};

pub fn demazure(max_degree: Option<u32>) -> RunReport {
    let degree = max_degree.unwrap_or(NILPOTENCY_DEGREE);
    let report = RunReport::new("demazure", Inputs::default().arg("max_degree", degree));
    let cert = match braid_failure_check() {
        Ok(c) => c,
        Err(e) => return report.failed(&e, json!(null)),
    };
    if degree != NILPOTENCY_DEGREE {
        if let Err(e) = check_nilpotent(degree) {
            return report.failed(&e, json!({ "braid_failure": cert }));
        }
    }
    let mismatches: Vec<_> = cert.table_mismatches().map(|e| e.label.clone()).collect();
    report.certified(json!({
        "braid_failure": cert,
        "nilpotent_up_to_degree": degree,
        "table_mismatches": mismatches,
    }))
}

pub fn torsion() -> RunReport {
    let report = RunReport::new(
        "torsion",
        Inputs {
            presentation: Some("G4".into()),
            ..Default::default()
        },
    );
    match torsion_witness() {
        Ok(cert) => report.certified(json!(cert)),
        Err(e @ (WitnessError::Parse { .. } | WitnessError::UnknownFamily(_))) => report.error(e),
        Err(e) => report.failed(&e, json!(null)),
    }
}

/// `name = "all"` certifies every shipped module.
pub fn witness(name: &str, bound: usize, k: usize) -> RunReport {
    let inputs = Inputs::default()
        .arg("module", name)
        .arg("R", bound)
        .arg("k", k);
    let report = RunReport::new("witness", inputs);
    let names: Vec<String> = if name == "all" {
        witness_catalogue()
            .into_iter()
            .map(|(n, _)| n.to_owned())
            .collect()
    } else {
        vec![name.to_owned()]
    };
    let mut certs = Vec::new();
    for n in &names {
        let m = match witness_module(n) {
            Ok(m) => m,
            Err(e) => return report.error(e),
        };
        match certify_module(&m, bound, k) {
            Ok(c) => certs.push(json!({ "module": n, "certificate": c })),
            Err(e @ WitnessError::BoundTooSmall(_)) => return report.error(e),
            Err(e) => return report.failed(format!("{n}: {e}"), json!(certs)),
        }
    }
    report.certified(json!(certs))
}

/// How an enumeration picks its specialization.
#[derive(Clone, Debug)]
pub enum SpecChoice {
    Group,
    Random(u64),
    Given(String),
}

#[derive(Clone, Debug)]
pub struct EnumerateArgs {
    pub name: String,
    pub spec: SpecChoice,
    pub budget: Budget,
    pub out: Option<PathBuf>,
    pub checkpoint: Option<PathBuf>,
    pub checkpoint_every: u64,
}

fn budget_error(e: &EnumerationError) -> bool {
    matches!(
        e,
        EnumerationError::BudgetExceeded { .. }
            | EnumerationError::InvalidSpecialization(_)
            | EnumerationError::Presentation(_)
            | EnumerationError::Coeff(_)
            | EnumerationError::Checkpoint(_)
    )
}

fn enumeration_failure(report: RunReport, e: EnumerationError) -> RunReport {
    if budget_error(&e) {
        report.error(e)
    } else {
        report.failed(&e, json!(null))
    }
}

fn run_enumeration(
    args: &EnumerateArgs,
    spec: &Specialization,
    seed: Option<u64>,
) -> Result<(EnumerationResult, bool), EnumerationError> {
    let p = catalogue(&args.name)?;
    let cached = cache_dir().map(|d| d.join(cache_key(&p.name, &spec.to_string())));
    if let Some(path) = cached.as_ref().filter(|p| p.exists()) {
        let text = std::fs::read_to_string(path)
            .map_err(|e| EnumerationError::Malformed(e.to_string()))?;
        let r = EnumerationResult::from_json(&text)?;
        if r.presentation == p.name && r.specialization.to_string() == spec.to_string() {
            return Ok((r, true));
        }
    }
    let state = match args.checkpoint.as_ref().filter(|c| c.exists()) {
        Some(path) => {
            let mut st = Checkpoint::load(path)?.restore(&p, spec)?;
            st.set_budget(args.budget);
            st
        }
        None => start(&p, spec, args.budget)?,
    };
    let mut last_saved = state.definitions();
    let r = resume(&p, spec, seed, state, |st| {
        if let Some(path) = &args.checkpoint {
            if st.definitions() >= last_saved + args.checkpoint_every {
                Checkpoint::capture(st, &p, spec, seed).save(path)?;
                last_saved = st.definitions();
            }
        }
        Ok(())
    })?;
    if let Some(path) = &args.checkpoint {
        let _ = std::fs::remove_file(path);
    }
    if let Some(path) = cached {
        if let Some(dir) = path.parent() {
            let _ = std::fs::create_dir_all(dir);
        }
        let _ = std::fs::write(&path, r.to_json(false));
    }
    Ok((r, false))
}

pub fn enumerate(args: &EnumerateArgs, config: &Config) -> RunReport {
    let seed = match args.spec {
        SpecChoice::Random(s) => Some(s),
        _ => None,
    };
    let mut inputs = Inputs {
        presentation: Some(args.name.clone()),
        seed,
        ..Default::default()
    }
    .arg("max_dim", args.budget.max_dim)
    .arg("max_len", args.budget.max_len);
    let p = match catalogue(&args.name) {
        Ok(p) => p,
        Err(e) => return RunReport::new("enumerate", inputs).error(e),
    };
    let spec = match &args.spec {
        SpecChoice::Group => p.group_specialization().map_err(|e| e.to_string()),
        SpecChoice::Random(s) => Ok(Specialization::random(&p.ring, *s)),
        SpecChoice::Given(text) => config
            .resolve_spec(text)
            .map_err(|e| e.to_string())
            .and_then(|t| Specialization::parse(&p.ring, t).map_err(|e| e.to_string())),
    };
    let spec = match spec {
        Ok(s) => s,
        Err(e) => return RunReport::new("enumerate", inputs).error(e),
    };
    inputs.specialization = Some(spec.to_map());
    let report = RunReport::new("enumerate", inputs);
    let (r, from_cache) = match run_enumeration(args, &spec, seed) {
        Ok(x) => x,
        Err(e) => return enumeration_failure(report, e),
    };
    if let Err(e) = verify_result(&r) {
        return report.failed(&e, json!({ "dimension": r.dimension() }));
    }
    if let Some(out) = &args.out {
        if let Err(e) = std::fs::write(out, r.to_json(true)) {
            return report.error(format!("{}: {e}", out.display()));
        }
    }
    let basis: Vec<String> = r.basis.iter().map(|w| r.alphabet.format(w)).collect();
    report.certified(json!({
        "dimension": r.dimension(),
        "basis": basis,
        "closure": r.stats,
        "cached": from_cache,
    }))
}

/// Reads one word per line; blank lines and `#` comments are skipped.
pub fn read_words(text: &str, r: &EnumerationResult) -> Result<Vec<Word>, String> {
    text.lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| {
            r.alphabet
                .parse(l)
                .map_err(|e| format!("line {}: {e}", i + 1))
        })
        .collect()
}

/// `words = None` certifies the built-in 1296-word candidate selected at `seed`.
pub fn certify(name: &str, words: Option<&Path>, result: &Path, seed: u64) -> RunReport {
    let mut inputs = Inputs {
        presentation: Some(name.to_owned()),
        ..Default::default()
    }
    .arg("result", result.display().to_string());
    inputs = match words {
        Some(w) => inputs.arg("words", w.display().to_string()),
        None => {
            inputs.seed = Some(seed);
            inputs.arg("words", "candidate")
        }
    };
    let report = RunReport::new("certify-spanning", inputs);
    let r = match std::fs::read_to_string(result)
        .map_err(|e| format!("{}: {e}", result.display()))
        .and_then(|t| EnumerationResult::from_json(&t).map_err(|e| e.to_string()))
    {
        Ok(r) => r,
        Err(e) => return report.error(e),
    };
    if r.presentation != name {
        return report.error(format!("result is for {}, not {name}", r.presentation));
    }
    let mut report = report;
    report.inputs.specialization = Some(r.specialization.to_map());
    if let Err(e) = verify_result(&r) {
        return report.failed(&e, json!(null));
    }
    let list = match words {
        Some(path) => match std::fs::read_to_string(path)
            .map_err(|e| format!("{}: {e}", path.display()))
            .and_then(|t| read_words(&t, &r))
        {
            Ok(l) => l,
            Err(e) => return report.error(e),
        },
        None => match build_candidate_1296_with_seed(seed) {
            Ok(l) => l,
            Err(e) => return report.error(e),
        },
    };
    let contains_identity = list.iter().any(|w| w.is_identity());
    match certify_spanning(&list, &r) {
        Ok(cert) => report.certified(json!({
            "dimension": r.dimension(),
            "words": list.len(),
            "contains_identity": contains_identity,
            "is_basis": cert.is_basis(),
            "certificate": cert,
        })),
        Err(e @ EnumerationError::RankDeficit { .. }) => report.failed(
            &e,
            json!({ "dimension": r.dimension(), "words": list.len() }),
        ),
        Err(e) => report.error(e),
    }
}

/// `file` is a path, or the name of a shipped trace.
pub fn trace(file: &str) -> RunReport {
    let report = RunReport::new("trace", Inputs::default().arg("trace", file));
    let loaded = if Path::new(file).exists() {
        RewriteTrace::load(Path::new(file))
    } else {
        shipped_trace(file).ok_or_else(|| RewriteError::Parse {
            line: 0,
            msg: format!("no file or shipped trace {file:?}"),
        })
    };
    let tr = match loaded {
        Ok(t) => t,
        Err(e) => return report.error(e),
    };
    match check_trace(&tr) {
        Ok(cert) => report.certified(json!(cert)),
        Err(e @ (RewriteError::Parse { .. } | RewriteError::UnknownRule { .. })) => report.error(e),
        Err(e) => report.failed(&e, json!(null)),
    }
}

pub fn verify_all(seed: u64, mut on_done: impl FnMut(&acceptance::Criterion)) -> RunReport {
    let report = RunReport::new(
        "verify-all",
        Inputs {
            seed: Some(seed),
            ..Default::default()
        },
    );
    let criteria = acceptance::verify_all(seed, &mut on_done);
    let failed: Vec<u8> = criteria
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.id)
        .collect();
    let payload = json!({ "criteria": criteria });
    if failed.is_empty() {
        report.certified(payload)
    } else {
        let list: Vec<String> = failed.iter().map(u8::to_string).collect();
        report.failed(format!("criteria failed: {}", list.join(", ")), payload)
    }
}
