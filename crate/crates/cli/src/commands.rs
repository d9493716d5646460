use std::fmt::Write as _;

use serde_json::json;

use coxmut::exchange::{canonical_form, classify_mutation_type, mutation_class, ClassStatus, Diagram, ExchangeMatrix};
use coxmut::manifold::tables::{check_row, table};
use coxmut::manifold::{
    certify_realization, manifold_invariants, manifold_report, verify_torsion_free, verify_torsion_free_affine,
    ManifoldError, ManifoldReport, TorsionCertificate,
};
use coxmut::presentation::{build_presentation, emit_presentation, ExtraRelator};
use coxmut::Caps;
use coxmut::exchange::MutationType;

use crate::input::Input;
use crate::CliError;

/// Text for stdout and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("values serialize");
    text.push('\n');
    text
}

pub(crate) fn manifold_error(e: ManifoldError) -> CliError {
    match e {
        ManifoldError::CapExceeded(msg) => CliError::CapExceeded(msg),
        other => CliError::Unavailable(other.to_string()),
    }
}

/// `k` is 1-based.
pub fn mutate(input: &Input, k: usize) -> Result<Output, CliError> {
    let rank = input.matrix.rank();
    if k == 0 || k > rank {
        return Err(CliError::Invalid(format!("vertex {k} is not in 1..={rank}")));
    }
    let m = input.matrix.mutate(k - 1).map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(Output::ok(format!("{}\n", m.to_json())))
}

pub fn class(input: &Input, caps: &Caps) -> Result<Output, CliError> {
    let class = mutation_class(&input.matrix, caps);
    let members: Vec<_> = class
        .members
        .iter()
        .map(|m| {
            json!({
                "canonical_key": m.key.to_hex(),
                "sequence": m.sequence.iter().map(|k| k + 1).collect::<Vec<_>>(),
                "matrix": m.matrix,
            })
        })
        .collect();
    let text = pretty(&json!({ "status": class.status, "size": members.len(), "members": members }));
    match class.status {
        ClassStatus::Complete => Ok(Output::ok(text)),
        _ => Ok(Output { text, code: CliError::CapExceeded(String::new()).exit_code() }),
    }
}

pub fn classify(input: &Input, caps: &Caps) -> Result<Output, CliError> {
    let t = classify_mutation_type(&input.matrix, caps).map_err(|e| CliError::Invalid(e.to_string()))?;
    let key = canonical_form(&Diagram::from_matrix(&input.matrix)).to_hex();
    let mut value = serde_json::to_value(&t).expect("types serialize");
    value["canonical_key"] = key.into();
    Ok(Output::ok(pretty(&value)))
}

pub fn present(input: &Input, extra: Vec<ExtraRelator>) -> Result<Output, CliError> {
    let g = Diagram::from_matrix(&input.matrix);
    let p = build_presentation(&g, extra).map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(Output::ok(emit_presentation(&p)))
}

/// The manifold report of an input, through its custom realization when
/// one is given.
pub fn report(input: &Input, caps: &Caps) -> Result<ManifoldReport, CliError> {
    match &input.realization {
        Some(custom) => {
            let r = custom.build(input.matrix.rank())?;
            manifold_report(&Diagram::from_matrix(&input.matrix), &r, caps).map_err(manifold_error)
        }
        None => manifold_invariants(&input.matrix, caps).map_err(manifold_error),
    }
}

fn optional<T: ToString>(value: &Option<T>) -> String {
    value.as_ref().map_or("-".into(), ToString::to_string)
}

fn summary(r: &ManifoldReport) -> String {
    let mut out = String::new();
    writeln!(out, "canonical key   {}", r.canonical_key).unwrap();
    writeln!(out, "group W         {} of order {}", r.group, optional(&r.group_order)).unwrap();
    writeln!(out, "W0 geometry     {}, dimension {}", r.geometry.kind.name(), r.dimension).unwrap();
    if let Some(fc) = r.finite_covolume {
        writeln!(out, "finite covolume {fc}").unwrap();
    }
    writeln!(out, "compact         {}", r.compact).unwrap();
    writeln!(out, "chi_orb         {}", optional(&r.chi_orb)).unwrap();
    writeln!(out, "chi_X           {}", optional(&r.chi_x)).unwrap();
    writeln!(out, "cusps           {}", optional(&r.cusps)).unwrap();
    if let Some(v) = &r.volume {
        writeln!(out, "volume          {}/{} pi^{} = {:.6}", v.coeff_num, v.coeff_den, v.pi_power, v.approx()).unwrap();
    }
    if let Some(g) = &r.genus {
        writeln!(out, "genus           {g}").unwrap();
    }
    if let Some(q) = &r.quotient_order {
        writeln!(out, "quotient order  {}", optional(&q.exact())).unwrap();
    }
    let verdict = match r.torsion.torsion_free {
        Some(true) => "torsion-free",
        Some(false) => "has torsion",
        None => "inconclusive",
    };
    writeln!(out, "torsion         {verdict} ({} elliptic subsets)", r.torsion.elliptic_subsets).unwrap();
    out
}

pub fn analyze(input: &Input, caps: &Caps, as_json: bool) -> Result<Output, CliError> {
    let r = report(input, caps)?;
    Ok(Output::ok(if as_json { pretty(&r) } else { summary(&r) }))
}

fn certificate(m: &ExchangeMatrix, input: &Input, caps: &Caps) -> Result<TorsionCertificate, CliError> {
    if let Some(custom) = &input.realization {
        let r = custom.build(m.rank())?;
        return certify_realization(&Diagram::from_matrix(m), &r).map_err(manifold_error);
    }
    let t = classify_mutation_type(m, caps).map_err(|e| CliError::Invalid(e.to_string()))?;
    match t {
        MutationType::AffineType { .. } => verify_torsion_free_affine(m, caps),
        _ => verify_torsion_free(m, caps),
    }
    .map_err(manifold_error)
}

pub fn verify(input: &Input, caps: &Caps) -> Result<Output, CliError> {
    let cert = certificate(&input.matrix, input, caps)?;
    let code = match cert.torsion_free {
        Some(true) => 0,
        Some(false) => CliError::Verification(String::new()).exit_code(),
        None => CliError::CapExceeded(String::new()).exit_code(),
    };
    Ok(Output { text: pretty(&cert), code })
}

pub fn tables(number: u8, caps: &Caps, as_json: bool) -> Result<Output, CliError> {
    let rows = table(number).ok_or_else(|| CliError::Invalid(format!("there is no table {number}")))?;
    let mut out = String::new();
    let mut checks = Vec::new();
    let mut all = true;
    for row in rows {
        let check = check_row(row, caps).map_err(manifold_error)?;
        let passed = check.passed();
        all &= passed;
        let cusps = row.cusps.map_or("compact".to_string(), |c| format!("{c} cusps"));
        write!(out, "{}: {} d={} |W|={} ({}) {cusps}", if passed { "PASS" } else { "FAIL" }, row.group, row.dimension, row.order, row.order_text).unwrap();
        if let Some(chi) = row.chi {
            write!(out, " chi_X={chi}").unwrap();
        }
        match check.best() {
            Some(best) if passed => writeln!(
                out,
                "; {} of {} candidate diagram(s) agree, witness sequence {:?}",
                check.candidates.iter().filter(|c| c.mismatches.is_empty()).count(),
                check.candidates.len(),
                best.sequence.iter().map(|k| k + 1).collect::<Vec<_>>()
            )
            .unwrap(),
            Some(best) => writeln!(out, "; mismatches {:?}", best.mismatches).unwrap(),
            None => writeln!(out, "; no candidate diagram in a class of {}", check.class_size).unwrap(),
        }
        checks.push(check);
    }
    let code = if all { 0 } else { CliError::Verification(String::new()).exit_code() };
    Ok(Output { text: if as_json { pretty(&checks) } else { out }, code })
}
