//! Reference rows for the hyperbolic manifolds built from finite-type
//! diagrams, and the search that reproduces them.

use num_bigint::BigUint;
use serde::Serialize;

use super::invariants::{manifold_report, ManifoldReport};
use super::realization::Realization;
use super::ManifoldError;
use crate::coxeter::{classify::coxeter_isomorphism, geometric_type, has_finite_covolume, CoxeterMatrix, GeometricType};
use crate::exchange::{dynkin, mutation_class, Diagram};
use crate::presentation::coxeter_data;
use crate::Caps;

/// One published row: the Weyl group, the dimension of the manifold, the
/// group order, the number of cusps (`None` for compact manifolds), the
/// Euler characteristic where listed and the volume per chamber.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub table: u8,
    pub group: &'static str,
    pub dimension: usize,
    pub order: u64,
    pub order_text: &'static str,
    pub cusps: Option<u64>,
    pub chi: Option<i64>,
    pub chamber_volume: Option<f64>,
    /// Exact volume as `(numerator, denominator, power of π)`.
    pub exact_volume: Option<(i64, i64, u32)>,
    pub genus: Option<i64>,
}

#[allow(clippy::too_many_arguments)]
const fn row(
    table: u8,
    group: &'static str,
    dimension: usize,
    order: u64,
    order_text: &'static str,
    cusps: Option<u64>,
    chi: Option<i64>,
    chamber_volume: Option<f64>,
) -> TableRow {
    TableRow { table, group, dimension, order, order_text, cusps, chi, chamber_volume, exact_volume: None, genus: None }
}

pub const TABLE1: [TableRow; 8] = [
    row(1, "A4", 3, 120, "5!", Some(5), None, Some(0.084578)),
    row(1, "D4", 3, 192, "2^3·4!", Some(16), None, Some(0.422892)),
    row(1, "D5", 4, 1920, "2^4·5!", Some(10), Some(2), Some(0.013707)),
    row(1, "E6", 5, 51_840, "2^7·3^4·5", Some(27), None, Some(0.002074)),
    row(1, "E7", 6, 2_903_040, "2^10·3^4·5·7", Some(126), Some(-52), Some(2.962092e-4)),
    row(1, "E8", 7, 696_729_600, "2^14·3^5·5^2·7", Some(2160), None, Some(4.110677e-5)),
    row(1, "A7", 5, 40_320, "8!", Some(70), None, None),
    row(1, "D8", 6, 5_160_960, "2^7·8!", Some(1120), Some(-832), Some(0.002665)),
];

pub const TABLE2: [TableRow; 3] = [
    TableRow {
        exact_volume: Some((8, 1, 1)),
        genus: Some(3),
        ..row(2, "B3", 2, 48, "2^3·3!", None, Some(-4), None)
    },
    row(2, "B4", 3, 384, "2^4·4!", Some(16), None, Some(0.211446)),
    row(2, "F4", 3, 1152, "2^7·3^2", None, None, Some(0.222228)),
];

pub fn table(number: u8) -> Option<&'static [TableRow]> {
    match number {
        1 => Some(&TABLE1),
        2 => Some(&TABLE2),
        _ => None,
    }
}

/// A class member whose Coxeter data is a cofinite hyperbolic group of the
/// row's dimension, with its report.
#[derive(Clone, Debug, Serialize)]
pub struct Candidate {
    /// Mutation sequence from the Dynkin orientation.
    #[serde(serialize_with = "crate::serde_util::one_based")]
    pub sequence: Vec<usize>,
    /// Mismatches against the row; empty when the candidate reproduces it.
    pub mismatches: Vec<String>,
    pub report: ManifoldReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowCheck {
    pub row: TableRow,
    pub class_size: usize,
    pub candidates: Vec<Candidate>,
}

impl RowCheck {
    /// Some candidate reproduces every listed value.
    pub fn passed(&self) -> bool {
        self.candidates.iter().any(|c| c.mismatches.is_empty())
    }

    /// Every candidate reproduces every listed value.
    pub fn all_agree(&self) -> bool {
        !self.candidates.is_empty() && self.candidates.iter().all(|c| c.mismatches.is_empty())
    }

    pub fn best(&self) -> Option<&Candidate> {
        self.candidates.iter().find(|c| c.mismatches.is_empty()).or(self.candidates.first())
    }
}

fn mismatches(row: &TableRow, report: &ManifoldReport) -> Vec<String> {
    let mut out = Vec::new();
    let mut check = |name: &str, ok: bool, found: String| {
        if !ok {
            out.push(format!("{name}: found {found}"));
        }
    };
    check("dimension", report.dimension == row.dimension, report.dimension.to_string());
    check(
        "order",
        report.group_order == Some(BigUint::from(row.order)),
        format!("{:?}", report.group_order),
    );
    check("torsion", report.torsion.torsion_free == Some(true), format!("{:?}", report.torsion.torsion_free));
    check("finite covolume", report.finite_covolume == Some(true), format!("{:?}", report.finite_covolume));
    match row.cusps {
        Some(n) => check("cusps", report.cusps == Some(BigUint::from(n)), format!("{:?}", report.cusps)),
        None => check("compact", report.compact, format!("{}", report.compact)),
    }
    if let Some(chi) = row.chi {
        check("chi", report.chi_x == Some(chi.into()), format!("{:?}", report.chi_x));
    }
    if let Some((num, den, pi)) = row.exact_volume {
        let ok = report
            .volume
            .as_ref()
            .is_some_and(|v| v.coeff_num == num.into() && v.coeff_den == den.into() && v.pi_power == pi);
        check("volume", ok, format!("{:?}", report.volume));
    }
    if let Some(genus) = row.genus {
        check("genus", report.genus == Some(genus.into()), format!("{:?}", report.genus));
    }
    out
}

fn is_candidate(c: &CoxeterMatrix, dimension: usize) -> bool {
    let Ok(geo) = geometric_type(c) else { return false };
    geo.kind == GeometricType::Hyperbolic
        && geo.dimension == dimension
        && has_finite_covolume(c, dimension).unwrap_or(false)
}

/// Searches the mutation class of a Dynkin orientation of the row's group
/// for diagrams whose Coxeter data is a cofinite hyperbolic group of the
/// row's dimension, one per Coxeter diagram up to isomorphism, and analyzes
/// each.
pub fn check_row(row: &TableRow, caps: &Caps) -> Result<RowCheck, ManifoldError> {
    let family = row.group.chars().next().unwrap();
    let rank: usize = row.group[1..].parse().expect("table rows name a rank");
    let start = dynkin::by_name(family, rank)
        .ok_or_else(|| ManifoldError::NoRealization(format!("no Dynkin orientation for {}", row.group)))?;
    let class = mutation_class(&start, caps);
    if !class.is_complete() {
        return Err(ManifoldError::CapExceeded(format!("mutation class of {}: {:?}", row.group, class.status)));
    }
    let mut seen: Vec<CoxeterMatrix> = Vec::new();
    let mut candidates = Vec::new();
    for member in &class.members {
        let g = Diagram::from_matrix(&member.matrix);
        let c = coxeter_data(&g)?;
        if !is_candidate(&c, row.dimension) || seen.iter().any(|s| coxeter_isomorphism(s, &c).is_some()) {
            continue;
        }
        seen.push(c);
        let realization = Realization::from_dynkin(&start, &member.sequence)?;
        let report = manifold_report(&g, &realization, caps)?;
        candidates.push(Candidate { sequence: member.sequence.clone(), mismatches: mismatches(row, &report), report });
    }
    Ok(RowCheck { row: *row, class_size: class.members.len(), candidates })
}
