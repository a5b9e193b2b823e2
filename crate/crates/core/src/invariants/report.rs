//! Per-k report on unions of sets of lengths: AAP structure, gaps, density.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::AtomList;
use crate::rational::Rational;

use super::aap::{aap_decompose, AapDecomposition};
use super::elasticity::{elasticity_via_h0, ElasticityCertificate};
use super::unions::{factoriality, unions_profile, Factoriality, UnionsProfile};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub k: u32,
    pub lambda_k: u32,
    pub rho_k: u32,
    pub size_u_k: usize,
    /// `|U_k| / k`.
    pub density: Rational,
    pub aap: Option<AapDecomposition>,
    /// Largest distance inside `U_k`.
    pub max_distance: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "regime", rename_all = "kebab-case")]
pub enum Regime {
    Simple,
    /// `rho_k` is expected to be infinite for large `k`; only its growth on
    /// the computed range is shown.
    NonSimple {
        growth: Vec<(u32, u32)>,
    },
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub k_min: u32,
    pub k_max: u32,
    /// Minimum of the observed distance set, if any distance was seen.
    pub d_hat: Option<u32>,
    pub factoriality: Option<Factoriality>,
    pub rows: Vec<ReportRow>,
    /// Largest AAP bound over the rows.
    pub max_m: Option<u32>,
    /// Smallest `k` from which every row has an AAP with bound at most the last row's.
    pub onset_k0: Option<u32>,
    pub max_rho_gap: Option<u32>,
    pub max_lambda_gap: Option<i64>,
    pub elasticity: ElasticityCertificate,
    /// `(1 / d_hat) (rho - 1 / rho)`.
    pub predicted_density: Option<Rational>,
    /// `| |U_kmax| / k_max - predicted |`.
    pub density_deviation: Option<Rational>,
    pub notes: Vec<String>,
    pub regime: Regime,
    pub exact: bool,
    pub truncated: bool,
}

/// Builds the report for `k` in `[k_min, k_max]`.
///
/// `simple` is the simplicity verdict from the essential-support analysis,
/// when available.
pub fn structure_theorem_report(
    atoms: &AtomList,
    k_min: u32,
    k_max: u32,
    element_budget: usize,
    simple: Option<bool>,
) -> Result<StructureReport> {
    if k_min < 1 || k_min > k_max {
        return Err(Error::InvalidArgument(format!("bad k range {k_min}..{k_max}")));
    }
    let profile = unions_profile(atoms, k_max, element_budget)?;
    let elasticity = elasticity_via_h0(atoms)?;
    build(atoms, &profile, k_min, k_max, elasticity, simple)
}

fn build(
    atoms: &AtomList,
    profile: &UnionsProfile,
    k_min: u32,
    k_max: u32,
    elasticity: ElasticityCertificate,
    simple: Option<bool>,
) -> Result<StructureReport> {
    let d_hat = profile.distances.first().copied();
    let mut notes = Vec::new();
    let factoriality = if d_hat.is_none() { factoriality(atoms)? } else { None };
    let rows: Vec<ReportRow> = (k_min..=k_max.min(profile.k_max()))
        .map(|k| {
            let u = &profile.unions[&k];
            let set: Vec<i64> = u.values.iter().map(|&v| v as i64).collect();
            ReportRow {
                k,
                lambda_k: profile.lambda_k[&k],
                rho_k: profile.rho_k[&k],
                size_u_k: u.len(),
                density: Rational::new(u.len() as i64, k as i64),
                aap: aap_decompose(&set, Some(d_hat.unwrap_or(1))),
                max_distance: u.values.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0),
            }
        })
        .collect();
    if rows.len() < (k_max - k_min + 1) as usize {
        notes.push(format!("element budget exhausted; rows end at k = {}", profile.k_max()));
    }

    let ms: Vec<Option<u32>> = rows.iter().map(|r| r.aap.as_ref().map(|a| a.m)).collect();
    let max_m = ms
        .iter()
        .copied()
        .collect::<Option<Vec<_>>>()
        .and_then(|v| v.into_iter().max());
    let onset_k0 = ms.last().copied().flatten().map(|last| {
        let mut k0 = rows.last().map_or(k_min, |r| r.k);
        for (r, m) in rows.iter().zip(&ms).rev() {
            match m {
                Some(m) if *m <= last => k0 = r.k,
                _ => break,
            }
        }
        k0
    });
    let max_rho_gap = rows.windows(2).map(|w| w[1].rho_k.saturating_sub(w[0].rho_k)).max();
    let max_lambda_gap = rows
        .windows(2)
        .map(|w| w[0].lambda_k as i64 - w[1].lambda_k as i64)
        .max();

    let rho = elasticity.value;
    let predicted_density = d_hat.map(|d| (rho - rho.recip()) / Rational::from_integer(d as i64));
    let density_deviation = predicted_density.zip(rows.last()).map(|(p, r)| (r.density - p).abs());
    match (d_hat, factoriality) {
        (None, Some(f)) => notes.push(format!(
            "distance set empty ({}); density formula not applicable",
            match f {
                Factoriality::Factorial => "factorial",
                Factoriality::HalfFactorial => "half-factorial",
            }
        )),
        (None, None) => notes.push("no distance observed within budget; density formula not applicable".into()),
        _ => {}
    }
    if !elasticity.exact {
        notes.push("atom list incomplete: elasticity and rho_k are lower bounds".into());
    }

    let regime = match simple {
        Some(true) => Regime::Simple,
        Some(false) => {
            notes.push("non-simple: unbounded growth of rho_k expected; growth table only".into());
            Regime::NonSimple {
                growth: rows.iter().map(|r| (r.k, r.rho_k)).collect(),
            }
        }
        None => Regime::Unknown,
    };

    Ok(StructureReport {
        k_min,
        k_max,
        d_hat,
        factoriality,
        rows,
        max_m,
        onset_k0,
        max_rho_gap,
        max_lambda_gap,
        elasticity,
        predicted_density,
        density_deviation,
        notes,
        regime,
        exact: profile.exact,
        truncated: profile.truncated,
    })
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

impl StructureReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,lambda_k,rho_k,size_U_k,density,aap_M\n");
        for r in &self.rows {
            let m = opt(&r.aap.as_ref().map(|a| a.m));
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.k, r.lambda_k, r.rho_k, r.size_u_k, r.density, m
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "k range         {}..{}", self.k_min, self.k_max);
        let _ = writeln!(out, "min distance    {}", opt(&self.d_hat));
        let _ = writeln!(
            out,
            "elasticity      {}{}",
            self.elasticity.value,
            if self.elasticity.exact { "" } else { " (lower bound)" }
        );
        let _ = writeln!(out, "predicted |U_k|/k  {}", opt(&self.predicted_density));
        let _ = writeln!(out, "deviation at k_max {}", opt(&self.density_deviation));
        let _ = writeln!(out, "max AAP bound   {}", opt(&self.max_m));
        let _ = writeln!(out, "onset k0        {}", opt(&self.onset_k0));
        let _ = writeln!(out, "max rho gap     {}", opt(&self.max_rho_gap));
        let _ = writeln!(out, "max lambda gap  {}", opt(&self.max_lambda_gap));
        let header = ["k", "lambda_k", "rho_k", "|U_k|", "density", "d", "M", "maxgap"];
        let table: Vec<[String; 8]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.k.to_string(),
                    r.lambda_k.to_string(),
                    r.rho_k.to_string(),
                    r.size_u_k.to_string(),
                    r.density.to_string(),
                    opt(&r.aap.as_ref().map(|a| a.d)),
                    opt(&r.aap.as_ref().map(|a| a.m)),
                    r.max_distance.to_string(),
                ]
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                table
                    .iter()
                    .map(|row| row[c].len())
                    .chain([header[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let _ = writeln!(out, "{}", line(header.to_vec()));
        for row in &table {
            let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
        }
        if let Regime::NonSimple { growth } = &self.regime {
            let g: Vec<String> = growth.iter().map(|(k, r)| format!("{k}:{r}")).collect();
            let _ = writeln!(out, "rho_k growth    {}", g.join(" "));
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        if self.truncated {
            let _ = writeln!(out, "note: truncated by element budget");
        }
        out
    }
}
