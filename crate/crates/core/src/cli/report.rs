//! Running jobs and rendering their reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cech::{
    local_cohomology_split, local_cohomology_with, lyubeznik_table, vertex_label, vertex_members, CechResult, CubeSpec,
    Provenance,
};
use crate::cli::job::{Command, JobSpec};
use crate::cycles::{localize_cycle, zero_section, CharCycle, ConormalComponent, Strategy};
use crate::decompose::{associated_primes, ComponentKind};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{parse_polynomial, Polynomial, Ring};

pub const SCHEMA: &str = "charcycle-report/1";

/// Options that do not belong to the job text.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Dump every vertex of the cube.
    pub vertices: bool,
    /// Overrides the job's strategy.
    pub strategy: Option<Strategy>,
    /// Overrides the job's split.
    pub split: Option<Vec<CharCycle>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    /// Reduced grevlex basis of the prime of `T*_Z X`.
    pub conormal: Vec<String>,
    /// Reduced basis of `I(Z)`.
    pub base: Vec<String>,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexReport {
    pub vertex: Vec<usize>,
    pub cycle: Vec<ComponentReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub base: Vec<String>,
    /// Vertex label to multiplicity, e.g. `"{0, 1}" => 1`.
    pub entries: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub r: usize,
    pub cycle: Vec<ComponentReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeReport {
    pub prime: Vec<String>,
    pub kind: String,
    pub dimension: usize,
}

/// The structured result of a job.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub ring: Vec<String>,
    pub cotangent: Vec<String>,
    pub generators: Vec<Vec<String>>,
    pub strategy: String,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<Vec<ComponentReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<ComponentReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<VertexReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<TableRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pruned: Option<Vec<VertexReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<Vec<CohomologyReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lyubeznik: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<PrimeReport>>,
}

fn strings(i: &Ideal) -> Vec<String> {
    i.gens().iter().map(|g| g.to_string()).collect()
}

pub fn component_report(c: &ConormalComponent, m: u64) -> ComponentReport {
    ComponentReport {
        conormal: strings(c.prime()),
        base: strings(c.base()),
        multiplicity: m,
    }
}

pub fn cycle_report(cc: &CharCycle) -> Vec<ComponentReport> {
    cc.components().map(|(c, m)| component_report(c, m)).collect()
}

/// Rebuilds a cycle from its report over the cotangent ring `ring`.
pub fn cycle_from_report(ring: &Arc<Ring>, comps: &[ComponentReport]) -> Result<CharCycle> {
    let base = ring.base()?;
    let ideal = |r: &Arc<Ring>, gens: &[String]| -> Result<Ideal> {
        let polys = gens.iter().map(|g| parse_polynomial(r, g)).collect::<Result<Vec<Polynomial>>>()?;
        Ideal::new(r, polys)
    };
    let mut cc = CharCycle::zero(ring)?;
    for c in comps {
        let comp = ConormalComponent::with_base(&ideal(ring, &c.conormal)?, &ideal(&base, &c.base)?)?;
        cc.add(comp, c.multiplicity)?;
    }
    Ok(cc)
}

fn vertex_reports(it: impl Iterator<Item = (u32, CharCycle)>, skip_zero: bool) -> Vec<VertexReport> {
    it.filter(|(_, c)| !(skip_zero && c.is_zero()))
        .map(|(a, c)| VertexReport {
            vertex: vertex_members(a),
            cycle: cycle_report(&c),
        })
        .collect()
}

/// Component-by-component view of the cube: for each base prime, its multiplicity at every vertex.
fn table(results: &[CechResult]) -> Vec<TableRow> {
    let mut rows: BTreeMap<String, (Vec<String>, BTreeMap<String, u64>)> = BTreeMap::new();
    for res in results {
        for (a, cc) in res.cube.vertices() {
            for (c, m) in cc.components() {
                let row = rows
                    .entry(c.key().to_string())
                    .or_insert_with(|| (strings(c.base()), BTreeMap::new()));
                *row.1.entry(vertex_label(a)).or_default() += m;
            }
        }
    }
    rows.into_values().map(|(base, entries)| TableRow { base, entries }).collect()
}

fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::Single => "single",
        Strategy::Iterative => "iterative",
    }
}

/// Runs a job.
pub fn run(job: &JobSpec, opts: &RunOptions) -> Result<Report> {
    let strategy = opts.strategy.unwrap_or(job.strategy);
    let mut report = Report {
        schema: SCHEMA.into(),
        command: job.command.name().into(),
        ring: job.ring.names().to_vec(),
        cotangent: job.cotangent.names()[job.ring.nvars()..].to_vec(),
        generators: job
            .generators
            .iter()
            .map(|fs| fs.iter().map(|f| f.to_string()).collect())
            .collect(),
        strategy: strategy_name(strategy).into(),
        warnings: Vec::new(),
        module: job.module.as_ref().map(cycle_report),
        cycle: None,
        vertices: None,
        table: None,
        pruned: None,
        cohomology: None,
        lyubeznik: None,
        primes: None,
    };
    let (module, provenance) = match &job.module {
        Some(m) => (m.clone(), Provenance::Supplied),
        None => (zero_section(&job.cotangent)?, Provenance::Trusted),
    };
    match job.command {
        Command::Localize => {
            let factors: Vec<Polynomial> = job.generators.iter().flatten().cloned().collect();
            report.cycle = Some(cycle_report(&localize_cycle(&module, &factors, strategy)?));
        }
        Command::Cech => {
            let spec = CubeSpec {
                factors: job.generators.clone(),
                strategy,
            };
            let split = opts.split.as_ref().or(job.split.as_ref());
            let (cohomology, runs) = match split {
                Some(blocks) => local_cohomology_split(&module, blocks, &spec)?,
                None => {
                    let res = local_cohomology_with(&module, &spec, provenance)?;
                    (res.cohomology.clone(), vec![res])
                }
            };
            for r in &runs {
                for w in &r.warnings {
                    if !report.warnings.contains(w) {
                        report.warnings.push(w.clone());
                    }
                }
            }
            if opts.vertices {
                let mut verts = Vec::new();
                for r in &runs {
                    verts.extend(vertex_reports(r.cube.vertices().map(|(a, c)| (a, c.clone())), false));
                }
                report.vertices = Some(verts);
                report.table = Some(table(&runs));
            }
            let mut pruned = Vec::new();
            for r in &runs {
                pruned.extend(vertex_reports(r.pruned.vertices().map(|(a, c)| (a, c.clone())), true));
            }
            report.pruned = Some(pruned);
            report.cohomology = Some(
                cohomology
                    .iter()
                    .enumerate()
                    .map(|(r, c)| CohomologyReport { r, cycle: cycle_report(c) })
                    .collect(),
            );
        }
        Command::Lyubeznik => {
            let table = lyubeznik_table(&job.cotangent, &job.generator_products())?;
            report.lyubeznik = Some(table.rows().to_vec());
        }
        Command::Decompose => {
            let ideal = Ideal::new(&job.ring, job.generator_products())?;
            if ideal.is_unit() {
                return Err(Error::UnitIdeal);
            }
            report.primes = Some(
                associated_primes(&ideal)?
                    .iter()
                    .map(|c| PrimeReport {
                        prime: strings(&c.prime),
                        kind: match c.kind {
                            ComponentKind::Minimal => "minimal".into(),
                            ComponentKind::Embedded => "embedded".into(),
                        },
                        dimension: c.dimension,
                    })
                    .collect(),
            );
        }
    }
    Ok(report)
}

fn ideal_text(gens: &[String]) -> String {
    if gens.is_empty() {
        return "V(0)".into();
    }
    format!("V({})", gens.join(", "))
}

fn cycle_text(comps: &[ComponentReport]) -> String {
    if comps.is_empty() {
        return "0".into();
    }
    comps
        .iter()
        .map(|c| {
            if c.multiplicity == 1 {
                format!("T*_{}", ideal_text(&c.base))
            } else {
                format!("{}*T*_{}", c.multiplicity, ideal_text(&c.base))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn label(v: &[usize]) -> String {
    format!("{{{}}}", v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", "))
}

/// Plain-text rendering.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", r.command);
    let _ = writeln!(out, "ring: {}", r.ring.join(", "));
    for (i, g) in r.generators.iter().enumerate() {
        let _ = writeln!(out, "f{}: {}", i + 1, g.iter().map(|f| format!("({f})")).collect::<Vec<_>>().join("*"));
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    if let Some(m) = &r.module {
        let _ = writeln!(out, "module: {}", cycle_text(m));
    }
    if let Some(c) = &r.cycle {
        let _ = writeln!(out, "cycle: {}", cycle_text(c));
    }
    if let Some(vs) = &r.vertices {
        let _ = writeln!(out, "vertices:");
        for v in vs {
            let _ = writeln!(out, "  {} => {}", label(&v.vertex), cycle_text(&v.cycle));
        }
    }
    if let Some(rows) = &r.table {
        let _ = writeln!(out, "components:");
        for row in rows {
            let entries: Vec<String> = row.entries.iter().map(|(k, m)| format!("{k} => {m}")).collect();
            let _ = writeln!(out, "  {}: {}", ideal_text(&row.base), entries.join(", "));
        }
    }
    if let Some(ps) = &r.pruned {
        let _ = writeln!(out, "pruned:");
        for v in ps {
            let _ = writeln!(out, "  {} => {}", label(&v.vertex), cycle_text(&v.cycle));
        }
    }
    if let Some(hs) = &r.cohomology {
        for h in hs {
            let _ = writeln!(out, "H^{}: {}", h.r, cycle_text(&h.cycle));
        }
    }
    if let Some(t) = &r.lyubeznik {
        let _ = writeln!(out, "lyubeznik:");
        for row in t {
            let _ = writeln!(out, "  {}", row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
        }
    }
    if let Some(ps) = &r.primes {
        let _ = writeln!(out, "primes:");
        for p in ps {
            let _ = writeln!(out, "  {} {} (dimension {})", p.kind, ideal_text(&p.prime), p.dimension);
        }
    }
    out
}

/// Structured rendering (pretty JSON, stable key order).
pub fn render_json(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("serializable") + "\n"
}
