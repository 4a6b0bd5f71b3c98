use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use cayley2::intmath::{is_square, isqrt};
use cayley2::procedures::{extension_coefficient, interval_ceil};
use cayley2::tables::{certified_diameter, verify_table, Certification, RowCheck, Status, VerifyOptions};
use cayley2::{
    digraph_of, extend, extended_family, find_mdds, gamma_infinite, gamma_max_coeff, optimal_diameters,
    qe_improve, quotient, search::qe_improve_digraph, smith_normal_form, table2_family, table4_family,
    CayleyDigraph2, Error, FamilyId, FamilyMember, ImprovementRecord, LShape, TightnessReport,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "cayley2", version, about = "Minimum distance diagrams of 2-Cayley digraphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Largest order certified by BFS
    #[arg(long, global = true, default_value_t = cayley2::digraph::DEFAULT_BFS_CAP)]
    pub max_order: u64,
    /// Certify diameters through minimum distance diagrams only
    #[arg(long, global = true)]
    pub formula_only: bool,
    /// JSON output (default)
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// CSV output (verify and figure2)
    #[arg(long, global = true)]
    pub csv: bool,
    /// Seed echoed into every record
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower bound ceil(sqrt(3N)) - 2 on the diameter
    Lb { n: u64 },
    /// Diameter of a digraph, e.g. "16;2;5" or "2,4;0,1;1,1"
    Diam { spec: String },
    /// All minimum distance diagrams of a digraph
    Mdd { spec: String },
    /// Smith normal form of an L-shape and the digraph it tiles
    Snf {
        /// "l,h,w,y" or four separate numbers
        #[arg(num_args = 1..=4, required = true)]
        sides: Vec<String>,
    },
    /// m-extension of a digraph
    Extend { spec: String, m: u64 },
    /// m-quotient of a digraph
    Quotient { spec: String, m: u64 },
    /// Extension coefficient c(N)
    Coeff { n: u64 },
    /// Optimal cyclic and non-cyclic diameters for order N
    Search { n: u64 },
    /// Member of a named family
    Family {
        id: FamilyId,
        param: u64,
        /// Extension factor for the max-coeff families
        #[arg(long)]
        m: Option<u64>,
    },
    /// Quotient-extension improvement of a k-tight order or digraph
    Improve {
        /// Order N or a digraph spec
        target: String,
        /// Tightness of the current diameter when `target` is an order
        k: Option<u64>,
    },
    /// Reproduce a reference table
    Verify {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        table: u8,
        /// Largest family parameter for tables 2 and 4
        #[arg(long, default_value_t = 8)]
        t_max: u64,
    },
    /// CSV of c(N) for 4 <= N <= N_max, skipping N = 3t^2
    Figure2 {
        #[arg(default_value_t = 300)]
        n_max: u64,
    },
}

#[derive(Debug, Serialize)]
struct DigraphView {
    spec: String,
    display: String,
    group: [u64; 2],
    a: [u64; 2],
    b: [u64; 2],
    order: u64,
}

fn spec_of(d: &CayleyDigraph2) -> String {
    let (g, a, b) = (d.group(), d.a(), d.b());
    if g.is_cyclic() {
        format!("{};{};{}", g.s2(), a.y, b.y)
    } else {
        format!("{},{};{},{};{},{}", g.s1(), g.s2(), a.x, a.y, b.x, b.y)
    }
}

fn view(d: &CayleyDigraph2) -> DigraphView {
    let (g, a, b) = (d.group(), d.a(), d.b());
    DigraphView {
        spec: spec_of(d),
        display: d.to_string(),
        group: [g.s1(), g.s2()],
        a: [a.x, a.y],
        b: [b.x, b.y],
        order: d.order(),
    }
}

fn shape_view(s: &LShape) -> Value {
    json!({
        "shape": s.to_string(),
        "sides": s.sides(),
        "area": s.area(),
        "diameter": s.diameter().ok(),
        "gcd": s.gcd(),
    })
}

fn report_view(r: &TightnessReport, cert: Certification) -> Value {
    json!({
        "order": r.order,
        "lb": r.lower_bound,
        "diameter": r.diameter,
        "k": r.k,
        "certification": cert,
    })
}

fn member_view(m: &FamilyMember, g: &Global) -> Result<Value, Error> {
    let (report, cert) = measured(&m.digraph, g)?;
    Ok(json!({
        "digraph": view(&m.digraph),
        "mdd": shape_view(&m.mdd),
        "formula": report_view(&m.report, Certification::Mdd),
        "measured": report_view(&report, cert),
    }))
}

fn improvement_view(r: &ImprovementRecord, g: &Global) -> Result<Value, Error> {
    let (after, cert) = measured(&r.improved, g)?;
    let original = match &r.original {
        Some(o) => {
            let (rep, c) = measured(o, g)?;
            json!({ "digraph": view(o), "report": report_view(&rep, c) })
        }
        None => json!({ "report": report_view(&r.original_report, Certification::Formula) }),
    };
    Ok(json!({
        "original": original,
        "m": r.m,
        "intermediate": shape_view(&r.intermediate),
        "improved": view(&r.improved),
        "improved_mdd": shape_view(&r.improved_mdd),
        "formula": report_view(&r.improved_report, Certification::Mdd),
        "measured": report_view(&after, cert),
    }))
}

fn opts(g: &Global, t_max: u64) -> VerifyOptions {
    VerifyOptions {
        max_order: g.max_order,
        formula_only: g.formula_only,
        t_max,
    }
}

fn measured(d: &CayleyDigraph2, g: &Global) -> Result<(TightnessReport, Certification), Error> {
    let (diam, cert) = certified_diameter(d, &opts(g, 0))?;
    Ok((TightnessReport::new(d.order(), diam)?, cert))
}

fn parse_shape(sides: &[String]) -> Result<LShape, Error> {
    if sides.len() == 1 {
        return sides[0].parse();
    }
    if sides.len() != 4 {
        return Err(Error::Parse(format!("expected 4 sides, got {}", sides.len())));
    }
    sides.join(",").parse()
}

/// Output of one command: a JSON record, a CSV body, or both.
pub struct Outcome {
    pub record: Value,
    pub csv: Option<String>,
    pub code: u8,
}

impl Outcome {
    fn ok(record: Value) -> Self {
        Outcome {
            record,
            csv: None,
            code: EXIT_OK,
        }
    }
}

fn coefficient_value(n: u64) -> Result<Value, Error> {
    if is_square(3 * n as u128) && n > 0 {
        let t = isqrt((n / 3) as u128);
        return Ok(json!({
            "n": n,
            "infinite": true,
            "coefficient": format!("infinite (N=3t², t={t})"),
        }));
    }
    let c = extension_coefficient(n)?;
    let (t, i, ceil) = interval_ceil(n);
    Ok(json!({
        "n": n,
        "infinite": false,
        "coefficient": c,
        "interval": { "t": t, "i": i, "max": ceil },
    }))
}

fn rows_csv(rows: &[RowCheck]) -> String {
    let mut out = String::from("table,row,status,certification,detail\n");
    for r in rows {
        let status = serde_json::to_value(r.status).unwrap();
        let cert = serde_json::to_value(r.certification).unwrap();
        out.push_str(&format!(
            "{},\"{}\",{},{},\"{}\"\n",
            r.table,
            r.row,
            status.as_str().unwrap_or_default(),
            cert.as_str().unwrap_or_default(),
            r.detail.replace('"', "\"\"")
        ));
    }
    out
}

pub fn run(cli: &Cli) -> Result<Outcome, Error> {
    let g = &cli.global;
    let csv_only = matches!(cli.command, Command::Verify { .. } | Command::Figure2 { .. });
    if g.csv && !csv_only {
        return Err(Error::Parse("--csv is only available for verify and figure2".into()));
    }
    let (name, input, result) = match &cli.command {
        Command::Lb { n } => {
            let lb = cayley2::intmath::lower_bound_diameter(*n);
            ("lb", json!({ "n": n }), json!({ "lb": lb, "certification": Certification::Formula }))
        }
        Command::Diam { spec } => {
            let d: CayleyDigraph2 = spec.parse()?;
            let (r, cert) = measured(&d, g)?;
            ("diam", json!({ "spec": spec }), json!({ "digraph": view(&d), "report": report_view(&r, cert) }))
        }
        Command::Mdd { spec } => {
            let d: CayleyDigraph2 = spec.parse()?;
            let mdds: Vec<Value> = find_mdds(&d)?.iter().map(shape_view).collect();
            (
                "mdd",
                json!({ "spec": spec }),
                json!({ "digraph": view(&d), "mdds": mdds, "certification": Certification::Mdd }),
            )
        }
        Command::Snf { sides } => {
            let shape = parse_shape(sides)?;
            let snf = smith_normal_form(&cayley2::matrix_of(&shape))?;
            let d = digraph_of(&shape)?;
            (
                "snf",
                json!({ "shape": shape.to_string() }),
                json!({
                    "s1": snf.s1,
                    "s2": snf.s2,
                    "u": snf.u.0,
                    "v": snf.v.0,
                    "digraph": view(&d),
                    "mdd": shape_view(&shape),
                    "certification": Certification::Mdd,
                }),
            )
        }
        Command::Extend { spec, m } => {
            let d: CayleyDigraph2 = spec.parse()?;
            let e = extend(&d, *m)?;
            let (before, c0) = measured(&d, g)?;
            let (after, c1) = measured(&e, g)?;
            (
                "extend",
                json!({ "spec": spec, "m": m }),
                json!({
                    "source": { "digraph": view(&d), "report": report_view(&before, c0) },
                    "extension": { "digraph": view(&e), "report": report_view(&after, c1) },
                    "tight_extension": cayley2::is_tight_extension(d.order(), *m),
                }),
            )
        }
        Command::Quotient { spec, m } => {
            let d: CayleyDigraph2 = spec.parse()?;
            let q = quotient(&d, *m)?;
            let (before, c0) = measured(&d, g)?;
            let (after, c1) = measured(&q, g)?;
            (
                "quotient",
                json!({ "spec": spec, "m": m }),
                json!({
                    "source": { "digraph": view(&d), "report": report_view(&before, c0) },
                    "quotient": { "digraph": view(&q), "report": report_view(&after, c1) },
                }),
            )
        }
        Command::Coeff { n } => ("coeff", json!({ "n": n }), coefficient_value(*n)?),
        Command::Search { n } => {
            let r = optimal_diameters(*n)?;
            let mut witnesses = serde_json::Map::new();
            for (kind, w) in &r.witnesses {
                let (rep, cert) = measured(&w.digraph, g)?;
                let key = serde_json::to_value(kind).unwrap();
                witnesses.insert(
                    key.as_str().unwrap_or_default().to_string(),
                    json!({ "digraph": view(&w.digraph), "mdd": shape_view(&w.mdd), "report": report_view(&rep, cert) }),
                );
            }
            (
                "search",
                json!({ "n": n }),
                json!({
                    "lb": r.lb,
                    "d1": r.d1,
                    "d2": r.d2,
                    "d3": r.d3,
                    "certification": Certification::Mdd,
                    "witnesses": witnesses,
                }),
            )
        }
        Command::Family { id, param, m } => {
            let result = family_value(*id, *param, *m, g)?;
            ("family", json!({ "id": id, "param": param, "m": m }), result)
        }
        Command::Improve { target, k } => {
            let rec = if target.contains(';') {
                let d: CayleyDigraph2 = target.parse()?;
                qe_improve_digraph(&d)?
            } else {
                let n: u64 = target
                    .parse()
                    .map_err(|_| Error::Parse(format!("{target:?} is neither an order nor a digraph spec")))?;
                let k = k.ok_or_else(|| Error::Parse("improve N needs the tightness k".into()))?;
                let lb = cayley2::intmath::lower_bound_diameter(n);
                qe_improve(n, k, lb + k)?
            };
            let result = match rec {
                Some(r) => json!({ "improved": true, "record": improvement_view(&r, g)? }),
                None => json!({ "improved": false }),
            };
            ("improve", json!({ "target": target, "k": k }), result)
        }
        Command::Verify { table, t_max } => {
            let rows = verify_table(*table, &opts(g, *t_max))?;
            let failed = rows.iter().filter(|r| r.status == Status::Fail).count();
            let skipped = rows.iter().filter(|r| r.status == Status::Skipped).count();
            let passed = rows.len() - failed - skipped;
            let code = if failed > 0 {
                EXIT_FAILED
            } else if skipped > 0 {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            let record = json!({
                "command": "verify",
                "input": { "table": table, "t_max": t_max, "max_order": g.max_order, "formula_only": g.formula_only },
                "seed": g.seed,
                "result": { "passed": passed, "failed": failed, "skipped": skipped, "rows": rows },
            });
            let csv = g.csv.then(|| rows_csv(&rows));
            return Ok(Outcome { record, csv, code });
        }
        Command::Figure2 { n_max } => {
            let mut csv = String::from("N,c(N)\n");
            let mut points = Vec::new();
            for n in 4..=*n_max {
                if is_square(3 * n as u128) {
                    continue;
                }
                let c = extension_coefficient(n)?;
                csv.push_str(&format!("{n},{c}\n"));
                points.push(json!([n, c]));
            }
            let record = json!({
                "command": "figure2",
                "input": { "n_max": n_max },
                "seed": g.seed,
                "result": { "points": points, "certification": Certification::Formula },
            });
            let csv = (!g.json).then_some(csv);
            return Ok(Outcome { record, csv, code: EXIT_OK });
        }
    };
    Ok(Outcome::ok(json!({
        "command": name,
        "input": input,
        "seed": g.seed,
        "result": result,
    })))
}

fn family_value(id: FamilyId, param: u64, m: Option<u64>, g: &Global) -> Result<Value, Error> {
    let max_coeff = |idx: u8| -> Result<Value, Error> {
        let member = match m {
            Some(m) => extended_family(param, idx, m)?,
            None => gamma_max_coeff(param, idx)?,
        };
        member_view(&member, g)
    };
    match id {
        FamilyId::InfiniteTight => member_view(&gamma_infinite(param)?, g),
        FamilyId::MaxCoeff1 => max_coeff(1),
        FamilyId::MaxCoeff2 => max_coeff(2),
        FamilyId::MaxCoeff3 => max_coeff(3),
        FamilyId::Dl1 | FamilyId::Dl2 | FamilyId::Dl3 => {
            let idx = match id {
                FamilyId::Dl1 => 1,
                FamilyId::Dl2 => 2,
                _ => 3,
            };
            let r = table2_family(idx, param)?;
            Ok(json!({
                "base": member_view(&r.base, g)?,
                "extension": member_view(&r.extension, g)?,
            }))
        }
        _ => improvement_view(&table4_family(id, param)?, g),
    }
}

pub fn emit(out: &mut impl Write, o: &Outcome) -> std::io::Result<()> {
    match &o.csv {
        Some(csv) => out.write_all(csv.as_bytes()),
        None => {
            serde_json::to_writer_pretty(&mut *out, &o.record)?;
            writeln!(out)
        }
    }
}
