use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use pcgrass::coupling::CouplingMap;
use pcgrass::io::{self, format_number, Format, Mode, PcMatrix};
use pcgrass::twoform::evaluation_table;
use pcgrass::{
    reduce_iterative, wedge, AdditiveMatrix, Convention, CouplingMatrix, Embedding, EmbeddingKind, PairField,
    ReduceOptions, TwoVector, VectorN,
};
use serde_json::{json, Map, Value};

use crate::{Cli, Command, EmbeddingArgs, MatrixInput};

pub struct Outcome {
    pub text: String,
    pub exit: u8,
}

/// A command result: the JSON report plus a CSV rendering.
struct Report {
    json: Value,
    csv: String,
    exit: u8,
}

impl Report {
    fn new(command: &str, fields: Value, csv: String) -> Self {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(command));
        obj.insert("version".into(), json!(pcgrass::VERSION));
        if let Value::Object(extra) = fields {
            obj.extend(extra);
        }
        Self { json: Value::Object(obj), csv, exit: 0 }
    }
}

fn output_format(cli: &Cli) -> Format {
    cli.format
        .or_else(|| cli.output.as_deref().and_then(Format::from_path))
        .unwrap_or(Format::Json)
}

pub fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    if !(cli.tol > 0.0) {
        bail!("--tol must be positive, got {}", cli.tol);
    }
    let report = match &cli.command {
        Command::Check(input) => check(input, cli.tol)?,
        Command::Convert(input) => convert(input, cli.tol)?,
        Command::Indices { matrix, embedding, convention } => indices(matrix, embedding, *convention, cli.tol)?,
        Command::Deviations(input) => deviations(input, cli.tol)?,
        Command::Embed { matrix, embedding } => embed(matrix, embedding, cli.tol)?,
        Command::Wedge { input, u, v } => wedge_cmd(input.as_deref(), u.as_deref(), v.as_deref(), cli.tol)?,
        Command::Plucker { input } => plucker(input, cli.tol)?,
        Command::Diagnose { input, n, lambda, rank_tol, export_m, input_format } => {
            let n = match (input, n) {
                (Some(path), None) => {
                    let m = load_matrix_from(path, *input_format, None, cli.tol)?;
                    m.to_rows().len()
                }
                (None, Some(n)) => *n,
                _ => bail!("diagnose needs exactly one of an input matrix or --n"),
            };
            diagnose(n, *lambda, *rank_tol, export_m.as_deref())?
        }
        Command::Reduce { matrix, lambda, eta, max_steps, stop_tol, trajectory } => {
            let options = ReduceOptions { lambda: *lambda, eta: *eta, max_steps: *max_steps, tol: *stop_tol };
            reduce(matrix, &options, trajectory.as_deref(), cli.tol)?
        }
        Command::Twoform(input) => twoform(input, cli.tol)?,
    };
    let text = match output_format(cli) {
        Format::Json => serde_json::to_string_pretty(&report.json)? + "\n",
        Format::Csv => report.csv,
    };
    Ok(Outcome { text, exit: report.exit })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_matrix_from(path: &Path, format: Option<Format>, mode: Option<Mode>, tol: f64) -> Result<PcMatrix> {
    let format = format
        .or_else(|| Format::from_path(path))
        .with_context(|| format!("cannot infer format of {}; pass --input-format", path.display()))?;
    let text = read(path)?;
    io::parse_matrix(&text, format, mode, tol).with_context(|| format!("invalid matrix in {}", path.display()))
}

fn load_matrix(input: &MatrixInput, tol: f64) -> Result<PcMatrix> {
    load_matrix_from(&input.input, input.input_format, input.mode, tol)
}

fn load_additive(input: &MatrixInput, tol: f64) -> Result<AdditiveMatrix> {
    Ok(load_matrix(input, tol)?.to_additive()?)
}

fn num(v: f64) -> Value {
    json!(v)
}

fn rows_json(rows: &[Vec<f64>]) -> Value {
    json!(rows)
}

fn one_based_pair(i: usize, j: usize) -> Value {
    json!([i + 1, j + 1])
}

fn csv_table(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn check(input: &MatrixInput, tol: f64) -> Result<Report> {
    let matrix = load_matrix(input, tol)?;
    let a = matrix.to_additive()?;
    let max = a.max_abs_deviation();
    let consistent = a.is_consistent(tol);
    let verdict = if consistent { "consistent" } else { "inconsistent" };
    let summary = format!("{verdict}, max|Δ| = {max}");
    let mut report = Report::new(
        "check",
        json!({
            "n": a.n(),
            "mode": matrix.mode(),
            "consistent": consistent,
            "max_abs_deviation": max,
            "tol": tol,
            "summary": summary,
        }),
        csv_table("consistent,max_abs_deviation", [vec![consistent.to_string(), format_number(max)]]),
    );
    report.exit = if consistent { 0 } else { 1 };
    Ok(report)
}

fn convert(input: &MatrixInput, tol: f64) -> Result<Report> {
    let (rows, to) = match load_matrix(input, tol)? {
        PcMatrix::Additive(a) => (a.to_multiplicative()?.to_rows(), Mode::Multiplicative),
        PcMatrix::Multiplicative(m) => (m.to_additive()?.to_rows(), Mode::Additive),
    };
    let file = io::matrix_file(rows.clone(), to);
    let mut fields = serde_json::to_value(&file)?;
    fields["from"] = json!(match to {
        Mode::Additive => Mode::Multiplicative,
        Mode::Multiplicative => Mode::Additive,
    });
    Ok(Report::new("convert", fields, io::write_csv_grid(&rows)))
}

fn load_embedding(args: &EmbeddingArgs, a: &AdditiveMatrix) -> Result<Option<Embedding>> {
    match args.embedding {
        EmbeddingKind::Planar => Ok(None),
        EmbeddingKind::Orthogonal => {
            let (scores, _) = a.recover_scores();
            Ok(Some(Embedding::orthogonal_from_scores(&scores)?))
        }
        EmbeddingKind::Custom => {
            let path = args.embedding_file.as_deref().context("--embedding custom needs --embedding-file")?;
            let e = io::parse_embedding(&read(path)?).with_context(|| format!("invalid embedding in {}", path.display()))?;
            if e.n() != a.n() {
                bail!("embedding has n = {} but the matrix has n = {}", e.n(), a.n());
            }
            Ok(Some(e))
        }
    }
}

fn pair_field(args: &EmbeddingArgs, a: &AdditiveMatrix) -> Result<PairField> {
    Ok(match load_embedding(args, a)? {
        Some(e) => e.pair_subspaces(),
        None => PairField::planar_from_matrix(a),
    })
}

fn indices(input: &MatrixInput, args: &EmbeddingArgs, convention: Convention, tol: f64) -> Result<Report> {
    let a = load_additive(input, tol)?;
    let i_alg = a.algebraic_inconsistency();
    let i_geom = pair_field(args, &a)?.geometric_inconsistency(convention);
    let quadratic = if a.n() >= 3 {
        let map = CouplingMap::new(a.n())?;
        let delta = a.all_triad_deviations();
        Some(map.apply(delta.values())?.iter().map(|x| x * x).sum::<f64>())
    } else {
        None
    };
    Ok(Report::new(
        "indices",
        json!({
            "n": a.n(),
            "embedding": args.embedding,
            "convention": convention,
            "I_alg": i_alg,
            "I_geom": i_geom,
            "quadratic_form": quadratic,
        }),
        csv_table(
            "I_alg,I_geom,quadratic_form",
            [vec![format_number(i_alg), format_number(i_geom), quadratic.map(format_number).unwrap_or_default()]],
        ),
    ))
}

fn deviations(input: &MatrixInput, tol: f64) -> Result<Report> {
    let a = load_additive(input, tol)?;
    let d = a.all_triad_deviations();
    let triads: Vec<(usize, usize, usize)> = pcgrass::index::triads(a.n()).collect();
    let entries: Vec<Value> = triads
        .iter()
        .zip(d.values())
        .map(|(&(i, j, k), &v)| json!({"triad": [i + 1, j + 1, k + 1], "delta": v}))
        .collect();
    let csv = csv_table(
        "i,j,k,delta",
        triads
            .iter()
            .zip(d.values())
            .map(|(&(i, j, k), &v)| vec![(i + 1).to_string(), (j + 1).to_string(), (k + 1).to_string(), format_number(v)]),
    );
    Ok(Report::new(
        "deviations",
        json!({
            "n": a.n(),
            "values": d.values(),
            "triads": entries,
            "I_alg": d.squared_norm(),
            "max_abs_deviation": d.max_abs(),
        }),
        csv,
    ))
}

fn pair_header(n: usize) -> String {
    pcgrass::index::pairs(n).map(|(k, l)| format!("p_{}_{}", k + 1, l + 1)).collect::<Vec<_>>().join(",")
}

fn embed(input: &MatrixInput, args: &EmbeddingArgs, tol: f64) -> Result<Report> {
    let a = load_additive(input, tol)?;
    let field = pair_field(args, &a)?;
    let vectors = load_embedding(args, &a)?.map(|e| e.vectors().iter().map(|v| v.as_slice().to_vec()).collect::<Vec<_>>());
    let pairs: Vec<Value> = field
        .iter()
        .map(|(i, j, w)| {
            json!({
                "pair": one_based_pair(i, j),
                "coords": w.coords(),
                "degenerate": w.is_zero(),
            })
        })
        .collect();
    let degenerate = field.iter().filter(|(_, _, w)| w.is_zero()).count();
    let csv = csv_table(
        &format!("i,j,degenerate,{}", pair_header(field.dim())),
        field.iter().map(|(i, j, w)| {
            let mut row = vec![(i + 1).to_string(), (j + 1).to_string(), w.is_zero().to_string()];
            row.extend(w.coords().iter().map(|c| format_number(*c)));
            row
        }),
    );
    Ok(Report::new(
        "embed",
        json!({
            "n": a.n(),
            "embedding": args.embedding,
            "vectors": vectors,
            "pairs": pairs,
            "degenerate_pairs": degenerate,
        }),
        csv,
    ))
}

fn residual_report(p: &TwoVector, tol: f64) -> (Value, String) {
    let residuals = p.plucker_residuals();
    let list: Vec<Value> = residuals
        .residuals()
        .iter()
        .map(|(q, r)| json!({"quad": q.map(|x| x + 1), "residual": r}))
        .collect();
    let normalized = p.normalize_grassmann().ok().map(|q| q.coords().to_vec());
    let value = json!({
        "two_vector": p,
        "residuals": list,
        "max_abs_residual": residuals.max_abs(),
        "decomposable": p.is_decomposable(tol),
        "zero": p.is_zero(),
        "normalized": normalized,
    });
    let csv = csv_table(
        "k,l,m,q,residual",
        residuals.residuals().iter().map(|(q, r)| {
            let mut row: Vec<String> = q.iter().map(|x| (x + 1).to_string()).collect();
            row.push(format_number(*r));
            row
        }),
    );
    (value, csv)
}

fn wedge_cmd(input: Option<&Path>, u: Option<&[f64]>, v: Option<&[f64]>, tol: f64) -> Result<Report> {
    let (u, v) = match (input, u, v) {
        (Some(path), None, None) => io::parse_vector_pair(&read(path)?)?,
        (None, Some(u), Some(v)) => (VectorN::new(u.to_vec())?, VectorN::new(v.to_vec())?),
        _ => bail!("wedge needs either an input file or both --u and --v"),
    };
    let p = wedge(&u, &v)?;
    let (mut fields, _) = residual_report(&p, tol);
    fields["u"] = json!(u.as_slice());
    fields["v"] = json!(v.as_slice());
    let csv = csv_table(
        "k,l,p",
        pcgrass::index::pairs(p.n())
            .zip(p.coords())
            .map(|((k, l), c)| vec![(k + 1).to_string(), (l + 1).to_string(), format_number(*c)]),
    );
    Ok(Report::new("wedge", fields, csv))
}

fn plucker(input: &Path, tol: f64) -> Result<Report> {
    let p = io::parse_two_vector(&read(input)?).with_context(|| format!("invalid 2-vector in {}", input.display()))?;
    let (fields, csv) = residual_report(&p, tol);
    Ok(Report::new("plucker", fields, csv))
}

fn diagnose(n: usize, lambda: f64, rank_tol: f64, export_m: Option<&Path>) -> Result<Report> {
    if lambda < 0.0 {
        bail!("--lambda must be >= 0, got {lambda}");
    }
    let base = CouplingMatrix::build(n)?;
    let m = if lambda > 0.0 { base.regularize(lambda)? } else { base };
    if let Some(path) = export_m {
        let rows: Vec<Vec<f64>> = m.as_matrix().row_iter().map(|r| r.iter().copied().collect()).collect();
        fs::write(path, io::write_csv_grid(&rows)).with_context(|| format!("writing {}", path.display()))?;
    }
    let d = m.diagnose(rank_tol)?;
    let csv = csv_table(
        "index,eigenvalue",
        d.eigenvalues.iter().enumerate().map(|(i, e)| vec![(i + 1).to_string(), format_number(*e)]),
    );
    Ok(Report::new(
        "diagnose",
        json!({
            "n": n,
            "T": d.size,
            "rank": d.rank,
            "degenerate": d.degenerate,
            "kernel_dim": d.kernel_dim(),
            "lambda": lambda,
            "rank_tol": rank_tol,
            "eigenvalues": d.eigenvalues,
            "expected_rank": pcgrass::coupling::expected_rank(n),
        }),
        csv,
    ))
}

fn reduce(input: &MatrixInput, options: &ReduceOptions, trajectory: Option<&Path>, tol: f64) -> Result<Report> {
    let a = load_additive(input, tol)?;
    let t = reduce_iterative(&a, options)?;
    if let Some(path) = trajectory {
        fs::write(path, io::trajectory_json_lines(t.records())).with_context(|| format!("writing {}", path.display()))?;
    }
    let rows = t.final_matrix.to_rows();
    let last = t.records().last().expect("initial record");
    Ok(Report::new(
        "reduce",
        json!({
            "n": a.n(),
            "eta": t.eta,
            "lambda": t.lambda,
            "stop_tol": options.tol,
            "max_steps": options.max_steps,
            "converged": t.converged,
            "iterations": t.iterations(),
            "I_alg_final": last.i_alg,
            "I_geom_final": last.i_geom,
            "trajectory": t.records().collect::<Vec<_>>(),
            "final": io::matrix_file(rows.clone(), Mode::Additive),
        }),
        io::write_csv_grid(&rows),
    ))
}

fn twoform(input: &MatrixInput, tol: f64) -> Result<Report> {
    let a = load_additive(input, tol)?;
    let table = evaluation_table(&a)?;
    let closed = pcgrass::is_closed_discrete(&a, tol);
    let max_gap = table.iter().fold(0.0f64, |m, r| m.max((r.omega - r.a_ij).abs()));
    let rows: Vec<Value> = table
        .iter()
        .map(|r| json!({"pair": one_based_pair(r.i, r.j), "omega": r.omega, "a_ij": r.a_ij}))
        .collect();
    let csv = csv_table(
        "i,j,omega,a_ij",
        table.iter().map(|r| {
            vec![(r.i + 1).to_string(), (r.j + 1).to_string(), format_number(r.omega), format_number(r.a_ij)]
        }),
    );
    Ok(Report::new(
        "twoform",
        json!({
            "n": a.n(),
            "form": "dx_1^dx_2",
            "closed": closed,
            "max_abs_gap": num(max_gap),
            "table": rows,
            "matrix": rows_json(&a.to_rows()),
        }),
        csv,
    ))
}
