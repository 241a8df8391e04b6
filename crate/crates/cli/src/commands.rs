use std::io::Write;

use normbound::bounds::{bound_factor, report};
use normbound::classes::{check_class, check_pair, lemma31_eigencheck, Certificate, CheckOptions, ClassId, ClassVerdict, Membership};
use normbound::generators::{gen_dft, gen_hadamard, gen_single_entry, gen_tensor_product, gen_theorem2, k_class_representative};
use normbound::norms::{induced_norm, NormOptions};
use normbound::{ExtIndex, Field, KClass, Matrix, Vector, DEFAULT_ESTIMATE_TOL};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::args::{CheckArgs, Command, GenerateArgs, Kind, NormArgs, SweepArgs, VerifyArgs};
use crate::io::{fmt_g17, fmt_vector, matrix_json, read_matrix, vector_json, write_text};
use crate::{exit, CliError};

/// Column header of the sweep CSV.
pub const SWEEP_HEADER: &str = "r,s,norm_rs,factor,bound,ratio,certainty";

/// Grid used by `verify`.
const VERIFY_GRID: [f64; 5] = [1.0, 1.5, 2.0, 3.0, f64::INFINITY];

/// Duality tolerance when either side is estimated.
const DUALITY_ESTIMATE_TOL: f64 = 1e-3;

/// Monotonicity tolerance when a value in the chain is estimated.
const MONOTONE_ESTIMATE_TOL: f64 = 1e-3;

pub fn dispatch(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Norm(a) => norm(a, out),
        Command::Check(a) => check(a, out),
        Command::Sweep(a) => sweep(a, out),
        Command::Generate(a) => generate(a, out, err),
        Command::Verify(a) => verify(a, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io("output".into(), e))
}

fn norm(args: &NormArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = read_matrix(&args.file)?;
    let (p, q) = (args.pq.p, args.pq.q);
    let opts = NormOptions::default().with_seed(args.seed).with_oracle_budget(args.budget);
    let r = induced_norm(&a, p, q, &opts);
    if args.exact_only && !r.certainty.is_exact() {
        return Err(CliError::NotExact(format!(
            "best estimate of norm({p},{q}) is {} ({})",
            fmt_g17(r.value),
            r.certainty
        )));
    }
    let text = if args.json {
        let mut doc = json!({
            "p": p.to_string(),
            "q": q.to_string(),
            "value": r.value,
            "certainty": r.certainty.as_str(),
            "witness": vector_json(r.witness.entries(), r.witness.field()),
        });
        if !r.certainty.is_exact() {
            doc["seed"] = json!(args.seed);
        }
        format!("{doc}\n")
    } else {
        let mut s = format!("{} {}\n", fmt_g17(r.value), r.certainty);
        s += &format!("witness: {}\n", fmt_vector(r.witness.entries(), r.witness.field()));
        if !r.certainty.is_exact() {
            s += &format!("seed: {}\n", args.seed);
        }
        s
    };
    emit(out, &text)?;
    Ok(exit::OK)
}

fn membership_code(m: Membership) -> i32 {
    match m {
        Membership::Yes => exit::OK,
        Membership::No => exit::NO,
        Membership::Undetermined => exit::UNDETERMINED,
    }
}

fn verdict_summary(v: &ClassVerdict) -> String {
    format!("{}: {} ({})", v.subject, v.member, v.certainty.as_str())
}

fn verdict_text(v: &ClassVerdict) -> String {
    let mut s = verdict_summary(v) + "\n";
    for c in &v.conditions {
        let mark = if c.satisfied { "[x]" } else { "[ ]" };
        let vals: Vec<String> = c.values.iter().map(|(k, x)| format!("{k}={}", fmt_g17(*x))).collect();
        s += &format!("  {mark} {}", c.name);
        if !vals.is_empty() {
            s += &format!("  {}", vals.join(" "));
        }
        s += "\n";
    }
    match &v.certificate {
        Some(Certificate::Maximizer(x)) => s += &format!("certificate: maximiser x = {}\n", fmt_vector(x.entries(), x.field())),
        Some(Certificate::Svd(f)) => {
            s += &format!("certificate: SVD with sigma_1 = {}\n", fmt_g17(f.top()));
            s += &format!("  u1 = {}\n", fmt_vector(&f.u.column(0), f.u.field()));
            s += &format!("  v1 = {}\n", fmt_vector(&f.v.column(0), f.v.field()));
        }
        Some(Certificate::Eigenvector { v: x, lambda, tau }) => {
            s += &format!(
                "certificate: eigenvector v = {}  lambda={} tau={}\n",
                fmt_vector(x.entries(), x.field()),
                fmt_g17(*lambda),
                fmt_g17(*tau)
            );
        }
        None => {}
    }
    s
}

fn verdict_json(v: &ClassVerdict) -> Value {
    let conditions: Vec<Value> = v
        .conditions
        .iter()
        .map(|c| {
            let values: Map<String, Value> = c.values.iter().map(|(k, x)| (k.clone(), Value::from(*x))).collect();
            json!({ "name": c.name, "satisfied": c.satisfied, "values": values })
        })
        .collect();
    let certificate = match &v.certificate {
        Some(Certificate::Maximizer(x)) => json!({ "kind": "maximizer", "x": vector_json(x.entries(), x.field()) }),
        Some(Certificate::Svd(f)) => json!({
            "kind": "svd",
            "sigma": f.sigma,
            "u1": vector_json(&f.u.column(0), f.u.field()),
            "v1": vector_json(&f.v.column(0), f.v.field()),
        }),
        Some(Certificate::Eigenvector { v: x, lambda, tau }) => json!({
            "kind": "eigenvector",
            "v": vector_json(x.entries(), x.field()),
            "lambda": lambda,
            "tau": tau,
        }),
        None => Value::Null,
    };
    json!({
        "subject": v.subject,
        "member": v.member.as_str(),
        "certainty": v.certainty.as_str(),
        "conditions": conditions,
        "certificate": certificate,
    })
}

fn check(args: &CheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = read_matrix(&args.file)?;
    if !(args.tol > 0.0 && args.tol < 1.0) {
        return Err(CliError::Input(format!("--tol must lie in (0, 1), got {}", args.tol)));
    }
    let mut opts = CheckOptions::default().with_tol(args.tol).with_seed(args.seed);
    opts.oracle_budget = args.budget;
    let (p, q) = (args.pq.p, args.pq.q);
    let v = match (args.class, args.r, args.s) {
        (Some(c), None, None) => check_class(&a, c, p, q, &opts)?,
        (None, Some(r), Some(s)) => check_pair(&a, p, q, r, s, &opts)?,
        _ => return Err(CliError::Input("give either --class or both --r and --s".into())),
    };
    let text = if args.json { format!("{}\n", verdict_json(&v)) } else { verdict_text(&v) };
    emit(out, &text)?;
    Ok(membership_code(v.member))
}

/// Worker count from the optional `THREADS` variable.
fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var("THREADS") {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(Some(k)),
            _ => Err(CliError::Input(format!("THREADS must be a positive integer, got {s:?}"))),
        },
    }
}

/// The sweep table for `a` as CSV text. Rows follow the grids, `r` outer.
pub fn sweep_csv(a: &Matrix, p: ExtIndex, q: ExtIndex, r_grid: &[ExtIndex], s_grid: &[ExtIndex], opts: &NormOptions) -> String {
    let rhs = induced_norm(a, p, q, opts);
    let points: Vec<(ExtIndex, ExtIndex)> = r_grid.iter().flat_map(|&r| s_grid.iter().map(move |&s| (r, s))).collect();
    let rows: Vec<String> = points
        .par_iter()
        .map(|&(r, s)| {
            let lhs = induced_norm(a, r, s, opts);
            let rep = report(a, p, q, r, s, normbound::DEFAULT_TOL, (lhs.value, lhs.certainty), (rhs.value, rhs.certainty));
            format!(
                "{r},{s},{},{},{},{},{}\n",
                fmt_g17(rep.lhs),
                fmt_g17(rep.factor),
                fmt_g17(rep.bound()),
                fmt_g17(rep.ratio()),
                rep.certainty()
            )
        })
        .collect();
    let mut csv = format!("{SWEEP_HEADER}\n");
    rows.iter().for_each(|r| csv.push_str(r));
    csv
}

fn sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = read_matrix(&args.file)?;
    let opts = NormOptions::default().with_seed(args.seed).with_oracle_budget(args.budget);
    let run = || sweep_csv(&a, args.pq.p, args.pq.q, &args.r_grid, &args.s_grid, &opts);
    let csv = match thread_cap()? {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| CliError::Input(format!("cannot start {k} threads: {e}")))?
            .install(run),
        None => run(),
    };
    match &args.out {
        Some(path) => write_text(path, &csv)?,
        None => emit(out, &csv)?,
    }
    Ok(exit::OK)
}

fn dims(args: &GenerateArgs) -> Result<(usize, usize), CliError> {
    let m = args.m.or(args.n).ok_or_else(|| CliError::Input("--m is required".into()))?;
    Ok((m, args.n.unwrap_or(m)))
}

fn square_order(args: &GenerateArgs) -> Result<usize, CliError> {
    let (m, n) = dims(args)?;
    if m != n {
        return Err(CliError::Input(format!("{:?} matrices are square; got --m {m} --n {n}", args.kind)));
    }
    Ok(m)
}

fn generate(args: &GenerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let field = Field::from(args.field);
    let (a, default_class) = match args.kind {
        Kind::Hadamard => (gen_hadamard(square_order(args)?)?.with_field(field)?, ClassId::E11),
        Kind::Dft => (gen_dft(square_order(args)?)?, ClassId::E11),
        Kind::Tensor => {
            let (m, n) = dims(args)?;
            let class = args.class.unwrap_or(ClassId::EInf1);
            let (sp, sq) = class.signs();
            let b = k_class_representative(KClass::from_sign(sp.neg()), m, field, args.seed.wrapping_mul(2));
            let c = k_class_representative(KClass::from_sign(sq), n, field, args.seed.wrapping_mul(2).wrapping_add(1));
            (gen_tensor_product(&c, &b), class)
        }
        Kind::Single => {
            let (m, n) = dims(args)?;
            (gen_single_entry(m, n, args.row, args.col, args.rho)?, ClassId::E1Inf)
        }
        Kind::Svd => {
            let (m, n) = dims(args)?;
            let class = args.class.ok_or_else(|| CliError::Input("--kind svd needs --class".into()))?;
            let (r, s) = class.extremal_pair();
            (gen_theorem2(m, n, r, s, &args.sigma, args.seed, field)?, class)
        }
    };
    let class = args.class.unwrap_or(default_class);
    let opts = CheckOptions::default().with_seed(args.seed);
    let v = check_class(&a, class, args.p, args.q, &opts)?;
    let confirmation = format!("confirmed {}\n", verdict_summary(&v));
    match &args.out {
        Some(path) => {
            write_text(path, &matrix_json(&a))?;
            emit(out, &confirmation)?;
        }
        None => {
            emit(out, &matrix_json(&a))?;
            err.write_all(confirmation.as_bytes()).map_err(|e| CliError::Io("stderr".into(), e))?;
        }
    }
    Ok(membership_code(v.member))
}

/// One tabulated norm used by the verify battery.
struct Tabulated {
    p: ExtIndex,
    q: ExtIndex,
    value: f64,
    exact: bool,
    witness: Option<Vector>,
    asserted: bool,
}

struct PropertyResult {
    name: &'static str,
    /// `None` when the property did not apply.
    passed: Option<bool>,
    detail: String,
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = read_matrix(&args.file)?;
    if !(args.tol > 0.0 && args.tol < 1.0) {
        return Err(CliError::Input(format!("--tol must lie in (0, 1), got {}", args.tol)));
    }
    let opts = NormOptions::default().with_seed(args.seed).with_oracle_budget(args.budget);
    let grid: Vec<ExtIndex> = VERIFY_GRID.iter().map(|&x| ExtIndex::new(x).expect("valid exponent")).collect();
    let pairs: Vec<(ExtIndex, ExtIndex)> = grid.iter().flat_map(|&p| grid.iter().map(move |&q| (p, q))).collect();
    let mut table: Vec<Tabulated> = pairs
        .par_iter()
        .map(|&(p, q)| {
            let r = induced_norm(&a, p, q, &opts);
            let exact = r.certainty.is_exact();
            Tabulated { p, q, value: r.value, exact, witness: exact.then_some(r.witness), asserted: false }
        })
        .collect();
    if let Some((p, q, value)) = args.assert_norm {
        let asserted = Tabulated { p, q, value, exact: true, witness: None, asserted: true };
        match table.iter_mut().find(|t| t.p == p && t.q == q) {
            Some(t) => *t = asserted,
            None => table.push(asserted),
        }
    }

    let results = [
        inequality_property(&a, &table, args.tol),
        duality_property(&a, &table, args.tol, &opts),
        monotonicity_property(&a, &table, &grid, args.tol),
        eigenvector_property(&a, &table, args.tol),
    ];
    let mut text = String::new();
    for r in &results {
        let tag = match r.passed {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "SKIP",
        };
        text += &format!("{tag} {:<13} {}\n", r.name, r.detail);
    }
    emit(out, &text)?;
    Ok(if results.iter().any(|r| r.passed == Some(false)) { exit::VERIFY_FAILED } else { exit::OK })
}

fn label(t: &Tabulated) -> String {
    format!("({},{}){}", t.p, t.q, if t.asserted { " [asserted]" } else { "" })
}

/// `‖A‖_{r,s} ≤ factor·‖A‖_{p,q}` for every pair of tabulated norms.
fn inequality_property(a: &Matrix, table: &[Tabulated], tol: f64) -> PropertyResult {
    let mut worst = (f64::INFINITY, String::new());
    let mut failed = false;
    for pq in table {
        for rs in table {
            let factor = bound_factor(pq.p, pq.q, rs.p, rs.q, a.cols(), a.rows());
            let bound = factor * pq.value;
            let slack = bound - rs.value;
            let rel = if bound > 0.0 { slack / bound } else if rs.value == 0.0 { 0.0 } else { f64::NEG_INFINITY };
            let allowed = if pq.exact && rs.exact { tol } else { tol.max(DEFAULT_ESTIMATE_TOL) };
            failed |= rel < -allowed;
            if rel < worst.0 {
                worst = (rel, format!("(p,q)={} (r,s)={}", label(pq), label(rs)));
            }
        }
    }
    PropertyResult {
        name: "inequality",
        passed: Some(!failed),
        detail: format!("worst relative slack {} at {} ({} comparisons)", fmt_g17(worst.0), worst.1, table.len() * table.len()),
    }
}

/// `‖A*‖_{q*,p*} = ‖A‖_{p,q}`.
fn duality_property(a: &Matrix, table: &[Tabulated], tol: f64, opts: &NormOptions) -> PropertyResult {
    let adj = a.adjoint();
    let gaps: Vec<(f64, bool, String)> = table
        .par_iter()
        .map(|t| {
            let d = induced_norm(&adj, t.q.conjugate(), t.p.conjugate(), opts);
            let scale = t.value.max(d.value);
            let gap = if scale > 0.0 { (t.value - d.value).abs() / scale } else { 0.0 };
            let allowed = if t.exact && d.certainty.is_exact() { tol } else { DUALITY_ESTIMATE_TOL };
            (gap, gap > allowed, label(t))
        })
        .collect();
    let worst = gaps.iter().max_by(|x, y| x.0.total_cmp(&y.0)).expect("nonempty table");
    PropertyResult {
        name: "duality",
        passed: Some(!gaps.iter().any(|g| g.1)),
        detail: format!("worst relative gap {} at {} ({} pairs)", fmt_g17(worst.0), worst.2, gaps.len()),
    }
}

/// Both monotone chains along each grid line: `‖A‖_{r,s}` nondecreasing and
/// `m^{1/r}‖A‖_{r,s}` nonincreasing in `r`; `‖A‖_{r,s}` nonincreasing and
/// `n^{−1/s}‖A‖_{r,s}` nondecreasing in `s`.
fn monotonicity_property(a: &Matrix, table: &[Tabulated], grid: &[ExtIndex], tol: f64) -> PropertyResult {
    let (m, n) = (a.cols() as f64, a.rows() as f64);
    let at = |p: ExtIndex, q: ExtIndex| table.iter().find(|t| t.p == p && t.q == q).expect("grid point tabulated");
    let mut worst = (f64::INFINITY, String::new());
    let mut failed = false;
    let mut step = |lo: &Tabulated, hi: &Tabulated, rising: f64, falling: f64, base_rise: f64, base_fall: f64| {
        // Relative slack of `rising ≥ base_rise` and `falling ≤ base_fall`.
        let allowed = if lo.exact && hi.exact { tol } else { MONOTONE_ESTIMATE_TOL };
        for (x, base) in [(rising - base_rise, base_rise), (base_fall - falling, base_fall)] {
            let rel = if base > 0.0 { x / base } else { 0.0 };
            failed |= rel < -allowed;
            if rel < worst.0 {
                worst = (rel, format!("{} -> {}", label(lo), label(hi)));
            }
        }
    };
    for &fixed in grid {
        for w in grid.windows(2) {
            let (lo, hi) = (at(w[0], fixed), at(w[1], fixed));
            let g = |t: &Tabulated| m.powf(t.p.recip()) * t.value;
            step(lo, hi, hi.value, g(hi), lo.value, g(lo));
            let (lo, hi) = (at(fixed, w[0]), at(fixed, w[1]));
            let g = |t: &Tabulated| t.value / n.powf(t.q.recip());
            step(lo, hi, g(hi), hi.value, g(lo), lo.value);
        }
    }
    PropertyResult {
        name: "monotonicity",
        passed: Some(!failed),
        detail: format!("worst relative slack {} at {}", fmt_g17(worst.0), worst.1),
    }
}

/// A maximiser whose nonzero entries, and those of `Av`, share a modulus is
/// an eigenvector of `A*A`. Checked on the exact grid maximisers that meet
/// the hypotheses.
fn eigenvector_property(a: &Matrix, table: &[Tabulated], tol: f64) -> PropertyResult {
    let mut checked = 0;
    let mut failures = Vec::new();
    for t in table {
        let Some(v) = &t.witness else { continue };
        match lemma31_eigencheck(a, v, t.p, t.q, tol) {
            Ok(ok) => {
                checked += 1;
                if !ok {
                    failures.push(format!("{} v={}", label(t), fmt_vector(v.entries(), v.field())));
                }
            }
            Err(_) => continue,
        }
    }
    let (passed, detail) = if checked == 0 {
        (None, "no exact grid maximiser meets the hypotheses".to_string())
    } else if failures.is_empty() {
        (Some(true), format!("{checked} maximisers are eigenvectors of A*A"))
    } else {
        (Some(false), format!("not an eigenvector: {}", failures.join("; ")))
    };
    PropertyResult { name: "eigenvector", passed, detail }
}

