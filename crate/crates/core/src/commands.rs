//! The command layer behind the `cdga-config` binary. Every command returns
//! a [`Report`]; nothing here exits the process.

use std::path::Path;

use serde_json::{json, Value};

use crate::algebra::check_cdga;
use crate::cohomology::{cohomology, padded};
use crate::cone::cone_model;
use crate::expr::parse_element;
use crate::io::{AlgebraFile, IoError};
use crate::linalg::{format_scalar, Scalar};
use crate::poincare::{pd_diagnostics, PdAlgebra};
use crate::presets;
use crate::products::diagonal_correspondence;
use crate::report::{betti_line, Report, Status};
use crate::sullivan::{self, Verdict};
use crate::twisted::{build_cxi, c_of_x, quotient_by_diagonal, sample_xi, TwistedError, TwistedModel};

fn io_status(e: &IoError) -> Status {
    if e.is_parse_error() {
        Status::ParseError
    } else {
        Status::CheckFailed
    }
}

fn load_pd(command: &str, arg: &str) -> Result<PdAlgebra, Report> {
    presets::load(arg)
        .and_then(|f| f.pd_algebra())
        .map_err(|e| Report::error(command, io_status(&e), format!("{arg}: {e}")))
}

fn axioms_json(report: &crate::algebra::AxiomReport, r: &mut Report) -> Value {
    let mut m = serde_json::Map::new();
    for c in &report.checks {
        let status = match &c.witness {
            None => "pass".to_string(),
            Some(w) => format!("fail at ({})", w.labels.join(", ")),
        };
        r.line(format!("  {:<22}{}", c.axiom.to_string(), status.to_uppercase()));
        m.insert(c.axiom.to_string(), Value::String(status));
    }
    Value::Object(m)
}

/// Axiom and Poincaré duality report for one algebra file.
pub fn check(file: &str) -> Report {
    let command = format!("check {file}");
    let f = match presets::load(file) {
        Ok(f) => f,
        Err(e) => return Report::error(command, io_status(&e), format!("{file}: {e}")),
    };
    let a = match f.algebra() {
        Ok(a) => a,
        Err(e) => return Report::error(command, Status::ParseError, format!("{file}: {e}")),
    };
    let eps = match f.orientation_vector(&a) {
        Ok(v) => v,
        Err(e) => return Report::error(command, Status::ParseError, format!("{file}: {e}")),
    };
    let mut r = Report::new(command);
    r.line(format!("algebra {}, n = {}, dimension {}", a.name(), f.formal_dimension, a.dim()));
    r.set("algebra", a.name());
    r.set("formal_dimension", f.formal_dimension);
    let axioms = check_cdga(&a);
    let v = axioms_json(&axioms, &mut r);
    r.set("axioms", v);
    let pd = pd_diagnostics(&a, f.formal_dimension, &eps);
    if pd.is_empty() {
        r.line(format!("  {:<22}PASS", "Poincaré duality"));
        r.set("poincare_duality", "pass");
    } else {
        for p in &pd {
            r.line(format!("  {:<22}FAIL: {p}", "Poincaré duality"));
        }
        r.set("poincare_duality", pd.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    }
    match cohomology(&a.complex()) {
        Ok(h) => {
            r.line(format!("Betti: {}", betti_line(&h.betti())));
            r.set("betti", h.betti());
        }
        Err(e) => r.fail(Status::CheckFailed, e.to_string()),
    }
    if let Some((axiom, w)) = axioms.first_failure() {
        r.fail(Status::CheckFailed, format!("{axiom} fails at ({})", w.labels.join(", ")));
    }
    if let Some(p) = pd.first() {
        r.fail(Status::CheckFailed, p.to_string());
    }
    r
}

/// `Δ`, the dual basis and the differential on the suspended generators of
/// `C(Δ!)`.
pub fn diagonal(file: &str) -> Report {
    let command = format!("diagonal {file}");
    let pd = match load_pd(&command, file) {
        Ok(pd) => pd,
        Err(r) => return r,
    };
    let mut r = Report::new(command);
    let a = &pd.algebra;
    let aa = &pd.square().algebra;
    let delta = aa.format(&pd.diagonal());
    r.line(format!("Δ = {delta}"));
    r.set("diagonal", delta);
    r.line("dual basis:");
    let mut dual = serde_json::Map::new();
    for i in 0..a.dim() {
        let d = a.format(&pd.dual_basis()[i]);
        r.line(format!("  {}* = {d}", a.label(i)));
        dual.insert(a.label(i).to_string(), Value::String(d));
    }
    r.set("dual_basis", Value::Object(dual));
    match cone_model(&pd) {
        Ok(cone) => {
            r.line("δ on C(Δ!):");
            let mut table = Vec::new();
            for j in 0..a.dim() {
                let k = cone.shifted_index(j);
                let label = cone.algebra.label(k).to_string();
                let d = cone.algebra.format(cone.algebra.d_basis(k));
                r.line(format!("  δ({label}) = {d}"));
                table.push(json!({"generator": label, "differential": d}));
            }
            r.set("delta_table", table);
        }
        Err(e) => r.fail(Status::Precondition, e.to_string()),
    }
    r
}

/// Betti numbers of `A⊗A/(Δ)` against those of `C(Δ!)`.
pub fn betti_fm2(file: &str) -> Report {
    let command = format!("betti-fm2 {file}");
    let pd = match load_pd(&command, file) {
        Ok(pd) => pd,
        Err(r) => return r,
    };
    let mut r = Report::new(command);
    let quotient = match quotient_by_diagonal(&pd) {
        Ok(q) => cohomology(&q.algebra.complex()).map(|h| h.betti()).unwrap_or_default(),
        Err(TwistedError::Quotient(crate::quotient::QuotientError::ContainsUnit)) => Vec::new(),
        Err(e) => {
            r.fail(Status::Precondition, e.to_string());
            return r;
        }
    };
    let cone = match cone_model(&pd).map_err(|e| e.to_string()).and_then(|c| {
        cohomology(&c.algebra.complex())
            .map(|h| h.betti())
            .map_err(|e| e.to_string())
    }) {
        Ok(b) => b,
        Err(e) => {
            r.fail(Status::Precondition, e);
            return r;
        }
    };
    let len = quotient.len().max(cone.len());
    let (q, c) = (padded(&quotient, len), padded(&cone, len));
    r.line(format!("{:>6} {:>10} {:>8}", "degree", "A⊗A/(Δ)", "C(Δ!)"));
    let mut verdicts = Vec::new();
    for k in 0..len {
        let v = if q[k] == c[k] { "AGREE" } else { "DISAGREE" };
        r.line(format!("{k:>6} {:>10} {:>8}  {v}", q[k], c[k]));
        verdicts.push(v);
    }
    r.line(format!("A⊗A/(Δ): {}", betti_line(&q)));
    r.line(format!("C(Δ!):   {}", betti_line(&c)));
    r.set("betti_quotient", q.clone());
    r.set("betti_cone", c.clone());
    r.set("verdicts", verdicts);
    if q != c {
        r.fail(Status::CheckFailed, "Betti numbers disagree");
    }
    r
}

fn twisted_lines(r: &mut Report, m: &TwistedModel) {
    let c = &m.algebra;
    let axioms = check_cdga(c);
    r.line(format!("C(ξ) has dimension {}", c.dim()));
    let v = axioms_json(&axioms, r);
    r.set("axioms", v);
    let s_basis: Vec<usize> = (0..c.dim()).filter(|&i| c.label(i).starts_with('S')).collect();
    let mut products = Vec::new();
    r.line("twisted products:");
    for (a, &i) in s_basis.iter().enumerate() {
        for &j in &s_basis[a..] {
            let p = c.basis_product(i, j);
            if p.is_zero() {
                continue;
            }
            let lhs = if i == j {
                format!("({})²", c.label(i))
            } else {
                format!("{}·{}", c.label(i), c.label(j))
            };
            let mark = if i == m.s1 && j == m.s1 { "  <-- twist" } else { "" };
            r.line(format!("  {lhs} = {}{mark}", c.format(&p)));
            products.push(json!({"product": lhs, "value": c.format(&p)}));
        }
    }
    if products.is_empty() {
        r.line("  all products of suspended generators vanish");
    }
    r.set("twisted_products", products);
    r.set("s1_squared", c.format(&c.basis_product(m.s1, m.s1)));
    match cohomology(&c.complex()) {
        Ok(h) => {
            r.line(format!("Betti: {}", betti_line(&h.betti())));
            r.set("betti", h.betti());
        }
        Err(e) => r.fail(Status::CheckFailed, e.to_string()),
    }
    if let Some((axiom, w)) = axioms.first_failure() {
        r.fail(Status::CheckFailed, format!("{axiom} fails at ({})", w.labels.join(", ")));
    }
}

fn twisted_status(e: &TwistedError) -> Status {
    match e {
        TwistedError::EvenDimensionNonzeroXi(_)
        | TwistedError::EvenDimension(_)
        | TwistedError::WrongDegree { .. }
        | TwistedError::NotACocycle
        | TwistedError::NotSimplyConnected
        | TwistedError::Cone(crate::cone::ConeError::Module(_)) => Status::Precondition,
        _ => Status::CheckFailed,
    }
}

/// Builds `C(ξ)` (or `C(x)`) and checks it. Without `xi` or `x`, a seeded
/// random `ξ` is used when `seed` is given, else `ξ = 0`.
pub fn cxi(file: &str, xi: Option<&str>, x: Option<&str>, seed: Option<u64>) -> Report {
    let mut command = format!("cxi {file}");
    if let Some(s) = xi {
        command.push_str(&format!(" --xi {s:?}"));
    }
    if let Some(s) = x {
        command.push_str(&format!(" --x {s:?}"));
    }
    if let Some(s) = seed {
        command.push_str(&format!(" --seed {s}"));
    }
    let pd = match load_pd(&command, file) {
        Ok(pd) => pd,
        Err(r) => return r,
    };
    let aa = &pd.square().algebra;
    let built = match (xi, x) {
        (Some(_), Some(_)) => return Report::error(command, Status::Precondition, "give at most one of --xi and --x"),
        (Some(s), None) => match parse_element(aa, s) {
            Ok(v) => build_cxi(&pd, &v),
            Err(e) => return Report::error(command, Status::ParseError, format!("--xi: {e}")),
        },
        (None, Some(s)) => match parse_element(&pd.algebra, s) {
            Ok(v) => c_of_x(&pd, &v),
            Err(e) => return Report::error(command, Status::ParseError, format!("--x: {e}")),
        },
        (None, None) => {
            let v = match seed {
                Some(s) if pd.n % 2 == 1 => sample_xi(&pd, s, 1).pop().unwrap_or_default(),
                _ => Default::default(),
            };
            build_cxi(&pd, &v)
        }
    };
    let mut r = Report::new(command);
    match built {
        Ok(m) => {
            let xi = aa.format(&m.xi);
            r.line(format!("ξ = {xi}"));
            r.set("xi", xi);
            twisted_lines(&mut r, &m);
        }
        Err(e) => r.fail(twisted_status(&e), e.to_string()),
    }
    r
}

/// Pairwise verdicts for the `S²×S³` family `C(q, 0)`.
pub fn classify_example(q: &[Scalar]) -> Report {
    let qs: Vec<String> = q.iter().map(format_scalar).collect();
    let mut r = Report::new(format!("classify-example --q {}", qs.join(",")));
    let c = sullivan::classify_example(q);
    let verdicts = c.verdicts();
    r.line(format!("{:>8} {}", "q \\ r", qs.iter().map(|s| format!("{s:>11}")).collect::<String>()));
    for (i, row) in verdicts.iter().enumerate() {
        let cells: String = row.iter().map(|v| format!("{:>11}", v.to_string())).collect();
        r.line(format!("{:>8} {cells}", qs[i]));
    }
    r.set("q", qs.clone());
    r.set(
        "verdicts",
        verdicts
            .iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    let n = q.len();
    let pair = (0..n)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .chain((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
        .find(|&(i, j)| verdicts[i][j] == Verdict::Obstructed);
    if let Some((i, j)) = pair {
        r.line(format!("trace for q = {}, r = {}:", qs[i], qs[j]));
        let trace = c.explained_trace(i, j);
        for l in &trace {
            r.line(format!("  {l}"));
        }
        r.set("trace_pair", vec![qs[i].clone(), qs[j].clone()]);
        r.set("trace", trace);
    }
    if !c.matches_theorem() {
        r.fail(Status::CheckFailed, "verdicts are not Exists exactly on the diagonal");
    }
    r
}

/// `C⊗B`, the diagonal correspondence, and the product written to `out`.
pub fn product(a: &str, b: &str, out: Option<&Path>) -> Report {
    let command = format!("product {a} {b}");
    let (c, d) = match (load_pd(&command, a), load_pd(&command, b)) {
        (Ok(c), Ok(d)) => (c, d),
        (Err(r), _) | (_, Err(r)) => return r,
    };
    let mut r = Report::new(command);
    match diagonal_correspondence(&c, &d) {
        Ok(rep) => {
            let file = AlgebraFile::from_pd(&rep.product);
            r.line(format!(
                "product {}: n = {}, basis {}",
                rep.product.algebra.name(),
                rep.product.n,
                rep.product.algebra.basis().labels().join(", ")
            ));
            r.line(format!("σ(Δ_C⊗Δ_B) = {}", rep.image));
            r.line(format!("Δ_A = {}", rep.delta));
            r.line(format!("sign: {}", if rep.sign > 0 { "+1" } else { "-1" }));
            r.line(format!(
                "dual basis rule (c⊗b)* = (-1)^(|c*||b|) c*⊗b*: {}",
                if rep.dual_sign_rule { "holds" } else { "FAILS" }
            ));
            let len = rep.betti_factors.len().max(rep.betti_product.len());
            r.line(format!("Betti C⊗C⊗B⊗B/(Δ_C⊗Δ_B): {}", betti_line(&padded(&rep.betti_factors, len))));
            r.line(format!("Betti A⊗A/(Δ_A):         {}", betti_line(&padded(&rep.betti_product, len))));
            r.line(if rep.betti_agree { "AGREE" } else { "DISAGREE" });
            r.set("sign", rep.sign as i64);
            r.set("image", rep.image.clone());
            r.set("diagonal", rep.delta.clone());
            r.set("dual_sign_rule", rep.dual_sign_rule);
            r.set("betti_factors", rep.betti_factors.clone());
            r.set("betti_product", rep.betti_product.clone());
            r.set("betti_agree", rep.betti_agree);
            r.set("product", serde_json::to_value(&file).expect("algebra files serialize"));
            let default = format!("{}.json", rep.product.algebra.name());
            let path = out.map(Path::to_path_buf).unwrap_or_else(|| default.into());
            match std::fs::write(&path, file.to_json()) {
                Ok(()) => {
                    r.line(format!("wrote {}", path.display()));
                    r.set("written", path.display().to_string());
                }
                Err(e) => r.fail(Status::Precondition, format!("{}: {e}", path.display())),
            }
            if !rep.betti_agree {
                r.fail(Status::CheckFailed, "quotient Betti numbers disagree");
            }
        }
        Err(e) => r.fail(Status::CheckFailed, e.to_string()),
    }
    r
}

/// Integrity of a generator table file or preset.
pub fn check_table(file: &str) -> Report {
    let command = format!("check-table {file}");
    let table = match presets::load_table(file) {
        Ok(f) => match f.table() {
            Ok(t) => t,
            Err(e) => return Report::error(command, Status::ParseError, format!("{file}: {e}")),
        },
        Err(e) => return Report::error(command, io_status(&e), format!("{file}: {e}")),
    };
    table_report(command, &table)
}

pub fn table_report(command: String, table: &sullivan::GeneratorTable) -> Report {
    let mut r = Report::new(command);
    let report = sullivan::check_table(table);
    r.line(format!("{}: {} generators, degree cap {}", table.name, table.generators().len(), table.degree_cap));
    r.line(format!("target C(ξ) with ξ = {}", table.xi_text));
    let mut rows = Vec::new();
    for g in &report.generators {
        let d2 = g.d_squared.clone().map_or("pass".to_string(), |w| format!("D² = {w}"));
        let chain = g
            .chain_map
            .clone()
            .map_or("pass".to_string(), |(a, b)| format!("m(D) = {a} but δ(m) = {b}"));
        r.line(format!("  D({}) = {}", g.label, g.differential));
        r.line(format!("    D² = 0: {}   m∘D = δ∘m: {}", d2.to_uppercase(), chain.to_uppercase()));
        rows.push(json!({
            "generator": g.label,
            "degree": g.degree,
            "differential": g.differential,
            "d_squared": d2,
            "chain_map": chain,
        }));
    }
    r.set("generators", rows);
    r.set("odd_squares_vanish", report.odd_squares_vanish);
    r.set("monomial_failures", report.monomial_failures.clone());
    for f in &report.monomial_failures {
        r.line(format!("  {f}"));
    }
    if !report.passed() {
        r.fail(Status::CheckFailed, "table invariants fail");
    }
    r
}
