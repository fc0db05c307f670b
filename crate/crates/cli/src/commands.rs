use std::collections::BTreeMap;
use std::time::Instant;

use dendcox::arith::{self, SequenceKind, SequenceTable};
use dendcox::characters::{dend_consistency, dias_character, injectivity_check, module_identity_sides};
use dendcox::series::{generating_function_checks, taylor_check, SeriesCheck, TaylorIdentity};
use dendcox::spectra::{
    build_matrix, charpoly_direct, charpoly_finite_order, cyclotomic_string, square_consistency,
    verify_conjecture, verify_theorem, CharpolyReport, Claim, FactoredForm, IntPolynomial,
    MatrixKind, Method,
};
use dendcox::symfunc::{lie_brace_closed, lie_z_closed, plethysm_checks, SchurExpansion, SchurSign};
use dendcox::tamari::build_lattice;
use dendcox::{Exec, Limits};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::report::{big, bigs, rational, Report, Status};

pub type CmdResult = Result<Report, String>;

pub struct Ctx {
    pub limits: Limits,
    pub exec: Exec,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn poly_json(p: &IntPolynomial) -> Value {
    bigs(p.coeffs())
}

fn form_json(f: &FactoredForm) -> Value {
    let map: Map<String, Value> = f.exponents().iter().map(|(d, e)| (d.to_string(), big(e))).collect();
    Value::Object(map)
}

fn multiplicities_json(m: &BTreeMap<u64, BigInt>) -> Value {
    let map: Map<String, Value> = m.iter().map(|(d, e)| (d.to_string(), big(e))).collect();
    Value::Object(map)
}

fn series_check_json(c: &SeriesCheck) -> Value {
    let mut v = json!({ "label": c.label, "order": c.order, "holds": c.holds() });
    if let Some((k, l, r)) = &c.mismatch {
        v["mismatch"] = json!({ "index": k, "left": rational(l), "right": rational(r) });
    }
    v
}

fn series_check_line(c: &SeriesCheck) -> String {
    match &c.mismatch {
        None => format!("PASS {} order={}", c.label, c.order),
        Some((k, l, r)) => format!("FAIL {} order={} first mismatch at x^{k}: {l} != {r}", c.label, c.order),
    }
}

pub fn seq(kind: SequenceKind, upto: u64) -> CmdResult {
    let table = SequenceTable::compute(kind, upto).map_err(err)?;
    let line = table.values().iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    Ok(Report::new(
        "seq",
        Status::Pass,
        json!({ "kind": kind.to_string(), "first_index": kind.first_index(), "values": bigs(table.values()) }),
    )
    .param("kind", kind.to_string())
    .param("upto", upto)
    .lines(vec![line]))
}

pub fn tamari(ctx: &Ctx, leaves: usize) -> CmdResult {
    let lattice = build_lattice(leaves, &ctx.limits).map_err(err)?;
    let elements: Vec<String> = lattice.elements().iter().map(|t| t.encode()).collect();
    let covers: Vec<[usize; 2]> = lattice.covers().iter().map(|&(i, j)| [i, j]).collect();
    let relations = lattice.relation_size();
    let unit = lattice.order_matrix().is_unit_upper_triangular();
    let mut payload = json!({
        "leaves": leaves,
        "elements": elements,
        "covers": covers,
        "relations": relations,
        "unit_upper_triangular": unit,
    });
    let mut lines = vec![format!(
        "leaves={leaves} elements={} covers={} relations={relations} unit_upper_triangular={unit}",
        lattice.len(),
        lattice.covers().len()
    )];
    if leaves <= 7 {
        let is_lattice = lattice.is_lattice();
        payload["is_lattice"] = json!(is_lattice);
        lines.push(format!("is_lattice={is_lattice}"));
    }
    Ok(Report::new("tamari", Status::from_bool(unit), payload)
        .param("leaves", leaves)
        .lines(lines))
}

/// The lattice export format: elements and covers only.
pub fn tamari_export(ctx: &Ctx, leaves: usize) -> Result<Value, String> {
    let lattice = build_lattice(leaves, &ctx.limits).map_err(err)?;
    let elements: Vec<String> = lattice.elements().iter().map(|t| t.encode()).collect();
    let covers: Vec<[usize; 2]> = lattice.covers().iter().map(|&(i, j)| [i, j]).collect();
    Ok(json!({ "leaves": leaves, "elements": elements, "covers": covers }))
}

pub fn charpoly(ctx: &Ctx, leaves: usize, kind: MatrixKind, methods: &[Method]) -> CmdResult {
    let m = build_matrix(kind, leaves, &ctx.limits, ctx.exec).map_err(err)?;
    if methods.contains(&Method::Direct) && m.rows() > ctx.limits.max_dim_direct {
        return Err(format!(
            "dimension {} exceeds the direct-method cap {}",
            m.rows(),
            ctx.limits.max_dim_direct
        ));
    }
    let mut results = Vec::new();
    let mut extra = Map::new();
    let mut lines = Vec::new();
    for &method in methods {
        let start = Instant::now();
        let poly = match method {
            Method::Direct => charpoly_direct(&m, ctx.exec).map_err(err)?,
            Method::Traces => {
                let r = charpoly_finite_order(&m, kind.order_bound(leaves), ctx.exec).map_err(err)?;
                extra.insert("multiplicities".into(), multiplicities_json(&r.multiplicities));
                extra.insert("cyclotomic".into(), json!(cyclotomic_string(&r.multiplicities)));
                extra.insert("order".into(), json!(r.order));
                lines.push(format!("cyclotomic: {}  order={}", cyclotomic_string(&r.multiplicities), r.order));
                r.poly
            }
        };
        let millis = start.elapsed().as_millis();
        lines.insert(results.len(), format!("{method} ({millis} ms): {poly}"));
        results.push((method, poly, millis));
    }
    let reference = &results[0].1;
    let disagreement = results.iter().find_map(|(method, p, _)| {
        p.first_difference(reference).map(|i| {
            json!({ "method": method.to_string(), "index": i, "expected": big(&reference.coeff(i)), "actual": big(&p.coeff(i)) })
        })
    });
    let status = Status::from_bool(disagreement.is_none());
    let mut payload = json!({
        "matrix": kind.to_string(),
        "leaves": leaves,
        "dim": m.rows(),
        "polynomial": poly_json(reference),
        "results": results.iter().map(|(method, p, ms)| json!({
            "method": method.to_string(), "polynomial": poly_json(p), "millis": ms,
        })).collect::<Vec<_>>(),
    });
    for (k, v) in extra {
        payload[k] = v;
    }
    if let Some(d) = disagreement {
        lines.push(format!("methods disagree: {d}"));
        payload["mismatch"] = d;
    }
    let method_names: Vec<String> = methods.iter().map(ToString::to_string).collect();
    Ok(Report::new("charpoly", status, payload)
        .param("leaves", leaves)
        .param("matrix", kind.to_string())
        .param("method", method_names.join(","))
        .lines(lines))
}

fn claim_status(r: &CharpolyReport) -> Status {
    match r.claim {
        Claim::Theorem => Status::from_bool(r.passed()),
        Claim::Conjecture => Status::conjecture(r.passed()),
    }
}

fn claim_json(r: &CharpolyReport) -> Value {
    let computed = &r.results[0].poly;
    let mut v = json!({
        "n": r.n,
        "dim": r.dim,
        "status": claim_status(r),
        "polynomial": poly_json(computed),
        "expected_polynomial": poly_json(&r.expected),
        "expected_form": form_json(&r.expected_form),
        "multiplicities": multiplicities_json(&r.multiplicities),
        "cyclotomic": cyclotomic_string(&r.multiplicities),
        "matrix_order": r.matrix_order,
        "methods": r.results.iter().map(|m| json!({
            "method": m.method.to_string(),
            "millis": m.millis,
            "agrees": m.poly == r.expected,
        })).collect::<Vec<_>>(),
    });
    if let Some(m) = &r.mismatch {
        v["mismatch"] = json!({
            "method": m.method.to_string(),
            "index": m.index,
            "expected": big(&m.expected),
            "actual": big(&m.actual),
        });
    }
    v
}

fn claim_line(r: &CharpolyReport) -> String {
    let methods: Vec<String> = r.results.iter().map(|m| format!("{} {} ms", m.method, m.millis)).collect();
    let mut line = format!(
        "{} {} n={} dim={} order={} charpoly = {} [{}]",
        claim_status(r),
        match r.claim {
            Claim::Theorem => "theorem",
            Claim::Conjecture => "conjecture",
        },
        r.n,
        r.dim,
        r.matrix_order,
        cyclotomic_string(&r.multiplicities),
        methods.join(", ")
    );
    if let Some(m) = &r.mismatch {
        line.push_str(&format!(
            "; {} method differs at t^{}: expected {}, got {}",
            m.method, m.index, m.expected, m.actual
        ));
    }
    line
}

fn n_range(single: Option<usize>, upto: Option<usize>) -> Result<Vec<usize>, String> {
    match (single, upto) {
        (Some(n), None) => Ok(vec![n]),
        (None, Some(u)) => Ok((2..=u).collect()),
        _ => Err("give exactly one of --n and --upto".to_string()),
    }
}

pub fn verify_claim(ctx: &Ctx, claim: Claim, single: Option<usize>, upto: Option<usize>) -> CmdResult {
    let ns = n_range(single, upto)?;
    let reports: Vec<Result<CharpolyReport, String>> = ctx.exec.map_slice(&ns, |&n| {
        match claim {
            Claim::Theorem => verify_theorem(n, &ctx.limits, ctx.exec),
            Claim::Conjecture => verify_conjecture(n, &ctx.limits, ctx.exec),
        }
        .map_err(|e| format!("n = {n}: {e}"))
    });
    let reports: Vec<CharpolyReport> = reports.into_iter().collect::<Result<_, _>>()?;
    let status = Status::combine(reports.iter().map(claim_status));
    let name = match claim {
        Claim::Theorem => "verify theorem",
        Claim::Conjecture => "verify conjecture",
    };
    let mut rep = Report::new(
        name,
        status,
        json!({ "cases": reports.iter().map(claim_json).collect::<Vec<_>>() }),
    )
    .lines(reports.iter().map(claim_line).collect());
    rep = match (single, upto) {
        (Some(n), _) => rep.param("n", n),
        (_, Some(u)) => rep.param("upto", u),
        _ => rep,
    };
    Ok(rep)
}

pub fn verify_crux(upto: u64) -> CmdResult {
    let mut cases = Vec::new();
    let mut lines = Vec::new();
    for d in 1..=upto {
        let holds = arith::check_crux(d).map_err(err)?;
        cases.push(json!({ "d": d, "holds": holds }));
        if !holds {
            lines.push(format!("FAIL crux d={d}"));
        }
    }
    let ok = cases.iter().all(|c| c["holds"] == json!(true));
    if ok {
        lines.push(format!("PASS crux d=1..{upto}"));
    }
    let sign = arith::first_sign_mismatch(2..=upto.max(2)).map_err(err)?;
    lines.push(match sign {
        None => format!("sign(b_n) = sign(λ(n)) for n=2..{}", upto.max(2)),
        Some(n) => format!("sign(b_n) differs from sign(λ(n)) first at n={n}"),
    });
    Ok(Report::new(
        "verify crux",
        Status::from_bool(ok),
        json!({ "cases": cases, "sign_pattern_first_mismatch": sign }),
    )
    .param("upto", upto)
    .lines(lines))
}

/// Square (and negate, for even `n`) of the conjectured form against the
/// proved one.
pub fn verify_forms(upto: u64) -> CmdResult {
    let mut cases = Vec::new();
    let mut lines = Vec::new();
    let mut ok = true;
    for n in 2..=upto {
        let (image, target) = square_consistency(n).map_err(err)?;
        let holds = image == target;
        ok &= holds;
        cases.push(json!({
            "n": n, "holds": holds, "image": form_json(&image), "theorem_form": form_json(&target),
        }));
        lines.push(format!("{} forms n={n}: {image}", Status::from_bool(holds)));
    }
    Ok(Report::new("verify forms", Status::from_bool(ok), json!({ "cases": cases }))
        .param("upto", upto)
        .lines(lines))
}

fn sign_name(s: SchurSign) -> &'static str {
    match s {
        SchurSign::Zero => "zero",
        SchurSign::Positive => "positive",
        SchurSign::Negative => "negative",
        SchurSign::Mixed => "mixed",
    }
}

fn schur_json(s: &SchurExpansion) -> Value {
    let terms: Map<String, Value> = s.terms().map(|(l, c)| (l.to_string(), rational(c))).collect();
    Value::Object(terms)
}

pub fn symcheck(ctx: &Ctx, degree: usize) -> CmdResult {
    let mut lines = Vec::new();
    let mut ok = true;

    let start = Instant::now();
    let pleth = plethysm_checks(degree).map_err(err)?;
    let mut pleth_json = Vec::new();
    for c in &pleth {
        ok &= c.holds();
        let mut v = json!({ "label": c.label, "degree": c.degree, "holds": c.holds() });
        match &c.mismatch {
            None => lines.push(format!("PASS plethysm {} degree<={degree}", c.label)),
            Some((l, a, b)) => {
                v["mismatch"] = json!({ "partition": l.to_string(), "left": rational(a), "right": rational(b) });
                lines.push(format!("FAIL plethysm {} at p{l}: {a} != {b}", c.label));
            }
        }
        pleth_json.push(v);
    }
    let pleth_ms = start.elapsed().as_millis();

    let mut module = Vec::new();
    for n in 1..=degree as u64 {
        let (left, right) = module_identity_sides(n).map_err(err)?;
        let holds = left == right;
        ok &= holds;
        let injective = injectivity_check(n);
        ok &= injective;
        module.push(json!({ "n": n, "identity": holds, "injective": injective }));
    }
    let module_ok = module.iter().all(|m| m["identity"] == json!(true) && m["injective"] == json!(true));
    lines.push(format!("{} module identity and injectivity n<={degree}", Status::from_bool(module_ok)));

    let schur_cap = degree.min(ctx.limits.max_schur_degree);
    let lb = lie_brace_closed(schur_cap);
    let lz = lie_z_closed(schur_cap);
    let ns: Vec<usize> = (1..=schur_cap).collect();
    let brace: Vec<Result<SchurExpansion, String>> =
        ns.iter().map(|&n| lb.to_schur(n, ctx.limits.max_schur_degree, ctx.exec).map_err(err)).collect();
    let z: Vec<Result<SchurExpansion, String>> =
        ns.iter().map(|&n| lz.to_schur(n, ctx.limits.max_schur_degree, ctx.exec).map_err(err)).collect();

    let mut brace_json = Vec::new();
    for (n, s) in ns.iter().zip(brace) {
        let s = s?;
        let good = s.is_module_character();
        ok &= good;
        brace_json.push(json!({ "n": n, "module_character": good, "dimension": rational(&s.dimension()), "schur": schur_json(&s) }));
        if !good {
            lines.push(format!("FAIL lie-brace schur n={n} not a nonnegative integer combination"));
        }
    }
    if brace_json.iter().all(|b| b["module_character"] == json!(true)) {
        lines.push(format!("PASS lie-brace schur-nonnegative n<={schur_cap}"));
    }

    let mut z_json = Vec::new();
    let mut by_residue: BTreeMap<usize, SchurSign> = BTreeMap::new();
    let mut z_ok = true;
    for (n, s) in ns.iter().zip(z) {
        let s = s?;
        let sign = s.sign();
        let single = matches!(sign, SchurSign::Positive | SchurSign::Negative) && s.is_integral();
        let consistent = *by_residue.entry(n % 4).or_insert(sign) == sign;
        z_ok &= single && consistent;
        z_json.push(json!({ "n": n, "sign": sign_name(sign), "integral": s.is_integral(), "schur": schur_json(&s) }));
    }
    ok &= z_ok;
    let pattern: Vec<String> = by_residue.iter().map(|(r, s)| format!("{r}:{}", sign_name(*s))).collect();
    lines.push(format!(
        "{} lie-z single sign per n mod 4, n<={schur_cap} ({})",
        Status::from_bool(z_ok),
        pattern.join(" ")
    ));

    let dias_cap = degree.min(10) as u64;
    let mut dias_ok = true;
    for n in 1..=dias_cap {
        dias_ok &= dias_character(n, &ctx.limits, ctx.exec).map_err(err)?.is_module_character();
    }
    ok &= dias_ok;
    lines.push(format!("{} regular minus trivial induced character is a module n<={dias_cap}", Status::from_bool(dias_ok)));

    Ok(Report::new(
        "symcheck",
        Status::from_bool(ok),
        json!({
            "plethysm": pleth_json,
            "plethysm_millis": pleth_ms,
            "module_identity": module,
            "lie_brace_schur": brace_json,
            "lie_z_schur": z_json,
            "lie_z_sign_by_residue": pattern,
            "dias_module": dias_ok,
        }),
    )
    .param("degree", degree)
    .lines(lines))
}

pub fn taylor(order: usize) -> CmdResult {
    let checks: Vec<SeriesCheck> = TaylorIdentity::ALL
        .iter()
        .map(|&id| taylor_check(id, order))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let ok = checks.iter().all(SeriesCheck::holds);
    Ok(Report::new(
        "taylor",
        Status::from_bool(ok),
        json!({ "checks": checks.iter().map(series_check_json).collect::<Vec<_>>() }),
    )
    .param("order", order)
    .lines(checks.iter().map(series_check_line).collect()))
}

pub fn series(order: usize) -> CmdResult {
    let checks = generating_function_checks(order).map_err(err)?;
    let ok = checks.iter().all(SeriesCheck::holds);
    Ok(Report::new(
        "series",
        Status::from_bool(ok),
        json!({ "checks": checks.iter().map(series_check_json).collect::<Vec<_>>() }),
    )
    .param("order", order)
    .lines(checks.iter().map(series_check_line).collect()))
}

pub fn characters(ctx: &Ctx, upto: u64) -> CmdResult {
    let ns: Vec<u64> = (1..=upto).collect();
    let results = ctx.exec.map_slice(&ns, |&n| dend_consistency(n, &ctx.limits, ctx.exec).map_err(err));
    let mut cases = Vec::new();
    let mut lines = Vec::new();
    let mut ok = true;
    for r in results {
        let r = r?;
        ok &= r.holds();
        let traces = r.traces.as_ref().map(bigs);
        cases.push(json!({
            "n": r.n,
            "character": bigs(r.character.values()),
            "traces": traces,
            "holds": r.holds(),
        }));
        let traces_note = match r.traces_match() {
            Some(true) => "traces match",
            Some(false) => "traces differ",
            None => "traces not computed",
        };
        lines.push(format!("{} characters n={} dim={} {traces_note}", Status::from_bool(r.holds()), r.n, r.character.dimension()));
    }
    Ok(Report::new("characters", Status::from_bool(ok), json!({ "cases": cases }))
        .param("upto", upto)
        .lines(lines))
}
