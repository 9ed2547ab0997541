use std::fmt::Write as _;
use std::path::PathBuf;

use akcurves::arith::{parse_poly, parse_scalar, FieldDescriptor};
use akcurves::catalog::{self, RowReport};
use akcurves::hirzebruch::{FmCurve, FmPoint};
use akcurves::links::{make_link, transversal_chain, verify_trace, Prediction};
use akcurves::plane::{self, classify_singularity, intersection_multiplicity};
use akcurves::{Error, Poly, Scalar};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{}", s),
            CliError::Lib(e) => write!(f, "{}", e),
        }
    }
}

impl CliError {
    /// 2 for malformed input, 1 for a failed computation.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(e) => match e {
                Error::Parse { .. }
                | Error::InvalidField(_)
                | Error::FieldMismatch { .. }
                | Error::ArityMismatch { .. }
                | Error::InvalidPoint(_)
                | Error::NotHomogeneous
                | Error::Weights(_)
                | Error::NotInCatalog { .. } => 2,
                _ => 1,
            },
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type Res = Result<Report, CliError>;

pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub results: Vec<Value>,
    pub pass: bool,
    pub text: String,
}

impl Report {
    /// Pretty JSON with sorted keys, so parsing and re-rendering is stable.
    pub fn to_json(&self) -> String {
        let v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "pass": self.pass,
        });
        serde_json::to_string_pretty(&v).expect("serializable")
    }
}

fn value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

pub fn read(poly: &Option<String>, file: &Option<PathBuf>) -> Result<String, CliError> {
    match (poly, file) {
        (Some(p), _) => Ok(p.clone()),
        (None, Some(f)) => std::fs::read_to_string(f)
            .map(|s| s.trim_end().to_string())
            .map_err(|e| CliError::Usage(format!("cannot read {}: {}", f.display(), e))),
        (None, None) => Err(CliError::Usage("no polynomial given".into())),
    }
}

fn fd(d: i64) -> FieldDescriptor {
    FieldDescriptor { d }
}

fn point(at: &str, field: i64) -> Result<[Scalar; 2], CliError> {
    let (x, y) = at
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("expected a point x,y, found '{}'", at)))?;
    Ok([parse_scalar(x, fd(field))?, parse_scalar(y, fd(field))?])
}

fn affine(text: &str, field: i64) -> Result<Poly, CliError> {
    Ok(parse_poly(text, 2, fd(field))?)
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn classify(text: &str, at: &str, field: i64) -> Res {
    let f = affine(text, field)?;
    let p = point(at, field)?;
    let r = classify_singularity(&f, &p)?;
    Ok(Report {
        command: "classify",
        inputs: json!({"poly": f.to_string(), "at": at, "field": field}),
        results: vec![value(&r)],
        pass: true,
        text: format!(
            "{} at ({}, {}): {}, multiplicity {}, {} blow-ups\n",
            f, p[0], p[1], r, r.multiplicity, r.blowups
        ),
    })
}

pub fn intersect(a: &str, b: &str, at: &str, field: i64) -> Res {
    let (f, g) = (affine(a, field)?, affine(b, field)?);
    let p = point(at, field)?;
    let n = intersection_multiplicity(&f, &g, &p)?;
    Ok(Report {
        command: "intersect",
        inputs: json!({"f": f.to_string(), "g": g.to_string(), "at": at, "field": field}),
        results: vec![json!({"intersection": value(&n)})],
        pass: true,
        text: format!("I_({}, {})({}, {}) = {}\n", p[0], p[1], f, g, n),
    })
}

pub fn bidegree(text: &str, a: u32, b: u32, field: i64) -> Res {
    let f = affine(text, field)?;
    let ok = plane::has_bidegree(&f, a, b);
    Ok(Report {
        command: "bidegree",
        inputs: json!({"poly": f.to_string(), "a": a, "b": b, "field": field}),
        results: vec![json!({"has_bidegree": ok})],
        pass: ok,
        text: format!(
            "{} {} bidegree ({},{})\n",
            f,
            if ok { "has" } else { "does not have" },
            a,
            b
        ),
    })
}

pub fn homogenize(text: &str, field: i64) -> Res {
    let f = affine(text, field)?;
    let h = plane::homogenize(&f);
    Ok(Report {
        command: "homogenize",
        inputs: json!({"poly": f.to_string(), "field": field}),
        results: vec![json!({"homogenized": h.to_string()})],
        pass: true,
        text: format!("{}\n", h),
    })
}

pub fn dehomogenize(text: &str, field: i64) -> Res {
    let f = parse_poly(text, 3, fd(field))?;
    let g = plane::dehomogenize(&f)?;
    Ok(Report {
        command: "dehomogenize",
        inputs: json!({"poly": f.to_string(), "field": field}),
        results: vec![json!({"dehomogenized": g.to_string()})],
        pass: true,
        text: format!("{}\n", g),
    })
}

pub fn link(text: &str, m: u32, pt: &str, field: i64) -> Res {
    let c = FmCurve::new(m, parse_poly(text, 4, fd(field))?)?;
    let center: FmPoint<Scalar> = FmPoint::parse(m, pt, fd(field))?;
    let l = make_link(m, &center)?;
    let image = l.apply(&c)?;
    Ok(Report {
        command: "link",
        inputs: json!({"poly": c.to_string(), "m": m, "point": center.to_string(), "field": field}),
        results: vec![json!({
            "link": value(&l),
            "image": value(&image),
            "image_poly": image.to_string(),
            "class": image.class().to_string(),
        })],
        pass: true,
        text: format!("link: {}\nimage ({}): {}\n", l, image.class(), image),
    })
}

fn prediction(p: &Prediction) -> String {
    fn o<T: ToString>(v: Option<T>) -> String {
        v.map_or_else(|| "*".to_string(), |x| x.to_string())
    }
    format!(
        "[{},{},{},{};{}]",
        o(p.c2),
        o(p.s2),
        o(p.k),
        o(p.i_ps),
        o(p.m)
    )
}

pub fn chain(b: u32, n: Option<usize>) -> Res {
    let (cfg, default_n) = catalog::chain_start(b)?;
    let n = n.unwrap_or(default_n);
    let t = transversal_chain(&cfg, n)?;
    let check = verify_trace(&t);
    let landing_ok = t.landing.as_ref().is_none_or(|l| l.holds);
    let pass = check.ok() && landing_ok;
    let mut text = String::new();
    writeln!(
        text,
        "transversal chain of {} links for bidegree (3,{})",
        n, b
    )
    .unwrap();
    writeln!(
        text,
        "{:>4}  {:<10}  {:<18}  {:<18}",
        "step", "link", "predicted", "actual"
    )
    .unwrap();
    writeln!(
        text,
        "{:>4}  {:<10}  {:<18}  {:<18}",
        0,
        "",
        "",
        t.initial_info.to_string()
    )
    .unwrap();
    for (i, s) in t.steps.iter().enumerate() {
        let arrow = format!("F_{}->F_{}", s.link.source_m, s.link.target_m);
        writeln!(
            text,
            "{:>4}  {:<10}  {:<18}  {:<18}",
            i + 1,
            arrow,
            prediction(&s.predicted),
            s.actual.to_string()
        )
        .unwrap();
    }
    writeln!(text, "cumulative prediction {}", prediction(&t.cumulative)).unwrap();
    if let Some(l) = &t.landing {
        writeln!(
            text,
            "landing {} vs {}: {}",
            l.predicted,
            l.actual,
            pass_word(l.holds)
        )
        .unwrap();
    }
    if let Some(m) = &check.first_mismatch {
        writeln!(
            text,
            "mismatch at step {}: {} cached {} recomputed {}",
            m.step, m.quantity, m.cached, m.recomputed
        )
        .unwrap();
    }
    writeln!(text, "{}", pass_word(pass)).unwrap();
    Ok(Report {
        command: "chain",
        inputs: json!({"b": b, "n": n}),
        results: vec![json!({"trace": value(&t), "verification": value(&check)})],
        pass,
        text,
    })
}

pub fn witness(a: u32, b: u32) -> Res {
    let w = catalog::witness(a, b)?;
    let pass = w.k() == Some(w.entry.expected_k);
    let text = format!(
        "({},{}) {:?}: {} at the origin, expected A_{}: {}\nF = {}\n",
        a,
        b,
        w.entry.construction,
        w.report,
        w.entry.expected_k,
        pass_word(pass),
        w.poly
    );
    Ok(Report {
        command: "witness",
        inputs: json!({"a": a, "b": b}),
        results: vec![json!({
            "entry": value(&w.entry),
            "poly": w.poly.to_string(),
            "report": value(&w.report),
            "reduction": value(&w.reduction),
        })],
        pass,
        text,
    })
}

pub fn bounds(b: Option<u32>) -> Res {
    let bs: Vec<u32> = b.map_or_else(|| (3..=12).collect(), |b| vec![b]);
    let mut results = Vec::new();
    let mut pass = true;
    let mut text = String::new();
    writeln!(
        text,
        "{:>4} {:>3} {:>3} {:>6} {:>10} {:>5} {:>6} {:>7}  {:<10} alpha<7/6",
        "b", "m", "r", "genus", "reducible", "knot", "upper", "N(3,b)", "alpha"
    )
    .unwrap();
    for b in bs {
        let r = catalog::bounds(b)?;
        let a = catalog::alpha_check(b)?;
        pass &= a.holds;
        let opt = |v: Option<u32>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
        writeln!(
            text,
            "{:>4} {:>3} {:>3} {:>6} {:>10} {:>5} {:>6} {:>7}  {:<10} {}",
            r.b,
            r.m,
            r.r,
            r.genus_bound,
            r.reducible_bound,
            opt(r.knot_bound),
            r.combined_upper,
            opt(r.known_value),
            a.ratio.to_string(),
            if a.holds { "yes" } else { "no" }
        )
        .unwrap();
        results.push(json!({"bounds": value(&r), "alpha": value(&a)}));
    }
    Ok(Report {
        command: "bounds",
        inputs: json!({"b": b}),
        results,
        pass,
        text,
    })
}

pub fn verify_table(b: Option<u32>) -> Res {
    let bs: Vec<u32> = b.map_or_else(|| (3..=12).collect(), |b| vec![b]);
    let rows: Vec<Result<RowReport, Error>> = std::thread::scope(|s| {
        let handles: Vec<_> = bs
            .iter()
            .map(|&b| s.spawn(move || catalog::verify_table_row(b)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("row thread"))
            .collect()
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let pass = rows.iter().all(|r| r.pass);
    let mut text = String::new();
    writeln!(
        text,
        "{:>4} {:>9} {:>6} {:>6}  status",
        "b", "expected", "found", "upper"
    )
    .unwrap();
    for r in &rows {
        let found = r.found_k.map_or_else(|| "-".to_string(), |k| k.to_string());
        writeln!(
            text,
            "{:>4} {:>9} {:>6} {:>6}  {}",
            r.b,
            r.expected_k,
            found,
            r.bounds.combined_upper,
            pass_word(r.pass)
        )
        .unwrap();
        for st in r.stages.iter().filter(|s| !s.ok) {
            writeln!(
                text,
                "       {} stage {}: {}",
                if st.required {
                    "failed"
                } else {
                    "inconclusive"
                },
                st.name,
                st.detail
            )
            .unwrap();
        }
    }
    let cells = |f: &dyn Fn(&RowReport) -> String| {
        rows.iter()
            .map(|r| format!("{:>3}", f(r)))
            .collect::<Vec<_>>()
            .join("")
    };
    writeln!(text).unwrap();
    writeln!(text, "b       {}", cells(&|r| r.b.to_string())).unwrap();
    writeln!(
        text,
        "N(3,b)  {}",
        cells(&|r| r.found_k.map_or_else(|| "?".to_string(), |k| k.to_string()))
    )
    .unwrap();
    writeln!(text, "{}", pass_word(pass)).unwrap();
    Ok(Report {
        command: "verify-table",
        inputs: json!({"b": b}),
        results: rows.iter().map(value).collect(),
        pass,
        text,
    })
}

pub fn identities() -> Res {
    let mut results = Vec::new();
    let mut pass = true;
    let mut text = String::new();
    let suite = catalog::identity_suite()?;
    let aux = catalog::auxiliary_identities()?;
    for id in suite.iter().chain(aux.iter()) {
        let c = id.check()?;
        pass &= c.holds;
        let how = if c.up_to_scalar {
            " (up to a scalar)"
        } else {
            ""
        };
        writeln!(text, "{}  {}{}", pass_word(c.holds), c.name, how).unwrap();
        results.push(value(&c));
    }
    Ok(Report {
        command: "identities",
        inputs: json!({}),
        results,
        pass,
        text,
    })
}
