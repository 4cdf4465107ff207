//! Command-line front end: parse polynomial expressions, dispatch to the
//! library, and emit one compact JSON document per invocation.
//!
//! Exit codes: 0 = computed answer (including negative answers such as a
//! NonIdentity verdict or an absent root), 1 = a verification failed
//! (unrecognized centralizer, failed acceptance run), 2 = usage or
//! domain errors.

use clap::{Args, Parser, Subcommand};
use ncalg::expr;
use ncalg::{
    cache, centralizer_basis, charpoly, nc_root, pi_test, recognize_generator, spectral_probe,
    ut_eval, AlphabetOrder, CentralizerReport, ConcreteMatrix, Field, FieldSpec, Fp64, FreePoly,
    PiVerdict, Rationals, Word,
};
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ncalg", version, about = "Exact noncommutative polynomial algebra")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Centralizer basis up to a degree bound, recognized as k[h]
    Centralizer(CentralizerArgs),
    /// Randomized polynomial-identity test on n x n matrices
    Pitest(PitestArgs),
    /// Characteristic polynomial of the generic n x n matrix
    Charpoly(CharpolyArgs),
    /// Minimal polynomial of a random specialization
    Minpoly(MinpolyArgs),
    /// Hunt for an irreducible characteristic-polynomial specialization
    Spectral(SpectralArgs),
    /// Compare two infinite word powers u^inf vs v^inf
    Wordcmp(WordcmpArgs),
    /// Project a generator set along its maximal word class
    Bergman(BergmanArgs),
    /// Noncommutative k-th root
    Ncroot(NcrootArgs),
    /// Evaluate at random strict upper-triangular matrices
    Uttrace(UttraceArgs),
    /// Run the full acceptance suite
    #[command(name = "verify-all")]
    VerifyAll(VerifyAllArgs),
}

/// Flag accepted everywhere for interface stability; output is always a
/// single JSON document, so this is the default and only mode.
#[derive(Args)]
struct JsonFlag {
    #[arg(long)]
    #[allow(dead_code)]
    json: bool,
}

#[derive(Args)]
struct CentralizerArgs {
    /// Polynomial, e.g. "x^2" or "x*y - y*x"
    #[arg(short = 'f', long = "f")]
    f: String,
    /// Alphabet size (inferred from the expression when omitted)
    #[arg(short = 's', long)]
    s: Option<usize>,
    /// Degree bound D
    #[arg(short = 'd', long, conflicts_with = "auto_degree")]
    d: Option<usize>,
    /// Raise D until the recognized h stops changing
    #[arg(long)]
    auto_degree: bool,
    /// Cap for --auto-degree
    #[arg(long, default_value_t = 16)]
    max_degree: usize,
    /// Coefficient field: q or p:<prime>
    #[arg(long, default_value = "p:2147483647")]
    field: String,
    /// Cache directory (NCALG_CACHE environment variable also works)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[command(flatten)]
    json: JsonFlag,
}

#[derive(Args)]
struct PitestArgs {
    #[arg(short = 'f', long = "f")]
    f: String,
    #[arg(short = 's', long)]
    s: Option<usize>,
    /// Matrix order n
    #[arg(short = 'n', long)]
    n: usize,
    #[arg(long, default_value_t = 50)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampling modulus
    #[arg(short = 'q', long, default_value_t = 2147483647)]
    modulus: u64,
    /// Coefficient field of the input polynomial
    #[arg(long, default_value = "q")]
    field: String,
    #[command(flatten)]
    json: JsonFlag,
}

#[derive(Args)]
struct CharpolyArgs {
    #[arg(short = 'n', long)]
    n: usize,
    #[arg(long, default_value = "q")]
    field: String,
    #[command(flatten)]
    json: JsonFlag,
}

#[derive(Args)]
struct MinpolyArgs {
    #[arg(short = 'n', long)]
    n: usize,
    #[arg(short = 'q', long, default_value_t = 2147483647)]
    modulus: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    json: JsonFlag,
}

#[derive(Args)]
struct SpectralArgs {
    #[arg(short = 'f', long = "f")]
    f: String,
    #[arg(short = 's', long)]
    s: Option<usize>,
    #[arg(short = 'n', long)]
    n: usize,
    #[arg(long, default_value_t = 200)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short = 'q', long, default_value_t = 65537)]
    modulus: u64,
    #[arg(long, default_value = "q")]
    field: String,
    #[command(flatten)]
    json: JsonFlag,
}

#[derive(Args)]
struct WordcmpArgs {
    /// First word, spelled in letters, e.g. "ab"
    u: String,
    /// Second word
    v: String,
    /// Alphabet order as a letter list, e.g. "bac" for b < a < c
    #[arg(long)]
    order: Option<String>,
    #[command(flatten)]
    json: JsonFlag,
}

#[derive(Args)]
struct BergmanArgs {
    /// Generator expressions
    #[arg(required = true)]
    gens: Vec<String>,
    #[arg(short = 's', long)]
    s: Option<usize>,
    #[arg(long)]
    order: Option<String>,
    #[arg(long, default_value = "q")]
    field: String,
    #[command(flatten)]
    json: JsonFlag,
}

#[derive(Args)]
struct NcrootArgs {
    #[arg(short = 'f', long = "f")]
    f: String,
    #[arg(short = 'k', long)]
    k: u32,
    #[arg(short = 's', long)]
    s: Option<usize>,
    #[arg(long, default_value = "q")]
    field: String,
    #[command(flatten)]
    json: JsonFlag,
}

#[derive(Args)]
struct UttraceArgs {
    #[arg(short = 'f', long = "f")]
    f: String,
    #[arg(short = 's', long)]
    s: Option<usize>,
    #[arg(short = 'n', long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short = 'q', long, default_value_t = 2147483647)]
    modulus: u64,
    #[command(flatten)]
    json: JsonFlag,
}

#[derive(Args)]
struct VerifyAllArgs {
    #[command(flatten)]
    json: JsonFlag,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Centralizer(a) => cmd_centralizer(a),
        Cmd::Pitest(a) => cmd_pitest(a),
        Cmd::Charpoly(a) => cmd_charpoly(a),
        Cmd::Minpoly(a) => cmd_minpoly(a),
        Cmd::Spectral(a) => cmd_spectral(a),
        Cmd::Wordcmp(a) => cmd_wordcmp(a),
        Cmd::Bergman(a) => cmd_bergman(a),
        Cmd::Ncroot(a) => cmd_ncroot(a),
        Cmd::Uttrace(a) => cmd_uttrace(a),
        Cmd::VerifyAll(a) => cmd_verify_all(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            println!("{}", json!({ "error": message }));
            ExitCode::from(2)
        }
    }
}

fn emit(v: &Value) {
    println!("{v}");
}

fn parse_field(spec: &str) -> Result<FieldSpec, String> {
    FieldSpec::parse(spec).map_err(|_| format!("bad field spec '{spec}': use q or p:<prime>"))
}

fn parse_input<K: Field>(
    text: &str,
    field: K,
    s: Option<usize>,
) -> Result<FreePoly<K>, String> {
    expr::parse_poly_text(text, field, s)
}

// ---------------------------------------------------------------- centralizer

fn cmd_centralizer(a: CentralizerArgs) -> Result<u8, String> {
    match parse_field(&a.field)? {
        FieldSpec::Rational => centralizer_generic(Rationals, &a),
        FieldSpec::Prime(p) => centralizer_generic(Fp64::new(p).map_err(|e| e.to_string())?, &a),
    }
}

fn centralizer_generic<K: Field>(field: K, a: &CentralizerArgs) -> Result<u8, String> {
    let f = parse_input(&a.f, field.clone(), a.s)?;
    let cache_dir = cache::resolve_dir(a.cache_dir.as_deref());
    if a.auto_degree {
        let deg_f = f.degree().finite().ok_or("constant polynomial has no centralizer run")?;
        let mut d = deg_f.max(2);
        let cap = a.max_degree.max(d);
        let mut prev_h: Option<String> = None;
        let mut stable = 0usize;
        loop {
            let (bytes, recognized, h) = centralizer_at(&field, &f, d, cache_dir.as_deref())?;
            if h.is_some() && h == prev_h {
                stable += 1;
            } else {
                stable = 0;
            }
            prev_h = h;
            if (stable >= 2 && recognized) || d >= cap {
                print_raw(&bytes);
                return Ok(if recognized { 0 } else { 1 });
            }
            d += 1;
        }
    } else {
        let d = a.d.unwrap_or(8);
        let (bytes, recognized, _) = centralizer_at(&field, &f, d, cache_dir.as_deref())?;
        print_raw(&bytes);
        Ok(if recognized { 0 } else { 1 })
    }
}

fn print_raw(bytes: &[u8]) {
    let mut out = std::io::stdout().lock();
    out.write_all(bytes).expect("stdout write");
    out.flush().expect("stdout flush");
}

/// Report bytes for one (f, D) computation, served from the cache when
/// possible. Returns (bytes, recognized, h text).
fn centralizer_at<K: Field>(
    field: &K,
    f: &FreePoly<K>,
    d: usize,
    cache_dir: Option<&std::path::Path>,
) -> Result<(Vec<u8>, bool, Option<String>), String> {
    let key = cache::cache_key(&f.canonical_text(), &field.spec_str(), d);
    if let Some(dir) = cache_dir {
        if let Some(bytes) = cache::lookup(dir, &key) {
            let parsed: Value = serde_json::from_slice(&bytes)
                .map_err(|e| format!("corrupt cache entry {key}: {e}"))?;
            let recognized = parsed["recognized"].as_bool().unwrap_or(false);
            let h = parsed["h"].as_str().map(|s| s.to_string());
            return Ok((bytes, recognized, h));
        }
    }
    let basis = centralizer_basis(f, d).map_err(|e| e.to_string())?;
    let report = recognize_generator(basis);
    let value = centralizer_report_json(field, &report, d);
    let mut bytes = value.to_string().into_bytes();
    bytes.push(b'\n');
    if let Some(dir) = cache_dir {
        cache::store(dir, &key, &bytes).map_err(|e| e.to_string())?;
    }
    let h = report.h.as_ref().map(|h| h.canonical_text());
    Ok((bytes, report.recognized, h))
}

fn centralizer_report_json<K: Field>(
    field: &K,
    report: &CentralizerReport<K>,
    d: usize,
) -> Value {
    let basis: Vec<Value> = report
        .basis
        .per_degree
        .iter()
        .enumerate()
        .map(|(deg, elems)| {
            let texts: Vec<Value> =
                elems.iter().map(|g| Value::String(g.canonical_text())).collect();
            json!([deg, texts])
        })
        .collect();
    let certificates: Vec<Value> = report
        .certificates
        .iter()
        .map(|c| {
            let coeffs: Vec<Value> =
                c.q.coeffs().iter().map(|e| field.elem_json(e)).collect();
            json!({ "element": c.element.canonical_text(), "q": coeffs })
        })
        .collect();
    let mut m = Map::new();
    m.insert("f".into(), Value::String(report.basis.f.canonical_text()));
    m.insert("field".into(), Value::String(field.spec_str()));
    m.insert("D".into(), json!(d));
    m.insert("basis".into(), Value::Array(basis));
    m.insert(
        "h".into(),
        report
            .h
            .as_ref()
            .map(|h| Value::String(h.canonical_text()))
            .unwrap_or(Value::Null),
    );
    m.insert("certificates".into(), Value::Array(certificates));
    m.insert("recognized".into(), json!(report.recognized));
    m.insert("boundary_degree".into(), json!(report.boundary_degree));
    if let Some(cx) = &report.counterexample {
        m.insert("counterexample".into(), Value::String(cx.canonical_text()));
    }
    if let Some(diag) = &report.diagnostic {
        m.insert("diagnostic".into(), Value::String(diag.clone()));
    }
    Value::Object(m)
}

// --------------------------------------------------------------------- pitest

fn cmd_pitest(a: PitestArgs) -> Result<u8, String> {
    match parse_field(&a.field)? {
        FieldSpec::Rational => pitest_generic(Rationals, &a),
        FieldSpec::Prime(p) => pitest_generic(Fp64::new(p).map_err(|e| e.to_string())?, &a),
    }
}

fn pitest_generic<K: Field>(field: K, a: &PitestArgs) -> Result<u8, String> {
    let f = parse_input(&a.f, field, a.s)?;
    let report = pi_test(&f, a.n, a.samples, a.seed, a.modulus).map_err(|e| e.to_string())?;
    let confidence = match report.verdict {
        PiVerdict::Identity => json!({
            "num": report.degree,
            "den": report.q,
            "pow": report.samples,
        }),
        PiVerdict::NonIdentity => Value::Null,
    };
    let mut m = Map::new();
    m.insert(
        "verdict".into(),
        Value::String(
            match report.verdict {
                PiVerdict::Identity => "Identity",
                PiVerdict::NonIdentity => "NonIdentity",
            }
            .into(),
        ),
    );
    m.insert("samples".into(), json!(report.samples));
    m.insert("seed".into(), json!(report.seed));
    m.insert("q".into(), json!(report.q));
    m.insert("n".into(), json!(a.n));
    m.insert("confidence_bound".into(), confidence);
    if let Some(witness) = &report.witness {
        m.insert("witness".into(), matrices_json(witness));
    }
    emit(&Value::Object(m));
    Ok(0)
}

fn matrices_json(mats: &[ConcreteMatrix<Fp64>]) -> Value {
    Value::Array(mats.iter().map(matrix_json).collect())
}

fn matrix_json(m: &ConcreteMatrix<Fp64>) -> Value {
    let n = m.n();
    let flat: Vec<Value> = (0..n)
        .flat_map(|i| (0..n).map(move |j| json!(*m.entry(i, j))))
        .collect();
    Value::Array(flat)
}

// ------------------------------------------------------------------- charpoly

fn cmd_charpoly(a: CharpolyArgs) -> Result<u8, String> {
    if a.n == 0 {
        return Err("matrix order must be positive".into());
    }
    match parse_field(&a.field)? {
        FieldSpec::Rational => charpoly_generic(Rationals, &a),
        FieldSpec::Prime(p) => charpoly_generic(Fp64::new(p).map_err(|e| e.to_string())?, &a),
    }
}

fn charpoly_generic<K: Field>(field: K, a: &CharpolyArgs) -> Result<u8, String> {
    let gens = ncalg::genmat::generic_generators(field.clone(), a.n, 1);
    let cp = charpoly(&gens[0]);
    let coeffs: Vec<Value> = cp.coeffs().iter().map(|c| Value::String(c.text())).collect();
    emit(&json!({
        "n": a.n,
        "field": field.spec_str(),
        "coeffs": coeffs,
    }));
    Ok(0)
}

// -------------------------------------------------------------------- minpoly

fn cmd_minpoly(a: MinpolyArgs) -> Result<u8, String> {
    if a.n == 0 {
        return Err("matrix order must be positive".into());
    }
    let fq = Fp64::new(a.modulus).map_err(|e| e.to_string())?;
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(a.seed);
    let m = ncalg::genmat::random_matrix(&fq, a.n, &mut rng);
    let mp = ncalg::genmat::minpoly(&m);
    let cp = charpoly(&m);
    let divides = cp.rem(&mp).is_zero();
    emit(&json!({
        "n": a.n,
        "q": a.modulus,
        "seed": a.seed,
        "minpoly": mp.coeffs(),
        "charpoly": cp.coeffs(),
        "divides": divides,
    }));
    Ok(if divides { 0 } else { 1 })
}

// ------------------------------------------------------------------- spectral

fn cmd_spectral(a: SpectralArgs) -> Result<u8, String> {
    match parse_field(&a.field)? {
        FieldSpec::Rational => spectral_generic(Rationals, &a),
        FieldSpec::Prime(p) => spectral_generic(Fp64::new(p).map_err(|e| e.to_string())?, &a),
    }
}

fn spectral_generic<K: Field>(field: K, a: &SpectralArgs) -> Result<u8, String> {
    let f = parse_input(&a.f, field, a.s)?;
    let report =
        spectral_probe(&f, a.n, a.trials, a.seed, a.modulus).map_err(|e| e.to_string())?;
    let mut m = Map::new();
    m.insert(
        "verdict".into(),
        Value::String(
            if report.irreducible_found { "IrreducibleFound" } else { "NotFound" }.into(),
        ),
    );
    m.insert("samples".into(), json!(report.trials));
    m.insert("seed".into(), json!(report.seed));
    m.insert("q".into(), json!(report.q));
    m.insert("n".into(), json!(a.n));
    m.insert("confidence_bound".into(), Value::Null);
    m.insert("squarefree_count".into(), json!(report.squarefree_count));
    if let Some(witness) = &report.witness {
        m.insert("witness".into(), matrices_json(witness));
    }
    if let Some(cp) = &report.witness_charpoly {
        m.insert("witness_charpoly".into(), json!(cp.coeffs()));
    }
    if let Some(t) = report.witness_trial {
        m.insert("witness_trial".into(), json!(t));
    }
    emit(&Value::Object(m));
    Ok(if report.irreducible_found { 0 } else { 1 })
}

// -------------------------------------------------------------------- wordcmp

fn parse_word_arg(text: &str) -> Result<Word, String> {
    Word::parse_letters(text).map_err(|e| format!("bad word '{text}': {e}"))
}

fn order_for(words: &[&Word], order: &Option<String>) -> Result<(AlphabetOrder, String), String> {
    let max_letter = words
        .iter()
        .flat_map(|w| w.letters().iter().copied())
        .max()
        .ok_or("empty word")?;
    match order {
        Some(spec) => {
            let ord = AlphabetOrder::from_letters(spec).map_err(|e| e.to_string())?;
            if usize::from(max_letter) >= ord.size() {
                return Err(format!(
                    "word letter '{}' is outside the declared order '{spec}'",
                    (b'a' + max_letter) as char
                ));
            }
            Ok((ord, spec.clone()))
        }
        None => {
            let s = usize::from(max_letter) + 1;
            let spelled: String = (0..s as u8).map(|i| (b'a' + i) as char).collect();
            Ok((AlphabetOrder::natural(s), spelled))
        }
    }
}

fn cmd_wordcmp(a: WordcmpArgs) -> Result<u8, String> {
    let u = parse_word_arg(&a.u)?;
    let v = parse_word_arg(&a.v)?;
    let (ord, spelled) = order_for(&[&u, &v], &a.order)?;
    let cmp = match ncalg::inf_cmp(&u, &v, &ord) {
        std::cmp::Ordering::Greater => "GT",
        std::cmp::Ordering::Equal => "EQ",
        std::cmp::Ordering::Less => "LT",
    };
    emit(&json!({
        "cmp": cmp,
        "u": a.u,
        "v": a.v,
        "order": spelled,
    }));
    Ok(0)
}

// -------------------------------------------------------------------- bergman

fn cmd_bergman(a: BergmanArgs) -> Result<u8, String> {
    match parse_field(&a.field)? {
        FieldSpec::Rational => bergman_generic(Rationals, &a),
        FieldSpec::Prime(p) => bergman_generic(Fp64::new(p).map_err(|e| e.to_string())?, &a),
    }
}

fn bergman_generic<K: Field>(field: K, a: &BergmanArgs) -> Result<u8, String> {
    let mut parsed = Vec::new();
    for text in &a.gens {
        parsed.push(expr::parse_raw(text).map_err(|e| format!("{text}: {e}"))?);
    }
    let needed = parsed.iter().map(expr::required_alphabet).max().unwrap_or(0).max(1);
    let s = match a.s {
        Some(s) if s >= needed => s,
        Some(s) => return Err(format!("alphabet {s} too small; expressions need {needed}")),
        None => needed,
    };
    let gens: Vec<FreePoly<K>> = parsed
        .iter()
        .map(|e| expr::lower(e, field.clone(), s).map_err(|er| er.to_string()))
        .collect::<Result<_, _>>()?;
    let (ord, spelled) = match &a.order {
        Some(spec) => {
            let ord = AlphabetOrder::from_letters(spec).map_err(|e| e.to_string())?;
            if ord.size() < s {
                return Err(format!("order '{spec}' covers fewer than {s} letters"));
            }
            (ord, spec.clone())
        }
        None => {
            let spelled: String = (0..s as u8).map(|i| (b'a' + i) as char).collect();
            (AlphabetOrder::natural(s), spelled)
        }
    };
    let proj = ncalg::bergman_projection(&gens, &ord).map_err(|e| e.to_string())?;
    let images: Vec<Value> =
        proj.images.iter().map(|im| Value::String(im.text("v"))).collect();
    emit(&json!({
        "z": proj.z.text(),
        "images": images,
        "order": spelled,
    }));
    Ok(0)
}

// --------------------------------------------------------------------- ncroot

fn cmd_ncroot(a: NcrootArgs) -> Result<u8, String> {
    match parse_field(&a.field)? {
        FieldSpec::Rational => ncroot_generic(Rationals, &a),
        FieldSpec::Prime(p) => ncroot_generic(Fp64::new(p).map_err(|e| e.to_string())?, &a),
    }
}

fn ncroot_generic<K: Field>(field: K, a: &NcrootArgs) -> Result<u8, String> {
    let f = parse_input(&a.f, field, a.s)?;
    let root = nc_root(&f, a.k).map_err(|e| e.to_string())?;
    let (root_text, verified) = match &root {
        Some(g) => (Value::String(g.canonical_text()), g.pow(a.k) == f),
        None => (Value::Null, false),
    };
    emit(&json!({
        "f": f.canonical_text(),
        "k": a.k,
        "root": root_text,
        "verified": verified,
    }));
    Ok(0)
}

// -------------------------------------------------------------------- uttrace

fn cmd_uttrace(a: UttraceArgs) -> Result<u8, String> {
    let fq = Fp64::new(a.modulus).map_err(|e| e.to_string())?;
    let f = parse_input(&a.f, fq, a.s)?;
    let image = ut_eval(&f, a.n, a.seed, a.modulus).map_err(|e| e.to_string())?;
    emit(&json!({
        "n": a.n,
        "q": a.modulus,
        "seed": a.seed,
        "matrix": matrix_json(&image),
        "trace": image.trace(),
    }));
    Ok(0)
}

// ----------------------------------------------------------------- verify-all

fn cmd_verify_all(_a: VerifyAllArgs) -> Result<u8, String> {
    let mut rows = Vec::new();
    let mut all_ok = true;
    for c in ncalg::acceptance::criteria() {
        let start = std::time::Instant::now();
        let outcome = (c.run)();
        let secs = start.elapsed().as_secs_f64();
        let within_budget = start.elapsed().as_secs() < c.budget_secs;
        let (passed, detail) = match outcome {
            Ok(d) if within_budget => (true, d),
            Ok(d) => (false, format!("{d} [exceeded {}s budget]", c.budget_secs)),
            Err(e) => (false, e),
        };
        all_ok &= passed;
        rows.push(json!({
            "name": c.name,
            "passed": passed,
            "seconds": (secs * 10.0).round() / 10.0,
            "detail": detail,
        }));
    }
    emit(&json!({ "passed": all_ok, "criteria": rows }));
    Ok(if all_ok { 0 } else { 1 })
}
