//! Command-line surface. Every command prints one JSON report, or a plain
//! table with `--table`.

use std::ffi::OsString;
use std::fs;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::covers::{self, CoversError, GoodWeight, Infeasibility, WeightedComplex};
use crate::groebner::{self, GroebnerError, Polynomial, Tiebreak, TermOrder};
use crate::homalg::{self, configured_var_cap, Engine, Field, HomalgError};
use crate::minors::{self, BiDiagram, MinorsError, MinorsParams, Partition};
use crate::monomial::{self, MonomialError, MonomialIdeal};
use crate::polar::{self, PolarError};
use crate::simplicial::{self, SimplicialComplex, SimplicialError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_RANGE: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn parse(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: msg.into(),
        }
    }

    fn range(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_RANGE,
            message: msg.into(),
        }
    }

    fn resource(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_RESOURCE,
            message: msg.into(),
        }
    }

    fn other(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_FAILURE,
            message: msg.into(),
        }
    }
}

impl From<SimplicialError> for Failure {
    fn from(e: SimplicialError) -> Self {
        match e {
            SimplicialError::VertexOutOfRange { .. } | SimplicialError::BadVertexCount(_) => Failure::range(e.to_string()),
            _ => Failure::parse(e.to_string()),
        }
    }
}

impl From<MonomialError> for Failure {
    fn from(e: MonomialError) -> Self {
        match e {
            MonomialError::Parse(_) => Failure::parse(e.to_string()),
            MonomialError::Complex(c) => c.into(),
            MonomialError::Overflow => Failure::resource(e.to_string()),
            _ => Failure::range(e.to_string()),
        }
    }
}

impl From<PolarError> for Failure {
    fn from(e: PolarError) -> Self {
        match e {
            PolarError::TooManyVariables(_) | PolarError::TooLarge(_) => Failure::resource(e.to_string()),
            PolarError::Monomial(m) => m.into(),
            PolarError::Complex(c) => c.into(),
            _ => Failure::range(e.to_string()),
        }
    }
}

impl From<HomalgError> for Failure {
    fn from(e: HomalgError) -> Self {
        match e {
            HomalgError::ResourceCap { .. } => Failure::resource(e.to_string()),
            HomalgError::Monomial(m) => m.into(),
            HomalgError::Polar(p) => p.into(),
            _ => Failure::range(e.to_string()),
        }
    }
}

impl From<CoversError> for Failure {
    fn from(e: CoversError) -> Self {
        match e {
            CoversError::Complex(c) => c.into(),
            CoversError::Internal(_) | CoversError::InsufficientData => Failure::other(e.to_string()),
            _ => Failure::range(e.to_string()),
        }
    }
}

impl From<MinorsError> for Failure {
    fn from(e: MinorsError) -> Self {
        match e {
            MinorsError::BadPartition => Failure::parse(e.to_string()),
            MinorsError::OracleTooLarge(_) => Failure::resource(e.to_string()),
            MinorsError::ClassificationMismatch(_) => Failure::other(e.to_string()),
            _ => Failure::range(e.to_string()),
        }
    }
}

impl From<GroebnerError> for Failure {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::Parse(_) | GroebnerError::NoGenerators | GroebnerError::BadOrder(_) => Failure::parse(e.to_string()),
            GroebnerError::DegreeCap { .. } | GroebnerError::ResourceGuard(_) => Failure::resource(e.to_string()),
            GroebnerError::Certificate => Failure::other(e.to_string()),
            GroebnerError::Monomial(m) => m.into(),
            GroebnerError::Homalg(h) => h.into(),
            _ => Failure::range(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

#[derive(Parser, Debug)]
#[command(name = "symcomb", version, about = "Exact experiments on symbolic powers, covers, minors and Gröbner deformations")]
pub struct Cli {
    /// Render a plain-text table instead of JSON.
    #[arg(long, global = true)]
    pub table: bool,
    /// Seed for randomized runs; always echoed.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Matroid, duality and connectedness queries on a simplicial complex.
    Complex(ComplexArgs),
    /// Symbolic powers, polarization, associated primes and homological invariants.
    Ideal(IdealArgs),
    /// k-covers, basic covers and the Hilbert function of the vertex cover algebra.
    Covers(CoversArgs),
    /// Combinatorics of the algebra of t-minors.
    Minors(MinorsArgs),
    /// Gröbner bases, initial ideals and deformation reports.
    Groebner(GroebnerArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ComplexSource {
    /// JSON file `{"n": .., "facets": [[..], ..]}` with 1-based vertices.
    #[arg(long)]
    pub file: Option<String>,
    /// Built-in complex: `cycle:N`, `uniform:R,N`, `simplex:N`, `boundary:N`.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Args, Debug)]
pub struct ComplexArgs {
    #[command(flatten)]
    pub source: ComplexSource,
    #[arg(long)]
    pub matroid: bool,
    #[arg(long)]
    pub dual: bool,
    #[arg(long)]
    pub connectivity: bool,
    #[arg(long)]
    pub strong: bool,
    #[arg(long)]
    pub fvector: bool,
    /// Reduced homology ranks over the field of `--char`.
    #[arg(long)]
    pub homology: bool,
    #[arg(long = "char", default_value_t = 0)]
    pub characteristic: u64,
}

#[derive(Args, Debug)]
pub struct IdealArgs {
    /// Complex whose cover ideal J(Δ, ω) is used.
    #[arg(long)]
    pub cover: Option<String>,
    /// Built-in complex for the cover ideal, as in `complex --builtin`.
    #[arg(long)]
    pub cover_builtin: Option<String>,
    /// Facet weights, aligned with the sorted facet list.
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<u32>>,
    /// Use J(Δ, ω)^(k).
    #[arg(long)]
    pub symbolic: Option<u32>,
    /// Prime generated by these 1-based variables.
    #[arg(long, value_delimiter = ',')]
    pub prime: Option<Vec<usize>>,
    /// Power of `--prime`.
    #[arg(long, default_value_t = 1)]
    pub power: u32,
    /// Explicit monomial generators, e.g. `x1*x2,x3^2`.
    #[arg(long)]
    pub gens: Option<String>,
    /// Number of variables for `--prime` and `--gens`.
    #[arg(short = 'n', long)]
    pub vars: Option<usize>,
    #[arg(long)]
    pub depth: bool,
    #[arg(long)]
    pub cm: bool,
    #[arg(long)]
    pub reg: bool,
    #[arg(long)]
    pub betti: bool,
    #[arg(long)]
    pub polarize: bool,
    #[arg(long = "ass-polar")]
    pub ass_polar: bool,
    /// Compare with the ordinary power.
    #[arg(long)]
    pub ordinary: bool,
    #[arg(long = "eisenbud-goto")]
    pub eisenbud_goto: bool,
    #[arg(long)]
    pub obstruction: bool,
    /// `koszul` or `polar` (Hochster on the polarization, subject to the variable cap).
    #[arg(long, default_value = "koszul")]
    pub engine: String,
    #[arg(long = "char", default_value_t = 0)]
    pub characteristic: u64,
}

#[derive(Args, Debug)]
pub struct CoversArgs {
    #[command(flatten)]
    pub source: ComplexSource,
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<u32>>,
    #[arg(short = 'k', long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, value_delimiter = ',')]
    pub classify: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    pub reduce: Option<Vec<u32>>,
    #[arg(long)]
    pub enumerate: bool,
    #[arg(long)]
    pub hf: bool,
    /// Estimate dim Ā(Δ, ω) from HF values up to this k.
    #[arg(long)]
    pub dim: Option<u32>,
    #[arg(long = "good-weight")]
    pub good_weight: bool,
    /// Facet for `--extend`, 1-based.
    #[arg(long, value_delimiter = ',')]
    pub facet: Option<Vec<usize>>,
    /// Values on `--facet` to extend to a basic cover.
    #[arg(long, value_delimiter = ',')]
    pub extend: Option<Vec<u32>>,
    #[arg(long)]
    pub rigidity: bool,
}

#[derive(Args, Debug)]
pub struct MinorsArgs {
    #[arg(short = 't', default_value_t = 2)]
    pub t: u32,
    #[arg(short = 'm', default_value_t = 3)]
    pub m: u32,
    #[arg(short = 'n', default_value_t = 4)]
    pub n: u32,
    #[arg(long)]
    pub reg: bool,
    #[arg(long)]
    pub sagbi: bool,
    #[arg(long)]
    pub bounds: bool,
    #[arg(long = "shape-relations")]
    pub shape_relations: bool,
    /// HF of A_t in this degree, with the oracle when feasible.
    #[arg(long)]
    pub hf: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    pub predecessors: Option<Vec<u32>>,
    /// Bi-diagram `g1,g2,..|l1,l2,..`.
    #[arg(long)]
    pub multiplicity: Option<String>,
    /// Identity `a1,a2,..=b1,b2,..`.
    #[arg(long)]
    pub identity: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub q: u32,
    /// Enumerate homogeneous primitive identities of this length against t+…+t.
    #[arg(long)]
    pub hpi: Option<u32>,
    /// Check the determinantal relations on seeded random matrices.
    #[arg(long = "det-check")]
    pub det_check: Option<u32>,
}

#[derive(Args, Debug)]
pub struct GroebnerArgs {
    /// Line-separated polynomials.
    #[arg(long)]
    pub file: Option<String>,
    /// Polynomials separated by `;`.
    #[arg(long)]
    pub ideal: Option<String>,
    /// Built-in ideal: `conca`, `minors2x:N`, `antidiagonal:N`.
    #[arg(long)]
    pub builtin: Option<String>,
    #[arg(short = 'n', long)]
    pub vars: Option<usize>,
    /// `lex`, `degrevlex` or `weighted`.
    #[arg(long, default_value = "degrevlex")]
    pub order: String,
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<u64>>,
    /// Tiebreak for weighted orders: `lex` or `degrevlex`.
    #[arg(long, default_value = "degrevlex")]
    pub tiebreak: String,
    /// Variable priority, largest first, 1-based.
    #[arg(long, value_delimiter = ',')]
    pub priority: Option<Vec<usize>>,
    /// Reverse the variable priority.
    #[arg(long)]
    pub reverse: bool,
    #[arg(long)]
    pub initial: bool,
    #[arg(long = "deform-report")]
    pub deform_report: bool,
    /// Decide membership of this polynomial in the radical.
    #[arg(long = "radical-member")]
    pub radical_member: Option<String>,
    /// Homogenize the ideal with respect to `--weights`.
    #[arg(long)]
    pub homogenize: bool,
    #[arg(long = "realize-weight")]
    pub realize_weight: bool,
    /// Check the 2×(N+1) antidiagonal equations up to radical.
    #[arg(long)]
    pub ara: Option<usize>,
}

struct Report {
    command: &'static str,
    inputs: Value,
    results: serde_json::Map<String, Value>,
    provenance: Vec<&'static str>,
    seed: u64,
    table: Vec<String>,
}

impl Report {
    fn new(command: &'static str, inputs: Value, seed: u64) -> Self {
        Report {
            command,
            inputs,
            results: serde_json::Map::new(),
            provenance: Vec::new(),
            seed,
            table: Vec::new(),
        }
    }

    fn put(&mut self, key: &str, value: Value, source: &'static str) {
        self.results.insert(key.to_string(), value);
        if !self.provenance.contains(&source) {
            self.provenance.push(source);
        }
    }

    fn json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": Value::Object(self.results.clone()),
            "provenance": self.provenance,
            "seed": self.seed,
        })
    }

    fn render_table(&self) -> String {
        let mut out = format!("command: {}\nseed: {}\n", self.command, self.seed);
        for (k, v) in &self.results {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {shown}\n"));
        }
        for block in &self.table {
            out.push('\n');
            out.push_str(block);
            if !block.ends_with('\n') {
                out.push('\n');
            }
        }
        out.push_str(&format!("provenance: {}\n", self.provenance.join("; ")));
        out
    }
}

/// Parses `args`, runs one command and returns the process exit code along
/// with the text to print on stdout (or stderr when the code is nonzero).
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = if cli.table {
                report.render_table()
            } else {
                serde_json::to_string_pretty(&report.json()).expect("report serializes") + "\n"
            };
            (EXIT_OK, text)
        }
        Err(f) => (f.code, format!("error: {}\n", f.message)),
    }
}

fn execute(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::Complex(a) => cmd_complex(a, cli.seed),
        Command::Ideal(a) => cmd_ideal(a, cli.seed),
        Command::Covers(a) => cmd_covers(a, cli.seed),
        Command::Minors(a) => cmd_minors(a, cli.seed),
        Command::Groebner(a) => cmd_groebner(a, cli.seed),
    }
}

fn read_file(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::parse(format!("cannot read {path}: {e}")))
}

fn parse_usize_list(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Failure::parse(format!("bad integer list '{s}'"))))
        .collect()
}

fn builtin_complex(desc: &str) -> CliResult<SimplicialComplex> {
    let (name, arg) = desc.split_once(':').ok_or_else(|| Failure::parse(format!("bad builtin '{desc}'")))?;
    let nums = parse_usize_list(arg)?;
    let in_range = |n: usize| (1..=simplicial::MAX_VERTICES).contains(&n);
    match (name, nums.as_slice()) {
        ("cycle", [n]) if *n >= 3 && in_range(*n) => Ok(simplicial::cycle(*n)),
        ("uniform", [r, n]) if *r >= 1 && r <= n && in_range(*n) => Ok(simplicial::uniform_matroid(*r, *n)),
        ("simplex", [n]) if in_range(*n) => Ok(simplicial::simplex(*n)),
        ("boundary", [n]) if *n >= 2 && in_range(*n) => Ok(simplicial::simplex_boundary(*n)),
        ("cycle" | "uniform" | "simplex" | "boundary", _) => Err(Failure::range(format!("parameters out of range in '{desc}'"))),
        _ => Err(Failure::parse(format!("unknown builtin '{desc}'"))),
    }
}

fn load_complex(file: &Option<String>, builtin: &Option<String>) -> CliResult<SimplicialComplex> {
    match (file, builtin) {
        (Some(path), None) => {
            let text = read_file(path)?;
            SimplicialComplex::from_json_str(&text).map_err(Failure::parse)
        }
        (None, Some(b)) => builtin_complex(b),
        _ => Err(Failure::parse("give exactly one of --file and --builtin")),
    }
}

fn weighted(delta: SimplicialComplex, weights: &Option<Vec<u32>>) -> CliResult<WeightedComplex> {
    Ok(match weights {
        Some(w) => WeightedComplex::new(delta, w.clone())?,
        None => WeightedComplex::canonical(delta),
    })
}

fn field_of(c: u64) -> CliResult<Field> {
    Field::from_characteristic(c).map_err(|e| Failure::range(e.to_string()))
}

fn witness_json(w: &simplicial::FacetWitness) -> Value {
    serde_json::to_value(w).expect("witness serializes")
}

fn cmd_complex(a: &ComplexArgs, seed: u64) -> CliResult<Report> {
    let delta = load_complex(&a.source.file, &a.source.builtin)?;
    let mut r = Report::new("complex", delta.to_json(), seed);
    r.put("dimension", json!(delta.dimension()), "definition");
    r.put("pure", json!(delta.is_pure()), "definition");
    if a.matroid {
        r.put("is_matroid", json!(delta.is_matroid()), "basis exchange axiom");
        let w = delta.matroid_witness().map(|w| witness_json(&w)).unwrap_or(Value::Null);
        r.put("witness", w, "basis exchange axiom");
    }
    if a.dual {
        let d = delta.dual()?;
        r.put("dual", d.to_json(), "matroid duality");
        r.put("self_dual", json!(d == delta), "matroid duality");
        if delta.is_pure() {
            r.put("dual_is_matroid", json!(d.is_matroid()), "matroid duality");
        }
    }
    if a.connectivity {
        let c = simplicial::connectivity_degree(&delta.stanley_reisner_primes(), delta.n())?;
        r.put("connectivity", json!(c), "Hartshorne connectedness");
    }
    if a.strong {
        r.put("strongly_connected", json!(delta.is_strongly_connected()), "connectedness in codimension one");
    }
    if a.fvector {
        r.put("f_vector", json!(delta.f_vector()), "definition");
    }
    if a.homology {
        let field = field_of(a.characteristic)?;
        let h = homalg::reduced_homology(&delta, field);
        r.put("reduced_homology", json!(h), "simplicial homology");
        r.put("reduced_euler", json!(homalg::reduced_euler_characteristic(&delta)), "Euler–Poincaré formula");
    }
    Ok(r)
}

fn ideal_json(i: &MonomialIdeal) -> Value {
    json!(i.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>())
}

fn cmd_ideal(a: &IdealArgs, seed: u64) -> CliResult<Report> {
    let field = field_of(a.characteristic)?;
    let engine = match a.engine.as_str() {
        "koszul" => Engine::Koszul,
        "polar" => Engine::Polarization {
            cap: configured_var_cap(),
        },
        other => return Err(Failure::parse(format!("unknown engine '{other}'"))),
    };
    let mut wc: Option<(WeightedComplex, u32)> = None;
    let (ideal, inputs) = if a.cover.is_some() || a.cover_builtin.is_some() {
        let delta = load_complex(&a.cover, &a.cover_builtin)?;
        let w = weighted(delta, &a.weights)?;
        let k = a.symbolic.unwrap_or(1);
        if k == 0 {
            return Err(Failure::range("symbolic power must be positive"));
        }
        let ideal = monomial::symbolic_power(w.complex(), w.weights(), k)?;
        let inputs = json!({"complex": w.complex().to_json(), "weights": w.weights(), "symbolic": k});
        wc = Some((w, k));
        (ideal, inputs)
    } else if let Some(p) = &a.prime {
        let n = a.vars.unwrap_or_else(|| p.iter().copied().max().unwrap_or(1));
        let ideal = polar::prime_power_ideal(p, n, a.power)?;
        (ideal, json!({"prime": p, "power": a.power, "n": n}))
    } else if let Some(g) = &a.gens {
        let n = a.vars.ok_or_else(|| Failure::parse("--gens needs -n"))?;
        let ideal = MonomialIdeal::parse(g, n)?;
        (ideal, json!({"gens": g, "n": n}))
    } else {
        return Err(Failure::parse("give --cover, --cover-builtin, --prime or --gens"));
    };
    let mut r = Report::new("ideal", inputs, seed);
    r.put("generators", ideal_json(&ideal), "definition");
    if a.depth || a.cm || a.reg || a.betti {
        let inv = homalg::invariants_with_engine(&ideal, field, engine)?;
        if a.depth {
            r.put("depth", json!(inv.depth), "Auslander–Buchsbaum formula");
            r.put("pd", json!(inv.pd), "Auslander–Buchsbaum formula");
        }
        if a.cm {
            r.put("is_cm", json!(inv.is_cm), "Hochster formula");
            r.put("dim", json!(inv.dim), "definition");
            r.put("height", json!(inv.height), "definition");
        }
        if a.reg {
            r.put("reg", json!(inv.reg), "Hochster formula");
        }
        if a.betti {
            r.put("betti", inv.betti.to_json(), "Hochster formula");
            r.table.push(inv.betti.to_grid());
        }
    }
    if a.polarize {
        let p = polar::polarize(&ideal)?;
        r.put("polarization", ideal_json(&p.ideal), "polarization");
        r.put(
            "variables",
            json!(p.var_map.iter().map(|(i, l)| [*i + 1, *l as usize]).collect::<Vec<_>>()),
            "polarization",
        );
    }
    if a.ass_polar {
        let primes = match (&wc, &a.prime) {
            (Some((w, k)), _) => polar::ass_primes_weighted(w, *k),
            (None, Some(p)) => polar::ass_primes_prime_power(p, a.power),
            _ => {
                let p = polar::polarize(&ideal)?;
                polar::min_primes_polarized(&p)?
            }
        };
        r.put("ass_polar_count", json!(primes.len()), "associated primes of polarized prime powers");
        r.put(
            "ass_polar",
            json!(primes.iter().map(|p| p.to_json()).collect::<Vec<_>>()),
            "associated primes of polarized prime powers",
        );
    }
    if a.ordinary {
        let Some((w, k)) = &wc else {
            return Err(Failure::parse("--ordinary needs a cover ideal"));
        };
        let cmp = monomial::symbolic_vs_ordinary(w.complex(), w.weights(), *k)?;
        let v = match cmp {
            monomial::SymbolicComparison::Equal => json!({"equal": true}),
            monomial::SymbolicComparison::Witness(m) => json!({"equal": false, "witness": m.to_string()}),
        };
        r.put("symbolic_vs_ordinary", v, "symbolic powers of cover ideals");
    }
    if a.eisenbud_goto {
        let v = match homalg::eisenbud_goto_check(&ideal, field)? {
            homalg::EisenbudGoto::Checked { holds, reg, e, ht } => {
                json!({"holds": holds, "reg": reg, "e": e, "ht": ht})
            }
            homalg::EisenbudGoto::NotApplicable { reason } => json!({"not_applicable": reason}),
        };
        r.put("eisenbud_goto", v, "Eisenbud–Goto inequality");
    }
    if a.obstruction {
        let Some((w, k)) = &wc else {
            return Err(Failure::parse("--obstruction needs a cover ideal"));
        };
        let v = match polar::cm_obstruction_check(w, *k)? {
            polar::ObstructionResult::Pass => json!({"obstructed": false}),
            polar::ObstructionResult::Obstructed {
                witness,
                prime_f,
                prime_g,
                local_primes,
            } => json!({
                "obstructed": true,
                "witness": witness_json(&witness),
                "prime_f": prime_f.to_json(),
                "prime_g": prime_g.to_json(),
                "local_primes": local_primes.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            }),
        };
        r.put("cm_obstruction", v, "Hartshorne connectedness");
    }
    Ok(r)
}

fn rat(q: &BigRational) -> Value {
    if q.is_integer() {
        json!(q.to_integer().to_string())
    } else {
        json!(format!("{}/{}", q.numer(), q.denom()))
    }
}

fn cmd_covers(a: &CoversArgs, seed: u64) -> CliResult<Report> {
    let delta = load_complex(&a.source.file, &a.source.builtin)?;
    let wc = weighted(delta, &a.weights)?;
    if a.k == 0 {
        return Err(CoversError::NonpositiveK.into());
    }
    let inputs = json!({"complex": wc.complex().to_json(), "weights": wc.weights(), "k": a.k});
    let mut r = Report::new("covers", inputs, seed);
    if let Some(alpha) = &a.classify {
        let c = covers::classify_cover(&wc, alpha, a.k)?;
        r.put("class", serde_json::to_value(c).expect("serializes"), "definition");
    }
    if let Some(alpha) = &a.reduce {
        r.put("basic", json!(covers::reduce_to_basic(&wc, alpha, a.k)?), "definition");
    }
    if a.enumerate {
        let all = covers::enumerate_basic_covers(&wc, a.k)?;
        r.put("count", json!(all.len()), "basic covers generate the vertex cover algebra");
        r.put("basic_covers", json!(all), "basic covers generate the vertex cover algebra");
    }
    if a.hf {
        r.put("hf", json!(covers::hf_abar(&wc, a.k)?), "basic covers generate the vertex cover algebra");
    }
    if let Some(kmax) = a.dim {
        let est = covers::estimate_dim_abar(&wc, kmax)?;
        let classes: Vec<Value> = est
            .classes
            .iter()
            .map(|c| json!({"residue": c.residue, "degree": c.degree, "leading": rat(&c.leading)}))
            .collect();
        r.put(
            "dim_estimate",
            json!({"dim": est.dim, "period": est.period, "classes": classes, "hf": est.hf}),
            "Hilbert function growth",
        );
    }
    if a.good_weight {
        let v = match covers::solve_good_weight(&wc) {
            GoodWeight::Weight(l) => json!({"good": true, "lambda": l.iter().map(rat).collect::<Vec<_>>()}),
            GoodWeight::Infeasible(Infeasibility::Inconsistent { facets }) => {
                json!({"good": false, "reason": "inconsistent", "facets": facets})
            }
            GoodWeight::Infeasible(Infeasibility::NoPositiveSolution { vertices }) => {
                json!({"good": false, "reason": "no positive solution", "vertices": vertices})
            }
        };
        r.put("good_weight", v, "exact linear algebra");
    }
    if let Some(vals) = &a.extend {
        let facet = a.facet.as_ref().ok_or_else(|| Failure::parse("--extend needs --facet"))?;
        r.put("extension", json!(covers::extend_on_facet(&wc, facet, vals, a.k)?), "basis exchange axiom");
    }
    if a.rigidity {
        r.put("rigidity_bound", json!(covers::rigidity_bound(&wc, a.k).to_string()), "rigidity of basic covers on matroids");
    }
    Ok(r)
}

fn parse_partition(s: &str) -> CliResult<Partition> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| Failure::parse(format!("bad partition '{s}'"))))
        .collect::<CliResult<_>>()?;
    Ok(Partition::new(&parts)?)
}

fn parse_u32_list(s: &str) -> CliResult<Vec<u32>> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| Failure::parse(format!("bad list '{s}'"))))
        .collect()
}

fn bi_json(b: &BiDiagram) -> Value {
    json!({"gamma": b.gamma.parts(), "lambda": b.lambda.parts(), "text": b.to_string()})
}

fn cmd_minors(a: &MinorsArgs, seed: u64) -> CliResult<Report> {
    let p = MinorsParams::new(a.m, a.n, a.t)?;
    let mut r = Report::new("minors", json!({"t": a.t, "m": a.m, "n": a.n}), seed);
    if a.reg {
        let g = minors::regularity_and_a_invariant(&p)?;
        r.put("case", json!(g.case), "regularity of algebras of minors");
        r.put("k0", json!(g.k0), "regularity of algebras of minors");
        r.put("a", json!(g.a), "regularity of algebras of minors");
        r.put("reg", json!(g.reg), "regularity of algebras of minors");
    }
    if a.sagbi {
        r.put("sagbi_bound", json!(minors::sagbi_degree_bound(a.m, a.t)?), "primitive partition identities");
    }
    if a.bounds {
        let b = minors::relation_degree_bounds(&p)?;
        r.put("colbound", json!(b.colbound), "independence of the column count");
        r.put("degbound", json!(b.degbound), "regularity of algebras of minors");
    }
    if a.shape_relations {
        let s = minors::shape_relations(&p)?;
        r.put("shape_relations", json!(s.iter().map(bi_json).collect::<Vec<_>>()), "cubic shape relations");
        for b in &s {
            r.table.push(format!("{}\ngamma:\n{}\nlambda:\n{}\n", b, b.gamma.ascii(), b.lambda.ascii()));
        }
    }
    if let Some(d) = a.hf {
        let hf = minors::hf_at(&p, d);
        r.put("hf", json!(hf.to_string()), "decomposition into Schur modules");
        match minors::hf_at_oracle(&p, d) {
            Ok(o) => {
                r.put("hf_oracle", json!(o), "initial algebra of minors");
                r.put("hf_agree", json!(hf == BigUint::from(o)), "initial algebra of minors");
            }
            Err(MinorsError::OracleTooLarge(_)) => r.put("hf_oracle", Value::Null, "initial algebra of minors"),
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(parts) = &a.predecessors {
        let l = Partition::new(parts)?;
        let preds = minors::predecessors(&l, a.t)?;
        r.put(
            "predecessors",
            json!(preds.iter().map(|x| x.parts().to_vec()).collect::<Vec<_>>()),
            "Pieri rule",
        );
        if l.size() >= 2 * a.t {
            r.put("unique", json!(minors::has_unique_predecessor(&l, a.t)?), "Pieri rule");
        }
    }
    if let Some(text) = &a.multiplicity {
        let (g, l) = text.split_once('|').ok_or_else(|| Failure::parse("bi-diagram must look like 3,3|4,1,1"))?;
        let bi = BiDiagram::new(parse_partition(g)?, parse_partition(l)?);
        r.put("multiplicity", json!(minors::multiplicity_n(&bi, a.t)?.to_string()), "Pieri rule");
    }
    if let Some(text) = &a.identity {
        let (x, y) = text.split_once('=').ok_or_else(|| Failure::parse("identity must look like 1,4,4=3,3,3"))?;
        let (x, y) = (parse_u32_list(x)?, parse_u32_list(y)?);
        let q = if a.q == 0 { x.iter().chain(&y).copied().max().unwrap_or(1) } else { a.q };
        let info = minors::partition_identity(&x, &y, q)?;
        r.put("identity", serde_json::to_value(info).expect("serializes"), "primitive partition identities");
    }
    if let Some(k) = a.hpi {
        let q = if a.q == 0 { a.m } else { a.q };
        r.put("hpi", json!(minors::enumerate_hpi(q, a.t, k)), "primitive partition identities");
    }
    if let Some(samples) = a.det_check {
        let size = a.t as usize + 2;
        let mut all = true;
        for i in 0..samples as u64 {
            let mat = minors::random_matrix(a.seed_for(seed, i), size);
            all &= minors::verify_det_relations(a.t as usize, &mat)?;
        }
        r.put("det_relations_vanish", json!(all), "Plücker relations");
        r.put("samples", json!(samples), "Plücker relations");
    }
    Ok(r)
}

impl MinorsArgs {
    fn seed_for(&self, seed: u64, i: u64) -> u64 {
        seed.wrapping_mul(1_000_003).wrapping_add(i)
    }
}

fn builtin_ideal(desc: &str) -> CliResult<Vec<Polynomial>> {
    let (name, arg) = match desc.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (desc, None),
    };
    let size = |arg: Option<&str>| -> CliResult<usize> {
        let n: usize = arg
            .ok_or_else(|| Failure::parse(format!("'{desc}' needs a size")))?
            .parse()
            .map_err(|_| Failure::parse(format!("bad size in '{desc}'")))?;
        if !(2..=6).contains(&n) {
            return Err(Failure::range(format!("size out of range in '{desc}'")));
        }
        Ok(n)
    };
    match name {
        "conca" => Ok(groebner::conca_ideal()),
        "minors2x" => Ok(groebner::minors_2xn(size(arg)?)),
        "antidiagonal" => Ok(groebner::antidiagonal_generators(size(arg)?)),
        _ => Err(Failure::parse(format!("unknown builtin '{desc}'"))),
    }
}

fn term_order(a: &GroebnerArgs, n: usize) -> CliResult<TermOrder> {
    let mut order = match a.order.as_str() {
        "lex" => TermOrder::lex(n),
        "degrevlex" => TermOrder::degrevlex(n),
        "weighted" => {
            let w = a.weights.clone().ok_or_else(|| Failure::parse("weighted order needs --weights"))?;
            if w.len() != n {
                return Err(Failure::range(format!("expected {n} weights, got {}", w.len())));
            }
            let tie = match a.tiebreak.as_str() {
                "lex" => Tiebreak::Lex,
                "degrevlex" => Tiebreak::DegRevLex,
                other => return Err(Failure::parse(format!("unknown tiebreak '{other}'"))),
            };
            TermOrder::weighted(w, tie)?
        }
        other => return Err(Failure::parse(format!("unknown order '{other}'"))),
    };
    if let Some(p) = &a.priority {
        if p.iter().any(|&v| v == 0 || v > n) {
            return Err(Failure::range("priority entries must lie in 1..=n"));
        }
        order = order.with_priority(p.iter().map(|v| v - 1).collect())?;
    }
    if a.reverse {
        order = order.reversed();
    }
    Ok(order)
}

fn cmd_groebner(a: &GroebnerArgs, seed: u64) -> CliResult<Report> {
    if let Some(n) = a.ara {
        let mut r = Report::new("groebner", json!({"ara": n}), seed);
        r.put("ara_equations_hold", json!(groebner::verify_ara_minors2xn(n)?), "arithmetical rank of 2-minors");
        r.put("equations", json!(2 * n - 1), "arithmetical rank of 2-minors");
        return Ok(r);
    }
    let gens = match (&a.file, &a.ideal, &a.builtin) {
        (Some(path), None, None) => groebner::parse_ideal(&read_file(path)?, a.vars)?,
        (None, Some(text), None) => groebner::parse_ideal(&text.replace(';', "\n"), a.vars)?,
        (None, None, Some(b)) => builtin_ideal(b)?,
        _ => return Err(Failure::parse("give exactly one of --file, --ideal, --builtin or --ara")),
    };
    let n = gens[0].n();
    let order = term_order(a, n)?;
    let inputs = json!({
        "generators": gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "n": n,
        "order": serde_json::to_value(&order).expect("serializes"),
    });
    let mut r = Report::new("groebner", inputs, seed);
    let gb = groebner::buchberger(&gens, &order)?;
    r.put("unit_ideal", json!(gb.unit), "Buchberger criterion");
    r.put(
        "basis",
        json!(gb.generators.iter().map(|g| g.format_with(&order)).collect::<Vec<_>>()),
        "Buchberger criterion",
    );
    if a.initial && !gb.unit {
        let init = groebner::initial_of_basis(&gb)?;
        r.put("initial_ideal", ideal_json(&init), "initial ideals");
        r.put("radical_of_initial", ideal_json(&init.radical()), "initial ideals");
        let primes: Vec<Vec<usize>> = init
            .radical()
            .minimal_prime_masks()
            .into_iter()
            .map(simplicial::mask_to_set)
            .collect();
        r.put("primes_of_radical", json!(primes), "initial ideals");
    }
    if a.deform_report {
        let rep = groebner::deformation_connectedness_report(&gens, &order)?;
        r.put("deformation", serde_json::to_value(&rep).expect("serializes"), "Gröbner deformation connectedness");
    }
    if let Some(f) = &a.radical_member {
        let f = Polynomial::parse(f, n)?;
        r.put("radical_member", json!(groebner::radical_membership(&f, &gens)?), "Rabinowitsch trick");
    }
    if a.homogenize {
        let w = a.weights.clone().unwrap_or_else(|| vec![1; n]);
        if w.len() != n {
            return Err(Failure::range(format!("expected {n} weights, got {}", w.len())));
        }
        let h = groebner::homogenize_ideal(&gens, &w)?;
        r.put("homogenized", json!(h.iter().map(|g| g.to_string()).collect::<Vec<_>>()), "flat Gröbner degeneration");
    }
    if a.realize_weight {
        let v = match groebner::realize_weight(&gens, &order)? {
            groebner::WeightRealization::Found(w) => json!({"found": true, "weights": w}),
            groebner::WeightRealization::NotFound => json!({"found": false}),
        };
        r.put("weight_realization", v, "weight vectors realize term orders");
    }
    Ok(r)
}
