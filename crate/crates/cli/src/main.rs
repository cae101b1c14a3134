//! `algk`: exact computations with finite-dimensional non-associative
//! algebras over Q and GF(p).
//!
//! Exit codes: 0 = computed (and any checked property holds), 1 = a checked
//! property is false, 2 = input error, 3 = budget exceeded.

mod report;

use std::collections::BTreeMap;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use algk_core::algebra::{self, AlgRef, FdAlgebra, Morphism, SplitFiveDiagram};
use algk_core::error::AlgError;
use algk_core::files;
use algk_core::poly::Poly;
use algk_core::scalar::{FieldSpec, Scalar};
use algk_core::variety::{self, Budget, CheckMode, IdentitySet};

use report::Report;

#[derive(Parser)]
#[command(
    name = "algk",
    version,
    about = "Exact computer algebra for finite-dimensional non-associative algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "json"])]
    format: String,
    /// Cap on exhaustive enumeration tuples
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,
    /// Cap on truncated word-basis size
    #[arg(long, global = true, default_value_t = 2000)]
    max_basis: usize,
}

#[derive(Args, Clone)]
struct AlgebraArgs {
    /// Algebra file(s); order matters for multi-algebra verbs
    #[arg(long = "algebra", required = true)]
    algebras: Vec<String>,
}

#[derive(Args, Clone)]
struct VarietyArgs {
    /// Variety: preset name (lie, qlie, assoc, comm, abelian, alternating,
    /// anticomm, leibniz, jordan, jacobijordan, alternative, antiassoc, alg)
    /// or a variety file
    #[arg(long)]
    variety: String,
    /// Ground field for preset varieties (Q or GF(p)); defaults to the
    /// field of the first --algebra, else Q
    #[arg(long)]
    field: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a polynomial is an identity of an algebra
    #[command(name = "check-identity")]
    CheckIdentity {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// symbolic (complete over Q) or exhaustive (finite fields)
        #[arg(long, value_parser = ["symbolic", "exhaustive"])]
        mode: Option<String>,
    },
    /// Check whether a polynomial is implied by a variety at bounded degree
    Implied {
        #[command(flatten)]
        var: VarietyArgs,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        degree: usize,
    },
    /// Reflect an algebra into a variety: L(A) = A/I(A) with unit
    Reflect {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        var: VarietyArgs,
    },
    /// Kernel of a morphism, with induced structure
    Kernel {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        map: String,
    },
    /// Cokernel of a morphism: target modulo the ideal closure of the image
    Cokernel {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        map: String,
    },
    /// Coequalizer of a parallel pair
    Coequalize {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long = "map", num_args = 1, required = true)]
        maps: Vec<String>,
    },
    /// Quotient by the span of the given elements (must be an ideal)
    Quotient {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Element(s) of the algebra, as polynomials in the basis names
        #[arg(long = "poly", required = true, allow_hyphen_values = true)]
        polys: Vec<String>,
    },
    /// Span, subalgebra/ideal tests, and generated ideal of elements
    Ideal {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long = "poly", required = true, allow_hyphen_values = true)]
        polys: Vec<String>,
    },
    /// Span, subalgebra test, and generated subalgebra of elements
    Subalgebra {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long = "poly", required = true, allow_hyphen_values = true)]
        polys: Vec<String>,
    },
    /// Product of two algebras with projections
    Product {
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// Pullback of f: A -> B along g: C -> B (algebras A, B, C; maps f, g)
    Pullback {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long = "map", num_args = 1, required = true)]
        maps: Vec<String>,
    },
    /// Image factorization of a morphism
    Image {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        map: String,
    },
    /// Exactness at each joint of a composable sequence
    Exact {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long = "map", num_args = 1, required = true)]
        maps: Vec<String>,
        /// Wrap the sequence as 0 -> A1 -> ... -> An -> 0
        #[arg(long)]
        ses: bool,
    },
    /// Truncated free V-algebra on given letters
    Free {
        #[command(flatten)]
        var: VarietyArgs,
        /// Comma-separated letters, e.g. x,y
        #[arg(long)]
        letters: String,
        #[arg(long)]
        degree: usize,
    },
    /// Truncated coproduct of two algebras in a variety
    Coproduct {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        var: VarietyArgs,
        #[arg(long)]
        degree: usize,
    },
    /// B flat X: kernel of the retraction (B + X) -> B
    Flat {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        var: VarietyArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Degree-d algebraic-coherence probe on three algebras B, X, Y
    Coherent {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        var: VarietyArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Check the two 16-parameter equations in a variety
    Orzech {
        #[command(flatten)]
        var: VarietyArgs,
        /// 16 comma-separated scalars
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        degree: usize,
    },
    /// Split a polynomial into homogeneous components, or check the
    /// homogeneous-closure theorem for a variety (with --variety --degree)
    Homog {
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long)]
        variety: Option<String>,
        /// Ground field (Q or GF(p))
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// The Lie algebra of derivations of an algebra
    Derivations {
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// Commutator bracket algebra of an associative algebra
    Commutator {
        #[command(flatten)]
        alg: AlgebraArgs,
    },
    /// Split Short Five Lemma check on a full diagram
    /// (algebras A B C D E F; maps f g s k q t alpha beta gamma)
    #[command(name = "split-five")]
    SplitFive {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long = "map", num_args = 1, required = true)]
        maps: Vec<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    let json_mode = cli.format == "json";
    let budget = Budget {
        max_basis: cli.max_basis,
        max_tuples: cli.budget,
    };
    match run(&cli.command, &budget) {
        Ok((report, property_holds)) => {
            print!("{}", report.render(json_mode));
            std::process::exit(if property_holds { 0 } else { 1 });
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                AlgError::BudgetExceeded(_) => 3,
                _ => 2,
            };
            std::process::exit(code);
        }
    }
}

type VerbResult = Result<(Report, bool), AlgError>;

fn run(cmd: &Command, budget: &Budget) -> VerbResult {
    match cmd {
        Command::CheckIdentity { alg, poly, mode } => check_identity(alg, poly, mode, budget),
        Command::Implied { var, poly, degree } => implied(var, poly, *degree, budget),
        Command::Reflect { alg, var } => reflect(alg, var, budget),
        Command::Kernel { alg, map } => kernel_verb(alg, map),
        Command::Cokernel { alg, map } => cokernel_verb(alg, map),
        Command::Coequalize { alg, maps } => coequalize(alg, maps),
        Command::Quotient { alg, polys } => quotient_verb(alg, polys),
        Command::Ideal { alg, polys } => ideal_verb(alg, polys),
        Command::Subalgebra { alg, polys } => subalgebra_verb(alg, polys),
        Command::Product { alg } => product_verb(alg),
        Command::Pullback { alg, maps } => pullback_verb(alg, maps),
        Command::Image { alg, map } => image_verb(alg, map),
        Command::Exact { alg, maps, ses } => exact_verb(alg, maps, *ses),
        Command::Free {
            var,
            letters,
            degree,
        } => free_verb(var, letters, *degree, budget),
        Command::Coproduct { alg, var, degree } => coproduct_verb(alg, var, *degree, budget),
        Command::Flat { alg, var, degree } => flat_verb(alg, var, *degree, budget),
        Command::Coherent { alg, var, degree } => coherent_verb(alg, var, *degree, budget),
        Command::Orzech {
            var,
            lambda,
            degree,
        } => orzech_verb(var, lambda, *degree, budget),
        Command::Homog {
            poly,
            variety,
            field,
            degree,
        } => homog_verb(poly, variety, field, degree, budget),
        Command::Derivations { alg } => derivations_verb(alg),
        Command::Commutator { alg } => commutator_verb(alg),
        Command::SplitFive { alg, maps } => split_five_verb(alg, maps),
    }
}

// --- argument loading helpers ----------------------------------------------

fn load_algebras(args: &AlgebraArgs, expect: usize) -> Result<Vec<AlgRef>, AlgError> {
    if args.algebras.len() != expect {
        return Err(AlgError::InputError(format!(
            "expected {expect} --algebra argument(s), got {}",
            args.algebras.len()
        )));
    }
    args.algebras
        .iter()
        .map(|p| files::load_algebra(p))
        .collect()
}

/// One or two algebras; a single one serves as both source and target.
fn load_endpoints(args: &AlgebraArgs) -> Result<(AlgRef, AlgRef), AlgError> {
    match args.algebras.len() {
        1 => {
            let a = files::load_algebra(&args.algebras[0])?;
            Ok((a.clone(), a))
        }
        2 => {
            let a = files::load_algebra(&args.algebras[0])?;
            let b = files::load_algebra(&args.algebras[1])?;
            Ok((a, b))
        }
        n => Err(AlgError::InputError(format!(
            "expected 1 or 2 --algebra arguments, got {n}"
        ))),
    }
}

fn load_variety(var: &VarietyArgs) -> Result<IdentitySet, AlgError> {
    load_variety_in(var, None)
}

/// Preset varieties are instantiated over --field when given, else over
/// the field of the algebras at hand, else over Q. Variety files always
/// carry their own field header.
fn load_variety_in(
    var: &VarietyArgs,
    fallback: Option<FieldSpec>,
) -> Result<IdentitySet, AlgError> {
    let field = match &var.field {
        Some(f) => Some(files::parse_field(f)?),
        None => fallback,
    };
    files::load_variety(&var.variety, field)
}

fn load_map(path: &str, source: &AlgRef, target: &AlgRef) -> Result<Morphism, AlgError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AlgError::InputError(format!("cannot read morphism '{path}': {e}")))?;
    files::parse_morphism(&text, source, target)
}

fn elements_from_polys(a: &AlgRef, polys: &[String]) -> Result<Vec<Vec<Scalar>>, AlgError> {
    // each polynomial in the basis names denotes an element: evaluate it
    // under the tautological assignment basis name -> basis vector
    let taut: BTreeMap<String, Vec<Scalar>> = a
        .basis_names()
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), a.basis_vector(i)))
        .collect();
    polys
        .iter()
        .map(|t| Poly::parse(a.field(), t)?.substitute(a, &taut))
        .collect()
}

fn parse_scalar(field: FieldSpec, text: &str) -> Result<Scalar, AlgError> {
    let t = text.trim();
    let (neg, t) = match t.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, t),
    };
    let value = if let Some((n, d)) = t.split_once('/') {
        let num: i64 = n
            .trim()
            .parse()
            .map_err(|_| AlgError::InputError(format!("bad scalar '{text}'")))?;
        let den: i64 = d
            .trim()
            .parse()
            .map_err(|_| AlgError::InputError(format!("bad scalar '{text}'")))?;
        field.from_int(num).div(&field.from_int(den))?
    } else {
        let num: i64 = t
            .parse()
            .map_err(|_| AlgError::InputError(format!("bad scalar '{text}'")))?;
        field.from_int(num)
    };
    Ok(if neg { value.neg() } else { value })
}

fn subspace_report(r: &mut Report, key: &str, a: &FdAlgebra, s: &algk_core::linalg::Subspace) {
    let elems: Vec<String> = s
        .basis_vectors()
        .iter()
        .map(|v| a.format_element(v))
        .collect();
    r.field(key, json!(elems));
    r.line(format!("{key}: [{}]", elems.join(", ")));
}

// --- verbs ------------------------------------------------------------------

fn check_identity(
    alg: &AlgebraArgs,
    poly: &str,
    mode: &Option<String>,
    budget: &Budget,
) -> VerbResult {
    let a = load_algebras(alg, 1)?.remove(0);
    let p = Poly::parse(a.field(), poly)?;
    let mode = match mode.as_deref() {
        Some("symbolic") => CheckMode::Symbolic,
        Some("exhaustive") => CheckMode::Exhaustive,
        _ => CheckMode::natural_for(a.field()),
    };
    let check = variety::identity_holds(&a, &p, mode, budget)?;
    if !check.conclusive {
        return Err(AlgError::ModeUnsound);
    }
    let mut r = Report::new("check-identity");
    r.text_field("poly", &p.to_string());
    r.text_field(
        "mode",
        match mode {
            CheckMode::Symbolic => "symbolic",
            CheckMode::Exhaustive => "exhaustive",
        },
    );
    r.bool_field("holds", check.holds);
    if let Some(w) = &check.witness {
        let mut obj = serde_json::Map::new();
        for (var, v) in w {
            obj.insert(var.clone(), json!(a.format_element(v)));
            r.line(format!("witness: {var} -> {}", a.format_element(v)));
        }
        r.field("witness", serde_json::Value::Object(obj));
    }
    let holds = check.holds;
    Ok((r, holds))
}

fn implied(var: &VarietyArgs, poly: &str, degree: usize, budget: &Budget) -> VerbResult {
    let v = load_variety(var)?;
    let p = Poly::parse(v.field, poly)?;
    let implied = variety::identity_implied(&v, &p, degree, budget)?;
    let mut r = Report::new("implied");
    r.text_field("variety", &v.name);
    r.text_field("poly", &p.to_string());
    r.dim_field("degree", degree);
    r.bool_field("implied", implied);
    Ok((r, implied))
}

fn reflect(alg: &AlgebraArgs, var: &VarietyArgs, budget: &Budget) -> VerbResult {
    let a = load_algebras(alg, 1)?.remove(0);
    let v = load_variety_in(var, Some(a.field()))?;
    let (l, eta) = variety::reflect(&a, &v, budget)?;
    let mut r = Report::new("reflect");
    r.text_field("variety", &v.name);
    r.dim_field("input_dim", a.dim());
    r.dim_field("reflection_dim", l.dim());
    r.algebra("reflection", &l);
    r.morphism("unit", &eta);
    Ok((r, true))
}

fn kernel_verb(alg: &AlgebraArgs, map: &str) -> VerbResult {
    let (src, tgt) = load_endpoints(alg)?;
    let f = load_map(map, &src, &tgt)?;
    let (k, incl) = algebra::kernel(&f);
    let mut r = Report::new("kernel");
    r.dim_field("kernel_dim", k.dim());
    subspace_report(&mut r, "kernel_basis", &src, &f.kernel_subspace());
    r.algebra("kernel_algebra", &k);
    r.morphism("inclusion", &incl);
    Ok((r, true))
}

fn cokernel_verb(alg: &AlgebraArgs, map: &str) -> VerbResult {
    let (src, tgt) = load_endpoints(alg)?;
    let f = load_map(map, &src, &tgt)?;
    let (q, proj) = algebra::cokernel(&f)?;
    let mut r = Report::new("cokernel");
    r.dim_field("cokernel_dim", q.dim());
    r.algebra("cokernel_algebra", &q);
    r.morphism("projection", &proj);
    Ok((r, true))
}

fn coequalize(alg: &AlgebraArgs, maps: &[String]) -> VerbResult {
    let (src, tgt) = load_endpoints(alg)?;
    if maps.len() != 2 {
        return Err(AlgError::InputError(format!(
            "coequalize expects 2 --map arguments, got {}",
            maps.len()
        )));
    }
    let f = load_map(&maps[0], &src, &tgt)?;
    let g = load_map(&maps[1], &src, &tgt)?;
    let (q, proj) = algebra::coequalizer(&f, &g)?;
    let mut r = Report::new("coequalize");
    r.dim_field("coequalizer_dim", q.dim());
    r.algebra("coequalizer_algebra", &q);
    r.morphism("projection", &proj);
    Ok((r, true))
}

fn quotient_verb(alg: &AlgebraArgs, polys: &[String]) -> VerbResult {
    let a = load_algebras(alg, 1)?.remove(0);
    let elems = elements_from_polys(&a, polys)?;
    let sub = algk_core::linalg::Subspace::span(a.field(), a.dim(), &elems)?;
    let (q, proj) = algebra::quotient(&a, &sub)?;
    let mut r = Report::new("quotient");
    r.dim_field("ideal_dim", sub.dim());
    r.dim_field("quotient_dim", q.dim());
    r.algebra("quotient_algebra", &q);
    r.morphism("projection", &proj);
    Ok((r, true))
}

fn ideal_verb(alg: &AlgebraArgs, polys: &[String]) -> VerbResult {
    let a = load_algebras(alg, 1)?.remove(0);
    let elems = elements_from_polys(&a, polys)?;
    let span = algk_core::linalg::Subspace::span(a.field(), a.dim(), &elems)?;
    let closure = a.generated_ideal(&elems)?;
    let mut r = Report::new("ideal");
    r.dim_field("span_dim", span.dim());
    r.bool_field("span_is_subalgebra", a.is_subalgebra(&span));
    r.bool_field("span_is_ideal", a.is_ideal(&span));
    r.dim_field("generated_ideal_dim", closure.dim());
    subspace_report(&mut r, "generated_ideal_basis", &a, &closure);
    Ok((r, true))
}

fn subalgebra_verb(alg: &AlgebraArgs, polys: &[String]) -> VerbResult {
    let a = load_algebras(alg, 1)?.remove(0);
    let elems = elements_from_polys(&a, polys)?;
    let span = algk_core::linalg::Subspace::span(a.field(), a.dim(), &elems)?;
    let closure = a.generated_subalgebra(&elems)?;
    let mut r = Report::new("subalgebra");
    r.dim_field("span_dim", span.dim());
    r.bool_field("span_is_subalgebra", a.is_subalgebra(&span));
    r.dim_field("generated_subalgebra_dim", closure.dim());
    subspace_report(&mut r, "generated_subalgebra_basis", &a, &closure);
    Ok((r, true))
}

fn product_verb(alg: &AlgebraArgs) -> VerbResult {
    let algs = load_algebras(alg, 2)?;
    let prod = algebra::product(&algs[0], &algs[1])?;
    let mut r = Report::new("product");
    r.dim_field("product_dim", prod.carrier.dim());
    r.algebra("product_algebra", &prod.carrier);
    r.morphism("pi_left", &prod.pi_left);
    r.morphism("pi_right", &prod.pi_right);
    Ok((r, true))
}

fn pullback_verb(alg: &AlgebraArgs, maps: &[String]) -> VerbResult {
    let algs = load_algebras(alg, 3)?;
    if maps.len() != 2 {
        return Err(AlgError::InputError(format!(
            "pullback expects 2 --map arguments (f: A -> B, g: C -> B), got {}",
            maps.len()
        )));
    }
    let f = load_map(&maps[0], &algs[0], &algs[1])?;
    let g = load_map(&maps[1], &algs[2], &algs[1])?;
    let pb = algebra::pullback(&f, &g)?;
    let mut r = Report::new("pullback");
    r.dim_field("pullback_dim", pb.carrier.dim());
    r.algebra("pullback_algebra", &pb.carrier);
    r.morphism("pi_left", &pb.pi_left);
    r.morphism("pi_right", &pb.pi_right);
    Ok((r, true))
}

fn image_verb(alg: &AlgebraArgs, map: &str) -> VerbResult {
    let (src, tgt) = load_endpoints(alg)?;
    let f = load_map(map, &src, &tgt)?;
    let (img, onto, incl) = algebra::image_factorization(&f)?;
    let mut r = Report::new("image");
    r.dim_field("image_dim", img.dim());
    r.algebra("image_algebra", &img);
    r.morphism("onto", &onto);
    r.morphism("inclusion", &incl);
    Ok((r, true))
}

fn exact_verb(alg: &AlgebraArgs, maps: &[String], ses: bool) -> VerbResult {
    let algs: Vec<AlgRef> = alg
        .algebras
        .iter()
        .map(|p| files::load_algebra(p))
        .collect::<Result<_, _>>()?;
    if maps.len() + 1 != algs.len() {
        return Err(AlgError::InputError(format!(
            "{} algebras need {} maps, got {}",
            algs.len(),
            algs.len() - 1,
            maps.len()
        )));
    }
    let mut seq = Vec::new();
    for (i, m) in maps.iter().enumerate() {
        seq.push(load_map(m, &algs[i], &algs[i + 1])?);
    }
    if ses {
        let field = algs[0].field();
        let zero = Arc::new(FdAlgebra::zero_algebra(field));
        let mut wrapped = vec![Morphism::zero(zero.clone(), algs[0].clone())];
        wrapped.extend(seq);
        wrapped.push(Morphism::zero(algs[algs.len() - 1].clone(), zero));
        seq = wrapped;
    }
    let reports = algebra::is_exact(&seq)?;
    let mut r = Report::new("exact");
    let mut joints = Vec::new();
    let mut all = true;
    for (i, j) in reports.iter().enumerate() {
        all &= j.exact;
        joints.push(json!({
            "joint": i,
            "image_dim": j.image_dim,
            "kernel_dim": j.kernel_dim,
            "exact": j.exact,
        }));
        r.line(format!(
            "joint {i}: image_dim {} kernel_dim {} exact: {}",
            j.image_dim, j.kernel_dim, j.exact
        ));
    }
    r.field("joints", json!(joints));
    r.bool_field("exact", all);
    Ok((r, all))
}

fn free_verb(var: &VarietyArgs, letters: &str, degree: usize, budget: &Budget) -> VerbResult {
    let v = load_variety(var)?;
    let letters: Vec<String> = letters
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    let free = variety::truncated_free(&v, &letters, degree, budget)?;
    let mut r = Report::new("free");
    r.text_field("variety", &v.name);
    r.text_field("letters", &letters.join(","));
    r.dim_field("degree", degree);
    r.dim_field("dim", free.carrier.dim());
    r.field("dims_by_degree", json!(free.dims_by_degree()));
    r.line(format!("dims_by_degree: {:?}", free.dims_by_degree()));
    let classes: Vec<String> = free.rep_words.iter().map(|w| w.render()).collect();
    r.field("basis_classes", json!(classes));
    r.line(format!("basis_classes: [{}]", classes.join(", ")));
    Ok((r, true))
}

fn coproduct_verb(
    alg: &AlgebraArgs,
    var: &VarietyArgs,
    degree: usize,
    budget: &Budget,
) -> VerbResult {
    let algs = load_algebras(alg, 2)?;
    let v = load_variety_in(var, Some(algs[0].field()))?;
    let co = variety::truncated_coproduct(&[algs[0].clone(), algs[1].clone()], &v, degree, budget)?;
    let mut r = Report::new("coproduct");
    r.text_field("variety", &v.name);
    r.dim_field("degree", degree);
    r.dim_field("dim", co.carrier.dim());
    let classes: Vec<String> = co.rep_words().iter().map(|w| w.render()).collect();
    r.field("basis_classes", json!(classes));
    r.line(format!("basis_classes: [{}]", classes.join(", ")));
    r.algebra("coproduct_algebra", &co.carrier);
    r.morphism("iota_left", &co.injections[0]);
    r.morphism("iota_right", &co.injections[1]);
    Ok((r, true))
}

fn flat_verb(alg: &AlgebraArgs, var: &VarietyArgs, degree: usize, budget: &Budget) -> VerbResult {
    let algs = load_algebras(alg, 2)?;
    let v = load_variety_in(var, Some(algs[0].field()))?;
    let (fl, incl, co) = variety::flat(&algs[0], &algs[1], &v, degree, budget)?;
    let mut r = Report::new("flat");
    r.text_field("variety", &v.name);
    r.dim_field("degree", degree);
    r.dim_field("coproduct_dim", co.carrier.dim());
    r.dim_field("flat_dim", fl.dim());
    r.algebra("flat_algebra", &fl);
    r.morphism("inclusion", &incl);
    Ok((r, true))
}

fn coherent_verb(
    alg: &AlgebraArgs,
    var: &VarietyArgs,
    degree: usize,
    budget: &Budget,
) -> VerbResult {
    let algs = load_algebras(alg, 3)?;
    let v = load_variety_in(var, Some(algs[0].field()))?;
    let coherent = variety::coherence_probe(&algs[0], &algs[1], &algs[2], &v, degree, budget)?;
    let mut r = Report::new("coherent");
    r.text_field("variety", &v.name);
    r.dim_field("degree", degree);
    r.bool_field("coherent", coherent);
    Ok((r, coherent))
}

fn orzech_verb(var: &VarietyArgs, lambda: &str, degree: usize, budget: &Budget) -> VerbResult {
    let v = load_variety(var)?;
    let parts: Vec<&str> = lambda.split(',').map(str::trim).collect();
    if parts.len() != 16 {
        return Err(AlgError::InputError(format!(
            "--lambda needs 16 comma-separated scalars, got {}",
            parts.len()
        )));
    }
    let mut lambdas = Vec::with_capacity(16);
    for p in parts {
        lambdas.push(parse_scalar(v.field, p)?);
    }
    let lambdas: [Scalar; 16] = lambdas.try_into().expect("length checked");
    let report = variety::orzech_check(&v, &lambdas, degree, budget)?;
    let mut r = Report::new("orzech");
    r.text_field("variety", &v.name);
    r.dim_field("degree", degree);
    r.bool_field("first_equation", report.first_equation);
    r.bool_field("second_equation", report.second_equation);
    r.bool_field("holds", report.both());
    Ok((r, report.both()))
}

fn homog_verb(
    poly: &Option<String>,
    variety: &Option<String>,
    field: &str,
    degree: &Option<usize>,
    budget: &Budget,
) -> VerbResult {
    match (poly, variety) {
        (Some(p), None) => {
            let field = files::parse_field(field)?;
            let p = Poly::parse(field, p)?;
            let comps = p.homogeneous_components();
            let mut r = Report::new("homog");
            r.text_field("poly", &p.to_string());
            r.dim_field("component_count", comps.len());
            let mut arr = Vec::new();
            for (ty, comp) in &comps {
                let ty_str: Vec<String> = ty.iter().map(|(v, d)| format!("{v}:{d}")).collect();
                arr.push(json!({
                    "type": ty_str.join(","),
                    "component": comp.to_string(),
                }));
                r.line(format!("type ({}): {}", ty_str.join(","), comp));
            }
            r.field("components", json!(arr));
            Ok((r, true))
        }
        (None, Some(varname)) => {
            let degree = degree.ok_or_else(|| {
                AlgError::InputError("--degree required for the closure check".into())
            })?;
            let fieldspec = files::parse_field(field)?;
            let v = files::load_variety(varname, Some(fieldspec))?;
            let report = variety::homogeneous_closure_check(&v, degree, budget)?;
            let mut r = Report::new("homog");
            r.text_field("variety", &v.name);
            r.dim_field("degree", degree);
            let mut arr = Vec::new();
            for e in &report.entries {
                arr.push(json!({
                    "generator": e.generator,
                    "component": e.component,
                    "implied": e.implied,
                }));
                r.line(format!(
                    "generator {} component {}: implied {}",
                    e.generator, e.component, e.implied
                ));
            }
            r.field("entries", json!(arr));
            let ok = report.all_implied();
            r.bool_field("all_implied", ok);
            Ok((r, ok))
        }
        _ => Err(AlgError::InputError(
            "homog needs exactly one of --poly or --variety".into(),
        )),
    }
}

fn derivations_verb(alg: &AlgebraArgs) -> VerbResult {
    let a = load_algebras(alg, 1)?.remove(0);
    let (der, mats) = algebra::derivations(&a);
    let mut r = Report::new("derivations");
    r.dim_field("derivation_dim", der.dim());
    r.algebra("derivation_algebra", &der);
    let mut arr = Vec::new();
    for (i, m) in mats.iter().enumerate() {
        arr.push(report::matrix_json(m));
        r.line(format!("d{}: {}", i + 1, report::matrix_text(m)));
    }
    r.field("derivation_matrices", json!(arr));
    Ok((r, true))
}

fn commutator_verb(alg: &AlgebraArgs) -> VerbResult {
    let a = load_algebras(alg, 1)?.remove(0);
    let lie = algebra::commutator_algebra(&a)?;
    let mut r = Report::new("commutator");
    r.algebra("commutator_algebra", &lie);
    Ok((r, true))
}

fn split_five_verb(alg: &AlgebraArgs, maps: &[String]) -> VerbResult {
    let algs = load_algebras(alg, 6)?;
    if maps.len() != 9 {
        return Err(AlgError::InputError(format!(
            "split-five expects 9 --map arguments (f g s k q t alpha beta gamma), got {}",
            maps.len()
        )));
    }
    let (a, b, c, d, e, ff) = (&algs[0], &algs[1], &algs[2], &algs[3], &algs[4], &algs[5]);
    let diagram = SplitFiveDiagram {
        f: load_map(&maps[0], a, b)?,
        g: load_map(&maps[1], b, c)?,
        s: load_map(&maps[2], c, b)?,
        k: load_map(&maps[3], d, e)?,
        q: load_map(&maps[4], e, ff)?,
        t: load_map(&maps[5], ff, e)?,
        alpha: load_map(&maps[6], a, d)?,
        beta: load_map(&maps[7], b, e)?,
        gamma: load_map(&maps[8], c, ff)?,
    };
    let beta_iso = algebra::split_short_five_check(&diagram)?;
    let mut r = Report::new("split-five");
    r.bool_field("beta_is_isomorphism", beta_iso);
    Ok((r, beta_iso))
}
