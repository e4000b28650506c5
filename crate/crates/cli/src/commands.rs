use std::path::{Path, PathBuf};

use actorkit::actions::{is_acting_morphism, parse_action, semidirect, tau, validate_action, ActorMorphism, DerivedAction};
use actorkit::algebra::{combo_text, fixture, fixture_catalog, parse_algebra, Algebra};
use actorkit::bracket_family::{
    brute_force_solutions, build_bracket_family, closure_constraints, degree4_consequences, emit_ideal,
    structure_constraints, ConstraintSystem,
};
use actorkit::exact_linalg::{AffineSolution, FieldSpec, Scalar};
use actorkit::report::Report;
use actorkit::suite::run_suite;
use actorkit::variety::{
    accessibility_check, build_m3, builtin_catalog, builtin_variety, parse_variety, reduced_rule, LambdaMuRules,
    VarietySpec,
};
use actorkit::weak_actor::{commutativity_report, compute_actor_space, named_actor, named_actor_in, ActorKind};
use actorkit::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "actorkit", version, about = "Exact action accessibility and weak actor computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct VarietyArg {
    /// Variety file or builtin name
    #[arg(long)]
    pub variety: String,
    /// Field: Q or F<p>
    #[arg(long, default_value = "Q")]
    pub field: String,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[command(flatten)]
    pub v: VarietyArg,
    /// Comma-separated parameter values
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SystemKind {
    Closure,
    Structure,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a variety, or check an algebra against it
    CheckVariety {
        #[command(flatten)]
        v: VarietyArg,
        /// Algebra file or fixture name to test for membership
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Rank, pivots and λ/μ witness of the degree-3 identity matrix
    Accessibility(VarietyArg),
    /// λ/μ rules and the reduced rule when present
    LambdaMu(VarietyArg),
    /// Rank of the degree-4 consequence space
    Consequences(VarietyArg),
    /// Parametric bracket family
    BracketFamily(VarietyArg),
    /// Closure constraints; with --params, check a point
    ClosureCheck(FamilyArgs),
    /// Structure constraints; with --params, check a point
    StructureCheck(FamilyArgs),
    /// Enumerate solutions over a prime field
    SolveParams {
        #[command(flatten)]
        v: VarietyArg,
        #[arg(long, value_enum)]
        system: SystemKind,
        #[arg(long)]
        prime: u64,
    },
    /// Export a constraint ideal for an external solver
    EmitIdeal {
        #[command(flatten)]
        v: VarietyArg,
        #[arg(long, value_enum)]
        system: SystemKind,
    },
    /// External weak actor of an algebra
    Actor {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        algebra: String,
        /// Print only the dimension
        #[arg(long)]
        report_dim: bool,
        /// Override rules: λ1,..,λ8;μ1,..,μ8
        #[arg(long, allow_hyphen_values = true)]
        lambda_mu: Option<String>,
        /// Use the bracket family at these parameter values
        #[arg(long, conflicts_with = "lambda_mu", allow_hyphen_values = true)]
        params: Option<String>,
        /// Exit 1 unless the bracket is total
        #[arg(long)]
        require_total: bool,
    },
    /// Operator algebra solved from its own defining equations
    NamedActor {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        variety: Option<String>,
    },
    /// Check that an action file defines a derived action
    VerifyAction {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        action: String,
    },
    /// Semidirect product of a valid action
    Semidirect {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        action: String,
    },
    /// Images of the acting basis in the weak actor
    Tau {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        action: String,
    },
    /// Check whether the operators of an action file form an acting morphism
    ActingMorphism {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        action: String,
    },
    /// Builtin varieties and algebras; --show prints one as a file
    Fixtures {
        #[arg(long)]
        show: Option<String>,
    },
    /// Run the reproduction checks and print PASS/FAIL per item
    PaperSuite,
}

/// Failure with an exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotAccessible(_)
            | Error::NotInVariety { .. }
            | Error::InvalidAction(_)
            | Error::InconsistentRules(_)
            | Error::OutsideActor
            | Error::NotHomomorphism(_) => 1,
            _ => 2,
        };
        Fail(code, format!("error: {e}\n"))
    }
}

type Out = std::result::Result<(u8, Report), Fail>;

fn input(code: u8, msg: impl Into<String>) -> Fail {
    Fail(code, format!("error: {}\n", msg.into()))
}

fn read_file(path: &Path) -> std::result::Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| input(2, format!("{}: {e}", path.display())))
}

fn load_variety(spec: &str) -> std::result::Result<VarietySpec, Fail> {
    let p = Path::new(spec);
    if p.is_file() {
        return Ok(parse_variety(&read_file(p)?)?);
    }
    builtin_variety(spec).ok_or_else(|| input(2, format!("no variety file or builtin named '{spec}'")))
}

fn load_algebra(spec: &str) -> std::result::Result<Algebra, Fail> {
    let p = Path::new(spec);
    if p.is_file() {
        return Ok(parse_algebra(&read_file(p)?)?);
    }
    fixture(spec).ok_or_else(|| input(2, format!("no algebra file or fixture named '{spec}'")))
}

fn load_action(path: &str) -> std::result::Result<DerivedAction, Fail> {
    let p = PathBuf::from(path);
    let text = read_file(&p)?;
    let dir = p.parent().map(Path::to_path_buf).unwrap_or_default();
    let resolve = |name: &str| -> actorkit::Result<Algebra> {
        if let Some(a) = fixture(name) {
            return Ok(a);
        }
        for cand in [dir.join(name), dir.join(format!("{name}.alg"))] {
            if let Ok(t) = std::fs::read_to_string(&cand) {
                return parse_algebra(&t);
            }
        }
        Err(Error::UnknownName(name.to_string()))
    };
    Ok(parse_action(&text, &resolve)?)
}

fn field_of(s: &str) -> std::result::Result<FieldSpec, Fail> {
    Ok(FieldSpec::parse(s)?)
}

fn parse_list(s: &str, field: FieldSpec) -> std::result::Result<Vec<Scalar>, Fail> {
    Ok(s.split(',').map(|t| field.parse_scalar(t)).collect::<actorkit::Result<_>>()?)
}

fn parse_rules(s: &str, field: FieldSpec) -> std::result::Result<LambdaMuRules, Fail> {
    let (l, m) = s.split_once(';').ok_or_else(|| input(2, "expected λ1,..,λ8;μ1,..,μ8"))?;
    let (lambdas, mus) = (parse_list(l, field)?, parse_list(m, field)?);
    if lambdas.len() != 8 || mus.len() != 8 {
        return Err(input(2, "expected eight λ and eight μ coefficients"));
    }
    Ok(LambdaMuRules { lambdas, mus })
}

fn bool_word(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn check_variety(v: &VarietyArg, algebra: &Option<String>) -> Out {
    let var = load_variety(&v.variety)?;
    let field = field_of(&v.field)?;
    var.check_field(field)?;
    let mut r = Report::new();
    r.say(format!("variety {}", var.name)).put("variety", &var.name).put("field", field);
    r.put("identities", var.identities.len());
    for (i, p) in var.identities.iter().enumerate() {
        r.put(&format!("identity.{}", i + 1), p).put(&format!("degree.{}", i + 1), p.degree());
    }
    let chars: Vec<String> = var.excluded_chars.iter().map(u64::to_string).collect();
    r.put("excluded_chars", chars.join(","));
    let Some(a) = algebra else {
        return Ok((0, r));
    };
    let x = load_algebra(a)?;
    r.put("algebra", &x.name);
    for (i, p) in var.identities_in(x.field())?.iter().enumerate() {
        if let Some(t) = x.identity_failure(p)? {
            let labels: Vec<&str> = t.iter().map(|&k| x.labels()[k].as_str()).collect();
            r.say(format!("identity {} fails at ({})", i + 1, labels.join(", ")));
            r.put("member", "false").put("failing_identity", i + 1);
            return Ok((1, r));
        }
    }
    r.put("member", "true");
    Ok((0, r))
}

fn accessibility(v: &VarietyArg) -> Out {
    let var = load_variety(&v.variety)?;
    let field = field_of(&v.field)?;
    var.check_field(field)?;
    let rep = accessibility_check(&var.quadratic_part(), field)?;
    let im = build_m3(&var.quadratic_part(), field)?;
    let mut r = Report::new();
    r.put("variety", &var.name).put("field", field).put("rank", rep.rank);
    let piv: Vec<String> = rep.pivot_cols.iter().map(usize::to_string).collect();
    r.put("pivots", piv.join(",")).put("accessible", bool_word(rep.accessible));
    r.put_matrix("m3", &im.m3).put_matrix("rm3", &im.rm3);
    match rep.witness {
        Some(w) => {
            r.say(w.to_string());
            r.put_vector("lambda", &w.lambdas).put_vector("mu", &w.mus);
            Ok((0, r))
        }
        None => {
            r.say(rep.failure_reason.clone().unwrap_or_default());
            r.put("reason", rep.failure_reason.unwrap_or_default());
            Ok((1, r))
        }
    }
}

fn lambda_mu(v: &VarietyArg) -> Out {
    let (code, mut r) = accessibility(v)?;
    let var = load_variety(&v.variety)?;
    let field = field_of(&v.field)?;
    if let Some(rr) = reduced_rule(&var, field)? {
        r.say(format!("reduced rule: x(yz) = {} (xy)z + {} (xz)y, R = {} L", rr.alpha, rr.beta, rr.epsilon));
        r.put("reduced.epsilon", rr.epsilon).put("reduced.alpha", &rr.alpha).put("reduced.beta", &rr.beta);
    } else {
        r.put("reduced", "none");
    }
    r.record.retain(|(k, _)| !k.starts_with("m3") && !k.starts_with("rm3"));
    Ok((code, r))
}

fn consequences(v: &VarietyArg) -> Out {
    let var = load_variety(&v.variety)?;
    let field = field_of(&v.field)?;
    var.check_field(field)?;
    let cs = degree4_consequences(&var.quadratic_part(), field)?;
    let mut r = Report::new();
    r.put("variety", &var.name).put("field", field).put("rank", cs.rank).put("generators", cs.generators.len());
    Ok((0, r))
}

fn bracket_family(v: &VarietyArg) -> Out {
    let var = load_variety(&v.variety)?;
    let field = field_of(&v.field)?;
    var.check_field(field)?;
    let fam = build_bracket_family(&var.quadratic_part(), field)?;
    let mut r = Report::new();
    r.say(fam.to_string());
    r.put("variety", &var.name).put("field", field).put("params", fam.param_count());
    r.put("param_names", fam.params.join(","));
    for (w, c) in &fam.mu_template {
        r.put(&format!("mu.{}", w.to_compact()), c.render(&fam.params));
    }
    for (w, c) in &fam.lambda_template {
        r.put(&format!("lambda.{}", w.to_compact()), c.render(&fam.params));
    }
    Ok((0, r))
}

fn system(v: &VarietyArg, kind: SystemKind) -> std::result::Result<(VarietySpec, FieldSpec, ConstraintSystem), Fail> {
    let var = load_variety(&v.variety)?;
    let field = field_of(&v.field)?;
    var.check_field(field)?;
    let fam = build_bracket_family(&var.quadratic_part(), field)?;
    let cs = match kind {
        SystemKind::Closure => closure_constraints(&var.quadratic_part(), &fam)?,
        SystemKind::Structure => structure_constraints(&var.quadratic_part(), &fam)?,
    };
    Ok((var, field, cs))
}

fn constraint_check(a: &FamilyArgs, kind: SystemKind) -> Out {
    let (var, field, cs) = system(&a.v, kind)?;
    let mut r = Report::new();
    r.put("variety", &var.name).put("field", field).put("system", cs.kind).put("constraints", cs.polys.len());
    if let Some(p) = &a.params {
        let point = parse_list(p, field)?;
        if point.len() != cs.params.len() {
            return Err(input(2, format!("{} values for {} parameters", point.len(), cs.params.len())));
        }
        let ok = cs.satisfied_at(&point);
        r.say(if ok { "satisfied" } else { "violated" });
        r.put_vector("point", &point).put("satisfied", bool_word(ok));
        return Ok((if ok { 0 } else { 1 }, r));
    }
    if cs.is_empty() {
        r.say("no constraints: every parameter choice works");
        r.put("feasible", "true");
        return Ok((0, r));
    }
    if cs.polys.iter().all(|p| p.degree() <= 1) {
        let feasible = !matches!(cs.affine_solutions(field)?, AffineSolution::Inconsistent);
        r.put("feasible", bool_word(feasible));
        return Ok((if feasible { 0 } else { 1 }, r));
    }
    r.put("feasible", "unknown");
    Ok((0, r))
}

fn solve_params(v: &VarietyArg, kind: SystemKind, prime: u64) -> Out {
    let (var, _, cs) = system(v, kind)?;
    let sols = brute_force_solutions(&cs, prime)?;
    let mut r = Report::new();
    r.put("variety", &var.name).put("field", FieldSpec::prime(prime)?).put("system", cs.kind);
    r.put("solutions", sols.len());
    for (i, s) in sols.iter().enumerate() {
        r.put_vector(&format!("solution.{}", i + 1), s);
    }
    Ok((if sols.is_empty() { 1 } else { 0 }, r))
}

fn actor(variety: &str, algebra: &str, report_dim: bool, lm: &Option<String>, params: &Option<String>, require_total: bool) -> Out {
    let var = load_variety(variety)?;
    let x = load_algebra(algebra)?;
    let rules = match (lm, params) {
        (Some(s), _) => Some(parse_rules(s, x.field())?),
        (None, Some(p)) => {
            let fam = build_bracket_family(&var.quadratic_part(), x.field())?;
            Some(fam.evaluate(&parse_list(p, x.field())?)?)
        }
        (None, None) => None,
    };
    let s = compute_actor_space(&var, &x, rules)?;
    let mut r = Report::new();
    r.put("variety", &var.name).put("algebra", &x.name).put("field", x.field()).put("dim", s.dim());
    if report_dim {
        return Ok((0, r));
    }
    r.say(format!("rules ({}): {}", s.rules_source, s.rules));
    r.put("rules", s.rules_source).put_vector("lambda", &s.rules.lambdas).put_vector("mu", &s.rules.mus);
    for (i, b) in s.basis.iter().enumerate() {
        r.put_matrix(&format!("basis.{}.L", i + 1), &b.l).put_matrix(&format!("basis.{}.R", i + 1), &b.r);
    }
    let fails = s.domain_failures()?;
    let total = fails.is_empty();
    r.put("total", bool_word(total));
    if total {
        r.put("satisfies_variety", bool_word(s.satisfies_variety()?));
    } else {
        let pairs: Vec<String> = fails.iter().map(|(i, j)| format!("{}:{}", i + 1, j + 1)).collect();
        r.put("outside_pairs", pairs.join(","));
    }
    Ok((if require_total && !total { 1 } else { 0 }, r))
}

fn named(kind: &str, algebra: &str, variety: &Option<String>) -> Out {
    let kind = ActorKind::parse(kind)?;
    let x = load_algebra(algebra)?;
    let s = match variety {
        Some(v) => named_actor_in(kind, &load_variety(v)?, &x)?,
        None => named_actor(kind, &x)?,
    };
    let mut r = Report::new();
    r.put("kind", kind).put("variety", &s.variety.name).put("algebra", &x.name).put("dim", s.dim());
    for (i, b) in s.basis.iter().enumerate() {
        r.put_matrix(&format!("basis.{}.L", i + 1), &b.l).put_matrix(&format!("basis.{}.R", i + 1), &b.r);
    }
    if kind == ActorKind::Multipliers {
        r.put("commutative", bool_word(commutativity_report(&s)?));
    }
    Ok((0, r))
}

fn verify_action(variety: &str, action: &str) -> Out {
    let var = load_variety(variety)?;
    let act = load_action(action)?;
    let ok = validate_action(&var, &act)?;
    let mut r = Report::new();
    r.put("variety", &var.name).put("action", &act.name).put("valid", bool_word(ok));
    if !ok {
        let s = act.semidirect_candidate();
        for (i, p) in var.identities_in(s.field())?.iter().enumerate() {
            if let Some(t) = s.identity_failure(p)? {
                let labels: Vec<&str> = t.iter().map(|&k| s.labels()[k].as_str()).collect();
                r.say(format!("identity {} fails on ({})", i + 1, labels.join(", ")));
                r.put("failing_identity", i + 1).put("failing_tuple", labels.join(","));
                break;
            }
        }
    }
    Ok((if ok { 0 } else { 1 }, r))
}

fn semidirect_cmd(variety: &str, action: &str) -> Out {
    let var = load_variety(variety)?;
    let act = load_action(action)?;
    let s = semidirect(&var, &act)?;
    let mut r = Report::new();
    r.say(s.to_text().trim_end().to_string());
    r.put("variety", &var.name).put("algebra", &s.name).put("dim", s.dim()).put("basis", s.labels().join(" "));
    for i in 0..s.dim() {
        for j in 0..s.dim() {
            let p = s.product(i, j);
            if p.iter().any(|c| !c.is_zero()) {
                r.put(&format!("product.{}*{}", s.labels()[i], s.labels()[j]), combo_text(p, s.labels()));
            }
        }
    }
    Ok((0, r))
}

fn tau_cmd(variety: &str, action: &str) -> Out {
    let var = load_variety(variety)?;
    let act = load_action(action)?;
    let space = compute_actor_space(&var, &act.x, None)?;
    let phi = tau(&var, &act, &space)?;
    let mut r = Report::new();
    r.put("variety", &var.name).put("action", &act.name).put("actor_dim", space.dim());
    for (l, img) in act.b.labels().iter().zip(&phi.images) {
        r.put_matrix(&format!("image.{l}.L"), &img.l).put_matrix(&format!("image.{l}.R"), &img.r);
    }
    r.put("partial_homomorphism", bool_word(phi.is_partial_homomorphism()?));
    Ok((0, r))
}

fn acting_morphism(variety: &str, action: &str) -> Out {
    let var = load_variety(variety)?;
    let act = load_action(action)?;
    let space = compute_actor_space(&var, &act.x, None)?;
    let phi = ActorMorphism {
        b: act.b.clone(),
        space,
        images: (0..act.b.dim()).map(|i| act.operator(i)).collect(),
    };
    let ok = is_acting_morphism(&var, &phi)?;
    let mut r = Report::new();
    r.put("variety", &var.name).put("action", &act.name).put("acting_morphism", bool_word(ok));
    Ok((if ok { 0 } else { 1 }, r))
}

fn fixtures(show: &Option<String>) -> Out {
    let mut r = Report::new();
    if let Some(name) = show {
        if let Some(v) = builtin_variety(name) {
            r.say(v.to_text().trim_end().to_string());
            r.put("kind", "variety").put("name", &v.name);
            return Ok((0, r));
        }
        let a = load_algebra(name)?;
        r.say(a.to_text().trim_end().to_string());
        r.put("kind", "algebra").put("name", &a.name);
        return Ok((0, r));
    }
    let cat = builtin_catalog();
    r.put("varieties", cat.len());
    for (name, _) in &cat {
        let v = builtin_variety(name).ok_or_else(|| input(2, format!("catalog entry {name}")))?;
        let ids: Vec<String> = v.identities.iter().map(ToString::to_string).collect();
        r.put(&format!("variety.{name}"), ids.join(" ; "));
    }
    let algs = fixture_catalog();
    r.put("algebras", algs.len());
    for (name, desc) in algs {
        r.put(&format!("algebra.{name}"), desc);
    }
    Ok((0, r))
}

fn paper_suite() -> Out {
    let mut r = Report::new();
    let results = run_suite();
    for c in &results {
        r.say(format!("criterion {}: {} {}", c.id, if c.pass { "PASS" } else { "FAIL" }, c.title));
        r.put(&format!("criterion.{}", c.id), if c.pass { "PASS" } else { "FAIL" });
        r.put(&format!("criterion.{}.detail", c.id), &c.detail);
    }
    let passed = results.iter().filter(|c| c.pass).count();
    r.put("passed", passed).put("total", results.len());
    Ok((if passed == results.len() { 0 } else { 1 }, r))
}

/// Dispatches a parsed command line to its exit code, stdout text and stderr text.
pub fn run(cli: Cli) -> (u8, String, String) {
    let out = match &cli.command {
        Command::CheckVariety { v, algebra } => check_variety(v, algebra),
        Command::Accessibility(v) => accessibility(v),
        Command::LambdaMu(v) => lambda_mu(v),
        Command::Consequences(v) => consequences(v),
        Command::BracketFamily(v) => bracket_family(v),
        Command::ClosureCheck(a) => constraint_check(a, SystemKind::Closure),
        Command::StructureCheck(a) => constraint_check(a, SystemKind::Structure),
        Command::SolveParams { v, system, prime } => solve_params(v, *system, *prime),
        Command::EmitIdeal { v, system: kind } => match system(v, *kind) {
            Ok((_, _, cs)) => return (0, emit_ideal(&cs), String::new()),
            Err(e) => Err(e),
        },
        Command::Actor {
            variety,
            algebra,
            report_dim,
            lambda_mu,
            params,
            require_total,
        } => actor(variety, algebra, *report_dim, lambda_mu, params, *require_total),
        Command::NamedActor { kind, algebra, variety } => named(kind, algebra, variety),
        Command::VerifyAction { variety, action } => verify_action(variety, action),
        Command::Semidirect { variety, action } => semidirect_cmd(variety, action),
        Command::Tau { variety, action } => tau_cmd(variety, action),
        Command::ActingMorphism { variety, action } => acting_morphism(variety, action),
        Command::Fixtures { show } => fixtures(show),
        Command::PaperSuite => paper_suite(),
    };
    match out {
        Ok((code, r)) => (code, r.to_string(), String::new()),
        Err(Fail(code, msg)) => (code, String::new(), msg),
    }
}
