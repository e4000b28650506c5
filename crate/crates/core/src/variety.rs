//! Varieties, the degree-3 identity matrix, accessibility and λ/μ rules.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact_linalg::{AffineSolution, ExactMatrix, FieldSpec, Scalar};
use crate::free_magma::{
    enumerate_multilinear, names, parse_word, MagmaWord, MonomialOrdering, MultilinearPoly, Side,
};
use crate::text::{keyword, strip_comment, Cursor};

/// A named set of multilinear identities (each read as `= 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietySpec {
    pub name: String,
    /// Identities with rational coefficients.
    pub identities: Vec<MultilinearPoly>,
    /// Excluded characteristics.
    pub excluded_chars: BTreeSet<u64>,
}

/// M3, its reduced form, rank and pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityMatrices {
    pub m3: ExactMatrix,
    pub rm3: ExactMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// The rules x(fg) = Σ λₖ Wₖ and (fg)x = Σ μₖ Wₖ over the eight words of [`LAMBDA_MU_WORDS`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaMuRules {
    pub lambdas: Vec<Scalar>,
    pub mus: Vec<Scalar>,
}

/// x(yz) = α(xy)z + β(xz)y in presence of xy = ε·yx.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedRule {
    pub epsilon: i8,
    pub alpha: Scalar,
    pub beta: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AccessibilityReport {
    pub accessible: bool,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub witness: Option<LambdaMuRules>,
    pub failure_reason: Option<String>,
}

/// The eight right-hand words of the λ/μ rules, on (x, f, g).
pub const LAMBDA_MU_WORDS: [&str; 8] = [
    "(xf)g", "(fx)g", "g(xf)", "g(fx)", "(xg)f", "(gx)f", "f(xg)", "f(gx)",
];

/// Canonical degree-3 variable names.
pub fn canonical3() -> Vec<String> {
    names(&["f", "x", "y"])
}

/// The degree-3 ordering on (f, x, y).
pub fn order3() -> MonomialOrdering {
    enumerate_multilinear(&canonical3()).expect("degree 3 is supported")
}

/// Retagging f ↦ x, x ↦ f, y ↦ g of the degree-3 column words.
pub fn retag(w: &MagmaWord) -> MagmaWord {
    let map: HashMap<&str, &str> = [("f", "x"), ("x", "f"), ("y", "g")].into_iter().collect();
    w.rename(&map)
}

/// Inverse of [`retag`].
pub fn untag(w: &MagmaWord) -> MagmaWord {
    let map: HashMap<&str, &str> = [("x", "f"), ("f", "x"), ("g", "y")].into_iter().collect();
    w.rename(&map)
}

/// Index into [`LAMBDA_MU_WORDS`] of the retagged column `j` (4 ≤ j < 12).
pub fn lambda_mu_index(j: usize) -> usize {
    let w = retag(&order3().words()[j]);
    LAMBDA_MU_WORDS
        .iter()
        .position(|s| MagmaWord::compact(s).expect("static word") == w)
        .expect("trailing columns retag onto the eight words")
}

impl VarietySpec {
    pub fn new(name: &str, identities: Vec<MultilinearPoly>) -> Self {
        VarietySpec {
            name: name.to_string(),
            identities,
            excluded_chars: BTreeSet::new(),
        }
    }

    /// Fails when `field`'s characteristic is excluded.
    pub fn check_field(&self, field: FieldSpec) -> Result<()> {
        let c = field.characteristic();
        if self.excluded_chars.contains(&c) {
            return Err(Error::Characteristic {
                variety: self.name.clone(),
                char: c,
            });
        }
        Ok(())
    }

    /// Identities mapped into `field`.
    pub fn identities_in(&self, field: FieldSpec) -> Result<Vec<MultilinearPoly>> {
        self.check_field(field)?;
        self.identities.iter().map(|p| p.to_field(field)).collect()
    }

    /// The sub-presentation by identities of degree at most 3.
    pub fn quadratic_part(&self) -> VarietySpec {
        VarietySpec {
            name: self.name.clone(),
            identities: self
                .identities
                .iter()
                .filter(|p| p.degree() <= 3)
                .cloned()
                .collect(),
            excluded_chars: self.excluded_chars.clone(),
        }
    }

    pub fn has_quadratic_identity(&self) -> bool {
        self.identities.iter().any(|p| p.degree() == 2)
    }

    /// Renders in the variety file grammar.
    pub fn to_text(&self) -> String {
        let mut s = format!("variety {}\n", self.name);
        if self.excluded_chars.is_empty() {
            s.push_str("char any\n");
        } else {
            s.push_str(&format!("char not {}\n", self.excluded_chars.iter().join(" ")));
        }
        for p in &self.identities {
            s.push_str(&format!("identity {p}\n"));
        }
        s
    }
}

impl fmt::Display for LambdaMuRules {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x(fg) = {}; (fg)x = {}", rule_text(&self.lambdas), rule_text(&self.mus))
    }
}

fn rule_text(cs: &[Scalar]) -> String {
    let mut parts = Vec::new();
    for (c, w) in cs.iter().zip(LAMBDA_MU_WORDS) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = if neg { -c } else { c.clone() };
        let sign = if neg { "-" } else { "+" };
        let coef = if mag.is_one() { String::new() } else { format!("{} ", mag.plain()) };
        parts.push(format!("{sign} {coef}{w}"));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let s = parts.join(" ");
    s.strip_prefix("+ ").map(str::to_string).unwrap_or(s)
}

impl LambdaMuRules {
    pub fn zero(field: FieldSpec) -> Self {
        LambdaMuRules {
            lambdas: vec![field.zero(); 8],
            mus: vec![field.zero(); 8],
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.lambdas[0].field()
    }

    /// Builds rules from two coefficient lists of length 8.
    pub fn from_ints(field: FieldSpec, lambdas: [i64; 8], mus: [i64; 8]) -> Self {
        LambdaMuRules {
            lambdas: lambdas.iter().map(|&v| field.int(v)).collect(),
            mus: mus.iter().map(|&v| field.int(v)).collect(),
        }
    }

    fn rule_poly(&self, head: &str, cs: &[Scalar]) -> Result<MultilinearPoly> {
        let field = self.field();
        let mut terms = vec![(MagmaWord::compact(head)?, field.one())];
        for (c, w) in cs.iter().zip(LAMBDA_MU_WORDS) {
            terms.push((MagmaWord::compact(w)?, -c));
        }
        MultilinearPoly::from_terms(names(&["x", "f", "g"]), field, terms)
    }

    /// x(fg) − Σ λₖ Wₖ over (x, f, g).
    pub fn lambda_poly(&self) -> Result<MultilinearPoly> {
        self.rule_poly("x(fg)", &self.lambdas)
    }

    /// (fg)x − Σ μₖ Wₖ over (x, f, g).
    pub fn mu_poly(&self) -> Result<MultilinearPoly> {
        self.rule_poly("(fg)x", &self.mus)
    }

    /// Both rules as rows over the degree-3 ordering on (f, x, y).
    pub fn to_m3_rows(&self) -> Result<Vec<Vec<Scalar>>> {
        let ord = order3();
        [self.lambda_poly()?, self.mu_poly()?]
            .iter()
            .map(|p| {
                let back = MultilinearPoly::from_terms(
                    canonical3(),
                    p.field(),
                    p.terms().iter().map(|(w, c)| (untag(w), c.clone())),
                )?;
                back.to_row(&ord)
            })
            .collect()
    }
}

/// The S₃ orbit of a degree-3 identity, relabeled onto (f, x, y) in lexicographic permutation order.
pub fn s3_orbit(p: &MultilinearPoly) -> Result<Vec<MultilinearPoly>> {
    if p.degree() != 3 {
        return Err(Error::UnsupportedDegree(p.degree()));
    }
    canonical3()
        .into_iter()
        .permutations(3)
        .map(|perm| p.relabel(&perm))
        .collect()
}

/// Degree-3 consequences of a degree-2 identity: border products with a third variable and
/// substitutions of each variable by its two products with it.
pub fn lift_quadratic(p: &MultilinearPoly) -> Result<Vec<MultilinearPoly>> {
    if p.degree() != 2 {
        return Err(Error::UnsupportedDegree(p.degree()));
    }
    let q = p.relabel(&names(&["u", "v"]))?;
    let w = "w";
    let uw = |a: &str, b: &str| MagmaWord::node(MagmaWord::leaf(a), MagmaWord::leaf(b));
    Ok(vec![
        q.border_multiply(w, Side::Left)?,
        q.border_multiply(w, Side::Right)?,
        q.substitute("u", &uw("u", w))?,
        q.substitute("u", &uw(w, "u"))?,
        q.substitute("v", &uw("v", w))?,
        q.substitute("v", &uw(w, "v"))?,
    ])
}

/// The rows generating the degree-3 identity space, in construction order.
pub fn degree3_generators(v: &VarietySpec, field: FieldSpec) -> Result<Vec<MultilinearPoly>> {
    let mut out = Vec::new();
    for p in v.identities_in(field)? {
        match p.degree() {
            3 => out.extend(s3_orbit(&p)?),
            2 => {
                for l in lift_quadratic(&p)? {
                    out.extend(s3_orbit(&l)?);
                }
            }
            d => return Err(Error::UnsupportedDegree(d)),
        }
    }
    Ok(out)
}

/// M3 and its reduced row echelon form.
pub fn build_m3(v: &VarietySpec, field: FieldSpec) -> Result<IdentityMatrices> {
    let ord = order3();
    let rows = degree3_generators(v, field)?
        .iter()
        .map(|p| p.to_row(&ord))
        .collect::<Result<Vec<_>>>()?;
    let m3 = ExactMatrix::from_rows(field, 12, rows)?;
    let r = m3.rref();
    Ok(IdentityMatrices {
        m3,
        rm3: r.matrix,
        rank: r.rank,
        pivot_cols: r.pivot_cols,
    })
}

impl IdentityMatrices {
    pub fn field(&self) -> FieldSpec {
        self.m3.field()
    }

    /// Row of the reduced form whose pivot is column `c`.
    pub fn pivot_row(&self, c: usize) -> Option<usize> {
        self.pivot_cols.iter().position(|&p| p == c)
    }

    /// Reduced rows with pivot beyond the first four columns.
    pub fn free_rows(&self) -> Vec<usize> {
        (0..self.rank).filter(|&i| self.pivot_cols[i] >= 4).collect()
    }

    pub fn is_accessible(&self) -> bool {
        (0..4).all(|c| self.pivot_cols.contains(&c))
    }

    /// Nonzero rows of the reduced form.
    pub fn reduced_rows(&self) -> ExactMatrix {
        let rows = (0..self.rank).map(|i| self.rm3.row(i).to_vec()).collect();
        ExactMatrix::from_rows(self.field(), 12, rows).expect("shape")
    }
}

/// λ/μ rules read from the pivot rows of columns 0 and 2.
pub fn extract_lambda_mu(im: &IdentityMatrices) -> Result<LambdaMuRules> {
    if !im.is_accessible() {
        return Err(Error::NotAccessible(format!("pivot columns {:?}", im.pivot_cols)));
    }
    let field = im.field();
    let read = |row: usize| {
        let mut cs = vec![field.zero(); 8];
        for j in 4..12 {
            cs[lambda_mu_index(j)] = -im.rm3.get(row, j);
        }
        cs
    };
    let l = im.pivot_row(0).expect("accessible");
    let m = im.pivot_row(2).expect("accessible");
    Ok(LambdaMuRules {
        lambdas: read(l),
        mus: read(m),
    })
}

/// Decides action accessibility from the pivots of RM3.
pub fn accessibility_check(v: &VarietySpec, field: FieldSpec) -> Result<AccessibilityReport> {
    let im = build_m3(v, field)?;
    if im.is_accessible() {
        Ok(AccessibilityReport {
            accessible: true,
            rank: im.rank,
            pivot_cols: im.pivot_cols.clone(),
            witness: Some(extract_lambda_mu(&im)?),
            failure_reason: None,
        })
    } else {
        let missing: Vec<usize> = (0..4).filter(|c| !im.pivot_cols.contains(c)).collect();
        Ok(AccessibilityReport {
            accessible: false,
            rank: im.rank,
            pivot_cols: im.pivot_cols.clone(),
            witness: None,
            failure_reason: Some(format!(
                "rank {}; columns {:?} among the first four are not pivots",
                im.rank, missing
            )),
        })
    }
}

/// Whether the degree-2 span contains xy − ε·yx; commutativity is tried first.
pub fn commutation_sign(v: &VarietySpec, field: FieldSpec) -> Result<Option<i8>> {
    let vars = names(&["x", "y"]);
    let ord = enumerate_multilinear(&vars)?;
    let mut rows = Vec::new();
    for p in v.identities_in(field)? {
        if p.degree() != 2 {
            continue;
        }
        let q = p.relabel(&vars)?;
        rows.push(q.to_row(&ord)?);
        rows.push(q.permute_vars(&[1, 0])?.to_row(&ord)?);
    }
    if rows.is_empty() {
        return Ok(None);
    }
    let m = ExactMatrix::from_rows(field, 2, rows)?;
    for eps in [1i8, -1] {
        let target = [field.one(), -field.int(eps as i64)];
        if m.span_membership(&target)?.is_some() {
            return Ok(Some(eps));
        }
    }
    Ok(None)
}

/// The reduced (anti)commutative rule, when the variety has one.
pub fn reduced_rule(v: &VarietySpec, field: FieldSpec) -> Result<Option<ReducedRule>> {
    let q = v.quadratic_part();
    let Some(epsilon) = commutation_sign(&q, field)? else {
        return Ok(None);
    };
    let im = build_m3(&q, field)?;
    // unknowns: one coefficient per M3 row, then α, β; e0 = Σ cᵢ rowᵢ + α e5 + β e4
    let n = im.m3.rows();
    let mut a = ExactMatrix::zeros(field, 12, n + 2);
    for i in 0..n {
        for j in 0..12 {
            a.set(j, i, im.m3.get(i, j).clone());
        }
    }
    a.set(5, n, field.one());
    a.set(4, n + 1, field.one());
    let mut rhs = vec![field.zero(); 12];
    rhs[0] = field.one();
    match a.solve_affine(&rhs)? {
        AffineSolution::Inconsistent => Ok(None),
        AffineSolution::Solutions { particular, .. } => Ok(Some(ReducedRule {
            epsilon,
            alpha: particular[n].clone(),
            beta: particular[n + 1].clone(),
        })),
    }
}

impl ReducedRule {
    /// x(yz) − α(xy)z − β(xz)y on (f, x, y), as a degree-3 row.
    pub fn to_m3_row(&self) -> Vec<Scalar> {
        let field = self.alpha.field();
        let mut r = vec![field.zero(); 12];
        r[0] = field.one();
        r[5] = -&self.alpha;
        r[4] = -&self.beta;
        r
    }

    /// The λ/μ rules this reduced rule induces on pairs (f, εf).
    pub fn to_lambda_mu(&self) -> LambdaMuRules {
        let field = self.alpha.field();
        let eps = field.int(self.epsilon as i64);
        // x(fg) = α (xf)g + β (xg)f ; (fg)x = ε x(fg)
        let mut l = vec![field.zero(); 8];
        l[0] = self.alpha.clone();
        l[4] = self.beta.clone();
        let mu = l.iter().map(|c| c * &eps).collect::<Vec<_>>();
        LambdaMuRules { lambdas: l, mus: mu }
    }
}

fn parse_coef(c: &mut Cursor) -> Result<Option<BigRational>> {
    let Some(t) = c.number() else {
        return Ok(None);
    };
    let q = match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| c.err("bad numerator"))?;
            let d: BigInt = d.parse().map_err(|_| c.err("bad denominator"))?;
            if d == BigInt::from(0) {
                return Err(c.err("zero denominator"));
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(t.parse().map_err(|_| c.err("bad integer"))?),
    };
    Ok(Some(q))
}

/// Parses `TERM (("+"|"-") TERM)*` with `TERM := [COEF] WORD`; variables in order of appearance.
pub(crate) fn parse_poly(src: &str, line: usize, col0: usize) -> Result<MultilinearPoly> {
    let field = FieldSpec::rationals();
    let mut c = Cursor::new(src, line, col0);
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut sign = BigRational::from_integer(1.into());
        if c.eat('-') {
            sign = -sign;
        } else if !c.eat('+') && !first {
            return Err(c.err("expected '+' or '-'"));
        }
        first = false;
        let coef = parse_coef(&mut c)?.unwrap_or_else(|| BigRational::from_integer(1.into()));
        let w = parse_word(&mut c)?;
        terms.push((w, field.rational(&(sign * coef))?));
        if c.at_end() {
            break;
        }
    }
    let mut vars: Vec<String> = Vec::new();
    for (w, _) in &terms {
        for l in w.leaves() {
            if !vars.iter().any(|v| v == l) {
                vars.push(l.to_string());
            }
        }
    }
    let degree = terms[0].0.degree();
    if !(2..=5).contains(&degree) {
        return Err(Error::UnsupportedDegree(degree));
    }
    MultilinearPoly::from_terms(vars, field, terms)
}

/// Parses the variety file grammar.
pub fn parse_variety(text: &str) -> Result<VarietySpec> {
    let mut name = None;
    let mut excluded = BTreeSet::new();
    let mut ids = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = strip_comment(raw);
        let Some((kw, rest, off)) = keyword(line) else {
            continue;
        };
        let err = |col: usize, msg: &str| Error::Parse {
            line: ln,
            col,
            msg: msg.into(),
        };
        match kw {
            "variety" => {
                let mut c = Cursor::new(rest, ln, off);
                let n = c.ident()?;
                if !c.at_end() {
                    return Err(c.err("unexpected text after variety name"));
                }
                name = Some(n);
            }
            "char" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                match toks.as_slice() {
                    ["any"] => {}
                    ["not", ps @ ..] if !ps.is_empty() => {
                        for p in ps {
                            let v: u64 = p.parse().map_err(|_| err(off + 1, "bad characteristic"))?;
                            excluded.insert(v);
                        }
                    }
                    _ => return Err(err(off + 1, "expected 'any' or 'not INT+'")),
                }
            }
            "identity" => ids.push(parse_poly(rest, ln, off)?),
            other => return Err(err(1, &format!("unknown keyword '{other}'"))),
        }
    }
    let name = name.ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "missing 'variety' line".into(),
    })?;
    if ids.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            col: 1,
            msg: "at least one identity is required".into(),
        });
    }
    Ok(VarietySpec {
        name,
        identities: ids,
        excluded_chars: excluded,
    })
}

const JACOBI: &str = "((x*y)*z) + ((y*z)*x) + ((z*x)*y)";

/// Builtin catalog: (name, description, file text).
pub fn builtin_catalog() -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = vec![
        ("leibniz", "char any\nidentity ((x*y)*z) - ((x*z)*y) - (x*(y*z))".to_string()),
        (
            "symmetric_leibniz",
            "char any\nidentity ((x*y)*z) - ((x*z)*y) - (x*(y*z))\nidentity (z*(x*y)) - ((z*x)*y) - (x*(z*y))".to_string(),
        ),
        ("assoc", "char any\nidentity ((x*y)*z) - (x*(y*z))".to_string()),
        ("aassoc", "char any\nidentity ((x*y)*z) + (x*(y*z))".to_string()),
        ("cassoc", "char any\nidentity (x*y) - (y*x)\nidentity ((x*y)*z) - (x*(y*z))".to_string()),
        ("lie", format!("char any\nidentity (x*y) + (y*x)\nidentity {JACOBI}")),
        ("jjord", format!("char any\nidentity (x*y) - (y*x)\nidentity {JACOBI}")),
        ("acaassoc", "char any\nidentity (x*y) + (y*x)\nidentity ((x*y)*z) + (x*(y*z))".to_string()),
        (
            "alt",
            "char not 2\nidentity ((x*y)*z) + ((x*z)*y) - (x*(y*z)) - (x*(z*y))\nidentity ((x*y)*z) + ((y*x)*z) - (x*(y*z)) - (y*(x*z))".to_string(),
        ),
        ("nil2_alg", "char any\nidentity (x*(y*z))\nidentity ((x*y)*z)".to_string()),
        ("nil2_com", "char any\nidentity (x*y) - (y*x)\nidentity (x*(y*z))\nidentity ((x*y)*z)".to_string()),
        ("nil2_acom", "char any\nidentity (x*y) + (y*x)\nidentity (x*(y*z))\nidentity ((x*y)*z)".to_string()),
        ("abalg", "char any\nidentity (x*y)".to_string()),
        (
            "novikov",
            "char any\nidentity ((x*y)*z) - (x*(y*z)) - ((y*x)*z) + (y*(x*z))\nidentity ((x*y)*z) - ((x*z)*y)".to_string(),
        ),
        (
            "cpoisson",
            "char any\nidentity 3 ((x*y)*z) - 3 (x*(y*z)) - ((x*z)*y) - ((y*z)*x) + ((y*x)*z) + ((z*x)*y)".to_string(),
        ),
    ]
    .into_iter()
    .map(|(n, t)| (n.to_string(), format!("variety {n}\n{t}\n")))
    .collect();
    for k in 1..=4 {
        v.push((format!("nil_k_assoc({k})"), nil_k_assoc_text(k)));
    }
    v
}

fn nil_k_assoc_text(k: usize) -> String {
    let vars: Vec<String> = (1..=k + 1).map(|i| format!("x{i}")).collect();
    let mut s = format!("variety nil{k}_assoc\nchar any\nidentity ((x*y)*z) - (x*(y*z))\n");
    for w in bracketings(&vars) {
        s.push_str(&format!("identity {w}\n"));
    }
    s
}

fn bracketings(vars: &[String]) -> Vec<MagmaWord> {
    if vars.len() == 1 {
        return vec![MagmaWord::leaf(&vars[0])];
    }
    let mut out = Vec::new();
    for k in 1..vars.len() {
        for a in bracketings(&vars[..k]) {
            for b in bracketings(&vars[k..]) {
                out.push(MagmaWord::node(a.clone(), b));
            }
        }
    }
    out
}

/// Looks up a builtin variety; accepts `nil_k_assoc(k)` and `nilk_assoc`.
pub fn builtin_variety(name: &str) -> Option<VarietySpec> {
    let key = name.trim().to_ascii_lowercase();
    let key = match key.strip_prefix("nil").and_then(|r| r.strip_suffix("_assoc")) {
        Some(k) if k.chars().all(|c| c.is_ascii_digit()) && !k.is_empty() => {
            format!("nil_k_assoc({k})")
        }
        _ => key,
    };
    builtin_catalog()
        .into_iter()
        .find(|(n, _)| *n == key)
        .map(|(_, t)| parse_variety(&t).expect("builtin varieties parse"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn ints(m: &ExactMatrix) -> Vec<Vec<i64>> {
        m.row_vecs()
            .iter()
            .map(|r| r.iter().map(|s| s.to_i64().unwrap()).collect())
            .collect()
    }

    #[test]
    fn parses_examples() {
        let v = parse_variety("variety leib\nchar any\nidentity ((x*y)*z) - ((x*z)*y) - (x*(y*z))\n").unwrap();
        assert_eq!(v.identities.len(), 1);
        assert_eq!(v.identities[0].degree(), 3);
        let ab = parse_variety("variety ab\nchar any\nidentity (x*y)").unwrap();
        assert_eq!(ab.identities[0].degree(), 2);
        let alt = builtin_variety("alt").unwrap();
        assert!(alt.excluded_chars.contains(&2));
        assert!(alt.check_field(FieldSpec::prime(2).unwrap()).is_err());
    }

    #[test]
    fn parse_errors_have_locations() {
        match parse_variety("variety v\nidentity ((x*y)*z) - ((x*z)*y") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_variety("variety v\nidentity ((x*x)*z)"),
            Err(Error::NotMultilinear(_))
        ));
        assert!(matches!(
            parse_variety("variety v\nidentity x"),
            Err(Error::UnsupportedDegree(1))
        ));
        assert!(parse_variety("identity (x*y)").is_err());
    }

    #[test]
    fn leibniz_matrices() {
        let im = build_m3(&builtin_variety("leibniz").unwrap(), q()).unwrap();
        assert_eq!(
            ints(&im.m3)[0],
            vec![-1, 0, 0, 0, -1, 1, 0, 0, 0, 0, 0, 0]
        );
        assert_eq!(im.rank, 6);
        assert!(im.is_accessible());
    }

    #[test]
    fn ranks_of_catalog() {
        let rank = |n: &str| build_m3(&builtin_variety(n).unwrap(), q()).unwrap().rank;
        assert_eq!(rank("symmetric_leibniz"), 10);
        assert_eq!(rank("nil2_alg"), 12);
        assert_eq!(rank("abalg"), 12);
    }

    #[test]
    fn right_nested_zero_not_accessible() {
        let v = parse_variety("variety r\nidentity (x*(y*z))").unwrap();
        let rep = accessibility_check(&v, q()).unwrap();
        assert!(!rep.accessible);
        assert!(rep.failure_reason.is_some());
        assert_eq!(rep.pivot_cols, vec![0, 1, 8, 9, 10, 11]);
    }

    #[test]
    fn lambda_mu_examples() {
        let l = accessibility_check(&builtin_variety("leibniz").unwrap(), q())
            .unwrap()
            .witness
            .unwrap();
        // x(fg) = (xf)g - (xg)f ; (fg)x = (fx)g + f(gx)
        assert_eq!(l, LambdaMuRules::from_ints(q(), [1, 0, 0, 0, -1, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 1]));
        let a = accessibility_check(&builtin_variety("assoc").unwrap(), q())
            .unwrap()
            .witness
            .unwrap();
        assert_eq!(a, LambdaMuRules::from_ints(q(), [1, 0, 0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0, 0, 1]));
        let z = accessibility_check(&builtin_variety("abalg").unwrap(), q())
            .unwrap()
            .witness
            .unwrap();
        assert_eq!(z, LambdaMuRules::zero(q()));
    }

    #[test]
    fn reduced_rules() {
        let rr = |n: &str| {
            let r = reduced_rule(&builtin_variety(n).unwrap(), q()).unwrap().unwrap();
            (r.epsilon, r.alpha.to_i64().unwrap(), r.beta.to_i64().unwrap())
        };
        assert_eq!(rr("lie"), (-1, 1, -1));
        assert_eq!(rr("jjord"), (1, -1, -1));
        assert_eq!(rr("cassoc"), (1, 1, 0));
        assert_eq!(rr("acaassoc"), (-1, -1, 0));
        assert_eq!(rr("nil2_com"), (1, 0, 0));
        assert_eq!(rr("abalg"), (1, 0, 0));
        assert!(reduced_rule(&builtin_variety("leibniz").unwrap(), q()).unwrap().is_none());
    }

    #[test]
    fn catalog_parses() {
        let cat = builtin_catalog();
        assert!(cat.len() >= 15);
        for (n, _) in &cat {
            assert!(builtin_variety(n).is_some(), "{n}");
        }
        assert_eq!(builtin_variety("nil3_assoc").unwrap().identities.len(), 1 + 5);
        assert_eq!(builtin_variety("novikov").unwrap().identities.len(), 2);
    }

    #[test]
    fn degree_above_three_rejected_by_m3() {
        let v = builtin_variety("nil3_assoc").unwrap();
        assert!(matches!(build_m3(&v, q()), Err(Error::UnsupportedDegree(4))));
        assert!(build_m3(&v.quadratic_part(), q()).is_ok());
    }
}
