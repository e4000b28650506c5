//! Degree-4 consequences, parametric bracket families and their closure and structure constraints.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact_linalg::{AffineSolution, ExactMatrix, FieldSpec, Rref, Scalar};
use crate::free_magma::{enumerate_multilinear, names, MagmaWord, MonomialOrdering, MultilinearPoly, Side};
use crate::variety::{
    build_m3, extract_lambda_mu, lambda_mu_index, order3, retag, IdentityMatrices, LambdaMuRules,
    VarietySpec,
};

/// Sparse polynomial in the family parameters; monomials are sorted lists of parameter indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    field: FieldSpec,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl ParamPoly {
    pub fn zero(field: FieldSpec) -> Self {
        ParamPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero(c.field());
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(field: FieldSpec, i: usize) -> Self {
        let mut p = Self::zero(field);
        p.add_term(vec![i], field.one());
        p
    }

    fn add_term(&mut self, mut mono: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        mono.sort_unstable();
        let e = self.terms.entry(mono.clone()).or_insert_with(|| self.field.zero());
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, Scalar> {
        &self.terms
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add(&self, o: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &ParamPoly) -> ParamPoly {
        self.add(&o.scale(&-self.field.one()))
    }

    pub fn scale(&self, s: &Scalar) -> ParamPoly {
        let mut out = Self::zero(self.field);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, o: &ParamPoly) -> ParamPoly {
        let mut out = Self::zero(self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = m1.clone();
                m.extend(m2);
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    /// Value at a point.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &i in m {
                t = &t * &point[i];
            }
            acc += &t;
        }
        acc
    }

    /// Coefficients moved into another field.
    pub fn to_field(&self, field: FieldSpec) -> Result<ParamPoly> {
        if field == self.field {
            return Ok(self.clone());
        }
        let mut out = Self::zero(field);
        for (m, c) in &self.terms {
            let q = c
                .as_rational()
                .ok_or_else(|| Error::FieldMismatch(format!("{} into {field}", self.field)))?;
            out.add_term(m.clone(), field.rational(q)?);
        }
        Ok(out)
    }

    /// Text with `*` products and the given parameter names.
    pub fn render(&self, params: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        // highest degree first
        let mut ts: Vec<(&Vec<usize>, &Scalar)> = self.terms.iter().collect();
        ts.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
        for (i, (m, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            out.push_str(match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let vars: Vec<&str> = m.iter().map(|&k| params[k].as_str()).collect();
            if vars.is_empty() {
                out.push_str(&mag.plain());
            } else if mag.is_one() {
                out.push_str(&vars.join("*"));
            } else {
                out.push_str(&format!("{}*{}", mag.plain(), vars.join("*")));
            }
        }
        out
    }
}

/// Degree-4 consequences of the reduced degree-3 identities.
#[derive(Clone, Debug)]
pub struct ConsequenceSpace {
    pub degree4_matrix: ExactMatrix,
    pub rank: usize,
    /// (RM3 row index, operation tag) per matrix row.
    pub generators: Vec<(usize, String)>,
    reduced: Rref,
}

impl ConsequenceSpace {
    /// Reduces a coefficient vector modulo the consequence span.
    pub fn reduce(&self, v: &mut [ParamPoly]) {
        let r = &self.reduced;
        for (k, &pc) in r.pivot_cols.iter().enumerate() {
            if v[pc].is_zero() {
                continue;
            }
            let coef = v[pc].clone();
            for (j, vj) in v.iter_mut().enumerate() {
                let e = r.matrix.get(k, j);
                if !e.is_zero() {
                    *vj = vj.sub(&coef.scale(e));
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.degree4_matrix.span_membership(v)?.is_some())
    }
}

/// The degree-4 ordering on (f, g, x, y).
pub fn order4() -> MonomialOrdering {
    enumerate_multilinear(&names(&["f", "g", "x", "y"])).expect("degree 4 is supported")
}

fn require_family_scope(v: &VarietySpec, field: FieldSpec) -> Result<IdentityMatrices> {
    if v.has_quadratic_identity() {
        return Err(Error::QuadraticIdentity(v.name.clone()));
    }
    let im = build_m3(v, field)?;
    if !im.is_accessible() {
        return Err(Error::NotAccessible(format!(
            "{}: pivot columns {:?}",
            v.name, im.pivot_cols
        )));
    }
    Ok(im)
}

fn rm3_poly(im: &IdentityMatrices, i: usize) -> Result<MultilinearPoly> {
    MultilinearPoly::from_row(im.rm3.row(i), &order3(), im.field())
}

fn swap_fg(p: &MultilinearPoly) -> Result<MultilinearPoly> {
    let map: HashMap<&str, &str> = [("f", "g"), ("g", "f")].into_iter().collect();
    MultilinearPoly::from_terms(
        p.vars().to_vec(),
        p.field(),
        p.terms().iter().map(|(w, c)| (w.rename(&map), c.clone())),
    )
}

fn bracket(a: &str, b: &str) -> MagmaWord {
    MagmaWord::node(MagmaWord::leaf(a), MagmaWord::leaf(b))
}

/// The twelve generators of one reduced identity, each tagged.
pub fn consequences_of(p: &MultilinearPoly) -> Result<Vec<(String, MultilinearPoly)>> {
    let mut gens = vec![
        ("g*p".to_string(), p.border_multiply("g", Side::Left)?),
        ("p*g".to_string(), p.border_multiply("g", Side::Right)?),
        ("x->gx".to_string(), p.substitute("x", &bracket("g", "x"))?),
        ("x->xg".to_string(), p.substitute("x", &bracket("x", "g"))?),
        ("y->gy".to_string(), p.substitute("y", &bracket("g", "y"))?),
        ("y->yg".to_string(), p.substitute("y", &bracket("y", "g"))?),
    ];
    let swapped = gens
        .iter()
        .map(|(t, q)| Ok((format!("{t}|f<->g"), swap_fg(q)?)))
        .collect::<Result<Vec<_>>>()?;
    gens.extend(swapped);
    Ok(gens)
}

/// All degree-4 consequences of the variety over the 120-word basis.
pub fn degree4_consequences(v: &VarietySpec, field: FieldSpec) -> Result<ConsequenceSpace> {
    let im = if v.identities.is_empty() {
        build_m3(v, field)?
    } else {
        require_family_scope(v, field)?
    };
    let ord = order4();
    let mut rows = Vec::new();
    let mut generators = Vec::new();
    for i in 0..im.rank {
        for (tag, q) in consequences_of(&rm3_poly(&im, i)?)? {
            rows.push(q.to_row(&ord)?);
            generators.push((i, tag));
        }
    }
    let m = ExactMatrix::from_rows(field, ord.len(), rows)?;
    let reduced = m.rref();
    Ok(ConsequenceSpace {
        rank: reduced.rank,
        degree4_matrix: m,
        generators,
        reduced,
    })
}

/// Parametric multiplication of operator symbols: `(fg)x` and `x(fg)` as affine combinations.
#[derive(Clone, Debug)]
pub struct ParamBracket {
    pub base: LambdaMuRules,
    /// Reduced M3 rows with pivot beyond column 3.
    pub free_rows: Vec<Vec<Scalar>>,
    /// a1..ak attach to (fg)x, b1..bk to x(fg).
    pub params: Vec<String>,
    /// Words on (x, f, g) with coefficients for (fg)x.
    pub mu_template: Vec<(MagmaWord, ParamPoly)>,
    /// Words on (x, f, g) with coefficients for x(fg).
    pub lambda_template: Vec<(MagmaWord, ParamPoly)>,
    field: FieldSpec,
}

impl ParamBracket {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    /// Concrete λ/μ rules at a parameter point.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<LambdaMuRules> {
        if point.len() != self.params.len() {
            return Err(Error::Dimension(format!(
                "{} values for {} parameters",
                point.len(),
                self.params.len()
            )));
        }
        let read = |t: &[(MagmaWord, ParamPoly)]| {
            let mut cs = vec![self.field.zero(); 8];
            for (j, (_, c)) in t.iter().enumerate() {
                cs[lambda_mu_index(j + 4)] = c.eval(point);
            }
            cs
        };
        Ok(LambdaMuRules {
            lambdas: read(&self.lambda_template),
            mus: read(&self.mu_template),
        })
    }

    fn render_template(&self, head: &str, t: &[(MagmaWord, ParamPoly)]) -> String {
        let mut parts = Vec::new();
        for (w, c) in t {
            if c.is_zero() {
                continue;
            }
            parts.push(format!("({}) {}", c.render(&self.params), w.to_compact()));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        format!("{head} = {}", parts.join(" + "))
    }
}

impl fmt::Display for ParamBracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.render_template("(fg)x", &self.mu_template))?;
        write!(f, "{}", self.render_template("x(fg)", &self.lambda_template))
    }
}

/// The family obtained by adding free RM3 rows to the base λ/μ expansion.
pub fn build_bracket_family(v: &VarietySpec, field: FieldSpec) -> Result<ParamBracket> {
    let im = require_family_scope(v, field)?;
    let base = extract_lambda_mu(&im)?;
    let free = im.free_rows();
    let k = free.len();
    let mut params: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
    params.extend((1..=k).map(|i| format!("b{i}")));
    let ord = order3();
    let template = |pivot_row: usize, offset: usize| {
        (4..12)
            .map(|j| {
                let mut c = ParamPoly::constant(-im.rm3.get(pivot_row, j));
                for (i, &fr) in free.iter().enumerate() {
                    let e = im.rm3.get(fr, j);
                    c = c.add(&ParamPoly::var(field, offset + i).scale(e));
                }
                (retag(&ord.words()[j]), c)
            })
            .collect::<Vec<_>>()
    };
    let mu_template = template(im.pivot_row(2).expect("accessible"), 0);
    let lambda_template = template(im.pivot_row(0).expect("accessible"), k);
    Ok(ParamBracket {
        base,
        free_rows: free.iter().map(|&i| im.rm3.row(i).to_vec()).collect(),
        params,
        mu_template,
        lambda_template,
        field,
    })
}

/// Rewrites every operator product adjacent to an element by the parametric family.
pub struct Expander<'a> {
    ops: HashSet<String>,
    fam: &'a ParamBracket,
}

pub type Expansion = BTreeMap<MagmaWord, ParamPoly>;

impl<'a> Expander<'a> {
    pub fn new(fam: &'a ParamBracket, ops: &[&str]) -> Self {
        Expander {
            ops: ops.iter().map(|s| s.to_string()).collect(),
            fam,
        }
    }

    fn is_op(&self, w: &MagmaWord) -> bool {
        w.leaves().iter().all(|l| self.ops.contains(*l))
    }

    fn is_op_product(&self, w: &MagmaWord) -> bool {
        !w.is_leaf() && self.is_op(w)
    }

    /// Fully expanded form of an element-valued word.
    pub fn expand(&self, w: &MagmaWord) -> Result<Expansion> {
        let field = self.fam.field;
        let MagmaWord::Node(a, b) = w else {
            return Ok(BTreeMap::from([(w.clone(), ParamPoly::constant(field.one()))]));
        };
        if self.is_op(w) {
            return Err(Error::Internal(format!("operator word {w} has no element")));
        }
        let rewrite = if self.is_op_product(a) {
            Some((a.as_ref(), b.as_ref(), &self.fam.mu_template))
        } else if self.is_op_product(b) {
            Some((b.as_ref(), a.as_ref(), &self.fam.lambda_template))
        } else {
            None
        };
        let mut out = Expansion::new();
        if let Some((op, elt, template)) = rewrite {
            let MagmaWord::Node(p, q) = op else { unreachable!() };
            let map: HashMap<String, MagmaWord> = [
                ("f".to_string(), p.as_ref().clone()),
                ("g".to_string(), q.as_ref().clone()),
                ("x".to_string(), elt.clone()),
            ]
            .into_iter()
            .collect();
            for (tw, c) in template {
                if c.is_zero() {
                    continue;
                }
                for (u, d) in self.expand(&tw.substitute(&map))? {
                    accumulate(&mut out, u, &c.mul(&d));
                }
            }
            return Ok(out);
        }
        let ea = self.side(a)?;
        let eb = self.side(b)?;
        for (u, c) in &ea {
            for (v, d) in &eb {
                accumulate(&mut out, MagmaWord::node(u.clone(), v.clone()), &c.mul(d));
            }
        }
        Ok(out)
    }

    fn side(&self, w: &MagmaWord) -> Result<Expansion> {
        if self.is_op(w) {
            Ok(BTreeMap::from([(w.clone(), ParamPoly::constant(self.fam.field.one()))]))
        } else {
            self.expand(w)
        }
    }
}

fn accumulate(out: &mut Expansion, w: MagmaWord, c: &ParamPoly) {
    if c.is_zero() {
        return;
    }
    let e = out
        .entry(w.clone())
        .or_insert_with(|| ParamPoly::zero(c.field()));
    *e = e.add(c);
    if e.is_zero() {
        out.remove(&w);
    }
}

/// Whether a constraint system comes from the closure or the structure check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    Closure,
    Structure,
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintKind::Closure => write!(f, "closure"),
            ConstraintKind::Structure => write!(f, "structure"),
        }
    }
}

/// Polynomials in the parameters required to vanish.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub polys: Vec<ParamPoly>,
    pub params: Vec<String>,
    pub kind: ConstraintKind,
}

impl ConstraintSystem {
    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn satisfied_at(&self, point: &[Scalar]) -> bool {
        self.polys.iter().all(|p| p.eval(point).is_zero())
    }

    /// Solution set of an affine system (all polynomials of degree ≤ 1).
    pub fn affine_solutions(&self, field: FieldSpec) -> Result<AffineSolution> {
        let n = self.params.len();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for p in &self.polys {
            let p = p.to_field(field)?;
            if p.degree() > 1 {
                return Err(Error::Internal("system is not affine".into()));
            }
            let mut row = vec![field.zero(); n];
            let mut c0 = field.zero();
            for (m, c) in p.terms() {
                match m.as_slice() {
                    [] => c0 = c.clone(),
                    [i] => row[*i] = c.clone(),
                    _ => unreachable!(),
                }
            }
            rows.push(row);
            rhs.push(-c0);
        }
        if rows.is_empty() {
            let kernel = (0..n)
                .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
                .collect();
            return Ok(AffineSolution::Solutions {
                particular: vec![field.zero(); n],
                kernel,
            });
        }
        ExactMatrix::from_rows(field, n, rows)?.solve_affine(&rhs)
    }
}

fn push_unique(polys: &mut Vec<ParamPoly>, p: ParamPoly) {
    if !p.is_zero() && !polys.contains(&p) {
        polys.push(p);
    }
}

/// Residuals of f ↦ (fg) substituted into each reduced identity, modulo the consequences.
pub fn closure_constraints(v: &VarietySpec, fam: &ParamBracket) -> Result<ConstraintSystem> {
    let field = fam.field;
    let im = require_family_scope(v, field)?;
    let cons = degree4_consequences(v, field)?;
    let ord = order4();
    let ex = Expander::new(fam, &["f", "g"]);
    let mut polys = Vec::new();
    for i in 0..im.rank {
        let p = rm3_poly(&im, i)?.substitute("f", &bracket("f", "g"))?;
        let mut row = vec![ParamPoly::zero(field); ord.len()];
        for (w, c) in p.terms() {
            for (u, d) in ex.expand(w)? {
                let j = ord
                    .index_of(&u)
                    .ok_or_else(|| Error::Internal(format!("{u} is not a basis word")))?;
                row[j] = row[j].add(&d.scale(c));
            }
        }
        cons.reduce(&mut row);
        for r in row {
            if r.degree() > 1 {
                return Err(Error::Internal("closure constraint of degree > 1".into()));
            }
            push_unique(&mut polys, r);
        }
    }
    Ok(ConstraintSystem {
        polys,
        params: fam.params.clone(),
        kind: ConstraintKind::Closure,
    })
}

/// Coefficients of Φ(f,g,h)·x and x·Φ(f,g,h) after full expansion, for each identity Φ.
pub fn structure_constraints(v: &VarietySpec, fam: &ParamBracket) -> Result<ConstraintSystem> {
    let field = fam.field;
    require_family_scope(v, field)?;
    let ex = Expander::new(fam, &["f", "g", "h"]);
    let mut polys = Vec::new();
    for phi in v.identities_in(field)? {
        let phi = phi.relabel(&names(&["f", "g", "h"]))?;
        for side in [Side::Right, Side::Left] {
            let mut acc = Expansion::new();
            for (w, c) in phi.terms() {
                let x = MagmaWord::leaf("x");
                let ww = match side {
                    Side::Right => MagmaWord::node(w.clone(), x),
                    Side::Left => MagmaWord::node(x, w.clone()),
                };
                for (u, d) in ex.expand(&ww)? {
                    accumulate(&mut acc, u, &d.scale(c));
                }
            }
            for (_, c) in acc {
                if c.degree() > 2 {
                    return Err(Error::Internal("structure constraint of degree > 2".into()));
                }
                push_unique(&mut polys, c);
            }
        }
    }
    Ok(ConstraintSystem {
        polys,
        params: fam.params.clone(),
        kind: ConstraintKind::Structure,
    })
}

/// Largest search space accepted by [`brute_force_solutions`].
pub const SEARCH_LIMIT: u64 = 1 << 20;

/// Every point of F_p^params satisfying the system, in lexicographic order.
pub fn brute_force_solutions(cs: &ConstraintSystem, p: u64) -> Result<Vec<Vec<Scalar>>> {
    let field = FieldSpec::prime(p)?;
    let n = cs.params.len();
    let size = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if n > 16 || size > SEARCH_LIMIT as u128 {
        return Err(Error::SearchTooLarge(format!("{p}^{n} points")));
    }
    let polys = cs
        .polys
        .iter()
        .map(|q| q.to_field(field))
        .collect::<Result<Vec<_>>>()?;
    let elems = field.elements().expect("prime field");
    let mut idx = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        let point: Vec<Scalar> = idx.iter().map(|&i| elems[i].clone()).collect();
        if polys.iter().all(|q| q.eval(&point).is_zero()) {
            out.push(point);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < p as usize {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Plain-text ideal, one polynomial per line.
pub fn emit_ideal(cs: &ConstraintSystem) -> String {
    if cs.polys.is_empty() {
        return "# no constraints\n".into();
    }
    let mut s = format!(
        "# {} ideal in variables {}\n",
        cs.kind,
        cs.params.join(" ")
    );
    for p in &cs.polys {
        s.push_str(&p.render(&cs.params));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::variety::builtin_variety;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    #[test]
    fn param_poly_arithmetic() {
        let a = ParamPoly::var(q(), 0);
        let b = ParamPoly::var(q(), 1);
        let p = a.mul(&b).add(&ParamPoly::constant(q().int(-2)));
        assert_eq!(p.degree(), 2);
        assert_eq!(p.eval(&[q().int(2), q().int(1)]), q().zero());
        assert_eq!(p.render(&names(&["a1", "b1"])), "a1*b1 - 2");
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn leibniz_pipeline() {
        let v = builtin_variety("leibniz").unwrap();
        let cons = degree4_consequences(&v, q()).unwrap();
        assert_eq!(cons.rank, 72);
        let fam = build_bracket_family(&v, q()).unwrap();
        assert_eq!(fam.params, names(&["a1", "a2", "b1", "b2"]));
        let cl = closure_constraints(&v, &fam).unwrap();
        assert!(cl.is_empty());
    }

    #[test]
    fn free_variety_has_no_consequences() {
        let v = VarietySpec::new("free", vec![]);
        let c = degree4_consequences(&v, q()).unwrap();
        assert_eq!(c.rank, 0);
        assert_eq!(c.degree4_matrix.rows(), 0);
    }

    #[test]
    fn brute_force_trivial_cases() {
        let empty = ConstraintSystem {
            polys: vec![],
            params: names(&["a1", "b1"]),
            kind: ConstraintKind::Closure,
        };
        assert_eq!(brute_force_solutions(&empty, 2).unwrap().len(), 4);
        let bad = ConstraintSystem {
            polys: vec![ParamPoly::constant(q().one())],
            params: names(&["a1"]),
            kind: ConstraintKind::Closure,
        };
        assert!(brute_force_solutions(&bad, 3).unwrap().is_empty());
        let big = ConstraintSystem {
            polys: vec![],
            params: (0..17).map(|i| format!("a{i}")).collect(),
            kind: ConstraintKind::Closure,
        };
        assert!(brute_force_solutions(&big, 2).is_err());
        assert_eq!(emit_ideal(&empty), "# no constraints\n");
    }

    #[test]
    fn quadratic_varieties_rejected() {
        let v = builtin_variety("lie").unwrap();
        assert!(matches!(build_bracket_family(&v, q()), Err(Error::QuadraticIdentity(_))));
    }
}
