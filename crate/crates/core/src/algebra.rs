//! Finite-dimensional algebras given by structure constants, and the fixture catalog.

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exact_linalg::{ExactMatrix, FieldSpec, Scalar};
use crate::free_magma::{MagmaWord, MultilinearPoly};
use crate::text::{keyword, strip_comment, Cursor};
use crate::variety::VarietySpec;

/// eᵢ·eⱼ = Σₖ c[i][j][k] eₖ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub name: String,
    field: FieldSpec,
    labels: Vec<String>,
    table: Vec<Scalar>,
}

/// A subspace given by independent coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<Vec<Scalar>>,
}

/// A pair (L, R) = (f∗−, −∗f) of endomorphisms, as matrices acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiEndo {
    pub l: ExactMatrix,
    pub r: ExactMatrix,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, field: FieldSpec, v: &[Scalar]) -> Result<bool> {
        if self.basis.is_empty() {
            return Ok(v.iter().all(Scalar::is_zero));
        }
        let m = ExactMatrix::from_rows(field, self.ambient, self.basis.clone())?;
        Ok(m.span_membership(v)?.is_some())
    }
}

impl BiEndo {
    pub fn zero(field: FieldSpec, n: usize) -> Self {
        BiEndo {
            l: ExactMatrix::zeros(field, n, n),
            r: ExactMatrix::zeros(field, n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.l.rows()
    }

    pub fn field(&self) -> FieldSpec {
        self.l.field()
    }

    /// Coordinates (L row-major, then R row-major).
    pub fn to_vec(&self) -> Vec<Scalar> {
        let mut v = self.l.row_vecs().concat();
        v.extend(self.r.row_vecs().concat());
        v
    }

    pub fn from_vec(field: FieldSpec, n: usize, v: &[Scalar]) -> Result<Self> {
        if v.len() != 2 * n * n {
            return Err(Error::Dimension(format!("{} coordinates for dim {n}", v.len())));
        }
        let mk = |s: &[Scalar]| {
            ExactMatrix::from_rows(field, n, s.chunks(n.max(1)).map(<[Scalar]>::to_vec).collect())
        };
        if n == 0 {
            return Ok(Self::zero(field, 0));
        }
        Ok(BiEndo {
            l: mk(&v[..n * n])?,
            r: mk(&v[n * n..])?,
        })
    }

    pub fn add(&self, o: &BiEndo) -> Result<BiEndo> {
        Ok(BiEndo {
            l: self.l.add(&o.l)?,
            r: self.r.add(&o.r)?,
        })
    }

    pub fn scale(&self, s: &Scalar) -> BiEndo {
        BiEndo {
            l: self.l.scale(s),
            r: self.r.scale(s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.l.is_zero() && self.r.is_zero()
    }
}

impl Algebra {
    /// Zero multiplication on the given basis labels.
    pub fn zero(name: &str, field: FieldSpec, labels: Vec<String>) -> Self {
        let n = labels.len();
        Algebra {
            name: name.to_string(),
            field,
            labels,
            table: vec![field.zero(); n * n * n],
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, l: &str) -> Option<usize> {
        self.labels.iter().position(|x| x == l)
    }

    /// c[i][j][k].
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.dim();
        &self.table[(i * n + j) * n + k]
    }

    /// Coordinates of eᵢ·eⱼ.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim();
        &self.table[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: Vec<Scalar>) -> Result<()> {
        let n = self.dim();
        if v.len() != n {
            return Err(Error::Dimension(format!("product of length {} in dim {n}", v.len())));
        }
        for (k, s) in v.into_iter().enumerate() {
            self.table[(i * n + j) * n + k] = s;
        }
        Ok(())
    }

    fn set_int(&mut self, i: usize, j: usize, terms: &[(i64, usize)]) {
        let mut v = vec![self.field.zero(); self.dim()];
        for &(c, k) in terms {
            v[k] += &self.field.int(c);
        }
        self.set_product(i, j, v).expect("in range");
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.dim();
        if u.len() != n || v.len() != n {
            return Err(Error::Dimension(format!(
                "vectors of length {} and {} in dim {n}",
                u.len(),
                v.len()
            )));
        }
        let mut out = vec![self.field.zero(); n];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&ab * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Evaluates a word under an assignment of its leaves.
    pub fn eval_word(&self, w: &MagmaWord, env: &HashMap<&str, Vec<Scalar>>) -> Result<Vec<Scalar>> {
        match w {
            MagmaWord::Leaf(v) => env
                .get(v.as_str())
                .cloned()
                .ok_or_else(|| Error::UnknownVariable(v.clone())),
            MagmaWord::Node(a, b) => self.multiply(&self.eval_word(a, env)?, &self.eval_word(b, env)?),
        }
    }

    /// Value of a polynomial under an assignment.
    pub fn eval_poly(&self, p: &MultilinearPoly, env: &HashMap<&str, Vec<Scalar>>) -> Result<Vec<Scalar>> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (w, c) in p.terms() {
            for (k, x) in self.eval_word(w, env)?.iter().enumerate() {
                out[k] += &(c * x);
            }
        }
        Ok(out)
    }

    /// First basis tuple (indices, in variable order) on which `p` does not vanish.
    pub fn identity_failure(&self, p: &MultilinearPoly) -> Result<Option<Vec<usize>>> {
        let p = p.to_field(self.field)?;
        let vars: Vec<&str> = p.vars().iter().map(String::as_str).collect();
        let basis: Vec<Vec<Scalar>> = (0..self.dim()).map(|i| self.basis_vector(i)).collect();
        for tuple in (0..vars.len()).map(|_| 0..self.dim()).multi_cartesian_product() {
            let env: HashMap<&str, Vec<Scalar>> = vars
                .iter()
                .zip(&tuple)
                .map(|(v, &i)| (*v, basis[i].clone()))
                .collect();
            if !self.eval_poly(&p, &env)?.iter().all(Scalar::is_zero) {
                return Ok(Some(tuple));
            }
        }
        Ok(None)
    }

    /// True iff `p` vanishes on all basis tuples.
    pub fn check_identity(&self, p: &MultilinearPoly) -> Result<bool> {
        if p.degree() > 5 {
            return Err(Error::UnsupportedDegree(p.degree()));
        }
        Ok(self.identity_failure(p)?.is_none())
    }

    /// Fails with the first violated identity.
    pub fn require_variety(&self, v: &VarietySpec) -> Result<()> {
        for p in v.identities_in(self.field)? {
            if !self.check_identity(&p)? {
                return Err(Error::NotInVariety {
                    algebra: self.name.clone(),
                    identity: p.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn in_variety(&self, v: &VarietySpec) -> Result<bool> {
        match self.require_variety(v) {
            Ok(()) => Ok(true),
            Err(Error::NotInVariety { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Two-sided annihilator.
    pub fn annihilator(&self) -> Subspace {
        let n = self.dim();
        let mut rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.constant(i, j, k).clone()).collect());
                rows.push((0..n).map(|i| self.constant(j, i, k).clone()).collect());
            }
        }
        let m = ExactMatrix::from_rows(self.field, n, rows).expect("shape");
        Subspace {
            ambient: n,
            basis: m.nullspace(),
        }
    }

    /// Span of all products; it is closed under multiplication.
    pub fn product_subspace(&self) -> Subspace {
        let n = self.dim();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                rows.push(self.product(i, j).to_vec());
            }
        }
        let basis = ExactMatrix::from_rows(self.field, n, rows)
            .expect("shape")
            .row_basis()
            .row_vecs();
        Subspace { ambient: n, basis }
    }

    /// (L_x, R_x).
    pub fn mult_ops(&self, x: &[Scalar]) -> Result<BiEndo> {
        let n = self.dim();
        let mut l = ExactMatrix::zeros(self.field, n, n);
        let mut r = ExactMatrix::zeros(self.field, n, n);
        for i in 0..n {
            let e = self.basis_vector(i);
            let xl = self.multiply(x, &e)?;
            let xr = self.multiply(&e, x)?;
            for k in 0..n {
                l.set(k, i, xl[k].clone());
                r.set(k, i, xr[k].clone());
            }
        }
        Ok(BiEndo { l, r })
    }

    /// Renders in the algebra file grammar.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "algebra {} over {} dim {}\nbasis {}\n",
            self.name,
            self.field,
            self.dim(),
            self.labels.join(" ")
        );
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let p = self.product(i, j);
                if p.iter().all(Scalar::is_zero) {
                    continue;
                }
                s.push_str(&format!(
                    "{} * {} = {}\n",
                    self.labels[i],
                    self.labels[j],
                    combo_text(p, &self.labels)
                ));
            }
        }
        s
    }
}

/// Linear combination text over labels, `0` when empty.
pub fn combo_text(v: &[Scalar], labels: &[String]) -> String {
    let mut s = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = if neg { -c } else { c.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            s.push_str(&format!("{} ", mag.plain()));
        }
        s.push_str(&labels[k]);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Parses `TERM (("+"|"-") TERM)*`, `TERM := [COEF] LABEL`, or `0`, over the given labels.
pub(crate) fn parse_combo(
    c: &mut Cursor,
    field: FieldSpec,
    lookup: &dyn Fn(&str) -> Option<usize>,
    n: usize,
) -> Result<Vec<Scalar>> {
    let mut out = vec![field.zero(); n];
    let mut first = true;
    loop {
        let neg = if c.eat('-') {
            true
        } else {
            if !c.eat('+') && !first {
                return Err(c.err("expected '+' or '-'"));
            }
            false
        };
        let num = c.number();
        if first && !neg && num.as_deref() == Some("0") && c.at_end() {
            return Ok(out);
        }
        first = false;
        let mut coef = match num {
            Some(t) => field.parse_scalar(&t).map_err(|_| c.err(format!("'{t}' is not in {field}")))?,
            None => field.one(),
        };
        if neg {
            coef = -coef;
        }
        let label = c.ident()?;
        let k = lookup(&label).ok_or_else(|| c.err(format!("unknown label '{label}'")))?;
        out[k] += &coef;
        if c.at_end() {
            return Ok(out);
        }
    }
}

/// Parses `"over" (Q | F INT)` from a cursor.
pub(crate) fn parse_field(c: &mut Cursor) -> Result<FieldSpec> {
    let t = c.ident()?;
    if t == "Q" {
        return Ok(FieldSpec::rationals());
    }
    let digits = match t.strip_prefix('F') {
        Some("") => c.number().ok_or_else(|| c.err("expected a prime after F"))?,
        Some(d) => d.to_string(),
        None => return Err(c.err(format!("unknown field '{t}'"))),
    };
    let p: u64 = digits.parse().map_err(|_| c.err("bad prime"))?;
    FieldSpec::prime(p).map_err(|_| c.err(format!("{p} is not prime")))
}

/// Parses the algebra file grammar.
pub fn parse_algebra(text: &str) -> Result<Algebra> {
    let mut header: Option<(String, FieldSpec, usize)> = None;
    let mut alg: Option<Algebra> = None;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = strip_comment(raw);
        let Some((kw, rest, off)) = keyword(line) else {
            continue;
        };
        let mut c = Cursor::new(rest, ln, off);
        match kw {
            "algebra" => {
                let name = c.ident()?;
                if c.ident()? != "over" {
                    return Err(c.err("expected 'over'"));
                }
                let field = parse_field(&mut c)?;
                if c.ident()? != "dim" {
                    return Err(c.err("expected 'dim'"));
                }
                let n: usize = c
                    .number()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| c.err("expected dimension"))?;
                header = Some((name, field, n));
            }
            "basis" => {
                let (name, field, n) = header.clone().ok_or_else(|| c.err("'basis' before 'algebra'"))?;
                let mut labels = Vec::new();
                while !c.at_end() {
                    let l = c.ident()?;
                    if labels.contains(&l) {
                        return Err(c.err(format!("duplicate label '{l}'")));
                    }
                    labels.push(l);
                }
                if labels.len() != n {
                    return Err(c.err(format!("{} labels for dim {n}", labels.len())));
                }
                alg = Some(Algebra::zero(&name, field, labels));
            }
            _ => {
                let a = alg.as_mut().ok_or(Error::Parse {
                    line: ln,
                    col: 1,
                    msg: "product line before 'basis'".into(),
                })?;
                let mut c = Cursor::new(line, ln, 0);
                let li = c.ident()?;
                let i = a.label_index(&li).ok_or_else(|| c.err(format!("unknown label '{li}'")))?;
                c.expect('*')?;
                let lj = c.ident()?;
                let j = a.label_index(&lj).ok_or_else(|| c.err(format!("unknown label '{lj}'")))?;
                c.expect('=')?;
                let labels = a.labels.clone();
                let v = parse_combo(&mut c, a.field, &|s| labels.iter().position(|x| x == s), a.dim())?;
                a.set_product(i, j, v)?;
            }
        }
    }
    alg.ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "missing 'algebra' or 'basis' line".into(),
    })
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Zero multiplication in dimension n.
pub fn abelian(n: usize, field: FieldSpec) -> Algebra {
    Algebra::zero(&format!("abelian{n}"), field, labels("e", n))
}

/// Split octonions' compact form: e1 is the unit, eᵢeⱼ = −δᵢⱼe1 + εᵢⱼₖeₖ on the imaginary units.
pub fn octonions() -> Algebra {
    let f = FieldSpec::rationals();
    let mut a = Algebra::zero("octonions", f, labels("e", 8));
    for i in 0..8 {
        a.set_int(0, i, &[(1, i)]);
        a.set_int(i, 0, &[(1, i)]);
    }
    for i in 1..8 {
        a.set_int(i, i, &[(-1, 0)]);
    }
    let triples = [(1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5)];
    for (x, y, z) in triples {
        for (p, q, r) in [(x, y, z), (y, z, x), (z, x, y)] {
            a.set_int(p, q, &[(1, r)]);
            a.set_int(q, p, &[(-1, r)]);
        }
    }
    a
}

/// Heisenberg algebra of dimension 2n+1: eᵢfⱼ = −fⱼeᵢ = δᵢⱼh.
pub fn heisenberg(n: usize, field: FieldSpec) -> Algebra {
    let mut ls = labels("e", n);
    ls.extend(labels("f", n));
    ls.push("h".into());
    let mut a = Algebra::zero(&format!("heisenberg{}", 2 * n + 1), field, ls);
    for i in 0..n {
        a.set_int(i, n + i, &[(1, 2 * n)]);
        a.set_int(n + i, i, &[(-1, 2 * n)]);
    }
    a
}

/// e1e2 = e2e1 = e3.
pub fn kronecker(field: FieldSpec) -> Algebra {
    let mut a = Algebra::zero("kronecker", field, labels("e", 3));
    a.set_int(0, 1, &[(1, 2)]);
    a.set_int(1, 0, &[(1, 2)]);
    a
}

/// Seven-dimensional anticommutative algebra over F3.
pub fn engel7_f3() -> Algebra {
    let f = FieldSpec::prime(3).expect("3 is prime");
    let mut a = Algebra::zero("engel7_f3", f, labels("e", 7));
    let rules = [(0, 1, 1, 3), (0, 2, -1, 5), (1, 2, 1, 4), (0, 4, 1, 6), (1, 5, 1, 6), (2, 3, 1, 6)];
    for (i, j, c, k) in rules {
        a.set_int(i, j, &[(c, k)]);
        a.set_int(j, i, &[(-c, k)]);
    }
    a
}

/// e1² = e1e2 = e2e1 = e2² = e2 over F3.
pub fn jj2_f3() -> Algebra {
    let f = FieldSpec::prime(3).expect("3 is prime");
    let mut a = Algebra::zero("jj2_f3", f, labels("e", 2));
    for i in 0..2 {
        for j in 0..2 {
            a.set_int(i, j, &[(1, 1)]);
        }
    }
    a
}

/// sl2 on (e, h, f).
pub fn sl2(field: FieldSpec) -> Algebra {
    let mut a = Algebra::zero("sl2", field, vec!["e".into(), "h".into(), "f".into()]);
    let (e, h, f) = (0, 1, 2);
    a.set_int(h, e, &[(2, e)]);
    a.set_int(e, h, &[(-2, e)]);
    a.set_int(h, f, &[(-2, f)]);
    a.set_int(f, h, &[(2, f)]);
    a.set_int(e, f, &[(1, h)]);
    a.set_int(f, e, &[(-1, h)]);
    a
}

/// 2×2 matrices on (e11, e12, e21, e22).
pub fn mat2(field: FieldSpec) -> Algebra {
    let ls: Vec<String> = ["e11", "e12", "e21", "e22"].iter().map(|s| s.to_string()).collect();
    let mut a = Algebra::zero("mat2", field, ls);
    let idx = |i: usize, j: usize| 2 * i + j;
    for (i, j, k, l) in (0..4).map(|_| 0..2).multi_cartesian_product().map(|v| (v[0], v[1], v[2], v[3])) {
        if j == k {
            a.set_int(idx(i, j), idx(k, l), &[(1, idx(i, l))]);
        }
    }
    a
}

/// F[t]/(t²) on (u, t) with u the unit.
pub fn dual_numbers(field: FieldSpec) -> Algebra {
    let mut a = Algebra::zero("dual_numbers", field, vec!["u".into(), "t".into()]);
    a.set_int(0, 0, &[(1, 0)]);
    a.set_int(0, 1, &[(1, 1)]);
    a.set_int(1, 0, &[(1, 1)]);
    a
}

/// Non-Lie Leibniz algebra e1e1 = e2.
pub fn leibniz2(field: FieldSpec) -> Algebra {
    let mut a = Algebra::zero("leibniz2", field, labels("e", 2));
    a.set_int(0, 0, &[(1, 1)]);
    a
}

/// Fixture names with a short description.
pub fn fixture_catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        ("octonions", "8-dim alternative division algebra over Q, e1 the unit"),
        ("heisenberg3", "3-dim Heisenberg algebra e1f1 = -f1e1 = h over Q"),
        ("heisenberg5", "5-dim Heisenberg algebra over Q"),
        ("kronecker", "e1e2 = e2e1 = e3 over Q"),
        ("engel7_f3", "7-dim anticommutative Lie algebra over F3 with e1(e2e3) = e7"),
        ("jj2_f3", "2-dim commutative associative Jacobi-Jordan algebra over F3"),
        ("sl2", "sl2 on (e, h, f) over Q"),
        ("mat2", "2x2 matrices over Q"),
        ("dual_numbers", "F[t]/(t^2) over Q"),
        ("leibniz2", "e1e1 = e2 over Q, Leibniz but not Lie"),
        ("abelian<n>", "zero multiplication in dimension n over Q (e.g. abelian2)"),
    ]
}

/// Looks up a fixture by name; `abelian<n>`, `abelian(n)`, `heisenberg<2n+1>` are generated.
pub fn fixture(name: &str) -> Option<Algebra> {
    let q = FieldSpec::rationals();
    let key: String = name.trim().chars().filter(|c| *c != '(' && *c != ')').collect();
    match key.as_str() {
        "octonions" => Some(octonions()),
        "kronecker" => Some(kronecker(q)),
        "engel7_f3" => Some(engel7_f3()),
        "jj2_f3" => Some(jj2_f3()),
        "sl2" => Some(sl2(q)),
        "mat2" => Some(mat2(q)),
        "dual_numbers" => Some(dual_numbers(q)),
        "leibniz2" => Some(leibniz2(q)),
        _ => {
            if let Some(n) = key.strip_prefix("abelian").and_then(|d| d.parse().ok()) {
                return Some(abelian(n, q));
            }
            let d: usize = key.strip_prefix("heisenberg")?.parse().ok()?;
            (d % 2 == 1 && d >= 3).then(|| heisenberg((d - 1) / 2, q))
        }
    }
}
