//! Non-associative words, multilinear polynomials and the canonical monomial orderings.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exact_linalg::{FieldSpec, Scalar};
use crate::text::Cursor;

/// A parenthesized non-associative word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum MagmaWord {
    Leaf(String),
    Node(Box<MagmaWord>, Box<MagmaWord>),
}

/// Side for border multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

pub fn valid_variable(name: &str) -> bool {
    let mut cs = name.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase())
        && cs.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
}

impl MagmaWord {
    pub fn leaf(name: &str) -> Self {
        MagmaWord::Leaf(name.to_string())
    }

    pub fn node(a: MagmaWord, b: MagmaWord) -> Self {
        MagmaWord::Node(Box::new(a), Box::new(b))
    }

    pub fn degree(&self) -> usize {
        match self {
            MagmaWord::Leaf(_) => 1,
            MagmaWord::Node(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, MagmaWord::Leaf(_))
    }

    /// Leaf names from left to right.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            MagmaWord::Leaf(v) => out.push(v),
            MagmaWord::Node(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    /// True when each of `vars` occurs exactly once and nothing else occurs.
    pub fn is_multilinear_over(&self, vars: &[String]) -> bool {
        let mut ls = self.leaves();
        if ls.len() != vars.len() {
            return false;
        }
        ls.sort_unstable();
        let mut vs: Vec<&str> = vars.iter().map(String::as_str).collect();
        vs.sort_unstable();
        ls == vs
    }

    /// Simultaneous replacement of leaves by words.
    pub fn substitute(&self, map: &HashMap<String, MagmaWord>) -> MagmaWord {
        match self {
            MagmaWord::Leaf(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            MagmaWord::Node(a, b) => MagmaWord::node(a.substitute(map), b.substitute(map)),
        }
    }

    /// Simultaneous renaming of leaves.
    pub fn rename(&self, map: &HashMap<&str, &str>) -> MagmaWord {
        match self {
            MagmaWord::Leaf(v) => MagmaWord::Leaf(map.get(v.as_str()).unwrap_or(&v.as_str()).to_string()),
            MagmaWord::Node(a, b) => MagmaWord::node(a.rename(map), b.rename(map)),
        }
    }

    /// Parses `variable | '(' word '*' word ')'`.
    pub fn parse(s: &str) -> Result<MagmaWord> {
        let mut c = Cursor::new(s, 1, 0);
        let w = parse_word(&mut c)?;
        if !c.at_end() {
            return Err(c.err("trailing input after word"));
        }
        Ok(w)
    }

    /// Parses the juxtaposition shorthand with single-letter variables, e.g. `f(xy)` or `(xy)z`.
    pub fn compact(s: &str) -> Result<MagmaWord> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let w = compact_seq(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Parse {
                line: 1,
                col: pos + 1,
                msg: "unbalanced parentheses".into(),
            });
        }
        Ok(w)
    }

    /// Juxtaposition rendering with the outermost parentheses dropped.
    pub fn to_compact(&self) -> String {
        match self {
            MagmaWord::Leaf(v) => v.clone(),
            MagmaWord::Node(a, b) => format!("{}{}", a.compact_inner(), b.compact_inner()),
        }
    }

    fn compact_inner(&self) -> String {
        match self {
            MagmaWord::Leaf(v) => v.clone(),
            MagmaWord::Node(..) => format!("({})", self.to_compact()),
        }
    }
}

fn compact_seq(chars: &[char], pos: &mut usize) -> Result<MagmaWord> {
    let mut acc = compact_atom(chars, pos)?;
    while *pos < chars.len() && chars[*pos] != ')' {
        let b = compact_atom(chars, pos)?;
        acc = MagmaWord::node(acc, b);
    }
    Ok(acc)
}

fn compact_atom(chars: &[char], pos: &mut usize) -> Result<MagmaWord> {
    let err = |p: usize, m: &str| Error::Parse {
        line: 1,
        col: p + 1,
        msg: m.into(),
    };
    match chars.get(*pos) {
        Some('(') => {
            *pos += 1;
            let w = compact_seq(chars, pos)?;
            if chars.get(*pos) != Some(&')') {
                return Err(err(*pos, "expected ')'"));
            }
            *pos += 1;
            Ok(w)
        }
        Some(c) if c.is_ascii_lowercase() => {
            *pos += 1;
            Ok(MagmaWord::Leaf(c.to_string()))
        }
        _ => Err(err(*pos, "expected a variable or '('")),
    }
}

pub(crate) fn parse_word(c: &mut Cursor) -> Result<MagmaWord> {
    if c.eat('(') {
        let a = parse_word(c)?;
        c.expect('*')?;
        let b = parse_word(c)?;
        c.expect(')')?;
        Ok(MagmaWord::node(a, b))
    } else {
        let name = c.ident()?;
        if !valid_variable(&name) {
            return Err(c.err(format!("invalid variable name '{name}'")));
        }
        Ok(MagmaWord::Leaf(name))
    }
}

impl fmt::Display for MagmaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MagmaWord::Leaf(v) => write!(f, "{v}"),
            MagmaWord::Node(a, b) => write!(f, "({a}*{b})"),
        }
    }
}

/// Linear combination of multilinear words over a fixed variable list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultilinearPoly {
    vars: Vec<String>,
    field: FieldSpec,
    terms: BTreeMap<MagmaWord, Scalar>,
}

impl MultilinearPoly {
    pub fn zero(vars: Vec<String>, field: FieldSpec) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if !valid_variable(v) {
                return Err(Error::UnknownVariable(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(Error::VariableCollision(v.clone()));
            }
        }
        if vars.is_empty() {
            return Err(Error::UnsupportedDegree(0));
        }
        Ok(MultilinearPoly {
            vars,
            field,
            terms: BTreeMap::new(),
        })
    }

    pub fn from_terms(
        vars: Vec<String>,
        field: FieldSpec,
        terms: impl IntoIterator<Item = (MagmaWord, Scalar)>,
    ) -> Result<Self> {
        let mut p = Self::zero(vars, field)?;
        for (w, c) in terms {
            p.add_term(w, c)?;
        }
        Ok(p)
    }

    /// Single monomial with coefficient one; variables in leaf order.
    pub fn monomial(w: MagmaWord, field: FieldSpec) -> Result<Self> {
        let vars = w.leaves().iter().map(|s| s.to_string()).collect();
        Self::from_terms(vars, field, [(w, field.one())])
    }

    pub fn add_term(&mut self, w: MagmaWord, c: Scalar) -> Result<()> {
        if !w.is_multilinear_over(&self.vars) {
            return Err(Error::NotMultilinear(w.to_string()));
        }
        if c.field() != self.field {
            return Err(Error::FieldMismatch(format!("{} in {}", c.field(), self.field)));
        }
        let e = self.terms.entry(w).or_insert_with(|| self.field.zero());
        *e += &c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<MagmaWord, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, w: &MagmaWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_vars(&self, o: &Self) -> Result<()> {
        let mut a = self.vars.clone();
        let mut b = o.vars.clone();
        a.sort();
        b.sort();
        if a != b {
            return Err(Error::Dimension(format!(
                "variables {:?} vs {:?}",
                self.vars, o.vars
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_vars(o)?;
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .map(|(w, c)| (w.clone(), c * s))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        out
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-self.field.one()))
    }

    /// Coefficients mapped into another field.
    pub fn to_field(&self, field: FieldSpec) -> Result<Self> {
        if field == self.field {
            return Ok(self.clone());
        }
        let q = self.field;
        let terms = self
            .terms
            .iter()
            .map(|(w, c)| {
                let r = c.as_rational().ok_or_else(|| {
                    Error::FieldMismatch(format!("cannot move {q} coefficients into {field}"))
                })?;
                Ok((w.clone(), field.rational(r)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(self.vars.clone(), field, terms)
    }

    /// Replaces the variable `v` by the word `w`; `w`'s leaves join the variable list in `v`'s place.
    pub fn substitute(&self, v: &str, w: &MagmaWord) -> Result<Self> {
        let pos = self
            .vars
            .iter()
            .position(|x| x == v)
            .ok_or_else(|| Error::UnknownVariable(v.to_string()))?;
        let mut vars: Vec<String> = Vec::new();
        for (i, x) in self.vars.iter().enumerate() {
            if i == pos {
                vars.extend(w.leaves().iter().map(|s| s.to_string()));
            } else {
                vars.push(x.clone());
            }
        }
        for l in w.leaves() {
            if self.vars.iter().enumerate().any(|(i, x)| i != pos && x == l) {
                return Err(Error::VariableCollision(l.to_string()));
            }
        }
        let map = HashMap::from([(v.to_string(), w.clone())]);
        Self::from_terms(
            vars,
            self.field,
            self.terms.iter().map(|(m, c)| (m.substitute(&map), c.clone())),
        )
    }

    /// Positional renaming of the variable list.
    pub fn relabel(&self, new_vars: &[String]) -> Result<Self> {
        if new_vars.len() != self.vars.len() {
            return Err(Error::Dimension(format!(
                "{} names for {} variables",
                new_vars.len(),
                self.vars.len()
            )));
        }
        let map: HashMap<&str, &str> = self
            .vars
            .iter()
            .map(String::as_str)
            .zip(new_vars.iter().map(String::as_str))
            .collect();
        Self::from_terms(
            new_vars.to_vec(),
            self.field,
            self.terms.iter().map(|(m, c)| (m.rename(&map), c.clone())),
        )
    }

    /// Each monomial `m` becomes `w·m` (left) or `m·w` (right).
    pub fn border_multiply(&self, w: &str, side: Side) -> Result<Self> {
        if self.vars.iter().any(|x| x == w) {
            return Err(Error::VariableCollision(w.to_string()));
        }
        let mut vars = self.vars.clone();
        match side {
            Side::Left => vars.insert(0, w.to_string()),
            Side::Right => vars.push(w.to_string()),
        }
        let leaf = MagmaWord::leaf(w);
        Self::from_terms(
            vars,
            self.field,
            self.terms.iter().map(|(m, c)| {
                let nm = match side {
                    Side::Left => MagmaWord::node(leaf.clone(), m.clone()),
                    Side::Right => MagmaWord::node(m.clone(), leaf.clone()),
                };
                (nm, c.clone())
            }),
        )
    }

    /// Relabels leaf `vars[i]` as `vars[sigma[i]]`.
    pub fn permute_vars(&self, sigma: &[usize]) -> Result<Self> {
        let n = self.vars.len();
        let mut seen = vec![false; n];
        if sigma.len() != n {
            return Err(Error::Dimension(format!("permutation of length {}", sigma.len())));
        }
        for &s in sigma {
            if s >= n || seen[s] {
                return Err(Error::Dimension("not a permutation".into()));
            }
            seen[s] = true;
        }
        let map: HashMap<&str, &str> = (0..n)
            .map(|i| (self.vars[i].as_str(), self.vars[sigma[i]].as_str()))
            .collect();
        Self::from_terms(
            self.vars.clone(),
            self.field,
            self.terms.iter().map(|(m, c)| (m.rename(&map), c.clone())),
        )
    }

    /// Coefficient vector in the ordering's column order.
    pub fn to_row(&self, ord: &MonomialOrdering) -> Result<Vec<Scalar>> {
        let mut row = vec![self.field.zero(); ord.len()];
        for (w, c) in &self.terms {
            let i = ord
                .index_of(w)
                .ok_or_else(|| Error::NotMultilinear(format!("{w} not over {:?}", ord.vars)))?;
            row[i] = c.clone();
        }
        Ok(row)
    }

    pub fn from_row(row: &[Scalar], ord: &MonomialOrdering, field: FieldSpec) -> Result<Self> {
        if row.len() != ord.len() {
            return Err(Error::Dimension(format!(
                "row of length {} for {} monomials",
                row.len(),
                ord.len()
            )));
        }
        Self::from_terms(
            ord.vars.clone(),
            field,
            ord.words
                .iter()
                .zip(row)
                .filter(|(_, c)| !c.is_zero())
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }
}

impl fmt::Display for MultilinearPoly {
    /// Renders in the identity grammar, e.g. `((x*y)*z) - 2 (x*(y*z))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{} ", mag.plain())?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// All multilinear words on a variable list, in canonical column order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrdering {
    vars: Vec<String>,
    words: Vec<MagmaWord>,
    index: HashMap<MagmaWord, usize>,
}

/// The degree-3 column order on variables (f, x, y), written in juxtaposition form.
pub const DEGREE3_ORDER: [&str; 12] = [
    "f(xy)", "f(yx)", "(xy)f", "(yx)f", "(fy)x", "(fx)y", "(yf)x", "(xf)y", "x(fy)", "y(fx)",
    "x(yf)", "y(xf)",
];

pub const MAX_DEGREE: usize = 5;

impl MonomialOrdering {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn words(&self) -> &[MagmaWord] {
        &self.words
    }

    pub fn index_of(&self, w: &MagmaWord) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// Tree shapes with `n` leaves: larger left subtrees first, so the left comb leads.
fn shapes(n: usize) -> Vec<MagmaWord> {
    if n == 1 {
        return vec![MagmaWord::leaf("_")];
    }
    let mut out = Vec::new();
    for k in (1..n).rev() {
        for a in shapes(k) {
            for b in shapes(n - k) {
                out.push(MagmaWord::node(a.clone(), b));
            }
        }
    }
    out
}

fn fill(shape: &MagmaWord, labels: &mut impl Iterator<Item = String>) -> MagmaWord {
    match shape {
        MagmaWord::Leaf(_) => MagmaWord::Leaf(labels.next().expect("enough labels")),
        MagmaWord::Node(a, b) => {
            let l = fill(a, labels);
            let r = fill(b, labels);
            MagmaWord::node(l, r)
        }
    }
}

/// Every multilinear word on `vars`, each once, in canonical order.
///
/// Degree 3 uses the fixed column order of [`DEGREE3_ORDER`] with `vars` standing for
/// (f, x, y) positionally; other degrees list shapes (left comb first) and, for each
/// shape, leaf labelings in lexicographic order of variable positions.
pub fn enumerate_multilinear(vars: &[String]) -> Result<MonomialOrdering> {
    let n = vars.len();
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(n));
    }
    let words: Vec<MagmaWord> = if n == 3 {
        let map: HashMap<&str, &str> = [("f", 0), ("x", 1), ("y", 2)]
            .into_iter()
            .map(|(k, i)| (k, vars[i].as_str()))
            .collect();
        DEGREE3_ORDER
            .iter()
            .map(|s| MagmaWord::compact(s).expect("static word").rename(&map))
            .collect()
    } else {
        let mut out = Vec::new();
        for shape in shapes(n) {
            for perm in vars.iter().cloned().permutations(n) {
                out.push(fill(&shape, &mut perm.into_iter()));
            }
        }
        out
    };
    let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    Ok(MonomialOrdering {
        vars: vars.to_vec(),
        words,
        index,
    })
}

/// Owned variable names from string slices.
pub fn names(vs: &[&str]) -> Vec<String> {
    vs.iter().map(|s| s.to_string()).collect()
}
