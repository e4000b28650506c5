//! Reference computations written independently of the library, for cross-checking.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use actorkit::algebra::{Algebra, BiEndo};
use actorkit::exact_linalg::{FieldSpec, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// A field: `p == 0` is Q, otherwise F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fld {
    pub p: u64,
}

/// An element of a [`Fld`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum K {
    Q(BigRational),
    P(u64, u64),
}

impl Fld {
    pub const Q: Fld = Fld { p: 0 };

    pub fn fp(p: u64) -> Fld {
        Fld { p }
    }

    pub fn int(&self, n: i64) -> K {
        if self.p == 0 {
            K::Q(BigRational::from_integer(BigInt::from(n)))
        } else {
            K::P(n.rem_euclid(self.p as i64) as u64, self.p)
        }
    }

    pub fn zero(&self) -> K {
        self.int(0)
    }

    pub fn one(&self) -> K {
        self.int(1)
    }

    pub fn of_lib(f: FieldSpec) -> Fld {
        Fld { p: f.characteristic() }
    }

    pub fn lib(&self) -> FieldSpec {
        if self.p == 0 {
            FieldSpec::rationals()
        } else {
            FieldSpec::prime(self.p).expect("prime")
        }
    }

    pub fn from_scalar(&self, s: &Scalar) -> K {
        match s.as_rational() {
            Some(q) => {
                assert_eq!(self.p, 0, "field mismatch");
                K::Q(q.clone())
            }
            None => self.int(s.to_i64().expect("residue")),
        }
    }

    pub fn to_scalar(&self, k: &K) -> Scalar {
        let f = self.lib();
        match k {
            K::Q(q) => f.rational(q).expect("rational"),
            K::P(v, _) => f.int(*v as i64),
        }
    }
}

impl K {
    pub fn is_zero(&self) -> bool {
        match self {
            K::Q(q) => q.is_zero(),
            K::P(v, _) => *v == 0,
        }
    }

    pub fn add(&self, o: &K) -> K {
        match (self, o) {
            (K::Q(a), K::Q(b)) => K::Q(a + b),
            (K::P(a, p), K::P(b, _)) => K::P((a + b) % p, *p),
            _ => panic!("field mismatch"),
        }
    }

    pub fn neg(&self) -> K {
        match self {
            K::Q(a) => K::Q(-a),
            K::P(a, p) => K::P((p - a) % p, *p),
        }
    }

    pub fn sub(&self, o: &K) -> K {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &K) -> K {
        match (self, o) {
            (K::Q(a), K::Q(b)) => K::Q(a * b),
            (K::P(a, p), K::P(b, _)) => K::P(((*a as u128 * *b as u128) % *p as u128) as u64, *p),
            _ => panic!("field mismatch"),
        }
    }

    pub fn inv(&self) -> K {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            K::Q(a) => K::Q(a.recip()),
            K::P(a, p) => {
                // Fermat
                let mut r: u128 = 1;
                let mut b = *a as u128;
                let m = *p as u128;
                let mut e = p - 2;
                while e > 0 {
                    if e & 1 == 1 {
                        r = r * b % m;
                    }
                    b = b * b % m;
                    e >>= 1;
                }
                K::P(r as u64, *p)
            }
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            K::Q(q) if q.is_integer() => q.numer().to_i64(),
            K::Q(_) => None,
            K::P(v, _) => Some(*v as i64),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, K::Q(q) if q.is_negative())
    }
}

pub fn ints(f: Fld, v: &[i64]) -> Vec<K> {
    v.iter().map(|&x| f.int(x)).collect()
}

// ---------- linear algebra ----------

/// Incremental Gauss-Jordan basis of a row space.
pub struct Echelon {
    pub f: Fld,
    pub cols: usize,
    pub rows: Vec<Vec<K>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(f: Fld, cols: usize) -> Self {
        Echelon { f, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Reduces `v` against the current basis.
    pub fn reduce(&self, v: &[K]) -> Vec<K> {
        let mut v = v.to_vec();
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            if !v[c].is_zero() {
                let s = v[c].clone();
                for j in 0..self.cols {
                    if !r[j].is_zero() {
                        v[j] = v[j].sub(&s.mul(&r[j]));
                    }
                }
            }
        }
        v
    }

    /// Adds a row; returns whether the rank grew.
    pub fn push(&mut self, v: &[K]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut v = self.reduce(v);
        let Some(c) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[c].inv();
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        for r in self.rows.iter_mut() {
            if !r[c].is_zero() {
                let s = r[c].clone();
                for j in 0..self.cols {
                    if !v[j].is_zero() {
                        r[j] = r[j].sub(&s.mul(&v[j]));
                    }
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(c);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: &[K]) -> bool {
        self.reduce(v).iter().all(K::is_zero)
    }

    /// Rows sorted by pivot column: the reduced row echelon form.
    pub fn rref(&self) -> Vec<Vec<K>> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        idx.into_iter().map(|i| self.rows[i].clone()).collect()
    }

    /// A basis of the solutions of `row · x = 0` for every row.
    pub fn kernel(&self) -> Vec<Vec<K>> {
        let pivots: BTreeSet<usize> = self.pivots.iter().copied().collect();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.f.zero(); self.cols];
            v[free] = self.f.one();
            for (r, &c) in self.rows.iter().zip(&self.pivots) {
                v[c] = r[free].neg();
            }
            out.push(v);
        }
        out
    }
}

pub fn echelon(f: Fld, cols: usize, rows: &[Vec<K>]) -> Echelon {
    let mut e = Echelon::new(f, cols);
    for r in rows {
        e.push(r);
    }
    e
}

pub fn rank(f: Fld, cols: usize, rows: &[Vec<K>]) -> usize {
    echelon(f, cols, rows).rank()
}

pub fn same_span(f: Fld, cols: usize, a: &[Vec<K>], b: &[Vec<K>]) -> bool {
    let ea = echelon(f, cols, a);
    let eb = echelon(f, cols, b);
    ea.rank() == eb.rank() && b.iter().all(|v| ea.contains(v))
}

// ---------- words and identities ----------

/// A nonassociative word on single-letter variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum T {
    V(char),
    M(Box<T>, Box<T>),
}

pub fn m(a: T, b: T) -> T {
    T::M(Box::new(a), Box::new(b))
}

impl T {
    pub fn vars(&self) -> Vec<char> {
        match self {
            T::V(c) => vec![*c],
            T::M(a, b) => {
                let mut v = a.vars();
                v.extend(b.vars());
                v
            }
        }
    }

    pub fn rename(&self, map: &HashMap<char, char>) -> T {
        match self {
            T::V(c) => T::V(*map.get(c).unwrap_or(c)),
            T::M(a, b) => m(a.rename(map), b.rename(map)),
        }
    }

    pub fn subst(&self, c: char, w: &T) -> T {
        match self {
            T::V(d) if *d == c => w.clone(),
            T::V(_) => self.clone(),
            T::M(a, b) => m(a.subst(c, w), b.subst(c, w)),
        }
    }
}

fn parse_seq(s: &[char], pos: &mut usize) -> T {
    let mut acc: Option<T> = None;
    while *pos < s.len() && s[*pos] != ')' {
        let factor = if s[*pos] == '(' {
            *pos += 1;
            let t = parse_seq(s, pos);
            assert_eq!(s[*pos], ')');
            *pos += 1;
            t
        } else {
            let c = s[*pos];
            assert!(c.is_ascii_alphabetic(), "bad letter {c}");
            *pos += 1;
            T::V(c)
        };
        acc = Some(match acc {
            None => factor,
            Some(a) => m(a, factor),
        });
    }
    acc.expect("empty word")
}

/// Parses juxtaposition notation such as `(fx)y` or `g(f(xy))`.
pub fn word(s: &str) -> T {
    let cs: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let t = parse_seq(&cs, &mut pos);
    assert_eq!(pos, cs.len(), "trailing input in {s}");
    t
}

/// Integer combination of words.
pub type Poly = Vec<(i64, T)>;

/// Parses `2(xy)z - x(yz) + ...`.
pub fn poly(s: &str) -> Poly {
    let cs: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let mut sign = 1;
        if cs[i] == '+' || cs[i] == '-' {
            if cs[i] == '-' {
                sign = -1;
            }
            i += 1;
        }
        let mut n = 0i64;
        let mut has_n = false;
        while i < cs.len() && cs[i].is_ascii_digit() {
            n = n * 10 + cs[i].to_digit(10).unwrap() as i64;
            has_n = true;
            i += 1;
        }
        let start = i;
        while i < cs.len() && cs[i] != '+' && cs[i] != '-' {
            i += 1;
        }
        let w: String = cs[start..i].iter().collect();
        out.push((sign * if has_n { n } else { 1 }, word(&w)));
    }
    out
}

pub fn poly_vars(p: &Poly) -> Vec<char> {
    let set: BTreeSet<char> = p.iter().flat_map(|(_, t)| t.vars()).collect();
    set.into_iter().collect()
}

pub fn rename_poly(p: &Poly, map: &HashMap<char, char>) -> Poly {
    p.iter().map(|(c, t)| (*c, t.rename(map))).collect()
}

/// All multilinear words on the given letters.
pub fn all_words(vars: &[char]) -> Vec<T> {
    fn shapes(vs: &[char]) -> Vec<T> {
        if vs.len() == 1 {
            return vec![T::V(vs[0])];
        }
        let mut out = Vec::new();
        for k in 1..vs.len() {
            for a in shapes(&vs[..k]) {
                for b in shapes(&vs[k..]) {
                    out.push(m(a.clone(), b));
                }
            }
        }
        out
    }
    let mut out = Vec::new();
    for perm in permutations(vars) {
        out.extend(shapes(&perm));
    }
    out
}

pub fn permutations(vs: &[char]) -> Vec<Vec<char>> {
    if vs.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..vs.len() {
        let mut rest = vs.to_vec();
        let c = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, c);
            out.push(p);
        }
    }
    out
}

/// Coefficient vector of a polynomial over a word list.
pub fn to_row(f: Fld, p: &Poly, cols: &[T]) -> Vec<K> {
    let mut row = vec![f.zero(); cols.len()];
    for (c, t) in p {
        let j = cols.iter().position(|w| w == t).unwrap_or_else(|| panic!("{t:?} not a column"));
        row[j] = row[j].add(&f.int(*c));
    }
    row
}

/// Every renaming of a degree-3 polynomial onto (f, x, y).
pub fn orbit_fxy(p: &Poly) -> Vec<Poly> {
    let vs = poly_vars(p);
    assert_eq!(vs.len(), 3);
    permutations(&['f', 'x', 'y'])
        .into_iter()
        .map(|img| {
            let map: HashMap<char, char> = vs.iter().copied().zip(img).collect();
            rename_poly(p, &map)
        })
        .collect()
}

/// Degree-3 identity rows for the given identities (degree-2 ones are lifted).
pub fn m3_rows(f: Fld, ids: &[Poly], cols: &[T]) -> Vec<Vec<K>> {
    let mut rows = Vec::new();
    for p in ids {
        let vs = poly_vars(p);
        let lifted: Vec<Poly> = if vs.len() == 3 {
            vec![p.clone()]
        } else {
            assert_eq!(vs.len(), 2);
            let (a, b) = (vs[0], vs[1]);
            let z = T::V('z');
            let mut out: Vec<Poly> = vec![
                p.iter().map(|(c, t)| (*c, m(t.clone(), z.clone()))).collect(),
                p.iter().map(|(c, t)| (*c, m(z.clone(), t.clone()))).collect(),
            ];
            for v in [a, b] {
                for w in [m(T::V(v), z.clone()), m(z.clone(), T::V(v))] {
                    out.push(p.iter().map(|(c, t)| (*c, t.subst(v, &w))).collect());
                }
            }
            out
        };
        for q in lifted {
            for r in orbit_fxy(&q) {
                rows.push(to_row(f, &r, cols));
            }
        }
    }
    rows
}

/// The degree-3 columns on (f, x, y), in the library's documented order.
pub fn degree3_columns() -> Vec<T> {
    [
        "f(xy)", "f(yx)", "(xy)f", "(yx)f", "(fy)x", "(fx)y", "(yf)x", "(xf)y", "x(fy)", "y(fx)", "x(yf)", "y(xf)",
    ]
    .iter()
    .map(|s| word(s))
    .collect()
}

// ---------- structure tables ----------

/// Structure constants c[(i*n+j)*n+k].
#[derive(Clone, Debug)]
pub struct Table {
    pub f: Fld,
    pub n: usize,
    pub c: Vec<K>,
}

impl Table {
    pub fn new(f: Fld, n: usize) -> Self {
        Table { f, n, c: vec![f.zero(); n * n * n] }
    }

    pub fn from_lib(a: &Algebra) -> Self {
        let f = Fld::of_lib(a.field());
        let n = a.dim();
        let mut t = Table::new(f, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    t.c[(i * n + j) * n + k] = f.from_scalar(a.constant(i, j, k));
                }
            }
        }
        t
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: i64) {
        let n = self.n;
        self.c[(i * n + j) * n + k] = self.f.int(v);
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &K {
        &self.c[(i * self.n + j) * self.n + k]
    }

    pub fn basis(&self, i: usize) -> Vec<K> {
        (0..self.n).map(|k| if k == i { self.f.one() } else { self.f.zero() }).collect()
    }

    pub fn mul(&self, a: &[K], b: &[K]) -> Vec<K> {
        let n = self.n;
        let mut out = vec![self.f.zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let s = a[i].mul(&b[j]);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        *o = o.add(&s.mul(c));
                    }
                }
            }
        }
        out
    }

    pub fn eval(&self, t: &T, env: &HashMap<char, Vec<K>>) -> Vec<K> {
        match t {
            T::V(c) => env[c].clone(),
            T::M(a, b) => self.mul(&self.eval(a, env), &self.eval(b, env)),
        }
    }

    pub fn eval_poly(&self, p: &Poly, env: &HashMap<char, Vec<K>>) -> Vec<K> {
        let mut out = vec![self.f.zero(); self.n];
        for (c, t) in p {
            let v = self.eval(t, env);
            let c = self.f.int(*c);
            for (o, x) in out.iter_mut().zip(v) {
                *o = o.add(&c.mul(&x));
            }
        }
        out
    }

    /// Whether a multilinear identity vanishes on all basis tuples.
    pub fn satisfies(&self, p: &Poly) -> bool {
        let vs = poly_vars(p);
        tuples(self.n, vs.len()).into_iter().all(|tup| {
            let env: HashMap<char, Vec<K>> = vs.iter().zip(&tup).map(|(&v, &i)| (v, self.basis(i))).collect();
            self.eval_poly(p, &env).iter().all(K::is_zero)
        })
    }

    pub fn satisfies_all(&self, ids: &[Poly]) -> bool {
        ids.iter().all(|p| self.satisfies(p))
    }

    /// Inner pair (L_a, R_a) as a vector: L entries at k*n+i, then R entries.
    pub fn inner(&self, a: &[K]) -> Vec<K> {
        let n = self.n;
        let mut v = vec![self.f.zero(); 2 * n * n];
        for i in 0..n {
            let l = self.mul(a, &self.basis(i));
            let r = self.mul(&self.basis(i), a);
            for k in 0..n {
                v[k * n + i] = l[k].clone();
                v[n * n + k * n + i] = r[k].clone();
            }
        }
        v
    }

    /// The direct sum with zero cross products.
    pub fn direct_sum(&self, o: &Table) -> Table {
        let n = self.n + o.n;
        let mut t = Table::new(self.f, n);
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    t.c[(i * n + j) * n + k] = self.get(i, j, k).clone();
                }
            }
        }
        let s = self.n;
        for i in 0..o.n {
            for j in 0..o.n {
                for k in 0..o.n {
                    t.c[((s + i) * n + s + j) * n + s + k] = o.get(i, j, k).clone();
                }
            }
        }
        t
    }
}

pub fn tuples(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

// ---------- the weak actor equations ----------

enum Val {
    F,
    C(Vec<K>),
    Lin(Vec<Vec<K>>),
}

fn eval_slot(t: &Table, w: &T, fv: char, env: &HashMap<char, Vec<K>>) -> Val {
    let n = t.n;
    let f = t.f;
    let unknowns = 2 * n * n;
    match w {
        T::V(c) if *c == fv => Val::F,
        T::V(c) => Val::C(env[c].clone()),
        T::M(a, b) => match (eval_slot(t, a, fv, env), eval_slot(t, b, fv, env)) {
            (Val::C(u), Val::C(v)) => Val::C(t.mul(&u, &v)),
            (Val::F, Val::C(u)) => Val::Lin(
                (0..n)
                    .map(|k| {
                        let mut form = vec![f.zero(); unknowns];
                        for i in 0..n {
                            form[k * n + i] = u[i].clone();
                        }
                        form
                    })
                    .collect(),
            ),
            (Val::C(u), Val::F) => Val::Lin(
                (0..n)
                    .map(|k| {
                        let mut form = vec![f.zero(); unknowns];
                        for i in 0..n {
                            form[n * n + k * n + i] = u[i].clone();
                        }
                        form
                    })
                    .collect(),
            ),
            (Val::Lin(a), Val::C(u)) => {
                let mut out = vec![vec![f.zero(); unknowns]; n];
                for i in 0..n {
                    for j in 0..n {
                        if u[j].is_zero() {
                            continue;
                        }
                        for (k, o) in out.iter_mut().enumerate() {
                            let s = t.get(i, j, k).mul(&u[j]);
                            if s.is_zero() {
                                continue;
                            }
                            for (x, y) in o.iter_mut().zip(&a[i]) {
                                if !y.is_zero() {
                                    *x = x.add(&s.mul(y));
                                }
                            }
                        }
                    }
                }
                Val::Lin(out)
            }
            (Val::C(u), Val::Lin(b)) => {
                let mut out = vec![vec![f.zero(); unknowns]; n];
                for i in 0..n {
                    if u[i].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        for (k, o) in out.iter_mut().enumerate() {
                            let s = t.get(i, j, k).mul(&u[i]);
                            if s.is_zero() {
                                continue;
                            }
                            for (x, y) in o.iter_mut().zip(&b[j]) {
                                if !y.is_zero() {
                                    *x = x.add(&s.mul(y));
                                }
                            }
                        }
                    }
                }
                Val::Lin(out)
            }
            _ => panic!("operator occurs twice"),
        },
    }
}

/// Kernel of the weak actor equations: pairs (L, R) satisfying every identity with one slot
/// replaced by the operator. Vectors use the layout of [`Table::inner`].
pub fn actor_equations(t: &Table, ids: &[Poly]) -> Echelon {
    let n = t.n;
    let f = t.f;
    let mut e = Echelon::new(f, 2 * n * n);
    for p in ids {
        let vs = poly_vars(p);
        for &fv in &vs {
            let others: Vec<char> = vs.iter().copied().filter(|&c| c != fv).collect();
            for tup in tuples(n, others.len()) {
                let env: HashMap<char, Vec<K>> = others.iter().zip(&tup).map(|(&c, &i)| (c, t.basis(i))).collect();
                let mut acc = vec![vec![f.zero(); 2 * n * n]; n];
                for (c, w) in p {
                    let Val::Lin(forms) = eval_slot(t, w, fv, &env) else {
                        panic!("word without operator");
                    };
                    let c = f.int(*c);
                    for (a, fm) in acc.iter_mut().zip(forms) {
                        for (x, y) in a.iter_mut().zip(fm) {
                            if !y.is_zero() {
                                *x = x.add(&c.mul(&y));
                            }
                        }
                    }
                }
                for row in acc {
                    if row.iter().any(|x| !x.is_zero()) {
                        e.push(&row);
                    }
                }
            }
        }
    }
    e
}

pub fn actor_kernel(t: &Table, ids: &[Poly]) -> Vec<Vec<K>> {
    actor_equations(t, ids).kernel()
}

/// Library pair as a vector in the [`Table::inner`] layout.
pub fn biendo_vec(e: &BiEndo) -> Vec<K> {
    let f = Fld::of_lib(e.field());
    e.to_vec().iter().map(|s| f.from_scalar(s)).collect()
}

pub fn biendo_from(f: Fld, n: usize, v: &[K]) -> BiEndo {
    let s: Vec<Scalar> = v.iter().map(|k| f.to_scalar(k)).collect();
    BiEndo::from_vec(f.lib(), n, &s).expect("shape")
}

/// L applied to a vector, from the [`Table::inner`] layout.
pub fn apply_left(f: Fld, n: usize, pair: &[K], u: &[K]) -> Vec<K> {
    (0..n)
        .map(|k| {
            (0..n).fold(f.zero(), |acc, i| acc.add(&pair[k * n + i].mul(&u[i])))
        })
        .collect()
}

// ---------- variety identities ----------

pub const JACOBI: &str = "(xy)z + (yz)x + (zx)y";

/// Identities of the named varieties, written out by hand.
pub fn identities(name: &str) -> Vec<Poly> {
    let ps = |v: &[&str]| v.iter().map(|s| poly(s)).collect::<Vec<_>>();
    match name {
        "leibniz" => ps(&["(xy)z - (xz)y - x(yz)"]),
        "symmetric_leibniz" => ps(&["(xy)z - (xz)y - x(yz)", "z(xy) - (zx)y - x(zy)"]),
        "assoc" => ps(&["(xy)z - x(yz)"]),
        "aassoc" => ps(&["(xy)z + x(yz)"]),
        "cassoc" => ps(&["xy - yx", "(xy)z - x(yz)"]),
        "lie" => ps(&["xy + yx", JACOBI]),
        "jjord" => ps(&["xy - yx", JACOBI]),
        "acaassoc" => ps(&["xy + yx", "(xy)z + x(yz)"]),
        "alt" => ps(&["(xy)z + (xz)y - x(yz) - x(zy)", "(xy)z + (yx)z - x(yz) - y(xz)"]),
        "nil2_alg" => ps(&["x(yz)", "(xy)z"]),
        "nil2_com" => ps(&["xy - yx", "x(yz)", "(xy)z"]),
        "nil2_acom" => ps(&["xy + yx", "x(yz)", "(xy)z"]),
        "abalg" => ps(&["xy"]),
        "novikov" => ps(&["(xy)z - x(yz) - (yx)z + y(xz)", "(xy)z - (xz)y"]),
        other => panic!("no hand-written identities for {other}"),
    }
}

/// Associativity plus every bracketing of k+1 letters.
pub fn nil_k_assoc(k: usize) -> Vec<Poly> {
    let letters: Vec<char> = "abcdefgh".chars().take(k + 1).collect();
    fn shapes(vs: &[char]) -> Vec<T> {
        if vs.len() == 1 {
            return vec![T::V(vs[0])];
        }
        let mut out = Vec::new();
        for s in 1..vs.len() {
            for a in shapes(&vs[..s]) {
                for b in shapes(&vs[s..]) {
                    out.push(m(a.clone(), b));
                }
            }
        }
        out
    }
    let mut ids = identities("assoc");
    ids.extend(shapes(&letters).into_iter().map(|w| vec![(1, w)]));
    ids
}

// ---------- hand-built algebras ----------

/// Octonions with unit e1 and the seven Fano triples on e2..e8.
pub fn octonion_table() -> Table {
    let f = Fld::Q;
    let mut t = Table::new(f, 8);
    for i in 0..8 {
        t.set(0, i, i, 1);
        t.set(i, 0, i, 1);
    }
    for i in 1..8 {
        t.set(i, i, 0, -1);
    }
    for (a, b, c) in [(1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5)] {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            t.set(x, y, z, 1);
            t.set(y, x, z, -1);
        }
    }
    t
}

/// 2×2 matrix units on (e11, e12, e21, e22).
pub fn mat2_table() -> Table {
    let mut t = Table::new(Fld::Q, 4);
    for i in 0..2 {
        for j in 0..2 {
            for l in 0..2 {
                t.set(2 * i + j, 2 * j + l, 2 * i + l, 1);
            }
        }
    }
    t
}

/// sl2 on (e, h, f).
pub fn sl2_table() -> Table {
    let mut t = Table::new(Fld::Q, 3);
    t.set(1, 0, 0, 2);
    t.set(0, 1, 0, -2);
    t.set(1, 2, 2, -2);
    t.set(2, 1, 2, 2);
    t.set(0, 2, 1, 1);
    t.set(2, 0, 1, -1);
    t
}

pub fn same_table(t: &Table, a: &Algebra) -> bool {
    let u = Table::from_lib(a);
    u.n == t.n && u.c == t.c
}

/// Derivations D(ab) = D(a)b + aD(b), as n×n matrices with D[k][i] at k*n+i.
pub fn derivation_dim(t: &Table) -> usize {
    let n = t.n;
    let f = t.f;
    let mut e = Echelon::new(f, n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![f.zero(); n * n];
                // D(eᵢeⱼ)ₖ
                for a in 0..n {
                    row[k * n + a] = row[k * n + a].add(t.get(i, j, a));
                }
                // (D eᵢ) eⱼ and eᵢ (D eⱼ)
                for a in 0..n {
                    row[a * n + i] = row[a * n + i].sub(t.get(a, j, k));
                    row[a * n + j] = row[a * n + j].sub(t.get(i, a, k));
                }
                e.push(&row);
            }
        }
    }
    n * n - e.rank()
}

/// Maps X → X vanishing on X² with image in the two-sided annihilator.
pub fn square_killer_dim(t: &Table) -> usize {
    let n = t.n;
    let f = t.f;
    let mut e = Echelon::new(f, n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![f.zero(); n * n];
                for a in 0..n {
                    row[k * n + a] = t.get(i, j, a).clone();
                }
                e.push(&row);
                let mut left = vec![f.zero(); n * n];
                let mut right = vec![f.zero(); n * n];
                for a in 0..n {
                    left[a * n + i] = t.get(a, j, k).clone();
                    right[a * n + i] = t.get(j, a, k).clone();
                }
                e.push(&left);
                e.push(&right);
            }
        }
    }
    n * n - e.rank()
}
