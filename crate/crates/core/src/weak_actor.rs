//! The external weak actor E(X): pairs (L, R) ∈ End(X)² satisfying every identity with one slot
//! replaced by the operator, its λ/μ partial bracket, and the classical operator algebras.

use std::fmt;

use itertools::Itertools;

use crate::algebra::{Algebra, BiEndo};
use crate::error::{Error, Result};
use crate::exact_linalg::{ExactMatrix, FieldSpec, RowReducer, Scalar, SparseRow};
use crate::free_magma::{MagmaWord, MultilinearPoly};
use crate::variety::{
    accessibility_check, build_m3, builtin_variety, commutation_sign, reduced_rule, LambdaMuRules,
    VarietySpec,
};

/// Where the bracket rules came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RulesSource {
    Reduced,
    Witness,
    Override,
    Kind,
}

impl fmt::Display for RulesSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RulesSource::Reduced => "reduced",
            RulesSource::Witness => "witness",
            RulesSource::Override => "override",
            RulesSource::Kind => "kind",
        })
    }
}

/// Classical operator algebras solved from their own defining equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActorKind {
    Multipliers,
    Bimultipliers,
    Biderivations,
    Antiderivations,
    Derivations,
    Nil2SquareKillers,
    Acaa,
}

impl ActorKind {
    pub const ALL: [ActorKind; 7] = [
        ActorKind::Multipliers,
        ActorKind::Bimultipliers,
        ActorKind::Biderivations,
        ActorKind::Antiderivations,
        ActorKind::Derivations,
        ActorKind::Nil2SquareKillers,
        ActorKind::Acaa,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ActorKind::Multipliers => "multipliers",
            ActorKind::Bimultipliers => "bimultipliers",
            ActorKind::Biderivations => "biderivations",
            ActorKind::Antiderivations => "antiderivations",
            ActorKind::Derivations => "derivations",
            ActorKind::Nil2SquareKillers => "nil2_square_killers",
            ActorKind::Acaa => "acaa",
        }
    }

    pub fn parse(s: &str) -> Result<ActorKind> {
        ActorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }

    /// Builtin varieties the kind belongs to.
    pub fn varieties(&self) -> &'static [&'static str] {
        match self {
            ActorKind::Multipliers => &["cassoc"],
            ActorKind::Bimultipliers => &["assoc"],
            ActorKind::Biderivations => &["leibniz"],
            ActorKind::Antiderivations => &["jjord"],
            ActorKind::Derivations => &["lie"],
            ActorKind::Nil2SquareKillers => &["nil2_com", "nil2_acom"],
            ActorKind::Acaa => &["acaassoc"],
        }
    }
}

impl fmt::Display for ActorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A subspace of End(X)² cut out by linear constraints, with a partial bracket.
#[derive(Clone, Debug)]
pub struct WeakActorSpace {
    pub variety: VarietySpec,
    pub algebra: Algebra,
    pub basis: Vec<BiEndo>,
    /// Independent rows over the coordinates of `BiEndo::to_vec`; the space is their kernel.
    pub constraint_matrix: ExactMatrix,
    pub rules: LambdaMuRules,
    pub rules_source: RulesSource,
    pub kind: Option<ActorKind>,
}

/// Value of a bracket and whether it lies in the space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialBracketResult {
    pub value: BiEndo,
    pub in_domain: bool,
}

// Linear forms X-valued in the 2n² unknowns: one sparse row per output coordinate.
type Form = Vec<SparseRow>;

#[derive(Clone, Copy)]
enum Op {
    L,
    R,
}

struct FormBuilder<'a> {
    x: &'a Algebra,
    n: usize,
}

impl<'a> FormBuilder<'a> {
    fn new(x: &'a Algebra) -> Self {
        FormBuilder { x, n: x.dim() }
    }

    fn unknowns(&self) -> usize {
        2 * self.n * self.n
    }

    fn zero(&self) -> Form {
        vec![SparseRow::new(); self.n]
    }

    /// op applied to a fixed vector.
    fn apply(&self, op: Op, v: &[Scalar]) -> Form {
        let n = self.n;
        let off = match op {
            Op::L => 0,
            Op::R => n * n,
        };
        (0..n)
            .map(|k| {
                v.iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .map(|(i, s)| (off + k * n + i, s.clone()))
                    .collect()
            })
            .collect()
    }

    /// Applies a fixed linear map (n×n matrix) to a form.
    fn map(&self, m: &ExactMatrix, f: &Form) -> Form {
        let mut out = self.zero();
        for (k, o) in out.iter_mut().enumerate() {
            for (i, row) in f.iter().enumerate() {
                let c = m.get(k, i);
                if c.is_zero() {
                    continue;
                }
                for (j, v) in row {
                    let e = o.entry(*j).or_insert_with(|| self.x.field().zero());
                    *e += &(c * v);
                }
            }
            o.retain(|_, v| !v.is_zero());
        }
        out
    }

    /// form · b
    fn times_vec(&self, f: &Form, b: &[Scalar]) -> Form {
        let ops = self.x.mult_ops(b).expect("length checked");
        self.map(&ops.r, f)
    }

    /// a · form
    fn vec_times(&self, a: &[Scalar], f: &Form) -> Form {
        let ops = self.x.mult_ops(a).expect("length checked");
        self.map(&ops.l, f)
    }

    fn add_scaled(&self, acc: &mut Form, f: &Form, s: &Scalar) {
        for (o, row) in acc.iter_mut().zip(f) {
            for (j, v) in row {
                let e = o.entry(*j).or_insert_with(|| self.x.field().zero());
                *e += &(s * v);
            }
            o.retain(|_, v| !v.is_zero());
        }
    }

    fn sum(&self, parts: &[(&Form, i64)]) -> Form {
        let mut acc = self.zero();
        for (f, s) in parts {
            self.add_scaled(&mut acc, f, &self.x.field().int(*s));
        }
        acc
    }

    /// Every output coordinate of the form is a constraint row.
    fn push_all(&self, red: &mut RowReducer, f: Form) {
        for row in f {
            red.push(row);
        }
    }
}

enum Val {
    Vec(Vec<Scalar>),
    Form(Form),
}

fn eval_with_slot(
    fb: &FormBuilder,
    w: &MagmaWord,
    slot: &str,
    env: &std::collections::HashMap<&str, Vec<Scalar>>,
) -> Result<Val> {
    match w {
        MagmaWord::Leaf(v) if v == slot => Err(Error::Internal("bare operator slot".into())),
        MagmaWord::Leaf(v) => env
            .get(v.as_str())
            .cloned()
            .map(Val::Vec)
            .ok_or_else(|| Error::UnknownVariable(v.clone())),
        MagmaWord::Node(a, b) => {
            if matches!(&**a, MagmaWord::Leaf(v) if v == slot) {
                let Val::Vec(bv) = eval_with_slot(fb, b, slot, env)? else {
                    return Err(Error::NotMultilinear(w.to_string()));
                };
                return Ok(Val::Form(fb.apply(Op::L, &bv)));
            }
            if matches!(&**b, MagmaWord::Leaf(v) if v == slot) {
                let Val::Vec(av) = eval_with_slot(fb, a, slot, env)? else {
                    return Err(Error::NotMultilinear(w.to_string()));
                };
                return Ok(Val::Form(fb.apply(Op::R, &av)));
            }
            match (eval_with_slot(fb, a, slot, env)?, eval_with_slot(fb, b, slot, env)?) {
                (Val::Vec(u), Val::Vec(v)) => Ok(Val::Vec(fb.x.multiply(&u, &v)?)),
                (Val::Form(f), Val::Vec(v)) => Ok(Val::Form(fb.times_vec(&f, &v))),
                (Val::Vec(u), Val::Form(f)) => Ok(Val::Form(fb.vec_times(&u, &f))),
                (Val::Form(_), Val::Form(_)) => Err(Error::NotMultilinear(w.to_string())),
            }
        }
    }
}

/// Adds the constraints of identity `p` with `slot` read as the operator.
fn push_identity_constraints(fb: &FormBuilder, red: &mut RowReducer, p: &MultilinearPoly, slot: &str) -> Result<()> {
    let others: Vec<&str> = p.vars().iter().map(String::as_str).filter(|v| *v != slot).collect();
    let basis: Vec<Vec<Scalar>> = (0..fb.n).map(|i| fb.x.basis_vector(i)).collect();
    for tuple in (0..others.len()).map(|_| 0..fb.n).multi_cartesian_product() {
        let env = others.iter().zip(&tuple).map(|(v, &i)| (*v, basis[i].clone())).collect();
        let mut acc = fb.zero();
        for (w, c) in p.terms() {
            match eval_with_slot(fb, w, slot, &env)? {
                Val::Form(f) => fb.add_scaled(&mut acc, &f, c),
                Val::Vec(_) => return Err(Error::NotMultilinear(w.to_string())),
            }
        }
        fb.push_all(red, acc);
    }
    Ok(())
}

/// Rules used when none are given: the reduced rule if the variety has one, otherwise the
/// λ/μ witness of its identities of degree at most 3.
pub fn default_rules(v: &VarietySpec, field: FieldSpec) -> Result<(LambdaMuRules, RulesSource)> {
    if let Some(r) = reduced_rule(v, field)? {
        return Ok((r.to_lambda_mu(), RulesSource::Reduced));
    }
    let rep = accessibility_check(&v.quadratic_part(), field)?;
    match rep.witness {
        Some(w) => Ok((w, RulesSource::Witness)),
        None => Err(Error::NotAccessible(
            rep.failure_reason.unwrap_or_else(|| v.name.clone()),
        )),
    }
}

/// Fails unless both rules lie in the span of the degree-3 consequences of the variety.
pub fn check_rules(v: &VarietySpec, rules: &LambdaMuRules) -> Result<()> {
    let field = rules.field();
    let im = build_m3(&v.quadratic_part(), field)?;
    for row in rules.to_m3_rows()? {
        if im.m3.rows() == 0 || im.m3.span_membership(&row)?.is_none() {
            return Err(Error::InconsistentRules(v.name.clone()));
        }
    }
    Ok(())
}

/// (L_h, R_h) for h = ⟨f, g⟩ under the rules: x∗h = Σλₖ Wₖ and h∗x = Σμₖ Wₖ.
pub fn compose_rules(rules: &LambdaMuRules, f: &BiEndo, g: &BiEndo) -> Result<BiEndo> {
    let ops = [
        g.r.mul(&f.r)?, // (xf)g
        g.r.mul(&f.l)?, // (fx)g
        g.l.mul(&f.r)?, // g(xf)
        g.l.mul(&f.l)?, // g(fx)
        f.r.mul(&g.r)?, // (xg)f
        f.r.mul(&g.l)?, // (gx)f
        f.l.mul(&g.r)?, // f(xg)
        f.l.mul(&g.l)?, // f(gx)
    ];
    let mut out = BiEndo::zero(f.field(), f.dim());
    for (k, op) in ops.iter().enumerate() {
        out.r = out.r.add(&op.scale(&rules.lambdas[k]))?;
        out.l = out.l.add(&op.scale(&rules.mus[k]))?;
    }
    Ok(out)
}

fn space_from(
    v: &VarietySpec,
    x: &Algebra,
    red: RowReducer,
    rules: LambdaMuRules,
    rules_source: RulesSource,
    kind: Option<ActorKind>,
) -> Result<WeakActorSpace> {
    let n = x.dim();
    let basis = red
        .nullspace()
        .iter()
        .map(|b| BiEndo::from_vec(x.field(), n, b))
        .collect::<Result<Vec<_>>>()?;
    let space = WeakActorSpace {
        variety: v.clone(),
        algebra: x.clone(),
        basis,
        constraint_matrix: red.to_matrix(),
        rules,
        rules_source,
        kind,
    };
    for b in &space.basis {
        if !space.contains(b) {
            return Err(Error::Internal("kernel vector violates a constraint".into()));
        }
    }
    for i in 0..n {
        if !space.contains(&x.mult_ops(&x.basis_vector(i))?) {
            return Err(Error::Internal(format!("inner pair of {} escapes the space", x.labels()[i])));
        }
    }
    Ok(space)
}

/// E(X): every identity, every slot for the operator, every basis tuple in the other slots.
pub fn compute_actor_space(v: &VarietySpec, x: &Algebra, rules: Option<LambdaMuRules>) -> Result<WeakActorSpace> {
    let field = x.field();
    v.check_field(field)?;
    x.require_variety(v)?;
    let (rules, source) = match rules {
        Some(r) => {
            let r = LambdaMuRules {
                lambdas: r.lambdas.iter().map(|s| to_field(s, field)).collect::<Result<_>>()?,
                mus: r.mus.iter().map(|s| to_field(s, field)).collect::<Result<_>>()?,
            };
            check_rules(v, &r)?;
            (r, RulesSource::Override)
        }
        None => default_rules(v, field)?,
    };
    let fb = FormBuilder::new(x);
    let mut red = RowReducer::new(field, fb.unknowns());
    for p in v.identities_in(field)? {
        for slot in p.vars() {
            push_identity_constraints(&fb, &mut red, &p, slot)?;
        }
    }
    space_from(v, x, red, rules, source, None)
}

fn to_field(s: &Scalar, field: FieldSpec) -> Result<Scalar> {
    if s.field() == field {
        return Ok(s.clone());
    }
    match s.as_rational() {
        Some(q) => field.rational(q),
        None => Err(Error::FieldMismatch(format!("{} into {field}", s.field()))),
    }
}

impl WeakActorSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    /// Membership via the defining constraints.
    pub fn contains(&self, e: &BiEndo) -> bool {
        if e.dim() != self.algebra.dim() || e.field() != self.field() {
            return false;
        }
        let v = e.to_vec();
        self.constraint_matrix
            .mul_vec(&v)
            .map(|r| r.iter().all(Scalar::is_zero))
            .unwrap_or(false)
    }

    /// Coordinates over the basis, when `e` lies in its span.
    pub fn coordinates(&self, e: &BiEndo) -> Result<Option<Vec<Scalar>>> {
        if self.basis.is_empty() {
            return Ok(e.is_zero().then(Vec::new));
        }
        let m = ExactMatrix::from_rows(
            self.field(),
            2 * self.algebra.dim() * self.algebra.dim(),
            self.basis.iter().map(BiEndo::to_vec).collect(),
        )?;
        m.span_membership(&e.to_vec())
    }

    /// ⟨f, g⟩ with its domain flag.
    pub fn bracket(&self, f: &BiEndo, g: &BiEndo) -> Result<PartialBracketResult> {
        if !self.contains(f) || !self.contains(g) {
            return Err(Error::OutsideActor);
        }
        let value = compose_rules(&self.rules, f, g)?;
        let in_domain = self.coordinates(&value)?.is_some();
        Ok(PartialBracketResult { value, in_domain })
    }

    /// Whether every pair of basis elements brackets back into the space.
    pub fn is_total(&self) -> Result<bool> {
        for f in &self.basis {
            for g in &self.basis {
                if !self.bracket(f, g)?.in_domain {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Basis pairs whose bracket leaves the space.
    pub fn domain_failures(&self) -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        for (i, f) in self.basis.iter().enumerate() {
            for (j, g) in self.basis.iter().enumerate() {
                if !self.bracket(f, g)?.in_domain {
                    out.push((i, j));
                }
            }
        }
        Ok(out)
    }

    /// The algebra on the basis given by the bracket; requires totality.
    pub fn actor_algebra(&self) -> Result<Algebra> {
        let m = self.dim();
        let labels = (1..=m).map(|i| format!("a{i}")).collect();
        let mut a = Algebra::zero(&format!("E({})", self.algebra.name), self.field(), labels);
        for i in 0..m {
            for j in 0..m {
                let r = self.bracket(&self.basis[i], &self.basis[j])?;
                let c = self.coordinates(&r.value)?.ok_or(Error::OutsideActor)?;
                a.set_product(i, j, c)?;
            }
        }
        Ok(a)
    }

    /// Whether the total algebra on the space satisfies the identities of the variety.
    pub fn satisfies_variety(&self) -> Result<bool> {
        self.actor_algebra()?.in_variety(&self.variety)
    }

    /// Equality of spans.
    pub fn same_span(&self, other: &WeakActorSpace) -> Result<bool> {
        if self.dim() != other.dim() {
            return Ok(false);
        }
        for b in &other.basis {
            if self.coordinates(b)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Basis elements as matrix pairs in text.
    pub fn basis_text(&self) -> Vec<(String, String)> {
        self.basis.iter().map(|b| (b.l.to_string(), b.r.to_string())).collect()
    }
}

/// Builtin variety matching a kind for the given algebra.
fn kind_variety(kind: ActorKind, x: &Algebra) -> Result<VarietySpec> {
    for name in kind.varieties() {
        let v = builtin_variety(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
        if v.check_field(x.field()).is_ok() && x.in_variety(&v)? {
            return Ok(v);
        }
    }
    Err(Error::KindMismatch {
        kind: kind.name().into(),
        variety: format!("any variety containing {}", x.name),
    })
}

/// The kind's operator algebra in its matching builtin variety.
pub fn named_actor(kind: ActorKind, x: &Algebra) -> Result<WeakActorSpace> {
    let v = kind_variety(kind, x)?;
    named_actor_in(kind, &v, x)
}

/// The kind's operator algebra, read as a subspace of End(X)², in the given variety.
pub fn named_actor_in(kind: ActorKind, v: &VarietySpec, x: &Algebra) -> Result<WeakActorSpace> {
    if !kind.varieties().contains(&v.name.as_str()) {
        return Err(Error::KindMismatch {
            kind: kind.name().into(),
            variety: v.name.clone(),
        });
    }
    v.check_field(x.field())?;
    x.require_variety(v)?;
    let (rules, _) = default_rules(v, x.field())?;
    let fb = FormBuilder::new(x);
    let n = x.dim();
    let mut red = RowReducer::new(x.field(), fb.unknowns());
    let e: Vec<Vec<Scalar>> = (0..n).map(|i| x.basis_vector(i)).collect();
    // pairing constraints R = ε L
    let pair = |red: &mut RowReducer, eps: i64| {
        for i in 0..n {
            let l = fb.apply(Op::L, &e[i]);
            let r = fb.apply(Op::R, &e[i]);
            fb.push_all(red, fb.sum(&[(&r, 1), (&l, -eps)]));
        }
    };
    for i in 0..n {
        for j in 0..n {
            let xy = x.multiply(&e[i], &e[j])?;
            let l_xy = fb.apply(Op::L, &xy);
            let r_xy = fb.apply(Op::R, &xy);
            let lx_y = fb.times_vec(&fb.apply(Op::L, &e[i]), &e[j]);
            let ly_x = fb.times_vec(&fb.apply(Op::L, &e[j]), &e[i]);
            let x_ly = fb.vec_times(&e[i], &fb.apply(Op::L, &e[j]));
            let rx_y = fb.times_vec(&fb.apply(Op::R, &e[i]), &e[j]);
            let x_ry = fb.vec_times(&e[i], &fb.apply(Op::R, &e[j]));
            let y_lx = fb.vec_times(&e[j], &fb.apply(Op::L, &e[i]));
            let eqs: Vec<Form> = match kind {
                // f(xy) = f(x)y
                ActorKind::Multipliers => vec![fb.sum(&[(&l_xy, 1), (&lx_y, -1)])],
                // f∗(xy) = (f∗x)y, (xy)∗f = x(y∗f), x(f∗y) = (x∗f)y
                ActorKind::Bimultipliers => vec![
                    fb.sum(&[(&l_xy, 1), (&lx_y, -1)]),
                    fb.sum(&[(&r_xy, 1), (&x_ry, -1)]),
                    fb.sum(&[(&x_ly, 1), (&rx_y, -1)]),
                ],
                // d = R, D = −L: d(xy) = d(x)y + xd(y), D(xy) = D(x)y − D(y)x, xd(y) = xD(y)
                ActorKind::Biderivations => vec![
                    fb.sum(&[(&r_xy, 1), (&rx_y, -1), (&x_ry, -1)]),
                    fb.sum(&[(&l_xy, -1), (&lx_y, 1), (&ly_x, -1)]),
                    fb.sum(&[(&x_ry, 1), (&x_ly, 1)]),
                ],
                // d(xy) = −d(x)y − d(y)x
                ActorKind::Antiderivations => vec![fb.sum(&[(&l_xy, 1), (&lx_y, 1), (&ly_x, 1)])],
                // d(xy) = d(x)y + xd(y)
                ActorKind::Derivations => vec![fb.sum(&[(&l_xy, 1), (&lx_y, -1), (&x_ly, -1)])],
                // f(xy) = 0, f(x)y = 0, yf(x) = 0
                ActorKind::Nil2SquareKillers => vec![l_xy, lx_y, y_lx],
                // f(xy) = −f(x)y
                ActorKind::Acaa => vec![fb.sum(&[(&l_xy, 1), (&lx_y, 1)])],
            };
            for eq in eqs {
                fb.push_all(&mut red, eq);
            }
        }
    }
    match kind {
        ActorKind::Bimultipliers | ActorKind::Biderivations => {}
        ActorKind::Multipliers | ActorKind::Antiderivations => pair(&mut red, 1),
        ActorKind::Derivations | ActorKind::Acaa => pair(&mut red, -1),
        ActorKind::Nil2SquareKillers => {
            let eps = commutation_sign(v, x.field())?.ok_or_else(|| Error::KindMismatch {
                kind: kind.name().into(),
                variety: v.name.clone(),
            })?;
            pair(&mut red, eps as i64)
        }
    }
    space_from(v, x, red, rules, RulesSource::Kind, Some(kind))
}

/// Whether composition of the operators is commutative; defined for multipliers.
pub fn commutativity_report(space: &WeakActorSpace) -> Result<bool> {
    if space.kind != Some(ActorKind::Multipliers) {
        return Err(Error::KindMismatch {
            kind: space.kind.map_or("none", |k| k.name()).into(),
            variety: space.variety.name.clone(),
        });
    }
    for f in &space.basis {
        for g in &space.basis {
            if f.l.mul(&g.l)? != g.l.mul(&f.l)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, fixture, heisenberg, kronecker, mat2, octonions, sl2};

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn var(name: &str) -> VarietySpec {
        builtin_variety(name).unwrap()
    }

    #[test]
    fn abelian_algebra_variety_has_zero_actor() {
        let s = compute_actor_space(&var("abalg"), &abelian(1, q()), None).unwrap();
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn octonion_actor_is_inner() {
        let o = octonions();
        let s = compute_actor_space(&var("alt"), &o, None).unwrap();
        assert_eq!(s.dim(), 8);
        for i in 0..8 {
            assert!(s.coordinates(&o.mult_ops(&o.basis_vector(i)).unwrap()).unwrap().is_some());
        }
        assert!(s.is_total().unwrap());
    }

    #[test]
    fn nilpotent_associative_on_a_line() {
        let s = compute_actor_space(&var("nil_k_assoc(3)"), &abelian(1, q()), None).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.is_total().unwrap());
        let a = s.actor_algebra().unwrap();
        assert!(a.in_variety(&var("assoc")).unwrap());
        assert!(!a.in_variety(&var("nil_k_assoc(3)")).unwrap());
        let f = BiEndo::from_vec(q(), 1, &[q().int(2), q().int(3)]).unwrap();
        let g = BiEndo::from_vec(q(), 1, &[q().int(5), q().int(7)]).unwrap();
        let h = s.bracket(&f, &g).unwrap();
        assert_eq!(h.value.to_vec(), vec![q().int(10), q().int(21)]);
    }

    #[test]
    fn jacobi_jordan_line_fails_jacobi() {
        let s = compute_actor_space(&var("jjord"), &abelian(1, q()), None).unwrap();
        assert_eq!(s.dim(), 1);
        let f = BiEndo::from_vec(q(), 1, &[q().one(), q().one()]).unwrap();
        let h = s.bracket(&f, &f).unwrap();
        assert_eq!(h.value.l.get(0, 0), &q().int(-2));
        assert!(s.is_total().unwrap());
        assert!(!s.satisfies_variety().unwrap());
    }

    #[test]
    fn lie_actor_is_derivations() {
        let x = sl2(q());
        let s = compute_actor_space(&var("lie"), &x, None).unwrap();
        let d = named_actor(ActorKind::Derivations, &x).unwrap();
        assert_eq!(d.dim(), 3);
        assert!(s.same_span(&d).unwrap());
        assert!(s.is_total().unwrap());
        assert!(s.satisfies_variety().unwrap());
    }

    #[test]
    fn oracle_pairs_agree() {
        let cases = [
            (ActorKind::Bimultipliers, "assoc", mat2(q())),
            (ActorKind::Biderivations, "leibniz", fixture("leibniz2").unwrap()),
            (ActorKind::Biderivations, "leibniz", heisenberg(1, q())),
            (ActorKind::Antiderivations, "jjord", fixture("jj2_f3").unwrap()),
            (ActorKind::Antiderivations, "jjord", abelian(2, q())),
            (ActorKind::Multipliers, "cassoc", fixture("dual_numbers").unwrap()),
            (ActorKind::Multipliers, "cassoc", kronecker(q())),
            (ActorKind::Nil2SquareKillers, "nil2_com", kronecker(q())),
            (ActorKind::Nil2SquareKillers, "nil2_acom", heisenberg(1, q())),
            (ActorKind::Acaa, "acaassoc", fixture("engel7_f3").unwrap()),
            (ActorKind::Acaa, "acaassoc", heisenberg(1, q())),
        ];
        for (kind, v, x) in cases {
            let s = compute_actor_space(&var(v), &x, None).unwrap();
            let o = named_actor_in(kind, &var(v), &x).unwrap();
            assert!(s.same_span(&o).unwrap(), "{kind} on {}: {} vs {}", x.name, s.dim(), o.dim());
        }
    }

    #[test]
    fn nil2_dimensions() {
        assert_eq!(named_actor(ActorKind::Nil2SquareKillers, &kronecker(q())).unwrap().dim(), 2);
        assert_eq!(named_actor(ActorKind::Nil2SquareKillers, &heisenberg(1, q())).unwrap().dim(), 2);
    }

    #[test]
    fn multipliers_of_plane_do_not_commute() {
        let m = named_actor(ActorKind::Multipliers, &abelian(2, q())).unwrap();
        assert_eq!(m.dim(), 4);
        assert!(!commutativity_report(&m).unwrap());
        let d = named_actor(ActorKind::Multipliers, &fixture("dual_numbers").unwrap()).unwrap();
        assert!(commutativity_report(&d).unwrap());
        let b = named_actor(ActorKind::Bimultipliers, &mat2(q())).unwrap();
        assert!(commutativity_report(&b).is_err());
    }

    #[test]
    fn kind_mismatch() {
        assert!(matches!(
            named_actor_in(ActorKind::Derivations, &var("assoc"), &mat2(q())),
            Err(Error::KindMismatch { .. })
        ));
        assert!(matches!(named_actor(ActorKind::Derivations, &mat2(q())), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn outside_operands_are_rejected() {
        let s = compute_actor_space(&var("lie"), &sl2(q()), None).unwrap();
        let id = BiEndo {
            l: ExactMatrix::identity(q(), 3),
            r: ExactMatrix::identity(q(), 3),
        };
        assert!(matches!(s.bracket(&id, &id), Err(Error::OutsideActor)));
    }

    #[test]
    fn override_rules_are_checked() {
        let bad = LambdaMuRules::from_ints(q(), [1, 0, 0, 0, 0, 0, 0, 0], [0; 8]);
        assert!(matches!(
            compute_actor_space(&var("lie"), &sl2(q()), Some(bad)),
            Err(Error::InconsistentRules(_))
        ));
    }
}
