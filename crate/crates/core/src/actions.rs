//! Derived actions of B on X, semidirect products, and the map τ into the weak actor.

use crate::algebra::{combo_text, parse_combo, Algebra, BiEndo};
use crate::error::{Error, Result};
use crate::exact_linalg::{ExactMatrix, Scalar};
use crate::text::{keyword, strip_comment, Cursor};
use crate::variety::VarietySpec;
use crate::weak_actor::WeakActorSpace;

/// Bilinear maps l: B × X → X (b∗x) and r: X × B → X (x∗b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedAction {
    pub name: String,
    pub b: Algebra,
    pub x: Algebra,
    l: Vec<Scalar>,
    r: Vec<Scalar>,
}

/// Images of the basis of B in a weak actor space.
#[derive(Clone, Debug)]
pub struct ActorMorphism {
    pub b: Algebra,
    pub space: WeakActorSpace,
    pub images: Vec<BiEndo>,
}

impl DerivedAction {
    /// The zero action.
    pub fn trivial(b: &Algebra, x: &Algebra) -> Result<Self> {
        if b.field() != x.field() {
            return Err(Error::FieldMismatch(format!("{} and {}", b.field(), x.field())));
        }
        let (nb, nx) = (b.dim(), x.dim());
        Ok(DerivedAction {
            name: format!("trivial_{}_{}", b.name, x.name),
            b: b.clone(),
            x: x.clone(),
            l: vec![x.field().zero(); nb * nx * nx],
            r: vec![x.field().zero(); nb * nx * nx],
        })
    }

    /// X acting on itself by multiplication.
    pub fn regular(x: &Algebra) -> Self {
        let mut a = Self::trivial(x, x).expect("same field");
        a.name = format!("regular_{}", x.name);
        for i in 0..x.dim() {
            for j in 0..x.dim() {
                a.set_left(i, j, x.product(i, j).to_vec());
                a.set_right(j, i, x.product(j, i).to_vec());
            }
        }
        a
    }

    fn nb(&self) -> usize {
        self.b.dim()
    }

    fn nx(&self) -> usize {
        self.x.dim()
    }

    /// bᵢ ∗ xⱼ
    pub fn left(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.nx();
        let s = (i * n + j) * n;
        &self.l[s..s + n]
    }

    /// xⱼ ∗ bᵢ
    pub fn right(&self, j: usize, i: usize) -> &[Scalar] {
        let n = self.nx();
        let s = (j * self.nb() + i) * n;
        &self.r[s..s + n]
    }

    pub fn set_left(&mut self, i: usize, j: usize, v: Vec<Scalar>) {
        let n = self.nx();
        let s = (i * n + j) * n;
        self.l.splice(s..s + n, v);
    }

    pub fn set_right(&mut self, j: usize, i: usize, v: Vec<Scalar>) {
        let n = self.nx();
        let s = (j * self.nb() + i) * n;
        self.r.splice(s..s + n, v);
    }

    /// The pair (b∗−, −∗b) for a basis element b.
    pub fn operator(&self, i: usize) -> BiEndo {
        let n = self.nx();
        let mut e = BiEndo::zero(self.x.field(), n);
        for j in 0..n {
            for k in 0..n {
                e.l.set(k, j, self.left(i, j)[k].clone());
                e.r.set(k, j, self.right(j, i)[k].clone());
            }
        }
        e
    }

    /// Rebuilds an action from operator pairs, one per basis element of B.
    pub fn from_operators(name: &str, b: &Algebra, x: &Algebra, ops: &[BiEndo]) -> Result<Self> {
        if ops.len() != b.dim() {
            return Err(Error::Dimension(format!("{} images for dim {}", ops.len(), b.dim())));
        }
        let mut a = Self::trivial(b, x)?;
        a.name = name.to_string();
        let n = x.dim();
        for (i, op) in ops.iter().enumerate() {
            if op.dim() != n {
                return Err(Error::Dimension(format!("operator on dim {} for dim {n}", op.dim())));
            }
            for j in 0..n {
                a.set_left(i, j, (0..n).map(|k| op.l.get(k, j).clone()).collect());
                a.set_right(j, i, (0..n).map(|k| op.r.get(k, j).clone()).collect());
            }
        }
        Ok(a)
    }

    /// B ⊕ X with (b,x)(b′,x′) = (bb′, xx′ + b∗x′ + x∗b′), whether or not it is in a variety.
    pub fn semidirect_candidate(&self) -> Algebra {
        let (nb, nx) = (self.nb(), self.nx());
        let field = self.x.field();
        let mut labels: Vec<String> = self.b.labels().iter().map(|l| format!("b:{l}")).collect();
        labels.extend(self.x.labels().iter().map(|l| format!("x:{l}")));
        let mut s = Algebra::zero(&format!("{}_semidirect", self.name), field, labels);
        let embed = |v: &[Scalar], off: usize| {
            let mut out = vec![field.zero(); nb + nx];
            for (k, c) in v.iter().enumerate() {
                out[off + k] = c.clone();
            }
            out
        };
        for i in 0..nb {
            for j in 0..nb {
                s.set_product(i, j, embed(self.b.product(i, j), 0)).expect("shape");
            }
            for j in 0..nx {
                s.set_product(i, nb + j, embed(self.left(i, j), nb)).expect("shape");
                s.set_product(nb + j, i, embed(self.right(j, i), nb)).expect("shape");
            }
        }
        for i in 0..nx {
            for j in 0..nx {
                s.set_product(nb + i, nb + j, embed(self.x.product(i, j), nb)).expect("shape");
            }
        }
        s
    }

    /// Renders in the action file grammar.
    pub fn to_text(&self) -> String {
        let mut s = format!("action {} of {} on {}\n", self.name, self.b.name, self.x.name);
        let xl = self.x.labels();
        for i in 0..self.nb() {
            for j in 0..self.nx() {
                let bl = &self.b.labels()[i];
                if !self.left(i, j).iter().all(Scalar::is_zero) {
                    s.push_str(&format!("b:{bl} * x:{} = {}\n", xl[j], combo_text(self.left(i, j), xl)));
                }
                if !self.right(j, i).iter().all(Scalar::is_zero) {
                    s.push_str(&format!("x:{} * b:{bl} = {}\n", xl[j], combo_text(self.right(j, i), xl)));
                }
            }
        }
        s
    }
}

/// Whether B ⋉ X lies in the variety; B and X must lie in it.
pub fn validate_action(v: &VarietySpec, act: &DerivedAction) -> Result<bool> {
    if act.b.field() != act.x.field() {
        return Err(Error::FieldMismatch(format!("{} and {}", act.b.field(), act.x.field())));
    }
    v.check_field(act.x.field())?;
    act.b.require_variety(v)?;
    act.x.require_variety(v)?;
    act.semidirect_candidate().in_variety(v)
}

/// The semidirect product of a valid action.
pub fn semidirect(v: &VarietySpec, act: &DerivedAction) -> Result<Algebra> {
    if !validate_action(v, act)? {
        return Err(Error::InvalidAction(format!("{} is not a derived action in {}", act.name, v.name)));
    }
    Ok(act.semidirect_candidate())
}

/// τ(b) = (b∗−, −∗b), checked to land in E(X) and to respect brackets.
pub fn tau(v: &VarietySpec, act: &DerivedAction, space: &WeakActorSpace) -> Result<ActorMorphism> {
    if space.algebra != act.x || space.variety != *v {
        return Err(Error::Internal("weak actor built for another algebra or variety".into()));
    }
    if !validate_action(v, act)? {
        return Err(Error::InvalidAction(format!("{} is not a derived action in {}", act.name, v.name)));
    }
    let images: Vec<BiEndo> = (0..act.b.dim()).map(|i| act.operator(i)).collect();
    if images.iter().any(|e| !space.contains(e)) {
        return Err(Error::Internal("image of a valid action escapes the weak actor".into()));
    }
    let phi = ActorMorphism {
        b: act.b.clone(),
        space: space.clone(),
        images,
    };
    if !phi.is_partial_homomorphism()? {
        return Err(Error::Internal("image of a valid action is not a partial homomorphism".into()));
    }
    Ok(phi)
}

impl ActorMorphism {
    /// φ(v) for a coordinate vector of B.
    pub fn apply(&self, v: &[Scalar]) -> Result<BiEndo> {
        let n = self.space.algebra.dim();
        let mut out = BiEndo::zero(self.space.field(), n);
        for (c, img) in v.iter().zip(&self.images) {
            if !c.is_zero() {
                out = out.add(&img.scale(c))?;
            }
        }
        Ok(out)
    }

    /// Brackets of images are defined and equal images of products, on all basis pairs.
    pub fn is_partial_homomorphism(&self) -> Result<bool> {
        let nb = self.b.dim();
        for i in 0..nb {
            for j in 0..nb {
                let br = self.space.bracket(&self.images[i], &self.images[j])?;
                if !br.in_domain || br.value != self.apply(self.b.product(i, j))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// φ ∘ f for a homomorphism f: B′ → B, given as a dim B × dim B′ matrix.
    pub fn precompose(&self, f: &ExactMatrix, b_prime: &Algebra) -> Result<ActorMorphism> {
        let images = (0..b_prime.dim())
            .map(|j| self.apply(&(0..f.rows()).map(|i| f.get(i, j).clone()).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        Ok(ActorMorphism {
            b: b_prime.clone(),
            space: self.space.clone(),
            images,
        })
    }
}

/// Whether φ comes from a derived action.
pub fn is_acting_morphism(v: &VarietySpec, phi: &ActorMorphism) -> Result<bool> {
    if phi.images.iter().any(|e| !phi.space.contains(e)) {
        return Err(Error::OutsideActor);
    }
    let act = DerivedAction::from_operators("candidate", &phi.b, &phi.space.algebra, &phi.images)?;
    validate_action(v, &act)
}

/// Fails unless the dim B × dim B′ matrix f is an algebra homomorphism B′ → B.
pub fn check_homomorphism(f: &ExactMatrix, b_prime: &Algebra, b: &Algebra) -> Result<()> {
    if f.rows() != b.dim() || f.cols() != b_prime.dim() {
        return Err(Error::Dimension(format!(
            "{}x{} map from dim {} to dim {}",
            f.rows(),
            f.cols(),
            b_prime.dim(),
            b.dim()
        )));
    }
    let col = |j: usize| (0..f.rows()).map(|i| f.get(i, j).clone()).collect::<Vec<_>>();
    for i in 0..b_prime.dim() {
        for j in 0..b_prime.dim() {
            let lhs = f.mul_vec(b_prime.product(i, j))?;
            let rhs = b.multiply(&col(i), &col(j))?;
            if lhs != rhs {
                return Err(Error::NotHomomorphism(format!(
                    "f({}·{}) differs from f({})f({})",
                    b_prime.labels()[i],
                    b_prime.labels()[j],
                    b_prime.labels()[i],
                    b_prime.labels()[j]
                )));
            }
        }
    }
    Ok(())
}

/// Change of base along f: B′ → B.
pub fn pullback_action(act: &DerivedAction, f: &ExactMatrix, b_prime: &Algebra) -> Result<DerivedAction> {
    check_homomorphism(f, b_prime, &act.b)?;
    let nx = act.x.dim();
    let ops: Vec<BiEndo> = (0..b_prime.dim())
        .map(|j| {
            let mut e = BiEndo::zero(act.x.field(), nx);
            for i in 0..act.b.dim() {
                let c = f.get(i, j);
                if !c.is_zero() {
                    e = e.add(&act.operator(i).scale(c))?;
                }
            }
            Ok(e)
        })
        .collect::<Result<_>>()?;
    DerivedAction::from_operators(&format!("{}_pullback", act.name), b_prime, &act.x, &ops)
}

/// Parses the action file grammar; `resolve` maps algebra names to algebras.
pub fn parse_action(text: &str, resolve: &dyn Fn(&str) -> Result<Algebra>) -> Result<DerivedAction> {
    let mut act: Option<DerivedAction> = None;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = strip_comment(raw);
        let Some((kw, rest, off)) = keyword(line) else {
            continue;
        };
        if kw == "action" {
            let mut c = Cursor::new(rest, ln, off);
            let name = c.ident()?;
            if c.ident()? != "of" {
                return Err(c.err("expected 'of'"));
            }
            let b = resolve(&c.ident()?)?;
            if c.ident()? != "on" {
                return Err(c.err("expected 'on'"));
            }
            let x = resolve(&c.ident()?)?;
            if !c.at_end() {
                return Err(c.err("trailing input"));
            }
            let mut a = DerivedAction::trivial(&b, &x)?;
            a.name = name;
            act = Some(a);
            continue;
        }
        let a = act.as_mut().ok_or(Error::Parse {
            line: ln,
            col: 1,
            msg: "product line before 'action'".into(),
        })?;
        let mut c = Cursor::new(line, ln, 0);
        let lhs = c.ident()?;
        c.expect('*')?;
        let rhs = c.ident()?;
        c.expect('=')?;
        let find = |alg: &Algebra, l: &str| alg.label_index(l);
        let xl = a.x.labels().to_vec();
        let lookup = |s: &str| xl.iter().position(|x| x == s);
        match (lhs.split_once(':'), rhs.split_once(':')) {
            (Some(("b", bl)), Some(("x", xl_))) => {
                let bi = find(&a.b, bl).ok_or_else(|| c.err(format!("unknown label 'b:{bl}'")))?;
                let xj = find(&a.x, xl_).ok_or_else(|| c.err(format!("unknown label 'x:{xl_}'")))?;
                let v = parse_combo(&mut c, a.x.field(), &lookup, a.x.dim())?;
                a.set_left(bi, xj, v);
            }
            (Some(("x", xl_)), Some(("b", bl))) => {
                let bi = find(&a.b, bl).ok_or_else(|| c.err(format!("unknown label 'b:{bl}'")))?;
                let xj = find(&a.x, xl_).ok_or_else(|| c.err(format!("unknown label 'x:{xl_}'")))?;
                let v = parse_combo(&mut c, a.x.field(), &lookup, a.x.dim())?;
                a.set_right(xj, bi, v);
            }
            _ => return Err(c.err("expected 'b:LABEL * x:LABEL' or 'x:LABEL * b:LABEL'")),
        }
    }
    act.ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "missing 'action' line".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian, fixture, heisenberg, mat2};
    use crate::exact_linalg::FieldSpec;
    use crate::variety::builtin_variety;
    use crate::weak_actor::compute_actor_space;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn var(n: &str) -> VarietySpec {
        builtin_variety(n).unwrap()
    }

    fn identity_action_text() -> &'static str {
        "action one of abelian2 on abelian1\nb:e1 * x:e1 = e1\nb:e2 * x:e1 = e1\nx:e1 * b:e1 = e1\nx:e1 * b:e2 = e1\n"
    }

    fn resolve(n: &str) -> Result<Algebra> {
        fixture(n).ok_or_else(|| Error::UnknownName(n.into()))
    }

    #[test]
    fn trivial_action_is_valid() {
        let v = var("nil2_com");
        let a = DerivedAction::trivial(&abelian(2, q()), &fixture("kronecker").unwrap()).unwrap();
        assert!(validate_action(&v, &a).unwrap());
        let s = semidirect(&v, &a).unwrap();
        assert_eq!(s.dim(), 5);
        assert_eq!(s.labels()[0], "b:e1");
        assert_eq!(s.labels()[2], "x:e1");
    }

    #[test]
    fn identity_maps_are_not_nil2_actions() {
        let a = parse_action(identity_action_text(), &resolve).unwrap();
        assert!(!validate_action(&var("nil2_com"), &a).unwrap());
        assert!(matches!(semidirect(&var("nil2_com"), &a), Err(Error::InvalidAction(_))));
        let space = compute_actor_space(&var("nil2_com"), &abelian(1, q()), None).unwrap();
        let phi = ActorMorphism {
            b: abelian(2, q()),
            space: space.clone(),
            images: (0..2).map(|i| a.operator(i)).collect(),
        };
        assert!(!is_acting_morphism(&var("nil2_com"), &phi).unwrap());
        assert!(matches!(tau(&var("nil2_com"), &a, &space), Err(Error::InvalidAction(_))));
    }

    #[test]
    fn regular_matrix_action() {
        let x = mat2(q());
        let a = DerivedAction::regular(&x);
        assert!(validate_action(&var("assoc"), &a).unwrap());
        let space = compute_actor_space(&var("assoc"), &x, None).unwrap();
        let phi = tau(&var("assoc"), &a, &space).unwrap();
        for i in 0..4 {
            assert_eq!(phi.images[i], x.mult_ops(&x.basis_vector(i)).unwrap());
        }
        assert!(is_acting_morphism(&var("assoc"), &phi).unwrap());
    }

    #[test]
    fn heisenberg_extension() {
        let x = heisenberg(1, q());
        let b = abelian(1, q());
        let mut a = DerivedAction::trivial(&b, &x).unwrap();
        let h = x.basis_vector(2);
        a.set_left(0, 0, h.clone());
        a.set_right(0, 0, h.iter().map(|s| -s).collect());
        let v = var("nil2_acom");
        let s = semidirect(&v, &a).unwrap();
        assert_eq!(s.dim(), 4);
        assert!(s.in_variety(&v).unwrap());
    }

    #[test]
    fn pullback_and_naturality() {
        let x = mat2(q());
        let a = DerivedAction::regular(&x);
        let v = var("assoc");
        let space = compute_actor_space(&v, &x, None).unwrap();
        let id = ExactMatrix::identity(q(), 4);
        assert_eq!(pullback_action(&a, &id, &x).unwrap().operator(2), a.operator(2));
        // the diagonal matrices e11, e22 as a subalgebra
        let d = {
            let mut d = Algebra::zero("diag", q(), vec!["p".into(), "r".into()]);
            d.set_product(0, 0, vec![q().one(), q().zero()]).unwrap();
            d.set_product(1, 1, vec![q().zero(), q().one()]).unwrap();
            d
        };
        let mut f = ExactMatrix::zeros(q(), 4, 2);
        f.set(0, 0, q().one());
        f.set(3, 1, q().one());
        let pb = pullback_action(&a, &f, &d).unwrap();
        assert!(validate_action(&v, &pb).unwrap());
        let lhs = tau(&v, &pb, &space).unwrap();
        let rhs = tau(&v, &a, &space).unwrap().precompose(&f, &d).unwrap();
        assert_eq!(lhs.images, rhs.images);
        let zero = pullback_action(&a, &ExactMatrix::zeros(q(), 4, 2), &d).unwrap();
        assert_eq!(zero, {
            let mut t = DerivedAction::trivial(&d, &x).unwrap();
            t.name = zero.name.clone();
            t
        });
        let mut bad = ExactMatrix::zeros(q(), 4, 2);
        bad.set(1, 0, q().one());
        assert!(matches!(pullback_action(&a, &bad, &d), Err(Error::NotHomomorphism(_))));
    }

    #[test]
    fn action_text_roundtrip() {
        let a = parse_action(identity_action_text(), &resolve).unwrap();
        assert_eq!(parse_action(&a.to_text(), &resolve).unwrap(), a);
        assert!(matches!(
            parse_action("action z of abelian1 on abelian1\nb:e1 * x:e9 = e1", &resolve),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
