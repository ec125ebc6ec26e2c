//! Shared test fixtures: a small signature of opaque constants, a generator of
//! well-typed closed terms over it, and a reference normalizer that works by
//! naive substitution on syntax.

#![allow(dead_code)]

pub mod corpus_fixtures;

use std::collections::HashMap;
use std::sync::Arc;

use hott_kernel::checker::{check_module, CheckOptions, Signature};
use hott_kernel::surface::parse_source;
use hott_kernel::syntax::{alpha_equal, JTerm, Name, RcTerm, Term};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const BASE: &str = "
axiom A : Type 0
axiom B : Type 0
axiom a : A
axiom a2 : A
axiom b : B
axiom P : A -> Type 0
axiom pa : P a
axiom f : A -> A
axiom g : A -> B
axiom h : (x : A) -> P x
axiom s : (x : A) * P x
axiom k : A * B
axiom q : Id A a a2
axiom r : Id A a a
axiom F : (A -> A) -> B
def idA : A -> A := fun x => x
def swap : A * B -> B * A := fun t => (t.2, t.1)
";

pub fn base_signature() -> Signature {
    let m = parse_source("base", BASE).expect("base parses");
    let (sig, report) = check_module(&[m], CheckOptions::default());
    assert!(report.all_ok(), "base signature must check");
    sig
}

fn rc(t: Term) -> RcTerm {
    Arc::new(t)
}

/// Rebuild `t`, replacing each variable by `f(index, binders passed)`.
fn map_vars(t: &Term, depth: usize, f: &dyn Fn(usize, usize) -> RcTerm) -> RcTerm {
    let go = |u: &RcTerm, k: usize| map_vars(u, depth + k, f);
    match t {
        Term::Var(i) => f(*i, depth),
        Term::Universe(_) | Term::Const(_) => rc(t.clone()),
        Term::Pi(n, a, b) => rc(Term::Pi(n.clone(), go(a, 0), go(b, 1))),
        Term::Sigma(n, a, b) => rc(Term::Sigma(n.clone(), go(a, 0), go(b, 1))),
        Term::Lambda(n, b) => rc(Term::Lambda(n.clone(), go(b, 1))),
        Term::App(x, y) => rc(Term::App(go(x, 0), go(y, 0))),
        Term::Pair(x, y) => rc(Term::Pair(go(x, 0), go(y, 0))),
        Term::Proj1(x) => rc(Term::Proj1(go(x, 0))),
        Term::Proj2(x) => rc(Term::Proj2(go(x, 0))),
        Term::Refl(x) => rc(Term::Refl(go(x, 0))),
        Term::Id(a, x, y) => rc(Term::Id(go(a, 0), go(x, 0), go(y, 0))),
        Term::J(j) => rc(Term::J(Box::new(JTerm {
            ty: go(&j.ty, 0),
            base: go(&j.base, 0),
            motive: go(&j.motive, 0),
            case: go(&j.case, 0),
            other: go(&j.other, 0),
            path: go(&j.path, 0),
        }))),
        Term::Let(n, a, v, b) => rc(Term::Let(n.clone(), go(a, 0), go(v, 0), go(b, 1))),
    }
}

pub fn lift(t: &Term, by: usize) -> RcTerm {
    map_vars(t, 0, &|i, d| rc(Term::Var(if i >= d { i + by } else { i })))
}

/// Drop the innermost binder; `None` if `t` mentions it.
pub fn strengthen(t: &Term) -> Option<RcTerm> {
    if mentions(t, 0) {
        return None;
    }
    Some(map_vars(t, 0, &|i, d| rc(Term::Var(if i > d { i - 1 } else { i }))))
}

pub fn mentions(t: &Term, index: usize) -> bool {
    let found = std::cell::Cell::new(false);
    map_vars(t, 0, &|i, d| {
        if i == index + d {
            found.set(true);
        }
        rc(Term::Var(i))
    });
    found.get()
}

/// `body[0 := arg]` for a body under one binder.
pub fn subst_top(body: &Term, arg: &Term) -> RcTerm {
    map_vars(body, 0, &|i, d| {
        if i == d {
            lift(arg, d)
        } else if i > d {
            rc(Term::Var(i - 1))
        } else {
            rc(Term::Var(i))
        }
    })
}

/// Reference semantics: β-normalization by repeated substitution, followed by
/// a separate type-directed η-expansion pass.
pub struct Oracle {
    defs: HashMap<Name, RcTerm>,
    types: HashMap<Name, RcTerm>,
}

impl Oracle {
    pub fn new(sig: &Signature) -> Oracle {
        let mut o = Oracle {
            defs: HashMap::new(),
            types: HashMap::new(),
        };
        for e in sig.entries() {
            let ty = o.norm(&e.decl.ty);
            o.types.insert(e.decl.name.clone(), ty);
            if let Some(body) = &e.decl.body {
                o.defs.insert(e.decl.name.clone(), body.clone());
            }
        }
        o
    }

    pub fn const_type(&self, name: &str) -> Option<&RcTerm> {
        self.types.get(name)
    }

    pub fn constants(&self) -> Vec<(Name, RcTerm)> {
        let mut v: Vec<_> = self.types.iter().map(|(n, t)| (n.clone(), t.clone())).collect();
        v.sort_by(|x, y| x.0.cmp(&y.0));
        v
    }

    pub fn norm(&self, t: &Term) -> RcTerm {
        match t {
            Term::Var(_) | Term::Universe(_) => rc(t.clone()),
            Term::Const(c) => match self.defs.get(c) {
                Some(body) => self.norm(body),
                None => rc(t.clone()),
            },
            Term::Pi(n, a, b) => rc(Term::Pi(n.clone(), self.norm(a), self.norm(b))),
            Term::Sigma(n, a, b) => rc(Term::Sigma(n.clone(), self.norm(a), self.norm(b))),
            Term::Lambda(n, b) => rc(Term::Lambda(n.clone(), self.norm(b))),
            Term::App(x, y) => {
                let x = self.norm(x);
                match x.as_ref() {
                    Term::Lambda(_, body) => self.norm(&subst_top(body, y)),
                    _ => rc(Term::App(x, self.norm(y))),
                }
            }
            Term::Pair(x, y) => rc(Term::Pair(self.norm(x), self.norm(y))),
            Term::Proj1(p) => match self.norm(p).as_ref() {
                Term::Pair(x, _) => x.clone(),
                _ => rc(Term::Proj1(self.norm(p))),
            },
            Term::Proj2(p) => match self.norm(p).as_ref() {
                Term::Pair(_, y) => y.clone(),
                _ => rc(Term::Proj2(self.norm(p))),
            },
            Term::Id(a, x, y) => rc(Term::Id(self.norm(a), self.norm(x), self.norm(y))),
            Term::Refl(x) => rc(Term::Refl(self.norm(x))),
            Term::J(j) => {
                let path = self.norm(&j.path);
                if let Term::Refl(_) = path.as_ref() {
                    return self.norm(&j.case);
                }
                rc(Term::J(Box::new(JTerm {
                    ty: self.norm(&j.ty),
                    base: self.norm(&j.base),
                    motive: self.norm(&j.motive),
                    case: self.norm(&j.case),
                    other: self.norm(&j.other),
                    path,
                })))
            }
            Term::Let(_, _, v, body) => self.norm(&subst_top(body, v)),
        }
    }

    fn var_type(ctx: &[RcTerm], i: usize) -> RcTerm {
        lift(&ctx[ctx.len() - 1 - i], i + 1)
    }

    /// η-long form of a β-normal term at a β-normal type.
    pub fn eta_long(&self, ctx: &[RcTerm], t: &RcTerm, ty: &RcTerm) -> RcTerm {
        match ty.as_ref() {
            Term::Pi(n, dom, cod) => {
                let body = match t.as_ref() {
                    Term::Lambda(_, body) => body.clone(),
                    _ => rc(Term::App(lift(t, 1), rc(Term::Var(0)))),
                };
                let mut inner = ctx.to_vec();
                inner.push(dom.clone());
                rc(Term::Lambda(n.clone(), self.eta_long(&inner, &body, cod)))
            }
            Term::Sigma(_, a, b) => {
                let (x, y) = match t.as_ref() {
                    Term::Pair(x, y) => (x.clone(), y.clone()),
                    _ => (rc(Term::Proj1(t.clone())), rc(Term::Proj2(t.clone()))),
                };
                let b = self.norm(&subst_top(b, &x));
                rc(Term::Pair(self.eta_long(ctx, &x, a), self.eta_long(ctx, &y, &b)))
            }
            Term::Universe(_) => self.eta_type(ctx, t),
            Term::Id(a, _, _) => match t.as_ref() {
                Term::Refl(x) => rc(Term::Refl(self.eta_long(ctx, x, a))),
                _ => self.eta_neutral(ctx, t).0,
            },
            _ => self.eta_neutral(ctx, t).0,
        }
    }

    pub fn eta_type(&self, ctx: &[RcTerm], t: &RcTerm) -> RcTerm {
        match t.as_ref() {
            Term::Universe(_) => t.clone(),
            Term::Pi(n, a, b) | Term::Sigma(n, a, b) => {
                let mut inner = ctx.to_vec();
                inner.push(a.clone());
                let (a, b) = (self.eta_type(ctx, a), self.eta_type(&inner, b));
                rc(match t.as_ref() {
                    Term::Pi(..) => Term::Pi(n.clone(), a, b),
                    _ => Term::Sigma(n.clone(), a, b),
                })
            }
            Term::Id(a, x, y) => rc(Term::Id(
                self.eta_type(ctx, a),
                self.eta_long(ctx, x, a),
                self.eta_long(ctx, y, a),
            )),
            _ => self.eta_neutral(ctx, t).0,
        }
    }

    /// η-long form of a neutral term together with its β-normal type.
    fn eta_neutral(&self, ctx: &[RcTerm], t: &RcTerm) -> (RcTerm, RcTerm) {
        match t.as_ref() {
            Term::Var(i) => (t.clone(), Self::var_type(ctx, *i)),
            Term::Const(c) => (t.clone(), self.types[c].clone()),
            Term::App(x, y) => {
                let (x, xty) = self.eta_neutral(ctx, x);
                let Term::Pi(_, dom, cod) = xty.as_ref() else {
                    panic!("application of a non-function in the oracle")
                };
                let ty = self.norm(&subst_top(cod, y));
                (rc(Term::App(x, self.eta_long(ctx, y, dom))), ty)
            }
            Term::Proj1(p) => {
                let (pe, pty) = self.eta_neutral(ctx, p);
                let Term::Sigma(_, a, _) = pty.as_ref() else { panic!("bad projection") };
                (rc(Term::Proj1(pe)), a.clone())
            }
            Term::Proj2(p) => {
                let (pe, pty) = self.eta_neutral(ctx, p);
                let Term::Sigma(_, _, b) = pty.as_ref() else { panic!("bad projection") };
                let ty = self.norm(&subst_top(b, &rc(Term::Proj1(p.clone()))));
                (rc(Term::Proj2(pe)), ty)
            }
            Term::J(j) => {
                let (path, _) = self.eta_neutral(ctx, &j.path);
                let Term::Lambda(xn, inner) = j.motive.as_ref() else { panic!("motive not a lambda") };
                let Term::Lambda(pn, body) = inner.as_ref() else { panic!("motive not binary") };
                let mut mctx = ctx.to_vec();
                mctx.push(j.ty.clone());
                mctx.push(rc(Term::Id(lift(&j.ty, 1), lift(&j.base, 1), rc(Term::Var(0)))));
                let motive = rc(Term::Lambda(
                    xn.clone(),
                    rc(Term::Lambda(pn.clone(), self.eta_type(&mctx, body))),
                ));
                let at = |x: &RcTerm, p: RcTerm| {
                    self.norm(&rc(Term::App(rc(Term::App(j.motive.clone(), x.clone())), p)))
                };
                let case_ty = at(&j.base, rc(Term::Refl(j.base.clone())));
                let ty = at(&j.other, j.path.clone());
                let e = JTerm {
                    ty: self.eta_type(ctx, &j.ty),
                    base: self.eta_long(ctx, &j.base, &j.ty),
                    motive,
                    case: self.eta_long(ctx, &j.case, &case_ty),
                    other: self.eta_long(ctx, &j.other, &j.ty),
                    path,
                };
                (rc(Term::J(Box::new(e))), ty)
            }
            _ => panic!("eta_neutral on a non-neutral term"),
        }
    }

    /// Full reference normal form of a closed term at a closed type.
    pub fn normal_form(&self, t: &Term, ty: &Term) -> RcTerm {
        self.eta_long(&[], &self.norm(t), &self.norm(ty))
    }
}

/// Generator of closed, well-typed terms over `BASE`. Generation is
/// type-directed; types are kept β-normal so that variables and constants can
/// be matched against the goal syntactically.
pub struct Gen<'o> {
    pub rng: StdRng,
    oracle: &'o Oracle,
    /// Remaining generation steps for the current term; bounds failed searches.
    fuel: usize,
}

fn c(name: &str) -> RcTerm {
    Term::constant(name)
}

impl<'o> Gen<'o> {
    pub fn new(oracle: &'o Oracle, seed: u64) -> Gen<'o> {
        Gen {
            rng: StdRng::seed_from_u64(seed),
            oracle,
            fuel: 0,
        }
    }

    /// A closed term and its type, generated with the given depth budget.
    pub fn closed(&mut self, depth: usize) -> (RcTerm, RcTerm) {
        loop {
            self.fuel = 400;
            let ty = self.ty(&[], 2);
            if let Some(t) = self.term(&[], &ty, depth) {
                return (t, ty);
            }
        }
    }

    pub fn ty(&mut self, ctx: &[RcTerm], depth: usize) -> RcTerm {
        let t = self.ty_raw(ctx, depth, true);
        self.oracle.norm(&t)
    }

    /// A type in `Type 0`.
    fn small_ty(&mut self, ctx: &[RcTerm], depth: usize) -> RcTerm {
        let t = self.ty_raw(ctx, depth, false);
        self.oracle.norm(&t)
    }

    fn ty_raw(&mut self, ctx: &[RcTerm], depth: usize, large: bool) -> RcTerm {
        let pick = self.rng.gen_range(0..match (depth, large) {
            (0, _) => 4,
            (_, false) => 8,
            _ => 9,
        });
        match pick {
            0 => c("A"),
            1 => c("B"),
            2 => {
                let t = self.term_or(ctx, &c("A"), 1, c("a"));
                Term::app(c("P"), t)
            }
            3 => {
                let x = self.term_or(ctx, &c("A"), 1, c("a"));
                let y = if self.rng.gen_bool(0.5) {
                    x.clone()
                } else {
                    self.term_or(ctx, &c("A"), 1, c("a2"))
                };
                Term::id(c("A"), x, y)
            }
            4 => {
                let a = self.ty_raw(ctx, depth - 1, large);
                let b = self.ty_raw(ctx, depth - 1, large);
                Term::pi("x", a, lift(&b, 1))
            }
            5 => {
                let a = self.ty_raw(ctx, depth - 1, large);
                let b = self.ty_raw(ctx, depth - 1, large);
                Term::sigma("x", a, lift(&b, 1))
            }
            6 => Term::pi("x", c("A"), Term::app(c("P"), Term::var(0))),
            7 => Term::sigma("x", c("A"), Term::app(c("P"), Term::var(0))),
            _ => Term::pi("x", c("A"), Term::universe(0)),
        }
    }

    fn term_or(&mut self, ctx: &[RcTerm], ty: &RcTerm, depth: usize, fallback: RcTerm) -> RcTerm {
        let t = self.term(ctx, ty, depth);
        t.unwrap_or_else(|| lift(&fallback, 0))
    }

    pub fn term(&mut self, ctx: &[RcTerm], ty: &RcTerm, depth: usize) -> Option<RcTerm> {
        for _ in 0..8 {
            if self.fuel == 0 {
                return None;
            }
            self.fuel -= 1;
            let kind = self.rng.gen_range(0..if depth == 0 { 5 } else { 11 });
            let t = match kind {
                0..=2 => self.intro(ctx, ty, depth),
                3..=4 => self.elim(ctx, ty, depth),
                5 => self.let_redex(ctx, ty, depth),
                6 => self.beta_redex(ctx, ty, depth),
                7 => self.proj_redex(ctx, ty, depth),
                8 => self.j_refl(ctx, ty, depth),
                _ => self.j_stuck(ctx, ty, depth),
            };
            if t.is_some() {
                return t;
            }
        }
        None
    }

    fn with(ctx: &[RcTerm], ty: RcTerm) -> Vec<RcTerm> {
        let mut v = ctx.to_vec();
        v.push(ty);
        v
    }

    fn intro(&mut self, ctx: &[RcTerm], ty: &RcTerm, depth: usize) -> Option<RcTerm> {
        let d = depth.saturating_sub(1);
        match ty.as_ref() {
            Term::Pi(n, dom, cod) => {
                let body = self.term(&Self::with(ctx, dom.clone()), cod, d)?;
                Some(Term::lambda(if n.is_empty() { "x" } else { n }, body))
            }
            Term::Sigma(_, a, b) => {
                let x = self.term(ctx, a, d)?;
                let bty = self.oracle.norm(&subst_top(b, &x));
                let y = self.term(ctx, &bty, d)?;
                Some(Term::pair(x, y))
            }
            Term::Id(_, x, y) if alpha_equal(x, y) => Some(Term::refl(x.clone())),
            Term::Universe(0) => Some(self.small_ty(ctx, d.min(1))),
            _ => None,
        }
    }

    /// Variables and constants in scope, with their types.
    fn heads(&self, ctx: &[RcTerm]) -> Vec<(RcTerm, RcTerm)> {
        let mut v: Vec<(RcTerm, RcTerm)> = (0..ctx.len())
            .map(|i| (Term::var(i), Oracle::var_type(ctx, i)))
            .collect();
        for (n, t) in self.oracle.constants() {
            v.push((Term::constant(&n), t));
        }
        v
    }

    fn elim(&mut self, ctx: &[RcTerm], ty: &RcTerm, depth: usize) -> Option<RcTerm> {
        let mut heads = self.heads(ctx);
        heads.shuffle(&mut self.rng);
        for (head, hty) in heads {
            if alpha_equal(&hty, ty) {
                return Some(head);
            }
            match hty.as_ref() {
                Term::Pi(_, dom, cod) => match strengthen(cod) {
                    Some(cod) if depth > 0 && alpha_equal(&cod, ty) => {
                        if let Some(arg) = self.term(ctx, dom, depth - 1) {
                            return Some(Term::app(head, arg));
                        }
                    }
                    Some(_) => {}
                    None => {
                        // (x : A) -> X x at a goal X t
                        if let (Term::App(fam, x), Term::App(gfam, arg)) = (cod.as_ref(), ty.as_ref()) {
                            let fam = strengthen(fam);
                            if matches!(x.as_ref(), Term::Var(0))
                                && fam.is_some_and(|fam| alpha_equal(&fam, gfam))
                            {
                                return Some(Term::app(head, arg.clone()));
                            }
                        }
                    }
                },
                Term::Sigma(_, a, b) => {
                    if alpha_equal(a, ty) {
                        return Some(Term::proj1(head));
                    }
                    let bty = self.oracle.norm(&subst_top(b, &Term::proj1(head.clone())));
                    if alpha_equal(&bty, ty) {
                        return Some(Term::proj2(head));
                    }
                }
                _ => {}
            }
        }
        None
    }

    fn let_redex(&mut self, ctx: &[RcTerm], ty: &RcTerm, depth: usize) -> Option<RcTerm> {
        let aty = self.ty(ctx, 1);
        let v = self.term(ctx, &aty, depth - 1)?;
        let body = self.term(&Self::with(ctx, aty.clone()), &lift(ty, 1), depth - 1)?;
        Some(Term::let_("y", aty, v, body))
    }

    /// `let fn : T -> ty := fun x => body in fn arg`
    fn beta_redex(&mut self, ctx: &[RcTerm], ty: &RcTerm, depth: usize) -> Option<RcTerm> {
        let aty = self.ty(ctx, 1);
        let body = self.term(&Self::with(ctx, aty.clone()), &lift(ty, 1), depth - 1)?;
        let arg = self.term(ctx, &aty, depth - 1)?;
        let fty = Term::pi("x", aty, lift(ty, 1));
        Some(Term::let_(
            "fn",
            fty,
            Term::lambda("x", body),
            Term::app(Term::var(0), lift(&arg, 1)),
        ))
    }

    /// `let pr : ty * T := (t, u) in pr.1`, or the mirror image.
    fn proj_redex(&mut self, ctx: &[RcTerm], ty: &RcTerm, depth: usize) -> Option<RcTerm> {
        let other = self.ty(ctx, 1);
        let t = self.term(ctx, ty, depth - 1)?;
        let u = self.term(ctx, &other, depth - 1)?;
        Some(if self.rng.gen_bool(0.5) {
            Term::let_("pr", Term::sigma("x", ty.clone(), lift(&other, 1)), Term::pair(t, u), Term::proj1(Term::var(0)))
        } else {
            Term::let_("pr", Term::sigma("x", other, lift(ty, 1)), Term::pair(u, t), Term::proj2(Term::var(0)))
        })
    }

    /// Path induction on `refl`, with a constant motive.
    fn j_refl(&mut self, ctx: &[RcTerm], ty: &RcTerm, depth: usize) -> Option<RcTerm> {
        let aty = self.ty(ctx, 0);
        let base = self.term(ctx, &aty, depth - 1)?;
        let case = self.term(ctx, ty, depth - 1)?;
        let motive = Term::lambda("z", Term::lambda("e", lift(ty, 2)));
        Some(Term::j(aty, base.clone(), motive, case, base.clone(), Term::refl(base)))
    }

    /// Path induction stuck on a path variable or constant.
    fn j_stuck(&mut self, ctx: &[RcTerm], ty: &RcTerm, depth: usize) -> Option<RcTerm> {
        let mut heads = self.heads(ctx);
        heads.shuffle(&mut self.rng);
        for (head, hty) in heads {
            let Term::Id(aty, x, y) = hty.as_ref() else { continue };
            // A dependent motive when the goal is the family at the endpoint.
            if let Term::App(fam, at) = ty.as_ref() {
                if alpha_equal(at, y) && alpha_equal(fam, &c("P")) && alpha_equal(aty, &c("A")) {
                    let case_ty = Term::app(c("P"), x.clone());
                    let case = self.term(ctx, &case_ty, depth - 1)?;
                    let motive = Term::lambda("z", Term::lambda("e", Term::app(c("P"), Term::var(1))));
                    return Some(Term::j(aty.clone(), x.clone(), motive, case, y.clone(), head));
                }
            }
            let case = self.term(ctx, ty, depth - 1)?;
            let motive = Term::lambda("z", Term::lambda("e", lift(ty, 2)));
            return Some(Term::j(aty.clone(), x.clone(), motive, case, y.clone(), head));
        }
        None
    }
}
