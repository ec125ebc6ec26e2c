//! Core syntax: de Bruijn indexed terms.

use std::fmt;
use std::sync::Arc;

/// Binder name hints. Hints are carried for printing only and never take part
/// in equality.
pub type Name = Arc<str>;

pub type RcTerm = Arc<Term>;

#[derive(Clone, Debug)]
pub enum Term {
    Var(usize),
    Universe(u32),
    Pi(Name, RcTerm, RcTerm),
    Lambda(Name, RcTerm),
    App(RcTerm, RcTerm),
    Sigma(Name, RcTerm, RcTerm),
    Pair(RcTerm, RcTerm),
    Proj1(RcTerm),
    Proj2(RcTerm),
    /// `Id A x y`
    Id(RcTerm, RcTerm, RcTerm),
    Refl(RcTerm),
    /// Based path induction `J A a C d b p` where `C : (x : A) -> Id A a x -> Type k`,
    /// `d : C a (refl a)` and `p : Id A a b`.
    J(Box<JTerm>),
    /// `let x : A := t in body`
    Let(Name, RcTerm, RcTerm, RcTerm),
    Const(Name),
}

#[derive(Clone, Debug)]
pub struct JTerm {
    pub ty: RcTerm,
    pub base: RcTerm,
    pub motive: RcTerm,
    pub case: RcTerm,
    pub other: RcTerm,
    pub path: RcTerm,
}

/// Byte range in a source file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }

    pub fn merge(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }

    /// One-based line and column of the span start.
    pub fn line_col(&self, src: &str) -> (usize, usize) {
        let upto = &src[..self.start.min(src.len())];
        let line = upto.matches('\n').count() + 1;
        let col = upto.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Definition,
    Axiom,
}

/// A top-level definition or axiom.
#[derive(Clone, Debug)]
pub struct Declaration {
    pub kind: DeclKind,
    pub name: Name,
    pub ty: RcTerm,
    /// Absent for axioms.
    pub body: Option<RcTerm>,
    pub span: Span,
}

impl Declaration {
    /// Equality up to binder hints, ignoring spans.
    pub fn same_structure(&self, other: &Declaration) -> bool {
        self.kind == other.kind
            && self.name == other.name
            && alpha_equal(&self.ty, &other.ty)
            && match (&self.body, &other.body) {
                (Some(a), Some(b)) => alpha_equal(a, b),
                (None, None) => true,
                _ => false,
            }
    }
}

/// Raised when a shift would push a free index below zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("index underflow while shifting variable {index} by {amount}")]
pub struct ShiftUnderflow {
    pub index: usize,
    pub amount: isize,
}

impl Term {
    pub fn var(index: usize) -> RcTerm {
        Arc::new(Term::Var(index))
    }

    pub fn universe(level: u32) -> RcTerm {
        Arc::new(Term::Universe(level))
    }

    pub fn pi(name: &str, dom: RcTerm, cod: RcTerm) -> RcTerm {
        Arc::new(Term::Pi(name.into(), dom, cod))
    }

    pub fn lambda(name: &str, body: RcTerm) -> RcTerm {
        Arc::new(Term::Lambda(name.into(), body))
    }

    pub fn app(fun: RcTerm, arg: RcTerm) -> RcTerm {
        Arc::new(Term::App(fun, arg))
    }

    pub fn apps(fun: RcTerm, args: impl IntoIterator<Item = RcTerm>) -> RcTerm {
        args.into_iter().fold(fun, Term::app)
    }

    pub fn sigma(name: &str, fst: RcTerm, snd: RcTerm) -> RcTerm {
        Arc::new(Term::Sigma(name.into(), fst, snd))
    }

    pub fn pair(fst: RcTerm, snd: RcTerm) -> RcTerm {
        Arc::new(Term::Pair(fst, snd))
    }

    pub fn proj1(t: RcTerm) -> RcTerm {
        Arc::new(Term::Proj1(t))
    }

    pub fn proj2(t: RcTerm) -> RcTerm {
        Arc::new(Term::Proj2(t))
    }

    pub fn id(ty: RcTerm, lhs: RcTerm, rhs: RcTerm) -> RcTerm {
        Arc::new(Term::Id(ty, lhs, rhs))
    }

    pub fn refl(t: RcTerm) -> RcTerm {
        Arc::new(Term::Refl(t))
    }

    pub fn j(
        ty: RcTerm,
        base: RcTerm,
        motive: RcTerm,
        case: RcTerm,
        other: RcTerm,
        path: RcTerm,
    ) -> RcTerm {
        Arc::new(Term::J(Box::new(JTerm {
            ty,
            base,
            motive,
            case,
            other,
            path,
        })))
    }

    pub fn let_(name: &str, annot: RcTerm, bound: RcTerm, body: RcTerm) -> RcTerm {
        Arc::new(Term::Let(name.into(), annot, bound, body))
    }

    pub fn constant(name: &str) -> RcTerm {
        Arc::new(Term::Const(name.into()))
    }

    /// Size in nodes, used to bound generated terms and report statistics.
    pub fn size(&self) -> usize {
        let mut n = 1;
        self.for_each_child(|c, _| n += c.size());
        n
    }

    /// Visit immediate subterms together with the number of binders entered.
    pub fn for_each_child(&self, mut f: impl FnMut(&Term, usize)) {
        match self {
            Term::Var(_) | Term::Universe(_) | Term::Const(_) => {}
            Term::Pi(_, a, b) | Term::Sigma(_, a, b) => {
                f(a, 0);
                f(b, 1);
            }
            Term::Lambda(_, b) => f(b, 1),
            Term::App(a, b) | Term::Pair(a, b) => {
                f(a, 0);
                f(b, 0);
            }
            Term::Proj1(t) | Term::Proj2(t) | Term::Refl(t) => f(t, 0),
            Term::Id(a, x, y) => {
                f(a, 0);
                f(x, 0);
                f(y, 0);
            }
            Term::J(j) => {
                f(&j.ty, 0);
                f(&j.base, 0);
                f(&j.motive, 0);
                f(&j.case, 0);
                f(&j.other, 0);
                f(&j.path, 0);
            }
            Term::Let(_, a, t, b) => {
                f(a, 0);
                f(t, 0);
                f(b, 1);
            }
        }
    }

    /// True when every variable index is below `depth` plus the binders above it.
    pub fn is_closed_under(&self, depth: usize) -> bool {
        match self {
            Term::Var(i) => *i < depth,
            _ => {
                let mut ok = true;
                self.for_each_child(|c, k| ok = ok && c.is_closed_under(depth + k));
                ok
            }
        }
    }

    /// Names of every constant mentioned in the term, in first-occurrence order.
    pub fn constants(&self, out: &mut Vec<Name>) {
        if let Term::Const(name) = self {
            if !out.contains(name) {
                out.push(name.clone());
            }
        }
        self.for_each_child(|c, _| c.constants(out));
    }
}

/// Adjust every free index `>= cutoff` by `amount`.
pub fn shift(t: &Term, cutoff: usize, amount: isize) -> Result<RcTerm, ShiftUnderflow> {
    map_vars(t, cutoff, &mut |index, depth| {
        if index < depth {
            return Ok(Term::Var(index));
        }
        let shifted = index as isize + amount;
        // Binders entered below the cutoff still count: a free variable must
        // stay free.
        if shifted < (depth - cutoff) as isize {
            return Err(ShiftUnderflow { index, amount });
        }
        Ok(Term::Var(shifted as usize))
    })
}

fn map_vars<E>(
    t: &Term,
    depth: usize,
    f: &mut impl FnMut(usize, usize) -> Result<Term, E>,
) -> Result<RcTerm, E> {
    if let Term::Var(i) = t {
        return f(*i, depth).map(Arc::new);
    }
    let mut go = |t: &RcTerm, k: usize| map_vars(t, depth + k, &mut *f);
    Ok(Arc::new(match t {
        Term::Var(_) => unreachable!(),
        Term::Universe(_) | Term::Const(_) => t.clone(),
        Term::Pi(n, a, b) => Term::Pi(n.clone(), go(a, 0)?, go(b, 1)?),
        Term::Sigma(n, a, b) => Term::Sigma(n.clone(), go(a, 0)?, go(b, 1)?),
        Term::Lambda(n, b) => Term::Lambda(n.clone(), go(b, 1)?),
        Term::App(a, b) => Term::App(go(a, 0)?, go(b, 0)?),
        Term::Pair(a, b) => Term::Pair(go(a, 0)?, go(b, 0)?),
        Term::Proj1(a) => Term::Proj1(go(a, 0)?),
        Term::Proj2(a) => Term::Proj2(go(a, 0)?),
        Term::Refl(a) => Term::Refl(go(a, 0)?),
        Term::Id(a, x, y) => Term::Id(go(a, 0)?, go(x, 0)?, go(y, 0)?),
        Term::J(j) => Term::J(Box::new(JTerm {
            ty: go(&j.ty, 0)?,
            base: go(&j.base, 0)?,
            motive: go(&j.motive, 0)?,
            case: go(&j.case, 0)?,
            other: go(&j.other, 0)?,
            path: go(&j.path, 0)?,
        })),
        Term::Let(n, a, v, b) => Term::Let(n.clone(), go(a, 0)?, go(v, 0)?, go(b, 1)?),
    }))
}

/// Structural equality ignoring binder hints.
pub fn alpha_equal(t: &Term, u: &Term) -> bool {
    match (t, u) {
        (Term::Var(i), Term::Var(j)) => i == j,
        (Term::Universe(i), Term::Universe(j)) => i == j,
        (Term::Const(a), Term::Const(b)) => a == b,
        (Term::Pi(_, a, b), Term::Pi(_, c, d)) | (Term::Sigma(_, a, b), Term::Sigma(_, c, d)) => {
            alpha_equal(a, c) && alpha_equal(b, d)
        }
        (Term::Lambda(_, a), Term::Lambda(_, b)) => alpha_equal(a, b),
        (Term::App(a, b), Term::App(c, d)) | (Term::Pair(a, b), Term::Pair(c, d)) => {
            alpha_equal(a, c) && alpha_equal(b, d)
        }
        (Term::Proj1(a), Term::Proj1(b))
        | (Term::Proj2(a), Term::Proj2(b))
        | (Term::Refl(a), Term::Refl(b)) => alpha_equal(a, b),
        (Term::Id(a, x, y), Term::Id(b, z, w)) => {
            alpha_equal(a, b) && alpha_equal(x, z) && alpha_equal(y, w)
        }
        (Term::J(j), Term::J(k)) => {
            alpha_equal(&j.ty, &k.ty)
                && alpha_equal(&j.base, &k.base)
                && alpha_equal(&j.motive, &k.motive)
                && alpha_equal(&j.case, &k.case)
                && alpha_equal(&j.other, &k.other)
                && alpha_equal(&j.path, &k.path)
        }
        (Term::Let(_, a, v, b), Term::Let(_, c, w, d)) => {
            alpha_equal(a, c) && alpha_equal(v, w) && alpha_equal(b, d)
        }
        _ => false,
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        alpha_equal(self, other)
    }
}

impl Eq for Term {}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::surface::print_term(self, &[]))
    }
}
