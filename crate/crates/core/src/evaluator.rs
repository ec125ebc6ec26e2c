//! Normalization by evaluation.
//!
//! Terms are evaluated into a semantic domain where variables are de Bruijn
//! *levels* and binders are closures. Neutral values carry their type so that
//! read-back and conversion can be type-directed, which is what makes the
//! η-laws for Π and Σ decidable.

use std::collections::HashMap;
use std::sync::Arc;

use crate::syntax::{JTerm, Name, RcTerm, Term};

pub type RcValue = Arc<Value>;

#[derive(Clone, Debug)]
pub enum Value {
    Universe(u32),
    Pi(Name, RcValue, Closure),
    Lambda(Name, Closure),
    Sigma(Name, RcValue, Closure),
    Pair(RcValue, RcValue),
    Id(RcValue, RcValue, RcValue),
    Refl(RcValue),
    /// A stuck computation together with its type.
    Neutral(Neutral, RcValue),
}

#[derive(Clone, Debug)]
pub enum Head {
    Var(usize),
    Axiom(Name),
}

#[derive(Clone, Debug)]
pub enum Elim {
    /// Application to an argument of the given type.
    App(RcValue, RcValue),
    Proj1,
    Proj2,
    /// Path induction stuck on the neutral path.
    J(Arc<JFrame>),
}

#[derive(Clone, Debug)]
pub struct JFrame {
    pub ty: RcValue,
    pub base: RcValue,
    pub motive: RcValue,
    pub case: RcValue,
    pub other: RcValue,
}

#[derive(Clone, Debug)]
pub struct Neutral {
    pub head: Head,
    pub spine: Vec<Elim>,
}

/// Evaluation environment, a persistent list indexed from the most recent entry.
#[derive(Clone, Debug, Default)]
pub struct Env {
    node: Option<Arc<EnvNode>>,
    len: usize,
}

#[derive(Debug)]
struct EnvNode {
    value: RcValue,
    next: Option<Arc<EnvNode>>,
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&self, value: RcValue) -> Env {
        Env {
            node: Some(Arc::new(EnvNode {
                value,
                next: self.node.clone(),
            })),
            len: self.len + 1,
        }
    }

    pub fn get(&self, index: usize) -> Option<&RcValue> {
        let mut node = self.node.as_ref()?;
        for _ in 0..index {
            node = node.next.as_ref()?;
        }
        Some(&node.value)
    }
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub env: Env,
    pub body: RcTerm,
}

/// A global constant as seen by the evaluator.
#[derive(Clone, Debug)]
pub struct Global {
    pub ty: RcValue,
    /// The unfolded value of a definition, or the neutral head of an axiom.
    pub value: RcValue,
}

pub type Globals = HashMap<Name, Global>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("unbound variable index {0}")]
    UnboundVar(usize),
    #[error("unknown constant `{0}`")]
    UnknownConst(Name),
    #[error("internal fault: {0}")]
    Fault(&'static str),
}

pub type EvalResult<T> = Result<T, EvalError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConvOptions {
    pub eta: bool,
}

impl Default for ConvOptions {
    fn default() -> Self {
        ConvOptions { eta: true }
    }
}

impl Value {
    pub fn var(level: usize, ty: RcValue) -> RcValue {
        Arc::new(Value::Neutral(
            Neutral {
                head: Head::Var(level),
                spine: Vec::new(),
            },
            ty,
        ))
    }

    pub fn axiom(name: Name, ty: RcValue) -> RcValue {
        Arc::new(Value::Neutral(
            Neutral {
                head: Head::Axiom(name),
                spine: Vec::new(),
            },
            ty,
        ))
    }

    pub fn universe(level: u32) -> RcValue {
        Arc::new(Value::Universe(level))
    }
}

/// Evaluator and conversion checker over a fixed set of globals.
#[derive(Clone, Copy)]
pub struct Machine<'g> {
    pub globals: &'g Globals,
    pub opts: ConvOptions,
}

impl<'g> Machine<'g> {
    pub fn new(globals: &'g Globals) -> Self {
        Machine {
            globals,
            opts: ConvOptions::default(),
        }
    }

    pub fn with_options(globals: &'g Globals, opts: ConvOptions) -> Self {
        Machine { globals, opts }
    }

    pub fn eval(&self, env: &Env, t: &Term) -> EvalResult<RcValue> {
        match t {
            Term::Var(i) => env.get(*i).cloned().ok_or(EvalError::UnboundVar(*i)),
            Term::Universe(l) => Ok(Value::universe(*l)),
            Term::Const(name) => self
                .globals
                .get(name)
                .map(|g| g.value.clone())
                .ok_or_else(|| EvalError::UnknownConst(name.clone())),
            Term::Pi(n, a, b) => Ok(Arc::new(Value::Pi(
                n.clone(),
                self.eval(env, a)?,
                Closure {
                    env: env.clone(),
                    body: b.clone(),
                },
            ))),
            Term::Sigma(n, a, b) => Ok(Arc::new(Value::Sigma(
                n.clone(),
                self.eval(env, a)?,
                Closure {
                    env: env.clone(),
                    body: b.clone(),
                },
            ))),
            Term::Lambda(n, b) => Ok(Arc::new(Value::Lambda(
                n.clone(),
                Closure {
                    env: env.clone(),
                    body: b.clone(),
                },
            ))),
            Term::App(f, a) => {
                let f = self.eval(env, f)?;
                let a = self.eval(env, a)?;
                self.apply(&f, a)
            }
            Term::Pair(a, b) => Ok(Arc::new(Value::Pair(self.eval(env, a)?, self.eval(env, b)?))),
            Term::Proj1(p) => self.proj1(&self.eval(env, p)?),
            Term::Proj2(p) => self.proj2(&self.eval(env, p)?),
            Term::Id(a, x, y) => Ok(Arc::new(Value::Id(
                self.eval(env, a)?,
                self.eval(env, x)?,
                self.eval(env, y)?,
            ))),
            Term::Refl(a) => Ok(Arc::new(Value::Refl(self.eval(env, a)?))),
            Term::J(j) => {
                let JTerm {
                    ty,
                    base,
                    motive,
                    case,
                    other,
                    path,
                } = j.as_ref();
                let path = self.eval(env, path)?;
                if let Value::Refl(_) = path.as_ref() {
                    return self.eval(env, case);
                }
                let frame = JFrame {
                    ty: self.eval(env, ty)?,
                    base: self.eval(env, base)?,
                    motive: self.eval(env, motive)?,
                    case: self.eval(env, case)?,
                    other: self.eval(env, other)?,
                };
                self.path_induction(frame, &path)
            }
            Term::Let(_, _, bound, body) => {
                let v = self.eval(env, bound)?;
                self.eval(&env.push(v), body)
            }
        }
    }

    pub fn instantiate(&self, closure: &Closure, arg: RcValue) -> EvalResult<RcValue> {
        self.eval(&closure.env.push(arg), &closure.body)
    }

    pub fn apply(&self, f: &RcValue, arg: RcValue) -> EvalResult<RcValue> {
        match f.as_ref() {
            Value::Lambda(_, body) => self.instantiate(body, arg),
            Value::Neutral(ne, ty) => match ty.as_ref() {
                Value::Pi(_, dom, cod) => {
                    let cod = self.instantiate(cod, arg.clone())?;
                    Ok(extend(ne, Elim::App(arg, dom.clone()), cod))
                }
                _ => Err(EvalError::Fault("neutral application at a non-function type")),
            },
            _ => Err(EvalError::Fault("application of a non-function")),
        }
    }

    pub fn proj1(&self, p: &RcValue) -> EvalResult<RcValue> {
        match p.as_ref() {
            Value::Pair(a, _) => Ok(a.clone()),
            Value::Neutral(ne, ty) => match ty.as_ref() {
                Value::Sigma(_, a, _) => Ok(extend(ne, Elim::Proj1, a.clone())),
                _ => Err(EvalError::Fault("neutral projection at a non-pair type")),
            },
            _ => Err(EvalError::Fault("projection of a non-pair")),
        }
    }

    pub fn proj2(&self, p: &RcValue) -> EvalResult<RcValue> {
        match p.as_ref() {
            Value::Pair(_, b) => Ok(b.clone()),
            Value::Neutral(ne, ty) => match ty.as_ref() {
                Value::Sigma(_, a, b) => {
                    let fst = extend(ne, Elim::Proj1, a.clone());
                    let ty = self.instantiate(b, fst)?;
                    Ok(extend(ne, Elim::Proj2, ty))
                }
                _ => Err(EvalError::Fault("neutral projection at a non-pair type")),
            },
            _ => Err(EvalError::Fault("projection of a non-pair")),
        }
    }

    /// `J A a C d b p`: reduces to `d` on `refl`, otherwise stays stuck.
    pub fn path_induction(&self, frame: JFrame, path: &RcValue) -> EvalResult<RcValue> {
        match path.as_ref() {
            Value::Refl(_) => Ok(frame.case),
            Value::Neutral(ne, _) => {
                let ty = self.apply(&self.apply(&frame.motive, frame.other.clone())?, path.clone())?;
                Ok(extend(ne, Elim::J(Arc::new(frame)), ty))
            }
            _ => Err(EvalError::Fault("path induction on a non-path")),
        }
    }

    /// Instantiate a closure with the next free variable.
    fn fresh(&self, depth: usize, ty: &RcValue, closure: &Closure) -> EvalResult<(RcValue, RcValue)> {
        let x = Value::var(depth, ty.clone());
        let body = self.instantiate(closure, x.clone())?;
        Ok((x, body))
    }

    fn motive_at(&self, frame: &JFrame, x: RcValue, p: RcValue) -> EvalResult<RcValue> {
        self.apply(&self.apply(&frame.motive, x)?, p)
    }

    /// Read a value back into a β-normal, η-long term at the given type.
    pub fn readback(&self, depth: usize, v: &RcValue, ty: &RcValue) -> EvalResult<RcTerm> {
        match ty.as_ref() {
            Value::Pi(pi_name, dom, cod) => {
                let name = match v.as_ref() {
                    Value::Lambda(n, _) => n.clone(),
                    _ => pi_name.clone(),
                };
                if !self.opts.eta {
                    if let Value::Neutral(ne, _) = v.as_ref() {
                        return self.readback_neutral(depth, ne);
                    }
                }
                let (x, cod) = self.fresh(depth, dom, cod)?;
                let body = self.apply(v, x)?;
                Ok(Arc::new(Term::Lambda(name, self.readback(depth + 1, &body, &cod)?)))
            }
            Value::Sigma(_, fst_ty, snd_ty) => {
                if !self.opts.eta {
                    if let Value::Neutral(ne, _) = v.as_ref() {
                        return self.readback_neutral(depth, ne);
                    }
                }
                let fst = self.proj1(v)?;
                let snd = self.proj2(v)?;
                let snd_ty = self.instantiate(snd_ty, fst.clone())?;
                Ok(Term::pair(
                    self.readback(depth, &fst, fst_ty)?,
                    self.readback(depth, &snd, &snd_ty)?,
                ))
            }
            Value::Universe(_) => self.readback_type(depth, v),
            Value::Id(a, _, _) => match v.as_ref() {
                Value::Refl(x) => Ok(Term::refl(self.readback(depth, x, a)?)),
                Value::Neutral(ne, _) => self.readback_neutral(depth, ne),
                _ => Err(EvalError::Fault("ill-typed value at an identity type")),
            },
            Value::Neutral(..) => match v.as_ref() {
                Value::Neutral(ne, _) => self.readback_neutral(depth, ne),
                _ => Err(EvalError::Fault("non-neutral value at a neutral type")),
            },
            _ => Err(EvalError::Fault("read-back at a non-type")),
        }
    }

    pub fn readback_type(&self, depth: usize, v: &RcValue) -> EvalResult<RcTerm> {
        match v.as_ref() {
            Value::Universe(l) => Ok(Term::universe(*l)),
            Value::Pi(n, a, b) => {
                let (_, b) = self.fresh(depth, a, b)?;
                Ok(Arc::new(Term::Pi(
                    n.clone(),
                    self.readback_type(depth, a)?,
                    self.readback_type(depth + 1, &b)?,
                )))
            }
            Value::Sigma(n, a, b) => {
                let (_, b) = self.fresh(depth, a, b)?;
                Ok(Arc::new(Term::Sigma(
                    n.clone(),
                    self.readback_type(depth, a)?,
                    self.readback_type(depth + 1, &b)?,
                )))
            }
            Value::Id(a, x, y) => Ok(Term::id(
                self.readback_type(depth, a)?,
                self.readback(depth, x, a)?,
                self.readback(depth, y, a)?,
            )),
            Value::Neutral(ne, _) => self.readback_neutral(depth, ne),
            _ => Err(EvalError::Fault("read-back of a non-type as a type")),
        }
    }

    pub fn readback_neutral(&self, depth: usize, ne: &Neutral) -> EvalResult<RcTerm> {
        let mut t = match &ne.head {
            Head::Var(level) => Term::var(
                depth
                    .checked_sub(level + 1)
                    .ok_or(EvalError::Fault("variable level out of scope"))?,
            ),
            Head::Axiom(name) => Arc::new(Term::Const(name.clone())),
        };
        for elim in &ne.spine {
            t = match elim {
                Elim::App(arg, arg_ty) => Term::app(t, self.readback(depth, arg, arg_ty)?),
                Elim::Proj1 => Term::proj1(t),
                Elim::Proj2 => Term::proj2(t),
                Elim::J(frame) => {
                    let motive = self.readback_motive(depth, frame)?;
                    let refl_base = Arc::new(Value::Refl(frame.base.clone()));
                    let case_ty = self.motive_at(frame, frame.base.clone(), refl_base)?;
                    Term::j(
                        self.readback_type(depth, &frame.ty)?,
                        self.readback(depth, &frame.base, &frame.ty)?,
                        motive,
                        self.readback(depth, &frame.case, &case_ty)?,
                        self.readback(depth, &frame.other, &frame.ty)?,
                        t,
                    )
                }
            };
        }
        Ok(t)
    }

    fn readback_motive(&self, depth: usize, frame: &JFrame) -> EvalResult<RcTerm> {
        let x = Value::var(depth, frame.ty.clone());
        let path_ty = Arc::new(Value::Id(frame.ty.clone(), frame.base.clone(), x.clone()));
        let p = Value::var(depth + 1, path_ty);
        let fiber = self.motive_at(frame, x, p)?;
        let body = self.readback_type(depth + 2, &fiber)?;
        let (xn, pn) = match frame.motive.as_ref() {
            Value::Lambda(xn, _) => (xn.clone(), Name::from("p")),
            _ => (Name::from("x"), Name::from("p")),
        };
        Ok(Arc::new(Term::Lambda(xn, Arc::new(Term::Lambda(pn, body)))))
    }

    /// Normalize a term of the given type.
    pub fn normalize(&self, env: &Env, t: &Term, ty: &RcValue) -> EvalResult<RcTerm> {
        let v = self.eval(env, t)?;
        self.readback(env.len(), &v, ty)
    }

    /// Type-directed definitional equality.
    pub fn conv(&self, depth: usize, v: &RcValue, w: &RcValue, ty: &RcValue) -> EvalResult<bool> {
        if Arc::ptr_eq(v, w) {
            return Ok(true);
        }
        match ty.as_ref() {
            Value::Pi(_, dom, cod) => {
                if !self.opts.eta {
                    return match (v.as_ref(), w.as_ref()) {
                        (Value::Lambda(..), Value::Lambda(..)) => {
                            let (x, cod) = self.fresh(depth, dom, cod)?;
                            self.conv(depth + 1, &self.apply(v, x.clone())?, &self.apply(w, x)?, &cod)
                        }
                        (Value::Neutral(n, _), Value::Neutral(m, _)) => self.conv_neutral(depth, n, m),
                        _ => Ok(false),
                    };
                }
                let (x, cod) = self.fresh(depth, dom, cod)?;
                self.conv(depth + 1, &self.apply(v, x.clone())?, &self.apply(w, x)?, &cod)
            }
            Value::Sigma(_, fst_ty, snd_ty) => {
                if !self.opts.eta {
                    match (v.as_ref(), w.as_ref()) {
                        (Value::Pair(..), Value::Pair(..)) => {}
                        (Value::Neutral(n, _), Value::Neutral(m, _)) => {
                            return self.conv_neutral(depth, n, m)
                        }
                        _ => return Ok(false),
                    }
                }
                let v1 = self.proj1(v)?;
                if !self.conv(depth, &v1, &self.proj1(w)?, fst_ty)? {
                    return Ok(false);
                }
                let snd_ty = self.instantiate(snd_ty, v1)?;
                self.conv(depth, &self.proj2(v)?, &self.proj2(w)?, &snd_ty)
            }
            Value::Universe(_) => self.conv_type(depth, v, w),
            Value::Id(a, _, _) => match (v.as_ref(), w.as_ref()) {
                (Value::Refl(x), Value::Refl(y)) => self.conv(depth, x, y, a),
                (Value::Neutral(n, _), Value::Neutral(m, _)) => self.conv_neutral(depth, n, m),
                _ => Ok(false),
            },
            Value::Neutral(..) => match (v.as_ref(), w.as_ref()) {
                (Value::Neutral(n, _), Value::Neutral(m, _)) => self.conv_neutral(depth, n, m),
                _ => Ok(false),
            },
            _ => Err(EvalError::Fault("conversion at a non-type")),
        }
    }

    /// Definitional equality of two type values.
    pub fn conv_type(&self, depth: usize, v: &RcValue, w: &RcValue) -> EvalResult<bool> {
        if Arc::ptr_eq(v, w) {
            return Ok(true);
        }
        match (v.as_ref(), w.as_ref()) {
            (Value::Universe(i), Value::Universe(j)) => Ok(i == j),
            (Value::Pi(_, a, b), Value::Pi(_, c, d)) | (Value::Sigma(_, a, b), Value::Sigma(_, c, d)) => {
                if !self.conv_type(depth, a, c)? {
                    return Ok(false);
                }
                let x = Value::var(depth, a.clone());
                let b = self.instantiate(b, x.clone())?;
                let d = self.instantiate(d, x)?;
                self.conv_type(depth + 1, &b, &d)
            }
            (Value::Id(a, x, y), Value::Id(b, z, w)) => Ok(self.conv_type(depth, a, b)?
                && self.conv(depth, x, z, a)?
                && self.conv(depth, y, w, a)?),
            (Value::Neutral(n, _), Value::Neutral(m, _)) => self.conv_neutral(depth, n, m),
            _ => Ok(false),
        }
    }

    fn conv_neutral(&self, depth: usize, n: &Neutral, m: &Neutral) -> EvalResult<bool> {
        let same_head = match (&n.head, &m.head) {
            (Head::Var(i), Head::Var(j)) => i == j,
            (Head::Axiom(a), Head::Axiom(b)) => a == b,
            _ => false,
        };
        if !same_head || n.spine.len() != m.spine.len() {
            return Ok(false);
        }
        for (e, f) in n.spine.iter().zip(&m.spine) {
            let ok = match (e, f) {
                (Elim::App(a, ty), Elim::App(b, _)) => self.conv(depth, a, b, ty)?,
                (Elim::Proj1, Elim::Proj1) | (Elim::Proj2, Elim::Proj2) => true,
                (Elim::J(j), Elim::J(k)) => self.conv_frame(depth, j, k)?,
                _ => false,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn conv_frame(&self, depth: usize, j: &JFrame, k: &JFrame) -> EvalResult<bool> {
        if !self.conv_type(depth, &j.ty, &k.ty)? || !self.conv(depth, &j.base, &k.base, &j.ty)? {
            return Ok(false);
        }
        let x = Value::var(depth, j.ty.clone());
        let path_ty = Arc::new(Value::Id(j.ty.clone(), j.base.clone(), x.clone()));
        let p = Value::var(depth + 1, path_ty);
        let cj = self.motive_at(j, x.clone(), p.clone())?;
        let ck = self.motive_at(k, x, p)?;
        if !self.conv_type(depth + 2, &cj, &ck)? {
            return Ok(false);
        }
        let refl_base = Arc::new(Value::Refl(j.base.clone()));
        let case_ty = self.motive_at(j, j.base.clone(), refl_base)?;
        Ok(self.conv(depth, &j.case, &k.case, &case_ty)? && self.conv(depth, &j.other, &k.other, &j.ty)?)
    }
}

fn extend(ne: &Neutral, elim: Elim, ty: RcValue) -> RcValue {
    let mut spine = ne.spine.clone();
    spine.push(elim);
    Arc::new(Value::Neutral(
        Neutral {
            head: ne.head.clone(),
            spine,
        },
        ty,
    ))
}
