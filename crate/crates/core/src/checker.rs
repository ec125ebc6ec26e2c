//! Bidirectional type checking of terms, declarations and modules.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::PathBuf;
use std::sync::Arc;

use crate::evaluator::{ConvOptions, Env, EvalError, Global, Globals, Machine, RcValue, Value};
use crate::surface::{print_term, SourceModule};
use crate::syntax::{DeclKind, Declaration, JTerm, Name, RcTerm, Span, Term};

/// Typing context: the types of the bound variables and the environment used to
/// evaluate terms under them.
#[derive(Clone, Debug, Default)]
pub struct Context {
    names: Vec<Name>,
    types: Vec<RcValue>,
    env: Env,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    /// Extend with a fresh variable of the given type.
    pub fn bind(&self, name: Name, ty: RcValue) -> Context {
        let var = Value::var(self.len(), ty.clone());
        self.define(name, ty, var)
    }

    /// Extend with a variable standing for a known value.
    pub fn define(&self, name: Name, ty: RcValue, value: RcValue) -> Context {
        let mut names = self.names.clone();
        let mut types = self.types.clone();
        names.push(name);
        types.push(ty);
        Context {
            names,
            types,
            env: self.env.push(value),
        }
    }

    pub fn lookup(&self, index: usize) -> Option<&RcValue> {
        self.types.len().checked_sub(index + 1).map(|k| &self.types[k])
    }

    /// Distinct printable names for the bound variables.
    pub fn display_names(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::with_capacity(self.names.len());
        for n in &self.names {
            let base = if n.is_empty() { "_".to_owned() } else { n.to_string() };
            let mut name = base.clone();
            let mut k = 1;
            while out.contains(&name) {
                name = format!("{base}{k}");
                k += 1;
            }
            out.push(name);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("cannot infer the type of {0}; add an annotation")]
    NotInferable(String),
    #[error("expected a function, but the head has type {0}")]
    NotAFunction(String),
    #[error("expected a pair, but the term has type {0}")]
    NotAPair(String),
    #[error("expected a type, but found a term of type {0}")]
    UniverseExpected(String),
    #[error("unbound name `{0}`")]
    UnboundName(Name),
    #[error("type mismatch: expected {expected}, got {got}")]
    Mismatch { expected: String, got: String },
    #[error("{form} cannot have type {expected}")]
    IntroMismatch { form: &'static str, expected: String },
    #[error("motive must have type (x : A) -> Id A a x -> Type k, found {0}")]
    BadMotive(String),
    #[error("duplicate declaration `{0}`")]
    DuplicateName(Name),
    #[error("depends on failed declaration `{0}`")]
    FailedDependency(Name),
    #[error("{0}")]
    Eval(#[from] EvalError),
}

/// A type error attributed to a declaration.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{name}: {error}")]
pub struct DeclError {
    pub name: Name,
    pub span: Span,
    pub error: TypeError,
}

type TcResult<T> = Result<T, TypeError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    pub conv: ConvOptions,
    /// Record every failed conversion in normal form.
    pub trace_conversion: bool,
}

/// A checked declaration.
#[derive(Clone, Debug)]
pub struct Entry {
    pub decl: Declaration,
    pub ty: RcValue,
    /// Axioms this declaration transitively relies on.
    pub footprint: BTreeSet<Name>,
}

impl Entry {
    pub fn is_axiom(&self) -> bool {
        self.decl.kind == DeclKind::Axiom
    }
}

/// Checked declarations in dependency order.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    entries: Vec<Entry>,
    index: HashMap<Name, usize>,
    globals: Globals,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn globals(&self) -> &Globals {
        &self.globals
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn machine(&self, opts: ConvOptions) -> Machine<'_> {
        Machine::with_options(&self.globals, opts)
    }

    pub fn checker(&self, opts: CheckOptions) -> Checker<'_> {
        Checker {
            sig: self,
            machine: self.machine(opts.conv),
            opts,
            trace: Vec::new(),
        }
    }

    /// Check a declaration against this signature and extend it on success.
    pub fn check_declaration(
        &mut self,
        decl: &Declaration,
        opts: CheckOptions,
    ) -> Result<&Entry, DeclError> {
        self.check_declaration_traced(decl, opts, &mut Vec::new())
    }

    pub fn check_declaration_traced(
        &mut self,
        decl: &Declaration,
        opts: CheckOptions,
        trace: &mut Vec<String>,
    ) -> Result<&Entry, DeclError> {
        let fail = |error| DeclError {
            name: decl.name.clone(),
            span: decl.span,
            error,
        };
        if self.index.contains_key(&decl.name) {
            return Err(fail(TypeError::DuplicateName(decl.name.clone())));
        }
        let mut tc = self.checker(opts);
        let result = tc.declaration(decl);
        trace.append(&mut tc.trace);
        let (ty, value) = result.map_err(fail)?;
        let footprint = self.footprint_of(decl);
        self.globals.insert(
            decl.name.clone(),
            Global {
                ty: ty.clone(),
                value,
            },
        );
        self.index.insert(decl.name.clone(), self.entries.len());
        self.entries.push(Entry {
            decl: decl.clone(),
            ty,
            footprint,
        });
        Ok(self.entries.last().expect("just pushed"))
    }

    /// Axioms reachable from the declaration's type and body.
    fn footprint_of(&self, decl: &Declaration) -> BTreeSet<Name> {
        let mut consts = Vec::new();
        decl.ty.constants(&mut consts);
        if let Some(body) = &decl.body {
            body.constants(&mut consts);
        }
        let mut footprint: BTreeSet<Name> = consts
            .iter()
            .filter_map(|c| self.get(c))
            .flat_map(|e| e.footprint.iter().cloned())
            .collect();
        if decl.kind == DeclKind::Axiom {
            footprint.insert(decl.name.clone());
        }
        footprint
    }
}

/// Bidirectional checker over a frozen signature.
pub struct Checker<'s> {
    sig: &'s Signature,
    machine: Machine<'s>,
    opts: CheckOptions,
    /// Failed conversions, when tracing is enabled.
    pub trace: Vec<String>,
}

impl<'s> Checker<'s> {
    pub fn machine(&self) -> &Machine<'s> {
        &self.machine
    }

    fn eval(&self, ctx: &Context, t: &Term) -> TcResult<RcValue> {
        Ok(self.machine.eval(ctx.env(), t)?)
    }

    /// Print a type value in η-long normal form.
    pub fn show_type(&self, ctx: &Context, ty: &RcValue) -> String {
        match self.machine.readback_type(ctx.len(), ty) {
            Ok(t) => print_term(&t, &ctx.display_names()),
            Err(e) => format!("<{e}>"),
        }
    }

    pub fn show_value(&self, ctx: &Context, v: &RcValue, ty: &RcValue) -> String {
        match self.machine.readback(ctx.len(), v, ty) {
            Ok(t) => print_term(&t, &ctx.display_names()),
            Err(e) => format!("<{e}>"),
        }
    }

    fn show_term(&self, ctx: &Context, t: &Term) -> String {
        print_term(t, &ctx.display_names())
    }

    fn declaration(&mut self, decl: &Declaration) -> TcResult<(RcValue, RcValue)> {
        let ctx = Context::new();
        self.check_type(&ctx, &decl.ty)?;
        let ty = self.eval(&ctx, &decl.ty)?;
        let value = match (&decl.kind, &decl.body) {
            (DeclKind::Definition, Some(body)) => {
                self.check(&ctx, body, &ty)?;
                self.eval(&ctx, body)?
            }
            _ => Value::axiom(decl.name.clone(), ty.clone()),
        };
        Ok((ty, value))
    }

    /// Check that `t` is a type and return its universe level.
    pub fn check_type(&mut self, ctx: &Context, t: &Term) -> TcResult<u32> {
        let ty = self.infer(ctx, t)?;
        match ty.as_ref() {
            Value::Universe(l) => Ok(*l),
            _ => Err(TypeError::UniverseExpected(self.show_type(ctx, &ty))),
        }
    }

    fn conv_type(&mut self, ctx: &Context, expected: &RcValue, got: &RcValue) -> TcResult<()> {
        if self.machine.conv_type(ctx.len(), expected, got)? {
            return Ok(());
        }
        let expected = self.show_type(ctx, expected);
        let got = self.show_type(ctx, got);
        if self.opts.trace_conversion {
            self.trace
                .push(format!("conversion failed:\n  expected {expected}\n  got      {got}"));
        }
        Err(TypeError::Mismatch { expected, got })
    }

    pub fn infer(&mut self, ctx: &Context, t: &Term) -> TcResult<RcValue> {
        match t {
            Term::Var(i) => ctx
                .lookup(*i)
                .cloned()
                .ok_or(TypeError::Eval(EvalError::UnboundVar(*i))),
            Term::Const(name) => self
                .sig
                .get(name)
                .map(|e| e.ty.clone())
                .ok_or_else(|| TypeError::UnboundName(name.clone())),
            Term::Universe(l) => Ok(Value::universe(l + 1)),
            Term::Pi(n, a, b) | Term::Sigma(n, a, b) => {
                let la = self.check_type(ctx, a)?;
                let va = self.eval(ctx, a)?;
                let lb = self.check_type(&ctx.bind(n.clone(), va), b)?;
                Ok(Value::universe(la.max(lb)))
            }
            Term::Id(a, x, y) => {
                let l = self.check_type(ctx, a)?;
                let va = self.eval(ctx, a)?;
                self.check(ctx, x, &va)?;
                self.check(ctx, y, &va)?;
                Ok(Value::universe(l))
            }
            Term::App(f, a) => {
                let fty = self.infer(ctx, f)?;
                match fty.as_ref() {
                    Value::Pi(_, dom, cod) => {
                        self.check(ctx, a, dom)?;
                        let va = self.eval(ctx, a)?;
                        Ok(self.machine.instantiate(cod, va)?)
                    }
                    _ => Err(TypeError::NotAFunction(self.show_type(ctx, &fty))),
                }
            }
            Term::Proj1(p) => {
                let pty = self.infer(ctx, p)?;
                match pty.as_ref() {
                    Value::Sigma(_, a, _) => Ok(a.clone()),
                    _ => Err(TypeError::NotAPair(self.show_type(ctx, &pty))),
                }
            }
            Term::Proj2(p) => {
                let pty = self.infer(ctx, p)?;
                match pty.as_ref() {
                    Value::Sigma(_, _, b) => {
                        let fst = self.machine.proj1(&self.eval(ctx, p)?)?;
                        Ok(self.machine.instantiate(b, fst)?)
                    }
                    _ => Err(TypeError::NotAPair(self.show_type(ctx, &pty))),
                }
            }
            Term::J(j) => self.infer_j(ctx, j),
            Term::Let(n, annot, bound, body) => {
                let ty = self.let_binding(ctx, annot, bound)?;
                let v = self.eval(ctx, bound)?;
                self.infer(&ctx.define(n.clone(), ty, v), body)
            }
            Term::Lambda(..) => Err(TypeError::NotInferable(format!(
                "the function {}",
                self.show_term(ctx, t)
            ))),
            Term::Pair(..) => Err(TypeError::NotInferable(format!(
                "the pair {}",
                self.show_term(ctx, t)
            ))),
            Term::Refl(..) => Err(TypeError::NotInferable(format!(
                "the path {}",
                self.show_term(ctx, t)
            ))),
        }
    }

    fn let_binding(&mut self, ctx: &Context, annot: &Term, bound: &Term) -> TcResult<RcValue> {
        self.check_type(ctx, annot)?;
        let ty = self.eval(ctx, annot)?;
        self.check(ctx, bound, &ty)?;
        Ok(ty)
    }

    fn infer_j(&mut self, ctx: &Context, j: &JTerm) -> TcResult<RcValue> {
        self.check_type(ctx, &j.ty)?;
        let a = self.eval(ctx, &j.ty)?;
        self.check(ctx, &j.base, &a)?;
        let base = self.eval(ctx, &j.base)?;
        self.check_motive(ctx, &j.motive, &a, &base)?;
        let motive = self.eval(ctx, &j.motive)?;
        let refl_base = Arc::new(Value::Refl(base.clone()));
        let case_ty = self
            .machine
            .apply(&self.machine.apply(&motive, base.clone())?, refl_base)?;
        self.check(ctx, &j.case, &case_ty)?;
        self.check(ctx, &j.other, &a)?;
        let other = self.eval(ctx, &j.other)?;
        let path_ty = Arc::new(Value::Id(a, base, other.clone()));
        self.check(ctx, &j.path, &path_ty)?;
        let path = self.eval(ctx, &j.path)?;
        Ok(self.machine.apply(&self.machine.apply(&motive, other)?, path)?)
    }

    /// A motive must be a family `(x : A) -> Id A a x -> Type k`.
    fn check_motive(&mut self, ctx: &Context, c: &Term, a: &RcValue, base: &RcValue) -> TcResult<()> {
        let path_ty = |x: RcValue| Arc::new(Value::Id(a.clone(), base.clone(), x));
        if let Term::Lambda(xn, body) = c {
            let ctx_x = ctx.bind(xn.clone(), a.clone());
            let x = Value::var(ctx.len(), a.clone());
            if let Term::Lambda(pn, body) = body.as_ref() {
                let ctx_xp = ctx_x.bind(pn.clone(), path_ty(x));
                self.check_type(&ctx_xp, body)?;
                return Ok(());
            }
            let ty = self.infer(&ctx_x, body)?;
            return self.family_codomain(&ctx_x, &ty, &path_ty(x));
        }
        let ty = self.infer(ctx, c)?;
        match ty.as_ref() {
            Value::Pi(_, dom, cod) => {
                self.conv_type(ctx, a, dom)?;
                let x = Value::var(ctx.len(), a.clone());
                let rest = self.machine.instantiate(cod, x.clone())?;
                self.family_codomain(&ctx.bind("x".into(), a.clone()), &rest, &path_ty(x))
            }
            _ => Err(TypeError::BadMotive(self.show_type(ctx, &ty))),
        }
    }

    fn family_codomain(&mut self, ctx: &Context, ty: &RcValue, path_ty: &RcValue) -> TcResult<()> {
        match ty.as_ref() {
            Value::Pi(_, dom, cod) => {
                self.conv_type(ctx, path_ty, dom)?;
                let p = Value::var(ctx.len(), dom.clone());
                let target = self.machine.instantiate(cod, p)?;
                match target.as_ref() {
                    Value::Universe(_) => Ok(()),
                    _ => Err(TypeError::BadMotive(self.show_type(ctx, ty))),
                }
            }
            _ => Err(TypeError::BadMotive(self.show_type(ctx, ty))),
        }
    }

    pub fn check(&mut self, ctx: &Context, t: &Term, expected: &RcValue) -> TcResult<()> {
        match (t, expected.as_ref()) {
            (Term::Lambda(n, body), Value::Pi(_, dom, cod)) => {
                let x = Value::var(ctx.len(), dom.clone());
                let cod = self.machine.instantiate(cod, x)?;
                self.check(&ctx.bind(n.clone(), dom.clone()), body, &cod)
            }
            (Term::Lambda(..), _) => Err(TypeError::IntroMismatch {
                form: "a function",
                expected: self.show_type(ctx, expected),
            }),
            (Term::Pair(a, b), Value::Sigma(_, fst, snd)) => {
                self.check(ctx, a, fst)?;
                let va = self.eval(ctx, a)?;
                let snd = self.machine.instantiate(snd, va)?;
                self.check(ctx, b, &snd)
            }
            (Term::Pair(..), _) => Err(TypeError::IntroMismatch {
                form: "a pair",
                expected: self.show_type(ctx, expected),
            }),
            (Term::Refl(a), Value::Id(ty, x, y)) => {
                self.check(ctx, a, ty)?;
                let va = self.eval(ctx, a)?;
                let depth = ctx.len();
                if self.machine.conv(depth, &va, x, ty)? && self.machine.conv(depth, &va, y, ty)? {
                    return Ok(());
                }
                let got = Arc::new(Value::Id(ty.clone(), va.clone(), va));
                let expected_s = self.show_type(ctx, expected);
                let got_s = self.show_type(ctx, &got);
                if self.opts.trace_conversion {
                    self.trace.push(format!(
                        "conversion failed:\n  expected {expected_s}\n  got      {got_s}"
                    ));
                }
                Err(TypeError::Mismatch {
                    expected: expected_s,
                    got: got_s,
                })
            }
            (Term::Refl(..), _) => Err(TypeError::IntroMismatch {
                form: "a reflexivity path",
                expected: self.show_type(ctx, expected),
            }),
            (Term::Let(n, annot, bound, body), _) => {
                let ty = self.let_binding(ctx, annot, bound)?;
                let v = self.eval(ctx, bound)?;
                self.check(&ctx.define(n.clone(), ty, v), body, expected)
            }
            _ => {
                let got = self.infer(ctx, t)?;
                self.conv_type(ctx, expected, &got)
            }
        }
    }
}

/// Outcome of checking one declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Failed(String),
}

#[derive(Clone, Debug)]
pub struct ReportEntry {
    pub file: PathBuf,
    pub name: Name,
    pub kind: DeclKind,
    pub outcome: Outcome,
    pub footprint: BTreeSet<Name>,
    pub trace: Vec<String>,
}

impl ReportEntry {
    pub fn is_ok(&self) -> bool {
        self.outcome == Outcome::Ok
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(ReportEntry::is_ok)
    }

    pub fn get(&self, name: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| &*e.name == name)
    }
}

/// Check files in order. A failing declaration does not stop the run: later
/// declarations that mention it are reported as failed dependencies, and
/// independent ones are checked as usual.
pub fn check_module(files: &[SourceModule], opts: CheckOptions) -> (Signature, Report) {
    let mut sig = Signature::new();
    let report = check_into(&mut sig, files, opts);
    (sig, report)
}

/// Like [`check_module`], but extends an existing signature.
pub fn check_into(sig: &mut Signature, files: &[SourceModule], opts: CheckOptions) -> Report {
    let mut report = Report::default();
    let mut failed: HashSet<Name> = HashSet::new();
    for file in files {
        for decl in &file.declarations {
            let mut trace = Vec::new();
            let outcome = match blocked_by(decl, &failed, sig) {
                Some(dep) => Err(DeclError {
                    name: decl.name.clone(),
                    span: decl.span,
                    error: TypeError::FailedDependency(dep),
                }),
                None => sig
                    .check_declaration_traced(decl, opts, &mut trace)
                    .map(|e| e.footprint.clone()),
            };
            let (outcome, footprint) = match outcome {
                Ok(fp) => (Outcome::Ok, fp),
                Err(e) => {
                    failed.insert(decl.name.clone());
                    (Outcome::Failed(e.error.to_string()), BTreeSet::new())
                }
            };
            report.entries.push(ReportEntry {
                file: file.path.clone(),
                name: decl.name.clone(),
                kind: decl.kind,
                outcome,
                footprint,
                trace,
            });
        }
    }
    report
}

fn blocked_by(decl: &Declaration, failed: &HashSet<Name>, sig: &Signature) -> Option<Name> {
    if failed.contains(&decl.name) && sig.get(&decl.name).is_none() {
        return None;
    }
    let mut consts = Vec::new();
    decl.ty.constants(&mut consts);
    if let Some(b) = &decl.body {
        b.constants(&mut consts);
    }
    consts.into_iter().find(|c| failed.contains(c))
}

/// Check a closed term against a closed type in the given signature.
pub fn check_closed(sig: &Signature, t: &RcTerm, ty: &RcTerm, opts: CheckOptions) -> Result<(), TypeError> {
    let ctx = Context::new();
    let mut tc = sig.checker(opts);
    tc.check_type(&ctx, ty)?;
    let tyv = tc.eval(&ctx, ty)?;
    tc.check(&ctx, t, &tyv)
}
