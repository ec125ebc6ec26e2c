//! Facts about the shipped corpus shared by the corpus and acceptance tests.

use std::fs;

use hott_kernel::checker::{check_closed, check_module, CheckOptions, Outcome, Signature};
use hott_kernel::corpus::shipped_corpus_dir;
use hott_kernel::evaluator::{ConvOptions, Env};
use hott_kernel::surface::{parse_source, parse_term};
use hott_kernel::syntax::RcTerm;

pub const FILES: [&str; 4] = ["prelude_axioms.hott", "prelude.hott", "adj.hott", "two_adj.hott"];

pub fn term(src: &str) -> RcTerm {
    parse_term(src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

pub fn try_well_typed(sig: &Signature, t: &str, ty: &str) -> Result<(), String> {
    check_closed(sig, &term(t), &term(ty), CheckOptions::default()).map_err(|e| format!("{t} : {ty}\n{e}"))
}

/// Check both sides at `ty`, then decide definitional equality.
pub fn defeq_in(sig: &Signature, opts: ConvOptions, lhs: &str, rhs: &str, ty: &str) -> Result<bool, String> {
    try_well_typed(sig, lhs, ty)?;
    try_well_typed(sig, rhs, ty)?;
    let m = sig.machine(opts);
    let env = Env::new();
    let err = |e| format!("{e}");
    let tyv = m.eval(&env, &term(ty)).map_err(err)?;
    let l = m.eval(&env, &term(lhs)).map_err(err)?;
    let r = m.eval(&env, &term(rhs)).map_err(err)?;
    m.conv(0, &l, &r, &tyv).map_err(err)
}

/// The maps of the summary diagram, in both directions.
pub const ARROWS: [(&str, &str, &str); 16] = [
    ("two_hae_l_to_two_hae", "is_two_hae_l", "is_two_hae"),
    ("two_hae_to_two_hae_l", "is_two_hae", "is_two_hae_l"),
    ("two_hae_l_to_adj", "is_two_hae_l", "adj"),
    ("adj_to_two_hae_l", "adj", "is_two_hae_l"),
    ("two_hae_to_adj", "is_two_hae", "adj"),
    ("adj_to_two_hae", "adj", "is_two_hae"),
    ("adj_to_ishadjl", "adj", "ishadjl"),
    ("ishadjl_to_adj", "ishadjl", "adj"),
    ("adj_to_ishadj", "adj", "ishadj"),
    ("ishadj_to_adj", "ishadj", "adj"),
    ("ishadjl_to_ishadj", "ishadjl", "ishadj"),
    ("ishadj_to_ishadjl", "ishadj", "ishadjl"),
    ("ishadjl_to_qinv", "ishadjl", "qinv"),
    ("qinv_to_ishadjl", "qinv", "ishadjl"),
    ("ishadj_to_qinv", "ishadj", "qinv"),
    ("qinv_to_ishadj", "qinv", "ishadj"),
];

/// A textual change to one corpus file and the declaration it must break.
pub const MUTANTS: [(&str, &str, &str, &str); 10] = [
    ("prelude_axioms.hott", "concat", "J A y (fun w r => Id A x w) p z q", "J A y (fun w r => Id A x w) q z p"),
    ("prelude_axioms.hott", "inv", "J A x (fun w r => Id A w x) (refl x) y p", "J A y (fun w r => Id A w x) (refl x) x p"),
    ("prelude_axioms.hott", "ap", "J A x (fun w r => Id B (f x) (f w)) (refl (f x)) y p", "J A x (fun w r => Id B (f w) (f x)) (refl (f x)) y p"),
    ("prelude_axioms.hott", "transport", "J A x (fun w r => P w) u y p", "J A x (fun w r => P x) u y p"),
    ("prelude_axioms.hott", "rcoh", "(ap A B f (g (f x)) x (eta x)) (eps (f x))", "(eta x) (eps (f x))"),
    ("two_adj.hott", "r2coh_at", "(ap2 B A g (f (g (f x))) (f x) (ap A B f (g (f x)) x (eta x)) (eps (f x)) t))\n    (theta (f x))", "t)\n    (theta (f x))"),
    ("two_adj.hott", "l2coh_at", "(ap2 A B f (g (f (g y))) (g y) (eta (g y)) (ap B A g (f (g y)) y (eps y)) t)\n\ndef", "t\n\ndef"),
    ("two_adj.hott", "nat_coh", "(hty_ap A (comp A B A g f) H x)\n    (ap_comp", "(ap_comp A B A f g (g (f x)) x (H x))\n    (ap_comp"),
    ("two_adj.hott", "two_hae_reassoc", "fun s => (s.1.1, s.1.2.1, s.1.2.2.1, s.2.1, s.1.2.2.2, s.2.2)", "fun s => (s.1.1, s.1.2.1, s.1.2.2.1, s.1.2.2.2, s.2.1, s.2.2)"),
    ("two_adj.hott", "is_contr_r2coh", "e.2.1 e.1 e.2.2.1\n    (pi_contr A", "e.1 e.2.1 e.2.2.1\n    (pi_contr A"),
];

/// Check the corpus with mutant `i` applied; succeed when its target is
/// rejected for a reason of its own.
pub fn mutant_rejected(i: usize) -> Result<(), String> {
    let (file, target, from, to) = MUTANTS[i];
    let mut modules = Vec::new();
    for f in FILES {
        let path = shipped_corpus_dir().join(f);
        let mut src = fs::read_to_string(&path).map_err(|e| e.to_string())?;
        if f == file {
            if src.matches(from).count() != 1 {
                return Err(format!("mutation site for {target} is not unique"));
            }
            src = src.replacen(from, to, 1);
        }
        modules.push(parse_source(&path, &src).map_err(|e| e.to_string())?);
    }
    let (_, report) = check_module(&modules, CheckOptions::default());
    match &report.get(target).ok_or(format!("{target} missing"))?.outcome {
        Outcome::Failed(msg) if msg.starts_with("depends on") => Err(format!("{target}: {msg}")),
        Outcome::Failed(_) => Ok(()),
        Outcome::Ok => Err(format!("mutant of {target} was accepted")),
    }
}
