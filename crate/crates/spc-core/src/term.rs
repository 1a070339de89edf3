//! Terms over join, meet, star and upper-bound-meet, with partial
//! evaluation.
//!
//! Meets and joins need not exist in poset mode, so evaluation is
//! three-valued: a term is either defined with a value or undefined, and an
//! undefined result carries the sub-term and the argument set whose bound
//! was missing. The n-ary [`TermExpr::Meet`] denotes the infimum of the set
//! of its argument values (not a fold of binary meets), and
//! [`TermExpr::UBMeet`] denotes the infimum of the upper-bound set of its
//! first two arguments united with the remaining argument values; that is
//! the shape `U(x, y) ^ (z*y) ^ u` used by the order-side ideal terms.
//!
//! The module also provides the named term families: the quaternary helper
//! terms, the two lattice Maltsev terms `p` and `q`, their order-side
//! partial analogue `Q`, and the ideal-term bases used to characterize
//! filters by closedness.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use core::fmt;

use crate::poset::{ElementId, SubsetMask};
use crate::report::{Check, Report, Verdict};
use crate::star::{Mode, ModeError, SpcStructure};

/// A term variable: `X(i)` ranges over the whole structure in closedness
/// scans, `Y(i)` over the candidate subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X(usize),
    Y(usize),
}

/// A term in the language of sectionally pseudocomplemented structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermExpr {
    Var(Var),
    /// The greatest element.
    One,
    Join(Box<TermExpr>, Box<TermExpr>),
    /// Infimum of the values of all arguments (at least one).
    Meet(Vec<TermExpr>),
    Star(Box<TermExpr>, Box<TermExpr>),
    /// Infimum of `U(first, second)` united with the remaining argument
    /// values (at least two arguments).
    UBMeet(Vec<TermExpr>),
}

impl TermExpr {
    pub fn x(i: usize) -> Self {
        TermExpr::Var(Var::X(i))
    }

    pub fn y(i: usize) -> Self {
        TermExpr::Var(Var::Y(i))
    }

    pub fn join(l: TermExpr, r: TermExpr) -> Self {
        TermExpr::Join(Box::new(l), Box::new(r))
    }

    pub fn meet(args: Vec<TermExpr>) -> Self {
        assert!(!args.is_empty(), "a meet needs at least one argument");
        TermExpr::Meet(args)
    }

    pub fn star(l: TermExpr, r: TermExpr) -> Self {
        TermExpr::Star(Box::new(l), Box::new(r))
    }

    pub fn ubmeet(args: Vec<TermExpr>) -> Self {
        assert!(args.len() >= 2, "an upper-bound meet needs at least two arguments");
        TermExpr::UBMeet(args)
    }
}

impl fmt::Display for TermExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermExpr::Var(Var::X(i)) => write!(f, "x{}", i + 1),
            TermExpr::Var(Var::Y(i)) => write!(f, "y{}", i + 1),
            TermExpr::One => write!(f, "1"),
            TermExpr::Join(l, r) => write!(f, "({l} v {r})"),
            TermExpr::Meet(args) => {
                write!(f, "(")?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        write!(f, " ^ ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            TermExpr::Star(l, r) => write!(f, "({l} * {r})"),
            TermExpr::UBMeet(args) => {
                write!(f, "(U({}, {})", args[0], args[1])?;
                for a in &args[2..] {
                    write!(f, " ^ {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Variable assignment for evaluation.
#[derive(Clone, Copy, Debug)]
pub struct Env<'a> {
    pub xs: &'a [ElementId],
    pub ys: &'a [ElementId],
}

impl<'a> Env<'a> {
    pub fn new(xs: &'a [ElementId], ys: &'a [ElementId]) -> Self {
        Env { xs, ys }
    }
}

/// A term mentioned a variable the environment does not bind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnboundVariable(pub Var);

impl fmt::Display for UnboundVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unbound term variable {:?}", self.0)
    }
}

impl core::error::Error for UnboundVariable {}

/// Which kind of bound was missing when a term came out undefined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UndefReason {
    /// The set has no greatest lower bound.
    Infimum(SubsetMask),
    /// The set has no least upper bound.
    Supremum(SubsetMask),
    /// The term used the constant `1` but the structure has no greatest
    /// element.
    NoGreatestElement,
}

/// An undefined evaluation result: the failing sub-term plus the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Undefined {
    pub term: TermExpr,
    pub reason: UndefReason,
}

/// The value of a partial term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartialValue {
    Defined(ElementId),
    Undefined(Undefined),
}

impl PartialValue {
    pub fn defined(&self) -> Option<ElementId> {
        match self {
            PartialValue::Defined(v) => Some(*v),
            PartialValue::Undefined(_) => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, PartialValue::Defined(_))
    }
}

/// Evaluates `t` under `env`. Undefinedness propagates strictly: the first
/// undefined sub-term (leftmost innermost) decides the result.
pub fn eval(s: &SpcStructure, t: &TermExpr, env: &Env) -> Result<PartialValue, UnboundVariable> {
    let p = s.poset();
    let value = match t {
        TermExpr::Var(v) => {
            let slot = match *v {
                Var::X(i) => env.xs.get(i),
                Var::Y(i) => env.ys.get(i),
            };
            match slot {
                Some(&e) => PartialValue::Defined(e),
                None => return Err(UnboundVariable(*v)),
            }
        }
        TermExpr::One => match s.top() {
            Some(one) => PartialValue::Defined(one),
            None => PartialValue::Undefined(Undefined {
                term: t.clone(),
                reason: UndefReason::NoGreatestElement,
            }),
        },
        TermExpr::Join(l, r) => {
            let a = match eval(s, l, env)? {
                PartialValue::Defined(v) => v,
                u => return Ok(u),
            };
            let b = match eval(s, r, env)? {
                PartialValue::Defined(v) => v,
                u => return Ok(u),
            };
            match p.join(a, b) {
                Some(v) => PartialValue::Defined(v),
                None => {
                    let set = SubsetMask::singleton(a).union(SubsetMask::singleton(b));
                    PartialValue::Undefined(Undefined {
                        term: t.clone(),
                        reason: UndefReason::Supremum(set),
                    })
                }
            }
        }
        TermExpr::Meet(args) => {
            let mut set = SubsetMask::EMPTY;
            for a in args {
                match eval(s, a, env)? {
                    PartialValue::Defined(v) => set.insert(v),
                    u => return Ok(u),
                }
            }
            match p.infimum(set) {
                Some(v) => PartialValue::Defined(v),
                None => PartialValue::Undefined(Undefined {
                    term: t.clone(),
                    reason: UndefReason::Infimum(set),
                }),
            }
        }
        TermExpr::Star(l, r) => {
            let a = match eval(s, l, env)? {
                PartialValue::Defined(v) => v,
                u => return Ok(u),
            };
            let b = match eval(s, r, env)? {
                PartialValue::Defined(v) => v,
                u => return Ok(u),
            };
            PartialValue::Defined(s.star(a, b))
        }
        TermExpr::UBMeet(args) => {
            let mut values = Vec::with_capacity(args.len());
            for a in args {
                match eval(s, a, env)? {
                    PartialValue::Defined(v) => values.push(v),
                    u => return Ok(u),
                }
            }
            let base = SubsetMask::singleton(values[0]).union(SubsetMask::singleton(values[1]));
            let mut set = p.upper_bounds(base);
            for &v in &values[2..] {
                set.insert(v);
            }
            match p.infimum(set) {
                Some(v) => PartialValue::Defined(v),
                None => PartialValue::Undefined(Undefined {
                    term: t.clone(),
                    reason: UndefReason::Infimum(set),
                }),
            }
        }
    };
    Ok(value)
}

/// A term bundled with its name and variable arities.
#[derive(Clone, Debug)]
pub struct NamedTerm {
    pub name: &'static str,
    pub x_arity: usize,
    pub y_arity: usize,
    pub expr: TermExpr,
}

/// The quaternary lattice helper `t(a, b, z, u) = (a v b) ^ (z * b) ^ u`.
pub fn helper_t(a: TermExpr, b: TermExpr, z: TermExpr, u: TermExpr) -> TermExpr {
    TermExpr::meet(vec![
        TermExpr::join(a, b.clone()),
        TermExpr::star(z, b),
        u,
    ])
}

/// The quaternary order-side helper `T(a, b, z, u) = U(a, b) ^ (z * b) ^ u`.
pub fn helper_t_partial(a: TermExpr, b: TermExpr, z: TermExpr, u: TermExpr) -> TermExpr {
    TermExpr::ubmeet(vec![a, b.clone(), TermExpr::star(z, b), u])
}

/// The five-term ideal-term basis that characterizes lattice filters by
/// closedness. All have three universally ranging variables and two subset
/// variables, except the constant first term.
pub fn ideal_terms_lattice() -> Vec<NamedTerm> {
    use TermExpr as E;
    let (x1, x2, x3) = (E::x(0), E::x(1), E::x(2));
    let (y1, y2) = (E::y(0), E::y(1));
    let t = |a: &E, b: &E, z: &E, u: &E| helper_t(a.clone(), b.clone(), z.clone(), u.clone());
    vec![
        NamedTerm { name: "t1", x_arity: 0, y_arity: 0, expr: E::One },
        NamedTerm {
            name: "t2",
            x_arity: 3,
            y_arity: 2,
            expr: E::star(
                E::join(t(&x1, &x2, &y1, &y2), x3.clone()),
                E::join(x2.clone(), x3.clone()),
            ),
        },
        NamedTerm {
            name: "t3",
            x_arity: 3,
            y_arity: 2,
            expr: E::star(
                E::meet(vec![t(&x1, &x2, &y1, &y2), x3.clone()]),
                E::meet(vec![x2.clone(), x3.clone()]),
            ),
        },
        NamedTerm {
            name: "t4",
            x_arity: 3,
            y_arity: 2,
            expr: E::star(
                E::star(t(&x1, &x2, &y1, &y2), x3.clone()),
                E::star(x2.clone(), x3.clone()),
            ),
        },
        NamedTerm {
            name: "t5",
            x_arity: 3,
            y_arity: 2,
            expr: E::star(
                E::star(x3.clone(), x1.clone()),
                E::star(x3, t(&x2, &x1, &y2, &y1)),
            ),
        },
    ]
}

/// The four-term partial ideal-term basis for the order side. Closedness
/// under these implies being a filter on strong structures; note that the
/// last term contains two meets, so it is undefined wherever those bounds
/// are missing.
pub fn partial_ideal_terms_poset() -> Vec<NamedTerm> {
    use TermExpr as E;
    let (x1, x2, x3, x4) = (E::x(0), E::x(1), E::x(2), E::x(3));
    let (y1, y2, y3, y4) = (E::y(0), E::y(1), E::y(2), E::y(3));
    let tt = |a: &E, b: &E, z: &E, u: &E| {
        helper_t_partial(a.clone(), b.clone(), z.clone(), u.clone())
    };
    vec![
        NamedTerm { name: "T1", x_arity: 0, y_arity: 0, expr: E::One },
        NamedTerm {
            name: "T2",
            x_arity: 3,
            y_arity: 2,
            expr: E::star(
                E::star(tt(&x1, &x2, &y1, &y2), x3.clone()),
                E::star(x2.clone(), x3.clone()),
            ),
        },
        NamedTerm {
            name: "T3",
            x_arity: 3,
            y_arity: 2,
            expr: E::star(
                E::star(x3.clone(), x1.clone()),
                E::star(x3.clone(), tt(&x2, &x1, &y2, &y1)),
            ),
        },
        NamedTerm {
            name: "T4",
            x_arity: 4,
            y_arity: 4,
            expr: E::star(
                E::meet(vec![tt(&x1, &x2, &y1, &y2), tt(&x3, &x4, &y3, &y4)]),
                E::meet(vec![x2, x4]),
            ),
        },
    ]
}

/// The ternary term `p(x, y, z) = ((x*y)*z) ^ ((z*y)*x)`, a Maltsev term in
/// lattice mode.
pub fn maltsev_p() -> NamedTerm {
    use TermExpr as E;
    let (x, y, z) = (E::x(0), E::x(1), E::x(2));
    NamedTerm {
        name: "p",
        x_arity: 3,
        y_arity: 0,
        expr: E::meet(vec![
            E::star(E::star(x.clone(), y.clone()), z.clone()),
            E::star(E::star(z, y), x),
        ]),
    }
}

/// The ternary term `q(x, y, z) = (x v z) ^ ((x*y)*z) ^ (y*x)`, a second
/// Maltsev term in lattice mode, distinct from `p` as a function on some
/// structures.
pub fn maltsev_q() -> NamedTerm {
    use TermExpr as E;
    let (x, y, z) = (E::x(0), E::x(1), E::x(2));
    NamedTerm {
        name: "q",
        x_arity: 3,
        y_arity: 0,
        expr: helper_t(x.clone(), z.clone(), E::star(x, y.clone()), E::star(y, E::x(0))),
    }
}

/// The partial ternary term `Q(x, y, z) = U(x, z) ^ ((x*y)*z) ^ (y*x)`; its
/// two Maltsev instances are defined on every strong structure.
pub fn maltsev_q_partial() -> NamedTerm {
    use TermExpr as E;
    let (x, y, z) = (E::x(0), E::x(1), E::x(2));
    NamedTerm {
        name: "Q",
        x_arity: 3,
        y_arity: 0,
        expr: helper_t_partial(x.clone(), z.clone(), E::star(x, y.clone()), E::star(y, E::x(0))),
    }
}

fn eval_closed(s: &SpcStructure, t: &TermExpr, xs: &[ElementId]) -> PartialValue {
    eval(s, t, &Env::new(xs, &[])).expect("term arity matches environment")
}

/// Checks `p(x, x, z) = z` and `p(x, z, z) = x` over all pairs.
pub fn maltsev_check_p(s: &SpcStructure) -> Result<Report, ModeError> {
    s.require_mode(Mode::LatticeSpc)?;
    Ok(maltsev_identity_report(s, &maltsev_p(), "p"))
}

/// Checks the Maltsev identities for `q` and records a triple where `q`
/// differs from `p`, if one exists.
pub fn maltsev_check_q(s: &SpcStructure) -> Result<Report, ModeError> {
    s.require_mode(Mode::LatticeSpc)?;
    let mut r = maltsev_identity_report(s, &maltsev_q(), "q");
    let p = s.poset();
    let (tp, tq) = (maltsev_p(), maltsev_q());
    let mut found = None;
    'scan: for x in p.elements() {
        for y in p.elements() {
            for z in p.elements() {
                let xs = [x, y, z];
                let vp = eval_closed(s, &tp.expr, &xs);
                let vq = eval_closed(s, &tq.expr, &xs);
                if vp != vq {
                    found = Some((xs, vp, vq));
                    break 'scan;
                }
            }
        }
    }
    match found {
        Some(([x, y, z], vp, vq)) => r.note(format!(
            "q differs from p at ({}, {}, {}): p = {}, q = {}",
            p.label(x),
            p.label(y),
            p.label(z),
            p.label(vp.defined().expect("total in lattice mode")),
            p.label(vq.defined().expect("total in lattice mode")),
        )),
        None => r.note(String::from("q agrees with p everywhere on this structure")),
    }
    Ok(r)
}

fn maltsev_identity_report(s: &SpcStructure, term: &NamedTerm, name: &str) -> Report {
    let p = s.poset();
    let mut r = Report::new(format!("Maltsev identities for {name}"));
    let mut w1 = None;
    let mut w2 = None;
    for x in p.elements() {
        for z in p.elements() {
            if w1.is_none() {
                let v = eval_closed(s, &term.expr, &[x, x, z]);
                if v.defined() != Some(z) {
                    w1 = Some((x, z));
                }
            }
            if w2.is_none() {
                let v = eval_closed(s, &term.expr, &[x, z, z]);
                if v.defined() != Some(x) {
                    w2 = Some((x, z));
                }
            }
        }
    }
    r.push(pair_check(s, &format!("{name}(x, x, z) = z"), w1));
    r.push(pair_check(s, &format!("{name}(x, z, z) = x"), w2));
    r
}

fn pair_check(s: &SpcStructure, label: &str, w: Option<(ElementId, ElementId)>) -> Check {
    match w {
        None => Check::pass(label),
        Some((a, b)) => Check::fail(
            label,
            format!("at ({}, {})", s.poset().label(a), s.poset().label(b)),
        ),
    }
}

/// Checks that both Maltsev instances of the partial term `Q` are defined
/// and correct on a strong structure, and records how often `Q` itself is
/// undefined over all triples.
pub fn partial_maltsev_check_q(s: &SpcStructure) -> Report {
    let mut r = Report::new("Maltsev instances of the partial term Q");
    if !s.is_strong() {
        r.push(Check::not_applicable(
            "Q(x, x, z) = z and Q(x, z, z) = x",
            "structure is not strong",
        ));
        return r;
    }
    let p = s.poset();
    let term = maltsev_q_partial();
    let mut w1 = None;
    let mut w2 = None;
    for x in p.elements() {
        for z in p.elements() {
            if w1.is_none() && eval_closed(s, &term.expr, &[x, x, z]).defined() != Some(z) {
                w1 = Some((x, z));
            }
            if w2.is_none() && eval_closed(s, &term.expr, &[x, z, z]).defined() != Some(x) {
                w2 = Some((x, z));
            }
        }
    }
    r.push(pair_check(s, "Q(x, x, z) defined and = z", w1));
    r.push(pair_check(s, "Q(x, z, z) defined and = x", w2));

    let mut undefined = 0usize;
    let mut total = 0usize;
    let mut example = None;
    for x in p.elements() {
        for y in p.elements() {
            for z in p.elements() {
                total += 1;
                if !eval_closed(s, &term.expr, &[x, y, z]).is_defined() {
                    undefined += 1;
                    example.get_or_insert((x, y, z));
                }
            }
        }
    }
    match example {
        None => r.note(format!("Q is defined at all {total} triples")),
        Some((x, y, z)) => r.note(format!(
            "Q is undefined at {undefined} of {total} triples, first at ({}, {}, {})",
            p.label(x),
            p.label(y),
            p.label(z)
        )),
    }
    r
}

/// Why a subset fails to be closed under a term family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosednessFailure {
    /// The instance was undefined.
    Undefined(Undefined),
    /// The instance evaluated to a value outside the subset.
    ValueOutside(ElementId),
}

/// The first failing instance of a closedness scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosednessWitness {
    pub term: &'static str,
    pub xs: Vec<ElementId>,
    pub ys: Vec<ElementId>,
    pub failure: ClosednessFailure,
}

/// True when, for every term, every assignment of its `X` variables to
/// arbitrary elements and its `Y` variables to members of `a` yields a
/// defined value inside `a`. Scan order is: terms in the given order, `X`
/// tuples outer, `Y` tuples inner, each odometer-style with the last
/// position fastest.
pub fn is_closed_under(
    s: &SpcStructure,
    a: SubsetMask,
    terms: &[NamedTerm],
) -> Verdict<ClosednessWitness> {
    let universe: Vec<ElementId> = s.poset().elements().collect();
    let members: Vec<ElementId> = a.iter().collect();
    for term in terms {
        let mut witness = None;
        each_tuple(&universe, term.x_arity, &mut |xs| {
            let mut keep_going = true;
            each_tuple(&members, term.y_arity, &mut |ys| {
                let value = eval(s, &term.expr, &Env::new(xs, ys))
                    .expect("term arity matches environment");
                let failure = match value {
                    PartialValue::Defined(v) if a.contains(v) => None,
                    PartialValue::Defined(v) => Some(ClosednessFailure::ValueOutside(v)),
                    PartialValue::Undefined(u) => Some(ClosednessFailure::Undefined(u)),
                };
                match failure {
                    None => true,
                    Some(failure) => {
                        witness = Some(ClosednessWitness {
                            term: term.name,
                            xs: xs.to_vec(),
                            ys: ys.to_vec(),
                            failure,
                        });
                        keep_going = false;
                        false
                    }
                }
            });
            keep_going
        });
        if let Some(w) = witness {
            return Verdict::Fails(w);
        }
    }
    Verdict::Holds
}

/// Calls `f` for every `arity`-tuple over `pool`, last position fastest;
/// stops early when `f` returns false. With `arity == 0` the single empty
/// tuple is visited; an empty pool with positive arity yields no tuples.
fn each_tuple(pool: &[ElementId], arity: usize, f: &mut dyn FnMut(&[ElementId]) -> bool) -> bool {
    if arity == 0 {
        return f(&[]);
    }
    if pool.is_empty() {
        return true;
    }
    let mut idx = vec![0usize; arity];
    let mut buf = vec![pool[0]; arity];
    loop {
        for (slot, &i) in buf.iter_mut().zip(idx.iter()) {
            *slot = pool[i];
        }
        if !f(&buf) {
            return false;
        }
        let mut k = arity;
        loop {
            if k == 0 {
                return true;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < pool.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn el(s: &SpcStructure, l: &str) -> ElementId {
        s.poset().element_by_label(l).unwrap()
    }

    #[test]
    fn order_helper_term_recovers_x() {
        // T(x, y, x*y, y*x) = x; here on the seven-element sample with
        // x = a, y = b, so z = a*b and u = b*a are fed explicitly.
        let s = samples::fig2_structure();
        let (a, b) = (el(&s, "a"), el(&s, "b"));
        let z = s.star(a, b);
        let u = s.star(b, a);
        let t = helper_t_partial(
            TermExpr::x(0),
            TermExpr::x(1),
            TermExpr::x(2),
            TermExpr::x(3),
        );
        let v = eval(&s, &t, &Env::new(&[a, b, z, u], &[])).unwrap();
        assert_eq!(v.defined(), Some(a));
    }

    #[test]
    fn meet_of_incomparable_pair_is_undefined_with_the_failing_set() {
        let s = samples::fig2_structure();
        let (d, e) = (el(&s, "d"), el(&s, "e"));
        let t = TermExpr::meet(vec![TermExpr::x(0), TermExpr::x(1)]);
        let v = eval(&s, &t, &Env::new(&[d, e], &[])).unwrap();
        match v {
            PartialValue::Undefined(u) => {
                let expect = SubsetMask::singleton(d).union(SubsetMask::singleton(e));
                assert_eq!(u.reason, UndefReason::Infimum(expect));
                assert_eq!(u.term, t);
            }
            PartialValue::Defined(_) => panic!("expected an undefined meet"),
        }
    }

    #[test]
    fn unbound_variable_is_an_error() {
        let s = samples::n5_structure();
        let t = TermExpr::x(5);
        let err = eval(&s, &t, &Env::new(&[], &[])).unwrap_err();
        assert_eq!(err, UnboundVariable(Var::X(5)));
    }

    #[test]
    fn lattice_evaluation_is_total_on_samples() {
        let terms = ideal_terms_lattice();
        for s in [
            samples::n5_structure(),
            crate::star::SpcStructure::derive(samples::boolean4()).unwrap(),
        ] {
            let universe: Vec<ElementId> = s.poset().elements().collect();
            for t in &terms {
                each_tuple(&universe, t.x_arity, &mut |xs| {
                    each_tuple(&universe, t.y_arity, &mut |ys| {
                        assert!(eval(&s, &t.expr, &Env::new(xs, ys)).unwrap().is_defined());
                        true
                    });
                    true
                });
            }
        }
    }

    #[test]
    fn pentagon_p_values() {
        let s = samples::n5_structure();
        let p = maltsev_p();
        let (a, b, c) = (el(&s, "a"), el(&s, "b"), el(&s, "c"));
        let v = eval(&s, &p.expr, &Env::new(&[a, b, c], &[])).unwrap();
        assert_eq!(v.defined(), Some(a));
        let r = maltsev_check_p(&s).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn pentagon_q_differs_from_p_somewhere() {
        let s = samples::n5_structure();
        let r = maltsev_check_q(&s).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.notes.iter().any(|n| n.contains("differs from p")), "{r}");
        // A concrete differing triple: p(a, 0, b) = a while q(a, 0, b) = 1.
        let (a, zero, b, one) = (el(&s, "a"), el(&s, "0"), el(&s, "b"), el(&s, "1"));
        let vp = eval(&s, &maltsev_p().expr, &Env::new(&[a, zero, b], &[])).unwrap();
        let vq = eval(&s, &maltsev_q().expr, &Env::new(&[a, zero, b], &[])).unwrap();
        assert_eq!(vp.defined(), Some(a));
        assert_eq!(vq.defined(), Some(one));
    }

    #[test]
    fn maltsev_checks_require_lattice_mode() {
        let s = samples::fig2_structure();
        assert!(maltsev_check_p(&s).is_err());
        assert!(maltsev_check_q(&s).is_err());
    }

    #[test]
    fn partial_q_instances_on_the_wide_diamond() {
        let s = samples::fig2_structure();
        let r = partial_maltsev_check_q(&s);
        assert!(r.passed(), "{r}");
        let term = maltsev_q_partial();
        let (d, b, e, one) = (el(&s, "d"), el(&s, "b"), el(&s, "e"), el(&s, "1"));
        let v = eval(&s, &term.expr, &Env::new(&[d, b, e], &[])).unwrap();
        assert_eq!(v.defined(), Some(one));
    }

    #[test]
    fn partial_q_on_singleton() {
        let s = crate::star::SpcStructure::derive(samples::chain(1)).unwrap();
        let r = partial_maltsev_check_q(&s);
        assert!(r.passed(), "{r}");
        assert!(r.notes[0].contains("all 1 triples"));
    }

    #[test]
    fn lattice_ideal_terms_all_ones_instances_are_one() {
        let s = samples::n5_structure();
        let one = el(&s, "1");
        let universe: Vec<ElementId> = s.poset().elements().collect();
        for t in ideal_terms_lattice() {
            each_tuple(&universe, t.x_arity, &mut |xs| {
                let ys = vec![one; t.y_arity];
                let v = eval(&s, &t.expr, &Env::new(xs, &ys)).unwrap();
                assert_eq!(v.defined(), Some(one), "{} at {:?}", t.name, xs);
                true
            });
        }
    }

    #[test]
    fn order_ideal_terms_all_ones_instances() {
        // With every subset variable at 1: the first three terms are defined
        // everywhere with value 1; the last contains the meet of its second
        // and fourth universal variables, so it is defined exactly where
        // that meet exists (and is then 1).
        let s = samples::fig2_structure();
        let one = el(&s, "1");
        let universe: Vec<ElementId> = s.poset().elements().collect();
        for t in partial_ideal_terms_poset() {
            each_tuple(&universe, t.x_arity, &mut |xs| {
                let ys = vec![one; t.y_arity];
                let v = eval(&s, &t.expr, &Env::new(xs, &ys)).unwrap();
                if t.name == "T4" {
                    match s.poset().meet(xs[1], xs[3]) {
                        Some(_) => assert_eq!(v.defined(), Some(one), "T4 at {xs:?}"),
                        None => assert!(!v.is_defined(), "T4 at {xs:?}"),
                    }
                } else {
                    assert_eq!(v.defined(), Some(one), "{} at {:?}", t.name, xs);
                }
                true
            });
        }
    }

    #[test]
    fn ideal_terms_match_their_helper_decomposition() {
        // Route check: t4 must equal star(star(t(...), x3), star(x2, x3))
        // when the helper value is computed separately and substituted.
        let s = samples::n5_structure();
        let p = s.poset();
        let terms = ideal_terms_lattice();
        let t4 = terms.iter().find(|t| t.name == "t4").unwrap();
        let helper = helper_t(TermExpr::x(0), TermExpr::x(1), TermExpr::y(0), TermExpr::y(1));
        for x1 in p.elements() {
            for x2 in p.elements() {
                for x3 in p.elements() {
                    for y1 in p.elements() {
                        for y2 in p.elements() {
                            let xs = [x1, x2, x3];
                            let ys = [y1, y2];
                            let tv = eval(&s, &helper, &Env::new(&xs, &ys))
                                .unwrap()
                                .defined()
                                .unwrap();
                            let direct = s.star(s.star(tv, x3), s.star(x2, x3));
                            let full = eval(&s, &t4.expr, &Env::new(&xs, &ys))
                                .unwrap()
                                .defined()
                                .unwrap();
                            assert_eq!(direct, full);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn closedness_examples() {
        let s = samples::n5_structure();
        let terms = ideal_terms_lattice();
        let f = s.poset().subset(&["a", "c", "1"]).unwrap();
        assert!(is_closed_under(&s, f, &terms).holds());
        assert!(is_closed_under(&s, s.poset().universe(), &terms).holds());
        let bad = s.poset().subset(&["1", "b"]).unwrap();
        match is_closed_under(&s, bad, &terms) {
            Verdict::Fails(w) => {
                assert!(matches!(w.failure, ClosednessFailure::ValueOutside(_)));
            }
            Verdict::Holds => panic!("{{1, b}} must not be closed"),
        }
    }

    #[test]
    fn universe_of_a_non_lattice_is_not_closed_under_the_partial_terms() {
        // Closedness demands definedness, and on this structure the helper
        // inside the second term is already undefined for some arguments
        // (the scan reaches that before the meets in the last term), so
        // even the full universe is not closed.
        let s = samples::fig2_structure();
        let v = is_closed_under(&s, s.poset().universe(), &partial_ideal_terms_poset());
        match v {
            Verdict::Fails(w) => {
                assert_eq!(w.term, "T2");
                assert!(matches!(w.failure, ClosednessFailure::Undefined(_)));
            }
            Verdict::Holds => panic!("expected a definedness failure"),
        }
    }

    #[test]
    fn no_subset_of_the_wide_diamond_is_closed_under_the_partial_terms() {
        // Independent of the subset: the last term instantiated with all
        // subset variables at 1 reduces to (x2 ^ x4) * (x2 ^ x4), and the
        // meet of the two incomparable maximal elements does not exist.
        // Since the first term forces 1 into any closed subset, closedness
        // fails for every candidate. Verified here exhaustively.
        let s = samples::fig2_structure();
        let terms = partial_ideal_terms_poset();
        let n = s.poset().n();
        for bits in 0u64..(1 << n) {
            let a = SubsetMask::from_bits(bits);
            assert!(
                !is_closed_under(&s, a, &terms).holds(),
                "subset {a:?} unexpectedly closed"
            );
        }
    }

    #[test]
    fn term_display_is_readable() {
        let q = maltsev_q();
        assert_eq!(
            alloc::string::ToString::to_string(&q.expr),
            "((x1 v x3) ^ ((x1 * x2) * x3) ^ (x2 * x1))"
        );
    }
}
