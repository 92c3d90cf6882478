use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Assignment, FoError, Formula};
use crate::algebra::{Element, GreenRelation, GreenTables, PartialGroupoid};
use crate::omega::{identity_holds_relational, SlotTerm};

// Formulas are compiled to negation normal form over numbered slots. Binders
// get slots in depth-first order, so inside a quantifier node every slot
// smaller than its own is bound outside the node and every larger one inside.

#[derive(Debug)]
enum Atom {
    Mult(usize, usize, usize),
    Eq(usize, usize),
    Green(GreenRelation, usize, usize),
    Identity { lhs: SlotTerm, rhs: SlotTerm, slots: Vec<usize> },
}

#[derive(Debug)]
enum Node {
    Lit(bool, Atom),
    And(Vec<Node>),
    Or(Vec<Node>),
    Quant(Box<Quant>),
}

/// The one value worth trying for a quantified slot.
#[derive(Debug, Clone, Copy)]
enum Hint {
    Copy(usize),
    Product(usize, usize),
}

#[derive(Debug)]
struct Quant {
    exists: bool,
    slot: usize,
    body: Node,
    hint: Option<Hint>,
    memo: Option<(usize, Vec<usize>)>,
}

struct Compiler<'a> {
    scope: Vec<(&'a str, usize)>,
    slots: usize,
    memos: usize,
    needs_green: bool,
    needs_omega: bool,
    n: usize,
}

impl<'a> Compiler<'a> {
    fn lookup(&self, v: &str) -> usize {
        self.scope.iter().rev().find(|(name, _)| *name == v).expect("bound").1
    }

    fn compile(&mut self, f: &'a Formula, positive: bool) -> Node {
        match f {
            Formula::Mult(x, y, z) => {
                Node::Lit(positive, Atom::Mult(self.lookup(x), self.lookup(y), self.lookup(z)))
            }
            Formula::Eq(x, y) => Node::Lit(positive, Atom::Eq(self.lookup(x), self.lookup(y))),
            Formula::Green(r, x, y) => {
                self.needs_green = true;
                Node::Lit(positive, Atom::Green(*r, self.lookup(x), self.lookup(y)))
            }
            Formula::Identity(id) => {
                self.needs_green = true;
                self.needs_omega = true;
                let (lhs, rhs) = id.slot_pair();
                let slots = id.vars().iter().map(|v| self.lookup(v)).collect();
                Node::Lit(positive, Atom::Identity { lhs, rhs, slots })
            }
            Formula::Not(g) => self.compile(g, !positive),
            Formula::And(a, b) => self.junction(positive, [(a, true), (b, true)]),
            Formula::Or(a, b) => self.junction(!positive, [(a, false), (b, false)]),
            Formula::Implies(a, b) => self.junction(!positive, [(a, true), (b, false)]),
            Formula::Iff(a, b) => {
                // (a and b) or (not a and not b), negated: (a and not b) or (not a and b)
                let both = Node::And(vec![self.compile(a, true), self.compile(b, positive)]);
                let neither = Node::And(vec![self.compile(a, false), self.compile(b, !positive)]);
                Node::Or(vec![both, neither])
            }
            Formula::Exists(v, g) => self.quant(positive, v, g, positive),
            Formula::Forall(v, g) => self.quant(!positive, v, g, positive),
        }
    }

    /// With `conj`, the conjunction of the children (each possibly
    /// negated); otherwise their disjunction with every polarity flipped.
    fn junction(&mut self, conj: bool, parts: [(&'a Formula, bool); 2]) -> Node {
        let mut children = Vec::new();
        for (f, pos) in parts {
            let node = self.compile(f, if conj { pos } else { !pos });
            match (conj, node) {
                (true, Node::And(cs)) | (false, Node::Or(cs)) => children.extend(cs),
                (_, other) => children.push(other),
            }
        }
        // cheap literals first
        children.sort_by_key(|c| !matches!(c, Node::Lit(..)));
        if conj {
            Node::And(children)
        } else {
            Node::Or(children)
        }
    }

    fn quant(&mut self, exists: bool, v: &'a str, body: &'a Formula, positive: bool) -> Node {
        let slot = self.slots;
        self.slots += 1;
        self.scope.push((v, slot));
        let body = self.compile(body, positive);
        self.scope.pop();
        let hint = find_hint(&body, exists, slot);
        let mut keys = Vec::new();
        let mut nested = false;
        outer_slots(&body, slot, &mut keys, &mut nested);
        keys.sort_unstable();
        keys.dedup();
        let memo = (nested && keys.len() <= 3 && self.n.checked_pow(keys.len() as u32).is_some_and(|c| c <= 1 << 18))
            .then(|| {
                self.memos += 1;
                (self.memos - 1, keys)
            });
        Node::Quant(Box::new(Quant { exists, slot, body, hint, memo }))
    }
}

// One-point rule: in `exists v: ... and v = t and ...` only `v = t` can
// work; dually for `forall v: ... or not v = t or ...`. Literals under
// directly nested quantifiers of the same kind also qualify, as long as
// they only mention `v` and slots bound outside.
fn find_hint(body: &Node, exists: bool, v: usize) -> Option<Hint> {
    let lit_hint = |node: &Node| -> Option<Hint> {
        let Node::Lit(pos, atom) = node else { return None };
        if *pos != exists {
            return None;
        }
        match *atom {
            Atom::Eq(a, b) if a == v && b < v => Some(Hint::Copy(b)),
            Atom::Eq(a, b) if b == v && a < v => Some(Hint::Copy(a)),
            Atom::Mult(a, b, c) if c == v && a < v && b < v => Some(Hint::Product(a, b)),
            _ => None,
        }
    };
    match body {
        Node::Lit(..) => lit_hint(body),
        Node::And(cs) if exists => cs.iter().find_map(|c| lit_hint(c).or_else(|| chain(c, exists, v))),
        Node::Or(cs) if !exists => cs.iter().find_map(|c| lit_hint(c).or_else(|| chain(c, exists, v))),
        Node::Quant(_) => chain(body, exists, v),
        _ => None,
    }
}

fn chain(node: &Node, exists: bool, v: usize) -> Option<Hint> {
    match node {
        Node::Quant(q) if q.exists == exists => find_hint(&q.body, exists, v),
        _ => None,
    }
}

fn outer_slots(node: &Node, below: usize, out: &mut Vec<usize>, nested: &mut bool) {
    let mut add = |s: usize| {
        if s < below {
            out.push(s);
        }
    };
    match node {
        Node::Lit(_, atom) => match atom {
            Atom::Mult(a, b, c) => {
                add(*a);
                add(*b);
                add(*c);
            }
            Atom::Eq(a, b) | Atom::Green(_, a, b) => {
                add(*a);
                add(*b);
            }
            Atom::Identity { slots, .. } => slots.iter().for_each(|&s| add(s)),
        },
        Node::And(cs) | Node::Or(cs) => cs.iter().for_each(|c| outer_slots(c, below, out, nested)),
        Node::Quant(q) => {
            *nested = true;
            let mut inner = false;
            outer_slots(&q.body, below, out, &mut inner);
        }
    }
}

struct Plan {
    root: Node,
    slots: usize,
    memos: usize,
    free: Vec<String>,
    needs_green: bool,
    needs_omega: bool,
}

fn compile(f: &Formula, free: Vec<String>, n: usize) -> Plan {
    let mut c = Compiler {
        scope: Vec::new(),
        slots: free.len(),
        memos: 0,
        needs_green: false,
        needs_omega: false,
        n,
    };
    for (i, v) in free.iter().enumerate() {
        c.scope.push((v.as_str(), i));
    }
    let root = c.compile(f, true);
    let (slots, memos, needs_green, needs_omega) = (c.slots, c.memos, c.needs_green, c.needs_omega);
    Plan { root, slots, memos, free, needs_green, needs_omega }
}

/// Model checker for one partial groupoid.
///
/// Quantifiers range over all elements. Each atom test counts as one probe,
/// so a formula of quantifier depth `q` with `m` atoms costs at most
/// `n^q * m` probes.
pub struct Evaluator<'g> {
    g: &'g PartialGroupoid,
    green: Option<GreenTables>,
    omega: Option<Option<Vec<Element>>>,
    probes: u64,
}

struct Run<'r> {
    g: &'r PartialGroupoid,
    green: Option<&'r GreenTables>,
    omega: Option<&'r [Element]>,
    memos: Vec<Vec<u8>>,
    probes: u64,
    scratch: Vec<Element>,
}

/// A failing top-level conjunct of a sentence and, if it starts with
/// universal quantifiers, the lexicographically first falsifying values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub conjunct: Formula,
    pub assignment: Assignment,
}

impl<'g> Evaluator<'g> {
    pub fn new(g: &'g PartialGroupoid) -> Self {
        Evaluator { g, green: None, omega: None, probes: 0 }
    }

    pub fn groupoid(&self) -> &'g PartialGroupoid {
        self.g
    }

    /// Atom tests performed so far.
    pub fn probes(&self) -> u64 {
        self.probes
    }

    pub fn reset_probes(&mut self) {
        self.probes = 0;
    }

    fn prepare(&mut self, plan: &Plan) {
        if plan.needs_green && self.green.is_none() {
            self.green = Some(self.g.green_tables());
        }
        if plan.needs_omega && self.omega.is_none() {
            // identity atoms are evaluated through ω only on semigroups
            let table = self.g.is_associative().then(|| {
                let mut w = vec![0; self.g.order() + 1];
                for x in self.g.elements() {
                    w[x] = self.g.omega(x).expect("defined in a finite semigroup");
                }
                w
            });
            self.omega = Some(table);
        }
    }

    fn run(&mut self, plan: &Plan, vals: &mut [Element]) -> bool {
        self.prepare(plan);
        let mut run = Run {
            g: self.g,
            green: self.green.as_ref(),
            omega: self.omega.as_ref().and_then(|o| o.as_deref()),
            memos: vec![Vec::new(); plan.memos],
            probes: 0,
            scratch: Vec::new(),
        };
        let result = run.eval(&plan.root, vals);
        self.probes += run.probes;
        result
    }

    fn bind(&self, free: &[String], a: &Assignment, slots: usize) -> Result<Vec<Element>, FoError> {
        let mut vals = vec![0; slots];
        for (i, v) in free.iter().enumerate() {
            let value = *a.get(v).ok_or_else(|| FoError::UnboundVariable(v.clone()))?;
            if !self.g.contains(value) {
                return Err(FoError::ElementOutOfRange { var: v.clone(), value });
            }
            vals[i] = value;
        }
        Ok(vals)
    }

    /// Truth of `f` under `a`, which must bind every free variable.
    pub fn evaluate(&mut self, f: &Formula, a: &Assignment) -> Result<bool, FoError> {
        let plan = compile(f, f.free_vars().into_iter().collect(), self.g.order());
        let mut vals = self.bind(&plan.free, a, plan.slots)?;
        Ok(self.run(&plan, &mut vals))
    }

    pub fn evaluate_sentence(&mut self, f: &Formula) -> Result<bool, FoError> {
        self.evaluate(f, &Assignment::new())
    }

    /// `None` if the sentence holds, otherwise where it fails.
    pub fn counterexample(&mut self, f: &Formula) -> Result<Option<Witness>, FoError> {
        for conjunct in f.conjuncts() {
            if self.evaluate_sentence(conjunct)? {
                continue;
            }
            let mut vars = Vec::new();
            let mut body = conjunct;
            while let Formula::Forall(v, g) = body {
                vars.push(v.clone());
                body = g;
            }
            let mut assignment = Assignment::new();
            if !vars.is_empty() {
                let free: Vec<String> = body.free_vars().into_iter().collect();
                let plan = compile(body, free.clone(), self.g.order());
                // innermost binding of a repeated name wins
                let position = |name: &str| vars.iter().rposition(|v| v == name);
                let n = self.g.order();
                let mut values = vec![1; vars.len()];
                'search: loop {
                    let mut vals = vec![0; plan.slots];
                    for (i, v) in free.iter().enumerate() {
                        vals[i] = values[position(v).expect("closed sentence")];
                    }
                    if !self.run(&plan, &mut vals) {
                        for (i, v) in vars.iter().enumerate() {
                            if position(v) == Some(i) {
                                assignment.insert(v.clone(), values[i]);
                            }
                        }
                        break 'search;
                    }
                    let mut i = values.len();
                    loop {
                        if i == 0 {
                            break 'search;
                        }
                        i -= 1;
                        if values[i] < n {
                            values[i] += 1;
                            break;
                        }
                        values[i] = 1;
                    }
                }
            }
            return Ok(Some(Witness { conjunct: conjunct.clone(), assignment }));
        }
        Ok(None)
    }
}

impl Run<'_> {
    fn atom(&mut self, atom: &Atom, vals: &[Element]) -> bool {
        self.probes += 1;
        match atom {
            Atom::Mult(x, y, z) => self.g.entry(vals[*x], vals[*y]) == vals[*z],
            Atom::Eq(x, y) => vals[*x] == vals[*y],
            Atom::Green(r, x, y) => self.green.expect("prepared").holds(*r, vals[*x], vals[*y]),
            Atom::Identity { lhs, rhs, slots } => {
                self.scratch.clear();
                self.scratch.extend(slots.iter().map(|&s| vals[s]));
                match self.omega {
                    Some(omega) => {
                        term_value(self.g, omega, lhs, &self.scratch)
                            == term_value(self.g, omega, rhs, &self.scratch)
                    }
                    None => identity_holds_relational(
                        self.g,
                        self.green.expect("prepared"),
                        lhs,
                        rhs,
                        &self.scratch,
                    ),
                }
            }
        }
    }

    fn eval(&mut self, node: &Node, vals: &mut [Element]) -> bool {
        match node {
            Node::Lit(pos, atom) => self.atom(atom, vals) == *pos,
            Node::And(cs) => cs.iter().all(|c| self.eval(c, vals)),
            Node::Or(cs) => cs.iter().any(|c| self.eval(c, vals)),
            Node::Quant(q) => self.quant(q, vals),
        }
    }

    fn quant(&mut self, q: &Quant, vals: &mut [Element]) -> bool {
        let n = self.g.order();
        let key = q.memo.as_ref().map(|(id, keys)| {
            let index = keys.iter().fold(0, |acc, &s| acc * n + (vals[s] - 1));
            (*id, index, keys.len())
        });
        if let Some((id, index, k)) = key {
            if self.memos[id].is_empty() {
                self.memos[id] = vec![0; n.pow(k as u32)];
            }
            match self.memos[id][index] {
                1 => return false,
                2 => return true,
                _ => {}
            }
        }
        let result = match q.hint {
            Some(hint) => {
                let candidate = match hint {
                    Hint::Copy(s) => Some(vals[s]),
                    Hint::Product(a, b) => self.g.product(vals[a], vals[b]),
                };
                match candidate {
                    Some(c) => {
                        vals[q.slot] = c;
                        self.eval(&q.body, vals)
                    }
                    // the hinted literal is false (resp. true) for every value
                    None => !q.exists,
                }
            }
            None => {
                let mut result = !q.exists;
                for c in 1..=n {
                    vals[q.slot] = c;
                    if self.eval(&q.body, vals) == q.exists {
                        result = q.exists;
                        break;
                    }
                }
                result
            }
        };
        if let Some((id, index, _)) = key {
            self.memos[id][index] = if result { 2 } else { 1 };
        }
        result
    }
}

fn term_value(g: &PartialGroupoid, omega: &[Element], t: &SlotTerm, values: &[Element]) -> Element {
    match t {
        SlotTerm::Var(i) => values[*i],
        SlotTerm::Concat(a, b) => g.entry(term_value(g, omega, a, values), term_value(g, omega, b, values)),
        SlotTerm::Omega(a) => omega[term_value(g, omega, a, values)],
    }
}

/// Truth of `f` in `g` under `a`.
pub fn evaluate(g: &PartialGroupoid, f: &Formula, a: &Assignment) -> Result<bool, FoError> {
    Evaluator::new(g).evaluate(f, a)
}

pub fn evaluate_sentence(g: &PartialGroupoid, f: &Formula) -> Result<bool, FoError> {
    Evaluator::new(g).evaluate_sentence(f)
}
