//! Buchberger's algorithm for submodules of `S^r`.
//!
//! Vectors are flattened into term lists `(component, monomial, coefficient)`
//! sorted by a module monomial order. Pairs are processed by sugar degree,
//! which for homogeneous input is the true degree and lets the computation
//! stop at a degree bound.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};

use super::{ModVec, Monomial, MultiPoly, PolyError};
use crate::exactnum::CycloNum;

/// Module monomial order.
///
/// Terms `m·e_i` are compared by: block (components `< elim` dominate when
/// `elim > 0`), then shifted degree `deg m + shift_i`, then grevlex on `m`,
/// then component index (smaller index is larger). With zero shifts and no
/// block this is grevlex term-over-position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    shifts: Vec<u32>,
    elim: usize,
}

impl ModuleOrder {
    pub fn top(rank: usize) -> Self {
        ModuleOrder {
            shifts: vec![0; rank],
            elim: 0,
        }
    }

    /// Block order eliminating the first `elim` components.
    pub fn eliminating(shifts: Vec<u32>, elim: usize) -> Self {
        ModuleOrder { shifts, elim }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shift(&self, comp: usize) -> u32 {
        self.shifts[comp]
    }

    pub fn cmp_terms(&self, ca: usize, ma: &Monomial, cb: usize, mb: &Monomial) -> Ordering {
        if self.elim > 0 {
            let ba = ca < self.elim;
            let bb = cb < self.elim;
            if ba != bb {
                return if ba { Ordering::Greater } else { Ordering::Less };
            }
        }
        (ma.degree() + self.shifts[ca])
            .cmp(&(mb.degree() + self.shifts[cb]))
            .then_with(|| ma.grevlex_cmp(mb))
            .then_with(|| cb.cmp(&ca))
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub comp: usize,
    pub mono: Monomial,
    pub coef: CycloNum,
}

pub(crate) fn flatten(v: &ModVec, order: &ModuleOrder) -> Vec<Term> {
    let mut terms: Vec<Term> = v
        .comps()
        .iter()
        .enumerate()
        .flat_map(|(comp, p)| {
            p.terms().iter().map(move |(m, c)| Term {
                comp,
                mono: m.clone(),
                coef: c.clone(),
            })
        })
        .collect();
    terms.sort_by(|a, b| order.cmp_terms(b.comp, &b.mono, a.comp, &a.mono));
    terms
}

pub(crate) fn unflatten(terms: Vec<Term>, rank: usize, nvars: usize) -> ModVec {
    let mut buckets: Vec<Vec<(Monomial, CycloNum)>> = vec![Vec::new(); rank];
    for t in terms {
        buckets[t.comp].push((t.mono, t.coef));
    }
    // within one component the module order restricts to grevlex, so each
    // bucket is already sorted
    ModVec::new(
        buckets
            .into_iter()
            .map(|b| MultiPoly::from_sorted_terms(nvars, b))
            .collect(),
    )
}

fn make_monic(terms: &mut [Term]) {
    if let Some(first) = terms.first() {
        if first.coef.is_one() {
            return;
        }
        let inv = first.coef.inv().expect("nonzero leading coefficient");
        for t in terms.iter_mut() {
            t.coef = &t.coef * &inv;
        }
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    degree: u32,
    i: usize,
    j: usize,
}

/// Incremental Buchberger state.
pub(crate) struct Engine {
    order: ModuleOrder,
    nvars: usize,
    basis: Vec<Vec<Term>>,
    sugar: Vec<u32>,
    pending: BinaryHeap<Reverse<Pair>>,
    pending_set: HashSet<(usize, usize)>,
}

impl Engine {
    pub fn new(order: ModuleOrder, nvars: usize) -> Self {
        Engine {
            order,
            nvars,
            basis: Vec::new(),
            sugar: Vec::new(),
            pending: BinaryHeap::new(),
            pending_set: HashSet::new(),
        }
    }

    fn find_reducer(&self, comp: usize, mono: &Monomial) -> Option<usize> {
        self.basis
            .iter()
            .position(|g| g[0].comp == comp && g[0].mono.divides(mono))
    }

    /// `a - c·m·g_tail`, where the leading term of `c·m·g` has already cancelled.
    fn sub_scaled(&self, a: &[Term], c: &CycloNum, m: &Monomial, g_tail: &[Term]) -> Vec<Term> {
        let mut out = Vec::with_capacity(a.len() + g_tail.len());
        let (mut i, mut j) = (0, 0);
        let mut scaled = |t: &Term| Term {
            comp: t.comp,
            mono: t.mono.mul(m),
            coef: -(&t.coef * c),
        };
        let mut next_b: Option<Term> = g_tail.first().map(&mut scaled);
        while i < a.len() {
            let Some(b) = next_b.as_ref() else { break };
            match self.order.cmp_terms(a[i].comp, &a[i].mono, b.comp, &b.mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(next_b.take().unwrap());
                    j += 1;
                    next_b = g_tail.get(j).map(&mut scaled);
                }
                Ordering::Equal => {
                    let s = &a[i].coef + &b.coef;
                    if !s.is_zero() {
                        out.push(Term {
                            comp: a[i].comp,
                            mono: a[i].mono.clone(),
                            coef: s,
                        });
                    }
                    i += 1;
                    j += 1;
                    next_b = g_tail.get(j).map(&mut scaled);
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        if let Some(b) = next_b {
            out.push(b);
            out.extend(g_tail[j + 1..].iter().map(&mut scaled));
        }
        out
    }

    /// Full reduction: no term of the result is divisible by a leading term.
    pub fn reduce(&self, mut p: Vec<Term>) -> Vec<Term> {
        let mut done: Vec<Term> = Vec::new();
        let mut i = 0;
        while i < p.len() {
            match self.find_reducer(p[i].comp, &p[i].mono) {
                Some(k) => {
                    let g = &self.basis[k];
                    let m = p[i].mono.div(&g[0].mono);
                    let c = p[i].coef.clone();
                    done.extend(p.drain(..i));
                    p = self.sub_scaled(&p[1..], &c, &m, &g[1..]);
                    i = 0;
                }
                None => i += 1,
            }
        }
        done.extend(p);
        done
    }

    fn s_vector(&self, i: usize, j: usize) -> Vec<Term> {
        let (gi, gj) = (&self.basis[i], &self.basis[j]);
        let lcm = gi[0].mono.lcm(&gj[0].mono);
        let mi = lcm.div(&gi[0].mono);
        let mj = lcm.div(&gj[0].mono);
        let a: Vec<Term> = gi[1..]
            .iter()
            .map(|t| Term {
                comp: t.comp,
                mono: t.mono.mul(&mi),
                coef: t.coef.clone(),
            })
            .collect();
        self.sub_scaled(&a, &CycloNum::one(gi[0].coef.field()), &mj, &gj[1..])
    }

    fn top_degree(&self, v: &[Term]) -> u32 {
        v.iter()
            .map(|t| t.mono.degree() + self.order.shift(t.comp))
            .max()
            .unwrap_or(0)
    }

    /// Reduces `v` and, when a nonzero remainder is left, adds it to the basis.
    /// Returns whether the basis grew.
    pub fn add(&mut self, v: Vec<Term>) -> bool {
        let sugar = self.top_degree(&v);
        self.add_with_sugar(v, sugar)
    }

    fn add_with_sugar(&mut self, v: Vec<Term>, sugar: u32) -> bool {
        let mut r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        make_monic(&mut r);
        let sugar = sugar.max(self.top_degree(&r));
        self.insert(r, sugar);
        true
    }

    fn pair_sugar(&self, i: usize, j: usize) -> u32 {
        let (li, lj) = (&self.basis[i][0].mono, &self.basis[j][0].mono);
        let lcm = li.lcm(lj).degree();
        (self.sugar[i] + lcm - li.degree()).max(self.sugar[j] + lcm - lj.degree())
    }

    fn insert(&mut self, r: Vec<Term>, sugar: u32) {
        let k = self.basis.len();
        let comp = r[0].comp;
        let ideal_case = self.order.rank() == 1;
        let mut pairs = Vec::new();
        for (i, g) in self.basis.iter().enumerate() {
            if g[0].comp != comp {
                continue;
            }
            // product criterion, valid only for ideals
            if ideal_case && g[0].mono.is_coprime(&r[0].mono) {
                continue;
            }
            pairs.push(i);
        }
        self.basis.push(r);
        self.sugar.push(sugar);
        for i in pairs {
            let degree = self.pair_sugar(i, k);
            self.pending.push(Reverse(Pair { degree, i, j: k }));
            self.pending_set.insert((i, k));
        }
    }

    // Buchberger's chain criterion: (i, j) is redundant if some other basis
    // element's leading term divides lcm(i, j) and both of its pairs with i
    // and j are no longer pending.
    fn chain_redundant(&self, i: usize, j: usize) -> bool {
        let comp = self.basis[i][0].comp;
        let lcm = self.basis[i][0].mono.lcm(&self.basis[j][0].mono);
        self.basis.iter().enumerate().any(|(k, g)| {
            k != i
                && k != j
                && g[0].comp == comp
                && g[0].mono.divides(&lcm)
                && !self.pending_set.contains(&(i.min(k), i.max(k)))
                && !self.pending_set.contains(&(j.min(k), j.max(k)))
        })
    }

    /// Processes pending pairs up to the given degree (all when `None`).
    pub fn complete(&mut self, max_degree: Option<u32>) {
        while let Some(Reverse(top)) = self.pending.peek() {
            if max_degree.is_some_and(|d| top.degree > d) {
                break;
            }
            let Reverse(Pair { degree, i, j }) = self.pending.pop().unwrap();
            self.pending_set.remove(&(i, j));
            if self.chain_redundant(i, j) {
                continue;
            }
            let s = self.s_vector(i, j);
            self.add_with_sugar(s, degree);
        }
    }

    /// Minimal, tail-reduced basis (leading coefficients 1).
    pub fn reduced_basis(&self) -> Vec<Vec<Term>> {
        let n = self.basis.len();
        let keep: Vec<usize> = (0..n)
            .filter(|&i| {
                let li = &self.basis[i][0];
                !(0..n).any(|j| {
                    j != i && {
                        let lj = &self.basis[j][0];
                        lj.comp == li.comp
                            && lj.mono.divides(&li.mono)
                            && (lj.mono != li.mono || j < i)
                    }
                })
            })
            .collect();
        let mut minimal = Engine::new(self.order.clone(), self.nvars);
        minimal.basis = keep.iter().map(|&i| self.basis[i].clone()).collect();
        let mut out = Vec::with_capacity(keep.len());
        for idx in 0..minimal.basis.len() {
            let g = minimal.basis[idx].clone();
            let lead = g[0].clone();
            // tails are reduced against the others; leads are pairwise non-divisible
            let saved = std::mem::take(&mut minimal.basis[idx]);
            let others = Engine {
                order: self.order.clone(),
                nvars: self.nvars,
                basis: minimal
                    .basis
                    .iter()
                    .filter(|b| !b.is_empty())
                    .cloned()
                    .collect(),
                sugar: Vec::new(),
                pending: BinaryHeap::new(),
                pending_set: HashSet::new(),
            };
            let mut tail = others.reduce(g[1..].to_vec());
            minimal.basis[idx] = saved;
            let mut full = vec![lead];
            full.append(&mut tail);
            out.push(full);
        }
        out
    }
}

/// A Gröbner basis together with the order it was computed for.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: ModuleOrder,
    nvars: usize,
    elements: Vec<ModVec>,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[ModVec] {
        &self.elements
    }

    fn engine(&self) -> Engine {
        let mut e = Engine::new(self.order.clone(), self.nvars);
        e.basis = self
            .elements
            .iter()
            .map(|v| flatten(v, &self.order))
            .collect();
        e
    }

    pub fn reduce(&self, v: &ModVec) -> ModVec {
        let e = self.engine();
        unflatten(e.reduce(flatten(v, &self.order)), self.order.rank(), self.nvars)
    }

    pub fn contains(&self, v: &ModVec) -> bool {
        let e = self.engine();
        e.reduce(flatten(v, &self.order)).is_empty()
    }

    /// Checks the Buchberger criterion directly: every S-vector reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let e = self.engine();
        let n = e.basis.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                e.basis[i][0].comp != e.basis[j][0].comp
                    || e.reduce(e.s_vector(i, j)).is_empty()
            })
        })
    }
}

/// Computes a reduced Gröbner basis under the given order.
pub fn buchberger_with_order(
    gens: &[ModVec],
    order: ModuleOrder,
    nvars: usize,
) -> Result<GroebnerBasis, PolyError> {
    let rank = order.rank();
    for g in gens {
        if g.rank() != rank {
            return Err(PolyError::RankMismatch(g.rank(), rank));
        }
        if g.nvars() != nvars {
            return Err(PolyError::RingMismatch(g.nvars(), nvars));
        }
    }
    let mut engine = Engine::new(order.clone(), nvars);
    let mut sorted: Vec<&ModVec> = gens.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by_key(|g| g.pdeg().unwrap_or(0));
    for g in sorted {
        engine.add(flatten(g, &order));
    }
    engine.complete(None);
    let elements = engine
        .reduced_basis()
        .into_iter()
        .map(|t| unflatten(t, rank, nvars))
        .collect();
    Ok(GroebnerBasis {
        order,
        nvars,
        elements,
    })
}

/// Gröbner basis under grevlex term-over-position.
pub fn buchberger(gens: &[ModVec]) -> Result<GroebnerBasis, PolyError> {
    let first = gens.first().ok_or(PolyError::Empty)?;
    buchberger_with_order(gens, ModuleOrder::top(first.rank()), first.nvars())
}

/// Fully reduces `v` by the list `g` (which need not be a Gröbner basis).
pub fn normal_form(v: &ModVec, g: &[ModVec]) -> ModVec {
    let order = ModuleOrder::top(v.rank());
    let mut e = Engine::new(order.clone(), v.nvars());
    e.basis = g
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| {
            let mut t = flatten(x, &order);
            make_monic(&mut t);
            t
        })
        .collect();
    unflatten(e.reduce(flatten(v, &order)), v.rank(), v.nvars())
}

/// Compares leading terms under grevlex term-over-position.
pub fn modvec_compare_leading(a: &ModVec, b: &ModVec) -> Result<Ordering, PolyError> {
    if a.rank() != b.rank() {
        return Err(PolyError::RankMismatch(a.rank(), b.rank()));
    }
    let order = ModuleOrder::top(a.rank());
    let ta = flatten(a, &order);
    let tb = flatten(b, &order);
    match (ta.first(), tb.first()) {
        (Some(x), Some(y)) => Ok(order.cmp_terms(x.comp, &x.mono, y.comp, &y.mono)),
        _ => Err(PolyError::ZeroVector),
    }
}
