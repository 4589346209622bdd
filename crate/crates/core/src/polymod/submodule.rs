use std::sync::OnceLock;

use super::groebner::{buchberger_with_order, flatten, Engine, ModuleOrder};
use super::{GroebnerBasis, ModVec, PolyError};
use crate::exactnum::FieldRef;

/// A finitely generated submodule of `S^rank`, `S = K[x_1..x_nvars]`.
#[derive(Debug)]
pub struct Submodule {
    rank: usize,
    nvars: usize,
    generators: Vec<ModVec>,
    graded: bool,
    groebner: OnceLock<GroebnerBasis>,
}

impl Clone for Submodule {
    fn clone(&self) -> Self {
        let groebner = OnceLock::new();
        if let Some(gb) = self.groebner.get() {
            let _ = groebner.set(gb.clone());
        }
        Submodule {
            rank: self.rank,
            nvars: self.nvars,
            generators: self.generators.clone(),
            graded: self.graded,
            groebner,
        }
    }
}

impl Submodule {
    /// Zero generators are dropped.
    pub fn new(rank: usize, nvars: usize, generators: Vec<ModVec>) -> Result<Self, PolyError> {
        for g in &generators {
            if g.rank() != rank {
                return Err(PolyError::RankMismatch(g.rank(), rank));
            }
            if !g.is_zero() && g.nvars() != nvars {
                return Err(PolyError::RingMismatch(g.nvars(), nvars));
            }
        }
        let generators: Vec<ModVec> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let graded = generators.iter().all(ModVec::is_homogeneous);
        Ok(Submodule {
            rank,
            nvars,
            generators,
            graded,
            groebner: OnceLock::new(),
        })
    }

    /// The whole free module `S^rank`.
    pub fn free(field: &FieldRef, rank: usize, nvars: usize) -> Self {
        let gens = (0..rank)
            .map(|i| ModVec::unit(field, rank, nvars, i))
            .collect();
        Self::new(rank, nvars, gens).expect("unit vectors")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[ModVec] {
        &self.generators
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// Reduced Gröbner basis under grevlex term-over-position, computed once.
    pub fn groebner(&self) -> &GroebnerBasis {
        self.groebner.get_or_init(|| {
            buchberger_with_order(&self.generators, ModuleOrder::top(self.rank), self.nvars)
                .expect("generators validated at construction")
        })
    }

    pub fn contains(&self, v: &ModVec) -> bool {
        module_membership(v, self)
    }

    /// Mutual containment of generators.
    pub fn same_as(&self, other: &Submodule) -> bool {
        self.generators.iter().all(|g| other.contains(g))
            && other.generators.iter().all(|g| self.contains(g))
    }

    fn check_compatible(&self, other: &Submodule) -> Result<(), PolyError> {
        if self.rank != other.rank {
            return Err(PolyError::RankMismatch(self.rank, other.rank));
        }
        if self.nvars != other.nvars {
            return Err(PolyError::RingMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }
}

/// `v ∈ M` iff `v` reduces to zero against a Gröbner basis of `M`.
pub fn module_membership(v: &ModVec, m: &Submodule) -> bool {
    if v.is_zero() {
        return true;
    }
    if v.rank() != m.rank || m.generators.is_empty() {
        return false;
    }
    m.groebner().contains(v)
}

/// Generators of the module of relations `{a ∈ S^m : Σ a_i gens_i = 0}`.
///
/// Computed by eliminating the first block of `(gens_i ; e_i)` in `S^{r+m}`;
/// the tag `e_i` is shifted by `deg gens_i` so homogeneous input stays graded.
pub fn syzygy_basis(gens: &[ModVec]) -> Result<Submodule, PolyError> {
    let first = gens.first().ok_or(PolyError::Empty)?;
    let (rank, nvars) = (first.rank(), first.nvars());
    let field = first.field().ok_or(PolyError::ZeroVector)?.clone();
    let m = gens.len();
    let mut shifts = vec![0u32; rank];
    for g in gens {
        if g.is_zero() {
            return Err(PolyError::ZeroVector);
        }
        if g.rank() != rank {
            return Err(PolyError::RankMismatch(g.rank(), rank));
        }
        shifts.push(g.pdeg().unwrap_or(0));
    }
    let aug: Vec<ModVec> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| g.concat(&ModVec::unit(&field, m, nvars, i)))
        .collect();
    let gb = buchberger_with_order(&aug, ModuleOrder::eliminating(shifts, rank), nvars)?;
    let syz: Vec<ModVec> = gb
        .elements()
        .iter()
        .filter_map(|v| {
            let (head, tail) = v.split_at(rank);
            head.is_zero().then_some(tail)
        })
        .collect();
    let module = Submodule::new(m, nvars, syz)?;
    if module.is_graded() {
        let gens = minimal_generators(&module)?.into_iter().map(|(v, _)| v).collect();
        Submodule::new(m, nvars, gens)
    } else {
        Ok(module)
    }
}

/// Generators of `M ∩ N`.
///
/// A relation `Σ a_i m_i = Σ b_j n_j` is found as an element with vanishing
/// first block in the module generated by `(m_i ; m_i)` and `(n_j ; 0)`; its
/// second block `Σ a_i m_i` lies in the intersection. The second block carries
/// the image of the relation instead of the relation itself, so the ambient
/// rank is `2r` rather than `r + |gens|`.
pub fn module_intersect(m: &Submodule, n: &Submodule) -> Result<Submodule, PolyError> {
    m.check_compatible(n)?;
    let (rank, nvars) = (m.rank, m.nvars);
    if m.generators.is_empty() || n.generators.is_empty() {
        return Submodule::new(rank, nvars, Vec::new());
    }
    let zero = ModVec::zero(rank, nvars);
    let mut aug: Vec<ModVec> = m.generators.iter().map(|g| g.concat(g)).collect();
    aug.extend(n.generators.iter().map(|g| g.concat(&zero)));
    let order = ModuleOrder::eliminating(vec![0; 2 * rank], rank);
    let gb = buchberger_with_order(&aug, order, nvars)?;
    let gens = gb
        .elements()
        .iter()
        .filter_map(|v| {
            let (head, tail) = v.split_at(rank);
            head.is_zero().then_some(tail)
        })
        .collect();
    Submodule::new(rank, nvars, gens)
}

/// Minimal homogeneous generating set, sorted by degree ascending.
///
/// Generators are scanned in degree order and kept only when not already in
/// the span of those kept so far; the Gröbner basis of the kept set is only
/// completed up to the degree being tested.
pub fn minimal_generators(m: &Submodule) -> Result<Vec<(ModVec, u32)>, PolyError> {
    if !m.graded {
        return Err(PolyError::NotGraded);
    }
    let order = ModuleOrder::top(m.rank);
    let mut gens: Vec<(ModVec, u32)> = m
        .generators
        .iter()
        .map(|g| (g.clone(), g.pdeg().expect("graded")))
        .collect();
    gens.sort_by_key(|(_, d)| *d);
    let mut engine = Engine::new(order.clone(), m.nvars);
    let mut kept = Vec::new();
    for (g, d) in gens {
        engine.complete(Some(d));
        if engine.add(flatten(&g, &order)) {
            kept.push((g, d));
        }
    }
    Ok(kept)
}

/// Folds `module_intersect` over the list in order, minimalizing after each step.
pub fn intersect_all(
    field: &FieldRef,
    rank: usize,
    nvars: usize,
    modules: &[Submodule],
) -> Result<Submodule, PolyError> {
    let mut acc = Submodule::free(field, rank, nvars);
    for m in modules {
        let next = module_intersect(&acc, m)?;
        acc = if next.is_graded() {
            let gens = minimal_generators(&next)?.into_iter().map(|(v, _)| v).collect();
            Submodule::new(rank, nvars, gens)?
        } else {
            next
        };
    }
    Ok(acc)
}

/// `Σ_i coeffs_i · gens_i` for a syzygy check.
pub fn apply_relation(relation: &ModVec, gens: &[ModVec]) -> ModVec {
    let first = &gens[0];
    ModVec::combination(relation.comps(), gens, first.rank(), first.nvars())
}
