use std::collections::HashMap;

use super::{Arrangement, IntPoly, Subspace};

/// The intersection lattice `L(A)`, ordered by reverse inclusion and ranked
/// by codimension, with Möbius values `μ(X) = μ(V, X)`.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    nodes: Vec<Subspace>,
    ranks: Vec<usize>,
    by_rank: Vec<Vec<usize>>,
    covers: Vec<Vec<usize>>,
    atoms: Vec<Vec<u64>>,
    mobius: Vec<i64>,
    index: HashMap<Subspace, usize>,
}

fn bit_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Breadth-first closure: each node is intersected with every hyperplane not
/// containing it; nodes are deduplicated by their echelon form.
pub fn intersection_lattice(a: &Arrangement) -> IntersectionLattice {
    let words = a.len().div_ceil(64).max(1);
    let atoms_of = |x: &Subspace| {
        let mut bits = vec![0u64; words];
        for (i, h) in a.hyperplanes().iter().enumerate() {
            if x.lies_in(h) {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        bits
    };

    let root = Subspace::whole(a.dim());
    let mut lat = IntersectionLattice {
        nodes: vec![root.clone()],
        ranks: vec![0],
        by_rank: vec![vec![0]],
        covers: vec![Vec::new()],
        atoms: vec![vec![0u64; words]],
        mobius: Vec::new(),
        index: HashMap::from([(root, 0)]),
    };
    let mut r = 0;
    while r < lat.by_rank.len() {
        let level = lat.by_rank[r].clone();
        let mut next = Vec::new();
        for x in level {
            for (hi, h) in a.hyperplanes().iter().enumerate() {
                if lat.atoms[x][hi / 64] >> (hi % 64) & 1 == 1 {
                    continue;
                }
                let y = lat.nodes[x].intersect(h);
                let yi = match lat.index.get(&y) {
                    Some(&i) => i,
                    None => {
                        let i = lat.nodes.len();
                        lat.atoms.push(atoms_of(&y));
                        lat.index.insert(y.clone(), i);
                        lat.nodes.push(y);
                        lat.ranks.push(r + 1);
                        lat.covers.push(Vec::new());
                        next.push(i);
                        i
                    }
                };
                if !lat.covers[x].contains(&yi) {
                    lat.covers[x].push(yi);
                }
            }
        }
        if !next.is_empty() {
            lat.by_rank.push(next);
        }
        r += 1;
    }

    let n = lat.nodes.len();
    let mut mobius = vec![0i64; n];
    mobius[0] = 1;
    for x in 1..n {
        let s: i64 = (0..n)
            .filter(|&y| lat.ranks[y] < lat.ranks[x] && bit_subset(&lat.atoms[y], &lat.atoms[x]))
            .map(|y| mobius[y])
            .sum();
        mobius[x] = -s;
    }
    lat.mobius = mobius;
    lat
}

impl IntersectionLattice {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &Subspace {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[Subspace] {
        &self.nodes
    }

    pub fn rank_of(&self, i: usize) -> usize {
        self.ranks[i]
    }

    /// Rank of the top element (rank of the arrangement).
    pub fn top_rank(&self) -> usize {
        self.by_rank.len() - 1
    }

    pub fn nodes_of_rank(&self, r: usize) -> &[usize] {
        self.by_rank.get(r).map_or(&[], Vec::as_slice)
    }

    pub fn mobius(&self, i: usize) -> i64 {
        self.mobius[i]
    }

    /// Nodes covering `i` (one rank higher and contained in it).
    pub fn covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    /// Indices of hyperplanes containing node `i`.
    pub fn atoms(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &bits) in self.atoms[i].iter().enumerate() {
            for b in 0..64 {
                if bits >> b & 1 == 1 {
                    out.push(w * 64 + b);
                }
            }
        }
        out
    }

    pub fn index_of(&self, x: &Subspace) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// `node(i) ≤ node(j)` in the lattice, i.e. `node(j) ⊆ node(i)`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.ranks[i] <= self.ranks[j] && bit_subset(&self.atoms[i], &self.atoms[j])
    }

    /// `π(A, t) = Σ_X μ(X) (−t)^{r(X)}`.
    pub fn poincare(&self) -> IntPoly {
        let mut c = vec![0i64; self.top_rank() + 1];
        for (i, &m) in self.mobius.iter().enumerate() {
            let r = self.ranks[i];
            c[r] += if r.is_multiple_of(2) { m } else { -m };
        }
        IntPoly::new(c)
    }

    /// `χ(A, t) = Σ_X μ(X) t^{dim X}`, lowest degree first.
    pub fn characteristic(&self) -> IntPoly {
        let l = self.nodes[0].ambient_dim();
        let mut c = vec![0i64; l + 1];
        for (i, &m) in self.mobius.iter().enumerate() {
            c[l - self.ranks[i]] += m;
        }
        IntPoly::new(c)
    }

    /// Checks `Σ_{V ≤ Y ≤ X} μ(Y) = 0` for every `X ≠ V`.
    pub fn mobius_recursion_holds(&self) -> bool {
        (1..self.len()).all(|x| {
            (0..self.len())
                .filter(|&y| self.le(y, x))
                .map(|y| self.mobius[y])
                .sum::<i64>()
                == 0
        })
    }
}

pub fn poincare_poly(a: &Arrangement) -> IntPoly {
    intersection_lattice(a).poincare()
}

#[cfg(test)]
mod tests {
    use super::super::tests::braid;
    use super::*;
    use crate::exactnum::CycloField;

    #[test]
    fn boolean_lattice() {
        let q = CycloField::rationals();
        let b = Arrangement::from_int_rows(&q, 2, &[&[1, 0], &[0, 1]]).unwrap();
        let l = intersection_lattice(&b);
        assert_eq!(l.len(), 4);
        let mut mu: Vec<i64> = (0..4).map(|i| l.mobius(i)).collect();
        mu.sort();
        assert_eq!(mu, vec![-1, -1, 1, 1]);
        assert_eq!(l.poincare().coeffs(), &[1, 2, 1]);
        assert!(l.mobius_recursion_holds());
    }

    #[test]
    fn braid3_lattice() {
        let l = intersection_lattice(&braid(3));
        assert_eq!(l.len(), 5);
        let top = l.nodes_of_rank(2);
        assert_eq!(top.len(), 1);
        assert_eq!(l.mobius(top[0]), 2);
        assert_eq!(l.poincare().coeffs(), &[1, 3, 2]);
        assert_eq!(l.characteristic().coeffs(), &[0, 2, -3, 1]);
        assert_eq!(l.atoms(top[0]), vec![0, 1, 2]);
    }

    #[test]
    fn empty_lattice() {
        let q = CycloField::rationals();
        let l = intersection_lattice(&Arrangement::empty(&q, 3));
        assert_eq!(l.len(), 1);
        assert_eq!(l.poincare(), IntPoly::one());
    }

    #[test]
    fn braid4_whitney_numbers() {
        // partitions of a 4-set by number of blocks: 1, 6, 7, 1
        let l = intersection_lattice(&braid(4));
        let counts: Vec<usize> = (0..=3).map(|r| l.nodes_of_rank(r).len()).collect();
        assert_eq!(counts, vec![1, 6, 7, 1]);
        assert_eq!(l.poincare(), IntPoly::from_linear_factors(&[1, 2, 3]));
    }
}
