//! Permutations of root labels and finite permutation groups: closure
//! enumeration under a cap, 2-transitivity, and imprimitivity block systems.
//!
//! Points are 0-based internally; every external surface (reports, cycle
//! notation) is 1-based to match the usual labeling of roots.

use crate::error::Error;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (0..m).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &i in &images {
            if i >= m || seen[i] {
                return Err(Error::InvalidInput(
                    "permutation images are not a bijection".into(),
                ));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self, Error> {
        Self::from_images(images.iter().map(|&i| i.wrapping_sub(1)).collect())
    }

    /// Build from disjoint cycles over 0-based points.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Self {
        let mut images: Vec<usize> = (0..m).collect();
        for cyc in cycles {
            for k in 0..cyc.len() {
                images[cyc[k]] = cyc[(k + 1) % cyc.len()];
            }
        }
        Permutation { images }
    }

    /// The canonical m-cycle 0 -> 1 -> ... -> m-1 -> 0.
    pub fn full_cycle(m: usize) -> Self {
        Permutation {
            images: (0..m).map(|i| (i + 1) % m).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based_images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    /// Apply self first, then other (composition in path order).
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Disjoint cycles (fixed points omitted), each rotated to start at its
    /// minimum, sorted by first element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.len();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cyc.push(cur);
                cur = self.images[cur];
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for cyc in cycles {
            write!(f, "(")?;
            for (k, p) in cyc.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A partition of the point set into equal-size cells mapped to cells by
/// every group generator. Cells are sorted ascending and ordered by their
/// minimum element, which for block systems of the canonical labeling means
/// residue-class order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockSystem {
    blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        BlockSystem { blocks }
    }

    /// Residue-class system: cell k = { i : i = k mod (m/d) }, cell size d.
    pub fn residue_classes(m: usize, d: usize) -> Self {
        assert!(d >= 1 && m.is_multiple_of(d));
        let nblocks = m / d;
        let mut blocks = vec![Vec::with_capacity(d); nblocks];
        for i in 0..m {
            blocks[i % nblocks].push(i);
        }
        BlockSystem { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_index_of(&self, point: usize) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&point).is_ok())
    }

    pub fn one_based(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&i| i + 1).collect())
            .collect()
    }

    /// Every cell maps onto a cell under p.
    pub fn invariant_under(&self, p: &Permutation) -> bool {
        self.blocks.iter().all(|b| {
            let mut image: Vec<usize> = b.iter().map(|&i| p.apply(i)).collect();
            image.sort_unstable();
            self.blocks
                .binary_search_by(|probe| probe[0].cmp(&image[0]))
                .is_ok_and(|k| self.blocks[k] == image)
        })
    }
}

/// Permutation group given by generators, with optional full enumeration
/// under an element cap.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    element_cap: usize,
    elements: OnceLock<Result<Vec<Permutation>, Error>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            element_cap: self.element_cap,
            elements: OnceLock::new(),
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Self {
        Self::with_cap(degree, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn with_cap(degree: usize, generators: Vec<Permutation>, element_cap: usize) -> Self {
        assert!(!generators.is_empty(), "generator list must be nonempty");
        for g in &generators {
            assert_eq!(g.len(), degree, "generator degree mismatch");
        }
        PermGroup {
            degree,
            generators,
            element_cap,
            elements: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn element_cap(&self) -> usize {
        self.element_cap
    }

    /// Breadth-first closure of the generators; errors once the size
    /// exceeds the element cap.
    pub fn elements(&self) -> Result<&[Permutation], Error> {
        self.elements
            .get_or_init(|| closure(self.degree, &self.generators, self.element_cap))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    pub fn order(&self) -> Result<usize, Error> {
        Ok(self.elements()?.len())
    }

    pub fn orbit(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut out = vec![start];
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    out.push(q);
                    queue.push_back(q);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Single orbit on ordered pairs of distinct points, by flood fill;
    /// no closure enumeration.
    pub fn is_two_transitive(&self) -> bool {
        let m = self.degree;
        if m < 2 {
            return false;
        }
        let idx = |a: usize, b: usize| a * m + b;
        let mut seen = vec![false; m * m];
        let mut queue = VecDeque::from([(0usize, 1usize)]);
        seen[idx(0, 1)] = true;
        let mut count = 1usize;
        while let Some((a, b)) = queue.pop_front() {
            for g in &self.generators {
                let (x, y) = (g.apply(a), g.apply(b));
                if !seen[idx(x, y)] {
                    seen[idx(x, y)] = true;
                    count += 1;
                    queue.push_back((x, y));
                }
            }
        }
        count == m * (m - 1)
    }

    /// All nontrivial block systems: minimal ones seeded by point pairs,
    /// closed under partition joins. Deterministic order: block size, then
    /// lexicographic cells.
    pub fn imprimitivity_blocks(&self) -> Result<Vec<BlockSystem>, Error> {
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let m = self.degree;
        let mut systems: Vec<BlockSystem> = Vec::new();
        for other in 1..m {
            if let Some(sys) = self.minimal_block_system(0, other) {
                if !systems.contains(&sys) {
                    systems.push(sys);
                }
            }
        }
        // close under joins
        loop {
            let mut added = false;
            let snapshot = systems.clone();
            for i in 0..snapshot.len() {
                for j in (i + 1)..snapshot.len() {
                    if let Some(joined) = join_partitions(m, &snapshot[i], &snapshot[j]) {
                        if !systems.contains(&joined) {
                            systems.push(joined);
                            added = true;
                        }
                    }
                }
            }
            if !added {
                break;
            }
        }
        systems.sort_by(|a, b| {
            a.block_size()
                .cmp(&b.block_size())
                .then_with(|| a.blocks().cmp(b.blocks()))
        });
        Ok(systems)
    }

    /// Finest block system in which a and b share a block (union-find
    /// refinement); None when it degenerates to a single block.
    fn minimal_block_system(&self, a: usize, b: usize) -> Option<BlockSystem> {
        let m = self.degree;
        let mut uf = UnionFind::new(m);
        let mut queue = VecDeque::new();
        uf.union(a, b);
        queue.push_back((a, b));
        while let Some((x, y)) = queue.pop_front() {
            for g in &self.generators {
                let (gx, gy) = (g.apply(x), g.apply(y));
                if uf.find(gx) != uf.find(gy) {
                    uf.union(gx, gy);
                    queue.push_back((gx, gy));
                }
            }
        }
        let mut cells: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..m {
            cells.entry(uf.find(i)).or_default().push(i);
        }
        let blocks: Vec<Vec<usize>> = cells.into_values().collect();
        if blocks.len() <= 1 || blocks.len() == m {
            return None;
        }
        let size = blocks[0].len();
        if blocks.iter().any(|c| c.len() != size) {
            // cannot happen for a transitive action
            return None;
        }
        Some(BlockSystem::new(blocks))
    }
}

fn closure(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>, Error> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let id = Permutation::identity(degree);
    seen.insert(id.images().to_vec());
    let mut out = vec![id];
    let mut frontier = 0usize;
    while frontier < out.len() {
        let cur = out[frontier].clone();
        frontier += 1;
        for g in generators {
            let next = cur.then(g);
            if seen.insert(next.images().to_vec()) {
                if out.len() + 1 > cap {
                    return Err(Error::CapExceeded { cap });
                }
                out.push(next);
            }
        }
    }
    Ok(out)
}

/// Standalone closure of a generating set (used for subgroups).
pub fn subgroup_closure(
    degree: usize,
    generators: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>, Error> {
    if generators.is_empty() {
        return Ok(vec![Permutation::identity(degree)]);
    }
    closure(degree, generators, cap)
}

/// Elements of the normal closure of the seed subgroup inside the group whose full
/// element list is given.
pub fn normal_closure_elements(
    degree: usize,
    group_elements: &[Permutation],
    seed: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>, Error> {
    let mut conj_gens: Vec<Permutation> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for g in group_elements {
        let ginv = g.inverse();
        for s in seed {
            let c = g.then(s).then(&ginv);
            if seen.insert(c.images().to_vec()) {
                conj_gens.push(c);
            }
        }
    }
    subgroup_closure(degree, &conj_gens, cap)
}

/// Join of two equal-degree partitions (finest common coarsening); None when
/// trivial (single block) or not an equal-size partition.
fn join_partitions(m: usize, a: &BlockSystem, b: &BlockSystem) -> Option<BlockSystem> {
    let mut uf = UnionFind::new(m);
    for sys in [a, b] {
        for cell in sys.blocks() {
            for w in cell.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
    }
    let mut cells: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..m {
        cells.entry(uf.find(i)).or_default().push(i);
    }
    let blocks: Vec<Vec<usize>> = cells.into_values().collect();
    if blocks.len() <= 1 || blocks.len() == m {
        return None;
    }
    let size = blocks[0].len();
    if blocks.iter().any(|c| c.len() != size) {
        return None;
    }
    Some(BlockSystem::new(blocks))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
