//! Valid-by-construction diagram generators.
//!
//! Two families cover a wide range of Seifert structures: closures of random
//! braid words (nested circles, interleaved twist regions) and random trees
//! of circles where each tree edge is a clasp bundle (sibling circles, kinks,
//! connected sums). Both are assembled from explicit crossings wired
//! strand-by-strand, so every output is planar and connected and its labels
//! follow the consecutive-run convention.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pd::{OverDir, PDCode};

#[derive(Debug, Clone, Copy)]
struct BuilderCrossing {
    in_l: usize,
    in_r: usize,
    out_l: usize,
    out_r: usize,
    positive: bool,
}

/// Wires are strand segments; crossings consume two and produce two. Aliased
/// wires are the same edge.
struct DiagramBuilder {
    crossings: Vec<BuilderCrossing>,
    alias: Vec<usize>,
}

impl DiagramBuilder {
    fn new() -> DiagramBuilder {
        DiagramBuilder {
            crossings: Vec::new(),
            alias: Vec::new(),
        }
    }

    fn wire(&mut self) -> usize {
        self.alias.push(self.alias.len());
        self.alias.len() - 1
    }

    fn find(&mut self, w: usize) -> usize {
        if self.alias[w] != w {
            let root = self.find(self.alias[w]);
            self.alias[w] = root;
        }
        self.alias[w]
    }

    fn unify(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.alias[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Add a crossing between a left and right strand; both strands swap
    /// sides. `positive` picks the handedness (right strand over when
    /// positive).
    fn crossing(&mut self, in_l: usize, in_r: usize, positive: bool) -> (usize, usize) {
        let out_l = self.wire();
        let out_r = self.wire();
        self.crossings.push(BuilderCrossing {
            in_l,
            in_r,
            out_l,
            out_r,
            positive,
        });
        (out_l, out_r)
    }

    fn finish(mut self) -> Result<PDCode> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok(PDCode::unknot());
        }
        // Resolve aliases and renumber wires densely.
        let crossings: Vec<BuilderCrossing> = (0..n)
            .map(|i| {
                let c = self.crossings[i];
                BuilderCrossing {
                    in_l: self.find(c.in_l),
                    in_r: self.find(c.in_r),
                    out_l: self.find(c.out_l),
                    out_r: self.find(c.out_r),
                    positive: c.positive,
                }
            })
            .collect();
        let mut seen = std::collections::BTreeMap::new();
        for c in &crossings {
            for w in [c.in_l, c.in_r, c.out_l, c.out_r] {
                let next = seen.len();
                seen.entry(w).or_insert(next);
            }
        }
        if seen.len() != 2 * n {
            return Err(Error::Internal(format!(
                "builder wired {} edges for {} crossings",
                seen.len(),
                n
            )));
        }
        // Strand successor: entering on one side exits on the other.
        let mut succ = vec![usize::MAX; 2 * n];
        let mut has_pred = vec![false; 2 * n];
        for c in &crossings {
            let il = seen[&c.in_l];
            let ir = seen[&c.in_r];
            let ol = seen[&c.out_l];
            let or = seen[&c.out_r];
            if succ[il] != usize::MAX || succ[ir] != usize::MAX || has_pred[ol] || has_pred[or] {
                return Err(Error::Internal("builder wire used twice".into()));
            }
            succ[il] = or;
            succ[ir] = ol;
            has_pred[or] = true;
            has_pred[ol] = true;
        }
        if succ.contains(&usize::MAX) {
            return Err(Error::Internal("builder left dangling wires".into()));
        }
        // Label edges 1.. along each strand component.
        let mut label = vec![0u32; 2 * n];
        let mut next = 1u32;
        for start in 0..2 * n {
            if label[start] != 0 {
                continue;
            }
            let mut cur = start;
            loop {
                label[cur] = next;
                next += 1;
                cur = succ[cur];
                if cur == start {
                    break;
                }
            }
        }
        let mut tuples = Vec::with_capacity(n);
        let mut over_dirs = Vec::with_capacity(n);
        for c in &crossings {
            let il = label[seen[&c.in_l]];
            let ir = label[seen[&c.in_r]];
            let ol = label[seen[&c.out_l]];
            let or = label[seen[&c.out_r]];
            if c.positive {
                // Understrand runs in_l -> out_r; over enters on slot 3.
                tuples.push([il, ol, or, ir]);
                over_dirs.push(OverDir::DToB);
            } else {
                tuples.push([ir, il, ol, or]);
                over_dirs.push(OverDir::BToD);
            }
        }
        PDCode::new(tuples, Some(over_dirs))
    }
}

/// Closure of a braid word on `strands` strands. Letters are
/// (generator index 0-based, positive?). Every generator index must appear
/// or the closure splits.
pub fn braid_closure(strands: usize, word: &[(usize, bool)]) -> Result<PDCode> {
    if strands < 2 {
        return Err(Error::Input("braid needs at least 2 strands".into()));
    }
    for &(i, _) in word {
        if i + 1 >= strands {
            return Err(Error::Input(format!(
                "generator {i} out of range for {strands} strands"
            )));
        }
    }
    for i in 0..strands - 1 {
        if !word.iter().any(|&(j, _)| j == i) {
            return Err(Error::Input(format!(
                "generator {i} unused; closure would be a split diagram"
            )));
        }
    }
    let mut b = DiagramBuilder::new();
    let start: Vec<usize> = (0..strands).map(|_| b.wire()).collect();
    let mut cur = start.clone();
    for &(i, positive) in word {
        let (out_l, out_r) = b.crossing(cur[i], cur[i + 1], positive);
        cur[i] = out_l;
        cur[i + 1] = out_r;
    }
    for (a, z) in start.iter().zip(cur.iter()) {
        b.unify(*a, *z);
    }
    b.finish()
}

/// A tree of circles: circle 0 is the root; each other circle hangs off its
/// parent by a bundle of clasp crossings with the given handednesses. The
/// tree is traversed depth-first, bundles attach along the parent in child
/// order.
pub fn circle_tree(parents: &[usize], bundles: &[Vec<bool>]) -> Result<PDCode> {
    let n = parents.len() + 1;
    if bundles.len() != parents.len() {
        return Err(Error::Input("one bundle per non-root circle".into()));
    }
    if bundles.iter().any(|b| b.is_empty()) {
        return Err(Error::Input("bundles need at least one crossing".into()));
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &p) in parents.iter().enumerate() {
        let node = i + 1;
        if p >= node {
            return Err(Error::Input(format!(
                "parent of circle {node} must be an earlier circle"
            )));
        }
        children[p].push(node);
    }

    fn attach(
        b: &mut DiagramBuilder,
        track: usize,
        node: usize,
        children: &[Vec<usize>],
        bundles: &[Vec<bool>],
    ) -> usize {
        let mut pw = track;
        let first_return = b.wire();
        let mut rw = first_return;
        for &positive in &bundles[node - 1] {
            let (out_l, out_r) = b.crossing(pw, rw, positive);
            pw = out_l;
            rw = out_r;
        }
        // The child's free arc hosts its own children, then closes.
        let mut w = rw;
        for &c in &children[node] {
            w = attach(b, w, c, children, bundles);
        }
        b.unify(w, first_return);
        pw
    }

    let mut b = DiagramBuilder::new();
    let root_start = b.wire();
    let mut w = root_start;
    for &c in &children[0] {
        w = attach(&mut b, w, c, &children, bundles);
    }
    b.unify(w, root_start);
    b.finish()
}

/// A random valid diagram with at most `max_crossings` crossings (and at
/// least one). Half braid closures, half circle trees.
pub fn random_diagram(rng: &mut ChaCha8Rng, max_crossings: usize) -> PDCode {
    let max = max_crossings.max(1);
    let pd = if rng.gen_bool(0.5) {
        random_braid(rng, max)
    } else {
        random_tree(rng, max)
    };
    pd.expect("generator assembles valid diagrams")
}

fn random_braid(rng: &mut ChaCha8Rng, max: usize) -> Result<PDCode> {
    let strands = if max < 2 {
        2
    } else {
        rng.gen_range(2..=4usize.min(max + 1))
    };
    let min_len = strands - 1;
    let len = rng.gen_range(min_len..=max.max(min_len));
    loop {
        let word: Vec<(usize, bool)> = (0..len)
            .map(|_| (rng.gen_range(0..strands - 1), rng.gen_bool(0.5)))
            .collect();
        if (0..strands - 1).all(|i| word.iter().any(|&(j, _)| j == i)) {
            return braid_closure(strands, &word);
        }
    }
}

fn random_tree(rng: &mut ChaCha8Rng, max: usize) -> Result<PDCode> {
    let n_bundles = rng.gen_range(1..=4usize.min(max));
    let mut parents = Vec::new();
    for i in 0..n_bundles {
        parents.push(rng.gen_range(0..=i));
    }
    let mut budget = max - n_bundles;
    let mut bundles: Vec<Vec<bool>> = Vec::new();
    for _ in 0..n_bundles {
        let extra = if budget == 0 {
            0
        } else {
            let e = rng.gen_range(0..=budget.min(3));
            budget -= e;
            e
        };
        bundles.push((0..1 + extra).map(|_| rng.gen_bool(0.5)).collect());
    }
    circle_tree(&parents, &bundles)
}

/// Deterministic RNG for a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
