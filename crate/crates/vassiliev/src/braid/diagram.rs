use serde::Serialize;

use crate::braid::{BraidWord, LetterKind};
use crate::error::{Error, Result};

/// One crossing of a closed diagram. `arcs` lists the four incident arcs in
/// rotation order starting at the bottom-left slot: `[bl, br, tr, tl]`.
#[derive(Clone, Debug, Serialize)]
pub struct Crossing {
    pub id: usize,
    pub sign: i8,
    pub arcs: [usize; 4],
    /// Whether the strand entering at `bl` passes over (a positive letter).
    /// Diagram geometry, not orientation data, so it stays out of the export.
    #[serde(skip)]
    pub over_from_left: bool,
}

/// The closure of a braid word as a planar diagram: one crossing per letter,
/// arcs identified around the closure.
#[derive(Clone, Debug, Serialize)]
pub struct LinkDiagram {
    pub crossings: Vec<Crossing>,
    pub arcs: Vec<usize>,
    pub components: usize,
    #[serde(skip)]
    pub writhe: i64,
}

/// Closes a non-singular word by identifying `p_i` with `p^i`.
///
/// The crossing sign is geometric: a positive letter between two upward
/// strands is a positive crossing, and reversing one strand orientation
/// flips the sign.
pub fn close(word: &BraidWord) -> Result<LinkDiagram> {
    if word.is_singular() {
        return Err(Error::SingularWord);
    }
    word.check_orientable()?;
    let n = word.strands();
    let o = word.orientation();

    // Current arc occupying each position, floor arcs first.
    let mut at: Vec<usize> = (0..n).collect();
    let mut next_arc = n;
    let mut crossings = Vec::with_capacity(word.len());
    let mut writhe = 0i64;

    let arrangements = word.arrangements();
    for (id, letter) in word.letters().iter().enumerate() {
        let i = letter.index;
        let (bl, br) = (at[i - 1], at[i]);
        let (tl, tr) = (next_arc, next_arc + 1);
        next_arc += 2;
        // The strand from bottom-left exits top-right and vice versa.
        at[i - 1] = tl;
        at[i] = tr;

        let arr = &arrangements[id];
        let (a, b) = (arr[i - 1], arr[i]);
        let letter_sign: i8 = if letter.kind == LetterKind::Positive { 1 } else { -1 };
        let orient_flip = o.bit(a) ^ o.bit(b);
        let sign = if orient_flip { -letter_sign } else { letter_sign };
        writhe += sign as i64;

        crossings.push(Crossing {
            id,
            sign,
            arcs: [bl, br, tr, tl],
            over_from_left: letter.kind == LetterKind::Positive,
        });
    }

    // Closure: the arc ending at ceiling position j is the arc starting at
    // floor position j. Collapse identified arcs to canonical ids.
    let mut uf = UnionFind::new(next_arc);
    for (pos0, &top) in at.iter().enumerate() {
        uf.union(top, pos0);
    }
    let mut canon = vec![usize::MAX; next_arc];
    let mut arcs = Vec::new();
    for raw in 0..next_arc {
        let root = uf.find(raw);
        if canon[root] == usize::MAX {
            canon[root] = arcs.len();
            arcs.push(arcs.len());
        }
    }
    for c in &mut crossings {
        for a in &mut c.arcs {
            *a = canon[uf.find(*a)];
        }
    }

    let components = crate::braid::permutation_of(word)?.cycle_count();
    Ok(LinkDiagram { crossings, arcs, components, writhe })
}

/// Plain union-find over `0..n`.
#[derive(Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    pub fn class_count(&mut self, n: usize) -> usize {
        (0..n).filter(|&x| self.find(x) == x).count()
    }
}
