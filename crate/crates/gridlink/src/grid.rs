//! Grid (rectangular) diagrams of oriented links.
//!
//! A size-n grid has one X and one O in every row and column; rows are
//! numbered 1..=n top to bottom, columns 1..=n left to right.
//! Horizontal segments run from the O to the X of their row; vertical
//! segments run from the X to the O of their column, so the diagram is
//! oriented, and a vertical segment is "upward" when its O sits in a
//! smaller row number than its X. Vertical segments always cross over
//! horizontal ones.
//!
//! The module owns validation, link-component tracing, orientation
//! counts, corners, the curvature of Seifert-smoothed components, the
//! Cromwell moves (cyclic permutation, commutation, stabilization and
//! destabilization), and the text/JSON file formats.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::{Error, Result};

/// A validated grid diagram. `xs[i-1]` / `os[i-1]` hold the 1-based
/// column of the X / O marking in row i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridDiagram {
    n: usize,
    xs: Vec<usize>,
    os: Vec<usize>,
}

/// Link components of a grid, traced by alternating row and column
/// segments. Component indices are 0-based, ordered by the smallest
/// column index belonging to the component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentMap {
    pub mu: usize,
    /// Component of the horizontal segment in each row (0-based row).
    pub comp_of_row: Vec<usize>,
    /// Component of the vertical segment in each column (0-based col).
    pub comp_of_col: Vec<usize>,
    /// Markings per component; sums to n.
    pub nk: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    Horizontal,
    Vertical,
}

/// One oriented segment of the diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub kind: SegmentKind,
    /// Row (horizontal) or column (vertical), 1-based.
    pub index: usize,
    /// Endpoints as (min, max) of the crossed coordinate, 1-based.
    pub span: (usize, usize),
    /// Vertical only: O lies above the X.
    pub upward: bool,
    /// 0-based component index.
    pub component: usize,
}

/// A turning point: the meeting of horizontal segment `h_row` with
/// vertical segment `v_col`. Each horizontal segment contributes a
/// beginning corner (at its O) and an end corner (at its X).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corner {
    pub h_row: usize,
    pub v_col: usize,
    pub begins_horizontal: bool,
}

/// Corner position of the single O in a stabilization's 2×2 block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StabFlavor {
    NW,
    NE,
    SW,
    SE,
}

/// A Cromwell move. All coordinates are 1-based and refer to the grid
/// the move is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridMove {
    /// Cyclic permutation of vertical segments: leftmost column to the
    /// right edge, or (reversed) rightmost column to the left edge.
    CycleVertical { reverse: bool },
    /// Cyclic permutation of horizontal segments: top row to the
    /// bottom, or (reversed) bottom row to the top.
    CycleHorizontal { reverse: bool },
    /// Exchange adjacent columns `left` and `left+1`.
    CommuteColumns { left: usize },
    /// Exchange adjacent rows `top` and `top+1`.
    CommuteRows { top: usize },
    /// Stabilize at the X in (`row`, `col`), growing the grid by one;
    /// the flavor fixes where the new O sits in the 2×2 block.
    Stabilize {
        row: usize,
        col: usize,
        flavor: StabFlavor,
    },
    /// Collapse the 2×2 block whose top-left cell is (`row`, `col`);
    /// inverse of a stabilization, shrinking the grid by one.
    Destabilize { row: usize, col: usize },
}

#[derive(Serialize, Deserialize)]
struct GridJson {
    n: usize,
    x: Vec<usize>,
    o: Vec<usize>,
}

fn check_permutation(vals: &[usize], n: usize, what: &str) -> Result<()> {
    let mut seen = vec![false; n + 1];
    for &v in vals {
        if v < 1 || v > n || seen[v] {
            return Err(Error::NotPermutation(format!(
                "{what} column list is not a permutation of 1..={n}"
            )));
        }
        seen[v] = true;
    }
    Ok(())
}

fn perm_sign(perm: &[usize]) -> i64 {
    let mut inv = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl GridDiagram {
    /// Validates raw marking sequences (1-based columns per row).
    pub fn validate(xs: Vec<usize>, os: Vec<usize>) -> Result<GridDiagram> {
        let n = xs.len();
        if os.len() != n {
            return Err(Error::Parse(format!(
                "X and O lists have different lengths ({n} vs {})",
                os.len()
            )));
        }
        if n < 2 {
            return Err(Error::SizeTooSmall { n });
        }
        check_permutation(&xs, n, "X")?;
        check_permutation(&os, n, "O")?;
        for i in 0..n {
            if xs[i] == os[i] {
                return Err(Error::XOCollision { row: i + 1 });
            }
        }
        Ok(GridDiagram { n, xs, os })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Column of the X in `row` (1-based in and out).
    pub fn x_col(&self, row: usize) -> usize {
        self.xs[row - 1]
    }

    /// Column of the O in `row` (1-based in and out).
    pub fn o_col(&self, row: usize) -> usize {
        self.os[row - 1]
    }

    /// Row of the X in `col` (1-based in and out).
    pub fn x_row(&self, col: usize) -> usize {
        self.xs.iter().position(|&c| c == col).unwrap() + 1
    }

    /// Row of the O in `col` (1-based in and out).
    pub fn o_row(&self, col: usize) -> usize {
        self.os.iter().position(|&c| c == col).unwrap() + 1
    }

    pub fn x_cols(&self) -> &[usize] {
        &self.xs
    }

    pub fn o_cols(&self) -> &[usize] {
        &self.os
    }

    /// (min, max) rows of the vertical segment in `col`.
    pub fn vertical_span(&self, col: usize) -> (usize, usize) {
        let rx = self.x_row(col);
        let ro = self.o_row(col);
        (rx.min(ro), rx.max(ro))
    }

    /// (min, max) columns of the horizontal segment in `row`.
    pub fn horizontal_span(&self, row: usize) -> (usize, usize) {
        let cx = self.x_col(row);
        let co = self.o_col(row);
        (cx.min(co), cx.max(co))
    }

    /// The vertical segment in `col` points upward (its O is in a
    /// smaller row than its X).
    pub fn is_upward(&self, col: usize) -> bool {
        self.o_row(col) < self.x_row(col)
    }

    /// Whether the vertical segment in `col` crosses the i-th grid
    /// line, the horizontal line between rows i and i+1 (1 ≤ i < n).
    pub fn crosses_line(&self, col: usize, line: usize) -> bool {
        let (top, bottom) = self.vertical_span(col);
        top <= line && line < bottom
    }

    /// Traces the link components.
    pub fn components(&self) -> ComponentMap {
        let n = self.n;
        let mut comp_of_col = vec![usize::MAX; n];
        let mut mu = 0;
        for start in 1..=n {
            if comp_of_col[start - 1] != usize::MAX {
                continue;
            }
            let mut col = start;
            loop {
                comp_of_col[col - 1] = mu;
                // Follow the vertical segment to its O, then the
                // horizontal segment of that row to its X.
                let row = self.o_row(col);
                col = self.x_col(row);
                if col == start {
                    break;
                }
            }
            mu += 1;
        }
        let comp_of_row: Vec<usize> = (1..=n).map(|r| comp_of_col[self.x_col(r) - 1]).collect();
        let mut nk = vec![0usize; mu];
        for &c in &comp_of_col {
            nk[c] += 1;
        }
        ComponentMap {
            mu,
            comp_of_row,
            comp_of_col,
            nk,
        }
    }

    /// Total and per-component counts of upward vertical segments.
    pub fn upward_counts(&self, comps: &ComponentMap) -> (usize, Vec<usize>) {
        let mut per = vec![0usize; comps.mu];
        let mut total = 0;
        for col in 1..=self.n {
            if self.is_upward(col) {
                total += 1;
                per[comps.comp_of_col[col - 1]] += 1;
            }
        }
        (total, per)
    }

    /// All vertical segments with orientation and component data.
    pub fn vertical_segments(&self, comps: &ComponentMap) -> Vec<Segment> {
        (1..=self.n)
            .map(|col| Segment {
                kind: SegmentKind::Vertical,
                index: col,
                span: self.vertical_span(col),
                upward: self.is_upward(col),
                component: comps.comp_of_col[col - 1],
            })
            .collect()
    }

    /// All horizontal segments with component data.
    pub fn horizontal_segments(&self, comps: &ComponentMap) -> Vec<Segment> {
        (1..=self.n)
            .map(|row| Segment {
                kind: SegmentKind::Horizontal,
                index: row,
                span: self.horizontal_span(row),
                upward: false,
                component: comps.comp_of_row[row - 1],
            })
            .collect()
    }

    /// The 2n corners: each horizontal segment begins at its O (on the
    /// vertical segment of the O's column) and ends at its X.
    pub fn corners(&self) -> Vec<Corner> {
        let mut out = Vec::with_capacity(2 * self.n);
        for row in 1..=self.n {
            out.push(Corner {
                h_row: row,
                v_col: self.o_col(row),
                begins_horizontal: true,
            });
            out.push(Corner {
                h_row: row,
                v_col: self.x_col(row),
                begins_horizontal: false,
            });
        }
        out
    }

    /// The base permutation x_0 read off the O markings (row ↦ column)
    /// and its signature.
    pub fn base_permutation(&self) -> (Vec<usize>, i64) {
        (self.os.clone(), perm_sign(&self.os))
    }

    /// Curvature κ_k of component k: Seifert-smooth every
    /// self-crossing of the component, trace the resulting circuits,
    /// and sum their rotation numbers (+1 anticlockwise, −1 clockwise).
    pub fn curvature(&self, comps: &ComponentMap, k: usize) -> i64 {
        // Nodes are the component's markings plus its self-crossings;
        // every node has one incoming and one outgoing arc per strand,
        // and smoothing joins in-vertical → out-horizontal and
        // in-horizontal → out-vertical. Directions are in mathematical
        // orientation (y grows upward, so row numbers decrease).
        #[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
        enum Node {
            Cell { row: usize, col: usize },
            Cross { row: usize, col: usize },
        }
        let n = self.n;
        let cols: Vec<usize> = (1..=n).filter(|&c| comps.comp_of_col[c - 1] == k).collect();
        let rows: Vec<usize> = (1..=n).filter(|&r| comps.comp_of_row[r - 1] == k).collect();

        // Directed arcs: (from, to, direction, ends_vertical).
        let mut arcs: Vec<(Node, Node, (i64, i64), bool)> = Vec::new();
        for &c in &cols {
            let rx = self.x_row(c);
            let ro = self.o_row(c);
            let (top, bottom) = (rx.min(ro), rx.max(ro));
            let mut crossings: Vec<usize> = rows
                .iter()
                .copied()
                .filter(|&r| {
                    top < r && r < bottom && {
                        let (l, rr) = self.horizontal_span(r);
                        l < c && c < rr
                    }
                })
                .collect();
            // Walk from the X toward the O.
            let dir = if ro < rx { (0, 1) } else { (0, -1) };
            if ro < rx {
                crossings.sort_unstable_by(|a, b| b.cmp(a));
            } else {
                crossings.sort_unstable();
            }
            let mut prev = Node::Cell { row: rx, col: c };
            for r in crossings {
                let cur = Node::Cross { row: r, col: c };
                arcs.push((prev, cur, dir, true));
                prev = cur;
            }
            arcs.push((prev, Node::Cell { row: ro, col: c }, dir, true));
        }
        for &r in &rows {
            let cx = self.x_col(r);
            let co = self.o_col(r);
            let (left, right) = (cx.min(co), cx.max(co));
            let mut crossings: Vec<usize> = cols
                .iter()
                .copied()
                .filter(|&c| {
                    left < c && c < right && {
                        let (t, b) = self.vertical_span(c);
                        t < r && r < b
                    }
                })
                .collect();
            // Walk from the O toward the X.
            let dir = if cx > co { (1, 0) } else { (-1, 0) };
            if cx > co {
                crossings.sort_unstable();
            } else {
                crossings.sort_unstable_by(|a, b| b.cmp(a));
            }
            let mut prev = Node::Cell { row: r, col: co };
            for c in crossings {
                let cur = Node::Cross { row: r, col: c };
                arcs.push((prev, cur, dir, false));
                prev = cur;
            }
            arcs.push((prev, Node::Cell { row: r, col: cx }, dir, false));
        }

        // Successor of each arc: at a cell or a smoothed crossing the
        // outgoing strand kind is the opposite of the incoming kind.
        let mut out_by_node: HashMap<(Node, bool), usize> = HashMap::new();
        for (idx, (from, _, _, is_vertical)) in arcs.iter().enumerate() {
            out_by_node.insert((*from, *is_vertical), idx);
        }
        let successor: Vec<usize> = arcs
            .iter()
            .map(|(_, to, _, is_vertical)| out_by_node[&(*to, !*is_vertical)])
            .collect();

        let mut seen = vec![false; arcs.len()];
        let mut kappa = 0i64;
        for start in 0..arcs.len() {
            if seen[start] {
                continue;
            }
            let mut turns = 0i64;
            let mut i = start;
            loop {
                seen[i] = true;
                let next = successor[i];
                let (dx1, dy1) = arcs[i].2;
                let (dx2, dy2) = arcs[next].2;
                turns += dx1 * dy2 - dy1 * dx2;
                i = next;
                if i == start {
                    break;
                }
            }
            debug_assert_eq!(turns.abs(), 4, "smoothed circuit must be simple");
            kappa += turns / 4;
        }
        kappa
    }

    /// κ_k for every component.
    pub fn curvatures(&self, comps: &ComponentMap) -> Vec<i64> {
        (0..comps.mu).map(|k| self.curvature(comps, k)).collect()
    }

    /// Applies a Cromwell move, returning the transformed grid.
    pub fn apply_move(&self, m: &GridMove) -> Result<GridDiagram> {
        let n = self.n;
        match *m {
            GridMove::CycleVertical { reverse } => {
                let shift = |c: usize| -> usize {
                    if reverse {
                        if c == n {
                            1
                        } else {
                            c + 1
                        }
                    } else if c == 1 {
                        n
                    } else {
                        c - 1
                    }
                };
                GridDiagram::validate(
                    self.xs.iter().map(|&c| shift(c)).collect(),
                    self.os.iter().map(|&c| shift(c)).collect(),
                )
            }
            GridMove::CycleHorizontal { reverse } => {
                let mut xs = self.xs.clone();
                let mut os = self.os.clone();
                if reverse {
                    xs.rotate_right(1);
                    os.rotate_right(1);
                } else {
                    xs.rotate_left(1);
                    os.rotate_left(1);
                }
                GridDiagram::validate(xs, os)
            }
            GridMove::CommuteColumns { left } => {
                if left < 1 || left + 1 > n {
                    return Err(Error::IllegalMove(format!(
                        "column pair ({left}, {}) out of range",
                        left + 1
                    )));
                }
                let a = self.vertical_span(left);
                let b = self.vertical_span(left + 1);
                check_commutable(a, b, "columns")?;
                let swap = |c: usize| {
                    if c == left {
                        left + 1
                    } else if c == left + 1 {
                        left
                    } else {
                        c
                    }
                };
                GridDiagram::validate(
                    self.xs.iter().map(|&c| swap(c)).collect(),
                    self.os.iter().map(|&c| swap(c)).collect(),
                )
            }
            GridMove::CommuteRows { top } => {
                if top < 1 || top + 1 > n {
                    return Err(Error::IllegalMove(format!(
                        "row pair ({top}, {}) out of range",
                        top + 1
                    )));
                }
                let a = self.horizontal_span(top);
                let b = self.horizontal_span(top + 1);
                check_commutable(a, b, "rows")?;
                let mut xs = self.xs.clone();
                let mut os = self.os.clone();
                xs.swap(top - 1, top);
                os.swap(top - 1, top);
                GridDiagram::validate(xs, os)
            }
            GridMove::Stabilize { row, col, flavor } => self.stabilize(row, col, flavor),
            GridMove::Destabilize { row, col } => self.destabilize(row, col),
        }
    }

    fn stabilize(&self, row: usize, col: usize, flavor: StabFlavor) -> Result<GridDiagram> {
        let n = self.n;
        if row < 1 || row > n || col < 1 || col > n || self.x_col(row) != col {
            return Err(Error::IllegalMove(format!(
                "no X at row {row}, column {col} to stabilize"
            )));
        }
        let map_row = |i: usize| if i > row { i + 1 } else { i };
        let map_col = |j: usize| if j > col { j + 1 } else { j };
        let mut xs = vec![0usize; n + 1];
        let mut os = vec![0usize; n + 1];
        for i in 1..=n {
            if i != row {
                xs[map_row(i) - 1] = map_col(self.x_col(i));
            }
        }
        let col_o_row = self.o_row(col);
        for i in 1..=n {
            if i != row && i != col_o_row {
                os[map_row(i) - 1] = map_col(self.o_col(i));
            }
        }
        // The stabilized row's O moves to the daughter row left
        // incomplete by the block; same for the stabilized column's O.
        let (row_o_dest, col_o_dest) = match flavor {
            StabFlavor::NW => (row + 1, col + 1),
            StabFlavor::NE => (row + 1, col),
            StabFlavor::SW => (row, col + 1),
            StabFlavor::SE => (row, col),
        };
        os[row_o_dest - 1] = map_col(self.o_col(row));
        os[map_row(col_o_row) - 1] = col_o_dest;
        match flavor {
            StabFlavor::NW => {
                os[row - 1] = col;
                xs[row - 1] = col + 1;
                xs[row] = col;
            }
            StabFlavor::NE => {
                os[row - 1] = col + 1;
                xs[row - 1] = col;
                xs[row] = col + 1;
            }
            StabFlavor::SW => {
                os[row] = col;
                xs[row - 1] = col;
                xs[row] = col + 1;
            }
            StabFlavor::SE => {
                os[row] = col + 1;
                xs[row - 1] = col + 1;
                xs[row] = col;
            }
        }
        GridDiagram::validate(xs, os)
    }

    fn destabilize(&self, row: usize, col: usize) -> Result<GridDiagram> {
        let n = self.n;
        if n < 3 {
            return Err(Error::IllegalMove(
                "cannot destabilize below size 2".to_string(),
            ));
        }
        if row < 1 || row + 1 > n || col < 1 || col + 1 > n {
            return Err(Error::IllegalMove(format!(
                "2x2 block at ({row}, {col}) out of range"
            )));
        }
        let has_x = |r: usize, c: usize| self.x_col(r) == c;
        let has_o = |r: usize, c: usize| self.o_col(r) == c;
        let anti = has_x(row, col + 1) && has_x(row + 1, col);
        let diag = has_x(row, col) && has_x(row + 1, col + 1);
        let block_o = [
            (row, col),
            (row, col + 1),
            (row + 1, col),
            (row + 1, col + 1),
        ]
        .into_iter()
        .filter(|&(r, c)| has_o(r, c))
        .collect::<Vec<_>>();
        let ok = (anti || diag) && block_o.len() == 1 && {
            let (or, oc) = block_o[0];
            if anti {
                (or, oc) == (row, col) || (or, oc) == (row + 1, col + 1)
            } else {
                (or, oc) == (row + 1, col) || (or, oc) == (row, col + 1)
            }
        };
        if !ok {
            return Err(Error::IllegalMove(format!(
                "block at ({row}, {col}) is not a stabilization pattern"
            )));
        }
        let block_xs = if anti {
            [(row, col + 1), (row + 1, col)]
        } else {
            [(row, col), (row + 1, col + 1)]
        };
        let cr = |i: usize| if i > row { i - 1 } else { i };
        let cc = |j: usize| if j > col { j - 1 } else { j };
        let mut xs = vec![0usize; n - 1];
        let mut os = vec![0usize; n - 1];
        xs[row - 1] = col;
        for i in 1..=n {
            let p = (i, self.x_col(i));
            if !block_xs.contains(&p) {
                debug_assert_eq!(xs[cr(i) - 1], 0);
                xs[cr(i) - 1] = cc(p.1);
            }
            let q = (i, self.o_col(i));
            if q != block_o[0] {
                debug_assert_eq!(os[cr(i) - 1], 0);
                os[cr(i) - 1] = cc(q.1);
            }
        }
        GridDiagram::validate(xs, os)
    }

    /// Block-diagonal union: the second grid is shifted past the first.
    pub fn disjoint_union(&self, other: &GridDiagram) -> GridDiagram {
        let shift = self.n;
        let mut xs = self.xs.clone();
        let mut os = self.os.clone();
        xs.extend(other.xs.iter().map(|&c| c + shift));
        os.extend(other.os.iter().map(|&c| c + shift));
        GridDiagram::validate(xs, os).expect("union of valid grids is valid")
    }

    /// Deterministic pseudorandom sequence of legal moves. Stabilizing
    /// moves are only emitted while the grid stays within `max_n`.
    /// Every emitted move is legal for the grid it is applied to, in
    /// sequence order starting from `self`.
    pub fn random_move_sequence(&self, length: usize, seed: u64, max_n: usize) -> Vec<GridMove> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = self.clone();
        let mut out = Vec::with_capacity(length);
        while out.len() < length {
            let mv = propose_move(&g, &mut rng, max_n);
            g = g.apply_move(&mv).expect("proposed move is legal");
            out.push(mv);
        }
        out
    }

    /// Parses the text format: `n`, then `X: c_1 … c_n`, then
    /// `O: c_1 … c_n`; `#` starts a comment.
    pub fn parse_text(input: &str) -> Result<GridDiagram> {
        let mut lines = input
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("missing size line".to_string()))?
            .parse()
            .map_err(|_| Error::Parse("size line is not an integer".to_string()))?;
        let mut take = |prefix: &str| -> Result<Vec<usize>> {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing `{prefix}` line")))?;
            let rest = line
                .strip_prefix(prefix)
                .ok_or_else(|| Error::Parse(format!("expected line starting with `{prefix}`")))?;
            rest.split_whitespace()
                .map(|w| {
                    w.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad column index `{w}`")))
                })
                .collect()
        };
        let xs = take("X:")?;
        let os = take("O:")?;
        if xs.len() != n || os.len() != n {
            return Err(Error::Parse(format!(
                "expected {n} columns per marking line, got {} and {}",
                xs.len(),
                os.len()
            )));
        }
        GridDiagram::validate(xs, os)
    }

    /// Parses the JSON form `{"n":…, "x":[…], "o":[…]}`.
    pub fn parse_json(input: &str) -> Result<GridDiagram> {
        let raw: GridJson =
            serde_json::from_str(input).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
        if raw.x.len() != raw.n || raw.o.len() != raw.n {
            return Err(Error::Parse(
                "JSON field lengths disagree with n".to_string(),
            ));
        }
        GridDiagram::validate(raw.x, raw.o)
    }

    /// Parses either format, deciding by the leading character.
    pub fn parse(input: &str) -> Result<GridDiagram> {
        if input.trim_start().starts_with('{') {
            Self::parse_json(input)
        } else {
            Self::parse_text(input)
        }
    }

    pub fn to_text(&self) -> String {
        let cols = |v: &[usize]| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("{}\nX: {}\nO: {}\n", self.n, cols(&self.xs), cols(&self.os))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GridJson {
            n: self.n,
            x: self.xs.clone(),
            o: self.os.clone(),
        })
        .expect("grid serializes")
    }
}

fn check_commutable(a: (usize, usize), b: (usize, usize), what: &str) -> Result<()> {
    let disjoint = a.1 < b.0 || b.1 < a.0;
    let nested = (b.0 < a.0 && a.1 < b.1) || (a.0 < b.0 && b.1 < a.1);
    if disjoint || nested {
        Ok(())
    } else {
        Err(Error::IllegalMove(format!(
            "adjacent {what} have interleaved or touching spans {a:?} and {b:?}"
        )))
    }
}

fn propose_move(g: &GridDiagram, rng: &mut ChaCha8Rng, max_n: usize) -> GridMove {
    let n = g.n();
    for _ in 0..200 {
        let mv = match rng.random_range(0..6u32) {
            0 => GridMove::CycleVertical {
                reverse: rng.random_bool(0.5),
            },
            1 => GridMove::CycleHorizontal {
                reverse: rng.random_bool(0.5),
            },
            2 => GridMove::CommuteColumns {
                left: rng.random_range(1..n),
            },
            3 => GridMove::CommuteRows {
                top: rng.random_range(1..n),
            },
            4 => {
                if n >= max_n {
                    continue;
                }
                let row = rng.random_range(1..=n);
                let flavor = match rng.random_range(0..4u32) {
                    0 => StabFlavor::NW,
                    1 => StabFlavor::NE,
                    2 => StabFlavor::SW,
                    _ => StabFlavor::SE,
                };
                GridMove::Stabilize {
                    row,
                    col: g.x_col(row),
                    flavor,
                }
            }
            _ => {
                let blocks: Vec<(usize, usize)> = (1..n)
                    .flat_map(|r| (1..n).map(move |c| (r, c)))
                    .filter(|&(r, c)| g.destabilize(r, c).is_ok())
                    .collect();
                if blocks.is_empty() {
                    continue;
                }
                let (row, col) = blocks[rng.random_range(0..blocks.len())];
                GridMove::Destabilize { row, col }
            }
        };
        if g.apply_move(&mv).is_ok() {
            return mv;
        }
    }
    // Cyclic permutations are always legal.
    GridMove::CycleVertical { reverse: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unknot() -> GridDiagram {
        GridDiagram::validate(vec![1, 2], vec![2, 1]).unwrap()
    }

    fn trefoil() -> GridDiagram {
        GridDiagram::validate(vec![1, 5, 4, 3, 2], vec![4, 3, 2, 1, 5]).unwrap()
    }

    fn hopf() -> GridDiagram {
        GridDiagram::validate(vec![1, 2, 3, 4], vec![3, 4, 1, 2]).unwrap()
    }

    #[test]
    fn validate_rejects_bad_input() {
        assert!(matches!(
            GridDiagram::validate(vec![1, 1], vec![2, 2]),
            Err(Error::NotPermutation(_))
        ));
        assert!(matches!(
            GridDiagram::validate(vec![1, 2], vec![1, 2]),
            Err(Error::XOCollision { row: 1 })
        ));
        assert!(matches!(
            GridDiagram::validate(vec![1], vec![1]),
            Err(Error::SizeTooSmall { n: 1 })
        ));
    }

    #[test]
    fn components_of_corpus() {
        let c = unknot().components();
        assert_eq!(c.mu, 1);
        assert_eq!(c.nk, vec![2]);
        let c = hopf().components();
        assert_eq!(c.mu, 2);
        assert_eq!(c.nk, vec![2, 2]);
        let c = trefoil().components();
        assert_eq!(c.mu, 1);
        let u = unknot().disjoint_union(&unknot());
        assert_eq!(u.components().mu, 2);
    }

    #[test]
    fn upward_counts_of_corpus() {
        let g = unknot();
        assert_eq!(g.upward_counts(&g.components()).0, 1);
        let g = trefoil();
        assert_eq!(g.upward_counts(&g.components()).0, 3);
        // A 4×4 two-component grid always has one upward segment per
        // component: the two vertical displacements of a component
        // must cancel around its cycle.
        let g = hopf();
        let (u, per) = g.upward_counts(&g.components());
        assert_eq!(u, 2);
        assert_eq!(per, vec![1, 1]);
    }

    #[test]
    fn corners_count_and_incidence() {
        for g in [unknot(), trefoil(), hopf()] {
            let corners = g.corners();
            assert_eq!(corners.len(), 2 * g.n());
            for col in 1..=g.n() {
                let incident = corners.iter().filter(|c| c.v_col == col).count();
                assert_eq!(incident, 2);
            }
        }
    }

    #[test]
    fn base_permutations() {
        let (p, s) = unknot().base_permutation();
        assert_eq!(p, vec![2, 1]);
        assert_eq!(s, -1);
        let (_, s) = trefoil().base_permutation();
        assert_eq!(s, 1);
        let (p, s) = hopf().base_permutation();
        assert_eq!(p, vec![3, 4, 1, 2]);
        assert_eq!(s, 1);
    }

    #[test]
    fn curvature_goldens() {
        let g = unknot();
        assert_eq!(g.curvature(&g.components(), 0), 1);
        let mirror = GridDiagram::validate(vec![2, 1], vec![1, 2]).unwrap();
        assert_eq!(mirror.curvature(&mirror.components(), 0), -1);
        let g = trefoil();
        assert_eq!(g.curvature(&g.components(), 0), 0);
        let g = hopf();
        assert_eq!(g.curvatures(&g.components()), vec![1, 1]);
    }

    #[test]
    fn cycle_moves_invert() {
        for g in [unknot(), trefoil(), hopf()] {
            for mv in [
                GridMove::CycleVertical { reverse: false },
                GridMove::CycleHorizontal { reverse: false },
            ] {
                let inverse = match mv {
                    GridMove::CycleVertical { .. } => GridMove::CycleVertical { reverse: true },
                    _ => GridMove::CycleHorizontal { reverse: true },
                };
                let moved = g.apply_move(&mv).unwrap();
                assert_eq!(moved.apply_move(&inverse).unwrap(), g);
            }
        }
    }

    #[test]
    fn commute_legality() {
        // Trefoil columns 1 and 2 have spans (1,4) and (2,5):
        // interleaved, so the exchange is illegal.
        let g = trefoil();
        assert!(matches!(
            g.apply_move(&GridMove::CommuteColumns { left: 1 }),
            Err(Error::IllegalMove(_))
        ));
        // Hopf rows 1 and 2 have spans (1,3) and (2,4): interleaved.
        let g = hopf();
        assert!(matches!(
            g.apply_move(&GridMove::CommuteRows { top: 1 }),
            Err(Error::IllegalMove(_))
        ));
        // A split union has disjoint middle columns.
        let u = unknot().disjoint_union(&unknot());
        let swapped = u.apply_move(&GridMove::CommuteColumns { left: 2 }).unwrap();
        assert_eq!(
            swapped
                .apply_move(&GridMove::CommuteColumns { left: 2 })
                .unwrap(),
            u
        );
    }

    #[test]
    fn stabilize_then_destabilize_round_trips() {
        for g in [unknot(), trefoil(), hopf()] {
            for flavor in [
                StabFlavor::NW,
                StabFlavor::NE,
                StabFlavor::SW,
                StabFlavor::SE,
            ] {
                for row in 1..=g.n() {
                    let col = g.x_col(row);
                    let big = g
                        .apply_move(&GridMove::Stabilize { row, col, flavor })
                        .unwrap();
                    assert_eq!(big.n(), g.n() + 1);
                    assert_eq!(big.components().mu, g.components().mu);
                    let back = big.apply_move(&GridMove::Destabilize { row, col }).unwrap();
                    assert_eq!(back, g);
                }
            }
        }
    }

    #[test]
    fn destabilize_rejects_non_patterns() {
        let g = trefoil();
        for r in 1..g.n() {
            for c in 1..g.n() {
                // The trefoil grid contains no stabilization block.
                assert!(g
                    .apply_move(&GridMove::Destabilize { row: r, col: c })
                    .is_err());
            }
        }
    }

    #[test]
    fn random_sequences_deterministic_and_legal() {
        let g = trefoil();
        let a = g.random_move_sequence(20, 7, 8);
        let b = g.random_move_sequence(20, 7, 8);
        assert_eq!(a, b);
        let mut cur = g.clone();
        for mv in &a {
            cur = cur.apply_move(mv).unwrap();
            assert!(cur.n() <= 8);
        }
        assert!(g.random_move_sequence(0, 3, 8).is_empty());
        // Component structure is preserved by legal moves.
        assert_eq!(cur.components().mu, 1);
    }

    #[test]
    fn parse_round_trips() {
        let g = trefoil();
        assert_eq!(GridDiagram::parse(&g.to_text()).unwrap(), g);
        assert_eq!(GridDiagram::parse(&g.to_json()).unwrap(), g);
        let text = "# a comment\n2\nX: 1 2 # trailing\nO: 2 1\n";
        assert_eq!(GridDiagram::parse(text).unwrap(), unknot());
        assert!(GridDiagram::parse("2\nX: 1 2\n").is_err());
        assert!(GridDiagram::parse("{\"n\":2,\"x\":[1,2],\"o\":[2]}").is_err());
    }
}
