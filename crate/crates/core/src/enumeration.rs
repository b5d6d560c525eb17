//! Counting digital Jordan curves.
//!
//! Every simple cycle of a `k x k` grid graph becomes a digital Jordan curve
//! in a `(2k-1) x (2k-1)` image once the edge midpoints are filled in, and a
//! one pixel zero frame moves it off the border. Counting grid cycles by
//! exhaustive backtracking therefore gives a lower bound on the number of
//! curves in `(2k+1) x (2k+1)` images. [`enumerate_jordan_curves_exact`]
//! counts those curves directly on small images, which checks the bound.

use thiserror::Error;

use crate::geometry::{BinaryImage, Dims, PixelCoord, MIN_CURVE_LEN};

/// Largest grid (in vertices) [`enumerate_grid_cycles`] accepts.
pub const MAX_GRID_VERTICES: usize = 30;
/// Largest image side [`enumerate_jordan_curves_exact`] accepts.
pub const MAX_EXACT_SIDE: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("{what} is too large for exhaustive enumeration (limit {limit})")]
    SizeTooLarge { what: String, limit: usize },
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("cycle count overflowed u64")]
    Overflow,
}

/// Vertex lattice with 4-neighbour edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridGraph {
    pub rows: usize,
    pub cols: usize,
}

impl GridGraph {
    pub fn new(rows: usize, cols: usize) -> Result<Self, EnumerationError> {
        if rows < 2 || cols < 2 {
            return Err(EnumerationError::InvalidSize(format!(
                "grid graph needs at least 2x2 vertices, got {rows}x{cols}"
            )));
        }
        Ok(Self { rows, cols })
    }

    fn len(&self) -> usize {
        self.rows * self.cols
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let (r, c) = (v / self.cols, v % self.cols);
        let up = (r > 0).then(|| v - self.cols);
        let left = (c > 0).then(|| v - 1);
        let right = (c + 1 < self.cols).then(|| v + 1);
        let down = (r + 1 < self.rows).then(|| v + self.cols);
        [up, left, right, down].into_iter().flatten()
    }

    fn coord(&self, v: usize) -> PixelCoord {
        PixelCoord::new(v / self.cols, v % self.cols)
    }
}

/// A simple cycle in canonical form: starts at its smallest vertex
/// (row-major) and its second vertex is smaller than its last. The start is
/// repeated at the end.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    vertices: Vec<PixelCoord>,
}

impl Cycle {
    pub fn vertices(&self) -> &[PixelCoord] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Row-major order restricted to vertices greater than the anchor, so each
/// cycle is found once from its minimum vertex; the orientation test
/// `path[1] < last` drops the reversed traversal.
fn backtrack_cycles(
    graph: GridGraph,
    induced: bool,
    min_len: usize,
    mut visit: impl FnMut(&[usize]) -> Result<(), EnumerationError>,
) -> Result<(), EnumerationError> {
    let n = graph.len();
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(n);

    fn touches_path(graph: GridGraph, on_path: &[bool], v: usize, except: usize) -> usize {
        graph
            .neighbors(v)
            .filter(|&u| u != except && on_path[u])
            .count()
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        graph: GridGraph,
        induced: bool,
        min_len: usize,
        anchor: usize,
        on_path: &mut [bool],
        path: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> Result<(), EnumerationError>,
    ) -> Result<(), EnumerationError> {
        let cur = *path.last().expect("path holds the anchor");
        for next in graph.neighbors(cur) {
            if next == anchor {
                if path.len() >= min_len && path[1] < cur {
                    visit(path)?;
                }
                continue;
            }
            if next < anchor || on_path[next] {
                continue;
            }
            if induced {
                // no chords: besides `cur`, `next` may only touch the anchor,
                // and only when stepping to it closes the cycle
                let touching = touches_path(graph, on_path, next, cur);
                if touching > 0 {
                    let closes = touching == 1
                        && graph.neighbors(next).any(|u| u == anchor)
                        && path.len() + 1 >= min_len
                        && path[1] < next;
                    if closes {
                        path.push(next);
                        visit(path)?;
                        path.pop();
                    }
                    continue;
                }
            }
            on_path[next] = true;
            path.push(next);
            dfs(graph, induced, min_len, anchor, on_path, path, visit)?;
            path.pop();
            on_path[next] = false;
        }
        Ok(())
    }

    for anchor in 0..n {
        on_path[anchor] = true;
        path.push(anchor);
        dfs(
            graph,
            induced,
            min_len,
            anchor,
            &mut on_path,
            &mut path,
            &mut visit,
        )?;
        path.pop();
        on_path[anchor] = false;
    }
    Ok(())
}

fn check_grid(rows: usize, cols: usize) -> Result<GridGraph, EnumerationError> {
    let graph = GridGraph::new(rows, cols)?;
    if graph.len() > MAX_GRID_VERTICES {
        return Err(EnumerationError::SizeTooLarge {
            what: format!("{rows}x{cols} grid graph"),
            limit: MAX_GRID_VERTICES,
        });
    }
    Ok(graph)
}

/// Number of simple cycles (length >= 4) in the `rows x cols` grid graph.
pub fn count_grid_cycles(rows: usize, cols: usize) -> Result<u64, EnumerationError> {
    let graph = check_grid(rows, cols)?;
    let mut count: u64 = 0;
    backtrack_cycles(graph, false, 4, |_| {
        count = count.checked_add(1).ok_or(EnumerationError::Overflow)?;
        Ok(())
    })?;
    Ok(count)
}

/// Every simple cycle of the `rows x cols` grid graph, in canonical form.
pub fn enumerate_grid_cycles(rows: usize, cols: usize) -> Result<Vec<Cycle>, EnumerationError> {
    let graph = check_grid(rows, cols)?;
    let mut out = Vec::new();
    backtrack_cycles(graph, false, 4, |path| {
        let mut vertices: Vec<PixelCoord> = path.iter().map(|&v| graph.coord(v)).collect();
        vertices.push(vertices[0]);
        out.push(Cycle { vertices });
        Ok(())
    })?;
    Ok(out)
}

/// Maps a cycle on a `rows x cols` vertex grid to a `(2rows-1) x (2cols-1)`
/// image: vertex `(r, c)` lands on pixel `(2r, 2c)` and each edge fills
/// the pixel between its endpoints.
pub fn upsample_cycle(cycle: &Cycle, rows: usize, cols: usize) -> BinaryImage {
    let dims = Dims::new(2 * rows - 1, 2 * cols - 1);
    let mut img = BinaryImage::zeros(dims.height, dims.width).expect("non-empty grid");
    for w in cycle.vertices.windows(2) {
        let (a, b) = (w[0], w[1]);
        debug_assert!(a.is_4_adjacent(b));
        let pa = PixelCoord::new(2 * a.row, 2 * a.col);
        let mid = PixelCoord::new(a.row + b.row, a.col + b.col);
        img.set(pa, 1).expect("in bounds");
        img.set(mid, 1).expect("in bounds");
    }
    img
}

/// Embeds `img` in a zero frame `margin` pixels wide.
pub fn pad(img: &BinaryImage, margin: usize) -> BinaryImage {
    img.pad(margin)
}

fn side_for_bound(n: usize) -> Result<usize, EnumerationError> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(EnumerationError::InvalidSize(format!(
            "lower bound needs an odd image side >= 5, got {n}"
        )));
    }
    Ok((n - 1) / 2)
}

/// Lower bound on the number of digital Jordan curves that avoid the border
/// of an `n x n` image: the number of cycles of the `k x k` grid graph,
/// `k = (n - 1) / 2`.
pub fn jordan_lower_bound(n: usize) -> Result<u64, EnumerationError> {
    let k = side_for_bound(n)?;
    count_grid_cycles(k, k)
}

/// The padded upsampled curves behind [`jordan_lower_bound`].
pub fn lower_bound_curves(n: usize) -> Result<Vec<BinaryImage>, EnumerationError> {
    let k = side_for_bound(n)?;
    Ok(enumerate_grid_cycles(k, k)?
        .iter()
        .map(|c| upsample_cycle(c, k, k).pad(1))
        .collect())
}

/// Every digital Jordan curve that avoids the border of an `n x n` image.
///
/// Searches closed 4-connected walks over the interior pixels, rejecting any
/// step that would give a pixel a third curve neighbour, so each emitted
/// walk is a chordless cycle of length at least 8.
pub fn enumerate_jordan_curves_exact(n: usize) -> Result<Vec<BinaryImage>, EnumerationError> {
    if n > MAX_EXACT_SIDE {
        return Err(EnumerationError::SizeTooLarge {
            what: format!("{n}x{n} image"),
            limit: MAX_EXACT_SIDE,
        });
    }
    if n < 5 {
        return Ok(Vec::new());
    }
    let inner = GridGraph::new(n - 2, n - 2)?;
    let dims = Dims::new(n, n);
    let mut out = Vec::new();
    backtrack_cycles(inner, true, MIN_CURVE_LEN, |path| {
        let pixels = path.iter().map(|&v| {
            let p = inner.coord(v);
            PixelCoord::new(p.row + 1, p.col + 1)
        });
        out.push(BinaryImage::from_pixels(dims, pixels).expect("interior pixels"));
        Ok(())
    })?;
    Ok(out)
}

/// Number of digital Jordan curves that avoid the border of an `n x n` image.
pub fn count_jordan_curves_exact(n: usize) -> Result<u64, EnumerationError> {
    if n > MAX_EXACT_SIDE {
        return Err(EnumerationError::SizeTooLarge {
            what: format!("{n}x{n} image"),
            limit: MAX_EXACT_SIDE,
        });
    }
    if n < 5 {
        return Ok(0);
    }
    let inner = GridGraph::new(n - 2, n - 2)?;
    let mut count: u64 = 0;
    backtrack_cycles(inner, true, MIN_CURVE_LEN, |_| {
        count = count.checked_add(1).ok_or(EnumerationError::Overflow)?;
        Ok(())
    })?;
    Ok(count)
}
