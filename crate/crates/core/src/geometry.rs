//! Pixel grids, the (4, 8) adjacency pair and digital Jordan curve validation.
//!
//! Curve pixels (value 1) use 4-adjacency, background pixels (value 0) use
//! 8-adjacency. A [`JordanCurve`] can only be obtained through
//! [`validate_jordan_curve`], so holding one is a proof that the image's
//! 1-pixels form a closed, unit-thick, non-touching curve of length at least
//! [`MIN_CURVE_LEN`] that stays off the image border.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Shortest admissible digital Jordan curve (the 8-pixel ring around one pixel).
pub const MIN_CURVE_LEN: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("pixel ({row}, {col}) is outside a {height}x{width} image")]
    OutOfBounds {
        row: usize,
        col: usize,
        height: usize,
        width: usize,
    },
    #[error("image dimensions must be positive, got {height}x{width}")]
    EmptyImage { height: usize, width: usize },
    #[error("pixel data has {got} entries, expected {expected}")]
    DataLength { expected: usize, got: usize },
    #[error("value {value} at index {index} is not binary")]
    NonBinary { index: usize, value: u8 },
    #[error("image rows have unequal lengths")]
    Ragged,
}

/// A 0-based `(row, col)` pixel index. Ordering is row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PixelCoord {
    pub row: usize,
    pub col: usize,
}

impl PixelCoord {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    /// True when the two pixels share an edge.
    pub fn is_4_adjacent(self, other: PixelCoord) -> bool {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col) == 1
    }
}

impl fmt::Display for PixelCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

impl From<(usize, usize)> for PixelCoord {
    fn from((row, col): (usize, usize)) -> Self {
        Self { row, col }
    }
}

/// Image dimensions, `height` rows by `width` columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dims {
    pub height: usize,
    pub width: usize,
}

impl Dims {
    pub const fn new(height: usize, width: usize) -> Self {
        Self { height, width }
    }

    pub fn len(&self) -> usize {
        self.height * self.width
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, p: PixelCoord) -> bool {
        p.row < self.height && p.col < self.width
    }

    pub fn index(&self, p: PixelCoord) -> usize {
        p.row * self.width + p.col
    }

    pub fn coord(&self, index: usize) -> PixelCoord {
        PixelCoord::new(index / self.width, index % self.width)
    }

    fn check(&self, p: PixelCoord) -> Result<(), GeometryError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(GeometryError::OutOfBounds {
                row: p.row,
                col: p.col,
                height: self.height,
                width: self.width,
            })
        }
    }

    /// In-bounds pixels at the given offsets from `p`, in offset order.
    fn offsets(&self, p: PixelCoord, deltas: &[(isize, isize)]) -> Vec<PixelCoord> {
        deltas
            .iter()
            .filter_map(|&(dr, dc)| {
                let row = p.row.checked_add_signed(dr)?;
                let col = p.col.checked_add_signed(dc)?;
                let q = PixelCoord::new(row, col);
                self.contains(q).then_some(q)
            })
            .collect()
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.height, self.width)
    }
}

const DELTAS4: [(isize, isize); 4] = [(-1, 0), (0, -1), (0, 1), (1, 0)];
const DELTAS8: [(isize, isize); 8] = [
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, -1),
    (0, 1),
    (1, -1),
    (1, 0),
    (1, 1),
];

/// In-bounds edge neighbours of `p`, in row-major order.
pub fn neighbors4(p: PixelCoord, dims: Dims) -> Result<Vec<PixelCoord>, GeometryError> {
    dims.check(p)?;
    Ok(dims.offsets(p, &DELTAS4))
}

/// In-bounds edge and corner neighbours of `p`, in row-major order.
pub fn neighbors8(p: PixelCoord, dims: Dims) -> Result<Vec<PixelCoord>, GeometryError> {
    dims.check(p)?;
    Ok(dims.offsets(p, &DELTAS8))
}

pub fn is_border(p: PixelCoord, dims: Dims) -> Result<bool, GeometryError> {
    dims.check(p)?;
    Ok(p.row == 0 || p.col == 0 || p.row + 1 == dims.height || p.col + 1 == dims.width)
}

/// Row-major `{0,1}` grid. 1 marks a curve pixel.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryImage {
    dims: Dims,
    data: Vec<u8>,
}

impl BinaryImage {
    pub fn zeros(height: usize, width: usize) -> Result<Self, GeometryError> {
        if height == 0 || width == 0 {
            return Err(GeometryError::EmptyImage { height, width });
        }
        Ok(Self {
            dims: Dims::new(height, width),
            data: vec![0; height * width],
        })
    }

    pub fn from_vec(height: usize, width: usize, data: Vec<u8>) -> Result<Self, GeometryError> {
        if height == 0 || width == 0 {
            return Err(GeometryError::EmptyImage { height, width });
        }
        if data.len() != height * width {
            return Err(GeometryError::DataLength {
                expected: height * width,
                got: data.len(),
            });
        }
        if let Some((index, &value)) = data.iter().enumerate().find(|(_, &v)| v > 1) {
            return Err(GeometryError::NonBinary { index, value });
        }
        Ok(Self {
            dims: Dims::new(height, width),
            data,
        })
    }

    /// Parses a picture made of `#`/`1` (curve) and `.`/`0` (background).
    /// Whitespace-only lines are skipped and spaces inside a row are ignored.
    pub fn from_ascii(picture: &str) -> Result<Self, GeometryError> {
        let rows: Vec<Vec<u8>> = picture
            .lines()
            .map(|l| l.chars().filter(|c| !c.is_whitespace()).collect::<String>())
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.chars()
                    .map(|c| match c {
                        '#' | '1' => 1,
                        '.' | '0' => 0,
                        _ => 2,
                    })
                    .collect()
            })
            .collect();
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(GeometryError::Ragged);
        }
        Self::from_vec(height, width, rows.concat())
    }

    /// Renders a pixel list into a zero image of the given size.
    pub fn from_pixels<I>(dims: Dims, pixels: I) -> Result<Self, GeometryError>
    where
        I: IntoIterator<Item = PixelCoord>,
    {
        let mut img = Self::zeros(dims.height, dims.width)?;
        for p in pixels {
            img.set(p, 1)?;
        }
        Ok(img)
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn height(&self) -> usize {
        self.dims.height
    }

    pub fn width(&self) -> usize {
        self.dims.width
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    /// Value at `p`; out-of-range reads return 0.
    pub fn get(&self, p: PixelCoord) -> u8 {
        if self.dims.contains(p) {
            self.data[self.dims.index(p)]
        } else {
            0
        }
    }

    pub fn is_set(&self, p: PixelCoord) -> bool {
        self.get(p) == 1
    }

    pub fn set(&mut self, p: PixelCoord, value: u8) -> Result<(), GeometryError> {
        self.dims.check(p)?;
        if value > 1 {
            return Err(GeometryError::NonBinary {
                index: self.dims.index(p),
                value,
            });
        }
        let i = self.dims.index(p);
        self.data[i] = value;
        Ok(())
    }

    /// All 1-pixels in row-major order.
    pub fn ones(&self) -> impl Iterator<Item = PixelCoord> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 1)
            .map(|(i, _)| self.dims.coord(i))
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().filter(|&&v| v == 1).count()
    }

    /// Number of 4-adjacent 1-pixels around `p`.
    pub fn degree4(&self, p: PixelCoord) -> usize {
        self.dims
            .offsets(p, &DELTAS4)
            .into_iter()
            .filter(|&q| self.is_set(q))
            .count()
    }

    pub fn transpose(&self) -> Self {
        let dims = Dims::new(self.dims.width, self.dims.height);
        let mut data = vec![0; self.data.len()];
        for r in 0..self.dims.height {
            for c in 0..self.dims.width {
                data[c * dims.width + r] = self.data[r * self.dims.width + c];
            }
        }
        Self { dims, data }
    }

    /// Embeds the image in a zero frame `margin` pixels wide on every side.
    pub fn pad(&self, margin: usize) -> Self {
        let dims = Dims::new(self.dims.height + 2 * margin, self.dims.width + 2 * margin);
        let mut data = vec![0; dims.len()];
        for r in 0..self.dims.height {
            let src = &self.data[r * self.dims.width..(r + 1) * self.dims.width];
            let start = (r + margin) * dims.width + margin;
            data[start..start + self.dims.width].copy_from_slice(src);
        }
        Self { dims, data }
    }

    /// Number of pixels where the two images differ. Panics on a size mismatch.
    pub fn hamming(&self, other: &BinaryImage) -> usize {
        assert_eq!(self.dims, other.dims, "hamming distance needs equal sizes");
        self.data
            .iter()
            .zip(&other.data)
            .filter(|(a, b)| a != b)
            .count()
    }
}

impl fmt::Debug for BinaryImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryImage {}:", self.dims)?;
        for row in self.data.chunks(self.dims.width) {
            let line: String = row
                .iter()
                .map(|&v| if v == 1 { '#' } else { '.' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// Reason an image is not a single digital Jordan curve.
///
/// Checks run in a fixed order and each reports the first offending pixel in
/// row-major order: `NotClosed`, then `DegreeNotTwo`/`SelfTouching`, then
/// `Disconnected`, `TooShort` and finally `TouchesBorder`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    /// A 1-pixel has fewer than two 4-adjacent 1-pixels, so no closed sequence passes through it.
    #[error("curve is not closed at {pixel}")]
    NotClosed { pixel: PixelCoord },
    /// A 1-pixel has more than two 4-adjacent 1-pixels and sits in a solid 2x2 block.
    #[error("curve is thicker than one pixel at {pixel}")]
    DegreeNotTwo { pixel: PixelCoord },
    /// A 1-pixel has more than two 4-adjacent 1-pixels without forming a thick block.
    #[error("curve touches itself at {pixel}")]
    SelfTouching { pixel: PixelCoord },
    /// The 1-pixels split into more than one closed sequence.
    #[error("1-pixels form more than one curve; {pixel} is not on the first")]
    Disconnected { pixel: PixelCoord },
    #[error("curve has {len} pixels, at least {MIN_CURVE_LEN} are required")]
    TooShort { len: usize },
    #[error("curve pixel {pixel} lies on the image border")]
    TouchesBorder { pixel: PixelCoord },
}

impl Violation {
    pub fn pixel(&self) -> Option<PixelCoord> {
        match self {
            Violation::NotClosed { pixel }
            | Violation::DegreeNotTwo { pixel }
            | Violation::SelfTouching { pixel }
            | Violation::Disconnected { pixel }
            | Violation::TouchesBorder { pixel } => Some(*pixel),
            Violation::TooShort { .. } => None,
        }
    }
}

/// A validated digital Jordan curve: the image plus its witness cycle
/// `s_0, ..., s_L` with `s_0 == s_L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanCurve {
    image: BinaryImage,
    cycle: Vec<PixelCoord>,
}

impl JordanCurve {
    pub fn image(&self) -> &BinaryImage {
        &self.image
    }

    pub fn into_image(self) -> BinaryImage {
        self.image
    }

    /// Witness sequence, closed: the first pixel is repeated at the end.
    pub fn cycle(&self) -> &[PixelCoord] {
        &self.cycle
    }

    /// Curve length `L` (number of distinct pixels).
    pub fn len(&self) -> usize {
        self.cycle.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dims(&self) -> Dims {
        self.image.dims()
    }
}

fn in_solid_block(img: &BinaryImage, p: PixelCoord) -> bool {
    // any 2x2 window containing p that is entirely 1
    let corners = [(-1isize, -1isize), (-1, 0), (0, -1), (0, 0)];
    corners.iter().any(|&(dr, dc)| {
        let (Some(r), Some(c)) = (p.row.checked_add_signed(dr), p.col.checked_add_signed(dc))
        else {
            return false;
        };
        [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .all(|&(a, b)| img.is_set(PixelCoord::new(r + a, c + b)))
    })
}

/// Checks that the 1-pixels of `img` form exactly one digital Jordan curve
/// that avoids the image border, returning the witness cycle.
pub fn validate_jordan_curve(img: &BinaryImage) -> Result<JordanCurve, Violation> {
    let dims = img.dims();
    let ones: Vec<PixelCoord> = img.ones().collect();
    if ones.is_empty() {
        return Err(Violation::TooShort { len: 0 });
    }

    if let Some(&pixel) = ones.iter().find(|&&p| img.degree4(p) < 2) {
        return Err(Violation::NotClosed { pixel });
    }
    if let Some(&pixel) = ones.iter().find(|&&p| img.degree4(p) > 2) {
        return Err(if in_solid_block(img, pixel) {
            Violation::DegreeNotTwo { pixel }
        } else {
            Violation::SelfTouching { pixel }
        });
    }

    // Every pixel now has degree exactly two, so the 1-pixels are a disjoint
    // union of cycles. Trace the one through the first pixel.
    let start = ones[0];
    let mut cycle = vec![start];
    let mut prev = start;
    // the row-major first pixel has neighbours only to the right and below
    let mut cur = dims
        .offsets(start, &DELTAS4)
        .into_iter()
        .find(|&q| img.is_set(q))
        .expect("degree two");
    while cur != start {
        cycle.push(cur);
        let next = dims
            .offsets(cur, &DELTAS4)
            .into_iter()
            .find(|&q| q != prev && img.is_set(q))
            .expect("degree two");
        prev = cur;
        cur = next;
    }
    if cycle.len() != ones.len() {
        let mut on_cycle = vec![false; dims.len()];
        for p in &cycle {
            on_cycle[dims.index(*p)] = true;
        }
        let pixel = *ones
            .iter()
            .find(|p| !on_cycle[dims.index(**p)])
            .expect("some pixel is off the traced cycle");
        return Err(Violation::Disconnected { pixel });
    }
    if cycle.len() < MIN_CURVE_LEN {
        return Err(Violation::TooShort { len: cycle.len() });
    }
    if let Some(&pixel) = ones
        .iter()
        .find(|&&p| is_border(p, dims).expect("pixel in bounds"))
    {
        return Err(Violation::TouchesBorder { pixel });
    }
    cycle.push(start);
    Ok(JordanCurve {
        image: img.clone(),
        cycle,
    })
}

/// Renders a pixel sequence as a binary image.
pub fn render_cycle(dims: Dims, cycle: &[PixelCoord]) -> Result<BinaryImage, GeometryError> {
    BinaryImage::from_pixels(dims, cycle.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[(usize, usize)]) -> Vec<PixelCoord> {
        let mut out: Vec<PixelCoord> = v.iter().map(|&p| p.into()).collect();
        out.sort();
        out
    }

    pub(crate) fn ring5() -> BinaryImage {
        BinaryImage::from_ascii(
            ".....
             .###.
             .#.#.
             .###.
             .....",
        )
        .unwrap()
    }

    #[test]
    fn neighbors4_cases() {
        let d = Dims::new(3, 3);
        assert_eq!(
            neighbors4((0, 0).into(), d).unwrap(),
            set(&[(0, 1), (1, 0)])
        );
        assert_eq!(
            neighbors4((1, 1).into(), d).unwrap(),
            set(&[(0, 1), (1, 0), (1, 2), (2, 1)])
        );
        assert_eq!(
            neighbors4((2, 1).into(), d).unwrap(),
            set(&[(1, 1), (2, 0), (2, 2)])
        );
        assert!(neighbors4((3, 0).into(), d).is_err());
    }

    #[test]
    fn neighbors8_cases() {
        let d = Dims::new(3, 3);
        assert_eq!(
            neighbors8((0, 0).into(), d).unwrap(),
            set(&[(0, 1), (1, 0), (1, 1)])
        );
        assert_eq!(neighbors8((1, 1).into(), d).unwrap().len(), 8);
        assert_eq!(
            neighbors8((0, 1).into(), Dims::new(2, 3)).unwrap(),
            set(&[(0, 0), (0, 2), (1, 0), (1, 1), (1, 2)])
        );
        assert!(neighbors8((0, 3).into(), d).is_err());
    }

    #[test]
    fn border_cases() {
        let d = Dims::new(5, 5);
        assert!(is_border((0, 3).into(), d).unwrap());
        assert!(!is_border((2, 2).into(), d).unwrap());
        assert!(is_border((4, 0).into(), d).unwrap());
        assert!(is_border((5, 0).into(), d).is_err());
    }

    #[test]
    fn smallest_ring_is_valid() {
        let c = validate_jordan_curve(&ring5()).unwrap();
        assert_eq!(c.len(), 8);
        let cyc = c.cycle();
        assert_eq!(cyc.first(), cyc.last());
        for w in c.cycle().windows(2) {
            assert!(w[0].is_4_adjacent(w[1]));
        }
    }

    #[test]
    fn solid_two_by_two_block_is_too_short() {
        // Every pixel of a 2x2 block has exactly two 4-neighbours; only the
        // length requirement rejects it.
        let img = BinaryImage::from_ascii(
            ".....
             .##..
             .##..
             .....
             .....",
        )
        .unwrap();
        assert_eq!(
            validate_jordan_curve(&img),
            Err(Violation::TooShort { len: 4 })
        );
    }

    #[test]
    fn thick_block_reports_degree() {
        let img = BinaryImage::from_ascii(
            "......
             .###..
             .###..
             ......
             ......",
        )
        .unwrap();
        assert_eq!(
            validate_jordan_curve(&img),
            Err(Violation::DegreeNotTwo {
                pixel: PixelCoord::new(1, 2)
            })
        );
    }

    #[test]
    fn three_by_three_grid_cycles_are_not_jordan_curves() {
        // 4-cycle, 6-cycle with a chord and L-shaped 8-cycle on a 3x3 grid
        let pictures = [
            "##.
             ##.
             ...",
            "###
             ###
             ...",
            "###
             ###
             ##.",
        ];
        for pic in pictures {
            let img = BinaryImage::from_ascii(pic).unwrap();
            assert!(validate_jordan_curve(&img).is_err(), "{img:?}");
        }
    }

    #[test]
    fn figure_eight_self_touches() {
        let img = BinaryImage::from_ascii(
            ".........
             .###.....
             .#.#.....
             .#####...
             ...#.#...
             ...###...
             .........",
        )
        .unwrap();
        assert_eq!(
            validate_jordan_curve(&img),
            Err(Violation::SelfTouching {
                pixel: PixelCoord::new(3, 3)
            })
        );
    }

    #[test]
    fn open_curve_is_not_closed() {
        let img = BinaryImage::from_ascii(
            ".....
             .###.
             .#...
             .###.
             .....",
        )
        .unwrap();
        assert_eq!(
            validate_jordan_curve(&img),
            Err(Violation::NotClosed {
                pixel: PixelCoord::new(1, 3)
            })
        );
    }

    #[test]
    fn two_rings_are_disconnected() {
        let img = BinaryImage::from_ascii(
            "..........
             .###.###..
             .#.#.#.#..
             .###.###..
             ..........",
        )
        .unwrap();
        assert_eq!(
            validate_jordan_curve(&img),
            Err(Violation::Disconnected {
                pixel: PixelCoord::new(1, 5)
            })
        );
    }

    #[test]
    fn ring_on_border_is_rejected() {
        let img = BinaryImage::from_ascii(
            "###
             #.#
             ###",
        )
        .unwrap();
        assert_eq!(
            validate_jordan_curve(&img),
            Err(Violation::TouchesBorder {
                pixel: PixelCoord::new(0, 0)
            })
        );
    }

    #[test]
    fn empty_image_has_no_curve() {
        let img = BinaryImage::zeros(4, 4).unwrap();
        assert_eq!(
            validate_jordan_curve(&img),
            Err(Violation::TooShort { len: 0 })
        );
    }

    #[test]
    fn witness_re_renders_to_the_image() {
        let c = validate_jordan_curve(&ring5()).unwrap();
        let back = render_cycle(c.dims(), c.cycle()).unwrap();
        assert_eq!(&back, c.image());
    }

    #[test]
    fn pad_and_transpose() {
        let img = BinaryImage::from_ascii("#..\n.#.").unwrap();
        let t = img.transpose();
        assert_eq!(t.dims(), Dims::new(3, 2));
        assert!(t.is_set(PixelCoord::new(1, 1)));
        let p = img.pad(1);
        assert_eq!(p.dims(), Dims::new(4, 5));
        assert!(p.is_set(PixelCoord::new(1, 1)));
        assert!(p.is_set(PixelCoord::new(2, 2)));
        assert_eq!(p.count_ones(), 2);
    }

    #[test]
    fn from_vec_rejects_bad_input() {
        assert!(matches!(
            BinaryImage::from_vec(2, 2, vec![0, 1, 2, 0]),
            Err(GeometryError::NonBinary { index: 2, value: 2 })
        ));
        assert!(BinaryImage::from_vec(2, 2, vec![0; 3]).is_err());
        assert!(BinaryImage::zeros(0, 3).is_err());
    }
}
