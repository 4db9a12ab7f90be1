//! Rectangles, rim hooks and the classical Hillman-Grassl and Pak maps.
//!
//! Cells are 0-based `(row, col)` in English notation. Border cell `j` of a
//! rectangle is read from the south-west corner to the north-east corner.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poset::{Bound, MinusculePoset, Rpp};
use crate::quiver::RepClass;
use crate::vector::DimVector;

/// The rectangle with `cols` columns and `rows` rows attached to vertex
/// `cols - 1` of `A_{rows + cols - 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RectShape {
    pub rows: usize,
    pub cols: usize,
}

impl RectShape {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidRimHook(format!(
                "empty rectangle {rows}x{cols}"
            )));
        }
        Ok(RectShape { rows, cols })
    }

    /// Shape for `A_n` at 0-based vertex `m`.
    pub fn for_vertex(n: usize, m: usize) -> Result<Self> {
        if m >= n {
            return Err(Error::InvalidRimHook(format!(
                "vertex {} outside A{n}",
                m + 1
            )));
        }
        RectShape::new(n - m, m + 1)
    }

    /// Rank of the matching type-A diagram.
    pub fn rank(&self) -> usize {
        self.rows + self.cols - 1
    }

    pub fn minuscule_vertex(&self) -> usize {
        self.cols - 1
    }

    pub fn border_cell(&self, j: usize) -> (usize, usize) {
        if j < self.cols {
            (self.rows - 1, j)
        } else {
            (self.rows - 1 - (j - self.cols + 1), self.cols - 1)
        }
    }

    pub fn hook_length(&self, r: usize, c: usize) -> usize {
        (self.rows - r) + (self.cols - c) - 1
    }
}

/// A border strip listed south-west to north-east.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RimHook {
    pub cells: Vec<(usize, usize)>,
}

fn interval(dv: &DimVector) -> Option<(usize, usize)> {
    let support: Vec<usize> = dv.support().collect();
    let (&a, &b) = (support.first()?, support.last()?);
    let ok = b - a + 1 == support.len() && dv.0.iter().all(|&x| x <= 1);
    ok.then_some((a, b))
}

pub fn dimvec_to_rimhook(dv: &DimVector, shape: RectShape) -> Result<RimHook> {
    if dv.len() != shape.rank() {
        return Err(Error::InvalidRimHook(format!(
            "{dv} has the wrong length for the {}x{} rectangle",
            shape.rows, shape.cols
        )));
    }
    let (a, b) = interval(dv)
        .ok_or_else(|| Error::InvalidRimHook(format!("{dv} is not an interval of ones")))?;
    let m = shape.minuscule_vertex();
    if a > m || b < m {
        return Err(Error::InvalidRimHook(format!(
            "{dv} is not supported at vertex {}",
            m + 1
        )));
    }
    Ok(RimHook {
        cells: (a..=b).map(|j| shape.border_cell(j)).collect(),
    })
}

pub fn rimhook_to_dimvec(hook: &RimHook, shape: RectShape) -> Result<DimVector> {
    let mut dv = DimVector::zero(shape.rank());
    for &cell in &hook.cells {
        let j = (0..shape.rank())
            .find(|&j| shape.border_cell(j) == cell)
            .ok_or_else(|| Error::InvalidRimHook(format!("cell {cell:?} is not on the border")))?;
        if dv.0[j] == 1 {
            return Err(Error::InvalidRimHook(format!("cell {cell:?} repeated")));
        }
        dv.0[j] = 1;
    }
    interval(&dv).ok_or_else(|| Error::InvalidRimHook("cells are not contiguous".into()))?;
    let m = shape.minuscule_vertex();
    if dv[m] != 1 {
        return Err(Error::InvalidRimHook(
            "strip does not reach the corner diagonal".into(),
        ));
    }
    Ok(dv)
}

/// The cell whose hook has the same length and ends as the strip for `dv`.
pub fn anchor_of(dv: &DimVector, shape: RectShape) -> Result<(usize, usize)> {
    dimvec_to_rimhook(dv, shape)?;
    let (a, b) = interval(dv).expect("checked above");
    Ok((shape.rank() - 1 - b, a))
}

pub fn dimvec_of_anchor(r: usize, c: usize, shape: RectShape) -> DimVector {
    let b = shape.rank() - 1 - r;
    let mut dv = DimVector::zero(shape.rank());
    for j in c..=b {
        dv.0[j] = 1;
    }
    dv
}

/// A rectangular filling printed row-major, rows separated by `/`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl Grid {
    pub fn zeros(shape: RectShape) -> Grid {
        Grid {
            rows: shape.rows,
            cols: shape.cols,
            data: vec![BigInt::zero(); shape.rows * shape.cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Grid> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse(
                "grid rows must be nonempty and of equal length".into(),
            ));
        }
        Ok(Grid {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        })
    }

    pub fn shape(&self) -> RectShape {
        RectShape {
            rows: self.rows,
            cols: self.cols,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn sum(&self) -> BigInt {
        self.data.iter().sum()
    }

    /// Checks nonnegativity and weak increase along rows and columns.
    pub fn validate(&self) -> Result<()> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v.is_negative() {
                    return Err(Error::NotRpp(format!(
                        "negative entry at ({}, {})",
                        r + 1,
                        c + 1
                    )));
                }
                if (r > 0 && self.get(r - 1, c) > v) || (c > 0 && self.get(r, c - 1) > v) {
                    return Err(Error::NotRpp(format!(
                        "entry at ({}, {}) decreases",
                        r + 1,
                        c + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = s
            .split(['/', '\n'])
            .map(str::trim)
            .filter(|r| !r.is_empty())
            .map(|r| {
                r.split([' ', ',', '\t'])
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse()
                            .map_err(|_| Error::Parse(format!("bad grid entry {t:?}")))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse(format!("grid {s:?} is not rectangular")));
        }
        Ok(Grid {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }
}

/// Places the minuscule poset of an `A_n` quiver on its rectangle.
///
/// The orbit of vertex `i` fills the diagonal `c - r = i + 1 - rows`, with
/// the poset maximum in the north-west corner.
#[derive(Clone, Debug)]
pub struct GridLayout {
    pub shape: RectShape,
    cell_of: Vec<(usize, usize)>,
    element_at: Vec<usize>,
}

impl GridLayout {
    pub fn new(mp: &MinusculePoset, n: usize) -> Result<Self> {
        let shape = RectShape::for_vertex(n, mp.m)?;
        if mp.len() != shape.rows * shape.cols {
            return Err(Error::Internal("poset does not fill its rectangle".into()));
        }
        let mut cell_of = vec![(0, 0); mp.len()];
        let mut element_at = vec![usize::MAX; mp.len()];
        for i in 0..n {
            let diag = i as isize + 1 - shape.rows as isize;
            let cells: Vec<(usize, usize)> = (0..shape.rows)
                .filter_map(|r| {
                    let c = r as isize + diag;
                    (0..shape.cols as isize)
                        .contains(&c)
                        .then_some((r, c as usize))
                })
                .collect();
            let mut elems = mp.orbit_elements(i);
            elems.reverse();
            if elems.len() != cells.len() {
                return Err(Error::Internal(format!(
                    "orbit {} does not fit its diagonal",
                    i + 1
                )));
            }
            for (&x, &(r, c)) in elems.iter().zip(&cells) {
                cell_of[x] = (r, c);
                element_at[r * shape.cols + c] = x;
            }
        }
        for (x, y) in mp.poset.covers() {
            let ((rx, cx), (ry, cy)) = (cell_of[x], cell_of[y]);
            if !((rx == ry + 1 && cx == cy) || (rx == ry && cx == cy + 1)) {
                return Err(Error::Internal(format!(
                    "cover {} < {} is not a grid step",
                    mp.poset.name(x),
                    mp.poset.name(y)
                )));
            }
        }
        Ok(GridLayout {
            shape,
            cell_of,
            element_at,
        })
    }

    pub fn cell_of(&self, x: usize) -> (usize, usize) {
        self.cell_of[x]
    }

    pub fn element_at(&self, r: usize, c: usize) -> usize {
        self.element_at[r * self.shape.cols + c]
    }

    pub fn to_grid(&self, rpp: &Rpp) -> Grid {
        let mut g = Grid::zeros(self.shape);
        for (x, v) in rpp.values.iter().enumerate() {
            let (r, c) = self.cell_of[x];
            g.set(r, c, v.clone());
        }
        g
    }

    pub fn to_rpp(&self, grid: &Grid, bound: Bound) -> Result<Rpp> {
        if grid.shape() != self.shape {
            return Err(Error::Parse(format!(
                "expected a {}x{} grid, got {}x{}",
                self.shape.rows, self.shape.cols, grid.rows, grid.cols
            )));
        }
        Ok(Rpp {
            values: self
                .cell_of
                .iter()
                .map(|&(r, c)| grid.get(r, c).clone())
                .collect(),
            bound,
        })
    }
}

/// Hillman-Grassl: peel lattice paths off the filling, one rim hook each.
pub fn hg_extract(grid: &Grid) -> Result<RepClass> {
    grid.validate()?;
    let shape = grid.shape();
    let mut g = grid.clone();
    let mut hooks = RepClass::new();
    let one = BigInt::one();
    while let Some(c0) = (0..g.cols).find(|&c| (0..g.rows).any(|r| !g.get(r, c).is_zero())) {
        let r0 = (0..g.rows)
            .rev()
            .find(|&r| !g.get(r, c0).is_zero())
            .expect("column is nonzero");
        let (mut r, mut c) = (r0, c0);
        let mut path = vec![(r, c)];
        loop {
            if r > 0 && g.get(r - 1, c) == g.get(r, c) {
                r -= 1;
            } else if c + 1 < g.cols {
                c += 1;
            } else {
                break;
            }
            path.push((r, c));
        }
        for &(pr, pc) in &path {
            let v = g.get(pr, pc) - &one;
            g.set(pr, pc, v);
        }
        let dv = dimvec_of_anchor(r, c0, shape);
        let count = hooks.get(&dv) + BigUint::one();
        hooks.set(dv, count);
    }
    Ok(hooks)
}

/// Inverse of [`hg_extract`]: inserts hooks by decreasing anchor column.
pub fn hg_insert(hooks: &RepClass, shape: RectShape) -> Result<Grid> {
    let mut anchors = Vec::new();
    for (dv, c) in &hooks.0 {
        anchors.push((anchor_of(dv, shape)?, c.clone()));
    }
    anchors.sort_by(|((ra, ca), _), ((rb, cb), _)| cb.cmp(ca).then(ra.cmp(rb)));
    let mut g = Grid::zeros(shape);
    let one = BigInt::one();
    for ((ar, ac), count) in anchors {
        let mut k = BigUint::zero();
        while k < count {
            let (mut r, mut c) = (ar, shape.cols - 1);
            let mut path = vec![(r, c)];
            loop {
                if r + 1 < shape.rows && g.get(r + 1, c) == g.get(r, c) {
                    r += 1;
                } else if c > ac {
                    c -= 1;
                } else {
                    break;
                }
                path.push((r, c));
            }
            for &(pr, pc) in &path {
                let v = g.get(pr, pc) + &one;
                g.set(pr, pc, v);
            }
            k += 1u8;
        }
    }
    Ok(g)
}

/// Pak's map: hook multiplicities sit at their anchor cells and are absorbed
/// row by row, each new cell followed by toggles along its diagonal.
pub fn pak_map(hooks: &RepClass, shape: RectShape) -> Result<Grid> {
    let mut weights = Grid::zeros(shape);
    for (dv, c) in &hooks.0 {
        let (r, col) = anchor_of(dv, shape)?;
        weights.set(r, col, BigInt::from(c.clone()));
    }
    let mut g = Grid::zeros(shape);
    let top = |g: &Grid, r: usize, c: usize| -> BigInt {
        let up = (r > 0).then(|| g.get(r - 1, c));
        let left = (c > 0).then(|| g.get(r, c - 1));
        up.into_iter()
            .chain(left)
            .max()
            .cloned()
            .unwrap_or_default()
    };
    for r in 0..shape.rows {
        for c in 0..shape.cols {
            let v = top(&g, r, c) + weights.get(r, c);
            g.set(r, c, v);
            for k in 1..=r.min(c) {
                let (tr, tc) = (r - k, c - k);
                let bottom = g.get(tr + 1, tc).min(g.get(tr, tc + 1)).clone();
                let v = top(&g, tr, tc) + bottom - g.get(tr, tc);
                g.set(tr, tc, v);
            }
        }
    }
    Ok(g)
}
