//! Matrices and fuzzy sets over a [`Scale`].

use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::scale::{Grade, ParseMode, Scale};

fn check_scale(left: &Scale, right: &Scale) -> Result<()> {
    if left != right {
        return Err(Error::ScaleMismatch {
            left: left.to_string(),
            right: right.to_string(),
        });
    }
    Ok(())
}

fn check_levels(scale: &Scale, levels: &[u16]) -> Result<Vec<Grade>> {
    levels.iter().map(|&l| scale.grade(l)).collect()
}

/// A graded vector over a finite universe (objects or attributes).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FuzzySet {
    scale: Scale,
    membership: Vec<Grade>,
}

impl FuzzySet {
    pub fn zeros(scale: Scale, len: usize) -> Self {
        FuzzySet {
            scale,
            membership: vec![Grade::ZERO; len],
        }
    }

    pub fn ones(scale: Scale, len: usize) -> Self {
        FuzzySet {
            membership: vec![scale.one(); len],
            scale,
        }
    }

    pub fn from_levels(scale: Scale, levels: &[u16]) -> Result<Self> {
        Ok(FuzzySet {
            membership: check_levels(&scale, levels)?,
            scale,
        })
    }

    pub fn from_grades(scale: Scale, membership: Vec<Grade>) -> Result<Self> {
        if let Some(g) = membership.iter().find(|g| !scale.contains(**g)) {
            return Err(Error::NotOnScale {
                value: format!("L{}", g.level()),
                levels: scale.levels(),
            });
        }
        Ok(FuzzySet { scale, membership })
    }

    pub(crate) fn from_grades_unchecked(scale: Scale, membership: Vec<Grade>) -> Self {
        FuzzySet { scale, membership }
    }

    /// The graded singleton `{a/j}`: `a` at position `j`, zero elsewhere.
    pub fn singleton(scale: Scale, len: usize, j: usize, a: Grade) -> Result<Self> {
        if j >= len {
            return Err(Error::IndexOutOfRange { index: j, len });
        }
        if !scale.contains(a) {
            return Err(Error::NotOnScale {
                value: format!("L{}", a.level()),
                levels: scale.levels(),
            });
        }
        let mut set = FuzzySet::zeros(scale, len);
        set.membership[j] = a;
        Ok(set)
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    pub fn len(&self) -> usize {
        self.membership.len()
    }

    pub fn is_empty(&self) -> bool {
        self.membership.is_empty()
    }

    pub fn get(&self, i: usize) -> Grade {
        self.membership[i]
    }

    pub fn set(&mut self, i: usize, g: Grade) {
        debug_assert!(self.scale.contains(g));
        self.membership[i] = g;
    }

    pub fn as_slice(&self) -> &[Grade] {
        &self.membership
    }

    pub fn levels(&self) -> Vec<u16> {
        self.membership.iter().map(|g| g.level()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Grade> + '_ {
        self.membership.iter().copied()
    }

    /// True when every membership degree is zero.
    pub fn is_zero(&self) -> bool {
        self.membership.iter().all(|g| g.is_zero())
    }

    fn check_compatible(&self, other: &FuzzySet) -> Result<()> {
        check_scale(&self.scale, &other.scale)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "fuzzy sets of size {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    /// Pointwise join (union).
    pub fn union(&self, other: &FuzzySet) -> Result<FuzzySet> {
        self.check_compatible(other)?;
        let membership = self
            .membership
            .iter()
            .zip(&other.membership)
            .map(|(&a, &b)| a.max(b))
            .collect();
        Ok(FuzzySet::from_grades_unchecked(self.scale, membership))
    }

    /// Pointwise inclusion.
    pub fn is_subset(&self, other: &FuzzySet) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self
            .membership
            .iter()
            .zip(&other.membership)
            .all(|(a, b)| a <= b))
    }
}

impl fmt::Display for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (i, g) in self.membership.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{}/{}", self.scale.format_grade(*g), i)?;
        }
        f.write_str("}")
    }
}

/// Dense row-major matrix of grades.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMatrix {
    rows: usize,
    cols: usize,
    scale: Scale,
    data: Vec<Grade>,
}

impl GradedMatrix {
    pub fn zeros(scale: Scale, rows: usize, cols: usize) -> Self {
        GradedMatrix {
            rows,
            cols,
            scale,
            data: vec![Grade::ZERO; rows * cols],
        }
    }

    pub fn from_levels(scale: Scale, rows: usize, cols: usize, levels: &[u16]) -> Result<Self> {
        if levels.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} levels for a {rows}x{cols} matrix",
                levels.len()
            )));
        }
        Ok(GradedMatrix {
            rows,
            cols,
            data: check_levels(&scale, levels)?,
            scale,
        })
    }

    /// Build from rows of levels; all rows must have equal length.
    pub fn from_level_rows<R: AsRef<[u16]>>(scale: Scale, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut levels = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            levels.extend_from_slice(r);
        }
        GradedMatrix::from_levels(scale, rows.len(), cols, &levels)
    }

    /// Build from rows of decimal grades, which must lie on the chain.
    pub fn from_value_rows<R: AsRef<[f64]>>(scale: Scale, rows: &[R]) -> Result<Self> {
        let level_rows = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .iter()
                    .map(|x| {
                        Ok(scale
                            .parse_grade(&x.to_string(), ParseMode::Strict)?
                            .level())
                    })
                    .collect::<Result<Vec<u16>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GradedMatrix::from_level_rows(scale, &level_rows)
    }

    pub(crate) fn from_grades_unchecked(
        scale: Scale,
        rows: usize,
        cols: usize,
        data: Vec<Grade>,
    ) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        GradedMatrix {
            rows,
            cols,
            scale,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn scale(&self) -> &Scale {
        &self.scale
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Grade {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, g: Grade) {
        debug_assert!(self.scale.contains(g));
        self.data[i * self.cols + j] = g;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Grade] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_set(&self, i: usize) -> FuzzySet {
        FuzzySet::from_grades_unchecked(self.scale, self.row(i).to_vec())
    }

    pub fn column_set(&self, j: usize) -> FuzzySet {
        FuzzySet::from_grades_unchecked(
            self.scale,
            (0..self.rows).map(|i| self.get(i, j)).collect(),
        )
    }

    pub fn as_slice(&self) -> &[Grade] {
        &self.data
    }

    pub fn levels(&self) -> Vec<Vec<u16>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|g| g.level()).collect())
            .collect()
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|g| !g.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|g| g.is_zero())
    }

    fn check_same_shape(&self, other: &GradedMatrix) -> Result<()> {
        check_scale(&self.scale, &other.scale)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// The sup-t-norm product `(A ∘ B)_ij = max_l A_il ⊗ B_lj`.
    pub fn compose(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        check_scale(&self.scale, &other.scale)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let s = self.scale;
        let mut out = GradedMatrix::zeros(s, self.rows, other.cols);
        for i in 0..self.rows {
            for (l, &a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let b_row = other.row(l);
                let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o = (*o).max(s.tnorm(a, b));
                }
            }
        }
        Ok(out)
    }

    /// The rectangle `C ⊗ D` with entries `C(i) ⊗ D(j)`.
    pub fn rectangle(extent: &FuzzySet, intent: &FuzzySet) -> Result<GradedMatrix> {
        check_scale(extent.scale(), intent.scale())?;
        let s = *extent.scale();
        let (n, m) = (extent.len(), intent.len());
        let mut data = Vec::with_capacity(n * m);
        for c in extent.iter() {
            data.extend(intent.iter().map(|d| s.tnorm(c, d)));
        }
        Ok(GradedMatrix::from_grades_unchecked(s, n, m, data))
    }

    /// Entrywise join of equally shaped matrices. The empty superposition is
    /// the zero matrix of the declared shape.
    pub fn superpose<'a, I>(
        scale: Scale,
        rows: usize,
        cols: usize,
        matrices: I,
    ) -> Result<GradedMatrix>
    where
        I: IntoIterator<Item = &'a GradedMatrix>,
    {
        let mut out = GradedMatrix::zeros(scale, rows, cols);
        for m in matrices {
            out.join_assign(m)?;
        }
        Ok(out)
    }

    /// `self := self ∨ other`.
    pub fn join_assign(&mut self, other: &GradedMatrix) -> Result<()> {
        self.check_same_shape(other)?;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = (*a).max(b);
        }
        Ok(())
    }

    /// Entrywise order.
    pub fn leq(&self, other: &GradedMatrix) -> Result<bool> {
        self.check_same_shape(other)?;
        Ok(self.data.iter().zip(&other.data).all(|(a, b)| a <= b))
    }

    /// Number of positions holding equal grades.
    pub fn equal_count(&self, other: &GradedMatrix) -> Result<usize> {
        self.check_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .filter(|(a, b)| a == b)
            .count())
    }

    /// Fraction of all `rows * cols` positions holding equal grades.
    /// An empty matrix counts as fully equal.
    pub fn equal_fraction(&self, other: &GradedMatrix) -> Result<Ratio<usize>> {
        let equal = self.equal_count(other)?;
        let total = self.rows * self.cols;
        if total == 0 {
            return Ok(Ratio::from_integer(1));
        }
        Ok(Ratio::new(equal, total))
    }

    /// Reinterpret the levels on another scale with the same number of
    /// grades (for example to switch t-norms).
    pub fn with_scale(&self, scale: Scale) -> Result<GradedMatrix> {
        if scale.levels() != self.scale.levels() {
            return Err(Error::ScaleMismatch {
                left: self.scale.to_string(),
                right: scale.to_string(),
            });
        }
        Ok(GradedMatrix {
            scale,
            ..self.clone()
        })
    }

    pub fn transpose(&self) -> GradedMatrix {
        let mut out = GradedMatrix::zeros(self.scale, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|g| self.scale.format_grade(*g))
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Result of combining two object rows by ordinary addition of grade values,
/// once before and once after composing with a factor-attribute matrix.
///
/// Levels are kept as plain integers (units of `1/n`) and are not clamped,
/// since the sum of two grades need not be a grade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityCheck {
    /// Levels of `(q1 + q2) ∘ B`.
    pub sum_then_compose: Vec<u32>,
    /// Levels of `q1 ∘ B + q2 ∘ B`.
    pub compose_then_sum: Vec<u32>,
}

impl AdditivityCheck {
    pub fn is_additive(&self) -> bool {
        self.sum_then_compose == self.compose_then_sum
    }
}

/// Compare `(q1 + q2) ∘ B` with `q1 ∘ B + q2 ∘ B`, where `+` is arithmetic
/// on grade values outside the algebra. `q1 + q2` must stay within `[0, 1]`.
pub fn additivity_check(q1: &FuzzySet, q2: &FuzzySet, b: &GradedMatrix) -> Result<AdditivityCheck> {
    q1.check_compatible(q2)?;
    let s = *q1.scale();
    let summed: Vec<u16> = q1
        .iter()
        .zip(q2.iter())
        .map(|(a, b)| a.level() + b.level())
        .collect();
    let sum = FuzzySet::from_levels(s, &summed)?;
    let row = |set: &FuzzySet| -> Result<GradedMatrix> {
        GradedMatrix::from_grades_unchecked(s, 1, set.len(), set.as_slice().to_vec()).compose(b)
    };
    let sum_then_compose = row(&sum)?
        .as_slice()
        .iter()
        .map(|g| u32::from(g.level()))
        .collect();
    let (r1, r2) = (row(q1)?, row(q2)?);
    let compose_then_sum = r1
        .as_slice()
        .iter()
        .zip(r2.as_slice())
        .map(|(a, b)| u32::from(a.level()) + u32::from(b.level()))
        .collect();
    Ok(AdditivityCheck {
        sum_then_compose,
        compose_then_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scale::TNorm;

    fn tenths() -> Scale {
        Scale::new(11, TNorm::Lukasiewicz).unwrap()
    }

    fn quarters() -> Scale {
        Scale::new(5, TNorm::Lukasiewicz).unwrap()
    }

    #[test]
    fn compose_with_zero_is_zero() {
        let s = quarters();
        let a = GradedMatrix::from_level_rows(s, &[[4, 3], [2, 1]]).unwrap();
        let z = GradedMatrix::zeros(s, 2, 3);
        assert!(a.compose(&z).unwrap().is_zero());
    }

    #[test]
    fn compose_inner_dimension_zero() {
        let s = quarters();
        let a = GradedMatrix::zeros(s, 3, 0);
        let b = GradedMatrix::zeros(s, 0, 2);
        let c = a.compose(&b).unwrap();
        assert_eq!(c.shape(), (3, 2));
        assert!(c.is_zero());
    }

    #[test]
    fn compose_rejects_bad_shapes_and_scales() {
        let s = quarters();
        let a = GradedMatrix::zeros(s, 2, 3);
        assert!(matches!(a.compose(&a), Err(Error::DimensionMismatch(_))));
        let g = Scale::new(5, TNorm::Godel).unwrap();
        let b = GradedMatrix::zeros(g, 3, 2);
        assert!(matches!(a.compose(&b), Err(Error::ScaleMismatch { .. })));
    }

    #[test]
    fn example_composition() {
        let s = tenths();
        let a = GradedMatrix::from_level_rows(s, &[[2, 8], [9, 8], [10, 10]]).unwrap();
        let b = GradedMatrix::from_level_rows(s, &[[4, 8, 6], [5, 2, 3]]).unwrap();
        let expected =
            GradedMatrix::from_level_rows(s, &[[3, 0, 1], [3, 7, 5], [5, 8, 6]]).unwrap();
        assert_eq!(a.compose(&b).unwrap(), expected);
    }

    #[test]
    fn composition_is_not_additive() {
        let s = tenths();
        let b = GradedMatrix::from_level_rows(s, &[[4, 8, 6], [5, 2, 3]]).unwrap();
        let q1 = FuzzySet::from_levels(s, &[6, 2]).unwrap();
        let q2 = FuzzySet::from_levels(s, &[4, 3]).unwrap();
        let check = additivity_check(&q1, &q2, &b).unwrap();
        assert_eq!(check.sum_then_compose, vec![4, 8, 6]);
        assert_eq!(check.compose_then_sum, vec![0, 6, 2]);
        assert!(!check.is_additive());
    }

    #[test]
    fn rectangle_basics() {
        let s = quarters();
        let d = FuzzySet::from_levels(s, &[1, 4, 0, 3]).unwrap();
        let full = GradedMatrix::rectangle(&FuzzySet::ones(s, 3), &d).unwrap();
        for i in 0..3 {
            assert_eq!(full.row_set(i), d);
        }
        assert!(GradedMatrix::rectangle(&FuzzySet::zeros(s, 3), &d)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn superpose_single_and_empty() {
        let s = quarters();
        let m = GradedMatrix::from_level_rows(s, &[[1, 2], [3, 4]]).unwrap();
        assert_eq!(GradedMatrix::superpose(s, 2, 2, [&m]).unwrap(), m);
        assert!(GradedMatrix::superpose(s, 2, 2, []).unwrap().is_zero());
        let other = GradedMatrix::zeros(s, 3, 2);
        assert!(GradedMatrix::superpose(s, 2, 2, [&m, &other]).is_err());
    }

    #[test]
    fn order_and_agreement() {
        let s = quarters();
        let m = GradedMatrix::from_level_rows(s, &[[1, 2], [3, 4]]).unwrap();
        let n = GradedMatrix::from_level_rows(s, &[[1, 2], [2, 0]]).unwrap();
        assert!(m.leq(&m).unwrap());
        assert!(n.leq(&m).unwrap());
        assert!(!m.leq(&n).unwrap());
        assert_eq!(m.equal_fraction(&n).unwrap(), Ratio::new(1, 2));
    }

    #[test]
    fn singleton_and_union() {
        let s = quarters();
        let a = FuzzySet::singleton(s, 3, 1, Grade::new(2)).unwrap();
        assert_eq!(a.levels(), vec![0, 2, 0]);
        assert!(FuzzySet::singleton(s, 3, 0, Grade::ZERO).unwrap().is_zero());
        assert!(matches!(
            FuzzySet::singleton(s, 3, 3, Grade::new(1)),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        ));
        let b = FuzzySet::from_levels(s, &[1, 1, 4]).unwrap();
        assert_eq!(a.union(&b).unwrap().levels(), vec![1, 2, 4]);
        assert_eq!(format!("{a}"), "{0.50/1}");
    }

    #[test]
    fn value_rows_must_be_on_chain() {
        let s = quarters();
        assert!(GradedMatrix::from_value_rows(s, &[[0.5, 0.25]]).is_ok());
        assert!(GradedMatrix::from_value_rows(s, &[[0.3]]).is_err());
    }

    #[test]
    fn transpose_twice() {
        let s = quarters();
        let m = GradedMatrix::from_level_rows(s, &[[1, 2, 3], [4, 0, 1]]).unwrap();
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().get(2, 0), Grade::new(3));
    }
}
