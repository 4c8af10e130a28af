use std::fs::File;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::GradedMatrix;
use crate::scale::{Grade, ParseMode, Scale};

/// A labeled table of raw numeric scores.
#[derive(Clone, Debug, PartialEq)]
pub struct RawTable {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl RawTable {
    pub fn new(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        values: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let rows = values.len();
        let cols = values.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(
                "a raw table needs at least one row and column".into(),
            ));
        }
        if let Some(i) = values.iter().position(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("row {i} is ragged")));
        }
        if row_labels.len() != rows || col_labels.len() != cols {
            return Err(Error::DimensionMismatch(
                "label count does not match the table".into(),
            ));
        }
        Ok(RawTable {
            row_labels,
            col_labels,
            rows,
            cols,
            values: values.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.cols + j]
    }
}

/// Per-column `[min, max]` used to rescale raw scores onto `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnRange {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl ColumnRange {
    pub fn new(min: Vec<f64>, max: Vec<f64>) -> Result<Self> {
        if min.len() != max.len() {
            return Err(Error::DimensionMismatch(
                "min and max rows differ in length".into(),
            ));
        }
        Ok(ColumnRange { min, max })
    }

    /// Ranges spanned by the table's own columns.
    pub fn of_table(table: &RawTable) -> Self {
        let col = |j: usize| (0..table.rows).map(move |i| table.get(i, j));
        ColumnRange {
            min: (0..table.cols)
                .map(|j| col(j).fold(f64::INFINITY, f64::min))
                .collect(),
            max: (0..table.cols)
                .map(|j| col(j).fold(f64::NEG_INFINITY, f64::max))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.min.len()
    }

    pub fn is_empty(&self) -> bool {
        self.min.is_empty()
    }
}

/// Map each value `x` of column `j` to the level nearest to
/// `(x - min_j) / (max_j - min_j)`, rounding ties up.
///
/// Values outside `[min_j, max_j]` are an error in strict mode and are
/// clamped in lenient mode.
pub fn discretize(
    table: &RawTable,
    ranges: &ColumnRange,
    scale: Scale,
    mode: ParseMode,
) -> Result<GradedMatrix> {
    if ranges.len() != table.cols {
        return Err(Error::DimensionMismatch(format!(
            "{} ranges for {} columns",
            ranges.len(),
            table.cols
        )));
    }
    if let Some(j) = (0..table.cols).find(|&j| ranges.max[j] <= ranges.min[j]) {
        return Err(Error::ConstantColumn(j));
    }
    let n = f64::from(scale.max_level());
    let mut out = GradedMatrix::zeros(scale, table.rows, table.cols);
    for i in 0..table.rows {
        for j in 0..table.cols {
            let (lo, hi) = (ranges.min[j], ranges.max[j]);
            let mut x = table.get(i, j);
            if !(lo..=hi).contains(&x) {
                match mode {
                    ParseMode::Strict => {
                        return Err(Error::OutOfRange {
                            row: i,
                            col: j,
                            value: x,
                            min: lo,
                            max: hi,
                        })
                    }
                    ParseMode::Lenient => x = x.clamp(lo, hi),
                }
            }
            // floor(t*n + 1/2) with t = (x - lo) / (hi - lo), kept as one
            // division so that exact midpoints round up
            let level = ((2.0 * (x - lo) * n + (hi - lo)) / (2.0 * (hi - lo))).floor();
            out.set(i, j, Grade::new(level.min(n) as u16));
        }
    }
    Ok(out)
}

/// Header cells (if any) and labeled numeric rows.
type Records = (Option<Vec<String>>, Vec<(String, Vec<f64>)>);

fn numeric_records<R: Read>(reader: R) -> Result<Records> {
    let mut rdr = ::csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(::csv::Trim::All)
        .from_reader(reader);
    let mut header = None;
    let mut rows = Vec::new();
    let mut width = None;
    for (idx, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = rec.position().map_or(idx + 1, |p| p.line() as usize);
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        let cells: Vec<&str> = rec.iter().collect();
        let label_col = cells[0].parse::<f64>().is_err();
        let data = if label_col { &cells[1..] } else { &cells[..] };
        let parsed: std::result::Result<Vec<f64>, _> =
            data.iter().map(|c| c.parse::<f64>()).collect();
        match parsed {
            Ok(values) if !values.is_empty() => {
                if *width.get_or_insert(values.len()) != values.len() {
                    return Err(Error::Parse {
                        line,
                        msg: format!(
                            "expected {} values, found {}",
                            width.unwrap_or(0),
                            values.len()
                        ),
                    });
                }
                let label = if label_col {
                    cells[0].to_string()
                } else {
                    format!("{}", rows.len())
                };
                rows.push((label, values));
            }
            _ if header.is_none() && rows.is_empty() => {
                let mut labels: Vec<String> = cells.iter().map(|c| c.to_string()).collect();
                if labels.first().is_some_and(|c| c.is_empty()) {
                    labels.remove(0);
                }
                header = Some(labels);
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: "non-numeric value".into(),
                })
            }
        }
    }
    Ok((header, rows))
}

/// Read a CSV of raw scores with an optional header row and an optional
/// label column.
pub fn read_raw_table(path: impl AsRef<Path>) -> Result<RawTable> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let (header, rows) = numeric_records(file)?;
    let cols = rows.first().map_or(0, |r| r.1.len());
    let col_labels = match header {
        Some(h) if h.len() == cols => h,
        Some(h) if h.len() == cols + 1 => h[1..].to_vec(),
        _ => (0..cols).map(|j| j.to_string()).collect(),
    };
    let (row_labels, values) = rows.into_iter().unzip();
    RawTable::new(row_labels, col_labels, values)
}

/// Read column ranges: the first numeric row holds the minima and the
/// second the maxima; a header row and a label column are optional.
pub fn read_ranges(path: impl AsRef<Path>) -> Result<ColumnRange> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let (_, mut rows) = numeric_records(file)?;
    if rows.len() != 2 {
        return Err(Error::Parse {
            line: 1,
            msg: format!(
                "expected a minimum and a maximum row, found {} rows",
                rows.len()
            ),
        });
    }
    let max = rows.pop().map(|r| r.1).unwrap_or_default();
    let min = rows.pop().map(|r| r.1).unwrap_or_default();
    ColumnRange::new(min, max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scale::TNorm;

    fn quarters() -> Scale {
        Scale::new(5, TNorm::Lukasiewicz).unwrap()
    }

    fn single(x: f64, lo: f64, hi: f64, mode: ParseMode) -> Result<u16> {
        let t = RawTable::new(vec!["r".into()], vec!["c".into()], vec![vec![x]])?;
        let r = ColumnRange::new(vec![lo], vec![hi])?;
        Ok(discretize(&t, &r, quarters(), mode)?.get(0, 0).level())
    }

    #[test]
    fn rescales_and_rounds() {
        // (1020 - 723) / 327 ≈ 0.908 -> 1.00
        assert_eq!(single(1020.0, 723.0, 1050.0, ParseMode::Strict).unwrap(), 4);
        // 112 / 207 ≈ 0.541 -> 0.50
        assert_eq!(single(894.0, 782.0, 989.0, ParseMode::Strict).unwrap(), 2);
        assert_eq!(single(782.0, 782.0, 989.0, ParseMode::Strict).unwrap(), 0);
        assert_eq!(single(989.0, 782.0, 989.0, ParseMode::Strict).unwrap(), 4);
    }

    #[test]
    fn midpoints_round_up() {
        // 0.625 lies between 0.50 and 0.75
        assert_eq!(single(5.0, 0.0, 8.0, ParseMode::Strict).unwrap(), 3);
        // 0.125 lies between 0.00 and 0.25
        assert_eq!(single(1.0, 0.0, 8.0, ParseMode::Strict).unwrap(), 1);
    }

    #[test]
    fn constant_column_and_range_errors() {
        assert!(matches!(
            single(5.0, 5.0, 5.0, ParseMode::Strict),
            Err(Error::ConstantColumn(0))
        ));
        assert!(matches!(
            single(11.0, 0.0, 10.0, ParseMode::Strict),
            Err(Error::OutOfRange { .. })
        ));
        assert_eq!(single(11.0, 0.0, 10.0, ParseMode::Lenient).unwrap(), 4);
        assert_eq!(single(-3.0, 0.0, 10.0, ParseMode::Lenient).unwrap(), 0);
    }

    #[test]
    fn own_ranges() {
        let t = RawTable::new(
            vec!["a".into(), "b".into()],
            vec!["x".into(), "y".into()],
            vec![vec![1.0, 7.0], vec![3.0, 2.0]],
        )
        .unwrap();
        let r = ColumnRange::of_table(&t);
        assert_eq!(r.min, vec![1.0, 2.0]);
        assert_eq!(r.max, vec![3.0, 7.0]);
    }
}
