use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::GradedMatrix;
use crate::scale::{ParseMode, Scale};

/// Layout of a CSV grade table. `None` means "detect from the data": a
/// first row (column) is treated as labels when one of its cells is not a
/// grade.
#[derive(Clone, Copy, Debug, Default)]
pub struct CsvOptions {
    pub header: Option<bool>,
    pub row_labels: Option<bool>,
    pub mode: ParseMode,
}

impl CsvOptions {
    pub fn plain(mode: ParseMode) -> Self {
        CsvOptions {
            header: Some(false),
            row_labels: Some(false),
            mode,
        }
    }

    pub fn labeled(mode: ParseMode) -> Self {
        CsvOptions {
            header: Some(true),
            row_labels: Some(true),
            mode,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledMatrix {
    pub matrix: GradedMatrix,
    pub row_labels: Option<Vec<String>>,
    pub col_labels: Option<Vec<String>>,
}

impl LabeledMatrix {
    pub fn unlabeled(matrix: GradedMatrix) -> Self {
        LabeledMatrix {
            matrix,
            row_labels: None,
            col_labels: None,
        }
    }
}

pub fn read_csv(path: impl AsRef<Path>, scale: Scale, opts: CsvOptions) -> Result<LabeledMatrix> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv_from(file, scale, opts)
}

pub fn read_csv_from<R: Read>(reader: R, scale: Scale, opts: CsvOptions) -> Result<LabeledMatrix> {
    let mut rdr = ::csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(::csv::Trim::All)
        .from_reader(reader);
    let mut records: Vec<(usize, Vec<String>)> = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec
            .position()
            .map_or(records.len() + 1, |p| p.line() as usize);
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        records.push((line, rec.iter().map(str::to_string).collect()));
    }
    if records.is_empty() {
        return Err(Error::Parse {
            line: 1,
            msg: "no data rows".into(),
        });
    }

    let is_grade = |cell: &str| scale.parse_grade(cell, ParseMode::Lenient).is_ok();
    let header = opts
        .header
        .unwrap_or_else(|| records[0].1.iter().skip(1).any(|c| !is_grade(c)));
    let col_labels = if header {
        Some(records.remove(0).1)
    } else {
        None
    };
    if records.is_empty() {
        return Err(Error::Parse {
            line: 2,
            msg: "header without data rows".into(),
        });
    }
    let row_labels_present = opts
        .row_labels
        .unwrap_or_else(|| records.iter().any(|(_, r)| !is_grade(&r[0])));

    let skip = usize::from(row_labels_present);
    let width = records[0].1.len();
    let cols = width.saturating_sub(skip);
    let mut row_labels = Vec::new();
    let mut levels = Vec::with_capacity(records.len() * cols);
    for (line, rec) in &records {
        if rec.len() != width {
            return Err(Error::Parse {
                line: *line,
                msg: format!("expected {width} fields, found {}", rec.len()),
            });
        }
        if row_labels_present {
            row_labels.push(rec[0].clone());
        }
        for cell in &rec[skip..] {
            let g = scale
                .parse_grade(cell, opts.mode)
                .map_err(|e| Error::Parse {
                    line: *line,
                    msg: e.to_string(),
                })?;
            levels.push(g.level());
        }
    }
    let col_labels = col_labels.map(|mut labels| {
        if row_labels_present && !labels.is_empty() {
            labels.remove(0);
        }
        labels
    });
    Ok(LabeledMatrix {
        matrix: GradedMatrix::from_levels(scale, records.len(), cols, &levels)?,
        row_labels: row_labels_present.then_some(row_labels),
        col_labels,
    })
}

pub fn write_csv(data: &LabeledMatrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv_to(data, file)
}

pub fn write_csv_to<W: Write>(data: &LabeledMatrix, writer: W) -> Result<()> {
    let m = &data.matrix;
    let s = m.scale();
    let mut wtr = ::csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(writer);
    if let Some(cols) = &data.col_labels {
        let mut header: Vec<&str> = Vec::new();
        if data.row_labels.is_some() {
            header.push("");
        }
        header.extend(cols.iter().map(String::as_str));
        wtr.write_record(&header)?;
    }
    for i in 0..m.rows() {
        let mut record: Vec<String> = Vec::with_capacity(m.cols() + 1);
        if let Some(labels) = &data.row_labels {
            record.push(labels.get(i).cloned().unwrap_or_default());
        }
        record.extend(m.row(i).iter().map(|g| s.format_grade(*g)));
        if record.is_empty() {
            // a 0-column matrix still gets one line per row
            wtr.write_record([""])?;
        } else {
            wtr.write_record(&record)?;
        }
    }
    wtr.flush().map_err(|e| Error::io("<csv output>", e))?;
    Ok(())
}
