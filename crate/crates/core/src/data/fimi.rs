use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::GradedMatrix;
use crate::scale::{Grade, Scale};

/// Read FIMI transaction data (one transaction per line, whitespace
/// separated item ids) as a Boolean matrix. Without `num_items` the width
/// is the largest id plus one.
pub fn read_fimi(path: impl AsRef<Path>, num_items: Option<usize>) -> Result<GradedMatrix> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_fimi_from(file, num_items)
}

pub fn read_fimi_from<R: Read>(reader: R, num_items: Option<usize>) -> Result<GradedMatrix> {
    let mut transactions: Vec<Vec<usize>> = Vec::new();
    let mut max_id: Option<usize> = None;
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line = line.map_err(|e| Error::io("<fimi input>", e))?;
        let items = line
            .split_whitespace()
            .map(|tok| {
                let id: usize = tok.parse().map_err(|_| Error::Parse {
                    line: idx + 1,
                    msg: format!("`{tok}` is not an item id"),
                })?;
                if let Some(n) = num_items {
                    if id >= n {
                        return Err(Error::Parse {
                            line: idx + 1,
                            msg: format!("item {id} exceeds the declared {n} items"),
                        });
                    }
                }
                Ok(id)
            })
            .collect::<Result<Vec<usize>>>()?;
        if let Some(&m) = items.iter().max() {
            max_id = Some(max_id.map_or(m, |x| x.max(m)));
        }
        transactions.push(items);
    }
    let cols = num_items.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    let scale = Scale::boolean();
    let mut m = GradedMatrix::zeros(scale, transactions.len(), cols);
    for (i, items) in transactions.iter().enumerate() {
        for &j in items {
            m.set(i, j, Grade::new(1));
        }
    }
    Ok(m)
}
