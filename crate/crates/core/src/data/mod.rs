//! Reading, writing, discretizing and generating graded matrices.

mod csv;
mod discretize;
mod fimi;
mod generate;

pub use self::csv::{read_csv, read_csv_from, write_csv, write_csv_to, CsvOptions, LabeledMatrix};
pub use self::discretize::{discretize, read_ranges, read_raw_table, ColumnRange, RawTable};
pub use self::fimi::{read_fimi, read_fimi_from};
pub use self::generate::{
    random_factorizable, random_factorizable_with, random_matrix_with, GradeDistribution,
};
