//! Square labeled matrices and their JSON/CSV encodings.
//!
//! JSON is `{"labels": [...], "rows": [[...], ...]}`. CSV has a header row and
//! a leading label column. Boolean cells are written as 0/1 and absent cells
//! as `null` (empty in CSV).

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledMatrix<T> {
    labels: Vec<String>,
    cells: Vec<T>,
}

/// Leaf-pair distances.
pub type DistanceMatrix = LabeledMatrix<u64>;
/// Dominance, c-command, cu-command and similar boolean relations.
pub type RelationMatrix = LabeledMatrix<bool>;

impl<T: Copy> LabeledMatrix<T> {
    pub fn new(labels: Vec<String>, rows: Vec<Vec<T>>) -> Result<Self> {
        let n = labels.len();
        if rows.len() != n {
            return Err(Error::NonSquare { labels: n, row: rows.len(), len: rows.len() });
        }
        let mut cells = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NonSquare { labels: n, row: i, len: row.len() });
            }
            cells.extend(row);
        }
        Ok(LabeledMatrix { labels, cells })
    }

    pub fn from_fn(labels: Vec<String>, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let n = labels.len();
        let mut cells = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                cells.push(f(i, j));
            }
        }
        LabeledMatrix { labels, cells }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.cells[i * self.size() + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        let n = self.size();
        &self.cells[i * n..(i + 1) * n]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.size()).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn get_by_label(&self, a: &str, b: &str) -> Result<T> {
        Ok(self.get(self.index_of(a)?, self.index_of(b)?))
    }

    pub fn map<U: Copy>(&self, f: impl FnMut(T) -> U) -> LabeledMatrix<U> {
        LabeledMatrix { labels: self.labels.clone(), cells: self.cells.iter().copied().map(f).collect() }
    }

    /// Sub-matrix over the given indices, in that order.
    pub fn restrict(&self, indices: &[usize]) -> Self {
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        LabeledMatrix::from_fn(labels, |a, b| self.get(indices[a], indices[b]))
    }
}

/// How a cell is written out.
pub trait Cell: Copy {
    fn to_json(self) -> Value;
    fn to_csv(self) -> String;
}

impl Cell for u64 {
    fn to_json(self) -> Value {
        Value::from(self)
    }
    fn to_csv(self) -> String {
        self.to_string()
    }
}

impl Cell for i64 {
    fn to_json(self) -> Value {
        Value::from(self)
    }
    fn to_csv(self) -> String {
        self.to_string()
    }
}

impl Cell for bool {
    fn to_json(self) -> Value {
        Value::from(u8::from(self))
    }
    fn to_csv(self) -> String {
        u8::from(self).to_string()
    }
}

impl<T: Cell> Cell for Option<T> {
    fn to_json(self) -> Value {
        self.map_or(Value::Null, Cell::to_json)
    }
    fn to_csv(self) -> String {
        self.map(Cell::to_csv).unwrap_or_default()
    }
}

impl<T: Cell> LabeledMatrix<T> {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("matrix serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        let mut header = vec![String::new()];
        header.extend(self.labels.iter().cloned());
        w.write_record(&header).expect("in-memory write");
        for (i, label) in self.labels.iter().enumerate() {
            let mut rec = vec![label.clone()];
            rec.extend(self.row(i).iter().map(|c| c.to_csv()));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("csv is utf-8")
    }
}

impl<T: Cell> Serialize for LabeledMatrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Value>> = (0..self.size())
            .map(|i| self.row(i).iter().map(|c| c.to_json()).collect())
            .collect();
        let mut st = s.serialize_struct("LabeledMatrix", 2)?;
        st.serialize_field("labels", &self.labels)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct MatrixDoc {
    labels: Vec<String>,
    rows: Vec<Vec<u64>>,
}

impl DistanceMatrix {
    /// Read a distance matrix from the shared JSON form.
    pub fn from_json_str(text: &str) -> std::result::Result<Self, MatrixParseError> {
        let doc: MatrixDoc = serde_json::from_str(text).map_err(|e| MatrixParseError::Json(e.to_string()))?;
        LabeledMatrix::new(doc.labels, doc.rows).map_err(MatrixParseError::Shape)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixParseError {
    #[error("invalid matrix JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Shape(Error),
}
