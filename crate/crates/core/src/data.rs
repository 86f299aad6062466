//! LIBSVM-format datasets, seeded train/test splits, and classification
//! metrics.
//!
//! The text format is one sample per line, `<label> <idx>:<val> ...` with
//! 1-based, strictly increasing indices. Labels `+1`/`-1` are taken
//! verbatim; `0` maps to `-1` and `2` maps to `+1` (the conventions used by
//! LIBSVM-hosted binary datasets), with a logged notice.

use std::fmt::Write as _;
use std::io::BufRead;

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// One labeled sparse sample. `indices` are 1-based and strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSample {
    pub indices: Vec<usize>,
    pub values: Vec<f64>,
    /// Always ±1 after ingestion.
    pub label: f64,
}

impl SparseSample {
    /// Dot product against a dense point using 0-based coordinates.
    pub fn dot(&self, x: &DVector<f64>) -> f64 {
        self.indices
            .iter()
            .zip(&self.values)
            .map(|(&i, &v)| v * x[i - 1])
            .sum()
    }
}

/// An immutable collection of sparse samples with a fixed feature dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    samples: Vec<SparseSample>,
    dim: usize,
    name: String,
}

impl Dataset {
    /// Wraps samples, taking `dim` as the maximum observed index unless a
    /// larger override is supplied (to align train/test dimensionality).
    pub fn new(samples: Vec<SparseSample>, dim_override: Option<usize>, name: &str) -> Self {
        let observed = samples
            .iter()
            .filter_map(|s| s.indices.last().copied())
            .max()
            .unwrap_or(0);
        let dim = dim_override.unwrap_or(observed).max(observed);
        Self {
            samples,
            dim,
            name: name.to_string(),
        }
    }

    pub fn samples(&self) -> &[SparseSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Feature dimension `n` (max 1-based index observed or overridden).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Re-targets the dimension, e.g. to align a test split with its
    /// training counterpart. Fails if a sample indexes past `dim`.
    pub fn with_dim(mut self, dim: usize) -> Result<Self> {
        let observed = self
            .samples
            .iter()
            .filter_map(|s| s.indices.last().copied())
            .max()
            .unwrap_or(0);
        if dim < observed {
            return Err(Error::config(format!(
                "dimension override {dim} is below the maximum observed index {observed}"
            )));
        }
        self.dim = dim;
        Ok(self)
    }

    /// Serializes back to LIBSVM text. Float values use the shortest
    /// round-trippable representation, so parse/serialize round trips are
    /// exact.
    pub fn to_libsvm(&self) -> String {
        let mut out = String::new();
        for s in &self.samples {
            if s.label > 0.0 {
                out.push_str("+1");
            } else {
                out.push_str("-1");
            }
            for (&i, &v) in s.indices.iter().zip(&s.values) {
                write!(out, " {i}:{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Parses LIBSVM text. Blank lines and `#` comments are skipped; malformed
/// tokens, nonincreasing indices, and unmappable labels fail with the
/// offending line number.
pub fn parse_libsvm<R: BufRead>(reader: R, name: &str) -> Result<Dataset> {
    let mut samples = Vec::new();
    let mut remapped = 0usize;
    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line?;
        let content = match line.split_once('#') {
            Some((head, _)) => head,
            None => line.as_str(),
        };
        let mut tokens = content.split_whitespace();
        let Some(label_tok) = tokens.next() else {
            continue; // blank or comment-only line
        };
        let raw: f64 = label_tok
            .parse()
            .map_err(|_| Error::parse(lineno, format!("non-numeric label `{label_tok}`")))?;
        let label = match raw {
            v if v == 1.0 => 1.0,
            v if v == -1.0 => -1.0,
            v if v == 0.0 => {
                remapped += 1;
                -1.0
            }
            v if v == 2.0 => {
                remapped += 1;
                1.0
            }
            other => {
                return Err(Error::parse(
                    lineno,
                    format!("label `{other}` is not one of +1, -1, 0, 2"),
                ))
            }
        };
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for tok in tokens {
            let (idx_str, val_str) = tok.split_once(':').ok_or_else(|| {
                Error::parse(lineno, format!("expected `index:value`, found `{tok}`"))
            })?;
            let idx: usize = idx_str
                .parse()
                .map_err(|_| Error::parse(lineno, format!("non-numeric index `{idx_str}`")))?;
            let val: f64 = val_str
                .parse()
                .map_err(|_| Error::parse(lineno, format!("non-numeric value `{val_str}`")))?;
            if idx == 0 {
                return Err(Error::parse(lineno, "feature indices are 1-based; found 0"));
            }
            if indices.last().is_some_and(|&prev| idx <= prev) {
                return Err(Error::parse(
                    lineno,
                    format!("indices not strictly increasing at `{tok}`"),
                ));
            }
            indices.push(idx);
            values.push(val);
        }
        samples.push(SparseSample {
            indices,
            values,
            label,
        });
    }
    if remapped > 0 {
        log::info!("{name}: remapped {remapped} labels from {{0,2}} to {{-1,+1}}");
    }
    Ok(Dataset::new(samples, None, name))
}

/// Parses a LIBSVM file from disk, naming the dataset after the file stem.
pub fn load_libsvm(path: &std::path::Path) -> Result<Dataset> {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let file = std::fs::File::open(path)?;
    parse_libsvm(std::io::BufReader::new(file), &name)
}

/// Seeded uniform shuffle followed by a split with
/// `|test| = round(test_fraction · m)`. The same seed always produces the
/// same split.
pub fn split_train_test(
    dataset: &Dataset,
    test_fraction: f64,
    seed: u64,
) -> Result<(Dataset, Dataset)> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::config(format!(
            "test fraction must lie in (0,1), got {test_fraction}"
        )));
    }
    let m = dataset.len();
    let test_size = (test_fraction * m as f64).round() as usize;
    let mut order: Vec<usize> = (0..m).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    use rand::seq::SliceRandom;
    order.shuffle(&mut rng);
    let (test_idx, train_idx) = order.split_at(test_size);
    let collect = |idx: &[usize], suffix: &str| {
        let mut idx = idx.to_vec();
        idx.sort_unstable();
        Dataset::new(
            idx.iter().map(|&i| dataset.samples()[i].clone()).collect(),
            Some(dataset.dim()),
            &format!("{}{suffix}", dataset.name()),
        )
    };
    Ok((collect(train_idx, ".train"), collect(test_idx, ".test")))
}

/// Fraction of samples whose predicted sign disagrees with the label.
/// `sign(0)` counts as `+1`.
pub fn misclassification_error(x: &DVector<f64>, dataset: &Dataset) -> f64 {
    assert!(
        x.len() >= dataset.dim(),
        "point dimension {} is below dataset dimension {}",
        x.len(),
        dataset.dim()
    );
    if dataset.is_empty() {
        return 0.0;
    }
    let wrong = dataset
        .samples()
        .iter()
        .filter(|s| {
            let predicted = if s.dot(x) >= 0.0 { 1.0 } else { -1.0 };
            predicted != s.label
        })
        .count();
    wrong as f64 / dataset.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn parse(text: &str) -> Result<Dataset> {
        parse_libsvm(Cursor::new(text), "test")
    }

    #[test]
    fn parses_basic_line() {
        let d = parse("+1 2:0.5 7:-1.25\n").unwrap();
        assert_eq!(d.len(), 1);
        let s = &d.samples()[0];
        assert_eq!(s.label, 1.0);
        assert_eq!(s.indices, vec![2, 7]);
        assert_eq!(s.values, vec![0.5, -1.25]);
        assert_eq!(d.dim(), 7);
    }

    #[test]
    fn parses_label_only_line() {
        let d = parse("-1\n").unwrap();
        assert_eq!(d.samples()[0].label, -1.0);
        assert!(d.samples()[0].indices.is_empty());
    }

    #[test]
    fn rejects_nonincreasing_indices_with_line_number() {
        let err = parse("1 3:1 2:1\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_zero_index_and_bad_label() {
        assert!(parse("1 0:1\n").is_err());
        assert!(parse("3 1:1\n").is_err());
        assert!(parse("x 1:1\n").is_err());
        assert!(parse("1 1:abc\n").is_err());
    }

    #[test]
    fn remaps_libsvm_binary_label_conventions() {
        let d = parse("0 1:1\n2 2:1\n").unwrap();
        assert_eq!(d.samples()[0].label, -1.0);
        assert_eq!(d.samples()[1].label, 1.0);
    }

    #[test]
    fn skips_blanks_and_comments() {
        let d = parse("# header\n\n+1 1:2.0 # trailing\n").unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.samples()[0].values, vec![2.0]);
    }

    #[test]
    fn round_trip_is_exact() {
        let d = parse("+1 2:0.1 7:-1.25e-3\n-1\n0 3:7\n").unwrap();
        let text = d.to_libsvm();
        let d2 = parse(&text).unwrap();
        assert_eq!(d.samples(), d2.samples());
        assert_eq!(d.dim(), d2.dim());
    }

    #[test]
    fn split_partitions_and_is_deterministic() {
        let text: String = (0..10)
            .map(|i| format!("{} {}:1\n", if i % 2 == 0 { 1 } else { -1 }, i + 1))
            .collect();
        let d = parse(&text).unwrap();
        let (train, test) = split_train_test(&d, 0.2, 7).unwrap();
        assert_eq!(train.len(), 8);
        assert_eq!(test.len(), 2);
        assert_eq!(train.dim(), d.dim());
        let mut all: Vec<_> = train.samples().iter().chain(test.samples()).collect();
        all.sort_by_key(|s| s.indices[0]);
        let mut orig: Vec<_> = d.samples().iter().collect();
        orig.sort_by_key(|s| s.indices[0]);
        assert_eq!(all, orig);

        let (train2, test2) = split_train_test(&d, 0.2, 7).unwrap();
        assert_eq!(train.samples(), train2.samples());
        assert_eq!(test.samples(), test2.samples());
    }

    #[test]
    fn split_sizes_match_mushrooms_table() {
        let samples = vec![
            SparseSample {
                indices: vec![1],
                values: vec![1.0],
                label: 1.0
            };
            6499 + 1625
        ];
        let d = Dataset::new(samples, None, "mushrooms");
        let (train, test) = split_train_test(&d, 0.2, 0).unwrap();
        assert_eq!(test.len(), 1625);
        assert_eq!(train.len(), 6499);
    }

    #[test]
    fn misclassification_tie_rule() {
        let d = parse("+1 1:-1\n").unwrap();
        let x = DVector::from_vec(vec![1.0]);
        assert_eq!(misclassification_error(&x, &d), 1.0);

        // x = 0 predicts +1 everywhere, so the error is the fraction of -1 labels.
        let d = parse("+1 1:1\n-1 1:1\n-1 2:1\n").unwrap();
        let zero = DVector::zeros(2);
        approx::assert_relative_eq!(misclassification_error(&zero, &d), 2.0 / 3.0);
    }

    #[test]
    fn separable_toy_reaches_zero_error() {
        let d = parse("+1 1:1\n-1 2:1\n").unwrap();
        let x = DVector::from_vec(vec![1.0, -1.0]);
        assert_eq!(misclassification_error(&x, &d), 0.0);
    }
}
