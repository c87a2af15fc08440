use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::word::SubsetWord;

/// Hard cap on frame width: 64 machine words of bitset.
pub const MAX_WIDTH: usize = 4096;

/// An ordered frame of discernment: the universe the set functions live on.
///
/// Labels are assigned bit indices in the order given at construction, so a
/// frame doubles as the codec between human-readable label sets and
/// [`SubsetWord`] bit vectors.
#[derive(Debug, Clone)]
pub struct FrameOfDiscernment {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl FrameOfDiscernment {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > MAX_WIDTH {
            return Err(Error::FrameTooLarge { got: labels.len(), max: MAX_WIDTH });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(FrameOfDiscernment { labels, index })
    }

    /// Number of labels (the bit width of every subset over this frame).
    pub fn width(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.labels[idx]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    pub fn empty_set(&self) -> SubsetWord {
        SubsetWord::empty(self.width())
    }

    pub fn full_set(&self) -> SubsetWord {
        SubsetWord::full(self.width())
    }

    /// Encodes a collection of labels as a subset.
    pub fn subset<I, S>(&self, labels: I) -> Result<SubsetWord>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut out = self.empty_set();
        for label in labels {
            out.insert(self.index_of(label.as_ref())?);
        }
        Ok(out)
    }

    /// Renders a subset with this frame's labels, e.g. `{a, c}`.
    pub fn render(&self, set: &SubsetWord) -> String {
        assert_eq!(set.width(), self.width(), "set from a different frame");
        let mut out = String::from("{");
        for (k, i) in set.indices().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            out.push_str(&self.labels[i]);
        }
        out.push('}');
        out
    }

    /// Decodes a subset back into its labels.
    pub fn labels_of(&self, set: &SubsetWord) -> Vec<String> {
        set.indices().map(|i| self.labels[i].clone()).collect()
    }
}

impl PartialEq for FrameOfDiscernment {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for FrameOfDiscernment {}

impl fmt::Display for FrameOfDiscernment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&self.full_set()))
    }
}
