use std::fmt;

use crate::error::Result;
use crate::prob::InfoCache;

/// A conditional mutual-information expression I(a; b | given).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mi {
    pub a: Vec<&'static str>,
    pub b: Vec<&'static str>,
    pub given: Vec<&'static str>,
}

impl Mi {
    pub fn new(a: &[&'static str], b: &[&'static str], given: &[&'static str]) -> Self {
        Self {
            a: a.to_vec(),
            b: b.to_vec(),
            given: given.to_vec(),
        }
    }

    pub fn eval(&self, cache: &InfoCache<'_>) -> Result<f64> {
        cache.cmi(&self.a, &self.b, &self.given)
    }
}

impl fmt::Display for Mi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({};{}", self.a.join(","), self.b.join(","))?;
        if !self.given.is_empty() {
            write!(f, "|{}", self.given.join(","))?;
        }
        write!(f, ")")
    }
}

/// An evaluated information term.
#[derive(Debug, Clone, PartialEq)]
pub struct TermValue {
    pub term: Mi,
    pub value: f64,
}

/// Right-hand side built as a sum of information terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Bound {
    pub terms: Vec<TermValue>,
}

impl Bound {
    pub fn eval(cache: &InfoCache<'_>, terms: &[&Mi]) -> Result<Self> {
        Ok(Self {
            terms: terms
                .iter()
                .map(|t| {
                    Ok(TermValue {
                        term: (*t).clone(),
                        value: t.eval(cache)?,
                    })
                })
                .collect::<Result<_>>()?,
        })
    }

    pub fn value(&self) -> f64 {
        self.terms.iter().map(|t| t.value).sum()
    }

    pub fn describe(&self) -> String {
        self.terms
            .iter()
            .map(|t| t.term.to_string())
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Formats a row label such as `R0+R2 <= I(..) + I(..)`.
pub fn row_label(lhs: &str, bound: &Bound) -> String {
    format!("{lhs} <= {}", bound.describe())
}
