//! Dense joint distributions over labelled finite-alphabet variables and the
//! exact information measures built on them.
//!
//! Tensors are stored row-major with the first declared variable most
//! significant. All information quantities are reported in bits.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};

/// Tolerance on the total mass of a user-supplied distribution.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Tolerance used when checking information identities.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Slightly negative information values within this margin are clamped to 0.
pub const CLAMP_TOL: f64 = 1e-10;
/// Default cap on the number of joint states.
pub const DEFAULT_STATE_CAP: usize = 1 << 20;

/// A probability tensor over an ordered list of labelled variables.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPmf {
    variables: Vec<String>,
    sizes: Vec<usize>,
    probs: Vec<f64>,
}

fn state_count(sizes: &[usize]) -> Result<usize> {
    let mut n: u128 = 1;
    for &s in sizes {
        n = n.saturating_mul(s as u128);
    }
    if n > DEFAULT_STATE_CAP as u128 {
        return Err(Error::StateSpaceTooLarge {
            states: n,
            cap: DEFAULT_STATE_CAP,
        });
    }
    Ok(n as usize)
}

fn check_labels<S: AsRef<str>>(labels: &[S]) -> Result<()> {
    for (i, a) in labels.iter().enumerate() {
        if labels[..i].iter().any(|b| b.as_ref() == a.as_ref()) {
            return Err(Error::DuplicateVariable(a.as_ref().to_string()));
        }
    }
    Ok(())
}

/// Checks that `kernel` is a stack of probability rows of length `width`.
pub(crate) fn check_rows(kernel: &[f64], width: usize, what: &str) -> Result<()> {
    if width == 0 || kernel.len() % width != 0 {
        return Err(Error::InvalidPmf(format!(
            "{what}: length {} is not a multiple of row width {width}",
            kernel.len()
        )));
    }
    for (r, row) in kernel.chunks(width).enumerate() {
        if let Some(p) = row.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
            return Err(Error::InvalidPmf(format!("{what}: row {r} has entry {p}")));
        }
        let s: f64 = row.iter().sum();
        if (s - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidPmf(format!("{what}: row {r} sums to {s}")));
        }
    }
    Ok(())
}

fn entropy_of(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

fn clamp_info(v: f64) -> f64 {
    debug_assert!(v >= -1e-6, "information quantity {v} is negative");
    if v < 0.0 {
        0.0
    } else {
        v
    }
}

impl JointPmf {
    /// Builds a validated pmf.
    pub fn new<S: Into<String>>(variables: Vec<S>, sizes: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        if variables.len() != sizes.len() {
            return Err(Error::DimensionMismatch {
                expected: variables.len(),
                got: sizes.len(),
            });
        }
        if variables.len() > 64 {
            return Err(Error::InvalidPmf("at most 64 variables are supported".into()));
        }
        check_labels(&variables)?;
        if let Some(i) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidPmf(format!(
                "variable `{}` has an empty alphabet",
                variables[i]
            )));
        }
        let n = state_count(&sizes)?;
        if probs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: probs.len(),
            });
        }
        check_rows(&probs, n, "joint pmf")?;
        Ok(Self {
            variables,
            sizes,
            probs,
        })
    }

    /// The distribution over no variables (a single state of mass one).
    pub fn trivial() -> Self {
        Self {
            variables: Vec::new(),
            sizes: Vec::new(),
            probs: vec![1.0],
        }
    }

    pub fn uniform<S: Into<String>>(variables: Vec<S>, sizes: Vec<usize>) -> Result<Self> {
        let n = state_count(&sizes)?;
        let probs = vec![1.0 / n as f64; n];
        Self::new(variables, sizes, probs)
    }

    /// Point mass at the given row-major state index.
    pub fn point_mass<S: Into<String>>(variables: Vec<S>, sizes: Vec<usize>, index: usize) -> Result<Self> {
        let n = state_count(&sizes)?;
        if index >= n {
            return Err(Error::InvalidPmf(format!("state {index} out of range {n}")));
        }
        let mut probs = vec![0.0; n];
        probs[index] = 1.0;
        Self::new(variables, sizes, probs)
    }

    /// Product of independent components, variables concatenated in order.
    pub fn product(&self, other: &JointPmf) -> Result<Self> {
        let mut variables = self.variables.clone();
        variables.extend(other.variables.iter().cloned());
        check_labels(&variables)?;
        let mut sizes = self.sizes.clone();
        sizes.extend(other.sizes.iter().copied());
        state_count(&sizes)?;
        let probs = self
            .probs
            .iter()
            .flat_map(|&p| other.probs.iter().map(move |&q| p * q))
            .collect();
        Ok(Self {
            variables,
            sizes,
            probs,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.variables
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownVariable(label.to_string()))
    }

    pub fn size_of(&self, label: &str) -> Result<usize> {
        Ok(self.sizes[self.index_of(label)?])
    }

    pub fn contains_variable(&self, label: &str) -> bool {
        self.variables.iter().any(|v| v == label)
    }

    fn mask_of(&self, labels: &[&str]) -> Result<u64> {
        let mut m = 0u64;
        for l in labels {
            m |= 1 << self.index_of(l)?;
        }
        Ok(m)
    }

    /// Appends new variables drawn from a conditional law given `parents`.
    ///
    /// `kernel` is row-major over `(parents..., new...)`: one probability row
    /// over the new variables' product alphabet per parent configuration.
    pub fn extend(&self, new: &[(&str, usize)], parents: &[&str], kernel: &[f64]) -> Result<Self> {
        let mut variables = self.variables.clone();
        variables.extend(new.iter().map(|(l, _)| l.to_string()));
        check_labels(&variables)?;
        if variables.len() > 64 {
            return Err(Error::InvalidPmf("at most 64 variables are supported".into()));
        }
        let width: usize = new.iter().map(|(_, s)| *s).product();
        check_labels(parents)?;
        let parent_idx: Vec<usize> = parents.iter().map(|p| self.index_of(p)).collect::<Result<_>>()?;
        let rows: usize = parent_idx.iter().map(|&i| self.sizes[i]).product();
        if kernel.len() != rows * width {
            return Err(Error::DimensionMismatch {
                expected: rows * width,
                got: kernel.len(),
            });
        }
        check_rows(kernel, width, "conditional kernel")?;
        let mut sizes = self.sizes.clone();
        sizes.extend(new.iter().map(|(_, s)| *s));
        state_count(&sizes)?;

        // stride of each own variable inside the parent row index
        let n = self.sizes.len();
        let mut pstride = vec![0usize; n];
        let mut acc = 1;
        for &i in parent_idx.iter().rev() {
            pstride[i] += acc;
            acc *= self.sizes[i];
        }
        let mut probs = Vec::with_capacity(self.probs.len() * width);
        let mut digits = vec![0usize; n];
        let mut row = 0usize;
        for &p in &self.probs {
            let k = &kernel[row * width..(row + 1) * width];
            probs.extend(k.iter().map(|&q| p * q));
            advance(&mut digits, &self.sizes, &pstride, &mut row);
        }
        Ok(Self {
            variables,
            sizes,
            probs,
        })
    }

    /// Appends a variable that is a deterministic function of `parents`.
    /// `map` is indexed by the row-major parent configuration.
    pub fn extend_deterministic(&self, new: (&str, usize), parents: &[&str], map: &[usize]) -> Result<Self> {
        let (_, size) = new;
        let mut kernel = vec![0.0; map.len() * size];
        for (r, &v) in map.iter().enumerate() {
            if v >= size {
                return Err(Error::InvalidInput(format!(
                    "deterministic map value {v} outside alphabet of size {size}"
                )));
            }
            kernel[r * size + v] = 1.0;
        }
        self.extend(&[new], parents, &kernel)
    }

    fn marginal_by_mask(&self, mask: u64) -> Vec<f64> {
        let n = self.sizes.len();
        let mut stride = vec![0usize; n];
        let mut acc = 1;
        for i in (0..n).rev() {
            if mask >> i & 1 == 1 {
                stride[i] = acc;
                acc *= self.sizes[i];
            }
        }
        if acc == 1 {
            return vec![self.probs.iter().sum()];
        }
        let mut out = vec![0.0; acc];
        let mut digits = vec![0usize; n];
        let mut m = 0usize;
        for &p in &self.probs {
            out[m] += p;
            advance(&mut digits, &self.sizes, &stride, &mut m);
        }
        out
    }

    fn entropy_by_mask(&self, mask: u64) -> f64 {
        if mask == 0 {
            return 0.0;
        }
        entropy_of(&self.marginal_by_mask(mask))
    }

    /// Sums out every variable not in `keep`. Kept variables retain joint order.
    pub fn marginalize(&self, keep: &[&str]) -> Result<JointPmf> {
        if keep.is_empty() {
            return Err(Error::EmptySet("keep"));
        }
        check_labels(keep)?;
        let mask = self.mask_of(keep)?;
        let probs = self.marginal_by_mask(mask);
        let (variables, sizes) = self
            .variables
            .iter()
            .zip(&self.sizes)
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, (v, s))| (v.clone(), *s))
            .unzip();
        Ok(JointPmf {
            variables,
            sizes,
            probs,
        })
    }

    /// Conditional entropy H(vars | given) in bits.
    pub fn entropy(&self, vars: &[&str], given: &[&str]) -> Result<f64> {
        if vars.is_empty() {
            return Err(Error::EmptySet("vars"));
        }
        disjoint(vars, given)?;
        let a = self.mask_of(vars)?;
        let c = self.mask_of(given)?;
        Ok(clamp_info(self.entropy_by_mask(a | c) - self.entropy_by_mask(c)))
    }

    /// Conditional mutual information I(a; b | c) in bits.
    pub fn cond_mutual_information(&self, a: &[&str], b: &[&str], c: &[&str]) -> Result<f64> {
        InfoCache::new(self).cmi(a, b, c)
    }
}

/// Advances a row-major odometer and keeps a linear projection index in step.
#[inline]
fn advance(digits: &mut [usize], sizes: &[usize], stride: &[usize], index: &mut usize) {
    let mut i = digits.len();
    while i > 0 {
        i -= 1;
        digits[i] += 1;
        if digits[i] < sizes[i] {
            *index += stride[i];
            return;
        }
        *index -= stride[i] * (sizes[i] - 1);
        digits[i] = 0;
    }
}

fn disjoint(a: &[&str], b: &[&str]) -> Result<()> {
    check_labels(a)?;
    check_labels(b)?;
    match a.iter().find(|x| b.contains(x)) {
        Some(x) => Err(Error::OverlappingSets(x.to_string())),
        None => Ok(()),
    }
}

/// Memoizes subset entropies of one joint so that many information terms
/// over the same distribution share marginalization work.
pub struct InfoCache<'a> {
    joint: &'a JointPmf,
    entropies: RefCell<HashMap<u64, f64>>,
}

impl<'a> InfoCache<'a> {
    pub fn new(joint: &'a JointPmf) -> Self {
        Self {
            joint,
            entropies: RefCell::new(HashMap::new()),
        }
    }

    pub fn joint(&self) -> &JointPmf {
        self.joint
    }

    fn h(&self, mask: u64) -> f64 {
        if let Some(&v) = self.entropies.borrow().get(&mask) {
            return v;
        }
        let v = self.joint.entropy_by_mask(mask);
        self.entropies.borrow_mut().insert(mask, v);
        v
    }

    pub fn cmi(&self, a: &[&str], b: &[&str], c: &[&str]) -> Result<f64> {
        if a.is_empty() {
            return Err(Error::EmptySet("first argument"));
        }
        if b.is_empty() {
            return Err(Error::EmptySet("second argument"));
        }
        disjoint(a, b)?;
        disjoint(a, c)?;
        disjoint(b, c)?;
        let a = self.joint.mask_of(a)?;
        let b = self.joint.mask_of(b)?;
        let c = self.joint.mask_of(c)?;
        let v = self.h(a | c) + self.h(b | c) - self.h(a | b | c) - self.h(c);
        Ok(clamp_info(v))
    }
}
