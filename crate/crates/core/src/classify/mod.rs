//! Semi-supervised node classifiers.
//!
//! Every method turns a partial [`LabelAssignment`] into an `n x m` score
//! matrix and assigns each node the class with the largest score (lowest
//! class index on ties). Labeled nodes keep their given class in the
//! reported labels; their raw scores are still returned.

mod bop;
mod dwalk;
mod harmonic;
mod kernel;
mod rwwr;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::bop::BopModel;
use crate::graph::{Graph, LabelAssignment};
use crate::linalg::Factorized;
use crate::{Error, Result};

pub use self::bop::bop_classify;
pub use self::dwalk::dwalk_classify;
pub use self::harmonic::harmonic_classify;
pub use self::kernel::{kernel_classify, KernelMethod};
pub use self::rwwr::rwwr_classify;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Bop,
    Rl,
    Rnl,
    Rct,
    Hf,
    Rwwr,
    Dw1,
    Dw2,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Rl,
        Method::Rnl,
        Method::Rct,
        Method::Hf,
        Method::Rwwr,
        Method::Dw1,
        Method::Dw2,
        Method::Bop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Bop => "BOP",
            Method::Rl => "RL",
            Method::Rnl => "RNL",
            Method::Rct => "RCT",
            Method::Hf => "HF",
            Method::Rwwr => "RWWR",
            Method::Dw1 => "DW1",
            Method::Dw2 => "DW2",
        }
    }

    pub fn takes_parameter(self) -> bool {
        !matches!(self, Method::Hf | Method::Dw1)
    }

    /// Name of the hyperparameter, if any.
    pub fn parameter_name(self) -> Option<&'static str> {
        match self {
            Method::Bop => Some("theta"),
            Method::Rl | Method::Rnl => Some("lambda"),
            Method::Rct | Method::Rwwr | Method::Dw2 => Some("alpha"),
            Method::Hf | Method::Dw1 => None,
        }
    }

    /// The tuning grid used by default. Empty for parameterless methods.
    pub fn default_grid(self) -> Vec<f64> {
        let decades = |lo: i32, hi: i32| -> Vec<f64> {
            (lo..=hi).map(|k| format!("1e{k}").parse().unwrap()).collect()
        };
        match self {
            Method::Bop => decades(-6, 2),
            Method::Rl | Method::Rnl => decades(-6, 6),
            Method::Rct | Method::Rwwr | Method::Dw2 => {
                (1..=10).map(|k| k as f64 / 10.0).collect()
            }
            Method::Hf | Method::Dw1 => Vec::new(),
        }
    }

    fn check_parameter(self, value: f64) -> Result<()> {
        let ok = match self {
            Method::Bop | Method::Rl | Method::Rnl => value > 0.0 && value.is_finite(),
            Method::Rct | Method::Dw2 => value > 0.0 && value <= 1.0,
            Method::Rwwr => value > 0.0 && value < 1.0,
            Method::Hf | Method::Dw1 => true,
        };
        if ok {
            return Ok(());
        }
        let domain = match self {
            Method::Bop | Method::Rl | Method::Rnl => "positive",
            Method::Rct | Method::Dw2 => "in (0, 1]",
            _ => "in (0, 1)",
        };
        let name = self.parameter_name().unwrap_or("parameter");
        Err(Error::invalid(format!(
            "{name} for {self} must be {domain}, got {value}"
        )))
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl serde::Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Method> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                let names: Vec<_> = Method::ALL.iter().map(|m| m.name()).collect();
                Error::invalid(format!("unknown method `{s}` (expected one of {})", names.join(", ")))
            })
    }
}

/// A method together with its hyperparameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifierSpec {
    method: Method,
    parameter: Option<f64>,
}

impl ClassifierSpec {
    pub fn new(method: Method, parameter: Option<f64>) -> Result<ClassifierSpec> {
        match (method.takes_parameter(), parameter) {
            (false, Some(_)) => {
                return Err(Error::invalid(format!("{method} takes no parameter")));
            }
            (true, None) => {
                return Err(Error::invalid(format!(
                    "{method} requires a parameter ({})",
                    method.parameter_name().unwrap()
                )));
            }
            (true, Some(v)) => method.check_parameter(v)?,
            (false, None) => {}
        }
        Ok(ClassifierSpec { method, parameter })
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn parameter(&self) -> Option<f64> {
        self.parameter
    }
}

impl fmt::Display for ClassifierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter {
            Some(v) => write!(f, "{}({}={v})", self.method, self.method.parameter_name().unwrap()),
            None => write!(f, "{}", self.method),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    /// One class per node.
    pub labels: Vec<usize>,
    /// `n x m`, a single one per row, at `labels[i]`.
    pub memberships: DMatrix<f64>,
    /// Raw per-class scores, `n x m`.
    pub scores: DMatrix<f64>,
}

impl Prediction {
    /// Row-wise argmax of `scores`, lowest class on ties, then overridden by
    /// the given labels on labeled nodes.
    pub fn from_scores(scores: DMatrix<f64>, known: &LabelAssignment) -> Prediction {
        let (n, m) = scores.shape();
        assert_eq!(n, known.n());
        assert_eq!(m, known.num_classes());
        let labels: Vec<usize> = (0..n)
            .map(|i| {
                known.class_of(i).unwrap_or_else(|| {
                    let mut best = 0;
                    for c in 1..m {
                        if scores[(i, c)] > scores[(i, best)] {
                            best = c;
                        }
                    }
                    best
                })
            })
            .collect();
        let memberships = DMatrix::from_fn(n, m, |i, c| if labels[i] == c { 1.0 } else { 0.0 });
        Prediction {
            labels,
            memberships,
            scores,
        }
    }

    /// Fraction of `nodes` whose predicted label equals `truth`. `None` for an
    /// empty node set.
    pub fn accuracy(&self, truth: &LabelAssignment, nodes: &[usize]) -> Option<f64> {
        if nodes.is_empty() {
            return None;
        }
        let hits = nodes
            .iter()
            .filter(|&&i| truth.class_of(i) == Some(self.labels[i]))
            .count();
        Some(hits as f64 / nodes.len() as f64)
    }
}

fn check_labels(n: usize, labels: &LabelAssignment, method: Method) -> Result<()> {
    if labels.n() != n {
        return Err(Error::invalid(format!(
            "label assignment covers {} nodes, graph has {n}",
            labels.n()
        )));
    }
    // Within-class betweenness needs two distinct endpoints per class.
    let min_seeds = if method == Method::Bop { 2 } else { 1 };
    labels.require_min_seeds(min_seeds)
}

/// The label-independent part of a classifier on one graph: the bag-of-paths
/// model, a factorized kernel system, or the transition matrix. Reused across
/// label sets, as in cross-validation.
pub struct Prepared {
    spec: ClassifierSpec,
    n: usize,
    inner: Inner,
}

enum Inner {
    Bop(BopModel),
    Kernel(Factorized),
    Rwwr(Factorized),
    Transitions(DMatrix<f64>),
}

impl Prepared {
    pub fn new(graph: &Graph, spec: &ClassifierSpec) -> Result<Prepared> {
        let p = spec.parameter.unwrap_or(1.0);
        let inner = match spec.method {
            Method::Bop => Inner::Bop(BopModel::build(graph, p)?),
            Method::Rl => Inner::Kernel(kernel::factorize(graph, KernelMethod::Rl, p)?),
            Method::Rnl => Inner::Kernel(kernel::factorize(graph, KernelMethod::Rnl, p)?),
            Method::Rct => Inner::Kernel(kernel::factorize(graph, KernelMethod::Rct, p)?),
            Method::Rwwr => Inner::Rwwr(rwwr::factorize(graph, p)?),
            Method::Hf | Method::Dw1 | Method::Dw2 => {
                Inner::Transitions(crate::graph::reference_transitions(graph).into_matrix())
            }
        };
        Ok(Prepared {
            spec: *spec,
            n: graph.n(),
            inner,
        })
    }

    pub fn spec(&self) -> &ClassifierSpec {
        &self.spec
    }

    pub fn classify(&self, labels: &LabelAssignment) -> Result<Prediction> {
        check_labels(self.n, labels, self.spec.method)?;
        let scores = match &self.inner {
            Inner::Bop(model) => bop::scores(model, labels)?,
            Inner::Kernel(lu) => kernel::scores(lu, labels)?,
            Inner::Rwwr(lu) => rwwr::scores(lu, self.spec.parameter.unwrap(), labels)?,
            Inner::Transitions(p) => match self.spec.method {
                Method::Hf => harmonic::scores(p, labels)?,
                Method::Dw1 => dwalk::scores(p, 1.0, labels)?,
                _ => dwalk::scores(p, self.spec.parameter.unwrap(), labels)?,
            },
        };
        Ok(Prediction::from_scores(scores, labels))
    }
}

/// Classifies the unlabeled nodes of `graph` with the given method.
pub fn classify(graph: &Graph, labels: &LabelAssignment, spec: &ClassifierSpec) -> Result<Prediction> {
    check_labels(graph.n(), labels, spec.method)?;
    Prepared::new(graph, spec)?.classify(labels)
}
