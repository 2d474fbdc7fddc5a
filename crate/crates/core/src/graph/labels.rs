use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

/// Class memberships of the nodes of a graph; each node is in at most one
/// of `m` classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelAssignment {
    classes: usize,
    labels: Vec<Option<usize>>,
}

impl LabelAssignment {
    pub fn new(labels: Vec<Option<usize>>, classes: usize) -> Result<Self> {
        if classes == 0 {
            return Err(Error::invalid("at least one class is required"));
        }
        if let Some((node, c)) = labels
            .iter()
            .enumerate()
            .find_map(|(i, l)| l.filter(|&c| c >= classes).map(|c| (i, c)))
        {
            return Err(Error::invalid(format!(
                "node {node} has class {c}, but only {classes} classes exist"
            )));
        }
        Ok(Self { classes, labels })
    }

    /// Every node labeled.
    pub fn complete(labels: Vec<usize>, classes: usize) -> Result<Self> {
        Self::new(labels.into_iter().map(Some).collect(), classes)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    pub fn class_of(&self, node: usize) -> Option<usize> {
        self.labels[node]
    }

    pub fn labels(&self) -> &[Option<usize>] {
        &self.labels
    }

    pub fn labeled_nodes(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.labels[i].is_some()).collect()
    }

    pub fn unlabeled_nodes(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.labels[i].is_none()).collect()
    }

    pub fn members(&self, class: usize) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.labels[i] == Some(class)).collect()
    }

    pub fn seed_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.classes];
        for c in self.labels.iter().flatten() {
            counts[*c] += 1;
        }
        counts
    }

    /// Boolean membership mask of one class.
    pub fn mask(&self, class: usize) -> Vec<bool> {
        self.labels.iter().map(|l| *l == Some(class)).collect()
    }

    /// Binary indicator column `y^c`.
    pub fn indicator(&self, class: usize) -> DVector<f64> {
        DVector::from_iterator(
            self.n(),
            self.labels.iter().map(|l| if *l == Some(class) { 1.0 } else { 0.0 }),
        )
    }

    /// The `n x m` indicator matrix `Y`.
    pub fn indicator_matrix(&self) -> DMatrix<f64> {
        let mut y = DMatrix::zeros(self.n(), self.classes);
        for (i, l) in self.labels.iter().enumerate() {
            if let Some(c) = l {
                y[(i, *c)] = 1.0;
            }
        }
        y
    }

    /// Fails with a degenerate-class error naming the first class with fewer
    /// than `min` labeled nodes.
    pub fn require_min_seeds(&self, min: usize) -> Result<()> {
        for (class, &count) in self.seed_counts().iter().enumerate() {
            if count < min {
                return Err(Error::DegenerateClass {
                    class: Some(class),
                    reason: format!("{count} labeled node(s), at least {min} required"),
                });
            }
        }
        Ok(())
    }

    /// Keeps the labels of `nodes` only; every other node becomes unlabeled.
    pub fn restricted_to(&self, nodes: &[usize]) -> LabelAssignment {
        let mut labels = vec![None; self.n()];
        for &i in nodes {
            labels[i] = self.labels[i];
        }
        LabelAssignment {
            classes: self.classes,
            labels,
        }
    }

    /// Same assignment with node `i` moved to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<LabelAssignment> {
        super::check_permutation(perm, self.n())?;
        let mut labels = vec![None; self.n()];
        for (i, l) in self.labels.iter().enumerate() {
            labels[perm[i]] = *l;
        }
        Ok(LabelAssignment {
            classes: self.classes,
            labels,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_columns() {
        let y = LabelAssignment::new(vec![Some(0), None, Some(1), Some(0)], 2).unwrap();
        assert_eq!(y.indicator(0).as_slice(), &[1.0, 0.0, 0.0, 1.0]);
        assert_eq!(y.indicator_matrix().row(1).sum(), 0.0);
        assert_eq!(y.seed_counts(), vec![2, 1]);
        assert_eq!(y.unlabeled_nodes(), vec![1]);
        let err = y.require_min_seeds(2).unwrap_err();
        assert!(matches!(err, Error::DegenerateClass { class: Some(1), .. }));
    }

    #[test]
    fn out_of_range_class() {
        assert!(LabelAssignment::new(vec![Some(2)], 2).is_err());
        assert!(LabelAssignment::new(vec![], 0).is_err());
    }
}
