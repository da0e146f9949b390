use super::ModelError;

/// An equivalence relation on `0..n`, stored as the least member of each
/// element's class. Any value of this type is an equivalence relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    rep: Vec<u32>,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition { rep: (0..n as u32).collect() }
    }

    pub fn single_block(n: usize) -> Self {
        Partition { rep: vec![0; n] }
    }

    /// Builds a partition from blocks that must cover `0..n` disjointly.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self, ModelError> {
        let mut rep = vec![u32::MAX; n];
        for block in blocks {
            let Some(&least) = block.iter().min() else {
                return Err(ModelError::BadPartition("empty block".into()));
            };
            for &d in block {
                if d >= n {
                    return Err(ModelError::BadPartition(format!("element {d} out of range")));
                }
                if rep[d] != u32::MAX {
                    return Err(ModelError::BadPartition(format!("element {d} in two blocks")));
                }
                rep[d] = least as u32;
            }
        }
        if let Some(d) = rep.iter().position(|&r| r == u32::MAX) {
            return Err(ModelError::BadPartition(format!("element {d} in no block")));
        }
        Ok(Partition { rep })
    }

    /// From a restricted-growth labelling: `labels[0] = 0` and each label is
    /// at most one more than the largest before it.
    pub(crate) fn from_labels(labels: &[usize]) -> Self {
        let mut first = Vec::new();
        let rep = labels
            .iter()
            .enumerate()
            .map(|(d, &l)| {
                if l == first.len() {
                    first.push(d as u32);
                }
                first[l]
            })
            .collect();
        Partition { rep }
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn rep(&self, d: usize) -> usize {
        self.rep[d] as usize
    }

    pub fn related(&self, d: usize, e: usize) -> bool {
        self.rep[d] == self.rep[e]
    }

    pub fn is_discrete(&self) -> bool {
        self.rep.iter().enumerate().all(|(d, &r)| r as usize == d)
    }

    /// Class representatives in increasing order.
    pub fn representatives(&self) -> Vec<usize> {
        (0..self.rep.len()).filter(|&d| self.rep(d) == d).collect()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.representatives()
            .into_iter()
            .map(|r| (0..self.rep.len()).filter(|&d| self.rep(d) == r).collect())
            .collect()
    }

    /// Index of `d`'s class among [`Self::representatives`].
    pub fn class_index(&self) -> Vec<usize> {
        let mut index = vec![0; self.rep.len()];
        let mut next = 0;
        for d in 0..self.rep.len() {
            if self.rep(d) == d {
                index[d] = next;
                next += 1;
            } else {
                index[d] = index[self.rep(d)];
            }
        }
        index
    }
}

/// Every partition of `0..n`, in lexicographic order of restricted-growth labels.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn go(labels: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Partition>) {
        if labels.len() == n {
            out.push(Partition::from_labels(labels));
            return;
        }
        let limit = if labels.is_empty() { 0 } else { max + 1 };
        for l in 0..=limit {
            labels.push(l);
            go(labels, max.max(l), n, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 0, n, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=5).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52]);
        assert!(all_partitions(3)[0].single_block_like());
    }

    impl Partition {
        fn single_block_like(&self) -> bool {
            self.rep.iter().all(|&r| r == 0)
        }
    }

    #[test]
    fn blocks_normalise() {
        let p = Partition::from_blocks(4, &[vec![3, 1], vec![0], vec![2]]).unwrap();
        assert_eq!(p.rep(3), 1);
        assert_eq!(p.blocks(), vec![vec![0], vec![1, 3], vec![2]]);
        assert_eq!(p.class_index(), vec![0, 1, 2, 1]);
        assert!(Partition::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0, 1]]).is_err());
    }
}
