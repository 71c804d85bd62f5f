//! Epoch-stamped scratch arrays over node ids. Clearing bumps a generation
//! counter instead of touching every slot, so per-query scratch can be reused
//! across many tree computations without O(n) resets.

use crate::graph::NodeId;

#[derive(Debug, Clone)]
pub struct NodeMarks {
    stamp: Vec<u32>,
    epoch: u32,
}

impl NodeMarks {
    pub fn new(node_count: usize) -> Self {
        NodeMarks {
            stamp: vec![0; node_count],
            epoch: 1,
        }
    }

    pub fn clear(&mut self) {
        self.epoch += 1;
        if self.epoch == u32::MAX {
            self.stamp.fill(0);
            self.epoch = 1;
        }
    }

    pub fn mark(&mut self, v: NodeId) {
        self.stamp[v as usize] = self.epoch;
    }

    pub fn is_marked(&self, v: NodeId) -> bool {
        self.stamp[v as usize] == self.epoch
    }
}

/// Epoch-stamped partial map from node id to a `u32` value.
#[derive(Debug, Clone)]
pub struct NodeMap {
    stamp: Vec<u32>,
    value: Vec<u32>,
    epoch: u32,
}

impl NodeMap {
    pub fn new(node_count: usize) -> Self {
        NodeMap {
            stamp: vec![0; node_count],
            value: vec![0; node_count],
            epoch: 1,
        }
    }

    pub fn clear(&mut self) {
        self.epoch += 1;
        if self.epoch == u32::MAX {
            self.stamp.fill(0);
            self.epoch = 1;
        }
    }

    pub fn set(&mut self, v: NodeId, value: u32) {
        self.stamp[v as usize] = self.epoch;
        self.value[v as usize] = value;
    }

    pub fn get(&self, v: NodeId) -> Option<u32> {
        (self.stamp[v as usize] == self.epoch).then(|| self.value[v as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn marks_reset_on_clear() {
        let mut marks = NodeMarks::new(4);
        marks.mark(2);
        assert!(marks.is_marked(2));
        assert!(!marks.is_marked(1));
        marks.clear();
        assert!(!marks.is_marked(2));
    }

    #[test]
    fn map_values_reset_on_clear() {
        let mut map = NodeMap::new(4);
        map.set(1, 10);
        assert_eq!(map.get(1), Some(10));
        assert_eq!(map.get(0), None);
        map.clear();
        assert_eq!(map.get(1), None);
        map.set(1, 11);
        assert_eq!(map.get(1), Some(11));
    }
}
