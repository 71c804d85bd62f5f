//! Array-based interval heap: a double-ended priority queue with O(log n)
//! push, pop-min and pop-max.
//!
//! Layout: the items of tree node `p` live at indices `2p` (low) and `2p + 1`
//! (high); the last node may hold a single item. Within a node low <= high,
//! and every node's interval is contained in its parent's interval, so the
//! global min sits at index 0 and the global max at index 1.

#[derive(Debug, Clone)]
pub struct IntervalHeap<T> {
    data: Vec<T>,
}

fn low_slot(i: usize) -> usize {
    i & !1
}

fn parent_low(i: usize) -> usize {
    low_slot((i - 2) / 2)
}

impl<T: Ord> IntervalHeap<T> {
    pub fn new() -> Self {
        IntervalHeap { data: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn min(&self) -> Option<&T> {
        self.data.first()
    }

    pub fn max(&self) -> Option<&T> {
        self.data.get(1).or_else(|| self.data.first())
    }

    pub fn push(&mut self, item: T) {
        self.data.push(item);
        let mut hi = self.data.len() - 1;
        let mut lo = low_slot(hi);
        if self.data[lo] > self.data[hi] {
            self.data.swap(lo, hi);
        }
        while lo >= 2 {
            let plo = parent_low(lo);
            let phi = plo + 1;
            if self.data[lo] < self.data[plo] {
                self.data.swap(lo, plo);
            } else if self.data[hi] > self.data[phi] {
                self.data.swap(hi, phi);
            } else {
                return;
            }
            lo = plo;
            hi = phi;
        }
    }

    pub fn pop_min(&mut self) -> Option<T> {
        match self.data.len() {
            0 => None,
            1 | 2 => Some(self.data.swap_remove(0)),
            _ => {
                // the last item is <= the max at index 1, so the root interval
                // stays ordered after the swap
                let res = self.data.swap_remove(0);
                self.sift_down_min();
                Some(res)
            }
        }
    }

    pub fn pop_max(&mut self) -> Option<T> {
        match self.data.len() {
            0 | 1 | 2 => self.data.pop(),
            _ => {
                let res = self.data.swap_remove(1);
                self.sift_down_max();
                Some(res)
            }
        }
    }

    fn sift_down_min(&mut self) {
        let len = self.data.len();
        let mut lo = 0;
        loop {
            let c1 = lo * 2 + 2;
            let c2 = lo * 2 + 4;
            if c1 >= len {
                return;
            }
            let child = if c2 >= len || self.data[c1] < self.data[c2] {
                c1
            } else {
                c2
            };
            if self.data[child] < self.data[lo] {
                self.data.swap(child, lo);
                lo = child;
                let hi = lo + 1;
                if hi < len && self.data[lo] > self.data[hi] {
                    self.data.swap(lo, hi);
                }
            } else {
                return;
            }
        }
    }

    fn sift_down_max(&mut self) {
        let len = self.data.len();
        let mut hi = 1;
        loop {
            let c1 = hi * 2 + 1;
            let c2 = hi * 2 + 3;
            if c1 >= len {
                return;
            }
            let child = if c2 >= len || self.data[c1] > self.data[c2] {
                c1
            } else {
                c2
            };
            if self.data[child] > self.data[hi] {
                self.data.swap(child, hi);
                hi = child;
                if self.data[hi - 1] > self.data[hi] {
                    self.data.swap(hi - 1, hi);
                }
            } else {
                return;
            }
        }
    }

    #[cfg(test)]
    fn is_valid(&self) -> bool {
        let len = self.data.len();
        for lo in (0..len).step_by(2) {
            let hi = lo + 1;
            if hi < len && self.data[lo] > self.data[hi] {
                return false;
            }
            if lo >= 2 {
                let plo = parent_low(lo);
                let phi = plo + 1;
                let last = if hi < len { hi } else { lo };
                if self.data[lo] < self.data[plo] || self.data[last] > self.data[phi] {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_heap() {
        let mut h: IntervalHeap<i32> = IntervalHeap::new();
        assert!(h.is_empty());
        assert_eq!(h.pop_min(), None);
        assert_eq!(h.pop_max(), None);
    }

    #[test]
    fn small_sequences() {
        let mut h = IntervalHeap::new();
        h.push(3);
        assert_eq!((h.min(), h.max()), (Some(&3), Some(&3)));
        h.push(5);
        h.push(1);
        assert_eq!((h.min(), h.max()), (Some(&1), Some(&5)));
        assert_eq!(h.pop_max(), Some(5));
        assert_eq!(h.pop_min(), Some(1));
        assert_eq!(h.pop_min(), Some(3));
        assert!(h.is_empty());
    }

    #[test]
    fn drains_sorted_both_ends() {
        let mut h = IntervalHeap::new();
        for x in [9, 2, 7, 2, 11, 0, 4, 4, 8] {
            h.push(x);
            assert!(h.is_valid());
        }
        let mut front = Vec::new();
        let mut back = Vec::new();
        loop {
            match h.pop_min() {
                Some(x) => front.push(x),
                None => break,
            }
            assert!(h.is_valid());
            if let Some(x) = h.pop_max() {
                back.push(x);
            }
            assert!(h.is_valid());
        }
        assert_eq!(front, vec![0, 2, 2, 4, 4]);
        assert_eq!(back, vec![11, 9, 8, 7]);
    }

    proptest! {
        // Interleaved operations behave like a sorted-list reference model.
        #[test]
        fn matches_sorted_list_model(ops in proptest::collection::vec((0u8..3, -50i32..50), 0..300)) {
            let mut heap = IntervalHeap::new();
            let mut model: Vec<i32> = Vec::new();
            for (op, val) in ops {
                match op {
                    0 => {
                        heap.push(val);
                        let pos = model.partition_point(|&x| x <= val);
                        model.insert(pos, val);
                    }
                    1 => {
                        let got = heap.pop_min();
                        let want = if model.is_empty() { None } else { Some(model.remove(0)) };
                        prop_assert_eq!(got, want);
                    }
                    _ => {
                        let got = heap.pop_max();
                        let want = model.pop();
                        prop_assert_eq!(got, want);
                    }
                }
                prop_assert!(heap.is_valid());
                prop_assert_eq!(heap.len(), model.len());
                prop_assert_eq!(heap.min(), model.first());
                prop_assert_eq!(heap.max(), model.last());
            }
        }
    }
}
