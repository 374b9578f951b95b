use crate::netcore::ArcId;

const ABSENT: usize = usize::MAX;

/// Addressable binary min-heap of arcs keyed by flow limit.
#[derive(Debug, Clone)]
pub struct FlowLimitQueue {
    heap: Vec<(f64, ArcId)>,
    /// Heap position per arc, `ABSENT` when the arc is not queued.
    pos: Vec<usize>,
}

impl FlowLimitQueue {
    pub fn new(num_arcs: usize) -> Self {
        FlowLimitQueue { heap: Vec::new(), pos: vec![ABSENT; num_arcs] }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn contains(&self, a: ArcId) -> bool {
        self.pos[a] != ABSENT
    }

    pub fn key(&self, a: ArcId) -> Option<f64> {
        self.contains(a).then(|| self.heap[self.pos[a]].0)
    }

    pub fn peek(&self) -> Option<(f64, ArcId)> {
        self.heap.first().copied()
    }

    /// Inserts `a` or changes its key.
    pub fn set(&mut self, a: ArcId, key: f64) {
        let i = self.pos[a];
        if i == ABSENT {
            self.heap.push((key, a));
            let last = self.heap.len() - 1;
            self.pos[a] = last;
            self.sift_up(last);
        } else {
            let old = self.heap[i].0;
            self.heap[i].0 = key;
            if key < old {
                self.sift_up(i);
            } else {
                self.sift_down(i);
            }
        }
    }

    pub fn remove(&mut self, a: ArcId) {
        let i = self.pos[a];
        if i == ABSENT {
            return;
        }
        let last = self.heap.len() - 1;
        self.swap(i, last);
        self.heap.pop();
        self.pos[a] = ABSENT;
        if i < self.heap.len() {
            self.sift_down(i);
            self.sift_up(i);
        }
    }

    pub fn pop(&mut self) -> Option<(f64, ArcId)> {
        let top = self.peek()?;
        self.remove(top.1);
        Some(top)
    }

    fn less(&self, i: usize, j: usize) -> bool {
        let (ki, ai) = self.heap[i];
        let (kj, aj) = self.heap[j];
        ki < kj || (ki == kj && ai < aj)
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.pos[self.heap[i].1] = i;
        self.pos[self.heap[j].1] = j;
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let p = (i - 1) / 2;
            if !self.less(i, p) {
                break;
            }
            self.swap(i, p);
            i = p;
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        loop {
            let l = 2 * i + 1;
            if l >= self.heap.len() {
                break;
            }
            let r = l + 1;
            let c = if r < self.heap.len() && self.less(r, l) { r } else { l };
            if !self.less(c, i) {
                break;
            }
            self.swap(i, c);
            i = c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ties_break_by_arc_id() {
        let mut q = FlowLimitQueue::new(4);
        q.set(3, 1.0);
        q.set(1, 1.0);
        q.set(2, 0.5);
        assert_eq!(q.pop(), Some((0.5, 2)));
        assert_eq!(q.pop(), Some((1.0, 1)));
        assert_eq!(q.pop(), Some((1.0, 3)));
        assert_eq!(q.pop(), None);
    }

    proptest! {
        #[test]
        fn behaves_like_a_sorted_map(ops in prop::collection::vec((0usize..16, 0u8..3, 0u32..100), 0..200)) {
            let mut q = FlowLimitQueue::new(16);
            let mut model: Vec<Option<f64>> = vec![None; 16];
            for (a, op, k) in ops {
                match op {
                    0 => { q.set(a, f64::from(k)); model[a] = Some(f64::from(k)); }
                    1 => { q.remove(a); model[a] = None; }
                    _ => {
                        let expected = model.iter().enumerate()
                            .filter_map(|(i, k)| k.map(|k| (k, i)))
                            .min_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
                        prop_assert_eq!(q.pop(), expected);
                        if let Some((_, i)) = expected { model[i] = None; }
                    }
                }
                prop_assert_eq!(q.len(), model.iter().flatten().count());
            }
        }
    }
}
