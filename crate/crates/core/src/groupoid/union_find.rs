/// Disjoint sets over `0..n` with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        true
    }

    /// Class index per element; classes are numbered by their smallest member.
    pub fn classes(&mut self) -> (Vec<u32>, usize) {
        let n = self.parent.len();
        let mut index_of_root = vec![u32::MAX; n];
        let mut class = vec![0; n];
        let mut count = 0u32;
        for x in 0..n as u32 {
            let r = self.find(x) as usize;
            if index_of_root[r] == u32::MAX {
                index_of_root[r] = count;
                count += 1;
            }
            class[x as usize] = index_of_root[r];
        }
        (class, count as usize)
    }
}
