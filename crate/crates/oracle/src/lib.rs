//! Brute-force reference computations for test harnesses.
//!
//! Nothing here shares code with the library under test: rings are plain
//! Cayley tables built from closed formulas, and maps are found by walking
//! every function `dom -> cod`.

/// Cayley tables, row-major: `add[x * n + y] = x + y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tables {
    pub n: usize,
    pub add: Vec<u32>,
    pub mul: Vec<u32>,
}

impl Tables {
    pub fn zmod(n: u32) -> Tables {
        let m = n as usize;
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for x in 0..n {
            for y in 0..n {
                add.push((x + y) % n);
                mul.push((x * y) % n);
            }
        }
        Tables { n: m, add, mul }
    }

    /// `Z_n[i]`, element `a + b i` at index `a + b n`.
    pub fn gauss(n: u32) -> Tables {
        let m = (n * n) as usize;
        let split = |x: u32| (x % n, x / n);
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for x in 0..n * n {
            for y in 0..n * n {
                let ((a, b), (c, d)) = (split(x), split(y));
                add.push((a + c) % n + ((b + d) % n) * n);
                let re = (a * c + (n - (b * d) % n)) % n;
                let im = (a * d + b * c) % n;
                mul.push(re + im * n);
            }
        }
        Tables { n: m, add, mul }
    }

    /// `M_2` over a base, tabulated from [`Mat2`].
    pub fn mat2(base: &Tables) -> Tables {
        let m = Mat2::new(base);
        let size = m.size();
        let mut add = Vec::with_capacity((size * size) as usize);
        let mut mul = Vec::with_capacity((size * size) as usize);
        for x in 0..size {
            for y in 0..size {
                add.push(m.add(x, y));
                mul.push(m.mul(x, y));
            }
        }
        Tables { n: size as usize, add, mul }
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        self.add[x as usize * self.n + y as usize]
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.mul[x as usize * self.n + y as usize]
    }

    pub fn zero(&self) -> u32 {
        (0..self.n as u32).find(|&z| (0..self.n as u32).all(|x| self.add(z, x) == x)).unwrap()
    }

    pub fn one(&self) -> u32 {
        (0..self.n as u32).find(|&e| (0..self.n as u32).all(|x| self.mul(e, x) == x && self.mul(x, e) == x)).unwrap()
    }

    pub fn units(&self) -> Vec<u32> {
        let one = self.one();
        let all = 0..self.n as u32;
        all.clone().filter(|&x| all.clone().any(|y| self.mul(x, y) == one && self.mul(y, x) == one)).collect()
    }
}

/// `M_2` over a base whose zero is 0 and identity is 1, computed entrywise.
/// Raw index of `[[a,b],[c,d]]` is `((a n + b) n + c) n + d`; raw 1 and the
/// raw identity trade places so that the identity sits at index 1.
pub struct Mat2<'a> {
    base: &'a Tables,
    q: u32,
}

impl<'a> Mat2<'a> {
    pub fn new(base: &'a Tables) -> Self {
        Mat2 { base, q: base.n as u32 }
    }

    pub fn size(&self) -> u32 {
        self.q.pow(4)
    }

    fn swap(&self, x: u32) -> u32 {
        let id_raw = self.q.pow(3) + 1;
        match x {
            _ if self.q < 2 => x,
            1 => id_raw,
            _ if x == id_raw => 1,
            _ => x,
        }
    }

    pub fn decode(&self, x: u32) -> [u32; 4] {
        let (r, q) = (self.swap(x), self.q);
        [r / (q * q * q), (r / (q * q)) % q, (r / q) % q, r % q]
    }

    pub fn encode(&self, e: [u32; 4]) -> u32 {
        let q = self.q;
        self.swap(((e[0] * q + e[1]) * q + e[2]) * q + e[3])
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let (a, b, t) = (self.decode(x), self.decode(y), self.base);
        self.encode([t.add(a[0], b[0]), t.add(a[1], b[1]), t.add(a[2], b[2]), t.add(a[3], b[3])])
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let (a, b, t) = (self.decode(x), self.decode(y), self.base);
        let dot = |p: u32, q: u32, r: u32, s: u32| t.add(t.mul(p, q), t.mul(r, s));
        self.encode([
            dot(a[0], b[0], a[1], b[2]),
            dot(a[0], b[1], a[1], b[3]),
            dot(a[2], b[0], a[3], b[2]),
            dot(a[2], b[1], a[3], b[3]),
        ])
    }
}

/// Calls `f` on every array in `[0, nc)^nd`, in lexicographic order.
pub fn for_each_function(nd: usize, nc: usize, mut f: impl FnMut(&[u32])) {
    if nc == 0 {
        return;
    }
    let mut img = vec![0u32; nd];
    loop {
        f(&img);
        let mut p = nd;
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            img[p] += 1;
            if (img[p] as usize) < nc {
                break;
            }
            img[p] = 0;
        }
    }
}

pub fn is_multiplicative(d: &Tables, c: &Tables, img: &[u32]) -> bool {
    (0..d.n as u32).all(|x| (0..d.n as u32).all(|y| img[d.mul(x, y) as usize] == c.mul(img[x as usize], img[y as usize])))
}

pub fn is_additive(d: &Tables, c: &Tables, img: &[u32]) -> bool {
    (0..d.n as u32).all(|x| (0..d.n as u32).all(|y| img[d.add(x, y) as usize] == c.add(img[x as usize], img[y as usize])))
}

/// All multiplicative image arrays, ascending.
pub fn multiplicative_maps(d: &Tables, c: &Tables) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for_each_function(d.n, c.n, |img| {
        if is_multiplicative(d, c, img) {
            out.push(img.to_vec());
        }
    });
    out
}

/// Exhaustive two-sided inverse search for a 2x2 matrix given by entries.
pub fn mat2_invertible(base: &Tables, m: [u32; 4]) -> bool {
    let q = base.n as u32;
    let (ad, mu) = (|x, y| base.add(x, y), |x, y| base.mul(x, y));
    let prod = |a: [u32; 4], b: [u32; 4]| {
        [
            ad(mu(a[0], b[0]), mu(a[1], b[2])),
            ad(mu(a[0], b[1]), mu(a[1], b[3])),
            ad(mu(a[2], b[0]), mu(a[3], b[2])),
            ad(mu(a[2], b[1]), mu(a[3], b[3])),
        ]
    };
    let (zero, one) = (base.zero(), base.one());
    let id = [one, zero, zero, one];
    (0..q.pow(4)).any(|r| {
        let w = [r / (q * q * q), (r / (q * q)) % q, (r / q) % q, r % q];
        prod(m, w) == id && prod(w, m) == id
    })
}

/// Elements expressible as a sum of between 1 and `kmax` elements of `pool`.
pub fn sums_of_pool(t: &Tables, pool: &[u32], kmax: usize) -> Vec<u32> {
    let mut reach = vec![false; t.n];
    let mut layer: Vec<u32> = pool.to_vec();
    for _ in 0..kmax {
        for &x in &layer {
            reach[x as usize] = true;
        }
        let mut next = vec![false; t.n];
        for &x in &layer {
            for &p in pool {
                next[t.add(x, p) as usize] = true;
            }
        }
        layer = (0..t.n as u32).filter(|&x| next[x as usize]).collect();
    }
    (0..t.n as u32).filter(|&x| reach[x as usize]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_tables_have_identity_at_one() {
        let m = Tables::mat2(&Tables::zmod(2));
        assert_eq!(m.n, 16);
        assert_eq!(m.one(), 1);
        assert_eq!(m.zero(), 0);
        assert_eq!(m.units().len(), 6);
        let z3 = Tables::zmod(3);
        let big = Mat2::new(&z3);
        for x in [0, 1, 5, 80] {
            assert_eq!(big.encode(big.decode(x)), x);
            assert_eq!(big.mul(1, x), x);
        }
    }

    #[test]
    fn function_walk_is_lexicographic() {
        let mut seen = Vec::new();
        for_each_function(2, 3, |f| seen.push(f.to_vec()));
        assert_eq!(seen.len(), 9);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn z2_self_maps() {
        let z2 = Tables::zmod(2);
        assert_eq!(multiplicative_maps(&z2, &z2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn gaussian_i_squares_to_minus_one() {
        let g = Tables::gauss(3);
        assert_eq!(g.mul(3, 3), 2);
        assert_eq!(sums_of_pool(&Tables::zmod(4), &[1, 3], 2), vec![0, 1, 2, 3]);
        assert!(mat2_invertible(&Tables::zmod(2), [1, 1, 1, 0]));
        assert!(!mat2_invertible(&Tables::zmod(2), [1, 1, 1, 1]));
    }
}
