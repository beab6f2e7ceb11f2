//! Hand-written dihedral and quaternion groups, used as independent
//! references for the coset enumerator.

/// `D_{2n}` with elements `r^k s^e` keyed as `k + n e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DihedralGroup {
    n: u32,
}

impl DihedralGroup {
    pub fn new(n: u32) -> Option<Self> {
        (n >= 1).then_some(Self { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        2 * self.n as usize
    }

    fn split(&self, key: u32) -> (u32, u32) {
        (key % self.n, key / self.n)
    }

    pub fn key(&self, rotation: u32, reflected: bool) -> u32 {
        rotation % self.n + self.n * u32::from(reflected)
    }

    /// `r^a s^e * r^b s^f = r^(a + (-1)^e b) s^(e + f)`, using `s r = r^-1 s`.
    pub fn multiply(&self, g: u32, h: u32) -> u32 {
        let (a, e) = self.split(g);
        let (b, f) = self.split(h);
        let b = if e == 1 { (self.n - b) % self.n } else { b };
        self.key(a + b, (e ^ f) == 1)
    }

    pub fn inverse(&self, g: u32) -> u32 {
        let (a, e) = self.split(g);
        if e == 1 {
            g
        } else {
            self.key((self.n - a) % self.n, false)
        }
    }

    pub fn label(&self, g: u32) -> String {
        match self.split(g) {
            (0, 0) => "1".into(),
            (0, _) => "s".into(),
            (1, 0) => "r".into(),
            (1, _) => "r s".into(),
            (a, 0) => format!("r^{a}"),
            (a, _) => format!("r^{a} s"),
        }
    }
}

/// The quaternion group `{±1, ±i, ±j, ±k}`.
///
/// Keys: `0 = 1, 1 = -1, 2 = i, 3 = -i, 4 = j, 5 = -j, 6 = k, 7 = -k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct QuaternionGroup;

impl QuaternionGroup {
    pub const ONE: u32 = 0;
    pub const MINUS_ONE: u32 = 1;
    pub const I: u32 = 2;
    pub const J: u32 = 4;
    pub const K: u32 = 6;

    pub fn order(&self) -> usize {
        8
    }

    pub fn multiply(&self, g: u32, h: u32) -> u32 {
        // unit index: 0 = 1, 1 = i, 2 = j, 3 = k
        const TABLE: [[(u32, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let (u, su) = (g / 2, g % 2 == 1);
        let (v, sv) = (h / 2, h % 2 == 1);
        let (w, sw) = TABLE[u as usize][v as usize];
        2 * w + u32::from(su ^ sv ^ sw)
    }

    pub fn inverse(&self, g: u32) -> u32 {
        if g / 2 == 0 {
            g
        } else {
            g ^ 1
        }
    }

    pub fn label(&self, g: u32) -> String {
        let unit = ["1", "i", "j", "k"][(g / 2) as usize];
        if g % 2 == 1 {
            format!("-{unit}")
        } else {
            unit.to_string()
        }
    }
}
