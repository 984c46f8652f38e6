/// A spherical harmonic `|l, m>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    pub l: u32,
    pub m: i32,
}

impl BasisState {
    pub fn new(l: u32, m: i32) -> Self {
        assert!(m.unsigned_abs() <= l, "|m| must not exceed l");
        Self { l, m }
    }
}

/// All `|l, m>` with `l <= lmax`, indexed by `l² + l + m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Basis {
    lmax: u32,
}

impl Basis {
    pub fn new(lmax: u32) -> Self {
        Self { lmax }
    }

    pub fn lmax(&self) -> u32 {
        self.lmax
    }

    pub fn dim(&self) -> usize {
        ((self.lmax + 1) * (self.lmax + 1)) as usize
    }

    /// Number of states with `l <= lmax - k` (these come first in index
    /// order); zero when `k > lmax`.
    pub fn interior_dim(&self, k: usize) -> usize {
        if k > self.lmax as usize {
            return 0;
        }
        let top = self.lmax as usize - k + 1;
        top * top
    }

    pub fn contains(&self, l: i64, m: i64) -> bool {
        l >= 0 && l <= self.lmax as i64 && m.abs() <= l
    }

    pub fn index(&self, s: BasisState) -> usize {
        debug_assert!(s.l <= self.lmax);
        ((s.l * s.l + s.l) as i64 + s.m as i64) as usize
    }

    pub fn state(&self, idx: usize) -> BasisState {
        let l = (idx as f64).sqrt().floor() as u32;
        let l = if ((l + 1) * (l + 1)) as usize <= idx { l + 1 } else { l };
        let m = idx as i64 - (l * l + l) as i64;
        BasisState { l, m: m as i32 }
    }

    pub fn states(&self) -> impl Iterator<Item = BasisState> + '_ {
        (0..self.dim()).map(|k| self.state(k))
    }
}
