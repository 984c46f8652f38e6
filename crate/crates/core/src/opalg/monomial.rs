use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// One of the six sphere generators. The derived order `NX < NY < NZ < LX <
/// LY < LZ` is the normal-ordering order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    NX,
    NY,
    NZ,
    LX,
    LY,
    LZ,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::NX,
        Generator::NY,
        Generator::NZ,
        Generator::LX,
        Generator::LY,
        Generator::LZ,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_n(self) -> bool {
        self.index() < 3
    }

    /// Cartesian axis 0, 1, 2 for x, y, z.
    pub fn axis(self) -> usize {
        self.index() % 3
    }

    pub fn n(axis: usize) -> Generator {
        Self::ALL[axis]
    }

    pub fn l(axis: usize) -> Generator {
        Self::ALL[3 + axis]
    }

    pub fn name(self) -> &'static str {
        ["NX", "NY", "NZ", "LX", "LY", "LZ"][self.index()]
    }

    pub fn from_name(s: &str) -> Option<Generator> {
        Self::ALL.into_iter().find(|g| g.name() == s)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A normal-ordered word `NX^p1 NY^p2 NZ^p3 LX^q1 LY^q2 LZ^q3` with `p3 <= 1`.
///
/// Ordered graded-lexicographically on the six exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Monomial {
    pub n: [u32; 3],
    pub l: [u32; 3],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { n: [0; 3], l: [0; 3] };

    pub fn new(n: [u32; 3], l: [u32; 3]) -> Self {
        debug_assert!(n[2] <= 1, "NZ^2 must be eliminated");
        Self { n, l }
    }

    pub fn from_exponents(e: [u32; 6]) -> Self {
        Self::new([e[0], e[1], e[2]], [e[3], e[4], e[5]])
    }

    pub fn generator(g: Generator) -> Self {
        let mut e = [0; 6];
        e[g.index()] = 1;
        Self::from_exponents(e)
    }

    pub fn exponents(&self) -> [u32; 6] {
        [self.n[0], self.n[1], self.n[2], self.l[0], self.l[1], self.l[2]]
    }

    pub fn degree(&self) -> u32 {
        self.n_degree() + self.l.iter().sum::<u32>()
    }

    pub fn n_degree(&self) -> u32 {
        self.n.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    /// The word this monomial stands for, in normal order.
    pub fn word(&self) -> Vec<Generator> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for (g, k) in Generator::ALL.into_iter().zip(self.exponents()) {
            w.extend(std::iter::repeat(g).take(k as usize));
        }
        w
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents().cmp(&other.exponents()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn write_word(f: &mut fmt::Formatter<'_>, exps: &[u32; 6]) -> fmt::Result {
    if exps.iter().all(|&k| k == 0) {
        return f.write_str("1");
    }
    let mut first = true;
    for (g, &k) in Generator::ALL.iter().zip(exps) {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if k == 1 {
            write!(f, "{g}")?;
        } else {
            write!(f, "{g}^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.exponents())
    }
}

/// Parses `1` or `NX^2*LZ` style words into exponents, without the `p3 <= 1`
/// restriction.
pub(crate) fn parse_exponents(s: &str) -> Option<[u32; 6]> {
    let s = s.trim();
    let mut e = [0u32; 6];
    if s == "1" {
        return Some(e);
    }
    for factor in s.split('*') {
        let (name, k) = match factor.split_once('^') {
            Some((n, k)) => (n, k.parse().ok()?),
            None => (factor, 1),
        };
        e[Generator::from_name(name)?.index()] += k;
    }
    Some(e)
}
