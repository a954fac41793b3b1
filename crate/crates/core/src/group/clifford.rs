use std::fmt;

/// `ε·γ_A` with `A ⊆ {1..n}` stored as a bitmask (bit `i-1` for point `i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliffordElement {
    pub negative: bool,
    pub subset: u32,
}

/// Number of pairs `(a, b) ∈ A × B` with `a > b`.
pub fn xi(a: u32, b: u32) -> u32 {
    let mut count = 0;
    let mut rest = b;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        count += (a >> bit >> 1).count_ones();
        rest &= rest - 1;
    }
    count
}

impl CliffordElement {
    pub const ONE: CliffordElement = CliffordElement {
        negative: false,
        subset: 0,
    };

    pub fn new(sign: i8, subset: u32) -> Self {
        CliffordElement {
            negative: sign < 0,
            subset,
        }
    }

    pub fn sign(self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    /// `ε₁γ_A · ε₂γ_B = ε₁ε₂(−1)^{ξ(A,B)} γ_{A△B}`
    pub fn mul(self, other: Self) -> Self {
        let flip = xi(self.subset, other.subset) % 2 == 1;
        CliffordElement {
            negative: self.negative ^ other.negative ^ flip,
            subset: self.subset ^ other.subset,
        }
    }

    /// `(εγ_A)^{-1} = ε(−1)^{|A|(|A|−1)/2} γ_A`
    pub fn inverse(self) -> Self {
        let k = self.subset.count_ones();
        CliffordElement {
            negative: self.negative ^ ((k * k.saturating_sub(1) / 2) % 2 == 1),
            subset: self.subset,
        }
    }

    /// Dense id used by the clifford family: `2·mask + sign_bit`.
    pub fn id(self) -> usize {
        2 * self.subset as usize + self.negative as usize
    }

    pub fn from_id(id: usize) -> Self {
        CliffordElement {
            negative: id % 2 == 1,
            subset: (id / 2) as u32,
        }
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        if self.subset == 0 {
            return write!(f, "1");
        }
        write!(f, "g{{")?;
        let mut first = true;
        for i in 0..32 {
            if self.subset >> i & 1 == 1 {
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
            }
        }
        write!(f, "}}")
    }
}
