use std::ops::AddAssign;

/// Operation counts collected during one verification (or summed over many).
///
/// `modulo` counts cyclic index reductions: one per letter lookup while
/// building Λ and one per digit access inside each Y product, so a single
/// verification of an n-tuple always reports `11 * n`. `string_ops` counts
/// digit emissions and sign/bracket removals while assembling Θ; it has no
/// fixed target.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OpCounters {
    pub modulo: u64,
    pub multiplications: u64,
    pub additions: u64,
    pub string_ops: u64,
}

impl OpCounters {
    pub fn total_arithmetic(&self) -> u64 {
        self.modulo + self.multiplications + self.additions
    }
}

impl AddAssign for OpCounters {
    fn add_assign(&mut self, rhs: Self) {
        self.modulo += rhs.modulo;
        self.multiplications += rhs.multiplications;
        self.additions += rhs.additions;
        self.string_ops += rhs.string_ops;
    }
}

/// Reduces a 1-based cyclic index: `r = a mod len`, with `r = 0` mapped to `len`.
///
/// `len` must be non-zero.
#[inline]
pub fn cyclic_position(a: u64, len: usize) -> usize {
    let r = (a % len as u64) as usize;
    if r == 0 {
        len
    } else {
        r
    }
}
