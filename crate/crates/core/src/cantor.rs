//! Cantor sets in [0,1] as nested interval families.
//!
//! A [`RemovalSchedule`] fixes the level-k interval length; a [`CantorSet`]
//! materializes the schedule down to a finite depth. Points at depth d are
//! represented by the midpoints of the 2^d level-d intervals, indexed by
//! binary addresses read as left/right choices from the root.

use crate::error::{Error, Result};
use std::fmt;

/// Hard cap on construction depth; addresses are bit-packed in a u32.
pub const MAX_DEPTH: u32 = 32;

/// How the middle of each interval is removed at every generation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RemovalSchedule {
    /// Keep a (1-alpha)/2 fraction on either side: l_k = l_{k-1} (1-alpha)/2.
    /// alpha = 1/3 is the classic middle-thirds set.
    MiddleAlpha { alpha: f64 },
    /// Fat (Smith-Volterra) set: each level-(k-1) interval loses a middle
    /// gap of absolute length 4^-k, so l_k = (l_{k-1} - 4^-k)/2 and the
    /// total length 2^k l_k decreases to 1/2. Positive Lebesgue measure.
    FatSvc,
    /// Doubly exponential shrinkage l_k = 2^(-2^k) for k >= 1 (root keeps
    /// length 1). Satisfies 2 l_k <= l_{k-1}; the concrete "dimension zero"
    /// uncountable space.
    Lean,
}

impl RemovalSchedule {
    pub fn validate(&self) -> Result<()> {
        match self {
            RemovalSchedule::MiddleAlpha { alpha } => {
                if !alpha.is_finite() || *alpha <= 0.0 || *alpha >= 1.0 {
                    return Err(Error::Parameter(format!(
                        "middle-alpha ratio must lie in (0,1), got {alpha}"
                    )));
                }
                Ok(())
            }
            RemovalSchedule::FatSvc | RemovalSchedule::Lean => Ok(()),
        }
    }

    /// Level-k interval length, defined for every k >= 0 independently of
    /// any constructed depth. Computed by the same iteration the builder
    /// uses, so stored and recomputed lengths agree bit for bit.
    pub fn level_length(&self, k: u32) -> f64 {
        match self {
            RemovalSchedule::MiddleAlpha { alpha } => {
                let ratio = (1.0 - alpha) / 2.0;
                let mut l = 1.0;
                for _ in 0..k {
                    l *= ratio;
                }
                l
            }
            RemovalSchedule::FatSvc => {
                let mut l = 1.0f64;
                for j in 1..=k {
                    l = (l - 0.25f64.powi(j as i32)) / 2.0;
                }
                l
            }
            RemovalSchedule::Lean => {
                if k == 0 {
                    1.0
                } else {
                    // 2^(-2^k); underflows to 0 for k >= 11, which only
                    // loses sub-ulp structure (midpoints stay ordered).
                    (-(2.0f64.powi(k as i32))).exp2()
                }
            }
        }
    }
}

/// A finite left/right word addressing one interval per level.
/// The empty word is the root interval [0,1]. Lexicographic order on
/// words of equal length matches left-to-right order of their intervals.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryAddress {
    len: u32,
    bits: u32,
}

impl BinaryAddress {
    pub fn root() -> Self {
        Self { len: 0, bits: 0 }
    }

    /// Build from a word of the given length; the first symbol is the
    /// most significant bit of `bits`.
    pub fn from_bits(bits: u32, len: u32) -> Result<Self> {
        if len > MAX_DEPTH {
            return Err(Error::Parameter(format!(
                "address length {len} exceeds {MAX_DEPTH}"
            )));
        }
        let masked = if len == 0 {
            0
        } else {
            bits & (u32::MAX >> (32 - len))
        };
        Ok(Self { len, bits: masked })
    }

    pub fn parse(word: &str) -> Result<Self> {
        if word.len() > MAX_DEPTH as usize {
            return Err(Error::Parameter(format!(
                "address '{word}' longer than {MAX_DEPTH}"
            )));
        }
        let mut bits = 0u32;
        for c in word.chars() {
            bits <<= 1;
            match c {
                '0' => {}
                '1' => bits |= 1,
                other => {
                    return Err(Error::Parameter(format!(
                        "address symbol '{other}' is not 0 or 1"
                    )))
                }
            }
        }
        Ok(Self {
            len: word.len() as u32,
            bits,
        })
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Symbol at position i (0-based from the root choice).
    pub fn symbol(&self, i: u32) -> u8 {
        debug_assert!(i < self.len);
        ((self.bits >> (self.len - 1 - i)) & 1) as u8
    }

    /// All addresses of one length in lexicographic order.
    pub fn all_of_len(len: u32) -> impl Iterator<Item = BinaryAddress> {
        assert!(len <= MAX_DEPTH);
        (0..(1u64 << len)).map(move |w| BinaryAddress {
            len,
            bits: w as u32,
        })
    }
}

impl fmt::Display for BinaryAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.symbol(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// A Cantor set constructed to a fixed generation count. Immutable after
/// construction; cheap to clone and safe to share across workers.
#[derive(Clone, Debug)]
pub struct CantorSet {
    schedule: RemovalSchedule,
    depth: u32,
    /// lengths[k] = level-k interval length, k = 0..=depth.
    lengths: Vec<f64>,
}

impl CantorSet {
    pub fn new(schedule: RemovalSchedule, depth: u32) -> Result<Self> {
        schedule.validate()?;
        if depth == 0 {
            return Err(Error::Parameter("depth must be at least 1".into()));
        }
        if depth > MAX_DEPTH {
            return Err(Error::Parameter(format!(
                "depth {depth} exceeds {MAX_DEPTH}"
            )));
        }
        let lengths: Vec<f64> = (0..=depth).map(|k| schedule.level_length(k)).collect();
        for k in 1..=depth as usize {
            if lengths[k] < 0.0 || 2.0 * lengths[k] > lengths[k - 1] {
                return Err(Error::Parameter(format!(
                    "schedule leaves no room at level {k}: l_k = {}, l_(k-1) = {}",
                    lengths[k],
                    lengths[k - 1]
                )));
            }
        }
        Ok(Self {
            schedule,
            depth,
            lengths,
        })
    }

    pub fn schedule(&self) -> RemovalSchedule {
        self.schedule
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn level_length(&self, k: u32) -> Result<f64> {
        if k > self.depth {
            return Err(Error::Parameter(format!(
                "level {k} out of range 0..={}",
                self.depth
            )));
        }
        Ok(self.lengths[k as usize])
    }

    /// (left endpoint, length) of the interval selected by `addr`.
    pub fn interval(&self, addr: &BinaryAddress) -> Result<(f64, f64)> {
        if addr.len() > self.depth {
            return Err(Error::AddressRange {
                len: addr.len(),
                depth: self.depth,
            });
        }
        let mut left = 0.0f64;
        for i in 0..addr.len() {
            if addr.symbol(i) == 1 {
                left += self.lengths[i as usize] - self.lengths[i as usize + 1];
            }
        }
        Ok((left, self.lengths[addr.len() as usize]))
    }

    /// Midpoint of the interval selected by `addr`. Injective over
    /// addresses of equal length and strictly increasing in lexicographic
    /// order (up to floating-point resolution of the schedule).
    pub fn address_to_point(&self, addr: &BinaryAddress) -> Result<f64> {
        let (left, len) = self.interval(addr)?;
        Ok(left + len / 2.0)
    }

    /// Inverse coding: the unique depth-`depth` address whose interval
    /// contains `x`, or `NotInSet` if `x` falls in a removed gap.
    pub fn point_to_address(&self, x: f64, depth: u32) -> Result<BinaryAddress> {
        if depth > self.depth {
            return Err(Error::AddressRange {
                len: depth,
                depth: self.depth,
            });
        }
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::NotInSet(x));
        }
        let mut left = 0.0f64;
        let mut bits = 0u32;
        for k in 1..=depth as usize {
            let child = self.lengths[k];
            let parent = self.lengths[k - 1];
            let right_left = left + parent - child;
            bits <<= 1;
            if x <= left + child {
                // stay in the left child
            } else if x >= right_left {
                bits |= 1;
                left = right_left;
            } else {
                return Err(Error::NotInSet(x));
            }
        }
        BinaryAddress::from_bits(bits, depth)
    }

    /// The 2^k level-k intervals as (left, length), in left-to-right order.
    pub fn level_intervals(&self, k: u32) -> Result<Vec<(f64, f64)>> {
        if k > self.depth {
            return Err(Error::Parameter(format!(
                "level {k} out of range 0..={}",
                self.depth
            )));
        }
        BinaryAddress::all_of_len(k)
            .map(|addr| self.interval(&addr))
            .collect()
    }

    /// All 2^d depth-d midpoints in address (left-to-right) order.
    pub fn midpoints(&self, d: u32) -> Result<Vec<f64>> {
        if d > self.depth {
            return Err(Error::AddressRange {
                len: d,
                depth: self.depth,
            });
        }
        BinaryAddress::all_of_len(d)
            .map(|addr| self.address_to_point(&addr))
            .collect()
    }
}
