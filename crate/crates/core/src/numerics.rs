//! Compensated accumulation for reproducible reductions.

/// Neumaier's variant of Kahan summation: tracks a running compensation
/// term so that the final `value()` is accurate to a few ulps regardless
/// of cancellation or magnitude ordering in the input.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_tail() {
        // 1 + 1e-16 repeated: naive summation loses the tail entirely.
        let mut s = NeumaierSum::new();
        s.add(1.0);
        for _ in 0..1000 {
            s.add(1e-16);
        }
        let exact = 1.0 + 1000.0 * 1e-16;
        assert!((s.value() - exact).abs() < 1e-18);
    }

    #[test]
    fn handles_magnitude_flip() {
        let mut s = NeumaierSum::new();
        s.add(1e100);
        s.add(1.0);
        s.add(-1e100);
        assert_eq!(s.value(), 1.0);
    }
}
