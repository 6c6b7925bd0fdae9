use serde::{Deserialize, Serialize};

/// Grid k of the shifted family: anchors E_{k,ℓ} = (ℓ−1)/L + k/L² and
/// intervals [E_{k,ℓ}, E_{k,ℓ} + 1/L).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPartition {
    pub l: usize,
    pub k: usize,
}

impl GridPartition {
    pub fn new(l: usize, k: usize) -> Self {
        assert!(l >= 1 && k < l, "grid needs L >= 1 and k < L");
        GridPartition { l, k }
    }

    /// Largest slot index: L, or L − 1 on the unshifted grid.
    pub fn max_slot(&self) -> usize {
        if self.k == 0 {
            self.l - 1
        } else {
            self.l
        }
    }

    pub fn slots(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.max_slot()
    }

    pub fn anchor(&self, slot: usize) -> f64 {
        let l = self.l as f64;
        (slot as f64 - 1.0) / l + self.k as f64 / (l * l)
    }

    pub fn width(&self) -> f64 {
        1.0 / self.l as f64
    }

    /// [E_{k,ℓ}, E_{k,ℓ+1}); consecutive intervals share endpoints exactly.
    pub fn interval(&self, slot: usize) -> (f64, f64) {
        (self.anchor(slot), self.anchor(slot + 1))
    }

    /// Slot whose interval contains `e`, if it exists on this grid.
    pub fn slot_of(&self, e: f64) -> Option<usize> {
        let l = self.l as f64;
        let guess = ((e - self.k as f64 / (l * l)) * l).floor() + 1.0;
        if !guess.is_finite() || guess < -1.0 {
            return None;
        }
        let mut s = guess.max(0.0) as usize;
        while s > 0 && e < self.anchor(s) {
            s -= 1;
        }
        while e >= self.anchor(s + 1) {
            s += 1;
        }
        (e >= self.anchor(s) && s <= self.max_slot()).then_some(s)
    }
}

/// Grids k for which `e` lies within `delta_e` of an anchor.
pub fn boundary_grids(e: f64, l: usize, delta_e: f64) -> Vec<usize> {
    (0..l)
        .filter(|&k| {
            let g = GridPartition::new(l, k);
            g.slots().any(|s| (e - g.anchor(s)).abs() <= delta_e)
        })
        .collect()
}
