//! Injected time source for BFS phase timing.
//!
//! The solver measures each BFS phase individually, so the clock is a
//! dependency rather than a direct `Instant::now()` call: tests substitute
//! [`FakeClock`] for exact arithmetic, and non-native hosts (wasm) plug in
//! whatever monotonic source they have.

use std::cell::Cell;

/// Monotonic nanosecond counter. The origin is arbitrary; only differences
/// between two readings are meaningful.
pub trait Clock {
    fn now_ns(&self) -> u64;
}

/// Wall clock backed by `std::time::Instant`.
#[cfg(not(target_arch = "wasm32"))]
pub struct MonotonicClock {
    origin: std::time::Instant,
}

#[cfg(not(target_arch = "wasm32"))]
impl MonotonicClock {
    pub fn new() -> Self {
        MonotonicClock {
            origin: std::time::Instant::now(),
        }
    }
}

#[cfg(not(target_arch = "wasm32"))]
impl Default for MonotonicClock {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(not(target_arch = "wasm32"))]
impl Clock for MonotonicClock {
    fn now_ns(&self) -> u64 {
        self.origin.elapsed().as_nanos() as u64
    }
}

/// Deterministic clock that advances by a fixed step on every reading.
pub struct FakeClock {
    now: Cell<u64>,
    step: u64,
}

impl FakeClock {
    /// Clock that returns `step`, `2*step`, `3*step`, ... on successive reads.
    pub fn with_step(step: u64) -> Self {
        FakeClock {
            now: Cell::new(0),
            step,
        }
    }
}

impl Clock for FakeClock {
    fn now_ns(&self) -> u64 {
        let t = self.now.get() + self.step;
        self.now.set(t);
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fake_clock_advances_by_step() {
        let clock = FakeClock::with_step(10);
        assert_eq!(clock.now_ns(), 10);
        assert_eq!(clock.now_ns(), 20);
        assert_eq!(clock.now_ns(), 30);
    }

    #[test]
    fn monotonic_clock_is_nondecreasing() {
        let clock = MonotonicClock::new();
        let a = clock.now_ns();
        let b = clock.now_ns();
        assert!(b >= a);
    }
}
