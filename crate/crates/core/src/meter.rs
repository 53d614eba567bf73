//! Workspace accounting.
//!
//! Algorithm-internal buffers are allocated as [`ScratchVec`]s, which charge
//! their byte size to a [`WorkspaceMeter`] for as long as they live. Inputs
//! (the text and the suffix array) and outputs (the document array) are never
//! charged; callers may list them in the meter's exclusion registry so reports
//! can state what was left out.

use std::ops::{Deref, DerefMut};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

#[derive(Debug)]
pub struct WorkspaceMeter {
    live: AtomicUsize,
    peak: AtomicUsize,
    excluded: Mutex<Vec<(String, usize)>>,
}

static GLOBAL: WorkspaceMeter = WorkspaceMeter::new();

/// The process-wide meter used by all algorithms in this crate.
pub fn global() -> &'static WorkspaceMeter {
    &GLOBAL
}

/// Outcome of [`WorkspaceMeter::measure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measurement {
    /// Peak charged bytes above the level at entry.
    pub peak_bytes: usize,
    /// Bytes still charged at exit above the level at entry.
    pub leaked_bytes: usize,
}

impl WorkspaceMeter {
    pub const fn new() -> Self {
        WorkspaceMeter {
            live: AtomicUsize::new(0),
            peak: AtomicUsize::new(0),
            excluded: Mutex::new(Vec::new()),
        }
    }

    pub fn charge(&self, bytes: usize) {
        let now = self.live.fetch_add(bytes, Ordering::SeqCst) + bytes;
        self.peak.fetch_max(now, Ordering::SeqCst);
    }

    pub fn release(&self, bytes: usize) {
        let prev = self.live.fetch_sub(bytes, Ordering::SeqCst);
        debug_assert!(prev >= bytes, "meter released more than charged");
    }

    pub fn live(&self) -> usize {
        self.live.load(Ordering::SeqCst)
    }

    pub fn peak(&self) -> usize {
        self.peak.load(Ordering::SeqCst)
    }

    /// Drops the watermark to the current live level.
    pub fn reset_peak(&self) {
        self.peak.store(self.live(), Ordering::SeqCst);
    }

    /// Records a buffer that is deliberately not charged.
    pub fn exclude(&self, name: impl Into<String>, bytes: usize) {
        self.excluded.lock().unwrap().push((name.into(), bytes));
    }

    pub fn exclusions(&self) -> Vec<(String, usize)> {
        self.excluded.lock().unwrap().clone()
    }

    pub fn clear_exclusions(&self) {
        self.excluded.lock().unwrap().clear();
    }

    /// Runs `f` and reports the workspace it used. Not meaningful when other
    /// threads charge the same meter concurrently.
    pub fn measure<R>(&self, f: impl FnOnce() -> R) -> (R, Measurement) {
        let base = self.live();
        self.reset_peak();
        let out = f();
        let peak = self.peak().saturating_sub(base);
        let leaked = self.live().saturating_sub(base);
        (
            out,
            Measurement {
                peak_bytes: peak,
                leaked_bytes: leaked,
            },
        )
    }
}

impl Default for WorkspaceMeter {
    fn default() -> Self {
        Self::new()
    }
}

/// A fixed-length buffer whose bytes are charged to a meter while it lives.
pub struct ScratchVec<T: 'static> {
    buf: Vec<T>,
    bytes: usize,
    meter: &'static WorkspaceMeter,
}

impl<T: Clone + 'static> ScratchVec<T> {
    /// `len` copies of `value`, charged to the global meter.
    pub fn filled(len: usize, value: T) -> Self {
        Self::filled_in(global(), len, value)
    }

    pub fn filled_in(meter: &'static WorkspaceMeter, len: usize, value: T) -> Self {
        Self::from_vec_in(meter, vec![value; len])
    }
}

impl<T: 'static> ScratchVec<T> {
    pub fn from_vec_in(meter: &'static WorkspaceMeter, mut buf: Vec<T>) -> Self {
        buf.shrink_to_fit();
        let bytes = buf.capacity() * std::mem::size_of::<T>();
        meter.charge(bytes);
        ScratchVec { buf, bytes, meter }
    }

    /// Bytes charged for this buffer.
    pub fn bytes(&self) -> usize {
        self.bytes
    }
}

impl<T: 'static> Drop for ScratchVec<T> {
    fn drop(&mut self) {
        self.meter.release(self.bytes);
    }
}

impl<T: 'static> Deref for ScratchVec<T> {
    type Target = [T];

    fn deref(&self) -> &[T] {
        &self.buf
    }
}

impl<T: 'static> DerefMut for ScratchVec<T> {
    fn deref_mut(&mut self) -> &mut [T] {
        &mut self.buf
    }
}

impl<T: std::fmt::Debug + 'static> std::fmt::Debug for ScratchVec<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.buf.iter()).finish()
    }
}

impl<T: Clone + 'static> Clone for ScratchVec<T> {
    fn clone(&self) -> Self {
        Self::from_vec_in(self.meter, self.buf.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn local() -> &'static WorkspaceMeter {
        Box::leak(Box::new(WorkspaceMeter::new()))
    }

    #[test]
    fn calibration_mib() {
        let meter = local();
        let ((), m) = meter.measure(|| {
            let buf = ScratchVec::filled_in(meter, 1 << 20, 0u8);
            assert_eq!(buf.len(), 1 << 20);
        });
        let err = (m.peak_bytes as f64 - (1 << 20) as f64).abs() / (1 << 20) as f64;
        assert!(err <= 0.01, "peak {} bytes", m.peak_bytes);
        assert_eq!(m.leaked_bytes, 0);
        assert_eq!(meter.live(), 0);
    }

    #[test]
    fn peak_tracks_overlap() {
        let meter = local();
        let ((), m) = meter.measure(|| {
            let a = ScratchVec::filled_in(meter, 100, 0u32);
            {
                let _b = ScratchVec::filled_in(meter, 50, 0u64);
                assert_eq!(meter.live(), 800);
            }
            drop(a);
            let _c = ScratchVec::filled_in(meter, 10, 0u8);
        });
        assert_eq!(m.peak_bytes, 800);
        assert!(meter.peak() >= meter.live());
    }

    #[test]
    fn exclusions_are_recorded_not_charged() {
        let meter = local();
        meter.exclude("sa", 4096);
        assert_eq!(meter.live(), 0);
        assert_eq!(meter.exclusions(), vec![("sa".to_string(), 4096)]);
        meter.clear_exclusions();
        assert!(meter.exclusions().is_empty());
    }
}
