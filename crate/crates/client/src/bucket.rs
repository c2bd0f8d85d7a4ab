//! Token-bucket rate limiter shared by all request paths.

use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Classic token bucket: `rate_per_sec` refill, `capacity` burst.
/// `acquire` blocks the calling thread until a token is available.
#[derive(Debug)]
pub struct TokenBucket {
    rate_per_sec: f64,
    capacity: f64,
    state: Mutex<BucketState>,
}

#[derive(Debug)]
struct BucketState {
    tokens: f64,
    refilled_at: Instant,
}

impl TokenBucket {
    pub fn new(rate_per_sec: f64, capacity: f64) -> Self {
        assert!(rate_per_sec > 0.0, "rate limit must be positive");
        let capacity = capacity.max(1.0);
        TokenBucket {
            rate_per_sec,
            capacity,
            state: Mutex::new(BucketState {
                tokens: capacity,
                refilled_at: Instant::now(),
            }),
        }
    }

    /// Bucket refilling at `per_day / 86400` tokens per second.
    pub fn per_day(requests_per_day: u64, burst: f64) -> Self {
        TokenBucket::new(requests_per_day as f64 / 86_400.0, burst)
    }

    /// Take one token if available, otherwise report how long to wait.
    fn try_take(&self) -> Option<Duration> {
        let mut state = self.state.lock().expect("bucket lock");
        let now = Instant::now();
        let elapsed = now.duration_since(state.refilled_at).as_secs_f64();
        state.tokens = (state.tokens + elapsed * self.rate_per_sec).min(self.capacity);
        state.refilled_at = now;
        if state.tokens >= 1.0 {
            state.tokens -= 1.0;
            None
        } else {
            Some(Duration::from_secs_f64(
                (1.0 - state.tokens) / self.rate_per_sec,
            ))
        }
    }

    /// Block until a token is taken.
    pub fn acquire(&self) {
        while let Some(wait) = self.try_take() {
            std::thread::sleep(wait);
        }
    }
}
