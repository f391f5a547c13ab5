//! Closed-interval arithmetic with outward rounding.
//!
//! Every operation rounds its result outward by one ulp, so a computed
//! interval always encloses the exact image of its inputs. Enclosures are
//! what make sign determinations (root isolation, ordering certificates)
//! trustworthy despite floating point.
//!
//! Operations that can leave the domain (`div` across zero, `sqrt` of a
//! negative-touching interval, real powers of negative bases) return `None`;
//! the expression layer turns that into a proper domain error.

use crate::scalar::{s, Scalar};
use serde::{Deserialize, Serialize};

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval<S> {
    lo: S,
    hi: S,
}

impl<S: Scalar> Interval<S> {
    pub fn new(lo: S, hi: S) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(v: S) -> Self {
        Interval { lo: v, hi: v }
    }

    pub fn lo(&self) -> S {
        self.lo
    }

    pub fn hi(&self) -> S {
        self.hi
    }

    pub fn width(&self) -> S {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> S {
        let two = s::<S>(2.0);
        self.lo / two + self.hi / two
    }

    pub fn contains(&self, v: S) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(S::zero())
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo > S::zero()
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi < S::zero()
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &Self) -> Option<Self> {
        let lo = if self.lo > other.lo { self.lo } else { other.lo };
        let hi = if self.hi < other.hi { self.hi } else { other.hi };
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Splits at an interior point; caller guarantees `lo < at < hi`.
    pub fn split_at(&self, at: S) -> (Self, Self) {
        debug_assert!(self.lo < at && at < self.hi);
        (Interval::new(self.lo, at), Interval::new(at, self.hi))
    }

    fn widen(lo: S, hi: S) -> Self {
        Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    pub fn neg(&self) -> Self {
        // Negation is exact in IEEE arithmetic; no widening required.
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::widen(self.lo + other.lo, self.hi + other.hi)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::widen(self.lo - other.hi, self.hi - other.lo)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = self.lo * other.lo;
        let b = self.lo * other.hi;
        let c = self.hi * other.lo;
        let d = self.hi * other.hi;
        Self::widen(a.min(b).min(c.min(d)), a.max(b).max(c.max(d)))
    }

    /// `None` when the divisor encloses zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.contains_zero() {
            return None;
        }
        let a = self.lo / other.lo;
        let b = self.lo / other.hi;
        let c = self.hi / other.lo;
        let d = self.hi / other.hi;
        Some(Self::widen(
            a.min(b).min(c.min(d)),
            a.max(b).max(c.max(d)),
        ))
    }

    /// Integer power. `None` for a negative exponent on an interval through zero.
    pub fn powi(&self, n: i32) -> Option<Self> {
        if n == 0 {
            return Some(Interval::point(S::one()));
        }
        if n < 0 {
            let pos = self.powi(-n)?;
            return Interval::point(S::one()).div(&pos);
        }
        let pl = self.lo.powi(n);
        let ph = self.hi.powi(n);
        if n % 2 == 1 || self.lo >= S::zero() {
            Some(Self::widen(pl, ph))
        } else if self.hi <= S::zero() {
            Some(Self::widen(ph, pl))
        } else {
            // straddles zero, even power
            Some(Interval {
                lo: S::zero(),
                hi: pl.max(ph).next_up(),
            })
        }
    }

    /// Real power; the base must be certifiably non-negative.
    pub fn powf(&self, r: S) -> Option<Self> {
        if self.lo < S::zero() {
            return None;
        }
        if r < S::zero() && self.contains_zero() {
            return None;
        }
        let (a, b) = if r >= S::zero() {
            (self.lo.powf(r), self.hi.powf(r))
        } else {
            (self.hi.powf(r), self.lo.powf(r))
        };
        let w = Self::widen(a, b);
        Some(Interval {
            lo: w.lo.max(S::zero()),
            hi: w.hi,
        })
    }

    /// `None` when the interval reaches below zero.
    pub fn sqrt(&self) -> Option<Self> {
        if self.lo < S::zero() {
            return None;
        }
        let w = Self::widen(self.lo.sqrt(), self.hi.sqrt());
        Some(Interval {
            lo: w.lo.max(S::zero()),
            hi: w.hi,
        })
    }

    pub fn exp(&self) -> Self {
        let w = Self::widen(self.lo.exp(), self.hi.exp());
        Interval {
            lo: w.lo.max(S::zero()),
            hi: w.hi,
        }
    }

    pub fn tanh(&self) -> Self {
        let w = Self::widen(self.lo.tanh(), self.hi.tanh());
        Interval {
            lo: w.lo.max(-S::one()),
            hi: w.hi.min(S::one()),
        }
    }

    pub fn sin(&self) -> Self {
        self.trig(S::FRAC_PI_2(), -S::FRAC_PI_2(), |x| x.sin())
    }

    pub fn cos(&self) -> Self {
        self.trig(S::zero(), S::PI(), |x| x.cos())
    }

    /// Shared sine/cosine enclosure: endpoint values plus `+1`/`-1` whenever a
    /// peak (`max_at + 2k*pi`) or trough (`min_at + 2k*pi`) may lie inside.
    /// Peak containment is tested with slop toward inclusion, which only
    /// widens the result.
    fn trig(&self, max_at: S, min_at: S, f: impl Fn(S) -> S) -> Self {
        let two_pi = S::PI() + S::PI();
        if self.width() >= two_pi {
            return Interval {
                lo: -S::one(),
                hi: S::one(),
            };
        }
        let va = f(self.lo);
        let vb = f(self.hi);
        let mut lo = va.min(vb);
        let mut hi = va.max(vb);
        if self.contains_phase(max_at, two_pi) {
            hi = S::one();
        }
        if self.contains_phase(min_at, two_pi) {
            lo = -S::one();
        }
        let w = Self::widen(lo, hi);
        Interval {
            lo: w.lo.max(-S::one()),
            hi: w.hi.min(S::one()),
        }
    }

    fn contains_phase(&self, offset: S, period: S) -> bool {
        let slop = self.lo.abs().max(self.hi.abs()).max(S::one())
            * s::<S>(1e-14);
        let k = ((self.lo - slop - offset) / period).ceil();
        offset + k * period <= self.hi + slop
    }
}
