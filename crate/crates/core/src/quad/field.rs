use std::fmt;

use serde::{Deserialize, Serialize};

use super::FundDisc;
use crate::error::Result;

/// The quadratic field Q(sqrt(d)) of fundamental discriminant d.
///
/// Elements are written on the integral basis (1, w) where w = (1 + sqrt(d))/2
/// when d = 1 mod 4 and w = sqrt(d/4) otherwise, so that w^2 = t*w + n with
/// (t, n) = (1, (d-1)/4) or (0, d/4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadField {
    disc: FundDisc,
}

impl QuadField {
    pub fn new(disc: FundDisc) -> Self {
        QuadField { disc }
    }

    pub fn from_disc(d: i64) -> Result<Self> {
        Ok(QuadField::new(FundDisc::new(d)?))
    }

    #[inline]
    pub fn disc(&self) -> FundDisc {
        self.disc
    }

    #[inline]
    pub fn d(&self) -> i64 {
        self.disc.get()
    }

    pub fn is_real(&self) -> bool {
        self.d() > 0
    }

    pub fn r1(&self) -> u32 {
        if self.is_real() {
            2
        } else {
            0
        }
    }

    pub fn r2(&self) -> u32 {
        if self.is_real() {
            0
        } else {
            1
        }
    }

    /// Trace of w.
    #[inline]
    pub fn t(&self) -> i64 {
        if self.d().rem_euclid(4) == 1 {
            1
        } else {
            0
        }
    }

    /// The constant n in w^2 = t*w + n.
    #[inline]
    pub fn n(&self) -> i64 {
        if self.t() == 1 {
            (self.d() - 1) / 4
        } else {
            self.d() / 4
        }
    }

    /// Number of roots of unity.
    pub fn torsion_order(&self) -> u32 {
        match self.d() {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}))", self.d())
    }
}
