//! Norm choices on the real coordinate space of derivation directions.

use alloc::vec::Vec;

use crate::math;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormChoice {
    L1,
    L2,
    LInf,
}

impl NormChoice {
    pub fn eval(&self, r: &[f64]) -> f64 {
        match self {
            NormChoice::L1 => r.iter().map(|x| math::abs(*x)).sum(),
            NormChoice::L2 => math::sqrt(r.iter().map(|x| x * x).sum()),
            NormChoice::LInf => r.iter().map(|x| math::abs(*x)).fold(0.0, f64::max),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NormChoice::L1 => "l1",
            NormChoice::L2 => "l2",
            NormChoice::LInf => "linf",
        }
    }

    /// Extreme points of the unit ball when the ball is a polytope.
    /// `None` for the Euclidean ball in dimension above one.
    pub fn vertices(&self, n: usize) -> Option<Vec<Vec<f64>>> {
        match self {
            NormChoice::L1 => {
                let mut out = Vec::new();
                for j in 0..n {
                    let mut v = alloc::vec![0.0; n];
                    v[j] = 1.0;
                    out.push(v.clone());
                    v[j] = -1.0;
                    out.push(v);
                }
                Some(out)
            }
            NormChoice::LInf => {
                let mut out = Vec::new();
                for mask in 0..(1usize << n) {
                    let v: Vec<f64> = (0..n)
                        .map(|j| if mask >> j & 1 == 1 { -1.0 } else { 1.0 })
                        .collect();
                    out.push(v);
                }
                Some(out)
            }
            NormChoice::L2 => {
                if n == 1 {
                    Some(alloc::vec![alloc::vec![1.0], alloc::vec![-1.0]])
                } else {
                    None
                }
            }
        }
    }
}
