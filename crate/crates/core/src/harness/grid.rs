use serde::{Deserialize, Serialize};

use crate::scalar::Rational;
use crate::sequence::SeqParams;

/// Optional caps on the index variables; each identity falls back to its own default.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct IndexBounds {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<u32>,
}

impl IndexBounds {
    pub fn n(&self, default: u32) -> i64 {
        i64::from(self.n_max.unwrap_or(default))
    }

    pub fn u(&self, default: u32) -> i64 {
        i64::from(self.u_max.unwrap_or(default))
    }

    pub fn v(&self, default: u32) -> i64 {
        i64::from(self.v_max.unwrap_or(default))
    }

    pub fn m(&self, default: u32) -> i64 {
        i64::from(self.m_max.unwrap_or(default))
    }
}

/// Cartesian parameter grid. Points are enumerated with `p` outermost and `b` innermost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub p: Vec<Rational>,
    pub q: Vec<Rational>,
    pub r: Vec<Rational>,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    #[serde(default)]
    pub bounds: IndexBounds,
}

fn ints(lo: i64, hi: i64) -> Vec<Rational> {
    (lo..=hi).map(Rational::integer).collect()
}

impl GridSpec {
    /// `p, q ∈ −3..3`, `r ∈ −2..2`, `a, b ∈ {−1, 0, 1, 2}`.
    pub fn default_grid() -> Self {
        GridSpec {
            p: ints(-3, 3),
            q: ints(-3, 3),
            r: ints(-2, 2),
            a: ints(-1, 2),
            b: ints(-1, 2),
            bounds: IndexBounds::default(),
        }
    }

    pub fn single(params: &SeqParams) -> Self {
        GridSpec {
            p: vec![params.p.clone()],
            q: vec![params.q.clone()],
            r: vec![params.r.clone()],
            a: vec![params.a.clone()],
            b: vec![params.b.clone()],
            bounds: IndexBounds::default(),
        }
    }

    pub fn with_bounds(mut self, bounds: IndexBounds) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn len(&self) -> usize {
        self.p.len() * self.q.len() * self.r.len() * self.a.len() * self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every point, including ones with `p² + 4q = 0`; the runner skips and counts those.
    pub fn points(&self) -> Vec<SeqParams> {
        let mut out = Vec::with_capacity(self.len());
        for p in &self.p {
            for q in &self.q {
                for r in &self.r {
                    for a in &self.a {
                        for b in &self.b {
                            out.push(SeqParams {
                                p: p.clone(),
                                q: q.clone(),
                                r: r.clone(),
                                a: a.clone(),
                                b: b.clone(),
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_counts() {
        let g = GridSpec::default_grid();
        assert_eq!(g.len(), 7 * 7 * 5 * 4 * 4);
        let valid = g.points().iter().filter(|p| p.validate().is_ok()).count();
        assert_eq!(valid, 46 * 80);
    }

    #[test]
    fn enumeration_order() {
        let g = GridSpec::default_grid();
        let pts = g.points();
        assert_eq!(pts[0], SeqParams::from_ints(-3, -3, -2, -1, -1));
        assert_eq!(pts[1], SeqParams::from_ints(-3, -3, -2, -1, 0));
        assert_eq!(pts.last().unwrap(), &SeqParams::from_ints(3, 3, 2, 2, 2));
    }
}
