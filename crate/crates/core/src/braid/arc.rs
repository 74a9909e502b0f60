//! Half-twists around arcs in the punctured fiber.

use serde::{Deserialize, Serialize};

use crate::braid::word::BraidWord;
use crate::error::{Error, Result};

/// Side of an intermediate puncture that an arc passes on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// Positive imaginary side.
    Above,
    Below,
}

/// Arc between two punctures, given by their one-based positions in the
/// current linear order and the side taken at each puncture in between.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcSpec {
    pub endpoints: (usize, usize),
    pub over_under: Vec<Side>,
}

impl ArcSpec {
    pub fn new(a: usize, b: usize, over_under: Vec<Side>) -> Self {
        ArcSpec { endpoints: (a, b), over_under }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let (a, b) = self.endpoints;
        if a == b {
            return Err(Error::MalformedArc("endpoints coincide".into()));
        }
        let (lo, hi) = (a.min(b), a.max(b));
        if lo == 0 || hi > n {
            return Err(Error::MalformedArc(format!("endpoint out of range 1..{n}")));
        }
        if self.over_under.len() != hi - lo - 1 {
            return Err(Error::MalformedArc(format!(
                "expected {} intermediate sides, found {}",
                hi - lo - 1,
                self.over_under.len()
            )));
        }
        Ok(())
    }
}

/// Positive half-twist exchanging the endpoints of the arc. The arc from
/// `i` to `j` is pushed across the intermediate punctures one at a time:
/// passing above puncture `k` conjugates by `sigma_k`, below by `sigma_k^-1`.
pub fn halftwist_around_arc(arc: &ArcSpec, n: usize) -> Result<BraidWord> {
    arc.validate(n)?;
    let (a, b) = arc.endpoints;
    let (lo, hi) = (a.min(b), a.max(b));
    // sides listed from the lower endpoint upwards
    let sides: Vec<Side> = if a < b { arc.over_under.clone() } else { arc.over_under.iter().rev().copied().collect() };
    let mut w = BraidWord::sigma(n, lo as i32)?;
    for j in lo + 2..=hi {
        let k = j as i32 - 1;
        let s = BraidWord::sigma(n, k)?;
        w = match sides[j - lo - 2] {
            Side::Above => w.conjugate_by(&s),
            Side::Below => w.conjugate_by(&s.inverse()),
        };
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_generators() {
        assert_eq!(halftwist_around_arc(&ArcSpec::new(2, 3, vec![]), 4).unwrap().letters(), &[2]);
        assert_eq!(halftwist_around_arc(&ArcSpec::new(1, 3, vec![Side::Above]), 4).unwrap().letters(), &[2, 1, -2]);
        let t = halftwist_around_arc(&ArcSpec::new(1, 4, vec![Side::Above, Side::Below]), 4).unwrap();
        assert_eq!(t.letters(), &[-3, 2, 1, -2, 3]);
        assert_eq!(t.permutation().to_string(), "(1,4)");
        assert!(halftwist_around_arc(&ArcSpec::new(1, 3, vec![]), 4).is_err());
        assert!(halftwist_around_arc(&ArcSpec::new(2, 2, vec![]), 4).is_err());
    }
}
