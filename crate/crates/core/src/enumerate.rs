//! Walking profile codes in order while keeping a weighted tally current.

use crate::ranking::RankingSpace;
use crate::tally::Tally;

/// Profiles per parallel work item. Results are merged by integer addition
/// only, so the chunk size never changes a result.
pub(crate) const CHUNK: u64 = 1 << 14;

pub(crate) struct Odometer<'a> {
    space: &'a RankingSpace,
    weights: &'a [u64],
    digits: Vec<usize>,
    tally: Tally,
}

impl<'a> Odometer<'a> {
    pub(crate) fn at(space: &'a RankingSpace, weights: &'a [u64], code: u64) -> Self {
        let radix = space.len() as u64;
        let mut rest = code;
        let mut tally = Tally::empty(space.m());
        let digits = weights
            .iter()
            .map(|&w| {
                let d = (rest % radix) as usize;
                rest /= radix;
                tally.add(space, d, w);
                d
            })
            .collect();
        Odometer {
            space,
            weights,
            digits,
            tally,
        }
    }

    #[inline]
    pub(crate) fn tally(&self) -> &Tally {
        &self.tally
    }

    /// Moves to the next profile code, wrapping to 0 after the last.
    #[inline]
    pub(crate) fn advance(&mut self) {
        let radix = self.space.len();
        for (digit, &w) in self.digits.iter_mut().zip(self.weights) {
            let next = if *digit + 1 < radix { *digit + 1 } else { 0 };
            if w > 0 {
                self.tally.remove(self.space, *digit, w);
                self.tally.add(self.space, next, w);
            }
            *digit = next;
            if next != 0 {
                return;
            }
        }
    }
}
