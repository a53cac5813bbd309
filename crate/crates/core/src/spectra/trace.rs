use serde::Serialize;

/// Which extremum an estimator tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Min,
    Max,
}

impl Direction {
    fn improves(self, candidate: f64, current: f64) -> bool {
        match self {
            Direction::Min => candidate < current,
            Direction::Max => candidate > current,
        }
    }
}

/// One cutoff of an estimator: the running extremum after everything up
/// to `cutoff` has been examined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Shell {
    pub cutoff: f64,
    pub value: f64,
    pub witness: String,
    pub certified: bool,
}

/// Cutoff-indexed record of a windowed min/liminf or max/limsup estimate.
///
/// `value` is monotone in the declared direction by construction: a shell
/// whose candidate does not improve on the running extremum repeats it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimatorTrace {
    pub direction: Direction,
    /// Smallest cutoff that contributes; earlier terms are burn-in.
    pub window_start: f64,
    pub shells: Vec<Shell>,
}

impl EstimatorTrace {
    pub fn new(direction: Direction, window_start: f64) -> Self {
        EstimatorTrace { direction, window_start, shells: Vec::new() }
    }

    /// Folds `candidate` into the running extremum and appends a shell.
    pub fn record(
        &mut self,
        cutoff: f64,
        candidate: f64,
        witness: impl FnOnce() -> String,
        certified: bool,
    ) {
        match self.shells.last() {
            Some(prev) if !self.direction.improves(candidate, prev.value) => {
                let shell = Shell { cutoff, certified, ..prev.clone() };
                self.shells.push(shell);
            }
            _ => self.shells.push(Shell { cutoff, value: candidate, witness: witness(), certified }),
        }
    }

    pub fn estimate(&self) -> Option<f64> {
        self.shells.last().map(|s| s.value)
    }

    pub fn last(&self) -> Option<&Shell> {
        self.shells.last()
    }

    pub fn is_empty(&self) -> bool {
        self.shells.is_empty()
    }

    pub fn len(&self) -> usize {
        self.shells.len()
    }

    pub fn certified(&self) -> bool {
        self.shells.last().map(|s| s.certified).unwrap_or(false)
    }

    /// True when the running extremum never moves against the direction.
    pub fn is_monotone(&self) -> bool {
        self.shells.windows(2).all(|w| match self.direction {
            Direction::Min => w[1].value <= w[0].value,
            Direction::Max => w[1].value >= w[0].value,
        })
    }

    /// The running extremum at the largest cutoff not exceeding `cutoff`.
    pub fn value_at(&self, cutoff: f64) -> Option<f64> {
        self.shells.iter().take_while(|s| s.cutoff <= cutoff).last().map(|s| s.value)
    }
}
